//! Rules, rule sets, and the rule-file format (`name: LHS --> RHS`, one per
//! line).  The binder-family rules of the graph theory and the naive
//! comprehension rule are schemas indexed by a formula; they are written
//! with `..ys` / `?P` placeholders and recognized as fixed shapes.

use crate::lang::ast::{Formula, Parsed, Term};
use crate::lang::check::{resolve_rule_formulas, resolve_rule_terms};
use crate::lang::parse::{lex, Sp, Tok, P};
use crate::lang::sig::{Lang, Signature};
use crate::lang::subst::{fv_formula, fv_term};
use crate::lang::{check_sorts_in_rule, LangError};

use super::RewriteError;

/// The rule schemas indexed by an arbitrary formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemaShape {
    /// `mem(x, nclass[x; ..ys | ?P](..ys)) --> ?P`
    MemNodeClass,
    /// `rel(x, x', nrel[x, x'; ..ys | ?P](..ys)) --> ?P`
    RelNodeRel,
    /// local membership of a comprehension graph
    EtaCompr,
    /// `root(compr[z; ..ys | ?P](..ys, a)) --> o`
    RootCompr,
    /// `a in { x in b | ?P } --> a in b /\ ?P[x <- a]`
    InSetCompr,
}

impl SchemaShape {
    pub fn canonical_line(self) -> &'static str {
        match self {
            SchemaShape::MemNodeClass => "mem(x, nclass[x; ..ys | ?P](..ys)) --> ?P",
            SchemaShape::RelNodeRel => {
                "rel(x, x', nrel[x, x'; ..ys | ?P](..ys)) --> ?P"
            }
            SchemaShape::EtaCompr => {
                "eta(compr[z; ..ys | ?P](..ys, a), x, x') --> (exists y:N. exists y':N. (x = i(y) /\\ x' = i(y') /\\ eta(a, y, y'))) \\/ (exists y:N. (x = i(y) /\\ x' = o /\\ eta(a, y, root(a)) /\\ ?P[z <- a / y]))"
            }
            SchemaShape::RootCompr => "root(compr[z; ..ys | ?P](..ys, a)) --> o",
            SchemaShape::InSetCompr => "a in { x in b | ?P } --> a in b /\\ ?P[x <- a]",
        }
    }

    pub fn rewrites_terms(self) -> bool {
        matches!(self, SchemaShape::RootCompr)
    }

    fn all() -> &'static [SchemaShape] {
        &[
            SchemaShape::MemNodeClass,
            SchemaShape::RelNodeRel,
            SchemaShape::EtaCompr,
            SchemaShape::RootCompr,
            SchemaShape::InSetCompr,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleBody {
    Term { lhs: Term, rhs: Term },
    Formula { lhs: Formula, rhs: Formula },
    Schema(SchemaShape),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub body: RuleBody,
}

impl Rule {
    pub fn rewrites_terms(&self) -> bool {
        match &self.body {
            RuleBody::Term { .. } => true,
            RuleBody::Formula { .. } => false,
            RuleBody::Schema(s) => s.rewrites_terms(),
        }
    }

    pub fn line(&self) -> String {
        match &self.body {
            RuleBody::Term { lhs, rhs } => format!("{}: {} --> {}", self.name, lhs, rhs),
            RuleBody::Formula { lhs, rhs } => format!("{}: {} --> {}", self.name, lhs, rhs),
            RuleBody::Schema(s) => format!("{}: {}", self.name, s.canonical_line()),
        }
    }
}

/// An ordered rule list over one language.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub name: String,
    pub lang: Lang,
    pub rules: Vec<Rule>,
    pub fuel_default: u64,
}

pub const DEFAULT_FUEL: u64 = 10_000;

impl RewriteSystem {
    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// Render the system in the rule-file format.
    pub fn to_file(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&r.line());
            out.push('\n');
        }
        out
    }

    /// Parse a rule file: one `name: LHS --> RHS` per line, `#` comments.
    pub fn parse(name: &str, lang: Lang, text: &str) -> Result<RewriteSystem, RewriteError> {
        let mut rules = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let rule = parse_rule_line(trimmed, lang, rules.len()).map_err(|e| {
                RewriteError::RuleFile {
                    line: lineno + 1,
                    source: Box::new(e),
                }
            })?;
            rules.push(rule);
        }
        Ok(RewriteSystem {
            name: name.to_string(),
            lang,
            rules,
            fuel_default: DEFAULT_FUEL,
        })
    }
}

fn toks_only(sps: &[Sp]) -> Vec<Tok> {
    sps.iter().map(|s| s.tok.clone()).collect()
}

fn parse_rule_line(line: &str, lang: Lang, idx: usize) -> Result<Rule, LangError> {
    let sps = lex(line)?;
    // optional `name:` prefix
    let (name, body_start) = match (sps.first().map(|s| &s.tok), sps.get(1).map(|s| &s.tok)) {
        (Some(Tok::Ident(n)), Some(Tok::Colon)) if parses_as_rule(&sps[2..], lang) => {
            (n.clone(), 2usize)
        }
        _ => (format!("r{}", idx + 1), 0usize),
    };
    let body = &sps[body_start..];
    // schema shapes are matched on the token sequence
    let body_toks = toks_only(body);
    for shape in SchemaShape::all() {
        let canon = lex(shape.canonical_line()).expect("canonical schema line lexes");
        if toks_only(&canon) == body_toks {
            let shape_lang_ok = match shape {
                SchemaShape::InSetCompr => lang != Lang::Zermod,
                _ => lang == Lang::Zermod,
            };
            if !shape_lang_ok {
                return Err(LangError::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("schema rule does not belong to language {}", lang.name()),
                });
            }
            return Ok(Rule {
                name,
                body: RuleBody::Schema(*shape),
            });
        }
    }
    parse_plain_rule(body, lang, name)
}

/// Quick structural test: does the token slice contain a `-->`?
fn parses_as_rule(body: &[Sp], _lang: Lang) -> bool {
    body.iter().any(|s| s.tok == Tok::LongArrow)
}

fn parse_plain_rule(body: &[Sp], lang: Lang, name: String) -> Result<Rule, LangError> {
    let arrow = body
        .iter()
        .position(|s| s.tok == Tok::LongArrow)
        .ok_or(LangError::Parse {
            line: body.first().map(|s| s.line).unwrap_or(1),
            col: body.first().map(|s| s.col).unwrap_or(1),
            msg: "rule line has no `-->`".into(),
        })?;
    let (lhs_toks, rhs_toks) = (&body[..arrow], &body[arrow + 1..]);

    // try formula rule first, then term rule
    let lhs_formula = {
        let mut p = P::new(lhs_toks, lang);
        p.formula().ok().filter(|_| p.at_end())
    };
    if let Some(lf) = lhs_formula {
        let mut p = P::new(rhs_toks, lang);
        let rf = p.formula()?;
        if !p.at_end() {
            return Err(p.err("trailing input after rule right-hand side"));
        }
        let (lhs, rhs) = resolve_rule_formulas(&lf, &rf, lang)?;
        validate_formula_rule(&lhs, &rhs, lang)?;
        return Ok(Rule {
            name,
            body: RuleBody::Formula { lhs, rhs },
        });
    }
    let mut p = P::new(lhs_toks, lang);
    let lt = p.term()?;
    if !p.at_end() {
        return Err(p.err("trailing input after rule left-hand side"));
    }
    let mut p = P::new(rhs_toks, lang);
    let rt = p.term()?;
    if !p.at_end() {
        return Err(p.err("trailing input after rule right-hand side"));
    }
    let (lhs, rhs) = resolve_rule_terms(&lt, &rt, lang)?;
    validate_term_rule(&lhs, &rhs, lang)?;
    Ok(Rule {
        name,
        body: RuleBody::Term { lhs, rhs },
    })
}

fn rule_err(msg: impl Into<String>) -> LangError {
    LangError::Sort {
        path: "rule".into(),
        msg: msg.into(),
    }
}

fn validate_term_rule(lhs: &Term, rhs: &Term, lang: Lang) -> Result<(), LangError> {
    if matches!(lhs, Term::Var(_)) {
        return Err(rule_err("rule left-hand side is a bare variable"));
    }
    let lv = fv_term(lhs);
    for v in fv_term(rhs) {
        if !lv.contains(&v) {
            return Err(rule_err(format!(
                "right-hand side variable {} does not occur on the left",
                v.name
            )));
        }
    }
    let sig = Signature::for_lang(lang);
    check_sorts_in_rule(&Parsed::Term(lhs.clone()), &sig)?;
    check_sorts_in_rule(&Parsed::Term(rhs.clone()), &sig)?;
    Ok(())
}

fn validate_formula_rule(lhs: &Formula, rhs: &Formula, lang: Lang) -> Result<(), LangError> {
    if !lhs.is_atomic() {
        return Err(rule_err("formula rule left-hand side must be atomic"));
    }
    let lv = fv_formula(lhs);
    for v in fv_formula(rhs) {
        if !lv.contains(&v) {
            return Err(rule_err(format!(
                "right-hand side variable {} does not occur on the left",
                v.name
            )));
        }
    }
    let sig = Signature::for_lang(lang);
    check_sorts_in_rule(&Parsed::Formula(lhs.clone()), &sig)?;
    check_sorts_in_rule(&Parsed::Formula(rhs.clone()), &sig)?;
    Ok(())
}
