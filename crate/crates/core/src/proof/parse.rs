//! Proof file format: `proof NAME : FORMULA in RULESET { ... }` where the
//! body is a proof term optionally preceded by `assume h : F;` hypothesis
//! declarations.

use std::collections::BTreeMap;

use crate::lang::ast::{Formula, Sort, Term, Var};
use crate::lang::check::{resolve_formula, resolve_term};
use crate::lang::parse::{is_reserved, lex, Sp, Tok, P};
use crate::lang::sig::{Lang, Signature};
use crate::lang::subst::fv_formula;
use crate::lang::{check_sorts, LangError, Parsed};

use super::term::ProofTerm;
use super::ProofError;

#[derive(Debug, Clone)]
pub struct ProofDecl {
    pub name: String,
    pub ruleset: String,
    pub formula: Formula,
    pub assumes: Vec<(String, Formula)>,
    pub term: ProofTerm,
}

fn builtin_lang(ruleset: &str) -> Option<Lang> {
    match ruleset {
        "zermod" => Some(Lang::Zermod),
        "arith" => Some(Lang::Arith),
        "naive" => Some(Lang::Naive),
        _ => None,
    }
}

fn depth_delta(t: &Tok) -> i32 {
    match t {
        Tok::LParen | Tok::LBracket | Tok::LBrace => 1,
        Tok::RParen | Tok::RBracket | Tok::RBrace => -1,
        _ => 0,
    }
}

fn tok_source(t: &Tok) -> Result<String, ProofError> {
    Ok(match t {
        Tok::Ident(s) => s.clone(),
        Tok::Num(n) => n.to_string(),
        Tok::Dot => ".".into(),
        Tok::SlashOp => "/".into(),
        other => {
            return Err(ProofError::Syntax(format!(
                "unexpected token {:?} in a rule-set name",
                other
            )))
        }
    })
}

/// Parse every `proof` declaration in a file.
pub fn parse_proofs(text: &str) -> Result<Vec<ProofDecl>, ProofError> {
    let toks = lex(text).map_err(|e| ProofError::Lang(Box::new(e)))?;
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < toks.len() {
        match &toks[i].tok {
            Tok::Ident(s) if s == "proof" => i += 1,
            _ => {
                return Err(ProofError::Syntax(format!(
                    "expected `proof` at {}:{}",
                    toks[i].line, toks[i].col
                )))
            }
        }
        let name = match &toks[i].tok {
            Tok::Ident(s) => {
                let s = s.clone();
                i += 1;
                s
            }
            _ => return Err(ProofError::Syntax("expected a proof name".into())),
        };
        if toks.get(i).map(|s| &s.tok) != Some(&Tok::Colon) {
            return Err(ProofError::Syntax(format!("proof {}: expected `:`", name)));
        }
        i += 1;
        // find the body `{` at depth 0, and the last `in` before it
        let mut depth = 0i32;
        let mut body_open = None;
        let mut last_in = None;
        for (k, sp) in toks.iter().enumerate().skip(i) {
            if depth == 0 {
                match &sp.tok {
                    Tok::LBrace => {
                        body_open = Some(k);
                        break;
                    }
                    Tok::Ident(s) if s == "in" => last_in = Some(k),
                    _ => {}
                }
            }
            depth += depth_delta(&sp.tok);
        }
        let body_open = body_open
            .ok_or_else(|| ProofError::Syntax(format!("proof {}: no body", name)))?;
        let last_in = last_in.ok_or_else(|| {
            ProofError::Syntax(format!("proof {}: missing `in RULESET`", name))
        })?;
        let formula_toks = &toks[i..last_in];
        let ruleset: String = toks[last_in + 1..body_open]
            .iter()
            .map(|s| tok_source(&s.tok))
            .collect::<Result<Vec<_>, _>>()?
            .join("");
        let lang = builtin_lang(&ruleset).ok_or_else(|| {
            ProofError::UnknownRuleset(ruleset.clone())
        })?;

        // body extent
        let mut depth = 0i32;
        let mut body_close = None;
        for (k, sp) in toks.iter().enumerate().skip(body_open) {
            depth += depth_delta(&sp.tok);
            if depth == 0 {
                body_close = Some(k);
                break;
            }
        }
        let body_close = body_close
            .ok_or_else(|| ProofError::Syntax(format!("proof {}: unclosed body", name)))?;

        let formula = parse_formula_slice(formula_toks, lang, &BTreeMap::new())
            .map_err(|e| ProofError::Lang(Box::new(e)))?;

        let mut pins: BTreeMap<String, Sort> = BTreeMap::new();
        for v in fv_formula(&formula) {
            pins.insert(v.name, v.sort);
        }

        let body = &toks[body_open + 1..body_close];
        let (assumes, term) = parse_body(body, lang, pins)?;
        out.push(ProofDecl {
            name,
            ruleset,
            formula,
            assumes,
            term,
        });
        i = body_close + 1;
    }
    if out.is_empty() {
        return Err(ProofError::Syntax("no proof declaration found".into()));
    }
    Ok(out)
}

fn parse_formula_slice(
    toks: &[Sp],
    lang: Lang,
    pins: &BTreeMap<String, Sort>,
) -> Result<Formula, LangError> {
    let mut p = P::new(toks, lang);
    let raw = p.formula()?;
    if !p.at_end() {
        return Err(p.err("trailing input after formula"));
    }
    let f = resolve_formula(&raw, lang, pins)?;
    check_sorts(&Parsed::Formula(f.clone()), &Signature::for_lang(lang))?;
    Ok(f)
}

fn parse_body(
    toks: &[Sp],
    lang: Lang,
    mut pins: BTreeMap<String, Sort>,
) -> Result<(Vec<(String, Formula)>, ProofTerm), ProofError> {
    let mut i = 0usize;
    let mut assumes = Vec::new();
    while matches!(toks.get(i).map(|s| &s.tok), Some(Tok::Ident(s)) if s == "assume") {
        i += 1;
        let hyp = match toks.get(i).map(|s| &s.tok) {
            Some(Tok::Ident(s)) if !is_reserved(s) => s.clone(),
            _ => return Err(ProofError::Syntax("expected a hypothesis name after `assume`".into())),
        };
        i += 1;
        if toks.get(i).map(|s| &s.tok) != Some(&Tok::Colon) {
            return Err(ProofError::Syntax("expected `:` after the hypothesis name".into()));
        }
        i += 1;
        // formula extends to the `;` at depth 0
        let mut depth = 0i32;
        let mut end = None;
        for (k, sp) in toks.iter().enumerate().skip(i) {
            if depth == 0 && sp.tok == Tok::Semi {
                end = Some(k);
                break;
            }
            depth += depth_delta(&sp.tok);
        }
        let end = end.ok_or_else(|| ProofError::Syntax("missing `;` after assume".into()))?;
        let f = parse_formula_slice(&toks[i..end], lang, &pins)
            .map_err(|e| ProofError::Lang(Box::new(e)))?;
        for v in fv_formula(&f) {
            pins.insert(v.name, v.sort);
        }
        assumes.push((hyp, f));
        i = end + 1;
    }
    let mut pp = PP {
        p: P::new(&toks[i..], lang),
        lang,
        pins,
        scope: Vec::new(),
    };
    let term = pp.proof()?;
    if !pp.p.at_end() {
        return Err(ProofError::Syntax("trailing input after the proof term".into()));
    }
    Ok((assumes, term))
}

/// Parse a proof term from text (hypothesis formulas supply the pins).
pub fn parse_proof_term(
    text: &str,
    lang: Lang,
    pins: &BTreeMap<String, Sort>,
) -> Result<ProofTerm, ProofError> {
    let toks = lex(text).map_err(|e| ProofError::Lang(Box::new(e)))?;
    let mut pp = PP {
        p: P::new(&toks, lang),
        lang,
        pins: pins.clone(),
        scope: Vec::new(),
    };
    let term = pp.proof()?;
    if !pp.p.at_end() {
        return Err(ProofError::Syntax("trailing input after the proof term".into()));
    }
    Ok(term)
}

struct PP<'a> {
    p: P<'a>,
    lang: Lang,
    pins: BTreeMap<String, Sort>,
    scope: Vec<(String, Sort)>,
}

impl<'a> PP<'a> {
    fn pins_with_scope(&self) -> BTreeMap<String, Sort> {
        let mut m = self.pins.clone();
        for (n, s) in &self.scope {
            m.insert(n.clone(), *s);
        }
        m
    }

    fn err(&self, msg: impl Into<String>) -> ProofError {
        ProofError::Lang(Box::new(self.p.err(msg)))
    }

    /// Parse an embedded term, then resolve its sorts against the pins.
    fn object_term(&mut self) -> Result<Term, ProofError> {
        let raw = self.p.term().map_err(|e| ProofError::Lang(Box::new(e)))?;
        let t = resolve_term(&raw, self.lang, &self.pins_with_scope())
            .map_err(|e| ProofError::Lang(Box::new(e)))?;
        check_sorts(&Parsed::Term(t.clone()), &Signature::for_lang(self.lang))
            .map_err(|e| ProofError::Lang(Box::new(e)))?;
        Ok(t)
    }

    fn object_formula(&mut self) -> Result<Formula, ProofError> {
        let raw = self.p.formula().map_err(|e| ProofError::Lang(Box::new(e)))?;
        let f = resolve_formula(&raw, self.lang, &self.pins_with_scope())
            .map_err(|e| ProofError::Lang(Box::new(e)))?;
        check_sorts(&Parsed::Formula(f.clone()), &Signature::for_lang(self.lang))
            .map_err(|e| ProofError::Lang(Box::new(e)))?;
        Ok(f)
    }

    fn hyp_name(&mut self) -> Result<String, ProofError> {
        match self.p.peek().cloned() {
            Some(Tok::Ident(s)) if !is_reserved(&s) => {
                self.p.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a hypothesis name")),
        }
    }

    fn eat(&mut self, t: &Tok) -> Result<(), ProofError> {
        self.p.expect(t).map_err(|e| ProofError::Lang(Box::new(e)))
    }

    fn eat_kw(&mut self, kw: &str) -> Result<(), ProofError> {
        match self.p.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.p.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{}`", kw))),
        }
    }

    fn sort(&mut self) -> Result<Sort, ProofError> {
        let name = self
            .p
            .expect_ident()
            .map_err(|e| ProofError::Lang(Box::new(e)))?;
        Sort::from_name(&name).ok_or_else(|| self.err(format!("unknown sort `{}`", name)))
    }

    fn proof(&mut self) -> Result<ProofTerm, ProofError> {
        match self.p.peek() {
            Some(Tok::Ident(s)) if s == "fun" => {
                self.p.pos += 1;
                let hyp = self.hyp_name()?;
                self.eat(&Tok::FatArrow)?;
                let body = self.proof()?;
                Ok(ProofTerm::ImpIntro {
                    hyp,
                    body: Box::new(body),
                })
            }
            Some(Tok::Ident(s)) if s == "gen" => {
                self.p.pos += 1;
                let name = self.hyp_name()?;
                self.eat(&Tok::Colon)?;
                let sort = self.sort()?;
                self.eat(&Tok::FatArrow)?;
                self.scope.push((name.clone(), sort));
                let body = self.proof();
                self.scope.pop();
                Ok(ProofTerm::AllIntro {
                    var: Var::new(name, sort),
                    body: Box::new(body?),
                })
            }
            Some(Tok::Ident(s)) if s == "wit" => {
                self.p.pos += 1;
                self.eat(&Tok::LBracket)?;
                let witness = self.object_term()?;
                self.eat(&Tok::RBracket)?;
                let proof = self.proof()?;
                Ok(ProofTerm::ExIntro {
                    witness,
                    proof: Box::new(proof),
                })
            }
            Some(Tok::Ident(s)) if s == "case" => {
                self.p.pos += 1;
                let scrutinee = self.proof()?;
                self.eat_kw("of")?;
                self.eat(&Tok::LBrace)?;
                self.eat_kw("inl")?;
                let left_hyp = self.hyp_name()?;
                self.eat(&Tok::FatArrow)?;
                let left = self.proof()?;
                self.eat(&Tok::Pipe)?;
                self.eat_kw("inr")?;
                let right_hyp = self.hyp_name()?;
                self.eat(&Tok::FatArrow)?;
                let right = self.proof()?;
                self.eat(&Tok::RBrace)?;
                Ok(ProofTerm::OrElim {
                    scrutinee: Box::new(scrutinee),
                    left_hyp,
                    left: Box::new(left),
                    right_hyp,
                    right: Box::new(right),
                })
            }
            Some(Tok::Ident(s)) if s == "let" => {
                self.p.pos += 1;
                self.eat(&Tok::LBracket)?;
                let vname = self.hyp_name()?;
                self.eat(&Tok::Colon)?;
                let sort = self.sort()?;
                self.eat(&Tok::Comma)?;
                let hyp = self.hyp_name()?;
                self.eat(&Tok::RBracket)?;
                self.eat(&Tok::EqOp)?;
                let scrutinee = self.proof()?;
                self.eat_kw("in")?;
                self.scope.push((vname.clone(), sort));
                let body = self.proof();
                self.scope.pop();
                Ok(ProofTerm::ExElim {
                    scrutinee: Box::new(scrutinee),
                    var: Var::new(vname, sort),
                    hyp,
                    body: Box::new(body?),
                })
            }
            _ => self.app_chain(),
        }
    }

    fn app_chain(&mut self) -> Result<ProofTerm, ProofError> {
        let mut acc = self.prim()?;
        loop {
            match self.p.peek() {
                Some(Tok::LBracket) => {
                    self.p.pos += 1;
                    let witness = self.object_term()?;
                    self.eat(&Tok::RBracket)?;
                    acc = ProofTerm::AllElim {
                        proof: Box::new(acc),
                        witness,
                    };
                }
                Some(Tok::LParen) => {
                    let arg = self.prim()?;
                    acc = ProofTerm::ImpElim {
                        fun: Box::new(acc),
                        arg: Box::new(arg),
                    };
                }
                Some(Tok::Ident(s))
                    if !is_reserved(s)
                        || matches!(
                            s.as_str(),
                            "triv" | "fst" | "snd" | "inl" | "inr" | "absurd"
                        ) =>
                {
                    let arg = self.prim()?;
                    acc = ProofTerm::ImpElim {
                        fun: Box::new(acc),
                        arg: Box::new(arg),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn prim(&mut self) -> Result<ProofTerm, ProofError> {
        match self.p.peek().cloned() {
            Some(Tok::Ident(s)) if s == "triv" => {
                self.p.pos += 1;
                Ok(ProofTerm::TopIntro)
            }
            Some(Tok::Ident(s)) if s == "fst" => {
                self.p.pos += 1;
                Ok(ProofTerm::AndElim1(Box::new(self.prim()?)))
            }
            Some(Tok::Ident(s)) if s == "snd" => {
                self.p.pos += 1;
                Ok(ProofTerm::AndElim2(Box::new(self.prim()?)))
            }
            Some(Tok::Ident(s)) if s == "inl" => {
                self.p.pos += 1;
                Ok(ProofTerm::OrIntro1(Box::new(self.prim()?)))
            }
            Some(Tok::Ident(s)) if s == "inr" => {
                self.p.pos += 1;
                Ok(ProofTerm::OrIntro2(Box::new(self.prim()?)))
            }
            Some(Tok::Ident(s)) if s == "absurd" => {
                self.p.pos += 1;
                self.eat(&Tok::LBracket)?;
                let target = self.object_formula()?;
                self.eat(&Tok::RBracket)?;
                Ok(ProofTerm::BotElim {
                    proof: Box::new(self.prim()?),
                    target,
                })
            }
            Some(Tok::Ident(s)) if !is_reserved(&s) => {
                self.p.pos += 1;
                Ok(ProofTerm::Hyp(s))
            }
            Some(Tok::LParen) => {
                self.p.pos += 1;
                let first = self.proof()?;
                match self.p.peek() {
                    Some(Tok::Comma) => {
                        self.p.pos += 1;
                        let second = self.proof()?;
                        self.eat(&Tok::RParen)?;
                        Ok(ProofTerm::AndIntro {
                            left: Box::new(first),
                            right: Box::new(second),
                        })
                    }
                    Some(Tok::Colon) => {
                        self.p.pos += 1;
                        let formula = self.object_formula()?;
                        self.eat(&Tok::RParen)?;
                        Ok(ProofTerm::Ascribe {
                            proof: Box::new(first),
                            formula,
                        })
                    }
                    Some(Tok::RParen) => {
                        self.p.pos += 1;
                        Ok(first)
                    }
                    _ => Err(self.err("expected `,`, `:` or `)`")),
                }
            }
            _ => Err(self.err("expected a proof term")),
        }
    }
}
