//! Lexer and recursive-descent parser for the ASCII grammar.

use std::collections::BTreeMap;

use super::ast::*;
use super::check;
use super::sig::{Lang, Signature};
use super::LangError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dot,
    DotDot,
    Colon,
    Pipe,
    Arrow,     // ->
    LongArrow, // -->
    FatArrow,  // =>
    BackArrow, // <-
    AndOp,     // /\
    OrOp,      // \/
    Tilde,     // ~
    ApproxOp,  // ~~
    EqOp,      // =
    LtOp,      // <
    PlusOp,    // +
    StarOp,    // *
    SlashOp,   // /
    Question,  // ?
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Num(n) => format!("number {}", n),
            t => format!("`{}`", tok_text(t)),
        }
    }
}

fn tok_text(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBracket => "[",
        Tok::RBracket => "]",
        Tok::LBrace => "{",
        Tok::RBrace => "}",
        Tok::Comma => ",",
        Tok::Semi => ";",
        Tok::Dot => ".",
        Tok::DotDot => "..",
        Tok::Colon => ":",
        Tok::Pipe => "|",
        Tok::Arrow => "->",
        Tok::LongArrow => "-->",
        Tok::FatArrow => "=>",
        Tok::BackArrow => "<-",
        Tok::AndOp => "/\\",
        Tok::OrOp => "\\/",
        Tok::Tilde => "~",
        Tok::ApproxOp => "~~",
        Tok::EqOp => "=",
        Tok::LtOp => "<",
        Tok::PlusOp => "+",
        Tok::StarOp => "*",
        Tok::SlashOp => "/",
        Tok::Question => "?",
        _ => "?",
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Sp {
    pub tok: Tok,
    pub line: u32,
    pub col: u32,
}

pub(crate) fn lex(text: &str) -> Result<Vec<Sp>, LangError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    let n = bytes.len();
    macro_rules! push {
        ($t:expr, $len:expr) => {{
            out.push(Sp { tok: $t, line, col });
            col += $len as u32;
            i += $len;
        }};
    }
    while i < n {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            '#' => {
                while i < n && bytes[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push!(Tok::LParen, 1),
            ')' => push!(Tok::RParen, 1),
            '[' => push!(Tok::LBracket, 1),
            ']' => push!(Tok::RBracket, 1),
            '{' => push!(Tok::LBrace, 1),
            '}' => push!(Tok::RBrace, 1),
            ',' => push!(Tok::Comma, 1),
            ';' => push!(Tok::Semi, 1),
            ':' => push!(Tok::Colon, 1),
            '|' => push!(Tok::Pipe, 1),
            '?' => push!(Tok::Question, 1),
            '+' => push!(Tok::PlusOp, 1),
            '*' => push!(Tok::StarOp, 1),
            '.' => {
                if i + 1 < n && bytes[i + 1] == '.' {
                    push!(Tok::DotDot, 2);
                } else {
                    push!(Tok::Dot, 1);
                }
            }
            '~' => {
                if i + 1 < n && bytes[i + 1] == '~' {
                    push!(Tok::ApproxOp, 2);
                } else {
                    push!(Tok::Tilde, 1);
                }
            }
            '=' => {
                if i + 1 < n && bytes[i + 1] == '>' {
                    push!(Tok::FatArrow, 2);
                } else {
                    push!(Tok::EqOp, 1);
                }
            }
            '<' => {
                if i + 1 < n && bytes[i + 1] == '-' {
                    push!(Tok::BackArrow, 2);
                } else {
                    push!(Tok::LtOp, 1);
                }
            }
            '-' => {
                if i + 2 < n && bytes[i + 1] == '-' && bytes[i + 2] == '>' {
                    push!(Tok::LongArrow, 3);
                } else if i + 1 < n && bytes[i + 1] == '>' {
                    push!(Tok::Arrow, 2);
                } else {
                    return Err(LangError::Parse {
                        line,
                        col,
                        msg: "stray `-`".into(),
                    });
                }
            }
            '/' => {
                if i + 1 < n && bytes[i + 1] == '\\' {
                    push!(Tok::AndOp, 2);
                } else {
                    push!(Tok::SlashOp, 1);
                }
            }
            '\\' => {
                if i + 1 < n && bytes[i + 1] == '/' {
                    push!(Tok::OrOp, 2);
                } else {
                    return Err(LangError::Parse {
                        line,
                        col,
                        msg: "stray `\\`".into(),
                    });
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < n && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                let v: u64 = s.parse().map_err(|_| LangError::Parse {
                    line,
                    col,
                    msg: format!("number {} out of range", s),
                })?;
                out.push(Sp { tok: Tok::Num(v), line, col });
                col += (i - start) as u32;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < n
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_' || bytes[i] == '\'')
                {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push(Sp { tok: Tok::Ident(s), line, col });
                col += (i - start) as u32;
            }
            other => {
                return Err(LangError::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(out)
}

/// Keywords that may never be used as variable names, in any language.
pub const RESERVED: &[&str] = &[
    "root", "i", "i'", "j", "j'", "o", "S", "Pred", "rho", "rho'", "Union", "Pair", "Pow",
    "Omega", "TC", "NN", "empty", "cup", "sing", "opair", "p1", "p2", "prod", "app", "restrict",
    "car", "clos", "lcs", "castR", "dom", "cod", "eta", "mem", "rel", "I", "J", "Null", "Nat",
    "Rgraph", "Graph", "Pgraph", "Function", "Collapse", "ISeg", "Reif", "Ind", "Succ", "Empty",
    "compr", "nclass", "nrel", "forall", "exists", "true", "false", "in", "graph", "nodes",
    "edges", "proof", "assume", "fun", "gen", "wit", "case", "of", "inl", "inr", "fst", "snd",
    "triv", "absurd", "let",
];

pub fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}

fn lookup_fun(name: &str, lang: Lang) -> Option<FunSym> {
    use FunSym::*;
    let graph = lang == Lang::Zermod;
    let skol = lang == Lang::Zskol;
    let arith = lang == Lang::Arith;
    let f = match name {
        "root" if graph => Root,
        "o" if graph => O,
        "i" if graph => I,
        "i'" if graph => IInv,
        "j" if graph => J,
        "j'" if graph => JInv,
        "S" if graph || arith => Succ,
        "Pred" if graph => PredN,
        "rho" if graph => Rho,
        "rho'" if graph => RhoInv,
        "Union" if graph => Union,
        "Pair" if graph => Pair,
        "Pow" if graph => Pow,
        "Omega" if graph => Omega,
        "TC" if graph => Tc,
        "Union" if skol => Union,
        "Pair" if skol => Pair,
        "Pow" if skol => Pow,
        "TC" if skol => Tc,
        "NN" if skol => NatSet,
        "empty" if skol => EmptySet,
        "cup" if skol => Cup,
        "sing" if skol => Sing,
        "opair" if skol => OPair,
        "p1" if skol => Proj1,
        "p2" if skol => Proj2,
        "prod" if skol => Prod,
        "app" if skol => FnApp,
        "restrict" if skol => Restrict,
        "car" if skol => Car,
        "clos" if skol => Clos,
        "lcs" if skol => Lcs,
        "castR" if skol => CastR,
        "dom" if skol => Dom,
        "cod" if skol => Cod,
        _ => return None,
    };
    Some(f)
}

fn lookup_pred(name: &str, lang: Lang) -> Option<PredSym> {
    use PredSym::*;
    let graph = lang == Lang::Zermod;
    let set2 = matches!(lang, Lang::Zskol | Lang::Zclass);
    let p = match name {
        "eta" if graph => Eta,
        "mem" if graph || set2 => Mem,
        "rel" if graph => Rel,
        "I" if graph => ImgI,
        "J" if graph => ImgJ,
        "Null" if graph => Null,
        "Nat" if graph || set2 => Nat,
        "Rgraph" if lang == Lang::Zskol => Rgraph,
        "Graph" if lang == Lang::Zskol => GraphP,
        "Pgraph" if lang == Lang::Zskol => PgraphP,
        "Function" if lang == Lang::Zskol => FunctionP,
        "Collapse" if lang == Lang::Zskol => CollapseP,
        "ISeg" if lang == Lang::Zskol => ISegP,
        "Reif" if lang == Lang::Zskol => ReifP,
        "Ind" if set2 => IndP,
        "Succ" if set2 => SuccP,
        "Empty" if set2 => EmptyP,
        _ => return None,
    };
    Some(p)
}

pub(crate) struct P<'a> {
    toks: &'a [Sp],
    pub pos: usize,
    pub lang: Lang,
    pub allow_meta: bool,
    text_len: (u32, u32),
}

impl<'a> P<'a> {
    pub fn new(toks: &'a [Sp], lang: Lang) -> P<'a> {
        let end = toks
            .last()
            .map(|s| (s.line, s.col + 1))
            .unwrap_or((1, 1));
        P { toks, pos: 0, lang, allow_meta: false, text_len: end }
    }

    pub fn err(&self, msg: impl Into<String>) -> LangError {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or(self.text_len);
        LangError::Parse { line, col, msg: msg.into() }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn next_tok(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn expect(&mut self, t: &Tok) -> Result<(), LangError> {
        match self.peek() {
            Some(x) if x == t => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(format!("expected {}, found {}", t.describe(), x.describe()))),
            None => Err(self.err(format!("expected {}, found end of input", t.describe()))),
        }
    }

    pub fn expect_ident(&mut self) -> Result<String, LangError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(x) => Err(self.err(format!("expected identifier, found {}", x.describe()))),
            None => Err(self.err("expected identifier, found end of input")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), LangError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(format!("expected `{}`, found {}", kw, x.describe()))),
            None => Err(self.err(format!("expected `{}`, found end of input", kw))),
        }
    }

    fn var_name(&mut self) -> Result<String, LangError> {
        let name = self.expect_ident()?;
        if is_reserved(&name) {
            return Err(self.err(format!("`{}` is a reserved word and cannot name a variable", name)));
        }
        Ok(name)
    }

    fn sort(&mut self) -> Result<Sort, LangError> {
        let name = self.expect_ident()?;
        Sort::from_name(&name).ok_or_else(|| self.err(format!("unknown sort `{}`", name)))
    }

    // ----- formulas ------------------------------------------------------

    pub fn formula(&mut self) -> Result<Formula, LangError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "forall" || s == "exists" => self.quant(),
            _ => self.imp(),
        }
    }

    fn quant(&mut self) -> Result<Formula, LangError> {
        let kw = self.expect_ident()?;
        let name = self.var_name()?;
        self.expect(&Tok::Colon)?;
        let sort = self.sort()?;
        self.expect(&Tok::Dot)?;
        let body = self.formula()?;
        let v = Var::new(name, sort);
        Ok(if kw == "forall" {
            Formula::forall(v, body)
        } else {
            Formula::exists(v, body)
        })
    }

    fn imp(&mut self) -> Result<Formula, LangError> {
        let a = self.or_f()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let b = self.formula()?;
            Ok(Formula::imp(a, b))
        } else {
            Ok(a)
        }
    }

    fn or_f(&mut self) -> Result<Formula, LangError> {
        let mut a = self.and_f()?;
        while self.peek() == Some(&Tok::OrOp) {
            self.pos += 1;
            let b = self.and_f()?;
            a = Formula::or(a, b);
        }
        Ok(a)
    }

    fn and_f(&mut self) -> Result<Formula, LangError> {
        let mut a = self.neg_f()?;
        while self.peek() == Some(&Tok::AndOp) {
            self.pos += 1;
            let b = self.neg_f()?;
            a = Formula::and(a, b);
        }
        Ok(a)
    }

    fn neg_f(&mut self) -> Result<Formula, LangError> {
        if self.peek() == Some(&Tok::Tilde) {
            self.pos += 1;
            let a = self.neg_f()?;
            Ok(Formula::neg(a))
        } else {
            self.primary_f()
        }
    }

    fn primary_f(&mut self) -> Result<Formula, LangError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::Ident(s)) if s == "forall" || s == "exists" => Err(self.err(
                "quantifiers under a binary connective need parentheses",
            )),
            Some(Tok::Question) => {
                if !self.allow_meta {
                    return Err(self.err("formula metavariables are only allowed in rewrite rules"));
                }
                self.pos += 1;
                let name = self.expect_ident()?;
                let mut subst = Vec::new();
                if self.peek() == Some(&Tok::LBracket) {
                    self.pos += 1;
                    loop {
                        let v = self.var_name()?;
                        self.expect(&Tok::BackArrow)?;
                        let t = self.term()?;
                        subst.push((Var::new(v, Sort::Unknown), t));
                        match self.next_tok() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RBracket) => break,
                            _ => return Err(self.err("expected `,` or `]` in metavariable substitution")),
                        }
                    }
                }
                Ok(Formula::Meta(MetaAtom { name, subst }))
            }
            Some(Tok::LParen) => {
                // try a parenthesized formula first, then fall back to a
                // relational atom whose left term is parenthesized
                let save = self.pos;
                self.pos += 1;
                let attempt = (|| -> Result<Formula, LangError> {
                    let f = self.formula()?;
                    self.expect(&Tok::RParen)?;
                    Ok(f)
                })();
                match attempt {
                    Ok(f) => Ok(f),
                    Err(_) => {
                        self.pos = save;
                        self.rel_atom()
                    }
                }
            }
            Some(Tok::Ident(s)) => {
                if let Some(p) = lookup_pred(s, self.lang) {
                    let sig = Signature::for_lang(self.lang);
                    let arity = sig.pred_rank(p).map(|r| r.len()).unwrap_or(0);
                    self.pos += 1;
                    self.expect(&Tok::LParen)?;
                    let args = self.term_args()?;
                    if args.len() != arity {
                        return Err(self.err(format!(
                            "{} expects {} arguments, got {}",
                            p.token(),
                            arity,
                            args.len()
                        )));
                    }
                    Ok(Formula::Atom(p, args))
                } else {
                    self.rel_atom()
                }
            }
            _ => self.rel_atom(),
        }
    }

    fn rel_atom(&mut self) -> Result<Formula, LangError> {
        let t = self.term()?;
        match self.peek() {
            Some(Tok::EqOp) => {
                self.pos += 1;
                let u = self.term()?;
                Ok(Formula::Atom(PredSym::Eq, vec![t, u]))
            }
            Some(Tok::LtOp) => {
                self.pos += 1;
                let u = self.term()?;
                Ok(Formula::Atom(PredSym::Lt, vec![t, u]))
            }
            Some(Tok::ApproxOp) => {
                self.pos += 1;
                let u = self.term()?;
                Ok(Formula::Atom(PredSym::Approx, vec![t, u]))
            }
            Some(Tok::Ident(s)) if s == "in" => {
                self.pos += 1;
                let u = self.term()?;
                Ok(Formula::Atom(PredSym::In, vec![t, u]))
            }
            _ => Err(self.err("expected a relation (`=`, `in`, `~~`, `<`) to complete the atom")),
        }
    }

    // ----- terms ---------------------------------------------------------

    fn term_args(&mut self) -> Result<Vec<Term>, LangError> {
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.next_tok() {
                Some(Tok::Comma) => continue,
                Some(Tok::RParen) => break,
                _ => return Err(self.err("expected `,` or `)` in argument list")),
            }
        }
        Ok(args)
    }

    pub fn term(&mut self) -> Result<Term, LangError> {
        let mut a = self.mul_t()?;
        while self.peek() == Some(&Tok::PlusOp) {
            self.pos += 1;
            let b = self.mul_t()?;
            a = Term::App(FunSym::Plus, vec![a, b]);
        }
        Ok(a)
    }

    fn mul_t(&mut self) -> Result<Term, LangError> {
        let mut a = self.slash_t()?;
        while self.peek() == Some(&Tok::StarOp) {
            self.pos += 1;
            let b = self.slash_t()?;
            a = Term::App(FunSym::Times, vec![a, b]);
        }
        Ok(a)
    }

    fn slash_t(&mut self) -> Result<Term, LangError> {
        let mut a = self.primary_t()?;
        while self.peek() == Some(&Tok::SlashOp) {
            self.pos += 1;
            let b = self.primary_t()?;
            a = Term::App(FunSym::Slash, vec![a, b]);
        }
        Ok(a)
    }

    fn numeral(&mut self, n: u64) -> Result<Term, LangError> {
        match self.lang {
            Lang::Zermod | Lang::Arith => Ok(Term::numeral(n)),
            Lang::Zskol if n == 0 => Ok(Term::constant(FunSym::ZeroSet)),
            Lang::Zskol if n == 1 => Ok(Term::constant(FunSym::OneSet)),
            _ => Err(self.err(format!("numeral {} is not a term of {}", n, self.lang.name()))),
        }
    }

    fn primary_t(&mut self) -> Result<Term, LangError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                self.numeral(n)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::LBrace) => {
                if !Signature::for_lang(self.lang).has_set_compr() {
                    return Err(self.err(format!(
                        "set comprehension is not part of {}",
                        self.lang.name()
                    )));
                }
                self.pos += 1;
                let name = self.var_name()?;
                self.expect_keyword("in")?;
                let source = self.term()?;
                self.expect(&Tok::Pipe)?;
                let pred = self.formula()?;
                self.expect(&Tok::RBrace)?;
                Ok(Term::SetCompr(Box::new(SetComprTerm {
                    bound: Var::new(name, Sort::Set),
                    source,
                    pred,
                })))
            }
            Some(Tok::LBracket) => {
                if !Signature::for_lang(self.lang).has_class_compr() {
                    return Err(self.err(format!(
                        "class comprehension is not part of {}",
                        self.lang.name()
                    )));
                }
                self.pos += 1;
                let name = self.var_name()?;
                self.expect(&Tok::Pipe)?;
                let pred = self.formula()?;
                self.expect(&Tok::RBracket)?;
                Ok(Term::ClassCompr(Box::new(ClassComprTerm {
                    bound: Var::new(name, Sort::Set),
                    pred,
                })))
            }
            Some(Tok::Ident(name)) => {
                if name == "compr" || name == "nclass" || name == "nrel" {
                    return self.family(&name);
                }
                if let Some(f) = lookup_fun(&name, self.lang) {
                    let sig = Signature::for_lang(self.lang);
                    let (argsorts, _) = sig.fun_rank(f).expect("looked-up symbol has a rank");
                    self.pos += 1;
                    if argsorts.is_empty() {
                        return Ok(Term::constant(f));
                    }
                    self.expect(&Tok::LParen)?;
                    let args = self.term_args()?;
                    if args.len() != argsorts.len() {
                        return Err(self.err(format!(
                            "{} expects {} arguments, got {}",
                            f.token(),
                            argsorts.len(),
                            args.len()
                        )));
                    }
                    Ok(Term::App(f, args))
                } else if is_reserved(&name) {
                    Err(self.err(format!(
                        "`{}` is not available in language {}",
                        name,
                        self.lang.name()
                    )))
                } else {
                    self.pos += 1;
                    let sort = if self.peek() == Some(&Tok::Colon) {
                        self.pos += 1;
                        self.sort()?
                    } else {
                        Sort::Unknown
                    };
                    Ok(Term::var(name, sort))
                }
            }
            Some(t) => Err(self.err(format!("expected a term, found {}", t.describe()))),
            None => Err(self.err("expected a term, found end of input")),
        }
    }

    /// `compr[x; y1, y2 | P](b1, b2, a)`, `nclass[x; ys | P](bs)`,
    /// `nrel[x, x'; ys | P](bs)`.  The `..` schematic parameter form is not
    /// accepted here; rewrite rule files handle it separately.
    fn family(&mut self, kind: &str) -> Result<Term, LangError> {
        if self.lang != Lang::Zermod {
            return Err(self.err(format!(
                "`{}` families are only part of zermod",
                kind
            )));
        }
        self.pos += 1;
        self.expect(&Tok::LBracket)?;
        let binder_sort = if kind == "compr" { Sort::G } else { Sort::N };
        let b0 = Var::new(self.var_name()?, binder_sort);
        let b1 = if kind == "nrel" {
            self.expect(&Tok::Comma)?;
            Some(Var::new(self.var_name()?, Sort::N))
        } else {
            None
        };
        let mut params = Vec::new();
        if self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            while matches!(self.peek(), Some(Tok::Ident(_))) {
                params.push(Var::new(self.var_name()?, binder_sort));
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(&Tok::Pipe)?;
        let pred = self.formula()?;
        self.expect(&Tok::RBracket)?;
        let args = if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            self.term_args()?
        } else {
            Vec::new()
        };
        match kind {
            "compr" => {
                if args.len() != params.len() + 1 {
                    return Err(self.err(format!(
                        "compr with {} parameters expects {} arguments, got {}",
                        params.len(),
                        params.len() + 1,
                        args.len()
                    )));
                }
                let mut args = args;
                let source = args.pop().expect("nonempty");
                Ok(Term::Compr(Box::new(ComprTerm {
                    bound: b0,
                    params,
                    pred,
                    args,
                    source,
                })))
            }
            "nclass" => {
                if args.len() != params.len() {
                    return Err(self.err(format!(
                        "nclass with {} parameters expects {} arguments, got {}",
                        params.len(),
                        params.len(),
                        args.len()
                    )));
                }
                Ok(Term::NodeClass(Box::new(NodeClassTerm {
                    bound: b0,
                    params,
                    pred,
                    args,
                })))
            }
            _ => {
                if args.len() != params.len() {
                    return Err(self.err(format!(
                        "nrel with {} parameters expects {} arguments, got {}",
                        params.len(),
                        params.len(),
                        args.len()
                    )));
                }
                Ok(Term::NodeRel(Box::new(NodeRelTerm {
                    bound: (b0, b1.expect("nrel has two binders")),
                    params,
                    pred,
                    args,
                })))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// public entry points

fn finish_formula(
    raw: Formula,
    lang: Lang,
    pins: &BTreeMap<String, Sort>,
) -> Result<Formula, LangError> {
    let f = check::resolve_formula(&raw, lang, pins)?;
    check::check_sorts(&Parsed::Formula(f.clone()), &Signature::for_lang(lang))?;
    Ok(f)
}

fn finish_term(raw: Term, lang: Lang, pins: &BTreeMap<String, Sort>) -> Result<Term, LangError> {
    let t = check::resolve_term(&raw, lang, pins)?;
    check::check_sorts(&Parsed::Term(t.clone()), &Signature::for_lang(lang))?;
    Ok(t)
}

pub fn parse_formula(text: &str, lang: Lang) -> Result<Formula, LangError> {
    parse_formula_with_pins(text, lang, &BTreeMap::new())
}

pub fn parse_formula_with_pins(
    text: &str,
    lang: Lang,
    pins: &BTreeMap<String, Sort>,
) -> Result<Formula, LangError> {
    let toks = lex(text)?;
    let mut p = P::new(&toks, lang);
    let raw = p.formula()?;
    if !p.at_end() {
        return Err(p.err("trailing input after formula"));
    }
    finish_formula(raw, lang, pins)
}

pub fn parse_term(text: &str, lang: Lang) -> Result<Term, LangError> {
    parse_term_with_pins(text, lang, &BTreeMap::new())
}

pub fn parse_term_with_pins(
    text: &str,
    lang: Lang,
    pins: &BTreeMap<String, Sort>,
) -> Result<Term, LangError> {
    let toks = lex(text)?;
    let mut p = P::new(&toks, lang);
    let raw = p.term()?;
    if !p.at_end() {
        return Err(p.err("trailing input after term"));
    }
    finish_term(raw, lang, pins)
}

/// Parse either a term or a formula.  Formulas win when both readings exist
/// (they never do: the categories are disjoint); on failure the error of the
/// parse that consumed more input is reported.
pub fn parse(text: &str, lang: Lang) -> Result<Parsed, LangError> {
    let toks = lex(text)?;
    let mut pf = P::new(&toks, lang);
    let f_res = pf.formula().and_then(|raw| {
        if pf.at_end() {
            Ok(raw)
        } else {
            Err(pf.err("trailing input after formula"))
        }
    });
    let f_pos = pf.pos;
    match f_res {
        Ok(raw) => finish_formula(raw, lang, &BTreeMap::new()).map(Parsed::Formula),
        Err(f_err) => {
            let mut pt = P::new(&toks, lang);
            let t_res = pt.term().and_then(|raw| {
                if pt.at_end() {
                    Ok(raw)
                } else {
                    Err(pt.err("trailing input after term"))
                }
            });
            match t_res {
                Ok(raw) => finish_term(raw, lang, &BTreeMap::new()).map(Parsed::Term),
                Err(t_err) => {
                    if pt.pos > f_pos {
                        Err(t_err)
                    } else {
                        Err(f_err)
                    }
                }
            }
        }
    }
}
