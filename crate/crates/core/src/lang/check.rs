//! Sort inference for parsed syntax and the `check_sorts` validator.

use std::collections::BTreeMap;

use super::ast::{Formula, FunSym, Parsed, PredSym, Sort, Term, Var};
use super::sig::{Lang, Signature};
use super::LangError;

/// Structural result sort of a term, independent of variable bindings.
/// `None` when the head is a variable of unknown sort.
pub fn sort_of_opt(t: &Term) -> Option<Sort> {
    match t {
        Term::Var(v) => {
            if v.sort == Sort::Unknown {
                None
            } else {
                Some(v.sort)
            }
        }
        Term::App(f, args) => Some(result_sort(*f, args)),
        Term::Compr(_) => Some(Sort::G),
        Term::NodeClass(_) => Some(Sort::C),
        Term::NodeRel(_) => Some(Sort::R),
        Term::SetCompr(_) => Some(Sort::Set),
        Term::ClassCompr(_) => Some(Sort::Class),
    }
}

/// Result sort of a function symbol.  The constructors shared between the
/// graph and set languages are disambiguated by their first argument.
fn result_sort(f: FunSym, args: &[Term]) -> Sort {
    use FunSym::*;
    match f {
        Root | O | I | IInv | J | JInv | Zero | Succ | PredN | Rho | Plus | Times => Sort::N,
        Slash | RhoInv => Sort::G,
        Omega => Sort::G,
        Union | Pair | Pow | Tc => match args.first().and_then(sort_of_opt) {
            Some(Sort::Set) => Sort::Set,
            _ => Sort::G,
        },
        NatSet | EmptySet | Cup | Sing | OPair | Proj1 | Proj2 | Prod | ZeroSet | OneSet
        | FnApp | Restrict | Car | Clos | Lcs | CastR | Dom | Cod => Sort::Set,
    }
}

#[derive(Debug, Clone, Default)]
struct Scope {
    frames: Vec<(String, Sort)>,
}

impl Scope {
    fn push(&mut self, v: &Var) {
        self.frames.push((v.name.clone(), v.sort));
    }
    fn pop(&mut self, n: usize) {
        for _ in 0..n {
            self.frames.pop();
        }
    }
    fn get(&self, name: &str) -> Option<Sort> {
        self.frames
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, s)| *s)
    }
}

struct Infer {
    sig: Signature,
    free: BTreeMap<String, Sort>,
    eqs: Vec<(String, String)>,
}

impl Infer {
    fn constrain(&mut self, name: &str, declared: Sort, expected: Option<Sort>) -> Result<(), LangError> {
        let pin = |s: Sort, free: &mut BTreeMap<String, Sort>| -> Result<(), LangError> {
            match free.get(name) {
                Some(prev) if *prev != s => Err(LangError::SortMismatch {
                    var: name.to_string(),
                    expected: *prev,
                    found: s,
                }),
                _ => {
                    free.insert(name.to_string(), s);
                    Ok(())
                }
            }
        };
        if declared != Sort::Unknown {
            pin(declared, &mut self.free)?;
        }
        if let Some(s) = expected {
            pin(s, &mut self.free)?;
        }
        Ok(())
    }

    fn term(&mut self, t: &Term, expected: Option<Sort>, scope: &mut Scope) -> Result<(), LangError> {
        match t {
            Term::Var(v) => {
                if let Some(s) = scope.get(&v.name) {
                    if let Some(e) = expected {
                        if e != s {
                            return Err(LangError::SortMismatch {
                                var: v.name.clone(),
                                expected: e,
                                found: s,
                            });
                        }
                    }
                    Ok(())
                } else {
                    self.constrain(&v.name, v.sort, expected)
                }
            }
            Term::App(f, args) => {
                let (argsorts, _) = self.sig.fun_rank(*f).ok_or_else(|| LangError::UnknownSymbol {
                    symbol: f.token().to_string(),
                    lang: self.sig.lang,
                })?;
                for (a, s) in args.iter().zip(argsorts) {
                    self.term(a, Some(s), scope)?;
                }
                Ok(())
            }
            Term::Compr(c) => {
                for a in &c.args {
                    self.term(a, Some(Sort::G), scope)?;
                }
                self.term(&c.source, Some(Sort::G), scope)?;
                scope.push(&c.bound);
                for p in &c.params {
                    scope.push(p);
                }
                self.formula(&c.pred, scope)?;
                scope.pop(1 + c.params.len());
                Ok(())
            }
            Term::NodeClass(c) => {
                for a in &c.args {
                    self.term(a, Some(Sort::N), scope)?;
                }
                scope.push(&c.bound);
                for p in &c.params {
                    scope.push(p);
                }
                self.formula(&c.pred, scope)?;
                scope.pop(1 + c.params.len());
                Ok(())
            }
            Term::NodeRel(c) => {
                for a in &c.args {
                    self.term(a, Some(Sort::N), scope)?;
                }
                scope.push(&c.bound.0);
                scope.push(&c.bound.1);
                for p in &c.params {
                    scope.push(p);
                }
                self.formula(&c.pred, scope)?;
                scope.pop(2 + c.params.len());
                Ok(())
            }
            Term::SetCompr(c) => {
                self.term(&c.source, Some(Sort::Set), scope)?;
                scope.push(&c.bound);
                self.formula(&c.pred, scope)?;
                scope.pop(1);
                Ok(())
            }
            Term::ClassCompr(c) => {
                scope.push(&c.bound);
                self.formula(&c.pred, scope)?;
                scope.pop(1);
                Ok(())
            }
        }
    }

    /// Sort currently known for a term, given the scope and the free map.
    fn known_sort(&self, t: &Term, scope: &Scope) -> Option<Sort> {
        match t {
            Term::Var(v) => scope
                .get(&v.name)
                .or_else(|| self.free.get(&v.name).copied())
                .or(if v.sort != Sort::Unknown { Some(v.sort) } else { None }),
            // the result sort of an application comes from this language's
            // rank table (Union/Pair/Pow/TC exist at both G and Set)
            Term::App(f, _) => self.sig.fun_rank(*f).map(|(_, r)| r),
            _ => sort_of_opt(t),
        }
    }

    fn formula(&mut self, f: &Formula, scope: &mut Scope) -> Result<(), LangError> {
        match f {
            Formula::Atom(PredSym::Eq, args) if args.len() == 2 => {
                let s0 = self.known_sort(&args[0], scope);
                let s1 = self.known_sort(&args[1], scope);
                match (s0, s1) {
                    (Some(s), _) => {
                        self.term(&args[0], Some(s), scope)?;
                        self.term(&args[1], Some(s), scope)?;
                    }
                    (None, Some(s)) => {
                        self.term(&args[0], Some(s), scope)?;
                        self.term(&args[1], Some(s), scope)?;
                    }
                    (None, None) => {
                        self.term(&args[0], None, scope)?;
                        self.term(&args[1], None, scope)?;
                        if let (Term::Var(a), Term::Var(b)) = (&args[0], &args[1]) {
                            if scope.get(&a.name).is_none() && scope.get(&b.name).is_none() {
                                self.eqs.push((a.name.clone(), b.name.clone()));
                            }
                        }
                    }
                }
                Ok(())
            }
            Formula::Atom(p, args) => {
                let ranks = self.sig.pred_rank(*p).ok_or_else(|| LangError::UnknownSymbol {
                    symbol: p.token().to_string(),
                    lang: self.sig.lang,
                })?;
                for (a, s) in args.iter().zip(ranks) {
                    self.term(a, Some(s), scope)?;
                }
                Ok(())
            }
            Formula::True | Formula::False => Ok(()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                self.formula(a, scope)?;
                self.formula(b, scope)
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                scope.push(v);
                self.formula(body, scope)?;
                scope.pop(1);
                Ok(())
            }
            Formula::Meta(m) => {
                for (_, t) in &m.subst {
                    self.term(t, None, scope)?;
                }
                Ok(())
            }
        }
    }

    fn settle(&mut self, lang: Lang) {
        loop {
            let mut changed = false;
            for (a, b) in self.eqs.clone() {
                match (self.free.get(&a).copied(), self.free.get(&b).copied()) {
                    (Some(s), None) => {
                        self.free.insert(b.clone(), s);
                        changed = true;
                    }
                    (None, Some(s)) => {
                        self.free.insert(a.clone(), s);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let default = lang.default_sort();
        for (a, b) in self.eqs.clone() {
            self.free.entry(a).or_insert(default);
            self.free.entry(b).or_insert(default);
        }
    }
}

fn rewrite_term(t: &Term, free: &BTreeMap<String, Sort>, scope: &mut Scope, default: Sort) -> Term {
    match t {
        Term::Var(v) => {
            let sort = scope
                .get(&v.name)
                .or_else(|| free.get(&v.name).copied())
                .unwrap_or(if v.sort != Sort::Unknown { v.sort } else { default });
            Term::Var(Var::new(v.name.clone(), sort))
        }
        Term::App(f, args) => Term::App(
            *f,
            args.iter().map(|a| rewrite_term(a, free, scope, default)).collect(),
        ),
        Term::Compr(c) => {
            let args = c.args.iter().map(|a| rewrite_term(a, free, scope, default)).collect();
            let source = rewrite_term(&c.source, free, scope, default);
            scope.push(&c.bound);
            for p in &c.params {
                scope.push(p);
            }
            let pred = rewrite_formula(&c.pred, free, scope, default);
            scope.pop(1 + c.params.len());
            Term::Compr(Box::new(super::ast::ComprTerm {
                bound: c.bound.clone(),
                params: c.params.clone(),
                pred,
                args,
                source,
            }))
        }
        Term::NodeClass(c) => {
            let args = c.args.iter().map(|a| rewrite_term(a, free, scope, default)).collect();
            scope.push(&c.bound);
            for p in &c.params {
                scope.push(p);
            }
            let pred = rewrite_formula(&c.pred, free, scope, default);
            scope.pop(1 + c.params.len());
            Term::NodeClass(Box::new(super::ast::NodeClassTerm {
                bound: c.bound.clone(),
                params: c.params.clone(),
                pred,
                args,
            }))
        }
        Term::NodeRel(c) => {
            let args = c.args.iter().map(|a| rewrite_term(a, free, scope, default)).collect();
            scope.push(&c.bound.0);
            scope.push(&c.bound.1);
            for p in &c.params {
                scope.push(p);
            }
            let pred = rewrite_formula(&c.pred, free, scope, default);
            scope.pop(2 + c.params.len());
            Term::NodeRel(Box::new(super::ast::NodeRelTerm {
                bound: c.bound.clone(),
                params: c.params.clone(),
                pred,
                args,
            }))
        }
        Term::SetCompr(c) => {
            let source = rewrite_term(&c.source, free, scope, default);
            scope.push(&c.bound);
            let pred = rewrite_formula(&c.pred, free, scope, default);
            scope.pop(1);
            Term::SetCompr(Box::new(super::ast::SetComprTerm {
                bound: c.bound.clone(),
                source,
                pred,
            }))
        }
        Term::ClassCompr(c) => {
            scope.push(&c.bound);
            let pred = rewrite_formula(&c.pred, free, scope, default);
            scope.pop(1);
            Term::ClassCompr(Box::new(super::ast::ClassComprTerm {
                bound: c.bound.clone(),
                pred,
            }))
        }
    }
}

fn rewrite_formula(
    f: &Formula,
    free: &BTreeMap<String, Sort>,
    scope: &mut Scope,
    default: Sort,
) -> Formula {
    match f {
        Formula::Atom(p, args) => Formula::Atom(
            *p,
            args.iter().map(|a| rewrite_term(a, free, scope, default)).collect(),
        ),
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::And(a, b) => Formula::and(
            rewrite_formula(a, free, scope, default),
            rewrite_formula(b, free, scope, default),
        ),
        Formula::Or(a, b) => Formula::or(
            rewrite_formula(a, free, scope, default),
            rewrite_formula(b, free, scope, default),
        ),
        Formula::Imp(a, b) => Formula::imp(
            rewrite_formula(a, free, scope, default),
            rewrite_formula(b, free, scope, default),
        ),
        Formula::Forall(v, body) => {
            scope.push(v);
            let b = rewrite_formula(body, free, scope, default);
            scope.pop(1);
            Formula::forall(v.clone(), b)
        }
        Formula::Exists(v, body) => {
            scope.push(v);
            let b = rewrite_formula(body, free, scope, default);
            scope.pop(1);
            Formula::exists(v.clone(), b)
        }
        Formula::Meta(m) => Formula::Meta(super::ast::MetaAtom {
            name: m.name.clone(),
            subst: m
                .subst
                .iter()
                .map(|(v, t)| (v.clone(), rewrite_term(t, free, scope, default)))
                .collect(),
        }),
    }
}

/// Assign sorts to the free variables of a formula (bound variables carry
/// their binder's sort).  `pins` pre-assigns sorts to named free variables.
pub fn resolve_formula(
    f: &Formula,
    lang: Lang,
    pins: &BTreeMap<String, Sort>,
) -> Result<Formula, LangError> {
    let mut inf = Infer {
        sig: Signature::for_lang(lang),
        free: pins.clone(),
        eqs: Vec::new(),
    };
    inf.formula(f, &mut Scope::default())?;
    inf.settle(lang);
    Ok(rewrite_formula(f, &inf.free, &mut Scope::default(), lang.default_sort()))
}

/// Same as [`resolve_formula`] for terms.
pub fn resolve_term(
    t: &Term,
    lang: Lang,
    pins: &BTreeMap<String, Sort>,
) -> Result<Term, LangError> {
    let mut inf = Infer {
        sig: Signature::for_lang(lang),
        free: pins.clone(),
        eqs: Vec::new(),
    };
    inf.term(t, None, &mut Scope::default())?;
    inf.settle(lang);
    Ok(rewrite_term(t, &inf.free, &mut Scope::default(), lang.default_sort()))
}

/// Resolve formulas of a term/formula rewrite rule jointly (shared pattern
/// variables must agree across both sides).
pub fn resolve_rule_formulas(
    lhs: &Formula,
    rhs: &Formula,
    lang: Lang,
) -> Result<(Formula, Formula), LangError> {
    let mut inf = Infer {
        sig: Signature::for_lang(lang),
        free: BTreeMap::new(),
        eqs: Vec::new(),
    };
    inf.formula(lhs, &mut Scope::default())?;
    inf.formula(rhs, &mut Scope::default())?;
    inf.settle(lang);
    let default = lang.default_sort();
    Ok((
        rewrite_formula(lhs, &inf.free, &mut Scope::default(), default),
        rewrite_formula(rhs, &inf.free, &mut Scope::default(), default),
    ))
}

pub fn resolve_rule_terms(lhs: &Term, rhs: &Term, lang: Lang) -> Result<(Term, Term), LangError> {
    let mut inf = Infer {
        sig: Signature::for_lang(lang),
        free: BTreeMap::new(),
        eqs: Vec::new(),
    };
    inf.term(lhs, None, &mut Scope::default())?;
    inf.term(rhs, None, &mut Scope::default())?;
    inf.settle(lang);
    let default = lang.default_sort();
    Ok((
        rewrite_term(lhs, &inf.free, &mut Scope::default(), default),
        rewrite_term(rhs, &inf.free, &mut Scope::default(), default),
    ))
}

// ---------------------------------------------------------------------------
// check_sorts

/// Successful sort report: the sort of a term, or `None` for a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortReport {
    pub sort: Option<Sort>,
}

#[derive(Debug, Clone)]
struct Ck {
    sig: Signature,
    allow_meta: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FormulaMode {
    /// any formula of the language
    Plain,
    /// indexing formula of an `f` family: only `in`/`~~` atoms, quantifiers at `G`
    ComprIndex,
    /// indexing formula of a `g`/`g'` family: no `g`/`g'` symbols inside
    NodeIndex,
    /// restricted formula: no class quantifiers
    Restricted,
}

fn err(path: &[String], msg: String) -> LangError {
    LangError::Sort {
        path: path.join("."),
        msg,
    }
}

impl Ck {
    fn term(&self, t: &Term, path: &mut Vec<String>, mode: FormulaMode) -> Result<Sort, LangError> {
        match t {
            Term::Var(v) => {
                if v.sort == Sort::Unknown {
                    return Err(err(path, format!("variable {} has unresolved sort", v.name)));
                }
                if !self.sig.has_sort(v.sort) {
                    return Err(err(
                        path,
                        format!("variable {} has sort {} outside this language", v.name, v.sort),
                    ));
                }
                Ok(v.sort)
            }
            Term::App(f, args) => {
                let (argsorts, res) = self.sig.fun_rank(*f).ok_or_else(|| {
                    err(path, format!("symbol {} is not in this signature", f.token()))
                })?;
                if argsorts.len() != args.len() {
                    return Err(err(
                        path,
                        format!(
                            "symbol {} expects {} arguments, got {}",
                            f.token(),
                            argsorts.len(),
                            args.len()
                        ),
                    ));
                }
                for (idx, (a, want)) in args.iter().zip(&argsorts).enumerate() {
                    path.push(idx.to_string());
                    let got = self.term(a, path, mode)?;
                    if got != *want {
                        return Err(err(
                            path,
                            format!("argument of {} has sort {}, expected {}", f.token(), got, want),
                        ));
                    }
                    path.pop();
                }
                Ok(res)
            }
            Term::Compr(c) => {
                if !self.sig.has_graph_families() {
                    return Err(err(path, "comprehension-graph family outside Zermod".into()));
                }
                if c.bound.sort != Sort::G || c.params.iter().any(|p| p.sort != Sort::G) {
                    return Err(err(path, "f-family binders must have sort G".into()));
                }
                if c.args.len() != c.params.len() {
                    return Err(err(
                        path,
                        format!(
                            "f-family expects {} parameters, got {}",
                            c.params.len(),
                            c.args.len()
                        ),
                    ));
                }
                for (idx, a) in c.args.iter().enumerate() {
                    path.push(idx.to_string());
                    let got = self.term(a, path, mode)?;
                    if got != Sort::G {
                        return Err(err(path, format!("f-family argument has sort {}, expected G", got)));
                    }
                    path.pop();
                }
                path.push("source".into());
                let got = self.term(&c.source, path, mode)?;
                if got != Sort::G {
                    return Err(err(path, format!("f-family source has sort {}, expected G", got)));
                }
                path.pop();
                self.family_scope(&c.pred, &binders_of(&c.bound, &c.params), path)?;
                path.push("pred".into());
                self.formula(&c.pred, path, FormulaMode::ComprIndex)?;
                path.pop();
                Ok(Sort::G)
            }
            Term::NodeClass(c) => {
                if !self.sig.has_graph_families() {
                    return Err(err(path, "node-class family outside Zermod".into()));
                }
                if c.bound.sort != Sort::N || c.params.iter().any(|p| p.sort != Sort::N) {
                    return Err(err(path, "g-family binders must have sort N".into()));
                }
                if c.args.len() != c.params.len() {
                    return Err(err(
                        path,
                        format!(
                            "g-family expects {} parameters, got {}",
                            c.params.len(),
                            c.args.len()
                        ),
                    ));
                }
                for (idx, a) in c.args.iter().enumerate() {
                    path.push(idx.to_string());
                    let got = self.term(a, path, mode)?;
                    if got != Sort::N {
                        return Err(err(path, format!("g-family argument has sort {}, expected N", got)));
                    }
                    path.pop();
                }
                self.family_scope(&c.pred, &binders_of(&c.bound, &c.params), path)?;
                if mentions_node_family_formula(&c.pred) {
                    return Err(err(
                        path,
                        "g-family indexing formula mentions a g or g' symbol".into(),
                    ));
                }
                path.push("pred".into());
                self.formula(&c.pred, path, FormulaMode::NodeIndex)?;
                path.pop();
                Ok(Sort::C)
            }
            Term::NodeRel(c) => {
                if !self.sig.has_graph_families() {
                    return Err(err(path, "node-relation family outside Zermod".into()));
                }
                if c.bound.0.sort != Sort::N
                    || c.bound.1.sort != Sort::N
                    || c.params.iter().any(|p| p.sort != Sort::N)
                {
                    return Err(err(path, "g'-family binders must have sort N".into()));
                }
                if c.args.len() != c.params.len() {
                    return Err(err(
                        path,
                        format!(
                            "g'-family expects {} parameters, got {}",
                            c.params.len(),
                            c.args.len()
                        ),
                    ));
                }
                for (idx, a) in c.args.iter().enumerate() {
                    path.push(idx.to_string());
                    let got = self.term(a, path, mode)?;
                    if got != Sort::N {
                        return Err(err(path, format!("g'-family argument has sort {}, expected N", got)));
                    }
                    path.pop();
                }
                let mut binders = vec![c.bound.0.clone(), c.bound.1.clone()];
                binders.extend(c.params.iter().cloned());
                self.family_scope(&c.pred, &binders, path)?;
                if mentions_node_family_formula(&c.pred) {
                    return Err(err(
                        path,
                        "g'-family indexing formula mentions a g or g' symbol".into(),
                    ));
                }
                path.push("pred".into());
                self.formula(&c.pred, path, FormulaMode::NodeIndex)?;
                path.pop();
                Ok(Sort::R)
            }
            Term::SetCompr(c) => {
                if !self.sig.has_set_compr() {
                    return Err(err(path, "set comprehension outside Zskol/naive".into()));
                }
                if c.bound.sort != Sort::Set {
                    return Err(err(path, "set-comprehension binder must have sort Set".into()));
                }
                path.push("source".into());
                let got = self.term(&c.source, path, mode)?;
                if got != Sort::Set {
                    return Err(err(path, format!("comprehension source has sort {}, expected Set", got)));
                }
                path.pop();
                path.push("pred".into());
                self.formula(&c.pred, path, FormulaMode::Restricted)?;
                path.pop();
                Ok(Sort::Set)
            }
            Term::ClassCompr(c) => {
                if !self.sig.has_class_compr() {
                    return Err(err(path, "class comprehension outside Zskol".into()));
                }
                if c.bound.sort != Sort::Set {
                    return Err(err(path, "class-comprehension binder must have sort Set".into()));
                }
                path.push("pred".into());
                self.formula(&c.pred, path, FormulaMode::Restricted)?;
                path.pop();
                Ok(Sort::Class)
            }
        }
    }

    fn family_scope(
        &self,
        pred: &Formula,
        binders: &[Var],
        path: &[String],
    ) -> Result<(), LangError> {
        let fv = super::subst::fv_formula(pred);
        for v in fv {
            if !binders.contains(&v) {
                return Err(err(
                    path,
                    format!(
                        "indexing formula mentions {} which is not a declared binder",
                        v.name
                    ),
                ));
            }
        }
        Ok(())
    }

    fn formula(&self, f: &Formula, path: &mut Vec<String>, mode: FormulaMode) -> Result<(), LangError> {
        match f {
            Formula::Atom(PredSym::Eq, args) if args.len() == 2 => {
                if mode == FormulaMode::ComprIndex {
                    return Err(err(path, "f-family indexing formulas admit only in/~~ atoms".into()));
                }
                path.push("0".into());
                let s0 = self.term(&args[0], path, mode)?;
                path.pop();
                path.push("1".into());
                let s1 = self.term(&args[1], path, mode)?;
                path.pop();
                if s0 != s1 {
                    return Err(err(path, format!("= applied at sorts {} and {}", s0, s1)));
                }
                if !self.sig.eq_ok(s0) {
                    return Err(err(path, format!("= is not available at sort {}", s0)));
                }
                Ok(())
            }
            Formula::Atom(p, args) => {
                if mode == FormulaMode::ComprIndex && !matches!(p, PredSym::In | PredSym::Approx) {
                    return Err(err(
                        path,
                        format!(
                            "f-family indexing formulas admit only in/~~ atoms, found {}",
                            p.token()
                        ),
                    ));
                }
                let ranks = self.sig.pred_rank(*p).ok_or_else(|| {
                    err(path, format!("predicate {} is not in this signature", p.token()))
                })?;
                if ranks.len() != args.len() {
                    return Err(err(
                        path,
                        format!(
                            "predicate {} expects {} arguments, got {}",
                            p.token(),
                            ranks.len(),
                            args.len()
                        ),
                    ));
                }
                for (idx, (a, want)) in args.iter().zip(&ranks).enumerate() {
                    path.push(idx.to_string());
                    let got = self.term(a, path, mode)?;
                    if got != *want {
                        return Err(err(
                            path,
                            format!(
                                "argument {} of {} has sort {}, expected {}",
                                idx,
                                p.token(),
                                got,
                                want
                            ),
                        ));
                    }
                    path.pop();
                }
                Ok(())
            }
            Formula::True | Formula::False => Ok(()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                path.push("0".into());
                self.formula(a, path, mode)?;
                path.pop();
                path.push("1".into());
                self.formula(b, path, mode)?;
                path.pop();
                Ok(())
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                if v.sort == Sort::Unknown || !self.sig.has_sort(v.sort) {
                    return Err(err(path, format!("binder {} has sort {} outside this language", v.name, v.sort)));
                }
                if mode == FormulaMode::ComprIndex && v.sort != Sort::G {
                    return Err(err(
                        path,
                        "f-family indexing formulas quantify over sort G only".into(),
                    ));
                }
                if mode == FormulaMode::Restricted && v.sort == Sort::Class {
                    return Err(err(path, "restricted formulas cannot quantify over classes".into()));
                }
                path.push("body".into());
                self.formula(body, path, mode)?;
                path.pop();
                Ok(())
            }
            Formula::Meta(m) => {
                if !self.allow_meta {
                    return Err(err(path, format!("metavariable ?{} outside a rewrite rule", m.name)));
                }
                Ok(())
            }
        }
    }
}

fn binders_of(bound: &Var, params: &[Var]) -> Vec<Var> {
    let mut v = vec![bound.clone()];
    v.extend(params.iter().cloned());
    v
}

/// Scan for `g`/`g'` family applications (used for the `g` indexing-formula
/// restriction).
pub fn mentions_node_family_term(t: &Term) -> bool {
    match t {
        Term::Var(_) => false,
        Term::App(_, args) => args.iter().any(mentions_node_family_term),
        Term::NodeClass(_) | Term::NodeRel(_) => true,
        Term::Compr(c) => {
            c.args.iter().any(mentions_node_family_term)
                || mentions_node_family_term(&c.source)
                || mentions_node_family_formula(&c.pred)
        }
        Term::SetCompr(c) => {
            mentions_node_family_term(&c.source) || mentions_node_family_formula(&c.pred)
        }
        Term::ClassCompr(c) => mentions_node_family_formula(&c.pred),
    }
}

pub fn mentions_node_family_formula(f: &Formula) -> bool {
    match f {
        Formula::Atom(_, args) => args.iter().any(mentions_node_family_term),
        Formula::True | Formula::False => false,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            mentions_node_family_formula(a) || mentions_node_family_formula(b)
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => mentions_node_family_formula(b),
        Formula::Meta(_) => false,
    }
}

fn check_obj(obj: &Parsed, sig: &Signature, allow_meta: bool) -> Result<SortReport, LangError> {
    let ck = Ck { sig: *sig, allow_meta };
    let mut path = Vec::new();
    match obj {
        Parsed::Term(t) => {
            let s = ck.term(t, &mut path, FormulaMode::Plain)?;
            Ok(SortReport { sort: Some(s) })
        }
        Parsed::Formula(f) => {
            ck.formula(f, &mut path, FormulaMode::Plain)?;
            Ok(SortReport { sort: None })
        }
    }
}

/// Validate an object against a signature: every symbol application must
/// match its declared rank and every binder family must satisfy the
/// signature invariants.  Reports the first violation with a path into the
/// syntax tree.
pub fn check_sorts(obj: &Parsed, sig: &Signature) -> Result<SortReport, LangError> {
    check_obj(obj, sig, false)
}

/// Like [`check_sorts`] but admits formula metavariables (rule templates).
pub fn check_sorts_in_rule(obj: &Parsed, sig: &Signature) -> Result<SortReport, LangError> {
    check_obj(obj, sig, true)
}
