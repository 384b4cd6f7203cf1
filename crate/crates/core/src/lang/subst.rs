//! Free variables, capture-avoiding substitution and alpha-equivalence.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Formula, MetaAtom, Term, Var};
use super::LangError;

/// A simultaneous variable-to-term binding.
pub type Binding = BTreeMap<Var, Term>;

pub fn free_vars_term(t: &Term, acc: &mut BTreeSet<Var>) {
    match t {
        Term::Var(v) => {
            acc.insert(v.clone());
        }
        Term::App(_, args) => {
            for a in args {
                free_vars_term(a, acc);
            }
        }
        Term::Compr(c) => {
            for a in &c.args {
                free_vars_term(a, acc);
            }
            free_vars_term(&c.source, acc);
            let mut inner = BTreeSet::new();
            free_vars_formula(&c.pred, &mut inner);
            inner.remove(&c.bound);
            for p in &c.params {
                inner.remove(p);
            }
            acc.extend(inner);
        }
        Term::NodeClass(c) => {
            for a in &c.args {
                free_vars_term(a, acc);
            }
            let mut inner = BTreeSet::new();
            free_vars_formula(&c.pred, &mut inner);
            inner.remove(&c.bound);
            for p in &c.params {
                inner.remove(p);
            }
            acc.extend(inner);
        }
        Term::NodeRel(c) => {
            for a in &c.args {
                free_vars_term(a, acc);
            }
            let mut inner = BTreeSet::new();
            free_vars_formula(&c.pred, &mut inner);
            inner.remove(&c.bound.0);
            inner.remove(&c.bound.1);
            for p in &c.params {
                inner.remove(p);
            }
            acc.extend(inner);
        }
        Term::SetCompr(c) => {
            free_vars_term(&c.source, acc);
            let mut inner = BTreeSet::new();
            free_vars_formula(&c.pred, &mut inner);
            inner.remove(&c.bound);
            acc.extend(inner);
        }
        Term::ClassCompr(c) => {
            let mut inner = BTreeSet::new();
            free_vars_formula(&c.pred, &mut inner);
            inner.remove(&c.bound);
            acc.extend(inner);
        }
    }
}

pub fn free_vars_formula(f: &Formula, acc: &mut BTreeSet<Var>) {
    match f {
        Formula::Atom(_, args) => {
            for a in args {
                free_vars_term(a, acc);
            }
        }
        Formula::True | Formula::False => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            free_vars_formula(a, acc);
            free_vars_formula(b, acc);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let mut inner = BTreeSet::new();
            free_vars_formula(body, &mut inner);
            inner.remove(v);
            acc.extend(inner);
        }
        Formula::Meta(m) => {
            for (_, t) in &m.subst {
                free_vars_term(t, acc);
            }
        }
    }
}

pub fn fv_term(t: &Term) -> BTreeSet<Var> {
    let mut s = BTreeSet::new();
    free_vars_term(t, &mut s);
    s
}

pub fn fv_formula(f: &Formula) -> BTreeSet<Var> {
    let mut s = BTreeSet::new();
    free_vars_formula(f, &mut s);
    s
}

/// All variable names free in the range of a binding.
fn range_names(b: &Binding) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for t in b.values() {
        for v in fv_term(t) {
            out.insert(v.name);
        }
    }
    out
}

/// Pick a name based on `base` that avoids `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    // first try a prime, then numeric suffixes
    let primed = format!("{}'", base);
    if !taken.contains(&primed) {
        return primed;
    }
    let stem: String = base.trim_end_matches('\'').to_string();
    for k in 1.. {
        let cand = format!("{}{}", stem, k);
        if !taken.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

/// Rename one binder if it clashes with the binding range or domain.
/// Returns the (possibly renamed) binder and the binding to use inside the
/// scope: the bound variable is removed from the binding, and a renaming is
/// added when the binder had to move.
fn enter_binder(v: &Var, binding: &Binding, body_fv: &BTreeSet<Var>) -> (Var, Binding) {
    let mut inner: Binding = binding
        .iter()
        .filter(|(k, _)| *k != v)
        .map(|(k, t)| (k.clone(), t.clone()))
        .collect();
    // does any substituted term capture v?
    let relevant: BTreeSet<String> = inner
        .iter()
        .filter(|(k, _)| body_fv.contains(*k))
        .flat_map(|(_, t)| fv_term(t).into_iter().map(|w| w.name))
        .collect();
    if relevant.contains(&v.name) {
        let mut taken = relevant;
        taken.extend(body_fv.iter().map(|w| w.name.clone()));
        taken.extend(range_names(binding));
        let nv = Var::new(fresh_name(&v.name, &taken), v.sort);
        inner.insert(v.clone(), Term::Var(nv.clone()));
        (nv, inner)
    } else {
        (v.clone(), inner)
    }
}

pub fn subst_term(t: &Term, binding: &Binding) -> Term {
    if binding.is_empty() {
        return t.clone();
    }
    match t {
        Term::Var(v) => match binding.get(v) {
            Some(u) => u.clone(),
            None => t.clone(),
        },
        Term::App(f, args) => {
            Term::App(*f, args.iter().map(|a| subst_term(a, binding)).collect())
        }
        Term::Compr(c) => {
            let args = c.args.iter().map(|a| subst_term(a, binding)).collect();
            let source = subst_term(&c.source, binding);
            let (bound, params, pred) =
                subst_family(&c.bound, &c.params, &c.pred, binding);
            Term::Compr(Box::new(super::ast::ComprTerm {
                bound,
                params,
                pred,
                args,
                source,
            }))
        }
        Term::NodeClass(c) => {
            let args = c.args.iter().map(|a| subst_term(a, binding)).collect();
            let (bound, params, pred) =
                subst_family(&c.bound, &c.params, &c.pred, binding);
            Term::NodeClass(Box::new(super::ast::NodeClassTerm {
                bound,
                params,
                pred,
                args,
            }))
        }
        Term::NodeRel(c) => {
            let args = c.args.iter().map(|a| subst_term(a, binding)).collect();
            // treat the two bound variables plus params uniformly
            let mut binders = vec![c.bound.0.clone(), c.bound.1.clone()];
            binders.extend(c.params.iter().cloned());
            let (binders, pred) = subst_under_binders(&binders, &c.pred, binding);
            let mut it = binders.into_iter();
            let b0 = it.next().unwrap();
            let b1 = it.next().unwrap();
            Term::NodeRel(Box::new(super::ast::NodeRelTerm {
                bound: (b0, b1),
                params: it.collect(),
                pred,
                args,
            }))
        }
        Term::SetCompr(c) => {
            let source = subst_term(&c.source, binding);
            let (binders, pred) =
                subst_under_binders(std::slice::from_ref(&c.bound), &c.pred, binding);
            Term::SetCompr(Box::new(super::ast::SetComprTerm {
                bound: binders.into_iter().next().unwrap(),
                source,
                pred,
            }))
        }
        Term::ClassCompr(c) => {
            let (binders, pred) =
                subst_under_binders(std::slice::from_ref(&c.bound), &c.pred, binding);
            Term::ClassCompr(Box::new(super::ast::ClassComprTerm {
                bound: binders.into_iter().next().unwrap(),
                pred,
            }))
        }
    }
}

fn subst_family(
    bound: &Var,
    params: &[Var],
    pred: &Formula,
    binding: &Binding,
) -> (Var, Vec<Var>, Formula) {
    let mut binders = vec![bound.clone()];
    binders.extend(params.iter().cloned());
    let (binders, pred) = subst_under_binders(&binders, pred, binding);
    let mut it = binders.into_iter();
    (it.next().unwrap(), it.collect(), pred)
}

/// Substitute inside a formula guarded by a list of binders, renaming the
/// binders that would capture substituted terms.
fn subst_under_binders(
    binders: &[Var],
    pred: &Formula,
    binding: &Binding,
) -> (Vec<Var>, Formula) {
    let mut body_fv = fv_formula(pred);
    let mut cur: Binding = binding.clone();
    let mut out = Vec::with_capacity(binders.len());
    for v in binders {
        let (nv, next) = enter_binder(v, &cur, &body_fv);
        if nv != *v {
            body_fv.remove(v);
            body_fv.insert(nv.clone());
        }
        out.push(nv);
        cur = next;
    }
    (out, subst_formula(pred, &cur))
}

pub fn subst_formula(f: &Formula, binding: &Binding) -> Formula {
    if binding.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Atom(p, args) => {
            Formula::Atom(*p, args.iter().map(|a| subst_term(a, binding)).collect())
        }
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::And(a, b) => Formula::and(subst_formula(a, binding), subst_formula(b, binding)),
        Formula::Or(a, b) => Formula::or(subst_formula(a, binding), subst_formula(b, binding)),
        Formula::Imp(a, b) => Formula::imp(subst_formula(a, binding), subst_formula(b, binding)),
        Formula::Forall(v, body) => {
            let body_fv = fv_formula(body);
            let (nv, inner) = enter_binder(v, binding, &body_fv);
            Formula::forall(nv, subst_formula(body, &inner))
        }
        Formula::Exists(v, body) => {
            let body_fv = fv_formula(body);
            let (nv, inner) = enter_binder(v, binding, &body_fv);
            Formula::exists(nv, subst_formula(body, &inner))
        }
        Formula::Meta(m) => {
            // compose: apply the outer binding to the pending substitution
            let subst = m
                .subst
                .iter()
                .map(|(v, t)| (v.clone(), subst_term(t, binding)))
                .collect();
            Formula::Meta(MetaAtom { name: m.name.clone(), subst })
        }
    }
}

/// Capture-avoiding substitution; fails when a bound term's sort does not
/// match its variable.
pub fn substitute(f: &Formula, binding: &Binding) -> Result<Formula, LangError> {
    for (v, t) in binding {
        if let Some(s) = super::check::sort_of_opt(t) {
            if s != v.sort {
                return Err(LangError::SortMismatch {
                    var: v.name.clone(),
                    expected: v.sort,
                    found: s,
                });
            }
        }
    }
    Ok(subst_formula(f, binding))
}

// ---------------------------------------------------------------------------
// alpha-equivalence

struct AlphaEnv {
    left: Vec<(String, String)>, // binder name pairs, innermost last
}

impl AlphaEnv {
    fn new() -> Self {
        AlphaEnv { left: Vec::new() }
    }

    fn with<Rt>(&mut self, a: &Var, b: &Var, f: impl FnOnce(&mut Self) -> Rt) -> Option<Rt> {
        if a.sort != b.sort {
            return None;
        }
        self.left.push((a.name.clone(), b.name.clone()));
        let r = f(self);
        self.left.pop();
        Some(r)
    }

    fn var_eq(&self, a: &Var, b: &Var) -> bool {
        for (l, r) in self.left.iter().rev() {
            let la = l == &a.name;
            let rb = r == &b.name;
            if la || rb {
                return la && rb && a.sort == b.sort;
            }
        }
        a == b
    }
}

fn alpha_term(a: &Term, b: &Term, env: &mut AlphaEnv) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => env.var_eq(x, y),
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, env))
        }
        (Term::Compr(c), Term::Compr(d)) => {
            c.params.len() == d.params.len()
                && c.args.len() == d.args.len()
                && c.args.iter().zip(&d.args).all(|(x, y)| alpha_term(x, y, env))
                && alpha_term(&c.source, &d.source, env)
                && alpha_binders(
                    &[&c.bound].into_iter().chain(&c.params).cloned().collect::<Vec<_>>(),
                    &[&d.bound].into_iter().chain(&d.params).cloned().collect::<Vec<_>>(),
                    &c.pred,
                    &d.pred,
                    env,
                )
        }
        (Term::NodeClass(c), Term::NodeClass(d)) => {
            c.params.len() == d.params.len()
                && c.args.len() == d.args.len()
                && c.args.iter().zip(&d.args).all(|(x, y)| alpha_term(x, y, env))
                && alpha_binders(
                    &[&c.bound].into_iter().chain(&c.params).cloned().collect::<Vec<_>>(),
                    &[&d.bound].into_iter().chain(&d.params).cloned().collect::<Vec<_>>(),
                    &c.pred,
                    &d.pred,
                    env,
                )
        }
        (Term::NodeRel(c), Term::NodeRel(d)) => {
            c.params.len() == d.params.len()
                && c.args.len() == d.args.len()
                && c.args.iter().zip(&d.args).all(|(x, y)| alpha_term(x, y, env))
                && alpha_binders(
                    &[&c.bound.0, &c.bound.1].into_iter().chain(&c.params).cloned().collect::<Vec<_>>(),
                    &[&d.bound.0, &d.bound.1].into_iter().chain(&d.params).cloned().collect::<Vec<_>>(),
                    &c.pred,
                    &d.pred,
                    env,
                )
        }
        (Term::SetCompr(c), Term::SetCompr(d)) => {
            alpha_term(&c.source, &d.source, env)
                && alpha_binders(
                    std::slice::from_ref(&c.bound),
                    std::slice::from_ref(&d.bound),
                    &c.pred,
                    &d.pred,
                    env,
                )
        }
        (Term::ClassCompr(c), Term::ClassCompr(d)) => alpha_binders(
            std::slice::from_ref(&c.bound),
            std::slice::from_ref(&d.bound),
            &c.pred,
            &d.pred,
            env,
        ),
        _ => false,
    }
}

fn alpha_binders(
    xs: &[Var],
    ys: &[Var],
    a: &Formula,
    b: &Formula,
    env: &mut AlphaEnv,
) -> bool {
    match (xs.split_first(), ys.split_first()) {
        (None, None) => alpha_formula_env(a, b, env),
        (Some((x, xrest)), Some((y, yrest))) => env
            .with(x, y, |env| alpha_binders(xrest, yrest, a, b, env))
            .unwrap_or(false),
        _ => false,
    }
}

fn alpha_formula_env(a: &Formula, b: &Formula, env: &mut AlphaEnv) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, env))
        }
        (Formula::True, Formula::True) | (Formula::False, Formula::False) => true,
        (Formula::And(x, y), Formula::And(u, v))
        | (Formula::Or(x, y), Formula::Or(u, v))
        | (Formula::Imp(x, y), Formula::Imp(u, v)) => {
            alpha_formula_env(x, u, env) && alpha_formula_env(y, v, env)
        }
        (Formula::Forall(x, bx), Formula::Forall(y, by))
        | (Formula::Exists(x, bx), Formula::Exists(y, by)) => env
            .with(x, y, |env| alpha_formula_env(bx, by, env))
            .unwrap_or(false),
        (Formula::Meta(m), Formula::Meta(n)) => {
            m.name == n.name
                && m.subst.len() == n.subst.len()
                && m.subst.iter().zip(&n.subst).all(|((v, t), (w, u))| {
                    v == w && alpha_term(t, u, env)
                })
        }
        _ => false,
    }
}

/// Alpha-equivalence of formulas.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha_formula_env(a, b, &mut AlphaEnv::new())
}

/// Alpha-equivalence of terms.
pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    alpha_term(a, b, &mut AlphaEnv::new())
}

// ---------------------------------------------------------------------------
// canonical renaming (cache keys and test oracles)

struct Canon {
    counter: usize,
    env: Vec<(String, String)>,
}

impl Canon {
    fn enter(&mut self, v: &Var) -> Var {
        let fresh = format!("\u{b7}{}", self.counter);
        self.counter += 1;
        self.env.push((v.name.clone(), fresh.clone()));
        Var::new(fresh, v.sort)
    }

    fn exit(&mut self, n: usize) {
        for _ in 0..n {
            self.env.pop();
        }
    }

    fn var(&self, v: &Var) -> Var {
        for (name, canon) in self.env.iter().rev() {
            if *name == v.name {
                return Var::new(canon.clone(), v.sort);
            }
        }
        v.clone()
    }

    fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(v) => Term::Var(self.var(v)),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.term(a)).collect()),
            Term::Compr(c) => {
                let args = c.args.iter().map(|a| self.term(a)).collect();
                let source = self.term(&c.source);
                let bound = self.enter(&c.bound);
                let params: Vec<Var> = c.params.iter().map(|p| self.enter(p)).collect();
                let pred = self.formula(&c.pred);
                self.exit(1 + params.len());
                Term::Compr(Box::new(super::ast::ComprTerm { bound, params, pred, args, source }))
            }
            Term::NodeClass(c) => {
                let args = c.args.iter().map(|a| self.term(a)).collect();
                let bound = self.enter(&c.bound);
                let params: Vec<Var> = c.params.iter().map(|p| self.enter(p)).collect();
                let pred = self.formula(&c.pred);
                self.exit(1 + params.len());
                Term::NodeClass(Box::new(super::ast::NodeClassTerm { bound, params, pred, args }))
            }
            Term::NodeRel(c) => {
                let args = c.args.iter().map(|a| self.term(a)).collect();
                let b0 = self.enter(&c.bound.0);
                let b1 = self.enter(&c.bound.1);
                let params: Vec<Var> = c.params.iter().map(|p| self.enter(p)).collect();
                let pred = self.formula(&c.pred);
                self.exit(2 + params.len());
                Term::NodeRel(Box::new(super::ast::NodeRelTerm { bound: (b0, b1), params, pred, args }))
            }
            Term::SetCompr(c) => {
                let source = self.term(&c.source);
                let bound = self.enter(&c.bound);
                let pred = self.formula(&c.pred);
                self.exit(1);
                Term::SetCompr(Box::new(super::ast::SetComprTerm { bound, source, pred }))
            }
            Term::ClassCompr(c) => {
                let bound = self.enter(&c.bound);
                let pred = self.formula(&c.pred);
                self.exit(1);
                Term::ClassCompr(Box::new(super::ast::ClassComprTerm { bound, pred }))
            }
        }
    }

    fn formula(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(p, args) => {
                Formula::Atom(*p, args.iter().map(|a| self.term(a)).collect())
            }
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::And(a, b) => Formula::and(self.formula(a), self.formula(b)),
            Formula::Or(a, b) => Formula::or(self.formula(a), self.formula(b)),
            Formula::Imp(a, b) => Formula::imp(self.formula(a), self.formula(b)),
            Formula::Forall(v, body) => {
                let nv = self.enter(v);
                let b = self.formula(body);
                self.exit(1);
                Formula::forall(nv, b)
            }
            Formula::Exists(v, body) => {
                let nv = self.enter(v);
                let b = self.formula(body);
                self.exit(1);
                Formula::exists(nv, b)
            }
            Formula::Meta(m) => Formula::Meta(MetaAtom {
                name: m.name.clone(),
                subst: m.subst.iter().map(|(v, t)| (v.clone(), self.term(t))).collect(),
            }),
        }
    }
}

/// Rename every bound variable to a numbered canonical name, in traversal
/// order.  Two formulas are alpha-equivalent iff their canonical forms are
/// structurally equal.
pub fn alpha_canonical(f: &Formula) -> Formula {
    Canon { counter: 0, env: Vec::new() }.formula(f)
}

/// Canonical renaming of a term.
pub fn alpha_canonical_term(t: &Term) -> Term {
    Canon { counter: 0, env: Vec::new() }.term(t)
}
