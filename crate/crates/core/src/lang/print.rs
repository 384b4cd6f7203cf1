//! Canonical ASCII printer.  `parse(print(x))` returns an alpha-equivalent
//! object (syntactically identical up to sort inference).

use std::fmt::Write;

use super::ast::{Formula, FunSym, PredSym, Term};

// term precedence: plus < times < slash < primary
const P_ADD: u8 = 1;
const P_MUL: u8 = 2;
const P_SLASH: u8 = 3;
const P_PRIM: u8 = 4;

// formula precedence: quantifier < imp < or < and < neg < primary
const F_LOW: u8 = 0;
const F_IMP: u8 = 1;
const F_OR: u8 = 2;
const F_AND: u8 = 3;
const F_NEG: u8 = 4;
const F_PRIM: u8 = 5;

pub fn term_to_string(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t, 0);
    s
}

pub fn formula_to_string(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f, F_LOW);
    s
}

fn write_args(out: &mut String, args: &[Term]) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(out, a, 0);
    }
    out.push(')');
}

fn write_term(out: &mut String, t: &Term, prec: u8) {
    match t {
        Term::Var(v) => out.push_str(&v.name),
        Term::App(f, args) => match f {
            FunSym::Slash => {
                let need = prec > P_SLASH;
                if need {
                    out.push('(');
                }
                write_term(out, &args[0], P_SLASH);
                out.push_str(" / ");
                write_term(out, &args[1], P_PRIM);
                if need {
                    out.push(')');
                }
            }
            FunSym::Plus => {
                let need = prec > P_ADD;
                if need {
                    out.push('(');
                }
                write_term(out, &args[0], P_ADD);
                out.push_str(" + ");
                write_term(out, &args[1], P_ADD + 1);
                if need {
                    out.push(')');
                }
            }
            FunSym::Times => {
                let need = prec > P_MUL;
                if need {
                    out.push('(');
                }
                write_term(out, &args[0], P_MUL);
                out.push_str(" * ");
                write_term(out, &args[1], P_MUL + 1);
                if need {
                    out.push(')');
                }
            }
            FunSym::Succ => {
                // numerals print in decimal
                if let Some(n) = t.as_numeral() {
                    let _ = write!(out, "{}", n);
                } else {
                    out.push_str("S");
                    write_args(out, args);
                }
            }
            _ if args.is_empty() => out.push_str(f.token()),
            _ => {
                out.push_str(f.token());
                write_args(out, args);
            }
        },
        Term::Compr(c) => {
            out.push_str("compr[");
            out.push_str(&c.bound.name);
            if !c.params.is_empty() {
                out.push_str("; ");
                for (i, p) in c.params.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&p.name);
                }
            }
            out.push_str(" | ");
            write_formula(out, &c.pred, F_LOW);
            out.push(']');
            let mut args: Vec<Term> = c.args.clone();
            args.push(c.source.clone());
            write_args(out, &args);
        }
        Term::NodeClass(c) => {
            out.push_str("nclass[");
            out.push_str(&c.bound.name);
            if !c.params.is_empty() {
                out.push_str("; ");
                for (i, p) in c.params.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&p.name);
                }
            }
            out.push_str(" | ");
            write_formula(out, &c.pred, F_LOW);
            out.push(']');
            write_args(out, &c.args);
        }
        Term::NodeRel(c) => {
            out.push_str("nrel[");
            out.push_str(&c.bound.0.name);
            out.push_str(", ");
            out.push_str(&c.bound.1.name);
            if !c.params.is_empty() {
                out.push_str("; ");
                for (i, p) in c.params.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&p.name);
                }
            }
            out.push_str(" | ");
            write_formula(out, &c.pred, F_LOW);
            out.push(']');
            write_args(out, &c.args);
        }
        Term::SetCompr(c) => {
            out.push_str("{ ");
            out.push_str(&c.bound.name);
            out.push_str(" in ");
            write_term(out, &c.source, 0);
            out.push_str(" | ");
            write_formula(out, &c.pred, F_LOW);
            out.push_str(" }");
        }
        Term::ClassCompr(c) => {
            out.push_str("[ ");
            out.push_str(&c.bound.name);
            out.push_str(" | ");
            write_formula(out, &c.pred, F_LOW);
            out.push_str(" ]");
        }
    }
}

fn infix_atom(out: &mut String, op: &str, args: &[Term]) {
    write_term(out, &args[0], 0);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write_term(out, &args[1], 0);
}

fn write_formula(out: &mut String, f: &Formula, prec: u8) {
    match f {
        // negation sugar: P -> false prints as ~P
        Formula::Imp(a, b) if **b == Formula::False => {
            let need = prec > F_NEG;
            if need {
                out.push('(');
            }
            out.push('~');
            write_neg_operand(out, a);
            if need {
                out.push(')');
            }
        }
        Formula::Imp(a, b) => {
            let need = prec > F_IMP;
            if need {
                out.push('(');
            }
            write_formula(out, a, F_IMP + 1);
            out.push_str(" -> ");
            write_formula(out, b, F_IMP);
            if need {
                out.push(')');
            }
        }
        Formula::Or(a, b) => {
            let need = prec > F_OR;
            if need {
                out.push('(');
            }
            write_formula(out, a, F_OR);
            out.push_str(" \\/ ");
            write_formula(out, b, F_OR + 1);
            if need {
                out.push(')');
            }
        }
        Formula::And(a, b) => {
            let need = prec > F_AND;
            if need {
                out.push('(');
            }
            write_formula(out, a, F_AND);
            out.push_str(" /\\ ");
            write_formula(out, b, F_AND + 1);
            if need {
                out.push(')');
            }
        }
        Formula::Forall(v, body) => {
            let need = prec > F_LOW;
            if need {
                out.push('(');
            }
            let _ = write!(out, "forall {}:{}. ", v.name, v.sort);
            write_formula(out, body, F_LOW);
            if need {
                out.push(')');
            }
        }
        Formula::Exists(v, body) => {
            let need = prec > F_LOW;
            if need {
                out.push('(');
            }
            let _ = write!(out, "exists {}:{}. ", v.name, v.sort);
            write_formula(out, body, F_LOW);
            if need {
                out.push(')');
            }
        }
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(p, args) => match p {
            PredSym::Eq => infix_atom(out, "=", args),
            PredSym::In => infix_atom(out, "in", args),
            PredSym::Approx => infix_atom(out, "~~", args),
            PredSym::Lt => infix_atom(out, "<", args),
            _ => {
                out.push_str(p.token());
                write_args(out, args);
            }
        },
        Formula::Meta(m) => {
            out.push('?');
            out.push_str(&m.name);
            if !m.subst.is_empty() {
                out.push('[');
                for (i, (v, t)) in m.subst.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&v.name);
                    out.push_str(" <- ");
                    write_term(out, t, 0);
                }
                out.push(']');
            }
        }
    }
}

/// The operand of `~`: functional atoms and constants print bare, anything
/// else is parenthesized (`~~` would lex as the bisimilarity token).
fn write_neg_operand(out: &mut String, f: &Formula) {
    let bare = match f {
        Formula::True | Formula::False | Formula::Meta(_) => true,
        Formula::Atom(p, _) => !matches!(
            p,
            PredSym::Eq | PredSym::In | PredSym::Approx | PredSym::Lt
        ),
        _ => false,
    };
    if bare {
        write_formula(out, f, F_PRIM);
    } else {
        out.push('(');
        write_formula(out, f, F_LOW);
        out.push(')');
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&term_to_string(self))
    }
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&formula_to_string(self))
    }
}
