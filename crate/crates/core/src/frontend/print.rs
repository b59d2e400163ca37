//! Canonical text output: descending graded-lex order, rational coefficients as
//! `a/b`, unit coefficients elided on non-constant terms.

use std::fmt::Write;

use num_traits::{One, Signed};

use crate::multi_index::MultiIndex;
use crate::poly::{Poly, Rat};
use crate::weyl::WeylOp;

fn push_vars(out: &mut String, prefix: &str, exps: &MultiIndex) {
    for (i, &e) in exps.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        let _ = write!(out, "{prefix}{}", i + 1);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

fn join_terms<'a>(terms: impl Iterator<Item = (String, &'a Rat)>) -> String {
    let mut out = String::new();
    for (vars, c) in terms {
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        if vars.is_empty() {
            let _ = write!(out, "{mag}");
        } else if mag.is_one() {
            out.push_str(&vars);
        } else {
            let _ = write!(out, "{mag}*{vars}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical form of a polynomial, e.g. `x1*z1 - 1`.
pub fn print_poly(p: &Poly) -> String {
    join_terms(p.terms().rev().map(|(m, c)| {
        let mut vars = String::new();
        push_vars(&mut vars, "x", &m.xi);
        push_vars(&mut vars, "z", &m.z);
        (vars, c)
    }))
}

/// Canonical right normal form of an operator, e.g. `z1^2*d1^3 + 6*z1*d1^2`.
/// Reading the output back as a composition reproduces the operator.
pub fn print_weyl(op: &WeylOp) -> String {
    let symbol = op.right_symbol();
    join_terms(symbol.terms().rev().map(|(m, c)| {
        let mut vars = String::new();
        push_vars(&mut vars, "z", &m.z);
        push_vars(&mut vars, "d", &m.xi);
        (vars, c)
    }))
}
