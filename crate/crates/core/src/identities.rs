//! Structural identities of `∗_t`, checked exhaustively over small index boxes.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::deformation::StarContext;
use crate::error::Result;
use crate::frontend::print_poly;
use crate::multi_index::MultiIndex;
use crate::poly::{Poly, Rat, VarKind};
use crate::report::CheckReport;

fn indices(n: usize, max: u32) -> Vec<MultiIndex> {
    MultiIndex::up_to_total(n, max)
}

fn label(parts: &[&MultiIndex]) -> String {
    parts.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
}

/// `(z∂ − ξδ)(ξ^α ∗_t z^β) = (|β| − |α|)(ξ^α ∗_t z^β)`.
pub fn euler_grading_check(ctx: &StarContext, max: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("euler t={} n={}", ctx.t(), ctx.n()));
    for alpha in indices(ctx.n(), max) {
        for beta in indices(ctx.n(), max) {
            let p = ctx.star_monomial(&alpha, &beta)?;
            let weight = i64::from(beta.total()) - i64::from(alpha.total());
            let ok = ctx.euler_operator(&p)? == p.scale(&Rat::from_integer(weight.into()));
            report.record(label(&[&alpha, &beta]), ok);
        }
    }
    Ok(report)
}

/// `(ξ^a z^b) ∗_t (ξ^c z^d) = (ξ^a ∗_t z^d)(ξ^c ∗_t z^b)`, ordinary product on the right.
pub fn symmetry_check(ctx: &StarContext, max: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("symmetry t={} n={}", ctx.t(), ctx.n()));
    let idx = indices(ctx.n(), max);
    for a in &idx {
        for b in &idx {
            let left = Poly::monomial(a, b);
            for c in &idx {
                for d in &idx {
                    let lhs = ctx.star(&left, &Poly::monomial(c, d))?;
                    let rhs = &ctx.star_monomial(a, d)? * &ctx.star_monomial(c, b)?;
                    report.record(label(&[a, b, c, d]), lhs == rhs);
                }
            }
        }
    }
    Ok(report)
}

/// `∂^γ(ξ^α ∗_t z^β) = γ! C(β,γ) · ξ^α ∗_t z^{β−γ}` for `γ ≤ β`, and the
/// same with `δ^γ` and `C(α,γ)` on the `ξ` side.
pub fn leibniz_check(ctx: &StarContext, max: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("leibniz t={} n={}", ctx.t(), ctx.n()));
    let idx = indices(ctx.n(), max);
    for alpha in &idx {
        for beta in &idx {
            let p = ctx.star_monomial(alpha, beta)?;
            for gamma in &idx {
                let factor = |top: &MultiIndex| Rat::from_integer(gamma.factorial() * top.binomial(gamma));
                if let Some(rest) = beta.checked_sub(gamma) {
                    let lhs = p.d_multi(VarKind::Z, gamma)?;
                    let rhs = ctx.star_monomial(alpha, &rest)?.scale(&factor(beta));
                    report.record(format!("d {}", label(&[alpha, beta, gamma])), lhs == rhs);
                }
                if let Some(rest) = alpha.checked_sub(gamma) {
                    let lhs = p.d_multi(VarKind::Xi, gamma)?;
                    let rhs = ctx.star_monomial(&rest, beta)?.scale(&factor(alpha));
                    report.record(format!("delta {}", label(&[alpha, beta, gamma])), lhs == rhs);
                }
            }
        }
    }
    Ok(report)
}

/// `ξ_i · f = ξ_i ∗_t f + t ∂_i f` and `z_i · f = z_i ∗_t f + t δ_i f` on every
/// monomial `f = ξ^α z^β`.
pub fn multiplication_operator_check(ctx: &StarContext, max: u32) -> Result<CheckReport> {
    let n = ctx.n();
    let t = ctx.t();
    let mut report = CheckReport::new(format!("multiplication t={t} n={n}"));
    let idx = indices(n, max);
    for alpha in &idx {
        for beta in &idx {
            let f = Poly::monomial(alpha, beta);
            for i in 0..n {
                let x = Poly::xi_var(n, i);
                let z = Poly::z_var(n, i);
                let xi_ok = &x * &f == &ctx.star(&x, &f)? + &f.d_z(i)?.scale(t);
                let z_ok = &z * &f == &ctx.star(&z, &f)? + &f.d_xi(i)?.scale(t);
                report.record_with(
                    format!("{} i={}", print_poly(&f), i + 1),
                    xi_ok && z_ok,
                    format!("xi={xi_ok} z={z_ok}"),
                );
            }
        }
    }
    Ok(report)
}

/// `Φ_t(f ∗_t g) = Φ_t f · Φ_t g`.
pub fn homomorphism_holds(ctx: &StarContext, f: &Poly, g: &Poly) -> Result<bool> {
    Ok(ctx.phi(&ctx.star(f, g)?)? == &ctx.phi(f)? * &ctx.phi(g)?)
}

/// `ℰ_t(z_1^m ξ_1²) = m(m−1) t² z_1^{m−2}` in one variable.
pub fn eval_e_worked_example(t: &Rat, m: u32) -> Result<bool> {
    let ctx = StarContext::new(1, t.clone())?;
    let p = Poly::monomial(&[2].into(), &[m].into());
    let got = ctx.eval_e(&p)?;
    let coeff = Rat::from_integer(BigInt::from(m) * BigInt::from(m.saturating_sub(1))) * t * t;
    let expected = if m < 2 || coeff.is_zero() {
        Poly::zero(1)
    } else {
        Poly::z_pow(&[m - 2].into()).scale(&coeff)
    };
    Ok(got.as_poly() == &expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn identities_hold_in_one_variable() {
        for t in [int(0), int(1), int(-1), rat(1, 2)] {
            let ctx = StarContext::new(1, t).unwrap();
            for report in [
                euler_grading_check(&ctx, 3).unwrap(),
                symmetry_check(&ctx, 3).unwrap(),
                leibniz_check(&ctx, 3).unwrap(),
                multiplication_operator_check(&ctx, 3).unwrap(),
            ] {
                assert!(report.passed(), "{}: {:?}", report.suite, report.first_failure());
            }
        }
    }

    #[test]
    fn worked_examples() {
        for m in 2..=4 {
            assert!(eval_e_worked_example(&int(1), m).unwrap());
            assert!(eval_e_worked_example(&rat(-2, 3), m).unwrap());
        }
    }

    #[test]
    fn homomorphism_example() {
        let ctx = StarContext::new(1, int(1)).unwrap();
        let x = Poly::xi_var(1, 0);
        let z = Poly::z_var(1, 0);
        assert!(homomorphism_holds(&ctx, &(&x * &z), &(&x + &z)).unwrap());
    }
}
