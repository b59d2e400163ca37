//! Membership oracles for `Im(ξ − t∂)` and for the span of the Laguerre
//! polynomials `L_α^{[k]}` with `α ≠ 0`, and a bounded power-experiment harness.
//!
//! The harness only records evidence at truncated ranges of `m`; it never
//! decides whether a subspace is a Mathieu subspace.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deformation::StarContext;
use crate::error::{AlgebraError, Result};
use crate::frontend::print_poly;
use crate::laguerre::integrate_weight;
use crate::linalg;
use crate::multi_index::MultiIndex;
use crate::poly::{Monomial, Poly, Rat, ZPoly};
use crate::report::CheckReport;

pub const DEFAULT_DEGREE_CAP: i64 = 40;

/// `p ∈ Im(ξ − t∂)` iff the `α = 0` star-Taylor coefficient `ℰ_t(p)` vanishes.
pub fn in_image_et(ctx: &StarContext, p: &Poly) -> Result<bool> {
    Ok(ctx.eval_e(p)?.is_zero())
}

/// Brute-force membership in `Σ_i (ξ_i − t∂_i) ℂ[ξ,z]`, with witnesses of total degree ≤ `deg p − 1`.
pub fn in_image_linear(ctx: &StarContext, p: &Poly) -> Result<bool> {
    Ok(image_witness(ctx, p, None)?.is_some())
}

/// Solves `p = Σ_i (ξ_i − t∂_i) g_i` with every `g_i` of total degree ≤ `bound`
/// (default `deg p − 1`). Returns the witnesses `g_i` when a solution exists.
///
/// Both `ξ_i` and `t∂_i` raise `deg_ξ − deg_z` by exactly one, so the system
/// splits into independent blocks indexed by that weight.
pub fn image_witness(ctx: &StarContext, p: &Poly, bound: Option<u32>) -> Result<Option<Vec<Poly>>> {
    let n = ctx.n();
    if p.n() != n {
        return Err(AlgebraError::DimensionMismatch { left: n, right: p.n() });
    }
    let bound = match bound {
        Some(b) => b as i64,
        None => p.degree().total - 1,
    };
    if bound < 0 {
        return Ok(p.is_zero().then(|| vec![Poly::zero(n); n]));
    }

    // columns grouped by the weight of the image they produce
    let mut blocks: BTreeMap<i64, Vec<(usize, Monomial, Poly)>> = BTreeMap::new();
    for exps in MultiIndex::up_to_total(2 * n, bound as u32) {
        let e = exps.entries();
        let m = Monomial::new(e[..n].to_vec().into(), e[n..].to_vec().into());
        let weight = m.xi.total() as i64 - m.z.total() as i64 + 1;
        let g = Poly::term(m.clone(), Rat::from_integer(BigInt::from(1)));
        for i in 0..n {
            let image = &Poly::xi_var(n, i) * &g - g.d_z(i)?.scale(ctx.t());
            blocks.entry(weight).or_default().push((i, m.clone(), image));
        }
    }

    let mut rhs_blocks: BTreeMap<i64, Vec<(Monomial, Rat)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let weight = m.xi.total() as i64 - m.z.total() as i64;
        rhs_blocks.entry(weight).or_default().push((m.clone(), c.clone()));
    }

    let mut witnesses = vec![Poly::zero(n); n];
    for (weight, rhs_terms) in &rhs_blocks {
        let Some(columns) = blocks.get(weight) else { return Ok(None) };
        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        for (_, _, image) in columns {
            for (m, _) in image.terms() {
                let next = rows.len();
                rows.entry(m.clone()).or_insert(next);
            }
        }
        for (m, _) in rhs_terms {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
        let mut a = vec![vec![Rat::zero(); columns.len()]; rows.len()];
        for (j, (_, _, image)) in columns.iter().enumerate() {
            for (m, c) in image.terms() {
                a[rows[m]][j] = c.clone();
            }
        }
        let mut b = vec![Rat::zero(); rows.len()];
        for (m, c) in rhs_terms {
            b[rows[m]] = c.clone();
        }
        let Some(x) = linalg::solve(a, b) else { return Ok(None) };
        for ((i, m, _), c) in columns.iter().zip(x) {
            witnesses[*i].add_term(m.clone(), c);
        }
    }
    Ok(Some(witnesses))
}

/// `p ∈ span{L_α^{[k]} : α ≠ 0}` iff `∫ p z^k e^{−Σz} dz = 0`.
pub fn in_laguerre_span(p: &ZPoly, k: &MultiIndex) -> Result<bool> {
    Ok(integrate_weight(p, k)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipOracle {
    /// `ℰ_t(p) = 0`.
    ImageEt { t: Rat },
    /// Linear solve against `Im(ξ − t∂)`; `witness_degree` overrides the default bound `deg p − 1`.
    ImageLinear { t: Rat, witness_degree: Option<u32> },
    /// Zero weighted integral against `z^k e^{−Σz}`.
    LaguerreSpan { k: MultiIndex },
}

impl MembershipOracle {
    pub fn contains(&self, p: &Poly) -> Result<bool> {
        match self {
            MembershipOracle::ImageEt { t } => in_image_et(&StarContext::new(p.n(), t.clone())?, p),
            MembershipOracle::ImageLinear { t, witness_degree } => {
                let ctx = StarContext::new(p.n(), t.clone())?;
                Ok(image_witness(&ctx, p, *witness_degree)?.is_some())
            }
            MembershipOracle::LaguerreSpan { k } => in_laguerre_span(&ZPoly::new(p.clone())?, k),
        }
    }

    /// `t` or `k=…` as text, for reports.
    pub fn parameter(&self) -> String {
        match self {
            MembershipOracle::ImageEt { t } | MembershipOracle::ImageLinear { t, .. } => format!("t={t}"),
            MembershipOracle::LaguerreSpan { k } => {
                let parts: Vec<String> = k.entries().iter().map(u32::to_string).collect();
                format!("k={}", parts.join(","))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MembershipOracle::ImageEt { .. } => "image_Et",
            MembershipOracle::ImageLinear { .. } => "image_linear",
            MembershipOracle::LaguerreSpan { .. } => "laguerre_span",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    /// Powers and products under `∗_t`.
    Star,
    /// Ordinary powers and products.
    Ordinary,
}

/// Membership of `f^m` and `b·f^m` for one exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerVerdict {
    pub m: u32,
    pub power_member: bool,
    pub product_member: bool,
    pub power: Poly,
}

/// Evidence gathered by [`power_experiment`] for `1 ≤ m ≤ mmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentReport {
    pub oracle: MembershipOracle,
    pub kind: PowerKind,
    pub f: Poly,
    pub b: Poly,
    pub mmax: u32,
    pub verdicts: Vec<PowerVerdict>,
    /// Least `N` with `b·f^m` a member for every `N ≤ m ≤ mmax`.
    pub first_stable_n: Option<u32>,
    /// Set when a power exceeded the degree cap; `verdicts` then stops early.
    pub aborted: Option<AlgebraError>,
}

impl ExperimentReport {
    pub fn all_powers_member(&self) -> bool {
        self.verdicts.iter().all(|v| v.power_member)
    }

    pub fn all_products_member(&self) -> bool {
        self.verdicts.iter().all(|v| v.product_member)
    }

    pub fn is_complete(&self) -> bool {
        self.aborted.is_none() && self.verdicts.len() == self.mmax as usize
    }
}

/// Computes `f^m` (under `∗_t` or ordinarily) for `1 ≤ m ≤ mmax` and records
/// membership of each power and of `b·f^m`.
pub fn power_experiment(
    oracle: &MembershipOracle,
    f: &Poly,
    b: &Poly,
    mmax: u32,
    kind: PowerKind,
    degree_cap: i64,
) -> Result<ExperimentReport> {
    if mmax < 1 {
        return Err(AlgebraError::InvalidArgument("mmax must be at least 1".into()));
    }
    if f.n() != b.n() {
        return Err(AlgebraError::DimensionMismatch { left: f.n(), right: b.n() });
    }
    let ctx = match (oracle, kind) {
        (MembershipOracle::ImageEt { t } | MembershipOracle::ImageLinear { t, .. }, PowerKind::Star) => {
            Some(StarContext::new(f.n(), t.clone())?)
        }
        (MembershipOracle::LaguerreSpan { k }, PowerKind::Ordinary) => {
            if k.len() != f.n() {
                return Err(AlgebraError::DimensionMismatch { left: k.len(), right: f.n() });
            }
            if !f.is_z_only() || !b.is_z_only() {
                return Err(AlgebraError::NotInSubalgebra("Laguerre-span experiments need f, b in z only"));
            }
            None
        }
        _ => {
            return Err(AlgebraError::InvalidArgument(
                "star powers pair with image oracles, ordinary powers with the Laguerre span".into(),
            ))
        }
    };
    let multiply = |x: &Poly, y: &Poly| -> Result<Poly> {
        match &ctx {
            Some(c) => c.star(x, y),
            None => x.try_mul(y),
        }
    };

    let mut report = ExperimentReport {
        oracle: oracle.clone(),
        kind,
        f: f.clone(),
        b: b.clone(),
        mmax,
        verdicts: Vec::with_capacity(mmax as usize),
        first_stable_n: None,
        aborted: None,
    };
    let mut power = Poly::one(f.n());
    for m in 1..=mmax {
        let next = multiply(&power, f)?;
        let degree = next.degree().total;
        if degree > degree_cap {
            report.aborted = Some(AlgebraError::DegreeCapExceeded { degree, cap: degree_cap });
            return Ok(report);
        }
        power = next;
        let product = multiply(b, &power)?;
        if product.degree().total > degree_cap {
            report.aborted = Some(AlgebraError::DegreeCapExceeded { degree: product.degree().total, cap: degree_cap });
            return Ok(report);
        }
        report.verdicts.push(PowerVerdict {
            m,
            power_member: oracle.contains(&power)?,
            product_member: oracle.contains(&product)?,
            power: power.clone(),
        });
    }
    report.first_stable_n = report
        .verdicts
        .iter()
        .rev()
        .take_while(|v| v.product_member)
        .last()
        .map(|v| v.m);
    Ok(report)
}

/// Every monomial of `ℂ[ξ,z]` with total degree ≤ `degmax`.
pub fn monomial_basis(n: usize, degmax: u32) -> Vec<Poly> {
    MultiIndex::up_to_total(2 * n, degmax)
        .into_iter()
        .map(|e| {
            let e = e.entries();
            Poly::monomial(&e[..n].to_vec().into(), &e[n..].to_vec().into())
        })
        .collect()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rat {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=4);
    Rat::new(num.into(), den.into())
}

/// A random combination of at most `max_terms` monomials of degree ≤ `degmax`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, degmax: u32, max_terms: usize) -> Poly {
    let basis = monomial_basis(n, degmax);
    let count = rng.gen_range(1..=max_terms);
    let mut p = Poly::zero(n);
    for m in basis.choose_multiple(rng, count) {
        p = &p + &m.scale(&small_rational(rng));
    }
    p
}

/// Cross-validates the `ℰ_t` criterion against the linear solve on the monomial
/// basis up to `degmax` and on `samples` seeded random polynomials, half of them
/// built inside `Im(ξ − t∂)`.
pub fn oracle_equivalence_scan(t: &Rat, n: usize, degmax: u32, samples: usize, seed: u64) -> Result<CheckReport> {
    let ctx = StarContext::new(n, t.clone())?;
    let mut report = CheckReport::new(format!("oracles t={t} n={n} degmax={degmax}"));
    let check = |label: String, p: &Poly, report: &mut CheckReport| -> Result<()> {
        let et = in_image_et(&ctx, p)?;
        let lin = in_image_linear(&ctx, p)?;
        report.record_with(label, et == lin, format!("et={et} linear={lin} p={}", print_poly(p)));
        Ok(())
    };
    for p in monomial_basis(n, degmax) {
        check(format!("basis {}", print_poly(&p)), &p, &mut report)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let p = if s % 2 == 0 {
            random_poly(&mut rng, n, degmax, 6)
        } else {
            let mut acc = Poly::zero(n);
            for i in 0..n {
                let g = random_poly(&mut rng, n, degmax.saturating_sub(1), 4);
                acc = &acc + &(&Poly::xi_var(n, i) * &g - g.d_z(i)?.scale(t));
            }
            // keep a chance of leaving the image
            if rng.gen_bool(0.25) {
                acc = &acc + &Poly::constant(n, small_rational(&mut rng));
            }
            acc
        };
        check(format!("random #{s}"), &p, &mut report)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn x() -> Poly {
        Poly::xi_var(1, 0)
    }

    fn z() -> Poly {
        Poly::z_var(1, 0)
    }

    fn ctx(t: Rat) -> StarContext {
        StarContext::new(1, t).unwrap()
    }

    #[test]
    fn image_et_examples() {
        let c = ctx(int(1));
        assert!(in_image_et(&c, &x()).unwrap());
        assert!(!in_image_et(&c, &Poly::one(1)).unwrap());
        assert!(!in_image_et(&c, &(&x() * &z())).unwrap());
        assert_eq!(c.eval_e(&(&x() * &z())).unwrap().as_poly(), &Poly::one(1));
    }

    #[test]
    fn image_linear_examples() {
        let t = rat(2, 3);
        let c = ctx(t.clone());
        let w = image_witness(&c, &x(), None).unwrap().unwrap();
        assert_eq!(w[0], Poly::one(1));
        assert!(!in_image_linear(&c, &Poly::one(1)).unwrap());
        // (ξ − t∂)(ξz) = ξ²z − tξ
        let p = x().pow(2) * z() - x().scale(&t);
        let w = image_witness(&c, &p, None).unwrap().unwrap();
        assert_eq!(&x() * &w[0] - w[0].d_z(0).unwrap().scale(&t), p);
        assert!(in_image_linear(&c, &Poly::zero(1)).unwrap());
        // ξ²z − 2tξ = (ξ − t∂)(ξz − t)
        let p = x().pow(2) * z() - x().scale(&(&t * int(2)));
        assert!(in_image_linear(&c, &p).unwrap());
        assert!(in_image_et(&c, &p).unwrap());
        let w = image_witness(&c, &p, None).unwrap().unwrap();
        assert_eq!(&x() * &w[0] - w[0].d_z(0).unwrap().scale(&t), p);
    }

    #[test]
    fn oracles_reject_xi_z_at_one_half() {
        let c = ctx(rat(1, 2));
        let p = &x() * &z();
        assert!(!in_image_et(&c, &p).unwrap());
        assert!(!in_image_linear(&c, &p).unwrap());
    }

    #[test]
    fn witnesses_reproduce_input() {
        let c = StarContext::new(2, rat(-1, 2)).unwrap();
        let p = Poly::xi_var(2, 0) * Poly::z_var(2, 1).pow(2) + Poly::xi_var(2, 1);
        if let Some(w) = image_witness(&c, &p, None).unwrap() {
            let mut acc = Poly::zero(2);
            for (i, g) in w.iter().enumerate() {
                acc = &acc + &(&Poly::xi_var(2, i) * g - g.d_z(i).unwrap().scale(c.t()));
            }
            assert_eq!(acc, p);
        }
        assert_eq!(
            in_image_et(&c, &p).unwrap(),
            image_witness(&c, &p, None).unwrap().is_some()
        );
    }

    #[test]
    fn laguerre_span_examples() {
        let one = ZPoly::one(1);
        let zz = ZPoly::var(1, 0);
        assert!(in_laguerre_span(&(&one - &zz), &[0].into()).unwrap());
        assert!(!in_laguerre_span(&one, &[0].into()).unwrap());
        assert!(in_laguerre_span(&(&zz - &one), &[0].into()).unwrap());
    }

    #[test]
    fn experiment_image_t1() {
        let oracle = MembershipOracle::ImageEt { t: int(1) };
        let r = power_experiment(&oracle, &x(), &z(), 4, PowerKind::Star, DEFAULT_DEGREE_CAP).unwrap();
        assert!(r.is_complete());
        assert!(r.all_powers_member());
        assert!(r.all_products_member());
        assert_eq!(r.first_stable_n, Some(1));
        for v in &r.verdicts {
            assert_eq!(v.power, x().pow(v.m));
        }
    }

    #[test]
    fn experiment_t0_ideal() {
        let oracle = MembershipOracle::ImageEt { t: int(0) };
        let f = &x() * &z() + x().pow(2);
        let b = z().pow(2) + Poly::one(1);
        let r = power_experiment(&oracle, &f, &b, 5, PowerKind::Star, DEFAULT_DEGREE_CAP).unwrap();
        assert!(r.all_powers_member() && r.all_products_member());
    }

    #[test]
    fn experiment_laguerre_matches_moments() {
        let oracle = MembershipOracle::LaguerreSpan { k: [0].into() };
        let f = Poly::one(1) - z();
        let r = power_experiment(&oracle, &f, &z(), 6, PowerKind::Ordinary, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(r.verdicts.len(), 6);
        // ∫(1−z)^m e^{−z} = Σ_j C(m,j)(−1)^j j!
        for v in &r.verdicts {
            let m = v.m;
            let moment: BigInt = (0..=m)
                .map(|j| {
                    let s = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                    s * crate::combinatorics::binomial(m, j) * crate::combinatorics::factorial(j)
                })
                .sum();
            assert_eq!(v.power_member, moment.is_zero());
        }
        // m = 1 is L_1 itself
        assert!(r.verdicts[0].power_member);
    }

    #[test]
    fn experiment_rejects_bad_pairing() {
        let oracle = MembershipOracle::LaguerreSpan { k: [0].into() };
        assert!(power_experiment(&oracle, &z(), &z(), 3, PowerKind::Star, 40).is_err());
        let oracle = MembershipOracle::ImageEt { t: int(1) };
        assert!(power_experiment(&oracle, &x(), &z(), 3, PowerKind::Ordinary, 40).is_err());
        assert!(power_experiment(&oracle, &x(), &z(), 0, PowerKind::Star, 40).is_err());
    }

    #[test]
    fn degree_cap_aborts() {
        let oracle = MembershipOracle::ImageEt { t: int(1) };
        let r = power_experiment(&oracle, &x().pow(3), &z(), 5, PowerKind::Star, 7).unwrap();
        assert_eq!(r.verdicts.len(), 2);
        assert_eq!(r.aborted, Some(AlgebraError::DegreeCapExceeded { degree: 9, cap: 7 }));
        assert!(!r.is_complete());
    }

    #[test]
    fn scan_small() {
        let r = oracle_equivalence_scan(&rat(1, 2), 1, 3, 20, 7).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }
}
