//! Differential operators of `ℂ[z]` in right normal form `Σ a_α(z) ∂^α`,
//! together with the right/left total-symbol maps.

use std::collections::BTreeMap;

use num_traits::One;

use crate::deformation::StarContext;
use crate::error::{AlgebraError, Result};
use crate::multi_index::MultiIndex;
use crate::frontend::print_poly;
use crate::poly::{Monomial, Poly, Rat, ZPoly};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOp {
    n: usize,
    terms: BTreeMap<MultiIndex, ZPoly>,
}

impl WeylOp {
    pub fn zero(n: usize) -> Self {
        WeylOp { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::multiplication(ZPoly::one(n))
    }

    /// Multiplication by `p(z)`.
    pub fn multiplication(p: ZPoly) -> Self {
        let mut op = WeylOp::zero(p.n());
        op.add_term(MultiIndex::zeros(p.n()), p);
        op
    }

    /// `∂^α` alone.
    pub fn derivative(alpha: &MultiIndex) -> Self {
        let n = alpha.len();
        let mut op = WeylOp::zero(n);
        op.add_term(alpha.clone(), ZPoly::one(n));
        op
    }

    /// `∂_i` (0-based).
    pub fn d(n: usize, i: usize) -> Self {
        Self::derivative(&MultiIndex::unit(n, i))
    }

    /// `a(z) ∂^α`.
    pub fn term(coeff: ZPoly, alpha: MultiIndex) -> Self {
        let mut op = WeylOp::zero(coeff.n());
        op.add_term(alpha, coeff);
        op
    }

    fn add_term(&mut self, alpha: MultiIndex, coeff: ZPoly) {
        if coeff.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&alpha) {
            Some(existing) => &existing + &coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(alpha, merged);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(α, a_α)` pairs of the right normal form.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ZPoly)> {
        self.terms.iter()
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == self.n {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch { left: self.n, right: n })
        }
    }

    pub fn try_add(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check(other.n)?;
        let mut out = self.clone();
        for (alpha, a) in &other.terms {
            out.add_term(alpha.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> WeylOp {
        let mut out = WeylOp::zero(self.n);
        for (alpha, a) in &self.terms {
            out.add_term(alpha.clone(), a.scale(c));
        }
        out
    }

    /// `Σ a_α(z) · ∂^α p`.
    pub fn apply(&self, p: &ZPoly) -> Result<ZPoly> {
        self.check(p.n())?;
        let mut out = ZPoly::zero(self.n);
        for (alpha, a) in &self.terms {
            out = &out + &(a * &p.d_multi(alpha)?);
        }
        Ok(out)
    }

    /// `self ∘ other`, renormalized to right normal form.
    pub fn compose(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check(other.n)?;
        let mut out = WeylOp::zero(self.n);
        for (alpha, a) in &self.terms {
            let mut moved = other.clone();
            for i in 0..self.n {
                for _ in 0..alpha[i] {
                    moved = moved.derivative_on_left(i);
                }
            }
            for (beta, b) in moved.terms {
                out.add_term(beta, a * &b);
            }
        }
        Ok(out)
    }

    /// `∂_i ∘ self`, via `∂_i ∘ b(z) = b(z) ∘ ∂_i + (∂_i b)(z)`.
    fn derivative_on_left(&self, i: usize) -> WeylOp {
        let mut out = WeylOp::zero(self.n);
        for (beta, b) in &self.terms {
            out.add_term(beta.with_entry(i, beta[i] + 1), b.clone());
            out.add_term(beta.clone(), b.d_z(i).expect("index in range"));
        }
        out
    }

    pub fn pow(&self, m: u32) -> WeylOp {
        let mut acc = WeylOp::identity(self.n);
        for _ in 0..m {
            acc = acc.compose(self).expect("same dimension");
        }
        acc
    }

    /// The right total symbol `Σ a_α(z) ξ^α`.
    pub fn right_symbol(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (alpha, a) in &self.terms {
            out = &out + &a.shift(&Monomial::new(alpha.clone(), MultiIndex::zeros(self.n)));
        }
        out
    }

    /// Inverse of [`WeylOp::right_symbol`].
    pub fn from_right_symbol(symbol: &Poly) -> WeylOp {
        let n = symbol.n();
        let zero = MultiIndex::zeros(n);
        let mut out = WeylOp::zero(n);
        for (m, c) in symbol.terms() {
            let coeff = ZPoly::new_unchecked(Poly::term(Monomial::new(zero.clone(), m.z.clone()), c.clone()));
            out.add_term(m.xi.clone(), coeff);
        }
        out
    }

    /// The left total symbol `Σ b_β(z) ξ^β` of `Σ ∂^β b_β(z)`, computed as `Φ_{−1}` of the right symbol.
    pub fn left_symbol(&self) -> Poly {
        let ctx = StarContext::new(self.n, -Rat::one()).expect("n ≥ 1");
        ctx.phi(&self.right_symbol()).expect("same dimension")
    }

    /// Builds `Σ ∂^β ∘ b_β(z)` from a left symbol `Σ b_β(z) ξ^β` by composition.
    pub fn from_left_symbol(symbol: &Poly) -> WeylOp {
        let n = symbol.n();
        let zero = MultiIndex::zeros(n);
        let mut out = WeylOp::zero(n);
        for (m, c) in symbol.terms() {
            let coeff = ZPoly::new_unchecked(Poly::term(Monomial::new(zero.clone(), m.z.clone()), c.clone()));
            let piece = WeylOp::derivative(&m.xi)
                .compose(&WeylOp::multiplication(coeff))
                .expect("same dimension");
            out = out.try_add(&piece).expect("same dimension");
        }
        out
    }
}

impl WeylOp {
    /// Left symbol by direct reordering: repeatedly peel the top term `a ∂^α`
    /// as `∂^α ∘ a` and subtract the commutator remainder. Independent of `Φ`,
    /// so it serves as a cross-check of [`WeylOp::left_symbol`].
    pub fn left_symbol_by_reordering(&self) -> Poly {
        let mut rest = self.clone();
        let mut symbol = Poly::zero(self.n);
        let minus_one = -Rat::one();
        while let Some((alpha, a)) = rest.terms.iter().max_by_key(|(alpha, _)| (alpha.total(), (*alpha).clone())) {
            let (alpha, a) = (alpha.clone(), a.clone());
            symbol = &symbol + &a.shift(&Monomial::new(alpha.clone(), MultiIndex::zeros(self.n)));
            let peeled = WeylOp::derivative(&alpha)
                .compose(&WeylOp::multiplication(a))
                .expect("same dimension");
            rest = rest.try_add(&peeled.scale(&minus_one)).expect("same dimension");
        }
        symbol
    }
}

impl From<ZPoly> for WeylOp {
    fn from(p: ZPoly) -> Self {
        WeylOp::multiplication(p)
    }
}

/// True when `op` and `other` agree on every `z^β` with `|β| ≤ degree`.
pub fn agree_on_monomials(op: &WeylOp, other: &WeylOp, degree: u32) -> Result<bool> {
    op.check(other.n)?;
    for beta in MultiIndex::up_to_total(op.n, degree) {
        let p = ZPoly::z_pow(&beta);
        if op.apply(&p)? != other.apply(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl WeylOp {
    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> ZPoly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| ZPoly::zero(self.n))
    }

    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&MultiIndex::zeros(self.n))
                .is_some_and(|a| a.len() == 1 && a.constant_term().is_one())
    }
}

/// Symbol interchange on every monomial `ξ^α z^β` with `|α| + |β| ≤ degmax`:
/// `ℛ(from_left_symbol(P)) = Φ_1(P)`, `ℒ(from_right_symbol(P)) = Φ_{−1}(P)`
/// (also checked against reordering), and both symbol round trips.
pub fn interchange_check(n: usize, degmax: u32) -> Result<CheckReport> {
    let forward = StarContext::new(n, Rat::one())?;
    let back = forward.negated();
    let mut report = CheckReport::new(format!("interchange n={n} degmax={degmax}"));
    for e in MultiIndex::up_to_total(2 * n, degmax) {
        let e = e.entries();
        let p = Poly::monomial(&e[..n].to_vec().into(), &e[n..].to_vec().into());
        let from_left = WeylOp::from_left_symbol(&p);
        let from_right = WeylOp::from_right_symbol(&p);
        let right_ok = from_left.right_symbol() == forward.phi(&p)?;
        let left = from_right.left_symbol();
        let left_ok = left == back.phi(&p)? && left == from_right.left_symbol_by_reordering();
        let round_trip = WeylOp::from_right_symbol(&from_right.right_symbol()) == from_right
            && WeylOp::from_left_symbol(&from_left.left_symbol()) == from_left;
        report.record_with(
            print_poly(&p),
            right_ok && left_ok && round_trip,
            format!("right_ok={right_ok} left_ok={left_ok} round_trip={round_trip}"),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn z() -> ZPoly {
        ZPoly::var(1, 0)
    }

    fn d() -> WeylOp {
        WeylOp::d(1, 0)
    }

    fn zmul(p: ZPoly) -> WeylOp {
        WeylOp::multiplication(p)
    }

    #[test]
    fn apply_examples() {
        assert_eq!(d().apply(&z().pow(2)).unwrap(), z().scale(&int(2)));
        let phi = WeylOp::term(z().pow(2), [3].into());
        assert_eq!(phi.apply(&z().pow(3)).unwrap(), z().pow(2).scale(&int(6)));
        let p = z().pow(3) + ZPoly::constant(1, int(2));
        assert_eq!(WeylOp::identity(1).apply(&p).unwrap(), p);
    }

    #[test]
    fn compose_examples() {
        let one = WeylOp::identity(1);
        assert_eq!(
            d().compose(&zmul(z())).unwrap(),
            WeylOp::term(z(), [1].into()).try_add(&one).unwrap()
        );
        assert_eq!(zmul(z()).compose(&d()).unwrap(), WeylOp::term(z(), [1].into()));

        let lhs = d().pow(3).compose(&zmul(z().pow(2))).unwrap();
        let rhs = WeylOp::term(z().pow(2), [3].into())
            .try_add(&WeylOp::term(z().scale(&int(6)), [2].into()))
            .unwrap()
            .try_add(&WeylOp::term(ZPoly::constant(1, int(6)), [1].into()))
            .unwrap();
        assert_eq!(lhs, rhs);
        // ∂³∘z² against direct application on z^m, m ≤ 6
        for m in 0..=6 {
            let p = z().pow(m);
            let direct = d().pow(3).apply(&(&z().pow(2) * &p)).unwrap();
            assert_eq!(lhs.apply(&p).unwrap(), direct);
        }
    }

    #[test]
    fn symbol_examples() {
        let phi = WeylOp::term(z().pow(2), [3].into());
        let x = Poly::xi_var(1, 0);
        let zp = Poly::z_var(1, 0);
        assert_eq!(phi.right_symbol(), x.pow(3) * zp.pow(2));
        assert_eq!(d().right_symbol(), x);
        let p = z().pow(2) + z();
        assert_eq!(zmul(p.clone()).right_symbol(), p.as_poly().clone());

        assert_eq!(WeylOp::from_right_symbol(&(x.pow(3) * zp.pow(2))), phi);
        assert!(WeylOp::from_right_symbol(&Poly::one(1)).is_identity());
        assert_eq!(
            WeylOp::from_right_symbol(&(&x + &zp)),
            d().try_add(&zmul(z())).unwrap()
        );
    }

    #[test]
    fn left_symbol_examples() {
        let phi = WeylOp::term(z().pow(2), [3].into());
        let x = Poly::xi_var(1, 0);
        let zp = Poly::z_var(1, 0);
        let expected = x.pow(3) * zp.pow(2) - (x.pow(2) * &zp).scale(&int(6)) + x.scale(&int(6));
        assert_eq!(phi.left_symbol(), expected);
        assert_eq!(d().left_symbol(), x);
        assert_eq!(
            WeylOp::from_left_symbol(&(&x * &zp)),
            WeylOp::term(z(), [1].into()).try_add(&WeylOp::identity(1)).unwrap()
        );
        assert_eq!(WeylOp::from_left_symbol(&expected), phi);
        assert_eq!(phi.left_symbol_by_reordering(), expected);
    }

    #[test]
    fn interchange_small() {
        let report = interchange_check(1, 4).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        assert_eq!(report.len(), 15);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(WeylOp::identity(1).compose(&WeylOp::identity(2)).is_err());
        assert!(WeylOp::identity(2).apply(&z()).is_err());
    }

    #[test]
    fn agreement_helper() {
        let lhs = d().compose(&zmul(z())).unwrap();
        assert!(agree_on_monomials(&lhs, &lhs, 5).unwrap());
        assert!(!agree_on_monomials(&lhs, &zmul(z()).compose(&d()).unwrap(), 5).unwrap());
    }
}
