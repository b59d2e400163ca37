//! Sparse exact-rational polynomials in the `2n` variables `ξ₁..ξₙ, z₁..zₙ`.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic on the concatenated exponent `(ξ₁..ξₙ, z₁..zₙ)`. Iteration is
//! therefore ascending in that order; the printer walks it in reverse.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::falling_factorial;
use crate::error::{AlgebraError, Result};
use crate::multi_index::MultiIndex;

/// Exact rational coefficient, always reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Which family of variables a derivative acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Xi,
    Z,
}

/// `ξ^xi z^z`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub xi: MultiIndex,
    pub z: MultiIndex,
}

impl Monomial {
    pub fn new(xi: MultiIndex, z: MultiIndex) -> Self {
        assert_eq!(xi.len(), z.len(), "ξ and z exponents must have equal length");
        Monomial { xi, z }
    }

    pub fn one(n: usize) -> Self {
        Monomial { xi: MultiIndex::zeros(n), z: MultiIndex::zeros(n) }
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    pub fn total(&self) -> u32 {
        self.xi.total() + self.z.total()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { xi: self.xi.add(&other.xi), z: self.z.add(&other.z) }
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        Some(Monomial { xi: self.xi.checked_sub(&other.xi)?, z: self.z.checked_sub(&other.z)? })
    }

    fn exponents(&self, kind: VarKind) -> &MultiIndex {
        match kind {
            VarKind::Xi => &self.xi,
            VarKind::Z => &self.z,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.xi.cmp(&other.xi))
            .then_with(|| self.z.cmp(&other.z))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(total, ξ-degree, z-degree)`; all three are −1 for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degree {
    pub total: i64,
    pub xi: i64,
    pub z: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rat>,
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { left: a, right: b })
    }
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut p = Poly::zero(m.n());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `ξ^α z^β` with coefficient 1.
    pub fn monomial(alpha: &MultiIndex, beta: &MultiIndex) -> Self {
        Self::term(Monomial::new(alpha.clone(), beta.clone()), Rat::one())
    }

    pub fn xi_pow(alpha: &MultiIndex) -> Self {
        Self::monomial(alpha, &MultiIndex::zeros(alpha.len()))
    }

    pub fn z_pow(beta: &MultiIndex) -> Self {
        Self::monomial(&MultiIndex::zeros(beta.len()), beta)
    }

    /// `ξ_i` (0-based).
    pub fn xi_var(n: usize, i: usize) -> Self {
        Self::xi_pow(&MultiIndex::unit(n, i))
    }

    /// `z_i` (0-based).
    pub fn z_var(n: usize, i: usize) -> Self {
        Self::z_pow(&MultiIndex::unit(n, i))
    }

    /// Sums the given terms, merging duplicates and pruning zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            debug_assert_eq!(m.n(), n);
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.n))
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        check_dims(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        check_dims(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        check_dims(self.n, other.n)?;
        let mut out = Poly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, m: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..m {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    /// Divides every term by `m`, failing if any term is not divisible.
    pub fn div_monomial_exact(&self, m: &Monomial) -> Result<Poly> {
        check_dims(self.n, m.n())?;
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let q = k.checked_div(m).ok_or(AlgebraError::InexactDivision)?;
            terms.insert(q, v.clone());
        }
        Ok(Poly { n: self.n, terms })
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(AlgebraError::IndexOutOfRange { index: i, n: self.n })
        }
    }

    /// Iterated partial derivative `∂^γ` (kind `Z`) or `δ^γ` (kind `Xi`).
    pub fn d_multi(&self, kind: VarKind, gamma: &MultiIndex) -> Result<Poly> {
        check_dims(self.n, gamma.len())?;
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let exps = m.exponents(kind);
            let Some(rest) = exps.checked_sub(gamma) else { continue };
            let factor = exps
                .entries()
                .iter()
                .zip(gamma.entries())
                .fold(BigInt::one(), |acc, (&e, &g)| acc * falling_factorial(e, g));
            let m2 = match kind {
                VarKind::Xi => Monomial { xi: rest, z: m.z.clone() },
                VarKind::Z => Monomial { xi: m.xi.clone(), z: rest },
            };
            out.add_term(m2, c * Rat::from_integer(factor));
        }
        Ok(out)
    }

    /// `∂_{z_i}` (0-based `i`).
    pub fn d_z(&self, i: usize) -> Result<Poly> {
        self.check_index(i)?;
        self.d_multi(VarKind::Z, &MultiIndex::unit(self.n, i))
    }

    /// `∂_{ξ_i}` (0-based `i`).
    pub fn d_xi(&self, i: usize) -> Result<Poly> {
        self.check_index(i)?;
        self.d_multi(VarKind::Xi, &MultiIndex::unit(self.n, i))
    }

    /// Substitutes `ξ = point`, leaving a polynomial in `z` only.
    pub fn eval_xi(&self, point: &[Rat]) -> Result<ZPoly> {
        check_dims(self.n, point.len())?;
        let zero = MultiIndex::zeros(self.n);
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let v = power_product(point, &m.xi);
            out.add_term(Monomial { xi: zero.clone(), z: m.z.clone() }, c * v);
        }
        Ok(ZPoly(out))
    }

    /// Substitutes `z = point`, leaving a polynomial in `ξ` only.
    pub fn eval_z(&self, point: &[Rat]) -> Result<Poly> {
        check_dims(self.n, point.len())?;
        let zero = MultiIndex::zeros(self.n);
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let v = power_product(point, &m.z);
            out.add_term(Monomial { xi: m.xi.clone(), z: zero.clone() }, c * v);
        }
        Ok(out)
    }

    /// Full evaluation at `(ξ, z)`.
    pub fn eval(&self, xi_point: &[Rat], z_point: &[Rat]) -> Result<Rat> {
        check_dims(self.n, xi_point.len())?;
        check_dims(self.n, z_point.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| c * power_product(xi_point, &m.xi) * power_product(z_point, &m.z))
            .fold(Rat::zero(), |a, b| a + b))
    }

    pub fn degree(&self) -> Degree {
        if self.is_zero() {
            return Degree { total: -1, xi: -1, z: -1 };
        }
        let mut d = Degree { total: 0, xi: 0, z: 0 };
        for m in self.terms.keys() {
            d.total = d.total.max(m.total() as i64);
            d.xi = d.xi.max(m.xi.total() as i64);
            d.z = d.z.max(m.z.total() as i64);
        }
        d
    }

    /// Per-coordinate maximal exponents of the given kind.
    pub fn max_exponents(&self, kind: VarKind) -> MultiIndex {
        self.terms
            .keys()
            .fold(MultiIndex::zeros(self.n), |acc, m| acc.pointwise_max(m.exponents(kind)))
    }

    /// True when no term involves `z`.
    pub fn is_xi_only(&self) -> bool {
        self.terms.keys().all(|m| m.z.is_zero())
    }

    /// True when no term involves `ξ`.
    pub fn is_z_only(&self) -> bool {
        self.terms.keys().all(|m| m.xi.is_zero())
    }

    /// True when every term is divisible by some `ξ_i`, i.e. membership in `ξℂ[ξ,z]`.
    pub fn in_xi_ideal(&self) -> bool {
        self.terms.keys().all(|m| !m.xi.is_zero())
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exchanges the roles of `ξ` and `z`.
    pub fn swap_xi_z(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial { xi: m.z.clone(), z: m.xi.clone() }, c.clone()))
                .collect(),
        }
    }

    /// Replaces `z_i` by `ξ_i z_i` in a polynomial of `z` only.
    pub fn substitute_xi_z(&self) -> Result<Poly> {
        if !self.is_z_only() {
            return Err(AlgebraError::NotInSubalgebra("expected a polynomial in z only"));
        }
        Ok(Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial { xi: m.z.clone(), z: m.z.clone() }, c.clone()))
                .collect(),
        })
    }
}

fn power_product(point: &[Rat], exps: &MultiIndex) -> Rat {
    point
        .iter()
        .zip(exps.entries())
        .fold(Rat::one(), |acc, (v, &e)| acc * num_traits::pow(v.clone(), e as usize))
}

macro_rules! forward_binop {
    ($ty:ty, $trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;

            fn $method(self, rhs: &$ty) -> $ty {
                self.$checked(rhs).expect("operands must share the same dimension")
            }
        }

        impl $trait<$ty> for $ty {
            type Output = $ty;

            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&$ty> for $ty {
            type Output = $ty;

            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Poly, Add, add, try_add);
forward_binop!(Poly, Sub, sub, try_sub);
forward_binop!(Poly, Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

/// A polynomial in `z` only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly(Poly);

impl ZPoly {
    pub fn new(p: Poly) -> Result<Self> {
        if p.is_z_only() {
            Ok(ZPoly(p))
        } else {
            Err(AlgebraError::NotInSubalgebra("expected a polynomial in z only"))
        }
    }

    pub(crate) fn new_unchecked(p: Poly) -> Self {
        debug_assert!(p.is_z_only());
        ZPoly(p)
    }

    pub fn zero(n: usize) -> Self {
        ZPoly(Poly::zero(n))
    }

    pub fn one(n: usize) -> Self {
        ZPoly(Poly::one(n))
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        ZPoly(Poly::constant(n, c))
    }

    pub fn z_pow(beta: &MultiIndex) -> Self {
        ZPoly(Poly::z_pow(beta))
    }

    pub fn var(n: usize, i: usize) -> Self {
        ZPoly(Poly::z_var(n, i))
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    /// `(z-exponent, coefficient)` pairs in ascending order.
    pub fn z_terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rat)> {
        self.0.terms().map(|(m, c)| (&m.z, c))
    }

    pub fn d_z(&self, i: usize) -> Result<ZPoly> {
        self.0.d_z(i).map(ZPoly)
    }

    pub fn d_multi(&self, gamma: &MultiIndex) -> Result<ZPoly> {
        self.0.d_multi(VarKind::Z, gamma).map(ZPoly)
    }

    pub fn scale(&self, c: &Rat) -> ZPoly {
        ZPoly(self.0.scale(c))
    }

    pub fn pow(&self, m: u32) -> ZPoly {
        ZPoly(self.0.pow(m))
    }

    pub fn try_add(&self, other: &ZPoly) -> Result<ZPoly> {
        self.0.try_add(&other.0).map(ZPoly)
    }

    pub fn try_sub(&self, other: &ZPoly) -> Result<ZPoly> {
        self.0.try_sub(&other.0).map(ZPoly)
    }

    pub fn try_mul(&self, other: &ZPoly) -> Result<ZPoly> {
        self.0.try_mul(&other.0).map(ZPoly)
    }

    /// Evaluates at `z = point`.
    pub fn eval_at(&self, point: &[Rat]) -> Result<Rat> {
        let zeros = vec![Rat::zero(); self.0.n()];
        self.0.eval(&zeros, point)
    }
}

impl Deref for ZPoly {
    type Target = Poly;

    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl From<ZPoly> for Poly {
    fn from(p: ZPoly) -> Poly {
        p.0
    }
}

impl TryFrom<Poly> for ZPoly {
    type Error = AlgebraError;

    fn try_from(p: Poly) -> Result<Self> {
        ZPoly::new(p)
    }
}

forward_binop!(ZPoly, Add, add, try_add);
forward_binop!(ZPoly, Sub, sub, try_sub);
forward_binop!(ZPoly, Mul, mul, try_mul);

impl Neg for &ZPoly {
    type Output = ZPoly;

    fn neg(self) -> ZPoly {
        ZPoly(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::xi_var(2, i)
    }

    fn z(i: usize) -> Poly {
        Poly::z_var(2, i)
    }

    fn c(v: i64) -> Poly {
        Poly::constant(2, int(v))
    }

    #[test]
    fn add_examples() {
        assert!((&(&x(0) * &z(0)) + &(-(&x(0) * &z(0)))).is_zero());
        assert_eq!(&(&x(0) + &z(0)) + &z(0), &x(0) + &z(0).scale(&int(2)));
        let f = &x(1) * &z(0) + c(3);
        assert_eq!(&Poly::zero(2) + &f, f);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&x(0) * &z(0), Poly::monomial(&[1, 0].into(), &[1, 0].into()));
        assert_eq!((&x(0) - &z(0)) * (&x(0) + &z(0)), x(0).pow(2) - z(0).pow(2));
        assert_eq!((c(1) - z(0)).pow(2), c(1) - z(0).scale(&int(2)) + z(0).pow(2));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Poly::one(1);
        let b = Poly::one(2);
        assert_eq!(a.try_add(&b), Err(AlgebraError::DimensionMismatch { left: 1, right: 2 }));
        assert!(a.try_mul(&b).is_err());
        assert!(a.d_multi(VarKind::Z, &MultiIndex::zeros(2)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let z1 = Poly::z_var(1, 0);
        let x1 = Poly::xi_var(1, 0);
        assert_eq!(z1.pow(3).d_z(0).unwrap(), z1.pow(2).scale(&int(3)));
        assert_eq!((&x1 * &z1).d_xi(0).unwrap(), z1);
        assert!(x1.pow(2).d_z(0).unwrap().is_zero());
        assert_eq!(
            z1.d_z(1),
            Err(AlgebraError::IndexOutOfRange { index: 1, n: 1 })
        );
    }

    #[test]
    fn multi_derivative_examples() {
        let f = z(0).pow(2) * z(1);
        assert_eq!(f.d_multi(VarKind::Z, &[2, 0].into()).unwrap(), z(1).scale(&int(2)));
        assert_eq!(f.d_multi(VarKind::Z, &[0, 0].into()).unwrap(), f);
        let x1 = Poly::xi_var(1, 0);
        assert_eq!(x1.pow(3).d_multi(VarKind::Xi, &[3].into()).unwrap(), Poly::constant(1, int(6)));
    }

    #[test]
    fn eval_examples() {
        let x1 = Poly::xi_var(1, 0);
        let z1 = Poly::z_var(1, 0);
        let one = Poly::one(1);
        assert_eq!((&x1 * &z1 - &one).eval_xi(&[int(1)]).unwrap().as_poly(), &(&z1 - &one));
        assert!((x1.pow(2) * &z1).eval_xi(&[int(0)]).unwrap().is_zero());
        assert_eq!((&x1 * &z1).eval(&[int(2)], &[int(3)]).unwrap(), int(6));
    }

    #[test]
    fn degree_examples() {
        let x1 = Poly::xi_var(1, 0);
        let z1 = Poly::z_var(1, 0);
        assert_eq!((x1.pow(2) * z1).degree(), Degree { total: 3, xi: 2, z: 1 });
        assert_eq!(Poly::zero(1).degree(), Degree { total: -1, xi: -1, z: -1 });
        assert_eq!(Poly::constant(1, int(7)).degree(), Degree { total: 0, xi: 0, z: 0 });
    }

    #[test]
    fn grlex_order() {
        let m = |a: [u32; 2], b: [u32; 2]| Monomial::new(a.into(), b.into());
        assert!(m([0, 0], [0, 0]) < m([0, 0], [0, 1]));
        assert!(m([0, 0], [0, 1]) < m([0, 0], [1, 0]));
        assert!(m([0, 0], [1, 0]) < m([0, 1], [0, 0]));
        assert!(m([1, 0], [0, 0]) < m([0, 0], [2, 0]));
    }

    #[test]
    fn zpoly_rejects_xi() {
        assert!(ZPoly::new(Poly::xi_var(1, 0)).is_err());
        assert!(ZPoly::new(Poly::z_var(1, 0)).is_ok());
    }

    #[test]
    fn exact_monomial_division() {
        let x1 = Poly::xi_var(1, 0);
        let z1 = Poly::z_var(1, 0);
        let f = x1.pow(2) * &z1 + &x1;
        let m = Monomial::new([1].into(), [0].into());
        assert_eq!(f.div_monomial_exact(&m).unwrap(), &x1 * &z1 + Poly::one(1));
        assert_eq!(
            (&f + &z1).div_monomial_exact(&m),
            Err(AlgebraError::InexactDivision)
        );
    }
}
