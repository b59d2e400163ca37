//! The deformed algebra `B_t[ξ,z]`: the product `∗_t`, the operators `Λ` and
//! `Φ_t = e^{tΛ}`, the evaluation homomorphism `ℰ_t`, and star-Taylor expansion.
//!
//! The product is computed from the closed form
//!
//! ```text
//! f ∗_t g = Σ_{α,β} (−t)^{|α|+|β|} / (α! β!) · (δ^β ∂^α f)(∂^β δ^α g)
//! ```
//!
//! where `∂ = ∂_z` and `δ = ∂_ξ`. On a pair of monomials every factor splits
//! over coordinates, so the double sum is evaluated coordinate by coordinate and
//! recombined.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{factorial, falling_factorial};
use crate::error::{AlgebraError, Result};
use crate::multi_index::MultiIndex;
use crate::poly::{Monomial, Poly, Rat, VarKind, ZPoly};

/// Fixes the algebra `B_t[ξ,z]`: the dimension `n` and the deformation parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarContext {
    n: usize,
    t: Rat,
}

impl StarContext {
    pub fn new(n: usize, t: Rat) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        Ok(StarContext { n, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    /// The same dimension with parameter `−t`.
    pub fn negated(&self) -> StarContext {
        StarContext { n: self.n, t: -&self.t }
    }

    fn check(&self, f: &Poly) -> Result<()> {
        if f.n() == self.n {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch { left: self.n, right: f.n() })
        }
    }

    /// `Λ f = Σ_i δ_i ∂_i f`.
    pub fn lambda_apply(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        Ok(lambda(f))
    }

    /// `Φ_t f = Σ_m t^m Λ^m f / m!`; the series stops once `Λ^m f = 0`.
    pub fn phi(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        let mut acc = f.clone();
        if self.t.is_zero() {
            return Ok(acc);
        }
        let mut current = f.clone();
        let mut m: i64 = 0;
        loop {
            current = lambda(&current);
            if current.is_zero() {
                break;
            }
            m += 1;
            // current now holds t^m Λ^m f / m!
            current = current.scale(&(&self.t / Rat::from_integer(BigInt::from(m))));
            acc = &acc + &current;
        }
        Ok(acc)
    }

    /// `Φ_{−t} f`, the inverse of [`StarContext::phi`].
    pub fn phi_inverse(&self, f: &Poly) -> Result<Poly> {
        self.negated().phi(f)
    }

    /// `f ∗_t g`.
    pub fn star(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.check(f)?;
        self.check(g)?;
        if self.t.is_zero() {
            return f.try_mul(g);
        }
        let max_order = (f.degree().total.max(0) + g.degree().total.max(0)) as usize;
        let neg_t_pows = powers(&-&self.t, max_order);
        let mut out = Poly::zero(self.n);
        for (m1, c1) in f.terms() {
            for (m2, c2) in g.terms() {
                let coeff = c1 * c2;
                for (m, c) in monomial_star(m1, m2, &neg_t_pows) {
                    out.add_term(m, &coeff * c);
                }
            }
        }
        Ok(out)
    }

    /// `λ(ξ − t∂) g` for `λ` in `ξ` only, by applying the commuting operators
    /// `ξ_i − t∂_i` one factor at a time.
    pub fn star_via_subst_xi(&self, lambda_xi: &Poly, g: &Poly) -> Result<Poly> {
        self.check(lambda_xi)?;
        self.check(g)?;
        if !lambda_xi.is_xi_only() {
            return Err(AlgebraError::NotInSubalgebra("left factor must be a polynomial in ξ only"));
        }
        self.substitute_operator(lambda_xi, g, VarKind::Xi)
    }

    /// `p(z − tδ) g` for `p` in `z` only.
    pub fn star_via_subst_z(&self, p: &Poly, g: &Poly) -> Result<Poly> {
        self.check(p)?;
        self.check(g)?;
        if !p.is_z_only() {
            return Err(AlgebraError::NotInSubalgebra("left factor must be a polynomial in z only"));
        }
        self.substitute_operator(p, g, VarKind::Z)
    }

    fn substitute_operator(&self, outer: &Poly, g: &Poly, kind: VarKind) -> Result<Poly> {
        let mut out = Poly::zero(self.n);
        for (m, c) in outer.terms() {
            let exps = match kind {
                VarKind::Xi => &m.xi,
                VarKind::Z => &m.z,
            };
            let mut acc = g.clone();
            for i in 0..self.n {
                for _ in 0..exps[i] {
                    acc = self.shifted_factor(&acc, i, kind)?;
                }
            }
            out = &out + &acc.scale(c);
        }
        Ok(out)
    }

    /// `(ξ_i − t∂_i) h` for kind `Xi`, `(z_i − tδ_i) h` for kind `Z`.
    fn shifted_factor(&self, h: &Poly, i: usize, kind: VarKind) -> Result<Poly> {
        let (var, deriv) = match kind {
            VarKind::Xi => (Poly::xi_var(self.n, i), h.d_z(i)?),
            VarKind::Z => (Poly::z_var(self.n, i), h.d_xi(i)?),
        };
        Ok(&var * h - deriv.scale(&self.t))
    }

    /// `ξ^α ∗_t z^β`, from the one-sided closed form
    /// `Σ_γ (−t)^{|γ|}/γ! · (δ^γ ξ^α)(∂^γ z^β)`.
    pub fn star_monomial(&self, alpha: &MultiIndex, beta: &MultiIndex) -> Result<Poly> {
        if alpha.len() != self.n || beta.len() != self.n {
            return Err(AlgebraError::DimensionMismatch { left: self.n, right: alpha.len().max(beta.len()) });
        }
        let neg_t = -&self.t;
        let mut out = Poly::zero(self.n);
        for gamma in MultiIndex::boxed(&alpha.pointwise_min(beta)) {
            let mut c = num_traits::pow(neg_t.clone(), gamma.total() as usize)
                / Rat::from_integer(gamma.factorial());
            for i in 0..self.n {
                c *= Rat::from_integer(
                    falling_factorial(alpha[i], gamma[i]) * falling_factorial(beta[i], gamma[i]),
                );
            }
            let m = Monomial::new(alpha.checked_sub(&gamma).unwrap(), beta.checked_sub(&gamma).unwrap());
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// `f^{∗m}`; `m = 0` gives 1.
    pub fn star_pow(&self, f: &Poly, m: u32) -> Result<Poly> {
        self.check(f)?;
        let mut acc = Poly::one(self.n);
        for _ in 0..m {
            acc = self.star(&acc, f)?;
        }
        Ok(acc)
    }

    /// `ℰ_t`: sends `ξ^β z^γ` to `t^{|β|} ∂^β(z^γ)`.
    pub fn eval_e(&self, f: &Poly) -> Result<ZPoly> {
        self.check(f)?;
        let zero = MultiIndex::zeros(self.n);
        let mut out = Poly::zero(self.n);
        for (m, c) in f.terms() {
            let Some(rest) = m.z.checked_sub(&m.xi) else { continue };
            let mut coeff = c * num_traits::pow(self.t.clone(), m.xi.total() as usize);
            for i in 0..self.n {
                coeff *= Rat::from_integer(falling_factorial(m.z[i], m.xi[i]));
            }
            out.add_term(Monomial { xi: zero.clone(), z: rest }, coeff);
        }
        Ok(ZPoly::new_unchecked(out))
    }

    /// The unique expansion `f = Σ_α (1/α!) ξ^α ∗_t a_α(z)` with `a_α = ℰ_t(δ^α f)`.
    pub fn star_taylor(&self, f: &Poly) -> Result<StarTaylor> {
        self.check(f)?;
        let mut coefficients = BTreeMap::new();
        for alpha in MultiIndex::boxed(&f.max_exponents(VarKind::Xi)) {
            let a = self.eval_e(&f.d_multi(VarKind::Xi, &alpha)?)?;
            if !a.is_zero() {
                coefficients.insert(alpha, a);
            }
        }
        Ok(StarTaylor { n: self.n, t: self.t.clone(), coefficients })
    }

    /// `(z∂ − ξδ) f = Σ_i (z_i ∂_i − ξ_i δ_i) f`.
    pub fn euler_operator(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        let mut out = Poly::zero(self.n);
        for i in 0..self.n {
            out = &out + &(&Poly::z_var(self.n, i) * &f.d_z(i)?);
            out = &out - &(&Poly::xi_var(self.n, i) * &f.d_xi(i)?);
        }
        Ok(out)
    }
}

/// Expansion coefficients `a_α(z)` of a star-Taylor expansion; only nonzero ones are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarTaylor {
    n: usize,
    t: Rat,
    coefficients: BTreeMap<MultiIndex, ZPoly>,
}

impl StarTaylor {
    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn coefficients(&self) -> &BTreeMap<MultiIndex, ZPoly> {
        &self.coefficients
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<&ZPoly> {
        self.coefficients.get(alpha)
    }

    /// `Σ_α (1/α!) ξ^α ∗_t a_α(z)`.
    pub fn reconstruct(&self) -> Result<Poly> {
        let ctx = StarContext::new(self.n, self.t.clone())?;
        let mut out = Poly::zero(self.n);
        for (alpha, a) in &self.coefficients {
            let term = ctx.star(&Poly::xi_pow(alpha), a.as_poly())?;
            out = &out + &term.scale(&Rat::new(BigInt::one(), alpha.factorial()));
        }
        Ok(out)
    }
}

fn lambda(f: &Poly) -> Poly {
    let n = f.n();
    let mut out = Poly::zero(n);
    for (m, c) in f.terms() {
        for i in 0..n {
            let (a, b) = (m.xi[i], m.z[i]);
            if a == 0 || b == 0 {
                continue;
            }
            let m2 = Monomial { xi: m.xi.with_entry(i, a - 1), z: m.z.with_entry(i, b - 1) };
            out.add_term(m2, c * Rat::from_integer(BigInt::from(a) * BigInt::from(b)));
        }
    }
    out
}

fn powers(base: &Rat, max: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Rat::one());
    for k in 1..=max {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    out
}

/// One coordinate of `(ξ^a z^b) ∗_t (ξ^c z^d)`: terms `(ξ-exp, z-exp, coeff)`.
fn coordinate_star(a: u32, b: u32, c: u32, d: u32, neg_t_pows: &[Rat]) -> Vec<(u32, u32, Rat)> {
    let mut out = Vec::new();
    for alpha in 0..=b.min(c) {
        for beta in 0..=a.min(d) {
            let num = falling_factorial(a, beta)
                * falling_factorial(b, alpha)
                * falling_factorial(c, alpha)
                * falling_factorial(d, beta);
            let den = factorial(alpha) * factorial(beta);
            let coeff = &neg_t_pows[(alpha + beta) as usize] * Rat::new(num, den);
            out.push((a - beta + c - alpha, b - alpha + d - beta, coeff));
        }
    }
    out
}

fn monomial_star(m1: &Monomial, m2: &Monomial, neg_t_pows: &[Rat]) -> Vec<(Monomial, Rat)> {
    let n = m1.n();
    let mut partial: Vec<(Vec<u32>, Vec<u32>, Rat)> = vec![(Vec::with_capacity(n), Vec::with_capacity(n), Rat::one())];
    for i in 0..n {
        let factors = coordinate_star(m1.xi[i], m1.z[i], m2.xi[i], m2.z[i], neg_t_pows);
        let mut next = Vec::with_capacity(partial.len() * factors.len());
        for (xs, zs, c) in &partial {
            for (xe, ze, fc) in &factors {
                let mut xs2 = xs.clone();
                xs2.push(*xe);
                let mut zs2 = zs.clone();
                zs2.push(*ze);
                next.push((xs2, zs2, c * fc));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(xs, zs, c)| (Monomial::new(xs.into(), zs.into()), c))
        .collect()
}
