//! Generalized Laguerre polynomials `L_α^{[k]}(z)` and the identities tying them
//! to the product `∗ = ∗_1`.
//!
//! Everything is exact: orthogonality integrals over the positive orthant are
//! evaluated termwise through the moments `∫₀^∞ z^j e^{−cz} dz = j!/c^{j+1}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, factorial};
use crate::deformation::StarContext;
use crate::error::{AlgebraError, Result};
use crate::frontend::print_poly;
use crate::multi_index::MultiIndex;
use crate::poly::{Monomial, Poly, Rat, ZPoly};
use crate::report::CheckReport;
use crate::weyl::WeylOp;

/// Truncated power series `Σ_{j ≤ order} c_j u^j` in one formal variable with
/// polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    n: usize,
    coeffs: Vec<Poly>,
}

impl USeries {
    pub fn zero(n: usize, order: usize) -> Self {
        USeries { n, coeffs: vec![Poly::zero(n); order + 1] }
    }

    pub fn one(n: usize, order: usize) -> Self {
        let mut s = Self::zero(n, order);
        s.coeffs[0] = Poly::one(n);
        s
    }

    /// Builds a series from its first coefficients; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(n: usize, order: usize, coeffs: Vec<Poly>) -> Self {
        let mut s = Self::zero(n, order);
        for (j, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[j] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &Poly {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn add(&self, other: &USeries) -> USeries {
        let order = self.order().min(other.order());
        USeries {
            n: self.n,
            coeffs: (0..=order).map(|j| &self.coeffs[j] + &other.coeffs[j]).collect(),
        }
    }

    pub fn mul(&self, other: &USeries) -> USeries {
        let order = self.order().min(other.order());
        let mut out = Self::zero(self.n, order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> USeries {
        USeries { n: self.n, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// `exp(self)` for a series without constant term, by truncated Horner evaluation
    /// `1 + s(1 + s/2(1 + s/3(…)))`.
    pub fn exp(&self) -> Result<USeries> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::InvalidArgument("exp needs a series with zero constant term".into()));
        }
        let order = self.order();
        let one = Self::one(self.n, order);
        let mut acc = one.clone();
        for j in (1..=order).rev() {
            let step = self.mul(&acc).scale(&Rat::new(BigInt::one(), BigInt::from(j)));
            acc = one.add(&step);
        }
        Ok(acc)
    }
}

/// `exp(−c·u/(1−u)) / (1−u)^{k+1}` to order `order`, where `c` is the given polynomial.
pub fn generating_series(c: &Poly, k: u32, order: usize) -> USeries {
    let n = c.n();
    let neg_c = -c;
    let mut inner = USeries::zero(n, order);
    for j in 1..=order {
        inner.coeffs[j] = neg_c.clone();
    }
    let e = inner.exp().expect("zero constant term");
    let mut g = USeries::zero(n, order);
    for j in 0..=order {
        g.coeffs[j] = Poly::constant(n, Rat::from_integer(binomial(j as u32 + k, k)));
    }
    e.mul(&g)
}

/// Parameters of `L_α^{[k]}(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaguerreSpec {
    pub alpha: MultiIndex,
    pub k: MultiIndex,
}

impl LaguerreSpec {
    pub fn new(alpha: MultiIndex, k: MultiIndex) -> Result<Self> {
        if alpha.len() != k.len() {
            return Err(AlgebraError::DimensionMismatch { left: alpha.len(), right: k.len() });
        }
        if alpha.is_empty() {
            return Err(AlgebraError::ZeroDimension);
        }
        Ok(LaguerreSpec { alpha, k })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }
}

fn non_negative(name: &str, v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| AlgebraError::NegativeInput(format!("{name} = {v}")))
}

/// `L_m^{[k]}(z_i)` inside `n` variables.
fn laguerre1_in(n: usize, i: usize, m: u32, k: u32) -> ZPoly {
    let mut p = Poly::zero(n);
    for j in 0..=m {
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let c = Rat::new(sign * binomial(m + k, m - j), factorial(j));
        p.add_term(Monomial::new(MultiIndex::zeros(n), MultiIndex::unit(n, i).with_entry(i, j)), c);
    }
    ZPoly::new_unchecked(p)
}

/// `L_m^{[k]}(z) = Σ_j C(m+k, m−j) (−z)^j / j!` in one variable.
pub fn laguerre1(m: i64, k: i64) -> Result<ZPoly> {
    let m = non_negative("m", m)?;
    let k = non_negative("k", k)?;
    Ok(laguerre1_in(1, 0, m, k))
}

/// `L_α^{[k]}(z) = Π_i L_{α_i}^{[k_i]}(z_i)`.
pub fn laguerre(spec: &LaguerreSpec) -> ZPoly {
    let n = spec.n();
    (0..n).fold(ZPoly::one(n), |acc, i| &acc * &laguerre1_in(n, i, spec.alpha[i], spec.k[i]))
}

fn sign_over_factorial(alpha: &MultiIndex) -> Rat {
    let sign = if alpha.total().is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    Rat::new(sign, alpha.factorial())
}

fn star_one(n: usize) -> StarContext {
    StarContext::new(n, Rat::one()).expect("n ≥ 1")
}

/// `L_α^{[k]}(ξz) = (−1)^{|α|}/α! · ξ^{−k}(ξ^{α+k} ∗ z^α)`.
pub fn laguerre_star(spec: &LaguerreSpec) -> Result<Poly> {
    let n = spec.n();
    let ctx = star_one(n);
    let product = ctx.star(&Poly::xi_pow(&spec.alpha.add(&spec.k)), &Poly::z_pow(&spec.alpha))?;
    product
        .scale(&sign_over_factorial(&spec.alpha))
        .div_monomial_exact(&Monomial::new(spec.k.clone(), MultiIndex::zeros(n)))
}

/// The z-side form `(−1)^{|α|}/α! · z^{−k}(ξ^α ∗ z^{α+k})`.
pub fn laguerre_star_z_side(spec: &LaguerreSpec) -> Result<Poly> {
    let n = spec.n();
    let ctx = star_one(n);
    let product = ctx.star(&Poly::xi_pow(&spec.alpha), &Poly::z_pow(&spec.alpha.add(&spec.k)))?;
    product
        .scale(&sign_over_factorial(&spec.alpha))
        .div_monomial_exact(&Monomial::new(MultiIndex::zeros(n), spec.k.clone()))
}

/// `laguerre_star(spec)` evaluated at `ξ = 1`.
pub fn laguerre_from_star_at_one(spec: &LaguerreSpec) -> Result<ZPoly> {
    let ones = vec![Rat::one(); spec.n()];
    laguerre_star(spec)?.eval_xi(&ones)
}

/// Coefficient of `u^α` in `Π_i exp(−z_i u_i/(1−u_i)) / (1−u_i)^{k_i+1}`.
pub fn laguerre_from_genfun(spec: &LaguerreSpec) -> ZPoly {
    let n = spec.n();
    let mut acc = Poly::one(n);
    for i in 0..n {
        let order = spec.alpha[i] as usize;
        let series = generating_series(&Poly::z_var(n, i), spec.k[i], order);
        acc = &acc * series.coeff(order);
    }
    ZPoly::new_unchecked(acc)
}

/// `L_α(z; ξ) := ξ^α ∗ z^α`.
pub fn laguerre_xi(alpha: &MultiIndex) -> Result<Poly> {
    star_one(alpha.len()).star_monomial(alpha, alpha)
}

/// `∫₀^∞ z^j e^{−z} dz = j!`.
pub fn gamma_moment(j: i64) -> Result<BigInt> {
    Ok(factorial(non_negative("j", j)?))
}

/// `∫_{(ℝ>0)ⁿ} p(z) z^k e^{−Σz_i} dz`, termwise through gamma moments.
pub fn integrate_weight(p: &ZPoly, k: &MultiIndex) -> Result<Rat> {
    if p.n() != k.len() {
        return Err(AlgebraError::DimensionMismatch { left: p.n(), right: k.len() });
    }
    let mut total = Rat::zero();
    for (gamma, c) in p.z_terms() {
        let moment = gamma
            .entries()
            .iter()
            .zip(k.entries())
            .fold(BigInt::one(), |acc, (&g, &kk)| acc * factorial(g + kk));
        total += c * Rat::from_integer(moment);
    }
    Ok(total)
}

/// `∫ p(ξ_0, z) w_ξ(z) dz` with `w_ξ(z) = e^{−⟨ξ_0, z⟩} Π ξ_{0,i}` at a positive rational point `ξ_0`.
pub fn integrate_weight_xi(p: &Poly, xi_point: &[Rat]) -> Result<Rat> {
    if p.n() != xi_point.len() {
        return Err(AlgebraError::DimensionMismatch { left: p.n(), right: xi_point.len() });
    }
    if let Some(index) = xi_point.iter().position(|v| !v.is_positive()) {
        return Err(AlgebraError::NonPositivePoint { index });
    }
    let pz = p.eval_xi(xi_point)?;
    let mut total = Rat::zero();
    for (gamma, c) in pz.z_terms() {
        // Π_i ξ_i · γ_i! / ξ_i^{γ_i+1} = Π_i γ_i! / ξ_i^{γ_i}
        let mut term = c.clone();
        for (i, &g) in gamma.entries().iter().enumerate() {
            term *= Rat::from_integer(factorial(g));
            term /= num_traits::pow(xi_point[i].clone(), g as usize);
        }
        total += term;
    }
    Ok(total)
}

/// Compares generating-function coefficients `0..=order` against `laguerre1(m, k)`.
pub fn generating_check(k: u32, order: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("genfun k={k} N={order}"));
    let series = generating_series(&Poly::z_var(1, 0), k, order);
    for m in 0..=order {
        let expected = laguerre1_in(1, 0, m as u32, k);
        let got = series.coeff(m);
        let ok = got == expected.as_poly();
        report.record_with(format!("m={m}"), ok, format!("coefficient={}", print_poly(got)));
    }
    report
}

/// `L_m^{[k]} = (−1)^k ∂^k L_{m+k}`.
pub fn identity_dk_check(m: u32, k: u32) -> bool {
    let lhs = laguerre1_in(1, 0, m, k);
    let mut rhs = laguerre1_in(1, 0, m + k, 0).d_multi(&[k].into()).expect("n = 1");
    if k % 2 == 1 {
        rhs = -&rhs;
    }
    lhs == rhs
}

/// `(m+1)L_{m+1} = (2m+1−z)L_m − mL_{m−1}` and `zL_m' = m(L_m − L_{m−1})` for `1 ≤ m ≤ mmax`.
pub fn recurrence_check(mmax: u32) -> Result<CheckReport> {
    if mmax < 1 {
        return Err(AlgebraError::InvalidArgument("mmax must be at least 1".into()));
    }
    let z = ZPoly::var(1, 0);
    let l = |m: u32| laguerre1_in(1, 0, m, 0);
    let c = |v: u32| Rat::from_integer(BigInt::from(v));
    let mut report = CheckReport::new(format!("recur mmax={mmax}"));
    for m in 1..=mmax {
        let lhs = l(m + 1).scale(&c(m + 1));
        let factor = &ZPoly::constant(1, c(2 * m + 1)) - &z;
        let rhs = &(&factor * &l(m)) - &l(m - 1).scale(&c(m));
        report.record(format!("three-term m={m}"), (&lhs - &rhs).is_zero());

        let lhs = &z * &l(m).d_z(0).expect("n = 1");
        let rhs = (&l(m) - &l(m - 1)).scale(&c(m));
        report.record(format!("derivative m={m}"), (&lhs - &rhs).is_zero());
    }
    Ok(report)
}

/// `z f'' + (k+1−z) f' + m f = 0` for `f = L_m^{[k]}`.
pub fn ode_check(mmax: u32, kmax: u32) -> CheckReport {
    let z = ZPoly::var(1, 0);
    let mut report = CheckReport::new(format!("ode mmax={mmax} kmax={kmax}"));
    for k in 0..=kmax {
        for m in 0..=mmax {
            let f = laguerre1_in(1, 0, m, k);
            let f1 = f.d_z(0).expect("n = 1");
            let f2 = f1.d_z(0).expect("n = 1");
            let coeff = &ZPoly::constant(1, Rat::from_integer(BigInt::from(k + 1))) - &z;
            let residual = &(&(&z * &f2) + &(&coeff * &f1)) + &f.scale(&Rat::from_integer(BigInt::from(m)));
            report.record_with(format!("m={m} k={k}"), residual.is_zero(), format!("residual={}", print_poly(&residual)));
        }
    }
    report
}

/// Coefficientwise check of `Σ_{|α|≤N} L_α^{[k]}(ξz) u^α` against
/// `Π_i exp(−ξ_i z_i u_i/(1−u_i)) / (1−u_i)^{k_i+1}`.
pub fn star_exp_check(k: &MultiIndex, order: u32) -> Result<CheckReport> {
    let n = k.len();
    if n == 0 {
        return Err(AlgebraError::ZeroDimension);
    }
    let series: Vec<USeries> = (0..n)
        .map(|i| {
            let xz = &Poly::xi_var(n, i) * &Poly::z_var(n, i);
            generating_series(&xz, k[i], order as usize)
        })
        .collect();
    let mut report = CheckReport::new(format!("starexp k={k} N={order}"));
    for alpha in MultiIndex::up_to_total(n, order) {
        let lhs = laguerre_star(&LaguerreSpec::new(alpha.clone(), k.clone())?)?;
        let rhs = (0..n).fold(Poly::one(n), |acc, i| &acc * series[i].coeff(alpha[i] as usize));
        report.record(format!("alpha={alpha}"), lhs == rhs);
    }
    Ok(report)
}

/// `ξ^β (ξ^α ∗ z^{α+β}) = z^β (ξ^{α+β} ∗ z^α)`.
pub fn even_identity_check(alpha: &MultiIndex, beta: &MultiIndex) -> Result<bool> {
    if alpha.len() != beta.len() {
        return Err(AlgebraError::DimensionMismatch { left: alpha.len(), right: beta.len() });
    }
    let ctx = star_one(alpha.len());
    let ab = alpha.add(beta);
    let lhs = &Poly::xi_pow(beta) * &ctx.star(&Poly::xi_pow(alpha), &Poly::z_pow(&ab))?;
    let rhs = &Poly::z_pow(beta) * &ctx.star(&Poly::xi_pow(&ab), &Poly::z_pow(alpha))?;
    Ok(lhs == rhs)
}

/// Explicit formula, star route at `ξ = 1`, and generating-function coefficient,
/// for every `|α| ≤ amax`, `|k| ≤ kmax`.
pub fn three_way_check(n: usize, amax: u32, kmax: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("three-way n={n} amax={amax} kmax={kmax}"));
    for k in MultiIndex::up_to_total(n, kmax) {
        for alpha in MultiIndex::up_to_total(n, amax) {
            let spec = LaguerreSpec::new(alpha.clone(), k.clone())?;
            let explicit = laguerre(&spec);
            let star = laguerre_from_star_at_one(&spec)?;
            let z_side = laguerre_star_z_side(&spec)?;
            let genfun = laguerre_from_genfun(&spec);
            let ok = explicit == star && star == genfun && laguerre_star(&spec)? == z_side;
            report.record_with(format!("alpha={alpha} k={k}"), ok, print_poly(explicit.as_poly()));
        }
    }
    Ok(report)
}

/// `∫ L_α^{[k]} L_β^{[k]} w = δ_{αβ} (α+k)!/α!` for `|α|, |β| ≤ amax`.
pub fn orthogonality_check(k: &MultiIndex, amax: u32) -> Result<CheckReport> {
    let n = k.len();
    let mut report = CheckReport::new(format!("ortho k={k} amax={amax}"));
    let basis: Vec<(MultiIndex, ZPoly)> = MultiIndex::up_to_total(n, amax)
        .into_iter()
        .map(|a| {
            let p = laguerre(&LaguerreSpec { alpha: a.clone(), k: k.clone() });
            (a, p)
        })
        .collect();
    for (a, pa) in &basis {
        for (b, pb) in &basis {
            let value = integrate_weight(&(pa * pb), k)?;
            let expected = if a == b {
                Rat::new(a.add(k).factorial(), a.factorial())
            } else {
                Rat::zero()
            };
            report.record_with(format!("alpha={a} beta={b}"), value == expected, format!("value={value}"));
        }
    }
    Ok(report)
}

/// `∫ L_α(z;ξ) L_β(z;ξ) w_ξ dz = (α!)² δ_{αβ}` at a fixed positive point.
pub fn xi_orthogonality_check(xi_point: &[Rat], amax: u32) -> Result<CheckReport> {
    let n = xi_point.len();
    let label: Vec<String> = xi_point.iter().map(|v| v.to_string()).collect();
    let mut report = CheckReport::new(format!("xi-ortho xi=({}) amax={amax}", label.join(",")));
    let basis: Vec<(MultiIndex, Poly)> = MultiIndex::up_to_total(n, amax)
        .into_iter()
        .map(|a| laguerre_xi(&a).map(|p| (a, p)))
        .collect::<Result<_>>()?;
    for (a, pa) in &basis {
        for (b, pb) in &basis {
            let value = integrate_weight_xi(&(pa * pb), xi_point)?;
            let expected = if a == b {
                Rat::from_integer(a.factorial() * a.factorial())
            } else {
                Rat::zero()
            };
            report.record_with(format!("alpha={a} beta={b}"), value == expected, format!("value={value}"));
        }
    }
    Ok(report)
}

/// `L_m = (1/m!) (∂ − 1)^m (z^m)` as an operator identity in the Weyl algebra.
pub fn rodrigues_check(mmax: u32) -> CheckReport {
    let shifted = WeylOp::d(1, 0)
        .try_add(&WeylOp::identity(1).scale(&-Rat::one()))
        .expect("n = 1");
    let mut report = CheckReport::new(format!("rodrigues mmax={mmax}"));
    for m in 0..=mmax {
        let applied = shifted
            .pow(m)
            .apply(&ZPoly::z_pow(&[m].into()))
            .expect("n = 1")
            .scale(&Rat::new(BigInt::one(), factorial(m)));
        report.record(format!("m={m}"), applied == laguerre1_in(1, 0, m, 0));
    }
    report
}
