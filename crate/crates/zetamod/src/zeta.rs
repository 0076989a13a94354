//! Zeta functions of orbit spectra and their polynomial quotients.
//!
//! For a module with orbit counts `B_k` and fixed-point counts `N_r` over a
//! base of size `q`, the zeta function has three expressions that must agree
//! coefficient by coefficient:
//!
//! * Euler product: `Z(t) = prod_k (1 - t^k)^{-B_k}`,
//! * exponential:   `Z(t) = exp(sum_r N_r t^r / r)`,
//! * divisor count: `Z(t) = sum_m A_m t^m`, `A_m` the number of effective
//!   divisors of degree `m` (multisets of orbits with total degree `m`).
//!
//! [`divisor_counts_bruteforce`] computes `A_m` by explicit knapsack-style
//! enumeration, deliberately independent of the series arithmetic, so the
//! three expressions can check one another.
//!
//! Dividing out the projective-line factor gives the quotient
//! `P(t) = Z(t) (1 - t)(1 - q t)`; when `P` is a polynomial the module obeys
//! sharp arithmetic identities (a generic Riemann–Roch-style formula for the
//! `A_m`, and a power-sum formula tying `N_r` to the inverse roots of `P`)
//! that [`generic_rr_check`] and [`power_sum_check`] verify exactly.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{
    log2_big, newton_power_sums, to_bigint, ExactError, IntPoly, Rational, TruncSeries,
};
use crate::spectrum::{FixedPointTable, OrbitSpectrum, SpectrumError};

/// Errors from zeta-series computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("fixed-point table has depth {available}, need {needed}")]
    InsufficientData { needed: u64, available: u64 },
    #[error("orbit multiplicities are too large for explicit divisor enumeration")]
    EnumerationTooLarge,
}

/// Decomposes a prime power as `(p, e)` with `q = p^e`, or `None` when `q`
/// is not a prime power (including `q < 2`).
pub fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            return (rest == 1).then_some((p, e));
        }
        p += 1;
    }
    Some((q, 1))
}

/// Base field size and truncation order shared by a zeta computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZetaContext {
    q: u64,
    trunc: usize,
}

impl ZetaContext {
    pub fn new(q: u64, trunc: usize) -> Result<Self, ZetaError> {
        if prime_power_decompose(q).is_none() {
            return Err(ZetaError::NotPrimePower(q));
        }
        Ok(ZetaContext { q, trunc })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }
}

fn check_spectrum_window(s: &OrbitSpectrum, ctx: &ZetaContext) -> Result<(), ZetaError> {
    if s.base_q() != ctx.q {
        return Err(SpectrumError::BaseMismatch { left: s.base_q(), right: ctx.q }.into());
    }
    if !s.complete() && (ctx.trunc as u64) > s.horizon() {
        return Err(SpectrumError::HorizonExceeded {
            horizon: s.horizon(),
            requested: ctx.trunc as u64,
        }
        .into());
    }
    Ok(())
}

/// `C(b - 1 + j, j)`: the number of degree-`j` monomials in `b` variables,
/// i.e. the `t^j` coefficient of `(1 - t)^{-b}`. Computed by the exact
/// binomial recurrence.
fn multiset_coefficient(b: &BigUint, j: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 1..=j {
        c = c * (b + BigUint::from(i - 1)) / BigUint::from(i);
    }
    c
}

/// Euler-product form of the zeta function:
/// `prod_{k <= D} (1 - t^k)^{-B_k}` truncated at `ctx.trunc()`.
pub fn zeta_euler(s: &OrbitSpectrum, ctx: &ZetaContext) -> Result<TruncSeries, ZetaError> {
    check_spectrum_window(s, ctx)?;
    let d = ctx.trunc;
    let mut z = TruncSeries::one(d);
    for (&k, b) in s.counts() {
        let k = k as usize;
        if k > d {
            break;
        }
        let mut factor = vec![Rational::zero(); d + 1];
        for j in 0..=(d / k) {
            factor[j * k] = Rational::from_integer(to_bigint(&multiset_coefficient(b, j)));
        }
        z = z.mul(&TruncSeries::new(factor));
    }
    Ok(z)
}

/// Exponential form of the zeta function:
/// `exp(sum_{r <= D} N_r t^r / r)` truncated at `ctx.trunc()`.
pub fn zeta_exp(table: &FixedPointTable, ctx: &ZetaContext) -> Result<TruncSeries, ZetaError> {
    if table.base_q() != ctx.q {
        return Err(SpectrumError::BaseMismatch { left: table.base_q(), right: ctx.q }.into());
    }
    let d = ctx.trunc;
    if table.depth() < d as u64 {
        return Err(ZetaError::InsufficientData { needed: d as u64, available: table.depth() });
    }
    let mut arg = vec![Rational::zero(); d + 1];
    for r in 1..=d {
        arg[r] = Rational::new(to_bigint(table.value(r as u64)), BigInt::from(r as u64));
    }
    Ok(TruncSeries::new(arg).exp()?)
}

/// Effective-divisor counts `A_0, ..., A_D` of a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCountTable {
    values: Vec<BigUint>,
}

impl DivisorCountTable {
    pub fn new(values: Vec<BigUint>) -> Self {
        assert!(!values.is_empty(), "a divisor count table starts at A_0");
        DivisorCountTable { values }
    }

    /// Reads the counts off an integral zeta series.
    pub fn from_series(z: &TruncSeries) -> Result<Self, ZetaError> {
        let mut values = Vec::with_capacity(z.trunc_order() + 1);
        for (i, c) in z.coeffs().iter().enumerate() {
            if !c.is_integer() || c.to_integer().sign() == num_bigint::Sign::Minus {
                return Err(ExactError::NonIntegral { index: i, value: c.clone() }.into());
            }
            values.push(c.to_integer().magnitude().clone());
        }
        Ok(Self::new(values))
    }

    /// Highest degree with a recorded count.
    pub fn max_degree(&self) -> usize {
        self.values.len() - 1
    }

    /// `A_m`.
    pub fn value(&self, m: usize) -> &BigUint {
        &self.values[m]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// Counts effective divisors degree by degree by explicit enumeration: one
/// unbounded-knapsack pass per individual orbit, so `A_m` is literally the
/// number of multisets of orbits with total degree `m`. This is the
/// independent oracle for the series identity — it shares no code with the
/// Euler product or the exponential.
///
/// Fails with [`ZetaError::EnumerationTooLarge`] when the orbit
/// multiplicities make the explicit walk unreasonable (beyond ~10^8 steps).
pub fn divisor_counts_bruteforce(
    s: &OrbitSpectrum,
    ctx: &ZetaContext,
) -> Result<DivisorCountTable, ZetaError> {
    check_spectrum_window(s, ctx)?;
    let d = ctx.trunc;
    let mut work: u128 = 0;
    for (&k, b) in s.counts() {
        if (k as usize) > d {
            break;
        }
        let copies = b.to_u128().ok_or(ZetaError::EnumerationTooLarge)?;
        work += copies * ((d - k as usize) / k as usize + 1) as u128;
        if work > 100_000_000 {
            return Err(ZetaError::EnumerationTooLarge);
        }
    }

    let mut dp = vec![BigUint::zero(); d + 1];
    dp[0] = BigUint::one();
    for (&k, b) in s.counts() {
        let k = k as usize;
        if k > d {
            break;
        }
        let copies = b.to_u64().expect("bounded by the work estimate above");
        for _ in 0..copies {
            for m in k..=d {
                let prev = dp[m - k].clone();
                dp[m] += prev;
            }
        }
    }
    Ok(DivisorCountTable::new(dp))
}

/// Quotient of a zeta series by the projective-line factor:
/// `P(t) = Z(t) (1 - t)(1 - q t)`, truncated at the series' own order.
/// Requires `Z(0) = 1`.
pub fn zeta_quotient(z: &TruncSeries, ctx: &ZetaContext) -> Result<TruncSeries, ZetaError> {
    if !z.coeff(0).is_one() {
        return Err(ExactError::BadConstantTerm { found: z.coeff(0).clone(), required: 1 }.into());
    }
    let line_factor =
        IntPoly::new(vec![BigInt::one(), -BigInt::from(ctx.q + 1), BigInt::from(ctx.q)]);
    Ok(z.mul_poly(&line_factor))
}

/// Expands a polynomial quotient back into the zeta series
/// `P(t) / ((1 - t)(1 - q t))`, truncated at `ctx.trunc()`.
pub fn zeta_from_quotient(p: &IntPoly, ctx: &ZetaContext) -> TruncSeries {
    let d = ctx.trunc;
    let ones = TruncSeries::new(vec![Rational::one(); d + 1]);
    let mut powers = Vec::with_capacity(d + 1);
    let mut acc = BigInt::one();
    for _ in 0..=d {
        powers.push(Rational::from_integer(acc.clone()));
        acc *= ctx.q;
    }
    p.as_series(d).mul(&ones).mul(&TruncSeries::new(powers))
}

/// The slope `lambda = log_q |a_d|^(1/d)` of a polynomial quotient, stored
/// exactly as the pair `(|a_d|, d)` with the base `q`, plus a floating-point
/// shadow for display and tolerance comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda {
    q: u64,
    abs_lead: BigUint,
    degree: usize,
}

impl Lambda {
    fn new(q: u64, abs_lead: BigUint, degree: usize) -> Self {
        assert!(q >= 2, "a base field has at least two elements");
        assert!(!abs_lead.is_zero(), "the leading coefficient of a quotient is nonzero");
        Lambda { q, abs_lead, degree }
    }

    /// `|a_d|`, the exact half of the pair.
    pub fn abs_lead(&self) -> &BigUint {
        &self.abs_lead
    }

    /// `d`, the other exact half.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Floating-point shadow of `log_q |a_d|^(1/d)`.
    pub fn value(&self) -> f64 {
        if self.degree == 0 || self.abs_lead.is_one() {
            return 0.0;
        }
        log2_big(&self.abs_lead) / (self.degree as f64 * (self.q as f64).log2())
    }

    /// Exact test of `lambda = num / den`, i.e. `|a_d|^den = q^(num * d)`.
    pub fn equals_fraction(&self, num: u32, den: u32) -> bool {
        assert!(den > 0, "a slope fraction needs a positive denominator");
        if self.degree == 0 {
            return num == 0;
        }
        let lhs = self.abs_lead.pow(den);
        let rhs = BigUint::from(self.q).pow(num * self.degree as u32);
        lhs == rhs
    }

    /// Exact test of `lambda = 0`.
    pub fn is_zero(&self) -> bool {
        self.degree == 0 || self.abs_lead.is_one()
    }

    /// Exact test of `2 lambda` being an integer, i.e. `|a_d|^2 = q^(k d)`
    /// for some integer `k >= 0`. Inverse-root magnitudes of smooth
    /// projective varieties are `q^(w/2)` with integer weight `w`, so a
    /// slope outside half-integers certifies that no such variety produces
    /// the quotient.
    pub fn is_half_integral(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let target = self.abs_lead.pow(2);
        let step = BigUint::from(self.q).pow(self.degree as u32);
        let mut acc = BigUint::one();
        loop {
            if acc == target {
                return true;
            }
            if acc > target {
                return false;
            }
            acc *= &step;
        }
    }
}

/// A zeta quotient certified to be a polynomial, with its slope data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPoly {
    poly: IntPoly,
    q: u64,
    lambda: Lambda,
}

impl QuotientPoly {
    /// Wraps a polynomial with `P(0) = 1` as a quotient over base `q`.
    pub fn new(poly: IntPoly, q: u64) -> Self {
        assert!(poly.constant_term().is_one(), "a zeta quotient has P(0) = 1");
        let lambda = Lambda::new(q, poly.leading().magnitude().clone(), poly.degree());
        QuotientPoly { poly, q, lambda }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }
}

/// Outcome of polynomial detection on a quotient series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detection {
    Polynomial(QuotientPoly),
    /// The trailing window still contains a nonzero coefficient (its index
    /// is reported), so the series does not certify a polynomial quotient.
    NotPolynomial {
        nonzero_at: usize,
    },
}

/// Default trailing-window length for [`detect_polynomial`] at truncation
/// order `d`: a quarter of the window, at least 5.
pub fn default_tail(d: usize) -> usize {
    (d / 4).max(5)
}

/// Decides whether a quotient series is (as far as the truncation shows) a
/// polynomial: if the last `tail` coefficients all vanish, the leading
/// nonzero segment is returned as a [`QuotientPoly`]. The series must have
/// integer coefficients and constant term 1.
pub fn detect_polynomial(
    p: &TruncSeries,
    tail: usize,
    ctx: &ZetaContext,
) -> Result<Detection, ZetaError> {
    assert!(tail >= 1, "the trailing window has at least one coefficient");
    let d = p.trunc_order();
    assert!(tail <= d, "the trailing window fits inside the truncation order");
    if !p.coeff(0).is_one() {
        return Err(ExactError::BadConstantTerm { found: p.coeff(0).clone(), required: 1 }.into());
    }
    let mut coeffs = Vec::with_capacity(d + 1);
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_integer() {
            return Err(ExactError::NonIntegral { index: i, value: c.clone() }.into());
        }
        coeffs.push(c.to_integer());
    }
    for i in (d - tail + 1)..=d {
        if !coeffs[i].is_zero() {
            return Ok(Detection::NotPolynomial { nonzero_at: i });
        }
    }
    Ok(Detection::Polynomial(QuotientPoly::new(IntPoly::new(coeffs), ctx.q)))
}

/// One row of a generic Riemann–Roch-style check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrRow {
    pub n: usize,
    pub expected: BigRational,
    pub actual: BigUint,
    pub pass: bool,
}

/// Report of [`generic_rr_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrReport {
    pub rows: Vec<RrRow>,
    pub all_pass: bool,
}

/// Verifies the closed form the divisor counts of a polynomial quotient
/// must satisfy for `n >= n0`:
///
/// `A_n = (q^(n+1) P(1/q) - P(1)) / (q - 1)`,
///
/// exactly, row by row, up to the depth of the count table.
pub fn generic_rr_check(counts: &DivisorCountTable, qp: &QuotientPoly, n0: usize) -> RrReport {
    let q = Rational::from_integer(BigInt::from(qp.q));
    let p_at_inv_q = qp.poly.eval(&q.recip());
    let p_at_one = qp.poly.eval(&Rational::one());
    let q_minus_one = &q - Rational::one();
    let mut rows = Vec::new();
    let mut q_power = q.clone(); // q^(n+1) for n = 0
    for _ in 0..n0 {
        q_power *= &q;
    }
    for n in n0..=counts.max_degree() {
        let expected = (&q_power * &p_at_inv_q - &p_at_one) / &q_minus_one;
        let actual = counts.value(n).clone();
        let pass = expected.is_integer() && expected.to_integer() == to_bigint(&actual);
        rows.push(RrRow { n, expected, actual, pass });
        q_power *= &q;
    }
    RrReport { all_pass: rows.iter().all(|r| r.pass), rows }
}

/// One row of a power-sum comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumRow {
    pub r: u64,
    /// `(q^r + 1) - N_r`.
    pub lhs: BigInt,
    /// `sum_j w_j^r` from the quotient's inverse roots.
    pub rhs: BigInt,
    pub pass: bool,
}

/// Report of [`power_sum_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumReport {
    pub rows: Vec<PowerSumRow>,
    pub all_pass: bool,
}

/// Verifies `(q^r + 1) - N_r = sum_j w_j^r` for `r = 1..=r_max`, where the
/// `w_j` are the inverse roots of the quotient, via Newton's identities —
/// exact integer arithmetic throughout.
pub fn power_sum_check(
    table: &FixedPointTable,
    qp: &QuotientPoly,
    r_max: u64,
) -> Result<PowerSumReport, ZetaError> {
    if table.base_q() != qp.q {
        return Err(SpectrumError::BaseMismatch { left: table.base_q(), right: qp.q }.into());
    }
    if table.depth() < r_max {
        return Err(ZetaError::InsufficientData { needed: r_max, available: table.depth() });
    }
    let sums = newton_power_sums(&qp.poly, r_max as usize);
    let q = BigInt::from(qp.q);
    let mut rows = Vec::new();
    for r in 1..=r_max {
        let lhs = q.pow(r as u32) + BigInt::one() - to_bigint(table.value(r));
        let rhs = sums.value(r as usize).to_integer();
        rows.push(PowerSumRow { r, pass: lhs == rhs, lhs, rhs });
    }
    Ok(PowerSumReport { all_pass: rows.iter().all(|r| r.pass), rows })
}
