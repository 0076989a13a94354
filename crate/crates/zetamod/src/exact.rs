//! Exact arithmetic building blocks.
//!
//! Everything downstream (zeta series, quotient polynomials, bound checks)
//! is exact rational or integer arithmetic; floating point only ever appears
//! as a display shadow next to an exact value. This module provides:
//!
//! * [`Rational`] — arbitrary-precision rationals, always in lowest terms,
//! * [`TruncSeries`] — power series truncated at a fixed order, with ring
//!   operations plus `inv`, `exp`, `log`,
//! * [`IntPoly`] — integer polynomials with unit constant term in the roles
//!   that matter here (`p(t) = prod (1 - w_j t)`),
//! * Newton's identities in both directions ([`newton_power_sums`],
//!   [`poly_from_power_sums`]) and the induced root-power map [`power_map`],
//! * [`mobius`] and [`divisors`] for inversion over the divisor lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_bigint::BigUint;

/// Arbitrary-precision rational number, kept in lowest terms with a
/// positive denominator by construction.
pub type Rational = BigRational;

/// Errors from exact-arithmetic operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// Multiplicative inverse of a series whose constant term is zero.
    #[error("series inverse requires a nonzero constant term")]
    ZeroConstantTerm,
    /// `exp` needs constant term 0; `log` (and zeta quotients) need 1.
    #[error("constant term {found} violates the operation's requirement of {required}")]
    BadConstantTerm { found: Rational, required: i64 },
    /// Power sums that do not come from any integer polynomial.
    #[error("coefficient a_{index} = {value} is not an integer")]
    NonIntegral { index: usize, value: Rational },
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A power series known only up to (and including) a truncation order.
///
/// The coefficient vector always has length `trunc_order() + 1`; trailing
/// zero coefficients are kept, since they carry the information "known to be
/// zero up to this order".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Series from explicit coefficients `c_0, ..., c_D`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least a constant term");
        TruncSeries { coeffs }
    }

    /// Series with integer coefficients `c_0, ..., c_D`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order + 1])
    }

    /// The constant series 1 truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        Self::new(coeffs)
    }

    /// Highest order up to which coefficients are known.
    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^i`. Panics beyond the truncation order.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// All known coefficients, `c_0` first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The same series truncated at a lower (or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.trunc_order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=order].to_vec())
    }

    /// Whether every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Sum, truncated at the shorter of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.trunc_order().min(other.trunc_order());
        Self::new((0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    /// Difference, truncated at the shorter of the two orders.
    pub fn sub(&self, other: &Self) -> Self {
        let order = self.trunc_order().min(other.trunc_order());
        Self::new((0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect())
    }

    /// Cauchy product, truncated at the shorter of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.trunc_order().min(other.trunc_order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Multiplicative inverse `b` with `self * b = 1` up to the truncation
    /// order, by the standard recurrence
    /// `b_m = -(sum_{i=1..=m} a_i b_{m-i}) / a_0`.
    pub fn inv(&self) -> Result<Self, ExactError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(ExactError::ZeroConstantTerm);
        }
        let order = self.trunc_order();
        let mut b = vec![Rational::zero(); order + 1];
        b[0] = a0.recip();
        for m in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &b[m - i];
                }
            }
            b[m] = -acc / a0;
        }
        Ok(Self::new(b))
    }

    /// Formal exponential of a series with zero constant term, via the
    /// derivative recurrence `m f_m = sum_{i=1..=m} i g_i f_{m-i}`.
    pub fn exp(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_zero() {
            return Err(ExactError::BadConstantTerm { found: self.coeffs[0].clone(), required: 0 });
        }
        let order = self.trunc_order();
        let mut f = vec![Rational::zero(); order + 1];
        f[0] = Rational::one();
        for m in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += rat(i as i64) * &self.coeffs[i] * &f[m - i];
                }
            }
            f[m] = acc / rat(m as i64);
        }
        Ok(Self::new(f))
    }

    /// Formal logarithm of a series with constant term 1, inverting the
    /// `exp` recurrence: `g_m = f_m - (1/m) sum_{i=1..m-1} i g_i f_{m-i}`.
    pub fn log(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_one() {
            return Err(ExactError::BadConstantTerm { found: self.coeffs[0].clone(), required: 1 });
        }
        let order = self.trunc_order();
        let mut g = vec![Rational::zero(); order + 1];
        for m in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..m {
                if !g[i].is_zero() && !self.coeffs[m - i].is_zero() {
                    acc += rat(i as i64) * &g[i] * &self.coeffs[m - i];
                }
            }
            g[m] = &self.coeffs[m] - acc / rat(m as i64);
        }
        Ok(Self::new(g))
    }

    /// Product with an integer polynomial, truncated at this series' order.
    pub fn mul_poly(&self, p: &IntPoly) -> Self {
        let order = self.trunc_order();
        let mut out = vec![Rational::zero(); order + 1];
        for (j, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() || j > order {
                continue;
            }
            let cr = Rational::from_integer(c.clone());
            for i in 0..=(order - j) {
                if !self.coeffs[i].is_zero() {
                    out[i + j] += &cr * &self.coeffs[i];
                }
            }
        }
        Self::new(out)
    }
}

/// Integer polynomial `a_0 + a_1 t + ... + a_d t^d` with trailing zeros
/// stripped, so `a_d != 0` unless the polynomial is a constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Polynomial from coefficients, lowest degree first.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPoly { coeffs }
    }

    /// Polynomial from machine-integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty by construction")
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// The polynomial viewed as a truncated series of the given order.
    pub fn as_series(&self, order: usize) -> TruncSeries {
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate().take(order + 1) {
            coeffs[i] = Rational::from_integer(c.clone());
        }
        TruncSeries::new(coeffs)
    }
}

/// Power sums `S_1, ..., S_R` of the inverse roots of an [`IntPoly`].
///
/// Stored as rationals so that [`poly_from_power_sums`] can report a
/// non-integral reconstruction instead of silently rounding; tables sourced
/// from `newton_power_sums` are always integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumTable {
    values: Vec<Rational>,
}

impl PowerSumTable {
    pub fn new(values: Vec<Rational>) -> Self {
        PowerSumTable { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| rat(v)).collect())
    }

    /// Number of available power sums.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `S_r` (1-indexed, like the mathematical notation).
    pub fn value(&self, r: usize) -> &Rational {
        &self.values[r - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Power sums `S_r = sum_j w_j^r` of the inverse roots of
/// `p(t) = prod_j (1 - w_j t)`, for `r = 1..=count`, by Newton's identities:
/// `S_r = -(r a_r + sum_{i=1..r-1} a_i S_{r-i})` while `r <= d`, and the
/// purely recurrent tail `S_r = -sum_{i=1..=d} a_i S_{r-i}` beyond.
///
/// Requires `p(0) = 1`; all arithmetic stays in integers.
pub fn newton_power_sums(p: &IntPoly, count: usize) -> PowerSumTable {
    assert!(p.constant_term().is_one(), "power sums need a polynomial with p(0) = 1");
    let d = p.degree();
    let mut s: Vec<BigInt> = Vec::with_capacity(count);
    for r in 1..=count {
        let mut acc = BigInt::zero();
        for i in 1..=d.min(r.saturating_sub(1)) {
            acc += p.coeff(i) * &s[r - 1 - i];
        }
        if r <= d {
            acc += BigInt::from(r as u64) * p.coeff(r);
        }
        s.push(-acc);
    }
    PowerSumTable::new(s.into_iter().map(Rational::from_integer).collect())
}

/// Reconstructs `p(t) = prod (1 - w_j t)` of declared degree `d` from the
/// power sums `S_1, ..., S_d` by inverting Newton's identities:
/// `a_r = -(S_r + sum_{i=1..r-1} a_i S_{r-i}) / r`.
///
/// Fails with [`ExactError::NonIntegral`] when some `a_r` is not an integer,
/// i.e. when the table does not come from an integer polynomial. Trailing
/// zero coefficients are stripped, so the result reports the actual degree.
pub fn poly_from_power_sums(s: &PowerSumTable, d: usize) -> Result<IntPoly, ExactError> {
    assert!(s.len() >= d, "need at least d power sums to reconstruct degree d");
    let mut a: Vec<Rational> = vec![Rational::one()];
    for r in 1..=d {
        let mut acc = s.value(r).clone();
        for i in 1..r {
            acc += &a[i] * s.value(r - i);
        }
        let coeff = -acc / rat(r as i64);
        if !coeff.is_integer() {
            return Err(ExactError::NonIntegral { index: r, value: coeff });
        }
        a.push(coeff);
    }
    Ok(IntPoly::new(a.into_iter().map(|c| c.to_integer()).collect()))
}

/// The polynomial whose inverse roots are the `r`-th powers of the inverse
/// roots of `p`: computed exactly by reading off `S'_k = S_{rk}` and
/// reconstructing. Degree is preserved (no inverse root is zero).
pub fn power_map(p: &IntPoly, r: usize) -> IntPoly {
    assert!(r >= 1, "power_map needs r >= 1");
    let d = p.degree();
    if d == 0 {
        return IntPoly::one();
    }
    let s = newton_power_sums(p, r * d);
    let powered = PowerSumTable::new((1..=d).map(|k| s.value(r * k).clone()).collect());
    poly_from_power_sums(&powered, d)
        .expect("powers of algebraic-integer root multisets have integer symmetric functions")
}

/// Möbius function of `n >= 1`.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut factors = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors of `n >= 1`, in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors are defined for n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Approximate base-2 logarithm of an arbitrary-size positive integer.
pub fn log2_big(x: &BigUint) -> f64 {
    use num_traits::ToPrimitive;
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in 53 bits").log2();
    }
    let shifted = x >> (bits - 53);
    shifted.to_f64().expect("fits in 53 bits").log2() + (bits - 53) as f64
}

/// Conversion helper: a `BigUint` as a signed `BigInt`.
pub fn to_bigint(u: &BigUint) -> BigInt {
    BigInt::from(u.clone())
}

/// Conversion helper: a non-negative `BigInt` as a `BigUint`.
/// Panics on negative input, which callers rule out beforehand.
pub fn to_biguint(i: &BigInt) -> BigUint {
    assert!(!i.is_negative(), "expected a non-negative integer, got {i}");
    i.magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_of_quadratic_matches_hand_recurrence() {
        // Independent oracle: b0 = 1, b1 = -a1, b2 = a1^2 - a2 for a0 = 1.
        let s = TruncSeries::from_ints(&[1, 3, 5]);
        let inv = s.inv().unwrap();
        assert_eq!(inv, TruncSeries::from_ints(&[1, -3, 4]));
        // Multiply-back oracle.
        assert_eq!(s.mul(&inv), TruncSeries::one(2));
    }

    #[test]
    fn inverse_with_rational_leading_constant() {
        let s = TruncSeries::new(vec![rat(2), rat(1), rat(0)]);
        let inv = s.inv().unwrap();
        assert_eq!(inv.coeffs(), &[ratio(1, 2), ratio(-1, 4), ratio(1, 8)]);
    }

    #[test]
    fn inverse_requires_nonzero_constant() {
        let s = TruncSeries::from_ints(&[0, 1]);
        assert_eq!(s.inv(), Err(ExactError::ZeroConstantTerm));
    }

    #[test]
    fn product_truncates_to_shorter_operand() {
        let a = TruncSeries::from_ints(&[1, 1, 1, 1, 1]);
        let b = TruncSeries::from_ints(&[1, 2]);
        assert_eq!(a.mul(&b).trunc_order(), 1);
        assert_eq!(a.mul(&b), TruncSeries::from_ints(&[1, 3]));
    }

    #[test]
    fn log_of_geometric_factor_is_harmonic() {
        let s = TruncSeries::from_ints(&[1, -1, 0, 0, 0]);
        let lg = s.log().unwrap();
        assert_eq!(lg.coeffs(), &[rat(0), rat(-1), ratio(-1, 2), ratio(-1, 3), ratio(-1, 4)]);
    }

    #[test]
    fn exp_rejects_nonzero_constant_and_log_rejects_nonunit() {
        let s = TruncSeries::from_ints(&[1, 1]);
        assert!(matches!(s.exp(), Err(ExactError::BadConstantTerm { required: 0, .. })));
        let s = TruncSeries::from_ints(&[2, 1]);
        assert!(matches!(s.log(), Err(ExactError::BadConstantTerm { required: 1, .. })));
    }

    #[test]
    fn power_sums_of_quadratic_match_symmetric_function_oracle() {
        // Oracle: S1 = -a1, S2 = a1^2 - 2 a2, computed by hand.
        let p = IntPoly::from_ints(&[1, 3, 5]);
        let s = newton_power_sums(&p, 2);
        assert_eq!(s.values(), &[rat(-3), rat(-1)]);
    }

    #[test]
    fn power_sums_past_the_degree_use_the_recurrent_tail() {
        let p = IntPoly::from_ints(&[1, -1]); // single inverse root 1
        let s = newton_power_sums(&p, 5);
        assert_eq!(s.values(), &vec![rat(1); 5][..]);

        let p = IntPoly::from_ints(&[1, -4, 4]); // double inverse root 2
        let s = newton_power_sums(&p, 4);
        assert_eq!(s.values(), &[rat(4), rat(8), rat(16), rat(32)]);
    }

    #[test]
    fn reconstruction_inverts_power_sums() {
        let s = PowerSumTable::from_ints(&[-3, -1]);
        assert_eq!(poly_from_power_sums(&s, 2).unwrap(), IntPoly::from_ints(&[1, 3, 5]));
    }

    #[test]
    fn reconstruction_detects_non_integral_tables() {
        let s = PowerSumTable::new(vec![ratio(1, 2)]);
        assert_eq!(
            poly_from_power_sums(&s, 1),
            Err(ExactError::NonIntegral { index: 1, value: ratio(-1, 2) })
        );
    }

    #[test]
    fn reconstruction_reports_the_actual_degree() {
        let s = PowerSumTable::from_ints(&[0, 0]);
        let p = poly_from_power_sums(&s, 2).unwrap();
        assert_eq!(p, IntPoly::one());
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn power_map_squares_inverse_roots() {
        // w1 + w2 = -3 and w1 w2 = 5, so w1^2 + w2^2 = 9 - 10 = -1 and the
        // squared-root polynomial is 1 - (-1) t + 25 t^2.
        let p = IntPoly::from_ints(&[1, 3, 5]);
        assert_eq!(power_map(&p, 2), IntPoly::from_ints(&[1, 1, 25]));
        assert_eq!(power_map(&IntPoly::from_ints(&[1, -2]), 3), IntPoly::from_ints(&[1, -8]));
    }

    #[test]
    fn power_map_matches_split_product_oracle() {
        // Oracle: for p = (1 - a t)(1 - b t) the r-th power map is
        // (1 - a^r t)(1 - b^r t), multiplied out by hand.
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if a == 0 || b == 0 {
                    continue;
                }
                let p = IntPoly::from_ints(&[1, -a]).mul(&IntPoly::from_ints(&[1, -b]));
                for r in 1..=4usize {
                    let (ar, br) = (a.pow(r as u32), b.pow(r as u32));
                    let expect = IntPoly::from_ints(&[1, -ar]).mul(&IntPoly::from_ints(&[1, -br]));
                    assert_eq!(power_map(&p, r), expect, "a={a} b={b} r={r}");
                }
            }
        }
    }

    #[test]
    fn mobius_small_values_and_divisor_sums() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (i, &m) in expect.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), m);
        }
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        for n in 1..=2000u64 {
            let total: i64 = divisors(n).iter().map(|&d| mobius(d)).sum();
            assert_eq!(total, i64::from(n == 1), "sum of mobius over divisors of {n}");
        }
    }

    #[test]
    fn divisors_are_sorted_and_complete() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    fn small_int_series(order: usize) -> impl Strategy<Value = TruncSeries> {
        proptest::collection::vec(-9i64..=9, order + 1).prop_map(|mut v| {
            v[0] = 0;
            TruncSeries::from_ints(&v)
        })
    }

    fn small_unit_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-9i64..=9, 1..=12).prop_map(|v| {
            let mut coeffs = vec![1];
            coeffs.extend(v);
            IntPoly::from_ints(&coeffs)
        })
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(g in small_int_series(8)) {
            let f = g.exp().unwrap();
            prop_assert_eq!(f.log().unwrap(), g);
        }

        #[test]
        fn mul_inv_round_trip(g in small_int_series(8)) {
            let mut f = g;
            f.coeffs[0] = rat(1);
            let inv = f.inv().unwrap();
            prop_assert_eq!(f.mul(&inv), TruncSeries::one(8));
            // A unit constant term keeps the inverse integral.
            prop_assert!(inv.is_integral());
        }

        #[test]
        fn newton_round_trip(p in small_unit_poly()) {
            let d = p.degree();
            let s = newton_power_sums(&p, d.max(1));
            prop_assert_eq!(poly_from_power_sums(&s, d).unwrap(), p);
        }

        #[test]
        fn power_map_is_multiplicative_in_the_exponent(p in small_unit_poly(), r in 1usize..=3, s in 1usize..=3) {
            prop_assert_eq!(power_map(&power_map(&p, r), s), power_map(&p, r * s));
        }

        #[test]
        fn power_map_at_one_is_identity(p in small_unit_poly()) {
            prop_assert_eq!(power_map(&p, 1), p);
        }
    }
}
