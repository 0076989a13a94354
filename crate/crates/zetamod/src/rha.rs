//! The Riemann-hypothesis analogue for polynomial zeta quotients.
//!
//! A polynomial quotient `P(t) = prod_j (1 - w_j t)` of degree `d >= 1` over
//! base `q` satisfies the analogue when every inverse root has the same
//! magnitude `|w_j| = q^lambda` with `lambda = log_q |a_d|^(1/d)`. The checks
//! here come in two flavours and are kept strictly apart:
//!
//! * **exact** — integer identities that are necessary for the analogue
//!   (functional equation, inverse-root product) or equivalent to it on
//!   fixed-point data (the two-sided bounds of [`rha_bounds_check`], made
//!   exact by comparing `d`-th powers instead of real `d`-th roots);
//! * **numeric** — root magnitudes from the high-precision finder in
//!   [`numeric`], compared against `q^lambda` at a caller tolerance.
//!
//! A [`Verdict`] is `Holds` only when the numeric magnitudes agree within
//! tolerance *and* every exact necessary check passes; it is `Fails` when an
//! exact check fails or a magnitude is far off (beyond ten times the
//! tolerance); the strip in between is reported as `Inconclusive` rather
//! than decided by noise.

pub mod numeric;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{log2_big, power_map, to_bigint, to_biguint};
use crate::spectrum::FixedPointTable;
use crate::zeta::{Lambda, QuotientPoly};
use numeric::Fixed;

/// Default relative tolerance for comparing root magnitudes to `q^lambda`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Errors from order estimation and other data-driven entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RhaError {
    #[error("the sample range r = 1..={0} is empty")]
    EmptyRange(u64),
    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u64, right: u64 },
    #[error("fixed-point table has depth {available}, need {needed}")]
    InsufficientData { needed: u64, available: u64 },
}

/// Outcome of an analogue check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

/// One named pass/fail within a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: &'static str,
    pub pass: bool,
}

/// Full result of [`rha_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct RhaReport {
    pub verdict: Verdict,
    /// Inverse-root magnitudes `|w_j|`, ascending.
    pub root_magnitudes: Vec<f64>,
    pub lambda: Lambda,
    /// Largest relative deviation `||w_j| - q^lambda| / q^lambda`.
    pub max_deviation: f64,
    pub checks: Vec<NamedCheck>,
    pub warnings: Vec<String>,
}

/// Checks the analogue for a polynomial quotient at a relative tolerance.
///
/// Degree 0 is vacuously `Holds` (there are no inverse roots to bound); a
/// leading coefficient of absolute value 1 is legitimate but degenerate
/// (slope zero) and is flagged with a warning.
pub fn rha_check(qp: &QuotientPoly, tol: f64) -> RhaReport {
    assert!(tol > 0.0, "tolerance must be positive");
    let d = qp.degree();
    let lambda = qp.lambda().clone();
    let mut warnings = Vec::new();
    let mut checks = Vec::new();

    if d == 0 {
        warnings.push("degree 0: the analogue is vacuous".to_string());
        return RhaReport {
            verdict: Verdict::Holds,
            root_magnitudes: Vec::new(),
            lambda,
            max_deviation: 0.0,
            checks,
            warnings,
        };
    }
    if lambda.is_zero() {
        warnings.push(
            "leading coefficient of absolute value 1: slope 0 lies outside the \
             main comparison theorems, though the magnitude check still applies"
                .to_string(),
        );
    } else if !lambda.is_half_integral() {
        warnings.push(
            "slope is not a half-integer: no smooth projective variety has a \
             zeta quotient with this leading growth"
                .to_string(),
        );
    }

    // Exact necessary conditions first. The inverse-root product compares
    // |lead(power_map(P, 2))| with a_d^2 — equality says the squared roots
    // still multiply up to the squared leading coefficient, a self-test of
    // the symmetric-function route the other exact checks ride on.
    let squared = power_map(qp.poly(), 2);
    let lead = qp.poly().leading();
    let product_pass = squared.leading().magnitude() == (lead * lead).magnitude();
    checks.push(NamedCheck { name: "inverse-root-product", pass: product_pass });
    let fe = functional_equation_check(qp);
    checks.push(NamedCheck { name: "functional-equation", pass: fe.all_pass });
    let exact_fail = !product_pass || !fe.all_pass;

    // Numeric magnitudes against q^lambda = |a_d|^(1/d).
    let target = Fixed::from_bigint(&to_bigint(lambda.abs_lead())).nth_root(d as u32);
    match numeric::roots(qp.poly().coeffs()) {
        Err(fail) => {
            warnings.push(format!(
                "root finder stopped after {} iterations at residual {:.2e}",
                fail.iterations, fail.worst_residual
            ));
            RhaReport {
                verdict: if exact_fail { Verdict::Fails } else { Verdict::Inconclusive },
                root_magnitudes: Vec::new(),
                lambda,
                max_deviation: f64::INFINITY,
                checks,
                warnings,
            }
        }
        Ok(roots) => {
            let one = Fixed::from_i64(1);
            let mags: Vec<Fixed> = roots.iter().map(|z| one.div(&z.abs())).collect();
            let max_dev = mags
                .iter()
                .map(|m| m.sub(&target).abs().div(&target).to_f64())
                .fold(0.0f64, f64::max);

            // Numeric/exact consistency: the product of the magnitudes
            // must reproduce |a_d| to within d * tol, or the numeric side
            // cannot be trusted at this tolerance.
            let mut product = one.clone();
            for m in &mags {
                product = product.mul(m);
            }
            let abs_lead = Fixed::from_bigint(&to_bigint(lambda.abs_lead()));
            let product_dev = product.sub(&abs_lead).abs().div(&abs_lead).to_f64();
            let consistent = product_dev <= d as f64 * tol;
            checks.push(NamedCheck { name: "numeric-product-consistency", pass: consistent });

            let verdict = if exact_fail || max_dev > 10.0 * tol {
                Verdict::Fails
            } else if !consistent {
                warnings.push(format!(
                    "numeric root product off by {product_dev:.2e}; magnitudes not trusted"
                ));
                Verdict::Inconclusive
            } else if max_dev <= tol {
                Verdict::Holds
            } else {
                Verdict::Inconclusive
            };

            let mut root_magnitudes: Vec<f64> = mags.iter().map(Fixed::to_f64).collect();
            root_magnitudes.sort_by(f64::total_cmp);
            RhaReport { verdict, root_magnitudes, lambda, max_deviation: max_dev, checks, warnings }
        }
    }
}

/// One row of the two-sided bound check.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub r: u64,
    /// `|q^r + 1 - N_r|`.
    pub deviation: BigUint,
    /// Floating shadow of the allowance `d * q^(lambda r)`.
    pub allowance: f64,
    pub pass: bool,
}

/// Report of [`rha_bounds_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub rows: Vec<BoundsRow>,
    pub all_pass: bool,
    pub first_violation: Option<u64>,
}

/// Verifies the magnitude bounds the analogue is equivalent to on
/// fixed-point data:
///
/// `q^r + 1 - d q^(lambda r) <= N_r <= q^r + 1 + d q^(lambda r)`.
///
/// The comparison is exact for every `r`: with `D = |q^r + 1 - N_r|`, the
/// bound `D <= d q^(lambda r) = d |a_d|^(r/d)` holds iff
/// `D^d <= d^d |a_d|^r`, and both sides of that are integers. No interval
/// arithmetic or rounding enters.
pub fn rha_bounds_check(
    table: &FixedPointTable,
    qp: &QuotientPoly,
) -> Result<BoundsReport, RhaError> {
    if table.base_q() != qp.q() {
        return Err(RhaError::BaseMismatch { left: table.base_q(), right: qp.q() });
    }
    let d = qp.degree() as u32;
    let abs_lead = qp.lambda().abs_lead().clone();
    let q = BigInt::from(qp.q());
    let lambda_f = qp.lambda().value();
    let mut rows = Vec::new();
    for r in 1..=table.depth() {
        let deviation =
            to_biguint(&(q.pow(r as u32) + BigInt::one() - to_bigint(table.value(r))).abs());
        let pass = if d == 0 {
            deviation.is_zero()
        } else {
            deviation.pow(d) <= BigUint::from(d).pow(d) * abs_lead.pow(r as u32)
        };
        let allowance = if d == 0 {
            0.0
        } else {
            d as f64 * (lambda_f * r as f64 * (qp.q() as f64).ln()).exp()
        };
        rows.push(BoundsRow { r, deviation, allowance, pass });
    }
    let first_violation = rows.iter().find(|row| !row.pass).map(|row| row.r);
    Ok(BoundsReport { all_pass: first_violation.is_none(), rows, first_violation })
}

/// One coefficient row of the functional-equation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeRow {
    pub j: usize,
    pub pass: bool,
}

/// Report of [`functional_equation_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeReport {
    pub rows: Vec<FeRow>,
    pub all_pass: bool,
}

/// Exact verification of the coefficient form of the functional equation
///
/// `a_j = sign(a_d) * a_{d-j} * q^(lambda (2j - d))`,
///
/// equivalent (for `j <= d/2`, with `X = q^lambda = |a_d|^(1/d)`) to
/// `a_j X^(d-2j) = sign(a_d) a_{d-j}`. Each row is decided by integer
/// comparisons only: both coefficients vanish together, their signs match
/// through `sign(a_d)`, and `|a_j|^d |a_d|^(d-2j) = |a_{d-j}|^d`. Rows
/// past `d/2` mirror their partner.
pub fn functional_equation_check(qp: &QuotientPoly) -> FeReport {
    let d = qp.degree();
    let abs_lead = qp.lambda().abs_lead();
    let lead_negative = qp.poly().leading().is_negative();
    let mut half: Vec<bool> = Vec::new();
    for j in 0..=d / 2 {
        let a_j = qp.poly().coeff(j);
        let a_mirror = qp.poly().coeff(d - j);
        let pass = if a_j.is_zero() || a_mirror.is_zero() {
            a_j.is_zero() && a_mirror.is_zero()
        } else {
            let sign_ok = (a_j.is_negative() == a_mirror.is_negative()) != lead_negative;
            let lhs = a_j.magnitude().pow(d as u32) * abs_lead.pow((d - 2 * j) as u32);
            let rhs = a_mirror.magnitude().pow(d as u32);
            sign_ok && lhs == rhs
        };
        half.push(pass);
    }
    let rows: Vec<FeRow> = (0..=d).map(|j| FeRow { j, pass: half[j.min(d - j)] }).collect();
    FeReport { all_pass: rows.iter().all(|row| row.pass), rows }
}

/// Report of [`restriction_equivalence_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionReport {
    pub restricted: QuotientPoly,
    pub base: RhaReport,
    pub after: RhaReport,
    /// The two verdicts agree (the analogue transfers along restriction).
    pub verdicts_match: bool,
    /// Exact-pair check that the slope is preserved: `|a'_d| = |a_d|^r`
    /// with the degree unchanged.
    pub lambda_consistent: bool,
}

/// Checks that the analogue is equivalent before and after restricting the
/// acting group to its index-`r` subgroup: the quotient becomes
/// `power_map(P, r)` over base `q^r`, the verdicts must coincide, and the
/// slope is unchanged as an exact pair.
pub fn restriction_equivalence_check(qp: &QuotientPoly, r: u32, tol: f64) -> RestrictionReport {
    assert!(r >= 1, "restriction index starts at 1");
    let restricted_base = qp.q().checked_pow(r).expect("restricted base field size overflows u64");
    let restricted = QuotientPoly::new(power_map(qp.poly(), r as usize), restricted_base);
    let base = rha_check(qp, tol);
    let after = rha_check(&restricted, tol);
    let lambda_consistent = restricted.degree() == qp.degree()
        && *restricted.lambda().abs_lead() == qp.lambda().abs_lead().pow(r);
    RestrictionReport {
        verdicts_match: base.verdict == after.verdict,
        restricted,
        base,
        after,
        lambda_consistent,
    }
}

/// Choice of the fiber-count normaliser `rhs(r)` in
/// [`estimate_covering_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberRule {
    /// `rhs(r) = q^r`: the number of Frobenius-graph fiber intersections
    /// over the base line. The default.
    BasePower,
    /// `rhs(r) = N_r` of the target module itself.
    TargetPoints,
}

/// One sample of the order estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderSample {
    pub r: u64,
    /// `N_r(source) - N_r(target)`.
    pub lhs: BigInt,
    /// The normaliser `rhs(r)`.
    pub rhs: BigUint,
    /// `lhs / rhs^lambda`.
    pub ratio: f64,
}

/// Report of [`estimate_covering_order`].
#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    pub lambda: f64,
    pub samples: Vec<OrderSample>,
    /// Smallest constant `C >= 0` with `lhs(r) <= C * rhs(r)^lambda` over
    /// the sampled range.
    pub min_c: f64,
}

/// Empirically estimates the constant in a covering-order bound of exponent
/// `lambda`: for each `r` the excess of source points over target points is
/// compared against `rhs(r)^lambda`, and `min_c` is the largest ratio seen
/// (clamped at zero). Purely data-driven — no claim beyond the sampled
/// range.
pub fn estimate_covering_order(
    target: &FixedPointTable,
    source: &FixedPointTable,
    lambda: f64,
    r_max: u64,
    rule: FiberRule,
) -> Result<OrderEstimate, RhaError> {
    if r_max == 0 {
        return Err(RhaError::EmptyRange(r_max));
    }
    if target.base_q() != source.base_q() {
        return Err(RhaError::BaseMismatch { left: target.base_q(), right: source.base_q() });
    }
    for table in [target, source] {
        if table.depth() < r_max {
            return Err(RhaError::InsufficientData { needed: r_max, available: table.depth() });
        }
    }
    let mut samples = Vec::new();
    for r in 1..=r_max {
        let lhs = to_bigint(source.value(r)) - to_bigint(target.value(r));
        let rhs = match rule {
            FiberRule::BasePower => BigUint::from(target.base_q()).pow(r as u32),
            FiberRule::TargetPoints => target.value(r).clone(),
        };
        let ratio = if lhs.is_zero() || rhs.is_zero() {
            0.0
        } else {
            let log2_ratio = log2_big(lhs.magnitude()) - lambda * log2_big(&rhs);
            let magnitude = log2_ratio.exp2();
            if lhs.is_negative() {
                -magnitude
            } else {
                magnitude
            }
        };
        samples.push(OrderSample { r, lhs, rhs, ratio });
    }
    let min_c = samples.iter().map(|s| s.ratio).fold(0.0f64, f64::max);
    Ok(OrderEstimate { lambda, samples, min_c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPoly;

    fn qp(coeffs: &[i64], q: u64) -> QuotientPoly {
        QuotientPoly::new(IntPoly::from_ints(coeffs), q)
    }

    #[test]
    fn holds_for_an_elliptic_quotient() {
        let report = rha_check(&qp(&[1, 3, 5], 5), DEFAULT_TOL);
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.lambda.equals_fraction(1, 2));
        assert!(report.max_deviation < 1e-9);
        let expect = 5f64.sqrt();
        for m in &report.root_magnitudes {
            assert!((m - expect).abs() < 1e-9);
        }
        assert!(report.checks.iter().all(|c| c.pass));
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn fails_for_a_split_quadratic_with_unequal_roots() {
        // (1 - t)(1 - 4t): inverse roots 1 and 4 against q^lambda = 2.
        let report = rha_check(&qp(&[1, -5, 4], 2), DEFAULT_TOL);
        assert_eq!(report.verdict, Verdict::Fails);
        assert!(report.max_deviation > 0.4);
        // The functional equation alone cannot see this failure: {1, 4} is
        // carried to itself by w -> q^(2 lambda) / w.
        let fe = report.checks.iter().find(|c| c.name == "functional-equation").unwrap();
        assert!(fe.pass);
    }

    #[test]
    fn holds_through_a_triple_root() {
        let report = rha_check(&qp(&[1, -6, 12, -8], 8), DEFAULT_TOL);
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.lambda.equals_fraction(1, 3));
        for m in &report.root_magnitudes {
            assert!((m - 2.0).abs() < 1e-8);
        }
        // Slope 1/3 rules out any smooth projective origin, and the report
        // says so without downgrading the verdict.
        assert!(report.warnings.iter().any(|w| w.contains("not a half-integer")));
    }

    #[test]
    fn non_projective_slopes_are_flagged_but_integral_ones_are_not() {
        // (1 - 2t)^2 over base 8: the quotient of the non-projective module
        // with m = 3, d = 2. Holds with lambda = 1/3.
        let report = rha_check(&qp(&[1, -4, 4], 8), DEFAULT_TOL);
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.lambda.equals_fraction(1, 3));
        assert!(report.warnings.iter().any(|w| w.contains("not a half-integer")));

        // Weight-2 slope (lambda = 1) is a legitimate projective slope.
        let clean = rha_check(&qp(&[1, -2], 2), DEFAULT_TOL);
        assert_eq!(clean.verdict, Verdict::Holds);
        assert!(clean.warnings.is_empty());
    }

    #[test]
    fn degree_zero_is_vacuously_fine() {
        let report = rha_check(&qp(&[1], 3), DEFAULT_TOL);
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.root_magnitudes.is_empty());
        assert_eq!(report.max_deviation, 0.0);
        assert!(!report.warnings.is_empty());
    }

    #[test]
    fn unit_leading_coefficient_warns_but_still_measures() {
        // 1 - t^2 = (1 - t)(1 + t): magnitudes 1 = q^0 on the nose.
        let report = rha_check(&qp(&[1, 0, -1], 2), DEFAULT_TOL);
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.lambda.is_zero());
        assert!(report.warnings.iter().any(|w| w.contains("slope 0")));
    }

    #[test]
    fn functional_equation_rows_localise_the_defect() {
        // (1 - t)(1 - 2t)^2 = 1 - 5t + 8t^2 - 4t^3 has magnitude mismatch
        // at the inner coefficient pair.
        let report = functional_equation_check(&qp(&[1, -5, 8, -4], 2));
        assert!(!report.all_pass);
        let passes: Vec<bool> = report.rows.iter().map(|r| r.pass).collect();
        assert_eq!(passes, vec![true, false, false, true]);
    }

    #[test]
    fn functional_equation_detects_a_sign_defect() {
        // (1 - t)(1 + 4t) = 1 + 3t - 4t^2: j = 1 requires a_1 = -a_1.
        let report = functional_equation_check(&qp(&[1, 3, -4], 2));
        assert!(!report.all_pass);
        let passes: Vec<bool> = report.rows.iter().map(|r| r.pass).collect();
        assert_eq!(passes, vec![true, false, true]);
    }

    #[test]
    fn functional_equation_holds_for_the_elliptic_quotient() {
        let report = functional_equation_check(&qp(&[1, 3, 5], 5));
        assert!(report.all_pass);
        assert_eq!(report.rows.len(), 3);
    }

    #[test]
    fn bounds_hold_for_true_counts_and_fail_for_perturbed_ones() {
        let quotient = qp(&[1, 3, 5], 5);
        let table = FixedPointTable::from_u64s(5, &[9, 27]);
        let report = rha_bounds_check(&table, &quotient).unwrap();
        assert!(report.all_pass);
        assert_eq!(report.first_violation, None);

        // Push N_1 out by twice the allowance ceiling: 2 * ceil(2 sqrt 5).
        let skewed = FixedPointTable::from_u64s(5, &[9 + 10, 27]);
        let report = rha_bounds_check(&skewed, &quotient).unwrap();
        assert!(!report.all_pass);
        assert_eq!(report.first_violation, Some(1));
        assert!(report.rows[1].pass);
    }

    #[test]
    fn bounds_fail_for_a_module_violating_the_analogue() {
        // N_r = 8^r - 4^r is realizable over base 8 and has quotient
        // (1 - t)(1 - 4t); its deviation 4^r + 1 outruns 2 * 8^(r/3).
        let quotient = qp(&[1, -5, 4], 8);
        assert_eq!(rha_check(&quotient, DEFAULT_TOL).verdict, Verdict::Fails);
        let values: Vec<u64> = (1..=6u32).map(|r| 8u64.pow(r) - 4u64.pow(r)).collect();
        let table = FixedPointTable::from_u64s(8, &values);
        let report = rha_bounds_check(&table, &quotient).unwrap();
        assert!(!report.all_pass);
        assert_eq!(report.first_violation, Some(1));
    }

    #[test]
    fn degree_zero_bounds_require_exact_projective_counts() {
        let quotient = qp(&[1], 2);
        let exact_counts = FixedPointTable::from_u64s(2, &[3, 5, 9]);
        assert!(rha_bounds_check(&exact_counts, &quotient).unwrap().all_pass);
        let skewed = FixedPointTable::from_u64s(2, &[4, 5, 9]);
        assert!(!rha_bounds_check(&skewed, &quotient).unwrap().all_pass);
    }

    #[test]
    fn restriction_preserves_verdict_and_slope() {
        let report = restriction_equivalence_check(&qp(&[1, 3, 5], 5), 2, DEFAULT_TOL);
        assert_eq!(report.restricted.poly(), &IntPoly::from_ints(&[1, 1, 25]));
        assert_eq!(report.restricted.q(), 25);
        assert!(report.verdicts_match);
        assert!(report.lambda_consistent);
        assert_eq!(report.base.verdict, Verdict::Holds);
        assert_eq!(report.after.verdict, Verdict::Holds);
        assert!(report.after.lambda.equals_fraction(1, 2));
    }

    #[test]
    fn restriction_carries_a_failure_along() {
        let report = restriction_equivalence_check(&qp(&[1, -5, 4], 2), 3, DEFAULT_TOL);
        assert_eq!(report.base.verdict, Verdict::Fails);
        assert_eq!(report.after.verdict, Verdict::Fails);
        assert!(report.verdicts_match);
        assert!(report.lambda_consistent);
    }

    #[test]
    fn covering_order_of_an_elliptic_curve_over_the_line() {
        // Fixed-point counts from the quotient 1 + 3t + 5t^2: the excess
        // over the line is -S_r, bounded by 2 sqrt(q)^r. The largest ratio
        // in this window is 49 / 5^2 at r = 4.
        let ell = FixedPointTable::from_u64s(5, &[9, 27, 108, 675, 3069, 15552]);
        let line = FixedPointTable::from_u64s(5, &[6, 26, 126, 626, 3126, 15626]);
        let est = estimate_covering_order(&line, &ell, 0.5, 6, FiberRule::BasePower).unwrap();
        assert!((est.min_c - 1.96).abs() < 1e-9);
        assert!(est.min_c <= 3.0);
        assert_eq!(est.samples[0].lhs, BigInt::from(3));

        // Raising the exponent can only shrink the constant (rhs >= 1).
        let softer = estimate_covering_order(&line, &ell, 1.0, 6, FiberRule::BasePower).unwrap();
        assert!(softer.min_c < est.min_c);
    }

    #[test]
    fn covering_order_rejects_bad_inputs() {
        let a = FixedPointTable::from_u64s(5, &[6, 26]);
        let b = FixedPointTable::from_u64s(5, &[9, 27]);
        assert!(matches!(
            estimate_covering_order(&a, &b, 0.5, 0, FiberRule::BasePower),
            Err(RhaError::EmptyRange(0))
        ));
        assert!(matches!(
            estimate_covering_order(&a, &b, 0.5, 3, FiberRule::BasePower),
            Err(RhaError::InsufficientData { needed: 3, available: 2 })
        ));
        let c = FixedPointTable::from_u64s(7, &[8, 50]);
        assert!(matches!(
            estimate_covering_order(&a, &c, 0.5, 2, FiberRule::BasePower),
            Err(RhaError::BaseMismatch { left: 5, right: 7 })
        ));
    }
}
