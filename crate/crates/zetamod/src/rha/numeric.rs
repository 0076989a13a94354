//! Fixed-point big-number arithmetic and a simultaneous-iteration root
//! finder.
//!
//! Numbers are `mantissa / 2^SCALE_BITS` with an arbitrary-precision
//! mantissa: unbounded above, resolution `2^-700` (about 210 decimal
//! digits) below. That is exactly the shape polynomial root refinement
//! needs — iterates stay moderate in magnitude while residuals shrink far
//! below anything a machine float could certify.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Binary digits after the point; 700 bits is a little over 210 decimal
/// digits of working precision.
pub const SCALE_BITS: u64 = 700;

/// A real number as `mant / 2^SCALE_BITS`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed {
    mant: BigInt,
}

impl Fixed {
    pub fn zero() -> Self {
        Fixed { mant: BigInt::zero() }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Fixed { mant: v << SCALE_BITS }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    /// Exact conversion of a finite float (floats are dyadic rationals).
    pub fn from_f64(v: f64) -> Self {
        let r = BigRational::from_float(v).expect("finite float");
        let scaled = r * BigRational::from_integer(BigInt::from(1u8) << SCALE_BITS);
        Fixed { mant: scaled.to_integer() }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Fixed { mant: self.mant.abs() }
    }

    pub fn neg(&self) -> Self {
        Fixed { mant: -&self.mant }
    }

    pub fn add(&self, other: &Self) -> Self {
        Fixed { mant: &self.mant + &other.mant }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Fixed { mant: &self.mant - &other.mant }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Fixed { mant: (&self.mant * &other.mant) >> SCALE_BITS }
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.mant.is_zero(), "fixed-point division by zero");
        Fixed { mant: (&self.mant << SCALE_BITS) / &other.mant }
    }

    /// Floor square root of a non-negative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "square root of a negative value");
        Fixed { mant: (&self.mant << SCALE_BITS).sqrt() }
    }

    /// Floor `n`-th root of a non-negative value.
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(n >= 1, "root index starts at 1");
        assert!(!self.mant.is_negative(), "even roots of negatives are not real");
        Fixed { mant: (&self.mant << (SCALE_BITS * (n as u64 - 1))).nth_root(n) }
    }

    pub fn to_f64(&self) -> f64 {
        // 2^700 is about 5.3e210, comfortably inside f64 range; mantissas at
        // the magnitudes this crate produces stay inside it too.
        self.mant.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(SCALE_BITS as i32)
    }
}

/// A complex number with [`Fixed`] parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFixed {
    pub re: Fixed,
    pub im: Fixed,
}

impl CFixed {
    pub fn new(re: Fixed, im: Fixed) -> Self {
        CFixed { re, im }
    }

    pub fn zero() -> Self {
        CFixed::new(Fixed::zero(), Fixed::zero())
    }

    pub fn from_f64s(re: f64, im: f64) -> Self {
        CFixed::new(Fixed::from_f64(re), Fixed::from_f64(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        CFixed::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn sub(&self, other: &Self) -> Self {
        CFixed::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }

    pub fn mul(&self, other: &Self) -> Self {
        CFixed::new(
            self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        )
    }

    pub fn div(&self, other: &Self) -> Self {
        let denom = other.norm_sqr();
        assert!(!denom.is_zero(), "complex division by zero");
        let num_re = self.re.mul(&other.re).add(&self.im.mul(&other.im));
        let num_im = self.im.mul(&other.re).sub(&self.re.mul(&other.im));
        CFixed::new(num_re.div(&denom), num_im.div(&denom))
    }

    pub fn norm_sqr(&self) -> Fixed {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Fixed {
        self.norm_sqr().sqrt()
    }
}

/// Failure of the iteration to reach the residual threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct NotConverged {
    pub iterations: usize,
    pub worst_residual: f64,
}

/// Horner evaluation of `sum c_i z^i`.
fn eval(coeffs: &[CFixed], z: &CFixed) -> CFixed {
    let mut acc = CFixed::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// `sum |c_i| |z|^i`, the natural scale against which a residual at `z` is
/// judged.
fn eval_scale(abs_coeffs: &[Fixed], z_abs: &Fixed) -> Fixed {
    let mut acc = Fixed::zero();
    for c in abs_coeffs.iter().rev() {
        acc = acc.mul(z_abs).add(c);
    }
    acc
}

/// All `d` complex roots of `p(t) = sum a_i t^i` (with `a_0 != 0` and
/// `a_d != 0`), to roughly 30 significant digits or better.
///
/// Degrees 1 and 2 are solved in closed form; higher degrees run
/// Aberth–Ehrlich simultaneous iteration from perturbed-circle initial
/// guesses until every relative residual drops below `1e-30`. The implicit
/// deflation of simultaneous iteration (each iterate repels the others)
/// handles multiple roots, at a slower, linear convergence rate.
pub fn roots(poly: &[BigInt]) -> Result<Vec<CFixed>, NotConverged> {
    let d = poly.len() - 1;
    assert!(d >= 1, "constants have no roots to find");
    assert!(!poly[0].is_zero() && !poly[d].is_zero(), "zero roots are excluded by P(0) = 1");

    if d == 1 {
        let root = Fixed::from_bigint(&-&poly[0]).div(&Fixed::from_bigint(&poly[1]));
        return Ok(vec![CFixed::new(root, Fixed::zero())]);
    }
    if d == 2 {
        let disc = &poly[1] * &poly[1] - BigInt::from(4) * &poly[0] * &poly[2];
        let two_a = Fixed::from_bigint(&(BigInt::from(2) * &poly[2]));
        let minus_b = Fixed::from_bigint(&-&poly[1]);
        return Ok(if disc.is_negative() {
            let im = Fixed::from_bigint(&-&disc).sqrt().div(&two_a);
            let re = minus_b.div(&two_a);
            vec![CFixed::new(re.clone(), im.clone()), CFixed::new(re, im.neg())]
        } else {
            let sq = Fixed::from_bigint(&disc).sqrt();
            vec![
                CFixed::new(minus_b.add(&sq).div(&two_a), Fixed::zero()),
                CFixed::new(minus_b.sub(&sq).div(&two_a), Fixed::zero()),
            ]
        });
    }

    let coeffs: Vec<CFixed> =
        poly.iter().map(|c| CFixed::new(Fixed::from_bigint(c), Fixed::zero())).collect();
    let abs_coeffs: Vec<Fixed> = poly.iter().map(|c| Fixed::from_bigint(&c.abs())).collect();
    let deriv: Vec<CFixed> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&CFixed::new(Fixed::from_i64(i as i64), Fixed::zero())))
        .collect();

    // Cauchy-style bound on root magnitudes, as a starting radius.
    let lead = poly[d].magnitude();
    let max_ratio = poly[..d]
        .iter()
        .map(|c| {
            let num = c.magnitude();
            let bits = num.bits() as i64 - lead.bits() as i64;
            (bits as f64).exp2()
        })
        .fold(0.0f64, f64::max);
    let radius = (1.0 + max_ratio).min(1e18);

    let mut z: Vec<CFixed> = (0..d)
        .map(|k| {
            // Perturbed circle: staggered radii and an aperiodic angular
            // offset keep the guesses off symmetry axes.
            let r = radius * (0.55 + 0.35 * (k as f64 + 1.0) / d as f64);
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.39963 / d as f64;
            CFixed::from_f64s(r * theta.cos(), r * theta.sin())
        })
        .collect();

    let threshold = Fixed::from_f64(1e-30);
    let nudge = CFixed::from_f64s(1e-20, 3e-20);
    let max_iterations = 600;
    let mut worst = f64::INFINITY;

    for _ in 0..max_iterations {
        let mut converged = true;
        worst = 0.0;
        for k in 0..d {
            let pz = eval(&coeffs, &z[k]);
            let scale = eval_scale(&abs_coeffs, &z[k].abs());
            let residual = pz.abs().div(&scale);
            worst = worst.max(residual.to_f64());
            if residual > threshold {
                converged = false;
            }
        }
        if converged {
            return Ok(z);
        }
        for k in 0..d {
            let pz = eval(&coeffs, &z[k]);
            let dpz = eval(&deriv, &z[k]);
            if dpz.is_zero() {
                z[k] = z[k].add(&nudge);
                continue;
            }
            let newton = pz.div(&dpz);
            let mut repulsion = CFixed::zero();
            for j in 0..d {
                if j == k {
                    continue;
                }
                let mut diff = z[k].sub(&z[j]);
                if diff.is_zero() {
                    diff = nudge.clone();
                }
                repulsion =
                    repulsion.add(&CFixed::new(Fixed::from_i64(1), Fixed::zero()).div(&diff));
            }
            let denom = CFixed::new(Fixed::from_i64(1), Fixed::zero()).sub(&newton.mul(&repulsion));
            let step = if denom.is_zero() { newton } else { newton.div(&denom) };
            z[k] = z[k].sub(&step);
        }
    }
    Err(NotConverged { iterations: max_iterations, worst_residual: worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn fixed_point_arithmetic_round_trips() {
        let a = Fixed::from_f64(2.5);
        let b = Fixed::from_f64(-0.5);
        assert_eq!(a.mul(&b).to_f64(), -1.25);
        assert_eq!(a.div(&b).to_f64(), -5.0);
        assert_eq!(Fixed::from_i64(2).sqrt().to_f64(), 2f64.sqrt());
        assert!((Fixed::from_i64(8).nth_root(3).to_f64() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn linear_and_quadratic_roots_are_closed_form() {
        let r = roots(&ints(&[1, -2])).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].re.to_f64() - 0.5).abs() < 1e-18);

        // 1 + 3t + 5t^2: conjugate roots of modulus 1/sqrt(5).
        let r = roots(&ints(&[1, 3, 5])).unwrap();
        let m0 = r[0].abs().to_f64();
        let m1 = r[1].abs().to_f64();
        assert!((m0 - 1.0 / 5f64.sqrt()).abs() < 1e-15, "modulus {m0}");
        assert!((m1 - 1.0 / 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn aberth_finds_separated_real_roots() {
        // (1 - t)(1 - 2t)(1 - 3t)(1 - 4t) = 1 - 10t + 35t^2 - 50t^3 + 24t^4.
        let r = roots(&ints(&[1, -10, 35, -50, 24])).unwrap();
        let mut mags: Vec<f64> = r.iter().map(|z| z.abs().to_f64()).collect();
        mags.sort_by(f64::total_cmp);
        let expect = [0.25, 1.0 / 3.0, 0.5, 1.0];
        for (m, e) in mags.iter().zip(expect) {
            assert!((m - e).abs() < 1e-25, "modulus {m} vs {e}");
        }
    }

    #[test]
    fn aberth_handles_a_triple_root() {
        // (1 - 2t)^3 = 1 - 6t + 12t^2 - 8t^3.
        let r = roots(&ints(&[1, -6, 12, -8])).unwrap();
        for z in &r {
            assert!((z.abs().to_f64() - 0.5).abs() < 1e-9, "modulus {}", z.abs().to_f64());
        }
    }

    #[test]
    fn aberth_handles_mixed_complex_clusters() {
        // (1 + 3t + 5t^2)(1 - 2t)^2 over the integers.
        let p = [1, -1, -3, -8, 20];
        let r = roots(&ints(&p)).unwrap();
        let mut mags: Vec<f64> = r.iter().map(|z| z.abs().to_f64()).collect();
        mags.sort_by(f64::total_cmp);
        let s5 = 1.0 / 5f64.sqrt();
        let expect = [s5, s5, 0.5, 0.5];
        for (m, e) in mags.iter().zip(expect) {
            assert!((m - e).abs() < 1e-9, "modulus {m} vs {e}");
        }
    }
}
