//! Explicit finite fields and plane projective curves over them.
//!
//! Fields `F_{p^e}` are represented as polynomial residues modulo a
//! deterministic irreducible modulus, so every run of the library builds the
//! same field and every enumeration visits points in the same order. On top
//! of that sit brute-force point counting over extension fields, extraction
//! of the numerator polynomial of a curve's zeta function from its counts,
//! and builders for two stock families of orbit spectra: the projective line
//! and a non-projective module whose quotient slope sits strictly between 0
//! and 1/2.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exact::{
    newton_power_sums, poly_from_power_sums, to_biguint, ExactError, IntPoly, PowerSumTable,
    Rational,
};
use crate::spectrum::{FixedPointTable, OrbitSpectrum, SpectrumError};

/// Largest supported extension degree over the prime field. Counting over
/// `F_{q^r}` needs `e * r` within this limit.
pub const MAX_EXTENSION_DEGREE: usize = 12;

/// Default ceiling on the number of affine chart points a single
/// [`count_points`] call may enumerate.
pub const DEFAULT_POINT_BUDGET: u64 = 1_000_000_000;

/// A field element: little-endian coefficients of a residue polynomial,
/// meaningful up to the field's extension degree.
pub type FqElem = [u64; MAX_EXTENSION_DEGREE];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {degree} is outside the supported range 1..={MAX_EXTENSION_DEGREE}")]
    DegreeTooLarge { degree: usize },
    #[error("field size {p}^{e} does not fit in 64 bits")]
    FieldTooLarge { p: u64, e: usize },
    #[error("F_{sub_q} is not a subfield of F_{sup_q}")]
    NotASubfield { sub_q: u64, sup_q: u64 },
    #[error("monomial x^{} y^{} z^{} does not have total degree {degree}", exps.0, exps.1, exps.2)]
    NotHomogeneous { exps: (u32, u32, u32), degree: u32 },
    #[error("the zero polynomial does not cut a curve")]
    ZeroCurve,
    #[error("polynomial is not in Weierstrass shape y^2 z + a1 xyz + a3 yz^2 = x^3 + a2 x^2 z + a4 xz^2 + a6 z^3")]
    NotWeierstrass,
    #[error("Weierstrass discriminant vanishes: the curve is singular")]
    SingularCurve,
    #[error("kind Custom needs a caller-asserted genus")]
    GenusRequired,
    #[error("stated genus {given} contradicts the required genus {required}")]
    GenusMismatch { given: u32, required: u32 },
    #[error("counting over F_{q}^{r} needs {q}^{} chart points, over the budget {budget}", 2 * r)]
    BudgetExceeded { q: u64, r: u32, budget: u64 },
    #[error("invalid module parameters: {reason}")]
    BadParameters { reason: &'static str },
    #[error("curve functional equation fails at coefficient pair ({j}, 2g - {j})")]
    FunctionalEquationViolated { j: usize },
    #[error("numerator polynomial predicts N_{r} = {predicted}, enumeration found {counted}")]
    PredictionMismatch { r: u32, predicted: BigInt, counted: u64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

// ---------------------------------------------------------------------------
// Primality and F_p[x] arithmetic for modulus construction.
// ---------------------------------------------------------------------------

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin over the witness set that is exact for u64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense little-endian polynomials over `F_p`, trimmed so the zero
/// polynomial is `[0]`.
fn fp_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn fp_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    fp_trim(&mut out);
    out
}

/// Remainder of `a` by a nonzero `b` (any leading coefficient).
fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut rem = a.to_vec();
    fp_trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = powmod(b[db], p - 2, p);
    while rem.len() > db && !fp_is_zero(&rem) {
        let shift = rem.len() - 1 - db;
        let factor = mulmod(*rem.last().unwrap(), lead_inv, p);
        for j in 0..=db {
            let sub = mulmod(factor, b[j], p);
            rem[shift + j] = (rem[shift + j] + p - sub) % p;
        }
        fp_trim(&mut rem);
        if rem.len() == 1 && rem[0] == 0 {
            break;
        }
    }
    rem
}

fn fp_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p as u128;
        }
    }
    let reduced: Vec<u64> = prod.iter().map(|&c| c as u64).collect();
    fp_rem(&reduced, f, p)
}

fn fp_powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut sq = fp_rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mulmod(&acc, &sq, f, p);
        }
        sq = fp_mulmod(&sq, &sq, f, p);
        exp >>= 1;
    }
    acc
}

fn fp_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !fp_is_zero(&b) {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    // Normalize to monic so "coprime" always reads as [1].
    if !fp_is_zero(&a) {
        let inv = powmod(*a.last().unwrap(), p - 2, p);
        for c in &mut a {
            *c = mulmod(*c, inv, p);
        }
    }
    a
}

/// `f` monic of degree `e` is irreducible iff it has no irreducible factor
/// of degree at most `e / 2`, i.e. `gcd(x^(p^i) - x, f) = 1` for every
/// `i <= e / 2` (the left factor is the product of all irreducibles of
/// degree dividing `i`). The Frobenius powers are built by repeated
/// `p`-th powering mod `f`.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    let x = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=e / 2 {
        frob = fp_powmod(&frob, p, f, p);
        let gcd = fp_gcd(fp_sub(&frob, &x, p), f.to_vec(), p);
        if gcd.len() > 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// The field type.
// ---------------------------------------------------------------------------

/// The finite field `F_q`, `q = p^e`, with elements as residues modulo a
/// fixed monic irreducible of degree `e` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    e: usize,
    q: u64,
    /// Monic, little-endian, length `e + 1`.
    modulus: Vec<u64>,
}

/// Builds `F_{p^e}` deterministically: the modulus is the first monic
/// irreducible of degree `e` in the enumeration whose lower coefficients are
/// the base-`p` digits of 0, 1, 2, ....
pub fn build_field(p: u64, e: usize) -> Result<FqField, FfError> {
    if !is_prime(p) {
        return Err(FfError::NotPrime(p));
    }
    if e == 0 || e > MAX_EXTENSION_DEGREE {
        return Err(FfError::DegreeTooLarge { degree: e });
    }
    let mut q: u64 = 1;
    for _ in 0..e {
        q = q.checked_mul(p).ok_or(FfError::FieldTooLarge { p, e })?;
    }
    let mut modulus = None;
    for k in 0..u64::MAX {
        let mut f = vec![0u64; e + 1];
        let mut rest = k;
        for c in f.iter_mut().take(e) {
            *c = rest % p;
            rest /= p;
        }
        if rest > 0 {
            break;
        }
        f[e] = 1;
        if fp_is_irreducible(&f, p) {
            modulus = Some(f);
            break;
        }
    }
    let modulus = modulus.expect("every degree admits a monic irreducible polynomial");
    Ok(FqField { p, e, q, modulus })
}

impl FqField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The defining modulus, little-endian, length `e + 1`, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        [0; MAX_EXTENSION_DEGREE]
    }

    pub fn one(&self) -> FqElem {
        let mut a = self.zero();
        a[0] = 1;
        a
    }

    /// The image of an integer under `Z -> F_q` (negatives wrap).
    pub fn scalar(&self, c: i64) -> FqElem {
        let mut a = self.zero();
        a[0] = c.rem_euclid(self.p as i64) as u64;
        a
    }

    /// Element from little-endian residue coefficients (reduced mod `p`).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqElem {
        assert!(coeffs.len() <= self.e, "residue degree must stay below e");
        let mut a = self.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            a[i] = c % self.p;
        }
        a
    }

    /// The `index`-th element in the fixed enumeration (base-`p` digits).
    pub fn element(&self, index: u64) -> FqElem {
        assert!(index < self.q, "element index out of range");
        let mut a = self.zero();
        let mut rest = index;
        for c in a.iter_mut().take(self.e) {
            *c = rest % self.p;
            rest /= self.p;
        }
        a
    }

    /// Position of an element in the fixed enumeration.
    pub fn index_of(&self, a: &FqElem) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.e).rev() {
            idx = idx * self.p + a[i];
        }
        idx
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a[..self.e].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut out = self.zero();
        for i in 0..self.e {
            out[i] = (a[i] + b[i]) % self.p;
        }
        out
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut out = self.zero();
        for i in 0..self.e {
            out[i] = (a[i] + self.p - b[i]) % self.p;
        }
        out
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut prod = [0u128; 2 * MAX_EXTENSION_DEGREE - 1];
        for i in 0..self.e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.e {
                prod[i + j] += a[i] as u128 * b[j] as u128;
            }
        }
        let p = self.p as u128;
        for c in prod.iter_mut().take(2 * self.e - 1) {
            *c %= p;
        }
        // Reduce by the monic modulus, highest degree first.
        for i in (self.e..2 * self.e - 1).rev() {
            let lead = prod[i];
            if lead == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.e {
                if self.modulus[j] != 0 {
                    let sub = lead * self.modulus[j] as u128 % p;
                    prod[i - self.e + j] = (prod[i - self.e + j] + p - sub) % p;
                }
            }
        }
        let mut out = self.zero();
        for i in 0..self.e {
            out[i] = prod[i] as u64;
        }
        out
    }

    pub fn pow(&self, a: &FqElem, mut n: u64) -> FqElem {
        let mut acc = self.one();
        let mut sq = *a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self, a: &FqElem) -> FqElem {
        assert!(!self.is_zero(a), "zero has no inverse");
        self.pow(a, self.q - 2)
    }

    /// The arithmetic Frobenius `a -> a^p` generating the Galois group over
    /// the prime field.
    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    /// Horner evaluation of a polynomial with prime-field coefficients.
    fn eval_scalar_poly(&self, coeffs: &[u64], z: &FqElem) -> FqElem {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.mul(&acc, z);
            acc = self.add(&acc, &self.from_coeffs(&[c]));
        }
        acc
    }
}

/// An embedding `F_{p^a} -> F_{p^b}` for `a | b`, stored as the powers of a
/// root of the small field's modulus inside the big one.
#[derive(Debug, Clone)]
pub struct Embedding {
    root_powers: Vec<FqElem>,
}

/// Finds an embedding by exhaustive search for a root of `sub`'s modulus in
/// `sup`. The search always succeeds when the degree divides: the subfield
/// of that order exists and contains every root.
pub fn embedding(sub: &FqField, sup: &FqField) -> Result<Embedding, FfError> {
    if sub.p != sup.p || !sup.e.is_multiple_of(sub.e) {
        return Err(FfError::NotASubfield { sub_q: sub.q, sup_q: sup.q });
    }
    let root = if sub == sup {
        // Identity embedding: the canonical generator maps to itself.
        let mut x = sup.zero();
        if sup.e > 1 {
            x[1] = 1;
        } else {
            // Degree one: the modulus is x + c, whose root is -c.
            x = sup.neg(&sup.from_coeffs(&[sub.modulus[0]]));
        }
        x
    } else {
        (0..sup.q)
            .map(|i| sup.element(i))
            .find(|z| sup.is_zero(&sup.eval_scalar_poly(&sub.modulus, z)))
            .expect("a field contains every root of its subfields' minimal polynomials")
    };
    let mut root_powers = Vec::with_capacity(sub.e);
    let mut acc = sup.one();
    for _ in 0..sub.e {
        root_powers.push(acc);
        acc = sup.mul(&acc, &root);
    }
    Ok(Embedding { root_powers })
}

impl Embedding {
    /// Image of a small-field element, computed in the big field.
    pub fn apply(&self, sup: &FqField, a: &FqElem) -> FqElem {
        let mut out = sup.zero();
        for (i, power) in self.root_powers.iter().enumerate() {
            if a[i] != 0 {
                out = sup.add(&out, &sup.mul(&sup.from_coeffs(&[a[i]]), power));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Curves.
// ---------------------------------------------------------------------------

/// How much structure the curve constructor may assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// Smooth plane curve of degree `n`: genus is `(n-1)(n-2)/2`.
    /// Smoothness itself is caller-asserted.
    SmoothPlane,
    /// Plane cubic in Weierstrass shape; the constructor verifies the shape
    /// and that the discriminant is nonzero. Genus 1.
    Weierstrass,
    /// Anything else; the genus must be supplied and is trusted.
    Custom,
}

/// A plane projective curve `F(x, y, z) = 0` over a finite field.
#[derive(Debug, Clone)]
pub struct CurveModel {
    field: FqField,
    /// Nonzero coefficients by exponent triple `(i, j, k)`, deduplicated.
    monomials: Vec<(u32, u32, u32, FqElem)>,
    degree: u32,
    genus: u32,
    kind: CurveKind,
}

impl CurveModel {
    /// Validates homogeneity, merges duplicate monomials, applies the
    /// per-kind invariants, and resolves the genus.
    pub fn new(
        field: FqField,
        monomials: Vec<(u32, u32, u32, FqElem)>,
        degree: u32,
        kind: CurveKind,
        genus: Option<u32>,
    ) -> Result<Self, FfError> {
        if degree == 0 {
            return Err(FfError::BadParameters { reason: "a plane curve has positive degree" });
        }
        let mut merged: Vec<(u32, u32, u32, FqElem)> = Vec::new();
        for (i, j, k, c) in monomials {
            if i + j + k != degree {
                return Err(FfError::NotHomogeneous { exps: (i, j, k), degree });
            }
            match merged.iter_mut().find(|(a, b, d, _)| (*a, *b, *d) == (i, j, k)) {
                Some(slot) => slot.3 = field.add(&slot.3, &c),
                None => merged.push((i, j, k, c)),
            }
        }
        merged.retain(|(_, _, _, c)| !field.is_zero(c));
        if merged.is_empty() {
            return Err(FfError::ZeroCurve);
        }
        merged.sort_by_key(|&(i, j, k, _)| (i, j, k));

        let required_genus = match kind {
            CurveKind::SmoothPlane => Some((degree - 1) * (degree - 2) / 2),
            CurveKind::Weierstrass => {
                check_weierstrass(&field, &merged, degree)?;
                Some(1)
            }
            CurveKind::Custom => None,
        };
        let genus = match (required_genus, genus) {
            (Some(required), Some(given)) if given != required => {
                return Err(FfError::GenusMismatch { given, required })
            }
            (Some(required), _) => required,
            (None, Some(given)) => given,
            (None, None) => return Err(FfError::GenusRequired),
        };
        Ok(CurveModel { field, monomials: merged, degree, genus, kind })
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_monomials(
        field: FqField,
        monomials: &[(u32, u32, u32, i64)],
        degree: u32,
        kind: CurveKind,
        genus: Option<u32>,
    ) -> Result<Self, FfError> {
        let mapped = monomials.iter().map(|&(i, j, k, c)| (i, j, k, field.scalar(c))).collect();
        Self::new(field, mapped, degree, kind, genus)
    }

    /// The general Weierstrass cubic
    /// `y^2 z + a1 xyz + a3 yz^2 = x^3 + a2 x^2 z + a4 xz^2 + a6 z^3`.
    pub fn weierstrass(field: FqField, a: [i64; 5]) -> Result<Self, FfError> {
        let [a1, a2, a3, a4, a6] = a;
        let monomials = vec![
            (0, 2, 1, 1),
            (1, 1, 1, a1),
            (0, 1, 2, a3),
            (3, 0, 0, -1),
            (2, 0, 1, -a2),
            (1, 0, 2, -a4),
            (0, 0, 3, -a6),
        ];
        Self::from_int_monomials(field, &monomials, 3, CurveKind::Weierstrass, None)
    }

    /// The short Weierstrass cubic `y^2 z = x^3 + A xz^2 + B z^3`.
    pub fn weierstrass_short(field: FqField, a: i64, b: i64) -> Result<Self, FfError> {
        Self::weierstrass(field, [0, 0, 0, a, b])
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn monomials(&self) -> &[(u32, u32, u32, FqElem)] {
        &self.monomials
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }
}

/// Verifies the Weierstrass shape and computes the discriminant
/// `-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6` from the a-invariants.
fn check_weierstrass(
    field: &FqField,
    monomials: &[(u32, u32, u32, FqElem)],
    degree: u32,
) -> Result<(), FfError> {
    if degree != 3 {
        return Err(FfError::NotWeierstrass);
    }
    let coeff = |i: u32, j: u32, k: u32| -> FqElem {
        monomials
            .iter()
            .find(|&&(a, b, c, _)| (a, b, c) == (i, j, k))
            .map(|&(_, _, _, v)| v)
            .unwrap_or_else(|| field.zero())
    };
    let forbidden = [(0, 3, 0), (1, 2, 0), (2, 1, 0)];
    if forbidden.iter().any(|&(i, j, k)| !field.is_zero(&coeff(i, j, k))) {
        return Err(FfError::NotWeierstrass);
    }
    let one = field.one();
    if coeff(0, 2, 1) != one || coeff(3, 0, 0) != field.neg(&one) {
        return Err(FfError::NotWeierstrass);
    }
    let a1 = coeff(1, 1, 1);
    let a3 = coeff(0, 1, 2);
    let a2 = field.neg(&coeff(2, 0, 1));
    let a4 = field.neg(&coeff(1, 0, 2));
    let a6 = field.neg(&coeff(0, 0, 3));

    let m = |x: &FqElem, y: &FqElem| field.mul(x, y);
    let s = |x: &FqElem, y: &FqElem| field.add(x, y);
    let c = |n: i64| field.scalar(n);
    let b2 = s(&m(&a1, &a1), &m(&c(4), &a2));
    let b4 = s(&m(&c(2), &a4), &m(&a1, &a3));
    let b6 = s(&m(&a3, &a3), &m(&c(4), &a6));
    let b8 = {
        let t1 = m(&m(&a1, &a1), &a6);
        let t2 = m(&m(&c(4), &a2), &a6);
        let t3 = field.neg(&m(&m(&a1, &a3), &a4));
        let t4 = m(&a2, &m(&a3, &a3));
        let t5 = field.neg(&m(&a4, &a4));
        s(&s(&s(&t1, &t2), &s(&t3, &t4)), &t5)
    };
    let disc = {
        let t1 = field.neg(&m(&m(&b2, &b2), &b8));
        let t2 = field.neg(&m(&c(8), &m(&b4, &m(&b4, &b4))));
        let t3 = field.neg(&m(&c(27), &m(&b6, &b6)));
        let t4 = m(&c(9), &m(&b2, &m(&b4, &b6)));
        s(&s(&t1, &t2), &s(&t3, &t4))
    };
    if field.is_zero(&disc) {
        return Err(FfError::SingularCurve);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Point counting.
// ---------------------------------------------------------------------------

/// Counts `|X(F_{q^r})|` with the default enumeration budget.
pub fn count_points(c: &CurveModel, r: u32) -> Result<u64, FfError> {
    count_points_with_budget(c, r, DEFAULT_POINT_BUDGET)
}

/// Counts the points of the curve over `F_{q^r}` by walking the three
/// disjoint charts of the projective plane in a fixed order: `z = 1`, then
/// `z = 0, y = 1`, then the single point `[1 : 0 : 0]`. No point is visited
/// twice, so the sum is exact.
pub fn count_points_with_budget(c: &CurveModel, r: u32, budget: u64) -> Result<u64, FfError> {
    assert!(r >= 1, "extension index starts at 1");
    let base = c.field();
    let ext_e = base.e() * r as usize;
    if ext_e > MAX_EXTENSION_DEGREE {
        return Err(FfError::DegreeTooLarge { degree: ext_e });
    }
    let chart_points = (base.q() as u128).checked_pow(2 * r);
    if chart_points.is_none() || chart_points.unwrap() > budget as u128 {
        return Err(FfError::BudgetExceeded { q: base.q(), r, budget });
    }
    let sup = build_field(base.p(), ext_e)?;
    let emb = embedding(base, &sup)?;
    let monomials: Vec<(u32, u32, u32, FqElem)> =
        c.monomials().iter().map(|&(i, j, k, co)| (i, j, k, emb.apply(&sup, &co))).collect();
    let elems: Vec<FqElem> = (0..sup.q()).map(|i| sup.element(i)).collect();
    let deg = c.degree() as usize;
    let mut count = 0u64;

    // Chart z = 1: group the coefficients of F(x, y, 1) by y-power, fill in
    // each x once, then run Horner in y across the row.
    let mut by_y_power: Vec<Vec<(u32, FqElem)>> = vec![Vec::new(); deg + 1];
    for &(i, j, _k, co) in &monomials {
        by_y_power[j as usize].push((i, co));
    }
    let mut x_powers = vec![sup.zero(); deg + 1];
    let mut row = vec![sup.zero(); deg + 1];
    for x in &elems {
        x_powers[0] = sup.one();
        for i in 1..=deg {
            x_powers[i] = sup.mul(&x_powers[i - 1], x);
        }
        for (j, terms) in by_y_power.iter().enumerate() {
            let mut acc = sup.zero();
            for &(i, ref co) in terms {
                acc = sup.add(&acc, &sup.mul(co, &x_powers[i as usize]));
            }
            row[j] = acc;
        }
        for y in &elems {
            let mut acc = row[deg];
            for j in (0..deg).rev() {
                acc = sup.add(&sup.mul(&acc, y), &row[j]);
            }
            if sup.is_zero(&acc) {
                count += 1;
            }
        }
    }

    // Chart z = 0, y = 1: a univariate polynomial in x.
    let mut line = vec![sup.zero(); deg + 1];
    for &(i, _j, k, co) in &monomials {
        if k == 0 {
            line[i as usize] = sup.add(&line[i as usize], &co);
        }
    }
    for x in &elems {
        let mut acc = line[deg];
        for i in (0..deg).rev() {
            acc = sup.add(&sup.mul(&acc, x), &line[i]);
        }
        if sup.is_zero(&acc) {
            count += 1;
        }
    }

    // The last point [1 : 0 : 0] lies on the curve iff the x^deg
    // coefficient vanishes.
    if sup.is_zero(&line[deg]) {
        count += 1;
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Zeta data of a curve.
// ---------------------------------------------------------------------------

/// Point counts of a curve together with the numerator polynomial of its
/// zeta function, already validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveZetaData {
    /// `N_r` for `r = 1 ..= 2g + 1`.
    pub counts: FixedPointTable,
    /// Degree `2g`, constant term 1, integral.
    pub weil_poly: IntPoly,
    pub genus: u32,
}

/// Extracts the numerator polynomial of the curve's zeta function from
/// brute-force counts with the default budget.
pub fn curve_zeta(c: &CurveModel) -> Result<CurveZetaData, FfError> {
    curve_zeta_with_budget(c, DEFAULT_POINT_BUDGET)
}

/// Counts `N_1, ..., N_{2g}`, converts to power sums
/// `S_r = q^r + 1 - N_r`, reconstructs the degree-`2g` polynomial with
/// those power sums, and then refuses to hand it back until it passes two
/// independent exactness gates:
///
/// 1. the curve functional equation `a_{2g-j} = q^{g-j} a_j` for all
///    `j <= g`, coefficient by coefficient;
/// 2. predict-then-verify: the polynomial's forecast of `N_{2g+1}` must
///    match one extra brute-force count.
///
/// Singular or wrongly-attributed inputs fail one of the gates (or the
/// integrality of the reconstruction) rather than yielding a bogus
/// polynomial.
pub fn curve_zeta_with_budget(c: &CurveModel, budget: u64) -> Result<CurveZetaData, FfError> {
    let g = c.genus() as usize;
    let q = BigInt::from(c.field().q());
    let mut counts = Vec::with_capacity(2 * g + 2);
    for r in 1..=(2 * g) as u32 {
        counts.push(count_points_with_budget(c, r, budget)?);
    }
    let power_sums: Vec<Rational> =
        (1..=2 * g).map(|r| Rational::from_integer(q.pow(r as u32) + 1 - counts[r - 1])).collect();
    let weil_poly = poly_from_power_sums(&PowerSumTable::new(power_sums), 2 * g)?;
    for j in 0..=g {
        let expected = q.pow((g - j) as u32) * weil_poly.coeff(j);
        if weil_poly.coeff(2 * g - j) != expected {
            return Err(FfError::FunctionalEquationViolated { j });
        }
    }
    // Predict-then-verify: only now pay for the extra count.
    let extended = newton_power_sums(&weil_poly, 2 * g + 1);
    let tail = extended.value(2 * g + 1);
    assert!(tail.is_integer(), "power sums of an integral polynomial are integers");
    let predicted = q.pow((2 * g + 1) as u32) + 1 - tail.to_integer();
    let counted = count_points_with_budget(c, (2 * g + 1) as u32, budget)?;
    if predicted != BigInt::from(counted) {
        return Err(FfError::PredictionMismatch { r: (2 * g + 1) as u32, predicted, counted });
    }
    counts.push(counted);
    Ok(CurveZetaData {
        counts: FixedPointTable::from_u64s(c.field().q(), &counts),
        weil_poly,
        genus: c.genus(),
    })
}

// ---------------------------------------------------------------------------
// Stock spectra.
// ---------------------------------------------------------------------------

/// The orbit spectrum of the projective line over `F_q`, recovered from
/// `N_r = q^r + 1` up to the horizon.
pub fn projective_line_spectrum(q: u64, horizon: u64) -> OrbitSpectrum {
    assert!(q >= 2, "base field has at least two elements");
    assert!(horizon >= 1, "horizon starts at 1");
    let values: Vec<BigUint> =
        (1..=horizon).map(|r| BigUint::from(q).pow(r as u32) + BigUint::one()).collect();
    OrbitSpectrum::from_fixed_points(&FixedPointTable::new(q, values))
        .expect("line counts invert to non-negative orbit counts")
}

/// The orbit spectrum over base `q^m` with `N_r = q^(rm) - d q^r + 1` for
/// `d <= m`: a module that is not the point set of any projective variety
/// once `m >= 3`, yet is perfectly realizable as a union of orbits. The
/// realizability of the Mobius inversion is checked at runtime rather than
/// assumed.
pub fn nonprojective_module(
    q: u64,
    m: u32,
    d: u32,
    horizon: u64,
) -> Result<OrbitSpectrum, FfError> {
    if q < 2 {
        return Err(FfError::BadParameters { reason: "base q needs at least two elements" });
    }
    if m < 1 {
        return Err(FfError::BadParameters { reason: "exponent m starts at 1" });
    }
    if d > m {
        return Err(FfError::BadParameters { reason: "the construction needs d <= m" });
    }
    let base = q
        .checked_pow(m)
        .ok_or(FfError::BadParameters { reason: "base field size q^m overflows 64 bits" })?;
    let big_q = BigInt::from(q);
    let values: Vec<BigUint> = (1..=horizon)
        .map(|r| {
            let n = big_q.pow((r * m as u64) as u32) - BigInt::from(d) * big_q.pow(r as u32)
                + BigInt::one();
            assert!(!n.is_negative(), "q^(rm) dominates d q^r whenever d <= m");
            to_biguint(&n)
        })
        .collect();
    Ok(OrbitSpectrum::from_fixed_points(&FixedPointTable::new(base, values))?)
}
