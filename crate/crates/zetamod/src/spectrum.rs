//! Orbit spectra and fixed-point tables.
//!
//! A locally finite module over a procyclic group is determined, up to
//! isomorphism, by how many orbits it has of each degree. An
//! [`OrbitSpectrum`] records those counts up to a horizon (or completely,
//! for finite models); a [`FixedPointTable`] records the fixed-point counts
//! `N_r` of the `r`-th power of the generator. The two determine each other
//! on their common range:
//!
//! * `N_r = sum_{k | r} k B_k`,
//! * `B_k = (1/k) sum_{d | k} mu(k/d) N_d`,
//!
//! and the second direction is exactly where realizability shows: a table is
//! the fixed-point data of an actual module iff every inverted `B_k` is a
//! non-negative integer.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{divisors, mobius, to_bigint, to_biguint};

/// Errors from spectrum construction and queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    /// A query reached past the degrees the spectrum is trusted for.
    #[error("degree {requested} exceeds the spectrum horizon {horizon}")]
    HorizonExceeded { horizon: u64, requested: u64 },
    /// Fixed-point data that no module realizes (a negative or fractional
    /// orbit count appears under Möbius inversion).
    #[error("no module realizes this table: orbit count at degree {degree} is {value}")]
    NonRealizable { degree: u64, value: String },
    /// Two objects over different base field sizes were combined.
    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u64, right: u64 },
}

/// Whether a module acts through an infinite quotient of the acting group.
///
/// Truncated data can only ever certify the negative direction: a complete
/// finite spectrum is never faithful, and an incomplete one leaves the
/// question open. `Faithful` is part of the answer type for callers that
/// obtain it by other means.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Faithfulness {
    Faithful,
    NotFaithful,
    Unknown,
}

/// Orbit counts `B_k` of a module, by degree.
///
/// `counts` holds only nonzero entries, every key is between 1 and
/// `horizon`, and `complete` asserts that no orbit exists beyond the listed
/// ones (in which case the module is finite with `sum k B_k` points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSpectrum {
    base_q: u64,
    counts: BTreeMap<u64, BigUint>,
    horizon: u64,
    complete: bool,
}

/// Fixed-point counts `N_1, ..., N_R` of the powers of the generator,
/// tagged with the base field size the generator belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointTable {
    base_q: u64,
    values: Vec<BigUint>,
}

impl FixedPointTable {
    pub fn new(base_q: u64, values: Vec<BigUint>) -> Self {
        FixedPointTable { base_q, values }
    }

    pub fn from_u64s(base_q: u64, values: &[u64]) -> Self {
        Self::new(base_q, values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn base_q(&self) -> u64 {
        self.base_q
    }

    /// Largest `r` with a recorded `N_r`.
    pub fn depth(&self) -> u64 {
        self.values.len() as u64
    }

    /// `N_r` (1-indexed).
    pub fn value(&self, r: u64) -> &BigUint {
        &self.values[r as usize - 1]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

impl OrbitSpectrum {
    /// Spectrum from explicit counts. Zero counts are dropped; degrees must
    /// be at least 1 and at most `horizon`.
    pub fn new(
        base_q: u64,
        counts: BTreeMap<u64, BigUint>,
        horizon: u64,
        complete: bool,
    ) -> Result<Self, SpectrumError> {
        let mut clean = BTreeMap::new();
        for (degree, count) in counts {
            assert!(degree >= 1, "orbit degrees start at 1");
            if count.is_zero() {
                continue;
            }
            if degree > horizon {
                return Err(SpectrumError::HorizonExceeded { horizon, requested: degree });
            }
            clean.insert(degree, count);
        }
        Ok(OrbitSpectrum { base_q, counts: clean, horizon, complete })
    }

    /// Convenience constructor from machine-integer counts.
    pub fn from_counts(
        base_q: u64,
        counts: &[(u64, u64)],
        horizon: u64,
        complete: bool,
    ) -> Result<Self, SpectrumError> {
        let map = counts.iter().map(|&(k, b)| (k, BigUint::from(b))).collect();
        Self::new(base_q, map, horizon, complete)
    }

    /// Recovers the spectrum from fixed-point counts by Möbius inversion,
    /// failing with [`SpectrumError::NonRealizable`] when the table belongs
    /// to no module. The result has horizon `R` and is not complete (deeper
    /// orbits are simply unknown).
    pub fn from_fixed_points(table: &FixedPointTable) -> Result<Self, SpectrumError> {
        let r_max = table.depth();
        let mut counts = BTreeMap::new();
        for k in 1..=r_max {
            let mut acc = BigInt::zero();
            for d in divisors(k) {
                let term = to_bigint(table.value(d));
                match mobius(k / d) {
                    1 => acc += term,
                    -1 => acc -= term,
                    _ => {}
                }
            }
            let k_int = BigInt::from(k);
            let (quot, rem) = acc.div_rem(&k_int);
            if acc.is_negative() || !rem.is_zero() {
                return Err(SpectrumError::NonRealizable {
                    degree: k,
                    value: format!("{acc}/{k}"),
                });
            }
            if !quot.is_zero() {
                counts.insert(k, to_biguint(&quot));
            }
        }
        Ok(OrbitSpectrum { base_q: table.base_q, counts, horizon: r_max, complete: false })
    }

    pub fn base_q(&self) -> u64 {
        self.base_q
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    /// Orbit count at one degree (zero when absent).
    pub fn count(&self, degree: u64) -> BigUint {
        self.counts.get(&degree).cloned().unwrap_or_else(BigUint::zero)
    }

    /// The nonzero counts, ordered by degree.
    pub fn counts(&self) -> &BTreeMap<u64, BigUint> {
        &self.counts
    }

    /// Fixed points of the `r`-th Frobenius power for `r = 1..=r_max`:
    /// `N_r = sum_{k | r} k B_k`. Needs `r_max` within the horizon unless
    /// the spectrum is complete.
    pub fn fixed_points(&self, r_max: u64) -> Result<FixedPointTable, SpectrumError> {
        if !self.complete && r_max > self.horizon {
            return Err(SpectrumError::HorizonExceeded { horizon: self.horizon, requested: r_max });
        }
        let mut values = Vec::with_capacity(r_max as usize);
        for r in 1..=r_max {
            let mut acc = BigUint::zero();
            for (&k, b) in &self.counts {
                if r.is_multiple_of(k) {
                    acc += BigUint::from(k) * b;
                }
            }
            values.push(acc);
        }
        Ok(FixedPointTable::new(self.base_q, values))
    }

    /// The same module viewed over the index-`r` subgroup: each orbit of
    /// degree `m` splits into `gcd(m, r)` orbits of degree `m / gcd(m, r)`,
    /// and the base field size is raised to the `r`-th power.
    ///
    /// The horizon label is carried over unchanged; callers restricting an
    /// incomplete spectrum should trust the result only up to `horizon / r`,
    /// since a degree-`k` orbit downstairs can come from degree `k * r`
    /// upstairs.
    pub fn restrict(&self, r: u64) -> OrbitSpectrum {
        assert!(r >= 1, "restriction index starts at 1");
        let base_q = self
            .base_q
            .checked_pow(u32::try_from(r).expect("restriction index fits u32"))
            .expect("restricted base field size overflows u64");
        let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (&m, b) in &self.counts {
            let g = m.gcd(&r);
            *counts.entry(m / g).or_insert_with(BigUint::zero) += BigUint::from(g) * b;
        }
        OrbitSpectrum { base_q, counts, horizon: self.horizon, complete: self.complete }
    }

    /// Orbit-wise union of two modules over the same base.
    pub fn disjoint_union(&self, other: &OrbitSpectrum) -> Result<OrbitSpectrum, SpectrumError> {
        if self.base_q != other.base_q {
            return Err(SpectrumError::BaseMismatch { left: self.base_q, right: other.base_q });
        }
        let mut counts = self.counts.clone();
        for (&k, b) in &other.counts {
            *counts.entry(k).or_insert_with(BigUint::zero) += b;
        }
        let complete = self.complete && other.complete;
        let mut horizon = self.horizon.min(other.horizon);
        if complete {
            // Both sides carry all their orbits, so the union does too; keep
            // the invariant "keys <= horizon" intact.
            horizon = horizon.max(counts.keys().next_back().copied().unwrap_or(0));
        } else {
            counts.retain(|&k, _| k <= horizon);
        }
        OrbitSpectrum::new(self.base_q, counts, horizon, complete)
    }

    /// Faithfulness of the action, as far as truncated data can tell: a
    /// complete spectrum describes a finite module (never faithful), an
    /// incomplete one leaves the question open.
    pub fn is_faithful(&self) -> Faithfulness {
        if self.complete {
            Faithfulness::NotFaithful
        } else {
            Faithfulness::Unknown
        }
    }

    /// Compares orbit counts of two spectra for all degrees `k <= k_max`.
    /// Base field sizes are deliberately ignored; this is a comparison of
    /// degree multisets.
    pub fn equal_up_to(&self, other: &OrbitSpectrum, k_max: u64) -> Result<bool, SpectrumError> {
        for s in [self, other] {
            if !s.complete && k_max > s.horizon {
                return Err(SpectrumError::HorizonExceeded {
                    horizon: s.horizon,
                    requested: k_max,
                });
            }
        }
        Ok((1..=k_max).all(|k| self.count(k) == other.count(k)))
    }

    /// Total number of points, available only for complete spectra.
    pub fn total_points(&self) -> Option<BigUint> {
        if !self.complete {
            return None;
        }
        let mut acc = BigUint::zero();
        for (&k, b) in &self.counts {
            acc += BigUint::from(k) * b;
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Multiplies two binary polynomials given as bitmasks (bit i = coeff
    /// of x^i). Test-only oracle helper.
    fn polmul_f2(a: u32, b: u32) -> u32 {
        let mut out = 0;
        for i in 0..32 {
            if b & (1 << i) != 0 {
                out ^= a << i;
            }
        }
        out
    }

    /// Counts monic irreducible binary polynomials of each degree up to
    /// `max_deg` by sieving all products of two smaller monic polynomials.
    /// Independent of every crate code path.
    fn irreducible_binary_counts(max_deg: u32) -> Vec<u64> {
        let limit = 1u32 << (max_deg + 1);
        let mut composite = vec![false; limit as usize];
        for f in 2..limit {
            let df = 31 - f.leading_zeros();
            for g in 2..limit {
                let dg = 31 - g.leading_zeros();
                if df + dg > max_deg {
                    break;
                }
                let prod = polmul_f2(f, g);
                if prod < limit {
                    composite[prod as usize] = true;
                }
            }
        }
        (1..=max_deg)
            .map(|d| {
                (1u32 << d..1u32 << (d + 1)).filter(|&f| !composite[f as usize]).count() as u64
            })
            .collect()
    }

    #[test]
    fn projective_line_inversion_matches_irreducible_polynomial_oracle() {
        // N_r = 2^r + 1 for the projective line over the field with two
        // elements; its degree-k orbits are the monic irreducible binary
        // polynomials of degree k, plus the extra rational point at infinity
        // in degree 1.
        let table = FixedPointTable::from_u64s(2, &[3, 5, 9, 17]);
        let spectrum = OrbitSpectrum::from_fixed_points(&table).unwrap();

        let irr = irreducible_binary_counts(4);
        let expected: Vec<(u64, u64)> =
            vec![(1, irr[0] + 1), (2, irr[1]), (3, irr[2]), (4, irr[3])];
        assert_eq!(expected, vec![(1, 3), (2, 1), (3, 2), (4, 3)]);
        for (k, b) in expected {
            assert_eq!(spectrum.count(k), BigUint::from(b), "degree {k}");
        }
        assert_eq!(spectrum.horizon(), 4);
        assert!(!spectrum.complete());
    }

    #[test]
    fn fixed_points_of_projective_line_spectrum() {
        let s = OrbitSpectrum::from_counts(2, &[(1, 3), (2, 1), (3, 2), (4, 3)], 4, false).unwrap();
        let n = s.fixed_points(4).unwrap();
        assert_eq!(n.values(), FixedPointTable::from_u64s(2, &[3, 5, 9, 17]).values());
        assert!(matches!(
            s.fixed_points(5),
            Err(SpectrumError::HorizonExceeded { horizon: 4, requested: 5 })
        ));
    }

    #[test]
    fn fractional_and_negative_inversions_are_rejected() {
        let table = FixedPointTable::from_u64s(3, &[0, 1]);
        assert!(matches!(
            OrbitSpectrum::from_fixed_points(&table),
            Err(SpectrumError::NonRealizable { degree: 2, .. })
        ));
        let table = FixedPointTable::from_u64s(3, &[3, 1]);
        assert!(matches!(
            OrbitSpectrum::from_fixed_points(&table),
            Err(SpectrumError::NonRealizable { degree: 2, .. })
        ));
    }

    fn counts_of(pairs: &[(u64, u64)]) -> BTreeMap<u64, BigUint> {
        pairs.iter().map(|&(k, b)| (k, BigUint::from(b))).collect()
    }

    #[test]
    fn restriction_splits_a_degree_six_orbit() {
        let s = OrbitSpectrum::from_counts(2, &[(6, 1)], 6, true).unwrap();
        let r2 = s.restrict(2);
        assert_eq!(r2.counts(), &counts_of(&[(3, 2)]));
        assert_eq!(r2.base_q(), 4);
        assert_eq!(s.restrict(3).counts(), &counts_of(&[(2, 3)]));
        let r4 = s.restrict(4);
        assert_eq!(r4.counts(), &counts_of(&[(3, 2)]));
        assert_eq!(r4.base_q(), 16);
        assert_eq!(s.restrict(6).counts(), &counts_of(&[(1, 6)]));
    }

    #[test]
    fn disjoint_union_adds_counts_and_checks_bases() {
        let p1 = OrbitSpectrum::from_counts(2, &[(1, 3), (2, 1)], 2, false).unwrap();
        let union = p1.disjoint_union(&p1).unwrap();
        assert_eq!(union.fixed_points(1).unwrap().value(1), &BigUint::from(6u64));
        let other = OrbitSpectrum::from_counts(3, &[(1, 4)], 2, false).unwrap();
        assert!(matches!(
            p1.disjoint_union(&other),
            Err(SpectrumError::BaseMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn faithfulness_from_truncated_data() {
        let finite = OrbitSpectrum::from_counts(2, &[(1, 2), (3, 1)], 3, true).unwrap();
        assert_eq!(finite.is_faithful(), Faithfulness::NotFaithful);
        assert_eq!(finite.total_points(), Some(BigUint::from(5u64)));
        let open = OrbitSpectrum::from_counts(2, &[(1, 2)], 3, false).unwrap();
        assert_eq!(open.is_faithful(), Faithfulness::Unknown);
        assert_eq!(open.total_points(), None);
    }

    #[test]
    fn equality_is_windowed_and_horizon_checked() {
        let a = OrbitSpectrum::from_counts(2, &[(1, 3), (2, 1)], 4, false).unwrap();
        let b = OrbitSpectrum::from_counts(2, &[(1, 3), (2, 1), (4, 9)], 4, false).unwrap();
        assert!(a.equal_up_to(&b, 3).unwrap());
        assert!(!a.equal_up_to(&b, 4).unwrap());
        assert!(matches!(a.equal_up_to(&b, 5), Err(SpectrumError::HorizonExceeded { .. })));
    }

    fn arb_spectrum() -> impl Strategy<Value = OrbitSpectrum> {
        (2u64..=9, proptest::collection::vec(0u64..=5, 8)).prop_map(|(q, counts)| {
            let pairs: Vec<(u64, u64)> =
                counts.into_iter().enumerate().map(|(i, b)| (i as u64 + 1, b)).collect();
            OrbitSpectrum::from_counts(q, &pairs, 8, true).unwrap()
        })
    }

    proptest! {
        #[test]
        fn inversion_round_trips_realizable_spectra(s in arb_spectrum()) {
            let n = s.fixed_points(8).unwrap();
            let back = OrbitSpectrum::from_fixed_points(&n).unwrap();
            prop_assert!(back.equal_up_to(&s, 8).unwrap());
        }

        #[test]
        fn restriction_commutes_with_fixed_points(s in arb_spectrum(), r in 1u64..=4, k in 1u64..=4) {
            let restricted = s.restrict(r);
            let direct = s.fixed_points(r * k).unwrap();
            let via = restricted.fixed_points(k).unwrap();
            prop_assert_eq!(via.value(k), direct.value(r * k));
            prop_assert_eq!(via.base_q(), s.base_q().pow(r as u32));
        }

        #[test]
        fn restriction_preserves_total_point_count(s in arb_spectrum(), r in 1u64..=6) {
            prop_assert_eq!(s.restrict(r).total_points(), s.total_points());
        }
    }
}
