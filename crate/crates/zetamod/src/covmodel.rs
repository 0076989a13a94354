//! Finite models of orbit unions with a commuting finite group action.
//!
//! A [`FiniteOrbitModel`] is a permutation `phi` of finitely many points —
//! the generator acting on a finite union of orbits, so orbit degrees are
//! cycle lengths. A [`GroupAction`] adds a finite group `H` commuting with
//! `phi`; everything downstream is exhaustive verification at desk scale:
//! quotients by `H` and their projections, inertia along a covering, the
//! fixed-point counting identity
//! `sum_{h in H} |Fix(h phi^r)| = |H| |Fix(phi'^r)|`, twisted actions
//! `h phi^n`, and two-step quotient diagrams for a subgroup chain
//! `H1 <= H`. Models cap at 10^4 points: these are proof-shaped checks,
//! not simulations.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::rha::{rha_check, RhaReport};
use crate::spectrum::{FixedPointTable, OrbitSpectrum};
use crate::zeta::{
    detect_polynomial, zeta_euler, zeta_exp, zeta_quotient, Detection, QuotientPoly, ZetaContext,
    ZetaError,
};

/// Hard cap on model size; validation is exhaustive below it.
pub const MODEL_POINT_CAP: usize = 10_000;

/// Hard cap on the expanded group order.
pub const GROUP_ORDER_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CovError {
    #[error(
        "image list is not a bijection: value {value} at position {index} repeats or overflows"
    )]
    NotBijective { index: usize, value: usize },
    #[error("permutation acts on {found} points, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("permutation {index} does not commute with the module action")]
    NotCommuting { index: usize },
    #[error("model exceeds the {MODEL_POINT_CAP}-point cap")]
    ModelTooLarge,
    #[error("group closure exceeds the {GROUP_ORDER_CAP}-element cap")]
    GroupTooLarge,
    #[error("projection is not equivariant at point {point}")]
    NotEquivariant { point: usize },
    #[error("projection misses target point {point}")]
    NotSurjective { point: usize },
    #[error("projection sends point {point} to {image}, outside the target")]
    BadProjection { point: usize, image: usize },
    #[error("generator {index} lies outside the ambient group")]
    NotSubgroup { index: usize },
    #[error("zeta quotient is not a polynomial: coefficient {nonzero_at} is nonzero")]
    QuotientNotPolynomial { nonzero_at: usize },
    #[error("twisted base field size overflows 64 bits")]
    BaseOverflow,
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

/// A permutation of `0..n`, validated to be a bijection on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, CovError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (index, &value) in images.iter().enumerate() {
            if value >= n || seen[value] {
                return Err(CovError::NotBijective { index, value });
            }
            seen[value] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composition needs equal supports");
        Perm { images: other.images.iter().map(|&y| self.images[y]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Perm { images }
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut acc = Perm::identity(self.len());
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Lengths of the cycles, in first-point order.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut lengths = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            lengths.push(len);
        }
        lengths
    }

    /// Multiplicative order (the lcm of the cycle lengths, which can be
    /// enormous even at desk scale).
    pub fn order(&self) -> BigUint {
        self.cycle_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, len| acc.lcm(&BigUint::from(len)))
    }

    pub fn fixed_point_count(&self) -> u64 {
        self.images.iter().enumerate().filter(|&(x, &y)| x == y).count() as u64
    }
}

/// A finite union of orbits: the points `0..n` with the generator acting as
/// the permutation `phi`. Orbit degrees are cycle lengths, precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrbitModel {
    phi: Perm,
    point_degree: Vec<usize>,
}

impl FiniteOrbitModel {
    pub fn new(phi: Perm) -> Result<Self, CovError> {
        if phi.len() > MODEL_POINT_CAP {
            return Err(CovError::ModelTooLarge);
        }
        let mut point_degree = vec![0; phi.len()];
        let mut seen = vec![false; phi.len()];
        for start in 0..phi.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = phi.apply(x);
            }
            for &y in &cycle {
                point_degree[y] = cycle.len();
            }
        }
        Ok(FiniteOrbitModel { phi, point_degree })
    }

    pub fn size(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &Perm {
        &self.phi
    }

    /// Degree of the orbit through `x` (its cycle length).
    pub fn orbit_degree(&self, x: usize) -> usize {
        self.point_degree[x]
    }

    /// `|Fix(phi^r)|`, read off the orbit degrees: `x` is fixed iff its
    /// degree divides `r`.
    pub fn fixed_points_of_power(&self, r: u64) -> u64 {
        self.point_degree.iter().filter(|&&d| r.is_multiple_of(d as u64)).count() as u64
    }
}

/// Cycle-length histogram of the model as a complete orbit spectrum over a
/// caller-supplied base.
pub fn orbit_spectrum_of(m: &FiniteOrbitModel, base_q: u64) -> OrbitSpectrum {
    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    let mut horizon = 1;
    for len in m.phi.cycle_lengths() {
        horizon = horizon.max(len as u64);
        *counts.entry(len as u64).or_default() += BigUint::one();
    }
    OrbitSpectrum::new(base_q, counts, horizon, true)
        .expect("cycle lengths are bounded by the horizon by construction")
}

/// A finite group of permutations commuting with the module action,
/// expanded to its full element list with per-point stabilizer sizes.
#[derive(Debug, Clone)]
pub struct GroupAction {
    model: FiniteOrbitModel,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    stabilizer_sizes: Vec<usize>,
}

impl GroupAction {
    /// Validates sizes and phi-commutation of the generators (products then
    /// commute automatically), closes under composition, and records
    /// stabilizer sizes.
    pub fn new(model: FiniteOrbitModel, generators: Vec<Perm>) -> Result<Self, CovError> {
        let n = model.size();
        for (index, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(CovError::SizeMismatch { expected: n, found: g.len() });
            }
            let commutes =
                (0..n).all(|x| g.apply(model.phi.apply(x)) == model.phi.apply(g.apply(x)));
            if !commutes {
                return Err(CovError::NotCommuting { index });
            }
        }
        let mut elements = vec![Perm::identity(n)];
        let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
        known.insert(elements[0].images().to_vec());
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let next = current.compose(g);
                if known.insert(next.images().to_vec()) {
                    if elements.len() >= GROUP_ORDER_CAP {
                        return Err(CovError::GroupTooLarge);
                    }
                    elements.push(next);
                }
            }
        }
        let stabilizer_sizes =
            (0..n).map(|x| elements.iter().filter(|h| h.apply(x) == x).count()).collect();
        Ok(GroupAction { model, generators, elements, stabilizer_sizes })
    }

    pub fn model(&self) -> &FiniteOrbitModel {
        &self.model
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `|Stab_H(x)|`.
    pub fn stabilizer_size(&self, x: usize) -> usize {
        self.stabilizer_sizes[x]
    }

    /// Points where the action is not free.
    pub fn nontrivial_stabilizer_points(&self) -> Vec<usize> {
        (0..self.model.size()).filter(|&x| self.stabilizer_sizes[x] > 1).collect()
    }
}

/// The orbit space of the group action with its induced module structure,
/// plus the projection `point -> quotient point`.
///
/// Well-definedness and bijectivity of the induced action are checked
/// exhaustively, and so is the orbit-stabilizer balance
/// `|Stab(x)| * |orbit(x)| = |H|` at every point.
pub fn quotient(a: &GroupAction) -> (FiniteOrbitModel, Vec<usize>) {
    let n = a.model.size();
    const UNSET: usize = usize::MAX;
    let mut orbit_of = vec![UNSET; n];
    let mut orbit_sizes = Vec::new();
    for start in 0..n {
        if orbit_of[start] != UNSET {
            continue;
        }
        let id = orbit_sizes.len();
        let mut stack = vec![start];
        orbit_of[start] = id;
        let mut size = 0usize;
        while let Some(x) = stack.pop() {
            size += 1;
            for g in &a.generators {
                let y = g.apply(x);
                if orbit_of[y] == UNSET {
                    orbit_of[y] = id;
                    stack.push(y);
                }
            }
        }
        orbit_sizes.push(size);
    }
    for x in 0..n {
        assert_eq!(
            a.stabilizer_sizes[x] * orbit_sizes[orbit_of[x]],
            a.order(),
            "orbit-stabilizer balance must hold at every point"
        );
    }
    let k = orbit_sizes.len();
    let mut induced = vec![UNSET; k];
    for x in 0..n {
        let from = orbit_of[x];
        let to = orbit_of[a.model.phi.apply(x)];
        if induced[from] == UNSET {
            induced[from] = to;
        } else {
            assert_eq!(induced[from], to, "induced action must not depend on the representative");
        }
    }
    let phi = Perm::new(induced).expect("a well-defined induced map of orbits is a bijection");
    let model = FiniteOrbitModel::new(phi).expect("quotients are no larger than their sources");
    (model, orbit_of)
}

/// Degree and inertia data of an equivariant surjection of models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringStats {
    /// Largest fiber size.
    pub degree: usize,
    /// Per source point: `e(y) = delta(y) / delta(xi(y))`.
    pub inertia: Vec<usize>,
    /// Sizes of the fibers smaller than the degree, in target-point order.
    pub exceptional_fibers: Vec<usize>,
}

/// Validates that `xi` is an equivariant surjection `source -> target`,
/// then computes fiber sizes and the inertia map, and verifies the fiber
/// decomposition: the fiber over `x` is permuted by `phi^(delta(x))`, and
/// the cycle through `y` inside it has length exactly `e(y)`.
pub fn covering_stats(
    xi: &[usize],
    source: &FiniteOrbitModel,
    target: &FiniteOrbitModel,
) -> Result<CoveringStats, CovError> {
    if xi.len() != source.size() {
        return Err(CovError::SizeMismatch { expected: source.size(), found: xi.len() });
    }
    for (point, &image) in xi.iter().enumerate() {
        if image >= target.size() {
            return Err(CovError::BadProjection { point, image });
        }
    }
    for x in 0..source.size() {
        if xi[source.phi.apply(x)] != target.phi.apply(xi[x]) {
            return Err(CovError::NotEquivariant { point: x });
        }
    }
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); target.size()];
    for (x, &t) in xi.iter().enumerate() {
        fibers[t].push(x);
    }
    if let Some(point) = fibers.iter().position(Vec::is_empty) {
        return Err(CovError::NotSurjective { point });
    }
    let inertia: Vec<usize> = (0..source.size())
        .map(|y| {
            let up = source.orbit_degree(y);
            let down = target.orbit_degree(xi[y]);
            assert_eq!(up % down, 0, "an orbit upstairs covers its image a whole number of times");
            up / down
        })
        .collect();
    // Fiber decomposition under phi^(delta(x)).
    for (t, fiber) in fibers.iter().enumerate() {
        let step = target.orbit_degree(t) as u64;
        let stepped = source.phi.pow(step);
        for &y in fiber {
            let mut len = 1;
            let mut z = stepped.apply(y);
            while z != y {
                assert_eq!(xi[z], t, "phi^delta(x) must keep the fiber over x inside itself");
                len += 1;
                z = stepped.apply(z);
            }
            assert_eq!(len, inertia[y], "fiber cycles have length equal to the inertia");
        }
    }
    let degree = fibers.iter().map(Vec::len).max().unwrap_or(0);
    let exceptional_fibers = fibers.iter().map(Vec::len).filter(|&s| s < degree).collect();
    Ok(CoveringStats { degree, inertia, exceptional_fibers })
}

/// Exact two-sided evaluation of the fixed-point counting identity at
/// exponent `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideReport {
    pub r: u64,
    /// `sum_{h in H} |Fix(h phi^r)|`.
    pub lhs: u64,
    /// `|H| * |Fix(phi'^r)|` on the quotient.
    pub rhs: u64,
    pub pass: bool,
}

/// Verifies `sum_{h in H} |Fix(h phi^r)| = |H| |Fix(phi'^r)|` by explicit
/// counting on both sides.
pub fn burnside_identity_check(a: &GroupAction, r: u64) -> BurnsideReport {
    assert!(r >= 1, "the identity is stated for positive powers");
    let phi_r = a.model.phi.pow(r);
    let lhs = a.elements.iter().map(|h| h.compose(&phi_r).fixed_point_count()).sum();
    let (quot, _) = quotient(a);
    let rhs = a.order() as u64 * quot.fixed_points_of_power(r);
    BurnsideReport { r, lhs, rhs, pass: lhs == rhs }
}

/// The model twisted to the generator `h phi^n`. Requires `h` to commute
/// with `phi`; every orbit degree of the twist divides
/// `ord(h) * n * (original degree)`.
pub fn twist(m: &FiniteOrbitModel, h: &Perm, n: u64) -> Result<FiniteOrbitModel, CovError> {
    assert!(n >= 1, "twist exponent starts at 1");
    if h.len() != m.size() {
        return Err(CovError::SizeMismatch { expected: m.size(), found: h.len() });
    }
    let commutes = (0..m.size()).all(|x| h.apply(m.phi.apply(x)) == m.phi.apply(h.apply(x)));
    if !commutes {
        return Err(CovError::NotCommuting { index: 0 });
    }
    let twisted = h.compose(&m.phi.pow(n));
    Ok(FiniteOrbitModel::new(twisted).expect("twisting does not change the point count"))
}

/// Result of [`galois_closure_check`]: the two-step quotient diagram for
/// `H1 <= H` together with the covering data of the induced middle map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    /// `(|H|, |H1|, |H| / |H1|)`.
    pub degrees: (usize, usize, usize),
    /// `xi compose xi_{H1} = xi_H` held at every point.
    pub diagram_commutes: bool,
    /// Covering data of the induced map `N/H1 -> N/H`.
    pub stats: CoveringStats,
}

/// Builds the two quotients `M = N/H1` and `L = N/H` for a subgroup
/// `H1 <= H` (membership of the given generators in `H` is verified),
/// constructs the induced projection `M -> L`, and checks that the diagram
/// commutes pointwise and that the induced map is an equivariant covering.
pub fn galois_closure_check(
    action: &GroupAction,
    h1_generators: &[Perm],
) -> Result<ClosureReport, CovError> {
    for (index, g) in h1_generators.iter().enumerate() {
        if !action.elements.iter().any(|h| h == g) {
            return Err(CovError::NotSubgroup { index });
        }
    }
    let sub_action = GroupAction::new(action.model.clone(), h1_generators.to_vec())?;
    let (middle, xi_h1) = quotient(&sub_action);
    let (base, xi_h) = quotient(action);
    const UNSET: usize = usize::MAX;
    let mut induced = vec![UNSET; middle.size()];
    let mut diagram_commutes = true;
    for z in 0..action.model.size() {
        let slot = &mut induced[xi_h1[z]];
        if *slot == UNSET {
            *slot = xi_h[z];
        } else if *slot != xi_h[z] {
            diagram_commutes = false;
        }
    }
    let stats = covering_stats(&induced, &middle, &base)?;
    assert_eq!(action.order() % sub_action.order(), 0, "subgroup order divides the group order");
    Ok(ClosureReport {
        degrees: (action.order(), sub_action.order(), action.order() / sub_action.order()),
        diagram_commutes,
        stats,
    })
}

/// Outcome of [`rha_twist_experiment`]: the analogue verdicts before and
/// after twisting, with the polynomial quotients that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistExperiment {
    pub base_quotient: QuotientPoly,
    pub twisted_quotient: QuotientPoly,
    pub base: RhaReport,
    pub twisted: RhaReport,
    pub verdicts_match: bool,
    /// Exact-pair check `|a'_d| = |a_d|^(mn)` with the degree unchanged.
    pub lambda_consistent: bool,
}

/// Compares the analogue verdict of a module's quotient with the verdict
/// after twisting by a commuting element of order `m` and re-basing to the
/// `n`-th power: the twisted module's fixed points at depth `r` are the
/// original `N(m n r)` over base `q^(m n)`, so the twisted side runs the
/// exponential-form pipeline on exactly that table. The base side runs the
/// Euler-product pipeline; tolerance and detection window are shared.
pub fn rha_twist_experiment(
    s: &OrbitSpectrum,
    h_order: u32,
    n: u32,
    trunc: usize,
    tail: usize,
    tol: f64,
) -> Result<TwistExperiment, CovError> {
    assert!(h_order >= 1 && n >= 1, "twist parameters start at 1");
    let ctx = ZetaContext::new(s.base_q(), trunc)?;
    let z = zeta_euler(s, &ctx)?;
    let p = zeta_quotient(&z, &ctx)?;
    let base_quotient = match detect_polynomial(&p, tail, &ctx)? {
        Detection::Polynomial(qp) => qp,
        Detection::NotPolynomial { nonzero_at } => {
            return Err(CovError::QuotientNotPolynomial { nonzero_at })
        }
    };

    let mn = h_order as u64 * n as u64;
    let twisted_base = s
        .base_q()
        .checked_pow(u32::try_from(mn).map_err(|_| CovError::BaseOverflow)?)
        .ok_or(CovError::BaseOverflow)?;
    let deep = s.fixed_points(mn * trunc as u64).map_err(ZetaError::from)?;
    let values = (1..=trunc as u64).map(|r| deep.value(mn * r).clone()).collect();
    let twisted_table = FixedPointTable::new(twisted_base, values);
    let ctx2 = ZetaContext::new(twisted_base, trunc)?;
    let z2 = zeta_exp(&twisted_table, &ctx2)?;
    let p2 = zeta_quotient(&z2, &ctx2)?;
    let twisted_quotient = match detect_polynomial(&p2, tail, &ctx2)? {
        Detection::Polynomial(qp) => qp,
        Detection::NotPolynomial { nonzero_at } => {
            return Err(CovError::QuotientNotPolynomial { nonzero_at })
        }
    };

    let base = rha_check(&base_quotient, tol);
    let twisted = rha_check(&twisted_quotient, tol);
    let lambda_consistent = twisted_quotient.degree() == base_quotient.degree()
        && *twisted_quotient.lambda().abs_lead()
            == base_quotient.lambda().abs_lead().pow(u32::try_from(mn).unwrap());
    Ok(TwistExperiment {
        verdicts_match: base.verdict == twisted.verdict,
        base_quotient,
        twisted_quotient,
        base,
        twisted,
        lambda_consistent,
    })
}
