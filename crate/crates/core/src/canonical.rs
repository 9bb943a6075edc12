//! The coordinate-permutation action on semigroups: permuted copies, the
//! `≼_R` order on gap sequences, representatives and isomorphism tests.
//!
//! Two GNSs in ℕ^d are isomorphic exactly when one is a coordinate
//! permutation of the other, so every question here reduces to a finite
//! scan over P_d.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{GnsError, Result};
use crate::gns::GapSemigroup;
use crate::order::OrderSpec;
use crate::point::{all_permutations, generating_transpositions, orbit_point, Permutation, Point};

/// Which stage of [`is_representative`] decided the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepFilter {
    /// The smallest gap is not the smallest basis vector.
    MinGapLemma,
    /// Basis gaps of a 1-graded order are not an initial segment.
    GradedBasis,
    /// Accepted without a scan because the removed generator is ≼-minimal
    /// in its orbit.
    SafeGenerator,
    FullOrbitScan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepVerdict {
    pub is_representative: bool,
    /// A σ with `σ(S) ≺_R S`, present iff `is_representative` is false.
    pub witness: Option<Permutation>,
    pub filter: RepFilter,
}

impl RepVerdict {
    fn accept(filter: RepFilter) -> Self {
        RepVerdict { is_representative: true, witness: None, filter }
    }

    fn reject(witness: Permutation, filter: RepFilter) -> Self {
        RepVerdict { is_representative: false, witness: Some(witness), filter }
    }
}

pub fn permute_gns(sigma: &Permutation, s: &GapSemigroup) -> Result<GapSemigroup> {
    if sigma.dim() != s.dim() {
        return Err(GnsError::DimensionMismatch { expected: s.dim(), found: sigma.dim() });
    }
    Ok(permuted(sigma, s))
}

fn permuted(sigma: &Permutation, s: &GapSemigroup) -> GapSemigroup {
    GapSemigroup::from_gaps_unchecked(s.dim(), s.gaps().iter().map(|h| sigma.apply(h)).collect())
}

/// Compares two ≼-sorted gap sequences at their first difference.
#[inline]
fn cmp_sorted(order: &OrderSpec, a: &[Point], b: &[Point]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match order.cmp_points(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// The `≼_R` order on semigroups of equal genus and dimension.
pub fn compare_r(s1: &GapSemigroup, s2: &GapSemigroup, order: &OrderSpec) -> Result<Ordering> {
    if s1.dim() != s2.dim() {
        return Err(GnsError::DimensionMismatch { expected: s1.dim(), found: s2.dim() });
    }
    if s1.genus() != s2.genus() {
        return Err(GnsError::GenusMismatch(s1.genus(), s2.genus()));
    }
    Ok(cmp_sorted(order, &s1.sorted_gaps(order), &s2.sorted_gaps(order)))
}

/// Total order used to sort mixed-genus lists: genus first, then `≼_R`.
pub fn compare_sorted(s1: &GapSemigroup, s2: &GapSemigroup, order: &OrderSpec) -> Ordering {
    s1.dim()
        .cmp(&s2.dim())
        .then_with(|| s1.genus().cmp(&s2.genus()))
        .then_with(|| cmp_sorted(order, &s1.sorted_gaps(order), &s2.sorted_gaps(order)))
}

/// `min_{≼_R}` of the isomorphism class of `s`.
pub fn representative(s: &GapSemigroup, order: &OrderSpec) -> GapSemigroup {
    let mut best = s.sorted_gaps(order);
    let mut best_sigma: Option<Permutation> = None;
    let mut buf = Vec::with_capacity(s.genus());
    for sigma in all_permutations(s.dim()).skip(1) {
        buf.clear();
        buf.extend(s.gaps().iter().map(|h| sigma.apply(h)));
        order.sort(&mut buf);
        if cmp_sorted(order, &buf, &best) == Ordering::Less {
            std::mem::swap(&mut best, &mut buf);
            best_sigma = Some(sigma);
        }
    }
    match best_sigma {
        Some(sigma) => permuted(&sigma, s),
        None => s.clone(),
    }
}

fn smallest_basis_positions(dim: usize, order: &OrderSpec) -> Vec<usize> {
    let mut basis: Vec<Point> = (0..dim).map(|i| Point::unit(dim, i)).collect();
    order.sort(&mut basis);
    basis.iter().map(|b| b.unit_position().expect("unit vector")).collect()
}

/// Decides whether `s` is the `≼_R`-minimum of its class.
///
/// Cheap necessary conditions run first: the smallest gap must be the
/// smallest basis vector, and for 1-graded orders the basis gaps must be the
/// `r` smallest basis vectors. Otherwise every non-identity σ is tried.
pub fn is_representative(s: &GapSemigroup, order: &OrderSpec) -> RepVerdict {
    let d = s.dim();
    if s.genus() == 0 || d == 1 {
        return RepVerdict::accept(RepFilter::FullOrbitScan);
    }
    let sorted = s.sorted_gaps(order);
    let basis_rank = smallest_basis_positions(d, order);

    if let Some(pos) = sorted[0].unit_position() {
        if pos != basis_rank[0] {
            return RepVerdict::reject(Permutation::transposition(d, pos, basis_rank[0]), RepFilter::MinGapLemma);
        }
    }

    if order.is_one_graded() {
        let basis_gaps: Vec<usize> = sorted.iter().filter_map(|h| h.unit_position()).collect();
        let r = basis_gaps.len();
        if basis_gaps[..] != basis_rank[..r] {
            let sigma = moving_onto(d, &basis_gaps, &basis_rank[..r]);
            return RepVerdict::reject(sigma, RepFilter::GradedBasis);
        }
    }

    match find_smaller_copy(s, &sorted, order) {
        Some(sigma) => RepVerdict::reject(sigma, RepFilter::FullOrbitScan),
        None => RepVerdict::accept(RepFilter::FullOrbitScan),
    }
}

/// A permutation sending position `from[k]` to `to[k]`, with the remaining
/// positions matched in increasing order.
fn moving_onto(dim: usize, from: &[usize], to: &[usize]) -> Permutation {
    let mut images = vec![usize::MAX; dim];
    for (&a, &b) in from.iter().zip(to) {
        images[a] = b;
    }
    let mut free_targets = (0..dim).filter(|t| !to.contains(t));
    for slot in images.iter_mut() {
        if *slot == usize::MAX {
            *slot = free_targets.next().expect("bijection");
        }
    }
    Permutation::new(images).expect("bijection")
}

fn find_smaller_copy(s: &GapSemigroup, sorted: &[Point], order: &OrderSpec) -> Option<Permutation> {
    let mut buf = Vec::with_capacity(sorted.len());
    for sigma in all_permutations(s.dim()).skip(1) {
        buf.clear();
        buf.extend(s.gaps().iter().map(|h| sigma.apply(h)));
        // the first entry alone often decides
        let first = order.min(&buf).expect("nonempty");
        match order.cmp_points(&first, &sorted[0]) {
            Ordering::Greater => continue,
            Ordering::Less => return Some(sigma),
            Ordering::Equal => {}
        }
        order.sort(&mut buf);
        if cmp_sorted(order, &buf, sorted) == Ordering::Less {
            return Some(sigma);
        }
    }
    None
}

/// True when `n ≼ σ(n)` for every σ, which makes `S ∖ {n}` a
/// representative whenever `S` is one.
pub fn safe_child_generator(s: &GapSemigroup, n: &Point, order: &OrderSpec) -> bool {
    debug_assert!(s.is_minimal_generator(n));
    orbit_point(n).iter().all(|m| order.cmp_points(n, m) != Ordering::Greater)
}

/// Invariance under every coordinate permutation, checked on the adjacent
/// transpositions that generate P_d.
pub fn is_equivariant(s: &GapSemigroup) -> bool {
    generating_transpositions(s.dim()).iter().all(|t| s.gaps().iter().all(|h| s.is_gap(&t.apply(h))))
}

/// Some σ with `σ(s) = t`, if the two are isomorphic.
pub fn isomorphism_between(s: &GapSemigroup, t: &GapSemigroup) -> Option<Permutation> {
    if s.dim() != t.dim() || s.genus() != t.genus() {
        return None;
    }
    all_permutations(s.dim()).find(|sigma| s.gaps().iter().all(|h| t.is_gap(&sigma.apply(h))))
}

/// Number of distinct semigroups `σ(s)`.
pub fn orbit_size(s: &GapSemigroup) -> usize {
    if is_equivariant(s) {
        return 1;
    }
    all_permutations(s.dim())
        .map(|sigma| {
            let mut v: Vec<Point> = s.gaps().iter().map(|h| sigma.apply(h)).collect();
            v.sort_unstable();
            v
        })
        .collect::<HashSet<_>>()
        .len()
}
