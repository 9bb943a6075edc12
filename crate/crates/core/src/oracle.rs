//! Brute-force references for small genus, independent of the tree code.
//!
//! Every gap `h` of a genus-`g` semigroup satisfies `∏(h_i + 1) <= 2g`: each
//! of the `∏(h_i+1) − 2` points strictly between 0 and `h` pairs with its
//! complement, and at least one point of each pair is a gap. So all gap sets
//! of genus `g` live inside a finite [`CandidateBox`] and can be listed
//! by subset search.

use std::collections::BTreeSet;

use crate::canonical::representative;
use crate::error::{GnsError, Result};
use crate::gns::GapSemigroup;
use crate::order::OrderSpec;
use crate::point::{points_with_box_volume_at_most, Point, MAX_DIM};

/// Bounds on the instances the oracle agrees to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_genus: usize,
    pub max_dim: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_genus: 6, max_dim: 3 }
    }
}

impl OracleLimits {
    fn check(&self, genus: usize, dim: usize) -> Result<()> {
        if dim == 0 || dim > MAX_DIM {
            return Err(GnsError::UnsupportedDimension(dim));
        }
        if genus > self.max_genus || dim > self.max_dim {
            return Err(GnsError::ResourceLimit(format!(
                "brute force is limited to g <= {} and d <= {} (asked g = {genus}, d = {dim})",
                self.max_genus, self.max_dim
            )));
        }
        Ok(())
    }
}

/// All nonzero points that can be a gap of some genus-`g` semigroup in ℕ^d,
/// sorted by total degree and then lexicographically. That order extends the
/// natural partial order, so every `a < h` comes before `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateBox {
    pub dim: usize,
    pub genus: usize,
    pub points: Vec<Point>,
}

impl CandidateBox {
    pub fn new(genus: usize, dim: usize) -> Self {
        let mut points: Vec<Point> =
            points_with_box_volume_at_most(dim, 2 * genus as u64).into_iter().filter(|x| !x.is_zero()).collect();
        OrderSpec::Glex.sort(&mut points);
        CandidateBox { dim, genus, points }
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.dim() == self.dim && !x.is_zero() && x.box_volume() <= 2 * self.genus as u64
    }
}

/// True when every gap of `s` lies in the candidate box for its genus.
pub fn within_candidate_bound(s: &GapSemigroup) -> bool {
    let bound = 2 * s.genus() as u64;
    s.gaps().iter().all(|h| h.box_volume() <= bound)
}

pub fn brute_force_all(genus: usize, dim: usize) -> Result<BTreeSet<GapSemigroup>> {
    brute_force_all_with(genus, dim, &OracleLimits::default())
}

/// Every genus-`g` semigroup in ℕ^d, found by depth-first subset search over
/// the candidate box. A point may only join the gap set when every split
/// `h = a + (h − a)` with `0 < a < h` already has a gap on one side; since
/// the box is scanned in a linear extension of the natural order, that test
/// is exact at the moment `h` is considered.
pub fn brute_force_all_with(genus: usize, dim: usize, limits: &OracleLimits) -> Result<BTreeSet<GapSemigroup>> {
    limits.check(genus, dim)?;
    let cand = CandidateBox::new(genus, dim);
    let mut out = BTreeSet::new();
    let mut chosen: Vec<Point> = Vec::with_capacity(genus);
    search(&cand.points, 0, genus, &mut chosen, &mut |gaps| {
        out.insert(GapSemigroup::from_gaps_unchecked(dim, gaps.to_vec()));
    });
    Ok(out)
}

fn search(points: &[Point], from: usize, genus: usize, chosen: &mut Vec<Point>, emit: &mut dyn FnMut(&[Point])) {
    if chosen.len() == genus {
        emit(chosen);
        return;
    }
    let needed = genus - chosen.len();
    for i in from..points.len() {
        if points.len() - i < needed {
            return;
        }
        let h = points[i];
        if admissible(&h, chosen) {
            chosen.push(h);
            search(points, i + 1, genus, chosen, emit);
            chosen.pop();
        }
    }
}

fn admissible(h: &Point, chosen: &[Point]) -> bool {
    let is_gap = |x: &Point| chosen.contains(x);
    h.lower_box()
        .iter()
        .filter(|a| !a.is_zero() && *a != h)
        .all(|a| is_gap(a) || is_gap(&h.checked_sub(a).expect("a <= h")))
}

pub fn brute_force_representatives(genus: usize, dim: usize, order: &OrderSpec) -> Result<BTreeSet<GapSemigroup>> {
    brute_force_representatives_with(genus, dim, order, &OracleLimits::default())
}

/// `{representative(S) : S ∈ brute_force_all(g, d)}`.
pub fn brute_force_representatives_with(
    genus: usize,
    dim: usize,
    order: &OrderSpec,
    limits: &OracleLimits,
) -> Result<BTreeSet<GapSemigroup>> {
    Ok(brute_force_all_with(genus, dim, limits)?.iter().map(|s| representative(s, order)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let one = brute_force_all(1, 2).unwrap();
        let expected: BTreeSet<_> = [Point::of(&[0, 1]), Point::of(&[1, 0])]
            .into_iter()
            .map(|h| GapSemigroup::validate([h], 2).unwrap())
            .collect();
        assert_eq!(one, expected);
        assert_eq!(brute_force_all(0, 3).unwrap().len(), 1);
        assert_eq!(brute_force_representatives(1, 1, &OrderSpec::Lex).unwrap().len(), 1);
    }

    #[test]
    fn every_result_validates() {
        for d in 1..=3 {
            for g in 0..=4 {
                for s in brute_force_all(g, d).unwrap() {
                    assert_eq!(s.genus(), g);
                    assert!(GapSemigroup::validate(s.gaps().to_vec(), d).is_ok(), "{s:?}");
                    assert!(within_candidate_bound(&s));
                }
            }
        }
    }

    #[test]
    fn numerical_semigroups_by_genus() {
        // d = 1 against a direct scan of all gap subsets of {1, …, 2g}
        for g in 0..=6 {
            let mut direct = 0;
            let n = 2 * g;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != g {
                    continue;
                }
                let gaps: Vec<Point> =
                    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| Point::of(&[i as u32 + 1])).collect();
                if GapSemigroup::validate(gaps, 1).is_ok() {
                    direct += 1;
                }
            }
            assert_eq!(brute_force_all(g, 1).unwrap().len(), direct);
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(brute_force_all(7, 2), Err(GnsError::ResourceLimit(_))));
        assert!(matches!(brute_force_all(2, 4), Err(GnsError::ResourceLimit(_))));
        let wide = OracleLimits { max_genus: 2, max_dim: 4 };
        assert_eq!(brute_force_all_with(1, 4, &wide).unwrap().len(), 4);
    }

    #[test]
    fn box_membership() {
        let b = CandidateBox::new(3, 2);
        assert!(b.points.iter().all(|x| b.contains(x)));
        assert!(b.contains(&Point::of(&[0, 5])));
        assert!(!b.contains(&Point::of(&[0, 6])));
        assert!(b.contains(&Point::of(&[1, 2])));
        assert!(!b.contains(&Point::of(&[1, 3])));
    }
}
