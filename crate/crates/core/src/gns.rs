//! Generalized numerical semigroups represented by their finite gap sets.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{GnsError, Result};
use crate::order::OrderSpec;
use crate::point::{points_with_box_volume_at_most, Point, MAX_DIM};

/// A submonoid `S` of ℕ^d with finite complement, stored as its gap set
/// `H(S) = ℕ^d ∖ S` sorted lexicographically.
///
/// The minimal generating set is computed on first use and cached.
#[derive(Clone)]
pub struct GapSemigroup {
    dim: usize,
    gaps: Vec<Point>,
    generators: OnceLock<Vec<Point>>,
}

impl PartialEq for GapSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.gaps == other.gaps
    }
}

impl Eq for GapSemigroup {}

impl Hash for GapSemigroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.gaps.hash(state);
    }
}

impl PartialOrd for GapSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical storage order (dimension, then lex-sorted gap sequence). This
/// is not the `≼_R` order; see [`crate::canonical::compare_r`].
impl Ord for GapSemigroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dim.cmp(&other.dim).then_with(|| self.gaps.cmp(&other.gaps))
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(GnsError::UnsupportedDimension(dim));
    }
    Ok(())
}

impl GapSemigroup {
    /// ℕ^d itself (genus 0).
    pub fn full(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "unsupported dimension {dim}");
        GapSemigroup { dim, gaps: Vec::new(), generators: OnceLock::new() }
    }

    /// Checks that `ℕ^d ∖ gaps` is closed under addition.
    ///
    /// For each gap `h` every `a` with `0 < a < h` is tried; if neither `a`
    /// nor `h − a` is a gap, `h` would be forced into the monoid.
    pub fn validate<I: IntoIterator<Item = Point>>(gaps: I, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut gaps: Vec<Point> = gaps.into_iter().collect();
        for h in &gaps {
            if h.dim() != dim {
                return Err(GnsError::DimensionMismatch { expected: dim, found: h.dim() });
            }
            if h.is_zero() {
                return Err(GnsError::ZeroGap);
            }
        }
        gaps.sort_unstable();
        gaps.dedup();
        let s = GapSemigroup { dim, gaps, generators: OnceLock::new() };
        for h in &s.gaps {
            for a in h.lower_box() {
                if a.is_zero() || a == *h {
                    continue;
                }
                let b = h.checked_sub(&a).expect("a <= h");
                if !s.is_gap(&a) && !s.is_gap(&b) {
                    return Err(GnsError::NotAMonoid { h: *h, a, b });
                }
            }
        }
        Ok(s)
    }

    /// Builds a semigroup from gaps known to satisfy the closure condition.
    pub(crate) fn from_gaps_unchecked(dim: usize, mut gaps: Vec<Point>) -> Self {
        gaps.sort_unstable();
        debug_assert!(gaps.windows(2).all(|w| w[0] != w[1]));
        GapSemigroup { dim, gaps, generators: OnceLock::new() }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Gaps in lexicographic order.
    #[inline]
    pub fn gaps(&self) -> &[Point] {
        &self.gaps
    }

    pub fn sorted_gaps(&self, order: &OrderSpec) -> Vec<Point> {
        let mut v = self.gaps.clone();
        if *order != OrderSpec::Lex {
            order.sort(&mut v);
        }
        v
    }

    #[inline]
    pub fn is_gap(&self, x: &Point) -> bool {
        self.gaps.binary_search(x).is_ok()
    }

    /// Membership test. Points of the wrong dimension are never members.
    #[inline]
    pub fn contains(&self, x: &Point) -> bool {
        x.dim() == self.dim && !self.is_gap(x)
    }

    /// Per-axis conductor: `1 + max` gap coordinate on each axis, or 0 when
    /// no gap has a nonzero coordinate there.
    pub fn conductor(&self) -> Point {
        let mut c = Point::zero(self.dim);
        for h in &self.gaps {
            for i in 0..self.dim {
                let v = h.get(i);
                if v > 0 && v + 1 > c.get(i) {
                    c = c.with_coord(i, v + 1);
                }
            }
        }
        c
    }

    /// The minimal generating set `A(S) = S* ∖ (S* + S*)`, lex-sorted.
    pub fn minimal_generators(&self) -> &[Point] {
        self.generators.get_or_init(|| self.compute_generators())
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal_generators().len()
    }

    fn compute_generators(&self) -> Vec<Point> {
        // A nonzero x ∈ S is a minimal generator iff each of the
        // box_volume(x) − 2 points a with 0 < a < x has a ∈ H or x − a ∈ H.
        // Each gap covers at most two such points, hence box_volume(x) <= 2g + 2.
        let bound = 2 * self.genus() as u64 + 2;
        let mut below: Vec<Point> = Vec::with_capacity(self.genus());
        points_with_box_volume_at_most(self.dim, bound)
            .into_iter()
            .filter(|x| !x.is_zero() && !self.is_gap(x))
            .filter(|x| {
                below.clear();
                below.extend(self.gaps.iter().filter(|h| h.leq(x)));
                let interior = x.box_volume() - 2;
                if 2 * (below.len() as u64) < interior {
                    return false;
                }
                let paired = below.iter().filter(|h| self.is_gap(&x.checked_sub(h).expect("h <= x"))).count() as u64;
                let covered = 2 * below.len() as u64 - paired;
                covered == interior
            })
            .collect()
    }

    pub fn is_minimal_generator(&self, x: &Point) -> bool {
        self.minimal_generators().binary_search(x).is_ok()
    }

    /// Gaps `h` with `h + s ∈ S` for every nonzero `s ∈ S`. Checking the
    /// minimal generators suffices.
    pub fn pseudo_frobenius(&self) -> Vec<Point> {
        let gens = self.minimal_generators();
        self.gaps.iter().filter(|h| gens.iter().all(|a| !self.is_gap(&h.add(a)))).copied().collect()
    }

    /// Pseudo-Frobenius elements `h` with `2h ∈ S`; exactly the gaps whose
    /// adjunction keeps `S` a monoid.
    pub fn special_gaps(&self) -> Vec<Point> {
        self.pseudo_frobenius().into_iter().filter(|h| !self.is_gap(&h.double())).collect()
    }

    pub fn is_special_gap(&self, h: &Point) -> bool {
        self.is_gap(h) && !self.is_gap(&h.double()) && self.minimal_generators().iter().all(|a| !self.is_gap(&h.add(a)))
    }

    /// Gaps maximal for the natural partial order.
    pub fn maximal_gaps(&self) -> Vec<Point> {
        self.gaps.iter().filter(|h| !self.gaps.iter().any(|k| k != *h && h.leq(k))).copied().collect()
    }

    /// `S ∪ {h}`; succeeds iff `h` is a special gap.
    pub fn extend(&self, h: &Point) -> Result<GapSemigroup> {
        self.check_point(h)?;
        if !self.is_gap(h) {
            return Err(GnsError::NotAGap(*h));
        }
        if !self.is_special_gap(h) {
            return Err(GnsError::NotSpecialGap(*h));
        }
        Ok(self.with_gap_filled(h))
    }

    /// `S ∖ {n}` for a minimal generator `n`.
    pub fn remove_generator(&self, n: &Point) -> Result<GapSemigroup> {
        self.check_point(n)?;
        if !self.is_minimal_generator(n) {
            return Err(GnsError::NotMinimalGenerator(*n));
        }
        Ok(self.with_gap_added(n))
    }

    pub(crate) fn with_gap_added(&self, n: &Point) -> GapSemigroup {
        let mut gaps = Vec::with_capacity(self.gaps.len() + 1);
        let pos = self.gaps.binary_search(n).expect_err("already a gap");
        gaps.extend_from_slice(&self.gaps[..pos]);
        gaps.push(*n);
        gaps.extend_from_slice(&self.gaps[pos..]);
        GapSemigroup { dim: self.dim, gaps, generators: OnceLock::new() }
    }

    pub(crate) fn with_gap_filled(&self, h: &Point) -> GapSemigroup {
        let gaps = self.gaps.iter().filter(|g| *g != h).copied().collect();
        GapSemigroup { dim: self.dim, gaps, generators: OnceLock::new() }
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim {
            return Err(GnsError::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    /// `max_≼ H(S)`; `None` for ℕ^d.
    pub fn frobenius_element(&self, order: &OrderSpec) -> Option<Point> {
        order.max(&self.gaps)
    }

    /// `min_≼ S*`, attained on a minimal generator.
    pub fn multiplicity(&self, order: &OrderSpec) -> Point {
        order.min(self.minimal_generators()).expect("a GNS always has generators")
    }

    /// Minimal generators strictly above the Frobenius element, sorted by `order`.
    pub fn u_set(&self, order: &OrderSpec) -> Vec<Point> {
        let f = self.frobenius_element(order);
        let mut out: Vec<Point> =
            self.minimal_generators().iter().filter(|x| f.is_none_or(|f| order.lt(&f, x))).copied().collect();
        order.sort(&mut out);
        out
    }

    /// Apéry elements `x ∈ S`, `x − n ∉ S`, restricted to `x <= bound`.
    pub fn apery_in_box(&self, n: &Point, bound: &Point) -> Result<Vec<Point>> {
        self.check_point(n)?;
        self.check_point(bound)?;
        if n.is_zero() || self.is_gap(n) {
            return Err(GnsError::NotAnElement(*n));
        }
        Ok(bound
            .lower_box()
            .into_iter()
            .filter(|x| !self.is_gap(x))
            .filter(|x| x.checked_sub(n).is_none_or(|y| self.is_gap(&y)))
            .collect())
    }

    /// Number of axes touched by some gap, i.e. `dim Span_ℝ H(S)`.
    pub fn gap_span_dimension(&self) -> usize {
        (0..self.dim).filter(|&i| self.gaps.iter().any(|h| h.get(i) > 0)).count()
    }

    /// Gap list in the textual form `[(a,b),(c,d)]`, sorted by `order`.
    pub fn gap_list(&self, order: &OrderSpec) -> String {
        format_point_list(&self.sorted_gaps(order))
    }
}

pub fn format_point_list(points: &[Point]) -> String {
    let mut s = String::with_capacity(2 + points.len() * (3 + 2 * points.first().map_or(1, |p| p.dim())));
    s.push('[');
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&p.to_string());
    }
    s.push(']');
    s
}

/// Parses `[(a,b),(c,d),…]`. An empty list needs `dim` to be given.
pub fn parse_point_list(s: &str, dim: Option<usize>) -> Result<Vec<Point>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| GnsError::Parse(format!("expected a bracketed list, got {s:?}")))?
        .trim();
    let mut out = Vec::new();
    if inner.is_empty() {
        return Ok(out);
    }
    let mut rest = inner;
    loop {
        let close = rest.find(')').ok_or_else(|| GnsError::Parse(format!("unterminated tuple in {s:?}")))?;
        let p: Point = rest[..=close].parse()?;
        if let Some(d) = dim {
            if p.dim() != d {
                return Err(GnsError::DimensionMismatch { expected: d, found: p.dim() });
            }
        }
        out.push(p);
        rest = rest[close + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| GnsError::Parse(format!("expected ',' between tuples in {s:?}")))?
            .trim_start();
    }
    Ok(out)
}

impl GapSemigroup {
    /// Parses and validates a gap list such as `[(0,1),(1,0)]`.
    pub fn parse(s: &str, dim: Option<usize>) -> Result<Self> {
        let pts = parse_point_list(s, dim)?;
        let d = match (dim, pts.first()) {
            (Some(d), _) => d,
            (None, Some(p)) => p.dim(),
            (None, None) => return Err(GnsError::Parse("empty gap list needs an explicit dimension".into())),
        };
        GapSemigroup::validate(pts, d)
    }
}

impl fmt::Display for GapSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_point_list(&self.gaps))
    }
}

impl fmt::Debug for GapSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N^{}\\{}", self.dim, self)
    }
}
