//! Points of ℕ^d and the coordinate-permutation action on them.
//!
//! Points are plain left-to-right tuples. The standard basis follows the
//! convention `e_1 = (0,…,0,1)`, …, `e_d = (1,0,…,0)`, so that
//! `e_1 ≺ e_2 ≺ … ≺ e_d` under the lexicographic order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{GnsError, Result};

/// Largest supported ambient dimension (`8! = 40320` permutations).
pub const MAX_DIM: usize = 8;

/// A point of ℕ^d with `d <= MAX_DIM`.
///
/// The derived `Ord` is the lexicographic order on tuples of equal
/// dimension; gap sets are stored sorted by it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    dim: u8,
    coords: [u16; MAX_DIM],
}

impl Point {
    pub fn new(coords: &[u32]) -> Result<Self> {
        let dim = coords.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(GnsError::UnsupportedDimension(dim));
        }
        let mut c = [0u16; MAX_DIM];
        for (slot, &v) in c.iter_mut().zip(coords) {
            *slot = u16::try_from(v).map_err(|_| GnsError::CoordinateOverflow(v as u64))?;
        }
        Ok(Point { dim: dim as u8, coords: c })
    }

    /// Builds a point from a slice; panics on an unsupported dimension or an
    /// oversized coordinate. Meant for literals in tests and examples.
    pub fn of(coords: &[u32]) -> Self {
        Self::new(coords).expect("valid point literal")
    }

    pub fn zero(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "unsupported dimension {dim}");
        Point { dim: dim as u8, coords: [0; MAX_DIM] }
    }

    /// The unit vector with a 1 at tuple position `pos` (0-based).
    pub fn unit(dim: usize, pos: usize) -> Self {
        let mut p = Self::zero(dim);
        p.coords[pos] = 1;
        p
    }

    /// The basis vector `e_i` (1-based) in the `e_1 = (0,…,0,1)` convention.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim);
        Self::unit(dim, dim - i)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[u16] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub fn get(&self, pos: usize) -> u16 {
        self.coords[pos]
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&c| c == 0)
    }

    #[inline]
    pub fn sum(&self) -> u32 {
        self.coords().iter().map(|&c| c as u32).sum()
    }

    /// Number of lattice points `a` with `0 <= a <= self`.
    pub fn box_volume(&self) -> u64 {
        self.coords().iter().map(|&c| c as u64 + 1).product()
    }

    /// Tuple position of the single nonzero coordinate, if this is a unit vector.
    pub fn unit_position(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.coords().iter().enumerate() {
            match (c, found) {
                (0, _) => {}
                (1, None) => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// Natural partial order: `self <= other` componentwise.
    #[inline]
    pub fn leq(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        self.coords().iter().zip(other.coords()).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = *self;
        for i in 0..self.dim() {
            out.coords[i] = self.coords[i].checked_add(other.coords[i]).expect("coordinate overflow");
        }
        out
    }

    #[inline]
    pub fn double(&self) -> Point {
        self.add(self)
    }

    /// `self - other` when `other <= self`.
    #[inline]
    pub fn checked_sub(&self, other: &Point) -> Option<Point> {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = *self;
        for i in 0..self.dim() {
            out.coords[i] = self.coords[i].checked_sub(other.coords[i])?;
        }
        Some(out)
    }

    pub(crate) fn with_coord(mut self, pos: usize, value: u16) -> Point {
        self.coords[pos] = value;
        self
    }

    /// All points `a` with `0 <= a <= self`, in lexicographic order.
    pub fn lower_box(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.box_volume() as usize);
        let mut cur = Point::zero(self.dim());
        loop {
            out.push(cur);
            let mut pos = self.dim();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if cur.coords[pos] < self.coords[pos] {
                    cur.coords[pos] += 1;
                    break;
                }
                cur.coords[pos] = 0;
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Point {
    type Err = GnsError;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| GnsError::Parse(format!("expected a parenthesized tuple, got {s:?}")))?;
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| GnsError::Parse(format!("bad coordinate {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Point::new(&coords)
    }
}

/// Points `x` (zero included) with `∏(x_i + 1) <= bound`, in lexicographic order.
pub fn points_with_box_volume_at_most(dim: usize, bound: u64) -> Vec<Point> {
    fn rec(dim: usize, pos: usize, budget: u64, cur: &mut Point, out: &mut Vec<Point>) {
        if pos == dim {
            out.push(*cur);
            return;
        }
        let mut v = 0u64;
        while v < budget {
            cur.coords[pos] = v as u16;
            rec(dim, pos + 1, budget / (v + 1), cur, out);
            v += 1;
        }
        cur.coords[pos] = 0;
    }
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    let mut cur = Point::zero(dim);
    rec(dim, 0, bound, &mut cur, &mut out);
    out
}

/// A permutation σ of the coordinate positions, acting on points by
/// sending coordinate `i` to position `σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// `images[i] = σ(i)`, 0-based.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d == 0 || d > MAX_DIM {
            return Err(GnsError::UnsupportedDimension(d));
        }
        let mut seen = [false; MAX_DIM];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(GnsError::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u8).collect() })
    }

    pub fn identity(dim: usize) -> Self {
        Permutation { images: (0..dim as u8).collect() }
    }

    /// Builds a permutation from cycles written with 1-based positions,
    /// e.g. `from_cycles(3, &[&[1, 3]])` is the transposition (13).
    pub fn from_cycles(dim: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..dim).collect();
        let mut touched = vec![false; dim];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > dim || b == 0 || b > dim || touched[a - 1] {
                    return Err(GnsError::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Permutation::new(images)
    }

    /// Transposition of the 0-based positions `a` and `b`.
    pub fn transposition(dim: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<u8> = (0..dim as u8).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Permutation { images }
    }

    #[inline]
    pub fn apply(&self, x: &Point) -> Point {
        debug_assert_eq!(self.images.len(), x.dim());
        let mut out = *x;
        for (i, &j) in self.images.iter().enumerate() {
            out.coords[j as usize] = x.coords[i];
        }
        out
    }

    pub fn try_apply(&self, x: &Point) -> Result<Point> {
        if self.dim() != x.dim() {
            return Err(GnsError::DimensionMismatch { expected: self.dim(), found: x.dim() });
        }
        Ok(self.apply(x))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based positions; the identity prints as `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let mut seen = vec![false; self.dim()];
        for start in 0..self.dim() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            f.write_str("(")?;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                write!(f, "{}", i + 1)?;
                i = self.image(i);
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Iterator over all of P_d in lexicographic order of image sequences,
/// starting with the identity.
pub struct Permutations {
    next: Option<Vec<u8>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: cur })
    }
}

pub fn all_permutations(dim: usize) -> Permutations {
    assert!((1..=MAX_DIM).contains(&dim), "unsupported dimension {dim}");
    Permutations { next: Some((0..dim as u8).collect()) }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The d−1 adjacent transpositions `(i, i+1)`, which generate P_d.
pub fn generating_transpositions(dim: usize) -> Vec<Permutation> {
    (0..dim.saturating_sub(1)).map(|i| Permutation::transposition(dim, i, i + 1)).collect()
}

/// All distinct coordinate permutations of `x`.
pub fn orbit_point(x: &Point) -> BTreeSet<Point> {
    let mut coords: Vec<u16> = x.coords().to_vec();
    coords.sort_unstable();
    let mut out = BTreeSet::new();
    loop {
        let mut p = *x;
        p.coords[..coords.len()].copy_from_slice(&coords);
        out.insert(p);
        if !next_permutation(&mut coords) {
            return out;
        }
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
