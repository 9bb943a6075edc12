//! Relaxed monomial orders on ℕ^d.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{GnsError, Result};
use crate::point::Point;

/// Monomial orders usable as the base of [`OrderSpec::Order1`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseOrder {
    Lex,
    Glex,
}

/// Selector for one of the supported relaxed monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum OrderSpec {
    /// Lexicographic, first tuple coordinate most significant.
    #[default]
    Lex,
    /// Total degree, ties broken by `Lex`.
    Glex,
    /// Points on the last axis first (ordered naturally), then everything
    /// else ordered by the base order. Relaxed but not monomial.
    Order1(BaseOrder),
}

#[inline]
fn lex(a: &Point, b: &Point) -> Ordering {
    a.coords().cmp(b.coords())
}

#[inline]
fn glex(a: &Point, b: &Point) -> Ordering {
    a.sum().cmp(&b.sum()).then_with(|| lex(a, b))
}

/// Membership in X_d: every coordinate except the last one is zero.
#[inline]
fn on_last_axis(a: &Point) -> bool {
    let c = a.coords();
    c[..c.len() - 1].iter().all(|&v| v == 0)
}

impl OrderSpec {
    /// The order1 variant with the default glex base.
    pub const ORDER1: OrderSpec = OrderSpec::Order1(BaseOrder::Glex);

    /// Compares two points of the same dimension.
    #[inline]
    pub fn cmp_points(&self, a: &Point, b: &Point) -> Ordering {
        debug_assert_eq!(a.dim(), b.dim());
        match self {
            OrderSpec::Lex => lex(a, b),
            OrderSpec::Glex => glex(a, b),
            OrderSpec::Order1(base) => match (on_last_axis(a), on_last_axis(b)) {
                (true, true) => lex(a, b),
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                (false, false) => match base {
                    BaseOrder::Lex => lex(a, b),
                    BaseOrder::Glex => glex(a, b),
                },
            },
        }
    }

    pub fn compare(&self, a: &Point, b: &Point) -> Result<Ordering> {
        if a.dim() != b.dim() {
            return Err(GnsError::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        Ok(self.cmp_points(a, b))
    }

    #[inline]
    pub fn lt(&self, a: &Point, b: &Point) -> bool {
        self.cmp_points(a, b) == Ordering::Less
    }

    pub fn sort(&self, points: &mut [Point]) {
        points.sort_unstable_by(|a, b| self.cmp_points(a, b));
    }

    pub fn min<'a, I: IntoIterator<Item = &'a Point>>(&self, points: I) -> Option<Point> {
        points.into_iter().min_by(|a, b| self.cmp_points(a, b)).copied()
    }

    pub fn max<'a, I: IntoIterator<Item = &'a Point>>(&self, points: I) -> Option<Point> {
        points.into_iter().max_by(|a, b| self.cmp_points(a, b)).copied()
    }

    /// Translation invariant (a ≺ b ⇒ a+u ≺ b+u).
    pub fn is_monomial(&self) -> bool {
        !matches!(self, OrderSpec::Order1(_))
    }

    /// Every non-basis nonzero point lies above every basis vector.
    /// Structural: only glex qualifies among the supported orders.
    pub fn is_one_graded(&self) -> bool {
        matches!(self, OrderSpec::Glex)
    }

    /// Orders for which the fixed-genus tree is known to be valid.
    pub fn is_o_good(&self) -> bool {
        matches!(self, OrderSpec::Lex | OrderSpec::Order1(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            OrderSpec::Lex => "lex",
            OrderSpec::Glex => "glex",
            OrderSpec::Order1(BaseOrder::Glex) => "order1",
            OrderSpec::Order1(BaseOrder::Lex) => "order1-lex",
        }
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderSpec {
    type Err = GnsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderSpec::Lex),
            "glex" => Ok(OrderSpec::Glex),
            "order1" | "order1-glex" => Ok(OrderSpec::Order1(BaseOrder::Glex)),
            "order1-lex" => Ok(OrderSpec::Order1(BaseOrder::Lex)),
            other => Err(GnsError::Parse(format!("unknown order {other:?}"))),
        }
    }
}
