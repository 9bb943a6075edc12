//! Count tables: `n_{g,d}` (all semigroups), `N_{g,d}` (up to isomorphism),
//! equivariant counts and the span-stratified counts `N^{(r)}_{g,d}`, plus
//! checks of the sum identity and of stabilization in the dimension.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::Duration;

use crate::clock::Stopwatch;
use crate::error::{GnsError, Result};
use crate::order::OrderSpec;
use crate::trees::{traverse, TraversalOptions, TreeKind, TreeRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMode {
    Full,
    Representative,
    Equivariant,
    SpanStratified,
}

impl CountMode {
    pub fn name(&self) -> &'static str {
        match self {
            CountMode::Full => "full",
            CountMode::Representative => "representative",
            CountMode::Equivariant => "equivariant",
            CountMode::SpanStratified => "span-stratified",
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub g: usize,
    pub count: u64,
    pub mode: CountMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountMeta {
    pub elapsed: Duration,
    pub tree: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub dim: usize,
    pub order: String,
    pub rows: Vec<CountRow>,
    /// `span_counts[k][r-1] = N^{(r)}_{g,d}` for the genus of `rows[k]`.
    pub span_counts: Option<Vec<Vec<u64>>>,
    pub meta: CountMeta,
}

impl CountTable {
    pub fn count_at(&self, g: usize) -> Option<u64> {
        self.rows.iter().find(|r| r.g == g).map(|r| r.count)
    }

    pub fn counts(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.count).collect()
    }
}

fn mode_of(rule: TreeRule) -> CountMode {
    match rule {
        TreeRule::Full => CountMode::Full,
        TreeRule::Representative | TreeRule::FixedGenus => CountMode::Representative,
        TreeRule::Equivariant => CountMode::Equivariant,
    }
}

pub fn count(kind: &TreeKind, dim: usize, g_max: usize) -> Result<CountTable> {
    count_with(kind, dim, g_max, &TraversalOptions::default())
}

/// Counts per genus `0..=g_max`.
///
/// Full and representative trees give every row in one traversal. The
/// equivariant tree is walked up to genus `g_max`. The fixed-genus tree
/// builds one tree per genus; the kind's own target genus is ignored.
pub fn count_with(kind: &TreeKind, dim: usize, g_max: usize, opts: &TraversalOptions) -> Result<CountTable> {
    let start = Stopwatch::start();
    let counts: Vec<u64> = match kind.rule() {
        TreeRule::FixedGenus => {
            let mut v = Vec::with_capacity(g_max + 1);
            for g in 0..=g_max {
                let report = traverse(&kind.with_genus(g), dim, usize::MAX, opts, |_, _| {})?;
                debug_assert_eq!(report.duplicates, 0);
                v.push(report.total_nodes());
            }
            v
        }
        _ => {
            let report = traverse(kind, dim, g_max, opts, |_, _| {})?;
            (0..=g_max).map(|g| report.genus_counts.get(g).copied().unwrap_or(0)).collect()
        }
    };
    let mode = mode_of(kind.rule());
    Ok(CountTable {
        dim,
        order: kind.order().name().to_string(),
        rows: counts.into_iter().enumerate().map(|(g, count)| CountRow { g, count, mode }).collect(),
        span_counts: None,
        meta: CountMeta { elapsed: start.elapsed(), tree: kind.rule().name().to_string() },
    })
}

/// Representatives of genus `0..=g_max` classified by `dim Span H(S)` in
/// the same traversal. Row `g` has `min(g, d)` span entries.
pub fn count_span_stratified(
    dim: usize,
    g_max: usize,
    order: &OrderSpec,
    opts: &TraversalOptions,
) -> Result<CountTable> {
    let start = Stopwatch::start();
    let cells: Vec<Vec<AtomicU64>> =
        (0..=g_max).map(|g| (0..g.min(dim)).map(|_| AtomicU64::new(0)).collect()).collect();
    let report = traverse(&TreeKind::representative(*order), dim, g_max, opts, |_, s| {
        let r = s.gap_span_dimension();
        if r > 0 {
            cells[s.genus()][r - 1].fetch_add(1, AtomicOrdering::Relaxed);
        }
    })?;
    let span_counts: Vec<Vec<u64>> =
        cells.iter().map(|row| row.iter().map(|c| c.load(AtomicOrdering::Relaxed)).collect()).collect();
    let rows = (0..=g_max)
        .map(|g| CountRow {
            g,
            count: report.genus_counts.get(g).copied().unwrap_or(0),
            mode: CountMode::SpanStratified,
        })
        .collect();
    Ok(CountTable {
        dim,
        order: order.name().to_string(),
        rows,
        span_counts: Some(span_counts),
        meta: CountMeta { elapsed: start.elapsed(), tree: TreeRule::Representative.name().to_string() },
    })
}

/// `(N^{(1)}_{g,d}, …, N^{(q)}_{g,d})` with `q = min(g, d)`.
pub fn count_by_span(dim: usize, genus: usize, order: &OrderSpec) -> Result<Vec<u64>> {
    if genus == 0 {
        return Err(GnsError::InvalidArgument("span counts need g >= 1".into()));
    }
    let table = count_span_stratified(dim, genus, order, &TraversalOptions::default())?;
    Ok(table.span_counts.expect("span-stratified table").swap_remove(genus))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumIdentityReport {
    pub g: usize,
    pub d: usize,
    /// `N_{g,d}` from the representative tree in dimension `d`.
    pub left: u64,
    /// `(n, N^{(n)}_{g,n})` for `n = 1..=min(g, d)`.
    pub terms: Vec<(usize, u64)>,
    pub right: u64,
}

impl SumIdentityReport {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

pub fn verify_sum_identity(genus: usize, dim: usize) -> Result<SumIdentityReport> {
    verify_sum_identity_with(genus, dim, &TraversalOptions::default())
}

/// Computes `N_{g,d}` and `Σ_{n=1}^{min(g,d)} N^{(n)}_{g,n}` independently.
pub fn verify_sum_identity_with(genus: usize, dim: usize, opts: &TraversalOptions) -> Result<SumIdentityReport> {
    if genus == 0 {
        return Err(GnsError::InvalidArgument("the sum identity needs g >= 1".into()));
    }
    let order = OrderSpec::Lex;
    let left = count_with(&TreeKind::representative(order), dim, genus, opts)?.count_at(genus).unwrap_or(0);
    let mut terms = Vec::new();
    for n in 1..=genus.min(dim) {
        let table = count_span_stratified(n, genus, &order, opts)?;
        let top = table.span_counts.as_ref().and_then(|rows| rows[genus].last().copied()).unwrap_or(0);
        terms.push((n, top));
    }
    let right = terms.iter().map(|&(_, c)| c).sum();
    Ok(SumIdentityReport { g: genus, d: dim, left, terms, right })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub g: usize,
    /// `(d, N_{g,d})` for `d = g..=d_max`.
    pub values: Vec<(usize, u64)>,
}

impl StabilizationReport {
    pub fn holds(&self) -> bool {
        self.values.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

pub fn verify_stabilization(genus: usize, d_max: usize) -> Result<StabilizationReport> {
    verify_stabilization_with(genus, d_max, &TraversalOptions::default())
}

/// `N_{g,d}` for every `d` from `max(g, 1)` to `d_max`.
pub fn verify_stabilization_with(genus: usize, d_max: usize, opts: &TraversalOptions) -> Result<StabilizationReport> {
    let d_min = genus.max(1);
    if d_max < d_min {
        return Err(GnsError::InvalidArgument(format!("d_max = {d_max} is below g = {genus}")));
    }
    let mut values = Vec::new();
    for d in d_min..=d_max {
        let n = count_with(&TreeKind::representative(OrderSpec::Lex), d, genus, opts)?.count_at(genus).unwrap_or(0);
        values.push((d, n));
    }
    Ok(StabilizationReport { g: genus, values })
}

/// Published values, `n_{g,d}` (all semigroups) and `N_{g,d}` (classes),
/// indexed from `g = 1`.
const N_ALL_2: [u64; 14] = [2, 7, 23, 71, 210, 638, 1894, 5570, 16220, 46898, 134856, 386354, 1102980, 3137592];
const N_CLASSES_2: [u64; 14] = [1, 4, 12, 37, 107, 323, 953, 2798, 8128, 23486, 67477, 193285, 551628, 1569107];
const N_ALL_3: [u64; 14] =
    [3, 15, 67, 292, 1215, 5075, 20936, 85842, 349731, 1418323, 5731710, 23100916, 92882954, 372648740];
const N_CLASSES_3: [u64; 10] = [1, 4, 15, 59, 224, 903, 3611, 14603, 58954, 237956];
const N_CLASSES_4: [u64; 8] = [1, 4, 15, 64, 270, 1254, 5945, 29132];
const N_CLASSES_5: [u64; 8] = [1, 4, 15, 64, 277, 1344, 6810, 36536];
const N_CLASSES_6: [u64; 6] = [1, 4, 15, 64, 277, 1355];

fn reference_column(mode: CountMode, dim: usize) -> Option<&'static [u64]> {
    match (mode, dim) {
        (CountMode::Full, 2) => Some(&N_ALL_2),
        (CountMode::Full, 3) => Some(&N_ALL_3),
        (CountMode::Representative, 2) => Some(&N_CLASSES_2),
        (CountMode::Representative, 3) => Some(&N_CLASSES_3),
        (CountMode::Representative, 4) => Some(&N_CLASSES_4),
        (CountMode::Representative, 5) => Some(&N_CLASSES_5),
        (CountMode::Representative, 6) => Some(&N_CLASSES_6),
        _ => None,
    }
}

/// A published count, if tabulated. `mode` is `Full` for `n_{g,d}` and
/// `Representative` for `N_{g,d}`.
pub fn reference_count(mode: CountMode, dim: usize, genus: usize) -> Option<u64> {
    let col = reference_column(mode, dim)?;
    genus.checked_sub(1).and_then(|i| col.get(i)).copied()
}

/// The published table as one [`CountTable`] per column.
pub fn builtin_reference_table() -> Vec<CountTable> {
    let columns = [
        (CountMode::Full, 2),
        (CountMode::Representative, 2),
        (CountMode::Full, 3),
        (CountMode::Representative, 3),
        (CountMode::Representative, 4),
        (CountMode::Representative, 5),
        (CountMode::Representative, 6),
    ];
    columns
        .iter()
        .map(|&(mode, dim)| CountTable {
            dim,
            order: "any".to_string(),
            rows: reference_column(mode, dim)
                .expect("tabulated column")
                .iter()
                .enumerate()
                .map(|(i, &count)| CountRow { g: i + 1, count, mode })
                .collect(),
            span_counts: None,
            meta: CountMeta { elapsed: Duration::ZERO, tree: "reference".to_string() },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_lookups() {
        assert_eq!(reference_count(CountMode::Full, 2, 14), Some(3137592));
        assert_eq!(reference_count(CountMode::Representative, 5, 8), Some(36536));
        assert_eq!(reference_count(CountMode::Representative, 3, 10), Some(237956));
        assert_eq!(reference_count(CountMode::Representative, 6, 7), None);
        assert_eq!(reference_count(CountMode::Full, 4, 1), None);
        assert_eq!(builtin_reference_table().len(), 7);
    }

    #[test]
    fn small_counts() {
        let t = count(&TreeKind::representative(OrderSpec::Lex), 2, 5).unwrap();
        assert_eq!(t.counts(), vec![1, 1, 4, 12, 37, 107]);
        let t = count(&TreeKind::full(OrderSpec::Lex), 3, 4).unwrap();
        assert_eq!(t.counts(), vec![1, 3, 15, 67, 292]);
        let t = count(&TreeKind::fixed_genus(OrderSpec::Lex, 0).unwrap(), 2, 4).unwrap();
        assert_eq!(t.counts(), vec![1, 1, 4, 12, 37]);
    }

    #[test]
    fn span_vectors() {
        assert_eq!(count_by_span(2, 1, &OrderSpec::Lex).unwrap(), vec![1]);
        assert_eq!(count_by_span(2, 2, &OrderSpec::Lex).unwrap().iter().sum::<u64>(), 4);
        assert_eq!(count_by_span(3, 3, &OrderSpec::Lex).unwrap().iter().sum::<u64>(), 15);
        assert!(count_by_span(2, 0, &OrderSpec::Lex).is_err());
    }

    #[test]
    fn identities_on_small_cases() {
        let r = verify_sum_identity(4, 3).unwrap();
        assert_eq!(r.left, 59);
        assert!(r.holds());
        assert!(verify_sum_identity(1, 5).unwrap().holds());
        let s = verify_stabilization(4, 6).unwrap();
        assert_eq!(s.values, vec![(4, 64), (5, 64), (6, 64)]);
        assert!(verify_stabilization(4, 3).is_err());
    }
}
