//! Semigroup trees and a breadth-first traversal engine.
//!
//! Four child rules are provided:
//!
//! - the full tree: children `S ∖ {x}` for `x ∈ U_≼(S)`;
//! - the representative tree: the same, restricted to representatives;
//! - the equivariant tree: children `S ∖ orb(x)`, one per orbit class of `U_≼(S)`;
//! - the fixed-genus tree rooted at the ordinary semigroup `O_{g,d}(≼)`,
//!   whose children are `(S ∪ {h}) ∖ {x}`.
//!
//! [`traverse`] expands a tree level by level, optionally in parallel and
//! with a checkpoint file written after every materialized level.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::Duration;

use rayon::prelude::*;

use crate::canonical::{is_equivariant, is_representative, safe_child_generator};
use crate::clock::Stopwatch;
use crate::error::{GnsError, Result};
use crate::gns::GapSemigroup;
use crate::order::OrderSpec;
use crate::point::{orbit_point, points_with_box_volume_at_most, Point, MAX_DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeRule {
    Full,
    Representative,
    Equivariant,
    FixedGenus,
}

impl TreeRule {
    pub fn name(&self) -> &'static str {
        match self {
            TreeRule::Full => "full",
            TreeRule::Representative => "representative",
            TreeRule::Equivariant => "equivariant",
            TreeRule::FixedGenus => "fixed-genus",
        }
    }
}

impl fmt::Display for TreeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeRule {
    type Err = GnsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(TreeRule::Full),
            "representative" => Ok(TreeRule::Representative),
            "equivariant" => Ok(TreeRule::Equivariant),
            "fixed-genus" => Ok(TreeRule::FixedGenus),
            other => Err(GnsError::Parse(format!("unknown tree kind {other:?}"))),
        }
    }
}

/// A child rule together with its order (and target genus for the
/// fixed-genus tree). Fixed-genus kinds can only be built for O-good orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeKind {
    rule: TreeRule,
    order: OrderSpec,
    genus_target: Option<usize>,
}

impl TreeKind {
    pub fn full(order: OrderSpec) -> Self {
        TreeKind { rule: TreeRule::Full, order, genus_target: None }
    }

    pub fn representative(order: OrderSpec) -> Self {
        TreeKind { rule: TreeRule::Representative, order, genus_target: None }
    }

    pub fn equivariant(order: OrderSpec) -> Self {
        TreeKind { rule: TreeRule::Equivariant, order, genus_target: None }
    }

    pub fn fixed_genus(order: OrderSpec, genus: usize) -> Result<Self> {
        if !order.is_o_good() {
            return Err(GnsError::NotOGoodOrder(order.name().to_string()));
        }
        Ok(TreeKind { rule: TreeRule::FixedGenus, order, genus_target: Some(genus) })
    }

    pub fn rule(&self) -> TreeRule {
        self.rule
    }

    pub fn order(&self) -> OrderSpec {
        self.order
    }

    pub fn genus_target(&self) -> Option<usize> {
        self.genus_target
    }

    /// Same rule and order, different target genus (fixed-genus only).
    pub fn with_genus(&self, genus: usize) -> Self {
        debug_assert_eq!(self.rule, TreeRule::FixedGenus);
        TreeKind { genus_target: Some(genus), ..*self }
    }

    pub fn root(&self, dim: usize) -> GapSemigroup {
        match self.rule {
            TreeRule::FixedGenus => ordinary_gns(self.genus_target.unwrap_or(0), dim, &self.order),
            _ => GapSemigroup::full(dim),
        }
    }

    /// Children of `s`, checking the rule's precondition on `s`.
    pub fn children(&self, s: &GapSemigroup) -> Result<Vec<GapSemigroup>> {
        match self.rule {
            TreeRule::Full => Ok(children_full(s, &self.order)),
            TreeRule::Representative => children_representative(s, &self.order),
            TreeRule::Equivariant => children_equivariant(s, &self.order),
            TreeRule::FixedGenus => children_fixed_genus(s, &self.order),
        }
    }

    /// Children of a node already known to satisfy the precondition.
    fn expand(&self, s: &GapSemigroup) -> Vec<GapSemigroup> {
        match self.rule {
            TreeRule::Full => children_full(s, &self.order),
            TreeRule::Representative => representative_children(s, &self.order),
            TreeRule::Equivariant => equivariant_children(s, &self.order),
            TreeRule::FixedGenus => fixed_genus_children(s, &self.order),
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.genus_target {
            Some(g) => write!(f, "{} (g={g}, {})", self.rule, self.order),
            None => write!(f, "{} ({})", self.rule, self.order),
        }
    }
}

/// `{S ∖ {x} : x ∈ U_≼(S)}`, in increasing order of `x`.
pub fn children_full(s: &GapSemigroup, order: &OrderSpec) -> Vec<GapSemigroup> {
    s.u_set(order).iter().map(|x| s.with_gap_added(x)).collect()
}

pub fn children_representative(s: &GapSemigroup, order: &OrderSpec) -> Result<Vec<GapSemigroup>> {
    if !is_representative(s, order).is_representative {
        return Err(GnsError::NotRepresentative);
    }
    Ok(representative_children(s, order))
}

fn representative_children(s: &GapSemigroup, order: &OrderSpec) -> Vec<GapSemigroup> {
    if s.dim() == 1 {
        return children_full(s, order);
    }
    s.u_set(order)
        .iter()
        .filter_map(|x| {
            let child = s.with_gap_added(x);
            let keep = safe_child_generator(s, x, order) || is_representative(&child, order).is_representative;
            keep.then_some(child)
        })
        .collect()
}

pub fn children_equivariant(s: &GapSemigroup, order: &OrderSpec) -> Result<Vec<GapSemigroup>> {
    if !is_equivariant(s) {
        return Err(GnsError::NotEquivariant);
    }
    Ok(equivariant_children(s, order))
}

/// One child per orbit class of `U_≼(S)`. The classes are visited by their
/// ≼-minimum, which is the first member met in the sorted U-set.
fn equivariant_children(s: &GapSemigroup, order: &OrderSpec) -> Vec<GapSemigroup> {
    let u = s.u_set(order);
    let mut claimed: HashSet<Point> = HashSet::new();
    let mut out = Vec::new();
    for x in &u {
        if claimed.contains(x) {
            continue;
        }
        let orbit = orbit_point(x);
        let mut gaps = s.gaps().to_vec();
        gaps.extend(orbit.iter().copied());
        claimed.extend(orbit);
        out.push(GapSemigroup::from_gaps_unchecked(s.dim(), gaps));
    }
    out
}

/// The ordinary semigroup `O_{g,d}(≼)`: its gaps are the `g` smallest
/// nonzero points of ℕ^d.
pub fn ordinary_gns(genus: usize, dim: usize, order: &OrderSpec) -> GapSemigroup {
    assert!((1..=MAX_DIM).contains(&dim), "unsupported dimension {dim}");
    // a point preceded by fewer than g nonzero points has at most g − 1
    // nonzero points strictly below it naturally, so box_volume <= g + 1
    let mut candidates: Vec<Point> =
        points_with_box_volume_at_most(dim, genus as u64 + 1).into_iter().filter(|x| !x.is_zero()).collect();
    order.sort(&mut candidates);
    candidates.truncate(genus);
    GapSemigroup::from_gaps_unchecked(dim, candidates)
}

pub fn children_fixed_genus(s: &GapSemigroup, order: &OrderSpec) -> Result<Vec<GapSemigroup>> {
    if !order.is_o_good() {
        return Err(GnsError::NotOGoodOrder(order.name().to_string()));
    }
    if !is_representative(s, order).is_representative {
        return Err(GnsError::NotRepresentative);
    }
    Ok(fixed_genus_children(s, order))
}

/// For each special gap `h ≺ m_≼(S)` and each `x ∈ U_≼(S ∪ {h})` other than
/// `h`, the candidate `(S ∪ {h}) ∖ {x}` is kept when it is a representative.
fn fixed_genus_children(s: &GapSemigroup, order: &OrderSpec) -> Vec<GapSemigroup> {
    let m = s.multiplicity(order);
    let mut out = Vec::new();
    for h in s.special_gaps() {
        debug_assert_ne!(h, m);
        if !order.lt(&h, &m) {
            continue;
        }
        let t = s.with_gap_filled(&h);
        for x in t.u_set(order) {
            if x == h {
                continue;
            }
            let candidate = t.with_gap_added(&x);
            if is_representative(&candidate, order).is_representative {
                out.push(candidate);
            }
        }
    }
    out
}

/// One level of a tree: the nodes at a given depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier {
    pub depth: usize,
    pub nodes: Vec<GapSemigroup>,
    pub kind: TreeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Expand each frontier on a pool with this many workers.
    Parallel(usize),
}

#[derive(Clone, Debug)]
pub struct TraversalOptions {
    pub mode: ExecMode,
    /// Written after each materialized level; resumed from when present.
    pub checkpoint: Option<PathBuf>,
    /// Abort with `ResourceLimit` once a materialized frontier exceeds this size.
    pub max_frontier: Option<usize>,
}

impl Default for TraversalOptions {
    fn default() -> Self {
        TraversalOptions { mode: ExecMode::Sequential, checkpoint: None, max_frontier: None }
    }
}

impl TraversalOptions {
    pub fn parallel(threads: usize) -> Self {
        TraversalOptions { mode: ExecMode::Parallel(threads), ..Self::default() }
    }

    pub fn with_checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }
}

/// Per-level and per-genus node counts of a traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalReport {
    pub kind: TreeKind,
    pub dim: usize,
    pub limit: usize,
    /// `levels[k]` = number of nodes at depth `k`.
    pub levels: Vec<u64>,
    /// `genus_counts[g]` = number of visited nodes of genus `g`.
    pub genus_counts: Vec<u64>,
    /// Candidates dropped by frontier deduplication (fixed-genus only).
    pub duplicates: u64,
    pub resumed_from: Option<usize>,
    pub elapsed: Duration,
}

impl TraversalReport {
    pub fn total_nodes(&self) -> u64 {
        self.levels.iter().sum()
    }
}

/// Breadth-first traversal from the root of `kind`.
///
/// `limit` is the largest depth (= genus) for the full and representative
/// trees, the largest genus kept for the equivariant tree, and the largest
/// depth for the fixed-genus tree (`usize::MAX` walks the whole tree).
///
/// The visitor sees every node exactly once together with its depth. In
/// parallel mode it may be called concurrently for the last level; all other
/// levels are visited in frontier order. Frontier order, and therefore every
/// count, does not depend on the number of workers.
pub fn traverse<V>(
    kind: &TreeKind,
    dim: usize,
    limit: usize,
    opts: &TraversalOptions,
    visitor: V,
) -> Result<TraversalReport>
where
    V: Fn(usize, &GapSemigroup) + Sync,
{
    if dim == 0 || dim > MAX_DIM {
        return Err(GnsError::UnsupportedDimension(dim));
    }
    if kind.rule == TreeRule::FixedGenus && !kind.order.is_o_good() {
        return Err(GnsError::NotOGoodOrder(kind.order.name().to_string()));
    }
    match opts.mode {
        ExecMode::Sequential => Engine { kind, dim, limit, opts, pool: None }.run(&visitor),
        ExecMode::Parallel(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| GnsError::ResourceLimit(format!("cannot start worker pool: {e}")))?;
            Engine { kind, dim, limit, opts, pool: Some(&pool) }.run(&visitor)
        }
    }
}

/// Materializes one level of a tree (depth = genus for the full and
/// representative trees), in frontier order.
pub fn collect_level(kind: &TreeKind, dim: usize, depth: usize, opts: &TraversalOptions) -> Result<Vec<GapSemigroup>> {
    let found = std::sync::Mutex::new(Vec::new());
    traverse(kind, dim, depth, opts, |k, s| {
        if k == depth {
            found.lock().expect("collector poisoned").push(s.clone());
        }
    })?;
    let mut nodes = found.into_inner().expect("collector poisoned");
    if opts.mode != ExecMode::Sequential {
        nodes.sort_by(|a, b| crate::canonical::compare_sorted(a, b, &kind.order));
    }
    Ok(nodes)
}

struct Engine<'a> {
    kind: &'a TreeKind,
    dim: usize,
    limit: usize,
    opts: &'a TraversalOptions,
    pool: Option<&'a rayon::ThreadPool>,
}

impl Engine<'_> {
    /// Full and representative trees count their last level without storing it.
    fn streams_last_level(&self) -> bool {
        matches!(self.kind.rule, TreeRule::Full | TreeRule::Representative)
    }

    fn keeps(&self, child: &GapSemigroup) -> bool {
        self.kind.rule != TreeRule::Equivariant || child.genus() <= self.limit
    }

    fn expand_all(&self, nodes: &[GapSemigroup]) -> Vec<Vec<GapSemigroup>> {
        let work = || -> Vec<Vec<GapSemigroup>> {
            let f = |s: &GapSemigroup| self.kind.expand(s).into_iter().filter(|c| self.keeps(c)).collect();
            match self.pool {
                Some(_) => nodes.par_iter().map(f).collect(),
                None => nodes.iter().map(f).collect(),
            }
        };
        match self.pool {
            Some(pool) => pool.install(work),
            None => work(),
        }
    }

    fn stream_last(
        &self,
        nodes: &[GapSemigroup],
        depth: usize,
        visitor: &(dyn Fn(usize, &GapSemigroup) + Sync),
    ) -> u64 {
        let per_node = |s: &GapSemigroup| -> u64 {
            let children = self.kind.expand(s);
            for c in &children {
                visitor(depth, c);
            }
            children.len() as u64
        };
        match self.pool {
            Some(pool) => pool.install(|| nodes.par_iter().map(per_node).sum()),
            None => nodes.iter().map(per_node).sum(),
        }
    }

    fn run(&self, visitor: &(dyn Fn(usize, &GapSemigroup) + Sync)) -> Result<TraversalReport> {
        let start = Stopwatch::start();
        let mut state = match self.opts.checkpoint.as_deref().filter(|p| p.exists()) {
            Some(path) => self.resume(path)?,
            None => {
                let root = self.kind.root(self.dim);
                let mut st = State::new();
                if self.keeps(&root) {
                    visitor(0, &root);
                    st.record(0, std::slice::from_ref(&root));
                    st.frontier = vec![root];
                }
                st
            }
        };
        let resumed_from = state.resumed_from;

        let mut depth = state.depth;
        while !state.frontier.is_empty() && depth < self.limit {
            if self.streams_last_level() && depth + 1 == self.limit {
                let n = self.stream_last(&state.frontier, depth + 1, visitor);
                state.levels.push(n);
                bump(&mut state.genus_counts, depth + 1, n);
                state.frontier.clear();
                break;
            }
            let grouped = self.expand_all(&state.frontier);
            let mut next: Vec<GapSemigroup> = Vec::with_capacity(grouped.iter().map(Vec::len).sum());
            if self.kind.rule == TreeRule::FixedGenus {
                let mut seen = HashSet::with_capacity(next.capacity());
                for c in grouped.into_iter().flatten() {
                    if seen.insert(c.clone()) {
                        next.push(c);
                    } else {
                        state.duplicates += 1;
                    }
                }
            } else {
                next.extend(grouped.into_iter().flatten());
            }
            if next.is_empty() {
                state.frontier.clear();
                break;
            }
            if let Some(max) = self.opts.max_frontier {
                if next.len() > max {
                    return Err(GnsError::ResourceLimit(format!(
                        "frontier at depth {} has {} nodes (limit {max})",
                        depth + 1,
                        next.len()
                    )));
                }
            }
            depth += 1;
            for s in &next {
                visitor(depth, s);
            }
            state.record(depth, &next);
            state.frontier = next;
            state.depth = depth;
            if let Some(path) = &self.opts.checkpoint {
                self.checkpoint_of(&state).write_atomic(path)?;
            }
        }

        Ok(TraversalReport {
            kind: *self.kind,
            dim: self.dim,
            limit: self.limit,
            levels: state.levels,
            genus_counts: state.genus_counts,
            duplicates: state.duplicates,
            resumed_from,
            elapsed: start.elapsed(),
        })
    }

    fn checkpoint_of(&self, state: &State) -> Checkpoint {
        Checkpoint {
            kind: *self.kind,
            dim: self.dim,
            limit: (!self.streams_last_level()).then_some(self.limit),
            depth: state.depth,
            levels: state.levels.clone(),
            genus_counts: state.genus_counts.clone(),
            duplicates: state.duplicates,
            nodes: state.frontier.clone(),
        }
    }

    fn resume(&self, path: &Path) -> Result<State> {
        let cp = Checkpoint::read(path)?;
        if cp.kind != *self.kind || cp.dim != self.dim {
            return Err(GnsError::CheckpointCorrupt(format!(
                "checkpoint is for {} in dimension {}, not {} in dimension {}",
                cp.kind, cp.dim, self.kind, self.dim
            )));
        }
        let expected_limit = (!self.streams_last_level()).then_some(self.limit);
        if cp.limit != expected_limit {
            return Err(GnsError::CheckpointCorrupt("checkpoint was written with a different limit".into()));
        }
        if cp.depth >= self.limit && self.streams_last_level() {
            return Err(GnsError::CheckpointCorrupt(format!(
                "checkpoint depth {} is not below the requested limit {}",
                cp.depth, self.limit
            )));
        }
        Ok(State {
            depth: cp.depth,
            levels: cp.levels,
            genus_counts: cp.genus_counts,
            duplicates: cp.duplicates,
            frontier: cp.nodes,
            resumed_from: Some(cp.depth),
        })
    }
}

fn bump(counts: &mut Vec<u64>, genus: usize, by: u64) {
    if counts.len() <= genus {
        counts.resize(genus + 1, 0);
    }
    counts[genus] += by;
}

struct State {
    depth: usize,
    levels: Vec<u64>,
    genus_counts: Vec<u64>,
    duplicates: u64,
    frontier: Vec<GapSemigroup>,
    resumed_from: Option<usize>,
}

impl State {
    fn new() -> Self {
        State {
            depth: 0,
            levels: Vec::new(),
            genus_counts: Vec::new(),
            duplicates: 0,
            frontier: Vec::new(),
            resumed_from: None,
        }
    }

    fn record(&mut self, depth: usize, nodes: &[GapSemigroup]) {
        debug_assert_eq!(self.levels.len(), depth);
        self.levels.push(nodes.len() as u64);
        for s in nodes {
            bump(&mut self.genus_counts, s.genus(), 1);
        }
    }
}

const CHECKPOINT_MAGIC: &str = "#gns-checkpoint v1";

/// A saved frontier plus the counts accumulated up to it.
///
/// Text format: one header line
/// `#gns-checkpoint v1 kind=… d=… order=… genus=… limit=… depth=… nodes=… levels=… genus_counts=… duplicates=…`
/// followed by one node per line as a gap list sorted by the tree's order.
/// Parsing and re-serializing reproduces the file byte for byte.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub kind: TreeKind,
    pub dim: usize,
    /// Recorded for trees whose frontiers depend on the limit.
    pub limit: Option<usize>,
    pub depth: usize,
    pub levels: Vec<u64>,
    pub genus_counts: Vec<u64>,
    pub duplicates: u64,
    pub nodes: Vec<GapSemigroup>,
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn split(field: &str, s: &str) -> Result<Vec<u64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.parse().map_err(|_| GnsError::CheckpointCorrupt(format!("bad {field} entry {x:?}"))))
        .collect()
}

fn opt_to_string(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let order = self.kind.order;
        let mut out = format!(
            "{CHECKPOINT_MAGIC} kind={} d={} order={} genus={} limit={} depth={} nodes={} levels={} genus_counts={} duplicates={}\n",
            self.kind.rule,
            self.dim,
            order,
            opt_to_string(self.kind.genus_target),
            opt_to_string(self.limit),
            self.depth,
            self.nodes.len(),
            join(&self.levels),
            join(&self.genus_counts),
            self.duplicates,
        );
        for s in &self.nodes {
            out.push_str(&s.gap_list(&order));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let corrupt = |m: String| GnsError::CheckpointCorrupt(m);
        let mut lines = text.split_terminator('\n');
        let header = lines.next().ok_or_else(|| corrupt("empty file".into()))?;
        let fields = header
            .strip_prefix(CHECKPOINT_MAGIC)
            .ok_or_else(|| corrupt(format!("missing {CHECKPOINT_MAGIC:?} header")))?;
        let mut get = {
            let mut pairs = fields.split_whitespace().map(|kv| kv.split_once('=').unwrap_or((kv, "")));
            move |key: &str| -> Result<String> {
                match pairs.next() {
                    Some((k, v)) if k == key => Ok(v.to_string()),
                    _ => Err(GnsError::CheckpointCorrupt(format!("expected header field {key}"))),
                }
            }
        };
        let num = |key: &str, v: String| -> Result<usize> {
            v.parse().map_err(|_| GnsError::CheckpointCorrupt(format!("bad {key} value {v:?}")))
        };
        let opt_num = |key: &str, v: String| -> Result<Option<usize>> {
            if v == "-" {
                Ok(None)
            } else {
                num(key, v).map(Some)
            }
        };

        let rule: TreeRule = get("kind")?.parse().map_err(|_| corrupt("bad kind".into()))?;
        let dim = num("d", get("d")?)?;
        let order: OrderSpec = get("order")?.parse().map_err(|_| corrupt("bad order".into()))?;
        let genus_target = opt_num("genus", get("genus")?)?;
        let limit = opt_num("limit", get("limit")?)?;
        let depth = num("depth", get("depth")?)?;
        let count = num("nodes", get("nodes")?)?;
        let levels = split("levels", &get("levels")?)?;
        let genus_counts = split("genus_counts", &get("genus_counts")?)?;
        let duplicates = num("duplicates", get("duplicates")?)? as u64;

        if dim == 0 || dim > MAX_DIM {
            return Err(corrupt(format!("unsupported dimension {dim}")));
        }
        let kind = match rule {
            TreeRule::FixedGenus => {
                TreeKind::fixed_genus(order, genus_target.ok_or_else(|| corrupt("missing genus".into()))?)
                    .map_err(|e| corrupt(e.to_string()))?
            }
            _ => TreeKind { rule, order, genus_target: None },
        };
        let nodes = lines
            .map(|l| GapSemigroup::parse(l, Some(dim)).map_err(|e| corrupt(format!("bad node {l:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if nodes.len() != count {
            return Err(corrupt(format!("header announces {count} nodes, found {}", nodes.len())));
        }
        if levels.len() != depth + 1 {
            return Err(corrupt(format!("{} level counts for depth {depth}", levels.len())));
        }
        let cp = Checkpoint { kind, dim, limit, depth, levels, genus_counts, duplicates, nodes };
        if cp.to_text() != text {
            return Err(corrupt("file is not in canonical form".into()));
        }
        Ok(cp)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Checkpoint::parse(&fs::read_to_string(path)?)
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Thread-safe per-genus tally, handy as a traversal visitor.
#[derive(Debug, Default)]
pub struct GenusTally {
    counts: Vec<AtomicU64>,
}

impl GenusTally {
    pub fn new(max_genus: usize) -> Self {
        GenusTally { counts: (0..=max_genus).map(|_| AtomicU64::new(0)).collect() }
    }

    pub fn add(&self, genus: usize) {
        if let Some(c) = self.counts.get(genus) {
            c.fetch_add(1, AtomicOrdering::Relaxed);
        }
    }

    pub fn snapshot(&self) -> Vec<u64> {
        self.counts.iter().map(|c| c.load(AtomicOrdering::Relaxed)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OrderSpec::{Glex, Lex};

    fn p(c: &[u32]) -> Point {
        Point::of(c)
    }

    fn gns(gaps: &[&[u32]]) -> GapSemigroup {
        let d = gaps[0].len();
        GapSemigroup::validate(gaps.iter().map(|c| p(c)), d).unwrap()
    }

    fn set(v: Vec<GapSemigroup>) -> std::collections::BTreeSet<GapSemigroup> {
        v.into_iter().collect()
    }

    #[test]
    fn full_children_of_small_examples() {
        let root = GapSemigroup::full(2);
        assert_eq!(set(children_full(&root, &Lex)), set(vec![gns(&[&[0, 1]]), gns(&[&[1, 0]])]));
        let s = gns(&[&[1, 0]]);
        let ch = children_full(&s, &Lex);
        assert_eq!(ch.len(), 3);
        for (c, x) in ch.iter().zip([p(&[1, 1]), p(&[2, 0]), p(&[3, 0])]) {
            assert_eq!(c.frobenius_element(&Lex), Some(x));
            assert_eq!(c.with_gap_filled(&x), s);
        }
    }

    #[test]
    fn representative_children_of_s3() {
        let s3 = gns(&[&[0, 1], &[1, 0]]);
        let ch = children_representative(&s3, &Lex).unwrap();
        assert_eq!(set(ch), set(vec![gns(&[&[0, 1], &[1, 0], &[1, 1]]), gns(&[&[0, 1], &[1, 0], &[1, 2]])]));
        assert_eq!(children_representative(&gns(&[&[0, 1]]), &Lex).unwrap().len(), 4);
        assert_eq!(children_representative(&gns(&[&[1, 0]]), &Lex).unwrap_err(), GnsError::NotRepresentative);
    }

    #[test]
    fn equivariant_children_match_the_worked_example() {
        let r = gns(&[&[0, 1], &[1, 0]]);
        let ch = children_equivariant(&r, &Lex).unwrap();
        assert_eq!(ch.len(), 4);
        assert!(ch.iter().all(is_equivariant));
        let r2 = gns(&[&[0, 1], &[1, 0], &[0, 3], &[3, 0]]);
        assert_eq!(
            children_equivariant(&r2, &Lex).unwrap(),
            vec![gns(&[&[0, 1], &[1, 0], &[0, 3], &[3, 0], &[0, 5], &[5, 0]])]
        );
        assert_eq!(children_equivariant(&GapSemigroup::full(2), &Lex).unwrap(), vec![r]);
        assert_eq!(children_equivariant(&gns(&[&[0, 1]]), &Lex).unwrap_err(), GnsError::NotEquivariant);
    }

    #[test]
    fn ordinary_semigroups() {
        assert_eq!(ordinary_gns(3, 2, &Lex), gns(&[&[0, 1], &[0, 2], &[0, 3]]));
        assert_eq!(ordinary_gns(3, 2, &Glex), gns(&[&[0, 1], &[1, 0], &[0, 2]]));
        assert_eq!(ordinary_gns(0, 4, &Lex), GapSemigroup::full(4));
        for g in 0..8 {
            let o = ordinary_gns(g, 3, &OrderSpec::ORDER1);
            assert!(GapSemigroup::validate(o.gaps().to_vec(), 3).is_ok());
            assert!(is_representative(&o, &OrderSpec::ORDER1).is_representative);
        }
    }

    #[test]
    fn fixed_genus_worked_example() {
        let root = ordinary_gns(3, 2, &Lex);
        assert_eq!(children_fixed_genus(&root, &Lex).unwrap().len(), 8);
        let s4 = gns(&[&[0, 1], &[0, 2], &[1, 0]]);
        let ch = children_fixed_genus(&s4, &Lex).unwrap();
        assert_eq!(set(ch), set(vec![gns(&[&[0, 1], &[1, 0], &[1, 1]]), gns(&[&[0, 1], &[1, 0], &[1, 2]])]));
        // the only candidate from S5 is N^2 \ {(0,1),(1,1),(2,1)}, which is
        // the lex-smaller of the pair it forms with its swap
        let s5 = gns(&[&[0, 1], &[0, 2], &[1, 1]]);
        assert_eq!(children_fixed_genus(&s5, &Lex).unwrap(), vec![gns(&[&[0, 1], &[1, 1], &[2, 1]])]);
        let s9 = gns(&[&[0, 1], &[1, 0], &[1, 1]]);
        assert!(children_fixed_genus(&s9, &Lex).unwrap().is_empty());
        assert!(matches!(children_fixed_genus(&root, &Glex), Err(GnsError::NotOGoodOrder(_))));
        assert!(TreeKind::fixed_genus(Glex, 3).is_err());
    }

    #[test]
    fn traversal_counts() {
        let opts = TraversalOptions::default();
        let r = traverse(&TreeKind::representative(Lex), 2, 3, &opts, |_, _| {}).unwrap();
        assert_eq!(r.levels, vec![1, 1, 4, 12]);
        let r = traverse(&TreeKind::full(Glex), 2, 3, &opts, |_, _| {}).unwrap();
        assert_eq!(r.levels, vec![1, 2, 7, 23]);
        let r = traverse(&TreeKind::fixed_genus(Lex, 3).unwrap(), 2, usize::MAX, &opts, |_, _| {}).unwrap();
        assert_eq!(r.total_nodes(), 12);
        assert_eq!(r.duplicates, 0);
    }

    #[test]
    fn visitor_sees_each_node_once() {
        let seen = std::sync::Mutex::new(Vec::new());
        traverse(&TreeKind::full(Lex), 2, 3, &TraversalOptions::parallel(4), |k, s| {
            seen.lock().unwrap().push((k, s.clone()));
        })
        .unwrap();
        let seen = seen.into_inner().unwrap();
        assert_eq!(seen.len(), 1 + 2 + 7 + 23);
        assert!(seen.iter().all(|(k, s)| *k == s.genus()));
        let distinct: HashSet<_> = seen.into_iter().map(|(_, s)| s).collect();
        assert_eq!(distinct.len(), 33);
    }

    #[test]
    fn checkpoint_text_round_trip() {
        let kind = TreeKind::fixed_genus(Lex, 3).unwrap();
        let cp = Checkpoint {
            kind,
            dim: 2,
            limit: Some(usize::MAX),
            depth: 1,
            levels: vec![1, 8],
            genus_counts: vec![0, 0, 0, 9],
            duplicates: 0,
            nodes: children_fixed_genus(&ordinary_gns(3, 2, &Lex), &Lex).unwrap(),
        };
        let text = cp.to_text();
        let back = Checkpoint::parse(&text).unwrap();
        assert_eq!(back, cp);
        assert_eq!(back.to_text(), text);
        assert!(Checkpoint::parse(&text.replace("nodes=8", "nodes=7")).is_err());
        assert!(Checkpoint::parse("garbage\n").is_err());
    }
}
