//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns strings: semigroups travel as gap lists
//! such as `[(0,1),(1,0)]`, results as JSON. The plain `*_json` functions
//! hold the logic so that it can be tested off the browser.

use gns_core::canonical::{is_equivariant, is_representative, orbit_size, representative};
use gns_core::counting::{count_with, reference_count, CountMode};
use gns_core::trees::{TraversalOptions, TreeKind, TreeRule};
use gns_core::{GapSemigroup, GnsError, OrderSpec, Point};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Frontier size at which a count in the page gives up.
pub const FRONTIER_BUDGET: usize = 250_000;

type Result<T> = std::result::Result<T, GnsError>;

#[derive(Serialize)]
struct Info {
    dim: usize,
    order: String,
    genus: usize,
    gaps: Vec<Vec<u16>>,
    generators: Vec<Vec<u16>>,
    special_gaps: Vec<Vec<u16>>,
    pseudo_frobenius: Vec<Vec<u16>>,
    frobenius: Option<Vec<u16>>,
    multiplicity: Vec<u16>,
    conductor: Vec<u16>,
    u: Vec<Vec<u16>>,
    gap_list: String,
    representative: String,
    is_representative: bool,
    equivariant: bool,
    orbit_size: usize,
}

#[derive(Serialize)]
struct Row {
    g: usize,
    count: u64,
    published: Option<u64>,
}

fn coords(points: &[Point], order: &OrderSpec) -> Vec<Vec<u16>> {
    let mut v = points.to_vec();
    order.sort(&mut v);
    v.iter().map(|p| p.coords().to_vec()).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn info_json(gaps: &str, dim: usize, order: &str) -> Result<String> {
    let order: OrderSpec = order.parse()?;
    let s = GapSemigroup::parse(gaps, Some(dim))?;
    let info = Info {
        dim,
        order: order.name().to_string(),
        genus: s.genus(),
        gaps: coords(s.gaps(), &order),
        generators: coords(s.minimal_generators(), &order),
        special_gaps: coords(&s.special_gaps(), &order),
        pseudo_frobenius: coords(&s.pseudo_frobenius(), &order),
        frobenius: s.frobenius_element(&order).map(|f| f.coords().to_vec()),
        multiplicity: s.multiplicity(&order).coords().to_vec(),
        conductor: s.conductor().coords().to_vec(),
        u: coords(&s.u_set(&order), &order),
        gap_list: s.gap_list(&order),
        representative: representative(&s, &order).gap_list(&order),
        is_representative: is_representative(&s, &order).is_representative,
        equivariant: is_equivariant(&s),
        orbit_size: orbit_size(&s),
    };
    Ok(to_json(&info))
}

/// Removes `point` if it is a minimal generator, fills it in if it is a
/// special gap; returns the new gap list.
pub fn toggle_json(gaps: &str, dim: usize, point: &str, order: &str) -> Result<String> {
    let order: OrderSpec = order.parse()?;
    let s = GapSemigroup::parse(gaps, Some(dim))?;
    let p: Point = point.parse()?;
    let t = if s.is_gap(&p) { s.extend(&p)? } else { s.remove_generator(&p)? };
    Ok(t.gap_list(&order))
}

pub fn children_json(gaps: &str, dim: usize, order: &str, rule: &str) -> Result<String> {
    let order: OrderSpec = order.parse()?;
    let rule: TreeRule = rule.parse()?;
    let s = GapSemigroup::parse(gaps, Some(dim))?;
    let kind = match rule {
        TreeRule::Full => TreeKind::full(order),
        TreeRule::Representative => TreeKind::representative(order),
        TreeRule::Equivariant => TreeKind::equivariant(order),
        TreeRule::FixedGenus => TreeKind::fixed_genus(order, s.genus())?,
    };
    let children: Vec<String> = kind.children(&s)?.iter().map(|c| c.gap_list(&order)).collect();
    Ok(to_json(&children))
}

pub fn count_json(dim: usize, g_max: usize, mode: &str, order: &str) -> Result<String> {
    let order: OrderSpec = order.parse()?;
    let (kind, published) = match mode {
        "all" => (TreeKind::full(order), Some(CountMode::Full)),
        "representatives" => (TreeKind::representative(order), Some(CountMode::Representative)),
        "equivariant" => (TreeKind::equivariant(order), None),
        other => return Err(GnsError::InvalidArgument(format!("unknown mode `{other}`"))),
    };
    let opts = TraversalOptions { max_frontier: Some(FRONTIER_BUDGET), ..TraversalOptions::default() };
    let table = count_with(&kind, dim, g_max, &opts)?;
    let rows: Vec<Row> = table
        .rows
        .iter()
        .map(|r| Row { g: r.g, count: r.count, published: published.and_then(|m| reference_count(m, dim, r.g)) })
        .collect();
    Ok(to_json(&rows))
}

fn js(e: GnsError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn semigroup_info(gaps: &str, dim: usize, order: &str) -> std::result::Result<String, JsError> {
    info_json(gaps, dim, order).map_err(js)
}

#[wasm_bindgen]
pub fn toggle_point(gaps: &str, dim: usize, point: &str, order: &str) -> std::result::Result<String, JsError> {
    toggle_json(gaps, dim, point, order).map_err(js)
}

#[wasm_bindgen]
pub fn tree_children(gaps: &str, dim: usize, order: &str, rule: &str) -> std::result::Result<String, JsError> {
    children_json(gaps, dim, order, rule).map_err(js)
}

#[wasm_bindgen]
pub fn count_table(dim: usize, g_max: usize, mode: &str, order: &str) -> std::result::Result<String, JsError> {
    count_json(dim, g_max, mode, order).map_err(js)
}
