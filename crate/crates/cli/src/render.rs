use std::io::{self, Write};

use gns_core::gns::format_point_list;
use gns_core::{GapSemigroup, OrderSpec, Point};
use serde::Serialize;

use crate::args::{Format, Mode};

#[derive(Serialize, Clone, Copy, Debug)]
pub struct CountRecord {
    pub g: usize,
    pub count: u64,
}

#[derive(Serialize)]
struct CountDoc<'a> {
    d: usize,
    order: &'a str,
    mode: &'a str,
    rows: &'a [CountRecord],
}

#[derive(Serialize)]
struct SemigroupDoc<'a> {
    d: usize,
    order: &'a str,
    mode: &'a str,
    genus: usize,
    count: usize,
    semigroups: Vec<SemigroupRecord>,
}

#[derive(Serialize)]
struct SemigroupRecord {
    gaps: Vec<Vec<u16>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Vec<u16>>>,
}

fn coords(points: &[Point]) -> Vec<Vec<u16>> {
    points.iter().map(|p| p.coords().to_vec()).collect()
}

fn sorted_generators(s: &GapSemigroup, order: &OrderSpec) -> Vec<Point> {
    let mut gens = s.minimal_generators().to_vec();
    order.sort(&mut gens);
    gens
}

pub fn render_count(
    out: &mut dyn Write,
    format: Format,
    dim: usize,
    order: &OrderSpec,
    mode: Mode,
    rows: &[CountRecord],
) -> io::Result<()> {
    match format {
        Format::Json => {
            let doc = CountDoc { d: dim, order: order.name(), mode: mode.name(), rows };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            writeln!(out, "g,count")?;
            for r in rows {
                writeln!(out, "{},{}", r.g, r.count)?;
            }
            Ok(())
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.count.to_string().len()).max().unwrap_or(1).max(5);
            writeln!(out, "{:>3}  {:>width$}", "g", "count")?;
            for r in rows {
                writeln!(out, "{:>3}  {:>width$}", r.g, r.count)?;
            }
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn render_semigroups(
    out: &mut dyn Write,
    format: Format,
    dim: usize,
    order: &OrderSpec,
    mode: Mode,
    genus: usize,
    nodes: &[GapSemigroup],
    with_generators: bool,
) -> io::Result<()> {
    match format {
        Format::Json => {
            let semigroups = nodes
                .iter()
                .map(|s| SemigroupRecord {
                    gaps: coords(&s.sorted_gaps(order)),
                    generators: with_generators.then(|| coords(&sorted_generators(s, order))),
                })
                .collect();
            let doc =
                SemigroupDoc { d: dim, order: order.name(), mode: mode.name(), genus, count: nodes.len(), semigroups };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            writeln!(out, "{}", if with_generators { "gaps,generators" } else { "gaps" })?;
            for s in nodes {
                write!(out, "\"{}\"", s.gap_list(order))?;
                if with_generators {
                    write!(out, ",\"{}\"", format_point_list(&sorted_generators(s, order)))?;
                }
                writeln!(out)?;
            }
            Ok(())
        }
        Format::Text => {
            for s in nodes {
                write!(out, "{}", s.gap_list(order))?;
                if with_generators {
                    write!(out, " generators={}", format_point_list(&sorted_generators(s, order)))?;
                }
                writeln!(out)?;
            }
            Ok(())
        }
    }
}
