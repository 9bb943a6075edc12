mod args;
mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use clap::Parser;
use gns_core::canonical::compare_sorted;
use gns_core::counting::{count_with, reference_count, verify_stabilization_with, verify_sum_identity_with, CountMode};
use gns_core::oracle::{brute_force_all, brute_force_representatives};
use gns_core::trees::{collect_level, traverse, ExecMode, TraversalOptions, TreeKind};
use gns_core::{GapSemigroup, GnsError};

use args::{BruteForceArgs, Cli, Command, CountArgs, EnumerateArgs, Mode, RunArgs, TreeArg, VerifyArgs};
use render::{render_count, render_semigroups, CountRecord};

enum Failure {
    Usage(String),
    Mismatch(String),
    Resource(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) | Failure::Other(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) | Failure::Resource(m) | Failure::Other(m) => m,
        }
    }
}

impl From<GnsError> for Failure {
    fn from(e: GnsError) -> Self {
        match e {
            GnsError::ResourceLimit(_) => Failure::Resource(e.to_string()),
            GnsError::NotOGoodOrder(_) | GnsError::InvalidArgument(_) | GnsError::UnsupportedDimension(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Count(a) => cmd_count(&a),
        Command::Enumerate(a) => cmd_enumerate(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::BruteForce(a) => cmd_brute_force(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gns: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn exec_mode(threads: u32) -> ExecMode {
    if threads <= 1 {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel(threads as usize)
    }
}

impl RunArgs {
    fn validate(&self) -> Outcome {
        if self.tree == TreeArg::FixedGenus {
            let order = self.order.spec();
            if !order.is_o_good() {
                return Err(GnsError::NotOGoodOrder(order.name().to_string()).into());
            }
            if self.mode != Mode::Representatives {
                return Err(Failure::Usage("--tree fixed-genus only enumerates --mode representatives".into()));
            }
        }
        Ok(())
    }

    fn options(&self) -> TraversalOptions {
        TraversalOptions {
            mode: exec_mode(self.threads),
            checkpoint: self.checkpoint.clone(),
            max_frontier: self.max_frontier,
        }
    }

    fn kind(&self, genus: usize) -> Result<TreeKind, Failure> {
        let order = self.order.spec();
        Ok(match (self.mode, self.tree) {
            (Mode::All, _) => TreeKind::full(order),
            (Mode::Representatives, TreeArg::Frontier) => TreeKind::representative(order),
            (Mode::Representatives, TreeArg::FixedGenus) => TreeKind::fixed_genus(order, genus)?,
            (Mode::Equivariant, _) => TreeKind::equivariant(order),
        })
    }

    fn sink(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn describe(&self) -> String {
        let tree = match self.tree {
            TreeArg::Frontier => "frontier",
            TreeArg::FixedGenus => "fixed-genus",
        };
        format!(
            "d={} order={} mode={} tree={tree} threads={}",
            self.dim,
            self.order.spec(),
            self.mode.name(),
            self.threads
        )
    }
}

fn cmd_count(a: &CountArgs) -> Outcome {
    let run = &a.run;
    run.validate()?;
    let (lo, hi) = match (a.genus, a.gmax) {
        (Some(g), _) => (g, g),
        (None, Some(g)) => (0, g),
        (None, None) => return Err(Failure::Usage("one of --gmax or --genus is required".into())),
    };
    if run.tree == TreeArg::FixedGenus && run.checkpoint.is_some() && lo != hi {
        return Err(Failure::Usage("a checkpoint covers a single fixed-genus tree; use --genus".into()));
    }
    let start = Instant::now();
    let opts = run.options();
    let rows: Vec<CountRecord> = if run.tree == TreeArg::FixedGenus {
        (lo..=hi)
            .map(|g| {
                let report = traverse(&run.kind(g)?, run.dim, usize::MAX, &opts, |_, _| {})?;
                Ok(CountRecord { g, count: report.total_nodes() })
            })
            .collect::<Result<_, Failure>>()?
    } else {
        let table = count_with(&run.kind(hi)?, run.dim, hi, &opts)?;
        (lo..=hi).map(|g| CountRecord { g, count: table.count_at(g).unwrap_or(0) }).collect()
    };
    let mut out = run.sink()?;
    render_count(&mut out, run.format, run.dim, &run.order.spec(), run.mode, &rows)?;
    out.flush()?;
    if !run.quiet {
        eprintln!("count {}: {} rows in {:.3}s", run.describe(), rows.len(), start.elapsed().as_secs_f64());
    }
    Ok(())
}

fn cmd_enumerate(a: &EnumerateArgs) -> Outcome {
    let run = &a.run;
    run.validate()?;
    let start = Instant::now();
    let opts = run.options();
    let order = run.order.spec();
    let kind = run.kind(a.genus)?;
    let nodes = match (run.mode, run.tree) {
        (Mode::All, _) | (Mode::Representatives, TreeArg::Frontier) => collect_level(&kind, run.dim, a.genus, &opts)?,
        _ => {
            let limit = if run.tree == TreeArg::FixedGenus { usize::MAX } else { a.genus };
            let found = Mutex::new(Vec::new());
            traverse(&kind, run.dim, limit, &opts, |_, s| {
                if s.genus() == a.genus {
                    found.lock().expect("collector poisoned").push(s.clone());
                }
            })?;
            let mut nodes = found.into_inner().expect("collector poisoned");
            if opts.mode != ExecMode::Sequential {
                nodes.sort_by(|x, y| compare_sorted(x, y, &order));
            }
            nodes
        }
    };
    let mut out = run.sink()?;
    render_semigroups(&mut out, run.format, run.dim, &order, run.mode, a.genus, &nodes, a.generators)?;
    out.flush()?;
    if !run.quiet {
        eprintln!(
            "enumerate {} g={}: {} semigroups in {:.3}s",
            run.describe(),
            a.genus,
            nodes.len(),
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}

struct CellSpec {
    mode: CountMode,
    dim: usize,
    genera: std::ops::RangeInclusive<usize>,
}

fn parse_cells(text: &str) -> Result<CellSpec, Failure> {
    let bad = || Failure::Usage(format!("cannot read cell spec `{text}`; expected N:d:a..b or n:d:g"));
    let mut parts = text.split(':');
    let (Some(kind), Some(dim), Some(range), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(bad());
    };
    let mode = match kind {
        "N" => CountMode::Representative,
        "n" => CountMode::Full,
        _ => return Err(bad()),
    };
    let dim: usize = dim.parse().map_err(|_| bad())?;
    let genera = match range.split_once("..") {
        Some((lo, hi)) => {
            let lo: usize = lo.parse().map_err(|_| bad())?;
            let hi: usize = hi.trim_start_matches('=').parse().map_err(|_| bad())?;
            lo..=hi
        }
        None => {
            let g: usize = range.parse().map_err(|_| bad())?;
            g..=g
        }
    };
    if genera.is_empty() || *genera.start() == 0 {
        return Err(bad());
    }
    Ok(CellSpec { mode, dim, genera })
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let opts = TraversalOptions { mode: exec_mode(a.threads), ..TraversalOptions::default() };
    let specs: Vec<CellSpec> = a.cells.iter().map(|c| parse_cells(c)).collect::<Result<_, _>>()?;
    for spec in &specs {
        for g in spec.genera.clone() {
            if reference_count(spec.mode, spec.dim, g).is_none() {
                return Err(Failure::Usage(format!("no published value for {}", cell_name(spec.mode, g, spec.dim))));
            }
        }
    }
    let mut out = BufWriter::new(io::stdout().lock());
    let mut failed = 0;
    for spec in &specs {
        let kind = match spec.mode {
            CountMode::Full => TreeKind::full(gns_core::OrderSpec::Lex),
            _ => TreeKind::representative(gns_core::OrderSpec::Lex),
        };
        let table = count_with(&kind, spec.dim, *spec.genera.end(), &opts)?;
        for g in spec.genera.clone() {
            let expected = reference_count(spec.mode, spec.dim, g).expect("checked above");
            let actual = table.count_at(g).unwrap_or(0);
            let verdict = if expected == actual { "ok" } else { "MISMATCH" };
            failed += usize::from(expected != actual);
            writeln!(out, "{} expected={expected} actual={actual} {verdict}", cell_name(spec.mode, g, spec.dim))?;
        }
    }
    if a.identity {
        let (g, d) = (a.g.expect("required by clap"), a.dim.expect("required by clap"));
        let r = verify_sum_identity_with(g, d, &opts)?;
        let terms: Vec<String> = r.terms.iter().map(|(_, c)| c.to_string()).collect();
        failed += usize::from(!r.holds());
        writeln!(
            out,
            "N_{{{g},{d}}} = {} ; sum of N^(n)_{{{g},n}} for n=1..{} = {} = {} {}",
            r.left,
            r.terms.len(),
            terms.join(" + "),
            r.right,
            if r.holds() { "ok" } else { "MISMATCH" }
        )?;
    }
    if a.stabilization {
        let (g, dmax) = (a.g.expect("required by clap"), a.dmax.expect("required by clap"));
        let r = verify_stabilization_with(g, dmax, &opts)?;
        let values: Vec<String> = r.values.iter().map(|(_, c)| c.to_string()).collect();
        failed += usize::from(!r.holds());
        writeln!(
            out,
            "N_{{{g},d}} for d={}..{dmax}: {} {}",
            r.values.first().map_or(g, |v| v.0),
            values.join("="),
            if r.holds() { "ok" } else { "MISMATCH" }
        )?;
    }
    out.flush()?;
    if failed > 0 {
        return Err(Failure::Mismatch(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn cell_name(mode: CountMode, g: usize, d: usize) -> String {
    let letter = if mode == CountMode::Full { 'n' } else { 'N' };
    format!("{letter}_{{{g},{d}}}")
}

fn cmd_brute_force(a: &BruteForceArgs) -> Outcome {
    let order = a.order.spec();
    let found = if a.representatives {
        brute_force_representatives(a.genus, a.dim, &order)?
    } else {
        brute_force_all(a.genus, a.dim)?
    };
    let mut nodes: Vec<GapSemigroup> = found.into_iter().collect();
    nodes.sort_by(|x, y| compare_sorted(x, y, &order));
    let mut out = BufWriter::new(io::stdout().lock());
    for s in &nodes {
        writeln!(out, "{}", s.gap_list(&order))?;
    }
    out.flush()?;
    Ok(())
}
