//! Command-line surface. Exit codes: 0 success, 1 a verification failed,
//! 2 bad input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::generate::{generate, InstanceConfig};
use super::io::{report_json, InstanceFile};
use super::svg::{render_svg, BBox};
use super::sweep::{run_on_specs, run_sweep, Check, SweepConfig, SweepReport};
use crate::cell::{
    admissible_radius_range, cell_halfspaces, certificate_at, farthest_nonempty, BallCertificate, CellSpec, Farthest,
    RadiusRange,
};
use crate::dimension::{predicted_dimension, DimensionReport};
use crate::error::{Error, Result};
use crate::exact::{format_scalar, parse_scalar, Point, DEFAULT_MAX_DIM};
use crate::lp::Relint;
use crate::neighbors::{all_minimal_neighbor_sets_with_budget, NeighborReport, DEFAULT_NEIGHBOR_BUDGET};
use crate::polytope::HPolyhedron;
use crate::relations::{verify_inclusion_chain, verify_order_k, ChainOptions, ChainReport, OrderKReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "order-voronoi", version, about = "Exact higher-order Voronoi cells")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted ambient dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Output file (a directory for `gen`); stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// H-representation, dimension and certificate of a cell.
    Cell { file: PathBuf },
    /// Dimension two ways: LP and boundary-face formula.
    Dim { file: PathBuf },
    /// All minimal neighbour sets of a cell.
    Neighbors {
        file: PathBuf,
        /// Largest number of competitors searched exhaustively.
        #[arg(long, default_value_t = DEFAULT_NEIGHBOR_BUDGET)]
        budget: usize,
    },
    /// Order-k decompositions and the inclusion chain.
    Relations {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Which sites have a nonempty farthest-point cell.
    Farthest { file: PathBuf },
    /// SVG of the planar order-k diagram.
    Render {
        file: PathBuf,
        #[arg(long, short)]
        k: usize,
        /// `x0,y0,x1,y1`; defaults to a padded box around the sites.
        #[arg(long)]
        bbox: Option<String>,
    },
    /// Randomised sweep, or the checks on the given instance files.
    Verify(VerifyArgs),
    /// Write random instance files.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    /// Comma-separated subset of dimension,chains,neighbors,farthest,membership.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<Check>,
    #[arg(long)]
    pub min_sites: Option<usize>,
    #[arg(long)]
    pub max_sites: Option<usize>,
    #[arg(long)]
    pub max_order: Option<usize>,
    /// Instance files to check instead of generated instances.
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 6)]
    pub sites: usize,
    #[arg(long, short, default_value_t = 2)]
    pub k: usize,
    /// Share of sites on a common sphere, e.g. `1/2`.
    #[arg(long, default_value = "0")]
    pub fraction: String,
    #[arg(long, default_value_t = 10)]
    pub bound: i64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub ambient_dim: usize,
    pub s: Vec<String>,
    pub halfspaces: HPolyhedron,
    pub irredundant: HPolyhedron,
    pub lp_dim: i64,
    pub predicted_dim: i64,
    pub relint: Option<Point>,
    pub certificate: Option<BallCertificate>,
    pub radius_range: Option<RadiusRange>,
}

pub fn cell_report(spec: &CellSpec) -> Result<CellReport> {
    let h = cell_halfspaces(spec);
    let dim = predicted_dimension(spec)?;
    let relint = match h.relint()? {
        Relint::Point(p) => Some(p),
        Relint::Empty => None,
    };
    let (certificate, radius_range) = match &relint {
        Some(x) => (certificate_at(x, spec)?, admissible_radius_range(x, spec)?),
        None => (None, None),
    };
    Ok(CellReport {
        ambient_dim: spec.ambient_dim(),
        s: spec.s_ids().to_vec(),
        irredundant: h.irredundant()?,
        halfspaces: h,
        lp_dim: dim.lp_dim,
        predicted_dim: dim.predicted_dim,
        relint,
        certificate,
        radius_range,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationsReport {
    pub order_k: Vec<OrderKReport>,
    pub chain: ChainReport,
}

impl RelationsReport {
    pub fn holds(&self) -> bool {
        self.order_k.iter().all(OrderKReport::holds) && self.chain.holds()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FarthestRow {
    pub id: String,
    pub result: Farthest,
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidCertificate(_) => EXIT_FAILED,
                _ => EXIT_BAD_INPUT,
            }
        }
    }
}

fn load(cli: &Cli, file: &Path) -> Result<CellSpec> {
    InstanceFile::read(file)?.spec(cli.max_dim)
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| Error::Format(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit_report<T: Serialize>(cli: &Cli, kind: &str, report: &T, text: impl FnOnce() -> String) -> Result<()> {
    let body = match cli.format {
        Format::Json => report_json(kind, report) + "\n",
        Format::Text => text(),
    };
    emit(cli, &body)
}

pub fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Cell { file } => {
            let r = cell_report(&load(cli, file)?)?;
            emit_report(cli, "cell", &r, || cell_text(&r))?;
            Ok(EXIT_OK)
        }
        Command::Dim { file } => {
            let r = predicted_dimension(&load(cli, file)?)?;
            emit_report(cli, "dimension", &r, || dim_text(&r))?;
            Ok(if r.agree { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Neighbors { file, budget } => {
            let r = all_minimal_neighbor_sets_with_budget(&load(cli, file)?, *budget)?;
            emit_report(cli, "neighbors", &r, || neighbors_text(&r))?;
            Ok(EXIT_OK)
        }
        Command::Relations { file, samples } => {
            let spec = load(cli, file)?;
            let order_k = (1..=spec.order()).map(|k| verify_order_k(&spec, k)).collect::<Result<Vec<_>>>()?;
            let chain = verify_inclusion_chain(
                &spec,
                ChainOptions {
                    samples: *samples,
                    seed: cli.seed,
                },
            )?;
            let r = RelationsReport { order_k, chain };
            emit_report(cli, "relations", &r, || relations_text(&r))?;
            Ok(if r.holds() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Farthest { file } => {
            let sites = InstanceFile::read(file)?.site_set(cli.max_dim)?;
            let rows = sites
                .ids()
                .map(|id| {
                    Ok(FarthestRow {
                        id: id.to_string(),
                        result: farthest_nonempty(&sites, id)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            emit_report(cli, "farthest", &rows, || farthest_text(&rows))?;
            Ok(EXIT_OK)
        }
        Command::Render { file, k, bbox } => {
            let sites = InstanceFile::read(file)?.site_set(cli.max_dim)?;
            let bbox = match bbox {
                Some(b) => BBox::parse(b)?,
                None => BBox::around(&sites),
            };
            emit(cli, &render_svg(&sites, *k, &bbox)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let r = verify(cli, args)?;
            emit_report(cli, "sweep", &r, || sweep_text(&r))?;
            Ok(if r.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Gen(args) => {
            gen(cli, args)?;
            Ok(EXIT_OK)
        }
    }
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<SweepReport> {
    let specs = args.files.iter().map(|f| load(cli, f)).collect::<Result<Vec<_>>>()?;
    let n = specs.first().map_or(args.n, CellSpec::ambient_dim);
    if n > cli.max_dim {
        return Err(Error::DimensionTooLarge { dim: n, max: cli.max_dim });
    }
    let instances = if specs.is_empty() { args.instances } else { specs.len() };
    let mut cfg = SweepConfig::new(n, instances, cli.seed);
    if !args.checks.is_empty() {
        cfg = cfg.with_checks(args.checks.iter().copied());
    }
    if let Some(v) = args.min_sites {
        cfg.min_sites = v;
    }
    if let Some(v) = args.max_sites {
        cfg.max_sites = v;
    }
    if let Some(v) = args.max_order {
        cfg.max_order = v;
    }
    if specs.is_empty() {
        run_sweep(&cfg)
    } else {
        run_on_specs(&cfg, &specs)
    }
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<()> {
    if args.n > cli.max_dim {
        return Err(Error::DimensionTooLarge { dim: args.n, max: cli.max_dim });
    }
    let fraction = parse_scalar(&args.fraction)?;
    let mut files = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let cfg = InstanceConfig {
            ambient_dim: args.n,
            num_sites: args.sites,
            order: args.k,
            degenerate_fraction: fraction.clone(),
            coordinate_bound: args.bound,
            seed: cli.seed.wrapping_add(i as u64),
        };
        files.push(InstanceFile::from_spec(&generate(&cfg)?.spec).to_json());
    }
    match &cli.out {
        Some(dir) => {
            let io = |e: std::io::Error| Error::Format(format!("{}: {e}", dir.display()));
            fs::create_dir_all(dir).map_err(io)?;
            for (i, body) in files.iter().enumerate() {
                fs::write(dir.join(format!("instance-{i:04}.json")), format!("{body}\n")).map_err(io)?;
            }
        }
        None => {
            for body in files {
                println!("{body}");
            }
        }
    }
    Ok(())
}

fn h_text(out: &mut String, title: &str, h: &HPolyhedron) {
    writeln!(out, "{title}:").unwrap();
    for c in h.equalities() {
        writeln!(out, "  {c}").unwrap();
    }
    let prov = h.provenance();
    for (i, c) in h.inequalities().iter().enumerate() {
        match prov {
            Some(p) => writeln!(out, "  {c}    [{}|{}]", p[i].0, p[i].1).unwrap(),
            None => writeln!(out, "  {c}").unwrap(),
        }
    }
}

fn cell_text(r: &CellReport) -> String {
    let mut out = String::new();
    writeln!(out, "S = {{{}}} in R^{}", r.s.join(", "), r.ambient_dim).unwrap();
    writeln!(out, "dimension: lp {}, predicted {}", r.lp_dim, r.predicted_dim).unwrap();
    h_text(&mut out, "halfspaces", &r.halfspaces);
    h_text(&mut out, "irredundant", &r.irredundant);
    match &r.relint {
        Some(p) => writeln!(out, "relative interior point: {p}").unwrap(),
        None => writeln!(out, "cell is empty").unwrap(),
    }
    if let Some(c) = &r.certificate {
        writeln!(
            out,
            "ball: centre {}, radius^2 {}, boundary S {:?}, boundary T {:?}",
            c.ball.center,
            format_scalar(&c.ball.sq_radius),
            c.on_boundary_s,
            c.on_boundary_t
        )
        .unwrap();
    }
    out
}

fn dim_text(r: &DimensionReport) -> String {
    let mut out = String::new();
    if r.cell_empty {
        writeln!(out, "cell is empty").unwrap();
        return out;
    }
    if let Some(c) = &r.ball {
        writeln!(out, "ball: centre {}, radius^2 {}", c.ball.center, format_scalar(&c.ball.sq_radius)).unwrap();
    }
    let hull = |v: &Option<crate::polytope::VPolytope>| match v {
        Some(p) => p.vertices().iter().map(Point::to_string).collect::<Vec<_>>().join(" "),
        None => "-".into(),
    };
    writeln!(out, "F_S: {}", hull(&r.f_s)).unwrap();
    writeln!(out, "F_T: {}", hull(&r.f_t)).unwrap();
    match &r.c_point {
        Some(p) => writeln!(out, "faces meet at {p}; dim co(F_S, F_T) = {}", r.dim_co_faces).unwrap(),
        None => writeln!(out, "boundary hulls are disjoint").unwrap(),
    }
    writeln!(
        out,
        "predicted {}, lp {}: {}",
        r.predicted_dim,
        r.lp_dim,
        if r.agree { "agree" } else { "DISAGREE" }
    )
    .unwrap();
    out
}

fn neighbors_text(r: &NeighborReport) -> String {
    let mut out = String::new();
    for set in &r.minimal_sets {
        writeln!(out, "minimal: {{{}}}", set.join(", ")).unwrap();
    }
    writeln!(out, "neighbour set: {{{}}}", r.neighbor_set.join(", ")).unwrap();
    writeln!(out, "unique: {}, full-dimensional: {}", r.unique, r.interior_nonempty).unwrap();
    if let Some(pairs) = &r.facet_pairs {
        let pairs: Vec<String> = pairs.iter().map(|(s, t)| format!("{s}|{t}")).collect();
        writeln!(out, "facet pairs: {}", pairs.join(" ")).unwrap();
    }
    out
}

fn relations_text(r: &RelationsReport) -> String {
    let mut out = String::new();
    for o in &r.order_k {
        writeln!(
            out,
            "order {}: reduced {}, full inclusion {}, full equal {}",
            o.k,
            o.reduced.holds(),
            o.full_inclusion.holds(),
            o.full_equal
        )
        .unwrap();
    }
    for l in &r.chain.links {
        writeln!(
            out,
            "chain {} -> {}: {} points, covered {}, drop-farthest {}, strict {}",
            l.from_order, l.to_order, l.points_tested, l.covered, l.drop_farthest_ok, l.strict_evidence
        )
        .unwrap();
    }
    writeln!(out, "{}", if r.holds() { "holds" } else { "VIOLATED" }).unwrap();
    out
}

fn farthest_text(rows: &[FarthestRow]) -> String {
    let mut out = String::new();
    for row in rows {
        match &row.result {
            Farthest::Nonempty { witness, exposed_ball } => writeln!(
                out,
                "{}: nonempty, witness {witness}, ball centre {} radius^2 {}",
                row.id,
                exposed_ball.center,
                format_scalar(&exposed_ball.sq_radius)
            ),
            Farthest::Empty => writeln!(out, "{}: empty", row.id),
        }
        .unwrap();
    }
    out
}

fn sweep_text(r: &SweepReport) -> String {
    let mut out = String::new();
    let c = &r.counters;
    writeln!(out, "instances: {} ({} degenerate)", c.instances, c.degenerate_instances).unwrap();
    for (d, count) in &c.cells_by_dim {
        writeln!(out, "  cells of dimension {d}: {count}").unwrap();
    }
    writeln!(out, "multi-minimal instances: {}", c.multi_minimal_instances).unwrap();
    writeln!(out, "full neighbour chain breaks: {}", c.full_chain_violations).unwrap();
    writeln!(out, "failures: {}", r.failures.len()).unwrap();
    for f in &r.failures {
        writeln!(out, "  #{} {}: {}", f.index, f.check, f.detail).unwrap();
    }
    out
}
