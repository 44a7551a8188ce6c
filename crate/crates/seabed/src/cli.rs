//! The `seabed` command line.
//!
//! Exit codes: 0 on success, 1 when an input fails a check or a computation
//! is refused, 2 on usage errors. Diagnostics go to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use seabed_core::pentagrid::{
    infer_markings, penrose_offsets, seabed_offsets, Inference, PentagridParams, DEFAULT_TOLERANCE,
};
use seabed_core::recognizability::{compose, Confidence, SuperRole};
use seabed_core::render::{to_svg, RenderStyle};
use seabed_core::substitution::{
    check_primitive, perron_frequencies, Primitivity, SubstitutionRule, DEFAULT_BUDGET,
};
use seabed_core::tiles::{validate_patch, validate_shapes, ShapeViolation, Violation};
use seabed_core::{Patch, PlacedTile, ProtoId, PrototileSet};

use crate::files::{self, Loaded, RuleFile, TileRecord};
use crate::parallel;

#[derive(Debug, Parser)]
#[command(name = "seabed", version, about = "Marked rhomb tilings: substitution, composition, pentagrids")]
struct Cli {
    /// Rule file; the shipped rule when absent.
    #[arg(long, global = true)]
    rule: Option<PathBuf>,
    /// Worker threads for substitution and pentagrid dualization.
    #[arg(long, global = true, env = "SEABED_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Substitute a single prototile or a patch file.
    Substitute(SubstituteArgs),
    /// Dualize a pentagrid, optionally inferring markings.
    Pentagrid(PentagridArgs),
    /// Recover the parent patch of a substituted patch.
    Compose(ComposeArgs),
    /// Check a patch; prints a JSON violation list.
    Validate(InArgs),
    /// Print the substitution matrix, primitivity and Perron data.
    Matrix,
    /// Write an SVG picture of a patch.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct SubstituteArgs {
    /// Start from one prototile at the origin.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    proto: Option<String>,
    /// Start from a patch file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(short = 'n', long, default_value_t = 1)]
    n: u32,
    /// Refuse runs predicted to exceed this many tiles.
    #[arg(long, env = "SEABED_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PentagridArgs {
    /// Five comma-separated offsets.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "seed", required_unless_present = "seed")]
    offsets: Option<Vec<f64>>,
    /// Draw random offsets from this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Offset sum for seeded draws; integral sums give Penrose tilings.
    #[arg(long, requires = "seed")]
    sum: Option<f64>,
    #[arg(long)]
    radius: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long)]
    infer_markings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComposeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Where to write the recovered parent patch.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the per-vertex role report; stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Style file; defaults when absent.
    #[arg(long)]
    style: Option<PathBuf>,
    /// Outline the supertiles recovered by composition.
    #[arg(long)]
    overlay: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1.
    Check(String),
}

impl Failure {
    fn check(e: impl std::fmt::Display) -> Failure {
        Failure::Check(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx<'a> {
    rule: SubstitutionRule,
    hash: String,
    pool: rayon::ThreadPool,
    stdout: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn set(&self) -> &PrototileSet {
        self.rule.prototiles()
    }

    fn emit(&mut self, out: Option<&Path>, text: &str) -> Outcome {
        match out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Check(format!("cannot write {}: {e}", path.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Check(format!("cannot write output: {e}"))),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn in_file(path: &Path, what: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Check(format!("{what} {}: {e}", path.display()))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Normal output is written to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            log::error!("{m}");
            2
        }
        Err(Failure::Check(m)) => {
            log::error!("{m}");
            1
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Outcome {
    let (rule, name) = match &cli.rule {
        Some(path) => {
            let text = read(path)?;
            let f = RuleFile::parse(&text).map_err(|e| in_file(path, "rule", e))?;
            let r = f.rule().map_err(|e| in_file(path, "rule", e))?;
            (r, f.name)
        }
        None => {
            let f = RuleFile::parse(files::DEFAULT_RULE).map_err(Failure::check)?;
            (f.rule().map_err(Failure::check)?, f.name)
        }
    };
    if cli.threads == Some(0) {
        return Err(Failure::Usage("--threads must be positive".into()));
    }
    let hash = files::prototile_set_hash(rule.prototiles());
    log::info!("rule {name}, prototile set {hash}");
    let mut ctx = Ctx {
        rule,
        hash,
        pool: parallel::pool(cli.threads),
        stdout,
    };
    match cli.cmd {
        Command::Substitute(a) => substitute(&mut ctx, a),
        Command::Pentagrid(a) => pentagrid(&mut ctx, a),
        Command::Compose(a) => compose_cmd(&mut ctx, a),
        Command::Validate(a) => validate(&mut ctx, a),
        Command::Matrix => matrix(&mut ctx),
        Command::Render(a) => render(&mut ctx, a),
    }
}

fn load_marked(ctx: &Ctx, path: &Path) -> Result<Patch, Failure> {
    let text = read(path)?;
    files::load_patch(&text, ctx.set()).map_err(|e| in_file(path, "patch", e))
}

fn substitute(ctx: &mut Ctx, a: SubstituteArgs) -> Outcome {
    let start = match (&a.proto, &a.input) {
        (Some(name), _) => {
            let id = ProtoId::parse(name).ok_or_else(|| Failure::Usage(format!("unknown prototile `{name}`")))?;
            Patch::new(vec![PlacedTile::new(id, 0, false, Default::default())])
        }
        (None, Some(path)) => load_marked(ctx, path)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let p = parallel::substitute_n(&start, &ctx.rule, a.n, a.budget, &ctx.pool).map_err(Failure::check)?;
    log::info!("substituted {} tiles {} times into {} tiles [{}]", start.len(), a.n, p.len(), ctx.hash);
    let text = files::save_patch(&p, ctx.set());
    ctx.emit(a.out.as_deref(), &text)
}

fn pentagrid(ctx: &mut Ctx, a: PentagridArgs) -> Outcome {
    let params = match (&a.offsets, a.seed, a.sum) {
        (Some(o), _, _) => {
            let o: [f64; 5] = o
                .as_slice()
                .try_into()
                .map_err(|_| Failure::Usage("--offsets needs five values".into()))?;
            PentagridParams::new(o, a.radius).map_err(|e| Failure::Usage(e.to_string()))?
        }
        (None, Some(seed), None) => penrose_offsets(seed, a.radius),
        (None, Some(seed), Some(sum)) => {
            seabed_offsets(seed, sum, a.radius).map_err(|e| Failure::Usage(e.to_string()))?
        }
        (None, None, _) => unreachable!("clap requires offsets or a seed"),
    };
    let params = PentagridParams::with_tolerance(params.offsets, params.radius, a.tolerance)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    log::info!(
        "offsets {:?}, sum {:.12}, radius {} [{}]",
        params.offsets,
        params.offset_sum(),
        params.radius,
        ctx.hash
    );
    let shapes = parallel::generate(&params, &ctx.pool).map_err(Failure::check)?;
    log::info!("{} rhombs", shapes.len());
    let text = if a.infer_markings {
        match infer_markings(&shapes, ctx.set()).map_err(Failure::check)? {
            Inference::Unique(p) => {
                log::info!("markings determined for all {} tiles", p.len());
                files::save_patch(&p, ctx.set())
            }
            Inference::Ambiguous(rep) => {
                log::warn!(
                    "markings undetermined for {} of {} tiles; those are written as bare shapes",
                    rep.undetermined.len(),
                    shapes.len()
                );
                let bare: Vec<_> = rep.undetermined.iter().map(|(s, _)| *s).collect();
                files::save_mixed(&rep.determined.normalized(), &bare, ctx.set())
            }
        }
    } else {
        files::save_mixed(&Patch::default(), &shapes, ctx.set())
    };
    ctx.emit(a.out.as_deref(), &text)
}

fn role_name(r: SuperRole) -> &'static str {
    match r {
        SuperRole::SuperLight => "super-light",
        SuperRole::SuperDark => "super-dark",
        SuperRole::SuperUnmarked => "super-unmarked",
        SuperRole::SuperStripe => "super-stripe",
    }
}

fn compose_cmd(ctx: &mut Ctx, a: ComposeArgs) -> Outcome {
    let p = load_marked(ctx, &a.input)?;
    let c = compose(&p, &ctx.rule).map_err(Failure::check)?;
    let detected = c.roles.detected().count();
    log::info!(
        "{} parents, {} undetermined faces, {} margin tiles, {} supertile vertices [{}]",
        c.parent.len(),
        c.undetermined.len(),
        c.margin.len(),
        detected,
        ctx.hash
    );
    let roles: Vec<Value> = c
        .vertices
        .iter()
        .zip(&c.roles.entries)
        .map(|(v, (role, conf))| {
            json!({
                "vertex": v.c,
                "role": role.map(role_name),
                "confidence": match conf {
                    Confidence::Interior => "interior",
                    Confidence::BoundaryUnknown => "boundary-unknown",
                },
            })
        })
        .collect();
    let report = json!({
        "schema_version": files::SCHEMA_VERSION,
        "prototile_set": ctx.hash,
        "parents": c.parent.len(),
        "assigned_children": c.assignment.len(),
        "margin": c.margin.len(),
        "supertile_vertices": detected,
        "undetermined": c.undetermined.iter().map(TileRecord::bare).collect::<Vec<_>>(),
        "roles": roles,
    });
    let mut text = serde_json::to_string_pretty(&report).expect("json");
    text.push('\n');
    if let Some(out) = &a.out {
        ctx.emit(Some(out), &files::save_patch(&c.parent, ctx.set()))?;
    }
    ctx.emit(a.report.as_deref(), &text)
}

fn tile_json(t: &PlacedTile) -> Value {
    serde_json::to_value(TileRecord::marked(t)).expect("json")
}

fn violation_json(v: &Violation) -> Value {
    match v {
        Violation::Overlap { a, b } => json!({"kind": "overlap", "a": tile_json(a), "b": tile_json(b)}),
        Violation::NotEdgeToEdge { tile, other, vertex } => json!({
            "kind": "not_edge_to_edge",
            "tile": tile_json(tile),
            "other": tile_json(other),
            "vertex": vertex.c,
        }),
        Violation::MarkingMismatch { a, edge_a, b, edge_b } => json!({
            "kind": "marking_mismatch",
            "a": tile_json(a),
            "edge_a": edge_a,
            "b": tile_json(b),
            "edge_b": edge_b,
        }),
    }
}

fn shape_violation_json(v: &ShapeViolation) -> Value {
    match v {
        ShapeViolation::Overlap { a, b } => json!({"kind": "overlap", "a": a, "b": b}),
        ShapeViolation::NotEdgeToEdge { tile, other, vertex } => json!({
            "kind": "not_edge_to_edge",
            "tile": tile,
            "other": other,
            "vertex": vertex.c,
        }),
    }
}

/// Violations of a loaded file; bare tiles are checked by shape and
/// referred to by index.
fn violations(l: &Loaded, set: &PrototileSet) -> Vec<Value> {
    if l.bare.is_empty() {
        return validate_patch(&l.marked, set).violations.iter().map(violation_json).collect();
    }
    let mut out: Vec<Value> = validate_shapes(&l.shapes()).iter().map(shape_violation_json).collect();
    out.extend(
        validate_patch(&l.marked, set)
            .violations
            .iter()
            .filter(|v| matches!(v, Violation::MarkingMismatch { .. }))
            .map(violation_json),
    );
    out
}

fn validate(ctx: &mut Ctx, a: InArgs) -> Outcome {
    let text = read(&a.input)?;
    let l = files::load_tiles(&text, ctx.set()).map_err(|e| in_file(&a.input, "patch", e))?;
    let v = violations(&l, ctx.set());
    let report = json!({
        "valid": v.is_empty(),
        "tiles": l.marked.len() + l.bare.len(),
        "violations": v,
    });
    let mut out = serde_json::to_string_pretty(&report).expect("json");
    out.push('\n');
    ctx.emit(None, &out)?;
    if v.is_empty() {
        log::info!("{} is valid [{}]", a.input.display(), ctx.hash);
        Ok(())
    } else {
        Err(Failure::Check(format!("{}: {} violations", a.input.display(), v.len())))
    }
}

fn matrix(ctx: &mut Ctx) -> Outcome {
    let m = ctx.rule.matrix();
    let mut s = String::new();
    s.push_str("matrix (column j lists the children of prototile j)\n");
    s.push_str(&format!("{:>10}", ""));
    for id in ProtoId::ALL {
        s.push_str(&format!("{:>10}", id.name()));
    }
    s.push('\n');
    for (i, row) in m.m.iter().enumerate() {
        s.push_str(&format!("{:>10}", ProtoId::ALL[i].name()));
        for x in row {
            s.push_str(&format!("{x:>10}"));
        }
        s.push('\n');
    }
    let lambda = ctx.rule.factor().checked_mul(ctx.rule.factor()).map_err(Failure::check)?;
    let exact = m.area_identity(lambda).map_err(Failure::check)?;
    s.push_str(&format!("area identity with eigenvalue {lambda}: {}\n", if exact { "exact" } else { "fails" }));
    match check_primitive(&m) {
        Primitivity::Primitive(k) => s.push_str(&format!("primitive k = {k}\n")),
        Primitivity::NotPrimitive => s.push_str("not primitive\n"),
    }
    if let Ok(p) = perron_frequencies(&m) {
        s.push_str(&format!("perron eigenvalue {:.9}\n", p.eigenvalue));
        s.push_str(&format!("perron residual {:.3e}\n", p.residual));
        for (id, f) in ProtoId::ALL.iter().zip(p.frequencies) {
            s.push_str(&format!("frequency {:<10}{f:.9}\n", id.name()));
        }
    }
    log::info!("matrix printed [{}]", ctx.hash);
    ctx.emit(None, &s)
}

fn render(ctx: &mut Ctx, a: RenderArgs) -> Outcome {
    let p = load_marked(ctx, &a.input)?;
    let style = match &a.style {
        Some(path) => {
            let text = read(path)?;
            files::load_style(&text).map_err(|e| in_file(path, "style", e))?
        }
        None => RenderStyle::default(),
    };
    let comp = if a.overlay {
        Some(compose(&p, &ctx.rule).map_err(Failure::check)?)
    } else {
        None
    };
    let svg = to_svg(&p, ctx.set(), &style, comp.as_ref().map(|c| (c, &ctx.rule)));
    log::info!("rendered {} tiles [{}]", p.len(), ctx.hash);
    ctx.emit(a.out.as_deref(), &svg)
}
