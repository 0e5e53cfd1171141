//! Command-line frontend: validate, stats, decompose, guard, verify,
//! generate. All machine output is JSON with stable field names; exit codes
//! are 0 (ok/pass), 1 (validation or coverage failure), 2 (usage), 3
//! (internal invariant violation).

use crate::classify::{classify_contact, count_collars, ContactKind};
use crate::decomp::{decompose, graph_genus};
use crate::gen;
use crate::geom::Point3;
use crate::guard::{bound_m, bound_r, place_guards, GuardError, GuardMode, GuardSet, GuardStatus};
use crate::model::{
    classify_edges, euler_genus, normalize_orientation, parse_polyhedron, validate,
    write_polyhedron, Adjacency, Edge, Polyhedron,
};
use crate::verify::{coverage_check_on, input_frame_bricks};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "orthoguard",
    about = "Reflex-edge guards for 2-reflex orthogonal polyhedra",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the structural invariants of an ORP document.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print counts, both genus computations, contact classes and bounds.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Dump bricks and contact rectangles as JSON.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "dump-bricks")]
        dump_bricks: Option<PathBuf>,
    },
    /// Place reflex-edge guards and write the guard set.
    Guard {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Open)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a guard set against sampled interior points.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        guards: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Open)]
        mode: ModeArg,
        #[arg(long, default_value_t = 3)]
        density: usize,
        #[arg(long = "edge-samples", default_value_t = 16)]
        edge_samples: usize,
        /// Write the JSON coverage report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate an instance of one of the structural families.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Teeth for comb.
    #[arg(long, default_value_t = 3)]
    k: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Brick count for stack/composite.
    #[arg(long, default_value_t = 8)]
    bricks: usize,
    /// Levels for castle/double-castle.
    #[arg(long, default_value_t = 2)]
    levels: u32,
    /// Arm length for ring.
    #[arg(long, default_value_t = 4)]
    arm: i64,
    /// Independent cycles for ring.
    #[arg(long, default_value_t = 1)]
    loops: u32,
    /// Extents for cuboid.
    #[arg(long, default_value_t = 2)]
    sx: i64,
    #[arg(long, default_value_t = 2)]
    sy: i64,
    #[arg(long, default_value_t = 2)]
    sz: i64,
    /// Cross-section for extrude: "x0,z0 x1,z1 ..." counterclockwise.
    #[arg(long)]
    points: Option<String>,
    #[arg(long, default_value_t = 1)]
    depth: i64,
    /// Columns for monotone.
    #[arg(long, default_value_t = 6)]
    columns: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cuboid,
    Extrude,
    Comb,
    Stack,
    Castle,
    DoubleCastle,
    Ring,
    Figure2,
    Composite,
    Monotone,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Open,
    Closed,
}

impl From<ModeArg> for GuardMode {
    fn from(m: ModeArg) -> GuardMode {
        match m {
            ModeArg::Open => GuardMode::Open,
            ModeArg::Closed => GuardMode::Closed,
        }
    }
}

/// Serialized guard file, shared between `guard` and `verify`.
#[derive(Serialize, Deserialize)]
pub struct GuardsFile {
    pub version: u32,
    pub status: String,
    pub mode: String,
    pub guards: Vec<GuardEntry>,
    pub certificate: CertificateJson,
}

#[derive(Serialize, Deserialize)]
pub struct GuardEntry {
    pub a: [i64; 3],
    pub b: [i64; 3],
    pub axis: String,
}

#[derive(Serialize, Deserialize)]
pub struct CertificateJson {
    pub m: usize,
    pub r: usize,
    pub g: u32,
    pub b: usize,
    #[serde(rename = "boundR")]
    pub bound_r: i64,
    #[serde(rename = "boundM")]
    pub bound_m: i64,
    pub count: usize,
}

pub fn guards_to_json(gs: &GuardSet) -> serde_json::Value {
    let entries: Vec<GuardEntry> = gs
        .guards
        .iter()
        .map(|e| GuardEntry {
            a: e.a.to_array(),
            b: e.b.to_array(),
            axis: e.axis.to_string(),
        })
        .collect();
    serde_json::to_value(GuardsFile {
        version: 1,
        status: match gs.status {
            GuardStatus::Convex => "convex".into(),
            GuardStatus::Guarded => "guarded".into(),
        },
        mode: match gs.mode {
            GuardMode::Open => "open".into(),
            GuardMode::Closed => "closed".into(),
        },
        guards: entries,
        certificate: CertificateJson {
            m: gs.certificate.m,
            r: gs.certificate.r,
            g: gs.certificate.g,
            b: gs.certificate.b,
            bound_r: gs.certificate.bound_r,
            bound_m: gs.certificate.bound_m,
            count: gs.certificate.count,
        },
    })
    .expect("guard set serializes")
}

pub fn guards_from_json(
    text: &str,
    mode: GuardMode,
    status_hint: Option<GuardStatus>,
) -> Result<GuardSet, String> {
    let file: GuardsFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let guards: Vec<Edge> = file
        .guards
        .iter()
        .map(|g| {
            let a = Point3::new(g.a[0], g.a[1], g.a[2]);
            let b = Point3::new(g.b[0], g.b[1], g.b[2]);
            let axis = a
                .axis_to(b)
                .ok_or_else(|| format!("degenerate guard segment {a:?} -> {b:?}"))?;
            Ok(Edge {
                a,
                b,
                axis,
                convexity: crate::model::Convexity::Reflex,
            })
        })
        .collect::<Result<_, String>>()?;
    let status = status_hint.unwrap_or(if file.status == "convex" {
        GuardStatus::Convex
    } else {
        GuardStatus::Guarded
    });
    Ok(GuardSet {
        guards,
        mode,
        status,
        certificate: crate::guard::Certificate {
            m: file.certificate.m,
            r: file.certificate.r,
            g: file.certificate.g,
            b: file.certificate.b,
            bound_r: file.certificate.bound_r,
            bound_m: file.certificate.bound_m,
            count: file.certificate.count,
        },
        rotation: crate::geom::Rotation::Identity,
    })
}

/// Structural statistics of one document.
pub fn stats_json(p: &Polyhedron) -> Result<serde_json::Value, GuardError> {
    let rep = validate(p);
    if !rep.ok() {
        return Err(GuardError::Validation(
            rep.violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    let adj0 = Adjacency::build(p)?;
    let edges0 = classify_edges(p, &adj0)?;
    let (np, rot) = normalize_orientation(p, &edges0)?;
    let (np, adj, edges) = if rot == crate::geom::Rotation::Identity {
        (p.clone(), adj0, edges0)
    } else {
        let adj = Adjacency::build(&np)?;
        let edges = classify_edges(&np, &adj)?;
        (np, adj, edges)
    };
    let g_euler = euler_genus(&np, &adj)?;
    let d = decompose(&np, &adj, &edges)?;
    let g_graph = graph_genus(&d.graph);
    let b = count_collars(&d.contacts, &d.bricks);
    let (m, r) = (edges.m() as i64, edges.r() as i64);
    let g = g_euler as i64;

    let mut per_class = std::collections::BTreeMap::new();
    for kind in [
        ContactKind::PrimitiveD,
        ContactKind::PrimitiveI,
        ContactKind::Collar,
        ContactKind::Other,
    ] {
        per_class.insert(format!("{kind:?}"), 0usize);
    }
    for c in &d.contacts {
        let kind = classify_contact(c, &d.bricks[c.lower], &d.bricks[c.upper]).kind;
        *per_class.get_mut(&format!("{kind:?}")).unwrap() += 1;
    }

    let lemma5_rhs = 4 * r - 12 * g - 4 * b as i64 + 12;
    let weak_rhs = 3 * r - 12 * g + 12;
    let is_stack = d.contacts.iter().all(|c| {
        matches!(
            classify_contact(c, &d.bricks[c.lower], &d.bricks[c.upper]).kind,
            ContactKind::PrimitiveD | ContactKind::PrimitiveI
        )
    }) && d.contacts.len() + 1 == d.bricks.len();

    Ok(json!({
        "n": p.n(),
        "m": m,
        "r": r,
        "genusEuler": g_euler,
        "genusGraph": g_graph,
        "b": b,
        "bricks": d.bricks.len(),
        "contacts": {
            "primitiveD": per_class["PrimitiveD"],
            "primitiveI": per_class["PrimitiveI"],
            "collar": per_class["Collar"],
            "other": per_class["Other"],
            "total": d.contacts.len(),
        },
        "inequalities": {
            "lemma5": { "lhs": m, "rhs": lemma5_rhs, "holds": m >= lemma5_rhs },
            "weak":   { "lhs": m, "rhs": weak_rhs,   "holds": m >= weak_rhs },
            "stackIdentity": if is_stack {
                json!({ "m": m, "expected": 6 * r - 12 * g + 12, "holds": m == 6 * r - 12 * g + 12 })
            } else {
                json!(null)
            },
        },
        "bounds": {
            "boundR": bound_r(r as usize, g_euler, b),
            "boundM": bound_m(m as usize, g_euler),
        },
    }))
}

pub fn decompose_json(p: &Polyhedron) -> Result<serde_json::Value, GuardError> {
    let rep = validate(p);
    if !rep.ok() {
        return Err(GuardError::Validation("input does not validate".into()));
    }
    let bricks = input_frame_bricks(p)?;
    // Re-run in the normalized frame for classification.
    let adj0 = Adjacency::build(p)?;
    let edges0 = classify_edges(p, &adj0)?;
    let (np, rot) = normalize_orientation(p, &edges0)?;
    let (np, adj, edges) = if rot == crate::geom::Rotation::Identity {
        (p.clone(), adj0, edges0)
    } else {
        let adj = Adjacency::build(&np)?;
        let edges = classify_edges(&np, &adj)?;
        (np, adj, edges)
    };
    let d = decompose(&np, &adj, &edges)?;
    let contacts: Vec<serde_json::Value> = d
        .contacts
        .iter()
        .map(|c| {
            let kind = classify_contact(c, &d.bricks[c.lower], &d.bricks[c.upper]).kind;
            json!({
                "z": c.z,
                "x": [c.x.lo, c.x.hi],
                "y": [c.y.lo, c.y.hi],
                "lower": c.lower,
                "upper": c.upper,
                "kind": kind,
                "reflexEdges": c.reflex_edges.len(),
            })
        })
        .collect();
    Ok(json!({
        "bricks": bricks.iter().map(|b| json!({
            "min": b.min.to_array(),
            "max": b.max.to_array(),
        })).collect::<Vec<_>>(),
        "contacts": contacts,
        "note": "contacts are reported in normalized coordinates, bricks in input coordinates",
    }))
}

fn read_input(path: &PathBuf) -> Result<Polyhedron, (i32, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (2, format!("cannot read {}: {e}", path.display())))?;
    parse_polyhedron(&text).map_err(|e| (1, e.to_string()))
}

fn exit_code_of(e: &GuardError) -> i32 {
    match e {
        GuardError::Validation(_) => 1,
        GuardError::Model(_) => 1,
        GuardError::Decomp(_) => 3,
        GuardError::IsolatedConvexBrick => 3,
        GuardError::ComponentNotDoubleCastle(_) => 3,
        GuardError::Internal(_) => 3,
    }
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), (i32, String)> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| (2, format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn generate(args: &GenerateArgs) -> Result<Polyhedron, (i32, String)> {
    let p = match args.family {
        Family::Cuboid => gen::gen_cuboid(args.sx, args.sy, args.sz),
        Family::Comb => {
            if args.k < 2 {
                return Err((2, "comb needs --k >= 2".into()));
            }
            gen::gen_comb(args.k)
        }
        Family::Stack => gen::gen_stack(args.seed, args.bricks.max(1)),
        Family::Castle => gen::gen_castle(args.seed, args.levels.max(1)),
        Family::DoubleCastle => gen::gen_double_castle(args.seed, args.levels.max(1)),
        Family::Ring => gen::gen_ring(args.arm.max(3), args.loops.max(1)),
        Family::Figure2 => gen::gen_figure2(),
        Family::Composite => gen::gen_composite(args.seed, args.bricks.max(1)),
        Family::Monotone => gen::gen_monotone_prism(args.seed, args.columns.max(1)),
        Family::Extrude => {
            let spec = args
                .points
                .as_ref()
                .ok_or((2, "extrude needs --points \"x0,z0 x1,z1 ...\"".to_string()))?;
            let mut pts = Vec::new();
            for tok in spec.split_whitespace() {
                let mut it = tok.split(',');
                let x = it
                    .next()
                    .and_then(|s| s.parse::<i64>().ok())
                    .ok_or((2, format!("bad point `{tok}`")))?;
                let z = it
                    .next()
                    .and_then(|s| s.parse::<i64>().ok())
                    .ok_or((2, format!("bad point `{tok}`")))?;
                pts.push((x, z));
            }
            gen::gen_extrude(&pts, args.depth).map_err(|e| (2, e.to_string()))?
        }
    };
    Ok(p)
}

/// Dispatch one command line; returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn run(cli: Cli) -> Result<i32, (i32, String)> {
    match cli.cmd {
        Cmd::Validate { input } => {
            let p = read_input(&input)?;
            let rep = validate(&p);
            let val = json!({
                "ok": rep.ok(),
                "violations": rep.violations.iter().map(|v| json!({
                    "code": v.code,
                    "location": v.location,
                    "message": v.message,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&val).unwrap());
            Ok(if rep.ok() { 0 } else { 1 })
        }
        Cmd::Stats { input } => {
            let p = read_input(&input)?;
            let val = stats_json(&p).map_err(|e| (exit_code_of(&e), e.to_string()))?;
            println!("{}", serde_json::to_string_pretty(&val).unwrap());
            Ok(0)
        }
        Cmd::Decompose { input, dump_bricks } => {
            let p = read_input(&input)?;
            let val = decompose_json(&p).map_err(|e| (exit_code_of(&e), e.to_string()))?;
            emit(&dump_bricks, serde_json::to_string_pretty(&val).unwrap())?;
            Ok(0)
        }
        Cmd::Guard { input, mode, out } => {
            let p = read_input(&input)?;
            let gs = place_guards(&p, mode.into())
                .map_err(|e| (exit_code_of(&e), e.to_string()))?;
            let val = guards_to_json(&gs);
            emit(&out, serde_json::to_string_pretty(&val).unwrap())?;
            Ok(0)
        }
        Cmd::Verify {
            input,
            guards,
            mode,
            density,
            edge_samples,
            report,
        } => {
            let p = read_input(&input)?;
            let text = std::fs::read_to_string(&guards)
                .map_err(|e| (2, format!("cannot read {}: {e}", guards.display())))?;
            let gs = guards_from_json(&text, mode.into(), None).map_err(|e| (1, e))?;
            let rep = coverage_check_on(&p, &gs, density, edge_samples)
                .map_err(|e| (exit_code_of(&e), e.to_string()))?;
            let pass = rep.pass();
            let val = serde_json::to_value(&rep).unwrap();
            match report {
                Some(path) => emit(&Some(path), serde_json::to_string_pretty(&val).unwrap())?,
                None => println!("{}", serde_json::to_string_pretty(&val).unwrap()),
            }
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::Generate(args) => {
            let p = generate(&args)?;
            emit(&args.out, write_polyhedron(&p))?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_json_roundtrip() {
        let gs = place_guards(&gen::gen_comb(3), GuardMode::Open).unwrap();
        let val = guards_to_json(&gs);
        let text = serde_json::to_string(&val).unwrap();
        let back = guards_from_json(&text, GuardMode::Open, None).unwrap();
        assert_eq!(back.guards.len(), gs.guards.len());
        assert_eq!(back.certificate.r, gs.certificate.r);
    }

    #[test]
    fn stats_for_figure2() {
        let val = stats_json(&gen::gen_figure2()).unwrap();
        assert_eq!(val["m"], 23);
        assert_eq!(val["r"], 2);
        assert_eq!(val["genusEuler"], 0);
        assert_eq!(val["genusGraph"], 0);
        assert_eq!(val["b"], 0);
    }
}
