//! Command-line front end.
//!
//! Every command prints one JSON document on standard output. Exit codes: 0 on
//! success, 1 for unreadable or malformed input, 2 when the instance fails
//! validation, 3 when `--check` finds a disagreement with the brute-force
//! oracle, 4 when a solver precondition does not hold.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use planarint_core::dual::{build_dual, build_modified_dual, DualArcKind};
use planarint_core::gen::{grid, random_planar, wheel, GenConfig, Terminals};
use planarint_core::network::{validate, ValidationReport};
use planarint_core::oracle::{
    densest_subgraph_exhaustive, flow_value, interdict_exhaustive, security_exhaustive, Component, Removal,
};
use planarint_core::reductions::{encode_kdense, solve_kdense_exhaustive, PlanarGraph};
use planarint_core::security::solve_security_with;
use planarint_core::st::{solve_st_interdiction_with, WitnessArc};
use planarint_core::{trace_faces, EmbeddedNetwork, Mode, StOptions};
use serde_json::{json, Value};

use crate::exec::Threaded;
use crate::io::{ext_value, graph_from_str, network_from_str, network_to_value, read_input, render};

#[derive(Parser, Debug)]
#[command(
    name = "planarint",
    version,
    about = "Interdiction and flow security on planar networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Budgeted s-t interdiction.
    Interdict(InterdictArgs),
    /// Smallest budget that breaks a saturating flow, or lowers the maximum flow
    /// when there are no demands.
    Security(SecurityArgs),
    /// Encode k-densest subgraph as interdiction, optionally solving it.
    Kdense(KdenseArgs),
    /// Brute-force reference solvers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Check an instance and print a report.
    Validate(InputArgs),
    /// Generate an instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Print the dual network.
    Dual(DualArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Instance file, `-` for standard input.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct InterdictArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub budget: usize,
    /// Allow removing vertices.
    #[arg(long)]
    pub vertex_interdiction: bool,
    /// Honor vertex capacities.
    #[arg(long)]
    pub vertex_capacities: bool,
    /// Restrict the parity range to what a shortest walk can reach.
    #[arg(long)]
    pub clip_parity: bool,
    /// Compare against the brute-force oracle.
    #[arg(long)]
    pub check: bool,
    /// Also report an optimal removal for every smaller budget.
    #[arg(long)]
    pub profile: bool,
}

#[derive(Args, Debug)]
pub struct SecurityArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub max_budget: usize,
    #[arg(long)]
    pub vertex_interdiction: bool,
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct KdenseArgs {
    /// Planar graph file with `edges` and `rotations`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Solve the encoding by enumeration instead of printing it.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Interdiction profile by enumerating removal sets.
    Interdict {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        budget: usize,
        #[arg(long)]
        vertex_interdiction: bool,
        #[arg(long)]
        vertex_capacities: bool,
    },
    /// Security budget by enumerating removal sets.
    Security {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_budget: usize,
        #[arg(long)]
        vertex_interdiction: bool,
    },
    /// Maximum flow without interdiction.
    Maxflow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vertex_capacities: bool,
    },
    /// Densest k-vertex subgraph of a planar graph file.
    Densest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
pub struct GenOptions {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw finite vertex costs and capacities.
    #[arg(long)]
    pub removable_vertices: bool,
    /// Write to a file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Grid with s and t at opposite corners.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[command(flatten)]
        opts: GenOptions,
    },
    /// Wheel with the hub as source.
    Wheel {
        /// Number of rim vertices.
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        opts: GenOptions,
    },
    /// Random connected planar instance.
    RandomPlanar {
        #[arg(long)]
        vertices: usize,
        /// Number of arcs; defaults to twice the vertex count.
        #[arg(long)]
        arcs: Option<usize>,
        /// Several sources and sinks with balanced demands.
        #[arg(long)]
        balanced: bool,
        #[command(flatten)]
        opts: GenOptions,
    },
}

#[derive(Args, Debug)]
pub struct DualArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Include the vertex layer.
    #[arg(long)]
    pub modified: bool,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Invalid(Value),
    Mismatch(Value),
    Precondition(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Mismatch(_) => 3,
            Failure::Precondition(_) => 4,
        }
    }
}

fn precondition(e: impl std::fmt::Display) -> Failure {
    Failure::Precondition(e.to_string())
}

fn mode_of(vertex_interdiction: bool) -> Mode {
    if vertex_interdiction {
        Mode::WithVertices
    } else {
        Mode::ArcsOnly
    }
}

fn load_network(path: &Path) -> Result<EmbeddedNetwork, Failure> {
    let text = read_input(path).map_err(|e| Failure::Input(e.to_string()))?;
    network_from_str(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn load_graph(path: &Path) -> Result<PlanarGraph, Failure> {
    let text = read_input(path).map_err(|e| Failure::Input(e.to_string()))?;
    graph_from_str(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn report_value(r: &ValidationReport) -> Value {
    json!({
        "valid": r.is_valid(),
        "embedding_ok": r.embedding_ok(),
        "rotation_error": r.rotation_error.as_ref().map(|e| e.to_string()),
        "euler": r.euler.iter().map(|c| json!({
            "vertices": c.vertices, "arcs": c.arcs, "faces": c.faces, "ok": c.ok,
        })).collect::<Vec<_>>(),
        "bound_violations": r.bound_violations,
        "demand_sum": r.demand_sum,
        "demand_sign_violations": r.demand_sign_violations,
        "terminal_cost_violations": r.terminal_cost_violations,
        "terminals_overlap": r.terminals_overlap,
        "unknown_terminals": r.unknown_terminals,
    })
}

/// Structural checks every solver needs; demands are checked only on request.
fn require_valid(net: &EmbeddedNetwork, demands: bool) -> Result<(), Failure> {
    let r = validate(net);
    let ok = r.embedding_ok()
        && r.bound_violations.is_empty()
        && !r.terminals_overlap
        && r.unknown_terminals.is_empty()
        && (!demands || (r.demand_balanced() && r.demand_sign_violations.is_empty()));
    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid(report_value(&r)))
    }
}

fn witness_value(witness: &[WitnessArc]) -> Value {
    witness
        .iter()
        .map(|w| {
            let mut v = match w.kind {
                DualArcKind::Forward(e) => json!({"kind": "forward", "arc": e}),
                DualArcKind::Reverse(e) => json!({"kind": "reverse", "arc": e}),
                DualArcKind::VertexOut { vertex, corner } => {
                    json!({"kind": "vertex_out", "vertex": vertex, "corner": corner})
                }
                DualArcKind::VertexIn { vertex, corner } => {
                    json!({"kind": "vertex_in", "vertex": vertex, "corner": corner})
                }
                DualArcKind::Capacity { vertex, corner } => {
                    json!({"kind": "capacity", "vertex": vertex, "corner": corner})
                }
            };
            v["dual_arc"] = json!(w.dual_arc);
            v["removed"] = json!(w.removed);
            v
        })
        .collect()
}

fn split_components(set: &[Component]) -> (Vec<usize>, Vec<usize>) {
    let mut arcs = Vec::new();
    let mut vertices = Vec::new();
    for c in set {
        match *c {
            Component::Arc(e) => arcs.push(e),
            Component::Vertex(v) => vertices.push(v),
        }
    }
    (arcs, vertices)
}

fn interdict(a: &InterdictArgs) -> Result<Value, Failure> {
    let net = load_network(&a.input)?;
    require_valid(&net, false)?;
    let exec = Threaded::from_env();
    let opts = StOptions {
        budget: a.budget,
        mode: mode_of(a.vertex_interdiction),
        vertex_capacities: a.vertex_capacities,
        clip_parity: a.clip_parity,
    };
    let out = solve_st_interdiction_with(&net, &opts, &exec).map_err(precondition)?;
    let mut v = json!({
        "budget": a.budget,
        "value": out.nu_profile[a.budget],
        "nu_profile": out.nu_profile,
        "interdiction": {"arcs": out.arcs, "vertices": out.vertices, "cost": out.cost},
        "cut": {"side": out.cut_side},
        "witness": {"circuit": witness_value(&out.witness)},
    });
    if a.profile {
        let mut rows = Vec::with_capacity(a.budget + 1);
        for b in 0..=a.budget {
            let o = solve_st_interdiction_with(&net, &StOptions { budget: b, ..opts }, &exec).map_err(precondition)?;
            rows.push(json!({
                "budget": b,
                "value": o.nu_profile[b],
                "interdiction": {"arcs": o.arcs, "vertices": o.vertices, "cost": o.cost},
            }));
        }
        v["per_budget"] = Value::Array(rows);
    }
    if a.check {
        let oracle = interdict_exhaustive(&net, a.budget, opts.mode, a.vertex_capacities).map_err(precondition)?;
        let removal = Removal::from_sets(&net, &out.arcs, &out.vertices);
        let achieved = flow_value(&net, &removal, a.vertex_capacities);
        let ok = oracle.nu_profile == out.nu_profile && achieved == out.nu_profile[a.budget];
        v["check"] = json!({
            "ok": ok,
            "oracle_nu_profile": oracle.nu_profile,
            "achieved_value": achieved,
        });
        if !ok {
            return Err(Failure::Mismatch(v));
        }
    }
    Ok(v)
}

fn security(a: &SecurityArgs) -> Result<Value, Failure> {
    let net = load_network(&a.input)?;
    require_valid(&net, true)?;
    let mode = mode_of(a.vertex_interdiction);
    let exec = Threaded::from_env();
    let out = solve_security_with(&net, a.max_budget, mode, &exec).map_err(precondition)?;
    let interdiction = out
        .security_budget
        .map(|_| json!({"arcs": out.arcs, "vertices": out.vertices, "cost": out.cost}));
    let mut v = json!({
        "max_budget": a.max_budget,
        "security_budget": out.security_budget,
        "secure": out.security_budget.is_none(),
        "min_values": out.min_values.iter().map(|&x| ext_value(x)).collect::<Vec<_>>(),
        "interdiction": interdiction,
        "witness": {"circuit": witness_value(&out.witness)},
    });
    if a.check {
        let oracle = security_exhaustive(&net, a.max_budget, mode).map_err(precondition)?;
        let ok = oracle == out.security_budget;
        v["check"] = json!({"ok": ok, "oracle_security_budget": oracle});
        if !ok {
            return Err(Failure::Mismatch(v));
        }
    }
    Ok(v)
}

fn kdense(a: &KdenseArgs) -> Result<Value, Failure> {
    let g = load_graph(&a.input)?;
    let enc = encode_kdense(&g, a.k).map_err(|e| Failure::Invalid(json!({"error": e.to_string()})))?;
    if !validate(&enc.network).embedding_ok() {
        return Err(Failure::Invalid(report_value(&validate(&enc.network))));
    }
    if !a.oracle {
        return Ok(json!({"budget": a.k, "network": network_to_value(&enc.network)}));
    }
    let (vertices, edges) = solve_kdense_exhaustive(&enc).map_err(precondition)?;
    Ok(json!({"vertices": vertices, "edges": edges}))
}

fn oracle(c: &OracleCommand) -> Result<Value, Failure> {
    match c {
        OracleCommand::Interdict {
            input,
            budget,
            vertex_interdiction,
            vertex_capacities,
        } => {
            let net = load_network(input)?;
            require_valid(&net, false)?;
            let out = interdict_exhaustive(&net, *budget, mode_of(*vertex_interdiction), *vertex_capacities)
                .map_err(precondition)?;
            let (arcs, vertices) = split_components(&out.optimal_sets[*budget]);
            Ok(json!({
                "budget": budget,
                "value": out.nu_profile[*budget],
                "nu_profile": out.nu_profile,
                "interdiction": {"arcs": arcs, "vertices": vertices, "cost": out.optimal_costs[*budget]},
            }))
        }
        OracleCommand::Security {
            input,
            max_budget,
            vertex_interdiction,
        } => {
            let net = load_network(input)?;
            require_valid(&net, true)?;
            let out = security_exhaustive(&net, *max_budget, mode_of(*vertex_interdiction)).map_err(precondition)?;
            Ok(json!({"max_budget": max_budget, "security_budget": out, "secure": out.is_none()}))
        }
        OracleCommand::Maxflow {
            input,
            vertex_capacities,
        } => {
            let net = load_network(input)?;
            require_valid(&net, false)?;
            Ok(json!({"value": flow_value(&net, &Removal::none(&net), *vertex_capacities)}))
        }
        OracleCommand::Densest { input, k } => {
            let g = load_graph(input)?;
            let (vertices, edges) =
                densest_subgraph_exhaustive(g.num_vertices(), &g.edges, *k).map_err(precondition)?;
            Ok(json!({"vertices": vertices, "edges": edges}))
        }
    }
}

fn generate(c: &GenCommand) -> Result<(Value, Option<PathBuf>), Failure> {
    let config = |o: &GenOptions| {
        if o.removable_vertices {
            GenConfig::with_vertices()
        } else {
            GenConfig::default()
        }
    };
    let (net, opts) = match c {
        GenCommand::Grid { rows, cols, opts } => {
            if *rows == 0 || *cols == 0 || rows * cols < 2 {
                return Err(Failure::Input("grid needs at least two vertices".into()));
            }
            (grid(*rows, *cols, opts.seed, &config(opts)), opts)
        }
        GenCommand::Wheel { size, opts } => {
            if *size < 3 {
                return Err(Failure::Input("wheel needs at least three rim vertices".into()));
            }
            (wheel(*size, opts.seed, &config(opts)), opts)
        }
        GenCommand::RandomPlanar {
            vertices,
            arcs,
            balanced,
            opts,
        } => {
            if *vertices < 2 {
                return Err(Failure::Input("random instance needs at least two vertices".into()));
            }
            let m = arcs.unwrap_or(2 * vertices).max(vertices - 1);
            let terminals = if *balanced {
                Terminals::Balanced {
                    max_terminals: 3,
                    max_demand: 3,
                }
            } else {
                Terminals::SinglePair
            };
            (random_planar(*vertices, m, opts.seed, &config(opts), terminals), opts)
        }
    };
    Ok((network_to_value(&net), opts.output.clone()))
}

fn dual(a: &DualArgs) -> Result<Value, Failure> {
    let net = load_network(&a.input)?;
    require_valid(&net, false)?;
    let faces = trace_faces(&net).map_err(precondition)?;
    let d = if a.modified {
        build_modified_dual(&net, &faces)
    } else {
        build_dual(&net, &faces)
    };
    let arcs: Vec<Value> = d
        .arcs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            json!({
                "id": i,
                "tail": x.tail,
                "head": x.head,
                "length": ext_value(x.length),
                "cost": ext_value(x.cost),
                "kind": format!("{:?}", x.kind),
            })
        })
        .collect();
    Ok(json!({"num_faces": d.num_faces, "num_nodes": d.num_nodes, "arcs": arcs}))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Interdict(a) => interdict(a),
        Command::Security(a) => security(a),
        Command::Kdense(a) => kdense(a),
        Command::Oracle(c) => oracle(c),
        Command::Validate(a) => load_network(&a.input).and_then(|net| {
            let r = validate(&net);
            if r.is_valid() {
                Ok(report_value(&r))
            } else {
                Err(Failure::Invalid(report_value(&r)))
            }
        }),
        Command::Gen(c) => match generate(c) {
            Ok((v, Some(path))) => match std::fs::write(&path, render(&v)) {
                Ok(()) => Ok(json!({"written": path.display().to_string()})),
                Err(e) => Err(Failure::Input(format!("cannot write {}: {e}", path.display()))),
            },
            Ok((v, None)) => Ok(v),
            Err(f) => Err(f),
        },
        Command::Dual(a) => dual(a),
    };
    match result {
        Ok(v) => {
            let _ = out.write_all(render(&v).as_bytes());
            0
        }
        Err(f) => {
            match &f {
                Failure::Input(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
                Failure::Precondition(m) => {
                    let _ = writeln!(err, "precondition failed: {m}");
                }
                Failure::Invalid(v) => {
                    let _ = out.write_all(render(v).as_bytes());
                    let _ = writeln!(err, "error: instance failed validation");
                }
                Failure::Mismatch(v) => {
                    let _ = out.write_all(render(v).as_bytes());
                    let _ = writeln!(err, "error: solver and oracle disagree");
                }
            }
            f.code()
        }
    }
}
