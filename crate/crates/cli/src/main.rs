use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use p6ext::companion::{build_companion, CompanionError};
use p6ext::farside::FarSide;
use p6ext::gen::{gen_excellent, gen_scaling, GenParams};
use p6ext::graph::{find_induced_path, Graph, VertexSet};
use p6ext::insulation::{insulate_all, side_pairs, z_partition};
use p6ext::lists::Coloring;
use p6ext::oracle::brute_force_extension;
use p6ext::precoloring::{InstanceError, StarredPrecoloring};
use p6ext::reduction::{to_orthogonal_collection, Budget};
use p6ext::solver::{solve_full_stub, solve_with_report, SolveConfig, SolveError, DEFAULT_SEED_CAP};

const COLORED: u8 = 0;
const NO_EXTENSION: u8 = 1;
const INVALID: u8 = 2;
const UNIMPLEMENTED: u8 = 3;
const BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "p6x", version, about = "4-precoloring extension for excellent starred precolorings of P6-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Worker threads for the orthogonal collection.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Largest seed accepted.
    #[arg(long, default_value_t = DEFAULT_SEED_CAP)]
    seed_cap: usize,
    /// Cap on the size of any intermediate collection.
    #[arg(long, default_value_t = p6ext::reduction::DEFAULT_MAX_MEMBERS)]
    max_members: usize,
    /// Write every companion triple as JSON to this file.
    #[arg(long)]
    dump_companion: Option<PathBuf>,
    /// Write every far-side 2-SAT encoding as commented DIMACS to this file.
    #[arg(long)]
    dump_cnf: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide and construct an extension.
    Solve {
        #[command(flatten)]
        args: SolveArgs,
        /// Print per-stage JSON lines to stderr.
        #[arg(long)]
        trace: bool,
        /// Treat the input as a general P6-free instance (not supported).
        #[arg(long)]
        full: bool,
    },
    /// Solve with the brute-force oracle.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = p6ext::oracle::DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Check the axioms.
    Validate { instance: PathBuf },
    /// Generate an instance as JSON.
    Gen {
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = 4)]
        seed_size: usize,
        #[arg(long, default_value_t = 1)]
        x0: usize,
        #[arg(long, default_value_t = 6)]
        x: usize,
        #[arg(long, default_value_t = 5)]
        y: usize,
        /// Use the twin-grown scaling family with this many vertices instead.
        #[arg(long)]
        scaling: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test a graph (edge-list file) for an induced path on `t` vertices.
    CheckClass {
        graph: PathBuf,
        #[arg(long, default_value_t = 6)]
        t: usize,
    },
    /// Solve and print per-stage JSON lines to stdout before the answer.
    Trace {
        #[command(flatten)]
        args: SolveArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve { args, trace, full } => solve(&args, if trace { Trace::Stderr } else { Trace::Off }, full),
        Command::Trace { args } => solve(&args, Trace::Stdout, false),
        Command::Oracle { instance, limit } => oracle(&instance, limit),
        Command::Validate { instance } => validate(&instance),
        Command::Gen { rng_seed, seed_size, x0, x, y, scaling, out } => {
            let made = match scaling {
                Some(n) => gen_scaling(n, rng_seed),
                None => {
                    let params = GenParams { seed_size, x0_size: x0, x_size: x, y_size: y, ..GenParams::default() };
                    gen_excellent(&params, rng_seed)
                }
            };
            match made {
                Ok(p) => write_out(out.as_deref(), &(p.to_json() + "\n")),
                Err(e) => fail(INVALID, &e.to_string()),
            }
        }
        Command::CheckClass { graph, t } => check_class(&graph, t),
    };
    ExitCode::from(code)
}

#[derive(Clone, Copy, PartialEq)]
enum Trace {
    Off,
    Stderr,
    Stdout,
}

fn fail(code: u8, msg: &str) -> u8 {
    eprintln!("error: {msg}");
    code
}

fn write_out(path: Option<&Path>, text: &str) -> u8 {
    match path {
        Some(p) => match fs::write(p, text) {
            Ok(()) => COLORED,
            Err(e) => fail(INVALID, &format!("{}: {e}", p.display())),
        },
        None => {
            print!("{text}");
            COLORED
        }
    }
}

fn load(path: &Path) -> Result<StarredPrecoloring, u8> {
    let text = fs::read_to_string(path).map_err(|e| fail(INVALID, &format!("{}: {e}", path.display())))?;
    StarredPrecoloring::from_json(&text).map_err(|e| match e {
        InstanceError::Invalid(v) => fail(INVALID, &format!("invalid instance: axiom ({:?}) violated: {} (witness {:?})", v.axiom, v.message, v.witness)),
        other => fail(INVALID, &format!("cannot read instance: {other}")),
    })
}

fn coloring_json(c: &Coloring) -> String {
    let colors: BTreeMap<String, u8> = c.domain().iter().map(|v| (v.to_string(), c.get(v).unwrap())).collect();
    serde_json::json!({ "colors": colors }).to_string()
}

fn answer(c: Option<&Coloring>) -> u8 {
    match c {
        Some(c) => {
            println!("{}", coloring_json(c));
            COLORED
        }
        None => {
            println!("NO_EXTENSION");
            NO_EXTENSION
        }
    }
}

fn solve_error(e: &SolveError) -> u8 {
    let code = match e {
        SolveError::Invalid(_) | SolveError::SeedTooLarge { .. } => INVALID,
        SolveError::Budget(_) => BUDGET,
        SolveError::Unimplemented { .. } => UNIMPLEMENTED,
        SolveError::Invariant(_) => return fail(INVALID, &format!("{e} (please report this instance)")),
    };
    fail(code, &e.to_string())
}

fn solve(args: &SolveArgs, trace: Trace, full: bool) -> u8 {
    let p = match load(&args.instance) {
        Ok(p) => p,
        Err(code) => return code,
    };
    if full {
        let f = p.f().clone();
        return match solve_full_stub(p.graph(), p.x0(), &f) {
            Ok(c) => answer(Some(&c)),
            Err(e) => solve_error(&e),
        };
    }
    let config = SolveConfig { seed_cap: args.seed_cap, budget: Budget { max_members: args.max_members }, jobs: args.jobs.max(1) };
    if args.dump_companion.is_some() || args.dump_cnf.is_some() {
        if let Err(code) = dump(&p, &config, args) {
            return code;
        }
    }
    let report = match solve_with_report(&p, &config) {
        Ok(r) => r,
        Err(e) => return solve_error(&e),
    };
    for ev in &report.trace {
        let line = serde_json::to_string(ev).expect("serializable");
        match trace {
            Trace::Off => {}
            Trace::Stderr => eprintln!("{line}"),
            Trace::Stdout => println!("{line}"),
        }
    }
    if trace != Trace::Off {
        if let Some(cert) = &report.certificate {
            let line = serde_json::json!({ "stage": "certificate", "certificate": cert }).to_string();
            if trace == Trace::Stdout {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
        }
    }
    answer(report.coloring.as_ref())
}

/// Companion triples and far-side encodings of every orthogonal member.
fn dump(p: &StarredPrecoloring, config: &SolveConfig, args: &SolveArgs) -> Result<(), u8> {
    let members = to_orthogonal_collection(p, &config.budget).map_err(|e| solve_error(&e.into()))?;
    let mut triples = Vec::new();
    let mut cnf = String::new();
    for (i, m) in members.iter().enumerate() {
        let t = match build_companion(&m.p) {
            Ok(t) => t,
            Err(CompanionError::NoExtension) => continue,
            Err(e) => return Err(fail(INVALID, &e.to_string())),
        };
        let mut v: serde_json::Value = serde_json::from_str(&t.to_json()).expect("companion JSON");
        v["member"] = i.into();
        triples.push(v);
        if t.l.as_slice().iter().any(|c| c.is_empty()) {
            continue;
        }
        let zs = z_partition(&t);
        let family = insulate_all(&t, &config.budget).map_err(|e| solve_error(&e.into()))?;
        for (j, ins) in family.iter().enumerate() {
            for (k, pair) in side_pairs().into_iter().enumerate() {
                let Some(cut) = &ins.cuts[k] else { continue };
                let da = cut.d.intersection(&t.xt_pair(pair));
                let db = cut.d.intersection(&t.xt_pair(pair.complement()));
                let fs = FarSide { h: &t.h, l: &ins.l, z: &zs[k], da: &da, db: &db, pair };
                let enc = fs.encode(&fs.preprocess());
                cnf.push_str(&format!("c member {i} branch {j} side {pair:?}\n{}", enc.to_dimacs()));
            }
        }
    }
    if let Some(path) = &args.dump_companion {
        let text = serde_json::to_string_pretty(&triples).expect("serializable") + "\n";
        fs::write(path, text).map_err(|e| fail(INVALID, &format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &args.dump_cnf {
        fs::write(path, cnf).map_err(|e| fail(INVALID, &format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn oracle(path: &Path, limit: usize) -> u8 {
    let p = match load(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    match brute_force_extension(&p, limit) {
        Ok(c) => answer(c.as_ref()),
        Err(e) => fail(BUDGET, &e.to_string()),
    }
}

fn validate(path: &Path) -> u8 {
    match load(path) {
        Ok(p) => {
            println!("valid: {} vertices, seed {}, |X0| {}, |X| {}, |Y*| {}", p.n(), p.seed().len(), p.x0().len(), p.x().len(), p.ystar().len());
            COLORED
        }
        Err(code) => code,
    }
}

fn check_class(path: &Path, t: usize) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return fail(INVALID, &format!("{}: {e}", path.display())),
    };
    let g = match Graph::parse_edge_list(&text) {
        Ok(g) => g,
        Err(e) => return fail(INVALID, &e.to_string()),
    };
    match find_induced_path(&g, t, &VertexSet::range(g.n())) {
        None => println!("P{t}-free: true"),
        Some(path) => println!("P{t}-free: false (induced path {path:?})"),
    }
    COLORED
}
