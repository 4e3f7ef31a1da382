//! `infcube` command-line front end.
//!
//! Exit codes: 0 success, 2 malformed input, 3 malformed oracle.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use infcube::finite::{
    all_wreath_pairs, count_automorphisms_extension, embed_cube_vertex,
    enumerate_automorphisms_bruteforce, enumerate_automorphisms_extension, lift_cube_automorphism,
    wreath_to_cube, MAX_BRUTE_FORCE_DIM,
};
use infcube::json;
use infcube::{
    example1_automorphism, is_regular_verdict, reconstruct_component, reconstruct_local, Error,
    SymplecticPerm, Vertex, Window,
};

#[derive(Parser)]
#[command(
    name = "infcube",
    version,
    about = "Explore the infinite-dimensional hypercube graph"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relations between two vertices.
    Vertex {
        #[arg(value_enum)]
        op: VertexOp,
        v: String,
        w: String,
    },
    /// Symplectic permutation arithmetic.
    #[command(subcommand)]
    Perm(PermCommand),
    /// Recover the local symplectic permutation of an oracle.
    Reconstruct(ReconstructArgs),
    /// Compare local actions across components.
    Verdict(VerdictArgs),
    /// Finite hypercube automorphism groups.
    #[command(subcommand)]
    Cube(CubeCommand),
    /// Built-in demonstrations.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum VertexOp {
    Adjacent,
    Distance,
    Component,
}

#[derive(Subcommand)]
enum PermCommand {
    /// a∘b (b applied first).
    Compose {
        a: String,
        b: String,
    },
    Inverse {
        a: String,
    },
    Order {
        a: String,
    },
    /// Image of a nonzero integer or of a vertex.
    Apply {
        a: String,
        x: String,
    },
}

#[derive(Args)]
struct ReconstructArgs {
    #[arg(long)]
    oracle: String,
    #[arg(long)]
    at: String,
    /// `1..N` or a list such as `1,3,7`.
    #[arg(long)]
    window: String,
    #[arg(long, default_value_t = 0)]
    checks: usize,
}

#[derive(Args)]
struct VerdictArgs {
    #[arg(long)]
    oracle: String,
    /// Comma-separated vertex files, or an inline JSON array of vertices.
    #[arg(long, required = true)]
    reps: Vec<String>,
    #[arg(long)]
    window: String,
}

#[derive(Subcommand)]
enum CubeCommand {
    /// Count the automorphisms of H_n.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Extension)]
        method: Method,
    },
    /// Compare both enumerators, the wreath pairs and the reconstruction.
    Crosscheck {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Extension,
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Non-regular automorphism acting only on the basepoint's component.
    Example1 {
        #[arg(long)]
        window: String,
    },
}

enum Output {
    Json(Value),
    Line(String),
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn load_text(arg: &str) -> Result<String, Error> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| Error::Json(format!("cannot read {arg}: {e}")))
}

fn load_vertex(arg: &str) -> Result<Vertex, Error> {
    json::parse_vertex(&load_text(arg)?)
}

fn load_perm(arg: &str) -> Result<SymplecticPerm, Error> {
    json::parse_perm(&load_text(arg)?)
}

fn load_reps(args: &[String]) -> Result<Vec<Vertex>, Error> {
    let mut reps = Vec::new();
    for arg in args {
        if arg.trim_start().starts_with('[') {
            let values: Vec<Value> = serde_json::from_str(arg)?;
            for v in values {
                reps.push(json::vertex_from_value(v)?);
            }
        } else {
            for part in arg.split(',').filter(|p| !p.trim().is_empty()) {
                reps.push(load_vertex(part.trim())?);
            }
        }
    }
    Ok(reps)
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Vertex { op, v, w } => {
            let (v, w) = (load_vertex(v)?, load_vertex(w)?);
            let out = match op {
                VertexOp::Adjacent => Value::from(v.adjacent(&w)),
                VertexOp::Distance => json::distance_to_value(v.distance(&w)),
                VertexOp::Component => Value::from(v.same_component(&w)),
            };
            Ok(Output::Json(out))
        }
        Command::Perm(cmd) => run_perm(cmd),
        Command::Reconstruct(args) => {
            let oracle = json::parse_oracle(&load_text(&args.oracle)?)?;
            let at = load_vertex(&args.at)?;
            let window: Window = args.window.parse()?;
            let result = if args.checks == 0 {
                reconstruct_local(&oracle, &at, &window)?
            } else {
                reconstruct_component(&oracle, &at, &window, args.checks, cli.seed)?
            };
            Ok(Output::Json(json::result_to_value(&result)))
        }
        Command::Verdict(args) => {
            let oracle = json::parse_oracle(&load_text(&args.oracle)?)?;
            let reps = load_reps(&args.reps)?;
            let window: Window = args.window.parse()?;
            let verdict = is_regular_verdict(&oracle, &reps, &window)?;
            Ok(Output::Json(json::verdict_to_value(&verdict)))
        }
        Command::Cube(CubeCommand::Enum { n, method }) => {
            let count = match method {
                Method::Brute => enumerate_automorphisms_bruteforce(*n)?.len(),
                Method::Extension => count_automorphisms_extension(*n)?,
            };
            Ok(Output::Line(format!("count: {count}")))
        }
        Command::Cube(CubeCommand::Crosscheck { n }) => crosscheck(*n).map(Output::Json),
        Command::Demo(DemoCommand::Example1 { window }) => {
            let window: Window = window.parse()?;
            demo_example1(&window).map(Output::Json)
        }
    }
}

fn run_perm(cmd: &PermCommand) -> Result<Output, Error> {
    match cmd {
        PermCommand::Compose { a, b } => {
            let (a, b) = (load_perm(a)?, load_perm(b)?);
            Ok(Output::Json(json::perm_to_value(&a.compose(&b))))
        }
        PermCommand::Inverse { a } => {
            Ok(Output::Json(json::perm_to_value(&load_perm(a)?.inverse())))
        }
        PermCommand::Order { a } => Ok(Output::Json(Value::from(load_perm(a)?.order()))),
        PermCommand::Apply { a, x } => {
            let s = load_perm(a)?;
            if let Ok(i) = x.trim().parse::<i64>() {
                return Ok(Output::Json(Value::from(s.apply(i)?)));
            }
            let v = load_vertex(x)?;
            Ok(Output::Json(json::vertex_to_value(&s.apply_vertex(&v))))
        }
    }
}

fn crosscheck(n: usize) -> Result<Value, Error> {
    let extension = enumerate_automorphisms_extension(n)?;
    let brute = if n <= MAX_BRUTE_FORCE_DIM {
        Some(enumerate_automorphisms_bruteforce(n)?)
    } else {
        None
    };
    let mut wreath_images = all_wreath_pairs(n)
        .iter()
        .map(|w| wreath_to_cube(w, n))
        .collect::<Result<Vec<_>, _>>()?;
    let wreath_count = wreath_images.len();
    wreath_images.sort();
    wreath_images.dedup();

    let base = Vertex::basepoint();
    let window = Window::range(n as u64);
    let mut reconstruction_matches = 0;
    for a in &extension {
        let expected = SymplecticPerm::from_wreath(&a.to_wreath()?);
        let oracle = lift_cube_automorphism(a, &base)?;
        let x = embed_cube_vertex(0, n, &base);
        if reconstruct_local(&oracle, &x, &window)?.finitize() == Some(expected) {
            reconstruction_matches += 1;
        }
    }
    Ok(serde_json::json!({
        "n": n,
        "expected": (1usize << n) * (1..=n).product::<usize>(),
        "brute_force": brute.as_ref().map(Vec::len),
        "extension": extension.len(),
        "brute_equals_extension": brute.as_ref().map(|b| *b == extension),
        "wreath_pairs": wreath_count,
        "wreath_injective": wreath_images.len() == wreath_count,
        "wreath_equals_extension": wreath_images == extension,
        "reconstruction_matches": reconstruction_matches,
    }))
}

/// Cyclic shift of the window coordinates (a single sign flip when the
/// window has one coordinate) acting on the basepoint's component only.
fn demo_example1(window: &Window) -> Result<Value, Error> {
    let coords: Vec<u64> = window.iter().collect();
    let s = match coords.as_slice() {
        [] => {
            return Err(Error::InvalidWindow(
                "the demo needs a non-empty window".into(),
            ))
        }
        [i] => SymplecticPerm::sign_flip([*i]),
        _ => SymplecticPerm::from_moves(
            coords
                .iter()
                .zip(coords.iter().cycle().skip(1))
                .map(|(&i, &j)| (i, j as i64)),
        )?,
    };
    let base = Vertex::basepoint();
    let oracle = example1_automorphism(&base, &s)?;
    let reps = vec![base, Vertex::alternating()];
    let verdict = is_regular_verdict(&oracle, &reps, window)?;
    Ok(serde_json::json!({
        "oracle": json::oracle_to_value(&oracle)?,
        "reps": reps.iter().map(json::vertex_to_value).collect::<Vec<_>>(),
        "window": window.iter().collect::<Vec<_>>(),
        "result": json::verdict_to_value(&verdict),
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Line(line)) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Ok(Output::Json(value)) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            };
            println!("{}", text.expect("JSON values always serialize"));
            ExitCode::SUCCESS
        }
        Err(e @ Error::MalformedOracle(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
