//! Command-line front end: count tables as CSV, loop enumeration,
//! composition in the loop category, branching and projective
//! decompositions, special-block operations, semisimplification data,
//! and the verification suite.
//!
//! Structured results print as a JSON envelope
//! `{"status":"ok","payload":...}` (add `--timing` for elapsed
//! milliseconds); tables print as raw CSV for golden-file diffing.
//! Exit codes: 0 success, 1 verification failure, 2 usage or input
//! error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

use looprep::branching::{induced_h_decomp, mackey_res_ind};
use looprep::gdecomp::{induced_proj_decomp, schwartz_g_decomp};
use looprep::lattice::{circular_table, delannoy_table, enumerate_loops, loop_orbits};
use looprep::loopcat::{compose, end_algebra, identity, Morphism};
use looprep::specialblock::{
    decompose, heller_decompose, heller_label, hom_dim, make, ss_braiding_sign, ss_image,
    ss_ring_product, ss_tensor, BigradedObject, GradedRModule, IndecompLabel, ModuleSpec,
};
use looprep::verify::{self, VerifyLevel};
use looprep::weights::Weight;

#[derive(Parser)]
#[command(
    name = "looprep",
    version,
    about = "Exact Delannoy-loop and module-decomposition calculator"
)]
struct Cli {
    /// Include elapsed_ms in the JSON envelope (off keeps output
    /// byte-deterministic)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a count table as CSV (rows m, columns n)
    Table {
        #[command(subcommand)]
        which: TableCmd,
    },
    /// Enumerate torus loops
    Loops {
        #[command(subcommand)]
        which: LoopsCmd,
    },
    /// Compose two morphisms given as JSON files
    Compose { file_f: PathBuf, file_g: PathBuf },
    /// The identity endomorphism of the n-th object
    Identity { n: u32 },
    /// Structure constants of the n-th endomorphism algebra
    Endalgebra { n: u32 },
    /// Branching multisets on the line side
    Branch {
        #[command(subcommand)]
        which: BranchCmd,
    },
    /// Decompositions into indecomposable projectives
    Decompose {
        #[command(subcommand)]
        which: DecomposeCmd,
    },
    /// Graded-module operations in the special block
    Special {
        #[command(subcommand)]
        which: SpecialCmd,
    },
    /// Semisimplification data
    Ss {
        #[command(subcommand)]
        which: SsCmd,
    },
    /// Run the verification suite; exits nonzero on any failure
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Subcommand)]
enum TableCmd {
    /// Delannoy path counts
    Delannoy(MaxArg),
    /// Circular Delannoy loop counts, with the conventional boundary row
    /// and column of ones
    Circular(MaxArg),
}

#[derive(Args)]
struct MaxArg {
    #[arg(long, default_value_t = 9)]
    max: u32,
}

#[derive(Subcommand)]
enum LoopsCmd {
    /// All (n,m)-loops in canonical order
    Enumerate {
        n: u32,
        m: u32,
        /// Group the loops into translation orbits
        #[arg(long)]
        orbits: bool,
    },
}

#[derive(Subcommand)]
enum BranchCmd {
    /// Closed-form decomposition of the induced module of a weight
    Induce { weight: String },
    /// The same decomposition through the double-coset pipeline
    Mackey { weight: String },
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// The n-point Schwartz space into indecomposable projectives
    Schwartz { n: u32 },
    /// The induced module of a weight into indecomposable projectives
    Induced { weight: String },
}

#[derive(Subcommand)]
enum SpecialCmd {
    /// Build a named module; specs: simple(n), delta(n), nabla(n), R(n),
    /// J+(n,m), J-(n,m)
    Make { spec: String },
    /// Decompose a module (JSON file) into indecomposable labels
    Decompose { file: PathBuf },
    /// Heller shift of a label spec (closed form for simple(n)) or of a
    /// module file
    Heller { target: String, k: i64 },
    /// dim Hom between two modules (label specs or JSON files)
    Homdim { a: String, b: String },
}

#[derive(Subcommand)]
enum SsCmd {
    /// Image of an indecomposable label in the semisimplification
    Image { label: String },
    /// Tensor product of two bigraded objects (JSON files)
    Tensor { file_a: PathBuf, file_b: PathBuf },
    /// Product of two simple classes (n,r)·(m,s)
    Ring { n: i64, r: i64, m: i64, s: i64 },
    /// Braiding sign between two simples
    Sign { n: i64, m: i64, r: i64, s: i64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

struct CmdError {
    code: &'static str,
    message: String,
    exit: i32,
}

impl CmdError {
    fn usage(message: impl Into<String>) -> Self {
        CmdError {
            code: "usage",
            message: message.into(),
            exit: 2,
        }
    }

    fn io(message: impl Into<String>) -> Self {
        CmdError {
            code: "io",
            message: message.into(),
            exit: 2,
        }
    }
}

impl From<looprep::Error> for CmdError {
    fn from(e: looprep::Error) -> Self {
        let code = match e {
            looprep::Error::Parse(_) => "parse",
            looprep::Error::EmptyWeight(_) | looprep::Error::Domain(_) => "domain",
            looprep::Error::IndexMismatch(_) => "index",
            looprep::Error::Solve(_) => "solve",
        };
        CmdError {
            code,
            message: e.to_string(),
            exit: 2,
        }
    }
}

fn parse_weight(s: &str) -> Result<Weight, CmdError> {
    Weight::parse(s).map_err(CmdError::from)
}

/// Accepts the display forms of module specs: simple(n), delta(n),
/// nabla(n), R(n), J+(n,m), J-(n,m).
fn parse_module_spec(s: &str) -> Result<ModuleSpec, CmdError> {
    let s = s.trim();
    let (head, rest) = s
        .split_once('(')
        .ok_or_else(|| CmdError::usage(format!("bad module spec {s:?}")))?;
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| CmdError::usage(format!("bad module spec {s:?}")))?;
    let ints: Vec<i64> = inner
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|e| CmdError::usage(format!("bad index in {s:?}: {e}")))?;
    let one = || -> Result<i64, CmdError> {
        if ints.len() == 1 {
            Ok(ints[0])
        } else {
            Err(CmdError::usage(format!("{head} takes one index")))
        }
    };
    let two = || -> Result<(i64, i64), CmdError> {
        if ints.len() == 2 {
            Ok((ints[0], ints[1]))
        } else {
            Err(CmdError::usage(format!("{head} takes two indices")))
        }
    };
    match head.trim() {
        "simple" | "S" => Ok(ModuleSpec::Simple(one()?)),
        "delta" => Ok(ModuleSpec::Delta(one()?)),
        "nabla" => Ok(ModuleSpec::Nabla(one()?)),
        "R" => Ok(ModuleSpec::Label(IndecompLabel::FreeR(one()?))),
        "J+" => {
            let (n, m) = two()?;
            Ok(ModuleSpec::Label(
                IndecompLabel::zigzag(1, n, m).map_err(CmdError::from)?,
            ))
        }
        "J-" => {
            let (n, m) = two()?;
            Ok(ModuleSpec::Label(
                IndecompLabel::zigzag(-1, n, m).map_err(CmdError::from)?,
            ))
        }
        other => Err(CmdError::usage(format!("unknown module kind {other:?}"))),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CmdError {
        code: "parse",
        message: format!("cannot parse {}: {e}", path.display()),
        exit: 2,
    })
}

/// Either an inline module spec or a path to a module JSON file.
fn load_module(arg: &str) -> Result<GradedRModule, CmdError> {
    if let Ok(spec) = parse_module_spec(arg) {
        return Ok(make(spec));
    }
    read_json(&PathBuf::from(arg))
}

fn label_multiset_json(labels: &std::collections::BTreeMap<IndecompLabel, u64>) -> Value {
    Value::Array(
        labels
            .iter()
            .map(|(l, k)| json!({"label": l, "mult": k}))
            .collect(),
    )
}

fn csv_table(table: &[Vec<u128>]) -> String {
    let mut out = String::new();
    let width = table.first().map_or(0, Vec::len);
    out.push_str("m\\n");
    for n in 0..width {
        out.push_str(&format!(",{n}"));
    }
    out.push('\n');
    for (m, row) in table.iter().enumerate() {
        out.push_str(&m.to_string());
        for v in row {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

fn seed_from_env() -> u64 {
    std::env::var("SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(verify::DEFAULT_SEED)
}

/// Runs one subcommand; Ok(None) means output was already printed raw.
fn run(cmd: &Cmd) -> Result<Option<Value>, CmdError> {
    match cmd {
        Cmd::Table { which } => {
            let csv = match which {
                TableCmd::Delannoy(arg) => csv_table(&delannoy_table(arg.max)),
                TableCmd::Circular(arg) => csv_table(&circular_table(arg.max)),
            };
            print!("{csv}");
            Ok(None)
        }
        Cmd::Loops {
            which: LoopsCmd::Enumerate { n, m, orbits },
        } => {
            let loops = enumerate_loops(*n, *m)?;
            if *orbits {
                let orbs = loop_orbits(&loops);
                Ok(Some(json!({
                    "count": loops.len(),
                    "orbit_count": orbs.len(),
                    "orbits": orbs.iter().map(|o| json!({
                        "size": o.len(),
                        "loops": o,
                    })).collect::<Vec<_>>(),
                })))
            } else {
                Ok(Some(json!({"count": loops.len(), "loops": loops})))
            }
        }
        Cmd::Compose { file_f, file_g } => {
            let f: Morphism = read_json(file_f)?;
            let g: Morphism = read_json(file_g)?;
            Ok(Some(serde_json::to_value(compose(&f, &g)?).unwrap()))
        }
        Cmd::Identity { n } => Ok(Some(serde_json::to_value(identity(*n)?).unwrap())),
        Cmd::Endalgebra { n } => {
            let alg = end_algebra(*n)?;
            Ok(Some(json!({
                "n": alg.n(),
                "dim": alg.dim(),
                "basis": alg.basis(),
                "constants": alg.constants(),
            })))
        }
        Cmd::Branch { which } => {
            let decomp = match which {
                BranchCmd::Induce { weight } => induced_h_decomp(&parse_weight(weight)?),
                BranchCmd::Mackey { weight } => mackey_res_ind(&parse_weight(weight)?),
            };
            Ok(Some(serde_json::to_value(decomp).unwrap()))
        }
        Cmd::Decompose { which } => {
            let decomp = match which {
                DecomposeCmd::Schwartz { n } => schwartz_g_decomp(*n)?,
                DecomposeCmd::Induced { weight } => induced_proj_decomp(&parse_weight(weight)?),
            };
            Ok(Some(serde_json::to_value(decomp).unwrap()))
        }
        Cmd::Special { which } => match which {
            SpecialCmd::Make { spec } => {
                let module = make(parse_module_spec(spec)?);
                Ok(Some(serde_json::to_value(module).unwrap()))
            }
            SpecialCmd::Decompose { file } => {
                let module: GradedRModule = read_json(file)?;
                Ok(Some(label_multiset_json(&decompose(&module)?)))
            }
            SpecialCmd::Heller { target, k } => {
                if let Ok(spec) = parse_module_spec(target) {
                    if let ModuleSpec::Simple(n) = spec {
                        // closed form on simple labels
                        return Ok(Some(serde_json::to_value(heller_label(n, *k)).unwrap()));
                    }
                    let labels = heller_decompose(&make(spec), *k)?;
                    return Ok(Some(label_multiset_json(&labels)));
                }
                let module: GradedRModule = read_json(&PathBuf::from(target))?;
                Ok(Some(label_multiset_json(&heller_decompose(&module, *k)?)))
            }
            SpecialCmd::Homdim { a, b } => {
                let ma = load_module(a)?;
                let mb = load_module(b)?;
                Ok(Some(json!({"dim": hom_dim(&ma, &mb)?})))
            }
        },
        Cmd::Ss { which } => match which {
            SsCmd::Image { label } => {
                let spec = parse_module_spec(label)?;
                let ModuleSpec::Label(l) = spec else {
                    return Err(CmdError::usage(
                        "ss image takes an indecomposable label: R(n), J+(n,m), J-(n,m)",
                    ));
                };
                Ok(Some(match ss_image(l) {
                    Some((n, m)) => json!({"n": n, "m": m}),
                    None => Value::Null,
                }))
            }
            SsCmd::Tensor { file_a, file_b } => {
                let a: BigradedObject = read_json(file_a)?;
                let b: BigradedObject = read_json(file_b)?;
                Ok(Some(serde_json::to_value(ss_tensor(&a, &b)).unwrap()))
            }
            SsCmd::Ring { n, r, m, s } => {
                let (a, b) = ss_ring_product((*n, *r), (*m, *s));
                Ok(Some(json!([a, b])))
            }
            SsCmd::Sign { n, m, r, s } => Ok(Some(json!(ss_braiding_sign((*n, *m), (*r, *s))))),
        },
        Cmd::Verify { level } => {
            let lvl = match level {
                Level::Quick => VerifyLevel::Quick,
                Level::Full => VerifyLevel::Full,
            };
            let reports = verify::run_all(lvl, seed_from_env());
            for r in &reports {
                println!("{}", r.summary_line());
                for f in r.failures.iter().take(10) {
                    println!("      {f}");
                }
            }
            let all_passed = reports.iter().all(|r| r.passed);
            let payload = json!({
                "passed": all_passed,
                "criteria": reports.iter().map(|r| json!({
                    "id": r.id,
                    "name": r.name,
                    "passed": r.passed,
                    "failures": r.failures,
                })).collect::<Vec<_>>(),
            });
            if !all_passed {
                let envelope = json!({"status": "error", "code": "verify", "payload": payload});
                println!("{}", serde_json::to_string_pretty(&envelope).unwrap());
                std::process::exit(1);
            }
            Ok(Some(payload))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.cmd) {
        Ok(None) => {}
        Ok(Some(payload)) => {
            let mut envelope = json!({"status": "ok", "payload": payload});
            if cli.timing {
                envelope["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            println!("{}", serde_json::to_string_pretty(&envelope).unwrap());
        }
        Err(e) => {
            let envelope = json!({"status": "error", "code": e.code, "message": e.message});
            eprintln!("{}", serde_json::to_string_pretty(&envelope).unwrap());
            std::process::exit(e.exit);
        }
    }
}
