//! `geo5`: identify, list and check the 5-dimensional model geometries.
//!
//! Exit codes: 0 on success, 1 when the question was answered negatively
//! (not solvable, outside the key, rejected polynomial, failed check), 2 when
//! the command could not run (bad arguments, unreadable or malformed input).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use geo5::atlas::{self, AtlasError, Filter};
use geo5::classify::{classify_solvable5, ClassifyError, GeometryLabel};
use geo5::curvature::curvature_report;
use geo5::exact::Poly;
use geo5::groups::{check_model, GroupError, GroupModel};
use geo5::isotropy::Stabilizer;
use geo5::lattices::{self, LatticeError, Target};
use geo5::liealg::{LieAlgebra, LieError};

#[derive(Debug, Parser)]
#[command(name = "geo5", version, about = "Exact identification of 5-dimensional model geometries")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Identify a solvable 5-dimensional Lie algebra given as JSON.
    Classify {
        file: PathBuf,
        /// Print every decision node with its witness.
        #[arg(long)]
        trace: bool,
    },
    /// Browse the catalog of maximal model geometries.
    Atlas {
        #[command(subcommand)]
        command: AtlasCommand,
    },
    /// Point-stabilizer poset queries.
    Isotropy {
        #[command(subcommand)]
        command: IsotropyCommand,
    },
    /// Group-law consistency checks.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Unit cubics, Dirichlet lattices and the integer family search.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Curvature of the left-invariant metric with orthonormal basis.
    Curvature {
        /// Lie algebra JSON file, or a geometry label.
        input: String,
    },
}

#[derive(Debug, Subcommand)]
enum AtlasCommand {
    List {
        #[arg(long)]
        category: Option<u8>,
        #[arg(long)]
        stabilizer: Option<String>,
    },
    Show {
        label: String,
    },
}

#[derive(Debug, Subcommand)]
enum IsotropyCommand {
    /// Whether B is conjugate to a subgroup of A.
    Contains { a: String, b: String },
}

#[derive(Debug, Subcommand)]
enum GroupCommand {
    Check {
        label: String,
        /// Number of random sample elements.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
enum LatticeCommand {
    UnitCheck { poly: String },
    Dirichlet { poly: String },
    SolSearch {
        #[arg(long, default_value_t = 10)]
        bound: i64,
        /// JSON file, inline JSON, or a geometry label.
        #[arg(long)]
        target: String,
    },
}

/// Why a command did not succeed; decides the exit code.
enum Failure {
    /// Answered negatively. Optional JSON body.
    Domain(String, Option<Value>),
    /// Could not run.
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(..) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

type Outcome = Result<Output, Failure>;

struct Output {
    json: Value,
    human: String,
}

fn out(json: Value, human: impl Into<String>) -> Outcome {
    Ok(Output { json, human: human.into() })
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string(), None)
}

fn seed() -> u64 {
    std::env::var("GEO5_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn parse_label(s: &str) -> Result<GeometryLabel, Failure> {
    s.parse().map_err(usage)
}

fn load_algebra(path: &Path) -> Result<LieAlgebra, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    LieAlgebra::from_json(&text).map_err(|e| match e {
        LieError::Invalid(_) => domain(e),
        _ => usage(e),
    })
}

fn atlas_failure(e: AtlasError) -> Failure {
    match e {
        AtlasError::UnknownLabel(_) | AtlasError::UnknownCategory(_) => usage(e),
        _ => domain(e),
    }
}

fn classify(file: &Path, trace: bool) -> Outcome {
    let alg = load_algebra(file)?;
    match classify_solvable5(&alg) {
        Ok(c) => {
            let mut human = format!("{}\n", c.label);
            if trace {
                human.push_str(&c.trace.render());
            } else {
                let path: Vec<String> = c.trace.answers().iter().map(|(q, a)| format!("{q}: {a}")).collect();
                human.push_str(&format!("path: {}\n", path.join(" -> ")));
            }
            out(c.to_json(), human)
        }
        Err(ClassifyError::NotInKey { fingerprint, trace: t }) => {
            let body = json!({ "error": "NotInKey", "fingerprint": fingerprint, "trace": t });
            let mut msg = format!("NotInKey\nfingerprint: {}\n", serde_json::to_string(&fingerprint).expect("fingerprint JSON"));
            if trace {
                msg.push_str(&t.render());
            }
            Err(Failure::Domain(msg, Some(body)))
        }
        Err(ClassifyError::WrongDimension(d)) => Err(Failure::Domain(
            format!("WrongDimension: {d}"),
            Some(json!({ "error": "WrongDimension", "dim": d })),
        )),
        Err(ClassifyError::NotSolvable) => {
            Err(Failure::Domain("NotSolvable".into(), Some(json!({ "error": "NotSolvable" }))))
        }
        Err(e) => Err(domain(e)),
    }
}

fn atlas_cmd(cmd: &AtlasCommand) -> Outcome {
    match cmd {
        AtlasCommand::List { category, stabilizer } => {
            let stabilizer = stabilizer.as_deref().map(str::parse::<Stabilizer>).transpose().map_err(usage)?;
            let filter = Filter { category: *category, stabilizer };
            let entries = atlas::list(&filter).map_err(atlas_failure)?;
            let human = entries
                .iter()
                .map(|e| format!("{:<28} cat {}  {}\n", e.name(), e.category, e.stabilizer))
                .collect::<String>();
            out(Value::Array(entries.iter().map(|e| e.to_json()).collect()), human)
        }
        AtlasCommand::Show { label } => {
            let label = parse_label(label)?;
            let v = atlas::show_json(&label).map_err(atlas_failure)?;
            let human = serde_json::to_string_pretty(&v).expect("entry JSON") + "\n";
            out(v, human)
        }
    }
}

fn isotropy_cmd(cmd: &IsotropyCommand) -> Outcome {
    let IsotropyCommand::Contains { a, b } = cmd;
    let (sa, sb): (Stabilizer, Stabilizer) = (a.parse().map_err(usage)?, b.parse().map_err(usage)?);
    let contains = sa.contains(&sb);
    out(json!({ "a": sa, "b": sb, "contains": contains }), format!("{contains}\n"))
}

fn group_cmd(cmd: &GroupCommand) -> Outcome {
    let GroupCommand::Check { label, samples } = cmd;
    let label = parse_label(label)?;
    let model = GroupModel::for_label(&label).map_err(|e| match e {
        GroupError::Atlas(AtlasError::UnknownLabel(_)) => usage(e),
        _ => domain(e),
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let dim = model.algebra().dim();
    let xs: Vec<Vec<f64>> = (0..*samples).map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    let rep = check_model(&model, &xs).map_err(domain)?;
    let human = format!(
        "{}: commutator {:.3e}, associativity {:.3e}, inverse {:.3e}: {}\n",
        rep.label,
        rep.commutator_error,
        rep.associativity_error,
        rep.inverse_error,
        if rep.pass { "pass" } else { "FAIL" }
    );
    let v = serde_json::to_value(&rep).expect("report JSON");
    if rep.pass {
        out(v, human)
    } else {
        Err(Failure::Domain(human, Some(v)))
    }
}

fn lattice_failure(e: LatticeError) -> Failure {
    match &e {
        LatticeError::Rejected(reasons) => {
            let body = json!({ "error": "Rejected", "reasons": reasons });
            Failure::Domain(e.to_string(), Some(body))
        }
        LatticeError::IllConditioned(c) => {
            Failure::Domain(e.to_string(), Some(json!({ "error": "IllConditioned", "condition_number": c })))
        }
        LatticeError::MalformedTarget(_) | LatticeError::BadBound(_) => usage(e),
    }
}

fn parse_poly(s: &str) -> Result<Poly, Failure> {
    s.parse().map_err(usage)
}

fn read_target(s: &str) -> Result<Target, Failure> {
    let text = if Path::new(s).is_file() { std::fs::read_to_string(s).map_err(usage)? } else { s.to_string() };
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        return Target::from_json(&v).map_err(lattice_failure);
    }
    let label = parse_label(s)?;
    lattices::target_of(&label).ok_or_else(|| usage(format!("{label} has no family target")))
}

fn lattice_cmd(cmd: &LatticeCommand) -> Outcome {
    match cmd {
        LatticeCommand::UnitCheck { poly } => {
            let u = lattices::unit_cubic_check(&parse_poly(poly)?).map_err(lattice_failure)?;
            out(json!({ "poly": u.poly.to_string(), "accepted": true }), format!("{}: accepted\n", u.poly))
        }
        LatticeCommand::Dirichlet { poly } => {
            let u = lattices::unit_cubic_check(&parse_poly(poly)?).map_err(lattice_failure)?;
            let rep = lattices::dirichlet_lattice(&u).map_err(lattice_failure)?;
            let human = format!(
                "{}\ndet {}\neigenvalues {:?}\nunits {}\nrelation residual {:.3e}\nmin displacement {:.3e} over {} words: {}\n",
                rep.poly,
                rep.det,
                rep.eigenvalues,
                rep.units.len(),
                rep.relation_residual,
                rep.min_displacement,
                rep.words_checked,
                if rep.discrete { "discrete" } else { "NOT discrete" }
            );
            out(serde_json::to_value(&rep).expect("report JSON"), human)
        }
        LatticeCommand::SolSearch { bound, target } => {
            let t = read_target(target)?;
            let rep = lattices::sol_family_model_check(&t, *bound).map_err(lattice_failure)?;
            let human = match &rep.witness {
                Some(w) => format!("{}: {:?} ({})\n", rep.verdict, w.coeffs, w.poly),
                None => format!("{} ({} candidates)\n", rep.verdict, rep.candidates),
            };
            out(serde_json::to_value(&rep).expect("report JSON"), human)
        }
    }
}

fn curvature_cmd(input: &str) -> Outcome {
    let alg = if Path::new(input).exists() || input.ends_with(".json") {
        load_algebra(Path::new(input))?
    } else {
        atlas::build_algebra(&parse_label(input)?).map_err(atlas_failure)?
    };
    let rep = curvature_report(&alg);
    let n = alg.dim();
    let mut human = String::from("sectional curvatures:\n");
    for i in 0..n {
        for j in i + 1..n {
            human.push_str(&format!("  K({},{}) = {}\n", alg.basis_names()[i], alg.basis_names()[j], rep.sectional[i][j]));
        }
    }
    human.push_str(&format!("ricci eigenvalues: {:?}\nscalar: {}\n", rep.ricci_eigenvalues, rep.scalar));
    out(serde_json::to_value(&rep).expect("report JSON"), human)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { file, trace } => classify(file, *trace),
        Command::Atlas { command } => atlas_cmd(command),
        Command::Isotropy { command } => isotropy_cmd(command),
        Command::Group { command } => group_cmd(command),
        Command::Lattice { command } => lattice_cmd(command),
        Command::Curvature { input } => curvature_cmd(input),
    }
}

/// Writes to stdout, ignoring a closed pipe (`geo5 atlas list | head`).
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON output") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            emit(&if cli.json { pretty(&o.json) } else { o.human });
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Domain(msg, Some(body)) if cli.json => {
                    emit(&pretty(&body));
                    eprintln!("{}", msg.lines().next().unwrap_or_default());
                }
                Failure::Domain(msg, _) => {
                    if cli.json {
                        emit(&format!("{}\n", json!({ "error": msg.trim() })));
                    }
                    eprint!("{}", if msg.ends_with('\n') { msg } else { msg + "\n" });
                }
                Failure::Usage(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(code)
        }
    }
}
