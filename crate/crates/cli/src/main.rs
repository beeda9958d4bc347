use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nwlab_core::algebra::{bracket, LieElement, LoopGenerator};
use nwlab_core::json::{lie_to_json, rational_json, report_to_json, state_to_json, uea_to_json};
use nwlab_core::lincomb::LinComb;
use nwlab_core::modules::{BaseParams, BaseRegistry, InducedModule};
use nwlab_core::pbw::{casimir, modified_casimir, straighten};
use nwlab_core::rational::{parse_rational, rat, Rational};
use nwlab_core::singular::{find_singular, irreducibility_probe, Component, ProbeVerdict, RaisingRegistry, RaisingSet};
use nwlab_core::voa::{verify_virasoro, VertexEngine};
use nwlab_core::wakimoto::verify_phi_relations;
use nwlab_core::NwError;

mod pretty;

#[derive(Parser)]
#[command(name = "nwlab", version, about = "Exact computations in the affine Nappi-Witten algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Render the result as an indented table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two loop generators, e.g. `--x a:2 --y b:-2`.
    Bracket {
        #[arg(long, value_parser = parse_generator)]
        x: LoopGenerator,
        #[arg(long, value_parser = parse_generator)]
        y: LoopGenerator,
    },
    /// PBW normal form of a word such as `b:1,a:-1`.
    Nf {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long, default_value = "1", value_parser = parse_q)]
        level: Rational,
    },
    /// Graded dimensions of an induced module up to `--max`.
    Dims {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        max: usize,
        /// Restrict to the bigraded component with this absolute d-weight.
        #[arg(long, allow_hyphen_values = true)]
        dweight: Option<i64>,
    },
    /// Singular vectors in one component.
    Singular {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value = "standard")]
        grading: String,
        #[arg(long)]
        height: usize,
        /// Absolute d-weight of the component; required for `--grading new`.
        #[arg(long, allow_hyphen_values = true)]
        dweight: Option<i64>,
        /// Highest raising mode; defaults to the height.
        #[arg(long)]
        max_mode: Option<i64>,
    },
    /// Sweep all components up to `--max` for singular vectors.
    Probe {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value = "standard")]
        grading: String,
        #[arg(long)]
        max: usize,
    },
    /// Check `[L(m),L(n)]` on states of degree at most `--max`.
    Virasoro {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 3)]
        max: usize,
    },
    /// Check the free-field realization relations.
    Wakimoto {
        #[arg(long, default_value = "1", value_parser = parse_q)]
        level: Rational,
        #[arg(long, default_value = "0", value_parser = parse_q, allow_hyphen_values = true)]
        alpha_p: Rational,
        #[arg(long, default_value = "0", value_parser = parse_q, allow_hyphen_values = true)]
        alpha_q: Rational,
        #[arg(long, default_value_t = 2)]
        max_mode: i64,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
    /// Casimir element, or its modified form with `--modified`.
    Casimir {
        #[arg(long, default_value = "1", value_parser = parse_q)]
        level: Rational,
        #[arg(long)]
        modified: bool,
    },
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long, default_value = "1", value_parser = parse_q, allow_hyphen_values = true)]
    level: Rational,
    #[arg(long, default_value = "trivial")]
    base: String,
    #[arg(long, default_value = "0", value_parser = parse_q, allow_hyphen_values = true)]
    c: Rational,
    #[arg(long, default_value = "0", value_parser = parse_q, allow_hyphen_values = true)]
    d: Rational,
    #[arg(long, default_value = "0", value_parser = parse_q, allow_hyphen_values = true)]
    alpha: Rational,
    #[arg(long, default_value = "0", value_parser = parse_q, allow_hyphen_values = true)]
    beta: Rational,
    #[arg(long, default_value = "0", value_parser = parse_q, allow_hyphen_values = true)]
    gamma: Rational,
    /// Truncation depth; defaults to what the command needs.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Clone)]
struct Word(Vec<LoopGenerator>);

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_generator(s: &str) -> Result<LoopGenerator, String> {
    s.parse().map_err(|e: NwError| e.to_string())
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.split([',', ' ']).filter(|t| !t.is_empty()).map(parse_generator).collect::<Result<_, _>>().map(Word)
}

enum Failure {
    /// An identity was computed and came out false.
    Verification(Value),
    Usage(String),
}

impl From<NwError> for Failure {
    fn from(e: NwError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn depth_limit() -> Result<usize, Failure> {
    match std::env::var("NWLAB_DEPTH_LIMIT") {
        Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("NWLAB_DEPTH_LIMIT: not a depth: {v:?}"))),
        Err(_) => Ok(8),
    }
}

impl ModuleArgs {
    fn build(&self, needed: usize, flag: &str) -> Result<InducedModule, Failure> {
        let depth = self.depth.unwrap_or(needed);
        let limit = depth_limit()?;
        if depth > limit {
            return Err(Failure::Usage(format!("{flag}: depth {depth} exceeds NWLAB_DEPTH_LIMIT={limit}")));
        }
        if depth < needed {
            return Err(Failure::Usage(format!("--depth {depth} is below the {needed} required by {flag}")));
        }
        let params = BaseParams {
            c: self.c.clone(),
            d: self.d.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
            window: (2 * depth as i64).max(8),
            ..BaseParams::default()
        };
        let base = BaseRegistry::builtin()
            .create(&self.base, &params)
            .map_err(|e| Failure::Usage(format!("--base: {e}")))?;
        Ok(InducedModule::new(self.level.clone(), base, depth)?)
    }
}

fn raising(grading: &str, max_mode: i64) -> Result<RaisingSet, Failure> {
    let scheme = RaisingRegistry::builtin()
        .get(grading)
        .map_err(|e| Failure::Usage(format!("--grading: {e}")))?;
    Ok(RaisingSet::new(scheme, max_mode))
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Bracket { x, y } => {
            let r = bracket(&LieElement::generator(*x), &LieElement::generator(*y));
            Ok(json!({ "result": lie_to_json(&r) }))
        }
        Command::Nf { word, level } => Ok(json!({ "normal_form": uea_to_json(&straighten(&word.0, level)) })),
        Command::Dims { module, max, dweight } => {
            let m = module.build(*max, "--max")?;
            let dims: Vec<usize> = match dweight {
                Some(w) => (0..=*max).map(|h| m.bigraded_dim(h, &rat(*w))).collect(),
                None => (0..=*max).map(|h| m.graded_dim(h)).collect(),
            };
            Ok(json!({ "dims": dims }))
        }
        Command::Singular { module, grading, height, dweight, max_mode } => {
            let m = module.build(*height, "--height")?;
            let component = match (grading.as_str(), dweight) {
                (_, Some(w)) => Component::bigraded(*height, rat(*w)),
                ("new", None) => return Err(Failure::Usage("--dweight is required with --grading new".into())),
                _ => Component::graded(*height),
            };
            let set = raising(grading, max_mode.unwrap_or(*height as i64))?;
            let report = find_singular(&m, &component, &set)?;
            Ok(report_to_json(&report, m.base()))
        }
        Command::Probe { module, grading, max } => {
            let m = module.build(*max, "--max")?;
            let verdict = irreducibility_probe(&m, *max, &raising(grading, 1)?)?;
            Ok(match verdict {
                ProbeVerdict::NoSingularUpTo(h) => json!({ "found": [], "irreducible_up_to": h }),
                ProbeVerdict::Found(reports) => json!({
                    "found": reports.iter().map(|r| report_to_json(r, m.base())).collect::<Vec<_>>(),
                    "irreducible_up_to": Value::Null,
                }),
            })
        }
        Command::Virasoro { module, m, n, max } => {
            // L(m)L(n) on degree `max` reaches degree max + |m| + |n|.
            let needed = max + (m.unsigned_abs() + n.unsigned_abs()) as usize;
            let module = module.build(needed, "--max")?;
            let engine = VertexEngine::new(&module);
            let check = verify_virasoro(&engine, *m, *n, *max)?;
            let mut out = json!({
                "m": check.m,
                "n": check.n,
                "verified": check.verified,
                "central_coeff": check.central_coeff.as_ref().map(rational_json),
                "central_charge": check.central_charge.as_ref().map(rational_json),
            });
            if let Some(c) = &check.counterexample {
                out["counterexample"] = json!({
                    "state": state_to_json(&LinComb::basis(c.state.clone()), module.base()),
                    "lhs": state_to_json(&c.lhs, module.base()),
                    "rhs": state_to_json(&c.rhs, module.base()),
                });
            }
            if check.verified {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Wakimoto { level, alpha_p, alpha_q, max_mode, max_depth } => {
            let limit = depth_limit()?;
            if *max_depth > limit {
                return Err(Failure::Usage(format!("--max-depth: {max_depth} exceeds NWLAB_DEPTH_LIMIT={limit}")));
            }
            let report = verify_phi_relations(level, alpha_p, alpha_q, *max_mode, *max_depth)?;
            let relations: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "x": c.x.symbol(),
                        "y": c.y.symbol(),
                        "m": c.m,
                        "n": c.n,
                        "passed": c.passed,
                        "counterexample": c.counterexample,
                    })
                })
                .collect();
            let out = json!({ "passed": report.all_passed(), "relations": relations });
            if report.all_passed() {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Casimir { level, modified } => {
            let element = if *modified { modified_casimir(level)? } else { casimir(level) };
            Ok(json!({ "casimir": uea_to_json(&element), "modified": modified }))
        }
    }
}

fn emit(value: &Value, pretty: bool) {
    let text = if pretty { pretty::render(value) } else { format!("{value}\n") };
    // a closed pipe downstream is not our failure
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(value) => {
            emit(&value, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(value)) => {
            emit(&value, cli.pretty);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
