//! `ilkit`: command-line front end.
//!
//! Exit status: 0 for an affirmative verdict, 1 for a negative verdict or a
//! witness found, 2 for usage or data errors (and exhausted search budgets).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ilkit::conditions::{check_general, check_ordinary, ConditionId};
use ilkit::equivalence::{filtrate, largest_bisimulation, n_bisimulation};
use ilkit::formula::{adequate_set, close_seed, parse};
use ilkit::proof::{check_proof, scheme, LogicId, Proof};
use ilkit::semantics::{
    frame_valid_scheme, validate_general, validate_ordinary, AnyModel, Frame, FrameValidity,
    GeneralModel, Limits, QtVariant,
};
use ilkit::toolbench::{find_countermodel, find_separating_frame, SearchBounds, SearchOutcome};
use ilkit::transform::{lift_monotone, lift_singleton, monotone_closure, unravel, DEFAULT_SR_POOL};
use ilkit::Formula;

#[derive(Parser)]
#[command(name = "ilkit", version, about = "Interpretability logic workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a formula and print its canonical and kernel forms.
    Parse {
        #[arg(long)]
        formula: String,
    },
    /// Decide whether a world (default: every world) forces a formula.
    CheckModel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        formula: String,
    },
    /// Check the structural conditions of a model file.
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Decide a frame condition on the frame of a model file.
    CheckFrame {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        condition: String,
        #[arg(long)]
        max_valuations: Option<u128>,
    },
    /// Brute-force frame validity of a catalogued or literal scheme.
    FrameValid {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        max_valuations: Option<u128>,
    },
    /// Convert between ordinary and generalised models.
    Transform {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        qt: Option<u8>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Largest bisimulation (or maximal n-bisimulation) between two models.
    Bisim {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Filtrate a model through the adequate set of the given seed formulas.
    Filtrate {
        #[arg(long)]
        model: PathBuf,
        /// Formulas separated by `;`.
        #[arg(long = "seed-formulas", alias = "seed")]
        seed_formulas: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a Hilbert-style proof file.
    CheckProof {
        #[arg(long)]
        proof: PathBuf,
        /// Overrides the logic named in the file, e.g. `IL+W`.
        #[arg(long)]
        logic: Option<String>,
    },
    /// Bounded countermodel search.
    Search {
        #[arg(long)]
        formula: String,
        /// Comma-separated generalised condition ids.
        #[arg(long, default_value = "")]
        logic: String,
        #[arg(long)]
        qt: Option<u8>,
        #[arg(long)]
        max_worlds: Option<usize>,
        #[arg(long)]
        max_valuations: Option<u128>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bounded search for a frame on which one condition holds and another fails.
    Separate {
        #[arg(long)]
        holds: String,
        #[arg(long)]
        fails: String,
        #[arg(long)]
        qt: Option<u8>,
        #[arg(long)]
        max_worlds: Option<usize>,
        #[arg(long)]
        max_valuations: Option<u128>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    LiftSingleton,
    LiftMonotone,
    MonotoneClosure,
    Unravel,
}

type Outcome = Result<u8, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn verdict(b: bool) -> u8 {
    if b {
        0
    } else {
        1
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<AnyModel, String> {
    AnyModel::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_valid(path: &Path) -> Result<AnyModel, String> {
    let m = load(path)?;
    let report = match &m {
        AnyModel::Ordinary(o) => validate_ordinary(&o.frame).render(&o.frame),
        AnyModel::General(g) => validate_general(&g.frame).render(&g.frame),
    };
    if report.is_empty() {
        Ok(m)
    } else {
        Err(format!("{}: invalid model\n{report}", path.display()))
    }
}

fn load_general(path: &Path) -> Result<GeneralModel, String> {
    load_valid(path)?
        .into_general()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn formula(text: &str) -> Result<Formula, String> {
    parse(text).map_err(|e| format!("--formula: {e}"))
}

fn qt_flag(k: Option<u8>) -> Result<Option<QtVariant>, String> {
    k.map(|k| QtVariant::new(k).map_err(|e| format!("--qt: {e}")))
        .transpose()
}

fn condition(text: &str, flag: &str) -> Result<ConditionId, String> {
    text.parse().map_err(|e| format!("{flag}: {e}"))
}

fn limits(max: Option<u128>) -> Limits {
    max.map_or_else(Limits::default, |max_valuations| Limits { max_valuations })
}

fn bounds(
    qt: Option<u8>,
    max_worlds: Option<usize>,
    max_valuations: Option<u128>,
) -> Result<SearchBounds, String> {
    let mut b = SearchBounds::default();
    if let Some(q) = qt_flag(qt)? {
        b.qt = q;
    }
    if let Some(n) = max_worlds {
        b.max_worlds = n;
    }
    if let Some(v) = max_valuations {
        b.max_valuations = v;
    }
    Ok(b)
}

fn report_search(outcome: SearchOutcome, output: Option<&Path>, found: u8) -> Outcome {
    match outcome {
        SearchOutcome::Witness {
            witness,
            frames_examined,
        } => {
            println!("witness found after {frames_examined} frames");
            if let Some(w) = witness.world {
                println!("world: {}", witness.model.frame.name(w));
            }
            let text = AnyModel::General(witness.model).to_json();
            match output {
                Some(p) => write(p, &text)?,
                None => println!("{text}"),
            }
            Ok(found)
        }
        SearchOutcome::ExhaustedWithinBounds { frames_examined } => {
            println!("exhausted within bounds after {frames_examined} frames");
            Ok(1 - found)
        }
        SearchOutcome::BudgetExceeded {
            frames_examined,
            reason,
        } => Err(format!("{reason} after {frames_examined} frames")),
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Parse { formula: text } => {
            let f = formula(&text)?;
            println!("{f}");
            if f.is_ground() {
                println!("kernel: {}", f.desugar().map_err(|e| e.to_string())?);
            } else {
                println!("scheme over {:?}", f.metavariables());
            }
            println!("modal depth: {}", f.modal_depth());
            Ok(0)
        }

        Cmd::CheckModel {
            model,
            world,
            formula: text,
        } => {
            let f = formula(&text)?;
            let m = load_valid(&model)?;
            let (truth, names) = match &m {
                AnyModel::Ordinary(o) => (o.truth_set(&f), o.frame.world_names()),
                AnyModel::General(g) => (g.truth_set(&f), g.frame.world_names()),
            };
            let truth = truth.map_err(|e| format!("--formula: {e}"))?;
            match world {
                Some(w) => {
                    let i = names
                        .iter()
                        .position(|n| *n == w)
                        .ok_or_else(|| format!("--world: unknown world `{w}`"))?;
                    let holds = truth.contains(i);
                    println!(
                        "{w} {} {f}",
                        if holds { "forces" } else { "does not force" }
                    );
                    Ok(verdict(holds))
                }
                None => {
                    let forced: Vec<&str> = truth.iter().map(|i| names[i].as_str()).collect();
                    println!("forced at: {{{}}}", forced.join(", "));
                    Ok(verdict(truth.len() == names.len()))
                }
            }
        }

        Cmd::Validate { model } => {
            let m = load(&model)?;
            let report = match &m {
                AnyModel::Ordinary(o) => validate_ordinary(&o.frame).render(&o.frame),
                AnyModel::General(g) => validate_general(&g.frame).render(&g.frame),
            };
            if report.is_empty() {
                println!("valid");
                Ok(0)
            } else {
                println!("{report}");
                Ok(1)
            }
        }

        Cmd::CheckFrame {
            model,
            condition: c,
            max_valuations,
        } => {
            let c = condition(&c, "--condition")?;
            let m = load_valid(&model)?;
            let (verdict_, rendered) = match (&m, c.is_ordinary()) {
                (AnyModel::Ordinary(o), true) => {
                    let v = check_ordinary(&o.frame, c).map_err(|e| e.to_string())?;
                    let r = v.witness.as_ref().map(|w| w.render(&o.frame));
                    (v.holds, r)
                }
                (AnyModel::General(g), false) => {
                    let v = check_general(&g.frame, c, &limits(max_valuations))
                        .map_err(|e| e.to_string())?;
                    let r = v.witness.as_ref().map(|w| w.render(&g.frame));
                    (v.holds, r)
                }
                _ => {
                    return Err(format!(
                        "--condition: `{c}` does not apply to a {:?} model",
                        m.kind()
                    ))
                }
            };
            println!("{c} {}", if verdict_ { "holds" } else { "fails" });
            if let Some(r) = rendered {
                println!("witness: {r}");
            }
            Ok(verdict(verdict_))
        }

        Cmd::FrameValid {
            model,
            scheme: text,
            max_valuations,
        } => {
            let s = scheme(&text)
                .or_else(|_| parse(&text))
                .map_err(|e| format!("--scheme: {e}"))?;
            let m = load_valid(&model)?;
            let lim = limits(max_valuations);
            let (res, names) = match &m {
                AnyModel::Ordinary(o) => (
                    frame_valid_scheme(&o.frame, &s, &lim),
                    o.frame.world_names(),
                ),
                AnyModel::General(g) => (
                    frame_valid_scheme(&g.frame, &s, &lim),
                    g.frame.world_names(),
                ),
            };
            match res.map_err(|e| e.to_string())? {
                FrameValidity::Valid => {
                    println!("valid: {s}");
                    Ok(0)
                }
                FrameValidity::Invalid { valuation, world } => {
                    println!("invalid: {s}");
                    println!("fails at {}", names[world]);
                    for (l, set) in valuation {
                        let ws: Vec<&str> = set.iter().map(|i| names[i].as_str()).collect();
                        println!("  {l} = {{{}}}", ws.join(", "));
                    }
                    Ok(1)
                }
            }
        }

        Cmd::Transform {
            op,
            model,
            qt,
            output,
        } => {
            let m = load_valid(&model)?;
            let qt = qt_flag(qt)?;
            let err = |e: ilkit::Error| format!("{}: {e}", model.display());
            let out: AnyModel = match op {
                Op::LiftSingleton => {
                    let o = m.into_ordinary().map_err(err)?;
                    let q = qt.unwrap_or(QtVariant::new(1).expect("variant 1"));
                    lift_singleton(&o, q).map_err(err)?.into()
                }
                Op::LiftMonotone => lift_monotone(&m.into_ordinary().map_err(err)?)
                    .map_err(err)?
                    .into(),
                Op::MonotoneClosure => monotone_closure(&m.into_general().map_err(err)?)
                    .map_err(err)?
                    .into(),
                Op::Unravel => {
                    let g = m.into_general().map_err(err)?;
                    let u = unravel(&g, DEFAULT_SR_POOL).map_err(err)?;
                    let map_path = output.with_file_name("map.json");
                    let map = serde_json::to_string_pretty(&u.map_json(&g)).expect("json");
                    write(&map_path, &map)?;
                    println!("map written to {}", map_path.display());
                    u.model.into()
                }
            };
            write(&output, &out.to_json())?;
            println!("model written to {}", output.display());
            Ok(0)
        }

        Cmd::Bisim { left, right, n } => {
            let l = load_general(&left)?;
            let r = load_general(&right)?;
            let z = match n {
                Some(n) => n_bisimulation(&l, &r, n).levels.pop().expect("level n"),
                None => largest_bisimulation(&l, &r),
            };
            for (a, b) in z.named_pairs(&l, &r) {
                println!("({a}, {b})");
            }
            Ok(verdict(!z.is_empty()))
        }

        Cmd::Filtrate {
            model,
            seed_formulas,
            output,
        } => {
            let m = load_general(&model)?;
            let seed: Vec<Formula> = seed_formulas
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| parse(s).map_err(|e| format!("--seed-formulas: `{s}`: {e}")))
                .collect::<Result<_, _>>()?;
            let gamma =
                adequate_set(&close_seed(&seed)).map_err(|e| format!("--seed-formulas: {e}"))?;
            let (fm, q) = filtrate(&m, &gamma).map_err(|e| format!("{}: {e}", model.display()))?;
            write(&output, &AnyModel::General(fm).to_json())?;
            let classes = output.with_file_name("classes.json");
            write(
                &classes,
                &serde_json::to_string_pretty(&q.map_json(&m)).expect("json"),
            )?;
            println!(
                "{} classes from {} worlds; |Gamma| = {}",
                q.len(),
                m.frame.size(),
                gamma.len()
            );
            println!(
                "model written to {}, classes to {}",
                output.display(),
                classes.display()
            );
            Ok(0)
        }

        Cmd::CheckProof { proof, logic } => {
            let p = Proof::from_json(&read(&proof)?)
                .map_err(|e| format!("{}: {e}", proof.display()))?;
            let logic = match logic {
                Some(s) => s.parse::<LogicId>().map_err(|e| format!("--logic: {e}"))?,
                None => p.logic.clone().unwrap_or_else(LogicId::base),
            };
            let v = check_proof(&p, &logic);
            match (&v.failure, v.theorem()) {
                (None, Some(t)) => {
                    println!("accepted in {logic}: {t}");
                    Ok(0)
                }
                (Some(f), _) => {
                    println!("rejected at step {}: {}", f.step, f.reason);
                    Ok(1)
                }
                (None, None) => {
                    println!("rejected: empty proof");
                    Ok(1)
                }
            }
        }

        Cmd::Search {
            formula: text,
            logic,
            qt,
            max_worlds,
            max_valuations,
            output,
        } => {
            let f = formula(&text)?;
            let ids: Vec<ConditionId> = logic
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| condition(s, "--logic"))
                .collect::<Result<_, _>>()?;
            let b = bounds(qt, max_worlds, max_valuations)?;
            let outcome = find_countermodel(&f, &ids, &b).map_err(|e| e.to_string())?;
            report_search(outcome, output.as_deref(), 1)
        }

        Cmd::Separate {
            holds,
            fails,
            qt,
            max_worlds,
            max_valuations,
            output,
        } => {
            let h = condition(&holds, "--holds")?;
            let f = condition(&fails, "--fails")?;
            let b = bounds(qt, max_worlds, max_valuations)?;
            let outcome = find_separating_frame(h, f, &b).map_err(|e| e.to_string())?;
            report_search(outcome, output.as_deref(), 0)
        }
    }
}
