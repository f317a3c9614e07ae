//! The `stateattack` command line.
//!
//! Every subcommand reads a model document (`--model`), and most also an
//! attack spec, either from a spec document (`--spec`) or from
//! `--attacked`, `--budget`, `--mode` and `--secret`. Reports are JSON
//! (default) or DOT, written to standard output or `--out`.
//!
//! Exit status is 0 when the analysis ran, 1 when `--fail-on-violation` is
//! set and the verdict is a violation, and 2 on invalid input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::attack_models::{AttackSpec, ViolationMode};
use crate::attack_observer::{build_attack_observer, AttackObserver, StateType};
use crate::dot;
use crate::enforcement::{enforce, TypeIIReading};
use crate::io::{parse_model, parse_spec};
use crate::observer::{check_anonymity_classic, check_opacity_classic};
use crate::oracle::{oracle_check_enforced, oracle_check_violation};
use crate::plant::Nfa;
use crate::strategy::{
    simulate_play, synthesize_strategy, validate_strategy, MealyStrategy, Policy, Rank, SystemPolicy,
};
use crate::violation::verify;

#[derive(Parser, Debug)]
#[command(name = "stateattack", version, about = "Anonymity and opacity analysis under bounded state attacks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the observer of the plant.
    Observer(Common),
    /// Check anonymity, or opacity with --mode opacity, without attacks.
    CheckClassic(Common),
    /// Build the attack-observer.
    BuildAobs(Common),
    /// Decide whether the intruder can violate the property.
    CheckViolation(Common),
    /// Decide whether the intruder can force a violation.
    CheckEnforced(Common),
    /// Synthesize and validate an attack strategy.
    Synthesize(Common),
    /// Play a synthesized strategy against a simulated system.
    Simulate(Common),
    /// Run the brute-force reference checks and compare with the pipeline.
    Oracle(Common),
    /// Export one of the constructed automata as DOT.
    ExportDot(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Model document (JSON).
    #[arg(long)]
    model: PathBuf,
    /// Spec document (JSON); overrides --attacked, --budget, --mode, --secret.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Comma-separated attacked states.
    #[arg(long, value_delimiter = ',')]
    attacked: Option<Vec<String>>,
    /// Attack budget.
    #[arg(long, allow_negative_numbers = true)]
    budget: Option<i64>,
    #[arg(long, value_enum, default_value_t = Mode::Anonymity)]
    mode: Mode,
    /// Comma-separated secret states for --mode opacity.
    #[arg(long, value_delimiter = ',')]
    secret: Option<Vec<String>>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// How the strategy picks attack decisions.
    #[arg(long, value_enum, default_value_t = PolicyArg::Ranked)]
    policy: PolicyArg,
    /// Judge pending attacks only by the results still kept during pruning.
    #[arg(long = "strict-paper", visible_alias = "kept-results")]
    strict: bool,
    /// Search horizon for the oracle; defaults to the attack-observer size.
    #[arg(long)]
    horizon: Option<usize>,
    /// Seed of the simulated system.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Let the simulated system play adversarially instead of randomly.
    #[arg(long)]
    adversarial: bool,
    /// Round limit for simulation; defaults to the attack-observer size.
    #[arg(long)]
    max_rounds: Option<u32>,
    /// What export-dot renders.
    #[arg(long, value_enum, default_value_t = What::FinalVerifier)]
    what: What,
    /// Exit with status 1 when the verdict is a violation.
    #[arg(long)]
    fail_on_violation: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Anonymity,
    Opacity,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PolicyArg {
    Ranked,
    FirstValid,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum What {
    Plant,
    Observer,
    Aobs,
    Verifier,
    FinalVerifier,
    Strategy,
}

/// An input problem, reported with exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Report {
    body: String,
    violation: bool,
}

impl Report {
    fn json(value: &impl Serialize, violation: bool) -> Report {
        let mut body = serde_json::to_string_pretty(value).expect("reports serialize");
        body.push('\n');
        Report { body, violation }
    }

    fn dot(body: String, violation: bool) -> Report {
        Report { body, violation }
    }
}

/// Runs the command line on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let (common, result) = match &cli.command {
        Command::Observer(c) => (c, observer_cmd(c)),
        Command::CheckClassic(c) => (c, classic_cmd(c)),
        Command::BuildAobs(c) => (c, aobs_cmd(c)),
        Command::CheckViolation(c) => (c, violation_cmd(c)),
        Command::CheckEnforced(c) => (c, enforced_cmd(c)),
        Command::Synthesize(c) => (c, synthesize_cmd(c)),
        Command::Simulate(c) => (c, simulate_cmd(c)),
        Command::Oracle(c) => (c, oracle_cmd(c)),
        Command::ExportDot(c) => (c, export_cmd(c)),
    };
    let report = match result {
        Ok(r) => r,
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let written = match &common.out {
        Some(path) => fs::write(path, &report.body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(report.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return 2;
    }
    if common.fail_on_violation && report.violation {
        1
    } else {
        0
    }
}

fn load_model(c: &Common) -> Result<Nfa, InputError> {
    let text = fs::read_to_string(&c.model).map_err(|e| format!("cannot read {}: {e}", c.model.display()))?;
    Ok(parse_model(&text).map_err(|e| format!("{}: {e}", c.model.display()))?)
}

fn load_spec(c: &Common, g: &Nfa) -> Result<AttackSpec, InputError> {
    if let Some(path) = &c.spec {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return Ok(parse_spec(&text, g).map_err(|e| format!("{}: {e}", path.display()))?);
    }
    if c.attacked.is_none() && c.budget.is_none() {
        return Err(InputError("an attack spec is required: pass --spec or --attacked/--budget".into()));
    }
    let attacked: Vec<String> = c.attacked.clone().unwrap_or_default().into_iter().filter(|s| !s.is_empty()).collect();
    let budget = c.budget.unwrap_or(0);
    let budget = u32::try_from(budget).map_err(|_| crate::error::ModelError::NegativeBudget(budget))?;
    let mode = match c.mode {
        Mode::Anonymity => ViolationMode::Anonymity,
        Mode::Opacity => ViolationMode::Opacity {
            secret: g.state_set(c.secret.as_deref().unwrap_or_default())?,
        },
    };
    Ok(AttackSpec {
        attacked: g.state_set(&attacked)?,
        budget,
        mode,
    })
}

fn load_aobs(c: &Common) -> Result<Arc<AttackObserver>, InputError> {
    let g = load_model(c)?;
    let spec = load_spec(c, &g)?;
    Ok(Arc::new(build_attack_observer(&g, &spec)?))
}

fn reading(c: &Common) -> TypeIIReading {
    if c.strict {
        TypeIIReading::KeptResults
    } else {
        TypeIIReading::AllResults
    }
}

fn reading_name(r: TypeIIReading) -> &'static str {
    match r {
        TypeIIReading::AllResults => "all-results",
        TypeIIReading::KeptResults => "kept-results",
    }
}

fn policy(c: &Common) -> Policy {
    match c.policy {
        PolicyArg::Ranked => Policy::Ranked,
        PolicyArg::FirstValid => Policy::FirstValid,
    }
}

fn rank_value(r: Rank) -> Value {
    match r {
        Rank::Finite(n) => json!(n),
        Rank::Infinite => json!("inf"),
    }
}

fn type_name(t: StateType) -> &'static str {
    match t {
        StateType::TypeI => "I",
        StateType::TypeII => "II",
        StateType::TypeIII => "III",
    }
}

fn observer_cmd(c: &Common) -> Result<Report, InputError> {
    let g = load_model(c)?;
    if c.format == Format::Dot {
        return Ok(Report::dot(dot::observer_to_dot(&g), false));
    }
    let obs = g.observer();
    let transitions: Vec<[String; 3]> = obs
        .transitions()
        .map(|(s, l, t)| [g.format_estimate(obs.state(s)), g.label_name(l), g.format_estimate(obs.state(t))])
        .collect();
    Ok(Report::json(
        &json!({
            "state_count": obs.len(),
            "initial": g.format_states(g.initial()),
            "states": obs.states().iter().map(|q| g.format_estimate(q)).collect::<Vec<_>>(),
            "transitions": transitions,
        }),
        false,
    ))
}

fn classic_cmd(c: &Common) -> Result<Report, InputError> {
    let g = load_model(c)?;
    let (property, holds) = match c.mode {
        Mode::Anonymity => ("anonymity", check_anonymity_classic(&g)),
        Mode::Opacity => {
            let secret = g.state_set(c.secret.as_deref().unwrap_or_default())?;
            ("opacity", check_opacity_classic(&g, &secret))
        }
    };
    Ok(Report::json(
        &json!({
            "property": property,
            "verdict": holds,
            "observer_states": g.observer().len(),
        }),
        !holds,
    ))
}

fn aobs_cmd(c: &Common) -> Result<Report, InputError> {
    let aobs = load_aobs(c)?;
    if c.format == Format::Dot {
        return Ok(Report::dot(dot::aobs_to_dot(&aobs), false));
    }
    let states: Vec<Value> = (0..aobs.len())
        .map(|id| json!({"state": aobs.state_label(id), "type": type_name(aobs.state_type(id))}))
        .collect();
    let transitions: Vec<[String; 3]> = (0..aobs.len())
        .flat_map(|s| {
            let aobs = &aobs;
            aobs.outgoing(s)
                .map(move |(l, t)| [aobs.state_label(s), aobs.label_name(l), aobs.state_label(t)])
        })
        .collect();
    Ok(Report::json(
        &json!({
            "state_count": aobs.len(),
            "initial": aobs.state_label(aobs.initial()),
            "states": states,
            "transitions": transitions,
        }),
        false,
    ))
}

fn violation_cmd(c: &Common) -> Result<Report, InputError> {
    let aobs = load_aobs(c)?;
    let out = verify(aobs.clone());
    if c.format == Format::Dot {
        return Ok(Report::dot(dot::sub_automaton_to_dot("verifier", &out.verifier), out.verdict));
    }
    let witness = out
        .verifier
        .witness()
        .map(|w| w.into_iter().map(|l| aobs.label_name(l)).collect::<Vec<_>>());
    Ok(Report::json(
        &json!({
            "verdict": out.verdict,
            "attack_observer_states": aobs.len(),
            "verifier_states": out.verifier.len(),
            "witness": witness,
        }),
        out.verdict,
    ))
}

fn enforced_cmd(c: &Common) -> Result<Report, InputError> {
    let aobs = load_aobs(c)?;
    let r = reading(c);
    let out = enforce(aobs.clone(), r);
    if c.format == Format::Dot {
        return Ok(Report::dot(
            dot::sub_automaton_to_dot("final_verifier", &out.final_verifier),
            out.verdict,
        ));
    }
    let initial_rank = out.verdict.then(|| {
        let ranks = crate::strategy::compute_ranks(&out.final_verifier);
        rank_value(ranks.get(aobs.initial()))
    });
    Ok(Report::json(
        &json!({
            "verdict": out.verdict,
            "reading": reading_name(r),
            "attack_observer_states": aobs.len(),
            "verifier_states": out.verifier.len(),
            "final_verifier_states": out.final_verifier.len(),
            "initial_rank": initial_rank,
        }),
        out.verdict,
    ))
}

fn strategy_json(s: &MealyStrategy) -> Value {
    let aobs = s.aobs();
    let report = validate_strategy(s).expect("synthesized strategies are nonempty");
    let edges: Vec<Value> = s
        .edges()
        .map(|e| {
            json!({
                "source": aobs.state_label(e.source),
                "label": s.edge_label(e.input, e.output),
                "target": aobs.state_label(e.target),
            })
        })
        .collect();
    json!({
        "initial": aobs.state_label(s.initial()),
        "initial_rank": rank_value(s.rank(s.initial())),
        "states": s.states().iter().map(|&x| aobs.state_label(x)).collect::<Vec<_>>(),
        "edges": edges,
        "validation": report,
    })
}

fn strategy_for(c: &Common) -> Result<(Arc<AttackObserver>, Option<MealyStrategy>), InputError> {
    let aobs = load_aobs(c)?;
    let out = enforce(aobs.clone(), reading(c));
    if !out.verdict {
        return Ok((aobs, None));
    }
    Ok((aobs, Some(synthesize_strategy(&out.final_verifier, policy(c))?)))
}

fn synthesize_cmd(c: &Common) -> Result<Report, InputError> {
    let (_, strategy) = strategy_for(c)?;
    let enforced = strategy.is_some();
    if c.format == Format::Dot {
        let body = match &strategy {
            Some(s) => dot::strategy_to_dot(s),
            None => "digraph strategy {\n  empty [shape=plaintext, label=\"empty\"];\n}\n".to_string(),
        };
        return Ok(Report::dot(body, enforced));
    }
    Ok(Report::json(
        &json!({
            "enforced": enforced,
            "policy": match c.policy { PolicyArg::Ranked => "ranked", PolicyArg::FirstValid => "first-valid" },
            "strategy": strategy.as_ref().map(strategy_json),
        }),
        enforced,
    ))
}

fn simulate_cmd(c: &Common) -> Result<Report, InputError> {
    let (aobs, strategy) = strategy_for(c)?;
    let Some(s) = strategy else {
        return Ok(Report::json(&json!({"enforced": false, "play": null}), false));
    };
    let system = if c.adversarial {
        SystemPolicy::Adversarial
    } else {
        SystemPolicy::RandomSeeded(c.seed)
    };
    let max_rounds = c.max_rounds.unwrap_or(aobs.len() as u32);
    let play = simulate_play(&s, system, max_rounds)?;
    let g = aobs.plant();
    let rounds: Vec<Value> = play
        .rounds
        .iter()
        .map(|r| {
            json!({
                "event": r.event.map_or("ε".to_string(), |e| g.event_name(e).to_string()),
                "output": r.output.to_string(),
                "true_state": g.state_name(r.true_state),
                "estimate": g.format_estimate(&aobs.state(r.strategy_state).estimate),
            })
        })
        .collect();
    let violated = play.outcome == crate::strategy::PlayOutcome::Violated;
    Ok(Report::json(
        &json!({
            "enforced": true,
            "system": if c.adversarial { "adversarial".to_string() } else { format!("random(seed={})", c.seed) },
            "outcome": play.outcome,
            "rounds": rounds,
            "true_state": g.state_name(play.true_state),
        }),
        violated,
    ))
}

fn oracle_cmd(c: &Common) -> Result<Report, InputError> {
    let aobs = load_aobs(c)?;
    let horizon = c.horizon.unwrap_or(aobs.len());
    let (g, spec) = (aobs.plant(), aobs.spec());
    let oracle_violation = oracle_check_violation(g, spec, horizon);
    let oracle_enforced = oracle_check_enforced(g, spec, horizon);
    let pipeline_violation = verify(aobs.clone()).verdict;
    let pipeline_enforced = enforce(aobs.clone(), reading(c)).verdict;
    Ok(Report::json(
        &json!({
            "horizon": horizon,
            "oracle_violation": oracle_violation,
            "oracle_enforced": oracle_enforced,
            "pipeline_violation": pipeline_violation,
            "pipeline_enforced": pipeline_enforced,
            "agree": oracle_violation == pipeline_violation && oracle_enforced == pipeline_enforced,
        }),
        oracle_violation,
    ))
}

fn export_cmd(c: &Common) -> Result<Report, InputError> {
    let body = match c.what {
        What::Plant => dot::plant_to_dot(&load_model(c)?),
        What::Observer => dot::observer_to_dot(&load_model(c)?),
        What::Aobs => {
            let aobs = load_aobs(c)?;
            dot::aobs_to_dot(&aobs)
        }
        What::Verifier => dot::sub_automaton_to_dot("verifier", &verify(load_aobs(c)?).verifier),
        What::FinalVerifier => {
            dot::sub_automaton_to_dot("final_verifier", &enforce(load_aobs(c)?, reading(c)).final_verifier)
        }
        What::Strategy => match strategy_for(c)?.1 {
            Some(s) => dot::strategy_to_dot(&s),
            None => "digraph strategy {\n  empty [shape=plaintext, label=\"empty\"];\n}\n".to_string(),
        },
    };
    Ok(Report::dot(body, false))
}
