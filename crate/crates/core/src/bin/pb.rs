use std::fs;
use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pbprop::axioms::{self, AuditLimits, Axiom, AxiomResult};
use pbprop::model::{self, GeneratorParams, Instance, ProjectSet};
use pbprop::pricing::{self, PriceError, PriceSystem};
use pbprop::rational::Rational;
use pbprop::report;
use pbprop::repro;
use pbprop::rules::{self, GcrGuard, RuleError, RuleKind, TieBreak};
use pbprop::satisfaction::SatisfactionFunction;

const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "pb", version, about = "Participatory budgeting rules, proportionality audits and price systems")]
struct Cli {
    /// Output style for the JSON on stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for audits; more than one turns on parallel search.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Run a voting rule and print the outcome with its trace.
    Run {
        #[arg(long)]
        rule: RuleKind,
        /// cost|card|sqrt|log|cc|share|table:<file>|costmap:<file>
        #[arg(long, default_value = "cost")]
        sat: String,
        #[arg(long, default_value = "lex")]
        tie: TieBreak,
        /// Drop blocked candidates instead of stopping (Phragmén and maximin).
        #[arg(long)]
        skip_blocked: bool,
        /// Instance file (.pb or .json); stdin when absent.
        instance: Option<String>,
    },
    /// Check an outcome against one axiom or all of them.
    Audit {
        #[arg(long, default_value = "all")]
        axiom: String,
        #[arg(long)]
        sat: String,
        instance: String,
        /// JSON list of project ids, a `pb run` document, a file holding
        /// either, or `-` for stdin.
        outcome: String,
    },
    /// Price systems: verify, extract from a trace, or search.
    Price {
        #[command(subcommand)]
        action: PriceAction,
    },
    /// Generate a random instance as JSON.
    Gen(GenArgs),
    /// Re-derive the worked examples; exits 2 if any check fails.
    Repro { case: Option<String> },
}

#[derive(Args, Clone, Copy)]
struct PriceFlags {
    /// Also require C6.
    #[arg(long)]
    c6: bool,
    /// Require B > b.
    #[arg(long)]
    strict_b: bool,
}

#[derive(Subcommand)]
enum PriceAction {
    Verify {
        #[command(flatten)]
        flags: PriceFlags,
        instance: String,
        outcome: String,
        /// Price system JSON `{"B": .., "payments": {voter: {project: ..}}}`.
        prices: String,
    },
    Extract {
        #[command(flatten)]
        flags: PriceFlags,
        instance: String,
        /// A `pb run` document for mes, phragmen or maximin.
        trace: String,
    },
    Find {
        #[command(flatten)]
        flags: PriceFlags,
        instance: String,
        outcome: String,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value = "1")]
    cost_min: Rational,
    #[arg(long, default_value = "5")]
    cost_max: Rational,
    /// Costs are drawn from multiples of 1/denominator.
    #[arg(long, default_value_t = 2)]
    cost_denominator: u32,
    /// Fixed budget; by default drawn from [m/2, 2m].
    #[arg(long)]
    budget: Option<Rational>,
}

enum Failure {
    Input(String),
    Guard(String),
    Violation,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, value: &Value) {
        let text = match self.format {
            Format::Json => serde_json::to_string(value),
            Format::Pretty => serde_json::to_string_pretty(value),
        };
        println!("{}", text.expect("JSON values serialize"));
    }
}

fn read_source(source: Option<&str>) -> Result<(String, Option<String>), Failure> {
    match source {
        None | Some("-") => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok((text, None))
        }
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            Ok((text, Some(path.to_string())))
        }
    }
}

fn load_instance(source: Option<&str>) -> Result<Instance, Failure> {
    let (text, path) = read_source(source)?;
    let ext = path.as_deref().and_then(|p| Path::new(p).extension()).and_then(|e| e.to_str());
    let json = match ext {
        Some("json") => true,
        Some("pb") => false,
        _ => text.trim_start().starts_with('{'),
    };
    if json {
        Ok(model::parse_json(&text)?)
    } else {
        Ok(model::parse_pabulib(&text)?)
    }
}

/// Inline JSON, a file with JSON, or `-` for stdin.
fn load_json(arg: &str) -> Result<Value, Failure> {
    let trimmed = arg.trim_start();
    let text =
        if trimmed.starts_with('[') || trimmed.starts_with('{') { arg.to_string() } else { read_source(Some(arg))?.0 };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn load_outcome(inst: &Instance, arg: &str) -> Result<ProjectSet, Failure> {
    let value = load_json(arg)?;
    let list = match &value {
        Value::Object(doc) => {
            doc.get("outcome").cloned().ok_or_else(|| Failure::Input("document has no `outcome`".into()))?
        }
        other => other.clone(),
    };
    let names: Vec<String> = serde_json::from_value(list)
        .map_err(|e| Failure::Input(format!("outcome must be a list of project ids: {e}")))?;
    Ok(inst.resolve(&names)?)
}

fn load_sat(inst: &Instance, selector: &str) -> Result<SatisfactionFunction, Failure> {
    let file = |path: &str| fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")));
    Ok(match selector {
        "cost" => SatisfactionFunction::cost(inst),
        "card" => SatisfactionFunction::cardinality(inst),
        "sqrt" => SatisfactionFunction::sqrt_cost(inst),
        "log" => SatisfactionFunction::log_cost(inst),
        "cc" => SatisfactionFunction::cc(inst),
        "share" => SatisfactionFunction::share(inst),
        s => {
            if let Some(path) = s.strip_prefix("table:") {
                SatisfactionFunction::table_from_json(inst, &file(path)?)?
            } else if let Some(path) = s.strip_prefix("costmap:") {
                SatisfactionFunction::cost_map_from_json(inst, &file(path)?)?
            } else {
                return Err(Failure::Input(format!(
                    "unknown satisfaction `{s}` (expected cost, card, sqrt, log, cc, share, table:<file> or costmap:<file>)"
                )));
            }
        }
    })
}

fn rule_failure(e: RuleError) -> Failure {
    match e {
        RuleError::TooLarge { .. } => Failure::Guard(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn cmd_run(
    out: &Out,
    rule: RuleKind,
    sat: &str,
    tie: &TieBreak,
    skip_blocked: bool,
    instance: Option<&str>,
) -> CmdResult {
    let inst = load_instance(instance)?;
    let run = match rule {
        RuleKind::Mes => rules::run_mes(&inst, &load_sat(&inst, sat)?, tie).map_err(rule_failure)?,
        RuleKind::Phragmen => rules::run_seq_phragmen(&inst, tie, skip_blocked),
        RuleKind::Maximin => rules::run_maximin_support(&inst, tie, skip_blocked).map_err(rule_failure)?,
        RuleKind::Gcr => {
            rules::run_gcr(&inst, &load_sat(&inst, sat)?, tie, GcrGuard::default()).map_err(rule_failure)?
        }
    };
    eprintln!(
        "{}: {} project(s), cost {} of {}{}",
        rule,
        run.outcome.len(),
        inst.total_cost(&run.outcome)?,
        inst.budget(),
        if run.trace.exhaustive { "" } else { " (not exhaustive)" }
    );
    out.emit(&report::outcome_json(&inst, &run));
    Ok(())
}

fn cmd_audit(out: &Out, axiom: &str, sat: &str, instance: &str, outcome: &str, jobs: usize) -> CmdResult {
    let inst = load_instance(Some(instance))?;
    let mu = load_sat(&inst, sat)?;
    let w = load_outcome(&inst, outcome)?;
    let parallel = jobs > 1;
    if axiom == "all" {
        let audit = axioms::audit_all(&inst, &mu, &w, AuditLimits::default(), parallel)?;
        for (a, r) in &audit.results {
            let status = match r {
                AxiomResult::Pass => "pass",
                AxiomResult::Fail { .. } => "FAIL",
                AxiomResult::Guard { .. } => "guard",
            };
            eprintln!("{:<10} {status}", a.name());
        }
        out.emit(&report::audit_json(&inst, &mu, &w, &audit));
        if audit.any_guard() {
            return Err(Failure::Guard("enumeration limit exceeded".into()));
        }
        return if audit.violations().next().is_some() { Err(Failure::Violation) } else { Ok(()) };
    }
    let axiom: Axiom = axiom.parse().map_err(Failure::Input)?;
    let auditor = match axioms::Auditor::new(&inst, &mu, &w) {
        Ok(a) => a.parallel(parallel),
        Err(e @ axioms::AuditError::TooLarge { .. }) => return Err(Failure::Guard(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    match auditor.check(axiom) {
        None => {
            eprintln!("{axiom}: pass");
            out.emit(&json!({"axiom": axiom.name(), "satisfaction": mu.kind().name(), "status": "pass"}));
            Ok(())
        }
        Some(v) => {
            eprintln!("{axiom}: violated");
            out.emit(&json!({
                "axiom": axiom.name(),
                "satisfaction": mu.kind().name(),
                "status": "fail",
                "violation": report::violation_json(&inst, &v),
            }));
            Err(Failure::Violation)
        }
    }
}

fn price_failure(e: PriceError) -> Failure {
    match e {
        PriceError::TooLarge { .. } => Failure::Guard(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn emit_checked(out: &Out, inst: &Instance, w: &ProjectSet, ps: &PriceSystem, flags: PriceFlags) -> CmdResult {
    let verdict = pricing::verify_price_system(inst, w, ps, flags.c6).map_err(price_failure)?;
    let ok = verdict.passes(flags.c6, flags.strict_b);
    if let Some((cond, w)) = verdict.first_failure() {
        eprintln!("{cond} fails: {} > {}", w.lhs, w.rhs);
    } else if flags.strict_b && !verdict.b_strict {
        eprintln!("B = {} does not exceed b = {}", ps.budget, inst.budget());
    } else {
        eprintln!("price system ok, B = {}", ps.budget);
    }
    out.emit(&json!({
        "outcome": inst.ids_of(w),
        "price_system": ps.to_json(inst),
        "report": report::price_report_json(inst, &verdict),
        "passes": ok,
    }));
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn cmd_price(out: &Out, action: PriceAction) -> CmdResult {
    match action {
        PriceAction::Verify { flags, instance, outcome, prices } => {
            let inst = load_instance(Some(&instance))?;
            let w = load_outcome(&inst, &outcome)?;
            let ps = PriceSystem::from_json(&inst, &load_json(&prices)?).map_err(price_failure)?;
            emit_checked(out, &inst, &w, &ps, flags)
        }
        PriceAction::Extract { flags, instance, trace } => {
            let inst = load_instance(Some(&instance))?;
            let trace = report::trace_from_json(&inst, &load_json(&trace)?).map_err(Failure::Input)?;
            let ps = pricing::extract(&inst, &trace).map_err(price_failure)?;
            emit_checked(out, &inst, &trace.outcome(), &ps, flags)
        }
        PriceAction::Find { flags, instance, outcome } => {
            let inst = load_instance(Some(&instance))?;
            let w = load_outcome(&inst, &outcome)?;
            match pricing::find_price_system(&inst, &w, flags.c6, flags.strict_b).map_err(price_failure)? {
                Some(ps) => emit_checked(out, &inst, &w, &ps, flags),
                None => {
                    eprintln!("no price system with the requested conditions");
                    out.emit(&json!({"outcome": inst.ids_of(&w), "price_system": null, "passes": false}));
                    Err(Failure::Violation)
                }
            }
        }
    }
}

fn cmd_gen(out: &Out, args: GenArgs) -> CmdResult {
    let mut params = GeneratorParams::small(args.n, args.m);
    params.approval_density = args.density;
    params.cost_min = args.cost_min;
    params.cost_max = args.cost_max;
    params.cost_denominator = args.cost_denominator;
    if let Some(b) = args.budget {
        params.budget = model::BudgetRule::Fixed(b);
    }
    let inst = model::generate_random(&params, args.seed)?;
    let doc: Value = serde_json::from_str(&model::emit_json(&inst)).expect("emitted JSON parses");
    out.emit(&doc);
    Ok(())
}

fn cmd_repro(out: &Out, case: Option<&str>) -> CmdResult {
    let reports = repro::run(case)?;
    let mut failed = false;
    for r in &reports {
        eprintln!("{} {}", if r.passed() { "pass" } else { "FAIL" }, r.id);
        for c in r.checks.iter().filter(|c| !c.passed) {
            eprintln!("    [{}] {}: observed {}", c.origin, c.description, c.observed);
        }
        failed |= !r.passed();
    }
    out.emit(&serde_json::to_value(&reports).expect("reports serialize"));
    if failed {
        Err(Failure::Violation)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 1 {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let out = Out { format: cli.format };
    let result = match cli.command {
        Command::Run { rule, sat, tie, skip_blocked, instance } => {
            cmd_run(&out, rule, &sat, &tie, skip_blocked, instance.as_deref())
        }
        Command::Audit { axiom, sat, instance, outcome } => {
            cmd_audit(&out, &axiom, &sat, &instance, &outcome, cli.jobs)
        }
        Command::Price { action } => cmd_price(&out, action),
        Command::Gen(args) => cmd_gen(&out, args),
        Command::Repro { case } => cmd_repro(&out, case.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(EXIT_VIOLATION),
        Err(Failure::Guard(msg)) => {
            eprintln!("pb: {msg}");
            ExitCode::from(EXIT_GUARD)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("pb: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
