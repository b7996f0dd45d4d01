use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use epist2int::algebra::{evaluate, make_chain, refute, Valuation};
use epist2int::harness::{checks, run_checks, summary_table, HarnessConfig};
use epist2int::prover::{provers, Decision, ProveOptions, TraceNode, Verdict};
use epist2int::syntax::{parse, parse_sequent, Formula, Logic};
use epist2int::translate::{translations, TranslationContext};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "epist2int",
    version,
    about = "Translations between IP and S4, with provers and countermodels"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,
    /// Largest chain tried by algebraic refutation.
    #[arg(long, global = true, env = "EPIST2INT_MAX_CHAIN", default_value_t = 4,
          value_parser = clap::value_parser!(u64).range(2..))]
    max_chain: u64,
    /// Abort proof search after this many expanded nodes.
    #[arg(long, global = true, env = "EPIST2INT_NODE_CAP",
          value_parser = clap::value_parser!(u64).range(1..))]
    node_cap: Option<u64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "EPIST2INT_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogicArg {
    Ip,
    Ep,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Logic {
        match l {
            LogicArg::Ip => Logic::Ip,
            LogicArg::Ep => Logic::Ep,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Godel,
    Ff,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical form.
    Parse {
        formula: String,
        #[arg(long, value_enum, default_value_t = LogicArg::Ep)]
        logic: LogicArg,
    },
    /// Apply the Goedel or the F&F translation.
    Translate {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Comma-separated IP formulas forming the context (ff only).
        #[arg(long)]
        gamma: Option<String>,
        /// Member of the context used as witness (ff only).
        #[arg(long)]
        witness: Option<String>,
        /// Simplify the result with the relative-negation rewrites.
        #[arg(long)]
        simplify: bool,
        formula: String,
    },
    /// Decide a sequent `A1, A2 |- B`.
    Prove {
        #[arg(long, value_enum)]
        logic: LogicArg,
        /// Include the derivation for provable IP sequents.
        #[arg(long)]
        trace: bool,
        sequent: String,
    },
    /// Evaluate an IP formula in a finite chain.
    Eval {
        #[arg(long)]
        chain: usize,
        /// `atom=index`; repeat or separate with commas.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
        formula: String,
    },
    /// Search chains (and optionally small lattices) for a countermodel.
    Refute {
        #[arg(long)]
        lattices: bool,
        formula: String,
    },
    /// Run a reproduction check, or `all`.
    Paper { target: String },
    /// List registered provers, translations and checks.
    List,
}

/// Failure that maps to exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Done {
    human: String,
    json: Value,
    code: u8,
}

fn done(human: String, json: Value, code: u8) -> Result<Done, Failure> {
    Ok(Done { human, json, code })
}

fn context(gamma: Option<&str>, witness: Option<&str>) -> Result<TranslationContext, Failure> {
    let (Some(gamma), Some(witness)) = (gamma, witness) else {
        return Err(Failure("ff mode needs --gamma and --witness".into()));
    };
    let members = gamma
        .split(',')
        .map(|g| parse(g.trim(), Logic::Ip))
        .collect::<Result<Vec<_>, _>>()?;
    let witness = parse(witness.trim(), Logic::Ip)?;
    Ok(TranslationContext::with_witness(members, &witness)?)
}

fn assignments(raw: &[String]) -> Result<Valuation, Failure> {
    let mut v = Valuation::new();
    for item in raw.iter().filter(|s| !s.trim().is_empty()) {
        let (atom, value) = item
            .split_once('=')
            .ok_or_else(|| Failure(format!("expected atom=index, got `{item}`")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| Failure(format!("`{value}` is not a carrier index")))?;
        v.insert(atom.trim().to_string(), value);
    }
    Ok(v)
}

fn render_trace(node: &TraceNode, depth: usize, out: &mut String) {
    let c = &node.conclusion;
    let hyps: Vec<String> = c.assumptions.iter().map(Formula::to_string).collect();
    out.push_str(&format!(
        "{}{:?}: {}|- {}\n",
        "  ".repeat(depth),
        node.rule,
        if hyps.is_empty() {
            String::new()
        } else {
            hyps.join(", ") + " "
        },
        c.goal
    ));
    for p in &node.premises {
        render_trace(p, depth + 1, out);
    }
}

fn render_decision(d: &Decision) -> String {
    let mut out = format!(
        "{:?}  ({} nodes, depth {})\n",
        d.verdict, d.stats.nodes_expanded, d.stats.max_depth
    );
    if let Some(t) = &d.trace {
        render_trace(t, 0, &mut out);
    }
    if let Some(m) = &d.countermodel {
        out.push_str(&format!("countermodel, root {}\n", m.root));
        for w in &m.worlds {
            let succ: Vec<String> = m
                .relation
                .iter()
                .filter(|[a, _]| a == w)
                .map(|[_, b]| b.to_string())
                .collect();
            let true_atoms: Vec<&str> = m
                .valuation
                .iter()
                .filter(|(_, ws)| ws.contains(w))
                .map(|(a, _)| a.as_str())
                .collect();
            out.push_str(&format!(
                "  world {w}: sees {{{}}}, true {{{}}}\n",
                succ.join(", "),
                true_atoms.join(", ")
            ));
        }
    }
    out
}

fn run(cmd: Command, cfg: &Config) -> Result<Done, Failure> {
    match cmd {
        Command::Parse { formula, logic } => {
            let f = parse(&formula, logic.into())?;
            done(
                f.to_string(),
                json!({ "formula": f.to_string(), "tree": f }),
                0,
            )
        }
        Command::Translate {
            mode,
            gamma,
            witness,
            simplify,
            formula,
        } => {
            let reg = translations();
            let (t, ctx) = match mode {
                Mode::Godel => (reg.get("godel"), None),
                Mode::Ff => (
                    reg.get("ff"),
                    Some(context(gamma.as_deref(), witness.as_deref())?),
                ),
            };
            let t = t.expect("built-in translation");
            let f = parse(&formula, t.source())?;
            let raw = t.translate(&f, ctx.as_ref())?;
            let simplified = t.simplify(&raw, ctx.as_ref());
            let shown = if simplify { &simplified } else { &raw };
            done(
                shown.to_string(),
                json!({
                    "mode": t.name(),
                    "input": f.to_string(),
                    "context": ctx,
                    "raw": raw.to_string(),
                    "simplified": simplified.to_string(),
                    "result": shown.to_string(),
                }),
                0,
            )
        }
        Command::Prove {
            logic,
            trace,
            sequent,
        } => {
            let logic: Logic = logic.into();
            let s = parse_sequent(&sequent, logic)?;
            let reg = provers();
            let p = reg
                .iter()
                .find(|p| p.logic() == logic)
                .expect("built-in prover");
            let opts = ProveOptions {
                trace,
                node_cap: cfg.node_cap,
            };
            let d = p.decide(&s, &opts)?;
            let code = u8::from(d.verdict != Verdict::Provable);
            done(render_decision(&d), serde_json::to_value(&d)?, code)
        }
        Command::Eval {
            chain,
            assign,
            formula,
        } => {
            let h = make_chain(chain)?;
            let f = parse(&formula, Logic::Ip)?;
            let v = assignments(&assign)?;
            let value = evaluate(&f, &v, &h)?;
            let is_top = value == h.top();
            done(
                format!("{value}{}", if is_top { " (top)" } else { " (not top)" }),
                json!({ "formula": f.to_string(), "chain": chain, "valuation": v,
                        "value": value, "top": h.top(), "is_top": is_top }),
                0,
            )
        }
        Command::Refute { lattices, formula } => {
            let f = parse(&formula, Logic::Ip)?;
            let found = refute(&f, cfg.max_chain as usize, lattices)?;
            let human = match &found {
                Some(cm) => format!(
                    "refuted in a {}-element {} with {:?}: value {} (top {})",
                    cm.carrier_size,
                    if cm.algebra.is_chain() {
                        "chain"
                    } else {
                        "algebra"
                    },
                    cm.valuation,
                    cm.value,
                    cm.top
                ),
                None => "no countermodel found".to_string(),
            };
            let code = u8::from(found.is_none());
            done(
                human,
                json!({ "formula": f.to_string(), "countermodel": found }),
                code,
            )
        }
        Command::Paper { target } => {
            let hc = HarnessConfig {
                seed: cfg.seed,
                max_chain: cfg.max_chain as usize,
                ..HarnessConfig::default()
            };
            let names: Vec<&str> = if target == "all" {
                vec![]
            } else {
                vec![target.as_str()]
            };
            let reports = run_checks(&names, &hc).map_err(Failure)?;
            let pass = reports.iter().all(|r| r.passed());
            let mut human = summary_table(&reports);
            if reports.len() == 1 {
                if let Some(subs) = reports[0].details["subchecks"].as_array() {
                    for s in subs {
                        let mark = if s["pass"] == true { "pass" } else { "FAIL" };
                        human.push_str(&format!("  {mark} {}\n", s["name"].as_str().unwrap_or("")));
                    }
                }
            }
            let lines: Vec<Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).unwrap_or(Value::Null))
                .collect();
            done(
                human.trim_end().to_string(),
                Value::Array(lines),
                u8::from(!pass),
            )
        }
        Command::List => {
            let entries = |kind: &str, items: Vec<(&str, &str)>| -> Vec<Value> {
                items
                    .into_iter()
                    .map(|(n, s)| json!({ "kind": kind, "name": n, "summary": s }))
                    .collect()
            };
            let mut all = entries(
                "prover",
                provers().iter().map(|p| (p.name(), p.summary())).collect(),
            );
            all.extend(entries(
                "translation",
                translations()
                    .iter()
                    .map(|t| (t.name(), t.summary()))
                    .collect(),
            ));
            all.extend(entries(
                "check",
                checks().iter().map(|c| (c.name(), c.summary())).collect(),
            ));
            let human = all
                .iter()
                .map(|e| {
                    format!(
                        "{:<12} {:<10} {}",
                        e["kind"].as_str().unwrap_or(""),
                        e["name"].as_str().unwrap_or(""),
                        e["summary"].as_str().unwrap_or("")
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            done(human, Value::Array(all), 0)
        }
    }
}

fn with_schema(v: Value) -> Value {
    match v {
        Value::Object(mut m) => {
            m.insert("schema".into(), json!(SCHEMA));
            Value::Object(m)
        }
        other => json!({ "schema": SCHEMA, "result": other }),
    }
}

fn wants_json(args: &[String]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--output" && w[1] == "json")
        || args.iter().any(|a| a == "--output=json")
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion)
                || !wants_json(&args)
            {
                e.exit();
            }
            println!("{}", with_schema(json!({ "error": e.kind().to_string() })));
            return ExitCode::from(2);
        }
    };
    let is_paper = matches!(cli.command, Command::Paper { .. });
    let json_mode = cli.config.output == Output::Json;
    match run(cli.command, &cli.config) {
        Ok(d) => {
            if !json_mode {
                println!("{}", d.human.trim_end());
            } else if is_paper {
                // One report per line.
                for r in d.json.as_array().into_iter().flatten() {
                    println!("{}", with_schema(r.clone()));
                }
            } else {
                println!("{}", with_schema(d.json));
            }
            ExitCode::from(d.code)
        }
        Err(Failure(msg)) => {
            if json_mode {
                println!("{}", with_schema(json!({ "error": msg })));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
