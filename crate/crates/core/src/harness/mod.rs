//! Executable reproductions and randomized property sweeps.
//!
//! Each reproduction is a [`Check`] registered by name in [`checks`]. A check
//! returns a [`CheckReport`] whose `details` carry the evidence: verdicts,
//! traces that were re-validated, and countermodels that were re-evaluated.

mod examples;
mod godel;
mod lemmas;
mod oracles;
mod soundness;
mod thm2;
mod unfaithful;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use examples::check_worked_examples;
pub use godel::check_godel_faithfulness;
pub use lemmas::{check_lemma_suite, lemma_names};
pub use oracles::{check_chain_sentinel, check_oracle_consistency};
pub use soundness::{check_soundness_theorem, sample_provable_sequents, SampleKind};
pub use thm2::check_necessitation_counterexample;
pub use unfaithful::{check_unfaithfulness_fernandez, check_weak_unfaithfulness_inoue};

use crate::prover::{check_trace, prove_ip_with, ProveOptions, Verdict};
use crate::registry::{Named, Registry};
use crate::syntax::{Formula, Logic, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub details: Value,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Names of failed sub-checks, if the details list any.
    pub fn failed_subchecks(&self) -> Vec<String> {
        self.details["subchecks"]
            .as_array()
            .into_iter()
            .flatten()
            .filter(|s| s["pass"] == false)
            .filter_map(|s| s["name"].as_str().map(str::to_string))
            .collect()
    }
}

/// Knobs shared by every check. Defaults match the acceptance bounds.
#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Provable EP sequents drawn by the soundness sweep.
    pub soundness_samples: usize,
    /// Size bound for sampled EP formulas.
    pub max_size: usize,
    /// Instances per lemma schema.
    pub lemma_samples: usize,
    /// Context pool for the F&F translation.
    pub gamma_pool: Vec<Formula>,
    /// Largest chain tried by algebraic refutation.
    pub max_chain: usize,
    pub godel_max_size: usize,
    pub godel_atoms: usize,
    /// Random IP formulas in the oracle cross-check.
    pub oracle_samples: usize,
    /// Random EP formulas whose countermodels are re-checked.
    pub kripke_samples: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 0,
            soundness_samples: 500,
            max_size: 8,
            lemma_samples: 100,
            gamma_pool: default_gamma_pool(),
            max_chain: 4,
            godel_max_size: 7,
            godel_atoms: 2,
            oracle_samples: 10_000,
            kripke_samples: 2_000,
        }
    }
}

/// `q`, `r`, `q -> r` and `_|_ -> _|_`.
pub fn default_gamma_pool() -> Vec<Formula> {
    let q = Formula::atom("q");
    let r = Formula::atom("r");
    vec![
        q.clone(),
        r.clone(),
        Formula::implies(q, r),
        Formula::implies(Formula::Falsum, Formula::Falsum),
    ]
}

/// Nonempty subsets of `pool` with at most `max_len` elements, in
/// lexicographic index order.
pub fn subsets(pool: &[Formula], max_len: usize) -> Vec<Vec<Formula>> {
    fn go(
        pool: &[Formula],
        start: usize,
        max_len: usize,
        cur: &mut Vec<Formula>,
        out: &mut Vec<Vec<Formula>>,
    ) {
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            out.push(cur.clone());
            if cur.len() < max_len {
                go(pool, i + 1, max_len, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, max_len, &mut Vec::new(), &mut out);
    out.sort_by_key(Vec::len);
    out
}

/// A reproduction selectable by name.
pub trait Check: Named + Send + Sync {
    fn run(&self, cfg: &HarnessConfig) -> CheckReport;
}

macro_rules! check {
    ($ty:ident, $name:literal, $summary:literal, |$cfg:ident| $body:expr) => {
        pub struct $ty;

        impl Named for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn summary(&self) -> &'static str {
                $summary
            }
        }

        impl Check for $ty {
            fn run(&self, $cfg: &HarnessConfig) -> CheckReport {
                $body
            }
        }
    };
}

check!(
    Thm2,
    "thm2",
    "necessitation is not admissible under the F&F translation",
    |_cfg| check_necessitation_counterexample()
);
check!(
    Fernandez,
    "fernandez",
    "the F&F translation is not faithful",
    |_cfg| check_unfaithfulness_fernandez()
);
check!(
    Inoue,
    "inoue",
    "p -> []p translates to an IP theorem",
    |cfg| check_weak_unfaithfulness_inoue(&cfg.gamma_pool)
);
check!(
    Lemmas,
    "lemmas",
    "relative-negation lemma schemata",
    |cfg| check_lemma_suite(cfg.lemma_samples, cfg.seed)
);
check!(
    Soundness,
    "soundness",
    "provable EP sequents translate to provable IP sequents",
    |cfg| {
        check_soundness_theorem(
            cfg.soundness_samples,
            cfg.max_size,
            &cfg.gamma_pool,
            cfg.seed,
        )
    }
);
check!(
    Godel,
    "godel",
    "Goedel translation is faithful and stable on small formulas",
    |cfg| check_godel_faithfulness(cfg.godel_max_size, cfg.godel_atoms)
);
check!(
    Examples,
    "examples",
    "worked translation examples simplify to their final forms",
    |_cfg| check_worked_examples()
);
check!(
    Oracles,
    "oracles",
    "prover verdicts agree with algebraic and Kripke countermodels",
    |cfg| {
        check_oracle_consistency(
            cfg.oracle_samples,
            cfg.kripke_samples,
            cfg.max_chain,
            cfg.seed,
        )
    }
);
check!(
    Chains,
    "chains",
    "chains alone cannot refute the linearity formula",
    |cfg| check_chain_sentinel(cfg.max_chain.max(8))
);

/// Every registered check, in reporting order.
pub fn checks() -> Registry<dyn Check> {
    Registry::<dyn Check>::new()
        .with(Box::new(Thm2))
        .with(Box::new(Fernandez))
        .with(Box::new(Inoue))
        .with(Box::new(Lemmas))
        .with(Box::new(Soundness))
        .with(Box::new(Godel))
        .with(Box::new(Examples))
        .with(Box::new(Oracles))
        .with(Box::new(Chains))
}

/// Runs the named checks (all when `names` is empty), sorted by name.
pub fn run_checks(names: &[&str], cfg: &HarnessConfig) -> Result<Vec<CheckReport>, String> {
    let reg = checks();
    let mut chosen: Vec<&dyn Check> = Vec::new();
    if names.is_empty() {
        chosen.extend(reg.iter());
    } else {
        for n in names {
            chosen.push(reg.get(n).ok_or_else(|| format!("unknown check `{n}`"))?);
        }
    }
    let mut reports: Vec<CheckReport> = chosen.iter().map(|c| c.run(cfg)).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}

/// Fixed-width summary table.
pub fn summary_table(reports: &[CheckReport]) -> String {
    let mut out = format!("{:<12} {:<6} {:>10}\n", "check", "status", "ms");
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        out.push_str(&format!(
            "{:<12} {:<6} {:>10}\n",
            r.name, status, r.elapsed_ms
        ));
        for f in r.failed_subchecks() {
            out.push_str(&format!("  failed: {f}\n"));
        }
    }
    out
}

/// Accumulates named sub-checks into a report.
pub(crate) struct Findings {
    name: &'static str,
    seed: u64,
    started: Instant,
    subchecks: Vec<Value>,
    extra: serde_json::Map<String, Value>,
}

impl Findings {
    pub(crate) fn new(name: &'static str, seed: u64) -> Self {
        Findings {
            name,
            seed,
            started: Instant::now(),
            subchecks: Vec::new(),
            extra: serde_json::Map::new(),
        }
    }

    pub(crate) fn record(&mut self, name: impl Into<String>, pass: bool, evidence: Value) {
        self.subchecks
            .push(json!({ "name": name.into(), "pass": pass, "evidence": evidence }));
    }

    pub(crate) fn note(&mut self, key: &str, value: Value) {
        self.extra.insert(key.to_string(), value);
    }

    pub(crate) fn finish(self) -> CheckReport {
        let pass = self.subchecks.iter().all(|s| s["pass"] == true);
        let mut details = self.extra;
        details.insert("subchecks".into(), Value::Array(self.subchecks));
        CheckReport {
            name: self.name.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            seed: self.seed,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
            details: Value::Object(details),
        }
    }
}

/// IP verdict plus whether a Provable verdict came with a valid trace.
pub(crate) struct IpOutcome {
    pub verdict: Verdict,
    pub certified: bool,
    pub nodes: u64,
}

impl IpOutcome {
    /// Provable with a trace accepted by the checker.
    pub fn proved(&self) -> bool {
        self.verdict == Verdict::Provable && self.certified
    }

    pub fn refuted(&self) -> bool {
        self.verdict == Verdict::NotProvable
    }

    pub fn json(&self) -> Value {
        json!({ "verdict": self.verdict, "trace_checked": self.certified, "nodes": self.nodes })
    }
}

pub(crate) fn ip_outcome(assumptions: Vec<Formula>, goal: Formula) -> IpOutcome {
    let s = Sequent {
        assumptions,
        goal,
        logic: Logic::Ip,
    };
    let opts = ProveOptions {
        trace: true,
        node_cap: None,
    };
    match prove_ip_with(&s, &opts) {
        Ok(r) => IpOutcome {
            verdict: r.verdict,
            certified: r.trace.as_ref().is_some_and(|t| check_trace(t, &s).is_ok()),
            nodes: r.stats.nodes_expanded,
        },
        Err(_) => IpOutcome {
            verdict: Verdict::NotProvable,
            certified: false,
            nodes: 0,
        },
    }
}

/// Both directions of `a -||- b`, each with a checked trace.
pub(crate) fn ip_equiv_certified(a: &Formula, b: &Formula) -> bool {
    ip_outcome(vec![a.clone()], b.clone()).proved()
        && ip_outcome(vec![b.clone()], a.clone()).proved()
}

pub(crate) fn text(f: &Formula) -> Value {
    Value::String(f.to_string())
}

pub(crate) fn texts(fs: &[Formula]) -> Value {
    Value::Array(fs.iter().map(text).collect())
}
