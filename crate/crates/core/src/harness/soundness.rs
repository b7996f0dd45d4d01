use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use super::{ip_outcome, subsets, texts, CheckReport, Findings};
use crate::prover::ep_provable;
use crate::syntax::{parse_sequent, Formula, FormulaGen, Logic, Sequent};
use crate::translate::{ff_translate, TranslationContext};

const ATOMS: [&str; 3] = ["p", "q", "r"];
const MAX_TRIES: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    /// Hand-picked sequents listed first in every sample.
    Fixed,
    /// `|- A` for a random theorem `A`.
    Theorem,
    /// `|- []A` for a random theorem `A`.
    Necessitated,
    /// A theorem weakened with boxed assumptions.
    BoxWeakened,
    /// Boxed assumptions and a boxed goal, the shape closed by necessitation.
    BoxedSequent,
    /// Any provable sequent found by rejection.
    Random,
}

const ROTATION: [SampleKind; 5] = [
    SampleKind::Theorem,
    SampleKind::BoxedSequent,
    SampleKind::Necessitated,
    SampleKind::BoxWeakened,
    SampleKind::Random,
];

fn ep(assumptions: Vec<Formula>, goal: Formula) -> Sequent {
    Sequent {
        assumptions,
        goal,
        logic: Logic::Ep,
    }
}

struct Sampler {
    gen: FormulaGen,
    max_size: usize,
}

impl Sampler {
    fn formula(&mut self, max: usize) -> Formula {
        loop {
            let f = self.gen.next_formula();
            if f.size() <= max {
                return f;
            }
        }
    }

    fn theorem(&mut self, max: usize) -> Option<Formula> {
        (0..MAX_TRIES)
            .map(|_| self.formula(max))
            .find(|f| ep_provable(&[], f))
    }

    fn boxed(&mut self) -> Formula {
        let inner = self.formula(self.max_size - 1);
        Formula::boxed(inner)
    }

    fn boxed_assumptions(&mut self) -> Vec<Formula> {
        let k = self.gen.rng().gen_range(1..=2);
        (0..k).map(|_| self.boxed()).collect()
    }

    fn draw(&mut self, kind: SampleKind) -> Option<Sequent> {
        let m = self.max_size;
        match kind {
            SampleKind::Fixed => None,
            SampleKind::Theorem => self.theorem(m).map(|t| ep(vec![], t)),
            SampleKind::Necessitated => self.theorem(m - 1).map(|t| ep(vec![], Formula::boxed(t))),
            SampleKind::BoxWeakened => {
                let t = self.theorem(m)?;
                Some(ep(self.boxed_assumptions(), t))
            }
            SampleKind::BoxedSequent => (0..MAX_TRIES).find_map(|_| {
                let hyps = self.boxed_assumptions();
                let goal = self.boxed();
                ep_provable(&hyps, &goal).then(|| ep(hyps, goal))
            }),
            SampleKind::Random => (0..MAX_TRIES).find_map(|_| {
                let k = self.gen.rng().gen_range(0..=2);
                let hyps: Vec<Formula> = (0..k).map(|_| self.formula(m)).collect();
                let goal = self.formula(m);
                ep_provable(&hyps, &goal).then(|| ep(hyps, goal))
            }),
        }
    }
}

fn fixed_samples() -> Vec<Sequent> {
    ["|- []p -> p", "[]p |- [][]p", "|- p \\/ ~p"]
        .iter()
        .map(|s| parse_sequent(s, Logic::Ep).expect("fixed sample parses"))
        .collect()
}

/// `n` distinct EP sequents that the S4 prover accepts, with formulas of at
/// most `max_size` nodes over `p, q, r`. Deterministic in `seed`.
pub fn sample_provable_sequents(
    n: usize,
    max_size: usize,
    seed: u64,
) -> Vec<(SampleKind, Sequent)> {
    let max_size = max_size.max(2);
    let mut sampler = Sampler {
        gen: FormulaGen::new(seed, &ATOMS, Logic::Ep)
            .max_depth(max_size)
            .max_size(max_size),
        max_size,
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in fixed_samples().into_iter().take(n) {
        seen.insert(s.clone());
        out.push((SampleKind::Fixed, s));
    }
    let mut misses = 0;
    let mut turn = 0;
    while out.len() < n && misses < 50 * n + 100 {
        let kind = ROTATION[turn % ROTATION.len()];
        turn += 1;
        match sampler.draw(kind) {
            Some(s) if seen.insert(s.clone()) => out.push((kind, s)),
            _ => misses += 1,
        }
    }
    out
}

/// For each sampled provable EP sequent, each nonempty `Gamma` drawn from
/// `gamma_pool` with at most two members and each witness in `Gamma`, the
/// translated sequent must be IP-provable with a checked trace.
pub fn check_soundness_theorem(
    sample: usize,
    max_size: usize,
    gamma_pool: &[Formula],
    seed: u64,
) -> CheckReport {
    let mut findings = Findings::new("soundness", seed);
    let samples = sample_provable_sequents(sample.max(1), max_size, seed);
    let contexts: Vec<TranslationContext> = subsets(gamma_pool, 2)
        .into_iter()
        .filter_map(|g| TranslationContext::all_witnesses(g).ok())
        .flatten()
        .collect();

    let mut kinds = std::collections::BTreeMap::new();
    let mut checked = 0usize;
    let mut traces = 0usize;
    let mut max_nodes = 0u64;
    let mut violations = Vec::new();
    for (kind, s) in &samples {
        let key = serde_json::to_value(kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string));
        *kinds.entry(key.unwrap_or_default()).or_insert(0usize) += 1;
        for ctx in &contexts {
            let hyps: Vec<Formula> = s.assumptions.iter().map(|a| ff_translate(a, ctx)).collect();
            let goal = ff_translate(&s.goal, ctx);
            let out = ip_outcome(hyps.clone(), goal.clone());
            checked += 1;
            traces += usize::from(out.certified);
            max_nodes = max_nodes.max(out.nodes);
            if !out.proved() {
                violations.push(json!({
                    "sequent": s.to_string(),
                    "gamma": texts(ctx.gamma()),
                    "witness": ctx.witness().to_string(),
                    "translated_assumptions": texts(&hyps),
                    "translated_goal": goal.to_string(),
                    "outcome": out.json(),
                }));
            }
        }
    }

    findings.note("samples", json!(samples.len()));
    findings.note("samples_by_kind", json!(kinds));
    findings.note("contexts", json!(contexts.len()));
    findings.note("translated_sequents", json!(checked));
    findings.note("traces_checked", json!(traces));
    findings.note("max_nodes", json!(max_nodes));
    findings.record(
        "enough_samples",
        samples.len() >= sample,
        json!({ "wanted": sample, "drawn": samples.len() }),
    );
    findings.record(
        "all_translations_provable",
        violations.is_empty(),
        json!({ "violations": violations.len(), "first": violations.iter().take(10).collect::<Vec<_>>() }),
    );
    findings.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic_and_sound() {
        let a = sample_provable_sequents(20, 6, 11);
        let b = sample_provable_sequents(20, 6, 11);
        assert_eq!(a.len(), 20);
        assert_eq!(
            a.iter().map(|x| x.1.clone()).collect::<Vec<_>>(),
            b.iter().map(|x| x.1.clone()).collect::<Vec<_>>()
        );
        for (_, s) in &a {
            assert!(ep_provable(&s.assumptions, &s.goal), "{s}");
            assert!(s.assumptions.iter().chain([&s.goal]).all(|f| f.size() <= 6));
        }
        assert!(a.iter().any(|(k, _)| *k == SampleKind::BoxedSequent));
    }

    #[test]
    fn small_sweep_passes() {
        let r = check_soundness_theorem(15, 6, &super::super::default_gamma_pool(), 5);
        assert!(r.passed(), "{}", r.details);
    }
}
