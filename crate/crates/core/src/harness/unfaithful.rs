use serde_json::json;

use super::{ip_outcome, subsets, texts, CheckReport, Findings};
use crate::algebra::refute;
use crate::prover::{check_kripke, prove_ep, Verdict};
use crate::syntax::{Formula, Logic, Sequent};
use crate::translate::{ff_translate, TranslationContext};

fn ep_refutation(goal: Formula) -> (bool, serde_json::Value, usize) {
    let s = Sequent {
        assumptions: vec![],
        goal,
        logic: Logic::Ep,
    };
    match prove_ep(&s) {
        Ok(r) if r.verdict == Verdict::NotProvable => {
            let m = r.witness.expect("NotProvable carries a witness");
            let ok = check_kripke(&m, &s) == Ok(true);
            let worlds = m.worlds.len();
            (
                ok,
                json!({ "verdict": r.verdict, "countermodel": m, "checked": ok }),
                worlds,
            )
        }
        Ok(r) => (false, json!({ "verdict": r.verdict }), 0),
        Err(e) => (false, json!({ "error": e.to_string() }), 0),
    }
}

/// With `E = _|_ -> _|_`, `p^(E)` is an IP theorem while `p` is not an EP
/// theorem.
pub fn check_unfaithfulness_fernandez() -> CheckReport {
    let mut findings = Findings::new("fernandez", 0);
    let p = Formula::atom("p");
    let top = Formula::verum();

    for (tag, gamma) in [
        ("gamma_E", vec![top.clone()]),
        ("gamma_E_q", vec![top.clone(), Formula::atom("q")]),
    ] {
        let ctx = TranslationContext::with_witness(gamma, &top).expect("valid context");
        let t = ff_translate(&p, &ctx);
        let shape = t == Formula::implies(Formula::implies(p.clone(), top.clone()), top.clone());
        let out = ip_outcome(vec![], t.clone());
        findings.record(
            format!("{tag}/translation_is_theorem"),
            shape && out.proved(),
            json!({ "gamma": texts(ctx.gamma()), "formula": t.to_string(), "outcome": out.json() }),
        );
    }

    let (ok, evidence, _) = ep_refutation(p.clone());
    findings.record("p_not_ep_theorem", ok, evidence);

    let ctx = TranslationContext::singleton(Formula::Falsum).expect("valid context");
    let t = ff_translate(&p, &ctx);
    let out = ip_outcome(vec![], t.clone());
    let cm = refute(&t, 3, false).ok().flatten();
    findings.record(
        "falsum_witness_not_theorem",
        t == Formula::neg(Formula::neg(p.clone()))
            && out.refuted()
            && cm.as_ref().is_some_and(|c| c.recheck()),
        json!({
            "formula": t.to_string(),
            "outcome": out.json(),
            "countermodel": cm.map(|c| serde_json::to_value(c).unwrap_or_default()),
        }),
    );
    findings.finish()
}

/// `p -> []p` translates to an IP theorem for every context drawn from
/// `pool` (one to three members) and every witness, yet is not an EP theorem.
/// The pool stands in for arbitrary contexts, which cannot be enumerated.
pub fn check_weak_unfaithfulness_inoue(pool: &[Formula]) -> CheckReport {
    let mut findings = Findings::new("inoue", 0);
    let p = Formula::atom("p");
    let a = Formula::implies(p.clone(), Formula::boxed(p));

    let mut tried = 0usize;
    let mut failures = Vec::new();
    for gamma in subsets(pool, 3) {
        for ctx in TranslationContext::all_witnesses(gamma)
            .into_iter()
            .flatten()
        {
            tried += 1;
            let t = ff_translate(&a, &ctx);
            let out = ip_outcome(vec![], t.clone());
            if !out.proved() {
                failures.push(json!({
                    "gamma": texts(ctx.gamma()),
                    "witness": ctx.witness().to_string(),
                    "formula": t.to_string(),
                    "outcome": out.json(),
                }));
            }
        }
    }
    findings.note(
        "scope",
        json!("contexts drawn from the configured pool only"),
    );
    findings.record(
        "translation_is_theorem_for_every_context",
        tried > 0 && failures.is_empty(),
        json!({ "pool": texts(pool), "contexts": tried, "failures": failures }),
    );

    let (ok, evidence, worlds) = ep_refutation(a);
    findings.record("not_ep_theorem_two_worlds", ok && worlds == 2, evidence);
    findings.finish()
}
