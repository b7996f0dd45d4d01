//! Necessitation counterexample: `A = E -> B` translates to an IP theorem
//! relative to `Gamma = [C, E]` and witness `E`, but `[]A` does not.

use serde_json::{json, Value};

use super::{ip_outcome, CheckReport, Findings};
use crate::algebra::{evaluate, make_chain, nested_rpc_left, nested_rpc_right, refute, Valuation};
use crate::syntax::Formula;
use crate::translate::{double_rel_neg, ff_translate, TranslationContext};

fn countermodel_json(f: &Formula, max_chain: usize) -> Option<(Value, bool)> {
    let cm = refute(f, max_chain, false).ok()??;
    let ok = cm.recheck();
    Some((serde_json::to_value(&cm).unwrap_or(Value::Null), ok))
}

fn instance(findings: &mut Findings, tag: &str, b: Formula) {
    let c = Formula::atom("C");
    let e = Formula::atom("E");
    let a = Formula::implies(e.clone(), b.clone());
    let ctx_e = TranslationContext::with_witness(vec![c.clone(), e.clone()], &e)
        .expect("distinct atoms form a valid context");
    let ctx_c = ctx_e.rewitness(0);

    let a_e = ff_translate(&a, &ctx_e);
    let out = ip_outcome(vec![], a_e.clone());
    findings.record(
        format!("{tag}/translation_of_A_is_theorem"),
        out.proved(),
        json!({ "formula": a_e.to_string(), "outcome": out.json() }),
    );

    let box_a_e = ff_translate(&Formula::boxed(a.clone()), &ctx_e);
    let out = ip_outcome(vec![], box_a_e.clone());
    let direct = countermodel_json(&box_a_e, 3);
    findings.record(
        format!("{tag}/translation_of_box_A_not_theorem"),
        out.refuted() && direct.as_ref().is_some_and(|d| d.1),
        json!({
            "formula": box_a_e.to_string(),
            "outcome": out.json(),
            "countermodel": direct.map(|d| d.0),
        }),
    );

    let a_c = ff_translate(&a, &ctx_c);
    let target = double_rel_neg(a_c, e.clone());
    let chain3 = make_chain(3).expect("3-chain");
    let mut golden = Valuation::from([("C".to_string(), 0), ("E".to_string(), 1)]);
    if matches!(b, Formula::Atom(_)) {
        golden.insert("B".to_string(), 0);
    }
    let value = evaluate(&target, &golden, &chain3);
    let found = refute(&target, 3, false).ok().flatten();
    let out = ip_outcome(vec![], target.clone());
    findings.record(
        format!("{tag}/chain_countermodel"),
        value == Ok(1)
            && out.refuted()
            && found
                .as_ref()
                .is_some_and(|cm| cm.recheck() && cm.carrier_size == 3 && cm.valuation == golden),
        json!({
            "formula": target.to_string(),
            "valuation": golden,
            "value": value.ok(),
            "top": chain3.top(),
            "first_found": found.as_ref().map(|cm| serde_json::to_value(cm).unwrap_or(Value::Null)),
            "ip": out.json(),
        }),
    );
    let box_value = evaluate(&box_a_e, &golden, &chain3);
    findings.record(
        format!("{tag}/same_valuation_refutes_box_A"),
        box_value.as_ref().is_ok_and(|&v| v != chain3.top()),
        json!({ "value": box_value.ok() }),
    );

    let out = ip_outcome(vec![box_a_e.clone()], target.clone());
    findings.record(
        format!("{tag}/reduction_step"),
        out.proved(),
        json!({ "assumption": box_a_e.to_string(), "goal": target.to_string(), "outcome": out.json() }),
    );

    let swapped = ip_outcome(vec![], ff_translate(&Formula::boxed(a), &ctx_c));
    findings.note(&format!("{tag}/witness_C_informational"), swapped.json());
}

/// Checks the counterexample with `B` an atom and with `B = _|_`, and the
/// closed form of the nested arrows on every chain of size 4 to 8.
pub fn check_necessitation_counterexample() -> CheckReport {
    let mut findings = Findings::new("thm2", 0);
    instance(&mut findings, "atomic_B", Formula::atom("B"));
    instance(&mut findings, "falsum_B", Formula::Falsum);

    let c = Formula::atom("C");
    let e = Formula::atom("E");
    let a = Formula::implies(e.clone(), Formula::atom("B"));
    let ctx_c = TranslationContext::new(vec![c, e.clone()], 0).expect("valid context");
    let target = double_rel_neg(ff_translate(&a, &ctx_c), e);

    let mut cases = 0usize;
    let mut bad = Vec::new();
    for n in 4..=8 {
        let h = make_chain(n).expect("chain");
        for ev in 0..h.top() {
            for cv in 0..ev {
                for bv in 0..=cv {
                    cases += 1;
                    let v = Valuation::from([
                        ("B".to_string(), bv),
                        ("C".to_string(), cv),
                        ("E".to_string(), ev),
                    ]);
                    let closed = nested_rpc_left(&h, bv, cv, ev);
                    if closed != ev || evaluate(&target, &v, &h) != Ok(ev) {
                        bad.push(json!({ "n": n, "b": bv, "c": cv, "e": ev, "closed": closed }));
                    }
                }
            }
        }
    }
    findings.record(
        "nested_arrows_equal_e",
        cases > 0 && bad.is_empty(),
        json!({ "cases": cases, "mismatches": bad }),
    );
    let h = make_chain(3).expect("chain");
    findings.note(
        "grouping",
        json!({ "left": nested_rpc_left(&h, 0, 0, 1), "right": nested_rpc_right(&h, 0, 0, 1), "top": h.top() }),
    );
    findings.finish()
}
