use serde_json::json;

use super::{CheckReport, Findings};
use crate::algebra::{refute, AlgebraKind};
use crate::prover::{check_kripke, prove_ep, prove_ip, Verdict};
use crate::syntax::{parse, FormulaGen, Logic, Sequent};

const ATOMS: [&str; 3] = ["p", "q", "r"];

/// Cross-checks the IP prover against algebraic refutation on `ip_samples`
/// random formulas of size at most 8, and re-validates the countermodels of
/// `ep_samples` random EP formulas of size at most 10.
pub fn check_oracle_consistency(
    ip_samples: usize,
    ep_samples: usize,
    max_chain: usize,
    seed: u64,
) -> CheckReport {
    let mut findings = Findings::new("oracles", seed);

    let mut gen = FormulaGen::new(seed, &ATOMS, Logic::Ip)
        .max_depth(8)
        .max_size(8);
    let (mut provable, mut refuted, mut open) = (0usize, 0usize, 0usize);
    let mut conflicts = Vec::new();
    let mut bad_models = Vec::new();
    for _ in 0..ip_samples {
        let f = gen.next_formula();
        let s = Sequent {
            assumptions: vec![],
            goal: f.clone(),
            logic: Logic::Ip,
        };
        let verdict = prove_ip(&s).expect("IP formula").verdict;
        let cm = refute(&f, max_chain.max(2), true).expect("IP formula");
        match (&cm, verdict) {
            (Some(_), Verdict::Provable) => {
                conflicts.push(json!({ "formula": f.to_string() }));
            }
            (Some(_), _) => refuted += 1,
            (None, Verdict::Provable) => provable += 1,
            (None, _) => open += 1,
        }
        if let Some(cm) = cm {
            if !cm.recheck() {
                bad_models.push(json!({ "formula": f.to_string() }));
            }
        }
    }
    findings.note(
        "ip",
        json!({ "samples": ip_samples, "provable": provable, "refuted": refuted, "unrefuted_non_theorems": open }),
    );
    findings.record(
        "provable_never_refuted",
        conflicts.is_empty(),
        json!({ "conflicts": conflicts }),
    );
    findings.record(
        "countermodels_recheck",
        bad_models.is_empty(),
        json!({ "failures": bad_models }),
    );

    let mut gen = FormulaGen::new(seed ^ 0xe9, &ATOMS, Logic::Ep)
        .max_depth(10)
        .max_size(10);
    let mut not_provable = 0usize;
    let mut failures = Vec::new();
    for _ in 0..ep_samples {
        let s = Sequent {
            assumptions: vec![],
            goal: gen.next_formula(),
            logic: Logic::Ep,
        };
        let r = prove_ep(&s).expect("EP formula");
        if r.verdict == Verdict::NotProvable {
            not_provable += 1;
            let ok = r
                .witness
                .as_ref()
                .is_some_and(|m| check_kripke(m, &s) == Ok(true));
            if !ok {
                failures.push(json!({ "formula": s.goal.to_string() }));
            }
        }
    }
    findings.note(
        "ep",
        json!({ "samples": ep_samples, "not_provable": not_provable }),
    );
    findings.record(
        "kripke_witnesses_check",
        failures.is_empty(),
        json!({ "failures": failures }),
    );
    findings.finish()
}

/// `(p -> q) \/ (q -> p)` holds in every chain yet is not an IP theorem; a
/// non-linear algebra refutes it.
pub fn check_chain_sentinel(max_chain: usize) -> CheckReport {
    let mut findings = Findings::new("chains", 0);
    let f = parse("(p -> q) \\/ (q -> p)", Logic::Ip).expect("sentinel parses");
    let s = Sequent {
        assumptions: vec![],
        goal: f.clone(),
        logic: Logic::Ip,
    };
    let verdict = prove_ip(&s).expect("IP formula").verdict;
    findings.record(
        "ip_not_provable",
        verdict == Verdict::NotProvable,
        json!({ "verdict": verdict }),
    );

    let chains = refute(&f, max_chain.max(2), false).expect("IP formula");
    findings.record(
        "no_chain_countermodel",
        chains.is_none(),
        json!({ "max_chain": max_chain.max(2), "found": chains.map(|c| serde_json::to_value(c).unwrap_or_default()) }),
    );

    let lattices = refute(&f, 2, true).expect("IP formula");
    let ok = lattices
        .as_ref()
        .is_some_and(|c| c.kind == AlgebraKind::Table && !c.algebra.is_chain() && c.recheck());
    findings.record(
        "lattice_countermodel",
        ok,
        json!({ "countermodel": lattices.map(|c| serde_json::to_value(c).unwrap_or_default()) }),
    );
    findings.finish()
}
