use serde_json::json;

use super::{ip_outcome, CheckReport, Findings};
use crate::prover::{check_kripke, ep_provable, prove_ep, Verdict};
use crate::syntax::{enumerate_formulas, parse, Formula, Logic, Sequent};
use crate::translate::godel_translate;

const ATOM_NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

/// Exhaustively over IP formulas with at most `max_size` nodes and `atoms`
/// atoms: `|- T(A)` in EP iff `|- A` in IP, and `T(A) -||- []T(A)` in EP.
pub fn check_godel_faithfulness(max_size: usize, atoms: usize) -> CheckReport {
    let mut findings = Findings::new("godel", 0);
    let names = &ATOM_NAMES[..atoms.clamp(1, ATOM_NAMES.len())];
    let formulas = enumerate_formulas(max_size, names, Logic::Ip);

    let mut theorems = 0usize;
    let mut mismatches = Vec::new();
    let mut unstable = Vec::new();
    let mut bad_evidence = Vec::new();
    for a in &formulas {
        let t = godel_translate(a).expect("enumerated formulas are IP");
        let ip = ip_outcome(vec![], a.clone());
        let s = Sequent {
            assumptions: vec![],
            goal: t.clone(),
            logic: Logic::Ep,
        };
        let ep = prove_ep(&s).expect("EP prover accepts every formula");
        if ip.verdict == Verdict::Provable {
            theorems += 1;
            if !ip.certified {
                bad_evidence.push(json!({ "formula": a.to_string(), "missing": "trace" }));
            }
        }
        if ep.verdict == Verdict::NotProvable {
            let ok = ep
                .witness
                .as_ref()
                .is_some_and(|m| check_kripke(m, &s) == Ok(true));
            if !ok {
                bad_evidence.push(json!({ "formula": t.to_string(), "missing": "countermodel" }));
            }
        }
        if ip.verdict != ep.verdict && mismatches.len() < 20 {
            mismatches
                .push(json!({ "formula": a.to_string(), "ip": ip.verdict, "ep": ep.verdict }));
        }
        let boxed = Formula::boxed(t.clone());
        if !(ep_provable(std::slice::from_ref(&t), &boxed) && ep_provable(&[boxed], &t))
            && unstable.len() < 20
        {
            unstable.push(json!({ "formula": a.to_string() }));
        }
    }

    findings.note("formulas", json!(formulas.len()));
    findings.note("ip_theorems", json!(theorems));
    findings.record(
        "verdicts_agree",
        mismatches.is_empty(),
        json!({ "mismatches": mismatches }),
    );
    findings.record(
        "stable_under_box",
        unstable.is_empty(),
        json!({ "failures": unstable }),
    );
    findings.record(
        "evidence_checked",
        bad_evidence.is_empty(),
        json!({ "failures": bad_evidence }),
    );

    for (name, src, want) in [
        ("excluded_middle", "p \\/ ~p", Verdict::NotProvable),
        ("double_negation_elim", "~~p -> p", Verdict::NotProvable),
        ("identity", "p -> p", Verdict::Provable),
    ] {
        let a = parse(src, Logic::Ip).expect("example parses");
        let t = godel_translate(&a).expect("IP formula");
        let ip = ip_outcome(vec![], a).verdict;
        let ep = if ep_provable(&[], &t) {
            Verdict::Provable
        } else {
            Verdict::NotProvable
        };
        findings.record(
            format!("example/{name}"),
            ip == want && ep == want,
            json!({ "formula": src, "translation": t.to_string(), "ip": ip, "ep": ep }),
        );
    }
    findings.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumeration_passes() {
        let r = check_godel_faithfulness(5, 2);
        assert!(r.passed(), "{}", r.details);
        assert_eq!(r.details["formulas"], 3 + 27 + 486);
    }
}
