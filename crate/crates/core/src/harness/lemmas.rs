//! Relative-negation lemma schemata, instantiated with random formulas.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use super::{ip_outcome, texts, CheckReport, Findings};
use crate::syntax::{Formula, FormulaGen, Logic};
use crate::translate::{double_rel_neg, ff_translate, rel_neg, TranslationContext};

const ATOMS: [&str; 3] = ["p", "q", "r"];
const MAX_SIZE: usize = 5;

/// One random instantiation of the schematic letters.
struct Inst {
    a: Formula,
    b: Formula,
    e: Formula,
    c: Formula,
    /// EP formula for the schemata about translations.
    m: Formula,
}

/// Sequents `(assumptions, goal)` that must all be IP-provable.
type Obligations = Vec<(Vec<Formula>, Formula)>;

fn both(x: &Formula, y: &Formula) -> Obligations {
    vec![(vec![x.clone()], y.clone()), (vec![y.clone()], x.clone())]
}

fn one(x: &Formula, y: &Formula) -> Obligations {
    vec![(vec![x.clone()], y.clone())]
}

fn schema(name: &str, i: &Inst) -> Obligations {
    let n = |x: &Formula| rel_neg(x.clone(), i.e.clone());
    let nn = |x: &Formula| double_rel_neg(x.clone(), i.e.clone());
    let imp = |x: &Formula, y: &Formula| Formula::implies(x.clone(), y.clone());
    let (a, b) = (&i.a, &i.b);
    match name {
        "double_neg_intro" => one(a, &nn(a)),
        "contraposition" => {
            let mut v = one(&imp(a, b), &imp(&n(b), &n(a)));
            v.extend(one(&imp(a, b), &imp(&nn(a), &nn(b))));
            v
        }
        "triple_neg" => both(&n(a), &n(&nn(a))),
        "double_neg_conj" => both(
            &nn(&Formula::conj(a.clone(), b.clone())),
            &Formula::conj(nn(a), nn(b)),
        ),
        "double_neg_disj" => both(
            &nn(&Formula::disj(a.clone(), b.clone())),
            &nn(&Formula::disj(nn(a), nn(b))),
        ),
        "double_double" => one(&nn(a), &nn(&double_rel_neg(a.clone(), i.c.clone()))),
        "double_neg_imp" => one(&nn(&imp(a, b)), &imp(&nn(a), &nn(b))),
        "imp_double_neg" => {
            let x = imp(&nn(a), &nn(b));
            both(&x, &nn(&x))
        }
        "antecedent_double_neg" => both(&imp(a, &nn(b)), &imp(&nn(a), &nn(b))),
        "translation_double_neg_elim" => {
            let t = ff_translate(&i.m, &context(i));
            both(&nn(&t), &t)
        }
        "translation_falsum" => both(&ff_translate(&Formula::Falsum, &context(i)), &i.e),
        "translation_negation" => {
            let ctx = context(i);
            both(
                &ff_translate(&Formula::neg(i.m.clone()), &ctx),
                &n(&ff_translate(&i.m, &ctx)),
            )
        }
        other => unreachable!("unknown schema {other}"),
    }
}

/// `[E, C]`, or `[E]` when the two coincide.
fn context(i: &Inst) -> TranslationContext {
    let gamma = if i.e == i.c {
        vec![i.e.clone()]
    } else {
        vec![i.e.clone(), i.c.clone()]
    };
    TranslationContext::new(gamma, 0).expect("IP formulas form a valid context")
}

const SCHEMATA: [&str; 12] = [
    "double_neg_intro",
    "contraposition",
    "triple_neg",
    "double_neg_conj",
    "double_neg_disj",
    "double_double",
    "double_neg_imp",
    "imp_double_neg",
    "antecedent_double_neg",
    "translation_double_neg_elim",
    "translation_falsum",
    "translation_negation",
];

/// The rule-admissibility schema, checked from sampled provable premises.
const RULE: &str = "double_neg_rule";

/// Sub-check names, in report order.
pub fn lemma_names() -> Vec<&'static str> {
    let mut v = SCHEMATA[..9].to_vec();
    v.insert(3, RULE);
    v.extend_from_slice(&SCHEMATA[9..]);
    v
}

fn subformulas(f: &Formula, out: &mut Vec<Formula>) {
    out.push(f.clone());
    match f {
        Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
            subformulas(a, out);
            subformulas(b, out);
        }
        Formula::Box(a) => subformulas(a, out),
        Formula::Atom(_) | Formula::Falsum => {}
    }
}

struct Outcome {
    instances: usize,
    sequents: usize,
    failures: Vec<serde_json::Value>,
}

fn discharge(obligations: Obligations, out: &mut Outcome, instance: serde_json::Value) {
    out.instances += 1;
    for (hyps, goal) in obligations {
        out.sequents += 1;
        let r = ip_outcome(hyps.clone(), goal.clone());
        if !r.proved() && out.failures.len() < 5 {
            out.failures.push(json!({
                "instance": instance.clone(),
                "assumptions": texts(&hyps),
                "goal": goal.to_string(),
                "outcome": r.json(),
            }));
        }
    }
}

/// Every schema on `sample` random instances each; all obligations must be
/// IP-provable with checked traces. Deterministic in `seed`.
pub fn check_lemma_suite(sample: usize, seed: u64) -> CheckReport {
    let mut findings = Findings::new("lemmas", seed);
    let sample = sample.max(1);
    let mut ip = FormulaGen::new(seed, &ATOMS, Logic::Ip).max_size(MAX_SIZE);
    let mut ep = FormulaGen::new(seed ^ 0x5eed, &ATOMS, Logic::Ep).max_size(MAX_SIZE);

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    for name in SCHEMATA {
        let mut out = Outcome {
            instances: 0,
            sequents: 0,
            failures: Vec::new(),
        };
        for _ in 0..sample {
            let i = Inst {
                a: ip.next_formula(),
                b: ip.next_formula(),
                e: ip.next_formula(),
                c: ip.next_formula(),
                m: ep.next_formula(),
            };
            let evidence = json!({
                "A": i.a.to_string(), "B": i.b.to_string(), "E": i.e.to_string(),
                "C": i.c.to_string(), "M": i.m.to_string(),
            });
            discharge(schema(name, &i), &mut out, evidence);
        }
        results.push((name, out));
    }

    // If Phi, A |- B then Phi, nn A |- nn B, over sampled provable premises.
    let mut out = Outcome {
        instances: 0,
        sequents: 0,
        failures: Vec::new(),
    };
    let mut attempts = 0usize;
    while out.instances < sample && attempts < 500 * sample {
        attempts += 1;
        let k = ip.rng().gen_range(0..=2);
        let phi: Vec<Formula> = (0..k).map(|_| ip.next_formula()).collect();
        let a = ip.next_formula();
        let e = ip.next_formula();
        let b = if ip.rng().gen_bool(0.5) {
            let mut pool = Vec::new();
            for f in phi.iter().chain([&a]) {
                subformulas(f, &mut pool);
            }
            pool.choose(ip.rng()).cloned().expect("nonempty pool")
        } else {
            ip.next_formula()
        };
        let mut premise = phi.clone();
        premise.push(a.clone());
        if !ip_outcome(premise, b.clone()).proved() {
            continue;
        }
        let mut hyps = phi.clone();
        hyps.push(double_rel_neg(a.clone(), e.clone()));
        let evidence = json!({ "Phi": texts(&phi), "A": a.to_string(), "B": b.to_string(), "E": e.to_string() });
        discharge(vec![(hyps, double_rel_neg(b, e))], &mut out, evidence);
    }
    results.insert(3, (RULE, out));

    for (name, out) in results {
        findings.record(
            name,
            out.instances >= sample && out.failures.is_empty(),
            json!({ "instances": out.instances, "sequents": out.sequents, "failures": out.failures }),
        );
    }
    findings.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_in_order() {
        let names = lemma_names();
        assert_eq!(names.len(), 13);
        assert_eq!(names[3], RULE);
    }

    #[test]
    fn small_suite_passes() {
        let r = check_lemma_suite(10, 1);
        assert!(r.passed(), "{}", r.details);
        let got: Vec<String> = r.details["subchecks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["name"].as_str().unwrap().to_string())
            .collect();
        assert_eq!(got, lemma_names());
    }
}
