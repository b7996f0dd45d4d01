use proptest::prelude::*;

use epist2int::algebra::{evaluate, make_chain, refute, small_heyting_algebras, Valuation};
use epist2int::prover::{
    check_kripke, check_trace, ep_provable, equiv_ip, prove_ep, prove_ip, prove_ip_with,
    ProveOptions, Verdict,
};
use epist2int::syntax::{parse, print, Formula, Logic, Sequent};
use epist2int::translate::{ff_simplify, ff_translate, godel_translate, TranslationContext};

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        1 => Just(Formula::Falsum),
        4 => prop::sample::select(&ATOMS[..]).prop_map(Formula::atom),
    ]
}

fn formula(modal: bool, depth: u32, size: u32) -> BoxedStrategy<Formula> {
    leaf()
        .prop_recursive(depth, size, 2, move |inner| {
            let binary = prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::conj(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::disj(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            ];
            if modal {
                prop_oneof![3 => binary, 1 => inner.prop_map(Formula::boxed)].boxed()
            } else {
                binary.boxed()
            }
        })
        .boxed()
}

/// Built from atoms with conjunction and disjunction only.
fn positive() -> impl Strategy<Value = Formula> {
    prop::sample::select(&ATOMS[..])
        .prop_map(Formula::atom)
        .prop_recursive(5, 20, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::conj(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::disj(a, b)),
            ]
        })
}

fn context() -> impl Strategy<Value = TranslationContext> {
    let pool = ["q", "r", "q -> r", "_|_ -> _|_"];
    prop::sample::subsequence(pool.to_vec(), 1..=2).prop_flat_map(|gamma| {
        let n = gamma.len();
        (Just(gamma), 0..n).prop_map(|(gamma, w)| {
            let gamma = gamma.iter().map(|g| parse(g, Logic::Ip).unwrap()).collect();
            TranslationContext::new(gamma, w).unwrap()
        })
    })
}

fn boxed_subformulas(f: &Formula, out: &mut std::collections::BTreeSet<Formula>) {
    match f {
        Formula::Box(a) => {
            out.insert(f.clone());
            boxed_subformulas(a, out);
        }
        Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
            boxed_subformulas(a, out);
            boxed_subformulas(b, out);
        }
        Formula::Atom(_) | Formula::Falsum => {}
    }
}

fn theorem(goal: Formula, logic: Logic) -> Sequent {
    Sequent {
        assumptions: vec![],
        goal,
        logic,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn print_then_parse_is_identity(f in formula(true, 6, 30)) {
        prop_assert_eq!(parse(&print(&f), Logic::Ep).unwrap(), f);
    }

    #[test]
    fn json_tree_round_trips(f in formula(true, 6, 30)) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Formula>(&text).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ff_output_is_box_free(f in formula(true, 4, 10), ctx in context()) {
        prop_assert!(ff_translate(&f, &ctx).is_ip());
    }

    #[test]
    fn simplification_shrinks_and_is_idempotent(f in formula(true, 4, 8), ctx in context()) {
        let raw = ff_translate(&f, &ctx);
        let simp = ff_simplify(&raw, &ctx);
        prop_assert!(simp.size() <= raw.size());
        prop_assert_eq!(ff_simplify(&simp, &ctx), simp);
    }

    #[test]
    fn simplification_is_ip_equivalent(f in formula(true, 3, 6), ctx in context()) {
        let raw = ff_translate(&f, &ctx);
        let simp = ff_simplify(&raw, &ctx);
        prop_assert!(equiv_ip(&raw, &simp).unwrap(), "{} vs {}", raw, simp);
    }

    #[test]
    fn provable_means_checked_trace_and_no_chain_refutation(f in formula(false, 5, 12)) {
        let s = theorem(f.clone(), Logic::Ip);
        let opts = ProveOptions { trace: true, node_cap: None };
        let r = prove_ip_with(&s, &opts).unwrap();
        if r.verdict == Verdict::Provable {
            prop_assert!(check_trace(r.trace.as_ref().unwrap(), &s).is_ok());
            prop_assert!(refute(&f, 4, true).unwrap().is_none());
        }
    }

    #[test]
    fn ep_countermodels_check_and_stay_small(f in formula(true, 5, 12)) {
        let mut boxes = std::collections::BTreeSet::new();
        boxed_subformulas(&f, &mut boxes);
        let s = theorem(f, Logic::Ep);
        let r = prove_ep(&s).unwrap();
        if r.verdict == Verdict::NotProvable {
            let m = r.witness.as_ref().unwrap();
            prop_assert_eq!(check_kripke(m, &s), Ok(true));
            prop_assert!(m.worlds.len() <= (1usize << boxes.len()) + 1);
        }
    }

    #[test]
    fn godel_translation_preserves_theorems(f in formula(false, 5, 12)) {
        if prove_ip(&theorem(f.clone(), Logic::Ip)).unwrap().verdict == Verdict::Provable {
            prop_assert!(ep_provable(&[], &godel_translate(&f).unwrap()));
        }
    }

    #[test]
    fn positive_formulas_are_monotone(
        f in positive(),
        low in prop::collection::vec(0usize..5, 3),
        bump in prop::collection::vec(0usize..5, 3),
        pick in 0usize..64,
    ) {
        let lattices = small_heyting_algebras(5);
        let algebras = [make_chain(5).unwrap(), lattices[pick % lattices.len()].clone()];
        for h in &algebras {
            let n = h.size();
            let (v, w): (Valuation, Valuation) = ATOMS
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let x = low[i] % n;
                    // Move up along the order from `x` to a point above it.
                    let y = (0..n).filter(|&y| h.leq(x, y)).nth(bump[i] % n).unwrap_or(x);
                    ((a.to_string(), x), (a.to_string(), y))
                })
                .unzip();
            prop_assert!(h.leq(evaluate(&f, &v, h).unwrap(), evaluate(&f, &w, h).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ip_prover_terminates_up_to_size_40(f in formula(false, 8, 40)) {
        prop_assume!(f.size() <= 40);
        let r = prove_ip(&theorem(f, Logic::Ip)).unwrap();
        prop_assert!(r.stats.nodes_expanded >= 1);
    }
}
