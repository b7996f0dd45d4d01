use serde_json::json;

use super::{ip_equiv_certified, CheckReport, Findings};
use crate::syntax::{parse, Formula, Logic, Printer};
use crate::translate::{ff_simplify, ff_translate, TranslationContext};

/// Source formula and expected simplified translation, relative to
/// `Gamma = [E, C]` and witness `E`.
pub const WORKED_EXAMPLES: [(&str, &str, &str); 3] = [
    (
        "conj_disj",
        "p /\\ (q \\/ r)",
        "(p /\\ (q \\/ r) -> E) -> E",
    ),
    ("box", "[]p", "(p -> E) -> E"),
    (
        "imp_disj",
        "(p -> q) \\/ r",
        "((p -> (q -> E) -> E) \\/ r -> E) -> E",
    ),
];

pub fn check_worked_examples() -> CheckReport {
    let mut findings = Findings::new("examples", 0);
    let e = Formula::atom("E");
    let ctx =
        TranslationContext::new(vec![e.clone(), Formula::atom("C")], 0).expect("valid context");
    let pretty = Printer::with_relative_negation([e]);
    for (name, source, target) in WORKED_EXAMPLES {
        let src = parse(source, Logic::Ep).expect("example parses");
        let want = parse(target, Logic::Ip).expect("target parses");
        let raw = ff_translate(&src, &ctx);
        let simp = ff_simplify(&raw, &ctx);
        let equiv = ip_equiv_certified(&raw, &simp);
        findings.record(
            name,
            simp == want && equiv,
            json!({
                "source": source,
                "raw": raw.to_string(),
                "simplified": simp.to_string(),
                "pretty": pretty.print(&simp),
                "expected": want.to_string(),
                "equivalent_with_traces": equiv,
            }),
        );
    }
    findings.finish()
}
