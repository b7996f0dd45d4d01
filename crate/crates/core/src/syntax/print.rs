use super::formula::Formula;

// Binding strength, loosest first.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const PREFIX: u8 = 4;
const LEAF: u8 = 5;

/// Canonical minimal-parenthesis printer.
///
/// With relative-negation witnesses configured, any `A -> X` whose
/// consequent `X` is one of the witnesses prints as `neg[X](A)`. That mode is
/// for reading only and does not round-trip through the parser.
#[derive(Clone, Debug, Default)]
pub struct Printer {
    witnesses: Vec<Formula>,
}

impl Printer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_relative_negation(witnesses: impl IntoIterator<Item = Formula>) -> Self {
        Printer {
            witnesses: witnesses
                .into_iter()
                .filter(|w| *w != Formula::Falsum)
                .collect(),
        }
    }

    pub fn print(&self, f: &Formula) -> String {
        let mut out = String::new();
        self.write(f, 0, &mut out);
        out
    }

    fn strength(&self, f: &Formula) -> u8 {
        match f {
            Formula::Atom(_) | Formula::Falsum => LEAF,
            Formula::Box(_) => PREFIX,
            Formula::Impl(_, b) if **b == Formula::Falsum => PREFIX,
            Formula::Impl(_, b) if self.witnesses.contains(b) => PREFIX,
            Formula::Impl(..) => IMP,
            Formula::Disj(..) => OR,
            Formula::Conj(..) => AND,
        }
    }

    fn write(&self, f: &Formula, min: u8, out: &mut String) {
        let parens = self.strength(f) < min;
        if parens {
            out.push('(');
        }
        match f {
            Formula::Atom(name) => out.push_str(name),
            Formula::Falsum => out.push_str("_|_"),
            Formula::Box(a) => {
                out.push_str("[]");
                self.write(a, PREFIX, out);
            }
            Formula::Impl(a, b) if **b == Formula::Falsum => {
                out.push('~');
                self.write(a, PREFIX, out);
            }
            Formula::Impl(a, b) if self.witnesses.contains(b) => {
                out.push_str("neg[");
                self.write(b, 0, out);
                out.push_str("](");
                self.write(a, 0, out);
                out.push(')');
            }
            Formula::Impl(a, b) => {
                self.write(a, OR, out);
                out.push_str(" -> ");
                self.write(b, IMP, out);
            }
            Formula::Disj(a, b) => {
                self.write(a, OR, out);
                out.push_str(" \\/ ");
                self.write(b, AND, out);
            }
            Formula::Conj(a, b) => {
                self.write(a, AND, out);
                out.push_str(" /\\ ");
                self.write(b, PREFIX, out);
            }
        }
        if parens {
            out.push(')');
        }
    }
}

/// Prints in the canonical grammar; `parse(print(f)) == f`.
pub fn print(f: &Formula) -> String {
    Printer::new().print(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Logic};

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn golden_outputs() {
        assert_eq!(print(&Formula::neg(p())), "~p");
        assert_eq!(print(&Formula::boxed(p())), "[]p");
        assert_eq!(
            print(&Formula::conj(p(), Formula::disj(q(), r()))),
            "p /\\ (q \\/ r)"
        );
        assert_eq!(
            print(&Formula::implies(Formula::implies(p(), q()), r())),
            "(p -> q) -> r"
        );
        assert_eq!(
            print(&Formula::implies(p(), Formula::implies(q(), r()))),
            "p -> q -> r"
        );
        assert_eq!(print(&Formula::neg(Formula::conj(p(), q()))), "~(p /\\ q)");
        assert_eq!(
            print(&Formula::boxed(Formula::implies(
                Formula::boxed(p()),
                Formula::boxed(q())
            ))),
            "[]([]p -> []q)"
        );
        assert_eq!(print(&Formula::verum()), "~_|_");
        assert_eq!(
            print(&Formula::conj(Formula::conj(p(), q()), r())),
            "p /\\ q /\\ r"
        );
        assert_eq!(
            print(&Formula::disj(p(), Formula::disj(q(), r()))),
            "p \\/ (q \\/ r)"
        );
    }

    #[test]
    fn relative_negation_pretty_mode() {
        let e = Formula::atom("E");
        let nn = Formula::implies(Formula::implies(p(), e.clone()), e.clone());
        let printer = Printer::with_relative_negation([e]);
        assert_eq!(printer.print(&nn), "neg[E](neg[E](p))");
        assert_eq!(print(&nn), "(p -> E) -> E");
        assert_eq!(printer.print(&Formula::neg(p())), "~p");
    }

    #[test]
    fn printed_forms_reparse() {
        for text in [
            "~~p",
            "[]~p -> p",
            "(p \\/ q) /\\ ~r",
            "~(p -> q) \\/ (r -> _|_ -> p)",
            "((p -> q) -> p) -> p",
        ] {
            let f = parse(text, Logic::Ep).unwrap();
            assert_eq!(parse(&print(&f), Logic::Ep).unwrap(), f, "{text}");
        }
    }
}
