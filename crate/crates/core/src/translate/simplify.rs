//! Terminating rewrite system over translated formulas.
//!
//! Write `nn_X A` for `(A -> X) -> X`. Only witnesses `X` from the context's
//! `gamma` are recognized. Every rule strictly shrinks the node count, so
//! rewriting to a fixpoint terminates; each rule replaces a subformula by an
//! IP-equivalent one, and IP equivalence is a congruence.
//!
//! | rule      | rewrite                                              |
//! |-----------|------------------------------------------------------|
//! | falsum    | `nn_X _|_  =>  X`                                     |
//! | triple    | `nn_X A -> X  =>  A -> X`                              |
//! | strip     | `nn_X C[nn_X A]  =>  nn_X C[A]` for `C` built from `/\`, `\/` |
//! | imp       | `nn_X A -> nn_X B  =>  A -> nn_X B`                    |
//! | combine   | `nn_X A /\ nn_X B  =>  nn_X (A /\ B)`                  |
//! | absorb    | `A /\ nn_Y A  =>  A`, `nn_Y A /\ A  =>  A`, `A /\ A  =>  A` |

use super::TranslationContext;
use crate::syntax::Formula;

/// Rewrites `f` to its normal form under the relative-negation lemmas.
pub fn ff_simplify(f: &Formula, ctx: &TranslationContext) -> Formula {
    Simplifier {
        witnesses: ctx.gamma(),
    }
    .simp(f)
}

struct Simplifier<'a> {
    witnesses: &'a [Formula],
}

impl Simplifier<'_> {
    /// `Some((A, X))` if `f` is `nn_X A` for a known witness `X`.
    fn double_neg<'f>(&self, f: &'f Formula) -> Option<(&'f Formula, &'f Formula)> {
        let Formula::Impl(ant, x) = f else {
            return None;
        };
        let Formula::Impl(inner, x2) = &**ant else {
            return None;
        };
        (x == x2 && self.witnesses.contains(x)).then_some((&**inner, &**x))
    }

    fn simp(&self, f: &Formula) -> Formula {
        let rebuilt = match f {
            Formula::Atom(_) | Formula::Falsum => return f.clone(),
            Formula::Conj(a, b) => Formula::conj(self.simp(a), self.simp(b)),
            Formula::Disj(a, b) => Formula::disj(self.simp(a), self.simp(b)),
            Formula::Impl(a, b) => Formula::implies(self.simp(a), self.simp(b)),
            Formula::Box(a) => Formula::boxed(self.simp(a)),
        };
        match self.rewrite_root(&rebuilt) {
            Some(next) => self.simp(&next),
            None => rebuilt,
        }
    }

    fn rewrite_root(&self, f: &Formula) -> Option<Formula> {
        if let Some((inner, x)) = self.double_neg(f) {
            if *inner == Formula::Falsum {
                return Some(x.clone());
            }
            let stripped = self.strip(inner, x);
            if stripped != *inner {
                return Some(nn(stripped, x));
            }
        }
        match f {
            Formula::Impl(ant, cons) => {
                if let Some((a, x)) = self.double_neg(ant) {
                    if **cons == *x {
                        return Some(Formula::implies(a.clone(), x.clone()));
                    }
                    if let Some((_, y)) = self.double_neg(cons) {
                        if x == y {
                            return Some(Formula::Impl(a.clone().into(), cons.clone()));
                        }
                    }
                }
                None
            }
            Formula::Conj(a, b) => {
                if a == b {
                    return Some((**a).clone());
                }
                if let (Some((ia, x)), Some((ib, y))) = (self.double_neg(a), self.double_neg(b)) {
                    if x == y {
                        return Some(nn(Formula::conj(ia.clone(), ib.clone()), x));
                    }
                }
                if self.double_neg(b).is_some_and(|(ib, _)| ib == &**a) {
                    return Some((**a).clone());
                }
                if self.double_neg(a).is_some_and(|(ia, _)| ia == &**b) {
                    return Some((**b).clone());
                }
                None
            }
            _ => None,
        }
    }

    /// Removes `nn_X` wrappers reachable from the root through `/\` and `\/`.
    fn strip(&self, f: &Formula, x: &Formula) -> Formula {
        if let Some((inner, y)) = self.double_neg(f) {
            if y == x {
                return self.strip(inner, x);
            }
        }
        match f {
            Formula::Conj(a, b) => Formula::conj(self.strip(a, x), self.strip(b, x)),
            Formula::Disj(a, b) => Formula::disj(self.strip(a, x), self.strip(b, x)),
            _ => f.clone(),
        }
    }
}

fn nn(a: Formula, x: &Formula) -> Formula {
    super::double_rel_neg(a, x.clone())
}
