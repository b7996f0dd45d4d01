use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::SyntaxError;

/// Which logic a formula or sequent is interpreted in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Logic {
    /// Intuitionistic propositional logic. No modality.
    Ip,
    /// Epistemic propositional logic, i.e. S4 over classical logic.
    Ep,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Logic::Ip => write!(f, "IP"),
            Logic::Ep => write!(f, "EP"),
        }
    }
}

/// Shared AST for both logics.
///
/// Negation is not a constructor: `~A` is `Impl(A, Falsum)`. `Falsum` counts
/// as an atomic formula for the translations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>),
    Falsum,
    Conj(Arc<Formula>, Arc<Formula>),
    Disj(Arc<Formula>, Arc<Formula>),
    Impl(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn conj(left: Formula, right: Formula) -> Formula {
        Formula::Conj(Arc::new(left), Arc::new(right))
    }

    pub fn disj(left: Formula, right: Formula) -> Formula {
        Formula::Disj(Arc::new(left), Arc::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::Impl(Arc::new(left), Arc::new(right))
    }

    pub fn boxed(inner: Formula) -> Formula {
        Formula::Box(Arc::new(inner))
    }

    /// `A -> _|_`
    pub fn neg(inner: Formula) -> Formula {
        Formula::implies(inner, Formula::Falsum)
    }

    /// `_|_ -> _|_`
    pub fn verum() -> Formula {
        Formula::implies(Formula::Falsum, Formula::Falsum)
    }

    /// Right-nested conjunction of a nonempty list; a single element is returned as is.
    pub fn big_conj(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        let items: Vec<Formula> = items.into_iter().collect();
        let mut iter = items.into_iter().rev();
        let last = iter.next()?;
        Some(iter.fold(last, |acc, f| Formula::conj(f, acc)))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Falsum)
    }

    /// True iff the formula contains no `Box` node.
    pub fn is_ip(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Falsum => true,
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
                a.is_ip() && b.is_ip()
            }
            Formula::Box(_) => false,
        }
    }

    pub fn is_in(&self, logic: Logic) -> bool {
        logic == Logic::Ep || self.is_ip()
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum => 1,
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Box(a) => 1 + a.size(),
        }
    }

    /// Height of the AST; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum => 0,
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Box(a) => 1 + a.depth(),
        }
    }

    /// Propositional letters occurring in the formula (`Falsum` excluded).
    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Falsum => {}
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Box(a) => a.collect_atoms(out),
        }
    }

    /// `Some(A)` if the formula is `A -> _|_`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Impl(a, b) if **b == Formula::Falsum => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print(self))
    }
}

/// `A1, ..., An |- B` together with the logic it is posed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub assumptions: Vec<Formula>,
    pub goal: Formula,
    pub logic: Logic,
}

impl Sequent {
    /// Builds a sequent, rejecting `Box` anywhere in an IP sequent.
    pub fn new(
        assumptions: Vec<Formula>,
        goal: Formula,
        logic: Logic,
    ) -> Result<Self, SyntaxError> {
        let s = Sequent {
            assumptions,
            goal,
            logic,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn theorem(goal: Formula, logic: Logic) -> Result<Self, SyntaxError> {
        Sequent::new(Vec::new(), goal, logic)
    }

    pub fn validate(&self) -> Result<(), SyntaxError> {
        if self.logic == Logic::Ip
            && !(self.goal.is_ip() && self.assumptions.iter().all(Formula::is_ip))
        {
            return Err(SyntaxError::BoxInIp { position: None });
        }
        Ok(())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.assumptions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        if self.assumptions.is_empty() {
            write!(f, "|- {}", self.goal)
        } else {
            write!(f, " |- {}", self.goal)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn ip_iff_no_box() {
        assert!(Formula::implies(p(), Formula::Falsum).is_ip());
        assert!(!Formula::conj(p(), Formula::boxed(p())).is_ip());
    }

    #[test]
    fn big_conj_is_right_nested() {
        let q = Formula::atom("q");
        let r = Formula::atom("r");
        let c = Formula::big_conj([p(), q.clone(), r.clone()]).unwrap();
        assert_eq!(c, Formula::conj(p(), Formula::conj(q, r)));
        assert_eq!(Formula::big_conj([p()]), Some(p()));
        assert_eq!(Formula::big_conj(Vec::new()), None);
    }

    #[test]
    fn ip_sequent_rejects_box() {
        let err = Sequent::new(vec![Formula::boxed(p())], p(), Logic::Ip).unwrap_err();
        assert!(matches!(err, SyntaxError::BoxInIp { .. }));
        assert!(Sequent::new(vec![Formula::boxed(p())], p(), Logic::Ep).is_ok());
    }

    #[test]
    fn size_and_depth() {
        let f = Formula::implies(Formula::boxed(p()), Formula::Falsum);
        assert_eq!(f.size(), 4);
        assert_eq!(f.depth(), 2);
    }
}
