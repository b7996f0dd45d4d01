use serde::Serialize;

use crate::error::TranslateError;
use crate::syntax::json::as_text_vec;
use crate::syntax::Formula;

/// A finite, nonempty, duplicate-free ordered list `gamma` of IP formulas
/// together with the index of the witness `E`.
///
/// The order only fixes how the conjunction in the `Box` clause is nested.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TranslationContext {
    #[serde(with = "as_text_vec")]
    gamma: Vec<Formula>,
    witness_index: usize,
}

impl TranslationContext {
    pub fn new(gamma: Vec<Formula>, witness_index: usize) -> Result<Self, TranslateError> {
        if gamma.is_empty() {
            return Err(TranslateError::EmptyContext);
        }
        for (i, f) in gamma.iter().enumerate() {
            if !f.is_ip() {
                return Err(TranslateError::ModalInContext(f.to_string()));
            }
            if gamma[..i].contains(f) {
                return Err(TranslateError::DuplicateInContext(f.to_string()));
            }
        }
        if witness_index >= gamma.len() {
            return Err(TranslateError::WitnessOutOfRange {
                index: witness_index,
                len: gamma.len(),
            });
        }
        Ok(TranslationContext {
            gamma,
            witness_index,
        })
    }

    /// Selects the witness by value; it must occur in `gamma`.
    pub fn with_witness(gamma: Vec<Formula>, witness: &Formula) -> Result<Self, TranslateError> {
        let idx = gamma
            .iter()
            .position(|g| g == witness)
            .ok_or_else(|| TranslateError::WitnessNotInContext(witness.to_string()))?;
        TranslationContext::new(gamma, idx)
    }

    /// `Gamma = [E]`.
    pub fn singleton(witness: Formula) -> Result<Self, TranslateError> {
        TranslationContext::new(vec![witness], 0)
    }

    pub fn gamma(&self) -> &[Formula] {
        &self.gamma
    }

    pub fn witness(&self) -> &Formula {
        &self.gamma[self.witness_index]
    }

    pub fn witness_index(&self) -> usize {
        self.witness_index
    }

    /// Same `gamma`, different witness.
    pub fn rewitness(&self, witness_index: usize) -> Self {
        assert!(witness_index < self.gamma.len());
        TranslationContext {
            gamma: self.gamma.clone(),
            witness_index,
        }
    }

    /// One context per possible witness, in `gamma` order.
    pub fn all_witnesses(gamma: Vec<Formula>) -> Result<Vec<Self>, TranslateError> {
        let base = TranslationContext::new(gamma, 0)?;
        Ok((0..base.gamma.len()).map(|i| base.rewitness(i)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let p = Formula::atom("p");
        assert_eq!(
            TranslationContext::new(vec![], 0),
            Err(TranslateError::EmptyContext)
        );
        assert!(matches!(
            TranslationContext::new(vec![p.clone(), p.clone()], 0),
            Err(TranslateError::DuplicateInContext(_))
        ));
        assert!(matches!(
            TranslationContext::new(vec![Formula::boxed(p.clone())], 0),
            Err(TranslateError::ModalInContext(_))
        ));
        assert!(matches!(
            TranslationContext::new(vec![p.clone()], 1),
            Err(TranslateError::WitnessOutOfRange { .. })
        ));
        assert!(matches!(
            TranslationContext::with_witness(vec![p.clone()], &Formula::atom("C")),
            Err(TranslateError::WitnessNotInContext(_))
        ));
        let ctx =
            TranslationContext::with_witness(vec![Formula::atom("C"), p.clone()], &p).unwrap();
        assert_eq!(ctx.witness(), &p);
        assert_eq!(ctx.witness_index(), 1);
        assert_eq!(
            TranslationContext::all_witnesses(vec![p, Formula::Falsum])
                .unwrap()
                .len(),
            2
        );
    }
}
