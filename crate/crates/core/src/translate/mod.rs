//! Translations between IP and EP.
//!
//! * [`godel_translate`] embeds IP into EP by boxing atoms and implications.
//! * [`ff_translate`] maps EP back into IP relative to a context `Gamma` and
//!   a witness `E`, using relative negation `neg_E A = A -> E`.
//! * [`ff_simplify`] normalizes translated formulas with the relative-negation
//!   lemmas used as one-directional rewrites.

mod context;
mod simplify;

use std::collections::HashMap;

pub use context::TranslationContext;
pub use simplify::ff_simplify;

use crate::error::TranslateError;
use crate::registry::{Named, Registry};
use crate::syntax::{Formula, Logic};

/// `neg_E A`, i.e. `A -> E`.
pub fn rel_neg(a: Formula, e: Formula) -> Formula {
    Formula::implies(a, e)
}

/// `neg_E neg_E A`, i.e. `(A -> E) -> E`.
pub fn double_rel_neg(a: Formula, e: Formula) -> Formula {
    rel_neg(rel_neg(a, e.clone()), e)
}

/// Goedel translation `T`. Rejects formulas containing `Box`.
pub fn godel_translate(a: &Formula) -> Result<Formula, TranslateError> {
    if !a.is_ip() {
        return Err(TranslateError::NotIp(a.to_string()));
    }
    Ok(godel(a))
}

fn godel(a: &Formula) -> Formula {
    match a {
        Formula::Atom(_) => Formula::boxed(a.clone()),
        Formula::Falsum => Formula::Falsum,
        Formula::Conj(l, r) => Formula::conj(godel(l), godel(r)),
        Formula::Disj(l, r) => Formula::disj(godel(l), godel(r)),
        Formula::Impl(l, r) => Formula::boxed(Formula::implies(godel(l), godel(r))),
        Formula::Box(_) => unreachable!("checked by godel_translate"),
    }
}

/// Flagg-Friedman translation `A^(E)_Gamma`.
///
/// Atoms (including `_|_`) become `neg_E neg_E A`; `/\` and `->` are mapped
/// componentwise; `\/` is wrapped in `neg_E neg_E`; and `[]B` becomes
/// `neg_E neg_E` of the right-nested conjunction of `B^(C)` over `C` in
/// `Gamma`, in stored order. The result never contains `Box`.
pub fn ff_translate(a: &Formula, ctx: &TranslationContext) -> Formula {
    let mut memo = HashMap::new();
    ff(a, ctx.gamma(), ctx.witness_index(), &mut memo)
}

fn ff(
    a: &Formula,
    gamma: &[Formula],
    w: usize,
    memo: &mut HashMap<(Formula, usize), Formula>,
) -> Formula {
    if let Some(hit) = memo.get(&(a.clone(), w)) {
        return hit.clone();
    }
    let e = &gamma[w];
    let out = match a {
        Formula::Atom(_) | Formula::Falsum => double_rel_neg(a.clone(), e.clone()),
        Formula::Conj(l, r) => Formula::conj(ff(l, gamma, w, memo), ff(r, gamma, w, memo)),
        Formula::Impl(l, r) => Formula::implies(ff(l, gamma, w, memo), ff(r, gamma, w, memo)),
        Formula::Disj(l, r) => double_rel_neg(
            Formula::disj(ff(l, gamma, w, memo), ff(r, gamma, w, memo)),
            e.clone(),
        ),
        Formula::Box(b) => {
            let parts: Vec<Formula> = (0..gamma.len()).map(|c| ff(b, gamma, c, memo)).collect();
            let all = Formula::big_conj(parts).expect("context is nonempty");
            double_rel_neg(all, e.clone())
        }
    };
    memo.insert((a.clone(), w), out.clone());
    out
}

/// A translation strategy selectable by name.
pub trait Translation: Named + Send + Sync {
    fn source(&self) -> Logic;

    fn target(&self) -> Logic;

    /// Whether [`Translation::translate`] needs a [`TranslationContext`].
    fn needs_context(&self) -> bool {
        false
    }

    fn translate(
        &self,
        f: &Formula,
        ctx: Option<&TranslationContext>,
    ) -> Result<Formula, TranslateError>;

    /// Provably equivalent, usually smaller, form of a translated formula.
    fn simplify(&self, f: &Formula, _ctx: Option<&TranslationContext>) -> Formula {
        f.clone()
    }
}

pub struct Godel;

impl Named for Godel {
    fn name(&self) -> &'static str {
        "godel"
    }

    fn summary(&self) -> &'static str {
        "Goedel translation T from IP into EP"
    }
}

impl Translation for Godel {
    fn source(&self) -> Logic {
        Logic::Ip
    }

    fn target(&self) -> Logic {
        Logic::Ep
    }

    fn translate(
        &self,
        f: &Formula,
        _ctx: Option<&TranslationContext>,
    ) -> Result<Formula, TranslateError> {
        godel_translate(f)
    }
}

pub struct FlaggFriedman;

impl Named for FlaggFriedman {
    fn name(&self) -> &'static str {
        "ff"
    }

    fn summary(&self) -> &'static str {
        "Flagg-Friedman translation from EP into IP relative to (Gamma, E)"
    }
}

impl Translation for FlaggFriedman {
    fn source(&self) -> Logic {
        Logic::Ep
    }

    fn target(&self) -> Logic {
        Logic::Ip
    }

    fn needs_context(&self) -> bool {
        true
    }

    fn translate(
        &self,
        f: &Formula,
        ctx: Option<&TranslationContext>,
    ) -> Result<Formula, TranslateError> {
        let ctx = ctx.ok_or(TranslateError::MissingContext)?;
        Ok(ff_translate(f, ctx))
    }

    fn simplify(&self, f: &Formula, ctx: Option<&TranslationContext>) -> Formula {
        match ctx {
            Some(ctx) => ff_simplify(f, ctx),
            None => f.clone(),
        }
    }
}

/// Registry holding `godel` and `ff`.
pub fn translations() -> Registry<dyn Translation> {
    Registry::<dyn Translation>::new()
        .with(Box::new(Godel))
        .with(Box::new(FlaggFriedman))
}
