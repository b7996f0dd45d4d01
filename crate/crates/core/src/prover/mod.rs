//! Decision procedures for IP and EP behind a common [`Prover`] trait.

pub mod ep;
pub mod ip;

use serde::{Deserialize, Serialize};

pub use ep::{
    check_kripke, ep_provable, prove_ep, prove_ep_with, EpProofResult, KripkeEval, KripkeModel,
};
pub use ip::{
    check_trace, equiv_ip, ip_provable, prove_ip, prove_ip_with, trace_is_valid, IpRule,
    ProofResult, TraceError, TraceNode, TraceSequent,
};

use crate::error::ProverError;
use crate::registry::{Named, Registry};
use crate::syntax::{Logic, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Provable,
    NotProvable,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes_expanded: u64,
    pub max_depth: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ProveOptions {
    /// Keep a derivation for Provable IP verdicts.
    pub trace: bool,
    /// Abort with [`ProverError::NodeCapExceeded`] past this many expansions.
    pub node_cap: Option<u64>,
}

/// Uniform verdict record, as emitted by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub logic: Logic,
    pub sequent: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceNode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub countermodel: Option<KripkeModel>,
    pub stats: Stats,
}

pub trait Prover: Named + Send + Sync {
    fn logic(&self) -> Logic;

    fn decide(&self, s: &Sequent, opts: &ProveOptions) -> Result<Decision, ProverError>;

    /// Re-checks the evidence attached to `d` without rerunning the search.
    /// Returns false when there is no evidence.
    fn certify(&self, s: &Sequent, d: &Decision) -> bool;
}

pub struct IpProver;

impl Named for IpProver {
    fn name(&self) -> &'static str {
        "ip"
    }

    fn summary(&self) -> &'static str {
        "contraction-free sequent calculus for intuitionistic logic"
    }
}

impl Prover for IpProver {
    fn logic(&self) -> Logic {
        Logic::Ip
    }

    fn decide(&self, s: &Sequent, opts: &ProveOptions) -> Result<Decision, ProverError> {
        let r = prove_ip_with(s, opts)?;
        Ok(Decision {
            logic: Logic::Ip,
            sequent: s.to_string(),
            verdict: r.verdict,
            trace: r.trace,
            countermodel: None,
            stats: r.stats,
        })
    }

    fn certify(&self, s: &Sequent, d: &Decision) -> bool {
        d.verdict == Verdict::Provable && d.trace.as_ref().is_some_and(|t| trace_is_valid(t, s))
    }
}

pub struct EpProver;

impl Named for EpProver {
    fn name(&self) -> &'static str {
        "ep"
    }

    fn summary(&self) -> &'static str {
        "S4 tableau with countermodel extraction"
    }
}

impl Prover for EpProver {
    fn logic(&self) -> Logic {
        Logic::Ep
    }

    fn decide(&self, s: &Sequent, opts: &ProveOptions) -> Result<Decision, ProverError> {
        let r = prove_ep_with(s, opts)?;
        Ok(Decision {
            logic: Logic::Ep,
            sequent: s.to_string(),
            verdict: r.verdict,
            trace: None,
            countermodel: r.witness,
            stats: r.stats,
        })
    }

    fn certify(&self, s: &Sequent, d: &Decision) -> bool {
        d.verdict == Verdict::NotProvable
            && d.countermodel
                .as_ref()
                .is_some_and(|m| check_kripke(m, s) == Ok(true))
    }
}

/// Registry holding `ip` and `ep`.
pub fn provers() -> Registry<dyn Prover> {
    Registry::<dyn Prover>::new()
        .with(Box::new(IpProver))
        .with(Box::new(EpProver))
}
