//! S4 decision procedure: a labelled tableau over negation normal form.
//!
//! `A1, ..., An |- G` holds iff `{A1, ..., An, ~G}` is unsatisfiable at a
//! single world of some reflexive, transitive model (local consequence).
//! Worlds are saturated with conjunction and box-elimination, disjunctions
//! are branched depth-first, and each diamond opens a successor labelled with
//! its body plus every boxed formula of the parent. A successor whose label is
//! already contained in an ancestor's label is linked back to that ancestor.
//! An open tableau is read off as a countermodel after closing the successor
//! relation reflexively and transitively.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{ProveOptions, Stats, Verdict};
use crate::error::{KripkeError, ProverError};
use crate::syntax::{Formula, Sequent};

/// Finite Kripke model with a designated root world.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub worlds: Vec<usize>,
    pub relation: Vec<[usize; 2]>,
    pub valuation: BTreeMap<String, Vec<usize>>,
    pub root: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpProofResult {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<KripkeModel>,
    pub stats: Stats,
}

impl EpProofResult {
    pub fn is_provable(&self) -> bool {
        self.verdict == Verdict::Provable
    }
}

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Nnf {
    Top,
    Bot,
    Lit(u32, bool),
    And(Id, Id),
    Or(Id, Id),
    Box(Id),
    Dia(Id),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Nnf>,
    index: HashMap<Nnf, Id>,
    atoms: Vec<String>,
    atom_ids: HashMap<String, u32>,
    negations: HashMap<Id, Id>,
}

impl Arena {
    fn mk(&mut self, n: Nnf) -> Id {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    fn atom(&mut self, name: &str) -> u32 {
        if let Some(&a) = self.atom_ids.get(name) {
            return a;
        }
        let a = self.atoms.len() as u32;
        self.atoms.push(name.to_string());
        self.atom_ids.insert(name.to_string(), a);
        a
    }

    /// NNF of `f` when `positive`, of `~f` otherwise.
    fn nnf(&mut self, f: &Formula, positive: bool) -> Id {
        let n = match (f, positive) {
            (Formula::Atom(name), _) => Nnf::Lit(self.atom(name), positive),
            (Formula::Falsum, true) => Nnf::Bot,
            (Formula::Falsum, false) => Nnf::Top,
            (Formula::Conj(a, b), true) => Nnf::And(self.nnf(a, true), self.nnf(b, true)),
            (Formula::Conj(a, b), false) => Nnf::Or(self.nnf(a, false), self.nnf(b, false)),
            (Formula::Disj(a, b), true) => Nnf::Or(self.nnf(a, true), self.nnf(b, true)),
            (Formula::Disj(a, b), false) => Nnf::And(self.nnf(a, false), self.nnf(b, false)),
            (Formula::Impl(a, b), true) => Nnf::Or(self.nnf(a, false), self.nnf(b, true)),
            (Formula::Impl(a, b), false) => Nnf::And(self.nnf(a, true), self.nnf(b, false)),
            (Formula::Box(a), true) => Nnf::Box(self.nnf(a, true)),
            (Formula::Box(a), false) => Nnf::Dia(self.nnf(a, false)),
        };
        self.mk(n)
    }

    fn negate(&mut self, id: Id) -> Id {
        if let Some(&n) = self.negations.get(&id) {
            return n;
        }
        let n = match self.nodes[id as usize] {
            Nnf::Top => Nnf::Bot,
            Nnf::Bot => Nnf::Top,
            Nnf::Lit(a, s) => Nnf::Lit(a, !s),
            Nnf::And(a, b) => Nnf::Or(self.negate(a), self.negate(b)),
            Nnf::Or(a, b) => Nnf::And(self.negate(a), self.negate(b)),
            Nnf::Box(a) => Nnf::Dia(self.negate(a)),
            Nnf::Dia(a) => Nnf::Box(self.negate(a)),
        };
        let n = self.mk(n);
        self.negations.insert(id, n);
        self.negations.insert(n, id);
        n
    }
}

enum Succ {
    Child(WorldTree),
    /// Back edge to the ancestor at this depth of the current path.
    Ancestor(usize),
}

struct WorldTree {
    label: Vec<Id>,
    succs: Vec<Succ>,
}

struct CapExceeded;

struct Tableau {
    arena: Arena,
    unsat: HashSet<Vec<Id>>,
    expanded: u64,
    max_depth: usize,
    cap: Option<u64>,
}

impl Tableau {
    /// Closes `label` under `/\` and `[]A => A`; `None` on a clash.
    fn saturate(&self, label: &[Id]) -> Option<Vec<Id>> {
        let mut set: BTreeSet<Id> = label.iter().copied().collect();
        let mut work: Vec<Id> = label.to_vec();
        while let Some(x) = work.pop() {
            let adds: &[Id] = match &self.arena.nodes[x as usize] {
                Nnf::And(a, b) => &[*a, *b],
                Nnf::Box(a) => std::slice::from_ref(a),
                _ => &[],
            };
            for &y in adds {
                if set.insert(y) {
                    work.push(y);
                }
            }
        }
        for &x in &set {
            match self.arena.nodes[x as usize] {
                Nnf::Bot => return None,
                Nnf::Lit(a, true) => {
                    if let Some(neg) = self.arena.index.get(&Nnf::Lit(a, false)) {
                        if set.contains(neg) {
                            return None;
                        }
                    }
                }
                _ => {}
            }
        }
        Some(set.into_iter().collect())
    }

    fn world(
        &mut self,
        label: Vec<Id>,
        path: &mut Vec<Vec<Id>>,
    ) -> Result<Option<WorldTree>, CapExceeded> {
        if self.unsat.contains(&label) {
            return Ok(None);
        }
        self.expanded += 1;
        if self.cap.is_some_and(|c| self.expanded > c) {
            return Err(CapExceeded);
        }
        self.max_depth = self.max_depth.max(path.len());
        let out = self.open_world(&label, path)?;
        if out.is_none() {
            self.unsat.insert(label);
        }
        Ok(out)
    }

    fn open_world(
        &mut self,
        label: &[Id],
        path: &mut Vec<Vec<Id>>,
    ) -> Result<Option<WorldTree>, CapExceeded> {
        let Some(sat) = self.saturate(label) else {
            return Ok(None);
        };
        let branch = sat
            .iter()
            .find_map(|&x| match self.arena.nodes[x as usize] {
                Nnf::Or(a, b)
                    if sat.binary_search(&a).is_err() && sat.binary_search(&b).is_err() =>
                {
                    Some((a, b))
                }
                _ => None,
            });
        if let Some((a, b)) = branch {
            let left = with(&sat, &[a]);
            if let Some(t) = self.world(left, path)? {
                return Ok(Some(t));
            }
            let not_a = self.arena.negate(a);
            let right = with(&sat, &[b, not_a]);
            return self.world(right, path);
        }

        let boxes: Vec<Id> = sat
            .iter()
            .copied()
            .filter(|&x| matches!(self.arena.nodes[x as usize], Nnf::Box(_)))
            .collect();
        let diamonds: Vec<Id> = sat
            .iter()
            .filter_map(|&x| match self.arena.nodes[x as usize] {
                Nnf::Dia(a) => Some(a),
                _ => None,
            })
            .collect();
        path.push(sat.clone());
        let mut succs = Vec::new();
        for body in diamonds {
            let next = with(&boxes, &[body]);
            if let Some(i) = path.iter().position(|anc| is_subset(&next, anc)) {
                succs.push(Succ::Ancestor(i));
                continue;
            }
            match self.world(next, path) {
                Ok(Some(t)) => succs.push(Succ::Child(t)),
                Ok(None) => {
                    path.pop();
                    return Ok(None);
                }
                Err(e) => {
                    path.pop();
                    return Err(e);
                }
            }
        }
        path.pop();
        Ok(Some(WorldTree { label: sat, succs }))
    }

    fn model(&self, tree: &WorldTree, atoms: &BTreeSet<String>) -> KripkeModel {
        let mut labels: Vec<&[Id]> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        flatten(tree, &mut labels, &mut edges, &mut stack);
        let n = labels.len();

        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &edges {
            reach[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        let relation = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| reach[i][j])
            .map(|(i, j)| [i, j])
            .collect();

        let valuation = atoms
            .iter()
            .map(|name| {
                let lit = self
                    .arena
                    .atom_ids
                    .get(name)
                    .and_then(|&a| self.arena.index.get(&Nnf::Lit(a, true)));
                let worlds = (0..n)
                    .filter(|&w| lit.is_some_and(|l| labels[w].binary_search(l).is_ok()))
                    .collect();
                (name.clone(), worlds)
            })
            .collect();

        KripkeModel {
            worlds: (0..n).collect(),
            relation,
            valuation,
            root: 0,
        }
    }
}

fn flatten<'t>(
    t: &'t WorldTree,
    labels: &mut Vec<&'t [Id]>,
    edges: &mut Vec<(usize, usize)>,
    stack: &mut Vec<usize>,
) -> usize {
    let me = labels.len();
    labels.push(&t.label);
    stack.push(me);
    for s in &t.succs {
        match s {
            Succ::Child(c) => {
                let c = flatten(c, labels, edges, stack);
                edges.push((me, c));
            }
            Succ::Ancestor(depth) => edges.push((me, stack[*depth])),
        }
    }
    stack.pop();
    me
}

fn with(base: &[Id], extra: &[Id]) -> Vec<Id> {
    let mut v = base.to_vec();
    v.extend_from_slice(extra);
    v.sort_unstable();
    v.dedup();
    v
}

fn is_subset(small: &[Id], big: &[Id]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

pub fn prove_ep(s: &Sequent) -> Result<EpProofResult, ProverError> {
    prove_ep_with(s, &ProveOptions::default())
}

/// Decides `s` in S4. Formulas without `Box` are accepted whatever the
/// sequent's logic tag, since IP syntax is a fragment of EP syntax.
pub fn prove_ep_with(s: &Sequent, opts: &ProveOptions) -> Result<EpProofResult, ProverError> {
    let mut tab = Tableau {
        arena: Arena::default(),
        unsat: HashSet::new(),
        expanded: 0,
        max_depth: 0,
        cap: opts.node_cap,
    };
    let mut root: Vec<Id> = s
        .assumptions
        .iter()
        .map(|a| tab.arena.nnf(a, true))
        .collect();
    root.push(tab.arena.nnf(&s.goal, false));
    root.sort_unstable();
    root.dedup();
    let tree = tab
        .world(root, &mut Vec::new())
        .map_err(|_| ProverError::NodeCapExceeded(opts.node_cap.unwrap_or(0)))?;
    let stats = Stats {
        nodes_expanded: tab.expanded,
        max_depth: tab.max_depth,
    };
    Ok(match tree {
        None => EpProofResult {
            verdict: Verdict::Provable,
            witness: None,
            stats,
        },
        Some(t) => {
            let atoms: BTreeSet<String> = s
                .assumptions
                .iter()
                .chain(std::iter::once(&s.goal))
                .flat_map(|f| f.atoms())
                .map(|a| a.to_string())
                .collect();
            EpProofResult {
                verdict: Verdict::NotProvable,
                witness: Some(tab.model(&t, &atoms)),
                stats,
            }
        }
    })
}

/// `assumptions |- goal` in EP.
pub fn ep_provable(assumptions: &[Formula], goal: &Formula) -> bool {
    let s = Sequent {
        assumptions: assumptions.to_vec(),
        goal: goal.clone(),
        logic: crate::syntax::Logic::Ep,
    };
    prove_ep(&s).map(|r| r.is_provable()).unwrap_or(false)
}

/// Truth sets of formulas in a validated model.
pub struct KripkeEval<'m> {
    model: &'m KripkeModel,
    succ: Vec<Vec<usize>>,
    pos: HashMap<usize, usize>,
}

impl<'m> KripkeEval<'m> {
    /// Validates that the relation is a preorder over the declared worlds.
    pub fn new(model: &'m KripkeModel) -> Result<Self, KripkeError> {
        if model.worlds.is_empty() {
            return Err(KripkeError::NoWorlds);
        }
        let mut pos = HashMap::new();
        for (i, &w) in model.worlds.iter().enumerate() {
            if pos.insert(w, i).is_some() {
                return Err(KripkeError::DuplicateWorld(w));
            }
        }
        let n = model.worlds.len();
        let idx = |w: usize| pos.get(&w).copied().ok_or(KripkeError::UnknownWorld(w));
        idx(model.root)?;
        for ws in model.valuation.values() {
            for &w in ws {
                idx(w)?;
            }
        }
        let mut rel = vec![vec![false; n]; n];
        for &[a, b] in &model.relation {
            rel[idx(a)?][idx(b)?] = true;
        }
        for i in 0..n {
            if !rel[i][i] {
                return Err(KripkeError::NotReflexive(model.worlds[i]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !rel[i][j] {
                    continue;
                }
                for k in 0..n {
                    if rel[j][k] && !rel[i][k] {
                        let w = &model.worlds;
                        return Err(KripkeError::NotTransitive(w[i], w[j], w[k]));
                    }
                }
            }
        }
        let succ = rel
            .iter()
            .map(|row| (0..n).filter(|&j| row[j]).collect())
            .collect();
        Ok(KripkeEval { model, succ, pos })
    }

    /// Truth value of `f` at each world, in `model.worlds` order.
    pub fn truth(&self, f: &Formula) -> Vec<bool> {
        let n = self.succ.len();
        match f {
            Formula::Atom(a) => {
                let mut v = vec![false; n];
                for w in self.model.valuation.get(&**a).into_iter().flatten() {
                    v[self.pos[w]] = true;
                }
                v
            }
            Formula::Falsum => vec![false; n],
            Formula::Conj(a, b) => zip(self.truth(a), self.truth(b), |x, y| x && y),
            Formula::Disj(a, b) => zip(self.truth(a), self.truth(b), |x, y| x || y),
            Formula::Impl(a, b) => zip(self.truth(a), self.truth(b), |x, y| !x || y),
            Formula::Box(a) => {
                let inner = self.truth(a);
                self.succ
                    .iter()
                    .map(|ss| ss.iter().all(|&j| inner[j]))
                    .collect()
            }
        }
    }

    pub fn holds_at(&self, f: &Formula, world: usize) -> bool {
        self.pos.get(&world).is_some_and(|&i| self.truth(f)[i])
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

/// `Ok(true)` iff `model` makes every assumption of `s` true and its goal
/// false at the root. Errors if the relation is not reflexive and transitive.
pub fn check_kripke(model: &KripkeModel, s: &Sequent) -> Result<bool, KripkeError> {
    let ev = KripkeEval::new(model)?;
    let root = model.root;
    Ok(s.assumptions.iter().all(|a| ev.holds_at(a, root)) && !ev.holds_at(&s.goal, root))
}
