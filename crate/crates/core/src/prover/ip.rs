//! Decision procedure for intuitionistic propositional derivability.
//!
//! The engine is the contraction-free sequent calculus G4ip: left
//! implication is split four ways by the shape of its antecedent, so every
//! backward rule application shrinks the sequent under a multiset ordering
//! and search terminates without loop checks. Invertible rules are applied
//! eagerly; only right disjunction and a left `(C -> D) -> B` may backtrack.
//!
//! Formulas are hash-consed into an arena so sequents are sorted id slices,
//! and every decided sequent is memoized for the duration of one query.
//! Before a sequent is expanded it is evaluated in a small finite chain over
//! the query's atoms; a refuting valuation settles it as unprovable at once.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ProveOptions, Stats, Verdict};
use crate::error::ProverError;
use crate::syntax::json::{as_text, as_text_vec};
use crate::syntax::{Formula, Logic, Sequent};

/// Rules of the calculus, as named in traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IpRule {
    /// `Gamma, A |- A`
    Ax,
    /// `Gamma, _|_ |- G`
    BotL,
    AndR,
    AndL,
    OrR1,
    OrR2,
    OrL,
    ImpR,
    /// `p -> B` with `p` in context: replace by `B`.
    ImpLAtom,
    /// `_|_ -> B` is dropped.
    ImpLFalsum,
    /// `(C /\ D) -> B` becomes `C -> D -> B`.
    ImpLAnd,
    /// `(C \/ D) -> B` becomes `C -> B` and `D -> B`.
    ImpLOr,
    /// `(C -> D) -> B`: prove `C -> D` from `D -> B`, then use `B`.
    ImpLImp,
}

/// Context-and-goal pair as it appears in a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSequent {
    #[serde(with = "as_text_vec")]
    pub assumptions: Vec<Formula>,
    #[serde(with = "as_text")]
    pub goal: Formula,
}

/// One node of a sequent-calculus derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub rule: IpRule,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_text")]
    pub principal: Option<Formula>,
    pub conclusion: TraceSequent,
    /// Shared where the search reused a subderivation; serialized as a tree.
    #[serde(default)]
    pub premises: Vec<Arc<TraceNode>>,
}

mod opt_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::syntax::{parse, print, Formula, Logic};

    pub fn serialize<S: Serializer>(f: &Option<Formula>, s: S) -> Result<S::Ok, S::Error> {
        match f {
            Some(f) => s.serialize_some(&print(f)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Formula>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse(&t, Logic::Ep).map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl TraceNode {
    /// Node count of the tree form, saturating at `usize::MAX`.
    pub fn size(&self) -> usize {
        fn go(n: &TraceNode, seen: &mut HashMap<*const TraceNode, usize>) -> usize {
            n.premises.iter().fold(1usize, |acc, p| {
                let k = match seen.get(&Arc::as_ptr(p)) {
                    Some(&k) => k,
                    None => {
                        let k = go(p, seen);
                        seen.insert(Arc::as_ptr(p), k);
                        k
                    }
                };
                acc.saturating_add(k)
            })
        }
        go(self, &mut HashMap::new())
    }

    /// Number of distinct nodes once shared premises are counted once.
    pub fn distinct_nodes(&self) -> usize {
        fn go(n: &TraceNode, seen: &mut HashSet<*const TraceNode>) {
            for p in &n.premises {
                if seen.insert(Arc::as_ptr(p)) {
                    go(p, seen);
                }
            }
        }
        let mut seen = HashSet::new();
        go(self, &mut seen);
        seen.len() + 1
    }
}

/// Verdict of [`prove_ip`], with an optional checkable derivation.
#[derive(Clone, Debug, Serialize)]
pub struct ProofResult {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceNode>,
    pub stats: Stats,
}

impl ProofResult {
    pub fn is_provable(&self) -> bool {
        self.verdict == Verdict::Provable
    }
}

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Atom(u32),
    Falsum,
    Conj(Id, Id),
    Disj(Id, Id),
    Impl(Id, Id),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    atoms: Vec<Arc<str>>,
    atom_ids: HashMap<Arc<str>, u32>,
}

impl Arena {
    fn mk(&mut self, n: Node) -> Id {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    fn intern(&mut self, f: &Formula) -> Id {
        let n = match f {
            Formula::Atom(name) => {
                let next = self.atoms.len() as u32;
                let a = *self.atom_ids.entry(name.clone()).or_insert(next);
                if a == next {
                    self.atoms.push(name.clone());
                }
                Node::Atom(a)
            }
            Formula::Falsum => Node::Falsum,
            Formula::Conj(a, b) => Node::Conj(self.intern(a), self.intern(b)),
            Formula::Disj(a, b) => Node::Disj(self.intern(a), self.intern(b)),
            Formula::Impl(a, b) => Node::Impl(self.intern(a), self.intern(b)),
            Formula::Box(_) => unreachable!("rejected before interning"),
        };
        self.mk(n)
    }

    fn node(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    fn formula(&self, id: Id, cache: &mut HashMap<Id, Formula>) -> Formula {
        if let Some(f) = cache.get(&id) {
            return f.clone();
        }
        let f = match self.node(id) {
            Node::Atom(a) => Formula::Atom(self.atoms[a as usize].clone()),
            Node::Falsum => Formula::Falsum,
            Node::Conj(a, b) => Formula::conj(self.formula(a, cache), self.formula(b, cache)),
            Node::Disj(a, b) => Formula::disj(self.formula(a, cache), self.formula(b, cache)),
            Node::Impl(a, b) => Formula::implies(self.formula(a, cache), self.formula(b, cache)),
        };
        cache.insert(id, f.clone());
        f
    }
}

struct Deriv {
    rule: IpRule,
    principal: Option<Id>,
    ctx: Rc<[Id]>,
    goal: Id,
    premises: Vec<Rc<Deriv>>,
}

struct CapExceeded;

const WORDS: usize = 4;
const MAX_LEVELS: usize = 3;

type Bits = [u64; WORDS];

/// Values of one formula at every valuation into the chain `0 < .. < n-1`:
/// `up[l]` holds the valuations at which the value exceeds `l`.
#[derive(Clone, Copy)]
struct Levels {
    up: [Bits; MAX_LEVELS],
}

/// Finite-chain semantics used to cut unprovable branches.
struct ChainFilter {
    levels: usize,
    all: Bits,
    atoms: Vec<Levels>,
    cache: Vec<Option<Levels>>,
}

fn bit_and(a: &Bits, b: &Bits) -> Bits {
    std::array::from_fn(|i| a[i] & b[i])
}

fn bit_or(a: &Bits, b: &Bits) -> Bits {
    std::array::from_fn(|i| a[i] | b[i])
}

impl ChainFilter {
    /// Largest chain with at most four elements whose valuations over
    /// `atoms` fit in the bitset; `None` if not even the two-element chain does.
    fn new(atoms: usize) -> Option<Self> {
        let capacity = (WORDS * 64) as u64;
        let n = (2..=MAX_LEVELS as u64 + 1)
            .rev()
            .find(|&n| n.checked_pow(atoms as u32).is_some_and(|c| c <= capacity))?;
        let count = n.pow(atoms as u32) as usize;
        let mut all = [0u64; WORDS];
        for v in 0..count {
            all[v / 64] |= 1 << (v % 64);
        }
        let atoms = (0..atoms)
            .map(|a| {
                let mut up = [[0u64; WORDS]; MAX_LEVELS];
                for v in 0..count {
                    let value = (v / (n as usize).pow(a as u32)) % n as usize;
                    for level in up.iter_mut().take(value) {
                        level[v / 64] |= 1 << (v % 64);
                    }
                }
                Levels { up }
            })
            .collect();
        Some(ChainFilter {
            levels: n as usize - 1,
            all,
            atoms,
            cache: Vec::new(),
        })
    }

    fn eval(&mut self, arena: &Arena, id: Id) -> Levels {
        if let Some(Some(l)) = self.cache.get(id as usize) {
            return *l;
        }
        let out = match arena.node(id) {
            Node::Atom(a) => self.atoms[a as usize],
            Node::Falsum => Levels {
                up: [[0; WORDS]; MAX_LEVELS],
            },
            Node::Conj(a, b) => {
                let (a, b) = (self.eval(arena, a), self.eval(arena, b));
                Levels {
                    up: std::array::from_fn(|l| bit_and(&a.up[l], &b.up[l])),
                }
            }
            Node::Disj(a, b) => {
                let (a, b) = (self.eval(arena, a), self.eval(arena, b));
                Levels {
                    up: std::array::from_fn(|l| bit_or(&a.up[l], &b.up[l])),
                }
            }
            Node::Impl(a, b) => {
                let (a, b) = (self.eval(arena, a), self.eval(arena, b));
                let mut le = self.all;
                for l in 0..self.levels {
                    let ok: Bits = std::array::from_fn(|i| !a.up[l][i] | b.up[l][i]);
                    le = bit_and(&le, &ok);
                }
                Levels {
                    up: std::array::from_fn(|l| {
                        if l < self.levels {
                            bit_or(&le, &b.up[l])
                        } else {
                            [0; WORDS]
                        }
                    }),
                }
            }
        };
        if self.cache.len() <= id as usize {
            self.cache.resize(id as usize + 1, None);
        }
        self.cache[id as usize] = Some(out);
        out
    }

    /// Some valuation puts the meet of `ctx` strictly above `goal`.
    fn refutes(&mut self, arena: &Arena, ctx: &[Id], goal: Id) -> bool {
        let g = self.eval(arena, goal);
        let mut meet = [self.all; MAX_LEVELS];
        for &f in ctx {
            let v = self.eval(arena, f);
            for l in 0..self.levels {
                meet[l] = bit_and(&meet[l], &v.up[l]);
            }
        }
        (0..self.levels).any(|l| (0..WORDS).any(|i| meet[l][i] & !g.up[l][i] != 0))
    }
}

type Outcome = Result<Option<Rc<Deriv>>, CapExceeded>;

struct Search {
    arena: Arena,
    memo: HashMap<(Rc<[Id]>, Id), Option<Rc<Deriv>>>,
    filter: Option<ChainFilter>,
    expanded: u64,
    max_depth: usize,
    cap: Option<u64>,
}

/// Sorted, deduplicated context.
fn norm(mut v: Vec<Id>) -> Rc<[Id]> {
    v.sort_unstable();
    v.dedup();
    v.into()
}

fn replace(ctx: &[Id], drop: Id, add: &[Id]) -> Rc<[Id]> {
    let mut v: Vec<Id> = ctx.iter().copied().filter(|&x| x != drop).collect();
    v.extend_from_slice(add);
    norm(v)
}

fn extend(ctx: &[Id], add: Id) -> Rc<[Id]> {
    let mut v = ctx.to_vec();
    v.push(add);
    norm(v)
}

impl Search {
    fn prove(&mut self, ctx: Rc<[Id]>, goal: Id, depth: usize) -> Outcome {
        let key = (ctx.clone(), goal);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.expanded += 1;
        if self.cap.is_some_and(|c| self.expanded > c) {
            return Err(CapExceeded);
        }
        self.max_depth = self.max_depth.max(depth);
        let refuted = match self.filter.as_mut() {
            Some(f) => f.refutes(&self.arena, &ctx, goal),
            None => false,
        };
        let out = if refuted {
            None
        } else {
            self.expand(&ctx, goal, depth + 1)?
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn done(
        &self,
        rule: IpRule,
        principal: Option<Id>,
        ctx: &Rc<[Id]>,
        goal: Id,
        premises: Vec<Rc<Deriv>>,
    ) -> Option<Rc<Deriv>> {
        Some(Rc::new(Deriv {
            rule,
            principal,
            ctx: ctx.clone(),
            goal,
            premises,
        }))
    }

    /// Single-premise step: the conclusion holds iff the premise does.
    fn step(
        &mut self,
        rule: IpRule,
        principal: Option<Id>,
        ctx: &Rc<[Id]>,
        goal: Id,
        premise: (Rc<[Id]>, Id),
        depth: usize,
    ) -> Outcome {
        Ok(match self.prove(premise.0, premise.1, depth)? {
            Some(p) => self.done(rule, principal, ctx, goal, vec![p]),
            None => None,
        })
    }

    fn both(
        &mut self,
        rule: IpRule,
        principal: Option<Id>,
        ctx: &Rc<[Id]>,
        goal: Id,
        first: (Rc<[Id]>, Id),
        second: (Rc<[Id]>, Id),
        depth: usize,
    ) -> Outcome {
        let Some(a) = self.prove(first.0, first.1, depth)? else {
            return Ok(None);
        };
        let Some(b) = self.prove(second.0, second.1, depth)? else {
            return Ok(None);
        };
        Ok(self.done(rule, principal, ctx, goal, vec![a, b]))
    }

    fn expand(&mut self, ctx: &Rc<[Id]>, goal: Id, depth: usize) -> Outcome {
        let falsum = self.arena.mk(Node::Falsum);
        if ctx.binary_search(&goal).is_ok() {
            return Ok(self.done(IpRule::Ax, None, ctx, goal, vec![]));
        }
        if ctx.binary_search(&falsum).is_ok() {
            return Ok(self.done(IpRule::BotL, None, ctx, goal, vec![]));
        }
        if let Node::Impl(a, b) = self.arena.node(goal) {
            let premise = (extend(ctx, a), b);
            return self.step(IpRule::ImpR, None, ctx, goal, premise, depth);
        }

        // Invertible single-premise left rules.
        for &f in ctx.iter() {
            let (rule, next) = match self.arena.node(f) {
                Node::Conj(a, b) => (IpRule::AndL, replace(ctx, f, &[a, b])),
                Node::Impl(x, b) => match self.arena.node(x) {
                    Node::Falsum => (IpRule::ImpLFalsum, replace(ctx, f, &[])),
                    Node::Atom(_) if ctx.binary_search(&x).is_ok() => {
                        (IpRule::ImpLAtom, replace(ctx, f, &[b]))
                    }
                    Node::Conj(c, d) => {
                        let db = self.arena.mk(Node::Impl(d, b));
                        let cdb = self.arena.mk(Node::Impl(c, db));
                        (IpRule::ImpLAnd, replace(ctx, f, &[cdb]))
                    }
                    Node::Disj(c, d) => {
                        let cb = self.arena.mk(Node::Impl(c, b));
                        let db = self.arena.mk(Node::Impl(d, b));
                        (IpRule::ImpLOr, replace(ctx, f, &[cb, db]))
                    }
                    _ => continue,
                },
                _ => continue,
            };
            return self.step(rule, Some(f), ctx, goal, (next, goal), depth);
        }

        if let Node::Conj(a, b) = self.arena.node(goal) {
            return self.both(
                IpRule::AndR,
                None,
                ctx,
                goal,
                (ctx.clone(), a),
                (ctx.clone(), b),
                depth,
            );
        }

        if let Some(&f) = ctx
            .iter()
            .find(|&&f| matches!(self.arena.node(f), Node::Disj(..)))
        {
            let Node::Disj(a, b) = self.arena.node(f) else {
                unreachable!()
            };
            return self.both(
                IpRule::OrL,
                Some(f),
                ctx,
                goal,
                (replace(ctx, f, &[a]), goal),
                (replace(ctx, f, &[b]), goal),
                depth,
            );
        }

        // Non-invertible choices.
        if let Node::Disj(a, b) = self.arena.node(goal) {
            if let Some(d) = self.step(IpRule::OrR1, None, ctx, goal, (ctx.clone(), a), depth)? {
                return Ok(Some(d));
            }
            if let Some(d) = self.step(IpRule::OrR2, None, ctx, goal, (ctx.clone(), b), depth)? {
                return Ok(Some(d));
            }
        }
        let candidates: Vec<(Id, Id, Id, Id)> = ctx
            .iter()
            .filter_map(|&f| match self.arena.node(f) {
                Node::Impl(x, b) => match self.arena.node(x) {
                    Node::Impl(c, d) => Some((f, c, d, b)),
                    _ => None,
                },
                _ => None,
            })
            .collect();
        for (f, c, d, b) in candidates {
            let cd = self.arena.mk(Node::Impl(c, d));
            let db = self.arena.mk(Node::Impl(d, b));
            let left = (replace(ctx, f, &[db]), cd);
            let right = (replace(ctx, f, &[b]), goal);
            if let Some(d) = self.both(IpRule::ImpLImp, Some(f), ctx, goal, left, right, depth)? {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    fn export(&self, d: &Rc<Deriv>, cache: &mut ExportCache) -> Arc<TraceNode> {
        if let Some(t) = cache.nodes.get(&Rc::as_ptr(d)) {
            return t.clone();
        }
        let premises = d.premises.iter().map(|p| self.export(p, cache)).collect();
        let f = &mut cache.formulas;
        let node = Arc::new(TraceNode {
            rule: d.rule,
            principal: d.principal.map(|p| self.arena.formula(p, f)),
            conclusion: TraceSequent {
                assumptions: d.ctx.iter().map(|&i| self.arena.formula(i, f)).collect(),
                goal: self.arena.formula(d.goal, f),
            },
            premises,
        });
        cache.nodes.insert(Rc::as_ptr(d), node.clone());
        node
    }
}

#[derive(Default)]
struct ExportCache {
    formulas: HashMap<Id, Formula>,
    nodes: HashMap<*const Deriv, Arc<TraceNode>>,
}

/// Decides `s` with default options (no trace, no node cap).
pub fn prove_ip(s: &Sequent) -> Result<ProofResult, ProverError> {
    prove_ip_with(s, &ProveOptions::default())
}

pub fn prove_ip_with(s: &Sequent, opts: &ProveOptions) -> Result<ProofResult, ProverError> {
    if !(s.goal.is_ip() && s.assumptions.iter().all(Formula::is_ip)) {
        return Err(ProverError::WrongLogic { logic: Logic::Ip });
    }
    let mut search = Search {
        arena: Arena::default(),
        memo: HashMap::new(),
        filter: None,
        expanded: 0,
        max_depth: 0,
        cap: opts.node_cap,
    };
    let ctx: Vec<Id> = s
        .assumptions
        .iter()
        .map(|a| search.arena.intern(a))
        .collect();
    let goal = search.arena.intern(&s.goal);
    search.filter = ChainFilter::new(search.arena.atoms.len());
    let outcome = search
        .prove(norm(ctx), goal, 0)
        .map_err(|_| ProverError::NodeCapExceeded(opts.node_cap.unwrap_or(0)))?;
    let stats = Stats {
        nodes_expanded: search.expanded,
        max_depth: search.max_depth,
    };
    Ok(match outcome {
        Some(d) => ProofResult {
            verdict: Verdict::Provable,
            trace: opts.trace.then(|| {
                let root = search.export(&d, &mut ExportCache::default());
                Arc::unwrap_or_clone(root)
            }),
            stats,
        },
        None => ProofResult {
            verdict: Verdict::NotProvable,
            trace: None,
            stats,
        },
    })
}

/// `assumptions |- goal` in IP.
pub fn ip_provable(assumptions: &[Formula], goal: &Formula) -> Result<bool, ProverError> {
    let s = Sequent::new(assumptions.to_vec(), goal.clone(), Logic::Ip)?;
    Ok(prove_ip(&s)?.is_provable())
}

/// `a -||- b` in IP.
pub fn equiv_ip(a: &Formula, b: &Formula) -> Result<bool, ProverError> {
    Ok(ip_provable(std::slice::from_ref(a), b)? && ip_provable(std::slice::from_ref(b), a)?)
}

/// Why a trace was rejected, with the path of premise indices to the node.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid trace at node {path:?}: {message}")]
pub struct TraceError {
    pub path: Vec<usize>,
    pub message: String,
}

/// Checks `trace` independently of the search: every node must be an instance
/// of an [`IpRule`] and the root must conclude `s` (contexts compared as sets).
pub fn check_trace(trace: &TraceNode, s: &Sequent) -> Result<(), TraceError> {
    let want: BTreeSet<&Formula> = s.assumptions.iter().collect();
    let got: BTreeSet<&Formula> = trace.conclusion.assumptions.iter().collect();
    if want != got || trace.conclusion.goal != s.goal {
        return Err(TraceError {
            path: vec![],
            message: format!("root concludes a different sequent than `{s}`"),
        });
    }
    let mut path = Vec::new();
    check_node(trace, &mut path, &mut HashSet::new())
}

/// Boolean form of [`check_trace`].
pub fn trace_is_valid(trace: &TraceNode, s: &Sequent) -> bool {
    check_trace(trace, s).is_ok()
}

/// Shared premises are checked once; `path` locates the first occurrence.
fn check_node(
    node: &TraceNode,
    path: &mut Vec<usize>,
    checked: &mut HashSet<*const TraceNode>,
) -> Result<(), TraceError> {
    check_rule(node).map_err(|message| TraceError {
        path: path.clone(),
        message,
    })?;
    for (i, p) in node.premises.iter().enumerate() {
        if checked.insert(Arc::as_ptr(p)) {
            path.push(i);
            check_node(p, path, checked)?;
            path.pop();
        }
    }
    Ok(())
}

fn check_rule(node: &TraceNode) -> Result<(), String> {
    use Formula as F;

    let ctx: BTreeSet<Formula> = node.conclusion.assumptions.iter().cloned().collect();
    let goal = &node.conclusion.goal;
    let prem = &node.premises;
    let arity = |n: usize| {
        if prem.len() == n {
            Ok(())
        } else {
            Err(format!(
                "{:?} needs {n} premises, found {}",
                node.rule,
                prem.len()
            ))
        }
    };
    let set =
        |p: &TraceNode| -> BTreeSet<Formula> { p.conclusion.assumptions.iter().cloned().collect() };
    let expect = |p: &TraceNode, c: &BTreeSet<Formula>, g: &Formula| {
        if &set(p) == c && &p.conclusion.goal == g {
            Ok(())
        } else {
            Err(format!("{:?} premise does not match", node.rule))
        }
    };
    let principal = || -> Result<&Formula, String> {
        let p = node
            .principal
            .as_ref()
            .ok_or_else(|| format!("{:?} needs a principal formula", node.rule))?;
        if ctx.contains(p) {
            Ok(p)
        } else {
            Err(format!("principal `{p}` not in context"))
        }
    };
    let without = |p: &Formula, add: &[Formula]| {
        let mut c = ctx.clone();
        c.remove(p);
        c.extend(add.iter().cloned());
        c
    };

    match node.rule {
        IpRule::Ax => {
            arity(0)?;
            if !ctx.contains(goal) {
                return Err("axiom goal not among assumptions".into());
            }
        }
        IpRule::BotL => {
            arity(0)?;
            if !ctx.contains(&F::Falsum) {
                return Err("no _|_ among assumptions".into());
            }
        }
        IpRule::ImpR => {
            arity(1)?;
            let F::Impl(a, b) = goal else {
                return Err("ImpR on a non-implication".into());
            };
            let mut c = ctx.clone();
            c.insert((**a).clone());
            expect(&prem[0], &c, b)?;
        }
        IpRule::AndR => {
            arity(2)?;
            let F::Conj(a, b) = goal else {
                return Err("AndR on a non-conjunction".into());
            };
            expect(&prem[0], &ctx, a)?;
            expect(&prem[1], &ctx, b)?;
        }
        IpRule::OrR1 | IpRule::OrR2 => {
            arity(1)?;
            let F::Disj(a, b) = goal else {
                return Err("OrR on a non-disjunction".into());
            };
            let side = if node.rule == IpRule::OrR1 { a } else { b };
            expect(&prem[0], &ctx, side)?;
        }
        IpRule::AndL => {
            arity(1)?;
            let p = principal()?;
            let F::Conj(a, b) = p else {
                return Err("AndL principal is not a conjunction".into());
            };
            expect(&prem[0], &without(p, &[(**a).clone(), (**b).clone()]), goal)?;
        }
        IpRule::OrL => {
            arity(2)?;
            let p = principal()?;
            let F::Disj(a, b) = p else {
                return Err("OrL principal is not a disjunction".into());
            };
            expect(&prem[0], &without(p, &[(**a).clone()]), goal)?;
            expect(&prem[1], &without(p, &[(**b).clone()]), goal)?;
        }
        IpRule::ImpLFalsum => {
            arity(1)?;
            let p = principal()?;
            if !matches!(p, F::Impl(x, _) if **x == F::Falsum) {
                return Err("ImpLFalsum principal is not `_|_ -> B`".into());
            }
            expect(&prem[0], &without(p, &[]), goal)?;
        }
        IpRule::ImpLAtom => {
            arity(1)?;
            let p = principal()?;
            let F::Impl(x, b) = p else {
                return Err("ImpLAtom principal is not an implication".into());
            };
            if !matches!(**x, F::Atom(_)) || !ctx.contains(&**x) {
                return Err("ImpLAtom antecedent is not an atom in context".into());
            }
            expect(&prem[0], &without(p, &[(**b).clone()]), goal)?;
        }
        IpRule::ImpLAnd => {
            arity(1)?;
            let p = principal()?;
            let F::Impl(x, b) = p else {
                return Err("ImpLAnd principal is not an implication".into());
            };
            let F::Conj(c, d) = &**x else {
                return Err("ImpLAnd antecedent is not a conjunction".into());
            };
            let curried = F::Impl(c.clone(), Arc::new(F::Impl(d.clone(), b.clone())));
            expect(&prem[0], &without(p, &[curried]), goal)?;
        }
        IpRule::ImpLOr => {
            arity(1)?;
            let p = principal()?;
            let F::Impl(x, b) = p else {
                return Err("ImpLOr principal is not an implication".into());
            };
            let F::Disj(c, d) = &**x else {
                return Err("ImpLOr antecedent is not a disjunction".into());
            };
            let cb = F::Impl(c.clone(), b.clone());
            let db = F::Impl(d.clone(), b.clone());
            expect(&prem[0], &without(p, &[cb, db]), goal)?;
        }
        IpRule::ImpLImp => {
            arity(2)?;
            let p = principal()?;
            let F::Impl(x, b) = p else {
                return Err("ImpLImp principal is not an implication".into());
            };
            let F::Impl(_, d) = &**x else {
                return Err("ImpLImp antecedent is not an implication".into());
            };
            let db = F::Impl(d.clone(), b.clone());
            expect(&prem[0], &without(p, &[db]), x)?;
            expect(&prem[1], &without(p, &[(**b).clone()]), goal)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, parse_sequent};

    fn seq(s: &str) -> Sequent {
        parse_sequent(s, Logic::Ip).unwrap()
    }

    fn traced(s: &Sequent) -> ProofResult {
        prove_ip_with(
            s,
            &ProveOptions {
                trace: true,
                node_cap: None,
            },
        )
        .unwrap()
    }

    #[test]
    fn double_negation_introduction_instance() {
        let s = seq("p |- (p -> q) -> q");
        let r = traced(&s);
        assert_eq!(r.verdict, Verdict::Provable);
        check_trace(r.trace.as_ref().unwrap(), &s).unwrap();
    }

    #[test]
    fn relative_double_negation_elimination_fails() {
        let r = prove_ip(&seq("|- ((p -> q) -> q) -> p")).unwrap();
        assert_eq!(r.verdict, Verdict::NotProvable);
        assert!(r.trace.is_none());
    }

    #[test]
    fn ex_falso() {
        assert!(prove_ip(&seq("_|_ |- p")).unwrap().is_provable());
    }

    #[test]
    fn classical_principles_fail() {
        for s in [
            "|- p \\/ ~p",
            "|- ~~p -> p",
            "|- ((p -> q) -> p) -> p",
            "|- (p -> q) \\/ (q -> p)",
            "|- (~p -> q \\/ r) -> (~p -> q) \\/ (~p -> r)",
        ] {
            assert!(!prove_ip(&seq(s)).unwrap().is_provable(), "{s}");
        }
    }

    #[test]
    fn intuitionistic_theorems_hold() {
        for s in [
            "|- ~~(p \\/ ~p)",
            "|- ~~~p -> ~p",
            "|- (p -> q) -> (q -> r) -> p -> r",
            "|- (p \\/ q -> r) -> (p -> r) /\\ (q -> r)",
            "|- ~~(~~p -> p)",
            "|- ((((p -> q) -> p) -> p) -> q) -> q",
            "p \\/ q, p -> r, q -> r |- r",
        ] {
            let s = seq(s);
            let r = traced(&s);
            assert!(r.is_provable(), "{s}");
            check_trace(r.trace.as_ref().unwrap(), &s).unwrap();
        }
    }

    #[test]
    fn equivalence() {
        let ip = |s: &str| parse(s, Logic::Ip).unwrap();
        assert!(equiv_ip(&ip("((p -> E) -> E) -> E"), &ip("p -> E")).unwrap());
        assert!(equiv_ip(&ip("p"), &ip("p")).unwrap());
        assert!(!equiv_ip(&ip("p"), &ip("q")).unwrap());
    }

    #[test]
    fn box_rejected() {
        let s = parse_sequent("|- []p", Logic::Ep).unwrap();
        assert!(matches!(prove_ip(&s), Err(ProverError::WrongLogic { .. })));
    }

    #[test]
    fn chain_filter_size_and_verdicts() {
        assert_eq!(ChainFilter::new(3).unwrap().levels, 3);
        assert_eq!(ChainFilter::new(5).unwrap().levels, 2);
        assert_eq!(ChainFilter::new(8).unwrap().levels, 1);
        assert!(ChainFilter::new(9).is_none());

        let ip = |s: &str| crate::syntax::parse(s, Logic::Ip).unwrap();
        let mut arena = Arena::default();
        let lem = arena.intern(&ip("p \\/ ~p"));
        let peirce = arena.intern(&ip("((p -> q) -> p) -> p"));
        let dn = arena.intern(&ip("~~(p \\/ ~p)"));
        let p = arena.intern(&ip("p"));
        let q = arena.intern(&ip("q"));
        let mut filter = ChainFilter::new(arena.atoms.len()).unwrap();
        assert!(filter.refutes(&arena, &[], lem));
        assert!(filter.refutes(&arena, &[], peirce));
        assert!(!filter.refutes(&arena, &[], dn));
        assert!(!filter.refutes(&arena, &[p, q], p));
        assert!(filter.refutes(&arena, &[p], q));
    }

    #[test]
    fn node_cap_is_enforced() {
        let s = seq("|- ~~(((p -> q) -> p) -> p)");
        let err = prove_ip_with(
            &s,
            &ProveOptions {
                trace: false,
                node_cap: Some(2),
            },
        )
        .unwrap_err();
        assert_eq!(err, ProverError::NodeCapExceeded(2));
    }

    #[test]
    fn forged_traces_rejected() {
        let s = seq("p |- (p -> q) -> q");
        let mut t = traced(&s).trace.unwrap();
        // Root is ImpR; its premise uses ImpLAtom. Swap in a bogus premise goal.
        Arc::make_mut(&mut t.premises[0]).conclusion.goal = parse("r", Logic::Ip).unwrap();
        let err = check_trace(&t, &s).unwrap_err();
        assert_eq!(err.path, Vec::<usize>::new());

        let forged = TraceNode {
            rule: IpRule::ImpLAtom,
            principal: Some(parse("p -> q", Logic::Ip).unwrap()),
            conclusion: TraceSequent {
                assumptions: vec![parse("p -> q", Logic::Ip).unwrap()],
                goal: parse("q", Logic::Ip).unwrap(),
            },
            premises: vec![Arc::new(TraceNode {
                rule: IpRule::Ax,
                principal: None,
                conclusion: TraceSequent {
                    assumptions: vec![parse("q", Logic::Ip).unwrap()],
                    goal: parse("q", Logic::Ip).unwrap(),
                },
                premises: vec![],
            })],
        };
        assert!(!trace_is_valid(&forged, &seq("p -> q |- q")));

        let bare = TraceNode {
            rule: IpRule::Ax,
            principal: None,
            conclusion: TraceSequent {
                assumptions: vec![],
                goal: parse("p -> p", Logic::Ip).unwrap(),
            },
            premises: vec![],
        };
        assert!(!trace_is_valid(&bare, &seq("|- p -> p")));
    }

    #[test]
    fn repeated_subgoals_share_premises() {
        let s = seq("p /\\ q |- (q /\\ p) /\\ (q /\\ p)");
        let t = traced(&s).trace.unwrap();
        assert!(check_trace(&t, &s).is_ok());
        assert!(t.distinct_nodes() < t.size(), "{} {}", t.distinct_nodes(), t.size());
        let json = serde_json::to_value(&t).unwrap();
        let back: TraceNode = serde_json::from_value(json).unwrap();
        assert_eq!(back.size(), t.size());
        assert_eq!(back.distinct_nodes(), back.size());
    }

    #[test]
    fn trace_json_round_trips() {
        let s = seq("p, p -> q |- q /\\ p");
        let t = traced(&s).trace.unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: TraceNode = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        check_trace(&back, &s).unwrap();
    }
}
