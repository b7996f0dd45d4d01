//! Finite Heyting algebras and algebraic refutation of IP formulas.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Chain,
    Table,
}

/// Heyting algebra on carrier `0..n`, stored as full operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeytingAlgebra {
    kind: AlgebraKind,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    rpc: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
}

/// `0 < 1 < ... < n-1`, where `x -> y` is the top if `x <= y` and `y` otherwise.
pub fn make_chain(n: usize) -> Result<HeytingAlgebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect()
    };
    let h = HeytingAlgebra {
        kind: AlgebraKind::Chain,
        leq: (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect(),
        meet: table(&|x, y| x.min(y)),
        join: table(&|x, y| x.max(y)),
        rpc: table(&|x, y| if x <= y { n - 1 } else { y }),
        top: n - 1,
        bottom: 0,
    };
    h.validate()?;
    Ok(h)
}

impl HeytingAlgebra {
    /// Derives meet, join and relative pseudo-complement from a partial order
    /// given as `leq[x][y]`. Fails unless the order is a bounded lattice in
    /// which every `x -> y` exists.
    pub fn from_order(leq: Vec<Vec<bool>>) -> Result<Self, AlgebraError> {
        let n = leq.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if leq.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::Shape(format!("order must be {n}x{n}")));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(AlgebraError::NotLattice(format!("{x} <= {x} fails")));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(AlgebraError::NotLattice(format!(
                        "{x} and {y} are equivalent"
                    )));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(AlgebraError::NotLattice(format!(
                            "{x} <= {y} <= {z} but not {x} <= {z}"
                        )));
                    }
                }
            }
        }
        // Greatest element of a set, if it has one.
        let greatest = |cands: &[usize]| {
            cands
                .iter()
                .copied()
                .find(|&m| cands.iter().all(|&c| leq[c][m]))
        };
        let least = |cands: &[usize]| {
            cands
                .iter()
                .copied()
                .find(|&m| cands.iter().all(|&c| leq[m][c]))
        };
        let all: Vec<usize> = (0..n).collect();
        let top = greatest(&all).ok_or_else(|| AlgebraError::NotLattice("no top".into()))?;
        let bottom = least(&all).ok_or_else(|| AlgebraError::NotLattice("no bottom".into()))?;

        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| leq[z][x] && leq[z][y]).collect();
                let upper: Vec<usize> = (0..n).filter(|&z| leq[x][z] && leq[y][z]).collect();
                meet[x][y] = greatest(&lower)
                    .ok_or_else(|| AlgebraError::NotLattice(format!("no meet of {x} and {y}")))?;
                join[x][y] = least(&upper)
                    .ok_or_else(|| AlgebraError::NotLattice(format!("no join of {x} and {y}")))?;
            }
        }
        let mut rpc = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let below: Vec<usize> = (0..n).filter(|&w| leq[meet[w][x]][y]).collect();
                rpc[x][y] = greatest(&below).ok_or_else(|| {
                    AlgebraError::NotLattice(format!("no relative pseudo-complement {x} -> {y}"))
                })?;
            }
        }
        let h = HeytingAlgebra {
            kind: AlgebraKind::Table,
            leq,
            meet,
            join,
            rpc,
            top,
            bottom,
        };
        h.validate()?;
        Ok(h)
    }

    /// Builds an algebra from explicit tables, validating them eagerly.
    pub fn from_tables(
        leq: Vec<Vec<bool>>,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
        rpc: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        let derived = HeytingAlgebra::from_order(leq)?;
        let n = derived.size();
        for (name, t) in [("meet", &meet), ("join", &join), ("rpc", &rpc)] {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(AlgebraError::Shape(format!("{name} must be {n}x{n}")));
            }
            if t.iter().flatten().any(|&v| v >= n) {
                return Err(AlgebraError::Shape(format!(
                    "{name} has an entry outside 0..{n}"
                )));
            }
        }
        let h = HeytingAlgebra {
            meet,
            join,
            rpc,
            ..derived
        };
        h.validate()?;
        Ok(h)
    }

    /// Checks bounded-lattice laws and residuation over every triple.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.size();
        let le = |x: usize, y: usize| self.leq[x][y];
        for x in 0..n {
            if !le(self.bottom, x) || !le(x, self.top) {
                return Err(AlgebraError::NotLattice(format!("{x} escapes the bounds")));
            }
            for y in 0..n {
                let (m, j) = (self.meet[x][y], self.join[x][y]);
                if !(le(m, x) && le(m, y) && le(x, j) && le(y, j)) {
                    return Err(AlgebraError::NotLattice(format!("bad bound for {x}, {y}")));
                }
                for z in 0..n {
                    if le(z, x) && le(z, y) && !le(z, m) {
                        return Err(AlgebraError::NotLattice(format!(
                            "meet {x}, {y} not greatest"
                        )));
                    }
                    if le(x, z) && le(y, z) && !le(j, z) {
                        return Err(AlgebraError::NotLattice(format!("join {x}, {y} not least")));
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    if le(w, self.rpc[x][y]) != le(self.meet[w][x], y) {
                        return Err(AlgebraError::Residuation { w, x, y });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    pub fn rpc(&self, x: usize, y: usize) -> usize {
        self.rpc[x][y]
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size()).all(|x| (0..self.size()).all(|y| self.leq(x, y) || self.leq(y, x)))
    }
}

/// Every Heyting algebra with `2..=max_size` elements whose order refines
/// the natural order on indices, with `0` bottom and `n-1` top. Up to
/// isomorphism this covers every finite Heyting algebra of those sizes.
pub fn small_heyting_algebras(max_size: usize) -> Vec<HeytingAlgebra> {
    let mut out = Vec::new();
    for n in 2..=max_size {
        let pairs: Vec<(usize, usize)> = (1..n - 1)
            .flat_map(|i| (i + 1..n - 1).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut leq = vec![vec![false; n]; n];
            for (x, row) in leq.iter_mut().enumerate() {
                row[x] = true;
                row[n - 1] = true;
            }
            for row in &mut leq[0..1] {
                row.iter_mut().for_each(|c| *c = true);
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    leq[i][j] = true;
                }
            }
            if let Ok(h) = HeytingAlgebra::from_order(leq) {
                out.push(h);
            }
        }
    }
    out
}

/// Assignment of carrier elements to atom names.
pub type Valuation = BTreeMap<String, usize>;

/// Value of `f` under `v`; `_|_` denotes the bottom element.
pub fn evaluate(f: &Formula, v: &Valuation, h: &HeytingAlgebra) -> Result<usize, AlgebraError> {
    Ok(match f {
        Formula::Atom(a) => {
            let x = *v
                .get(&**a)
                .ok_or_else(|| AlgebraError::Unassigned(a.to_string()))?;
            if x >= h.size() {
                return Err(AlgebraError::OutOfRange {
                    atom: a.to_string(),
                    value: x,
                    size: h.size(),
                });
            }
            x
        }
        Formula::Falsum => h.bottom,
        Formula::Conj(a, b) => h.meet(evaluate(a, v, h)?, evaluate(b, v, h)?),
        Formula::Disj(a, b) => h.join(evaluate(a, v, h)?, evaluate(b, v, h)?),
        Formula::Impl(a, b) => h.rpc(evaluate(a, v, h)?, evaluate(b, v, h)?),
        Formula::Box(_) => return Err(AlgebraError::Modal),
    })
}

/// A valuation in a finite algebra under which a formula is not top.
#[derive(Clone, Debug, Serialize)]
pub struct Countermodel {
    pub carrier_size: usize,
    pub kind: AlgebraKind,
    pub valuation: Valuation,
    pub value: usize,
    pub top: usize,
    #[serde(with = "crate::syntax::json::as_text")]
    pub formula: Formula,
    #[serde(skip)]
    pub algebra: HeytingAlgebra,
}

impl Countermodel {
    /// Re-evaluates the formula and confirms the stored value is not top.
    pub fn recheck(&self) -> bool {
        self.algebra.validate().is_ok()
            && evaluate(&self.formula, &self.valuation, &self.algebra) == Ok(self.value)
            && self.value != self.algebra.top()
    }
}

/// Postfix program over atom slots, evaluated many times during search.
enum Op {
    Atom(usize),
    Bot,
    Meet,
    Join,
    Rpc,
}

fn compile(f: &Formula, atoms: &[String], out: &mut Vec<Op>) {
    match f {
        Formula::Atom(a) => out.push(Op::Atom(
            atoms
                .iter()
                .position(|x| **x == **a)
                .expect("atom collected"),
        )),
        Formula::Falsum => out.push(Op::Bot),
        Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
            compile(a, atoms, out);
            compile(b, atoms, out);
            out.push(match f {
                Formula::Conj(..) => Op::Meet,
                Formula::Disj(..) => Op::Join,
                _ => Op::Rpc,
            });
        }
        Formula::Box(_) => unreachable!("rejected before compiling"),
    }
}

fn run(prog: &[Op], slots: &[usize], h: &HeytingAlgebra, stack: &mut Vec<usize>) -> usize {
    stack.clear();
    for op in prog {
        let v = match op {
            Op::Atom(i) => slots[*i],
            Op::Bot => h.bottom,
            _ => {
                let y = stack.pop().expect("well-formed program");
                let x = stack.pop().expect("well-formed program");
                match op {
                    Op::Meet => h.meet(x, y),
                    Op::Join => h.join(x, y),
                    _ => h.rpc(x, y),
                }
            }
        };
        stack.push(v);
    }
    stack[0]
}

/// Searches chains of size `2..=max_chain`, then (if `also_lattices`) every
/// Heyting algebra with at most 5 elements. Valuations are enumerated over
/// atoms in sorted order, the last atom varying fastest. Returns the first
/// countermodel found.
pub fn refute(
    f: &Formula,
    max_chain: usize,
    also_lattices: bool,
) -> Result<Option<Countermodel>, AlgebraError> {
    if !f.is_ip() {
        return Err(AlgebraError::Modal);
    }
    let mut algebras = Vec::new();
    for n in 2..=max_chain {
        algebras.push(make_chain(n)?);
    }
    if also_lattices {
        algebras.extend(small_heyting_algebras(5));
    }
    Ok(refute_in(f, &algebras))
}

/// First countermodel to `f` over `algebras`, in order.
pub fn refute_in(f: &Formula, algebras: &[HeytingAlgebra]) -> Option<Countermodel> {
    let atoms: Vec<String> = f.atoms().iter().map(|a| a.to_string()).collect();
    let mut prog = Vec::new();
    compile(f, &atoms, &mut prog);
    let mut stack = Vec::new();
    for h in algebras {
        let n = h.size();
        let mut slots = vec![0usize; atoms.len()];
        loop {
            let value = run(&prog, &slots, h, &mut stack);
            if value != h.top() {
                return Some(Countermodel {
                    carrier_size: n,
                    kind: h.kind(),
                    valuation: atoms.iter().cloned().zip(slots.iter().copied()).collect(),
                    value,
                    top: h.top(),
                    formula: f.clone(),
                    algebra: h.clone(),
                });
            }
            if !advance(&mut slots, n) {
                break;
            }
        }
    }
    None
}

/// Next valuation in odometer order, last slot fastest; false after the last.
fn advance(slots: &mut [usize], n: usize) -> bool {
    for s in slots.iter_mut().rev() {
        *s += 1;
        if *s < n {
            return true;
        }
        *s = 0;
    }
    false
}

/// `(((e -> c) -> c) -> ((b -> c) -> c)) -> e) -> e`, the value of the
/// doubly relatively negated implication with each arrow grouped to the left.
pub fn nested_rpc_left(h: &HeytingAlgebra, b: usize, c: usize, e: usize) -> usize {
    let x = h.rpc(h.rpc(e, c), c);
    let y = h.rpc(h.rpc(b, c), c);
    h.rpc(h.rpc(h.rpc(x, y), e), e)
}

/// The same six arrows grouped to the right inside each parenthesised block
/// and across the whole expression.
pub fn nested_rpc_right(h: &HeytingAlgebra, b: usize, c: usize, e: usize) -> usize {
    let x = h.rpc(e, h.rpc(c, c));
    let y = h.rpc(b, h.rpc(c, c));
    h.rpc(x, h.rpc(y, h.rpc(e, e)))
}
