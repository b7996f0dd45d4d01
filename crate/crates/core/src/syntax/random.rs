//! Seeded formula generation and exhaustive enumeration.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::formula::{Formula, Logic};

/// Stream of random formulas drawn from one seeded RNG.
///
/// Node kinds are weighted; leaf weight grows as the depth budget runs out,
/// so formulas stay small enough for exhaustive prover runs.
pub struct FormulaGen {
    rng: ChaCha8Rng,
    atoms: Vec<String>,
    logic: Logic,
    max_depth: usize,
    max_size: usize,
    falsum_weight: u32,
}

impl FormulaGen {
    /// Panics if `atoms` is empty.
    pub fn new(seed: u64, atoms: &[&str], logic: Logic) -> Self {
        assert!(
            !atoms.is_empty(),
            "formula generator needs at least one atom"
        );
        FormulaGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
            logic,
            max_depth: 4,
            max_size: usize::MAX,
            falsum_weight: 1,
        }
    }

    pub fn max_depth(mut self, d: usize) -> Self {
        self.max_depth = d;
        self
    }

    pub fn max_size(mut self, s: usize) -> Self {
        self.max_size = s.max(1);
        self
    }

    /// Relative weight of `_|_` among leaves; each atom weighs 3.
    pub fn falsum_weight(mut self, w: u32) -> Self {
        self.falsum_weight = w;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn next_formula(&mut self) -> Formula {
        self.gen(self.max_depth, self.max_size)
    }

    fn leaf(&mut self) -> Formula {
        let total = 3 * self.atoms.len() as u32 + self.falsum_weight;
        let pick = self.rng.gen_range(0..total);
        if pick < self.falsum_weight {
            Formula::Falsum
        } else {
            let i = ((pick - self.falsum_weight) / 3) as usize;
            Formula::atom(&self.atoms[i])
        }
    }

    fn gen(&mut self, depth: usize, size: usize) -> Formula {
        if depth == 0 || size <= 1 {
            return self.leaf();
        }
        let modal = self.logic == Logic::Ep;
        let spent = self.max_depth.saturating_sub(depth) as u32;
        let leaf_w = 2 + 2 * spent;
        let box_w = if modal { 3 } else { 0 };
        let (conj_w, disj_w, imp_w) = if size >= 3 { (3, 3, 5) } else { (0, 0, 0) };
        let total = leaf_w + box_w + conj_w + disj_w + imp_w;
        let mut pick = self.rng.gen_range(0..total);
        if pick < leaf_w {
            return self.leaf();
        }
        pick -= leaf_w;
        if pick < box_w {
            return Formula::boxed(self.gen(depth - 1, size - 1));
        }
        pick -= box_w;
        let left_budget = self.rng.gen_range(1..=size - 2);
        let left = self.gen(depth - 1, left_budget);
        let right = self.gen(depth - 1, size - 1 - left.size());
        if pick < conj_w {
            Formula::conj(left, right)
        } else if pick < conj_w + disj_w {
            Formula::disj(left, right)
        } else {
            Formula::implies(left, right)
        }
    }
}

/// A single random formula of depth at most `max_depth`; pure in its arguments.
pub fn random_formula(max_depth: usize, atoms: &[&str], logic: Logic, seed: u64) -> Formula {
    FormulaGen::new(seed, atoms, logic)
        .max_depth(max_depth)
        .next_formula()
}

/// Every formula over `atoms` (and `_|_`) with at most `max_size` nodes,
/// ordered by size and then by construction order.
pub fn enumerate_formulas(max_size: usize, atoms: &[&str], logic: Logic) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    if max_size == 0 {
        return Vec::new();
    }
    by_size[1] = atoms
        .iter()
        .map(|a| Formula::atom(a))
        .chain(std::iter::once(Formula::Falsum))
        .collect();
    for n in 2..=max_size {
        let mut level = Vec::new();
        if logic == Logic::Ep {
            level.extend(by_size[n - 1].iter().cloned().map(Formula::boxed));
        }
        for left_size in 1..n - 1 {
            let right_size = n - 1 - left_size;
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    level.push(Formula::conj(l.clone(), r.clone()));
                    level.push(Formula::disj(l.clone(), r.clone()));
                    level.push(Formula::implies(l.clone(), r.clone()));
                }
            }
        }
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}
