use num_bigint::BigUint;
use rand::Rng;

use super::Permutation;

/// One level of the chain: the group `Γ_k` fixing `0..k` pointwise, its
/// generators and a transversal of the orbit of `k`.
#[derive(Clone, Debug)]
struct Level {
    gens: Vec<Permutation>,
    // reps[j] sends k to j
    reps: Vec<Option<Permutation>>,
    rep_inverses: Vec<Option<Permutation>>,
}

/// Deterministic stabilizer chain with base `0, 1, .., N-1` (Knuth's
/// incremental Schreier–Sims). Adding the same generators in the same order
/// always yields the same data.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        let levels = (0..degree)
            .map(|k| {
                let mut reps = vec![None; degree];
                reps[k] = Some(Permutation::identity(degree));
                Level {
                    gens: Vec::new(),
                    rep_inverses: reps.clone(),
                    reps,
                }
            })
            .collect();
        StabChain { degree, levels }
    }

    /// Adds `p` to the group; returns whether the group grew.
    pub fn add(&mut self, p: &Permutation) -> bool {
        if self.contains(p) {
            return false;
        }
        self.add_at(0, p.clone());
        true
    }

    /// Strips `p` through the levels starting at `from`; the residue is the
    /// identity iff `p` lies in `Γ_from`.
    fn sift_from(&self, from: usize, p: &Permutation) -> Option<Permutation> {
        let mut p = p.clone();
        for k in from..self.degree {
            let j = p.apply(k);
            if j == k {
                continue;
            }
            let inv = self.levels[k].rep_inverses[j].as_ref()?;
            p = inv.compose(&p);
        }
        Some(p)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift_from(0, p).is_some_and(|r| r.is_identity())
    }

    fn add_at(&mut self, k: usize, p: Permutation) {
        if k >= self.degree || self.sift_from(k, &p).is_some_and(|r| r.is_identity()) {
            return;
        }
        self.levels[k].gens.push(p.clone());
        let reps: Vec<Permutation> = self.levels[k].reps.iter().flatten().cloned().collect();
        for u in reps {
            self.close(k, p.compose(&u));
        }
    }

    fn close(&mut self, k: usize, p: Permutation) {
        let j = p.apply(k);
        match &self.levels[k].rep_inverses[j] {
            None => {
                self.levels[k].rep_inverses[j] = Some(p.inverse());
                self.levels[k].reps[j] = Some(p.clone());
                let gens = self.levels[k].gens.clone();
                for s in gens {
                    self.close(k, s.compose(&p));
                }
            }
            Some(inv) => {
                let h = inv.compose(&p);
                if !h.is_identity() {
                    self.add_at(k + 1, h);
                }
            }
        }
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels
            .iter()
            .map(|l| l.reps.iter().filter(|r| r.is_some()).count())
            .collect()
    }

    pub fn order(&self) -> BigUint {
        self.orbit_sizes()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, s| acc * BigUint::from(s))
    }

    /// Strong generators: the union of the level generators.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Uniform random element as a product of random transversal entries.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in &self.levels {
            let reps: Vec<&Permutation> = level.reps.iter().flatten().collect();
            if reps.len() > 1 {
                acc = acc.compose(reps[rng.gen_range(0..reps.len())]);
            }
        }
        acc
    }

    /// Calls `visit` once for every group element.
    pub fn for_each_element(&self, mut visit: impl FnMut(&Permutation)) {
        let active: Vec<Vec<&Permutation>> = self
            .levels
            .iter()
            .map(|l| l.reps.iter().flatten().collect::<Vec<_>>())
            .filter(|r| r.len() > 1)
            .collect();
        fn walk<'a>(
            active: &[Vec<&'a Permutation>],
            acc: &Permutation,
            visit: &mut dyn FnMut(&Permutation),
        ) {
            match active.split_first() {
                None => visit(acc),
                Some((reps, rest)) => {
                    for r in reps {
                        walk(rest, &acc.compose(r), visit);
                    }
                }
            }
        }
        walk(&active, &Permutation::identity(self.degree), &mut visit);
    }
}
