use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Serialize, Serializer};

use super::chain::StabChain;
use super::{GroupError, Permutation};

/// Default cap on the number of elements any enumeration may visit.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 100_000;

/// A permutation group given by generators, with a certified stabilizer
/// chain. Points are 0-based.
#[derive(Clone, Debug)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl GroupHandle {
    pub fn trivial(degree: usize) -> Self {
        GroupHandle {
            degree,
            generators: Vec::new(),
            chain: StabChain::new(degree),
        }
    }

    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        let mut g = GroupHandle::trivial(degree);
        for p in generators {
            g.add_generator(p)?;
        }
        Ok(g)
    }

    /// Adds a generator; returns whether the group grew. Redundant
    /// generators are not recorded.
    pub fn add_generator(&mut self, p: Permutation) -> Result<bool, GroupError> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                got: p.degree(),
            });
        }
        let grew = self.chain.add(&p);
        if grew {
            self.generators.push(p);
        }
        Ok(grew)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.chain.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &GroupHandle) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &GroupHandle) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Whether every conjugate of a generator of `self` by a generator of
    /// `over` lies in `self`.
    pub fn is_normalized_by(&self, over: &GroupHandle) -> bool {
        over.generators.iter().all(|x| {
            self.generators
                .iter()
                .all(|h| self.contains(&h.conjugate_by(x)))
        })
    }

    pub fn is_normal_in(&self, over: &GroupHandle) -> bool {
        self.is_subgroup_of(over) && self.is_normalized_by(over)
    }

    /// Sorted orbit of a point.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, GroupError> {
        if point >= self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut stack = vec![point];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        Ok((0..self.degree).filter(|&x| seen[x]).collect())
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    /// Errors when the order exceeds `bound`.
    pub fn check_enumerable(&self, bound: u64) -> Result<u64, GroupError> {
        let order = self.order();
        match order.to_u64() {
            Some(o) if o <= bound => Ok(o),
            _ => Err(GroupError::EnumerationBound {
                order: order.to_string(),
                bound,
            }),
        }
    }

    /// Every element, in chain order.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>, GroupError> {
        let order = self.check_enumerable(bound)?;
        let mut out = Vec::with_capacity(order as usize);
        self.chain.for_each_element(|p| out.push(p.clone()));
        Ok(out)
    }

    pub fn for_each_element(
        &self,
        bound: u64,
        visit: impl FnMut(&Permutation),
    ) -> Result<(), GroupError> {
        self.check_enumerable(bound)?;
        self.chain.for_each_element(visit);
        Ok(())
    }

    /// Smallest subgroup of `self` containing `seeds` and normalized by `self`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<GroupHandle, GroupError> {
        if let Some(bad) = seeds.iter().position(|s| !self.contains(s)) {
            return Err(GroupError::NotInGroup(bad));
        }
        let mut closure = GroupHandle::trivial(self.degree);
        let mut queue: Vec<Permutation> = Vec::new();
        for s in seeds {
            if closure.add_generator(s.clone())? {
                queue.push(s.clone());
            }
        }
        while let Some(h) = queue.pop() {
            for x in &self.generators {
                let c = h.conjugate_by(x);
                if closure.add_generator(c.clone())? {
                    queue.push(c);
                }
            }
        }
        Ok(closure)
    }

    pub fn derived_subgroup(&self) -> GroupHandle {
        let mut commutators = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = Permutation::commutator(a, b);
                if !c.is_identity() {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure(&commutators)
            .expect("commutators of generators lie in the group")
    }

    /// Invariants `p^e` of the abelianization `G/[G,G]`, sorted.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let derived = self.derived_subgroup();
        let quotient = self.order() / derived.order();
        let mut invariants = Vec::new();
        for (p, total) in factorize(&quotient) {
            // s[k] = log_p |A / A^(p^k)| = Σ min(e_i, k)
            let mut s = vec![0u32];
            let mut power = BigUint::one();
            while *s.last().expect("nonempty") < total {
                power *= p;
                let mut sub = derived.clone();
                for g in &self.generators {
                    let gp = g.pow(power.to_u64().expect("exponent fits in u64"));
                    sub.add_generator(gp).expect("same degree");
                }
                let index = self.order() / sub.order();
                s.push(log_exact(&index, p));
            }
            // at_least[k] = #{e_i >= k}
            let at_least: Vec<u32> = (1..s.len()).map(|k| s[k] - s[k - 1]).chain([0]).collect();
            for k in 1..s.len() {
                let exactly = at_least[k - 1] - at_least[k];
                for _ in 0..exactly {
                    invariants.push(p.pow(k as u32));
                }
            }
        }
        invariants.sort_unstable();
        invariants
    }

    /// Exact distribution of cycle types, counts keyed by sorted partitions.
    pub fn cycle_type_counts(&self, bound: u64) -> Result<BTreeMap<Vec<usize>, u64>, GroupError> {
        let mut counts = BTreeMap::new();
        self.for_each_element(bound, |p| *counts.entry(p.cycle_type()).or_insert(0) += 1)?;
        Ok(counts)
    }
}

fn factorize(n: &BigUint) -> Vec<(u64, u32)> {
    let mut n = n.to_u64().expect("abelianization order fits in u64");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `log_p` of the `p`-part of `n`.
fn log_exact(n: &BigUint, p: u64) -> u32 {
    let mut n = n.clone();
    let p = BigUint::from(p);
    let mut e = 0;
    while (&n % &p) == BigUint::ZERO && n > BigUint::ZERO {
        n /= &p;
        e += 1;
    }
    e
}

impl Serialize for GroupHandle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            degree: usize,
            order: String,
            generators: &'a [Permutation],
        }
        Repr {
            degree: self.degree,
            order: self.order().to_string(),
            generators: &self.generators,
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, text: &str) -> Permutation {
        Permutation::parse_cycles(n, text).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        let s3 = GroupHandle::new(3, vec![p(3, "(1 2)"), p(3, "(1 2 3)")]).unwrap();
        assert_eq!(s3.order(), BigUint::from(6u32));
        let s6 = GroupHandle::new(6, vec![p(6, "(1 2)"), p(6, "(1 2 3 4 5 6)")]).unwrap();
        assert_eq!(s6.order(), BigUint::from(720u32));
        assert!(s6.contains(&p(6, "(2 5)(3 4 6)")));
    }

    #[test]
    fn orbits() {
        let g = GroupHandle::new(4, vec![p(4, "(1 2 3)")]).unwrap();
        assert_eq!(g.orbit(3).unwrap(), vec![3]);
        assert_eq!(g.orbit(0).unwrap(), vec![0, 1, 2]);
        assert!(!g.is_transitive());
        assert_eq!(GroupHandle::trivial(3).orbit(0).unwrap(), vec![0]);
        assert!(g.orbit(4).is_err());
    }

    #[test]
    fn enumeration_matches_order() {
        let g = GroupHandle::new(5, vec![p(5, "(1 2 3)"), p(5, "(3 4 5)")]).unwrap();
        let elems = g.elements(1000).unwrap();
        assert_eq!(elems.len(), 60);
        let unique: std::collections::HashSet<_> = elems.iter().collect();
        assert_eq!(unique.len(), 60);
        assert!(g.elements(10).is_err());
    }

    #[test]
    fn closures_and_abelianization() {
        let s3 = GroupHandle::new(3, vec![p(3, "(1 2)"), p(3, "(1 2 3)")]).unwrap();
        assert_eq!(s3.abelian_invariants(), vec![2]);
        assert_eq!(s3.derived_subgroup().order(), BigUint::from(3u32));
        let c4c2 = GroupHandle::new(6, vec![p(6, "(1 2 3 4)"), p(6, "(5 6)")]).unwrap();
        assert!(c4c2.derived_subgroup().is_trivial());
        assert_eq!(c4c2.abelian_invariants(), vec![2, 4]);
        let c6 = GroupHandle::new(5, vec![p(5, "(1 2 3)(4 5)")]).unwrap();
        assert_eq!(c6.abelian_invariants(), vec![2, 3]);
        assert!(s3.normal_closure(&[p(3, "()"), Permutation::identity(3).compose(&p(3, "(1 2)"))]).is_ok());
        let a3 = GroupHandle::new(3, vec![p(3, "(1 2 3)")]).unwrap();
        assert_eq!(a3.normal_closure(&[p(3, "(1 2)")]).unwrap_err(), GroupError::NotInGroup(0));
    }

    #[test]
    fn cycle_types_of_s3() {
        let s3 = GroupHandle::new(3, vec![p(3, "(1 2)"), p(3, "(1 2 3)")]).unwrap();
        let counts = s3.cycle_type_counts(100).unwrap();
        assert_eq!(counts[&vec![1, 1, 1]], 1);
        assert_eq!(counts[&vec![1, 2]], 3);
        assert_eq!(counts[&vec![3]], 2);
    }
}
