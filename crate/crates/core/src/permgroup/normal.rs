use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::{GroupError, GroupHandle, Permutation};

/// Cap on the number of distinct chief series [`chief_series`] will list.
pub const MAX_CHIEF_SERIES: usize = 10_000;

/// An ascending chain of subgroups, each normal in the next and in the last.
#[derive(Clone, Debug, Serialize)]
pub struct NormalTower {
    pub subgroups: Vec<GroupHandle>,
}

impl NormalTower {
    /// Checks strict inclusions and normality (in the next term and in the
    /// top term) by generator conjugation.
    pub fn verified(subgroups: Vec<GroupHandle>) -> Result<NormalTower, GroupError> {
        let top = subgroups.last().ok_or(GroupError::Precondition("empty tower".into()))?;
        for (i, pair) in subgroups.windows(2).enumerate() {
            let (lower, upper) = (&pair[0], &pair[1]);
            if !lower.is_subgroup_of(upper) || lower.order() >= upper.order() {
                return Err(GroupError::TowerInclusion(i));
            }
            if !lower.is_normalized_by(upper) || !lower.is_normalized_by(top) {
                return Err(GroupError::TowerNormality(i));
            }
        }
        Ok(NormalTower { subgroups })
    }

    pub fn orders(&self) -> Vec<String> {
        self.subgroups.iter().map(|g| g.order().to_string()).collect()
    }

    /// Orders `|N_(i+1) / N_i|` of the successive factors.
    pub fn factor_orders(&self) -> Vec<u64> {
        self.subgroups
            .windows(2)
            .map(|w| {
                (w[1].order() / w[0].order())
                    .to_u64()
                    .expect("factor orders fit in u64")
            })
            .collect()
    }
}

/// Conjugacy classes of an enumerable group, each listed with its
/// representative first. Classes are ordered by first appearance in the
/// enumeration.
pub fn conjugacy_classes(g: &GroupHandle, bound: u64) -> Result<Vec<Vec<Permutation>>, GroupError> {
    let elements = g.elements(bound)?;
    let mut class_of: HashMap<Permutation, usize> = HashMap::with_capacity(elements.len());
    let mut classes: Vec<Vec<Permutation>> = Vec::new();
    for x in elements {
        if class_of.contains_key(&x) {
            continue;
        }
        let id = classes.len();
        class_of.insert(x.clone(), id);
        let mut class = vec![x];
        let mut next = 0;
        while next < class.len() {
            let y = class[next].clone();
            next += 1;
            for s in g.generators() {
                let z = y.conjugate_by(s);
                if !class_of.contains_key(&z) {
                    class_of.insert(z.clone(), id);
                    class.push(z);
                }
            }
        }
        classes.push(class);
    }
    Ok(classes)
}

fn push_distinct(list: &mut Vec<GroupHandle>, h: GroupHandle) {
    if !list.iter().any(|k| k.same_group(&h)) {
        list.push(h);
    }
}

/// Members of `candidates` not strictly containing another member.
fn inclusion_minimal(candidates: Vec<GroupHandle>) -> Vec<GroupHandle> {
    let keep: Vec<bool> = candidates
        .iter()
        .map(|m| {
            !candidates
                .iter()
                .any(|k| k.order() < m.order() && k.is_subgroup_of(m))
        })
        .collect();
    candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

/// All minimal normal subgroups, as normal closures of class
/// representatives filtered by inclusion.
pub fn minimal_normal_subgroups(g: &GroupHandle, bound: u64) -> Result<Vec<GroupHandle>, GroupError> {
    let classes = conjugacy_classes(g, bound)?;
    let mut candidates = Vec::new();
    for class in &classes {
        let rep = &class[0];
        if rep.is_identity() {
            continue;
        }
        push_distinct(&mut candidates, g.normal_closure(std::slice::from_ref(rep))?);
    }
    Ok(inclusion_minimal(candidates))
}

/// Minimal normal subgroups of `g` that strictly contain the normal
/// subgroup `below`, i.e. the preimages of the minimal normal subgroups of
/// `g / below`.
fn minimal_normal_over(
    g: &GroupHandle,
    below: &GroupHandle,
    reps: &[Permutation],
) -> Result<Vec<GroupHandle>, GroupError> {
    let mut candidates = Vec::new();
    for x in reps {
        if below.contains(x) {
            continue;
        }
        let mut seeds = below.generators().to_vec();
        seeds.push(x.clone());
        push_distinct(&mut candidates, g.normal_closure(&seeds)?);
    }
    Ok(inclusion_minimal(candidates))
}

/// Every chief series `1 = N_0 < N_1 < … < N_r = g`.
pub fn chief_series(g: &GroupHandle, bound: u64) -> Result<Vec<NormalTower>, GroupError> {
    let reps: Vec<Permutation> = conjugacy_classes(g, bound)?
        .into_iter()
        .map(|c| c.into_iter().next().expect("classes are nonempty"))
        .collect();
    let mut done = Vec::new();
    let mut stack = vec![vec![GroupHandle::trivial(g.degree())]];
    while let Some(chain) = stack.pop() {
        let last = chain.last().expect("chains start at the trivial group");
        if last.order() == g.order() {
            done.push(NormalTower { subgroups: chain });
            if done.len() > MAX_CHIEF_SERIES {
                return Err(GroupError::EnumerationBound {
                    order: g.order().to_string(),
                    bound,
                });
            }
            continue;
        }
        for next in minimal_normal_over(g, last, &reps)? {
            let mut extended = chain.clone();
            extended.push(next);
            stack.push(extended);
        }
    }
    done.reverse();
    Ok(done)
}

pub fn is_unique_chief_series(g: &GroupHandle, bound: u64) -> Result<bool, GroupError> {
    Ok(chief_series(g, bound)?.len() == 1)
}

/// Whether `upper / lower` is elementary abelian (for `lower ⊴ upper`).
pub fn factor_is_elementary_abelian(upper: &GroupHandle, lower: &GroupHandle) -> bool {
    let index = (upper.order() / lower.order())
        .to_u64()
        .expect("factor order fits in u64");
    let Some(p) = prime_of_power(index) else {
        return false;
    };
    let gens = upper.generators();
    gens.iter().all(|a| lower.contains(&a.pow(p)))
        && gens
            .iter()
            .all(|a| gens.iter().all(|b| lower.contains(&Permutation::commutator(a, b))))
}

/// Whether `upper / lower` has no normal subgroup strictly between.
pub fn factor_is_simple(upper: &GroupHandle, lower: &GroupHandle, bound: u64) -> Result<bool, GroupError> {
    let mut proper = false;
    upper.for_each_element(bound, |x| {
        if proper || lower.contains(x) {
            return;
        }
        let mut seeds = lower.generators().to_vec();
        seeds.push(x.clone());
        let m = upper.normal_closure(&seeds).expect("seeds lie in upper");
        if m.order() < upper.order() {
            proper = true;
        }
    })?;
    Ok(!proper)
}

fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}
