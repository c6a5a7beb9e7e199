use rand::Rng;
use serde::Serialize;

use super::{GroupError, GroupHandle, Permutation};

/// Default number of random pairs tried by [`rank2_witness`].
pub const DEFAULT_RANK_ATTEMPTS: usize = 10_000;

/// Two elements generating the whole group.
#[derive(Debug, Clone, Serialize)]
pub struct RankWitness {
    pub x: Permutation,
    pub y: Permutation,
    pub attempts: usize,
}

/// Seeded random search for a generating pair. `Ok(None)` means no witness
/// was found within the budget, which says nothing about the rank.
pub fn rank2_witness<R: Rng + ?Sized>(
    g: &GroupHandle,
    attempts: usize,
    rng: &mut R,
) -> Result<Option<RankWitness>, GroupError> {
    if g.is_trivial() {
        return Err(GroupError::Precondition("the group is trivial".into()));
    }
    let target = g.order();
    for attempt in 1..=attempts {
        let x = g.random_element(rng);
        let y = g.random_element(rng);
        let h = GroupHandle::new(g.degree(), vec![x.clone(), y.clone()])?;
        if h.order() == target {
            return Ok(Some(RankWitness { x, y, attempts: attempt }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn s4_has_a_witness() {
        let s4 = GroupHandle::new(
            4,
            vec![
                Permutation::parse_cycles(4, "(1 2)").unwrap(),
                Permutation::parse_cycles(4, "(2 3)").unwrap(),
                Permutation::parse_cycles(4, "(3 4)").unwrap(),
            ],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let w = rank2_witness(&s4, 100, &mut rng).unwrap().unwrap();
        let h = GroupHandle::new(4, vec![w.x, w.y]).unwrap();
        assert_eq!(h.order(), s4.order());
    }

    #[test]
    fn elementary_abelian_rank_three_has_none() {
        let g = GroupHandle::new(
            6,
            vec![
                Permutation::parse_cycles(6, "(1 2)").unwrap(),
                Permutation::parse_cycles(6, "(3 4)").unwrap(),
                Permutation::parse_cycles(6, "(5 6)").unwrap(),
            ],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(rank2_witness(&g, 50, &mut rng).unwrap().is_none());
        assert!(rank2_witness(&GroupHandle::trivial(3), 5, &mut rng).is_err());
    }
}
