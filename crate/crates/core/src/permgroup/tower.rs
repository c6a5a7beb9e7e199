use rand::Rng;

use super::{harvest_group, Family, GroupError, GroupHandle, NormalTower, Permutation};
use crate::treewreath::{TreeAddress, TreeShape, WreathElement};

fn bottom_address(shape: TreeShape, v: usize) -> TreeAddress {
    let level = shape.n - 1;
    let mut labels = vec![0; level];
    let mut x = v;
    for slot in labels.iter_mut().rev() {
        *slot = x % shape.d + 1;
        x /= shape.d;
    }
    TreeAddress::from_root_first(labels)
}

fn at_bottom(shape: TreeShape, placed: &[(usize, &Permutation)]) -> Permutation {
    placed
        .iter()
        .fold(WreathElement::identity(shape), |e, &(v, p)| {
            e.with_vertex_perm(&bottom_address(shape, v), p)
                .expect("bottom vertices are internal")
        })
        .to_flat()
}

/// `M_n`: copies of `A_d` at every bottom vertex, generated by the
/// 3-cycles `(1 2 k)`.
pub fn bottom_alternating(shape: TreeShape) -> Result<GroupHandle, GroupError> {
    let d = shape.d;
    let mut gens = Vec::new();
    for v in 0..shape.level_size(shape.n - 1) {
        for k in 3..=d {
            let c = Permutation::from_cycles(d, &[&[1, 2, k]])?;
            gens.push(at_bottom(shape, &[(v, &c)]));
        }
    }
    GroupHandle::new(shape.leaves(), gens)
}

/// `ker(res_(n-1)) ∩ E_n^2`: bottom-only elements whose bottom permutations
/// below each level-`(n-2)` vertex have an even number of odd members.
pub fn bottom_kernel(shape: TreeShape) -> Result<GroupHandle, GroupError> {
    let d = shape.d;
    let mut group = bottom_alternating(shape)?;
    let swap = Permutation::from_cycles(d, &[&[1, 2]])?;
    for v in 0..shape.level_size(shape.n - 1) {
        if v % d + 1 < d {
            group.add_generator(at_bottom(shape, &[(v, &swap), (v + 1, &swap)]))?;
        }
    }
    Ok(group)
}

/// The tower `1 ◁ M_n ◁ ker(res_(n-1)) ◁ E_n^2`, with inclusions and
/// normality verified.
pub fn tower_e<R: Rng + ?Sized>(shape: TreeShape, rng: &mut R) -> Result<NormalTower, GroupError> {
    if shape.d.is_multiple_of(2) {
        return Err(GroupError::Unsupported("the tower requires odd d".into()));
    }
    if shape.n < 2 {
        return Err(GroupError::Precondition("the tower requires n >= 2".into()));
    }
    let top = harvest_group(shape, Family::E { m: 2 }, rng)?.group;
    NormalTower::verified(vec![
        GroupHandle::trivial(shape.leaves()),
        bottom_alternating(shape)?,
        bottom_kernel(shape)?,
        top,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tower_orders_at_depth_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let tower = tower_e(TreeShape::new(3, 2).unwrap(), &mut rng).unwrap();
        let orders: Vec<u64> = tower.subgroups.iter().map(|g| g.order().to_u64().unwrap()).collect();
        assert_eq!(orders, vec![1, 27, 108, 648]);
    }

    #[test]
    fn even_degree_is_unsupported() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(matches!(
            tower_e(TreeShape::new(2, 3).unwrap(), &mut rng),
            Err(GroupError::Unsupported(_))
        ));
    }
}
