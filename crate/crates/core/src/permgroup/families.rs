use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GroupError, GroupHandle, Permutation};
use crate::treewreath::{TreeAddress, TreeError, TreeShape, WreathElement};

/// Random candidates tried by [`harvest_group`] after the structured seeds.
pub const HARVEST_ATTEMPTS: usize = 4_000;

/// The subgroups of `Aut(T_n)` this crate constructs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Full,
    E { m: usize },
    F { m1: usize, m2: usize },
}

impl Family {
    pub fn validate(&self, shape: TreeShape) -> Result<(), TreeError> {
        match *self {
            Family::Full => Ok(()),
            Family::E { m } if m == 0 => Err(TreeError::LevelOutOfRange { m, n: shape.n }),
            Family::E { .. } => Ok(()),
            Family::F { m1, m2 } if !(m1 > m2 && m2 >= 1) => Err(TreeError::InvalidPair { m1, m2, n: shape.n }),
            Family::F { .. } => Ok(()),
        }
    }

    pub fn contains(&self, e: &WreathElement) -> Result<bool, TreeError> {
        match *self {
            Family::Full => Ok(true),
            Family::E { m } => e.is_member_e(m),
            Family::F { m1, m2 } => e.is_member_f(m1, m2),
        }
    }

    /// `(d!)^((d^n-1)/(d-1)) / 2^((d^(n-m+1)-1)/(d-1))` for `n >= m`
    /// (`m = m1` for `F`), and `|Aut(T_n)|` otherwise.
    pub fn closed_form_order(&self, shape: TreeShape) -> BigUint {
        let d = shape.d as u32;
        let factorial: BigUint = (1..=d).map(BigUint::from).product();
        let full = factorial.pow(shape.internal_vertices() as u32);
        let m = match *self {
            Family::Full => return full,
            Family::E { m } => m,
            Family::F { m1, .. } => m1,
        };
        if shape.n < m {
            return full;
        }
        let halvings = (d.pow((shape.n - m + 1) as u32) - 1) / (d - 1);
        full >> halvings
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Full => write!(f, "full"),
            Family::E { m } => write!(f, "E^{m}"),
            Family::F { m1, m2 } => write!(f, "F^({m1},{m2})"),
        }
    }
}

impl FromStr for Family {
    type Err = TreeError;
    /// Accepts `full`, `E:m` and `F:m1,m2`.
    fn from_str(s: &str) -> Result<Self, TreeError> {
        let bad = || TreeError::Parse(format!("unknown family {s:?}"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        if s.eq_ignore_ascii_case("full") {
            return Ok(Family::Full);
        }
        if let Some(rest) = s.strip_prefix("E:") {
            return Ok(Family::E { m: num(rest)? });
        }
        if let Some(rest) = s.strip_prefix("F:") {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            return Ok(Family::F { m1: num(a)?, m2: num(b)? });
        }
        Err(bad())
    }
}

/// A harvested family member together with its flat permutation group on
/// the `d^n` leaves.
#[derive(Clone, Debug, Serialize)]
pub struct ArborealGroup {
    pub shape: TreeShape,
    pub family: Family,
    pub group: GroupHandle,
}

impl ArborealGroup {
    pub fn contains(&self, e: &WreathElement) -> Result<bool, GroupError> {
        if e.shape() != self.shape {
            return Err(TreeError::ShapeMismatch(e.shape(), self.shape).into());
        }
        Ok(self.group.contains(&e.to_flat()))
    }

    /// Portrait of a flat group element.
    pub fn element(&self, flat: &Permutation) -> Result<WreathElement, GroupError> {
        Ok(WreathElement::from_flat(self.shape, flat)?)
    }
}

/// Elements supported on few vertices: transpositions and 3-cycles of
/// adjacent labels at one vertex, `(1 2)` at sibling pairs, and `(1 2)`
/// along a vertex and its first descendants.
fn structured_candidates(shape: TreeShape) -> Vec<WreathElement> {
    let d = shape.d;
    let id = WreathElement::identity(shape);
    let mut out = Vec::new();
    let swap = Permutation::from_cycles(d, &[&[1, 2]]).expect("d >= 2");
    let address = |level: usize, v: usize| {
        let mut labels = vec![0; level];
        let mut x = v;
        for slot in labels.iter_mut().rev() {
            *slot = x % d + 1;
            x /= d;
        }
        TreeAddress::from_root_first(labels)
    };
    let set = |e: WreathElement, level: usize, v: usize, p: &Permutation| {
        e.with_vertex_perm(&address(level, v), p)
            .expect("addresses are generated in range")
    };
    for level in 0..shape.n {
        for v in 0..shape.level_size(level) {
            for j in 1..d {
                let t = Permutation::from_cycles(d, &[&[j, j + 1]]).expect("labels in range");
                out.push(set(id.clone(), level, v, &t));
                if j + 2 <= d {
                    let c = Permutation::from_cycles(d, &[&[j, j + 1, j + 2]]).expect("labels in range");
                    out.push(set(id.clone(), level, v, &c));
                }
            }
            if v % d + 1 < d && level > 0 {
                out.push(set(set(id.clone(), level, v, &swap), level, v + 1, &swap));
            }
            let mut chain = set(id.clone(), level, v, &swap);
            let mut u = v;
            for below in level + 1..shape.n {
                u *= d;
                chain = set(chain, below, u, &swap);
                out.push(chain.clone());
            }
        }
    }
    out
}

/// Builds the family member as a permutation group on the leaves: seeds it
/// with membership-passing structured elements, then adds membership-passing
/// random elements until the certified order reaches the closed form.
pub fn harvest_group<R: Rng + ?Sized>(
    shape: TreeShape,
    family: Family,
    rng: &mut R,
) -> Result<ArborealGroup, GroupError> {
    family.validate(shape)?;
    let target = family.closed_form_order(shape);
    let mut group = GroupHandle::trivial(shape.leaves());
    for e in structured_candidates(shape) {
        if group.order() == target {
            break;
        }
        if family.contains(&e)? {
            group.add_generator(e.to_flat())?;
        }
    }
    let mut attempts = 0;
    while group.order() != target {
        if attempts == HARVEST_ATTEMPTS || group.order() > target {
            return Err(GroupError::HarvestFailure {
                target: target.to_string(),
                reached: group.order().to_string(),
                attempts,
            });
        }
        attempts += 1;
        let e = WreathElement::random(shape, rng);
        if family.contains(&e)? {
            group.add_generator(e.to_flat())?;
        }
    }
    debug_assert!(!target.is_one() || group.is_trivial());
    Ok(ArborealGroup { shape, family, group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shape(d: usize, n: usize) -> TreeShape {
        TreeShape::new(d, n).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(Family::Full.closed_form_order(shape(3, 2)), BigUint::from(1296u32));
        assert_eq!(Family::E { m: 2 }.closed_form_order(shape(3, 2)), BigUint::from(648u32));
        assert_eq!(
            Family::E { m: 2 }.closed_form_order(shape(3, 3)),
            BigUint::from(816_293_376u64)
        );
        assert_eq!(Family::F { m1: 2, m2: 1 }.closed_form_order(shape(3, 2)), BigUint::from(648u32));
        assert_eq!(Family::E { m: 3 }.closed_form_order(shape(3, 2)), BigUint::from(1296u32));
        assert_eq!(Family::E { m: 1 }.closed_form_order(shape(3, 1)), BigUint::from(3u32));
    }

    #[test]
    fn family_text() {
        for f in [Family::Full, Family::E { m: 2 }, Family::F { m1: 3, m2: 1 }] {
            let text = match f {
                Family::Full => "full".to_string(),
                Family::E { m } => format!("E:{m}"),
                Family::F { m1, m2 } => format!("F:{m1},{m2}"),
            };
            assert_eq!(text.parse::<Family>().unwrap(), f);
        }
        assert!("G:1".parse::<Family>().is_err());
    }

    #[test]
    fn harvest_small_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (family, order) in [
            (Family::Full, 1296u32),
            (Family::E { m: 2 }, 648),
            (Family::F { m1: 2, m2: 1 }, 648),
            (Family::E { m: 1 }, 1296 / 16),
        ] {
            let g = harvest_group(shape(3, 2), family, &mut rng).unwrap();
            assert_eq!(g.group.order(), BigUint::from(order), "{family}");
            assert_eq!(g.group.order(), family.closed_form_order(shape(3, 2)));
        }
    }

    #[test]
    fn harvest_rejects_bad_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(harvest_group(shape(3, 2), Family::F { m1: 1, m2: 1 }, &mut rng).is_err());
        assert!(harvest_group(shape(3, 2), Family::E { m: 0 }, &mut rng).is_err());
    }
}
