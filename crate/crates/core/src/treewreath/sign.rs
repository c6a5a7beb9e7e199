use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::{TreeError, WreathElement};

/// An element of `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("{other} is not a sign")),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, Mul::mul)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

fn sign_of(v: i8) -> Sign {
    if v > 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// The sign homomorphisms `Aut(T_n) -> {±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureKind {
    /// Sign of the action on the leaves.
    Total,
    /// `sgn_m`: sign of the action on level `m`.
    Restricted(usize),
    /// `sgn^m`: product of the total signs of the sections at the `d^m`
    /// vertices of level `m`.
    BlockProduct(usize),
    /// `sgn^(m1,m2) = sgn^m2 ∘ res_m1`.
    Pair(usize, usize),
}

impl WreathElement {
    /// Sign of the section at `(level, v)` acting on its descendants
    /// `depth` levels further down.
    pub fn section_sign(&self, level: usize, v: usize, depth: usize) -> Sign {
        if depth == 0 {
            return Sign::Plus;
        }
        sign_of(self.section_action(level, v, depth).sign())
    }

    /// `sgn^(m2)` of `res_(bottom)` of the section at `(level, v)`: the
    /// product over its descendants `m2` levels down of their sections'
    /// signs `bottom - m2` further levels down.
    fn section_pair_sign(&self, level: usize, v: usize, bottom: usize, m2: usize) -> Sign {
        let d = self.shape().d;
        let width = d.pow(m2 as u32);
        (0..width)
            .map(|u| self.section_sign(level + m2, v * width + u, bottom - m2))
            .product()
    }

    pub fn signature(&self, kind: SignatureKind) -> Result<Sign, TreeError> {
        let n = self.shape().n;
        let check = |m: usize| {
            if m == 0 || m > n {
                Err(TreeError::LevelOutOfRange { m, n })
            } else {
                Ok(())
            }
        };
        match kind {
            SignatureKind::Total => Ok(self.section_sign(0, 0, n)),
            SignatureKind::Restricted(m) => {
                check(m)?;
                Ok(self.section_sign(0, 0, m))
            }
            SignatureKind::BlockProduct(m) => {
                check(m)?;
                Ok((0..self.shape().level_size(m))
                    .map(|v| self.section_sign(m, v, n - m))
                    .product())
            }
            SignatureKind::Pair(m1, m2) => {
                if !(n >= m1 && m1 > m2 && m2 >= 1) {
                    return Err(TreeError::InvalidPair { m1, m2, n });
                }
                Ok(self.section_pair_sign(0, 0, m1, m2))
            }
        }
    }

    /// Membership in `E_n^m`: every section of height `h >= m` lies in
    /// `ker(sgn_m)`.
    pub fn is_member_e(&self, m: usize) -> Result<bool, TreeError> {
        let n = self.shape().n;
        if m == 0 {
            return Err(TreeError::LevelOutOfRange { m, n });
        }
        if m > n {
            return Ok(true);
        }
        for level in 0..=n - m {
            for v in 0..self.shape().level_size(level) {
                if !self.section_sign(level, v, m).is_plus() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Membership in `F_n^(m1,m2)`: every section of height `h >= m1` lies
    /// in `ker(sgn^(m1,m2))`.
    pub fn is_member_f(&self, m1: usize, m2: usize) -> Result<bool, TreeError> {
        let n = self.shape().n;
        if !(m1 > m2 && m2 >= 1) {
            return Err(TreeError::InvalidPair { m1, m2, n });
        }
        if m1 > n {
            return Ok(true);
        }
        for level in 0..=n - m1 {
            for v in 0..self.shape().level_size(level) {
                if !self.section_pair_sign(level, v, m1, m2).is_plus() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Permutation;
    use crate::treewreath::{TreeAddress, TreeShape};

    fn t(d: usize) -> Permutation {
        Permutation::parse_cycles(d, "(1 2)").unwrap()
    }

    fn at(e: WreathElement, leaf_first: &[usize], p: &Permutation) -> WreathElement {
        e.with_vertex_perm(&TreeAddress::from_leaf_first(leaf_first), p).unwrap()
    }

    #[test]
    fn single_child_transposition() {
        let shape = TreeShape::new(3, 2).unwrap();
        let e = at(WreathElement::identity(shape), &[1], &t(3));
        assert_eq!(e.signature(SignatureKind::Total).unwrap(), Sign::Minus);
        assert_eq!(e.signature(SignatureKind::Restricted(1)).unwrap(), Sign::Plus);
        assert_eq!(e.signature(SignatureKind::BlockProduct(1)).unwrap(), Sign::Minus);
        assert_eq!(e.signature(SignatureKind::Pair(2, 1)).unwrap(), Sign::Minus);
        assert!(!e.is_member_f(2, 1).unwrap());
    }

    #[test]
    fn distinguishing_element() {
        let shape = TreeShape::new(3, 2).unwrap();
        let mut e = WreathElement::identity(shape);
        e = at(e, &[], &t(3));
        e = at(e, &[1], &t(3));
        e = at(e, &[2], &t(3));
        assert!(!e.is_member_e(2).unwrap());
        assert!(e.is_member_f(2, 1).unwrap());

        let mut g = WreathElement::identity(shape);
        g = at(g, &[1], &t(3));
        g = at(g, &[2], &t(3));
        assert!(g.is_member_e(2).unwrap());
    }

    #[test]
    fn identity_has_trivial_signs() {
        let e = WreathElement::identity(TreeShape::new(3, 3).unwrap());
        for kind in [
            SignatureKind::Total,
            SignatureKind::Restricted(2),
            SignatureKind::BlockProduct(1),
            SignatureKind::Pair(3, 1),
        ] {
            assert_eq!(e.signature(kind).unwrap(), Sign::Plus);
        }
        assert!(e.is_member_e(2).unwrap());
        assert!(e.is_member_f(3, 2).unwrap());
    }

    #[test]
    fn range_errors() {
        let e = WreathElement::identity(TreeShape::new(3, 2).unwrap());
        assert!(e.signature(SignatureKind::Restricted(0)).is_err());
        assert!(e.signature(SignatureKind::Restricted(3)).is_err());
        assert!(e.signature(SignatureKind::Pair(1, 1)).is_err());
        assert!(e.signature(SignatureKind::Pair(3, 1)).is_err());
        assert!(e.is_member_e(0).is_err());
        assert!(e.is_member_f(1, 2).is_err());
    }

    #[test]
    fn sign_serde_and_product() {
        assert_eq!(serde_json::to_string(&Sign::Minus).unwrap(), "-1");
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert!(Sign::try_from(0).is_err());
    }
}
