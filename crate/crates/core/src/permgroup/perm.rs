use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GroupError;

/// A permutation of `{0, .., N-1}` stored in array form.
///
/// Composition follows function notation: `a.compose(&b)` maps `x` to
/// `a(b(x))`. Points are 0-based internally and 1-based in every textual
/// form (cycle notation).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::NotAPermutation);
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds from 1-based images (one-line notation).
    pub fn from_one_line(images: &[usize]) -> Result<Self, GroupError> {
        if images.contains(&0) {
            return Err(GroupError::NotAPermutation);
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Builds from 1-based cycles, e.g. `&[&[1, 2, 3]]` for `(1 2 3)`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree || touched[p - 1] {
                    return Err(GroupError::NotAPermutation);
                }
                touched[p - 1] = true;
                let q = cycle[(k + 1) % cycle.len()];
                if q == 0 || q > degree {
                    return Err(GroupError::NotAPermutation);
                }
                images[p - 1] = q - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`; `1` or `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, GroupError> {
        let text = text.trim();
        if text == "1" || text == "()" || text.is_empty() {
            return Ok(Self::identity(degree));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| GroupError::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| GroupError::Parse(format!("bad point {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cycle);
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `τ σ τ⁻¹` for `self = σ`.
    pub fn conjugate_by(&self, tau: &Permutation) -> Permutation {
        tau.compose(self).compose(&tau.inverse())
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b).compose(&a.inverse()).compose(&b.inverse())
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Disjoint cycles (0-based), each starting at its smallest point,
    /// ordered by that point. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn sign(&self) -> i8 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
            }
        }
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            wrote = true;
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    degree: usize,
    cycles: String,
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PermutationRepr {
            degree: self.degree(),
            cycles: self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PermutationRepr::deserialize(deserializer)?;
        Permutation::parse_cycles(repr.degree, &repr.cycles).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_function_composition() {
        let a = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        // (1 2)(2 3) sends 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 1 -> 2
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
    }

    #[test]
    fn cycle_text_round_trip() {
        let p = Permutation::parse_cycles(6, "(1 4)(2 5 6)").unwrap();
        assert_eq!(p.to_string(), "(1 4)(2 5 6)");
        assert_eq!(Permutation::parse_cycles(6, &p.to_string()).unwrap(), p);
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }

    #[test]
    fn sign_and_type() {
        let p = Permutation::parse_cycles(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(p.sign(), -1);
        assert_eq!(p.cycle_type(), vec![2, 3]);
        assert_eq!(p.order(), 6);
        assert_eq!(p.pow(6), Permutation::identity(5));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 4]]).is_err());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
    }
}
