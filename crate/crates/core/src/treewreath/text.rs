//! Canonical text: the root permutation in cycle notation (`1` for the
//! identity) followed, above the last level, by the `d` child sections in
//! brackets. Example at `d = 3, n = 2`: `(1 2)[(1 2),(1 2),1]`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{TreeError, TreeShape, WreathElement};
use crate::permgroup::Permutation;

impl WreathElement {
    fn write_vertex(&self, f: &mut fmt::Formatter<'_>, level: usize, v: usize) -> fmt::Result {
        let p = Permutation::from_images(self.vertex_perm(level, v).iter().map(|&x| x as usize).collect())
            .expect("vertex permutations are bijections");
        if p.is_identity() {
            f.write_str("1")?;
        } else {
            write!(f, "{p}")?;
        }
        if level + 1 < self.shape().n {
            let d = self.shape().d;
            f.write_str("[")?;
            for j in 0..d {
                if j > 0 {
                    f.write_str(",")?;
                }
                self.write_vertex(f, level + 1, v * d + j)?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }

    /// Parses the canonical text. A vertex without a bracket list has
    /// trivial sections below it.
    pub fn parse(shape: TreeShape, text: &str) -> Result<WreathElement, TreeError> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            shape,
            perms: vec![Vec::new(); shape.internal_vertices()],
        };
        parser.vertex(0, 0)?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        WreathElement::from_vertex_perms(shape, &parser.perms)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_vertex(f, 0, 0)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    shape: TreeShape,
    perms: Vec<Vec<usize>>,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> TreeError {
        TreeError::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn vertex(&mut self, level: usize, v: usize) -> Result<(), TreeError> {
        let d = self.shape.d;
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(c) = self.peek() {
            match c {
                b'(' => depth += 1,
                b')' => depth = depth.checked_sub(1).ok_or_else(|| self.error("unbalanced ')'"))?,
                b'[' | b']' | b',' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("input was a str");
        let perm = Permutation::parse_cycles(d, text).map_err(|e| TreeError::Parse(e.to_string()))?;
        let index = self.shape.level_offset(level) + v;
        self.perms[index] = perm.images().collect();

        self.skip_ws();
        let has_children = self.peek() == Some(b'[');
        if has_children && level + 1 >= self.shape.n {
            return Err(self.error("sections below the last internal level"));
        }
        if level + 1 < self.shape.n {
            if has_children {
                self.pos += 1;
                for j in 0..d {
                    if j > 0 {
                        self.skip_ws();
                        if self.peek() != Some(b',') {
                            return Err(self.error("expected ','"));
                        }
                        self.pos += 1;
                    }
                    self.vertex(level + 1, v * d + j)?;
                }
                self.skip_ws();
                if self.peek() != Some(b']') {
                    return Err(self.error("expected ']'"));
                }
                self.pos += 1;
            } else {
                self.fill_identity(level + 1, v);
            }
        }
        Ok(())
    }

    fn fill_identity(&mut self, level: usize, parent: usize) {
        let d = self.shape.d;
        let mut first = parent * d;
        let mut count = d;
        for k in level..self.shape.n {
            let off = self.shape.level_offset(k);
            for u in first..first + count {
                self.perms[off + u] = (0..d).collect();
            }
            first *= d;
            count *= d;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    d: usize,
    n: usize,
    element: String,
}

impl Serialize for WreathElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ElementRepr {
            d: self.shape().d,
            n: self.shape().n,
            element: self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WreathElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let shape = TreeShape::new(repr.d, repr.n).map_err(serde::de::Error::custom)?;
        WreathElement::parse(shape, &repr.element).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_form() {
        let shape = TreeShape::new(3, 2).unwrap();
        let e = WreathElement::parse(shape, "(1 2)[(1 2),(1 2),1]").unwrap();
        assert_eq!(e.to_string(), "(1 2)[(1 2),(1 2),1]");
        assert_eq!(WreathElement::identity(shape).to_string(), "1[1,1,1]");
        assert_eq!(WreathElement::parse(shape, "1").unwrap(), WreathElement::identity(shape));
    }

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (d, n) in [(3, 1), (3, 3), (4, 2)] {
            let shape = TreeShape::new(d, n).unwrap();
            for _ in 0..20 {
                let e = WreathElement::random(shape, &mut rng);
                assert_eq!(WreathElement::parse(shape, &e.to_string()).unwrap(), e);
                let json = serde_json::to_string(&e).unwrap();
                assert_eq!(serde_json::from_str::<WreathElement>(&json).unwrap(), e);
            }
        }
    }

    #[test]
    fn malformed_input() {
        let shape = TreeShape::new(3, 2).unwrap();
        for bad in ["(1 2)[1,1]", "(1 2)[1,1,1", "(1 4)", "1[1[1],1,1]", "1[1,1,1]x"] {
            assert!(WreathElement::parse(shape, bad).is_err(), "{bad}");
        }
    }
}
