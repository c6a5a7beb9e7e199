//! Exact univariate polynomials over `ℚ`.

mod resultant;
mod square;

pub use resultant::{discriminant, resultant};
pub use square::{is_square_rat, rat_sqrt};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation needs degree >= 1")]
    ConstantPolynomial,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q`.
pub fn parse_rat(text: &str) -> Result<Rat, PolyError> {
    let text = text.trim();
    let bad = || PolyError::Parse(format!("bad rational {text:?}"));
    match text.split_once('/') {
        None => Ok(Rat::from_integer(text.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// A polynomial with ascending rational coefficients; the leading
/// coefficient is nonzero unless the polynomial is zero (empty).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IterPoly {
    coeffs: Vec<Rat>,
}

impl IterPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IterPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        IterPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        IterPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        IterPoly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        IterPoly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> IterPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn scale(&self, c: &Rat) -> IterPoly {
        IterPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// `self(g(x))` by Horner's rule.
    pub fn compose(&self, g: &IterPoly) -> IterPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(IterPoly::zero(), |acc, c| &(&acc * g) + &IterPoly::constant(c.clone()))
    }

    /// The `n`-fold composite; `iterate(0)` is `x`.
    pub fn iterate(&self, n: usize) -> IterPoly {
        (0..n).fold(IterPoly::x(), |acc, _| self.compose(&acc))
    }

    pub fn derivative(&self) -> IterPoly {
        IterPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `self(x + s)`.
    pub fn shift(&self, s: &Rat) -> IterPoly {
        self.compose(&IterPoly::new(vec![s.clone(), Rat::one()]))
    }

    /// `self - c`.
    pub fn minus_constant(&self, c: &Rat) -> IterPoly {
        self - &IterPoly::constant(c.clone())
    }

    /// Euclidean division.
    pub fn div_rem(&self, divisor: &IterPoly) -> Result<(IterPoly, IterPoly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::ZeroPolynomial)?;
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((IterPoly::zero(), self.clone()));
        };
        let mut quot = vec![Rat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((IterPoly::new(quot), IterPoly::new(rem)))
    }

    pub fn rem(&self, divisor: &IterPoly) -> Result<IterPoly, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; the remainder is discarded.
    pub fn div_exact(&self, divisor: &IterPoly) -> Result<IterPoly, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IterPoly) -> IterPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: monic `(a_i, i)` with
    /// `self = lc · ∏ a_i^i`, nonconstant factors only.
    pub fn squarefree_decomposition(&self) -> Vec<(IterPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let b = f.gcd(&df);
        let mut c = f.div_exact(&b).expect("gcd is nonzero");
        let mut d = &df.div_exact(&b).expect("gcd is nonzero") - &c.derivative();
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let a = c.gcd(&d);
            c = c.div_exact(&a).expect("gcd is nonzero");
            d = &d.div_exact(&a).expect("gcd is nonzero") - &c.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Monic squarefree part (product of the distinct monic irreducible
    /// factors).
    pub fn squarefree_part(&self) -> IterPoly {
        if self.degree().unwrap_or(0) == 0 {
            return IterPoly::constant(Rat::one());
        }
        let f = self.monic();
        f.div_exact(&f.gcd(&f.derivative())).expect("gcd is nonzero")
    }

    /// Largest bit length among numerators and denominators.
    pub fn height_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Characteristic polynomial of multiplication by `self` on
    /// `ℚ[x]/(modulus)`: `∏ (y - self(r))` over the roots `r` of the monic
    /// `modulus`, with multiplicity. Computed by Faddeev–LeVerrier.
    pub fn char_poly_mod(&self, modulus: &IterPoly) -> Result<IterPoly, PolyError> {
        let n = modulus.degree().ok_or(PolyError::ZeroPolynomial)?;
        if n == 0 {
            return Ok(IterPoly::constant(Rat::one()));
        }
        let modulus = modulus.monic();
        let h = self.rem(&modulus)?;
        // column j holds h * x^j mod modulus
        let mut columns = Vec::with_capacity(n);
        let mut basis = IterPoly::constant(Rat::one());
        for _ in 0..n {
            columns.push((&h * &basis).rem(&modulus)?);
            basis = (&basis * &IterPoly::x()).rem(&modulus)?;
        }
        let a: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| columns[j].coeff(i)).collect()).collect();
        let matmul = |x: &Vec<Vec<Rat>>, y: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).fold(Rat::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                        .collect()
                })
                .collect()
        };
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for k in 1..=n {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &coeffs[n - k + 1];
            }
            let am = matmul(&a, &m);
            let trace = (0..n).fold(Rat::zero(), |acc, i| acc + &am[i][i]);
            coeffs[n - k] = -trace / rat(k as i64);
            m = am;
        }
        Ok(IterPoly::new(coeffs))
    }
}

impl Add for &IterPoly {
    type Output = IterPoly;
    fn add(self, rhs: &IterPoly) -> IterPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IterPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IterPoly {
    type Output = IterPoly;
    fn sub(self, rhs: &IterPoly) -> IterPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IterPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IterPoly {
    type Output = IterPoly;
    fn neg(self) -> IterPoly {
        IterPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IterPoly {
    type Output = IterPoly;
    fn mul(self, rhs: &IterPoly) -> IterPoly {
        if self.is_zero() || rhs.is_zero() {
            return IterPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IterPoly::new(out)
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Comma-separated ascending coefficients, e.g. `1,0,-3,2`; the zero
/// polynomial prints as `0`.
impl fmt::Display for IterPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rat).collect();
        f.write_str(&parts.join(","))
    }
}

impl IterPoly {
    /// Conventional notation in `z`, highest degree first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&fmt_rat(&mag));
            }
            match i {
                0 => {}
                1 => out.push('z'),
                _ => out.push_str(&format!("z^{i}")),
            }
        }
        out
    }
}

impl FromStr for IterPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        if s.trim().is_empty() {
            return Err(PolyError::Parse("empty coefficient list".into()));
        }
        Ok(IterPoly::new(s.split(',').map(parse_rat).collect::<Result<_, _>>()?))
    }
}

impl Serialize for IterPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Serializes a rational as `"p/q"` (or `"p"`).
pub fn serialize_rat<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

pub fn serialize_rat_rows<S: Serializer>(rows: &Option<Vec<Vec<Rat>>>, s: S) -> Result<S::Ok, S::Error> {
    let strings: Option<Vec<Vec<String>>> = rows
        .as_ref()
        .map(|rows| rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect());
    strings.serialize(s)
}

impl<'de> Deserialize<'de> for IterPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
