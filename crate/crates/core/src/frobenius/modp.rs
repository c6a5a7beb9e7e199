use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::polyarith::{IterPoly, Rat};

/// Polynomial over `𝔽_p`, ascending coefficients in `0..p`, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// `q mod p`, or `None` when `p` divides the denominator.
pub fn reduce_rat(q: &Rat, p: u64) -> Option<u64> {
    let den = reduce_int(q.denom(), p);
    (den != 0).then(|| mul_mod(reduce_int(q.numer(), p), inv_mod(den, p), p))
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    /// Reduction of a rational polynomial, `None` when a denominator vanishes.
    pub fn reduce(f: &IterPoly, p: u64) -> Option<Self> {
        let coeffs = f.coeffs().iter().map(|c| reduce_rat(c, p)).collect::<Option<Vec<_>>>()?;
        Some(ModPoly::new(p, coeffs))
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = inv_mod(lead, self.p);
                ModPoly::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        ModPoly::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        ModPoly::new(self.p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ModPoly::new(self.p, Vec::new());
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        ModPoly::new(self.p, out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let db = divisor.degree().expect("nonzero divisor");
        let inv = inv_mod(divisor.coeffs[db], p);
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (ModPoly::new(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + db], inv, p);
            q[k] = c;
            if c != 0 {
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mul_mod(c, b, p)) % p;
                }
            }
        }
        r.truncate(db);
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = ModPoly::new(self.p, vec![1]).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, by
    /// distinct-degree factorization, ascending.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut f = self.monic();
        let x = ModPoly::x(self.p);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut k = 1;
        while f.degree().is_some_and(|d| d >= 2 * k) {
            h = h.pow_mod(self.p, &f);
            let g = f.gcd(&h.sub(&x));
            let dg = g.degree().unwrap_or(0);
            if dg > 0 {
                out.extend(std::iter::repeat_n(k, dg / k));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            k += 1;
        }
        if let Some(d) = f.degree().filter(|&d| d > 0) {
            out.push(d);
        }
        out.sort_unstable();
        out
    }
}
