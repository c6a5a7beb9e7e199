use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::PcfError;
use crate::polyarith::{serialize_rat, discriminant, resultant, IterPoly, Rat};
use crate::treewreath::Sign;

/// `A(d, k) = d^k (d^k + d^(k-1) - 2) / 2` modulo 2, as a sign.
pub fn recursion_sign(d: usize, k: usize) -> Sign {
    let dk = BigInt::from(d).pow(k as u32);
    let dk1 = BigInt::from(d).pow(k as u32 - 1);
    let a: BigInt = &dk * (&dk + &dk1 - 2) / 2;
    if (a % 2u32).is_zero() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// `B(d, k) = d^(2k-1) - 1`.
pub fn recursion_leading_exponent(d: usize, k: usize) -> BigInt {
    BigInt::from(d).pow(2 * k as u32 - 1) - 1
}

fn rat_pow(base: &Rat, e: &BigInt) -> Rat {
    let mut e = e.clone();
    let mut base = base.clone();
    let mut acc = Rat::one();
    let two = BigInt::from(2);
    while !e.is_zero() {
        if (&e % &two).is_one() {
            acc *= &base;
        }
        base = &base * &base;
        e /= &two;
    }
    acc
}

/// `∏_c (f^k(c) - α)` over the roots of `f'` with multiplicity, as
/// `Res(f', f^k - α) / lc(f')^(d^k)`.
pub fn critical_product(f: &IterPoly, alpha: &Rat, k: usize) -> Result<Rat, PcfError> {
    let fk = f.iterate(k).minus_constant(alpha);
    critical_product_of(f, &fk)
}

fn critical_product_of(f: &IterPoly, fk_minus_alpha: &IterPoly) -> Result<Rat, PcfError> {
    let df = f.derivative();
    let deg = fk_minus_alpha.degree().unwrap_or(0);
    let res = resultant(&df, fk_minus_alpha)?;
    Ok(res / rat_pow(&df.leading(), &BigInt::from(deg)))
}

/// One step of the recursion for `disc(f^k - α)`.
#[derive(Clone, Debug, Serialize)]
pub struct RecursionStep {
    pub k: usize,
    pub sign: Sign,
    pub leading_exponent: String,
    #[serde(serialize_with = "serialize_rat")]
    pub critical_product: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub value: Rat,
}

/// `disc(f^n - α)` by the recursion together with the direct value.
#[derive(Clone, Debug, Serialize)]
pub struct DiscReport {
    pub n: usize,
    #[serde(serialize_with = "serialize_rat")]
    pub alpha: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub disc_value: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub oracle_value: Rat,
    pub a_parity_sign: Sign,
    pub b_exponent: String,
    #[serde(serialize_with = "serialize_rat")]
    pub nonsquare_part: Rat,
    pub steps: Vec<RecursionStep>,
}

/// Runs `disc(f^k - α) = ± a_f^B d^(d^k) disc(f^(k-1) - α)^d ∏_c (f^k(c) - α)`
/// for `k = 1..=n` from `disc(f^0 - α) = 1`, and compares with the
/// discriminant of the expanded iterate.
pub fn disc_iterate(f: &IterPoly, alpha: &Rat, n: usize) -> Result<DiscReport, PcfError> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(PcfError::DegreeTooSmall(d));
    }
    if n == 0 {
        return Err(PcfError::Precondition("n must be at least 1".into()));
    }
    let a = f.leading();
    let mut value = Rat::one();
    let mut steps = Vec::with_capacity(n);
    let mut iterate = IterPoly::x();
    let mut products = Vec::with_capacity(n);
    for k in 1..=n {
        iterate = f.compose(&iterate);
        let fk = iterate.minus_constant(alpha);
        let product = critical_product_of(f, &fk)?;
        let sign = recursion_sign(d, k);
        let b = recursion_leading_exponent(d, k);
        let dk = BigInt::from(d).pow(k as u32);
        let mut next = rat_pow(&a, &b) * rat_pow(&Rat::from_integer(BigInt::from(d)), &dk);
        next *= rat_pow(&value, &BigInt::from(d));
        next *= &product;
        if sign == Sign::Minus {
            next = -next;
        }
        value = next;
        products.push(product.clone());
        steps.push(RecursionStep {
            k,
            sign,
            leading_exponent: b.to_string(),
            critical_product: product,
            value: value.clone(),
        });
    }
    let oracle_value = discriminant(&iterate.minus_constant(alpha))?;
    if oracle_value != value {
        return Err(PcfError::RecursionMismatch { n });
    }
    Ok(DiscReport {
        n,
        alpha: alpha.clone(),
        disc_value: value,
        oracle_value,
        a_parity_sign: recursion_sign(d, n),
        b_exponent: recursion_leading_exponent(d, n).to_string(),
        nonsquare_part: nonsquare_from_products(d, &a, &products),
        steps,
    })
}

/// A representative of a nonzero `disc(f^n - α)` modulo rational squares, built from
/// the critical products `X_k = ∏_c (f^k(c) - α)`:
/// `(s·d)^(n mod 2) X_1 ⋯ X_n` for odd `d` (with `s = (-1)^A`, independent
/// of `k`), and `(-1)^A(d,n) · a_f · X_n` for even `d`.
pub fn nonsquare_part(f: &IterPoly, alpha: &Rat, n: usize) -> Result<Rat, PcfError> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(PcfError::DegreeTooSmall(d));
    }
    if n == 0 {
        return Err(PcfError::Precondition("n must be at least 1".into()));
    }
    let products = (1..=n)
        .map(|k| critical_product(f, alpha, k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(nonsquare_from_products(d, &f.leading(), &products))
}

fn nonsquare_from_products(d: usize, a: &Rat, products: &[Rat]) -> Rat {
    let n = products.len();
    if d % 2 == 1 {
        let mut out: Rat = products.iter().fold(Rat::one(), |acc, x| acc * x);
        if n % 2 == 1 {
            out *= Rat::from_integer(BigInt::from(recursion_sign(d, 1).value() as i64 * d as i64));
        }
        out
    } else {
        let x = products.last().expect("n >= 1").clone();
        let signed = if recursion_sign(d, n) == Sign::Minus { -x } else { x };
        signed * a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::{is_square_rat, rat};

    fn f() -> IterPoly {
        IterPoly::from_ints(&[1, 0, -3, 2])
    }

    #[test]
    fn signs() {
        for k in 1..5 {
            assert_eq!(recursion_sign(3, k), Sign::Minus);
            assert_eq!(recursion_sign(5, k), Sign::Plus);
        }
        assert_eq!(recursion_sign(2, 1), Sign::Minus);
        assert_eq!(recursion_sign(2, 2), Sign::Plus);
        assert_eq!(recursion_sign(4, 1), Sign::Plus);
    }

    #[test]
    fn first_level_matches_closed_form() {
        for a in [-5i64, -2, 3, 7] {
            let alpha = rat(a);
            let r = disc_iterate(&f(), &alpha, 1).unwrap();
            assert_eq!(r.disc_value, rat(108 * a * (1 - a)));
        }
        assert_eq!(disc_iterate(&f(), &rat(3), 1).unwrap().disc_value, rat(-648));
    }

    #[test]
    fn second_level_and_square_quotient() {
        for a in [3i64, -2] {
            let alpha = rat(a);
            let r = disc_iterate(&f(), &alpha, 2).unwrap();
            assert!(is_square_rat(&r.disc_value));
            assert!(is_square_rat(&(&r.disc_value / &r.nonsquare_part)));
        }
    }

    #[test]
    fn first_level_nonsquare_part() {
        let alpha = rat(3);
        let expected = rat(-3) * (f().eval(&rat(0)) - &alpha) * (f().eval(&rat(1)) - &alpha);
        assert_eq!(nonsquare_part(&f(), &alpha, 1).unwrap(), expected);
    }

    #[test]
    fn even_degree_recursion() {
        for coeffs in [vec![-1, 0, 1], vec![0, 0, 2], vec![1, 1, 3], vec![2, 0, 0, 0, -3]] {
            let g = IterPoly::from_ints(&coeffs);
            for n in 1..=2 {
                let r = disc_iterate(&g, &rat(5), n).unwrap();
                assert!(is_square_rat(&(&r.disc_value / &r.nonsquare_part)), "{g} n={n}");
            }
        }
    }
}
