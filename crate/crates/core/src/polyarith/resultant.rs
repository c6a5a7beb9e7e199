use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IterPoly, PolyError, Rat};

/// Integer polynomial, ascending, trimmed.
type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn content(p: &ZPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `f = c · F` with `F` a primitive integer polynomial with positive
/// leading coefficient.
fn primitive_part(f: &IterPoly) -> (Rat, ZPoly) {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let mut cont = content(&ints);
    if ints.last().is_some_and(Signed::is_negative) {
        cont = -cont;
    }
    let prim = ints.iter().map(|c| c / &cont).collect();
    (Rat::new(cont, den), prim)
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = a.len() - b.len() + 1;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().expect("nonempty").clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[k + j] -= &lr * c;
        }
        r = trim(r);
        e -= 1;
    }
    let factor = num_traits::pow(lb.clone(), e);
    r.iter().map(|c| c * &factor).collect()
}

/// Subresultant PRS on primitive integer polynomials.
fn resultant_z(a: ZPoly, b: ZPoly) -> BigInt {
    let (mut a, mut b) = (a, b);
    let mut sign = BigInt::one();
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return sign * num_traits::pow(b[0].clone(), a.len() - 1);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.iter().map(|c| c / &divisor).collect();
        g = a.last().expect("nonempty").clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.len() == 1 {
            break;
        }
    }
    let da = a.len() - 1;
    let lb = b[0].clone();
    let h = num_traits::pow(lb, da) / num_traits::pow(h, da - 1);
    sign * h
}

/// `Res(f, g) = a_f^(deg g) ∏_(f(r)=0) g(r)`.
pub fn resultant(f: &IterPoly, g: &IterPoly) -> Result<Rat, PolyError> {
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(df), Some(dg)) => (df, dg),
        _ => return Err(PolyError::ZeroPolynomial),
    };
    let (cf, pf) = primitive_part(f);
    let (cg, pg) = primitive_part(g);
    let scale = num_traits::pow(cf, dg) * num_traits::pow(cg, df);
    if df == 0 && dg == 0 {
        return Ok(Rat::one());
    }
    Ok(scale * Rat::from_integer(resultant_z(pf, pg)))
}

/// `(-1)^(n(n-1)/2) Res(f, f') / a_f`.
pub fn discriminant(f: &IterPoly) -> Result<Rat, PolyError> {
    let n = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    let r = resultant(f, &f.derivative())? / f.leading();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::rat;

    #[test]
    fn linear_factor_evaluates() {
        let g = IterPoly::from_ints(&[3, -1, 0, 2]);
        let f = IterPoly::from_ints(&[-5, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), g.eval(&rat(5)));
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(discriminant(&IterPoly::from_ints(&[-1, 0, 1])).unwrap(), rat(4));
        assert_eq!(discriminant(&IterPoly::from_ints(&[1, -2, 1])).unwrap(), rat(0));
        assert_eq!(discriminant(&IterPoly::from_ints(&[-2, 0, -3, 2])).unwrap(), rat(-648));
        assert_eq!(discriminant(&IterPoly::from_ints(&[-2, 0, 0, 2])).unwrap(), rat(-432));
        assert_eq!(discriminant(&IterPoly::from_ints(&[1, 0, -3, 2])).unwrap(), rat(0));
        assert_eq!(discriminant(&IterPoly::from_ints(&[7, 3])).unwrap(), rat(1));
        assert!(discriminant(&IterPoly::from_ints(&[7])).is_err());
    }

    #[test]
    fn constants_and_swaps() {
        let f = IterPoly::from_ints(&[1, 2, 3]);
        assert_eq!(resultant(&f, &IterPoly::from_ints(&[5])).unwrap(), rat(25));
        assert_eq!(resultant(&IterPoly::from_ints(&[5]), &f).unwrap(), rat(25));
        let a = IterPoly::from_ints(&[1, 0, 1]);
        let b = IterPoly::from_ints(&[2, 1, 0, 1]);
        let ab = resultant(&a, &b).unwrap();
        let ba = resultant(&b, &a).unwrap();
        assert_eq!(ab, ba);
        assert!(resultant(&IterPoly::zero(), &a).is_err());
    }
}
