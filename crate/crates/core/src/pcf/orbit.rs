use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::PcfError;
use crate::polyarith::{is_square_rat, IterPoly, Rat};

/// Default number of forward images examined for a repeat.
pub const DEFAULT_ORBIT_BOUND: usize = 64;

/// Height (in bits) from which sustained growth by a factor 3/2 stops the
/// search early.
const HEIGHT_FLOOR_BITS: u64 = 32;
const GROWTH_RUN: usize = 3;

/// Forward images of the critical multiset `𝒞_f`, encoded by polynomials.
///
/// `multiset_polys[k]` is `∏_c (y - f^k(c))` over the roots `c` of `f'`
/// with multiplicity; `set_polys[k]` is its monic squarefree part, so two
/// images agree as sets exactly when their `set_polys` agree.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalOrbit {
    pub f: IterPoly,
    pub multiset_polys: Vec<IterPoly>,
    pub set_polys: Vec<IterPoly>,
    /// `(L, O)` once a repeat was found.
    pub period: Option<(usize, usize)>,
    /// The search stopped because heights kept growing geometrically.
    pub escaped: bool,
    /// `rows[k]` lists `f^k(c)` for every critical point, when all
    /// critical points are rational.
    #[serde(serialize_with = "crate::polyarith::serialize_rat_rows")]
    pub rational_table: Option<Vec<Vec<Rat>>>,
}

/// Rational roots with multiplicity, when every root is rational.
fn rational_roots(p: &IterPoly) -> Option<Vec<Rat>> {
    let mut remaining = p.monic();
    let mut roots = Vec::new();
    let Some(deg) = remaining.degree() else {
        return Some(roots);
    };
    // clear denominators of the monic polynomial
    let den = remaining
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
    let ints: Vec<BigInt> = remaining
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let lowest = ints.iter().position(|c| !c.is_zero())?;
    for _ in 0..lowest {
        roots.push(Rat::zero());
    }
    let constant = ints[lowest].abs().to_u64()?;
    let lead = ints[deg].abs().to_u64()?;
    const LIMIT: u64 = 1 << 40;
    if constant > LIMIT || lead > LIMIT {
        return None;
    }
    let divisors = |n: u64| -> Vec<u64> {
        let mut out = Vec::new();
        let mut i = 1u64;
        while i * i <= n {
            if n.is_multiple_of(i) {
                out.push(i);
                out.push(n / i);
            }
            i += 1;
        }
        out
    };
    let mut candidates = Vec::new();
    for p in divisors(constant) {
        for q in divisors(lead) {
            for sign in [1i64, -1] {
                candidates.push(Rat::new(BigInt::from(p) * sign, BigInt::from(q)));
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let linear = IterPoly::new(vec![-r.clone(), Rat::one()]);
        loop {
            let (q, rem) = remaining.div_rem(&linear).ok()?;
            if !rem.is_zero() || remaining.degree() == Some(0) {
                break;
            }
            roots.push(r.clone());
            remaining = q;
        }
    }
    (roots.len() == deg).then(|| {
        roots.sort();
        roots
    })
}

/// `f(h) mod f'`, by Horner.
fn next_image(f: &IterPoly, h: &IterPoly, modulus: &IterPoly) -> Result<IterPoly, PcfError> {
    Ok(f.coeffs().iter().rev().try_fold(IterPoly::zero(), |acc, c| {
        (&(&acc * h) + &IterPoly::constant(c.clone())).rem(modulus)
    })?)
}

/// `∏_c (y - f^k(c))` for `k = 0..=n`, with multiplicity and no early stop.
pub fn critical_multisets(f: &IterPoly, n: usize) -> Result<Vec<IterPoly>, PcfError> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(PcfError::DegreeTooSmall(d));
    }
    let modulus = f.derivative().monic();
    let mut h = IterPoly::x().rem(&modulus)?;
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        out.push(h.char_poly_mod(&modulus)?);
        if k < n {
            h = next_image(f, &h, &modulus)?;
        }
    }
    Ok(out)
}

/// Follows `f^k(𝒞_f)` until a set repeats, for at most `bound` steps.
pub fn critical_orbit(f: &IterPoly, bound: usize) -> Result<CriticalOrbit, PcfError> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(PcfError::DegreeTooSmall(d));
    }
    let modulus = f.derivative().monic();
    let mut h = IterPoly::x().rem(&modulus)?;
    let mut multiset_polys = Vec::new();
    let mut set_polys: Vec<IterPoly> = Vec::new();
    let mut period = None;
    let mut escaped = false;
    let mut growing = 0usize;
    let mut last_height = 0u64;
    for k in 0..=bound {
        let chi = h.char_poly_mod(&modulus)?;
        let set = chi.squarefree_part();
        let height = chi.height_bits();
        multiset_polys.push(chi);
        if let Some(j) = set_polys.iter().position(|s| *s == set) {
            set_polys.push(set);
            period = Some((j, k - j));
            break;
        }
        set_polys.push(set);
        if height >= HEIGHT_FLOOR_BITS && 2 * height >= 3 * last_height {
            growing += 1;
            if growing >= GROWTH_RUN {
                escaped = true;
                break;
            }
        } else {
            growing = 0;
        }
        last_height = height;
        h = next_image(f, &h, &modulus)?;
    }
    let rational_table = period.and_then(|(l, o)| {
        let crit = rational_roots(&modulus)?;
        let rows = (0..=l + o)
            .scan(crit, |row, _| {
                let current = row.clone();
                *row = row.iter().map(|c| f.eval(c)).collect();
                Some(current)
            })
            .collect();
        Some(rows)
    });
    Ok(CriticalOrbit {
        f: f.clone(),
        multiset_polys,
        set_polys,
        period,
        escaped,
        rational_table,
    })
}

/// Tail length, period and the parity data the case analysis needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PcfProfile {
    pub degree: usize,
    pub tail: usize,
    pub period: usize,
    pub degree_is_odd: bool,
    pub leading_is_square: bool,
}

pub fn pcf_classify(f: &IterPoly, bound: usize) -> Result<PcfProfile, PcfError> {
    let orbit = critical_orbit(f, bound)?;
    let (tail, period) = match orbit.period {
        Some(p) => p,
        None if orbit.escaped => return Err(PcfError::NotPcf),
        None => {
            return Err(PcfError::NotPcfWithinBound {
                steps: orbit.set_polys.len(),
            })
        }
    };
    let degree = f.degree().expect("critical_orbit checked the degree");
    Ok(PcfProfile {
        degree,
        tail,
        period,
        degree_is_odd: degree % 2 == 1,
        leading_is_square: is_square_rat(&f.leading()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::rat;

    #[test]
    fn rational_root_search() {
        let p = IterPoly::from_ints(&[0, 0, -1, 1]);
        assert_eq!(rational_roots(&p), Some(vec![rat(0), rat(0), rat(1)]));
        assert_eq!(rational_roots(&IterPoly::from_ints(&[-2, 0, 1])), None);
        let half = IterPoly::from_ints(&[-1, 0, 4]);
        assert_eq!(rational_roots(&half).unwrap().len(), 2);
    }

    #[test]
    fn classic_maps() {
        let cases = [(vec![1, 0, -3, 2], (0, 1)), (vec![0, 0, 3, -2], (0, 1)), (vec![0, -3, 0, 4], (1, 1)), (vec![-1, 0, 1], (0, 2)), (vec![0, 0, 0, 1], (0, 1))];
        for (coeffs, expected) in cases {
            let f = IterPoly::from_ints(&coeffs);
            let orbit = critical_orbit(&f, DEFAULT_ORBIT_BOUND).unwrap();
            assert_eq!(orbit.period, Some(expected), "{f}");
            assert!(orbit.rational_table.is_some());
        }
    }

    #[test]
    fn chebyshev_table() {
        let f = IterPoly::from_ints(&[0, -3, 0, 4]);
        let orbit = critical_orbit(&f, DEFAULT_ORBIT_BOUND).unwrap();
        let table = orbit.rational_table.unwrap();
        let half = Rat::new(1.into(), 2.into());
        assert_eq!(table[0], vec![-half.clone(), half]);
        assert_eq!(table[1], vec![rat(1), rat(-1)]);
    }

    #[test]
    fn generic_cubic_is_not_pcf() {
        let f = IterPoly::from_ints(&[1, 2, 1, 1]);
        assert!(matches!(
            pcf_classify(&f, DEFAULT_ORBIT_BOUND),
            Err(PcfError::NotPcf)
        ));
        assert!(matches!(
            pcf_classify(&f, 3),
            Err(PcfError::NotPcfWithinBound { steps: 4 })
        ));
        assert!(matches!(
            pcf_classify(&IterPoly::from_ints(&[0, 1]), DEFAULT_ORBIT_BOUND),
            Err(PcfError::DegreeTooSmall(1))
        ));
    }
}
