//! p-adic valuations over ℚ, Newton polygons, the base-point condition at 2
//! and 3, shifted Eisenstein tests for iterates, and ramification evidence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::polyarith::{serialize_rat, IterPoly, Rat};

#[derive(Debug, thiserror::Error)]
pub enum LocalError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("base point must avoid 0 and 1")]
    DegenerateBasePoint,
    #[error("base point {0} fails the condition at 2 and 3")]
    ConditionFails(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
}

/// `v_p(x)`, with `None` standing for `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PadicVal {
    pub p: u64,
    pub v: Option<i64>,
}

fn check_prime(p: u64) -> Result<(), LocalError> {
    if primal_check::miller_rabin(p) {
        Ok(())
    } else {
        Err(LocalError::NotPrime(p))
    }
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Valuation at a prime already known to be prime.
fn raw_valuation(x: &Rat, p: u64) -> Option<i64> {
    (!x.is_zero()).then(|| int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

pub fn valuation(x: &Rat, p: u64) -> Result<PadicVal, LocalError> {
    check_prime(p)?;
    Ok(PadicVal {
        p,
        v: raw_valuation(x, p),
    })
}

/// Valuations of `α` and `1 - α` at 2 and 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub v2_alpha: Option<i64>,
    pub v2_one_minus_alpha: Option<i64>,
    pub v3_alpha: Option<i64>,
    pub v3_one_minus_alpha: Option<i64>,
    pub at_2: bool,
    pub at_3: bool,
    pub holds: bool,
}

pub fn condition_check(alpha: &Rat) -> Result<ConditionReport, LocalError> {
    let one_minus = Rat::one() - alpha;
    if alpha.is_zero() || one_minus.is_zero() {
        return Err(LocalError::DegenerateBasePoint);
    }
    let v2_alpha = raw_valuation(alpha, 2);
    let v2_one_minus_alpha = raw_valuation(&one_minus, 2);
    let v3_alpha = raw_valuation(alpha, 3);
    let v3_one_minus_alpha = raw_valuation(&one_minus, 3);
    let at_2 = v2_alpha == Some(1) || v2_one_minus_alpha == Some(1);
    let at_3 = v3_alpha == Some(1) || v3_one_minus_alpha == Some(1);
    Ok(ConditionReport {
        v2_alpha,
        v2_one_minus_alpha,
        v3_alpha,
        v3_one_minus_alpha,
        at_2,
        at_3,
        holds: at_2 && at_3,
    })
}

/// One edge of a Newton polygon, `height = -slope · length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "serialize_rat")]
    pub slope: Rat,
    pub length: usize,
    #[serde(serialize_with = "serialize_rat")]
    pub height: Rat,
}

/// Lower convex hull of `(i, v_p(a_i))`; slopes strictly increase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub p: u64,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    pub fn has_segment(&self, length: usize, height: i64) -> bool {
        self.segments
            .iter()
            .any(|s| s.length == length && s.height == Rat::from_integer(height.into()))
    }
}

pub fn newton_polygon(f: &IterPoly, p: u64) -> Result<NewtonPolygon, LocalError> {
    check_prime(p)?;
    if f.is_zero() {
        return Err(LocalError::ZeroPolynomial);
    }
    let points: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| raw_valuation(c, p).map(|v| (i as i64, v)))
        .collect();
    // lower hull by monotone chain; cross <= 0 drops collinear middles
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &q in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let length = w[1].0 - w[0].0;
            let rise = w[1].1 - w[0].1;
            Segment {
                slope: Rat::new(rise.into(), length.into()),
                length: length as usize,
                height: Rat::from_integer((-rise).into()),
            }
        })
        .collect();
    Ok(NewtonPolygon { p, segments })
}

/// Shifts tried by default, covering `v(α) = 1` and `v(1 - α) = 1`.
pub const DEFAULT_SHIFTS: [i64; 2] = [0, 1];

pub fn is_eisenstein(g: &IterPoly, p: u64) -> bool {
    let Some(deg) = g.degree() else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    let c = g.coeffs();
    raw_valuation(&c[deg], p) == Some(0)
        && raw_valuation(&c[0], p) == Some(1)
        && c[1..deg].iter().all(|a| raw_valuation(a, p).is_none_or(|v| v >= 1))
}

/// The first `s` in `shifts` with `f^n(z + s) - α` Eisenstein at `p`.
pub fn eisenstein_shifted(
    f: &IterPoly,
    alpha: &Rat,
    n: usize,
    p: u64,
    shifts: &[i64],
) -> Result<Option<i64>, LocalError> {
    check_prime(p)?;
    let g = f.iterate(n).minus_constant(alpha);
    Ok(shifts
        .iter()
        .copied()
        .find(|&s| is_eisenstein(&g.shift(&Rat::from_integer(s.into())), p)))
}

#[derive(Clone, Debug, Serialize)]
pub struct EisensteinWitness {
    pub p: u64,
    pub n: usize,
    pub degree: usize,
    pub shift: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonEvidence {
    pub p: u64,
    pub shift: i64,
    pub polygon: NewtonPolygon,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictedRamification {
    pub at_2: String,
    pub at_3: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationReport {
    #[serde(serialize_with = "serialize_rat")]
    pub alpha: Rat,
    pub n: usize,
    pub condition: ConditionReport,
    /// Eisenstein tests at 3 for levels `1..=n`.
    pub eisenstein: Vec<EisensteinWitness>,
    /// First-level polygon at 2 carrying a length-2, height-1 segment.
    pub newton: Option<NewtonEvidence>,
    pub predicted_e: PredictedRamification,
    pub e2_evidenced: bool,
    pub e3_evidenced: bool,
    /// `6^n` divides `[K_f^n(α) : ℚ]`.
    pub degree_divisor: String,
}

impl RamificationReport {
    /// Every level is Eisenstein at 3 and both first-level witnesses exist.
    pub fn all_evidenced(&self) -> bool {
        self.e2_evidenced && self.e3_evidenced && self.eisenstein.iter().all(|w| w.shift.is_some())
    }
}

pub fn ramification_report(
    f: &IterPoly,
    alpha: &Rat,
    n: usize,
) -> Result<RamificationReport, LocalError> {
    let condition = condition_check(alpha)?;
    if !condition.holds {
        return Err(LocalError::ConditionFails(alpha.to_string()));
    }
    if f.is_zero() {
        return Err(LocalError::ZeroPolynomial);
    }
    let d = f.degree().unwrap_or(0);
    let eisenstein = (1..=n)
        .map(|k| {
            Ok(EisensteinWitness {
                p: 3,
                n: k,
                degree: d.pow(k as u32),
                shift: eisenstein_shifted(f, alpha, k, 3, &DEFAULT_SHIFTS)?,
            })
        })
        .collect::<Result<Vec<_>, LocalError>>()?;
    let first = f.minus_constant(alpha);
    let mut newton = None;
    for s in DEFAULT_SHIFTS {
        let polygon = newton_polygon(&first.shift(&Rat::from_integer(s.into())), 2)?;
        if polygon.has_segment(2, 1) {
            newton = Some(NewtonEvidence { p: 2, shift: s, polygon });
            break;
        }
    }
    let pow = |b: u32| BigInt::from(b).pow(n as u32);
    Ok(RamificationReport {
        alpha: alpha.clone(),
        n,
        e3_evidenced: eisenstein.first().is_some_and(|w| w.shift.is_some()),
        e2_evidenced: newton.is_some(),
        condition,
        eisenstein,
        newton,
        predicted_e: PredictedRamification {
            at_2: pow(2).to_string(),
            at_3: pow(3).to_string(),
        },
        degree_divisor: pow(6).to_string(),
    })
}
