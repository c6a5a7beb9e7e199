use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::disc::{disc_iterate, recursion_sign};
use super::orbit::{critical_multisets, PcfProfile};
use super::PcfError;
use crate::permgroup::Family;
use crate::polyarith::{serialize_rat, is_square_rat, IterPoly, Rat};
use crate::treewreath::Sign;

/// `disc(f^n_star - α)` is predicted to be a square in `K_f^m_star(α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquarePrediction {
    pub case: u8,
    pub n_star: usize,
    pub m_star: usize,
}

pub fn square_prediction(profile: &PcfProfile) -> SquarePrediction {
    let (l, o) = (profile.tail, profile.period);
    let cheap = profile.leading_is_square || o % 2 == 0;
    let (case, n_star, m_star) = match (l, profile.degree_is_odd) {
        (0, true) => (1, 2 * o, 0),
        (0, false) if cheap => (2, o + 1, 1),
        (0, false) => (2, o + 2, o + 1),
        (_, true) => (3, l + 2 * o - 1, l - 1),
        (_, false) if cheap => (4, l + o, l),
        (_, false) => (4, l + o + 1, l + o),
    };
    SquarePrediction { case, n_star, m_star }
}

/// The subgroup of `Aut(T_n)` predicted to contain the arboreal group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingTarget {
    pub family: Family,
}

impl EmbeddingTarget {
    pub fn label(&self) -> String {
        match self.family {
            Family::E { m } => format!("E_n^{m}"),
            Family::F { m1, m2 } => format!("F_n^({m1},{m2})"),
            Family::Full => "Aut(T_n)".into(),
        }
    }
}

/// Odd degree with `L <= 1` gives `E_n^(2O)`; every other case gives
/// `F_n^(n*, m*)` from [`square_prediction`].
pub fn embedding_target(profile: &PcfProfile) -> EmbeddingTarget {
    if profile.degree_is_odd && profile.tail <= 1 {
        return EmbeddingTarget {
            family: Family::E { m: 2 * profile.period },
        };
    }
    let p = square_prediction(profile);
    EmbeddingTarget {
        family: Family::F {
            m1: p.n_star,
            m2: p.m_star,
        },
    }
}

/// A rational constant times a product of fixed polynomials in `α`,
/// tracked by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicProduct {
    #[serde(serialize_with = "serialize_rat")]
    pub constant: Rat,
    pub exponents: Vec<u32>,
}

impl SymbolicProduct {
    fn one(atoms: usize) -> Self {
        SymbolicProduct {
            constant: Rat::one(),
            exponents: vec![0; atoms],
        }
    }

    pub fn times(&self, other: &SymbolicProduct) -> SymbolicProduct {
        SymbolicProduct {
            constant: &self.constant * &other.constant,
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    fn scaled(&self, c: &Rat) -> SymbolicProduct {
        SymbolicProduct {
            constant: &self.constant * c,
            exponents: self.exponents.clone(),
        }
    }

    /// A square for every `α`: even exponents and a square constant.
    pub fn is_formal_square(&self) -> bool {
        self.exponents.iter().all(|e| e % 2 == 0) && is_square_rat(&self.constant)
    }
}

/// Coprime monic factors covering all inputs.
fn coprime_base(polys: &[IterPoly]) -> Vec<IterPoly> {
    let mut base: Vec<IterPoly> = Vec::new();
    let mut pending: Vec<IterPoly> = polys
        .iter()
        .flat_map(|p| p.squarefree_decomposition().into_iter().map(|(q, _)| q))
        .collect();
    while let Some(p) = pending.pop() {
        if p.degree().unwrap_or(0) == 0 {
            continue;
        }
        match base
            .iter()
            .enumerate()
            .map(|(i, b)| (i, b.gcd(&p)))
            .find(|(_, g)| g.degree().unwrap_or(0) > 0)
        {
            None => base.push(p),
            Some((i, g)) => {
                let b = base.swap_remove(i);
                if b == g && p == g {
                    base.push(g);
                    continue;
                }
                pending.push(b.div_exact(&g).expect("g divides b"));
                pending.push(p.div_exact(&g).expect("g divides p"));
                pending.push(g);
            }
        }
    }
    base.sort_by_key(|a| a.to_string());
    base
}

/// The critical products `X_k = ∏_c (f^k(c) - α)` for `k = 1..=n`, and the
/// non-square parts built from them, as symbolic functions of `α`.
#[derive(Clone, Debug, Serialize)]
pub struct SymbolicProducts {
    pub atoms: Vec<IterPoly>,
    pub critical: Vec<SymbolicProduct>,
    pub nonsquare: Vec<SymbolicProduct>,
}

impl SymbolicProducts {
    pub fn new(f: &IterPoly, n: usize) -> Result<Self, PcfError> {
        let chi = critical_multisets(f, n)?;
        let d = f.degree().expect("critical_multisets checked the degree");
        let atoms = coprime_base(&chi[1..]);
        let sign = if d % 2 == 1 { Rat::one() } else { -Rat::one() };
        let critical: Vec<SymbolicProduct> = chi[1..]
            .iter()
            .map(|c| {
                let mut rest = c.clone();
                let exponents = atoms
                    .iter()
                    .map(|a| {
                        let mut e = 0;
                        loop {
                            let (q, r) = rest.div_rem(a).expect("atoms are nonzero");
                            if !r.is_zero() {
                                break e;
                            }
                            rest = q;
                            e += 1;
                        }
                    })
                    .collect();
                // ∏ (f^k(c) - α) = (-1)^(d-1) χ_k(α)
                SymbolicProduct {
                    constant: &sign * rest.leading(),
                    exponents,
                }
            })
            .collect();
        let a = f.leading();
        let nonsquare = (1..=n)
            .map(|k| {
                if d % 2 == 1 {
                    let mut out = critical[..k]
                        .iter()
                        .fold(SymbolicProduct::one(atoms.len()), |acc, x| acc.times(x));
                    if k % 2 == 1 {
                        let s = recursion_sign(d, 1).value() as i64 * d as i64;
                        out = out.scaled(&Rat::from_integer(BigInt::from(s)));
                    }
                    out
                } else {
                    let s = if recursion_sign(d, k) == Sign::Minus { -a.clone() } else { a.clone() };
                    critical[k - 1].scaled(&s)
                }
            })
            .collect();
        Ok(SymbolicProducts {
            atoms,
            critical,
            nonsquare,
        })
    }

    /// Evaluates a symbolic product at `α` (atoms are polynomials in `y`
    /// evaluated at `y = α`).
    pub fn evaluate(&self, p: &SymbolicProduct, alpha: &Rat) -> Rat {
        self.atoms
            .iter()
            .zip(&p.exponents)
            .fold(p.constant.clone(), |acc, (a, &e)| acc * num_traits::pow(a.eval(alpha), e as usize))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SquareEvidence {
    /// `m* = 0`: exact test of the discriminant in `ℚ`.
    Exact { is_square: bool },
    /// `m* > 0`: whether `NS(n*) · ∏_(k∈T) NS(k)` is a formal square for
    /// some `T ⊆ {1..m*}`, the adjoined roots `√disc(f^k - α)` lying in
    /// `K_f^(m*)(α)`.
    Structural { verified: bool, subset: Option<Vec<usize>> },
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareCheck {
    pub prediction: SquarePrediction,
    #[serde(serialize_with = "serialize_rat")]
    pub disc_n: Rat,
    pub evidence: SquareEvidence,
}

impl SquareCheck {
    pub fn holds(&self) -> bool {
        match &self.evidence {
            SquareEvidence::Exact { is_square } => *is_square,
            SquareEvidence::Structural { verified, .. } => *verified,
        }
    }
}

pub fn verify_square_prediction(
    f: &IterPoly,
    profile: &PcfProfile,
    alpha: &Rat,
) -> Result<SquareCheck, PcfError> {
    let prediction = square_prediction(profile);
    let report = disc_iterate(f, alpha, prediction.n_star)?;
    let evidence = if prediction.m_star == 0 {
        SquareEvidence::Exact {
            is_square: is_square_rat(&report.disc_value),
        }
    } else {
        let symbolic = SymbolicProducts::new(f, prediction.n_star)?;
        let top = &symbolic.nonsquare[prediction.n_star - 1];
        let m = prediction.m_star;
        let subset = (0u64..1 << m).find_map(|mask| {
            let chosen: Vec<usize> = (1..=m).filter(|k| mask >> (k - 1) & 1 == 1).collect();
            let product = chosen
                .iter()
                .fold(top.clone(), |acc, &k| acc.times(&symbolic.nonsquare[k - 1]));
            product.is_formal_square().then_some(chosen)
        });
        SquareEvidence::Structural {
            verified: subset.is_some(),
            subset,
        }
    };
    Ok(SquareCheck {
        prediction,
        disc_n: report.disc_value,
        evidence,
    })
}

/// Whether `∏_(k=from..=to) X_k` is a formal square, i.e. every atom
/// appears an even number of times and the constant is a square.
pub fn critical_block_is_square(symbolic: &SymbolicProducts, from: usize, to: usize) -> bool {
    let atoms = symbolic.atoms.len();
    symbolic.critical[from - 1..to]
        .iter()
        .fold(SymbolicProduct::one(atoms), |acc, x| acc.times(x))
        .is_formal_square()
}
