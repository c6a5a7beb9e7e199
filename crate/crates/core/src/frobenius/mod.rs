//! Frobenius evidence for arboreal Galois groups: degree partitions of
//! `f^n - α` modulo primes, exact cycle-type censuses of candidate groups,
//! and their comparison.

mod modp;

pub use modp::{reduce_rat, ModPoly};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::permgroup::{GroupError, GroupHandle};
use crate::polyarith::{discriminant, serialize_rat, IterPoly, PolyError, Rat};

/// Total-variation distance regarded as agreement.
pub const DEFAULT_TV_THRESHOLD: f64 = 0.1;

#[derive(Debug, thiserror::Error)]
pub enum FrobError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Sorted multiset of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreePartition(Vec<usize>);

impl DegreePartition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        DegreePartition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for DegreePartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "partition", rename_all = "snake_case")]
pub enum FrobeniusType {
    Unramified(DegreePartition),
    Ramified,
}

/// `f^n - α` with the data needed to decide good reduction.
#[derive(Clone, Debug)]
pub struct IterateData {
    pub poly: IterPoly,
    pub disc: Rat,
}

impl IterateData {
    pub fn new(f: &IterPoly, alpha: &Rat, n: usize) -> Result<Self, FrobError> {
        if n == 0 {
            return Err(FrobError::Precondition("n must be at least 1".into()));
        }
        let poly = f.iterate(n).minus_constant(alpha);
        let disc = discriminant(&poly)?;
        Ok(IterateData { poly, disc })
    }

    /// Bad reduction: `p` divides a denominator, the leading coefficient,
    /// or the discriminant.
    pub fn is_ramified(&self, p: u64) -> bool {
        let divides = |n: &num_bigint::BigInt| (n % p).is_zero();
        self.disc.is_zero()
            || divides(self.disc.numer())
            || divides(self.poly.leading().numer())
            || self.poly.coeffs().iter().any(|c| divides(c.denom()))
    }

    pub fn frobenius_type(&self, p: u64) -> FrobeniusType {
        if self.is_ramified(p) {
            return FrobeniusType::Ramified;
        }
        let g = ModPoly::reduce(&self.poly, p).expect("denominators are p-units");
        FrobeniusType::Unramified(DegreePartition::new(g.factor_degrees()))
    }
}

fn check_prime(p: u64) -> Result<(), FrobError> {
    if primal_check::miller_rabin(p) {
        Ok(())
    } else {
        Err(FrobError::NotPrime(p))
    }
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| primal_check::miller_rabin(p)).collect()
}

/// Degree partition of `f^n - α` modulo `p`.
pub fn ddf_partition(f: &IterPoly, alpha: &Rat, n: usize, p: u64) -> Result<FrobeniusType, FrobError> {
    check_prime(p)?;
    Ok(IterateData::new(f, alpha, n)?.frobenius_type(p))
}

/// Exact distribution of cycle types over a finite permutation group.
#[derive(Clone, Debug, Serialize)]
pub struct CycleCensus {
    pub degree: usize,
    #[serde(serialize_with = "serialize_display")]
    pub order: BigUint,
    pub counts: BTreeMap<DegreePartition, u64>,
}

fn serialize_display<T: fmt::Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl CycleCensus {
    pub fn frequency(&self, t: &DegreePartition) -> Rat {
        let count = self.counts.get(t).copied().unwrap_or(0);
        Rat::new(count.into(), self.order.clone().into())
    }

    pub fn frequencies(&self) -> BTreeMap<DegreePartition, Rat> {
        self.counts.keys().map(|t| (t.clone(), self.frequency(t))).collect()
    }

    pub fn total_frequency(&self) -> Rat {
        self.frequencies().values().sum()
    }

    pub fn contains_type(&self, t: &DegreePartition) -> bool {
        self.counts.contains_key(t)
    }
}

pub fn census(g: &GroupHandle, bound: u64) -> Result<CycleCensus, FrobError> {
    let counts = g
        .cycle_type_counts(bound)?
        .into_iter()
        .map(|(t, c)| (DegreePartition::new(t), c))
        .collect();
    Ok(CycleCensus {
        degree: g.degree(),
        order: g.order(),
        counts,
    })
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub name: String,
    pub census: CycleCensus,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeObservation {
    pub p: u64,
    pub frobenius: FrobeniusType,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub name: String,
    pub order: String,
    /// Every observed partition is a cycle type of the candidate.
    pub containment: bool,
    pub violations: Vec<DegreePartition>,
    pub tv_distance: f64,
    pub tv_within_threshold: bool,
    pub unobserved_types: Vec<DegreePartition>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobReport {
    pub f: IterPoly,
    #[serde(serialize_with = "serialize_rat")]
    pub alpha: Rat,
    pub n: usize,
    pub prime_bound: u64,
    pub primes_used: usize,
    pub ramified: Vec<u64>,
    pub observed: BTreeMap<DegreePartition, u64>,
    pub candidates: Vec<CandidateReport>,
    /// Candidate names, containing ones first, then by distance.
    pub ranking: Vec<String>,
    pub insufficient_data: bool,
    #[serde(skip)]
    pub per_prime: Vec<PrimeObservation>,
}

impl FrobReport {
    /// One `p<TAB>partition` line per prime, `ramified` for bad primes.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("p\tpartition\n");
        for obs in &self.per_prime {
            let cell = match &obs.frobenius {
                FrobeniusType::Unramified(t) => t.to_string(),
                FrobeniusType::Ramified => "ramified".into(),
            };
            out.push_str(&format!("{}\t{}\n", obs.p, cell));
        }
        out
    }

    pub fn candidate(&self, name: &str) -> Option<&CandidateReport> {
        self.candidates.iter().find(|c| c.name == name)
    }
}

pub fn compare(
    f: &IterPoly,
    alpha: &Rat,
    n: usize,
    prime_bound: u64,
    candidates: &[Candidate],
) -> Result<FrobReport, FrobError> {
    let data = IterateData::new(f, alpha, n)?;
    let degree = data.poly.degree().unwrap_or(0);
    if let Some(c) = candidates.iter().find(|c| c.census.degree != degree) {
        return Err(FrobError::Precondition(format!(
            "candidate {} acts on {} points, expected {degree}",
            c.name, c.census.degree
        )));
    }
    let per_prime: Vec<PrimeObservation> = primes_up_to(prime_bound)
        .into_par_iter()
        .map(|p| PrimeObservation {
            p,
            frobenius: data.frobenius_type(p),
        })
        .collect();
    let mut observed: BTreeMap<DegreePartition, u64> = BTreeMap::new();
    let mut ramified = Vec::new();
    for obs in &per_prime {
        match &obs.frobenius {
            FrobeniusType::Unramified(t) => *observed.entry(t.clone()).or_insert(0) += 1,
            FrobeniusType::Ramified => ramified.push(obs.p),
        }
    }
    let primes_used: u64 = observed.values().sum();
    let reports: Vec<CandidateReport> = candidates
        .iter()
        .map(|c| candidate_report(c, &observed, primes_used))
        .collect();
    let mut order: Vec<&CandidateReport> = reports.iter().collect();
    order.sort_by(|a, b| {
        b.containment
            .cmp(&a.containment)
            .then(a.tv_distance.total_cmp(&b.tv_distance))
    });
    let ranking = order.iter().map(|c| c.name.clone()).collect();
    Ok(FrobReport {
        f: f.clone(),
        alpha: alpha.clone(),
        n,
        prime_bound,
        primes_used: primes_used as usize,
        ramified,
        observed,
        candidates: reports,
        ranking,
        insufficient_data: primes_used == 0,
        per_prime,
    })
}

fn candidate_report(c: &Candidate, observed: &BTreeMap<DegreePartition, u64>, total: u64) -> CandidateReport {
    let violations: Vec<DegreePartition> =
        observed.keys().filter(|t| !c.census.contains_type(t)).cloned().collect();
    let unobserved_types = c.census.counts.keys().filter(|t| !observed.contains_key(t)).cloned().collect();
    let tv_distance = if total == 0 {
        1.0
    } else {
        let mut types: Vec<&DegreePartition> = observed.keys().chain(c.census.counts.keys()).collect();
        types.sort();
        types.dedup();
        let sum: Rat = types
            .into_iter()
            .map(|t| {
                let seen = Rat::new(observed.get(t).copied().unwrap_or(0).into(), total.into());
                let diff = seen - c.census.frequency(t);
                if diff < Rat::zero() {
                    -diff
                } else {
                    diff
                }
            })
            .sum();
        (sum / Rat::from_integer(2.into())).to_f64().unwrap_or(1.0)
    };
    CandidateReport {
        name: c.name.clone(),
        order: c.census.order.to_string(),
        containment: violations.is_empty(),
        violations,
        tv_distance,
        tv_within_threshold: tv_distance <= DEFAULT_TV_THRESHOLD,
        unobserved_types,
    }
}
