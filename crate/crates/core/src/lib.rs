//! Exact computations around arboreal Galois groups of polynomials: tree
//! automorphism groups and their sign-defined subgroups, discriminants of
//! iterates, post-critical orbits, local criteria at 2 and 3, and Frobenius
//! cycle-type statistics.

pub mod frobenius;
pub mod localfields;
pub mod pcf;
pub mod permgroup;
pub mod polyarith;
pub mod treewreath;
