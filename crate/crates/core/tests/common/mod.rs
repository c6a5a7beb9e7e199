#![allow(dead_code)]

use arboreal::pcf::{disc_iterate, nonsquare_part};
use arboreal::permgroup::{ParityStep, ParityTuple};
use arboreal::polyarith::{is_square_rat, IterPoly, Rat};
use num_traits::Zero;

pub const CORPUS: [&[i64]; 8] = [
    &[1, 0, -3, 2],
    &[0, 0, 3, -2],
    &[0, 0, 0, 1],
    &[0, -3, 0, 4],
    &[-1, 0, 1],
    &[2, -1, 0, 3],
    &[-1, 4, 1, -2],
    &[3, 0, 2, 5],
];

/// `disc / nonsquare_part` is a nonzero rational square whenever the
/// discriminant is nonzero.
pub fn assert_square_quotient(f: &IterPoly, alpha: &Rat, n: usize) {
    let disc = disc_iterate(f, alpha, n).unwrap().disc_value;
    if disc.is_zero() {
        return;
    }
    let ns = nonsquare_part(f, alpha, n).unwrap();
    let q = &disc / &ns;
    assert!(is_square_rat(&q), "f={} alpha={alpha} n={n}: {q}", f.pretty());
}

pub fn even_nonidentity_tuples(d: usize) -> Vec<ParityTuple> {
    (0u32..1 << d)
        .filter(|mask| mask.count_ones() % 2 == 0 && *mask != 0)
        .map(|mask| {
            let entries = (0..d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            ParityTuple::new(entries).unwrap()
        })
        .collect()
}

/// Replays a trace, checking each step is the move it claims to be.
pub fn replay(start: &ParityTuple, trace: &[ParityStep]) -> ParityTuple {
    let mut current = start.clone();
    let mut before_rotation: Option<ParityTuple> = None;
    for step in trace {
        let expected = match step {
            ParityStep::Shift { at, left, .. } => {
                let mut entries = current.entries().to_vec();
                if *left {
                    entries[*at..*at + 3].rotate_left(1);
                } else {
                    entries[*at..*at + 3].rotate_right(1);
                }
                ParityTuple::new(entries).unwrap()
            }
            ParityStep::Rotate { .. } => {
                before_rotation = Some(current.clone());
                current.rotated()
            }
            ParityStep::Product { .. } => before_rotation.take().expect("product follows rotation").times(&current),
        };
        assert_eq!(step.result(), &expected);
        assert!(!expected.is_all_ones());
        assert_eq!(expected.minus_count() % 2, 0);
        current = expected;
    }
    current
}

/// The pseudocode as printed: the shifted copy is rotated and multiplied
/// into the original tuple. Returns the tuples visited by the outer loop.
pub fn literal_outer_loop(a: &ParityTuple, rounds: usize) -> Vec<ParityTuple> {
    let d = a.len();
    let target = ParityTuple::block(d, 2);
    let mut a = a.clone();
    let mut seen = vec![a.clone()];
    for _ in 0..rounds {
        if a == target {
            break;
        }
        let b = ParityTuple::block(d, a.minus_count());
        let mut shifted = a.entries().to_vec();
        while shifted != b.entries() {
            let i = (0..d - 1).find(|&i| shifted[i] == 1 && shifted[i + 1] == -1).unwrap();
            let (x, y, z) = (i, (i + 1) % d, (i + 2) % d);
            let (vx, vy, vz) = (shifted[x], shifted[y], shifted[z]);
            shifted[x] = vy;
            shifted[y] = vz;
            shifted[z] = vx;
        }
        let rotated = ParityTuple::new(shifted).unwrap().rotated();
        a = a.times(&rotated);
        seen.push(a.clone());
    }
    seen
}
