use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// Default step cap for [`reduce_parity_tuple`].
pub const DEFAULT_STEP_CAP: usize = 10_000;

/// An element of `C_2^d` with an even number of `-1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParityTuple {
    entries: Vec<i8>,
}

impl ParityTuple {
    pub fn new(entries: Vec<i8>) -> Result<Self, GroupError> {
        if entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(GroupError::Precondition("entries must be +1 or -1".into()));
        }
        let t = ParityTuple { entries };
        if !t.minus_count().is_multiple_of(2) {
            return Err(GroupError::Precondition("odd number of -1 entries".into()));
        }
        Ok(t)
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn minus_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e == -1).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.minus_count() == 0
    }

    /// `(-1, …, -1, 1, …, 1)` with `count` leading `-1`.
    pub fn block(d: usize, count: usize) -> ParityTuple {
        ParityTuple {
            entries: (0..d).map(|i| if i < count { -1 } else { 1 }).collect(),
        }
    }

    pub fn is_block_form(&self) -> bool {
        *self == ParityTuple::block(self.len(), self.minus_count())
    }

    /// Conjugation by the `d`-cycle: `(a_d, a_1, …, a_(d-1))`.
    pub fn rotated(&self) -> ParityTuple {
        let mut entries = self.entries.clone();
        entries.rotate_right(1);
        ParityTuple { entries }
    }

    pub fn times(&self, other: &ParityTuple) -> ParityTuple {
        ParityTuple {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).collect(),
        }
    }
}

impl fmt::Display for ParityTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// One move of the reduction, with the tuple it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ParityStep {
    /// Cyclic shift of entries `at, at+1, at+2` (0-based), i.e. conjugation
    /// by a 3-cycle. `left` moves every entry one place left.
    Shift { at: usize, left: bool, result: ParityTuple },
    /// Conjugation by the `d`-cycle.
    Rotate { result: ParityTuple },
    /// Product of the tuple before the rotation with the rotated tuple.
    Product { result: ParityTuple },
}

impl ParityStep {
    pub fn result(&self) -> &ParityTuple {
        match self {
            ParityStep::Shift { result, .. } | ParityStep::Rotate { result } | ParityStep::Product { result } => {
                result
            }
        }
    }
}

/// The leftmost 3-shift moving a `-1` left, or `None` in block form.
fn shift_once(a: &ParityTuple) -> Option<ParityStep> {
    let d = a.len();
    let i = (0..d.saturating_sub(1)).find(|&i| a.entries[i] == 1 && a.entries[i + 1] == -1)?;
    let mut entries = a.entries.clone();
    let (at, left) = if i + 2 < d { (i, true) } else { (d - 3, false) };
    if left {
        entries[at..at + 3].rotate_left(1);
    } else {
        entries[at..at + 3].rotate_right(1);
    }
    Some(ParityStep::Shift {
        at,
        left,
        result: ParityTuple { entries },
    })
}

/// Reduces an even non-identity tuple to `(-1, -1, 1, …, 1)`: move it to
/// block form by 3-shifts; while more than two entries are `-1`, multiply
/// the block form by its rotation (leaving exactly two) and shift again.
pub fn reduce_parity_tuple(a: &ParityTuple, cap: usize) -> Result<Vec<ParityStep>, GroupError> {
    let d = a.len();
    if d.is_multiple_of(2) || d < 3 {
        return Err(GroupError::Precondition(format!("tuple length {d} must be odd and >= 3")));
    }
    if a.is_all_ones() {
        return Err(GroupError::Precondition("the all-ones tuple cannot be reduced".into()));
    }
    let target = ParityTuple::block(d, 2);
    let mut trace = Vec::new();
    let mut current = a.clone();
    while current != target {
        if trace.len() >= cap {
            return Err(GroupError::NonTermination { steps: trace.len() });
        }
        let step = match shift_once(&current) {
            Some(step) => step,
            None => {
                let rotated = current.rotated();
                let product = current.times(&rotated);
                trace.push(ParityStep::Rotate { result: rotated });
                ParityStep::Product { result: product }
            }
        };
        current = step.result().clone();
        trace.push(step);
    }
    Ok(trace)
}
