use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Rat;

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The nonnegative rational square root, when `q` is a square.
pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_zero() {
        return Some(Rat::zero());
    }
    let num = int_sqrt(q.numer())?;
    let den = int_sqrt(q.denom())?;
    Some(Rat::new(num, den))
}

pub fn is_square_rat(q: &Rat) -> bool {
    rat_sqrt(q).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::{parse_rat, rat};

    #[test]
    fn examples() {
        assert_eq!(rat_sqrt(&parse_rat("4/9").unwrap()), Some(parse_rat("2/3").unwrap()));
        assert!(!is_square_rat(&rat(-648)));
        assert_eq!(rat_sqrt(&rat(11664)), Some(rat(108)));
        assert!(is_square_rat(&rat(0)));
        assert!(!is_square_rat(&parse_rat("2/9").unwrap()));
    }
}
