//! Canonical bijection between formulas (without `top`) and positive integers.
//!
//! Layout of a code `n >= 1`, writing `m = n - 1`:
//!
//! ```text
//! m = 0                    bot
//! m = 1 + 4q               p_(q+1)
//! m = 1 + 4q + r, r=1,2,3  and / or / imp, children from cantor_unpair(q)
//! ```
//!
//! A child code `c` enters the pair as `c - 1`. The layout guarantees that a
//! code exceeds every variable index it mentions and the code of every proper
//! subformula, so following definitions through the canonical part of an
//! enumeration always descends.

use alloc::boxed::Box;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::formula::{Formula, Index};

/// Codes wider than this are refused rather than computed.
pub const MAX_CODE_BITS: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("`top` is not part of the formula language and has no index")]
    TopInFormula,
    #[error("formula code exceeds {limit} bits")]
    Overflow { limit: u64 },
}

fn cantor_pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    let tri = (&s * (&s + 1u32)) >> 1u32;
    tri + y
}

fn cantor_unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let root = ((z << 3u32) + 1u32).sqrt();
    let w = (root - 1u32) >> 1u32;
    let tri = (&w * (&w + 1u32)) >> 1u32;
    let y = z - tri;
    let x = &w - &y;
    (x, y)
}

fn check_width(n: BigUint) -> Result<BigUint, CodingError> {
    if n.bits() > MAX_CODE_BITS {
        Err(CodingError::Overflow {
            limit: MAX_CODE_BITS,
        })
    } else {
        Ok(n)
    }
}

/// Canonical code of a formula of the official language.
pub fn code_of(f: &Formula) -> Result<BigUint, CodingError> {
    match f {
        Formula::Top => Err(CodingError::TopInFormula),
        Formula::Bot => Ok(BigUint::one()),
        Formula::Var(i) => {
            // m = 1 + 4(i - 1), n = m + 1
            let n = ((i.as_biguint() - 1u32) << 2u32) + 2u32;
            check_width(n)
        }
        Formula::And(a, b) => binary_code(1, a, b),
        Formula::Or(a, b) => binary_code(2, a, b),
        Formula::Imp(a, b) => binary_code(3, a, b),
    }
}

fn binary_code(tag: u32, a: &Formula, b: &Formula) -> Result<BigUint, CodingError> {
    let ca = code_of(a)? - 1u32;
    let cb = code_of(b)? - 1u32;
    let q = cantor_pair(&ca, &cb);
    check_width((q << 2u32) + (2 + tag))
}

/// Inverse of [`code_of`]. `n` must be positive.
pub fn decode(n: &Index) -> Formula {
    decode_raw(n.as_biguint())
}

fn decode_raw(n: &BigUint) -> Formula {
    debug_assert!(!n.is_zero());
    let m = n - 1u32;
    if m.is_zero() {
        return Formula::Bot;
    }
    let t = m - 1u32;
    let (q, r) = t.div_rem(&BigUint::from(4u32));
    let r = r.to_u32().expect("remainder below 4");
    if r == 0 {
        return Formula::Var(Index::new(q + 1u32).expect("q + 1 is positive"));
    }
    let (x, y) = cantor_unpair(&q);
    let a = Box::new(decode_raw(&(x + 1u32)));
    let b = Box::new(decode_raw(&(y + 1u32)));
    match r {
        1 => Formula::And(a, b),
        2 => Formula::Or(a, b),
        _ => Formula::Imp(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn idx(n: u64) -> Index {
        Index::from_u64(n)
    }

    #[test]
    fn first_codes() {
        assert_eq!(decode(&idx(1)), Formula::Bot);
        assert_eq!(decode(&idx(2)), Formula::var(1));
        assert_eq!(decode(&idx(3)), Formula::and(Formula::Bot, Formula::Bot));
        assert_eq!(decode(&idx(4)), Formula::or(Formula::Bot, Formula::Bot));
        assert_eq!(decode(&idx(5)), Formula::imp(Formula::Bot, Formula::Bot));
        assert_eq!(decode(&idx(6)), Formula::var(2));
    }

    #[test]
    fn code_round_trip_over_initial_segment() {
        for n in 1..5000u64 {
            let f = decode(&idx(n));
            assert_eq!(code_of(&f).unwrap(), BigUint::from(n), "at {n}");
        }
    }

    #[test]
    fn cantor_is_bijective_on_small_square() {
        let mut seen = Vec::new();
        for x in 0..40u32 {
            for y in 0..40u32 {
                let z = cantor_pair(&BigUint::from(x), &BigUint::from(y));
                assert_eq!(cantor_unpair(&z), (BigUint::from(x), BigUint::from(y)));
                seen.push(z);
            }
        }
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 1600);
    }

    #[test]
    fn variable_code_exceeds_index() {
        assert!(code_of(&Formula::var(7)).unwrap() > BigUint::from(7u32));
    }

    #[test]
    fn top_has_no_code() {
        assert_eq!(code_of(&Formula::Top), Err(CodingError::TopInFormula));
        assert_eq!(
            code_of(&Formula::and(Formula::var(1), Formula::Top)),
            Err(CodingError::TopInFormula)
        );
    }

    #[test]
    fn deep_formula_overflows_explicitly() {
        let mut f = Formula::var(5);
        for _ in 0..14 {
            f = Formula::and(f.clone(), f);
        }
        assert_eq!(
            code_of(&f),
            Err(CodingError::Overflow {
                limit: MAX_CODE_BITS
            })
        );
    }
}
