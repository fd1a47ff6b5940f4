mod common;

use ht_core::{code_of, decode, Formula, Index};
use num_bigint::BigUint;
use proptest::prelude::*;

use common::{all_formulas, formula, vars};

fn small_formulas() -> Vec<Formula> {
    let mut leaves = vars(4);
    leaves.push(Formula::Bot);
    all_formulas(&leaves, 5)
}

fn index_of_code(n: &BigUint) -> Index {
    Index::new(n.clone()).unwrap()
}

#[test]
fn decode_then_code_is_identity_on_first_codes() {
    for n in 1..=10_000u64 {
        let f = decode(&Index::from_u64(n));
        assert_eq!(code_of(&f).unwrap(), BigUint::from(n), "{f}");
    }
}

#[test]
fn codes_exceed_variable_indices() {
    for f in small_formulas() {
        let c = code_of(&f).unwrap();
        for v in f.variables() {
            assert!(&c > v.as_biguint(), "{f}");
        }
    }
}

#[test]
fn codes_exceed_proper_subformula_codes() {
    for f in small_formulas() {
        let c = code_of(&f).unwrap();
        for g in f.subformulas() {
            if g != f {
                assert!(c > code_of(&g).unwrap(), "{g} in {f}");
            }
        }
    }
}

#[test]
fn small_formulas_have_distinct_codes() {
    let all = small_formulas();
    let codes: std::collections::BTreeSet<BigUint> =
        all.iter().map(|f| code_of(f).unwrap()).collect();
    assert_eq!(codes.len(), all.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn code_then_decode_is_identity(f in formula(9, 6, false)) {
        let c = code_of(&f).unwrap();
        prop_assert_eq!(decode(&index_of_code(&c)), f);
    }
}
