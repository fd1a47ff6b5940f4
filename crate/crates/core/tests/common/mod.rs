#![allow(dead_code)]

use ht_core::Formula;
use proptest::prelude::*;

/// Every formula with at most `nodes` nodes over the given leaves.
pub fn all_formulas(leaves: &[Formula], nodes: usize) -> Vec<Formula> {
    // by_size[n] holds the formulas with exactly n nodes
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(), leaves.to_vec()];
    for n in 2..=nodes {
        let mut here = Vec::new();
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    here.push(Formula::and(a.clone(), b.clone()));
                    here.push(Formula::or(a.clone(), b.clone()));
                    here.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        by_size.push(here);
    }
    by_size.into_iter().flatten().collect()
}

/// Every formula of connective depth at most `depth` over the given leaves.
pub fn all_by_depth(leaves: &[Formula], depth: usize) -> Vec<Formula> {
    let mut all = leaves.to_vec();
    for _ in 0..depth {
        let mut next = leaves.to_vec();
        for a in &all {
            for b in &all {
                next.push(Formula::and(a.clone(), b.clone()));
                next.push(Formula::or(a.clone(), b.clone()));
                next.push(Formula::imp(a.clone(), b.clone()));
            }
        }
        all = next;
    }
    all
}

pub fn vars(n: u64) -> Vec<Formula> {
    (1..=n).map(Formula::var).collect()
}

pub fn formula(max_var: u64, depth: u32, top: bool) -> impl Strategy<Value = Formula> {
    let mut leaves = vec![(1..=max_var).prop_map(Formula::var).boxed(), Just(Formula::Bot).boxed()];
    if top {
        leaves.push(Just(Formula::Top).boxed());
    }
    let leaf = proptest::strategy::Union::new(leaves);
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}
