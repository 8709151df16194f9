#![allow(dead_code)]

use misere::{Engine, PositionId};
use proptest::prelude::*;

/// A position as a plain tree, built into an engine on demand.
#[derive(Clone, Debug)]
pub struct Recipe(pub Vec<Recipe>, pub Vec<Recipe>);

impl Recipe {
    pub fn build(&self, e: &Engine) -> PositionId {
        let l: Vec<PositionId> = self.0.iter().map(|r| r.build(e)).collect();
        let r: Vec<PositionId> = self.1.iter().map(|r| r.build(e)).collect();
        e.build(&l, &r).unwrap()
    }

    /// Same position with options reversed and the first option repeated.
    pub fn shuffled(&self) -> Recipe {
        let side = |v: &Vec<Recipe>| {
            let mut v: Vec<Recipe> = v.iter().rev().map(Recipe::shuffled).collect();
            if let Some(first) = v.first().cloned() {
                v.push(first);
            }
            v
        };
        Recipe(side(&self.0), side(&self.1))
    }
}

pub fn recipe(depth: u32, width: usize) -> impl Strategy<Value = Recipe> {
    let leaf = Just(Recipe(vec![], vec![]));
    leaf.prop_recursive(depth, 40, width as u32, move |inner| {
        (prop::collection::vec(inner.clone(), 0..=width), prop::collection::vec(inner, 0..=width))
            .prop_map(|(l, r)| Recipe(l, r))
    })
}

/// Binary all-small trees: either 0 or `{x|y}`.
pub fn binary_all_small(depth: u32) -> impl Strategy<Value = Recipe> {
    let leaf = Just(Recipe(vec![], vec![]));
    leaf.prop_recursive(depth, 64, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Recipe(vec![l], vec![r]))
    })
}

pub fn impartial(depth: u32) -> impl Strategy<Value = Recipe> {
    let leaf = Just(Recipe(vec![], vec![]));
    leaf.prop_recursive(depth, 30, 3, |inner| {
        prop::collection::vec(inner, 0..=3).prop_map(|v| Recipe(v.clone(), v))
    })
}
