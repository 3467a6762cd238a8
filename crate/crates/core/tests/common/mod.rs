#![allow(dead_code)]

pub mod brute;
pub mod clauses;
pub mod gen;
pub mod hp;

use sinpa::Integer;

pub fn to_integers(z: &[i64]) -> Vec<Integer> {
    z.iter().map(|&v| Integer::from(v)).collect()
}

pub fn to_i64s(z: &[Integer]) -> Option<Vec<i64>> {
    z.iter().map(Integer::to_i64).collect()
}
