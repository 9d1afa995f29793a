use serde::Serialize;

use crate::group::Elem;

/// How one coordinate of a subset of `G × H` behaves across the subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoordinatePattern {
    AllEqual,
    AllDistinct,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinateStructure {
    pub first: CoordinatePattern,
    pub second: CoordinatePattern,
}

fn pattern(values: &[Elem]) -> CoordinatePattern {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() == 1 {
        CoordinatePattern::AllEqual
    } else if sorted.len() == values.len() {
        CoordinatePattern::AllDistinct
    } else {
        CoordinatePattern::Mixed
    }
}

/// Reads a subset of a direct product through the layout `(x, y) -> x * |H| + y`.
pub fn coordinate_structure(set: &[Elem], right_order: usize) -> CoordinateStructure {
    let firsts: Vec<Elem> = set.iter().map(|&z| z / right_order).collect();
    let seconds: Vec<Elem> = set.iter().map(|&z| z % right_order).collect();
    CoordinateStructure {
        first: pattern(&firsts),
        second: pattern(&seconds),
    }
}
