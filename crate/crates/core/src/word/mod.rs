//! Exact arithmetic in three infinite groups: the free group `F_2`, the
//! Baumslag–Solitar groups `BS(1, n)`, and free products `G * H` of two
//! finite groups.
//!
//! Negative results about these groups cannot be checked exhaustively. The
//! bounded searches here report [`SwapSearch::Exhausted`] rather than a
//! disproof, and pair that with exact checks of the algebraic necessary
//! conditions.

mod bs;
mod fp;
mod free;

pub use bs::{
    bs_classification_check, bs_commutes, bs_conjugate, bs_inverse, bs_multiply, bs_swap_search,
    BsBranch, BsClassification, BsElement, SwapSearch,
};
pub use fp::{Factor, FpCase, FpTssVerdict, FpWord, FreeProduct, Syllable};
pub use free::{
    f2_commutes, f2_conjugate_test, f2_cyclic_reduce, f2_inverse, f2_multiply, f2_power,
    f2_primitive_root, f2_reduce, f2_tss_obstruction, reduced_words, F2Commutation, F2Obstruction,
    FreeWord,
};

use crate::tss::TssError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("the identity has no totally symmetric partner to rule out")]
    IdentityWord,
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("{input:?} is not in normal form; write {normal:?}")]
    NotNormalized { input: String, normal: String },
    #[error("letter {0} is not one of ±1 (a) or ±2 (b)")]
    BadLetter(i64),
    #[error("the Baumslag–Solitar parameter n must be nonzero")]
    ZeroParameter,
    #[error("search bound must be at least 1")]
    ZeroBound,
    #[error("the elements do not commute")]
    NotCommuting,
    #[error("the set is empty")]
    EmptySet,
    #[error("{0} appears more than once")]
    Duplicate(String),
    #[error("element {index} is out of range for a factor of order {order}")]
    FactorIndex { index: usize, order: usize },
    #[error(transparent)]
    Tss(#[from] TssError),
}

/// Smallest `d` dividing `s.len()` with `s` equal to `s[..d]` repeated.
pub(crate) fn smallest_period<T: Eq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

/// Least `r` with `rotate_left(a, r) == b`.
pub(crate) fn rotation_offset<T: Eq>(a: &[T], b: &[T]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    let n = a.len();
    (0..n).find(|&r| (0..n).all(|i| a[(i + r) % n] == b[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periods() {
        assert_eq!(smallest_period(&[1, 2, 1, 2]), 2);
        assert_eq!(smallest_period(&[1, 2, 1]), 3);
        assert_eq!(smallest_period(&[7, 7, 7]), 1);
        assert_eq!(smallest_period::<u8>(&[]), 0);
    }

    #[test]
    fn rotations() {
        assert_eq!(rotation_offset(&[1, 2, 3], &[2, 3, 1]), Some(1));
        assert_eq!(rotation_offset(&[1, 2, 3], &[3, 2, 1]), None);
    }
}
