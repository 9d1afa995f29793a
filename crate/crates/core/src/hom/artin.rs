//! Exact equality in the braid group through the Artin action on the free
//! group `F_n`, which is faithful:
//!
//! ```text
//! σ_i:   x_i ↦ x_i x_{i+1} x_i⁻¹,   x_{i+1} ↦ x_i
//! σ_i⁻¹: x_i ↦ x_{i+1},             x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
//! ```

use serde::Serialize;

fn push_reduced(out: &mut Vec<i32>, x: i32) {
    if out.last() == Some(&-x) {
        out.pop();
    } else {
        out.push(x);
    }
}

fn inverse(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&x| -x).collect()
}

/// Applies the automorphism of `σ_|s|^sign(s)` to a reduced word.
fn apply_generator(s: i32, word: &[i32]) -> Vec<i32> {
    let i = s.abs();
    let image = |x: i32| -> Vec<i32> {
        match (x, s > 0) {
            (x, true) if x == i => vec![i, i + 1, -i],
            (x, true) if x == i + 1 => vec![i],
            (x, false) if x == i => vec![i + 1],
            (x, false) if x == i + 1 => vec![-(i + 1), i, i + 1],
            (x, _) => vec![x],
        }
    };
    let mut out = Vec::with_capacity(word.len() + 2);
    for &x in word {
        let piece = if x > 0 { image(x) } else { inverse(&image(-x)) };
        for y in piece {
            push_reduced(&mut out, y);
        }
    }
    out
}

/// Images of `x_1, ..., x_n` under the action of a braid word.
fn action(n: usize, word: &[i32]) -> Vec<Vec<i32>> {
    let mut images: Vec<Vec<i32>> = (1..=n as i32).map(|j| vec![j]).collect();
    for &s in word.iter().rev() {
        for img in &mut images {
            *img = apply_generator(s, img);
        }
    }
    images
}

/// Whether two words in the Artin generators of `B_n` are equal.
pub fn braid_words_equal(n: usize, u: &[i32], v: &[i32]) -> bool {
    action(n, u) == action(n, v)
}

/// A totally symmetric set of the braid group given by words, with one
/// swapping word per adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentedTss {
    pub strands: usize,
    pub elements: Vec<Vec<i32>>,
    pub witnesses: Vec<Vec<i32>>,
}

impl PresentedTss {
    /// `{σ_1, σ_3, σ_5, ...}`, of size `⌊n/2⌋`. The braid
    /// `σ_{k+1} σ_k σ_{k+2} σ_{k+1}` exchanges `σ_k` and `σ_{k+2}` and
    /// commutes with the generators it does not involve.
    pub fn odd_artin(n: usize) -> Self {
        let odd: Vec<i32> = (1..n as i32).step_by(2).collect();
        let elements = odd.iter().map(|&k| vec![k]).collect();
        let witnesses = odd
            .windows(2)
            .map(|w| vec![w[0] + 1, w[0], w[1], w[0] + 1])
            .collect();
        PresentedTss {
            strands: n,
            elements,
            witnesses,
        }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Checks commutation and every swap exactly in `B_n`.
    pub fn verify(&self) -> bool {
        let n = self.strands;
        let s = &self.elements;
        if s.is_empty() || self.witnesses.len() + 1 != s.len() {
            return false;
        }
        let product = |a: &[i32], b: &[i32]| [a, b].concat();
        let commuting = (0..s.len()).all(|i| {
            (i + 1..s.len())
                .all(|j| braid_words_equal(n, &product(&s[i], &s[j]), &product(&s[j], &s[i])))
        });
        let distinct =
            (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !braid_words_equal(n, &s[i], &s[j])));
        commuting
            && distinct
            && self.witnesses.iter().enumerate().all(|(i, h)| {
                s.iter().enumerate().all(|(j, x)| {
                    let target = match j {
                        _ if j == i => &s[i + 1],
                        _ if j == i + 1 => &s[i],
                        _ => x,
                    };
                    // h x = target h
                    braid_words_equal(n, &product(h, x), &product(target, h))
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::braid_presentation;

    #[test]
    fn relators_act_trivially() {
        for n in 2..=6 {
            for r in braid_presentation(n).unwrap().relators() {
                assert!(braid_words_equal(n, r, &[]), "{r:?}");
            }
        }
    }

    #[test]
    fn distinct_braids_are_distinguished() {
        assert!(!braid_words_equal(3, &[1], &[2]));
        assert!(!braid_words_equal(3, &[1, 2], &[2, 1]));
        assert!(!braid_words_equal(3, &[1, 1], &[]));
        assert!(braid_words_equal(3, &[1, -1, 2], &[2]));
    }

    #[test]
    fn odd_generators_are_totally_symmetric() {
        for n in 2..=7 {
            let t = PresentedTss::odd_artin(n);
            assert_eq!(t.size(), n / 2);
            assert!(t.verify(), "n = {n}");
        }
        let mut bad = PresentedTss::odd_artin(4);
        bad.witnesses[0] = vec![2];
        assert!(!bad.verify());
    }
}
