use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{evaluate_word, HomError, Presentation};
use crate::group::{Elem, FiniteGroup};

/// Default cap on search nodes, one node per tentative generator image.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Every homomorphism from a presentation into a table group, as generator
/// image vectors in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomEnumeration {
    pub images: Vec<Vec<Elem>>,
    /// Search nodes visited.
    pub visited: u64,
}

struct Search<'a> {
    target: &'a FiniteGroup,
    /// Relators grouped by their largest generator (0-based), so each is
    /// tested as soon as all of its letters have images.
    ready: Vec<Vec<&'a [i32]>>,
    budget: u64,
    visited: &'a AtomicU64,
    abort: &'a AtomicBool,
}

impl Search<'_> {
    fn admissible(&self, images: &[Elem], depth: usize) -> bool {
        self.ready[depth]
            .iter()
            .all(|r| evaluate_word(self.target, images, r) == self.target.identity())
    }

    fn tick(&self) -> bool {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
    }

    fn descend(&self, images: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        let depth = images.len();
        if depth == self.ready.len() {
            out.push(images.clone());
            return;
        }
        for x in self.target.elements() {
            if !self.tick() {
                return;
            }
            images.push(x);
            if self.admissible(images, depth) {
                self.descend(images, out);
            }
            images.pop();
        }
    }
}

/// Depth-first assignment of generator images in index order, pruning with
/// each relator once its generators are all assigned. The first generator's
/// image is split across workers and the results are merged in order.
pub fn enumerate_homs(
    pres: &Presentation,
    target: &FiniteGroup,
    budget: u64,
) -> Result<HomEnumeration, HomError> {
    let mut ready: Vec<Vec<&[i32]>> = vec![Vec::new(); pres.generator_count()];
    for r in pres.relators() {
        let last = r
            .iter()
            .map(|x| x.unsigned_abs() as usize - 1)
            .max()
            .expect("nonempty");
        ready[last].push(r);
    }
    let visited = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let search = Search {
        target,
        ready,
        budget,
        visited: &visited,
        abort: &abort,
    };
    let parts: Vec<Vec<Vec<Elem>>> = target
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            if search.tick() {
                let mut images = vec![x];
                if search.admissible(&images, 0) {
                    search.descend(&mut images, &mut out);
                }
            }
            out
        })
        .collect();
    let images: Vec<Vec<Elem>> = parts.into_iter().flatten().collect();
    let visited = visited.load(Ordering::Relaxed);
    if abort.load(Ordering::Relaxed) {
        return Err(HomError::BudgetExceeded {
            budget,
            visited,
            found: images.len(),
        });
    }
    Ok(HomEnumeration { images, visited })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, semidirect_cyclic, SemidirectParams};
    use crate::hom::{braid_presentation, image_is_cyclic, is_homomorphism, GeneratorImageMap};

    /// Plain product over all image tuples.
    fn brute_force(pres: &Presentation, target: &FiniteGroup) -> Vec<Vec<Elem>> {
        let g = pres.generator_count();
        let n = target.order();
        let mut out = Vec::new();
        for code in 0..n.pow(g as u32) {
            let mut images = vec![0; g];
            let mut c = code;
            for slot in images.iter_mut().rev() {
                *slot = c % n;
                c /= n;
            }
            if pres
                .relators()
                .iter()
                .all(|r| evaluate_word(target, &images, r) == target.identity())
            {
                out.push(images);
            }
        }
        out
    }

    #[test]
    fn braid_into_abelian_targets_needs_equal_images() {
        let b3 = braid_presentation(3).unwrap();
        for m in 1..=8 {
            let z = cyclic(m).unwrap();
            let homs = enumerate_homs(&b3, &z, DEFAULT_BUDGET).unwrap().images;
            assert_eq!(homs.len(), m);
            assert!(homs.iter().all(|h| h[0] == h[1]));
            assert!(homs.contains(&vec![z.identity(); 2]));
        }
    }

    #[test]
    fn matches_brute_force() {
        let b4 = braid_presentation(4).unwrap();
        let g21 = semidirect_cyclic(SemidirectParams::new(7, 3, 2)).unwrap();
        let s3 = crate::group::symmetric(3).unwrap();
        for target in [&g21, &s3] {
            let homs = enumerate_homs(&b4, target, DEFAULT_BUDGET).unwrap().images;
            assert_eq!(homs, brute_force(&b4, target));
            for images in homs {
                let map = GeneratorImageMap::new(&b4, target, images).unwrap();
                assert!(is_homomorphism(&map));
            }
        }
    }

    #[test]
    fn b5_into_order_21_has_cyclic_images() {
        let b5 = braid_presentation(5).unwrap();
        let g21 = semidirect_cyclic(SemidirectParams::new(7, 3, 2)).unwrap();
        let homs = enumerate_homs(&b5, &g21, DEFAULT_BUDGET).unwrap().images;
        assert!(!homs.is_empty());
        for images in homs {
            let map = GeneratorImageMap::new(&b5, &g21, images).unwrap();
            assert!(image_is_cyclic(&map).unwrap());
        }
    }

    #[test]
    fn budget_is_reported() {
        let b4 = braid_presentation(4).unwrap();
        let s3 = crate::group::symmetric(3).unwrap();
        match enumerate_homs(&b4, &s3, 10) {
            Err(HomError::BudgetExceeded {
                budget: 10,
                visited,
                ..
            }) => assert!(visited >= 10),
            other => panic!("{other:?}"),
        }
    }
}
