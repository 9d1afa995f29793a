use super::HomError;
use crate::group::{Elem, FiniteGroup, Quotient};

/// A homomorphism between table groups, stored as the full element map.
#[derive(Debug, Clone)]
pub struct ElementMap<'a> {
    pub source: &'a FiniteGroup,
    pub target: &'a FiniteGroup,
    images: Vec<Elem>,
}

impl<'a> ElementMap<'a> {
    /// Accepts `images` only if `images[a·b] = images[a]·images[b]` for every
    /// pair.
    pub fn new(
        source: &'a FiniteGroup,
        target: &'a FiniteGroup,
        images: Vec<Elem>,
    ) -> Result<Self, HomError> {
        if images.len() != source.order() {
            return Err(HomError::ImageCount {
                expected: source.order(),
                got: images.len(),
            });
        }
        if let Some(&index) = images.iter().find(|&&x| x >= target.order()) {
            return Err(HomError::ImageOutOfRange {
                index,
                order: target.order(),
            });
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(HomError::ProductNotPreserved { a, b });
                }
            }
        }
        Ok(ElementMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(g: &'a FiniteGroup) -> Self {
        ElementMap {
            source: g,
            target: g,
            images: g.elements().collect(),
        }
    }

    /// The projection `G → G/N`, verified.
    pub fn projection(source: &'a FiniteGroup, quotient: &'a Quotient) -> Result<Self, HomError> {
        ElementMap::new(source, &quotient.group, quotient.projection.clone())
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }
}

/// Extends generator images along the Cayley graph of `source`. Returns the
/// full map when every edge `x → x·s` is consistent, which makes the map a
/// homomorphism.
fn extend(source: &FiniteGroup, target: &FiniteGroup, gen_images: &[Elem]) -> Option<Vec<Elem>> {
    let gens = source.generators();
    let mut images = vec![usize::MAX; source.order()];
    images[source.identity()] = target.identity();
    let mut queue = vec![source.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (k, &s) in gens.iter().enumerate() {
            let y = source.mul(x, s);
            let value = target.mul(images[x], gen_images[k]);
            if images[y] == usize::MAX {
                images[y] = value;
                queue.push(y);
            } else if images[y] != value {
                return None;
            }
        }
    }
    Some(images)
}

/// Every homomorphism `source → target`, in lexicographic order of the
/// images of `source.generators()`. `budget` caps the number of generator
/// image tuples tried.
pub fn enumerate_table_homs<'a>(
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    budget: u64,
) -> Result<Vec<ElementMap<'a>>, HomError> {
    let gens = source.generators().len();
    let n = target.order() as u64;
    let tuples = (0..gens)
        .try_fold(1u64, |acc, _| acc.checked_mul(n))
        .unwrap_or(u64::MAX);
    if tuples > budget {
        return Err(HomError::BudgetExceeded {
            budget,
            visited: 0,
            found: 0,
        });
    }
    let mut out = Vec::new();
    let mut gen_images = vec![0; gens];
    for code in 0..tuples {
        let mut c = code;
        for slot in gen_images.iter_mut().rev() {
            *slot = (c % n) as Elem;
            c /= n;
        }
        if let Some(images) = extend(source, target, &gen_images) {
            out.push(ElementMap {
                source,
                target,
                images,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quotient, symmetric};

    #[test]
    fn counts_match_known_values() {
        // |Hom(Z_m, Z_n)| = gcd(m, n).
        for (m, n, expected) in [(4, 6, 2), (5, 5, 5), (6, 9, 3), (7, 4, 1)] {
            let (a, b) = (cyclic(m).unwrap(), cyclic(n).unwrap());
            assert_eq!(
                enumerate_table_homs(&a, &b, 1 << 20).unwrap().len(),
                expected
            );
        }
        // S_3 → Z_2 has two homomorphisms, S_3 → S_3 has 10.
        let s3 = symmetric(3).unwrap();
        assert_eq!(
            enumerate_table_homs(&s3, &cyclic(2).unwrap(), 1 << 20)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(enumerate_table_homs(&s3, &s3, 1 << 20).unwrap().len(), 10);
    }

    #[test]
    fn every_enumerated_map_verifies_on_all_pairs() {
        let (d8, s3) = (dihedral(4).unwrap(), symmetric(3).unwrap());
        for m in enumerate_table_homs(&d8, &s3, 1 << 20).unwrap() {
            assert!(ElementMap::new(&d8, &s3, m.images().to_vec()).is_ok());
        }
    }

    #[test]
    fn projections_and_rejections() {
        let s4 = symmetric(4).unwrap();
        let v: Vec<Elem> = ["e", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]
            .iter()
            .map(|l| s4.element_by_label(l).unwrap())
            .collect();
        let q = quotient(&s4, &v).unwrap();
        let p = ElementMap::projection(&s4, &q).unwrap();
        assert!(!p.is_injective());
        assert!(ElementMap::identity(&s4).is_injective());
        let z2 = cyclic(2).unwrap();
        assert!(matches!(
            ElementMap::new(&z2, &z2, vec![1, 1]),
            Err(HomError::ProductNotPreserved { .. })
        ));
        assert!(matches!(
            enumerate_table_homs(&s4, &s4, 10),
            Err(HomError::BudgetExceeded { budget: 10, .. })
        ));
    }
}
