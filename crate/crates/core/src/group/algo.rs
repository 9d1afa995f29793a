use serde::Serialize;

use super::{Elem, FiniteGroup, GroupError, Limits};

/// Partition of a group into conjugacy classes.
///
/// Classes are numbered by their least member, which is also the
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyPartition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<Elem>>,
    pub representative: Vec<Elem>,
}

impl ConjugacyPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyPartition {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    let mut representative = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for h in 0..n {
            let y = g.conj(h, x);
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                members.push(y);
            }
        }
        members.sort_unstable();
        representative.push(x);
        classes.push(members);
    }
    ConjugacyPartition {
        class_of,
        classes,
        representative,
    }
}

pub fn centralizer(g: &FiniteGroup, x: Elem) -> Result<Vec<Elem>, GroupError> {
    g.check(x)?;
    Ok(g.elements().filter(|&y| g.commutes(x, y)).collect())
}

pub fn center(g: &FiniteGroup) -> Vec<Elem> {
    g.elements()
        .filter(|&x| g.elements().all(|y| g.commutes(x, y)))
        .collect()
}

pub fn commutator(g: &FiniteGroup, a: Elem, b: Elem) -> Elem {
    g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))
}

/// Closure of `gens` under multiplication, always containing the identity.
pub(crate) fn closure(g: &FiniteGroup, gens: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; g.order()];
    let mut out = vec![g.identity()];
    member[g.identity()] = true;
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// The subgroup generated by `gens`, sorted.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[Elem]) -> Result<Vec<Elem>, GroupError> {
    if gens.is_empty() {
        return Err(GroupError::EmptyGenerators);
    }
    for &x in gens {
        g.check(x)?;
    }
    // In a finite group, closing under multiplication also closes under
    // inverses.
    Ok(closure(g, gens))
}

pub fn is_subgroup(g: &FiniteGroup, set: &[Elem]) -> bool {
    let mut member = vec![false; g.order()];
    for &x in set {
        if x >= g.order() {
            return false;
        }
        member[x] = true;
    }
    member[g.identity()]
        && set
            .iter()
            .all(|&a| member[g.inv(a)] && set.iter().all(|&b| member[g.mul(a, b)]))
}

/// Whether `sub` is closed under conjugation by every element of `ambient`.
pub fn is_normal_subgroup(g: &FiniteGroup, ambient: &[Elem], sub: &[Elem]) -> bool {
    let mut member = vec![false; g.order()];
    for &x in sub {
        member[x] = true;
    }
    is_subgroup(g, sub)
        && ambient
            .iter()
            .all(|&h| sub.iter().all(|&x| member[g.conj(h, x)]))
}

/// Terms `G ⊇ G' ⊇ G'' ⊇ ...` until the series stabilizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedSeries {
    pub terms: Vec<Vec<Elem>>,
    pub solvable: bool,
}

impl DerivedSeries {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }
}

pub fn derived_series(g: &FiniteGroup) -> DerivedSeries {
    let mut terms = vec![g.elements().collect::<Vec<_>>()];
    loop {
        let current = terms.last().unwrap();
        let mut seen = vec![false; g.order()];
        let mut comms = Vec::new();
        for &a in current {
            for &b in current {
                let c = commutator(g, a, b);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        let next = closure(g, &comms);
        if next.len() == current.len() {
            break;
        }
        terms.push(next);
    }
    let solvable = terms.last().unwrap().len() == 1;
    DerivedSeries { terms, solvable }
}

/// A quotient group together with the projection from the parent.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset of `x` as an element of `group`.
    pub projection: Vec<Elem>,
}

/// `G / N`. Cosets are numbered by their least member.
pub fn quotient(g: &FiniteGroup, normal: &[Elem]) -> Result<Quotient, GroupError> {
    for &x in normal {
        g.check(x)?;
    }
    let all: Vec<Elem> = g.elements().collect();
    if !is_normal_subgroup(g, &all, normal) {
        return Err(GroupError::NotNormal);
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &k in normal {
            projection[g.mul(x, k)] = id;
        }
    }
    let q = reps.len();
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            mul.push(projection[g.mul(a, b)] as u32);
        }
    }
    let labels = reps
        .iter()
        .map(|&r| Some(format!("{}N", g.label(r))))
        .collect();
    let name = format!("{}/N{}", g.name(), normal.len());
    let group = FiniteGroup::from_table(name, q, mul, labels, None, &Limits::default())?;
    Ok(Quotient { group, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, symmetric};

    /// Brute-force conjugacy: is there a witness `h` with `h x h^-1 = y`?
    fn conjugate_by_search(g: &FiniteGroup, x: Elem, y: Elem) -> bool {
        g.elements().any(|h| g.mul(g.mul(h, x), g.inv(h)) == y)
    }

    fn labelled(g: &FiniteGroup, set: &[Elem]) -> Vec<String> {
        set.iter().map(|&x| g.label(x)).collect()
    }

    #[test]
    fn cyclic_classes_are_singletons() {
        let p = conjugacy_classes(&cyclic(5).unwrap());
        assert_eq!(p.len(), 5);
        assert!(p.classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn dihedral_eight_classes() {
        let g = dihedral(4).unwrap();
        let p = conjugacy_classes(&g);
        let got: Vec<Vec<String>> = p.classes.iter().map(|c| labelled(&g, c)).collect();
        assert_eq!(
            got,
            vec![
                vec!["e"],
                vec!["r", "r^3"],
                vec!["r^2"],
                vec!["s", "sr^2"],
                vec!["sr", "sr^3"],
            ]
        );
    }

    #[test]
    fn symmetric_class_sizes() {
        assert_eq!(conjugacy_classes(&symmetric(3).unwrap()).len(), 3);
        let g = symmetric(4).unwrap();
        let p = conjugacy_classes(&g);
        let mut sizes: Vec<usize> = p.class_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn classes_agree_with_witness_search() {
        for g in [dihedral(5).unwrap(), symmetric(4).unwrap()] {
            let p = conjugacy_classes(&g);
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(
                        p.class_of[x] == p.class_of[y],
                        conjugate_by_search(&g, x, y)
                    );
                }
            }
            for c in &p.classes {
                assert_eq!(g.order() % c.len(), 0);
            }
            assert_eq!(p.class_sizes().iter().sum::<usize>(), g.order());
        }
    }

    #[test]
    fn centralizer_examples() {
        let g = symmetric(3).unwrap();
        let c = centralizer(&g, g.element_by_label("(1 2 3)").unwrap()).unwrap();
        assert_eq!(labelled(&g, &c).len(), 3);
        let mut names = labelled(&g, &c);
        names.sort();
        assert_eq!(names, vec!["(1 2 3)", "(1 3 2)", "e"]);

        let d = dihedral(4).unwrap();
        let c = centralizer(&d, 1).unwrap();
        assert_eq!(labelled(&d, &c), vec!["e", "r", "r^2", "r^3"]);

        let z = cyclic(7).unwrap();
        assert_eq!(centralizer(&z, 3).unwrap().len(), 7);
        assert_eq!(
            centralizer(&z, 7).unwrap_err(),
            GroupError::IndexOutOfRange { index: 7, order: 7 }
        );
    }

    #[test]
    fn orbit_stabilizer_for_centralizers() {
        let g = symmetric(4).unwrap();
        let p = conjugacy_classes(&g);
        for x in g.elements() {
            let c = centralizer(&g, x).unwrap();
            assert!(is_subgroup(&g, &c));
            assert_eq!(c.len() * p.classes[p.class_of[x]].len(), g.order());
        }
    }

    #[test]
    fn generated_subgroup_examples() {
        let z = cyclic(6).unwrap();
        assert_eq!(generated_subgroup(&z, &[0]).unwrap(), vec![0]);
        assert_eq!(generated_subgroup(&z, &[2]).unwrap(), vec![0, 2, 4]);
        assert_eq!(
            generated_subgroup(&z, &[]).unwrap_err(),
            GroupError::EmptyGenerators
        );

        let s4 = symmetric(4).unwrap();
        let gens = [
            s4.element_by_label("(1 2)").unwrap(),
            s4.element_by_label("(1 2 3 4)").unwrap(),
        ];
        assert_eq!(generated_subgroup(&s4, &gens).unwrap().len(), 24);
    }

    #[test]
    fn derived_series_examples() {
        let ds = derived_series(&cyclic(9).unwrap());
        assert_eq!(ds.orders(), vec![9, 1]);
        assert!(ds.solvable);

        let ds = derived_series(&symmetric(4).unwrap());
        assert_eq!(ds.orders(), vec![24, 12, 4, 1]);
        assert!(ds.solvable);

        let ds = derived_series(&symmetric(5).unwrap());
        assert_eq!(ds.orders(), vec![120, 60]);
        assert!(!ds.solvable);
    }

    #[test]
    fn derived_terms_are_normal_in_predecessor() {
        for g in [symmetric(4).unwrap(), dihedral(6).unwrap()] {
            let ds = derived_series(&g);
            for w in ds.terms.windows(2) {
                assert!(w[1].len() < w[0].len());
                assert!(is_normal_subgroup(&g, &w[0], &w[1]));
            }
        }
    }

    #[test]
    fn quotients() {
        let d8 = dihedral(4).unwrap();
        let q = quotient(&d8, &[0, 2]).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        for a in d8.elements() {
            for b in d8.elements() {
                assert_eq!(
                    q.projection[d8.mul(a, b)],
                    q.group.mul(q.projection[a], q.projection[b])
                );
            }
        }

        let s4 = symmetric(4).unwrap();
        let v: Vec<Elem> = ["e", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]
            .iter()
            .map(|l| s4.element_by_label(l).unwrap())
            .collect();
        let mut v = v;
        v.sort_unstable();
        let q = quotient(&s4, &v).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian());

        let not_normal = [0, s4.element_by_label("(1 2)").unwrap()];
        assert_eq!(
            quotient(&s4, &not_normal).unwrap_err(),
            GroupError::NotNormal
        );
    }

    #[test]
    fn product_projections_are_homomorphisms() {
        let g = dihedral(4).unwrap();
        let h = symmetric(3).unwrap();
        let p = direct_product(&g, &h).unwrap();
        let nh = h.order();
        for a in p.elements() {
            for b in p.elements() {
                let ab = p.mul(a, b);
                assert_eq!(ab / nh, g.mul(a / nh, b / nh));
                assert_eq!(ab % nh, h.mul(a % nh, b % nh));
            }
        }
    }
}
