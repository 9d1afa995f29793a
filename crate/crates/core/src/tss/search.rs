use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use super::{certify_sorted, factorial, TssCertificate, TssReportDocument, TssSetRecord};
use crate::group::{conjugacy_classes, ConjugacyPartition, Elem, FiniteGroup};

/// Knobs for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip sizes `k` with `k!` not dividing `|G|`, and candidates whose
    /// stabilizer order is not divisible by `k!`.
    pub factorial_gate: bool,
    /// Collapse sets that are simultaneously conjugate.
    pub up_to_conjugacy: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            factorial_gate: true,
            up_to_conjugacy: false,
        }
    }
}

/// Maximal TSS size with every maximal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TssReport {
    pub group_name: String,
    pub group_order: usize,
    pub s_of_g: usize,
    pub counts_by_size: BTreeMap<usize, usize>,
    pub up_to_conjugacy: bool,
    pub maximal_sets: Vec<TssCertificate>,
}

impl TssReport {
    pub fn document(&self, g: &FiniteGroup) -> TssReportDocument {
        TssReportDocument {
            format: 1,
            group: g.descriptor(),
            s_of_g: self.s_of_g,
            up_to_conjugacy: self.up_to_conjugacy,
            counts_by_size: self.counts_by_size.clone(),
            sets: self
                .maximal_sets
                .iter()
                .map(|c| TssSetRecord::new(g, c))
                .collect(),
        }
    }
}

/// Setwise stabilizer of a sorted set under conjugation.
fn stabilizer(g: &FiniteGroup, member: &[bool], set: &[Elem]) -> Vec<Elem> {
    g.elements()
        .filter(|&h| set.iter().all(|&x| member[g.conj(h, x)]))
        .collect()
}

fn certify_candidate(g: &FiniteGroup, set: Vec<Elem>, gate: bool) -> Option<TssCertificate> {
    let mut member = vec![false; g.order()];
    for &x in &set {
        member[x] = true;
    }
    let stab = stabilizer(g, &member, &set);
    if gate && stab.len() % factorial(set.len())? != 0 {
        return None;
    }
    certify_sorted(g, set, Some(&stab))
}

/// Every TSS of size 2. Members of such a set are conjugate, so pairs are
/// drawn from within one conjugacy class.
fn pairs(g: &FiniteGroup, classes: &ConjugacyPartition, gate: bool) -> Vec<TssCertificate> {
    let mut out: Vec<TssCertificate> = classes
        .classes
        .par_iter()
        .flat_map_iter(|class| {
            let mut found = Vec::new();
            for (i, &x) in class.iter().enumerate() {
                for &y in &class[i + 1..] {
                    if g.commutes(x, y) {
                        if let Some(c) = certify_candidate(g, vec![x, y], gate) {
                            found.push(c);
                        }
                    }
                }
            }
            found
        })
        .collect();
    out.sort();
    out
}

/// Extends each size-`k` TSS by a larger element of the same class. Every
/// subset of a TSS is a TSS, so a candidate survives only when all of its
/// `k`-subsets were found at the previous level.
fn extend(
    g: &FiniteGroup,
    classes: &ConjugacyPartition,
    level: &[TssCertificate],
    gate: bool,
) -> Vec<TssCertificate> {
    let known: HashSet<&[Elem]> = level.iter().map(|c| c.elements.as_slice()).collect();
    let mut out: Vec<TssCertificate> = level
        .par_iter()
        .flat_map_iter(|base| {
            let s = &base.elements;
            let last = *s.last().unwrap();
            let class = &classes.classes[classes.class_of[last]];
            let mut found = Vec::new();
            for &y in class.iter().filter(|&&y| y > last) {
                if !s.iter().all(|&x| g.commutes(x, y)) {
                    continue;
                }
                let mut cand = s.clone();
                cand.push(y);
                let subsets_known = (0..s.len()).all(|drop| {
                    let sub: Vec<Elem> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &x)| x)
                        .collect();
                    known.contains(sub.as_slice())
                });
                if !subsets_known {
                    continue;
                }
                if let Some(c) = certify_candidate(g, cand, gate) {
                    found.push(c);
                }
            }
            found
        })
        .collect();
    out.sort();
    out
}

fn next_level(
    g: &FiniteGroup,
    classes: &ConjugacyPartition,
    level: &[TssCertificate],
    size: usize,
    opts: SearchOptions,
) -> Vec<TssCertificate> {
    if opts.factorial_gate && factorial(size).map_or(true, |f| g.order() % f != 0) {
        return Vec::new();
    }
    if size == 2 {
        pairs(g, classes, opts.factorial_gate)
    } else {
        extend(g, classes, level, opts.factorial_gate)
    }
}

fn singletons(g: &FiniteGroup) -> Vec<TssCertificate> {
    g.elements()
        .map(|x| TssCertificate {
            elements: vec![x],
            witnesses: vec![],
        })
        .collect()
}

/// All TSS of exactly `size` elements, in lexicographic order of their
/// sorted element lists.
pub fn enumerate_tss(g: &FiniteGroup, size: usize) -> Vec<TssCertificate> {
    enumerate_tss_with(g, size, SearchOptions::default())
}

pub fn enumerate_tss_with(
    g: &FiniteGroup,
    size: usize,
    opts: SearchOptions,
) -> Vec<TssCertificate> {
    if size == 0 {
        return Vec::new();
    }
    let classes = conjugacy_classes(g);
    let mut level = singletons(g);
    for k in 2..=size {
        if level.is_empty() {
            break;
        }
        level = next_level(g, &classes, &level, k, opts);
    }
    if opts.up_to_conjugacy {
        dedup_up_to_conjugacy(g, level)
    } else {
        level
    }
}

/// `S(G)` and all TSS of that size, found by ascending-size search.
pub fn max_tss_size(g: &FiniteGroup) -> TssReport {
    max_tss_size_with(g, SearchOptions::default())
}

pub fn max_tss_size_with(g: &FiniteGroup, opts: SearchOptions) -> TssReport {
    let mut levels = tss_levels(g, opts);
    let counts = levels
        .iter()
        .enumerate()
        .map(|(i, l)| (i + 1, l.len()))
        .collect();
    let s_of_g = levels.len();
    let level = levels.pop().expect("singletons always exist");
    let maximal_sets = if opts.up_to_conjugacy {
        dedup_up_to_conjugacy(g, level)
    } else {
        level
    };
    TssReport {
        group_name: g.name().to_string(),
        group_order: g.order(),
        s_of_g,
        counts_by_size: counts,
        up_to_conjugacy: opts.up_to_conjugacy,
        maximal_sets,
    }
}

/// Every TSS of every size: entry `k - 1` holds the sets of size `k`, up to
/// `S(G)`. `up_to_conjugacy` is ignored.
pub fn tss_levels(g: &FiniteGroup, opts: SearchOptions) -> Vec<Vec<TssCertificate>> {
    let classes = conjugacy_classes(g);
    let mut levels = vec![singletons(g)];
    loop {
        let k = levels.len();
        let next = next_level(g, &classes, &levels[k - 1], k + 1, opts);
        if next.is_empty() {
            return levels;
        }
        levels.push(next);
    }
}

/// Keeps one set per orbit under simultaneous conjugation: the
/// lexicographically least member of the orbit.
pub fn dedup_up_to_conjugacy(g: &FiniteGroup, sets: Vec<TssCertificate>) -> Vec<TssCertificate> {
    sets.into_iter()
        .filter(|c| {
            g.elements().all(|h| {
                let mut image: Vec<Elem> = c.elements.iter().map(|&x| g.conj(h, x)).collect();
                image.sort_unstable();
                image >= c.elements
            })
        })
        .collect()
}
