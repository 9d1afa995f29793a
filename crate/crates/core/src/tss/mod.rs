//! Totally symmetric sets in finite groups.
//!
//! A set `S = {x_1, ..., x_k}` is totally symmetric when its elements commute
//! pairwise and every permutation of `S` is induced by conjugation. Since the
//! permutations realized by the setwise stabilizer form a subgroup of
//! `Sym(S)`, it is enough to realize the adjacent transpositions
//! `(i i+1)`; a [`TssCertificate`] stores one conjugating witness for each.

mod product;
mod search;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::group::{Elem, FiniteGroup, GroupDescriptor, GroupError};

pub use product::{coordinate_structure, CoordinatePattern, CoordinateStructure};
pub use search::{
    dedup_up_to_conjugacy, enumerate_tss, enumerate_tss_with, max_tss_size, max_tss_size_with,
    tss_levels, SearchOptions, TssReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TssError {
    #[error("the empty set is not a candidate")]
    EmptySet,
    #[error("element {0} appears more than once")]
    DuplicateElement(Elem),
    #[error("set is not totally symmetric")]
    NotTss,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A verified totally symmetric set.
///
/// `elements` is sorted. `witnesses[i]` conjugates `elements[i]` to
/// `elements[i + 1]` and back while fixing every other element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TssCertificate {
    pub elements: Vec<Elem>,
    pub witnesses: Vec<Elem>,
}

impl TssCertificate {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Re-checks the certificate against `g` from scratch.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        let s = &self.elements;
        let k = s.len();
        if k == 0 || self.witnesses.len() != k - 1 || s.iter().any(|&x| x >= g.order()) {
            return false;
        }
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        let commuting = (0..k).all(|i| (i + 1..k).all(|j| g.commutes(s[i], s[j])));
        commuting
            && self.witnesses.iter().enumerate().all(|(i, &h)| {
                h < g.order()
                    && (0..k).all(|j| {
                        let expected = match j {
                            _ if j == i => s[i + 1],
                            _ if j == i + 1 => s[i],
                            _ => s[j],
                        };
                        g.conj(h, s[j]) == expected
                    })
            })
    }

    /// Witnesses keyed by the transposition they realize, using 1-based
    /// positions in the sorted element list, e.g. `"(1 2)"`.
    pub fn keyed_witnesses(&self) -> BTreeMap<String, Elem> {
        self.witnesses
            .iter()
            .enumerate()
            .map(|(i, &h)| (format!("({} {})", i + 1, i + 2), h))
            .collect()
    }
}

/// One permutation of `S` realized by the stabilizer, with the first
/// stabilizer element (by index) that realizes it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizedPermutation {
    /// `perm[i] = j` when the witness conjugates position `i` to position `j`.
    pub perm: Vec<usize>,
    pub witness: Elem,
}

/// `1 -> kernel -> Stab(S) -> realized -> 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerDecomposition {
    pub set: Vec<Elem>,
    pub stabilizer: Vec<Elem>,
    pub kernel: Vec<Elem>,
    pub realized: Vec<RealizedPermutation>,
}

impl StabilizerDecomposition {
    pub fn ses_holds(&self) -> bool {
        self.stabilizer.len() == self.kernel.len() * self.realized.len()
    }

    pub fn realizes_full_symmetric_group(&self) -> bool {
        Some(self.realized.len()) == factorial(self.set.len())
    }
}

pub(crate) fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Validates a candidate set and returns it sorted.
pub fn normalize_set(g: &FiniteGroup, s: &[Elem]) -> Result<Vec<Elem>, TssError> {
    if s.is_empty() {
        return Err(TssError::EmptySet);
    }
    let mut sorted = s.to_vec();
    for &x in &sorted {
        g.check(x)?;
    }
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(TssError::DuplicateElement(w[0]));
    }
    Ok(sorted)
}

/// Position of each element of the sorted set `s`, or `usize::MAX`.
fn positions(g: &FiniteGroup, s: &[Elem]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in s.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

/// The permutation of `s` induced by conjugation by `h`, if `h` stabilizes
/// `s` setwise.
fn induced_permutation(g: &FiniteGroup, pos: &[usize], s: &[Elem], h: Elem) -> Option<Vec<usize>> {
    s.iter()
        .map(|&x| match pos[g.conj(h, x)] {
            usize::MAX => None,
            j => Some(j),
        })
        .collect()
}

/// Setwise conjugation stabilizer of `s`, its kernel, and the permutations
/// of `s` it realizes. Works for any nonempty set.
pub fn realized_permutations(
    g: &FiniteGroup,
    s: &[Elem],
) -> Result<StabilizerDecomposition, TssError> {
    let set = normalize_set(g, s)?;
    let pos = positions(g, &set);
    let mut stabilizer = Vec::new();
    let mut kernel = Vec::new();
    let mut realized: BTreeMap<Vec<usize>, Elem> = BTreeMap::new();
    for h in g.elements() {
        if let Some(perm) = induced_permutation(g, &pos, &set, h) {
            stabilizer.push(h);
            if perm.iter().enumerate().all(|(i, &j)| i == j) {
                kernel.push(h);
            }
            realized.entry(perm).or_insert(h);
        }
    }
    let realized = realized
        .into_iter()
        .map(|(perm, witness)| RealizedPermutation { perm, witness })
        .collect();
    Ok(StabilizerDecomposition {
        set,
        stabilizer,
        kernel,
        realized,
    })
}

/// Witness for the transposition `(i i+1)` of the sorted set, searched among
/// `candidates`.
fn transposition_witness(
    g: &FiniteGroup,
    s: &[Elem],
    i: usize,
    candidates: impl IntoIterator<Item = Elem>,
) -> Option<Elem> {
    candidates.into_iter().find(|&h| {
        g.conj(h, s[i]) == s[i + 1]
            && g.conj(h, s[i + 1]) == s[i]
            && s.iter()
                .enumerate()
                .all(|(j, &x)| j == i || j == i + 1 || g.conj(h, x) == x)
    })
}

fn pairwise_commuting(g: &FiniteGroup, s: &[Elem]) -> bool {
    (0..s.len()).all(|i| (i + 1..s.len()).all(|j| g.commutes(s[i], s[j])))
}

/// Certificate for `s` when it is totally symmetric, `None` otherwise.
pub fn is_tss(g: &FiniteGroup, s: &[Elem]) -> Result<Option<TssCertificate>, TssError> {
    let set = normalize_set(g, s)?;
    Ok(certify_sorted(g, set, None))
}

/// `set` must be sorted and distinct. `stabilizer` narrows the witness
/// search when already known.
pub(crate) fn certify_sorted(
    g: &FiniteGroup,
    set: Vec<Elem>,
    stabilizer: Option<&[Elem]>,
) -> Option<TssCertificate> {
    if !pairwise_commuting(g, &set) {
        return None;
    }
    let mut witnesses = Vec::with_capacity(set.len().saturating_sub(1));
    for i in 0..set.len().saturating_sub(1) {
        let w = match stabilizer {
            Some(stab) => transposition_witness(g, &set, i, stab.iter().copied()),
            None => transposition_witness(g, &set, i, g.elements()),
        }?;
        witnesses.push(w);
    }
    Some(TssCertificate {
        elements: set,
        witnesses,
    })
}

/// For a totally symmetric `s`: `|s|!` divides `|Stab(s)|` and `|Stab(s)|`
/// divides `|G|`.
pub fn factorial_divisibility(g: &FiniteGroup, s: &[Elem]) -> Result<bool, TssError> {
    if is_tss(g, s)?.is_none() {
        return Err(TssError::NotTss);
    }
    let dec = realized_permutations(g, s)?;
    let stab = dec.stabilizer.len();
    let fact = factorial(dec.set.len()).ok_or(TssError::NotTss)?;
    Ok(stab % fact == 0 && g.order() % stab == 0)
}

/// Whether the set contains some `x` together with `x^-1 != x`.
pub fn contains_inverse_pair(g: &FiniteGroup, s: &[Elem]) -> bool {
    s.iter().any(|&x| {
        let y = g.inv(x);
        y != x && s.contains(&y)
    })
}

/// Serializable view of a [`TssReport`] with labels attached.
#[derive(Debug, Clone, Serialize)]
pub struct TssReportDocument {
    pub format: u32,
    pub group: GroupDescriptor,
    pub s_of_g: usize,
    pub up_to_conjugacy: bool,
    pub counts_by_size: BTreeMap<usize, usize>,
    pub sets: Vec<TssSetRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TssSetRecord {
    pub elements: Vec<Elem>,
    pub labels: Vec<String>,
    pub witnesses: BTreeMap<String, Elem>,
}

impl TssSetRecord {
    pub fn new(g: &FiniteGroup, cert: &TssCertificate) -> Self {
        TssSetRecord {
            elements: cert.elements.clone(),
            labels: cert.elements.iter().map(|&x| g.label(x)).collect(),
            witnesses: cert.keyed_witnesses(),
        }
    }
}
