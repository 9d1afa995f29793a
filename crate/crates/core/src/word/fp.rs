//! Free products `G * H` of two finite table groups, in syllable normal form.

use std::fmt;

use serde::Serialize;

use super::{rotation_offset, WordError};
use crate::group::{Elem, FiniteGroup};
use crate::tss::{is_tss, TssCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Factor {
    G,
    H,
}

impl Factor {
    fn other(self) -> Factor {
        match self {
            Factor::G => Factor::H,
            Factor::H => Factor::G,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::G => "G",
            Factor::H => "H",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Syllable {
    pub factor: Factor,
    pub elem: Elem,
}

/// An element of `G * H` as alternating non-identity syllables. Words are
/// only meaningful together with the [`FreeProduct`] that built them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpWord {
    syllables: Vec<Syllable>,
}

impl FpWord {
    pub fn identity() -> Self {
        FpWord::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }
}

impl fmt::Display for FpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for s in &self.syllables {
            write!(f, "[{}:{}]", s.factor, s.elem)?;
        }
        Ok(())
    }
}

impl Serialize for FpWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The pair of factors, which does all arithmetic on [`FpWord`]s.
#[derive(Debug, Clone, Copy)]
pub struct FreeProduct<'a> {
    pub g: &'a FiniteGroup,
    pub h: &'a FiniteGroup,
}

impl<'a> FreeProduct<'a> {
    pub fn new(g: &'a FiniteGroup, h: &'a FiniteGroup) -> Self {
        FreeProduct { g, h }
    }

    pub fn factor(&self, f: Factor) -> &'a FiniteGroup {
        match f {
            Factor::G => self.g,
            Factor::H => self.h,
        }
    }

    fn push(&self, out: &mut Vec<Syllable>, s: Syllable) {
        let group = self.factor(s.factor);
        if s.elem == group.identity() {
            return;
        }
        match out.last_mut() {
            Some(last) if last.factor == s.factor => {
                let merged = group.mul(last.elem, s.elem);
                if merged == group.identity() {
                    out.pop();
                } else {
                    last.elem = merged;
                }
            }
            _ => out.push(s),
        }
    }

    /// Normal form of an arbitrary syllable sequence.
    pub fn normalize(&self, raw: &[Syllable]) -> Result<FpWord, WordError> {
        let mut out = Vec::with_capacity(raw.len());
        for &s in raw {
            let order = self.factor(s.factor).order();
            if s.elem >= order {
                return Err(WordError::FactorIndex {
                    index: s.elem,
                    order,
                });
            }
            self.push(&mut out, s);
        }
        Ok(FpWord { syllables: out })
    }

    /// The one-syllable word for a factor element.
    pub fn letter(&self, factor: Factor, elem: Elem) -> Result<FpWord, WordError> {
        self.normalize(&[Syllable { factor, elem }])
    }

    pub fn multiply(&self, u: &FpWord, v: &FpWord) -> FpWord {
        let mut out = u.syllables.clone();
        for &s in &v.syllables {
            self.push(&mut out, s);
        }
        FpWord { syllables: out }
    }

    pub fn inverse(&self, u: &FpWord) -> FpWord {
        let syllables = u
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable {
                factor: s.factor,
                elem: self.factor(s.factor).inv(s.elem),
            })
            .collect();
        FpWord { syllables }
    }

    pub fn power(&self, u: &FpWord, k: i64) -> FpWord {
        let base = if k < 0 { self.inverse(u) } else { u.clone() };
        let mut out = FpWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = self.multiply(&out, &base);
        }
        out
    }

    /// `h u h⁻¹`.
    pub fn conjugate(&self, h: &FpWord, u: &FpWord) -> FpWord {
        self.multiply(&self.multiply(h, u), &self.inverse(h))
    }

    pub fn commutes(&self, u: &FpWord, v: &FpWord) -> bool {
        self.multiply(u, v) == self.multiply(v, u)
    }

    /// Writes `w = c · core · c⁻¹` with `core` cyclically reduced, returning
    /// `(core, c)`. While the first and last syllables share a factor, the
    /// first syllable `s₁` moves into `c` and the word becomes
    /// `s₂ ⋯ sₖ₋₁ (sₖ s₁)`. The core has length 0, 1, or an even length.
    pub fn cyclic_reduce(&self, w: &FpWord) -> (FpWord, FpWord) {
        let mut core = w.syllables.clone();
        let mut conj = Vec::new();
        while core.len() >= 2 && core[0].factor == core[core.len() - 1].factor {
            let first = core.remove(0);
            let last = core.pop().expect("length at least 1");
            let group = self.factor(first.factor);
            let merged = Syllable {
                factor: first.factor,
                elem: group.mul(last.elem, first.elem),
            };
            self.push(&mut core, merged);
            conj.push(first);
        }
        (FpWord { syllables: core }, FpWord { syllables: conj })
    }

    /// `Some(h)` with `h u h⁻¹ = v` when `u` and `v` are conjugate.
    ///
    /// Cores of length at most 1 are conjugate iff they lie in the same
    /// factor and are conjugate there; longer cores are conjugate iff one is
    /// a syllable rotation of the other.
    pub fn conjugate_test(&self, u: &FpWord, v: &FpWord) -> Option<FpWord> {
        let (core_u, c_u) = self.cyclic_reduce(u);
        let (core_v, c_v) = self.cyclic_reduce(v);
        let middle = match (core_u.syllables.as_slice(), core_v.syllables.as_slice()) {
            ([], []) => FpWord::identity(),
            ([x], [y]) => {
                if x.factor != y.factor {
                    return None;
                }
                let group = self.factor(x.factor);
                let f = group
                    .elements()
                    .find(|&f| group.conj(f, x.elem) == y.elem)?;
                self.letter(x.factor, f).expect("element of the factor")
            }
            (a, b) if a.len() >= 2 => {
                let r = rotation_offset(a, b)?;
                self.inverse(&FpWord {
                    syllables: a[..r].to_vec(),
                })
            }
            _ => return None,
        };
        Some(self.multiply(&self.multiply(&c_v, &middle), &self.inverse(&c_u)))
    }

    /// Parses `[G:3][H:5]...`, rejecting words that are not in normal form.
    pub fn parse(&self, text: &str) -> Result<FpWord, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(FpWord::identity());
        }
        let mut raw = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let column = text.len() - rest.len() + 1;
            let err = |message: &str| WordError::Parse {
                column,
                message: message.to_string(),
            };
            let body = rest.strip_prefix('[').ok_or_else(|| err("expected `[`"))?;
            let close = body.find(']').ok_or_else(|| err("unclosed `[`"))?;
            let (tag, idx) = body[..close]
                .split_once(':')
                .ok_or_else(|| err("expected `[G:i]` or `[H:i]`"))?;
            let factor = match tag.trim() {
                "G" => Factor::G,
                "H" => Factor::H,
                _ => return Err(err("factor tag must be G or H")),
            };
            let elem: Elem = idx
                .trim()
                .parse()
                .map_err(|_| err("expected an element index"))?;
            raw.push(Syllable { factor, elem });
            rest = body[close + 1..].trim_start();
        }
        let normal = self.normalize(&raw)?;
        if normal.syllables != raw {
            return Err(WordError::NotNormalized {
                input: text.to_string(),
                normal: normal.to_string(),
            });
        }
        Ok(normal)
    }

    /// Every normal-form word with at most `max_len` syllables, shortest
    /// first and lexicographic within a length.
    pub fn words_up_to(&self, max_len: usize) -> Vec<FpWord> {
        let letters = |f: Factor| {
            let group = self.factor(f);
            group.elements().filter(move |&x| x != group.identity())
        };
        let mut out = vec![FpWord::identity()];
        let mut frontier = vec![FpWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                let factors: Vec<Factor> = match w.syllables.last() {
                    None => vec![Factor::G, Factor::H],
                    Some(s) => vec![s.factor.other()],
                };
                for f in factors {
                    for x in letters(f) {
                        let mut syllables = w.syllables.clone();
                        syllables.push(Syllable { factor: f, elem: x });
                        next.push(FpWord { syllables });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Decides whether a set of pairwise commuting words is totally
    /// symmetric.
    ///
    /// Nontrivial commuting elements either lie in one conjugate `wFw⁻¹` of
    /// a factor or are powers of one infinite-order element. In the first
    /// case the set is totally symmetric iff its conjugate back in `F` is,
    /// since any conjugator that maps a nontrivial element of `wFw⁻¹` into
    /// `wFw⁻¹` lies in `wFw⁻¹`. In the second case cyclic core lengths force
    /// a swapped pair to be `{u, u⁻¹}`, which is totally symmetric exactly
    /// when `u` is conjugate to `u⁻¹`; no three such elements can be
    /// pairwise swapped.
    pub fn tss_analyze(&self, set: &[FpWord]) -> Result<FpTssVerdict, WordError> {
        if set.is_empty() {
            return Err(WordError::EmptySet);
        }
        let mut sorted = set.to_vec();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(WordError::Duplicate(w[0].to_string()));
        }
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                if !self.commutes(&sorted[i], &sorted[j]) {
                    return Err(WordError::NotCommuting);
                }
            }
        }
        if sorted.len() == 1 {
            return Ok(FpTssVerdict::accepted(
                FpCase::Singleton,
                sorted,
                Vec::new(),
                None,
            ));
        }
        if sorted.iter().any(FpWord::is_identity) {
            return Ok(FpTssVerdict::rejected(
                FpCase::Singleton,
                sorted,
                "the identity is fixed by every conjugation",
            ));
        }
        let reduced: Vec<(FpWord, FpWord)> = sorted.iter().map(|w| self.cyclic_reduce(w)).collect();
        let torsion = reduced.iter().filter(|(core, _)| core.len() == 1).count();
        if torsion == sorted.len() {
            self.analyze_factor_conjugates(sorted, &reduced)
        } else if torsion == 0 {
            Ok(self.analyze_common_powers(sorted))
        } else {
            Ok(FpTssVerdict::rejected(
                FpCase::CommonPowers,
                sorted,
                "mixes finite-order and infinite-order elements, which are never conjugate",
            ))
        }
    }

    fn analyze_factor_conjugates(
        &self,
        sorted: Vec<FpWord>,
        reduced: &[(FpWord, FpWord)],
    ) -> Result<FpTssVerdict, WordError> {
        let factor = reduced[0].0.syllables[0].factor;
        let conjugator = reduced[0].1.clone();
        let back = self.inverse(&conjugator);
        let mut factor_set = Vec::with_capacity(sorted.len());
        for w in &sorted {
            match self.conjugate(&back, w).syllables.as_slice() {
                [s] if s.factor == factor => factor_set.push(s.elem),
                _ => {
                    return Ok(FpTssVerdict::rejected(
                        FpCase::CommonPowers,
                        sorted,
                        "elements lie in no common conjugate of a factor",
                    ))
                }
            }
        }
        let case = FpCase::ConjugatedFactor {
            factor,
            conjugator: conjugator.clone(),
        };
        let group = self.factor(factor);
        match is_tss(group, &factor_set)? {
            None => Ok(FpTssVerdict::rejected(
                case,
                sorted,
                "the conjugated-back factor set is not totally symmetric",
            )),
            Some(cert) => {
                let lift = |x: Elem| {
                    let letter = self.letter(factor, x).expect("element of the factor");
                    self.conjugate(&conjugator, &letter)
                };
                let elements = cert.elements.iter().map(|&x| lift(x)).collect();
                let witnesses = cert.witnesses.iter().map(|&x| lift(x)).collect();
                Ok(FpTssVerdict::accepted(
                    case,
                    elements,
                    witnesses,
                    Some(cert),
                ))
            }
        }
    }

    fn analyze_common_powers(&self, sorted: Vec<FpWord>) -> FpTssVerdict {
        if sorted.len() > 2 {
            return FpTssVerdict::rejected(
                FpCase::CommonPowers,
                sorted,
                "a swapped pair of common powers must be mutually inverse, so at most two elements fit",
            );
        }
        let (u, v) = (&sorted[0], &sorted[1]);
        if self.inverse(u) != *v {
            return FpTssVerdict::rejected(
                FpCase::CommonPowers,
                sorted,
                "common powers with different exponents have cyclic cores of different lengths",
            );
        }
        match self.conjugate_test(u, v) {
            None => {
                FpTssVerdict::rejected(FpCase::CommonPowers, sorted, "u is not conjugate to u⁻¹")
            }
            Some(h) => FpTssVerdict::accepted(FpCase::CommonPowers, sorted, vec![h], None),
        }
    }
}

/// Which of the three shapes a commuting set takes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FpCase {
    Singleton,
    /// All elements lie in `conjugator · F · conjugator⁻¹`.
    ConjugatedFactor {
        factor: Factor,
        conjugator: FpWord,
    },
    /// All elements are powers of one infinite-order element.
    CommonPowers,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpTssVerdict {
    pub is_tss: bool,
    pub case: FpCase,
    /// The set, in the order the witnesses refer to.
    pub elements: Vec<FpWord>,
    /// `witnesses[i]` swaps `elements[i]` and `elements[i + 1]` and fixes
    /// the rest.
    pub witnesses: Vec<FpWord>,
    pub factor_certificate: Option<TssCertificate>,
    pub reason: Option<String>,
}

impl FpTssVerdict {
    fn accepted(
        case: FpCase,
        elements: Vec<FpWord>,
        witnesses: Vec<FpWord>,
        factor_certificate: Option<TssCertificate>,
    ) -> Self {
        FpTssVerdict {
            is_tss: true,
            case,
            elements,
            witnesses,
            factor_certificate,
            reason: None,
        }
    }

    fn rejected(case: FpCase, elements: Vec<FpWord>, reason: &str) -> Self {
        FpTssVerdict {
            is_tss: false,
            case,
            elements,
            witnesses: Vec::new(),
            factor_certificate: None,
            reason: Some(reason.to_string()),
        }
    }

    /// A certified set of size at least 2 that is a conjugate of a factor
    /// set.
    pub fn reduces_to_factor(&self) -> bool {
        self.is_tss && self.factor_certificate.is_some()
    }

    /// Re-checks the witnesses from scratch.
    pub fn verify(&self, fp: &FreeProduct<'_>) -> bool {
        let s = &self.elements;
        if !self.is_tss || self.witnesses.len() + 1 != s.len() {
            return false;
        }
        let commuting = (0..s.len()).all(|i| (i + 1..s.len()).all(|j| fp.commutes(&s[i], &s[j])));
        commuting
            && self.witnesses.iter().enumerate().all(|(i, h)| {
                s.iter().enumerate().all(|(j, x)| {
                    let target = if j == i {
                        &s[i + 1]
                    } else if j == i + 1 {
                        &s[i]
                    } else {
                        x
                    };
                    fp.conjugate(h, x) == *target
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, symmetric};
    use proptest::prelude::*;

    fn syl(factor: Factor, elem: Elem) -> Syllable {
        Syllable { factor, elem }
    }

    #[test]
    fn normal_form_examples() {
        let (d8, s3) = (dihedral(4).unwrap(), symmetric(3).unwrap());
        let fp = FreeProduct::new(&d8, &s3);
        let g1 = fp.letter(Factor::G, 1).unwrap();
        let g2 = fp.letter(Factor::G, 5).unwrap();
        let h = fp.letter(Factor::H, 3).unwrap();
        assert!(fp.multiply(&g1, &fp.inverse(&g1)).is_identity());
        let left = fp.multiply(&fp.multiply(&g1, &h), &g2);
        let right = fp.multiply(&fp.inverse(&g2), &fp.inverse(&h));
        assert_eq!(fp.multiply(&left, &right), g1);
        let gh = fp.multiply(&g1, &h);
        let gh2 = fp.multiply(&g2, &fp.letter(Factor::H, 1).unwrap());
        assert_eq!(fp.multiply(&gh, &gh2).len(), 4);
        assert_eq!(
            fp.normalize(&[syl(Factor::G, 1), syl(Factor::H, 0), syl(Factor::G, 3)])
                .unwrap(),
            FpWord::identity()
        );
        assert!(matches!(
            fp.normalize(&[syl(Factor::H, 6)]),
            Err(WordError::FactorIndex { index: 6, order: 6 })
        ));
    }

    #[test]
    fn cyclic_reduction_examples() {
        let (d8, s3) = (dihedral(4).unwrap(), symmetric(3).unwrap());
        let fp = FreeProduct::new(&d8, &s3);
        let g = fp.letter(Factor::G, 1).unwrap();
        let h = fp.letter(Factor::H, 3).unwrap();
        let (core, c) = fp.cyclic_reduce(&fp.conjugate(&g, &h));
        assert_eq!((core, c), (h.clone(), g.clone()));
        let gh = fp.multiply(&g, &h);
        assert_eq!(fp.cyclic_reduce(&gh), (gh.clone(), FpWord::identity()));
        // g₁ h g₂ = g₁ · (h g₂g₁) · g₁⁻¹
        let g2 = fp.letter(Factor::G, 4).unwrap();
        let w = fp.multiply(&gh, &g2);
        let (core, c) = fp.cyclic_reduce(&w);
        let g2g1 = fp.multiply(&g2, &g);
        assert_eq!(core, fp.multiply(&h, &g2g1));
        assert_eq!(c, g);
    }

    #[test]
    fn parse_and_display() {
        let (z3, s3) = (cyclic(3).unwrap(), symmetric(3).unwrap());
        let fp = FreeProduct::new(&z3, &s3);
        let w = fp.parse("[G:1][H:5][G:2]").unwrap();
        assert_eq!(w.to_string(), "[G:1][H:5][G:2]");
        match fp.parse("[G:1][G:2][H:1]").unwrap_err() {
            WordError::NotNormalized { normal, .. } => assert_eq!(normal, "[H:1]"),
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            fp.parse("[K:1]"),
            Err(WordError::Parse { column: 1, .. })
        ));
        assert!(fp.parse("[G:0]").is_err());
        assert_eq!(fp.parse("e").unwrap(), FpWord::identity());
    }

    #[test]
    fn conjugated_factor_set_is_certified() {
        let (d8, s3) = (dihedral(4).unwrap(), symmetric(3).unwrap());
        let fp = FreeProduct::new(&d8, &s3);
        let w = fp.parse("[H:1][G:4]").unwrap();
        let r = d8.element_by_label("r").unwrap();
        let r3 = d8.element_by_label("r^3").unwrap();
        let set: Vec<FpWord> = [r, r3]
            .iter()
            .map(|&x| fp.conjugate(&w, &fp.letter(Factor::G, x).unwrap()))
            .collect();
        let v = fp.tss_analyze(&set).unwrap();
        assert!(v.is_tss && v.reduces_to_factor(), "{v:?}");
        assert_eq!(v.factor_certificate.as_ref().unwrap().elements, vec![r, r3]);
        assert!(v.verify(&fp));
    }

    #[test]
    fn common_powers_are_rejected_without_inverse_conjugacy() {
        let (d8, s3) = (dihedral(4).unwrap(), symmetric(3).unwrap());
        let fp = FreeProduct::new(&d8, &s3);
        let v = fp.parse("[G:1][H:1]").unwrap();
        let verdict = fp.tss_analyze(&[v.clone(), fp.power(&v, 2)]).unwrap();
        assert!(!verdict.is_tss);
        assert_eq!(verdict.case, FpCase::CommonPowers);
        let single = fp.tss_analyze(&[v.clone()]).unwrap();
        assert!(single.is_tss && single.case == FpCase::Singleton);
        assert_eq!(fp.tss_analyze(&[]), Err(WordError::EmptySet));
        let g = fp.letter(Factor::G, 1).unwrap();
        assert_eq!(fp.tss_analyze(&[v, g]), Err(WordError::NotCommuting));
    }

    #[test]
    fn involutions_swap_an_element_and_its_inverse() {
        // In Z₂ * Z₃, u = a h a h² is conjugate to u⁻¹, so {u, u⁻¹} is a
        // totally symmetric set that is not a conjugate of a factor set.
        let (z2, z3) = (cyclic(2).unwrap(), cyclic(3).unwrap());
        let fp = FreeProduct::new(&z2, &z3);
        let u = fp.parse("[G:1][H:1][G:1][H:2]").unwrap();
        let verdict = fp.tss_analyze(&[u.clone(), fp.inverse(&u)]).unwrap();
        assert!(verdict.is_tss);
        assert!(!verdict.reduces_to_factor());
        assert!(verdict.verify(&fp));
    }

    #[test]
    fn odd_factors_have_no_inverse_conjugate_powers() {
        let z3 = cyclic(3).unwrap();
        let fp = FreeProduct::new(&z3, &z3);
        for u in fp
            .words_up_to(4)
            .iter()
            .filter(|w| fp.cyclic_reduce(w).0.len() >= 2)
        {
            assert!(fp.conjugate_test(u, &fp.inverse(u)).is_none(), "{u}");
        }
    }

    fn raw_word(max: usize) -> impl Strategy<Value = Vec<Syllable>> {
        prop::collection::vec(
            (prop::bool::ANY, 0usize..6).prop_map(|(g, e)| {
                if g {
                    syl(Factor::G, e % 8)
                } else {
                    syl(Factor::H, e)
                }
            }),
            0..=max,
        )
    }

    proptest! {
        #[test]
        fn normal_form_properties(raw in raw_word(10), raw2 in raw_word(6)) {
            let (d8, s3) = (dihedral(4).unwrap(), symmetric(3).unwrap());
            let fp = FreeProduct::new(&d8, &s3);
            let w = fp.normalize(&raw).unwrap();
            prop_assert!(w.len() <= raw.len());
            prop_assert_eq!(fp.normalize(w.syllables()).unwrap(), w.clone());
            prop_assert!(w.syllables().windows(2).all(|p| p[0].factor != p[1].factor));
            let (core, c) = fp.cyclic_reduce(&w);
            prop_assert_eq!(fp.conjugate(&c, &core), w.clone());
            let h = fp.normalize(&raw2).unwrap();
            let v = fp.conjugate(&h, &w);
            let g = fp.conjugate_test(&w, &v).expect("conjugate by construction");
            prop_assert_eq!(fp.conjugate(&g, &w), v);
            prop_assert_eq!(fp.parse(&w.to_string()).unwrap(), w);
        }
    }
}
