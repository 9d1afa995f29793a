use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::{
    braid_presentation, enumerate_homs, is_homomorphism, subgroup_is_cyclic, ElementMap,
    GeneratorImageMap, HomEnumeration, HomError, Presentation, PresentedTss,
};
use crate::group::{generated_subgroup, Elem, FiniteGroup, GroupDescriptor};
use crate::tss::{is_tss, max_tss_size, TssCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaBranch {
    /// The image has the size of the source set and is totally symmetric.
    SameSize,
    /// The whole set collapses to one element.
    Singleton,
    /// Neither: a counterexample to the lemma.
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub source_size: usize,
    pub image: Vec<Elem>,
    pub image_labels: Vec<String>,
    pub branch: LemmaBranch,
    pub image_certificate: Option<TssCertificate>,
}

impl LemmaVerdict {
    pub fn holds(&self) -> bool {
        self.branch != LemmaBranch::Violated
    }
}

fn classify(
    target: &FiniteGroup,
    source_size: usize,
    images: Vec<Elem>,
) -> Result<LemmaVerdict, HomError> {
    let mut image = images;
    image.sort_unstable();
    image.dedup();
    let image_labels = image.iter().map(|&x| target.label(x)).collect();
    let (branch, image_certificate) = if image.len() == 1 {
        (LemmaBranch::Singleton, None)
    } else if image.len() == source_size {
        match is_tss(target, &image)? {
            Some(cert) => (LemmaBranch::SameSize, Some(cert)),
            None => (LemmaBranch::Violated, None),
        }
    } else {
        (LemmaBranch::Violated, None)
    };
    Ok(LemmaVerdict {
        source_size,
        image,
        image_labels,
        branch,
        image_certificate,
    })
}

/// Image of a certified totally symmetric set under a verified table map.
pub fn fundamental_lemma_check(
    map: &ElementMap<'_>,
    set: &TssCertificate,
) -> Result<LemmaVerdict, HomError> {
    if !set.verify(map.source) {
        return Err(HomError::NotTss);
    }
    let images = set.elements.iter().map(|&x| map.apply(x)).collect();
    classify(map.target, set.size(), images)
}

/// Image of a braid-group totally symmetric set under a homomorphism from
/// the braid presentation with the same number of strands.
pub fn fundamental_lemma_check_presented(
    map: &GeneratorImageMap<'_>,
    set: &PresentedTss,
) -> Result<LemmaVerdict, HomError> {
    if !is_homomorphism(map) {
        return Err(HomError::NotHomomorphism);
    }
    if map.presentation != &braid_presentation(set.strands)? || !set.verify() {
        return Err(HomError::NotTss);
    }
    let images = set.elements.iter().map(|w| map.apply(w)).collect();
    classify(map.target, set.size(), images)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorollaryVerdict {
    Holds,
    Fails,
    /// `S(target) >= ⌊n/2⌋`, so the corollary says nothing.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidCorollaryReport {
    pub strands: usize,
    pub target: GroupDescriptor,
    pub target_s: usize,
    pub threshold: usize,
    pub verdict: CorollaryVerdict,
    pub hom_count: usize,
    /// Image subgroup order to number of homomorphisms.
    pub image_order_histogram: BTreeMap<usize, usize>,
    pub all_cyclic: bool,
    /// Generator images of every homomorphism with a non-cyclic image.
    pub non_cyclic_images: Vec<Vec<Elem>>,
    pub visited: u64,
    pub elapsed_ms: u128,
}

struct ImageSummary {
    histogram: BTreeMap<usize, usize>,
    non_cyclic: Vec<Vec<Elem>>,
}

fn summarize(target: &FiniteGroup, homs: &HomEnumeration) -> ImageSummary {
    let mut histogram = BTreeMap::new();
    let mut non_cyclic = Vec::new();
    for images in &homs.images {
        let sub = generated_subgroup(target, images).expect("images in range");
        *histogram.entry(sub.len()).or_insert(0) += 1;
        if !subgroup_is_cyclic(target, &sub) {
            non_cyclic.push(images.clone());
        }
    }
    ImageSummary {
        histogram,
        non_cyclic,
    }
}

/// For `n >= 5` and `S(target) < ⌊n/2⌋`, checks that every homomorphism
/// `B_n → target` has cyclic image.
pub fn braid_cyclic_corollary_check(
    n: usize,
    target: &FiniteGroup,
    budget: u64,
) -> Result<BraidCorollaryReport, HomError> {
    if n < 5 {
        return Err(HomError::TooFewStrands { n, min: 5 });
    }
    let start = Instant::now();
    let threshold = n / 2;
    let target_s = max_tss_size(target).s_of_g;
    let mut report = BraidCorollaryReport {
        strands: n,
        target: target.descriptor(),
        target_s,
        threshold,
        verdict: CorollaryVerdict::NotApplicable,
        hom_count: 0,
        image_order_histogram: BTreeMap::new(),
        all_cyclic: true,
        non_cyclic_images: Vec::new(),
        visited: 0,
        elapsed_ms: 0,
    };
    if target_s < threshold {
        let homs = enumerate_homs(&braid_presentation(n)?, target, budget)?;
        let summary = summarize(target, &homs);
        report.hom_count = homs.images.len();
        report.visited = homs.visited;
        report.image_order_histogram = summary.histogram;
        report.all_cyclic = summary.non_cyclic.is_empty();
        report.non_cyclic_images = summary.non_cyclic;
        report.verdict = if report.all_cyclic {
            CorollaryVerdict::Holds
        } else {
            CorollaryVerdict::Fails
        };
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationDescriptor {
    pub name: String,
    pub generator_count: usize,
    pub relator_count: usize,
}

/// JSON report of a homomorphism enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct HomReportDocument {
    pub format: u32,
    pub presentation: PresentationDescriptor,
    pub target: GroupDescriptor,
    pub hom_count: usize,
    pub image_order_histogram: BTreeMap<usize, usize>,
    pub all_cyclic: bool,
    pub elapsed_ms: u128,
}

impl HomReportDocument {
    pub fn new(
        pres: &Presentation,
        target: &FiniteGroup,
        homs: &HomEnumeration,
        elapsed_ms: u128,
    ) -> Self {
        let summary = summarize(target, homs);
        HomReportDocument {
            format: 1,
            presentation: PresentationDescriptor {
                name: pres.name().to_string(),
                generator_count: pres.generator_count(),
                relator_count: pres.relators().len(),
            },
            target: target.descriptor(),
            hom_count: homs.images.len(),
            image_order_histogram: summary.histogram,
            all_cyclic: summary.non_cyclic.is_empty(),
            elapsed_ms,
        }
    }

    /// Generator images with non-cyclic image, for streaming output.
    pub fn non_cyclic(target: &FiniteGroup, homs: &HomEnumeration) -> Vec<Vec<Elem>> {
        summarize(target, homs).non_cyclic
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        cyclic, dihedral, quotient, semidirect_cyclic, symmetric, SemidirectParams,
    };
    use crate::hom::{standard_braid_target, DEFAULT_BUDGET};
    use crate::tss::enumerate_tss;

    fn labels(g: &FiniteGroup, names: &[&str]) -> Vec<Elem> {
        names
            .iter()
            .map(|l| g.element_by_label(l).unwrap())
            .collect()
    }

    #[test]
    fn identity_map_keeps_size() {
        let d8 = dihedral(4).unwrap();
        let cert = is_tss(&d8, &labels(&d8, &["r", "r^3"])).unwrap().unwrap();
        let v = fundamental_lemma_check(&ElementMap::identity(&d8), &cert).unwrap();
        assert_eq!(v.branch, LemmaBranch::SameSize);
        assert!(v.holds());
    }

    #[test]
    fn quotient_collapses_transpositions() {
        let s4 = symmetric(4).unwrap();
        let v4 = labels(&s4, &["e", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]);
        let q = quotient(&s4, &v4).unwrap();
        let p = ElementMap::projection(&s4, &q).unwrap();
        let cert = is_tss(&s4, &labels(&s4, &["(1 2)", "(3 4)"]))
            .unwrap()
            .unwrap();
        let v = fundamental_lemma_check(&p, &cert).unwrap();
        assert_eq!(v.branch, LemmaBranch::Singleton);
        for cert in (1..=3).flat_map(|k| enumerate_tss(&s4, k)) {
            assert!(fundamental_lemma_check(&p, &cert).unwrap().holds());
        }
    }

    #[test]
    fn standard_braid_map_on_odd_generators() {
        let (b4, s4, images) = standard_braid_target(4).unwrap();
        let map = GeneratorImageMap::new(&b4, &s4, images).unwrap();
        let v = fundamental_lemma_check_presented(&map, &PresentedTss::odd_artin(4)).unwrap();
        assert_eq!(v.branch, LemmaBranch::SameSize);
        let mut got = v.image_labels.clone();
        got.sort();
        assert_eq!(got, vec!["(1 2)", "(3 4)"]);
        assert!(v.image_certificate.unwrap().verify(&s4));
        assert_eq!(
            fundamental_lemma_check_presented(&map, &PresentedTss::odd_artin(5)),
            Err(HomError::NotTss)
        );
    }

    #[test]
    fn uncertified_source_is_rejected() {
        let d8 = dihedral(4).unwrap();
        let fake = TssCertificate {
            elements: vec![1, 2],
            witnesses: vec![0],
        };
        assert_eq!(
            fundamental_lemma_check(&ElementMap::identity(&d8), &fake),
            Err(HomError::NotTss)
        );
    }

    #[test]
    fn braid_corollary_cases() {
        let z6 = cyclic(6).unwrap();
        let r = braid_cyclic_corollary_check(5, &z6, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, CorollaryVerdict::Holds);
        assert_eq!(r.hom_count, 6);
        let g21 = semidirect_cyclic(SemidirectParams::new(7, 3, 2)).unwrap();
        let r = braid_cyclic_corollary_check(5, &g21, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, CorollaryVerdict::Holds);
        assert_eq!(r.target_s, 1);
        assert!(r.all_cyclic && r.hom_count > 1);
        let s5 = symmetric(5).unwrap();
        let r = braid_cyclic_corollary_check(5, &s5, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, CorollaryVerdict::NotApplicable);
        assert!(r.target_s >= 2);
        assert!(matches!(
            braid_cyclic_corollary_check(4, &z6, DEFAULT_BUDGET),
            Err(HomError::TooFewStrands { n: 4, min: 5 })
        ));
    }

    #[test]
    fn report_document_fields() {
        let b3 = braid_presentation(3).unwrap();
        let s3 = symmetric(3).unwrap();
        let homs = enumerate_homs(&b3, &s3, DEFAULT_BUDGET).unwrap();
        let doc = HomReportDocument::new(&b3, &s3, &homs, 0);
        let v = serde_json::to_value(&doc).unwrap();
        assert_eq!(v["format"], 1);
        assert_eq!(v["presentation"]["relator_count"], 1);
        assert_eq!(v["all_cyclic"], false);
        assert_eq!(v["hom_count"], homs.images.len());
    }
}
