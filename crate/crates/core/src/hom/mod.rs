//! Finite presentations, homomorphisms into table groups, and the checks
//! built on them.
//!
//! Relator words use 1-based signed generator indices: `3` is the third
//! generator and `-3` its inverse.

mod artin;
mod enumerate;
mod lemma;
mod table_map;

use serde::Serialize;

use crate::group::{generated_subgroup, symmetric, transposition, Elem, FiniteGroup, GroupError};
use crate::tss::TssError;

pub use artin::{braid_words_equal, PresentedTss};
pub use enumerate::{enumerate_homs, HomEnumeration, DEFAULT_BUDGET};
pub use lemma::{
    braid_cyclic_corollary_check, fundamental_lemma_check, fundamental_lemma_check_presented,
    BraidCorollaryReport, CorollaryVerdict, HomReportDocument, LemmaBranch, LemmaVerdict,
};
pub use table_map::{enumerate_table_homs, ElementMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("braid groups need at least {min} strands, got {n}")]
    TooFewStrands { n: usize, min: usize },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("relator {relator} is empty")]
    EmptyRelator { relator: usize },
    #[error("relator {relator} uses letter {letter}, outside ±1..=±{generators}")]
    BadLetter {
        relator: usize,
        letter: i32,
        generators: usize,
    },
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image {index} is out of range for a group of order {order}")]
    ImageOutOfRange { index: usize, order: usize },
    #[error("the map is not a homomorphism")]
    NotHomomorphism,
    #[error("the map does not preserve the product of {a} and {b}")]
    ProductNotPreserved { a: Elem, b: Elem },
    #[error(
        "search budget of {budget} nodes exhausted after {visited} nodes and {found} homomorphisms"
    )]
    BudgetExceeded {
        budget: u64,
        visited: u64,
        found: usize,
    },
    #[error("the source set is not a certified totally symmetric set")]
    NotTss,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tss(#[from] TssError),
}

/// A finite presentation `<x_1, ..., x_g | r_1, ..., r_k>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    name: String,
    generator_count: usize,
    relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        generator_count: usize,
        relators: Vec<Vec<i32>>,
    ) -> Result<Self, HomError> {
        if generator_count == 0 {
            return Err(HomError::NoGenerators);
        }
        for (relator, word) in relators.iter().enumerate() {
            if word.is_empty() {
                return Err(HomError::EmptyRelator { relator });
            }
            if let Some(&letter) = word
                .iter()
                .find(|&&x| x == 0 || x.unsigned_abs() as usize > generator_count)
            {
                return Err(HomError::BadLetter {
                    relator,
                    letter,
                    generators: generator_count,
                });
            }
        }
        Ok(Presentation {
            name: name.into(),
            generator_count,
            relators,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }
}

/// Value of `word` in `g` when generator `i` (1-based) maps to `images[i-1]`.
pub fn evaluate_word(g: &FiniteGroup, images: &[Elem], word: &[i32]) -> Elem {
    word.iter().fold(g.identity(), |acc, &x| {
        let image = images[x.unsigned_abs() as usize - 1];
        g.mul(acc, if x > 0 { image } else { g.inv(image) })
    })
}

/// The braid group `B_n` on the Artin generators `σ_1, ..., σ_{n-1}`, with
/// `σ_i σ_j σ_i⁻¹ σ_j⁻¹` for `|i - j| >= 2` and
/// `σ_i σ_{i+1} σ_i σ_{i+1}⁻¹ σ_i⁻¹ σ_{i+1}⁻¹` for each adjacent pair.
pub fn braid_presentation(n: usize) -> Result<Presentation, HomError> {
    if n < 2 {
        return Err(HomError::TooFewStrands { n, min: 2 });
    }
    let gens = (n - 1) as i32;
    let mut relators = Vec::new();
    for i in 1..gens {
        relators.push(vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]);
    }
    for i in 1..=gens {
        for j in i + 2..=gens {
            relators.push(vec![i, j, -i, -j]);
        }
    }
    Presentation::new(format!("braid:{n}"), n - 1, relators)
}

/// Images `σ_i ↦ (i i+1)` of the standard map `B_n → S_n`, as indices in
/// [`symmetric`]`(n)`.
pub fn standard_braid_images(n: usize) -> Vec<Elem> {
    (0..n.saturating_sub(1))
        .map(|i| transposition(n, i, i + 1))
        .collect()
}

/// The standard map `B_n → S_n` together with its target.
pub fn standard_braid_target(n: usize) -> Result<(Presentation, FiniteGroup, Vec<Elem>), HomError> {
    Ok((
        braid_presentation(n)?,
        symmetric(n)?,
        standard_braid_images(n),
    ))
}

/// A choice of generator images. Whether it is a homomorphism is checked
/// separately by [`is_homomorphism`].
#[derive(Debug, Clone)]
pub struct GeneratorImageMap<'a> {
    pub presentation: &'a Presentation,
    pub target: &'a FiniteGroup,
    images: Vec<Elem>,
}

impl<'a> GeneratorImageMap<'a> {
    pub fn new(
        presentation: &'a Presentation,
        target: &'a FiniteGroup,
        images: Vec<Elem>,
    ) -> Result<Self, HomError> {
        if images.len() != presentation.generator_count {
            return Err(HomError::ImageCount {
                expected: presentation.generator_count,
                got: images.len(),
            });
        }
        if let Some(&index) = images.iter().find(|&&x| x >= target.order()) {
            return Err(HomError::ImageOutOfRange {
                index,
                order: target.order(),
            });
        }
        Ok(GeneratorImageMap {
            presentation,
            target,
            images,
        })
    }

    pub fn trivial(presentation: &'a Presentation, target: &'a FiniteGroup) -> Self {
        let images = vec![target.identity(); presentation.generator_count];
        GeneratorImageMap {
            presentation,
            target,
            images,
        }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, word: &[i32]) -> Elem {
        evaluate_word(self.target, &self.images, word)
    }

    /// The subgroup generated by the images, sorted.
    pub fn image_subgroup(&self) -> Vec<Elem> {
        generated_subgroup(self.target, &self.images).expect("images are in range and nonempty")
    }
}

pub fn is_homomorphism(map: &GeneratorImageMap<'_>) -> bool {
    map.presentation
        .relators
        .iter()
        .all(|r| map.apply(r) == map.target.identity())
}

/// Whether the image is cyclic: some element's order equals the order of
/// the image subgroup.
pub fn image_is_cyclic(map: &GeneratorImageMap<'_>) -> Result<bool, HomError> {
    if !is_homomorphism(map) {
        return Err(HomError::NotHomomorphism);
    }
    Ok(subgroup_is_cyclic(map.target, &map.image_subgroup()))
}

pub(crate) fn subgroup_is_cyclic(g: &FiniteGroup, subgroup: &[Elem]) -> bool {
    subgroup
        .iter()
        .any(|&x| g.element_order(x) == subgroup.len())
}
