use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{Job, Outcome, Params, SuiteError, Verdict};
use crate::groupspec::build_group;
use crate::tss::max_tss_size;
use crate::word::{
    bs_classification_check, f2_conjugate_test, f2_inverse, f2_reduce, f2_tss_obstruction,
    reduced_words, BsBranch, FpCase, FpTssVerdict, FpWord, FreeProduct, FreeWord,
};

/// Inverse-conjugacy test and obstruction chain for each word.
fn free_words_outcome(words: &[FreeWord]) -> Result<Outcome, SuiteError> {
    let failures: Vec<Value> = words
        .par_iter()
        .map(|u| -> Result<Option<Value>, SuiteError> {
            let to_inverse = f2_conjugate_test(u, &f2_inverse(u));
            let obstruction = f2_tss_obstruction(u)?;
            Ok((to_inverse.is_some() || !obstruction.holds()).then(|| {
                json!({ "word": u, "conjugator_to_inverse": to_inverse, "obstruction": obstruction })
            }))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let detail = json!({ "words": words.len(), "failures": failures.len() });
    let first = failures.into_iter().next();
    Ok(Outcome::check(first.is_none(), detail, || {
        first.expect("failure has a word")
    }))
}

fn random_reduced_word(rng: &mut ChaCha8Rng, len: usize) -> FreeWord {
    let mut letters: Vec<i64> = Vec::with_capacity(len);
    while letters.len() < len {
        let x = [1, -1, 2, -2][rng.gen_range(0..4)];
        if letters.last() != Some(&-x) {
            letters.push(x);
        }
    }
    f2_reduce(&letters).expect("valid letters")
}

pub(crate) fn free_group(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    let max_len = p.count("max-len")? as usize;
    if max_len > 12 {
        return Err(SuiteError::grid(
            "max-len",
            "exhaustive lengths above 12 are out of range",
        ));
    }
    let samples = p.count("samples")? as usize;
    let sample_len = p.count("sample-len")? as usize;
    let seed = p.count("seed")?;
    let mut jobs: Vec<Job> = (1..=max_len)
        .map(|len| {
            Job::new(
                format!("length:{len}"),
                p.single("max-len", len.to_string()).with("samples", "0"),
                move || {
                    let words: Vec<FreeWord> = reduced_words(len)
                        .into_iter()
                        .filter(|w| w.len() == len)
                        .collect();
                    free_words_outcome(&words)
                },
            )
        })
        .collect();
    if samples > 0 {
        if sample_len == 0 {
            return Err(SuiteError::grid("sample-len", "must be at least 1"));
        }
        let grid = p.single("max-len", "0");
        jobs.push(Job::new(
            format!("sample:{samples}x{sample_len}:seed={seed}"),
            grid,
            move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let words: Vec<FreeWord> = (0..samples)
                    .map(|_| random_reduced_word(&mut rng, sample_len))
                    .collect();
                free_words_outcome(&words)
            },
        ));
    }
    Ok(jobs)
}

pub(crate) fn baumslag_solitar(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    let radius =
        u32::try_from(p.count("radius")?).map_err(|_| SuiteError::grid("radius", "too large"))?;
    let bound =
        u32::try_from(p.count("bound")?).map_err(|_| SuiteError::grid("bound", "too large"))?;
    if radius == 0 || radius > 8 || bound == 0 || bound > 10 {
        return Err(SuiteError::grid(
            "radius",
            "supported ranges are radius 1..=8 and bound 1..=10",
        ));
    }
    p.integers("n")?
        .into_iter()
        .map(|n| {
            if n == 0 {
                return Err(SuiteError::grid("n", "n must be nonzero"));
            }
            Ok(Job::new(
                format!("bs(1,{n})"),
                p.single("n", n.to_string()),
                move || {
                    let c = bs_classification_check(n, radius, bound)?;
                    let detail = json!({
                        "branch": c.branch,
                        "predicted_max": c.predicted_max,
                        "certified_pairs": c.certified_pairs,
                        "third_elements_rejected": c.third_elements_rejected,
                        "commuting_pairs": c.commuting_pairs,
                        "exhausted_pairs": c.exhausted_pairs,
                    });
                    if !c.passed() {
                        return Ok(Outcome::new(
                            Verdict::Fail {
                                counterexample: json!({
                                    "uncertified_pairs": c.uncertified_pairs,
                                    "surviving_triples": c.surviving_triples,
                                    "swap_witnesses": c.swap_witnesses,
                                    "condition_violations": c.condition_violations,
                                }),
                            },
                            detail,
                        ));
                    }
                    let verdict = match c.branch {
                        BsBranch::Rigid => Verdict::Exhausted {
                            bound: bound as u64,
                        },
                        BsBranch::Abelian | BsBranch::Inverting => Verdict::Pass,
                    };
                    Ok(Outcome::new(verdict, detail))
                },
            ))
        })
        .collect()
}

/// Exhaustive analysis of the commuting sets among short words of a free
/// product.
#[derive(Debug, Clone, Serialize)]
pub struct FreeProductReport {
    pub left: String,
    pub right: String,
    pub max_len: usize,
    pub factor_max: usize,
    pub words: usize,
    /// Commuting sets of size at least 2.
    pub commuting_sets: usize,
    /// Certified sets by size.
    pub certified_by_size: BTreeMap<usize, usize>,
    pub certified_conjugated_factor: usize,
    pub certified_common_powers: usize,
    pub largest_certified: usize,
    /// Certified sets of size at least 2 that are not conjugates of a
    /// factor set, shortest first.
    pub non_factor_sets: Vec<FpTssVerdict>,
    pub oversized_sets: Vec<FpTssVerdict>,
    /// Certified sets whose witnesses failed an independent re-check.
    pub unverified_sets: Vec<FpTssVerdict>,
}

impl FreeProductReport {
    pub fn bound_holds(&self) -> bool {
        self.largest_certified <= self.factor_max
    }

    pub fn reduction_holds(&self) -> bool {
        self.non_factor_sets.is_empty()
    }
}

const KEPT_EXAMPLES: usize = 5;

/// Every clique of size at least 2 in the commuting graph, as sorted index
/// lists.
fn commuting_sets(
    fp: &FreeProduct<'_>,
    words: &[FpWord],
    max_sets: usize,
) -> Result<Vec<Vec<usize>>, SuiteError> {
    let later: Vec<Vec<usize>> = (0..words.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..words.len())
                .filter(|&j| fp.commutes(&words[i], &words[j]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = (0..words.len())
        .rev()
        .map(|i| (vec![i], later[i].clone()))
        .collect();
    while let Some((set, candidates)) = stack.pop() {
        for (pos, &c) in candidates.iter().enumerate().rev() {
            let mut grown = set.clone();
            grown.push(c);
            let rest: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|x| later[c].binary_search(x).is_ok())
                .collect();
            stack.push((grown, rest));
        }
        if set.len() >= 2 {
            out.push(set);
            if out.len() > max_sets {
                return Err(SuiteError::Budget {
                    instance: "free-product".to_string(),
                    message: format!("more than {max_sets} commuting sets"),
                });
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Builds both factors from group specs and analyzes every commuting set
/// of non-identity words with at most `max_len` syllables.
pub fn free_product_check(
    left: &str,
    right: &str,
    max_len: usize,
    max_sets: usize,
) -> Result<FreeProductReport, SuiteError> {
    let (g, h) = (build_group(left)?, build_group(right)?);
    let fp = FreeProduct::new(&g, &h);
    let words: Vec<FpWord> = fp
        .words_up_to(max_len)
        .into_iter()
        .filter(|w| !w.is_identity())
        .collect();
    let sets = commuting_sets(&fp, &words, max_sets)?;
    let verdicts: Vec<FpTssVerdict> = sets
        .par_iter()
        .map(|set| {
            let members: Vec<FpWord> = set.iter().map(|&i| words[i].clone()).collect();
            fp.tss_analyze(&members)
        })
        .collect::<Result<_, _>>()?;
    let factor_max = max_tss_size(&g).s_of_g.max(max_tss_size(&h).s_of_g);
    let mut report = FreeProductReport {
        left: left.to_string(),
        right: right.to_string(),
        max_len,
        factor_max,
        words: words.len(),
        commuting_sets: sets.len(),
        certified_by_size: BTreeMap::from([(1, words.len())]),
        certified_conjugated_factor: 0,
        certified_common_powers: 0,
        largest_certified: usize::from(!words.is_empty()),
        non_factor_sets: Vec::new(),
        oversized_sets: Vec::new(),
        unverified_sets: Vec::new(),
    };
    for v in verdicts.into_iter().filter(|v| v.is_tss) {
        let size = v.elements.len();
        *report.certified_by_size.entry(size).or_insert(0) += 1;
        report.largest_certified = report.largest_certified.max(size);
        match v.case {
            FpCase::ConjugatedFactor { .. } => report.certified_conjugated_factor += 1,
            FpCase::CommonPowers => report.certified_common_powers += 1,
            FpCase::Singleton => {}
        }
        if !v.verify(&fp) && report.unverified_sets.len() < KEPT_EXAMPLES {
            report.unverified_sets.push(v.clone());
        }
        if size > factor_max && report.oversized_sets.len() < KEPT_EXAMPLES {
            report.oversized_sets.push(v.clone());
        }
        if !v.reduces_to_factor() && report.non_factor_sets.len() < KEPT_EXAMPLES {
            report.non_factor_sets.push(v);
        }
    }
    Ok(report)
}

pub(crate) fn free_product(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    let max_len = p.count("max-len")? as usize;
    if max_len > 6 {
        return Err(SuiteError::grid(
            "max-len",
            "syllable lengths above 6 are out of range",
        ));
    }
    let max_sets = p.count("max-sets")? as usize;
    p.items("pairs")
        .into_iter()
        .map(|item| {
            let (left, right) = item
                .split_once('*')
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .ok_or_else(|| SuiteError::grid("pairs", format!("expected G*H, got {item:?}")))?;
            Ok(Job::new(item.clone(), p.single("pairs", item), move || {
                let r = free_product_check(&left, &right, max_len, max_sets)?;
                let detail = json!({
                    "words": r.words,
                    "commuting_sets": r.commuting_sets,
                    "factor_max": r.factor_max,
                    "largest_certified": r.largest_certified,
                    "certified_by_size": r.certified_by_size,
                    "certified_conjugated_factor": r.certified_conjugated_factor,
                    "certified_common_powers": r.certified_common_powers,
                    "bound_holds": r.bound_holds(),
                    "reduction_holds": r.reduction_holds(),
                });
                let ok = r.bound_holds() && r.reduction_holds() && r.unverified_sets.is_empty();
                Ok(Outcome::check(ok, detail, || {
                    let first = r
                        .unverified_sets
                        .first()
                        .or(r.oversized_sets.first())
                        .or(r.non_factor_sets.first())
                        .expect("failure has a set");
                    serde_json::to_value(first).expect("verdicts serialize")
                }))
            }))
        })
        .collect()
}
