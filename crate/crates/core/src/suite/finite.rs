use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{Job, Outcome, Params, SuiteError, Verdict};
use crate::group::{
    derived_series, dihedral, direct_product, pow_mod, quotient, Elem, FiniteGroup,
    SemidirectParams,
};
use crate::groupspec::build_group;
use crate::hom::{
    braid_cyclic_corollary_check, braid_presentation, enumerate_homs, enumerate_table_homs,
    fundamental_lemma_check, fundamental_lemma_check_presented, standard_braid_target,
    CorollaryVerdict, ElementMap, GeneratorImageMap, LemmaBranch, PresentedTss,
};
use crate::tss::{
    contains_inverse_pair, coordinate_structure, enumerate_tss, factorial, max_tss_size,
    max_tss_size_with, realized_permutations, tss_levels, CoordinatePattern, SearchOptions,
    TssCertificate,
};

fn labels(g: &FiniteGroup, set: &[Elem]) -> Vec<String> {
    set.iter().map(|&x| g.label(x)).collect()
}

fn set_json(g: &FiniteGroup, cert: &TssCertificate) -> Value {
    json!({ "elements": cert.elements, "labels": labels(g, &cert.elements) })
}

fn gate_options(gate: bool) -> SearchOptions {
    SearchOptions {
        factorial_gate: gate,
        ..SearchOptions::default()
    }
}

/// Every TSS of size at least 2.
fn nontrivial_sets(g: &FiniteGroup) -> Vec<TssCertificate> {
    tss_levels(g, SearchOptions::default())
        .into_iter()
        .skip(1)
        .flatten()
        .collect()
}

fn sizes(levels: &[TssCertificate]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for c in levels {
        *out.entry(c.size()).or_insert(0) += 1;
    }
    out
}

/// `S(G) = 1`, with the first larger set as the counterexample.
fn expect_singletons(spec: &str, gate: bool) -> Result<Outcome, SuiteError> {
    let g = build_group(spec)?;
    let report = max_tss_size_with(&g, gate_options(gate));
    let detail = json!({
        "order": g.order(),
        "s_of_g": report.s_of_g,
        "abelian": g.is_abelian(),
        "factorial_gate": gate,
    });
    Ok(Outcome::check(report.s_of_g == 1, detail, || {
        set_json(&g, &report.maximal_sets[0])
    }))
}

pub(crate) fn abelian(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    let gate = p.switch("gate")?;
    p.integers("n")?
        .into_iter()
        .map(|n| {
            if n < 1 {
                return Err(SuiteError::grid("n", "cyclic orders start at 1"));
            }
            let spec = format!("cyclic:{n}");
            let name = spec.clone();
            Ok(Job::new(name, p.single("n", n.to_string()), move || {
                expect_singletons(&spec, gate)
            }))
        })
        .collect()
}

/// Odd-order groups up to `max_order`: odd cyclic groups, nonabelian
/// `Z_p ⋊ Z_m` with `p` an odd prime and `m` odd, using the least
/// multiplier `k > 1` with `k^m ≡ 1 (mod p)`, and products of small odd
/// groups.
pub fn odd_order_corpus(max_order: usize) -> Vec<String> {
    odd_order_corpus_with_orders(max_order)
        .into_iter()
        .map(|(spec, _)| spec)
        .collect()
}

fn odd_order_corpus_with_orders(max_order: usize) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = (3..=max_order)
        .step_by(2)
        .map(|n| (format!("cyclic:{n}"), n))
        .collect();
    let max = max_order as u64;
    for p in (3..=max / 3).filter(|&p| crate::group::is_prime(p)) {
        for m in (3..=max / p).step_by(2) {
            if let Some(k) = (2..p).find(|&k| pow_mod(k, m, p) == 1) {
                out.push((format!("semidirect:{p},{m},{k}"), (p * m) as usize));
            }
        }
    }
    let factors = [
        ("cyclic:3", 3),
        ("cyclic:5", 5),
        ("cyclic:7", 7),
        ("cyclic:9", 9),
        ("semidirect:7,3,2", 21),
        ("semidirect:13,3,3", 39),
    ];
    for (i, (a, oa)) in factors.iter().enumerate() {
        for (b, ob) in &factors[i..] {
            if oa * ob <= max_order {
                out.push((format!("product:{a},{b}"), oa * ob));
            }
        }
    }
    out
}

pub(crate) fn odd_order(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    let gate = p.switch("gate")?;
    let max = usize::try_from(p.integer("max-order")?)
        .map_err(|_| SuiteError::grid("max-order", "must be nonnegative"))?;
    Ok(odd_order_corpus_with_orders(max)
        .into_iter()
        .map(|(spec, order)| {
            let name = spec.clone();
            // The corpus is not addressable by key, so the rerun command
            // selects the whole corpus up to this group's order.
            Job::new(name, p.single("max-order", order.to_string()), move || {
                expect_singletons(&spec, gate)
            })
        })
        .collect())
}

/// `{r^i, r^-i}` for `0 < i < n/2`, and `{sr^i, sr^(i+n/2)}` for
/// `0 <= i < n/2` when `4 | n`, using the index layout `r^i = i`,
/// `sr^i = n + i`.
fn predicted_dihedral_pairs(n: usize) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = (1..n)
        .filter(|&i| 2 * i < n)
        .map(|i| vec![i, n - i])
        .collect();
    if n % 4 == 0 {
        out.extend((0..n / 2).map(|i| vec![n + i, n + i + n / 2]));
    }
    out.sort();
    out
}

pub(crate) fn dihedral_suite(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    p.integers("n")?
        .into_iter()
        .map(|n| {
            if n < 3 {
                return Err(SuiteError::grid("n", "the classification needs n >= 3"));
            }
            let n = n as usize;
            Ok(Job::new(format!("dihedral:{n}"), p.single("n", n.to_string()), move || {
                let g = dihedral(n)?;
                let report = max_tss_size(&g);
                let found: Vec<Vec<Elem>> = enumerate_tss(&g, 2).into_iter().map(|c| c.elements).collect();
                let predicted = predicted_dihedral_pairs(n);
                let missing: Vec<Vec<String>> =
                    predicted.iter().filter(|s| !found.contains(s)).map(|s| labels(&g, s)).collect();
                let unexpected: Vec<Vec<String>> =
                    found.iter().filter(|s| !predicted.contains(s)).map(|s| labels(&g, s)).collect();
                let detail = json!({
                    "s_of_g": report.s_of_g,
                    "size_two_sets": found.len(),
                    "reflection_family": found.iter().any(|s| s[0] >= n),
                    "sets": found.iter().map(|s| labels(&g, s)).collect::<Vec<_>>(),
                });
                let ok = report.s_of_g == 2 && missing.is_empty() && unexpected.is_empty();
                Ok(Outcome::check(ok, detail, || {
                    json!({ "s_of_g": report.s_of_g, "missing": missing, "unexpected": unexpected })
                }))
            }))
        })
        .collect()
}

fn parse_triple(item: &str) -> Result<SemidirectParams, SuiteError> {
    let parts: Vec<u64> = item
        .split(',')
        .map(|s| {
            s.parse()
                .map_err(|_| SuiteError::grid("params", format!("bad triple {item:?}")))
        })
        .collect::<Result<_, _>>()?;
    let [p, m, k] = parts[..] else {
        return Err(SuiteError::grid(
            "params",
            format!("expected p,m,k, got {item:?}"),
        ));
    };
    let params = SemidirectParams::new(p, m, k);
    params
        .validate()
        .map_err(|e| SuiteError::grid("params", format!("{item}: {e}")))?;
    Ok(params)
}

pub(crate) fn semidirect(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    p.items("params")
        .into_iter()
        .map(|item| {
            let params = parse_triple(&item)?;
            let spec = format!("semidirect:{item}");
            Ok(Job::new(spec.clone(), p.single("params", item), move || {
                let g = build_group(&spec)?;
                let report = max_tss_size(&g);
                let detail = json!({
                    "order": g.order(),
                    "s_of_g": report.s_of_g,
                    "multiplier_order": params.multiplier_order(),
                    "inversion_in_action": params.has_inversion(),
                    "p_divides_m": params.m % params.p == 0,
                });
                let reason = if params.k == 1 {
                    Some("the action is trivial, so the group is abelian")
                } else if params.m % params.p != 0 {
                    Some("p does not divide m")
                } else if !params.has_inversion() {
                    Some("-1 is not a power of k mod p, so the size-2 construction is unavailable")
                } else {
                    None
                };
                Ok(match reason {
                    Some(reason) => {
                        Outcome::new(Verdict::NotApplicable { reason: reason.to_string() }, detail)
                    }
                    None => Outcome::check(report.s_of_g == 2, detail, || {
                        json!({
                            "s_of_g": report.s_of_g,
                            "maximal_set": set_json(&g, &report.maximal_sets[0]),
                        })
                    }),
                })
            }))
        })
        .collect()
}

fn pattern_name(p: CoordinatePattern) -> &'static str {
    match p {
        CoordinatePattern::AllEqual => "all_equal",
        CoordinatePattern::AllDistinct => "all_distinct",
        CoordinatePattern::Mixed => "mixed",
    }
}

fn product_instance(left: &str, right: &str, distinct_only: bool) -> Result<Outcome, SuiteError> {
    let (g, h) = (build_group(left)?, build_group(right)?);
    let product = direct_product(&g, &h)?;
    let (sg, sh) = (max_tss_size(&g).s_of_g, max_tss_size(&h).s_of_g);
    let levels = tss_levels(&product, SearchOptions::default());
    let s = levels.len();
    let sets: Vec<&TssCertificate> = levels.iter().skip(1).flatten().collect();
    let mut patterns: BTreeMap<String, usize> = BTreeMap::new();
    let mut mixed = None;
    let mut largest_distinct = None;
    let mut oversized_distinct = None;
    for cert in &sets {
        let st = coordinate_structure(&cert.elements, h.order());
        *patterns
            .entry(format!(
                "{}/{}",
                pattern_name(st.first),
                pattern_name(st.second)
            ))
            .or_insert(0) += 1;
        if mixed.is_none()
            && (st.first == CoordinatePattern::Mixed || st.second == CoordinatePattern::Mixed)
        {
            mixed = Some(*cert);
        }
        if st.first == CoordinatePattern::AllDistinct && st.second == CoordinatePattern::AllDistinct
        {
            largest_distinct = largest_distinct.max(Some(cert.size()));
            if cert.size() > sg.min(sh) && oversized_distinct.is_none() {
                oversized_distinct = Some(*cert);
            }
        }
    }
    let min = sg.min(sh);
    let detail = json!({
        "order": product.order(),
        "s_left": sg,
        "s_right": sh,
        "s_of_product": s,
        "sets_checked": sets.len(),
        "coordinate_patterns": patterns,
        "largest_both_distinct": largest_distinct,
        "min_attained": largest_distinct == Some(min),
    });
    Ok(if distinct_only {
        Outcome::check(oversized_distinct.is_none(), detail, || {
            let c = oversized_distinct.expect("failure has a set");
            json!({ "min": min, "set": set_json(&product, c) })
        })
    } else {
        Outcome::check(s == sg.max(sh) && mixed.is_none(), detail, || match mixed {
            Some(c) => json!({ "mixed_coordinates": set_json(&product, c) }),
            None => json!({ "s_of_product": s, "expected": sg.max(sh),
                "maximal_set": set_json(&product, &levels[s - 1][0]) }),
        })
    })
}

pub(crate) fn direct_product_suite(
    p: &Params<'_>,
    distinct_only: bool,
) -> Result<Vec<Job>, SuiteError> {
    let max = p.count("max-order")? as usize;
    let factors = p.items("factors");
    let orders: Vec<usize> = factors
        .iter()
        .map(|f| build_group(f).map(|g| g.order()))
        .collect::<Result<_, _>>()?;
    let mut jobs = Vec::new();
    for i in 0..factors.len() {
        for j in i..factors.len() {
            if orders[i] * orders[j] > max {
                continue;
            }
            let (a, b) = (factors[i].clone(), factors[j].clone());
            let grid = p
                .single("factors", format!("{a}|{b}"))
                .with("max-order", (orders[i] * orders[j]).to_string());
            jobs.push(Job::new(format!("product:{a},{b}"), grid, move || {
                product_instance(&a, &b, distinct_only)
            }));
        }
    }
    Ok(jobs)
}

fn group_jobs(
    p: &Params<'_>,
    check: impl Fn(&FiniteGroup) -> Result<Outcome, SuiteError> + Send + Sync + Clone + 'static,
) -> Result<Vec<Job>, SuiteError> {
    Ok(p.items("groups")
        .into_iter()
        .map(|spec| {
            let check = check.clone();
            Job::new(spec.clone(), p.single("groups", spec.clone()), move || {
                check(&build_group(&spec)?)
            })
        })
        .collect())
}

pub(crate) fn inverse_pair(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    group_jobs(p, |g| {
        let sets = nontrivial_sets(g);
        let with_pair: Vec<&TssCertificate> = sets
            .iter()
            .filter(|c| contains_inverse_pair(g, &c.elements))
            .collect();
        let bad = with_pair.iter().find(|c| c.size() != 2);
        let detail = json!({
            "sets_checked": sets.len(),
            "sizes": sizes(&sets),
            "sets_with_inverse_pair": with_pair.len(),
        });
        Ok(Outcome::check(bad.is_none(), detail, || {
            set_json(g, bad.expect("failure has a set"))
        }))
    })
}

pub(crate) fn stabilizer_ses(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    group_jobs(p, |g| {
        let sets: Vec<TssCertificate> = tss_levels(g, SearchOptions::default())
            .into_iter()
            .flatten()
            .collect();
        let mut stabilizer_orders = BTreeMap::new();
        for cert in &sets {
            let dec = realized_permutations(g, &cert.elements)?;
            let fact = factorial(cert.size()).expect("small set");
            let ok = dec.ses_holds()
                && dec.realizes_full_symmetric_group()
                && dec.stabilizer.len() % fact == 0
                && g.order() % dec.stabilizer.len() == 0;
            if !ok {
                let detail = json!({ "sets_checked": sets.len() });
                return Ok(Outcome::check(false, detail, || {
                    json!({
                        "set": set_json(g, cert),
                        "stabilizer": dec.stabilizer.len(),
                        "kernel": dec.kernel.len(),
                        "realized": dec.realized.len(),
                    })
                }));
            }
            stabilizer_orders
                .entry(cert.size())
                .or_insert_with(std::collections::BTreeSet::new)
                .insert(dec.stabilizer.len());
        }
        let detail = json!({
            "sets_checked": sets.len(),
            "sizes": sizes(&sets),
            "stabilizer_orders_by_size": stabilizer_orders,
        });
        Ok(Outcome::new(Verdict::Pass, detail))
    })
}

pub(crate) fn solvable(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    group_jobs(p, |g| {
        let series = derived_series(g);
        let report = max_tss_size(g);
        let detail = json!({
            "order": g.order(),
            "derived_series_orders": series.orders(),
            "solvable": series.solvable,
            "s_of_g": report.s_of_g,
            "size_above_two": report.s_of_g > 2,
            "maximal_set": set_json(g, &report.maximal_sets[0]),
        });
        if !series.solvable {
            let reason = "the derived series does not reach the trivial group".to_string();
            return Ok(Outcome::new(Verdict::NotApplicable { reason }, detail));
        }
        Ok(Outcome::check(report.s_of_g <= 4, detail, || {
            set_json(g, &report.maximal_sets[0])
        }))
    })
}

pub(crate) fn non_injective(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    let budget = p.count("budget")?;
    p.items("pairs")
        .into_iter()
        .map(|item| {
            let (src, tgt) = item
                .split_once('>')
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .ok_or_else(|| {
                    SuiteError::grid("pairs", format!("expected SOURCE>TARGET, got {item:?}"))
                })?;
            let name = item.clone();
            Ok(Job::new(name.clone(), p.single("pairs", item), move || {
                let (g, h) = (build_group(&src)?, build_group(&tgt)?);
                let (sg, sh) = (max_tss_size(&g).s_of_g, max_tss_size(&h).s_of_g);
                let mut detail = json!({ "s_source": sg, "s_target": sh });
                if sg <= sh {
                    let reason = "S(source) does not exceed S(target)".to_string();
                    return Ok(Outcome::new(Verdict::NotApplicable { reason }, detail));
                }
                let homs = enumerate_table_homs(&g, &h, budget)
                    .map_err(|e| SuiteError::from_hom(&name, e))?;
                let injective = homs.iter().find(|m| m.is_injective());
                detail["hom_count"] = json!(homs.len());
                Ok(Outcome::check(
                    injective.is_none(),
                    detail,
                    || json!({ "injective_map": injective.expect("failure has a map").images() }),
                ))
            }))
        })
        .collect()
}

#[derive(Default)]
struct LemmaTally {
    pairs: usize,
    same_size: usize,
    singleton: usize,
    violation: Option<Value>,
}

impl LemmaTally {
    fn add(&mut self, branch: LemmaBranch, describe: impl FnOnce() -> Value) {
        self.pairs += 1;
        match branch {
            LemmaBranch::SameSize => self.same_size += 1,
            LemmaBranch::Singleton => self.singleton += 1,
            LemmaBranch::Violated => {
                if self.violation.is_none() {
                    self.violation = Some(describe());
                }
            }
        }
    }

    fn outcome(self, maps: usize) -> Outcome {
        let detail = json!({
            "maps": maps,
            "pairs_checked": self.pairs,
            "same_size": self.same_size,
            "singleton": self.singleton,
        });
        match self.violation {
            None => Outcome::new(Verdict::Pass, detail),
            Some(counterexample) => Outcome::new(Verdict::Fail { counterexample }, detail),
        }
    }
}

fn lemma_over_maps(maps: &[ElementMap<'_>]) -> Result<Outcome, SuiteError> {
    let mut tally = LemmaTally::default();
    let Some(first) = maps.first() else {
        return Ok(tally.outcome(0));
    };
    let sets: Vec<TssCertificate> = tss_levels(first.source, SearchOptions::default())
        .into_iter()
        .flatten()
        .collect();
    for map in maps {
        for cert in &sets {
            let v = fundamental_lemma_check(map, cert)?;
            tally.add(v.branch, || {
                json!({ "set": set_json(map.source, cert), "map": map.images(), "image": v.image_labels })
            });
        }
    }
    Ok(tally.outcome(maps.len()))
}

fn lemma_over_braid_maps(
    n: usize,
    target: &FiniteGroup,
    images: Vec<Vec<Elem>>,
) -> Result<Outcome, SuiteError> {
    let pres = braid_presentation(n)?;
    let set = PresentedTss::odd_artin(n);
    let mut tally = LemmaTally::default();
    let maps = images.len();
    for imgs in images {
        let map = GeneratorImageMap::new(&pres, target, imgs)?;
        let v = fundamental_lemma_check_presented(&map, &set)?;
        tally.add(
            v.branch,
            || json!({ "map": map.images(), "image": v.image_labels }),
        );
    }
    Ok(tally.outcome(maps))
}

fn lemma_fixture(name: &str, budget: u64) -> Result<Outcome, SuiteError> {
    let bad = || SuiteError::grid("fixtures", format!("unknown fixture {name:?}"));
    if let Some(spec) = name.strip_prefix("identity:") {
        let g = build_group(spec)?;
        return lemma_over_maps(&[ElementMap::identity(&g)]);
    }
    if name == "quotient-d8" || name == "quotient-s4" {
        let (spec, normal): (&str, &[&str]) = if name == "quotient-d8" {
            ("dihedral:4", &["e", "r^2"])
        } else {
            ("sym:4", &["e", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"])
        };
        let g = build_group(spec)?;
        let normal: Vec<Elem> = normal
            .iter()
            .map(|l| g.element_by_label(l).expect("known label"))
            .collect();
        let q = quotient(&g, &normal)?;
        return lemma_over_maps(&[ElementMap::projection(&g, &q)?]);
    }
    if let Some(pair) = name.strip_prefix("homs:") {
        let (src, tgt) = pair.split_once('>').ok_or_else(bad)?;
        let (g, h) = (build_group(src)?, build_group(tgt)?);
        let maps =
            enumerate_table_homs(&g, &h, budget).map_err(|e| SuiteError::from_hom(name, e))?;
        return lemma_over_maps(&maps);
    }
    if let Some(n) = name.strip_prefix("braid:") {
        let n: usize = n.parse().map_err(|_| bad())?;
        let (_, target, images) = standard_braid_target(n)?;
        return lemma_over_braid_maps(n, &target, vec![images]);
    }
    if let Some(rest) = name.strip_prefix("braid-homs:") {
        let (n, tgt) = rest.split_once('>').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let target = build_group(tgt)?;
        let homs = enumerate_homs(&braid_presentation(n)?, &target, budget)
            .map_err(|e| SuiteError::from_hom(name, e))?;
        return lemma_over_braid_maps(n, &target, homs.images);
    }
    Err(bad())
}

pub(crate) fn fundamental_lemma(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    let budget = p.count("budget")?;
    Ok(p.items("fixtures")
        .into_iter()
        .map(|name| {
            let fixture = name.clone();
            Job::new(name.clone(), p.single("fixtures", name), move || {
                lemma_fixture(&fixture, budget)
            })
        })
        .collect())
}

pub(crate) fn braid_cyclic(p: &Params<'_>) -> Result<Vec<Job>, SuiteError> {
    let budget = p.count("budget")?;
    let strands = p.integers("n")?;
    let mut jobs = Vec::new();
    for n in strands {
        if n < 5 {
            return Err(SuiteError::grid(
                "n",
                "the corollary needs at least 5 strands",
            ));
        }
        for target in p.items("targets") {
            let name = format!("braid:{n}>{target}");
            let grid = p.single("n", n.to_string()).with("targets", target.clone());
            let instance = name.clone();
            jobs.push(Job::new(name, grid, move || {
                let g = build_group(&target)?;
                let r = braid_cyclic_corollary_check(n as usize, &g, budget)
                    .map_err(|e| SuiteError::from_hom(&instance, e))?;
                let detail = json!({
                    "s_of_target": r.target_s,
                    "threshold": r.threshold,
                    "hom_count": r.hom_count,
                    "image_order_histogram": r.image_order_histogram,
                    "visited": r.visited,
                });
                Ok(match r.verdict {
                    CorollaryVerdict::Holds => Outcome::new(Verdict::Pass, detail),
                    CorollaryVerdict::Fails => Outcome::new(
                        Verdict::Fail {
                            counterexample: json!({ "non_cyclic_images": r.non_cyclic_images }),
                        },
                        detail,
                    ),
                    CorollaryVerdict::NotApplicable => Outcome::new(
                        Verdict::NotApplicable {
                            reason: "S(target) >= floor(n/2)".to_string(),
                        },
                        detail,
                    ),
                })
            }));
        }
    }
    Ok(jobs)
}
