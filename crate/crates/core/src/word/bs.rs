//! `BS(1, n) = <a, b | b a b⁻¹ = aⁿ>` realized as `Z[1/n] ⋊ Z`.
//!
//! The pair `(r, t)` stands for `a^r b^t`, and
//! `(r₁, t₁)(r₂, t₂) = (r₁ + nᵗ¹ r₂, t₁ + t₂)`, so `a = (1, 0)` and
//! `b = (0, 1)`. The rational `r` is kept as `num / n^q` with `n ∤ num`
//! whenever `q > 0`, which makes the representation unique.
//!
//! Text form: `a^P/n^Q b^T`, where `n` is written literally and the
//! `/n^Q` part is omitted when `Q = 0`. `e` is the identity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::WordError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BsElement {
    num: BigInt,
    den_exp: u32,
    t: i64,
}

fn check_n(n: i64) -> Result<(), WordError> {
    if n == 0 {
        Err(WordError::ZeroParameter)
    } else {
        Ok(())
    }
}

fn npow(n: i64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(n), k as usize)
}

fn exponent(k: i64) -> u32 {
    u32::try_from(k.unsigned_abs()).expect("exponent of n exceeds u32")
}

fn normalize(mut num: BigInt, mut q: u32, n: i64) -> (BigInt, u32) {
    let bn = BigInt::from(n);
    while q > 0 && num.is_multiple_of(&bn) {
        num /= &bn;
        q -= 1;
    }
    if num.is_zero() {
        q = 0;
    }
    (num, q)
}

fn add(a: (&BigInt, u32), b: (&BigInt, u32), n: i64) -> (BigInt, u32) {
    let q = a.1.max(b.1);
    let num = a.0 * npow(n, q - a.1) + b.0 * npow(n, q - b.1);
    normalize(num, q, n)
}

/// `(num / n^q) · n^k`.
fn scale(num: &BigInt, q: u32, k: i64, n: i64) -> (BigInt, u32) {
    if k >= 0 {
        let up = exponent(k);
        if up >= q {
            (num * npow(n, up - q), 0)
        } else {
            normalize(num.clone(), q - up, n)
        }
    } else {
        normalize(num.clone(), q + exponent(k), n)
    }
}

impl BsElement {
    pub fn identity() -> Self {
        BsElement {
            num: BigInt::zero(),
            den_exp: 0,
            t: 0,
        }
    }

    pub fn a() -> Self {
        BsElement::from_exponents(1, 0)
    }

    pub fn b() -> Self {
        BsElement::from_exponents(0, 1)
    }

    /// `a^i b^j`.
    pub fn from_exponents(i: i64, j: i64) -> Self {
        BsElement {
            num: BigInt::from(i),
            den_exp: 0,
            t: j,
        }
    }

    /// `a^(num / n^den_exp) b^t`, normalized.
    pub fn new(num: BigInt, den_exp: u32, t: i64, n: i64) -> Result<Self, WordError> {
        check_n(n)?;
        let (num, den_exp) = normalize(num, den_exp, n);
        Ok(BsElement { num, den_exp, t })
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator_exponent(&self) -> u32 {
        self.den_exp
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn is_identity(&self) -> bool {
        self.num.is_zero() && self.t == 0
    }

    /// Parses the text form, rejecting representations that are not
    /// normalized for this `n`.
    pub fn parse(text: &str, n: i64) -> Result<Self, WordError> {
        check_n(n)?;
        let text = text.trim();
        if text == "e" || text.is_empty() {
            return Ok(BsElement::identity());
        }
        let err = |column: usize, message: &str| WordError::Parse {
            column: column + 1,
            message: message.to_string(),
        };
        let mut num = BigInt::zero();
        let mut den_exp = 0u32;
        let mut t = 0i64;
        let mut rest = text;
        let offset = |rest: &str| text.len() - rest.len();
        if let Some(r) = rest.strip_prefix("a^") {
            let end = r
                .find(|c: char| c == '/' || c.is_whitespace())
                .unwrap_or(r.len());
            num = r[..end]
                .parse()
                .map_err(|_| err(offset(r), "expected an integer exponent of a"))?;
            rest = &r[end..];
            if let Some(r) = rest.strip_prefix("/n^") {
                let end = r.find(char::is_whitespace).unwrap_or(r.len());
                den_exp = r[..end]
                    .parse()
                    .map_err(|_| err(offset(r), "expected a non-negative power of n"))?;
                rest = &r[end..];
            }
            rest = rest.trim_start();
        }
        if let Some(r) = rest.strip_prefix("b^") {
            t = r
                .trim_end()
                .parse()
                .map_err(|_| err(offset(r), "expected an integer exponent of b"))?;
            rest = "";
        }
        if !rest.is_empty() {
            return Err(err(offset(rest), "expected `a^P[/n^Q] b^T`"));
        }
        let parsed = BsElement {
            num: num.clone(),
            den_exp,
            t,
        };
        let normal = BsElement::new(num, den_exp, t, n)?;
        if parsed != normal {
            return Err(WordError::NotNormalized {
                input: text.to_string(),
                normal: normal.to_string(),
            });
        }
        Ok(normal)
    }
}

impl fmt::Display for BsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let mut parts = Vec::new();
        if !self.num.is_zero() {
            parts.push(if self.den_exp == 0 {
                format!("a^{}", self.num)
            } else {
                format!("a^{}/n^{}", self.num, self.den_exp)
            });
        }
        if self.t != 0 {
            parts.push(format!("b^{}", self.t));
        }
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for BsElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn bs_multiply(u: &BsElement, v: &BsElement, n: i64) -> Result<BsElement, WordError> {
    check_n(n)?;
    let (sn, sq) = scale(&v.num, v.den_exp, u.t, n);
    let (num, den_exp) = add((&u.num, u.den_exp), (&sn, sq), n);
    Ok(BsElement {
        num,
        den_exp,
        t: u.t + v.t,
    })
}

/// `(r, t)⁻¹ = (-n^(-t) r, -t)`.
pub fn bs_inverse(u: &BsElement, n: i64) -> Result<BsElement, WordError> {
    check_n(n)?;
    let (num, den_exp) = scale(&u.num, u.den_exp, -u.t, n);
    Ok(BsElement {
        num: -num,
        den_exp,
        t: -u.t,
    })
}

/// `h u h⁻¹`.
pub fn bs_conjugate(h: &BsElement, u: &BsElement, n: i64) -> Result<BsElement, WordError> {
    bs_multiply(&bs_multiply(h, u, n)?, &bs_inverse(h, n)?, n)
}

pub fn bs_commutes(u: &BsElement, v: &BsElement, n: i64) -> Result<bool, WordError> {
    Ok(bs_multiply(u, v, n)? == bs_multiply(v, u, n)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SwapSearch {
    Witness(BsElement),
    Exhausted { bound: u32 },
}

/// `0, 1, -1, 2, -2, ..., bound, -bound`.
fn signed_range(bound: u32) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound as i64).flat_map(|k| [k, -k]))
}

/// Searches `h = a^(c/n^d) b^f` with `|c|, |f|, d <= bound` for
/// `h u h⁻¹ = v` and `h v h⁻¹ = u`. Candidates are tried by `f`, then `d`,
/// then `c`, each signed coordinate in the order `0, 1, -1, 2, ...`; the
/// first hit is returned. When `|n| = 1` every denominator is trivial and
/// only `d = 0` is tried.
pub fn bs_swap_search(
    u: &BsElement,
    v: &BsElement,
    n: i64,
    bound: u32,
) -> Result<SwapSearch, WordError> {
    check_n(n)?;
    if bound == 0 {
        return Err(WordError::ZeroBound);
    }
    if !bs_commutes(u, v, n)? {
        return Err(WordError::NotCommuting);
    }
    if u.t != v.t {
        return Ok(SwapSearch::Exhausted { bound });
    }
    let max_d = if n.abs() == 1 { 0 } else { bound };
    let bn = BigInt::from(n);
    for f in signed_range(bound) {
        for d in 0..=max_d {
            for c in signed_range(bound) {
                let c = BigInt::from(c);
                if d > 0 && c.is_multiple_of(&bn) {
                    continue;
                }
                let h = BsElement {
                    num: c,
                    den_exp: d,
                    t: f,
                };
                if &bs_conjugate(&h, u, n)? == v && &bs_conjugate(&h, v, n)? == u {
                    return Ok(SwapSearch::Witness(h));
                }
            }
        }
    }
    Ok(SwapSearch::Exhausted { bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BsBranch {
    /// `n = 1`: the group is `Z²`.
    Abelian,
    /// `n = -1`: `{a^x b^2m, a^-x b^2m}` is totally symmetric.
    Inverting,
    /// `|n| >= 2`: distinct commuting elements are never swapped.
    Rigid,
}

/// Outcome of [`bs_classification_check`]. Every list named after a failure
/// is empty when the check passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BsClassification {
    pub n: i64,
    pub radius: u32,
    pub bound: u32,
    pub branch: BsBranch,
    pub predicted_max: usize,
    /// Size-2 sets certified with an exact swap witness.
    pub certified_pairs: usize,
    pub uncertified_pairs: Vec<[String; 2]>,
    pub third_elements_rejected: usize,
    pub surviving_triples: Vec<[String; 3]>,
    pub commuting_pairs: usize,
    /// Pairs ruled out by searching every conjugator within the bound.
    pub exhausted_pairs: usize,
    pub swap_witnesses: Vec<[String; 3]>,
    /// Failures of an exact algebraic condition.
    pub condition_violations: Vec<String>,
}

impl BsClassification {
    pub fn passed(&self) -> bool {
        self.uncertified_pairs.is_empty()
            && self.surviving_triples.is_empty()
            && self.swap_witnesses.is_empty()
            && self.condition_violations.is_empty()
    }
}

/// Exponent form of the commutation condition: `a^i b^j` and `a^x b^y`
/// commute iff `i + x nʲ = x + i nʸ`.
fn exponent_identity(i: i64, j: i64, x: i64, y: i64, n: i64) -> bool {
    let lhs = {
        let (s, q) = scale(&BigInt::from(x), 0, j, n);
        add((&BigInt::from(i), 0), (&s, q), n)
    };
    let rhs = {
        let (s, q) = scale(&BigInt::from(i), 0, y, n);
        add((&BigInt::from(x), 0), (&s, q), n)
    };
    lhs == rhs
}

fn grid(radius: u32) -> Vec<(i64, i64)> {
    let r = radius as i64;
    (-r..=r)
        .flat_map(|i| (-r..=r).map(move |j| (i, j)))
        .collect()
}

/// Checks the classification of totally symmetric sets in `BS(1, n)` on the
/// elements `a^i b^j` with `|i|, |j| <= radius`, using conjugators within
/// `bound` for the swap searches. This is bounded evidence, not a proof.
pub fn bs_classification_check(
    n: i64,
    radius: u32,
    bound: u32,
) -> Result<BsClassification, WordError> {
    check_n(n)?;
    if bound == 0 {
        return Err(WordError::ZeroBound);
    }
    let branch = match n {
        1 => BsBranch::Abelian,
        -1 => BsBranch::Inverting,
        _ => BsBranch::Rigid,
    };
    let mut report = BsClassification {
        n,
        radius,
        bound,
        branch,
        predicted_max: if branch == BsBranch::Inverting { 2 } else { 1 },
        certified_pairs: 0,
        uncertified_pairs: Vec::new(),
        third_elements_rejected: 0,
        surviving_triples: Vec::new(),
        commuting_pairs: 0,
        exhausted_pairs: 0,
        swap_witnesses: Vec::new(),
        condition_violations: Vec::new(),
    };
    match branch {
        BsBranch::Inverting => inverting_branch(&mut report)?,
        BsBranch::Abelian | BsBranch::Rigid => pairwise_branch(&mut report)?,
    }
    Ok(report)
}

fn inverting_branch(report: &mut BsClassification) -> Result<(), WordError> {
    let (n, bound) = (report.n, report.bound);
    let r = report.radius as i64;
    let third_radius = r.min(3) as u32;
    for x in 1..=r {
        for m in -r..=r {
            let u = BsElement::from_exponents(x, 2 * m);
            let v = BsElement::from_exponents(-x, 2 * m);
            let certified = bs_commutes(&u, &v, n)?
                && matches!(bs_swap_search(&u, &v, n, bound)?, SwapSearch::Witness(_));
            if !certified {
                report
                    .uncertified_pairs
                    .push([u.to_string(), v.to_string()]);
                continue;
            }
            report.certified_pairs += 1;
            if x > third_radius as i64 || m.abs() > third_radius as i64 {
                continue;
            }
            let inverse_pair = bs_inverse(&u, n)? == v;
            for (i, j) in grid(third_radius) {
                let w = BsElement::from_exponents(i, j);
                if w == u || w == v {
                    continue;
                }
                let rejected = !bs_commutes(&w, &u, n)?
                    || !bs_commutes(&w, &v, n)?
                    // A totally symmetric set containing g and g⁻¹ is {g, g⁻¹}.
                    || inverse_pair
                    || bs_inverse(&w, n)? == u
                    || bs_inverse(&w, n)? == v
                    // Conjugation fixes t and, for even t, sends a^i to a^±i.
                    || j != 2 * m
                    || i.abs() != x
                    || third_exhausts(&u, &v, &w, n, bound)?;
                if rejected {
                    report.third_elements_rejected += 1;
                } else {
                    report
                        .surviving_triples
                        .push([u.to_string(), v.to_string(), w.to_string()]);
                }
            }
        }
    }
    Ok(())
}

/// Whether no `h` within the bound swaps `u` and `w` while fixing `v`.
fn third_exhausts(
    u: &BsElement,
    v: &BsElement,
    w: &BsElement,
    n: i64,
    bound: u32,
) -> Result<bool, WordError> {
    match bs_swap_search(u, w, n, bound)? {
        SwapSearch::Exhausted { .. } => Ok(true),
        SwapSearch::Witness(h) => Ok(bs_conjugate(&h, v, n)? != *v),
    }
}

fn pairwise_branch(report: &mut BsClassification) -> Result<(), WordError> {
    let (n, bound) = (report.n, report.bound);
    let points = grid(report.radius);
    for (p, &(i, j)) in points.iter().enumerate() {
        for &(x, y) in &points[p + 1..] {
            let u = BsElement::from_exponents(i, j);
            let v = BsElement::from_exponents(x, y);
            let commutes = bs_commutes(&u, &v, n)?;
            if commutes != exponent_identity(i, j, x, y, n) {
                report.condition_violations.push(format!(
                    "{u} and {v}: product test disagrees with i + x n^j = x + i n^y"
                ));
            }
            if !commutes {
                continue;
            }
            report.commuting_pairs += 1;
            if report.branch == BsBranch::Rigid && j == y && j != 0 {
                // (i - x)(1 - n^y) = 0 with 1 - n^y != 0 forces i = x.
                report.condition_violations.push(format!(
                    "{u} and {v} commute with equal nonzero t but i != x"
                ));
            }
            match bs_swap_search(&u, &v, n, bound)? {
                SwapSearch::Exhausted { .. } => report.exhausted_pairs += 1,
                SwapSearch::Witness(h) => {
                    report
                        .swap_witnesses
                        .push([u.to_string(), v.to_string(), h.to_string()])
                }
            }
        }
    }
    if report.branch == BsBranch::Abelian {
        for (i, j) in points {
            let u = BsElement::from_exponents(i, j);
            for g in [BsElement::a(), BsElement::b()] {
                if bs_conjugate(&g, &u, n)? != u {
                    report
                        .condition_violations
                        .push(format!("{g} does not centralize {u}"));
                }
            }
        }
    }
    Ok(())
}
