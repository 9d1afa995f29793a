use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{rotation_offset, smallest_period, WordError};

/// A freely reduced word in `F_2 = <a, b>`.
///
/// Letters are `1 = a`, `2 = b`, and their negatives for the inverses. The
/// text form uses `a A b B`, with `e` for the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<i8>,
}

fn push_reduced(out: &mut Vec<i8>, x: i8) {
    if out.last() == Some(&-x) {
        out.pop();
    } else {
        out.push(x);
    }
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn a() -> Self {
        FreeWord { letters: vec![1] }
    }

    pub fn b() -> Self {
        FreeWord { letters: vec![2] }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Parses a freely reduced word. Unreduced input is rejected with the
    /// reduced spelling in the error.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "e" || text == "1" {
            return Ok(FreeWord::identity());
        }
        let mut letters = Vec::with_capacity(text.len());
        for (column, c) in text.chars().enumerate() {
            letters.push(match c {
                'a' => 1,
                'A' => -1,
                'b' => 2,
                'B' => -2,
                _ => {
                    return Err(WordError::Parse {
                        column: column + 1,
                        message: format!("{c:?} is not one of a, A, b, B"),
                    })
                }
            });
        }
        let reduced = reduce_letters(&letters);
        if reduced.letters != letters {
            return Err(WordError::NotNormalized {
                input: text.to_string(),
                normal: reduced.to_string(),
            });
        }
        Ok(reduced)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for &x in &self.letters {
            f.write_str(match x {
                1 => "a",
                -1 => "A",
                2 => "b",
                _ => "B",
            })?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FreeWord::parse(s)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn reduce_letters(letters: &[i8]) -> FreeWord {
    let mut out = Vec::with_capacity(letters.len());
    for &x in letters {
        push_reduced(&mut out, x);
    }
    FreeWord { letters: out }
}

/// Free reduction of an arbitrary letter sequence.
pub fn f2_reduce(letters: &[i64]) -> Result<FreeWord, WordError> {
    let mut out = Vec::with_capacity(letters.len());
    for &x in letters {
        if !matches!(x, -2 | -1 | 1 | 2) {
            return Err(WordError::BadLetter(x));
        }
        out.push(x as i8);
    }
    Ok(reduce_letters(&out))
}

pub fn f2_multiply(u: &FreeWord, v: &FreeWord) -> FreeWord {
    let mut out = u.letters.clone();
    for &x in &v.letters {
        push_reduced(&mut out, x);
    }
    FreeWord { letters: out }
}

pub fn f2_inverse(u: &FreeWord) -> FreeWord {
    FreeWord {
        letters: u.letters.iter().rev().map(|&x| -x).collect(),
    }
}

pub fn f2_power(u: &FreeWord, k: i64) -> FreeWord {
    let base = if k < 0 { f2_inverse(u) } else { u.clone() };
    let mut out = FreeWord::identity();
    for _ in 0..k.unsigned_abs() {
        out = f2_multiply(&out, &base);
    }
    out
}

/// Writes `u = c · core · c⁻¹` with `core` cyclically reduced. Returns
/// `(core, c)`.
pub fn f2_cyclic_reduce(u: &FreeWord) -> (FreeWord, FreeWord) {
    let s = &u.letters;
    let mut lo = 0;
    let mut hi = s.len();
    while hi - lo >= 2 && s[lo] == -s[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    (
        FreeWord {
            letters: s[lo..hi].to_vec(),
        },
        FreeWord {
            letters: s[..lo].to_vec(),
        },
    )
}

/// The primitive root `x` and exponent `k >= 1` with `u = x^k`, or `None`
/// for the identity.
///
/// The root is the smallest period of the cyclically reduced core,
/// conjugated back, so `root(u⁻¹) = root(u)⁻¹`.
pub fn f2_primitive_root(u: &FreeWord) -> Option<(FreeWord, i64)> {
    if u.is_identity() {
        return None;
    }
    let (core, c) = f2_cyclic_reduce(u);
    let p = smallest_period(&core.letters);
    let period = FreeWord {
        letters: core.letters[..p].to_vec(),
    };
    let root = f2_multiply(&f2_multiply(&c, &period), &f2_inverse(&c));
    Some((root, (core.len() / p) as i64))
}

/// Common root of a commuting pair: `u = root^exponents.0` and
/// `v = root^exponents.1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F2Commutation {
    pub root: FreeWord,
    pub exponents: (i64, i64),
}

fn exponent_over(root: &FreeWord, w: &FreeWord) -> i64 {
    match f2_primitive_root(w) {
        None => 0,
        Some((r, k)) if &r == root => k,
        Some((r, k)) => {
            debug_assert_eq!(r, f2_inverse(root));
            -k
        }
    }
}

/// `Some` iff `uv = vu`, carrying the common primitive root. When both words
/// are trivial the root is the identity with exponents `(0, 0)`.
pub fn f2_commutes(u: &FreeWord, v: &FreeWord) -> Option<F2Commutation> {
    if f2_multiply(u, v) != f2_multiply(v, u) {
        return None;
    }
    let root = match f2_primitive_root(u).or_else(|| f2_primitive_root(v)) {
        Some((r, _)) => r,
        None => {
            return Some(F2Commutation {
                root: FreeWord::identity(),
                exponents: (0, 0),
            })
        }
    };
    let exponents = (exponent_over(&root, u), exponent_over(&root, v));
    Some(F2Commutation { root, exponents })
}

/// `Some(h)` with `h u h⁻¹ = v` when the words are conjugate.
///
/// Conjugate words have cyclically reduced cores that are rotations of each
/// other; if `core_v` is `core_u` rotated left by a prefix `p`, then
/// `h = c_v p⁻¹ c_u⁻¹`.
pub fn f2_conjugate_test(u: &FreeWord, v: &FreeWord) -> Option<FreeWord> {
    let (core_u, c_u) = f2_cyclic_reduce(u);
    let (core_v, c_v) = f2_cyclic_reduce(v);
    let r = rotation_offset(&core_u.letters, &core_v.letters)?;
    let prefix = FreeWord {
        letters: core_u.letters[..r].to_vec(),
    };
    Some(f2_multiply(
        &f2_multiply(&c_v, &f2_inverse(&prefix)),
        &f2_inverse(&c_u),
    ))
}

/// Evidence that `u` lies in no totally symmetric set of size 2.
///
/// A partner `w` must commute with `u`, so `u = x^n` and `w = x^m` for the
/// primitive root `x`. Conjugation preserves the length of the cyclic core,
/// and the core of `x^m` has length `|m|` times that of `x`, so a swap
/// forces `m = ±n`. `m = n` gives `w = u`, and `m = -n` needs `x^n` to be
/// conjugate to `x^-n`, which the rotation test refutes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F2Obstruction {
    pub word: FreeWord,
    pub root: FreeWord,
    pub exponent: i64,
    pub root_core_length: usize,
    /// Exponents `m` whose core length matches that of `u`.
    pub forced_exponents: Vec<i64>,
    /// Result of the conjugacy test between `x^n` and `x^-n`.
    pub inverse_conjugator: Option<FreeWord>,
    /// Exponents `m` in the corroboration window for which `x^m` was
    /// checked not to be conjugate to `x^n`.
    pub corroborated_exponents: Vec<i64>,
    /// Exponents in the window that were found conjugate to `x^n` after all.
    pub corroboration_failures: Vec<i64>,
}

impl F2Obstruction {
    pub fn holds(&self) -> bool {
        self.inverse_conjugator.is_none()
            && self.corroboration_failures.is_empty()
            && self.forced_exponents == [-self.exponent, self.exponent]
            && f2_power(&self.root, self.exponent) == self.word
    }
}

pub fn f2_tss_obstruction(u: &FreeWord) -> Result<F2Obstruction, WordError> {
    let (root, n) = f2_primitive_root(u).ok_or(WordError::IdentityWord)?;
    let root_core_length = f2_cyclic_reduce(&root).0.len();
    let core_len = |m: i64| f2_cyclic_reduce(&f2_power(&root, m)).0.len();
    let target = core_len(n);
    let window = 2 * n + 2;
    let forced_exponents: Vec<i64> = (-window..=window)
        .filter(|&m| core_len(m) == target)
        .collect();
    let inverse_conjugator = f2_conjugate_test(u, &f2_power(&root, -n));
    let mut corroborated_exponents = Vec::new();
    let mut corroboration_failures = Vec::new();
    for m in (-window..=window).filter(|&m| m != n) {
        if f2_conjugate_test(u, &f2_power(&root, m)).is_some() {
            corroboration_failures.push(m);
        } else {
            corroborated_exponents.push(m);
        }
    }
    Ok(F2Obstruction {
        word: u.clone(),
        root,
        exponent: n,
        root_core_length,
        forced_exponents,
        inverse_conjugator,
        corroborated_exponents,
        corroboration_failures,
    })
}

/// Every reduced word of length at most `max_len`, shortest first.
pub fn reduced_words(max_len: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::identity()];
    let mut frontier = vec![FreeWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for w in &frontier {
            for x in [1i8, -1, 2, -2] {
                if w.letters.last() != Some(&-x) {
                    let mut letters = w.letters.clone();
                    letters.push(x);
                    next.push(FreeWord { letters });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert!(f2_multiply(&w("a"), &w("A")).is_identity());
        assert_eq!(f2_multiply(&w("ab"), &w("Ba")), w("aa"));
        assert_eq!(f2_inverse(&w("aBa")), w("AbA"));
        assert_eq!(f2_reduce(&[1, 2, -2, -1, 2]).unwrap(), w("b"));
        assert_eq!(f2_reduce(&[3]), Err(WordError::BadLetter(3)));
        assert_eq!(f2_power(&w("ab"), -2), w("BABA"));
    }

    #[test]
    fn parser_rejects_unreduced_input() {
        match FreeWord::parse("abBa").unwrap_err() {
            WordError::NotNormalized { normal, .. } => assert_eq!(normal, "aa"),
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            FreeWord::parse("abc"),
            Err(WordError::Parse { column: 3, .. })
        ));
        assert_eq!(w("e"), FreeWord::identity());
        assert_eq!(w("aBAb").to_string(), "aBAb");
    }

    #[test]
    fn commuting_examples() {
        let c = f2_commutes(&w("aa"), &w("aaa")).unwrap();
        assert_eq!(c.root, w("a"));
        assert_eq!(c.exponents, (2, 3));
        assert!(f2_commutes(&w("ab"), &w("ba")).is_none());
        let c = f2_commutes(&w("abab"), &w("ababab")).unwrap();
        assert_eq!(c.root, w("ab"));
        assert_eq!(c.exponents, (2, 3));
        let c = f2_commutes(&w("abab"), &w("BA")).unwrap();
        assert_eq!(c.exponents, (2, -1));
        let c = f2_commutes(&FreeWord::identity(), &w("AAA")).unwrap();
        assert_eq!((c.root, c.exponents), (w("A"), (0, 3)));
    }

    #[test]
    fn conjugacy_examples() {
        // h u h⁻¹ = v with u = ab, v = ba gives h = a⁻¹.
        let h = f2_conjugate_test(&w("ab"), &w("ba")).unwrap();
        assert_eq!(h, w("A"));
        assert!(f2_conjugate_test(&w("abAB"), &w("baBA")).is_none());
        assert!(f2_conjugate_test(&w("aba"), &w("AbA")).is_none());
        assert!(f2_conjugate_test(&w("aa"), &w("AA")).is_none());
        let h = f2_conjugate_test(&w("bAAB"), &w("abAABA")).unwrap();
        let got = f2_multiply(&f2_multiply(&h, &w("bAAB")), &f2_inverse(&h));
        assert_eq!(got, w("abAABA"));
    }

    #[test]
    fn roots() {
        assert_eq!(f2_primitive_root(&w("abab")), Some((w("ab"), 2)));
        assert_eq!(f2_primitive_root(&w("BA")), Some((w("BA"), 1)));
        assert_eq!(f2_primitive_root(&w("abbbA")), Some((w("abA"), 3)));
        assert_eq!(f2_primitive_root(&FreeWord::identity()), None);
    }

    #[test]
    fn obstruction_examples() {
        for (u, root, n) in [("a", "a", 1), ("abab", "ab", 2), ("abA", "abA", 1)] {
            let ob = f2_tss_obstruction(&w(u)).unwrap();
            assert_eq!(ob.root, w(root));
            assert_eq!(ob.exponent, n);
            assert!(ob.holds(), "{ob:?}");
        }
        assert_eq!(
            f2_tss_obstruction(&FreeWord::identity()),
            Err(WordError::IdentityWord)
        );
    }

    #[test]
    fn no_short_word_is_conjugate_to_its_inverse() {
        let words = reduced_words(6);
        assert_eq!(words.len(), 1 + 4 * (3usize.pow(6) - 1) / 2);
        for u in words.iter().skip(1) {
            assert!(f2_conjugate_test(u, &f2_inverse(u)).is_none(), "{u}");
        }
    }

    fn word_strategy(max: usize) -> impl Strategy<Value = FreeWord> {
        prop::collection::vec(prop::sample::select(vec![1i64, -1, 2, -2]), 0..=max)
            .prop_map(|l| f2_reduce(&l).unwrap())
    }

    proptest! {
        #[test]
        fn associativity(u in word_strategy(20), v in word_strategy(20), x in word_strategy(20)) {
            prop_assert_eq!(
                f2_multiply(&f2_multiply(&u, &v), &x),
                f2_multiply(&u, &f2_multiply(&v, &x))
            );
        }

        #[test]
        fn reduction_is_idempotent(raw in prop::collection::vec(prop::sample::select(vec![1i64, -1, 2, -2]), 0..30)) {
            let once = f2_reduce(&raw).unwrap();
            let letters: Vec<i64> = once.letters().iter().map(|&x| x as i64).collect();
            prop_assert_eq!(f2_reduce(&letters).unwrap(), once.clone());
            prop_assert!(f2_multiply(&once, &f2_inverse(&once)).is_identity());
        }

        #[test]
        fn commuting_powers_share_a_root(base in word_strategy(6), i in -3i64..=3, j in -3i64..=3) {
            let u = f2_power(&base, i);
            let v = f2_power(&base, j);
            let c = f2_commutes(&u, &v).expect("powers commute");
            prop_assert_eq!(f2_power(&c.root, c.exponents.0), u);
            prop_assert_eq!(f2_power(&c.root, c.exponents.1), v);
            if !c.root.is_identity() {
                prop_assert_eq!(f2_primitive_root(&c.root).unwrap().1, 1);
            }
        }

        #[test]
        fn conjugator_is_exact(u in word_strategy(10), h in word_strategy(6)) {
            let v = f2_multiply(&f2_multiply(&h, &u), &f2_inverse(&h));
            let g = f2_conjugate_test(&u, &v).expect("conjugate by construction");
            prop_assert_eq!(f2_multiply(&f2_multiply(&g, &u), &f2_inverse(&g)), v);
        }

        #[test]
        fn cyclic_reduction_round_trips(u in word_strategy(16)) {
            let (core, c) = f2_cyclic_reduce(&u);
            prop_assert_eq!(f2_multiply(&f2_multiply(&c, &core), &f2_inverse(&c)), u);
            if core.len() >= 2 {
                prop_assert_ne!(core.letters()[0], -core.letters()[core.len() - 1]);
            }
        }
    }
}
