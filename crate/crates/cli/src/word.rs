use anyhow::{bail, Result};
use clap::Subcommand;
use serde_json::{json, Value};
use tsslab::groupspec::build_group;
use tsslab::suite::free_product_check;
use tsslab::word::{
    bs_classification_check, bs_commutes, bs_conjugate, bs_inverse, bs_multiply, bs_swap_search,
    f2_commutes, f2_conjugate_test, f2_cyclic_reduce, f2_inverse, f2_multiply, f2_power,
    f2_primitive_root, f2_reduce, f2_tss_obstruction, BsElement, FreeProduct, FreeWord,
};

use crate::output::Sink;

#[derive(Debug, Subcommand)]
pub enum F2Op {
    /// Freely reduce any string over a, A, b, B.
    Reduce {
        letters: String,
    },
    Multiply {
        u: String,
        v: String,
    },
    Inverse {
        u: String,
    },
    Power {
        u: String,
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Write u = c core c⁻¹ with a cyclically reduced core.
    CyclicReduce {
        u: String,
    },
    /// Primitive root x and exponent k with u = x^k.
    Root {
        u: String,
    },
    Commutes {
        u: String,
        v: String,
    },
    /// A conjugator h with h u h⁻¹ = v, if any.
    Conjugate {
        u: String,
        v: String,
    },
    /// Evidence that no size-2 totally symmetric set contains u.
    Obstruction {
        u: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BsOp {
    Multiply {
        u: String,
        v: String,
    },
    Inverse {
        u: String,
    },
    /// h u h⁻¹.
    Conjugate {
        h: String,
        u: String,
    },
    Commutes {
        u: String,
        v: String,
    },
    /// Bounded search for a conjugator swapping two commuting elements.
    Swap {
        u: String,
        v: String,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Bounded check of the totally symmetric set classification.
    Classify {
        #[arg(long, default_value_t = 4)]
        radius: u32,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum FpOp {
    Multiply {
        u: String,
        v: String,
    },
    Inverse {
        u: String,
    },
    CyclicReduce {
        u: String,
    },
    Commutes {
        u: String,
        v: String,
    },
    Conjugate {
        u: String,
        v: String,
    },
    /// Decide whether a commuting set of words is totally symmetric.
    Analyze {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Analyze every commuting set of words up to a syllable length.
    Exhaust {
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_sets: usize,
    },
}

fn free_word(text: &str) -> Result<FreeWord> {
    Ok(FreeWord::parse(text)?)
}

fn letters(text: &str) -> Result<Vec<i64>> {
    text.chars()
        .filter(|c| !c.is_whitespace() && *c != 'e')
        .map(|c| match c {
            'a' => Ok(1),
            'A' => Ok(-1),
            'b' => Ok(2),
            'B' => Ok(-2),
            c => bail!("unexpected letter {c:?}; use a, A, b, B"),
        })
        .collect()
}

/// Prints a JSON value, or its `text` field (or compact JSON) as text.
fn show(sink: &Sink, name: &str, value: Value) -> Result<()> {
    sink.emit(
        name,
        &value,
        || match value.get("text").and_then(Value::as_str) {
            Some(t) => t.to_string(),
            None => serde_json::to_string(&value).expect("json"),
        },
        || {
            let Value::Object(map) = &value else {
                return (vec!["value".to_string()], vec![vec![value.to_string()]]);
            };
            let header = map.keys().cloned().collect();
            let row = map
                .values()
                .map(|v| {
                    v.as_str()
                        .map(str::to_string)
                        .unwrap_or_else(|| v.to_string())
                })
                .collect();
            (header, vec![row])
        },
    )
}

pub fn f2(sink: &Sink, op: &F2Op) -> Result<bool> {
    let value = match op {
        F2Op::Reduce { letters: l } => {
            let w = f2_reduce(&letters(l)?)?;
            json!({ "text": w.to_string() })
        }
        F2Op::Multiply { u, v } => {
            json!({ "text": f2_multiply(&free_word(u)?, &free_word(v)?).to_string() })
        }
        F2Op::Inverse { u } => json!({ "text": f2_inverse(&free_word(u)?).to_string() }),
        F2Op::Power { u, k } => json!({ "text": f2_power(&free_word(u)?, *k).to_string() }),
        F2Op::CyclicReduce { u } => {
            let (core, c) = f2_cyclic_reduce(&free_word(u)?);
            json!({ "core": core, "conjugator": c, "text": format!("core {core}, conjugator {c}") })
        }
        F2Op::Root { u } => match f2_primitive_root(&free_word(u)?) {
            Some((root, k)) => {
                json!({ "root": root, "exponent": k, "text": format!("({root})^{k}") })
            }
            None => json!({ "root": null, "text": "the identity has no primitive root" }),
        },
        F2Op::Commutes { u, v } => match f2_commutes(&free_word(u)?, &free_word(v)?) {
            Some(c) => json!({
                "commutes": true,
                "root": c.root,
                "exponents": c.exponents,
                "text": format!("commute: powers {:?} of {}", c.exponents, c.root),
            }),
            None => json!({ "commutes": false, "text": "do not commute" }),
        },
        F2Op::Conjugate { u, v } => match f2_conjugate_test(&free_word(u)?, &free_word(v)?) {
            Some(h) => {
                json!({ "conjugate": true, "conjugator": h, "text": format!("conjugate by {h}") })
            }
            None => json!({ "conjugate": false, "text": "not conjugate" }),
        },
        F2Op::Obstruction { u } => {
            let o = f2_tss_obstruction(&free_word(u)?)?;
            let mut v = serde_json::to_value(&o)?;
            v["holds"] = json!(o.holds());
            v["text"] = json!(format!(
                "{} = ({})^{}; swap partners forced to exponents {:?}; x^n conjugate to x^-n: {}; obstruction {}",
                o.word,
                o.root,
                o.exponent,
                o.forced_exponents,
                o.inverse_conjugator.is_some(),
                if o.holds() { "holds" } else { "FAILS" }
            ));
            show(sink, "word-f2-obstruction", v)?;
            return Ok(o.holds());
        }
    };
    show(sink, "word-f2", value)?;
    Ok(true)
}

pub fn bs(sink: &Sink, n: i64, op: &BsOp) -> Result<bool> {
    let el = |t: &str| BsElement::parse(t, n);
    let value = match op {
        BsOp::Multiply { u, v } => json!({ "text": bs_multiply(&el(u)?, &el(v)?, n)?.to_string() }),
        BsOp::Inverse { u } => json!({ "text": bs_inverse(&el(u)?, n)?.to_string() }),
        BsOp::Conjugate { h, u } => {
            json!({ "text": bs_conjugate(&el(h)?, &el(u)?, n)?.to_string() })
        }
        BsOp::Commutes { u, v } => {
            let c = bs_commutes(&el(u)?, &el(v)?, n)?;
            json!({ "commutes": c, "text": if c { "commute" } else { "do not commute" } })
        }
        BsOp::Swap { u, v, bound } => {
            let r = bs_swap_search(&el(u)?, &el(v)?, n, *bound)?;
            let text = match &r {
                tsslab::word::SwapSearch::Witness(h) => format!("swapped by {h}"),
                tsslab::word::SwapSearch::Exhausted { bound } => {
                    format!("no swapping conjugator with coordinates within {bound}")
                }
            };
            json!({ "result": r, "text": text })
        }
        BsOp::Classify { radius, bound } => {
            let c = bs_classification_check(n, *radius, *bound)?;
            let mut v = serde_json::to_value(&c)?;
            v["passed"] = json!(c.passed());
            v["text"] = json!(format!(
                "BS(1,{n}) {:?}: predicted max {}, certified pairs {}, commuting pairs {}, exhausted pairs {}, {}",
                c.branch,
                c.predicted_max,
                c.certified_pairs,
                c.commuting_pairs,
                c.exhausted_pairs,
                if c.passed() { "passed" } else { "FAILED" }
            ));
            show(sink, "word-bs-classify", v)?;
            return Ok(c.passed());
        }
    };
    show(sink, "word-bs", value)?;
    Ok(true)
}

pub fn fp(sink: &Sink, left: &str, right: &str, op: &FpOp) -> Result<bool> {
    let (g, h) = (build_group(left)?, build_group(right)?);
    let fp = FreeProduct::new(&g, &h);
    let word = |t: &str| fp.parse(t);
    let value = match op {
        FpOp::Multiply { u, v } => json!({ "text": fp.multiply(&word(u)?, &word(v)?).to_string() }),
        FpOp::Inverse { u } => json!({ "text": fp.inverse(&word(u)?).to_string() }),
        FpOp::CyclicReduce { u } => {
            let (core, c) = fp.cyclic_reduce(&word(u)?);
            json!({ "core": core, "conjugator": c, "text": format!("core {core}, conjugator {c}") })
        }
        FpOp::Commutes { u, v } => {
            let c = fp.commutes(&word(u)?, &word(v)?);
            json!({ "commutes": c, "text": if c { "commute" } else { "do not commute" } })
        }
        FpOp::Conjugate { u, v } => match fp.conjugate_test(&word(u)?, &word(v)?) {
            Some(h) => {
                json!({ "conjugate": true, "conjugator": h, "text": format!("conjugate by {h}") })
            }
            None => json!({ "conjugate": false, "text": "not conjugate" }),
        },
        FpOp::Analyze { words } => {
            let set = words
                .iter()
                .map(|w| word(w))
                .collect::<Result<Vec<_>, _>>()?;
            let verdict = fp.tss_analyze(&set)?;
            let mut v = serde_json::to_value(&verdict)?;
            v["text"] = json!(match &verdict.reason {
                None => format!("totally symmetric ({:?})", verdict.case),
                Some(r) => format!("not totally symmetric: {r}"),
            });
            v
        }
        FpOp::Exhaust { max_len, max_sets } => {
            let r = free_product_check(left, right, *max_len, *max_sets)?;
            let mut v = serde_json::to_value(&r)?;
            v["text"] = json!(format!(
                "{left} * {right}, words up to {} syllables: {} words, {} commuting sets, largest certified {} (factor max {}), {} certified sets outside a conjugated factor",
                r.max_len,
                r.words,
                r.commuting_sets,
                r.largest_certified,
                r.factor_max,
                r.certified_common_powers
            ));
            show(sink, "word-fp-exhaust", v)?;
            return Ok(r.bound_holds() && r.reduction_holds());
        }
    };
    show(sink, "word-fp", value)?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_accept_unreduced_input() {
        assert_eq!(letters("aAb B").unwrap(), [1, -1, 2, -2]);
        assert!(letters("ax").is_err());
    }
}
