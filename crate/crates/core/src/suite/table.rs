use rayon::prelude::*;
use serde::Serialize;

use super::words::free_product_check;
use super::SuiteError;
use crate::groupspec::build_group;
use crate::tss::max_tss_size;
use crate::word::{
    bs_classification_check, f2_conjugate_test, f2_inverse, f2_tss_obstruction, reduced_words,
};

/// One line of the summary table. `computed` is what this run established
/// for the concrete instance, `consistent` whether it matches `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub bound: String,
    pub family: String,
    pub instance: String,
    pub computed: String,
    pub consistent: bool,
    pub method: String,
}

type RowBuilder = Box<dyn Fn() -> Result<TableRow, SuiteError> + Send + Sync>;

fn row(
    bound: &str,
    family: &str,
    instance: &str,
    computed: usize,
    consistent: bool,
    method: &str,
) -> TableRow {
    TableRow {
        bound: bound.to_string(),
        family: family.to_string(),
        instance: instance.to_string(),
        computed: computed.to_string(),
        consistent,
        method: method.to_string(),
    }
}

fn exact(bound: usize, family: &'static str, spec: &'static str) -> RowBuilder {
    Box::new(move || {
        let s = max_tss_size(&build_group(spec)?).s_of_g;
        Ok(row(
            &bound.to_string(),
            family,
            spec,
            s,
            s == bound,
            "exhaustive search",
        ))
    })
}

fn default_rows() -> Vec<RowBuilder> {
    vec![
        exact(1, "abelian", "cyclic:12"),
        Box::new(|| {
            let len = 6;
            let ok = reduced_words(len)
                .iter()
                .filter(|w| !w.is_identity())
                .all(|u| {
                    f2_conjugate_test(u, &f2_inverse(u)).is_none()
                        && f2_tss_obstruction(u).map(|o| o.holds()).unwrap_or(false)
                });
            let method = format!("no reduced word of length <= {len} is conjugate to its inverse");
            Ok(row("1", "free group", "F_2", 1, ok, &method))
        }),
        exact(1, "odd order", "semidirect:7,3,2"),
        Box::new(|| {
            let c = bs_classification_check(2, 3, 4)?;
            let method = "exact commutation conditions; swap search over conjugators within 4";
            Ok(row(
                "1",
                "BS(1,n), n != 1",
                "BS(1,2)",
                1,
                c.passed(),
                method,
            ))
        }),
        exact(2, "dihedral", "dihedral:7"),
        exact(2, "Z_p x| Z_np", "semidirect:5,20,2"),
        Box::new(|| {
            let c = bs_classification_check(-1, 3, 4)?;
            let ok = c.passed() && c.certified_pairs > 0;
            let method = "certified pairs {a^x b^2m, a^-x b^2m}; no third element within radius 3";
            Ok(row("2", "BS(1,-1)", "BS(1,-1)", 2, ok, method))
        }),
        Box::new(|| {
            let s = max_tss_size(&build_group("sym:4")?).s_of_g;
            Ok(row(
                "<= 4",
                "solvable",
                "sym:4",
                s,
                s <= 4,
                "exhaustive search",
            ))
        }),
        Box::new(|| {
            let spec = "product:sym:4,cyclic:5";
            let s = max_tss_size(&build_group(spec)?).s_of_g;
            let expected = max_tss_size(&build_group("sym:4")?)
                .s_of_g
                .max(max_tss_size(&build_group("cyclic:5")?).s_of_g);
            Ok(row(
                "max",
                "direct product",
                spec,
                s,
                s == expected,
                "exhaustive search",
            ))
        }),
        free_product_row("cyclic:3", "cyclic:3"),
        free_product_row("cyclic:2", "cyclic:3"),
    ]
}

fn free_product_row(left: &'static str, right: &'static str) -> RowBuilder {
    Box::new(move || {
        let len = 4;
        let r = free_product_check(left, right, len, 1_000_000)?;
        let method = format!("all commuting sets of words with at most {len} syllables");
        Ok(row(
            "max",
            "free product",
            &format!("{left}*{right}"),
            r.largest_certified,
            r.bound_holds(),
            &method,
        ))
    })
}

/// The summary table. With no `groups`, rows cover the default roster of
/// one concrete instance per family; otherwise one computed row per group.
pub fn summary_table(groups: &[String]) -> Result<Vec<TableRow>, SuiteError> {
    let builders: Vec<RowBuilder> = if groups.is_empty() {
        default_rows()
    } else {
        groups
            .iter()
            .cloned()
            .map(|spec| -> RowBuilder {
                Box::new(move || {
                    let s = max_tss_size(&build_group(&spec)?).s_of_g;
                    Ok(row("-", "custom", &spec, s, true, "exhaustive search"))
                })
            })
            .collect()
    };
    builders.par_iter().map(|b| b()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn custom_rows_keep_order() {
        let rows = summary_table(&["dihedral:5".to_string(), "cyclic:4".to_string()]).unwrap();
        assert_eq!(rows[0].computed, "2");
        assert_eq!(rows[1].instance, "cyclic:4");
        assert_eq!(rows[1].computed, "1");
    }
}
