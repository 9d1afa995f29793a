//! Cayley-table text format.
//!
//! ```text
//! # comment
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! label 1 g
//! ```
//!
//! Line 1 is the order `n`, the next `n` lines hold row `i` of the table
//! (entry `j` is the index of `i * j`), and optional trailing lines
//! `label <index> <string>` name elements. `#` starts a comment on any
//! line except a label line, whose string runs to the end of the line.

use std::fmt::Write as _;

use super::{FiniteGroup, GroupError, Limits};

fn parse_err(line: usize, message: impl Into<String>) -> GroupError {
    GroupError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses and validates a Cayley table. Identity and inverses are inferred.
pub fn parse_cayley_table(
    name: &str,
    text: &str,
    limits: &Limits,
) -> Result<FiniteGroup, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let strip = |l: &str| -> String { l.split('#').next().unwrap_or("").trim().to_string() };

    let (line_no, first) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing order line"))?;
    let order: usize = strip(first).parse().map_err(|_| {
        parse_err(
            line_no,
            format!("expected the group order, found {first:?}"),
        )
    })?;
    if order == 0 {
        return Err(GroupError::ZeroOrder);
    }
    if order > limits.order_cap {
        return Err(GroupError::OrderCap {
            order,
            cap: limits.order_cap,
        });
    }

    let mut mul = Vec::with_capacity(order * order);
    for row in 0..order {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_err(line_no + row + 1, format!("missing table row {row}")))?;
        let body = strip(line);
        let mut count = 0;
        for (col, tok) in body.split_whitespace().enumerate() {
            let v: usize = tok.parse().map_err(|_| {
                parse_err(
                    line_no,
                    format!("row {row}, column {col}: {tok:?} is not an index"),
                )
            })?;
            if v >= order {
                return Err(GroupError::EntryOutOfRange { row, col, value: v });
            }
            if col >= order {
                return Err(parse_err(
                    line_no,
                    format!("row {row} has more than {order} entries"),
                ));
            }
            mul.push(v as u32);
            count += 1;
        }
        if count != order {
            return Err(parse_err(
                line_no,
                format!("row {row} has {count} entries, expected {order}"),
            ));
        }
    }

    let mut labels: Vec<Option<String>> = vec![None; order];
    for (line_no, line) in lines {
        let rest = line
            .trim_start()
            .strip_prefix("label")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| parse_err(line_no, "expected `label <index> <string>`"))?
            .trim_start();
        let (idx, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let idx: usize = idx
            .parse()
            .map_err(|_| parse_err(line_no, format!("{idx:?} is not an element index")))?;
        if idx >= order {
            return Err(parse_err(
                line_no,
                format!("label index {idx} out of range"),
            ));
        }
        let text = text.trim();
        if text.is_empty() {
            return Err(parse_err(line_no, "empty label"));
        }
        if labels[idx].is_some() {
            return Err(parse_err(line_no, format!("element {idx} labelled twice")));
        }
        labels[idx] = Some(text.to_string());
    }

    FiniteGroup::from_table(name, order, mul, labels, None, limits)
}

/// Writes the canonical form read by [`parse_cayley_table`].
pub fn write_cayley_table(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = String::new();
    let _ = writeln!(out, "{n}");
    for row in g.table().chunks(n) {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    for x in 0..n {
        if let Some(l) = g.raw_label(x) {
            let _ = writeln!(out, "label {x} {l}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_classes, dihedral, symmetric};

    fn parse(text: &str) -> Result<FiniteGroup, GroupError> {
        parse_cayley_table("t", text, &Limits::default())
    }

    #[test]
    fn trivial_table() {
        let g = parse("1\n0\n").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn s3_table_round_trip() {
        let s3 = symmetric(3).unwrap();
        let text = write_cayley_table(&s3);
        let g = parse(&text).unwrap();
        assert_eq!(conjugacy_classes(&g).len(), 3);
        assert_eq!(write_cayley_table(&g), text);
        assert_eq!(g.label(1), s3.label(1));
    }

    #[test]
    fn identity_need_not_be_zero() {
        // Z_2 with element 1 as identity.
        let g = parse("2\n1 0\n0 1\n").unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn comments_are_ignored() {
        let g =
            parse("# cyclic 2\n2 # order\n0 1\n\n1 0 # second row\nlabel 1 g # not a comment\n")
                .unwrap();
        assert_eq!(g.label(1), "g # not a comment");
        assert_eq!(
            write_cayley_table(&g),
            "2\n0 1\n1 0\nlabel 1 g # not a comment\n"
        );
    }

    #[test]
    fn repeated_row_entry_is_not_latin() {
        let err = parse("4\n0 1 2 3\n1 1 3 2\n2 3 0 1\n3 2 1 0\n").unwrap_err();
        assert!(matches!(
            err,
            GroupError::NotLatin {
                row: 1,
                col: 1,
                value: 1,
                axis: "row"
            }
        ));
    }

    #[test]
    fn missing_identity() {
        // x * y = -x - y mod 3 is a Latin square with no identity row.
        let err = parse("3\n0 2 1\n2 1 0\n1 0 2\n").unwrap_err();
        assert_eq!(err, GroupError::NoIdentity);
    }

    #[test]
    fn non_associative_latin_square() {
        // A loop of order 5 that is not a group.
        let text = "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        assert!(matches!(
            parse(text).unwrap_err(),
            GroupError::NotAssociative { .. }
        ));
    }

    #[test]
    fn parse_errors_carry_locations() {
        match parse("2\n0 1\n1 x\n").unwrap_err() {
            GroupError::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("column 1"), "{message}");
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse("2\n0 1\n").unwrap_err(),
            GroupError::Parse { line: 3, .. }
        ));
        assert!(matches!(
            parse("2\n0 1\n1 0 1\n").unwrap_err(),
            GroupError::Parse { line: 3, .. }
        ));
        assert!(matches!(
            parse("2\n0 1\n1 5\n").unwrap_err(),
            GroupError::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 5
            }
        ));
        assert!(matches!(
            parse("abc\n").unwrap_err(),
            GroupError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse("2\n0 1\n1 0\nlabel 2 x\n").unwrap_err(),
            GroupError::Parse { line: 4, .. }
        ));
        assert!(matches!(
            parse("2\n0 1\n1 0\nnonsense\n").unwrap_err(),
            GroupError::Parse { line: 4, .. }
        ));
    }

    #[test]
    fn dihedral_round_trip_is_bit_identical() {
        let text = write_cayley_table(&dihedral(6).unwrap());
        assert_eq!(write_cayley_table(&parse(&text).unwrap()), text);
    }
}
