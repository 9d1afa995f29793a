//! Group specifications such as `dihedral:6` or `product:cyclic:5,sym:3`.
//!
//! ```text
//! spec := cyclic:N | dihedral:N | sym:N | semidirect:P,M,K
//!       | product:spec,spec | file:PATH
//! ```
//!
//! A `file:` path runs to the next comma or the end of the input.

use std::path::Path;

use crate::group::{parse_cayley_table, FiniteGroup, GroupError, Limits, SemidirectParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Semidirect(SemidirectParams),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(String),
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("malformed group spec {spec:?} at column {column}: {message}")]
    Syntax {
        spec: String,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            spec: self.text.to_string(),
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SpecError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected {token:?}")))
        }
    }

    fn number(&mut self) -> Result<u64, SpecError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected a number"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.err("number too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn size(&mut self) -> Result<usize, SpecError> {
        let v = self.number()?;
        usize::try_from(v).map_err(|_| self.err("number too large"))
    }

    fn spec(&mut self) -> Result<GroupSpec, SpecError> {
        if self.eat("cyclic:") {
            Ok(GroupSpec::Cyclic(self.size()?))
        } else if self.eat("dihedral:") {
            Ok(GroupSpec::Dihedral(self.size()?))
        } else if self.eat("sym:") {
            Ok(GroupSpec::Symmetric(self.size()?))
        } else if self.eat("semidirect:") {
            let p = self.number()?;
            self.expect(",")?;
            let m = self.number()?;
            self.expect(",")?;
            let k = self.number()?;
            Ok(GroupSpec::Semidirect(SemidirectParams::new(p, m, k)))
        } else if self.eat("product:") {
            let left = self.spec()?;
            self.expect(",")?;
            let right = self.spec()?;
            Ok(GroupSpec::Product(Box::new(left), Box::new(right)))
        } else if self.eat("file:") {
            let len = self.rest().find(',').unwrap_or(self.rest().len());
            if len == 0 {
                return Err(self.err("empty file path"));
            }
            let path = self.rest()[..len].to_string();
            self.pos += len;
            Ok(GroupSpec::File(path))
        } else {
            Err(self.err("expected cyclic:, dihedral:, sym:, semidirect:, product: or file:"))
        }
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, SpecError> {
        let text = text.trim();
        let mut p = Parser { text, pos: 0 };
        let spec = p.spec()?;
        if p.pos != text.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(spec)
    }

    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup, SpecError> {
        Ok(match self {
            GroupSpec::Cyclic(n) => limits.cyclic(*n)?,
            GroupSpec::Dihedral(n) => limits.dihedral(*n)?,
            GroupSpec::Symmetric(n) => limits.symmetric(*n)?,
            GroupSpec::Semidirect(params) => limits.semidirect_cyclic(*params)?,
            GroupSpec::Product(a, b) => {
                limits.direct_product(&a.build(limits)?, &b.build(limits)?)?
            }
            GroupSpec::File(path) => {
                let text =
                    std::fs::read_to_string(Path::new(path)).map_err(|source| SpecError::Io {
                        path: path.clone(),
                        source,
                    })?;
                parse_cayley_table(&format!("file:{path}"), &text, limits)?
            }
        })
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Semidirect(p) => write!(f, "semidirect:{},{},{}", p.p, p.m, p.k),
            GroupSpec::Product(a, b) => write!(f, "product:{a},{b}"),
            GroupSpec::File(path) => write!(f, "file:{path}"),
        }
    }
}

/// Parses and builds with default limits.
pub fn build_group(text: &str) -> Result<FiniteGroup, SpecError> {
    GroupSpec::parse(text)?.build(&Limits::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_and_names() {
        for text in [
            "cyclic:5",
            "dihedral:4",
            "sym:4",
            "semidirect:7,3,2",
            "product:cyclic:5,dihedral:4",
            "product:product:cyclic:2,cyclic:3,semidirect:3,6,2",
        ] {
            let spec = GroupSpec::parse(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(spec.build(&Limits::default()).unwrap().name(), text);
        }
        assert_eq!(build_group("product:sym:3,cyclic:4").unwrap().order(), 24);
    }

    #[test]
    fn syntax_errors_are_located() {
        for (text, column) in [
            ("cyclic:", 8),
            ("dihedral:4x", 11),
            ("foo:3", 1),
            ("semidirect:7,3", 15),
        ] {
            match GroupSpec::parse(text).unwrap_err() {
                SpecError::Syntax { column: c, .. } => assert_eq!(c, column, "{text}"),
                e => panic!("{e:?}"),
            }
        }
        assert!(matches!(
            build_group("cyclic:0"),
            Err(SpecError::Group(GroupError::ZeroOrder))
        ));
        assert!(matches!(
            build_group("file:/nonexistent/table"),
            Err(SpecError::Io { .. })
        ));
    }
}
