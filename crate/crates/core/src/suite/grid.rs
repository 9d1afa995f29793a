use std::fmt;

use super::SuiteError;

/// `key=value` pairs in the order given.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Grid {
    entries: Vec<(String, String)>,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Grid, SuiteError> {
        let mut grid = Grid::default();
        for token in text
            .split(|c: char| c.is_whitespace() || c == ';')
            .filter(|t| !t.is_empty())
        {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| SuiteError::grid(token, "expected key=value"))?;
            if key.is_empty() || value.is_empty() {
                return Err(SuiteError::grid(key, "empty key or value"));
            }
            if grid.get(key).is_some() {
                return Err(SuiteError::grid(key, "given more than once"));
            }
            grid.entries.push((key.to_string(), value.to_string()));
        }
        Ok(grid)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    /// A copy with `key` set to `value`, replacing any earlier value.
    pub fn with(&self, key: &str, value: impl Into<String>) -> Grid {
        let mut out = self.clone();
        let value = value.into();
        match out.entries.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => out.entries.push((key.to_string(), value)),
        }
        out
    }

    /// Sets `key` only when it is absent.
    pub fn or_insert(&self, key: &str, value: impl Into<String>) -> Grid {
        if self.get(key).is_some() {
            self.clone()
        } else {
            self.with(key, value)
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

pub(crate) fn split_items(value: &str) -> Vec<String> {
    value
        .split('|')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

pub(crate) fn parse_integers(key: &str, value: &str) -> Result<Vec<i64>, SuiteError> {
    let number = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| SuiteError::grid(key, format!("{s:?} is not an integer")))
    };
    let mut out = Vec::new();
    for item in split_items(value) {
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (number(lo)?, number(hi)?);
                if lo > hi {
                    return Err(SuiteError::grid(key, format!("empty range {item}")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(number(&item)?),
        }
    }
    if out.is_empty() {
        return Err(SuiteError::grid(key, "no values"));
    }
    Ok(out)
}
