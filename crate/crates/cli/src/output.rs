use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Where and how results go. JSON documents are also saved under `out`
/// when it is set.
pub struct Sink {
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Sink {
    pub fn json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut stdout = io::stdout().lock();
        serde_json::to_writer_pretty(&mut stdout, value)?;
        writeln!(stdout)?;
        Ok(())
    }

    pub fn text(&self, text: &str) -> Result<()> {
        let mut stdout = io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        if !text.ends_with('\n') {
            writeln!(stdout)?;
        }
        Ok(())
    }

    pub fn csv<H: AsRef<[u8]>>(&self, header: &[H], rows: &[Vec<String>]) -> Result<()> {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Prints in the chosen format; `text` and `csv` render the fallback
    /// views.
    pub fn emit<T: Serialize>(
        &self,
        name: &str,
        value: &T,
        text: impl FnOnce() -> String,
        csv: impl FnOnce() -> (Vec<String>, Vec<Vec<String>>),
    ) -> Result<()> {
        self.save(name, value)?;
        match self.format {
            Format::Json => self.json(value),
            Format::Text => self.text(&text()),
            Format::Csv => {
                let (header, rows) = csv();
                self.csv(&header, &rows)
            }
        }
    }

    /// Writes `value` as `<out>/<name>.json` when an output directory is set.
    pub fn save<T: Serialize>(&self, name: &str, value: &T) -> Result<Option<PathBuf>> {
        let Some(dir) = &self.out else {
            return Ok(None);
        };
        let path = dir.join(format!("{}.json", file_stem(name)));
        write_json(&path, value)?;
        Ok(Some(path))
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

/// A file name safe on common filesystems.
pub fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems_are_filesystem_safe() {
        assert_eq!(
            file_stem("product:sym:4,cyclic:5"),
            "product_sym_4_cyclic_5"
        );
        assert_eq!(
            file_stem("braid:5>semidirect:7,3,2"),
            "braid_5_semidirect_7_3_2"
        );
    }
}
