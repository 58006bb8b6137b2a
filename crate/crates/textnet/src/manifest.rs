//! Corpus manifest: a CSV with header `author,title,year,path` naming one
//! book per row. Paths resolve relative to the manifest's directory.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use crate::{PipelineError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub author: String,
    pub title: String,
    pub year: i32,
    pub path: PathBuf,
    /// Stable identifier used in artifact files and dump paths.
    pub book_id: String,
}

#[derive(Debug, Clone)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    /// Authors in sorted order; index = class id everywhere downstream.
    pub fn authors(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.entries.iter().map(|e| e.author.as_str()).collect();
        set.into_iter().map(String::from).collect()
    }
}

fn slug(text: &str) -> String {
    let mut out = String::new();
    let mut last_dash = true;
    for ch in text.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
            last_dash = false;
        } else if !last_dash {
            out.push('-');
            last_dash = true;
        }
        if out.len() >= 24 {
            break;
        }
    }
    while out.ends_with('-') {
        out.pop();
    }
    if out.is_empty() {
        out.push('x');
    }
    out
}

/// Loads and validates the manifest: non-empty author/title, integer year,
/// resolvable paths, no duplicate (author, title) pairs, at least one row.
pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => PipelineError::Manifest {
                path: path.to_path_buf(),
                message: format!("cannot open manifest: {e}"),
            },
            _ => PipelineError::Csv { path: path.to_path_buf(), source: e },
        })?;

    {
        let headers = reader
            .headers()
            .map_err(|e| PipelineError::Csv { path: path.to_path_buf(), source: e })?;
        let expected = ["author", "title", "year", "path"];
        let got: Vec<&str> = headers.iter().collect();
        if got != expected {
            return Err(PipelineError::Manifest {
                path: path.to_path_buf(),
                message: format!("expected header author,title,year,path, got {}", got.join(",")),
            });
        }
    }

    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut entries = Vec::new();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();

    for (idx, record) in reader.records().enumerate() {
        let row = idx + 2; // 1-based, after the header line
        let record =
            record.map_err(|e| PipelineError::Csv { path: path.to_path_buf(), source: e })?;
        let field = |i: usize| record.get(i).unwrap_or("").to_string();
        let (author, title, year_text, rel_path) = (field(0), field(1), field(2), field(3));

        let fail = |message: String| PipelineError::ManifestRow {
            path: path.to_path_buf(),
            row,
            message,
        };
        if author.is_empty() {
            return Err(fail("missing author".into()));
        }
        if title.is_empty() {
            return Err(fail("missing title".into()));
        }
        let year: i32 = year_text
            .parse()
            .map_err(|_| fail(format!("year {year_text:?} is not an integer")))?;
        if rel_path.is_empty() {
            return Err(fail("missing path".into()));
        }
        let resolved = base.join(&rel_path);
        if !resolved.is_file() {
            return Err(fail(format!("source path {} not found", resolved.display())));
        }
        if !seen.insert((author.clone(), title.clone())) {
            return Err(fail(format!("duplicate entry for {author} / {title}")));
        }

        entries.push(ManifestEntry {
            book_id: format!("b{:02}-{}", idx, slug(&title)),
            author,
            title,
            year,
            path: resolved,
        });
    }

    if entries.is_empty() {
        return Err(PipelineError::Manifest {
            path: path.to_path_buf(),
            message: "no entries".into(),
        });
    }
    Ok(Manifest { entries })
}
