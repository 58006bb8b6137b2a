//! Run configuration: a flat `key = value` text file, overridable by CLI
//! flags, hashed so every artifact can name the exact configuration that
//! produced it.
//!
//! Recognized keys (all optional; defaults in parentheses):
//!
//! ```text
//! manifest        path to the corpus manifest CSV        (corpus/manifest.csv)
//! stoplist        stopword file                          (data/stopwords_en.txt)
//! lemmas          lemma dictionary, empty to disable     (data/lemmas_en.tsv)
//! windows         comma list of window sizes; numbers or
//!                 full/thirds/quarters                   (500,1000,1500,2000,2500,3000,quarters,thirds,full)
//! pca_windows     windows to project in `report`         (500,1000,1500)
//! f_min           intermittency frequency threshold      (2)
//! knn_k           kNN neighbor count                     (1)
//! svm_c           SVM box constraint                     (1)
//! min_leaf        decision-tree minimum leaf size        (2)
//! variance_floor  Bayes variance floor                   (1e-9)
//! folds           cross-validation folds                 (10)
//! seed            RNG seed; required for classify        (none)
//! theta           threshold-rule fraction of AFB         (0.85)
//! out             output directory                       (out)
//! gap_convention  difference | gap                       (difference)
//! count_raw_tokens  true | false                         (false)
//! group_by_book   leakage-free grouped folds             (false)
//! threads         worker threads, 0 = all cores          (0)
//! dump            per-subtext token/measure dumps        (false)
//! permutation_audit  chance-level audit in classify      (false)
//! ```
//!
//! The config hash covers the semantic fields only: `out`, `threads`,
//! `dump`, `pca_windows`, and `permutation_audit` change where results go
//! or which extras are emitted, never the computed values.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use textnet_core::measures::RecurrenceConvention;
use textnet_core::sampling::WindowSpec;

use crate::{PipelineError, Result};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub manifest: PathBuf,
    pub stoplist: PathBuf,
    pub lemmas: Option<PathBuf>,
    pub windows: Vec<WindowSpec>,
    pub pca_windows: Vec<WindowSpec>,
    pub f_min: usize,
    pub knn_k: usize,
    pub svm_c: f64,
    pub min_leaf: usize,
    pub variance_floor: f64,
    pub folds: usize,
    pub seed: Option<u64>,
    pub theta: f64,
    pub out: PathBuf,
    pub gap_convention: RecurrenceConvention,
    pub count_raw_tokens: bool,
    pub group_by_book: bool,
    pub threads: usize,
    pub dump: bool,
    pub permutation_audit: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            manifest: PathBuf::from("corpus/manifest.csv"),
            stoplist: PathBuf::from("data/stopwords_en.txt"),
            lemmas: Some(PathBuf::from("data/lemmas_en.tsv")),
            windows: vec![
                WindowSpec::Fixed(500),
                WindowSpec::Fixed(1000),
                WindowSpec::Fixed(1500),
                WindowSpec::Fixed(2000),
                WindowSpec::Fixed(2500),
                WindowSpec::Fixed(3000),
                WindowSpec::QUARTERS,
                WindowSpec::THIRDS,
                WindowSpec::FULL,
            ],
            pca_windows: vec![
                WindowSpec::Fixed(500),
                WindowSpec::Fixed(1000),
                WindowSpec::Fixed(1500),
            ],
            f_min: 2,
            knn_k: 1,
            svm_c: 1.0,
            min_leaf: 2,
            variance_floor: 1e-9,
            folds: 10,
            seed: None,
            theta: 0.85,
            out: PathBuf::from("out"),
            gap_convention: RecurrenceConvention::Difference,
            count_raw_tokens: false,
            group_by_book: false,
            threads: 0,
            dump: false,
            permutation_audit: false,
        }
    }
}

fn parse_windows(value: &str, key: &str) -> Result<Vec<WindowSpec>> {
    let mut windows = Vec::new();
    for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let spec = WindowSpec::parse(part)
            .ok_or_else(|| PipelineError::Config(format!("{key}: bad window {part:?}")))?;
        windows.push(spec);
    }
    if windows.is_empty() {
        return Err(PipelineError::Config(format!("{key}: no windows given")));
    }
    let mut sorted = windows.clone();
    sorted.sort();
    sorted.dedup();
    Ok(sorted)
}

fn parse_bool(value: &str, key: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(PipelineError::Config(format!("{key}: expected true/false, got {other:?}"))),
    }
}

impl RunConfig {
    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad_num =
            |key: &str, value: &str| PipelineError::Config(format!("{key}: bad number {value:?}"));
        match key {
            "manifest" => self.manifest = PathBuf::from(value),
            "stoplist" => self.stoplist = PathBuf::from(value),
            "lemmas" => {
                self.lemmas = if value.is_empty() { None } else { Some(PathBuf::from(value)) }
            }
            "windows" => self.windows = parse_windows(value, key)?,
            "pca_windows" => self.pca_windows = parse_windows(value, key)?,
            "f_min" => self.f_min = value.parse().map_err(|_| bad_num(key, value))?,
            "knn_k" => self.knn_k = value.parse().map_err(|_| bad_num(key, value))?,
            "svm_c" => self.svm_c = value.parse().map_err(|_| bad_num(key, value))?,
            "min_leaf" => self.min_leaf = value.parse().map_err(|_| bad_num(key, value))?,
            "variance_floor" => {
                self.variance_floor = value.parse().map_err(|_| bad_num(key, value))?
            }
            "folds" => self.folds = value.parse().map_err(|_| bad_num(key, value))?,
            "seed" => self.seed = Some(value.parse().map_err(|_| bad_num(key, value))?),
            "theta" => self.theta = value.parse().map_err(|_| bad_num(key, value))?,
            "out" => self.out = PathBuf::from(value),
            "gap_convention" => {
                self.gap_convention = RecurrenceConvention::parse(value).ok_or_else(|| {
                    PipelineError::Config(format!("{key}: expected difference or gap, got {value:?}"))
                })?
            }
            "count_raw_tokens" => self.count_raw_tokens = parse_bool(value, key)?,
            "group_by_book" => self.group_by_book = parse_bool(value, key)?,
            "threads" => self.threads = value.parse().map_err(|_| bad_num(key, value))?,
            "dump" => self.dump = parse_bool(value, key)?,
            "permutation_audit" => self.permutation_audit = parse_bool(value, key)?,
            other => {
                return Err(PipelineError::Config(format!("unknown config key {other:?}")));
            }
        }
        Ok(())
    }

    /// Parses a flat key/value config file over the defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
        let mut config = Self::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(PipelineError::Config(format!(
                    "{}:{}: expected key = value",
                    path.display(),
                    idx + 1
                )));
            };
            config.set(key.trim(), value.trim())?;
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.folds < 2 {
            return Err(PipelineError::Config("folds must be >= 2".into()));
        }
        if self.f_min == 0 {
            return Err(PipelineError::Config("f_min must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(PipelineError::Config("theta must be within [0, 1]".into()));
        }
        if self.svm_c <= 0.0 {
            return Err(PipelineError::Config("svm_c must be positive".into()));
        }
        if self.knn_k == 0 {
            return Err(PipelineError::Config("knn_k must be >= 1".into()));
        }
        Ok(())
    }

    fn windows_text(windows: &[WindowSpec]) -> String {
        windows.iter().map(WindowSpec::label).collect::<Vec<_>>().join(",")
    }

    /// Canonical text of the semantic fields, the hash input.
    pub fn semantic_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "manifest={}", self.manifest.display());
        let _ = writeln!(s, "stoplist={}", self.stoplist.display());
        let _ = writeln!(
            s,
            "lemmas={}",
            self.lemmas.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
        );
        let _ = writeln!(s, "windows={}", Self::windows_text(&self.windows));
        let _ = writeln!(s, "f_min={}", self.f_min);
        let _ = writeln!(s, "knn_k={}", self.knn_k);
        let _ = writeln!(s, "svm_c={}", self.svm_c);
        let _ = writeln!(s, "min_leaf={}", self.min_leaf);
        let _ = writeln!(s, "variance_floor={}", self.variance_floor);
        let _ = writeln!(s, "folds={}", self.folds);
        let _ = writeln!(s, "seed={}", self.seed.map(|v| v.to_string()).unwrap_or_default());
        let _ = writeln!(s, "theta={}", self.theta);
        let _ = writeln!(s, "gap_convention={}", self.gap_convention.label());
        let _ = writeln!(s, "count_raw_tokens={}", self.count_raw_tokens);
        let _ = writeln!(s, "group_by_book={}", self.group_by_book);
        s
    }

    pub fn config_hash(&self) -> String {
        let digest = Sha256::digest(self.semantic_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_sweep_ladder() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.windows.len(), 9);
        assert_eq!(cfg.windows[0], WindowSpec::Fixed(500));
        assert_eq!(cfg.windows[8], WindowSpec::FULL);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn file_parsing_and_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(
            &path,
            "# comment\nmanifest = m.csv\nwindows = 1000,500,full\nseed = 42\ntheta = 0.9\ndump = true\n",
        )
        .unwrap();
        let cfg = RunConfig::from_file(&path).unwrap();
        assert_eq!(cfg.manifest, PathBuf::from("m.csv"));
        assert_eq!(
            cfg.windows,
            vec![WindowSpec::Fixed(500), WindowSpec::Fixed(1000), WindowSpec::FULL]
        );
        assert_eq!(cfg.seed, Some(42));
        assert_eq!(cfg.theta, 0.9);
        assert!(cfg.dump);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        let mut cfg = RunConfig::default();
        assert!(cfg.set("no_such_key", "1").is_err());
        assert!(cfg.set("windows", "0").is_err());
        assert!(cfg.set("gap_convention", "circular").is_err());
        assert!(cfg.set("dump", "perhaps").is_err());
    }

    #[test]
    fn hash_ignores_output_location_and_threads() {
        let mut a = RunConfig::default();
        let mut b = RunConfig::default();
        b.out = PathBuf::from("elsewhere");
        b.threads = 7;
        b.dump = true;
        assert_eq!(a.config_hash(), b.config_hash());
        a.seed = Some(1);
        assert_ne!(a.config_hash(), b.config_hash());
    }
}
