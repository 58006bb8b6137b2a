//! Report artifacts. Every file opens with a `# config_hash=...` comment
//! line naming the configuration that produced it; readers skip `#` lines.
//! All float formatting goes through `Display` (shortest round-trip), so
//! identical runs produce identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use textnet_core::features::{FeatureVector, ATTRIBUTE_NAMES};
use textnet_core::ml::CvReport;
use textnet_core::sampling::WindowSpec;

use crate::{PipelineError, Result};

/// One row of a features file: the provenance plus the 11 attributes.
#[derive(Debug, Clone)]
pub struct FeatureRow {
    pub book_id: String,
    pub author: String,
    pub window: usize,
    pub index: usize,
    pub features: FeatureVector,
}

fn open_with_hash(path: &Path, config_hash: &str) -> Result<csv::Writer<fs::File>> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| PipelineError::io(parent, e))?;
    }
    let mut file = fs::File::create(path).map_err(|e| PipelineError::io(path, e))?;
    writeln!(file, "# config_hash={config_hash}").map_err(|e| PipelineError::io(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> PipelineError + '_ {
    move |e| PipelineError::Csv { path: path.to_path_buf(), source: e }
}

pub fn features_file(out: &Path, spec: WindowSpec) -> PathBuf {
    out.join("features").join(format!("features_{}.csv", spec.label()))
}

pub fn write_features(path: &Path, rows: &[FeatureRow], config_hash: &str) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    let mut header = vec!["book_id", "author", "W", "index"];
    header.extend(ATTRIBUTE_NAMES);
    w.write_record(&header).map_err(csv_err(path))?;
    for row in rows {
        let mut record = vec![
            row.book_id.clone(),
            row.author.clone(),
            row.window.to_string(),
            row.index.to_string(),
        ];
        record.extend(row.features.as_array().iter().map(|v| v.to_string()));
        w.write_record(&record).map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

pub fn read_features(path: &Path) -> Result<Vec<FeatureRow>> {
    if !path.is_file() {
        return Err(PipelineError::Artifact {
            path: path.to_path_buf(),
            message: "features file missing; run `measure` first".into(),
        });
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err(path))?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err(path))?;
        let bad = |message: String| PipelineError::Artifact {
            path: path.to_path_buf(),
            message,
        };
        if record.len() != 4 + ATTRIBUTE_NAMES.len() {
            return Err(bad(format!("expected {} fields, got {}", 4 + ATTRIBUTE_NAMES.len(), record.len())));
        }
        let mut values = [0.0f64; 11];
        for (k, slot) in values.iter_mut().enumerate() {
            *slot = record[4 + k]
                .parse()
                .map_err(|_| bad(format!("bad float {:?}", &record[4 + k])))?;
        }
        rows.push(FeatureRow {
            book_id: record[0].to_string(),
            author: record[1].to_string(),
            window: record[2].parse().map_err(|_| bad(format!("bad W {:?}", &record[2])))?,
            index: record[3].parse().map_err(|_| bad(format!("bad index {:?}", &record[3])))?,
            features: FeatureVector::from_array(values),
        });
    }
    Ok(rows)
}

/// `book_id,W,measurement,nu,n_subtexts`; empty `nu` cell marks the flagged
/// undefined (zero-mean) case.
pub struct VariabilityRow {
    pub book_id: String,
    pub window: WindowSpec,
    pub measurement: &'static str,
    pub nu: Option<f64>,
    pub n_subtexts: usize,
}

pub fn write_variability(path: &Path, rows: &[VariabilityRow], config_hash: &str) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    w.write_record(["book_id", "W", "measurement", "nu", "n_subtexts"])
        .map_err(csv_err(path))?;
    for row in rows {
        w.write_record([
            row.book_id.clone(),
            row.window.label(),
            row.measurement.to_string(),
            row.nu.map(|v| v.to_string()).unwrap_or_default(),
            row.n_subtexts.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

/// Per-measurement plot file: `W,median_nu,q1,q3` over fixed windows.
pub fn write_plot_data(
    path: &Path,
    rows: &[(usize, f64, f64, f64)],
    config_hash: &str,
) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    w.write_record(["W", "median_nu", "q1", "q3"]).map_err(csv_err(path))?;
    for (window, median, q1, q3) in rows {
        w.write_record([
            window.to_string(),
            median.to_string(),
            q1.to_string(),
            q3.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

pub fn write_fold_accuracies(
    path: &Path,
    rows: &[(String, WindowSpec, Vec<f64>)],
    config_hash: &str,
) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    w.write_record(["classifier", "W", "fold", "accuracy"]).map_err(csv_err(path))?;
    for (classifier, spec, folds) in rows {
        for (fold, accuracy) in folds.iter().enumerate() {
            w.write_record([
                classifier.clone(),
                spec.label(),
                fold.to_string(),
                accuracy.to_string(),
            ])
            .map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

/// Table-shaped summary: one row per window, one accuracy column (percent,
/// 2 decimals) per classifier.
pub fn write_summary(
    path: &Path,
    windows: &[WindowSpec],
    classifiers: &[&str],
    accuracy: impl Fn(&str, WindowSpec) -> f64,
    config_hash: &str,
) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    let mut header = vec!["W".to_string()];
    header.extend(classifiers.iter().map(|c| c.to_string()));
    w.write_record(&header).map_err(csv_err(path))?;
    for &spec in windows {
        let mut record = vec![spec.label()];
        for c in classifiers {
            record.push(format!("{:.2}", accuracy(c, spec) * 100.0));
        }
        w.write_record(&record).map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

pub fn write_confusion(
    path: &Path,
    authors: &[String],
    report: &CvReport,
    config_hash: &str,
) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    let mut header = vec!["true_author".to_string()];
    header.extend(authors.iter().cloned());
    w.write_record(&header).map_err(csv_err(path))?;
    for (i, author) in authors.iter().enumerate() {
        let mut record = vec![author.clone()];
        record.extend(report.confusion[i].iter().map(|n| n.to_string()));
        w.write_record(&record).map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

pub fn write_pvalues(
    path: &Path,
    rows: &[(String, WindowSpec, usize, usize, f64)],
    config_hash: &str,
) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    w.write_record(["classifier", "W", "correct", "total", "p_value"]).map_err(csv_err(path))?;
    for (classifier, spec, correct, total, p) in rows {
        w.write_record([
            classifier.clone(),
            spec.label(),
            correct.to_string(),
            total.to_string(),
            p.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

/// `classifier,afb,theta,w_l`: the smallest window reaching theta * AFB.
pub fn write_thresholds(
    path: &Path,
    rows: &[(String, f64, f64, Option<WindowSpec>)],
    config_hash: &str,
) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    w.write_record(["classifier", "afb", "theta", "w_l"]).map_err(csv_err(path))?;
    for (classifier, afb, theta, w_l) in rows {
        w.write_record([
            classifier.clone(),
            afb.to_string(),
            theta.to_string(),
            w_l.map(|s| s.label()).unwrap_or_else(|| "none".into()),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

pub fn write_permutation_audit(
    path: &Path,
    rows: &[(String, WindowSpec, f64)],
    config_hash: &str,
) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    w.write_record(["classifier", "W", "accuracy"]).map_err(csv_err(path))?;
    for (classifier, spec, accuracy) in rows {
        w.write_record([classifier.clone(), spec.label(), accuracy.to_string()])
            .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

/// PCA points file with the explained-variance ratios on a second comment
/// line.
pub fn write_pca(
    path: &Path,
    rows: &[(f64, f64, String, String, usize)],
    explained: &[f64],
    config_hash: &str,
) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| PipelineError::io(parent, e))?;
    }
    let mut file = fs::File::create(path).map_err(|e| PipelineError::io(path, e))?;
    writeln!(file, "# config_hash={config_hash}").map_err(|e| PipelineError::io(path, e))?;
    let ratios: Vec<String> = explained.iter().map(|v| v.to_string()).collect();
    writeln!(file, "# explained_variance_ratio={}", ratios.join(" "))
        .map_err(|e| PipelineError::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["pc1", "pc2", "author", "book_id", "W"]).map_err(csv_err(path))?;
    for (pc1, pc2, author, book_id, window) in rows {
        w.write_record([
            pc1.to_string(),
            pc2.to_string(),
            author.clone(),
            book_id.clone(),
            window.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

/// Word-level measurement dump for one subtext: empty cells where a value
/// is undefined (no path to other nodes, or below the frequency floor).
pub struct MeasureDumpRow {
    pub word: String,
    pub alpha2: f64,
    pub alpha3: f64,
    pub kn: f64,
    pub betweenness: f64,
    pub clustering: f64,
    pub path_length: Option<f64>,
    pub intermittency: Option<f64>,
}

pub fn write_measure_dump(path: &Path, rows: &[MeasureDumpRow], config_hash: &str) -> Result<()> {
    let mut w = open_with_hash(path, config_hash)?;
    w.write_record(["word", "alpha2", "alpha3", "kn", "B", "C", "l", "I"])
        .map_err(csv_err(path))?;
    for row in rows {
        w.write_record([
            row.word.clone(),
            row.alpha2.to_string(),
            row.alpha3.to_string(),
            row.kn.to_string(),
            row.betweenness.to_string(),
            row.clustering.to_string(),
            row.path_length.map(|v| v.to_string()).unwrap_or_default(),
            row.intermittency.map(|v| v.to_string()).unwrap_or_default(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| PipelineError::io(path, e))?;
    Ok(())
}

/// Tab-separated edge list (`word_u<TAB>word_v<TAB>weight`) and node table
/// (`id<TAB>word`) for one subtext network.
pub fn write_network_dump(
    edges_path: &Path,
    nodes_path: &Path,
    net: &textnet_core::network::AdjacencyNetwork,
) -> Result<()> {
    let mut edges = String::new();
    for &(u, v, weight) in net.edges() {
        let wu = net.word(u).expect("edge endpoints are valid");
        let wv = net.word(v).expect("edge endpoints are valid");
        edges.push_str(&format!("{wu}\t{wv}\t{weight}\n"));
    }
    fs::write(edges_path, edges).map_err(|e| PipelineError::io(edges_path, e))?;

    let mut nodes = String::new();
    for (id, word) in net.node_words() {
        nodes.push_str(&format!("{id}\t{word}\n"));
    }
    fs::write(nodes_path, nodes).map_err(|e| PipelineError::io(nodes_path, e))?;
    Ok(())
}
