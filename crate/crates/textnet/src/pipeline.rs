//! The five pipeline commands. Parallelism is per (book, window) job;
//! results are collected in manifest order, so outputs are identical for
//! any worker count.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use textnet_core::features::{book_variability, feature_vector, FeatureVector, ATTRIBUTE_NAMES};
use textnet_core::measures::{measure_network, stream_intermittencies};
use textnet_core::ml::{
    cross_validate, lowest_sufficient_window, pca_project, ClassifierConfig, ClassifierKind,
    CvReport, LabeledDataset,
};
use textnet_core::network::AdjacencyNetwork;
use textnet_core::sampling::{Subtext, WindowSpec};
use textnet_core::stats;

use crate::config::RunConfig;
use crate::corpus::{self, PipelineInputs, TokenStream};
use crate::manifest::{load_manifest, Manifest};
use crate::reports::{self, FeatureRow, MeasureDumpRow, VariabilityRow};
use crate::{PipelineError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Ingest,
    Measure,
    Variability,
    Classify,
    Report,
}

pub fn run(config: &RunConfig, command: Command) -> Result<()> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if config.threads > 0 {
        builder = builder.num_threads(config.threads);
    }
    let pool = builder
        .build()
        .map_err(|e| PipelineError::Config(format!("thread pool: {e}")))?;
    pool.install(|| match command {
        Command::Ingest => run_ingest(config),
        Command::Measure => run_measure(config),
        Command::Variability => run_variability(config),
        Command::Classify => run_classify(config),
        Command::Report => run_report(config),
    })
}

fn load_corpus(config: &RunConfig) -> Result<(Manifest, PipelineInputs)> {
    let manifest = load_manifest(&config.manifest)?;
    let inputs = PipelineInputs::load(
        &config.stoplist,
        config.lemmas.as_deref(),
        config.count_raw_tokens,
    )?;
    Ok((manifest, inputs))
}

fn cache_dir(config: &RunConfig) -> PathBuf {
    config.out.join("cache")
}

fn run_ingest(config: &RunConfig) -> Result<()> {
    let (manifest, inputs) = load_corpus(config)?;
    let dir = cache_dir(config);
    let entries: Vec<(String, usize)> = manifest
        .entries
        .par_iter()
        .map(|entry| -> Result<(String, usize)> {
            let stream = corpus::build_stream(entry, &inputs)?;
            let name = corpus::cache_file_name(entry, &inputs)?;
            corpus::write_cache(&dir, &name, &stream)?;
            Ok((name, stream.tokens.len()))
        })
        .collect::<Result<_>>()?;

    let index_path = dir.join("index.csv");
    let mut file = fs::File::create(&index_path).map_err(|e| PipelineError::io(&index_path, e))?;
    use std::io::Write;
    writeln!(file, "# config_hash={}", config.config_hash())
        .map_err(|e| PipelineError::io(&index_path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["book_id", "author", "title", "year", "tokens", "cache_file"])
        .map_err(|e| PipelineError::Csv { path: index_path.clone(), source: e })?;
    for (entry, (name, count)) in manifest.entries.iter().zip(&entries) {
        w.write_record([
            entry.book_id.clone(),
            entry.author.clone(),
            entry.title.clone(),
            entry.year.to_string(),
            count.to_string(),
            name.clone(),
        ])
        .map_err(|e| PipelineError::Csv { path: index_path.clone(), source: e })?;
    }
    w.flush().map_err(|e| PipelineError::io(&index_path, e))?;
    log::info!("ingested {} books into {}", entries.len(), dir.display());
    Ok(())
}

fn load_streams(config: &RunConfig) -> Result<(Manifest, PipelineInputs, Vec<TokenStream>)> {
    let (manifest, inputs) = load_corpus(config)?;
    let dir = cache_dir(config);
    let streams: Vec<TokenStream> = manifest
        .entries
        .par_iter()
        .map(|entry| corpus::stream_for(entry, &inputs, &dir))
        .collect::<Result<_>>()?;
    Ok((manifest, inputs, streams))
}

struct SubtextOutcome {
    row: Option<FeatureRow>,
    dump: Option<(AdjacencyNetwork, Vec<MeasureDumpRow>)>,
}

fn measure_subtext(
    stream: &TokenStream,
    subtext: &Subtext,
    config: &RunConfig,
    want_dump: bool,
) -> Result<SubtextOutcome> {
    let book_id = &stream.entry.book_id;
    if subtext.tokens.len() < 2 {
        log::warn!("{book_id} window {} subtext {}: fewer than 2 tokens; skipped", subtext.window, subtext.index);
        return Ok(SubtextOutcome { row: None, dump: None });
    }
    let net = AdjacencyNetwork::from_tokens(&subtext.tokens)?;
    let measurements = measure_network(&net);
    let intermittencies =
        stream_intermittencies(&subtext.tokens, config.f_min, config.gap_convention);

    let row = match feature_vector(&measurements, &intermittencies) {
        Ok(fv) if fv.is_finite() => Some(FeatureRow {
            book_id: book_id.clone(),
            author: stream.entry.author.clone(),
            window: subtext.window,
            index: subtext.index,
            features: fv,
        }),
        Ok(_) => {
            log::warn!("{book_id} window {} subtext {}: non-finite attributes; rejected", subtext.window, subtext.index);
            None
        }
        Err(e) => {
            log::warn!("{book_id} window {} subtext {}: {e}; skipped", subtext.window, subtext.index);
            None
        }
    };

    let dump = if want_dump {
        let by_word: BTreeMap<&str, f64> =
            intermittencies.iter().map(|(w, wi)| (w.as_str(), wi.intermittency)).collect();
        let rows = net
            .node_words()
            .map(|(id, word)| MeasureDumpRow {
                word: word.to_string(),
                alpha2: measurements.accessibility2[id as usize],
                alpha3: measurements.accessibility3[id as usize],
                kn: measurements.avg_neighbor_degree[id as usize],
                betweenness: measurements.betweenness[id as usize],
                clustering: measurements.clustering[id as usize],
                path_length: measurements.avg_path_length[id as usize],
                intermittency: by_word.get(word).copied(),
            })
            .collect();
        Some((net, rows))
    } else {
        None
    };

    Ok(SubtextOutcome { row, dump })
}

fn run_measure(config: &RunConfig) -> Result<()> {
    let (_, inputs, streams) = load_streams(config)?;
    let hash = config.config_hash();

    for &spec in &config.windows {
        let per_book: Vec<Vec<FeatureRow>> = streams
            .par_iter()
            .map(|stream| -> Result<Vec<FeatureRow>> {
                let subtexts = corpus::cut_subtexts(stream, spec, &inputs)?;
                let mut rows = Vec::new();
                for subtext in &subtexts {
                    let outcome = measure_subtext(stream, subtext, config, config.dump)?;
                    if let Some((net, dump_rows)) = outcome.dump {
                        write_dumps(config, stream, subtext, spec, &net, &dump_rows, &hash)?;
                    }
                    if let Some(row) = outcome.row {
                        rows.push(row);
                    }
                }
                Ok(rows)
            })
            .collect::<Result<_>>()?;

        let rows: Vec<FeatureRow> = per_book.into_iter().flatten().collect();
        let path = reports::features_file(&config.out, spec);
        reports::write_features(&path, &rows, &hash)?;
        log::info!("window {spec}: {} subtext vectors -> {}", rows.len(), path.display());
    }
    Ok(())
}

fn write_dumps(
    config: &RunConfig,
    stream: &TokenStream,
    subtext: &Subtext,
    spec: WindowSpec,
    net: &AdjacencyNetwork,
    dump_rows: &[MeasureDumpRow],
    hash: &str,
) -> Result<()> {
    let dir = config
        .out
        .join("dumps")
        .join(&stream.entry.book_id)
        .join(spec.label());
    fs::create_dir_all(&dir).map_err(|e| PipelineError::io(&dir, e))?;

    let tokens_path = dir.join(format!("{}.txt", subtext.index));
    let mut body = String::with_capacity(subtext.tokens.len() * 8);
    for token in &subtext.tokens {
        body.push_str(token);
        body.push('\n');
    }
    fs::write(&tokens_path, body).map_err(|e| PipelineError::io(&tokens_path, e))?;

    reports::write_measure_dump(&dir.join(format!("{}.csv", subtext.index)), dump_rows, hash)?;
    reports::write_network_dump(
        &dir.join(format!("{}.edges.tsv", subtext.index)),
        &dir.join(format!("{}.nodes.tsv", subtext.index)),
        net,
    )?;
    Ok(())
}

/// Feature vectors per book in manifest (file) order.
fn group_by_book(rows: &[FeatureRow]) -> Vec<(String, Vec<FeatureVector>)> {
    let mut order: Vec<String> = Vec::new();
    let mut grouped: BTreeMap<String, Vec<FeatureVector>> = BTreeMap::new();
    for row in rows {
        if !grouped.contains_key(&row.book_id) {
            order.push(row.book_id.clone());
        }
        grouped.entry(row.book_id.clone()).or_default().push(row.features);
    }
    order
        .into_iter()
        .map(|id| {
            let vectors = grouped.remove(&id).expect("id came from rows");
            (id, vectors)
        })
        .collect()
}

fn run_variability(config: &RunConfig) -> Result<()> {
    let hash = config.config_hash();
    let mut all_rows: Vec<VariabilityRow> = Vec::new();
    // measurement -> fixed-window plot rows
    let mut plots: BTreeMap<&'static str, Vec<(usize, f64, f64, f64)>> = BTreeMap::new();

    for &spec in &config.windows {
        let rows = reports::read_features(&reports::features_file(&config.out, spec))?;
        let books = group_by_book(&rows);
        let mut per_attr: Vec<Vec<f64>> = vec![Vec::new(); ATTRIBUTE_NAMES.len()];

        for (book_id, vectors) in &books {
            if vectors.len() < 2 {
                log::warn!("{book_id} at window {spec}: fewer than 2 subtexts; cell skipped");
                continue;
            }
            let nu = book_variability(vectors)?;
            for (k, name) in ATTRIBUTE_NAMES.iter().enumerate() {
                all_rows.push(VariabilityRow {
                    book_id: book_id.clone(),
                    window: spec,
                    measurement: name,
                    nu: nu[k],
                    n_subtexts: vectors.len(),
                });
                if let Some(value) = nu[k] {
                    per_attr[k].push(value);
                }
            }
        }

        if let WindowSpec::Fixed(w) = spec {
            for (k, name) in ATTRIBUTE_NAMES.iter().enumerate() {
                if per_attr[k].is_empty() {
                    log::warn!("no defined variability for {name} at W={w}");
                    continue;
                }
                let (q1, median, q3) = stats::quartiles(&per_attr[k]);
                plots.entry(name).or_default().push((w, median, q1, q3));
            }
        }
    }

    let dir = config.out.join("variability");
    reports::write_variability(&dir.join("variability.csv"), &all_rows, &hash)?;
    for (name, rows) in &plots {
        reports::write_plot_data(&dir.join(format!("plot_{name}.csv")), rows, &hash)?;
    }
    log::info!("variability report -> {}", dir.display());
    Ok(())
}

/// Builds the labeled dataset of one window's features file. Class ids are
/// sorted-author indices; groups are sorted-book indices.
pub fn dataset_from_rows(rows: &[FeatureRow]) -> Result<(LabeledDataset, Vec<String>)> {
    let mut authors: Vec<String> = rows.iter().map(|r| r.author.clone()).collect();
    authors.sort();
    authors.dedup();
    let mut books: Vec<String> = rows.iter().map(|r| r.book_id.clone()).collect();
    books.sort();
    books.dedup();

    let features: Vec<Vec<f64>> = rows.iter().map(|r| r.features.as_array().to_vec()).collect();
    let labels: Vec<usize> = rows
        .iter()
        .map(|r| authors.binary_search(&r.author).expect("author came from rows"))
        .collect();
    let groups: Vec<usize> = rows
        .iter()
        .map(|r| books.binary_search(&r.book_id).expect("book came from rows"))
        .collect();

    let ds = LabeledDataset::with_groups(features, labels, groups, authors.len())?;
    Ok((ds, authors))
}

fn classifier_config(config: &RunConfig, kind: ClassifierKind) -> ClassifierConfig {
    let mut cc = ClassifierConfig::new(kind);
    cc.knn_k = config.knn_k;
    cc.svm_c = config.svm_c;
    cc.min_leaf = config.min_leaf;
    cc.variance_floor = config.variance_floor;
    cc
}

fn run_classify(config: &RunConfig) -> Result<()> {
    let seed = config
        .seed
        .ok_or_else(|| PipelineError::Config("classify requires a seed (--seed N)".into()))?;
    let hash = config.config_hash();

    struct Cell {
        kind: ClassifierKind,
        spec: WindowSpec,
        report: CvReport,
        authors: Vec<String>,
        audit_accuracy: Option<f64>,
    }

    let window_rows: Vec<(WindowSpec, Vec<FeatureRow>)> = config
        .windows
        .iter()
        .map(|&spec| {
            let rows = reports::read_features(&reports::features_file(&config.out, spec))?;
            Ok((spec, rows))
        })
        .collect::<Result<_>>()?;

    let mut jobs: Vec<(ClassifierKind, WindowSpec)> = Vec::new();
    for kind in ClassifierKind::ALL {
        for &(spec, _) in &window_rows {
            jobs.push((kind, spec));
        }
    }

    let cells: Vec<Cell> = jobs
        .par_iter()
        .map(|&(kind, spec)| -> Result<Cell> {
            let rows = &window_rows.iter().find(|(s, _)| *s == spec).expect("job spec").1;
            let (ds, authors) = dataset_from_rows(rows)?;
            let cc = classifier_config(config, kind);
            let report = cross_validate(&ds, &cc, config.folds, seed, config.group_by_book)?;
            let audit_accuracy = if config.permutation_audit {
                let permuted = ds.permute_labels(seed);
                Some(cross_validate(&permuted, &cc, config.folds, seed, config.group_by_book)?.accuracy)
            } else {
                None
            };
            Ok(Cell { kind, spec, report, authors, audit_accuracy })
        })
        .collect::<Result<_>>()?;

    let dir = config.out.join("classify");
    let accuracy_of = |label: &str, spec: WindowSpec| -> f64 {
        cells
            .iter()
            .find(|c| c.kind.label() == label && c.spec == spec)
            .map(|c| c.report.accuracy)
            .expect("every job produced a cell")
    };

    let classifier_labels: Vec<&str> = ClassifierKind::ALL.iter().map(|k| k.label()).collect();
    let windows: Vec<WindowSpec> = window_rows.iter().map(|(s, _)| *s).collect();

    reports::write_summary(&dir.join("summary.csv"), &windows, &classifier_labels, accuracy_of, &hash)?;

    let fold_rows: Vec<(String, WindowSpec, Vec<f64>)> = cells
        .iter()
        .map(|c| (c.kind.label().to_string(), c.spec, c.report.fold_accuracies.clone()))
        .collect();
    reports::write_fold_accuracies(&dir.join("folds.csv"), &fold_rows, &hash)?;

    let pvalue_rows: Vec<(String, WindowSpec, usize, usize, f64)> = cells
        .iter()
        .map(|c| {
            (c.kind.label().to_string(), c.spec, c.report.correct, c.report.total, c.report.p_value)
        })
        .collect();
    reports::write_pvalues(&dir.join("pvalues.csv"), &pvalue_rows, &hash)?;

    for cell in &cells {
        let path = dir.join(format!("confusion_{}_{}.csv", cell.kind.label(), cell.spec.label()));
        reports::write_confusion(&path, &cell.authors, &cell.report, &hash)?;
    }

    if windows.contains(&WindowSpec::FULL) {
        let threshold_rows: Vec<(String, f64, f64, Option<WindowSpec>)> = ClassifierKind::ALL
            .iter()
            .map(|kind| {
                let afb = accuracy_of(kind.label(), WindowSpec::FULL);
                let series: Vec<(WindowSpec, f64)> = windows
                    .iter()
                    .map(|&spec| (spec, accuracy_of(kind.label(), spec)))
                    .collect();
                let crossing = lowest_sufficient_window(&series, afb, config.theta);
                (kind.label().to_string(), afb, config.theta, crossing)
            })
            .collect();
        reports::write_thresholds(&dir.join("thresholds.csv"), &threshold_rows, &hash)?;
    } else {
        log::warn!("no full window in the sweep; threshold analysis skipped (AFB undefined)");
    }

    if config.permutation_audit {
        let audit_rows: Vec<(String, WindowSpec, f64)> = cells
            .iter()
            .map(|c| {
                (c.kind.label().to_string(), c.spec, c.audit_accuracy.expect("audit enabled"))
            })
            .collect();
        reports::write_permutation_audit(&dir.join("permutation_audit.csv"), &audit_rows, &hash)?;
    }

    log::info!("classification report -> {}", dir.display());
    Ok(())
}

fn run_report(config: &RunConfig) -> Result<()> {
    let hash = config.config_hash();
    let dir = config.out.join("report");

    for &spec in &config.pca_windows {
        let rows = reports::read_features(&reports::features_file(&config.out, spec))?;
        if rows.len() < 3 {
            log::warn!("window {spec}: too few rows for a PCA projection; skipped");
            continue;
        }
        let data: Vec<Vec<f64>> = rows.iter().map(|r| r.features.as_array().to_vec()).collect();
        let projection = pca_project(&data, 2)?;
        let out_rows: Vec<(f64, f64, String, String, usize)> = rows
            .iter()
            .zip(&projection.points)
            .map(|(row, point)| {
                (point[0], point[1], row.author.clone(), row.book_id.clone(), row.window)
            })
            .collect();
        reports::write_pca(
            &dir.join(format!("pca_{}.csv", spec.label())),
            &out_rows,
            &projection.explained_variance_ratio,
            &hash,
        )?;
    }

    let summary_path = dir.join("run_summary.txt");
    fs::create_dir_all(&dir).map_err(|e| PipelineError::io(&dir, e))?;
    let mut body = String::new();
    body.push_str("textnet run summary\n");
    body.push_str(&format!("config_hash={hash}\n\n"));
    body.push_str(&config.semantic_text());
    body.push_str("\nartifacts:\n");
    for artifact in artifact_inventory(&config.out) {
        body.push_str(&format!("  {artifact}\n"));
    }
    fs::write(&summary_path, body).map_err(|e| PipelineError::io(&summary_path, e))?;
    log::info!("report -> {}", dir.display());
    Ok(())
}

// Inventory of report files relative to the output directory; the summary
// itself is excluded so that reruns list the same set.
fn artifact_inventory(out: &Path) -> Vec<String> {
    let mut found = Vec::new();
    let mut stack = vec![out.to_path_buf()];
    while let Some(dir) = stack.pop() {
        let Ok(entries) = fs::read_dir(&dir) else { continue };
        for entry in entries.flatten() {
            let path = entry.path();
            let relative = path.strip_prefix(out).unwrap_or(&path).to_string_lossy().to_string();
            if path.is_dir() {
                if path.file_name().is_some_and(|n| n == "dumps" || n == "cache") {
                    found.push(format!("{relative}/ (tree)"));
                } else {
                    stack.push(path);
                }
            } else if relative != "report/run_summary.txt"
                && path.extension().is_some_and(|e| e == "csv" || e == "txt")
            {
                found.push(relative);
            }
        }
    }
    found.sort();
    found
}
