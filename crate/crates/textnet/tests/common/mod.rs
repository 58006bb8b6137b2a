//! Deterministic synthetic corpus generator for the integration tests.
//!
//! Books are produced by a seeded generative model with the statistical
//! structure the pipeline cares about: a Zipf-Mandelbrot unigram
//! distribution over a pseudo-word vocabulary, bursty topic segments
//! (words cluster in time, giving intermittency structure and small-window
//! noise), author-specific signature vocabulary, real English stopwords,
//! inflection handled by the stemmer, sentence casing and punctuation, and
//! Project-Gutenberg-style boilerplate markers. Styles differ per author
//! in ways that surface in network topology: vocabulary richness, Zipf
//! exponent, burst length, and mixing rates.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use textnet_core::rng::SplitMix64;

const SYLLABLES: [&str; 40] = [
    "ba", "be", "bi", "bo", "bu", "da", "de", "di", "do", "du", "ga", "ge", "gi", "go", "gu",
    "la", "le", "li", "lo", "lu", "ma", "me", "mi", "mo", "mu", "na", "ne", "ni", "no", "nu",
    "ra", "re", "ri", "ro", "ru", "ta", "te", "ti", "to", "tu",
];

const STOPWORDS: [&str; 30] = [
    "the", "of", "and", "a", "to", "in", "that", "it", "was", "he", "she", "his", "her", "with",
    "as", "for", "had", "is", "not", "be", "on", "at", "by", "but", "this", "from", "they",
    "were", "which", "all",
];

/// Pronounceable pseudo-word for a vocabulary id; 3 syllables keep every
/// word at 6 characters, clear of the stemmer's short-word guards.
pub fn word_for(id: usize) -> String {
    let mut out = String::new();
    let mut x = id;
    for _ in 0..3 {
        out.push_str(SYLLABLES[x % SYLLABLES.len()]);
        x /= SYLLABLES.len();
    }
    out
}

#[derive(Debug, Clone)]
pub struct AuthorStyle {
    /// Zipf-Mandelbrot exponent.
    pub zipf_s: f64,
    /// Zipf-Mandelbrot shift.
    pub zipf_q: f64,
    /// Active vocabulary size.
    pub vocab: usize,
    /// Mean content tokens per topic segment.
    pub topic_tokens: f64,
    /// Probability of drawing from the active topic pool.
    pub topic_mix: f64,
    /// Words per topic pool.
    pub topic_pool: usize,
    /// Probability of emitting an author signature word.
    pub signature_rate: f64,
    /// Fraction of raw tokens that are stopwords.
    pub stopword_rate: f64,
    /// Probability of pluralizing a content word.
    pub inflect_rate: f64,
    /// Mean sentence length in raw words.
    pub sentence_mean: f64,
}

fn zipf_cdf(style: &AuthorStyle) -> Vec<f64> {
    let mut cdf = Vec::with_capacity(style.vocab);
    let mut total = 0.0;
    for rank in 0..style.vocab {
        total += 1.0 / (rank as f64 + 1.0 + style.zipf_q).powf(style.zipf_s);
        cdf.push(total);
    }
    for v in &mut cdf {
        *v /= total;
    }
    cdf
}

fn sample_cdf(cdf: &[f64], u: f64) -> usize {
    cdf.partition_point(|&c| c < u).min(cdf.len() - 1)
}

/// Rank -> word id: authors share the vocabulary but rotate ids inside
/// small frequency blocks, so their preferred words differ while the
/// overall frequency profile stays comparable.
fn rank_to_word(rank: usize, author_idx: usize) -> usize {
    let block = rank / 8;
    let pos = rank % 8;
    block * 8 + (pos + author_idx * 3) % 8
}

pub struct BookSpec {
    pub author: String,
    pub author_idx: usize,
    pub title: String,
    pub year: i32,
    pub style: AuthorStyle,
    pub content_tokens: usize,
    pub seed: u64,
}

/// Generates the full text of one book, boilerplate included.
pub fn generate_book(spec: &BookSpec) -> String {
    let style = &spec.style;
    let mut rng = SplitMix64::new(spec.seed);
    let cdf = zipf_cdf(style);

    // Per-book topics drawn from the mid-frequency range.
    let n_topics = 30;
    let topics: Vec<Vec<usize>> = (0..n_topics)
        .map(|_| {
            (0..style.topic_pool)
                .map(|_| {
                    let rank = 40 + rng.next_below((style.vocab as u64 / 2).max(1)) as usize;
                    rank_to_word(rank.min(style.vocab - 1), spec.author_idx)
                })
                .collect()
        })
        .collect();
    let signature: Vec<usize> =
        (0..150).map(|k| 50_000 + spec.author_idx * 500 + k).collect();

    let mut body = String::with_capacity(spec.content_tokens * 9);
    let mut sentence: Vec<String> = Vec::new();
    let mut sentences_in_paragraph = 0usize;
    let mut content_emitted = 0usize;
    let mut topic: &[usize] = &topics[0];
    let mut topic_left = style.topic_tokens;

    let mut flush_sentence = |body: &mut String, sentence: &mut Vec<String>, para: &mut usize| {
        if sentence.is_empty() {
            return;
        }
        let mut text = sentence.join(" ");
        if let Some(first) = text.get_mut(0..1) {
            first.make_ascii_uppercase();
        }
        body.push_str(&text);
        body.push('.');
        *para += 1;
        if *para % 9 == 0 {
            body.push_str("\n\n");
        } else {
            body.push(' ');
        }
        sentence.clear();
    };

    let mut next_sentence_end = 1 + rng.next_below((style.sentence_mean * 2.0) as u64) as usize;
    let mut words_in_sentence = 0usize;

    while content_emitted < spec.content_tokens {
        // Sentence bookkeeping.
        if words_in_sentence >= next_sentence_end {
            flush_sentence(&mut body, &mut sentence, &mut sentences_in_paragraph);
            words_in_sentence = 0;
            next_sentence_end = 1 + rng.next_below((style.sentence_mean * 2.0) as u64) as usize;
        }

        if rng.next_f64() < style.stopword_rate {
            let r = rng.next_f64();
            let idx = ((r * r) * STOPWORDS.len() as f64) as usize;
            sentence.push(STOPWORDS[idx.min(STOPWORDS.len() - 1)].to_string());
            words_in_sentence += 1;
            continue;
        }

        // Topic segment switching.
        topic_left -= 1.0;
        if topic_left <= 0.0 || rng.next_f64() < 1.0 / style.topic_tokens {
            topic = &topics[rng.next_below(n_topics as u64) as usize];
            topic_left = style.topic_tokens * (0.5 + rng.next_f64());
        }

        let word_id = if rng.next_f64() < style.signature_rate {
            signature[rng.next_below(signature.len() as u64) as usize]
        } else if rng.next_f64() < style.topic_mix {
            topic[rng.next_below(topic.len() as u64) as usize]
        } else {
            let rank = sample_cdf(&cdf, rng.next_f64());
            rank_to_word(rank, spec.author_idx)
        };

        let mut word = word_for(word_id);
        if rng.next_f64() < style.inflect_rate {
            word.push('s');
        }
        sentence.push(word);
        words_in_sentence += 1;
        content_emitted += 1;
    }
    flush_sentence(&mut body, &mut sentence, &mut sentences_in_paragraph);

    let mut text = String::new();
    let _ = writeln!(text, "Title: {}", spec.title);
    let _ = writeln!(text, "Author: {}", spec.author);
    let _ = writeln!(text, "Release year: {}", spec.year);
    let _ = writeln!(text, "\nProduced by an automated corpus generator.\n");
    let _ = writeln!(text, "*** START OF THE TEXT {} ***", spec.title.to_uppercase());
    let _ = writeln!(text, "\n{body}\n");
    let _ = writeln!(text, "*** END OF THE TEXT {} ***", spec.title.to_uppercase());
    let _ = writeln!(text, "\nEnd-matter boilerplate that must never reach the tokenizer.");
    text
}

/// Writes books plus a manifest; returns the manifest path.
pub fn write_corpus(dir: &Path, specs: &[BookSpec]) -> PathBuf {
    let books = dir.join("books");
    fs::create_dir_all(&books).expect("create corpus dir");
    let mut manifest = String::from("author,title,year,path\n");
    for spec in specs {
        let file = format!("{}.txt", spec.title.to_lowercase().replace(' ', "_"));
        fs::write(books.join(&file), generate_book(spec)).expect("write book");
        let _ = writeln!(manifest, "{},{},{},books/{file}", spec.author, spec.title, spec.year);
    }
    let path = dir.join("manifest.csv");
    fs::write(&path, manifest).expect("write manifest");
    path
}

/// The four synthetic authors of the classification corpus. Styles are
/// close enough that short samples are noisy and far enough that long
/// samples separate.
pub fn author_styles() -> [AuthorStyle; 4] {
    [
        AuthorStyle {
            zipf_s: 1.05,
            zipf_q: 3.0,
            vocab: 8000,
            topic_tokens: 260.0,
            topic_mix: 0.34,
            topic_pool: 55,
            signature_rate: 0.030,
            stopword_rate: 0.44,
            inflect_rate: 0.22,
            sentence_mean: 14.0,
        },
        AuthorStyle {
            zipf_s: 1.00,
            zipf_q: 2.2,
            vocab: 6800,
            topic_tokens: 340.0,
            topic_mix: 0.40,
            topic_pool: 70,
            signature_rate: 0.026,
            stopword_rate: 0.47,
            inflect_rate: 0.26,
            sentence_mean: 19.0,
        },
        AuthorStyle {
            zipf_s: 1.11,
            zipf_q: 3.8,
            vocab: 9200,
            topic_tokens: 210.0,
            topic_mix: 0.30,
            topic_pool: 45,
            signature_rate: 0.034,
            stopword_rate: 0.42,
            inflect_rate: 0.18,
            sentence_mean: 12.0,
        },
        AuthorStyle {
            zipf_s: 0.96,
            zipf_q: 2.6,
            vocab: 7600,
            topic_tokens: 420.0,
            topic_mix: 0.44,
            topic_pool: 85,
            signature_rate: 0.024,
            stopword_rate: 0.49,
            inflect_rate: 0.30,
            sentence_mean: 22.0,
        },
    ]
}

/// 4 authors x 5 books for the authorship experiment.
pub fn classification_corpus(dir: &Path, master_seed: u64) -> PathBuf {
    let styles = author_styles();
    let authors = ["Ada Baker", "Ben Calder", "Cora Doyle", "Dan Ellis"];
    let mut specs = Vec::new();
    for (author_idx, author) in authors.iter().enumerate() {
        for book in 0..5 {
            specs.push(BookSpec {
                author: author.to_string(),
                author_idx,
                title: format!("{} Volume {}", author.split(' ').next().unwrap(), book + 1),
                year: 1880 + (author_idx * 9 + book * 3) as i32,
                style: styles[author_idx].clone(),
                content_tokens: 21_000 + book * 800 + author_idx * 300,
                seed: master_seed
                    .wrapping_mul(0x9e37)
                    .wrapping_add((author_idx * 101 + book) as u64),
            });
        }
    }
    write_corpus(dir, &specs)
}

/// A dozen single-style novels for the variability experiment.
pub fn variability_corpus(dir: &Path, master_seed: u64) -> PathBuf {
    let styles = author_styles();
    let mut specs = Vec::new();
    for book in 0..12 {
        let mut style = styles[book % 4].clone();
        // Mild per-book drift so the twelve books are not four clones.
        style.zipf_s += (book as f64 - 6.0) * 0.004;
        style.topic_tokens *= 1.0 + (book as f64 - 6.0) * 0.015;
        specs.push(BookSpec {
            author: format!("Novelist {}", book % 4),
            author_idx: book % 4,
            title: format!("Novel {}", book + 1),
            year: 1850 + book as i32,
            style,
            content_tokens: 45_000,
            seed: master_seed.wrapping_mul(0xABCD).wrapping_add(book as u64),
        });
    }
    write_corpus(dir, &specs)
}
