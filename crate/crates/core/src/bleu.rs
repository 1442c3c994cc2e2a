//! Corpus-level BLEU on a 0–100 scale.
//!
//! Clipped n-gram matches and hypothesis n-gram totals are summed over the
//! whole corpus before the precisions are formed. The effective reference
//! length of a sentence is the reference length closest to the hypothesis
//! length, preferring the shorter on ties.

use std::collections::HashMap;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentencePair {
    pub hypothesis: Vec<String>,
    pub references: Vec<Vec<String>>,
}

impl SentencePair {
    pub fn new(hypothesis: Vec<String>, references: Vec<Vec<String>>) -> Result<Self> {
        if references.is_empty() {
            return Err(Error::Domain("a sentence pair needs at least one reference".into()));
        }
        let empty_token = hypothesis
            .iter()
            .chain(references.iter().flatten())
            .any(|t| t.is_empty());
        if empty_token {
            return Err(Error::Domain("tokens must be nonempty".into()));
        }
        Ok(SentencePair {
            hypothesis,
            references,
        })
    }

    /// Builds a pair from whitespace-separated, already tokenized strings.
    pub fn from_whitespace(hypothesis: &str, references: &[&str]) -> Result<Self> {
        let split = |s: &str| s.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        SentencePair::new(split(hypothesis), references.iter().map(|r| split(r)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    #[default]
    None,
    /// Adds one to the match and total counts of every order above unigrams.
    AddOne,
}

impl FromStr for Smoothing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "none" => Ok(Smoothing::None),
            "add_one" | "addone" => Ok(Smoothing::AddOne),
            other => Err(Error::Domain(format!("unknown smoothing `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BleuReport {
    /// Precision per order 1..=max_n, after smoothing.
    pub precisions: Vec<f64>,
    /// Clipped matches per order, before smoothing.
    pub matches: Vec<u64>,
    /// Hypothesis n-gram counts per order, before smoothing.
    pub totals: Vec<u64>,
    pub brevity_penalty: f64,
    pub score: f64,
    pub hyp_length: u64,
    pub ref_length: u64,
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], u64> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

fn closest_ref_length(hyp_len: usize, refs: &[Vec<String>]) -> usize {
    refs.iter()
        .map(Vec::len)
        .min_by_key(|&r| (r.abs_diff(hyp_len), r))
        .unwrap_or(0)
}

pub fn corpus_bleu(pairs: &[SentencePair], max_n: usize, smoothing: Smoothing) -> Result<BleuReport> {
    if pairs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if max_n == 0 {
        return Err(Error::Domain("max_n must be at least 1".into()));
    }

    let mut matches = vec![0u64; max_n];
    let mut totals = vec![0u64; max_n];
    let mut hyp_length = 0u64;
    let mut ref_length = 0u64;

    for pair in pairs {
        if pair.references.is_empty() {
            return Err(Error::Domain("a sentence pair needs at least one reference".into()));
        }
        hyp_length += pair.hypothesis.len() as u64;
        ref_length += closest_ref_length(pair.hypothesis.len(), &pair.references) as u64;

        for n in 1..=max_n {
            let hyp = ngram_counts(&pair.hypothesis, n);
            if hyp.is_empty() {
                continue;
            }
            let mut max_ref: HashMap<&[String], u64> = HashMap::new();
            for r in &pair.references {
                for (gram, count) in ngram_counts(r, n) {
                    let slot = max_ref.entry(gram).or_insert(0);
                    *slot = (*slot).max(count);
                }
            }
            for (gram, count) in hyp {
                totals[n - 1] += count;
                matches[n - 1] += count.min(max_ref.get(gram).copied().unwrap_or(0));
            }
        }
    }

    let precisions: Vec<f64> = (0..max_n)
        .map(|i| {
            let (m, t) = match smoothing {
                Smoothing::AddOne if i > 0 => (matches[i] + 1, totals[i] + 1),
                _ => (matches[i], totals[i]),
            };
            if t == 0 {
                0.0
            } else {
                m as f64 / t as f64
            }
        })
        .collect();

    let brevity_penalty = if hyp_length == 0 {
        0.0
    } else if hyp_length >= ref_length {
        1.0
    } else {
        (1.0 - ref_length as f64 / hyp_length as f64).exp()
    };

    let score = if precisions.contains(&0.0) {
        0.0
    } else {
        let log_mean = precisions.iter().map(|p| p.ln()).sum::<f64>() / max_n as f64;
        100.0 * brevity_penalty * log_mean.exp()
    };

    Ok(BleuReport {
        precisions,
        matches,
        totals,
        brevity_penalty,
        score,
        hyp_length,
        ref_length,
    })
}

/// Lowercases, splits on whitespace and emits every non-alphanumeric
/// character as its own token.
pub fn tokenize_basic(line: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    for ch in line.chars() {
        if ch.is_alphanumeric() {
            word.extend(ch.to_lowercase());
            continue;
        }
        if !word.is_empty() {
            tokens.push(std::mem::take(&mut word));
        }
        if !ch.is_whitespace() {
            tokens.push(ch.to_lowercase().collect());
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }
    tokens
}
