//! Test-only oracles and generators, independent of the library internals.
#![allow(dead_code)]

use ngdc::{GeoPoint, LanguageEntry, Registry, SentencePair};
use rand::Rng;

/// Direct evaluation of the coefficient, straight from the definition.
pub fn delta_oracle(d_km: f64, s_m: f64, c: f64, d_max: f64, penalty: bool) -> f64 {
    if penalty && d_km >= d_max {
        return 1.0;
    }
    let z = c * (d_km / 1000.0) / ((1.0 - c) * s_m);
    z.exp() / (1.0 + z.exp())
}

fn ngrams(tokens: &[String], n: usize) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    if tokens.len() < n {
        return out;
    }
    for start in 0..=tokens.len() - n {
        out.push(tokens[start..start + n].to_vec());
    }
    out
}

fn occurrences(haystack: &[Vec<String>], needle: &[String]) -> u64 {
    haystack.iter().filter(|g| g.as_slice() == needle).count() as u64
}

/// Clipped n-gram counts by exhaustive enumeration: (matches, totals) per order.
pub fn brute_counts(pairs: &[SentencePair], max_n: usize) -> (Vec<u64>, Vec<u64>) {
    let mut matches = vec![0; max_n];
    let mut totals = vec![0; max_n];
    for pair in pairs {
        for n in 1..=max_n {
            let hyp = ngrams(&pair.hypothesis, n);
            let refs: Vec<_> = pair.references.iter().map(|r| ngrams(r, n)).collect();
            let mut seen: Vec<Vec<String>> = Vec::new();
            for gram in &hyp {
                if seen.contains(gram) {
                    continue;
                }
                seen.push(gram.clone());
                let in_hyp = occurrences(&hyp, gram);
                let best_ref = refs.iter().map(|r| occurrences(r, gram)).max().unwrap_or(0);
                matches[n - 1] += in_hyp.min(best_ref);
            }
            totals[n - 1] += hyp.len() as u64;
        }
    }
    (matches, totals)
}

/// Corpus BLEU (0–100) from brute-force counts; `add_one` smooths orders ≥ 2.
pub fn bleu_oracle(pairs: &[SentencePair], max_n: usize, add_one: bool) -> f64 {
    let (matches, totals) = brute_counts(pairs, max_n);
    let mut hyp_len = 0usize;
    let mut ref_len = 0usize;
    for pair in pairs {
        let h = pair.hypothesis.len();
        let mut best = pair.references[0].len();
        for r in &pair.references {
            let r = r.len();
            let closer = (r as i64 - h as i64).abs() < (best as i64 - h as i64).abs();
            let tie_shorter = (r as i64 - h as i64).abs() == (best as i64 - h as i64).abs() && r < best;
            if closer || tie_shorter {
                best = r;
            }
        }
        hyp_len += h;
        ref_len += best;
    }
    let mut log_sum = 0.0;
    for n in 0..max_n {
        let (m, t) = if add_one && n > 0 {
            (matches[n] + 1, totals[n] + 1)
        } else {
            (matches[n], totals[n])
        };
        if m == 0 || t == 0 {
            return 0.0;
        }
        log_sum += (m as f64 / t as f64).ln();
    }
    let bp = if hyp_len >= ref_len {
        1.0
    } else {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    };
    100.0 * bp * (log_sum / max_n as f64).exp()
}

pub fn random_sentence<R: Rng>(rng: &mut R, vocab: usize, max_len: usize) -> Vec<String> {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| format!("w{}", rng.random_range(0..vocab)))
        .collect()
}

/// ≤ 5 sentences of ≤ 10 tokens, 1–3 references each, small vocabulary so
/// higher-order n-grams actually match.
pub fn random_corpus<R: Rng>(rng: &mut R) -> Vec<SentencePair> {
    let sentences = rng.random_range(1..=5);
    (0..sentences)
        .map(|_| {
            let hyp = random_sentence(rng, 4, 10);
            let n_refs = rng.random_range(1..=3);
            let refs = (0..n_refs).map(|_| random_sentence(rng, 4, 10)).collect();
            SentencePair::new(hyp, refs).unwrap()
        })
        .collect()
}

pub fn random_point<R: Rng>(rng: &mut R) -> GeoPoint {
    GeoPoint::new(rng.random_range(-90.0..=90.0), rng.random_range(-180.0..=180.0)).unwrap()
}

fn maybe<R: Rng>(rng: &mut R, range: std::ops::Range<f64>) -> Option<f64> {
    let v = rng.random_range(range);
    rng.random_bool(0.7).then_some(v)
}

pub fn random_registry<R: Rng>(rng: &mut R) -> Registry {
    let n = rng.random_range(0..12);
    let mut entries = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    while entries.len() < n {
        let code: String = (0..rng.random_range(2..=5))
            .map(|_| (b'a' + rng.random_range(0..26u8)) as char)
            .collect();
        if !used.insert(code.clone()) {
            continue;
        }
        let mut e = LanguageEntry::new(code.clone(), format!("Lang {code} é"));
        e.family_path = (0..rng.random_range(0..4))
            .map(|i| format!("Family {i}-{}", rng.random_range(0..100)))
            .collect();
        if rng.random_bool(0.5) {
            e.centroid = Some(random_point(rng));
        }
        e.corpus_size_m = maybe(rng, 1e-3..5000.0);
        e.published_gd_km = maybe(rng, 0.0..20000.0);
        e.bleu_val = maybe(rng, 0.0..100.0);
        e.bleu_test = maybe(rng, 0.0..100.0);
        entries.push(e);
    }
    let target = if !entries.is_empty() && rng.random_bool(0.6) {
        Some(entries[rng.random_range(0..entries.len())].code.clone())
    } else {
        None
    };
    Registry::new(entries, target).unwrap()
}
