//! Candidate-language metadata and its TSV/JSON file formats.
//!
//! TSV layout (UTF-8, LF): an optional `#target=<code>` line naming the
//! fine-tuning target, any other `#` lines as comments, then a header row
//! and one row per language. Columns are
//! `code name family_path lat lon corpus_size_m published_gd_km bleu_val bleu_test`,
//! `family_path` is `;`-separated and an empty cell means "absent". Only
//! `code` and `name` are required when loading; the exporter always writes
//! every column in that order.
//!
//! JSON layout: `{"target": "zul", "languages": [{"code": ..., ...}]}` using
//! the same field names, with absent optionals omitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesy::GeoPoint;

pub const TSV_COLUMNS: [&str; 9] = [
    "code",
    "name",
    "family_path",
    "lat",
    "lon",
    "corpus_size_m",
    "published_gd_km",
    "bleu_val",
    "bleu_test",
];

const TARGET_PRAGMA: &str = "#target=";

#[derive(Debug, Clone, PartialEq)]
pub struct LanguageEntry {
    pub code: String,
    pub name: String,
    /// Outermost family first, e.g. Niger-Congo, Bantu, Nguni.
    pub family_path: Vec<String>,
    pub centroid: Option<GeoPoint>,
    /// Parallel corpus size in millions of sentences.
    pub corpus_size_m: Option<f64>,
    /// Distance to the registry's target language, used verbatim.
    pub published_gd_km: Option<f64>,
    pub bleu_val: Option<f64>,
    pub bleu_test: Option<f64>,
}

impl LanguageEntry {
    pub fn new(code: impl Into<String>, name: impl Into<String>) -> Self {
        LanguageEntry {
            code: code.into(),
            name: name.into(),
            family_path: Vec::new(),
            centroid: None,
            corpus_size_m: None,
            published_gd_km: None,
            bleu_val: None,
            bleu_test: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Validation(format!("`{}`: {msg}", self.code)));
        if self.code.is_empty() {
            return Err(Error::Validation("empty language code".into()));
        }
        if self.code.chars().any(|c| c.is_whitespace() || c == '#') {
            return bad("code must not contain whitespace or '#'".into());
        }
        if self.name.contains(['\t', '\n', '\r']) {
            return bad("name must not contain tabs or line breaks".into());
        }
        for label in &self.family_path {
            if label.is_empty() || label.contains([';', '\t', '\n', '\r']) {
                return bad(format!("invalid family label {label:?}"));
            }
        }
        if let Some(s) = self.corpus_size_m {
            if !(s.is_finite() && s > 0.0) {
                return bad(format!("corpus size must be positive, got {s}"));
            }
        }
        if let Some(d) = self.published_gd_km {
            if !(d.is_finite() && d >= 0.0) {
                return bad(format!("published distance must be non-negative, got {d}"));
            }
        }
        for (label, v) in [("bleu_val", self.bleu_val), ("bleu_test", self.bleu_test)] {
            if let Some(v) = v {
                if !(0.0..=100.0).contains(&v) {
                    return bad(format!("{label} must lie in [0, 100], got {v}"));
                }
            }
        }
        Ok(())
    }
}

/// An immutable set of languages keyed by code, iterated in code order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Registry {
    entries: BTreeMap<String, LanguageEntry>,
    target_code: Option<String>,
}

impl Registry {
    pub fn new(
        entries: impl IntoIterator<Item = LanguageEntry>,
        target_code: Option<String>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for entry in entries {
            entry.validate()?;
            if map.contains_key(&entry.code) {
                return Err(Error::Validation(format!(
                    "duplicate language code `{}`",
                    entry.code
                )));
            }
            map.insert(entry.code.clone(), entry);
        }
        if let Some(t) = &target_code {
            if !map.contains_key(t) {
                return Err(Error::Validation(format!(
                    "target `{t}` is not a registered language"
                )));
            }
        }
        Ok(Registry {
            entries: map,
            target_code,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, code: &str) -> Option<&LanguageEntry> {
        self.entries.get(code)
    }

    pub fn entries(&self) -> impl Iterator<Item = &LanguageEntry> {
        self.entries.values()
    }

    pub fn target_code(&self) -> Option<&str> {
        self.target_code.as_deref()
    }

    pub fn target(&self) -> Option<&LanguageEntry> {
        self.target_code.as_ref().and_then(|c| self.entries.get(c))
    }

    /// Every entry except the target.
    pub fn candidates(&self) -> impl Iterator<Item = &LanguageEntry> {
        let target = self.target_code.clone();
        self.entries
            .values()
            .filter(move |e| Some(&e.code) != target.as_ref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegistryFormat {
    Tsv,
    Json,
}

impl FromStr for RegistryFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(RegistryFormat::Tsv),
            "json" => Ok(RegistryFormat::Json),
            other => Err(Error::Domain(format!("unknown registry format `{other}`"))),
        }
    }
}

pub fn load_registry(source: &str, format: RegistryFormat) -> Result<Registry> {
    match format {
        RegistryFormat::Tsv => load_tsv(source),
        RegistryFormat::Json => load_json(source),
    }
}

pub fn export_registry(registry: &Registry, format: RegistryFormat) -> String {
    match format {
        RegistryFormat::Tsv => export_tsv(registry),
        RegistryFormat::Json => export_json(registry),
    }
}

/// Strict decimal parsing: ASCII digits, sign, '.', exponent. No thousands
/// separators, no `inf`/`nan`.
fn parse_number(line: usize, field: &str, cell: &str) -> Result<f64> {
    let ok_chars = cell
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'));
    if !ok_chars || !cell.bytes().any(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, field, format!("not a decimal number: {cell:?}")));
    }
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::parse(line, field, format!("not a decimal number: {cell:?}"))),
    }
}

fn optional_number(line: usize, field: &str, cell: Option<&str>) -> Result<Option<f64>> {
    match cell {
        None | Some("") => Ok(None),
        Some(c) => parse_number(line, field, c).map(Some),
    }
}

fn centroid_from(line: usize, lat: Option<f64>, lon: Option<f64>) -> Result<Option<GeoPoint>> {
    match (lat, lon) {
        (None, None) => Ok(None),
        (Some(lat), Some(lon)) => GeoPoint::new(lat, lon)
            .map(Some)
            .map_err(|e| Error::parse(line, "lat/lon", e.to_string())),
        (Some(_), None) => Err(Error::parse(line, "lon", "lat given without lon")),
        (None, Some(_)) => Err(Error::parse(line, "lat", "lon given without lat")),
    }
}

fn load_tsv(source: &str) -> Result<Registry> {
    let mut target = None;
    let mut header: Option<Vec<&str>> = None;
    let mut entries = Vec::new();

    for (idx, raw) in source.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if let Some(code) = line.strip_prefix(TARGET_PRAGMA) {
            if target.is_some() {
                return Err(Error::parse(line_no, "target", "target declared twice"));
            }
            target = Some(code.trim().to_string());
            continue;
        }
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split('\t').collect();
        let Some(columns) = &header else {
            for (i, name) in cells.iter().enumerate() {
                if !TSV_COLUMNS.contains(name) {
                    return Err(Error::parse(line_no, name, "unknown column"));
                }
                if cells[..i].contains(name) {
                    return Err(Error::parse(line_no, name, "duplicate column"));
                }
            }
            for required in ["code", "name"] {
                if !cells.contains(&required) {
                    return Err(Error::parse(line_no, required, "missing required column"));
                }
            }
            header = Some(cells);
            continue;
        };
        if cells.len() != columns.len() {
            return Err(Error::parse(
                line_no,
                "row",
                format!("expected {} cells, found {}", columns.len(), cells.len()),
            ));
        }
        let cell = |name: &str| columns.iter().position(|c| *c == name).map(|i| cells[i]);
        let code = cell("code").unwrap_or_default();
        if code.is_empty() {
            return Err(Error::parse(line_no, "code", "empty code"));
        }
        let family_path = match cell("family_path") {
            None | Some("") => Vec::new(),
            Some(s) => s.split(';').map(str::to_string).collect(),
        };
        let lat = optional_number(line_no, "lat", cell("lat"))?;
        let lon = optional_number(line_no, "lon", cell("lon"))?;
        let entry = LanguageEntry {
            code: code.to_string(),
            name: cell("name").unwrap_or_default().to_string(),
            family_path,
            centroid: centroid_from(line_no, lat, lon)?,
            corpus_size_m: optional_number(line_no, "corpus_size_m", cell("corpus_size_m"))?,
            published_gd_km: optional_number(line_no, "published_gd_km", cell("published_gd_km"))?,
            bleu_val: optional_number(line_no, "bleu_val", cell("bleu_val"))?,
            bleu_test: optional_number(line_no, "bleu_test", cell("bleu_test"))?,
        };
        entry
            .validate()
            .map_err(|e| Error::Validation(format!("line {line_no}: {e}")))?;
        entries.push(entry);
    }
    Registry::new(entries, target)
}

fn push_opt(out: &mut String, v: Option<f64>) {
    out.push('\t');
    if let Some(v) = v {
        let _ = write!(out, "{v}");
    }
}

fn export_tsv(registry: &Registry) -> String {
    let mut out = String::new();
    if let Some(t) = registry.target_code() {
        let _ = writeln!(out, "{TARGET_PRAGMA}{t}");
    }
    out.push_str(&TSV_COLUMNS.join("\t"));
    out.push('\n');
    for e in registry.entries() {
        out.push_str(&e.code);
        out.push('\t');
        out.push_str(&e.name);
        out.push('\t');
        out.push_str(&e.family_path.join(";"));
        push_opt(&mut out, e.centroid.map(|p| p.lat_deg()));
        push_opt(&mut out, e.centroid.map(|p| p.lon_deg()));
        push_opt(&mut out, e.corpus_size_m);
        push_opt(&mut out, e.published_gd_km);
        push_opt(&mut out, e.bleu_val);
        push_opt(&mut out, e.bleu_test);
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    languages: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    code: String,
    name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    family_path: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    corpus_size_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    published_gd_km: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bleu_val: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bleu_test: Option<f64>,
}

fn load_json(source: &str) -> Result<Registry> {
    let doc: RegistryDoc = serde_json::from_str(source)
        .map_err(|e| Error::parse(e.line(), "json", e.to_string()))?;
    let mut entries = Vec::with_capacity(doc.languages.len());
    for (i, d) in doc.languages.into_iter().enumerate() {
        let centroid = centroid_from(0, d.lat, d.lon).map_err(|e| {
            Error::Validation(format!("languages[{i}] (`{}`): {e}", d.code))
        })?;
        entries.push(LanguageEntry {
            code: d.code,
            name: d.name,
            family_path: d.family_path,
            centroid,
            corpus_size_m: d.corpus_size_m,
            published_gd_km: d.published_gd_km,
            bleu_val: d.bleu_val,
            bleu_test: d.bleu_test,
        });
    }
    Registry::new(entries, doc.target)
}

fn export_json(registry: &Registry) -> String {
    let doc = RegistryDoc {
        target: registry.target_code.clone(),
        languages: registry
            .entries()
            .map(|e| EntryDoc {
                code: e.code.clone(),
                name: e.name.clone(),
                family_path: e.family_path.clone(),
                lat: e.centroid.map(|p| p.lat_deg()),
                lon: e.centroid.map(|p| p.lon_deg()),
                corpus_size_m: e.corpus_size_m,
                published_gd_km: e.published_gd_km,
                bleu_val: e.bleu_val,
                bleu_test: e.bleu_test,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("registry serializes");
    s.push('\n');
    s
}

/// Published coefficient for one candidate: (with penalty, without penalty).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedCoefficient {
    pub code: &'static str,
    pub with_penalty: f64,
    pub without_penalty: f64,
}

// code, name, family, corpus size (M sentences), distance to isiZulu (km), BLEU val, BLEU test
const BUILTIN_ROWS: [(&str, &str, &[&str], f64, f64, f64, f64); 8] = [
    ("xho", "isiXhosa", &["Niger-Congo", "Bantu", "Southern Bantu", "Nguni"], 20.7, 1000.0, 10.20, 8.56),
    ("roa", "Romance", &["Indo-European", "Italic", "Romance"], 1232.7, 13094.4, 7.76, 5.83),
    ("ara", "Arabic", &["Afro-Asiatic", "Semitic"], 102.8, 5205.0, 5.76, 3.07),
    ("fra", "French", &["Indo-European", "Italic", "Romance"], 479.1, 13094.0, 5.42, 3.91),
    ("swa", "Kiswahili", &["Niger-Congo", "Bantu", "Northeast Bantu", "Sabaki"], 9.1, 3783.1, 5.28, 3.97),
    ("sna", "chiShona", &["Niger-Congo", "Bantu", "Southern Bantu"], 0.1, 1584.0, 4.32, 2.83),
    ("twi", "Twi", &["Niger-Congo", "Kwa", "Akan"], 0.047, 7962.0, 1.91, 1.34),
    ("lug", "Luganda", &["Niger-Congo", "Bantu"], 0.039, 4883.7, 0.94, 0.55),
];

pub const BUILTIN_TARGET: &str = "zul";

/// Published coefficients for the built-in candidates, c = 0.4.
pub const PUBLISHED_COEFFICIENTS: [PublishedCoefficient; 8] = [
    PublishedCoefficient { code: "xho", with_penalty: 0.5080, without_penalty: 0.5080 },
    PublishedCoefficient { code: "roa", with_penalty: 1.0000, without_penalty: 0.5007 },
    PublishedCoefficient { code: "ara", with_penalty: 1.0000, without_penalty: 0.5084 },
    PublishedCoefficient { code: "fra", with_penalty: 1.0000, without_penalty: 0.5045 },
    PublishedCoefficient { code: "swa", with_penalty: 0.5688, without_penalty: 0.5688 },
    PublishedCoefficient { code: "sna", with_penalty: 0.9999, without_penalty: 0.9999 },
    PublishedCoefficient { code: "twi", with_penalty: 1.0000, without_penalty: 1.0000 },
    PublishedCoefficient { code: "lug", with_penalty: 1.0000, without_penalty: 1.0000 },
];

/// The eight pre-training candidates for English→isiZulu, plus isiZulu itself
/// as the target. Only published distances are recorded; no coordinates.
pub fn builtin_registry() -> Registry {
    let mut entries: Vec<LanguageEntry> = BUILTIN_ROWS
        .iter()
        .map(|&(code, name, family, size, gd, val, test)| LanguageEntry {
            code: code.into(),
            name: name.into(),
            family_path: family.iter().map(|s| s.to_string()).collect(),
            centroid: None,
            corpus_size_m: Some(size),
            published_gd_km: Some(gd),
            bleu_val: Some(val),
            bleu_test: Some(test),
        })
        .collect();
    let mut zulu = LanguageEntry::new(BUILTIN_TARGET, "isiZulu");
    zulu.family_path = ["Niger-Congo", "Bantu", "Southern Bantu", "Nguni"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    entries.push(zulu);
    Registry::new(entries, Some(BUILTIN_TARGET.to_string())).expect("built-in registry is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str =
        "code\tname\tfamily_path\tlat\tlon\tcorpus_size_m\tpublished_gd_km\tbleu_val\tbleu_test\n";

    #[test]
    fn loads_minimal_row() {
        let doc = "code\tname\tcorpus_size_m\tpublished_gd_km\nxho\tisiXhosa\t20.7\t1000\n";
        let r = load_registry(doc, RegistryFormat::Tsv).unwrap();
        let e = r.get("xho").unwrap();
        assert_eq!(e.corpus_size_m, Some(20.7));
        assert_eq!(e.published_gd_km, Some(1000.0));
        assert_eq!(e.centroid, None);
        assert!(r.target().is_none());
    }

    #[test]
    fn header_only_is_empty_and_valid() {
        let r = load_registry(HEADER, RegistryFormat::Tsv).unwrap();
        assert!(r.is_empty());
        assert_eq!(export_registry(&r, RegistryFormat::Tsv), HEADER);
    }

    #[test]
    fn row_order_is_irrelevant() {
        let a = format!("{HEADER}b\tB\t\t\t\t1\t2\t\t\na\tA\t\t\t\t3\t4\t\t\n");
        let b = format!("{HEADER}a\tA\t\t\t\t3\t4\t\t\nb\tB\t\t\t\t1\t2\t\t\n");
        assert_eq!(
            load_registry(&a, RegistryFormat::Tsv).unwrap(),
            load_registry(&b, RegistryFormat::Tsv).unwrap()
        );
    }

    #[test]
    fn comments_and_target_pragma() {
        let doc = format!("#target=zul\n# a comment\n{HEADER}zul\tisiZulu\t\t-29\t31\t\t\t\t\n");
        let r = load_registry(&doc, RegistryFormat::Tsv).unwrap();
        assert_eq!(r.target_code(), Some("zul"));
        assert_eq!(r.candidates().count(), 0);
    }

    #[test]
    fn duplicate_code_is_rejected() {
        let doc = format!("{HEADER}a\tA\t\t\t\t1\t\t\t\na\tA2\t\t\t\t2\t\t\t\n");
        assert!(matches!(
            load_registry(&doc, RegistryFormat::Tsv),
            Err(Error::Validation(m)) if m.contains("duplicate")
        ));
    }

    #[test]
    fn non_positive_corpus_is_rejected() {
        for size in ["0", "-1.5"] {
            let doc = format!("{HEADER}a\tA\t\t\t\t{size}\t\t\t\n");
            assert!(matches!(
                load_registry(&doc, RegistryFormat::Tsv),
                Err(Error::Validation(_))
            ));
        }
    }

    #[test]
    fn locale_separators_are_rejected() {
        for bad in ["20,7", "1 000", "inf", "NaN", "1_000"] {
            let doc = format!("{HEADER}a\tA\t\t\t\t{bad}\t\t\t\n");
            match load_registry(&doc, RegistryFormat::Tsv) {
                Err(Error::Parse { line, field, .. }) => {
                    assert_eq!(line, 2);
                    assert_eq!(field, "corpus_size_m");
                }
                other => panic!("{bad}: {other:?}"),
            }
        }
    }

    #[test]
    fn ragged_row_names_line() {
        let doc = format!("{HEADER}a\tA\n");
        assert!(matches!(
            load_registry(&doc, RegistryFormat::Tsv),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn missing_required_column() {
        assert!(matches!(
            load_registry("code\tcorpus_size_m\n", RegistryFormat::Tsv),
            Err(Error::Parse { field, .. }) if field == "name"
        ));
        assert!(matches!(
            load_registry("code\tname\tcolour\n", RegistryFormat::Tsv),
            Err(Error::Parse { field, .. }) if field == "colour"
        ));
    }

    #[test]
    fn half_centroid_is_rejected() {
        let doc = format!("{HEADER}a\tA\t\t10\t\t\t\t\t\n");
        assert!(load_registry(&doc, RegistryFormat::Tsv).is_err());
    }

    #[test]
    fn unknown_target_is_rejected() {
        let doc = format!("#target=zul\n{HEADER}");
        assert!(matches!(
            load_registry(&doc, RegistryFormat::Tsv),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn json_parse_error_names_line() {
        let doc = "{\n  \"languages\": [\n    {\"code\": \"a\"}\n  ]\n}";
        match load_registry(doc, RegistryFormat::Json) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_omits_absent_fields() {
        let r = Registry::new([LanguageEntry::new("a", "A")], None).unwrap();
        let doc = export_registry(&r, RegistryFormat::Json);
        assert!(!doc.contains("corpus_size_m"));
        assert!(!doc.contains("target"));
        assert_eq!(load_registry(&doc, RegistryFormat::Json).unwrap(), r);
    }

    #[test]
    fn builtin_has_eight_candidates() {
        let r = builtin_registry();
        assert_eq!(r.candidates().count(), 8);
        assert_eq!(r.target().unwrap().name, "isiZulu");
        let swa = r.get("swa").unwrap();
        assert_eq!(swa.corpus_size_m, Some(9.1));
        assert_eq!(swa.published_gd_km, Some(3783.1));
        let lug = r.get("lug").unwrap();
        assert_eq!(lug.corpus_size_m, Some(0.039));
        assert_eq!(lug.published_gd_km, Some(4883.7));
    }

    #[test]
    fn builtin_round_trips() {
        let r = builtin_registry();
        for fmt in [RegistryFormat::Tsv, RegistryFormat::Json] {
            let doc = export_registry(&r, fmt);
            assert_eq!(load_registry(&doc, fmt).unwrap(), r);
        }
    }
}
