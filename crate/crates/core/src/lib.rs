//! Picking a pre-training source language for low-resource translation by
//! geographical distance and corpus size.
//!
//! * [`registry`]: candidate-language metadata, TSV/JSON formats, the
//!   built-in English→isiZulu candidate set.
//! * [`geodesy`]: haversine, Lambert and Vincenty distances.
//! * [`ngdc`]: the distance coefficient and the ranking built on it.
//! * [`bleu`]: corpus BLEU for evaluating the resulting models.
//! * [`cli`]: the `ngdc` command-line front end.

pub mod bleu;
pub mod cli;
pub mod error;
pub mod geodesy;
pub mod ngdc;
pub mod registry;

pub use bleu::{corpus_bleu, tokenize_basic, BleuReport, SentencePair, Smoothing};
pub use error::{Error, Result};
pub use geodesy::{
    haversine_km, lambert_km, resolve_distance_km, vincenty_km, DistanceMethod, DistanceSource,
    Ellipsoid, GeoPoint, ResolvedDistance, VincentyError, VincentySolution,
};
pub use ngdc::{ngdc_delta, ngdc_z, rank_candidates, Coefficient, NgdcParams, NgdcScore, Ranking};
pub use registry::{
    builtin_registry, export_registry, load_registry, LanguageEntry, Registry,
    RegistryFormat,
};
