//! Serializable verification reports, schema version 1.
//!
//! The report is a flat JSON-friendly mirror of a verdict: vectors and
//! plain fields only, so any consumer can parse it without knowing the
//! internal types. Field order and float formatting are deterministic;
//! the only nondeterministic value is the wall-clock timing block.

use serde::{Deserialize, Serialize};

use crate::table::ChevalleyTable;
use crate::verdict::PropertyOVerdict;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub dataset: String,
    pub basis_size: usize,
    pub fano_index: u32,
    pub c1_multiple: u32,
    pub degree_histogram: Vec<usize>,
    pub holds: bool,
    pub lemma_route: LemmaReport,
    pub spectral_route: SpectralReport,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub nonnegative: bool,
    pub strongly_connected: bool,
    pub component_count: usize,
    /// Cycle witness as basis names, repeated endpoint included.
    pub r_cycle: Option<Vec<String>>,
    pub r_cycle_simple: Option<bool>,
    pub period: Option<u32>,
    pub period_divides_fano_index: Option<bool>,
    pub period_equals_fano_index: Option<bool>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub delta0: f64,
    pub delta0_multiplicity: usize,
    pub delta0_simple: bool,
    pub eigenvalues: Vec<EigenvalueEntry>,
    /// One entry per maximal-modulus eigenvalue, in spectrum order.
    pub circle: Vec<CircleEntry>,
    pub max_residual: f64,
    pub power_iteration_value: Option<f64>,
    pub perron_vector: Option<Vec<f64>>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueEntry {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleEntry {
    pub re: f64,
    pub im: f64,
    pub nearest_k: u32,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Flatten a verdict into the schema. The table supplies names and shape;
/// the caller supplies the wall-clock total.
pub fn build_report(
    table: &ChevalleyTable,
    verdict: &PropertyOVerdict,
    total_ms: f64,
) -> VerificationReport {
    let lemma = &verdict.lemma;
    let spectral = &verdict.spectral;
    VerificationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        dataset: table.name.clone(),
        basis_size: table.dim(),
        fano_index: verdict.fano_index,
        c1_multiple: table.c1_multiple,
        degree_histogram: table.degree_histogram(),
        holds: verdict.holds,
        lemma_route: LemmaReport {
            nonnegative: lemma.nonnegative,
            strongly_connected: lemma.connectivity.strongly_connected,
            component_count: lemma.connectivity.component_count,
            r_cycle: lemma.r_cycle.as_ref().map(|c| {
                c.vertices
                    .iter()
                    .map(|&v| table.basis[v].name.clone())
                    .collect()
            }),
            r_cycle_simple: lemma.r_cycle.as_ref().map(|c| c.simple),
            period: lemma.period.map(|p| p.period),
            period_divides_fano_index: lemma.period.map(|p| p.divides_fano_index),
            period_equals_fano_index: lemma.period.map(|p| p.equals_fano_index),
            holds: lemma.holds,
        },
        spectral_route: SpectralReport {
            delta0: spectral.delta0,
            delta0_multiplicity: spectral.delta0_multiplicity,
            delta0_simple: spectral.delta0_simple,
            eigenvalues: verdict
                .spectrum
                .eigenvalues
                .iter()
                .zip(&verdict.spectrum.residuals)
                .map(|(z, &residual)| EigenvalueEntry {
                    re: z.re,
                    im: z.im,
                    modulus: z.norm(),
                    residual,
                })
                .collect(),
            circle: spectral
                .circle
                .iter()
                .map(|c| CircleEntry {
                    re: c.eigenvalue.re,
                    im: c.eigenvalue.im,
                    nearest_k: c.nearest_k,
                    distance: c.distance,
                })
                .collect(),
            max_residual: verdict
                .spectrum
                .residuals
                .iter()
                .fold(0.0f64, |m, &r| m.max(r)),
            power_iteration_value: spectral.power.as_ref().map(|p| p.value),
            perron_vector: spectral.power.as_ref().map(|p| p.vector.clone()),
            holds: spectral.holds,
        },
        timings: Timings { total_ms },
    }
}

impl VerificationReport {
    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
