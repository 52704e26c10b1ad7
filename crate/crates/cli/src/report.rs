//! The JSON analysis report.
//!
//! Field order is fixed by the struct definitions and every collection
//! is emitted in canonical order, so repeated runs on the same input
//! produce byte-identical documents. Timings are opt-in because they
//! would break that.

use digicup::contraction::ChainContraction;
use digicup::cupring::CupMatrixDoc;
use digicup::simplicial::{Simplex, SimplicialComplex, VertexName};
use digicup::Pipeline;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub input: InputDesc,
    pub complex: ComplexDesc,
    pub thinned: ThinnedDesc,
    pub betti: [usize; 4],
    pub generators: Vec<GeneratorDesc>,
    pub cup_matrix: CupMatrixDoc,
    pub hb1: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

#[derive(Serialize)]
pub struct InputDesc {
    pub path: String,
    pub format: String,
    /// Black points for pictures, vertices for `.sc` complexes.
    pub points: usize,
}

#[derive(Serialize)]
pub struct ComplexDesc {
    pub counts: [usize; 4],
    pub total: usize,
}

#[derive(Serialize)]
pub struct ThinnedDesc {
    pub counts: [usize; 4],
    pub total: usize,
    pub collapse_pairs: usize,
}

#[derive(Serialize)]
pub struct GeneratorDesc {
    pub label: String,
    pub dim: usize,
    /// Representative cycle support, as vertex tuples.
    pub cycle: Vec<Vec<VertexName>>,
    /// Representative cocycle support of `α*f`, as vertex tuples.
    pub cocycle: Vec<Vec<VertexName>>,
}

#[derive(Serialize)]
pub struct OracleDesc {
    /// The complex the oracle ran on ("thinned" or "full").
    pub on: String,
    pub betti: [usize; 4],
    pub cup_rank: usize,
    pub agrees: bool,
}

#[derive(Serialize)]
pub struct VerifyDesc {
    pub collapse_contraction: bool,
    pub thinning_contraction: bool,
    pub composite_contraction: bool,
}

#[derive(Serialize, Default)]
pub struct Timings {
    pub build: f64,
    /// Collapse, algebraic thinning and composition together.
    pub reduce: f64,
    pub cup: f64,
    pub oracle: f64,
    pub total: f64,
}

pub fn simplex_names(k: &SimplicialComplex, s: &Simplex) -> Vec<VertexName> {
    s.vertices().iter().map(|&v| k.vertex_name(v)).collect()
}

/// Stable generator label: dimension plus 1-based index within it.
pub fn generator_labels(gens: &[Simplex]) -> Vec<String> {
    let mut per_dim = [0usize; 4];
    gens.iter()
        .map(|g| {
            per_dim[g.dim()] += 1;
            format!("h{}_{}", g.dim(), per_dim[g.dim()])
        })
        .collect()
}

pub fn generator_descriptions(pipeline: &Pipeline) -> Vec<GeneratorDesc> {
    let k = &pipeline.complex;
    let contraction: &ChainContraction = &pipeline.to_homology;
    let gens = pipeline.homology.generators();
    let labels = generator_labels(gens);
    gens.iter()
        .zip(labels)
        .map(|(g, label)| {
            let cycle = contraction.g_of(g);
            let cocycle = digicup::cupring::cocycle_of(g, contraction);
            GeneratorDesc {
                label,
                dim: g.dim(),
                cycle: cycle.iter().map(|s| simplex_names(k, s)).collect(),
                cocycle: cocycle.iter().map(|s| simplex_names(k, s)).collect(),
            }
        })
        .collect()
}
