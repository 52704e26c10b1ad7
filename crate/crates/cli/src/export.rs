//! OBJ and JSON export of representative (co)cycles.
//!
//! One OBJ object per generator and per role (cycle or cocycle):
//! vertices are the BCC coordinates, dimension-0 supports become `p`
//! statements, dimension-1 supports `l` edges and dimension-2 supports
//! `f` triangles. The JSON sidecar lists the same supports as vertex
//! tuples and is written even when the complex has no geometry.

use crate::report::{generator_labels, simplex_names};
use digicup::cupring::cocycle_of;
use digicup::simplicial::VertexTable;
use digicup::{Chain, Pipeline};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Serialize)]
struct CycleDoc {
    schema_version: u32,
    generators: Vec<CycleEntry>,
}

#[derive(Serialize)]
struct CycleEntry {
    label: String,
    dim: usize,
    cycle: Vec<Vec<digicup::simplicial::VertexName>>,
    cocycle: Vec<Vec<digicup::simplicial::VertexName>>,
}

pub struct ExportOutcome {
    pub obj_written: bool,
    pub json_path: std::path::PathBuf,
    pub obj_path: std::path::PathBuf,
}

fn push_object(out: &mut String, name: &str, chain: &Chain) {
    let _ = writeln!(out, "o {name}");
    for s in chain.iter() {
        let ids: Vec<String> = s
            .vertices()
            .iter()
            .map(|&v| (v + 1).to_string()) // OBJ indices are 1-based
            .collect();
        let stmt = match s.dim() {
            0 => "p",
            1 => "l",
            _ => "f",
        };
        let _ = writeln!(out, "{stmt} {}", ids.join(" "));
    }
}

/// Writes `cycles.json` (always) and `cycles.obj` (when the complex
/// carries point geometry) into `dir`.
pub fn export_cycles(pipeline: &Pipeline, dir: &Path) -> std::io::Result<ExportOutcome> {
    std::fs::create_dir_all(dir)?;
    let k = &pipeline.complex;
    let gens = pipeline.homology.generators();
    let labels = generator_labels(gens);

    let entries: Vec<CycleEntry> = gens
        .iter()
        .zip(&labels)
        .map(|(g, label)| {
            let cycle = pipeline.to_homology.g_of(g);
            let cocycle = cocycle_of(g, &pipeline.to_homology);
            CycleEntry {
                label: label.clone(),
                dim: g.dim(),
                cycle: cycle.iter().map(|s| simplex_names(k, s)).collect(),
                cocycle: cocycle.iter().map(|s| simplex_names(k, s)).collect(),
            }
        })
        .collect();
    let json_path = dir.join("cycles.json");
    let doc = CycleDoc {
        schema_version: crate::report::SCHEMA_VERSION,
        generators: entries,
    };
    std::fs::write(&json_path, serde_json::to_string_pretty(&doc)? + "\n")?;

    let obj_path = dir.join("cycles.obj");
    let geometric = matches!(k.vertex_table(), VertexTable::Points(_));
    if geometric {
        let mut obj = String::new();
        for v in 0..k.vertex_table().len() {
            let p = k.vertex_point(v as u32).unwrap();
            let _ = writeln!(obj, "v {} {} {}", p.a, p.b, p.c);
        }
        for (g, label) in gens.iter().zip(&labels) {
            push_object(
                &mut obj,
                &format!("{label}_cycle"),
                &pipeline.to_homology.g_of(g),
            );
            push_object(
                &mut obj,
                &format!("{label}_cocycle"),
                &cocycle_of(g, &pipeline.to_homology),
            );
        }
        std::fs::write(&obj_path, obj)?;
    }

    Ok(ExportOutcome {
        obj_written: geometric,
        json_path,
        obj_path,
    })
}
