//! File formats.
//!
//! * `pts-bcc` / `pts-cubic`: one point per line, ASCII signed integers
//!   separated by whitespace; `#` starts a comment line.
//! * `raw-raster`: a 16-byte header (three little-endian u32 dimensions
//!   plus 4 reserved bytes) followed by `x·y·z` bytes in x-fastest
//!   order; a voxel is black iff its byte is nonzero. Coordinates are
//!   interpreted on the cubic grid.
//! * `sc`: one maximal simplex per line as whitespace-separated integer
//!   vertex labels (`#` comments); the complex is closed under faces.

use crate::grid::{BccPoint, CubicPoint, DigitalPicture};
use crate::simplicial::SimplicialComplex;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    PtsBcc,
    PtsCubic,
    RawRaster,
    Sc,
}

impl Format {
    /// Guesses a format from a file extension (`.pts` defaults to BCC).
    pub fn from_extension(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "pts" => Some(Format::PtsBcc),
            "raw" => Some(Format::RawRaster),
            "sc" => Some(Format::Sc),
            _ => None,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Format::PtsBcc => "pts-bcc",
            Format::PtsCubic => "pts-cubic",
            Format::RawRaster => "raw-raster",
            Format::Sc => "sc",
        };
        write!(f, "{name}")
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pts-bcc" => Ok(Format::PtsBcc),
            "pts-cubic" => Ok(Format::PtsCubic),
            "raw-raster" => Ok(Format::RawRaster),
            "sc" => Ok(Format::Sc),
            other => Err(format!(
                "unknown format {other:?} (expected pts-bcc, pts-cubic, raw-raster or sc)"
            )),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected {want}, got {got:?}")]
    Malformed {
        line: usize,
        want: &'static str,
        got: String,
    },
    #[error("line {line}: point ({a},{b},{c}) violates a ≡ b ≡ c (mod 2)")]
    Parity { line: usize, a: i32, b: i32, c: i32 },
    #[error("raster header truncated ({0} bytes, need 16)")]
    RasterHeader(usize),
    #[error("raster payload has {got} bytes, dimensions {dims:?} need {want}")]
    RasterPayload {
        got: usize,
        want: usize,
        dims: [u32; 3],
    },
    #[error("{0} requires a picture format, not a simplicial complex")]
    NotAPicture(Format),
}

/// Integer triples from `pts` text, with line numbers for errors.
fn parse_triples(text: &str) -> Result<Vec<(usize, [i32; 3])>, FormatError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(FormatError::Malformed {
                line,
                want: "three integers",
                got: content.to_string(),
            });
        }
        let mut triple = [0i32; 3];
        for (slot, field) in triple.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| FormatError::Malformed {
                line,
                want: "three integers",
                got: content.to_string(),
            })?;
        }
        out.push((line, triple));
    }
    Ok(out)
}

pub fn parse_pts_bcc(text: &str) -> Result<DigitalPicture, FormatError> {
    let mut points = Vec::new();
    for (line, [a, b, c]) in parse_triples(text)? {
        let p = BccPoint::new(a, b, c).ok_or(FormatError::Parity { line, a, b, c })?;
        points.push(p);
    }
    Ok(DigitalPicture::from_bcc_points(points))
}

pub fn parse_pts_cubic(text: &str) -> Result<DigitalPicture, FormatError> {
    let points = parse_triples(text)?
        .into_iter()
        .map(|(_, [x, y, z])| CubicPoint::new(x, y, z));
    Ok(DigitalPicture::from_cubic_points(points))
}

pub fn parse_raw_raster(bytes: &[u8]) -> Result<DigitalPicture, FormatError> {
    if bytes.len() < 16 {
        return Err(FormatError::RasterHeader(bytes.len()));
    }
    let dim = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let dims = [dim(0), dim(4), dim(8)];
    let want = dims.iter().map(|&d| d as usize).product::<usize>();
    let payload = &bytes[16..];
    if payload.len() != want {
        return Err(FormatError::RasterPayload {
            got: payload.len(),
            want,
            dims,
        });
    }
    let (nx, ny) = (dims[0] as usize, dims[1] as usize);
    let mut points = Vec::new();
    for (i, &byte) in payload.iter().enumerate() {
        if byte != 0 {
            let x = (i % nx) as i32;
            let y = (i / nx % ny) as i32;
            let z = (i / (nx * ny)) as i32;
            points.push(CubicPoint::new(x, y, z));
        }
    }
    Ok(DigitalPicture::from_cubic_points(points))
}

pub fn parse_sc(text: &str) -> Result<SimplicialComplex, FormatError> {
    let mut maximal: Vec<Vec<i64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut labels = Vec::new();
        for field in content.split_whitespace() {
            let label: i64 = field.parse().map_err(|_| FormatError::Malformed {
                line,
                want: "integer vertex labels",
                got: content.to_string(),
            })?;
            labels.push(label);
        }
        if labels.len() > 4 {
            return Err(FormatError::Malformed {
                line,
                want: "at most 4 vertices per simplex",
                got: content.to_string(),
            });
        }
        let mut dedup = labels.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() != labels.len() {
            return Err(FormatError::Malformed {
                line,
                want: "distinct vertex labels",
                got: content.to_string(),
            });
        }
        maximal.push(labels);
    }
    Ok(SimplicialComplex::from_maximal_labels(&maximal))
}

/// Loads a digital picture from a file in one of the picture formats.
pub fn load_picture(path: &Path, format: Format) -> Result<DigitalPicture, FormatError> {
    match format {
        Format::PtsBcc => parse_pts_bcc(&std::fs::read_to_string(path)?),
        Format::PtsCubic => parse_pts_cubic(&std::fs::read_to_string(path)?),
        Format::RawRaster => {
            let mut bytes = Vec::new();
            std::fs::File::open(path)?.read_to_end(&mut bytes)?;
            parse_raw_raster(&bytes)
        }
        Format::Sc => Err(FormatError::NotAPicture(Format::Sc)),
    }
}

/// Loads a labelled simplicial complex from an `.sc` file.
pub fn load_complex(path: &Path) -> Result<SimplicialComplex, FormatError> {
    parse_sc(&std::fs::read_to_string(path)?)
}

/// Serializes a picture as `pts-bcc` text; parsing it back reproduces
/// the same point set.
pub fn write_pts_bcc(picture: &DigitalPicture) -> String {
    let mut out = String::new();
    for p in picture.points() {
        out.push_str(&format!("{} {} {}\n", p.a, p.b, p.c));
    }
    out
}
