//! Synthetic voxel pictures with known topology.
//!
//! The shapes are built on the cubic grid and converted on ingestion:
//! solids are box-with-tunnel handlebodies, surfaces are their boundary
//! shells (voxels with a 26-neighbour outside the solid), and wedges
//! join components through a single shared voxel on flat faces so the
//! pieces meet in a contractible patch. Every builder is deterministic;
//! the test suites validate the advertised Betti numbers against the
//! linear-algebra oracle rather than trusting the construction.

use crate::grid::{CubicPoint, DigitalPicture};
use std::collections::HashSet;

type V = (i32, i32, i32);
/// Axis-aligned x/y extents of one vertical tunnel.
type Tunnel = ((i32, i32), (i32, i32));

fn to_picture(voxels: impl IntoIterator<Item = V>) -> DigitalPicture {
    DigitalPicture::from_cubic_points(voxels.into_iter().map(|(x, y, z)| CubicPoint::new(x, y, z)))
}

fn box_voxels(x: (i32, i32), y: (i32, i32), z: (i32, i32)) -> Vec<V> {
    let mut out = Vec::new();
    for vx in x.0..x.1 {
        for vy in y.0..y.1 {
            for vz in z.0..z.1 {
                out.push((vx, vy, vz));
            }
        }
    }
    out
}

/// Voxels of `solid` having some 26-neighbour outside it.
fn shell_of(solid: &HashSet<V>) -> Vec<V> {
    let mut out: Vec<V> = solid
        .iter()
        .filter(|&&(x, y, z)| {
            for dx in -1..=1 {
                for dy in -1..=1 {
                    for dz in -1..=1 {
                        if (dx, dy, dz) == (0, 0, 0) {
                            continue;
                        }
                        if !solid.contains(&(x + dx, y + dy, z + dz)) {
                            return true;
                        }
                    }
                }
            }
            false
        })
        .copied()
        .collect();
    out.sort_unstable();
    out
}

/// Box solid minus vertical tunnels; a genus-`tunnels.len()` handlebody.
fn tunneled_box(outer: (V, V), tunnels: &[Tunnel]) -> HashSet<V> {
    let ((x0, y0, z0), (x1, y1, z1)) = outer;
    box_voxels((x0, x1), (y0, y1), (z0, z1))
        .into_iter()
        .filter(|&(x, y, _)| {
            !tunnels
                .iter()
                .any(|&((tx0, tx1), (ty0, ty1))| (tx0..tx1).contains(&x) && (ty0..ty1).contains(&y))
        })
        .collect()
}

/// A solid box: contractible.
pub fn solid_box(w: i32, h: i32, d: i32) -> DigitalPicture {
    to_picture(box_voxels((0, w), (0, h), (0, d)))
}

/// A solid torus (box with one tunnel): Betti (1,1,0).
pub fn solid_torus(w: i32, h: i32, d: i32) -> DigitalPicture {
    assert!(w >= 9 && h >= 9 && d >= 3, "walls need thickness");
    let tunnel = ((w / 2 - 1, w / 2 + 2), (h / 2 - 1, h / 2 + 2));
    to_picture(tunneled_box(((0, 0, 0), (w, h, d)), &[tunnel]))
}

/// A hollow box shell: a 2-sphere, Betti (1,0,1).
pub fn sphere_shell(w: i32, h: i32, d: i32) -> DigitalPicture {
    to_picture(sphere_shell_voxels((0, 0, 0), w, h, d))
}

fn sphere_shell_voxels(origin: V, w: i32, h: i32, d: i32) -> Vec<V> {
    assert!(w >= 5 && h >= 5 && d >= 5, "cavity needs room");
    let (ox, oy, oz) = origin;
    let solid: HashSet<V> = box_voxels((ox, ox + w), (oy, oy + h), (oz, oz + d))
        .into_iter()
        .collect();
    shell_of(&solid)
}

/// The boundary shell of a solid torus: a 2-torus, Betti (1,2,1).
pub fn torus_shell(w: i32, h: i32, d: i32) -> DigitalPicture {
    to_picture(torus_shell_voxels((0, 0, 0), w, h, d))
}

fn torus_shell_voxels(origin: V, w: i32, h: i32, d: i32) -> Vec<V> {
    assert!(w >= 11 && h >= 11 && d >= 5, "tunnel walls need thickness");
    let (ox, oy, oz) = origin;
    let tunnel = (
        (ox + w / 2 - 1, ox + w / 2 + 2),
        (oy + h / 2 - 1, oy + h / 2 + 2),
    );
    let solid = tunneled_box(((ox, oy, oz), (ox + w, oy + h, oz + d)), &[tunnel]);
    shell_of(&solid)
}

/// Boundary shell of a two-tunnel box: a genus-2 surface, Betti (1,4,1).
pub fn genus2_shell(d: i32) -> DigitalPicture {
    to_picture(genus2_shell_voxels((0, 0, 0), d))
}

fn genus2_shell_voxels(origin: V, d: i32) -> Vec<V> {
    let (ox, oy, oz) = origin;
    let (w, h) = (19, 11);
    let tunnels = [
        ((ox + 4, ox + 7), (oy + 4, oy + 7)),
        ((ox + 12, ox + 15), (oy + 4, oy + 7)),
    ];
    let solid = tunneled_box(((ox, oy, oz), (ox + w, oy + h, oz + d)), &tunnels);
    shell_of(&solid)
}

/// An axis-aligned rectangular ring of voxels in a z-plane: a circle,
/// Betti (1,1,0).
fn ring_voxels(origin: V, w: i32, h: i32) -> Vec<V> {
    assert!(w >= 4 && h >= 4, "ring needs a hole");
    let (ox, oy, z) = origin;
    let mut out = Vec::new();
    for x in 0..w {
        for y in 0..h {
            if x == 0 || x == w - 1 || y == 0 || y == h - 1 {
                out.push((ox + x, oy + y, z));
            }
        }
    }
    out
}

/// Wedge of two circles and a 2-sphere: Betti (1,2,1) like the torus
/// shell, but with vanishing cup products.
pub fn sphere_wedge_two_circles() -> DigitalPicture {
    let mut voxels: HashSet<V> = sphere_shell_voxels((0, 0, 0), 9, 9, 7)
        .into_iter()
        .collect();
    // each ring shares exactly its corner voxel with a box edge midpoint
    voxels.extend(ring_voxels((8, 4, 0), 6, 5));
    voxels.extend(ring_voxels((-4, -4, 6), 5, 5));
    to_picture(voxels)
}

/// Wedge of two torus shells: Betti (1,4,2), cup rank 2.
pub fn two_tori_wedge() -> DigitalPicture {
    let mut voxels: HashSet<V> = torus_shell_voxels((0, 0, 0), 11, 11, 5)
        .into_iter()
        .collect();
    let second = torus_shell_voxels((10, 10, 4), 11, 11, 5);
    voxels.extend(second);
    to_picture(voxels)
}

/// Wedge of a 2-sphere and a genus-2 surface: Betti (1,4,2), cup rank 1.
pub fn sphere_wedge_genus2() -> DigitalPicture {
    let mut voxels: HashSet<V> = genus2_shell_voxels((0, 0, 0), 5).into_iter().collect();
    voxels.extend(sphere_shell_voxels((18, 10, 4), 7, 7, 7));
    to_picture(voxels)
}

/// A solid torus whose voxel count doubles with each `level`; for
/// timing comparisons.
pub fn thickened_torus(level: u32) -> DigitalPicture {
    // doubling d doubles the voxel count exactly
    let d = 4 << level;
    solid_torus(11, 11, d)
}
