//! Shared helpers for the integration and acceptance suites.

#![allow(dead_code)]

use digicup::grid::{BccSymmetry, CubicPoint};
use digicup::simplicial::Simplex;
use digicup::{BccPoint, Chain, DigitalPicture, SimplicialComplex};
use rand::prelude::*;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// A random picture of at most `max_points` distinct points sampled in
/// a small cubic box (then converted), dense enough to be interesting.
pub fn random_picture(rng: &mut ChaCha20Rng, max_points: usize) -> DigitalPicture {
    let side = rng.gen_range(3..=6);
    let n = rng.gen_range(1..=max_points);
    let points = (0..n).map(|_| {
        CubicPoint::new(
            rng.gen_range(0..side),
            rng.gen_range(0..side),
            rng.gen_range(0..side),
        )
    });
    DigitalPicture::from_cubic_points(points)
}

/// A random sub-selection of the `q`-simplices of a complex.
pub fn random_chain(rng: &mut ChaCha20Rng, k: &SimplicialComplex, q: usize) -> Chain {
    Chain::from_simplices(k.simplices(q).iter().filter(|_| rng.gen_bool(0.3)).copied())
}

pub fn random_symmetry(rng: &mut ChaCha20Rng) -> BccSymmetry {
    let mut perm = [0usize, 1, 2];
    // Fisher-Yates
    for i in (1..3).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let signs = [(); 3].map(|_| if rng.gen_bool(0.5) { 1 } else { -1 });
    let even = [(); 3].map(|_| 2 * rng.gen_range(-2..=2i32));
    let shift = if rng.gen_bool(0.5) {
        BccPoint::of(even[0], even[1], even[2])
    } else {
        BccPoint::of(even[0] + 1, even[1] + 1, even[2] + 1)
    };
    BccSymmetry::new(perm, signs, shift)
}

pub fn torus9() -> SimplicialComplex {
    let text = include_str!("../data/torus9.sc");
    digicup::formats::parse_sc(text).expect("fixture parses")
}

pub fn five_point_picture() -> DigitalPicture {
    DigitalPicture::from_bcc_points([
        BccPoint::of(-1, -1, 1),
        BccPoint::of(-1, 1, 1),
        BccPoint::of(0, 0, 0),
        BccPoint::of(0, 0, 2),
        BccPoint::of(0, 2, 0),
    ])
}

pub fn two_triangles_with_pendants() -> SimplicialComplex {
    SimplicialComplex::from_maximal_labels(&[vec![1, 5], vec![2, 5], vec![1, 2, 3], vec![2, 3, 4]])
}

pub fn kite_complex() -> SimplicialComplex {
    SimplicialComplex::from_maximal_labels(&[vec![2, 3, 4], vec![1, 2], vec![1, 4]])
}

pub fn labeled(k: &SimplicialComplex, labels: &[i64]) -> Simplex {
    k.simplex_by_labels(labels)
        .unwrap_or_else(|| panic!("{labels:?} not in complex"))
}

pub fn label_chain(k: &SimplicialComplex, sims: &[&[i64]]) -> Chain {
    Chain::from_simplices(sims.iter().map(|ls| labeled(k, ls)))
}
