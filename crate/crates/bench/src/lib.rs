//! Shared inputs for the benchmark targets.

use digicup::{build_representation, DigitalPicture, SimplicialComplex};

pub fn torus_picture() -> DigitalPicture {
    digicup::fixtures::torus_shell(11, 11, 5)
}

pub fn large_torus_picture() -> DigitalPicture {
    digicup::fixtures::thickened_torus(2)
}

pub fn torus_complex() -> SimplicialComplex {
    build_representation(&torus_picture())
}
