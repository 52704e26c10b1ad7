//! Z/2 cohomology rings of 3D binary digital images on the
//! body-centered cubic grid.
//!
//! The pipeline: a picture's black points span a flag complex under
//! 14-adjacency ([`simplicial::build_representation`]); simplicial
//! collapses thin it ([`topothin::collapse`]); the incremental
//! algorithm reduces the thinned chain complex to its homology
//! ([`algthin::algebraic_thinning`]); and the composite chain
//! contraction yields representative (co)cycles, the cup-product
//! matrix and the HB1 invariant ([`cupring`]). Every stage carries a
//! machine-checkable certificate (the contraction axioms), and the
//! [`oracle`] module recomputes Betti numbers and the cup rank by dense
//! GF(2) elimination with none of the contraction machinery.
//!
//! ```
//! use digicup::{cup_matrix, full_pipeline, hb1, SimplicialComplex};
//! use std::sync::Arc;
//!
//! // a 9-vertex triangulated torus, given by its maximal simplices
//! let torus = SimplicialComplex::from_maximal_labels(&[
//!     vec![3, 6, 7], vec![6, 7, 8], vec![7, 8, 9], vec![2, 8, 9],
//!     vec![2, 3, 9], vec![2, 3, 6], vec![5, 6, 8], vec![1, 5, 8],
//!     vec![1, 2, 8], vec![1, 2, 4], vec![2, 4, 6], vec![4, 5, 6],
//!     vec![1, 3, 5], vec![1, 3, 7], vec![1, 4, 7], vec![4, 7, 9],
//!     vec![4, 5, 9], vec![3, 5, 9],
//! ]);
//! let out = full_pipeline(Arc::new(torus), true);
//! assert_eq!(out.betti().0, [1, 2, 1, 0]);
//! assert!(out.to_homology.verify().passed());
//! assert_eq!(hb1(&cup_matrix(&out.to_homology)), 1);
//! ```

pub mod algthin;
pub mod chains;
pub mod contraction;
pub mod cupring;
pub mod fixtures;
pub mod formats;
pub mod grid;
pub mod oracle;
pub mod simplicial;
pub mod topothin;

pub use algthin::{algebraic_thinning, betti, full_pipeline, Betti, Pipeline};
pub use chains::{boundary, coboundary, cup, evaluate, Chain, Cochain};
pub use contraction::{ChainContraction, GeneratorComplex, Target, VerifyReport};
pub use cupring::{cup_classes, cup_matrix, hb1, CupMatrix};
pub use grid::{cubic_to_bcc, BccPoint, BccSymmetry, CubicPoint, DigitalPicture};
pub use oracle::{betti_oracle, cohomology_cup_oracle};
pub use simplicial::{
    build_representation, default_filtration, Filtration, Simplex, SimplicialComplex,
};
pub use topothin::{collapse, collapse_contraction, CollapseSequence};
