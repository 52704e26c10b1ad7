//! Digital pictures on the body-centered cubic grid.
//!
//! BCC grid points are the triples `(a, b, c)` in `Z^3` with
//! `a ≡ b ≡ c (mod 2)`. Every point has exactly 14 Voronoi neighbours:
//! the six axial offsets of length 2 and the eight diagonal offsets
//! `(±1, ±1, ±1)`. A digital picture is a finite set of black grid
//! points under this adjacency.
//!
//! The cubic `(14,14)` grid (all of `Z^3` with a 14-neighbourhood) is
//! isomorphic to the BCC grid via the linear map
//! `(x, y, z) ↦ (x + y - 2z, -x + y, -x - y)`; pictures given in cubic
//! coordinates are converted on ingestion. The cubic offset set used
//! here is the preimage of the BCC offsets under that map, so the
//! conversion is an exact adjacency isomorphism.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// The 14 BCC neighbour offsets: axial `(±2,0,0)`, `(0,±2,0)`, `(0,0,±2)`
/// and diagonal `(±1,±1,±1)`.
pub const BCC_OFFSETS: [(i32, i32, i32); 14] = [
    (2, 0, 0),
    (-2, 0, 0),
    (0, 2, 0),
    (0, -2, 0),
    (0, 0, 2),
    (0, 0, -2),
    (1, 1, 1),
    (1, 1, -1),
    (1, -1, 1),
    (1, -1, -1),
    (-1, 1, 1),
    (-1, 1, -1),
    (-1, -1, 1),
    (-1, -1, -1),
];

/// The 14 cubic-grid neighbour offsets, defined as the preimages of
/// [`BCC_OFFSETS`] under [`cubic_to_bcc`].
pub const CUBIC_OFFSETS: [(i32, i32, i32); 14] = [
    (0, 0, -1),
    (0, 0, 1),
    (-1, 1, 0),
    (1, -1, 0),
    (-1, -1, -1),
    (1, 1, 1),
    (-1, 0, -1),
    (0, 1, 0),
    (0, -1, -1),
    (1, 0, 0),
    (-1, 0, 0),
    (0, 1, 1),
    (0, -1, 0),
    (1, 0, 1),
];

/// A point of the BCC grid. All three coordinates share parity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BccPoint {
    pub a: i32,
    pub b: i32,
    pub c: i32,
}

impl BccPoint {
    /// Checked constructor. Returns `None` when the parity invariant
    /// `a ≡ b ≡ c (mod 2)` fails.
    pub fn new(a: i32, b: i32, c: i32) -> Option<Self> {
        if (a - b) % 2 == 0 && (b - c) % 2 == 0 {
            Some(Self { a, b, c })
        } else {
            None
        }
    }

    /// Constructor that panics on parity violation. For literals in tests
    /// and fixture builders.
    pub fn of(a: i32, b: i32, c: i32) -> Self {
        Self::new(a, b, c).unwrap_or_else(|| panic!("({a},{b},{c}) is not a BCC grid point"))
    }

    pub fn translate(self, da: i32, db: i32, dc: i32) -> Option<Self> {
        Self::new(self.a + da, self.b + db, self.c + dc)
    }
}

impl fmt::Debug for BccPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A point of the cubic `(14,14)` grid; all of `Z^3` is valid.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CubicPoint {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl CubicPoint {
    pub fn new(x: i32, y: i32, z: i32) -> Self {
        Self { x, y, z }
    }
}

/// Converts a cubic-grid point to its BCC image under
/// `(a, b, c) = (x + y - 2z, -x + y, -x - y)`.
///
/// The map is a bijection from `Z^3` onto the BCC point set and carries
/// cubic 14-adjacency to BCC 14-adjacency exactly.
pub fn cubic_to_bcc(p: CubicPoint) -> BccPoint {
    let a = p.x + p.y - 2 * p.z;
    let b = -p.x + p.y;
    let c = -p.x - p.y;
    debug_assert!((a - b) % 2 == 0 && (b - c) % 2 == 0);
    BccPoint { a, b, c }
}

/// Inverse of [`cubic_to_bcc`].
pub fn bcc_to_cubic(p: BccPoint) -> CubicPoint {
    let x = -(p.b + p.c) / 2;
    let y = (p.b - p.c) / 2;
    let z = -(p.a + p.c) / 2;
    CubicPoint { x, y, z }
}

/// The 14 BCC neighbours of `p`, in the order of [`BCC_OFFSETS`].
pub fn neighbors14_bcc(p: BccPoint) -> [BccPoint; 14] {
    BCC_OFFSETS.map(|(da, db, dc)| BccPoint {
        a: p.a + da,
        b: p.b + db,
        c: p.c + dc,
    })
}

/// The 14 cubic neighbours of `p`, in the order of [`CUBIC_OFFSETS`].
pub fn neighbors14_cubic(p: CubicPoint) -> [CubicPoint; 14] {
    CUBIC_OFFSETS.map(|(dx, dy, dz)| CubicPoint {
        x: p.x + dx,
        y: p.y + dy,
        z: p.z + dz,
    })
}

/// True iff `q` is one of the 14 BCC neighbours of `p`.
pub fn are_adjacent(p: BccPoint, q: BccPoint) -> bool {
    let (da, db, dc) = (q.a - p.a, q.b - p.b, q.c - p.c);
    BCC_OFFSETS.contains(&(da, db, dc))
}

/// Which grid a picture was ingested from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SourceGrid {
    Bcc,
    Cubic14,
}

/// A finite set of black BCC grid points.
///
/// Cubic input is converted point-by-point on construction, so the
/// stored set always satisfies the BCC parity invariant. Points are
/// kept sorted (lexicographic on `(a, b, c)`) and deduplicated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DigitalPicture {
    black: Vec<BccPoint>,
    source_grid: SourceGrid,
}

impl DigitalPicture {
    pub fn from_bcc_points<I: IntoIterator<Item = BccPoint>>(points: I) -> Self {
        let set: BTreeSet<BccPoint> = points.into_iter().collect();
        Self {
            black: set.into_iter().collect(),
            source_grid: SourceGrid::Bcc,
        }
    }

    pub fn from_cubic_points<I: IntoIterator<Item = CubicPoint>>(points: I) -> Self {
        let set: BTreeSet<BccPoint> = points.into_iter().map(cubic_to_bcc).collect();
        Self {
            black: set.into_iter().collect(),
            source_grid: SourceGrid::Cubic14,
        }
    }

    pub fn empty() -> Self {
        Self::from_bcc_points([])
    }

    /// Black points in lexicographic order.
    pub fn points(&self) -> &[BccPoint] {
        &self.black
    }

    pub fn len(&self) -> usize {
        self.black.len()
    }

    pub fn is_empty(&self) -> bool {
        self.black.is_empty()
    }

    pub fn source_grid(&self) -> SourceGrid {
        self.source_grid
    }

    pub fn contains(&self, p: BccPoint) -> bool {
        self.black.binary_search(&p).is_ok()
    }

    /// Applies a grid symmetry to every black point.
    pub fn transformed(&self, sym: &BccSymmetry) -> Self {
        Self::from_bcc_points(self.black.iter().map(|&p| sym.apply(p)))
    }
}

/// A symmetry of the BCC grid: a signed coordinate permutation followed
/// by a translation. Translations must preserve the lattice, i.e. be by
/// a vector with all-even or all-odd coordinates.
#[derive(Clone, Debug)]
pub struct BccSymmetry {
    /// `perm[i]` is the source coordinate feeding output coordinate `i`.
    pub perm: [usize; 3],
    pub signs: [i32; 3],
    pub shift: BccPoint,
}

impl BccSymmetry {
    pub fn identity() -> Self {
        Self {
            perm: [0, 1, 2],
            signs: [1, 1, 1],
            shift: BccPoint::of(0, 0, 0),
        }
    }

    pub fn new(perm: [usize; 3], signs: [i32; 3], shift: BccPoint) -> Self {
        let mut seen = [false; 3];
        for &i in &perm {
            assert!(i < 3 && !seen[i], "perm must be a permutation of 0..3");
            seen[i] = true;
        }
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        Self { perm, signs, shift }
    }

    pub fn apply(&self, p: BccPoint) -> BccPoint {
        let src = [p.a, p.b, p.c];
        let out = [
            self.signs[0] * src[self.perm[0]],
            self.signs[1] * src[self.perm[1]],
            self.signs[2] * src[self.perm[2]],
        ];
        // Signed permutations preserve the shared-parity class, and the
        // shift is itself a lattice point, so the sum stays on the grid.
        BccPoint::of(
            out[0] + self.shift.a,
            out[1] + self.shift.b,
            out[2] + self.shift.c,
        )
    }
}
