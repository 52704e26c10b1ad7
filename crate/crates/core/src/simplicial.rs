//! Simplices, simplicial complexes and the simplicial representation of
//! a digital picture.
//!
//! Vertices are `u32` indices into a per-complex vertex table; the index
//! order is the global vertex order (lexicographic on coordinates for
//! grid points, numeric for labelled complexes). This order is fixed
//! because the cochain-level cup product depends on it.
//!
//! The representation of a picture is the flag (clique) complex of its
//! 14-adjacency graph truncated at dimension 3: a `q`-simplex is a
//! `(q+1)`-subset of pairwise-adjacent black points.

use crate::grid::{neighbors14_bcc, BccPoint, DigitalPicture};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

pub const MAX_DIM: usize = 3;

/// A simplex of dimension 0..=3, stored as strictly increasing vertex
/// indices. Unused slots are padded with `u32::MAX` so that derived
/// ordering compares `(len, verts)` — dimension first, then
/// lexicographic on the vertex tuple.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    len: u8,
    verts: [u32; 4],
}

impl Simplex {
    pub fn new(vertices: &[u32]) -> Self {
        assert!(
            (1..=4).contains(&vertices.len()),
            "a simplex has 1 to 4 vertices, got {}",
            vertices.len()
        );
        let mut verts = [u32::MAX; 4];
        verts[..vertices.len()].copy_from_slice(vertices);
        assert!(
            verts[..vertices.len()].windows(2).all(|w| w[0] < w[1]),
            "vertices must be strictly increasing: {vertices:?}"
        );
        Self {
            len: vertices.len() as u8,
            verts,
        }
    }

    pub fn vertex(v: u32) -> Self {
        Self::new(&[v])
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..self.len as usize]
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.vertices().contains(&v)
    }

    /// True iff every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices().iter().all(|v| other.has_vertex(*v))
    }

    /// The `q+1` facets obtained by deleting one vertex, in the order of
    /// the omitted vertex. Panics on a 0-simplex.
    pub fn facets(&self) -> Vec<Simplex> {
        assert!(self.dim() >= 1, "a 0-simplex has no facets");
        let vs = self.vertices();
        (0..vs.len())
            .map(|skip| {
                let rest: Vec<u32> = vs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v)
                    .collect();
                Simplex::new(&rest)
            })
            .collect()
    }

    /// All proper faces of all dimensions.
    pub fn proper_faces(&self) -> Vec<Simplex> {
        let vs = self.vertices();
        let n = vs.len();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            if mask.count_ones() as usize == n {
                continue;
            }
            let sub: Vec<u32> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i])
                .collect();
            out.push(Simplex::new(&sub));
        }
        out
    }

    /// Front face `⟨v0..vp⟩` of a `(p+q)`-simplex.
    pub fn front_face(&self, p: usize) -> Simplex {
        Simplex::new(&self.vertices()[..=p])
    }

    /// Back face `⟨vp..vp+q⟩`.
    pub fn back_face(&self, p: usize) -> Simplex {
        Simplex::new(&self.vertices()[p..])
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.vertices().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

/// Names behind the `u32` vertex indices of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexTable {
    /// Grid points, sorted lexicographically; index order = point order.
    Points(Vec<BccPoint>),
    /// Integer labels, sorted numerically.
    Labels(Vec<i64>),
}

impl VertexTable {
    pub fn len(&self) -> usize {
        match self {
            VertexTable::Points(v) => v.len(),
            VertexTable::Labels(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A printable vertex name; serializes as `[a,b,c]` for grid points and
/// as a bare integer for labels.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum VertexName {
    Point([i32; 3]),
    Label(i64),
}

impl fmt::Display for VertexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexName::Point([a, b, c]) => write!(f, "({a},{b},{c})"),
            VertexName::Label(l) => write!(f, "{l}"),
        }
    }
}

/// How a simplex sits in a complex, by its number of proper cofaces:
/// none (`Maximal`), exactly one (`Free`) or more (`Shared`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SimplexClass {
    Maximal,
    Free,
    Shared,
}

/// A face-closed collection of simplices of dimension at most 3.
///
/// Simplices are stored per dimension in lexicographic order; that
/// order is canonical and all algorithms iterate it deterministically.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    vertex_table: VertexTable,
    sims: [Vec<Simplex>; 4],
}

impl SimplicialComplex {
    /// Builds a complex from maximal simplices given as vertex-index
    /// tuples over `vertex_table`, closing under faces.
    pub fn from_maximal(vertex_table: VertexTable, maximal: &[Vec<u32>]) -> Self {
        let mut sets: [BTreeSet<Simplex>; 4] = Default::default();
        for vs in maximal {
            let mut sorted = vs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert!(
                sorted.len() == vs.len(),
                "duplicate vertices in simplex {vs:?}"
            );
            let s = Simplex::new(&sorted);
            for v in s.vertices() {
                assert!(
                    (*v as usize) < vertex_table.len(),
                    "vertex {v} out of range"
                );
            }
            sets[s.dim()].insert(s);
            for face in s.proper_faces() {
                sets[face.dim()].insert(face);
            }
        }
        Self {
            vertex_table,
            sims: sets.map(|s| s.into_iter().collect()),
        }
    }

    /// Builds a complex from maximal simplices written with integer
    /// labels; the vertex table is the sorted set of labels used.
    pub fn from_maximal_labels(maximal: &[Vec<i64>]) -> Self {
        let labels: BTreeSet<i64> = maximal.iter().flatten().copied().collect();
        let table: Vec<i64> = labels.into_iter().collect();
        let index: HashMap<i64, u32> = table
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect();
        let maximal_ids: Vec<Vec<u32>> = maximal
            .iter()
            .map(|vs| vs.iter().map(|l| index[l]).collect())
            .collect();
        Self::from_maximal(VertexTable::Labels(table), &maximal_ids)
    }

    pub fn empty() -> Self {
        Self {
            vertex_table: VertexTable::Labels(Vec::new()),
            sims: Default::default(),
        }
    }

    pub fn vertex_table(&self) -> &VertexTable {
        &self.vertex_table
    }

    pub fn vertex_name(&self, v: u32) -> VertexName {
        match &self.vertex_table {
            VertexTable::Points(ps) => {
                let p = ps[v as usize];
                VertexName::Point([p.a, p.b, p.c])
            }
            VertexTable::Labels(ls) => VertexName::Label(ls[v as usize]),
        }
    }

    pub fn vertex_point(&self, v: u32) -> Option<BccPoint> {
        match &self.vertex_table {
            VertexTable::Points(ps) => Some(ps[v as usize]),
            VertexTable::Labels(_) => None,
        }
    }

    /// Vertex index of a label, when this complex is label-based.
    pub fn vertex_of_label(&self, label: i64) -> Option<u32> {
        match &self.vertex_table {
            VertexTable::Labels(ls) => ls.binary_search(&label).ok().map(|i| i as u32),
            VertexTable::Points(_) => None,
        }
    }

    pub fn vertex_of_point(&self, p: BccPoint) -> Option<u32> {
        match &self.vertex_table {
            VertexTable::Points(ps) => ps.binary_search(&p).ok().map(|i| i as u32),
            VertexTable::Labels(_) => None,
        }
    }

    /// Simplex from integer labels (any order); `None` if absent.
    pub fn simplex_by_labels(&self, labels: &[i64]) -> Option<Simplex> {
        let mut ids: Vec<u32> = labels
            .iter()
            .map(|l| self.vertex_of_label(*l))
            .collect::<Option<_>>()?;
        ids.sort_unstable();
        let s = Simplex::new(&ids);
        self.contains(&s).then_some(s)
    }

    /// The `q`-simplices in canonical (lexicographic) order.
    pub fn simplices(&self, q: usize) -> &[Simplex] {
        &self.sims[q]
    }

    /// All simplices, dimension ascending then lexicographic.
    pub fn iter_all(&self) -> impl Iterator<Item = &Simplex> {
        self.sims.iter().flatten()
    }

    pub fn count(&self, q: usize) -> usize {
        self.sims[q].len()
    }

    pub fn counts(&self) -> [usize; 4] {
        [
            self.sims[0].len(),
            self.sims[1].len(),
            self.sims[2].len(),
            self.sims[3].len(),
        ]
    }

    pub fn total(&self) -> usize {
        self.sims.iter().map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// Largest `q` with a `q`-simplex present, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        (0..=MAX_DIM).rev().find(|&q| !self.sims[q].is_empty())
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.sims[s.dim()].binary_search(s).is_ok()
    }

    /// Position of `s` within its dimension's canonical order.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.sims[s.dim()].binary_search(s).ok()
    }

    /// The simplices of dimension `dim σ + 1` having `σ` as a facet.
    pub fn cofacets(&self, s: &Simplex) -> Vec<Simplex> {
        let q = s.dim();
        if q >= MAX_DIM {
            return Vec::new();
        }
        self.sims[q + 1]
            .iter()
            .filter(|t| s.is_face_of(t))
            .copied()
            .collect()
    }

    /// Number of proper cofaces of `σ` over all dimensions.
    pub fn proper_coface_count(&self, s: &Simplex) -> usize {
        (s.dim() + 1..=MAX_DIM)
            .map(|q| self.sims[q].iter().filter(|t| s.is_face_of(t)).count())
            .sum()
    }

    /// Classifies `σ` by its proper coface count: 0 is `Maximal`, 1 is
    /// `Free` (an elementary-collapse candidate), 2+ is `Shared`.
    /// Panics when `σ ∉ K`.
    pub fn classify(&self, s: &Simplex) -> SimplexClass {
        assert!(self.contains(s), "classify: {s:?} is not in the complex");
        match self.proper_coface_count(s) {
            0 => SimplexClass::Maximal,
            1 => SimplexClass::Free,
            _ => SimplexClass::Shared,
        }
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.iter_all()
            .filter(|s| self.proper_coface_count(s) == 0)
            .copied()
            .collect()
    }

    /// Subcomplex on the given simplex set (must be face-closed; checked).
    pub fn subcomplex(&self, keep: &HashSet<Simplex>) -> SimplicialComplex {
        let mut sims: [Vec<Simplex>; 4] = Default::default();
        for s in self.iter_all() {
            if keep.contains(s) {
                for f in s.facets_or_empty() {
                    assert!(keep.contains(&f), "subcomplex is not face-closed at {s:?}");
                }
                sims[s.dim()].push(*s);
            }
        }
        SimplicialComplex {
            vertex_table: self.vertex_table.clone(),
            sims,
        }
    }

    /// Face-closedness and ordering sanity check; used by tests and the
    /// `.sc` loader.
    pub fn validate(&self) {
        for q in 0..=MAX_DIM {
            assert!(
                self.sims[q].windows(2).all(|w| w[0] < w[1]),
                "dimension {q} is not sorted/deduplicated"
            );
            for s in &self.sims[q] {
                assert_eq!(s.dim(), q);
                if q > 0 {
                    for f in s.facets() {
                        assert!(self.contains(&f), "missing face {f:?} of {s:?}");
                    }
                }
            }
        }
    }
}

impl Simplex {
    fn facets_or_empty(&self) -> Vec<Simplex> {
        if self.dim() == 0 {
            Vec::new()
        } else {
            self.facets()
        }
    }
}

/// Builds the simplicial representation of a picture: the flag complex
/// of the 14-adjacency graph on the black points, truncated at
/// dimension 3.
///
/// Asserts two geometric invariants of the BCC grid on the result: no
/// five black points are pairwise adjacent, and every tetrahedron has
/// affinely independent vertices.
pub fn build_representation(picture: &DigitalPicture) -> SimplicialComplex {
    let points = picture.points();
    let n = points.len();
    let index: HashMap<BccPoint, u32> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();

    // Forward adjacency: neighbours with a larger index.
    let mut above: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, &p) in points.iter().enumerate() {
        for q in neighbors14_bcc(p) {
            if let Some(&j) = index.get(&q) {
                if j > i as u32 {
                    above[i].push(j);
                }
            }
        }
        above[i].sort_unstable();
    }

    let mut sims: [Vec<Simplex>; 4] = Default::default();
    sims[0] = (0..n as u32).map(Simplex::vertex).collect();
    for i in 0..n as u32 {
        for &j in &above[i as usize] {
            sims[1].push(Simplex::new(&[i, j]));
            let common_ij: Vec<u32> = intersect_sorted(&above[i as usize], &above[j as usize]);
            for &k in &common_ij {
                sims[2].push(Simplex::new(&[i, j, k]));
                let common_ijk = intersect_sorted(&common_ij, &above[k as usize]);
                for &l in &common_ijk {
                    sims[3].push(Simplex::new(&[i, j, k, l]));
                    assert!(
                        intersect_sorted(&common_ijk, &above[l as usize]).is_empty(),
                        "five pairwise-adjacent black points at <{i},{j},{k},{l}>"
                    );
                }
            }
        }
    }
    for block in &mut sims {
        block.sort_unstable();
        debug_assert!(block.windows(2).all(|w| w[0] < w[1]));
    }

    let complex = SimplicialComplex {
        vertex_table: VertexTable::Points(points.to_vec()),
        sims,
    };
    for t in complex.simplices(3) {
        assert!(
            tetra_is_affinely_independent(&complex, t),
            "degenerate tetrahedron {t:?}"
        );
    }
    complex
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn tetra_is_affinely_independent(k: &SimplicialComplex, t: &Simplex) -> bool {
    let vs = t.vertices();
    let p0 = match k.vertex_point(vs[0]) {
        Some(p) => p,
        None => return true, // labelled complexes carry no geometry
    };
    let e: Vec<[i64; 3]> = vs[1..]
        .iter()
        .map(|&v| {
            let p = k.vertex_point(v).unwrap();
            [
                (p.a - p0.a) as i64,
                (p.b - p0.b) as i64,
                (p.c - p0.c) as i64,
            ]
        })
        .collect();
    let det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
        - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
        + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
    det != 0
}

/// A total order on the simplices of a complex in which every prefix is
/// a subcomplex (each face precedes its cofaces).
#[derive(Clone, Debug)]
pub struct Filtration {
    order: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl Filtration {
    /// Validates the prefix-subcomplex property.
    pub fn new(complex: &SimplicialComplex, order: Vec<Simplex>) -> Result<Self, FiltrationError> {
        if order.len() != complex.total() {
            return Err(FiltrationError::WrongLength {
                got: order.len(),
                want: complex.total(),
            });
        }
        let mut index = HashMap::with_capacity(order.len());
        for (i, s) in order.iter().enumerate() {
            if !complex.contains(s) {
                return Err(FiltrationError::UnknownSimplex(format!("{s:?}")));
            }
            if index.insert(*s, i).is_some() {
                return Err(FiltrationError::Duplicate(format!("{s:?}")));
            }
        }
        for s in &order {
            if s.dim() > 0 {
                for f in s.facets() {
                    if index[&f] > index[s] {
                        return Err(FiltrationError::FaceAfterCoface {
                            face: format!("{f:?}"),
                            coface: format!("{s:?}"),
                        });
                    }
                }
            }
        }
        Ok(Self { order, index })
    }

    pub fn order(&self) -> &[Simplex] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("filtration has {got} simplices, complex has {want}")]
    WrongLength { got: usize, want: usize },
    #[error("filtration lists {0} which is not in the complex")]
    UnknownSimplex(String),
    #[error("filtration lists {0} twice")]
    Duplicate(String),
    #[error("face {face} ordered after its coface {coface}")]
    FaceAfterCoface { face: String, coface: String },
}

/// Dimension-ascending, lexicographic filtration. Faces have strictly
/// smaller dimension, so every prefix is a subcomplex.
pub fn default_filtration(complex: &SimplicialComplex) -> Filtration {
    let order: Vec<Simplex> = complex.iter_all().copied().collect();
    Filtration::new(complex, order).expect("canonical order is a filtration")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_point_picture() -> DigitalPicture {
        DigitalPicture::from_bcc_points([
            BccPoint::of(-1, -1, 1),
            BccPoint::of(-1, 1, 1),
            BccPoint::of(0, 0, 0),
            BccPoint::of(0, 0, 2),
            BccPoint::of(0, 2, 0),
        ])
    }

    #[test]
    fn five_point_picture_maximal_simplices() {
        let k = build_representation(&five_point_picture());
        // lexicographic point order: v0..v4 map to indices 0..4
        let maximal: BTreeSet<Simplex> = k.maximal_simplices().into_iter().collect();
        let want: BTreeSet<Simplex> = [Simplex::new(&[0, 1, 2, 3]), Simplex::new(&[1, 2, 4])]
            .into_iter()
            .collect();
        assert_eq!(maximal, want);
    }

    #[test]
    fn five_point_picture_counts_by_clique_enumeration() {
        let k = build_representation(&five_point_picture());
        // faces of the tetrahedron plus the extra triangle's edges/vertex
        assert_eq!(k.counts(), [5, 8, 5, 1]);
        k.validate();
    }

    #[test]
    fn empty_and_singleton_pictures() {
        let empty = build_representation(&DigitalPicture::empty());
        assert!(empty.is_empty());
        let one = build_representation(&DigitalPicture::from_bcc_points([BccPoint::of(0, 0, 0)]));
        assert_eq!(one.counts(), [1, 0, 0, 0]);
    }

    #[test]
    fn facets_of_small_simplices() {
        let t = Simplex::new(&[1, 2, 3]);
        assert_eq!(
            t.facets(),
            vec![
                Simplex::new(&[2, 3]),
                Simplex::new(&[1, 3]),
                Simplex::new(&[1, 2])
            ]
        );
        assert_eq!(
            Simplex::new(&[1, 2]).facets(),
            vec![Simplex::vertex(2), Simplex::vertex(1)]
        );
        assert_eq!(Simplex::new(&[0, 1, 2, 3]).facets().len(), 4);
    }

    #[test]
    #[should_panic]
    fn facets_of_vertex_panics() {
        Simplex::vertex(0).facets();
    }

    #[test]
    fn classify_two_triangles_with_pendants() {
        let l = SimplicialComplex::from_maximal_labels(&[
            vec![1, 5],
            vec![2, 5],
            vec![1, 2, 3],
            vec![2, 3, 4],
        ]);
        let s = |labels: &[i64]| l.simplex_by_labels(labels).unwrap();
        assert_eq!(l.classify(&s(&[2, 3])), SimplexClass::Shared);
        assert_eq!(l.classify(&s(&[1, 2])), SimplexClass::Free);
        assert_eq!(l.classify(&s(&[1, 2, 3])), SimplexClass::Maximal);
    }

    #[test]
    fn default_filtration_order_and_validity() {
        let k = SimplicialComplex::from_maximal_labels(&[vec![1, 2]]);
        let f = default_filtration(&k);
        let names: Vec<_> = f.order().iter().map(|s| format!("{s:?}")).collect();
        assert_eq!(names, vec!["<0>", "<1>", "<0,1>"]);

        let kj = build_representation(&five_point_picture());
        let fj = default_filtration(&kj);
        assert_eq!(fj.len(), 19);
        // block structure: dimensions ascending
        let dims: Vec<usize> = fj.order().iter().map(|s| s.dim()).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn filtration_rejects_face_after_coface() {
        let k = SimplicialComplex::from_maximal_labels(&[vec![1, 2]]);
        let bad = vec![
            k.simplex_by_labels(&[1]).unwrap(),
            k.simplex_by_labels(&[1, 2]).unwrap(),
            k.simplex_by_labels(&[2]).unwrap(),
        ];
        assert!(matches!(
            Filtration::new(&k, bad),
            Err(FiltrationError::FaceAfterCoface { .. })
        ));
    }

    #[test]
    fn representation_is_symmetric_under_grid_motions() {
        use crate::grid::BccSymmetry;
        let pic = five_point_picture();
        let sym = BccSymmetry::new([1, 2, 0], [1, -1, 1], BccPoint::of(2, 2, -2));
        let moved = pic.transformed(&sym);
        let k1 = build_representation(&pic);
        let k2 = build_representation(&moved);
        assert_eq!(k1.counts(), k2.counts());
    }
}
