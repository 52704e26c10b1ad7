//! Brute-force verification by dense GF(2) linear algebra.
//!
//! Betti numbers come straight from ranks of boundary matrices, and the
//! cup structure from bases of cocycles modulo coboundaries evaluated
//! against a basis of 2-cycles. Nothing here touches the contraction
//! machinery; the two routes must agree and the test suites check that
//! they do.
//!
//! Dense matrices cap the usable size; the default cap suits the
//! desk-size complexes the rest of the crate is verified on.

use crate::algthin::Betti;
use crate::simplicial::{SimplicialComplex, MAX_DIM};

pub const DEFAULT_SIZE_CAP: usize = 5000;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("complex has {got} simplices, oracle cap is {cap}")]
    SizeCapExceeded { got: usize, cap: usize },
}

/// Dense bit vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                let i = w * 64 + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Dense GF(2) matrix, stored by rows.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i].set(j);
    }

    /// Matrix-vector product over GF(2); `x` indexes the columns.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        debug_assert_eq!(x.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = 0u64;
            for (a, b) in row.words.iter().zip(&x.words) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(i);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().0
    }

    /// Reduced row echelon form; returns (rank, pivots as (row, col), matrix).
    fn row_echelon(&self) -> (usize, Vec<(usize, usize)>, Vec<BitVec>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| m[i].get(col)) else {
                continue;
            };
            m.swap(r, p);
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push((r, col));
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (r, pivots, m)
    }

    /// A basis of `{x : Mx = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (_, pivots, m) = self.row_echelon();
        let mut is_pivot_col = vec![false; self.cols];
        for &(_, c) in &pivots {
            is_pivot_col[c] = true;
        }
        let mut basis = Vec::new();
        for (free, _) in is_pivot_col.iter().enumerate().filter(|(_, p)| !**p) {
            let mut x = BitVec::zeros(self.cols);
            x.set(free);
            for &(r, c) in &pivots {
                if m[r].get(free) {
                    x.set(c);
                }
            }
            basis.push(x);
        }
        basis
    }
}

/// Incremental GF(2) basis: vectors are reduced against the pivots
/// collected so far and kept only when independent.
#[derive(Default)]
struct GaussBasis {
    /// (pivot bit, reduced vector) sorted by insertion.
    pivots: Vec<(usize, BitVec)>,
}

impl GaussBasis {
    fn try_insert(&mut self, mut v: BitVec) -> bool {
        loop {
            let Some(lead) = v.first_one() else {
                return false;
            };
            match self.pivots.iter().find(|(p, _)| *p == lead) {
                Some((_, basis_vec)) => v.xor_assign(&basis_vec.clone()),
                None => {
                    self.pivots.push((lead, v));
                    return true;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// The matrix of `∂_q` in the canonical simplex bases: rows are
/// `(q-1)`-simplices, columns are `q`-simplices.
pub fn boundary_matrix(complex: &SimplicialComplex, q: usize) -> BitMatrix {
    assert!((1..=MAX_DIM).contains(&q));
    let mut m = BitMatrix::zeros(complex.count(q - 1), complex.count(q));
    for (j, s) in complex.simplices(q).iter().enumerate() {
        for facet in s.facets() {
            let i = complex.index_of(&facet).expect("complex is face-closed");
            m.set(i, j);
        }
    }
    m
}

fn check_cap(complex: &SimplicialComplex, cap: usize) -> Result<(), OracleError> {
    let got = complex.total();
    if got > cap {
        return Err(OracleError::SizeCapExceeded { got, cap });
    }
    Ok(())
}

/// Betti numbers over Z/2 as `dim ker ∂_q − rank ∂_{q+1}`, by dense
/// elimination.
pub fn betti_oracle_capped(complex: &SimplicialComplex, cap: usize) -> Result<Betti, OracleError> {
    check_cap(complex, cap)?;
    let ranks: Vec<usize> = (1..=MAX_DIM)
        .map(|q| {
            if complex.count(q) == 0 {
                0
            } else {
                boundary_matrix(complex, q).rank()
            }
        })
        .collect();
    let rank_d = |q: usize| -> usize {
        if q == 0 || q > MAX_DIM {
            0
        } else {
            ranks[q - 1]
        }
    };
    let mut b = [0usize; 4];
    for (q, slot) in b.iter_mut().enumerate() {
        let n = complex.count(q);
        *slot = n - rank_d(q) - rank_d(q + 1);
    }
    Ok(Betti(b))
}

pub fn betti_oracle(complex: &SimplicialComplex) -> Result<Betti, OracleError> {
    betti_oracle_capped(complex, DEFAULT_SIZE_CAP)
}

/// Cup form computed without contractions.
#[derive(Debug)]
pub struct CupOracle {
    /// Chosen 1-cocycle representatives, as edge-index vectors.
    pub h1_basis: Vec<BitVec>,
    /// Chosen 2-cycle representatives, as triangle-index vectors.
    pub h2_basis: Vec<BitVec>,
    /// Rows: `h2_basis` entries; columns: unordered pairs `j ≤ k` of
    /// `h1_basis` entries, lexicographic.
    pub matrix: Vec<Vec<bool>>,
    pub rank: usize,
}

/// Computes a basis of 1-cocycles modulo coboundaries and a basis of
/// 2-cycles modulo boundaries by elimination, then evaluates the
/// cochain-level cup product of every basis pair against every basis
/// cycle. The rank equals HB1 (bases differ from the pipeline's; rank
/// is basis-invariant).
pub fn cohomology_cup_oracle_capped(
    complex: &SimplicialComplex,
    cap: usize,
) -> Result<CupOracle, OracleError> {
    check_cap(complex, cap)?;
    let n_edges = complex.count(1);
    let n_tris = complex.count(2);

    // δ1 as a matrix on edge-vectors: rows triangles, columns edges.
    let mut delta1 = BitMatrix::zeros(n_tris, n_edges);
    for (i, t) in complex.simplices(2).iter().enumerate() {
        for e in t.facets() {
            delta1.set(i, complex.index_of(&e).unwrap());
        }
    }
    // Coboundaries of vertices, as edge-vectors.
    let mut coboundaries: Vec<BitVec> = Vec::with_capacity(complex.count(0));
    for v in complex.simplices(0) {
        let mut col = BitVec::zeros(n_edges);
        for (j, e) in complex.simplices(1).iter().enumerate() {
            if v.is_face_of(e) {
                col.set(j);
            }
        }
        coboundaries.push(col);
    }

    let mut basis = GaussBasis::default();
    for c in coboundaries {
        basis.try_insert(c);
    }
    let mut h1_basis = Vec::new();
    for z in delta1.kernel_basis() {
        if basis.try_insert(z.clone()) {
            h1_basis.push(z);
        }
    }

    // 2-cycles modulo boundaries of 3-chains.
    let mut h2_basis = Vec::new();
    if n_tris > 0 {
        let d2 = boundary_matrix(complex, 2);
        let mut basis2 = GaussBasis::default();
        if complex.count(3) > 0 {
            let d3 = boundary_matrix(complex, 3);
            for j in 0..d3.cols() {
                let mut col = BitVec::zeros(n_tris);
                for i in 0..n_tris {
                    if d3.get(i, j) {
                        col.set(i);
                    }
                }
                basis2.try_insert(col);
            }
        }
        for z in d2.kernel_basis() {
            if basis2.try_insert(z.clone()) {
                h2_basis.push(z);
            }
        }
    }

    // Front/back edge index of every triangle under the vertex order.
    let edge_pairs: Vec<(usize, usize)> = complex
        .simplices(2)
        .iter()
        .map(|t| {
            let front = complex.index_of(&t.front_face(1)).unwrap();
            let back = complex.index_of(&t.back_face(1)).unwrap();
            (front, back)
        })
        .collect();

    let p = h1_basis.len();
    let mut matrix = Vec::with_capacity(h2_basis.len());
    let mut rank_rows = GaussBasis::default();
    let mut n_pairs = 0;
    for z in &h2_basis {
        let mut row = Vec::new();
        for j in 0..p {
            for k in j..p {
                let mut val = false;
                for t in z.ones() {
                    let (fe, be) = edge_pairs[t];
                    val ^= h1_basis[j].get(fe) & h1_basis[k].get(be);
                }
                row.push(val);
            }
        }
        n_pairs = row.len();
        matrix.push(row);
    }
    for row in &matrix {
        let mut v = BitVec::zeros(n_pairs.max(1));
        for (i, &b) in row.iter().enumerate() {
            if b {
                v.set(i);
            }
        }
        rank_rows.try_insert(v);
    }

    Ok(CupOracle {
        h1_basis,
        h2_basis,
        matrix,
        rank: rank_rows.rank(),
    })
}

pub fn cohomology_cup_oracle(complex: &SimplicialComplex) -> Result<CupOracle, OracleError> {
    cohomology_cup_oracle_capped(complex, DEFAULT_SIZE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialComplex;

    fn sphere2() -> SimplicialComplex {
        SimplicialComplex::from_maximal_labels(&[
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ])
    }

    fn torus9() -> SimplicialComplex {
        SimplicialComplex::from_maximal_labels(&[
            vec![3, 6, 7],
            vec![6, 7, 8],
            vec![7, 8, 9],
            vec![2, 8, 9],
            vec![2, 3, 9],
            vec![2, 3, 6],
            vec![5, 6, 8],
            vec![1, 5, 8],
            vec![1, 2, 8],
            vec![1, 2, 4],
            vec![2, 4, 6],
            vec![4, 5, 6],
            vec![1, 3, 5],
            vec![1, 3, 7],
            vec![1, 4, 7],
            vec![4, 7, 9],
            vec![4, 5, 9],
            vec![3, 5, 9],
        ])
    }

    #[test]
    fn betti_of_kite_complex() {
        let k = SimplicialComplex::from_maximal_labels(&[vec![2, 3, 4], vec![1, 2], vec![1, 4]]);
        assert_eq!(betti_oracle(&k).unwrap().0, [1, 1, 0, 0]);
    }

    #[test]
    fn betti_of_sphere() {
        assert_eq!(betti_oracle(&sphere2()).unwrap().0, [1, 0, 1, 0]);
    }

    #[test]
    fn betti_of_torus() {
        assert_eq!(betti_oracle(&torus9()).unwrap().0, [1, 2, 1, 0]);
    }

    #[test]
    fn boundary_matrices_compose_to_zero() {
        let k = torus9();
        let d1 = boundary_matrix(&k, 1);
        let d2 = boundary_matrix(&k, 2);
        for j in 0..d2.cols() {
            let mut col = BitVec::zeros(d2.rows());
            for i in 0..d2.rows() {
                if d2.get(i, j) {
                    col.set(i);
                }
            }
            assert!(d1.mul_vec(&col).is_zero());
        }
    }

    #[test]
    fn torus_cup_rank_is_one() {
        let oracle = cohomology_cup_oracle(&torus9()).unwrap();
        assert_eq!(oracle.h1_basis.len(), 2);
        assert_eq!(oracle.h2_basis.len(), 1);
        assert_eq!(oracle.rank, 1);
    }

    #[test]
    fn sphere_cup_rank_is_zero() {
        let oracle = cohomology_cup_oracle(&sphere2()).unwrap();
        assert_eq!(oracle.h1_basis.len(), 0);
        assert_eq!(oracle.h2_basis.len(), 1);
        assert_eq!(oracle.rank, 0);
    }

    #[test]
    fn contractible_complex_cup_is_empty() {
        let k = SimplicialComplex::from_maximal_labels(&[vec![1, 2, 3, 4]]);
        let oracle = cohomology_cup_oracle(&k).unwrap();
        assert!(oracle.matrix.is_empty());
        assert_eq!(oracle.rank, 0);
    }

    #[test]
    fn betti_of_three_sphere() {
        // boundary of the 4-simplex: all five tetrahedra on {1..5}
        let k = SimplicialComplex::from_maximal_labels(&[
            vec![1, 2, 3, 4],
            vec![1, 2, 3, 5],
            vec![1, 2, 4, 5],
            vec![1, 3, 4, 5],
            vec![2, 3, 4, 5],
        ]);
        assert_eq!(betti_oracle(&k).unwrap().0, [1, 0, 0, 1]);
        let pipeline = crate::algthin::full_pipeline(std::sync::Arc::new(k), true);
        assert_eq!(pipeline.betti().0, [1, 0, 0, 1]);
        assert!(pipeline.to_homology.verify().passed());
    }

    #[test]
    fn size_cap_is_enforced() {
        let k = torus9();
        assert!(matches!(
            betti_oracle_capped(&k, 10),
            Err(OracleError::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let k = torus9();
        let d2 = boundary_matrix(&k, 2);
        for v in d2.kernel_basis() {
            assert!(d2.mul_vec(&v).is_zero());
        }
        // kernel dimension: cols - rank
        assert_eq!(d2.kernel_basis().len(), d2.cols() - d2.rank());
    }
}
