//! The cup product on cohomology classes and the HB1 invariant.
//!
//! Given a contraction `(f, g, φ)` of `C(K)` onto a generator complex
//! `H`, the cochain `α*f` represents the cohomology class of a
//! generator `α`, and the product of two dimension-1 classes can be
//! read off against the dimension-2 generators. Collecting the values
//! for all unordered pairs of dimension-1 generators gives a GF(2)
//! matrix whose rank is the invariant HB1.
//!
//! The `f⊙f` accumulation keeps ordered pairs distinct: merging
//! `(αᵢ,αⱼ)` with `(αⱼ,αᵢ)` during the sum would cancel exactly the
//! symmetric contributions the matrix is made of.

use crate::chains::{cup, evaluate, Chain, Cochain};
use crate::contraction::ChainContraction;
use crate::simplicial::Simplex;
use serde::Serialize;
use std::collections::BTreeSet;

/// A Z/2 combination of ordered pairs of dimension-1 generators,
/// indexed into the generator list; `(i, j)` and `(j, i)` are distinct
/// keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderedPairChain {
    pairs: BTreeSet<(usize, usize)>,
}

impl OrderedPairChain {
    pub fn toggle(&mut self, i: usize, j: usize) {
        if !self.pairs.remove(&(i, j)) {
            self.pairs.insert((i, j));
        }
    }

    pub fn coefficient(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.pairs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Representative cocycle `α*f` of the class of generator `α`: the
/// simplices whose `f`-image contains `α`. Panics if `α` is not a
/// generator of the contraction's target.
pub fn cocycle_of(alpha: &Simplex, contraction: &ChainContraction) -> Cochain {
    let h = contraction
        .homology()
        .expect("cocycle_of needs a contraction onto homology");
    assert!(h.contains(alpha), "{alpha:?} is not a generator");
    let complex = contraction.source();
    Chain::from_simplices(
        complex
            .simplices(alpha.dim())
            .iter()
            .filter(|s| contraction.f_of(s).contains(alpha))
            .copied(),
    )
}

/// Cup product of the classes of two dimension-1 generators, expressed
/// over the dimension-2 generators: the coefficient of `αₖ` is
/// `(α*f ⌣ β*f) g(αₖ)`.
pub fn cup_classes(alpha: &Simplex, beta: &Simplex, contraction: &ChainContraction) -> Chain {
    assert_eq!(alpha.dim(), 1, "cup_classes takes dimension-1 generators");
    assert_eq!(beta.dim(), 1, "cup_classes takes dimension-1 generators");
    let h = contraction
        .homology()
        .expect("cup_classes needs a contraction onto homology");
    let complex = contraction.source();
    let product = cup(
        &cocycle_of(alpha, contraction),
        &cocycle_of(beta, contraction),
        complex,
    );
    let mut out = Chain::zero();
    for gamma in h.of_dim(2) {
        let rep = contraction.g_of(&gamma);
        if !product.is_zero() && evaluate(&product, &rep) {
            out.toggle(gamma);
        }
    }
    out
}

/// `(f⊙f)(x)` for a 2-chain `x`: for every simplex `⟨v0,v1,v2⟩` of `x`,
/// accumulate all ordered pairs `(αᵢ, αⱼ)` with `αᵢ` in the `f`-image
/// of the front edge and `αⱼ` in that of the back edge.
pub fn f_odot_f(
    x: &Chain,
    contraction: &ChainContraction,
    one_generators: &[Simplex],
) -> OrderedPairChain {
    let index = |g: &Simplex| -> usize {
        one_generators
            .iter()
            .position(|c| c == g)
            .expect("f-image lies in the dimension-1 generators")
    };
    let mut out = OrderedPairChain::default();
    for s in x.iter() {
        assert_eq!(s.dim(), 2, "f_odot_f takes a 2-chain");
        let front = contraction.f_of(&s.front_face(1));
        let back = contraction.f_of(&s.back_face(1));
        for a in front.iter() {
            for b in back.iter() {
                out.toggle(index(a), index(b));
            }
        }
    }
    out
}

/// The cup-product matrix: rows are dimension-2 generators, columns are
/// unordered pairs `(αⱼ, αₖ)`, `j ≤ k`, of dimension-1 generators, in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct CupMatrix {
    one_generators: Vec<Simplex>,
    two_generators: Vec<Simplex>,
    columns: Vec<(usize, usize)>,
    rows: Vec<Vec<u64>>,
}

impl CupMatrix {
    pub fn one_generators(&self) -> &[Simplex] {
        &self.one_generators
    }

    pub fn two_generators(&self) -> &[Simplex] {
        &self.two_generators
    }

    /// Column pairs as indices into `one_generators()`.
    pub fn columns(&self) -> &[(usize, usize)] {
        &self.columns
    }

    pub fn n_rows(&self) -> usize {
        self.two_generators.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.rows[row][col / 64] >> (col % 64) & 1 == 1
    }

    pub fn row_bits(&self, row: usize) -> Vec<bool> {
        (0..self.n_cols()).map(|c| self.entry(row, c)).collect()
    }

    /// GF(2) rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n_cols() {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[word] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(pivot_row.iter()) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Builds the cup matrix of a contraction onto homology: row `i` is
/// `(f⊙f) g(βᵢ)` read off on unordered pairs. The ordered coefficients
/// of `(αⱼ,αₖ)` and `(αₖ,αⱼ)` are asserted equal for every entry.
pub fn cup_matrix(contraction: &ChainContraction) -> CupMatrix {
    let h = contraction
        .homology()
        .expect("cup_matrix needs a contraction onto homology");
    let one_generators = h.of_dim(1);
    let two_generators = h.of_dim(2);
    let p = one_generators.len();
    let mut columns = Vec::with_capacity(p * (p + 1) / 2);
    for j in 0..p {
        for k in j..p {
            columns.push((j, k));
        }
    }
    let words = columns.len().div_ceil(64);
    let mut rows = Vec::with_capacity(two_generators.len());
    for beta in &two_generators {
        let pairs = f_odot_f(&contraction.g_of(beta), contraction, &one_generators);
        for &(i, j) in pairs.iter() {
            assert_eq!(
                pairs.coefficient(i, j),
                pairs.coefficient(j, i),
                "asymmetric ordered coefficients for ({i},{j}) in row {beta:?}"
            );
        }
        let mut row = vec![0u64; words];
        for (col, &(j, k)) in columns.iter().enumerate() {
            if pairs.coefficient(j, k) {
                row[col / 64] |= 1 << (col % 64);
            }
        }
        rows.push(row);
    }
    CupMatrix {
        one_generators,
        two_generators,
        columns,
        rows,
    }
}

/// HB1: the GF(2) rank of the cup matrix.
pub fn hb1(matrix: &CupMatrix) -> usize {
    matrix.rank()
}

/// Checks every matrix entry against the direct per-pair computation of
/// [`cup_classes`]. Used by the test suites.
pub fn cup_matrix_agrees_with_classes(matrix: &CupMatrix, contraction: &ChainContraction) -> bool {
    for (col, &(j, k)) in matrix.columns().iter().enumerate() {
        let product = cup_classes(
            &matrix.one_generators()[j],
            &matrix.one_generators()[k],
            contraction,
        );
        for (row, beta) in matrix.two_generators().iter().enumerate() {
            if matrix.entry(row, col) != product.contains(beta) {
                return false;
            }
        }
    }
    true
}

/// Serializable form of the matrix with named generators.
#[derive(Debug, Serialize)]
pub struct CupMatrixDoc {
    pub rows: Vec<String>,
    pub columns: Vec<[String; 2]>,
    pub bits: Vec<String>,
    pub rank: usize,
}

impl CupMatrix {
    pub fn to_document(&self, name: impl Fn(&Simplex) -> String) -> CupMatrixDoc {
        CupMatrixDoc {
            rows: self.two_generators.iter().map(&name).collect(),
            columns: self
                .columns
                .iter()
                .map(|&(j, k)| [name(&self.one_generators[j]), name(&self.one_generators[k])])
                .collect(),
            bits: (0..self.n_rows())
                .map(|r| {
                    self.row_bits(r)
                        .iter()
                        .map(|&b| if b { '1' } else { '0' })
                        .collect()
                })
                .collect(),
            rank: self.rank(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algthin::{algebraic_thinning, full_pipeline};
    use crate::chains::coboundary;
    use crate::simplicial::{default_filtration, SimplicialComplex};
    use std::sync::Arc;

    fn torus9() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::from_maximal_labels(&[
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
        ]))
    }

    #[test]
    fn torus_cup_matrix_is_0_1_0() {
        let k = torus9();
        let out = full_pipeline(Arc::clone(&k), true);
        assert_eq!(out.betti().0, [1, 2, 1, 0]);
        let m = cup_matrix(&out.to_homology);
        assert_eq!(m.n_rows(), 1);
        assert_eq!(m.n_cols(), 3);
        assert_eq!(m.row_bits(0), vec![false, true, false]);
        assert_eq!(hb1(&m), 1);
        assert!(cup_matrix_agrees_with_classes(&m, &out.to_homology));
    }

    #[test]
    fn torus_cup_matrix_without_thinning_agrees() {
        let k = torus9();
        let thin = full_pipeline(Arc::clone(&k), true);
        let raw = full_pipeline(k, false);
        let m1 = cup_matrix(&thin.to_homology);
        let m2 = cup_matrix(&raw.to_homology);
        assert_eq!(hb1(&m1), hb1(&m2));

        // the thinned-level contraction and the composite give the
        // same matrix entry for entry: the collapse g is an inclusion
        let m3 = cup_matrix(&thin.on_thinned);
        assert_eq!(m3.columns(), m1.columns());
        for r in 0..m1.n_rows() {
            assert_eq!(m3.row_bits(r), m1.row_bits(r));
        }
    }

    #[test]
    fn cocycles_of_generators_are_cocycles() {
        let k = torus9();
        let filt = default_filtration(&k);
        let (h, c) = algebraic_thinning(&k, &filt);
        for alpha in h.generators() {
            let z = cocycle_of(alpha, &c);
            assert!(coboundary(&z, &k).is_zero(), "δ(α*f) ≠ 0 for {alpha:?}");
            // duality against representative cycles
            for alpha2 in h.generators() {
                if alpha2.dim() != alpha.dim() {
                    continue;
                }
                let rep = c.g_of(alpha2);
                assert_eq!(evaluate(&z, &rep), alpha == alpha2);
            }
        }
    }

    #[test]
    fn f_odot_f_on_torus_representative() {
        let k = torus9();
        let out = full_pipeline(Arc::clone(&k), true);
        let h = out.to_homology.homology().unwrap();
        let ones = h.of_dim(1);
        let beta = h.of_dim(2)[0];
        let pairs = f_odot_f(&out.to_homology.g_of(&beta), &out.to_homology, &ones);
        let got: Vec<(usize, usize)> = pairs.iter().copied().collect();
        assert_eq!(got, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn homologous_torus_cycles_share_a_class() {
        let k = torus9();
        let out = full_pipeline(Arc::clone(&k), true);
        let chain = |sims: &[&[i64]]| {
            Chain::from_simplices(sims.iter().map(|ls| k.simplex_by_labels(ls).unwrap()))
        };
        let a = chain(&[&[3, 7], &[7, 9], &[3, 9]]);
        let b = chain(&[&[3, 7], &[6, 7], &[6, 8], &[8, 9], &[3, 9]]);
        let class_a = out.to_homology.homology_class(&a).unwrap();
        let class_b = out.to_homology.homology_class(&b).unwrap();
        assert_eq!(class_a, class_b);
        assert!(!class_a.is_zero(), "essential loop");

        // an essential cycle is not a boundary
        use crate::contraction::ContractionError;
        assert!(matches!(
            out.to_homology.fill_boundary(&a),
            Err(ContractionError::NotABoundary)
        ));
        // and a non-cycle is rejected outright
        let not_cycle = chain(&[&[3, 7]]);
        assert!(matches!(
            out.to_homology.homology_class(&not_cycle),
            Err(ContractionError::NotACycle)
        ));
    }

    #[test]
    fn cup_is_commutative_at_class_level() {
        let k = torus9();
        let out = full_pipeline(k, true);
        let h = out.to_homology.homology().unwrap();
        let ones = h.of_dim(1);
        for a in &ones {
            for b in &ones {
                assert_eq!(
                    cup_classes(a, b, &out.to_homology),
                    cup_classes(b, a, &out.to_homology)
                );
            }
        }
    }

    #[test]
    fn contractible_complex_has_empty_matrix() {
        let k = Arc::new(SimplicialComplex::from_maximal_labels(&[vec![1, 2, 3, 4]]));
        let out = full_pipeline(k, true);
        let m = cup_matrix(&out.to_homology);
        assert_eq!(m.n_rows(), 0);
        assert_eq!(hb1(&m), 0);
    }

    #[test]
    fn ordered_pair_chain_keeps_orders_distinct() {
        let mut c = OrderedPairChain::default();
        c.toggle(0, 1);
        c.toggle(1, 0);
        assert!(c.coefficient(0, 1));
        assert!(c.coefficient(1, 0));
        c.toggle(0, 1);
        assert!(!c.coefficient(0, 1));
        assert!(c.coefficient(1, 0));
    }
}
