//! Topological thinning by simplicial collapses.
//!
//! An elementary collapse removes a pair `(σ′, σ)` where `σ′` is a free
//! facet (its only proper coface is `σ`, which is then maximal).
//! Repeating until no maximal simplex has a free facet yields the
//! thinned complex; the removal sequence induces an explicit chain
//! contraction of the original chain complex onto the thinned one.
//!
//! Scan order is deterministic: at every step the collapsed pair is the
//! first maximal-with-free-facet simplex in (dimension descending,
//! lexicographic ascending) order, paired with its lexicographically
//! smallest free facet.

use crate::chains::{boundary, Chain};
use crate::contraction::{ChainContraction, Target};
use crate::simplicial::{Simplex, SimplicialComplex};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

/// The collapsed pairs, stored most-recent-first: `pairs()[0]` is the
/// last collapse performed. [`CollapseSequence::chronological`] walks
/// them in removal order.
#[derive(Clone, Debug, Default)]
pub struct CollapseSequence {
    pairs: Vec<(Simplex, Simplex)>,
}

impl CollapseSequence {
    /// `(free facet, coface)` pairs, last collapse first.
    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in the order the collapses were performed.
    pub fn chronological(&self) -> impl Iterator<Item = &(Simplex, Simplex)> {
        self.pairs.iter().rev()
    }
}

/// Orders simplices by dimension descending, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq)]
struct ScanKey(Simplex);

impl Ord for ScanKey {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .dim()
            .cmp(&self.0.dim())
            .then_with(|| self.0.vertices().cmp(other.0.vertices()))
    }
}

impl PartialOrd for ScanKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct CollapseState {
    simplices: Vec<Simplex>,
    id_of: HashMap<Simplex, usize>,
    /// Indices of the (dim+1)-simplices containing each simplex.
    cofacet_lists: Vec<Vec<usize>>,
    alive_cofacets: Vec<u32>,
    alive: Vec<bool>,
}

impl CollapseState {
    fn new(complex: &SimplicialComplex) -> Self {
        let simplices: Vec<Simplex> = complex.iter_all().copied().collect();
        let id_of: HashMap<Simplex, usize> =
            simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut cofacet_lists: Vec<Vec<usize>> = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            if s.dim() > 0 {
                for facet in s.facets() {
                    cofacet_lists[id_of[&facet]].push(i);
                }
            }
        }
        let alive_cofacets = cofacet_lists.iter().map(|l| l.len() as u32).collect();
        Self {
            alive: vec![true; simplices.len()],
            simplices,
            id_of,
            cofacet_lists,
            alive_cofacets,
        }
    }

    fn is_maximal(&self, id: usize) -> bool {
        self.alive[id] && self.alive_cofacets[id] == 0
    }

    /// Lexicographically smallest facet whose only remaining coface is
    /// this simplex.
    fn smallest_free_facet(&self, id: usize) -> Option<Simplex> {
        let s = self.simplices[id];
        if s.dim() == 0 {
            return None;
        }
        s.facets()
            .into_iter()
            .filter(|f| self.alive_cofacets[self.id_of[f]] == 1)
            .min()
    }

    fn is_candidate(&self, id: usize) -> bool {
        self.is_maximal(id) && self.smallest_free_facet(id).is_some()
    }

    /// The unique live coface of a free simplex.
    fn sole_cofacet(&self, id: usize) -> Option<usize> {
        debug_assert_eq!(self.alive_cofacets[id], 1);
        self.cofacet_lists[id]
            .iter()
            .copied()
            .find(|&c| self.alive[c])
    }
}

/// Runs the collapse loop to exhaustion. Returns the thinned complex
/// (no maximal simplex retains a free facet) and the removal sequence.
pub fn collapse(complex: &SimplicialComplex) -> (SimplicialComplex, CollapseSequence) {
    let mut st = CollapseState::new(complex);
    let mut candidates: BTreeSet<ScanKey> = (0..st.simplices.len())
        .filter(|&i| st.is_candidate(i))
        .map(|i| ScanKey(st.simplices[i]))
        .collect();
    let mut chronological: Vec<(Simplex, Simplex)> = Vec::new();

    while let Some(&ScanKey(top)) = candidates.iter().next() {
        let top_id = st.id_of[&top];
        let Some(facet) = (st.is_maximal(top_id))
            .then(|| st.smallest_free_facet(top_id))
            .flatten()
        else {
            // stale entry; counts changed since insertion
            candidates.remove(&ScanKey(top));
            continue;
        };
        let facet_id = st.id_of[&facet];
        st.alive[top_id] = false;
        st.alive[facet_id] = false;
        candidates.remove(&ScanKey(top));
        candidates.remove(&ScanKey(facet));
        chronological.push((facet, top));

        let mut touched: Vec<usize> = Vec::with_capacity(8);
        for s in [&top, &facet] {
            if s.dim() == 0 {
                continue;
            }
            for f in s.facets() {
                let fid = st.id_of[&f];
                if st.alive[fid] {
                    st.alive_cofacets[fid] -= 1;
                    touched.push(fid);
                }
            }
        }
        for fid in touched {
            match st.alive_cofacets[fid] {
                0 => {
                    if st.is_candidate(fid) {
                        candidates.insert(ScanKey(st.simplices[fid]));
                    }
                }
                1 => {
                    if let Some(coface) = st.sole_cofacet(fid) {
                        if st.is_candidate(coface) {
                            candidates.insert(ScanKey(st.simplices[coface]));
                        }
                    }
                }
                _ => {}
            }
        }
    }

    let keep: HashSet<Simplex> = st
        .simplices
        .iter()
        .enumerate()
        .filter(|(i, _)| st.alive[*i])
        .map(|(_, s)| *s)
        .collect();
    let thinned = complex.subcomplex(&keep);
    chronological.reverse();
    (
        thinned,
        CollapseSequence {
            pairs: chronological,
        },
    )
}

#[derive(Debug, thiserror::Error)]
pub enum CollapseSeqError {
    #[error("collapse pair references {0} which is not in the complex")]
    UnknownSimplex(String),
    #[error("collapse pair ({0}, {1}) is not a facet/coface pair")]
    NotAFacetPair(String, String),
}

/// Builds the contraction of `C(K)` onto `C(M_top K)` from a collapse
/// sequence, processing pairs most-recent-first so that the image of
/// `∂σ + σ′` is already defined when each pair is handled:
/// `f(σ′) := f(∂σ + σ′)`, `φ(σ′) := σ + φ(∂σ + σ′)`, `f(σ) := 0`,
/// with `g` the inclusion of the thinned complex.
pub fn collapse_contraction(
    complex: &Arc<SimplicialComplex>,
    thinned: &Arc<SimplicialComplex>,
    seq: &CollapseSequence,
) -> Result<ChainContraction, CollapseSeqError> {
    let mut f: HashMap<Simplex, Chain> = complex
        .iter_all()
        .map(|s| (*s, Chain::singleton(*s)))
        .collect();
    let mut phi: HashMap<Simplex, Chain> = HashMap::new();
    let g: HashMap<Simplex, Chain> = thinned
        .iter_all()
        .map(|s| (*s, Chain::singleton(*s)))
        .collect();

    let apply = |map: &HashMap<Simplex, Chain>, x: &Chain| -> Chain {
        let mut out = Chain::zero();
        for s in x.iter() {
            if let Some(img) = map.get(s) {
                out.add_assign(img);
            }
        }
        out
    };

    for (facet, top) in seq.pairs() {
        for s in [facet, top] {
            if !complex.contains(s) {
                return Err(CollapseSeqError::UnknownSimplex(format!("{s:?}")));
            }
        }
        if top.dim() != facet.dim() + 1 || !facet.is_face_of(top) {
            return Err(CollapseSeqError::NotAFacetPair(
                format!("{facet:?}"),
                format!("{top:?}"),
            ));
        }
        let mut rim = boundary(&Chain::singleton(*top));
        rim.toggle(*facet); // ∂σ + σ′
        let new_f = apply(&f, &rim);
        let new_phi = {
            let mut c = apply(&phi, &rim);
            c.toggle(*top);
            c
        };
        f.insert(*facet, new_f);
        if new_phi.is_zero() {
            phi.remove(facet);
        } else {
            phi.insert(*facet, new_phi);
        }
        f.remove(top);
    }

    Ok(ChainContraction::new(
        Arc::clone(complex),
        Target::Simplicial(Arc::clone(thinned)),
        f,
        g,
        phi,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Chain;
    use std::collections::BTreeSet;

    fn two_triangles_with_pendants() -> SimplicialComplex {
        SimplicialComplex::from_maximal_labels(&[
            vec![1, 5],
            vec![2, 5],
            vec![1, 2, 3],
            vec![2, 3, 4],
        ])
    }

    #[test]
    fn pendant_triangles_collapse_golden() {
        let l = two_triangles_with_pendants();
        let (thinned, seq) = collapse(&l);

        let s = |labels: &[i64]| l.simplex_by_labels(labels).unwrap();
        // only edges and vertices remain
        assert_eq!(thinned.counts(), [5, 5, 0, 0]);
        let edges: BTreeSet<Simplex> = thinned.simplices(1).iter().copied().collect();
        let want: BTreeSet<Simplex> = [s(&[1, 3]), s(&[3, 4]), s(&[2, 4]), s(&[1, 5]), s(&[2, 5])]
            .into_iter()
            .collect();
        assert_eq!(edges, want);

        // stored order is most-recent-first
        assert_eq!(
            seq.pairs(),
            &[(s(&[2, 3]), s(&[2, 3, 4])), (s(&[1, 2]), s(&[1, 2, 3])),]
        );
    }

    #[test]
    fn pendant_triangles_contraction_golden() {
        let l = Arc::new(two_triangles_with_pendants());
        let (thinned, seq) = collapse(&l);
        let thinned = Arc::new(thinned);
        let c = collapse_contraction(&l, &thinned, &seq).unwrap();

        let s = |labels: &[i64]| l.simplex_by_labels(labels).unwrap();
        let chain = |sims: &[&[i64]]| Chain::from_simplices(sims.iter().map(|ls| s(ls)));

        assert_eq!(c.f_of(&s(&[2, 3])), chain(&[&[2, 4], &[3, 4]]));
        assert_eq!(c.phi_of(&s(&[2, 3])), chain(&[&[2, 3, 4]]));
        assert_eq!(c.f_of(&s(&[1, 2])), chain(&[&[1, 3], &[2, 4], &[3, 4]]));
        assert_eq!(c.phi_of(&s(&[1, 2])), chain(&[&[1, 2, 3], &[2, 3, 4]]));
        assert!(c.f_of(&s(&[2, 3, 4])).is_zero());
        assert!(c.f_of(&s(&[1, 2, 3])).is_zero());

        let report = c.verify();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn replay_reproduces_thinned_complex() {
        let l = two_triangles_with_pendants();
        let (thinned, seq) = collapse(&l);
        let mut live: BTreeSet<Simplex> = l.iter_all().copied().collect();
        for (facet, top) in seq.chronological() {
            // each removed facet is free at its removal time
            let cofaces = live
                .iter()
                .filter(|t| facet.is_face_of(t) && **t != *facet)
                .count();
            assert_eq!(cofaces, 1, "{facet:?} not free when removed");
            assert!(live.remove(facet));
            assert!(live.remove(top));
        }
        let remaining: BTreeSet<Simplex> = thinned.iter_all().copied().collect();
        assert_eq!(live, remaining);
    }

    #[test]
    fn tetrahedron_collapses_to_a_point() {
        let k = SimplicialComplex::from_maximal_labels(&[vec![1, 2, 3, 4]]);
        let (thinned, seq) = collapse(&k);
        assert_eq!(thinned.counts(), [1, 0, 0, 0]);
        assert_eq!(seq.len(), 7);
    }

    #[test]
    fn tetrahedron_boundary_has_no_free_facets() {
        let k = SimplicialComplex::from_maximal_labels(&[
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ]);
        let (thinned, seq) = collapse(&k);
        assert!(seq.is_empty());
        assert_eq!(thinned.counts(), k.counts());
    }

    #[test]
    fn empty_sequence_gives_identity_contraction() {
        let k = Arc::new(SimplicialComplex::from_maximal_labels(&[
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ]));
        let (thinned, seq) = collapse(&k);
        let thinned = Arc::new(thinned);
        let c = collapse_contraction(&k, &thinned, &seq).unwrap();
        for s in k.iter_all() {
            assert_eq!(c.f_of(s), Chain::singleton(*s));
            assert!(c.phi_of(s).is_zero());
        }
        assert!(c.verify().passed());
    }

    #[test]
    fn inconsistent_sequence_rejected() {
        let k = Arc::new(two_triangles_with_pendants());
        let bogus = CollapseSequence {
            pairs: vec![(Simplex::new(&[7]), Simplex::new(&[7, 9]))],
        };
        let (thinned, _) = collapse(&k);
        let thinned = Arc::new(thinned);
        assert!(matches!(
            collapse_contraction(&k, &thinned, &bogus),
            Err(CollapseSeqError::UnknownSimplex(_))
        ));

        // a facet/coface mismatch is also rejected
        let s = |labels: &[i64]| k.simplex_by_labels(labels).unwrap();
        let mismatched = CollapseSequence {
            pairs: vec![(s(&[1, 5]), s(&[1, 2, 3]))],
        };
        assert!(matches!(
            collapse_contraction(&k, &thinned, &mismatched),
            Err(CollapseSeqError::NotAFacetPair(..))
        ));
    }
}
