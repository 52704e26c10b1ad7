//! Z/2 chains and cochains.
//!
//! A chain is a finite set of same-dimension simplices; addition is
//! symmetric difference and the empty set is zero. Cochains use the
//! same representation (the set of simplices on which they evaluate
//! to 1), so `Cochain` is an alias of [`Chain`].
//!
//! Supports are kept sorted so every downstream algorithm iterates
//! chains in one canonical order.

use crate::simplicial::{Simplex, SimplicialComplex};
use std::fmt;

/// A formal Z/2 sum of same-dimension simplices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Chain {
    support: Vec<Simplex>,
}

/// Dual functional with the same support representation.
pub type Cochain = Chain;

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(s: Simplex) -> Self {
        Self { support: vec![s] }
    }

    /// Builds a chain from simplices with Z/2 multiplicity (repeats
    /// cancel in pairs).
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(sims: I) -> Self {
        let mut c = Self::zero();
        for s in sims {
            c.toggle(s);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Common dimension of the support, `None` for the zero chain.
    pub fn dim(&self) -> Option<usize> {
        self.support.first().map(|s| s.dim())
    }

    pub fn support(&self) -> &[Simplex] {
        &self.support
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.support.iter()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.support.binary_search(s).is_ok()
    }

    /// Flips the coefficient of one simplex.
    pub fn toggle(&mut self, s: Simplex) {
        debug_assert!(
            self.support.is_empty() || self.support[0].dim() == s.dim(),
            "mixed dimensions in chain"
        );
        match self.support.binary_search(&s) {
            Ok(i) => {
                self.support.remove(i);
            }
            Err(i) => self.support.insert(i, s),
        }
    }

    /// Z/2 sum (symmetric difference of supports).
    pub fn add(&self, other: &Chain) -> Chain {
        debug_assert!(
            self.is_zero() || other.is_zero() || self.dim() == other.dim(),
            "mixed dimensions in chain sum"
        );
        let mut out = Vec::with_capacity(self.support.len() + other.support.len());
        let (a, b) = (&self.support, &other.support);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Chain { support: out }
    }

    pub fn add_assign(&mut self, other: &Chain) {
        *self = self.add(other);
    }

    /// Parity of the overlap with another same-dimension set; this is
    /// cochain evaluation when `self` is read as a cochain.
    pub fn overlap_parity(&self, other: &Chain) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.support, &other.support);
        let mut parity = false;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    parity = !parity;
                    i += 1;
                    j += 1;
                }
            }
        }
        parity
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}

impl FromIterator<Simplex> for Chain {
    fn from_iter<I: IntoIterator<Item = Simplex>>(iter: I) -> Self {
        Chain::from_simplices(iter)
    }
}

/// Boundary operator: the Z/2-linear extension of the facet sum
/// `∂⟨v0..vq⟩ = Σ ⟨v0..v̂i..vq⟩`. The boundary of a 0-chain is zero.
pub fn boundary(x: &Chain) -> Chain {
    let mut out = Chain::zero();
    for s in x.iter() {
        if s.dim() == 0 {
            continue;
        }
        for f in s.facets() {
            out.toggle(f);
        }
    }
    out
}

/// Coboundary operator `δc = c∂`: the support is every `(q+1)`-simplex
/// of `K` whose boundary meets `c` an odd number of times.
pub fn coboundary(c: &Cochain, complex: &SimplicialComplex) -> Cochain {
    let q = match c.dim() {
        Some(q) => q,
        None => return Chain::zero(),
    };
    if q >= crate::simplicial::MAX_DIM {
        return Chain::zero();
    }
    let mut out = Vec::new();
    for t in complex.simplices(q + 1) {
        let mut parity = false;
        for f in t.facets() {
            if c.contains(&f) {
                parity = !parity;
            }
        }
        if parity {
            out.push(*t);
        }
    }
    Chain { support: out }
}

/// Evaluates a cochain on a chain of the same dimension: the parity of
/// the support intersection. Panics on a dimension mismatch.
pub fn evaluate(c: &Cochain, x: &Chain) -> bool {
    if let (Some(cd), Some(xd)) = (c.dim(), x.dim()) {
        assert_eq!(cd, xd, "evaluate: cochain dim {cd} vs chain dim {xd}");
    }
    c.overlap_parity(x)
}

/// Cochain-level cup product. For cochains of dimensions `p` and `q`,
/// the support is every `(p+q)`-simplex `⟨v0..vp+q⟩` of `K` with
/// `c(⟨v0..vp⟩) · c'(⟨vp..vp+q⟩) = 1`. Requires the fixed global
/// vertex order of `K`.
pub fn cup(c: &Cochain, c2: &Cochain, complex: &SimplicialComplex) -> Cochain {
    let (p, q) = match (c.dim(), c2.dim()) {
        (Some(p), Some(q)) => (p, q),
        _ => return Chain::zero(),
    };
    assert!(
        p + q <= crate::simplicial::MAX_DIM,
        "cup dimension overflow"
    );
    let mut out = Vec::new();
    for s in complex.simplices(p + q) {
        if c.contains(&s.front_face(p)) && c2.contains(&s.back_face(p)) {
            out.push(*s);
        }
    }
    Chain { support: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialComplex;

    fn chain(k: &SimplicialComplex, sims: &[&[i64]]) -> Chain {
        Chain::from_simplices(sims.iter().map(|ls| {
            k.simplex_by_labels(ls)
                .unwrap_or_else(|| panic!("{ls:?} not in complex"))
        }))
    }

    /// 9-vertex triangulated torus; the uniform diagonal split of a
    /// 3x3 periodic grid.
    pub(crate) fn torus9() -> SimplicialComplex {
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

    pub(crate) fn torus9_c(k: &SimplicialComplex) -> Cochain {
        chain(k, &[&[2, 3], &[3, 6], &[6, 7], &[7, 8], &[8, 9], &[2, 9]])
    }

    pub(crate) fn torus9_d(k: &SimplicialComplex) -> Cochain {
        chain(k, &[&[4, 5], &[5, 6], &[6, 8], &[7, 8], &[7, 9], &[4, 9]])
    }

    #[test]
    fn torus9_is_a_closed_surface() {
        let k = torus9();
        k.validate();
        assert_eq!(k.counts(), [9, 27, 18, 0]);
        // closed surface: every edge lies in exactly two triangles
        for e in k.simplices(1) {
            assert_eq!(k.cofacets(e).len(), 2, "edge {e:?}");
        }
    }

    #[test]
    fn boundary_of_triangle_cycle_is_zero() {
        let k = torus9();
        let a = chain(&k, &[&[3, 7], &[7, 9], &[3, 9]]);
        assert!(boundary(&a).is_zero());
    }

    #[test]
    fn boundary_of_two_triangles_is_cycle_sum() {
        let k = torus9();
        let x = chain(&k, &[&[6, 7, 8], &[7, 8, 9]]);
        let a = chain(&k, &[&[3, 7], &[7, 9], &[3, 9]]);
        let b = chain(&k, &[&[3, 7], &[6, 7], &[6, 8], &[8, 9], &[3, 9]]);
        assert!(boundary(&b).is_zero());
        assert_eq!(boundary(&x), a.add(&b));
    }

    #[test]
    fn zero_chains() {
        assert!(boundary(&Chain::zero()).is_zero());
        let k = torus9();
        assert!(coboundary(&Chain::zero(), &k).is_zero());
        assert!(cup(&Chain::zero(), &torus9_d(&k), &k).is_zero());
    }

    #[test]
    fn c_and_d_are_cocycles() {
        let k = torus9();
        let c = torus9_c(&k);
        let d = torus9_d(&k);
        assert!(coboundary(&c, &k).is_zero());
        assert!(coboundary(&d, &k).is_zero());
        // the per-simplex check from the worked example
        let t = k.simplex_by_labels(&[2, 3, 6]).unwrap();
        let bd = boundary(&Chain::singleton(t));
        assert!(!evaluate(&c, &bd));
    }

    #[test]
    fn cup_of_c_and_d() {
        let k = torus9();
        let c = torus9_c(&k);
        let d = torus9_d(&k);
        let cd = cup(&c, &d, &k);
        let t678 = k.simplex_by_labels(&[6, 7, 8]).unwrap();
        let t789 = k.simplex_by_labels(&[7, 8, 9]).unwrap();
        assert!(cd.contains(&t678));
        assert!(!cd.contains(&t789));
        // the full product is the single elementary cochain on <6,7,8>
        assert_eq!(cd, Chain::singleton(t678));
    }

    #[test]
    fn evaluate_elementary_and_bilinear() {
        let k = torus9();
        let e12 = k.simplex_by_labels(&[1, 2]).unwrap();
        let e13 = k.simplex_by_labels(&[1, 3]).unwrap();
        let star = Chain::singleton(e12);
        assert!(evaluate(&star, &Chain::singleton(e12)));
        assert!(!evaluate(&star, &Chain::singleton(e13)));
        let two = Chain::from_simplices([e12, e13]);
        assert!(!evaluate(&two, &two)); // parity of 2
    }

    #[test]
    #[should_panic]
    fn evaluate_rejects_dimension_mismatch() {
        let k = torus9();
        let e = Chain::singleton(k.simplex_by_labels(&[1, 2]).unwrap());
        let v = Chain::singleton(k.simplex_by_labels(&[1]).unwrap());
        evaluate(&e, &v);
    }
}
