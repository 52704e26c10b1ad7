//! Algebraic thinning: the incremental construction of a generator
//! complex `H` isomorphic to the homology of `K`, together with a chain
//! contraction of `C(K)` onto `H`.
//!
//! Simplices are added one at a time along a filtration. A simplex
//! whose boundary image `f∂σ` is zero creates a homology class;
//! otherwise it destroys the class of the generator in `f∂σ` with the
//! smallest filtration index, and `f`/`φ` are propagated to every
//! simplex whose image contained that generator. The images `f∂σ` and
//! `φ∂σ` are snapshotted before any update.

use crate::chains::{boundary, Chain};
use crate::contraction::{ChainContraction, GeneratorComplex, Target};
use crate::simplicial::{default_filtration, Filtration, Simplex, SimplicialComplex};
use crate::topothin::{collapse, collapse_contraction, CollapseSequence};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

/// Betti numbers by dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Betti(pub [usize; 4]);

impl Betti {
    pub fn b(&self, q: usize) -> usize {
        self.0[q]
    }
}

impl fmt::Display for Betti {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// Generator counts of `H` per dimension.
pub fn betti(h: &GeneratorComplex) -> Betti {
    Betti(h.counts())
}

/// In-progress run of the incremental algorithm; exposes the maps after
/// any prefix of the filtration so intermediate states can be inspected.
pub struct AlgThinState<'a> {
    complex: &'a Arc<SimplicialComplex>,
    filtration: &'a Filtration,
    processed: usize,
    f: HashMap<Simplex, Chain>,
    phi: HashMap<Simplex, Chain>,
    generators: HashSet<Simplex>,
    /// Simplices whose `f`-image contains a given generator.
    supporters: HashMap<Simplex, HashSet<Simplex>>,
}

impl<'a> AlgThinState<'a> {
    pub fn new(complex: &'a Arc<SimplicialComplex>, filtration: &'a Filtration) -> Self {
        Self {
            complex,
            filtration,
            processed: 0,
            f: HashMap::new(),
            phi: HashMap::new(),
            generators: HashSet::new(),
            supporters: HashMap::new(),
        }
    }

    /// Number of filtration steps processed so far.
    pub fn step_count(&self) -> usize {
        self.processed
    }

    pub fn f_of(&self, s: &Simplex) -> Chain {
        self.f.get(s).cloned().unwrap_or_default()
    }

    pub fn phi_of(&self, s: &Simplex) -> Chain {
        self.phi.get(s).cloned().unwrap_or_default()
    }

    /// Current generators, in filtration order.
    pub fn generators(&self) -> Vec<Simplex> {
        let mut gens: Vec<Simplex> = self.generators.iter().copied().collect();
        gens.sort_by_key(|g| self.filtration.position(g));
        gens
    }

    fn apply(map: &HashMap<Simplex, Chain>, x: &Chain) -> Chain {
        let mut out = Chain::zero();
        for s in x.iter() {
            if let Some(img) = map.get(s) {
                out.add_assign(img);
            }
        }
        out
    }

    /// Processes the next simplex; returns `false` when the filtration
    /// is exhausted.
    pub fn step(&mut self) -> bool {
        let Some(&sigma) = self.filtration.order().get(self.processed) else {
            return false;
        };
        self.processed += 1;

        let bd = boundary(&Chain::singleton(sigma));
        let f_bd = Self::apply(&self.f, &bd);
        let phi_bd = Self::apply(&self.phi, &bd);

        if f_bd.is_zero() {
            self.generators.insert(sigma);
            self.f.insert(sigma, Chain::singleton(sigma));
            self.supporters.entry(sigma).or_default().insert(sigma);
            return true;
        }

        let victim = *f_bd
            .iter()
            .min_by_key(|t| self.filtration.position(t).expect("image inside complex"))
            .expect("nonzero chain has a support");
        assert!(
            self.generators.contains(&victim),
            "f-image contains non-generator {victim:?}"
        );
        self.generators.remove(&victim);

        let affected = self.supporters.remove(&victim).unwrap_or_default();
        for k in affected {
            let new_f = self.f_of(&k).add(&f_bd);
            // keep the inverted index in sync with the toggled terms
            for term in f_bd.iter() {
                if *term == victim {
                    continue;
                }
                let entry = self.supporters.entry(*term).or_default();
                if !entry.remove(&k) {
                    entry.insert(k);
                }
            }
            if new_f.is_zero() {
                self.f.remove(&k);
            } else {
                self.f.insert(k, new_f);
            }

            let mut new_phi = self.phi_of(&k).add(&phi_bd);
            new_phi.toggle(sigma);
            if new_phi.is_zero() {
                self.phi.remove(&k);
            } else {
                self.phi.insert(k, new_phi);
            }
        }
        true
    }

    /// Runs to the end of the filtration and assembles the contraction,
    /// with `g(α) = α + φ∂α` on each surviving generator.
    pub fn finish(mut self) -> (GeneratorComplex, ChainContraction) {
        while self.step() {}
        let h = GeneratorComplex::new(self.generators());
        let mut g = HashMap::with_capacity(h.len());
        for alpha in h.generators() {
            let mut img = Self::apply(&self.phi, &boundary(&Chain::singleton(*alpha)));
            img.toggle(*alpha);
            g.insert(*alpha, img);
        }
        let contraction = ChainContraction::new(
            Arc::clone(self.complex),
            Target::Homology(h.clone()),
            self.f,
            g,
            self.phi,
        );
        (h, contraction)
    }
}

/// Runs the incremental algorithm over a whole filtration.
pub fn algebraic_thinning(
    complex: &Arc<SimplicialComplex>,
    filtration: &Filtration,
) -> (GeneratorComplex, ChainContraction) {
    AlgThinState::new(complex, filtration).finish()
}

/// Output of the two-stage reduction of a complex.
pub struct Pipeline {
    pub complex: Arc<SimplicialComplex>,
    pub thinned: Arc<SimplicialComplex>,
    pub collapse_seq: CollapseSequence,
    /// `C(K) → C(M_top K)` from the collapses.
    pub to_thinned: ChainContraction,
    pub homology: GeneratorComplex,
    /// `C(M_top K) → H` from algebraic thinning.
    pub on_thinned: ChainContraction,
    /// The composite `C(K) → H`.
    pub to_homology: ChainContraction,
}

impl Pipeline {
    pub fn betti(&self) -> Betti {
        betti(&self.homology)
    }
}

/// Collapse, build the collapse contraction, run algebraic thinning on
/// the thinned complex, and compose. With `thin = false` the collapse
/// stage is skipped (identity contraction); homology output is the same
/// either way.
pub fn full_pipeline(complex: Arc<SimplicialComplex>, thin: bool) -> Pipeline {
    let (thinned, collapse_seq) = if thin {
        collapse(&complex)
    } else {
        ((*complex).clone(), CollapseSequence::default())
    };
    let thinned = Arc::new(thinned);
    let to_thinned = collapse_contraction(&complex, &thinned, &collapse_seq)
        .expect("collapse output is self-consistent");
    let filtration = default_filtration(&thinned);
    let (homology, on_thinned) = algebraic_thinning(&thinned, &filtration);
    let to_homology = ChainContraction::compose(&to_thinned, &on_thinned)
        .expect("collapse target is thinning source");
    Pipeline {
        complex,
        thinned,
        collapse_seq,
        to_thinned,
        homology,
        on_thinned,
        to_homology,
    }
}
