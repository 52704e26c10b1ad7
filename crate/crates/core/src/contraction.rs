//! Chain contractions: triples of maps `(f, g, φ)` between chain
//! complexes with `fg = id` and `φ∂ + ∂φ = id + gf`.
//!
//! A contraction certifies that its two complexes have isomorphic
//! homology, and carries the certificate as data: `f` sends a cycle to
//! its class, `g` picks a representative cycle, and `φ` fills
//! boundaries. Everything the thinning algorithms produce is one of
//! these, and [`ChainContraction::verify`] re-checks the axioms on
//! every simplex.

use crate::chains::{boundary, Chain};
use crate::simplicial::{Simplex, SimplicialComplex};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A chain complex with zero differential, given by an ordered set of
/// formal generators (simplices of some source complex standing for
/// homology classes).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GeneratorComplex {
    generators: Vec<Simplex>,
}

impl GeneratorComplex {
    pub fn new(generators: Vec<Simplex>) -> Self {
        Self { generators }
    }

    pub fn generators(&self) -> &[Simplex] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.generators.contains(s)
    }

    /// Generators of one dimension, in stored order.
    pub fn of_dim(&self, q: usize) -> Vec<Simplex> {
        self.generators
            .iter()
            .filter(|g| g.dim() == q)
            .copied()
            .collect()
    }

    pub fn counts(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for g in &self.generators {
            out[g.dim()] += 1;
        }
        out
    }
}

/// Codomain of a contraction: either a subcomplex with the simplicial
/// boundary, or a generator complex with zero differential.
#[derive(Clone, Debug)]
pub enum Target {
    Simplicial(Arc<SimplicialComplex>),
    Homology(GeneratorComplex),
}

impl Target {
    /// Boundary in the target complex.
    pub fn boundary(&self, x: &Chain) -> Chain {
        match self {
            Target::Simplicial(_) => boundary(x),
            Target::Homology(_) => Chain::zero(),
        }
    }

    /// Target basis elements (simplices or generators), in canonical order.
    pub fn elements(&self) -> Vec<Simplex> {
        match self {
            Target::Simplicial(k) => k.iter_all().copied().collect(),
            Target::Homology(h) => h.generators().to_vec(),
        }
    }

    pub fn homology(&self) -> Option<&GeneratorComplex> {
        match self {
            Target::Homology(h) => Some(h),
            Target::Simplicial(_) => None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ContractionError {
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain is not a boundary")]
    NotABoundary,
    #[error("operation requires a contraction onto a generator complex")]
    HomologyTargetRequired,
    #[error("target of the first contraction differs from source of the second")]
    ComplexMismatch,
}

/// One verified axiom: pass/fail plus the first counterexample found.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Self {
            pass: true,
            counterexample: None,
        }
    }

    fn fail(msg: String) -> Self {
        Self {
            pass: false,
            counterexample: Some(msg),
        }
    }
}

/// Per-axiom verification outcome. Verification failure is data, not
/// an error.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub f_chain_map: Check,
    pub g_chain_map: Check,
    pub fg_identity: Check,
    pub homotopy: Check,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.f_chain_map.pass
            && self.g_chain_map.pass
            && self.fg_identity.pass
            && self.homotopy.pass
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |check: &Check, name: &str| match &check.counterexample {
            None => format!("{name}: ok"),
            Some(c) => format!("{name}: FAIL at {c}"),
        };
        writeln!(f, "{}", line(&self.f_chain_map, "f chain map"))?;
        writeln!(f, "{}", line(&self.g_chain_map, "g chain map"))?;
        writeln!(f, "{}", line(&self.fg_identity, "fg identity"))?;
        write!(f, "{}", line(&self.homotopy, "homotopy"))
    }
}

/// A chain contraction from `C(source)` to `target`.
///
/// `f` and `φ` are keyed per source simplex, `g` per target element;
/// absent keys mean the zero chain. `f` preserves dimension, `φ`
/// raises it by one.
#[derive(Clone, Debug)]
pub struct ChainContraction {
    source: Arc<SimplicialComplex>,
    target: Target,
    f: HashMap<Simplex, Chain>,
    g: HashMap<Simplex, Chain>,
    phi: HashMap<Simplex, Chain>,
}

impl ChainContraction {
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Target,
        f: HashMap<Simplex, Chain>,
        g: HashMap<Simplex, Chain>,
        phi: HashMap<Simplex, Chain>,
    ) -> Self {
        Self {
            source,
            target,
            f,
            g,
            phi,
        }
    }

    /// The identity contraction of a complex onto itself.
    pub fn identity(complex: Arc<SimplicialComplex>) -> Self {
        let id: HashMap<Simplex, Chain> = complex
            .iter_all()
            .map(|s| (*s, Chain::singleton(*s)))
            .collect();
        Self {
            source: Arc::clone(&complex),
            target: Target::Simplicial(Arc::clone(&complex)),
            f: id.clone(),
            g: id,
            phi: HashMap::new(),
        }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    /// Generator complex of a contraction onto homology.
    pub fn homology(&self) -> Option<&GeneratorComplex> {
        self.target.homology()
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

    pub fn apply_f(&self, x: &Chain) -> Chain {
        Self::apply(&self.f, x)
    }

    pub fn apply_g(&self, x: &Chain) -> Chain {
        Self::apply(&self.g, x)
    }

    pub fn apply_phi(&self, x: &Chain) -> Chain {
        Self::apply(&self.phi, x)
    }

    pub fn f_of(&self, s: &Simplex) -> Chain {
        self.f.get(s).cloned().unwrap_or_default()
    }

    pub fn g_of(&self, s: &Simplex) -> Chain {
        self.g.get(s).cloned().unwrap_or_default()
    }

    pub fn phi_of(&self, s: &Simplex) -> Chain {
        self.phi.get(s).cloned().unwrap_or_default()
    }

    /// Checks all contraction axioms on every simplex of the source and
    /// every element of the target.
    pub fn verify(&self) -> VerifyReport {
        let f_chain_map = self.check_f_chain_map();
        let g_chain_map = self.check_g_chain_map();
        let fg_identity = self.check_fg_identity();
        let homotopy = self.check_homotopy();
        VerifyReport {
            f_chain_map,
            g_chain_map,
            fg_identity,
            homotopy,
        }
    }

    fn check_f_chain_map(&self) -> Check {
        for s in self.source.iter_all() {
            let lhs = self.target.boundary(&self.f_of(s));
            let rhs = self.apply_f(&boundary(&Chain::singleton(*s)));
            if lhs != rhs {
                return Check::fail(format!("{s:?}: ∂'f = {lhs:?}, f∂ = {rhs:?}"));
            }
        }
        Check::pass()
    }

    fn check_g_chain_map(&self) -> Check {
        for a in self.target.elements() {
            let lhs = boundary(&self.g_of(&a));
            let rhs = self.apply_g(&self.target.boundary(&Chain::singleton(a)));
            if lhs != rhs {
                return Check::fail(format!("{a:?}: ∂g = {lhs:?}, g∂' = {rhs:?}"));
            }
        }
        Check::pass()
    }

    fn check_fg_identity(&self) -> Check {
        for a in self.target.elements() {
            let got = self.apply_f(&self.g_of(&a));
            if got != Chain::singleton(a) {
                return Check::fail(format!("{a:?}: fg = {got:?}"));
            }
        }
        Check::pass()
    }

    fn check_homotopy(&self) -> Check {
        for s in self.source.iter_all() {
            let one = Chain::singleton(*s);
            let lhs = self
                .apply_phi(&boundary(&one))
                .add(&boundary(&self.phi_of(s)));
            let rhs = one.add(&self.apply_g(&self.f_of(s)));
            if lhs != rhs {
                return Check::fail(format!("{s:?}: φ∂+∂φ = {lhs:?}, id+gf = {rhs:?}"));
            }
        }
        Check::pass()
    }

    /// Composes two contractions: the result runs `C → C′ → C″` with
    /// `(f₂f₁, g₁g₂, φ₁ + g₁φ₂f₁)`.
    pub fn compose(first: &Self, second: &Self) -> Result<Self, ContractionError> {
        match &first.target {
            Target::Simplicial(mid) => {
                if !Arc::ptr_eq(mid, &second.source) && **mid != *second.source {
                    return Err(ContractionError::ComplexMismatch);
                }
            }
            Target::Homology(_) => return Err(ContractionError::ComplexMismatch),
        }
        let mut f = HashMap::with_capacity(first.f.len());
        let mut phi = HashMap::with_capacity(first.f.len());
        for s in first.source.iter_all() {
            let f1 = first.f_of(s);
            let composed_f = second.apply_f(&f1);
            if !composed_f.is_zero() {
                f.insert(*s, composed_f);
            }
            let composed_phi = first.phi_of(s).add(&first.apply_g(&second.apply_phi(&f1)));
            if !composed_phi.is_zero() {
                phi.insert(*s, composed_phi);
            }
        }
        let mut g = HashMap::new();
        for a in second.target.elements() {
            let img = first.apply_g(&second.g_of(&a));
            if !img.is_zero() {
                g.insert(a, img);
            }
        }
        Ok(Self {
            source: Arc::clone(&first.source),
            target: second.target.clone(),
            f,
            g,
            phi,
        })
    }

    /// The class of a cycle as a combination of generators: `f(a)`.
    /// Requires a contraction onto a generator complex.
    pub fn homology_class(&self, a: &Chain) -> Result<Chain, ContractionError> {
        if self.target.homology().is_none() {
            return Err(ContractionError::HomologyTargetRequired);
        }
        if !boundary(a).is_zero() {
            return Err(ContractionError::NotACycle);
        }
        Ok(self.apply_f(a))
    }

    /// A chain whose boundary is `a`, namely `φ(a)`. Requires `a` to be
    /// a boundary (a cycle with zero class).
    pub fn fill_boundary(&self, a: &Chain) -> Result<Chain, ContractionError> {
        let class = self.homology_class(a)?;
        if !class.is_zero() {
            return Err(ContractionError::NotABoundary);
        }
        let filled = self.apply_phi(a);
        debug_assert_eq!(&boundary(&filled), a);
        Ok(filled)
    }

    /// Serializable snapshot with simplices spelled as vertex names.
    pub fn to_document(&self) -> ContractionDoc {
        let name = |s: &Simplex| -> Vec<String> {
            s.vertices()
                .iter()
                .map(|&v| self.source.vertex_name(v).to_string())
                .collect()
        };
        let dump = |map: &HashMap<Simplex, Chain>| -> Vec<MapEntry> {
            let mut keys: Vec<&Simplex> = map.keys().collect();
            keys.sort();
            keys.into_iter()
                .map(|s| MapEntry {
                    simplex: name(s),
                    image: map[s].iter().map(name).collect(),
                })
                .collect()
        };
        ContractionDoc {
            source_simplices: self.source.counts(),
            target: match &self.target {
                Target::Simplicial(k) => TargetDoc {
                    kind: "simplicial".into(),
                    elements: k.total(),
                },
                Target::Homology(h) => TargetDoc {
                    kind: "homology".into(),
                    elements: h.len(),
                },
            },
            f: dump(&self.f),
            g: dump(&self.g),
            phi: dump(&self.phi),
        }
    }
}

/// JSON-friendly dump of a contraction, keyed by vertex tuples.
#[derive(Debug, Serialize)]
pub struct ContractionDoc {
    pub source_simplices: [usize; 4],
    pub target: TargetDoc,
    pub f: Vec<MapEntry>,
    pub g: Vec<MapEntry>,
    pub phi: Vec<MapEntry>,
}

#[derive(Debug, Serialize)]
pub struct TargetDoc {
    pub kind: String,
    pub elements: usize,
}

#[derive(Debug, Serialize)]
pub struct MapEntry {
    pub simplex: Vec<String>,
    pub image: Vec<Vec<String>>,
}
