//! Pairs of rings `(B, A)` and their homomorphisms.
//!
//! `A` is always the subring generated over `Q` by a finite list of elements
//! of `B`; it is never given by relations. Two pairs with the same `B` have
//! the same `A` iff each generator list lies in the subring of the other.

mod integral;
mod monomial;
mod normalization;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{RingPresentation, Subalgebra};

pub use integral::{integral_element_test, is_adic, AdicResult, IntegralResult};
pub use monomial::{cone_certificate, decompose, MonomialNormalization, MonomialPair, DEFAULT_SEARCH};
pub use normalization::{relative_normalization, Normalization};

#[derive(Clone)]
pub struct PairOfRings {
    ring: RingPresentation,
    a_gens: Vec<Polynomial>,
    sub: OnceLock<Arc<Subalgebra>>,
}

impl PartialEq for PairOfRings {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.a_gens == other.a_gens
    }
}

impl Eq for PairOfRings {}

impl fmt::Debug for PairOfRings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, Q{:?})", self.ring, self.a_gens)
    }
}

impl PairOfRings {
    /// Generators are reduced to normal form; constants and repeats are dropped.
    pub fn new(ring: RingPresentation, a_gens: Vec<Polynomial>) -> Result<Self> {
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in a_gens {
            ring.check(&g)?;
            let g = ring.nf(&g);
            if g.as_constant().is_none() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PairOfRings { ring, a_gens: gens, sub: OnceLock::new() })
    }

    /// The pair `(B, B)`.
    pub fn full(ring: RingPresentation) -> Self {
        let gens = ring.vars();
        PairOfRings::new(ring, gens).expect("variables live in the ring")
    }

    /// The pair `(B, Q)`.
    pub fn over_rationals(ring: RingPresentation) -> Self {
        PairOfRings::new(ring, vec![]).expect("no generators")
    }

    pub fn parse<S: AsRef<str>, T: AsRef<str>, U: AsRef<str>>(vars: &[S], relations: &[T], a_gens: &[U]) -> Result<Self> {
        let ring = RingPresentation::parse(vars, relations)?;
        let gens = a_gens.iter().map(|s| Polynomial::parse(ring.ctx(), s.as_ref())).collect::<Result<Vec<_>>>()?;
        PairOfRings::new(ring, gens)
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn a_gens(&self) -> &[Polynomial] {
        &self.a_gens
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        self.sub.get_or_init(|| Arc::new(self.ring.subalgebra(&self.a_gens)))
    }

    /// Witness of `f ∈ A` in tag variables, if `f` is a member.
    pub fn a_contains(&self, f: &Polynomial) -> Option<Polynomial> {
        self.subalgebra().contains(f)
    }

    pub fn in_a(&self, f: &Polynomial) -> bool {
        self.a_contains(f).is_some()
    }

    /// `A ≅ Q[y]/J` in the tag variables `y1, y2, ...`.
    pub fn a_presentation(&self) -> RingPresentation {
        self.subalgebra().presentation()
    }

    /// Same `B` and `A ⊆ A'`.
    pub fn a_contained_in(&self, other: &PairOfRings) -> bool {
        self.ring == other.ring && self.a_gens.iter().all(|g| other.in_a(g))
    }

    /// Same `B` and equal subrings, by mutual membership.
    pub fn same_subring(&self, other: &PairOfRings) -> bool {
        self.a_contained_in(other) && other.a_contained_in(self)
    }

    /// The pair with `A` enlarged by `extra`.
    pub fn with_more_gens(&self, extra: &[Polynomial]) -> PairOfRings {
        let mut g = self.a_gens.clone();
        g.extend(extra.iter().cloned());
        PairOfRings::new(self.ring.clone(), g).expect("generators live in the ring")
    }
}

/// Re-checks the invariants of a pair; returns the list of problems found.
pub fn validate_pair(p: &PairOfRings) -> std::result::Result<(), Vec<String>> {
    let mut diags = Vec::new();
    if p.ring.relations().is_unit() {
        diags.push("zero ring".to_string());
    }
    for g in &p.a_gens {
        if g.ctx() != p.ring.ctx() {
            diags.push(format!("generator {g} lives in another context"));
        } else if &p.ring.nf(g) != g {
            diags.push(format!("generator {g} is not in normal form"));
        }
    }
    if diags.is_empty() {
        Ok(())
    } else {
        Err(diags)
    }
}

/// `φ: (B, A) → (B', A')`, given by the images of the variables of `B`.
#[derive(Clone, PartialEq, Eq)]
pub struct PairHom {
    source: PairOfRings,
    target: PairOfRings,
    images: Vec<Polynomial>,
}

impl fmt::Debug for PairHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} via {:?}", self.source.ring().ctx(), self.target.ring().ctx(), self.images)
    }
}

impl PairHom {
    /// Checks that relations map to zero and that `φ(A) ⊆ A'`.
    pub fn new(source: PairOfRings, target: PairOfRings, images: Vec<Polynomial>) -> Result<Self> {
        let h = PairHom::new_ring_map(source, target, images)?;
        for a in h.source.a_gens() {
            let img = h.apply(a);
            if !h.target.in_a(&img) {
                return Err(Error::InvalidHom(format!("image {img} of A-generator {a} is not in A'")));
            }
        }
        Ok(h)
    }

    /// Like [`PairHom::new`] but only checks the ring map, not `φ(A) ⊆ A'`.
    pub fn new_ring_map(source: PairOfRings, target: PairOfRings, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.ring().nvars() {
            return Err(Error::InvalidHom(format!(
                "expected {} images, got {}",
                source.ring().nvars(),
                images.len()
            )));
        }
        let mut imgs = Vec::with_capacity(images.len());
        for i in images {
            target.ring().check(&i)?;
            imgs.push(target.ring().nf(&i));
        }
        let h = PairHom { source, target, images: imgs };
        for r in h.source.ring().relations().gens() {
            if !h.apply(r).is_zero() {
                return Err(Error::InvalidHom(format!("relation {r} does not map to zero")));
            }
        }
        Ok(h)
    }

    pub fn identity(p: &PairOfRings) -> Self {
        PairHom { source: p.clone(), target: p.clone(), images: p.ring().vars() }
    }

    pub fn source(&self) -> &PairOfRings {
        &self.source
    }

    pub fn target(&self) -> &PairOfRings {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `φ(f)` in normal form.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        self.target.ring().nf(&f.substitute(&self.images, self.target.ring().ctx()))
    }

    /// Exact equality of the underlying maps (same pairs, same images).
    pub fn same_map(&self, other: &PairHom) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }
}

/// `g ∘ f`.
pub fn compose(g: &PairHom, f: &PairHom) -> Result<PairHom> {
    if f.target.ring() != g.source.ring() {
        return Err(Error::InvalidHom("target of the first map is not the source of the second".into()));
    }
    let images = f.images.iter().map(|i| g.apply(i)).collect();
    Ok(PairHom { source: f.source.clone(), target: g.target.clone(), images })
}
