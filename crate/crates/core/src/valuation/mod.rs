//! Valuations on `B = Q[x]/I` with values in `Z^r` (lex).
//!
//! Every valuation is resolved into the same shape: a ring map `ψ: B → W`
//! into `W = Q[y]/J`, where `J` is generated by binomials balanced for a
//! weight vector on `y`, followed by the Gauss valuation of those weights:
//! `ν(f)` is the least weight of a term of the normal form of `ψ(f)`.
//! Balance makes `W` graded by `Z^r`, and normal forms keep degrees, so
//! the minimum is well defined.
//!
//! Primary specialization at level `j` keeps the terms of `ψ(x_i)` whose
//! weights vanish in the first `j - 1` coordinates. That projection is a
//! ring map on the image of `ψ`, which is what makes the construction exact.

mod value;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::pairs::{PairHom, PairOfRings};
use crate::poly::{Polynomial, VarContext};
use crate::ring::{Localization, RingPresentation};

pub use value::Value;
use value::weigh;

#[derive(Clone)]
pub enum ValuationKind {
    /// Values in `{0, ZERO}`; the kernel is `prime`.
    Trivial { ring: RingPresentation, prime: Vec<Polynomial> },
    /// Gauss valuation with one weight vector per variable.
    Weight { ring: RingPresentation, weights: Vec<Vec<i64>>, rank: usize },
    /// A Gauss valuation on `quotient ≅ B/prime`, pulled back along `residue`.
    Composite {
        ring: RingPresentation,
        prime: Vec<Polynomial>,
        quotient: RingPresentation,
        residue: Vec<Polynomial>,
        weights: Vec<Vec<i64>>,
        rank: usize,
    },
    /// `inner ∘ hom`, evaluated lazily.
    Pullback { hom: PairHom, inner: Arc<Valuation> },
}

/// The map `ψ: B → W` and the weights on the variables of `W`.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub source: RingPresentation,
    pub w_ring: RingPresentation,
    pub images: Vec<Polynomial>,
    pub weights: Vec<Vec<i64>>,
    pub rank: usize,
    kernel: OnceLock<Vec<Polynomial>>,
}

impl Resolved {
    fn new(source: RingPresentation, w_ring: RingPresentation, images: Vec<Polynomial>, weights: Vec<Vec<i64>>, rank: usize) -> Self {
        let images = images.iter().map(|g| w_ring.nf(g)).collect();
        Resolved { source, w_ring, images, weights, rank, kernel: OnceLock::new() }
    }

    pub fn image(&self, f: &Polynomial) -> Polynomial {
        self.w_ring.nf(&f.substitute(&self.images, self.w_ring.ctx()))
    }

    /// Gauss value of an element of `W` already in normal form.
    pub fn gauss(&self, g: &Polynomial) -> Value {
        g.terms()
            .map(|(m, _)| weigh(&m.0, &self.weights, self.rank))
            .min()
            .map_or(Value::Zero, Value::Finite)
    }

    pub fn evaluate(&self, f: &Polynomial) -> Value {
        self.gauss(&self.image(f))
    }

    fn kernel(&self) -> &[Polynomial] {
        self.kernel.get_or_init(|| self.source.kernel_of_map(&self.w_ring, &self.images))
    }

    /// Keeps the terms of `g` whose weights vanish in the first `j - 1` coordinates.
    fn truncate(&self, g: &Polynomial, j: usize) -> Polynomial {
        let terms = g
            .terms()
            .filter(|(m, _)| weigh(&m.0, &self.weights, self.rank)[..j - 1].iter().all(|&x| x == 0))
            .map(|(m, c)| (m.clone(), c.clone()));
        Polynomial::from_terms(g.ctx(), terms)
    }

    /// Keeps the terms of weight exactly zero.
    fn degree_zero_part(&self, g: &Polynomial) -> Polynomial {
        self.truncate(g, self.rank + 1)
    }
}

pub struct Valuation {
    kind: ValuationKind,
    resolved: OnceLock<Arc<Resolved>>,
}

impl Clone for Valuation {
    fn clone(&self) -> Self {
        let resolved = OnceLock::new();
        if let Some(r) = self.resolved.get() {
            let _ = resolved.set(r.clone());
        }
        Valuation { kind: self.kind.clone(), resolved }
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ValuationKind::Trivial { prime, .. } => write!(f, "Trivial({prime:?})"),
            ValuationKind::Weight { weights, .. } => write!(f, "Weight({weights:?})"),
            ValuationKind::Composite { prime, residue, weights, .. } => {
                write!(f, "Composite(prime={prime:?}, residue={residue:?}, weights={weights:?})")
            }
            ValuationKind::Pullback { hom, inner } => write!(f, "Pullback({:?}, {inner:?})", hom.images()),
        }
    }
}

/// Checks that every relation of `ring` is a binomial balanced for `weights`.
fn check_balanced(ring: &RingPresentation, weights: &[Vec<i64>], rank: usize) -> Result<()> {
    if rank == 0 {
        return Ok(());
    }
    for g in ring.relations().gens() {
        let ws: Vec<Vec<i64>> = g.terms().map(|(m, _)| weigh(&m.0, weights, rank)).collect();
        match ws.len() {
            2 if ws[0] == ws[1] => {}
            2 => return Err(Error::InadmissibleWeights(format!("relation {g} is not weight-balanced"))),
            1 => return Err(Error::InadmissibleWeights(format!("monomial relation {g}: the ring is not a domain"))),
            _ => return Err(Error::InadmissibleWeights(format!("relation {g} is not a binomial"))),
        }
    }
    Ok(())
}

/// Keeps `exponent * weight` sums far from overflow.
pub const MAX_WEIGHT: i64 = 1 << 24;

fn check_weights(n: usize, weights: &[Vec<i64>]) -> Result<usize> {
    if weights.len() != n {
        return Err(Error::Malformed(format!("expected {n} weight vectors, got {}", weights.len())));
    }
    let rank = weights.first().map_or(0, Vec::len);
    if weights.iter().any(|w| w.len() != rank) {
        return Err(Error::Malformed("weight vectors of different lengths".into()));
    }
    if weights.iter().flatten().any(|x| x.abs() > MAX_WEIGHT) {
        return Err(Error::InadmissibleWeights(format!("weights are bounded by {MAX_WEIGHT} in absolute value")));
    }
    Ok(rank)
}

fn normalize_ideal(ring: &RingPresentation, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    for g in gens {
        ring.check(g)?;
    }
    if ring.is_unit_ideal(gens) {
        return Err(Error::ImproperIdeal);
    }
    let mut out: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = ring.nf(g);
        if !g.is_zero() && !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

impl Valuation {
    fn from_kind(kind: ValuationKind) -> Self {
        Valuation { kind, resolved: OnceLock::new() }
    }

    /// The trivial valuation with kernel `prime` (primality is assumed).
    pub fn trivial(ring: &RingPresentation, prime: &[Polynomial]) -> Result<Self> {
        let prime = normalize_ideal(ring, prime)?;
        Ok(Valuation::from_kind(ValuationKind::Trivial { ring: ring.clone(), prime }))
    }

    /// Gauss valuation; the relations of `ring` must be weight-balanced binomials.
    pub fn weight(ring: &RingPresentation, weights: Vec<Vec<i64>>) -> Result<Self> {
        let rank = check_weights(ring.nvars(), &weights)?;
        check_balanced(ring, &weights, rank)?;
        Ok(Valuation::from_kind(ValuationKind::Weight { ring: ring.clone(), weights, rank }))
    }

    /// Gauss valuation on `quotient`, composed with `residue: B → quotient`,
    /// whose kernel must be exactly `prime`.
    pub fn composite(
        ring: &RingPresentation,
        prime: &[Polynomial],
        quotient: &RingPresentation,
        residue: Vec<Polynomial>,
        weights: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let prime = normalize_ideal(ring, prime)?;
        let rank = check_weights(quotient.nvars(), &weights)?;
        check_balanced(quotient, &weights, rank)?;
        if residue.len() != ring.nvars() {
            return Err(Error::Malformed("residue map has the wrong arity".into()));
        }
        for r in &residue {
            quotient.check(r)?;
        }
        let residue: Vec<Polynomial> = residue.iter().map(|r| quotient.nf(r)).collect();
        for rel in ring.relations().gens() {
            if !quotient.is_zero(&rel.substitute(&residue, quotient.ctx())) {
                return Err(Error::Malformed(format!("residue map does not kill relation {rel}")));
            }
        }
        let ker = ring.ideal(&ring.kernel_of_map(quotient, &residue));
        if !ker.same_ideal(&ring.ideal(&prime)) {
            return Err(Error::Malformed("kernel of the residue map differs from the prime".into()));
        }
        Ok(Self::composite_unchecked(ring, prime, quotient, residue, weights, rank))
    }

    fn composite_unchecked(
        ring: &RingPresentation,
        prime: Vec<Polynomial>,
        quotient: &RingPresentation,
        residue: Vec<Polynomial>,
        weights: Vec<Vec<i64>>,
        rank: usize,
    ) -> Self {
        Valuation::from_kind(ValuationKind::Composite {
            ring: ring.clone(),
            prime,
            quotient: quotient.clone(),
            residue,
            weights,
            rank,
        })
    }

    /// The lazy node `inner ∘ hom` (no A-valuation check; see [`pullback`]).
    pub fn pullback_node(hom: &PairHom, inner: &Valuation) -> Result<Self> {
        if inner.ring() != hom.target().ring() {
            return Err(Error::Malformed("valuation does not live on the target of the map".into()));
        }
        Ok(Valuation::from_kind(ValuationKind::Pullback { hom: hom.clone(), inner: Arc::new(inner.clone()) }))
    }

    pub fn kind(&self) -> &ValuationKind {
        &self.kind
    }

    pub fn ring(&self) -> &RingPresentation {
        match &self.kind {
            ValuationKind::Trivial { ring, .. }
            | ValuationKind::Weight { ring, .. }
            | ValuationKind::Composite { ring, .. } => ring,
            ValuationKind::Pullback { hom, .. } => hom.source().ring(),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            ValuationKind::Trivial { .. } => 0,
            ValuationKind::Weight { rank, .. } | ValuationKind::Composite { rank, .. } => *rank,
            ValuationKind::Pullback { inner, .. } => inner.rank(),
        }
    }

    pub fn resolved(&self) -> &Resolved {
        self.resolved.get_or_init(|| Arc::new(self.resolve()))
    }

    fn resolve(&self) -> Resolved {
        match &self.kind {
            ValuationKind::Trivial { ring, prime } => {
                let w = ring.quotient(prime).expect("prime is proper");
                Resolved::new(ring.clone(), w, ring.vars(), vec![vec![]; ring.nvars()], 0)
            }
            ValuationKind::Weight { ring, weights, rank } => {
                Resolved::new(ring.clone(), ring.clone(), ring.vars(), weights.clone(), *rank)
            }
            ValuationKind::Composite { ring, quotient, residue, weights, rank, .. } => {
                Resolved::new(ring.clone(), quotient.clone(), residue.clone(), weights.clone(), *rank)
            }
            ValuationKind::Pullback { hom, inner } => {
                let r = inner.resolved();
                let images = hom.images().iter().map(|g| r.image(g)).collect();
                Resolved::new(hom.source().ring().clone(), r.w_ring.clone(), images, r.weights.clone(), r.rank)
            }
        }
    }

    pub fn evaluate(&self, f: &Polynomial) -> Result<Value> {
        self.ring().check(f)?;
        Ok(self.resolved().evaluate(f))
    }

    /// Panicking variant of [`Valuation::evaluate`] for internal use.
    pub fn value(&self, f: &Polynomial) -> Value {
        self.resolved().evaluate(f)
    }

    /// Generators of the kernel prime (relations of `B` omitted).
    pub fn kernel(&self) -> Vec<Polynomial> {
        match &self.kind {
            ValuationKind::Trivial { prime, .. } | ValuationKind::Composite { prime, .. } => prime.clone(),
            ValuationKind::Weight { .. } => vec![],
            ValuationKind::Pullback { .. } => self.resolved().kernel().to_vec(),
        }
    }

    /// Values of the variables of `B`.
    pub fn generator_values(&self) -> Vec<Value> {
        let r = self.resolved();
        r.images.iter().map(|g| r.gauss(g)).collect()
    }

    /// Level of the convex subgroup generated by the non-positive values,
    /// `None` when that subgroup is trivial.
    ///
    /// A value `ν(f) <= 0` is squeezed between `0` and the value of a
    /// monomial in the variables, and a non-positive sum of generator values
    /// has level at least the least level of a negative generator value;
    /// so the variables alone decide the level.
    pub fn cgamma(&self) -> Option<usize> {
        self.generator_values().iter().filter(|v| v.is_negative()).filter_map(Value::level).min()
    }

    fn specialized_images(&self, j: usize) -> Vec<Polynomial> {
        let r = self.resolved();
        r.images.iter().map(|g| r.truncate(g, j)).collect()
    }

    fn kernel_of_images(&self, images: &[Polynomial]) -> Vec<Polynomial> {
        let r = self.resolved();
        r.source.kernel_of_map(&r.w_ring, images)
    }

    /// Whether the kernel of `images` is contained in the kernel of `self`.
    fn same_kernel_as(&self, images: &[Polynomial]) -> bool {
        let r = self.resolved();
        if images == r.images.as_slice() {
            return true;
        }
        let ours = r.source.ideal(&self.kernel());
        self.kernel_of_images(images).iter().all(|g| ours.contains(g))
    }
}

fn check_ring(v: &Valuation, p: &PairOfRings) -> Result<()> {
    if v.ring() != p.ring() {
        return Err(Error::Malformed("valuation and pair live on different rings".into()));
    }
    Ok(())
}

/// `ν(a) >= 0` for every generator of `A`. This suffices: the set of
/// elements with non-negative value is closed under sums and products.
pub fn is_a_valuation(v: &Valuation, p: &PairOfRings) -> Result<bool> {
    check_ring(v, p)?;
    Ok(p.a_gens().iter().all(|a| v.value(a).is_nonnegative()))
}

fn require_a_valuation(v: &Valuation, p: &PairOfRings) -> Result<()> {
    if !is_a_valuation(v, p)? {
        return Err(Error::NotAValuation("some generator of A has negative value".into()));
    }
    Ok(())
}

/// The level `j*` of `cΓ_v`; `None` stands for the trivial subgroup.
pub fn cgamma_level(v: &Valuation, p: &PairOfRings) -> Result<Option<usize>> {
    require_a_valuation(v, p)?;
    Ok(v.cgamma())
}

fn admissible_top(v: &Valuation) -> usize {
    v.cgamma().unwrap_or(v.rank() + 1)
}

/// The specialization killing every value outside the convex subgroup of
/// level `j`; defined for `1 <= j <= j*`.
pub fn primary_specialize(v: &Valuation, j: usize) -> Result<Valuation> {
    let rank = v.rank();
    if j == 0 || j > rank + 1 {
        return Err(Error::Malformed(format!("level {j} outside 1..={}", rank + 1)));
    }
    if j > admissible_top(v) {
        return Err(Error::LevelBelowConvex { level: j, cgamma: format!("{}", admissible_top(v)) });
    }
    let images = v.specialized_images(j);
    if v.same_kernel_as(&images) {
        return Ok(v.clone());
    }
    let r = v.resolved();
    let prime = v.kernel_of_images(&images);
    if j == rank + 1 {
        return Valuation::trivial(&r.source, &prime);
    }
    let heads: Vec<&[i64]> = r.weights.iter().map(|w| &w[..j - 1]).collect();
    let tails: Vec<Vec<i64>> = r.weights.iter().map(|w| w[j - 1..].to_vec()).collect();
    let nonneg = heads.iter().all(|h| h.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0));
    if nonneg {
        let killed: Vec<usize> = (0..heads.len()).filter(|&k| heads[k].iter().any(|&x| x != 0)).collect();
        if let Some(c) = composite_by_killing(v, &prime, &images, &killed, &tails, rank + 1 - j)? {
            return Ok(c);
        }
    }
    let source = PairOfRings::over_rationals(r.source.clone());
    let target = PairOfRings::over_rationals(r.w_ring.clone());
    let hom = PairHom::new_ring_map(source, target, images)?;
    let inner = Valuation::weight(&r.w_ring, tails)?;
    Valuation::pullback_node(&hom, &inner)
}

/// `W / (killed variables)` presented on the remaining variables.
fn composite_by_killing(
    v: &Valuation,
    prime: &[Polynomial],
    images: &[Polynomial],
    killed: &[usize],
    tails: &[Vec<i64>],
    rank: usize,
) -> Result<Option<Valuation>> {
    let r = v.resolved();
    let n = r.w_ring.nvars();
    let keep: Vec<usize> = (0..n).filter(|k| !killed.contains(k)).collect();
    let names: Vec<String> = keep.iter().map(|&k| r.w_ring.ctx().names()[k].clone()).collect();
    let ctx = VarContext::new(&names)?;
    let zero_killed: Vec<Polynomial> = (0..n)
        .map(|k| if killed.contains(&k) { Polynomial::zero(r.w_ring.ctx()) } else { Polynomial::var(r.w_ring.ctx(), k) })
        .collect();
    let mut rels = Vec::new();
    for g in r.w_ring.relations().gens() {
        let s = g.substitute(&zero_killed, r.w_ring.ctx());
        match s.restrict(&ctx, &keep) {
            Some(p) => rels.push(p),
            None => return Ok(None),
        }
    }
    let quotient = RingPresentation::new(&ctx, &rels)?;
    let mut residue = Vec::with_capacity(images.len());
    for g in images {
        match g.restrict(&ctx, &keep) {
            Some(p) => residue.push(quotient.nf(&p)),
            None => return Ok(None),
        }
    }
    let weights: Vec<Vec<i64>> = keep.iter().map(|&k| tails[k].clone()).collect();
    check_balanced(&quotient, &weights, rank)?;
    let prime = normalize_ideal(&r.source, prime)?;
    Ok(Some(Valuation::composite_unchecked(&r.source, prime, &quotient, residue, weights, rank)))
}

/// All distinct primary specializations, from `v` itself down to the
/// minimal one.
pub fn primary_specializations(v: &Valuation, p: &PairOfRings) -> Result<Vec<Valuation>> {
    require_a_valuation(v, p)?;
    let mut out: Vec<Valuation> = vec![v.clone()];
    for j in 2..=admissible_top(v) {
        let s = primary_specialize(v, j)?;
        let last = out.last().unwrap();
        let same = last.ring().ideal(&last.kernel()).same_ideal(&s.ring().ideal(&s.kernel()));
        if !same {
            out.push(s);
        }
    }
    Ok(out)
}

/// The minimal primary specialization.
pub fn retract(v: &Valuation, p: &PairOfRings) -> Result<Valuation> {
    require_a_valuation(v, p)?;
    primary_specialize(v, admissible_top(v))
}

/// `v ∈ Val(B, A)`: an A-valuation equal to its minimal primary
/// specialization, i.e. no element has a positive value outside `cΓ_v`.
pub fn in_val(v: &Valuation, p: &PairOfRings) -> Result<bool> {
    if !is_a_valuation(v, p)? {
        return Ok(false);
    }
    let images = v.specialized_images(admissible_top(v));
    Ok(v.same_kernel_as(&images))
}

/// `v ∘ φ` for an A'-valuation `v` on the target of `φ`.
pub fn pullback(phi: &PairHom, v: &Valuation) -> Result<Valuation> {
    check_ring(v, phi.target())?;
    require_a_valuation(v, phi.target())?;
    Valuation::pullback_node(phi, v)
}

/// Pull back, then retract onto `Val` of the source.
pub fn bir_map(phi: &PairHom, v: &Valuation) -> Result<Valuation> {
    if !in_val(v, phi.target())? {
        return Err(Error::NotInVal("input valuation is not in Val of the target".into()));
    }
    retract(&pullback(phi, v)?, phi.source())
}

/// The trivial valuation with kernel `prime`.
pub fn sigma(p: &PairOfRings, prime: &[Polynomial]) -> Result<Valuation> {
    Valuation::trivial(p.ring(), prime)
}

/// `{a ∈ A : ν(a) > 0}` as an ideal of `A`, in the tag variables of
/// [`PairOfRings::a_presentation`].
pub fn tau(v: &Valuation, p: &PairOfRings) -> Result<Vec<Polynomial>> {
    require_a_valuation(v, p)?;
    let r = v.resolved();
    let a_pres = p.a_presentation();
    let images: Vec<Polynomial> = p.a_gens().iter().map(|a| r.degree_zero_part(&r.image(a))).collect();
    Ok(a_pres.kernel_of_map(&r.w_ring, &images))
}

/// Whether `num/den` lies in the semi-valuation ring of `v`.
pub fn semi_val_membership(v: &Valuation, num: &Polynomial, den: &Polynomial) -> Result<bool> {
    let d = v.evaluate(den)?;
    if d.is_zero_symbol() {
        return Err(Error::DenominatorInKernel);
    }
    Ok(v.evaluate(num)? >= d)
}

/// Extension of `v` to `B_b`: `ν(h) = ν(g) - k ν(b)` where `g = b^k h`.
pub fn localized_value(v: &Valuation, loc: &Localization, h: &Polynomial) -> Result<Value> {
    let vb = v.evaluate(&loc.denominator)?;
    let Value::Finite(vb) = vb else {
        return Err(Error::DenominatorInKernel);
    };
    let (g, k) = loc.lift(h);
    Ok(v.value(&g).sub(&vb.iter().map(|x| x * k as i64).collect::<Vec<_>>()))
}

/// Witness elements used to compare valuations: `1`, the variables, their
/// pairwise sums, differences and products, and `x_i ± 1`.
pub fn default_witnesses(ring: &RingPresentation) -> Vec<Polynomial> {
    let vars = ring.vars();
    let one = ring.one();
    let mut out = vec![one.clone()];
    for (i, x) in vars.iter().enumerate() {
        out.push(x.clone());
        out.push(x.add(&one));
        out.push(x.sub(&one));
        for y in &vars[i + 1..] {
            out.push(x.add(y));
            out.push(x.sub(y));
            out.push(x.mul(y));
        }
    }
    out.into_iter().map(|f| ring.nf(&f)).collect()
}

/// Extensional equivalence: equal kernels and the same order relations
/// among the values of `witnesses` (plus the default witnesses).
pub fn equivalent(v: &Valuation, w: &Valuation, witnesses: &[Polynomial]) -> bool {
    if v.ring() != w.ring() {
        return false;
    }
    let ring = v.ring();
    if !ring.ideal(&v.kernel()).same_ideal(&ring.ideal(&w.kernel())) {
        return false;
    }
    let mut all = default_witnesses(ring);
    all.extend(witnesses.iter().cloned());
    let a: Vec<Value> = all.iter().map(|f| v.value(f)).collect();
    let b: Vec<Value> = all.iter().map(|f| w.value(f)).collect();
    for i in 0..all.len() {
        for k in 0..all.len() {
            if (a[i] <= a[k]) != (b[i] <= b[k]) {
                return false;
            }
        }
    }
    true
}

/// An element of `ker w` whose image under `φ` has finite `v`-value: then
/// `B_{ker w} → B'_{ker v}` is not local.
pub fn stalk_locality_witness(phi: &PairHom, v: &Valuation, w: &Valuation) -> Option<Polynomial> {
    w.kernel().into_iter().find(|g| !v.value(&phi.apply(g)).is_zero_symbol())
}

/// A weight valuation in `Val(B', A')` whose pullback along `h` leaves `Val(B, A)`.
pub fn not_adic_witness(h: &PairHom) -> Option<Valuation> {
    let target = h.target();
    let n = target.ring().nvars();
    if n > 5 {
        return None;
    }
    let grid: Vec<i64> = vec![0, 1, -1, 2, -2];
    let total = grid.len().pow(n as u32);
    for idx in 0..total.min(3125) {
        let mut k = idx;
        let weights: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                let w = grid[k % grid.len()];
                k /= grid.len();
                vec![w]
            })
            .collect();
        let Ok(v) = Valuation::weight(target.ring(), weights) else { continue };
        if !matches!(in_val(&v, target), Ok(true)) {
            continue;
        }
        let Ok(pb) = pullback(h, &v) else { continue };
        if matches!(in_val(&pb, h.source()), Ok(false)) {
            return Some(v);
        }
    }
    None
}
