//! Finitely presented algebras `Q[x]/I` and the elimination-based decision
//! procedures built on them: localization, subalgebra membership, kernels.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, MonomialOrder};
use crate::poly::{Polynomial, Rational, VarContext};

/// `B = Q[x]/I` with `I` stored as a reduced grevlex basis.
#[derive(Clone, PartialEq, Eq)]
pub struct RingPresentation {
    ctx: VarContext,
    relations: GroebnerBasis,
}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{:?}/{:?}", self.ctx, self.relations.gens())
    }
}

impl RingPresentation {
    pub fn new(ctx: &VarContext, relations: &[Polynomial]) -> Result<Self> {
        let gb = GroebnerBasis::new(ctx, relations, MonomialOrder::GrevLex)?;
        if gb.is_unit() {
            return Err(Error::ZeroRing);
        }
        Ok(RingPresentation { ctx: ctx.clone(), relations: gb })
    }

    pub fn polynomial_ring(ctx: &VarContext) -> Self {
        RingPresentation { ctx: ctx.clone(), relations: GroebnerBasis::zero_ideal(ctx, MonomialOrder::GrevLex) }
    }

    /// Convenience constructor from names and relation strings.
    pub fn parse<S: AsRef<str>, T: AsRef<str>>(vars: &[S], relations: &[T]) -> Result<Self> {
        let ctx = VarContext::new(vars)?;
        let rels = relations.iter().map(|r| Polynomial::parse(&ctx, r.as_ref())).collect::<Result<Vec<_>>>()?;
        RingPresentation::new(&ctx, &rels)
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn relations(&self) -> &GroebnerBasis {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ctx, i)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.ctx)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ctx)
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(&self.ctx, c)
    }

    pub fn parse_elem(&self, s: &str) -> Result<Polynomial> {
        Ok(self.nf(&Polynomial::parse(&self.ctx, s)?))
    }

    /// Canonical representative modulo the relations.
    pub fn nf(&self, f: &Polynomial) -> Polynomial {
        self.relations.reduce(f)
    }

    pub fn check(&self, f: &Polynomial) -> Result<()> {
        if f.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.relations.contains(f)
    }

    pub fn equal(&self, f: &Polynomial, g: &Polynomial) -> bool {
        self.is_zero(&f.sub(g))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.nf(&f.mul(g))
    }

    pub fn pow(&self, f: &Polynomial, e: u32) -> Polynomial {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, f);
        }
        r
    }

    /// Basis of `I + (gens)` under `order`.
    pub fn ideal_with_order(&self, gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
        let mut all: Vec<Polynomial> = self.relations.gens().to_vec();
        all.extend(gens.iter().cloned());
        buchberger(&self.ctx, &all, order)
    }

    /// Basis of `I + (gens)`.
    pub fn ideal(&self, gens: &[Polynomial]) -> GroebnerBasis {
        self.ideal_with_order(gens, MonomialOrder::GrevLex)
    }

    pub fn is_unit_ideal(&self, gens: &[Polynomial]) -> bool {
        self.ideal(gens).is_unit()
    }

    /// Exact test: `b` is nilpotent iff `1 ∈ I + (t b − 1)`.
    pub fn is_nilpotent(&self, b: &Polynomial) -> bool {
        if self.is_zero(b) {
            return true;
        }
        if b.as_constant().is_some() {
            return false;
        }
        let t = self.ctx.fresh_name("t");
        let ext = self.ctx.extend(&[t]).expect("fresh name");
        let tv = Polynomial::var(&ext, self.nvars());
        let mut gens: Vec<Polynomial> = self.relations.gens().iter().map(|g| g.extend_to(&ext)).collect();
        gens.push(tv.mul(&b.extend_to(&ext)).sub(&Polynomial::one(&ext)));
        buchberger(&ext, &gens, MonomialOrder::GrevLex).is_unit()
    }

    /// `B_b` presented as `B[t]/(t b − 1)`. A nonzero constant leaves `B` unchanged.
    pub fn localize(&self, b: &Polynomial) -> Result<Localization> {
        self.check(b)?;
        let b = self.nf(b);
        if let Some(c) = b.as_constant() {
            if c.is_zero() {
                return Err(Error::Nilpotent("0".into()));
            }
            return Ok(Localization {
                base: self.clone(),
                ring: self.clone(),
                inverse: self.constant(Rational::one() / c),
                denominator: b,
            });
        }
        if self.is_nilpotent(&b) {
            return Err(Error::Nilpotent(b.to_string()));
        }
        let t = self.ctx.fresh_name("t");
        let ext = self.ctx.extend(&[t])?;
        let tv = Polynomial::var(&ext, self.nvars());
        let mut gens: Vec<Polynomial> = self.relations.gens().iter().map(|g| g.extend_to(&ext)).collect();
        gens.push(tv.mul(&b.extend_to(&ext)).sub(&Polynomial::one(&ext)));
        let ring = RingPresentation::new(&ext, &gens)?;
        Ok(Localization { base: self.clone(), inverse: ring.nf(&tv), ring, denominator: b })
    }

    /// The inverse of `u`, if `u` is a unit: the normal form of `s` modulo
    /// `I + (s u − 1)` under an order eliminating `s`.
    pub fn unit_inverse(&self, u: &Polynomial) -> Option<Polynomial> {
        let u = self.nf(u);
        if let Some(c) = u.as_constant() {
            return (!c.is_zero()).then(|| self.constant(Rational::one() / c));
        }
        let s = self.ctx.fresh_name("s");
        let joint = VarContext::new(&[s]).expect("fresh name").concat_renamed(&self.ctx);
        let sv = Polynomial::var(&joint, 0);
        let mut gens: Vec<Polynomial> = self.relations.gens().iter().map(|g| g.shift_to(&joint, 1)).collect();
        gens.push(sv.mul(&u.shift_to(&joint, 1)).sub(&Polynomial::one(&joint)));
        let gb = buchberger(&joint, &gens, MonomialOrder::Block(1));
        let keep: Vec<usize> = (1..joint.len()).collect();
        let inv = gb.reduce(&sv).restrict(&self.ctx, &keep)?;
        let inv = self.nf(&inv);
        self.equal(&self.mul(&inv, &u), &self.one()).then_some(inv)
    }

    /// Generators of the preimage of `target_ideal` under the map sending
    /// variable `i` to `images[i]`; the result lives in this ring's context
    /// and always contains this ring's relations.
    pub fn preimage(&self, target: &RingPresentation, images: &[Polynomial], extra: &[Polynomial]) -> Vec<Polynomial> {
        let nt = target.nvars();
        let joint = target.ctx().concat_renamed(&self.ctx);
        let mut gens: Vec<Polynomial> = target.relations.gens().iter().map(|g| g.extend_to(&joint)).collect();
        gens.extend(extra.iter().map(|g| g.extend_to(&joint)));
        for (i, img) in images.iter().enumerate() {
            let y = Polynomial::var(&joint, nt + i);
            gens.push(y.sub(&img.extend_to(&joint)));
        }
        let gb = buchberger(&joint, &gens, MonomialOrder::Block(nt));
        let keep: Vec<usize> = (nt..joint.len()).collect();
        let mut out: Vec<Polynomial> =
            gb.gens().iter().filter_map(|g| g.restrict(&self.ctx, &keep)).collect();
        out.extend(self.relations.gens().iter().cloned());
        buchberger(&self.ctx, &out, MonomialOrder::GrevLex).gens().to_vec()
    }

    /// Kernel of `B → target`, `x_i ↦ images[i]`, as generators in `B`
    /// (relations of `B` omitted).
    pub fn kernel_of_map(&self, target: &RingPresentation, images: &[Polynomial]) -> Vec<Polynomial> {
        self.preimage(target, images, &[])
            .into_iter()
            .filter(|g| !self.is_zero(g))
            .map(|g| self.nf(&g))
            .collect()
    }

    /// `B/(gens)`, or an error if the ideal is the unit ideal.
    pub fn quotient(&self, gens: &[Polynomial]) -> Result<RingPresentation> {
        let gb = self.ideal(gens);
        if gb.is_unit() {
            return Err(Error::ImproperIdeal);
        }
        Ok(RingPresentation { ctx: self.ctx.clone(), relations: gb })
    }

    /// The subalgebra generated by `gens` (over Q).
    pub fn subalgebra(&self, gens: &[Polynomial]) -> Subalgebra {
        Subalgebra::new(self, gens)
    }
}

/// `B_b` together with the inverse of `b` inside it.
#[derive(Clone, Debug)]
pub struct Localization {
    pub base: RingPresentation,
    pub ring: RingPresentation,
    /// `t` (or `1/c` when `b = c` is constant).
    pub inverse: Polynomial,
    pub denominator: Polynomial,
}

impl Localization {
    /// Whether a fresh variable was adjoined.
    pub fn is_trivial(&self) -> bool {
        self.ring.nvars() == self.base.nvars()
    }

    /// Canonical map `B → B_b`.
    pub fn embed(&self, f: &Polynomial) -> Polynomial {
        self.ring.nf(&f.extend_to(self.ring.ctx()))
    }

    /// Images of the base variables in `B_b`.
    pub fn embedding_images(&self) -> Vec<Polynomial> {
        (0..self.base.nvars()).map(|i| self.ring.var(i)).collect()
    }

    /// Finds `(g, k)` with `g ∈ B` and `g = b^k h` in `B_b`.
    pub fn lift(&self, h: &Polynomial) -> (Polynomial, u32) {
        let n = self.base.nvars();
        if self.is_trivial() {
            return (self.base.nf(h), 0);
        }
        let h = self.ring.nf(h);
        let k = h.degree_in(n);
        let mut g = self.base.zero();
        let bpows: Vec<Polynomial> = (0..=k).map(|e| self.base.pow(&self.denominator, e)).collect();
        for (m, c) in h.terms() {
            let e = m.0[n];
            let mut rest = m.clone();
            rest.0.truncate(n);
            let term = Polynomial::monomial(self.base.ctx(), rest, c.clone());
            g = g.add(&term.mul(&bpows[(k - e) as usize]));
        }
        (self.base.nf(&g), k)
    }
}

/// `Q[gens] ⊆ B`, decided through tag variables `y_i ↦ gens[i]` and a block
/// order eliminating the variables of `B`.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    ring: RingPresentation,
    gens: Vec<Polynomial>,
    joint: VarContext,
    tags: VarContext,
    gb: GroebnerBasis,
}

impl Subalgebra {
    pub fn new(ring: &RingPresentation, gens: &[Polynomial]) -> Self {
        let n = ring.nvars();
        let names: Vec<String> = (1..=gens.len()).map(|i| format!("y{i}")).collect();
        let tags = VarContext::new(&names).expect("tag names are valid");
        let joint = ring.ctx().concat_renamed(&tags);
        let mut all: Vec<Polynomial> = ring.relations().gens().iter().map(|g| g.extend_to(&joint)).collect();
        for (i, g) in gens.iter().enumerate() {
            all.push(Polynomial::var(&joint, n + i).sub(&g.extend_to(&joint)));
        }
        let gb = buchberger(&joint, &all, MonomialOrder::Block(n));
        Subalgebra { ring: ring.clone(), gens: gens.to_vec(), joint, tags, gb }
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn tags(&self) -> &VarContext {
        &self.tags
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    fn tag_positions(&self) -> Vec<usize> {
        (self.ring.nvars()..self.joint.len()).collect()
    }

    /// A polynomial `w` in the tags with `w(gens) = f` in `B`, if `f` is a member.
    pub fn contains(&self, f: &Polynomial) -> Option<Polynomial> {
        let r = self.gb.reduce(&f.extend_to(&self.joint));
        r.restrict(&self.tags, &self.tag_positions())
    }

    pub fn is_member(&self, f: &Polynomial) -> bool {
        self.contains(f).is_some()
    }

    /// Evaluates a tag polynomial at the generators.
    pub fn eval_witness(&self, w: &Polynomial) -> Polynomial {
        self.ring.nf(&w.substitute(&self.gens, self.ring.ctx()))
    }

    /// Relations among the generators: the presentation `Q[y]/J ≅ Q[gens]`.
    pub fn presentation(&self) -> RingPresentation {
        let rels: Vec<Polynomial> =
            self.gb.gens().iter().filter_map(|g| g.restrict(&self.tags, &self.tag_positions())).collect();
        RingPresentation::new(&self.tags, &rels).expect("a subalgebra of a nonzero ring is nonzero")
    }
}

/// Generators of the ideal obtained by eliminating the first `k` variables.
pub fn eliminate(ctx: &VarContext, gens: &[Polynomial], k: usize) -> (VarContext, Vec<Polynomial>) {
    let rest = VarContext::new(&ctx.names()[k..]).expect("subcontext");
    let gb = buchberger(ctx, gens, MonomialOrder::Block(k));
    let keep: Vec<usize> = (k..ctx.len()).collect();
    let out = gb.gens().iter().filter_map(|g| g.restrict(&rest, &keep)).collect();
    (rest, out)
}

/// `Q`-vector of all monomials of total degree at most `d` in `n` variables.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<crate::poly::Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<crate::poly::Monomial>) {
        if i == cur.len() {
            out.push(crate::poly::Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(crate::poly::grevlex_cmp);
    out
}
