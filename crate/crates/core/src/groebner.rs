//! Reduced Gröbner bases by Buchberger's algorithm.
//!
//! Internally a polynomial is a vector of terms sorted in descending order
//! for the chosen monomial order. Multiplying by a monomial preserves that
//! order, so reduction steps are plain merges.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, VarContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic, first variable largest.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Any monomial involving the first block beats every monomial that does not.
    Block(usize),
}

fn grevlex_slices(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex_slices(&a.0, &b.0),
            MonomialOrder::Block(k) => {
                let k = k.min(a.0.len());
                grevlex_slices(&a.0[..k], &b.0[..k]).then_with(|| grevlex_slices(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

type Terms = Vec<(Monomial, Rational)>;

fn to_terms(p: &Polynomial, order: MonomialOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn from_terms(ctx: &VarContext, t: Terms) -> Polynomial {
    Polynomial::from_terms(ctx, t)
}

fn make_monic(t: &mut Terms) {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = Rational::one() / c;
            for (_, x) in t.iter_mut() {
                *x *= &inv;
            }
        }
    }
}

/// `a - c * m * b`, both inputs sorted descending.
fn sub_mul(a: &[(Monomial, Rational)], c: &Rational, m: &Monomial, b: &[(Monomial, Rational)], order: MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(bm, bc)| (bm.mul(m), bc * c)).peekable();
    while i < a.len() || bi.peek().is_some() {
        match (a.get(i), bi.peek()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (ym, yc) = bi.next().unwrap();
                    out.push((ym, -yc));
                }
                Ordering::Equal => {
                    let (_, yc) = bi.next().unwrap();
                    let s = &x.1 - yc;
                    if !s.is_zero() {
                        out.push((x.0.clone(), s));
                    }
                    i += 1;
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let (ym, yc) = bi.next().unwrap();
                out.push((ym, -yc));
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `p` modulo the monic polynomials `basis`.
fn reduce(mut p: Terms, basis: &[Terms], order: MonomialOrder) -> Terms {
    let mut i = 0;
    while i < p.len() {
        let reducer = basis.iter().find(|g| g[0].0.divides(&p[i].0));
        match reducer {
            Some(g) => {
                let m = g[0].0.quotient_of(&p[i].0);
                let c = p[i].1.clone();
                let tail = sub_mul(&p[i + 1..], &c, &m, &g[1..], order);
                p.truncate(i);
                p.extend(tail);
            }
            None => i += 1,
        }
    }
    p
}

fn s_poly(f: &Terms, g: &Terms, order: MonomialOrder) -> Terms {
    let l = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.quotient_of(&l);
    let mg = g[0].0.quotient_of(&l);
    let left: Terms = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    sub_mul(&left, &Rational::one(), &mg, &g[1..], order)
}

/// A reduced Gröbner basis: monic, interreduced, sorted by ascending leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis {
    ctx: VarContext,
    order: MonomialOrder,
    gens: Vec<Polynomial>,
    sorted: Vec<Terms>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.order == other.order && self.gens == other.gens
    }
}

impl Eq for GroebnerBasis {}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order).field("gens", &self.gens).finish()
    }
}

impl GroebnerBasis {
    pub fn new(ctx: &VarContext, gens: &[Polynomial], order: MonomialOrder) -> Result<Self> {
        if gens.iter().any(|g| g.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(buchberger(ctx, gens, order))
    }

    pub fn zero_ideal(ctx: &VarContext, order: MonomialOrder) -> Self {
        GroebnerBasis { ctx: ctx.clone(), order, gens: vec![], sorted: vec![] }
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self.reduce(f))
    }

    /// Normal form; panics on a context mismatch.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.ctx(), &self.ctx, "context mismatch");
        if self.sorted.is_empty() {
            return f.clone();
        }
        from_terms(&self.ctx, reduce(to_terms(f, self.order), &self.sorted, self.order))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Whether the ideal of `other` is contained in this ideal.
    pub fn contains_ideal(&self, other: &GroebnerBasis) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }
}

/// Leading monomial and coefficient under `order`.
pub fn leading_term(p: &Polynomial, order: MonomialOrder) -> Option<(Monomial, Rational)> {
    p.terms()
        .max_by(|a, b| order.cmp(a.0, b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(ctx: &VarContext, gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<Terms> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();

    let mut input: Vec<Terms> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_terms(g, order)).collect();
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));

    let push = |mut t: Terms, basis: &mut Vec<Terms>, pairs: &mut Vec<Pair>| -> bool {
        make_monic(&mut t);
        let is_const = t[0].0.is_one();
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair { i, j: k, lcm: g[0].0.lcm(&t[0].0) });
        }
        basis.push(t);
        is_const
    };

    let mut unit = false;
    for t in input {
        let r = reduce(t, &basis, order);
        if !r.is_empty() && push(r, &mut basis, &mut pairs) {
            unit = true;
            break;
        }
    }

    while !unit && !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .lcm
                    .degree()
                    .cmp(&pairs[b].lcm.degree())
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        processed.insert((i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi[0].0.coprime(&fj[0].0) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && processed.contains(&(i.min(k), i.max(k)))
                && processed.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(fi, fj, order);
        let r = reduce(s, &basis, order);
        if !r.is_empty() && push(r, &mut basis, &mut pairs) {
            unit = true;
        }
    }

    if unit {
        let one = Polynomial::one(ctx);
        return GroebnerBasis { ctx: ctx.clone(), order, sorted: vec![to_terms(&one, order)], gens: vec![one] };
    }

    // Minimize: drop generators whose leading monomial is divisible by another's.
    let mut keep: Vec<Terms> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || l < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // Interreduce tails.
    let mut reduced: Vec<Terms> = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<Terms> = keep.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        let head = keep[k][0].clone();
        let mut tail = reduce(keep[k][1..].to_vec(), &others, order);
        let mut t = vec![head];
        t.append(&mut tail);
        make_monic(&mut t);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let gens = reduced.iter().map(|t| from_terms(ctx, t.clone())).collect();
    GroebnerBasis { ctx: ctx.clone(), order, gens, sorted: reduced }
}

/// Whether `gens` generate the unit ideal.
pub fn is_unit_ideal(ctx: &VarContext, gens: &[Polynomial]) -> bool {
    buchberger(ctx, gens, MonomialOrder::GrevLex).is_unit()
}
