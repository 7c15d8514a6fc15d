#![allow(dead_code)]

use birat::pairs::PairOfRings;
use birat::poly::rat;
use birat::ring::{monomials_up_to, RingPresentation};
use birat::valuation::{default_witnesses, Valuation, Value};
use birat::Polynomial;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn el(r: &RingPresentation, s: &str) -> Polynomial {
    r.parse_elem(s).unwrap()
}

pub fn els(r: &RingPresentation, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|x| el(r, x)).collect()
}

pub fn pair(vars: &[&str], rels: &[&str], a: &[&str]) -> PairOfRings {
    PairOfRings::parse(vars, rels, a).unwrap()
}

/// Up to `terms` random terms of degree `<= deg`, coefficients in `[-3, 3]`.
pub fn rand_poly<R: Rng>(rng: &mut R, ring: &RingPresentation, terms: usize, deg: u32) -> Polynomial {
    let monos = monomials_up_to(ring.nvars(), deg);
    let k = rng.gen_range(1..=terms);
    let mut p = ring.zero();
    for m in monos.choose_multiple(rng, k) {
        let c = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
        p = p.add(&Polynomial::monomial(ring.ctx(), m.clone(), rat(c)));
    }
    ring.nf(&p)
}

/// A random nonconstant monomial of degree `<= deg`.
pub fn rand_monomial<R: Rng>(rng: &mut R, ring: &RingPresentation, deg: u32) -> Polynomial {
    let monos: Vec<_> = monomials_up_to(ring.nvars(), deg).into_iter().filter(|m| m.degree() > 0).collect();
    let m = monos.choose(rng).unwrap().clone();
    ring.nf(&Polynomial::monomial(ring.ctx(), m, rat(1)))
}

pub fn rand_weights<R: Rng>(rng: &mut R, n: usize, rank: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..n).map(|_| (0..rank).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

/// Default witnesses plus `extra` random elements.
pub fn witnesses<R: Rng>(rng: &mut R, ring: &RingPresentation, extra: usize) -> Vec<Polynomial> {
    let mut w = default_witnesses(ring);
    for _ in 0..extra {
        w.push(rand_poly(rng, ring, 3, 3));
    }
    w
}

/// Values agree on every witness and kernels coincide.
pub fn same_values(v: &Valuation, w: &Valuation, ws: &[Polynomial]) -> bool {
    let ring = v.ring();
    ring.ideal(&v.kernel()).same_ideal(&ring.ideal(&w.kernel())) && ws.iter().all(|f| v.value(f) == w.value(f))
}

/// Values only in `{0, ZERO}` on the witnesses.
pub fn trivially_valued(v: &Valuation, ws: &[Polynomial]) -> bool {
    ws.iter().all(|f| match v.value(f) {
        Value::Zero => true,
        Value::Finite(x) => x.iter().all(|&c| c == 0),
    })
}
