//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check is exact (no tolerances). Wall-clock limits are enforced on
//! the criteria that carry one. Criteria 8 and 11 are built on a worked
//! example whose data do not generate the unit ideal; they run as stated,
//! report FAIL, and also report the same checks on the line `x + y = 1`,
//! where the data are a rational covering. The test asserts the others.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use birat::blowup::{
    charts, is_invertible_on_chart, nor_blowup_commutes, nor_blowup_commutes_monomial, universal_factorization, ModuleE,
    NorBlowup,
};
use birat::domains::{
    flatten, inner_membership, intersect, refine_cover, sheaf_equalizer_check, Covering, EqualizerOutcome, FlattenCase,
    ProbeCorpus, RationalDomain,
};
use birat::pairs::{compose, relative_normalization, MonomialPair, PairHom, PairOfRings};
use birat::poly::rat;
use birat::ring::{monomials_up_to, RingPresentation};
use birat::valuation::{
    bir_map, cgamma_level, equivalent, in_val, is_a_valuation, primary_specialize, primary_specializations, pullback,
    retract, semi_val_membership, sigma, stalk_locality_witness, tau, Valuation, ValuationKind, Value,
};
use birat::{Error, Polynomial};
use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: birat::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// ---------------------------------------------------------------- 1

fn random_valuation(rng: &mut ChaCha8Rng) -> Valuation {
    loop {
        let v = match rng.gen_range(0..7) {
            0 => {
                let b = RingPresentation::parse(&["x", "y"], &[] as &[&str]).unwrap();
                let r = rng.gen_range(1..=3);
                Valuation::weight(&b, rand_weights(rng, 2, r, -3, 3))
            }
            1 => {
                let b = RingPresentation::parse(&["x", "y", "z"], &[] as &[&str]).unwrap();
                let r = rng.gen_range(1..=2);
                Valuation::weight(&b, rand_weights(rng, 3, r, -3, 3))
            }
            2 => {
                let b = RingPresentation::parse(&["x", "y"], &["x*y-1"]).unwrap();
                let w = rand_weights(rng, 1, 2, -3, 3).remove(0);
                Valuation::weight(&b, vec![w.clone(), w.iter().map(|x| -x).collect()])
            }
            3 => {
                let b = RingPresentation::parse(&["x", "y"], &["x^2-y^3"]).unwrap();
                let k: Vec<i64> = (0..2).map(|_| rng.gen_range(-2..=2)).collect();
                Valuation::weight(&b, vec![k.iter().map(|c| 3 * c).collect(), k.iter().map(|c| 2 * c).collect()])
            }
            4 => {
                let b = RingPresentation::parse(&["x", "y"], &[] as &[&str]).unwrap();
                let primes: [&[&str]; 5] = [&["x"], &["y-1"], &["x", "y"], &["x-y"], &["x^2+1"]];
                Valuation::trivial(&b, &els(&b, primes.choose(rng).unwrap()))
            }
            5 => {
                let src = pair(&["x", "y"], &[], &[]);
                let tgt = pair(&["s", "u"], &[], &[]);
                let images = (0..2).map(|_| rand_poly(rng, tgt.ring(), 2, 2)).collect();
                let h = PairHom::new(src, tgt.clone(), images).unwrap();
                let r = rng.gen_range(1..=2);
                let inner = Valuation::weight(tgt.ring(), rand_weights(rng, 2, r, -2, 2)).unwrap();
                Valuation::pullback_node(&h, &inner)
            }
            _ => {
                let b = RingPresentation::parse(&["x", "y", "z"], &[] as &[&str]).unwrap();
                let q = RingPresentation::parse(&["x", "y"], &[] as &[&str]).unwrap();
                let residue = vec![el(&q, "x"), el(&q, "y"), q.zero()];
                Valuation::composite(&b, &[el(&b, "z")], &q, residue, rand_weights(rng, 2, 2, -2, 2))
            }
        };
        if let Ok(v) = v {
            return v;
        }
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..1000 {
        let v = random_valuation(&mut rng);
        let b = v.ring();
        let f = rand_poly(&mut rng, b, 3, 3);
        let g = rand_poly(&mut rng, b, 3, 3);
        let (vf, vg) = (v.value(&f), v.value(&g));
        ensure(v.value(&b.mul(&f, &g)) == vf.add(&vg), || format!("#{k} {v:?}: nu(fg) != nu(f) + nu(g), f = {f}, g = {g}"))?;
        ensure(v.value(&f.add(&g)) >= vf.clone().min(vg.clone()), || format!("#{k} {v:?}: nu(f+g) < min, f = {f}, g = {g}"))?;
        ensure(v.value(&b.one()) == Value::zero_vector(v.rank()), || format!("#{k} {v:?}: nu(1) != 0"))?;
    }
    Ok("1000 triples".into())
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let b1 = PairOfRings::full(RingPresentation::parse(&["x"], &[] as &[&str]).unwrap());
    let b2 = PairOfRings::full(RingPresentation::parse(&["x", "y"], &["x*y"]).unwrap());
    let r1 = b1.ring();
    let r2 = b2.ring();
    let q1 = RingPresentation::parse(&["x"], &[] as &[&str]).unwrap();
    let q2 = RingPresentation::parse(&["y"], &[] as &[&str]).unwrap();

    let mut cands: Vec<(PairOfRings, Valuation)> = Vec::new();
    for prime in [&[][..], &["x"], &["x-1"], &["x+1"], &["x^2+1"], &["x^2-2"]] {
        cands.push((b1.clone(), Valuation::trivial(r1, &els(r1, prime)).unwrap()));
    }
    for w in [vec![vec![0]], vec![vec![1]], vec![vec![2]], vec![vec![-1]], vec![vec![0, 1]], vec![vec![0, -1]], vec![vec![1, -1]]] {
        cands.push((b1.clone(), Valuation::weight(r1, w).unwrap()));
    }
    for prime in [&["x"][..], &["y"], &["x", "y"], &["x-1", "y"], &["x", "y+2"]] {
        cands.push((b2.clone(), Valuation::trivial(r2, &els(r2, prime)).unwrap()));
    }
    for w in [vec![vec![0]], vec![vec![1]], vec![vec![-1]], vec![vec![0, 1]]] {
        let v = Valuation::composite(r2, &els(r2, &["y"]), &q1, vec![el(&q1, "x"), q1.zero()], w).unwrap();
        cands.push((b2.clone(), v));
    }
    for w in [vec![vec![1]], vec![vec![0]], vec![vec![2, -1]]] {
        let v = Valuation::composite(r2, &els(r2, &["x"]), &q2, vec![q2.zero(), el(&q2, "y")], w).unwrap();
        cands.push((b2.clone(), v));
    }
    for (p, v) in &cands {
        let ws = witnesses(&mut rng, p.ring(), 8);
        let member = ok(in_val(v, p), "in_val")?;
        ensure(member == trivially_valued(v, &ws), || format!("{v:?}: in_val = {member}"))?;
    }

    let primes: Vec<(&PairOfRings, Vec<&str>)> = vec![
        (&b1, vec![]),
        (&b1, vec!["x"]),
        (&b1, vec!["x-1"]),
        (&b1, vec!["x^2+1"]),
        (&b1, vec!["x^2-2"]),
        (&b2, vec!["x"]),
        (&b2, vec!["y"]),
        (&b2, vec!["x", "y"]),
        (&b2, vec!["x-1", "y"]),
        (&b2, vec!["x", "y+2"]),
    ];
    for (p, prime) in &primes {
        let gens = els(p.ring(), prime);
        let s = ok(sigma(p, &gens), "sigma")?;
        ensure(ok(in_val(&s, p), "in_val")?, || format!("sigma{prime:?} not in Val"))?;
        let t = ok(tau(&s, p), "tau")?;
        let a = p.a_presentation();
        let mapped: Vec<Polynomial> = gens.iter().map(|g| g.substitute(&a.vars(), a.ctx())).collect();
        ensure(a.ideal(&t).same_ideal(&a.ideal(&mapped)), || format!("tau(sigma{prime:?}) = {t:?}"))?;
    }
    Ok(format!("{} candidate valuations, 10 primes", cands.len()))
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    let src = pair(&["T"], &[], &["T"]);
    let tgt = pair(&["T", "s"], &["T*s-1"], &["T"]);
    let h = ok(PairHom::new(src.clone(), tgt.clone(), vec![el(tgt.ring(), "T")]), "hom")?;
    let v = ok(Valuation::weight(tgt.ring(), vec![vec![1], vec![-1]]), "T-adic")?;
    ensure(ok(in_val(&v, &tgt), "in_val")?, || "T-adic valuation is not in Val of the target".into())?;
    let w = ok(bir_map(&h, &v), "bir_map")?;
    let b = src.ring();
    let expected = ok(Valuation::trivial(b, &[el(b, "T")]), "trivial")?;
    ensure(matches!(w.kind(), ValuationKind::Trivial { .. }) && equivalent(&w, &expected, &[]), || {
        format!("bir_map gave {w:?}")
    })?;
    let g = stalk_locality_witness(&h, &v, &w).ok_or("no locality witness")?;
    ensure(g == el(b, "T"), || format!("witness {g}"))?;
    // T lies in the maximal ideal of Q[T]_(T) but is a unit in Q(T)
    ensure(semi_val_membership(&w, &b.one(), &g) == Err(Error::DenominatorInKernel), || "1/T at the source".into())?;
    for f in ["1", "T", "T^2+1", "T-1"] {
        let num = el(tgt.ring(), f);
        // defined in the stalk of the target: T is invertible there
        ensure(semi_val_membership(&v, &num, &h.apply(&g)).is_ok(), || format!("{f}/T at the target"))?;
    }
    Ok("bir_map = Trivial((T)); stalk map not local, witness T".into())
}

// ---------------------------------------------------------------- 4

/// `value` rewritten to its last `len` coordinates, if the rest vanish.
fn tail(value: &Value, len: usize) -> Option<Value> {
    match value {
        Value::Zero => Some(Value::Zero),
        Value::Finite(x) if x.len() >= len && x[..x.len() - len].iter().all(|&c| c == 0) => {
            Some(Value::Finite(x[x.len() - len..].to_vec()))
        }
        Value::Finite(_) => None,
    }
}

/// The specialization of `v` at level `j` keeps values whose first `j - 1`
/// coordinates vanish and kills the rest.
fn spec_oracle(v: &Value, j: usize, rank: usize) -> Value {
    match v {
        Value::Finite(x) if x[..j - 1].iter().all(|&c| c == 0) => Value::Finite(x[j - 1..rank].to_vec()),
        _ => Value::Zero,
    }
}

fn matches_level(v: &Valuation, s: &Valuation, j: usize, ws: &[Polynomial]) -> bool {
    let len = v.rank() + 1 - j;
    ws.iter().all(|f| tail(&s.value(f), len) == Some(spec_oracle(&v.value(f), j, v.rank())))
}

fn rank_two_pairs() -> Vec<PairOfRings> {
    vec![
        pair(&["x", "y"], &[], &[]),
        pair(&["x", "y"], &[], &["y"]),
        pair(&["x", "y", "z"], &[], &["z"]),
        pair(&["x", "y"], &["x*y-1"], &["x"]),
    ]
}

fn random_rank_two(rng: &mut ChaCha8Rng, p: &PairOfRings) -> Valuation {
    let b = p.ring();
    loop {
        let mut w = rand_weights(rng, b.nvars(), 2, -2, 2);
        if !b.relations().is_zero_ideal() {
            w[1] = w[0].iter().map(|x| -x).collect();
        }
        if let Ok(v) = Valuation::weight(b, w) {
            if is_a_valuation(&v, p).unwrap() {
                return v;
            }
        }
    }
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pairs = rank_two_pairs();
    for k in 0..100 {
        let p = &pairs[k % pairs.len()];
        let v = random_rank_two(&mut rng, p);
        let ws = witnesses(&mut rng, p.ring(), 6);
        let top = v.cgamma().unwrap_or(v.rank() + 1);
        let specs: Vec<Valuation> = (1..=top).map(|j| primary_specialize(&v, j)).collect::<birat::Result<_>>().map_err(|e| e.to_string())?;
        for (i, s) in specs.iter().enumerate() {
            ensure(matches_level(&v, s, i + 1, &ws), || format!("#{k} {v:?}: level {} disagrees with the oracle", i + 1))?;
        }
        let chain = ok(primary_specializations(&v, p), "chain")?;
        let mut last = 0;
        for c in &chain {
            let j = (1..=top)
                .find(|&j| matches_level(&v, c, j, &ws))
                .ok_or_else(|| format!("#{k} {v:?}: chain element {c:?} is no specialization"))?;
            ensure(j > last || (last == 0 && j == 1), || format!("#{k} {v:?}: chain out of order"))?;
            last = j;
        }
        let min = chain.last().unwrap();
        ensure(ok(in_val(min, p), "in_val")?, || format!("#{k} {v:?}: minimal element not in Val"))?;
        let r = ok(retract(&v, p), "retract")?;
        let rr = ok(retract(&r, p), "retract")?;
        ensure(equivalent(&r, &rr, &ws) && same_values(&r, &rr, &ws), || format!("#{k} {v:?}: retract not idempotent"))?;
    }
    Ok("100 rank-2 valuations".into())
}

// ---------------------------------------------------------------- 5

/// Least level of a negative value among `ν(φ(f))` for `f` a sum of at most
/// two monomials of degree `<= 4` with coefficients `±1`.
fn brute_cgamma(h: &PairHom, v: &Valuation) -> Option<usize> {
    let b = h.source().ring();
    let monos: Vec<Polynomial> = monomials_up_to(b.nvars(), 4)
        .into_iter()
        .map(|m| Polynomial::monomial(b.ctx(), m, rat(1)))
        .collect();
    let mut fs = monos.clone();
    for (i, a) in monos.iter().enumerate() {
        for c in &monos[i + 1..] {
            fs.push(a.add(c));
            fs.push(a.sub(c));
        }
    }
    fs.iter()
        .map(|f| v.value(&h.apply(f)))
        .filter(|x| x.is_negative())
        .filter_map(|x| x.level())
        .min()
}

fn random_hom(rng: &mut ChaCha8Rng) -> PairHom {
    let with_a = rng.gen_bool(0.5);
    let src = if with_a { pair(&["x", "y"], &[], &["x"]) } else { pair(&["x", "y"], &[], &[]) };
    let names: &[&str] = if rng.gen_bool(0.5) { &["s", "u"] } else { &["s", "u", "w"] };
    let tb = RingPresentation::parse(names, &[] as &[&str]).unwrap();
    let images: Vec<Polynomial> = (0..2)
        .map(|_| loop {
            let f = rand_poly(rng, &tb, 2, 2);
            if f.as_constant().is_none() {
                break f;
            }
        })
        .collect();
    let a = if with_a { vec![images[0].clone()] } else { vec![] };
    let tgt = PairOfRings::new(tb, a).unwrap();
    PairHom::new(src, tgt, images).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut levels = [0usize; 4];
    for k in 0..25 {
        let h = random_hom(&mut rng);
        let tgt = h.target();
        let v = loop {
            let r = rng.gen_range(1..=2);
            let v = Valuation::weight(tgt.ring(), rand_weights(&mut rng, tgt.ring().nvars(), r, -2, 2)).unwrap();
            if is_a_valuation(&v, tgt).unwrap() {
                break v;
            }
        };
        let pb = ok(pullback(&h, &v), "pullback")?;
        let got = ok(cgamma_level(&pb, h.source()), "cgamma_level")?;
        let brute = brute_cgamma(&h, &v);
        ensure(got == brute, || format!("#{k} {:?} {v:?}: cgamma_level {got:?}, brute force {brute:?}", h.images()))?;
        levels[got.unwrap_or(0)] += 1;
        let r = ok(retract(&pb, h.source()), "retract")?;
        ensure(ok(in_val(&r, h.source()), "in_val")?, || format!("#{k}: retraction not in Val"))?;
    }
    Ok(format!("25 homs; levels none/1/2 = {}/{}/{}", levels[0], levels[1], levels[2]))
}

// ---------------------------------------------------------------- 6

fn random_map(rng: &mut ChaCha8Rng, src: &PairOfRings, names: &[&str]) -> PairHom {
    let tb = RingPresentation::parse(names, &[] as &[&str]).unwrap();
    let images: Vec<Polynomial> = (0..src.ring().nvars())
        .map(|_| loop {
            let f = rand_poly(rng, &tb, 2, 2);
            if f.as_constant().is_none() {
                break f;
            }
        })
        .collect();
    let tmp = PairOfRings::over_rationals(tb.clone());
    let probe = PairHom::new_ring_map(src.clone(), tmp, images.clone()).unwrap();
    let a: Vec<Polynomial> = src.a_gens().iter().map(|g| probe.apply(g)).collect();
    let tgt = PairOfRings::new(tb, a).unwrap();
    PairHom::new(src.clone(), tgt, images).unwrap()
}

fn val_members(rng: &mut ChaCha8Rng, p: &PairOfRings, count: usize) -> Vec<Valuation> {
    let b = p.ring();
    let mut out = Vec::new();
    for _ in 0..200 {
        if out.len() == count {
            break;
        }
        let r = rng.gen_range(1..=2);
        let v = Valuation::weight(b, rand_weights(rng, b.nvars(), r, -2, 2)).unwrap();
        if in_val(&v, p).unwrap() {
            out.push(v);
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    for k in 0..50 {
        let p1 = if rng.gen_bool(0.5) { pair(&["x", "y"], &[], &["x"]) } else { pair(&["x", "y"], &[], &[]) };
        let phi = random_map(&mut rng, &p1, &["u", "v"]);
        let psi = random_map(&mut rng, phi.target(), &["s", "t"]);
        let both = ok(compose(&psi, &phi), "compose")?;
        let ws = witnesses(&mut rng, p1.ring(), 4);
        for v in val_members(&mut rng, psi.target(), 2) {
            let direct = ok(bir_map(&both, &v), "bir_map")?;
            let stepwise = ok(bir_map(&psi, &v).and_then(|w| bir_map(&phi, &w)), "bir_map")?;
            ensure(equivalent(&direct, &stepwise, &ws), || {
                format!("#{k} {:?} then {:?}, {v:?}: {direct:?} vs {stepwise:?}", phi.images(), psi.images())
            })?;
            checked += 1;
        }
    }
    Ok(format!("50 composable pairs, {checked} probe valuations"))
}

// ---------------------------------------------------------------- 7

fn domain_pairs() -> Vec<PairOfRings> {
    vec![pair(&["x", "y"], &[], &[]), pair(&["x", "y"], &[], &["x"]), pair(&["x", "y"], &["x+y-1"], &[])]
}

fn random_domain(rng: &mut ChaCha8Rng, p: &PairOfRings, constant_den: bool) -> RationalDomain {
    let b = p.ring();
    loop {
        let mut nums: Vec<Polynomial> = (0..rng.gen_range(1..=2)).map(|_| rand_poly(rng, b, 2, 2)).collect();
        if rng.gen_bool(0.5) {
            nums.push(b.one());
        }
        let den = if constant_den { b.one() } else { rand_poly(rng, b, 2, 2) };
        if !constant_den && den.as_constant().is_some() {
            continue;
        }
        if let Ok(d) = RationalDomain::new(p, nums, den) {
            return d;
        }
    }
}

fn nonconstant(rng: &mut ChaCha8Rng, r: &RingPresentation) -> Polynomial {
    loop {
        let f = rand_poly(rng, r, 2, 2);
        if f.as_constant().is_none() {
            return f;
        }
    }
}

fn corpora(pairs: &[PairOfRings], seed: u64) -> HashMap<usize, ProbeCorpus> {
    pairs.iter().enumerate().map(|(i, p)| (i, ProbeCorpus::default_for(p, seed))).collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs = domain_pairs();
    let probes = corpora(&pairs, 7);
    let cases = [FlattenCase::Constants, FlattenCase::InvertElement, FlattenCase::Bounded, FlattenCase::General];
    let mut points = 0;
    for k in 0..20 {
        let i = k % pairs.len();
        let p = &pairs[i];
        let corpus = &probes[&i];
        let d1 = random_domain(&mut rng, p, false);
        let const_den = rng.gen_bool(0.3);
        let d2 = random_domain(&mut rng, p, const_den);
        let both = ok(intersect(&d1, &d2), "intersect")?;
        for v in corpus.valuations() {
            let lhs = ok(both.contains(v), "contains")?;
            let rhs = ok(d1.contains(v), "contains")? && ok(d2.contains(v), "contains")?;
            ensure(lhs == rhs, || format!("#{k} {v:?}: {both:?} vs {d1:?} and {d2:?}"))?;
            points += 1;
        }

        let case = cases[k % 4];
        let outer = if case == FlattenCase::Constants { random_domain(&mut rng, p, true) } else { d1.clone() };
        let l = outer.localization().ring.clone();
        let (nums, den) = match case {
            FlattenCase::Constants => (vec![rand_poly(&mut rng, &l, 2, 2)], l.constant(rat(2))),
            FlattenCase::InvertElement => (vec![l.one()], nonconstant(&mut rng, &l)),
            FlattenCase::Bounded => (vec![nonconstant(&mut rng, &l)], l.one()),
            FlattenCase::General => (vec![nonconstant(&mut rng, &l), l.one()], nonconstant(&mut rng, &l)),
        };
        let fl = ok(flatten(&outer, &nums, &den), "flatten")?;
        ensure(fl.case == case, || format!("#{k}: expected {case:?}, got {:?}", fl.case))?;
        for v in corpus.valuations() {
            let lhs = ok(fl.domain.contains(v), "contains")?;
            let rhs = ok(inner_membership(v, &outer, &nums, &den), "inner_membership")?;
            ensure(lhs == rhs, || format!("#{k} {case:?} {v:?}: {:?} vs {outer:?} with {nums:?}/{den}", fl.domain))?;
            points += 1;
        }
    }
    Ok(format!("20 configurations, {points} pointwise checks, all four flatten cases"))
}

// ---------------------------------------------------------------- 8

fn check_refinement(c: &Covering, corpus: &ProbeCorpus) -> Result<usize, String> {
    let r = ok(refine_cover(c), "refine_cover")?;
    let base = c.base();
    for d in r.cover.domains() {
        let mut data = d.numerators().to_vec();
        data.push(d.denominator().clone());
        ensure(base.ring().is_unit_ideal(&data), || format!("{d:?} is not unit-ideal data"))?;
    }
    for (k, d) in r.cover.domains().iter().enumerate() {
        let u = &c.domains()[r.assignment[k]];
        for v in corpus.valuations() {
            ensure(!ok(d.contains(v), "contains")? || ok(u.contains(v), "contains")?, || format!("{d:?} not inside {u:?} at {v:?}"))?;
        }
    }
    let before: Vec<String> = c.uncovered(corpus).iter().map(|v| format!("{v:?}")).collect();
    let after: Vec<String> = r.cover.uncovered(corpus).iter().map(|v| format!("{v:?}")).collect();
    ensure(before == after, || format!("coverage changed: {before:?} -> {after:?}"))?;
    Ok(r.cover.domains().len())
}

fn random_cover(rng: &mut ChaCha8Rng, p: &PairOfRings) -> Covering {
    let b = p.ring();
    loop {
        let f = nonconstant(rng, b);
        let t = if rng.gen_bool(0.5) {
            // (f, 1 + f r) is always the unit ideal
            let r = rand_poly(rng, b, 2, 1);
            vec![f.clone(), b.nf(&b.one().add(&b.mul(&f, &r)))]
        } else {
            vec![b.one(), f, nonconstant(rng, b)]
        };
        if let Ok(c) = Covering::rational(p, &t) {
            return c;
        }
    }
}

fn criterion_8() -> Outcome {
    let plane = pair(&["x", "y"], &[], &[]);
    let worked = RationalDomain::new(&plane, els(plane.ring(), &["x", "y"]), el(plane.ring(), "x"))
        .and_then(|d1| {
            let d2 = RationalDomain::new(&plane, els(plane.ring(), &["x", "y"]), el(plane.ring(), "y"))?;
            Covering::new(&plane, vec![d1, d2])
        });

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pairs = [plane.clone(), pair(&["x", "y"], &["x+y-1"], &[])];
    let probes = corpora(&pairs, 8);
    let mut sizes = Vec::new();
    for k in 0..10 {
        let c = random_cover(&mut rng, &pairs[k % 2]);
        sizes.push(check_refinement(&c, &probes[&(k % 2)]).map_err(|e| format!("random cover #{k}: {e}"))?);
    }
    let line = &pairs[1];
    let lc = Covering::new(
        line,
        vec![
            RationalDomain::new(line, els(line.ring(), &["x", "y"]), el(line.ring(), "x")).unwrap(),
            RationalDomain::new(line, els(line.ring(), &["x", "y"]), el(line.ring(), "y")).unwrap(),
        ],
    )
    .unwrap();
    let line_out = check_refinement(&lc, &probes[&1]).map_err(|e| format!("line cover: {e}"))?;
    let summary = format!("10 random covers refined to {sizes:?} domains; on x+y=1 the worked cover refines to {line_out} domains");
    match worked {
        Ok(c) => {
            let n = check_refinement(&c, &probes[&0])?;
            Ok(format!("worked cover refines to {n} domains; {summary}"))
        }
        Err(e) => Err(format!("worked {{x,y}}-cover of (Q[x,y], Q) rejected: {} ({e}); {summary}", e.code())),
    }
}

// ---------------------------------------------------------------- 9

fn blowup_pairs() -> Vec<PairOfRings> {
    vec![
        pair(&["x", "y"], &[], &[]),
        pair(&["x", "y"], &[], &["x"]),
        pair(&["x", "y", "z"], &[], &[]),
        pair(&["x", "y"], &["x+y-1"], &[]),
    ]
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pairs = blowup_pairs();
    let probes = corpora(&pairs, 9);
    let mut total_charts = 0;
    for k in 0..50 {
        let i = k % pairs.len();
        let p = &pairs[i];
        let b = p.ring();
        let mut gens = vec![b.one()];
        for _ in 0..rng.gen_range(1..=2) {
            gens.push(if rng.gen_bool(0.6) { rand_monomial(&mut rng, b, 2) } else { nonconstant(&mut rng, b) });
        }
        let e = ok(ModuleE::new(p, gens), "ModuleE")?;
        let cs = ok(charts(&e), "charts")?;
        total_charts += cs.len();
        for c in &cs {
            ensure(is_invertible_on_chart(&e, c), || format!("#{k} {:?}: chart {} not principal", e.gens(), c.index))?;
        }
        for v in probes[&i].valuations() {
            let covered = cs.iter().any(|c| {
                RationalDomain::new(p, e.gens().to_vec(), c.generator.clone()).is_ok_and(|d| d.contains(v).unwrap_or(false))
            });
            ensure(covered, || format!("#{k} {:?}: probe {v:?} on no chart", e.gens()))?;
        }
        for c in &cs {
            let f = ok(universal_factorization(&c.inclusion, &e), "universal_factorization")?;
            ensure(!f.assignments.is_empty(), || format!("#{k}: chart {} does not factor", c.index))?;
            for (j, hj) in &f.assignments {
                let cj = cs.iter().find(|x| x.index == *j).ok_or("unknown chart")?;
                let back = ok(compose(hj, &cj.inclusion), "compose")?;
                ensure(back.same_map(&c.inclusion), || format!("#{k}: factorization through {j} differs"))?;
            }
        }
    }
    Ok(format!("50 modules, {total_charts} charts"))
}

// ---------------------------------------------------------------- 10

fn random_monomial_pair(rng: &mut ChaCha8Rng) -> MonomialPair {
    loop {
        let mut m = vec![vec![1, 0], vec![0, 1]];
        if rng.gen_bool(0.5) {
            m = vec![vec![1, 0], vec![1, 1], vec![1, 2]];
        }
        let n: Vec<Vec<i64>> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let mut v = vec![0i64, 0];
                for _ in 0..rng.gen_range(2..=3) {
                    let g = m.choose(rng).unwrap();
                    v[0] += g[0];
                    v[1] += g[1];
                }
                v
            })
            .collect();
        if let Ok(p) = MonomialPair::new(2, m, n) {
            return p;
        }
    }
}

const NORMALIZATION_BOUND: u32 = 3;

fn criterion_10() -> Outcome {
    let cusp = pair(&["t"], &[], &["t^2", "t^3"]);
    let n = relative_normalization(&cusp, 3);
    ensure(n.pair.same_subring(&PairOfRings::full(cusp.ring().clone())), || format!("cusp normalizes to {:?}", n.pair))?;

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in 0..20 {
        let p = random_monomial_pair(&mut rng);
        let exact = ok(p.normalization_pair(NORMALIZATION_BOUND), "normalization_pair")?.pair;
        let general = relative_normalization(&ok(p.to_pair(), "to_pair")?, NORMALIZATION_BOUND).pair;
        ensure(exact.same_subring(&general), || format!("#{k} {p:?}: {:?} vs {:?}", exact.a_gens(), general.a_gens()))?;
    }

    let e = ok(ModuleE::new(&cusp, els(cusp.ring(), &["1", "t^2"])), "ModuleE")?;
    let r = ok(nor_blowup_commutes(&e, 3), "nor_blowup_commutes")?;
    ensure(r == NorBlowup::Agree, || format!("cusp: {r:?}"))?;
    for k in 0..10 {
        let p = random_monomial_pair(&mut rng);
        let e_vec = p.m_gens.choose(&mut rng).unwrap().clone();
        let r = ok(nor_blowup_commutes_monomial(&p, &[vec![0, 0], e_vec.clone()], 4), "nor_blowup_commutes_monomial")?;
        ensure(r == NorBlowup::Agree, || format!("#{k} {p:?}, E = {{0, {e_vec:?}}}: {r:?}"))?;
    }
    Ok("cusp -> Q[t]; 20 monomial pairs agree with the general path; 11 blow ups commute".into())
}

// ---------------------------------------------------------------- 11

fn equalizer_checks(p: &PairOfRings, c: &Covering) -> Result<(), String> {
    let sec = |i: usize, s: &str| el(&c.domains()[i].localization().ring, s);
    match ok(sheaf_equalizer_check(c, &[sec(0, "x"), sec(1, "x")], 2), "equalizer")? {
        EqualizerOutcome::Glued { section, .. } if section == el(p.ring(), "x") => {}
        o => return Err(format!("x did not glue: {o:?}")),
    }
    match ok(sheaf_equalizer_check(c, &[sec(0, "3"), sec(1, "3")], 2), "equalizer")? {
        EqualizerOutcome::Glued { in_o: true, .. } => {}
        o => return Err(format!("constant section: {o:?}")),
    }
    match ok(sheaf_equalizer_check(c, &[sec(0, "y*t"), sec(1, "0")], 2), "equalizer")? {
        EqualizerOutcome::Mismatch { difference, .. } if !difference.is_zero() => Ok(()),
        o => Err(format!("incompatible pair accepted: {o:?}")),
    }
}

fn two_chart_cover(p: &PairOfRings) -> birat::Result<Covering> {
    let d1 = RationalDomain::new(p, els(p.ring(), &["x", "y"]), el(p.ring(), "x"))?;
    let d2 = RationalDomain::new(p, els(p.ring(), &["x", "y"]), el(p.ring(), "y"))?;
    Covering::new(p, vec![d1, d2])
}

fn criterion_11() -> Outcome {
    let line = pair(&["x", "y"], &["x+y-1"], &[]);
    let lc = two_chart_cover(&line).map_err(|e| e.to_string())?;
    equalizer_checks(&line, &lc).map_err(|e| format!("on x+y=1: {e}"))?;
    let plane = pair(&["x", "y"], &[], &[]);
    match two_chart_cover(&plane) {
        Ok(c) => {
            equalizer_checks(&plane, &c)?;
            Ok("glued, O-membership and mismatch witness as expected".into())
        }
        Err(e) => Err(format!(
            "two-chart cover of (Q[x,y], Q) rejected: {} ({e}); on x+y=1 gluing, O-membership and the mismatch witness all behave",
            e.code()
        )),
    }
}

// ----------------------------------------------------------------

/// Criteria whose stated example is not unit-ideal data.
const EXPECTED_FAILURES: [usize; 2] = [8, 11];

#[test]
fn acceptance() {
    type Criterion = (usize, &'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        (1, "valuation axioms", Some(Duration::from_secs(10)), criterion_1),
        (2, "affine scheme: Val(B,B) vs Spec B", Some(Duration::from_secs(5)), criterion_2),
        (3, "M not local, end to end", Some(Duration::from_secs(1)), criterion_3),
        (4, "primary-specialization chain", Some(Duration::from_secs(30)), criterion_4),
        (5, "pullback-retraction oracle", Some(Duration::from_secs(120)), criterion_5),
        (6, "functoriality of bir_map", None, criterion_6),
        (7, "rational-domain algebra", None, criterion_7),
        (8, "covering refinement", None, criterion_8),
        (9, "blow-up suite", Some(Duration::from_secs(120)), criterion_9),
        (10, "normalization", None, criterion_10),
        (11, "sheaf equalizer", None, criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let late = limit.is_some_and(|l| elapsed > l);
        let pass = outcome.is_ok() && !late;
        let limit_text = limit.map_or("no limit".to_string(), |l| format!("limit {} s", l.as_secs()));
        let detail = match (&outcome, late) {
            (Ok(d), false) => d.clone(),
            (Ok(d), true) => format!("{d}; too slow"),
            (Err(e), _) => e.clone(),
        };
        println!(
            "criterion {n:>2} {} {name}: {detail} ({:.2} s, {limit_text})",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !pass && !EXPECTED_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
