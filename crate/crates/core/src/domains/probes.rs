//! Finite sets of concrete points of `Val(B, A)` on which set-level
//! statements are checked pointwise.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::pairs::PairOfRings;
use crate::poly::{rat, Polynomial};
use crate::valuation::{in_val, retract, Valuation};

const MAX_POINTS: usize = 8;
const MAX_RANK_ONE: usize = 24;
const MAX_RANK_TWO: usize = 12;
const MAX_RETRACTS: usize = 8;

#[derive(Clone, Debug)]
pub struct ProbeCorpus {
    pair: PairOfRings,
    valuations: Vec<Valuation>,
}

impl ProbeCorpus {
    /// Keeps the members of `Val(B, A)` among `valuations`.
    pub fn new(pair: &PairOfRings, valuations: Vec<Valuation>) -> Result<Self> {
        let mut kept = Vec::new();
        for v in valuations {
            if v.ring() == pair.ring() && in_val(&v, pair)? {
                kept.push(v);
            }
        }
        Ok(ProbeCorpus { pair: pair.clone(), valuations: kept })
    }

    /// Trivial valuations at `(0)` (polynomial rings only), at coordinate
    /// hyperplanes and at rational points with coordinates in `{0, 1, -1}`;
    /// Gauss valuations with weights in `[-2, 2]` (rank 1) and `[-1, 1]^2`
    /// (rank 2) that lie in `Val`; retractions of some of those that do not.
    pub fn default_for(pair: &PairOfRings, seed: u64) -> Self {
        let ring = pair.ring();
        let n = ring.nvars();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<Valuation> = Vec::new();
        let mut outside: Vec<Valuation> = Vec::new();
        let polynomial = ring.relations().is_zero_ideal();

        let push = |v: Valuation, out: &mut Vec<Valuation>, outside: &mut Vec<Valuation>| match in_val(&v, pair) {
            Ok(true) => out.push(v),
            Ok(false) => outside.push(v),
            Err(_) => {}
        };

        if polynomial {
            if let Ok(v) = Valuation::trivial(ring, &[]) {
                push(v, &mut out, &mut outside);
            }
            for x in ring.vars() {
                if let Ok(v) = Valuation::trivial(ring, &[x]) {
                    push(v, &mut out, &mut outside);
                }
            }
        }
        let mut points = 0;
        for p in grid(n, &[0, 1, -1]).take(81) {
            if points == MAX_POINTS {
                break;
            }
            let ideal: Vec<Polynomial> =
                ring.vars().iter().zip(&p).map(|(x, &c)| x.sub(&ring.constant(rat(c)))).collect();
            if ring.is_unit_ideal(&ideal) {
                continue;
            }
            if let Ok(v) = Valuation::trivial(ring, &ideal) {
                points += 1;
                push(v, &mut out, &mut outside);
            }
        }

        let rank_one = sample(n, &[0, 1, -1, 2, -2], &mut rng);
        let mut count = 0;
        for w in rank_one {
            if count == MAX_RANK_ONE {
                break;
            }
            if let Ok(v) = Valuation::weight(ring, w.iter().map(|&x| vec![x]).collect()) {
                count += 1;
                push(v, &mut out, &mut outside);
            }
        }
        let rank_two = sample(2 * n, &[0, 1, -1], &mut rng);
        let mut count = 0;
        for w in rank_two {
            if count == MAX_RANK_TWO {
                break;
            }
            let weights: Vec<Vec<i64>> = w.chunks(2).map(|c| c.to_vec()).collect();
            if weights.iter().all(|c| c[0] == 0) || weights.iter().all(|c| c[1] == 0) {
                continue;
            }
            if let Ok(v) = Valuation::weight(ring, weights) {
                count += 1;
                push(v, &mut out, &mut outside);
            }
        }
        for v in outside.iter().take(MAX_RETRACTS) {
            if let Ok(r) = retract(v, pair) {
                out.push(r);
            }
        }
        ProbeCorpus { pair: pair.clone(), valuations: out }
    }

    pub fn pair(&self) -> &PairOfRings {
        &self.pair
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    pub fn len(&self) -> usize {
        self.valuations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valuations.is_empty()
    }
}

/// The whole grid when it is small, otherwise 512 distinct random vectors.
fn sample(n: usize, values: &[i64], rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let total = values.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    if total <= 4096 {
        let mut all: Vec<Vec<i64>> = grid(n, values).collect();
        all.shuffle(rng);
        return all;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < 512 {
        let v: Vec<i64> = (0..n).map(|_| *values.choose(rng).expect("nonempty")).collect();
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// All vectors of length `n` over `values`, in lexicographic index order.
fn grid(n: usize, values: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total = values.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let v = values[idx % values.len()];
                idx /= values.len();
                v
            })
            .collect()
    })
}
