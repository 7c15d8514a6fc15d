//! JSON forms of rings, pairs, homomorphisms, valuations, domains and probe
//! corpora. Polynomials are strings in the canonical printing; every
//! `*_to_json` output parses back to an equal object.

use serde::{Deserialize, Serialize};

use crate::domains::{ProbeCorpus, RationalDomain};
use crate::error::{Error, Result};
use crate::pairs::{PairHom, PairOfRings};
use crate::poly::Polynomial;
use crate::ring::RingPresentation;
use crate::valuation::{Valuation, ValuationKind, Value};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingJson {
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    /// Generators of `A` over `Q`.
    #[serde(rename = "A", default)]
    pub a: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub source: PairJson,
    pub target: PairJson,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ValuationJson {
    Trivial {
        prime: Vec<String>,
    },
    Weight {
        weights: Vec<Vec<i64>>,
    },
    Composite {
        prime: Vec<String>,
        quotient: RingJson,
        residue: Vec<String>,
        weights: Vec<Vec<i64>>,
    },
    /// `inner ∘ φ` for `φ` from the ambient pair to `target`.
    Pullback {
        target: PairJson,
        images: Vec<String>,
        inner: Box<ValuationJson>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainJson {
    pub numerators: Vec<String>,
    pub denominator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbesJson {
    pub pair: PairJson,
    pub valuations: Vec<ValuationJson>,
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn parse_all(ring: &RingPresentation, ss: &[String]) -> Result<Vec<Polynomial>> {
    ss.iter().map(|s| ring.parse_elem(s)).collect()
}

pub fn ring_to_json(r: &RingPresentation) -> RingJson {
    RingJson { vars: r.ctx().names().to_vec(), relations: strings(r.relations().gens()) }
}

pub fn ring_from_json(j: &RingJson) -> Result<RingPresentation> {
    RingPresentation::parse(&j.vars, &j.relations)
}

pub fn pair_to_json(p: &PairOfRings) -> PairJson {
    let r = ring_to_json(p.ring());
    PairJson { vars: r.vars, relations: r.relations, a: strings(p.a_gens()) }
}

pub fn pair_from_json(j: &PairJson) -> Result<PairOfRings> {
    PairOfRings::parse(&j.vars, &j.relations, &j.a)
}

pub fn hom_to_json(h: &PairHom) -> HomJson {
    HomJson { source: pair_to_json(h.source()), target: pair_to_json(h.target()), images: strings(h.images()) }
}

pub fn hom_from_json(j: &HomJson) -> Result<PairHom> {
    let source = pair_from_json(&j.source)?;
    let target = pair_from_json(&j.target)?;
    let images = parse_all(target.ring(), &j.images)?;
    PairHom::new(source, target, images)
}

pub fn valuation_to_json(v: &Valuation) -> ValuationJson {
    match v.kind() {
        ValuationKind::Trivial { prime, .. } => ValuationJson::Trivial { prime: strings(prime) },
        ValuationKind::Weight { weights, .. } => ValuationJson::Weight { weights: weights.clone() },
        ValuationKind::Composite { prime, quotient, residue, weights, .. } => ValuationJson::Composite {
            prime: strings(prime),
            quotient: ring_to_json(quotient),
            residue: strings(residue),
            weights: weights.clone(),
        },
        ValuationKind::Pullback { hom, inner } => ValuationJson::Pullback {
            target: pair_to_json(hom.target()),
            images: strings(hom.images()),
            inner: Box::new(valuation_to_json(inner)),
        },
    }
}

/// A valuation on `pair.ring()`; the pair supplies `A` for pullbacks.
pub fn valuation_from_json(pair: &PairOfRings, j: &ValuationJson) -> Result<Valuation> {
    let ring = pair.ring();
    match j {
        ValuationJson::Trivial { prime } => Valuation::trivial(ring, &parse_all(ring, prime)?),
        ValuationJson::Weight { weights } => Valuation::weight(ring, weights.clone()),
        ValuationJson::Composite { prime, quotient, residue, weights } => {
            let q = ring_from_json(quotient)?;
            Valuation::composite(ring, &parse_all(ring, prime)?, &q, parse_all(&q, residue)?, weights.clone())
        }
        ValuationJson::Pullback { target, images, inner } => {
            let target = pair_from_json(target)?;
            let images = parse_all(target.ring(), images)?;
            let hom = PairHom::new_ring_map(pair.clone(), target.clone(), images)?;
            let inner = valuation_from_json(&target, inner)?;
            Valuation::pullback_node(&hom, &inner)
        }
    }
}

pub fn value_to_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Zero => serde_json::Value::String("ZERO".into()),
        Value::Finite(x) => serde_json::json!(x),
    }
}

pub fn domain_to_json(d: &RationalDomain) -> DomainJson {
    DomainJson { numerators: strings(d.numerators()), denominator: d.denominator().to_string() }
}

pub fn domain_from_json(pair: &PairOfRings, j: &DomainJson) -> Result<RationalDomain> {
    let ring = pair.ring();
    RationalDomain::new(pair, parse_all(ring, &j.numerators)?, ring.parse_elem(&j.denominator)?)
}

pub fn probes_to_json(c: &ProbeCorpus) -> ProbesJson {
    ProbesJson { pair: pair_to_json(c.pair()), valuations: c.valuations().iter().map(valuation_to_json).collect() }
}

/// Members of `Val(B, A)` among the listed valuations.
pub fn probes_from_json(j: &ProbesJson) -> Result<ProbeCorpus> {
    let pair = pair_from_json(&j.pair)?;
    let vals = j.valuations.iter().map(|v| valuation_from_json(&pair, v)).collect::<Result<Vec<_>>>()?;
    ProbeCorpus::new(&pair, vals)
}

pub fn probes_from_str(s: &str) -> Result<ProbeCorpus> {
    let j: ProbesJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    probes_from_json(&j)
}
