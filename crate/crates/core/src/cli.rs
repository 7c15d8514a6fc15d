//! Batch front end: one JSON request in, one JSON response out.
//!
//! Exit codes: 0 on success, 1 when the library reports a mathematical
//! error, 2 on malformed input.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::blowup::{charts, is_invertible_on_chart, ModuleE};
use crate::domains::{
    flatten, intersect, refine_cover, sheaf_equalizer_check, Covering, EqualizerOutcome, ProbeCorpus,
};
use crate::error::{Error, Result};
use crate::json::*;
use crate::pairs::{is_adic, relative_normalization, AdicResult, MonomialPair};
use crate::valuation::{bir_map, cgamma_level, in_val, is_a_valuation, retract, sigma, tau};

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Request {
    Eval { pair: PairJson, valuation: ValuationJson, f: String },
    CheckVal { pair: PairJson, valuation: ValuationJson },
    Retract { pair: PairJson, valuation: ValuationJson },
    BirMap { hom: HomJson, valuation: ValuationJson },
    Domain {
        pair: PairJson,
        domain: DomainJson,
        #[serde(default)]
        valuations: Vec<ValuationJson>,
    },
    Intersect { pair: PairJson, domains: Vec<DomainJson> },
    RefineCover { pair: PairJson, cover: Vec<DomainJson> },
    Flatten { pair: PairJson, outer: DomainJson, inner: DomainJson },
    BlowupCharts {
        pair: PairJson,
        #[serde(rename = "E")]
        e: Vec<String>,
    },
    Normalize {
        #[serde(default)]
        pair: Option<PairJson>,
        #[serde(default)]
        monomial: Option<MonomialJson>,
    },
    IsAdic { hom: HomJson },
    SheafCheck { pair: PairJson, cover: Vec<DomainJson>, sections: Vec<String> },
    Tau { pair: PairJson, valuation: ValuationJson },
    Sigma { pair: PairJson, prime: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialJson {
    pub rank: usize,
    #[serde(rename = "M")]
    pub m: Vec<Vec<i64>>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub status: String,
    pub result: Json,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub degree_bound: u32,
    pub seed: u64,
    /// Probe corpus fixture (JSON text) for coverage-style commands.
    pub probes: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree_bound: 3, seed: 0, probes: None }
    }
}

impl Response {
    fn ok(result: Json, diagnostics: Vec<String>) -> Self {
        Response { status: "ok".into(), result, diagnostics }
    }

    fn error(e: &Error) -> Self {
        Response {
            status: "error".into(),
            result: json!({ "code": e.code(), "message": e.to_string() }),
            diagnostics: vec![],
        }
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }
}

/// Parses and runs a request; returns the response and the exit code.
pub fn run_str(input: &str, opts: &Options) -> (Response, i32) {
    let req: Request = match serde_json::from_str(input) {
        Ok(r) => r,
        Err(e) => return (Response::error(&Error::Malformed(e.to_string())), 2),
    };
    match run(&req, opts) {
        Ok(r) => (r, 0),
        Err(e) => {
            let code = if e.is_input_error() { 2 } else { 1 };
            (Response::error(&e), code)
        }
    }
}

fn to_json<T: Serialize>(t: &T) -> Json {
    serde_json::to_value(t).expect("serializable")
}

fn corpus(pair: &crate::pairs::PairOfRings, opts: &Options) -> Result<ProbeCorpus> {
    match &opts.probes {
        Some(text) => {
            let c = probes_from_str(text)?;
            if c.pair() != pair {
                return Err(Error::Malformed("probe corpus lives on a different pair".into()));
            }
            Ok(c)
        }
        None => Ok(ProbeCorpus::default_for(pair, opts.seed)),
    }
}

pub fn run(req: &Request, opts: &Options) -> Result<Response> {
    let mut diags = Vec::new();
    let result = match req {
        Request::Eval { pair, valuation, f } => {
            let p = pair_from_json(pair)?;
            let v = valuation_from_json(&p, valuation)?;
            let f = p.ring().parse_elem(f)?;
            json!({ "value": value_to_json(&v.evaluate(&f)?) })
        }
        Request::CheckVal { pair, valuation } => {
            let p = pair_from_json(pair)?;
            let v = valuation_from_json(&p, valuation)?;
            let is_a = is_a_valuation(&v, &p)?;
            let (level, member) = if is_a { (cgamma_level(&v, &p)?, in_val(&v, &p)?) } else { (None, false) };
            json!({ "is_a_valuation": is_a, "cgamma_level": level, "in_val": member })
        }
        Request::Retract { pair, valuation } => {
            let p = pair_from_json(pair)?;
            let v = valuation_from_json(&p, valuation)?;
            json!({ "valuation": to_json(&valuation_to_json(&retract(&v, &p)?)) })
        }
        Request::BirMap { hom, valuation } => {
            let h = hom_from_json(hom)?;
            let v = valuation_from_json(h.target(), valuation)?;
            json!({ "valuation": to_json(&valuation_to_json(&bir_map(&h, &v)?)) })
        }
        Request::Domain { pair, domain, valuations } => {
            let p = pair_from_json(pair)?;
            let d = domain_from_json(&p, domain)?;
            let members = valuations
                .iter()
                .map(|v| d.contains(&valuation_from_json(&p, v)?))
                .collect::<Result<Vec<_>>>()?;
            json!({
                "domain": to_json(&domain_to_json(&d)),
                "localized_pair": to_json(&pair_to_json(&d.to_pair()?)),
                "membership": members,
            })
        }
        Request::Intersect { pair, domains } => {
            let p = pair_from_json(pair)?;
            let ds = domains.iter().map(|d| domain_from_json(&p, d)).collect::<Result<Vec<_>>>()?;
            let (first, rest) = ds.split_first().ok_or_else(|| Error::Malformed("no domains".into()))?;
            let mut acc = first.clone();
            for d in rest {
                acc = intersect(&acc, d)?;
            }
            json!({ "domain": to_json(&domain_to_json(&acc)) })
        }
        Request::RefineCover { pair, cover } => {
            let p = pair_from_json(pair)?;
            let ds = cover.iter().map(|d| domain_from_json(&p, d)).collect::<Result<Vec<_>>>()?;
            let c = Covering::new(&p, ds)?;
            let r = refine_cover(&c)?;
            let probes = corpus(&p, opts)?;
            let before = c.uncovered(&probes).len();
            let after = r.cover.uncovered(&probes).len();
            if before > 0 {
                diags.push(format!("{before} of {} probes lie outside the input cover", probes.len()));
            }
            let domains: Vec<Json> = r.cover.domains().iter().map(|d| to_json(&domain_to_json(d))).collect();
            json!({
                "domains": domains,
                "assignment": r.assignment,
                "indices": r.indices,
                "probes": probes.len(),
                "uncovered_before": before,
                "uncovered_after": after,
            })
        }
        Request::Flatten { pair, outer, inner } => {
            let p = pair_from_json(pair)?;
            let o = domain_from_json(&p, outer)?;
            let l = &o.localization().ring;
            let nums = inner.numerators.iter().map(|s| l.parse_elem(s)).collect::<Result<Vec<_>>>()?;
            let den = l.parse_elem(&inner.denominator)?;
            let f = flatten(&o, &nums, &den)?;
            json!({
                "domain": to_json(&domain_to_json(&f.domain)),
                "case": format!("{:?}", f.case),
                "localized_vars": l.ctx().names(),
            })
        }
        Request::BlowupCharts { pair, e } => {
            let p = pair_from_json(pair)?;
            let gens = e.iter().map(|s| p.ring().parse_elem(s)).collect::<Result<Vec<_>>>()?;
            let m = ModuleE::new(&p, gens)?;
            let cs: Vec<Json> = charts(&m)?
                .iter()
                .map(|c| {
                    json!({
                        "index": c.index,
                        "generator": c.generator.to_string(),
                        "pair": to_json(&pair_to_json(&c.pair)),
                        "invertible": is_invertible_on_chart(&m, c),
                    })
                })
                .collect();
            json!({ "E": e_strings(&m), "charts": cs })
        }
        Request::Normalize { pair, monomial } => match (pair, monomial) {
            (Some(pj), None) => {
                let p = pair_from_json(pj)?;
                let n = relative_normalization(&p, opts.degree_bound);
                let added: Vec<String> = n.added.iter().map(|g| g.to_string()).collect();
                json!({ "pair": to_json(&pair_to_json(&n.pair)), "added": added, "bounded": n.bounded })
            }
            (None, Some(m)) => {
                let mp = MonomialPair::new(m.rank, m.m.clone(), m.n.clone())?;
                let n = mp.normalize(opts.degree_bound.max(1) * 2);
                json!({
                    "generators": n.generators,
                    "certificates": n.certificates,
                    "box": n.box_size,
                    "pair": to_json(&pair_to_json(&mp.normalization_pair(n.box_size)?.pair)),
                })
            }
            _ => return Err(Error::Malformed("give exactly one of \"pair\" and \"monomial\"".into())),
        },
        Request::IsAdic { hom } => {
            let h = hom_from_json(hom)?;
            match is_adic(&h, opts.degree_bound) {
                AdicResult::NotAdic { witness } => json!({
                    "result": "not_adic",
                    "witness": to_json(&valuation_to_json(&witness)),
                }),
                r => json!({ "result": r.label() }),
            }
        }
        Request::SheafCheck { pair, cover, sections } => {
            let p = pair_from_json(pair)?;
            let ds = cover.iter().map(|d| domain_from_json(&p, d)).collect::<Result<Vec<_>>>()?;
            if sections.len() != ds.len() {
                return Err(Error::Malformed("one section per domain is required".into()));
            }
            let secs = ds
                .iter()
                .zip(sections)
                .map(|(d, s)| d.localization().ring.parse_elem(s))
                .collect::<Result<Vec<_>>>()?;
            let c = Covering::new(&p, ds)?;
            match sheaf_equalizer_check(&c, &secs, opts.degree_bound)? {
                EqualizerOutcome::Glued { section, in_o } => {
                    json!({ "outcome": "glued", "section": section.to_string(), "in_O": in_o })
                }
                EqualizerOutcome::Mismatch { i, j, difference } => {
                    json!({ "outcome": "mismatch", "i": i, "j": j, "difference": difference.to_string() })
                }
                EqualizerOutcome::NotFound { bound } => json!({ "outcome": "not_found", "bound": bound }),
            }
        }
        Request::Tau { pair, valuation } => {
            let p = pair_from_json(pair)?;
            let v = valuation_from_json(&p, valuation)?;
            let ideal: Vec<String> = tau(&v, &p)?.iter().map(|g| g.to_string()).collect();
            json!({ "ideal": ideal, "A_presentation": to_json(&ring_to_json(&p.a_presentation())) })
        }
        Request::Sigma { pair, prime } => {
            let p = pair_from_json(pair)?;
            let gens = prime.iter().map(|s| p.ring().parse_elem(s)).collect::<Result<Vec<_>>>()?;
            json!({ "valuation": to_json(&valuation_to_json(&sigma(&p, &gens)?)) })
        }
    };
    Ok(Response::ok(result, diags))
}

fn e_strings(m: &ModuleE) -> Vec<String> {
    m.gens().iter().map(|g| g.to_string()).collect()
}
