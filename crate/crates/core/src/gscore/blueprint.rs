//! Block-by-block construction of generator sequences and its file format.
//!
//! Block k uses the window of all monomials of degree 1..=c_k, q_k of them,
//! and the generators h_j for j ∈ J(q_k, n_k). Realistic blocks are far too
//! large to materialize, so counts and degree profiles may be symbolic.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bounds::within_scaled_power;
use super::search::{decide_size_condition, minimal_n_with_margin, Margin};
use super::{format_rational, parse_rational, GSParams};
use crate::combinat::{enumerate_j, j_cardinality, DEFAULT_ENUMERATION_CAP};
use crate::error::{too_large, Error, Result};
use crate::field::FieldDescriptor;
use crate::freealg::Polynomial;
use crate::graded::RSequence;
use crate::symfun::{h_degree, h_degree_distribution, h_generator, monomial_window, window_size};

/// Counts with a smaller binomial index than this are evaluated.
const EXACT_COUNT_INDEX: u64 = 4096;
/// Largest n·c for which the exact degree distribution is tabulated.
const EXACT_PROFILE_LIMIT: u64 = 64;
/// Largest window degree c for which q is formed.
const MAX_WINDOW_DEGREE: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Dense,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Symbolic => "symbolic",
            Mode::Dense => "dense",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "dense" => Ok(Mode::Dense),
            other => Err(Error::InvalidParams(format!("unknown mode `{other}` (symbolic|dense)"))),
        }
    }
}

/// An exact count or an unevaluated binomial coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Count {
    Exact(BigUint),
    Binomial { top: BigUint, bottom: BigUint },
}

impl Count {
    /// |J(q,n)| = C(n+q-1, q-1)
    pub fn of_j(q: &BigUint, n: &BigUint) -> Count {
        if n.min(&(q - 1u32)) <= &BigUint::from(EXACT_COUNT_INDEX) {
            Count::Exact(j_cardinality(q, n))
        } else {
            Count::Binomial { top: n + q - 1u32, bottom: q - 1u32 }
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Count::Exact(v) => Some(v),
            Count::Binomial { .. } => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exact(v) => write!(f, "{v}"),
            Count::Binomial { top, bottom } => write!(f, "binom({top},{bottom})"),
        }
    }
}

impl FromStr for Count {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidBlueprint(format!("bad count `{s}`"));
        if let Some(inner) = s.strip_prefix("binom(").and_then(|r| r.strip_suffix(')')) {
            let (top, bottom) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(Count::Binomial {
                top: top.parse().map_err(|_| bad())?,
                bottom: bottom.parse().map_err(|_| bad())?,
            });
        }
        s.parse().map(Count::Exact).map_err(|_| bad())
    }
}

/// Generators of one block with degrees in [lo, hi], `total` of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub lo: BigUint,
    pub hi: BigUint,
    pub total: Count,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeProfile {
    /// degree -> number of generators
    Exact(BTreeMap<u64, BigUint>),
    Envelope(Envelope),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub k: usize,
    pub c: BigUint,
    pub c_prime: BigUint,
    pub q: BigUint,
    pub n: BigUint,
    pub j_count: Count,
    /// Absent for toy blocks, which ignore the ε-condition.
    pub margin: Option<Margin>,
    pub degrees: DegreeProfile,
    /// Materialized h_j over ℚ, in the order of J(q,n).
    pub generators: Option<Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSBlueprint {
    pub d: u32,
    /// `None` for toy blueprints.
    pub params: Option<GSParams>,
    pub mode: Mode,
    pub toy: bool,
    pub blocks: Vec<Block>,
}

/// The r table: exact entries plus per-block envelopes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BlueprintR {
    pub exact: RSequence,
    pub envelopes: Vec<Envelope>,
}

impl GSBlueprint {
    pub fn r(&self) -> BlueprintR {
        let mut out = BlueprintR::default();
        for block in &self.blocks {
            match &block.degrees {
                DegreeProfile::Exact(map) => map.iter().for_each(|(deg, count)| out.exact.add(*deg, count)),
                DegreeProfile::Envelope(env) => out.envelopes.push(env.clone()),
            }
        }
        out
    }

    /// First block whose window degree c_k is at least `degree`.
    pub fn covering_block(&self, degree: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.c >= BigUint::from(degree))
    }

    /// All materialized generators, in block order.
    pub fn generators(&self) -> Vec<&Polynomial> {
        self.blocks.iter().filter_map(|b| b.generators.as_ref()).flatten().collect()
    }
}

fn window_q(d: u32, c: &BigUint) -> Result<BigUint> {
    match c.to_u64().filter(|&c| c <= MAX_WINDOW_DEGREE) {
        Some(c) => Ok(window_size(d, c as u32)),
        None => Err(too_large("window degree c", c, MAX_WINDOW_DEGREE)),
    }
}

fn profile(d: u32, c: &BigUint, n: &BigUint, j_count: &Count) -> DegreeProfile {
    let envelope = || DegreeProfile::Envelope(Envelope { lo: n.clone(), hi: n * c, total: j_count.clone() });
    let (Some(cs), Some(ns)) = (c.to_u64(), n.to_u64()) else { return envelope() };
    match j_count {
        Count::Exact(count) if cs == 1 => DegreeProfile::Exact(BTreeMap::from([(ns, count.clone())])),
        Count::Exact(_) if ns.saturating_mul(cs) <= EXACT_PROFILE_LIMIT => DegreeProfile::Exact(
            h_degree_distribution(d, cs as usize, ns as usize).into_iter().map(|(deg, v)| (deg as u64, v)).collect(),
        ),
        _ => envelope(),
    }
}

/// h_j for every j ∈ J(q,n) over ℚ, fanned out across threads.
fn materialize(d: u32, c: &BigUint, n: &BigUint, cap: u64) -> Result<(Vec<Polynomial>, BTreeMap<u64, BigUint>)> {
    let c = c.to_usize().filter(|&c| c as u64 <= 64).ok_or_else(|| too_large("dense window degree", c, 64))?;
    let n = n.to_usize().filter(|&n| n as u64 <= cap).ok_or_else(|| too_large("dense block n", n, cap))?;
    let window = monomial_window(d, c, cap)?;
    // the orbits of J(q,n) partition all q^n index words
    let words = BigUint::from(window.q()).pow(n as u32);
    if words > BigUint::from(cap) {
        return Err(too_large("total terms q^n of the block", words, cap));
    }
    let js = enumerate_j(window.q(), n, cap)?;
    let generators: Vec<Polynomial> =
        js.par_iter().map(|j| h_generator(j, &window, FieldDescriptor::Rational, cap)).collect::<Result<_>>()?;
    let mut degrees: BTreeMap<u64, BigUint> = BTreeMap::new();
    for j in &js {
        *degrees.entry(h_degree(j, &window) as u64).or_default() += 1u32;
    }
    Ok((generators, degrees))
}

pub fn build_blueprint(params: &GSParams, num_blocks: usize, mode: Mode) -> Result<GSBlueprint> {
    build_blueprint_with_cap(params, num_blocks, mode, DEFAULT_ENUMERATION_CAP)
}

pub fn build_blueprint_with_cap(params: &GSParams, num_blocks: usize, mode: Mode, cap: u64) -> Result<GSBlueprint> {
    if num_blocks < 1 {
        return Err(Error::InvalidParams("need at least one block".into()));
    }
    let d = params.d();
    let mut bp = GSBlueprint { d, params: Some(params.clone()), mode, toy: false, blocks: Vec::new() };
    let mut c_prev = BigUint::zero();
    for k in 1..=num_blocks {
        let c = &c_prev + 1u32;
        let q = window_q(d, &c)?;
        let (n, verdict) = minimal_n_with_margin(&q, &c_prev, params)?;
        let c_prime = &n * &c;
        let j_count = Count::of_j(&q, &n);
        let (degrees, generators) = match mode {
            Mode::Symbolic => (profile(d, &c, &n, &j_count), None),
            Mode::Dense => {
                let (gens, degrees) = materialize(d, &c, &n, cap)?;
                (DegreeProfile::Exact(degrees), Some(gens))
            }
        };
        bp.blocks.push(Block { k, c, c_prime: c_prime.clone(), q, n, j_count, margin: Some(verdict.margin), degrees, generators });
        let check = check_blueprint(&bp);
        if let Some(bad) = check.failures().next() {
            return Err(Error::InvalidBlueprint(format!("block {k}: {} failed: {}", bad.name, bad.detail)));
        }
        c_prev = c_prime;
    }
    Ok(bp)
}

/// One block with explicit (c, n), ignoring the ε-condition.
pub fn toy_blueprint(d: u32, c: u32, n: u32) -> Result<GSBlueprint> {
    if d < 2 || c < 1 || n < 1 {
        return Err(Error::InvalidParams(format!("toy blueprint needs d >= 2, c >= 1, n >= 1 (got {d}, {c}, {n})")));
    }
    let (c, n) = (BigUint::from(c), BigUint::from(n));
    let q = window_q(d, &c)?;
    let (generators, degrees) = materialize(d, &c, &n, DEFAULT_ENUMERATION_CAP)?;
    let block = Block {
        k: 1,
        c_prime: &n * &c,
        j_count: Count::of_j(&q, &n),
        c,
        q,
        n,
        margin: None,
        degrees: DegreeProfile::Exact(degrees),
        generators: Some(generators),
    };
    Ok(GSBlueprint { d, params: None, mode: Mode::Dense, toy: true, blocks: vec![block] })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    pub name: &'static str,
    pub block: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BlueprintCheck {
    pub invariants: Vec<Invariant>,
}

impl BlueprintCheck {
    pub fn passed(&self) -> bool {
        self.invariants.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Invariant> {
        self.invariants.iter().filter(|i| !i.passed)
    }

    fn push(&mut self, name: &'static str, block: usize, passed: bool, detail: impl Into<String>) {
        self.invariants.push(Invariant { name, block, passed, detail: detail.into() });
    }
}

fn profile_range(p: &DegreeProfile) -> Option<(BigUint, BigUint)> {
    match p {
        DegreeProfile::Exact(map) => {
            let lo = map.keys().next()?;
            let hi = map.keys().next_back()?;
            Some((BigUint::from(*lo), BigUint::from(*hi)))
        }
        DegreeProfile::Envelope(e) => Some((e.lo.clone(), e.hi.clone())),
    }
}

fn profile_total(p: &DegreeProfile) -> Count {
    match p {
        DegreeProfile::Exact(map) => Count::Exact(map.values().sum()),
        DegreeProfile::Envelope(e) => e.total.clone(),
    }
}

/// Re-derives every structural and numerical invariant from scratch.
pub fn check_blueprint(bp: &GSBlueprint) -> BlueprintCheck {
    let mut out = BlueprintCheck::default();
    let mut c_prev = BigUint::zero();
    for (i, block) in bp.blocks.iter().enumerate() {
        let k = block.k;
        out.push("block-index", k, k == i + 1, format!("k = {k} at position {}", i + 1));
        let chain = c_prev < block.c && block.c <= block.c_prime && block.c_prime == &block.n * &block.c;
        out.push("block-chain", k, chain, format!("c'_prev = {c_prev}, c = {}, c' = {}, n = {}", block.c, block.c_prime, block.n));
        match window_q(bp.d, &block.c) {
            Ok(q) => out.push("window-size", k, q == block.q, format!("q = {}", block.q)),
            Err(e) => out.push("window-size", k, false, e.to_string()),
        }
        let expected = Count::of_j(&block.q, &block.n);
        out.push("j-count", k, expected == block.j_count, format!("|J| = {}", block.j_count));
        let total_ok = profile_total(&block.degrees) == block.j_count;
        out.push("profile-total", k, total_ok, format!("profile total {}", profile_total(&block.degrees)));
        let range_ok = profile_range(&block.degrees)
            .is_some_and(|(lo, hi)| lo >= block.n && hi <= block.c_prime && lo > c_prev);
        out.push("degree-range", k, range_ok, format!("degrees within [{}, {}], above {c_prev}", block.n, block.c_prime));
        if let Some(gens) = &block.generators {
            out.push("generators", k, generators_match(gens, &block.degrees, bp.d), format!("{} generators", gens.len()));
        }
        if !bp.toy {
            check_size_condition(&mut out, bp, block, &c_prev);
        }
        c_prev = block.c_prime.clone();
    }
    if !bp.toy {
        check_r_bound(&mut out, bp);
    }
    out
}

fn generators_match(gens: &[Polynomial], profile: &DegreeProfile, d: u32) -> bool {
    let DegreeProfile::Exact(map) = profile else { return false };
    let mut seen: BTreeMap<u64, BigUint> = BTreeMap::new();
    for g in gens {
        if g.ambient().d != d {
            return false;
        }
        match g.homogeneous_degree() {
            Some(deg) => *seen.entry(deg as u64).or_default() += 1u32,
            None => return false,
        }
    }
    seen == *map
}

fn check_size_condition(out: &mut BlueprintCheck, bp: &GSBlueprint, block: &Block, c_prev: &BigUint) {
    let k = block.k;
    let Some(params) = &bp.params else {
        out.push("size-condition", k, false, "non-toy blueprint without eps");
        return;
    };
    let stored_ok = block.margin.as_ref().is_some_and(Margin::is_positive);
    match decide_size_condition(&block.q, &block.n, params) {
        Ok(v) => {
            let ok = v.holds && stored_ok && *c_prev < block.n;
            out.push("size-condition", k, ok, format!("n = {} > {c_prev}, margin {}", block.n, v.margin));
        }
        Err(e) => out.push("size-condition", k, false, e.to_string()),
    }
}

/// r_ℓ <= ε²(d-2ε)^(ℓ-2) on every degree carried by some block.
fn check_r_bound(out: &mut BlueprintCheck, bp: &GSBlueprint) {
    let Some(params) = &bp.params else { return };
    let (eps2, u) = (params.eps_squared(), params.u());
    for block in &bp.blocks {
        let k = block.k;
        match &block.degrees {
            DegreeProfile::Exact(map) => {
                let bad = map.iter().find(|(deg, count)| **deg < 2 || !within_scaled_power(count, &eps2, &u, **deg - 2));
                let detail = match bad {
                    Some((deg, count)) => format!("r_{deg} = {count} exceeds the bound"),
                    None => format!("{} degrees checked exactly", map.len()),
                };
                out.push("r-bound", k, bad.is_none(), detail);
            }
            DegreeProfile::Envelope(env) => {
                // every r_ℓ is at most the block total; ℓ >= n and u > 1
                let ok = env.lo >= block.n
                    && env.total == block.j_count
                    && block.margin.as_ref().is_some_and(Margin::is_positive)
                    && u > BigRational::one();
                out.push("r-bound", k, ok, format!("implied by |J| < eps^2 u^(n-2) over degrees [{}, {}]", env.lo, env.hi));
            }
        }
    }
}

// ---- file format ----

/// degree -> count as a JSON object with decimal-string values, in
/// increasing degree order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct DegreeMap(BTreeMap<u64, BigUint>);

impl Serialize for DegreeMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k.to_string(), v.to_string())))
    }
}

impl<'de> Deserialize<'de> for DegreeMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| Ok((k.parse().map_err(D::Error::custom)?, v.parse().map_err(D::Error::custom)?)))
            .collect::<std::result::Result<_, _>>()
            .map(DegreeMap)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum MarginFile {
    Exact(String),
    LnBounds { lo: String, hi: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvelopeFile {
    lo: String,
    hi: String,
    total: String,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum ProfileFile {
    Exact(DegreeMap),
    Envelope(EnvelopeFile),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockFile {
    k: usize,
    c: String,
    c_prime: String,
    q: String,
    n: String,
    j_count: String,
    margin: Option<MarginFile>,
    degrees: ProfileFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlueprintFile {
    d: u32,
    eps: Option<String>,
    mode: String,
    toy: bool,
    blocks: Vec<BlockFile>,
    r: DegreeMap,
    r_envelopes: Vec<EnvelopeFile>,
}

fn envelope_file(e: &Envelope) -> EnvelopeFile {
    EnvelopeFile { lo: e.lo.to_string(), hi: e.hi.to_string(), total: e.total.to_string() }
}

fn big(s: &str, what: &str) -> Result<BigUint> {
    s.parse().map_err(|_| Error::InvalidBlueprint(format!("{what}: `{s}` is not a nonnegative integer")))
}

fn envelope_from(e: &EnvelopeFile) -> Result<Envelope> {
    Ok(Envelope { lo: big(&e.lo, "envelope lo")?, hi: big(&e.hi, "envelope hi")?, total: e.total.parse()? })
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|e| Error::InvalidBlueprint(e.to_string()))
}

impl GSBlueprint {
    pub fn to_json(&self) -> String {
        let r = self.r();
        let file = BlueprintFile {
            d: self.d,
            eps: self.params.as_ref().map(|p| format_rational(p.eps())),
            mode: self.mode.to_string(),
            toy: self.toy,
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockFile {
                    k: b.k,
                    c: b.c.to_string(),
                    c_prime: b.c_prime.to_string(),
                    q: b.q.to_string(),
                    n: b.n.to_string(),
                    j_count: b.j_count.to_string(),
                    margin: b.margin.as_ref().map(|m| match m {
                        Margin::Exact(v) => MarginFile::Exact(format_rational(v)),
                        Margin::LnBounds { lo, hi } => {
                            MarginFile::LnBounds { lo: format_rational(lo), hi: format_rational(hi) }
                        }
                    }),
                    degrees: match &b.degrees {
                        DegreeProfile::Exact(map) => ProfileFile::Exact(DegreeMap(map.clone())),
                        DegreeProfile::Envelope(e) => ProfileFile::Envelope(envelope_file(e)),
                    },
                    generators: b.generators.as_ref().map(|g| g.iter().map(|p| p.to_string()).collect()),
                })
                .collect(),
            r: DegreeMap(r.exact.iter().map(|(k, v)| (k, v.clone())).collect()),
            r_envelopes: r.envelopes.iter().map(envelope_file).collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("serializable");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: BlueprintFile = serde_json::from_str(text).map_err(|e| Error::InvalidBlueprint(e.to_string()))?;
        let params = file
            .eps
            .as_deref()
            .map(|e| GSParams::new(file.d, rational(e)?).map_err(|e| Error::InvalidBlueprint(e.to_string())))
            .transpose()?;
        if params.is_none() != file.toy {
            return Err(Error::InvalidBlueprint("eps must be null exactly for toy blueprints".into()));
        }
        let mode: Mode = file.mode.parse().map_err(|e: Error| Error::InvalidBlueprint(e.to_string()))?;
        let mut blocks = Vec::with_capacity(file.blocks.len());
        for b in &file.blocks {
            let generators = b
                .generators
                .as_ref()
                .map(|gs| {
                    gs.iter()
                        .map(|s| {
                            Polynomial::parse(s, file.d, FieldDescriptor::Rational)
                                .map_err(|e| Error::InvalidBlueprint(format!("block {} generator `{s}`: {e}", b.k)))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            blocks.push(Block {
                k: b.k,
                c: big(&b.c, "c")?,
                c_prime: big(&b.c_prime, "c_prime")?,
                q: big(&b.q, "q")?,
                n: big(&b.n, "n")?,
                j_count: b.j_count.parse()?,
                margin: b
                    .margin
                    .as_ref()
                    .map(|m| -> Result<Margin> {
                        Ok(match m {
                            MarginFile::Exact(v) => Margin::Exact(rational(v)?),
                            MarginFile::LnBounds { lo, hi } => Margin::LnBounds { lo: rational(lo)?, hi: rational(hi)? },
                        })
                    })
                    .transpose()?,
                degrees: match &b.degrees {
                    ProfileFile::Exact(m) => DegreeProfile::Exact(m.0.clone()),
                    ProfileFile::Envelope(e) => DegreeProfile::Envelope(envelope_from(e)?),
                },
                generators,
            });
        }
        let bp = GSBlueprint { d: file.d, params, mode, toy: file.toy, blocks };
        let r = bp.r();
        let stored_exact: BTreeMap<u64, BigUint> = file.r.0;
        let stored_env = file.r_envelopes.iter().map(envelope_from).collect::<Result<Vec<_>>>()?;
        let exact: BTreeMap<u64, BigUint> = r.exact.iter().map(|(k, v)| (k, v.clone())).collect();
        if stored_exact != exact || stored_env != r.envelopes {
            return Err(Error::InvalidBlueprint("r table disagrees with the blocks".into()));
        }
        if let Some(bad) = check_blueprint(&bp).failures().next() {
            return Err(Error::InvalidBlueprint(format!("block {}: {} failed: {}", bad.block, bad.name, bad.detail)));
        }
        Ok(bp)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
