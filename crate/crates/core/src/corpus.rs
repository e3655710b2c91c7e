//! Corpora of squarefree ideals: every ideal for small `n` (as simplicial
//! complexes, i.e. downsets of the Boolean lattice) and seeded random ideals
//! for larger `n`. Drives verification runs and counterexample searches.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::MAX_N;
use crate::error::{Error, Result};
use crate::hdepth::{hdepth_counts, hdepth_report, report_from_quotient_alpha, HdepthReport};
use crate::ideal::{is_antichain, parse_ideal, quotient_alpha, AlphaVector, Ideal, Monomial};
use crate::theorems::{lem_sides, Predicate, Witness};

/// Largest `n` supported by exhaustive enumeration.
pub const MAX_EXHAUSTIVE_N: u32 = 6;

/// Chunks targeted by the exhaustive partitioner (≥ 8 × 64 workers).
const TARGET_CHUNKS: usize = 512;

/// Random samples per chunk.
const SAMPLE_BLOCK: u64 = 1024;

/// Witnesses kept per check in a report.
pub const MAX_WITNESSES: usize = 16;

/// A simplicial complex on at most six vertices: bit `s` of `faces` is set
/// when the subset with mask `s` is a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Complex {
    n: u32,
    faces: u64,
}

const LEVEL: [u64; 7] = {
    let mut out = [0u64; 7];
    let mut i = 0;
    while i < 64 {
        out[(i as u64).count_ones() as usize] |= 1 << i;
        i += 1;
    }
    out
};

impl Complex {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn faces(&self) -> u64 {
        self.faces
    }

    /// Faces per size: the α-vector of `S/I`.
    pub fn f_vector(&self) -> Vec<u64> {
        (0..=self.n as usize).map(|d| (self.faces & LEVEL[d]).count_ones() as u64).collect()
    }

    /// The Stanley–Reisner ideal, generated by the minimal nonfaces.
    pub fn ideal(&self) -> Ideal {
        let order = Order::new(self.n);
        let gens = order
            .elems
            .iter()
            .filter(|&&s| self.faces & (1 << s) == 0 && order.can_include(s, self.faces))
            .map(|&s| Monomial::from_bits(s as u64))
            .collect();
        Ideal::from_antichain_unchecked(self.n, gens)
    }

    fn is_proper(&self) -> bool {
        // no faces: I = S; every subset a face: I = 0
        self.faces != 0 && self.faces != full_faces(self.n)
    }
}

fn full_faces(n: u32) -> u64 {
    if n == 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// Subsets of `{0..n}` in a degree-ordered linear extension, with the
/// bitmask (over subset indices) of each subset's immediate subsets.
#[derive(Debug, Clone)]
struct Order {
    elems: Vec<u8>,
    below: [u64; 64],
}

impl Order {
    fn new(n: u32) -> Self {
        let mut elems: Vec<u8> = (0..1u8 << n).collect();
        elems.sort_by_key(|&s| (s.count_ones(), s));
        let mut below = [0u64; 64];
        for &s in &elems {
            let mut rest = s;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                below[s as usize] |= 1 << (s ^ bit);
                rest ^= bit;
            }
        }
        Self { elems, below }
    }

    #[inline]
    fn can_include(&self, s: u8, faces: u64) -> bool {
        let b = self.below[s as usize];
        faces & b == b
    }
}

/// A subtree of the enumeration: the first `pos` subsets of the order are decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chunk {
    pos: usize,
    faces: u64,
}

/// Depth-first enumeration of complexes below a [`Chunk`], skipping `I = 0` and `I = S`.
pub struct ComplexIter {
    n: u32,
    order: Order,
    stack: Vec<Chunk>,
}

impl ComplexIter {
    fn new(n: u32, start: Chunk) -> Self {
        Self { n, order: Order::new(n), stack: vec![start] }
    }
}

impl Iterator for ComplexIter {
    type Item = Complex;

    fn next(&mut self) -> Option<Complex> {
        let len = self.order.elems.len();
        while let Some(Chunk { mut pos, mut faces }) = self.stack.pop() {
            loop {
                while pos < len && !self.order.can_include(self.order.elems[pos], faces) {
                    pos += 1;
                }
                if pos == len {
                    break;
                }
                self.stack.push(Chunk { pos: pos + 1, faces });
                faces |= 1 << self.order.elems[pos];
                pos += 1;
            }
            let c = Complex { n: self.n, faces };
            if c.is_proper() {
                return Some(c);
            }
        }
        None
    }
}

fn check_exhaustive_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::Capacity(format!(
            "exhaustive enumeration supports n <= {MAX_EXHAUSTIVE_N}, got {n}"
        )));
    }
    Ok(())
}

/// Every simplicial complex on `n` vertices except the void and full ones.
pub fn enumerate_complexes(n: u32) -> Result<ComplexIter> {
    check_exhaustive_n(n)?;
    Ok(ComplexIter::new(n, Chunk { pos: 0, faces: 0 }))
}

/// Every proper nonzero squarefree ideal of `K[x1..xn]`, once each.
pub fn enumerate_ideals(n: u32) -> Result<impl Iterator<Item = Ideal>> {
    Ok(enumerate_complexes(n)?.map(|c| c.ideal()))
}

/// Splits the enumeration tree at the shallowest depth with at least
/// `target` subtrees. Concatenating the chunks' streams in order reproduces
/// [`enumerate_complexes`].
pub fn partition_chunks(n: u32, target: usize) -> Result<Vec<Chunk>> {
    check_exhaustive_n(n)?;
    let order = Order::new(n);
    let mut frontier = vec![Chunk { pos: 0, faces: 0 }];
    let mut pos = 0;
    while frontier.len() < target && pos < order.elems.len() {
        let s = order.elems[pos];
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for c in &frontier {
            if order.can_include(s, c.faces) {
                next.push(Chunk { pos: pos + 1, faces: c.faces | 1 << s });
            }
            next.push(Chunk { pos: pos + 1, faces: c.faces });
        }
        frontier = next;
        pos += 1;
    }
    Ok(frontier)
}

/// Complexes below one chunk.
pub fn chunk_complexes(n: u32, chunk: Chunk) -> Result<ComplexIter> {
    check_exhaustive_n(n)?;
    Ok(ComplexIter::new(n, chunk))
}

/// Degree weights for generator sampling: `inner` for degrees in `[2, n-2]`,
/// `outer` for the remaining degrees `1`, `n-1` and `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBias {
    pub inner: u32,
    pub outer: u32,
}

impl Default for DegreeBias {
    fn default() -> Self {
        DegreeBias { inner: 4, outer: 1 }
    }
}

impl DegreeBias {
    fn weight(&self, n: u32, d: u32) -> u32 {
        if d >= 2 && d + 2 <= n {
            self.inner
        } else {
            self.outer
        }
    }
}

/// Draws a random proper nonzero ideal on `n >= 2` variables.
///
/// The generator count is uniform in `[1, 3n]`; each generator's degree is
/// drawn with [`DegreeBias`] weights and its support uniformly among subsets
/// of that size.
pub fn random_ideal<R: Rng + ?Sized>(n: u32, rng: &mut R, bias: &DegreeBias) -> Result<Ideal> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::Domain(format!("random ideals need 2 <= n <= {MAX_N}, got {n}")));
    }
    if bias.inner == 0 && bias.outer == 0 {
        return Err(Error::Domain("degree bias weights are all zero".into()));
    }
    let total: u32 = (1..=n).map(|d| bias.weight(n, d)).sum();
    loop {
        let g = rng.gen_range(1..=3 * n);
        let mut gens = Vec::with_capacity(g as usize);
        for _ in 0..g {
            let mut pick = rng.gen_range(0..total);
            let mut degree = 1;
            for d in 1..=n {
                let w = bias.weight(n, d);
                if pick < w {
                    degree = d;
                    break;
                }
                pick -= w;
            }
            let bits = sample(rng, n as usize, degree as usize)
                .into_iter()
                .fold(0u64, |acc, v| acc | 1 << v);
            gens.push(Monomial::from_bits(bits));
        }
        let ideal = Ideal::new(n, gens)?;
        if !ideal.is_zero() && !ideal.is_unit() {
            return Ok(ideal);
        }
    }
}

/// Stream `index` of the generator seeded with `seed`.
fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub workers: usize,
    /// Run only this chunk index when set.
    pub chunk: Option<usize>,
}

impl Default for Partition {
    fn default() -> Self {
        Partition { workers: 1, chunk: None }
    }
}

/// What to scan. Exhaustive mode covers every `n` in the range; random mode
/// draws `sample_count` ideals, each with `n` uniform in the range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationPlan {
    pub n_min: u32,
    pub n_max: u32,
    pub mode: Mode,
    pub sample_count: u64,
    pub seed: Option<u64>,
    pub degree_bias: Option<DegreeBias>,
    pub partition: Partition,
}

impl EnumerationPlan {
    pub fn exhaustive(n_min: u32, n_max: u32) -> Self {
        EnumerationPlan {
            n_min,
            n_max,
            mode: Mode::Exhaustive,
            sample_count: 0,
            seed: None,
            degree_bias: None,
            partition: Partition::default(),
        }
    }

    pub fn random(n_min: u32, n_max: u32, sample_count: u64, seed: u64) -> Self {
        EnumerationPlan {
            n_min,
            n_max,
            mode: Mode::Random,
            sample_count,
            seed: Some(seed),
            degree_bias: None,
            partition: Partition::default(),
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.partition.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::Domain(format!("invalid n range {}..{}", self.n_min, self.n_max)));
        }
        if self.partition.workers == 0 {
            return Err(Error::Domain("workers must be at least 1".into()));
        }
        match self.mode {
            Mode::Exhaustive => check_exhaustive_n(self.n_max),
            Mode::Random => {
                if self.sample_count == 0 {
                    return Err(Error::Domain("random mode needs at least one sample".into()));
                }
                if self.seed.is_none() {
                    return Err(Error::Domain("random mode needs a seed".into()));
                }
                if self.n_min < 2 || self.n_max > crate::ideal::MAX_ENUM_N {
                    return Err(Error::Capacity(format!(
                        "random mode supports 2 <= n <= {}, got {}..{}",
                        crate::ideal::MAX_ENUM_N,
                        self.n_min,
                        self.n_max
                    )));
                }
                Ok(())
            }
        }
    }

    fn units(&self) -> Result<Vec<Unit>> {
        Ok(match self.mode {
            Mode::Exhaustive => {
                let mut units = Vec::new();
                for n in self.n_min..=self.n_max {
                    for chunk in partition_chunks(n, TARGET_CHUNKS)? {
                        units.push(Unit::Complexes { n, chunk });
                    }
                }
                units
            }
            Mode::Random => {
                let blocks = self.sample_count.div_ceil(SAMPLE_BLOCK);
                (0..blocks)
                    .map(|b| Unit::Samples {
                        start: b * SAMPLE_BLOCK,
                        end: ((b + 1) * SAMPLE_BLOCK).min(self.sample_count),
                    })
                    .collect()
            }
        })
    }

    /// Draws sample `index` of a random plan.
    pub fn sample(&self, index: u64) -> Result<Ideal> {
        let seed = self.seed.ok_or_else(|| Error::Domain("random mode needs a seed".into()))?;
        let mut rng = sample_rng(seed, index);
        let n = rng.gen_range(self.n_min..=self.n_max);
        random_ideal(n, &mut rng, &self.degree_bias.unwrap_or_default())
    }
}

/// One schedulable piece of a plan.
#[derive(Debug, Clone, Copy)]
enum Unit {
    Complexes { n: u32, chunk: Chunk },
    Samples { start: u64, end: u64 },
}

/// One corpus member with its quotient α-vector.
struct Instance {
    ideal: Ideal,
    alpha: Vec<u64>,
}

fn for_each_instance(plan: &EnumerationPlan, unit: Unit, mut f: impl FnMut(Instance)) -> Result<()> {
    match unit {
        Unit::Complexes { n, chunk } => {
            for c in chunk_complexes(n, chunk)? {
                let ideal = c.ideal();
                debug_assert!(is_antichain(ideal.gens()));
                f(Instance { ideal, alpha: c.f_vector() });
            }
        }
        Unit::Samples { start, end } => {
            for i in start..end {
                let ideal = plan.sample(i)?;
                let alpha = quotient_alpha(&ideal)?.counts().to_vec();
                f(Instance { ideal, alpha });
            }
        }
    }
    Ok(())
}

fn into_report(inst: Instance) -> HdepthReport {
    let n = inst.ideal.n();
    report_from_quotient_alpha(inst.ideal, AlphaVector::from_counts_unchecked(n, inst.alpha))
}

/// Runs `work` over chunk indices on `workers` threads, handing results to
/// `sink` in index order on the calling thread.
fn run_ordered<T: Send>(
    indices: &[usize],
    workers: usize,
    work: impl Fn(usize) -> T + Sync,
    mut sink: impl FnMut(usize, T),
) {
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, T)>();
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1).min(indices.len().max(1)) {
            let tx = tx.clone();
            let next = &next;
            let work = &work;
            scope.spawn(move || loop {
                let slot = next.fetch_add(1, Ordering::Relaxed);
                let Some(&idx) = indices.get(slot) else { break };
                if tx.send((slot, work(idx))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut want = 0;
        for (slot, value) in rx {
            pending.insert(slot, value);
            while let Some(v) = pending.remove(&want) {
                sink(indices[want], v);
                want += 1;
            }
        }
    });
}

fn selected_units(plan: &EnumerationPlan) -> Result<(Vec<Unit>, Vec<usize>)> {
    plan.validate()?;
    let units = plan.units()?;
    let indices: Vec<usize> = match plan.partition.chunk {
        Some(c) if c >= units.len() => {
            return Err(Error::Domain(format!("chunk {c} out of range (plan has {} chunks)", units.len())))
        }
        Some(c) => vec![c],
        None => (0..units.len()).collect(),
    };
    Ok((units, indices))
}

/// Number of schedulable chunks in a plan.
pub fn chunk_count(plan: &EnumerationPlan) -> Result<usize> {
    plan.validate()?;
    Ok(plan.units()?.len())
}

/// Re-evaluates a witness from its serialized ideal and confirms the check still fails.
pub fn reverify_witness(predicate: Predicate, w: &Witness) -> Result<bool> {
    let ideal = parse_ideal(&w.ideal, w.n)?;
    let r = hdepth_report(&ideal)?;
    let o = predicate.check(&r);
    Ok(o.failed() && o.witness.as_ref() == Some(w))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckerSummary {
    pub name: String,
    pub applicable: u64,
    pub passed: u64,
    pub failed: u64,
    /// No instance met the check's preconditions.
    pub vacuous: bool,
    pub witnesses: Vec<Witness>,
}

/// Both sides of the bound equivalence on instances its gate excludes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GateAudit {
    pub excluded: u64,
    pub agree: u64,
    pub disagree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub instances: u64,
    pub checkers: Vec<CheckerSummary>,
    pub lem_outside_gate: GateAudit,
    /// Count of instances per (n, hdepth(S/I)), keyed `"n/q"`.
    pub hdepth_quotient_histogram: BTreeMap<String, u64>,
    pub failures: u64,
}

impl VerifySummary {
    pub fn checker(&self, p: Predicate) -> &CheckerSummary {
        self.checkers.iter().find(|c| c.name == p.name()).expect("suite predicate")
    }
}

#[derive(Default)]
struct ChunkTally {
    instances: u64,
    counts: Vec<(u64, u64, u64)>,
    witnesses: Vec<Vec<Witness>>,
    gate: GateAudit,
    histogram: BTreeMap<(u32, u32), u64>,
    rows: String,
}

/// Formats one CSV row: n, generators, α(S/I) padded to `width`, both hdepths, check flags.
pub fn csv_row(r: &HdepthReport, width: usize, outcomes: &[crate::theorems::CheckOutcome]) -> String {
    let mut row = format!("{},\"{}\"", r.n(), r.ideal);
    for j in 0..=width {
        row.push(',');
        if let Some(a) = r.alpha_quotient.counts().get(j) {
            row.push_str(&a.to_string());
        }
    }
    row.push_str(&format!(",{},{}", r.hdepth_quotient, r.hdepth_ideal));
    for o in outcomes {
        row.push(',');
        row.push_str(match (o.applicable, o.passed) {
            (false, _) => "na",
            (true, true) => "pass",
            (true, false) => "fail",
        });
    }
    row.push('\n');
    row
}

pub fn csv_header(width: usize) -> String {
    let mut h = String::from("n,gens");
    for j in 0..=width {
        h.push_str(&format!(",alpha_{j}"));
    }
    h.push_str(",hdepth_q,hdepth_i");
    for p in Predicate::SUITE {
        h.push(',');
        h.push_str(p.name());
    }
    h.push('\n');
    h
}

/// Runs the whole check suite over a corpus. When `rows` is given, one CSV
/// row per instance is streamed to it in corpus order.
pub fn verify_corpus(plan: &EnumerationPlan, mut rows: Option<&mut dyn FnMut(&str)>) -> Result<VerifySummary> {
    let (units, indices) = selected_units(plan)?;
    let want_rows = rows.is_some();
    let width = plan.n_max as usize;
    let suite = Predicate::SUITE;
    let work = |idx: usize| -> Result<ChunkTally> {
        let mut t = ChunkTally {
            counts: vec![(0, 0, 0); suite.len()],
            witnesses: vec![Vec::new(); suite.len()],
            ..Default::default()
        };
        for_each_instance(plan, units[idx], |inst| {
            let r = into_report(inst);
            t.instances += 1;
            *t.histogram.entry((r.n(), r.hdepth_quotient)).or_default() += 1;
            let outcomes: Vec<_> = suite.iter().map(|p| p.check(&r)).collect();
            for (i, o) in outcomes.iter().enumerate() {
                if o.applicable {
                    t.counts[i].0 += 1;
                    if o.passed {
                        t.counts[i].1 += 1;
                    } else {
                        t.counts[i].2 += 1;
                        if t.witnesses[i].len() < MAX_WITNESSES {
                            t.witnesses[i].push(o.witness.clone().expect("failed outcome has witness"));
                        }
                    }
                }
            }
            if !outcomes[1].applicable {
                let (l, r2) = lem_sides(&r);
                t.gate.excluded += 1;
                if l == r2 {
                    t.gate.agree += 1;
                } else {
                    t.gate.disagree += 1;
                }
            }
            if want_rows {
                t.rows.push_str(&csv_row(&r, width, &outcomes));
            }
        })?;
        Ok(t)
    };

    let mut total = ChunkTally {
        counts: vec![(0, 0, 0); suite.len()],
        witnesses: vec![Vec::new(); suite.len()],
        ..Default::default()
    };
    let mut first_err = None;
    run_ordered(&indices, plan.partition.workers, work, |_, res| match res {
        Err(e) => {
            first_err.get_or_insert(e);
        }
        Ok(t) => {
            total.instances += t.instances;
            for i in 0..suite.len() {
                total.counts[i].0 += t.counts[i].0;
                total.counts[i].1 += t.counts[i].1;
                total.counts[i].2 += t.counts[i].2;
                for w in &t.witnesses[i] {
                    if total.witnesses[i].len() < MAX_WITNESSES {
                        total.witnesses[i].push(w.clone());
                    }
                }
            }
            total.gate.excluded += t.gate.excluded;
            total.gate.agree += t.gate.agree;
            total.gate.disagree += t.gate.disagree;
            for (k, v) in t.histogram {
                *total.histogram.entry(k).or_default() += v;
            }
            if let Some(sink) = rows.as_mut() {
                sink(&t.rows);
            }
        }
    });
    if let Some(e) = first_err {
        return Err(e);
    }

    let mut failures = 0;
    let mut checkers = Vec::with_capacity(suite.len());
    for (i, p) in suite.iter().enumerate() {
        let (applicable, passed, failed) = total.counts[i];
        failures += failed;
        let mut witnesses = Vec::new();
        for w in &total.witnesses[i] {
            if reverify_witness(*p, w)? {
                witnesses.push(w.clone());
            }
        }
        checkers.push(CheckerSummary {
            name: p.name().to_string(),
            applicable,
            passed,
            failed,
            vacuous: applicable == 0,
            witnesses,
        });
    }
    Ok(VerifySummary {
        instances: total.instances,
        checkers,
        lem_outside_gate: total.gate,
        hdepth_quotient_histogram: total
            .histogram
            .into_iter()
            .map(|((n, q), v)| (format!("{n}/{q}"), v))
            .collect(),
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// At least one verified witness.
    WitnessFound,
    /// Every instance of an exhaustive corpus was scanned; none violates.
    Exhausted,
    /// The sampling budget ran out without a witness.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub predicate: Predicate,
    pub status: SearchStatus,
    pub instances_scanned: u64,
    pub applicable: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Cheap precondition test on `(n, hdepth(S/I))` before a full report is built.
fn may_apply(p: Predicate, n: u32, q: u32) -> bool {
    match p {
        Predicate::BetaQ6 => q == 6,
        Predicate::Lemma79 => n == 9 && q == 7,
        Predicate::Beta47Bound => q == 7,
        Predicate::Main => q <= 6 || n <= 9,
        Predicate::Teo1 | Predicate::Lem | Predicate::KruskalKatona => true,
    }
}

/// Scans a corpus for instances where `predicate` is applicable and fails.
/// Every reported witness has been re-derived from its serialized ideal.
pub fn search_counterexample(plan: &EnumerationPlan, predicate: Predicate) -> Result<SearchReport> {
    let started = Instant::now();
    let (units, indices) = selected_units(plan)?;
    let work = |idx: usize| -> Result<(u64, u64, u64, Vec<Witness>)> {
        let (mut scanned, mut applicable, mut violations, mut found) = (0, 0, 0, Vec::new());
        for_each_instance(plan, units[idx], |inst| {
            scanned += 1;
            let q = hdepth_counts(&inst.alpha);
            if !may_apply(predicate, inst.ideal.n(), q) {
                return;
            }
            let o = predicate.check(&into_report(inst));
            if o.applicable {
                applicable += 1;
            }
            if o.failed() {
                violations += 1;
                if found.len() < MAX_WITNESSES {
                    found.push(o.witness.expect("failed outcome has witness"));
                }
            }
        })?;
        Ok((scanned, applicable, violations, found))
    };
    let (mut scanned, mut applicable, mut violations, mut witnesses) = (0, 0, 0, Vec::new());
    let mut first_err = None;
    run_ordered(&indices, plan.partition.workers, work, |_, res| match res {
        Err(e) => {
            first_err.get_or_insert(e);
        }
        Ok((s, a, v, w)) => {
            scanned += s;
            applicable += a;
            violations += v;
            for x in w {
                if witnesses.len() < MAX_WITNESSES {
                    witnesses.push(x);
                }
            }
        }
    });
    if let Some(e) = first_err {
        return Err(e);
    }
    let mut verified = Vec::with_capacity(witnesses.len());
    for w in witnesses {
        if reverify_witness(predicate, &w)? {
            verified.push(w);
        }
    }
    let status = if !verified.is_empty() {
        SearchStatus::WitnessFound
    } else if plan.mode == Mode::Exhaustive && plan.partition.chunk.is_none() {
        SearchStatus::Exhausted
    } else {
        SearchStatus::Inconclusive
    };
    Ok(SearchReport {
        predicate,
        status,
        instances_scanned: scanned,
        applicable,
        violations,
        witnesses: verified,
        seed: plan.seed,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    })
}
