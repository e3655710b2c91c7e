//! End-to-end acceptance suite. Run with `--nocapture` to see one line per criterion.

use std::time::{Duration, Instant};

use hdepth_core::corpus::reverify_witness;
use hdepth_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SMALL_N_BUDGET: Duration = Duration::from_secs(10);
const N6_BUDGET: Duration = Duration::from_secs(600);
const N6_WORKERS: usize = 4;
const RANDOM_SAMPLES: u64 = 100_000;
const RANDOM_SEEDS: [(u32, u64); 3] = [(7, 42), (8, 42), (9, 42)];
const INVERSION_VECTORS: usize = 10_000;
const INVERSION_MAX_N: u32 = 12;
const UNIQUENESS_MAX_VALUE: u64 = 200;
const UNIQUENESS_MAX_K: u32 = 6;
const BETA47_SAMPLES: u64 = 1_000_000;
const BETA47_SEED: u64 = 7;
const SMALL_N_INSTANCES: u64 = 1 + 4 + 18 + 166 + 7579;
const N6_INSTANCES: u64 = 7_828_352;

struct Ledger {
    lines: Vec<(usize, bool, String)>,
}

impl Ledger {
    fn record(&mut self, id: usize, ok: bool, detail: String) {
        println!("[{}] criterion {id:>2}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((id, ok, detail));
    }
}

fn vacuity_free(summary: &VerifySummary, p: Predicate) -> bool {
    let c = summary.checker(p);
    c.applicable > 0 && c.failed == 0
}

fn choose(n: u64, k: u64) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

fn brute_reps(value: u64, k: u32, max_top: u64) -> usize {
    if value == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let mut total = 0;
    for top in k as u64..max_top {
        let c = choose(top, k as u64);
        if c > value {
            break;
        }
        total += brute_reps(value - c, k - 1, top);
    }
    total
}

#[test]
fn acceptance() {
    let mut ledger = Ledger { lines: Vec::new() };

    // 1: every n <= 5, exhaustively
    let start = Instant::now();
    let small = verify_corpus(&EnumerationPlan::exhaustive(1, 5), None).unwrap();
    let elapsed = start.elapsed();
    ledger.record(
        1,
        small.instances == SMALL_N_INSTANCES && small.failures == 0 && elapsed < SMALL_N_BUDGET,
        format!("n<=5 exhaustive: {} instances, {} failures, {:.2?} (budget {SMALL_N_BUDGET:?})", small.instances, small.failures, elapsed),
    );

    // 2: n = 6 exhaustively, partitioned
    let start = Instant::now();
    let six = verify_corpus(&EnumerationPlan::exhaustive(6, 6).with_workers(N6_WORKERS), None).unwrap();
    let elapsed = start.elapsed();
    ledger.record(
        2,
        six.instances == N6_INSTANCES && six.failures == 0 && elapsed < N6_BUDGET,
        format!("n=6 exhaustive, {N6_WORKERS} workers: {} instances, {} failures, {:.2?} (budget {N6_BUDGET:?})", six.instances, six.failures, elapsed),
    );

    // 3: random corpora at n = 7, 8, 9
    let mut random = Vec::new();
    let mut ok3 = true;
    let mut detail3 = Vec::new();
    for (n, seed) in RANDOM_SEEDS {
        let s = verify_corpus(&EnumerationPlan::random(n, n, RANDOM_SAMPLES, seed), None).unwrap();
        let main = s.checker(Predicate::Main);
        ok3 &= s.instances == RANDOM_SAMPLES && main.failed == 0 && main.applicable == RANDOM_SAMPLES && s.failures == 0;
        detail3.push(format!("n={n} seed={seed}: {} samples, main {}/{} pass", s.instances, main.passed, main.applicable));
        random.push(s);
    }
    ledger.record(3, ok3, detail3.join("; "));

    // 4: degree-6 bounds, not vacuous
    let q6_applicable: u64 = random.iter().map(|s| s.checker(Predicate::BetaQ6).applicable).sum();
    let q6_failed: u64 = random.iter().map(|s| s.checker(Predicate::BetaQ6).failed).sum();
    ledger.record(
        4,
        q6_applicable > 0 && q6_failed == 0,
        format!("beta-q6 bounds: {q6_applicable} applicable, {q6_failed} violations"),
    );

    // 5: n = 9 bounds at q = 7, not vacuous
    let l79 = random[2].checker(Predicate::Lemma79);
    ledger.record(
        5,
        vacuity_free(&random[2], Predicate::Lemma79),
        format!("lemma79 at n=9: {} applicable, {} violations", l79.applicable, l79.failed),
    );

    // 6: printed tables reproduce exactly
    let tables = reproduce_proof_tables();
    ledger.record(
        6,
        tables.diffs.is_empty() && tables.cells_checked > 0,
        format!("{} tables, {} cells, {} diffs", tables.tables.len(), tables.cells_checked, tables.diffs.len()),
    );

    // 7: principal iff hdepth(I) = n iff hdepth(S/I) = n - 1, on criteria 1 and 2
    let t_small = small.checker(Predicate::Teo1);
    let t_six = six.checker(Predicate::Teo1);
    ledger.record(
        7,
        t_small.applicable == SMALL_N_INSTANCES && t_six.applicable == N6_INSTANCES && t_small.failed + t_six.failed == 0,
        format!("teo1: {} + {} checked, {} violations", t_small.applicable, t_six.applicable, t_small.failed + t_six.failed),
    );

    // 8: hdepth(I) - hdepth(S/I) = 1 iff the beta criterion, both sides agree
    let all: Vec<&VerifySummary> = [&small, &six].into_iter().chain(random.iter()).collect();
    let lem_app: u64 = all.iter().map(|s| s.checker(Predicate::Lem).applicable).sum();
    let lem_fail: u64 = all.iter().map(|s| s.checker(Predicate::Lem).failed).sum();
    let outside: u64 = all.iter().map(|s| s.lem_outside_gate.disagree).sum();
    ledger.record(
        8,
        lem_app > 0 && lem_fail == 0,
        format!("lem: {lem_app} applicable, {lem_fail} disagreements ({outside} outside the gate)"),
    );

    // 9: beta -> alpha inversion on fuzzed vectors
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = 0usize;
    for _ in 0..INVERSION_VECTORS {
        let n = rng.gen_range(1..=INVERSION_MAX_N);
        let counts: Vec<u64> = (0..=n).map(|j| rng.gen_range(0..=binom(n, j as i64).unwrap() as u64)).collect();
        let a = AlphaVector::new(n, counts.clone()).unwrap();
        let q = rng.gen_range(0..=n);
        let back = alpha_from_beta(&beta_table(&a, q).unwrap());
        if back.iter().zip(&counts).any(|(&b, &c)| b != c as i128) || back.len() != q as usize + 1 {
            bad += 1;
        }
    }
    ledger.record(9, bad == 0, format!("inversion: {INVERSION_VECTORS} vectors, {bad} mismatches"));

    // 10: Macaulay uniqueness and Kruskal-Katona consistency
    let mut non_unique = 0;
    for k in 1..=UNIQUENESS_MAX_K {
        for value in 0..=UNIQUENESS_MAX_VALUE {
            let reps = brute_reps(value, k, value + k as u64 + 1);
            let r = macaulay_rep(value, k).unwrap();
            if reps != 1 || r.value().unwrap() != value as i128 {
                non_unique += 1;
            }
        }
    }
    let kk = small.checker(Predicate::KruskalKatona);
    ledger.record(
        10,
        non_unique == 0 && kk.applicable == SMALL_N_INSTANCES && kk.failed == 0,
        format!("uniqueness N<={UNIQUENESS_MAX_VALUE}, k<={UNIQUENESS_MAX_K}: {non_unique} bad; kruskal-katona n<=5: {} violations", kk.failed),
    );

    // 11: q = 7 search terminates honestly
    let report = search_counterexample(&EnumerationPlan::random(10, 14, BETA47_SAMPLES, BETA47_SEED), Predicate::Beta47Bound).unwrap();
    let ok11 = match report.status {
        SearchStatus::WitnessFound => {
            !report.witnesses.is_empty()
                && report.witnesses.iter().all(|w| reverify_witness(Predicate::Beta47Bound, w).unwrap())
        }
        SearchStatus::Inconclusive => report.violations == 0 && report.instances_scanned == BETA47_SAMPLES,
        SearchStatus::Exhausted => false,
    };
    ledger.record(
        11,
        ok11,
        format!(
            "beta47 search n=10..14: {:?}, {} scanned, {} applicable, {} violations",
            report.status, report.instances_scanned, report.applicable, report.violations
        ),
    );

    let failed: Vec<usize> = ledger.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    println!("{} of {} criteria passed", ledger.lines.len() - failed.len(), ledger.lines.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
