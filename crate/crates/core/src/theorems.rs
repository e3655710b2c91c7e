//! Executable checks of the Hilbert depth results, each returning a
//! structured outcome with a witness on failure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom_diff, binom_small, kk_lower_bound, kk_upper_bound, macaulay_rep};
use crate::error::Error;
use crate::hdepth::HdepthReport;

/// The named checks a corpus run can apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    /// principal ⟺ hdepth(I) = n ⟺ hdepth(S/I) = n − 1
    Teo1,
    /// hdepth(I) ≥ q ⟺ β_k^q(S/I) ≤ C(n−q+k−1, k) for 3 ≤ k ≤ q
    Lem,
    /// the four β_k^6 bounds when hdepth(S/I) = 6
    BetaQ6,
    /// β_k^7 ≤ k + 1 when n = 9 and hdepth(S/I) = 7
    Lemma79,
    /// hdepth(I) ≥ hdepth(S/I) when hdepth(S/I) ≤ 6 or n ≤ 9
    Main,
    /// consecutive α(S/I) entries respect the shadow bounds
    KruskalKatona,
    /// the single inequality β_4^7 ≤ C(n−4, 4) at hdepth(S/I) = 7
    Beta47Bound,
}

impl Predicate {
    pub const ALL: [Predicate; 7] = [
        Predicate::Teo1,
        Predicate::Lem,
        Predicate::BetaQ6,
        Predicate::Lemma79,
        Predicate::Main,
        Predicate::KruskalKatona,
        Predicate::Beta47Bound,
    ];

    /// Checks run by `verify`. The β_4^7 inequality is only a search target.
    pub const SUITE: [Predicate; 6] = [
        Predicate::Teo1,
        Predicate::Lem,
        Predicate::BetaQ6,
        Predicate::Lemma79,
        Predicate::Main,
        Predicate::KruskalKatona,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Teo1 => "teo1",
            Predicate::Lem => "lem",
            Predicate::BetaQ6 => "beta-q6",
            Predicate::Lemma79 => "lemma79",
            Predicate::Main => "main",
            Predicate::KruskalKatona => "kruskal-katona",
            Predicate::Beta47Bound => "beta47-bound",
        }
    }

    pub fn check(self, r: &HdepthReport) -> CheckOutcome {
        match self {
            Predicate::Teo1 => check_teo1(r),
            Predicate::Lem => check_lem_equivalence(r),
            Predicate::BetaQ6 => check_beta_bounds_q6(r),
            Predicate::Lemma79 => check_lemma79(r),
            Predicate::Main => check_main(r),
            Predicate::KruskalKatona => check_kruskal_katona(r),
            Predicate::Beta47Bound => check_beta47_bound(r),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPredicate(s.to_string()))
    }
}

/// Data needed to reproduce a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u32,
    pub ideal: String,
    pub hdepth_quotient: u32,
    pub hdepth_ideal: u32,
    /// α(S/I), decimal strings.
    pub alpha_quotient: Vec<String>,
    /// β-row of S/I at level `beta_level`, decimal strings.
    pub beta_level: u32,
    pub beta_quotient: Vec<String>,
    pub violated: String,
}

impl Witness {
    fn new(r: &HdepthReport, beta_level: u32, violated: String) -> Self {
        Witness {
            n: r.n(),
            ideal: r.ideal.to_string(),
            hdepth_quotient: r.hdepth_quotient,
            hdepth_ideal: r.hdepth_ideal,
            alpha_quotient: r.alpha_quotient.counts().iter().map(u64::to_string).collect(),
            beta_level,
            beta_quotient: r.beta_quotient(beta_level).values().iter().map(i128::to_string).collect(),
            violated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: Predicate,
    pub applicable: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    fn not_applicable(name: Predicate) -> Self {
        CheckOutcome { name, applicable: false, passed: true, witness: None }
    }

    fn pass(name: Predicate) -> Self {
        CheckOutcome { name, applicable: true, passed: true, witness: None }
    }

    fn fail(name: Predicate, witness: Witness) -> Self {
        CheckOutcome { name, applicable: true, passed: false, witness: Some(witness) }
    }

    pub fn failed(&self) -> bool {
        self.applicable && !self.passed
    }
}

/// Standing reductions: `I` nonprincipal and `I ⊆ m²`.
fn reduced(r: &HdepthReport) -> bool {
    !r.principal && r.contained_in_m2
}

fn c(n: i64, k: i64) -> i128 {
    if n < 0 {
        0
    } else {
        binom_small(n as u32, k)
    }
}

pub fn check_teo1(r: &HdepthReport) -> CheckOutcome {
    let n = r.n();
    let ideal_full = r.hdepth_ideal == n;
    let quotient_top = r.hdepth_quotient + 1 == n;
    if r.principal == ideal_full && ideal_full == quotient_top {
        CheckOutcome::pass(Predicate::Teo1)
    } else {
        let msg = format!(
            "principal = {}, hdepth(I) = n is {ideal_full}, hdepth(S/I) = n-1 is {quotient_top}",
            r.principal
        );
        CheckOutcome::fail(Predicate::Teo1, Witness::new(r, r.hdepth_quotient, msg))
    }
}

/// First `k` in `3..=q` where `β_k^q(S/I) > C(n−q+k−1, k)`, if any.
fn lem_bound_violation(r: &HdepthReport, q: u32) -> Option<(u32, i128, i128)> {
    let n = r.n() as i64;
    let beta = r.beta_quotient(q);
    (3..=q).find_map(|k| {
        let bound = c(n - q as i64 + k as i64 - 1, k as i64);
        let b = beta.get(k as usize);
        (b > bound).then_some((k, b, bound))
    })
}

/// Evaluates both sides of the bound equivalence for `q = hdepth(S/I)`.
/// Returns `(hdepth(I) >= q, every bound holds)`.
pub fn lem_sides(r: &HdepthReport) -> (bool, bool) {
    let q = r.hdepth_quotient;
    (r.hdepth_ideal >= q, lem_bound_violation(r, q).is_none())
}

pub fn check_lem_equivalence(r: &HdepthReport) -> CheckOutcome {
    if !reduced(r) {
        return CheckOutcome::not_applicable(Predicate::Lem);
    }
    let q = r.hdepth_quotient;
    let (left, right) = lem_sides(r);
    if left == right {
        return CheckOutcome::pass(Predicate::Lem);
    }
    let msg = match lem_bound_violation(r, q) {
        Some((k, b, bound)) => format!(
            "hdepth(I) = {} >= q = {q} but beta_{k}^{q} = {b} > C(n-q+k-1, k) = {bound}",
            r.hdepth_ideal
        ),
        None => format!(
            "all beta_k^{q} bounds hold but hdepth(I) = {} < q = {q}",
            r.hdepth_ideal
        ),
    };
    CheckOutcome::fail(Predicate::Lem, Witness::new(r, q, msg))
}

pub fn check_beta_bounds_q6(r: &HdepthReport) -> CheckOutcome {
    if r.hdepth_quotient != 6 || !reduced(r) {
        return CheckOutcome::not_applicable(Predicate::BetaQ6);
    }
    let n = r.n() as i64;
    let beta = r.beta_quotient(6);
    let bounds = [(3usize, c(n - 4, 3), "n-4"), (4, c(n - 3, 4), "n-3"), (5, c(n - 2, 5), "n-2"), (6, c(n - 1, 6), "n-1")];
    for (k, bound, top) in bounds {
        let b = beta.get(k);
        if b > bound {
            let msg = format!("beta_{k}^6 = {b} > C({top}, {k}) = {bound}");
            return CheckOutcome::fail(Predicate::BetaQ6, Witness::new(r, 6, msg));
        }
    }
    CheckOutcome::pass(Predicate::BetaQ6)
}

pub fn check_lemma79(r: &HdepthReport) -> CheckOutcome {
    if r.n() != 9 || r.hdepth_quotient != 7 {
        return CheckOutcome::not_applicable(Predicate::Lemma79);
    }
    let beta = r.beta_quotient(7);
    for k in 3..=7usize {
        let b = beta.get(k);
        if b > k as i128 + 1 {
            let msg = format!("beta_{k}^7 = {b} > {}", k + 1);
            return CheckOutcome::fail(Predicate::Lemma79, Witness::new(r, 7, msg));
        }
    }
    let b3_bound = c(r.n() as i64 - 5, 3);
    if beta.get(3) > b3_bound {
        let msg = format!("beta_3^7 = {} > C(n-5, 3) = {b3_bound}", beta.get(3));
        return CheckOutcome::fail(Predicate::Lemma79, Witness::new(r, 7, msg));
    }
    CheckOutcome::pass(Predicate::Lemma79)
}

pub fn check_main(r: &HdepthReport) -> CheckOutcome {
    let q = r.hdepth_quotient;
    if !(q <= 6 || r.n() <= 9) {
        return CheckOutcome::not_applicable(Predicate::Main);
    }
    if r.hdepth_ideal >= q {
        CheckOutcome::pass(Predicate::Main)
    } else {
        let msg = format!("hdepth(I) = {} < hdepth(S/I) = {q}", r.hdepth_ideal);
        CheckOutcome::fail(Predicate::Main, Witness::new(r, q, msg))
    }
}

/// Shadow bounds between consecutive entries of α(S/I).
pub fn check_kruskal_katona(r: &HdepthReport) -> CheckOutcome {
    let a = r.alpha_quotient.counts();
    let n = r.n() as usize;
    for k in 1..=n {
        let rep = macaulay_rep(a[k], k as u32).expect("k <= 40");
        if k < n {
            let ub = kk_upper_bound(&rep).expect("bounded tops");
            if a[k + 1] as i128 > ub {
                let msg = format!("alpha_{} = {} > upper shadow bound {ub} from alpha_{k}", k + 1, a[k + 1]);
                return CheckOutcome::fail(Predicate::KruskalKatona, Witness::new(r, r.hdepth_quotient, msg));
            }
        }
        if k >= 2 {
            let lb = kk_lower_bound(&rep).expect("k >= 2");
            if (a[k - 1] as i128) < lb {
                let msg = format!("alpha_{} = {} < lower shadow bound {lb} from alpha_{k}", k - 1, a[k - 1]);
                return CheckOutcome::fail(Predicate::KruskalKatona, Witness::new(r, r.hdepth_quotient, msg));
            }
        }
    }
    CheckOutcome::pass(Predicate::KruskalKatona)
}

/// `β_4^7(S/I) ≤ C(n−4, 4)` at `hdepth(S/I) = 7`. Known not to hold in general.
pub fn check_beta47_bound(r: &HdepthReport) -> CheckOutcome {
    if r.hdepth_quotient != 7 {
        return CheckOutcome::not_applicable(Predicate::Beta47Bound);
    }
    let bound = c(r.n() as i64 - 4, 4);
    let b = r.beta_quotient(7).get(4);
    if b > bound {
        let msg = format!("beta_4^7 = {b} > C(n-4, 4) = {bound}");
        CheckOutcome::fail(Predicate::Beta47Bound, Witness::new(r, 7, msg))
    } else {
        CheckOutcome::pass(Predicate::Beta47Bound)
    }
}

/// Runs every suite check on one report.
pub fn check_all(r: &HdepthReport) -> Vec<CheckOutcome> {
    Predicate::SUITE.iter().map(|p| p.check(r)).collect()
}

/// One row `f_k(x) = C(x, k) − c·C(x, k−1)` of a printed auxiliary table,
/// starting at `x = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: &'static str,
    pub c: i128,
    pub k: i64,
    pub printed: Vec<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTable {
    pub source: &'static str,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub source: &'static str,
    pub label: &'static str,
    pub x: u32,
    pub printed: i128,
    pub computed: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub tables: Vec<ProofTable>,
    pub cells_checked: usize,
    pub diffs: Vec<TableDiff>,
}

fn row(label: &'static str, c: i128, k: i64, printed: &[i128]) -> TableRow {
    TableRow { label, c, k, printed: printed.to_vec() }
}

/// The auxiliary value tables, transcribed cell-for-cell.
pub fn proof_tables() -> Vec<ProofTable> {
    vec![
        ProofTable {
            source: "beta_4^6 bound: f, g, h with c = 3",
            rows: vec![
                row("f", 3, 4, &[0, 0, -3, -11, -25, -45, -70, -98, -126, -150, -165, -165, -143, -91, 0, 140]),
                row("g", 3, 3, &[0, -3, -8, -14, -20, -25, -28, -28, -24, -15, 0, 22, 52]),
                row("h", 3, 2, &[-3, -5, -6, -6, -5, -3, 0, 4, 9, 15, 22, 30]),
            ],
        },
        ProofTable {
            source: "beta_5^6 bound: f_k with c = 2",
            rows: vec![
                row("f_5", 2, 5, &[0, 0, 0, -2, -9, -24, -49, -84, -126, -168, -198, -198, -143, 0]),
                row("f_4", 2, 4, &[0, 0, -2, -7, -15, -25, -35, -42, -42, -30, 0, 55, 143, 273]),
                row("f_3", 2, 3, &[0, -2, -5, -8, -10, -10, -7, 0, 12, 30, 55, 88, 130, 182]),
                row("f_2", 2, 2, &[-2, -3, -3, -2, 0, 3, 7, 12, 18, 25, 33, 42, 52, 63]),
            ],
        },
        ProofTable {
            source: "beta_6^6 bound: f_k with c = 1, g_k with c = 2",
            rows: vec![
                row("f_6", 1, 6, &[0, 0, 0, 0, -1, -5, -14, -28, -42, -42, 0]),
                row("f_5", 1, 5, &[0, 0, 0, -1, -4, -9, -14, -14, 0, 42, 132]),
                row("f_4", 1, 4, &[0, 0, -1, -3, -5, -5, 0, 14, 42, 90, 165]),
                row("f_3", 1, 3, &[0, -1, -2, -2, 0, 5, 14, 28, 48, 75, 110]),
                row("f_2", 1, 2, &[-1, -1, 0, 2, 5, 9, 14, 20, 27, 35, 44]),
                row("g_3", 2, 3, &[0, -2, -5, -8, -10, -10, -7, 0, 12]),
                row("g_2", 2, 2, &[-2, -3, -3, -2, 0, 3, 7, 12, 18]),
            ],
        },
        ProofTable {
            source: "beta_k^7 at n = 9: f_k with c = 4, 3, 2, 1",
            rows: vec![
                row("f_4 (c=4)", 4, 4, &[0, 0, -4, -15, -35, -65, -105, -154, -210]),
                row("f_3 (c=4)", 4, 3, &[0, -4, -11, -20, -30, -40, -49]),
                row("f_2 (c=4)", 4, 2, &[-4, -7, -9, -10, -10, -9]),
                row("f_5 (c=3)", 3, 5, &[0, 0, 0, -3, -14, -39, -84, -154, -252]),
                row("f_4 (c=3)", 3, 4, &[0, 0, -3, -11, -25, -45, -70]),
                row("f_3 (c=3)", 3, 3, &[0, -3, -8, -14, -20, -25]),
                row("f_2 (c=3)", 3, 2, &[-3, -5, -6, -6, -5]),
                row("f_6 (c=2)", 2, 6, &[0, 0, 0, 0, -2, -11, -35, -84, -168]),
                row("f_5 (c=2)", 2, 5, &[0, 0, 0, -2, -9, -24, -49]),
                row("f_4 (c=2)", 2, 4, &[0, 0, -2, -7, -15, -25]),
                row("f_3 (c=2)", 2, 3, &[0, -2, -5, -8, -10]),
                row("f_2 (c=2)", 2, 2, &[-2, -3, -3, -2]),
                row("f_7 (c=1)", 1, 7, &[0, 0, 0, 0, 0, -1, -6, -20, -48]),
                row("f_6 (c=1)", 1, 6, &[0, 0, 0, 0, -1, -5, -14, -28]),
                row("f_5 (c=1)", 1, 5, &[0, 0, 0, -1, -4, -9, -14, -14]),
                row("f_4 (c=1)", 1, 4, &[0, 0, -1, -3, -5, -5, 0, 14]),
                row("f_3 (c=1)", 1, 3, &[0, -1, -2, -2, 0, 5, 14, 28]),
                row("f_2 (c=1)", 1, 2, &[-1, -1, 0, 2, 5, 9, 14, 20]),
            ],
        },
    ]
}

/// Regenerates every auxiliary table via [`binom_diff`] and lists mismatching cells.
pub fn reproduce_proof_tables() -> TableReport {
    let tables = proof_tables();
    let mut diffs = Vec::new();
    let mut cells_checked = 0;
    for t in &tables {
        for r in &t.rows {
            for (i, &printed) in r.printed.iter().enumerate() {
                let x = i as u32 + 1;
                let computed = binom_diff(r.c, r.k, x).expect("x <= 16");
                cells_checked += 1;
                if computed != printed {
                    diffs.push(TableDiff { source: t.source, label: r.label, x, printed, computed });
                }
            }
        }
    }
    TableReport { tables, cells_checked, diffs }
}
