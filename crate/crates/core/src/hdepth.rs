//! β-tables, the Hilbert depth criterion and the α ↔ β inversion.
//!
//! For an α-vector `a` and a level `q`,
//! `β_k^q = Σ_{j<=k} (-1)^{k-j} C(q-j, k-j) a_j`, and the Hilbert depth is the
//! largest `d` whose whole β-row is nonnegative.

use serde::Serialize;

use crate::combinatorics::binom_small;
use crate::error::{Error, Result};
use crate::ideal::{ideal_alpha, quotient_alpha, AlphaVector, Ideal};

/// `β_0^q .. β_q^q` for one level `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaTable {
    q: u32,
    values: Vec<i128>,
}

impl BetaTable {
    /// Wraps explicit values; `values.len()` must be `q + 1`.
    pub fn from_values(q: u32, values: Vec<i128>) -> Result<Self> {
        if values.len() != q as usize + 1 {
            return Err(Error::Domain(format!(
                "beta table at level {q} needs {} values, got {}",
                q + 1,
                values.len()
            )));
        }
        Ok(Self { q, values })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn get(&self, k: usize) -> i128 {
        self.values[k]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&b| b >= 0)
    }

    /// First `k` with `β_k < 0`.
    pub fn first_negative(&self) -> Option<usize> {
        self.values.iter().position(|&b| b < 0)
    }
}

/// Evaluates the alternating sum for every `k = 0..=q`.
pub fn beta_table(a: &AlphaVector, q: u32) -> Result<BetaTable> {
    if q > a.n() {
        return Err(Error::Domain(format!("level q = {q} exceeds n = {}", a.n())));
    }
    Ok(beta_unchecked(a.counts(), q))
}

pub(crate) fn beta_unchecked(a: &[u64], q: u32) -> BetaTable {
    let values = (0..=q as i64)
        .map(|k| {
            (0..=k).fold(0i128, |acc, j| {
                let term = binom_small(q - j as u32, k - j) * a[j as usize] as i128;
                if (k - j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    BetaTable { q, values }
}

/// Inverts [`beta_table`]: `a_k = Σ_{j<=k} C(q-j, k-j) β_j` for `k = 0..=q`.
pub fn alpha_from_beta(b: &BetaTable) -> Vec<i128> {
    let q = b.q;
    (0..=q as i64)
        .map(|k| {
            (0..=k)
                .map(|j| binom_small(q - j as u32, k - j) * b.values[j as usize])
                .sum()
        })
        .collect()
}

/// Hilbert depth from an α-vector: the largest admissible level, scanning down from `n`.
pub fn hdepth(a: &AlphaVector) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::Domain("hdepth of the zero module is undefined".into()));
    }
    Ok(hdepth_counts(a.counts()))
}

/// Same scan on raw counts. `a` must not be all zero.
pub(crate) fn hdepth_counts(a: &[u64]) -> u32 {
    let n = a.len() as u32 - 1;
    (0..=n)
        .rev()
        .find(|&d| row_nonnegative(a, d))
        .expect("level 0 is admissible for nonnegative counts")
}

fn row_nonnegative(a: &[u64], q: u32) -> bool {
    (0..=q as i64).all(|k| {
        let mut acc = 0i128;
        for j in 0..=k {
            let term = binom_small(q - j as u32, k - j) * a[j as usize] as i128;
            if (k - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc >= 0
    })
}

/// Everything computed for one ideal `I` (with `0 ⊊ I ⊊ S`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdepthReport {
    pub ideal: Ideal,
    pub alpha_quotient: AlphaVector,
    pub alpha_ideal: AlphaVector,
    pub hdepth_quotient: u32,
    pub hdepth_ideal: u32,
    /// `beta_triangle_quotient[d]` is the β-table of `S/I` at level `d`.
    pub beta_triangle_quotient: Vec<BetaTable>,
    pub beta_triangle_ideal: Vec<BetaTable>,
    pub principal: bool,
    pub contained_in_m2: bool,
}

impl HdepthReport {
    pub fn n(&self) -> u32 {
        self.ideal.n()
    }

    /// β-table of `S/I` at level `q`.
    pub fn beta_quotient(&self, q: u32) -> &BetaTable {
        &self.beta_triangle_quotient[q as usize]
    }

    pub fn beta_ideal(&self, q: u32) -> &BetaTable {
        &self.beta_triangle_ideal[q as usize]
    }
}

/// Computes both α-vectors, both hdepths and both β-triangles for `I`.
pub fn hdepth_report(ideal: &Ideal) -> Result<HdepthReport> {
    if ideal.is_zero() {
        return Err(Error::Domain("ideal side: I = 0 has no Hilbert depth".into()));
    }
    if ideal.is_unit() {
        return Err(Error::Domain("quotient side: I = S makes S/I the zero module".into()));
    }
    let alpha_quotient = quotient_alpha(ideal)?;
    let alpha_ideal = ideal_alpha(ideal)?;
    Ok(report_from_alphas(ideal.clone(), alpha_quotient, alpha_ideal))
}

/// Builds a report when the quotient α-vector is already known.
pub(crate) fn report_from_quotient_alpha(ideal: Ideal, alpha_quotient: AlphaVector) -> HdepthReport {
    let alpha_ideal = alpha_quotient.complement();
    report_from_alphas(ideal, alpha_quotient, alpha_ideal)
}

fn report_from_alphas(ideal: Ideal, alpha_quotient: AlphaVector, alpha_ideal: AlphaVector) -> HdepthReport {
    let n = ideal.n();
    let hdepth_quotient = hdepth_counts(alpha_quotient.counts());
    let hdepth_ideal = hdepth_counts(alpha_ideal.counts());
    let beta_triangle_quotient = (0..=n).map(|d| beta_unchecked(alpha_quotient.counts(), d)).collect();
    let beta_triangle_ideal = (0..=n).map(|d| beta_unchecked(alpha_ideal.counts(), d)).collect();
    HdepthReport {
        principal: ideal.is_principal(),
        contained_in_m2: ideal.in_m_squared(),
        ideal,
        alpha_quotient,
        alpha_ideal,
        hdepth_quotient,
        hdepth_ideal,
        beta_triangle_quotient,
        beta_triangle_ideal,
    }
}
