//! Exact binomials, Macaulay k-binomial representations and the
//! Kruskal–Katona shadow bounds derived from them.

use std::sync::LazyLock;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`binom`].
pub const MAX_N: u32 = 40;

static PASCAL: LazyLock<[[i128; MAX_N as usize + 1]; MAX_N as usize + 1]> = LazyLock::new(|| {
    let mut t = [[0i128; MAX_N as usize + 1]; MAX_N as usize + 1];
    for n in 0..=MAX_N as usize {
        t[n][0] = 1;
        for k in 1..=n {
            t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
    }
    t
});

/// `C(n, k)` for `n <= 40`; zero when `k < 0` or `k > n`.
pub fn binom(n: u32, k: i64) -> Result<i128> {
    if n > MAX_N {
        return Err(Error::Range { value: n as u64, max: MAX_N as u64 });
    }
    Ok(binom_small(n, k))
}

/// Table lookup without the range check. Callers guarantee `n <= 40`.
#[inline]
pub(crate) fn binom_small(n: u32, k: i64) -> i128 {
    if k < 0 || k > n as i64 {
        0
    } else {
        PASCAL[n as usize][k as usize]
    }
}

/// `C(n, k)` for arbitrary `n`, or `None` when the value does not fit in an `i128`.
pub(crate) fn binom_wide(n: u64, k: u32) -> Option<i128> {
    if n <= MAX_N as u64 {
        return Some(binom_small(n as u32, k as i64));
    }
    let k = if (k as u64) > n { return Some(0) } else { k.min((n - k as u64) as u32) };
    let mut acc: i128 = 1;
    for t in 0..k as i128 {
        // acc * (n - t) is divisible by (t + 1) at every step.
        acc = acc.checked_mul(n as i128 - t)? / (t + 1);
    }
    Some(acc)
}

/// The Macaulay (k-binomial) representation of a nonnegative integer:
/// `N = C(n_k, k) + C(n_{k-1}, k-1) + ... + C(n_j, j)` with
/// `n_k > n_{k-1} > ... > n_j >= j >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacaulayRep {
    k: u32,
    terms: Vec<(u64, u32)>,
}

impl MacaulayRep {
    /// Builds a representation from explicit `(top, index)` pairs, checking every invariant.
    pub fn from_terms(k: u32, terms: Vec<(u64, u32)>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("macaulay representation index must be at least 1".into()));
        }
        let mut expect = k;
        let mut prev_top = u64::MAX;
        for &(top, idx) in &terms {
            if idx != expect || idx == 0 {
                return Err(Error::Domain(format!(
                    "macaulay indices must run {k}, {}, ... down to at least 1; found {idx}",
                    k.saturating_sub(1)
                )));
            }
            if top >= prev_top || top < idx as u64 {
                return Err(Error::Domain(format!(
                    "macaulay tops must strictly decrease and satisfy top >= index; found ({top}, {idx})"
                )));
            }
            prev_top = top;
            expect -= 1;
        }
        Ok(Self { k, terms })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `(top, index)` pairs with the index descending from `k`.
    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    pub fn tops(&self) -> Vec<u64> {
        self.terms.iter().map(|&(t, _)| t).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The represented integer.
    pub fn value(&self) -> Result<i128> {
        self.shifted_sum(0)
    }

    fn shifted_sum(&self, shift: i64) -> Result<i128> {
        let mut sum: i128 = 0;
        for &(top, idx) in &self.terms {
            let k = idx as i64 + shift;
            let c = if k < 0 {
                0
            } else {
                binom_wide(top, k as u32).ok_or(Error::Range { value: top, max: MAX_N as u64 })?
            };
            sum = sum
                .checked_add(c)
                .ok_or(Error::Range { value: top, max: MAX_N as u64 })?;
        }
        Ok(sum)
    }
}

/// Greedy Macaulay decomposition of `value` at index `k`.
///
/// At each index `i` the largest `m` with `C(m, i) <= remainder` is taken.
pub fn macaulay_rep(value: u64, k: u32) -> Result<MacaulayRep> {
    if k == 0 || k > MAX_N {
        return Err(Error::Range { value: k as u64, max: MAX_N as u64 });
    }
    let mut rem = value as i128;
    let mut terms = Vec::new();
    let mut hi_bound = u64::MAX;
    for i in (1..=k).rev() {
        if rem == 0 {
            break;
        }
        let top = largest_top(rem, i, hi_bound);
        rem -= binom_wide(top, i).expect("top was chosen with C(top, i) <= remainder");
        terms.push((top, i));
        hi_bound = top;
    }
    debug_assert_eq!(rem, 0);
    Ok(MacaulayRep { k, terms })
}

/// Largest `m` in `[i, cap)` with `C(m, i) <= rem`, for `rem >= 1`.
fn largest_top(rem: i128, i: u32, cap: u64) -> u64 {
    if i == 1 {
        return rem as u64;
    }
    let fits = |m: u64| binom_wide(m, i).is_some_and(|c| c <= rem);
    // C(m, i) >= m - i + 1, so m = rem + i is already too large.
    let mut lo = i as u64;
    let mut hi = (rem as u64).saturating_add(i as u64).min(cap);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Kruskal–Katona lower bound on the count one level down: `sum C(n_i, i - 1)`.
pub fn kk_lower_bound(rep: &MacaulayRep) -> Result<i128> {
    if rep.k < 2 {
        return Err(Error::Domain(format!(
            "shadow lower bound needs index k >= 2, got {}",
            rep.k
        )));
    }
    rep.shifted_sum(-1)
}

/// Kruskal–Katona upper bound on the count one level up: `sum C(n_i, i + 1)`.
pub fn kk_upper_bound(rep: &MacaulayRep) -> Result<i128> {
    rep.shifted_sum(1)
}

/// `C(x, k) - c * C(x, k - 1)`.
pub fn binom_diff(c: i128, k: i64, x: u32) -> Result<i128> {
    Ok(binom(x, k)? - c * binom(x, k - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal_oracle(n: usize, k: usize) -> i128 {
        let mut row = vec![1i128];
        for _ in 0..n {
            let mut next = vec![1i128; row.len() + 1];
            for j in 1..row.len() {
                next[j] = row[j - 1] + row[j];
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    #[test]
    fn binom_values() {
        assert_eq!(binom(9, 3).unwrap(), 84);
        for n in 0..=40 {
            assert_eq!(binom(n, 0).unwrap(), 1);
        }
        assert_eq!(binom(40, 20).unwrap(), pascal_oracle(40, 20));
        assert_eq!(binom(40, 20).unwrap(), 137_846_528_820);
        assert_eq!(binom(5, -1).unwrap(), 0);
        assert_eq!(binom(2, 3).unwrap(), 0);
    }

    #[test]
    fn binom_range_error() {
        assert!(matches!(binom(41, 3), Err(Error::Range { .. })));
    }

    #[test]
    fn binom_wide_matches_table_and_beyond() {
        for n in 0..=40u64 {
            for k in 0..=45u32 {
                assert_eq!(binom_wide(n, k), Some(binom_small(n as u32, k as i64)));
            }
        }
        assert_eq!(binom_wide(100, 3), Some(161_700));
        assert_eq!(binom_wide(1_000_000, 1), Some(1_000_000));
        assert_eq!(binom_wide(u64::MAX / 2, 20), None);
    }

    #[test]
    fn macaulay_examples() {
        let r = macaulay_rep(38, 5).unwrap();
        assert_eq!(r.terms(), &[(7, 5), (6, 4), (3, 3), (2, 2)]);
        assert!(macaulay_rep(0, 3).unwrap().is_empty());
        let r = macaulay_rep(37, 4).unwrap();
        assert_eq!(r.terms(), &[(7, 4), (3, 3), (2, 2)]);
    }

    #[test]
    fn macaulay_worked_examples() {
        // 81 = C(8,4) + C(5,3) + C(2,2), 58 = C(8,5) + C(4,4) + C(3,3)
        assert_eq!(macaulay_rep(81, 4).unwrap().terms(), &[(8, 4), (5, 3), (2, 2)]);
        assert_eq!(macaulay_rep(58, 5).unwrap().terms(), &[(8, 5), (4, 4), (3, 3)]);
        assert_eq!(
            macaulay_rep(12, 7).unwrap().terms(),
            &[(8, 7), (6, 6), (5, 5), (4, 4), (3, 3)]
        );
    }

    #[test]
    fn macaulay_trailing_unit_terms() {
        // 2 at k = 2 is C(2,2) + C(1,1).
        assert_eq!(macaulay_rep(2, 2).unwrap().terms(), &[(2, 2), (1, 1)]);
    }

    #[test]
    fn kk_bounds_examples() {
        let r = macaulay_rep(12, 7).unwrap();
        assert_eq!(kk_lower_bound(&r).unwrap(), 46);
        let r6 = macaulay_rep(46, 6).unwrap();
        assert_eq!(kk_lower_bound(&r6).unwrap(), 90);

        let r = MacaulayRep::from_terms(3, vec![(8, 3), (7, 2), (6, 1)]).unwrap();
        assert_eq!(r.value().unwrap(), 83);
        assert_eq!(kk_lower_bound(&r).unwrap(), 28 + 7 + 1);
        assert_eq!(kk_upper_bound(&r).unwrap(), 120);

        let r = macaulay_rep(37, 4).unwrap();
        assert_eq!(kk_upper_bound(&r).unwrap(), 21);

        let empty = macaulay_rep(0, 4).unwrap();
        assert_eq!(kk_lower_bound(&empty).unwrap(), 0);
        assert_eq!(kk_upper_bound(&empty).unwrap(), 0);
    }

    #[test]
    fn kk_full_level() {
        for n in 2..=12u64 {
            for k in 2..n as u32 {
                let full = binom_wide(n, k).unwrap() as u64;
                let r = macaulay_rep(full, k).unwrap();
                assert_eq!(kk_upper_bound(&r).unwrap(), binom_wide(n, k + 1).unwrap());
                assert_eq!(kk_lower_bound(&r).unwrap(), binom_wide(n, k - 1).unwrap());
            }
        }
    }

    #[test]
    fn kk_lower_bound_rejects_k1() {
        let r = macaulay_rep(5, 1).unwrap();
        assert!(matches!(kk_lower_bound(&r), Err(Error::Domain(_))));
    }

    #[test]
    fn from_terms_validates() {
        assert!(MacaulayRep::from_terms(3, vec![(5, 3), (5, 2)]).is_err());
        assert!(MacaulayRep::from_terms(3, vec![(5, 3), (1, 2)]).is_err());
        assert!(MacaulayRep::from_terms(3, vec![(5, 3), (3, 1)]).is_err());
        assert!(MacaulayRep::from_terms(0, vec![]).is_err());
        assert!(MacaulayRep::from_terms(3, vec![]).is_ok());
    }

    #[test]
    fn binom_diff_examples() {
        assert_eq!(binom_diff(3, 4, 7).unwrap(), -70);
        assert_eq!(binom_diff(3, 4, 15).unwrap(), 0);
        assert_eq!(binom_diff(2, 5, 11).unwrap(), -198);
        assert!(binom_diff(1, 2, 41).is_err());
    }

    #[test]
    fn binom_diff_closed_forms() {
        // C(x,4) - 3C(x,3) = x(x-1)(x-2)(x-15)/24, C(x,3) - 3C(x,2) = x(x-1)(x-11)/6,
        // C(x,2) - 3x = x(x-7)/2
        for x in 0..=40i128 {
            let xi = x as u32;
            assert_eq!(binom_diff(3, 4, xi).unwrap(), x * (x - 1) * (x - 2) * (x - 15) / 24);
            assert_eq!(binom_diff(3, 3, xi).unwrap(), x * (x - 1) * (x - 11) / 6);
            assert_eq!(binom_diff(3, 2, xi).unwrap(), x * (x - 7) / 2);
        }
    }
}
