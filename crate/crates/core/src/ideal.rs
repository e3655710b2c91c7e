//! Squarefree monomial ideals over `K[x1, ..., xn]`, stored as antichains of
//! variable subsets.
//!
//! Variables are written `x1..xn` externally; `x{i}` occupies bit `i - 1` of a
//! [`Monomial`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom_small, MAX_N};
use crate::error::{Error, Result};

/// Largest `n` for which α-vectors are computed by subset enumeration.
pub const MAX_ENUM_N: u32 = 25;

/// A squarefree monomial, i.e. a set of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub const fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    /// Monomial from 1-based variable indices.
    pub fn from_vars(vars: &[u32]) -> Self {
        Monomial(vars.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1)))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// True if `self` divides `other`.
    pub const fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    /// 1-based variable indices in increasing order.
    pub fn vars(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                Some(v + 1)
            }
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for (i, v) in self.vars().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A squarefree monomial ideal given by its minimal generators.
///
/// Generators are kept sorted by degree, then by bitmask. No generators is
/// the zero ideal; the single generator `1` is the unit ideal `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    n: u32,
    gens: Vec<Monomial>,
}

impl Ideal {
    /// Builds an ideal from arbitrary generators, pruning duplicates and
    /// non-minimal ones.
    pub fn new(n: u32, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        check_n(n)?;
        let full = full_mask(n);
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.0 & !full != 0) {
            return Err(Error::Domain(format!(
                "generator uses a variable beyond x{n} (bits {:#x})",
                bad.0
            )));
        }
        minimalize(&mut gens);
        Ok(Self { n, gens })
    }

    pub fn zero(n: u32) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n, gens: Vec::new() })
    }

    pub fn unit(n: u32) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n, gens: vec![Monomial::ONE] })
    }

    /// The maximal ideal `(x1, ..., xn)`.
    pub fn maximal(n: u32) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n, gens: (0..n).map(|i| Monomial(1 << i)).collect() })
    }

    /// Wraps generators already known to form a sorted antichain.
    pub(crate) fn from_antichain_unchecked(n: u32, gens: Vec<Monomial>) -> Self {
        debug_assert!(is_antichain(&gens));
        Self { n, gens }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&Monomial::ONE)
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    /// No generator of degree below two (`I ⊆ m²`). False for the unit ideal.
    pub fn in_m_squared(&self) -> bool {
        self.gens.iter().all(|g| g.degree() >= 2)
    }

    /// Membership of a squarefree monomial.
    pub fn contains(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`, checked generator-wise.
    pub fn is_subideal_of(&self, other: &Ideal) -> bool {
        self.n == other.n && self.gens.iter().all(|&g| other.contains(g))
    }

    /// Bitset over all `2^n` subsets marking the squarefree monomials in the ideal.
    fn membership(&self) -> SubsetBits {
        let mut bits = SubsetBits::new(self.n);
        for g in &self.gens {
            bits.set(g.0);
        }
        bits.close_upward();
        bits
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Range { value: n as u64, max: MAX_N as u64 });
    }
    Ok(())
}

pub(crate) const fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Sorts, dedupes and drops every generator divisible by another.
pub(crate) fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_unstable_by_key(|g| (g.degree(), g.0));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for &g in gens.iter() {
        // sorted by degree, so only earlier entries can divide g
        if !kept.iter().any(|k| k.divides(g)) {
            kept.push(g);
        }
    }
    *gens = kept;
}

pub(crate) fn is_antichain(gens: &[Monomial]) -> bool {
    gens.iter().enumerate().all(|(i, a)| {
        gens.iter().enumerate().all(|(j, b)| i == j || !a.divides(*b))
    })
}

/// Parses a generator list such as `x1*x2, x2*x3`.
///
/// `0` (or blank input) is the zero ideal and `1` the unit ideal.
pub fn parse_ideal(text: &str, n: u32) -> Result<Ideal> {
    check_n(n)?;
    let mut p = Parser { src: text.as_bytes(), pos: 0, n };
    p.skip_ws();
    if p.at_end() {
        return Ideal::zero(n);
    }
    if p.peek() == Some(b'0') {
        let start = p.pos;
        p.pos += 1;
        p.skip_ws();
        if p.at_end() {
            return Ideal::zero(n);
        }
        return Err(Error::Parse { pos: start, msg: "`0` must stand alone".into() });
    }
    let mut gens = Vec::new();
    loop {
        gens.push(p.term()?);
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b',') => p.pos += 1,
            Some(c) => {
                return Err(Error::Parse {
                    pos: p.pos,
                    msg: format!("expected `,` or end of input, found `{}`", c as char),
                })
            }
        }
    }
    Ideal::new(n, gens)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: u32,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Monomial> {
        self.skip_ws();
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Monomial::ONE);
        }
        let mut bits = 0u64;
        loop {
            self.skip_ws();
            let (var_pos, v) = self.variable()?;
            let bit = 1u64 << (v - 1);
            if bits & bit != 0 {
                return Err(Error::Parse {
                    pos: var_pos,
                    msg: format!("variable x{v} repeated; monomials must be squarefree"),
                });
            }
            bits |= bit;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(Monomial(bits));
            }
        }
    }

    fn variable(&mut self) -> Result<(usize, u32)> {
        let start = self.pos;
        if self.peek() != Some(b'x') {
            let msg = match self.peek() {
                Some(c) => format!("expected variable `x<index>`, found `{}`", c as char),
                None => "expected variable `x<index>`, found end of input".into(),
            };
            return Err(Error::Parse { pos: start, msg });
        }
        self.pos += 1;
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(Error::Parse { pos: digits_start, msg: "missing variable index".into() });
        }
        let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii digits");
        let v: u32 = digits.parse().unwrap_or(u32::MAX);
        if v == 0 || v > self.n {
            return Err(Error::Parse {
                pos: start,
                msg: format!("variable x{digits} outside x1..x{}", self.n),
            });
        }
        Ok((start, v))
    }
}

/// Counts `α_0..α_n` of squarefree monomials per degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphaVector {
    n: u32,
    counts: Vec<u64>,
}

impl AlphaVector {
    /// Validates `counts.len() == n + 1` and `a_j <= C(n, j)`.
    pub fn new(n: u32, counts: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        if counts.len() != n as usize + 1 {
            return Err(Error::Domain(format!(
                "alpha vector for n = {n} needs {} entries, got {}",
                n + 1,
                counts.len()
            )));
        }
        for (j, &a) in counts.iter().enumerate() {
            if a as i128 > binom_small(n, j as i64) {
                return Err(Error::Domain(format!("alpha_{j} = {a} exceeds C({n}, {j})")));
            }
        }
        Ok(Self { n, counts })
    }

    pub(crate) fn from_counts_unchecked(n: u32, counts: Vec<u64>) -> Self {
        debug_assert_eq!(counts.len(), n as usize + 1);
        Self { n, counts }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, j: usize) -> u64 {
        self.counts.get(j).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&a| a == 0)
    }

    /// `C(n, j) - a_j` for every `j`: the counts of the complementary set.
    pub fn complement(&self) -> AlphaVector {
        let counts = self
            .counts
            .iter()
            .enumerate()
            .map(|(j, &a)| (binom_small(self.n, j as i64) - a as i128) as u64)
            .collect();
        AlphaVector { n: self.n, counts }
    }
}

/// α-vector of `J / I`: per degree, the squarefree monomials in `J` but not in `I`.
///
/// Use `J = S` for the quotient `S / I` and `I = 0` for the ideal itself.
pub fn alpha_vector(outer: &Ideal, inner: &Ideal) -> Result<AlphaVector> {
    if outer.n != inner.n {
        return Err(Error::Domain(format!(
            "ideals live in different rings (n = {} and n = {})",
            outer.n, inner.n
        )));
    }
    if let Some(g) = inner.gens.iter().find(|&&g| !outer.contains(g)) {
        return Err(Error::Containment(g.to_string()));
    }
    let n = outer.n;
    if n > MAX_ENUM_N {
        return Err(Error::Capacity(format!(
            "alpha vectors are enumerated over 2^n subsets; n = {n} exceeds {MAX_ENUM_N}"
        )));
    }
    let counts = if outer.is_unit() {
        // J = S: count complement of I, then flip.
        let in_inner = inner.membership().degree_counts();
        in_inner
            .iter()
            .enumerate()
            .map(|(j, &c)| binom_small(n, j as i64) as u64 - c)
            .collect()
    } else {
        let mut j_bits = outer.membership();
        if !inner.is_zero() {
            j_bits.and_not(&inner.membership());
        }
        j_bits.degree_counts()
    };
    Ok(AlphaVector { n, counts })
}

/// α-vector of `S / I`.
pub fn quotient_alpha(ideal: &Ideal) -> Result<AlphaVector> {
    alpha_vector(&Ideal::unit(ideal.n)?, ideal)
}

/// α-vector of `I` viewed as a module.
pub fn ideal_alpha(ideal: &Ideal) -> Result<AlphaVector> {
    alpha_vector(ideal, &Ideal::zero(ideal.n)?)
}

/// Positions in a 64-bit word whose index has exactly `d` set bits.
const LOW_LEVELS: [u64; 7] = {
    let mut out = [0u64; 7];
    let mut i = 0;
    while i < 64 {
        out[(i as u64).count_ones() as usize] |= 1 << i;
        i += 1;
    }
    out
};

/// Positions in a 64-bit word whose index lacks bit `i`.
const WITHOUT_BIT: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// A bitset indexed by subsets of `{0..n}` (bit `s` ↔ subset with mask `s`).
struct SubsetBits {
    n: u32,
    words: Vec<u64>,
}

impl SubsetBits {
    fn new(n: u32) -> Self {
        let len = if n <= 6 { 1 } else { 1usize << (n - 6) };
        Self { n, words: vec![0; len] }
    }

    fn set(&mut self, s: u64) {
        self.words[(s >> 6) as usize] |= 1 << (s & 63);
    }

    /// Closes the set under taking supersets.
    fn close_upward(&mut self) {
        for i in 0..self.n.min(6) {
            let shift = 1u32 << i;
            for w in &mut self.words {
                *w |= (*w & WITHOUT_BIT[i as usize]) << shift;
            }
        }
        for i in 6..self.n {
            let stride = 1usize << (i - 6);
            for base in (0..self.words.len()).step_by(2 * stride) {
                for j in base..base + stride {
                    self.words[j + stride] |= self.words[j];
                }
            }
        }
    }

    fn and_not(&mut self, other: &SubsetBits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn degree_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n as usize + 1];
        for (wi, &w) in self.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let hi = wi.count_ones() as usize;
            for (d, mask) in LOW_LEVELS.iter().enumerate() {
                let c = (w & mask).count_ones() as u64;
                if c != 0 {
                    counts[hi + d] += c;
                }
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_alpha(outer: &Ideal, inner: &Ideal) -> Vec<u64> {
        let n = outer.n();
        let mut counts = vec![0u64; n as usize + 1];
        for s in 0..1u64 << n {
            let m = Monomial::from_bits(s);
            if outer.contains(m) && !inner.contains(m) {
                counts[m.degree() as usize] += 1;
            }
        }
        counts
    }

    #[test]
    fn parse_examples() {
        let i = parse_ideal("x1*x2, x2*x3", 3).unwrap();
        assert_eq!(i.gens(), &[Monomial::from_bits(0b011), Monomial::from_bits(0b110)]);
        let i = parse_ideal("x1, x1*x2", 2).unwrap();
        assert_eq!(i.gens(), &[Monomial::from_vars(&[1])]);
        let i = parse_ideal("x1*x2*x3", 3).unwrap();
        assert!(i.is_principal());
        assert_eq!(i.gens().len(), 1);
    }

    #[test]
    fn parse_special_forms() {
        assert!(parse_ideal("", 4).unwrap().is_zero());
        assert!(parse_ideal("  0 ", 4).unwrap().is_zero());
        assert!(parse_ideal("1", 4).unwrap().is_unit());
        assert!(parse_ideal("x1*x2, 1", 4).unwrap().is_unit());
        let i = parse_ideal(" x3 *x1 ,\n x2*x1 ,x1*x3", 3).unwrap();
        assert_eq!(i.to_string(), "x1*x2, x1*x3");
        let dup = parse_ideal("x1*x2, x2*x1", 2).unwrap();
        assert_eq!(dup.gens().len(), 1);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_ideal("x1*x2*x1", 3) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_ideal("x1, x4", 3) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ideal("x0", 3), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_ideal("x1,", 3), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_ideal("x1 x2", 3), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_ideal("0, x1", 3), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_ideal("y1", 3), Err(Error::Parse { .. })));
        assert!(matches!(parse_ideal("x", 3), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_ideal("x99999999999", 3), Err(Error::Parse { .. })));
    }

    #[test]
    fn new_rejects_out_of_range_variables() {
        assert!(Ideal::new(3, [Monomial::from_bits(0b1000)]).is_err());
        assert!(Ideal::new(0, []).is_err());
        assert!(Ideal::new(41, []).is_err());
    }

    #[test]
    fn contains_examples() {
        let i = parse_ideal("x1*x2", 3).unwrap();
        assert!(i.contains(Monomial::from_vars(&[1, 2, 3])));
        assert!(!i.contains(Monomial::from_vars(&[1, 3])));
        let m = Ideal::maximal(3).unwrap();
        assert!(!m.contains(Monomial::ONE));
    }

    #[test]
    fn alpha_examples() {
        let m = Ideal::maximal(3).unwrap();
        assert_eq!(quotient_alpha(&m).unwrap().counts(), &[1, 0, 0, 0]);
        assert_eq!(ideal_alpha(&m).unwrap().counts(), &[0, 3, 3, 1]);
        let i = parse_ideal("x1*x2", 2).unwrap();
        assert_eq!(quotient_alpha(&i).unwrap().counts(), &[1, 2, 0]);
    }

    #[test]
    fn alpha_general_pair() {
        let j = parse_ideal("x1, x2*x3", 4).unwrap();
        let i = parse_ideal("x1*x2, x2*x3*x4", 4).unwrap();
        let a = alpha_vector(&j, &i).unwrap();
        assert_eq!(a.counts(), brute_alpha(&j, &i).as_slice());
    }

    #[test]
    fn alpha_containment_error() {
        let j = parse_ideal("x1", 3).unwrap();
        let i = parse_ideal("x2", 3).unwrap();
        assert!(matches!(alpha_vector(&j, &i), Err(Error::Containment(_))));
        let other_ring = parse_ideal("x1", 4).unwrap();
        assert!(alpha_vector(&j, &other_ring).is_err());
    }

    #[test]
    fn alpha_capacity_error() {
        let i = Ideal::maximal(26).unwrap();
        assert!(matches!(quotient_alpha(&i), Err(Error::Capacity(_))));
    }

    #[test]
    fn alpha_large_n_matches_brute_force() {
        for n in [7u32, 9, 13] {
            let i = Ideal::new(
                n,
                [
                    Monomial::from_vars(&[1, 2]),
                    Monomial::from_vars(&[2, 5, 7]),
                    Monomial::from_vars(&[3, 4, 6, 7]),
                    Monomial::from_bits(full_mask(n) & !1),
                ],
            )
            .unwrap();
            let s = Ideal::unit(n).unwrap();
            assert_eq!(quotient_alpha(&i).unwrap().counts(), brute_alpha(&s, &i).as_slice());
            let z = Ideal::zero(n).unwrap();
            assert_eq!(ideal_alpha(&i).unwrap().counts(), brute_alpha(&i, &z).as_slice());
        }
    }

    #[test]
    fn alpha_vector_validation() {
        assert!(AlphaVector::new(2, vec![1, 3, 0]).is_err());
        assert!(AlphaVector::new(2, vec![1, 2]).is_err());
        let a = AlphaVector::new(2, vec![1, 2, 0]).unwrap();
        assert_eq!(a.complement().counts(), &[0, 0, 1]);
    }

    #[test]
    fn standing_reduction_at_n9() {
        let i = parse_ideal("x1*x2, x3*x4*x5, x6*x7*x8*x9", 9).unwrap();
        assert!(i.in_m_squared());
        let a = quotient_alpha(&i).unwrap();
        assert_eq!((a.get(0), a.get(1)), (1, 9));
    }

    #[test]
    fn display_roundtrip_special() {
        assert_eq!(Ideal::zero(3).unwrap().to_string(), "0");
        assert_eq!(Ideal::unit(3).unwrap().to_string(), "1");
        assert_eq!(parse_ideal("1", 3).unwrap(), Ideal::unit(3).unwrap());
    }
}
