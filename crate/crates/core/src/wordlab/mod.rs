//! Factor complexity of finite words: p(n), its differences, special
//! factors, Cassaigne's identity, periodicity and growth classification.
//!
//! Counts come from a suffix automaton, or for short factors of long words
//! from packed windows. Values for the infinite word are certified
//! heuristically by doubling: a length n is reported stable when the half
//! prefix and the full prefix agree on p(1..=n).

mod automaton;
mod growth;
mod packed;
mod period;

pub use automaton::SuffixAutomaton;
pub use growth::{growth_fit, GrowthLaw};
pub use packed::{packed_capacity, packed_profile};
pub use period::{period_detect, Periodicity};

use serde::Serialize;
use thiserror::Error;

use crate::coding::SymbolicWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordlabError {
    #[error("word of length {len} is too short for n = {n}")]
    WordTooShort { len: usize, n: usize },
    #[error("alphabet has {0} letters; at most 8 are supported")]
    AlphabetTooLarge(usize),
    #[error("growth law inconclusive: {0}")]
    Inconclusive(String),
}

/// p(n), s(n) = p(n+1) − p(n) and d2(n) = s(n+1) − s(n) of a finite word.
///
/// Vectors are indexed by n starting at 0, with p(0) = 1. `s` has one entry
/// fewer than `p` and `d2` one fewer than `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub p: Vec<u64>,
    pub s: Vec<i64>,
    pub d2: Vec<i64>,
    /// Largest n with p(1..=n) unchanged between the half and the full prefix.
    pub stable_up_to: usize,
    pub source_length: usize,
}

impl ComplexityProfile {
    fn from_counts(p: Vec<u64>, p_half: &[u64], source_length: usize) -> Self {
        let s: Vec<i64> = p.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
        let d2: Vec<i64> = s.windows(2).map(|w| w[1] - w[0]).collect();
        let stable_up_to = (1..p.len()).take_while(|&n| p[n] == p_half[n]).last().unwrap_or(0);
        Self { p, s, d2, stable_up_to, source_length }
    }

    pub fn n_max(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self, n: usize) -> Option<u64> {
        self.p.get(n).copied()
    }

    pub fn s(&self, n: usize) -> Option<i64> {
        self.s.get(n).copied()
    }

    pub fn d2(&self, n: usize) -> Option<i64> {
        self.d2.get(n).copied()
    }

    /// Largest n whose d2(n) only involves stable values of p.
    pub fn d2_stable_up_to(&self) -> usize {
        self.stable_up_to.saturating_sub(2)
    }

    /// The profile restricted to `n ≤ n_max`.
    pub fn truncated(&self, n_max: usize) -> Self {
        let n_max = n_max.min(self.n_max());
        let p = self.p[..=n_max].to_vec();
        Self {
            s: self.s[..n_max].to_vec(),
            d2: self.d2[..n_max.saturating_sub(1)].to_vec(),
            stable_up_to: self.stable_up_to.min(n_max),
            source_length: self.source_length,
            p,
        }
    }

    /// CSV with header `n,p,s,d2,stable`; undefined differences are left blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p,s,d2,stable\n");
        for n in 1..self.p.len() {
            let s = self.s(n).map(|v| v.to_string()).unwrap_or_default();
            let d2 = self.d2(n).map(|v| v.to_string()).unwrap_or_default();
            let stable = n <= self.stable_up_to;
            out.push_str(&format!("{n},{},{s},{d2},{stable}\n", self.p[n]));
        }
        out
    }
}

/// Left/right extension counts of one factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialFactor {
    pub factor: String,
    /// number of letters a with `a·v` extendable
    pub m_l: u32,
    /// number of letters b with `v·b` extendable
    pub m_r: u32,
    /// number of pairs (a, b) with `a·v·b` a factor
    pub m_b: u32,
}

impl SpecialFactor {
    pub fn cassaigne_term(&self) -> i64 {
        self.m_b as i64 - self.m_r as i64 - self.m_l as i64 + 1
    }
}

/// Special factors of one length, counted over occurrences that have a
/// letter on both sides inside the prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialFactorCensus {
    pub n: usize,
    pub left_special: Vec<SpecialFactor>,
    pub right_special: Vec<SpecialFactor>,
    pub bispecial: Vec<SpecialFactor>,
}

impl SpecialFactorCensus {
    pub fn cassaigne_sum(&self) -> i64 {
        self.bispecial.iter().map(SpecialFactor::cassaigne_term).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CassaigneRow {
    pub n: usize,
    pub d2: i64,
    pub census_sum: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CassaigneReport {
    pub rows: Vec<CassaigneRow>,
    pub violations: Vec<usize>,
}

impl CassaigneReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Extension data of the longest string of each automaton state, summed
/// over the state's children in the suffix-link tree.
#[derive(Clone, Copy, Default)]
struct LeftAggregate {
    m_l: u32,
    m_b: u32,
    right_mask: u32,
}

/// Suffix automaton of a word plus its factor counts.
pub struct FactorIndex {
    letters: Vec<u8>,
    /// dense letter index → original letter
    symbols: Vec<u8>,
    sam: SuffixAutomaton,
    counted_up_to: usize,
    p_full: Vec<u64>,
    p_half: Vec<u64>,
    aggregates: Vec<LeftAggregate>,
}

/// Maps the letters of a word onto `0..k`, preserving order.
/// Returns the dense index of every letter and the sorted letters present.
pub(crate) fn dense_alphabet(letters: &[u8]) -> Result<([u8; 256], Vec<u8>), WordlabError> {
    let mut present = [false; 256];
    for &l in letters {
        present[l as usize] = true;
    }
    let symbols: Vec<u8> = (0..=255u8).filter(|&l| present[l as usize]).collect();
    if symbols.len() > 8 {
        return Err(WordlabError::AlphabetTooLarge(symbols.len()));
    }
    let mut dense = [0u8; 256];
    for (i, &l) in symbols.iter().enumerate() {
        dense[l as usize] = i as u8;
    }
    Ok((dense, symbols))
}

fn add_range(diff: &mut [i64], lo: u32, hi: u32, cap: usize) {
    let start = lo as usize + 1;
    if start > cap {
        return;
    }
    let end = (hi as usize).min(cap);
    diff[start] += 1;
    diff[end + 1] -= 1;
}

fn prefix_sums(diff: &[i64], cap: usize) -> Vec<u64> {
    let mut p = vec![1u64; cap + 1];
    let mut acc = 0i64;
    for n in 1..=cap {
        acc += diff[n];
        p[n] = acc as u64;
    }
    p
}

impl FactorIndex {
    /// Indexes `word`, tracking p(n) for `n ≤ n_cap` on the full word and on
    /// its first half.
    pub fn build(word: &SymbolicWord, n_cap: usize) -> Result<Self, WordlabError> {
        Self::from_letters(&word.letters, n_cap)
    }

    pub fn from_letters(letters: &[u8], n_cap: usize) -> Result<Self, WordlabError> {
        let (dense, symbols) = dense_alphabet(letters)?;
        let alphabet = symbols.len().max(1);
        let len = letters.len();
        let half = len / 2;
        let mut sam = SuffixAutomaton::with_capacity(alphabet, len);
        let mut diff = vec![0i64; n_cap + 2];
        let mut diff_half = diff.clone();
        for (i, &l) in letters.iter().enumerate() {
            let (lo, hi) = sam.extend(dense[l as usize] as usize, i as u32);
            add_range(&mut diff, lo, hi, n_cap);
            if i + 1 == half {
                diff_half.copy_from_slice(&diff);
            }
        }
        let p_full = prefix_sums(&diff, n_cap);
        let p_half = prefix_sums(&diff_half, n_cap);

        let mut aggregates = vec![LeftAggregate::default(); sam.state_count()];
        for s in 1..sam.state_count() {
            let parent = sam.state_link(s).expect("non-root state has a link");
            let mask = sam.out_mask(s);
            if mask != 0 {
                let agg = &mut aggregates[parent];
                agg.m_l += 1;
                agg.m_b += mask.count_ones();
                agg.right_mask |= mask;
            }
        }

        Ok(Self { letters: letters.to_vec(), symbols, sam, counted_up_to: n_cap, p_full, p_half, aggregates })
    }

    pub fn word_len(&self) -> usize {
        self.letters.len()
    }

    /// Profile for `1 ≤ n ≤ n_max`; requires `n_max` within the tracked cap
    /// and below the word length.
    pub fn profile(&self, n_max: usize) -> Result<ComplexityProfile, WordlabError> {
        if n_max >= self.letters.len() || n_max > self.counted_up_to {
            return Err(WordlabError::WordTooShort { len: self.letters.len(), n: n_max });
        }
        Ok(ComplexityProfile::from_counts(self.p_full[..=n_max].to_vec(), &self.p_half[..=n_max], self.letters.len()))
    }

    fn factor_text(&self, state: usize, n: usize) -> String {
        if n == 0 {
            return String::new();
        }
        let end = self.sam.state_first_end(state) as usize;
        self.letters[end + 1 - n..=end].iter().map(|&l| char::from(b'0' + l)).collect()
    }

    /// Left-, right- and bispecial factors of length `n`.
    pub fn census(&self, n: usize) -> Result<SpecialFactorCensus, WordlabError> {
        if n + 2 > self.letters.len() {
            return Err(WordlabError::WordTooShort { len: self.letters.len(), n });
        }
        let mut census =
            SpecialFactorCensus { n, left_special: Vec::new(), right_special: Vec::new(), bispecial: Vec::new() };
        for s in 0..self.sam.state_count() {
            let len = self.sam.state_len(s) as usize;
            let link_len = self.sam.state_link(s).map_or(0, |l| self.sam.state_len(l) as usize);
            let in_range = if s == 0 { n == 0 } else { link_len < n && n <= len };
            if !in_range {
                continue;
            }
            let (m_l, m_r, m_b) = if n == len {
                let a = self.aggregates[s];
                (a.m_l, a.right_mask.count_ones(), a.m_b)
            } else {
                // every occurrence of a non-longest string has the same left letter
                let r = self.sam.out_mask(s).count_ones();
                (1, r, r)
            };
            if m_b == 0 {
                continue;
            }
            if m_l < 2 && m_r < 2 {
                continue;
            }
            let f = SpecialFactor { factor: self.factor_text(s, n), m_l, m_r, m_b };
            if m_l >= 2 {
                census.left_special.push(f.clone());
            }
            if m_r >= 2 {
                census.right_special.push(f.clone());
            }
            if m_l >= 2 && m_r >= 2 {
                census.bispecial.push(f);
            }
        }
        for list in [&mut census.left_special, &mut census.right_special, &mut census.bispecial] {
            list.sort_by(|a, b| a.factor.cmp(&b.factor));
        }
        Ok(census)
    }

    /// Σ over bispecial v of length n of `m_b − m_r − m_l + 1`, for every
    /// `0 ≤ n ≤ n_max` at once.
    pub fn cassaigne_sums(&self, n_max: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n_max + 1];
        for s in 0..self.sam.state_count() {
            let len = self.sam.state_len(s) as usize;
            if len > n_max {
                continue;
            }
            let a = self.aggregates[s];
            if a.m_b == 0 || a.m_l < 2 || a.right_mask.count_ones() < 2 {
                continue;
            }
            sums[len] += a.m_b as i64 - a.right_mask.count_ones() as i64 - a.m_l as i64 + 1;
        }
        sums
    }

    /// Original letter for each dense index used internally.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }
}

/// Factor complexity of `word` for `n ≤ n_max`, using packed windows when
/// they fit and the suffix automaton otherwise.
pub fn complexity_profile(word: &SymbolicWord, n_max: usize) -> Result<ComplexityProfile, WordlabError> {
    if n_max >= word.len() {
        return Err(WordlabError::WordTooShort { len: word.len(), n: n_max });
    }
    let (_, symbols) = dense_alphabet(&word.letters)?;
    if n_max >= 1 && n_max <= packed_capacity(symbols.len()) && 2 * n_max < word.len() {
        return packed_profile(&word.letters, n_max);
    }
    FactorIndex::build(word, n_max)?.profile(n_max)
}

pub fn special_census(word: &SymbolicWord, n: usize) -> Result<SpecialFactorCensus, WordlabError> {
    FactorIndex::build(word, 0)?.census(n)
}

/// Compares d2(n) with the bispecial census sum for every n in `range`
/// where d2 is defined.
pub fn cassaigne_check(
    index: &FactorIndex,
    profile: &ComplexityProfile,
    range: std::ops::RangeInclusive<usize>,
) -> CassaigneReport {
    let hi = (*range.end()).min(profile.d2.len().saturating_sub(1));
    let sums = index.cassaigne_sums(hi);
    let mut report = CassaigneReport { rows: Vec::new(), violations: Vec::new() };
    for n in *range.start()..=hi {
        let row = CassaigneRow { n, d2: profile.d2[n], census_sum: sums[n] };
        if row.d2 != row.census_sum {
            report.violations.push(n);
        }
        report.rows.push(row);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet};

    fn word(s: &str) -> SymbolicWord {
        SymbolicWord::from_letters(s.bytes().map(|b| b - b'a' + 1).collect(), 3)
    }

    fn naive_p(letters: &[u8], n: usize) -> u64 {
        letters.windows(n).collect::<HashSet<_>>().len() as u64
    }

    #[test]
    fn ababab_profile() {
        let p = complexity_profile(&word("ababab"), 4).unwrap();
        assert_eq!(p.p(2), Some(2));
        assert_eq!(p.p(1), Some(2));
        assert_eq!(p.p(4), Some(2));
        assert!(matches!(complexity_profile(&word("ab"), 2), Err(WordlabError::WordTooShort { .. })));
    }

    #[test]
    fn ababab_has_no_special_factors() {
        let c = special_census(&word("ababab"), 1).unwrap();
        assert!(c.left_special.is_empty() && c.right_special.is_empty() && c.bispecial.is_empty());
    }

    #[test]
    fn census_matches_naive_extensions() {
        let w = word("abcaabcbbacbacabcbbbcaacbabcabcabbbcacbaacbcabbabcabcac");
        let index = FactorIndex::build(&w, 10).unwrap();
        for n in 0..8 {
            let mut left: HashMap<&[u8], HashSet<u8>> = HashMap::new();
            let mut right: HashMap<&[u8], HashSet<u8>> = HashMap::new();
            let mut both: HashMap<&[u8], HashSet<(u8, u8)>> = HashMap::new();
            for win in w.letters.windows(n + 2) {
                let v = &win[1..=n];
                left.entry(v).or_default().insert(win[0]);
                right.entry(v).or_default().insert(win[n + 1]);
                both.entry(v).or_default().insert((win[0], win[n + 1]));
            }
            let census = index.census(n).unwrap();
            let mut expected_bi: Vec<(String, u32, u32, u32)> = both
                .iter()
                .filter(|(v, _)| left[*v].len() >= 2 && right[*v].len() >= 2)
                .map(|(v, pairs)| {
                    let text: String = v.iter().map(|&l| char::from(b'0' + l)).collect();
                    (text, left[*v].len() as u32, right[*v].len() as u32, pairs.len() as u32)
                })
                .collect();
            expected_bi.sort();
            let got: Vec<(String, u32, u32, u32)> =
                census.bispecial.iter().map(|f| (f.factor.clone(), f.m_l, f.m_r, f.m_b)).collect();
            assert_eq!(got, expected_bi, "n = {n}");
            let n_right = right.values().filter(|s| s.len() >= 2).count();
            assert_eq!(census.right_special.len(), n_right, "n = {n}");
            let n_left = left.values().filter(|s| s.len() >= 2).count();
            assert_eq!(census.left_special.len(), n_left, "n = {n}");
            assert_eq!(index.cassaigne_sums(8)[n], census.cassaigne_sum());
        }
    }

    #[test]
    fn profile_matches_naive_on_small_word() {
        let w = word("abcaabcbbacbacabcbbbcaacbabcabcabbbcacbaacbcabbabcabcac");
        let p = complexity_profile(&w, 30).unwrap();
        for n in 1..=30 {
            assert_eq!(p.p(n).unwrap(), naive_p(&w.letters, n), "n = {n}");
        }
    }

    #[test]
    fn csv_layout() {
        let p = complexity_profile(&word("abaababaabaab"), 3).unwrap();
        let csv = p.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,p,s,d2,stable"));
        assert_eq!(lines.next(), Some("1,2,1,0,true"));
        assert_eq!(lines.last(), Some("3,4,,,false"));
    }
}
