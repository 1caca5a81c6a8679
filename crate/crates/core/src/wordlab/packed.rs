//! Factor counting for long words and short factors: every window of length
//! `n_max` is packed into a `u128`, and shorter factors are read off as
//! prefixes of the distinct windows. Memory depends on p(n_max), not on the
//! word length.

use std::collections::HashSet;

use super::{dense_alphabet, ComplexityProfile, WordlabError};

/// Bits per letter for an alphabet of `k` letters.
fn letter_bits(k: usize) -> u32 {
    match k {
        0..=2 => 1,
        3..=4 => 2,
        _ => 3,
    }
}

/// Largest `n_max` the packed counter supports for an alphabet of `k` letters.
pub fn packed_capacity(k: usize) -> usize {
    (128 / letter_bits(k)) as usize
}

fn pack(letters: &[u8], bits: u32) -> u128 {
    letters.iter().fold(0u128, |acc, &c| (acc << bits) | c as u128)
}

/// p(1..=n_max) of `letters[..len]` given its distinct windows of length `n_max`.
fn counts_from_windows(windows: &HashSet<u128>, letters: &[u8], len: usize, n_max: usize, bits: u32) -> Vec<u64> {
    let tail = &letters[len + 1 - n_max..len];
    let mut p = vec![1u64; n_max + 1];
    for (m, slot) in p.iter_mut().enumerate().skip(1) {
        let shift = bits * (n_max - m) as u32;
        let mut prefixes: HashSet<u128> = windows.iter().map(|&w| w >> shift).collect();
        // factors starting in the last n_max − 1 positions are not window prefixes
        for start in 0..tail.len().saturating_sub(m - 1) {
            prefixes.insert(pack(&tail[start..start + m], bits));
        }
        *slot = prefixes.len() as u64;
    }
    p
}

/// Factor complexity for `n ≤ n_max` via packed windows. Requires
/// `n_max ≤ packed_capacity(alphabet)` and `n_max < len / 2`.
pub fn packed_profile(letters: &[u8], n_max: usize) -> Result<ComplexityProfile, WordlabError> {
    let (dense, symbols) = dense_alphabet(letters)?;
    let k = symbols.len();
    let bits = letter_bits(k);
    let len = letters.len();
    if n_max == 0 || 2 * n_max >= len {
        return Err(WordlabError::WordTooShort { len, n: n_max });
    }
    if n_max > packed_capacity(k) {
        return Err(WordlabError::Inconclusive(format!(
            "n_max {n_max} exceeds packed capacity {}",
            packed_capacity(k)
        )));
    }
    let codes: Vec<u8> = letters.iter().map(|&l| dense[l as usize]).collect();
    let mask = if bits * n_max as u32 == 128 { u128::MAX } else { (1u128 << (bits * n_max as u32)) - 1 };
    let half = len / 2;
    let mut windows = HashSet::new();
    let mut p_half = Vec::new();
    let mut acc = 0u128;
    for (i, &c) in codes.iter().enumerate() {
        acc = ((acc << bits) | c as u128) & mask;
        if i + 1 >= n_max {
            windows.insert(acc);
        }
        if i + 1 == half {
            p_half = counts_from_windows(&windows, &codes, half, n_max, bits);
        }
    }
    let p = counts_from_windows(&windows, &codes, len, n_max, bits);
    Ok(ComplexityProfile::from_counts(p, &p_half, len))
}
