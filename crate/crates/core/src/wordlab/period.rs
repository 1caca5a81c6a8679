use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Periodicity {
    pub preperiod: usize,
    pub period: usize,
}

fn z_function(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

/// Smallest period P (with its minimal preperiod q) such that
/// `w[i] = w[i + P]` for all `i ≥ q`, the periodic tail holds at least three
/// full periods and covers at least half of the word. `None` otherwise.
pub fn period_detect(letters: &[u8]) -> Option<Periodicity> {
    let n = letters.len();
    if n < 3 {
        return None;
    }
    let reversed: Vec<u8> = letters.iter().rev().copied().collect();
    let z = z_function(&reversed);
    // for period P, the reversed word has period P on its first P + z[P]
    // letters, so the tail starts at q = n − P − z[P]
    (1..=n / 3).find_map(|period| {
        let tail = period + z[period];
        let preperiod = n - tail;
        (tail >= 3 * period && 2 * tail >= n).then_some(Periodicity { preperiod, period })
    })
}
