use serde::Serialize;

use super::{ComplexityProfile, WordlabError};

/// Empirical growth regime of p(n) over the stable range.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum GrowthLaw {
    Constant {
        value: u64,
    },
    Linear {
        /// mean of s(n) over the second half of the range
        slope: f64,
        intercept: f64,
        /// sup p(n)/n over the range
        sup_ratio: f64,
        max_s: i64,
    },
    Quadratic {
        /// Cesàro mean of d2(n)/2
        leading: f64,
        /// p(n)/n² at the end of the range
        ratio_at_end: f64,
    },
}

/// Classifies growth on the stable range.
///
/// Constant when s vanishes on the last half; quadratic when every d2 lies
/// in {0, 1, 2} and at least a quarter of the last half is nonzero; linear
/// when s does not more than double from the first half to the last half.
pub fn growth_fit(profile: &ComplexityProfile) -> Result<GrowthLaw, WordlabError> {
    let m = profile.stable_up_to.min(profile.n_max());
    if m < 20 {
        return Err(WordlabError::Inconclusive(format!("stable range {m} < 20")));
    }
    let half = m / 2;
    // s(n) needs p(n + 1), d2(n) needs p(n + 2)
    let s_last = m - 1;
    let d2_last = m - 2;

    if (half..=s_last).all(|n| profile.s[n] == 0) {
        return Ok(GrowthLaw::Constant { value: profile.p[m] });
    }

    let d2_ok = (1..=d2_last).all(|n| (0..=2).contains(&profile.d2[n]));
    let nonzero = (half..=d2_last).filter(|&n| profile.d2[n] != 0).count();
    let span = d2_last + 1 - half;
    if d2_ok && 4 * nonzero >= span {
        let total: i64 = (1..=d2_last).map(|n| profile.d2[n]).sum();
        let leading = total as f64 / (2.0 * d2_last as f64);
        let ratio_at_end = profile.p[m] as f64 / (m as f64 * m as f64);
        return Ok(GrowthLaw::Quadratic { leading, ratio_at_end });
    }

    let max_first = (1..half).map(|n| profile.s[n]).max().unwrap_or(0);
    let max_second = (half..=s_last).map(|n| profile.s[n]).max().unwrap_or(0);
    if max_second <= 2 * max_first.max(1) {
        let slope = (half..=s_last).map(|n| profile.s[n] as f64).sum::<f64>() / (s_last + 1 - half) as f64;
        let intercept = profile.p[m] as f64 - slope * m as f64;
        let sup_ratio = (1..=m).map(|n| profile.p[n] as f64 / n as f64).fold(0.0, f64::max);
        let max_s = (1..=s_last).map(|n| profile.s[n]).max().unwrap_or(0);
        return Ok(GrowthLaw::Linear { slope, intercept, sup_ratio, max_s });
    }
    Err(WordlabError::Inconclusive(format!(
        "s(n) grew from {max_first} to {max_second} without a quadratic d2 pattern"
    )))
}
