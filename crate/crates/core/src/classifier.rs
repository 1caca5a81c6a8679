//! Five-case classification of cube directions by the rational relations of
//! their ratios and reciprocals, the complexity law predicted for each case,
//! and an end-to-end check of the prediction against a measured word.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coding::{cutting_word, CodingError, Point};
use crate::geometry::{count_diagonals, zero_increment_prediction, GeometryError};
use crate::numfield::{primitive_relation, rational_relations, AlgebraicNumber, NumfieldError};
use crate::wordlab::{
    cassaigne_check, complexity_profile, growth_fit, packed_capacity, period_detect, ComplexityProfile, FactorIndex,
    GrowthLaw, Periodicity, WordlabError,
};
use crate::{Direction3, Point3, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error(transparent)]
    Field(#[from] NumfieldError),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Wordlab(#[from] WordlabError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter().map(|x| x.to_i64().map_or_else(|| serde_json::Value::from(x.to_string()), serde_json::Value::from)),
    )
}

fn serialize_relations<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    struct Row<'a>(&'a [BigInt]);
    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize_bigints(self.0, s)
        }
    }
    s.collect_seq(v.iter().map(|r| Row(r)))
}

/// Primitive relation `Σ coeffs[i]/ω_i = 0` among the reciprocals, read as
/// `A/ω_lone = B/ω_j + C/ω_k` with A, B, C > 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReciprocalRelation {
    #[serde(serialize_with = "serialize_bigints")]
    pub coeffs: Vec<BigInt>,
    /// coordinate (0-based) whose coefficient has the odd sign out, if any
    pub lone: Option<usize>,
    /// |coeffs| in coordinate order
    #[serde(serialize_with = "serialize_bigints")]
    pub magnitudes: Vec<BigInt>,
}

impl ReciprocalRelation {
    fn new(coeffs: [BigInt; 3]) -> Self {
        let pos = coeffs.iter().filter(|c| c.is_positive()).count();
        let neg = coeffs.iter().filter(|c| c.is_negative()).count();
        let lone = match (pos, neg) {
            (1, 2) => coeffs.iter().position(|c| c.is_positive()),
            (2, 1) => coeffs.iter().position(|c| c.is_negative()),
            _ => None,
        };
        let magnitudes = coeffs.iter().map(|c| c.abs()).collect();
        Self { coeffs: coeffs.to_vec(), lone, magnitudes }
    }

    /// The coefficient A of the lone coordinate.
    pub fn a(&self) -> Option<&BigInt> {
        self.lone.map(|i| &self.magnitudes[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictedLaw {
    EventuallyConstant,
    LinearBounded,
    Quadratic,
    Exact,
}

impl Serialize for PredictedLaw {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Self::EventuallyConstant => "eventually constant",
            Self::LinearBounded => "linear bounded",
            Self::Quadratic => "C*n^2",
            Self::Exact => "n^2+n+1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub case_tag: u8,
    /// ω₂/ω₁
    pub alpha: AlgebraicNumber,
    /// ω₃/ω₁
    pub beta: AlgebraicNumber,
    /// basis of the integer relations of (1, α, β)
    #[serde(serialize_with = "serialize_relations")]
    pub relations: Vec<Vec<BigInt>>,
    pub reciprocal_relation: Option<ReciprocalRelation>,
    /// coordinate order bringing the direction to the canonical form of its
    /// case: new coordinate c is old `permutation[c]`
    pub permutation: [usize; 3],
    pub predicted: PredictedLaw,
    /// 1 − l, the leading constant of p(n) in case 4
    pub c_pred: Option<AlgebraicNumber>,
    /// ω_lone / (A(ω₁ + ω₂ + ω₃)), the density of zero increments in case 4
    pub l_frequency: Option<AlgebraicNumber>,
}

fn rational_pairs(w: &Direction3) -> Result<Vec<(usize, usize)>, NumfieldError> {
    let mut out = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if w.get(j).try_div(w.get(i))?.as_rational().is_some() {
            out.push((i, j));
        }
    }
    Ok(out)
}

/// Decides the case of `w`:
/// 1. every ratio ω_j/ω_i rational;
/// 2. exactly one ratio rational;
/// 3. no ratio rational and (1, α, β) dependent;
/// 4. (1, α, β) independent and (1, 1/α, 1/β) dependent;
/// 5. otherwise.
pub fn classify(w: &Direction3) -> Result<Classification, ClassifierError> {
    let one = AlgebraicNumber::one(w.get(0).field());
    let alpha = w.get(1).try_div(w.get(0))?;
    let beta = w.get(2).try_div(w.get(0))?;
    let relations = rational_relations(&[one.clone(), alpha.clone(), beta.clone()])?;
    let pairs = rational_pairs(w)?;
    let mut c = Classification {
        case_tag: 0,
        alpha: alpha.clone(),
        beta: beta.clone(),
        relations,
        reciprocal_relation: None,
        permutation: [0, 1, 2],
        predicted: PredictedLaw::LinearBounded,
        c_pred: None,
        l_frequency: None,
    };
    if pairs.len() == 3 {
        c.case_tag = 1;
        c.predicted = PredictedLaw::EventuallyConstant;
    } else if let [(p, q)] = pairs[..] {
        // canonical form has ω₃/ω₁ rational
        c.case_tag = 2;
        c.permutation = [p, 3 - p - q, q];
    } else if !c.relations.is_empty() {
        c.case_tag = 3;
    } else if let Some(rel) = primitive_relation(&[one.clone(), alpha.inv()?, beta.inv()?])? {
        let rel = ReciprocalRelation::new(rel);
        c.case_tag = 4;
        c.predicted = PredictedLaw::Quadratic;
        if let (Some(lone), Some(a)) = (rel.lone, rel.a()) {
            let (j, k) = match lone {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            c.permutation = [lone, j, k];
            let sum = w.get(0).try_add(w.get(1))?.try_add(w.get(2))?;
            let l = w.get(lone).try_div(&sum.scale(&Rational::from_integer(a.clone())))?;
            c.c_pred = Some(one.try_sub(&l)?);
            c.l_frequency = Some(l);
        }
        c.reciprocal_relation = Some(rel);
    } else {
        c.case_tag = 5;
        c.predicted = PredictedLaw::Exact;
    }
    Ok(c)
}

/// What the classification says about p(n).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prediction {
    EventuallyConstant,
    LinearBounded,
    /// p(n) ~ leading·n²; `approx` is leading·n² to 30 digits
    Asymptotic {
        leading: AlgebraicNumber,
        approx: String,
    },
    Exact {
        value: u64,
    },
}

pub fn predicted_profile(c: &Classification, n: u64) -> Prediction {
    match c.predicted {
        PredictedLaw::EventuallyConstant => Prediction::EventuallyConstant,
        PredictedLaw::LinearBounded => Prediction::LinearBounded,
        PredictedLaw::Exact => Prediction::Exact { value: n * n + n + 1 },
        PredictedLaw::Quadratic => match &c.c_pred {
            Some(leading) => {
                let approx = leading.scale(&Rational::from_integer(BigInt::from(n) * BigInt::from(n))).to_decimal(30);
                Prediction::Asymptotic { leading: leading.clone(), approx }
            }
            None => Prediction::LinearBounded,
        },
    }
}

/// Inputs of [`verify`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub length: usize,
    pub n_max: usize,
    pub start: Option<Point3>,
    /// number of start points sampled for non-minimal directions
    pub seed_points: usize,
    /// second direction for the same-complexity corollaries (cases 2 and 3)
    pub partner: Option<Direction3>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { length: 1_000_000, n_max: 100, start: None, seed_points: 1, partner: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub classification: Classification,
    pub length: usize,
    pub n_max_requested: usize,
    pub n_max_used: usize,
    pub stable_up_to: usize,
    pub growth: Option<GrowthLaw>,
    pub periodicity: Option<Periodicity>,
    pub p: Vec<u64>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

/// Start points used when sampling: (1/7, 1/11, 1/13), (1/17, 1/19, 1/23), …
pub fn seed_point(like: &AlgebraicNumber, k: usize) -> Point3 {
    const PRIMES: [i64; 30] = [
        7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
        127, 131, 137,
    ];
    let k = k % (PRIMES.len() / 3);
    Point::new(std::array::from_fn(|c| {
        AlgebraicNumber::from_rational(like.field(), Rational::new(1.into(), PRIMES[3 * k + c].into()))
    }))
}

/// Largest word handed to the suffix automaton.
const AUTOMATON_LIMIT: usize = 20_000_000;

struct Measured {
    profile: ComplexityProfile,
    index: Option<FactorIndex>,
    periodicity: Option<Periodicity>,
}

fn measure(w: &Direction3, start: &Point3, length: usize, n_cap: usize) -> Result<Measured, ClassifierError> {
    let word = cutting_word(w, start, length)?;
    let prefix = &word.letters[..word.len().min(AUTOMATON_LIMIT)];
    let index = (n_cap < prefix.len()).then(|| FactorIndex::from_letters(prefix, n_cap)).transpose()?;
    let profile = match &index {
        Some(idx) if n_cap > packed_capacity(3) || word.len() <= AUTOMATON_LIMIT => idx.profile(n_cap)?,
        _ => complexity_profile(&word, n_cap)?,
    };
    Ok(Measured { profile, index, periodicity: period_detect(&word.letters) })
}

/// Pointwise maximum of profiles over sampled start points.
fn max_profile(profiles: &[ComplexityProfile]) -> ComplexityProfile {
    let mut best = profiles[0].clone();
    for p in &profiles[1..] {
        for (a, b) in best.p.iter_mut().zip(&p.p) {
            *a = (*a).max(*b);
        }
        best.stable_up_to = best.stable_up_to.min(p.stable_up_to);
    }
    best.s = best.p.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    best.d2 = best.s.windows(2).map(|w| w[1] - w[0]).collect();
    best
}

fn within(measured: f64, target: f64, tol: f64) -> bool {
    (measured - target).abs() <= tol * target
}

fn approx(x: &AlgebraicNumber) -> f64 {
    x.to_decimal(17).parse().expect("decimal rendering parses")
}

/// Generates the word, measures its complexity and checks it against the
/// prediction for the direction's case.
pub fn verify(w: &Direction3, options: &VerifyOptions) -> Result<VerificationReport, ClassifierError> {
    let class = classify(w)?;
    let one = AlgebraicNumber::one(w.get(0).field());
    let minimal = class.case_tag >= 4;
    let n_cap = options.n_max + 2;
    let mut warnings = Vec::new();

    let starts: Vec<Point3> = match &options.start {
        Some(p) => vec![p.clone()],
        None if !minimal => (0..options.seed_points.max(1)).map(|k| seed_point(&one, k)).collect(),
        None => vec![Point::default_for(&one)],
    };
    let mut runs = Vec::new();
    for (k, start) in starts.iter().enumerate() {
        match measure(w, start, options.length, n_cap) {
            Ok(m) => runs.push(m),
            Err(ClassifierError::Coding(e @ CodingError::SingularOrbit { .. })) if starts.len() > 1 => {
                warnings.push(format!("seed point {k} skipped: {e}"));
            }
            Err(e) => return Err(e),
        }
    }
    if runs.is_empty() {
        return Err(CodingError::EmptyWord.into());
    }
    let profiles: Vec<ComplexityProfile> = runs.iter().map(|m| m.profile.clone()).collect();
    let profile = max_profile(&profiles);
    let stable = profile.stable_up_to;
    let n_used = options.n_max.min(stable);
    if n_used < options.n_max {
        warnings.push(format!("n_max reduced from {} to stable_up_to = {stable}", options.n_max));
    }
    let d2_last = n_used.min(profile.d2_stable_up_to());
    let growth = growth_fit(&profile);
    if let Err(e) = &growth {
        warnings.push(e.to_string());
    }
    let growth = growth.ok();
    let mut checks = Vec::new();

    let expected_law = match class.case_tag {
        1 => matches!(growth, Some(GrowthLaw::Constant { .. })),
        2 | 3 => matches!(growth, Some(GrowthLaw::Linear { .. })),
        _ => matches!(growth, Some(GrowthLaw::Quadratic { .. })),
    };
    checks.push(Check::new("growth_law", expected_law, format!("{growth:?}")));

    if let Some(index) = &runs[0].index {
        let hi = d2_last.min(runs[0].profile.d2_stable_up_to());
        let report = cassaigne_check(index, &runs[0].profile, 1..=hi);
        checks.push(Check::new(
            "cassaigne_identity",
            report.holds(),
            format!("n in 1..={hi}, violations at {:?}", report.violations),
        ));
    }

    match class.case_tag {
        1 => {
            let per = runs[0].periodicity;
            checks.push(Check::new("periodic", per.is_some(), format!("{per:?}")));
        }
        2 | 3 => {
            let bad: Vec<usize> = (1..=n_used).filter(|&n| profile.p[n] < n as u64 + 1).collect();
            checks.push(Check::new("p_at_least_n_plus_1", bad.is_empty(), format!("failures at {bad:?}")));
            let sup = (1..=n_used).map(|n| profile.p[n] as f64 / n as f64).fold(0.0, f64::max);
            checks.push(Check::new("linear_bound", sup.is_finite(), format!("sup p(n)/n = {sup:.6}")));
        }
        4 => case4_checks(w, &class, &profile, n_used, d2_last, &mut checks)?,
        _ => {
            let bad: Vec<usize> = (1..=n_used).filter(|&n| profile.p[n] != (n * n + n + 1) as u64).collect();
            let detail = match bad.first() {
                Some(&n) => format!("first mismatch p({n}) = {} vs {}", profile.p[n], n * n + n + 1),
                None => format!("n in 1..={n_used}"),
            };
            checks.push(Check::new("p_equals_n2_n_1", bad.is_empty(), detail));
        }
    }
    if minimal {
        let bad: Vec<usize> = (1..=d2_last)
            .filter(|&n| count_diagonals(w, n as u64).map_or(true, |d| d.simple_count as i64 != profile.d2[n]))
            .collect();
        checks.push(Check::new(
            "diagonal_increment",
            bad.is_empty(),
            format!("d2(n) = diagonals meeting no third edge for n in 1..={d2_last}; failures at {bad:?}"),
        ));
    }

    if let Some(partner) = &options.partner {
        let pc = classify(partner)?;
        let one_p = AlgebraicNumber::one(partner.get(0).field());
        let p_starts: Vec<Point3> = (0..starts.len()).map(|k| seed_point(&one_p, k)).collect();
        let mut p_profiles = Vec::new();
        for s in &p_starts {
            p_profiles.push(measure(partner, s, options.length, n_cap)?.profile);
        }
        let other = max_profile(&p_profiles);
        let common = n_used.min(other.stable_up_to);
        let same = profile.p[..=common] == other.p[..=common];
        checks.push(Check::new(
            "partner_same_complexity",
            same && pc.case_tag == class.case_tag,
            format!("partner case {}, compared n in 1..={common}", pc.case_tag),
        ));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        classification: class,
        length: options.length,
        n_max_requested: options.n_max,
        n_max_used: n_used,
        stable_up_to: stable,
        growth,
        periodicity: runs[0].periodicity,
        p: profile.p[..=n_used].to_vec(),
        checks,
        warnings,
        passed,
    })
}

fn case4_checks(
    w: &Direction3,
    class: &Classification,
    profile: &ComplexityProfile,
    n_used: usize,
    d2_last: usize,
    checks: &mut Vec<Check>,
) -> Result<(), ClassifierError> {
    let bad: Vec<usize> = (1..=d2_last).filter(|&n| profile.d2[n] != 0 && profile.d2[n] != 2).collect();
    checks.push(Check::new("d2_in_0_2", bad.is_empty(), format!("n in 1..={d2_last}, failures at {bad:?}")));

    let (Some(rel), Some(c_pred), Some(l)) = (&class.reciprocal_relation, &class.c_pred, &class.l_frequency) else {
        checks.push(Check::new("reciprocal_relation_signs", false, "relation has no lone sign"));
        return Ok(());
    };
    let (lone, a) = (rel.lone.expect("c_pred implies a lone coordinate"), rel.a().expect("lone"));
    let zeros: BTreeSet<usize> = (1..=d2_last).filter(|&n| profile.d2[n] == 0).collect();
    let predicted: BTreeSet<usize> = zero_increment_prediction(w, lone, a, d2_last)?.into_iter().collect();
    checks.push(Check::new(
        "zero_increments_predicted",
        zeros == predicted,
        format!("{} measured zeros, {} predicted", zeros.len(), predicted.len()),
    ));

    let l_f = approx(l);
    let density = zeros.len() as f64 / d2_last.max(1) as f64;
    checks.push(Check::new(
        "zero_density",
        within(density, l_f, 0.20),
        format!("density {density:.6} vs l = {}", l.to_decimal(12)),
    ));
    let c_f = approx(c_pred);
    let ratio = profile.p[n_used] as f64 / (n_used * n_used).max(1) as f64;
    checks.push(Check::new(
        "leading_constant",
        within(ratio, c_f, 0.15),
        format!("p({n_used})/{n_used}^2 = {ratio:.6} vs C = {}", c_pred.to_decimal(12)),
    ));
    // (m + 2p)/2 from the frequencies m, p of increments 1 and 2
    let count = |v: i64| (1..=d2_last).filter(|&n| profile.d2[n] == v).count() as f64;
    let total = d2_last.max(1) as f64;
    let fin1 = (count(1) / total + 2.0 * count(2) / total) / 2.0;
    checks.push(Check::new(
        "frequency_reconstruction",
        within(fin1, c_f, 0.15),
        format!("(m + 2p)/2 = {fin1:.6} vs C = {}", c_pred.to_decimal(12)),
    ));
    Ok(())
}
