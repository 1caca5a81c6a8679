//! The acceptance battery. Each criterion generates its words, measures
//! them and compares against either a closed form or a reference value from
//! the `cubeword-oracles` crate, at a fixed tolerance.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use cubeword_oracles as oracle;

use super::parse::{parse_any_direction, parse_direction, AnyDirection};
use crate::classifier::classify;
use crate::coding::{cutting_word, Point, SymbolicWord};
use crate::geometry::count_diagonals;
use crate::numfield::{rational_relations, AlgebraicNumber, NumberField};
use crate::wordlab::{
    cassaigne_check, growth_fit, packed_profile, period_detect, ComplexityProfile, FactorIndex, GrowthLaw,
};
use crate::Rational;

/// Criteria that fail for a documented reason outside the implementation,
/// with that reason.
pub const KNOWN_UNATTAINABLE: &[(u8, &str)] = &[(
    2,
    "two length-29 factors of (1, √2, √3) have frequency ≈ 2e-8 and are absent from the first 10^7 letters; \
     on a 2·10^8 prefix d2(n) = 2 for n ≤ 60 (criterion 9), i.e. p(n) = n^2+n+1",
)];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionResult {
    pub fn known_blocker(&self) -> Option<&'static str> {
        KNOWN_UNATTAINABLE.iter().find(|(id, _)| *id == self.id).map(|(_, why)| *why)
    }

    /// One human-readable status line.
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("criterion {:>2} {status} {} ({:.2} s): {}", self.id, self.name, self.seconds, self.detail);
        if let (false, Some(why)) = (self.passed, self.known_blocker()) {
            s.push_str(&format!(" [known: {why}]"));
        }
        s
    }
}

struct Cassaigne {
    label: String,
    range: usize,
    violations: Vec<usize>,
}

#[derive(Default)]
struct State {
    cassaigne: Vec<Cassaigne>,
    linear: Vec<(String, ComplexityProfile)>,
}

fn word_for(text: &str, length: usize) -> Result<SymbolicWord, String> {
    let d = parse_any_direction(text).map_err(|e| e.to_string())?;
    let word = match d {
        AnyDirection::Two(d) => cutting_word(&d, &Point::default_for(d.get(0)), length),
        AnyDirection::Three(d) => cutting_word(&d, &Point::default_for(d.get(0)), length),
    };
    word.map_err(|e| e.to_string())
}

/// Profile up to `n_cap` from the suffix automaton, with Cassaigne's
/// identity checked on the stable range and logged.
fn measure(state: &mut State, label: &str, word: &SymbolicWord, n_cap: usize) -> Result<ComplexityProfile, String> {
    let index = FactorIndex::build(word, n_cap).map_err(|e| e.to_string())?;
    let profile = index.profile(n_cap).map_err(|e| e.to_string())?;
    let hi = profile.d2_stable_up_to();
    let report = cassaigne_check(&index, &profile, 1..=hi);
    state.cassaigne.push(Cassaigne { label: label.to_string(), range: hi, violations: report.violations });
    Ok(profile)
}

fn mismatches(
    profile: &ComplexityProfile,
    range: std::ops::RangeInclusive<usize>,
    f: impl Fn(usize) -> u64,
) -> Vec<usize> {
    range.filter(|&n| profile.p(n) != Some(f(n))).collect()
}

fn sturmian(state: &mut State) -> Result<(bool, String), String> {
    let t = Instant::now();
    let word = word_for("(1, (sqrt5 - 1)/2)", 100_000)?;
    let profile = measure(state, "sturmian (1, (√5−1)/2)", &word, 202)?;
    let bad = mismatches(&profile, 1..=200, |n| n as u64 + 1);
    let secs = t.elapsed().as_secs_f64();
    Ok((
        bad.is_empty() && secs < 5.0,
        format!(
            "p(n) = n+1 for n ≤ 200: mismatches {bad:?}; stable_up_to {}; {secs:.2} s (limit 5 s)",
            profile.stable_up_to
        ),
    ))
}

fn case5_exact(state: &mut State) -> Result<(bool, String), String> {
    let t = Instant::now();
    let word = word_for("(1, sqrt2, sqrt3)", 1_000_000)?;
    let profile = measure(state, "case 5 (1, √2, √3) at 10^6", &word, 42)?;
    let bad = mismatches(&profile, 1..=40, |n| (n * n + n + 1) as u64);
    let secs = t.elapsed().as_secs_f64();
    let first = bad
        .first()
        .map_or(String::new(), |&n| format!(" first mismatch p({n}) = {} vs {};", profile.p[n], n * n + n + 1));
    Ok((
        bad.is_empty() && profile.stable_up_to >= 40 && secs < 60.0,
        format!(
            "p(n) = n^2+n+1 for n ≤ 40: {} mismatches;{first} stable_up_to {} (need ≥ 40); {secs:.2} s (limit 60 s)",
            bad.len(),
            profile.stable_up_to
        ),
    ))
}

fn case4_quadratic(state: &mut State) -> Result<(bool, String), String> {
    let t = Instant::now();
    let text = "(1, 1/t, 1/(1-t)) in field t^3+t-1 @ [0.6, 0.7]";
    let w = parse_direction(text).map_err(|e| e.to_string())?;
    let class = classify(&w).map_err(|e| e.to_string())?;
    let word = cutting_word(&w, &Point::default_for(w.get(0)), 10_000_000).map_err(|e| e.to_string())?;
    let profile = measure(state, "case 4 (1, 1/θ, 1/(1−θ)) at 10^7", &word, 302)?;

    let theta = oracle::bisect(|x| x * x * x + x - 1.0, 0.6, 0.7);
    let (alpha, beta) = (1.0 / theta, 1.0 / (1.0 - theta));
    let l = 1.0 / (1.0 + alpha + beta);
    let c = 1.0 - l;
    let exact_c: f64 = class.c_pred.as_ref().map_or(f64::NAN, |x| x.to_decimal(17).parse().unwrap_or(f64::NAN));
    let c_agrees = class.case_tag == 4 && (exact_c - c).abs() < 1e-12 && format!("{c:.4}") == "0.8219";

    let last = 300.min(profile.d2_stable_up_to());
    let bad: Vec<usize> = (1..=last).filter(|&n| !matches!(profile.d2[n], 0 | 2)).collect();
    let zeros = (1..=last).filter(|&n| profile.d2[n] == 0).count();
    let density = zeros as f64 / last.max(1) as f64;
    let density_ok = last == 300 && (density - l).abs() <= 0.20 * l;
    let ratio = profile.p(300).map_or(f64::NAN, |p| p as f64 / 90_000.0);
    let ratio_ok = profile.stable_up_to >= 300 && (ratio - c).abs() <= 0.15 * c;
    let secs = t.elapsed().as_secs_f64();
    let passed = c_agrees && bad.is_empty() && last >= 1 && density_ok && ratio_ok && secs < 120.0;
    Ok((
        passed,
        format!(
            "(a) d2 ∈ {{0,2}} on 1..={last}: failures {bad:?}; (b) zero density {density:.5} vs l = {l:.5} (±20%); \
             (c) p(300)/300^2 = {ratio:.5} vs C = {c:.5} (±15%); exact C = {exact_c:.12}; stable_up_to {}; {secs:.2} s (limit 120 s)",
            profile.stable_up_to
        ),
    ))
}

fn case1_period(state: &mut State) -> Result<(bool, String), String> {
    let t = Instant::now();
    let dir = [(1, 1), (2, 3), (5, 7)];
    let start = [(1, 7), (1, 11), (1, 13)];
    let length = 10_000;
    let word = word_for("(1, 2/3, 5/7)", length)?;
    let profile = measure(state, "case 1 (1, 2/3, 5/7)", &word, 102)?;
    let n_max = 100;
    let per = period_detect(&word.letters);

    let reference = oracle::rational_orbit_word(&dir, &start, length).map_err(|e| format!("oracle tie: {e:?}"))?;
    let same_word = reference == word.letters;
    let block_len = oracle::rational_period(&dir) as usize;
    let expected = oracle::cyclic_factor_counts(&reference[..block_len], n_max)[n_max];

    let tail = profile.p[n_max];
    let n0 = (1..=n_max).rev().take_while(|&n| profile.p[n] == tail).last().unwrap_or(n_max);
    let secs = t.elapsed().as_secs_f64();
    let passed = match per {
        Some(p) => same_word && n0 <= p.period && tail == expected && profile.stable_up_to >= n_max && secs < 5.0,
        None => false,
    };
    Ok((
        passed,
        format!(
            "period {per:?}; p constant = {tail} from n0 = {n0}; oracle period {block_len}, oracle count {expected}; \
             word equals oracle word: {same_word}; {secs:.2} s (limit 5 s)"
        ),
    ))
}

fn linear(state: &mut State) -> Result<(bool, String), String> {
    let mut ok = true;
    let mut details = Vec::new();
    for text in ["(1, sqrt2, 1/2)", "(1, sqrt2, 1 + sqrt2)"] {
        let t = Instant::now();
        let word = word_for(text, 1_000_000)?;
        let profile = measure(state, text, &word, 202)?;
        let stable = profile.stable_up_to.min(200);
        let max_s = (1..stable).map(|n| profile.s[n]).max().unwrap_or(0);
        let growth = growth_fit(&profile);
        let is_linear = matches!(growth, Ok(GrowthLaw::Linear { .. }));
        let below: Vec<usize> = (1..=stable).filter(|&n| profile.p[n] < n as u64 + 1).collect();
        let secs = t.elapsed().as_secs_f64();
        ok &= is_linear && below.is_empty() && stable >= 1 && secs < 60.0;
        details.push(format!(
            "{text}: stable 1..={stable}, max s = {max_s}, growth {}, p < n+1 at {below:?}, {secs:.2} s (limit 60 s)",
            match &growth {
                Ok(GrowthLaw::Linear { slope, .. }) => format!("linear (slope {slope:.3})"),
                Ok(g) => format!("{g:?}"),
                Err(e) => e.to_string(),
            }
        ));
        state.linear.push((text.to_string(), profile));
    }
    Ok((ok, details.join("; ")))
}

fn same_complexity(state: &mut State, base: &str, partner: &str) -> Result<(bool, String), String> {
    let a = state.linear.iter().find(|(t, _)| t == base).map(|(_, p)| p.clone()).ok_or("base profile missing")?;
    let word = word_for(partner, 1_000_000)?;
    let b = measure(state, partner, &word, 102)?;
    let common = 100.min(a.stable_up_to).min(b.stable_up_to);
    let differ: Vec<usize> = (1..=common).filter(|&n| a.p[n] != b.p[n]).collect();
    Ok((
        common >= 1 && differ.is_empty(),
        format!("{base} vs {partner}: compared n in 1..={common}, differences at {differ:?}"),
    ))
}

fn cassaigne_all(state: &State) -> (bool, String) {
    let bad: Vec<&Cassaigne> = state.cassaigne.iter().filter(|c| !c.violations.is_empty() || c.range == 0).collect();
    let summary: Vec<String> = state.cassaigne.iter().map(|c| format!("{} (1..={})", c.label, c.range)).collect();
    let detail = match bad.first() {
        Some(c) => format!("violations in {}: {:?}", c.label, c.violations),
        None => format!("d2 = census sum on {}", summary.join(", ")),
    };
    (bad.is_empty() && !state.cassaigne.is_empty(), detail)
}

fn diagonal_bound() -> Result<(bool, String), String> {
    let t = Instant::now();
    let w = parse_direction("(1, sqrt2, sqrt3)").map_err(|e| e.to_string())?;
    let counts: Vec<(u64, usize)> = (1..=60u64)
        .into_par_iter()
        .map(|n| count_diagonals(&w, n).map(|d| (n, d.count)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let over: Vec<u64> = counts.iter().filter(|(_, c)| *c > 2).map(|(n, _)| *n).collect();

    let word = cutting_word(&w, &Point::default_for(w.get(0)), 200_000_000).map_err(|e| e.to_string())?;
    let profile = packed_profile(&word.letters, 62).map_err(|e| e.to_string())?;
    drop(word);
    let last = 60.min(profile.d2_stable_up_to());
    let offsets: BTreeSet<i64> =
        counts.iter().filter(|(n, _)| *n as usize <= last).map(|&(n, c)| profile.d2[n as usize] - c as i64).collect();
    let secs = t.elapsed().as_secs_f64();
    let constant = offsets.len() == 1;
    Ok((
        over.is_empty() && constant && last == 60,
        format!(
            "N(n) ≤ 2 for n ≤ 60: exceeded at {over:?}; offset d2(n) − N(n) over n in 1..={last} (2·10^8 letters): {offsets:?}; {secs:.2} s"
        ),
    ))
}

fn random_word(rng: &mut ChaCha8Rng, kind: usize) -> Vec<u8> {
    let len = rng.gen_range(1_000..=20_000);
    match kind {
        0 => (0..len).map(|_| rng.gen_range(1..=3)).collect(),
        1 => {
            let mut c = 1u8;
            (0..len)
                .map(|_| {
                    if rng.gen_bool(0.15) {
                        c = rng.gen_range(1..=3);
                    }
                    c
                })
                .collect()
        }
        _ => {
            let block: Vec<u8> = (0..rng.gen_range(1..=40)).map(|_| rng.gen_range(1..=3)).collect();
            (0..len).map(|i| if rng.gen_bool(0.002) { rng.gen_range(1..=3) } else { block[i % block.len()] }).collect()
        }
    }
}

fn engines_vs_naive() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let words: Vec<Vec<u8>> = (0..50).map(|i| random_word(&mut rng, i % 3)).collect();
    let failures: Vec<String> = words
        .par_iter()
        .enumerate()
        .filter_map(|(i, letters)| {
            let naive = oracle::naive_factor_counts(letters, 50);
            let naive_half = oracle::naive_factor_counts(&letters[..letters.len() / 2], 50);
            let naive_stable = (1..=50).take_while(|&n| naive[n] == naive_half[n]).last().unwrap_or(0);
            let sam = FactorIndex::from_letters(letters, 50).and_then(|x| x.profile(50));
            let packed = packed_profile(letters, 50);
            match (sam, packed) {
                (Ok(a), Ok(b))
                    if a.p == naive
                        && b.p == naive
                        && a.stable_up_to == naive_stable
                        && b.stable_up_to == naive_stable =>
                {
                    None
                }
                (a, b) => Some(format!(
                    "word {i} (length {}): automaton {:?} packed {:?}",
                    letters.len(),
                    a.map(|x| x.p),
                    b.map(|x| x.p)
                )),
            }
        })
        .collect();
    let total: usize = words.iter().map(Vec::len).sum();
    (
        failures.is_empty(),
        match failures.first() {
            Some(f) => f.clone(),
            None => format!(
                "50 words ({total} letters), p(1..=50) and stable_up_to identical across naive, automaton and packed"
            ),
        },
    )
}

fn test_fields() -> Vec<std::sync::Arc<NumberField>> {
    let poly = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    vec![
        NumberField::rationals(),
        NumberField::quadratic(2).expect("√2"),
        NumberField::quadratic(5).expect("√5"),
        NumberField::new(poly(&[-1, 1, 0, 1]), q(3, 5), q(7, 10), "t").expect("t³+t−1"),
        NumberField::new(poly(&[-2, 0, 0, 0, 1]), q(1, 1), q(2, 1), "u").expect("x⁴−2"),
        NumberField::sqrt2_sqrt3(),
    ]
}

fn random_triple(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<i64>> {
    let nonzero = |v: &Vec<i64>| v.iter().any(|&x| x != 0);
    loop {
        let mut vecs: Vec<Vec<i64>> = (0..3).map(|_| (0..dim).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        match rng.gen_range(0..3) {
            1 => {
                let (a, b, d) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(1..=3));
                vecs[2] = (0..dim).map(|j| a * vecs[0][j] + b * vecs[1][j]).collect();
                vecs[0] = vecs[0].iter().map(|x| x * d).collect();
            }
            2 => {
                let keep = [rng.gen_range(0..dim), rng.gen_range(0..dim)];
                for v in &mut vecs {
                    for (j, x) in v.iter_mut().enumerate() {
                        if !keep.contains(&j) {
                            *x = 0;
                        }
                    }
                }
            }
            _ => {}
        }
        if vecs.iter().all(nonzero) {
            return vecs;
        }
    }
}

fn kernel_vs_brute_force() -> (bool, String) {
    let fields = test_fields();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let cases: Vec<(usize, Vec<Vec<i64>>)> = (0..100)
        .map(|i| {
            let f = i % fields.len();
            (f, random_triple(&mut rng, fields[f].degree()))
        })
        .collect();
    let results: Vec<Result<usize, String>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (f, coords))| {
            let field = &fields[*f];
            let values: Vec<AlgebraicNumber> = coords
                .iter()
                .map(|v| AlgebraicNumber::from_coords(field, v.iter().map(|&x| Rational::from_integer(x.into())).collect()))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let basis = rational_relations(&values).map_err(|e| e.to_string())?;
            let brute = oracle::exhaustive_relations(coords, 20);
            let independent = oracle::rank(&basis) == basis.len();
            let annihilate = basis.iter().all(|b| oracle::annihilates(coords, b));
            let spanned = brute.iter().all(|c| oracle::in_integer_span(&basis, c));
            if independent && annihilate && spanned {
                Ok(brute.len())
            } else {
                Err(format!(
                    "triple {i} over {}: basis {basis:?}, independent {independent}, annihilates {annihilate}, covers brute force {spanned}",
                    field
                ))
            }
        })
        .collect();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    let found: usize = results.iter().filter_map(|r| r.as_ref().ok()).sum();
    let with_relations = results.iter().filter(|r| matches!(r, Ok(n) if *n > 0)).count();
    (
        errors.is_empty(),
        match errors.first() {
            Some(e) => (*e).clone(),
            None => format!(
                "100 triples over 6 fields of degree ≤ 4: relation sets in |c_i| ≤ 20 agree ({found} brute-force relations, {with_relations} triples with relations)"
            ),
        },
    )
}

fn run_one(
    id: u8,
    name: &str,
    progress: &mut dyn FnMut(&CriterionResult),
    f: impl FnOnce() -> Result<(bool, String), String>,
) -> CriterionResult {
    let t = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let r = CriterionResult { id, name: name.to_string(), passed, detail, seconds: t.elapsed().as_secs_f64() };
    progress(&r);
    r
}

/// Runs the eleven criteria in order, reporting each result as it completes.
pub fn run_suite(progress: &mut dyn FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut state = State::default();
    let mut out = Vec::new();
    out.push(run_one(1, "sturmian_ground_truth", progress, || sturmian(&mut state)));
    out.push(run_one(2, "case5_exact_complexity", progress, || case5_exact(&mut state)));
    out.push(run_one(3, "case4_quadratic_constant", progress, || case4_quadratic(&mut state)));
    out.push(run_one(4, "case1_periodic", progress, || case1_period(&mut state)));
    out.push(run_one(5, "cases2_3_linear", progress, || linear(&mut state)));
    out.push(run_one(6, "same_complexity_rational_third", progress, || {
        same_complexity(&mut state, "(1, sqrt2, 1/2)", "(1, sqrt3, 1/2)")
    }));
    out.push(run_one(7, "same_complexity_common_plane", progress, || {
        same_complexity(&mut state, "(1, sqrt2, 1 + sqrt2)", "(1, sqrt3, 1 + sqrt3)")
    }));
    out.push(run_one(8, "cassaigne_identity", progress, || Ok(cassaigne_all(&state))));
    out.push(run_one(9, "diagonal_bound_and_offset", progress, diagonal_bound));
    out.push(run_one(10, "engines_vs_naive_counter", progress, || Ok(engines_vs_naive())));
    out.push(run_one(11, "kernel_vs_brute_force", progress, || Ok(kernel_vs_brute_force())));
    out
}
