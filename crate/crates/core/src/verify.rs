//! Verification reports: probability scans, lemma tables and the QFA/DFA
//! size comparison.
//!
//! Probabilities in reports are decimal strings with 12 fractional digits so
//! that JSON output is byte-stable.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::circulant::{ShiftMatrix, ZERO_TOL};
use crate::ln::{build_ln_dfa, build_ln_qfa, ln_membership, minimize_dfa, word_stats, WordStats};
use crate::modular::{factorize, mod_div};
use crate::{Error, Result};

/// Tolerance on the probability bounds.
pub const BOUND_TOL: f64 = 1e-9;
/// Tolerance on probability conservation.
pub const CONSERVATION_TOL: f64 = 1e-9;
/// Residual mass and shuffle disagreement allowed on the `L_n` automata.
pub const EXACT_TOL: f64 = 1e-12;
/// Random scan words have at most this many letters (unless `max_len` is
/// already larger).
pub const RANDOM_MAX_LEN: usize = 40;
/// Minimisation is only attempted up to this `n`.
pub const MINIMIZE_LIMIT: u64 = 15;

/// Fixed-point rendering with 12 fractional digits, never `-0.000…`.
pub fn fixed12(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn ser_fixed<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fixed12(*x))
}

fn ser_fixed_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&fixed12(*v)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub n: u64,
    pub word: String,
    #[serde(flatten)]
    pub stats: WordStats,
    #[serde(serialize_with = "ser_fixed")]
    pub p_accept: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub p_reject: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub p_residual: f64,
    pub member: bool,
    pub p_min: u64,
    #[serde(serialize_with = "ser_fixed")]
    pub bound: f64,
    /// Whether the probability respects the bound for its membership class.
    pub within_bound: bool,
}

pub fn run_report(n: u64, word: &str) -> Result<RunReport> {
    let qfa = build_ln_qfa(n)?;
    let stats = word_stats(word)?;
    let r = qfa.spec().run(word)?;
    let member = ln_membership(word, n)?;
    let bound = qfa.nonmember_bound();
    Ok(RunReport {
        n,
        word: word.to_string(),
        stats,
        p_accept: r.p_accept,
        p_reject: r.p_reject,
        p_residual: r.p_residual,
        member,
        p_min: qfa.p_min(),
        bound,
        within_bound: within_bound(member, r.p_accept, bound),
    })
}

fn within_bound(member: bool, p: f64, bound: f64) -> bool {
    if member {
        (p - 1.0).abs() <= BOUND_TOL
    } else {
        p <= bound + BOUND_TOL
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub word: String,
    pub member: bool,
    #[serde(serialize_with = "ser_fixed")]
    pub p_accept: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub n: u64,
    pub p_min: u64,
    pub max_len: usize,
    pub samples: usize,
    pub seed: u64,
    pub words_scanned: usize,
    pub members: usize,
    #[serde(serialize_with = "ser_fixed")]
    pub min_member_prob: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub max_nonmember_prob: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub bound: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub max_residual: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub max_conservation_error: f64,
    /// Runs whose residual or conservation error exceeded tolerance.
    pub integrity_violations: usize,
    pub shuffle_checks: usize,
    pub shuffle_mismatches: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
            && self.shuffle_mismatches.is_empty()
            && self.integrity_violations == 0
    }
}

/// All words over `{a, b}` of length `0..=max_len`, shortest first and
/// lexicographic within a length.
pub fn enumerate_words(max_len: usize) -> Vec<String> {
    let mut out = Vec::with_capacity((1usize << (max_len + 1)) - 1);
    for len in 0..=max_len {
        for bits in 0..(1u64 << len) {
            out.push(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 0 {
                            'a'
                        } else {
                            'b'
                        }
                    })
                    .collect(),
            );
        }
    }
    out
}

/// Seeded random words (lengths `lo..=hi`) paired with one random
/// permutation of each.
pub fn random_words(samples: usize, lo: usize, hi: usize, seed: u64) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let len = rng.random_range(lo..=hi);
            let mut letters: Vec<char> = (0..len)
                .map(|_| if rng.random::<bool>() { 'a' } else { 'b' })
                .collect();
            let word: String = letters.iter().collect();
            letters.shuffle(&mut rng);
            (word, letters.into_iter().collect())
        })
        .collect()
}

struct Evaluated {
    member: bool,
    p_accept: f64,
    residual: f64,
    conservation: f64,
}

pub fn scan(n: u64, max_len: usize, samples: usize, seed: u64) -> Result<ScanReport> {
    let started = Instant::now();
    let qfa = build_ln_qfa(n)?;
    let bound = qfa.nonmember_bound();

    let lo = max_len + 1;
    let random = random_words(samples, lo, RANDOM_MAX_LEN.max(lo), seed);
    let mut words = enumerate_words(max_len);
    words.extend(random.iter().map(|(w, _)| w.clone()));

    let evaluate = |w: &String| -> Result<Evaluated> {
        let r = qfa.spec().run(w)?;
        Ok(Evaluated {
            member: ln_membership(w, n)?,
            p_accept: r.p_accept,
            residual: r.p_residual,
            conservation: r.conservation_error(),
        })
    };
    let results = words.par_iter().map(evaluate).collect::<Result<Vec<_>>>()?;
    let shuffled = random
        .par_iter()
        .map(|(_, s)| qfa.accept_probability(s))
        .collect::<Result<Vec<_>>>()?;

    let mut report = ScanReport {
        n,
        p_min: qfa.p_min(),
        max_len,
        samples,
        seed,
        words_scanned: words.len(),
        members: 0,
        min_member_prob: 1.0,
        max_nonmember_prob: 0.0,
        bound,
        max_residual: 0.0,
        max_conservation_error: 0.0,
        integrity_violations: 0,
        shuffle_checks: random.len(),
        shuffle_mismatches: Vec::new(),
        counterexamples: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for (w, e) in words.iter().zip(&results) {
        if e.member {
            report.members += 1;
            report.min_member_prob = report.min_member_prob.min(e.p_accept);
        } else {
            report.max_nonmember_prob = report.max_nonmember_prob.max(e.p_accept);
        }
        if !within_bound(e.member, e.p_accept, bound) {
            report.counterexamples.push(Counterexample {
                word: w.clone(),
                member: e.member,
                p_accept: e.p_accept,
            });
        }
        report.max_residual = report.max_residual.max(e.residual);
        report.max_conservation_error = report.max_conservation_error.max(e.conservation);
        if e.residual > EXACT_TOL || e.conservation > CONSERVATION_TOL {
            report.integrity_violations += 1;
        }
    }
    let offset = words.len() - random.len();
    for ((w, _), (e, p)) in random.iter().zip(results[offset..].iter().zip(&shuffled)) {
        if (e.p_accept - p).abs() > EXACT_TOL {
            report.shuffle_mismatches.push(w.clone());
        }
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaRow {
    pub s: u64,
    pub is_special: bool,
    pub l: Option<u64>,
    pub g: Option<u64>,
    pub k: Option<u64>,
    #[serde(serialize_with = "ser_fixed_opt")]
    pub c_abs: Option<f64>,
    /// `|x_0|²` of `M_n^s`.
    #[serde(serialize_with = "ser_fixed")]
    pub x0_sq: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub n: u64,
    pub p_min: u64,
    pub prime: bool,
    pub rows: Vec<LemmaRow>,
    /// `k(s) = 1/s` with `l = 1` below `n`; only defined for prime `n`.
    pub lemma2_ok: Option<bool>,
    pub lemma3_ok: bool,
    pub corollary1_ok: bool,
    /// Largest `|x_0|²` over `0 < s < n`.
    #[serde(serialize_with = "ser_fixed")]
    pub max_off_period_x0_sq: f64,
    /// Powers `s` whose row broke a flag.
    pub offending: Vec<u64>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.lemma2_ok.unwrap_or(true) && self.lemma3_ok && self.corollary1_ok
    }
}

/// Classifies `M_n^s` for `s = 1..=n` and checks the structure theorems.
pub fn lemmas(n: u64) -> Result<LemmaReport> {
    let fact = factorize(n)?;
    let p_min = fact.p_min();
    let bound = 1.0 / p_min as f64;
    let m = ShiftMatrix::gauss(n)?;

    let rows: Vec<LemmaRow> = (1..=n)
        .zip(m.powers())
        .map(|(s, p)| {
            let x0_sq = p.first_row()[0].norm_sqr();
            match p.classify_special(ZERO_TOL) {
                Some(prof) => LemmaRow {
                    s,
                    is_special: true,
                    l: Some(prof.l),
                    g: Some(prof.g),
                    k: Some(prof.k),
                    c_abs: Some(prof.c.norm()),
                    x0_sq,
                },
                None => LemmaRow {
                    s,
                    is_special: false,
                    l: None,
                    g: None,
                    k: None,
                    c_abs: None,
                    x0_sq,
                },
            }
        })
        .collect();

    let mut offending = Vec::new();
    let mut lemma2 = true;
    let mut lemma3 = true;
    let mut cor1 = true;
    let mut max_off = 0.0f64;
    for row in &rows {
        let mut bad = false;
        let full_period = row.s == n;
        if !row.is_special {
            lemma3 = false;
            lemma2 = false;
            bad = true;
        } else {
            let (l, g, k) = (row.l.unwrap(), row.g.unwrap(), row.k.unwrap());
            let l3 = if full_period { l == n } else { l < n };
            let l3_pmin = row.s != p_min || (l == p_min && k == 1 % g);
            if !(l3 && l3_pmin) {
                lemma3 = false;
                bad = true;
            }
            if fact.is_prime() {
                let l2 = if full_period {
                    l == n
                } else {
                    l == 1 && Ok(k) == mod_div(1, row.s as i64, n)
                };
                if !l2 {
                    lemma2 = false;
                    bad = true;
                }
            }
        }
        let c1 = if full_period {
            (row.x0_sq - 1.0).abs() <= BOUND_TOL
        } else {
            max_off = max_off.max(row.x0_sq);
            row.x0_sq <= bound + BOUND_TOL
        };
        if !c1 {
            cor1 = false;
            bad = true;
        }
        if bad {
            offending.push(row.s);
        }
    }

    Ok(LemmaReport {
        n,
        p_min,
        prime: fact.is_prime(),
        rows,
        lemma2_ok: fact.is_prime().then_some(lemma2),
        lemma3_ok: lemma3,
        corollary1_ok: cor1,
        max_off_period_x0_sq: max_off,
        offending,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub n: u64,
    pub paper_state_count: usize,
    pub internal_state_count: usize,
    pub dfa_states: usize,
    /// `None` above [`MINIMIZE_LIMIT`].
    pub minimized_dfa_states: Option<usize>,
    /// `dfa_states / paper_state_count`.
    #[serde(serialize_with = "ser_fixed")]
    pub ratio: f64,
}

pub fn compare(n: u64) -> Result<CompareReport> {
    let qfa = build_ln_qfa(n)?;
    let dfa = build_ln_dfa(n)?;
    let minimized = (n <= MINIMIZE_LIMIT).then(|| minimize_dfa(&dfa).len());
    Ok(CompareReport {
        n,
        paper_state_count: qfa.paper_state_count(),
        internal_state_count: qfa.internal_state_count(),
        dfa_states: dfa.len(),
        minimized_dfa_states: minimized,
        ratio: dfa.len() as f64 / qfa.paper_state_count() as f64,
    })
}

#[derive(Serialize)]
struct ShiftPair<'a> {
    #[serde(rename = "M")]
    m: &'a ShiftMatrix,
    #[serde(rename = "F")]
    f: &'a ShiftMatrix,
}

pub const QFA_FILE: &str = "qfa.json";
pub const DFA_FILE: &str = "dfa.json";
pub const SHIFT_FILE: &str = "shift_matrices.json";

/// Writes the `L_n` QFA, its product DFA and the `{"M": …, "F": …}` pair of
/// circulants into `dir`, creating it if needed.
pub fn export(n: u64, dir: &Path) -> Result<Vec<PathBuf>> {
    let qfa = build_ln_qfa(n)?;
    let dfa = build_ln_dfa(n)?;
    let m = ShiftMatrix::gauss(n)?;
    let f = ShiftMatrix::cyclic_shift(n as usize)?;

    let io = |path: &Path, e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let files = [
        (QFA_FILE, to_json(qfa.spec())),
        (DFA_FILE, to_json(&dfa)),
        (SHIFT_FILE, to_json(&ShiftPair { m: &m, f: &f })),
    ];
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body + "\n").map_err(|e| io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialise")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(fixed12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fixed12(-1e-17), "0.000000000000");
        assert_eq!(fixed12(1.0), "1.000000000000");
        assert_eq!(fixed12(-0.5), "-0.500000000000");
    }

    #[test]
    fn enumeration_order() {
        let w = enumerate_words(2);
        assert_eq!(w, vec!["", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(enumerate_words(6).len(), 127);
        assert_eq!(enumerate_words(0), vec![""]);
    }

    #[test]
    fn random_words_are_seeded_permutations() {
        let a = random_words(50, 9, 40, 3);
        assert_eq!(a, random_words(50, 9, 40, 3));
        assert_ne!(a, random_words(50, 9, 40, 4));
        for (w, s) in &a {
            assert!((9..=40).contains(&w.len()));
            assert_eq!(word_stats(w).unwrap(), word_stats(s).unwrap());
        }
    }

    #[test]
    fn run_report_values() {
        let r = run_report(3, "aaabbb").unwrap();
        assert_eq!(fixed12(r.p_accept), "1.000000000000");
        assert!(r.member && r.within_bound);
        let r = run_report(3, "a").unwrap();
        assert_eq!(fixed12(r.p_accept), "0.333333333333");
        assert!(!r.member && r.within_bound);
        assert_eq!(run_report(4, "a").unwrap_err(), Error::OddModulus(4));
        assert!(run_report(3, "abc").is_err());
    }

    #[test]
    fn scan_small() {
        let r = scan(3, 6, 0, 0).unwrap();
        assert_eq!(r.words_scanned, 127);
        assert!((r.max_nonmember_prob - 1.0 / 3.0).abs() <= 1e-9);
        assert!((r.min_member_prob - 1.0).abs() <= 1e-9);
        assert!(r.ok());

        let r = scan(9, 6, 20, 1).unwrap();
        assert!(r.max_nonmember_prob <= 1.0 / 3.0 + 1e-9);
        assert_eq!(r.p_min, 3);
        assert!(r.ok());

        let r = scan(3, 0, 0, 0).unwrap();
        assert_eq!((r.words_scanned, r.members), (1, 1));
        assert!((r.min_member_prob - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn scan_is_deterministic() {
        let a = to_json(&scan(5, 4, 30, 11).unwrap());
        let b = to_json(&scan(5, 4, 30, 11).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn lemma_tables() {
        let r = lemmas(5).unwrap();
        let ls: Vec<_> = r.rows.iter().map(|x| x.l.unwrap()).collect();
        let ks: Vec<_> = r.rows.iter().map(|x| x.k.unwrap()).collect();
        assert_eq!(ls, vec![1, 1, 1, 1, 5]);
        assert_eq!(&ks[..4], &[1, 3, 2, 4]);
        assert_eq!(r.lemma2_ok, Some(true));
        assert!(r.ok());

        let r = lemmas(9).unwrap();
        assert_eq!((r.rows[2].l, r.rows[2].k), (Some(3), Some(1)));
        assert_eq!(r.rows[8].l, Some(9));
        assert_eq!(r.lemma2_ok, None);
        assert!(r.lemma3_ok && r.corollary1_ok);

        let r = lemmas(3).unwrap();
        assert_eq!(r.rows[2].l, Some(3));
        assert!((r.rows[2].x0_sq - 1.0).abs() <= 1e-9);
        assert!(lemmas(8).is_err());
    }

    #[test]
    fn compare_counts() {
        let r = compare(3).unwrap();
        assert_eq!(
            (
                r.paper_state_count,
                r.internal_state_count,
                r.dfa_states,
                r.minimized_dfa_states
            ),
            (5, 7, 9, Some(9))
        );
        let r = compare(15).unwrap();
        assert_eq!((r.paper_state_count, r.dfa_states), (17, 225));
        assert_eq!(compare(5).unwrap().minimized_dfa_states, Some(25));
        assert_eq!(compare(17).unwrap().minimized_dfa_states, None);
    }
}
