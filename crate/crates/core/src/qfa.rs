//! Measure-many 1-way quantum finite automata.
//!
//! Reading a symbol applies its unitary and then observes the state against
//! the accepting / rejecting / non-halting subspaces. The simulator never
//! samples that observation: it carries the unnormalised non-halting
//! projection forward and adds the halting mass to running totals, which
//! gives the exact acceptance and rejection probabilities of the
//! observe-and-collapse process.
//!
//! Unitaries act on column vectors, `ψ′ = U·ψ`, so column `i` of `U` is the
//! image of basis state `|q_i⟩`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::{Error, Result};

/// Tolerance for the unitarity requirement on every transition matrix.
pub const UNITARY_TOL: f64 = 1e-9;

pub const LEFT_END: &str = "κ";
pub const RIGHT_END: &str = "$";

/// A symbol of the working alphabet: an input letter or one of the two
/// endmarkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    LeftEnd,
    Letter(char),
    RightEnd,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::LeftEnd => f.write_str(LEFT_END),
            Symbol::RightEnd => f.write_str(RIGHT_END),
            Symbol::Letter(c) => write!(f, "{c}"),
        }
    }
}

impl std::str::FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            LEFT_END => Ok(Symbol::LeftEnd),
            RIGHT_END => Ok(Symbol::RightEnd),
            _ => {
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(Symbol::Letter(c)),
                    _ => Err(Error::UnknownSymbol(s.to_string())),
                }
            }
        }
    }
}

/// What happens to probability mass left in non-halting states after `$`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualPolicy {
    /// Report it as `p_residual`.
    #[default]
    Separate,
    /// Count it as rejection.
    CountAsReject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StateKind {
    Accept,
    Reject,
    NonHalting,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoStates,
    DuplicateState(String),
    UnknownState { role: &'static str, name: String },
    StartMissing(String),
    AcceptRejectOverlap(String),
    ReservedLetter(char),
    DuplicateLetter(char),
    MissingUnitary(Symbol),
    UnexpectedUnitary(Symbol),
    WrongDimension { symbol: Symbol, dim: usize },
    NotUnitary { symbol: Symbol, defect: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => write!(f, "state set is empty"),
            Violation::DuplicateState(s) => write!(f, "state '{s}' is listed twice"),
            Violation::UnknownState { role, name } => {
                write!(f, "{role} state '{name}' is not a declared state")
            }
            Violation::StartMissing(s) => write!(f, "start state '{s}' is not a declared state"),
            Violation::AcceptRejectOverlap(s) => {
                write!(f, "state '{s}' is both accepting and rejecting")
            }
            Violation::ReservedLetter(c) => write!(f, "letter '{c}' is reserved for an endmarker"),
            Violation::DuplicateLetter(c) => write!(f, "letter '{c}' is listed twice"),
            Violation::MissingUnitary(s) => write!(f, "no transition matrix for '{s}'"),
            Violation::UnexpectedUnitary(s) => {
                write!(
                    f,
                    "transition matrix for '{s}', which is not in the alphabet"
                )
            }
            Violation::WrongDimension { symbol, dim } => {
                write!(f, "matrix for '{symbol}' has dimension {dim}")
            }
            Violation::NotUnitary { symbol, defect } => {
                write!(
                    f,
                    "matrix for '{symbol}' is not unitary (defect {defect:.3e})"
                )
            }
        }
    }
}

/// An element of `l₂(Q)`; sub-normalised once halting mass has been removed.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    amplitudes: Vec<Complex64>,
}

impl Superposition {
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Superposition { amplitudes }
    }

    pub fn zero(dim: usize) -> Self {
        Superposition {
            amplitudes: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        Superposition { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub residual: Superposition,
    pub p_accept: f64,
    pub p_reject: f64,
}

/// Accumulated outcome probabilities of a run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct RunResult {
    pub p_accept: f64,
    pub p_reject: f64,
    /// Mass still in non-halting states after the right endmarker.
    pub p_residual: f64,
}

impl RunResult {
    pub fn rejection(&self, policy: ResidualPolicy) -> f64 {
        match policy {
            ResidualPolicy::Separate => self.p_reject,
            ResidualPolicy::CountAsReject => self.p_reject + self.p_residual,
        }
    }

    /// `|p_accept + p_reject + p_residual − 1|`.
    pub fn conservation_error(&self) -> f64 {
        (self.p_accept + self.p_reject + self.p_residual - 1.0).abs()
    }
}

/// Result of a single sampled trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampledOutcome {
    /// Accepted when reading the symbol at this position of `κ·w·$`.
    Accepted(usize),
    Rejected(usize),
    /// No halting observation occurred.
    Running,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QfaSpec {
    states: Vec<String>,
    alphabet: Vec<char>,
    start: String,
    accept: Vec<String>,
    reject: Vec<String>,
    unitaries: BTreeMap<Symbol, DenseMatrix>,
    residual_policy: ResidualPolicy,
    start_index: Option<usize>,
    kinds: Vec<StateKind>,
}

impl QfaSpec {
    /// Assembles a spec without checking it; see [`QfaSpec::validate`].
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<char>,
        start: impl Into<String>,
        accept: Vec<String>,
        reject: Vec<String>,
        unitaries: BTreeMap<Symbol, DenseMatrix>,
    ) -> Self {
        let start = start.into();
        let start_index = states.iter().position(|s| *s == start);
        let accept_set: HashSet<&String> = accept.iter().collect();
        let reject_set: HashSet<&String> = reject.iter().collect();
        let kinds = states
            .iter()
            .map(|s| {
                if accept_set.contains(s) {
                    StateKind::Accept
                } else if reject_set.contains(s) {
                    StateKind::Reject
                } else {
                    StateKind::NonHalting
                }
            })
            .collect();
        QfaSpec {
            states,
            alphabet,
            start,
            accept,
            reject,
            unitaries,
            residual_policy: ResidualPolicy::default(),
            start_index,
            kinds,
        }
    }

    pub fn with_residual_policy(mut self, policy: ResidualPolicy) -> Self {
        self.residual_policy = policy;
        self
    }

    pub fn residual_policy(&self) -> ResidualPolicy {
        self.residual_policy
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn accepting(&self) -> &[String] {
        &self.accept
    }

    pub fn rejecting(&self) -> &[String] {
        &self.reject
    }

    pub fn non_halting(&self) -> impl Iterator<Item = &str> {
        self.states
            .iter()
            .zip(&self.kinds)
            .filter(|(_, k)| **k == StateKind::NonHalting)
            .map(|(s, _)| s.as_str())
    }

    /// The working alphabet `Γ = Σ ∪ {κ, $}`.
    pub fn working_alphabet(&self) -> Vec<Symbol> {
        let mut out = vec![Symbol::LeftEnd];
        out.extend(self.alphabet.iter().map(|&c| Symbol::Letter(c)));
        out.push(Symbol::RightEnd);
        out
    }

    pub fn unitary(&self, symbol: Symbol) -> Option<&DenseMatrix> {
        self.unitaries.get(&symbol)
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.states.is_empty() {
            out.push(Violation::NoStates);
        }
        let mut seen = HashSet::new();
        for s in &self.states {
            if !seen.insert(s) {
                out.push(Violation::DuplicateState(s.clone()));
            }
        }
        if self.start_index.is_none() {
            out.push(Violation::StartMissing(self.start.clone()));
        }
        for (role, names) in [("accepting", &self.accept), ("rejecting", &self.reject)] {
            for name in names {
                if !seen.contains(name) {
                    out.push(Violation::UnknownState {
                        role,
                        name: name.clone(),
                    });
                }
            }
        }
        let reject: HashSet<&String> = self.reject.iter().collect();
        for name in &self.accept {
            if reject.contains(name) {
                out.push(Violation::AcceptRejectOverlap(name.clone()));
            }
        }
        let mut letters = HashSet::new();
        for &c in &self.alphabet {
            if c.to_string() == LEFT_END || c.to_string() == RIGHT_END {
                out.push(Violation::ReservedLetter(c));
            }
            if !letters.insert(c) {
                out.push(Violation::DuplicateLetter(c));
            }
        }
        let gamma = self.working_alphabet();
        for symbol in &gamma {
            match self.unitaries.get(symbol) {
                None => out.push(Violation::MissingUnitary(*symbol)),
                Some(u) if u.dim() != self.dim() => out.push(Violation::WrongDimension {
                    symbol: *symbol,
                    dim: u.dim(),
                }),
                Some(u) => {
                    let defect = u.unitarity_defect();
                    if defect.is_nan() || defect > UNITARY_TOL {
                        out.push(Violation::NotUnitary {
                            symbol: *symbol,
                            defect,
                        });
                    }
                }
            }
        }
        for symbol in self.unitaries.keys() {
            if !gamma.contains(symbol) {
                out.push(Violation::UnexpectedUnitary(*symbol));
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    fn symbol_matrix(&self, symbol: Symbol) -> Result<&DenseMatrix> {
        let in_gamma = match symbol {
            Symbol::Letter(c) => self.alphabet.contains(&c),
            _ => true,
        };
        let u = self
            .unitaries
            .get(&symbol)
            .filter(|_| in_gamma)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        if u.dim() != self.dim() {
            return Err(Error::Malformed(format!(
                "matrix for '{symbol}' has dimension {}",
                u.dim()
            )));
        }
        Ok(u)
    }

    /// Applies `V_symbol`, then splits the result over the three subspaces.
    pub fn step(&self, psi: &Superposition, symbol: Symbol) -> Result<StepOutcome> {
        let u = self.symbol_matrix(symbol)?;
        let mut next = u.apply(&psi.amplitudes)?;
        let (mut p_accept, mut p_reject) = (0.0, 0.0);
        for (amp, kind) in next.iter_mut().zip(&self.kinds) {
            match kind {
                StateKind::Accept => p_accept += amp.norm_sqr(),
                StateKind::Reject => p_reject += amp.norm_sqr(),
                StateKind::NonHalting => continue,
            }
            *amp = Complex64::new(0.0, 0.0);
        }
        Ok(StepOutcome {
            residual: Superposition { amplitudes: next },
            p_accept,
            p_reject,
        })
    }

    /// The tape `κ · word · $`, rejecting letters outside the alphabet.
    pub fn tape(&self, word: &str) -> Result<Vec<Symbol>> {
        let mut tape = vec![Symbol::LeftEnd];
        for c in word.chars() {
            if !self.alphabet.contains(&c) {
                return Err(Error::UnknownSymbol(c.to_string()));
            }
            tape.push(Symbol::Letter(c));
        }
        tape.push(Symbol::RightEnd);
        Ok(tape)
    }

    fn initial(&self) -> Result<Superposition> {
        let start = self
            .start_index
            .ok_or_else(|| Error::Malformed(format!("unknown start state '{}'", self.start)))?;
        Ok(Superposition::basis(self.dim(), start))
    }

    /// Cumulative probabilities after each symbol of `κ · word · $`.
    pub fn trace(&self, word: &str) -> Result<Vec<RunResult>> {
        let tape = self.tape(word)?;
        let mut psi = self.initial()?;
        let mut acc = RunResult::default();
        let mut out = Vec::with_capacity(tape.len());
        for symbol in tape {
            let s = self.step(&psi, symbol)?;
            acc.p_accept += s.p_accept;
            acc.p_reject += s.p_reject;
            acc.p_residual = s.residual.norm_sqr();
            psi = s.residual;
            out.push(acc);
        }
        Ok(out)
    }

    pub fn run(&self, word: &str) -> Result<RunResult> {
        let tape = self.tape(word)?;
        let mut psi = self.initial()?;
        let mut acc = RunResult::default();
        for symbol in tape {
            let s = self.step(&psi, symbol)?;
            acc.p_accept += s.p_accept;
            acc.p_reject += s.p_reject;
            psi = s.residual;
        }
        acc.p_residual = psi.norm_sqr();
        Ok(acc)
    }

    pub fn accept_probability(&self, word: &str) -> Result<f64> {
        Ok(self.run(word)?.p_accept)
    }

    /// Rejection probability under this spec's residual policy.
    pub fn reject_probability(&self, word: &str) -> Result<f64> {
        Ok(self.run(word)?.rejection(self.residual_policy))
    }

    /// One trajectory with sampled observations and collapse.
    pub fn sample<R: Rng + ?Sized>(&self, word: &str, rng: &mut R) -> Result<SampledOutcome> {
        let tape = self.tape(word)?;
        let mut psi = self.initial()?;
        for (pos, symbol) in tape.into_iter().enumerate() {
            let s = self.step(&psi, symbol)?;
            let total = s.p_accept + s.p_reject + s.residual.norm_sqr();
            let u: f64 = rng.random::<f64>() * total;
            if u < s.p_accept {
                return Ok(SampledOutcome::Accepted(pos));
            }
            if u < s.p_accept + s.p_reject {
                return Ok(SampledOutcome::Rejected(pos));
            }
            let norm = s.residual.norm_sqr().sqrt();
            psi = Superposition {
                amplitudes: s.residual.amplitudes.iter().map(|z| z / norm).collect(),
            };
        }
        Ok(SampledOutcome::Running)
    }
}

#[derive(Serialize, Deserialize)]
struct QfaSpecJson {
    states: Vec<String>,
    alphabet: Vec<String>,
    start: String,
    accept: Vec<String>,
    reject: Vec<String>,
    unitaries: BTreeMap<String, DenseMatrix>,
    #[serde(default, skip_serializing_if = "is_default_policy")]
    residual_policy: ResidualPolicy,
}

fn is_default_policy(p: &ResidualPolicy) -> bool {
    *p == ResidualPolicy::default()
}

impl Serialize for QfaSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QfaSpecJson {
            states: self.states.clone(),
            alphabet: self.alphabet.iter().map(|c| c.to_string()).collect(),
            start: self.start.clone(),
            accept: self.accept.clone(),
            reject: self.reject.clone(),
            unitaries: self
                .unitaries
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            residual_policy: self.residual_policy,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QfaSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = QfaSpecJson::deserialize(d)?;
        let alphabet = j
            .alphabet
            .iter()
            .map(|s| match s.parse::<Symbol>() {
                Ok(Symbol::Letter(c)) => Ok(c),
                _ => Err(D::Error::custom(format!("bad alphabet letter {s:?}"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let unitaries = j
            .unitaries
            .into_iter()
            .map(|(k, v)| k.parse::<Symbol>().map(|s| (s, v)))
            .collect::<Result<BTreeMap<_, _>>>()
            .map_err(D::Error::custom)?;
        Ok(
            QfaSpec::new(j.states, alphabet, j.start, j.accept, j.reject, unitaries)
                .with_residual_policy(j.residual_policy),
        )
    }
}

/// Name → position lookup.
pub(crate) fn index_of(states: &[String]) -> HashMap<&str, usize> {
    states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// Three states: q0 non-halting, acc, rej. 'a' is a Hadamard-like
    /// rotation between q0 and acc.
    fn toy() -> QfaSpec {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rot = DenseMatrix::from_rows(vec![
            vec![c(h), c(-h), c(0.0)],
            vec![c(h), c(h), c(0.0)],
            vec![c(0.0), c(0.0), c(1.0)],
        ])
        .unwrap();
        let swap_rej = DenseMatrix::from_rows(vec![
            vec![c(0.0), c(0.0), c(1.0)],
            vec![c(0.0), c(1.0), c(0.0)],
            vec![c(1.0), c(0.0), c(0.0)],
        ])
        .unwrap();
        let mut u = BTreeMap::new();
        u.insert(Symbol::LeftEnd, DenseMatrix::identity(3));
        u.insert(Symbol::Letter('a'), rot);
        u.insert(Symbol::RightEnd, swap_rej);
        QfaSpec::new(
            names(&["q0", "acc", "rej"]),
            vec!['a'],
            "q0",
            names(&["acc"]),
            names(&["rej"]),
            u,
        )
    }

    #[test]
    fn toy_probabilities() {
        let spec = toy();
        assert_eq!(spec.validate(), Ok(()));
        let r = spec.run("").unwrap();
        assert!((r.p_reject - 1.0).abs() < 1e-12);
        let r = spec.run("a").unwrap();
        assert!((r.p_accept - 0.5).abs() < 1e-12);
        assert!((r.p_reject - 0.5).abs() < 1e-12);
        let r = spec.run("aa").unwrap();
        assert!((r.p_accept - 0.75).abs() < 1e-12);
        assert!(r.conservation_error() < 1e-12);
        assert_eq!(r.p_residual, 0.0);
    }

    #[test]
    fn trace_is_monotone() {
        let spec = toy();
        let tr = spec.trace("aaaa").unwrap();
        assert_eq!(tr.len(), 6);
        for w in tr.windows(2) {
            assert!(w[1].p_accept >= w[0].p_accept);
            assert!(w[1].p_reject >= w[0].p_reject);
        }
        assert_eq!(*tr.last().unwrap(), spec.run("aaaa").unwrap());
    }

    #[test]
    fn non_unitary_symbol_is_named() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut spec = toy();
        spec.unitaries.insert(
            Symbol::Letter('a'),
            DenseMatrix::from_rows(vec![
                vec![c(h), c(h), c(0.0)],
                vec![c(h), c(h), c(0.0)],
                vec![c(0.0), c(0.0), c(1.0)],
            ])
            .unwrap(),
        );
        let v = spec.validate().unwrap_err();
        assert_eq!(v.len(), 1);
        assert!(matches!(
            v[0],
            Violation::NotUnitary {
                symbol: Symbol::Letter('a'),
                ..
            }
        ));
        assert!(v[0].to_string().contains("'a'"));
    }

    #[test]
    fn structural_violations() {
        let base = toy();
        let bad_start = QfaSpec::new(
            base.states.clone(),
            base.alphabet.clone(),
            "nowhere",
            base.accept.clone(),
            base.reject.clone(),
            base.unitaries.clone(),
        );
        assert_eq!(
            bad_start.validate(),
            Err(vec![Violation::StartMissing("nowhere".into())])
        );
        assert!(bad_start.run("a").is_err());

        let overlap = QfaSpec::new(
            base.states.clone(),
            base.alphabet.clone(),
            "q0",
            names(&["acc"]),
            names(&["acc", "rej"]),
            base.unitaries.clone(),
        );
        assert!(overlap
            .validate()
            .unwrap_err()
            .contains(&Violation::AcceptRejectOverlap("acc".into())));

        let mut missing = base.clone();
        missing.unitaries.remove(&Symbol::LeftEnd);
        assert_eq!(
            missing.validate(),
            Err(vec![Violation::MissingUnitary(Symbol::LeftEnd)])
        );

        let mut wrong = base.clone();
        wrong
            .unitaries
            .insert(Symbol::RightEnd, DenseMatrix::identity(2));
        assert!(matches!(
            wrong.validate().unwrap_err()[0],
            Violation::WrongDimension { dim: 2, .. }
        ));

        let mut reserved = base;
        reserved.alphabet.push('$');
        assert!(reserved
            .validate()
            .unwrap_err()
            .contains(&Violation::ReservedLetter('$')));
    }

    #[test]
    fn foreign_symbols_are_errors() {
        let spec = toy();
        assert_eq!(spec.run("ab"), Err(Error::UnknownSymbol("b".into())));
        let psi = Superposition::basis(3, 0);
        assert!(spec.step(&psi, Symbol::Letter('z')).is_err());
    }

    #[test]
    fn zero_vector_stays_zero() {
        let spec = toy();
        for sym in spec.working_alphabet() {
            let s = spec.step(&Superposition::zero(3), sym).unwrap();
            assert_eq!(s.p_accept, 0.0);
            assert_eq!(s.p_reject, 0.0);
            assert_eq!(s.residual.norm_sqr(), 0.0);
        }
    }

    #[test]
    fn residual_policy() {
        // a spec whose $ leaves q0 untouched: everything stays non-halting
        let mut spec = toy();
        spec.unitaries
            .insert(Symbol::RightEnd, DenseMatrix::identity(3));
        let r = spec.run("").unwrap();
        assert_eq!(r.p_residual, 1.0);
        assert_eq!(spec.reject_probability("").unwrap(), 0.0);
        let spec = spec.with_residual_policy(ResidualPolicy::CountAsReject);
        assert_eq!(spec.reject_probability("").unwrap(), 1.0);
    }

    #[test]
    fn sampled_frequencies_track_exact_probability() {
        let spec = toy();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 20_000;
        let accepted = (0..trials)
            .filter(|_| {
                matches!(
                    spec.sample("aa", &mut rng).unwrap(),
                    SampledOutcome::Accepted(_)
                )
            })
            .count();
        let freq = accepted as f64 / trials as f64;
        assert!((freq - 0.75).abs() < 0.02, "freq {freq}");
    }

    #[test]
    fn json_round_trip() {
        let spec = toy().with_residual_policy(ResidualPolicy::CountAsReject);
        let text = serde_json::to_string(&spec).unwrap();
        let back: QfaSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["start"], "q0");
        assert!(v["unitaries"]["κ"].is_array());
        assert!(v["unitaries"]["$"].is_array());
    }

    #[test]
    fn symbol_parsing() {
        assert_eq!("κ".parse::<Symbol>(), Ok(Symbol::LeftEnd));
        assert_eq!("$".parse::<Symbol>(), Ok(Symbol::RightEnd));
        assert_eq!("a".parse::<Symbol>(), Ok(Symbol::Letter('a')));
        assert!("ab".parse::<Symbol>().is_err());
        assert_eq!(index_of(&names(&["x", "y"]))["y"], 1);
    }
}
