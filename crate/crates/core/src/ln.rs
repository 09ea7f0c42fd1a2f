//! The language `L_n = { w ∈ {a,b}* : #a(w) ≡ #b(w) ≡ 0 (mod n) }`: its
//! `n + 2` state QFA, the product-counter DFA and Hopcroft minimisation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circulant::ShiftMatrix;
use crate::dense::DenseMatrix;
use crate::modular::{factorize, Factorization};
use crate::qfa::{index_of, QfaSpec, Symbol};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WordStats {
    /// Number of `a` letters, i.e. applications of `M_n`.
    pub count_a: u64,
    /// Number of `b` letters, i.e. applications of `F`.
    pub count_b: u64,
}

pub fn word_stats(word: &str) -> Result<WordStats> {
    let mut stats = WordStats {
        count_a: 0,
        count_b: 0,
    };
    for c in word.chars() {
        match c {
            'a' => stats.count_a += 1,
            'b' => stats.count_b += 1,
            other => return Err(Error::UnknownSymbol(other.to_string())),
        }
    }
    Ok(stats)
}

pub fn ln_membership(word: &str, n: u64) -> Result<bool> {
    crate::modular::check_odd_modulus(n)?;
    let s = word_stats(word)?;
    Ok(s.count_a % n == 0 && s.count_b % n == 0)
}

/// The QFA recognising `L_n`.
///
/// Logically it has the `n + 2` states `q_0 … q_{n-1}, q_acc, q_rej`. The
/// right endmarker must send the `n − 1` states `q_1 … q_{n-1}` to rejection
/// unitarily, so each gets its own rejecting copy `q_rej_i`; the realised
/// automaton has `2n + 1` basis states. Acceptance is `|amplitude(q_0)|²`
/// before `$` either way.
#[derive(Debug, Clone)]
pub struct LnQfa {
    factorization: Factorization,
    spec: QfaSpec,
}

impl LnQfa {
    pub fn new(n: u64) -> Result<Self> {
        let factorization = factorize(n)?;
        let n_us = n as usize;
        let dim = 2 * n_us + 1;
        let acc = n_us;
        let rej = n_us + 1;
        let rej_copy = |i: usize| n_us + 1 + i;

        let mut states: Vec<String> = (0..n_us).map(|i| format!("q{i}")).collect();
        states.push("q_acc".into());
        states.push("q_rej".into());
        states.extend((1..n_us).map(|i| format!("q_rej{i}")));
        let mut reject = vec!["q_rej".to_string()];
        reject.extend((1..n_us).map(|i| format!("q_rej{i}")));

        // V(|q_i⟩) = Σ_j x_{ij} |q_j⟩, so the block is the transpose of the
        // circulant.
        let embed = |m: &ShiftMatrix| {
            let mut u = DenseMatrix::identity(dim);
            for i in 0..n_us {
                for j in 0..n_us {
                    u[(j, i)] = m.entry(i, j);
                }
            }
            u
        };

        let one = Complex64::new(1.0, 0.0);
        let mut end = DenseMatrix::zeros(dim);
        end[(acc, 0)] = one;
        end[(0, acc)] = one;
        end[(rej, rej)] = one;
        for i in 1..n_us {
            end[(rej_copy(i), i)] = one;
            end[(i, rej_copy(i))] = one;
        }

        let mut unitaries = BTreeMap::new();
        unitaries.insert(Symbol::LeftEnd, DenseMatrix::identity(dim));
        unitaries.insert(Symbol::Letter('a'), embed(&ShiftMatrix::gauss(n)?));
        unitaries.insert(
            Symbol::Letter('b'),
            embed(&ShiftMatrix::cyclic_shift(n_us)?),
        );
        unitaries.insert(Symbol::RightEnd, end);

        let spec = QfaSpec::new(
            states,
            vec!['a', 'b'],
            "q0",
            vec!["q_acc".to_string()],
            reject,
            unitaries,
        );
        Ok(LnQfa {
            factorization,
            spec,
        })
    }

    pub fn n(&self) -> u64 {
        self.factorization.n()
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn p_min(&self) -> u64 {
        self.factorization.p_min()
    }

    pub fn spec(&self) -> &QfaSpec {
        &self.spec
    }

    pub fn into_spec(self) -> QfaSpec {
        self.spec
    }

    /// `n + 2`.
    pub fn paper_state_count(&self) -> usize {
        self.n() as usize + 2
    }

    /// `2n + 1`, the basis actually simulated.
    pub fn internal_state_count(&self) -> usize {
        self.spec.dim()
    }

    /// Upper bound on the acceptance probability of non-members, `1 / p_min`.
    pub fn nonmember_bound(&self) -> f64 {
        1.0 / self.p_min() as f64
    }

    pub fn accept_probability(&self, word: &str) -> Result<f64> {
        self.spec.accept_probability(word)
    }
}

pub fn build_ln_qfa(n: u64) -> Result<LnQfa> {
    LnQfa::new(n)
}

/// Letters of the DFA alphabet, in transition-table order.
pub const DFA_LETTERS: [char; 2] = ['a', 'b'];

fn letter_index(c: char) -> Result<usize> {
    DFA_LETTERS
        .iter()
        .position(|&l| l == c)
        .ok_or_else(|| Error::UnknownSymbol(c.to_string()))
}

/// A complete DFA over `{a, b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfaSpec {
    states: Vec<String>,
    start: usize,
    accept: BTreeSet<usize>,
    delta: Vec<[usize; 2]>,
}

impl DfaSpec {
    pub fn new(
        states: Vec<String>,
        start: usize,
        accept: BTreeSet<usize>,
        delta: Vec<[usize; 2]>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::Malformed("DFA without states".into()));
        }
        if delta.len() != n {
            return Err(Error::Malformed(format!(
                "{} transition rows for {n} states",
                delta.len()
            )));
        }
        if start >= n || accept.iter().any(|&q| q >= n) || delta.iter().flatten().any(|&q| q >= n) {
            return Err(Error::Malformed("state index out of range".into()));
        }
        Ok(DfaSpec {
            states,
            start,
            accept,
            delta,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accept.contains(&q)
    }

    pub fn next(&self, q: usize, letter: char) -> Result<usize> {
        Ok(self.delta[q][letter_index(letter)?])
    }

    pub fn run(&self, word: &str) -> Result<bool> {
        let mut q = self.start;
        for c in word.chars() {
            q = self.next(q, c)?;
        }
        Ok(self.is_accepting(q))
    }
}

/// Product of two mod-`n` counters; state `(i, j)` is `(#a mod n, #b mod n)`.
pub fn build_ln_dfa(n: u64) -> Result<DfaSpec> {
    if n == 0 {
        return Err(Error::Dimension(0));
    }
    let n = n as usize;
    let id = |i: usize, j: usize| i * n + j;
    let mut states = Vec::with_capacity(n * n);
    let mut delta = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            states.push(format!("{i}_{j}"));
            delta.push([id((i + 1) % n, j), id(i, (j + 1) % n)]);
        }
    }
    DfaSpec::new(states, 0, BTreeSet::from([0]), delta)
}

pub fn dfa_run(dfa: &DfaSpec, word: &str) -> Result<bool> {
    dfa.run(word)
}

/// Minimal DFA for the same language: unreachable states are dropped, then
/// Hopcroft partition refinement merges equivalent states. States of the
/// result are numbered in breadth-first order from the start state and named
/// after the first original state of their class.
pub fn minimize_dfa(dfa: &DfaSpec) -> DfaSpec {
    // reachable states in BFS order
    let mut order = Vec::new();
    let mut seen = vec![false; dfa.len()];
    let mut queue = VecDeque::from([dfa.start]);
    seen[dfa.start] = true;
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for &r in &dfa.delta[q] {
            if !seen[r] {
                seen[r] = true;
                queue.push_back(r);
            }
        }
    }

    let class = hopcroft(dfa, &order);

    let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
    let mut names = Vec::new();
    let mut reps = Vec::new();
    for &q in &order {
        let c = class[q];
        if let std::collections::btree_map::Entry::Vacant(e) = renumber.entry(c) {
            e.insert(reps.len());
            names.push(dfa.states[q].clone());
            reps.push(q);
        }
    }
    let delta = reps
        .iter()
        .map(|&q| dfa.delta[q].map(|r| renumber[&class[r]]))
        .collect();
    let accept = reps
        .iter()
        .enumerate()
        .filter(|(_, &q)| dfa.is_accepting(q))
        .map(|(i, _)| i)
        .collect();
    DfaSpec::new(names, 0, accept, delta).expect("indices are in range")
}

/// Block id per state (only meaningful on `reachable`).
fn hopcroft(dfa: &DfaSpec, reachable: &[usize]) -> Vec<usize> {
    let n = dfa.len();
    let mut inverse: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; n];
    for &q in reachable {
        for (a, &r) in dfa.delta[q].iter().enumerate() {
            inverse[r][a].push(q);
        }
    }

    let (acc, rej): (Vec<usize>, Vec<usize>) =
        reachable.iter().partition(|&&q| dfa.is_accepting(q));
    let mut blocks: Vec<Vec<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
    let mut block_of = vec![usize::MAX; n];
    for (b, members) in blocks.iter().enumerate() {
        for &q in members {
            block_of[q] = b;
        }
    }

    let mut work: Vec<(usize, usize)> = Vec::new();
    let mut queued = BTreeSet::new();
    if blocks.len() == 2 {
        let smaller = if blocks[0].len() <= blocks[1].len() {
            0
        } else {
            1
        };
        for a in 0..2 {
            work.push((smaller, a));
            queued.insert((smaller, a));
        }
    }

    while let Some(splitter) = work.pop() {
        queued.remove(&splitter);
        let (b, a) = splitter;
        let mut hit: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &q in &blocks[b] {
            for &p in &inverse[q][a] {
                hit.entry(block_of[p]).or_default().push(p);
            }
        }
        for (y, mut inside) in hit {
            inside.sort_unstable();
            inside.dedup();
            if inside.len() == blocks[y].len() {
                continue;
            }
            let in_set: BTreeSet<usize> = inside.iter().copied().collect();
            let outside: Vec<usize> = blocks[y]
                .iter()
                .copied()
                .filter(|q| !in_set.contains(q))
                .collect();
            let new_id = blocks.len();
            blocks[y] = outside;
            for &q in &inside {
                block_of[q] = new_id;
            }
            blocks.push(inside);
            for letter in 0..2 {
                if queued.contains(&(y, letter)) {
                    work.push((new_id, letter));
                    queued.insert((new_id, letter));
                } else {
                    let pick = if blocks[y].len() <= blocks[new_id].len() {
                        y
                    } else {
                        new_id
                    };
                    work.push((pick, letter));
                    queued.insert((pick, letter));
                }
            }
        }
    }
    block_of
}

#[derive(Serialize, Deserialize)]
struct DfaSpecJson {
    states: Vec<String>,
    start: String,
    accept: Vec<String>,
    delta: BTreeMap<String, BTreeMap<String, String>>,
}

impl Serialize for DfaSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let delta = self
            .states
            .iter()
            .zip(&self.delta)
            .map(|(name, row)| {
                let targets = DFA_LETTERS
                    .iter()
                    .zip(row)
                    .map(|(l, &r)| (l.to_string(), self.states[r].clone()))
                    .collect();
                (name.clone(), targets)
            })
            .collect();
        DfaSpecJson {
            states: self.states.clone(),
            start: self.states[self.start].clone(),
            accept: self
                .accept
                .iter()
                .map(|&q| self.states[q].clone())
                .collect(),
            delta,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DfaSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = DfaSpecJson::deserialize(d)?;
        let index = index_of(&j.states);
        if index.len() != j.states.len() {
            return Err(D::Error::custom("duplicate state names"));
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| D::Error::custom(format!("unknown state {name:?}")))
        };
        let start = lookup(&j.start)?;
        let accept = j
            .accept
            .iter()
            .map(|s| lookup(s))
            .collect::<std::result::Result<BTreeSet<_>, _>>()?;
        let mut delta = Vec::with_capacity(j.states.len());
        for name in &j.states {
            let row = j
                .delta
                .get(name)
                .ok_or_else(|| D::Error::custom(format!("no transitions for {name:?}")))?;
            let mut out = [0usize; 2];
            for (slot, letter) in out.iter_mut().zip(DFA_LETTERS) {
                let target = row.get(&letter.to_string()).ok_or_else(|| {
                    D::Error::custom(format!("no '{letter}' transition for {name:?}"))
                })?;
                *slot = lookup(target)?;
            }
            delta.push(out);
        }
        DfaSpec::new(j.states, start, accept, delta).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words_up_to(max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut frontier = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for c in ['a', 'b'] {
                    next.push(format!("{w}{c}"));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Moore refinement: split by (acceptance, successor classes) until
    /// stable. Independent of the Hopcroft worklist.
    fn moore_class_count(dfa: &DfaSpec) -> usize {
        let mut reach = BTreeSet::from([dfa.start()]);
        let mut stack = vec![dfa.start()];
        while let Some(q) = stack.pop() {
            for c in DFA_LETTERS {
                let r = dfa.next(q, c).unwrap();
                if reach.insert(r) {
                    stack.push(r);
                }
            }
        }
        let reach: Vec<usize> = reach.into_iter().collect();
        let mut class: BTreeMap<usize, usize> = reach
            .iter()
            .map(|&q| (q, dfa.is_accepting(q) as usize))
            .collect();
        loop {
            let mut sigs = BTreeMap::new();
            let mut next = BTreeMap::new();
            for &q in &reach {
                let sig = (
                    class[&q],
                    class[&dfa.next(q, 'a').unwrap()],
                    class[&dfa.next(q, 'b').unwrap()],
                );
                let len = sigs.len();
                let id = *sigs.entry(sig).or_insert(len);
                next.insert(q, id);
            }
            let before: BTreeSet<_> = class.values().collect();
            if sigs.len() == before.len() {
                return sigs.len();
            }
            class = next;
        }
    }

    #[test]
    fn word_stats_examples() {
        assert_eq!(
            word_stats("").unwrap(),
            WordStats {
                count_a: 0,
                count_b: 0
            }
        );
        assert_eq!(
            word_stats("aaabbb").unwrap(),
            WordStats {
                count_a: 3,
                count_b: 3
            }
        );
        assert_eq!(
            word_stats("abab").unwrap(),
            WordStats {
                count_a: 2,
                count_b: 2
            }
        );
        assert_eq!(word_stats("abc"), Err(Error::UnknownSymbol("c".into())));
    }

    #[test]
    fn membership_examples() {
        assert!(ln_membership("", 3).unwrap());
        assert!(ln_membership("aaabbb", 3).unwrap());
        assert!(!ln_membership("ab", 3).unwrap());
        assert!(ln_membership("ab", 4).is_err());
        assert!(ln_membership("ax", 3).is_err());
    }

    #[test]
    fn qfa_builder() {
        let q = build_ln_qfa(3).unwrap();
        assert_eq!(q.paper_state_count(), 5);
        assert_eq!(q.internal_state_count(), 7);
        assert_eq!(q.spec().validate(), Ok(()));
        assert_eq!(build_ln_qfa(15).unwrap().paper_state_count(), 17);
        assert_eq!(build_ln_qfa(4).unwrap_err(), Error::OddModulus(4));
        let spec = build_ln_qfa(5).unwrap().into_spec();
        assert_eq!(spec.accepting(), &["q_acc".to_string()]);
        assert_eq!(spec.non_halting().count(), 5);
    }

    #[test]
    fn qfa_word_examples() {
        let q = build_ln_qfa(3).unwrap();
        assert!((q.accept_probability("").unwrap() - 1.0).abs() < 1e-12);
        assert!((q.accept_probability("aaabbb").unwrap() - 1.0).abs() < 1e-9);
        assert!((q.accept_probability("a").unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert!(q.accept_probability("b").unwrap().abs() < 1e-9);
        assert!((q.accept_probability("ab").unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert!((q.accept_probability("aaa").unwrap() - 1.0).abs() < 1e-9);
        assert!(q.accept_probability("abc").is_err());
    }

    #[test]
    fn dfa_examples() {
        let d3 = build_ln_dfa(3).unwrap();
        assert_eq!(d3.len(), 9);
        assert!(dfa_run(&d3, "").unwrap());
        assert!(!dfa_run(&d3, "ab").unwrap());
        assert_eq!(
            d3.states()[d3.next(d3.next(0, 'a').unwrap(), 'b').unwrap()],
            "1_1"
        );
        assert!(dfa_run(&build_ln_dfa(5).unwrap(), "aaaaabbbbb").unwrap());
        assert!(dfa_run(&d3, "ac").is_err());

        let d1 = build_ln_dfa(1).unwrap();
        assert_eq!(d1.len(), 1);
        for w in words_up_to(5) {
            assert!(dfa_run(&d1, &w).unwrap());
        }
        assert!(build_ln_dfa(0).is_err());
    }

    #[test]
    fn dfa_agrees_with_membership() {
        for n in [3u64, 5] {
            let d = build_ln_dfa(n).unwrap();
            for w in words_up_to(8) {
                assert_eq!(
                    dfa_run(&d, &w).unwrap(),
                    ln_membership(&w, n).unwrap(),
                    "{w}"
                );
            }
        }
    }

    #[test]
    fn product_dfa_is_minimal() {
        for n in [1u64, 2, 3, 4, 5, 7] {
            let d = build_ln_dfa(n).unwrap();
            let m = minimize_dfa(&d);
            assert_eq!(moore_class_count(&d), (n * n) as usize);
            assert_eq!(m.len(), (n * n) as usize);
        }
    }

    #[test]
    fn duplicated_state_merges() {
        // a* b (a|b)* over two copies of the "seen b" sink
        let states = ["s", "t1", "t2"].map(String::from).to_vec();
        let delta = vec![[0, 1], [2, 1], [1, 2]];
        let d = DfaSpec::new(states, 0, BTreeSet::from([1, 2]), delta).unwrap();
        assert_eq!(moore_class_count(&d), 2);
        let m = minimize_dfa(&d);
        assert_eq!(m.len(), 2);
        for w in words_up_to(6) {
            assert_eq!(m.run(&w).unwrap(), d.run(&w).unwrap());
        }
    }

    #[test]
    fn unreachable_states_are_dropped() {
        let states = ["s", "x", "dead"].map(String::from).to_vec();
        let delta = vec![[0, 0], [2, 2], [2, 2]];
        let d = DfaSpec::new(states, 0, BTreeSet::from([0, 1]), delta).unwrap();
        let m = minimize_dfa(&d);
        assert_eq!(m.len(), 1);
        assert!(m.run("abba").unwrap());
    }

    #[test]
    fn minimized_language_is_preserved() {
        let d = build_ln_dfa(4).unwrap();
        let m = minimize_dfa(&d);
        for w in words_up_to(8) {
            assert_eq!(m.run(&w).unwrap(), d.run(&w).unwrap());
        }
    }

    #[test]
    fn dfa_json_round_trip() {
        let d = build_ln_dfa(3).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["start"], "0_0");
        assert_eq!(v["accept"], serde_json::json!(["0_0"]));
        assert_eq!(v["delta"]["2_1"]["a"], "0_1");
        let back: DfaSpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);

        let bad = serde_json::json!({"states": ["p"], "start": "p", "accept": [], "delta": {"p": {"a": "p"}}});
        assert!(serde_json::from_value::<DfaSpec>(bad).is_err());
    }

    #[test]
    fn malformed_dfa() {
        assert!(DfaSpec::new(vec![], 0, BTreeSet::new(), vec![]).is_err());
        assert!(DfaSpec::new(vec!["p".into()], 0, BTreeSet::new(), vec![[0, 1]]).is_err());
        assert!(DfaSpec::new(vec!["p".into()], 1, BTreeSet::new(), vec![[0, 0]]).is_err());
    }
}
