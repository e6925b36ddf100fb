//! Deterministic automata for minimal digit strings and strict-shape-1 geodesics.
//!
//! `D_n` accepts the digit strings of minimal vectors, `D_n′` relaxes it to
//! allow trailing zeros, and `O_n` expands every state of `D_n′` into a chain
//! of `a`/`a⁻¹` states so that it reads words over the group generators.
//! Missing transitions go to an implicit fail state.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Display, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::Letter;
use crate::spectral::spectral_radius;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("symbol {0} is not in the alphabet")]
    SymbolNotInAlphabet(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("state {state:?} already has a transition on {symbol}")]
    Nondeterministic { state: String, symbol: String },
    #[error("cannot parse symbol {0:?}")]
    ParseSymbol(String),
    #[error("cannot parse transition table: {0}")]
    ParseTable(String),
}

/// A deterministic automaton over the symbol type `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton<S: Ord> {
    names: Vec<String>,
    start: usize,
    accepts: BTreeSet<usize>,
    transitions: Vec<BTreeMap<S, usize>>,
    alphabet: BTreeSet<S>,
}

pub type DigitAutomaton = Automaton<i64>;
pub type LetterAutomaton = Automaton<Letter>;

/// `f(0), …, f(N)`: accepted strings of each length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CountSequence(pub Vec<BigUint>);

impl CountSequence {
    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }

    pub fn get(&self, length: usize) -> Option<&BigUint> {
        self.0.get(length)
    }

    pub fn last(&self) -> Option<&BigUint> {
        self.0.last()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Growth data for one strongly connected component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SccGrowth {
    pub states: Vec<String>,
    /// Spectral radius of the edges internal to the component.
    pub rate: f64,
    pub reachable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSummary {
    /// Components in reverse topological order (sinks first).
    pub components: Vec<SccGrowth>,
    /// Largest component rate over components reachable from the start.
    pub rate: f64,
}

/// JSON form of an automaton: `{states, start, accepts, edges: [[src, label, dst]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionTable {
    pub states: Vec<String>,
    pub start: String,
    pub accepts: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

impl<S> Automaton<S>
where
    S: Ord + Clone + Display,
{
    /// An automaton with a single start state and no transitions.
    pub fn new(start: impl Into<String>, alphabet: impl IntoIterator<Item = S>) -> Self {
        Automaton {
            names: vec![start.into()],
            start: 0,
            accepts: BTreeSet::new(),
            transitions: vec![BTreeMap::new()],
            alphabet: alphabet.into_iter().collect(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>, accepting: bool) -> usize {
        let id = self.names.len();
        self.names.push(name.into());
        self.transitions.push(BTreeMap::new());
        if accepting {
            self.accepts.insert(id);
        }
        id
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        if accepting {
            self.accepts.insert(state);
        } else {
            self.accepts.remove(&state);
        }
    }

    pub fn add_edge(&mut self, from: usize, symbol: S, to: usize) -> Result<(), AutomatonError> {
        if !self.alphabet.contains(&symbol) {
            return Err(AutomatonError::SymbolNotInAlphabet(symbol.to_string()));
        }
        if self.transitions[from].contains_key(&symbol) {
            return Err(AutomatonError::Nondeterministic {
                state: self.names[from].clone(),
                symbol: symbol.to_string(),
            });
        }
        self.transitions[from].insert(symbol, to);
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepts.contains(&state)
    }

    pub fn accept_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepts.iter().copied()
    }

    pub fn alphabet(&self) -> &BTreeSet<S> {
        &self.alphabet
    }

    pub fn next(&self, state: usize, symbol: &S) -> Option<usize> {
        self.transitions[state].get(symbol).copied()
    }

    pub fn edges_from(&self, state: usize) -> impl Iterator<Item = (&S, usize)> + '_ {
        self.transitions[state].iter().map(|(s, &t)| (s, t))
    }

    pub fn edge_count(&self) -> usize {
        self.transitions.iter().map(BTreeMap::len).sum()
    }

    /// Runs the automaton; a missing transition rejects.
    pub fn accepts(&self, input: &[S]) -> Result<bool, AutomatonError> {
        let mut state = Some(self.start);
        for symbol in input {
            if !self.alphabet.contains(symbol) {
                return Err(AutomatonError::SymbolNotInAlphabet(symbol.to_string()));
            }
            state = state.and_then(|s| self.next(s, symbol));
        }
        Ok(state.is_some_and(|s| self.is_accepting(s)))
    }

    /// Removes states that are unreachable from the start or cannot reach an accept state.
    ///
    /// The start state is always kept.
    pub fn prune(&self) -> Self {
        let size = self.names.len();
        let mut forward = vec![false; size];
        let mut queue = VecDeque::from([self.start]);
        forward[self.start] = true;
        while let Some(s) = queue.pop_front() {
            for &t in self.transitions[s].values() {
                if !forward[t] {
                    forward[t] = true;
                    queue.push_back(t);
                }
            }
        }
        let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); size];
        for (s, edges) in self.transitions.iter().enumerate() {
            for &t in edges.values() {
                reverse[t].push(s);
            }
        }
        let mut backward = vec![false; size];
        let mut queue: VecDeque<usize> = self.accepts.iter().copied().collect();
        for &a in &self.accepts {
            backward[a] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &p in &reverse[s] {
                if !backward[p] {
                    backward[p] = true;
                    queue.push_back(p);
                }
            }
        }
        let keep: Vec<bool> = (0..size).map(|s| s == self.start || (forward[s] && backward[s])).collect();
        let mut index = vec![usize::MAX; size];
        let mut names = Vec::new();
        for s in (0..size).filter(|&s| keep[s]) {
            index[s] = names.len();
            names.push(self.names[s].clone());
        }
        let mut transitions = vec![BTreeMap::new(); names.len()];
        for s in (0..size).filter(|&s| keep[s]) {
            for (symbol, &t) in &self.transitions[s] {
                if keep[t] {
                    transitions[index[s]].insert(symbol.clone(), index[t]);
                }
            }
        }
        Automaton {
            names,
            start: index[self.start],
            accepts: self.accepts.iter().filter(|&&a| keep[a]).map(|&a| index[a]).collect(),
            transitions,
            alphabet: self.alphabet.clone(),
        }
    }

    /// `f(0..=max_len)` by a forward pass over state occupancy counts.
    pub fn count_accepted(&self, max_len: usize) -> CountSequence {
        self.count_from(self.start, max_len)
    }

    /// Accepted-path counts for runs started at `state` instead of the start state.
    pub fn count_from(&self, state: usize, max_len: usize) -> CountSequence {
        let size = self.names.len();
        let mut occupancy = vec![BigUint::zero(); size];
        occupancy[state] = BigUint::one();
        let mut counts = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len {
            counts.push(self.accepts.iter().map(|&a| &occupancy[a]).sum());
            if len == max_len {
                break;
            }
            let mut next = vec![BigUint::zero(); size];
            for (s, edges) in self.transitions.iter().enumerate() {
                if occupancy[s].is_zero() {
                    continue;
                }
                for &t in edges.values() {
                    next[t] += &occupancy[s];
                }
            }
            occupancy = next;
        }
        CountSequence(counts)
    }

    /// Strongly connected components, sinks first (Tarjan).
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        struct Tarjan<'a> {
            succ: Vec<Vec<usize>>,
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            counter: usize,
            out: &'a mut Vec<Vec<usize>>,
        }
        impl Tarjan<'_> {
            fn visit(&mut self, v: usize) {
                self.index[v] = Some(self.counter);
                self.low[v] = self.counter;
                self.counter += 1;
                self.stack.push(v);
                self.on_stack[v] = true;
                for i in 0..self.succ[v].len() {
                    let w = self.succ[v][i];
                    match self.index[w] {
                        None => {
                            self.visit(w);
                            self.low[v] = self.low[v].min(self.low[w]);
                        }
                        Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                        Some(_) => {}
                    }
                }
                if Some(self.low[v]) == self.index[v] {
                    let mut component = Vec::new();
                    while let Some(w) = self.stack.pop() {
                        self.on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    component.sort_unstable();
                    self.out.push(component);
                }
            }
        }
        let size = self.names.len();
        let mut out = Vec::new();
        let mut t = Tarjan {
            succ: self.transitions.iter().map(|e| e.values().copied().collect()).collect(),
            index: vec![None; size],
            low: vec![0; size],
            on_stack: vec![false; size],
            stack: Vec::new(),
            counter: 0,
            out: &mut out,
        };
        for v in 0..size {
            if t.index[v].is_none() {
                t.visit(v);
            }
        }
        out
    }

    /// Per-component growth and the overall exponential growth rate of accepted paths.
    pub fn scc_growth(&self) -> GrowthSummary {
        let size = self.names.len();
        let mut reachable = vec![false; size];
        let mut queue = VecDeque::from([self.start]);
        reachable[self.start] = true;
        while let Some(s) = queue.pop_front() {
            for &t in self.transitions[s].values() {
                if !reachable[t] {
                    reachable[t] = true;
                    queue.push_back(t);
                }
            }
        }
        let mut components = Vec::new();
        let mut rate: f64 = 0.0;
        for component in self.sccs() {
            let position: BTreeMap<usize, usize> = component.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let mut matrix = vec![vec![0.0; component.len()]; component.len()];
            for (i, &s) in component.iter().enumerate() {
                for t in self.transitions[s].values() {
                    if let Some(&j) = position.get(t) {
                        matrix[i][j] += 1.0;
                    }
                }
            }
            let component_rate = spectral_radius(&matrix);
            let live = reachable[component[0]];
            if live {
                rate = rate.max(component_rate);
            }
            log::debug!("scc {:?}: rate {component_rate}", component);
            components.push(SccGrowth {
                states: component.iter().map(|&s| self.names[s].clone()).collect(),
                rate: component_rate,
                reachable: live,
            });
        }
        GrowthSummary { components, rate }
    }

    /// Graphviz export. Nodes are emitted in state order, parallel edges share one arrow.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", quote(graph_name));
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  __start [shape=point];");
        for (s, name) in self.names.iter().enumerate() {
            let shape = if self.is_accepting(s) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {} [shape={shape}];", quote(name));
        }
        let _ = writeln!(out, "  __start -> {};", quote(&self.names[self.start]));
        for (s, edges) in self.transitions.iter().enumerate() {
            let mut grouped: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for (symbol, &t) in edges {
                grouped.entry(t).or_default().push(symbol.to_string());
            }
            for (t, labels) in grouped {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(&self.names[s]),
                    quote(&self.names[t]),
                    quote(&labels.join(", "))
                );
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_table(&self) -> TransitionTable {
        let mut edges = Vec::new();
        for (s, map) in self.transitions.iter().enumerate() {
            for (symbol, &t) in map {
                edges.push((self.names[s].clone(), symbol.to_string(), self.names[t].clone()));
            }
        }
        TransitionTable {
            states: self.names.clone(),
            start: self.names[self.start].clone(),
            accepts: self.accepts.iter().map(|&a| self.names[a].clone()).collect(),
            edges,
        }
    }
}

impl<S> Automaton<S>
where
    S: Ord + Clone + Display + FromStr,
{
    /// Rebuilds an automaton from its table. The alphabet is taken from `alphabet`.
    pub fn from_table(table: &TransitionTable, alphabet: impl IntoIterator<Item = S>) -> Result<Self, AutomatonError> {
        let lookup = |name: &str| {
            table
                .states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| AutomatonError::UnknownState(name.to_string()))
        };
        let start = lookup(&table.start)?;
        let mut automaton = Automaton {
            names: table.states.clone(),
            start,
            accepts: BTreeSet::new(),
            transitions: vec![BTreeMap::new(); table.states.len()],
            alphabet: alphabet.into_iter().collect(),
        };
        for name in &table.accepts {
            automaton.accepts.insert(lookup(name)?);
        }
        for (src, label, dst) in &table.edges {
            let symbol = label
                .parse::<S>()
                .map_err(|_| AutomatonError::ParseSymbol(label.clone()))?;
            automaton.add_edge(lookup(src)?, symbol, lookup(dst)?)?;
        }
        Ok(automaton)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Digit symbols `−⌊n/2⌋ ..= ⌊n/2⌋`.
pub fn digit_alphabet(n: u32) -> Vec<i64> {
    let alpha = i64::from(n / 2);
    (-alpha..=alpha).collect()
}

/// The automaton `D_n` of minimal digit strings.
pub fn build_dn(n: u32) -> DigitAutomaton {
    assert!(n >= 2, "n must be at least 2");
    let digits = digit_alphabet(n);
    let mut a = Automaton::new("s0", digits.clone());
    a.set_accepting(0, true);
    if n % 2 == 1 {
        let s1 = a.add_state("s1", false);
        for &d in &digits {
            let (from0, from1) = if d == 0 { (s1, s1) } else { (0, 0) };
            a.add_edge(0, d, from0).expect("fresh edge");
            a.add_edge(s1, d, from1).expect("fresh edge");
        }
        return a;
    }
    let h = i64::from(n / 2);
    let s1 = a.add_state("s1", true);
    let s2 = a.add_state("s2", true);
    let s3 = a.add_state("s3", false);
    for &d in &digits {
        let small = d != 0 && d.abs() < h;
        let target = match d {
            0 => s3,
            d if d == h => s1,
            d if d == -h => s2,
            _ => 0,
        };
        a.add_edge(0, d, target).expect("fresh edge");
        a.add_edge(s3, d, target).expect("fresh edge");
        if d == 0 || (small && d > 0) {
            a.add_edge(s1, d, target).expect("fresh edge");
        }
        if d == 0 || (small && d < 0) {
            a.add_edge(s2, d, target).expect("fresh edge");
        }
    }
    a
}

/// The automaton `D_n′`: minimal digit strings that may end in zeros.
pub fn build_dn_prime(n: u32) -> DigitAutomaton {
    assert!(n >= 2, "n must be at least 2");
    let digits = digit_alphabet(n);
    let mut a = Automaton::new("s0", digits.clone());
    a.set_accepting(0, true);
    if n % 2 == 1 {
        for &d in &digits {
            a.add_edge(0, d, 0).expect("fresh edge");
        }
        return a;
    }
    let h = i64::from(n / 2);
    let s1 = a.add_state("s1", true);
    let s2 = a.add_state("s2", true);
    for &d in &digits {
        let target = match d {
            d if d == h => s1,
            d if d == -h => s2,
            _ => 0,
        };
        a.add_edge(0, d, target).expect("fresh edge");
        if (0..h).contains(&d) {
            a.add_edge(s1, d, 0).expect("fresh edge");
        }
        if (-h + 1..=0).contains(&d) {
            a.add_edge(s2, d, 0).expect("fresh edge");
        }
    }
    a
}

/// The letter automaton `O_n` accepting geodesics of strict shape 1.
///
/// Each state `s_i` of `D_n′` becomes states `s_{i,j}` for `|j| ≤ ⌊n/2⌋`,
/// where `j` is the exponent of the `a`-block read so far; `t` closes the
/// block and follows the digit-`j` edge of `D_n′`. A leading block of `t⁻¹`
/// runs through `s_{t⁻¹}`, which has no `t` edge.
pub fn expand_to_on(n: u32) -> LetterAutomaton {
    let dp = build_dn_prime(n);
    let alpha = i64::from(n / 2);
    let mut a = Automaton::new("start", Letter::ALL);
    let s_tinv = a.add_state("s_t^-1", false);
    let mut id = BTreeMap::new();
    for i in 0..dp.state_count() {
        for j in -alpha..=alpha {
            let name = format!("s{},{}", i, j);
            id.insert((i, j), a.add_state(name, j == 0));
        }
    }
    for i in 0..dp.state_count() {
        for j in -alpha..=alpha {
            let here = id[&(i, j)];
            if (0..alpha).contains(&j) {
                a.add_edge(here, Letter::A, id[&(i, j + 1)]).expect("fresh edge");
            }
            if (-alpha + 1..=0).contains(&j) {
                a.add_edge(here, Letter::AInv, id[&(i, j - 1)]).expect("fresh edge");
            }
            if let Some(target) = dp.next(i, &j) {
                a.add_edge(here, Letter::T, id[&(target, 0)]).expect("fresh edge");
            }
        }
    }
    let origin = id[&(0, 0)];
    let mirrored: Vec<(Letter, usize)> = a.edges_from(origin).map(|(&l, t)| (l, t)).collect();
    for (letter, target) in mirrored {
        a.add_edge(0, letter, target).expect("fresh edge");
    }
    a.add_edge(0, Letter::TInv, s_tinv).expect("fresh edge");
    a.add_edge(s_tinv, Letter::TInv, s_tinv).expect("fresh edge");
    a.add_edge(s_tinv, Letter::A, id[&(0, 1)]).expect("fresh edge");
    a.add_edge(s_tinv, Letter::AInv, id[&(0, -1)]).expect("fresh edge");
    a.prune()
}

impl<S: Ord + Clone + Display> Display for Automaton<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, edges) in self.transitions.iter().enumerate() {
            let marker = match (s == self.start, self.is_accepting(s)) {
                (true, true) => "->*",
                (true, false) => "-> ",
                (false, true) => "  *",
                (false, false) => "   ",
            };
            write!(f, "{marker} {}:", self.names[s])?;
            for (symbol, &t) in edges {
                write!(f, " {symbol}→{}", self.names[t])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Word;

    fn word(s: &str) -> Vec<Letter> {
        s.parse::<Word>().unwrap().letters().to_vec()
    }

    #[test]
    fn dn_examples() {
        let d2 = build_dn(2);
        assert!(d2.accepts(&[1, 0, 1]).unwrap());
        assert!(!d2.accepts(&[1, 1]).unwrap());
        assert_eq!(d2.state_count(), 4);
        let d3 = build_dn(3);
        assert_eq!(d3.state_count(), 2);
        assert!(!d3.accepts(&[1, -1, 1, 0]).unwrap());
        assert!(d3.accepts(&[1, -1, 1]).unwrap());
        assert!(matches!(d3.accepts(&[2]), Err(AutomatonError::SymbolNotInAlphabet(_))));
    }

    #[test]
    fn dn_prime_examples() {
        assert!(build_dn_prime(4).accepts(&[]).unwrap());
        assert!(!build_dn_prime(4).accepts(&[2, 2]).unwrap());
        assert!(build_dn_prime(4).accepts(&[2, 1, 0, 0]).unwrap());
        assert_eq!(build_dn_prime(3).state_count(), 1);
        assert_eq!(build_dn_prime(6).state_count(), 3);
    }

    #[test]
    fn o2_matches_the_figure() {
        let o2 = expand_to_on(2);
        let names: BTreeSet<&str> = o2.names().iter().map(String::as_str).collect();
        let expected: BTreeSet<&str> = ["start", "s_t^-1", "s0,0", "s0,1", "s0,-1", "s1,0", "s2,0"].into();
        assert_eq!(names, expected);
        let accepting: BTreeSet<&str> = o2.accept_states().map(|s| o2.name(s)).collect();
        assert_eq!(accepting, ["s0,0", "s1,0", "s2,0"].into());
        assert!(o2.accepts(&word("a t")).unwrap());
        assert!(!o2.accepts(&word("a")).unwrap());
        assert!(!o2.accepts(&word("t^-1 t")).unwrap());
        assert!(o2.accepts(&word("t^-1 a t")).unwrap());
    }

    #[test]
    fn counts() {
        let o2 = expand_to_on(2).count_accepted(2);
        assert_eq!(o2.counts(), &[0u32.into(), 1u32.into(), 3u32.into()]);
        let d3 = build_dn(3).count_accepted(5);
        for len in 1..=5u32 {
            assert_eq!(d3.get(len as usize).unwrap(), &(BigUint::from(2u32) * BigUint::from(3u32).pow(len - 1)));
        }
        assert_eq!(d3.get(3).unwrap(), &BigUint::from(18u32));
    }

    #[test]
    fn counts_match_enumeration() {
        let d4 = build_dn(4);
        let counts = d4.count_accepted(4);
        let digits = digit_alphabet(4);
        let mut strings: Vec<Vec<i64>> = vec![vec![]];
        for len in 0..=4 {
            let accepted = strings.iter().filter(|s| d4.accepts(s).unwrap()).count();
            assert_eq!(counts.get(len).unwrap(), &BigUint::from(accepted));
            strings = strings
                .iter()
                .flat_map(|s| digits.iter().map(move |&d| [s.as_slice(), &[d]].concat()))
                .collect();
        }
    }

    #[test]
    fn scc_rates() {
        let mut loop1 = Automaton::new("s", [0i64]);
        loop1.set_accepting(0, true);
        loop1.add_edge(0, 0, 0).unwrap();
        assert!((loop1.scc_growth().rate - 1.0).abs() < 1e-12);

        let mut limit = Automaton::new("p", [0i64, 1, 2]);
        let q = limit.add_state("q", true);
        let r = limit.add_state("r", true);
        limit.set_accepting(0, true);
        limit.add_edge(0, 0, 0).unwrap();
        limit.add_edge(0, 1, q).unwrap();
        limit.add_edge(0, 2, r).unwrap();
        limit.add_edge(q, 0, 0).unwrap();
        limit.add_edge(q, 1, q).unwrap();
        limit.add_edge(r, 0, 0).unwrap();
        limit.add_edge(r, 2, r).unwrap();
        assert!((limit.scc_growth().rate - (2f64.sqrt() + 1.0)).abs() < 1e-6);

        assert!((expand_to_on(2).scc_growth().rate - 1.69562076955986).abs() < 1e-6);
    }

    #[test]
    fn dot_and_table() {
        let d2 = build_dn(2);
        let dot = d2.to_dot("D2");
        assert_eq!(dot.matches("shape=doublecircle").count() + dot.matches("shape=circle").count(), 4);
        assert_eq!(dot, build_dn(2).to_dot("D2"));
        let o2 = expand_to_on(2);
        let table = o2.to_table();
        let back = LetterAutomaton::from_table(&table, Letter::ALL).unwrap();
        assert_eq!(back, o2);
        let json = serde_json::to_string(&table).unwrap();
        assert!(json.contains("\"edges\":[[\"start\",\"a\""));
        let dt = DigitAutomaton::from_table(&d2.to_table(), digit_alphabet(2)).unwrap();
        assert_eq!(dt, d2);
    }
}
