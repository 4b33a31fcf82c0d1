//! Adaptive automata of order n.
//!
//! For a string `w` and an order `n` the automaton has one state per
//! successor symbol and per n-gram of `w`, plus an absorbing sink `⋆`. Its
//! labels are `(frequency, codeword)` pairs: one per `(context, successor)`
//! pair of `w`, and for `n ≥ 2` one `(count, λ)` label per n-gram count.
//!
//! From an n-gram state, a codeword label leads to the successors coded by
//! that codeword with that frequency. For `n ≥ 2`, from a symbol state, a λ
//! label leads to the n-grams ending in that symbol with that count. Every
//! other (state, label) pair goes to `⋆`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use crate::bitstring::BitString;
use crate::codec::ContextModel;
use crate::error::{Error, Result};

/// A `(frequency, codeword)` label. Ordered by frequency, then codeword.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitionLabel {
    pub frequency: u64,
    pub codeword: BitString,
}

impl TransitionLabel {
    pub fn new(frequency: u64, codeword: BitString) -> Self {
        TransitionLabel { frequency, codeword }
    }

    pub fn is_lambda(&self) -> bool {
        self.codeword.is_empty()
    }
}

impl fmt::Display for TransitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.frequency, self.codeword)
    }
}

/// A state: a word of `w` (single symbol or n-gram, as raw symbols) or the sink.
/// Words sort lexicographically and the sink sorts last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum State {
    Word(Vec<u8>),
    Sink,
}

impl State {
    pub fn word(symbols: &[u8]) -> Self {
        State::Word(symbols.to_vec())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Sink => f.write_str("star"),
            State::Word(symbols) => {
                for &b in symbols {
                    if b.is_ascii_graphic() {
                        f.write_char(b as char)?;
                    } else {
                        write!(f, "\\x{b:02x}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveAutomaton {
    order: usize,
    states: BTreeSet<State>,
    labels: BTreeSet<TransitionLabel>,
    /// Non-sink images only; any pair missing here maps to `{⋆}`.
    edges: BTreeMap<State, BTreeMap<TransitionLabel, BTreeSet<State>>>,
    start: State,
    finals: BTreeSet<State>,
}

impl AdaptiveAutomaton {
    /// Builds the automaton of `w` from a context model of the same string.
    pub fn build(w: &[u8], order: usize, model: &ContextModel) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if w.len() <= order {
            return Err(Error::StringTooShort { len: w.len(), order });
        }
        let alphabet = model.alphabet();
        let idx = alphabet.indices(w)?;
        let h = w.len();

        let mut states = BTreeSet::new();
        states.insert(State::Sink);
        states.extend(w[order..].iter().map(|&s| State::word(&[s])));
        states.extend(w.windows(order).take(h - order).map(State::word));
        let final_state = State::word(&w[h - order..]);
        states.insert(final_state.clone());

        let mut labels = BTreeSet::new();
        let mut edges: BTreeMap<State, BTreeMap<TransitionLabel, BTreeSet<State>>> = BTreeMap::new();
        for (k, window) in idx.windows(order + 1).enumerate() {
            let (ctx, succ) = window.split_at(order);
            let s = model
                .successor(ctx, succ[0])
                .ok_or_else(|| Error::MissingCode { context: ctx.to_vec(), successor: succ[0] })?;
            let label = TransitionLabel::new(s.frequency, s.codeword.clone());
            labels.insert(label.clone());
            edges
                .entry(State::word(&w[k..k + order]))
                .or_default()
                .entry(label)
                .or_default()
                .insert(State::word(&w[k + order..k + order + 1]));
        }

        if order >= 2 {
            for (gram, &count) in model.ngram_stats() {
                let label = TransitionLabel::new(count, BitString::new());
                labels.insert(label.clone());
                let last = alphabet.symbol(*gram.last().unwrap() as usize).unwrap();
                let source = State::word(&[last]);
                if !states.contains(&source) {
                    continue;
                }
                let target: Vec<u8> =
                    gram.iter().map(|&i| alphabet.symbol(i as usize).unwrap()).collect();
                edges
                    .entry(source)
                    .or_default()
                    .entry(label)
                    .or_default()
                    .insert(State::Word(target));
            }
        }

        Ok(AdaptiveAutomaton {
            order,
            states,
            labels,
            edges,
            start: State::word(&w[..order]),
            finals: BTreeSet::from([final_state]),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn states(&self) -> &BTreeSet<State> {
        &self.states
    }

    pub fn labels(&self) -> &BTreeSet<TransitionLabel> {
        &self.labels
    }

    pub fn start(&self) -> &State {
        &self.start
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    /// The transition function; never empty.
    pub fn delta(&self, state: &State, label: &TransitionLabel) -> BTreeSet<State> {
        self.edges
            .get(state)
            .and_then(|by_label| by_label.get(label))
            .cloned()
            .unwrap_or_else(|| BTreeSet::from([State::Sink]))
    }

    /// Every transition whose image is not `{⋆}`, as `(source, label, target)`.
    pub fn edges(&self) -> impl Iterator<Item = (&State, &TransitionLabel, &State)> {
        self.edges.iter().flat_map(|(s, by_label)| {
            by_label.iter().flat_map(move |(t, targets)| targets.iter().map(move |d| (s, t, d)))
        })
    }

    pub fn step(&self, current: &BTreeSet<State>, label: &TransitionLabel) -> Result<BTreeSet<State>> {
        if !self.labels.contains(label) {
            return Err(Error::UnknownLabel {
                frequency: label.frequency,
                codeword: label.codeword.to_string(),
            });
        }
        Ok(current.iter().flat_map(|s| self.delta(s, label)).collect())
    }

    /// Runs the codeword labels of a trace from the start state. For `n ≥ 2`
    /// each codeword move is followed by a move on any one λ label. Accepts
    /// when some run ends in a final state; such a run never touched `⋆`.
    pub fn accepts_trace(&self, trace: &[TransitionLabel]) -> bool {
        let lambdas: Vec<&TransitionLabel> = self.labels.iter().filter(|t| t.is_lambda()).collect();
        let mut current = BTreeSet::from([self.start.clone()]);
        for label in trace {
            current = match self.step(&current, label) {
                Ok(next) => next,
                Err(_) => return false,
            };
            if self.order >= 2 && !label.is_lambda() {
                current = lambdas
                    .iter()
                    .flat_map(|t| current.iter().flat_map(move |s| self.delta(s, t)))
                    .collect();
            }
            if current.iter().all(|s| *s == State::Sink) {
                return false;
            }
        }
        current.iter().any(|s| self.finals.contains(s))
    }

    /// Graphviz rendering. Nodes are numbered in state order with the sink
    /// last as `star`; parallel transitions share one edge listing all labels.
    pub fn to_dot(&self) -> String {
        let ids: BTreeMap<&State, String> = self
            .states
            .iter()
            .enumerate()
            .map(|(k, s)| (s, if *s == State::Sink { "star".to_string() } else { format!("s{k}") }))
            .collect();

        let mut out = String::new();
        writeln!(out, "digraph adaptive_automaton_order_{} {{", self.order).unwrap();
        writeln!(out, "    rankdir=LR;").unwrap();
        writeln!(out, "    node [shape=circle];").unwrap();
        for state in &self.states {
            let mut attrs = vec![format!("label=\"{}\"", escape(&state.to_string()))];
            if self.finals.contains(state) {
                attrs.push("shape=doublecircle".into());
            }
            if *state == self.start {
                attrs.push("xlabel=\"start\"".into());
                attrs.push("penwidth=2".into());
            }
            writeln!(out, "    {} [{}];", ids[state], attrs.join(", ")).unwrap();
        }
        for source in &self.states {
            let mut by_target: BTreeMap<State, Vec<&TransitionLabel>> = BTreeMap::new();
            for label in &self.labels {
                for target in self.delta(source, label) {
                    by_target.entry(target).or_default().push(label);
                }
            }
            for (target, labels) in by_target {
                let text: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
                writeln!(
                    out,
                    "    {} -> {} [label=\"{}\"];",
                    ids[source],
                    ids[&target],
                    escape(&text.join(","))
                )
                .unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
