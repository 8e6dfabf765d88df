//! Language-level tooling built on the engines: exhaustive enumeration up
//! to a length bound, bounded emptiness search, Parikh-image sampling,
//! bounded equivalence checking, and diagram export.
//!
//! All searches walk the words in length-lexicographic order using the
//! alphabet's declaration order, so their results are deterministic. The
//! searches are exhaustive and therefore budgeted: the unit is one
//! membership test, and a search whose word count exceeds the budget fails
//! up front rather than running away. Membership uses the indexed engine
//! for deterministic kinds and the breadth-first reference engine
//! otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::fast::run_fast;
use crate::model::{Automaton, EndAction, Letter, StateId, ValidationReport, Word};
use crate::naive::accepts_naive;

/// Default cap on the number of membership tests per search.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error("the search needs {required} membership tests but the budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("the automata have different alphabets: {{{left}}} vs {{{right}}}")]
    AlphabetMismatch { left: String, right: String },
    #[error("the automaton fails validation: {0}")]
    InvalidAutomaton(ValidationReport),
}

/// Letter multiplicities of a word, with an explicit zero for every
/// alphabet letter, so vectors over the same alphabet always have the same
/// keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ParikhVector {
    counts: BTreeMap<Letter, u64>,
}

impl ParikhVector {
    pub fn of_word(word: &Word, alphabet: &[Letter]) -> Self {
        let mut counts: BTreeMap<Letter, u64> = alphabet.iter().map(|&l| (l, 0)).collect();
        for &l in word.letters() {
            *counts.entry(l).or_insert(0) += 1;
        }
        ParikhVector { counts }
    }

    pub fn count(&self, l: Letter) -> u64 {
        self.counts.get(&l).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<Letter, u64> {
        &self.counts
    }

    /// The length of any word with this vector.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// The accepted words of length at most `max_len`, in the search order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EnumerationResult {
    pub max_len: usize,
    pub accepted: Vec<Word>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EmptinessOutcome {
    /// The shortest accepted word (first in length-lexicographic order).
    Witness(Word),
    /// No word up to the bound is accepted.
    NoWitnessUpTo(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Equivalence {
    Equal,
    /// The first word (in length-lexicographic order) on which the two
    /// memberships differ.
    Counterexample(Word),
}

fn ensure_valid(aut: &Automaton) -> Result<(), AnalysisError> {
    let report = aut.validate();
    if report.is_empty() {
        Ok(())
    } else {
        Err(AnalysisError::InvalidAutomaton(report))
    }
}

/// Number of words over a `sigma`-letter alphabet with length `<= max_len`,
/// saturating at `u64::MAX`.
fn words_up_to_count(sigma: usize, max_len: usize) -> u64 {
    let mut total: u64 = 0;
    let mut layer: u64 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(sigma as u64);
    }
    total
}

fn ensure_budget(required: u64, budget: Option<u64>) -> Result<(), AnalysisError> {
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    if required > budget {
        Err(AnalysisError::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}

/// Calls `f` on every word of length `<= max_len` in length-lexicographic
/// order (alphabet declaration order); stops early when `f` returns false.
fn visit_words(alphabet: &[Letter], max_len: usize, mut f: impl FnMut(Word) -> bool) {
    if !f(Word::empty()) {
        return;
    }
    if alphabet.is_empty() {
        return;
    }
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            let word = Word::new(digits.iter().map(|&i| alphabet[i]).collect());
            if !f(word) {
                return;
            }
            if !bump(&mut digits, alphabet.len()) {
                break;
            }
        }
    }
}

/// Advances a right-fastest odometer; false when it wraps around.
fn bump(digits: &mut [usize], base: usize) -> bool {
    for slot in digits.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

fn membership(aut: &Automaton) -> impl Fn(&Word) -> bool + '_ {
    let fast = aut.kind().is_deterministic();
    move |w| {
        if fast {
            run_fast(aut, w, false)
                .expect("validated deterministic machines run on the indexed engine")
                .verdict
                .is_accept()
        } else {
            accepts_naive(aut, w).is_accept()
        }
    }
}

/// Collects every accepted word of length at most `max_len`.
pub fn enumerate_accepted(
    aut: &Automaton,
    max_len: usize,
    budget: Option<u64>,
) -> Result<EnumerationResult, AnalysisError> {
    ensure_valid(aut)?;
    ensure_budget(words_up_to_count(aut.alphabet().len(), max_len), budget)?;
    let accepts = membership(aut);
    let mut accepted = Vec::new();
    visit_words(aut.alphabet(), max_len, |w| {
        if accepts(&w) {
            accepted.push(w);
        }
        true
    });
    Ok(EnumerationResult { max_len, accepted })
}

/// Searches for the shortest accepted word up to `max_len`.
pub fn bounded_emptiness(
    aut: &Automaton,
    max_len: usize,
    budget: Option<u64>,
) -> Result<EmptinessOutcome, AnalysisError> {
    ensure_valid(aut)?;
    ensure_budget(words_up_to_count(aut.alphabet().len(), max_len), budget)?;
    let accepts = membership(aut);
    let mut witness = None;
    visit_words(aut.alphabet(), max_len, |w| {
        if accepts(&w) {
            witness = Some(w);
            false
        } else {
            true
        }
    });
    Ok(match witness {
        Some(w) => EmptinessOutcome::Witness(w),
        None => EmptinessOutcome::NoWitnessUpTo(max_len),
    })
}

/// The letter-count vectors of all accepted words of length at most
/// `max_len`.
pub fn parikh_sample(
    aut: &Automaton,
    max_len: usize,
    budget: Option<u64>,
) -> Result<BTreeSet<ParikhVector>, AnalysisError> {
    ensure_valid(aut)?;
    ensure_budget(words_up_to_count(aut.alphabet().len(), max_len), budget)?;
    let accepts = membership(aut);
    let mut sample = BTreeSet::new();
    visit_words(aut.alphabet(), max_len, |w| {
        if accepts(&w) {
            sample.insert(ParikhVector::of_word(&w, aut.alphabet()));
        }
        true
    });
    Ok(sample)
}

/// Compares the languages of two automata over the same alphabet on every
/// word up to `max_len`.
pub fn equivalent_up_to(
    a1: &Automaton,
    a2: &Automaton,
    max_len: usize,
    budget: Option<u64>,
) -> Result<Equivalence, AnalysisError> {
    ensure_valid(a1)?;
    ensure_valid(a2)?;
    let s1: BTreeSet<Letter> = a1.alphabet().iter().copied().collect();
    let s2: BTreeSet<Letter> = a2.alphabet().iter().copied().collect();
    if s1 != s2 {
        let show = |s: &BTreeSet<Letter>| {
            s.iter()
                .map(Letter::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        return Err(AnalysisError::AlphabetMismatch {
            left: show(&s1),
            right: show(&s2),
        });
    }
    let tests = words_up_to_count(a1.alphabet().len(), max_len).saturating_mul(2);
    ensure_budget(tests, budget)?;
    let m1 = membership(a1);
    let m2 = membership(a2);
    let mut counterexample = None;
    visit_words(a1.alphabet(), max_len, |w| {
        if m1(&w) != m2(&w) {
            counterexample = Some(w);
            false
        } else {
            true
        }
    });
    Ok(match counterexample {
        Some(w) => Equivalence::Counterexample(w),
        None => Equivalence::Equal,
    })
}

fn quote(name: &str) -> String {
    let escaped = name.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"")
}

/// Edge label for a move out of `q` on `symbol`: the bare symbol when `q`
/// sees everything, otherwise prefixed by the letters the head skips, e.g.
/// `(a*, b)` or `({a,c}*, b)`.
fn skip_label(aut: &Automaton, q: &StateId, symbol: &str) -> String {
    let tau = aut.translucent(q);
    if tau.is_empty() {
        return symbol.to_string();
    }
    let shown: Vec<String> = aut
        .alphabet()
        .iter()
        .filter(|l| tau.contains(*l))
        .map(Letter::to_string)
        .collect();
    if shown.len() == 1 {
        format!("({}*, {symbol})", shown[0])
    } else {
        format!("({{{}}}*, {symbol})", shown.join(","))
    }
}

/// Renders the automaton as a directed graph in dot syntax, with a point
/// pseudo-node marking the initial states and an `Accept` pseudo-node as
/// the target of accepting end-marker moves. Output is deterministic:
/// states in declaration order, letters in alphabet order.
pub fn to_diagram(aut: &Automaton) -> Result<String, AnalysisError> {
    ensure_valid(aut)?;
    let mut out = String::new();
    out.push_str("digraph automaton {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  __initial [shape=point];\n");
    out.push_str("  __accept [shape=doublecircle, label=\"Accept\"];\n");
    for q in aut.states() {
        let _ = writeln!(out, "  {} [shape=circle];", quote(q.as_str()));
    }
    for q in aut.initial() {
        let _ = writeln!(out, "  __initial -> {};", quote(q.as_str()));
    }
    for q in aut.states() {
        for &l in aut.alphabet() {
            for t in aut.delta(q, l) {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(q.as_str()),
                    quote(t.as_str()),
                    quote(&skip_label(aut, q, &l.to_string()))
                );
            }
        }
        if aut.kind().is_returning() {
            if aut.is_final(q) {
                let _ = writeln!(
                    out,
                    "  {} -> __accept [label={}];",
                    quote(q.as_str()),
                    quote(&skip_label(aut, q, "◁"))
                );
            }
        } else {
            match aut.end_action(q) {
                EndAction::Accept => {
                    let _ = writeln!(
                        out,
                        "  {} -> __accept [label={}];",
                        quote(q.as_str()),
                        quote(&skip_label(aut, q, "◁"))
                    );
                }
                EndAction::GoTo(ts) => {
                    for t in ts {
                        let _ = writeln!(
                            out,
                            "  {} -> {} [label={}];",
                            quote(q.as_str()),
                            quote(t.as_str()),
                            quote(&skip_label(aut, q, "◁"))
                        );
                    }
                }
                EndAction::Reject => {}
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
