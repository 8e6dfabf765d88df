//! Transformations that convert between the automaton kinds or combine
//! machines while preserving (or combining) their languages: an embedding of
//! returning machines into non-returning ones, two normal-form rewrites and
//! their composition, union, shuffle over disjoint alphabets, complement for
//! deterministic machines, and a conversion of unary-alphabet machines into
//! classical NFAs.
//!
//! Every function expects a well-formed input (an empty
//! [`Automaton::validate`] report) and produces output that is well formed
//! again; inputs are never mutated.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::model::{Automaton, EndAction, Kind, Letter, ModelError, StateId, Word};

#[derive(Debug, thiserror::Error)]
pub enum ConstructionError {
    #[error("expected a {expected} automaton, got {got}")]
    WrongKind { expected: &'static str, got: Kind },
    #[error("the automata have different alphabets: {{{left}}} vs {{{right}}}")]
    AlphabetMismatch { left: String, right: String },
    #[error("the alphabets share the letter {0:?} but must be disjoint")]
    OverlappingAlphabets(char),
    #[error("expected a single-letter alphabet, got {0} letters")]
    NonUnaryAlphabet(usize),
    #[error("complement needs a deterministic automaton, got kind {0}")]
    Nondeterministic(Kind),
}

fn require_returning(a: &Automaton) -> Result<(), ConstructionError> {
    if a.kind().is_returning() {
        Ok(())
    } else {
        Err(ConstructionError::WrongKind {
            expected: "returning (NFAwtl or DFAwtl)",
            got: a.kind(),
        })
    }
}

fn require_nonreturning(a: &Automaton) -> Result<(), ConstructionError> {
    if a.kind().is_returning() {
        Err(ConstructionError::WrongKind {
            expected: "non-returning (nrNFAwtl or nrDFAwtl)",
            got: a.kind(),
        })
    } else {
        Ok(())
    }
}

/// Picks a name not yet in `taken` by appending primes to `base`, and
/// reserves it.
fn fresh_state(base: &str, taken: &mut HashSet<String>) -> StateId {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    StateId::new(name).expect("derived state names are valid tokens")
}

fn taken_names(a: &Automaton) -> HashSet<String> {
    a.states().iter().map(|q| q.as_str().to_string()).collect()
}

fn rename_states(a: &Automaton, suffix: &str) -> HashMap<StateId, StateId> {
    a.states()
        .iter()
        .map(|q| {
            let renamed =
                StateId::new(format!("{q}{suffix}")).expect("suffixed state names are valid");
            (q.clone(), renamed)
        })
        .collect()
}

fn rename_action(action: &EndAction, map: &HashMap<StateId, StateId>) -> EndAction {
    match action {
        EndAction::GoTo(ts) => EndAction::GoTo(ts.iter().map(|t| map[t].clone()).collect()),
        other => other.clone(),
    }
}

/// Converts a returning automaton into a non-returning one with the same
/// language. Each original state keeps its transitions, but every target is
/// replaced by a primed shadow state that is blind to the whole alphabet:
/// its head can only drift to the end marker and jump back to the left end,
/// landing in the original target. That round trip reproduces the returning
/// head reset, so runs correspond one to one. An original state accepts at
/// the marker exactly when it was final. Determinism is preserved.
pub fn embed_nfawtl(a: &Automaton) -> Result<Automaton, ConstructionError> {
    require_returning(a)?;
    let kind = if a.kind().is_deterministic() {
        Kind::NrDfawtl
    } else {
        Kind::NrNfawtl
    };
    let mut taken = taken_names(a);
    let shadow: HashMap<StateId, StateId> = a
        .states()
        .iter()
        .map(|q| (q.clone(), fresh_state(&format!("{q}'"), &mut taken)))
        .collect();
    let mut states = a.states().to_vec();
    states.extend(a.states().iter().map(|q| shadow[q].clone()));
    let mut translucent = Vec::new();
    let mut delta = Vec::new();
    let mut end_delta = Vec::new();
    for q in a.states() {
        translucent.push((q.clone(), a.translucent(q).iter().copied().collect()));
        for &l in a.alphabet() {
            let targets = a.delta(q, l);
            if !targets.is_empty() {
                let routed = targets.iter().map(|p| shadow[p].clone()).collect();
                delta.push(((q.clone(), l), routed));
            }
        }
        let action = if a.is_final(q) {
            EndAction::Accept
        } else {
            EndAction::Reject
        };
        end_delta.push((q.clone(), action));
        translucent.push((shadow[q].clone(), a.alphabet().to_vec()));
        end_delta.push((shadow[q].clone(), EndAction::GoTo(vec![q.clone()])));
    }
    Ok(Automaton::new(
        kind,
        states,
        a.alphabet().to_vec(),
        a.initial().to_vec(),
        vec![],
        translucent,
        delta,
        end_delta,
    )
    .expect("embedding output is well formed"))
}

/// Rewrites a non-returning automaton so that no run can go on forever.
/// States become pairs of an original state and the set of states that have
/// taken an end-marker jump since the last deletion; a jump from a state
/// already in that set is cut off (such a run would only repeat itself), so
/// chains of jumps without a deletion are bounded by the state count. Only
/// pairs reachable from the initial states are materialized. The language
/// is unchanged and determinism is preserved.
pub fn eliminate_end_loops(a: &Automaton) -> Result<Automaton, ConstructionError> {
    require_nonreturning(a)?;
    type Pair = (usize, BTreeSet<usize>);
    let index = |q: &StateId| a.state_index(q).expect("declared state");

    let mut order: Vec<Pair> = Vec::new();
    let mut seen: HashSet<Pair> = HashSet::new();
    for q0 in a.initial() {
        let p = (index(q0), BTreeSet::new());
        if seen.insert(p.clone()) {
            order.push(p);
        }
    }
    let mut cursor = 0;
    while cursor < order.len() {
        let (qi, s) = order[cursor].clone();
        cursor += 1;
        let q = &a.states()[qi];
        for &l in a.alphabet() {
            for t in a.delta(q, l) {
                let p = (index(t), BTreeSet::new());
                if seen.insert(p.clone()) {
                    order.push(p);
                }
            }
        }
        if let EndAction::GoTo(ts) = a.end_action(q) {
            if !s.contains(&qi) {
                let mut grown = s.clone();
                grown.insert(qi);
                for t in ts {
                    let p = (index(t), grown.clone());
                    if seen.insert(p.clone()) {
                        order.push(p);
                    }
                }
            }
        }
    }

    let mut taken: HashSet<String> = HashSet::new();
    let names: Vec<StateId> = order
        .iter()
        .map(|(qi, s)| {
            let members = s
                .iter()
                .map(|&i| a.states()[i].as_str())
                .collect::<Vec<_>>()
                .join(",");
            fresh_state(&format!("({},{{{members}}})", a.states()[*qi]), &mut taken)
        })
        .collect();
    let pair_ix: HashMap<Pair, usize> = order
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();

    let mut translucent = Vec::new();
    let mut delta = Vec::new();
    let mut end_delta = Vec::new();
    for (i, (qi, s)) in order.iter().enumerate() {
        let q = &a.states()[*qi];
        translucent.push((names[i].clone(), a.translucent(q).iter().copied().collect()));
        for &l in a.alphabet() {
            let targets: Vec<StateId> = a
                .delta(q, l)
                .iter()
                .map(|t| names[pair_ix[&(index(t), BTreeSet::new())]].clone())
                .collect();
            if !targets.is_empty() {
                delta.push(((names[i].clone(), l), targets));
            }
        }
        let action = match a.end_action(q) {
            EndAction::Accept => EndAction::Accept,
            EndAction::Reject => EndAction::Reject,
            EndAction::GoTo(ts) => {
                if s.contains(qi) {
                    EndAction::Reject
                } else {
                    let mut grown = s.clone();
                    grown.insert(*qi);
                    EndAction::GoTo(
                        ts.iter()
                            .map(|t| names[pair_ix[&(index(t), grown.clone())]].clone())
                            .collect(),
                    )
                }
            }
        };
        end_delta.push((names[i].clone(), action));
    }
    let initial: Vec<StateId> = a
        .initial()
        .iter()
        .map(|q0| names[pair_ix[&(index(q0), BTreeSet::new())]].clone())
        .collect();
    Ok(Automaton::new(
        a.kind(),
        names,
        a.alphabet().to_vec(),
        initial,
        vec![],
        translucent,
        delta,
        end_delta,
    )
    .expect("loop-eliminated output is well formed"))
}

/// Rewrites a non-returning automaton so that acceptance happens only once
/// the tape is empty. A fresh sink state that sees every letter and deletes
/// left to right is appended, and every accept decision at the end marker
/// becomes a jump into the sink; the sink accepts at the marker, which it
/// reaches only after consuming everything. The language is unchanged and
/// determinism is preserved.
pub fn complete_reading(a: &Automaton) -> Result<Automaton, ConstructionError> {
    require_nonreturning(a)?;
    let mut taken = taken_names(a);
    let sink = fresh_state("q_e", &mut taken);
    let mut states = a.states().to_vec();
    states.push(sink.clone());
    let mut translucent = Vec::new();
    let mut delta = Vec::new();
    let mut end_delta = Vec::new();
    for q in a.states() {
        translucent.push((q.clone(), a.translucent(q).iter().copied().collect()));
        for &l in a.alphabet() {
            let targets = a.delta(q, l);
            if !targets.is_empty() {
                delta.push(((q.clone(), l), targets.to_vec()));
            }
        }
        let action = match a.end_action(q) {
            EndAction::Accept => EndAction::GoTo(vec![sink.clone()]),
            other => other.clone(),
        };
        end_delta.push((q.clone(), action));
    }
    for &l in a.alphabet() {
        delta.push(((sink.clone(), l), vec![sink.clone()]));
    }
    end_delta.push((sink.clone(), EndAction::Accept));
    Ok(Automaton::new(
        a.kind(),
        states,
        a.alphabet().to_vec(),
        a.initial().to_vec(),
        vec![],
        translucent,
        delta,
        end_delta,
    )
    .expect("complete-reading output is well formed"))
}

/// [`eliminate_end_loops`] followed by [`complete_reading`]: the result
/// halts on every input and accepts only with an empty tape. Several other
/// operations rely on this shape. Determinism is preserved.
pub fn normalize(a: &Automaton) -> Result<Automaton, ConstructionError> {
    complete_reading(&eliminate_end_loops(a)?)
}

/// The union of two non-returning automata over the same alphabet: a run
/// starts in either machine's initial states and stays there, so a word is
/// accepted when either machine accepts it. States are renamed apart with
/// `·1`/`·2` suffixes. The merged initial set makes the result
/// nondeterministic even when both inputs are deterministic.
pub fn union(a1: &Automaton, a2: &Automaton) -> Result<Automaton, ConstructionError> {
    require_nonreturning(a1)?;
    require_nonreturning(a2)?;
    let s1: BTreeSet<Letter> = a1.alphabet().iter().copied().collect();
    let s2: BTreeSet<Letter> = a2.alphabet().iter().copied().collect();
    if s1 != s2 {
        let show = |s: &BTreeSet<Letter>| {
            s.iter()
                .map(Letter::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        return Err(ConstructionError::AlphabetMismatch {
            left: show(&s1),
            right: show(&s2),
        });
    }
    let m1 = rename_states(a1, "·1");
    let m2 = rename_states(a2, "·2");
    let mut states: Vec<StateId> = a1.states().iter().map(|q| m1[q].clone()).collect();
    states.extend(a2.states().iter().map(|q| m2[q].clone()));
    let mut initial: Vec<StateId> = a1.initial().iter().map(|q| m1[q].clone()).collect();
    initial.extend(a2.initial().iter().map(|q| m2[q].clone()));
    let mut translucent = Vec::new();
    let mut delta = Vec::new();
    let mut end_delta = Vec::new();
    for (a, m) in [(a1, &m1), (a2, &m2)] {
        for q in a.states() {
            translucent.push((m[q].clone(), a.translucent(q).iter().copied().collect()));
            for &l in a.alphabet() {
                let targets = a.delta(q, l);
                if !targets.is_empty() {
                    let renamed = targets.iter().map(|t| m[t].clone()).collect();
                    delta.push(((m[q].clone(), l), renamed));
                }
            }
            end_delta.push((m[q].clone(), rename_action(a.end_action(q), m)));
        }
    }
    Ok(Automaton::new(
        Kind::NrNfawtl,
        states,
        a1.alphabet().to_vec(),
        initial,
        vec![],
        translucent,
        delta,
        end_delta,
    )
    .expect("union output is well formed"))
}

/// An automaton for the shuffle of two languages over disjoint alphabets:
/// all interleavings of a word from each. The first machine runs with the
/// second's letters added to every translucency set, so it works on its own
/// letters as if the others were not there; its accept decisions become
/// jumps into the second machine's initial states, which then consumes the
/// remaining letters the same way. A word is accepted exactly when its
/// projection to each alphabet lies in that machine's language.
pub fn disjoint_shuffle(a1: &Automaton, a2: &Automaton) -> Result<Automaton, ConstructionError> {
    require_nonreturning(a1)?;
    require_nonreturning(a2)?;
    let s2: BTreeSet<Letter> = a2.alphabet().iter().copied().collect();
    if let Some(l) = a1.alphabet().iter().find(|l| s2.contains(l)) {
        return Err(ConstructionError::OverlappingAlphabets(l.as_char()));
    }
    let m1 = rename_states(a1, "·1");
    let m2 = rename_states(a2, "·2");
    let mut alphabet = a1.alphabet().to_vec();
    alphabet.extend_from_slice(a2.alphabet());
    let mut states: Vec<StateId> = a1.states().iter().map(|q| m1[q].clone()).collect();
    states.extend(a2.states().iter().map(|q| m2[q].clone()));
    let start2: Vec<StateId> = a2.initial().iter().map(|q| m2[q].clone()).collect();
    let mut translucent = Vec::new();
    let mut delta = Vec::new();
    let mut end_delta = Vec::new();
    for q in a1.states() {
        let mut tau: Vec<Letter> = a1.translucent(q).iter().copied().collect();
        tau.extend_from_slice(a2.alphabet());
        translucent.push((m1[q].clone(), tau));
        for &l in a1.alphabet() {
            let targets = a1.delta(q, l);
            if !targets.is_empty() {
                let renamed = targets.iter().map(|t| m1[t].clone()).collect();
                delta.push(((m1[q].clone(), l), renamed));
            }
        }
        let action = match a1.end_action(q) {
            EndAction::Accept => {
                if start2.is_empty() {
                    EndAction::Reject
                } else {
                    EndAction::GoTo(start2.clone())
                }
            }
            other => rename_action(other, &m1),
        };
        end_delta.push((m1[q].clone(), action));
    }
    for q in a2.states() {
        let mut tau: Vec<Letter> = a2.translucent(q).iter().copied().collect();
        tau.extend_from_slice(a1.alphabet());
        translucent.push((m2[q].clone(), tau));
        for &l in a2.alphabet() {
            let targets = a2.delta(q, l);
            if !targets.is_empty() {
                let renamed = targets.iter().map(|t| m2[t].clone()).collect();
                delta.push(((m2[q].clone(), l), renamed));
            }
        }
        end_delta.push((m2[q].clone(), rename_action(a2.end_action(q), &m2)));
    }
    let initial: Vec<StateId> = a1.initial().iter().map(|q| m1[q].clone()).collect();
    Ok(Automaton::new(
        Kind::NrNfawtl,
        states,
        alphabet,
        initial,
        vec![],
        translucent,
        delta,
        end_delta,
    )
    .expect("shuffle output is well formed"))
}

/// Complements a deterministic non-returning automaton with respect to all
/// words over its alphabet. The input is normalized first, so every word
/// has exactly one halting run; a fresh all-blind accept state then catches
/// each formerly undefined move (a visible letter with no transition, or a
/// missing end action), while former accept decisions become rejections.
pub fn complement_deterministic(a: &Automaton) -> Result<Automaton, ConstructionError> {
    match a.kind() {
        Kind::NrDfawtl => {}
        Kind::NrNfawtl => return Err(ConstructionError::Nondeterministic(Kind::NrNfawtl)),
        got => {
            return Err(ConstructionError::WrongKind {
                expected: "nrDFAwtl",
                got,
            })
        }
    }
    let n = normalize(a)?;
    let mut taken = taken_names(&n);
    let sink = fresh_state("q+", &mut taken);
    let mut states = n.states().to_vec();
    states.push(sink.clone());
    let mut translucent = Vec::new();
    let mut delta = Vec::new();
    let mut end_delta = Vec::new();
    for q in n.states() {
        translucent.push((q.clone(), n.translucent(q).iter().copied().collect()));
        for &l in n.alphabet() {
            let targets = n.delta(q, l);
            if !targets.is_empty() {
                delta.push(((q.clone(), l), targets.to_vec()));
            } else if !n.translucent(q).contains(&l) {
                delta.push(((q.clone(), l), vec![sink.clone()]));
            }
        }
        let action = match n.end_action(q) {
            EndAction::Accept => EndAction::Reject,
            EndAction::Reject => EndAction::GoTo(vec![sink.clone()]),
            jump => jump.clone(),
        };
        end_delta.push((q.clone(), action));
    }
    translucent.push((sink.clone(), n.alphabet().to_vec()));
    end_delta.push((sink.clone(), EndAction::Accept));
    Ok(Automaton::new(
        Kind::NrDfawtl,
        states,
        n.alphabet().to_vec(),
        n.initial().to_vec(),
        vec![],
        translucent,
        delta,
        end_delta,
    )
    .expect("complement output is well formed"))
}

/// A classical nondeterministic finite automaton with optional epsilon
/// moves; the target of [`unary_to_nfa`]. A transition labeled `None` is an
/// epsilon move. Rows passed to [`ClassicalNfa::new`] with the same key are
/// merged, and target lists are kept in state declaration order.
#[derive(Clone, PartialEq, Debug)]
pub struct ClassicalNfa {
    states: Vec<StateId>,
    alphabet: Vec<Letter>,
    initial: Vec<StateId>,
    finals: Vec<StateId>,
    transitions: HashMap<(StateId, Option<Letter>), Vec<StateId>>,
}

impl ClassicalNfa {
    pub fn new(
        states: Vec<StateId>,
        alphabet: Vec<Letter>,
        initial: Vec<StateId>,
        finals: Vec<StateId>,
        transitions: Vec<((StateId, Option<Letter>), Vec<StateId>)>,
    ) -> Result<Self, ModelError> {
        let mut state_ix: HashMap<&StateId, usize> = HashMap::new();
        for (i, q) in states.iter().enumerate() {
            if state_ix.insert(q, i).is_some() {
                return Err(ModelError::DuplicateState(q.to_string()));
            }
        }
        let mut letter_set: BTreeSet<Letter> = BTreeSet::new();
        for l in &alphabet {
            if !letter_set.insert(*l) {
                return Err(ModelError::DuplicateLetter(l.as_char()));
            }
        }
        let canon = |mut qs: Vec<StateId>| -> Result<Vec<StateId>, ModelError> {
            for q in &qs {
                if !state_ix.contains_key(q) {
                    return Err(ModelError::UnknownState(q.to_string()));
                }
            }
            qs.sort_by_key(|q| state_ix[q]);
            qs.dedup();
            Ok(qs)
        };
        let initial = canon(initial)?;
        let finals = canon(finals)?;
        let mut map: HashMap<(StateId, Option<Letter>), Vec<StateId>> = HashMap::new();
        for ((q, label), targets) in transitions {
            if !state_ix.contains_key(&q) {
                return Err(ModelError::UnknownState(q.to_string()));
            }
            if let Some(l) = label {
                if !letter_set.contains(&l) {
                    return Err(ModelError::UnknownLetter(l.as_char()));
                }
            }
            let targets = canon(targets)?;
            if targets.is_empty() {
                continue;
            }
            let entry = map.entry((q, label)).or_default();
            entry.extend(targets);
            entry.sort_by_key(|q| state_ix[q]);
            entry.dedup();
        }
        Ok(ClassicalNfa {
            states,
            alphabet,
            initial,
            finals,
            transitions: map,
        })
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }

    /// Targets of the letter edge (`Some`) or epsilon edge (`None`) at `q`.
    pub fn transitions(&self, q: &StateId, label: Option<Letter>) -> &[StateId] {
        self.transitions
            .get(&(q.clone(), label))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn has_epsilon_edges(&self) -> bool {
        self.transitions.keys().any(|(_, label)| label.is_none())
    }

    /// Standard subset acceptance with epsilon closure. Letters outside the
    /// alphabet have no edges, so any word containing one is rejected.
    pub fn accepts(&self, word: &Word) -> bool {
        let index: HashMap<&StateId, usize> = self
            .states
            .iter()
            .enumerate()
            .map(|(i, q)| (q, i))
            .collect();
        let mut current: BTreeSet<usize> = self.initial.iter().map(|q| index[q]).collect();
        self.close(&index, &mut current);
        for &l in word.letters() {
            let mut next: BTreeSet<usize> = BTreeSet::new();
            for &qi in &current {
                for t in self.transitions(&self.states[qi], Some(l)) {
                    next.insert(index[t]);
                }
            }
            self.close(&index, &mut next);
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current
            .iter()
            .any(|&qi| self.finals.contains(&self.states[qi]))
    }

    fn close(&self, index: &HashMap<&StateId, usize>, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(qi) = stack.pop() {
            for t in self.transitions(&self.states[qi], None) {
                let ti = index[t];
                if set.insert(ti) {
                    stack.push(ti);
                }
            }
        }
    }
}

/// Converts a unary-alphabet non-returning automaton into a classical NFA
/// with the same language.
///
/// The input is normalized first. Over a one-letter alphabet every position
/// left of the head is already deleted, so a configuration is just a state
/// and a count of remaining letters; deletions become the NFA's letter
/// edges. A state blind to the letter never deletes, so its end-marker
/// jumps fire at any count and become epsilon edges. A state that sees the
/// letter reaches the marker only with an empty tape, which the final-state
/// set absorbs instead: a state is final when following end-marker jumps
/// from it reaches an accept decision. States unreachable from the initial
/// set are dropped.
pub fn unary_to_nfa(a: &Automaton) -> Result<ClassicalNfa, ConstructionError> {
    require_nonreturning(a)?;
    if a.alphabet().len() != 1 {
        return Err(ConstructionError::NonUnaryAlphabet(a.alphabet().len()));
    }
    let n = normalize(a)?;
    let letter = n.alphabet()[0];

    let mut accepting: HashSet<&StateId> = n
        .states()
        .iter()
        .filter(|q| matches!(n.end_action(q), EndAction::Accept))
        .collect();
    loop {
        let mut grew = false;
        for q in n.states() {
            if accepting.contains(q) {
                continue;
            }
            if let EndAction::GoTo(ts) = n.end_action(q) {
                if ts.iter().any(|t| accepting.contains(t)) {
                    accepting.insert(q);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }

    let edges = |q: &StateId| -> Vec<StateId> {
        let mut out = n.delta(q, letter).to_vec();
        if n.translucent(q).contains(&letter) {
            if let EndAction::GoTo(ts) = n.end_action(q) {
                out.extend(ts.iter().cloned());
            }
        }
        out
    };
    let mut reached: HashSet<StateId> = n.initial().iter().cloned().collect();
    let mut stack: Vec<StateId> = n.initial().to_vec();
    while let Some(q) = stack.pop() {
        for t in edges(&q) {
            if reached.insert(t.clone()) {
                stack.push(t);
            }
        }
    }

    let states: Vec<StateId> = n
        .states()
        .iter()
        .filter(|q| reached.contains(*q))
        .cloned()
        .collect();
    let finals: Vec<StateId> = states
        .iter()
        .filter(|q| accepting.contains(*q))
        .cloned()
        .collect();
    let mut transitions = Vec::new();
    for q in &states {
        let targets = n.delta(q, letter);
        if !targets.is_empty() {
            transitions.push(((q.clone(), Some(letter)), targets.to_vec()));
        }
        if n.translucent(q).contains(&letter) {
            if let EndAction::GoTo(ts) = n.end_action(q) {
                transitions.push(((q.clone(), None), ts.clone()));
            }
        }
    }
    Ok(
        ClassicalNfa::new(states, vec![letter], n.initial().to_vec(), finals, transitions)
            .expect("unary conversion output is well formed"),
    )
}
