//! Indexed engine for deterministic machines.
//!
//! The naive engine re-scans the tape from the head on every step, which is
//! quadratic on inputs that are mostly translucent. This engine keeps one
//! ordered set of live positions per letter, so "first visible letter at or
//! after the head" becomes one successor query per non-translucent letter,
//! and a deletion is a single set removal. Runs whose end actions cycle are
//! cut off by a loop check instead of a fuel bound: once a state repeats at
//! the end marker with no deletion in between, the run can never make
//! progress again.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::model::{Automaton, EndAction, Letter, StateId, Verdict, Word};
use crate::naive::{EngineError, Step, StuckReason, Trace};

/// Live tape positions, indexed per letter for successor queries.
#[derive(Clone, Debug)]
pub struct PositionIndex {
    sets: BTreeMap<Letter, BTreeSet<usize>>,
    letters: Vec<Letter>,
    live: usize,
}

impl PositionIndex {
    pub fn new(word: &Word) -> Self {
        let letters = word.letters().to_vec();
        let mut sets: BTreeMap<Letter, BTreeSet<usize>> = BTreeMap::new();
        for (i, &l) in letters.iter().enumerate() {
            sets.entry(l).or_default().insert(i);
        }
        let live = letters.len();
        PositionIndex {
            sets,
            letters,
            live,
        }
    }

    /// The smallest live position `>= pos` holding `letter`. Letters that
    /// never occurred in the word have no set; their successor is `None`.
    pub fn successor_at_or_after(&self, letter: Letter, pos: usize) -> Option<usize> {
        self.sets
            .get(&letter)?
            .range(pos..)
            .next()
            .copied()
    }

    /// Removes a live position. The per-letter set is kept even when it
    /// becomes empty, so the set of queried letters stays fixed for the
    /// whole run.
    pub fn delete(&mut self, pos: usize) {
        let letter = self.letters[pos];
        let removed = self
            .sets
            .get_mut(&letter)
            .map(|s| s.remove(&pos))
            .unwrap_or(false);
        if removed {
            self.live -= 1;
        }
    }

    pub fn live_len(&self) -> usize {
        self.live
    }

    pub fn letter_at(&self, pos: usize) -> Letter {
        self.letters[pos]
    }

    /// Letters that occurred in the original word, in order. This is the
    /// query set for [`first_visible`]: translucency filters it down.
    pub fn occurring_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.sets.keys().copied()
    }
}

/// Finds the first live position at or after `head` whose letter is not in
/// `tau`, by taking the minimum successor over every non-translucent letter
/// of the word. Each successor query adds one to `ops`.
pub fn first_visible(
    index: &PositionIndex,
    head: usize,
    tau: &BTreeSet<Letter>,
    ops: &mut u64,
) -> Option<(usize, Letter)> {
    let mut best: Option<(usize, Letter)> = None;
    for letter in index.occurring_letters().collect::<Vec<_>>() {
        if tau.contains(&letter) {
            continue;
        }
        *ops += 1;
        if let Some(pos) = index.successor_at_or_after(letter, head) {
            if best.map_or(true, |(b, _)| pos < b) {
                best = Some((pos, letter));
            }
        }
    }
    best
}

/// Operation counts of one indexed run.
///
/// `index_ops` is the number of successor queries plus deletions, the
/// quantity whose growth should be compared across input sizes.
/// `end_events` counts resolved end-marker visits (accept, reject by an
/// undefined action or non-final state, or a jump taken); a visit cut off
/// by the loop check is not counted, which keeps
/// `end_events <= (deletions + 1) * |Q|` for every run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RunStats {
    pub deletions: u64,
    pub end_events: u64,
    pub index_ops: u64,
}

/// Verdict, operation counts and (on request) the full trace of one run.
#[derive(Clone, PartialEq, Debug)]
pub struct FastRun {
    pub verdict: Verdict,
    pub stats: RunStats,
    pub trace: Option<Trace>,
}

struct TraceBuilder {
    steps: Option<Vec<Step>>,
    /// Liveness per original position, kept only while tracing so that
    /// returning-kind deletions can be reported relative to the remaining
    /// word, matching the reference engine.
    alive: Vec<bool>,
}

impl TraceBuilder {
    fn new(want: bool, len: usize) -> Self {
        TraceBuilder {
            steps: want.then(Vec::new),
            alive: if want { vec![true; len] } else { Vec::new() },
        }
    }

    fn is_on(&self) -> bool {
        self.steps.is_some()
    }

    fn relative(&self, pos: usize) -> usize {
        self.alive[..pos].iter().filter(|a| **a).count()
    }

    fn push(&mut self, step: Step) {
        if let Some(steps) = &mut self.steps {
            steps.push(step);
        }
    }

    fn record_delete(&mut self, pos: usize, relative: bool, letter: Letter, from: &StateId, to: &StateId) {
        if self.steps.is_none() {
            return;
        }
        let position = if relative { self.relative(pos) } else { pos };
        self.steps.as_mut().unwrap().push(Step::Delete {
            position,
            letter,
            from: from.clone(),
            to: to.clone(),
        });
        self.alive[pos] = false;
    }
}

fn single_target<'a>(
    state: &StateId,
    targets: &'a [StateId],
) -> Result<Option<&'a StateId>, EngineError> {
    match targets.len() {
        0 => Ok(None),
        1 => Ok(Some(&targets[0])),
        n => Err(EngineError::NondeterministicChoice {
            state: state.clone(),
            count: n,
        }),
    }
}

/// Runs a deterministic machine over the indexed tape. Nondeterministic
/// kinds are refused up front; a machine of a deterministic kind whose
/// transition table still fans out is reported when the fan-out is hit.
pub fn run_fast(aut: &Automaton, word: &Word, want_trace: bool) -> Result<FastRun, EngineError> {
    if !aut.kind().is_deterministic() {
        return Err(EngineError::NotDeterministic(aut.kind()));
    }
    let initial = aut
        .initial()
        .first()
        .ok_or(EngineError::NoInitialState)?
        .clone();

    let mut index = PositionIndex::new(word);
    let mut stats = RunStats::default();
    let mut tracer = TraceBuilder::new(want_trace, word.len());
    let returning = aut.kind().is_returning();

    let mut state = initial.clone();
    let mut head = 0usize;
    // states that already took an end-marker jump since the last deletion
    let mut jumped: HashSet<StateId> = HashSet::new();

    let verdict = loop {
        match first_visible(&index, head, aut.translucent(&state), &mut stats.index_ops) {
            Some((pos, letter)) => {
                let targets = aut.delta(&state, letter);
                match single_target(&state, targets)? {
                    None => {
                        if tracer.is_on() {
                            let position =
                                if returning { tracer.relative(pos) } else { pos };
                            tracer.push(Step::Stuck {
                                state: state.clone(),
                                reason: StuckReason::NoTransition { letter, position },
                            });
                        }
                        break Verdict::Reject;
                    }
                    Some(next) => {
                        let next = next.clone();
                        tracer.record_delete(pos, returning, letter, &state, &next);
                        index.delete(pos);
                        stats.index_ops += 1;
                        stats.deletions += 1;
                        jumped.clear();
                        head = if returning { 0 } else { pos + 1 };
                        state = next;
                    }
                }
            }
            None => {
                if returning {
                    stats.end_events += 1;
                    if aut.is_final(&state) {
                        tracer.push(Step::EndAccept {
                            state: state.clone(),
                        });
                        break Verdict::Accept;
                    }
                    tracer.push(Step::Stuck {
                        state: state.clone(),
                        reason: StuckReason::EndReject,
                    });
                    break Verdict::Reject;
                }
                if jumped.contains(&state) {
                    tracer.push(Step::Stuck {
                        state: state.clone(),
                        reason: StuckReason::EndLoop,
                    });
                    break Verdict::Reject;
                }
                match aut.end_action(&state) {
                    EndAction::Accept => {
                        stats.end_events += 1;
                        tracer.push(Step::EndAccept {
                            state: state.clone(),
                        });
                        break Verdict::Accept;
                    }
                    EndAction::Reject => {
                        stats.end_events += 1;
                        tracer.push(Step::Stuck {
                            state: state.clone(),
                            reason: StuckReason::EndReject,
                        });
                        break Verdict::Reject;
                    }
                    EndAction::GoTo(targets) => match single_target(&state, targets)? {
                        None => unreachable!("GoTo targets are never empty"),
                        Some(next) => {
                            let next = next.clone();
                            stats.end_events += 1;
                            tracer.push(Step::EndGoTo {
                                from: state.clone(),
                                to: next.clone(),
                            });
                            jumped.insert(state.clone());
                            state = next;
                            head = 0;
                        }
                    },
                }
            }
        }
    };

    let trace = tracer.steps.map(|steps| Trace {
        kind: aut.kind(),
        initial_state: initial,
        input: word.clone(),
        steps,
        verdict,
    });
    Ok(FastRun {
        verdict,
        stats,
        trace,
    })
}
