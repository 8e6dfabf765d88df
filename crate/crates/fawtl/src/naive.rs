//! Reference engine: literal small-step semantics, breadth-first search
//! over configurations for the nondeterministic kinds, and traces with
//! sweep decomposition for the deterministic ones.
//!
//! Everything here favours being obviously correct over being fast; the
//! indexed engine in [`crate::fast`] is checked against this one.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::model::{Automaton, EndAction, Kind, Letter, StateId, Verdict, Word};

/// One atomic event of a run.
///
/// `Delete` positions are original tape positions for non-returning kinds.
/// For returning kinds the tape is re-indexed after every deletion, so there
/// the position is an index into the current remaining word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Delete {
        position: usize,
        letter: Letter,
        from: StateId,
        to: StateId,
    },
    /// The head hit the end marker and jumped back to the left end.
    EndGoTo { from: StateId, to: StateId },
    EndAccept { state: StateId },
    Stuck { state: StateId, reason: StuckReason },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StuckReason {
    /// The first visible letter has no outgoing transition.
    NoTransition { letter: Letter, position: usize },
    /// The head hit the end marker with no way to accept or continue:
    /// an undefined end action, or a non-final state on a returning kind.
    EndReject,
    /// The indexed engine proved the run can only revisit end-marker
    /// configurations it has already been in.
    EndLoop,
}

impl fmt::Display for StuckReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StuckReason::NoTransition { letter, position } => {
                write!(f, "no transition on {letter}@{position}")
            }
            StuckReason::EndReject => f.write_str("end marker"),
            StuckReason::EndLoop => f.write_str("end marker loop"),
        }
    }
}

/// A configuration of a returning machine: the head is implicitly at the
/// left end of `remaining`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReturningConfig {
    pub state: StateId,
    pub remaining: Word,
}

/// A configuration of a non-returning machine over a fixed input word:
/// `live` holds the original positions still on the tape, sorted, and
/// `head` is the original-tape cursor (scanning resumes at the first live
/// position at or after it).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NonReturningConfig {
    pub state: StateId,
    pub live: Vec<usize>,
    pub head: usize,
}

/// All continuations of one configuration.
pub enum StepResult<C> {
    Next(Vec<(Step, C)>),
    Accepted(Step),
    Rejected(Step),
}

/// Performs one step of a returning machine: skip translucent letters from
/// the left, then delete the first visible one, or consult the final-state
/// set if the head falls off the right end. Letters outside the alphabet
/// are never translucent and have no transitions, so they block the run.
pub fn step_returning(aut: &Automaton, cfg: &ReturningConfig) -> StepResult<ReturningConfig> {
    let tau = aut.translucent(&cfg.state);
    let visible = cfg
        .remaining
        .letters()
        .iter()
        .enumerate()
        .find(|(_, l)| !tau.contains(l));
    match visible {
        Some((i, &letter)) => {
            let targets = aut.delta(&cfg.state, letter);
            if targets.is_empty() {
                return StepResult::Rejected(Step::Stuck {
                    state: cfg.state.clone(),
                    reason: StuckReason::NoTransition {
                        letter,
                        position: i,
                    },
                });
            }
            let mut rest = cfg.remaining.letters().to_vec();
            rest.remove(i);
            let rest = Word::new(rest);
            StepResult::Next(
                targets
                    .iter()
                    .map(|p| {
                        (
                            Step::Delete {
                                position: i,
                                letter,
                                from: cfg.state.clone(),
                                to: p.clone(),
                            },
                            ReturningConfig {
                                state: p.clone(),
                                remaining: rest.clone(),
                            },
                        )
                    })
                    .collect(),
            )
        }
        None => {
            if aut.is_final(&cfg.state) {
                StepResult::Accepted(Step::EndAccept {
                    state: cfg.state.clone(),
                })
            } else {
                StepResult::Rejected(Step::Stuck {
                    state: cfg.state.clone(),
                    reason: StuckReason::EndReject,
                })
            }
        }
    }
}

/// Performs one step of a non-returning machine: skip translucent letters
/// from the head rightward, delete the first visible one and continue from
/// just past it, or apply the state's end action at the marker.
pub fn step_nonreturning(
    aut: &Automaton,
    word: &Word,
    cfg: &NonReturningConfig,
) -> StepResult<NonReturningConfig> {
    let tau = aut.translucent(&cfg.state);
    let letters = word.letters();
    let visible = cfg
        .live
        .iter()
        .copied()
        .filter(|&i| i >= cfg.head)
        .find(|&i| !tau.contains(&letters[i]));
    match visible {
        Some(i) => {
            let letter = letters[i];
            let targets = aut.delta(&cfg.state, letter);
            if targets.is_empty() {
                return StepResult::Rejected(Step::Stuck {
                    state: cfg.state.clone(),
                    reason: StuckReason::NoTransition {
                        letter,
                        position: i,
                    },
                });
            }
            let live: Vec<usize> = cfg.live.iter().copied().filter(|&j| j != i).collect();
            StepResult::Next(
                targets
                    .iter()
                    .map(|p| {
                        (
                            Step::Delete {
                                position: i,
                                letter,
                                from: cfg.state.clone(),
                                to: p.clone(),
                            },
                            NonReturningConfig {
                                state: p.clone(),
                                live: live.clone(),
                                head: i + 1,
                            },
                        )
                    })
                    .collect(),
            )
        }
        None => match aut.end_action(&cfg.state) {
            EndAction::Accept => StepResult::Accepted(Step::EndAccept {
                state: cfg.state.clone(),
            }),
            EndAction::Reject => StepResult::Rejected(Step::Stuck {
                state: cfg.state.clone(),
                reason: StuckReason::EndReject,
            }),
            EndAction::GoTo(targets) => StepResult::Next(
                targets
                    .iter()
                    .map(|p| {
                        (
                            Step::EndGoTo {
                                from: cfg.state.clone(),
                                to: p.clone(),
                            },
                            NonReturningConfig {
                                state: p.clone(),
                                live: cfg.live.clone(),
                                head: 0,
                            },
                        )
                    })
                    .collect(),
            ),
        },
    }
}

/// Decides membership by exhaustive breadth-first search over
/// configurations. Repeated configurations are pruned, so this always
/// terminates, even on machines whose end actions loop forever; such runs
/// never accept.
pub fn accepts_naive(aut: &Automaton, word: &Word) -> Verdict {
    if aut.kind().is_returning() {
        let mut seen: HashSet<ReturningConfig> = HashSet::new();
        let mut queue: VecDeque<ReturningConfig> = VecDeque::new();
        for q in aut.initial() {
            let cfg = ReturningConfig {
                state: q.clone(),
                remaining: word.clone(),
            };
            if seen.insert(cfg.clone()) {
                queue.push_back(cfg);
            }
        }
        while let Some(cfg) = queue.pop_front() {
            match step_returning(aut, &cfg) {
                StepResult::Accepted(_) => return Verdict::Accept,
                StepResult::Rejected(_) => {}
                StepResult::Next(succs) => {
                    for (_, next) in succs {
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        Verdict::Reject
    } else {
        let mut seen: HashSet<NonReturningConfig> = HashSet::new();
        let mut queue: VecDeque<NonReturningConfig> = VecDeque::new();
        for q in aut.initial() {
            let cfg = NonReturningConfig {
                state: q.clone(),
                live: (0..word.len()).collect(),
                head: 0,
            };
            if seen.insert(cfg.clone()) {
                queue.push_back(cfg);
            }
        }
        while let Some(cfg) = queue.pop_front() {
            match step_nonreturning(aut, word, &cfg) {
                StepResult::Accepted(_) => return Verdict::Accept,
                StepResult::Rejected(_) => {}
                StepResult::Next(succs) => {
                    for (_, next) in succs {
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        Verdict::Reject
    }
}

/// A complete halting run of a deterministic machine. The final step is
/// always `EndAccept` or `Stuck`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace {
    pub kind: Kind,
    pub initial_state: StateId,
    pub input: Word,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

/// Result of a fuel-bounded deterministic run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TraceOutcome {
    Halted(Trace),
    /// The run was still going after the given number of steps. With the
    /// default fuel this only happens on runs that never halt.
    FuelExhausted { steps: u64 },
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("{0} machines are nondeterministic; this operation needs a deterministic kind")]
    NotDeterministic(Kind),
    #[error("nondeterministic choice in state {state}: {count} successors")]
    NondeterministicChoice { state: StateId, count: usize },
    #[error("no initial state")]
    NoInitialState,
}

/// Fuel that provably outlasts every halting deterministic run: a run makes
/// at most `|w|` deletions, and between consecutive deletions a
/// deterministic machine visits each of its at most `|Q|` end-marker
/// configurations at most once before repeating one, after which it can
/// never delete again.
pub fn default_fuel(aut: &Automaton, word: &Word) -> u64 {
    let q = aut.states().len() as u64 + 1;
    let n = word.len() as u64 + 1;
    q * n * n
}

/// Runs a deterministic machine to completion or until `fuel` steps have
/// been taken (`None` means [`default_fuel`]).
pub fn trace_deterministic(
    aut: &Automaton,
    word: &Word,
    fuel: Option<u64>,
) -> Result<TraceOutcome, EngineError> {
    if !aut.kind().is_deterministic() {
        return Err(EngineError::NotDeterministic(aut.kind()));
    }
    let initial = aut
        .initial()
        .first()
        .ok_or(EngineError::NoInitialState)?
        .clone();
    let fuel = fuel.unwrap_or_else(|| default_fuel(aut, word));
    let mut steps: Vec<Step> = Vec::new();
    let mut taken: u64 = 0;

    macro_rules! drive {
        ($cfg:ident, $step_fn:expr) => {{
            let mut cfg = $cfg;
            loop {
                if taken == fuel {
                    return Ok(TraceOutcome::FuelExhausted { steps: taken });
                }
                match $step_fn(&cfg) {
                    StepResult::Accepted(step) => {
                        steps.push(step);
                        break Verdict::Accept;
                    }
                    StepResult::Rejected(step) => {
                        steps.push(step);
                        break Verdict::Reject;
                    }
                    StepResult::Next(mut succs) => {
                        if succs.len() != 1 {
                            return Err(EngineError::NondeterministicChoice {
                                state: cfg.state.clone(),
                                count: succs.len(),
                            });
                        }
                        let (step, next) = succs.pop().unwrap();
                        steps.push(step);
                        taken += 1;
                        cfg = next;
                    }
                }
            }
        }};
    }

    let verdict = if aut.kind().is_returning() {
        let cfg = ReturningConfig {
            state: initial.clone(),
            remaining: word.clone(),
        };
        drive!(cfg, |c: &ReturningConfig| step_returning(aut, c))
    } else {
        let cfg = NonReturningConfig {
            state: initial.clone(),
            live: (0..word.len()).collect(),
            head: 0,
        };
        drive!(cfg, |c: &NonReturningConfig| step_nonreturning(aut, word, c))
    };

    Ok(TraceOutcome::Halted(Trace {
        kind: aut.kind(),
        initial_state: initial,
        input: word.clone(),
        steps,
        verdict,
    }))
}

/// One pass of the head from the left end of the tape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SweepRecord {
    /// State at the left end when the pass began.
    pub start_state: StateId,
    /// State when the pass ended: at the marker, at a deletion for
    /// returning kinds, or wherever the run got stuck.
    pub end_state: StateId,
    /// Original tape positions deleted during the pass (an index into the
    /// remaining word for returning kinds, which return after every
    /// deletion and so delete at most once per pass).
    pub deleted_positions: Vec<usize>,
}

/// Splits a trace into head passes. A new pass starts whenever the head
/// returns to the left end: after an end-marker jump for non-returning
/// kinds, and after every deletion for returning ones.
pub fn decompose(trace: &Trace) -> Vec<SweepRecord> {
    let mut sweeps = Vec::new();
    let mut start = trace.initial_state.clone();
    let mut deleted: Vec<usize> = Vec::new();
    let mut open = false;
    for step in &trace.steps {
        open = true;
        match step {
            Step::Delete { position, to, .. } => {
                deleted.push(*position);
                if trace.kind.is_returning() {
                    sweeps.push(SweepRecord {
                        start_state: start,
                        end_state: to.clone(),
                        deleted_positions: std::mem::take(&mut deleted),
                    });
                    start = to.clone();
                    open = false;
                }
            }
            Step::EndGoTo { from, to } => {
                sweeps.push(SweepRecord {
                    start_state: start,
                    end_state: from.clone(),
                    deleted_positions: std::mem::take(&mut deleted),
                });
                start = to.clone();
                open = false;
            }
            Step::EndAccept { state } | Step::Stuck { state, .. } => {
                sweeps.push(SweepRecord {
                    start_state: start.clone(),
                    end_state: state.clone(),
                    deleted_positions: std::mem::take(&mut deleted),
                });
                open = false;
            }
        }
    }
    if open {
        sweeps.push(SweepRecord {
            start_state: start.clone(),
            end_state: start,
            deleted_positions: deleted,
        });
    }
    sweeps
}

/// Renders a trace as one line per step: the state before the step, the
/// tape with deleted positions shown as `·`, and the action taken.
/// Returning kinds are shown on the original tape as well, with their
/// relative deletion indices mapped back to original positions.
pub fn render_trace(trace: &Trace) -> String {
    let mut out = String::new();
    let chars: Vec<char> = trace
        .input
        .letters()
        .iter()
        .map(|l| l.as_char())
        .collect();
    let mut alive: Vec<usize> = (0..chars.len()).collect();
    let mut dead = vec![false; chars.len()];

    for step in &trace.steps {
        let mut delete_at: Option<usize> = None;
        let (state, action) = match step {
            Step::Delete {
                position,
                letter,
                from,
                to,
            } => {
                let original = if trace.kind.is_returning() {
                    alive[*position]
                } else {
                    *position
                };
                delete_at = Some(original);
                (from.clone(), format!("delete {letter}@{original} -> {to}"))
            }
            Step::EndGoTo { from, to } => (from.clone(), format!("end -> {to}")),
            Step::EndAccept { state } => (state.clone(), "accept".to_string()),
            Step::Stuck { state, reason } => {
                let reason = match reason {
                    StuckReason::NoTransition { letter, position } => {
                        let original = if trace.kind.is_returning() {
                            alive[*position]
                        } else {
                            *position
                        };
                        format!("no transition on {letter}@{original}")
                    }
                    other => other.to_string(),
                };
                (state.clone(), format!("reject ({reason})"))
            }
        };
        let tape: String = chars
            .iter()
            .enumerate()
            .map(|(i, &c)| if dead[i] { '·' } else { c })
            .collect();
        out.push_str(state.as_str());
        out.push_str(" | ");
        out.push_str(&tape);
        out.push_str(" | ");
        out.push_str(&action);
        out.push('\n');
        if let Some(original) = delete_at {
            alive.retain(|&i| i != original);
            dead[original] = true;
        }
    }
    out
}
