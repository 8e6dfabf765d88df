//! Core data model: alphabets, words, the four automaton kinds, and
//! structural validation.
//!
//! An automaton owns a finite state set, an ordered alphabet, a translucency
//! map `tau` assigning each state the set of letters its head cannot see, and
//! a transition map. Returning kinds (`NFAwtl`, `DFAwtl`) carry a set of
//! final states and accept at the end marker; non-returning kinds
//! (`nrNFAwtl`, `nrDFAwtl`) instead carry an end action per state: `Accept`,
//! `GoTo` (head returns to the left end), or `Reject`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// A single input symbol. Printable, not whitespace, and not `#` (which
/// starts a comment in the textual format).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(char);

impl Letter {
    pub fn new(c: char) -> Result<Self, ModelError> {
        if c.is_control() || c.is_whitespace() || c == '#' {
            return Err(ModelError::InvalidLetter(c));
        }
        Ok(Letter(c))
    }

    pub fn as_char(self) -> char {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A state name: a nonempty token of printable, non-whitespace characters.
/// `END`, `ACCEPT` and `EPS` are reserved by the textual format, and `#`
/// would be swallowed by its comment syntax, so none of these are allowed
/// here.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StateId(String);

impl StateId {
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        let ok = !name.is_empty()
            && name != "END"
            && name != "ACCEPT"
            && name != "EPS"
            && name
                .chars()
                .all(|c| !c.is_control() && !c.is_whitespace() && c != '#');
        if ok {
            Ok(StateId(name))
        } else {
            Err(ModelError::InvalidStateName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite input word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for Word {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        s.chars().map(Letter::new).collect::<Result<_, _>>().map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The four automaton kinds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    Nfawtl,
    Dfawtl,
    NrNfawtl,
    NrDfawtl,
}

impl Kind {
    /// Returning kinds move the head back to the left end after every
    /// deletion; non-returning kinds continue from the deletion point.
    pub fn is_returning(self) -> bool {
        matches!(self, Kind::Nfawtl | Kind::Dfawtl)
    }

    /// Deterministic kinds require a single initial state and at most one
    /// target per transition (end actions included).
    pub fn is_deterministic(self) -> bool {
        matches!(self, Kind::Dfawtl | Kind::NrDfawtl)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Nfawtl => "NFAwtl",
            Kind::Dfawtl => "DFAwtl",
            Kind::NrNfawtl => "nrNFAwtl",
            Kind::NrDfawtl => "nrDFAwtl",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s {
            "NFAwtl" => Ok(Kind::Nfawtl),
            "DFAwtl" => Ok(Kind::Dfawtl),
            "nrNFAwtl" => Ok(Kind::NrNfawtl),
            "nrDFAwtl" => Ok(Kind::NrDfawtl),
            _ => Err(ModelError::UnknownKind(s.to_string())),
        }
    }
}

/// What a non-returning automaton does when its head reaches the end marker.
/// `Reject` is stored explicitly so that every state has a definite action.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum EndAction {
    Accept,
    GoTo(Vec<StateId>),
    Reject,
}

/// Outcome of a single run.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("invalid letter {0:?}: letters are single printable, non-whitespace characters other than '#'")]
    InvalidLetter(char),
    #[error("invalid state name {0:?}: names are nonempty printable tokens without whitespace or '#', and END/ACCEPT/EPS are reserved")]
    InvalidStateName(String),
    #[error("unknown automaton kind {0:?}")]
    UnknownKind(String),
    #[error("duplicate state {0}")]
    DuplicateState(String),
    #[error("duplicate letter {0}")]
    DuplicateLetter(char),
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("unknown letter {0}")]
    UnknownLetter(char),
    #[error("duplicate translucency declaration for state {0}")]
    DuplicateTranslucency(String),
    #[error("duplicate transition declaration for state {0} on letter {1}")]
    DuplicateDelta(String, char),
    #[error("duplicate end action for state {0}")]
    DuplicateEndAction(String),
    #[error("final states are only allowed on returning kinds (NFAwtl, DFAwtl)")]
    FinalsOnNonReturning,
    #[error("end actions are only allowed on non-returning kinds (nrNFAwtl, nrDFAwtl)")]
    EndActionOnReturning,
    #[error("letter {0:?} is not in the alphabet")]
    LetterOutsideAlphabet(char),
}

/// One violation found by [`Automaton::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    /// Stable rule identifier, e.g. `translucency`.
    pub rule: &'static str,
    pub message: String,
    /// The offending state or letter.
    pub subject: String,
}

/// All violations found in one automaton; empty means well formed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {} ({})", v.rule, v.message, v.subject)?;
        }
        Ok(())
    }
}

fn empty_letters() -> &'static BTreeSet<Letter> {
    static EMPTY: OnceLock<BTreeSet<Letter>> = OnceLock::new();
    EMPTY.get_or_init(BTreeSet::new)
}

static REJECT: EndAction = EndAction::Reject;

/// A finite automaton with translucent letters, immutable after
/// construction. All stored sets are canonicalized to declaration order, so
/// two structurally equal automata compare equal.
#[derive(Clone, PartialEq, Debug)]
pub struct Automaton {
    kind: Kind,
    states: Vec<StateId>,
    alphabet: Vec<Letter>,
    initial: Vec<StateId>,
    finals: Vec<StateId>,
    translucent: HashMap<StateId, BTreeSet<Letter>>,
    delta: HashMap<(StateId, Letter), Vec<StateId>>,
    end_delta: HashMap<StateId, EndAction>,
}

impl Automaton {
    /// Builds an automaton, checking referential integrity (semantic rules
    /// such as determinism are left to [`Automaton::validate`]).
    ///
    /// `finals` must be empty for non-returning kinds and `end_delta` for
    /// returning ones. States missing from `translucent` get an empty set;
    /// states missing from `end_delta` get `Reject`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        kind: Kind,
        states: Vec<StateId>,
        alphabet: Vec<Letter>,
        initial: Vec<StateId>,
        finals: Vec<StateId>,
        translucent: Vec<(StateId, Vec<Letter>)>,
        delta: Vec<((StateId, Letter), Vec<StateId>)>,
        end_delta: Vec<(StateId, EndAction)>,
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
        let check_state = |q: &StateId| -> Result<(), ModelError> {
            if state_ix.contains_key(q) {
                Ok(())
            } else {
                Err(ModelError::UnknownState(q.to_string()))
            }
        };
        let check_letter = |l: Letter| -> Result<(), ModelError> {
            if letter_set.contains(&l) {
                Ok(())
            } else {
                Err(ModelError::UnknownLetter(l.as_char()))
            }
        };

        if !kind.is_returning() && !finals.is_empty() {
            return Err(ModelError::FinalsOnNonReturning);
        }
        if kind.is_returning() && !end_delta.is_empty() {
            return Err(ModelError::EndActionOnReturning);
        }

        let canon_states = |mut qs: Vec<StateId>| -> Result<Vec<StateId>, ModelError> {
            for q in &qs {
                check_state(q)?;
            }
            qs.sort_by_key(|q| state_ix[q]);
            qs.dedup();
            Ok(qs)
        };

        let initial = canon_states(initial)?;
        let finals = canon_states(finals)?;

        let mut tau: HashMap<StateId, BTreeSet<Letter>> = HashMap::new();
        for (q, ls) in translucent {
            check_state(&q)?;
            let mut set = BTreeSet::new();
            for l in ls {
                check_letter(l)?;
                set.insert(l);
            }
            if tau.insert(q.clone(), set).is_some() {
                return Err(ModelError::DuplicateTranslucency(q.to_string()));
            }
        }
        for q in &states {
            tau.entry(q.clone()).or_default();
        }

        let mut dmap: HashMap<(StateId, Letter), Vec<StateId>> = HashMap::new();
        for ((q, l), targets) in delta {
            check_state(&q)?;
            check_letter(l)?;
            let targets = canon_states(targets)?;
            if dmap.contains_key(&(q.clone(), l)) {
                return Err(ModelError::DuplicateDelta(q.to_string(), l.as_char()));
            }
            if !targets.is_empty() {
                dmap.insert((q, l), targets);
            }
        }

        let mut emap: HashMap<StateId, EndAction> = HashMap::new();
        for (q, action) in end_delta {
            check_state(&q)?;
            let action = match action {
                EndAction::GoTo(ts) => {
                    let ts = canon_states(ts)?;
                    if ts.is_empty() {
                        EndAction::Reject
                    } else {
                        EndAction::GoTo(ts)
                    }
                }
                other => other,
            };
            if emap.insert(q.clone(), action).is_some() {
                return Err(ModelError::DuplicateEndAction(q.to_string()));
            }
        }
        if !kind.is_returning() {
            for q in &states {
                emap.entry(q.clone()).or_insert(EndAction::Reject);
            }
        }

        Ok(Automaton {
            kind,
            states,
            alphabet,
            initial,
            finals,
            translucent: tau,
            delta: dmap,
            end_delta: emap,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
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

    /// Final states; empty for non-returning kinds.
    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }

    pub fn is_final(&self, q: &StateId) -> bool {
        self.finals.contains(q)
    }

    /// The letters invisible to the head while in state `q`.
    pub fn translucent(&self, q: &StateId) -> &BTreeSet<Letter> {
        self.translucent.get(q).unwrap_or_else(|| empty_letters())
    }

    /// Transition targets for `(q, letter)`, in state declaration order.
    pub fn delta(&self, q: &StateId, letter: Letter) -> &[StateId] {
        self.delta
            .get(&(q.clone(), letter))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// End-marker action for `q`. Meaningful for non-returning kinds;
    /// returning kinds report `Reject` here and use `finals` instead.
    pub fn end_action(&self, q: &StateId) -> &EndAction {
        self.end_delta.get(q).unwrap_or(&REJECT)
    }

    pub fn state_index(&self, q: &StateId) -> Option<usize> {
        self.states.iter().position(|s| s == q)
    }

    pub fn letter_index(&self, l: Letter) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == l)
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        self.alphabet.contains(&l)
    }

    /// Parses a word and checks every letter against the alphabet.
    pub fn word(&self, s: &str) -> Result<Word, ModelError> {
        let w: Word = s.parse()?;
        for l in w.letters() {
            if !self.contains_letter(*l) {
                return Err(ModelError::LetterOutsideAlphabet(l.as_char()));
            }
        }
        Ok(w)
    }

    /// Checks the semantic well-formedness rules and reports every
    /// violation: translucent letters must have no transition, and
    /// deterministic kinds must have exactly one initial state and at most
    /// one target per transition and per end action.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for q in &self.states {
            for l in self.translucent(q) {
                if !self.delta(q, *l).is_empty() {
                    violations.push(Violation {
                        rule: "translucency",
                        message: format!(
                            "letter {l} is translucent in state {q} but has a transition"
                        ),
                        subject: format!("({q}, {l})"),
                    });
                }
            }
        }
        if self.kind.is_deterministic() {
            if self.initial.len() != 1 {
                violations.push(Violation {
                    rule: "det-initial",
                    message: format!(
                        "deterministic kinds need exactly one initial state, found {}",
                        self.initial.len()
                    ),
                    subject: format!(
                        "{{{}}}",
                        self.initial
                            .iter()
                            .map(StateId::as_str)
                            .collect::<Vec<_>>()
                            .join(",")
                    ),
                });
            }
            for q in &self.states {
                for l in &self.alphabet {
                    let targets = self.delta(q, *l);
                    if targets.len() > 1 {
                        violations.push(Violation {
                            rule: "det-delta",
                            message: format!(
                                "state {q} has {} targets on letter {l}",
                                targets.len()
                            ),
                            subject: format!("({q}, {l})"),
                        });
                    }
                }
                if let EndAction::GoTo(ts) = self.end_action(q) {
                    if ts.len() > 1 {
                        violations.push(Violation {
                            rule: "det-end",
                            message: format!(
                                "state {q} has {} end-marker targets",
                                ts.len()
                            ),
                            subject: q.to_string(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}
