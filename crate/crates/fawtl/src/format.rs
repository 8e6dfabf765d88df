//! The `.tla` interchange format: a line-oriented text form for automata.
//!
//! ```text
//! # comment to end of line
//! @type nrDFAwtl
//! @alphabet a b c
//! @states q_a q_b q_c q_r
//! @initial q_a
//! @translucent q_a = []
//! @translucent q_b = [a]
//! @delta q_a a -> q_b
//! @delta q_a END -> ACCEPT
//! @delta q_r END -> q_a
//! ```
//!
//! `@type` must be the first directive. `@final` lists final states and is
//! only meaningful for the returning kinds; `END` lines give the end-marker
//! action of non-returning kinds, with `ACCEPT` as target meaning accept and
//! a missing `END` line meaning reject. `@alphabet`, `@states`, `@initial`
//! and `@final` may be split over several lines; the set directives
//! accumulate.
//!
//! [`serialize_tla`] emits a canonical form: one line per set directive,
//! a `@translucent` line for every state, and per-state `@delta` lines with
//! letters in alphabet order followed by the `END` line. Parsing a canonical
//! file and serializing the result reproduces the input bytes.
//!
//! [`serialize_nfa`] writes a classical NFA in the same style under
//! `@type NFA`, with `EPS` in place of a letter for epsilon moves; that is
//! why `EPS` is a reserved state name.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::constructions::ClassicalNfa;
use crate::model::{
    Automaton, EndAction, Kind, Letter, ModelError, StateId, ValidationReport, Word,
};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate {what}")]
    Duplicate { line: usize, what: String },
    #[error("line {line}: unknown state {name}")]
    UnknownState { line: usize, name: String },
    #[error("line {line}: unknown letter {letter}")]
    UnknownLetter { line: usize, letter: char },
    #[error("line {line}: state {state} already has an END action")]
    ConflictingEnd { line: usize, state: String },
    #[error("missing {what} directive")]
    Missing { what: &'static str },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, thiserror::Error)]
pub enum SerializeError {
    #[error("cannot serialize an automaton that fails validation: {0}")]
    Invalid(ValidationReport),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_letter(line: usize, token: &str) -> Result<Letter, ParseError> {
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Letter::new(c).map_err(|e| syntax(line, e.to_string())),
        _ => Err(syntax(
            line,
            format!("letters are single characters, got {token:?}"),
        )),
    }
}

/// Parses the textual format into an automaton. Referential integrity is
/// checked with line-accurate errors; semantic rules (determinism,
/// translucency consistency) are left to [`Automaton::validate`] so that
/// files describing ill-formed automata can still be loaded and reported on.
pub fn parse_tla(src: &str) -> Result<Automaton, ParseError> {
    struct Item<'a> {
        line: usize,
        rest: &'a str,
    }

    let mut type_item: Option<Item> = None;
    let mut alphabet_items: Vec<Item> = Vec::new();
    let mut states_items: Vec<Item> = Vec::new();
    let mut initial_items: Vec<Item> = Vec::new();
    let mut final_items: Vec<Item> = Vec::new();
    let mut translucent_items: Vec<Item> = Vec::new();
    let mut delta_items: Vec<Item> = Vec::new();

    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        let (directive, rest) = match text.split_once(char::is_whitespace) {
            Some((d, r)) => (d, r.trim()),
            None => (text, ""),
        };
        if type_item.is_none() && directive != "@type" {
            return Err(syntax(line, "the first directive must be @type"));
        }
        let item = Item { line, rest };
        match directive {
            "@type" => {
                if type_item.is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        what: "@type directive".to_string(),
                    });
                }
                type_item = Some(item);
            }
            "@alphabet" => alphabet_items.push(item),
            "@states" => states_items.push(item),
            "@initial" => initial_items.push(item),
            "@final" => final_items.push(item),
            "@translucent" => translucent_items.push(item),
            "@delta" => delta_items.push(item),
            _ => return Err(syntax(line, format!("unknown directive {directive:?}"))),
        }
    }

    let type_item = type_item.ok_or(ParseError::Missing { what: "@type" })?;
    let kind: Kind = type_item
        .rest
        .parse()
        .map_err(|e: ModelError| syntax(type_item.line, e.to_string()))?;
    if states_items.is_empty() {
        return Err(ParseError::Missing { what: "@states" });
    }
    if initial_items.is_empty() {
        return Err(ParseError::Missing { what: "@initial" });
    }

    let mut alphabet: Vec<Letter> = Vec::new();
    let mut letter_set: BTreeSet<Letter> = BTreeSet::new();
    for item in &alphabet_items {
        for token in item.rest.split_whitespace() {
            let l = parse_letter(item.line, token)?;
            if !letter_set.insert(l) {
                return Err(ParseError::Duplicate {
                    line: item.line,
                    what: format!("letter {l}"),
                });
            }
            alphabet.push(l);
        }
    }

    let mut states: Vec<StateId> = Vec::new();
    let mut state_set: HashSet<StateId> = HashSet::new();
    for item in &states_items {
        for token in item.rest.split_whitespace() {
            let q = StateId::new(token).map_err(|e| syntax(item.line, e.to_string()))?;
            if !state_set.insert(q.clone()) {
                return Err(ParseError::Duplicate {
                    line: item.line,
                    what: format!("state {q}"),
                });
            }
            states.push(q);
        }
    }

    let resolve_state = |line: usize, token: &str| -> Result<StateId, ParseError> {
        let q = StateId::new(token).map_err(|e| syntax(line, e.to_string()))?;
        if state_set.contains(&q) {
            Ok(q)
        } else {
            Err(ParseError::UnknownState {
                line,
                name: token.to_string(),
            })
        }
    };
    let resolve_letter = |line: usize, token: &str| -> Result<Letter, ParseError> {
        let l = parse_letter(line, token)?;
        if letter_set.contains(&l) {
            Ok(l)
        } else {
            Err(ParseError::UnknownLetter {
                line,
                letter: l.as_char(),
            })
        }
    };

    let mut initial: Vec<StateId> = Vec::new();
    for item in &initial_items {
        for token in item.rest.split_whitespace() {
            initial.push(resolve_state(item.line, token)?);
        }
    }

    let mut finals: Vec<StateId> = Vec::new();
    for item in &final_items {
        if !kind.is_returning() {
            return Err(syntax(
                item.line,
                format!("@final is only allowed on returning kinds, not {kind}"),
            ));
        }
        for token in item.rest.split_whitespace() {
            finals.push(resolve_state(item.line, token)?);
        }
    }

    let mut translucent: Vec<(StateId, Vec<Letter>)> = Vec::new();
    let mut translucent_seen: HashSet<StateId> = HashSet::new();
    for item in &translucent_items {
        let (lhs, rhs) = item.rest.split_once('=').ok_or_else(|| {
            syntax(item.line, "expected `@translucent <state> = [<letters>]`")
        })?;
        let q = resolve_state(item.line, lhs.trim())?;
        let rhs = rhs.trim();
        let inner = rhs
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| syntax(item.line, "expected letters in [brackets]"))?;
        let mut letters = Vec::new();
        for token in inner.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            letters.push(resolve_letter(item.line, token)?);
        }
        if !translucent_seen.insert(q.clone()) {
            return Err(ParseError::Duplicate {
                line: item.line,
                what: format!("@translucent declaration for {q}"),
            });
        }
        translucent.push((q, letters));
    }

    let mut delta: Vec<((StateId, Letter), Vec<StateId>)> = Vec::new();
    let mut delta_seen: HashSet<(StateId, Letter)> = HashSet::new();
    let mut end_delta: Vec<(StateId, EndAction)> = Vec::new();
    let mut end_seen: HashSet<StateId> = HashSet::new();
    for item in &delta_items {
        let tokens: Vec<&str> = item.rest.split_whitespace().collect();
        if tokens.len() < 4 || tokens[2] != "->" {
            return Err(syntax(
                item.line,
                "expected `@delta <state> <letter|END> -> <targets>`",
            ));
        }
        let q = resolve_state(item.line, tokens[0])?;
        let targets = &tokens[3..];
        if tokens[1] == "END" {
            if kind.is_returning() {
                return Err(syntax(
                    item.line,
                    format!("END actions are only allowed on non-returning kinds, not {kind}"),
                ));
            }
            let action = if targets == ["ACCEPT"] {
                EndAction::Accept
            } else if targets.contains(&"ACCEPT") {
                return Err(syntax(
                    item.line,
                    "ACCEPT cannot be combined with state targets",
                ));
            } else {
                let mut ts = Vec::new();
                for t in targets {
                    ts.push(resolve_state(item.line, t)?);
                }
                EndAction::GoTo(ts)
            };
            if !end_seen.insert(q.clone()) {
                return Err(ParseError::ConflictingEnd {
                    line: item.line,
                    state: q.to_string(),
                });
            }
            end_delta.push((q, action));
        } else {
            let l = resolve_letter(item.line, tokens[1])?;
            let mut ts = Vec::new();
            for t in targets {
                if *t == "ACCEPT" {
                    return Err(syntax(
                        item.line,
                        "ACCEPT is only a valid target after END",
                    ));
                }
                ts.push(resolve_state(item.line, t)?);
            }
            if !delta_seen.insert((q.clone(), l)) {
                return Err(ParseError::Duplicate {
                    line: item.line,
                    what: format!("@delta for ({q}, {l})"),
                });
            }
            delta.push(((q, l), ts));
        }
    }

    Ok(Automaton::new(
        kind, states, alphabet, initial, finals, translucent, delta, end_delta,
    )?)
}

/// Serializes an automaton to canonical text. Refuses automata that fail
/// [`Automaton::validate`] so that every emitted file describes a runnable
/// machine.
pub fn serialize_tla(aut: &Automaton) -> Result<String, SerializeError> {
    let report = aut.validate();
    if !report.is_empty() {
        return Err(SerializeError::Invalid(report));
    }

    let mut out = String::new();
    let _ = writeln!(out, "@type {}", aut.kind());

    let set_line = |out: &mut String, directive: &str, tokens: &mut dyn Iterator<Item = String>| {
        out.push_str(directive);
        for t in tokens {
            out.push(' ');
            out.push_str(&t);
        }
        out.push('\n');
    };
    set_line(
        &mut out,
        "@alphabet",
        &mut aut.alphabet().iter().map(|l| l.to_string()),
    );
    set_line(
        &mut out,
        "@states",
        &mut aut.states().iter().map(|q| q.to_string()),
    );
    set_line(
        &mut out,
        "@initial",
        &mut aut.initial().iter().map(|q| q.to_string()),
    );
    if !aut.finals().is_empty() {
        set_line(
            &mut out,
            "@final",
            &mut aut.finals().iter().map(|q| q.to_string()),
        );
    }

    for q in aut.states() {
        let tau = aut.translucent(q);
        let letters: Vec<String> = aut
            .alphabet()
            .iter()
            .filter(|l| tau.contains(l))
            .map(|l| l.to_string())
            .collect();
        let _ = writeln!(out, "@translucent {q} = [{}]", letters.join(" "));
    }

    for q in aut.states() {
        for l in aut.alphabet() {
            let targets = aut.delta(q, *l);
            if targets.is_empty() {
                continue;
            }
            let ts: Vec<&str> = targets.iter().map(StateId::as_str).collect();
            let _ = writeln!(out, "@delta {q} {l} -> {}", ts.join(" "));
        }
        if !aut.kind().is_returning() {
            match aut.end_action(q) {
                EndAction::Accept => {
                    let _ = writeln!(out, "@delta {q} END -> ACCEPT");
                }
                EndAction::GoTo(ts) => {
                    let ts: Vec<&str> = ts.iter().map(StateId::as_str).collect();
                    let _ = writeln!(out, "@delta {q} END -> {}", ts.join(" "));
                }
                EndAction::Reject => {}
            }
        }
    }

    Ok(out)
}

/// Serializes a classical NFA in the same line-oriented style, under
/// `@type NFA`. Epsilon moves are written as `@delta <state> EPS -> …`;
/// per-state lines come in state declaration order, letters in alphabet
/// order, the `EPS` line last.
pub fn serialize_nfa(nfa: &ClassicalNfa) -> String {
    let mut out = String::new();
    out.push_str("@type NFA\n");

    let set_line = |out: &mut String, directive: &str, tokens: &mut dyn Iterator<Item = String>| {
        out.push_str(directive);
        for t in tokens {
            out.push(' ');
            out.push_str(&t);
        }
        out.push('\n');
    };
    set_line(
        &mut out,
        "@alphabet",
        &mut nfa.alphabet().iter().map(|l| l.to_string()),
    );
    set_line(
        &mut out,
        "@states",
        &mut nfa.states().iter().map(|q| q.to_string()),
    );
    set_line(
        &mut out,
        "@initial",
        &mut nfa.initial().iter().map(|q| q.to_string()),
    );
    if !nfa.finals().is_empty() {
        set_line(
            &mut out,
            "@final",
            &mut nfa.finals().iter().map(|q| q.to_string()),
        );
    }

    for q in nfa.states() {
        for &l in nfa.alphabet() {
            let targets = nfa.transitions(q, Some(l));
            if targets.is_empty() {
                continue;
            }
            let ts: Vec<&str> = targets.iter().map(StateId::as_str).collect();
            let _ = writeln!(out, "@delta {q} {l} -> {}", ts.join(" "));
        }
        let eps = nfa.transitions(q, None);
        if !eps.is_empty() {
            let ts: Vec<&str> = eps.iter().map(StateId::as_str).collect();
            let _ = writeln!(out, "@delta {q} EPS -> {}", ts.join(" "));
        }
    }

    out
}

/// Parses a word against an automaton's alphabet, with friendlier errors
/// than [`Automaton::word`] for command-line use.
pub fn parse_word(aut: &Automaton, s: &str) -> Result<Word, ModelError> {
    aut.word(s)
}
