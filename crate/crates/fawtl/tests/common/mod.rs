//! Shared helpers for the integration suites: seeded generators for random
//! valid machines and words, word enumeration, and an engine-agnostic
//! membership check.
#![allow(dead_code)]

use fawtl::{accepts_naive, run_fast, Automaton, EndAction, Kind, Letter, StateId, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn st(name: &str) -> StateId {
    StateId::new(name).unwrap()
}

pub fn lt(c: char) -> Letter {
    Letter::new(c).unwrap()
}

pub fn letters(s: &str) -> Vec<Letter> {
    s.chars().map(lt).collect()
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

/// Membership through the engine that fits the machine: the indexed one
/// for deterministic kinds, the breadth-first reference one otherwise.
pub fn accepts(aut: &Automaton, w: &Word) -> bool {
    if aut.kind().is_deterministic() {
        run_fast(aut, w, false)
            .expect("deterministic machine")
            .verdict
            .is_accept()
    } else {
        accepts_naive(aut, w).is_accept()
    }
}

/// Every word of length `<= max_len`, in length-lexicographic order over
/// the alphabet's declaration order.
pub fn words_up_to(alphabet: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    if alphabet.is_empty() {
        return out;
    }
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        'level: loop {
            out.push(Word::new(digits.iter().map(|&i| alphabet[i]).collect()));
            for slot in (0..len).rev() {
                digits[slot] += 1;
                if digits[slot] < alphabet.len() {
                    continue 'level;
                }
                digits[slot] = 0;
            }
            break;
        }
    }
    out
}

pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &[Letter], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| *alphabet.choose(rng).unwrap()).collect())
}

/// A random valid deterministic machine (DFAwtl or nrDFAwtl) with at most
/// five states and three letters.
pub fn random_deterministic(rng: &mut ChaCha8Rng) -> Automaton {
    let kind = if rng.gen_bool(0.5) {
        Kind::Dfawtl
    } else {
        Kind::NrDfawtl
    };
    random_machine(rng, kind, 5, 3)
}

/// A random valid machine of any of the four kinds, for round-trip and
/// construction tests.
pub fn random_valid(rng: &mut ChaCha8Rng) -> Automaton {
    let kind = *[
        Kind::Nfawtl,
        Kind::Dfawtl,
        Kind::NrNfawtl,
        Kind::NrDfawtl,
    ]
    .choose(rng)
    .unwrap();
    random_machine(rng, kind, 5, 3)
}

pub fn random_nonreturning(rng: &mut ChaCha8Rng) -> Automaton {
    let kind = if rng.gen_bool(0.5) {
        Kind::NrNfawtl
    } else {
        Kind::NrDfawtl
    };
    random_machine(rng, kind, 5, 3)
}

pub fn random_returning(rng: &mut ChaCha8Rng) -> Automaton {
    let kind = if rng.gen_bool(0.5) {
        Kind::Nfawtl
    } else {
        Kind::Dfawtl
    };
    random_machine(rng, kind, 5, 3)
}

/// A random unary non-returning machine with at most four states; may be
/// nondeterministic.
pub fn random_unary_nonreturning(rng: &mut ChaCha8Rng) -> Automaton {
    random_machine(rng, Kind::NrNfawtl, 4, 1)
}

/// A random non-returning machine over exactly the given letters, for laws
/// that need two machines with matching (or disjoint) alphabets.
pub fn random_nonreturning_over(rng: &mut ChaCha8Rng, alphabet: &str) -> Automaton {
    let kind = if rng.gen_bool(0.5) {
        Kind::NrNfawtl
    } else {
        Kind::NrDfawtl
    };
    random_machine_over(rng, kind, 5, &letters(alphabet))
}

fn random_machine(
    rng: &mut ChaCha8Rng,
    kind: Kind,
    max_states: usize,
    max_letters: usize,
) -> Automaton {
    let k = rng.gen_range(1..=max_letters);
    let alphabet: Vec<Letter> = "abc".chars().take(k).map(lt).collect();
    random_machine_over(rng, kind, max_states, &alphabet)
}

fn random_machine_over(
    rng: &mut ChaCha8Rng,
    kind: Kind,
    max_states: usize,
    alphabet: &[Letter],
) -> Automaton {
    let det = kind.is_deterministic();
    let n = rng.gen_range(1..=max_states);
    let states: Vec<StateId> = (0..n).map(|i| st(&format!("s{i}"))).collect();
    let alphabet = alphabet.to_vec();

    let initial = if det {
        vec![states.choose(rng).unwrap().clone()]
    } else {
        let mut picked: Vec<StateId> = states
            .iter()
            .filter(|_| rng.gen_bool(0.4))
            .cloned()
            .collect();
        if picked.is_empty() {
            picked.push(states.choose(rng).unwrap().clone());
        }
        picked
    };

    let mut translucent = Vec::new();
    let mut delta = Vec::new();
    for q in &states {
        let tau: Vec<Letter> = alphabet
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.35))
            .collect();
        for &l in &alphabet {
            if tau.contains(&l) || !rng.gen_bool(0.6) {
                continue;
            }
            let fan = if det { 1 } else { rng.gen_range(1..=2) };
            let targets: Vec<StateId> = (0..fan)
                .map(|_| states.choose(rng).unwrap().clone())
                .collect();
            delta.push(((q.clone(), l), targets));
        }
        if !tau.is_empty() {
            translucent.push((q.clone(), tau));
        }
    }

    let (finals, end_delta) = if kind.is_returning() {
        let finals: Vec<StateId> = states
            .iter()
            .filter(|_| rng.gen_bool(0.4))
            .cloned()
            .collect();
        (finals, Vec::new())
    } else {
        let mut ends = Vec::new();
        for q in &states {
            let roll: f64 = rng.gen();
            if roll < 0.3 {
                ends.push((q.clone(), EndAction::Accept));
            } else if roll < 0.45 {
                // leave the end action undefined, which reads as Reject
            } else if roll < 0.6 {
                ends.push((q.clone(), EndAction::Reject));
            } else {
                let fan = if det { 1 } else { rng.gen_range(1..=2) };
                let targets: Vec<StateId> = (0..fan)
                    .map(|_| states.choose(rng).unwrap().clone())
                    .collect();
                ends.push((q.clone(), EndAction::GoTo(targets)));
            }
        }
        (Vec::new(), ends)
    };

    let aut = Automaton::new(
        kind, states, alphabet, initial, finals, translucent, delta, end_delta,
    )
    .expect("generated machines respect the constructor contract");
    assert!(
        aut.validate().is_empty(),
        "generated machines must pass validation"
    );
    aut
}
