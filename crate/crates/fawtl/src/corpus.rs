//! A small corpus of worked machines used throughout the tests, the
//! benchmarks and the bundled fixture files. Each builder returns a fresh
//! validated automaton, and the main machines also come as [`Fixture`]s
//! that pair the automaton with an independent membership oracle.

use crate::model::{Automaton, EndAction, Kind, Letter, StateId, Word};

fn st(name: &str) -> StateId {
    StateId::new(name).expect("corpus state names are valid")
}

fn lt(c: char) -> Letter {
    Letter::new(c).expect("corpus letters are valid")
}

fn letters(s: &str) -> Vec<Letter> {
    s.chars().map(lt).collect()
}

/// Accepts exactly the words `a^n b^n c^n` for `n >= 0`.
///
/// Each round deletes the leftmost remaining `a`, then the first `b` right
/// of it, then the first `c` right of that, and jumps back; the round
/// states are blind to the letter they just consumed, which forces the
/// blocks to appear in sorted order with equal counts.
pub fn anbncn() -> Automaton {
    Automaton::new(
        Kind::NrDfawtl,
        vec![st("q_a"), st("q_b"), st("q_c"), st("q_r")],
        letters("abc"),
        vec![st("q_a")],
        vec![],
        vec![
            (st("q_a"), vec![]),
            (st("q_b"), letters("a")),
            (st("q_c"), letters("b")),
            (st("q_r"), letters("c")),
        ],
        vec![
            ((st("q_a"), lt('a')), vec![st("q_b")]),
            ((st("q_b"), lt('b')), vec![st("q_c")]),
            ((st("q_c"), lt('c')), vec![st("q_r")]),
        ],
        vec![
            (st("q_a"), EndAction::Accept),
            (st("q_r"), EndAction::GoTo(vec![st("q_a")])),
        ],
    )
    .expect("corpus machine is well formed")
}

/// Accepts the shuffles of a word over `{a,b}` with its uppercase copy:
/// a word is accepted iff its lowercase projection equals its case-folded
/// uppercase projection.
///
/// The machine repeatedly matches the first visible lowercase letter with
/// the first visible uppercase letter, deleting the pair; the intermediate
/// states are blind to the other case, so the interleaving is free.
pub fn shuffle_copy() -> Automaton {
    Automaton::new(
        Kind::Dfawtl,
        vec![st("q0"), st("q_a"), st("q_A"), st("q_b"), st("q_B")],
        letters("abAB"),
        vec![st("q0")],
        vec![st("q0")],
        vec![
            (st("q0"), vec![]),
            (st("q_a"), letters("AB")),
            (st("q_A"), letters("ab")),
            (st("q_b"), letters("AB")),
            (st("q_B"), letters("ab")),
        ],
        vec![
            ((st("q0"), lt('a')), vec![st("q_A")]),
            ((st("q0"), lt('b')), vec![st("q_B")]),
            ((st("q0"), lt('A')), vec![st("q_a")]),
            ((st("q0"), lt('B')), vec![st("q_b")]),
            ((st("q_a"), lt('a')), vec![st("q0")]),
            ((st("q_b"), lt('b')), vec![st("q0")]),
            ((st("q_A"), lt('A')), vec![st("q0")]),
            ((st("q_B"), lt('B')), vec![st("q0")]),
        ],
        vec![],
    )
    .expect("corpus machine is well formed")
}

/// Accepts the words over `{a,b}` containing at most one `b`.
///
/// Nondeterministic: at the end marker, `p` guesses whether to hand the
/// `b`-deleting duty to `q` or to finish in `r`. The `p -> q -> p` jump
/// cycle never deletes anything, so engines must prune repeated
/// configurations rather than follow it forever.
pub fn end_loop() -> Automaton {
    Automaton::new(
        Kind::NrNfawtl,
        vec![st("p"), st("q"), st("r")],
        letters("ab"),
        vec![st("p")],
        vec![],
        vec![
            (st("p"), letters("a")),
            (st("q"), letters("a")),
            (st("r"), letters("a")),
        ],
        vec![((st("p"), lt('b')), vec![st("q")])],
        vec![
            (st("p"), EndAction::GoTo(vec![st("q"), st("r")])),
            (st("q"), EndAction::GoTo(vec![st("p")])),
            (st("r"), EndAction::Accept),
        ],
    )
    .expect("corpus machine is well formed")
}

/// A nine-state machine that consumes `abc`-triples in phases, each phase
/// deleting two thirds of the remaining triples; on inputs of the form
/// `(abc)^n` it accepts exactly when `n` is a power of three.
pub fn exp3() -> Automaton {
    Automaton::new(
        Kind::NrDfawtl,
        (0..=8).map(|i| st(&format!("q{i}"))).collect(),
        letters("abc"),
        vec![st("q0")],
        vec![],
        vec![
            (st("q0"), letters("a")),
            (st("q3"), letters("b")),
            (st("q6"), letters("ac")),
        ],
        vec![
            ((st("q0"), lt('b')), vec![st("q1")]),
            ((st("q1"), lt('c')), vec![st("q2")]),
            ((st("q2"), lt('a')), vec![st("q3")]),
            ((st("q3"), lt('c')), vec![st("q4")]),
            ((st("q4"), lt('a')), vec![st("q5")]),
            ((st("q5"), lt('b')), vec![st("q6")]),
            ((st("q6"), lt('b')), vec![st("q1")]),
            ((st("q7"), lt('a')), vec![st("q8")]),
        ],
        vec![
            (st("q2"), EndAction::GoTo(vec![st("q7")])),
            (st("q6"), EndAction::GoTo(vec![st("q0")])),
            (st("q8"), EndAction::Accept),
        ],
    )
    .expect("corpus machine is well formed")
}

/// Accepts nothing: every run eventually reaches a state whose end action
/// is undefined, but only after several deletions and jumps, so emptiness
/// is not apparent from any single state.
pub fn empty_lang() -> Automaton {
    Automaton::new(
        Kind::NrDfawtl,
        (0..=5).map(|i| st(&format!("q{i}"))).collect(),
        letters("abc"),
        vec![st("q0")],
        vec![],
        vec![
            (st("q0"), letters("b")),
            (st("q1"), letters("c")),
            (st("q2"), letters("c")),
            (st("q4"), letters("a")),
        ],
        vec![
            ((st("q0"), lt('a')), vec![st("q1")]),
            ((st("q2"), lt('b')), vec![st("q3")]),
            ((st("q4"), lt('c')), vec![st("q5")]),
        ],
        vec![
            (st("q1"), EndAction::GoTo(vec![st("q2")])),
            (st("q3"), EndAction::GoTo(vec![st("q4")])),
            (st("q5"), EndAction::Accept),
        ],
    )
    .expect("corpus machine is well formed")
}

/// Accepts exactly the words `a^n b^n` for `n >= 0`.
///
/// Each round deletes the leftmost `a` and the first `b` right of it; the
/// middle state is blind to `a` and the jump state to `b`, so any stray
/// letter eventually becomes visible in a state that cannot consume it.
pub fn anbn() -> Automaton {
    Automaton::new(
        Kind::NrDfawtl,
        vec![st("s0"), st("s1"), st("s2")],
        letters("ab"),
        vec![st("s0")],
        vec![],
        vec![(st("s1"), letters("a")), (st("s2"), letters("b"))],
        vec![
            ((st("s0"), lt('a')), vec![st("s1")]),
            ((st("s1"), lt('b')), vec![st("s2")]),
        ],
        vec![
            (st("s0"), EndAction::Accept),
            (st("s2"), EndAction::GoTo(vec![st("s0")])),
        ],
    )
    .expect("corpus machine is well formed")
}

/// Accepts every word over the single-letter alphabet `{c}`.
pub fn letter_star(c: char) -> Automaton {
    Automaton::new(
        Kind::NrDfawtl,
        vec![st("c0")],
        vec![lt(c)],
        vec![st("c0")],
        vec![],
        vec![],
        vec![((st("c0"), lt(c)), vec![st("c0")])],
        vec![(st("c0"), EndAction::Accept)],
    )
    .expect("corpus machine is well formed")
}

/// Accepts only the empty word, over the given alphabet.
pub fn empty_word_only(alphabet: &str) -> Automaton {
    Automaton::new(
        Kind::NrDfawtl,
        vec![st("u")],
        letters(alphabet),
        vec![st("u")],
        vec![],
        vec![],
        vec![],
        vec![(st("u"), EndAction::Accept)],
    )
    .expect("corpus machine is well formed")
}

/// Accepts the words `a^(2n)` for `n >= 0`: unary input of even length.
pub fn even_as() -> Automaton {
    Automaton::new(
        Kind::NrDfawtl,
        vec![st("e0"), st("e1")],
        letters("a"),
        vec![st("e0")],
        vec![],
        vec![],
        vec![
            ((st("e0"), lt('a')), vec![st("e1")]),
            ((st("e1"), lt('a')), vec![st("e0")]),
        ],
        vec![(st("e0"), EndAction::Accept)],
    )
    .expect("corpus machine is well formed")
}

/// The word `a^n b^n c^n`.
pub fn block_word(n: usize) -> Word {
    let mut v = Vec::with_capacity(3 * n);
    for c in ['a', 'b', 'c'] {
        v.extend(std::iter::repeat(lt(c)).take(n));
    }
    Word::new(v)
}

/// The word `(abc)^n`.
pub fn triple_word(n: usize) -> Word {
    let mut v = Vec::with_capacity(3 * n);
    for _ in 0..n {
        v.extend(letters("abc"));
    }
    Word::new(v)
}

/// A corpus machine paired with a reference membership oracle.
///
/// The oracle decides membership by reasoning about the word directly; it
/// never runs an engine, so engine results can be checked against it.
/// `None` means the oracle abstains because the language is not
/// characterized on that word.
pub struct Fixture {
    /// Short token naming the fixture, also the basename of its bundled
    /// `.tla` file.
    pub name: &'static str,
    pub automaton: Automaton,
    pub oracle: fn(&Word) -> Option<bool>,
    /// What the language is and how to read the letters.
    pub notes: &'static str,
}

fn count_of(w: &Word, c: char) -> usize {
    w.letters().iter().filter(|l| l.as_char() == c).count()
}

/// Membership in the pair-shuffle language: `w` must be an interleaving of
/// some lowercase word `v` over `{a,b}` with its uppercase image. The image
/// contributes no lowercase letters, so `v` can only be the lowercase
/// subsequence of `w`; a dynamic program then checks the interleaving.
fn shuffles_with_copy(w: &Word) -> bool {
    let have: Vec<char> = w.letters().iter().map(|l| l.as_char()).collect();
    if have.iter().any(|c| !matches!(c, 'a' | 'b' | 'A' | 'B')) {
        return false;
    }
    let lower: Vec<char> = have.iter().copied().filter(char::is_ascii_lowercase).collect();
    let upper: Vec<char> = lower.iter().map(char::to_ascii_uppercase).collect();
    let (n, m) = (lower.len(), upper.len());
    if n + m != have.len() {
        return false;
    }
    let mut reachable = vec![vec![false; m + 1]; n + 1];
    reachable[0][0] = true;
    for i in 0..=n {
        for j in 0..=m {
            if i + j == 0 {
                continue;
            }
            let c = have[i + j - 1];
            reachable[i][j] = (i > 0 && reachable[i - 1][j] && lower[i - 1] == c)
                || (j > 0 && reachable[i][j - 1] && upper[j - 1] == c);
        }
    }
    reachable[n][m]
}

fn power_of_three(mut m: usize) -> bool {
    if m == 0 {
        return false;
    }
    while m % 3 == 0 {
        m /= 3;
    }
    m == 1
}

/// `Some(m)` when `w = (abc)^m`.
fn triple_count(w: &Word) -> Option<usize> {
    if w.len() % 3 != 0 {
        return None;
    }
    let m = w.len() / 3;
    (*w == triple_word(m)).then_some(m)
}

/// Whether `w = ab (cacabb)^n c` for some `n >= 0`.
fn is_ladder_word(w: &Word) -> bool {
    let s = w.to_string();
    let Some(middle) = s.strip_prefix("ab").and_then(|r| r.strip_suffix('c')) else {
        return false;
    };
    middle.len() % 6 == 0 && middle == "cacabb".repeat(middle.len() / 6)
}

/// The machine of [`shuffle_copy`] with its interleaving oracle.
pub fn fixture_shuffle_copy() -> Fixture {
    Fixture {
        name: "shuffle_copy",
        automaton: shuffle_copy(),
        oracle: |w| Some(shuffles_with_copy(w)),
        notes: "Interleavings of a word over {a,b} with its copy over {A,B}; \
                the uppercase letters stand in for the primed copies a' and b'.",
    }
}

/// The machine of [`anbncn`] with its exact oracle.
pub fn fixture_anbncn() -> Fixture {
    Fixture {
        name: "anbncn",
        automaton: anbncn(),
        oracle: |w| Some(w.len() % 3 == 0 && *w == block_word(w.len() / 3)),
        notes: "The three-block language a^n b^n c^n.",
    }
}

/// The machine of [`end_loop`] with its oracle: words over `{a,b}` with at
/// most one `b`. The characterization was found by exhausting the machine's
/// configuration graph on all short words and is pinned by a frozen word
/// list in the tests.
pub fn fixture_end_loop() -> Fixture {
    Fixture {
        name: "end_loop",
        automaton: end_loop(),
        oracle: |w| {
            let in_alphabet = w.letters().iter().all(|l| matches!(l.as_char(), 'a' | 'b'));
            Some(in_alphabet && count_of(w, 'b') <= 1)
        },
        notes: "Words over {a,b} containing at most one b; the machine's end \
                jumps can cycle forever, so it exercises loop handling.",
    }
}

/// The machine of [`exp3`] with its partial oracle. The oracle knows the
/// powers-of-three behaviour on `(abc)^m` and the side family
/// `ab (cacabb)^n c`; elsewhere it abstains, because the machine is known
/// to accept further words with no worked-out characterization.
pub fn fixture_exp3() -> Fixture {
    Fixture {
        name: "exp3",
        automaton: exp3(),
        oracle: |w| {
            if is_ladder_word(w) {
                return Some(true);
            }
            triple_count(w).map(power_of_three)
        },
        notes: "On inputs (abc)^m the machine accepts exactly when m is a \
                power of three; it also accepts ab (cacabb)^n c. Its full \
                language is not characterized, so the oracle abstains \
                elsewhere.",
    }
}

/// The machine of [`empty_lang`] with the constantly-false oracle.
pub fn fixture_empty() -> Fixture {
    Fixture {
        name: "empty_lang",
        automaton: empty_lang(),
        oracle: |_| Some(false),
        notes: "Accepts nothing; every run dies at an undefined end action \
                only after a few deletions and jumps.",
    }
}

/// All bundled fixtures.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        fixture_shuffle_copy(),
        fixture_anbncn(),
        fixture_end_loop(),
        fixture_exp3(),
        fixture_empty(),
    ]
}

/// Membership in the disjunctive count language over `{a,b}`: the number
/// of `b`s must equal the number of `a`s or be exactly twice it. No
/// deterministic machine of the kinds in this crate accepts this language,
/// so tests use the predicate to make sure fixtures are not mistaken for
/// it.
pub fn equal_or_double_bs(w: &Word) -> bool {
    if !w.letters().iter().all(|l| matches!(l.as_char(), 'a' | 'b')) {
        return false;
    }
    let a = count_of(w, 'a');
    let b = count_of(w, 'b');
    b == a || b == 2 * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Verdict;
    use crate::naive::accepts_naive;

    #[test]
    fn every_corpus_machine_validates() {
        for aut in [
            anbncn(),
            shuffle_copy(),
            end_loop(),
            exp3(),
            empty_lang(),
            anbn(),
            letter_star('c'),
            empty_word_only("abc"),
            even_as(),
        ] {
            assert!(aut.validate().is_empty(), "{:?}", aut.validate());
        }
    }

    #[test]
    fn the_block_pair_machine_accepts_exactly_matched_blocks() {
        let aut = anbn();
        let mut stack: Vec<String> = vec![String::new()];
        while let Some(s) = stack.pop() {
            let n = s.len() / 2;
            let expected = s.len() % 2 == 0 && s == format!("{}{}", "a".repeat(n), "b".repeat(n));
            assert_eq!(
                accepts_naive(&aut, &s.parse().unwrap()).is_accept(),
                expected,
                "{s:?}"
            );
            if s.len() < 6 {
                for c in ['a', 'b'] {
                    let mut t = s.clone();
                    t.push(c);
                    stack.push(t);
                }
            }
        }
    }

    #[test]
    fn triple_inputs_to_the_phase_machine_need_power_of_three_length() {
        let aut = exp3();
        for n in 0..=10 {
            let expected = if [1, 3, 9].contains(&n) {
                Verdict::Accept
            } else {
                Verdict::Reject
            };
            assert_eq!(accepts_naive(&aut, &triple_word(n)), expected, "n = {n}");
        }
    }

    #[test]
    fn the_phase_machine_accepts_some_non_triple_words() {
        let aut = exp3();
        let w: Word = "abcacabbc".parse().unwrap();
        assert_eq!(accepts_naive(&aut, &w), Verdict::Accept);
    }

    #[test]
    fn the_empty_machine_rejects_every_short_word() {
        let aut = empty_lang();
        let alphabet = ['a', 'b', 'c'];
        let mut stack: Vec<String> = vec![String::new()];
        let mut checked = 0;
        while let Some(s) = stack.pop() {
            assert_eq!(
                accepts_naive(&aut, &s.parse().unwrap()),
                Verdict::Reject,
                "{s:?}"
            );
            checked += 1;
            if s.len() < 6 {
                for c in alphabet {
                    let mut t = s.clone();
                    t.push(c);
                    stack.push(t);
                }
            }
        }
        assert_eq!(checked, (3usize.pow(7) - 1) / 2);
    }

    #[test]
    fn word_builders_have_the_advertised_shape() {
        assert_eq!(block_word(2).to_string(), "aabbcc");
        assert_eq!(triple_word(2).to_string(), "abcabc");
        assert!(block_word(0).is_empty());
    }

    fn words_over(alphabet: &[Letter], max_len: usize) -> Vec<Word> {
        let mut all: Vec<Vec<Letter>> = vec![vec![]];
        let mut frontier: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in alphabet {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.into_iter().map(Word::new).collect()
    }

    fn oracle_of(f: &Fixture, w: &str) -> Option<bool> {
        (f.oracle)(&w.parse().unwrap())
    }

    #[test]
    fn pair_shuffle_oracle_matches_worked_interleavings() {
        let f = fixture_shuffle_copy();
        assert_eq!(oracle_of(&f, "abbABaBA"), Some(true));
        assert_eq!(oracle_of(&f, ""), Some(true));
        assert_eq!(oracle_of(&f, "Aa"), Some(true));
        assert_eq!(oracle_of(&f, "aa"), Some(false));
        assert_eq!(oracle_of(&f, "aB"), Some(false));
        assert_eq!(oracle_of(&f, "ax"), Some(false));
    }

    #[test]
    fn block_triple_oracle_requires_sorted_equal_blocks() {
        let f = fixture_anbncn();
        assert_eq!(oracle_of(&f, "aabbcc"), Some(true));
        assert_eq!(oracle_of(&f, ""), Some(true));
        assert_eq!(oracle_of(&f, "abcabc"), Some(false));
        assert_eq!(oracle_of(&f, "aabbc"), Some(false));
    }

    #[test]
    fn phase_machine_oracle_knows_only_the_characterized_slices() {
        let f = fixture_exp3();
        assert_eq!((f.oracle)(&triple_word(3)), Some(true));
        assert_eq!((f.oracle)(&triple_word(2)), Some(false));
        assert_eq!((f.oracle)(&triple_word(0)), Some(false));
        assert_eq!(oracle_of(&f, "abcacabbc"), Some(true));
        assert_eq!(oracle_of(&f, "abcacabbcacabbc"), Some(true));
        assert_eq!(oracle_of(&f, "ab"), None);
        assert_eq!(oracle_of(&f, "cba"), None);
    }

    #[test]
    fn empty_fixture_oracle_is_constantly_false() {
        let f = fixture_empty();
        for w in ["abc", "", "cb"] {
            assert_eq!(oracle_of(&f, w), Some(false));
        }
    }

    // Snapshot of the jump-cycle machine's language on all 511 words of
    // length <= 8: exactly the words with at most one b.
    const JUMP_CYCLE_ACCEPTED: [&str; 45] = [
        "",
        "a",
        "b",
        "aa",
        "ab",
        "ba",
        "aaa",
        "aab",
        "aba",
        "baa",
        "aaaa",
        "aaab",
        "aaba",
        "abaa",
        "baaa",
        "aaaaa",
        "aaaab",
        "aaaba",
        "aabaa",
        "abaaa",
        "baaaa",
        "aaaaaa",
        "aaaaab",
        "aaaaba",
        "aaabaa",
        "aabaaa",
        "abaaaa",
        "baaaaa",
        "aaaaaaa",
        "aaaaaab",
        "aaaaaba",
        "aaaabaa",
        "aaabaaa",
        "aabaaaa",
        "abaaaaa",
        "baaaaaa",
        "aaaaaaaa",
        "aaaaaaab",
        "aaaaaaba",
        "aaaaabaa",
        "aaaabaaa",
        "aaabaaaa",
        "aabaaaaa",
        "abaaaaaa",
        "baaaaaaa",
    ];

    #[test]
    fn jump_cycle_language_matches_the_frozen_snapshot() {
        let f = fixture_end_loop();
        assert_eq!(oracle_of(&f, "aabaa"), Some(true));
        assert_eq!(oracle_of(&f, ""), Some(true));
        let mut hits = 0;
        for w in words_over(f.automaton.alphabet(), 8) {
            let frozen = JUMP_CYCLE_ACCEPTED.contains(&w.to_string().as_str());
            assert_eq!(
                accepts_naive(&f.automaton, &w).is_accept(),
                frozen,
                "machine vs snapshot on {w}"
            );
            assert_eq!((f.oracle)(&w), Some(frozen), "oracle vs snapshot on {w}");
            hits += usize::from(frozen);
        }
        assert_eq!(hits, JUMP_CYCLE_ACCEPTED.len());
    }

    #[test]
    fn fixtures_validate_and_survive_a_format_round_trip() {
        for f in fixtures() {
            assert!(f.automaton.validate().is_empty(), "{}", f.name);
            let text = crate::format::serialize_tla(&f.automaton).unwrap();
            let back = crate::format::parse_tla(&text).unwrap();
            assert_eq!(back, f.automaton, "{}", f.name);
            assert!(!f.notes.is_empty());
        }
    }

    #[test]
    fn oracles_agree_with_the_reference_engine_on_short_words() {
        for f in fixtures() {
            for w in words_over(f.automaton.alphabet(), 5) {
                if let Some(expected) = (f.oracle)(&w) {
                    assert_eq!(
                        accepts_naive(&f.automaton, &w).is_accept(),
                        expected,
                        "{} on {w:?}",
                        f.name
                    );
                }
            }
        }
    }

    #[test]
    fn disjunctive_count_predicate_matches_its_definition() {
        assert!(equal_or_double_bs(&"ab".parse().unwrap()));
        assert!(equal_or_double_bs(&"abb".parse().unwrap()));
        assert!(equal_or_double_bs(&"".parse().unwrap()));
        assert!(equal_or_double_bs(&"babbab".parse().unwrap()));
        assert!(!equal_or_double_bs(&"aab".parse().unwrap()));
        assert!(!equal_or_double_bs(&"ac".parse().unwrap()));
    }
}
