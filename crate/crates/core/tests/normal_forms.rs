//! Automaton, growth, word problem and block structure checks.

mod common;

use cbrws::graph::{free_abelian, integers, trivial_group, BundlePresentation};
use cbrws::normal::{
    block_decompose, brute_force_growth, segment_count, AcLengthOracle, IrreducibleAutomaton, LetterClass,
    TwoBundleLayout,
};
use cbrws::reduce::{is_irreducible, reduce};
use cbrws::word::{Letter, Word};
use cbrws::{words_equal, RewritingSystem};
use common::{all_words, two_vertex_presentation};
use proptest::prelude::*;

fn setup() -> (BundlePresentation, RewritingSystem, TwoBundleLayout) {
    let p = two_vertex_presentation();
    let sys = p.system();
    let layout = TwoBundleLayout::new(&p).unwrap();
    (p, sys, layout)
}

#[test]
fn automaton_agrees_with_engine() {
    let (_, sys, _) = setup();
    let automaton = IrreducibleAutomaton::new(&sys);
    let letters: Vec<Letter> = sys.alphabet().letters().collect();
    for w in all_words(&letters, 5) {
        assert_eq!(automaton.accepts(&w), is_irreducible(&w, &sys), "{}", sys.format_word(&w));
    }
    let listed = automaton.enumerate(5);
    let counted: u128 = automaton.growth(5).unwrap().iter().sum();
    assert_eq!(listed.len() as u128, counted);
}

#[test]
fn fixture_growth_matches_brute_force() {
    for (sys, expected) in [
        (integers(), vec![1, 2, 2, 2, 2]),
        (free_abelian(2), vec![1, 4, 8, 12, 16]),
        (trivial_group(), vec![1, 0, 0, 0, 0]),
    ] {
        let automaton = IrreducibleAutomaton::new(&sys).growth(4).unwrap();
        assert_eq!(automaton, expected);
        assert_eq!(brute_force_growth(&sys, 4, 1000).unwrap(), expected);
    }
    // Lattice points at taxicab distance n.
    let z3 = IrreducibleAutomaton::new(&free_abelian(3)).growth(5).unwrap();
    assert_eq!(z3, [1, 6, 18, 38, 66, 102]);
}

#[test]
fn two_vertex_word_problem() {
    let (_, sys, _) = setup();
    let w = |s: &str| sys.parse_word(s).unwrap();
    assert!(!words_equal(&w("a.v.1"), &w("b.v.1"), &sys, 1000).unwrap());
    assert!(words_equal(&w("a.v.1 b.v.1"), &w("x.w b.v.1 a.v.1"), &sys, 1000).unwrap());
}

#[test]
fn distinct_irreducible_words_are_distinct_elements() {
    let (_, sys, _) = setup();
    let words = IrreducibleAutomaton::new(&sys).enumerate(4);
    let mut forms: Vec<Word> = words.iter().map(|w| reduce(w, &sys, 1000).unwrap()).collect();
    assert_eq!(forms, words);
    forms.sort();
    forms.dedup();
    assert_eq!(forms.len(), words.len());
}

proptest! {
    #[test]
    fn reduction_is_a_homomorphism(a in prop::collection::vec(0u32..12, 0..=5), b in prop::collection::vec(0u32..12, 0..=5)) {
        let (_, sys, _) = setup();
        let a: Word = a.into_iter().map(Letter::from_index).collect();
        let b: Word = b.into_iter().map(Letter::from_index).collect();
        let ra = reduce(&a, &sys, 10_000).unwrap();
        let rb = reduce(&b, &sys, 10_000).unwrap();
        prop_assert_eq!(reduce(&ra.concat(&rb), &sys, 10_000).unwrap(), reduce(&a.concat(&b), &sys, 10_000).unwrap());
    }
}

/// Irreducible words over `{a, b, y}` not ending in `y`.
fn in_a_mod_x(w: &Word, layout: &TwoBundleLayout) -> bool {
    w.iter().all(|&l| matches!(layout.class(l), LetterClass::A | LetterClass::Y))
        && w.last().map(|&l| layout.class(l)) != Some(LetterClass::Y)
}

fn in_x(w: &Word, layout: &TwoBundleLayout) -> bool {
    let split = w.iter().position(|&l| layout.class(l) == LetterClass::X).unwrap_or(w.len());
    w[..split].iter().all(|&l| layout.class(l) == LetterClass::Y) && w[split..].iter().all(|&l| layout.class(l) == LetterClass::X)
}

fn in_x_mod_c(w: &Word, layout: &TwoBundleLayout) -> bool {
    w.iter().all(|&l| matches!(layout.class(l), LetterClass::C | LetterClass::X))
        && w.first().map(|&l| layout.class(l)) != Some(LetterClass::X)
}

#[test]
fn coset_representatives_are_distinct() {
    let (_, sys, layout) = setup();
    let reps: Vec<Word> =
        IrreducibleAutomaton::new(&sys).enumerate(5).into_iter().filter(|w| in_a_mod_x(w, &layout)).collect();
    assert!(reps.len() > 100);
    for (i, u) in reps.iter().enumerate() {
        for v in &reps[i + 1..] {
            let q = reduce(&u.formal_inverse().concat(v), &sys, 10_000).unwrap();
            assert!(!in_x(&q, &layout), "{} and {} share a coset", sys.format_word(u), sys.format_word(v));
        }
    }
}

/// Fewest blocks over every split of `w` into membership-valid triples.
fn min_blocks(w: &[Letter], layout: &TwoBundleLayout) -> Option<usize> {
    let n = w.len();
    let mut best = vec![None::<usize>; n + 1];
    best[0] = Some(0);
    for start in 0..n {
        let Some(k) = best[start] else { continue };
        for i in start..=n {
            if !in_a_mod_x(&Word::from(&w[start..i]), layout) {
                continue;
            }
            for j in i..=n {
                if !in_x(&Word::from(&w[i..j]), layout) {
                    continue;
                }
                for e in j.max(start + 1)..=n {
                    if in_x_mod_c(&Word::from(&w[j..e]), layout) {
                        best[e] = Some(best[e].map_or(k + 1, |b: usize| b.min(k + 1)));
                    }
                }
            }
        }
    }
    best[n]
}

#[test]
fn greedy_blocks_are_minimal_and_maximal() {
    let (_, sys, layout) = setup();
    for theta in IrreducibleAutomaton::new(&sys).enumerate(5) {
        let d = block_decompose(&theta, &sys, &layout).unwrap();
        assert_eq!(d.concat(), theta);
        assert_eq!(Some(d.k()), min_blocks(&theta, &layout), "{}", sys.format_word(&theta));
        for (i, b) in d.blocks.iter().enumerate() {
            assert!(in_a_mod_x(&b.u, &layout) && in_x(&b.v, &layout) && in_x_mod_c(&b.w, &layout));
            // A block whose v is only y's and whose w is empty must end the word.
            let only_y = !b.v.is_empty() && b.v.iter().all(|&l| layout.class(l) == LetterClass::Y);
            if only_y && b.w.is_empty() {
                assert_eq!(i + 1, d.k());
            }
            // A block whose w ends in x must end the word.
            if b.w.last().map(|&l| layout.class(l)) == Some(LetterClass::X) {
                assert_eq!(i + 1, d.k());
            }
        }
    }
}

#[test]
fn block_count_matches_ac_length_at_small_radius() {
    let (_, sys, layout) = setup();
    let oracle = AcLengthOracle::new(&sys, &layout, 4, 10_000).unwrap();
    let mut checked = 0;
    for theta in IrreducibleAutomaton::new(&sys).enumerate(4) {
        let k = block_decompose(&theta, &sys, &layout).unwrap().k();
        assert!(segment_count(&theta, &layout) >= k);
        if let Some(ac) = oracle.lookup(&theta) {
            assert_eq!(ac, k, "{}", sys.format_word(&theta));
            checked += 1;
        }
    }
    assert!(checked > 1000);
}
