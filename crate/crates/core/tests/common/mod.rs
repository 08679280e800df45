#![allow(dead_code)]

use cbrws::graph::{two_vertex, BundlePresentation};
use cbrws::word::{Letter, Word};
use cbrws::RewritingSystem;

/// Every word over `letters` of length `0..=max_len`, shortest first.
pub fn all_words(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &l in letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn two_vertex_presentation() -> BundlePresentation {
    BundlePresentation::new(&two_vertex(1, 1, 0)).unwrap()
}

pub fn letters(sys: &RewritingSystem, names: &[&str]) -> Vec<Letter> {
    names.iter().map(|n| sys.alphabet().parse_letter(n).unwrap()).collect()
}
