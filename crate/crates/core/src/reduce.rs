//! Rewriting words to irreducible form.
//!
//! The deterministic strategy rewrites the leftmost redex; ties at one
//! position go to the longest lhs, then the lowest rule index.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::matcher::{Occurrence, ROOT};
use crate::system::{Rule, RewritingSystem};
use crate::word::{Letter, Word};

pub const DEFAULT_STEP_CAP: usize = 1_000_000;
const TRACE_LEN: usize = 16;

pub type Redex = Occurrence;

pub fn find_redex(word: &[Letter], sys: &RewritingSystem) -> Option<Redex> {
    let mut states = vec![ROOT];
    sys.matcher().leftmost(word, 0, &mut states)
}

pub fn is_irreducible(word: &[Letter], sys: &RewritingSystem) -> bool {
    sys.matcher().avoids_all(word)
}

/// Replaces the occurrence of `rule.lhs` at `position` by `rule.rhs`.
pub fn rewrite_once(word: &[Letter], position: usize, rule: &Rule) -> Result<Word> {
    let end = position + rule.lhs.len();
    if end > word.len() || word[position..end] != rule.lhs[..] {
        return Err(Error::FactorMismatch { position });
    }
    let mut out = Vec::with_capacity(word.len() - rule.lhs.len() + rule.rhs.len());
    out.extend_from_slice(&word[..position]);
    out.extend_from_slice(&rule.rhs);
    out.extend_from_slice(&word[end..]);
    Ok(Word::from(out))
}

/// A normal form together with the number of rewriting steps taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub word: Word,
    pub steps: usize,
}

pub fn reduce(word: &[Letter], sys: &RewritingSystem, step_cap: usize) -> Result<Word> {
    reduce_counted(word, sys, step_cap).map(|r| r.word)
}

pub fn reduce_counted(word: &[Letter], sys: &RewritingSystem, step_cap: usize) -> Result<Reduction> {
    let matcher = sys.matcher();
    let reach = matcher.max_pattern_len().saturating_sub(1);
    let mut w = word.to_vec();
    let mut states = Vec::with_capacity(w.len() + 1);
    states.push(ROOT);
    let mut from = 0;
    let mut steps = 0;
    let mut trace = VecDeque::with_capacity(TRACE_LEN);

    // Invariant: no redex of `w` starts before `from`.
    while let Some(Occurrence { position, rule }) = matcher.leftmost(&w, from, &mut states) {
        if steps == step_cap {
            return Err(Error::StepCapExceeded {
                steps,
                last: sys.format_word(&w),
                trace: trace.into_iter().collect(),
            });
        }
        let applied = sys.rule(rule);
        w.splice(position..position + applied.lhs.len(), applied.rhs.iter().copied());
        steps += 1;
        if trace.len() == TRACE_LEN {
            trace.pop_front();
        }
        trace.push_back((position, rule));
        from = position.saturating_sub(reach);
    }
    Ok(Reduction { word: Word::from(w), steps })
}

/// Reduces by choosing uniformly among all redexes at every step.
pub fn reduce_random<R: Rng + ?Sized>(
    word: &[Letter],
    sys: &RewritingSystem,
    rng: &mut R,
    step_cap: usize,
) -> Result<Word> {
    let mut w = Word::from(word);
    for _ in 0..step_cap {
        let occurrences = sys.matcher().all_occurrences(&w);
        if occurrences.is_empty() {
            return Ok(w);
        }
        let Occurrence { position, rule } = occurrences[rng.gen_range(0..occurrences.len())];
        w = rewrite_once(&w, position, sys.rule(rule))?;
    }
    if is_irreducible(&w, sys) {
        return Ok(w);
    }
    Err(Error::StepCapExceeded { steps: step_cap, last: sys.format_word(&w), trace: Vec::new() })
}

/// One word per match of any rule anywhere in `word`.
pub fn all_reduction_successors(word: &[Letter], sys: &RewritingSystem) -> BTreeSet<Word> {
    sys.matcher()
        .all_occurrences(word)
        .into_iter()
        .map(|Occurrence { position, rule }| {
            rewrite_once(word, position, sys.rule(rule)).expect("occurrence found by matcher")
        })
        .collect()
}
