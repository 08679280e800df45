//! Multi-pattern factor matching over letters.
//!
//! An Aho-Corasick automaton built over the distinct left-hand sides of a
//! rule list, compiled to a dense DFA (one transition per state and letter).
//! State `0` is the root. Each state carries the full list of patterns that
//! end there, already closed under suffix links.

use std::collections::{HashMap, VecDeque};

use crate::word::Letter;

#[derive(Debug, Clone)]
pub struct PatternAutomaton {
    letters: usize,
    delta: Vec<u32>,
    /// Patterns whose occurrence ends at this state, longest first.
    outputs: Vec<Vec<u32>>,
    /// Distinct patterns, by id.
    patterns: Vec<Vec<Letter>>,
    /// Rule indices sharing each pattern, ascending.
    rules: Vec<Vec<usize>>,
    max_len: usize,
}

/// One occurrence of a rule lhs as a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub position: usize,
    pub rule: usize,
}

pub const ROOT: u32 = 0;

impl PatternAutomaton {
    /// Builds the automaton for `lhs_list[i]` labelled as rule `i`.
    /// `letters` is the number of distinct letters (twice the generator count).
    pub fn new<'a, I>(letters: usize, lhs_list: I) -> PatternAutomaton
    where
        I: IntoIterator<Item = &'a [Letter]>,
    {
        let mut trie: Vec<HashMap<Letter, u32>> = vec![HashMap::new()];
        let mut terminal: Vec<Option<u32>> = vec![None];
        let mut depth = vec![0usize];
        let mut patterns: Vec<Vec<Letter>> = Vec::new();
        let mut rules: Vec<Vec<usize>> = Vec::new();

        for (rule, lhs) in lhs_list.into_iter().enumerate() {
            assert!(!lhs.is_empty(), "empty pattern");
            let mut state = ROOT;
            for &letter in lhs {
                assert!(letter.index() < letters, "letter outside automaton alphabet");
                state = match trie[state as usize].get(&letter) {
                    Some(&next) => next,
                    None => {
                        let next = trie.len() as u32;
                        trie[state as usize].insert(letter, next);
                        trie.push(HashMap::new());
                        terminal.push(None);
                        depth.push(depth[state as usize] + 1);
                        next
                    }
                };
            }
            match terminal[state as usize] {
                Some(id) => rules[id as usize].push(rule),
                None => {
                    terminal[state as usize] = Some(patterns.len() as u32);
                    patterns.push(lhs.to_vec());
                    rules.push(vec![rule]);
                }
            }
        }

        let states = trie.len();
        let mut delta = vec![ROOT; states * letters];
        let mut fail = vec![ROOT; states];
        let mut outputs: Vec<Vec<u32>> = vec![Vec::new(); states];
        let mut queue = VecDeque::new();

        for l in 0..letters {
            if let Some(&child) = trie[0].get(&Letter::from_index(l as u32)) {
                delta[l] = child;
                queue.push_back(child);
            }
        }
        // BFS order guarantees fail targets are finished before their users.
        while let Some(state) = queue.pop_front() {
            let s = state as usize;
            let mut out = Vec::new();
            if let Some(id) = terminal[s] {
                out.push(id);
            }
            out.extend_from_slice(&outputs[fail[s] as usize]);
            outputs[s] = out;
            for l in 0..letters {
                let fallback = delta[fail[s] as usize * letters + l];
                match trie[s].get(&Letter::from_index(l as u32)) {
                    Some(&child) => {
                        delta[s * letters + l] = child;
                        fail[child as usize] = fallback;
                        queue.push_back(child);
                    }
                    None => delta[s * letters + l] = fallback,
                }
            }
        }

        let max_len = patterns.iter().map(Vec::len).max().unwrap_or(0);
        PatternAutomaton { letters, delta, outputs, patterns, rules, max_len }
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn letter_count(&self) -> usize {
        self.letters
    }

    pub fn max_pattern_len(&self) -> usize {
        self.max_len
    }

    #[inline]
    pub fn step(&self, state: u32, letter: Letter) -> u32 {
        self.delta[state as usize * self.letters + letter.index()]
    }

    /// True if some pattern ends at `state`.
    #[inline]
    pub fn is_match(&self, state: u32) -> bool {
        !self.outputs[state as usize].is_empty()
    }

    pub fn outputs(&self, state: u32) -> &[u32] {
        &self.outputs[state as usize]
    }

    pub fn pattern(&self, id: u32) -> &[Letter] {
        &self.patterns[id as usize]
    }

    pub fn pattern_rules(&self, id: u32) -> &[usize] {
        &self.rules[id as usize]
    }

    /// Leftmost occurrence, scanning from `from` with the automaton already in
    /// `states[from]`. Ties at one position go to the longest pattern, then to
    /// the lowest rule index. `states` is truncated to `from + 1` and then
    /// extended with the states visited, so callers may resume later from any
    /// prefix that is still unchanged.
    pub fn leftmost(&self, word: &[Letter], from: usize, states: &mut Vec<u32>) -> Option<Occurrence> {
        states.truncate(from + 1);
        let mut best: Option<(usize, usize, usize)> = None; // (start, len, rule)
        let mut i = from;
        while i < word.len() {
            if let Some((start, _, _)) = best {
                if i >= start + self.max_len {
                    break;
                }
            }
            let state = self.step(states[i], word[i]);
            states.push(state);
            for &id in self.outputs(state) {
                let len = self.patterns[id as usize].len();
                let start = i + 1 - len;
                let rule = self.rules[id as usize][0];
                let better = match best {
                    None => true,
                    Some((s, l, r)) => (start, std::cmp::Reverse(len), rule) < (s, std::cmp::Reverse(l), r),
                };
                if better {
                    best = Some((start, len, rule));
                }
            }
            i += 1;
        }
        best.map(|(position, _, rule)| Occurrence { position, rule })
    }

    /// Every occurrence of every rule lhs, ordered by position then rule.
    pub fn all_occurrences(&self, word: &[Letter]) -> Vec<Occurrence> {
        let mut found = Vec::new();
        let mut state = ROOT;
        for (i, &letter) in word.iter().enumerate() {
            state = self.step(state, letter);
            for &id in self.outputs(state) {
                let position = i + 1 - self.patterns[id as usize].len();
                found.extend(self.rules[id as usize].iter().map(|&rule| Occurrence { position, rule }));
            }
        }
        found.sort_unstable();
        found
    }

    /// True if no pattern occurs in `word`.
    pub fn avoids_all(&self, word: &[Letter]) -> bool {
        let mut state = ROOT;
        for &letter in word {
            state = self.step(state, letter);
            if self.is_match(state) {
                return false;
            }
        }
        true
    }
}
