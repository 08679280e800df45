//! Normal forms: the irreducible-word automaton, growth counts, the word
//! problem, and block structure of two-vertex systems.

mod ac;
mod blocks;

use std::collections::{BTreeSet, HashMap};

pub use ac::{ac_length_oracle, segment_count, AcLengthOracle, MAX_AC_RADIUS};
pub use blocks::{block_decompose, Block, BlockDecomposition, LetterClass, TwoBundleLayout};

use crate::error::{Error, Result};
use crate::kb::{check_complete, Verdict};
use crate::matcher::ROOT;
use crate::reduce::reduce;
use crate::system::RewritingSystem;
use crate::word::{Letter, Word};

const DEAD: u32 = u32::MAX;

/// Accepts exactly the words containing no rule lhs as a factor. States are
/// the non-matching states of the redex automaton; a transition into a
/// matching state is missing.
#[derive(Debug, Clone)]
pub struct IrreducibleAutomaton {
    letters: usize,
    delta: Vec<u32>,
}

impl IrreducibleAutomaton {
    pub fn new(sys: &RewritingSystem) -> IrreducibleAutomaton {
        let m = sys.matcher();
        let letters = m.letter_count();
        let mut index = vec![DEAD; m.state_count()];
        let mut live = 0;
        for s in 0..m.state_count() as u32 {
            if !m.is_match(s) {
                index[s as usize] = live;
                live += 1;
            }
        }
        let mut delta = Vec::with_capacity(live as usize * letters);
        for s in (0..m.state_count() as u32).filter(|&s| !m.is_match(s)) {
            for l in 0..letters as u32 {
                delta.push(index[m.step(s, Letter::from_index(l)) as usize]);
            }
        }
        debug_assert_eq!(index[ROOT as usize], 0);
        IrreducibleAutomaton { letters, delta }
    }

    pub fn state_count(&self) -> usize {
        self.delta.len() / self.letters.max(1)
    }

    fn step(&self, state: u32, letter: Letter) -> u32 {
        self.delta[state as usize * self.letters + letter.index()]
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut state = 0;
        for &l in word {
            state = self.step(state, l);
            if state == DEAD {
                return false;
            }
        }
        true
    }

    /// Accepted words of each length `0..=max_len`.
    pub fn growth(&self, max_len: usize) -> Result<Vec<u128>> {
        let mut counts = vec![0u128; self.state_count()];
        counts[0] = 1;
        let mut out = vec![1];
        for len in 1..=max_len {
            let mut next = vec![0u128; counts.len()];
            for (s, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for l in 0..self.letters as u32 {
                    let t = self.step(s as u32, Letter::from_index(l));
                    if t != DEAD {
                        let slot = &mut next[t as usize];
                        *slot = slot.checked_add(c).ok_or(Error::CountOverflow(len))?;
                    }
                }
            }
            let total = next.iter().try_fold(0u128, |a, &c| a.checked_add(c)).ok_or(Error::CountOverflow(len))?;
            out.push(total);
            counts = next;
        }
        Ok(out)
    }

    /// All accepted words up to `max_len`, shortlex by letter index.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let mut layer = vec![(Vec::new(), 0u32)];
        let mut out = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, s) in &layer {
                for l in 0..self.letters as u32 {
                    let letter = Letter::from_index(l);
                    let t = self.step(*s, letter);
                    if t != DEAD {
                        let mut v = w.clone();
                        v.push(letter);
                        out.push(Word::from(v.clone()));
                        next.push((v, t));
                    }
                }
            }
            layer = next;
        }
        out
    }
}

pub fn build_automaton(sys: &RewritingSystem) -> IrreducibleAutomaton {
    IrreducibleAutomaton::new(sys)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries {
    pub counts: Vec<u128>,
    /// Set when the system could not be verified complete; the counts are
    /// then irreducible words, not necessarily group elements.
    pub warning: Option<String>,
}

impl GrowthSeries {
    /// One `len<TAB>count` line per length.
    pub fn lines(&self) -> Vec<String> {
        self.counts.iter().enumerate().map(|(len, c)| format!("{len}\t{c}")).collect()
    }
}

pub fn growth_series(sys: &RewritingSystem, max_len: usize, step_cap: usize) -> Result<GrowthSeries> {
    let report = check_complete(sys, step_cap);
    let warning = match report.verdict() {
        Verdict::Complete => None,
        Verdict::Refuted => Some(format!("system is not complete ({report}); counts are irreducible words only")),
        Verdict::Inconclusive => Some(format!("completeness unverified ({report}); counts are irreducible words only")),
    };
    let counts = IrreducibleAutomaton::new(sys).growth(max_len)?;
    Ok(GrowthSeries { counts, warning })
}

/// Normal forms reached from every word of length up to `max_len`, counted
/// by their own length. Exponential; kept as an oracle for the automaton.
pub fn brute_force_growth(sys: &RewritingSystem, max_len: usize, step_cap: usize) -> Result<Vec<u128>> {
    let letters: Vec<Letter> = sys.alphabet().letters().collect();
    let mut forms = BTreeSet::new();
    let mut layer = vec![Word::empty()];
    forms.insert(Word::empty());
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                forms.insert(reduce(&v, sys, step_cap)?);
                next.push(v);
            }
        }
        layer = next;
    }
    let mut counts = vec![0u128; max_len + 1];
    for f in forms.iter().filter(|f| f.len() <= max_len) {
        counts[f.len()] += 1;
    }
    Ok(counts)
}

/// Equal in the presented group iff the normal forms agree. Only meaningful
/// for a complete system.
pub fn words_equal(w1: &[Letter], w2: &[Letter], sys: &RewritingSystem, step_cap: usize) -> Result<bool> {
    Ok(reduce(w1, sys, step_cap)? == reduce(w2, sys, step_cap)?)
}

/// Groups words by normal form. Handy for checking that distinct
/// irreducible words stay distinct.
pub fn normal_form_classes<'a>(
    words: impl IntoIterator<Item = &'a Word>,
    sys: &RewritingSystem,
    step_cap: usize,
) -> Result<HashMap<Word, Vec<Word>>> {
    let mut classes: HashMap<Word, Vec<Word>> = HashMap::new();
    for w in words {
        classes.entry(reduce(w, sys, step_cap)?).or_default().push(w.clone());
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{free_abelian, integers, trivial_group};
    use crate::reduce::is_irreducible;

    #[test]
    fn free_group_automaton() {
        let sys = free_abelian(1);
        let a = IrreducibleAutomaton::new(&sys);
        assert!(a.accepts(&[]));
        assert!(a.accepts(&sys.parse_word("x x x").unwrap()));
        assert!(!a.accepts(&sys.parse_word("x x^-1").unwrap()));
        for w in IrreducibleAutomaton::new(&free_abelian(2)).enumerate(4) {
            assert!(is_irreducible(&w, &free_abelian(2)));
        }
    }

    #[test]
    fn fixture_growth() {
        assert_eq!(IrreducibleAutomaton::new(&integers()).growth(4).unwrap(), [1, 2, 2, 2, 2]);
        assert_eq!(IrreducibleAutomaton::new(&free_abelian(2)).growth(4).unwrap(), [1, 4, 8, 12, 16]);
        assert_eq!(IrreducibleAutomaton::new(&trivial_group()).growth(3).unwrap(), [1, 0, 0, 0]);
        assert_eq!(brute_force_growth(&free_abelian(2), 4, 1000).unwrap(), [1, 4, 8, 12, 16]);
    }

    #[test]
    fn growth_warns_on_incomplete_systems() {
        let a = std::sync::Arc::new(crate::word::Alphabet::new(["a", "b"]).unwrap());
        let broken = RewritingSystem::from_text_rules(a, &[("a b", "b"), ("a b", "a")]).unwrap();
        assert!(growth_series(&broken, 2, 100).unwrap().warning.is_some());
        let ok = growth_series(&integers(), 2, 100).unwrap();
        assert_eq!(ok.warning, None);
        assert_eq!(ok.lines(), ["0\t1", "1\t2", "2\t2"]);
    }

    #[test]
    fn overflow_is_reported() {
        let a = std::sync::Arc::new(crate::word::Alphabet::new((0..40).map(|i| format!("g{i}"))).unwrap());
        let free = RewritingSystem::new(a, Vec::new()).unwrap();
        assert!(matches!(IrreducibleAutomaton::new(&free).growth(40), Err(Error::CountOverflow(_))));
    }

    #[test]
    fn words_equal_in_z2() {
        let sys = free_abelian(2);
        let w = |s: &str| sys.parse_word(s).unwrap();
        assert!(words_equal(&w("x y"), &w("y x"), &sys, 100).unwrap());
        assert!(!words_equal(&w("x"), &w("y"), &sys, 100).unwrap());
    }
}
