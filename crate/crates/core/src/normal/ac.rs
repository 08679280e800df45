//! Bounded search for AC-length: the least `k` with `g` in `(AC)^k`.

use std::collections::HashMap;

use super::blocks::TwoBundleLayout;
use crate::error::{Error, Result};
use crate::reduce::reduce;
use crate::system::RewritingSystem;
use crate::word::{Letter, Word};

pub const MAX_AC_RADIUS: usize = 6;

/// Least `k` such that `word`, read letter by letter, splits as
/// `A_1 C_1 ... A_k C_k` with every `A_i` over `A`-group letters and every
/// `C_i` over `C`-group letters. Fibers belong to both. Greedy maximal
/// factors are optimal for this kind of covering.
pub fn segment_count(word: &[Letter], layout: &TwoBundleLayout) -> usize {
    let mut factors: usize = 0;
    let mut pos = 0;
    let mut on_a = true;
    while pos < word.len() {
        while pos < word.len() && (if on_a { layout.class(word[pos]).in_a() } else { layout.class(word[pos]).in_c() }) {
            pos += 1;
        }
        factors += 1;
        on_a = !on_a;
    }
    factors.div_ceil(2)
}

/// Every freely reduced word up to `radius` letters is reduced to normal
/// form; each normal form keeps the smallest segment count among the words
/// that reach it. The result is an upper bound on AC-length that is exact
/// whenever some minimal factorization has at most `radius` letters. A
/// normal form never reached reports `None`.
#[derive(Debug, Clone)]
pub struct AcLengthOracle {
    radius: usize,
    best: HashMap<Word, usize>,
}

impl AcLengthOracle {
    pub fn new(sys: &RewritingSystem, layout: &TwoBundleLayout, radius: usize, step_cap: usize) -> Result<AcLengthOracle> {
        if radius > MAX_AC_RADIUS {
            return Err(Error::RadiusTooLarge { radius, limit: MAX_AC_RADIUS });
        }
        let letters: Vec<Letter> = sys.alphabet().letters().collect();
        let mut oracle = AcLengthOracle { radius, best: HashMap::new() };
        let mut buf = Vec::with_capacity(radius);
        oracle.visit(&mut buf, &letters, sys, layout, step_cap)?;
        Ok(oracle)
    }

    fn visit(
        &mut self,
        buf: &mut Vec<Letter>,
        letters: &[Letter],
        sys: &RewritingSystem,
        layout: &TwoBundleLayout,
        step_cap: usize,
    ) -> Result<()> {
        let nf = reduce(buf, sys, step_cap)?;
        let k = segment_count(buf, layout);
        self.best.entry(nf).and_modify(|b| *b = (*b).min(k)).or_insert(k);
        if buf.len() == self.radius {
            return Ok(());
        }
        for &l in letters {
            if buf.last() == Some(&l.inverse()) {
                continue;
            }
            buf.push(l);
            self.visit(buf, letters, sys, layout, step_cap)?;
            buf.pop();
        }
        Ok(())
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Distinct normal forms reached.
    pub fn len(&self) -> usize {
        self.best.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best.is_empty()
    }

    /// Looks up an already reduced word.
    pub fn lookup(&self, normal_form: &[Letter]) -> Option<usize> {
        self.best.get(normal_form).copied()
    }

    pub fn length(&self, g: &[Letter], sys: &RewritingSystem, step_cap: usize) -> Result<Option<usize>> {
        Ok(self.lookup(&reduce(g, sys, step_cap)?))
    }
}

/// One-shot form of [`AcLengthOracle`].
pub fn ac_length_oracle(
    g: &[Letter],
    sys: &RewritingSystem,
    layout: &TwoBundleLayout,
    radius: usize,
    step_cap: usize,
) -> Result<Option<usize>> {
    AcLengthOracle::new(sys, layout, radius, step_cap)?.length(g, sys, step_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BundleGraph, BundlePresentation};

    fn setup() -> (RewritingSystem, TwoBundleLayout) {
        let g = BundleGraph::new().vertex("v", 1).vertex("w", 1).edge("e", "v", "w", 0);
        let p = BundlePresentation::new(&g).unwrap();
        (p.system(), TwoBundleLayout::new(&p).unwrap())
    }

    #[test]
    fn segment_counts() {
        let (sys, layout) = setup();
        let k = |s: &str| segment_count(&sys.parse_word(s).unwrap(), &layout);
        assert_eq!(k(""), 0);
        assert_eq!(k("a.v.1"), 1);
        assert_eq!(k("a.w.1"), 1);
        assert_eq!(k("a.w.1 a.v.1"), 2);
        assert_eq!(k("a.v.1 x.w x.v a.w.1"), 1);
        assert_eq!(k("x.v a.w.1 x.w a.v.1 a.w.1"), 2);
    }

    #[test]
    fn oracle_examples() {
        let (sys, layout) = setup();
        let oracle = AcLengthOracle::new(&sys, &layout, 3, 10_000).unwrap();
        let len = |s: &str| oracle.length(&sys.parse_word(s).unwrap(), &sys, 10_000).unwrap();
        assert_eq!(len(""), Some(0));
        assert_eq!(len("a.v.1"), Some(1));
        assert_eq!(len("a.w.1 a.v.1"), Some(2));
        assert_eq!(len("a.v.1 a.v.1 a.v.1 a.v.1"), None);
        assert!(matches!(AcLengthOracle::new(&sys, &layout, 7, 10), Err(Error::RadiusTooLarge { .. })));
    }
}
