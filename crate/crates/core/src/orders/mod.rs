//! Termination orders: the recursive path ordering on words lifted from a
//! letter precedence, and the tiered ψ order used when some letters are
//! excluded from the RPO.

mod psi;

use std::fmt;
use std::sync::Arc;

pub use psi::{disorder, psi_greater, psi_profile, DisorderCache, PsiProfile, SystemPartition, DEFAULT_LENGTH_CAP};

use crate::error::{Error, Result};
use crate::graph::{BundleGraph, BundlePresentation, Color};
use crate::word::{Alphabet, Letter};

/// A well-founded partial order on letters given by integer tiers: a letter
/// is greater than another iff its tier is strictly higher. Letters sharing
/// a tier are incomparable; letters without a tier compare to nothing.
#[derive(Debug, Clone)]
pub struct Precedence {
    alphabet: Arc<Alphabet>,
    ranks: Vec<Option<u32>>,
}

impl Precedence {
    /// Tiers listed from greatest to least.
    pub fn from_tiers(alphabet: Arc<Alphabet>, tiers: &[Vec<Letter>]) -> Precedence {
        let mut ranks = vec![None; alphabet.letter_count()];
        for (i, tier) in tiers.iter().enumerate() {
            for letter in tier {
                ranks[letter.index()] = Some((tiers.len() - i) as u32);
            }
        }
        Precedence { alphabet, ranks }
    }

    /// A total order, greatest first.
    pub fn from_chain(alphabet: Arc<Alphabet>, chain: &[Letter]) -> Precedence {
        let tiers: Vec<Vec<Letter>> = chain.iter().map(|&l| vec![l]).collect();
        Precedence::from_tiers(alphabet, &tiers)
    }

    /// `g1^-1 > g1 > g2^-1 > g2 > ...` in declaration order.
    pub fn declaration_order(alphabet: Arc<Alphabet>) -> Precedence {
        let chain: Vec<Letter> = alphabet.letters().map(|l| l.inverse()).collect();
        Precedence::from_chain(alphabet, &chain)
    }

    /// Parses `x^-1 > x > y z > y^-1`: tiers separated by `>`, greatest
    /// first; letters within one tier are incomparable. Without any `>`,
    /// every token is its own tier.
    pub fn parse(alphabet: Arc<Alphabet>, text: &str) -> Result<Precedence> {
        let groups: Vec<&str> = if text.contains('>') { text.split('>').collect() } else { text.split_whitespace().collect() };
        let mut tiers = Vec::new();
        for group in groups {
            let tier = group.split_whitespace().map(|t| alphabet.parse_letter(t)).collect::<Result<Vec<_>>>()?;
            if !tier.is_empty() {
                tiers.push(tier);
            }
        }
        Ok(Precedence::from_tiers(alphabet, &tiers))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rank(&self, letter: Letter) -> Option<u32> {
        self.ranks.get(letter.index()).copied().flatten()
    }

    pub fn is_ranked(&self, letter: Letter) -> bool {
        self.rank(letter).is_some()
    }

    fn require(&self, letter: Letter) -> Result<u32> {
        self.rank(letter).ok_or_else(|| {
            let name = if self.alphabet.contains(letter) { self.alphabet.letter_name(letter) } else { format!("#{}", letter.index()) };
            Error::UnrankedLetter(name)
        })
    }

    pub fn greater(&self, a: Letter, b: Letter) -> Result<bool> {
        Ok(self.require(a)? > self.require(b)?)
    }

    /// Tiers from greatest to least.
    pub fn tiers(&self) -> Vec<Vec<Letter>> {
        let top = self.ranks.iter().flatten().copied().max().unwrap_or(0);
        (1..=top)
            .rev()
            .map(|r| (0..self.ranks.len()).filter(|&i| self.ranks[i] == Some(r)).map(|i| Letter::from_index(i as u32)).collect())
            .filter(|tier: &Vec<Letter>| !tier.is_empty())
            .collect()
    }
}

impl fmt::Display for Precedence {
    /// One line per tier, greatest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, tier) in self.tiers().iter().enumerate() {
            let names: Vec<String> = tier.iter().map(|&l| self.alphabet.letter_name(l)).collect();
            writeln!(f, "{:>3}: {}", i + 1, names.join(" "))?;
        }
        Ok(())
    }
}

/// `u >_rpo v` for words.
///
/// `s1..sm > t1..tn` iff
/// 1. `s1 = t1` and `s2..sm > t2..tn`, or
/// 2. `s1 > t1` and `s1..sm > t2..tn`, or
/// 3. `s2..sm >= t1..tn`,
///
/// with every nonempty word greater than the empty word. Evaluated bottom-up
/// over suffix pairs.
pub fn rpo_greater(u: &[Letter], v: &[Letter], prec: &Precedence) -> Result<bool> {
    for &l in u.iter().chain(v) {
        prec.require(l)?;
    }
    let (m, n) = (u.len(), v.len());
    let width = n + 1;
    // gt[i * width + j]: u[i..] > v[j..];  eq likewise for equality.
    let mut gt = vec![false; (m + 1) * width];
    let mut eq = vec![false; (m + 1) * width];
    eq[m * width + n] = true;
    for i in (0..m).rev() {
        gt[i * width + n] = true;
        for j in (0..n).rev() {
            let (s, t) = (u[i], v[j]);
            eq[i * width + j] = s == t && eq[(i + 1) * width + j + 1];
            gt[i * width + j] = (s == t && gt[(i + 1) * width + j + 1])
                || (prec.greater(s, t)? && gt[i * width + j + 1])
                || gt[(i + 1) * width + j]
                || eq[(i + 1) * width + j];
        }
    }
    Ok(gt[0])
}

/// The letter precedence under which every rule of the restricted system
/// decreases. From the top: stable letters of red loops, red surface
/// letters, blue fiber inverses, red loop letters, blue fibers, blue surface
/// letters, blue loop letters, red fibers. Inverses sit directly above
/// their letters; several vertices or loops in one tier follow declaration
/// order. Blue stable letters are left unranked.
pub fn lemma_precedence(presentation: &BundlePresentation) -> Precedence {
    let graph = presentation.graph();
    let coloring = presentation.coloring();
    let letters = presentation.letters();
    let vertices = |color: Color| (0..graph.vertices.len()).filter(move |&v| coloring.color(v) == color);
    let loops = |color: Color| (0..graph.loops.len()).filter(move |&l| presentation.loop_color(l) == color);
    let both = |l: Letter| [l.inverse(), l];

    let mut chain = Vec::new();
    for l in loops(Color::Red) {
        chain.extend(both(letters.loops[l].t));
    }
    for w in vertices(Color::Red) {
        chain.extend(letters.surface[w].iter().flat_map(|&(a, b)| both(a).into_iter().chain(both(b))));
    }
    for v in vertices(Color::Blue) {
        chain.push(letters.fiber[v].inverse());
    }
    for l in loops(Color::Red) {
        chain.extend(both(letters.loops[l].r).into_iter().chain(both(letters.loops[l].s)));
    }
    for v in vertices(Color::Blue) {
        chain.push(letters.fiber[v]);
    }
    for v in vertices(Color::Blue) {
        chain.extend(letters.surface[v].iter().flat_map(|&(a, b)| both(a).into_iter().chain(both(b))));
    }
    for k in loops(Color::Blue) {
        chain.extend(both(letters.loops[k].r).into_iter().chain(both(letters.loops[k].s)));
    }
    for w in vertices(Color::Red) {
        chain.extend(both(letters.fiber[w]));
    }
    Precedence::from_chain(presentation.alphabet().clone(), &chain)
}

/// Validates `graph` and returns its lemma precedence.
pub fn lemma_precedence_for(graph: &BundleGraph) -> Result<Precedence> {
    Ok(lemma_precedence(&BundlePresentation::new(graph)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(tokens: &[&str], chain: &str) -> Precedence {
        let a = Arc::new(Alphabet::new(tokens.iter().copied()).unwrap());
        Precedence::parse(a, chain).unwrap()
    }

    fn gt(p: &Precedence, u: &str, v: &str) -> bool {
        let a = p.alphabet();
        rpo_greater(&a.parse_word(u).unwrap(), &a.parse_word(v).unwrap(), p).unwrap()
    }

    #[test]
    fn rpo_examples() {
        let p = setup(&["x", "y"], "x > y");
        assert!(gt(&p, "x", "y"));
        assert!(!gt(&p, "y", "x"));
        let p = setup(&["a", "b"], "a > b");
        assert!(!gt(&p, "a b", "a b"));
        assert!(gt(&p, "a", "b b b"));
        assert!(gt(&p, "a", ""));
        assert!(!gt(&p, "", ""));
        assert!(!gt(&p, "", "b"));
        let p = setup(&["xv", "av"], "xv > av");
        assert!(gt(&p, "xv av", "av xv"));
    }

    #[test]
    fn unranked_letters_are_errors() {
        let p = setup(&["x", "y", "t"], "x > y");
        let a = p.alphabet().clone();
        let e = rpo_greater(&a.parse_word("x t^-1").unwrap(), &a.parse_word("y").unwrap(), &p).unwrap_err();
        assert_eq!(e, Error::UnrankedLetter("t^-1".into()));
    }

    #[test]
    fn same_tier_letters_are_incomparable() {
        let p = setup(&["a", "b"], "a b");
        assert!(gt(&p, "a", "b"));
        let p = setup(&["a", "b"], "a b >");
        assert!(!gt(&p, "a", "b") && !gt(&p, "b", "a"));
    }

    #[test]
    fn parse_and_display_tiers() {
        let p = setup(&["x", "y"], "x^-1 > x > y^-1 y");
        assert_eq!(p.tiers().len(), 3);
        assert_eq!(p.to_string(), "  1: x^-1\n  2: x\n  3: y y^-1\n");
        let d = Precedence::declaration_order(p.alphabet().clone());
        assert_eq!(d.to_string().lines().next().unwrap(), "  1: x^-1");
    }

    #[test]
    fn lemma_chain_for_two_bundles() {
        let g = BundleGraph::new().vertex("v", 1).vertex("w", 1).edge("e", "v", "w", 0);
        let p = lemma_precedence_for(&g).unwrap();
        let order: Vec<String> = p.tiers().into_iter().map(|t| p.alphabet().letter_name(t[0])).collect();
        assert_eq!(
            order,
            [
                "a.w.1^-1", "a.w.1", "b.w.1^-1", "b.w.1", "x.v^-1", "x.v", "a.v.1^-1", "a.v.1", "b.v.1^-1",
                "b.v.1", "x.w^-1", "x.w"
            ]
        );
    }

    #[test]
    fn lemma_chain_puts_red_stable_letters_on_top() {
        let g = BundleGraph::new().vertex("v", 1).vertex("w", 1).edge("e", "v", "w", 0).add_loop("l", "w", 1).add_loop("k", "v", 1);
        let p = lemma_precedence_for(&g).unwrap();
        let a = p.alphabet().clone();
        let tiers = p.tiers();
        assert_eq!(a.letter_name(tiers[0][0]), "t.l^-1");
        assert_eq!(a.letter_name(tiers[1][0]), "t.l");
        assert!(!p.is_ranked(a.parse_letter("t.k").unwrap()));
        assert!(!p.is_ranked(a.parse_letter("t.k^-1").unwrap()));
    }

    #[test]
    fn unvalidated_graph_is_rejected() {
        let g = BundleGraph::new().vertex("v", 1).vertex("w", 1);
        assert!(lemma_precedence_for(&g).is_err());
    }
}
