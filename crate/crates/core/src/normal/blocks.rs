//! Block structure of irreducible words for a two-vertex graph: the blue
//! vertex group `A`, the red vertex group `C`, and the edge group `X`
//! generated by both fibers. In the two-vertex rules `x` is the blue fiber
//! (it moves right past blue surface letters) and `y` the red one, so
//! irreducible words in `X` read `y^m x^n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BundlePresentation, Color};
use crate::reduce::is_irreducible;
use crate::system::RewritingSystem;
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterClass {
    /// Surface letters of the blue vertex.
    A,
    /// Surface letters of the red vertex.
    C,
    /// Fiber of the red vertex.
    Y,
    /// Fiber of the blue vertex.
    X,
}

impl LetterClass {
    /// Letters of the `A` vertex group, fibers included.
    pub fn in_a(self) -> bool {
        self != LetterClass::C
    }

    pub fn in_c(self) -> bool {
        self != LetterClass::A
    }
}

/// Letter classes of a system generated from one blue and one red vertex
/// joined by a single edge.
#[derive(Debug, Clone)]
pub struct TwoBundleLayout {
    alphabet: std::sync::Arc<Alphabet>,
    classes: Vec<LetterClass>,
}

impl TwoBundleLayout {
    pub fn new(presentation: &BundlePresentation) -> Result<TwoBundleLayout> {
        let graph = presentation.graph();
        if graph.vertices.len() != 2 || graph.edges.len() != 1 || !graph.loops.is_empty() {
            return Err(Error::NotTwoBundle);
        }
        let letters = presentation.letters();
        let mut classes = vec![LetterClass::A; presentation.alphabet().letter_count()];
        for v in 0..2 {
            let blue = presentation.coloring().color(v) == Color::Blue;
            let (surface, fiber) = if blue { (LetterClass::A, LetterClass::X) } else { (LetterClass::C, LetterClass::Y) };
            for l in [letters.fiber[v], letters.fiber[v].inverse()] {
                classes[l.index()] = fiber;
            }
            for &(a, b) in &letters.surface[v] {
                for l in [a, a.inverse(), b, b.inverse()] {
                    classes[l.index()] = surface;
                }
            }
        }
        Ok(TwoBundleLayout { alphabet: presentation.alphabet().clone(), classes })
    }

    pub fn alphabet(&self) -> &std::sync::Arc<Alphabet> {
        &self.alphabet
    }

    pub fn class(&self, letter: Letter) -> LetterClass {
        self.classes[letter.index()]
    }
}

/// One `(u, v, w)` triple: `u` in `L(A/X)`, `v` in `L(X)`, `w` in `L(X\C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub u: Word,
    pub v: Word,
    pub w: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn concat(&self) -> Word {
        self.blocks.iter().flat_map(|b| b.u.iter().chain(b.v.iter()).chain(b.w.iter())).copied().collect()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayBlocks<'a> {
        DisplayBlocks { blocks: self, alphabet }
    }
}

/// `[u | v | w]` per block, space separated; empty words print as `1`.
pub struct DisplayBlocks<'a> {
    blocks: &'a BlockDecomposition,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayBlocks<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.alphabet;
        for (i, b) in self.blocks.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "[{} | {} | {}]", a.display(&b.u), a.display(&b.v), a.display(&b.w))?;
        }
        Ok(())
    }
}

/// Greedy left-to-right parse `θ = u_1 v_1 w_1 ... u_k v_k w_k` with `u_i`
/// and `w_i` maximal. `u` takes the longest run over `A` and `y`, handing any
/// trailing `y`s to `v`; `v` then takes every following `x`; `w` runs over
/// `C` and `x` and so never starts with `x`.
pub fn block_decompose(theta: &[Letter], sys: &RewritingSystem, layout: &TwoBundleLayout) -> Result<BlockDecomposition> {
    if !is_irreducible(theta, sys) {
        return Err(Error::Reducible);
    }
    let class = |i: usize| layout.class(theta[i]);
    let mut blocks = Vec::new();
    let mut pos = 0;
    while pos < theta.len() {
        let start = pos;
        let mut end = pos;
        while end < theta.len() && matches!(class(end), LetterClass::A | LetterClass::Y) {
            end += 1;
        }
        let mut u_end = end;
        while u_end > start && class(u_end - 1) == LetterClass::Y {
            u_end -= 1;
        }
        while end < theta.len() && class(end) == LetterClass::X {
            end += 1;
        }
        let v_end = end;
        while end < theta.len() && matches!(class(end), LetterClass::C | LetterClass::X) {
            end += 1;
        }
        if end == start {
            return Err(Error::BlockParse(start));
        }
        blocks.push(Block {
            u: Word::from(&theta[start..u_end]),
            v: Word::from(&theta[u_end..v_end]),
            w: Word::from(&theta[v_end..end]),
        });
        pos = end;
    }
    let d = BlockDecomposition { blocks };
    check_blocks(&d, layout).map_err(|_| Error::BlockParse(0))?;
    debug_assert_eq!(&d.concat()[..], theta);
    Ok(d)
}

/// Membership and maximality conditions. Returns the index of the first
/// offending block.
pub(crate) fn check_blocks(d: &BlockDecomposition, layout: &TwoBundleLayout) -> std::result::Result<(), usize> {
    use LetterClass::*;
    let classes = |w: &Word| w.iter().map(|&l| layout.class(l)).collect::<Vec<_>>();
    for (i, b) in d.blocks.iter().enumerate() {
        let (u, v, w) = (classes(&b.u), classes(&b.v), classes(&b.w));
        let u_ok = u.iter().all(|c| matches!(c, A | Y)) && u.last() != Some(&Y);
        let split = v.iter().position(|&c| c == X).unwrap_or(v.len());
        let v_ok = v[..split].iter().all(|&c| c == Y) && v[split..].iter().all(|&c| c == X);
        let w_ok = w.iter().all(|c| matches!(c, C | X)) && w.first() != Some(&X);
        let nonempty = !(b.u.is_empty() && b.v.is_empty() && b.w.is_empty());
        // u_{i+1} maximal: w_i may not end a block that the next u could
        // have absorbed, i.e. the next block starts with an A-side letter
        // only if w_i or v_i blocks the way.
        let next_ok = match d.blocks.get(i + 1) {
            Some(n) => {
                let first = n.u.first().or(n.v.first()).or(n.w.first()).map(|&l| layout.class(l));
                match first {
                    Some(A) | Some(Y) => !b.w.is_empty() || (!b.v.is_empty() && split < v.len()),
                    Some(X) | Some(C) => false,
                    None => false,
                }
            }
            None => true,
        };
        if !(u_ok && v_ok && w_ok && nonempty && next_ok) {
            return Err(i);
        }
    }
    Ok(())
}
