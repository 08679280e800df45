//! The rewriting system of a graph of circle bundles.
//!
//! Generators are `x.<v>`, `a.<v>.<j>`, `b.<v>.<j>` per vertex and `r.<l>`,
//! `s.<l>`, `t.<l>` per loop. The boundary generators of each vertex group
//! are eliminated: `p_e` becomes `x_{τ(e)}` and `q_e` becomes
//! `x_{ι(e)} x_{τ(e)}^{-n_e}`.

use std::sync::Arc;

use super::{validate_and_color, BundleGraph, Color, Coloring};
use crate::error::{Error, Result};
use crate::orders::SystemPartition;
use crate::system::{RewritingSystem, Rule, RuleFamily};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopLetters {
    pub r: Letter,
    pub s: Letter,
    pub t: Letter,
}

/// Letters generated for each vertex and loop, indexed like the graph.
#[derive(Debug, Clone)]
pub struct GeneratedAlphabet {
    pub alphabet: Arc<Alphabet>,
    pub fiber: Vec<Letter>,
    /// `(a_{vj}, b_{vj})` for `j = 1..=g_v`.
    pub surface: Vec<Vec<(Letter, Letter)>>,
    pub loops: Vec<LoopLetters>,
}

impl GeneratedAlphabet {
    fn new(graph: &BundleGraph) -> Result<GeneratedAlphabet> {
        let mut alphabet = Alphabet::default();
        let mut fiber = Vec::new();
        let mut surface = Vec::new();
        for v in &graph.vertices {
            fiber.push(alphabet.add(format!("x.{}", v.id))?);
            let mut pairs = Vec::new();
            for j in 1..=v.genus {
                let a = alphabet.add(format!("a.{}.{j}", v.id))?;
                let b = alphabet.add(format!("b.{}.{j}", v.id))?;
                pairs.push((a, b));
            }
            surface.push(pairs);
        }
        let mut loops = Vec::new();
        for l in &graph.loops {
            loops.push(LoopLetters {
                r: alphabet.add(format!("r.{}", l.id))?,
                s: alphabet.add(format!("s.{}", l.id))?,
                t: alphabet.add(format!("t.{}", l.id))?,
            });
        }
        Ok(GeneratedAlphabet { alphabet: Arc::new(alphabet), fiber, surface, loops })
    }
}

fn word(parts: &[&[Letter]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn commutator(u: Letter, v: Letter) -> [Letter; 4] {
    [u, v, u.inverse(), v.inverse()]
}

/// A validated, colored graph together with its generated letters.
#[derive(Debug, Clone)]
pub struct BundlePresentation {
    graph: BundleGraph,
    coloring: Coloring,
    letters: GeneratedAlphabet,
    /// Loop indices attached to each vertex, in declaration order.
    loops_at: Vec<Vec<usize>>,
}

impl BundlePresentation {
    pub fn new(graph: &BundleGraph) -> Result<BundlePresentation> {
        let coloring = validate_and_color(graph)?;
        BundlePresentation::with_coloring(graph, coloring)
    }

    /// Uses a coloring produced by [`super::validate_and_color_rooted`].
    pub fn with_coloring(graph: &BundleGraph, coloring: Coloring) -> Result<BundlePresentation> {
        let letters = GeneratedAlphabet::new(graph)?;
        let mut loops_at = vec![Vec::new(); graph.vertices.len()];
        for (i, l) in graph.loops.iter().enumerate() {
            let v = graph.vertex_index(&l.vertex).ok_or_else(|| Error::UnknownVertex(l.vertex.clone()))?;
            loops_at[v].push(i);
        }
        Ok(BundlePresentation { graph: graph.clone(), coloring, letters, loops_at })
    }

    pub fn graph(&self) -> &BundleGraph {
        &self.graph
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn letters(&self) -> &GeneratedAlphabet {
        &self.letters
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.letters.alphabet
    }

    pub fn loops_at(&self, vertex: usize) -> &[usize] {
        &self.loops_at[vertex]
    }

    pub fn loop_vertex(&self, l: usize) -> usize {
        self.graph.vertex_index(&self.graph.loops[l].vertex).expect("validated")
    }

    pub fn loop_color(&self, l: usize) -> Color {
        self.coloring.color(self.loop_vertex(l))
    }

    fn vertex(&self, id: &str, expected: Color) -> Result<usize> {
        let v = self.graph.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))?;
        let actual = self.coloring.color(v);
        if actual != expected {
            return Err(Error::WrongColor { vertex: id.to_string(), expected: expected.name(), actual: actual.name() });
        }
        Ok(v)
    }

    /// Indices of the edges whose red end is `w`.
    fn edges_into(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.coloring.orientation.iter().enumerate().filter(move |(_, &(_, r))| r == w).map(|(e, _)| e)
    }

    fn edges_out_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.coloring.orientation.iter().enumerate().filter(move |(_, &(b, _))| b == v).map(|(e, _)| e)
    }

    fn n_w_index(&self, w: usize) -> i64 {
        self.edges_into(w).map(|e| self.graph.edges[e].twist).sum()
    }

    /// Sum of the twists of the edges ending at the red vertex `w`.
    pub fn n_w(&self, w: &str) -> Result<i64> {
        let w = self.vertex(w, Color::Red)?;
        Ok(self.n_w_index(w))
    }

    /// Loop letters `r_l s_l` of every loop at `v`, in declaration order.
    fn loop_boundary(&self, v: usize) -> Word {
        self.loops_at[v].iter().flat_map(|&l| [self.letters.loops[l].r, self.letters.loops[l].s]).collect()
    }

    fn lambda_index(&self, v: usize) -> Word {
        let mut w: Word = self.edges_out_of(v).map(|e| self.letters.fiber[self.coloring.orientation[e].1]).collect();
        w.extend(self.loop_boundary(v).iter());
        w
    }

    fn omega_index(&self, w: usize) -> Word {
        let mut word: Word = self.edges_into(w).map(|e| self.letters.fiber[self.coloring.orientation[e].0]).collect();
        word.extend(self.loop_boundary(w).iter());
        word
    }

    /// `Λ_v`: the red fibers across the edges leaving blue `v`, then `r_k s_k`
    /// for each loop at `v`.
    pub fn lambda_word(&self, v: &str) -> Result<Word> {
        let v = self.vertex(v, Color::Blue)?;
        Ok(self.lambda_index(v))
    }

    /// `Ω_w`: the blue fibers across the edges entering red `w`, then `r_l s_l`
    /// for each loop at `w`.
    pub fn omega_word(&self, w: &str) -> Result<Word> {
        let w = self.vertex(w, Color::Red)?;
        Ok(self.omega_index(w))
    }

    /// `∏_{j=g}^{2} [b_j, a_j]`, descending.
    fn descending_commutators(&self, v: usize) -> Word {
        self.letters.surface[v][1..].iter().rev().flat_map(|&(a, b)| commutator(b, a)).collect()
    }

    /// `∏_{j=2}^{g} [a_j, b_j]`, ascending.
    fn ascending_commutators(&self, v: usize) -> Word {
        self.letters.surface[v][1..].iter().flat_map(|&(a, b)| commutator(a, b)).collect()
    }

    /// Letters the fiber of `v` commutes with inside its own vertex group.
    fn vertex_letters(&self, v: usize) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.letters.surface[v].iter().flat_map(|&(a, b)| [a, b]).collect();
        out.extend(self.loop_boundary(v).iter());
        out
    }

    /// The full system, with every rule tagged by its schema family.
    pub fn system(&self) -> RewritingSystem {
        let alphabet = self.alphabet().clone();
        let mut rules = Vec::new();
        let mut push = |lhs: Word, rhs: Word, family| rules.push(Rule::tagged(lhs, rhs, family));
        let signs = [false, true];

        for z in (0..alphabet.len() as u32).map(Letter::positive) {
            push(word(&[&[z, z.inverse()]]), Word::empty(), RuleFamily::InverseCancellation);
            push(word(&[&[z.inverse(), z]]), Word::empty(), RuleFamily::InverseCancellation);
        }

        for color in [Color::Blue, Color::Red] {
            for v in (0..self.graph.vertices.len()).filter(|&v| self.coloring.color(v) == color) {
                let x = self.letters.fiber[v];
                for c in self.vertex_letters(v) {
                    for xi in signs {
                        for ci in signs {
                            let x = Letter::new(x.generator(), xi);
                            let c = Letter::new(c.generator(), ci);
                            match color {
                                Color::Blue => push(word(&[&[x, c]]), word(&[&[c, x]]), RuleFamily::BlueVertex),
                                Color::Red => push(word(&[&[c, x]]), word(&[&[x, c]]), RuleFamily::RedVertex),
                            }
                        }
                    }
                }
            }
        }

        for &(b, r) in &self.coloring.orientation {
            for bi in signs {
                for ri in signs {
                    let xb = Letter::new(self.letters.fiber[b].generator(), bi);
                    let xr = Letter::new(self.letters.fiber[r].generator(), ri);
                    push(word(&[&[xb, xr]]), word(&[&[xr, xb]]), RuleFamily::Edge);
                }
            }
        }

        for v in (0..self.graph.vertices.len()).filter(|&v| self.coloring.color(v) == Color::Blue) {
            let (a, b) = self.letters.surface[v][0];
            let (ai, bi) = (a.inverse(), b.inverse());
            let lam = self.lambda_index(v);
            let lam_inv = lam.formal_inverse();
            let desc = self.descending_commutators(v);
            let asc = self.ascending_commutators(v);
            let f = RuleFamily::BlueAmalgam;
            push(word(&[&[a, b]]), word(&[&lam, &desc, &[b, a]]), f);
            push(word(&[&[a, bi]]), word(&[&[bi], &asc, &lam_inv, &[a]]), f);
            push(word(&[&[ai], &lam, &desc, &[b]]), word(&[&[b, ai]]), f);
            push(word(&[&[ai, bi]]), word(&[&[bi, ai], &lam, &desc]), f);
        }

        for w in (0..self.graph.vertices.len()).filter(|&w| self.coloring.color(w) == Color::Red) {
            let (a, b) = self.letters.surface[w][0];
            let (ai, bi) = (a.inverse(), b.inverse());
            let om = self.omega_index(w);
            let om_inv = om.formal_inverse();
            let desc = self.descending_commutators(w);
            let asc = self.ascending_commutators(w);
            let n = self.n_w_index(w);
            let x = self.letters.fiber[w];
            let (x_pos, x_neg) = (x.pow(n), x.pow(-n));
            let f = RuleFamily::RedAmalgam;
            push(word(&[&[a, b]]), word(&[&x_neg, &om, &desc, &[b, a]]), f);
            push(word(&[&[a, bi]]), word(&[&x_pos, &[bi], &asc, &om_inv, &[a]]), f);
            push(word(&[&[ai], &om, &desc, &[b]]), word(&[&x_pos, &[b, ai]]), f);
            push(word(&[&[ai, bi]]), word(&[&x_neg, &[bi, ai], &om, &desc]), f);
        }

        for color in [Color::Blue, Color::Red] {
            for (l, lp) in self.graph.loops.iter().enumerate() {
                if self.loop_color(l) != color {
                    continue;
                }
                let LoopLetters { r, s, t } = self.letters.loops[l];
                let x = self.letters.fiber[self.loop_vertex(l)];
                let m = lp.twist;
                let (ri, si, ti, xi) = (r.inverse(), s.inverse(), t.inverse(), x.inverse());
                match color {
                    Color::Blue => {
                        let f = RuleFamily::BlueHnn;
                        push(word(&[&[x, t]]), word(&[&[t, r]]), f);
                        push(word(&[&[xi, t]]), word(&[&[t, ri]]), f);
                        push(word(&[&[r, ti]]), word(&[&[ti, x]]), f);
                        push(word(&[&[ri, ti]]), word(&[&[ti, xi]]), f);
                        push(word(&[&[s, t]]), word(&[&[t], &r.pow(-m), &[x]]), f);
                        push(word(&[&[si, t]]), word(&[&[t], &r.pow(m), &[xi]]), f);
                        push(word(&[&[x, ti]]), word(&[&[ti, s], &x.pow(m)]), f);
                        push(word(&[&[xi, ti]]), word(&[&[ti, si], &x.pow(-m)]), f);
                    }
                    Color::Red => {
                        let f = RuleFamily::RedHnn;
                        push(word(&[&[t, r]]), word(&[&[x, t]]), f);
                        push(word(&[&[t, ri]]), word(&[&[xi, t]]), f);
                        push(word(&[&[ti, x]]), word(&[&[r, ti]]), f);
                        push(word(&[&[ti, xi]]), word(&[&[ri, ti]]), f);
                        push(word(&[&[t, x]]), word(&[&x.pow(m), &[s, t]]), f);
                        push(word(&[&[t, xi]]), word(&[&x.pow(-m), &[si, t]]), f);
                        push(word(&[&[ti, s]]), word(&[&[x], &r.pow(-m), &[ti]]), f);
                        push(word(&[&[ti, si]]), word(&[&[xi], &r.pow(m), &[ti]]), f);
                    }
                }
            }
        }

        RewritingSystem::new(alphabet, rules).expect("generated rules are distinct and well formed")
    }

    /// Stable letters `t_k^{±1}` of the loops at blue vertices.
    pub fn excluded_letters(&self) -> Vec<Letter> {
        (0..self.graph.loops.len())
            .filter(|&l| self.loop_color(l) == Color::Blue)
            .flat_map(|l| {
                let t = self.letters.loops[l].t;
                [t, t.inverse()]
            })
            .collect()
    }

    /// The system without the blue HNN rules and without the cancellation
    /// rules of the excluded stable letters.
    pub fn restricted(&self) -> SystemPartition {
        let excluded = self.excluded_letters();
        let restricted = self.system().filter(|rule| {
            rule.family != Some(RuleFamily::BlueHnn) && !rule.lhs.iter().any(|l| excluded.contains(l))
        });
        SystemPartition::new(restricted, excluded).expect("restricted rules avoid the excluded letters")
    }

    /// Relators of the presentation, after eliminating `p_e` and `q_e`.
    /// Each one must reduce to the empty word.
    pub fn defining_relators(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for v in 0..self.graph.vertices.len() {
            let x = self.letters.fiber[v];
            let surface: Word = self.letters.surface[v].iter().flat_map(|&(a, b)| commutator(a, b)).collect();
            let boundary = match self.coloring.color(v) {
                Color::Blue => self.lambda_index(v),
                Color::Red => {
                    let mut word = Word::empty();
                    for e in self.edges_into(v) {
                        word.push(self.letters.fiber[self.coloring.orientation[e].0]);
                        word.extend(x.pow(-self.graph.edges[e].twist).iter());
                    }
                    word.extend(self.loop_boundary(v).iter());
                    word
                }
            };
            out.push(boundary.concat(&surface.formal_inverse()));
            for c in self.vertex_letters(v) {
                out.push(Word::from(commutator(x, c).to_vec()));
            }
        }
        for &(b, r) in &self.coloring.orientation {
            out.push(Word::from(commutator(self.letters.fiber[b], self.letters.fiber[r]).to_vec()));
        }
        for (l, lp) in self.graph.loops.iter().enumerate() {
            let LoopLetters { r, s, t } = self.letters.loops[l];
            let x = self.letters.fiber[self.loop_vertex(l)];
            // t x t^-1 = s x^m
            out.push(word(&[&[t, x, t.inverse()], &x.pow(-lp.twist), &[s.inverse()]]));
            // t r t^-1 = x
            out.push(word(&[&[t, r, t.inverse(), x.inverse()]]));
        }
        out
    }
}

pub fn generate_system(graph: &BundleGraph) -> Result<RewritingSystem> {
    Ok(BundlePresentation::new(graph)?.system())
}

pub fn generate_restricted(graph: &BundleGraph) -> Result<SystemPartition> {
    Ok(BundlePresentation::new(graph)?.restricted())
}

pub fn defining_relators(graph: &BundleGraph) -> Result<Vec<Word>> {
    Ok(BundlePresentation::new(graph)?.defining_relators())
}

pub fn n_w(presentation: &BundlePresentation, w: &str) -> Result<i64> {
    presentation.n_w(w)
}

pub fn lambda_word(presentation: &BundlePresentation, v: &str) -> Result<Word> {
    presentation.lambda_word(v)
}

pub fn omega_word(presentation: &BundlePresentation, w: &str) -> Result<Word> {
    presentation.omega_word(w)
}
