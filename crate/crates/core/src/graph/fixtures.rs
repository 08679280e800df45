//! Small named systems with known growth, used as fixtures and controls.

use std::sync::Arc;

use super::{generate_system, BundleGraph};
use crate::system::{RewritingSystem, Rule, RuleFamily};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub system: RewritingSystem,
}

fn cancellations(alphabet: &Alphabet) -> Vec<Rule> {
    (0..alphabet.len() as u32)
        .map(Letter::positive)
        .flat_map(|z| {
            [
                Rule::tagged(Word::from(vec![z, z.inverse()]), Word::empty(), RuleFamily::InverseCancellation),
                Rule::tagged(Word::from(vec![z.inverse(), z]), Word::empty(), RuleFamily::InverseCancellation),
            ]
        })
        .collect()
}

/// One generator `e` killed outright.
pub fn trivial_group() -> RewritingSystem {
    let alphabet = Arc::new(Alphabet::new(["e"]).unwrap());
    RewritingSystem::from_text_rules(alphabet, &[("e", "1"), ("e^-1", "1")]).unwrap()
}

pub fn integers() -> RewritingSystem {
    free_abelian(1)
}

/// `Z^n` on generators `x, y, z` (or `x1..xn` when `n > 3`). An earlier
/// generator moves right past a later one: `x y -> y x`.
pub fn free_abelian(n: usize) -> RewritingSystem {
    let tokens: Vec<String> = if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    };
    let alphabet = Arc::new(Alphabet::new(tokens).unwrap());
    let mut rules = cancellations(&alphabet);
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            for si in [false, true] {
                for sj in [false, true] {
                    let (a, b) = (Letter::new(i, si), Letter::new(j, sj));
                    rules.push(Rule::tagged(Word::from(vec![a, b]), Word::from(vec![b, a]), RuleFamily::Other));
                }
            }
        }
    }
    RewritingSystem::new(alphabet, rules).unwrap()
}

/// A single blue vertex of the given genus with no edges or loops: a circle
/// bundle over a closed surface.
pub fn genus_vertex(genus: u32) -> RewritingSystem {
    generate_system(&BundleGraph::new().vertex("v", genus.max(1))).expect("single vertex graph is valid")
}

pub fn fixtures() -> Vec<Fixture> {
    let named = |name: &str, system| Fixture { name: name.to_string(), system };
    vec![
        named("trivial", trivial_group()),
        named("z", integers()),
        named("z2", free_abelian(2)),
        named("z3", free_abelian(3)),
        named("genus1-vertex", genus_vertex(1)),
        named("genus2-vertex", genus_vertex(2)),
    ]
}

/// Two vertices of genus `g` (blue) and `h` (red) joined by one edge with
/// twist `n`.
pub fn two_vertex(g: u32, h: u32, n: i64) -> BundleGraph {
    BundleGraph::new().vertex("v", g).vertex("w", h).edge("e", "v", "w", n)
}

/// Graphs exercised by the acceptance checks: three two-vertex graphs, a
/// path on three vertices, and one loop of each color.
pub fn suite_graphs() -> Vec<(String, BundleGraph)> {
    vec![
        ("two-vertex-1-1-0".into(), two_vertex(1, 1, 0)),
        ("two-vertex-1-1-2".into(), two_vertex(1, 1, 2)),
        ("two-vertex-2-1--1".into(), two_vertex(2, 1, -1)),
        (
            "path3".into(),
            BundleGraph::new().vertex("u", 1).vertex("v", 1).vertex("w", 1).edge("e1", "u", "v", 1).edge("e2", "v", "w", -2),
        ),
        ("red-loop".into(), two_vertex(1, 1, 0).add_loop("l", "w", 1)),
        ("blue-loop".into(), two_vertex(1, 1, 1).add_loop("k", "v", 2)),
    ]
}
