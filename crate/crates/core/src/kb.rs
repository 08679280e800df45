//! Critical pairs, completeness checking and Knuth-Bendix completion.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::orders::{rpo_greater, Precedence};
use crate::reduce::{reduce, reduce_counted};
use crate::system::{RewritingSystem, Rule};
use crate::word::{Alphabet, Word};

pub const DEFAULT_RULE_CAP: usize = 10_000;
pub const DEFAULT_RESOLVE_STEP_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// A proper suffix of one lhs is a prefix of the other.
    Overlap,
    /// One lhs occurs inside the other.
    Containment,
}

/// The two one-step reducts of a superposition of two left-hand sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub source: Word,
    pub left_reduct: Word,
    pub right_reduct: Word,
    pub kind: PairKind,
    /// `(i, j, offset)`: rule `i` applies at position 0 of `source` and
    /// gives `left_reduct`; rule `j` applies at `offset` and gives
    /// `right_reduct`.
    pub provenance: (usize, usize, usize),
}

/// Enumerates overlap and containment pairs over all ordered rule pairs,
/// self-overlaps included.
pub fn critical_pairs(sys: &RewritingSystem) -> Vec<CriticalPair> {
    let rules = sys.rules();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |pair: CriticalPair| {
        let (a, b) = if pair.left_reduct <= pair.right_reduct {
            (pair.left_reduct.clone(), pair.right_reduct.clone())
        } else {
            (pair.right_reduct.clone(), pair.left_reduct.clone())
        };
        if seen.insert((pair.source.clone(), a, b)) {
            out.push(pair);
        }
    };
    for (i, ri) in rules.iter().enumerate() {
        let li = &ri.lhs[..];
        for (j, rj) in rules.iter().enumerate() {
            let lj = &rj.lhs[..];
            for k in 1..li.len().min(lj.len()) {
                if li[li.len() - k..] != lj[..k] {
                    continue;
                }
                let offset = li.len() - k;
                let source: Word = li.iter().chain(&lj[k..]).copied().collect();
                let left = ri.rhs.iter().chain(&lj[k..]).copied().collect();
                let right = li[..offset].iter().chain(rj.rhs.iter()).copied().collect();
                push(CriticalPair { source, left_reduct: left, right_reduct: right, kind: PairKind::Overlap, provenance: (i, j, offset) });
            }
            if i == j || lj.len() > li.len() {
                continue;
            }
            for offset in 0..=li.len() - lj.len() {
                if li[offset..offset + lj.len()] != *lj {
                    continue;
                }
                let right = li[..offset].iter().chain(rj.rhs.iter()).chain(&li[offset + lj.len()..]).copied().collect();
                push(CriticalPair {
                    source: ri.lhs.clone(),
                    left_reduct: ri.rhs.clone(),
                    right_reduct: right,
                    kind: PairKind::Containment,
                    provenance: (i, j, offset),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Resolved { joined: Word },
    /// Both reducts reached distinct irreducible words.
    Unresolved { left: Word, right: Word },
    /// The step cap ran out before both sides were irreducible.
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionReport {
    pub pair: CriticalPair,
    pub resolution: Resolution,
    /// Rewriting steps spent on the left and right reduct.
    pub steps: (usize, usize),
}

impl ResolutionReport {
    pub fn resolved(&self) -> bool {
        matches!(self.resolution, Resolution::Resolved { .. })
    }

    pub fn joined_at(&self) -> Option<&Word> {
        match &self.resolution {
            Resolution::Resolved { joined } => Some(joined),
            _ => None,
        }
    }

    /// `RESOLVED <source> => <joined>` or `UNRESOLVED <source> => <left> | <right>`.
    pub fn line(&self, alphabet: &Alphabet) -> String {
        let src = alphabet.display(&self.pair.source);
        match &self.resolution {
            Resolution::Resolved { joined } => format!("RESOLVED {src} => {}", alphabet.display(joined)),
            Resolution::Unresolved { left, right } => {
                format!("UNRESOLVED {src} => {} | {}", alphabet.display(left), alphabet.display(right))
            }
            Resolution::Timeout => format!(
                "TIMEOUT {src} => {} | {}",
                alphabet.display(&self.pair.left_reduct),
                alphabet.display(&self.pair.right_reduct)
            ),
        }
    }
}

pub fn resolve(pair: &CriticalPair, sys: &RewritingSystem, step_cap: usize) -> ResolutionReport {
    let left = reduce_counted(&pair.left_reduct, sys, step_cap);
    let right = reduce_counted(&pair.right_reduct, sys, step_cap);
    let (resolution, steps) = match (left, right) {
        (Ok(l), Ok(r)) => {
            let steps = (l.steps, r.steps);
            if l.word == r.word {
                (Resolution::Resolved { joined: l.word }, steps)
            } else {
                (Resolution::Unresolved { left: l.word, right: r.word }, steps)
            }
        }
        (l, r) => {
            let spent = |x: &Result<_>| match x {
                Ok(crate::reduce::Reduction { steps, .. }) => *steps,
                Err(_) => step_cap,
            };
            (Resolution::Timeout, (spent(&l), spent(&r)))
        }
    };
    ResolutionReport { pair: pair.clone(), resolution, steps }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Complete,
    /// Some pair joins at two distinct irreducible words.
    Refuted,
    /// No pair is refuted but some timed out.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct CompletenessReport {
    pub reports: Vec<ResolutionReport>,
}

impl CompletenessReport {
    pub fn pair_count(&self) -> usize {
        self.reports.len()
    }

    pub fn resolved_count(&self) -> usize {
        self.reports.iter().filter(|r| r.resolved()).count()
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &ResolutionReport> {
        self.reports.iter().filter(|r| matches!(r.resolution, Resolution::Unresolved { .. }))
    }

    pub fn timeouts(&self) -> impl Iterator<Item = &ResolutionReport> {
        self.reports.iter().filter(|r| r.resolution == Resolution::Timeout)
    }

    pub fn verdict(&self) -> Verdict {
        if self.unresolved().next().is_some() {
            Verdict::Refuted
        } else if self.timeouts().next().is_some() {
            Verdict::Inconclusive
        } else {
            Verdict::Complete
        }
    }

    pub fn is_complete(&self) -> bool {
        self.verdict() == Verdict::Complete
    }
}

impl fmt::Display for CompletenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict() {
            Verdict::Complete => write!(f, "{} pairs, all resolved", self.pair_count()),
            Verdict::Refuted => write!(
                f,
                "{} pairs, {} unresolved, {} timed out",
                self.pair_count(),
                self.unresolved().count(),
                self.timeouts().count()
            ),
            Verdict::Inconclusive => {
                write!(f, "{} pairs, {} timed out, none refuted", self.pair_count(), self.timeouts().count())
            }
        }
    }
}

/// Resolves every critical pair. Local confluence only: termination must
/// be established separately, e.g. with an RPO precedence.
pub fn check_complete(sys: &RewritingSystem, step_cap: usize) -> CompletenessReport {
    let reports = critical_pairs(sys).iter().map(|p| resolve(p, sys, step_cap)).collect();
    CompletenessReport { reports }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionLimits {
    pub rule_cap: usize,
    pub step_cap: usize,
}

impl Default for CompletionLimits {
    fn default() -> CompletionLimits {
        CompletionLimits { rule_cap: DEFAULT_RULE_CAP, step_cap: DEFAULT_RESOLVE_STEP_CAP }
    }
}

struct Completion<'a> {
    alphabet: Arc<Alphabet>,
    prec: &'a Precedence,
    limits: CompletionLimits,
    sys: RewritingSystem,
}

impl Completion<'_> {
    fn rebuild(&mut self, rules: Vec<Rule>) -> Result<()> {
        self.sys = RewritingSystem::new(self.alphabet.clone(), rules)?;
        Ok(())
    }

    /// Orients `l = r` and inter-reduces until no equation is left over.
    fn add_equation(&mut self, l: Word, r: Word) -> Result<bool> {
        let mut pending = VecDeque::from([(l, r)]);
        let mut changed = false;
        while let Some((l, r)) = pending.pop_front() {
            let l = reduce(&l, &self.sys, self.limits.step_cap)?;
            let r = reduce(&r, &self.sys, self.limits.step_cap)?;
            if l == r {
                continue;
            }
            let (lhs, rhs) = if rpo_greater(&l, &r, self.prec)? {
                (l, r)
            } else if rpo_greater(&r, &l, self.prec)? {
                (r, l)
            } else {
                return Err(Error::Unorientable { lhs: self.alphabet.format(&l), rhs: self.alphabet.format(&r) });
            };
            let mut kept = Vec::with_capacity(self.sys.len() + 1);
            for rule in self.sys.rules() {
                if rule.lhs.windows(lhs.len()).any(|w| w == &lhs[..]) {
                    pending.push_back((rule.lhs.clone(), rule.rhs.clone()));
                } else {
                    kept.push(rule.clone());
                }
            }
            if kept.len() >= self.limits.rule_cap {
                return Err(Error::RuleCap(self.limits.rule_cap));
            }
            kept.push(Rule::new(lhs, rhs));
            self.rebuild(kept)?;
            let mut normalized = Vec::with_capacity(self.sys.len());
            for rule in self.sys.rules() {
                let rhs = reduce(&rule.rhs, &self.sys, self.limits.step_cap)?;
                normalized.push(Rule { lhs: rule.lhs.clone(), rhs, family: rule.family });
            }
            normalized.dedup_by(|a, b| a.lhs == b.lhs && a.rhs == b.rhs);
            self.rebuild(normalized)?;
            changed = true;
        }
        Ok(changed)
    }
}

/// Knuth-Bendix completion with RPO orientation. Pairs are processed in
/// FIFO order, one round per snapshot of the rule set, until a round adds
/// nothing. Input that already checks complete comes back unchanged.
pub fn complete(sys: &RewritingSystem, prec: &Precedence, limits: CompletionLimits) -> Result<RewritingSystem> {
    if check_complete(sys, limits.step_cap).is_complete() {
        return Ok(sys.clone());
    }
    let mut run = Completion { alphabet: sys.alphabet().clone(), prec, limits, sys: sys.clone() };
    // Input rules whose sides are not yet oriented or reduced are treated as
    // equations like any other.
    let input: Vec<Rule> = sys.rules().to_vec();
    run.rebuild(Vec::new())?;
    for rule in input {
        run.add_equation(rule.lhs, rule.rhs)?;
    }
    loop {
        let mut changed = false;
        for pair in critical_pairs(&run.sys) {
            changed |= run.add_equation(pair.left_reduct, pair.right_reduct)?;
        }
        if !changed {
            return Ok(run.sys);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::rewrite_once;
    use crate::word::Alphabet;

    fn sys(tokens: &[&str], rules: &[(&str, &str)]) -> RewritingSystem {
        RewritingSystem::from_text_rules(Arc::new(Alphabet::new(tokens.iter().copied()).unwrap()), rules).unwrap()
    }

    fn show(s: &RewritingSystem, p: &CriticalPair) -> (String, String, String) {
        (s.format_word(&p.source), s.format_word(&p.left_reduct), s.format_word(&p.right_reduct))
    }

    #[test]
    fn free_reduction_overlap() {
        let s = sys(&["x"], &[("x x^-1", "1"), ("x^-1 x", "1")]);
        let pairs = critical_pairs(&s);
        let shown: Vec<_> = pairs.iter().map(|p| show(&s, p)).collect();
        assert!(shown.contains(&("x x^-1 x".into(), "x".into(), "x".into())));
        assert!(shown.contains(&("x^-1 x x^-1".into(), "x^-1".into(), "x^-1".into())));
        assert_eq!(pairs.len(), 2);
        let report = check_complete(&s, 100);
        assert!(report.is_complete());
        assert_eq!(report.reports[0].line(s.alphabet()), "RESOLVED x x^-1 x => x");
    }

    #[test]
    fn commutation_has_no_self_overlap() {
        let s = sys(&["x", "a"], &[("x a", "a x")]);
        assert!(critical_pairs(&s).is_empty());
    }

    #[test]
    fn pairs_replay_through_rewrite_once() {
        let s = sys(&["a", "b"], &[("a b a", "b"), ("b a", "a b"), ("a a", "1"), ("a b", "b")]);
        let pairs = critical_pairs(&s);
        assert!(pairs.iter().any(|p| p.kind == PairKind::Containment));
        for p in pairs {
            let (i, j, offset) = p.provenance;
            assert_eq!(rewrite_once(&p.source, 0, s.rule(i)).unwrap(), p.left_reduct);
            assert_eq!(rewrite_once(&p.source, offset, s.rule(j)).unwrap(), p.right_reduct);
        }
    }

    #[test]
    fn broken_system_is_refuted() {
        let s = sys(&["a", "b"], &[("a b", "b"), ("a b", "a")]);
        let report = check_complete(&s, 100);
        assert_eq!(report.verdict(), Verdict::Refuted);
        let lines: Vec<String> = report.unresolved().map(|r| r.line(s.alphabet())).collect();
        assert_eq!(lines, ["UNRESOLVED a b => b | a"]);
    }

    #[test]
    fn timeouts_are_inconclusive() {
        let s = sys(&["a", "b"], &[("a a", "b"), ("b", "a a")]);
        let report = check_complete(&s, 50);
        assert_eq!(report.verdict(), Verdict::Inconclusive);
    }

    #[test]
    fn completes_z2() {
        let s = sys(&["x", "y"], &[("x x^-1", "1"), ("x^-1 x", "1"), ("y y^-1", "1"), ("y^-1 y", "1"), ("x y", "y x")]);
        let prec = Precedence::parse(s.alphabet().clone(), "x^-1 > x > y^-1 > y").unwrap();
        let done = complete(&s, &prec, CompletionLimits::default()).unwrap();
        assert_eq!(done.len(), 8);
        assert!(check_complete(&done, 1000).is_complete());
        for (l, r) in [("x^-1 y", "y x^-1"), ("x y^-1", "y^-1 x"), ("x^-1 y^-1", "y^-1 x^-1")] {
            assert_eq!(reduce(&done.parse_word(l).unwrap(), &done, 10).unwrap(), done.parse_word(r).unwrap());
        }
    }

    #[test]
    fn complete_input_is_unchanged() {
        let s = sys(&["a"], &[("a a", "1")]);
        let prec = Precedence::parse(s.alphabet().clone(), "a^-1 > a").unwrap();
        let done = complete(&s, &prec, CompletionLimits::default()).unwrap();
        assert!(done.same_rules(&s));
        let pairs = critical_pairs(&s);
        assert_eq!(pairs.len(), 1);
        assert_eq!(show(&s, &pairs[0]), ("a a a".into(), "a".into(), "a".into()));
    }

    #[test]
    fn unorientable_equation_is_reported() {
        let s = sys(&["a", "b"], &[("a b", "b"), ("a b", "a")]);
        let prec = Precedence::parse(s.alphabet().clone(), "a b >").unwrap();
        assert!(matches!(complete(&s, &prec, CompletionLimits::default()), Err(Error::Unorientable { .. })));
    }

    #[test]
    fn rule_cap_stops_divergence() {
        // a b a -> b a b style braid relation diverges under this order.
        let s = sys(&["a", "b"], &[("b a b", "a b a")]);
        let prec = Precedence::parse(s.alphabet().clone(), "b > a > a^-1 b^-1").unwrap();
        let r = complete(&s, &prec, CompletionLimits { rule_cap: 20, step_cap: 1000 });
        assert_eq!(r.unwrap_err(), Error::RuleCap(20));
    }
}
