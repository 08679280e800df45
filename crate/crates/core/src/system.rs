//! Rewriting systems and the `.rws` text format.
//!
//! ```text
//! # free group on one generator
//! letters: x
//! tag: inverse-cancellation
//! x x^-1 -> 1
//! x^-1 x -> 1
//! ```

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matcher::PatternAutomaton;
use crate::word::{Alphabet, Word};

/// Schema family a generated rule belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleFamily {
    InverseCancellation,
    BlueVertex,
    RedVertex,
    Edge,
    BlueAmalgam,
    RedAmalgam,
    BlueHnn,
    RedHnn,
    Other,
}

impl RuleFamily {
    pub const ALL: [RuleFamily; 9] = [
        RuleFamily::InverseCancellation,
        RuleFamily::BlueVertex,
        RuleFamily::RedVertex,
        RuleFamily::Edge,
        RuleFamily::BlueAmalgam,
        RuleFamily::RedAmalgam,
        RuleFamily::BlueHnn,
        RuleFamily::RedHnn,
        RuleFamily::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleFamily::InverseCancellation => "inverse-cancellation",
            RuleFamily::BlueVertex => "blue-vertex",
            RuleFamily::RedVertex => "red-vertex",
            RuleFamily::Edge => "edge",
            RuleFamily::BlueAmalgam => "blue-amalgam",
            RuleFamily::RedAmalgam => "red-amalgam",
            RuleFamily::BlueHnn => "blue-hnn",
            RuleFamily::RedHnn => "red-hnn",
            RuleFamily::Other => "other",
        }
    }
}

impl fmt::Display for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<RuleFamily, String> {
        RuleFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown rule family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
    pub family: Option<RuleFamily>,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Rule {
        Rule { lhs, rhs, family: None }
    }

    pub fn tagged(lhs: Word, rhs: Word, family: RuleFamily) -> Rule {
        Rule { lhs, rhs, family: Some(family) }
    }
}

/// An immutable rule list over a shared alphabet, with its redex automaton.
#[derive(Debug, Clone)]
pub struct RewritingSystem {
    alphabet: Arc<Alphabet>,
    rules: Vec<Rule>,
    matcher: PatternAutomaton,
}

impl RewritingSystem {
    pub fn new(alphabet: Arc<Alphabet>, rules: Vec<Rule>) -> Result<RewritingSystem> {
        let mut seen = HashSet::new();
        for rule in &rules {
            if rule.lhs.is_empty() {
                return Err(Error::EmptyLhs);
            }
            if let Some(&l) = rule.lhs.iter().chain(rule.rhs.iter()).find(|&&l| !alphabet.contains(l)) {
                return Err(Error::ForeignLetter(l.generator()));
            }
            if !seen.insert((&rule.lhs, &rule.rhs)) {
                return Err(Error::DuplicateRule(format!(
                    "{} -> {}",
                    alphabet.display(&rule.lhs),
                    alphabet.display(&rule.rhs)
                )));
            }
        }
        let matcher = PatternAutomaton::new(alphabet.letter_count(), rules.iter().map(|r| r.lhs.letters()));
        Ok(RewritingSystem { alphabet, rules, matcher })
    }

    /// Builds a system from `(lhs, rhs)` text pairs; handy for small fixtures.
    pub fn from_text_rules(alphabet: Arc<Alphabet>, rules: &[(&str, &str)]) -> Result<RewritingSystem> {
        let rules = rules
            .iter()
            .map(|(l, r)| Ok(Rule::new(alphabet.parse_word(l)?, alphabet.parse_word(r)?)))
            .collect::<Result<Vec<_>>>()?;
        RewritingSystem::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> &Rule {
        &self.rules[index]
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn matcher(&self) -> &PatternAutomaton {
        &self.matcher
    }

    /// Subsystem keeping only the rules accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Rule) -> bool) -> RewritingSystem {
        let rules = self.rules.iter().filter(|r| keep(r)).cloned().collect();
        RewritingSystem::new(self.alphabet.clone(), rules).expect("subset of a valid system is valid")
    }

    pub fn count_family(&self, family: RuleFamily) -> usize {
        self.rules.iter().filter(|r| r.family == Some(family)).count()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn format_word(&self, word: &[crate::word::Letter]) -> String {
        self.alphabet.format(word)
    }

    pub fn format_rule(&self, rule: &Rule) -> String {
        format!("{} -> {}", self.alphabet.display(&rule.lhs), self.alphabet.display(&rule.rhs))
    }

    /// Rule-for-rule equality, including tags.
    pub fn same_rules(&self, other: &RewritingSystem) -> bool {
        self.alphabet.tokens() == other.alphabet.tokens() && self.rules == other.rules
    }

    /// Serializes to the `.rws` format.
    pub fn to_rws(&self) -> String {
        let mut out = String::new();
        out.push_str("letters:");
        for token in self.alphabet.tokens() {
            out.push(' ');
            out.push_str(token);
        }
        out.push('\n');
        for rule in &self.rules {
            if let Some(family) = rule.family {
                out.push_str("tag: ");
                out.push_str(family.name());
                out.push('\n');
            }
            out.push_str(&self.format_rule(rule));
            out.push('\n');
        }
        out
    }

    /// Parses the `.rws` format.
    pub fn from_rws(text: &str) -> Result<RewritingSystem> {
        let mut alphabet: Option<Alphabet> = None;
        let mut rules = Vec::new();
        let mut pending_tag: Option<(usize, RuleFamily)> = None;
        let err = |line: usize, msg: String| Error::Parse { line, msg };

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("letters:") {
                if alphabet.is_some() {
                    return Err(err(line_no, "second `letters:` declaration".into()));
                }
                let parsed = Alphabet::new(rest.split_whitespace()).map_err(|e| err(line_no, e.to_string()))?;
                alphabet = Some(parsed);
                continue;
            }
            if let Some(rest) = line.strip_prefix("tag:") {
                if pending_tag.is_some() {
                    return Err(err(line_no, "two `tag:` lines in a row".into()));
                }
                let family = rest.trim().parse::<RuleFamily>().map_err(|e| err(line_no, e))?;
                pending_tag = Some((line_no, family));
                continue;
            }
            let Some(alpha) = alphabet.as_ref() else {
                return Err(err(line_no, "rule before `letters:` declaration".into()));
            };
            let Some((lhs, rhs)) = line.split_once("->") else {
                return Err(err(line_no, format!("expected `lhs -> rhs`, found `{line}`")));
            };
            if lhs.trim().is_empty() || lhs.trim() == "1" {
                return Err(err(line_no, "empty left-hand side".into()));
            }
            if rhs.trim().is_empty() {
                return Err(err(line_no, "empty right-hand side; write `1`".into()));
            }
            let lhs = alpha.parse_word(lhs).map_err(|e| err(line_no, e.to_string()))?;
            let rhs = alpha.parse_word(rhs).map_err(|e| err(line_no, e.to_string()))?;
            rules.push((line_no, Rule { lhs, rhs, family: pending_tag.take().map(|(_, f)| f) }));
        }
        if let Some((line, _)) = pending_tag {
            return Err(err(line, "`tag:` not followed by a rule".into()));
        }
        let alphabet = alphabet.ok_or_else(|| err(0, "missing `letters:` declaration".into()))?;
        let mut seen = HashSet::new();
        for (line, rule) in &rules {
            if !seen.insert((&rule.lhs, &rule.rhs)) {
                return Err(err(*line, "duplicate rule".into()));
            }
        }
        RewritingSystem::new(Arc::new(alphabet), rules.into_iter().map(|(_, r)| r).collect())
    }
}
