//! Finite complete rewriting systems for fundamental groups of graphs of
//! circle bundles, with the machinery to check them: redex search and
//! reduction, path orderings, critical pairs and completion, and normal
//! form enumeration.

pub mod error;
pub mod graph;
pub mod kb;
pub mod matcher;
pub mod normal;
pub mod orders;
pub mod reduce;
pub mod system;
pub mod word;

pub use error::{Error, Result};
pub use graph::{BundleGraph, BundlePresentation, Color, Coloring};
pub use kb::{check_complete, complete, critical_pairs, resolve, CompletenessReport, CompletionLimits, CriticalPair, Verdict};
pub use normal::{block_decompose, growth_series, words_equal, IrreducibleAutomaton, TwoBundleLayout};
pub use orders::{lemma_precedence, psi_profile, rpo_greater, Precedence, SystemPartition};
pub use reduce::{reduce, DEFAULT_STEP_CAP};
pub use system::{RewritingSystem, Rule, RuleFamily};
pub use word::{Alphabet, Letter, Word};
