use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::reduce::all_reduction_successors;
use crate::system::RewritingSystem;
use crate::word::{Letter, Word};

pub const DEFAULT_LENGTH_CAP: usize = 12;

/// A restricted system `R'` over the sub-alphabet `A'`, together with the
/// excluded letters `A - A'`.
#[derive(Debug, Clone)]
pub struct SystemPartition {
    restricted: RewritingSystem,
    excluded: Vec<Letter>,
    is_excluded: Vec<bool>,
}

impl SystemPartition {
    pub fn new(restricted: RewritingSystem, excluded: impl IntoIterator<Item = Letter>) -> Result<SystemPartition> {
        let mut is_excluded = vec![false; restricted.alphabet().letter_count()];
        let mut list = Vec::new();
        for l in excluded {
            if !restricted.alphabet().contains(l) {
                return Err(Error::ForeignLetter(l.generator()));
            }
            if !is_excluded[l.index()] {
                is_excluded[l.index()] = true;
                list.push(l);
            }
        }
        list.sort_unstable();
        for rule in restricted.rules() {
            if let Some(&l) = rule.lhs.iter().chain(rule.rhs.iter()).find(|l| is_excluded[l.index()]) {
                return Err(Error::ExcludedLetter(restricted.alphabet().letter_name(l)));
            }
        }
        Ok(SystemPartition { restricted, excluded: list, is_excluded })
    }

    pub fn restricted(&self) -> &RewritingSystem {
        &self.restricted
    }

    pub fn excluded(&self) -> &[Letter] {
        &self.excluded
    }

    pub fn is_excluded(&self, letter: Letter) -> bool {
        self.is_excluded[letter.index()]
    }

    /// Letters of `A'`.
    pub fn restricted_alphabet(&self) -> Vec<Letter> {
        self.restricted.alphabet().letters().filter(|&l| !self.is_excluded(l)).collect()
    }

    /// Splits `w = u_1 t_1 u_2 ... t_j u_{j+1}` at its excluded letters and
    /// returns the blocks `u_i`.
    pub fn blocks<'w>(&self, w: &'w [Letter]) -> Vec<&'w [Letter]> {
        w.split(|&l| self.is_excluded(l)).collect()
    }
}

/// Memoized disorder: the length of the longest rewriting sequence under the
/// restricted system. Entries stay valid for the lifetime of the cache, so
/// one cache can serve many queries against the same partition.
pub struct DisorderCache<'p> {
    partition: &'p SystemPartition,
    length_cap: usize,
    memo: HashMap<Word, u64>,
}

impl<'p> DisorderCache<'p> {
    pub fn new(partition: &'p SystemPartition, length_cap: usize) -> DisorderCache<'p> {
        DisorderCache { partition, length_cap, memo: HashMap::new() }
    }

    pub fn partition(&self) -> &SystemPartition {
        self.partition
    }

    pub fn disorder(&mut self, w: &[Letter]) -> Result<u64> {
        if w.len() > self.length_cap {
            return Err(Error::LengthCap { len: w.len(), cap: self.length_cap });
        }
        if let Some(&l) = w.iter().find(|&&l| self.partition.is_excluded(l)) {
            return Err(Error::ExcludedLetter(self.partition.restricted.alphabet().letter_name(l)));
        }
        Ok(self.search(Word::from(w)))
    }

    // Successors may outgrow the cap; the cap only guards the entry point.
    fn search(&mut self, w: Word) -> u64 {
        if let Some(&d) = self.memo.get(&w) {
            return d;
        }
        let mut best = 0;
        for next in all_reduction_successors(&w, &self.partition.restricted) {
            best = best.max(1 + self.search(next));
        }
        self.memo.insert(w, best);
        best
    }

    /// `(ψ_0, ψ_1, ψ_2, ...)`: `ψ_0` counts excluded letters, `ψ_{2i}` and
    /// `ψ_{2i+1}` are the disorder and length of block `u_i` (`i >= 1`).
    /// `ψ_1` is never assigned and stays zero.
    pub fn psi_profile(&mut self, w: &[Letter]) -> Result<PsiProfile> {
        let blocks = self.partition.blocks(w);
        let mut values = vec![0; 2 * blocks.len() + 2];
        values[0] = (blocks.len() - 1) as u64;
        for (i, block) in blocks.into_iter().enumerate() {
            let slot = 2 * (i + 1);
            values[slot] = self.disorder(block)?;
            values[slot + 1] = block.len() as u64;
        }
        Ok(PsiProfile { values })
    }

    pub fn psi_greater(&mut self, w1: &[Letter], w2: &[Letter]) -> Result<bool> {
        Ok(self.psi_profile(w1)? > self.psi_profile(w2)?)
    }
}

pub fn disorder(w: &[Letter], partition: &SystemPartition, length_cap: usize) -> Result<u64> {
    DisorderCache::new(partition, length_cap).disorder(w)
}

pub fn psi_profile(w: &[Letter], partition: &SystemPartition, length_cap: usize) -> Result<PsiProfile> {
    DisorderCache::new(partition, length_cap).psi_profile(w)
}

pub fn psi_greater(w1: &[Letter], w2: &[Letter], partition: &SystemPartition, length_cap: usize) -> Result<bool> {
    DisorderCache::new(partition, length_cap).psi_greater(w1, w2)
}

/// Compared lexicographically after padding the shorter profile with zeros.
#[derive(Debug, Clone)]
pub struct PsiProfile {
    pub values: Vec<u64>,
}

impl PsiProfile {
    pub fn excluded_count(&self) -> u64 {
        self.values[0]
    }

    pub fn get(&self, i: usize) -> u64 {
        self.values.get(i).copied().unwrap_or(0)
    }
}

impl Ord for PsiProfile {
    fn cmp(&self, other: &PsiProfile) -> Ordering {
        let len = self.values.len().max(other.values.len());
        (0..len).map(|i| self.get(i).cmp(&other.get(i))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }
}

impl PartialEq for PsiProfile {
    fn eq(&self, other: &PsiProfile) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PsiProfile {}

impl PartialOrd for PsiProfile {
    fn partial_cmp(&self, other: &PsiProfile) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
