//! Tables of Betti numbers keyed by degree and weight.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::surface::{GradedIndex, Surface};

/// Which computation path produced an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Series,
    Oracle,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Formula => write!(f, "formula"),
            Provenance::Series => write!(f, "series"),
            Provenance::Oracle => write!(f, "oracle"),
        }
    }
}

/// Betti numbers of `B_k(surface)` indexed by `(i, k)`, each entry tagged
/// with the path that computed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub surface: Surface,
    entries: BTreeMap<GradedIndex, (BigUint, Provenance)>,
}

impl BettiTable {
    pub fn new(surface: Surface) -> BettiTable {
        BettiTable {
            surface,
            entries: BTreeMap::new(),
        }
    }

    /// Insert an entry. Re-inserting an index with a different value panics:
    /// entries computed along more than one path must agree.
    pub fn insert(&mut self, index: GradedIndex, value: BigUint, provenance: Provenance) {
        if let Some((old, old_prov)) = self.entries.get(&index) {
            assert_eq!(
                *old, value,
                "conflicting Betti values at {index} ({old_prov} vs {provenance})"
            );
        }
        self.entries.insert(index, (value, provenance));
    }

    pub fn get(&self, i: usize, k: usize) -> Option<&BigUint> {
        self.entries.get(&GradedIndex::new(i, k)).map(|(v, _)| v)
    }

    pub fn provenance(&self, i: usize, k: usize) -> Option<Provenance> {
        self.entries.get(&GradedIndex::new(i, k)).map(|(_, p)| *p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (GradedIndex, &BigUint, Provenance)> {
        self.entries.iter().map(|(ix, (v, p))| (*ix, v, *p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agreeing_reinsert_is_fine() {
        let mut t = BettiTable::new(Surface::closed_orientable(0));
        let ix = GradedIndex::new(3, 5);
        t.insert(ix, BigUint::from(1u32), Provenance::Series);
        t.insert(ix, BigUint::from(1u32), Provenance::Oracle);
        assert_eq!(t.provenance(3, 5), Some(Provenance::Oracle));
        assert_eq!(t.len(), 1);
    }

    #[test]
    #[should_panic(expected = "conflicting Betti values")]
    fn conflicting_reinsert_panics() {
        let mut t = BettiTable::new(Surface::closed_orientable(0));
        let ix = GradedIndex::new(3, 5);
        t.insert(ix, BigUint::from(1u32), Provenance::Series);
        t.insert(ix, BigUint::from(2u32), Provenance::Oracle);
    }
}
