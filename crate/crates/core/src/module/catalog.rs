//! Indecomposables up to isomorphism, bucketed by dimension vector.

use std::collections::HashMap;

use super::decompose::isomorphism_between_indecomposables;
use super::Module;

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    modules: Vec<Module>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
}

impl Catalog {
    pub fn new() -> Catalog {
        Catalog::default()
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn get(&self, i: usize) -> &Module {
        &self.modules[i]
    }

    /// Index of an indecomposable isomorphic to `m`.
    pub fn find(&self, m: &Module) -> Option<usize> {
        self.buckets.get(m.dims())?.iter().copied().find(|&i| {
            let n = &self.modules[i];
            n.same_data(m) || isomorphism_between_indecomposables(m, n).is_some()
        })
    }

    /// Inserts an indecomposable unless an isomorphic one is present;
    /// returns its index and whether it was new.
    pub fn insert(&mut self, m: Module) -> (usize, bool) {
        if let Some(i) = self.find(&m) {
            return (i, false);
        }
        let i = self.modules.len();
        self.buckets.entry(m.dims().to_vec()).or_default().push(i);
        self.modules.push(m);
        (i, true)
    }
}
