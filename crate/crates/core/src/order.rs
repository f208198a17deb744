//! Finite well-orders.

use std::collections::HashSet;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("duplicate element at position {0}")]
pub struct DuplicateElement(pub usize);

/// A finite strict linear order given by a duplicate-free list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WellOrder<T> {
    elements: Vec<T>,
}

impl<T: Clone + Eq + Hash> WellOrder<T> {
    pub fn new(elements: Vec<T>) -> Result<Self, DuplicateElement> {
        let mut seen = HashSet::new();
        for (i, e) in elements.iter().enumerate() {
            if !seen.insert(e) {
                return Err(DuplicateElement(i));
            }
        }
        Ok(WellOrder { elements })
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &T) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.position(x).is_some()
    }

    /// `x <_Γ y`
    pub fn less(&self, x: &T, y: &T) -> bool {
        matches!((self.position(x), self.position(y)), (Some(i), Some(j)) if i < j)
    }

    /// The initial segment of the first `n` elements.
    pub fn prefix(&self, n: usize) -> Self {
        WellOrder {
            elements: self.elements[..n.min(self.len())].to_vec(),
        }
    }
}

impl WellOrder<String> {
    /// `⟨0, 1, …, n-1⟩` with decimal labels.
    pub fn of_length(n: usize) -> Self {
        WellOrder {
            elements: (0..n).map(|i| i.to_string()).collect(),
        }
    }
}
