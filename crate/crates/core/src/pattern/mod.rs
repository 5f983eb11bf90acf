//! Patterns `(m, E)`: a part count plus a family of `r`-multisets over
//! `[m]`, together with the combinatorial operations on them.

mod builders;
mod hypergraph;
mod io;
mod multiset;

use std::collections::HashSet;

use serde::Serialize;

pub use builders::{build_pk, named_pattern, pk_edge_count, NAMED_PATTERNS};
pub use hypergraph::{blowup, blowup_edge_count, profile, Hypergraph, DEFAULT_EDGE_CAP};
pub use io::{parse_pattern, serialize_pattern};
pub use multiset::Multiset;

use crate::{Error, Result};

/// An `r`-uniform pattern on `m` parts.
///
/// Edges are distinct multisets kept in lexicographic order, so two equal
/// patterns always have identical edge lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Pattern {
    r: usize,
    m: usize,
    edges: Vec<Multiset>,
}

impl Pattern {
    pub fn new(r: usize, m: usize, edges: Vec<Multiset>) -> Result<Self> {
        if r < 2 {
            return Err(Error::invalid(format!(
                "uniformity must be at least 2, got {r}"
            )));
        }
        if m < 1 {
            return Err(Error::invalid("a pattern needs at least one part"));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.len() != r {
                return Err(Error::invalid(format!(
                    "edge {e} has {} elements, expected {r}",
                    e.len()
                )));
            }
            if let Some(&lo) = e.elements().first() {
                if lo == 0 {
                    return Err(Error::IndexOutOfRange { index: 0, bound: m });
                }
            }
            if let Some(hi) = e.max_element() {
                if hi as usize > m {
                    return Err(Error::IndexOutOfRange {
                        index: hi as usize,
                        bound: m,
                    });
                }
            }
            if !seen.insert(e) {
                return Err(Error::invalid(format!("duplicate edge {e}")));
            }
        }
        let mut edges = edges;
        edges.sort();
        Ok(Pattern { r, m, edges })
    }

    /// Convenience constructor from nested slices of 1-based indices.
    pub fn from_edges(r: usize, m: usize, edges: &[&[u32]]) -> Result<Self> {
        Pattern::new(r, m, edges.iter().map(|e| Multiset::from(*e)).collect())
    }

    /// Uniformity.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of parts.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[Multiset] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `P + s`: insert the fresh indices `m+1, ..., m+s` into every edge.
    pub fn plus_s(&self, s: usize) -> Result<Pattern> {
        if s < 1 {
            return Err(Error::invalid("s must be at least 1"));
        }
        let fresh: Vec<u32> = (self.m + 1..=self.m + s).map(|i| i as u32).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut v = e.elements().to_vec();
                v.extend_from_slice(&fresh);
                Multiset::new(v)
            })
            .collect();
        Pattern::new(self.r + s, self.m + s, edges)
    }

    /// `P - i`: drop part `i`, delete every edge that uses it and shift the
    /// indices above `i` down by one.
    pub fn remove_index(&self, i: usize) -> Result<Pattern> {
        if i < 1 || i > self.m {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.m,
            });
        }
        if self.m == 1 {
            return Err(Error::invalid("cannot remove the only part of a pattern"));
        }
        let i = i as u32;
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.contains(i))
            .map(|e| {
                Multiset::new(
                    e.elements()
                        .iter()
                        .map(|&j| if j > i { j - 1 } else { j })
                        .collect(),
                )
            })
            .collect();
        Pattern::new(self.r, self.m - 1, edges)
    }

    /// Edges that are ordinary sets (no repeated index).
    pub fn simple_edge_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.elements().windows(2).all(|w| w[0] != w[1]))
            .count()
    }
}
