use std::fmt;

use serde::Serialize;

/// An unordered collection of part indices with repetition allowed.
///
/// Indices are 1-based and stored sorted, so the derived ordering is the
/// lexicographic order used for canonical edge lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Multiset {
    elements: Vec<u32>,
}

impl Multiset {
    pub fn new(mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        Multiset { elements }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Total multiplicity, i.e. the uniformity `r` of the multiset.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Multiplicity of index `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        let lo = self.elements.partition_point(|&e| e < i);
        let hi = self.elements.partition_point(|&e| e <= i);
        hi - lo
    }

    pub fn contains(&self, i: u32) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    pub fn max_element(&self) -> Option<u32> {
        self.elements.last().copied()
    }

    /// `(index, multiplicity)` pairs in increasing index order.
    pub fn runs(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &e in &self.elements {
            match out.last_mut() {
                Some((idx, count)) if *idx == e => *count += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }
}

impl From<&[u32]> for Multiset {
    fn from(v: &[u32]) -> Self {
        Multiset::new(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Multiset {
    fn from(v: [u32; N]) -> Self {
        Multiset::new(v.to_vec())
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, e) in self.elements.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
