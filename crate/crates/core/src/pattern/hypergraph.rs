use std::fmt::Write;

use super::{Multiset, Pattern};
use crate::{Error, Result};

/// Default refusal threshold for [`blowup`].
pub const DEFAULT_EDGE_CAP: u64 = 10_000_000;

/// An `r`-graph on vertices `1..=n`, split into consecutive parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub r: usize,
    pub part_sizes: Vec<usize>,
    /// Sorted vertex lists, in lexicographic order.
    pub edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|E| / C(n, r)`, or 0 when `n < r`.
    pub fn density(&self) -> f64 {
        let total = binomial(self.n as u64, self.r as u64);
        match total {
            Some(0) | None => 0.0,
            Some(t) => self.edges.len() as f64 / t as f64,
        }
    }

    /// Export format: header `n r`, then one edge per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.r).unwrap();
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }
}

/// `C(n, k)` or `None` on overflow.
pub(crate) fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn part_of(v: u32, bounds: &[usize]) -> Option<usize> {
    // bounds[i] = first vertex past part i
    let v = v as usize;
    if v == 0 {
        return None;
    }
    let idx = bounds.partition_point(|&b| b < v);
    (idx < bounds.len()).then_some(idx)
}

fn block_ends(part_sizes: &[usize]) -> Vec<usize> {
    part_sizes
        .iter()
        .scan(0usize, |acc, &s| {
            *acc += s;
            Some(*acc)
        })
        .collect()
}

/// Profile of a vertex set with respect to consecutive parts of the given
/// sizes: index `i` appears once per vertex of the set lying in part `i`.
pub fn profile(r_set: &[u32], part_sizes: &[usize]) -> Result<Multiset> {
    let ends = block_ends(part_sizes);
    let n = ends.last().copied().unwrap_or(0);
    let mut sorted = r_set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("vertex set contains a repeated vertex"));
    }
    let parts = sorted
        .iter()
        .map(|&v| {
            part_of(v, &ends)
                .map(|p| p as u32 + 1)
                .ok_or(Error::IndexOutOfRange {
                    index: v as usize,
                    bound: n,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Multiset::new(parts))
}

/// Exact number of edges of the blowup, or `None` if it overflows `u128`.
pub fn blowup_edge_count(pattern: &Pattern, part_sizes: &[usize]) -> Result<Option<u128>> {
    if part_sizes.len() != pattern.m() {
        return Err(Error::DimensionMismatch {
            expected: pattern.m(),
            got: part_sizes.len(),
        });
    }
    let mut total: u128 = 0;
    for e in pattern.edges() {
        let mut c: u128 = 1;
        for (i, t) in e.runs() {
            let Some(b) = binomial(part_sizes[i as usize - 1] as u64, t as u64) else {
                return Ok(None);
            };
            let Some(next) = c.checked_mul(b) else {
                return Ok(None);
            };
            c = next;
        }
        let Some(next) = total.checked_add(c) else {
            return Ok(None);
        };
        total = next;
    }
    Ok(Some(total))
}

/// All `k`-subsets of `start..start+len`, in lexicographic order.
fn combinations(start: u32, len: usize, k: usize) -> Vec<Vec<u32>> {
    if k > len {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| start + i as u32).collect());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < p + len - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Blowup of the pattern's edge family over consecutive parts
/// `[1..n_1], [n_1+1..n_1+n_2], ...`.
///
/// Refuses to materialize more than `edge_cap` edges.
pub fn blowup(pattern: &Pattern, part_sizes: &[usize], edge_cap: u64) -> Result<Hypergraph> {
    let count = blowup_edge_count(pattern, part_sizes)?;
    match count {
        Some(c) if c <= edge_cap as u128 => {}
        Some(c) => {
            return Err(Error::EdgeCapExceeded {
                edges: c.to_string(),
                cap: edge_cap,
            })
        }
        None => {
            return Err(Error::EdgeCapExceeded {
                edges: "> 2^128".into(),
                cap: edge_cap,
            })
        }
    }
    let starts: Vec<u32> = std::iter::once(1)
        .chain(block_ends(part_sizes).iter().map(|&e| e as u32 + 1))
        .collect();
    let n: usize = part_sizes.iter().sum();

    let mut edges: Vec<Vec<u32>> = Vec::with_capacity(count.unwrap_or(0) as usize);
    for e in pattern.edges() {
        // Parts appear in increasing order, so concatenating per-part
        // choices keeps every edge sorted.
        let mut partial: Vec<Vec<u32>> = vec![Vec::with_capacity(pattern.r())];
        for (i, t) in e.runs() {
            let i = i as usize - 1;
            let choices = combinations(starts[i], part_sizes[i], t);
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for head in &partial {
                for tail in &choices {
                    let mut v = head.clone();
                    v.extend_from_slice(tail);
                    next.push(v);
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        edges.extend(partial);
    }
    edges.sort_unstable();
    Ok(Hypergraph {
        n,
        r: pattern.r(),
        part_sizes: part_sizes.to_vec(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{build_pk, named_pattern};

    /// Every r-subset of [n], filtered by profile membership.
    fn brute_force_edges(p: &Pattern, parts: &[usize]) -> Vec<Vec<u32>> {
        let n: usize = parts.iter().sum();
        let mut out: Vec<Vec<u32>> = combinations(1, n, p.r())
            .into_iter()
            .filter(|s| p.edges().contains(&profile(s, parts).unwrap()))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn profile_examples() {
        let parts = [2, 3, 4];
        assert_eq!(
            profile(&[1, 5, 6], &parts).unwrap(),
            Multiset::from([1, 2, 3])
        );
        assert_eq!(
            profile(&[3, 4, 5], &parts).unwrap(),
            Multiset::from([2, 2, 2])
        );
        assert_eq!(
            profile(&[1, 2, 9], &parts).unwrap(),
            Multiset::from([1, 1, 3])
        );
        assert!(matches!(
            profile(&[1, 10], &parts),
            Err(Error::IndexOutOfRange { index: 10, .. })
        ));
        assert!(matches!(
            profile(&[0], &parts),
            Err(Error::IndexOutOfRange { index: 0, .. })
        ));
        assert!(profile(&[2, 2], &parts).is_err());
    }

    #[test]
    fn profile_skips_empty_parts() {
        assert_eq!(
            profile(&[1, 2, 3], &[1, 0, 2]).unwrap(),
            Multiset::from([1, 3, 3])
        );
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(1, 4, 2).len(), 6);
        assert_eq!(combinations(5, 3, 3), vec![vec![5, 6, 7]]);
        assert_eq!(combinations(1, 3, 0), vec![Vec::<u32>::new()]);
        assert!(combinations(1, 2, 3).is_empty());
        assert_eq!(combinations(1, 0, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn blowup_examples() {
        let single = named_pattern("single-edge-3").unwrap();
        assert_eq!(
            blowup(&single, &[1, 1, 1], DEFAULT_EDGE_CAP)
                .unwrap()
                .edge_count(),
            1
        );

        // Every triple of [4] meets both parts of size 2.
        let fano = named_pattern("fano").unwrap();
        let h = blowup(&fano, &[2, 2], DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(brute_force_edges(&fano, &[2, 2]).len(), 4);
        assert_eq!(h.edge_count(), 4);

        let p = Pattern::from_edges(3, 3, &[&[1, 3, 3]]).unwrap();
        assert_eq!(
            blowup(&p, &[2, 1, 0], DEFAULT_EDGE_CAP)
                .unwrap()
                .edge_count(),
            0
        );

        assert!(matches!(
            blowup(&p, &[1, 1], DEFAULT_EDGE_CAP),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn blowup_matches_brute_force() {
        for (p, parts) in [
            (build_pk(1).unwrap(), vec![2, 3, 4]),
            (build_pk(2).unwrap(), vec![1, 2, 2, 1, 3]),
            (named_pattern("fano").unwrap(), vec![3, 4]),
            (named_pattern("nonminimal-2graph").unwrap(), vec![3, 0, 2]),
        ] {
            let h = blowup(&p, &parts, DEFAULT_EDGE_CAP).unwrap();
            assert_eq!(h.edges, brute_force_edges(&p, &parts));
            assert_eq!(
                blowup_edge_count(&p, &parts).unwrap(),
                Some(h.edge_count() as u128)
            );
            assert_eq!(h.n, parts.iter().sum::<usize>());
        }
    }

    #[test]
    fn edge_cap_is_enforced() {
        let p = build_pk(1).unwrap();
        let err = blowup(&p, &[10, 10, 10], 100).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn export_format() {
        let single = named_pattern("single-edge-3").unwrap();
        let h = blowup(&single, &[1, 1, 2], DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(h.to_text(), "4 3\n1 2 3\n1 2 4\n");
        assert!((h.density() - 0.5).abs() < 1e-15);
    }
}
