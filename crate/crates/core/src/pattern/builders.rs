use super::{Multiset, Pattern};
use crate::{Error, Result};

/// Names accepted by [`named_pattern`]. `single-edge-r` is valid for
/// `r` in `2..=6`.
pub const NAMED_PATTERNS: &[&str] = &[
    "fano",
    "nonminimal-2graph",
    "single-edge-2",
    "single-edge-3",
    "single-edge-4",
    "single-edge-5",
    "single-edge-6",
];

/// The 3-uniform pattern `P_k` on `2k + 1` parts, flattened to an explicit
/// multiset family.
///
/// `P_1 = (3, {123, 133, 233})`. `P_{k+1}` puts a copy of `P_k` on parts
/// `3..=2k+3` and adds every triple with profile `{1,2,j}`, `{1,j,j'}` or
/// `{2,j,j'}` where `j <= j'` range over the inner parts.
pub fn build_pk(k: usize) -> Result<Pattern> {
    if k < 1 {
        return Err(Error::invalid("P_k is defined for k >= 1"));
    }
    let mut edges = vec![
        Multiset::from([1, 2, 3]),
        Multiset::from([1, 3, 3]),
        Multiset::from([2, 3, 3]),
    ];
    for level in 1..k {
        let top = (2 * level + 3) as u32;
        let mut next: Vec<Multiset> = edges
            .iter()
            .map(|e| Multiset::new(e.elements().iter().map(|&i| i + 2).collect()))
            .collect();
        for j in 3..=top {
            next.push(Multiset::from([1, 2, j]));
            for jj in j..=top {
                next.push(Multiset::from([1, j, jj]));
                next.push(Multiset::from([2, j, jj]));
            }
        }
        edges = next;
    }
    Pattern::new(3, 2 * k + 1, edges)
}

/// `|E_k|` from the recurrence `|E_{k+1}| = |E_k| + (2k+1)(2k+3)`.
pub fn pk_edge_count(k: usize) -> usize {
    (1..k).fold(3, |acc, j| acc + (2 * j + 1) * (2 * j + 3))
}

pub fn named_pattern(name: &str) -> Result<Pattern> {
    match name {
        "fano" => Pattern::from_edges(3, 2, &[&[1, 2, 2], &[1, 1, 2]]),
        "nonminimal-2graph" => Pattern::from_edges(2, 3, &[&[1, 2], &[1, 3]]),
        _ => {
            let r = name
                .strip_prefix("single-edge-")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|r| (2..=6).contains(r))
                .ok_or_else(|| Error::UnknownPattern(name.to_string()))?;
            Pattern::new(r, r, vec![Multiset::new((1..=r as u32).collect())])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2_listed() -> Vec<[u32; 3]> {
        vec![
            [1, 2, 3],
            [1, 2, 4],
            [1, 2, 5],
            [1, 3, 3],
            [1, 3, 4],
            [1, 3, 5],
            [1, 4, 4],
            [1, 4, 5],
            [1, 5, 5],
            [2, 3, 3],
            [2, 3, 4],
            [2, 3, 5],
            [2, 4, 4],
            [2, 4, 5],
            [2, 5, 5],
            [3, 4, 5],
            [3, 5, 5],
            [4, 5, 5],
        ]
    }

    #[test]
    fn p1_and_p2_are_the_listed_families() {
        let p1 = build_pk(1).unwrap();
        assert_eq!(
            p1,
            Pattern::from_edges(3, 3, &[&[1, 2, 3], &[1, 3, 3], &[2, 3, 3]]).unwrap()
        );

        let p2 = build_pk(2).unwrap();
        let listed =
            Pattern::new(3, 5, e2_listed().into_iter().map(Multiset::from).collect()).unwrap();
        assert_eq!(p2, listed);
        assert_eq!(p2.edge_count(), 18);
    }

    #[test]
    fn edge_counts_follow_recurrence() {
        assert!(build_pk(0).is_err());
        assert_eq!(pk_edge_count(3), 53);
        for k in 1..=7 {
            let p = build_pk(k).unwrap();
            assert_eq!(p.m(), 2 * k + 1);
            assert_eq!(p.r(), 3);
            assert_eq!(p.edge_count(), pk_edge_count(k));
        }
    }

    #[test]
    fn inner_levels_are_shifted_copies() {
        // P_{k+1} restricted to parts 3.. is P_k.
        for k in 1..=4 {
            let mut outer = build_pk(k + 1).unwrap();
            outer = outer.remove_index(1).unwrap().remove_index(1).unwrap();
            assert_eq!(outer, build_pk(k).unwrap());
        }
    }

    #[test]
    fn named() {
        assert_eq!(
            named_pattern("fano").unwrap(),
            Pattern::from_edges(3, 2, &[&[1, 1, 2], &[1, 2, 2]]).unwrap()
        );
        assert_eq!(
            named_pattern("nonminimal-2graph").unwrap(),
            Pattern::from_edges(2, 3, &[&[1, 2], &[1, 3]]).unwrap()
        );
        assert_eq!(
            named_pattern("single-edge-3").unwrap(),
            Pattern::from_edges(3, 3, &[&[1, 2, 3]]).unwrap()
        );
        for name in NAMED_PATTERNS {
            assert!(named_pattern(name).is_ok(), "{name}");
        }
        assert!(matches!(
            named_pattern("single-edge-7"),
            Err(Error::UnknownPattern(_))
        ));
        assert!(matches!(named_pattern("k4"), Err(Error::UnknownPattern(_))));
    }
}
