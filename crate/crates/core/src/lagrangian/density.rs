use super::polynomial::SimplexVector;
use crate::pattern::{blowup, Pattern};
use crate::{Error, Result};

/// Integer part sizes summing to `n`, proportional to `weights` by the
/// largest-remainder method; ties go to the lower index.
pub fn round_weights(weights: &SimplexVector, n: usize) -> Vec<usize> {
    let exact: Vec<f64> = weights.coords().iter().map(|w| w * n as f64).collect();
    let mut sizes: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(n.saturating_sub(assigned)) {
        sizes[i] += 1;
    }
    sizes
}

/// Edge density of the blowup on `n` vertices whose part sizes follow
/// `weights`.
pub fn blowup_density(
    pattern: &Pattern,
    weights: &SimplexVector,
    n: usize,
    edge_cap: u64,
) -> Result<f64> {
    if weights.dim() != pattern.m() {
        return Err(Error::DimensionMismatch {
            expected: pattern.m(),
            got: weights.dim(),
        });
    }
    if n < pattern.m() {
        return Err(Error::invalid(format!(
            "n = {n} is smaller than the part count {}",
            pattern.m()
        )));
    }
    let sizes = round_weights(weights, n);
    Ok(blowup(pattern, &sizes, edge_cap)?.density())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::closed_form::pk_optimal_vector_for;
    use crate::pattern::{build_pk, DEFAULT_EDGE_CAP};

    #[test]
    fn largest_remainder() {
        let w = SimplexVector::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(round_weights(&w, 10), vec![4, 3, 3]);
        let w = SimplexVector::new(vec![0.2113, 0.2113, 0.5774]).unwrap();
        assert_eq!(round_weights(&w, 90), vec![19, 19, 52]);
        for n in [1, 7, 50, 101] {
            assert_eq!(round_weights(&w, n).iter().sum::<usize>(), n);
        }
    }

    #[test]
    fn p1_blowup_density() {
        let p1 = build_pk(1).unwrap();
        let w = pk_optimal_vector_for(1).unwrap();
        let d90 = blowup_density(&p1, &w, 90, DEFAULT_EDGE_CAP).unwrap();
        // parts 19, 19, 52: (19*19*52 + 2*19*C(52,2)) / C(90,3)
        assert!((d90 - 69160.0 / 117480.0).abs() < 1e-15);
        let target = 1.0 / 3f64.sqrt();
        assert!((d90 - target).abs() < 0.05);
    }

    #[test]
    fn singleton_parts_keep_only_simple_edges() {
        let p1 = build_pk(1).unwrap();
        let d = blowup_density(&p1, &SimplexVector::uniform(3), 3, DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(d, 1.0);
        assert_eq!(p1.simple_edge_count(), 1);
        assert!(blowup_density(&p1, &SimplexVector::uniform(3), 2, DEFAULT_EDGE_CAP).is_err());
        assert!(blowup_density(&p1, &SimplexVector::uniform(2), 5, DEFAULT_EDGE_CAP).is_err());
    }
}
