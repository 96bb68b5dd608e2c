//! Fixed-order reductions.

use std::ops::Add;

/// Pairwise sum over a fixed binary tree: the result depends only on the
/// input order, not on how the inputs were produced.
pub fn tree_sum<S: Copy + Add<Output = S>>(xs: &[S], zero: S) -> S {
    match xs.len() {
        0 => zero,
        1 => xs[0],
        n => {
            let mid = n / 2;
            tree_sum(&xs[..mid], zero) + tree_sum(&xs[mid..], zero)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums() {
        assert_eq!(tree_sum(&[] as &[f64], 0.0), 0.0);
        assert_eq!(tree_sum(&[1.0, 2.0, 3.0], 0.0), 6.0);
    }
}
