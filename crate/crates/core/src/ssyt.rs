//! Semistandard Young tableaux counted by exhaustive filling.

use itertools::Itertools;

/// Number of fillings of `shape` with entries in 1..=n that weakly increase
/// along rows and strictly increase down columns.
pub fn count_ssyt(shape: &[usize], n: usize) -> u64 {
    let cells: usize = shape.iter().sum();
    std::iter::repeat_n(1..=n, cells)
        .multi_cartesian_product()
        .filter(|fill| is_semistandard(shape, fill))
        .count() as u64
}

fn is_semistandard(shape: &[usize], fill: &[usize]) -> bool {
    let mut rows = Vec::with_capacity(shape.len());
    let mut at = 0;
    for &len in shape {
        rows.push(&fill[at..at + len]);
        at += len;
    }
    let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
    let cols_ok = rows.windows(2).all(|pair| pair[1].iter().zip(pair[0]).all(|(low, high)| low > high));
    rows_ok && cols_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shapes() {
        assert_eq!(count_ssyt(&[1], 4), 4);
        assert_eq!(count_ssyt(&[2], 3), 6);
        assert_eq!(count_ssyt(&[1, 1], 3), 3);
        assert_eq!(count_ssyt(&[2, 1], 3), 8);
    }

    #[test]
    fn rectangles() {
        assert_eq!(count_ssyt(&[2, 2], 4), 20);
        assert_eq!(count_ssyt(&[3, 3], 4), 50);
    }
}
