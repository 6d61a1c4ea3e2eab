//! Exact sparse linear algebra over Q with deterministic pivoting.

use crate::poly::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Dense matrix from sparse columns; rows are the union of the keys in
/// ascending order.
fn densify<K: Ord + Clone>(cols: &[BTreeMap<K, Q>]) -> Vec<Vec<Q>> {
    let mut keys: Vec<K> = vec![];
    for c in cols {
        for k in c.keys() {
            if let Err(pos) = keys.binary_search(k) {
                keys.insert(pos, k.clone());
            }
        }
    }
    keys.iter()
        .map(|k| {
            cols.iter()
                .map(|c| c.get(k).cloned().unwrap_or_else(Q::zero))
                .collect()
        })
        .collect()
}

/// Row-reduce in place; returns pivot column per eliminated row.
#[allow(clippy::needless_range_loop)]
fn row_reduce(mat: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r][c].clone().recip();
        for j in c..cols {
            mat[r][j] = &mat[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    mat[i][j] = &mat[i][j] - &f * &mat[r][j];
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Exact kernel basis of the Q-linear map given by the sparse columns.
/// Deterministic: pivots are taken in ascending row-key and column order.
pub fn kernel_basis<K: Ord + Clone>(cols: &[BTreeMap<K, Q>]) -> Vec<Vec<Q>> {
    let n = cols.len();
    let mut mat = densify(cols);
    let pivots = row_reduce(&mut mat);
    let piv_set: Vec<usize> = pivots.clone();
    let mut out = vec![];
    for free in 0..n {
        if piv_set.contains(&free) {
            continue;
        }
        let mut v = vec![Q::zero(); n];
        v[free] = Q::from_integer(1.into());
        for (row, &pc) in piv_set.iter().enumerate() {
            if row < mat.len() {
                v[pc] = -mat[row][free].clone();
            }
        }
        out.push(v);
    }
    out
}

/// Solve sum_i x_i col_i = target exactly; None when the target is outside
/// the span.
pub fn solve_in_span<K: Ord + Clone>(
    cols: &[BTreeMap<K, Q>],
    target: &BTreeMap<K, Q>,
) -> Option<Vec<Q>> {
    let n = cols.len();
    let mut all: Vec<BTreeMap<K, Q>> = cols.to_vec();
    all.push(target.clone());
    let mut mat = densify(&all);
    let pivots = row_reduce(&mut mat);
    // if the last column is a pivot, the target is independent of the span
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = mat[row][n].clone();
    }
    Some(x)
}

/// Is the vector v in the span of the columns?
pub fn in_span<K: Ord + Clone>(cols: &[BTreeMap<K, Q>], target: &BTreeMap<K, Q>) -> bool {
    solve_in_span(cols, target).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;

    fn col(entries: &[(u32, i64)]) -> BTreeMap<u32, Q> {
        entries.iter().map(|&(k, v)| (k, q_int(v))).collect()
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let cols = vec![col(&[(0, 1), (1, 1)]), col(&[(0, 2), (1, 2)]), col(&[(0, 1)])];
        let ker = kernel_basis(&cols);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        // verify by substitution
        let mut acc = BTreeMap::new();
        for (i, c) in cols.iter().enumerate() {
            for (k, e) in c {
                let entry = acc.entry(*k).or_insert_with(Q::zero);
                *entry += e * &v[i];
            }
        }
        assert!(acc.values().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_finds_exact_coefficients() {
        let cols = vec![col(&[(0, 1), (1, 2)]), col(&[(1, 1)])];
        let target = col(&[(0, 3), (1, 7)]);
        let x = solve_in_span(&cols, &target).unwrap();
        assert_eq!(x, vec![q_int(3), q_int(1)]);
        let outside = col(&[(2, 1)]);
        assert!(solve_in_span(&cols, &outside).is_none());
    }
}
