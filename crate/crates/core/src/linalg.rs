//! Gaussian elimination over a [`Field`]. Matrices are lists of rows.

use crate::field::{Field, Scalar};

pub type Row = Vec<Scalar>;

/// Reduce `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(f: &Field, rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, i);
        if !rows[r][c].is_one() {
            let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = f.mul(x, &inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &Field, rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : A x = 0}` for an `m x ncols` matrix `A`, in canonical form
/// (one vector per free column, with a 1 there).
pub fn kernel(f: &Field, a: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = a.to_vec();
    let pivots = rref(f, &mut m);
    let mut out = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for j in (0..ncols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![f.zero(); ncols];
        v[j] = f.one();
        for (row, &p) in m.iter().zip(&pivots) {
            if !row[j].is_zero() {
                v[p] = f.neg(&row[j]);
            }
        }
        out.push(v);
    }
    out
}

/// Some solution of `A x = b`, free variables set to zero.
pub fn solve(f: &Field, a: &[Row], b: &[Scalar], ncols: usize) -> Option<Row> {
    let mut m: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if m.is_empty() {
        return Some(vec![f.zero(); ncols]);
    }
    let pivots = rref(f, &mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Transpose a list of column vectors into rows.
pub fn columns_to_rows(f: &Field, cols: &[Row], nrows: usize) -> Vec<Row> {
    (0..nrows)
        .map(|i| cols.iter().map(|c| c.get(i).cloned().unwrap_or_else(|| f.zero())).collect())
        .collect()
}
