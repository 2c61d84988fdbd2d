//! Dense row reduction over a finite field. Sizes here are tiny (at most 4×8),
//! so everything works on plain `Vec`s.

use crate::field::{FieldElement, FieldSpec};

pub type Row = Vec<FieldElement>;

/// Reduced row echelon form of `rows` (each of length `ncols`).
///
/// Returns the nonzero rows and their pivot columns.
pub fn rref(field: FieldSpec, rows: &[Row], ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][col].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col];
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= factor * *p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    debug_assert!(m.iter().all(|row| row.iter().all(|x| x.spec() == field)));
    (m, pivots)
}

pub fn rank(field: FieldSpec, rows: &[Row], ncols: usize) -> usize {
    rref(field, rows, ncols).1.len()
}

/// Basis of `{v : M v = 0}` for the `nrows × ncols` matrix `m`, in echelon form.
pub fn nullspace(field: FieldSpec, m: &[Row], ncols: usize) -> Vec<Row> {
    let (red, pivots) = rref(field, m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Row> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); ncols];
            v[fc] = field.one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = -row[fc];
            }
            v
        })
        .collect();
    rref(field, &basis, ncols).0
}

/// Whether `v` lies in the row space of `basis`.
pub fn in_span(field: FieldSpec, basis: &[Row], v: &[FieldElement]) -> bool {
    let n = v.len();
    let r = rank(field, basis, n);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(field, &ext, n) == r
}

/// Inverse of a square matrix given as rows.
pub fn inverse(field: FieldSpec, m: &[Row]) -> Option<Vec<Row>> {
    let n = m.len();
    let aug: Vec<Row> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(field, &aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Product of two matrices given as rows.
pub fn mat_mul(field: FieldSpec, a: &[Row], b: &[Row]) -> Vec<Row> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| acc + row[k] * b[k][j])
                })
                .collect()
        })
        .collect()
}
