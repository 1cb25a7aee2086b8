//! Dense linear algebra over `F_p` on row-major `Vec<Vec<u32>>` matrices.

use crate::field::PrimeField;

pub type Matrix = Vec<Vec<u32>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            let mut row = vec![0; n];
            row[i] = 1;
            row
        })
        .collect()
}

#[cfg(test)]
pub fn transpose(a: &Matrix, cols: usize) -> Matrix {
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn mul(fp: PrimeField, a: &Matrix, b: &Matrix, b_cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| fp.add(acc, fp.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn dot(fp: PrimeField, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| fp.add(acc, fp.mul(x, y)))
}

/// `a^T M b` for a square `M`.
pub fn bilinear(fp: PrimeField, gram: &Matrix, a: &[u32], b: &[u32]) -> u32 {
    let mut acc = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        acc = fp.add(acc, fp.mul(ai, dot(fp, &gram[i], b)));
    }
    acc
}

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(fp: PrimeField, rows: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = fp.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let factor = rows[i][c];
            for j in 0..cols {
                let v = fp.mul(factor, rows[r][j]);
                rows[i][j] = fp.sub(rows[i][j], v);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(fp: PrimeField, a: &Matrix, cols: usize) -> usize {
    let mut work = a.clone();
    rref(fp, &mut work, cols).len()
}

pub fn det(fp: PrimeField, a: &Matrix) -> u32 {
    let n = a.len();
    let mut work = a.clone();
    let mut acc = 1u32;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| work[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            work.swap(pr, c);
            acc = fp.neg(acc);
        }
        acc = fp.mul(acc, work[c][c]);
        let inv = fp.inv(work[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if work[i][c] == 0 {
                continue;
            }
            let factor = fp.mul(work[i][c], inv);
            for j in c..n {
                let v = fp.mul(factor, work[c][j]);
                work[i][j] = fp.sub(work[i][j], v);
            }
        }
    }
    acc
}

/// Basis of `{x : a x = 0}` for an `rows x cols` matrix.
pub fn kernel(fp: PrimeField, a: &Matrix, cols: usize) -> Matrix {
    let mut work = a.clone();
    let pivots = rref(fp, &mut work, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; cols];
            v[fc] = 1;
            for (row, &pc) in work.iter().zip(&pivots) {
                v[pc] = fp.neg(row[fc]);
            }
            v
        })
        .collect()
}
