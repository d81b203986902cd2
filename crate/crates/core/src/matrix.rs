//! Dense row-major matrices over a finite field, sized for form evaluation
//! and subspace bookkeeping (dimensions stay in single digits).

use crate::fields::{Fe, Field};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Fe>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, a: vec![Fe(0); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.a[i * n + i] = Fe(1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Mat {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut a = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            a.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, a }
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn at(&self, i: usize, j: usize) -> Fe {
        self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.a[i * self.cols + j] = v;
    }
}

pub fn mat_mul(f: &Field, x: &Mat, y: &Mat) -> Mat {
    assert_eq!(x.cols, y.rows);
    let mut out = Mat::zero(x.rows, y.cols);
    for i in 0..x.rows {
        for l in 0..x.cols {
            let xv = x.at(i, l);
            if xv.0 == 0 {
                continue;
            }
            for j in 0..y.cols {
                let add = f.mul(xv, y.at(l, j));
                out.a[i * y.cols + j] = f.add(out.at(i, j), add);
            }
        }
    }
    out
}

/// v * M for a row vector v.
pub fn vec_mat(f: &Field, v: &[Fe], m: &Mat) -> Vec<Fe> {
    assert_eq!(v.len(), m.rows);
    let mut out = vec![Fe(0); m.cols];
    for (l, &vl) in v.iter().enumerate() {
        if vl.0 == 0 {
            continue;
        }
        for j in 0..m.cols {
            out[j] = f.add(out[j], f.mul(vl, m.at(l, j)));
        }
    }
    out
}

/// In-place reduced row echelon form: pivots 1, pivot columns cleared above
/// and below, zero rows dropped. Returns the rank.
pub fn rref(f: &Field, m: &mut Mat) -> usize {
    let mut r = 0;
    for col in 0..m.cols {
        let Some(piv) = (r..m.rows).find(|&i| m.at(i, col).0 != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..m.cols {
                m.a.swap(piv * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.at(r, col));
        for j in col..m.cols {
            m.set(r, j, f.mul(inv, m.at(r, j)));
        }
        for i in 0..m.rows {
            if i != r && m.at(i, col).0 != 0 {
                let c = m.at(i, col);
                for j in col..m.cols {
                    let sub = f.mul(c, m.at(r, j));
                    m.set(i, j, f.sub(m.at(i, j), sub));
                }
            }
        }
        r += 1;
        if r == m.rows {
            break;
        }
    }
    m.rows = r;
    m.a.truncate(r * m.cols);
    r
}

pub fn rank(f: &Field, m: &Mat) -> usize {
    let mut copy = m.clone();
    rref(f, &mut copy)
}

/// Basis of the right kernel {x : M x^T = 0}, one solution per row, in RREF.
pub fn kernel(f: &Field, m: &Mat) -> Mat {
    let mut red = m.clone();
    rref(f, &mut red);
    let mut pivot_col = vec![usize::MAX; red.rows];
    let mut is_pivot = vec![false; m.cols];
    for i in 0..red.rows {
        let col = (0..red.cols).find(|&j| red.at(i, j).0 != 0).unwrap();
        pivot_col[i] = col;
        is_pivot[col] = true;
    }
    let mut rows = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Fe(0); m.cols];
        v[free] = Fe(1);
        for i in 0..red.rows {
            v[pivot_col[i]] = f.neg(red.at(i, free));
        }
        rows.push(v);
    }
    let mut out = Mat::from_rows(&rows);
    if out.rows > 0 {
        out.cols = m.cols;
        rref(f, &mut out);
    } else {
        out.cols = m.cols;
    }
    out
}

pub fn inverse(f: &Field, m: &Mat) -> Option<Mat> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = Mat::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.at(i, j));
        }
        aug.set(i, n + i, Fe(1));
    }
    if rref(f, &mut aug) < n {
        return None;
    }
    // Left half must be the identity or some pivot landed in the right half.
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { Fe(1) } else { Fe(0) };
            if aug.at(i, j) != want {
                return None;
            }
        }
    }
    let mut inv = Mat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, aug.at(i, n + j));
        }
    }
    Some(inv)
}

/// Does `v` lie in the row space of an RREF matrix? Reduces v by the rows.
pub fn in_rowspace(f: &Field, m: &Mat, v: &[Fe]) -> bool {
    let mut v = v.to_vec();
    for i in 0..m.rows {
        let col = (0..m.cols).find(|&j| m.at(i, j).0 != 0).unwrap();
        if v[col].0 != 0 {
            let c = v[col];
            for j in col..m.cols {
                let sub = f.mul(c, m.at(i, j));
                v[j] = f.sub(v[j], sub);
            }
        }
    }
    v.iter().all(|x| x.0 == 0)
}
