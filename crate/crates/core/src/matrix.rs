//! Dense integer matrices and Hermite-normal-form routines.
//!
//! Everything downstream (submodule lattices over `Z` and `Z/q`, kernels,
//! membership, coordinate solving) reduces to row-style HNF over `Z`.
//! Quotient rings are handled by the callers adjoining `q·I` relation rows,
//! so a single integer engine serves both scalar rings. Maps act on row
//! vectors: a matrix `M` sends `v` to `v·M`, and the composite of `f` then
//! `g` has matrix `M_f · M_g`.

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Columns `lo..hi` of every row.
    pub fn col_slice(&self, lo: usize, hi: usize) -> Mat {
        let mut m = Mat::zero(self.rows, hi - lo);
        for r in 0..self.rows {
            for c in lo..hi {
                m.set(r, c - lo, self.get(r, c));
            }
        }
        m
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c));
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut m = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = m.get(r, c) + a * other.get(k, c);
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|a| -a).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: i64) -> Mat {
        let data = self.data.iter().map(|a| a * k).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    /// Reduces every entry into `0..q`.
    pub fn reduce_mod(&self, q: i64) -> Mat {
        let data = self.data.iter().map(|a| a.rem_euclid(q)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
}

/// Applies `v · M` for a row vector `v`.
pub fn apply_row(v: &[i64], m: &Mat) -> Vec<i64> {
    assert_eq!(v.len(), m.rows());
    let mut out = vec![0i64; m.cols()];
    for (r, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for c in 0..m.cols() {
            out[c] += a * m.get(r, c);
        }
    }
    out
}

fn swap_rows(rows: &mut [Vec<i64>], a: usize, b: usize) {
    rows.swap(a, b);
}

fn row_axpy(dst: &mut [i64], src: &[i64], k: i64) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= k * s;
    }
}

fn reduce_row_mod(row: &mut [i64], q: i64) {
    for x in row.iter_mut() {
        *x = x.rem_euclid(q);
    }
}

/// Row-style Hermite normal form.
///
/// The result is the unique canonical basis of the row lattice: pivots are
/// positive, each pivot is the only nonzero entry below it in its column,
/// entries above a pivot lie in `0..pivot`, zero rows are dropped.
///
/// With `modulus = Some(q)` the function returns the HNF of
/// `lattice(rows) + q·Z^n`. Entries are kept reduced mod `q` during a first
/// elimination pass (each reduction subtracts a vector of `q·Z^n`, so the
/// enlarged lattice is preserved even though the plain row lattice may
/// drift), and a final pure pass over the reduced rows plus fresh `q·I`
/// rows restores exactness.
pub fn hnf(m: &Mat, modulus: Option<i64>) -> Mat {
    if let Some(q) = modulus {
        let reduced = hnf_plain(m, Some(q));
        let mut stacked = reduced;
        for i in 0..m.cols() {
            let mut row = vec![0i64; m.cols()];
            row[i] = q;
            stacked.push_row(&row);
        }
        return hnf_plain(&stacked, None);
    }
    hnf_plain(m, None)
}

fn hnf_plain(m: &Mat, modulus: Option<i64>) -> Mat {
    let mut rows = m.row_vecs();
    if let Some(q) = modulus {
        for r in rows.iter_mut() {
            reduce_row_mod(r, q);
        }
    }
    let cols = m.cols();
    let mut start = 0usize;
    for col in 0..cols {
        // Euclid over the unprocessed rows until one nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for r in start..rows.len() {
                if rows[r][col] != 0 {
                    best = match best {
                        None => Some(r),
                        Some(b) if rows[r][col].abs() < rows[b][col].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            swap_rows(&mut rows, start, b);
            let mut dirty = false;
            let pivot = rows[start][col];
            for r in start + 1..rows.len() {
                if rows[r][col] != 0 {
                    let k = rows[r][col].div_euclid(pivot);
                    let (head, tail) = rows.split_at_mut(r);
                    row_axpy(&mut tail[0], &head[start], k);
                    if let Some(q) = modulus {
                        reduce_row_mod(&mut tail[0], q);
                    }
                    if tail[0][col] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if start < rows.len() && rows[start][col] != 0 {
            if rows[start][col] < 0 {
                for x in rows[start].iter_mut() {
                    *x = -*x;
                }
            }
            let pivot = rows[start][col];
            // Normalize the entries above the pivot into 0..pivot.
            for r in 0..start {
                let k = rows[r][col].div_euclid(pivot);
                if k != 0 {
                    let (head, tail) = rows.split_at_mut(start);
                    row_axpy(&mut head[r], &tail[0], k);
                }
            }
            start += 1;
        }
    }
    rows.truncate(start);
    Mat::from_rows(rows, cols)
}

/// HNF together with the unimodular transform: returns `(h, u)` with
/// `u · m = h`, zero rows kept so the shapes line up.
pub fn hnf_with_transform(m: &Mat) -> (Mat, Mat) {
    let mut rows = m.row_vecs();
    let mut u = Mat::identity(rows.len()).row_vecs();
    let cols = m.cols();
    let mut start = 0usize;
    for col in 0..cols {
        loop {
            let mut best: Option<usize> = None;
            for r in start..rows.len() {
                if rows[r][col] != 0 {
                    best = match best {
                        None => Some(r),
                        Some(b) if rows[r][col].abs() < rows[b][col].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            swap_rows(&mut rows, start, b);
            swap_rows(&mut u, start, b);
            let mut dirty = false;
            let pivot = rows[start][col];
            for r in start + 1..rows.len() {
                if rows[r][col] != 0 {
                    let k = rows[r][col].div_euclid(pivot);
                    {
                        let (head, tail) = rows.split_at_mut(r);
                        row_axpy(&mut tail[0], &head[start], k);
                    }
                    {
                        let (head, tail) = u.split_at_mut(r);
                        row_axpy(&mut tail[0], &head[start], k);
                    }
                    if rows[r][col] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if start < rows.len() && rows[start][col] != 0 {
            if rows[start][col] < 0 {
                for x in rows[start].iter_mut() {
                    *x = -*x;
                }
                for x in u[start].iter_mut() {
                    *x = -*x;
                }
            }
            let pivot = rows[start][col];
            for r in 0..start {
                let k = rows[r][col].div_euclid(pivot);
                if k != 0 {
                    {
                        let (head, tail) = rows.split_at_mut(start);
                        row_axpy(&mut head[r], &tail[0], k);
                    }
                    {
                        let (head, tail) = u.split_at_mut(start);
                        row_axpy(&mut head[r], &tail[0], k);
                    }
                }
            }
            start += 1;
        }
    }
    (Mat::from_rows(rows, cols), Mat::from_rows(u, m.rows()))
}

/// Pivot positions `(row, col)` of a matrix already in HNF.
pub fn hnf_pivots(h: &Mat) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    for r in 0..h.rows() {
        if let Some(c) = (0..h.cols()).find(|&c| h.get(r, c) != 0) {
            pivots.push((r, c));
        }
    }
    pivots
}

/// Reduces `v` against an HNF matrix, recording multipliers. Returns the
/// coefficient vector when `v` lies in the row span, `None` otherwise.
pub fn reduce_against_hnf(h: &Mat, v: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(v.len(), h.cols());
    let mut v = v.to_vec();
    let mut coeffs = vec![0i64; h.rows()];
    for (r, c) in hnf_pivots(h) {
        if v[c] != 0 {
            let p = h.get(r, c);
            if v[c] % p != 0 {
                return None;
            }
            let k = v[c] / p;
            coeffs[r] = k;
            for j in 0..v.len() {
                v[j] -= k * h.get(r, j);
            }
        }
    }
    if v.iter().all(|&x| x == 0) {
        Some(coeffs)
    } else {
        None
    }
}

/// Solves `x · m = v` over `Z`; any solution is returned.
pub fn solve_left(m: &Mat, v: &[i64]) -> Option<Vec<i64>> {
    let (h, u) = hnf_with_transform(m);
    let coeffs = reduce_against_hnf(&h, v)?;
    Some(apply_row(&coeffs, &u))
}

/// Basis for the left kernel `{x : x · m = 0}` over `Z`.
pub fn left_kernel(m: &Mat) -> Mat {
    let (h, u) = hnf_with_transform(m);
    let mut rows = Vec::new();
    for r in 0..h.rows() {
        if h.row(r).iter().all(|&x| x == 0) {
            rows.push(u.row(r).to_vec());
        }
    }
    Mat::from_rows(rows, m.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_canonicalizes_row_order() {
        let a = Mat::from_rows(vec![vec![2, 0], vec![0, 3]], 2);
        let b = Mat::from_rows(vec![vec![0, 3], vec![2, 3]], 2);
        assert_eq!(hnf(&a, None), hnf(&b, None));
    }

    #[test]
    fn hnf_drops_dependent_rows() {
        let a = Mat::from_rows(vec![vec![2, 4], vec![4, 8]], 2);
        let h = hnf(&a, None);
        assert_eq!(h.rows(), 1);
        assert_eq!(h.row(0), &[2, 4]);
    }

    #[test]
    fn transform_tracks_row_ops() {
        let m = Mat::from_rows(vec![vec![6, 4], vec![4, 8], vec![2, 2]], 2);
        let (h, u) = hnf_with_transform(&m);
        assert_eq!(u.mul(&m), h);
    }

    #[test]
    fn kernel_of_two_by_one() {
        // x*(2,4)^T stacked: kernel of [[2],[4]] is spanned by (2,-1).
        let m = Mat::from_rows(vec![vec![2], vec![4]], 1);
        let k = left_kernel(&m);
        assert_eq!(k.rows(), 1);
        let x = k.row(0);
        assert_eq!(2 * x[0] + 4 * x[1], 0);
        assert_ne!(x, &[0, 0]);
    }

    #[test]
    fn solve_left_finds_coordinates() {
        let m = Mat::from_rows(vec![vec![1, 2, 0], vec![0, 1, 1]], 3);
        let x = solve_left(&m, &[2, 5, 1]).unwrap();
        assert_eq!(apply_row(&x, &m), vec![2, 5, 1]);
        assert!(solve_left(&m, &[0, 0, 1]).is_none());
    }

    #[test]
    fn membership_requires_divisibility() {
        let h = hnf(&Mat::from_rows(vec![vec![2, 0]], 2), None);
        assert!(reduce_against_hnf(&h, &[4, 0]).is_some());
        assert!(reduce_against_hnf(&h, &[3, 0]).is_none());
    }
}
