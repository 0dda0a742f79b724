//! Exact linear algebra: a dense matrix type generic over [`Field`], and a
//! sparse column-map operator used for the tensor-power calculus, plus the
//! Berkowitz characteristic polynomial for integer symmetric matrices.

use crate::field::Field;
use crate::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = K::one();
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut K {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out: Matrix<K> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).clone() + a.clone() * b.clone();
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, p * self.cols + j);
                }
            }
            let inv = self.at(row, col).inverse().unwrap();
            for j in col..self.cols {
                let v = self.at(row, j).clone() * inv.clone();
                *self.at_mut(row, j) = v;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let f = self.at(r, col).clone();
                    for j in col..self.cols {
                        let v = self.at(r, j).clone() - f.clone() * self.at(row, j).clone();
                        *self.at_mut(r, j) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the null space, as columns of the returned matrix.
    pub fn kernel_basis(&self) -> Matrix<K> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            *out.at_mut(fc, k) = K::one();
            for (r, &pc) in pivots.iter().enumerate() {
                *out.at_mut(pc, k) = K::zero() - m.at(r, fc).clone();
            }
        }
        out
    }

    /// Basis of the column space, as columns.
    pub fn column_space_basis(&self) -> Matrix<K> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Matrix::zeros(self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for r in 0..self.rows {
                *out.at_mut(r, k) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix<K>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = K::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// Solve `self * X = rhs` for X; requires consistency, fails on none.
    pub fn solve(&self, rhs: &Matrix<K>) -> Option<Matrix<K>> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..rhs.cols {
                *aug.at_mut(i, n + j) = rhs.at(i, j).clone();
            }
        }
        let pivots = aug.rref();
        // Inconsistent if a pivot lands in the rhs block.
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut out = Matrix::zeros(n, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                *out.at_mut(p, j) = aug.at(r, n + j).clone();
            }
        }
        Some(out)
    }
}

/// Characteristic polynomial `det(xI - A)` of an integer matrix, by the
/// division-free Berkowitz algorithm; coefficients ascending in degree.
pub fn charpoly_int(a: &Matrix<BigRational>) -> Poly<BigRational> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return Poly::new(vec![BigRational::one()]);
    }
    // Berkowitz: iteratively build the coefficient vector via Toeplitz products.
    let mut c: Vec<BigRational> = vec![BigRational::one(), -a.at(0, 0).clone()];
    for k in 1..n {
        // principal submatrix A_{k+1}; row vector r, column vector s, corner m.
        let akk = a.at(k, k).clone();
        // products s_j = R * M^j * S for j = 0..k-1
        let r: Vec<BigRational> = (0..k).map(|j| a.at(k, j).clone()).collect();
        let s: Vec<BigRational> = (0..k).map(|i| a.at(i, k).clone()).collect();
        let mut mjs = s.clone();
        let mut toeplitz_col = Vec::with_capacity(k + 2);
        toeplitz_col.push(BigRational::one());
        toeplitz_col.push(-akk);
        for _ in 0..k {
            let dot: BigRational = r
                .iter()
                .zip(&mjs)
                .map(|(x, y)| x * y)
                .fold(BigRational::zero(), |acc, v| acc + v);
            toeplitz_col.push(-dot);
            // mjs = M * mjs with M the k x k principal submatrix.
            let mut next = vec![BigRational::zero(); k];
            for i in 0..k {
                let mut acc = BigRational::zero();
                for j in 0..k {
                    acc += a.at(i, j) * &mjs[j];
                }
                next[i] = acc;
            }
            mjs = next;
        }
        // c_new = T * c, T lower-triangular Toeplitz with first column toeplitz_col.
        let mut cnew = vec![BigRational::zero(); k + 2];
        for (i, t) in toeplitz_col.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for (j, cc) in c.iter().enumerate() {
                if i + j < k + 2 {
                    cnew[i + j] += t * cc;
                }
            }
        }
        c = cnew;
    }
    // c holds coefficients of det(xI - A) in *descending* powers.
    c.reverse();
    Poly::new(c)
}

pub fn int_matrix(entries: &[Vec<i64>]) -> Matrix<BigRational> {
    let rows = entries.len();
    let cols = if rows == 0 { 0 } else { entries[0].len() };
    let mut m = Matrix::zeros(rows, cols);
    for (i, row) in entries.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            *m.at_mut(i, j) = BigRational::from_integer(BigInt::from(v));
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Sparse operators
// ---------------------------------------------------------------------------

/// Sparse matrix in column-major form: `cols[j]` lists `(row, value)` sorted
/// by row.  This is the workhorse for operators on tensor powers.
#[derive(Clone, Debug, PartialEq)]
pub struct SpMat<K> {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, K)>>,
}

impl<K: Field> SpMat<K> {
    pub fn zeros(rows: usize, ncols: usize) -> Self {
        SpMat {
            rows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SpMat {
            rows: n,
            cols: (0..n).map(|i| vec![(i, K::one())]).collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn from_dense(m: &Matrix<K>) -> Self {
        let mut out = SpMat::zeros(m.rows, m.cols);
        for j in 0..m.cols {
            for i in 0..m.rows {
                if !m.at(i, j).is_zero() {
                    out.cols[j].push((i, m.at(i, j).clone()));
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix<K> {
        let mut out = Matrix::zeros(self.rows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                *out.at_mut(*i, j) = v.clone();
            }
        }
        out
    }

    pub fn set(&mut self, r: usize, c: usize, v: K) {
        if v.is_zero() {
            return;
        }
        let col = &mut self.cols[c];
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(k) => col[k].1 = v,
            Err(k) => col.insert(k, (r, v)),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|(_, v)| v.is_zero()))
    }

    /// `self * rhs` (column-by-column scatter-gather).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols(), rhs.rows);
        let mut out = SpMat::zeros(self.rows, rhs.ncols());
        let mut dense: Vec<Option<K>> = vec![None; self.rows];
        for (j, col) in rhs.cols.iter().enumerate() {
            let mut touched = Vec::new();
            for (k, bv) in col {
                for (i, av) in &self.cols[*k] {
                    let add = av.clone() * bv.clone();
                    match &mut dense[*i] {
                        Some(cur) => *cur = cur.clone() + add,
                        slot @ None => {
                            *slot = Some(add);
                            touched.push(*i);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let outcol = &mut out.cols[j];
            for i in touched {
                let v = dense[i].take().unwrap();
                if !v.is_zero() {
                    outcol.push((i, v));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.ncols(), rhs.ncols());
        let mut out = SpMat::zeros(self.rows, self.ncols());
        for j in 0..self.ncols() {
            let (a, b) = (&self.cols[j], &rhs.cols[j]);
            let (mut ia, mut ib) = (0, 0);
            let col = &mut out.cols[j];
            while ia < a.len() || ib < b.len() {
                if ib >= b.len() || (ia < a.len() && a[ia].0 < b[ib].0) {
                    col.push(a[ia].clone());
                    ia += 1;
                } else if ia >= a.len() || b[ib].0 < a[ia].0 {
                    col.push(b[ib].clone());
                    ib += 1;
                } else {
                    let v = a[ia].1.clone() + b[ib].1.clone();
                    if !v.is_zero() {
                        col.push((a[ia].0, v));
                    }
                    ia += 1;
                    ib += 1;
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&(K::zero() - K::one())))
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return SpMat::zeros(self.rows, self.ncols());
        }
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, v.clone() * k.clone())).collect())
            .collect();
        SpMat {
            rows: self.rows,
            cols,
        }
    }

    /// Plain (ungraded) Kronecker product.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = SpMat::zeros(self.rows * rhs.rows, self.ncols() * rhs.ncols());
        for (ja, ca) in self.cols.iter().enumerate() {
            for (jb, cb) in rhs.cols.iter().enumerate() {
                let col = &mut out.cols[ja * rhs.ncols() + jb];
                for (ia, va) in ca {
                    for (ib, vb) in cb {
                        col.push((ia * rhs.rows + ib, va.clone() * vb.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<SpMat<K>> {
        self.to_dense().inverse().map(|m| SpMat::from_dense(&m))
    }

    pub fn pow(&self, e: u32) -> SpMat<K> {
        let mut acc = SpMat::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_matches_known() {
        // [[2,1],[1,2]] -> x^2 - 4x + 3
        let a = int_matrix(&[vec![2, 1], vec![1, 2]]);
        let p = charpoly_int(&a);
        let expect: Vec<BigRational> = [3, -4, 1]
            .iter()
            .map(|&c| <BigRational as crate::field::Field>::from_i64(c))
            .collect();
        assert_eq!(p.coeffs, expect);
    }

    #[test]
    fn charpoly_three_by_three_and_singular() {
        // tridiagonal [[2,1,0],[1,2,1],[0,1,2]]: x^3 - 6x^2 + 10x - 4
        let a = int_matrix(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]);
        let p = charpoly_int(&a);
        let expect: Vec<BigRational> = [-4, 10, -6, 1]
            .iter()
            .map(|&c| <BigRational as crate::field::Field>::from_i64(c))
            .collect();
        assert_eq!(p.coeffs, expect);
        // singular [[1,1],[1,1]]: x^2 - 2x
        let a = int_matrix(&[vec![1, 1], vec![1, 1]]);
        let p = charpoly_int(&a);
        let expect: Vec<BigRational> = [0, -2, 1]
            .iter()
            .map(|&c| <BigRational as crate::field::Field>::from_i64(c))
            .collect();
        assert_eq!(p.coeffs, expect);
    }

    #[test]
    fn kernel_and_rank() {
        let mut m = Matrix::<BigRational>::zeros(2, 3);
        *m.at_mut(0, 0) = BigRational::one();
        *m.at_mut(0, 2) = BigRational::one();
        *m.at_mut(1, 1) = BigRational::one();
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.cols, 1);
        // kernel spanned by (-1, 0, 1)
        assert_eq!(*k.at(0, 0), -BigRational::one());
        assert!(k.at(1, 0).is_zero());
        assert_eq!(*k.at(2, 0), BigRational::one());
    }

    #[test]
    fn sparse_roundtrip_and_mul() {
        let a = int_matrix(&[vec![1, 2], vec![3, 4]]);
        let b = int_matrix(&[vec![0, 1], vec![1, 0]]);
        let sa = SpMat::from_dense(&a);
        let sb = SpMat::from_dense(&b);
        assert_eq!(sa.mul(&sb).to_dense(), a.mul(&b));
        assert_eq!(sa.kron(&sb).to_dense().rank(), 4);
    }
}
