//! Exact linear algebra over a cyclotomic field.
//!
//! Elimination is Gauss-Jordan with exact field division. Rows are kept
//! sparse because the linear systems coming from intertwiner equations have
//! only a handful of nonzeros per row.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::CycNum;

/// Sparse vector, sorted by column, no explicit zeros.
pub type SparseRow = Vec<(usize, CycNum)>;

/// `a + c * b` for sparse rows.
pub fn sparse_axpy(a: &SparseRow, c: &CycNum, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|t| t.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|t| t.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_from_dense(v: &[CycNum]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Incrementally built row-echelon form. Every stored row has leading
/// coefficient 1 at its pivot column and no entries to the left of it.
#[derive(Clone, Debug)]
pub struct Echelon {
    order: u32,
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(order: u32, ncols: usize) -> Echelon {
        Echelon {
            order,
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `row` against the stored rows; the result is zero iff `row`
    /// lies in their span.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            if let Some(prow) = self.rows.get(&col) {
                let c = -&row[k].1;
                row = sparse_axpy(&row, &c, prow);
                // entries before position k are unchanged, col itself vanished
            } else {
                k += 1;
            }
        }
        row
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let row = self.reduce(row);
        let (lead, lc) = row.first()?.clone();
        let inv = lc.inv().expect("nonzero lead");
        let row = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.rows.insert(lead, row);
        Some(lead)
    }

    pub fn insert_dense(&mut self, row: &[CycNum]) -> Option<usize> {
        self.insert(sparse_from_dense(row))
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Back substitution with the given values preassigned to non-pivot
    /// columns. `rhs(row)` supplies the constant for each pivot row.
    fn back_substitute(
        &self,
        n: usize,
        mut x: Vec<CycNum>,
        rhs: impl Fn(&SparseRow) -> CycNum,
    ) -> Vec<CycNum> {
        for (&p, row) in self.rows.iter().rev() {
            let mut acc = rhs(row);
            for (c, v) in row.iter().skip(1) {
                if *c >= n {
                    break;
                }
                if !x[*c].is_zero() {
                    acc -= &(v * &x[*c]);
                }
            }
            x[p] = acc;
        }
        x
    }

    /// Basis of the solution space of `row · x = 0` for all stored rows.
    pub fn null_space(&self) -> Vec<Vec<CycNum>> {
        let n = self.ncols;
        let mut out = Vec::new();
        for f in 0..n {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut x = vec![CycNum::zero(self.order); n];
            x[f] = CycNum::one(self.order);
            out.push(self.back_substitute(n, x, |_| CycNum::zero(self.order)));
        }
        out
    }
}

/// Dense row-major matrix over `Q(ζ_N)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub order: u32,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zeros(order: u32, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            order,
            data: vec![CycNum::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u32, n: usize) -> Matrix {
        let mut m = Matrix::zeros(order, n, n);
        for i in 0..n {
            m.set(i, i, CycNum::one(order));
        }
        m
    }

    pub fn diag(order: u32, d: &[CycNum]) -> Matrix {
        let mut m = Matrix::zeros(order, d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(order: u32, rows: Vec<Vec<CycNum>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            order,
            data,
        }
    }

    pub fn from_cols(order: u32, nrows: usize, cols: &[Vec<CycNum>]) -> Matrix {
        let mut m = Matrix::zeros(order, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_ints(order: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            order,
            rows.iter()
                .map(|r| r.iter().map(|&x| CycNum::from_int(order, x)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &CycNum) {
        let k = i * self.cols + j;
        self.data[k] += v;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn triplets(&self) -> Vec<(usize, usize, CycNum)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.order, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    t.set(j, i, v.clone());
                }
            }
        }
        t
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&CycNum) -> CycNum) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise coercion into `Q(ζ_M)`, `N | M`.
    pub fn embed(&self, new_order: u32) -> crate::error::Result<Matrix> {
        let data = self.data.iter().map(|c| c.embed(new_order)).collect::<crate::error::Result<_>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            order: new_order,
            data,
        })
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.order, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_at(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(self.order);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.order, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.order, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(order: u32, blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(order, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                let v = b.get(i, j);
                if !v.is_zero() {
                    self.set(r0 + i, c0 + j, v.clone());
                }
            }
        }
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut out = Matrix::zeros(self.order, self.rows, self.cols + o.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, o);
        out
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut out = Matrix::zeros(self.order, self.rows + o.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, o);
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(self.order, idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vec<CycNum>> = idx.iter().map(|&j| self.col(j)).collect();
        Matrix::from_cols(self.order, self.rows, &cols)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.order, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    fn echelon_rows(&self) -> Echelon {
        let mut e = Echelon::new(self.order, self.cols);
        for i in 0..self.rows {
            e.insert_dense(self.row(i));
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.echelon_rows().rank()
        } else {
            self.transpose().echelon_rows().rank()
        }
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<CycNum>> {
        self.echelon_rows().null_space()
    }

    /// Basis of `{y : y · self = 0}` as row vectors.
    pub fn left_null_space(&self) -> Vec<Vec<CycNum>> {
        self.transpose().null_space()
    }

    /// Indices of a maximal set of linearly independent columns, greedily
    /// from the left.
    pub fn independent_cols(&self) -> Vec<usize> {
        let mut e = Echelon::new(self.order, self.rows);
        (0..self.cols)
            .filter(|&j| e.insert_dense(&self.col(j)).is_some())
            .collect()
    }

    /// Basis of the column space, taken from the columns themselves.
    pub fn column_basis(&self) -> Matrix {
        self.select_cols(&self.independent_cols())
    }

    /// Some `X` with `self · X = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "rhs row count mismatch");
        let n = self.cols;
        let mut e = Echelon::new(self.order, n + b.cols);
        for i in 0..self.rows {
            let mut row = sparse_from_dense(self.row(i));
            row.extend(
                b.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (n + j, v.clone())),
            );
            e.insert(row);
        }
        if e.pivots().any(|p| p >= n) {
            return None;
        }
        let mut out = Matrix::zeros(self.order, n, b.cols);
        for j in 0..b.cols {
            let target = n + j;
            let x = e.back_substitute(n, vec![CycNum::zero(self.order); n], |row| {
                row.iter()
                    .find(|(c, _)| *c == target)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(|| CycNum::zero(self.order))
            });
            for (i, v) in x.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        if self.rank() != self.rows {
            return None;
        }
        self.solve(&Matrix::identity(self.order, self.rows))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Determinant by elimination; square matrices only.
    pub fn det(&self) -> CycNum {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = CycNum::one(self.order);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return CycNum::zero(self.order);
            };
            if p != c {
                for j in 0..n {
                    let t = a.get(p, j).clone();
                    let u = a.get(c, j).clone();
                    a.set(p, j, u);
                    a.set(c, j, t);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                let f = a.get(r, c);
                if f.is_zero() {
                    continue;
                }
                let f = f * &inv;
                for j in c..n {
                    let v = a.get(c, j);
                    if !v.is_zero() {
                        let nv = a.get(r, j) - &(&f * v);
                        a.set(r, j, nv);
                    }
                }
            }
        }
        det
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [ζ{}]", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(6, rows)
    }

    #[test]
    fn rank_and_null_space() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.null_space();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(CycNum::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let q = CycNum::q_pow(3, 1);
        let one = CycNum::one(6);
        let a = Matrix::from_rows(6, vec![vec![q.clone(), one.clone()], vec![one.clone(), q.inv().unwrap()]]);
        // det = 1 - 1 = 0
        assert!(a.inverse().is_none());
        let b = Matrix::from_rows(6, vec![vec![q.clone(), one.clone()], vec![CycNum::zero(6), q.clone()]]);
        let bi = b.inverse().unwrap();
        assert_eq!(b.mul(&bi), Matrix::identity(6, 2));
        assert_eq!(b.det(), &q * &q);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(a.solve(&m(&[&[1], &[3]])).is_none());
        let x = a.solve(&m(&[&[1], &[2]])).unwrap();
        assert_eq!(a.mul(&x), m(&[&[1], &[2]]));
    }

    #[test]
    fn independent_columns() {
        let a = m(&[&[1, 2, 0, 1], &[0, 0, 1, 1]]);
        assert_eq!(a.independent_cols(), vec![0, 2]);
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(&[&[1, 2]]);
        let b = m(&[&[0], &[3]]);
        let k = a.kron(&b);
        assert_eq!((k.rows, k.cols), (2, 2));
        assert_eq!(k, m(&[&[0, 0], &[3, 6]]));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(4, 3);
        assert!(e.insert_dense(&[CycNum::one(4), CycNum::zero(4), CycNum::one(4)]).is_some());
        assert!(e.contains(sparse_from_dense(&[
            CycNum::from_int(4, 2),
            CycNum::zero(4),
            CycNum::from_int(4, 2)
        ])));
    }
}
