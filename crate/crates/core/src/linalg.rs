//! Dense matrices over prime fields.
//!
//! Matrices hold `i64` entries so the same type carries the integer data of
//! input modules and residues produced by computations mod p. Every routine
//! taking a [`PrimeField`] reduces its inputs first and returns residues in
//! `[0, p)`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Block-diagonal sum.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        m.paste(0, 0, a);
        m.paste(a.rows, a.cols, b);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, r: usize, c: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r + i, c + j));
            }
        }
        m
    }

    /// Columns `[c, c + cols)`.
    pub fn column_range(&self, c: usize, cols: usize) -> Matrix {
        self.submatrix(0, c, self.rows, cols)
    }

    pub fn hstack(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        let mut m = Matrix::zeros(a.rows, a.cols + b.cols);
        m.paste(0, 0, a);
        m.paste(0, a.cols, b);
        m
    }

    pub fn vstack(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.cols, b.cols);
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols);
        m.paste(0, 0, a);
        m.paste(a.rows, 0, b);
        m
    }

    /// Maps integer entries to their symmetric residues in `(-p/2, p/2]`.
    pub fn symmetric_lift(&self, p: u64) -> Matrix {
        let p = p as i64;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|&v| {
                    let r = v.rem_euclid(p);
                    if r > p / 2 {
                        r - p
                    } else {
                        r
                    }
                })
                .collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

/// Result of row reduction: reduced echelon form and pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub form: Matrix,
    pub pivots: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 31)).contains(&p), "prime out of supported range");
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> i64 {
        v.rem_euclid(self.p as i64)
    }

    #[inline]
    pub fn add(&self, a: i64, b: i64) -> i64 {
        (a + b).rem_euclid(self.p as i64)
    }

    #[inline]
    pub fn sub(&self, a: i64, b: i64) -> i64 {
        (a - b).rem_euclid(self.p as i64)
    }

    #[inline]
    pub fn mul(&self, a: i64, b: i64) -> i64 {
        (self.reduce(a) * self.reduce(b)).rem_euclid(self.p as i64)
    }

    pub fn inv(&self, a: i64) -> i64 {
        let a = self.reduce(a);
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut a: i64, mut e: u64) -> i64 {
        let mut acc = 1i64;
        a = self.reduce(a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Matrix {
        Matrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&v| self.reduce(v)).collect(),
        }
    }

    pub fn matmul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.cols, b.rows, "matmul shapes {a:?} * {b:?}");
        let p = self.p as i64;
        let mut out = Matrix::zeros(a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let aik = a.get(i, k).rem_euclid(p);
                if aik == 0 {
                    continue;
                }
                for j in 0..b.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = (out.data[idx] + aik * b.get(k, j).rem_euclid(p)) % p;
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, a: &Matrix, v: &[i64]) -> Vec<i64> {
        assert_eq!(a.cols, v.len());
        (0..a.rows)
            .map(|i| {
                a.row(i).iter().zip(v).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
            })
            .collect()
    }

    pub fn mat_add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(&x, &y)| self.add(x, y)).collect(),
        }
    }

    pub fn mat_sub(&self, a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(&x, &y)| self.sub(x, y)).collect(),
        }
    }

    pub fn mat_scale(&self, a: &Matrix, k: i64) -> Matrix {
        Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().map(|&x| self.mul(x, k)).collect(),
        }
    }

    pub fn echelon(&self, m: &Matrix) -> Echelon {
        let mut a = self.reduce_matrix(m);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..a.cols {
                    a.data.swap(pr * a.cols + j, r * a.cols + j);
                }
            }
            let inv = self.inv(a.get(r, c));
            for j in 0..a.cols {
                let v = self.mul(a.get(r, j), inv);
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..a.cols {
                    let v = self.sub(a.get(i, j), self.mul(f, a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { form: a, pivots }
    }

    pub fn rank(&self, m: &Matrix) -> usize {
        self.echelon(m).pivots.len()
    }

    /// Basis of the right null space, as columns of the returned matrix.
    pub fn nullspace(&self, m: &Matrix) -> Matrix {
        let ech = self.echelon(m);
        let free: Vec<usize> = (0..m.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(m.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (r, &pc) in ech.pivots.iter().enumerate() {
                basis.set(pc, k, self.reduce(-ech.form.get(r, fc)));
            }
        }
        basis
    }

    /// Basis of the column space, chosen among the columns of `m`.
    pub fn column_space(&self, m: &Matrix) -> Matrix {
        let ech = self.echelon(m);
        let cols: Vec<Vec<i64>> =
            ech.pivots.iter().map(|&c| self.reduce_vec(&m.column(c))).collect();
        Matrix::from_columns(m.rows, &cols)
    }

    fn reduce_vec(&self, v: &[i64]) -> Vec<i64> {
        v.iter().map(|&x| self.reduce(x)).collect()
    }

    /// Solves `a * x = b` for `x`; `None` if some column of `b` is outside the
    /// column space of `a`. Free variables are set to zero.
    pub fn solve(&self, a: &Matrix, b: &Matrix) -> Option<Matrix> {
        assert_eq!(a.rows, b.rows);
        let aug = Matrix::hstack(a, b);
        let ech = self.echelon(&aug);
        if ech.pivots.iter().any(|&c| c >= a.cols) {
            return None;
        }
        let mut x = Matrix::zeros(a.cols, b.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, ech.form.get(r, a.cols + j));
            }
        }
        Some(x)
    }

    /// Unit vectors completing the columns of `basis` (assumed independent) to
    /// a basis of the ambient space, returned as column indices.
    pub fn complement_units(&self, basis: &Matrix) -> Vec<usize> {
        let n = basis.rows;
        let mut current = self.reduce_matrix(basis);
        let mut rank = self.rank(&current);
        let mut chosen = Vec::new();
        for i in 0..n {
            if rank == n {
                break;
            }
            let mut unit = vec![0; n];
            unit[i] = 1;
            let trial = Matrix::hstack(&current, &Matrix::from_columns(n, &[unit]));
            let r = self.rank(&trial);
            if r > rank {
                current = trial;
                rank = r;
                chosen.push(i);
            }
        }
        chosen
    }

    pub fn inverse(&self, m: &Matrix) -> Option<Matrix> {
        if m.rows != m.cols {
            return None;
        }
        self.solve(m, &Matrix::identity(m.rows)).filter(|_| self.rank(m) == m.rows)
    }

    pub fn is_invertible(&self, m: &Matrix) -> bool {
        m.rows == m.cols && self.rank(m) == m.rows
    }

    /// Whether `v` lies in the row space of the reduced echelon matrix `rref`
    /// (with the given pivot columns).
    pub fn in_row_space(&self, rref: &Matrix, pivots: &[usize], v: &[i64]) -> bool {
        let mut w: Vec<i64> = self.reduce_vec(v);
        for (r, &pc) in pivots.iter().enumerate() {
            let f = w[pc];
            if f == 0 {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate() {
                *wj = self.sub(*wj, self.mul(f, rref.get(r, j)));
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// Primes strictly greater than `floor`, in increasing order.
pub fn primes_above(floor: u64) -> impl Iterator<Item = u64> {
    ((floor + 1)..).filter(|&n| is_prime(n))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_nullspace_solve() {
        let f = PrimeField::new(23);
        let m = Matrix::from_rows(2, 3, vec![1, 2, 3, 2, 4, 6]);
        assert_eq!(f.rank(&m), 1);
        let ns = f.nullspace(&m);
        assert_eq!(ns.cols(), 2);
        assert!(f.matmul(&m, &ns).is_zero());
        let a = Matrix::from_rows(2, 2, vec![1, 1, 0, 1]);
        let b = Matrix::from_rows(2, 1, vec![3, 1]);
        let x = f.solve(&a, &b).unwrap();
        assert_eq!(x.column(0), vec![2, 1]);
        assert!(f.solve(&m, &Matrix::from_rows(2, 1, vec![1, 0])).is_none());
    }

    #[test]
    fn inverse_mod_p() {
        let f = PrimeField::new(29);
        let a = Matrix::from_rows(2, 2, vec![2, 1, 1, 1]);
        let inv = f.inverse(&a).unwrap();
        assert_eq!(f.matmul(&a, &inv), Matrix::identity(2));
        assert!(f.inverse(&Matrix::from_rows(2, 2, vec![1, 2, 2, 4])).is_none());
    }

    #[test]
    fn complement_and_membership() {
        let f = PrimeField::new(23);
        let b = Matrix::from_columns(3, &[vec![1, 1, 0]]);
        let comp = f.complement_units(&b);
        assert_eq!(comp, vec![0, 2]);
        let ech = f.echelon(&b.transpose());
        assert!(f.in_row_space(&ech.form, &ech.pivots, &[2, 2, 0]));
        assert!(!f.in_row_space(&ech.form, &ech.pivots, &[1, 0, 0]));
    }

    #[test]
    fn prime_iterator() {
        let ps: Vec<u64> = primes_above(20).take(5).collect();
        assert_eq!(ps, vec![23, 29, 31, 37, 41]);
        assert_eq!(Matrix::from_rows(1, 2, vec![22, 12]).symmetric_lift(23).data(), &[-1, -11]);
    }
}
