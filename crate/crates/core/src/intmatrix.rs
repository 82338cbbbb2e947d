//! Exact integer and rational matrices: fraction-free determinants,
//! Smith and Hermite normal forms, rational inverses, inertia.

use std::fmt;
use std::ops::{Index, IndexMut, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have unequal lengths")]
    Ragged,
    #[error("linear system has no solution mod 2")]
    NoSolutionMod2,
}

pub type Result<T> = std::result::Result<T, MatrixError>;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Ragged);
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("ragged literal matrix")
    }

    pub fn diagonal_matrix(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must match columns");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        x.iter().zip(self.mul_vec(y)).map(|(a, b)| a * b).sum()
    }

    /// Block diagonal sum `diag(self, other)`.
    pub fn block_sum(&self, other: &IntMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Leading principal `k x k` submatrix.
    pub fn leading(&self, k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    // row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = &self[(source, j)] * factor;
            self[(target, j)] += delta;
        }
    }

    // col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = &self[(i, source)] * factor;
            self[(i, target)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense row-major matrix of reduced rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// `x^T M y` for integer vectors.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if y[j].is_zero() {
                    continue;
                }
                acc += &self[(i, j)] * BigRational::from_integer(&x[i] * &y[j]);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                for j in 0..rhs.cols {
                    let t = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn require_square(m: &IntMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(MatrixError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        })
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    require_square(m)?;
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if negate { -det } else { det })
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, accumulated alongside it.
    pub u_inv: IntMatrix,
}

impl SnfDecomposition {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

fn min_nonzero_from(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        while let Some((pi, pj)) = min_nonzero_from(&a, t) {
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    let neg_q = -&q;
                    a.add_row_multiple(i, t, &neg_q);
                    u.add_row_multiple(i, t, &neg_q);
                    u_inv.add_col_multiple(t, i, &q);
                }
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    let neg_q = -&q;
                    a.add_col_multiple(j, t, &neg_q);
                    v.add_col_multiple(j, t, &neg_q);
                }
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !a[(i, j)].mod_floor(&pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SnfDecomposition { d: a, u, v, u_inv }
}

/// Row-style Hermite normal form: returns `(H, W)` with `H = W * M`,
/// `W` unimodular, `H` in echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows come last.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut w = IntMatrix::identity(r);
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            // smallest nonzero entry at or below `row`
            let pivot = (row..r)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(row, p);
            w.swap_rows(row, p);
            let mut done = true;
            for i in row + 1..r {
                let q = h[(i, col)].div_floor(&h[(row, col)]);
                if !q.is_zero() {
                    let neg_q = -q;
                    h.add_row_multiple(i, row, &neg_q);
                    w.add_row_multiple(i, row, &neg_q);
                }
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            w.negate_row(row);
        }
        for i in 0..row {
            let q = h[(i, col)].div_floor(&h[(row, col)]);
            if !q.is_zero() {
                let neg_q = -q;
                h.add_row_multiple(i, row, &neg_q);
                w.add_row_multiple(i, row, &neg_q);
            }
        }
        row += 1;
    }
    (h, w)
}

/// Solves `A X = B` exactly by Gaussian elimination over the rationals.
pub fn solve_rational(a: &IntMatrix, rhs: &IntMatrix) -> Result<RatMatrix> {
    require_square(a)?;
    let n = a.rows;
    if rhs.rows != n {
        return Err(MatrixError::DimensionMismatch {
            expected: n,
            found: rhs.rows,
        });
    }
    let k = rhs.cols;
    let width = n + k;
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .chain(rhs.row(i))
                .cloned()
                .map(BigRational::from_integer)
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !rows[i][col].is_zero())
            .ok_or(MatrixError::Singular)?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for j in col..width {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
        }
    }
    let mut out = RatMatrix::zeros(n, k);
    for i in 0..n {
        for j in 0..k {
            out[(i, j)] = rows[i][n + j].clone();
        }
    }
    Ok(out)
}

/// Exact inverse over the rationals.
pub fn rational_inverse(m: &IntMatrix) -> Result<RatMatrix> {
    require_square(m)?;
    solve_rational(m, &IntMatrix::identity(m.rows))
}

/// Inverse of a unimodular matrix, as an integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let inv = rational_inverse(m)?;
    let n = m.rows;
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &inv[(i, j)];
            if !x.is_integer() {
                return Err(MatrixError::Singular);
            }
            out[(i, j)] = x.to_integer();
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Degenerate,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Definiteness::PositiveDefinite => "positive-definite",
            Definiteness::NegativeDefinite => "negative-definite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::Degenerate => "degenerate",
        })
    }
}

/// Sylvester's criterion on exact leading principal minors.
pub fn definiteness(m: &IntMatrix) -> Result<Definiteness> {
    require_square(m)?;
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let n = m.rows;
    if determinant(m)?.is_zero() {
        return Ok(Definiteness::Degenerate);
    }
    let minors: Vec<BigInt> = (1..=n)
        .map(|k| determinant(&m.leading(k)))
        .collect::<Result<_>>()?;
    if minors.iter().all(Signed::is_positive) {
        return Ok(Definiteness::PositiveDefinite);
    }
    let alternating = minors.iter().enumerate().all(|(k, d)| {
        if k % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    });
    Ok(if alternating {
        Definiteness::NegativeDefinite
    } else {
        Definiteness::Indefinite
    })
}

/// One step of a symmetric (Lagrange) diagonalization: a vector and its
/// square under the form; vectors of distinct steps are orthogonal.
#[derive(Debug, Clone)]
pub struct DiagonalTerm {
    pub square: BigRational,
    pub vector: Vec<BigRational>,
}

/// Exact symmetric diagonalization over the rationals. Returns one term per
/// dimension; the signs of `square` give the inertia.
pub fn symmetric_diagonalization(m: &IntMatrix) -> Result<Vec<DiagonalTerm>> {
    require_square(m)?;
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let n = m.rows;
    let form = RatMatrix::from_int(m);
    let mut basis: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let pair = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                acc += &x[i] * &form[(i, j)] * &y[j];
            }
        }
        acc
    };
    let mut active: Vec<usize> = (0..n).collect();
    let mut terms = Vec::with_capacity(n);
    while !active.is_empty() {
        let pivot = active
            .iter()
            .position(|&k| !pair(&basis[k], &basis[k]).is_zero());
        match pivot {
            Some(pos) => {
                let k = active.remove(pos);
                let kk = pair(&basis[k], &basis[k]);
                for &i in &active {
                    let c = pair(&basis[i], &basis[k]) / &kk;
                    if c.is_zero() {
                        continue;
                    }
                    let bk = basis[k].clone();
                    for (x, y) in basis[i].iter_mut().zip(&bk) {
                        *x -= &c * y;
                    }
                }
                terms.push(DiagonalTerm {
                    square: kk,
                    vector: basis[k].clone(),
                });
            }
            None => {
                // all remaining squares vanish: look for a nonzero cross term
                let cross = active.iter().enumerate().find_map(|(a, &i)| {
                    active[a + 1..]
                        .iter()
                        .find(|&&j| !pair(&basis[i], &basis[j]).is_zero())
                        .map(|&j| (i, j))
                });
                match cross {
                    Some((i, j)) => {
                        let bj = basis[j].clone();
                        for (x, y) in basis[i].iter_mut().zip(&bj) {
                            *x += y;
                        }
                    }
                    None => {
                        for &k in &active {
                            terms.push(DiagonalTerm {
                                square: BigRational::zero(),
                                vector: basis[k].clone(),
                            });
                        }
                        active.clear();
                    }
                }
            }
        }
    }
    Ok(terms)
}

/// `(positive, negative, zero)` counts of a symmetric matrix.
pub fn inertia(m: &IntMatrix) -> Result<(usize, usize, usize)> {
    let terms = symmetric_diagonalization(m)?;
    let pos = terms.iter().filter(|t| t.square.is_positive()).count();
    let neg = terms.iter().filter(|t| t.square.is_negative()).count();
    Ok((pos, neg, terms.len() - pos - neg))
}

/// Signature `positive - negative`.
pub fn signature(m: &IntMatrix) -> Result<i64> {
    let (pos, neg, _) = inertia(m)?;
    Ok(pos as i64 - neg as i64)
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// One solution of `A x = b (mod 2)`, free variables set to zero.
pub fn solve_mod2(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<u8>> {
    require_square(a)?;
    let n = a.rows;
    if b.len() != n {
        return Err(MatrixError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let two = BigInt::from(2);
    let bit = |x: &BigInt| -> bool { !x.mod_floor(&two).is_zero() };
    let mut rows: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            let mut r: Vec<bool> = a.row(i).iter().map(bit).collect();
            r.push(bit(&b[i]));
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..n {
            if i != rank && rows[i][col] {
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[n]) {
        return Err(MatrixError::NoSolutionMod2);
    }
    let mut x = vec![0u8; n];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = rows[r][n] as u8;
    }
    Ok(x)
}

/// Basis (as 0/1 vectors) of the kernel of `A` over the two-element field.
pub fn kernel_mod2(a: &IntMatrix) -> Result<Vec<Vec<u8>>> {
    require_square(a)?;
    let n = a.rows;
    let two = BigInt::from(2);
    let mut rows: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| !x.mod_floor(&two).is_zero())
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..n {
            if i != rank && rows[i][col] {
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut x = vec![0u8; n];
            x[f] = 1;
            for (r, &col) in pivot_cols.iter().enumerate() {
                if rows[r][f] {
                    x[col] = 1;
                }
            }
            x
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(b(n), b(d))
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&m(&[&[1, 0], &[0, 1]])).unwrap(), b(1));
        assert_eq!(determinant(&m(&[&[-15, 10], &[10, -7]])).unwrap(), b(5));
        assert_eq!(determinant(&m(&[&[2, 1], &[1, 2]])).unwrap(), b(3));
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), b(1));
        assert_eq!(
            determinant(&m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])).unwrap(),
            b(-2)
        );
        assert!(matches!(
            determinant(&m(&[&[1, 2, 3], &[4, 5, 6]])),
            Err(MatrixError::NotSquare { .. })
        ));
    }

    fn check_snf(a: &IntMatrix) -> SnfDecomposition {
        let snf = smith_normal_form(a);
        assert_eq!(&(&snf.u * a) * &snf.v, snf.d);
        assert_eq!(&snf.u * &snf.u_inv, IntMatrix::identity(a.rows()));
        assert!(determinant(&snf.u).unwrap().abs().is_one());
        assert!(determinant(&snf.v).unwrap().abs().is_one());
        let diag = snf.invariant_factors();
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        snf
    }

    #[test]
    fn smith_examples() {
        assert_eq!(check_snf(&m(&[&[2, 1], &[1, 2]])).invariant_factors(), vec![b(1), b(3)]);
        assert_eq!(check_snf(&m(&[&[5]])).invariant_factors(), vec![b(5)]);
        assert_eq!(
            check_snf(&m(&[&[-10, 5], &[5, -2]])).invariant_factors(),
            vec![b(1), b(5)]
        );
        assert_eq!(
            check_snf(&m(&[&[2, 0], &[0, 2]])).invariant_factors(),
            vec![b(2), b(2)]
        );
        assert_eq!(
            check_snf(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).invariant_factors(),
            vec![b(2), b(6), b(12)]
        );
        // rectangular and singular inputs
        check_snf(&m(&[&[1, 2, 3], &[4, 5, 6]]));
        assert_eq!(
            check_snf(&m(&[&[1, 2], &[2, 4]])).invariant_factors(),
            vec![b(1), b(0)]
        );
    }

    #[test]
    fn inverse_examples() {
        let inv = rational_inverse(&m(&[&[2]])).unwrap();
        assert_eq!(inv[(0, 0)], q(1, 2));
        let a = m(&[&[-10, 5], &[5, -2]]);
        let inv = rational_inverse(&a).unwrap();
        assert_eq!(inv.to_rows(), vec![vec![q(2, 5), q(1, 1)], vec![q(1, 1), q(2, 1)]]);
        assert!((&RatMatrix::from_int(&a) * &inv).is_identity());
        assert!(rational_inverse(&IntMatrix::identity(3)).unwrap().is_identity());
        assert_eq!(
            rational_inverse(&m(&[&[1, 2], &[2, 4]])),
            Err(MatrixError::Singular)
        );
    }

    #[test]
    fn definiteness_examples() {
        use Definiteness::*;
        assert_eq!(definiteness(&m(&[&[1, 0], &[0, 5]])).unwrap(), PositiveDefinite);
        assert_eq!(definiteness(&m(&[&[-15, 10], &[10, -7]])).unwrap(), NegativeDefinite);
        assert_eq!(definiteness(&m(&[&[-2, 0], &[0, -2]])).unwrap(), NegativeDefinite);
        assert_eq!(definiteness(&m(&[&[1, 1], &[1, 1]])).unwrap(), Degenerate);
        assert_eq!(definiteness(&m(&[&[0, 1], &[1, 0]])).unwrap(), Indefinite);
        assert_eq!(
            definiteness(&m(&[&[1, 2], &[0, 1]])),
            Err(MatrixError::NotSymmetric)
        );
    }

    #[test]
    fn solve_mod2_examples() {
        assert_eq!(solve_mod2(&m(&[&[0, 1], &[1, 0]]), &[b(0), b(0)]).unwrap(), vec![0, 0]);
        assert_eq!(solve_mod2(&m(&[&[1]]), &[b(1)]).unwrap(), vec![1]);
        assert_eq!(
            solve_mod2(&m(&[&[-15, 10], &[10, -7]]), &[b(-15), b(-7)]).unwrap(),
            vec![1, 1]
        );
        assert_eq!(
            solve_mod2(&m(&[&[2, 0], &[0, 2]]), &[b(1), b(0)]),
            Err(MatrixError::NoSolutionMod2)
        );
    }

    #[test]
    fn kernel_mod2_of_even_block() {
        let k = kernel_mod2(&m(&[&[4, 2], &[2, 1]])).unwrap();
        assert_eq!(k, vec![vec![1, 0]]);
        assert!(kernel_mod2(&IntMatrix::identity(3)).unwrap().is_empty());
    }

    #[test]
    fn hermite_basics() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (h, w) = hermite_normal_form(&a);
        assert_eq!(&w * &a, h);
        assert!(determinant(&w).unwrap().abs().is_one());
        for i in 0..3 {
            for j in 0..i {
                assert!(h[(i, j)].is_zero());
            }
        }
        let (h, _) = hermite_normal_form(&m(&[&[1, -1], &[0, 0]]));
        assert_eq!(h, m(&[&[1, -1], &[0, 0]]));
        let (h, _) = hermite_normal_form(&m(&[&[0, 0], &[-1, 1]]));
        assert_eq!(h, m(&[&[1, -1], &[0, 0]]));
    }

    #[test]
    fn inertia_and_clearing() {
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])).unwrap(), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[-15, 10], &[10, -7]])).unwrap(), (0, 2, 0));
        assert_eq!(signature(&m(&[&[2, 1], &[1, 2]])).unwrap(), 2);
        assert_eq!(inertia(&m(&[&[1, 1], &[1, 1]])).unwrap(), (1, 0, 1));
        let v = clear_denominators(&[q(1, 2), q(-1, 3)]);
        assert_eq!(v, vec![b(3), b(-2)]);
    }
}
