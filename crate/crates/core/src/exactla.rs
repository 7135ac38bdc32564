//! Exact rational scalars, dense matrices and canonical subspaces.
//!
//! Every "canonical basis" in this crate is the reduced row-echelon form of
//! a spanning set, with columns scanned left to right. Two subspaces are
//! equal exactly when their RREF bases are identical, which turns
//! canonical isomorphisms downstream into literal equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Matrix::from_rows(cols, rows).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Reorders columns: column `c` of the result is column `order[c]` of `self`.
    pub fn select_columns(&self, order: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, order.len());
        for r in 0..self.rows {
            for (c, &src) in order.iter().enumerate() {
                out.set(r, c, self.get(r, src).clone());
            }
        }
        out
    }

    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension("stacking matrices of different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn rank(&self) -> usize {
        rref_with_pivots(self).1.len()
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn rref_with_pivots(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..a.cols {
        if prow == a.rows {
            break;
        }
        let Some(src) = (prow..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if src != prow {
            for c in 0..a.cols {
                a.data.swap(src * a.cols + c, prow * a.cols + c);
            }
        }
        let inv = a.get(prow, col).recip();
        for c in col..a.cols {
            let v = a.get(prow, c) * &inv;
            a.set(prow, c, v);
        }
        for r in 0..a.rows {
            if r == prow || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.cols {
                let p = a.get(prow, c);
                if p.is_zero() {
                    continue;
                }
                let v = a.get(r, c) - &factor * p;
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        prow += 1;
    }
    (a, pivots)
}

/// The unique reduced row-echelon form; zero rows are kept at the bottom.
pub fn rref(m: &Matrix) -> Matrix {
    rref_with_pivots(m).0
}

/// A linear subspace of `Q^ambient_dim`, stored by its RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(ambient_dim) }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = rref_with_pivots(m);
        let keep: Vec<Vec<Rational>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient_dim: m.cols(),
            basis: Matrix::from_rows(m.cols(), keep).expect("rows of equal width"),
        }
    }

    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        Ok(Subspace::row_space(&Matrix::from_rows(ambient_dim, vectors)?))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.basis.rows())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rest = v.to_vec();
        for (r, p) in self.pivots().into_iter().enumerate() {
            if rest[p].is_zero() {
                continue;
            }
            let f = rest[p].clone();
            for (x, b) in rest.iter_mut().zip(self.basis.row(r)) {
                *x -= &f * b;
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self, other)?;
        // x = a*B1 = b*B2  <=>  (a, -b) in ker [B1; B2]^T
        let stacked = self.basis.stack(&other.basis)?;
        let coeffs = kernel(&stacked.transpose());
        let d1 = self.dim();
        let vectors: Vec<Vec<Rational>> = (0..coeffs.dim())
            .map(|r| {
                let a = &coeffs.basis.row(r)[..d1];
                (0..self.ambient_dim)
                    .map(|c| (0..d1).fold(Rational::zero(), |s, i| s + &a[i] * self.basis.get(i, c)))
                    .collect()
            })
            .collect();
        Subspace::span(self.ambient_dim, vectors)
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::Dimension(format!(
            "ambient dimensions differ: {} vs {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(())
}

/// Right kernel `{v : m v = 0}` with its RREF basis.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = rref_with_pivots(m);
    let n = m.cols();
    let mut vectors = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            let e = r.get(row, free);
            if !e.is_zero() {
                v[p] = -e.clone();
            }
        }
        vectors.push(v);
    }
    Subspace::span(n, vectors).expect("kernel vectors have the ambient width")
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    check_ambient(a, b)?;
    Ok(a.basis == b.basis)
}

/// Scales a nonzero vector so that its first nonzero entry is one.
pub fn normalize_projective(v: &[Rational]) -> Option<Vec<Rational>> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    Some(v.iter().map(|x| x / &lead).collect())
}

/// Whether two nonzero vectors span the same line.
pub fn projectively_equal(a: &[Rational], b: &[Rational]) -> bool {
    match (normalize_projective(a), normalize_projective(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

pub fn is_negative(x: &Rational) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(rows: &[&[i64]]) -> Subspace {
        Subspace::row_space(&Matrix::from_i64(rows))
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&Matrix::from_i64(&[&[2, 4], &[1, 2]])), Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(rref(&Matrix::identity(3)), Matrix::identity(3));
        assert_eq!(rref(&Matrix::from_i64(&[&[0, 1], &[1, 0]])), Matrix::identity(2));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&Matrix::from_i64(&[&[-1, 0, -1, 0]]));
        assert_eq!(k.basis(), &Matrix::from_i64(&[&[1, 0, -1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]));
        assert_eq!(kernel(&Matrix::zeros(1, 3)), Subspace::full(3));
        assert_eq!(kernel(&Matrix::identity(2)).dim(), 0);
    }

    #[test]
    fn subspace_equality_examples() {
        assert!(subspace_equal(&sub(&[&[1, 0], &[0, 1]]), &sub(&[&[1, 1], &[1, -1]])).unwrap());
        assert!(!subspace_equal(&sub(&[&[1, 0]]), &sub(&[&[0, 1]])).unwrap());
        let a = kernel(&Matrix::from_i64(&[&[-1, 0, -1, 0]]));
        let b = kernel(&Matrix::from_i64(&[&[2, 0, 2, 0]]));
        assert!(subspace_equal(&a, &b).unwrap());
        assert!(subspace_equal(&sub(&[&[1, 0]]), &sub(&[&[1, 0, 0]])).is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(format_rational(&qf(4, 2)), "2");
        assert_eq!(format_rational(&qf(-1, 2)), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn intersection_of_planes() {
        let a = sub(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = sub(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersection(&b).unwrap(), sub(&[&[0, 1, 0]]));
    }
}
