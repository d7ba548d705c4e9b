use std::fmt;

use super::gaussian::GaussianRational;
use super::subspace::{check_dims, span_canonicalize_in, Subspace, Vector};
use crate::error::{Error, Result};

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer real entries, for literals in tests and demos.
    pub fn from_reals(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussianRational::int(x, 0)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = GaussianRational::one();
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_dims(self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { left: self.data.len(), right: other.data.len() });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        check_dims(self.cols, v.ambient_dim())?;
        Ok(Vector::new(
            (0..self.rows)
                .map(|i| {
                    let mut acc = GaussianRational::zero();
                    for (a, x) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v.coords()) {
                        if !a.is_zero() && !x.is_zero() {
                            acc += &(a * x);
                        }
                    }
                    acc
                })
                .collect(),
        ))
    }

    /// Row-major flattening, the coordinate vector of a matrix in `M_n`.
    pub fn to_vector(&self) -> Vector {
        Vector::new(self.data.clone())
    }

    pub fn from_vector(rows: usize, cols: usize, v: &Vector) -> Result<Matrix> {
        check_dims(rows * cols, v.ambient_dim())?;
        Ok(Matrix { rows, cols, data: v.coords().to_vec() })
    }

    /// `⟨image of P⟩`; closure is trivial in finite dimension.
    pub fn image_of(&self, p: &Subspace) -> Result<Subspace> {
        check_dims(self.cols, p.ambient_dim())?;
        let images = p.basis().map(|b| self.apply(&b)).collect::<Result<Vec<_>>>()?;
        span_canonicalize_in(self.rows, &images)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[GaussianRational]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units_multiply() {
        let e12 = Matrix::unit(2, 0, 1);
        let e21 = Matrix::unit(2, 1, 0);
        assert_eq!(e12.mul(&e21).unwrap(), Matrix::unit(2, 0, 0));
        assert_eq!(e12.mul(&e12).unwrap(), Matrix::zeros(2, 2));
        assert_eq!(e12.conj_transpose(), e21);
    }

    #[test]
    fn dimension_checks() {
        let a = Matrix::zeros(2, 3);
        assert!(a.mul(&Matrix::zeros(2, 2)).is_err());
        assert!(a.apply(&Vector::zeros(2)).is_err());
    }
}
