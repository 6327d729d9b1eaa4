//! Dense exact matrices with fraction-free elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{fmt_rational, parse_rational, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty {rows}x{cols} matrix")));
        }
        Ok(QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if r == 0 || c == 0 {
            return Err(Error::Shape("empty matrix".into()));
        }
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: Vec<Vec<Rational>>) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut out = QMatrix {
            rows: self.cols,
            cols: self.rows,
            data: vec![Rational::zero(); self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn add(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    fn zip_with<F: Fn(&Rational, &Rational) -> Rational>(&self, rhs: &QMatrix, f: F) -> Result<QMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape("dimension mismatch".into()));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(|x| x.abs())
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
    }

    /// Principal submatrix on the listed indices.
    pub fn submatrix(&self, idx: &[usize]) -> Result<QMatrix> {
        let rows = idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
        QMatrix::from_rows(rows)
    }

    /// Row echelon form over Z by Bareiss elimination on denominator-cleared rows.
    /// Returns the integer echelon rows and pivot columns.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = v / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Exact kernel basis: one vector per free column, scaled to a primitive
    /// integer vector whose first nonzero entry is positive.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (u, pivots) = self.bareiss_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Rational::zero(); self.cols];
            x[f] = Rational::one();
            for (ri, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = Rational::zero();
                for j in pc + 1..self.cols {
                    if !u[ri][j].is_zero() && !x[j].is_zero() {
                        acc += Rational::from_integer(u[ri][j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / Rational::from_integer(u[ri][pc].clone());
            }
            out.push(normalize_vector(&x));
        }
        out
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1).ok()?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let kernel = aug.kernel_basis();
        let v = kernel.into_iter().find(|v| !v[self.cols].is_zero())?;
        let s = -v[self.cols].clone();
        Some(v[..self.cols].iter().map(|x| x / &s).collect())
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let cp = self.charpoly()?;
        let c0 = cp.coeff(0);
        Ok(if self.rows % 2 == 0 { c0 } else { -c0 })
    }

    /// Monic `det(t I - M)` by the division-free Berkowitz algorithm.
    pub fn charpoly(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "characteristic polynomial of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        // coefficients, highest degree first
        let mut p: Vec<Rational> = vec![Rational::one()];
        for r in 0..n {
            let a = self.get(r, r).clone();
            let mut col = Vec::with_capacity(r + 2);
            col.push(Rational::one());
            col.push(-a);
            let mut w: Vec<Rational> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for k in 0..r {
                let rc: Rational = (0..r)
                    .filter(|&j| !w[j].is_zero())
                    .map(|j| self.get(r, j) * &w[j])
                    .fold(Rational::zero(), |acc, x| acc + x);
                col.push(-rc);
                if k + 1 < r {
                    w = (0..r)
                        .map(|i| {
                            (0..r)
                                .filter(|&j| !w[j].is_zero())
                                .map(|j| self.get(i, j) * &w[j])
                                .fold(Rational::zero(), |acc, x| acc + x)
                        })
                        .collect();
                }
            }
            let mut next = vec![Rational::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for j in 0..=r.min(i) {
                    if j < p.len() && i - j < col.len() {
                        *slot += &col[i - j] * &p[j];
                    }
                }
            }
            p = next;
        }
        p.reverse();
        Ok(UniPoly::new(p))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(fmt_rational).collect())
            .collect()
    }
}

/// Scales a nonzero vector to a primitive integer vector with positive
/// leading entry; the zero vector is returned unchanged.
pub fn normalize_vector(v: &[Rational]) -> Vec<Rational> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.into_iter()
        .map(|x| Rational::from_integer(x * &sign / &g))
        .collect()
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        QMatrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, q};

    fn m(rows: &[&[Rational]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Cofactor-expansion determinant of `t I - M` evaluated at a point; the
    /// oracle for the Berkowitz coefficients.
    fn det_cofactor(a: &[Vec<Rational>]) -> Rational {
        let n = a.len();
        if n == 1 {
            return a[0][0].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor: Vec<Vec<Rational>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &a[0][j] * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn charpoly_examples() {
        let id = QMatrix::identity(2).unwrap();
        assert_eq!(id.charpoly().unwrap(), UniPoly::from_ints(&[1, -2, 1]));
        let f1 = m(&[&[int(0), q(1, 2)], &[q(5, 8), int(-1)]]);
        assert_eq!(
            f1.charpoly().unwrap(),
            UniPoly::new(vec![q(-5, 16), int(1), int(1)])
        );
        let z = QMatrix::zeros(3, 3).unwrap();
        assert_eq!(z.charpoly().unwrap(), UniPoly::from_ints(&[0, 0, 0, 1]));
        assert!(QMatrix::zeros(2, 3).unwrap().charpoly().is_err());
    }

    #[test]
    fn charpoly_matches_cofactor_oracle() {
        let a = m(&[
            &[q(1, 2), int(3), int(-1), q(2, 7)],
            &[int(0), q(-4, 3), int(5), int(1)],
            &[int(2), int(1), int(1), q(1, 9)],
            &[q(-3, 5), int(0), int(2), int(4)],
        ]);
        let cp = a.charpoly().unwrap();
        for t in [int(0), int(1), q(-3, 2), q(7, 11)] {
            let shifted: Vec<Vec<Rational>> = (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| {
                            let d = if i == j { t.clone() } else { Rational::zero() };
                            d - a.get(i, j)
                        })
                        .collect()
                })
                .collect();
            assert_eq!(cp.eval(&t), det_cofactor(&shifted));
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(m(&[&[int(1), int(-1)]]).kernel_basis(), vec![vec![int(1), int(1)]]);
        assert!(m(&[&[int(1), int(2)], &[int(3), int(4)]]).kernel_basis().is_empty());
        let blk = m(&[&[q(1, 2), int(1)], &[q(-1, 2), int(-1)]]);
        assert_eq!(blk.kernel_basis(), vec![vec![int(2), int(-1)]]);
    }

    #[test]
    fn solve_and_rank() {
        let a = m(&[&[int(1), int(2), int(3)], &[int(2), int(4), int(6)], &[int(1), int(0), int(1)]]);
        assert_eq!(a.rank(), 2);
        let b = vec![int(6), int(12), int(2)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(a.solve(&[int(1), int(0), int(0)]).is_none());
    }
}
