//! Small square matrices over the field of rational functions.

use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub type RfMatrix = Vec<Vec<RatFunc>>;

fn check_square(m: &RfMatrix) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("expected a nonempty square matrix".into()));
    }
    Ok(n)
}

/// Determinant by Gaussian elimination over the rational-function field.
pub fn det(m: &RfMatrix) -> Result<RatFunc> {
    let n = check_square(m)?;
    let nv = m[0][0].nvars();
    let mut a = m.clone();
    let mut acc = RatFunc::one(nv);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(RatFunc::zero(nv));
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        let piv = a[c][c].clone();
        acc = &acc * &piv;
        let inv = piv.recip()?;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    Ok(acc)
}

/// Inverse by Gauss-Jordan elimination.
pub fn inverse(m: &RfMatrix) -> Result<RfMatrix> {
    let n = check_square(m)?;
    let nv = m[0][0].nvars();
    let mut a = m.clone();
    let mut inv: RfMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { RatFunc::one(nv) } else { RatFunc::zero(nv) }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .ok_or_else(|| Error::Shape("singular rational-function matrix".into()))?;
        a.swap(p, c);
        inv.swap(p, c);
        let r = a[c][c].recip()?;
        for j in 0..n {
            a[c][j] = &a[c][j] * &r;
            inv[c][j] = &inv[c][j] * &r;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                let t = &f * &a[c][j];
                a[i][j] = &a[i][j] - &t;
                let t = &f * &inv[c][j];
                inv[i][j] = &inv[i][j] - &t;
            }
        }
    }
    Ok(inv)
}

pub fn mul(a: &RfMatrix, b: &RfMatrix) -> RfMatrix {
    let nv = a[0][0].nvars();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    let mut acc = RatFunc::zero(nv);
                    for k in 0..b.len() {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::MultiPoly;

    #[test]
    fn inverse_roundtrip() {
        let x = RatFunc::var(2, 0);
        let y = RatFunc::var(2, 1);
        let one = RatFunc::one(2);
        let m = vec![vec![x.clone(), &x * &y], vec![one.clone(), &y + &one]];
        let inv = inverse(&m).unwrap();
        let id = mul(&m, &inv);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(id[i][j], if i == j { one.clone() } else { RatFunc::zero(2) });
            }
        }
        assert_eq!(det(&m).unwrap(), RatFunc::from_poly(MultiPoly::var(2, 0)));
    }
}
