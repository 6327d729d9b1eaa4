use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exactalg::matrix::QMatrix;
use crate::exactalg::poly::Monomial;
use crate::exactalg::rational::Rational;

use super::basis::{basis, Basis};

/// Matrix of an operator on `P_k`; column `j` holds the image of basis
/// monomial `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub basis: Basis,
    pub matrix: QMatrix,
    /// Image terms outside `P_k`: `(column, monomial, coefficient)`.
    pub overflow: Vec<(usize, Monomial, Rational)>,
}

impl OperatorMatrix {
    pub fn is_invariant(&self) -> bool {
        self.overflow.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn matrix_rep(op: &DiffOp, n: usize, k: u32) -> Result<OperatorMatrix> {
    if op.nvars() != n {
        return Err(Error::VariableMismatch { left: op.nvars(), right: n });
    }
    let b = basis(n, k);
    let d = b.len();
    let mut m = QMatrix::zeros(d, d)?;
    let mut overflow = Vec::new();
    for (j, mono) in b.monomials().iter().enumerate() {
        let img = op.apply_poly(&crate::exactalg::poly::MultiPoly::monomial(mono.0.clone(), Rational::from_integer(1.into())))?;
        for (t, c) in img.terms() {
            match b.index_of(t) {
                Some(i) => m.set(i, j, c.clone()),
                None => overflow.push((j, t.clone(), c.clone())),
            }
        }
    }
    Ok(OperatorMatrix { basis: b, matrix: m, overflow })
}

/// Fails with `NotInvariant` unless the operator preserves `P_k`.
pub fn invariant_matrix(op: &DiffOp, n: usize, k: u32) -> Result<OperatorMatrix> {
    let m = matrix_rep(op, n, k)?;
    if !m.is_invariant() {
        return Err(Error::NotInvariant { n, k });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, q};
    use crate::models::{build_es_sphere, build_qes_sphere, SphereParams};

    #[test]
    fn fixture_f1_matrix() {
        let p = SphereParams::new(vec![int(0), int(0)], q(-5, 8), 1).unwrap();
        let m = matrix_rep(&build_qes_sphere(&p).unwrap(), 1, 1).unwrap();
        assert!(m.is_invariant());
        let expect = QMatrix::from_rows(vec![vec![int(0), q(1, 2)], vec![q(5, 8), int(-1)]]).unwrap();
        assert_eq!(m.matrix, expect);
    }

    #[test]
    fn invariance_flags() {
        let p = SphereParams::new(vec![q(1, 3), q(2, 5), q(-1, 2)], q(3, 4), 2).unwrap();
        for k in 0..=5 {
            assert!(matrix_rep(&build_es_sphere(&p), 2, k).unwrap().is_invariant());
        }
        let h = build_qes_sphere(&p).unwrap();
        assert!(matrix_rep(&h, 2, 2).unwrap().is_invariant());
        assert!(!matrix_rep(&h, 2, 3).unwrap().is_invariant());
        assert!(matches!(invariant_matrix(&h, 2, 3), Err(Error::NotInvariant { n: 2, k: 3 })));
    }
}
