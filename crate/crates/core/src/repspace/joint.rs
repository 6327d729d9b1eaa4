//! Joint eigen-decomposition of `h` with the commuting chain `L_1..L_{n-1}`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::matrix::{normalize_vector, QMatrix};
use crate::exactalg::rational::{zero, Rational};
use crate::exactalg::roots::{real_roots, Root, RootKind};
use crate::exactalg::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub enum EigenVectors {
    /// A basis of the eigenspace, in `P_k` coordinates.
    Exact(Vec<Vec<Rational>>),
    /// One eigenvector `v(t)` with entries in `Q[t]/(minpoly)`, valid at
    /// every root of `minpoly`.
    Algebraic { minpoly: UniPoly, vector: Vec<UniPoly> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointEigen {
    pub value: Root,
    pub vectors: EigenVectors,
    /// Geometric multiplicity below algebraic multiplicity.
    pub defective: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointSector {
    /// `c_1..c_{n-1}`.
    pub labels: Vec<Rational>,
    /// Columns spanning the sector, in `P_k` coordinates.
    pub span: Vec<Vec<Rational>>,
    /// `h` restricted to the sector, in the `span` basis.
    pub restricted: QMatrix,
    pub charpoly: UniPoly,
    pub eigen: Vec<JointEigen>,
}

impl JointSector {
    pub fn dim(&self) -> usize {
        self.span.len()
    }
}

fn commute(a: &QMatrix, b: &QMatrix) -> Result<bool> {
    Ok(a.mul(b)?.sub(&b.mul(a)?)?.is_zero())
}

/// Solves `V X = M V` for `X`; requires `span(V)` to be `M`-invariant.
pub fn restrict(m: &QMatrix, span: &[Vec<Rational>]) -> Result<QMatrix> {
    let v = QMatrix::from_columns(span.to_vec())?;
    let mut cols = Vec::with_capacity(span.len());
    for s in span {
        let image = m.mul_vec(s);
        cols.push(v.solve(&image).ok_or_else(|| Error::Shape("subspace is not invariant".into()))?);
    }
    QMatrix::from_columns(cols)
}

fn shifted(m: &QMatrix, c: &Rational) -> Result<QMatrix> {
    m.sub(&QMatrix::identity(m.rows())?.scale(c))
}

fn power(m: &QMatrix, e: u32) -> Result<QMatrix> {
    let mut r = QMatrix::identity(m.rows())?;
    for _ in 0..e {
        r = r.mul(m)?;
    }
    Ok(r)
}

/// Columns of `V` combined with coefficients `w`.
fn combine(span: &[Vec<Rational>], w: &[Rational]) -> Vec<Rational> {
    let mut out = vec![zero(); span[0].len()];
    for (col, c) in span.iter().zip(w) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(col) {
            *o += c * x;
        }
    }
    out
}

/// `p(M) w` by Horner.
pub fn poly_apply(p: &UniPoly, m: &QMatrix, w: &[Rational]) -> Vec<Rational> {
    let mut r = vec![zero(); w.len()];
    for c in p.coeffs().iter().rev() {
        r = m.mul_vec(&r);
        for (ri, wi) in r.iter_mut().zip(w) {
            *ri += c * wi;
        }
    }
    r
}

/// Decomposes `P_k` into joint generalized eigenspaces of `ls`, then
/// diagonalizes `h` inside each one.
pub fn joint_eigenbasis(ls: &[QMatrix], h: &QMatrix, bits: u32) -> Result<Vec<JointSector>> {
    let dim = h.rows();
    for (i, l) in ls.iter().enumerate() {
        if !commute(l, h)? {
            return Err(Error::NonCommuting(format!("[h, L_{}] != 0", i + 1)));
        }
        for (j, m) in ls.iter().enumerate().skip(i + 1) {
            if !commute(l, m)? {
                return Err(Error::NonCommuting(format!("[L_{}, L_{}] != 0", i + 1, j + 1)));
            }
        }
    }
    let mut sectors: Vec<(Vec<Rational>, Vec<Vec<Rational>>)> = vec![(Vec::new(), unit_span(dim))];
    for l in ls {
        let mut next = Vec::new();
        for (raw, span) in sectors {
            let x = restrict(l, &span)?;
            let roots = real_roots(&x.charpoly()?, bits)?;
            let rational = roots.all_rational().ok_or(Error::IrrationalLabel)?;
            for (c, mult) in rational {
                let gk = power(&shifted(&x, &c)?, mult)?.kernel_basis();
                let sub: Vec<Vec<Rational>> = gk.iter().map(|w| combine(&span, w)).collect();
                let mut labels = raw.clone();
                labels.push(c);
                next.push((labels, sub));
            }
        }
        sectors = next;
    }
    let mut out = Vec::with_capacity(sectors.len());
    for (raw, span) in sectors {
        let mut labels: Vec<Rational> = Vec::with_capacity(raw.len());
        for e in raw {
            let c = match labels.last() {
                Some(prev) => e + prev,
                None => e,
            };
            labels.push(c);
        }
        out.push(sector_eigen(labels, span, h, bits)?);
    }
    out.sort_by(|a, b| a.labels.cmp(&b.labels));
    Ok(out)
}

fn sector_eigen(labels: Vec<Rational>, span: Vec<Vec<Rational>>, h: &QMatrix, bits: u32) -> Result<JointSector> {
    let x = restrict(h, &span)?;
    let (chi, eigen) = eigen_of(&x, &span, bits)?;
    Ok(JointSector { labels, span, restricted: x, charpoly: chi, eigen })
}

/// Eigen-decomposition of `x`, acting on the column space of `span`;
/// vectors are returned in the ambient coordinates.
pub fn eigen_of(x: &QMatrix, span: &[Vec<Rational>], bits: u32) -> Result<(UniPoly, Vec<JointEigen>)> {
    let chi = x.charpoly()?;
    let roots = real_roots(&chi, bits)?;
    let mut eigen = Vec::new();
    let mut rest = chi.clone();
    for r in &roots.roots {
        let Some(lam) = r.exact() else { continue };
        let ker = shifted(x, lam)?.kernel_basis();
        let defective = (ker.len() as u32) < r.multiplicity;
        let vecs = ker.iter().map(|w| normalize_vector(&combine(span, w))).collect();
        eigen.push(JointEigen { value: r.clone(), vectors: EigenVectors::Exact(vecs), defective });
        rest = rest
            .div_exact(&UniPoly::linear_root(lam).pow(r.multiplicity))
            .ok_or_else(|| Error::Shape("charpoly division failed".into()))?;
    }
    if rest.degree().unwrap_or(0) > 0 {
        for (f, mult) in rest.squarefree_decomposition() {
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            let f = f.monic();
            let (vector, defective) = algebraic_vector(x, &chi, &f, mult)?;
            let vector: Vec<UniPoly> = (0..span[0].len())
                .map(|row| {
                    span.iter()
                        .zip(&vector)
                        .fold(UniPoly::zero(), |acc, (col, p)| &acc + &p.scale(&col[row]))
                })
                .collect();
            for r in real_roots(&f, bits)?.roots {
                let value = Root { kind: r.kind, multiplicity: mult };
                eigen.push(JointEigen {
                    value,
                    vectors: EigenVectors::Algebraic { minpoly: f.clone(), vector: vector.clone() },
                    defective,
                });
            }
        }
    }
    eigen.sort_by(|a, b| b.value.midpoint().cmp(&a.value.midpoint()));
    Ok((chi, eigen))
}

/// Identity columns of size `n`.
pub fn unit_span(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { zero() }).collect())
        .collect()
}

/// For a squarefree factor `f` of `χ` with multiplicity `mult`, returns
/// `v(t)` with `(X - t) v(t) ≡ 0 (mod f)` and `v(θ) != 0` at every root.
fn algebraic_vector(x: &QMatrix, chi: &UniPoly, f: &UniPoly, mult: u32) -> Result<(Vec<UniPoly>, bool)> {
    let n = x.rows();
    let cof = chi
        .div_exact(&f.pow(mult))
        .ok_or_else(|| Error::Shape("charpoly division failed".into()))?;
    let m = f.degree().unwrap_or(0);
    let mut fallback = None;
    let unit = |j: usize| -> Vec<Rational> {
        (0..n).map(|i| if i == j { Rational::from_integer(1.into()) } else { zero() }).collect()
    };
    let mut seeds: Vec<Vec<Rational>> = (0..n).map(unit).collect();
    seeds.push((0..n).map(|i| Rational::from_integer((i as i64 + 1).into())).collect());
    for w in seeds {
        let mut wp = poly_apply(&cof, x, &w);
        if wp.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut steps = 0;
        loop {
            let nxt = poly_apply(f, x, &wp);
            if nxt.iter().all(|c| c.is_zero()) {
                break;
            }
            wp = nxt;
            steps += 1;
        }
        // v(t) = Σ_k t^{m-1-k} y_k with y_0 = w', y_k = X y_{k-1} + c_k w'.
        let fc = f.coeffs();
        let mut ys = vec![wp.clone()];
        for k in 1..m {
            let mut y = x.mul_vec(&ys[k - 1]);
            for (yi, wi) in y.iter_mut().zip(&wp) {
                *yi += &fc[m - k] * wi;
            }
            ys.push(y);
        }
        let v: Vec<UniPoly> = (0..n)
            .map(|i| {
                let mut c = vec![zero(); m];
                for (k, y) in ys.iter().enumerate() {
                    c[m - 1 - k] = y[i].clone();
                }
                UniPoly::new(c)
            })
            .collect();
        let g = v.iter().fold(f.clone(), |acc, p| acc.gcd(p));
        let ok = g.degree().unwrap_or(0) == 0;
        let chain = steps > 0;
        if ok {
            return Ok((v, chain));
        }
        if fallback.is_none() {
            fallback = Some((v, chain));
        }
    }
    fallback.ok_or_else(|| Error::Shape("no eigenvector found for algebraic factor".into()))
}

/// `v(t)` evaluated at an approximate root.
pub fn eval_algebraic(vector: &[UniPoly], t: f64) -> Vec<f64> {
    vector.iter().map(|p| p.eval_f64(t)).collect()
}

pub fn root_is_complex(r: &Root) -> bool {
    matches!(r.kind, RootKind::ComplexPair { .. })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, q, to_f64};
    use crate::models::{build_l_chain, build_qes_sphere, SphereParams};
    use crate::repspace::matrep::invariant_matrix;

    fn setup(p: &SphereParams) -> (Vec<QMatrix>, QMatrix) {
        let n = p.n();
        let k = p.k();
        let h = invariant_matrix(&build_qes_sphere(p).unwrap(), n, k).unwrap().matrix;
        let ls = build_l_chain(p)
            .unwrap()
            .iter()
            .map(|l| invariant_matrix(l, n, k).unwrap().matrix)
            .collect();
        (ls, h)
    }

    #[test]
    fn sectors_partition_and_eigenvectors_hold() {
        let p = SphereParams::new(vec![q(1, 3), q(2, 5), q(-1, 4), q(3, 2)], q(3, 7), 2).unwrap();
        let (ls, h) = setup(&p);
        let sectors = joint_eigenbasis(&ls, &h, 64).unwrap();
        assert_eq!(sectors.iter().map(|s| s.dim()).sum::<usize>(), h.rows());
        for s in &sectors {
            assert_eq!(s.labels.len(), 2);
            for e in &s.eigen {
                match &e.vectors {
                    EigenVectors::Exact(vs) => {
                        let lam = e.value.exact().unwrap();
                        for v in vs {
                            let hv = h.mul_vec(v);
                            assert!(hv.iter().zip(v).all(|(a, b)| *a == lam * b));
                        }
                    }
                    EigenVectors::Algebraic { minpoly, vector } => {
                        // (H - t) v(t) ≡ 0 mod minpoly, exactly.
                        let hv: Vec<UniPoly> = (0..h.rows())
                            .map(|i| {
                                (0..h.rows()).fold(UniPoly::zero(), |acc, j| &acc + &vector[j].scale(h.get(i, j)))
                            })
                            .collect();
                        for (a, b) in hv.iter().zip(vector) {
                            let r = (a - &(&UniPoly::t() * b)).rem(minpoly);
                            assert!(r.is_zero());
                        }
                        let t = e.value.approx();
                        assert!(eval_algebraic(vector, t).iter().any(|c| c.abs() > 1e-9));
                    }
                }
            }
        }
    }

    #[test]
    fn label_accumulation() {
        let p = SphereParams::new(vec![int(0); 4], int(0), 1).unwrap();
        let (ls, h) = setup(&p);
        let sectors = joint_eigenbasis(&ls, &h, 64).unwrap();
        let labels: Vec<Vec<f64>> = sectors.iter().map(|s| s.labels.iter().map(to_f64).collect()).collect();
        assert!(labels.iter().any(|l| l == &[0.0, 0.0]), "{labels:?}");
        assert!(sectors.iter().all(|s| s.eigen.iter().all(|e| !root_is_complex(&e.value))));
    }

    #[test]
    fn detects_non_commuting() {
        let a = QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap();
        let b = QMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(2)]]).unwrap();
        assert!(matches!(joint_eigenbasis(&[a], &b, 32), Err(Error::NonCommuting(_))));
    }
}
