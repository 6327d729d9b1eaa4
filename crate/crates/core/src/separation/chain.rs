use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::matrix::normalize_vector;
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::{fmt_rational, int, q, zero, Rational};
use crate::exactalg::roots::Root;
use crate::exactalg::unipoly::UniPoly;
use crate::models::SphereParams;
use crate::repspace::{basis, EigenVectors, Provenance, SpectralLine};

use super::reduce::{heun_spectrum, hypergeometric_factor, reduce_with, HeunBlock};
use super::{derive_separation_ops, SeparationChain};

#[derive(Clone, Debug, PartialEq)]
pub struct SeparatedEigenfunction {
    pub value: Root,
    /// `P_k` coordinates of `Ψ`; algebraic over the minimal polynomial of `E`
    /// when `E` is irrational.
    pub vectors: EigenVectors,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainSolution {
    pub q: Vec<u32>,
    /// `A_1..A_n`.
    pub a: Vec<Rational>,
    /// `c_1..c_{n-1}`.
    pub c: Vec<Rational>,
    /// `V_1..V_{n-1}`.
    pub factors: Vec<UniPoly>,
    pub heun: HeunBlock,
    pub eigenfunctions: Vec<SeparatedEigenfunction>,
}

impl ChainSolution {
    pub fn lines(&self) -> Vec<SpectralLine> {
        self.heun
            .eigen
            .iter()
            .map(|e| SpectralLine { value: e.value.clone(), labels: Some(self.c.clone()), provenance: Provenance::Separation })
            .collect()
    }

    pub fn record(&self) -> ChainRecord {
        let mut factor_degrees: Vec<usize> = self.factors.iter().map(|f| f.degree().unwrap_or(0)).collect();
        factor_degrees.push(self.heun.m as usize);
        ChainRecord {
            q: self.q.clone(),
            a: self.a.iter().map(fmt_rational).collect(),
            c: self.c.iter().map(fmt_rational).collect(),
            e: self.lines(),
            factor_degrees,
        }
    }
}

#[derive(Serialize)]
pub struct ChainRecord {
    pub q: Vec<u32>,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub c: Vec<String>,
    #[serde(rename = "E")]
    pub e: Vec<SpectralLine>,
    pub factor_degrees: Vec<usize>,
}

/// `Ψ = u_2^{A_2}⋯u_n^{A_n} Π V_ℓ(u_ℓ)` rewritten in `x`.
pub fn assemble(chain: &SeparationChain, a: &[Rational], factors: &[UniPoly]) -> Result<MultiPoly> {
    let n = chain.n();
    if a.len() != n || factors.len() != n {
        return Err(Error::Shape(format!("assemble needs {n} exponents and factors")));
    }
    let mut exps = vec![0u32; n];
    for (l, al) in a.iter().enumerate() {
        if !al.is_integer() || al < &zero() {
            return Err(Error::Inadmissible(format!("A_{} = {al} is not a nonnegative integer", l + 1)));
        }
        exps[l] = al.to_integer().try_into().map_err(|_| Error::Inadmissible("exponent too large".into()))?;
    }
    let mut psi = MultiPoly::monomial(exps, int(1));
    for (l, f) in factors.iter().enumerate() {
        psi = &psi * &f.to_multi(n, l);
    }
    let x = chain.map.push(&RatFunc::from_poly(psi))?;
    x.as_poly()
        .cloned()
        .ok_or_else(|| Error::Inadmissible("reassembled eigenfunction is not a polynomial".into()))
}

fn q_tuples(len: usize, max: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in q_tuples(len - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `c_ℓ = -A_{ℓ+1}(A_{ℓ+1} + G_{ℓ+1} + (ℓ-1)/2)`.
pub fn separation_constant(p: &SphereParams, l: usize, a_next: &Rational) -> Rational {
    -(a_next * (a_next + p.partial_g(l + 1) + q(l as i64 - 1, 2)))
}

fn solve_one(chain: &SeparationChain, qs: &[u32], bits: u32) -> Result<ChainSolution> {
    let p = &chain.params;
    let n = chain.n();
    let mut a = vec![zero()];
    let mut c: Vec<Rational> = Vec::with_capacity(n - 1);
    let mut factors = Vec::with_capacity(n - 1);
    for (i, &ql) in qs.iter().enumerate() {
        let l = i + 1;
        let c_prev = if l == 1 { zero() } else { c[l - 2].clone() };
        let red = reduce_with(chain, l, &c_prev, &a[l - 1])?;
        let v = hypergeometric_factor(l, ql, p, &a[l - 1])?;
        let a_next = &a[l - 1] + int(ql as i64);
        let c_l = separation_constant(p, l, &a_next);
        let vm = v.to_multi(1, 0);
        if red.op.apply_poly(&vm)? != vm.scale(&c_l) {
            return Err(Error::NonSeparating(format!("V_{l} is not an eigenfunction of the reduced operator")));
        }
        factors.push(v);
        a.push(a_next);
        c.push(c_l);
    }
    let c_last = c.last().cloned().unwrap_or_else(zero);
    let heun = heun_spectrum(chain, &c_last, &a[n - 1], bits)?;
    let b = basis(n, p.k());
    let coords = |vn: &UniPoly| -> Result<Vec<Rational>> {
        let mut fs = factors.clone();
        fs.push(vn.clone());
        let psi = assemble(chain, &a, &fs)?;
        b.coordinates(&psi).ok_or_else(|| Error::Inadmissible("eigenfunction leaves P_k".into()))
    };
    let mut eigenfunctions = Vec::with_capacity(heun.eigen.len());
    for e in &heun.eigen {
        let vectors = match &e.vectors {
            EigenVectors::Exact(vs) => EigenVectors::Exact(
                vs.iter().map(|v| Ok(normalize_vector(&coords(&UniPoly::new(v.clone()))?))).collect::<Result<_>>()?,
            ),
            EigenVectors::Algebraic { minpoly, vector } => {
                let mut acc = vec![UniPoly::zero(); b.len()];
                for (j, vj) in vector.iter().enumerate() {
                    let mut mono = vec![zero(); j + 1];
                    mono[j] = int(1);
                    let col = coords(&UniPoly::new(mono))?;
                    for (slot, x) in acc.iter_mut().zip(&col) {
                        *slot = &*slot + &vj.scale(x);
                    }
                }
                EigenVectors::Algebraic { minpoly: minpoly.clone(), vector: acc }
            }
        };
        eigenfunctions.push(SeparatedEigenfunction { value: e.value.clone(), vectors });
    }
    Ok(ChainSolution { q: qs.to_vec(), a, c, factors, heun, eigenfunctions })
}

/// Every admissible chain `q_1 + .. + q_{n-1} <= k`.
pub fn solve_chains(p: &SphereParams, bits: u32) -> Result<Vec<ChainSolution>> {
    let chain = derive_separation_ops(p)?;
    q_tuples(p.n() - 1, p.k()).iter().map(|qs| solve_one(&chain, qs, bits)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::binomial;
    use crate::models::build_qes_sphere;
    use crate::repspace::invariant_matrix;

    #[test]
    fn f2_eigenfunctions() {
        let p = SphereParams::new(vec![int(0); 3], q(1, 2), 1).unwrap();
        let sols = solve_chains(&p, 64).unwrap();
        assert_eq!(sols.len(), 2);
        let top = sols.iter().find(|s| s.q == vec![1]).unwrap();
        assert_eq!(top.c, vec![int(-1)]);
        let EigenVectors::Exact(v) = &top.eigenfunctions[0].vectors else { panic!() };
        // basis order 1, x2, x1
        assert_eq!(v[0], vec![int(0), int(-1), int(1)].iter().map(|x| -x).collect::<Vec<_>>());
        let low = sols.iter().find(|s| s.q == vec![0]).unwrap();
        let half = low.eigenfunctions.iter().find(|e| e.value.exact() == Some(&q(-1, 2))).unwrap();
        let EigenVectors::Exact(v) = &half.vectors else { panic!() };
        assert_eq!(v[0], vec![int(2), int(-1), int(-1)]);
    }

    #[test]
    fn count_and_eigen_relations() {
        let p = SphereParams::new(vec![q(1, 3), q(-2, 5), q(3, 4), q(5, 7)], q(2, 9), 2).unwrap();
        let h = invariant_matrix(&build_qes_sphere(&p).unwrap(), 3, 2).unwrap().matrix;
        let sols = solve_chains(&p, 64).unwrap();
        let total: u32 = sols.iter().map(|s| s.heun.m + 1).sum();
        assert_eq!(total as u64, binomial(5, 3));
        for s in &sols {
            for (l, f) in s.factors.iter().enumerate() {
                assert_eq!(f.degree(), Some(s.q[l] as usize));
            }
            for e in &s.eigenfunctions {
                match &e.vectors {
                    EigenVectors::Exact(vs) => {
                        let lam = e.value.exact().unwrap();
                        for v in vs {
                            assert!(h.mul_vec(v).iter().zip(v).all(|(x, y)| *x == lam * y));
                        }
                    }
                    EigenVectors::Algebraic { minpoly, vector } => {
                        for i in 0..h.rows() {
                            let hv = (0..h.rows()).fold(UniPoly::zero(), |acc, j| &acc + &vector[j].scale(h.get(i, j)));
                            let r = (&hv - &(&UniPoly::t() * &vector[i])).rem(minpoly);
                            assert!(r.is_zero());
                        }
                    }
                }
            }
        }
        let json = serde_json::to_string(&sols[0].record()).unwrap();
        assert!(json.contains("\"factor_degrees\""));
    }

    #[test]
    fn k0_constant() {
        let p = SphereParams::new(vec![q(1, 3), q(2, 3), q(1, 5)], q(4, 3), 0).unwrap();
        let sols = solve_chains(&p, 64).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].eigenfunctions[0].value.exact(), Some(&int(0)));
    }
}
