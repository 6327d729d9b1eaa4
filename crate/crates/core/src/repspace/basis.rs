use std::collections::HashMap;

use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::exactalg::rational::{binomial, Rational};

/// Monomials of total degree `<= k` in `n` variables, graded-lex ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    n: usize,
    k: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The polynomial with coordinates `v`.
    pub fn to_poly(&self, v: &[Rational]) -> MultiPoly {
        MultiPoly::from_terms(self.n, self.monomials.iter().map(|m| m.0.clone()).zip(v.iter().cloned()))
    }

    /// Coordinates of `p`, or `None` if it leaves the span.
    pub fn coordinates(&self, p: &MultiPoly) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::from_integer(0.into()); self.len()];
        for (m, c) in p.terms() {
            v[self.index_of(m)?] = c.clone();
        }
        Some(v)
    }
}

pub fn basis(n: usize, k: u32) -> Basis {
    let mut monomials = Vec::new();
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, k, &mut monomials);
    monomials.sort();
    let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Basis { n, k, monomials, index }
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos == cur.len() {
        out.push(Monomial(cur.clone()));
        return;
    }
    for e in 0..=left {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

/// `C(n+k, n)`.
pub fn dimension(n: usize, k: u32) -> u64 {
    binomial(n as u64 + k as u64, n as u64)
}

/// The printed count `Σ_{j=1}^k (n)_j / j!`, which leaves out `j = 0`.
pub fn dimension_printed(n: usize, k: u32) -> u64 {
    (1..=k as u64).map(|j| binomial(n as u64 + j - 1, j)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(basis(3, 2).len(), 10);
        assert_eq!(basis(2, 2).len(), 6);
        assert_eq!(basis(1, 2).len(), 3);
        assert_eq!(basis(3, 1).len(), 4);
        assert_eq!(basis(1, 0).monomials(), &[Monomial(vec![0])]);
        assert_eq!(dimension_printed(3, 2), 9);
        for n in 1..4 {
            for k in 0..5 {
                assert_eq!(basis(n, k).len() as u64, dimension(n, k));
            }
        }
    }

    #[test]
    fn ordered() {
        let b = basis(2, 3);
        assert!(b.monomials().windows(2).all(|w| w[0] < w[1]));
    }
}
