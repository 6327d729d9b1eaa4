//! Multivariate gcd over Q by recursive primitive pseudo-remainder sequences.

use super::poly::{Monomial, MultiPoly};

/// Monic (graded-lex) gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.nvars(), b.nvars());
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    if a == b {
        return a.monic();
    }
    let main = (0..n).rev().find(|&v| a.involves(v) || b.involves(v)).unwrap();
    match (a.involves(main), b.involves(main)) {
        (true, false) => gcd(&content_in(a, main), b),
        (false, true) => gcd(a, &content_in(b, main)),
        _ => {
            let ca = content_in(a, main);
            let cb = content_in(b, main);
            let c = gcd(&ca, &cb);
            let mut p = a.div_exact(&ca).expect("content divides");
            let mut q = b.div_exact(&cb).expect("content divides");
            if p.degree_in(main) < q.degree_in(main) {
                std::mem::swap(&mut p, &mut q);
            }
            let g = loop {
                let r = pseudo_rem(&p, &q, main);
                if r.is_zero() {
                    break q;
                }
                if !r.involves(main) {
                    break MultiPoly::one(n);
                }
                p = q;
                q = primitive_in(&r, main);
            };
            (&c * &primitive_in(&g, main)).monic()
        }
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.nvars());
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return MultiPoly::one(p.nvars());
        }
    }
    acc
}

fn primitive_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").primitive()
}

/// Pseudo-remainder of `a` by `b` in `var` (multiplies by powers of lc(b)).
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let n = a.nvars();
    let db = b.degree_in(var).unwrap();
    let bc = b.coefficients_in(var);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    let one = num_traits::One::one();
    while !r.is_zero() {
        let dr = r.degree_in(var).unwrap();
        if dr < db {
            break;
        }
        let lr = r.coefficients_in(var)[dr as usize].clone();
        let shift = Monomial::var(n, var);
        let mut e = Monomial::one(n);
        for _ in 0..(dr - db) {
            e = e.mul(&shift);
        }
        let t = (&lr * b).mul_monomial(&e, &one);
        r = &(&lb * &r) - &t;
        r = r.primitive();
    }
    r
}

/// Least common multiple, monic.
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.nvars());
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).unwrap()).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, q};

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn recovers_common_factor() {
        let one = MultiPoly::one(3);
        let f = &(&x(0) * &x(1)) - &one;
        let g1 = &(&x(2) + &x(0)) + &MultiPoly::constant(3, q(1, 2));
        let g2 = &(&x(1) * &x(1)) - &x(2);
        let a = &f * &g1;
        let b = &(&f * &g2) * &MultiPoly::constant(3, int(7));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn coprime_gives_one() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn powers_and_monomials() {
        let one = MultiPoly::one(3);
        let s = &one - &(&x(0) + &x(1));
        let a = &(&s * &s) * &x(0);
        let b = &(&s * &x(0)) * &x(2);
        assert_eq!(gcd(&a, &b), (&s * &x(0)).monic());
    }
}
