//! Exact arithmetic: rationals, polynomials, rational functions, matrices, roots.

pub mod gcd;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod rfmatrix;
pub mod roots;
pub mod unipoly;

pub use matrix::QMatrix;
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use rational::{fmt_rational, parse_rational, Rational};
pub use roots::{real_roots, Root, RootKind, RootSet};
pub use unipoly::UniPoly;
