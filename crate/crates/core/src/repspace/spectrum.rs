use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::rational::{fmt_rational, to_f64, Rational};
use crate::exactalg::roots::{real_roots, Root, RootKind};
use crate::exactalg::unipoly::UniPoly;

use super::matrep::OperatorMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Matrix,
    ClosedForm,
    Separation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralLine {
    pub value: Root,
    /// Separation constants `c_1..c_{n-1}` when known.
    pub labels: Option<Vec<Rational>>,
    pub provenance: Provenance,
}

impl SpectralLine {
    pub fn multiplicity(&self) -> u32 {
        self.value.multiplicity
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.value.exact()
    }
}

#[derive(Serialize)]
struct LineRecord {
    kind: &'static str,
    value: Option<String>,
    lo: Option<String>,
    hi: Option<String>,
    approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx_im: Option<f64>,
    multiplicity: u32,
    labels: Option<Vec<String>>,
    provenance: Provenance,
}

impl Serialize for SpectralLine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, value, lo, hi, approx_im) = match &self.value.kind {
            RootKind::Exact(r) => ("exact", Some(fmt_rational(r)), None, None, None),
            RootKind::Interval { lo, hi } => ("interval", None, Some(fmt_rational(lo)), Some(fmt_rational(hi)), None),
            RootKind::ComplexPair { im, .. } => ("complex_pair", None, None, None, Some(to_f64(im))),
        };
        LineRecord {
            kind,
            value,
            lo,
            hi,
            approx: self.value.approx(),
            approx_im,
            multiplicity: self.multiplicity(),
            labels: self.labels.as_ref().map(|l| l.iter().map(fmt_rational).collect()),
            provenance: self.provenance,
        }
        .serialize(s)
    }
}

pub fn lines_from_charpoly(
    p: &UniPoly,
    bits: u32,
    labels: Option<Vec<Rational>>,
    provenance: Provenance,
) -> Result<Vec<SpectralLine>> {
    Ok(real_roots(p, bits)?
        .roots
        .into_iter()
        .map(|value| SpectralLine { value, labels: labels.clone(), provenance })
        .collect())
}

pub fn spectrum(m: &OperatorMatrix, bits: u32) -> Result<Vec<SpectralLine>> {
    if !m.is_invariant() {
        return Err(Error::NotInvariant { n: m.basis.n(), k: m.basis.k() });
    }
    let mut lines = lines_from_charpoly(&m.matrix.charpoly()?, bits, None, Provenance::Matrix)?;
    sort_lines(&mut lines);
    Ok(lines)
}

/// Real part descending, then multiplicity descending, then labels.
pub fn sort_lines(lines: &mut [SpectralLine]) {
    lines.sort_by(|a, b| {
        b.value
            .midpoint()
            .cmp(&a.value.midpoint())
            .then_with(|| b.multiplicity().cmp(&a.multiplicity()))
            .then_with(|| cmp_labels(&a.labels, &b.labels))
            .then_with(|| imag_key(a).cmp(&imag_key(b)))
    });
}

fn imag_key(l: &SpectralLine) -> Rational {
    match &l.value.kind {
        RootKind::ComplexPair { im, .. } => im.clone(),
        _ => Rational::from_integer(0.into()),
    }
}

fn cmp_labels(a: &Option<Vec<Rational>>, b: &Option<Vec<Rational>>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.cmp(y),
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{binomial, int, q};
    use crate::models::{build_es_sphere, build_qes_sphere, SphereParams};
    use crate::repspace::matrep::matrix_rep;

    fn values(lines: &[SpectralLine]) -> Vec<(Rational, u32)> {
        lines.iter().map(|l| (l.exact().unwrap().clone(), l.multiplicity())).collect()
    }

    #[test]
    fn fixtures() {
        let p = SphereParams::new(vec![int(0), int(0)], q(-5, 8), 1).unwrap();
        let m = matrix_rep(&build_qes_sphere(&p).unwrap(), 1, 1).unwrap();
        assert_eq!(values(&spectrum(&m, 64).unwrap()), vec![(q(1, 4), 1), (q(-5, 4), 1)]);

        let p = SphereParams::new(vec![int(0); 3], q(1, 2), 1).unwrap();
        let m = matrix_rep(&build_qes_sphere(&p).unwrap(), 2, 1).unwrap();
        assert_eq!(values(&spectrum(&m, 64).unwrap()), vec![(q(-1, 2), 1), (int(-1), 1), (q(-3, 2), 1)]);
    }

    #[test]
    fn es_spectrum_n2_k2() {
        let p = SphereParams::new(vec![q(1, 3), q(-2, 7), q(5, 4)], int(0), 2).unwrap();
        let g = p.big_g();
        let m = matrix_rep(&build_es_sphere(&p), 2, 2).unwrap();
        let got = values(&spectrum(&m, 64).unwrap());
        let mut expect: Vec<(Rational, u32)> = (0..=2i64)
            .map(|j| (-int(j) * (int(j) + &g + q(1, 2)), binomial(j as u64 + 1, 1) as u32))
            .collect();
        expect.sort_by(|a, b| b.0.cmp(&a.0));
        assert_eq!(got, expect);
    }

    #[test]
    fn rejects_non_invariant() {
        let p = SphereParams::new(vec![int(0), int(0)], int(1), 1).unwrap();
        let m = matrix_rep(&build_qes_sphere(&p).unwrap(), 1, 2).unwrap();
        assert!(spectrum(&m, 64).is_err());
    }
}
