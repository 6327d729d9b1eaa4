//! The listed closed-form spectra for `n, k <= 3, 2`, and the exactly
//! solvable level formulas.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::rational::{fmt_rational, half, int, q, Rational};
use crate::exactalg::unipoly::UniPoly;
use crate::models::SphereParams;

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogSector {
    pub id: String,
    /// `A_n`, the total of the separation quantum numbers.
    pub a_sum: u32,
    /// Monic polynomial whose simple roots are the predicted eigenvalues.
    pub polynomial: UniPoly,
    /// Multiplicity of each root.
    pub multiplicity: u32,
    /// For `E± = α ± ½√D`, the pair `(α, D)`.
    pub pair: Option<(Rational, Rational)>,
}

impl CatalogSector {
    /// Characteristic polynomial predicted for the whole sector.
    pub fn sector_charpoly(&self) -> UniPoly {
        self.polynomial.pow(self.multiplicity)
    }

    pub fn dim(&self) -> usize {
        self.polynomial.degree().unwrap_or(0) * self.multiplicity as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub n: usize,
    pub k: u32,
    pub sectors: Vec<CatalogSector>,
}

impl CatalogEntry {
    pub fn total_charpoly(&self) -> UniPoly {
        self.sectors.iter().fold(UniPoly::one(), |acc, s| &acc * &s.sector_charpoly())
    }

    /// Sum of predicted eigenvalues with multiplicity.
    pub fn trace(&self) -> Rational {
        self.sectors
            .iter()
            .map(|s| {
                let d = s.polynomial.degree().unwrap_or(0);
                let sum = if d == 0 { int(0) } else { -s.polynomial.coeff(d - 1) };
                sum * int(s.multiplicity as i64)
            })
            .sum()
    }

    pub fn sector(&self, a_sum: u32) -> Option<&CatalogSector> {
        self.sectors.iter().find(|s| s.a_sum == a_sum)
    }
}

#[derive(Serialize)]
pub struct CatalogRecord {
    pub id: String,
    pub a_sum: u32,
    pub polynomial: Vec<String>,
    pub multiplicity: u32,
}

impl From<&CatalogSector> for CatalogRecord {
    fn from(s: &CatalogSector) -> Self {
        Self {
            id: s.id.clone(),
            a_sum: s.a_sum,
            polynomial: s.polynomial.coeffs().iter().map(fmt_rational).collect(),
            multiplicity: s.multiplicity,
        }
    }
}

/// `ε_k = -k(k + G + (n-1)/2)`.
pub fn es_level(n: usize, k: u32, g: &Rational) -> Rational {
    let k = int(k as i64);
    -(&k * (&k + g + q(n as i64 - 1, 2)))
}

/// `E_k^(n) = k(k + G + (n-1)/2) + G² + (n-1)G + 1`, as listed.
pub fn es_energy_printed(n: usize, k: u32, g: &Rational) -> Rational {
    -es_level(n, k, g) + g * g + int(n as i64 - 1) * g + int(1)
}

/// Ground energy with `h^(ES)·1 = 0`: `G² + (n-1)G`.
pub fn es_energy(n: usize, k: u32, g: &Rational) -> Rational {
    -es_level(n, k, g) + g * g + int(n as i64 - 1) * g
}

/// `c_{n-1} = -A(A + G_n + (n-2)/2)` for the sector with `A_n = A`.
pub fn sector_label(p: &SphereParams, a_sum: u32) -> Rational {
    let a = int(a_sum as i64);
    -(&a * (&a + p.partial_g(p.n()) + q(p.n() as i64 - 2, 2)))
}

/// Coefficient `(1 + 2G_1)/(2E)` of `φ± = x + (1 + 2G_1)/(2E±)`.
pub fn phi_constant(p: &SphereParams, e: &Rational) -> Result<Rational> {
    if e == &int(0) {
        return Err(Error::DivisionByZero);
    }
    Ok((int(1) + int(2) * p.partial_g(1)) / (int(2) * e))
}

fn single(id: &str, a_sum: u32, e: Rational, multiplicity: u32) -> CatalogSector {
    CatalogSector { id: id.into(), a_sum, polynomial: UniPoly::linear_root(&e), multiplicity, pair: None }
}

fn pair(id: &str, a_sum: u32, alpha: Rational, d: Rational, multiplicity: u32) -> CatalogSector {
    let c0 = &alpha * &alpha - &d / int(4);
    let polynomial = UniPoly::new(vec![c0, int(-2) * &alpha, int(1)]);
    CatalogSector { id: id.into(), a_sum, polynomial, multiplicity, pair: Some((alpha, d)) }
}

fn cubic(id: &str, a_sum: u32, lead: Rational, c2: Rational, c1: Rational, c0: Rational) -> CatalogSector {
    let polynomial = UniPoly::new(vec![c0, c1, c2, lead]).monic();
    CatalogSector { id: id.into(), a_sum, polynomial, multiplicity: 1, pair: None }
}

/// Every listed closed form for `h^(QES)` at `(n, k)`.
pub fn catalog_entry(p: &SphereParams) -> Result<CatalogEntry> {
    let (n, k) = (p.n(), p.k());
    let g = p.big_g();
    let a = p.a().clone();
    let gn = p.partial_g(n);
    let sectors = match (n, k) {
        (1..=3, 0) => vec![single(&format!("s{n}k0"), 0, int(0), 1)],
        (1, 1) => vec![pair(
            "s1k1",
            0,
            -&g / int(2) - half(),
            (&g + int(1)).pow(2) - int(2) * &a * (int(1) + int(2) * &gn),
            1,
        )],
        (1, 2) => vec![cubic(
            "s1k2",
            0,
            int(1),
            int(3) * &g + int(5),
            int(2) * (int(2) * &a * (&gn + int(1)) + (&g + int(2)) * (&g + int(1))),
            int(2) * &a * (int(2) * &gn + int(1)) * (&g + int(2)),
        )],
        (2, 1) => vec![
            single("s2k1.q1", 1, q(3, 2) - &g, 1),
            pair("s2k1.q0", 0, q(3, 4) - &g / int(2), (&g - q(3, 2)).pow(2) - int(4) * &a * (int(1) + &gn), 1),
        ],
        (2, 2) => vec![
            single("s2k2.q2", 2, int(1) - int(2) * &g, 1),
            pair(
                "s2k2.q1",
                1,
                q(5, 4) - q(3, 2) * &g,
                (&g + half()).pow(2) - int(4) * &a * (int(3) + &gn),
                1,
            ),
            cubic(
                "s2k2.q0",
                0,
                int(2),
                int(6) * &g - int(5),
                int(4) * &a * (int(3) + int(2) * &gn) + (int(1) - int(2) * &g) * (int(3) - int(2) * &g),
                int(4) * &a * (&gn + int(1)) * (int(2) * &g - int(1)),
            ),
        ],
        (3, 1) => vec![
            single("s3k1.q1", 1, int(2) - &g, 2),
            pair("s3k1.q0", 0, int(1) - &g / int(2), (&g - int(2)).pow(2) - int(2) * &a * (int(3) + int(2) * &gn), 1),
        ],
        (3, 2) => vec![
            single("s3k2.q2", 2, int(2) * (int(1) - &g), 3),
            pair("s3k2.q1", 1, int(2) - q(3, 2) * &g, g.pow(2) - int(2) * &a * (int(7) + int(2) * &gn), 2),
            cubic(
                "s3k2.q0",
                0,
                int(1),
                int(3) * &g - int(4),
                int(2) * (int(2) * &a * (&gn + int(2)) + (&g - int(1)) * (&g - int(2))),
                int(2) * &a * (int(2) * &gn + int(3)) * (&g - int(1)),
            ),
        ],
        _ => return Err(Error::OutOfCatalog { n, k }),
    };
    Ok(CatalogEntry { n, k, sectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::binomial;
    use crate::exactalg::roots::real_roots;

    fn params(n: usize, a: Rational, k: u32) -> SphereParams {
        let g = [q(1, 3), q(-2, 5), q(3, 4), q(5, 7)];
        SphereParams::new(g[..=n].to_vec(), a, k).unwrap()
    }

    #[test]
    fn dimensions_cover_space() {
        for n in 1..=3 {
            for k in 0..=2 {
                let e = catalog_entry(&params(n, q(2, 3), k)).unwrap();
                let d: usize = e.sectors.iter().map(|s| s.dim()).sum();
                assert_eq!(d as u64, binomial(n as u64 + k as u64, n as u64), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn n3_k2_top_sector() {
        let p = params(3, q(1, 5), 2);
        let e = catalog_entry(&p).unwrap();
        let s = e.sector(2).unwrap();
        assert_eq!(s.multiplicity, 3);
        assert_eq!(s.polynomial, UniPoly::linear_root(&(int(2) * (int(1) - p.big_g()))));
    }

    #[test]
    fn n1_k2_cubic_at_a0() {
        let p = params(1, int(0), 2);
        let g = p.big_g();
        let s = &catalog_entry(&p).unwrap().sectors[0];
        let roots = real_roots(&s.polynomial, 64).unwrap().all_rational().unwrap();
        let mut got: Vec<Rational> = roots.into_iter().map(|(r, _)| r).collect();
        got.sort();
        let mut want = vec![int(0), -(&g + int(1)), int(-2) * (&g + int(2))];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(es_level(1, 1, &g), -(&g + int(1)));
        assert_eq!(es_level(1, 2, &g), int(-2) * (&g + int(2)));
    }

    #[test]
    fn printed_energy_offset() {
        let g = q(3, 4);
        for n in 1..=3 {
            assert_eq!(es_energy_printed(n, 2, &g) - es_energy(n, 2, &g), int(1));
        }
    }

    #[test]
    fn out_of_catalog() {
        assert!(matches!(catalog_entry(&params(3, int(1), 3)), Err(Error::OutOfCatalog { n: 3, k: 3 })));
        assert!(catalog_entry(&params(2, int(0), 0)).is_ok());
    }
}
