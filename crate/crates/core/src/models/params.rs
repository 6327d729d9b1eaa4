
use crate::error::{Error, Result};
use crate::exactalg::rational::{int, Rational};

/// Parameters of the sphere family: `n`, `γ_1..γ_{n+1}`, `a`, `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereParams {
    n: usize,
    gamma: Vec<Rational>,
    a: Rational,
    k: u32,
    partial: Vec<Rational>,
}

impl SphereParams {
    pub fn new(gamma: Vec<Rational>, a: Rational, k: u32) -> Result<Self> {
        if gamma.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "need n+1 >= 2 gamma values, got {}",
                gamma.len()
            )));
        }
        let mut partial = Vec::with_capacity(gamma.len());
        let mut acc = int(0);
        for g in &gamma {
            acc += g;
            partial.push(acc.clone());
        }
        Ok(SphereParams {
            n: gamma.len() - 1,
            gamma,
            a,
            k,
            partial,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// `γ_i`, 1-based.
    pub fn gamma(&self, i: usize) -> &Rational {
        &self.gamma[i - 1]
    }

    pub fn gammas(&self) -> &[Rational] {
        &self.gamma
    }

    /// `G = Σ_{ℓ=1}^{n+1} γ_ℓ`.
    pub fn big_g(&self) -> Rational {
        self.partial[self.n].clone()
    }

    /// `G_j = Σ_{i≤j} γ_i`, 1-based, `G_{n+1} = G`.
    pub fn partial_g(&self, j: usize) -> Rational {
        if j == 0 {
            int(0)
        } else {
            self.partial[j - 1].clone()
        }
    }

    /// `a_i = γ_i(γ_i - 1)`.
    pub fn a_coef(&self, i: usize) -> Rational {
        let g = self.gamma(i);
        g * (g - int(1))
    }

    pub fn with_a(&self, a: Rational) -> Self {
        Self::new(self.gamma.clone(), a, self.k).unwrap()
    }

    pub fn with_k(&self, k: u32) -> Self {
        Self::new(self.gamma.clone(), self.a.clone(), k).unwrap()
    }

    pub fn with_gamma(&self, gamma: Vec<Rational>) -> Result<Self> {
        Self::new(gamma, self.a.clone(), self.k)
    }
}

/// Parameters of the Euclidean family: `n`, `γ'_1..γ'_n`, `ω`, `b`, `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidParams {
    n: usize,
    gamma: Vec<Rational>,
    omega: Rational,
    b: Rational,
    k: u32,
}

impl EuclidParams {
    pub fn new(gamma: Vec<Rational>, omega: Rational, b: Rational, k: u32) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::InvalidParams("need n >= 1 gamma' values".into()));
        }
        Ok(EuclidParams {
            n: gamma.len(),
            gamma,
            omega,
            b,
            k,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `γ'_j`, 1-based.
    pub fn gamma(&self, j: usize) -> &Rational {
        &self.gamma[j - 1]
    }

    pub fn gammas(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn gamma_sum(&self) -> Rational {
        self.gamma.iter().fold(int(0), |a, g| a + g)
    }

    /// Ground energy `2ω(Σγ'_j - n)`.
    pub fn e0(&self) -> Rational {
        int(2) * &self.omega * (self.gamma_sum() - int(self.n as i64))
    }
}
