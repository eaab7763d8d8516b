//! Orbifold circle bundles over orbifold Riemann surfaces and their
//! closed-form invariants.
//!
//! A bundle is described by its rational degree `d`, the orbifold Euler
//! characteristic `χ` of the base, and the local data `(α, β, γ)` at each
//! orbifold point. The CR structure is strictly pseudoconvex only for `d < 0`;
//! other degrees are rejected unless [`SeifertData::non_pseudoconvex`] is set.
//!
//! ```text
//! ν = -d - 3 - χ²/4d - 12 Σ s(α_j, β_j, γ_j)
//! η(ρ²) = (d + 3 - 2χρ² - 2dρ⁴)/3 + 4 Σ s(α_j, β_j, γ_j)
//! μ = χ²/4d                  (smooth bundles only)
//! ```
//!
//! The η formula already has the base volume `V = -πd` substituted, so no
//! factor of π survives.

use serde::{Deserialize, Serialize};

use crate::dedekind::{s3, DedekindArgs};
use crate::error::{invalid, Error, Result};
use crate::exact::Rational;

/// Local data at a singular fiber: the isotropy group is `Z/α`, acting by
/// `e^{2πiβ/α}` on the base and `e^{2πiγ/α}` on the fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 3]", into = "[i64; 3]")]
pub struct OrbifoldPoint {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl OrbifoldPoint {
    pub fn new(alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        if alpha < 2 {
            return Err(invalid(format!("orbifold order alpha = {alpha} must be at least 2")));
        }
        DedekindArgs::new(alpha, beta, gamma)?;
        Ok(OrbifoldPoint { alpha, beta, gamma })
    }

    pub fn dedekind(&self) -> Rational {
        s3(&DedekindArgs::new(self.alpha, self.beta, self.gamma).expect("validated point"))
    }
}

impl TryFrom<[i64; 3]> for OrbifoldPoint {
    type Error = Error;
    fn try_from([a, b, c]: [i64; 3]) -> Result<Self> {
        OrbifoldPoint::new(a, b, c)
    }
}

impl From<OrbifoldPoint> for [i64; 3] {
    fn from(p: OrbifoldPoint) -> Self {
        [p.alpha, p.beta, p.gamma]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub degree: Rational,
    pub euler: Rational,
    #[serde(default)]
    pub points: Vec<OrbifoldPoint>,
    /// Allows `d ≥ 0`, where the formulas still evaluate but carry no CR meaning.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub non_pseudoconvex: bool,
}

impl SeifertData {
    pub fn new(degree: Rational, euler: Rational, points: Vec<OrbifoldPoint>) -> Self {
        SeifertData {
            degree,
            euler,
            points,
            non_pseudoconvex: false,
        }
    }

    /// Smooth bundle with no orbifold points.
    pub fn smooth(degree: Rational, euler: Rational) -> Self {
        Self::new(degree, euler, Vec::new())
    }

    pub fn allow_non_pseudoconvex(mut self) -> Self {
        self.non_pseudoconvex = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree.is_zero() {
            return Err(Error::DivisionByZero("degree d = 0"));
        }
        if self.degree.is_positive() && !self.non_pseudoconvex {
            return Err(invalid(format!(
                "degree d = {} is not negative; the CR structure is not pseudoconvex",
                self.degree
            )));
        }
        Ok(())
    }
}

/// Squared metric parameter `ρ²` of `g_ρ = 4ρ²θ² + γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaParams {
    rho2: Rational,
}

impl EtaParams {
    pub fn new(rho2: Rational) -> Result<Self> {
        if rho2.is_negative() {
            return Err(invalid(format!("rho^2 = {rho2} must be non-negative")));
        }
        Ok(EtaParams { rho2 })
    }

    pub fn rho2(&self) -> &Rational {
        &self.rho2
    }
}

/// `2 - 2g - Σ (1 - 1/α_j)`.
pub fn orbifold_euler(genus: u64, alphas: &[i64]) -> Result<Rational> {
    let mut chi = Rational::from(2) - Rational::from_integer(2 * u128::from(genus));
    for &a in alphas {
        if a < 2 {
            return Err(invalid(format!("orbifold order {a} must be at least 2")));
        }
        chi -= &(Rational::one() - Rational::frac(1, a));
    }
    Ok(chi)
}

/// `Σ_j s(α_j, β_j, γ_j)`.
pub fn dedekind_total(data: &SeifertData) -> Result<Rational> {
    data.points
        .iter()
        .map(|p| {
            DedekindArgs::new(p.alpha, p.beta, p.gamma).map(|args| s3(&args))
        })
        .sum()
}

pub fn nu_seifert(data: &SeifertData) -> Result<Rational> {
    data.validate()?;
    let d = &data.degree;
    let chi = &data.euler;
    let chi_term = (chi * chi).checked_div(&(Rational::from(4) * d))?;
    Ok(-d - Rational::from(3) - chi_term - Rational::from(12) * dedekind_total(data)?)
}

pub fn eta_ouyang(data: &SeifertData, params: &EtaParams) -> Result<Rational> {
    data.validate()?;
    let d = &data.degree;
    let chi = &data.euler;
    let rho2 = params.rho2();
    let two = Rational::from(2);
    let inner = d + Rational::from(3) - &two * chi * rho2 - &two * d * rho2 * rho2;
    Ok(inner / Rational::from(3) + Rational::from(4) * dedekind_total(data)?)
}

/// Burns–Epstein invariant of a smooth bundle. Only meaningful when the bundle
/// has no orbifold points; callers are responsible for that.
pub fn mu_smooth(euler: &Rational, degree: &Rational) -> Result<Rational> {
    if degree.is_zero() {
        return Err(Error::DivisionByZero("degree d = 0"));
    }
    Ok((euler * euler) / (Rational::from(4) * degree))
}
