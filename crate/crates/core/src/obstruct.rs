//! Obstructions to filling a CR boundary by complex hyperbolic,
//! Kähler–Einstein or Einstein metrics.
//!
//! Characteristic numbers are rationals so that orbifold fillings are
//! covered. Cusps enter through the modified signature
//! `τ_cusp = τ - (1/3) Σ [Σ_i]·[Σ_i]`.
//!
//! For an Einstein ACH filling the renormalized curvature integral equals
//! `ν + χ(M̄) - 3τ(M̄)` ([`einstein_defect`]). It vanishes for complex
//! hyperbolic metrics and is non-negative for Kähler–Einstein ones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FillingData {
    pub euler: Rational,
    pub signature: Rational,
    #[serde(default)]
    pub cusp_self_intersections: Vec<i64>,
    /// Caller's assertion that the Kronheimer–Mrowka invariant is nonzero.
    #[serde(default)]
    pub km_nonvanishing: Option<bool>,
}

impl FillingData {
    pub fn new(euler: Rational, signature: Rational) -> Self {
        FillingData {
            euler,
            signature,
            ..Default::default()
        }
    }

    pub fn with_cusps(mut self, cusps: Vec<i64>) -> Self {
        self.cusp_self_intersections = cusps;
        self
    }

    pub fn modified_signature(&self) -> Rational {
        tau_cusp(&self.signature, &self.cusp_self_intersections)
    }

    /// `χ(M̄) - 3τ_cusp(M̄)`.
    fn characteristic(&self) -> Rational {
        &self.euler - Rational::from(3) * self.modified_signature()
    }
}

pub fn tau_cusp(signature: &Rational, cusp_self_intersections: &[i64]) -> Rational {
    let total: i64 = cusp_self_intersections.iter().sum();
    signature - Rational::frac(total, 3)
}

/// Both sides of a relation between exact values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// `ν(X) = -χ(M̄) + 3τ(M̄)`, necessary for a complex hyperbolic filling.
pub fn check_ch_filling_equality(nu: &Rational, filling: &FillingData) -> Comparison {
    let rhs = -filling.characteristic();
    Comparison {
        holds: *nu == rhs,
        lhs: nu.clone(),
        rhs,
    }
}

pub fn nu_is_integer(nu: &Rational) -> bool {
    nu.is_integer()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothObstruction {
    pub obstructed: bool,
    pub value: Rational,
}

/// A smooth bundle with non-integral `χ²/4d` bounds no complex hyperbolic metric.
pub fn cor13_smooth_obstruction(euler: &Rational, degree: &Rational) -> Result<SmoothObstruction> {
    if degree.is_zero() {
        return Err(Error::DivisionByZero("degree d = 0"));
    }
    let value = (euler * euler) / (Rational::from(4) * degree);
    Ok(SmoothObstruction {
        obstructed: !value.is_integer(),
        value,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeVerdict {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
    /// The inequality also constrains Einstein (non-Kähler) fillings only
    /// when the Kronheimer–Mrowka invariant is nonzero. Echoes the caller's flag.
    pub einstein_applicable: bool,
}

/// `χ(M̄) - 3τ(M̄) ≥ -ν(X)` for Kähler–Einstein fillings.
pub fn ke_inequality(nu: &Rational, filling: &FillingData) -> KeVerdict {
    let lhs = filling.characteristic();
    let rhs = -nu;
    KeVerdict {
        holds: lhs >= rhs,
        lhs,
        rhs,
        einstein_applicable: filling.km_nonvanishing == Some(true),
    }
}

/// Value the curvature integral must take: `ν + χ(M̄) - 3τ(M̄)`.
pub fn einstein_defect(nu: &Rational, filling: &FillingData) -> Rational {
    nu + filling.characteristic()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskBundleSolution {
    pub degree: Rational,
    pub unique: bool,
}

/// Solves `χ + 3 = d + 3 + χ²/4d`, i.e. `(2d - χ)² = 0`.
pub fn disk_bundle_degree(euler: &Rational) -> Result<DiskBundleSolution> {
    if euler.is_zero() {
        return Err(Error::InvalidInput(
            "chi = 0 makes the disk-bundle equation degenerate".into(),
        ));
    }
    Ok(DiskBundleSolution {
        degree: euler / Rational::from(2),
        unique: true,
    })
}
