//! Lens spaces `L(p, q)` with their direct formulas
//!
//! ```text
//! ν(L(p,q)) = -1/p + 12 s(p, q, 1)
//! η(L(p,q)) = -4 s(p, q, 1)          (round metric)
//! ```
//!
//! and the Seifert description used to compute ν a second way.
//!
//! For `gcd(q - 1, p) = 1`, `L(p, q)` is an orbifold circle bundle of degree
//! `-1/p` over a sphere with two points of order `p`, so `χ = 2/p`. Reading the
//! rotation angles off the two fixed points gives `{(p, q-1, 1), (p, 1-q, q)}`
//! ([`Convention::PaperLiteral`]). Fed through [`nu_seifert`] it does not
//! reproduce the direct formula; flipping the base rotation at both points,
//! `{(p, 1-q, 1), (p, q-1, q)}` ([`Convention::Calibrated`]), does. Both are
//! kept so the discrepancy stays visible.
//!
//! `q = 1` is the unit circle bundle of degree `-p` over a smooth sphere and is
//! routed through that model.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::dedekind::s3_i64;
use crate::error::{invalid, Error, Result};
use crate::exact::Rational;
use crate::seifert::{nu_seifert, OrbifoldPoint, SeifertData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    /// Reduces `q` into `[1, p]`; `q = p` only occurs for `p = 1`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 {
            return Err(invalid(format!("p = {p} must be positive")));
        }
        if p.gcd(&q) != 1 {
            return Err(invalid(format!("q = {q} is not prime to p = {p}")));
        }
        let q = match q.rem_euclid(p) {
            0 => p,
            r => r,
        };
        Ok(LensSpace { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `gcd(q - 1, p) = 1` and `q ≠ 1`: the orbifold decomposition applies.
    pub fn has_orbifold_route(&self) -> bool {
        self.q != 1 && (self.q - 1).gcd(&self.p) == 1
    }

    /// Canonical representatives for every `L(p, q)` with `p ≤ pmax`, ordered by `(p, q)`.
    pub fn enumerate(pmax: i64) -> Vec<LensSpace> {
        (1..=pmax)
            .flat_map(|p| {
                let qs = if p == 1 { 1..=1 } else { 1..=p - 1 };
                qs.filter(move |q| p.gcd(q) == 1).map(move |q| LensSpace { p, q })
            })
            .collect()
    }

    fn dedekind(&self) -> Rational {
        s3_i64(self.p, self.q, 1).expect("q prime to p")
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}, {})", self.p, self.q)
    }
}

pub fn canonicalize_lens(p: i64, q: i64) -> Result<LensSpace> {
    LensSpace::new(p, q)
}

pub fn nu_lens(lens: &LensSpace) -> Rational {
    -Rational::frac(1, lens.p) + Rational::from(12) * lens.dedekind()
}

pub fn eta_round(lens: &LensSpace) -> Rational {
    Rational::from(-4) * lens.dedekind()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    PaperLiteral,
    #[default]
    Calibrated,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::PaperLiteral => "paper-literal",
            Convention::Calibrated => "calibrated",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" => Ok(Convention::PaperLiteral),
            "calibrated" => Ok(Convention::Calibrated),
            other => Err(invalid(format!("unknown convention {other:?}"))),
        }
    }
}

/// Two-point orbifold description of `L(p, q)`. Residues are reduced into `[0, p)`.
pub fn to_seifert(lens: &LensSpace, convention: Convention) -> Result<SeifertData> {
    if !lens.has_orbifold_route() {
        return Err(Error::Unsupported(format!(
            "{lens}: the orbifold decomposition needs q != 1 and gcd(q - 1, p) = 1"
        )));
    }
    let (p, q) = (lens.p, lens.q);
    let m = |v: i64| v.rem_euclid(p);
    let raw = match convention {
        Convention::PaperLiteral => [(q - 1, 1), (1 - q, q)],
        Convention::Calibrated => [(1 - q, 1), (q - 1, q)],
    };
    let points = raw
        .iter()
        .map(|&(b, c)| OrbifoldPoint::new(p, m(b), m(c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeifertData::new(
        Rational::frac(-1, p),
        Rational::frac(2, p),
        points,
    ))
}

/// Smooth model of `L(p, 1)`: degree `-p` over the 2-sphere.
pub fn smooth_model(p: i64) -> SeifertData {
    SeifertData::smooth(Rational::from(-p), Rational::from(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Orbifold,
    Smooth,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub direct: Rational,
    pub via_seifert: Rational,
    pub consistent: bool,
    pub route: Route,
    /// `ν = -1/p - 3η(round)`.
    pub eta_identity: bool,
}

pub fn nu_cross_check(lens: &LensSpace, convention: Convention) -> Result<CrossCheck> {
    let (model, route) = if lens.q == 1 {
        (smooth_model(lens.p), Route::Smooth)
    } else {
        (to_seifert(lens, convention)?, Route::Orbifold)
    };
    let direct = nu_lens(lens);
    let via_seifert = nu_seifert(&model)?;
    let eta_identity = direct == -Rational::frac(1, lens.p) - Rational::from(3) * eta_round(lens);
    Ok(CrossCheck {
        consistent: direct == via_seifert,
        direct,
        via_seifert,
        route,
        eta_identity,
    })
}
