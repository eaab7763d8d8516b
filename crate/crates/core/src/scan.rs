//! Bulk evaluation over families of lens spaces and smooth circle bundles.
//!
//! Rows are computed independently and collected in key order, so the
//! output does not depend on the execution strategy or the thread count.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exact::Rational;
use crate::lens::{eta_round, nu_cross_check, nu_lens, Convention, LensSpace};
use crate::obstruct::cor13_smooth_obstruction;
use crate::par::Exec;
use crate::seifert::{mu_smooth, nu_seifert, SeifertData};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensRow {
    pub p: i64,
    pub q: i64,
    pub nu: Rational,
    pub eta: Rational,
    pub integer: bool,
    /// A non-integral ν rules out a smooth complex hyperbolic filling.
    pub obstructed: bool,
    /// Two-route agreement; absent when no second route exists.
    pub consistent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleRow {
    pub genus: u64,
    pub degree: Rational,
    pub euler: Rational,
    pub nu: Rational,
    pub mu: Rational,
    pub integer: bool,
    /// `χ²/4d` is not an integer.
    pub obstructed: bool,
}

pub fn lens_row(lens: &LensSpace, convention: Convention) -> LensRow {
    let nu = nu_lens(lens);
    let consistent = if lens.q() == 1 || lens.has_orbifold_route() {
        nu_cross_check(lens, convention).ok().map(|c| c.consistent)
    } else {
        None
    };
    LensRow {
        p: lens.p(),
        q: lens.q(),
        eta: eta_round(lens),
        integer: nu.is_integer(),
        obstructed: !nu.is_integer(),
        nu,
        consistent,
    }
}

/// Every `L(p, q)` with `p ≤ pmax`, ordered by `(p, q)`.
pub fn scan_lens(pmax: i64, convention: Convention, exec: Exec) -> Result<Vec<LensRow>> {
    if pmax < 1 {
        return Err(invalid(format!("pmax = {pmax} must be at least 1")));
    }
    let spaces = LensSpace::enumerate(pmax);
    Ok(exec.map(&spaces, |l| lens_row(l, convention)))
}

pub fn bundle_row(genus: u64, degree: i64) -> Result<BundleRow> {
    let euler = Rational::from(2) - Rational::from_integer(2 * u128::from(genus));
    let degree = Rational::from(degree);
    let nu = nu_seifert(&SeifertData::smooth(degree.clone(), euler.clone()))?;
    let mu = mu_smooth(&euler, &degree)?;
    let verdict = cor13_smooth_obstruction(&euler, &degree)?;
    Ok(BundleRow {
        genus,
        integer: nu.is_integer(),
        obstructed: verdict.obstructed,
        degree,
        euler,
        nu,
        mu,
    })
}

/// Smooth bundles over genus `g ≤ genus_max` with degree `-1 ≥ d ≥ dmin`,
/// ordered by genus, then by decreasing degree.
pub fn scan_bundles(genus_max: u64, dmin: i64, exec: Exec) -> Result<Vec<BundleRow>> {
    if dmin > -1 {
        return Err(invalid(format!("dmin = {dmin} must be at most -1")));
    }
    let keys: Vec<(u64, i64)> = (0..=genus_max)
        .flat_map(|g| (dmin..=-1).rev().map(move |d| (g, d)))
        .collect();
    exec.map(&keys, |&(g, d)| bundle_row(g, d)).into_iter().collect()
}
