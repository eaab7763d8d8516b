//! The three-argument Dedekind sum
//!
//! ```text
//! s(α, β, γ) = (1/4α) Σ_{k=1}^{α-1} cot(kβπ/α) cot(kγπ/α)
//!            = Σ_{k=1}^{α-1} ((kβ/α)) ((kγ/α))
//! ```
//!
//! where `((x))` is the sawtooth function. The second form is the exact
//! definition used here; [`s3_float_oracle`] evaluates the first one in
//! floating point so the two can be compared.
//!
//! [`s3_fast`] reduces to the classical sum `s(h, α)` with `h = β⁻¹γ mod α`
//! and runs the reciprocity descent, taking `O(log α)` steps.
//! [`s3_bruteforce`] is linear in `α` and serves as the test oracle.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};
use crate::exact::{gcd, mod_inverse, Rational};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DedekindArgs {
    alpha: BigInt,
    beta: BigInt,
    gamma: BigInt,
}

impl DedekindArgs {
    /// Requires `α ≥ 1` and `β`, `γ` prime to `α`. Negative or out-of-range
    /// `β`, `γ` are accepted.
    pub fn new(
        alpha: impl Into<BigInt>,
        beta: impl Into<BigInt>,
        gamma: impl Into<BigInt>,
    ) -> Result<Self> {
        let (alpha, beta, gamma) = (alpha.into(), beta.into(), gamma.into());
        if alpha < BigInt::one() {
            return Err(invalid(format!("alpha = {alpha} must be at least 1")));
        }
        for (name, v) in [("beta", &beta), ("gamma", &gamma)] {
            if !gcd(v, &alpha).is_one() {
                return Err(invalid(format!("{name} = {v} is not prime to alpha = {alpha}")));
            }
        }
        Ok(DedekindArgs { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    pub fn beta(&self) -> &BigInt {
        &self.beta
    }

    pub fn gamma(&self) -> &BigInt {
        &self.gamma
    }
}

/// `((x))`: zero on integers, `x - floor(x) - 1/2` otherwise.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - Rational::from_integer(x.floor()) - Rational::frac(1, 2)
}

/// Linear-time evaluation of `Σ ((kβ/α))((kγ/α))`.
pub fn s3_bruteforce(args: &DedekindArgs) -> Rational {
    let alpha = &args.alpha;
    if alpha.is_one() {
        return Rational::zero();
    }
    // ((m/α)) = (2m - α) / (2α) for residues m ≠ 0, so the sum is
    // Σ (2m₁ - α)(2m₂ - α) / (4α²). Every residue is nonzero for 0 < k < α.
    let numerator = match alpha.to_i64().filter(|a| *a < 1 << 40) {
        Some(a) => {
            let b = args.beta.mod_floor(alpha).to_i64().unwrap();
            let c = args.gamma.mod_floor(alpha).to_i64().unwrap();
            let (mut m1, mut m2) = (0i64, 0i64);
            let mut acc: i128 = 0;
            for _ in 1..a {
                m1 = (m1 + b) % a;
                m2 = (m2 + c) % a;
                acc += i128::from(2 * m1 - a) * i128::from(2 * m2 - a);
            }
            BigInt::from(acc)
        }
        None => {
            let b = args.beta.mod_floor(alpha);
            let c = args.gamma.mod_floor(alpha);
            let (mut m1, mut m2) = (BigInt::zero(), BigInt::zero());
            let mut acc = BigInt::zero();
            let mut k = BigInt::one();
            while &k < alpha {
                m1 = (m1 + &b).mod_floor(alpha);
                m2 = (m2 + &c).mod_floor(alpha);
                acc += (BigInt::from(2) * &m1 - alpha) * (BigInt::from(2) * &m2 - alpha);
                k += 1;
            }
            acc
        }
    };
    Rational::canonicalize(numerator, BigInt::from(4) * alpha * alpha).unwrap()
}

/// Classical Dedekind sum `s(h, k) = Σ_{j=1}^{k-1} ((j/k))((hj/k))` by the
/// reciprocity law `s(h,k) + s(k,h) = -1/4 + (h² + k² + 1)/(12hk)`.
pub fn dedekind_classical(h: &BigInt, k: &BigInt) -> Result<Rational> {
    if !k.is_positive() {
        return Err(invalid(format!("modulus k = {k} must be positive")));
    }
    if !gcd(h, k).is_one() {
        return Err(invalid(format!("h = {h} is not prime to k = {k}")));
    }
    let mut h = h.mod_floor(k);
    let mut k = k.clone();
    let mut acc = Rational::zero();
    let mut negate = false;
    let quarter = Rational::frac(1, 4);
    // s(0, 1) = 0 terminates the descent.
    while !h.is_zero() {
        let term = Rational::canonicalize(&h * &h + &k * &k + 1u32, BigInt::from(12) * &h * &k)
            .unwrap()
            - &quarter;
        if negate {
            acc -= &term;
        } else {
            acc += &term;
        }
        negate = !negate;
        let next = k.mod_floor(&h);
        k = h;
        h = next;
    }
    Ok(acc)
}

/// `s(α, β, γ)` in `O(log α)` steps. Substituting `k → β⁻¹k` turns the sum
/// into the classical `s(β⁻¹γ mod α, α)`.
pub fn s3_fast(args: &DedekindArgs) -> Rational {
    let alpha = &args.alpha;
    if alpha.is_one() {
        return Rational::zero();
    }
    let inv = mod_inverse(&args.beta, alpha).expect("beta prime to alpha");
    let h = (inv * &args.gamma).mod_floor(alpha);
    dedekind_classical(&h, alpha).expect("validated arguments")
}

/// Production entry point.
pub fn s3(args: &DedekindArgs) -> Rational {
    s3_fast(args)
}

/// Convenience for small integer arguments.
pub fn s3_i64(alpha: i64, beta: i64, gamma: i64) -> Result<Rational> {
    DedekindArgs::new(alpha, beta, gamma).map(|a| s3_fast(&a))
}

/// Evaluates many sums, preserving order.
pub fn s3_batch(args: &[DedekindArgs], exec: Exec) -> Vec<Rational> {
    exec.map(args, s3_fast)
}

/// Cotangent values `cot(πm/α)` for `m = 0..α`, shared by every float
/// evaluation with the same `α`. Entry 0 is unused.
#[derive(Debug, Clone)]
pub struct CotTable {
    alpha: u64,
    cot: Vec<f64>,
}

impl CotTable {
    pub fn new(alpha: u64) -> Self {
        let a = alpha as f64;
        let cot = (0..alpha)
            .map(|m| if m == 0 { 0.0 } else { 1.0 / (PI * m as f64 / a).tan() })
            .collect();
        CotTable { alpha, cot }
    }

    /// `(1/4α) Σ cot(kβπ/α) cot(kγπ/α)` with `β`, `γ` given as residues.
    pub fn s3(&self, beta: u64, gamma: u64) -> f64 {
        let a = self.alpha;
        if a <= 1 {
            return 0.0;
        }
        let (b, c) = (beta % a, gamma % a);
        let (mut m1, mut m2) = (0u64, 0u64);
        let mut acc = 0.0;
        for _ in 1..a {
            m1 = (m1 + b) % a;
            m2 = (m2 + c) % a;
            acc += self.cot[m1 as usize] * self.cot[m2 as usize];
        }
        acc / (4.0 * a as f64)
    }
}

/// Literal cotangent evaluation in double precision. `α` must fit in `u64`;
/// NaN is returned otherwise.
pub fn s3_float_oracle(args: &DedekindArgs) -> f64 {
    let Some(alpha) = args.alpha.to_u64() else {
        return f64::NAN;
    };
    let residue = |v: &BigInt| v.mod_floor(&args.alpha).to_u64().unwrap();
    CotTable::new(alpha).s3(residue(&args.beta), residue(&args.gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn args(a: i64, b: i64, c: i64) -> DedekindArgs {
        DedekindArgs::new(a, b, c).unwrap()
    }

    /// Direct sum through `sawtooth`, independent of the residue arithmetic
    /// in `s3_bruteforce`.
    fn sawtooth_sum(a: i64, b: i64, c: i64) -> Rational {
        (1..a)
            .map(|k| {
                sawtooth(&Rational::frac(k * b, a)) * sawtooth(&Rational::frac(k * c, a))
            })
            .sum()
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&Rational::from(3)), Rational::zero());
        assert_eq!(sawtooth(&Rational::frac(1, 5)), Rational::frac(-3, 10));
        assert_eq!(sawtooth(&Rational::frac(-1, 5)), Rational::frac(3, 10));
        assert_eq!(sawtooth(&Rational::frac(7, 2)), Rational::zero());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(s3_bruteforce(&args(1, 1, 1)), Rational::zero());
        assert_eq!(s3_bruteforce(&args(5, 1, 1)), Rational::frac(1, 5));
        assert_eq!(s3_bruteforce(&args(5, 4, 2)), Rational::zero());
        assert_eq!(s3_bruteforce(&args(3, 2, 1)), Rational::frac(-1, 18));
    }

    #[test]
    fn bruteforce_matches_sawtooth_definition() {
        for a in 1..40 {
            for b in -a..=a {
                for c in [1, 2, -1, 7] {
                    if let Ok(x) = DedekindArgs::new(a, b, c) {
                        assert_eq!(s3_bruteforce(&x), sawtooth_sum(a, b, c), "({a},{b},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn fast_examples() {
        assert_eq!(s3_fast(&args(12, 5, 1)), Rational::frac(-1, 72));
        assert_eq!(s3_fast(&args(5, 2, 1)), Rational::zero());
        assert_eq!(s3_fast(&args(5, 1, 1)), Rational::frac(1, 5));
        assert_eq!(s3_fast(&args(1, 1, 1)), Rational::zero());
    }

    #[test]
    fn fast_matches_bruteforce_exhaustively_small() {
        for a in 1..60i64 {
            for b in 0..a {
                for c in 0..a {
                    if let Ok(x) = DedekindArgs::new(a, b, c) {
                        assert_eq!(s3_fast(&x), s3_bruteforce(&x), "({a},{b},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn classical_closed_form() {
        for p in 2..=200i64 {
            let expected = Rational::frac((p - 1) * (p - 2), 12 * p);
            assert_eq!(s3_bruteforce(&args(p, 1, 1)), expected);
            assert_eq!(s3_fast(&args(p, 1, 1)), expected);
        }
    }

    #[test]
    fn float_oracle_examples() {
        assert!((s3_float_oracle(&args(5, 1, 1)) - 0.2).abs() < 1e-12);
        assert_eq!(s3_float_oracle(&args(1, 1, 1)), 0.0);
        assert!((s3_float_oracle(&args(3, 2, 1)) + 1.0 / 18.0).abs() < 1e-12);
    }

    #[test]
    fn symmetries() {
        for a in 2..50i64 {
            for b in 1..a {
                for c in [1, 3, a - 1] {
                    let Ok(x) = DedekindArgs::new(a, b, c) else { continue };
                    let s = s3_fast(&x);
                    assert_eq!(s3_fast(&args(a, -b, c)), -&s);
                    assert_eq!(s3_fast(&args(a, c, b)), s);
                    assert_eq!(s3_fast(&args(a, b + a, c)), s);
                    let six_alpha = &s * Rational::from(6 * a);
                    assert!(six_alpha.is_integer(), "6α·s not integral at ({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn large_alpha_fast_path() {
        // Reciprocity: s(1, k) closed form holds for huge k as well.
        let k: BigInt = BigInt::from(10).pow(30) + 7;
        let x = DedekindArgs::new(k.clone(), 1, 1).unwrap();
        let expected = Rational::canonicalize((&k - 1) * (&k - 2), BigInt::from(12) * &k).unwrap();
        assert_eq!(s3_fast(&x), expected);
    }

    #[test]
    fn rejects_invalid_arguments() {
        assert!(matches!(DedekindArgs::new(6, 2, 1), Err(Error::InvalidInput(_))));
        assert!(matches!(DedekindArgs::new(6, 1, 3), Err(Error::InvalidInput(_))));
        assert!(matches!(DedekindArgs::new(0, 1, 1), Err(Error::InvalidInput(_))));
        assert!(s3_i64(9, 3, 1).is_err());
        assert!(dedekind_classical(&2.into(), &4.into()).is_err());
    }

    #[test]
    fn batch_preserves_order() {
        let xs: Vec<_> = (2..300i64).map(|a| args(a, 1, a - 1)).collect();
        let seq = s3_batch(&xs, Exec::Sequential);
        assert_eq!(seq, s3_batch(&xs, Exec::Parallel));
        assert_eq!(seq[0], s3_fast(&xs[0]));
    }
}
