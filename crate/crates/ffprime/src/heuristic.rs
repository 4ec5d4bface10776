//! Heuristic main terms, singular-series products with rigorous truncation
//! error bounds, and the explicit error-bound expressions the exact counts
//! are measured against.
//!
//! The predicted density for both patterns has the shape
//!
//! ```text
//!   main(n, q) * prod_{P | input} (1 - 1/|P|)^(-1)
//!              * prod_{P not | input} (1 - 1/(|P| - 1)^2)
//! ```
//!
//! with P running over monic irreducibles and |P| = q^(deg P). The main term
//! is q^(n-1)/(n(n-1)) for Goldbach counts and q^n/n^2 for twin counts. The
//! first product is finite and computed exactly from the factorization of
//! the input; the second is truncated at a degree D with a proven bound on
//! the omitted tail, see [`singular_series`].

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{BigUint, One, ToPrimitive, Zero};

use crate::counting::CountReport;
use crate::error::{Error, Result};
use crate::irr;
use crate::poly::{Degree, Poly};
use crate::Problem;

/// Relative error target used when the truncation degree is chosen
/// automatically.
pub const SERIES_RELATIVE_TARGET: f64 = 1e-12;

/// Hard cap on automatically chosen truncation degrees.
pub const SERIES_MAX_TRUNCATION: u32 = 20;

/// The exact rational main term: q^(n-1)/(n(n-1)) for Goldbach, q^n/n^2 for
/// twin counts.
pub fn main_term(problem: Problem, n: u32, q: u64) -> Result<BigRational> {
    match problem {
        Problem::Goldbach => {
            if n < 2 {
                return Err(Error::InvalidParameter(
                    "goldbach main term requires n at least 2".into(),
                ));
            }
            let num = BigInt::from(q).pow(n - 1);
            let den = BigInt::from(n as u64) * BigInt::from(n as u64 - 1);
            Ok(BigRational::new(num, den))
        }
        Problem::Twin => {
            if n < 1 {
                return Err(Error::InvalidParameter(
                    "twin main term requires n at least 1".into(),
                ));
            }
            let num = BigInt::from(q).pow(n);
            let den = BigInt::from(n as u64) * BigInt::from(n as u64);
            Ok(BigRational::new(num, den))
        }
    }
}

/// A truncated singular-series evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub truncation_degree: u32,
    /// Rigorous bound on |value - untruncated product|; zero when the
    /// product contains an exactly vanishing factor.
    pub err_bound: f64,
    /// Set when some factor is exactly zero (only possible for q = 2, where
    /// a degree-1 irreducible not dividing the input contributes
    /// 1 - 1/(2-1)^2 = 0).
    pub zero_flag: bool,
}

/// Evaluates the singular series for the input polynomial (F for Goldbach,
/// A for twin counts), truncating the product over non-divisors at degree
/// `truncation`.
///
/// The factors over P dividing the input are taken over the distinct
/// irreducible factors, at every degree, and are exact. For the truncated
/// part only the factor count per degree matters, since the factor value
/// depends only on |P|.
///
/// Tail bound: the omitted factors multiply the value by
/// prod (1 - 1/(q^d - 1)^2) over irreducibles of degree d > D not dividing
/// the input. With pi_q(d) <= q^d/d and -ln(1 - x) <= x/(1 - x),
///
/// ```text
///   sum_{d > D} pi_q(d) |ln(1 - 1/(q^d-1)^2)|
///     <= sum_{d > D} (q^d/d) * 3/q^(2d)          (valid once q^d >= 3)
///     <= (3/(D+1)) * q^(-D) / (q - 1) =: S,
/// ```
///
/// so the value moves by at most value * (e^S - 1) under any refinement, and
/// S also dominates the omitted log-mass itself. The returned bound is
/// (1 + value) * (e^S - 1), which covers both. It decreases strictly in D
/// and geometrically (faster than 2/q per step).
pub fn singular_series(problem: Problem, input: &Poly, truncation: u32) -> Result<SeriesValue> {
    if truncation < 1 {
        return Err(Error::InvalidParameter(
            "truncation degree must be at least 1".into(),
        ));
    }
    if input.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if problem == Problem::Goldbach {
        if !input.is_monic() {
            return Err(Error::NotMonic);
        }
        if input.degree() < Degree::Finite(1) {
            return Err(Error::InvalidParameter(
                "goldbach series input must be nonconstant".into(),
            ));
        }
    }
    let field = input.field();
    let q = field.q();
    let qf = q as f64;

    let factorization = irr::factorize(input)?;
    let mut divisor_degrees: Vec<usize> = factorization.distinct_degrees();
    divisor_degrees.sort_unstable();

    // Exact finite product over the distinct irreducible divisors.
    let mut divisor_product = 1.0f64;
    for &d in &divisor_degrees {
        let pabs = qf.powi(d as i32);
        divisor_product *= pabs / (pabs - 1.0);
    }

    // Truncated product over non-divisors, accumulated in log space in a
    // fixed degree order so results are bit-stable.
    let mut log_tail = 0.0f64;
    let mut zero_flag = false;
    for d in 1..=truncation {
        let pi_d = irr::monic_irreducible_count(q, d)?;
        let dividing = divisor_degrees.iter().filter(|&&dd| dd == d as usize).count();
        let cnt = &pi_d - BigUint::from(dividing);
        if cnt.is_zero() {
            continue;
        }
        let qd = qf.powi(d as i32);
        let x = ((qd - 1.0) * (qd - 1.0)).recip();
        if x >= 1.0 {
            // q = 2, d = 1: the factor is exactly zero
            zero_flag = true;
            break;
        }
        if x == 0.0 {
            continue; // factor indistinguishable from 1 at f64 scale
        }
        let cnt_f = cnt.to_f64().unwrap_or(f64::INFINITY);
        log_tail += cnt_f * (-x).ln_1p();
    }

    if zero_flag {
        return Ok(SeriesValue {
            value: 0.0,
            truncation_degree: truncation,
            err_bound: 0.0,
            zero_flag: true,
        });
    }

    let value = divisor_product * log_tail.exp();
    let s = 3.0 * qf.powi(-(truncation as i32)) / ((truncation as f64 + 1.0) * (qf - 1.0));
    let err_bound = (1.0 + value) * s.exp_m1();
    Ok(SeriesValue {
        value,
        truncation_degree: truncation,
        err_bound,
        zero_flag: false,
    })
}

/// The least truncation degree whose error bound meets the relative target,
/// capped at [`SERIES_MAX_TRUNCATION`].
pub fn auto_truncation(problem: Problem, input: &Poly) -> Result<u32> {
    for d in 1..=SERIES_MAX_TRUNCATION {
        let v = singular_series(problem, input, d)?;
        if v.zero_flag || v.err_bound < SERIES_RELATIVE_TARGET * v.value.abs() {
            return Ok(d);
        }
    }
    Ok(SERIES_MAX_TRUNCATION)
}

/// The two error-bound expressions attached to the asymptotic count, with
/// the (unspecified) absolute constants set to 1, plus the exact integer
/// ingredients they are built from. These are reported magnitudes for
/// orientation, never pass/fail gates.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub problem: Problem,
    pub n: u32,
    pub q: u64,
    /// (n-1)! n! for Goldbach, (n!)^2 for twin counts; the degree of the
    /// splitting-field extension behind the bound.
    pub factorial_product: BigUint,
    /// 1 + factorial_product * (n^2 - 2n) for Goldbach,
    /// 1 + factorial_product * (n^2 - n - 1) for twin counts.
    pub genus: BigUint,
    /// factorial_product * q^(n - 3/2) (Goldbach) or * q^(n - 1/2) (twin).
    pub term1: f64,
    /// n * 2^C(n+2,2) * q^(n-2) (Goldbach) or * q^(n-1) (twin).
    pub term2: f64,
}

fn factorial(n: u32) -> BigUint {
    (1..=n as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

pub fn error_bound_terms(problem: Problem, n: u32, q: u64) -> Result<BoundReport> {
    let qf = q as f64;
    let (factorial_product, genus_shift, term1, term2) = match problem {
        Problem::Goldbach => {
            if n < 2 {
                return Err(Error::InvalidParameter(
                    "goldbach bounds require n at least 2".into(),
                ));
            }
            let fp = factorial(n - 1) * factorial(n);
            let shift = BigInt::from(n as i64) * BigInt::from(n as i64) - BigInt::from(2 * n as i64);
            let t1 = fp.to_f64().unwrap_or(f64::INFINITY) * qf.powf(n as f64 - 1.5);
            let t2 = n as f64 * 2f64.powi(binom2(n + 2) as i32) * qf.powf(n as f64 - 2.0);
            (fp, shift, t1, t2)
        }
        Problem::Twin => {
            if n < 1 {
                return Err(Error::InvalidParameter(
                    "twin bounds require n at least 1".into(),
                ));
            }
            let nf = factorial(n);
            let fp = &nf * &nf;
            let shift =
                BigInt::from(n as i64) * BigInt::from(n as i64) - BigInt::from(n as i64) - BigInt::one();
            let t1 = fp.to_f64().unwrap_or(f64::INFINITY) * qf.powf(n as f64 - 0.5);
            let t2 = n as f64 * 2f64.powi(binom2(n + 2) as i32) * qf.powf(n as f64 - 1.0);
            (fp, shift, t1, t2)
        }
    };
    let genus_signed = BigInt::one() + BigInt::from_biguint(Sign::Plus, factorial_product.clone()) * genus_shift;
    let genus = genus_signed
        .to_biguint()
        .expect("genus formulas are nonnegative for admissible n");
    Ok(BoundReport {
        problem,
        n,
        q,
        factorial_product,
        genus,
        term1,
        term2,
    })
}

/// C(m, 2) as a u32; the exponent in the second error term.
fn binom2(m: u32) -> u32 {
    m * (m - 1) / 2
}

/// An exact count set against its heuristic prediction.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub count: u64,
    pub main_exact: BigRational,
    pub main_term: f64,
    pub series: SeriesValue,
    /// main_term * series value.
    pub predicted: f64,
    /// count / predicted; None (flagged undefined) when predicted is zero.
    pub ratio: Option<f64>,
    pub bounds: BoundReport,
}

/// Builds the comparison row for a finished count at truncation degree `d`.
pub fn compare(report: &CountReport, d: u32) -> Result<Comparison> {
    let q = report.field.q();
    let main_exact = main_term(report.problem, report.n, q)?;
    let main_f = main_exact.to_f64().unwrap_or(f64::INFINITY);
    let series = singular_series(report.problem, &report.input, d)?;
    let predicted = main_f * series.value;
    let ratio = if predicted == 0.0 {
        None
    } else {
        Some(report.count as f64 / predicted)
    };
    let bounds = error_bound_terms(report.problem, report.n, q)?;
    Ok(Comparison {
        count: report.count,
        main_exact,
        main_term: main_f,
        series,
        predicted,
        ratio,
        bounds,
    })
}
