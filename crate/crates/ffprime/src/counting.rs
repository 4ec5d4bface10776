//! Exact counting of the two additive patterns, the global sum identities
//! that constrain them, and deterministic comparison sweeps.
//!
//! The Goldbach counter enumerates monic irreducibles g of degree n-1 and
//! tests F - g (automatically monic of degree n) for irreducibility; the
//! twin counter enumerates monic irreducibles F of degree n and tests F + A.
//!
//! Two exhaustively checkable identities pin the counters down globally.
//! Summing the Goldbach count over every monic F of degree n counts ordered
//! pairs (g, h) of monic irreducibles with deg g = n-1, deg h = n, because
//! (F, g) <-> (g, F - g) is a bijection; so the total is pi(n-1) * pi(n).
//! Summing the twin count over every nonzero A of degree < n counts ordered
//! pairs of distinct monic irreducibles of degree n via (F, A) <-> (F, F+A),
//! giving pi(n)^2 - pi(n). Both are verified by brute force here, not
//! assumed.

use std::time::{Duration, Instant};

use num::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::heuristic;
use crate::irr;
use crate::poly::{Degree, Poly};
use crate::rng::DetRng;
use crate::Problem;

/// Result of one exact count.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub problem: Problem,
    pub field: Field,
    pub n: u32,
    /// F for Goldbach counts, A for twin counts.
    pub input: Poly,
    pub count: u64,
    /// The summands g (Goldbach) or the twin leaders F (twin), in enumeration
    /// order, when retention was requested.
    pub witnesses: Option<Vec<Poly>>,
    pub elapsed: Duration,
}

/// Number of ways to write the monic polynomial `f` of degree n as g + h
/// with g, h monic irreducible, deg g = n - 1 and deg h = n. Witnesses are
/// the summands g.
pub fn goldbach_count(f: &Poly, keep_witnesses: bool, budget: Budget) -> Result<CountReport> {
    let field = f.field().clone();
    let n = match f.degree() {
        Degree::Finite(n) if n >= 2 => n as u32,
        _ => {
            return Err(Error::InvalidParameter(
                "goldbach counting requires a polynomial of degree at least 2".into(),
            ))
        }
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let start = Instant::now();
    let mut count = 0u64;
    let mut witnesses = keep_witnesses.then(Vec::new);
    for g in irr::enumerate_monic_irreducible(&field, n - 1, budget)? {
        let h = f.sub(&g);
        debug_assert!(h.is_monic() && h.degree() == Degree::Finite(n as usize));
        if irr::is_irreducible(&h).expect("F - g is nonzero") {
            count += 1;
            if let Some(w) = &mut witnesses {
                w.push(g);
            }
        }
    }
    Ok(CountReport {
        problem: Problem::Goldbach,
        field,
        n,
        input: f.clone(),
        count,
        witnesses,
        elapsed: start.elapsed(),
    })
}

/// Variant that admits summands g of every degree 1..n-1 instead of exactly
/// n - 1. Kept out of all identities and sweeps; exposed for comparison only.
pub fn goldbach_count_loose(
    f: &Poly,
    keep_witnesses: bool,
    budget: Budget,
) -> Result<CountReport> {
    let field = f.field().clone();
    let n = match f.degree() {
        Degree::Finite(n) if n >= 2 => n as u32,
        _ => {
            return Err(Error::InvalidParameter(
                "goldbach counting requires a polynomial of degree at least 2".into(),
            ))
        }
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let q = field.q();
    let needed: u128 = (1..n).map(|d| arith::checked_pow_u128(q, d).unwrap_or(u128::MAX)).sum();
    budget.check(needed)?;
    let start = Instant::now();
    let mut count = 0u64;
    let mut witnesses = keep_witnesses.then(Vec::new);
    for d in 1..n {
        for g in irr::enumerate_monic_irreducible(&field, d, budget)? {
            let h = f.sub(&g);
            if irr::is_irreducible(&h).expect("F - g is nonzero") {
                count += 1;
                if let Some(w) = &mut witnesses {
                    w.push(g);
                }
            }
        }
    }
    Ok(CountReport {
        problem: Problem::Goldbach,
        field,
        n,
        input: f.clone(),
        count,
        witnesses,
        elapsed: start.elapsed(),
    })
}

/// Number of monic irreducible F of degree n over the field with F + A also
/// irreducible. A must be nonzero of degree < n. Witnesses are the leaders F.
pub fn twin_count(
    field: &Field,
    n: u32,
    a: &Poly,
    keep_witnesses: bool,
    budget: Budget,
) -> Result<CountReport> {
    assert!(a.field() == field, "gap polynomial over a different field");
    if n < 1 {
        return Err(Error::InvalidParameter(
            "twin counting requires degree at least 1".into(),
        ));
    }
    if a.is_zero() {
        return Err(Error::InvalidParameter("gap polynomial A must be nonzero".into()));
    }
    if a.degree() >= Degree::Finite(n as usize) {
        return Err(Error::InvalidParameter(format!(
            "gap polynomial A must have degree smaller than n = {}",
            n
        )));
    }
    let start = Instant::now();
    let mut count = 0u64;
    let mut witnesses = keep_witnesses.then(Vec::new);
    for f in irr::enumerate_monic_irreducible(field, n, budget)? {
        let shifted = f.add(a);
        debug_assert!(shifted.is_monic() && shifted.degree() == Degree::Finite(n as usize));
        if irr::is_irreducible(&shifted).expect("F + A is nonzero") {
            count += 1;
            if let Some(w) = &mut witnesses {
                w.push(f);
            }
        }
    }
    Ok(CountReport {
        problem: Problem::Twin,
        field: field.clone(),
        n,
        input: a.clone(),
        count,
        witnesses,
        elapsed: start.elapsed(),
    })
}

/// Brute-force check of the Goldbach sum identity: the left side sums the
/// count over all q^n monic F of degree n, the right side is
/// pi(n-1) * pi(n). The two sides are returned for the caller to compare.
pub fn goldbach_sum_identity(field: &Field, n: u32, budget: Budget) -> Result<(u128, u128)> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "goldbach identity requires n at least 2".into(),
        ));
    }
    let q = field.q();
    budget.check(arith::checked_pow_u128(q, n).unwrap_or(u128::MAX))?;
    let summands: Vec<Poly> = irr::enumerate_monic_irreducible(field, n - 1, budget)?.collect();
    let mut lhs: u128 = 0;
    for f in irr::enumerate_monic(field, n, budget)? {
        for g in &summands {
            let h = f.sub(g);
            if irr::is_irreducible(&h).expect("F - g is nonzero") {
                lhs += 1;
            }
        }
    }
    let rhs_big = irr::monic_irreducible_count(q, n - 1)? * irr::monic_irreducible_count(q, n)?;
    let rhs = rhs_big
        .to_u128()
        .expect("in-budget identity products fit u128");
    Ok((lhs, rhs))
}

/// Brute-force check of the twin sum identity: the left side sums the twin
/// count over all nonzero A of degree < n, the right side counts ordered
/// pairs of distinct monic irreducibles of degree n, pi(n)^2 - pi(n).
pub fn twin_sum_identity(field: &Field, n: u32, budget: Budget) -> Result<(u128, u128)> {
    if n < 1 {
        return Err(Error::InvalidParameter("twin identity requires n at least 1".into()));
    }
    let q = field.q();
    let total_a = arith::checked_pow_u128(q, n).unwrap_or(u128::MAX);
    budget.check(total_a)?;
    let leaders: Vec<Poly> = irr::enumerate_monic_irreducible(field, n, budget)?.collect();
    let mut lhs: u128 = 0;
    for enc in 1..total_a {
        let a = Poly::from_encoding(field, enc);
        for f in &leaders {
            let shifted = f.add(&a);
            if irr::is_irreducible(&shifted).expect("F + A is nonzero") {
                lhs += 1;
            }
        }
    }
    let pi_n = irr::monic_irreducible_count(q, n)?
        .to_u128()
        .expect("in-budget count fits u128");
    let rhs = pi_n * pi_n - pi_n;
    Ok((lhs, rhs))
}

/// How sweep inputs are chosen per field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Every admissible input: all monic F of degree n (Goldbach) or all
    /// nonzero A of degree < n (twin).
    All,
    /// `count` inputs drawn from a stream keyed by (seed, q, index); adding
    /// more fields or samples never reshuffles earlier draws.
    Random { count: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub problem: Problem,
    pub n: u32,
    pub q_list: Vec<u64>,
    pub sampling: Sampling,
    /// Singular-series truncation degree; None selects per input the least
    /// degree meeting the default relative error target.
    pub truncation: Option<u32>,
    pub budget: Budget,
}

/// One sweep row. Numeric fields are zero and `error` is set when the cell
/// failed; `ratio` is None when the heuristic prediction is zero (flagged
/// undefined) or the cell failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub problem: Problem,
    pub q: u64,
    pub n: u32,
    pub input: String,
    pub count: Option<u64>,
    pub main_term: f64,
    pub series_value: f64,
    pub series_err: f64,
    pub ratio: Option<f64>,
    pub err_t1: f64,
    pub err_t2: f64,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// Deduplicated, deterministically ordered notes (e.g. capped series
    /// truncation), suitable for a diagnostics channel.
    pub warnings: Vec<String>,
}

/// Runs a comparison sweep. Cells are independent and may be computed in
/// parallel (install a scoped rayon pool to control the worker count); rows
/// come back sorted by (q, input encoding) and are identical for any worker
/// count. Per-cell failures are recorded in the row, not raised.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    match cfg.problem {
        Problem::Goldbach if cfg.n < 2 => {
            return Err(Error::InvalidParameter(
                "goldbach sweeps require n at least 2".into(),
            ))
        }
        Problem::Twin if cfg.n < 1 => {
            return Err(Error::InvalidParameter("twin sweeps require n at least 1".into()))
        }
        _ => {}
    }

    struct Cell {
        q: u64,
        field: Field,
        encoding: u128,
    }

    let mut cells: Vec<Cell> = Vec::new();
    let mut error_rows: Vec<(u64, u128, SweepRow)> = Vec::new();
    for &q in &cfg.q_list {
        let field = match Field::from_order(q) {
            Ok(f) => f,
            Err(e) => {
                error_rows.push((q, 0, error_row(cfg, q, String::new(), e.to_string())));
                continue;
            }
        };
        let space = arith::checked_pow_u128(q, cfg.n).unwrap_or(u128::MAX);
        let (lo, hi) = match cfg.problem {
            Problem::Goldbach => (0u128, space),
            Problem::Twin => (1u128, space),
        };
        match cfg.sampling {
            Sampling::All => {
                if let Err(e) = cfg.budget.check(hi - lo) {
                    error_rows.push((q, 0, error_row(cfg, q, String::new(), e.to_string())));
                    continue;
                }
                for enc in lo..hi {
                    cells.push(Cell {
                        q,
                        field: field.clone(),
                        encoding: enc,
                    });
                }
            }
            Sampling::Random { count, seed } => {
                for i in 0..count {
                    let mut rng = DetRng::keyed(&[seed, q, i]);
                    let enc = lo + rng.below_u128(hi - lo);
                    cells.push(Cell {
                        q,
                        field: field.clone(),
                        encoding: enc,
                    });
                }
            }
        }
    }

    let mut keyed: Vec<(u64, u128, SweepRow)> = cells
        .par_iter()
        .map(|cell| {
            let row = run_cell(cfg, &cell.field, cell.encoding);
            (cell.q, cell.encoding, row)
        })
        .collect();
    keyed.extend(error_rows);
    keyed.sort_by_key(|a| (a.0, a.1));

    let mut warnings: Vec<String> = Vec::new();
    if cfg.truncation.is_none() {
        let mut capped: Vec<u64> = keyed
            .iter()
            .filter(|(_, _, row)| {
                row.error.is_none()
                    && !row.series_value.is_nan()
                    && row.series_err > 0.0
                    && row.series_err >= heuristic::SERIES_RELATIVE_TARGET * row.series_value.abs()
            })
            .map(|(q, _, _)| *q)
            .collect();
        capped.sort_unstable();
        capped.dedup();
        for q in capped {
            warnings.push(format!(
                "singular series truncation capped at degree {} for q={} before reaching relative error {:e}",
                heuristic::SERIES_MAX_TRUNCATION,
                q,
                heuristic::SERIES_RELATIVE_TARGET
            ));
        }
    }

    Ok(SweepOutput {
        rows: keyed.into_iter().map(|(_, _, row)| row).collect(),
        warnings,
    })
}

fn error_row(cfg: &SweepConfig, q: u64, input: String, msg: String) -> SweepRow {
    SweepRow {
        problem: cfg.problem,
        q,
        n: cfg.n,
        input,
        count: None,
        main_term: 0.0,
        series_value: 0.0,
        series_err: 0.0,
        ratio: None,
        err_t1: 0.0,
        err_t2: 0.0,
        elapsed_ms: 0,
        error: Some(msg),
    }
}

fn run_cell(cfg: &SweepConfig, field: &Field, encoding: u128) -> SweepRow {
    let input = match cfg.problem {
        Problem::Goldbach => Poly::monic_from_index(field, cfg.n, encoding),
        Problem::Twin => Poly::from_encoding(field, encoding),
    };
    let input_text = input.to_string();
    let start = Instant::now();
    let outcome = (|| -> Result<(u64, heuristic::Comparison)> {
        let report = match cfg.problem {
            Problem::Goldbach => goldbach_count(&input, false, cfg.budget)?,
            Problem::Twin => twin_count(field, cfg.n, &input, false, cfg.budget)?,
        };
        let d = match cfg.truncation {
            Some(d) => d,
            None => heuristic::auto_truncation(cfg.problem, &input)?,
        };
        let cmp = heuristic::compare(&report, d)?;
        Ok((report.count, cmp))
    })();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok((count, cmp)) => SweepRow {
            problem: cfg.problem,
            q: field.q(),
            n: cfg.n,
            input: input_text,
            count: Some(count),
            main_term: cmp.main_term,
            series_value: cmp.series.value,
            series_err: cmp.series.err_bound,
            ratio: cmp.ratio,
            err_t1: cmp.bounds.term1,
            err_t2: cmp.bounds.term2,
            elapsed_ms,
            error: None,
        },
        Err(e) => {
            let mut row = error_row(cfg, field.q(), input_text, e.to_string());
            row.elapsed_ms = elapsed_ms;
            row
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(text: &str, field: &Field) -> Poly {
        parse_poly(text, field).unwrap()
    }

    #[test]
    fn goldbach_examples() {
        let f3 = gf(3);
        let report = goldbach_count(&poly("t^2", &f3), true, Budget::default()).unwrap();
        assert_eq!(report.count, 1);
        let witnesses = report.witnesses.unwrap();
        assert_eq!(witnesses, vec![poly("t+1", &f3)]);
        assert_eq!(poly("t^2", &f3).sub(&witnesses[0]), poly("t^2+2t+2", &f3));

        let f2 = gf(2);
        let report = goldbach_count(&poly("t^2+t+1", &f2), false, Budget::default()).unwrap();
        assert_eq!(report.count, 0);

        let report = goldbach_count(&poly("t^3", &f3), true, Budget::default()).unwrap();
        assert_eq!(report.count, 1);
        let witnesses = report.witnesses.unwrap();
        assert_eq!(witnesses, vec![poly("t^2+2t+2", &f3)]);
        // the matching cofactor
        let cofactor = poly("t^3", &f3).sub(&witnesses[0]);
        assert_eq!(cofactor, poly("t^3+2t^2+t+1", &f3));
        assert!(irr::is_irreducible(&cofactor).unwrap());
    }

    #[test]
    fn goldbach_preconditions() {
        let f3 = gf(3);
        assert!(matches!(
            goldbach_count(&poly("t", &f3), false, Budget::default()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            goldbach_count(&poly("2t^2", &f3), false, Budget::default()),
            Err(Error::NotMonic)
        ));
        assert!(matches!(
            goldbach_count(&poly("t^9+1", &f3), false, Budget(10)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn loose_mode_counts_lower_degree_summands() {
        let f3 = gf(3);
        // strict count for t^3 is 1; loose mode also admits linear g
        let strict = goldbach_count(&poly("t^3", &f3), false, Budget::default()).unwrap();
        let loose = goldbach_count_loose(&poly("t^3", &f3), true, Budget::default()).unwrap();
        assert!(loose.count >= strict.count);
        for g in loose.witnesses.unwrap() {
            assert!(irr::is_irreducible(&g).unwrap());
            let h = poly("t^3", &f3).sub(&g);
            assert!(h.is_monic());
            assert!(irr::is_irreducible(&h).unwrap());
        }
    }

    #[test]
    fn twin_examples() {
        let f3 = gf(3);
        let one = poly("1", &f3);
        let report = twin_count(&f3, 1, &one, false, Budget::default()).unwrap();
        assert_eq!(report.count, 3);

        let report = twin_count(&f3, 2, &one, false, Budget::default()).unwrap();
        assert_eq!(report.count, 0);

        let report = twin_count(&f3, 2, &poly("t", &f3), true, Budget::default()).unwrap();
        assert_eq!(report.count, 1);
        assert_eq!(report.witnesses.unwrap(), vec![poly("t^2+t+2", &f3)]);
    }

    #[test]
    fn twin_preconditions() {
        let f3 = gf(3);
        assert!(twin_count(&f3, 2, &Poly::zero(&f3), false, Budget::default()).is_err());
        assert!(twin_count(&f3, 1, &poly("t", &f3), false, Budget::default()).is_err());
        assert!(twin_count(&f3, 0, &poly("1", &f3), false, Budget::default()).is_err());
    }

    #[test]
    fn goldbach_identity_examples() {
        let f3 = gf(3);
        assert_eq!(goldbach_sum_identity(&f3, 2, Budget::default()).unwrap(), (9, 9));
        assert_eq!(
            goldbach_sum_identity(&f3, 3, Budget::default()).unwrap(),
            (24, 24)
        );
        let f5 = gf(5);
        // 25 monic quadratics, each with (5-1)/2 = 2 representations, and
        // pi(1) * pi(2) = 5 * 10
        assert_eq!(
            goldbach_sum_identity(&f5, 2, Budget::default()).unwrap(),
            (50, 50)
        );
    }

    #[test]
    fn twin_identity_examples() {
        let f3 = gf(3);
        assert_eq!(twin_sum_identity(&f3, 2, Budget::default()).unwrap(), (6, 6));
        assert_eq!(twin_sum_identity(&f3, 1, Budget::default()).unwrap(), (6, 6));
        let f5 = gf(5);
        assert_eq!(twin_sum_identity(&f5, 2, Budget::default()).unwrap(), (90, 90));
    }

    #[test]
    fn twin_symmetry_under_negation() {
        for q in [3u64, 5] {
            let field = gf(q);
            for n in [2u32, 3] {
                let space = (q as u128).pow(n);
                for enc in 1..space {
                    let a = Poly::from_encoding(&field, enc);
                    let neg = a.neg();
                    let c1 = twin_count(&field, n, &a, false, Budget::default())
                        .unwrap()
                        .count;
                    let c2 = twin_count(&field, n, &neg, false, Budget::default())
                        .unwrap()
                        .count;
                    assert_eq!(c1, c2, "q={} n={} A={}", q, n, a);
                }
            }
        }
    }

    #[test]
    fn sweep_rows_are_sorted_and_complete() {
        let cfg = SweepConfig {
            problem: Problem::Goldbach,
            n: 2,
            q_list: vec![5, 3],
            sampling: Sampling::All,
            truncation: Some(4),
            budget: Budget::default(),
        };
        let out = sweep(&cfg).unwrap();
        assert_eq!(out.rows.len(), 9 + 25);
        let keys: Vec<(u64, String)> = out
            .rows
            .iter()
            .map(|r| (r.q, r.input.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                let fa = Field::from_order(a.0).unwrap();
                parse_poly(&a.1, &fa)
                    .unwrap()
                    .encoding()
                    .cmp(&parse_poly(&b.1, &fa).unwrap().encoding())
            })
        });
        assert_eq!(keys, sorted);
        for row in &out.rows {
            assert!(row.error.is_none());
            assert!(row.ratio.is_some());
            assert_eq!(row.count.unwrap(), (row.q - 1) / 2);
        }
    }

    #[test]
    fn sweep_random_sampling_is_stable_under_extension() {
        let base = SweepConfig {
            problem: Problem::Twin,
            n: 2,
            q_list: vec![3, 5],
            sampling: Sampling::Random { count: 4, seed: 9 },
            truncation: Some(3),
            budget: Budget::default(),
        };
        let mut extended = base.clone();
        extended.q_list = vec![3, 5, 7];
        let rows_base = sweep(&base).unwrap().rows;
        let rows_ext = sweep(&extended).unwrap().rows;
        // rows for q=3 and q=5 are unchanged when q=7 is appended
        assert_eq!(&rows_ext[..rows_base.len()], &rows_base[..]);
    }

    #[test]
    fn sweep_empty_and_error_cells() {
        let empty = SweepConfig {
            problem: Problem::Goldbach,
            n: 2,
            q_list: vec![],
            sampling: Sampling::All,
            truncation: None,
            budget: Budget::default(),
        };
        assert!(sweep(&empty).unwrap().rows.is_empty());

        let bad_q = SweepConfig {
            problem: Problem::Goldbach,
            n: 2,
            q_list: vec![6],
            sampling: Sampling::All,
            truncation: None,
            budget: Budget::default(),
        };
        let out = sweep(&bad_q).unwrap();
        assert_eq!(out.rows.len(), 1);
        assert!(out.rows[0].error.is_some());
        assert!(out.rows[0].count.is_none());
    }

    #[test]
    fn witnesses_verify_by_trial_division() {
        // independent check: trial-divide each witness and its partner by
        // every monic polynomial of degree up to half its own
        fn trial_irreducible(f: &Poly) -> bool {
            let d = f.degree().finite().unwrap();
            if d == 0 {
                return false;
            }
            for dd in 1..=d / 2 {
                for g in irr::enumerate_monic(f.field(), dd as u32, Budget::default()).unwrap() {
                    if f.rem(&g).unwrap().is_zero() {
                        return false;
                    }
                }
            }
            true
        }
        let f5 = gf(5);
        let report = goldbach_count(&poly("t^3+2t+1", &f5), true, Budget::default()).unwrap();
        let f = poly("t^3+2t+1", &f5);
        for g in report.witnesses.unwrap() {
            assert!(trial_irreducible(&g));
            assert!(trial_irreducible(&f.sub(&g)));
        }
        let report = twin_count(&f5, 2, &poly("t", &f5), true, Budget::default()).unwrap();
        for w in report.witnesses.unwrap() {
            assert!(trial_irreducible(&w));
            assert!(trial_irreducible(&w.add(&poly("t", &f5))));
        }
    }
}
