//! Report serialization: the fixed-schema CSV sweep table, JSON mirrors of
//! reports, and the key=value text forms.
//!
//! Output is byte-reproducible for a fixed run configuration: wall-clock
//! timings are zeroed unless explicitly requested.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use ffprime::counting::{CountReport, SweepRow};
use ffprime::heuristic::Comparison;
use ffprime::Problem;

/// Exact column set of the sweep CSV, in order.
pub const SWEEP_CSV_HEADER: [&str; 12] = [
    "problem",
    "q",
    "n",
    "input",
    "count",
    "main_term",
    "series_value",
    "series_err",
    "ratio",
    "err_t1",
    "err_t2",
    "elapsed_ms",
];

pub fn write_sweep_csv<W: Write>(w: W, rows: &[SweepRow], timing: bool) -> io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(SWEEP_CSV_HEADER)?;
    for row in rows {
        let failed = row.error.is_some();
        let num = |v: f64| {
            if failed {
                String::new()
            } else {
                format!("{}", v)
            }
        };
        let count = match row.count {
            Some(c) => c.to_string(),
            None => "NA".to_string(),
        };
        let ratio = match row.ratio {
            Some(r) => format!("{}", r),
            None if failed => String::new(),
            None => "NA".to_string(),
        };
        let elapsed = if timing { row.elapsed_ms } else { 0 };
        wtr.write_record(&[
            row.problem.to_string(),
            row.q.to_string(),
            row.n.to_string(),
            row.input.clone(),
            count,
            num(row.main_term),
            num(row.series_value),
            num(row.series_err),
            ratio,
            num(row.err_t1),
            num(row.err_t2),
            elapsed.to_string(),
        ])?;
    }
    wtr.flush()
}

pub fn write_sweep_json<W: Write>(w: &mut W, rows: &[SweepRow], timing: bool) -> io::Result<()> {
    let rows: Vec<SweepRow> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            if !timing {
                r.elapsed_ms = 0;
            }
            r
        })
        .collect();
    serde_json::to_writer_pretty(&mut *w, &rows)?;
    writeln!(w)
}

/// Flat JSON mirror of a count report.
#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct CountReportJson {
    pub problem: Problem,
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub n: u32,
    pub input: String,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witnesses: Option<Vec<String>>,
    pub elapsed_ms: u64,
}

impl CountReportJson {
    pub fn from_report(report: &CountReport, timing: bool) -> Self {
        CountReportJson {
            problem: report.problem,
            p: report.field.p(),
            k: report.field.k(),
            q: report.field.q(),
            n: report.n,
            input: report.input.to_string(),
            count: report.count,
            witnesses: report
                .witnesses
                .as_ref()
                .map(|ws| ws.iter().map(|w| w.to_string()).collect()),
            elapsed_ms: if timing {
                report.elapsed.as_millis() as u64
            } else {
                0
            },
        }
    }
}

pub fn write_count_text<W: Write>(w: &mut W, report: &CountReport) -> io::Result<()> {
    let input_key = match report.problem {
        Problem::Goldbach => "F",
        Problem::Twin => "A",
    };
    writeln!(
        w,
        "problem={} q={} n={} {}={} count={}",
        report.problem,
        report.field.q(),
        report.n,
        input_key,
        report.input,
        report.count
    )?;
    if let Some(ws) = &report.witnesses {
        for witness in ws {
            writeln!(w, "witness={}", witness)?;
        }
    }
    Ok(())
}

pub fn write_count_json<W: Write>(w: &mut W, report: &CountReport, timing: bool) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, &CountReportJson::from_report(report, timing))?;
    writeln!(w)
}

/// Heuristic evaluation in key=value form. Series values carry 15
/// significant digits next to their rigorous error bound.
pub fn write_heuristic_text<W: Write>(
    w: &mut W,
    problem: Problem,
    q: u64,
    n: u32,
    input: Option<&str>,
    cmp: &Comparison,
    with_count: bool,
) -> io::Result<()> {
    match input {
        Some(text) => writeln!(w, "problem={} q={} n={} input={}", problem, q, n, text)?,
        None => writeln!(w, "problem={} q={} n={}", problem, q, n)?,
    }
    writeln!(w, "main_term={}", cmp.main_exact)?;
    writeln!(w, "main_term_f64={}", cmp.main_term)?;
    if input.is_some() {
        writeln!(w, "series_value={:.14e}", cmp.series.value)?;
        writeln!(w, "series_err_bound={:.14e}", cmp.series.err_bound)?;
        writeln!(w, "series_trunc_degree={}", cmp.series.truncation_degree)?;
        writeln!(w, "series_zero_flag={}", cmp.series.zero_flag)?;
        writeln!(w, "predicted={}", cmp.predicted)?;
    }
    writeln!(w, "factorial_product={}", cmp.bounds.factorial_product)?;
    writeln!(w, "genus={}", cmp.bounds.genus)?;
    writeln!(w, "err_term1={}", cmp.bounds.term1)?;
    writeln!(w, "err_term2={}", cmp.bounds.term2)?;
    if with_count {
        writeln!(w, "count={}", cmp.count)?;
        match cmp.ratio {
            Some(r) => writeln!(w, "ratio={}", r)?,
            None => writeln!(w, "ratio=NA")?,
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize, Debug)]
pub struct HeuristicJson {
    pub problem: Problem,
    pub q: u64,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input: Option<String>,
    pub main_term: String,
    pub main_term_f64: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub series_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub series_err_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub series_trunc_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub series_zero_flag: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted: Option<f64>,
    pub factorial_product: String,
    pub genus: String,
    pub err_term1: f64,
    pub err_term2: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<f64>,
}

pub fn write_heuristic_json<W: Write>(
    w: &mut W,
    problem: Problem,
    q: u64,
    n: u32,
    input: Option<&str>,
    cmp: &Comparison,
    with_count: bool,
) -> io::Result<()> {
    let body = HeuristicJson {
        problem,
        q,
        n,
        input: input.map(|s| s.to_string()),
        main_term: cmp.main_exact.to_string(),
        main_term_f64: cmp.main_term,
        series_value: input.map(|_| cmp.series.value),
        series_err_bound: input.map(|_| cmp.series.err_bound),
        series_trunc_degree: input.map(|_| cmp.series.truncation_degree),
        series_zero_flag: input.map(|_| cmp.series.zero_flag),
        predicted: input.map(|_| cmp.predicted),
        factorial_product: cmp.bounds.factorial_product.to_string(),
        genus: cmp.bounds.genus.to_string(),
        err_term1: cmp.bounds.term1,
        err_term2: cmp.bounds.term2,
        count: with_count.then_some(cmp.count),
        ratio: if with_count { cmp.ratio } else { None },
    };
    serde_json::to_writer_pretty(&mut *w, &body)?;
    writeln!(w)
}
