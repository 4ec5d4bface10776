//! `ffprime verify`: one line per checked invariant, PASS or FAIL with the
//! offending witness, exit code 3 when anything fails.

use std::process::ExitCode;

use ffprime::bipoly::BiPoly;
use ffprime::counting;
use ffprime::family::{self, FamilySpec};
use ffprime::poly::parse_poly;
use ffprime::rng::DetRng;
use ffprime::{Error as LibError, Field, Problem};

use crate::{CliError, VerifyCmd};

struct Checker {
    failed: bool,
}

impl Checker {
    fn new() -> Self {
        Checker { failed: false }
    }

    fn report(&mut self, ok: bool, name: &str, detail: String) {
        if ok {
            println!("PASS {} {}", name, detail);
        } else {
            self.failed = true;
            println!("FAIL {} {}", name, detail);
        }
    }

    fn finish(self) -> ExitCode {
        if self.failed {
            ExitCode::from(3)
        } else {
            ExitCode::SUCCESS
        }
    }
}

pub fn run(cmd: VerifyCmd) -> Result<ExitCode, CliError> {
    match cmd {
        VerifyCmd::Fibers {
            field,
            problem,
            n,
            budget,
        } => {
            let field = field.build()?;
            let fam = FamilySpec::new(problem, &field, n)?;
            let report = family::fiber_counts(&fam, budget.resolve())?;
            let mut ck = Checker::new();
            match report.first_violation() {
                None => ck.report(
                    true,
                    "fiber-constancy",
                    format!(
                        "problem={} q={} n={} fibers={} expected={}",
                        problem,
                        field.q(),
                        n,
                        report.per_g.len(),
                        report.expected
                    ),
                ),
                Some((g, got)) => ck.report(
                    false,
                    "fiber-constancy",
                    format!(
                        "problem={} q={} n={} g={} got={} expected={}",
                        problem,
                        field.q(),
                        n,
                        g,
                        got,
                        report.expected
                    ),
                ),
            }
            let expected_total = fam.pair_total().unwrap_or(u128::MAX);
            ck.report(
                report.total() == expected_total,
                "fiber-total",
                format!(
                    "problem={} q={} n={} total={} expected={}",
                    problem,
                    field.q(),
                    n,
                    report.total(),
                    expected_total
                ),
            );
            Ok(ck.finish())
        }
        VerifyCmd::FamilySize {
            field,
            problem,
            n,
            budget,
        } => {
            let field = field.build()?;
            let budget = budget.resolve();
            let fam = FamilySpec::new(problem, &field, n)?;
            let expected = fam.family_size().unwrap_or(u128::MAX);
            let mut ck = Checker::new();

            let mut enumerated: u128 = 0;
            let mut bad_member = None;
            for m in family::members(&fam, budget)? {
                if bad_member.is_none() && !family::is_member(&m, &fam) {
                    bad_member = Some(m.clone());
                }
                enumerated += 1;
            }
            ck.report(
                enumerated == expected,
                "family-size-enumerated",
                format!(
                    "problem={} q={} n={} size={} expected={}",
                    problem,
                    field.q(),
                    n,
                    enumerated,
                    expected
                ),
            );
            ck.report(
                bad_member.is_none(),
                "family-membership",
                match &bad_member {
                    None => format!(
                        "problem={} q={} n={} all enumerated members pass the membership test",
                        problem,
                        field.q(),
                        n
                    ),
                    Some(m) => format!("problem={} q={} n={} non-member {}", problem, field.q(), n, m),
                },
            );
            match family::member_count_by_filter(&fam, budget) {
                Ok(filtered) => ck.report(
                    filtered == expected,
                    "family-size-filtered",
                    format!(
                        "problem={} q={} n={} size={} expected={}",
                        problem,
                        field.q(),
                        n,
                        filtered,
                        expected
                    ),
                ),
                Err(LibError::BudgetExceeded { needed, budget }) => {
                    println!(
                        "SKIP family-size-filtered problem={} q={} n={} reason=budget needed={} budget={}",
                        problem,
                        field.q(),
                        n,
                        needed,
                        budget
                    );
                }
                Err(e) => return Err(e.into()),
            }
            Ok(ck.finish())
        }
        VerifyCmd::DoubleCount {
            field,
            problem,
            poly,
            a,
            n,
            budget,
        } => {
            let field = field.build()?;
            let budget = budget.resolve();
            let (input, n) = match problem {
                Problem::Goldbach => {
                    let text = poly
                        .ok_or_else(|| CliError::Usage("goldbach double-count requires --poly".into()))?;
                    let f = parse_poly(&text, &field)?;
                    let deg = f
                        .degree()
                        .finite()
                        .ok_or_else(|| CliError::Usage("--poly must be nonzero".into()))?
                        as u32;
                    if let Some(n) = n {
                        if n != deg {
                            return Err(CliError::Usage(format!(
                                "--n {} disagrees with deg F = {}",
                                n, deg
                            )));
                        }
                    }
                    (f, deg)
                }
                Problem::Twin => {
                    let text = a
                        .or(poly)
                        .ok_or_else(|| CliError::Usage("twin double-count requires --a".into()))?;
                    let n =
                        n.ok_or_else(|| CliError::Usage("twin double-count requires --n".into()))?;
                    (parse_poly(&text, &field)?, n)
                }
            };
            let fam = FamilySpec::new(problem, &field, n)?;
            let dc = family::double_count_check(&fam, &input, budget)?;
            let mut ck = Checker::new();
            ck.report(
                dc.lhs == dc.rhs,
                "double-count",
                format!(
                    "problem={} q={} n={} input={} lhs={} rhs={} fiber={}",
                    problem,
                    field.q(),
                    n,
                    input,
                    dc.lhs,
                    dc.rhs,
                    dc.fiber
                ),
            );
            let direct = match problem {
                Problem::Goldbach => counting::goldbach_count(&input, false, budget)?.count,
                Problem::Twin => counting::twin_count(&field, n, &input, false, budget)?.count,
            };
            ck.report(
                dc.lhs == dc.fiber * direct as u128,
                "count-consistency",
                format!(
                    "problem={} q={} n={} lhs/fiber={} direct={}",
                    problem,
                    field.q(),
                    n,
                    dc.lhs / dc.fiber.max(1),
                    direct
                ),
            );
            Ok(ck.finish())
        }
        VerifyCmd::DiscLocus { p, k, seed, trials } => run_disc_locus(p, k, seed, trials),
        VerifyCmd::Identities {
            field,
            problem,
            n,
            budget,
        } => {
            let field = field.build()?;
            let budget = budget.resolve();
            let mut ck = Checker::new();
            match problem {
                Problem::Goldbach => {
                    let (lhs, rhs) = counting::goldbach_sum_identity(&field, n, budget)?;
                    ck.report(
                        lhs == rhs,
                        "identity-goldbach-sum",
                        format!("q={} n={} lhs={} rhs={}", field.q(), n, lhs, rhs),
                    );
                }
                Problem::Twin => {
                    let (lhs, rhs) = counting::twin_sum_identity(&field, n, budget)?;
                    ck.report(
                        lhs == rhs,
                        "identity-twin-sum",
                        format!("q={} n={} lhs={} rhs={}", field.q(), n, lhs, rhs),
                    );
                }
            }
            Ok(ck.finish())
        }
    }
}

fn run_disc_locus(p: Option<u64>, k: u32, seed: u64, trials: u32) -> Result<ExitCode, CliError> {
    let mut ck = Checker::new();

    // Worked examples with known loci.
    let f5 = Field::prime(5)?;
    let f7 = Field::prime(7)?;
    let examples: [(&Field, Vec<Vec<u64>>, Vec<u64>, u64, &str); 3] = [
        (&f5, vec![vec![0, 4], vec![], vec![1]], vec![0], 3, "x^2-t over GF(5)"),
        (&f5, vec![vec![1], vec![], vec![1]], vec![], 0, "x^2+1 over GF(5)"),
        (
            &f7,
            vec![vec![0, 0, 6], vec![], vec![1]],
            vec![0],
            6,
            "x^2-t^2 over GF(7)",
        ),
    ];
    for (field, grid, roots, bound, label) in examples {
        let b = BiPoly::from_grid_encodings(field, &grid)?;
        let locus = family::disc_locus(&b)?;
        let got_roots: Vec<u64> = locus.roots.iter().map(|r| r.encoding()).collect();
        ck.report(
            got_roots == roots && locus.bound == bound,
            "disc-locus-example",
            format!(
                "input={} roots={:?} bound={} expected_roots={:?} expected_bound={}",
                label, got_roots, locus.bound, roots, bound
            ),
        );
    }

    // Random separable bivariates, monic in x.
    let fields: Vec<Field> = match p {
        Some(p) => vec![Field::new(p, k)?],
        None => vec![Field::prime(3)?, Field::prime(5)?, Field::prime(7)?],
    };
    let mut done = 0u32;
    let mut attempts = 0u64;
    let mut worst: Option<(String, usize, u64)> = None;
    while done < trials {
        attempts += 1;
        if attempts > 200 * trials as u64 + 1000 {
            return Err(CliError::Usage(
                "could not generate enough separable samples".into(),
            ));
        }
        let field = &fields[(attempts as usize) % fields.len()];
        let q = field.q();
        let mut rng = DetRng::keyed(&[seed, attempts]);
        let n = 2 + rng.below(3) as usize; // degree in x: 2..=4
        let m = 1 + rng.below(3) as usize; // degree in t: 1..=3
        let mut grid: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            if i == n {
                grid.push(vec![1]);
            } else {
                grid.push((0..=m).map(|_| rng.below(q)).collect());
            }
        }
        let bi = BiPoly::from_grid_encodings(field, &grid)?;
        let locus = match family::disc_locus(&bi) {
            Ok(l) => l,
            Err(LibError::Inseparable) => continue,
            Err(e) => return Err(e.into()),
        };
        let n_actual = bi.deg_x().finite().unwrap();
        let m_actual = bi.deg_t().finite().unwrap_or(0);
        let bound = ((2 * n_actual - 1) * m_actual) as u64;
        if locus.roots.len() as u64 > bound {
            ck.report(
                false,
                "disc-locus-random",
                format!(
                    "q={} input={} roots={} bound={}",
                    q,
                    bi,
                    locus.roots.len(),
                    bound
                ),
            );
            return Ok(ck.finish());
        }
        if worst
            .as_ref()
            .is_none_or(|(_, r, b)| (locus.roots.len() as i64 - *b as i64) > (*r as i64 - *b as i64))
        {
            worst = Some((format!("q={} {}", q, bi), locus.roots.len(), bound));
        }
        done += 1;
    }
    let (worst_label, worst_roots, worst_bound) =
        worst.unwrap_or((String::from("none"), 0, 0));
    ck.report(
        true,
        "disc-locus-random",
        format!(
            "trials={} seed={} tightest: {} roots={} bound={}",
            trials, seed, worst_label, worst_roots, worst_bound
        ),
    );
    Ok(ck.finish())
}
