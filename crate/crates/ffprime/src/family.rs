//! The family of bivariate polynomials behind the counting arguments, and
//! the combinatorial checks it supports.
//!
//! For a target degree d, the family consists of the f(x, t) of total degree
//! d whose shift specialization f(t+b, t) is monic of degree d in t for
//! every b in the field. Writing f = sum_i c_i(x) t^i, membership forces
//! deg c_i <= d - i, and the t^d coefficient of f(t+b, t) equals the sum of
//! the top coefficients of the c_i independently of b; so the family is cut
//! out by one linear equation (that sum = 1) on C(d+2, 2) coefficients, and
//! its size is q^I with I = C(d+2, 2) - 1. Goldbach counting uses d = n - 1
//! (so I = C(n+1, 2) - 1), twin counting d = n (I = C(n+2, 2) - 1).
//!
//! Fibers of the specialization map are constant: for fixed b and a monic
//! target g of degree d, the free coefficients c_1..c_d determine a unique
//! completing c_0(x) = g(x-b) - sum_{i>=1} c_i(x) (x-b)^i, which gives
//! exactly q^(I+1-d) pairs (f, b) specializing to each g. Both facts are
//! verified here by exhaustive enumeration, not assumed.

use std::fmt;

use crate::arith;
use crate::bipoly::BiPoly;
use crate::budget::Budget;
use crate::counting;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::irr;
use crate::poly::{Degree, Poly};
use crate::Problem;

/// Parameters of one shift family.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub problem: Problem,
    pub field: Field,
    /// Degree of the counting target: deg F for Goldbach, the twin degree n.
    pub n: u32,
    /// Total degree of family members (n - 1 for Goldbach, n for twin).
    pub d: u32,
    /// Number of free coefficients; the family has q^free_dim members.
    pub free_dim: u32,
}

impl FamilySpec {
    pub fn new(problem: Problem, field: &Field, n: u32) -> Result<FamilySpec> {
        let d = match problem {
            Problem::Goldbach => {
                if n < 2 {
                    return Err(Error::InvalidParameter(
                        "goldbach families require n at least 2".into(),
                    ));
                }
                n - 1
            }
            Problem::Twin => {
                if n < 1 {
                    return Err(Error::InvalidParameter(
                        "twin families require n at least 1".into(),
                    ));
                }
                n
            }
        };
        if d > 1000 {
            return Err(Error::InvalidParameter("family degree too large".into()));
        }
        // C(d+2, 2) - 1 free coefficients after the one linear constraint
        let free_dim = (d + 1) * (d + 2) / 2 - 1;
        Ok(FamilySpec {
            problem,
            field: field.clone(),
            n,
            d,
            free_dim,
        })
    }

    /// q^free_dim, None on overflow.
    pub fn family_size(&self) -> Option<u128> {
        arith::checked_pow_u128(self.field.q(), self.free_dim)
    }

    /// Total number of (member, shift) pairs, q^(free_dim + 1).
    pub fn pair_total(&self) -> Option<u128> {
        arith::checked_pow_u128(self.field.q(), self.free_dim + 1)
    }

    /// The common fiber size q^(free_dim + 1 - d).
    pub fn expected_fiber(&self) -> Option<u128> {
        arith::checked_pow_u128(self.field.q(), self.free_dim + 1 - self.d)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "family(problem={}, q={}, n={}, d={}, free_dim={})",
            self.problem,
            self.field.q(),
            self.n,
            self.d,
            self.free_dim
        )
    }
}

/// Membership test straight from the definition: total degree equals d and
/// every shift specialization is monic of degree d.
pub fn is_member(f: &BiPoly, fam: &FamilySpec) -> bool {
    assert!(f.field() == &fam.field, "member over a different field");
    if f.total_degree() != Degree::Finite(fam.d as usize) {
        return false;
    }
    fam.field.elems().all(|b| {
        let s = f.specialize_shift(b);
        s.degree() == Degree::Finite(fam.d as usize) && s.is_monic()
    })
}

/// Completes free coefficient polynomials c_1..c_d (each with
/// deg c_i <= d - i) to the unique family member through (b, g):
/// c_0(x) = g(x - b) - sum_i c_i(x) (x - b)^i, f = sum_i c_i(x) t^i.
/// The result satisfies f(t+b, t) = g.
pub fn complete_c0(
    fam: &FamilySpec,
    upper: &[Poly],
    b: FieldElem,
    g: &Poly,
) -> Result<BiPoly> {
    let field = &fam.field;
    let d = fam.d as usize;
    if upper.len() != d {
        return Err(Error::InvalidParameter(format!(
            "expected {} coefficient polynomials c_1..c_{}, got {}",
            d,
            d,
            upper.len()
        )));
    }
    for (i, c) in upper.iter().enumerate() {
        assert!(c.field() == field, "coefficient over a different field");
        let cap = d - (i + 1);
        if c.degree() > Degree::Finite(cap) {
            return Err(Error::InvalidParameter(format!(
                "deg c_{} must be at most {}",
                i + 1,
                cap
            )));
        }
    }
    if !g.is_monic() || g.degree() != Degree::Finite(d) {
        return Err(Error::InvalidParameter(format!(
            "target must be monic of degree {}",
            d
        )));
    }
    let minus_b = field.neg(b);
    // g(x - b) and the powers (x - b)^i
    let mut c0 = g.shift(minus_b);
    let x_minus_b = Poly::from_coeffs(field, vec![minus_b, field.one()]);
    let mut power = Poly::one(field);
    for c in upper {
        power = power.mul(&x_minus_b);
        c0 = c0.sub(&c.mul(&power));
    }
    let mut t_coeffs = Vec::with_capacity(d + 1);
    t_coeffs.push(c0);
    t_coeffs.extend(upper.iter().cloned());
    Ok(BiPoly::from_t_coeffs(field, &t_coeffs))
}

/// Iterator over all q^free_dim family members, built from the free
/// coefficient parametrization: all coefficients of c_1..c_d plus the
/// non-leading coefficients of c_0, with the top coefficient of c_0 solving
/// the monicity constraint.
pub fn members(fam: &FamilySpec, budget: Budget) -> Result<impl Iterator<Item = BiPoly>> {
    let size = fam.family_size().unwrap_or(u128::MAX);
    budget.check(size)?;
    let fam = fam.clone();
    Ok((0..size).map(move |idx| member_from_index(&fam, idx)))
}

/// The member at a free-coefficient index in [0, q^free_dim).
pub fn member_from_index(fam: &FamilySpec, index: u128) -> BiPoly {
    let field = &fam.field;
    let q = field.q() as u128;
    let d = fam.d as usize;
    let mut rem = index;
    let mut digit = || {
        let v = (rem % q) as u64;
        rem /= q;
        field.elem(v)
    };
    // c_i for i = 1..d, deg c_i <= d - i
    let mut coeff_grids: Vec<Vec<FieldElem>> = Vec::with_capacity(d + 1);
    coeff_grids.push(vec![field.zero(); d + 1]); // c_0 filled below
    for i in 1..=d {
        let len = d - i + 1;
        coeff_grids.push((0..len).map(|_| digit()).collect());
    }
    // non-leading coefficients of c_0
    for j in 0..d {
        coeff_grids[0][j] = digit();
    }
    debug_assert_eq!(rem, 0, "member index out of range");
    // top of c_0: the t^d coefficient of every specialization is the sum of
    // the leading coefficients, which must be 1
    let mut sum = field.zero();
    for (i, grid) in coeff_grids.iter().enumerate().skip(1) {
        sum = field.add(sum, grid[d - i]);
    }
    coeff_grids[0][d] = field.sub(field.one(), sum);
    let t_coeffs: Vec<Poly> = coeff_grids
        .into_iter()
        .map(|g| Poly::from_coeffs(field, g))
        .collect();
    BiPoly::from_t_coeffs(field, &t_coeffs)
}

/// Counts family members by filtering every bivariate of total degree at
/// most d through [`is_member`]; the independent cross-check for the
/// parametrized enumeration. The candidate space has q^C(d+2,2) grids.
pub fn member_count_by_filter(fam: &FamilySpec, budget: Budget) -> Result<u128> {
    let field = &fam.field;
    let q = field.q() as u128;
    let d = fam.d as usize;
    let slots: Vec<(usize, usize)> = (0..=d)
        .flat_map(|i| (0..=d - i).map(move |j| (i, j)))
        .collect();
    let candidates = arith::checked_pow_u128(field.q(), slots.len() as u32).unwrap_or(u128::MAX);
    budget.check(candidates)?;
    let mut count = 0u128;
    for idx in 0..candidates {
        let mut rem = idx;
        let mut grid = vec![vec![field.zero(); d + 1]; d + 1];
        for &(i, j) in &slots {
            grid[i][j] = field.elem((rem % q) as u64);
            rem /= q;
        }
        let f = BiPoly::from_grid(field, grid);
        if is_member(&f, fam) {
            count += 1;
        }
    }
    Ok(count)
}

/// Fiber sizes of the specialization map (member, shift) -> g, indexed by
/// the monic index of g among monic polynomials of degree d.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub family: FamilySpec,
    /// per_g[i] = number of pairs (f, b) with f(t+b, t) the i-th monic
    /// polynomial of degree d.
    pub per_g: Vec<u64>,
    pub expected: u64,
}

impl FiberReport {
    pub fn is_constant(&self) -> bool {
        self.per_g.iter().all(|&c| c == self.expected)
    }

    pub fn total(&self) -> u128 {
        self.per_g.iter().map(|&c| c as u128).sum()
    }

    /// First g whose fiber size differs from the expected constant.
    pub fn first_violation(&self) -> Option<(Poly, u64)> {
        self.per_g.iter().enumerate().find_map(|(i, &c)| {
            (c != self.expected).then(|| {
                (
                    Poly::monic_from_index(&self.family.field, self.family.d, i as u128),
                    c,
                )
            })
        })
    }
}

/// Tallies every (member, shift) pair by its specialization.
pub fn fiber_counts(fam: &FamilySpec, budget: Budget) -> Result<FiberReport> {
    let pairs = fam.pair_total().unwrap_or(u128::MAX);
    budget.check(pairs)?;
    let q = fam.field.q();
    let fiber_count = arith::checked_pow_u128(q, fam.d)
        .filter(|&c| c <= budget.0 as u128)
        .ok_or(Error::BudgetExceeded {
            needed: pairs,
            budget: budget.0,
        })? as usize;
    let mut per_g = vec![0u64; fiber_count];
    for member in members(fam, budget)? {
        for b in fam.field.elems() {
            let g = member.specialize_shift(b);
            debug_assert!(g.is_monic() && g.degree() == Degree::Finite(fam.d as usize));
            per_g[g.monic_index() as usize] += 1;
        }
    }
    let expected = fam
        .expected_fiber()
        .and_then(|e| u64::try_from(e).ok())
        .expect("expected fiber within budget");
    Ok(FiberReport {
        family: fam.clone(),
        per_g,
        expected,
    })
}

/// Both sides of the double-counting identity for one input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCount {
    /// fiber constant times the exact count.
    pub lhs: u128,
    /// Direct enumeration over (member, shift) pairs whose two
    /// specializations are both irreducible.
    pub rhs: u128,
    /// The fiber constant used on the left side.
    pub fiber: u128,
}

/// Checks the double-counting identity: summing the fiber constant over the
/// witnesses of the exact count must equal the direct pair enumeration.
/// Goldbach input is a monic F of degree n; twin input is the gap A.
pub fn double_count_check(fam: &FamilySpec, input: &Poly, budget: Budget) -> Result<DoubleCount> {
    assert!(input.field() == &fam.field, "input over a different field");
    let pairs = fam.pair_total().unwrap_or(u128::MAX);
    budget.check(pairs)?;
    let count = match fam.problem {
        Problem::Goldbach => {
            if input.degree() != Degree::Finite(fam.n as usize) {
                return Err(Error::InvalidParameter(format!(
                    "goldbach input must have degree n = {}",
                    fam.n
                )));
            }
            counting::goldbach_count(input, false, budget)?.count
        }
        Problem::Twin => counting::twin_count(&fam.field, fam.n, input, false, budget)?.count,
    };
    let fiber = fam.expected_fiber().expect("within budget");
    let mut rhs: u128 = 0;
    for member in members(fam, budget)? {
        for b in fam.field.elems() {
            let g = member.specialize_shift(b);
            let partner = match fam.problem {
                Problem::Goldbach => input.sub(&g),
                Problem::Twin => g.add(input),
            };
            if irr::is_irreducible(&g).expect("specializations are monic")
                && irr::is_irreducible(&partner).expect("partners are monic")
            {
                rhs += 1;
            }
        }
    }
    Ok(DoubleCount {
        lhs: fiber * count as u128,
        rhs,
        fiber,
    })
}

/// The set of shifts at which a bivariate acquires a repeated root, and the
/// degree bound that confines it.
#[derive(Clone, Debug)]
pub struct DiscLocus {
    pub roots: Vec<FieldElem>,
    /// (2 deg_x - 1) * deg_t; the t-degree bound on the discriminant.
    pub bound: u64,
}

/// Roots b of the x-discriminant of f, i.e. the shifts where f(x, b) is
/// inseparable. Errors when the discriminant vanishes identically (the
/// separability hypothesis fails) or f is constant in x.
pub fn disc_locus(f: &BiPoly) -> Result<DiscLocus> {
    let n = match f.deg_x() {
        Degree::Finite(n) if n >= 1 => n,
        _ => {
            return Err(Error::InvalidParameter(
                "discriminant locus requires positive degree in x".into(),
            ))
        }
    };
    let m = f.deg_t().finite().unwrap_or(0);
    let disc = f.disc_x()?;
    if disc.is_zero() {
        return Err(Error::Inseparable);
    }
    let roots: Vec<FieldElem> = f
        .field()
        .elems()
        .filter(|&b| disc.eval(b).is_zero())
        .collect();
    Ok(DiscLocus {
        roots,
        bound: ((2 * n - 1) * m) as u64,
    })
}
