//! Bivariate polynomials f(x, t) over a finite field.
//!
//! Only the operations the shift-family machinery needs: building members
//! from coefficient polynomials, the substitution x := t + b, evaluation of
//! the second variable, and the discriminant of f taken in x, which is a
//! polynomial in t computed through a Sylvester determinant over GF(q)[t].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{Degree, Poly};

/// A dense bivariate polynomial; `grid[i][j]` is the coefficient of x^i t^j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    field: Field,
    grid: Vec<Vec<FieldElem>>,
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly {
            field: field.clone(),
            grid: Vec::new(),
        }
    }

    /// Builds from a grid of coefficients, `grid[i][j]` for x^i t^j.
    pub fn from_grid(field: &Field, grid: Vec<Vec<FieldElem>>) -> BiPoly {
        let mut rows: Vec<Vec<FieldElem>> = grid
            .into_iter()
            .map(|mut row| {
                while row.last().is_some_and(|c| c.is_zero()) {
                    row.pop();
                }
                row
            })
            .collect();
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        BiPoly {
            field: field.clone(),
            grid: rows,
        }
    }

    pub fn from_grid_encodings(field: &Field, grid: &[Vec<u64>]) -> Result<BiPoly> {
        let mut rows = Vec::with_capacity(grid.len());
        for row in grid {
            let mut out = Vec::with_capacity(row.len());
            for &e in row {
                out.push(field.try_elem(e)?);
            }
            rows.push(out);
        }
        Ok(BiPoly::from_grid(field, rows))
    }

    /// Builds sum_j c_j(x) t^j from the coefficient polynomials in x.
    pub fn from_t_coeffs(field: &Field, t_coeffs: &[Poly]) -> BiPoly {
        let mut max_x = 0usize;
        for c in t_coeffs {
            assert!(c.field() == field, "coefficient over a different field");
            max_x = max_x.max(c.coeffs().len());
        }
        let mut grid = vec![vec![field.zero(); t_coeffs.len()]; max_x];
        for (j, c) in t_coeffs.iter().enumerate() {
            for (i, &a) in c.coeffs().iter().enumerate() {
                grid[i][j] = a;
            }
        }
        BiPoly::from_grid(field, grid)
    }

    /// Builds sum_i a_i(t) x^i from the coefficient polynomials in t.
    pub fn from_x_coeffs(field: &Field, x_coeffs: &[Poly]) -> BiPoly {
        let grid = x_coeffs
            .iter()
            .map(|a| {
                assert!(a.field() == field, "coefficient over a different field");
                a.coeffs().to_vec()
            })
            .collect();
        BiPoly::from_grid(field, grid)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElem {
        self.grid
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn deg_x(&self) -> Degree {
        if self.grid.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.grid.len() - 1)
        }
    }

    pub fn deg_t(&self) -> Degree {
        self.grid
            .iter()
            .filter(|row| !row.is_empty())
            .map(|row| row.len() - 1)
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    /// max(i + j) over nonzero coefficients of x^i t^j.
    pub fn total_degree(&self) -> Degree {
        let mut best: Option<usize> = None;
        for (i, row) in self.grid.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    best = Some(best.map_or(i + j, |b| b.max(i + j)));
                }
            }
        }
        best.map_or(Degree::NegInf, Degree::Finite)
    }

    /// Coefficient polynomials of powers of x, each a polynomial in t.
    pub fn x_coeff_polys(&self) -> Vec<Poly> {
        self.grid
            .iter()
            .map(|row| Poly::from_coeffs(&self.field, row.clone()))
            .collect()
    }

    /// The specialization f(t + b, t) as a univariate polynomial in t.
    pub fn specialize_shift(&self, b: FieldElem) -> Poly {
        let f = &self.field;
        let lin = Poly::from_coeffs(f, vec![b, f.one()]);
        let mut acc = Poly::zero(f);
        for row in self.grid.iter().rev() {
            let row_poly = Poly::from_coeffs(f, row.clone());
            acc = acc.mul(&lin).add(&row_poly);
        }
        acc
    }

    /// The evaluation f(x, b) as a univariate polynomial in x.
    pub fn eval_t(&self, b: FieldElem) -> Poly {
        let f = &self.field;
        let coeffs = self
            .grid
            .iter()
            .map(|row| Poly::from_coeffs(f, row.clone()).eval(b))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// Formal derivative with respect to x.
    pub fn derivative_x(&self) -> BiPoly {
        let f = &self.field;
        if self.grid.len() <= 1 {
            return BiPoly::zero(f);
        }
        let p = f.p();
        let grid = self
            .grid
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, row)| {
                let scalar = f.elem((i as u64) % p);
                row.iter().map(|&c| f.mul(c, scalar)).collect()
            })
            .collect();
        BiPoly::from_grid(f, grid)
    }

    /// Discriminant of f taken in x, as a polynomial in t:
    /// (-1)^(n(n-1)/2) res_x(f, df/dx) / lc_x(f), with the resultant the
    /// Sylvester determinant over GF(q)[t] (rows of f's coefficients first).
    /// Returns the zero polynomial when df/dx vanishes identically. Errors
    /// when f is constant in x.
    ///
    /// The Sylvester entries are polynomials in t of degree at most
    /// m = deg_t f, so the result has degree at most (2n - 1) m in t.
    pub fn disc_x(&self) -> Result<Poly> {
        let n = match self.deg_x() {
            Degree::Finite(n) if n >= 1 => n,
            _ => {
                return Err(Error::InvalidParameter(
                    "discriminant requires positive degree in x".into(),
                ))
            }
        };
        let f = &self.field;
        let deriv = self.derivative_x();
        if deriv.is_zero() {
            return Ok(Poly::zero(f));
        }
        let a = self.x_coeff_polys();
        let b = deriv.x_coeff_polys();
        let da = a.len() - 1;
        let db = b.len() - 1;
        let s = da + db;
        let mut m = vec![vec![Poly::zero(f); s]; s];
        for r in 0..db {
            for j in 0..=da {
                m[r][r + j] = a[da - j].clone();
            }
        }
        for r in 0..da {
            for j in 0..=db {
                m[db + r][r + j] = b[db - j].clone();
            }
        }
        let res = det_over_poly_ring(f, &m);
        let signed = if (n * (n - 1) / 2) % 2 == 1 {
            res.neg()
        } else {
            res
        };
        let lc = &a[da];
        let (quo, rem) = signed.divmod(lc).expect("leading coefficient nonzero");
        assert!(
            rem.is_zero(),
            "resultant is divisible by the leading coefficient"
        );
        Ok(quo)
    }
}

impl fmt::Display for BiPoly {
    /// Human-oriented term list, highest x-power first; used in diagnostics.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut terms = Vec::new();
        for (i, row) in self.grid.iter().enumerate().rev() {
            for (j, c) in row.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mut term = String::new();
                if !c.is_one() || (i == 0 && j == 0) {
                    term.push_str(&c.to_string());
                }
                for (sym, pw) in [("x", i), ("t", j)] {
                    if pw > 0 {
                        if !term.is_empty() {
                            term.push('*');
                        }
                        term.push_str(sym);
                        if pw > 1 {
                            term.push_str(&format!("^{}", pw));
                        }
                    }
                }
                terms.push(term);
            }
        }
        write!(out, "{}", terms.join("+"))
    }
}

/// Determinant over GF(q)[t] by a subset dynamic program (no division):
/// rows are placed in order and dp is indexed by the set of used columns,
/// with the permutation sign tracked through inversion counts. Matrices here
/// are small Sylvester blocks, so 2^s states are fine.
fn det_over_poly_ring(field: &Field, m: &[Vec<Poly>]) -> Poly {
    let s = m.len();
    assert!(s <= 24, "determinant block too large");
    if s == 0 {
        return Poly::one(field);
    }
    let mut dp: Vec<Option<Poly>> = vec![None; 1 << s];
    dp[0] = Some(Poly::one(field));
    for mask in 0..(1u32 << s) - 1 {
        let current = match dp[mask as usize].take() {
            Some(v) => v,
            None => continue,
        };
        if current.is_zero() && mask != 0 {
            // zero partial products contribute nothing
            dp[mask as usize] = Some(current);
            continue;
        }
        let row = mask.count_ones() as usize;
        for col in 0..s {
            if mask & (1 << col) != 0 {
                continue;
            }
            let entry = &m[row][col];
            if entry.is_zero() {
                continue;
            }
            // parity of inversions added by placing this column now
            let higher_used = (mask >> (col + 1)).count_ones();
            let mut term = current.mul(entry);
            if higher_used % 2 == 1 {
                term = term.neg();
            }
            let slot = (mask | (1 << col)) as usize;
            dp[slot] = Some(match dp[slot].take() {
                Some(acc) => acc.add(&term),
                None => term,
            });
        }
        dp[mask as usize] = Some(current);
    }
    dp[(1usize << s) - 1]
        .take()
        .unwrap_or_else(|| Poly::zero(field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{discriminant, parse_poly};

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    /// x^2 - t over the given field (the main variable is x).
    fn x2_minus_t(f: &Field) -> BiPoly {
        BiPoly::from_grid_encodings(
            f,
            &[vec![0, f.q() - 1], vec![], vec![1]],
        )
        .unwrap()
    }

    #[test]
    fn degrees_and_total_degree() {
        let f = gf(3);
        let b = x2_minus_t(&f);
        assert_eq!(b.deg_x(), Degree::Finite(2));
        assert_eq!(b.deg_t(), Degree::Finite(1));
        assert_eq!(b.total_degree(), Degree::Finite(2));
        assert_eq!(BiPoly::zero(&f).total_degree(), Degree::NegInf);
    }

    #[test]
    fn specialization_examples() {
        let f = gf(3);
        // f(x,t) = x specializes to t + b
        let just_x = BiPoly::from_grid_encodings(&f, &[vec![], vec![1]]).unwrap();
        let b = f.elem(1);
        assert_eq!(just_x.specialize_shift(b), parse_poly("t+1", &f).unwrap());

        // f(x,t) = x - t specializes to the constant b
        let x_minus_t =
            BiPoly::from_grid_encodings(&f, &[vec![0, 2], vec![1]]).unwrap();
        for b in f.elems() {
            let s = x_minus_t.specialize_shift(b);
            assert_eq!(s, Poly::constant(&f, b));
        }
    }

    #[test]
    fn specialize_from_t_coeffs_agrees_with_direct_substitution() {
        let f = gf(5);
        // f = (t+2) + (x^2 + 1) t^3, linear combination check at all points
        let c0 = parse_poly("2,1", &f).unwrap();
        let c3 = parse_poly("1,0,1", &f).unwrap();
        let bi = BiPoly::from_t_coeffs(&f, &[c0, Poly::zero(&f), Poly::zero(&f), c3]);
        for b in f.elems() {
            let spec = bi.specialize_shift(b);
            for t_val in f.elems() {
                let x_val = f.add(t_val, b);
                let mut direct = f.zero();
                for i in 0..=bi.deg_x().finite().unwrap() {
                    for j in 0..=bi.deg_t().finite().unwrap_or(0) {
                        let term = f.mul(
                            bi.coeff(i, j),
                            f.mul(f.pow_u64(x_val, i as u64), f.pow_u64(t_val, j as u64)),
                        );
                        direct = f.add(direct, term);
                    }
                }
                assert_eq!(spec.eval(t_val), direct);
            }
        }
    }

    #[test]
    fn disc_of_x2_minus_t_is_4t() {
        let f5 = gf(5);
        let d = x2_minus_t(&f5).disc_x().unwrap();
        assert_eq!(d, parse_poly("0,4", &f5).unwrap());
    }

    #[test]
    fn disc_of_x2_plus_1_is_constant_minus_4() {
        let f5 = gf(5);
        let b = BiPoly::from_grid_encodings(&f5, &[vec![1], vec![], vec![1]]).unwrap();
        let d = b.disc_x().unwrap();
        assert_eq!(d, Poly::constant(&f5, f5.elem(1))); // -4 = 1 in GF(5)
    }

    #[test]
    fn disc_errors_when_constant_in_x() {
        let f5 = gf(5);
        let b = BiPoly::from_grid_encodings(&f5, &[vec![1, 2, 3]]).unwrap();
        assert!(matches!(b.disc_x(), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn disc_zero_for_inseparable() {
        // x^5 - t over GF(5): derivative in x vanishes identically
        let f5 = gf(5);
        let b = BiPoly::from_grid_encodings(
            &f5,
            &[vec![0, 4], vec![], vec![], vec![], vec![], vec![1]],
        )
        .unwrap();
        assert!(b.disc_x().unwrap().is_zero());
    }

    #[test]
    fn disc_commutes_with_specializing_t_for_monic_x() {
        use crate::rng::DetRng;
        let mut rng = DetRng::keyed(&[0xd15c]);
        for q in [3u64, 5] {
            let f = Field::from_order(q).unwrap();
            for _ in 0..60 {
                let n = 1 + rng.below(3) as usize;
                let m = rng.below(3) as usize;
                let mut rows = Vec::new();
                for i in 0..=n {
                    if i == n {
                        rows.push(vec![1u64]); // monic in x
                    } else {
                        rows.push((0..=m).map(|_| rng.below(q)).collect());
                    }
                }
                let bi = BiPoly::from_grid_encodings(&f, &rows).unwrap();
                let dx = match bi.disc_x() {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                for b in f.elems() {
                    let specialized = bi.eval_t(b);
                    let uni = discriminant(&specialized).unwrap();
                    assert_eq!(
                        dx.eval(b),
                        uni,
                        "disc mismatch at b={} for {}",
                        b,
                        bi
                    );
                }
            }
        }
    }

    #[test]
    fn disc_degree_bound() {
        use crate::rng::DetRng;
        let mut rng = DetRng::keyed(&[0xb0b]);
        let mut checked = 0;
        for q in [3u64, 5, 7] {
            let f = Field::from_order(q).unwrap();
            while checked < 40 {
                let n = 1 + rng.below(4) as usize;
                let m = rng.below(4) as usize;
                let mut rows = Vec::new();
                for i in 0..=n {
                    let row: Vec<u64> = (0..=m).map(|_| rng.below(q)).collect();
                    rows.push(if i == n { vec![1] } else { row });
                }
                let bi = BiPoly::from_grid_encodings(&f, &rows).unwrap();
                let m_actual = bi.deg_t().finite().unwrap_or(0);
                let d = bi.disc_x().unwrap();
                if d.is_zero() {
                    continue;
                }
                let bound = (2 * n - 1) * m_actual;
                assert!(
                    d.degree() <= Degree::Finite(bound),
                    "disc degree {} exceeds ({}*2-1)*{}",
                    d.degree(),
                    n,
                    m_actual
                );
                checked += 1;
            }
        }
    }
}
