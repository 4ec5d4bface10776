//! The ring GF(q)[t]: normalized dense polynomials with exact ring
//! arithmetic, division, gcd, evaluation, resultants, and the canonical
//! text form used for interchange.
//!
//! Text forms: the canonical form is a comma list of element encodings
//! ascending by degree, so "2,1" is t + 2. Over prime fields a symbolic form
//! with nonnegative integer coefficients is also accepted on input, e.g.
//! "t^2+2t+2". Formatting always emits the canonical comma list.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Degree of a polynomial. The zero polynomial gets a distinct minimum value
/// rather than a sentinel integer, so degree comparisons stay honest.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, Degree::NegInf)
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInf, Degree::NegInf) => Ordering::Equal,
            (Degree::NegInf, _) => Ordering::Less,
            (_, Degree::NegInf) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{}", d),
        }
    }
}

/// A univariate polynomial over a [`Field`], coefficients ascending by
/// degree with no trailing zeros (the zero polynomial has an empty vector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: FieldElem) -> Poly {
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// The monomial t.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: FieldElem, degree: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from coefficient encodings ascending by degree.
    pub fn from_encodings(field: &Field, encodings: &[u64]) -> Result<Poly> {
        let coeffs = encodings
            .iter()
            .map(|&e| field.try_elem(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(field, coeffs))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of t^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(f, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.sub(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(f, out)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let f = &self.field;
        if c.is_zero() {
            return Poly::zero(f);
        }
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg r < deg divisor.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(divisor);
        let f = &self.field;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let da = self.coeffs.len() - 1;
        let lead_inv = f.inv(divisor.coeffs[db]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![f.zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let c = f.mul(rem[i + db], lead_inv);
            quo[i] = c;
            if !c.is_zero() {
                for (j, &dj) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = f.sub(rem[i + j], f.mul(c, dj));
                }
            }
        }
        Ok((Poly::from_coeffs(f, quo), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor. Errors when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.assert_same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero in gcd loop");
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Divides out the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// The composition f(t + b).
    pub fn shift(&self, b: FieldElem) -> Poly {
        let f = &self.field;
        let lin = Poly::from_coeffs(f, vec![b, f.one()]);
        let mut acc = Poly::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(f, c));
        }
        acc
    }

    /// Formal derivative. In characteristic p the terms with p | i vanish.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let p = f.p();
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let scalar = f.elem((i as u64) % p);
            out.push(f.mul(c, scalar));
        }
        Poly::from_coeffs(f, out)
    }

    /// self^e mod m by square and multiply. Panics on a zero modulus.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        self.assert_same_field(m);
        assert!(!m.is_zero(), "zero modulus");
        let f = &self.field;
        let mut base = self.rem(m).expect("modulus nonzero");
        let mut acc = Poly::one(f).rem(m).expect("modulus nonzero");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m).expect("modulus nonzero");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m).expect("modulus nonzero");
            }
        }
        acc
    }

    /// Orders polynomials by degree, then by coefficients from the highest
    /// power down. On monic polynomials of equal degree this matches the
    /// enumeration order of [`crate::irr::enumerate_monic`].
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..self.coeffs.len()).rev() {
                let ord = self.coeffs[i].encoding().cmp(&other.coeffs[i].encoding());
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }

    /// Integer encoding sum_i enc(c_i) q^i. Panics if it does not fit u128.
    pub fn encoding(&self) -> u128 {
        let q = self.field.q() as u128;
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(q)
                .and_then(|a| a.checked_add(c.encoding() as u128))
                .expect("polynomial encoding exceeds u128");
        }
        acc
    }

    /// Inverse of [`Poly::encoding`].
    pub fn from_encoding(field: &Field, mut encoding: u128) -> Poly {
        let q = field.q() as u128;
        let mut coeffs = Vec::new();
        while encoding > 0 {
            coeffs.push(field.elem((encoding % q) as u64));
            encoding /= q;
        }
        Poly::from_coeffs(field, coeffs)
    }

    /// The `index`-th monic polynomial of degree d, where the index is the
    /// integer encoding of the non-leading coefficient vector. Indices run
    /// over [0, q^d).
    pub fn monic_from_index(field: &Field, d: u32, index: u128) -> Poly {
        let q = field.q() as u128;
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        let mut e = index;
        for _ in 0..d {
            coeffs.push(field.elem((e % q) as u64));
            e /= q;
        }
        debug_assert_eq!(e, 0, "monic index out of range");
        coeffs.push(field.one());
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Index of a monic polynomial within its degree, inverse of
    /// [`Poly::monic_from_index`].
    pub fn monic_index(&self) -> u128 {
        assert!(self.is_monic(), "monic_index on a non-monic polynomial");
        let q = self.field.q() as u128;
        let mut acc: u128 = 0;
        for &c in self.coeffs[..self.coeffs.len() - 1].iter().rev() {
            acc = acc
                .checked_mul(q)
                .and_then(|a| a.checked_add(c.encoding() as u128))
                .expect("monic index exceeds u128");
        }
        acc
    }
}

impl fmt::Display for Poly {
    /// Canonical comma-list form, e.g. "2,1" for t + 2 and "0" for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Resultant of two nonzero polynomials as the determinant of their
/// Sylvester matrix, with the rows of `a`'s coefficients first. For two
/// nonzero constants the matrix is empty and the resultant is 1.
pub fn resultant(a: &Poly, b: &Poly) -> Result<FieldElem> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = a.field().clone();
    a.assert_same_field(b);
    let da = a.coeffs().len() - 1;
    let db = b.coeffs().len() - 1;
    let s = da + db;
    let mut m = vec![vec![field.zero(); s]; s];
    for r in 0..db {
        for j in 0..=da {
            m[r][r + j] = a.coeff(da - j);
        }
    }
    for r in 0..da {
        for j in 0..=db {
            m[db + r][r + j] = b.coeff(db - j);
        }
    }
    Ok(det_over_field(&field, m))
}

/// Discriminant of a nonconstant polynomial:
/// (-1)^(n(n-1)/2) res(f, f') / lc(f). Zero when f' vanishes identically.
pub fn discriminant(f: &Poly) -> Result<FieldElem> {
    let n = match f.degree() {
        Degree::Finite(n) if n >= 1 => n,
        _ => {
            return Err(Error::InvalidParameter(
                "discriminant requires positive degree".into(),
            ))
        }
    };
    let field = f.field();
    let deriv = f.derivative();
    if deriv.is_zero() {
        return Ok(field.zero());
    }
    let res = resultant(f, &deriv)?;
    let signed = if (n * (n - 1) / 2) % 2 == 1 {
        field.neg(res)
    } else {
        res
    };
    let lc_inv = field.inv(f.leading().expect("nonzero")).expect("nonzero");
    Ok(field.mul(signed, lc_inv))
}

fn det_over_field(field: &Field, mut m: Vec<Vec<FieldElem>>) -> FieldElem {
    let s = m.len();
    let mut det = field.one();
    for col in 0..s {
        let pivot = match (col..s).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return field.zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = field.neg(det);
        }
        let pv = m[col][col];
        det = field.mul(det, pv);
        let pinv = field.inv(pv).expect("pivot nonzero");
        for r in col + 1..s {
            let factor = field.mul(m[r][col], pinv);
            if factor.is_zero() {
                continue;
            }
            for c in col..s {
                let sub = field.mul(factor, m[col][c]);
                m[r][c] = field.sub(m[r][c], sub);
            }
        }
    }
    det
}

/// Parses the canonical comma-list form over any field, or the symbolic form
/// over prime fields ("t^2+2t+2": nonnegative integer coefficients joined by
/// '+'; integer coefficients reduce mod p). Byte positions in errors refer to
/// the original input string.
pub fn parse_poly(text: &str, field: &Field) -> Result<Poly> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    let trimmed = trimmed.trim_end();
    if trimmed.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    if trimmed.contains('t') {
        parse_symbolic(trimmed, offset, field)
    } else {
        parse_comma_list(trimmed, offset, field)
    }
}

fn parse_comma_list(text: &str, offset: usize, field: &Field) -> Result<Poly> {
    let mut encodings = Vec::new();
    let mut pos = 0usize;
    for token in text.split(',') {
        let token_start = offset + pos;
        let inner = token.trim();
        let inner_start = token_start + (token.len() - token.trim_start().len());
        if inner.is_empty() {
            return Err(Error::Parse {
                pos: token_start,
                msg: "empty coefficient".into(),
            });
        }
        let value: u64 = inner.parse().map_err(|_| Error::Parse {
            pos: inner_start,
            msg: format!("invalid coefficient '{}'", inner),
        })?;
        if value >= field.q() {
            return Err(Error::Parse {
                pos: inner_start,
                msg: format!(
                    "coefficient encoding {} out of range for field of order {}",
                    value,
                    field.q()
                ),
            });
        }
        encodings.push(value);
        pos += token.len() + 1;
    }
    Poly::from_encodings(field, &encodings)
}

const MAX_PARSED_EXPONENT: usize = 1_000_000;

fn parse_symbolic(text: &str, offset: usize, field: &Field) -> Result<Poly> {
    if field.k() > 1 {
        return Err(Error::Parse {
            pos: offset,
            msg: "symbolic form is only defined over prime fields; use the comma-encoded form"
                .into(),
        });
    }
    let p = field.p();
    let bytes = text.as_bytes();
    let mut coeffs: Vec<u64> = Vec::new();
    let mut i = 0usize;

    let add_term = |coeff: u64, exp: usize, coeffs: &mut Vec<u64>| {
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = (coeffs[exp] + coeff) % p;
    };

    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let term_start = i;
        if i >= bytes.len() {
            return Err(Error::Parse {
                pos: offset + term_start,
                msg: "expected a term".into(),
            });
        }
        // optional integer coefficient
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > digits_start {
            let lit: u128 = text[digits_start..i].parse().map_err(|_| Error::Parse {
                pos: offset + digits_start,
                msg: "coefficient too large".into(),
            })?;
            (lit % p as u128) as u64
        } else {
            1
        };
        let mut exp = 0usize;
        let has_var = i < bytes.len() && bytes[i] == b't';
        if has_var {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let exp_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == exp_start {
                    return Err(Error::Parse {
                        pos: offset + exp_start,
                        msg: "expected exponent digits after '^'".into(),
                    });
                }
                exp = text[exp_start..i].parse().map_err(|_| Error::Parse {
                    pos: offset + exp_start,
                    msg: "exponent too large".into(),
                })?;
                if exp > MAX_PARSED_EXPONENT {
                    return Err(Error::Parse {
                        pos: offset + exp_start,
                        msg: format!("exponent exceeds limit {}", MAX_PARSED_EXPONENT),
                    });
                }
            }
        } else if i == digits_start {
            return Err(Error::Parse {
                pos: offset + i,
                msg: format!("unexpected character '{}'", text[i..].chars().next().unwrap()),
            });
        }
        add_term(coeff, exp, &mut coeffs);

        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        if bytes[i] != b'+' {
            return Err(Error::Parse {
                pos: offset + i,
                msg: format!(
                    "expected '+' between terms, found '{}'",
                    text[i..].chars().next().unwrap()
                ),
            });
        }
        i += 1;
    }
    Poly::from_encodings(field, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(text: &str, field: &Field) -> Poly {
        parse_poly(text, field).unwrap()
    }

    #[test]
    fn ring_op_examples() {
        let f3 = gf(3);
        assert_eq!(poly("t^2", &f3).sub(&poly("t", &f3)), poly("t^2+2t", &f3));
        assert_eq!(
            poly("t^2+t+2", &f3).add(&poly("1", &f3)),
            poly("t^2+t", &f3)
        );
        let f5 = gf(5);
        assert_eq!(
            poly("t+1", &f5).mul(&poly("t+4", &f5)),
            poly("t^2+4", &f5)
        );
    }

    #[test]
    fn divmod_examples() {
        let f3 = gf(3);
        let (q, r) = poly("t^2", &f3).divmod(&poly("t", &f3)).unwrap();
        assert_eq!(q, poly("t", &f3));
        assert!(r.is_zero());

        let a = poly("t^2+1", &f3);
        let b = poly("t+1", &f3);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, poly("t+2", &f3));
        assert_eq!(r, poly("2", &f3));
        assert_eq!(q.mul(&b).add(&r), a);

        let f5 = gf(5);
        let (q, r) = poly("3", &f5).divmod(&poly("t^2+1", &f5)).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, poly("3", &f5));

        assert!(matches!(
            poly("t", &f3).divmod(&Poly::zero(&f3)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn gcd_examples() {
        let f5 = gf(5);
        // t^2 - 1 and t^2 - 2t + 1 share the root 1
        let g = poly("t^2+4", &f5).gcd(&poly("t^2+3t+1", &f5)).unwrap();
        assert_eq!(g, poly("t+4", &f5));

        let f3 = gf(3);
        let f = poly("2t^2+1", &f3);
        assert_eq!(f.gcd(&Poly::zero(&f3)).unwrap(), f.monic());
        assert_eq!(
            poly("t^2+1", &f3).gcd(&poly("t^2+t+2", &f3)).unwrap(),
            Poly::one(&f3)
        );
        assert!(Poly::zero(&f3).gcd(&Poly::zero(&f3)).is_err());
    }

    #[test]
    fn eval_and_shift() {
        let f3 = gf(3);
        assert_eq!(poly("t^2+2t+2", &f3).eval(f3.elem(2)), f3.elem(1));
        // f(t + b) evaluated at x equals f(x + b)
        let f = poly("t^2+2t+1", &f3);
        for b in f3.elems() {
            let shifted = f.shift(b);
            for x in f3.elems() {
                assert_eq!(shifted.eval(x), f.eval(f3.add(x, b)));
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let f3 = gf(3);
        assert_eq!(poly("t^3+t", &f3).derivative(), Poly::one(&f3));
        let f5 = gf(5);
        assert_eq!(poly("t^2+3t+1", &f5).derivative(), poly("2t+3", &f5));
        assert!(poly("4", &f5).derivative().is_zero());
    }

    #[test]
    fn resultant_examples() {
        let f5 = gf(5);
        let r = resultant(&poly("t+4", &f5), &poly("t+3", &f5)).unwrap();
        // roots 1 and 2, resultant is their difference
        assert_eq!(r, f5.elem(4));
        assert!(resultant(&Poly::zero(&f5), &poly("t", &f5)).is_err());
        // two constants: empty Sylvester matrix
        assert_eq!(
            resultant(&poly("2", &f5), &poly("3", &f5)).unwrap(),
            f5.one()
        );
    }

    #[test]
    fn discriminant_matches_quadratic_formula() {
        // disc(t^2 + bt + c) = b^2 - 4c
        for p in [3u64, 5, 7] {
            let f = gf(p);
            for b in f.elems() {
                for c in f.elems() {
                    let q = Poly::from_coeffs(&f, vec![c, b, f.one()]);
                    let expect = f.sub(
                        f.mul(b, b),
                        f.mul(f.elem(4 % p), c),
                    );
                    assert_eq!(discriminant(&q).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn parse_and_format() {
        let f3 = gf(3);
        assert_eq!(poly("t^2+2t+1", &f3).coeffs().len(), 3);
        assert_eq!(poly("t^2+2t+1", &f3), poly("1,2,1", &f3));
        let p = poly("2,1", &f3);
        assert_eq!(p.to_string(), "2,1");
        assert_eq!(poly(&p.to_string(), &f3), p);
        assert_eq!(Poly::zero(&f3).to_string(), "0");
        assert_eq!(poly("0", &f3), Poly::zero(&f3));
        // trailing zeros normalize away
        assert_eq!(poly("2,1,0", &f3), poly("2,1", &f3));

        assert!(matches!(
            parse_poly("t^+", &f3),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_poly("", &f3), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(
            parse_poly("3,1", &f3),
            Err(Error::Parse { .. })
        ));
        // symbolic coefficients reduce mod p
        assert_eq!(poly("5t+4", &f3), poly("2t+1", &f3));
        // symbolic form rejected over extension fields
        let f9 = Field::new(3, 2).unwrap();
        assert!(parse_poly("t+1", &f9).is_err());
        assert_eq!(poly("8,3", &f9).to_string(), "8,3");
    }

    #[test]
    fn encodings_round_trip() {
        let f9 = Field::new(3, 2).unwrap();
        for e in 0..200u128 {
            let p = Poly::from_encoding(&f9, e);
            assert_eq!(p.encoding(), e);
        }
        for idx in 0..81u128 {
            let p = Poly::monic_from_index(&f9, 2, idx);
            assert!(p.is_monic());
            assert_eq!(p.degree(), Degree::Finite(2));
            assert_eq!(p.monic_index(), idx);
        }
    }

    #[test]
    fn degree_ordering() {
        assert!(Degree::NegInf < Degree::Finite(0));
        assert!(Degree::Finite(2) < Degree::Finite(3));
        let f3 = gf(3);
        assert_eq!(Poly::zero(&f3).degree(), Degree::NegInf);
    }

    #[test]
    fn ring_axioms_on_random_samples() {
        use crate::rng::DetRng;
        let mut rng = DetRng::keyed(&[0xabcd]);
        for q in [2u64, 3, 4, 5, 9] {
            let f = Field::from_order(q).unwrap();
            for _ in 0..40 {
                let mut rand_poly = |max_deg: u64| {
                    let d = rng.below(max_deg + 1);
                    let coeffs: Vec<FieldElem> =
                        (0..=d).map(|_| f.elem(rng.below(q))).collect();
                    Poly::from_coeffs(&f, coeffs)
                };
                let a = rand_poly(5);
                let b = rand_poly(4);
                let c = rand_poly(3);
                assert_eq!(
                    a.add(&b).mul(&c),
                    a.mul(&c).add(&b.mul(&c)),
                    "distributivity over {}",
                    f
                );
                if !b.is_zero() {
                    let (quo, rem) = a.divmod(&b).unwrap();
                    assert_eq!(quo.mul(&b).add(&rem), a);
                    assert!(rem.degree() < b.degree());
                }
                if !(a.is_zero() && b.is_zero()) {
                    let g = a.gcd(&b).unwrap();
                    assert!(g.is_monic() || (g.is_zero() && a.is_zero() && b.is_zero()));
                    if !g.is_zero() {
                        assert!(a.rem(&g).unwrap().is_zero());
                        assert!(b.rem(&g).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
