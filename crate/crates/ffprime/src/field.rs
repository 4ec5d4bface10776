//! Exact arithmetic in GF(p^k) with a canonical integer encoding.
//!
//! An element with power-basis coordinates (d_0, ..., d_{k-1}) over GF(p) is
//! encoded as the integer d_0 + d_1 p + ... + d_{k-1} p^{k-1}, so encodings
//! range over [0, q) with 0 and 1 the additive and multiplicative identities.
//! The basis is the residue of t modulo the field's defining polynomial; when
//! no modulus is supplied, the monic irreducible of degree k over GF(p) whose
//! non-leading coefficient vector has the least integer encoding is chosen,
//! which makes construction deterministic.
//!
//! Fields used here are small (the sweeps enumerate q^n polynomials, so q
//! stays in the thousands at most). Extension multiplication goes through
//! discrete log/exp tables when q fits, and schoolbook reduction otherwise.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};

/// Largest order for which log/exp multiplication tables are built.
const TABLE_LIMIT: u64 = 1 << 20;

/// An element of a [`Field`], stored as its canonical integer encoding.
///
/// Elements carry no back-reference to their field; all arithmetic goes
/// through the owning [`Field`], and mixing encodings between fields is a
/// caller error.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElem(u64);

impl FieldElem {
    pub fn encoding(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    // log[e] = discrete log of the element encoded e (e >= 1), exp[i] = g^i.
    log: Vec<u32>,
    exp: Vec<u64>,
}

struct Repr {
    p: u64,
    k: u32,
    q: u64,
    /// Defining polynomial, ascending coefficients over GF(p), length k+1 and
    /// monic. Empty for prime fields.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// A finite field GF(p^k). Cheap to clone (shared immutable representation)
/// and safe to use from many threads at once.
#[derive(Clone)]
pub struct Field(Arc<Repr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.k == other.0.k
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(
                f,
                "GF({}^{}; modulus {})",
                self.0.p,
                self.0.k,
                self.0
                    .modulus
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl Field {
    /// Builds GF(p^k) with the canonical (least-encoding) modulus.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        Field::build(p, k, None)
    }

    /// Builds GF(p), the prime field.
    pub fn prime(p: u64) -> Result<Field> {
        Field::build(p, 1, None)
    }

    /// Builds GF(p^k) over an explicit monic irreducible modulus, given as
    /// ascending coefficients over GF(p) of length k+1.
    pub fn with_modulus(p: u64, k: u32, modulus: &[u64]) -> Result<Field> {
        Field::build(p, k, Some(modulus.to_vec()))
    }

    /// Builds the field of order q, determining p and k from q.
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, k) = arith::prime_power_split(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, k)
    }

    fn build(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidParameter(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = arith::checked_pow_u128(p, k)
            .filter(|&q| q <= u64::MAX as u128)
            .ok_or_else(|| {
                Error::InvalidParameter("field order p^k does not fit in 64 bits".into())
            })? as u64;

        let modulus = match modulus {
            None => {
                if k == 1 {
                    Vec::new()
                } else {
                    canonical_modulus(p, k)
                }
            }
            Some(m) => {
                validate_modulus(p, k, &m)?;
                // A degree-1 modulus adds nothing over the plain prime field;
                // normalize it away so equal fields compare equal.
                if k == 1 {
                    Vec::new()
                } else {
                    m
                }
            }
        };

        let mut repr = Repr {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if k > 1 && q <= TABLE_LIMIT {
            repr.tables = Some(build_tables(&repr));
        }
        Ok(Field(Arc::new(repr)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// The defining polynomial for extension fields, None for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.0.k == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The element with the given encoding. Panics if `e >= q`.
    pub fn elem(&self, e: u64) -> FieldElem {
        assert!(e < self.0.q, "encoding {} out of range for {}", e, self);
        FieldElem(e)
    }

    pub fn try_elem(&self, e: u64) -> Result<FieldElem> {
        if e < self.0.q {
            Ok(FieldElem(e))
        } else {
            Err(Error::InvalidParameter(format!(
                "encoding {} out of range for field of order {}",
                e, self.0.q
            )))
        }
    }

    /// All q elements, in increasing encoding order.
    pub fn elems(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let r = &*self.0;
        if r.k == 1 {
            let s = (a.0 as u128 + b.0 as u128) % r.p as u128;
            FieldElem(s as u64)
        } else if r.p == 2 {
            FieldElem(a.0 ^ b.0)
        } else {
            let (mut x, mut y) = (a.0, b.0);
            let mut out = 0u64;
            let mut place = 1u64;
            for _ in 0..r.k {
                let s = x % r.p + y % r.p;
                let s = if s >= r.p { s - r.p } else { s };
                out += s * place;
                place *= r.p;
                x /= r.p;
                y /= r.p;
            }
            FieldElem(out)
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let r = &*self.0;
        if r.k == 1 {
            FieldElem(if a.0 == 0 { 0 } else { r.p - a.0 })
        } else if r.p == 2 {
            a
        } else {
            let mut x = a.0;
            let mut out = 0u64;
            let mut place = 1u64;
            for _ in 0..r.k {
                let d = x % r.p;
                out += if d == 0 { 0 } else { r.p - d } * place;
                place *= r.p;
                x /= r.p;
            }
            FieldElem(out)
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let r = &*self.0;
        if r.k == 1 {
            FieldElem(arith::mul_mod_u64(a.0, b.0, r.p))
        } else if a.0 == 0 || b.0 == 0 {
            FieldElem(0)
        } else if let Some(t) = &r.tables {
            let i = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % (r.q - 1);
            FieldElem(t.exp[i as usize])
        } else {
            FieldElem(mul_generic(r, a.0, b.0))
        }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let r = &*self.0;
        if r.k == 1 {
            Ok(FieldElem(arith::inv_mod_u64(a.0, r.p)))
        } else if let Some(t) = &r.tables {
            let i = (r.q - 1 - t.log[a.0 as usize] as u64) % (r.q - 1);
            Ok(FieldElem(t.exp[i as usize]))
        } else {
            // a^(q-2) = a^(-1) for nonzero a
            Ok(self.pow_u64(a, r.q - 2))
        }
    }

    /// `a^e` for a nonnegative exponent, with 0^0 = 1.
    pub fn pow_u64(&self, a: FieldElem, e: u64) -> FieldElem {
        let r = &*self.0;
        if e == 0 {
            return FieldElem(1 % r.q.max(2));
        }
        if a.0 == 0 {
            return FieldElem(0);
        }
        if let Some(t) = &r.tables {
            let i = (t.log[a.0 as usize] as u128 * e as u128) % (r.q - 1) as u128;
            return FieldElem(t.exp[i as usize]);
        }
        let mut base = a;
        let mut acc = FieldElem(1);
        let mut e = if r.q > 1 { e % (r.q - 1) } else { e };
        if e == 0 {
            return FieldElem(1);
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer exponent; negative exponents invert first.
    pub fn pow(&self, a: FieldElem, e: i64) -> Result<FieldElem> {
        if e >= 0 {
            Ok(self.pow_u64(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow_u64(inv, e.unsigned_abs()))
        }
    }

    /// The unique p-th root of `a` (the Frobenius map is a bijection).
    pub fn pth_root(&self, a: FieldElem) -> FieldElem {
        // a^(p^(k-1)) since a^(p^k) = a.
        let mut x = a;
        for _ in 1..self.0.k {
            x = self.pow_u64(x, self.0.p);
        }
        x
    }
}

fn validate_modulus(p: u64, k: u32, m: &[u64]) -> Result<()> {
    if m.len() != k as usize + 1 {
        return Err(Error::BadModulus(format!(
            "expected degree {} (length {}), got length {}",
            k,
            k + 1,
            m.len()
        )));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(Error::BadModulus(format!(
            "coefficients must lie in [0, {})",
            p
        )));
    }
    if m[k as usize] != 1 {
        return Err(Error::BadModulus("modulus must be monic".into()));
    }
    if k > 1 && !gfp::is_irreducible(m, p) {
        return Err(Error::BadModulus(
            "modulus is reducible over the prime field".into(),
        ));
    }
    Ok(())
}

/// The monic irreducible of degree k over GF(p) whose non-leading coefficient
/// vector (c_0, ..., c_{k-1}) has the least encoding sum c_i p^i.
fn canonical_modulus(p: u64, k: u32) -> Vec<u64> {
    let total = arith::checked_pow_u128(p, k).expect("order already validated");
    let mut coeffs = vec![0u64; k as usize + 1];
    coeffs[k as usize] = 1;
    let mut idx: u128 = 0;
    while idx < total {
        let mut e = idx;
        for slot in coeffs.iter_mut().take(k as usize) {
            *slot = (e % p as u128) as u64;
            e /= p as u128;
        }
        if gfp::is_irreducible(&coeffs, p) {
            return coeffs;
        }
        idx += 1;
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

fn decompose(r: &Repr, mut e: u64, out: &mut [u64]) {
    for slot in out.iter_mut() {
        *slot = e % r.p;
        e /= r.p;
    }
}

fn recompose(r: &Repr, digits: &[u64]) -> u64 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * r.p + d;
    }
    out
}

/// Schoolbook product in the power basis followed by reduction. Used to
/// bootstrap the log/exp tables and as the fallback for large orders.
fn mul_generic(r: &Repr, a: u64, b: u64) -> u64 {
    let k = r.k as usize;
    let mut da = vec![0u64; k];
    let mut db = vec![0u64; k];
    decompose(r, a, &mut da);
    decompose(r, b, &mut db);
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % r.p;
        }
    }
    gfp::reduce_in_place(&mut prod, &r.modulus, r.p);
    recompose(r, &prod[..k.min(prod.len())])
}

fn pow_generic(r: &Repr, a: u64, mut e: u64) -> u64 {
    let mut base = a;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_generic(r, acc, base);
        }
        base = mul_generic(r, base, base);
        e >>= 1;
    }
    acc
}

fn build_tables(r: &Repr) -> Tables {
    let q = r.q;
    let factors = arith::prime_factors(q - 1);
    let gen = (2..q)
        .find(|&g| factors.iter().all(|&f| pow_generic(r, g, (q - 1) / f) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u64; (q - 1) as usize];
    let mut log = vec![0u32; q as usize];
    let mut acc = 1u64;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = acc;
        log[acc as usize] = i as u32;
        acc = mul_generic(r, acc, gen);
    }
    debug_assert_eq!(acc, 1, "generator order must be q-1");
    Tables { log, exp }
}

/// Dense polynomial arithmetic over GF(p), ascending coefficient vectors.
/// Only what modulus search and validation need; everything user-facing goes
/// through [`crate::poly`].
mod gfp {
    use crate::arith;

    fn deg(v: &[u64]) -> Option<usize> {
        v.iter().rposition(|&c| c != 0)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Reduces `v` modulo the monic polynomial `m` in place.
    pub(super) fn reduce_in_place(v: &mut Vec<u64>, m: &[u64], p: u64) {
        let md = m.len() - 1;
        while let Some(d) = deg(v) {
            if d < md {
                break;
            }
            let c = v[d];
            let shift = d - md;
            for (j, &mj) in m.iter().enumerate() {
                let sub = (c * mj) % p;
                let idx = shift + j;
                v[idx] = (v[idx] + p - sub) % p;
            }
        }
        trim(v);
        v.resize(md.max(v.len()), 0);
    }

    fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        reduce_in_place(&mut prod, m, p);
        trim(&mut prod);
        prod
    }

    fn pow_x_mod(e: u64, m: &[u64], p: u64) -> Vec<u64> {
        // x^e mod m by square and multiply
        let x = vec![0, 1];
        let mut base = x;
        let mut acc = vec![1];
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    fn pow_mod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = vec![1];
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let bd = deg(b).expect("division by zero");
        let lead_inv = arith::inv_mod_u64(b[bd], p);
        let mut r = a.to_vec();
        while let Some(d) = deg(&r) {
            if d < bd {
                break;
            }
            let c = (r[d] * lead_inv) % p;
            let shift = d - bd;
            for j in 0..=bd {
                let sub = (c * b[j]) % p;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        trim(&mut r);
        r
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin test over the prime field: f (monic, degree n) is irreducible
    /// iff x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for each prime
    /// r dividing n.
    pub(super) fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = deg(f).unwrap_or(0);
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let checkpoints: Vec<usize> = arith::prime_factors(n as u64)
            .iter()
            .map(|&r| n / r as usize)
            .collect();
        let mut h = pow_x_mod(p, f, p);
        let mut j = 1usize;
        loop {
            if checkpoints.contains(&j) {
                let g = gcd(&sub(&h, &x, p), f, p);
                if deg(&g) != Some(0) {
                    return false;
                }
            }
            if j == n {
                let mut hx = h.clone();
                trim(&mut hx);
                return hx == x;
            }
            h = pow_mod(&h, p, f, p);
            j += 1;
        }
    }
}
