//! Irreducibility testing, factorization into monic irreducibles, monic
//! enumeration, and the exact count of monic irreducibles per degree.
//!
//! The irreducibility test is Rabin's criterion: a monic f of degree n over
//! GF(q) is irreducible iff t^(q^n) = t (mod f) and gcd(t^(q^(n/r)) - t, f)
//! is 1 for every prime r dividing n. The iterated powers t^(q^j) mod f are
//! computed by repeated exponentiation by q, so no exponent ever exceeds q.
//!
//! Factorization runs the classic three stages (squarefree decomposition
//! with p-th-root extraction for vanishing derivatives, then distinct-degree,
//! then equal-degree splitting). Equal-degree splitting is randomized but
//! seeded from the input polynomial's coefficients, so results and factor
//! order are reproducible.

use num::bigint::BigInt;
use num::{BigUint, Signed, Zero};

use crate::arith;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{Degree, Poly};
use crate::rng::DetRng;

/// True iff f is irreducible over its field. Units (degree 0) are not
/// irreducible; degree 1 always is. A nonzero leading coefficient is divided
/// out first, so the test is insensitive to scaling.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(irreducible_monic(&f.monic()))
}

fn irreducible_monic(f: &Poly) -> bool {
    let n = f.degree().finite().expect("nonzero");
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = f.field();
    let q = field.q() as u128;
    let x = Poly::x(field);
    let checkpoints: Vec<usize> = arith::prime_factors(n as u64)
        .iter()
        .map(|&r| n / r as usize)
        .collect();
    let mut h = x.pow_mod(q, f); // t^(q^j) mod f, starting at j = 1
    let mut j = 1usize;
    loop {
        if checkpoints.contains(&j) {
            let g = h.sub(&x).gcd(f).expect("f nonzero");
            if g.degree() != Degree::Finite(0) {
                return false;
            }
        }
        if j == n {
            return h == x;
        }
        h = h.pow_mod(q, f);
        j += 1;
    }
}

/// A complete factorization: `leading * prod factors[i].0 ^ factors[i].1`,
/// with monic irreducible factors sorted by (degree, coefficient encoding).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: FieldElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.leading);
        for (f, mult) in &self.factors {
            for _ in 0..*mult {
                acc = acc.mul(f);
            }
        }
        acc
    }

    /// Degrees of the distinct irreducible factors (with repetition across
    /// distinct factors, not multiplicity).
    pub fn distinct_degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|(f, _)| f.degree().finite().expect("irreducible factors are nonzero"))
            .collect()
    }
}

/// Factors f into monic irreducibles times its leading coefficient.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let leading = f.leading().expect("nonzero");
    let monic = f.monic();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    if monic.degree() > Degree::Finite(0) {
        let mut squarefree = Vec::new();
        squarefree_parts(&monic, 1, &mut squarefree);
        for (part, mult) in squarefree {
            for (block, d) in distinct_degree_split(&part) {
                for irr in equal_degree_split(block, d) {
                    factors.push((irr, mult));
                }
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { leading, factors })
}

/// Squarefree decomposition of a monic nonconstant polynomial: pushes
/// pairwise-coprime squarefree parts with their multiplicities. When the
/// derivative vanishes the input is a p-th power and recursion continues on
/// its p-th root.
fn squarefree_parts(f: &Poly, mult: u32, acc: &mut Vec<(Poly, u32)>) {
    let field = f.field().clone();
    let p = u32::try_from(field.p()).expect("p-th power factor of astronomic degree");
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = pth_root_poly(f);
        squarefree_parts(&root, mult * p, acc);
        return;
    }
    let mut c = f.gcd(&deriv).expect("f nonzero");
    let mut w = f.divmod(&c).expect("gcd nonzero").0;
    let mut i = 1u32;
    while w.degree() != Degree::Finite(0) {
        let y = w.gcd(&c).expect("w nonzero");
        let z = w.divmod(&y).expect("gcd nonzero").0;
        if z.degree() != Degree::Finite(0) {
            acc.push((z, mult * i));
        }
        i += 1;
        w = y;
        c = c.divmod(&w).expect("w nonzero").0;
    }
    if c.degree() != Degree::Finite(0) {
        let root = pth_root_poly(&c);
        squarefree_parts(&root, mult * p, acc);
    }
}

/// The p-th root of a polynomial whose derivative vanishes: all exponents
/// are multiples of p and each coefficient has a unique p-th root.
fn pth_root_poly(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let deg = f.degree().finite().expect("nonzero");
    debug_assert_eq!(deg % p, 0);
    let mut coeffs = Vec::with_capacity(deg / p + 1);
    for j in 0..=deg / p {
        coeffs.push(field.pth_root(f.coeff(j * p)));
    }
    Poly::from_coeffs(field, coeffs)
}

/// Splits a monic squarefree polynomial into blocks of equal-degree factors:
/// returns (product of irreducible factors of degree d, d) pairs.
fn distinct_degree_split(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let q = field.q() as u128;
    let x = Poly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while rest
        .degree()
        .finite()
        .is_some_and(|deg| deg >= 2 * (d + 1))
    {
        d += 1;
        h = h.pow_mod(q, &rest); // t^(q^d) mod rest
        let g = rest.gcd(&h.sub(&x)).expect("rest nonzero");
        if g.degree() > Degree::Finite(0) {
            out.push((g.clone(), d));
            rest = rest.divmod(&g).expect("g nonzero").0;
            h = h.rem(&rest).expect("rest nonzero");
        }
    }
    if rest.degree() > Degree::Finite(0) {
        let deg = rest.degree().finite().expect("nonzero");
        out.push((rest, deg));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a block whose irreducible
/// factors all have degree d. Odd q uses the power-residue trick; q = 2^k
/// uses the absolute trace map. The random probes are seeded from the block
/// itself so factorizations are reproducible.
fn equal_degree_split(block: Poly, d: usize) -> Vec<Poly> {
    let total = block.degree().finite().expect("nonzero block");
    if total == d {
        return vec![block];
    }
    let field = block.field().clone();
    let q = field.q();
    let mut key: Vec<u64> = vec![q, d as u64];
    key.extend(block.coeffs().iter().map(|c| c.encoding()));
    let mut rng = DetRng::keyed(&key);
    let qd = arith::checked_pow_u128(q, d as u32)
        .expect("equal-degree block beyond supported field sizes");

    let mut done = Vec::new();
    let mut todo = vec![block];
    while let Some(f) = todo.pop() {
        let deg = f.degree().finite().expect("nonzero");
        if deg == d {
            done.push(f);
            continue;
        }
        let split = loop {
            let probe = random_poly_below(&mut rng, &field, deg);
            if probe.degree() < Degree::Finite(1) {
                continue;
            }
            let shared = f.gcd(&probe).expect("f nonzero");
            if is_proper(&shared, deg) {
                break shared;
            }
            let candidate = if q % 2 == 1 {
                // probe^((q^d - 1)/2) is +-1 mod each factor
                let power = probe.pow_mod((qd - 1) / 2, &f);
                let shifted = power.sub(&Poly::one(&field));
                f.gcd(&shifted).expect("f nonzero")
            } else {
                // char 2: absolute trace probe + probe^2 + ... + probe^(2^(m-1))
                let m = field.k() as usize * d;
                let mut acc = probe.clone();
                let mut cur = probe.clone();
                for _ in 1..m {
                    cur = cur.mul(&cur).rem(&f).expect("f nonzero");
                    acc = acc.add(&cur);
                }
                f.gcd(&acc).expect("f nonzero")
            };
            if is_proper(&candidate, deg) {
                break candidate;
            }
        };
        let rest = f.divmod(&split).expect("split nonzero").0;
        todo.push(split.monic());
        todo.push(rest.monic());
    }
    done
}

fn is_proper(g: &Poly, whole_degree: usize) -> bool {
    match g.degree() {
        Degree::Finite(d) => d >= 1 && d < whole_degree,
        Degree::NegInf => false,
    }
}

fn random_poly_below(rng: &mut DetRng, field: &Field, degree_bound: usize) -> Poly {
    let q = field.q();
    let coeffs: Vec<FieldElem> = (0..degree_bound)
        .map(|_| field.elem(rng.below(q)))
        .collect();
    Poly::from_coeffs(field, coeffs)
}

/// The exact number of monic irreducibles of degree d over GF(q):
/// (1/d) sum over e | d of mu(d/e) q^e. Computed in big integers.
pub fn monic_irreducible_count(q: u64, d: u32) -> Result<BigUint> {
    if d < 1 {
        return Err(Error::InvalidParameter(
            "irreducible count requires degree at least 1".into(),
        ));
    }
    if q < 2 {
        return Err(Error::InvalidParameter("field order must be at least 2".into()));
    }
    // Squarefree divisors of d are subsets of its prime factors; mu alternates
    // with subset size.
    let primes = arith::prime_factors(d as u64);
    let mut total = BigInt::zero();
    for mask in 0u32..(1 << primes.len()) {
        let mut divisor = 1u64;
        for (i, &p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                divisor *= p;
            }
        }
        let term = BigInt::from(q).pow(d / divisor as u32);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let (quo, rem) = num::Integer::div_rem(&total, &BigInt::from(d));
    debug_assert!(rem.is_zero());
    debug_assert!(!quo.is_negative());
    Ok(quo.to_biguint().expect("count is nonnegative"))
}

/// Iterator over all monic polynomials of degree d, in increasing encoding
/// of the non-leading coefficient vector.
pub struct MonicIter {
    field: Field,
    d: u32,
    next: u128,
    end: u128,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.end {
            return None;
        }
        let p = Poly::monic_from_index(&self.field, self.d, self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

/// Enumerates the q^d monic polynomials of degree d. Errors when q^d exceeds
/// the budget, signaling the caller to shrink the sweep.
pub fn enumerate_monic(field: &Field, d: u32, budget: Budget) -> Result<MonicIter> {
    let total = arith::checked_pow_u128(field.q(), d).unwrap_or(u128::MAX);
    budget.check(total)?;
    Ok(MonicIter {
        field: field.clone(),
        d,
        next: 0,
        end: total,
    })
}

/// Enumerates the monic irreducibles of degree d, in the same order as
/// [`enumerate_monic`].
pub fn enumerate_monic_irreducible(
    field: &Field,
    d: u32,
    budget: Budget,
) -> Result<impl Iterator<Item = Poly>> {
    Ok(enumerate_monic(field, d, budget)?.filter(irreducible_monic))
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
    fn irreducibility_examples() {
        let f3 = gf(3);
        assert!(is_irreducible(&poly("t^2+1", &f3)).unwrap());
        let f5 = gf(5);
        assert!(!is_irreducible(&poly("t^2+1", &f5)).unwrap()); // 2^2 = -1
        let f2 = gf(2);
        assert!(is_irreducible(&poly("t^2+t+1", &f2)).unwrap());
        assert!(!is_irreducible(&poly("t^2", &f2)).unwrap());
        assert!(!is_irreducible(&poly("2", &f3)).unwrap()); // units are not irreducible
        assert!(is_irreducible(&poly("t+2", &f3)).unwrap());
        assert!(is_irreducible(&Poly::x(&f3)).unwrap());
        assert!(is_irreducible(&Poly::zero(&f3)).is_err());
        // scaling does not change irreducibility
        assert!(is_irreducible(&poly("2t^2+2", &f3)).unwrap());
    }

    #[test]
    fn irreducibility_over_extension_fields() {
        let f9 = Field::new(3, 2).unwrap();
        // t^2 + 1 factors over GF(9) since -1 is a square there
        let sq = Poly::from_encodings(&f9, &[1, 0, 1]).unwrap();
        assert!(!is_irreducible(&sq).unwrap());
        let count = enumerate_monic_irreducible(&f9, 2, Budget::default())
            .unwrap()
            .count();
        assert_eq!(count, 36); // (81 - 9)/2
    }

    #[test]
    fn factorize_examples() {
        let f3 = gf(3);
        let fz = factorize(&poly("t^2+2t+1", &f3)).unwrap();
        assert_eq!(fz.leading, f3.one());
        assert_eq!(fz.factors, vec![(poly("t+1", &f3), 2)]);

        let fz = factorize(&poly("t^3+2t^2+t+2", &f3)).unwrap();
        assert_eq!(
            fz.factors,
            vec![(poly("t+2", &f3), 1), (poly("t^2+1", &f3), 1)]
        );

        let f2 = gf(2);
        let fz = factorize(&poly("t^4+t^2", &f2)).unwrap();
        assert_eq!(
            fz.factors,
            vec![(poly("t", &f2), 2), (poly("t+1", &f2), 2)]
        );

        assert!(factorize(&Poly::zero(&f3)).is_err());
        let unit = factorize(&poly("2", &f3)).unwrap();
        assert_eq!(unit.leading, f3.elem(2));
        assert!(unit.factors.is_empty());
    }

    #[test]
    fn factorize_handles_pth_powers() {
        let f3 = gf(3);
        // (t^2+1)^3 has zero derivative
        let base = poly("t^2+1", &f3);
        let cube = base.mul(&base).mul(&base);
        let fz = factorize(&cube).unwrap();
        assert_eq!(fz.factors, vec![(base, 3)]);
        assert_eq!(fz.product(&f3), cube);
    }

    #[test]
    fn factorize_multiply_round_trip_seeded() {
        let mut rng = DetRng::keyed(&[0xfac7]);
        for q in [2u64, 3, 4, 5, 9] {
            let field = Field::from_order(q).unwrap();
            let irreducibles: Vec<Poly> = (1..=3u32)
                .flat_map(|d| {
                    enumerate_monic_irreducible(&field, d, Budget::default())
                        .unwrap()
                        .collect::<Vec<_>>()
                })
                .collect();
            for _ in 0..25 {
                let mut expected: Vec<(Poly, u32)> = Vec::new();
                let mut product = Poly::constant(&field, field.elem(1 + rng.below(q - 1)));
                for _ in 0..(1 + rng.below(3)) {
                    let pick = irreducibles[rng.below(irreducibles.len() as u64) as usize].clone();
                    let mult = 1 + rng.below(2) as u32;
                    for _ in 0..mult {
                        product = product.mul(&pick);
                    }
                    match expected.iter_mut().find(|(f, _)| *f == pick) {
                        Some((_, m)) => *m += mult,
                        None => expected.push((pick, mult)),
                    }
                }
                expected.sort_by(|a, b| a.0.canonical_cmp(&b.0));
                let fz = factorize(&product).unwrap();
                assert_eq!(fz.factors, expected, "q={}", q);
                assert_eq!(fz.product(&field), product);
                for (f, _) in &fz.factors {
                    assert!(is_irreducible(f).unwrap());
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(monic_irreducible_count(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(monic_irreducible_count(3, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(monic_irreducible_count(2, 4).unwrap(), BigUint::from(3u32));
        assert!(monic_irreducible_count(2, 0).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let f3 = gf(3);
        let linears: Vec<String> = enumerate_monic(&f3, 1, Budget::default())
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(linears, vec!["0,1", "1,1", "2,1"]);

        let quadratics: Vec<Poly> = enumerate_monic_irreducible(&f3, 2, Budget::default())
            .unwrap()
            .collect();
        assert_eq!(
            quadratics,
            vec![
                poly("t^2+1", &f3),
                poly("t^2+t+2", &f3),
                poly("t^2+2t+2", &f3)
            ]
        );

        let f2 = gf(2);
        let consts: Vec<Poly> = enumerate_monic(&f2, 0, Budget::default()).unwrap().collect();
        assert_eq!(consts, vec![Poly::one(&f2)]);

        assert!(matches!(
            enumerate_monic(&f3, 40, Budget(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn counts_match_enumeration_small() {
        for q in [2u64, 3, 4, 5] {
            let field = Field::from_order(q).unwrap();
            for d in 1..=4u32 {
                let counted = monic_irreducible_count(q, d).unwrap();
                let enumerated = enumerate_monic_irreducible(&field, d, Budget::default())
                    .unwrap()
                    .count();
                assert_eq!(counted, BigUint::from(enumerated), "q={} d={}", q, d);
            }
        }
    }

    #[test]
    fn minimal_polynomial_partition() {
        // sum over d' | d of d' pi(d') = q^d
        for q in [2u64, 3, 5, 9, 16] {
            for d in 1..=8u32 {
                let mut sum = BigUint::zero();
                for dd in 1..=d {
                    if d % dd == 0 {
                        sum += monic_irreducible_count(q, dd).unwrap() * BigUint::from(dd);
                    }
                }
                assert_eq!(sum, BigUint::from(q).pow(d), "q={} d={}", q, d);
            }
        }
    }
}
