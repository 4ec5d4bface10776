//! Exact experiments with irreducible polynomials over small finite fields.
//!
//! The crate computes two counting functions over GF(q)[t] by exhaustive
//! enumeration: the number of ways to write a monic polynomial F of degree n
//! as a sum of monic irreducibles of degrees n-1 and n (a polynomial Goldbach
//! count), and the number of monic irreducibles F of degree n with F + A also
//! irreducible (a twin count for the gap polynomial A). Alongside the exact
//! counts it evaluates the heuristic main terms and singular-series products
//! they are usually compared against, with rigorous truncation error bounds,
//! and mechanically checks the combinatorial identities (global sum
//! identities, fiber constancy of shift specializations, double counting,
//! discriminant-locus bounds) that tie the two views together.
//!
//! Everything is deterministic: field construction, factorization, sampling
//! and sweep output are reproducible bit for bit from their inputs.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

mod arith;
pub mod bipoly;
pub mod budget;
pub mod counting;
pub mod error;
pub mod family;
pub mod field;
pub mod heuristic;
pub mod irr;
pub mod poly;
pub mod rng;

pub use bipoly::BiPoly;
pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use poly::{parse_poly, Degree, Poly};

/// Which additive pattern a computation concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    /// Decompositions F = g + h with g, h monic irreducible, deg g = n - 1,
    /// deg h = n.
    Goldbach,
    /// Monic irreducible F of degree n with F + A also irreducible.
    Twin,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Goldbach => write!(f, "goldbach"),
            Problem::Twin => write!(f, "twin"),
        }
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "goldbach" => Ok(Problem::Goldbach),
            "twin" => Ok(Problem::Twin),
            other => Err(Error::InvalidParameter(format!(
                "unknown problem '{}', expected goldbach or twin",
                other
            ))),
        }
    }
}
