use crate::error::{Error, Result};

/// Cap on the number of polynomials an enumeration may visit in one call.
///
/// Exhaustive sweeps grow like q^n; the budget turns an accidental blowup
/// into a reported error instead of a runaway loop. The default admits 10^8
/// iterations and can be overridden per call (the CLI also honors the
/// `FFPRIME_BUDGET` environment variable).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: u64 = 100_000_000;

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT)
    }
}
