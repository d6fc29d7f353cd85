use crate::error::{Error, Result};

/// Runtime caps on the exponentially growing operations.
///
/// Every cap is a plain value; nothing here is global, so computations with
/// different limits can run side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground set whose set compositions may be enumerated.
    pub max_enumeration: usize,
    /// Largest number of blockwise splits a single coproduct term may produce.
    pub max_coproduct_terms: u64,
    /// Largest number of terms an orbit sum / descent basis expansion may have.
    pub max_expansion_terms: u64,
    /// Largest universe for the endomorphism oracle.
    pub max_universe: usize,
    /// Largest degree for which descent classes are enumerated over S_n.
    pub max_descent_class_n: usize,
    /// Largest weight accepted by the fixed space check.
    pub max_fixed_space_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enumeration: 10,
            max_coproduct_terms: 1 << 24,
            max_expansion_terms: 1 << 24,
            max_universe: 4,
            max_descent_class_n: 8,
            max_fixed_space_n: 5,
        }
    }
}

impl Limits {
    pub(crate) fn check_enumeration(&self, n: usize) -> Result<()> {
        if n > self.max_enumeration {
            return Err(Error::size("set composition enumeration", n as u128, self.max_enumeration as u128));
        }
        Ok(())
    }

    pub(crate) fn check_universe(&self, n: usize) -> Result<()> {
        if n > self.max_universe {
            return Err(Error::size("oracle universe", n as u128, self.max_universe as u128));
        }
        Ok(())
    }
}
