//! Exact size formulas for all-nonpermutational subsemigroups of `T_n`.

use crate::error::{Error, Result};

/// Largest `n` accepted by the bound formulas.
pub const BOUND_LIMIT: usize = 20;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `Σ_{j=0}^{n-1} (n-1)!/j!`, which equals `⌊e·(n-1)!⌋` for `n ≥ 2`; exact integer arithmetic.
pub fn floor_e_factorial(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "floor_e_factorial",
            n,
            min: 1,
        });
    }
    if n > BOUND_LIMIT {
        return Err(Error::TooLarge {
            what: "floor_e_factorial",
            n,
            limit: BOUND_LIMIT,
        });
    }
    // term_j = (n-1)!/j!, walked from j = n-1 down to 0
    let mut term: u128 = 1;
    let mut sum: u128 = 1;
    for j in (0..n - 1).rev() {
        term = term
            .checked_mul(j as u128 + 1)
            .ok_or(Error::Overflow("floor_e_factorial"))?;
        sum = sum.checked_add(term).ok_or(Error::Overflow("floor_e_factorial"))?;
    }
    Ok(sum)
}

/// `n·((n-1)! - (n-3)!)`, defined for `n ≥ 3`.
pub fn theorem_bound(n: usize) -> Result<u128> {
    if n < 3 {
        return Err(Error::TooSmall {
            what: "theorem_bound",
            n,
            min: 3,
        });
    }
    if n > BOUND_LIMIT {
        return Err(Error::TooLarge {
            what: "theorem_bound",
            n,
            limit: BOUND_LIMIT,
        });
    }
    Ok(n as u128 * (factorial(n - 1) - factorial(n - 3)))
}
