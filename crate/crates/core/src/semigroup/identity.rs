//! Semigroup identities characterising definite (`y x^ω = x^ω`) and
//! generalized definite (`x^ω y x^ω = x^ω`) languages.

use alloc::vec::Vec;

use hashbrown::HashSet;

use super::TransformationSemigroup;
use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// A pair `(x, y)` on which an identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub x: Transformation,
    pub y: Transformation,
}

/// Checks `y x^ω = x^ω` for all `x, y`; `Ok(None)` means it holds.
///
/// `x` runs over elements in order, `y` in the inner loop, so the reported
/// violation is the first one in that order.
pub fn satisfies_definite_identity(s: &TransformationSemigroup) -> Result<Option<IdentityViolation>> {
    check(s, |x_omega, y| y.then(x_omega) == *x_omega)
}

/// Checks `x^ω y x^ω = x^ω` for all `x, y`; `Ok(None)` means it holds.
pub fn satisfies_gendef_identity(s: &TransformationSemigroup) -> Result<Option<IdentityViolation>> {
    check(s, |x_omega, y| x_omega.then(y).then(x_omega) == *x_omega)
}

fn check(
    s: &TransformationSemigroup,
    holds: impl Fn(&Transformation, &Transformation) -> bool,
) -> Result<Option<IdentityViolation>> {
    if s.is_truncated() {
        return Err(Error::Truncated);
    }
    // the outcome for x depends only on x^ω
    let mut done: HashSet<Transformation> = HashSet::new();
    for x in s.elements() {
        let x_omega = x.idempotent_power();
        if done.contains(&x_omega) {
            continue;
        }
        if let Some(y) = s.elements().iter().find(|y| !holds(&x_omega, y)) {
            return Ok(Some(IdentityViolation {
                x: x.clone(),
                y: y.clone(),
            }));
        }
        done.insert(x_omega);
    }
    Ok(None)
}

/// Elements of `s` that are idempotent, in element order.
pub fn idempotents(s: &TransformationSemigroup) -> Vec<Transformation> {
    s.elements().iter().filter(|f| f.is_idempotent()).cloned().collect()
}
