use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{closure_violation, TransformationSemigroup};
use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// Largest degree accepted by [`candidate_b`].
pub const CANDIDATE_LIMIT: usize = 8;

/// The semigroup `B`: for each `i`, every map that sends each `j < i` to
/// something strictly larger and every `j ≥ i` to `i`.
///
/// The result is certified closed and all-nonpermutational before it is
/// returned. Elements are in lexicographic order.
pub fn candidate_b(n: usize) -> Result<TransformationSemigroup> {
    if n < 2 {
        return Err(Error::TooSmall {
            what: "candidate_b",
            n,
            min: 2,
        });
    }
    if n > CANDIDATE_LIMIT {
        return Err(Error::TooLarge {
            what: "candidate_b",
            n,
            limit: CANDIDATE_LIMIT,
        });
    }
    let mut elements = Vec::new();
    for fixed in 0..n {
        let mut images = vec![fixed as u32; n];
        push_elevated(&mut images, 0, fixed, &mut elements);
    }
    elements.sort();
    if let Some(f) = elements.iter().find(|f| !f.is_nonpermutational()) {
        return Err(Error::Postcondition(format!("candidate element {f} is permutational")));
    }
    if let Some((f, g)) = closure_violation(&elements) {
        return Err(Error::Postcondition(format!("candidate set not closed at {f} {g}")));
    }
    Ok(TransformationSemigroup::assemble(n, elements, None, false))
}

fn push_elevated(images: &mut [u32], j: usize, fixed: usize, out: &mut Vec<Transformation>) {
    if j == fixed {
        out.push(Transformation::from_vec_unchecked(images.to_vec()));
        return;
    }
    for v in j + 1..images.len() {
        images[j] = v as u32;
        push_elevated(images, j + 1, fixed, out);
    }
}
