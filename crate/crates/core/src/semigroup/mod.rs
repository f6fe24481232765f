//! Transformation semigroups: closure under composition, closure
//! certificates and the decomposition by fixed point.

mod bounds;
mod candidate;
mod identity;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::transformation::Transformation;

pub use bounds::{floor_e_factorial, theorem_bound, BOUND_LIMIT};
pub use candidate::{candidate_b, CANDIDATE_LIMIT};
pub use identity::{idempotents, satisfies_definite_identity, satisfies_gendef_identity, IdentityViolation};

/// Default limit on the number of elements produced by [`close`].
pub const DEFAULT_CAP: usize = 1_000_000;

/// A set of transformations of a common degree.
///
/// Unless `truncated` is set the element set is closed under composition.
#[derive(Clone, Debug)]
pub struct TransformationSemigroup {
    degree: usize,
    elements: Vec<Transformation>,
    index: HashMap<Transformation, usize>,
    generators: Option<Vec<Transformation>>,
    truncated: bool,
}

impl TransformationSemigroup {
    /// Wraps a set that is already known to be closed; it is checked anyway.
    ///
    /// Elements are sorted lexicographically and deduplicated.
    pub fn from_closed_elements(degree: usize, mut elements: Vec<Transformation>) -> Result<Self> {
        if let Some(f) = elements.iter().find(|f| f.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: f.degree(),
            });
        }
        elements.sort();
        elements.dedup();
        if let Some((f, g)) = closure_violation(&elements) {
            return Err(Error::Postcondition(alloc::format!(
                "set is not closed: {f} {g} = {} is missing",
                f.then(&g)
            )));
        }
        Ok(Self::assemble(degree, elements, None, false))
    }

    fn assemble(
        degree: usize,
        elements: Vec<Transformation>,
        generators: Option<Vec<Transformation>>,
        truncated: bool,
    ) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Self {
            degree,
            elements,
            index,
            generators,
            truncated,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn generators(&self) -> Option<&[Transformation]> {
        self.generators.as_deref()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, f: &Transformation) -> bool {
        self.index.contains_key(f)
    }

    pub fn position(&self, f: &Transformation) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn into_elements(self) -> Vec<Transformation> {
        self.elements
    }
}

/// Breadth-first closure of `generators` under right multiplication by generators.
///
/// Discovery order is deterministic: distinct generators first, in the given
/// order, then products in BFS order. When the element count would exceed
/// `cap`, the closure stops and the result is flagged as truncated. If the
/// generators alone exceed `cap`, all of them are kept and the result is
/// flagged.
pub fn close(generators: &[Transformation], cap: usize) -> Result<TransformationSemigroup> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let degree = first.degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: g.degree(),
        });
    }
    let mut gens: Vec<Transformation> = Vec::with_capacity(generators.len());
    let mut index: HashMap<Transformation, usize> = HashMap::new();
    for g in generators {
        if !index.contains_key(g) {
            index.insert(g.clone(), gens.len());
            gens.push(g.clone());
        }
    }
    let mut elements = gens.clone();
    let mut truncated = elements.len() > cap;
    let mut next = 0;
    'outer: while next < elements.len() && !truncated {
        for g in &gens {
            let product = elements[next].then(g);
            if !index.contains_key(&product) {
                if elements.len() >= cap {
                    truncated = true;
                    break 'outer;
                }
                index.insert(product.clone(), elements.len());
                elements.push(product);
            }
        }
        next += 1;
    }
    Ok(TransformationSemigroup {
        degree,
        elements,
        index,
        generators: Some(gens),
        truncated,
    })
}

/// First pair `(f, g)` in row-major order with `f g` outside the set, if any.
pub fn closure_violation(set: &[Transformation]) -> Option<(Transformation, Transformation)> {
    let members: HashSet<&[u32]> = set.iter().map(|f| f.images()).collect();
    let mut buf = Vec::new();
    for f in set {
        for g in set {
            if f.degree() != g.degree() {
                return Some((f.clone(), g.clone()));
            }
            buf.clear();
            buf.extend(f.images().iter().map(|&v| g.images()[v as usize]));
            if !members.contains(buf.as_slice()) {
                return Some((f.clone(), g.clone()));
            }
        }
    }
    None
}

/// Is the set closed under composition?
pub fn is_closed(set: &[Transformation]) -> bool {
    closure_violation(set).is_none()
}

/// The split `S = S_1 ⊎ … ⊎ S_n ⊎ residue`, where `S_i` collects the
/// nonpermutational elements with fixed point `i` and the residue holds the
/// permutational ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointDecomposition {
    pub classes: Vec<Vec<Transformation>>,
    pub residue: Vec<Transformation>,
}

impl FixedPointDecomposition {
    pub fn class(&self, state: usize) -> &[Transformation] {
        &self.classes[state]
    }
}

pub fn fixed_point_decomposition(s: &TransformationSemigroup) -> FixedPointDecomposition {
    let mut classes = vec![Vec::new(); s.degree()];
    let mut residue = Vec::new();
    for f in s.elements() {
        if f.is_nonpermutational() {
            classes[f.fixed_points()[0]].push(f.clone());
        } else {
            residue.push(f.clone());
        }
    }
    FixedPointDecomposition { classes, residue }
}

/// Words of length one through `max_len` over the generators, evaluated
/// left to right. Used by tests to cross-check [`close`].
pub fn products_up_to(generators: &[Transformation], max_len: usize) -> Vec<Transformation> {
    let mut seen: HashSet<Transformation> = HashSet::new();
    let mut frontier: VecDeque<Transformation> = generators.iter().cloned().collect();
    for _ in 1..max_len {
        let mut next = VecDeque::new();
        for f in frontier.iter() {
            for g in generators {
                next.push_back(f.then(g));
            }
        }
        for f in frontier.drain(..) {
            seen.insert(f);
        }
        frontier = next;
    }
    seen.extend(frontier);
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}
