//! Transformations of a finite set `{0, .., n-1}` acting on the right.
//!
//! A [`Transformation`] stores its image vector; `compose(f, g)` is the map
//! sending `i` to `(i f) g`, i.e. apply `f` first.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest degree for which [`enumerate_np`] will run.
pub const ENUMERATION_LIMIT: usize = 8;

/// A total self-map of `{0, .., degree-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<u32>,
}

impl Transformation {
    /// Builds a transformation from 0-based images.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        if let Some(&bad) = images.iter().find(|&&v| v as usize >= degree) {
            return Err(Error::ImageOutOfRange {
                image: bad as usize,
                degree,
            });
        }
        Ok(Self { images })
    }

    /// Builds a transformation from the 1-based vector notation, e.g. `&[2, 3, 3]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        let mut out = Vec::with_capacity(degree);
        for &v in images {
            if v == 0 || v > degree {
                return Err(Error::ImageOutOfRange { image: v, degree });
            }
            out.push((v - 1) as u32);
        }
        Self::new(out)
    }

    pub(crate) fn from_vec_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(!images.is_empty());
        debug_assert!(images.iter().all(|&v| (v as usize) < images.len()));
        Self { images }
    }

    pub fn identity(degree: usize) -> Self {
        assert!(degree > 0, "degree must be positive");
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// The constant map with value `value` (0-based).
    pub fn constant(degree: usize, value: usize) -> Self {
        assert!(value < degree, "constant value out of range");
        Self {
            images: vec![value as u32; degree],
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// 1-based image vector, as printed.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    /// `self` followed by `other`: `i ↦ (i·self)·other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Composition without the degree check. Panics on mismatched degrees.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            images: self.images.iter().map(|&v| other.images[v as usize]).collect(),
        }
    }

    /// `self` composed with itself `k ≥ 1` times, by repeated squaring.
    pub fn power(&self, k: u64) -> Self {
        assert!(k >= 1, "power must be at least 1");
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.then(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.then(&base);
            }
        }
        result.expect("k >= 1")
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&v| self.images[v as usize] == v)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn is_constant(&self) -> bool {
        self.images.iter().all(|&v| v == self.images[0])
    }

    /// Distinct values in the image, sorted.
    pub fn image_set(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        for &v in &self.images {
            seen[v as usize] = true;
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    /// All `i` with `i·f = i`, ascending.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i as u32 == v)
            .map(|(i, _)| i)
            .collect()
    }

    /// The unique fixed point of a nonpermutational transformation.
    pub fn fix(&self) -> Result<usize> {
        if !self.is_nonpermutational() {
            return Err(Error::Permutational { what: self.to_string() });
        }
        Ok(self.fixed_points()[0])
    }

    /// States lying on a closed path of the functional graph.
    ///
    /// Computed as the stable value of `X ↦ X·f` starting from the full set:
    /// the images shrink until only the cyclic states remain.
    pub fn recurrent_states(&self) -> Vec<usize> {
        let n = self.degree();
        let mut current = vec![true; n];
        let mut size = n;
        loop {
            let mut next = vec![false; n];
            for (i, &inside) in current.iter().enumerate() {
                if inside {
                    next[self.images[i] as usize] = true;
                }
            }
            let next_size = next.iter().filter(|&&b| b).count();
            if next_size == size {
                break;
            }
            current = next;
            size = next_size;
        }
        current.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    /// Nonpermutational test by cycle analysis: the states on closed paths
    /// must be a single fixed point.
    pub fn is_nonpermutational_by_cycles(&self) -> bool {
        let cyclic = self.recurrent_states();
        cyclic.len() == 1 && self.image(cyclic[0]) == cyclic[0]
    }

    /// Nonpermutational test through the idempotent power: it must be constant.
    pub fn is_nonpermutational_by_idempotent(&self) -> bool {
        self.idempotent_power().is_constant()
    }

    /// `Xf = X` forces `|X| = 1` for every nonempty `X`.
    #[inline]
    pub fn is_nonpermutational(&self) -> bool {
        self.is_nonpermutational_by_cycles()
    }

    /// The unique idempotent power `f^ω`.
    ///
    /// For `m` a common multiple of all cycle lengths that is at least the
    /// longest tail, `i·f^m` is obtained by walking `i` onto its cycle and
    /// then stepping backwards along the cycle by the tail length. This
    /// never materialises `m` itself.
    pub fn idempotent_power(&self) -> Self {
        let n = self.degree();
        const UNSEEN: u32 = u32::MAX;
        // cycle_id / cycle_pos for cyclic states; cycles stored as sequences.
        let mut cycle_of = vec![UNSEEN; n];
        let mut pos_in_cycle = vec![0u32; n];
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut visit = vec![UNSEEN; n];
        for start in 0..n {
            if visit[start] != UNSEEN {
                continue;
            }
            let mut j = start;
            while visit[j] == UNSEEN {
                visit[j] = start as u32;
                j = self.images[j] as usize;
            }
            if visit[j] == start as u32 {
                // j is on a new cycle
                let mut cycle = Vec::new();
                let mut k = j;
                loop {
                    cycle_of[k] = cycles.len() as u32;
                    pos_in_cycle[k] = cycle.len() as u32;
                    cycle.push(k as u32);
                    k = self.images[k] as usize;
                    if k == j {
                        break;
                    }
                }
                cycles.push(cycle);
            }
        }
        // tail length and entry point per state, memoised.
        let mut tail = vec![UNSEEN; n];
        let mut entry = vec![0u32; n];
        for i in 0..n {
            if cycle_of[i] != UNSEEN {
                tail[i] = 0;
                entry[i] = i as u32;
            }
        }
        let mut path = Vec::new();
        for i in 0..n {
            let mut j = i;
            while tail[j] == UNSEEN {
                path.push(j);
                j = self.images[j] as usize;
            }
            let (mut t, e) = (tail[j], entry[j]);
            while let Some(k) = path.pop() {
                t += 1;
                tail[k] = t;
                entry[k] = e;
            }
        }
        let images = (0..n)
            .map(|i| {
                let e = entry[i] as usize;
                let cycle = &cycles[cycle_of[e] as usize];
                let len = cycle.len();
                let back = tail[i] as usize % len;
                let pos = (pos_in_cycle[e] as usize + len - back) % len;
                cycle[pos]
            })
            .collect();
        Self { images }
    }

    /// Tree structure of a nonpermutational transformation.
    pub fn ila_structure(&self) -> Result<IlaStructure> {
        let root = self.fix()?;
        let n = self.degree();
        let parent = (0..n)
            .map(|i| if i == root { None } else { Some(self.image(i)) })
            .collect();
        let mut depth: Vec<Option<usize>> = vec![None; n];
        depth[root] = Some(0);
        let mut path = Vec::new();
        for i in 0..n {
            let mut j = i;
            while depth[j].is_none() {
                path.push(j);
                j = self.image(j);
            }
            let mut d = depth[j].unwrap();
            while let Some(k) = path.pop() {
                d += 1;
                depth[k] = Some(d);
            }
        }
        Ok(IlaStructure {
            root,
            parent,
            depth: depth.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Conjugate by the permutation `sigma`: `sigma⁻¹ · self · sigma`.
    pub fn conjugate(&self, sigma: &[u32]) -> Self {
        let n = self.degree();
        let mut inv = vec![0u32; n];
        for (i, &s) in sigma.iter().enumerate() {
            inv[s as usize] = i as u32;
        }
        Self {
            images: (0..n).map(|i| sigma[self.images[inv[i] as usize] as usize]).collect(),
        }
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str(")")
    }
}

impl FromStr for Transformation {
    type Err = Error;

    /// Parses `(2,3,3)`; whitespace anywhere is ignored. Columns in errors are 1-based.
    fn from_str(s: &str) -> Result<Self> {
        let err = |position: usize, reason: &str| Error::Parse {
            position,
            reason: reason.to_string(),
        };
        let mut chars = s
            .char_indices()
            .map(|(i, c)| (i + 1, c))
            .filter(|(_, c)| !c.is_whitespace());
        match chars.next() {
            Some((_, '(')) => {}
            Some((p, _)) => return Err(err(p, "expected `(`")),
            None => return Err(err(1, "empty input")),
        }
        let mut values: Vec<(usize, usize)> = Vec::new();
        let mut digits = String::new();
        let mut digits_at = 0;
        let mut closed = false;
        for (p, c) in chars.by_ref() {
            match c {
                '0'..='9' => {
                    if digits.is_empty() {
                        digits_at = p;
                    }
                    digits.push(c);
                }
                ',' | ')' => {
                    if digits.is_empty() {
                        return Err(err(p, "expected a number"));
                    }
                    let v = digits
                        .parse::<usize>()
                        .map_err(|_| err(digits_at, "number too large"))?;
                    values.push((digits_at, v));
                    digits.clear();
                    if c == ')' {
                        closed = true;
                        break;
                    }
                }
                _ => return Err(err(p, "unexpected character")),
            }
        }
        if !closed {
            return Err(err(s.chars().count().max(1), "missing `)`"));
        }
        if let Some((p, _)) = chars.next() {
            return Err(err(p, "trailing input after `)`"));
        }
        let degree = values.len();
        for &(p, v) in &values {
            if v == 0 || v > degree {
                return Err(Error::Parse {
                    position: p,
                    reason: alloc::format!("image {v} outside 1..={degree}"),
                });
            }
        }
        Ok(Self {
            images: values.iter().map(|&(_, v)| (v - 1) as u32).collect(),
        })
    }
}

/// Functional-graph shape of a nonpermutational transformation: a tree
/// directed towards its unique fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlaStructure {
    pub root: usize,
    /// `parent[i] = Some(i·f)` for every non-root state.
    pub parent: Vec<Option<usize>>,
    /// Distance from each state to the root.
    pub depth: Vec<usize>,
}

/// A map `{0, .., k-1} → {0, .., n-1}` with `k ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialFunction {
    codomain: usize,
    images: Vec<u32>,
}

impl PartialFunction {
    pub fn new(codomain: usize, images: Vec<u32>) -> Result<Self> {
        if images.len() > codomain {
            return Err(Error::DegreeMismatch {
                left: images.len(),
                right: codomain,
            });
        }
        if let Some(&bad) = images.iter().find(|&&v| v as usize >= codomain) {
            return Err(Error::ImageOutOfRange {
                image: bad as usize,
                degree: codomain,
            });
        }
        Ok(Self { codomain, images })
    }

    pub fn from_one_based(codomain: usize, images: &[usize]) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&v| v == 0 || v > codomain) {
            return Err(Error::ImageOutOfRange {
                image: bad,
                degree: codomain,
            });
        }
        Self::new(codomain, images.iter().map(|&v| (v - 1) as u32).collect())
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `i ≤ i·f` for every `i`, with equality only at the last codomain point.
    pub fn is_elevating(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| {
            let v = v as usize;
            i < v || (i == v && i + 1 == self.codomain)
        })
    }
}

/// Every self-map of `{0, .., n-1}` in lexicographic order of image vectors.
pub fn all_transformations(n: usize) -> impl Iterator<Item = Transformation> {
    assert!(n > 0, "degree must be positive");
    let mut current: Option<Vec<u32>> = Some(vec![0; n]);
    core::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        let mut i = n;
        while i > 0 {
            i -= 1;
            if (next[i] as usize) + 1 < n {
                next[i] += 1;
                current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(Transformation::from_vec_unchecked(out))
    })
}

/// All nonpermutational transformations of degree `n`, lexicographically.
///
/// Built by depth-first assignment of images position by position, pruning
/// any partial assignment that already closes a cycle other than a single
/// fixed point.
pub fn enumerate_np(n: usize) -> Result<Vec<Transformation>> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "enumerate_np",
            n,
            min: 1,
        });
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "enumerate_np",
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut out = Vec::new();
    let mut images = vec![0u32; n];
    extend_np(&mut images, 0, None, &mut out);
    Ok(out)
}

fn extend_np(images: &mut [u32], pos: usize, root: Option<usize>, out: &mut Vec<Transformation>) {
    let n = images.len();
    if pos == n {
        if root.is_some() {
            out.push(Transformation::from_vec_unchecked(images.to_vec()));
        }
        return;
    }
    for v in 0..n {
        images[pos] = v as u32;
        let mut new_root = root;
        if v == pos {
            if root.is_some() {
                continue;
            }
            new_root = Some(pos);
        } else if closes_cycle(images, pos) {
            continue;
        }
        extend_np(images, pos + 1, new_root, out);
    }
}

/// Does following images from `pos` through assigned positions return to `pos`?
fn closes_cycle(images: &[u32], pos: usize) -> bool {
    let mut j = images[pos] as usize;
    for _ in 0..=pos {
        if j == pos {
            return true;
        }
        if j > pos || images[j] as usize == j {
            return false;
        }
        j = images[j] as usize;
    }
    false
}
