//! Combinatorics of the simplicial category Δ and the finite-maps category
//! Fin: raw set maps `[m] -> [n]`, the coface/codegeneracy generators,
//! canonical face/degeneracy composites, subset orderings and covering
//! tuples.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * `[n]` is `{0, ..., n}`; `[n-1]` written in index positions means
//!   `{0, ..., n-1}`.
//! * Operators on a simplicial object compose classically: for
//!   `I = {i_1 < ... < i_r}`, `s_I = s_{i_r} ∘ ... ∘ s_{i_1}` (lowest index
//!   applied first) and `d_I = d_{i_1} ∘ ... ∘ d_{i_r}` (highest index
//!   applied first), so that `d_I s_I = id`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A set map `[m] -> [n]`, monotone when it lives in Δ.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SimplicialMap {
    source_dim: usize,
    target_dim: usize,
    values: Vec<usize>,
    monotone: bool,
}

impl SimplicialMap {
    pub fn new(source_dim: usize, target_dim: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != source_dim + 1 {
            return Err(Error::DimensionMismatch(format!(
                "map [{}] -> [{}] needs {} values, got {}",
                source_dim,
                target_dim,
                source_dim + 1,
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v > target_dim) {
            return Err(Error::IndexOutOfRange(format!(
                "value {v} exceeds target dimension {target_dim}"
            )));
        }
        let monotone = values.windows(2).all(|w| w[0] <= w[1]);
        Ok(SimplicialMap { source_dim, target_dim, values, monotone })
    }

    pub fn identity(n: usize) -> Self {
        SimplicialMap {
            source_dim: n,
            target_dim: n,
            values: (0..=n).collect(),
            monotone: true,
        }
    }

    /// Coface `δ_i : [n-1] -> [n]`, skipping the value `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface index");
        let values = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
        SimplicialMap { source_dim: n - 1, target_dim: n, values, monotone: true }
    }

    /// Codegeneracy `σ_i : [n+1] -> [n]`, hitting the value `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n, "codegeneracy index");
        let values = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        SimplicialMap { source_dim: n + 1, target_dim: n, values, monotone: true }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// Image of the top vertex of the source, `α(m)`.
    pub fn top_value(&self) -> usize {
        self.values[self.source_dim]
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim == self.target_dim
            && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Pointwise composite `g ∘ f` of `f : [m] -> [n]` and `g : [n] -> [p]`.
pub fn compose(f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
    if f.target_dim != g.source_dim {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose [{}]->[{}] with [{}]->[{}]",
            f.source_dim, f.target_dim, g.source_dim, g.target_dim
        )));
    }
    let values = f.values.iter().map(|&v| g.values[v]).collect();
    SimplicialMap::new(f.source_dim, g.target_dim, values)
}

/// Strictly increasing subset of `{0, ..., ambient-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct IndexSubset {
    ambient: usize,
    members: Vec<usize>,
}

impl IndexSubset {
    pub fn new(ambient: usize, members: Vec<usize>) -> Result<Self> {
        if !members.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "members not strictly increasing: {members:?}"
            )));
        }
        if let Some(&m) = members.last() {
            if m >= ambient {
                return Err(Error::IndexOutOfRange(format!(
                    "member {m} not below ambient {ambient}"
                )));
            }
        }
        Ok(IndexSubset { ambient, members })
    }

    pub fn empty(ambient: usize) -> Self {
        IndexSubset { ambient, members: vec![] }
    }

    /// The full subset `{0, ..., ambient-1}`.
    pub fn full(ambient: usize) -> Self {
        IndexSubset { ambient, members: (0..ambient).collect() }
    }

    pub fn from_bits(ambient: usize, bits: u64) -> Self {
        let members = (0..ambient).filter(|i| bits >> i & 1 == 1).collect();
        IndexSubset { ambient, members }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.ambient
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &IndexSubset) -> IndexSubset {
        assert_eq!(self.ambient, other.ambient);
        let mut members: Vec<usize> =
            self.members.iter().chain(&other.members).copied().collect();
        members.sort_unstable();
        members.dedup();
        IndexSubset { ambient: self.ambient, members }
    }

    pub fn intersection(&self, other: &IndexSubset) -> IndexSubset {
        assert_eq!(self.ambient, other.ambient);
        let members = self
            .members
            .iter()
            .filter(|&&i| other.contains(i))
            .copied()
            .collect();
        IndexSubset { ambient: self.ambient, members }
    }

    /// Same members viewed inside a different ambient set.
    pub fn with_ambient(&self, ambient: usize) -> Result<IndexSubset> {
        IndexSubset::new(ambient, self.members.clone())
    }
}

impl std::fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CompositeKind {
    Face,
    Degeneracy,
}

/// The underlying Δ-map of the canonical composite `s_I` or `d_I`, based at
/// `level`:
///
/// * `d_I = d_{i_1} ∘ ... ∘ d_{i_r}` acting on level `level` corresponds to
///   the cosimplicial chain `δ_{i_1}; ...; δ_{i_r}` giving `[level-r] -> [level]`;
/// * `s_I = s_{i_r} ∘ ... ∘ s_{i_1}` corresponds to `σ_{i_r}; ...; σ_{i_1}`
///   giving `[level+r] -> [level]`.
pub fn canonical_composite(
    subset: &IndexSubset,
    kind: CompositeKind,
    level: usize,
) -> Result<SimplicialMap> {
    let r = subset.len();
    match kind {
        CompositeKind::Face => {
            if r > level {
                return Err(Error::IndexOutOfRange(format!(
                    "cannot drop {r} faces from level {level}"
                )));
            }
            let mut map = SimplicialMap::identity(level - r);
            for (k, &i) in subset.members().iter().enumerate() {
                // δ_i : [level-r+k] -> [level-r+k+1]
                let target = level - r + k + 1;
                if i > target {
                    return Err(Error::IndexOutOfRange(format!(
                        "face index {i} exceeds level {target}"
                    )));
                }
                map = compose(&map, &SimplicialMap::coface(target, i))?;
            }
            Ok(map)
        }
        CompositeKind::Degeneracy => {
            let mut map = SimplicialMap::identity(level + r);
            for (k, &i) in subset.members().iter().rev().enumerate() {
                // σ_i : [level+r-k] -> [level+r-k-1]
                let base = level + r - k - 1;
                if i > base {
                    return Err(Error::IndexOutOfRange(format!(
                        "degeneracy index {i} exceeds level {base}"
                    )));
                }
                map = compose(&map, &SimplicialMap::codegeneracy(base, i))?;
            }
            Ok(map)
        }
    }
}

/// All subsets of `{0, ..., n-1}` in the canonical product order.
///
/// The order is the one produced by the Moore decomposition recursion
/// (`sgroup::pc2_decompose`): subsets containing 0 come first, each branch
/// recursing on the shifted set. Equivalently, the characteristic vectors
/// `(c_0, ..., c_{n-1})` are listed in descending lexicographic order.
pub fn product_order(n: usize) -> Vec<IndexSubset> {
    if n == 0 {
        return vec![IndexSubset::empty(0)];
    }
    let prev = product_order(n - 1);
    let mut out = Vec::with_capacity(2 * prev.len());
    for with_zero in [true, false] {
        for sub in &prev {
            let mut members: Vec<usize> = if with_zero { vec![0] } else { vec![] };
            members.extend(sub.members().iter().map(|&i| i + 1));
            out.push(IndexSubset::new(n, members).expect("shifted subset"));
        }
    }
    out
}

/// Tuple `(I_1, ..., I_p)` of subsets with a common ambient set.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SubsetTuple {
    ambient: usize,
    parts: Vec<IndexSubset>,
}

impl SubsetTuple {
    pub fn new(ambient: usize, parts: Vec<IndexSubset>) -> Result<Self> {
        for p in &parts {
            if p.ambient() != ambient {
                return Err(Error::AmbientMismatch(format!(
                    "part ambient {} differs from tuple ambient {ambient}",
                    p.ambient()
                )));
            }
        }
        Ok(SubsetTuple { ambient, parts })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn parts(&self) -> &[IndexSubset] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self) -> IndexSubset {
        self.parts
            .iter()
            .fold(IndexSubset::empty(self.ambient), |acc, p| acc.union(p))
    }

    pub fn is_covering(&self) -> bool {
        self.union().is_full()
    }
}

impl std::fmt::Display for SubsetTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All `p`-tuples of subsets of `{0, ..., m-1}` whose union is the whole
/// set. `allow_empty = false` drops tuples with an empty part;
/// `proper_only = true` additionally drops tuples with a part equal to the
/// whole set.
pub fn covering_tuples_filtered(
    m: usize,
    p: usize,
    allow_empty: bool,
    proper_only: bool,
) -> Vec<SubsetTuple> {
    assert!(m < 63, "covering_tuples is intended for desk-scale m");
    let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let mut out = Vec::new();
    let mut stack: Vec<u64> = Vec::with_capacity(p);
    fn rec(
        m: usize,
        p: usize,
        full: u64,
        allow_empty: bool,
        proper_only: bool,
        stack: &mut Vec<u64>,
        out: &mut Vec<SubsetTuple>,
    ) {
        if stack.len() == p {
            let union = stack.iter().fold(0u64, |a, b| a | b);
            if union == full {
                let parts = stack
                    .iter()
                    .map(|&bits| IndexSubset::from_bits(m, bits))
                    .collect();
                out.push(SubsetTuple::new(m, parts).expect("tuple"));
            }
            return;
        }
        for bits in 0..=full {
            if !allow_empty && bits == 0 && m > 0 {
                continue;
            }
            if proper_only && bits == full && m > 0 {
                continue;
            }
            stack.push(bits);
            rec(m, p, full, allow_empty, proper_only, stack, out);
            stack.pop();
        }
    }
    rec(m, p, full, allow_empty, proper_only, &mut stack, &mut out);
    out
}

pub fn covering_tuples(m: usize, p: usize, allow_empty: bool) -> Vec<SubsetTuple> {
    covering_tuples_filtered(m, p, allow_empty, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codegeneracy_after_coface_is_identity() {
        // σ_0 ∘ δ_0 : [0] -> [1] -> [0].
        let f = SimplicialMap::coface(1, 0);
        let g = SimplicialMap::codegeneracy(0, 0);
        let c = compose(&f, &g).unwrap();
        assert!(c.is_identity());
    }

    #[test]
    fn coface_chain_sends_zero_to_two() {
        // f = δ_0 : [0] -> [1], g = δ_0 : [1] -> [2]; g(f(0)) = 2.
        let f = SimplicialMap::coface(1, 0);
        let g = SimplicialMap::coface(2, 0);
        let c = compose(&f, &g).unwrap();
        assert_eq!(c.values(), &[2]);
    }

    #[test]
    fn compose_with_identity_is_identity_on_maps() {
        let f = SimplicialMap::new(2, 3, vec![0, 2, 2]).unwrap();
        assert_eq!(compose(&f, &SimplicialMap::identity(3)).unwrap(), f);
        assert_eq!(compose(&SimplicialMap::identity(2), &f).unwrap(), f);
    }

    #[test]
    fn compose_is_associative_on_generators() {
        // Exhaustive over generator triples with dims <= 4.
        let mut maps: Vec<SimplicialMap> = Vec::new();
        for n in 1..=4 {
            for i in 0..=n {
                maps.push(SimplicialMap::coface(n, i));
            }
        }
        for n in 0..4 {
            for i in 0..=n {
                maps.push(SimplicialMap::codegeneracy(n, i));
            }
        }
        for f in &maps {
            for g in &maps {
                if f.target_dim() != g.source_dim() {
                    continue;
                }
                for h in &maps {
                    if g.target_dim() != h.source_dim() {
                        continue;
                    }
                    let a = compose(&compose(f, g).unwrap(), h).unwrap();
                    let b = compose(f, &compose(g, h).unwrap()).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn cosimplicial_identities_hold() {
        // δ_j ∘ δ_i = δ_i ∘ δ_{j-1} for i < j, dims <= 5.
        for n in 1..=5 {
            for j in 1..=n + 1 {
                for i in 0..j {
                    let lhs = compose(
                        &SimplicialMap::coface(n, i),
                        &SimplicialMap::coface(n + 1, j),
                    )
                    .unwrap();
                    let rhs = compose(
                        &SimplicialMap::coface(n, j - 1),
                        &SimplicialMap::coface(n + 1, i),
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // σ_j ∘ σ_i = σ_i ∘ σ_{j+1} for i <= j.
        for n in 0..=4 {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = compose(
                        &SimplicialMap::codegeneracy(n + 1, j + 1),
                        &SimplicialMap::codegeneracy(n, i),
                    )
                    .unwrap();
                    let rhs = compose(
                        &SimplicialMap::codegeneracy(n + 1, i),
                        &SimplicialMap::codegeneracy(n, j),
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn empty_composite_is_identity() {
        let i = IndexSubset::empty(4);
        let f = canonical_composite(&i, CompositeKind::Face, 3).unwrap();
        assert!(f.is_identity());
        let s = canonical_composite(&i, CompositeKind::Degeneracy, 3).unwrap();
        assert!(s.is_identity());
    }

    #[test]
    fn degeneracy_composite_from_level_zero() {
        // I = {0,1}, base level 0: s_1 s_0 corresponds to the unique map [2] -> [0].
        let i = IndexSubset::new(2, vec![0, 1]).unwrap();
        let s = canonical_composite(&i, CompositeKind::Degeneracy, 0).unwrap();
        assert_eq!(s.values(), &[0, 0, 0]);
    }

    #[test]
    fn face_composite_from_level_three() {
        // I = {0,2}, faces from level 3: chain δ_0 ; δ_2 : [1] -> [3].
        let i = IndexSubset::new(3, vec![0, 2]).unwrap();
        let f = canonical_composite(&i, CompositeKind::Face, 3).unwrap();
        let expected = compose(
            &SimplicialMap::coface(2, 0),
            &SimplicialMap::coface(3, 2),
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn face_cancels_degeneracy() {
        // d_I s_I = id for |I| <= 3, level <= 5.
        for n in 0..=5 {
            for bits in 0u64..(1 << n.min(5)) {
                let sub = IndexSubset::from_bits(n, bits);
                if sub.len() > 3 || sub.members().iter().any(|&i| i > n) {
                    continue;
                }
                if sub.members().last().is_some_and(|&i| i > n) {
                    continue;
                }
                let up = canonical_composite(&sub, CompositeKind::Degeneracy, n);
                let Ok(up) = up else { continue };
                let down =
                    canonical_composite(&sub, CompositeKind::Face, n + sub.len()).unwrap();
                // Operators act contravariantly: the underlying map of
                // d_I ∘ s_I is (map of s_I) ∘ (map of d_I).
                let c = compose(&down, &up).unwrap();
                assert!(c.is_identity(), "d_I s_I != id for I = {sub}, level {n}");
            }
        }
    }

    #[test]
    fn product_order_small_cases() {
        let o0: Vec<_> = product_order(0);
        assert_eq!(o0.len(), 1);
        assert!(o0[0].is_empty());

        let o1 = product_order(1);
        let m1: Vec<Vec<usize>> = o1.iter().map(|s| s.members().to_vec()).collect();
        assert_eq!(m1, vec![vec![0], vec![]]);

        let o2 = product_order(2);
        let m2: Vec<Vec<usize>> = o2.iter().map(|s| s.members().to_vec()).collect();
        assert_eq!(m2, vec![vec![0, 1], vec![0], vec![1], vec![]]);
    }

    #[test]
    fn covering_tuple_counts() {
        assert_eq!(covering_tuples(1, 1, false).len(), 1);
        assert_eq!(covering_tuples(2, 2, true).len(), 9);
        // Inclusion-exclusion oracle over all m <= 4, p <= 3.
        for m in 0..=4usize {
            for p in 0..=3usize {
                let brute = {
                    let full: u64 = if m == 0 { 0 } else { (1 << m) - 1 };
                    let mut count = 0usize;
                    let mut tuple = vec![0u64; p];
                    loop {
                        if tuple.iter().fold(0, |a, &b| a | b) == full {
                            count += 1;
                        }
                        let mut k = 0;
                        loop {
                            if k == p {
                                break;
                            }
                            if tuple[k] == full {
                                tuple[k] = 0;
                                k += 1;
                            } else {
                                tuple[k] += 1;
                                break;
                            }
                        }
                        if k == p {
                            break;
                        }
                    }
                    count
                };
                assert_eq!(covering_tuples(m, p, true).len(), brute, "m={m} p={p}");
            }
        }
    }

    #[test]
    fn covering_pairs_without_empty_parts() {
        // Brute-force oracle: nonempty pairs covering a 2-set.
        let tuples = covering_tuples(2, 2, false);
        assert_eq!(tuples.len(), 7);
        assert!(tuples.iter().all(|t| t.is_covering()));
        assert!(tuples.iter().all(|t| t.parts().iter().all(|p| !p.is_empty())));
        // Proper filtering keeps only ({0},{1}) and ({1},{0}).
        let proper = covering_tuples_filtered(2, 2, false, true);
        assert_eq!(proper.len(), 2);
    }
}
