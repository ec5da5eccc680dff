//! The dual coefficient system `Z(n)` and its exterior algebra `ΛZ(n)`.
//!
//! `Z(n)` is free on `φ_0, ..., φ_{n-1}`, dual to the reduced vertex module
//! on `v_i = e_i - e_n`. A finite set map `α : [m] -> [n]` acts by
//! precomposition, which on the basis reads
//!
//! ```text
//! α*(φ_i) = Σ_{j<m, α(j)=i} φ_j               when i ≠ α(m)
//! α*(φ_i) = -Σ_{j<m, α(j)≠α(m)} φ_j           when i = α(m)
//! ```
//!
//! This "dual" action is functorial by construction and reproduces the
//! classical face/degeneracy tables on all Δ generators except the clause
//! `d_n(φ_{n-1})`, where the table says `0` and the dual rule gives
//! `-(φ_0 + ... + φ_{n-2})`. Both clauses yield valid simplicial structures;
//! we expose both (`lambda_action` for the dual one, `table_face` /
//! `table_degen` for the literal one) since the abelian Dold-Kan functor
//! wants functoriality while the near-ring side applies the tables
//! literally.

use crate::simplicial::SimplicialMap;
use std::collections::BTreeMap;

/// Integer combination of exterior monomials `φ_J`, `J ⊆ {0..level-1}`.
/// The empty monomial is the unit of the algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtElem {
    level: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl ExtElem {
    pub fn zero(level: usize) -> Self {
        ExtElem { level, terms: BTreeMap::new() }
    }

    pub fn unit(level: usize) -> Self {
        ExtElem::monomial(level, &[], 1)
    }

    pub fn generator(level: usize, i: usize) -> Self {
        assert!(i < level);
        ExtElem::monomial(level, &[i], 1)
    }

    pub fn monomial(level: usize, support: &[usize], coeff: i64) -> Self {
        assert!(support.windows(2).all(|w| w[0] < w[1]), "support must be sorted");
        assert!(support.iter().all(|&i| i < level), "support out of range");
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(support.to_vec(), coeff);
        }
        ExtElem { level, terms }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, support: &[usize]) -> i64 {
        self.terms.get(support).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, support: Vec<usize>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(support) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &ExtElem) -> ExtElem {
        assert_eq!(self.level, other.level);
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        out
    }

    pub fn scale(&self, k: i64) -> ExtElem {
        let mut out = ExtElem::zero(self.level);
        if k == 0 {
            return out;
        }
        for (s, &v) in &self.terms {
            out.terms.insert(s.clone(), v * k);
        }
        out
    }

    pub fn sub(&self, other: &ExtElem) -> ExtElem {
        self.add(&other.scale(-1))
    }

    /// Wedge product with antisymmetry normalization.
    pub fn wedge(&self, other: &ExtElem) -> ExtElem {
        assert_eq!(self.level, other.level);
        let mut out = ExtElem::zero(self.level);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if let Some((support, sign)) = wedge_monomials(a, b) {
                    out.add_term(support, sign * ca * cb);
                }
            }
        }
        out
    }

    /// Degree when every monomial has the same size.
    pub fn pure_degree(&self) -> Option<usize> {
        let mut deg = None;
        for s in self.terms.keys() {
            match deg {
                None => deg = Some(s.len()),
                Some(d) if d != s.len() => return None,
                _ => {}
            }
        }
        deg
    }

    /// Keeps only monomials of the given size.
    pub fn homogeneous_part(&self, degree: usize) -> ExtElem {
        let terms = self
            .terms
            .iter()
            .filter(|(s, _)| s.len() == degree)
            .map(|(s, &c)| (s.clone(), c))
            .collect();
        ExtElem { level: self.level, terms }
    }
}

/// `φ_A ∧ φ_B`: `None` on a repeated index, otherwise the merged support
/// and the sign of the merge permutation.
pub fn wedge_monomials(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i64;
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a.
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

/// Pullback of the basis vector `φ_i ∈ Z(n)` through `α : [m] -> [n]`.
pub fn pullback_basis(alpha: &SimplicialMap, i: usize) -> ExtElem {
    let m = alpha.source_dim();
    let n = alpha.target_dim();
    assert!(i < n, "basis index {i} at level {n}");
    let top = alpha.top_value();
    let mut out = ExtElem::zero(m);
    if i != top {
        for j in 0..m {
            if alpha.apply(j) == i {
                out.add_term(vec![j], 1);
            }
        }
    } else {
        for j in 0..m {
            if alpha.apply(j) != top {
                out.add_term(vec![j], -1);
            }
        }
    }
    out
}

/// Linear extension of the pullback to `Z(n)` vectors given as coefficients
/// over `φ_0..φ_{n-1}`.
pub fn pullback_vector(alpha: &SimplicialMap, coeffs: &[i64]) -> ExtElem {
    assert_eq!(coeffs.len(), alpha.target_dim());
    let mut out = ExtElem::zero(alpha.source_dim());
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            out = out.add(&pullback_basis(alpha, i).scale(c));
        }
    }
    out
}

/// Multiplicative extension of the dual action to `ΛZ(n)`.
pub fn lambda_action(alpha: &SimplicialMap, x: &ExtElem) -> ExtElem {
    assert_eq!(x.level(), alpha.target_dim());
    let m = alpha.source_dim();
    let mut out = ExtElem::zero(m);
    for (support, &c) in x.terms() {
        let mut acc = ExtElem::unit(m);
        for &i in support {
            acc = acc.wedge(&pullback_basis(alpha, i));
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// The `α`-derivation on a monomial: zero unless `α(m) ∈ J`; otherwise the
/// factor `φ_{α(m)}` is removed with the move-to-last sign `(-1)^{r-k}` and
/// the rest is pushed through the dual action.
pub fn delta_derivation(alpha: &SimplicialMap, support: &[usize]) -> ExtElem {
    let m = alpha.source_dim();
    let top = alpha.top_value();
    let Some(k) = support.iter().position(|&j| j == top) else {
        return ExtElem::zero(m);
    };
    let r = support.len();
    let sign = if (r - 1 - k) % 2 == 0 { 1 } else { -1 };
    let rest: Vec<usize> = support
        .iter()
        .copied()
        .filter(|&j| j != top)
        .collect();
    lambda_action(alpha, &ExtElem::monomial(alpha.target_dim(), &rest, 1)).scale(sign)
}

/// Linear extension of the derivation to arbitrary exterior elements.
pub fn delta_derivation_elem(alpha: &SimplicialMap, x: &ExtElem) -> ExtElem {
    assert_eq!(x.level(), alpha.target_dim());
    let mut out = ExtElem::zero(alpha.source_dim());
    for (support, &c) in x.terms() {
        out = out.add(&delta_derivation(alpha, support).scale(c));
    }
    out
}

/// Literal face table on basis vectors: `d_j : Z(n) -> Z(n-1)`.
///
/// For `j < n` this is the generic clause of the tables; for `j = n` the
/// literal last-face clause sends `φ_{n-1}` to `0`.
pub fn table_face_basis(n: usize, j: usize, i: usize) -> ExtElem {
    assert!(j <= n && i < n);
    if j < n {
        if i < j {
            ExtElem::monomial(n - 1, &[i], 1)
        } else if i == j {
            ExtElem::zero(n - 1)
        } else {
            ExtElem::monomial(n - 1, &[i - 1], 1)
        }
    } else if i < n - 1 {
        ExtElem::monomial(n - 1, &[i], 1)
    } else {
        ExtElem::zero(n - 1)
    }
}

/// Literal degeneracy table on basis vectors: `s_j : Z(n) -> Z(n+1)`.
pub fn table_degen_basis(n: usize, j: usize, i: usize) -> ExtElem {
    assert!(j <= n && i < n);
    if j < n {
        if i < j {
            ExtElem::monomial(n + 1, &[i], 1)
        } else if i == j {
            let mut e = ExtElem::monomial(n + 1, &[i], 1);
            e.add_term(vec![i + 1], 1);
            e
        } else {
            ExtElem::monomial(n + 1, &[i + 1], 1)
        }
    } else {
        // Top degeneracy acts as the symbol identity.
        ExtElem::monomial(n + 1, &[i], 1)
    }
}

/// Multiplicative extension of the literal face table to `ΛZ(n)`.
pub fn lambda_table_face(n: usize, j: usize, x: &ExtElem) -> ExtElem {
    assert_eq!(x.level(), n);
    let mut out = ExtElem::zero(n - 1);
    for (support, &c) in x.terms() {
        let mut acc = ExtElem::unit(n - 1);
        for &i in support {
            acc = acc.wedge(&table_face_basis(n, j, i));
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Multiplicative extension of the literal degeneracy table to `ΛZ(n)`.
pub fn lambda_table_degen(n: usize, j: usize, x: &ExtElem) -> ExtElem {
    assert_eq!(x.level(), n);
    let mut out = ExtElem::zero(n + 1);
    for (support, &c) in x.terms() {
        let mut acc = ExtElem::unit(n + 1);
        for &i in support {
            acc = acc.wedge(&table_degen_basis(n, j, i));
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Literal last-face derivation on a monomial at level `n`: removes a
/// trailing `φ_{n-1}` (sign `+1`, it is always the last factor).
pub fn delta_table_last_face(n: usize, support: &[usize]) -> ExtElem {
    if support.last() == Some(&(n - 1)) {
        let rest = &support[..support.len() - 1];
        ExtElem::monomial(n - 1, rest, 1)
    } else {
        ExtElem::zero(n - 1)
    }
}

/// All sorted subsets of `{0..n-1}` of the given size, in lexicographic order.
pub fn monomials_of_degree(n: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(degree);
    fn rec(n: usize, degree: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == degree {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, degree, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, degree, 0, &mut cur, &mut out);
    out
}

/// All sorted subsets of `{0..n-1}`, graded by size then lexicographic.
pub fn all_monomials(n: usize) -> Vec<Vec<usize>> {
    (0..=n).flat_map(|d| monomials_of_degree(n, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialMap;

    #[test]
    fn wedge_antisymmetry_and_squares() {
        let a = ExtElem::generator(3, 0);
        let b = ExtElem::generator(3, 1);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        assert_eq!(ab, ba.scale(-1));
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn dual_action_matches_degeneracy_table() {
        // s_0 on φ_0 at level 1: φ_0 + φ_1 at level 2.
        let s0 = SimplicialMap::codegeneracy(1, 0);
        let img = pullback_basis(&s0, 0);
        assert_eq!(img.coeff(&[0]), 1);
        assert_eq!(img.coeff(&[1]), 1);
        // All generator degeneracies agree with the literal table.
        for n in 1..=4 {
            for j in 0..=n {
                let sj = SimplicialMap::codegeneracy(n, j);
                for i in 0..n {
                    assert_eq!(
                        pullback_basis(&sj, i),
                        table_degen_basis(n, j, i),
                        "s_{j} φ_{i} at level {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn dual_action_matches_face_table_except_last_clause() {
        // d_1 on φ_0 at level 2: φ_0.
        let d1 = SimplicialMap::coface(2, 1);
        assert_eq!(pullback_basis(&d1, 0), ExtElem::monomial(1, &[0], 1));
        for n in 1..=4 {
            for j in 0..=n {
                let dj = SimplicialMap::coface(n, j);
                for i in 0..n {
                    let dual = pullback_basis(&dj, i);
                    let table = table_face_basis(n, j, i);
                    if j == n && i == n - 1 {
                        // The one divergent clause: the dual rule spreads out.
                        let mut expect = ExtElem::zero(n - 1);
                        for k in 0..n - 1 {
                            expect.add_term(vec![k], -1);
                        }
                        assert_eq!(dual, expect);
                        assert!(table.is_zero());
                    } else {
                        assert_eq!(dual, table, "d_{j} φ_{i} at level {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn dual_action_is_functorial() {
        // α*(β*(φ)) = (βα)*(φ) over raw Fin maps, small dims exhaustive.
        for m in 0..=2usize {
            for n in 0..=2usize {
                for p in 1..=2usize {
                    for av in all_maps(m, n) {
                        let alpha = SimplicialMap::new(m, n, av).unwrap();
                        for bv in all_maps(n, p) {
                            let beta = SimplicialMap::new(n, p, bv).unwrap();
                            let ba = crate::simplicial::compose(&alpha, &beta).unwrap();
                            for i in 0..p {
                                let direct = pullback_basis(&ba, i);
                                let via = lambda_action(&alpha, &pullback_basis(&beta, i));
                                assert_eq!(direct, via);
                            }
                        }
                    }
                }
            }
        }
    }

    fn all_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..=m {
            let mut next = Vec::new();
            for prefix in &out {
                for v in 0..=n {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn derivation_on_top_monomial_is_plus_one() {
        // α = δ_m : [m-1] -> [m], J = {0..m-1}: result +φ_{[m-2]}.
        for m in 1..=4 {
            let alpha = SimplicialMap::coface(m, m);
            let top: Vec<usize> = (0..m).collect();
            let d = delta_derivation(&alpha, &top);
            let expect: Vec<usize> = (0..m - 1).collect();
            assert_eq!(d, ExtElem::monomial(m - 1, &expect, 1));
        }
    }

    #[test]
    fn derivation_vanishes_off_support() {
        let alpha = SimplicialMap::coface(2, 2); // α(1) = 1
        assert!(delta_derivation(&alpha, &[0]).is_zero());
    }

    #[test]
    fn derivation_at_level_zero_gives_unit() {
        // α = δ_1 : [0] -> [1], J = {0}: α(0) = 0 ∈ J, degree-0 unit.
        let alpha = SimplicialMap::coface(1, 1);
        assert_eq!(delta_derivation(&alpha, &[0]), ExtElem::unit(0));
    }

    #[test]
    fn derivation_law_exhaustive_small() {
        // δ_{βα} = α ∘ δ_β + δ_α ∘ β on all monomials, dims <= 3.
        for m in 0..=2usize {
            for n in 0..=3usize {
                for p in 1..=3usize {
                    for av in all_maps(m, n) {
                        let alpha = SimplicialMap::new(m, n, av).unwrap();
                        for bv in all_maps(n, p) {
                            let beta = SimplicialMap::new(n, p, bv).unwrap();
                            let ba = crate::simplicial::compose(&alpha, &beta).unwrap();
                            for support in all_monomials(p) {
                                let x = ExtElem::monomial(p, &support, 1);
                                let lhs = delta_derivation_elem(&ba, &x);
                                let rhs = lambda_action(&alpha, &delta_derivation_elem(&beta, &x))
                                    .add(&delta_derivation_elem(&alpha, &lambda_action(&beta, &x)));
                                assert_eq!(lhs, rhs, "m={m} n={n} p={p} J={support:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degeneracy_action_on_wedge() {
        // s_0(φ_0 ∧ φ_1) at level 2 -> (φ_0+φ_1) ∧ φ_2 = φ_0∧φ_2 + φ_1∧φ_2.
        let s0 = SimplicialMap::codegeneracy(2, 0);
        let x = ExtElem::monomial(2, &[0, 1], 1);
        let img = lambda_action(&s0, &x);
        assert_eq!(img.coeff(&[0, 2]), 1);
        assert_eq!(img.coeff(&[1, 2]), 1);
        assert_eq!(img.terms().count(), 2);
    }

    #[test]
    fn face_action_kills_own_index() {
        // d_1(φ_0 ∧ φ_1) at level 2 -> 0.
        let d1 = SimplicialMap::coface(2, 1);
        let x = ExtElem::monomial(2, &[0, 1], 1);
        assert!(lambda_action(&d1, &x).is_zero());
    }
}
