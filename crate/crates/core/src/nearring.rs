//! The free distributively generated unital zero-symmetric near-ring
//! `Λ(m)` on generators `φ_0, ..., φ_{m-1}` with `φ_i·φ_j = -φ_j·φ_i` and
//! `φ_i·φ_i = 0`.
//!
//! An element is written as a reduced word of signed squarefree monomials
//! `±φ_J`; addition is concatenation and in particular not commutative.
//! Ordered sums of monomials of a single grade, however, are canonical:
//! the additive group is the coproduct over the grade of free abelian
//! groups on the grade-`i` monomials, so reordering within a same-grade
//! run does not change the element. [`NrWord::blocked`] computes the
//! resulting normal form (alternating grade blocks with integer
//! coefficients); equality of elements is equality of blocked forms, while
//! the letter sequence records the order an expansion produced.
//!
//! Multiplication only distributes on the right, expanded by the defining
//! formula `(Σ_i σ_i φ_i)(Σ_j τ_j φ_j) = Σ_i σ_i (Σ_j τ_j φ_i φ_j)`;
//! generators are distributive, so a monomial does distribute over a sum
//! on the left.
//!
//! The simplicial structure applies the face/degeneracy tables on
//! generators, extended to monomials by ordered multiplicative expansion
//! in ascending index order and to words additively. The last-face clause
//! on the top generator is `d_m(φ_{m-1}) = -(φ_0 + ... + φ_{m-2})`: the
//! dual-action value, which is the unique clause compatible with the
//! simplicial identities (the identity `d_{m+1} s_j = s_j d_m` already
//! fails on generators with the clause `d_m(φ_{m-1}) = 0`).

use crate::error::{Error, Result};
use crate::exterior::wedge_monomials;
use std::collections::BTreeMap;

/// Reduced word in the additive group of `Λ(level)`. Each letter is a
/// signed squarefree sorted monomial; `φ_∅` is the multiplicative unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NrWord {
    level: usize,
    letters: Vec<(i64, Vec<usize>)>,
}

impl NrWord {
    pub fn zero(level: usize) -> Self {
        NrWord { level, letters: vec![] }
    }

    pub fn one(level: usize) -> Self {
        NrWord { level, letters: vec![(1, vec![])] }
    }

    pub fn monomial(level: usize, support: &[usize], sign: i64) -> Self {
        assert!(sign == 1 || sign == -1);
        assert!(support.windows(2).all(|w| w[0] < w[1]));
        assert!(support.iter().all(|&i| i < level));
        NrWord { level, letters: vec![(sign, support.to_vec())] }
    }

    pub fn from_letters(level: usize, letters: Vec<(i64, Vec<usize>)>) -> Self {
        let mut w = NrWord { level, letters };
        w.reduce();
        w
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn letters(&self) -> &[(i64, Vec<usize>)] {
        &self.letters
    }

    pub fn is_zero(&self) -> bool {
        self.letters.is_empty()
    }

    fn reduce(&mut self) {
        let mut out: Vec<(i64, Vec<usize>)> = Vec::with_capacity(self.letters.len());
        for letter in self.letters.drain(..) {
            match out.last() {
                Some((s, j)) if *s == -letter.0 && *j == letter.1 => {
                    out.pop();
                }
                _ => out.push(letter),
            }
        }
        self.letters = out;
    }

    /// Group negation: reverse the word and flip signs.
    pub fn neg(&self) -> NrWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|(s, j)| (-s, j.clone()))
            .collect();
        NrWord { level: self.level, letters }
    }

    /// Ordered sum `self + other`.
    pub fn add(&self, other: &NrWord) -> NrWord {
        assert_eq!(self.level, other.level, "level mismatch");
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        NrWord::from_letters(self.level, letters)
    }

    /// Right-distributive product per the defining expansion.
    pub fn mul(&self, other: &NrWord) -> NrWord {
        assert_eq!(self.level, other.level, "level mismatch");
        let mut letters = Vec::new();
        for (sign_a, mono_a) in &self.letters {
            let inner: Vec<(i64, Vec<usize>)> = other
                .letters
                .iter()
                .filter_map(|(sign_b, mono_b)| {
                    wedge_monomials(mono_a, mono_b).map(|(support, s)| (sign_b * s, support))
                })
                .collect();
            if *sign_a == 1 {
                letters.extend(inner);
            } else {
                letters.extend(inner.into_iter().rev().map(|(s, j)| (-s, j)));
            }
        }
        NrWord::from_letters(self.level, letters)
    }

    /// True when every letter has the given word length.
    pub fn pure_grade(&self, grade: usize) -> bool {
        self.letters.iter().all(|(_, j)| j.len() == grade)
    }

    /// Abelianized form: signed coefficient per monomial.
    pub fn abelianization(&self) -> BTreeMap<Vec<usize>, i64> {
        let mut map = BTreeMap::new();
        for (s, j) in &self.letters {
            *map.entry(j.clone()).or_insert(0i64) += s;
        }
        map.retain(|_, v| *v != 0);
        map
    }

    /// Canonical normal form: maximal same-grade runs collapse to
    /// coefficient maps, cancelled blocks merge their neighbours.
    pub fn blocked(&self) -> Vec<(usize, BTreeMap<Vec<usize>, i64>)> {
        let mut stack: Vec<(usize, BTreeMap<Vec<usize>, i64>)> = Vec::new();
        for (s, j) in &self.letters {
            let grade = j.len();
            match stack.last_mut() {
                Some((g, map)) if *g == grade => {
                    let entry = map.entry(j.clone()).or_insert(0);
                    *entry += s;
                    if *entry == 0 {
                        map.remove(j);
                    }
                    if map.is_empty() {
                        stack.pop();
                    }
                }
                _ => {
                    stack.push((grade, BTreeMap::from([(j.clone(), *s)])));
                }
            }
        }
        stack
    }

    /// Equality in `Λ(level)`: blocked normal forms agree.
    pub fn eq_in_lambda(&self, other: &NrWord) -> bool {
        self.level == other.level && self.blocked() == other.blocked()
    }
}

/// A face or degeneracy generator of the simplicial near-ring.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NrOp {
    /// `d_j : Λ(level) -> Λ(level-1)`.
    Face(usize),
    /// `s_j : Λ(level) -> Λ(level+1)`.
    Degeneracy(usize),
}

/// Image of the generator `φ_i` at `level` under the literal tables.
fn generator_image(level: usize, op: NrOp, i: usize) -> NrWord {
    match op {
        NrOp::Face(j) => {
            let target = level - 1;
            if j < level {
                if i < j {
                    NrWord::monomial(target, &[i], 1)
                } else if i == j {
                    NrWord::zero(target)
                } else {
                    NrWord::monomial(target, &[i - 1], 1)
                }
            } else if i < level - 1 {
                NrWord::monomial(target, &[i], 1)
            } else {
                // Last face on the top generator: -(φ_0 + ... + φ_{level-2}).
                let letters = (0..level - 1).rev().map(|k| (-1, vec![k])).collect();
                NrWord::from_letters(target, letters)
            }
        }
        NrOp::Degeneracy(j) => {
            let target = level + 1;
            if j < level {
                if i < j {
                    NrWord::monomial(target, &[i], 1)
                } else if i == j {
                    NrWord::from_letters(target, vec![(1, vec![i]), (1, vec![i + 1])])
                } else {
                    NrWord::monomial(target, &[i + 1], 1)
                }
            } else {
                // Top degeneracy acts as the symbol identity.
                NrWord::monomial(target, &[i], 1)
            }
        }
    }
}

/// Applies a face or degeneracy generator to a word: tables on generators,
/// ordered multiplicative expansion on monomials, additive extension on
/// words.
pub fn nr_simplicial(level: usize, op: NrOp, x: &NrWord) -> Result<NrWord> {
    if x.level() != level {
        return Err(Error::LevelMismatch { expected: level, got: x.level() });
    }
    match op {
        NrOp::Face(j) if j > level || level == 0 => {
            return Err(Error::IndexOutOfRange(format!("face d_{j} at level {level}")))
        }
        NrOp::Degeneracy(j) if j > level => {
            return Err(Error::IndexOutOfRange(format!(
                "degeneracy s_{j} at level {level}"
            )))
        }
        _ => {}
    }
    let target = match op {
        NrOp::Face(_) => level - 1,
        NrOp::Degeneracy(_) => level + 1,
    };
    let mut out = NrWord::zero(target);
    for (sign, mono) in x.letters() {
        let mut acc = NrWord::one(target);
        for &i in mono {
            acc = acc.mul(&generator_image(level, op, i));
            if acc.is_zero() {
                break;
            }
        }
        if *sign == -1 {
            acc = acc.neg();
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Applies the canonical composite `s_I = s_{i_r} ∘ ... ∘ s_{i_1}` starting
/// from `base_level` (lowest index first).
pub fn apply_degeneracy_chain(base_level: usize, indices: &[usize], x: &NrWord) -> Result<NrWord> {
    let mut cur = x.clone();
    let mut level = base_level;
    for &i in indices {
        cur = nr_simplicial(level, NrOp::Degeneracy(i), &cur)?;
        level += 1;
    }
    Ok(cur)
}

/// Expresses `φ_J` at level `m` as an ordered signed sum of canonical
/// degeneracies of the top monomial: `φ_J = ~Σ ε_I s_I(φ_{[r]})` with
/// `r = |J| - 1`. Each `I` has size `m - |J|`; re-expansion is checked by
/// [`expand_degeneracy_expression`].
///
/// Rewrite system: if `J` misses the top index `m-1`, embed through the
/// symbol-identity top degeneracy `s_{m-1}` and recurse one level down;
/// otherwise take the largest gap `j ∉ J` (its successor `j+1` is then in
/// `J`) and use `s_j(φ_L) = φ_{J'} + φ_J`, i.e. `φ_J = -φ_{J'} + s_j(φ_L)`,
/// where `J' = (J \ {j+1}) ∪ {j}` is lexicographically smaller and `L`
/// lives one level down.
pub fn express_by_degeneracies(support: &[usize], m: usize) -> Vec<(i64, Vec<usize>)> {
    assert!(support.windows(2).all(|w| w[0] < w[1]));
    assert!(support.iter().all(|&i| i < m));
    if support.len() == m {
        return vec![(1, vec![])];
    }
    if support.last() != Some(&(m - 1)) {
        let inner = express_by_degeneracies(support, m - 1);
        return inner
            .into_iter()
            .map(|(e, mut i)| {
                i.push(m - 1);
                (e, i)
            })
            .collect();
    }
    let gap = (0..m - 1)
        .rev()
        .find(|j| !support.contains(j))
        .expect("proper subset containing the top index has a gap");
    debug_assert!(support.contains(&(gap + 1)));
    let mut j_prime: Vec<usize> = support.iter().copied().filter(|&x| x != gap + 1).collect();
    j_prime.push(gap);
    j_prime.sort_unstable();
    let mut l: Vec<usize> = Vec::with_capacity(support.len());
    for &x in support {
        if x < gap {
            l.push(x);
        } else if x > gap + 1 {
            l.push(x - 1);
        }
    }
    l.push(gap);
    l.sort_unstable();

    let head = express_by_degeneracies(&j_prime, m);
    let tail = express_by_degeneracies(&l, m - 1);
    let mut out: Vec<(i64, Vec<usize>)> = Vec::with_capacity(head.len() + tail.len());
    out.extend(head.into_iter().rev().map(|(e, i)| (-e, i)));
    for (e, i) in tail {
        let mut k: Vec<usize> = i
            .into_iter()
            .map(|x| if x >= gap { x + 1 } else { x })
            .collect();
        k.push(gap);
        k.sort_unstable();
        out.push((e, k));
    }
    out
}

/// Re-expands an expression returned by [`express_by_degeneracies`] into a
/// word of `Λ(m)`.
pub fn expand_degeneracy_expression(
    expr: &[(i64, Vec<usize>)],
    support_len: usize,
    m: usize,
) -> Result<NrWord> {
    let base_level = support_len;
    let top: Vec<usize> = (0..support_len).collect();
    let mut out = NrWord::zero(m);
    for (eps, i) in expr {
        if base_level + i.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "degeneracy set {i:?} does not reach level {m} from {base_level}"
            )));
        }
        let word = apply_degeneracy_chain(base_level, i, &NrWord::monomial(base_level, &top, 1))?;
        out = out.add(&if *eps == -1 { word.neg() } else { word });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::all_monomials;

    #[test]
    fn unit_and_zero_laws() {
        let a = NrWord::from_letters(3, vec![(1, vec![0]), (-1, vec![1, 2])]);
        assert_eq!(a.mul(&NrWord::one(3)), a);
        assert_eq!(NrWord::one(3).mul(&a), a);
        assert!(a.mul(&NrWord::zero(3)).is_zero());
        assert!(NrWord::zero(3).mul(&a).is_zero());
    }

    #[test]
    fn anticommutation_cancels() {
        // φ_0·φ_1 + φ_1·φ_0 = φ_{01} - φ_{01} = 0.
        let a = NrWord::monomial(2, &[0], 1).mul(&NrWord::monomial(2, &[1], 1));
        let b = NrWord::monomial(2, &[1], 1).mul(&NrWord::monomial(2, &[0], 1));
        assert!(a.add(&b).is_zero());
        let g = NrWord::monomial(2, &[0], 1);
        assert!(g.mul(&g).is_zero());
    }

    #[test]
    fn right_distributive_expansion() {
        // (φ_0 + φ_1)·φ_2 = φ_{02} + φ_{12}.
        let sum = NrWord::from_letters(3, vec![(1, vec![0]), (1, vec![1])]);
        let c = NrWord::monomial(3, &[2], 1);
        let prod = sum.mul(&c);
        assert_eq!(prod.letters(), &[(1, vec![0, 2]), (1, vec![1, 2])]);
    }

    #[test]
    fn negation_reverses_order() {
        let w = NrWord::from_letters(2, vec![(1, vec![0]), (1, vec![1])]);
        let n = w.neg();
        assert_eq!(n.letters(), &[(-1, vec![1]), (-1, vec![0])]);
        assert!(w.add(&n).is_zero());
    }

    #[test]
    fn degeneracy_table_on_generators() {
        // s_0(φ_0) at level 1 -> φ_0 + φ_1.
        let img = nr_simplicial(1, NrOp::Degeneracy(0), &NrWord::monomial(1, &[0], 1)).unwrap();
        assert_eq!(img.letters(), &[(1, vec![0]), (1, vec![1])]);
        // Last face on the top generator spreads with sign -1.
        for n in 1..=4usize {
            let img = nr_simplicial(n, NrOp::Face(n), &NrWord::monomial(n, &[n - 1], 1)).unwrap();
            let ab = img.abelianization();
            assert_eq!(ab.len(), n - 1);
            for k in 0..n - 1 {
                assert_eq!(ab.get(&vec![k]), Some(&-1));
            }
        }
        // The top monomial still dies under the last face.
        for n in 1..=4usize {
            let top: Vec<usize> = (0..n).collect();
            let img = nr_simplicial(n, NrOp::Face(n), &NrWord::monomial(n, &top, 1)).unwrap();
            assert!(img.is_zero());
        }
    }

    #[test]
    fn ordered_expansion_on_monomials() {
        // s_1(φ_0 φ_1) at level 2 -> φ_0φ_1 + φ_0φ_2.
        let img = nr_simplicial(2, NrOp::Degeneracy(1), &NrWord::monomial(2, &[0, 1], 1)).unwrap();
        assert_eq!(img.letters(), &[(1, vec![0, 1]), (1, vec![0, 2])]);
    }

    #[test]
    fn express_small_cases() {
        assert_eq!(express_by_degeneracies(&[0, 1], 2), vec![(1, vec![])]);
        // m = 2, J = {0}: s_1(φ_0) = φ_0.
        assert_eq!(express_by_degeneracies(&[0], 2), vec![(1, vec![1])]);
        // m = 2, J = {1}: -s_1(φ_0) + s_0(φ_0).
        assert_eq!(
            express_by_degeneracies(&[1], 2),
            vec![(-1, vec![1]), (1, vec![0])]
        );
    }

    #[test]
    fn express_reexpands_exhaustively() {
        // All J ⊆ [m-1] for m <= 5: 2 + 4 + 8 + 16 + 32 = 62 cases.
        let mut cases = 0;
        for m in 1..=5usize {
            for support in all_monomials(m) {
                let expr = express_by_degeneracies(&support, m);
                let word = expand_degeneracy_expression(&expr, support.len(), m).unwrap();
                assert!(
                    word.eq_in_lambda(&NrWord::monomial(m, &support, 1)),
                    "reexpansion failed for J={support:?} m={m}: {:?}",
                    word.letters()
                );
                cases += 1;
            }
        }
        assert_eq!(cases, 62);
    }

    #[test]
    fn simplicial_identities_on_monomials() {
        // All identities, exhaustively on monomials for levels <= 4.
        for n in 2..=4usize {
            for support in all_monomials(n) {
                let x = NrWord::monomial(n, &support, 1);
                for j in 1..=n {
                    for i in 0..j {
                        let a = nr_simplicial(
                            n - 1,
                            NrOp::Face(i),
                            &nr_simplicial(n, NrOp::Face(j), &x).unwrap(),
                        )
                        .unwrap();
                        let b = nr_simplicial(
                            n - 1,
                            NrOp::Face(j - 1),
                            &nr_simplicial(n, NrOp::Face(i), &x).unwrap(),
                        )
                        .unwrap();
                        assert!(a.eq_in_lambda(&b), "dd at n={n} i={i} j={j} J={support:?}");
                    }
                }
                for j in 0..=n {
                    let sx = nr_simplicial(n, NrOp::Degeneracy(j), &x).unwrap();
                    for i in 0..=n + 1 {
                        let lhs = nr_simplicial(n + 1, NrOp::Face(i), &sx).unwrap();
                        let rhs = if i < j {
                            nr_simplicial(
                                n - 1,
                                NrOp::Degeneracy(j - 1),
                                &nr_simplicial(n, NrOp::Face(i), &x).unwrap(),
                            )
                            .unwrap()
                        } else if i == j || i == j + 1 {
                            x.clone()
                        } else {
                            nr_simplicial(
                                n - 1,
                                NrOp::Degeneracy(j),
                                &nr_simplicial(n, NrOp::Face(i - 1), &x).unwrap(),
                            )
                            .unwrap()
                        };
                        assert!(lhs.eq_in_lambda(&rhs), "ds at n={n} i={i} j={j} J={support:?}");
                    }
                }
                for j in 0..=n {
                    for i in 0..=j {
                        let a = nr_simplicial(
                            n + 1,
                            NrOp::Degeneracy(i),
                            &nr_simplicial(n, NrOp::Degeneracy(j), &x).unwrap(),
                        )
                        .unwrap();
                        let b = nr_simplicial(
                            n + 1,
                            NrOp::Degeneracy(j + 1),
                            &nr_simplicial(n, NrOp::Degeneracy(i), &x).unwrap(),
                        )
                        .unwrap();
                        assert!(a.eq_in_lambda(&b), "ss at n={n} i={i} j={j} J={support:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn abelianized_degeneracy_matches_commutative_tables() {
        use crate::exterior::{lambda_table_degen, ExtElem};
        for m in 1..=4usize {
            for support in all_monomials(m) {
                let expr = express_by_degeneracies(&support, m);
                for (_e, i) in &expr {
                    let r = support.len();
                    let top: Vec<usize> = (0..r).collect();
                    let word =
                        apply_degeneracy_chain(r, i, &NrWord::monomial(r, &top, 1)).unwrap();
                    let mut ext = ExtElem::monomial(r, &top, 1);
                    let mut level = r;
                    for &ix in i {
                        ext = lambda_table_degen(level, ix, &ext);
                        level += 1;
                    }
                    let ab = word.abelianization();
                    for (mono, coeff) in &ab {
                        assert_eq!(ext.coeff(mono), *coeff, "I={i:?} J={support:?}");
                    }
                    assert_eq!(ab.len(), ext.terms().count());
                }
            }
        }
    }
}
