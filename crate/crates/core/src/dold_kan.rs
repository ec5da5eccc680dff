//! The explicit inverse `K` of the normalization functor.
//!
//! `K_m(C) = ⊕_{i <= m} C_i ⊗ Λ^i Z(m)`, with a finite set map
//! `α : [m] -> [n]` acting by
//!
//! ```text
//! K(α)(a ⊗ φ) = a ⊗ α*(φ) + da ⊗ δ_α(φ)
//! ```
//!
//! where `α*` is the dual action on `ΛZ` and `δ_α` the associated
//! derivation. Levels are realized as presented modules on the monomial
//! basis `(degree i, support J, generator of C_i)`, blocks ordered by
//! degree then lexicographic support.

use crate::error::{Error, Result};
use crate::exterior::{
    delta_derivation, delta_table_last_face, lambda_action, lambda_table_face, monomials_of_degree,
    ExtElem,
};
use crate::matrix::Mat;
use crate::modules::{
    moore_complex, ChainComplexZ, ExactModule, ModuleMap, MooreComplex, SimplicialModuleT,
};
use crate::nearring::express_by_degeneracies;
use crate::simplicial::SimplicialMap;
use std::collections::HashMap;

/// Basis layout of one `K` level: blocks `(degree, support)` in degree-major
/// order, each of width `rank(C_degree)`.
#[derive(Clone, Debug)]
pub struct KLayout {
    level: usize,
    blocks: Vec<(usize, Vec<usize>)>,
    offsets: Vec<usize>,
    widths: Vec<usize>,
    index_of_support: HashMap<Vec<usize>, usize>,
    total: usize,
}

impl KLayout {
    fn new(level: usize, c_ranks: &[usize]) -> Self {
        let mut blocks = Vec::new();
        let max_deg = level.min(c_ranks.len().saturating_sub(1));
        for degree in 0..=max_deg {
            for support in monomials_of_degree(level, degree) {
                blocks.push((degree, support));
            }
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut widths = Vec::with_capacity(blocks.len());
        let mut index_of_support = HashMap::new();
        let mut total = 0usize;
        for (bi, (degree, support)) in blocks.iter().enumerate() {
            offsets.push(total);
            widths.push(c_ranks[*degree]);
            index_of_support.insert(support.clone(), bi);
            total += c_ranks[*degree];
        }
        KLayout { level, blocks, offsets, widths, index_of_support, total }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn blocks(&self) -> &[(usize, Vec<usize>)] {
        &self.blocks
    }

    pub fn block_of(&self, support: &[usize]) -> Option<usize> {
        self.index_of_support.get(support).copied()
    }

    /// Flat index of `(support, generator)`.
    pub fn index(&self, support: &[usize], generator: usize) -> Option<usize> {
        let bi = self.block_of(support)?;
        if generator >= self.widths[bi] {
            return None;
        }
        Some(self.offsets[bi] + generator)
    }

    pub fn block_range(&self, bi: usize) -> std::ops::Range<usize> {
        self.offsets[bi]..self.offsets[bi] + self.widths[bi]
    }
}

/// `K(C)` truncated at a level, with the block layouts needed to interpret
/// coordinates.
#[derive(Clone, Debug)]
pub struct KComplex {
    pub complex: ChainComplexZ,
    pub simplicial: SimplicialModuleT,
    pub layouts: Vec<KLayout>,
}

fn c_cover_ranks(c: &ChainComplexZ) -> Vec<usize> {
    (0..=c.top()).map(|i| c.level(i).rank()).collect()
}

fn k_level_module(c: &ChainComplexZ, layout: &KLayout) -> Result<ExactModule> {
    let mut rel_rows = Vec::new();
    for (bi, (degree, _)) in layout.blocks().iter().enumerate() {
        let rel = c.level(*degree).relations();
        for r in 0..rel.rows() {
            let mut row = vec![0i64; layout.total()];
            for (t, c_val) in rel.row(r).iter().enumerate() {
                row[layout.block_range(bi).start + t] = *c_val;
            }
            rel_rows.push(row);
        }
    }
    ExactModule::new(c.ring(), layout.total(), rel_rows)
}

/// Matrix of `K(α) : K_n -> K_m` for `α : [m] -> [n]` (any finite set map).
pub fn k_map_matrix(
    c: &ChainComplexZ,
    src_layout: &KLayout,
    dst_layout: &KLayout,
    alpha: &SimplicialMap,
) -> Mat {
    assert_eq!(src_layout.level(), alpha.target_dim());
    assert_eq!(dst_layout.level(), alpha.source_dim());
    let mut m = Mat::zero(src_layout.total(), dst_layout.total());
    for (bi, (degree, support)) in src_layout.blocks().iter().enumerate() {
        let lam = lambda_action(alpha, &ExtElem::monomial(alpha.target_dim(), support, 1));
        let delta = delta_derivation(alpha, support);
        for t in 0..src_layout.block_range(bi).len() {
            let row_idx = src_layout.block_range(bi).start + t;
            for (img_support, &coeff) in lam.terms() {
                if let Some(col) = dst_layout.index(img_support, t) {
                    m.set(row_idx, col, m.get(row_idx, col) + coeff);
                }
            }
            if *degree >= 1 && !delta.is_zero() {
                let boundary = c.boundary(*degree).matrix();
                for (img_support, &coeff) in delta.terms() {
                    for tp in 0..boundary.cols() {
                        let v = boundary.get(t, tp);
                        if v != 0 {
                            if let Some(col) = dst_layout.index(img_support, tp) {
                                m.set(row_idx, col, m.get(row_idx, col) + coeff * v);
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

/// Builds `K(C)` as a validated simplicial module up to the given level.
pub fn build_k(c: &ChainComplexZ, top: usize) -> Result<KComplex> {
    let ranks = c_cover_ranks(c);
    let layouts: Vec<KLayout> = (0..=top).map(|m| KLayout::new(m, &ranks)).collect();
    let levels: Vec<ExactModule> = layouts
        .iter()
        .map(|l| k_level_module(c, l))
        .collect::<Result<_>>()?;
    let mut faces = Vec::new();
    for m in 1..=top {
        let mut maps = Vec::new();
        for j in 0..=m {
            let alpha = SimplicialMap::coface(m, j);
            let mat = k_map_matrix(c, &layouts[m], &layouts[m - 1], &alpha);
            maps.push(ModuleMap::new(levels[m].clone(), levels[m - 1].clone(), mat)?);
        }
        faces.push(maps);
    }
    let mut degens = Vec::new();
    for m in 0..top {
        let mut maps = Vec::new();
        for j in 0..=m {
            let alpha = SimplicialMap::codegeneracy(m, j);
            let mat = k_map_matrix(c, &layouts[m], &layouts[m + 1], &alpha);
            maps.push(ModuleMap::new(levels[m].clone(), levels[m + 1].clone(), mat)?);
        }
        degens.push(maps);
    }
    let simplicial = SimplicialModuleT::new(levels, faces, degens)?;
    Ok(KComplex { complex: c.clone(), simplicial, layouts })
}

/// The last face of `K_m` with the literal table clause `d_m(φ_{m-1}) = 0`
/// instead of the dual action. This variant is what the decomposition
/// bookkeeping of the operad machinery expands against.
pub fn literal_last_face(k: &KComplex, m: usize) -> Result<ModuleMap> {
    if m == 0 || m >= k.layouts.len() {
        return Err(Error::IndexOutOfRange(format!("literal last face at level {m}")));
    }
    let src = &k.layouts[m];
    let dst = &k.layouts[m - 1];
    let mut mat = Mat::zero(src.total(), dst.total());
    for (bi, (degree, support)) in src.blocks().iter().enumerate() {
        let lam = lambda_table_face(m, m, &ExtElem::monomial(m, support, 1));
        let delta = delta_table_last_face(m, support);
        for t in 0..src.block_range(bi).len() {
            let row_idx = src.block_range(bi).start + t;
            for (img_support, &coeff) in lam.terms() {
                if let Some(col) = dst.index(img_support, t) {
                    mat.set(row_idx, col, mat.get(row_idx, col) + coeff);
                }
            }
            if *degree >= 1 && !delta.is_zero() {
                let boundary = k.complex.boundary(*degree).matrix();
                for (img_support, &coeff) in delta.terms() {
                    for tp in 0..boundary.cols() {
                        let v = boundary.get(t, tp);
                        if v != 0 {
                            if let Some(col) = dst.index(img_support, tp) {
                                mat.set(row_idx, col, mat.get(row_idx, col) + coeff * v);
                            }
                        }
                    }
                }
            }
        }
    }
    ModuleMap::new(
        k.simplicial.level(m).clone(),
        k.simplicial.level(m - 1).clone(),
        mat,
    )
}

/// A formal element of `K_m`: a sum of `(degree, coefficients in the C_i
/// cover, exterior element of pure degree i)` terms.
#[derive(Clone, Debug)]
pub struct KLevelElement {
    pub level: usize,
    pub terms: Vec<(usize, Vec<i64>, ExtElem)>,
}

impl KLevelElement {
    pub fn to_vector(&self, layout: &KLayout) -> Result<Vec<i64>> {
        let mut v = vec![0i64; layout.total()];
        for (degree, coeffs, phi) in &self.terms {
            if phi.level() != self.level {
                return Err(Error::LevelMismatch { expected: self.level, got: phi.level() });
            }
            if phi.pure_degree().is_some_and(|d| d != *degree) && !phi.is_zero() {
                return Err(Error::InvalidInput("mixed-degree exterior part".into()));
            }
            for (support, &c) in phi.terms() {
                for (t, &a) in coeffs.iter().enumerate() {
                    if a != 0 {
                        let idx = layout.index(support, t).ok_or_else(|| {
                            Error::IndexOutOfRange(format!("block {support:?} gen {t}"))
                        })?;
                        v[idx] += c * a;
                    }
                }
            }
        }
        Ok(v)
    }
}

/// Witness for `N(K(C)) ≅ C`: degreewise isomorphisms commuting with the
/// boundaries.
#[derive(Clone, Debug)]
pub struct ComplexRoundtrip {
    pub to_moore: Vec<ModuleMap>,
    pub from_moore: Vec<ModuleMap>,
}

/// Verifies `N ∘ K ≅ 1` on a chain complex: the Moore complex of `K(C)` is
/// isomorphic to `C`, generated degreewise by `a ⊗ φ_{[m-1]}`.
pub fn roundtrip_complex(c: &ChainComplexZ, top: usize) -> Result<ComplexRoundtrip> {
    let k = build_k(c, top)?;
    let moore = moore_complex(&k.simplicial)?;
    let mut to_moore = Vec::new();
    let mut from_moore = Vec::new();
    for m in 0..=top {
        let c_m = c.level_or_zero(m);
        let n_m = moore.complex.level(m).clone();
        let full_support: Vec<usize> = (0..m).collect();
        let mut to_rows = Vec::new();
        for t in 0..c_m.rank() {
            let mut v = vec![0i64; k.layouts[m].total()];
            let idx = k.layouts[m]
                .index(&full_support, t)
                .ok_or_else(|| Error::Validation(format!("missing top block at level {m}")))?;
            v[idx] = 1;
            let coords = moore.subspans[m].coords_of(&v).ok_or_else(|| {
                Error::Validation(format!(
                    "generator {t} ⊗ φ_[{m}-1] is not in the Moore subspan at level {m}"
                ))
            })?;
            to_rows.push(coords);
        }
        let to = ModuleMap::new(c_m.clone(), n_m.clone(), Mat::from_rows(to_rows, n_m.rank()))?;
        let mut from_rows = Vec::new();
        for r in 0..moore.inclusions[m].matrix().rows() {
            let ambient = moore.inclusions[m].matrix().row(r);
            let mut row = vec![0i64; c_m.rank()];
            for t in 0..c_m.rank() {
                if let Some(idx) = k.layouts[m].index(&full_support, t) {
                    row[t] = ambient[idx];
                }
            }
            from_rows.push(row);
        }
        let from = ModuleMap::new(n_m.clone(), c_m.clone(), Mat::from_rows(from_rows, c_m.rank()))?;
        if !to.then(&from)?.eq_as_maps(&ModuleMap::identity(&c_m)) {
            return Err(Error::Validation(format!(
                "C_{m} -> N_{m} -> C_{m} is not the identity"
            )));
        }
        if !from.then(&to)?.eq_as_maps(&ModuleMap::identity(&n_m)) {
            return Err(Error::Validation(format!(
                "N_{m} -> C_{m} -> N_{m} is not the identity"
            )));
        }
        to_moore.push(to);
        from_moore.push(from);
    }
    for m in 1..=top {
        let via_moore = to_moore[m].then(moore.complex.boundary(m))?;
        let via_c = c.boundary_or_zero(m).then(&to_moore[m - 1])?;
        if !via_moore.eq_as_maps(&via_c) {
            return Err(Error::Validation(format!(
                "boundary square fails at level {m}"
            )));
        }
    }
    Ok(ComplexRoundtrip { to_moore, from_moore })
}

/// Witness for `K(N(A)) ≅ A`: levelwise isomorphisms commuting with every
/// face and degeneracy.
#[derive(Clone, Debug)]
pub struct ModuleRoundtrip {
    pub moore: MooreComplex,
    pub k: KComplex,
    pub to_carrier: Vec<ModuleMap>,
    pub from_carrier: Vec<ModuleMap>,
}

/// Verifies `K ∘ N ≅ 1` on a simplicial module. The isomorphism
/// `θ_m : K_m(N A) -> A_m` sends a block element `a ⊗ φ_J` to the ordered
/// signed sum of canonical degeneracies of `a` given by the degeneracy
/// expression of `φ_J`.
pub fn roundtrip_module(a: &SimplicialModuleT) -> Result<ModuleRoundtrip> {
    let moore = moore_complex(a)?;
    let k = build_k(&moore.complex, a.top())?;
    let mut to_carrier = Vec::new();
    let mut from_carrier = Vec::new();
    for m in 0..=a.top() {
        let k_m = k.simplicial.level(m).clone();
        let mut rows = Vec::new();
        for (bi, (degree, support)) in k.layouts[m].blocks().iter().enumerate() {
            let expr = express_by_degeneracies(support, m);
            for t in 0..k.layouts[m].block_range(bi).len() {
                let mut acc = vec![0i64; a.level(m).rank()];
                for (eps, chain) in &expr {
                    let mut w = moore.inclusions[*degree].matrix().row(t).to_vec();
                    let mut level = *degree;
                    for &ix in chain {
                        w = a.degeneracy(level, ix).apply(&w);
                        level += 1;
                    }
                    debug_assert_eq!(level, m);
                    for (dst, src) in acc.iter_mut().zip(&w) {
                        *dst += eps * src;
                    }
                }
                a.ring().reduce_vec(&mut acc);
                rows.push(acc);
            }
        }
        let theta = ModuleMap::new(
            k_m.clone(),
            a.level(m).clone(),
            Mat::from_rows(rows, a.level(m).rank()),
        )?;
        let theta_inv = theta.inverse().map_err(|e| {
            Error::Validation(format!("θ at level {m} is not an isomorphism: {e}"))
        })?;
        to_carrier.push(theta);
        from_carrier.push(theta_inv);
    }
    // Commutation with all faces and degeneracies.
    for m in 1..=a.top() {
        for i in 0..=m {
            let lhs = to_carrier[m].then(a.face(m, i))?;
            let rhs = k.simplicial.face(m, i).then(&to_carrier[m - 1])?;
            if !lhs.eq_as_maps(&rhs) {
                return Err(Error::Validation(format!(
                    "θ does not commute with d_{i} at level {m}"
                )));
            }
        }
    }
    for m in 0..a.top() {
        for i in 0..=m {
            let lhs = to_carrier[m].then(a.degeneracy(m, i))?;
            let rhs = k.simplicial.degeneracy(m, i).then(&to_carrier[m + 1])?;
            if !lhs.eq_as_maps(&rhs) {
                return Err(Error::Validation(format!(
                    "θ does not commute with s_{i} at level {m}"
                )));
            }
        }
    }
    Ok(ModuleRoundtrip { moore, k, to_carrier, from_carrier })
}
