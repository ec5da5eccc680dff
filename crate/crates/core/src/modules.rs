//! Finitely generated modules over `Z` and `Z/q` with canonical submodule
//! arithmetic, chain complexes, truncated simplicial modules and the Moore
//! (normalization) functor.
//!
//! A module is a free cover `R^rank` modulo the row span of a relation
//! matrix. Over `Z/q` the relations always contain `q·I`, so every
//! computation happens in the single integer engine of [`crate::matrix`].
//! Submodules of a quotient are represented by generator lifts in the free
//! cover, canonicalized together with the relation rows; equality of
//! [`Subspan`]s is therefore equality of HNF matrices.

use crate::error::{Error, Result};
use crate::matrix::{
    apply_row, hnf, hnf_pivots, hnf_with_transform, left_kernel, reduce_against_hnf, Mat,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum ScalarRing {
    Z,
    Zmod(u64),
}

impl ScalarRing {
    pub fn modulus(&self) -> Option<i64> {
        match self {
            ScalarRing::Z => None,
            ScalarRing::Zmod(q) => Some(*q as i64),
        }
    }

    pub fn reduce_vec(&self, v: &mut [i64]) {
        if let Some(q) = self.modulus() {
            for x in v.iter_mut() {
                *x = x.rem_euclid(q);
            }
        }
    }

    pub fn reduce_mat(&self, m: &Mat) -> Mat {
        match self.modulus() {
            Some(q) => m.reduce_mod(q),
            None => m.clone(),
        }
    }
}

impl std::fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarRing::Z => write!(f, "Z"),
            ScalarRing::Zmod(q) => write!(f, "Z/{q}"),
        }
    }
}

/// Finitely presented module: free cover of the given rank modulo the
/// canonical row span of `relations`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ExactModule {
    ring: ScalarRing,
    rank: usize,
    relations: Mat,
}

impl ExactModule {
    pub fn new(ring: ScalarRing, rank: usize, relation_rows: Vec<Vec<i64>>) -> Result<Self> {
        if let ScalarRing::Zmod(q) = ring {
            if q < 2 {
                return Err(Error::InvalidInput(format!("modulus {q} < 2")));
            }
        }
        let mut rel = Mat::from_rows(relation_rows, rank);
        if let Some(q) = ring.modulus() {
            for i in 0..rank {
                let mut row = vec![0i64; rank];
                row[i] = q;
                rel.push_row(&row);
            }
        }
        let relations = hnf(&rel, ring.modulus());
        Ok(ExactModule { ring, rank, relations })
    }

    pub fn free(ring: ScalarRing, rank: usize) -> Self {
        ExactModule::new(ring, rank, Vec::new()).expect("free module")
    }

    pub fn zero(ring: ScalarRing) -> Self {
        ExactModule::free(ring, 0)
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &Mat {
        &self.relations
    }

    /// Number of elements, when finite.
    pub fn element_count(&self) -> Option<u128> {
        let pivots = hnf_pivots(&self.relations);
        if pivots.len() < self.rank {
            if self.rank == 0 {
                return Some(1);
            }
            return None;
        }
        let mut n: u128 = 1;
        for (r, c) in pivots {
            n *= self.relations.get(r, c).unsigned_abs() as u128;
        }
        Some(n)
    }

    pub fn is_zero_module(&self) -> bool {
        self.element_count() == Some(1)
    }

    /// True when the vector is congruent to zero.
    pub fn vec_is_zero(&self, v: &[i64]) -> bool {
        reduce_against_hnf(&self.relations, v).is_some()
    }

    pub fn zero_span(&self) -> Subspan {
        Subspan::new(self.clone(), Mat::zero(0, self.rank))
    }

    pub fn full_span(&self) -> Subspan {
        Subspan::new(self.clone(), Mat::identity(self.rank))
    }

    fn check_same(&self, other: &ExactModule) -> Result<()> {
        if self != other {
            return Err(Error::AmbientMismatch(format!(
                "modules differ: {} rank {} vs {} rank {}",
                self.ring, self.rank, other.ring, other.rank
            )));
        }
        Ok(())
    }
}

/// Submodule of an [`ExactModule`], stored as the canonical HNF of the
/// generator lifts together with the ambient relations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Subspan {
    ambient: ExactModule,
    gens: Mat,
}

impl Subspan {
    pub fn new(ambient: ExactModule, generator_rows: Mat) -> Subspan {
        assert_eq!(generator_rows.cols(), ambient.rank(), "generator width");
        let stacked = generator_rows.vstack(ambient.relations());
        let gens = hnf(&stacked, ambient.ring().modulus());
        Subspan { ambient, gens }
    }

    pub fn from_vectors(ambient: &ExactModule, vs: &[Vec<i64>]) -> Subspan {
        Subspan::new(ambient.clone(), Mat::from_rows(vs.to_vec(), ambient.rank()))
    }

    pub fn ambient(&self) -> &ExactModule {
        &self.ambient
    }

    /// Canonical lattice basis (ambient relations included).
    pub fn basis(&self) -> &Mat {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens == *self.ambient.relations()
    }

    pub fn is_full(&self) -> bool {
        *self == self.ambient.full_span()
    }

    pub fn sum(&self, other: &Subspan) -> Result<Subspan> {
        self.ambient.check_same(&other.ambient)?;
        Ok(Subspan::new(self.ambient.clone(), self.gens.vstack(&other.gens)))
    }

    pub fn intersect(&self, other: &Subspan) -> Result<Subspan> {
        self.ambient.check_same(&other.ambient)?;
        // x·A = y·B  <=>  (x, y) in the left kernel of [A; -B].
        let stacked = self.gens.vstack(&other.gens.neg());
        let ker = left_kernel(&stacked);
        let mut rows = Vec::new();
        for r in 0..ker.rows() {
            let x = &ker.row(r)[..self.gens.rows()];
            rows.push(apply_row(x, &self.gens));
        }
        Ok(Subspan::new(
            self.ambient.clone(),
            Mat::from_rows(rows, self.ambient.rank()),
        ))
    }

    pub fn contains_vec(&self, v: &[i64]) -> bool {
        reduce_against_hnf(&self.gens, v).is_some()
    }

    /// Coordinates of `v` in the canonical basis rows, when `v` lies in the span.
    pub fn coords_of(&self, v: &[i64]) -> Option<Vec<i64>> {
        reduce_against_hnf(&self.gens, v)
    }

    pub fn contains(&self, other: &Subspan) -> Result<bool> {
        self.ambient.check_same(&other.ambient)?;
        Ok((0..other.gens.rows()).all(|r| self.contains_vec(other.gens.row(r))))
    }

    pub fn equals(&self, other: &Subspan) -> Result<bool> {
        self.ambient.check_same(&other.ambient)?;
        Ok(self.gens == other.gens)
    }

    /// Number of elements of the quotient `span / relations`, when finite.
    pub fn element_count(&self) -> Option<u128> {
        let span_pivots = hnf_pivots(&self.gens);
        let rel_pivots = hnf_pivots(self.ambient.relations());
        if span_pivots.len() < self.ambient.rank() || rel_pivots.len() < self.ambient.rank() {
            if self.gens == *self.ambient.relations() {
                return Some(1);
            }
            return None;
        }
        let mut num: u128 = 1;
        for (r, c) in rel_pivots {
            num *= self.ambient.relations().get(r, c).unsigned_abs() as u128;
        }
        let mut den: u128 = 1;
        for (r, c) in span_pivots {
            den *= self.gens.get(r, c).unsigned_abs() as u128;
        }
        Some(num / den)
    }

    /// Presents the subspan as a module in its own right, with the inclusion map.
    ///
    /// Generators are the canonical basis rows; ambient relations are
    /// re-expressed in those coordinates.
    pub fn present(&self) -> Result<(ExactModule, ModuleMap)> {
        let basis = self.gens.clone();
        let mut rel_rows = Vec::new();
        for r in 0..self.ambient.relations().rows() {
            let coords = reduce_against_hnf(&basis, self.ambient.relations().row(r))
                .ok_or_else(|| Error::Unsolvable("relation outside subspan".into()))?;
            rel_rows.push(coords);
        }
        // `new` re-adjoins q·I over Z/q, which is sound: q times a basis row
        // lies in q·Z^rank, hence in the relation lattice.
        let presented = ExactModule::new(self.ambient.ring(), basis.rows(), rel_rows)?;
        let incl = ModuleMap::new(presented.clone(), self.ambient.clone(), basis)?;
        Ok((presented, incl))
    }
}

/// Map of presented modules. Rows of `matrix` are the images of the source
/// basis in target coordinates; application is `v · matrix`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModuleMap {
    source: ExactModule,
    target: ExactModule,
    matrix: Mat,
}

impl ModuleMap {
    pub fn new(source: ExactModule, target: ExactModule, matrix: Mat) -> Result<Self> {
        if matrix.rows() != source.rank() || matrix.cols() != target.rank() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix {}x{} for ranks {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch {
                left: source.ring().to_string(),
                right: target.ring().to_string(),
            });
        }
        let matrix = source.ring().reduce_mat(&matrix);
        let map = ModuleMap { source, target, matrix };
        map.check_well_defined()?;
        Ok(map)
    }

    fn check_well_defined(&self) -> Result<()> {
        let rel = self.source.relations();
        for r in 0..rel.rows() {
            let img = apply_row(rel.row(r), &self.matrix);
            if !self.target.vec_is_zero(&img) {
                return Err(Error::Validation(format!(
                    "map not well defined: source relation row {r} maps outside target relations"
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ExactModule {
        &self.source
    }

    pub fn target(&self) -> &ExactModule {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn identity(m: &ExactModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Mat::identity(m.rank()),
        }
    }

    pub fn zero(source: &ExactModule, target: &ExactModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Mat::zero(source.rank(), target.rank()),
        }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = apply_row(v, &self.matrix);
        self.source.ring().reduce_vec(&mut out);
        out
    }

    /// Composite `self` then `g`.
    pub fn then(&self, g: &ModuleMap) -> Result<ModuleMap> {
        self.target.check_same(&g.source)?;
        ModuleMap::new(
            self.source.clone(),
            g.target.clone(),
            self.matrix.mul(&g.matrix),
        )
    }

    /// Equality as maps of presented modules (rows may differ by relations).
    pub fn eq_as_maps(&self, other: &ModuleMap) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let diff = self.matrix.sub(&other.matrix);
        (0..diff.rows()).all(|r| self.target.vec_is_zero(diff.row(r)))
    }

    pub fn is_zero_map(&self) -> bool {
        (0..self.matrix.rows()).all(|r| self.target.vec_is_zero(self.matrix.row(r)))
    }

    pub fn kernel(&self) -> Subspan {
        // x·M = 0 in the target quotient <=> (x, y)·[M; R_t] = 0 for some y.
        let stacked = self.matrix.vstack(self.target.relations());
        let ker = left_kernel(&stacked);
        let mut rows = Vec::new();
        for r in 0..ker.rows() {
            rows.push(ker.row(r)[..self.source.rank()].to_vec());
        }
        Subspan::new(
            self.source.clone(),
            Mat::from_rows(rows, self.source.rank()),
        )
    }

    pub fn image_of(&self, s: &Subspan) -> Result<Subspan> {
        s.ambient().check_same(&self.source)?;
        let rows: Vec<Vec<i64>> = (0..s.basis().rows())
            .map(|r| apply_row(s.basis().row(r), &self.matrix))
            .collect();
        Ok(Subspan::new(
            self.target.clone(),
            Mat::from_rows(rows, self.target.rank()),
        ))
    }

    pub fn image(&self) -> Subspan {
        self.image_of(&self.source.full_span()).expect("image")
    }

    pub fn preimage_of(&self, s: &Subspan) -> Result<Subspan> {
        s.ambient().check_same(&self.target)?;
        // x·M in span(S) <=> (x, y)·[M; S] = 0 for some y (S already
        // contains the target relations).
        let stacked = self.matrix.vstack(s.basis());
        let ker = left_kernel(&stacked);
        let mut rows = Vec::new();
        for r in 0..ker.rows() {
            rows.push(ker.row(r)[..self.source.rank()].to_vec());
        }
        Ok(Subspan::new(
            self.source.clone(),
            Mat::from_rows(rows, self.source.rank()),
        ))
    }

    /// Invertibility as a map of presented modules; returns the inverse.
    pub fn inverse(&self) -> Result<ModuleMap> {
        if !self.image().is_full() {
            return Err(Error::Unsolvable("map is not surjective".into()));
        }
        if !self.kernel().equals(&self.source.zero_span())? {
            return Err(Error::Unsolvable("map is not injective".into()));
        }
        // Solve e_i = x_i · [M; R_t] row by row.
        let stacked = self.matrix.vstack(self.target.relations());
        let (h, u) = hnf_with_transform(&stacked);
        let mut rows = Vec::new();
        for i in 0..self.target.rank() {
            let mut e = vec![0i64; self.target.rank()];
            e[i] = 1;
            let coeffs = reduce_against_hnf(&h, &e)
                .ok_or_else(|| Error::Unsolvable("not surjective".into()))?;
            let full = apply_row(&coeffs, &u);
            rows.push(full[..self.matrix.rows()].to_vec());
        }
        ModuleMap::new(
            self.target.clone(),
            self.source.clone(),
            Mat::from_rows(rows, self.matrix.rows()),
        )
    }
}

/// Non-negatively graded chain complex with `d ∘ d = 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainComplexZ {
    levels: Vec<ExactModule>,
    /// `boundaries[i]`: level `i+1` -> level `i`.
    boundaries: Vec<ModuleMap>,
}

impl ChainComplexZ {
    pub fn new(levels: Vec<ExactModule>, boundaries: Vec<ModuleMap>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidInput("complex needs at least level 0".into()));
        }
        if boundaries.len() + 1 != levels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} levels need {} boundaries, got {}",
                levels.len(),
                levels.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.source() != &levels[i + 1] || d.target() != &levels[i] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary {} does not match levels",
                    i + 1
                )));
            }
        }
        let c = ChainComplexZ { levels, boundaries };
        c.validate()?;
        Ok(c)
    }

    /// Complex concentrated in degree 0.
    pub fn concentrated(m: ExactModule) -> Self {
        ChainComplexZ { levels: vec![m], boundaries: vec![] }
    }

    pub fn ring(&self) -> ScalarRing {
        self.levels[0].ring()
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, i: usize) -> &ExactModule {
        &self.levels[i]
    }

    /// Boundary map out of level `i` (requires `1 <= i <= top`).
    pub fn boundary(&self, i: usize) -> &ModuleMap {
        &self.boundaries[i - 1]
    }

    /// Boundary matrix out of level `i`, or a zero map above the top.
    pub fn boundary_or_zero(&self, i: usize) -> ModuleMap {
        if i >= 1 && i <= self.top() {
            self.boundary(i).clone()
        } else {
            let zero = ExactModule::zero(self.ring());
            let src = if i <= self.top() { self.levels[i].clone() } else { zero.clone() };
            let tgt = if i >= 1 && i - 1 <= self.top() { self.levels[i - 1].clone() } else { zero };
            ModuleMap::zero(&src, &tgt)
        }
    }

    /// Level module, or the zero module above the top.
    pub fn level_or_zero(&self, i: usize) -> ExactModule {
        if i <= self.top() {
            self.levels[i].clone()
        } else {
            ExactModule::zero(self.ring())
        }
    }

    pub fn validate(&self) -> Result<()> {
        for i in 1..self.boundaries.len() {
            let dd = self.boundaries[i].then(&self.boundaries[i - 1])?;
            if !dd.is_zero_map() {
                return Err(Error::Validation(format!(
                    "d_{} ∘ d_{} is nonzero",
                    i,
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Truncated simplicial module: levels `0..=top` with all faces and
/// degeneracies, validated against the simplicial identities.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplicialModuleT {
    levels: Vec<ExactModule>,
    /// `faces[m-1][i]` = `d_i` out of level `m`, for `1 <= m <= top`.
    faces: Vec<Vec<ModuleMap>>,
    /// `degens[m][i]` = `s_i` out of level `m`, for `0 <= m < top`.
    degens: Vec<Vec<ModuleMap>>,
}

impl SimplicialModuleT {
    pub fn new(
        levels: Vec<ExactModule>,
        faces: Vec<Vec<ModuleMap>>,
        degens: Vec<Vec<ModuleMap>>,
    ) -> Result<Self> {
        let a = SimplicialModuleT::new_unvalidated(levels, faces, degens)?;
        a.validate()?;
        Ok(a)
    }

    pub fn new_unvalidated(
        levels: Vec<ExactModule>,
        faces: Vec<Vec<ModuleMap>>,
        degens: Vec<Vec<ModuleMap>>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidInput("need at least level 0".into()));
        }
        let top = levels.len() - 1;
        if faces.len() != top || degens.len() != top {
            return Err(Error::DimensionMismatch(format!(
                "top {top} needs {top} face lists and {top} degeneracy lists"
            )));
        }
        for m in 1..=top {
            if faces[m - 1].len() != m + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "level {m} needs {} faces",
                    m + 1
                )));
            }
            for (i, d) in faces[m - 1].iter().enumerate() {
                if d.source() != &levels[m] || d.target() != &levels[m - 1] {
                    return Err(Error::DimensionMismatch(format!(
                        "face d_{i} at level {m} has wrong endpoints"
                    )));
                }
            }
        }
        for m in 0..top {
            if degens[m].len() != m + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "level {m} needs {} degeneracies",
                    m + 1
                )));
            }
            for (i, s) in degens[m].iter().enumerate() {
                if s.source() != &levels[m] || s.target() != &levels[m + 1] {
                    return Err(Error::DimensionMismatch(format!(
                        "degeneracy s_{i} at level {m} has wrong endpoints"
                    )));
                }
            }
        }
        Ok(SimplicialModuleT { levels, faces, degens })
    }

    pub fn ring(&self) -> ScalarRing {
        self.levels[0].ring()
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &ExactModule {
        &self.levels[m]
    }

    pub fn face(&self, m: usize, i: usize) -> &ModuleMap {
        &self.faces[m - 1][i]
    }

    pub fn degeneracy(&self, m: usize, i: usize) -> &ModuleMap {
        &self.degens[m][i]
    }

    /// Constant simplicial module on `m`.
    pub fn constant(m: &ExactModule, top: usize) -> Self {
        let levels = vec![m.clone(); top + 1];
        let faces = (1..=top)
            .map(|lvl| vec![ModuleMap::identity(m); lvl + 1])
            .collect();
        let degens = (0..top)
            .map(|lvl| vec![ModuleMap::identity(m); lvl + 1])
            .collect();
        SimplicialModuleT { levels, faces, degens }
    }

    /// Checks every simplicial identity within the truncation; reports the
    /// first failure by name.
    pub fn validate(&self) -> Result<()> {
        let top = self.top();
        // d_i d_j = d_{j-1} d_i for i < j (two steps down).
        for m in 2..=top {
            for j in 1..=m {
                for i in 0..j {
                    let lhs = self.face(m, j).then(self.face(m - 1, i))?;
                    let rhs = self.face(m, i).then(self.face(m - 1, j - 1))?;
                    if !lhs.eq_as_maps(&rhs) {
                        return Err(Error::Validation(format!(
                            "identity d_{i} d_{j} = d_{} d_{i} fails at level {m}",
                            j - 1
                        )));
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j (two steps up).
        for m in 0..top.saturating_sub(1) {
            for j in 0..=m {
                for i in 0..=j {
                    let lhs = self.degeneracy(m, j).then(self.degeneracy(m + 1, i))?;
                    let rhs = self.degeneracy(m, i).then(self.degeneracy(m + 1, j + 1))?;
                    if !lhs.eq_as_maps(&rhs) {
                        return Err(Error::Validation(format!(
                            "identity s_{i} s_{j} = s_{} s_{i} fails at level {m}",
                            j + 1
                        )));
                    }
                }
            }
        }
        // d_i s_j interchange.
        for m in 0..top {
            for j in 0..=m {
                for i in 0..=m + 1 {
                    let lhs = self.degeneracy(m, j).then(self.face(m + 1, i))?;
                    let ok = if i < j {
                        let rhs = self.face(m, i).then(self.degeneracy(m - 1, j - 1))?;
                        lhs.eq_as_maps(&rhs)
                    } else if i == j || i == j + 1 {
                        lhs.eq_as_maps(&ModuleMap::identity(&self.levels[m]))
                    } else {
                        let rhs = self.face(m, i - 1).then(self.degeneracy(m - 1, j))?;
                        lhs.eq_as_maps(&rhs)
                    };
                    if !ok {
                        return Err(Error::Validation(format!(
                            "identity d_{i} s_{j} fails at level {m}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The subspan `N_m = ∩_{i<m} ker d_i` of level `m`.
    pub fn moore_subspan(&self, m: usize) -> Subspan {
        if m == 0 {
            return self.levels[0].full_span();
        }
        let mut n = self.face(m, 0).kernel();
        for i in 1..m {
            n = n.intersect(&self.face(m, i).kernel()).expect("same ambient");
        }
        n
    }
}

/// The Moore complex of a simplicial module together with the inclusion
/// witnesses of each `N_m` into `A_m`.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    pub complex: ChainComplexZ,
    pub inclusions: Vec<ModuleMap>,
    pub subspans: Vec<Subspan>,
}

/// Normalization: `N_m = ∩_{i<m} ker d_i`, boundary induced by the last face.
pub fn moore_complex(a: &SimplicialModuleT) -> Result<MooreComplex> {
    a.validate()?;
    let top = a.top();
    let mut levels = Vec::new();
    let mut inclusions = Vec::new();
    let mut subspans = Vec::new();
    for m in 0..=top {
        let n = a.moore_subspan(m);
        let (presented, incl) = n.present()?;
        levels.push(presented);
        inclusions.push(incl);
        subspans.push(n);
    }
    let mut boundaries = Vec::new();
    for m in 1..=top {
        // Restrict/corestrict d_m to N_m -> N_{m-1}.
        let dm = a.face(m, m);
        let mut rows = Vec::new();
        for r in 0..inclusions[m].matrix().rows() {
            let ambient_img = dm.apply(inclusions[m].matrix().row(r));
            let coords = subspans[m - 1].coords_of(&ambient_img).ok_or_else(|| {
                Error::Validation(format!(
                    "boundary image at level {m} leaves the Moore subspan"
                ))
            })?;
            rows.push(coords);
        }
        boundaries.push(ModuleMap::new(
            levels[m].clone(),
            levels[m - 1].clone(),
            Mat::from_rows(rows, levels[m - 1].rank()),
        )?);
    }
    let complex = ChainComplexZ::new(levels, boundaries)?;
    Ok(MooreComplex { complex, inclusions, subspans })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> ScalarRing {
        ScalarRing::Z
    }

    #[test]
    fn span_sum_with_zero_is_identity() {
        let m = ExactModule::free(z(), 2);
        let s = Subspan::from_vectors(&m, &[vec![2, 0]]);
        let sum = s.sum(&m.zero_span()).unwrap();
        assert!(sum.equals(&s).unwrap());
    }

    #[test]
    fn intersect_transverse_lines_is_zero() {
        let m = ExactModule::free(z(), 2);
        let a = Subspan::from_vectors(&m, &[vec![2, 0]]);
        let b = Subspan::from_vectors(&m, &[vec![0, 3]]);
        let i = a.intersect(&b).unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn contains_is_reflexive() {
        let m = ExactModule::free(z(), 3);
        let s = Subspan::from_vectors(&m, &[vec![1, 2, 3], vec![0, 5, 0]]);
        assert!(s.contains(&s).unwrap());
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let m = ExactModule::free(z(), 2);
        let id = ModuleMap::identity(&m);
        assert!(id.kernel().is_zero());
    }

    #[test]
    fn kernel_of_doubling_over_z_and_z4() {
        let m = ExactModule::free(z(), 1);
        let two = ModuleMap::new(m.clone(), m.clone(), Mat::from_rows(vec![vec![2]], 1)).unwrap();
        assert!(two.kernel().is_zero());

        let m4 = ExactModule::free(ScalarRing::Zmod(4), 1);
        let two4 =
            ModuleMap::new(m4.clone(), m4.clone(), Mat::from_rows(vec![vec![2]], 1)).unwrap();
        let k = two4.kernel();
        assert!(k.contains_vec(&[2]));
        assert!(!k.contains_vec(&[1]));
        assert_eq!(k.element_count(), Some(2));
    }

    #[test]
    fn image_of_zero_map_is_zero() {
        let m = ExactModule::free(z(), 2);
        let zmap = ModuleMap::zero(&m, &m);
        assert!(zmap.image().is_zero());
    }

    #[test]
    fn quotient_module_element_count() {
        // Z^2 / <(2,0)> is infinite; (Z/4)^1 / <2> has two elements.
        let m = ExactModule::new(z(), 2, vec![vec![2, 0]]).unwrap();
        assert_eq!(m.element_count(), None);
        let m2 = ExactModule::new(ScalarRing::Zmod(4), 1, vec![vec![2]]).unwrap();
        assert_eq!(m2.element_count(), Some(2));
    }

    #[test]
    fn moore_of_constant_module_vanishes_above_zero() {
        let m = ExactModule::free(ScalarRing::Zmod(5), 2);
        let a = SimplicialModuleT::constant(&m, 3);
        let moore = moore_complex(&a).unwrap();
        assert_eq!(moore.complex.level(0).rank(), 2);
        for lvl in 1..=3 {
            assert!(moore.complex.level(lvl).is_zero_module());
        }
    }

    #[test]
    fn presented_subspan_roundtrips() {
        let m = ExactModule::new(ScalarRing::Zmod(4), 2, vec![]).unwrap();
        let s = Subspan::from_vectors(&m, &[vec![2, 0], vec![0, 1]]);
        let (presented, incl) = s.present().unwrap();
        assert_eq!(presented.element_count(), Some(8));
        // Inclusion image regenerates the same span.
        assert!(incl.image().equals(&s).unwrap());
    }
}
