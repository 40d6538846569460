//! Tensor products over graded rings as explicit quotient spaces.
//!
//! `M ⊗_A N` is built blockwise: for each outer pair `(c, b)` the ambient
//! space is `⊕_i M_{c,i} ⊗ N_{i,b}` on pure-tensor basis pairs, divided by
//! the balancing relations `m·a ⊗ n − m ⊗ a·n` ranging over all basis
//! triples with matching middle indices — exhaustive within the corner, no
//! sampling. The result is itself a [`UnitalBimodule`] whose canonical basis
//! is the set of free pure pairs picked by the deterministic row reduction,
//! so separately built copies of the same tensor agree coordinate for
//! coordinate.

use crate::linalg::{LinalgError, QuotientSpace};
use crate::module::{
    dense_to_sparse, module_from_parts, same_module, sparse_to_dense, CornerModule, LinearMap,
    ModBasis, ModuleError, UnitalBimodule,
};
use crate::ring::{same_ring, GradedRing, RingElement, SparseVec};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("tensor factors disagree over the middle ring: {context}")]
    RingMismatch { context: String },
    #[error("map does not match the tensor factor: {context}")]
    FactorMismatch { context: String },
    #[error("induced map violates balancing at {witness}: {detail}")]
    Balancing { witness: String, detail: String },
    #[error("{context} requires the regular bimodule as the {side} factor")]
    NotRegularFactor { context: String, side: String },
    #[error("canonical map is not invertible: {context}")]
    NotInvertible { context: String },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

struct Block {
    quo: QuotientSpace,
    mod_offset: usize,
}

/// `M ⊗_A N` with its canonical basis, projection and pure-tensor evaluator.
pub struct TensorSpace {
    over: Arc<GradedRing>,
    left_factor: Arc<UnitalBimodule>,
    right_factor: Arc<UnitalBimodule>,
    module: Arc<UnitalBimodule>,
    /// Global ambient slots: pure basis pairs `(m, n)` grouped by block.
    ambient: Vec<(usize, usize)>,
    ambient_pos: BTreeMap<(usize, usize), usize>,
    blocks: BTreeMap<(usize, usize), Block>,
    /// Module coordinates of each ambient slot's class (sparse).
    proj_cols: Vec<SparseVec>,
    /// Balancing generators as basis triples `(m, a, n)`.
    relation_triples: Vec<(usize, usize, usize)>,
    /// The free pure pair behind each module basis vector.
    pair_of_basis: Vec<(usize, usize)>,
}

/// Builds `M ⊗_A N` for a right-`A` module `M` and a left-`A` module `N`.
pub fn tensor_over(
    a: &Arc<GradedRing>,
    m: &Arc<UnitalBimodule>,
    n: &Arc<UnitalBimodule>,
) -> Result<Arc<TensorSpace>, TensorError> {
    if !same_ring(m.right_ring(), a) {
        return Err(TensorError::RingMismatch {
            context: format!(
                "left factor {} is a right {}-module, not {}",
                m.name(),
                m.right_ring().name(),
                a.name()
            ),
        });
    }
    if !same_ring(n.left_ring(), a) {
        return Err(TensorError::RingMismatch {
            context: format!(
                "right factor {} is a left {}-module, not {}",
                n.name(),
                n.left_ring().name(),
                a.name()
            ),
        });
    }

    let c_ring = m.left_ring().clone();
    let b_ring = n.right_ring().clone();
    let mid = a.idems().len();

    let mut ambient = Vec::new();
    let mut ambient_pos = BTreeMap::new();
    let mut slot_block = Vec::new();
    let mut blocks = BTreeMap::new();
    let mut relation_triples = Vec::new();
    let mut basis = Vec::new();
    let mut pair_of_basis = Vec::new();

    for c in 0..c_ring.idems().len() {
        for b in 0..b_ring.idems().len() {
            let mut slots = Vec::new();
            for i in 0..mid {
                for &mb in m.component(c, i) {
                    for &nb in n.component(i, b) {
                        let slot = ambient.len();
                        ambient.push((mb, nb));
                        ambient_pos.insert((mb, nb), slot);
                        slot_block.push(((c, b), slots.len()));
                        slots.push(slot);
                    }
                }
            }
            let local_pos: BTreeMap<usize, usize> =
                slots.iter().enumerate().map(|(l, &s)| (s, l)).collect();
            // balancing relations m·a ⊗ n − m ⊗ a·n over all basis triples
            let mut relations = Vec::new();
            for j in 0..mid {
                for i in 0..mid {
                    for &ab in a.component(j, i) {
                        for &mb in m.component(c, j) {
                            let ma = m.right_act_basis(mb, ab);
                            for &nb in n.component(i, b) {
                                let an = n.left_act_basis(ab, nb);
                                let mut rel = vec![Scalar::zero(); slots.len()];
                                let mut nonzero = false;
                                for (mp, coef) in &ma {
                                    let slot = ambient_pos[&(*mp, nb)];
                                    rel[local_pos[&slot]] += coef;
                                    nonzero = true;
                                }
                                for (np, coef) in &an {
                                    let slot = ambient_pos[&(mb, *np)];
                                    rel[local_pos[&slot]] -= coef;
                                    nonzero = true;
                                }
                                if nonzero && !rel.iter().all(Scalar::is_zero) {
                                    relations.push(rel);
                                }
                                relation_triples.push((mb, ab, nb));
                            }
                        }
                    }
                }
            }
            let quo = QuotientSpace::new(slots.len(), &relations)?;
            let mod_offset = basis.len();
            for &free in quo.free_indices() {
                let (mb, nb) = ambient[slots[free]];
                basis.push(ModBasis {
                    label: format!("{}⊗{}", m.basis()[mb].label, n.basis()[nb].label),
                    row: c,
                    col: b,
                });
                pair_of_basis.push((mb, nb));
            }
            blocks.insert((c, b), Block { quo, mod_offset });
        }
    }

    // class of each ambient slot, in module coordinates
    let mut proj_cols = Vec::with_capacity(ambient.len());
    for slot in 0..ambient.len() {
        let (key, local) = slot_block[slot];
        let block = &blocks[&key];
        let col = block.quo.project_basis(local);
        let sparse: SparseVec = col
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (block.mod_offset + i, c))
            .collect();
        proj_cols.push(sparse);
    }

    // actions on the canonical basis, computed through representatives
    let pure_basis = |mb: usize, nb: usize| -> Option<usize> { ambient_pos.get(&(mb, nb)).copied() };
    let mut left_act: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for u in 0..c_ring.dim() {
        for (t, &(mb, nb)) in pair_of_basis.iter().enumerate() {
            if c_ring.basis()[u].col != m.basis()[mb].row {
                continue;
            }
            let um = m.left_act_basis(u, mb);
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (mp, coef) in &um {
                if let Some(slot) = pure_basis(*mp, nb) {
                    for (w, c) in &proj_cols[slot] {
                        let e = acc.entry(*w).or_insert_with(Scalar::zero);
                        *e += &(c * coef);
                    }
                }
            }
            let v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !v.is_empty() {
                left_act.insert((u, t), v);
            }
        }
    }
    let mut right_act: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (t, &(mb, nb)) in pair_of_basis.iter().enumerate() {
        for u in 0..b_ring.dim() {
            if n.basis()[nb].col != b_ring.basis()[u].row {
                continue;
            }
            let nu = n.right_act_basis(nb, u);
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (np, coef) in &nu {
                if let Some(slot) = pure_basis(mb, *np) {
                    for (w, c) in &proj_cols[slot] {
                        let e = acc.entry(*w).or_insert_with(Scalar::zero);
                        *e += &(c * coef);
                    }
                }
            }
            let v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !v.is_empty() {
                right_act.insert((t, u), v);
            }
        }
    }

    let module = module_from_parts(
        format!("{}⊗{}", m.name(), n.name()),
        c_ring,
        b_ring,
        basis,
        left_act,
        right_act,
    );
    Ok(Arc::new(TensorSpace {
        over: a.clone(),
        left_factor: m.clone(),
        right_factor: n.clone(),
        module,
        ambient,
        ambient_pos,
        blocks,
        proj_cols,
        relation_triples,
        pair_of_basis,
    }))
}

impl TensorSpace {
    pub fn over(&self) -> &Arc<GradedRing> {
        &self.over
    }

    pub fn left_factor(&self) -> &Arc<UnitalBimodule> {
        &self.left_factor
    }

    pub fn right_factor(&self) -> &Arc<UnitalBimodule> {
        &self.right_factor
    }

    pub fn module(&self) -> &Arc<UnitalBimodule> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    /// The free pure pair representing a canonical basis vector.
    pub fn pair_of_basis(&self, idx: usize) -> (usize, usize) {
        self.pair_of_basis[idx]
    }

    /// Evaluates the pure tensor `m ⊗ n` into canonical coordinates. The
    /// evaluation is bilinear and kills mismatched middle components.
    pub fn pure(&self, mv: &[Scalar], nv: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(mv.len(), self.left_factor.dim(), "left factor dimension");
        assert_eq!(nv.len(), self.right_factor.dim(), "right factor dimension");
        let mut out = vec![Scalar::zero(); self.module.dim()];
        for (mi, mc) in mv.iter().enumerate() {
            if mc.is_zero() {
                continue;
            }
            for (ni, nc) in nv.iter().enumerate() {
                if nc.is_zero() {
                    continue;
                }
                if let Some(&slot) = self.ambient_pos.get(&(mi, ni)) {
                    let f = mc * nc;
                    for (w, c) in &self.proj_cols[slot] {
                        out[*w] += &(c * &f);
                    }
                }
            }
        }
        out
    }

    /// `pure` on single basis elements.
    pub fn pure_of_pair(&self, mb: usize, nb: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.module.dim()];
        if let Some(&slot) = self.ambient_pos.get(&(mb, nb)) {
            for (w, c) in &self.proj_cols[slot] {
                out[*w] = c.clone();
            }
        }
        out
    }

    pub fn relation_triples(&self) -> &[(usize, usize, usize)] {
        &self.relation_triples
    }

    /// Dimension of one graded block.
    pub fn block_dim(&self, row: usize, col: usize) -> usize {
        self.blocks.get(&(row, col)).map_or(0, |b| b.quo.dim())
    }
}

/// The functor action `f ⊗ g` between tensor spaces, verified to send every
/// balancing relation of the source into a relation of the target. `f` must
/// be right-linear and `g` left-linear over the middle ring; a violation
/// surfaces as a balancing witness.
pub fn induced_map(
    src: &TensorSpace,
    dst: &TensorSpace,
    f: &LinearMap,
    g: &LinearMap,
) -> Result<LinearMap, TensorError> {
    if !same_module(f.source(), &src.left_factor) || !same_module(g.source(), &src.right_factor) {
        return Err(TensorError::FactorMismatch {
            context: format!(
                "sources of ({}, {}) do not match the factors of {}",
                f.source().name(),
                g.source().name(),
                src.module.name()
            ),
        });
    }
    if !same_module(f.target(), &dst.left_factor) || !same_module(g.target(), &dst.right_factor) {
        return Err(TensorError::FactorMismatch {
            context: format!(
                "targets of maps do not match the factors of {}",
                dst.module.name()
            ),
        });
    }

    let cols: Vec<Vec<Scalar>> = (0..src.module.dim())
        .map(|t| {
            let (mb, nb) = src.pair_of_basis[t];
            let fm = f.apply(&src.left_factor.basis_vec(mb));
            let gn = g.apply(&src.right_factor.basis_vec(nb));
            dst.pure(&fm, &gn)
        })
        .collect();
    let map = LinearMap::from_columns(&src.module, &dst.module, cols)?;

    // well-definedness: the image of each balancing generator is a relation
    for &(mb, ab, nb) in &src.relation_triples {
        let ma = sparse_to_dense(
            &src.left_factor.right_act_basis(mb, ab),
            src.left_factor.dim(),
        );
        let an = sparse_to_dense(
            &src.right_factor.left_act_basis(ab, nb),
            src.right_factor.dim(),
        );
        let lhs = dst.pure(&f.apply(&ma), &g.apply(&src.right_factor.basis_vec(nb)));
        let rhs = dst.pure(&f.apply(&src.left_factor.basis_vec(mb)), &g.apply(&an));
        if lhs != rhs {
            return Err(TensorError::Balancing {
                witness: format!(
                    "({}, {}, {})",
                    src.left_factor.basis()[mb].label,
                    src.over.basis()[ab].label,
                    src.right_factor.basis()[nb].label
                ),
                detail: format!(
                    "f(m·a)⊗g(n) = {} but f(m)⊗g(a·n) = {}",
                    dst.module.format_vec(&lhs),
                    dst.module.format_vec(&rhs)
                ),
            });
        }
    }
    Ok(map)
}

// ---------------------------------------------------------------------------
// Corner maps
// ---------------------------------------------------------------------------

/// The maps `X → eA ⊗_A X` (x ↦ e⊗x) and `eA ⊗_A X → X` (ea⊗x ↦ ea·x)
/// attached to a generator-sum idempotent `e`.
pub struct CornerMaps {
    pub ideal: Arc<UnitalBimodule>,
    pub space: Arc<TensorSpace>,
    /// `x ↦ e ⊗ x`.
    pub unit_map: LinearMap,
    /// `ea ⊗ x ↦ ea·x`.
    pub action_map: LinearMap,
}

fn ideal_coords_of_unit(
    ideal: &Arc<UnitalBimodule>,
    ring: &Arc<GradedRing>,
    rows: &[usize],
) -> Vec<Scalar> {
    let e = RingElement::sum_of_idempotents(ring, rows);
    let mut v = vec![Scalar::zero(); ideal.dim()];
    for (w, c) in e.coords() {
        let label = &ring.basis()[*w].label;
        let idx = ideal.basis_index(label).expect("idempotent lives in its ideal");
        v[idx] = c.clone();
    }
    v
}

pub fn corner_maps(
    ground: &Arc<GradedRing>,
    ring: &Arc<GradedRing>,
    rows: &[usize],
    x: &Arc<UnitalBimodule>,
) -> Result<CornerMaps, TensorError> {
    if !same_ring(x.left_ring(), ring) {
        return Err(TensorError::RingMismatch {
            context: format!("{} is not a left {}-module", x.name(), ring.name()),
        });
    }
    let ideal = crate::module::right_ideal(ground, ring, rows);
    let space = tensor_over(ring, &ideal, x)?;
    let e_vec = ideal_coords_of_unit(&ideal, ring, rows);
    let unit_cols: Vec<Vec<Scalar>> = (0..x.dim())
        .map(|k| space.pure(&e_vec, &x.basis_vec(k)))
        .collect();
    let unit_map = LinearMap::from_columns(x, space.module(), unit_cols)?;
    let action_cols: Vec<Vec<Scalar>> = (0..space.module().dim())
        .map(|t| {
            let (ub, xb) = space.pair_of_basis(t);
            let ring_basis = ring
                .basis_index(&ideal.basis()[ub].label)
                .expect("ideal basis is ring basis");
            x.act_left(&vec![(ring_basis, Scalar::one())], &x.basis_vec(xb))
        })
        .collect();
    let action_map = LinearMap::from_columns(space.module(), x, action_cols)?;
    Ok(CornerMaps {
        ideal,
        space,
        unit_map,
        action_map,
    })
}

/// The mutually inverse right-linear maps `eN ≅ eA ⊗_A N` for a
/// generator-sum idempotent `e`: the computable content of the corner
/// isomorphism between a continuous functor and its representing bimodule.
pub struct CornerIso {
    pub corner: CornerModule,
    pub space: Arc<TensorSpace>,
    /// `eN → eA⊗N`, `x ↦ e ⊗ x`.
    pub expansion: LinearMap,
    /// `eA⊗N → eN`, `ea ⊗ x ↦ ea·x`.
    pub collapse: LinearMap,
}

pub fn corner_iso(
    ground: &Arc<GradedRing>,
    ring: &Arc<GradedRing>,
    rows: &[usize],
    n: &Arc<UnitalBimodule>,
) -> Result<CornerIso, TensorError> {
    if !same_ring(n.left_ring(), ring) {
        return Err(TensorError::RingMismatch {
            context: format!("{} is not a left {}-module", n.name(), ring.name()),
        });
    }
    let corner = crate::module::left_corner_module(ground, n, rows);
    let ideal = crate::module::right_ideal(ground, ring, rows);
    let space = tensor_over(ring, &ideal, n)?;
    let e_vec = ideal_coords_of_unit(&ideal, ring, rows);
    let expansion_cols: Vec<Vec<Scalar>> = (0..corner.module.dim())
        .map(|k| {
            let x = corner.include.apply(&corner.module.basis_vec(k));
            space.pure(&e_vec, &x)
        })
        .collect();
    let expansion = LinearMap::from_columns(&corner.module, space.module(), expansion_cols)?;
    let collapse_cols: Vec<Vec<Scalar>> = (0..space.module().dim())
        .map(|t| {
            let (ub, nb) = space.pair_of_basis(t);
            let ring_basis = ring
                .basis_index(&ideal.basis()[ub].label)
                .expect("ideal basis is ring basis");
            let moved = n.act_left(&vec![(ring_basis, Scalar::one())], &n.basis_vec(nb));
            corner.project.apply(&moved)
        })
        .collect();
    let collapse = LinearMap::from_columns(space.module(), &corner.module, collapse_cols)?;
    Ok(CornerIso {
        corner,
        space,
        expansion,
        collapse,
    })
}

// ---------------------------------------------------------------------------
// Coherence isomorphisms
// ---------------------------------------------------------------------------

/// The rebracketing `(M⊗N)⊗P → M⊗(N⊗P)` on pure tensors, verified
/// bijective.
pub fn associator(
    mn: &TensorSpace,
    mnp: &TensorSpace,
    np: &TensorSpace,
    m_np: &TensorSpace,
) -> Result<LinearMap, TensorError> {
    check_assoc_layout(mn, mnp, np, m_np)?;
    let m = &mn.left_factor;
    let cols: Vec<Vec<Scalar>> = (0..mnp.module.dim())
        .map(|t| {
            let (tb, pb) = mnp.pair_of_basis(t);
            let (ub, vb) = mn.pair_of_basis(tb);
            let inner = np.pure_of_pair(vb, pb);
            m_np.pure(&m.basis_vec(ub), &inner)
        })
        .collect();
    let map = LinearMap::from_columns(&mnp.module, &m_np.module, cols)?;
    if !map.is_bijective() {
        return Err(TensorError::NotInvertible {
            context: format!("associator on {}", mnp.module.name()),
        });
    }
    Ok(map)
}

/// The inverse rebracketing `M⊗(N⊗P) → (M⊗N)⊗P`, verified bijective.
pub fn associator_inv(
    mn: &TensorSpace,
    mnp: &TensorSpace,
    np: &TensorSpace,
    m_np: &TensorSpace,
) -> Result<LinearMap, TensorError> {
    check_assoc_layout(mn, mnp, np, m_np)?;
    let p = &np.right_factor;
    let cols: Vec<Vec<Scalar>> = (0..m_np.module.dim())
        .map(|t| {
            let (ub, sb) = m_np.pair_of_basis(t);
            let (vb, pb) = np.pair_of_basis(sb);
            let inner = mn.pure_of_pair(ub, vb);
            mnp.pure(&inner, &p.basis_vec(pb))
        })
        .collect();
    let map = LinearMap::from_columns(&m_np.module, &mnp.module, cols)?;
    if !map.is_bijective() {
        return Err(TensorError::NotInvertible {
            context: format!("associator inverse on {}", m_np.module.name()),
        });
    }
    Ok(map)
}

fn check_assoc_layout(
    mn: &TensorSpace,
    mnp: &TensorSpace,
    np: &TensorSpace,
    m_np: &TensorSpace,
) -> Result<(), TensorError> {
    let ok = same_module(&mnp.left_factor, &mn.module)
        && same_module(&m_np.right_factor, &np.module)
        && same_module(&m_np.left_factor, &mn.left_factor)
        && same_module(&mnp.right_factor, &np.right_factor)
        && same_module(&mn.right_factor, &np.left_factor);
    if !ok {
        return Err(TensorError::FactorMismatch {
            context: format!(
                "associator factors: ({})⊗{} vs {}⊗({})",
                mn.module.name(),
                mnp.right_factor.name(),
                m_np.left_factor.name(),
                np.module.name()
            ),
        });
    }
    Ok(())
}

/// `A ⊗_A N → N`, `a ⊗ n ↦ a·n`, for the regular bimodule as left factor.
pub fn left_unitor(t: &TensorSpace) -> Result<LinearMap, TensorError> {
    let reg = crate::module::regular_bimodule(&t.over);
    if !same_module(&t.left_factor, &reg) {
        return Err(TensorError::NotRegularFactor {
            context: format!("left unitor on {}", t.module.name()),
            side: "left".into(),
        });
    }
    let n = &t.right_factor;
    let cols: Vec<Vec<Scalar>> = (0..t.module.dim())
        .map(|k| {
            let (ab, nb) = t.pair_of_basis(k);
            n.act_left(&vec![(ab, Scalar::one())], &n.basis_vec(nb))
        })
        .collect();
    LinearMap::from_columns(&t.module, n, cols).map_err(Into::into)
}

/// `N → A ⊗_A N`, `n ↦ e_row(n) ⊗ n`; inverse of the left unitor.
pub fn left_unitor_inv(t: &TensorSpace) -> Result<LinearMap, TensorError> {
    let reg = crate::module::regular_bimodule(&t.over);
    if !same_module(&t.left_factor, &reg) {
        return Err(TensorError::NotRegularFactor {
            context: format!("left unitor on {}", t.module.name()),
            side: "left".into(),
        });
    }
    let n = &t.right_factor;
    let cols: Vec<Vec<Scalar>> = (0..n.dim())
        .map(|k| {
            let e = t.over.idem_sparse(n.basis()[k].row);
            t.pure(&sparse_to_dense(e, t.over.dim()), &n.basis_vec(k))
        })
        .collect();
    LinearMap::from_columns(n, &t.module, cols).map_err(Into::into)
}

/// `M ⊗_A A → M`, `m ⊗ a ↦ m·a`, for the regular bimodule as right factor.
pub fn right_unitor(t: &TensorSpace) -> Result<LinearMap, TensorError> {
    let reg = crate::module::regular_bimodule(&t.over);
    if !same_module(&t.right_factor, &reg) {
        return Err(TensorError::NotRegularFactor {
            context: format!("right unitor on {}", t.module.name()),
            side: "right".into(),
        });
    }
    let m = &t.left_factor;
    let cols: Vec<Vec<Scalar>> = (0..t.module.dim())
        .map(|k| {
            let (mb, ab) = t.pair_of_basis(k);
            m.act_right(&m.basis_vec(mb), &vec![(ab, Scalar::one())])
        })
        .collect();
    LinearMap::from_columns(&t.module, m, cols).map_err(Into::into)
}

/// `M → M ⊗_A A`, `m ↦ m ⊗ e_col(m)`; inverse of the right unitor.
pub fn right_unitor_inv(t: &TensorSpace) -> Result<LinearMap, TensorError> {
    let reg = crate::module::regular_bimodule(&t.over);
    if !same_module(&t.right_factor, &reg) {
        return Err(TensorError::NotRegularFactor {
            context: format!("right unitor on {}", t.module.name()),
            side: "right".into(),
        });
    }
    let m = &t.left_factor;
    let cols: Vec<Vec<Scalar>> = (0..m.dim())
        .map(|k| {
            let e = t.over.idem_sparse(m.basis()[k].col);
            t.pure(&m.basis_vec(k), &sparse_to_dense(e, t.over.dim()))
        })
        .collect();
    LinearMap::from_columns(m, &t.module, cols).map_err(Into::into)
}

/// The element of the regular bimodule representing a ring element.
pub fn regular_vec(ring: &Arc<GradedRing>, e: &RingElement) -> Vec<Scalar> {
    sparse_to_dense(e.coords(), ring.dim())
}

/// Convenience: dense regular coordinates back to a ring element.
pub fn regular_elem(ring: &Arc<GradedRing>, v: &[Scalar]) -> RingElement {
    RingElement::from_coords(ring, dense_to_sparse(v))
}
