//! Rings with local units, presented by enough orthogonal idempotents.
//!
//! A ring is given by an ordered set of idempotent labels `e_1, ..., e_n`,
//! finite-dimensional components `comp(r, c) = e_r·A·e_c` with named bases,
//! and bilinear structure constants. Pairwise orthogonality and the grading
//! rule "products pass through a matching middle index only" are built into
//! the representation, which is precisely what makes unity search exact and
//! terminating.
//!
//! Infinite families of orthogonal idempotents are modelled by
//! [`InfiniteMatrixRing`], which materializes finite corners on demand; no
//! operation ever touches an unbounded index set.

use crate::linalg::{LinalgError, Matrix};
use crate::report::Report;
use crate::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Sparse coordinates over a global basis: sorted by index, entries nonzero.
pub type SparseVec = Vec<(usize, Scalar)>;

pub(crate) fn sparse_insert(acc: &mut BTreeMap<usize, Scalar>, idx: usize, v: Scalar) {
    if v.is_zero() {
        return;
    }
    let slot = acc.entry(idx).or_insert_with(Scalar::zero);
    *slot += &v;
    if slot.is_zero() {
        acc.remove(&idx);
    }
}

pub(crate) fn sparse_finish(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().collect()
}

pub(crate) fn sparse_scale(v: &SparseVec, f: &Scalar) -> SparseVec {
    if f.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * f)).collect()
}

pub(crate) fn sparse_add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (i, x) in a.iter().chain(b.iter()) {
        sparse_insert(&mut acc, *i, x.clone());
    }
    sparse_finish(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("elements belong to different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("element is not idempotent: {element}")]
    NotIdempotent { element: String },
    #[error("a unity was requested for an empty set of elements")]
    EmptySet,
    #[error("a ring must have at least one idempotent")]
    EmptyIndexSet,
    #[error("quiver has an oriented cycle; its path algebra is infinite-dimensional")]
    CyclicQuiver,
    #[error("unknown label `{label}` in ring `{ring}`")]
    UnknownLabel { ring: String, label: String },
    #[error("duplicate label `{label}`")]
    DuplicateLabel { label: String },
    #[error("invalid label `{label}`: labels must be nonempty and free of `|` and whitespace")]
    InvalidLabel { label: String },
    #[error("invalid ring data: {detail}")]
    InvalidStructure { detail: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub(crate) fn validate_label(label: &str) -> Result<(), RingError> {
    if label.is_empty() || label.contains('|') || label.chars().any(char::is_whitespace) {
        return Err(RingError::InvalidLabel {
            label: label.to_string(),
        });
    }
    Ok(())
}

/// Placement of one global basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisInfo {
    pub label: String,
    /// Index of the left idempotent: `e_row · x = x`.
    pub row: usize,
    /// Index of the right idempotent: `x · e_col = x`.
    pub col: usize,
}

/// A ring with enough orthogonal idempotents over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedRing {
    name: String,
    idems: Vec<String>,
    basis: Vec<BasisInfo>,
    by_label: BTreeMap<String, usize>,
    comp_index: BTreeMap<(usize, usize), Vec<usize>>,
    /// Nonzero products of composable basis pairs; absent composable pairs
    /// multiply to zero.
    mult: BTreeMap<(usize, usize), SparseVec>,
    /// Expansion of each `e_i` in the basis of `comp(i, i)`.
    idem_elems: Vec<SparseVec>,
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedRing({}, {} idempotents, dim {})",
            self.name,
            self.idems.len(),
            self.basis.len()
        )
    }
}

impl GradedRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn idems(&self) -> &[String] {
        &self.idems
    }

    pub fn idem_index(&self, label: &str) -> Result<usize, RingError> {
        self.idems
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| RingError::UnknownLabel {
                ring: self.name.clone(),
                label: label.to_string(),
            })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisInfo] {
        &self.basis
    }

    pub fn basis_index(&self, label: &str) -> Result<usize, RingError> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| RingError::UnknownLabel {
                ring: self.name.clone(),
                label: label.to_string(),
            })
    }

    pub fn component(&self, row: usize, col: usize) -> &[usize] {
        self.comp_index
            .get(&(row, col))
            .map_or(&[], |v| v.as_slice())
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<usize>)> {
        self.comp_index.iter()
    }

    pub fn idem_sparse(&self, i: usize) -> &SparseVec {
        &self.idem_elems[i]
    }

    /// Raw product table entry for a basis pair (zero when absent).
    pub fn product_of_basis(&self, u: usize, v: usize) -> SparseVec {
        if self.basis[u].col != self.basis[v].row {
            return Vec::new();
        }
        self.mult.get(&(u, v)).cloned().unwrap_or_default()
    }

    /// Product of sparse element coordinates.
    pub fn multiply_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (u, cu) in x {
            for (v, cv) in y {
                if self.basis[*u].col != self.basis[*v].row {
                    continue;
                }
                if let Some(prod) = self.mult.get(&(*u, *v)) {
                    let f = cu * cv;
                    for (w, cw) in prod {
                        sparse_insert(&mut acc, *w, cw * &f);
                    }
                }
            }
        }
        sparse_finish(acc)
    }

    pub fn format_sparse(&self, v: &SparseVec) -> String {
        if v.is_empty() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis[*i].label.clone()
                } else {
                    format!("{}*{}", c, self.basis[*i].label)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The subring on a subset of generator idempotents. With the full index
    /// set this is the ring itself; any subset yields the unital corner
    /// `eAe` for `e` the subset sum.
    pub fn corner_subset(&self, rows: &[usize]) -> Result<Arc<GradedRing>, RingError> {
        if rows.is_empty() {
            return Err(RingError::EmptyIndexSet);
        }
        let keep: BTreeSet<usize> = rows.iter().copied().collect();
        let mut b = RingBuilder::new(format!(
            "{}[{}]",
            self.name,
            rows.iter()
                .map(|&i| self.idems[i].clone())
                .collect::<Vec<_>>()
                .join("+")
        ));
        let mut old_to_new_idem = BTreeMap::new();
        for &i in &keep {
            old_to_new_idem.insert(i, b.idempotent(&self.idems[i])?);
        }
        let mut kept_basis = Vec::new();
        for (gi, info) in self.basis.iter().enumerate() {
            if keep.contains(&info.row) && keep.contains(&info.col) {
                kept_basis.push(gi);
                b.basis_element(&info.label, &self.idems[info.row], &self.idems[info.col])?;
            }
        }
        for &u in &kept_basis {
            for &v in &kept_basis {
                if let Some(prod) = self.mult.get(&(u, v)) {
                    let terms: Vec<(String, Scalar)> = prod
                        .iter()
                        .map(|(w, c)| (self.basis[*w].label.clone(), c.clone()))
                        .collect();
                    b.product_terms(&self.basis[u].label, &self.basis[v].label, terms)?;
                }
            }
        }
        for &i in &keep {
            let coords: Vec<(String, Scalar)> = self.idem_elems[i]
                .iter()
                .map(|(w, c)| (self.basis[*w].label.clone(), c.clone()))
                .collect();
            b.idem_coords(&self.idems[i], coords)?;
        }
        b.build()
    }
}

/// An element of a graded ring: a finite support map over the global basis.
#[derive(Clone)]
pub struct RingElement {
    ring: Arc<GradedRing>,
    coords: SparseVec,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.coords == other.coords
    }
}

impl Eq for RingElement {}

pub fn same_ring(a: &Arc<GradedRing>, b: &Arc<GradedRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format_sparse(&self.coords))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format_sparse(&self.coords))
    }
}

impl RingElement {
    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        RingElement {
            ring: ring.clone(),
            coords: Vec::new(),
        }
    }

    pub fn from_label(ring: &Arc<GradedRing>, label: &str) -> Result<Self, RingError> {
        let idx = ring.basis_index(label)?;
        Ok(RingElement {
            ring: ring.clone(),
            coords: vec![(idx, Scalar::one())],
        })
    }

    pub fn from_coords(ring: &Arc<GradedRing>, coords: SparseVec) -> Self {
        let coords = coords.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        RingElement {
            ring: ring.clone(),
            coords,
        }
    }

    pub fn idempotent(ring: &Arc<GradedRing>, i: usize) -> Self {
        RingElement {
            ring: ring.clone(),
            coords: ring.idem_elems[i].clone(),
        }
    }

    pub fn sum_of_idempotents(ring: &Arc<GradedRing>, rows: &[usize]) -> Self {
        let set: BTreeSet<usize> = rows.iter().copied().collect();
        let mut acc = BTreeMap::new();
        for i in set {
            for (w, c) in &ring.idem_elems[i] {
                sparse_insert(&mut acc, *w, c.clone());
            }
        }
        RingElement {
            ring: ring.clone(),
            coords: sparse_finish(acc),
        }
    }

    /// The identity of the full (finite) ring: the sum of every generator.
    pub fn total_idempotent(ring: &Arc<GradedRing>) -> Self {
        let all: Vec<usize> = (0..ring.idems.len()).collect();
        RingElement::sum_of_idempotents(ring, &all)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn coords(&self) -> &SparseVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_same_ring(other)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            coords: sparse_add(&self.coords, &other.coords),
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, f: &Scalar) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coords: sparse_scale(&self.coords, f),
        }
    }

    pub fn multiply(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_same_ring(other)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            coords: self.ring.multiply_sparse(&self.coords, &other.coords),
        })
    }

    pub fn is_idempotent(&self) -> bool {
        match self.multiply(self) {
            Ok(sq) => sq == *self,
            Err(_) => false,
        }
    }

    /// Generator idempotents occurring in the support (rows and columns).
    pub fn support_idems(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (i, _) in &self.coords {
            out.insert(self.ring.basis[*i].row);
            out.insert(self.ring.basis[*i].col);
        }
        out
    }

    fn check_same_ring(&self, other: &RingElement) -> Result<(), RingError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(RingError::RingMismatch {
                left: self.ring.name.clone(),
                right: other.ring.name.clone(),
            });
        }
        Ok(())
    }
}

/// The minimal generator-sum unity for a finite set of elements: the sum of
/// the orthogonal generators appearing in the union of supports.
pub fn local_unit_for(elems: &[RingElement]) -> Result<RingElement, RingError> {
    let first = elems.first().ok_or(RingError::EmptySet)?;
    let ring = first.ring().clone();
    let mut idems = BTreeSet::new();
    for e in elems {
        if !same_ring(&ring, e.ring()) {
            return Err(RingError::RingMismatch {
                left: ring.name.clone(),
                right: e.ring().name.clone(),
            });
        }
        idems.extend(e.support_idems());
    }
    let rows: Vec<usize> = idems.into_iter().collect();
    Ok(RingElement::sum_of_idempotents(&ring, &rows))
}

/// The partial order on idempotents: `e ≤ e'` iff `e = e·e' = e'·e`.
pub fn idempotent_leq(e: &RingElement, e2: &RingElement) -> Result<bool, RingError> {
    for x in [e, e2] {
        if !x.is_idempotent() {
            return Err(RingError::NotIdempotent {
                element: x.to_string(),
            });
        }
    }
    Ok(*e == e.multiply(e2)? && *e == e2.multiply(e)?)
}

/// Verifies the ring axioms on every basis element of the given corner:
/// idempotency of generators, generators acting as graded identities, and
/// associativity on all composable basis triples.
pub fn verify_ring(ring: &Arc<GradedRing>, corner: Option<&[usize]>) -> Report {
    let mut report = Report::new("ring.laws", ring.name());
    let all: Vec<usize> = (0..ring.idems().len()).collect();
    let corner: BTreeSet<usize> = corner.unwrap_or(&all).iter().copied().collect();

    for &i in &corner {
        let e = RingElement::idempotent(ring, i);
        if !e.is_idempotent() {
            report.fail(
                ring.idems()[i].clone(),
                format!("e·e = {} differs from e = {}", e.multiply(&e).unwrap(), e),
            );
        }
    }

    let in_corner: Vec<usize> = ring
        .basis()
        .iter()
        .enumerate()
        .filter(|(_, b)| corner.contains(&b.row) && corner.contains(&b.col))
        .map(|(i, _)| i)
        .collect();

    for &u in &in_corner {
        let info = &ring.basis()[u];
        let x = RingElement {
            ring: ring.clone(),
            coords: vec![(u, Scalar::one())],
        };
        let left = RingElement::idempotent(ring, info.row).multiply(&x).unwrap();
        if left != x {
            report.fail(
                info.label.clone(),
                format!("e_row·x = {} differs from x", left),
            );
        }
        let right = x.multiply(&RingElement::idempotent(ring, info.col)).unwrap();
        if right != x {
            report.fail(
                info.label.clone(),
                format!("x·e_col = {} differs from x", right),
            );
        }
    }

    for &u in &in_corner {
        for &v in &in_corner {
            if ring.basis()[u].col != ring.basis()[v].row {
                continue;
            }
            let uv = ring.product_of_basis(u, v);
            for &w in &in_corner {
                if ring.basis()[v].col != ring.basis()[w].row {
                    continue;
                }
                let vw = ring.product_of_basis(v, w);
                let lhs = ring.multiply_sparse(&uv, &vec![(w, Scalar::one())]);
                let rhs = ring.multiply_sparse(&vec![(u, Scalar::one())], &vw);
                if lhs != rhs {
                    report.fail(
                        format!(
                            "({},{},{})",
                            ring.basis()[u].label,
                            ring.basis()[v].label,
                            ring.basis()[w].label
                        ),
                        format!(
                            "(uv)w = {} but u(vw) = {}",
                            ring.format_sparse(&lhs),
                            ring.format_sparse(&rhs)
                        ),
                    );
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

/// Incremental construction of a [`GradedRing`].
///
/// Products of composable basis pairs default to zero. For any generator
/// `e_i` whose diagonal component is spanned by `e_i` itself, the identity
/// products `e_i·x = x` and `x·e_i = x` are filled in automatically unless
/// given explicitly.
pub struct RingBuilder {
    name: String,
    idems: Vec<String>,
    basis: Vec<BasisInfo>,
    by_label: BTreeMap<String, usize>,
    mult: BTreeMap<(usize, usize), SparseVec>,
    explicit: BTreeSet<(usize, usize)>,
    idem_coords: BTreeMap<usize, SparseVec>,
}

impl RingBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        RingBuilder {
            name: name.into(),
            idems: Vec::new(),
            basis: Vec::new(),
            by_label: BTreeMap::new(),
            mult: BTreeMap::new(),
            explicit: BTreeSet::new(),
            idem_coords: BTreeMap::new(),
        }
    }

    pub fn idempotent(&mut self, label: &str) -> Result<usize, RingError> {
        validate_label(label)?;
        if self.idems.iter().any(|l| l == label) {
            return Err(RingError::DuplicateLabel {
                label: label.to_string(),
            });
        }
        self.idems.push(label.to_string());
        Ok(self.idems.len() - 1)
    }

    pub fn basis_element(&mut self, label: &str, row: &str, col: &str) -> Result<usize, RingError> {
        validate_label(label)?;
        if self.by_label.contains_key(label) {
            return Err(RingError::DuplicateLabel {
                label: label.to_string(),
            });
        }
        let row = self.idem_pos(row)?;
        let col = self.idem_pos(col)?;
        let idx = self.basis.len();
        self.basis.push(BasisInfo {
            label: label.to_string(),
            row,
            col,
        });
        self.by_label.insert(label.to_string(), idx);
        Ok(idx)
    }

    /// Declares `u · v = Σ c_w · w` by labels.
    pub fn product_terms(
        &mut self,
        u: &str,
        v: &str,
        terms: Vec<(String, Scalar)>,
    ) -> Result<(), RingError> {
        let ui = self.basis_pos(u)?;
        let vi = self.basis_pos(v)?;
        if self.basis[ui].col != self.basis[vi].row {
            if terms.iter().all(|(_, c)| c.is_zero()) {
                return Ok(());
            }
            return Err(RingError::InvalidStructure {
                detail: format!("product {u}·{v} crosses mismatched middle idempotents"),
            });
        }
        let (row, col) = (self.basis[ui].row, self.basis[vi].col);
        let mut acc = BTreeMap::new();
        for (w, c) in terms {
            let wi = self.basis_pos(&w)?;
            if self.basis[wi].row != row || self.basis[wi].col != col {
                return Err(RingError::InvalidStructure {
                    detail: format!("product {u}·{v} has a term {w} outside component ({row},{col})"),
                });
            }
            sparse_insert(&mut acc, wi, c);
        }
        let key = (ui, vi);
        self.explicit.insert(key);
        let v = sparse_finish(acc);
        if v.is_empty() {
            self.mult.remove(&key);
        } else {
            self.mult.insert(key, v);
        }
        Ok(())
    }

    pub fn product(&mut self, u: &str, v: &str, result: &str) -> Result<(), RingError> {
        self.product_terms(u, v, vec![(result.to_string(), Scalar::one())])
    }

    /// Declares the expansion of idempotent `e` in its diagonal component.
    pub fn idem_coords(&mut self, e: &str, coords: Vec<(String, Scalar)>) -> Result<(), RingError> {
        let i = self.idem_pos(e)?;
        let mut acc = BTreeMap::new();
        for (label, c) in coords {
            let w = self.basis_pos(&label)?;
            if self.basis[w].row != i || self.basis[w].col != i {
                return Err(RingError::InvalidStructure {
                    detail: format!("idempotent {e} has coordinate {label} outside its diagonal component"),
                });
            }
            sparse_insert(&mut acc, w, c);
        }
        self.idem_coords.insert(i, sparse_finish(acc));
        Ok(())
    }

    fn idem_pos(&self, label: &str) -> Result<usize, RingError> {
        self.idems
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| RingError::UnknownLabel {
                ring: self.name.clone(),
                label: label.to_string(),
            })
    }

    fn basis_pos(&self, label: &str) -> Result<usize, RingError> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| RingError::UnknownLabel {
                ring: self.name.clone(),
                label: label.to_string(),
            })
    }

    pub fn build(mut self) -> Result<Arc<GradedRing>, RingError> {
        if self.idems.is_empty() {
            return Err(RingError::EmptyIndexSet);
        }
        // default idempotent coordinates: a diagonal basis element carrying
        // the idempotent's own label, else the unique diagonal basis element
        let mut idem_elems = Vec::with_capacity(self.idems.len());
        for (i, label) in self.idems.iter().enumerate() {
            let coords = match self.idem_coords.get(&i) {
                Some(c) => c.clone(),
                None => {
                    let diag: Vec<usize> = self
                        .basis
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| b.row == i && b.col == i)
                        .map(|(k, _)| k)
                        .collect();
                    let named = diag.iter().find(|&&k| self.basis[k].label == *label);
                    match (named, diag.len()) {
                        (Some(&k), _) => vec![(k, Scalar::one())],
                        (None, 1) => vec![(diag[0], Scalar::one())],
                        _ => {
                            return Err(RingError::InvalidStructure {
                                detail: format!(
                                    "no coordinates given for idempotent {label} and none can be inferred"
                                ),
                            })
                        }
                    }
                }
            };
            if coords.is_empty() {
                return Err(RingError::InvalidStructure {
                    detail: format!("idempotent {label} has zero coordinates"),
                });
            }
            idem_elems.push(coords);
        }

        // autofill identity actions for singleton idempotents
        for i in 0..self.idems.len() {
            if let [(b, c)] = idem_elems[i].as_slice() {
                if !c.is_one() {
                    continue;
                }
                let b = *b;
                for (k, info) in self.basis.clone().iter().enumerate() {
                    if info.row == i && !self.explicit.contains(&(b, k)) {
                        self.mult.insert((b, k), vec![(k, Scalar::one())]);
                    }
                    if info.col == i && !self.explicit.contains(&(k, b)) {
                        self.mult.insert((k, b), vec![(k, Scalar::one())]);
                    }
                }
            }
        }

        let mut comp_index: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, info) in self.basis.iter().enumerate() {
            comp_index.entry((info.row, info.col)).or_default().push(k);
        }

        Ok(Arc::new(GradedRing {
            name: self.name,
            idems: self.idems,
            basis: self.basis,
            by_label: self.by_label,
            comp_index,
            mult: self.mult,
            idem_elems,
        }))
    }
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

/// A morphism of rings with local units, given by its values on the source
/// basis. Besides multiplicativity it must satisfy the local-unit condition:
/// every idempotent of the target is dominated by the image of one of the
/// source's idempotents.
#[derive(Clone)]
pub struct RingMorphism {
    name: String,
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<SparseVec>,
}

impl fmt::Debug for RingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingMorphism({}: {} -> {})",
            self.name, self.source.name, self.target.name
        )
    }
}

impl RingMorphism {
    pub fn new(
        name: impl Into<String>,
        source: &Arc<GradedRing>,
        target: &Arc<GradedRing>,
        images_by_label: Vec<(String, Vec<(String, Scalar)>)>,
    ) -> Result<Self, RingError> {
        let mut images = vec![Vec::new(); source.dim()];
        for (src_label, value) in images_by_label {
            let s = source.basis_index(&src_label)?;
            let mut acc = BTreeMap::new();
            for (t_label, c) in value {
                sparse_insert(&mut acc, target.basis_index(&t_label)?, c);
            }
            images[s] = sparse_finish(acc);
        }
        Ok(RingMorphism {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ring: &Arc<GradedRing>) -> Self {
        RingMorphism {
            name: format!("id_{}", ring.name),
            source: ring.clone(),
            target: ring.clone(),
            images: (0..ring.dim()).map(|i| vec![(i, Scalar::one())]).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    pub fn image_of_basis(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn apply_sparse(&self, x: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, c) in x {
            for (w, cw) in &self.images[*i] {
                sparse_insert(&mut acc, *w, cw * c);
            }
        }
        sparse_finish(acc)
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement, RingError> {
        if !same_ring(x.ring(), &self.source) {
            return Err(RingError::RingMismatch {
                left: x.ring().name.clone(),
                right: self.source.name.clone(),
            });
        }
        Ok(RingElement::from_coords(
            &self.target,
            self.apply_sparse(x.coords()),
        ))
    }

    /// Checks multiplicativity on all source basis pairs and the local-unit
    /// condition on every target generator.
    pub fn check(&self) -> Report {
        let mut report = Report::new("morphism.laws", &self.name);
        for u in 0..self.source.dim() {
            for v in 0..self.source.dim() {
                let uv = self.source.multiply_sparse(
                    &vec![(u, Scalar::one())],
                    &vec![(v, Scalar::one())],
                );
                let lhs = self.apply_sparse(&uv);
                let rhs = self
                    .target
                    .multiply_sparse(&self.images[u], &self.images[v]);
                if lhs != rhs {
                    report.fail(
                        format!(
                            "({},{})",
                            self.source.basis()[u].label,
                            self.source.basis()[v].label
                        ),
                        format!(
                            "ψ(uv) = {} but ψ(u)ψ(v) = {}",
                            self.target.format_sparse(&lhs),
                            self.target.format_sparse(&rhs)
                        ),
                    );
                }
            }
        }
        // The generator-sum order is monotone, so the image of the full
        // source idempotent dominates any dominated generator at all.
        let full: Vec<usize> = (0..self.source.idems().len()).collect();
        let f = RingElement::sum_of_idempotents(&self.source, &full);
        let psi_f = RingElement::from_coords(&self.target, self.apply_sparse(f.coords()));
        for i in 0..self.target.idems().len() {
            let e = RingElement::idempotent(&self.target, i);
            let l = e.multiply(&psi_f).unwrap();
            let r = psi_f.multiply(&e).unwrap();
            if l != e || r != e {
                report.fail(
                    self.target.idems()[i].clone(),
                    format!(
                        "no f in the source covers {}: e·ψ(f) = {}, ψ(f)·e = {}",
                        self.target.idems()[i], l, r
                    ),
                );
            }
        }
        report
    }
}

// ---------------------------------------------------------------------------
// Corners of general idempotents
// ---------------------------------------------------------------------------

/// The unital corner `eAe` of a general idempotent, together with the
/// expansion of its basis back into the parent ring.
pub struct Corner {
    pub ring: Arc<GradedRing>,
    /// Parent-ring coordinates of each corner basis element.
    pub embed: Vec<SparseVec>,
}

impl Corner {
    pub fn embed_element(&self, parent: &Arc<GradedRing>, x: &SparseVec) -> RingElement {
        let mut acc = BTreeMap::new();
        for (i, c) in x {
            for (w, cw) in &self.embed[*i] {
                sparse_insert(&mut acc, *w, cw * c);
            }
        }
        RingElement::from_coords(parent, sparse_finish(acc))
    }
}

/// Computes `eAe` for an arbitrary idempotent `e`. When `e` is a sum of
/// generators the subset corner is returned with its natural embedding;
/// otherwise a one-idempotent presentation is computed by linear algebra.
pub fn corner(ring: &Arc<GradedRing>, e: &RingElement) -> Result<Corner, RingError> {
    if !same_ring(e.ring(), ring) {
        return Err(RingError::RingMismatch {
            left: e.ring().name().to_string(),
            right: ring.name.clone(),
        });
    }
    if !e.is_idempotent() {
        return Err(RingError::NotIdempotent {
            element: e.to_string(),
        });
    }
    let support: Vec<usize> = e.support_idems().into_iter().collect();
    if *e == RingElement::sum_of_idempotents(ring, &support) {
        let sub = ring.corner_subset(&support)?;
        let embed = sub
            .basis()
            .iter()
            .map(|b| vec![(ring.basis_index(&b.label).unwrap(), Scalar::one())])
            .collect();
        return Ok(Corner { ring: sub, embed });
    }

    // image basis of x ↦ e·x·e, deterministically from the RREF of the images
    let dim = ring.dim();
    let mut rows = Vec::with_capacity(dim);
    for u in 0..dim {
        let x = vec![(u, Scalar::one())];
        let exe = ring.multiply_sparse(&ring.multiply_sparse(e.coords(), &x), e.coords());
        let mut dense = vec![Scalar::zero(); dim];
        for (w, c) in exe {
            dense[w] = c;
        }
        rows.push(dense);
    }
    let (reduced, pivots) = Matrix::from_rows(rows)?.rref();
    let basis_vecs: Vec<SparseVec> = (0..pivots.len())
        .map(|r| {
            (0..dim)
                .filter(|&c| !reduced.at(r, c).is_zero())
                .map(|c| (c, reduced.at(r, c).clone()))
                .collect()
        })
        .collect();

    let n = basis_vecs.len();
    // expansion matrix: columns are the corner basis vectors
    let expand = Matrix::from_fn(dim, n, |r, c| {
        basis_vecs[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Scalar::zero)
    });
    let in_corner_coords = |x: &SparseVec| -> Result<SparseVec, RingError> {
        let mut dense = vec![Scalar::zero(); dim];
        for (w, c) in x {
            dense[*w] = c.clone();
        }
        let sol = expand
            .solve(&dense)?
            .ok_or_else(|| RingError::InvalidStructure {
                detail: "corner product escaped the corner span".to_string(),
            })?;
        Ok(sol
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect())
    };

    let mut b = RingBuilder::new(format!("{}[corner]", ring.name));
    b.idempotent("e")?;
    let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    for l in &labels {
        b.basis_element(l, "e", "e")?;
    }
    for (i, x) in basis_vecs.iter().enumerate() {
        for (j, y) in basis_vecs.iter().enumerate() {
            let prod = ring.multiply_sparse(x, y);
            let coords = in_corner_coords(&prod)?;
            let terms = coords
                .iter()
                .map(|(k, c)| (labels[*k].clone(), c.clone()))
                .collect();
            b.product_terms(&labels[i], &labels[j], terms)?;
        }
    }
    let e_coords = in_corner_coords(e.coords())?;
    b.idem_coords(
        "e",
        e_coords
            .iter()
            .map(|(k, c)| (labels[*k].clone(), c.clone()))
            .collect(),
    )?;
    Ok(Corner {
        ring: b.build()?,
        embed: basis_vecs,
    })
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

fn matrix_unit_label(r: usize, c: usize, n: usize) -> String {
    if n <= 9 {
        format!("E{r}{c}")
    } else {
        format!("E{r}_{c}")
    }
}

/// The full `n x n` rational matrix ring with idempotents `e1, ..., en` and
/// basis the matrix units.
pub fn matrix_ring(n: usize) -> Result<Arc<GradedRing>, RingError> {
    matrix_ring_named(&format!("M{n}"), n)
}

pub fn matrix_ring_named(name: &str, n: usize) -> Result<Arc<GradedRing>, RingError> {
    if n == 0 {
        return Err(RingError::EmptyIndexSet);
    }
    let mut b = RingBuilder::new(name);
    for i in 1..=n {
        b.idempotent(&format!("e{i}"))?;
    }
    for r in 1..=n {
        for c in 1..=n {
            b.basis_element(&matrix_unit_label(r, c, n), &format!("e{r}"), &format!("e{c}"))?;
        }
    }
    for r in 1..=n {
        for k in 1..=n {
            for c in 1..=n {
                b.product(
                    &matrix_unit_label(r, k, n),
                    &matrix_unit_label(k, c, n),
                    &matrix_unit_label(r, c, n),
                )?;
            }
        }
    }
    for i in 1..=n {
        b.idem_coords(
            &format!("e{i}"),
            vec![(matrix_unit_label(i, i, n), Scalar::one())],
        )?;
    }
    b.build()
}

/// The rational field presented as a one-idempotent ring.
pub fn ground_ring() -> Arc<GradedRing> {
    let mut b = RingBuilder::new("Q");
    b.idempotent("1").unwrap();
    b.basis_element("1", "1", "1").unwrap();
    b.product("1", "1", "1").unwrap();
    b.idem_coords("1", vec![("1".to_string(), Scalar::one())])
        .unwrap();
    b.build().unwrap()
}

/// A finite quiver; vertices and labelled arrows.
#[derive(Debug, Clone)]
pub struct Quiver {
    pub vertices: Vec<String>,
    /// (label, source vertex, target vertex)
    pub arrows: Vec<(String, String, String)>,
}

/// The path algebra of an acyclic quiver. Paths compose right-to-left:
/// `p·q` is "q then p" and requires `src(p) = tgt(q)`. A path with source
/// `s` and target `t` lives in component `(t, s)`.
pub fn path_algebra(name: &str, quiver: &Quiver) -> Result<Arc<GradedRing>, RingError> {
    if quiver.vertices.is_empty() {
        return Err(RingError::EmptyIndexSet);
    }
    let vpos = |v: &str| -> Result<usize, RingError> {
        quiver
            .vertices
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| RingError::UnknownLabel {
                ring: name.to_string(),
                label: v.to_string(),
            })
    };
    // acyclicity via Kahn's algorithm
    let nv = quiver.vertices.len();
    let mut indeg = vec![0usize; nv];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (_, s, t) in &quiver.arrows {
        let (s, t) = (vpos(s)?, vpos(t)?);
        indeg[t] += 1;
        out[s].push(t);
    }
    let mut queue: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &t in &out[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push(t);
            }
        }
    }
    if seen != nv {
        return Err(RingError::CyclicQuiver);
    }

    // enumerate all paths by length; (label, src, tgt)
    #[derive(Clone)]
    struct Path {
        label: String,
        src: usize,
        tgt: usize,
    }
    let arrows: Vec<Path> = quiver
        .arrows
        .iter()
        .map(|(l, s, t)| {
            Ok(Path {
                label: l.clone(),
                src: vpos(s)?,
                tgt: vpos(t)?,
            })
        })
        .collect::<Result<_, RingError>>()?;
    let mut paths: Vec<Path> = Vec::new();
    let mut frontier = arrows.clone();
    while !frontier.is_empty() {
        paths.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for p in &frontier {
            for a in &arrows {
                if a.src == p.tgt {
                    next.push(Path {
                        label: format!("{}*{}", a.label, p.label),
                        src: p.src,
                        tgt: a.tgt,
                    });
                }
            }
        }
        frontier = next;
    }

    let mut b = RingBuilder::new(name);
    for v in &quiver.vertices {
        b.idempotent(&format!("e{v}"))?;
    }
    for (i, v) in quiver.vertices.iter().enumerate() {
        let _ = i;
        b.basis_element(&format!("e{v}"), &format!("e{v}"), &format!("e{v}"))?;
    }
    for p in &paths {
        b.basis_element(
            &p.label,
            &format!("e{}", quiver.vertices[p.tgt]),
            &format!("e{}", quiver.vertices[p.src]),
        )?;
    }
    // nontrivial concatenations; identity products are autofilled
    let all: Vec<Path> = paths;
    for p in &all {
        for q in &all {
            if p.src == q.tgt {
                b.product(&p.label, &q.label, &format!("{}*{}", p.label, q.label))?;
            }
        }
    }
    b.build()
}

/// Direct sum of rings: disjoint idempotents, blockwise multiplication.
pub fn direct_sum(name: &str, rings: &[&Arc<GradedRing>]) -> Result<Arc<GradedRing>, RingError> {
    if rings.is_empty() {
        return Err(RingError::EmptyIndexSet);
    }
    let mut b = RingBuilder::new(name);
    let tag = |k: usize, l: &str| format!("s{k}.{l}");
    for (k, r) in rings.iter().enumerate() {
        for i in r.idems() {
            b.idempotent(&tag(k, i))?;
        }
    }
    for (k, r) in rings.iter().enumerate() {
        for info in r.basis() {
            b.basis_element(
                &tag(k, &info.label),
                &tag(k, &r.idems()[info.row]),
                &tag(k, &r.idems()[info.col]),
            )?;
        }
        for (key, prod) in r.mult.iter() {
            let (u, v) = *key;
            b.product_terms(
                &tag(k, &r.basis()[u].label),
                &tag(k, &r.basis()[v].label),
                prod.iter()
                    .map(|(w, c)| (tag(k, &r.basis()[*w].label), c.clone()))
                    .collect(),
            )?;
        }
        for (i, coords) in r.idem_elems.iter().enumerate() {
            b.idem_coords(
                &tag(k, &r.idems()[i]),
                coords
                    .iter()
                    .map(|(w, c)| (tag(k, &r.basis()[*w].label), c.clone()))
                    .collect(),
            )?;
        }
    }
    b.build()
}

/// The `n x n` Rees matrix ring over a unital coefficient ring `R` with the
/// identity sandwich matrix, presented with enough orthogonal idempotents
/// `(i, ρ)` for `i` a matrix index and `ρ` a generator of `R`.
pub fn rees_ring(name: &str, coeff: &Arc<GradedRing>, n: usize) -> Result<Arc<GradedRing>, RingError> {
    if n == 0 {
        return Err(RingError::EmptyIndexSet);
    }
    let mut b = RingBuilder::new(name);
    let idem = |i: usize, rho: &str| format!("r{i}.{rho}");
    let unit = |i: usize, j: usize, l: &str| format!("E{i}.{j}:{l}");
    for i in 1..=n {
        for rho in coeff.idems() {
            b.idempotent(&idem(i, rho))?;
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for info in coeff.basis() {
                b.basis_element(
                    &unit(i, j, &info.label),
                    &idem(i, &coeff.idems()[info.row]),
                    &idem(j, &coeff.idems()[info.col]),
                )?;
            }
        }
    }
    for i in 1..=n {
        for k in 1..=n {
            for j in 1..=n {
                for (key, prod) in coeff.mult.iter() {
                    let (u, v) = *key;
                    b.product_terms(
                        &unit(i, k, &coeff.basis()[u].label),
                        &unit(k, j, &coeff.basis()[v].label),
                        prod.iter()
                            .map(|(w, c)| (unit(i, j, &coeff.basis()[*w].label), c.clone()))
                            .collect(),
                    )?;
                }
            }
        }
    }
    for i in 1..=n {
        for (r, coords) in coeff.idem_elems.iter().enumerate() {
            b.idem_coords(
                &idem(i, &coeff.idems()[r]),
                coords
                    .iter()
                    .map(|(w, c)| (unit(i, i, &coeff.basis()[*w].label), c.clone()))
                    .collect(),
            )?;
        }
    }
    b.build()
}

/// Row-indexed matrix units over the rationals with countably many
/// orthogonal idempotents; finite corners are materialized on demand and
/// memoized. Every operation goes through [`InfiniteMatrixRing::corner`],
/// which is the finiteness guard.
pub struct InfiniteMatrixRing {
    name: String,
    label_for: Arc<dyn Fn(usize) -> String + Send + Sync>,
    corners: Mutex<BTreeMap<usize, Arc<GradedRing>>>,
}

impl InfiniteMatrixRing {
    pub fn new(name: impl Into<String>) -> Self {
        InfiniteMatrixRing {
            name: name.into(),
            label_for: Arc::new(|i| format!("{}", i + 1)),
            corners: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn with_row_labels(
        name: impl Into<String>,
        label_for: impl Fn(usize) -> String + Send + Sync + 'static,
    ) -> Self {
        InfiniteMatrixRing {
            name: name.into(),
            label_for: Arc::new(label_for),
            corners: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The corner on the first `n` idempotents. `n = 0` is rejected: the
    /// zero ring has no local units.
    pub fn corner(&self, n: usize) -> Result<Arc<GradedRing>, RingError> {
        if n == 0 {
            return Err(RingError::EmptyIndexSet);
        }
        let mut cache = self.corners.lock().expect("corner cache poisoned");
        if let Some(r) = cache.get(&n) {
            return Ok(r.clone());
        }
        let mut b = RingBuilder::new(format!("{}[{}]", self.name, n));
        let labels: Vec<String> = (0..n).map(|i| (self.label_for)(i)).collect();
        for l in &labels {
            b.idempotent(&format!("e{l}"))?;
        }
        let unit = |r: usize, c: usize| format!("E{}_{}", labels[r], labels[c]);
        for r in 0..n {
            for c in 0..n {
                b.basis_element(&unit(r, c), &format!("e{}", labels[r]), &format!("e{}", labels[c]))?;
            }
        }
        for r in 0..n {
            for k in 0..n {
                for c in 0..n {
                    b.product(&unit(r, k), &unit(k, c), &unit(r, c))?;
                }
            }
        }
        for i in 0..n {
            b.idem_coords(&format!("e{}", labels[i]), vec![(unit(i, i), Scalar::one())])?;
        }
        let ring = b.build()?;
        cache.insert(n, ring.clone());
        Ok(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: numeric matrix-unit multiplication.
    fn numeric_unit(n: usize, r: usize, c: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        m.set(r - 1, c - 1, Scalar::one());
        m
    }

    fn as_numeric(ring: &Arc<GradedRing>, n: usize, x: &RingElement) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for (i, c) in x.coords() {
            let info = &ring.basis()[*i];
            let mut v = m.at(info.row, info.col).clone();
            v += c;
            m.set(info.row, info.col, v);
        }
        m
    }

    #[test]
    fn matrix_units_multiply_like_matrices() {
        let m2 = matrix_ring(2).unwrap();
        let e12 = RingElement::from_label(&m2, "E12").unwrap();
        let e21 = RingElement::from_label(&m2, "E21").unwrap();
        let e11 = RingElement::from_label(&m2, "E11").unwrap();
        assert_eq!(e12.multiply(&e21).unwrap(), e11);

        // idempotent case
        assert_eq!(e11.multiply(&e11).unwrap(), e11);

        // cross-check every unit pair against the numeric oracle
        for r in 1..=2usize {
            for c in 1..=2usize {
                for r2 in 1..=2usize {
                    for c2 in 1..=2usize {
                        let x = RingElement::from_label(&m2, &format!("E{r}{c}")).unwrap();
                        let y = RingElement::from_label(&m2, &format!("E{r2}{c2}")).unwrap();
                        let got = as_numeric(&m2, 2, &x.multiply(&y).unwrap());
                        let want = numeric_unit(2, r, c).mul(&numeric_unit(2, r2, c2)).unwrap();
                        assert_eq!(got, want, "E{r}{c}·E{r2}{c2}");
                    }
                }
            }
        }
    }

    #[test]
    fn index_mismatch_multiplies_to_zero() {
        let m4 = matrix_ring(4).unwrap();
        let e12 = RingElement::from_label(&m4, "E12").unwrap();
        let e34 = RingElement::from_label(&m4, "E34").unwrap();
        assert!(e12.multiply(&e34).unwrap().is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let m2 = matrix_ring(2).unwrap();
        let m3 = matrix_ring(3).unwrap();
        let x = RingElement::from_label(&m2, "E11").unwrap();
        let y = RingElement::from_label(&m3, "E11").unwrap();
        assert!(matches!(x.multiply(&y), Err(RingError::RingMismatch { .. })));
    }

    #[test]
    fn local_unit_examples() {
        let m2 = matrix_ring(2).unwrap();
        let e12 = RingElement::from_label(&m2, "E12").unwrap();
        let u = local_unit_for(std::slice::from_ref(&e12)).unwrap();
        assert_eq!(u, RingElement::total_idempotent(&m2)); // e11 + e22
        assert_eq!(e12.multiply(&u).unwrap(), e12);
        assert_eq!(u.multiply(&e12).unwrap(), e12);

        let e11 = RingElement::from_label(&m2, "E11").unwrap();
        assert_eq!(
            local_unit_for(std::slice::from_ref(&e11)).unwrap(),
            RingElement::idempotent(&m2, 0)
        );

        assert!(matches!(local_unit_for(&[]), Err(RingError::EmptySet)));
    }

    #[test]
    fn local_unit_for_arrow_in_path_algebra() {
        let q = Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![("a".into(), "1".into(), "2".into())],
        };
        let p = path_algebra("P", &q).unwrap();
        let a = RingElement::from_label(&p, "a").unwrap();
        let u = local_unit_for(std::slice::from_ref(&a)).unwrap();
        assert_eq!(u, RingElement::total_idempotent(&p)); // e1 + e2
        assert_eq!(a.multiply(&u).unwrap(), a);
        assert_eq!(u.multiply(&a).unwrap(), a);
    }

    #[test]
    fn idempotent_order() {
        let m2 = matrix_ring(2).unwrap();
        let e1 = RingElement::idempotent(&m2, 0);
        let e2 = RingElement::idempotent(&m2, 1);
        let total = RingElement::total_idempotent(&m2);
        assert!(idempotent_leq(&e1, &total).unwrap());
        assert!(!idempotent_leq(&e1, &e2).unwrap());
        assert!(!idempotent_leq(&total, &e1).unwrap());

        let e12 = RingElement::from_label(&m2, "E12").unwrap();
        assert!(matches!(
            idempotent_leq(&e12, &e1),
            Err(RingError::NotIdempotent { .. })
        ));
    }

    #[test]
    fn leq_is_a_partial_order_on_generator_sums() {
        let m3 = matrix_ring(3).unwrap();
        let subsets: Vec<Vec<usize>> =
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]];
        let elems: Vec<RingElement> = subsets
            .iter()
            .map(|s| RingElement::sum_of_idempotents(&m3, s))
            .collect();
        for (i, a) in elems.iter().enumerate() {
            assert!(idempotent_leq(a, a).unwrap(), "reflexive");
            for (j, b) in elems.iter().enumerate() {
                let ab = idempotent_leq(a, b).unwrap();
                let ba = idempotent_leq(b, a).unwrap();
                if ab && ba {
                    assert_eq!(a, b, "antisymmetric");
                }
                // order agrees with subset containment
                let subset = subsets[i].iter().all(|x| subsets[j].contains(x));
                assert_eq!(ab, subset);
                for c in &elems {
                    if ab && idempotent_leq(b, c).unwrap() {
                        assert!(idempotent_leq(a, c).unwrap(), "transitive");
                    }
                }
            }
        }
    }

    #[test]
    fn verify_matrix_and_path_rings() {
        let m3 = matrix_ring(3).unwrap();
        assert!(verify_ring(&m3, None).passed());

        let q = Quiver {
            vertices: vec!["1".into(), "2".into(), "3".into()],
            arrows: vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
            ],
        };
        let p = path_algebra("P3", &q).unwrap();
        // paths: e1, e2, e3, a, b, b*a
        assert_eq!(p.dim(), 6);
        assert!(verify_ring(&p, None).passed());

        // composition lands in the right component
        let a = RingElement::from_label(&p, "a").unwrap();
        let b = RingElement::from_label(&p, "b").unwrap();
        let ba = b.multiply(&a).unwrap();
        assert_eq!(ba, RingElement::from_label(&p, "b*a").unwrap());
        assert!(a.multiply(&b).unwrap().is_zero());
    }

    #[test]
    fn corrupted_structure_constant_is_reported_with_triple() {
        let mut b = RingBuilder::new("bad");
        b.idempotent("e1").unwrap();
        b.idempotent("e2").unwrap();
        for (l, r, c) in [
            ("E11", "e1", "e1"),
            ("E12", "e1", "e2"),
            ("E21", "e2", "e1"),
            ("E22", "e2", "e2"),
        ] {
            b.basis_element(l, r, c).unwrap();
        }
        for (u, v, w) in [
            ("E11", "E11", "E11"),
            ("E11", "E12", "E12"),
            ("E12", "E21", "E11"),
            ("E12", "E22", "E12"),
            ("E21", "E11", "E21"),
            ("E22", "E21", "E21"),
            ("E22", "E22", "E22"),
        ] {
            b.product(u, v, w).unwrap();
        }
        // corrupt E21·E12: should be E22 with coefficient 1
        b.product_terms(
            "E21",
            "E12",
            vec![("E22".to_string(), Scalar::from_int(2))],
        )
        .unwrap();
        let ring = b.build().unwrap();
        let report = verify_ring(&ring, None);
        assert!(!report.passed());
        assert!(
            report
                .failures
                .iter()
                .any(|f| f.witness.contains("E21") && f.witness.contains("E12")),
            "failure must name the offending triple: {report:?}"
        );
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let q = Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        };
        assert!(matches!(path_algebra("C", &q), Err(RingError::CyclicQuiver)));
    }

    #[test]
    fn morphism_checks() {
        let m2 = matrix_ring(2).unwrap();
        let q = ground_ring();

        // diagonal embedding of the rational field
        let diag = RingMorphism::new(
            "diag",
            &q,
            &m2,
            vec![(
                "1".to_string(),
                vec![
                    ("E11".to_string(), Scalar::one()),
                    ("E22".to_string(), Scalar::one()),
                ],
            )],
        )
        .unwrap();
        assert!(diag.check().passed());

        // 1 ↦ e11 misses e22
        let partial = RingMorphism::new(
            "partial",
            &q,
            &m2,
            vec![("1".to_string(), vec![("E11".to_string(), Scalar::one())])],
        )
        .unwrap();
        let report = partial.check();
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.witness == "e2"));

        assert!(RingMorphism::identity(&m2).check().passed());
    }

    #[test]
    fn corners() {
        let m2 = matrix_ring(2).unwrap();
        let e1 = RingElement::idempotent(&m2, 0);
        let c = corner(&m2, &e1).unwrap();
        assert_eq!(c.ring.dim(), 1);
        assert!(verify_ring(&c.ring, None).passed());

        let total = RingElement::total_idempotent(&m2);
        let c = corner(&m2, &total).unwrap();
        assert_eq!(c.ring.dim(), 4);

        let q = Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![("a".into(), "1".into(), "2".into())],
        };
        let p = path_algebra("P", &q).unwrap();
        let e1 = RingElement::idempotent(&p, 0);
        let c = corner(&p, &e1).unwrap();
        assert_eq!(c.ring.dim(), 1); // span{e1}

        let a = RingElement::from_label(&m2, "E12").unwrap();
        assert!(matches!(corner(&m2, &a), Err(RingError::NotIdempotent { .. })));
    }

    #[test]
    fn corner_of_non_generator_idempotent() {
        let m2 = matrix_ring(2).unwrap();
        // e = E11 + E12 is idempotent but not a generator sum
        let e = RingElement::from_coords(
            &m2,
            vec![
                (m2.basis_index("E11").unwrap(), Scalar::one()),
                (m2.basis_index("E12").unwrap(), Scalar::one()),
            ],
        );
        assert!(e.is_idempotent());
        let c = corner(&m2, &e).unwrap();
        assert!(verify_ring(&c.ring, None).passed());
        // corner multiplication agrees with the parent's through the embedding
        for i in 0..c.ring.dim() {
            for j in 0..c.ring.dim() {
                let x = RingElement::from_coords(&c.ring, vec![(i, Scalar::one())]);
                let y = RingElement::from_coords(&c.ring, vec![(j, Scalar::one())]);
                let inside = c.embed_element(&m2, x.multiply(&y).unwrap().coords());
                let outside = c
                    .embed_element(&m2, x.coords())
                    .multiply(&c.embed_element(&m2, y.coords()))
                    .unwrap();
                assert_eq!(inside, outside);
            }
        }
    }

    #[test]
    fn every_basis_element_is_fixed_by_its_local_unit() {
        let q = Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![("a".into(), "1".into(), "2".into())],
        };
        let rings = [
            matrix_ring(2).unwrap(),
            matrix_ring(3).unwrap(),
            ground_ring(),
            path_algebra("P", &q).unwrap(),
        ];
        for ring in &rings {
            for i in 0..ring.dim() {
                let a = RingElement::from_coords(ring, vec![(i, Scalar::one())]);
                let e = local_unit_for(std::slice::from_ref(&a)).unwrap();
                assert_eq!(a.multiply(&e).unwrap(), a, "{} in {}", a, ring.name());
                assert_eq!(e.multiply(&a).unwrap(), a);
            }
        }
    }

    #[test]
    fn direct_sum_and_rees_presentations() {
        let m2 = matrix_ring(2).unwrap();
        let q = ground_ring();
        let ds = direct_sum("M2+Q", &[&m2, &q]).unwrap();
        assert_eq!(ds.dim(), 5);
        assert!(verify_ring(&ds, None).passed());
        // cross terms vanish
        let x = RingElement::from_label(&ds, "s0.E12").unwrap();
        let y = RingElement::from_label(&ds, "s1.1").unwrap();
        assert!(x.multiply(&y).unwrap().is_zero());

        // Rees ring over Q with identity sandwich is the matrix ring
        let rees = rees_ring("Rees", &q, 2).unwrap();
        assert_eq!(rees.dim(), 4);
        assert!(verify_ring(&rees, None).passed());
        let u = RingElement::from_label(&rees, "E1.2:1").unwrap();
        let v = RingElement::from_label(&rees, "E2.1:1").unwrap();
        let w = RingElement::from_label(&rees, "E1.1:1").unwrap();
        assert_eq!(u.multiply(&v).unwrap(), w);
    }

    #[test]
    fn infinite_ring_corners_are_memoized_and_verified() {
        let inf = InfiniteMatrixRing::new("Minf");
        assert!(inf.corner(0).is_err());
        let c3 = inf.corner(3).unwrap();
        assert_eq!(c3.dim(), 9);
        assert!(verify_ring(&c3, None).passed());
        let again = inf.corner(3).unwrap();
        assert!(Arc::ptr_eq(&c3, &again));
        // a larger corner restricts onto the smaller one
        let c5 = inf.corner(5).unwrap();
        assert_eq!(c5.idems()[..3], c3.idems()[..]);
    }
}
