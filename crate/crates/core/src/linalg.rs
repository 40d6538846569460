//! Dense exact linear algebra over the rationals.
//!
//! Everything downstream — quotients, duals, law checks — reduces to row
//! reduction here. Bases are chosen deterministically (pivot order), so any
//! two runs produce identical coordinates.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
}

/// A dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|v| v.len() != c) {
            return Err(LinalgError::DimensionMismatch {
                context: "ragged rows".into(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from integer literals, mostly for tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .expect("literal rows must be rectangular")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Sets column `c` to `v`.
    pub fn set_column(&mut self, c: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.rows);
        for (r, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                context: format!(
                    "matrix product {}x{} * {}x{}",
                    self.rows, self.cols, rhs.rows, rhs.cols
                ),
            });
        }
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let mut acc = out.at(r, c).clone();
                    acc += &(a * b);
                    out.set(r, c, acc);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                context: format!("apply {}x{} to vector of length {}", self.rows, self.cols, v.len()),
            });
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = self.at(r, c);
                if !a.is_zero() {
                    out[r] += &(a * x);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix difference".into(),
            });
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c) - rhs.at(r, c)
        }))
    }

    /// Reduced row echelon form together with the strictly increasing list of
    /// pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead >= m.rows {
                break;
            }
            // first row at or below `lead` with a nonzero entry in this column
            let Some(pr) = (lead..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = m.at(lead, col).recip();
            m.scale_row(lead, &inv);
            for r in 0..m.rows {
                if r != lead && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    m.row_axpy(r, lead, &f);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right null space `{x : Mx = 0}`. Each basis vector sets
    /// one free coordinate to 1, in ascending column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.at(row, f);
                }
                v
            })
            .collect()
    }

    /// Any solution of `M x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                context: format!("solve: {} rows vs rhs of length {}", self.rows, b.len()),
            });
        }
        // row-reduce the augmented matrix [M | b]
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red.at(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                context: "vstack".into(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Scalar) {
        if f.is_one() {
            return;
        }
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.entries[idx].is_zero() {
                self.entries[idx] *= f;
            }
        }
    }

    /// row[r] -= f * row[src]
    fn row_axpy(&mut self, r: usize, src: usize, f: &Scalar) {
        if f.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.entries[src * self.cols + c].clone();
            if !v.is_zero() {
                let idx = r * self.cols + c;
                self.entries[idx] -= &(f * &v);
            }
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], f: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * f).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn unit_vec(dim: usize, idx: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[idx] = Scalar::one();
    v
}

/// A quotient of `Q^n` by the row space of a relation matrix, with the
/// canonical basis given by the non-pivot coordinates of the relations' RREF
/// in ascending index order.
#[derive(Clone)]
pub struct QuotientSpace {
    ambient_dim: usize,
    reduced: Matrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, relations: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        for rel in relations {
            if rel.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    context: format!(
                        "relation of length {} in ambient dimension {}",
                        rel.len(),
                        ambient_dim
                    ),
                });
            }
        }
        let m = Matrix::from_rows(relations.to_vec())?;
        let m = if m.rows() == 0 {
            Matrix::zero(0, ambient_dim)
        } else {
            m
        };
        let (mut reduced, pivots) = m.rref();
        // trim zero rows so `reduced` has exactly rank(relations) rows
        let rank = pivots.len();
        reduced = Matrix::from_fn(rank, ambient_dim, |r, c| reduced.at(r, c).clone());
        let mut is_pivot = vec![false; ambient_dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free = (0..ambient_dim).filter(|&c| !is_pivot[c]).collect();
        Ok(QuotientSpace {
            ambient_dim,
            reduced,
            pivots,
            free,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Ambient indices whose classes form the canonical basis.
    pub fn free_indices(&self) -> &[usize] {
        &self.free
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        // RREF rows have 1 on their pivot and 0 on every other pivot, so the
        // class of v is read off in one pass.
        self.free
            .iter()
            .map(|&fcol| {
                let mut x = v[fcol].clone();
                for (row, &p) in self.pivots.iter().enumerate() {
                    if !v[p].is_zero() {
                        x -= &(&v[p] * self.reduced.at(row, fcol));
                    }
                }
                x
            })
            .collect()
    }

    /// The canonical ambient representative of a quotient vector; it is
    /// supported on the free coordinates, so `project ∘ section = id`.
    pub fn section(&self, q: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(q.len(), self.free.len(), "quotient dimension mismatch");
        let mut v = vec![Scalar::zero(); self.ambient_dim];
        for (i, &fcol) in self.free.iter().enumerate() {
            v[fcol] = q[i].clone();
        }
        v
    }

    /// Projection of the ambient basis vector `idx`.
    pub fn project_basis(&self, idx: usize) -> Vec<Scalar> {
        assert!(idx < self.ambient_dim);
        let mut pos = None;
        for (row, &p) in self.pivots.iter().enumerate() {
            if p == idx {
                pos = Some(row);
            }
        }
        match pos {
            // pivot coordinate: class is minus the free part of its row
            Some(row) => self
                .free
                .iter()
                .map(|&f| -self.reduced.at(row, f))
                .collect(),
            None => self
                .free
                .iter()
                .map(|&f| {
                    if f == idx {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect(),
        }
    }
}

impl fmt::Debug for QuotientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuotientSpace(ambient={}, dim={}, pivots={:?})",
            self.ambient_dim,
            self.dim(),
            self.pivots
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rref_hand_reduction() {
        // [[2,4],[1,2]] row-reduces by hand to [[1,2],[0,0]] with pivot column 0
        let m = Matrix::from_int_rows(&[&[2, 4], &[1, 2]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Matrix::from_int_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(3);
        let (r, pivots) = id.rref();
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(pivots, vec![0, 1, 2]);

        let z = Matrix::zero(2, 2);
        let (r, pivots) = z.rref();
        assert!(r.is_zero());
        assert!(pivots.is_empty());
    }

    #[test]
    fn kernel_of_sum_constraint() {
        // x + y = 0 has kernel spanned by (-1, 1)
        let m = Matrix::from_int_rows(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![s(-1), s(1)]]);
    }

    #[test]
    fn kernel_trivial_and_full() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
        assert_eq!(Matrix::zero(1, 2).kernel_basis().len(), 2);
    }

    #[test]
    fn solve_underdetermined() {
        let m = Matrix::from_int_rows(&[&[1, 1]]);
        let x = m.solve(&[s(2)]).unwrap().expect("consistent");
        assert_eq!(&x[0] + &x[1], s(2));
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = vec![s(3), s(-4)];
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), Some(b.clone()));

        let m = Matrix::from_int_rows(&[&[1], &[1]]);
        assert_eq!(m.solve(&[s(1), s(2)]).unwrap(), None);

        assert!(m.solve(&[s(1)]).is_err());
    }

    #[test]
    fn quotient_dimensions() {
        let q = QuotientSpace::new(2, &[vec![s(1), s(-1)]]).unwrap();
        assert_eq!(q.dim(), 1);

        let q = QuotientSpace::new(3, &[]).unwrap();
        assert_eq!(q.dim(), 3);
        for i in 0..3 {
            let mut v = vec![s(0); 3];
            v[i] = s(1);
            assert_eq!(q.project(&v), v);
        }

        let q = QuotientSpace::new(2, &[vec![s(1), s(0)], vec![s(0), s(1)]]).unwrap();
        assert_eq!(q.dim(), 0);
    }

    #[test]
    fn quotient_rejects_bad_relation_length() {
        assert!(QuotientSpace::new(2, &[vec![s(1)]]).is_err());
    }

    #[test]
    fn project_kills_relations_and_splits_section() {
        let rels = vec![vec![s(1), s(-1), s(0)], vec![s(0), s(2), s(-2)]];
        let q = QuotientSpace::new(3, &rels).unwrap();
        assert_eq!(q.dim(), 1);
        for r in &rels {
            assert!(q.project(r).iter().all(Scalar::is_zero));
        }
        let one = vec![s(1)];
        assert_eq!(q.project(&q.section(&one)), one);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Matrix> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                    Matrix::from_fn(r, c, |i, j| Scalar::from_int(vals[i * c + j]))
                })
            })
        }

        proptest! {
            #[test]
            fn rref_is_idempotent(m in small_matrix()) {
                let (r1, p1) = m.rref();
                let (r2, p2) = r1.rref();
                prop_assert_eq!(r1, r2);
                prop_assert_eq!(p1, p2);
            }

            #[test]
            fn rank_nullity(m in small_matrix()) {
                prop_assert_eq!(m.cols(), m.rank() + m.kernel_basis().len());
            }

            #[test]
            fn quotient_project_section_identity(m in small_matrix()) {
                let rels: Vec<Vec<Scalar>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
                let q = QuotientSpace::new(m.cols(), &rels).unwrap();
                prop_assert_eq!(q.dim(), m.cols() - m.rank());
                for r in &rels {
                    prop_assert!(q.project(r).iter().all(Scalar::is_zero));
                }
                // project is surjective: every quotient basis vector is hit
                for i in 0..q.dim() {
                    let mut e = vec![Scalar::zero(); q.dim()];
                    e[i] = Scalar::one();
                    prop_assert_eq!(q.project(&q.section(&e)), e);
                }
            }
        }
    }
}
