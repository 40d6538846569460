//! Built-in instances used by the verification suites and the CLI.
//!
//! Everything here is small enough that every law check is an exact matrix
//! identity computed in well under a second, yet rich enough to exercise
//! multiple idempotents, non-trivial gradings, corner rings and a lazily
//! infinite family.

use crate::module::{
    regular_bimodule, right_ideal, right_ideal_over_corner, left_ideal, ModuleBuilder,
    ModuleError, UnitalBimodule,
};
use crate::ring::{
    ground_ring, matrix_ring, path_algebra, GradedRing, InfiniteMatrixRing, Quiver, RingError,
    RingMorphism,
};
use crate::scalar::Scalar;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// The base rings, modules and morphisms of the built-in catalog.
pub struct BaseCatalog {
    pub q: Arc<GradedRing>,
    pub m2: Arc<GradedRing>,
    pub m3: Arc<GradedRing>,
    /// Path algebra of the quiver `1 -> 2`.
    pub path: Arc<GradedRing>,
    /// A finite corner of the lazily infinite matrix ring.
    pub inf_corner: Arc<GradedRing>,
    /// Corner ring `e1·M2·e1`.
    pub m2_corner: Arc<GradedRing>,

    pub m2_regular: Arc<UnitalBimodule>,
    /// The row space as a `(Q, M2)`-bimodule.
    pub row: Arc<UnitalBimodule>,
    /// `M2·e1` as an `(M2, Q)`-bimodule.
    pub col: Arc<UnitalBimodule>,
    /// `e1·M2` as an `(e1·M2·e1, M2)`-bimodule.
    pub e1_m2_over_corner: Arc<UnitalBimodule>,
    pub path_regular: Arc<UnitalBimodule>,
    /// `e2·P` as a `(Q, P)`-bimodule (the two-dimensional projective).
    pub e2_path: Arc<UnitalBimodule>,
    /// The simple module at the source vertex: not projective.
    pub simple_source: Arc<UnitalBimodule>,
    pub inf_regular: Arc<UnitalBimodule>,

    /// Diagonal embedding of the rationals into `M2`.
    pub diag_psi: Arc<RingMorphism>,
    /// `Q -> P` sending 1 to `e1 + e2`.
    pub path_psi: Arc<RingMorphism>,
    pub id_q: Arc<RingMorphism>,
}

impl BaseCatalog {
    /// Builds the base catalog; `corner` bounds the materialized slice of
    /// the infinite matrix ring (clamped to at least 2).
    pub fn new(corner: usize) -> Result<Self, CatalogError> {
        let q = ground_ring();
        let m2 = matrix_ring(2)?;
        let m3 = matrix_ring(3)?;
        let path = path_algebra(
            "P",
            &Quiver {
                vertices: vec!["1".into(), "2".into()],
                arrows: vec![("a".into(), "1".into(), "2".into())],
            },
        )?;
        let inf = InfiniteMatrixRing::new("Minf");
        let inf_corner = inf.corner(corner.max(2))?;
        let m2_corner = m2.corner_subset(&[0])?;

        let m2_regular = regular_bimodule(&m2);

        let row = {
            let mut b = ModuleBuilder::new("Row", &q, &m2);
            b.basis_element("v1", "1", "e1")?;
            b.basis_element("v2", "1", "e2")?;
            for (m, a, w) in [
                ("v1", "E11", "v1"),
                ("v1", "E12", "v2"),
                ("v2", "E21", "v1"),
                ("v2", "E22", "v2"),
            ] {
                b.right_action(m, a, vec![(w.to_string(), Scalar::one())])?;
            }
            b.build()?
        };

        let col = left_ideal(&m2, &q, &[0]);
        let (_, e1_m2_over_corner) = right_ideal_over_corner(&m2, &[0])?;
        let path_regular = regular_bimodule(&path);
        let e2_path = right_ideal(&q, &path, &[1]);

        let simple_source = {
            let mut b = ModuleBuilder::new("S2", &q, &path);
            b.basis_element("s", "1", "e2")?;
            b.right_action("s", "a", vec![])?;
            b.build()?
        };

        let inf_regular = regular_bimodule(&inf_corner);

        let diag_psi = Arc::new(RingMorphism::new(
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
        )?);
        let path_psi = Arc::new(RingMorphism::new(
            "pathdiag",
            &q,
            &path,
            vec![(
                "1".to_string(),
                vec![
                    ("e1".to_string(), Scalar::one()),
                    ("e2".to_string(), Scalar::one()),
                ],
            )],
        )?);
        let id_q = Arc::new(RingMorphism::identity(&q));

        Ok(BaseCatalog {
            q,
            m2,
            m3,
            path,
            inf_corner,
            m2_corner,
            m2_regular,
            row,
            col,
            e1_m2_over_corner,
            path_regular,
            e2_path,
            simple_source,
            inf_regular,
            diag_psi,
            path_psi,
            id_q,
        })
    }

    /// The bimodules every tensor-level law is tested over.
    pub fn bimodules(&self) -> Vec<&Arc<UnitalBimodule>> {
        vec![
            &self.m2_regular,
            &self.row,
            &self.col,
            &self.e1_m2_over_corner,
            &self.path_regular,
            &self.e2_path,
            &self.inf_regular,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::verify_module;
    use crate::ring::verify_ring;

    #[test]
    fn base_catalog_is_law_abiding() {
        let cat = BaseCatalog::new(3).unwrap();
        for ring in [&cat.q, &cat.m2, &cat.m3, &cat.path, &cat.inf_corner, &cat.m2_corner] {
            assert!(verify_ring(ring, None).passed(), "{}", ring.name());
        }
        for m in cat.bimodules() {
            assert!(verify_module(m, None, None).passed(), "{}", m.name());
        }
        assert!(verify_module(&cat.simple_source, None, None).passed());
        assert!(cat.diag_psi.check().passed());
        assert!(cat.path_psi.check().passed());
        assert!(cat.id_q.check().passed());
    }
}
