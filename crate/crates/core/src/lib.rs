//! Exact-arithmetic workbench for finite-dimensional representations of bound
//! quiver algebras: path bases, Hom and Ext¹ spaces, Auslander–Reiten
//! translates, and the tube/short-cycle gallery of `D̃_n` examples.

pub mod algebra;
pub mod ar;
pub mod error;
pub mod field;
pub mod gallery;
pub mod hom;
pub mod io;
pub mod matrix;
pub mod quiver;
pub mod rep;
pub mod trivial_extension;

pub use ar::{
    check_formula_i, check_formula_ii, minimal_presentation, tau, tau_minus, transpose, AlgebraMatrix,
    Formula, FormulaReport, FormulaSides, Presentation,
};
pub use algebra::{opposite_of, AdmissibilityReport, BoundAlgebra, Element, Relation};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use gallery::{build_delta, build_delta_star, build_lambda, verify_short_cycle, verify_tube, Gallery, GalleryConfig, ShortCycleReport, TubeReport};
pub use hom::{
    are_isomorphic, ext1_dim, hom_basis, hom_dim, is_brick, is_projective, syzygy, IsoOptions, IsoVerdict,
    Morphism, Syzygy,
};
pub use matrix::Matrix;
pub use quiver::{Arrow, Path, Quiver};
pub use rep::{direct_sum_all, injective, projective, simple, DimVector, Representation, Subspace, ValidationReport};
pub use trivial_extension::TrivialExtension;
