//! The mapping-cone free resolution: graded module enumeration, the maps
//! of the construction, and the tower of cones.

mod basis;
mod builder;
mod formal;

pub use basis::{
    cone_position_basis, en_basis, en_shifted_basis, koszul_basis, wedges, BasisElement,
    GradedFreeModule,
};
pub use builder::{
    binomial, build_cone_complex, build_tower, cone_differential, en_differential, en_module,
    expected_cone_dim, koszul_differential, koszul_module, ChainView, Complex, DifferentialMap,
};
pub use formal::{delta, normalize_wedge, phi, psi, FormalSum, PsiBlock, SignFlip};
