//! Builders for concrete color and order-F algebras, Clifford tensor
//! products and multiplier decoloration.

mod clifford;
mod decolor;
mod gl;
mod order3;

pub use clifford::{build_generalized_clifford, clifford_factor, clifford_phase, tensor_clifford, CliffordAlgebra};
pub use decolor::{decolor, default_multiplier, recolor};
pub use gl::{build_color_gl, color_gl_associative, ColorGlSpec};
pub use order3::{
    build_adjoint_order3, build_iso3_poincare, build_mat_order3, clifford3_tensor_associative, clifford_tensor_gl,
    mat_associative, triple_gl,
};
