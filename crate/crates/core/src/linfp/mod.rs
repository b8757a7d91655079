//! Exact linear algebra over prime fields: polynomials, matrices, primary
//! rational canonical forms, matrix orders, Singer cycles, centralizer
//! exponents and the large-order / large-𝔣 classifications.

mod classify;
mod gl;
mod mat;
mod poly;
mod props;
mod rcf;

pub use classify::{
    classify_f_large, classify_f_large_rcf, classify_large_order, classify_large_order_rcf,
    ClassificationVerdict, VerdictKind,
};
pub use gl::{
    automorphism_to_matrix, for_each_gl, for_each_gl_with_first_row, gl_order, gl_partitioned,
    index_of, matrix_to_automorphism, vector_of,
};
pub use mat::{companion, MatFp};
pub use poly::{canonical_cmp, PolyFp, MAX_P};
pub use props::{
    centralizer_exponent, centralizer_exponent_rcf, commutant_basis, fixed_vector_count,
    has_proper_root, irreducibles, mat_ffrak, mat_order_and_ffrak, matrix_order, matrix_order_rcf,
    rcf_key, ring_shapes, singer, singer_poly, unit_exponent_bruteforce, unit_exponent_formula,
    RootSearch, SWEEP_CAP,
};
pub use rcf::{
    char_poly, invariant_factors, primary_rcf, primary_rcf_unchecked, smith_diagonal, PrimaryBlock,
    PrimaryRcf,
};

#[cfg(test)]
mod tests;
