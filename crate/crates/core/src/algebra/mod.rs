//! Exact rational arithmetic and dense univariate polynomials, with a
//! floating-point complex instantiation for the numerical solver.

mod poly;
mod roots;
mod scalar;

pub use poly::{is_squarefree, poly_discriminant, poly_eval, poly_gcd, resultant, Poly};
pub use roots::complex_roots;
pub use scalar::{
    int, parse_rational, parse_rational_list, rat, rational_to_f64, render_rational, serde_rational, ComplexScalar,
    Rational, Scalar,
};
