//! Exact scalars: rationals, polynomials in one and two variables, and the
//! cyclotomic ring that carries categorical dimensions.

mod cyclotomic;
mod poly1;
mod poly2;
mod rat;

pub use cyclotomic::{cyclotomic_poly, qint, CycScalar};
pub use poly1::Poly1;
pub use poly2::{Monomial2, Poly2};
pub use rat::Rat;
