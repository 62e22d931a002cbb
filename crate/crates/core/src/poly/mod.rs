//! Univariate polynomials over a generic coefficient domain, and integer
//! polynomials in `(c, z)`.

mod bipoly;
mod uni;

pub use bipoly::BiPoly;
pub use uni::{Coeff, UniPoly};
