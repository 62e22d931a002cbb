//! Exact-arithmetic workbench for preperiodic portraits of the quadratic
//! family `f_c(z) = z^2 + c` over the rationals and quadratic fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: rationals, quadratic fields, prime fields, factoring.
//! * [`poly`]: univariate polynomials over any coefficient domain and
//!   integer polynomials in `(c, z)`.
//! * [`dynatomic`]: dynatomic and generalized dynatomic polynomials.
//! * [`portrait`]: functional graphs, canonical forms, enumeration, catalog.
//! * [`orbit`]: computing `G(f_c, K)` for `c` in a quadratic field.
//! * [`curves`]: dynamical modular curve models and inequality calculators.
//! * [`modp`]: finite-field checks (root densities, point counts, Jacobians).
//! * [`scan`] and [`verify`]: batch experiments and the check matrix.

pub mod arith;
pub mod curves;
pub mod dynatomic;
pub mod error;
pub mod modp;
pub mod orbit;
pub mod poly;
pub mod portrait;
pub mod scan;
pub mod verify;

pub use arith::{parse_rational, sqf, FpElement, QuadElem, QuadField, Rational};
pub use error::{Error, Result};
pub use orbit::{orbit_data, portrait_of, OrbitPoint, PortraitResult};
pub use poly::{BiPoly, UniPoly};
pub use portrait::{Catalog, CycleStructure, GammaClass, Portrait};
