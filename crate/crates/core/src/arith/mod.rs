//! Exact arithmetic: rationals, quadratic fields, prime fields, factoring.

mod factor;
mod fp;
mod quad;
mod rational;

pub use factor::{
    factor, factor_u64, is_prime, is_prime_u64, mobius_u64, prime_sieve, sqf, squarefree_part,
};
pub use fp::{is_square_mod_p, Fp2Element, FpElement};
pub use quad::{is_p_integral, sqrt_in_field, valuations_above, QuadElem, QuadField};
pub use rational::{
    fmt_rational, height, int_sqrt_exact, parse_rational, rat, ratio, rational_sqrt,
    serialize_rational, v_p, Rational,
};
