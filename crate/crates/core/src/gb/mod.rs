//! Pure-difference binomials, term orders and Gröbner bases.

mod buchberger;
mod monomial;
mod order;
mod toric;

pub use buchberger::{
    binomial, buchberger, degree_cap_from_env, groebner_violation, ideal_contains, is_groebner_basis, is_reduced,
    monomial_normal_form, normal_form, reduce_basis, sort_basis, spoly, GbStats, GroebnerBasis, SPoly,
    DEFAULT_DEGREE_CAP,
};
pub use monomial::{Binomial, BinomialJson, Monomial, Ring, Variable};
pub use order::{rank_compatible_orders, Block, BlockKind, OrderKind, TermOrder};
pub use toric::{toric_kernel, MonomialMap};
