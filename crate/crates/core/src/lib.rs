//! Exact verification toolkit for the polynomial family
//!
//! ```text
//! P_m(x) = Σ_{i,j} C(x+j, j) C(x-1, j) C(j, i) C(m, i) C(i, m-j) · 3 / ((2i-1)(2j+1)(2m-2i-1))
//! ```
//!
//! and its expansion `P_m = Σ_k d(m,k) B_k` in the even basis
//! `B_k(x) = C(x+k, 2k) + C(-x+k, 2k)`.
//!
//! The crate computes the coefficients `d(m,k)` exactly, evaluates the
//! linear relations between them together with the telescoping certificate
//! that proves them, and ships a general certifier ([`floorcert`]) that
//! decides p-integrality of factorial ratios at every odd prime power by
//! analysing signed sums of floors.
//!
//! Everything is exact. There is no floating point anywhere.

pub mod audit;
pub mod bbasis;
pub mod coefficients;
pub mod error;
pub mod exact;
pub mod floorcert;
pub mod relations;

pub use bbasis::{decompose, eval_b, recompose, BCoeffs, EvenPolyValues};
pub use coefficients::{
    d_boundary, d_direct, d_matrix, d_via_recursion, eval_p, iterm, pterm, term, DMatrix,
};
pub use error::{Error, Result};
pub use exact::{binom, catalan, factorial, format_rational, legendre_valuation};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use relations::{
    certificate_g, frac1, frac2, identity_residual, rel1, rel2, verify_identity, DSource, DTable,
    IdentityId, IdentityReport,
};
