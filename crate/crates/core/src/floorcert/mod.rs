//! The method of Floors.
//!
//! By Legendre's formula the exponent of a prime `p` in `Π num! / Π den!`
//! is `Σ_{e>=1} S(p^e)` where `S(q) = Σ ⌊num/q⌋ - Σ ⌊den/q⌋`. If the floor
//! sum `S` is nonnegative at every odd `q >= 3` and every integer point, the
//! ratio has no odd prime in its denominator.
//!
//! [`certify`] proves that nonnegativity for all odd `q = 2n + 1` at once:
//! variables are eliminated one by one by sampling around jump points,
//! leaving floor sums in `n` alone whose terms `⌊(a·n+b)/(2n+1)⌋` are
//! constant past a computable bound.

pub mod builtins;
pub mod certificate;
pub mod eliminate;
pub mod floorsum;
pub mod form;
pub mod oracle;
pub mod spec;

pub use builtins::{builtin, builtin_instances, Instance};
pub use certificate::{certify, Certificate, Leaf, Verdict, DEFAULT_SMALL_Q_MAX};
pub use eliminate::{case_values, eliminate, jump_candidates, stabilization_bound};
pub use floorsum::{
    brute_force_small_q, build_floor_sum, evaluate_floor_sum, FloorSum, FloorTerm, SmallQReport,
    Witness,
};
pub use form::{Assignment, LinearForm};
pub use oracle::{oracle_membership, uniform_ranges, OracleReport};
pub use spec::{parse_spec, FactorialRatioSpec};
