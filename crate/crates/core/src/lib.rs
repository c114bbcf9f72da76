//! Exact finite-field linear algebra for weakly periodic decompositions of
//! companion matrices: every `n×n` companion `C` written as `P + N` with `P`
//! potent (`P^t = P` for some `t > 1`) and `N² = 0`.
//!
//! Potency comes in two flavours, see [`Potency`]: the plain definition, and
//! the semisimple variant that also asks for a squarefree minimal polynomial.
//! Every search and set takes the flavour as a parameter.
//!
//! Modules, bottom-up:
//! - [`gf`]: the fields GF(p^l), subfield embeddings, generators, roots of unity.
//! - [`poly`]: polynomials, squarefreeness, factoring, roots in extensions.
//! - [`mat`]: matrices, characteristic/minimal polynomials, potency.
//! - [`companion`]: companions, potent companions of given trace, `ST_n`,
//!   the trace-matching decomposition.
//! - [`rosets`]: sums of roots of unity `SR_n`, the sets `L_{m,n}` and `W_m`,
//!   and their certificate checks.
//! - [`search`]: exhaustive decomposition searches and field-wide reports.

pub mod companion;
pub mod error;
pub mod gf;
pub mod mat;
pub mod poly;
pub mod rosets;
pub mod search;
pub mod witness;

pub use companion::{
    companion_from_coeffs, companion_of, decompose_wp2, enumerate_companions,
    potent_companion_search, potent_companion_with_trace, st_set, CompanionForm, DEFAULT_ENUM_CAP,
};
pub use error::{Error, Result};
pub use gf::{build_field, build_field_with_cap, embed, Element, Embedding, FieldSpec, DEFAULT_FIELD_CAP};
pub use mat::{permutation_matrix, Mat, Potency};
pub use poly::{factor, is_squarefree, roots_in_extensions, Poly};
pub use rosets::{
    check_containments, divisor_count, enumerate_l, eq4omega_check, gcd_divides, sr_set, w_set,
    IntPoly, SrSet, SrWitness,
};
pub use search::{
    brute_commuting_decompose, brute_decompose, check_fixed_point_certificate,
    check_root_of_unity_certificate, conjecture_scan, verify_field, Mode, VerifyOptions,
    VerifyReport, DEFAULT_BRUTE_CAP,
};
pub use witness::{Source, Witness};

/// Version string stamped into reports and cache keys.
pub const VERSION: &str = concat!("weakper ", env!("CARGO_PKG_VERSION"));
