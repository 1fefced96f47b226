//! Exact and modular sparse linear algebra: incremental reduced echelon
//! forms, ranks and subspace comparison.

mod dump;
mod field;
mod multimod;
mod rowspace;

pub use dump::{dump_rows, dump_rowspace, format_row, parse_dump};
pub use field::{is_prime, parse_rational, random_primes, rational_string, Field, PrimeField, RationalField, ScalarMode};
pub use multimod::{CertificationMode, MultiComparison};
pub use rowspace::{compare, rank, Comparison, RowSpace, SparseVector, Verdict};
