//! Exact rational arithmetic, dense linear algebra, polynomials and
//! truncated power series.

mod branch;
mod matrix;
mod poly;
mod rational;
mod series;

pub use branch::{branch_laurent, branch_series};
pub use matrix::{intersect_row_spaces, kernel_basis, normalize_leading, rref_and_rank, Matrix, Rref};
pub use poly::{render_terms, BiPoly, TernaryForm, UPoly};
pub use rational::{
    deserialize_rational, deserialize_rational_vec, format_rational, frac, parse_rational, q, rational_root, rational_sqrt,
    rational_to_value, rationals_to_value, rpow, serialize_rational, serialize_rational_vec, value_to_rational,
    Rational,
};
pub use series::{eval_bipoly, Laurent, TruncatedSeries, EXACT};
