//! Sparse multivariate polynomials, variable universes and term orders.

pub mod convert;
mod ideal;
mod monomial;
mod mpoly;
mod order;
mod parse;
mod universe;

pub use ideal::Ideal;
pub use monomial::{canonical_cmp, Monomial};
pub use mpoly::MPoly;
pub use order::{BlockKind, OrderBlock, TermOrder};
pub use parse::{parse_constant, parse_poly, parse_polys};
pub use universe::{grid_name, VarUniverse};

/// Column blocks `x[1][j]..x[d][j]` of a grid universe built by
/// [`VarUniverse::grid`].
pub fn grid_blocks(d: usize, n: usize) -> Vec<Vec<usize>> {
    (0..=n).map(|j| (0..d).map(|i| j * d + i).collect()).collect()
}

/// Index of `x[i][j]` (i 1-based) in a grid universe.
pub fn grid_index(d: usize, i: usize, j: usize) -> usize {
    j * d + (i - 1)
}
