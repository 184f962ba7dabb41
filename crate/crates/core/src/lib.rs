pub mod automata;
pub mod classify;
pub mod dot;
pub mod invariants;
mod block_map;
mod error;
mod graph;
mod matrix;
mod periodic;
pub mod semigroup;
pub mod text;
pub mod transforms;
mod symbol;

pub use automata::{Automaton, ForbiddenWords, ShiftPresentation};
pub use block_map::BlockMap;
pub use error::{Error, Result};
pub use graph::{Edge, Graph};
pub use matrix::{
    check_bijection, format_polynomial, format_quadratic, matrix_product, parse_polynomial,
    relabel, AlphabeticMatrix, CountMatrix, Polynomial, Quadratic, QuadraticMatrix,
    WordBijection,
};
pub use periodic::PeriodicWord;
pub use symbol::{sym, Alphabet, Symbol};
