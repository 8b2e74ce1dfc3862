pub mod cohomology;
pub mod complexes;
pub mod error;
pub mod language;
pub mod matrix;
pub mod pf;
pub mod pisot;
pub mod poly;
pub mod properize;
pub mod recognizability;
pub mod report;
pub mod search;
pub mod word;

mod bigser;

pub use error::{Error, Result};
pub use matrix::{substitution_matrix, IntMatrix};
pub use poly::IntPolynomial;
pub use word::{abelianize, AbelianVector, Alphabet, Letter, Substitution, Word};
