//! Finitely presented group engine.
//!
//! Word arithmetic, abelianization through Smith normal form, bounded
//! Todd-Coxeter coset enumeration, and heuristic Tietze simplification.
//! All values are immutable and all operations pure.

mod classify;
mod coset;
mod presentation;
mod snf;
mod tietze;
mod word;

pub use classify::{classify_group, GroupVerdict, Triviality};
pub use coset::{todd_coxeter, Enumeration};
pub use presentation::{AbelianInvariants, Presentation};
pub use snf::smith_normal_form;
pub use tietze::tietze_simplify;
pub use word::{free_reduce, Letter, Sign, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("no image provided for generator #{generator}")]
    MissingImage { generator: usize },
    #[error("duplicate generator name `{name}`")]
    DuplicateGenerator { name: String },
    #[error("letter refers to generator #{index} but the presentation has {count}")]
    GeneratorIndexOutOfRange { index: usize, count: usize },
    #[error("surface presentations need an even generator count, got {count}")]
    BadSurfaceGenerators { count: usize },
}
