//! Exact computation with quantum cluster algebras attached to signed words.

pub mod bases;
pub mod braid;
pub mod cartan;
pub mod error;
pub mod forms;
pub mod infinity;
pub mod linalg;
pub mod qtorus;
pub mod roots;
pub mod scalar;
pub mod seed;
pub mod tsystems;
pub mod words;

pub use cartan::Cartan;
pub use error::{QError, QResult};
pub use qtorus::{ExpVec, LambdaForm, QLaurent, Torus, Vid};
pub use scalar::QScalar;
pub use seed::{MutSeq, Seed, SeedData};
pub use words::{build_dsd, build_rsd, word_move, Move, Pos, SignedWord};
