pub mod error;
pub mod linalg;
pub mod seeding;

pub use error::{Error, Result};
