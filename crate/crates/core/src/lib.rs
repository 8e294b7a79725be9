pub mod engine;
pub mod error;
pub mod gideal;
pub mod invres;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod symcauchy;

pub use error::{Error, Result};
