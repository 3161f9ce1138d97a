pub mod capacity;
pub mod cli;
pub mod criteria;
pub mod encoding;
pub mod error;
pub mod info;
pub mod linalg;
pub mod random;
pub mod states;
