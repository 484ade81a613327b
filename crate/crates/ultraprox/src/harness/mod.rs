//! Theorem checks, random model generation, fuzzing, and worked-example
//! replication.

pub mod checks;
pub mod fuzz;
pub mod generate;
pub mod replicate;
