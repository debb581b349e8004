//! Exact lambda-bracket engine for vertex algebras and their supersymmetric
//! cousins: BRST reductions, Miura maps, screenings, Zhu algebras and finite
//! W-algebras, with level-dependent coefficients kept symbolic.

pub mod brst;
pub mod cli;
pub mod env;
pub mod linalg;
pub mod liealg;
pub mod scalar;
pub mod screening;
pub mod susy;
pub mod vertex;
pub mod zhu;
