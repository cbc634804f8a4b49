pub mod decomp;
pub mod diagnostics;
pub mod error;
pub mod flags;
pub mod hecke;
pub mod intser;
pub mod laurent;
pub mod matrix;
pub mod pairing;
mod poly;
pub mod ratfunc;
pub mod typea;
pub mod weyl;
