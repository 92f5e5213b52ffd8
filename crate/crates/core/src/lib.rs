pub mod cocycle;
pub mod coeff;
pub mod diffop;
pub mod env;
pub mod error;
pub mod group;
pub mod laurent;
pub mod lie;
pub mod linalg;
pub mod lpoly;
pub mod par;
pub mod parse;
pub mod ratfunc;
pub mod reps;
pub mod scalar;
pub mod upoly;
pub mod weyl;
