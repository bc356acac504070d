pub mod algebra;
pub mod cli;
pub mod coeff;
pub mod coxeter;
pub mod decor;
pub mod diagram;
pub mod engine;
