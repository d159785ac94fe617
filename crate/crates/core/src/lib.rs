pub mod arith;
pub mod exactnum;
pub mod orthoclass;
pub mod reptheory;
pub mod conductor;
pub mod dirichlet;
pub mod nfield;
pub mod cubicenum;
pub mod quadchar;
pub mod census;
pub mod config;
pub mod cli;
