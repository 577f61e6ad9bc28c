pub mod config;
pub mod coxeter;
pub mod error;
pub mod expr;
pub mod faithfulness;
pub mod gallery;
pub mod hopf;
pub mod linear;
pub mod nilhecke;
pub mod poly;
pub mod qstarw;
pub mod ratfunc;
pub mod render;
pub mod sample;
pub mod scalar;
pub mod tensor;
pub mod verify;
