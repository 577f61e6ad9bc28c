//! Worked Hopf algebroid fixtures outside the nil Hecke setting.

pub mod endo;
pub mod matrix;
pub mod weyl;
