//! The idempotent projecting onto invariants, computed as a group average
//! and as the top divided difference times the product of positive roots.

use std::sync::Arc;

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::nilhecke::NilHecke;
use nhlab::render;

fn main() -> nhlab::error::Result<()> {
    for (name, spec) in [("S2", SystemSpec::s2()), ("S3", SystemSpec::gl(3)), ("B2", SystemSpec::dihedral(4))] {
        let nh = NilHecke::new(Arc::new(CoxeterSystem::build(&spec)?));
        let e = nh.e_triv()?;
        println!("{name}: forms agree {}, idempotent {}", e.forms_agree, e.idempotent);
        println!("  {}", render::nil_hecke(nh.system(), &e.demazure_form));
    }
    Ok(())
}
