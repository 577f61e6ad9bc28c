//! Why the nil Hecke algebra of S2 has no antipode compatible with its red
//! map, and where the candidate from the oracle lands instead.

use std::sync::Arc;

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::hopf::Hopf;
use nhlab::nilhecke::NilHecke;
use nhlab::render;

fn main() -> nhlab::error::Result<()> {
    let nh = Arc::new(NilHecke::new(Arc::new(CoxeterSystem::build(&SystemSpec::s2())?)));
    let hopf = Hopf::new(nh.clone());
    let sys = nh.system();
    let r = hopf.antipode_obstruction()?;
    println!("red(s) = {}", render::red_tensor(&nh, &r.red_of_s)?);
    println!("forced antipode S(s) = {}", render::nil_hecke(sys, &r.forced_antipode_of_s));
    println!(
        "S(d)(1) = p must solve {} = {} * p; solvable: {}",
        render::polynomial(sys, &r.equation_target),
        render::polynomial(sys, &r.equation_factor),
        !r.unsolvable
    );
    println!("oracle antipode of d[s] = {}", render::oracle_element(sys, &r.qw_antipode_of_d));
    println!("  lies in the nil Hecke algebra: {}", r.qw_antipode_in_nh);
    println!("obstruction holds: {}", r.holds());
    Ok(())
}
