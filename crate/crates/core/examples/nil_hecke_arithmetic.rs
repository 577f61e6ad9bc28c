//! Normal forms in the nil Hecke algebra of S3.
//!
//! Elements are written `sum f_w d_w` with polynomial coefficients on the
//! left; the parser accepts `d[i]` for divided differences and `w[i]` for
//! group generators.

use std::sync::Arc;

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::expr::{parse_element, parse_polynomial};
use nhlab::nilhecke::NilHecke;
use nhlab::render;

fn main() -> nhlab::error::Result<()> {
    let nh = NilHecke::new(Arc::new(CoxeterSystem::build(&SystemSpec::gl(3))?));
    let sys = nh.system();
    for src in ["d[1] * x1", "d[1] * d[1]", "d[1]*d[2]*d[1] - d[2]*d[1]*d[2]", "w[1] * x2 * w[1]", "w[1] * w[2] * w[1]"] {
        let h = parse_element(&nh, src)?;
        println!("{src:<34} = {}", render::nil_hecke(sys, &h));
    }

    let a = parse_element(&nh, "x1*d[1] + d[2]")?;
    let b = parse_element(&nh, "d[1] - x3")?;
    println!("({}) * ({}) = {}", render::nil_hecke(sys, &a), render::nil_hecke(sys, &b), render::nil_hecke(sys, &nh.mul(&a, &b)?));

    let f = parse_polynomial(&nh, "x1^2*x2")?;
    println!("acting on {}: {}", render::polynomial(sys, &f), render::polynomial(sys, &nh.act(&a, &f)?));
    Ok(())
}
