//! The twisted group algebra over the localized polynomial ring as an
//! independent oracle for nil Hecke computations.

use std::sync::Arc;

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::expr::parse_element;
use nhlab::hopf::Hopf;
use nhlab::nilhecke::NilHecke;
use nhlab::qstarw::QStarW;
use nhlab::render;

fn main() -> nhlab::error::Result<()> {
    let sys = Arc::new(CoxeterSystem::build(&SystemSpec::dihedral(5))?);
    let nh = Arc::new(NilHecke::new(sys.clone()));
    let hopf = Hopf::new(nh.clone());
    let q = QStarW::new(sys.clone());

    let d = parse_element(&nh, "d[s]")?;
    println!("d[s] embeds as {}", render::oracle_element(&sys, &q.embed(&d)?));

    let a = parse_element(&nh, "a*d[s]*d[t] + 1")?;
    let b = parse_element(&nh, "d[t] - b^2")?;
    let product = q.embed(&nh.mul(&a, &b)?)?;
    println!("embedding is multiplicative: {}", product == q.mul(&q.embed(&a)?, &q.embed(&b)?)?);

    let braid_left = parse_element(&nh, "d[s]*d[t]*d[s]*d[t]*d[s]")?;
    let braid_right = parse_element(&nh, "d[t]*d[s]*d[t]*d[s]*d[t]")?;
    println!("braid relation through the oracle: {}", q.oracle_equal(&braid_left, &braid_right)?);

    let x = q.embed(&a)?;
    println!("delta agrees with the oracle: {}", q.embed_blue(&hopf.delta(&a)?)? == q.delta(&x));
    println!("basis change recovers the element: {}", q.to_nil_hecke(&nh, &x)?.as_ref() == Some(&a));
    Ok(())
}
