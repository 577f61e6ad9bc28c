//! Comultiplication, counit, red map and Galois map on B2.

use std::sync::Arc;

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::expr::parse_element;
use nhlab::hopf::Hopf;
use nhlab::nilhecke::NilHecke;
use nhlab::render;
use nhlab::tensor::BlueTensor;

fn main() -> nhlab::error::Result<()> {
    let nh = Arc::new(NilHecke::new(Arc::new(CoxeterSystem::build(&SystemSpec::dihedral(4))?)));
    let hopf = Hopf::new(nh.clone());
    let sys = nh.system();

    for src in ["d[s]", "d[s]*d[t]", "a*d[t] + w[s]"] {
        let h = parse_element(&nh, src)?;
        let delta = hopf.delta(&h)?;
        println!("delta({src}) = {}", render::blue_tensor(&nh, &delta)?);
        println!("  counit = {}", render::polynomial(sys, &hopf.counit(&h)));
        println!("  red    = {}", render::red_tensor(&nh, &hopf.red_map(&h)?)?);
        println!("  Takeuchi: {}, cocommutative: {}", delta.is_takeuchi(&nh)?, delta.swap() == delta);
    }

    let h = parse_element(&nh, "b*d[s]*d[t]")?;
    let g = parse_element(&nh, "d[t] + a")?;
    let image = hopf.galois(&hopf.red_map(&h)?.mul_slot2_right(&nh, &g)?)?;
    println!("galois(red(h) . g) == h (x) g: {}", image == BlueTensor::embed(&nh, &h, &g)?);

    let (left, right) = hopf.coassociativity_sides(&h)?;
    println!("coassociative on h: {} ({} terms)", left == right, left.terms().len());
    Ok(())
}
