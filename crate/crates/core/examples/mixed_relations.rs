//! Mixed braid relations between group generators and divided differences
//! for dihedral groups of order 4 to 12.

use nhlab::render;
use nhlab::verify::dihedral;

fn main() -> nhlab::error::Result<()> {
    for m in 2..=6 {
        let hopf = dihedral(m)?;
        let sys = hopf.algebra().system();
        println!("m = {m}");
        for r in hopf.mixed_relations(0, 1)? {
            let status = if r.equal { "ok" } else { "FAILS" };
            println!("  {}: {}  [{status}]", render::relation_name(sys, &r.w), render::relation(sys, &r));
        }
    }
    Ok(())
}
