//! Hopf algebroid fixtures outside the nil Hecke family: the Weyl algebra,
//! matrix algebras and the endomorphism comparison for S2.

use std::sync::Arc;

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::gallery::{endo, matrix, weyl};
use nhlab::hopf::Hopf;
use nhlab::nilhecke::NilHecke;

fn main() -> nhlab::error::Result<()> {
    let xd = weyl::WeylElement::x(1, 0).mul(&weyl::WeylElement::d(1, 0));
    let delta = weyl::delta(&xd);
    println!("Weyl: delta(x d) is Takeuchi {}, red = (id (x) antipode) delta: {}", delta.is_takeuchi(), weyl::red(&xd) == delta.id_antipode());

    for n in 2..=4 {
        let ok = matrix::units(n).iter().all(|h| {
            let d = matrix::delta(h);
            let (l, r) = matrix::coassociativity(h);
            l == r && matrix::id_transpose(&d) == matrix::red(h) && matrix::galois(&matrix::red(h)) == matrix::right_one(h)
        });
        println!("matrices n = {n}: coassociative, red = (id (x) transpose) delta, Galois inverse: {ok}");
    }

    let hopf = Hopf::new(Arc::new(NilHecke::new(Arc::new(CoxeterSystem::build(&SystemSpec::s2())?))));
    let report = endo::compare(&hopf, &[], 6)?;
    for c in &report.cases {
        println!("endo {}: {} pairs, agree {}", c.label, c.pairs, c.agree);
    }
    let f = &report.frobenius;
    println!("dual basis: 1* torsion {}, a* generates {}", f.one_dual_is_torsion, f.a_dual_generates);
    Ok(())
}
