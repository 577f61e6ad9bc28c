//! Divided difference operators and Schubert polynomials of S3.
//!
//! Starting from the staircase monomial and applying divided differences
//! along reduced words gives the Schubert polynomials.

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::poly::{Monomial, Polynomial};
use nhlab::render;
use nhlab::scalar::Scalar;

fn main() -> nhlab::error::Result<()> {
    let sys = CoxeterSystem::build(&SystemSpec::gl(3))?;
    let staircase = Polynomial::monomial(3, Monomial::from_exponents(vec![2, 1, 0]), Scalar::from_int(1));
    let longest = sys.longest_element()?;
    for w in sys.enumerate(None)? {
        // S_w = d_{w^-1 w_o} applied to the staircase.
        let path = sys.multiply(&sys.inverse(&w), &longest);
        let schubert = path.letters().iter().rev().fold(staircase.clone(), |f, &s| sys.demazure(s, &f));
        let label = if w.is_empty() { "id".to_string() } else { sys.word_name(&w) };
        println!("S_{label:<6} = {}", render::polynomial(&sys, &schubert));
    }

    let f = &sys.ring().var(0) * &sys.ring().var(0);
    let g = &sys.ring().var(0) + &sys.ring().var(2);
    let lhs = sys.demazure(0, &(&f * &g));
    let rhs = &(&sys.demazure(0, &f) * &g) + &(&sys.reflect(0, &f) * &sys.demazure(0, &g));
    println!("twisted Leibniz rule holds: {}", lhs == rhs);
    println!("d_1 d_1 kills x1^2: {}", sys.demazure(0, &sys.demazure(0, &f)).is_zero());
    Ok(())
}
