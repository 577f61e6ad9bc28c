//! Exact rank of the polynomial representation restricted to low degrees.

use std::sync::Arc;

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::faithfulness::operator_rank;
use nhlab::nilhecke::NilHecke;

fn main() -> nhlab::error::Result<()> {
    for (name, spec) in [("S2", SystemSpec::s2()), ("S3", SystemSpec::gl(3))] {
        let nh = NilHecke::new(Arc::new(CoxeterSystem::build(&spec)?));
        for (deg, trunc) in [(4, 4), (0, 2)] {
            let r = operator_rank(&nh, deg, trunc)?;
            println!("{name}: {} operators of degree <= {deg} on R_<={trunc}, rank {}", r.operators, r.rank);
        }
    }
    Ok(())
}
