//! Builds a few Coxeter systems and walks their elements.
//!
//! Run with `cargo run --example coxeter_basics`.

use nhlab::coxeter::{CoxeterSystem, Expression, SystemSpec};
use nhlab::render;
use nhlab::verify::reduced_words;

fn main() -> nhlab::error::Result<()> {
    for (name, spec) in [("S3", SystemSpec::gl(3)), ("B2", SystemSpec::dihedral(4)), ("I2(5)", SystemSpec::dihedral(5))] {
        let sys = CoxeterSystem::build(&spec)?;
        let elements = sys.enumerate(None)?;
        let longest = sys.longest_element()?;
        println!("{name}: {} elements, longest element {}", elements.len(), sys.word_name(&longest));
        println!("  reduced words of the longest element: {}", reduced_words(&sys, &longest).len());
        for root in sys.positive_roots()? {
            println!("  positive root {}", render::polynomial(&sys, &sys.root_polynomial(&root)));
        }
    }

    let s3 = CoxeterSystem::build(&SystemSpec::gl(3))?;
    for letters in [vec![0, 1, 0], vec![1, 0, 1], vec![0, 0, 1]] {
        let e = Expression(letters.clone());
        let w = s3.canonical_word(&e)?;
        println!("{letters:?}: reduced = {}, canonical word {}", s3.is_reduced(&e)?, s3.word_name(&w));
    }
    Ok(())
}
