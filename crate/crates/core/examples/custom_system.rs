//! Loads a Coxeter system from TOML and runs the basis suite on it.
//!
//! Pass a path, or run without arguments to use the bundled B2 file.

use std::path::PathBuf;
use std::sync::Arc;

use nhlab::config::SystemConfig;
use nhlab::hopf::Hopf;
use nhlab::nilhecke::NilHecke;
use nhlab::verify::{self, Options, Suite};

fn main() -> nhlab::error::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| [env!("CARGO_MANIFEST_DIR"), "systems", "b2.toml"].iter().collect());
    let sys = SystemConfig::load(&path)?.build()?;
    println!("{}: rank {}, {} variables", path.display(), sys.rank(), sys.nvars());
    let hopf = Hopf::new(Arc::new(NilHecke::new(Arc::new(sys))));
    let report = verify::run(&hopf, Suite::Basis, &Options { max_len: Some(4), ..Options::default() })?;
    println!("{}", report.summary());
    Ok(())
}
