use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use nhlab::config::SystemConfig;
use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::error::{Error, Result};
use nhlab::expr::{parse_element, parse_polynomial};
use nhlab::hopf::Hopf;
use nhlab::nilhecke::NilHecke;
use nhlab::render;
use nhlab::sample::SampleParams;
use nhlab::verify::{self, Options, Report, Suite};

/// Exact computations in nil Hecke algebras and their Hopf algebroid structure.
#[derive(Parser)]
#[command(name = "nhlab", version)]
struct Cli {
    /// TOML system configuration.
    #[arg(long, global = true, conflicts_with = "preset")]
    system: Option<PathBuf>,
    /// Built-in system: `s2`, `gl(n)` or `i2(m)` (m = 0 for infinity).
    #[arg(long, global = true)]
    preset: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression.
    Eval { expr: String },
    /// Apply an element to a polynomial.
    Act { expr: String, poly: String },
    /// Comultiplication, in the blue tensor square.
    Delta {
        expr: String,
        /// Print the raw `f d_v (x) d_w` basis expansion.
        #[arg(long)]
        normal_form: bool,
    },
    /// Counit.
    Epsilon { expr: String },
    /// Red (translation) map, in the red tensor square.
    Red {
        expr: String,
        #[arg(long)]
        normal_form: bool,
    },
    /// Mixed dihedral braid relations for a pair of generators (all pairs by default).
    Mixed { s: Option<String>, t: Option<String> },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        /// Run `mixed` on the dihedral system of this order instead.
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        opts: VerifyArgs,
    },
    /// Weyl algebra, matrix algebra and endomorphism fixtures.
    Gallery {
        #[command(flatten)]
        opts: VerifyArgs,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 3)]
    max_deg: u32,
    #[arg(long, default_value_t = 4)]
    max_support: usize,
    #[arg(long)]
    trunc: Option<u32>,
    #[arg(long)]
    max_len: Option<usize>,
    /// Check Takeuchi membership before multiplying tensors (default).
    #[arg(long, overrides_with = "unchecked")]
    checked: bool,
    #[arg(long, overrides_with = "checked")]
    unchecked: bool,
}

impl VerifyArgs {
    fn options(&self) -> Options {
        Options {
            sampling: SampleParams {
                seed: self.seed,
                samples: self.samples,
                max_degree: self.max_deg,
                max_support: self.max_support,
            },
            trunc: self.trunc,
            max_len: self.max_len,
            checked: !self.unchecked,
        }
    }
}

enum Outcome {
    Ok,
    Failed,
}

fn preset(name: &str) -> Result<SystemSpec> {
    let bad = || Error::Config(format!("unknown preset `{name}`"));
    if name == "s2" {
        return Ok(SystemSpec::s2());
    }
    let arg = |prefix: &str| name.strip_prefix(prefix)?.strip_suffix(')')?.parse::<u32>().ok();
    if let Some(n) = arg("gl(") {
        if n < 2 {
            return Err(bad());
        }
        return Ok(SystemSpec::gl(n as usize));
    }
    arg("i2(").map(SystemSpec::dihedral).ok_or_else(bad)
}

fn load(cli: &Cli) -> Result<Hopf> {
    let sys = match (&cli.system, &cli.preset) {
        (Some(path), _) => SystemConfig::load(path)?.build()?,
        (None, Some(name)) => CoxeterSystem::build(&preset(name)?)?,
        (None, None) => CoxeterSystem::build(&SystemSpec::s2())?,
    };
    Ok(Hopf::new(Arc::new(NilHecke::new(Arc::new(sys)))))
}

fn print_report(report: &Report) -> Outcome {
    println!("{report}");
    if report.all_pass() {
        Outcome::Ok
    } else {
        Outcome::Failed
    }
}

fn mixed_table(hopf: &Hopf, s: Option<&str>, t: Option<&str>) -> Result<Outcome> {
    let sys = hopf.algebra().system();
    let pairs = match (s, t) {
        (Some(s), Some(t)) => vec![(sys.generator_index(s)?, sys.generator_index(t)?)],
        (None, None) => (0..sys.rank())
            .flat_map(|s| (s + 1..sys.rank()).map(move |t| (s, t)))
            .filter(|&(s, t)| sys.order(s, t).finite().is_some())
            .collect(),
        _ => return Err(Error::Config("give both generators or neither".into())),
    };
    let mut ok = true;
    for (s, t) in pairs {
        let names = sys.generator_names();
        println!("# pair {},{} (m = {})", names[s], names[t], sys.order(s, t).finite().map_or("inf".into(), |m| m.to_string()));
        for r in hopf.mixed_relations(s, t)? {
            ok &= r.equal;
            println!(
                "{}: {}\t{}",
                render::relation_name(sys, &r.w),
                render::relation(sys, &r),
                if r.equal { "PASS" } else { "FAIL" }
            );
            println!("  lhs = {}", render::nil_hecke(sys, &r.lhs));
            println!("  rhs = {}", render::nil_hecke(sys, &r.rhs));
        }
    }
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    if let Command::Gallery { opts } = &cli.command {
        return Ok(print_report(&verify::gallery(&opts.options())?));
    }
    if let Command::Verify { suite, m: Some(m), opts } = &cli.command {
        if suite != "mixed" {
            return Err(Error::Config("--m only applies to the mixed suite".into()));
        }
        return Ok(print_report(&verify::run(&verify::dihedral(*m)?, Suite::Mixed, &opts.options())?));
    }
    let hopf = load(cli)?;
    let nh = &**hopf.algebra();
    let sys = nh.system();
    match &cli.command {
        Command::Eval { expr } => println!("{}", render::nil_hecke(sys, &parse_element(nh, expr)?)),
        Command::Act { expr, poly } => {
            let h = parse_element(nh, expr)?;
            let f = parse_polynomial(nh, poly)?;
            println!("{}", render::polynomial(sys, &nh.act(&h, &f)?));
        }
        Command::Delta { expr, normal_form } => {
            let t = hopf.delta(&parse_element(nh, expr)?)?;
            println!("{}", render::BLUE_HEADER);
            if *normal_form {
                println!("{}", render::blue_normal_form(sys, &t));
            } else {
                println!("{}", render::blue_tensor(nh, &t)?);
            }
        }
        Command::Epsilon { expr } => println!("{}", render::polynomial(sys, &hopf.counit(&parse_element(nh, expr)?))),
        Command::Red { expr, normal_form } => {
            let t = hopf.red_map(&parse_element(nh, expr)?)?;
            println!("{}", render::RED_HEADER);
            if *normal_form {
                println!("{}", render::red_normal_form(sys, &t));
            } else {
                println!("{}", render::red_tensor(nh, &t)?);
            }
        }
        Command::Mixed { s, t } => return mixed_table(&hopf, s.as_deref(), t.as_deref()),
        Command::Verify { suite, opts, .. } => {
            let opts = opts.options();
            let suites = if suite == "all" {
                Suite::ALL.iter().copied().filter(|s| *s != Suite::AntipodeObstruction || sys.rank() == 1).collect()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            let mut report = Report::default();
            for s in suites {
                report.extend(verify::run(&hopf, s, &opts)?);
            }
            return Ok(print_report(&report));
        }
        Command::Gallery { .. } => unreachable!("handled above"),
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
