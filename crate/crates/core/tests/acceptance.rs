//! The eight acceptance criteria, run in order with wall-clock bounds.
//!
//! Runs as a single test so the timings are not skewed by other tests
//! sharing the machine. Prints one line per criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use nhlab::coxeter::{CoxeterSystem, SystemSpec};
use nhlab::hopf::Hopf;
use nhlab::nilhecke::NilHecke;
use nhlab::render;
use nhlab::sample::SampleParams;
use nhlab::verify::{self, Options, Report, Suite};

fn hopf(spec: SystemSpec) -> Hopf {
    Hopf::new(Arc::new(NilHecke::new(Arc::new(CoxeterSystem::build(&spec).unwrap()))))
}

fn standard_systems() -> Vec<(&'static str, SystemSpec)> {
    vec![
        ("S2", SystemSpec::s2()),
        ("S3", SystemSpec::gl(3)),
        ("B2", SystemSpec::dihedral(4)),
        ("I2(5)", SystemSpec::dihedral(5)),
    ]
}

fn options() -> Options {
    Options {
        sampling: SampleParams { seed: 1, samples: 50, max_degree: 3, max_support: 4 },
        ..Options::default()
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_reports(reports: Vec<(String, Report)>) -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for (label, r) in reports {
        pass &= r.all_pass();
        detail.push(format!("{label} {}/{}", r.passed(), r.records.len()));
        for rec in r.records.iter().filter(|rec| !rec.pass) {
            eprintln!("  failed: {rec}");
        }
    }
    Outcome { pass, detail: detail.join(", ") }
}

fn mixed_relations() -> Outcome {
    let expected = [
        (3, vec!["R_s: s∂_t∂_s + ∂_s∂_t s = ∂_t s ∂_t", "R_st: st∂_s = ∂_t st"]),
        (
            4,
            vec![
                "R_s: s∂_t∂_s∂_t + ∂_s∂_t s ∂_t = ∂_t s ∂_t∂_s + ∂_t∂_s∂_t s",
                "R_st: st∂_s∂_t + s∂_t∂_s t + ∂_s∂_t st = ∂_t st ∂_s",
                "R_sts: sts∂_t = ∂_t sts",
            ],
        ),
    ];
    let mut pass = true;
    let mut counts = Vec::new();
    for m in 2..=6u32 {
        let h = hopf(SystemSpec::dihedral(m));
        let sys = h.algebra().system().clone();
        let rels = h.mixed_relations(0, 1).unwrap();
        pass &= rels.len() == 2 * m as usize - 1 && rels.iter().all(|r| r.equal);
        counts.push(rels.len().to_string());
        let lines: Vec<String> = rels
            .iter()
            .map(|r| format!("{}: {}", render::relation_name(&sys, &r.w), render::relation(&sys, r)))
            .collect();
        for (_, wanted) in expected.iter().filter(|(k, _)| *k == m) {
            for line in wanted {
                if !lines.iter().any(|l| l == line) {
                    eprintln!("  missing for m = {m}: {line}");
                    pass = false;
                }
            }
        }
    }
    Outcome { pass, detail: format!("relations per m = 2..6: {}", counts.join("/")) }
}

fn suite_on(systems: Vec<(&'static str, SystemSpec)>, suite: Suite, opts: &Options) -> Outcome {
    from_reports(
        systems
            .into_iter()
            .map(|(name, spec)| (name.to_string(), verify::run(&hopf(spec), suite, opts).unwrap()))
            .collect(),
    )
}

fn basis_evidence() -> Outcome {
    let systems = vec![
        ("I2(2)", SystemSpec::dihedral(2)),
        ("I2(3)", SystemSpec::dihedral(3)),
        ("I2(4)", SystemSpec::dihedral(4)),
        ("I2(5)", SystemSpec::dihedral(5)),
        ("I2(6)", SystemSpec::dihedral(6)),
        ("I2(inf)", SystemSpec::dihedral(0)),
    ];
    let rank_two = suite_on(systems, Suite::Basis, &Options { max_len: Some(6), ..options() });
    let s3 = suite_on(vec![("S3", SystemSpec::gl(3))], Suite::Basis, &Options { max_len: Some(4), ..options() });
    Outcome { pass: rank_two.pass && s3.pass, detail: format!("{}, {}", rank_two.detail, s3.detail) }
}

fn antipode_obstruction() -> Outcome {
    let h = hopf(SystemSpec::s2());
    let report = h.antipode_obstruction().unwrap();
    let suite = verify::antipode_obstruction(&h).unwrap();
    Outcome {
        pass: report.holds() && !report.qw_antipode_in_nh && suite.all_pass(),
        detail: format!("{}/{} statements", suite.passed(), suite.records.len()),
    }
}

fn faithfulness() -> Outcome {
    suite_on(
        vec![("S2", SystemSpec::s2()), ("S3", SystemSpec::gl(3))],
        Suite::Faithfulness,
        &Options { trunc: Some(4), ..options() },
    )
}

#[test]
fn acceptance_criteria() {
    type Criterion = (&'static str, u64, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("mixed dihedral relations", 10, Box::new(mixed_relations)),
        ("Hopf algebroid axioms", 60, Box::new(|| suite_on(standard_systems(), Suite::Hopf, &options()))),
        ("nil Hecke basis", 30, Box::new(basis_evidence)),
        ("oracle agreement", 60, Box::new(|| suite_on(standard_systems(), Suite::Oracle, &options()))),
        (
            "trivial idempotent",
            10,
            Box::new(|| suite_on(standard_systems().into_iter().take(3).collect(), Suite::Etriv, &options())),
        ),
        ("antipode obstruction", 1, Box::new(antipode_obstruction)),
        ("gallery fixtures", 30, Box::new(|| from_reports(vec![("gallery".into(), verify::gallery(&options()).unwrap())]))),
        ("faithfulness", 30, Box::new(faithfulness)),
    ];

    let mut failures = Vec::new();
    for (i, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*bound);
        let ok = outcome.pass && in_time;
        println!(
            "criterion {}: {} {name} ({:.2} s, bound {bound} s; {})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
        if !outcome.pass {
            failures.push(format!("criterion {} ({name}) failed", i + 1));
        }
        if !in_time {
            failures.push(format!("criterion {} ({name}) took {:.2} s, bound {bound} s", i + 1, elapsed.as_secs_f64()));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
