//! Verification suites with deterministic, line-oriented reports.
//!
//! Each check yields one [`Record`]. Samples are drawn up front from a
//! seeded generator and evaluated in parallel; records are collected in
//! sample order so reports are byte-identical across runs.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coxeter::{CoxeterSystem, Expression, SystemSpec, Word};
use crate::error::{Error, Result};
use crate::faithfulness::operator_rank;
use crate::gallery::{endo, matrix, weyl};
use crate::hopf::Hopf;
use crate::nilhecke::{NhElement, NilHecke};
use crate::qstarw::QStarW;
use crate::render;
use crate::sample::{SampleParams, Sampler};
use crate::scalar::Scalar;
use crate::tensor::BlueTensor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub suite: &'static str,
    pub case: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Record {
    fn new(suite: &'static str, case: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Self {
        Record { suite, case: case.into(), pass, witness: (!pass).then(witness) }
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.suite, self.case, if self.pass { "PASS" } else { "FAIL" })?;
        if let Some(w) = &self.witness {
            write!(f, "\t{w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn summary(&self) -> String {
        format!("# {} checks, {} passed, {} failed", self.records.len(), self.passed(), self.failed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        write!(f, "{}", self.summary())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Hopf,
    NilHecke,
    Oracle,
    Basis,
    Mixed,
    AntipodeObstruction,
    Etriv,
    Faithfulness,
    Gallery,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Hopf,
        Suite::NilHecke,
        Suite::Oracle,
        Suite::Basis,
        Suite::Mixed,
        Suite::AntipodeObstruction,
        Suite::Etriv,
        Suite::Faithfulness,
        Suite::Gallery,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::NilHecke => "nilhecke",
            Suite::Oracle => "oracle",
            Suite::Basis => "basis",
            Suite::Mixed => "mixed",
            Suite::AntipodeObstruction => "antipode-obstruction",
            Suite::Etriv => "etriv",
            Suite::Faithfulness => "faithfulness",
            Suite::Gallery => "gallery",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// Options shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub sampling: SampleParams,
    /// Truncation degree; faithfulness defaults to 4 and the endomorphism
    /// comparison to 6.
    pub trunc: Option<u32>,
    /// Longest word in the basis suite; defaults to 6 for rank two and 4
    /// otherwise.
    pub max_len: Option<usize>,
    /// Check Takeuchi membership of factors before multiplying tensors.
    pub checked: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { sampling: SampleParams::default(), trunc: None, max_len: None, checked: true }
    }
}

/// Runs one suite on the given algebra.
pub fn run(hopf: &Hopf, suite: Suite, opts: &Options) -> Result<Report> {
    match suite {
        Suite::Hopf => hopf_axioms(hopf, opts),
        Suite::NilHecke => nil_hecke(hopf.algebra(), opts),
        Suite::Oracle => oracle(hopf, opts),
        Suite::Basis => basis(hopf.algebra(), opts),
        Suite::Mixed => mixed(hopf),
        Suite::AntipodeObstruction => antipode_obstruction(hopf),
        Suite::Etriv => etriv(hopf.algebra()),
        Suite::Faithfulness => faithfulness(hopf.algebra(), opts),
        Suite::Gallery => gallery(opts),
    }
}

fn par_records<T: Sync>(items: &[T], f: impl Fn(usize, &T) -> Result<Vec<Record>> + Sync) -> Result<Report> {
    let chunks: Vec<Result<Vec<Record>>> = items.par_iter().enumerate().map(|(i, x)| f(i, x)).collect();
    let mut records = Vec::new();
    for c in chunks {
        records.extend(c?);
    }
    Ok(Report { records })
}

fn show(nh: &NilHecke, h: &NhElement) -> String {
    render::nil_hecke(nh.system(), h)
}

/// All reduced words of `w`, built from left descents.
pub fn reduced_words(sys: &CoxeterSystem, w: &Word) -> Vec<Expression> {
    if w.is_empty() {
        return vec![Expression(Vec::new())];
    }
    let mut out = Vec::new();
    for s in 0..sys.rank() {
        if sys.is_left_descent(s, w) {
            let (rest, _) = sys.left_mul(s, w);
            for mut e in reduced_words(sys, &rest) {
                e.0.insert(0, s);
                out.push(e);
            }
        }
    }
    out
}

pub fn hopf_axioms(hopf: &Hopf, opts: &Options) -> Result<Report> {
    const SUITE: &str = "hopf";
    let nh = &**hopf.algebra();
    let n = opts.sampling.samples;
    let samples = Sampler::new(nh, opts.sampling, 1)?.elements(n);
    let partners = Sampler::new(nh, opts.sampling, 2)?.elements(n);
    let checked = opts.checked;
    let items: Vec<_> = samples.into_iter().zip(partners).collect();
    let mut report = par_records(&items, |i, (h, g)| {
        let delta = hopf.delta(h)?;
        let (left, right) = hopf.coassociativity_sides(h)?;
        let product = BlueTensor::mul(&delta, nh, &hopf.delta(g)?, checked)?;
        let red = hopf.red_map(h)?;
        let gal = hopf.galois(&red.mul_slot2_right(nh, g)?)?;
        let witness = || show(nh, h);
        Ok(vec![
            Record::new(SUITE, format!("coassociativity/{i}"), left == right, witness),
            Record::new(SUITE, format!("counit-left/{i}"), delta.counit_first(nh)? == *h, witness),
            Record::new(SUITE, format!("counit-right/{i}"), delta.counit_second(nh)? == *h, witness),
            Record::new(SUITE, format!("delta-morphism/{i}"), hopf.delta(&nh.mul(h, g)?)? == product, || {
                format!("{} ; {}", show(nh, h), show(nh, g))
            }),
            Record::new(SUITE, format!("takeuchi-blue/{i}"), delta.is_takeuchi(nh)?, witness),
            Record::new(SUITE, format!("takeuchi-red/{i}"), red.is_takeuchi(nh)?, witness),
            Record::new(SUITE, format!("cocommutative/{i}"), delta.swap() == delta, witness),
            Record::new(SUITE, format!("galois-inversion/{i}"), gal == BlueTensor::embed(nh, h, g)?, || {
                format!("{} ; {}", show(nh, h), show(nh, g))
            }),
        ])
    })?;

    let sys = nh.system();
    let short = sys.enumerate(Some(4))?;
    let independence = par_records(&short, |_, w| {
        let words = reduced_words(sys, w);
        let reference = hopf.delta_basis(w);
        let mut agree = true;
        for e in &words {
            agree &= hopf.delta_along(e)? == reference;
        }
        Ok(vec![Record::new(SUITE, format!("reduced-word-independence/{}", sys.word_name(w)), agree, || {
            format!("{} reduced words", words.len())
        })])
    })?;
    report.extend(independence);
    Ok(report)
}

pub fn nil_hecke(nh: &NilHecke, opts: &Options) -> Result<Report> {
    const SUITE: &str = "nilhecke";
    let n = opts.sampling.samples;
    let mut sampler = Sampler::new(nh, opts.sampling, 3)?;
    let triples: Vec<_> = (0..n)
        .map(|_| (sampler.element(), sampler.element(), sampler.element(), sampler.polynomial(), sampler.polynomial()))
        .collect();
    let sys = nh.system();
    par_records(&triples, |i, (a, b, c, f, g)| {
        let ab = nh.mul(a, b)?;
        let left = nh.mul(&ab, c)?;
        let right = nh.mul(a, &nh.mul(b, c)?)?;
        let rep = nh.act(&ab, f)? == nh.act(a, &nh.act(b, f)?)?;
        let anti = nh.anti_involution(&ab) == nh.mul(&nh.anti_involution(b), &nh.anti_involution(a))?;
        let s = i % sys.rank();
        let fg = f * g;
        let leibniz =
            sys.demazure(s, &fg) == &(&sys.demazure(s, f) * g) + &(&sys.reflect(s, f) * &sys.demazure(s, g));
        let square = sys.demazure(s, &sys.demazure(s, f)).is_zero();
        let witness = || show(nh, a);
        Ok(vec![
            Record::new(SUITE, format!("associativity/{i}"), left == right, witness),
            Record::new(SUITE, format!("representation/{i}"), rep, witness),
            Record::new(SUITE, format!("anti-involution/{i}"), anti, witness),
            Record::new(SUITE, format!("leibniz/{i}"), leibniz, || render::polynomial(sys, f)),
            Record::new(SUITE, format!("demazure-square/{i}"), square, || render::polynomial(sys, f)),
        ])
    })
}

pub fn oracle(hopf: &Hopf, opts: &Options) -> Result<Report> {
    const SUITE: &str = "oracle";
    let nh = &**hopf.algebra();
    let q = QStarW::new(nh.system().clone());
    let n = opts.sampling.samples;
    let pairs = Sampler::new(nh, opts.sampling, 4)?.pairs(4 * n);
    let mut report = par_records(&pairs, |i, (a, b)| {
        let lhs = q.embed(&nh.mul(a, b)?)?;
        let rhs = q.mul(&q.embed(a)?, &q.embed(b)?)?;
        Ok(vec![Record::new(SUITE, format!("embed-multiplicative/{i}"), lhs == rhs, || {
            format!("{} ; {}", show(nh, a), show(nh, b))
        })])
    })?;
    let singles = Sampler::new(nh, opts.sampling, 5)?.elements(n);
    report.extend(par_records(&singles, |i, h| {
        let x = q.embed(h)?;
        let delta = q.embed_blue(&hopf.delta(h)?)? == q.delta(&x);
        let counit = q.epsilon(&x).as_polynomial() == Some(&nh.counit(h));
        let involution = q.antipode(&q.antipode(&x)) == x;
        let back = q.to_nil_hecke(nh, &x)?.as_ref() == Some(h);
        let witness = || show(nh, h);
        Ok(vec![
            Record::new(SUITE, format!("delta-agrees/{i}"), delta, witness),
            Record::new(SUITE, format!("counit-agrees/{i}"), counit, witness),
            Record::new(SUITE, format!("antipode-involution/{i}"), involution, witness),
            Record::new(SUITE, format!("basis-change/{i}"), back, witness),
        ])
    })?);
    Ok(report)
}

fn all_words(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..rank).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn basis(nh: &NilHecke, opts: &Options) -> Result<Report> {
    const SUITE: &str = "basis";
    let sys = nh.system();
    let max_len = opts.max_len.unwrap_or(if sys.rank() <= 2 && sys.gl_preset().is_none() { 6 } else { 4 });
    let q = QStarW::new(sys.clone());
    let words = all_words(sys.rank(), max_len);
    let rows = words
        .par_iter()
        .map(|letters| {
            let e = Expression(letters.clone());
            let factors: Vec<_> = letters.iter().map(|&s| nh.d(s)).collect();
            let product = nh.product(&factors)?;
            let reduced = sys.is_reduced(&e)?;
            let canonical = sys.canonical_word(&e)?;
            let mut image = q.scalar(crate::ratfunc::RationalFunction::one(nh.nvars()));
            for &s in letters {
                image = q.mul(&image, &q.embed_d(s))?;
            }
            let oracle = image == q.embed(&product)?;
            Ok((letters.clone(), reduced, canonical, product, oracle))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::new();
    let name = |l: &[usize]| {
        if l.is_empty() {
            "1".to_string()
        } else {
            l.iter().map(|&s| sys.generator_names()[s].clone()).collect::<Vec<_>>().join(".")
        }
    };
    for (letters, reduced, canonical, product, oracle) in &rows {
        let expected = if *reduced { nh.d_word(canonical) } else { nh.zero() };
        records.push(Record::new(SUITE, format!("nonzero-iff-reduced/{}", name(letters)), *product == expected, || {
            show(nh, product)
        }));
        records.push(Record::new(SUITE, format!("oracle/{}", name(letters)), *oracle, || show(nh, product)));
    }
    let reduced: Vec<_> = rows.iter().filter(|r| r.1).collect();
    let mut collisions = 0usize;
    let mut separations = 0usize;
    for (i, a) in reduced.iter().enumerate() {
        for b in &reduced[i + 1..] {
            let same_form = a.3 == b.3;
            let same_element = a.2 == b.2;
            if same_form != same_element {
                if same_form {
                    collisions += 1;
                } else {
                    separations += 1;
                }
            }
        }
    }
    records.push(Record::new(
        SUITE,
        format!("normal-form-iff-element/{} reduced words", reduced.len()),
        collisions == 0 && separations == 0,
        || format!("{collisions} collisions, {separations} split elements"),
    ));
    Ok(Report { records })
}

pub fn mixed(hopf: &Hopf) -> Result<Report> {
    const SUITE: &str = "mixed";
    let sys = hopf.algebra().system();
    let mut records = Vec::new();
    for s in 0..sys.rank() {
        for t in s + 1..sys.rank() {
            if sys.order(s, t).finite().is_none() {
                continue;
            }
            for r in hopf.mixed_relations(s, t)? {
                let case = format!("{}/{}", render::relation_name(sys, &r.w), pair_name(sys, s, t));
                let text = render::relation(sys, &r);
                records.push(Record::new(SUITE, case, r.equal, || text));
            }
        }
    }
    Ok(Report { records })
}

fn pair_name(sys: &CoxeterSystem, s: usize, t: usize) -> String {
    format!("{},{}", sys.generator_names()[s], sys.generator_names()[t])
}

pub fn antipode_obstruction(hopf: &Hopf) -> Result<Report> {
    const SUITE: &str = "antipode-obstruction";
    let nh = &**hopf.algebra();
    let sys = nh.system();
    let r = hopf.antipode_obstruction()?;
    let red = render::red_tensor(nh, &r.red_of_s)?;
    let equation = format!(
        "{} = {}*p",
        render::polynomial(sys, &r.equation_target),
        render::polynomial(sys, &r.equation_factor)
    );
    let records = vec![
        Record::new(SUITE, format!("red(s) = {red}"), r.red_is_s_tensor_s, || red.clone()),
        Record::new(SUITE, format!("forced S(s) = {}", show(nh, &r.forced_antipode_of_s)), r.forced_equals_s, || {
            show(nh, &r.forced_antipode_of_s)
        }),
        Record::new(SUITE, "forced value consistent on all slots", r.forced_consistent, String::new),
        Record::new(SUITE, "factor is invariant", r.factor_invariant, String::new),
        Record::new(SUITE, format!("{equation} has no polynomial solution"), r.unsolvable && r.degree_certificate, || {
            equation.clone()
        }),
        Record::new(
            SUITE,
            format!("oracle antipode of d[s] = {} leaves the algebra", render::oracle_element(sys, &r.qw_antipode_of_d)),
            !r.qw_antipode_in_nh,
            String::new,
        ),
    ];
    Ok(Report { records })
}

pub fn etriv(nh: &NilHecke) -> Result<Report> {
    const SUITE: &str = "etriv";
    let e = nh.e_triv()?;
    let avg = show(nh, &e.average);
    Ok(Report {
        records: vec![
            Record::new(SUITE, "forms-agree", e.forms_agree, || {
                format!("{avg} vs {}", show(nh, &e.demazure_form))
            }),
            Record::new(SUITE, "idempotent", e.idempotent, || avg.clone()),
        ],
    })
}

pub fn faithfulness(nh: &NilHecke, opts: &Options) -> Result<Report> {
    let d = opts.trunc.unwrap_or(4);
    let r = operator_rank(nh, d, d)?;
    Ok(Report {
        records: vec![Record::new(
            "faithfulness",
            format!("rank {} of {} operators, degree <= {d} on R_<={d}", r.rank, r.operators),
            r.full_rank(),
            || format!("deficit {}", r.operators - r.rank),
        )],
    })
}

fn random_weyl(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> weyl::WeylElement {
    let pool = weyl::monomials(n, max_deg);
    let mut out = weyl::WeylElement::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let m = &pool[rng.gen_range(0..pool.len())];
        out = out.add(&m.scale(&Scalar::from_int(rng.gen_range(1..=3))));
    }
    out
}

pub fn gallery(opts: &Options) -> Result<Report> {
    let mut records = Vec::new();

    for n in 2..=4 {
        let units = matrix::units(n);
        let mut ok = [true; 8];
        for h in &units {
            let d = matrix::delta(h);
            let (l, r) = matrix::coassociativity(h);
            ok[0] &= l == r;
            ok[1] &= matrix::counit_contract(&d, true) == *h && matrix::counit_contract(&d, false) == *h;
            ok[2] &= matrix::is_takeuchi_blue(&d) && matrix::is_takeuchi_red(&matrix::red(h));
            ok[3] &= matrix::galois(&matrix::red(h)) == matrix::right_one(h);
            ok[4] &= matrix::id_transpose(&d) == matrix::red(h);
            for g in &units {
                let hg = h.mul(g);
                ok[5] &= matrix::delta(&hg) == matrix::blue_mul(&d, &matrix::delta(g));
                ok[6] &= matrix::red(&hg) == matrix::red_mul_op(&matrix::red(h), &matrix::red(g));
                ok[7] &= hg.transpose() == g.transpose().mul(&h.transpose());
            }
        }
        let basis_vec = |k: usize| (0..n).map(|i| Scalar::from_int((i == k) as i64)).collect::<Vec<_>>();
        let rho = units.iter().all(|h| {
            (0..n).all(|k| {
                let image = h.rho_epsilon(&basis_vec(k));
                (0..n).all(|i| image[i] == *h.get(i, k))
            })
        });
        let names = [
            "coassociativity",
            "counit",
            "takeuchi",
            "galois-red",
            "red-is-id-transpose-delta",
            "delta-morphism",
            "red-morphism",
            "transpose-anti",
        ];
        for (name, pass) in names.iter().zip(ok) {
            records.push(Record::new("gallery", format!("matrix/n={n}/{name}"), pass, String::new));
        }
        records.push(Record::new("gallery", format!("matrix/n={n}/rho-epsilon-iso"), rho, String::new));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.sampling.seed);
    for n in 1..=2 {
        let monos = weyl::monomials(n, 4);
        let mut blue = true;
        let mut red = true;
        let mut antipode = true;
        let mut cocomm = true;
        for h in &monos {
            let d = weyl::delta(h);
            blue &= d.is_takeuchi();
            red &= weyl::red(h).is_takeuchi();
            antipode &= weyl::red(h) == d.id_antipode();
            cocomm &= d.swap() == d;
        }
        let morphism = (0..opts.sampling.samples).all(|_| {
            let a = random_weyl(&mut rng, n, opts.sampling.max_degree);
            let b = random_weyl(&mut rng, n, opts.sampling.max_degree);
            weyl::delta(&a.mul(&b)) == weyl::delta(&a).mul(&weyl::delta(&b))
        });
        let tag = format!("weyl/n={n}");
        records.push(Record::new("gallery", format!("{tag}/takeuchi-blue"), blue, String::new));
        records.push(Record::new("gallery", format!("{tag}/takeuchi-red"), red, String::new));
        records.push(Record::new("gallery", format!("{tag}/red-is-id-antipode-delta"), antipode, String::new));
        records.push(Record::new("gallery", format!("{tag}/cocommutative"), cocomm, String::new));
        records.push(Record::new("gallery", format!("{tag}/delta-morphism"), morphism, String::new));
    }

    let sys = Arc::new(CoxeterSystem::build(&SystemSpec::s2())?);
    let nh = Arc::new(NilHecke::new(sys));
    let hopf = Hopf::new(nh.clone());
    let extra = Sampler::new(&nh, opts.sampling, 6)?.elements(opts.sampling.samples.min(10));
    let trunc = opts.trunc.unwrap_or(6);
    let r = endo::compare(&hopf, &extra, trunc)?;
    for c in &r.cases {
        records.push(Record::new(
            "gallery",
            format!("endo/{}/R_<={trunc}", c.label),
            c.agree && c.decomposes,
            || format!("{} pairs compared", c.pairs),
        ));
    }
    Ok(Report { records })
}

/// Rank-two dihedral system used by `verify mixed --m`.
pub fn dihedral(m: u32) -> Result<Hopf> {
    let sys = Arc::new(CoxeterSystem::build(&SystemSpec::dihedral(m))?);
    Ok(Hopf::new(Arc::new(NilHecke::new(sys))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf(spec: SystemSpec) -> Hopf {
        Hopf::new(Arc::new(NilHecke::new(Arc::new(CoxeterSystem::build(&spec).unwrap()))))
    }

    fn small() -> Options {
        Options { sampling: SampleParams { samples: 5, ..SampleParams::default() }, ..Options::default() }
    }

    #[test]
    fn suites_pass_on_rank_one() {
        let h = hopf(SystemSpec::s2());
        for suite in Suite::ALL {
            let r = run(&h, suite, &small()).unwrap();
            assert!(r.all_pass(), "{suite:?}\n{r}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let h = hopf(SystemSpec::dihedral(3));
        let a = run(&h, Suite::Hopf, &small()).unwrap().to_string();
        let b = run(&h, Suite::Hopf, &small()).unwrap().to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn mixed_counts() {
        let r = mixed(&dihedral(5).unwrap()).unwrap();
        assert_eq!(r.records.len(), 9);
        assert!(r.all_pass());
    }

    #[test]
    fn reduced_words_of_longest() {
        let h = hopf(SystemSpec::dihedral(4));
        let sys = h.algebra().system();
        assert_eq!(reduced_words(sys, &sys.longest_element().unwrap()).len(), 2);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
