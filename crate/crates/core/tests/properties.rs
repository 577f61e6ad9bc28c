use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use nhlab::coxeter::{CoxeterSystem, Expression, SystemSpec, Word};
use nhlab::expr::parse_element;
use nhlab::hopf::Hopf;
use nhlab::nilhecke::{NhElement, NilHecke};
use nhlab::poly::{Monomial, Polynomial};
use nhlab::qstarw::QStarW;
use nhlab::ratfunc::RationalFunction;
use nhlab::render;
use nhlab::scalar::Scalar;
use nhlab::tensor::BlueTensor;

struct Fixture {
    hopf: Hopf,
    oracle: QStarW,
    words: Vec<Word>,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        [SystemSpec::s2(), SystemSpec::gl(3), SystemSpec::dihedral(4), SystemSpec::dihedral(5)]
            .iter()
            .map(|spec| {
                let sys = Arc::new(CoxeterSystem::build(spec).unwrap());
                let words = sys.enumerate(None).unwrap();
                Fixture { hopf: Hopf::new(Arc::new(NilHecke::new(sys.clone()))), oracle: QStarW::new(sys), words }
            })
            .collect()
    })
}

fn algebra(sys: usize) -> &'static NilHecke {
    fixtures()[sys].hopf.algebra()
}

type RawTerm = (usize, [u32; 3], i64, i64);

fn raw_terms(max: usize) -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec((any::<usize>(), [0u32..=2, 0u32..=2, 0u32..=2], -3i64..=3, -1i64..=1), 1..=max)
}

fn scalar_of(sys: usize, a: i64, b: i64) -> Scalar {
    // Only the golden dihedral system has sqrt5 in its field.
    if sys == 3 {
        &Scalar::from_int(a) + &(&Scalar::from_int(b) * &Scalar::sqrt5())
    } else {
        Scalar::from_int(a)
    }
}

fn polynomial(sys: usize, terms: &[RawTerm]) -> Polynomial {
    let n = algebra(sys).nvars();
    let mut out = Polynomial::zero(n);
    for (_, exps, a, b) in terms {
        let m = Monomial::from_exponents(exps[..n].to_vec());
        out = &out + &Polynomial::monomial(n, m, scalar_of(sys, *a, *b));
    }
    out
}

fn element(sys: usize, terms: &[RawTerm]) -> NhElement {
    let f = &fixtures()[sys];
    let n = algebra(sys).nvars();
    let pieces = terms.iter().map(|(w, exps, a, b)| {
        let m = Monomial::from_exponents(exps[..n].to_vec());
        (f.words[w % f.words.len()].clone(), Polynomial::monomial(n, m, scalar_of(sys, *a, *b)))
    });
    algebra(sys).from_terms(pieces).unwrap()
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=12, -50i64..=50, 1i64..=12)
        .prop_map(|(a, b, c, d)| &Scalar::from_ratio(a, b) + &(&Scalar::from_ratio(c, d) * &Scalar::sqrt5()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if let Some(inv) = x.inverse() {
            prop_assert_eq!(&x * &inv, Scalar::from_int(1));
        }
    }

    #[test]
    fn scalar_order_matches_approximation(x in scalar(), y in scalar()) {
        let gap = x.to_f64() - y.to_f64();
        if gap.abs() > 1e-9 {
            prop_assert_eq!(x < y, gap < 0.0);
        }
    }

    #[test]
    fn leibniz_rule(sys in 0usize..4, f in raw_terms(3), g in raw_terms(3), s in 0usize..3) {
        let c = algebra(sys).system();
        let s = s % c.rank();
        let (f, g) = (polynomial(sys, &f), polynomial(sys, &g));
        let lhs = c.demazure(s, &(&f * &g));
        let rhs = &(&c.demazure(s, &f) * &g) + &(&c.reflect(s, &f) * &c.demazure(s, &g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_difference_squares_to_zero(sys in 0usize..4, f in raw_terms(4), s in 0usize..3) {
        let c = algebra(sys).system();
        let s = s % c.rank();
        let f = polynomial(sys, &f);
        prop_assert!(c.demazure(s, &c.demazure(s, &f)).is_zero());
    }

    #[test]
    fn multiplication_is_associative(sys in 0usize..4, a in raw_terms(3), b in raw_terms(3), c in raw_terms(3)) {
        let nh = algebra(sys);
        let (a, b, c) = (element(sys, &a), element(sys, &b), element(sys, &c));
        let left = nh.mul(&nh.mul(&a, &b).unwrap(), &c).unwrap();
        let right = nh.mul(&a, &nh.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn polynomial_representation_is_a_module(sys in 0usize..4, a in raw_terms(3), b in raw_terms(3), f in raw_terms(3)) {
        let nh = algebra(sys);
        let (a, b, f) = (element(sys, &a), element(sys, &b), polynomial(sys, &f));
        let lhs = nh.act(&nh.mul(&a, &b).unwrap(), &f).unwrap();
        let rhs = nh.act(&a, &nh.act(&b, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_of_generators_follow_reducedness(sys in 0usize..4, letters in prop::collection::vec(0usize..3, 0..=6)) {
        let nh = algebra(sys);
        let c = nh.system();
        let e = Expression(letters.into_iter().map(|s| s % c.rank()).collect());
        let factors: Vec<_> = e.0.iter().map(|&s| nh.d(s)).collect();
        let product = nh.product(&factors).unwrap();
        if c.is_reduced(&e).unwrap() {
            prop_assert_eq!(product, nh.d_word(&c.canonical_word(&e).unwrap()));
        } else {
            prop_assert!(product.is_zero());
        }
    }

    #[test]
    fn render_then_parse_round_trips(sys in 0usize..4, a in raw_terms(4)) {
        let nh = algebra(sys);
        let h = element(sys, &a);
        let text = render::nil_hecke(nh.system(), &h);
        prop_assert_eq!(parse_element(nh, &text).unwrap(), h, "{}", text);
    }

    #[test]
    fn sums_match_pairwise_addition(sys in 1usize..4, parts in prop::collection::vec((raw_terms(2), 0usize..3), 1..=4)) {
        let c = algebra(sys).system();
        let n = c.nvars();
        let fractions: Vec<RationalFunction> = parts
            .iter()
            .map(|(t, s)| RationalFunction::new(polynomial(sys, t), c.simple_root(s % c.rank()).clone()).unwrap())
            .collect();
        let pairwise = fractions.iter().fold(RationalFunction::zero(n), |acc, f| &acc + f);
        prop_assert_eq!(RationalFunction::sum(n, &fractions), pairwise);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coproduct_is_takeuchi_and_cocommutative(sys in 0usize..4, a in raw_terms(3)) {
        let hopf = &fixtures()[sys].hopf;
        let nh = hopf.algebra();
        let h = element(sys, &a);
        let d = hopf.delta(&h).unwrap();
        prop_assert!(d.is_takeuchi(nh).unwrap());
        prop_assert_eq!(d.swap(), d.clone());
        prop_assert_eq!(d.counit_first(nh).unwrap(), h.clone());
        prop_assert_eq!(d.counit_second(nh).unwrap(), h);
    }

    #[test]
    fn coproduct_is_multiplicative(sys in 0usize..4, a in raw_terms(2), b in raw_terms(2)) {
        let hopf = &fixtures()[sys].hopf;
        let nh = hopf.algebra();
        let (a, b) = (element(sys, &a), element(sys, &b));
        let product = BlueTensor::mul(&hopf.delta(&a).unwrap(), nh, &hopf.delta(&b).unwrap(), true).unwrap();
        prop_assert_eq!(hopf.delta(&nh.mul(&a, &b).unwrap()).unwrap(), product);
    }

    #[test]
    fn red_map_is_takeuchi_and_galois_inverts_it(sys in 0usize..4, a in raw_terms(2), b in raw_terms(2)) {
        let hopf = &fixtures()[sys].hopf;
        let nh = hopf.algebra();
        let (h, g) = (element(sys, &a), element(sys, &b));
        let red = hopf.red_map(&h).unwrap();
        prop_assert!(red.is_takeuchi(nh).unwrap());
        let gal = hopf.galois(&red.mul_slot2_right(nh, &g).unwrap()).unwrap();
        prop_assert_eq!(gal, BlueTensor::embed(nh, &h, &g).unwrap());
    }

    #[test]
    fn oracle_embedding_is_multiplicative(sys in 0usize..4, a in raw_terms(3), b in raw_terms(3)) {
        let f = &fixtures()[sys];
        let nh = f.hopf.algebra();
        let (a, b) = (element(sys, &a), element(sys, &b));
        let lhs = f.oracle.embed(&nh.mul(&a, &b).unwrap()).unwrap();
        let rhs = f.oracle.mul(&f.oracle.embed(&a).unwrap(), &f.oracle.embed(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn oracle_antipode_is_an_involution(sys in 0usize..4, a in raw_terms(3)) {
        let f = &fixtures()[sys];
        let x = f.oracle.embed(&element(sys, &a)).unwrap();
        prop_assert_eq!(f.oracle.antipode(&f.oracle.antipode(&x)), x);
    }

    #[test]
    fn oracle_basis_change_recovers_element(sys in 0usize..4, a in raw_terms(3)) {
        let f = &fixtures()[sys];
        let nh = f.hopf.algebra();
        let h = element(sys, &a);
        let x = f.oracle.embed(&h).unwrap();
        prop_assert_eq!(f.oracle.to_nil_hecke(nh, &x).unwrap(), Some(h));
    }
}
