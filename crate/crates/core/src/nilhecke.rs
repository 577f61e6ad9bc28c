//! The nil Hecke algebra in left normal form `sum f_w d_w`.
//!
//! Elements are plain data tagged with the id of their Coxeter system; all
//! multiplication goes through [`NilHecke`], which owns the system and the
//! commutation caches.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::One;

use crate::coxeter::{CoxeterSystem, Word};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// `sum_w f_w d_w` with nonzero coefficients keyed by canonical words.
#[derive(Clone, PartialEq, Eq)]
pub struct NhElement {
    system: u64,
    nvars: usize,
    terms: BTreeMap<Word, Polynomial>,
}

impl NhElement {
    pub fn system_id(&self) -> u64 {
        self.system
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Word, Polynomial> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Polynomial {
        self.terms.get(w).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of `(monomial, w)` pairs with nonzero coefficient.
    pub fn size(&self) -> usize {
        self.terms.values().map(Polynomial::num_terms).sum()
    }

    /// Term with the longest (then lexicographically largest) word.
    pub fn top_term(&self) -> Option<(&Word, &Polynomial)> {
        self.terms.iter().next_back()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Largest coefficient degree.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Polynomial::degree).max()
    }

    fn same_system(&self, other: &NhElement) -> Result<()> {
        if self.system != other.system {
            return Err(Error::SystemMismatch("nil Hecke elements of different systems".into()));
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, w: &Word, f: &Polynomial) {
        self.insert(w.clone(), f.clone());
    }

    fn insert(&mut self, w: Word, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(g) => {
                *g = &*g + &f;
                if g.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, f);
            }
        }
    }

    pub fn try_add(&self, other: &NhElement) -> Result<NhElement> {
        self.same_system(other)?;
        let mut out = self.clone();
        for (w, f) in &other.terms {
            out.insert(w.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &NhElement) -> Result<NhElement> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> NhElement {
        self.map_coefficients(|f| -f)
    }

    pub fn scale(&self, c: &Scalar) -> NhElement {
        self.map_coefficients(|f| f.scale(c))
    }

    /// `g * self` for a polynomial `g`.
    pub fn mul_poly_left(&self, g: &Polynomial) -> NhElement {
        self.map_coefficients(|f| g * f)
    }

    fn map_coefficients(&self, op: impl Fn(&Polynomial) -> Polynomial) -> NhElement {
        let terms = self
            .terms
            .iter()
            .map(|(w, f)| (w.clone(), op(f)))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        NhElement { system: self.system, nvars: self.nvars, terms }
    }
}

impl fmt::Debug for NhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        let parts: Vec<String> =
            self.terms.iter().map(|(w, p)| format!("({})d{:?}", p.render(&names), w)).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

type Expansion = BTreeMap<Word, Polynomial>;

fn add_into(map: &mut Expansion, w: Word, f: Polynomial) {
    if f.is_zero() {
        return;
    }
    let entry = map.entry(w);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(f);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get() + &f;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// Nil Hecke algebra of a Coxeter system.
pub struct NilHecke {
    sys: Arc<CoxeterSystem>,
    // d_w * m in left form
    left_cache: RwLock<HashMap<(Word, Monomial), Arc<Expansion>>>,
    // m * d_w in right form
    right_cache: RwLock<HashMap<(Monomial, Word), Arc<Expansion>>>,
    group_cache: RwLock<HashMap<Word, NhElement>>,
}

impl fmt::Debug for NilHecke {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NilHecke").field("system", &self.sys).finish()
    }
}

impl NilHecke {
    pub fn new(sys: Arc<CoxeterSystem>) -> Self {
        NilHecke {
            sys,
            left_cache: RwLock::new(HashMap::new()),
            right_cache: RwLock::new(HashMap::new()),
            group_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn nvars(&self) -> usize {
        self.sys.nvars()
    }

    pub fn check(&self, h: &NhElement) -> Result<()> {
        if h.system != self.sys.id() {
            return Err(Error::SystemMismatch("element belongs to another system".into()));
        }
        Ok(())
    }

    pub fn zero(&self) -> NhElement {
        NhElement { system: self.sys.id(), nvars: self.nvars(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> NhElement {
        self.weight(Polynomial::one(self.nvars()))
    }

    /// Builds an element from `(w, f_w)` pairs; repeated words are summed.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Word, Polynomial)>) -> Result<NhElement> {
        let mut out = self.zero();
        for (w, f) in terms {
            if f.nvars() != self.nvars() {
                return Err(Error::RingMismatch { left: self.nvars(), right: f.nvars() });
            }
            out.insert(w, f);
        }
        Ok(out)
    }

    fn from_expansion(&self, e: Expansion) -> NhElement {
        NhElement { system: self.sys.id(), nvars: self.nvars(), terms: e }
    }

    /// The weight `f` as the element `f * d_1`.
    pub fn weight(&self, f: Polynomial) -> NhElement {
        let mut out = self.zero();
        out.insert(Word::identity(), f);
        out
    }

    /// Nil Coxeter generator `d_s`.
    pub fn d(&self, s: usize) -> NhElement {
        self.d_word(&Word::new(vec![s]))
    }

    /// Basis element `d_w` for a canonical word.
    pub fn d_word(&self, w: &Word) -> NhElement {
        let mut out = self.zero();
        out.insert(w.clone(), Polynomial::one(self.nvars()));
        out
    }

    /// Group generator `s = 1 - alpha_s d_s`.
    pub fn gen_s(&self, s: usize) -> NhElement {
        let mut out = self.one();
        out.insert(Word::new(vec![s]), -self.sys.simple_root(s));
        out
    }

    /// Group element `w` as the product of generators along its canonical
    /// word.
    pub fn group_element(&self, w: &Word) -> NhElement {
        if let Some(hit) = self.group_cache.read().expect("cache poisoned").get(w) {
            return hit.clone();
        }
        let mut acc = self.one();
        for &s in w.letters() {
            acc = self.mul(&acc, &self.gen_s(s)).expect("same system");
        }
        self.group_cache.write().expect("cache poisoned").insert(w.clone(), acc.clone());
        acc
    }

    /// `d_w * m` in left form.
    fn d_times_monomial(&self, w: &Word, m: &Monomial) -> Arc<Expansion> {
        let key = (w.clone(), m.clone());
        if let Some(hit) = self.left_cache.read().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let n = self.nvars();
        let result = if w.is_empty() {
            let mut e = Expansion::new();
            e.insert(Word::identity(), Polynomial::monomial(n, m.clone(), Scalar::one()));
            e
        } else {
            // d_{s w'} m = d_s (sum h_v d_v) = sum s(h_v) d_s d_v + D_s(h_v) d_v
            let s = w.letters()[0];
            let rest = Word::new(w.letters()[1..].to_vec());
            let inner = self.d_times_monomial(&rest, m);
            let mut e = Expansion::new();
            for (v, h) in inner.iter() {
                let (sv, up) = self.sys.left_mul(s, v);
                if up {
                    add_into(&mut e, sv, self.sys.reflect(s, h));
                }
                add_into(&mut e, v.clone(), self.sys.demazure(s, h));
            }
            e
        };
        let result = Arc::new(result);
        self.left_cache.write().expect("cache poisoned").insert(key, result.clone());
        result
    }

    /// `d_w * g` in left form.
    pub fn d_times_poly(&self, w: &Word, g: &Polynomial) -> NhElement {
        let mut e = Expansion::new();
        for (m, c) in g.terms() {
            for (v, h) in self.d_times_monomial(w, m).iter() {
                add_into(&mut e, v.clone(), h.scale(c));
            }
        }
        self.from_expansion(e)
    }

    /// `m * d_w` in right form `sum d_u g_u`.
    fn monomial_times_d(&self, m: &Monomial, w: &Word) -> Arc<Expansion> {
        let key = (m.clone(), w.clone());
        if let Some(hit) = self.right_cache.read().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let n = self.nvars();
        let result = if w.is_empty() {
            let mut e = Expansion::new();
            e.insert(Word::identity(), Polynomial::monomial(n, m.clone(), Scalar::one()));
            e
        } else {
            // (sum d_u g_u) d_s = sum d_u d_s s(g_u) + d_u D_s(g_u)
            let k = w.len();
            let s = w.letters()[k - 1];
            let prefix = Word::new(w.letters()[..k - 1].to_vec());
            let inner = self.monomial_times_d(m, &prefix);
            let mut e = Expansion::new();
            for (u, g) in inner.iter() {
                let (us, up) = self.sys.right_mul(u, s);
                if up {
                    add_into(&mut e, us, self.sys.reflect(s, g));
                }
                add_into(&mut e, u.clone(), self.sys.demazure(s, g));
            }
            e
        };
        let result = Arc::new(result);
        self.right_cache.write().expect("cache poisoned").insert(key, result.clone());
        result
    }

    /// Coefficients `g_u` of `h = sum d_u g_u`.
    pub fn right_form(&self, h: &NhElement) -> BTreeMap<Word, Polynomial> {
        let mut e = Expansion::new();
        for (w, f) in &h.terms {
            for (m, c) in f.terms() {
                for (u, g) in self.monomial_times_d(m, w).iter() {
                    add_into(&mut e, u.clone(), g.scale(c));
                }
            }
        }
        e
    }

    /// Inverse of [`NilHecke::right_form`].
    pub fn from_right_form(&self, right: &BTreeMap<Word, Polynomial>) -> NhElement {
        let mut out = self.zero();
        for (u, g) in right {
            for (v, h) in self.d_times_poly(u, g).terms {
                out.insert(v, h);
            }
        }
        out
    }

    pub fn mul(&self, a: &NhElement, b: &NhElement) -> Result<NhElement> {
        self.check(a)?;
        self.check(b)?;
        let mut e = Expansion::new();
        for (w, f) in &a.terms {
            for (u, g) in &b.terms {
                // f d_w g d_u = sum f h_v d_v d_u
                for (v, h) in self.d_times_poly(w, g).terms {
                    if let Some(vu) = self.sys.multiply_reduced(&v, u) {
                        add_into(&mut e, vu, f * &h);
                    }
                }
            }
        }
        Ok(self.from_expansion(e))
    }

    /// Ordered product of several elements; the empty product is `1`.
    pub fn product(&self, factors: &[NhElement]) -> Result<NhElement> {
        let mut acc = self.one();
        for x in factors {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &NhElement, e: u32) -> Result<NhElement> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `D_w(f)`, applying the last letter first.
    pub fn demazure_word(&self, w: &Word, f: &Polynomial) -> Polynomial {
        w.letters().iter().rev().fold(f.clone(), |acc, &s| self.sys.demazure(s, &acc))
    }

    /// Polynomial representation: weights multiply, `d_s` acts by the
    /// divided difference.
    pub fn act(&self, h: &NhElement, f: &Polynomial) -> Result<Polynomial> {
        self.check(h)?;
        if f.nvars() != self.nvars() {
            return Err(Error::RingMismatch { left: self.nvars(), right: f.nvars() });
        }
        let mut out = Polynomial::zero(self.nvars());
        for (w, c) in &h.terms {
            out = &out + &(c * &self.demazure_word(w, f));
        }
        Ok(out)
    }

    /// `h(1)`, which is the identity coefficient.
    pub fn counit(&self, h: &NhElement) -> Polynomial {
        h.coefficient(&Word::identity())
    }

    /// The anti-automorphism fixing weights and every `d_s`.
    pub fn anti_involution(&self, h: &NhElement) -> NhElement {
        let mut out = self.zero();
        for (w, f) in &h.terms {
            for (v, g) in self.d_times_poly(&self.sys.inverse(w), f).terms {
                out.insert(v, g);
            }
        }
        out
    }

    /// Both expressions for the trivial idempotent.
    pub fn e_triv(&self) -> Result<TrivialIdempotent> {
        let elements = self.sys.enumerate(None)?;
        let order = Scalar::from_int(elements.len() as i64);
        let inv = Scalar::one() / order;
        let mut average = self.zero();
        for w in &elements {
            average = average.try_add(&self.group_element(w))?;
        }
        let average = average.scale(&inv);
        let longest = elements.last().cloned().expect("identity present");
        let mut roots = Polynomial::one(self.nvars());
        for r in self.sys.positive_roots()? {
            roots = &roots * &self.sys.root_polynomial(&r);
        }
        let demazure_form = self.d_times_poly(&longest, &roots).scale(&inv);
        let square = self.mul(&average, &average)?;
        Ok(TrivialIdempotent {
            forms_agree: average == demazure_form,
            idempotent: square == average,
            average,
            demazure_form,
        })
    }
}

/// `(1/|W|) sum w` next to `(1/|W|) d_{w_o} prod alpha`.
#[derive(Debug, Clone)]
pub struct TrivialIdempotent {
    pub average: NhElement,
    pub demazure_form: NhElement,
    pub forms_agree: bool,
    pub idempotent: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{Expression, SystemSpec};

    fn algebra(spec: SystemSpec) -> NilHecke {
        NilHecke::new(Arc::new(CoxeterSystem::build(&spec).unwrap()))
    }

    #[test]
    fn twisted_weyl_relation_s2() {
        let nh = algebra(SystemSpec::s2());
        let a = nh.system().ring().var(0);
        let got = nh.mul(&nh.d(0), &nh.weight(a.clone())).unwrap();
        let expected = nh.weight(Polynomial::constant(1, Scalar::from_int(2)))
            .try_sub(&nh.d(0).mul_poly_left(&a))
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn gl_relation() {
        let nh = algebra(SystemSpec::gl(3));
        let x1 = nh.system().ring().var(0);
        let x2 = nh.system().ring().var(1);
        let got = nh.mul(&nh.d(0), &nh.weight(x1)).unwrap();
        let expected = nh.d(0).mul_poly_left(&x2).try_add(&nh.one()).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn nil_coxeter_relations() {
        let nh = algebra(SystemSpec::dihedral(3));
        assert!(nh.mul(&nh.d(0), &nh.d(0)).unwrap().is_zero());
        let sts = nh.product(&[nh.d(0), nh.d(1), nh.d(0)]).unwrap();
        let tst = nh.product(&[nh.d(1), nh.d(0), nh.d(1)]).unwrap();
        assert_eq!(sts, tst);
        assert!(!sts.is_zero());
    }

    #[test]
    fn group_generators_square_to_one() {
        for spec in [SystemSpec::s2(), SystemSpec::dihedral(4), SystemSpec::dihedral(5)] {
            let nh = algebra(spec);
            for s in 0..nh.system().rank() {
                assert_eq!(nh.mul(&nh.gen_s(s), &nh.gen_s(s)).unwrap(), nh.one());
            }
        }
    }

    #[test]
    fn braid_relation_on_group_elements() {
        for m in 2..=6 {
            let nh = algebra(SystemSpec::dihedral(m));
            let lhs: Vec<_> = (0..m).map(|i| nh.gen_s((i % 2) as usize)).collect();
            let rhs: Vec<_> = (0..m).map(|i| nh.gen_s(((i + 1) % 2) as usize)).collect();
            assert_eq!(nh.product(&lhs).unwrap(), nh.product(&rhs).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn action_matches_group_action() {
        let nh = algebra(SystemSpec::dihedral(4));
        let ring = nh.system().ring().clone();
        let f = &(&ring.var(0) * &ring.var(0)) * &ring.var(1);
        for w in nh.system().enumerate(None).unwrap() {
            let via_nh = nh.act(&nh.group_element(&w), &f).unwrap();
            assert_eq!(via_nh, nh.system().act(&w, &f), "w = {w:?}");
        }
    }

    #[test]
    fn counit_values() {
        let nh = algebra(SystemSpec::s2());
        assert!(nh.counit(&nh.d(0)).is_zero());
        assert!(nh.counit(&nh.gen_s(0)).is_one());
        let a = nh.system().ring().var(0);
        assert_eq!(nh.counit(&nh.weight(a.clone())), a);
    }

    #[test]
    fn right_form_roundtrip() {
        let nh = algebra(SystemSpec::gl(3));
        let ring = nh.system().ring().clone();
        let w = nh.system().canonical_word(&Expression(vec![0, 1, 0])).unwrap();
        let h = nh.d_word(&w).mul_poly_left(&(&ring.var(0) * &ring.var(2)));
        let right = nh.right_form(&h);
        assert_eq!(nh.from_right_form(&right), h);
        // s = -1 + d_s alpha_s in right form
        let nh2 = algebra(SystemSpec::s2());
        let r = nh2.right_form(&nh2.gen_s(0));
        assert_eq!(r[&Word::identity()], Polynomial::constant(1, Scalar::from_int(-1)));
        assert_eq!(r[&Word::new(vec![0])], nh2.system().ring().var(0));
    }

    #[test]
    fn anti_involution_reverses_products() {
        let nh = algebra(SystemSpec::dihedral(3));
        let ring = nh.system().ring().clone();
        let a = nh.d(0).mul_poly_left(&ring.var(1));
        let b = nh.mul(&nh.d(1), &nh.weight(&ring.var(0) * &ring.var(0))).unwrap();
        let lhs = nh.anti_involution(&nh.mul(&a, &b).unwrap());
        let rhs = nh.mul(&nh.anti_involution(&b), &nh.anti_involution(&a)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trivial_idempotent_s2() {
        let nh = algebra(SystemSpec::s2());
        let e = nh.e_triv().unwrap();
        assert!(e.forms_agree && e.idempotent);
        let a = nh.system().ring().var(0);
        let expected = nh.one().try_sub(&nh.d(0).mul_poly_left(&a.scale(&Scalar::from_ratio(1, 2)))).unwrap();
        assert_eq!(e.average, expected);
    }

    #[test]
    fn mixing_systems_is_an_error() {
        let a = algebra(SystemSpec::s2());
        let b = algebra(SystemSpec::s2());
        assert!(matches!(a.mul(&a.d(0), &b.d(0)), Err(Error::SystemMismatch(_))));
        assert!(a.d(0).try_add(&b.d(0)).is_err());
    }
}
