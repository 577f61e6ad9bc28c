//! The twisted group algebra over the fraction field, `Q * W`.
//!
//! Elements are finite sums `sum f_w w` with rational-function
//! coefficients. The nil Hecke algebra embeds through
//! `d_s -> (1/alpha_s)(1 - s)`, which makes this an independent oracle: the
//! product here is just the twisted group law and never touches the
//! commutation rules used by [`NilHecke`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::coxeter::{CoxeterSystem, Word};
use crate::error::{Error, Result};
use crate::linear::LinearAction;
use crate::nilhecke::{NhElement, NilHecke};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::tensor::BlueTensor;

/// Groups contributions by key and sums each group in one step.
fn collect_sums<K: Ord>(nvars: usize, pieces: impl IntoIterator<Item = (K, RationalFunction)>) -> BTreeMap<K, RationalFunction> {
    let mut groups: BTreeMap<K, Vec<RationalFunction>> = BTreeMap::new();
    for (k, f) in pieces {
        if !f.is_zero() {
            groups.entry(k).or_default().push(f);
        }
    }
    groups
        .into_iter()
        .map(|(k, fs)| (k, RationalFunction::sum(nvars, &fs)))
        .filter(|(_, f)| !f.is_zero())
        .collect()
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, RationalFunction>, k: K, f: RationalFunction) {
    if f.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(f);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get() + &f;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// `sum f_w w`.
#[derive(Clone, PartialEq, Eq)]
pub struct QwElement {
    system: u64,
    nvars: usize,
    terms: BTreeMap<Word, RationalFunction>,
}

impl QwElement {
    pub fn terms(&self) -> &BTreeMap<Word, RationalFunction> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> RationalFunction {
        self.terms.get(w).cloned().unwrap_or_else(|| RationalFunction::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn try_add(&self, other: &QwElement) -> Result<QwElement> {
        if self.system != other.system {
            return Err(Error::SystemMismatch("oracle elements of different systems".into()));
        }
        let mut out = self.clone();
        for (w, f) in &other.terms {
            add_into(&mut out.terms, w.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &QwElement) -> Result<QwElement> {
        self.try_add(&other.scale(&RationalFunction::constant(self.nvars, (-1).into())))
    }

    /// `f * self`.
    pub fn scale(&self, f: &RationalFunction) -> QwElement {
        let terms = self
            .terms
            .iter()
            .map(|(w, g)| (w.clone(), f * g))
            .filter(|(_, g)| !g.is_zero())
            .collect();
        QwElement { system: self.system, nvars: self.nvars, terms }
    }
}

impl fmt::Debug for QwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        let parts: Vec<String> =
            self.terms.iter().map(|(w, p)| format!("({}){:?}", p.render(&names), w)).collect();
        write!(f, "Qw{{{}}}", parts.join(" + "))
    }
}

/// `sum f (u (x) v)` over `Q`, with the coefficient in the first slot.
#[derive(Clone, PartialEq, Eq)]
pub struct QwTensor {
    nvars: usize,
    terms: BTreeMap<(Word, Word), RationalFunction>,
}

impl QwTensor {
    pub fn terms(&self) -> &BTreeMap<(Word, Word), RationalFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for QwTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((u, v), p)| format!("({})[{:?} (x) {:?}]", p.render(&names), u, v))
            .collect();
        write!(f, "QwTensor{{{}}}", parts.join(" + "))
    }
}

/// `sum g (x) f u` with the coefficient in the second slot.
#[derive(Clone, PartialEq, Eq)]
pub struct QwRedTensor {
    nvars: usize,
    terms: BTreeMap<(Word, Word), RationalFunction>,
}

impl QwRedTensor {
    pub fn terms(&self) -> &BTreeMap<(Word, Word), RationalFunction> {
        &self.terms
    }
}

pub struct QStarW {
    sys: Arc<CoxeterSystem>,
    actions: RwLock<HashMap<Word, LinearAction>>,
    d_images: RwLock<HashMap<Word, QwElement>>,
}

impl fmt::Debug for QStarW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QStarW").field("system", &self.sys).finish()
    }
}

impl QStarW {
    pub fn new(sys: Arc<CoxeterSystem>) -> Self {
        QStarW { sys, actions: RwLock::new(HashMap::new()), d_images: RwLock::new(HashMap::new()) }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    fn nvars(&self) -> usize {
        self.sys.nvars()
    }

    pub fn zero(&self) -> QwElement {
        QwElement { system: self.sys.id(), nvars: self.nvars(), terms: BTreeMap::new() }
    }

    /// `f * w`.
    pub fn term(&self, w: &Word, f: RationalFunction) -> QwElement {
        let mut out = self.zero();
        add_into(&mut out.terms, w.clone(), f);
        out
    }

    pub fn group_element(&self, w: &Word) -> QwElement {
        self.term(w, RationalFunction::one(self.nvars()))
    }

    pub fn scalar(&self, f: RationalFunction) -> QwElement {
        self.term(&Word::identity(), f)
    }

    fn action(&self, w: &Word) -> LinearAction {
        if let Some(a) = self.actions.read().expect("cache poisoned").get(w) {
            return a.clone();
        }
        let a = self.sys.element(w).action().clone();
        self.actions.write().expect("cache poisoned").insert(w.clone(), a.clone());
        a
    }

    fn act(&self, w: &Word, f: &RationalFunction) -> RationalFunction {
        if w.is_empty() {
            return f.clone();
        }
        f.apply_action(&self.action(w)).expect("dimensions agree")
    }

    fn check(&self, x: &QwElement) -> Result<()> {
        if x.system != self.sys.id() {
            return Err(Error::SystemMismatch("oracle element belongs to another system".into()));
        }
        Ok(())
    }

    /// Twisted product `(f u)(g v) = f u(g) uv`.
    pub fn mul(&self, a: &QwElement, b: &QwElement) -> Result<QwElement> {
        self.check(a)?;
        self.check(b)?;
        let mut pieces = Vec::new();
        for (u, f) in &a.terms {
            for (v, g) in &b.terms {
                pieces.push((self.sys.multiply(u, v), f * &self.act(u, g)));
            }
        }
        let mut out = self.zero();
        out.terms = collect_sums(self.nvars(), pieces);
        Ok(out)
    }

    /// Image of `d_s`: `(1/alpha_s) - (1/alpha_s) s`.
    pub fn embed_d(&self, s: usize) -> QwElement {
        let inv = RationalFunction::from_poly(self.sys.simple_root(s).clone())
            .inverse()
            .expect("simple roots are nonzero");
        let mut out = self.scalar(inv.clone());
        add_into(&mut out.terms, Word::new(vec![s]), -&inv);
        out
    }

    /// Image of `d_w`, multiplied out along the canonical word.
    pub fn embed_d_word(&self, w: &Word) -> QwElement {
        if let Some(hit) = self.d_images.read().expect("cache poisoned").get(w) {
            return hit.clone();
        }
        let mut acc = self.group_element(&Word::identity());
        for &s in w.letters() {
            acc = self.mul(&acc, &self.embed_d(s)).expect("same system");
        }
        self.d_images.write().expect("cache poisoned").insert(w.clone(), acc.clone());
        acc
    }

    pub fn embed(&self, h: &NhElement) -> Result<QwElement> {
        if h.system_id() != self.sys.id() {
            return Err(Error::SystemMismatch("nil Hecke element of another system".into()));
        }
        let mut pieces = Vec::new();
        for (w, f) in h.terms() {
            for (u, g) in self.embed_d_word(w).terms {
                pieces.push((u, g.mul_poly(f)));
            }
        }
        let mut out = self.zero();
        out.terms = collect_sums(self.nvars(), pieces);
        Ok(out)
    }

    /// Equality of the images under the embedding.
    pub fn oracle_equal(&self, a: &NhElement, b: &NhElement) -> Result<bool> {
        Ok(self.embed(a)? == self.embed(b)?)
    }

    /// `f w -> f (w (x) w)`.
    pub fn delta(&self, x: &QwElement) -> QwTensor {
        let terms = x.terms.iter().map(|(w, f)| ((w.clone(), w.clone()), f.clone())).collect();
        QwTensor { nvars: self.nvars(), terms }
    }

    /// `f w -> f`.
    pub fn epsilon(&self, x: &QwElement) -> RationalFunction {
        x.terms.values().fold(RationalFunction::zero(self.nvars()), |acc, f| &acc + f)
    }

    /// `f w -> w (x) w^{-1}(f) w^{-1}`.
    pub fn red(&self, x: &QwElement) -> QwRedTensor {
        let mut terms = BTreeMap::new();
        for (w, f) in &x.terms {
            let inv = self.sys.inverse(w);
            let coeff = self.act(&inv, f);
            add_into(&mut terms, (w.clone(), inv), coeff);
        }
        QwRedTensor { nvars: self.nvars(), terms }
    }

    /// Counit on the first factor of a red tensor.
    pub fn counit_first_red(&self, t: &QwRedTensor) -> QwElement {
        let mut out = self.zero();
        for ((_, u), f) in &t.terms {
            add_into(&mut out.terms, u.clone(), f.clone());
        }
        out
    }

    /// `f w -> w^{-1}(f) w^{-1}`.
    pub fn antipode(&self, x: &QwElement) -> QwElement {
        let mut out = self.zero();
        for (w, f) in &x.terms {
            let inv = self.sys.inverse(w);
            let coeff = self.act(&inv, f);
            add_into(&mut out.terms, inv, coeff);
        }
        out
    }

    /// Image of a blue tensor of nil Hecke elements.
    pub fn embed_blue(&self, t: &BlueTensor) -> Result<QwTensor> {
        if t.system_id() != self.sys.id() {
            return Err(Error::SystemMismatch("tensor of another system".into()));
        }
        let mut pieces = Vec::new();
        for ((v, w), f) in t.terms() {
            let left = self.embed_d_word(v);
            let right = self.embed_d_word(w);
            for (a, g) in &left.terms {
                let fg = g.mul_poly(f);
                for (b, h) in &right.terms {
                    pieces.push(((a.clone(), b.clone()), &fg * h));
                }
            }
        }
        Ok(QwTensor { nvars: self.nvars(), terms: collect_sums(self.nvars(), pieces) })
    }

    /// Rewrites `x` in the basis `{d_w}` over `Q`. Returns the nil Hecke
    /// element when every coefficient is a polynomial.
    pub fn to_nil_hecke(&self, nh: &NilHecke, x: &QwElement) -> Result<Option<NhElement>> {
        self.check(x)?;
        let mut rest = x.clone();
        let mut coeffs: Vec<(Word, RationalFunction)> = Vec::new();
        while let Some((w, f)) = rest.terms.iter().next_back() {
            let (w, f) = (w.clone(), f.clone());
            // The image of d_w is supported on elements below w; only w
            // itself has maximal length.
            let image = self.embed_d_word(&w);
            let lead = image.coefficient(&w);
            if lead.is_zero() {
                return Err(Error::InconsistentSystem("embedded basis element has no leading term".into()));
            }
            let c = f.try_div(&lead)?;
            rest = rest.try_sub(&image.scale(&c))?;
            coeffs.push((w, c));
        }
        let mut terms: Vec<(Word, Polynomial)> = Vec::new();
        for (w, c) in coeffs {
            match c.as_polynomial() {
                Some(p) => terms.push((w, p.clone())),
                None => return Ok(None),
            }
        }
        Ok(Some(nh.from_terms(terms)?))
    }

    pub fn in_image_of_nh(&self, nh: &NilHecke, x: &QwElement) -> Result<bool> {
        Ok(self.to_nil_hecke(nh, x)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::SystemSpec;
    use crate::scalar::Scalar;

    fn setup(spec: SystemSpec) -> (NilHecke, QStarW) {
        let sys = Arc::new(CoxeterSystem::build(&spec).unwrap());
        (NilHecke::new(sys.clone()), QStarW::new(sys))
    }

    #[test]
    fn group_law() {
        let (_, q) = setup(SystemSpec::s2());
        let s = q.group_element(&Word::new(vec![0]));
        assert_eq!(q.mul(&s, &s).unwrap(), q.group_element(&Word::identity()));
        let a = RationalFunction::from_poly(q.system().ring().var(0));
        let prod = q.mul(&q.scalar(a.inverse().unwrap()), &q.scalar(a)).unwrap();
        assert_eq!(prod, q.group_element(&Word::identity()));
    }

    #[test]
    fn image_of_d_squares_to_zero() {
        let (_, q) = setup(SystemSpec::s2());
        let d = q.embed_d(0);
        assert!(q.mul(&d, &d).unwrap().is_zero());
    }

    #[test]
    fn embedding_of_group_generator() {
        let (nh, q) = setup(SystemSpec::dihedral(5));
        for s in 0..2 {
            assert_eq!(q.embed(&nh.gen_s(s)).unwrap(), q.group_element(&Word::new(vec![s])));
        }
    }

    #[test]
    fn twisted_weyl_relation_via_oracle() {
        let (nh, q) = setup(SystemSpec::s2());
        let a = nh.system().ring().var(0);
        let lhs = nh.mul(&nh.d(0), &nh.weight(a.clone())).unwrap();
        let rhs = nh.weight(Polynomial::constant(1, Scalar::from_int(2))).try_sub(&nh.d(0).mul_poly_left(&a)).unwrap();
        assert!(q.oracle_equal(&lhs, &rhs).unwrap());
        assert!(!q.oracle_equal(&nh.d(0), &nh.zero()).unwrap());
    }

    #[test]
    fn antipode_of_d_leaves_nil_hecke() {
        let (nh, q) = setup(SystemSpec::s2());
        let d = q.embed(&nh.d(0)).unwrap();
        assert!(q.in_image_of_nh(&nh, &d).unwrap());
        let sd = q.antipode(&d);
        assert!(!q.in_image_of_nh(&nh, &sd).unwrap());
        // (1 - s)(1/alpha) = 2/alpha - d in the d-basis
        let alpha = RationalFunction::from_poly(nh.system().ring().var(0));
        let expected = q.scalar(alpha.inverse().unwrap().scale(&Scalar::from_int(2))).try_sub(&d).unwrap();
        assert_eq!(sd, expected);
        assert_eq!(q.antipode(&sd), d);
    }

    #[test]
    fn basis_change_roundtrip() {
        let (nh, q) = setup(SystemSpec::gl(3));
        let ring = nh.system().ring().clone();
        for w in nh.system().enumerate(None).unwrap() {
            let h = nh.d_word(&w).mul_poly_left(&(&ring.var(0) + &ring.var(2)));
            let back = q.to_nil_hecke(&nh, &q.embed(&h).unwrap()).unwrap();
            assert_eq!(back, Some(h));
        }
    }

    #[test]
    fn counit_of_red_is_antipode() {
        let (nh, q) = setup(SystemSpec::dihedral(3));
        let x = q.embed(&nh.mul(&nh.d(0), &nh.d(1)).unwrap()).unwrap();
        assert_eq!(q.counit_first_red(&q.red(&x)), q.antipode(&x));
    }
}
