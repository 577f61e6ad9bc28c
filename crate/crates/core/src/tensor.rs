//! Tensor squares of the nil Hecke algebra over its polynomial ring.
//!
//! Blue tensors balance the left action on both factors and keep the
//! coefficient in the first slot: `(v, w) -> f` is `f d_v (x) d_w`. Red
//! tensors balance the right action on the first factor against the left
//! action on the second and keep the coefficient in the second slot:
//! `(v, w) -> f` is `d_v (x) f d_w`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coxeter::Word;
use crate::error::{Error, Result};
use crate::nilhecke::{NhElement, NilHecke};
use crate::poly::Polynomial;

type Pair = (Word, Word);

fn add_into<K: Ord>(map: &mut BTreeMap<K, Polynomial>, k: K, f: Polynomial) {
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

macro_rules! tensor_common {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(nh: &NilHecke) -> Self {
                $ty { system: nh.system().id(), nvars: nh.nvars(), terms: BTreeMap::new() }
            }

            /// `1 (x) 1`.
            pub fn one(nh: &NilHecke) -> Self {
                let mut t = Self::zero(nh);
                t.terms.insert((Word::identity(), Word::identity()), Polynomial::one(nh.nvars()));
                t
            }

            pub fn from_terms(
                nh: &NilHecke,
                terms: impl IntoIterator<Item = ((Word, Word), Polynomial)>,
            ) -> Self {
                let mut t = Self::zero(nh);
                for (k, f) in terms {
                    add_into(&mut t.terms, k, f);
                }
                t
            }

            pub fn terms(&self) -> &BTreeMap<Pair, Polynomial> {
                &self.terms
            }

            pub fn coefficient(&self, v: &Word, w: &Word) -> Polynomial {
                self.terms
                    .get(&(v.clone(), w.clone()))
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(self.nvars))
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn system_id(&self) -> u64 {
                self.system
            }

            pub fn nvars(&self) -> usize {
                self.nvars
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                if self.system != other.system {
                    return Err(Error::SystemMismatch("tensors of different systems".into()));
                }
                let mut out = self.clone();
                for (k, f) in &other.terms {
                    add_into(&mut out.terms, k.clone(), f.clone());
                }
                Ok(out)
            }

            pub(crate) fn absorb(&mut self, other: Self) {
                for (k, f) in other.terms {
                    add_into(&mut self.terms, k, f);
                }
            }

            pub fn try_sub(&self, other: &Self) -> Result<Self> {
                self.try_add(&other.neg())
            }

            pub fn neg(&self) -> Self {
                let terms = self.terms.iter().map(|(k, f)| (k.clone(), -f)).collect();
                $ty { system: self.system, nvars: self.nvars, terms }
            }

            fn check(&self, nh: &NilHecke) -> Result<()> {
                if self.system != nh.system().id() {
                    return Err(Error::SystemMismatch("tensor belongs to another system".into()));
                }
                Ok(())
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
                let parts: Vec<String> = self
                    .terms
                    .iter()
                    .map(|((v, w), p)| format!("({})[{:?} (x) {:?}]", p.render(&names), v, w))
                    .collect();
                write!(f, "{}{{{}}}", stringify!($ty), parts.join(" + "))
            }
        }
    };
}

/// `sum f_{v,w} d_v (x) d_w` with `r m (x) n = m (x) r n`.
#[derive(Clone, PartialEq, Eq)]
pub struct BlueTensor {
    system: u64,
    nvars: usize,
    terms: BTreeMap<Pair, Polynomial>,
}

/// `sum d_v (x) f_{v,w} d_w` with `m r (x) n = m (x) r n`.
#[derive(Clone, PartialEq, Eq)]
pub struct RedTensor {
    system: u64,
    nvars: usize,
    terms: BTreeMap<Pair, Polynomial>,
}

tensor_common!(BlueTensor);
tensor_common!(RedTensor);

impl BlueTensor {
    /// `a (x) b`; left coefficients of `b` join those of `a`.
    pub fn embed(nh: &NilHecke, a: &NhElement, b: &NhElement) -> Result<Self> {
        nh.check(a)?;
        nh.check(b)?;
        let mut t = Self::zero(nh);
        for (v, f) in a.terms() {
            for (w, g) in b.terms() {
                add_into(&mut t.terms, (v.clone(), w.clone()), f * g);
            }
        }
        Ok(t)
    }

    /// `f * self`.
    pub fn mul_poly_left(&self, f: &Polynomial) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, g)| (k.clone(), f * g))
            .filter(|(_, g)| !g.is_zero())
            .collect();
        BlueTensor { system: self.system, nvars: self.nvars, terms }
    }

    /// Multiplies the first slot on the right by `p`, computed on the
    /// normal-form representative.
    pub fn mul_slot1_right(&self, nh: &NilHecke, p: &NhElement) -> Result<Self> {
        self.check(nh)?;
        let mut t = Self::zero(nh);
        for ((v, w), f) in &self.terms {
            let left = nh.d_word(v).mul_poly_left(f);
            for (u, h) in nh.mul(&left, p)?.terms() {
                add_into(&mut t.terms, (u.clone(), w.clone()), h.clone());
            }
        }
        Ok(t)
    }

    /// Multiplies the second slot on the right by `p`.
    pub fn mul_slot2_right(&self, nh: &NilHecke, p: &NhElement) -> Result<Self> {
        self.check(nh)?;
        nh.check(p)?;
        let mut by_second: BTreeMap<&Word, Vec<(&Word, &Polynomial)>> = BTreeMap::new();
        for ((v, w), f) in &self.terms {
            by_second.entry(w).or_default().push((v, f));
        }
        let mut t = Self::zero(nh);
        for (w, firsts) in by_second {
            let right = nh.mul(&nh.d_word(w), p)?;
            for (v, f) in firsts {
                for (u, g) in right.terms() {
                    add_into(&mut t.terms, (v.clone(), u.clone()), f * g);
                }
            }
        }
        Ok(t)
    }

    /// Membership in the Takeuchi product, tested on every variable.
    pub fn is_takeuchi(&self, nh: &NilHecke) -> Result<bool> {
        for i in 0..nh.nvars() {
            let x = nh.weight(Polynomial::var(nh.nvars(), i));
            if self.mul_slot1_right(nh, &x)? != self.mul_slot2_right(nh, &x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Componentwise product. In checked mode the left factor must lie in
    /// the Takeuchi product.
    pub fn mul(&self, nh: &NilHecke, rhs: &BlueTensor, checked: bool) -> Result<Self> {
        self.check(nh)?;
        rhs.check(nh)?;
        if checked && !self.is_takeuchi(nh)? {
            return Err(Error::TakeuchiViolation);
        }
        let sys = nh.system();
        let mut t = Self::zero(nh);
        for ((v, w), f) in &self.terms {
            for ((u, z), g) in &rhs.terms {
                // f d_v g d_u (x) d_w d_z
                let Some(wz) = sys.multiply_reduced(w, z) else { continue };
                for (a, h) in nh.d_times_poly(v, g).terms() {
                    if let Some(au) = sys.multiply_reduced(a, u) {
                        add_into(&mut t.terms, (au, wz.clone()), f * h);
                    }
                }
            }
        }
        Ok(t)
    }

    /// Exchanges the two factors.
    pub fn swap(&self) -> Self {
        let terms = self.terms.iter().map(|((v, w), f)| ((w.clone(), v.clone()), f.clone())).collect();
        BlueTensor { system: self.system, nvars: self.nvars, terms }
    }

    /// Counit applied to the first factor: `sum f_{1,w} d_w`.
    pub fn counit_first(&self, nh: &NilHecke) -> Result<NhElement> {
        self.check(nh)?;
        nh.from_terms(
            self.terms.iter().filter(|((v, _), _)| v.is_empty()).map(|((_, w), f)| (w.clone(), f.clone())),
        )
    }

    /// Counit applied to the second factor: `sum f_{v,1} d_v`.
    pub fn counit_second(&self, nh: &NilHecke) -> Result<NhElement> {
        self.check(nh)?;
        nh.from_terms(
            self.terms.iter().filter(|((_, w), _)| w.is_empty()).map(|((v, _), f)| (v.clone(), f.clone())),
        )
    }

    /// Rewrites as `sum_v d_v (x) X_v`, moving coefficients into slot two.
    pub fn slot_two_elements(&self, nh: &NilHecke) -> Result<BTreeMap<Word, NhElement>> {
        self.check(nh)?;
        let mut out: BTreeMap<Word, NhElement> = BTreeMap::new();
        for ((v, w), f) in &self.terms {
            out.entry(v.clone()).or_insert_with(|| nh.zero()).add_term(w, f);
        }
        Ok(out)
    }
}

impl RedTensor {
    /// `a (x) b`, moving the right coefficients of `a` into the second slot.
    pub fn embed(nh: &NilHecke, a: &NhElement, b: &NhElement) -> Result<Self> {
        nh.check(a)?;
        nh.check(b)?;
        let mut t = Self::zero(nh);
        for (u, g) in nh.right_form(a) {
            for (w, f) in b.terms() {
                add_into(&mut t.terms, (u.clone(), w.clone()), &g * f);
            }
        }
        Ok(t)
    }

    /// `sum_v d_v (x) X_v`.
    pub fn slot_two_elements(&self, nh: &NilHecke) -> Result<BTreeMap<Word, NhElement>> {
        self.check(nh)?;
        let mut out: BTreeMap<Word, NhElement> = BTreeMap::new();
        for ((v, w), f) in &self.terms {
            out.entry(v.clone()).or_insert_with(|| nh.zero()).add_term(w, f);
        }
        Ok(out)
    }

    fn from_slot_two(nh: &NilHecke, v: &Word, x: &NhElement) -> Self {
        Self::from_terms(nh, x.terms().iter().map(|(w, f)| ((v.clone(), w.clone()), f.clone())))
    }

    /// Multiplies the first slot on the left by `p`.
    pub fn mul_slot1_left(&self, nh: &NilHecke, p: &NhElement) -> Result<Self> {
        let mut t = Self::zero(nh);
        for (v, x) in self.slot_two_elements(nh)? {
            let first = nh.mul(p, &nh.d_word(&v))?;
            t.absorb(Self::embed(nh, &first, &x)?);
        }
        Ok(t)
    }

    /// Multiplies the second slot on the right by `p`.
    pub fn mul_slot2_right(&self, nh: &NilHecke, p: &NhElement) -> Result<Self> {
        let mut t = Self::zero(nh);
        for (v, x) in self.slot_two_elements(nh)? {
            t.absorb(Self::from_slot_two(nh, &v, &nh.mul(&x, p)?));
        }
        Ok(t)
    }

    pub fn is_takeuchi(&self, nh: &NilHecke) -> Result<bool> {
        for i in 0..nh.nvars() {
            let x = nh.weight(Polynomial::var(nh.nvars(), i));
            if self.mul_slot1_left(nh, &x)? != self.mul_slot2_right(nh, &x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(a (x) b)(c (x) d) = ac (x) db`.
    pub fn mul_op(&self, nh: &NilHecke, rhs: &RedTensor, checked: bool) -> Result<Self> {
        self.check(nh)?;
        rhs.check(nh)?;
        if checked && !(self.is_takeuchi(nh)? && rhs.is_takeuchi(nh)?) {
            return Err(Error::TakeuchiViolation);
        }
        let sys = nh.system();
        let left = self.slot_two_elements(nh)?;
        let right = rhs.slot_two_elements(nh)?;
        let mut t = Self::zero(nh);
        for (v, x) in &left {
            for (u, y) in &right {
                let Some(vu) = sys.multiply_reduced(v, u) else { continue };
                t.absorb(Self::from_slot_two(nh, &vu, &nh.mul(y, x)?));
            }
        }
        Ok(t)
    }
}

/// `sum f d_{v_1} (x) d_{v_2} (x) ... (x) d_{v_k}` with the blue balancing.
#[derive(Clone, PartialEq, Eq)]
pub struct BlueTensorN {
    system: u64,
    nvars: usize,
    terms: BTreeMap<Vec<Word>, Polynomial>,
}

impl BlueTensorN {
    pub fn zero(nh: &NilHecke) -> Self {
        BlueTensorN { system: nh.system().id(), nvars: nh.nvars(), terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, key: Vec<Word>, f: Polynomial) {
        add_into(&mut self.terms, key, f);
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn system_id(&self) -> u64 {
        self.system
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

impl fmt::Debug for BlueTensorN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        let parts: Vec<String> =
            self.terms.iter().map(|(k, p)| format!("({}){:?}", p.render(&names), k)).collect();
        write!(f, "BlueTensorN{{{}}}", parts.join(" + "))
    }
}
