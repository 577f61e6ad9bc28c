//! The Weyl algebra over `k[x1..xn]` with its Hopf algebroid structure.
//!
//! Elements are normal ordered sums of `x^a d^b`. Blue tensors keep the
//! polynomial coefficient on the left of slot one, red tensors keep it on
//! the left of slot two.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type Exps = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<(Exps, Exps), Scalar>,
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(k).or_insert_with(Scalar::zero);
    *slot = &*slot + &c;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, Scalar>) {
    map.retain(|_, c| !c.is_zero());
}

fn binom(n: u32, k: u32) -> Scalar {
    let mut r = Scalar::one();
    for i in 0..k {
        r = &(&r * &Scalar::from_int(i64::from(n - i))) / &Scalar::from_int(i64::from(i + 1));
    }
    r
}

fn falling(n: u32, k: u32) -> Scalar {
    (0..k).fold(Scalar::one(), |r, i| &r * &Scalar::from_int(i64::from(n - i)))
}

fn add_exps(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All `k <= b` componentwise.
fn below(b: &[u32]) -> Vec<Exps> {
    let mut out = vec![Vec::new()];
    for &bi in b {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=bi).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Normal ordered expansion of `d^b x^c` as `(x-exponents, d-exponents, coefficient)`.
fn commute(b: &[u32], c: &[u32]) -> Vec<(Exps, Exps, Scalar)> {
    below(&b.iter().zip(c).map(|(bi, ci)| *bi.min(ci)).collect::<Vec<_>>())
        .into_iter()
        .map(|k| {
            let coeff = (0..b.len()).fold(Scalar::one(), |acc, i| {
                &acc * &(&binom(b[i], k[i]) * &falling(c[i], k[i]))
            });
            let xs = c.iter().zip(&k).map(|(ci, ki)| ci - ki).collect();
            let ds = b.iter().zip(&k).map(|(bi, ki)| bi - ki).collect();
            (xs, ds, coeff)
        })
        .collect()
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement { n, terms: BTreeMap::new() }
    }

    pub fn monomial(a: Exps, b: Exps, c: Scalar) -> Self {
        let n = a.len();
        let mut terms = BTreeMap::new();
        add_into(&mut terms, (a, b), c);
        WeylElement { n, terms }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], vec![0; n], Scalar::one())
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        Self::monomial(a, vec![0; n], Scalar::one())
    }

    pub fn d(n: usize, i: usize) -> Self {
        let mut b = vec![0; n];
        b[i] = 1;
        Self::monomial(vec![0; n], b, Scalar::one())
    }

    pub fn terms(&self) -> &BTreeMap<(Exps, Exps), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_into(&mut terms, k.clone(), c.clone());
        }
        prune(&mut terms);
        WeylElement { n: self.n, terms }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            add_into(&mut terms, k.clone(), v * c);
        }
        WeylElement { n: self.n, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let coeff = c1 * c2;
                for (xs, ds, k) in commute(b, c) {
                    add_into(&mut terms, (add_exps(a, &xs), add_exps(&ds, d)), &coeff * &k);
                }
            }
        }
        prune(&mut terms);
        WeylElement { n: self.n, terms }
    }

    /// Counit: the polynomial part `sum c x^a` over terms with `b = 0`.
    pub fn epsilon(&self) -> BTreeMap<Exps, Scalar> {
        self.terms
            .iter()
            .filter(|((_, b), _)| b.iter().all(|&e| e == 0))
            .map(|((a, _), c)| (a.clone(), c.clone()))
            .collect()
    }

    /// The antiautomorphism fixing `x_i` and sending `d_i` to `-d_i`.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), c) in &self.terms {
            let sign = if b.iter().sum::<u32>() % 2 == 0 { c.clone() } else { -c };
            let dpart = Self::monomial(vec![0; self.n], b.clone(), sign);
            let xpart = Self::monomial(a.clone(), vec![0; self.n], Scalar::one());
            out = out.add(&dpart.mul(&xpart));
        }
        out
    }

    /// Rewrites into right normal form `sum d^b x^a`, keyed by `(b, a)`.
    pub fn right_form(&self) -> BTreeMap<(Exps, Exps), Scalar> {
        // x^a d^b = sum_k (-1)^|k| C(b,k) a!/(a-k)! d^(b-k) x^(a-k)
        let mut out = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let bound: Vec<u32> = a.iter().zip(b).map(|(x, y)| *x.min(y)).collect();
            for k in below(&bound) {
                let mut coeff = (0..self.n).fold(c.clone(), |acc, i| &acc * &(&binom(b[i], k[i]) * &falling(a[i], k[i])));
                if k.iter().sum::<u32>() % 2 == 1 {
                    coeff = -&coeff;
                }
                let ds = b.iter().zip(&k).map(|(x, y)| x - y).collect();
                let xs = a.iter().zip(&k).map(|(x, y)| x - y).collect();
                add_into(&mut out, (ds, xs), coeff);
            }
        }
        prune(&mut out);
        out
    }
}

/// Blue tensor `x^a d^b (x) d^c`, keyed by `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylBlue {
    n: usize,
    terms: BTreeMap<(Exps, Exps, Exps), Scalar>,
}

/// Red tensor `d^b (x) x^a d^c`, keyed by `(b, a, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylRed {
    n: usize,
    terms: BTreeMap<(Exps, Exps, Exps), Scalar>,
}

impl WeylBlue {
    pub fn terms(&self) -> &BTreeMap<(Exps, Exps, Exps), Scalar> {
        &self.terms
    }

    /// `(h (x) h')`, moving the polynomial part of `h'` across.
    pub fn embed(h: &WeylElement, h2: &WeylElement) -> Self {
        let mut terms = BTreeMap::new();
        for ((a, b), c1) in &h.terms {
            for ((a2, b2), c2) in &h2.terms {
                // x^a d^b (x) x^a2 d^b2 = x^(a+a2) d^b (x) d^b2 by left/left balancing.
                add_into(&mut terms, (add_exps(a, a2), b.clone(), b2.clone()), c1 * c2);
            }
        }
        prune(&mut terms);
        WeylBlue { n: h.n, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for ((a, b, d), c1) in &self.terms {
            for ((a2, b2, d2), c2) in &other.terms {
                let lhs = WeylElement::monomial(a.clone(), b.clone(), c1 * c2);
                let prod = lhs.mul(&WeylElement::monomial(a2.clone(), b2.clone(), Scalar::one()));
                let dd = add_exps(d, d2);
                for ((x, y), c) in prod.terms {
                    add_into(&mut terms, (x, y, dd.clone()), c);
                }
            }
        }
        prune(&mut terms);
        WeylBlue { n: self.n, terms }
    }

    pub fn swap(&self) -> Self {
        let mut out = BTreeMap::new();
        for ((a, b, d), c) in &self.terms {
            // x^a d^b (x) d^d  =  d^d (x) x^a d^b  ->  x^a d^d (x) d^b
            add_into(&mut out, (a.clone(), d.clone(), b.clone()), c.clone());
        }
        prune(&mut out);
        WeylBlue { n: self.n, terms: out }
    }

    fn mul_slot1_right_x(&self, i: usize) -> Self {
        let x = WeylElement::x(self.n, i);
        let mut terms = BTreeMap::new();
        for ((a, b, d), c) in &self.terms {
            let p = WeylElement::monomial(a.clone(), b.clone(), c.clone()).mul(&x);
            for ((x2, y2), c2) in p.terms {
                add_into(&mut terms, (x2, y2, d.clone()), c2);
            }
        }
        prune(&mut terms);
        WeylBlue { n: self.n, terms }
    }

    fn mul_slot2_right_x(&self, i: usize) -> Self {
        let x = WeylElement::x(self.n, i);
        let mut out = Self { n: self.n, terms: BTreeMap::new() };
        for ((a, b, d), c) in &self.terms {
            let left = WeylElement::monomial(a.clone(), b.clone(), c.clone());
            let right = WeylElement::monomial(vec![0; self.n], d.clone(), Scalar::one()).mul(&x);
            let t = WeylBlue::embed(&left, &right);
            out = out.add(&t);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_into(&mut terms, k.clone(), c.clone());
        }
        prune(&mut terms);
        WeylBlue { n: self.n, terms }
    }

    /// Right multiplication by each `x_i` agrees on both slots.
    pub fn is_takeuchi(&self) -> bool {
        (0..self.n).all(|i| self.mul_slot1_right_x(i) == self.mul_slot2_right_x(i))
    }

    /// Applies `id (x) antipode` and normalizes into the red tensor.
    pub fn id_antipode(&self) -> WeylRed {
        let mut out = WeylRed { n: self.n, terms: BTreeMap::new() };
        for ((a, b, d), c) in &self.terms {
            let left = WeylElement::monomial(a.clone(), b.clone(), c.clone());
            let right = WeylElement::monomial(vec![0; self.n], d.clone(), Scalar::one()).antipode();
            out = out.add(&WeylRed::embed(&left, &right));
        }
        out
    }
}

impl WeylRed {
    pub fn terms(&self) -> &BTreeMap<(Exps, Exps, Exps), Scalar> {
        &self.terms
    }

    /// `(h (x) h')` with the right-form polynomial of `h` moved into slot two.
    pub fn embed(h: &WeylElement, h2: &WeylElement) -> Self {
        let mut terms = BTreeMap::new();
        for ((b, a), c1) in h.right_form() {
            let moved = WeylElement::monomial(a, vec![0; h.n], c1).mul(h2);
            for ((a2, d2), c2) in moved.terms {
                add_into(&mut terms, (b.clone(), a2, d2), c2);
            }
        }
        prune(&mut terms);
        WeylRed { n: h.n, terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_into(&mut terms, k.clone(), c.clone());
        }
        prune(&mut terms);
        WeylRed { n: self.n, terms }
    }

    /// Product `(a (x) b)(c (x) d) = ac (x) db`.
    pub fn mul_op(&self, other: &Self) -> Self {
        let mut out = WeylRed { n: self.n, terms: BTreeMap::new() };
        let z = vec![0; self.n];
        for ((b, a, d), c1) in &self.terms {
            for ((b2, a2, d2), c2) in &other.terms {
                let first = WeylElement::monomial(z.clone(), b.clone(), c1 * c2)
                    .mul(&WeylElement::monomial(z.clone(), b2.clone(), Scalar::one()));
                let second = WeylElement::monomial(a2.clone(), d2.clone(), Scalar::one())
                    .mul(&WeylElement::monomial(a.clone(), d.clone(), Scalar::one()));
                out = out.add(&WeylRed::embed(&first, &second));
            }
        }
        out
    }

    /// Left multiplication of slot one and right multiplication of slot
    /// two by each `x_i` agree.
    pub fn is_takeuchi(&self) -> bool {
        let z = vec![0; self.n];
        (0..self.n).all(|i| {
            let x = WeylElement::x(self.n, i);
            let mut left = WeylRed { n: self.n, terms: BTreeMap::new() };
            let mut right = left.clone();
            for ((b, a, d), c) in &self.terms {
                let s1 = WeylElement::monomial(z.clone(), b.clone(), c.clone());
                let s2 = WeylElement::monomial(a.clone(), d.clone(), Scalar::one());
                left = left.add(&WeylRed::embed(&x.mul(&s1), &s2));
                right = right.add(&WeylRed::embed(&s1, &s2.mul(&x)));
            }
            left == right
        })
    }
}

/// `x^a d^b  ->  x^a sum_k C(b,k) d^k (x) d^(b-k)`.
pub fn delta(h: &WeylElement) -> WeylBlue {
    let mut terms = BTreeMap::new();
    for ((a, b), c) in &h.terms {
        for k in below(b) {
            let coeff = (0..h.n).fold(c.clone(), |acc, i| &acc * &binom(b[i], k[i]));
            let rest = b.iter().zip(&k).map(|(x, y)| x - y).collect();
            add_into(&mut terms, (a.clone(), k, rest), coeff);
        }
    }
    prune(&mut terms);
    WeylBlue { n: h.n, terms }
}

/// Multiplicative extension of `x_i -> 1 (x) x_i`, `d_i -> d_i (x) 1 - 1 (x) d_i`.
pub fn red(h: &WeylElement) -> WeylRed {
    let n = h.n;
    let one = WeylElement::one(n);
    let mut out = WeylRed { n, terms: BTreeMap::new() };
    for ((a, b), c) in &h.terms {
        let mut acc = WeylRed::embed(&one, &one.scale(c));
        for i in 0..n {
            for _ in 0..a[i] {
                acc = acc.mul_op(&WeylRed::embed(&one, &WeylElement::x(n, i)));
            }
        }
        for i in 0..n {
            let di = WeylElement::d(n, i);
            let gen = WeylRed::embed(&di, &one).add(&WeylRed::embed(&one, &di.scale(&Scalar::from_int(-1))));
            for _ in 0..b[i] {
                acc = acc.mul_op(&gen);
            }
        }
        out = out.add(&acc);
    }
    out
}

/// All monomials `x^a d^b` in `n` variables with total degree at most `d`.
pub fn monomials(n: usize, d: u32) -> Vec<WeylElement> {
    let mut exps: Vec<Exps> = vec![Vec::new()];
    for _ in 0..2 * n {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    exps.into_iter()
        .map(|e| WeylElement::monomial(e[..n].to_vec(), e[n..].to_vec(), Scalar::one()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_commutation() {
        let p = WeylElement::d(1, 0).mul(&WeylElement::x(1, 0));
        let expect = WeylElement::x(1, 0).mul(&WeylElement::d(1, 0)).add(&WeylElement::one(1));
        assert_eq!(p, expect);
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn counit_kills_derivatives() {
        let h = WeylElement::monomial(vec![2, 0], vec![0, 1], Scalar::one());
        assert!(h.epsilon().is_empty());
        let x = WeylElement::monomial(vec![2, 0], vec![0, 0], Scalar::one());
        assert_eq!(x.epsilon().len(), 1);
    }

    #[test]
    fn structure_maps_on_monomials() {
        for n in 1..=2 {
            for h in monomials(n, 4) {
                assert!(delta(&h).is_takeuchi(), "{h:?}");
                assert!(red(&h).is_takeuchi(), "{h:?}");
                assert_eq!(red(&h), delta(&h).id_antipode(), "{h:?}");
                assert_eq!(delta(&h).swap(), delta(&h));
            }
        }
    }

    #[test]
    fn delta_multiplicative() {
        let ms = monomials(2, 2);
        for a in &ms {
            for b in &ms {
                assert_eq!(delta(&a.mul(b)), delta(a).mul(&delta(b)));
            }
        }
    }

    #[test]
    fn antipode_is_anti() {
        let ms = monomials(1, 3);
        for a in &ms {
            for b in &ms {
                assert_eq!(a.mul(b).antipode(), b.antipode().mul(&a.antipode()));
            }
        }
    }
}
