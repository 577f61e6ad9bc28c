//! The matrix algebra `M_n(k)` as a Hopf algebroid over its diagonal `k^n`.
//!
//! Blue tensors are spanned by `E_ij (x) E_il`, red tensors by
//! `E_ij (x) E_jl`; both are keyed by `(i, j, l)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type Key = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatTensor {
    n: usize,
    terms: BTreeMap<Key, Scalar>,
}

impl MatTensor {
    fn new(n: usize) -> Self {
        MatTensor { n, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, k: Key, c: Scalar) {
        let slot = self.terms.entry(k).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Key, Scalar> {
        &self.terms
    }
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, entries: vec![vec![Scalar::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i][i] = Scalar::one();
        }
        m
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[i][j] = Scalar::one();
        m
    }

    /// Diagonal idempotent `e_i`.
    pub fn idempotent(n: usize, i: usize) -> Self {
        Self::unit(n, i, i)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[i][j] = &m.entries[i][j] + &other.entries[i][j];
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    m.entries[i][j] = &m.entries[i][j] + &(&self.entries[i][k] * &other.entries[k][j]);
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[j][i] = self.entries[i][j].clone();
            }
        }
        m
    }

    fn units(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i, j, c)))
            .filter(|(_, _, c)| !c.is_zero())
    }

    /// Counit as a vector in `k^n`: `E_ij -> e_i`.
    pub fn epsilon(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.n];
        for (i, _, c) in self.units() {
            v[i] = &v[i] + c;
        }
        v
    }

    /// `r -> epsilon(h r)` as a linear map of `k^n`.
    pub fn rho_epsilon(&self, r: &[Scalar]) -> Vec<Scalar> {
        let diag = Matrix {
            n: self.n,
            entries: (0..self.n)
                .map(|i| (0..self.n).map(|j| if i == j { r[i].clone() } else { Scalar::zero() }).collect())
                .collect(),
        };
        self.mul(&diag).epsilon()
    }
}

pub fn delta(h: &Matrix) -> MatTensor {
    let mut t = MatTensor::new(h.n);
    for (i, j, c) in h.units() {
        t.add_term((i, j, j), c.clone());
    }
    t
}

pub fn red(h: &Matrix) -> MatTensor {
    let mut t = MatTensor::new(h.n);
    for (i, j, c) in h.units() {
        t.add_term((i, j, i), c.clone());
    }
    t
}

/// `E_ij (x) E_il -> E_ij (x) E_li`, which survives in the red tensor only for `l = j`.
pub fn id_transpose(t: &MatTensor) -> MatTensor {
    let mut out = MatTensor::new(t.n);
    for (&(i, j, l), c) in &t.terms {
        if l == j {
            out.add_term((i, j, i), c.clone());
        }
    }
    out
}

pub fn blue_mul(a: &MatTensor, b: &MatTensor) -> MatTensor {
    let mut out = MatTensor::new(a.n);
    for (&(i, j, l), c) in &a.terms {
        for (&(p, q, r), d) in &b.terms {
            if j == p && l == p {
                out.add_term((i, q, r), c * d);
            }
        }
    }
    out
}

pub fn red_mul_op(a: &MatTensor, b: &MatTensor) -> MatTensor {
    let mut out = MatTensor::new(a.n);
    for (&(i, j, l), c) in &a.terms {
        for (&(p, q, r), d) in &b.terms {
            // E_ij E_pq (x) E_qr E_jl
            if j == p && r == j {
                out.add_term((i, q, l), c * d);
            }
        }
    }
    out
}

/// `Delta(h)(1 (x) h')` on a red tensor.
pub fn galois(t: &MatTensor) -> MatTensor {
    let mut out = MatTensor::new(t.n);
    for (&(i, j, l), c) in &t.terms {
        // E_ij (x) E_ij E_jl = E_ij (x) E_il
        out.add_term((i, j, l), c.clone());
    }
    out
}

/// `h (x) 1` in the blue tensor.
pub fn right_one(h: &Matrix) -> MatTensor {
    let mut t = MatTensor::new(h.n);
    for (i, j, c) in h.units() {
        t.add_term((i, j, i), c.clone());
    }
    t
}

/// Coassociativity sides keyed by `(i, j, l, p)` for `E_ij (x) E_il (x) E_ip`.
pub fn coassociativity(h: &Matrix) -> (BTreeMap<[usize; 4], Scalar>, BTreeMap<[usize; 4], Scalar>) {
    let d = delta(h);
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (&(i, j, l), c) in &d.terms {
        for (&(a, b, e), c1) in &delta(&Matrix::unit(h.n, i, j)).terms {
            // (Delta (x) id): E_ab (x) E_ae (x) E_il with a = i.
            if a == i {
                *left.entry([a, b, e, l]).or_insert_with(Scalar::zero) += &(c * c1);
            }
        }
        for (&(a, b, e), c2) in &delta(&Matrix::unit(h.n, i, l)).terms {
            // (id (x) Delta): E_ij (x) E_ab (x) E_ae with a = i.
            if a == i {
                *right.entry([i, j, b, e]).or_insert_with(Scalar::zero) += &(c * c2);
            }
        }
    }
    left.retain(|_, c: &mut Scalar| !c.is_zero());
    right.retain(|_, c: &mut Scalar| !c.is_zero());
    (left, right)
}

/// Applies the counit to slot one (`true`) or slot two and returns the matrix.
pub fn counit_contract(t: &MatTensor, first: bool) -> Matrix {
    let mut m = Matrix::zero(t.n);
    for (&(i, j, l), c) in &t.terms {
        // epsilon(E_ij) E_il = E_il;  epsilon(E_il) E_ij = E_ij.
        let (r, s) = if first { (i, l) } else { (i, j) };
        m.entries[r][s] = &m.entries[r][s] + c;
    }
    m
}

/// Blue Takeuchi condition against every `e_k`.
pub fn is_takeuchi_blue(t: &MatTensor) -> bool {
    (0..t.n).all(|k| {
        let slot1: BTreeMap<_, _> = t.terms.iter().filter(|((_, j, _), _)| *j == k).collect();
        let slot2: BTreeMap<_, _> = t.terms.iter().filter(|((_, _, l), _)| *l == k).collect();
        slot1 == slot2
    })
}

/// Red Takeuchi condition against every `e_k`.
pub fn is_takeuchi_red(t: &MatTensor) -> bool {
    (0..t.n).all(|k| {
        let slot1: BTreeMap<_, _> = t.terms.iter().filter(|((i, _, _), _)| *i == k).collect();
        let slot2: BTreeMap<_, _> = t.terms.iter().filter(|((_, _, l), _)| *l == k).collect();
        slot1 == slot2
    })
}

/// Basis of `M_n`.
pub fn units(n: usize) -> Vec<Matrix> {
    (0..n).flat_map(|i| (0..n).map(move |j| Matrix::unit(n, i, j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_maps_on_units() {
        let e12 = Matrix::unit(2, 0, 1);
        assert_eq!(delta(&e12).terms().keys().collect::<Vec<_>>(), vec![&(0, 1, 1)]);
        assert_eq!(e12.epsilon(), vec![Scalar::one(), Scalar::zero()]);
        let e2 = vec![Scalar::zero(), Scalar::one()];
        assert_eq!(e12.rho_epsilon(&e2), vec![Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn axioms_hold() {
        for n in 2..=4 {
            for h in units(n) {
                let (l, r) = coassociativity(&h);
                assert_eq!(l, r);
                assert_eq!(counit_contract(&delta(&h), true), h);
                assert_eq!(counit_contract(&delta(&h), false), h);
                assert!(is_takeuchi_blue(&delta(&h)));
                assert!(is_takeuchi_red(&red(&h)));
                assert_eq!(galois(&red(&h)), right_one(&h));
                assert_eq!(id_transpose(&delta(&h)), red(&h));
                for g in units(n) {
                    assert_eq!(delta(&h.mul(&g)), blue_mul(&delta(&h), &delta(&g)));
                    assert_eq!(red(&h.mul(&g)), red_mul_op(&red(&h), &red(&g)));
                    assert_eq!(h.mul(&g).transpose(), g.transpose().mul(&h.transpose()));
                }
            }
        }
    }

    #[test]
    fn takeuchi_rejects_plain_tensors() {
        let mut t = MatTensor::new(2);
        t.add_term((0, 0, 1), Scalar::one());
        assert!(!is_takeuchi_blue(&t));
    }
}
