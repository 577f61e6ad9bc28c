//! Exact rank of the polynomial representation on a truncation.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::Result;
use crate::nilhecke::NilHecke;
use crate::poly::Monomial;
use crate::scalar::Scalar;

type Key = (usize, Monomial);
type Vector = BTreeMap<Key, Scalar>;

/// Row-reduced span of sparse vectors over the scalar field.
#[derive(Debug, Default)]
pub struct Echelon {
    rows: HashMap<Key, Vector>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and keeps it if independent.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        loop {
            let Some((pivot, lead)) = v.iter().find(|(k, _)| self.rows.contains_key(*k)).map(|(k, c)| (k.clone(), c.clone())) else {
                break;
            };
            let row = &self.rows[&pivot];
            for (k, c) in row {
                let e = v.entry(k.clone()).or_insert_with(Scalar::zero);
                *e = &*e - &(&lead * c);
            }
            v.retain(|_, c| !c.is_zero());
        }
        let Some((pivot, lead)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inverse().expect("nonzero pivot");
        let normalized: Vector = v.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        // Keep existing rows free of the new pivot.
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                for (k, d) in &normalized {
                    let e = row.entry(k.clone()).or_insert_with(Scalar::zero);
                    *e = &*e - &(&c * d);
                }
                row.retain(|_, c| !c.is_zero());
            }
        }
        self.rows.insert(pivot, normalized);
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub coefficient_degree: u32,
    pub truncation: u32,
    pub operators: usize,
    pub rank: usize,
}

impl FaithfulnessReport {
    pub fn full_rank(&self) -> bool {
        self.rank == self.operators
    }
}

/// Rank of `{m d_w : deg m <= coefficient_degree}` acting on `R_{<=truncation}`.
pub fn operator_rank(nh: &NilHecke, coefficient_degree: u32, truncation: u32) -> Result<FaithfulnessReport> {
    let sys = nh.system();
    let words = sys.enumerate(None)?;
    let coeffs = sys.ring().monomials_up_to(coefficient_degree);
    let inputs = sys.ring().monomials_up_to(truncation);
    let mut echelon = Echelon::default();
    let mut operators = 0;
    for w in &words {
        let images: Vec<_> = inputs
            .iter()
            .map(|x| nh.demazure_word(w, &crate::poly::Polynomial::monomial(nh.nvars(), x.clone(), Scalar::from_int(1))))
            .collect();
        for m in &coeffs {
            operators += 1;
            let mut v = Vector::new();
            for (i, img) in images.iter().enumerate() {
                for (mono, c) in img.terms() {
                    v.insert((i, mono.mul(m)), c.clone());
                }
            }
            echelon.insert(v);
        }
    }
    Ok(FaithfulnessReport { coefficient_degree, truncation, operators, rank: echelon.rank() })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::{CoxeterSystem, SystemSpec};

    fn nh(spec: SystemSpec) -> NilHecke {
        NilHecke::new(Arc::new(CoxeterSystem::build(&spec).unwrap()))
    }

    #[test]
    fn echelon_detects_dependence() {
        let k = |i| (i, Monomial::from_exponents(vec![0]));
        let mut e = Echelon::default();
        let v1: Vector = [(k(0), Scalar::from_int(1)), (k(1), Scalar::from_int(2))].into();
        let v2: Vector = [(k(0), Scalar::from_int(2)), (k(1), Scalar::from_int(4))].into();
        assert!(e.insert(v1));
        assert!(!e.insert(v2));
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn rank_one_full() {
        let r = operator_rank(&nh(SystemSpec::s2()), 4, 4).unwrap();
        assert_eq!(r.operators, 10);
        assert!(r.full_rank());
    }

    #[test]
    fn truncation_too_small_loses_top_operator() {
        // d_{w_o} kills everything below degree 3 in three variables.
        let r = operator_rank(&nh(SystemSpec::gl(3)), 0, 2).unwrap();
        assert_eq!(r.operators, 6);
        assert_eq!(r.rank, 5);
    }
}
