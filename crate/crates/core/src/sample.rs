//! Seeded random elements for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coxeter::Word;
use crate::error::Result;
use crate::nilhecke::{NhElement, NilHecke};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{Field, Scalar};

/// Sampling bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleParams {
    pub seed: u64,
    pub samples: usize,
    pub max_degree: u32,
    pub max_support: usize,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { seed: 1, samples: 50, max_degree: 3, max_support: 4 }
    }
}

/// Longest words drawn for infinite groups.
const INFINITE_WORD_CAP: usize = 4;

pub struct Sampler<'a> {
    nh: &'a NilHecke,
    rng: ChaCha8Rng,
    words: Vec<Word>,
    monomials: Vec<Monomial>,
    params: SampleParams,
}

impl<'a> Sampler<'a> {
    /// `salt` separates streams so that suites do not share samples.
    pub fn new(nh: &'a NilHecke, params: SampleParams, salt: u64) -> Result<Self> {
        let sys = nh.system();
        let words = if sys.is_finite() {
            sys.enumerate(None)?
        } else {
            sys.enumerate(Some(INFINITE_WORD_CAP))?
        };
        let monomials = sys.ring().monomials_up_to(params.max_degree);
        let seed = params.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        Ok(Sampler { nh, rng: ChaCha8Rng::seed_from_u64(seed), words, monomials, params })
    }

    pub fn scalar(&mut self) -> Scalar {
        let mut pick = || loop {
            let k = self.rng.gen_range(-3i64..=3);
            if k != 0 {
                return k;
            }
        };
        let a = Scalar::from_ratio(pick(), 1 + self.rng.gen_range(0..2));
        if self.nh.system().ring().field() == Field::Quadratic5 && self.rng.gen_bool(0.3) {
            let b = self.rng.gen_range(-1i64..=1);
            return &a + &(&Scalar::from_int(b) * &Scalar::sqrt5());
        }
        a
    }

    pub fn polynomial(&mut self) -> Polynomial {
        let n = self.nh.nvars();
        let count = self.rng.gen_range(1..=3);
        let mut f = Polynomial::zero(n);
        for _ in 0..count {
            let m = self.monomials.choose(&mut self.rng).expect("nonempty").clone();
            let c = self.scalar();
            f.add_term(m, c);
        }
        f
    }

    pub fn word(&mut self) -> Word {
        self.words.choose(&mut self.rng).expect("nonempty").clone()
    }

    pub fn element(&mut self) -> NhElement {
        let support = self.rng.gen_range(1..=self.params.max_support.max(1));
        let mut terms = Vec::with_capacity(support);
        for _ in 0..support {
            let w = self.word();
            let f = self.polynomial();
            terms.push((w, f));
        }
        self.nh.from_terms(terms).expect("sampled terms belong to the algebra")
    }

    pub fn elements(&mut self, count: usize) -> Vec<NhElement> {
        (0..count).map(|_| self.element()).collect()
    }

    pub fn pairs(&mut self, count: usize) -> Vec<(NhElement, NhElement)> {
        (0..count).map(|_| (self.element(), self.element())).collect()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::{CoxeterSystem, SystemSpec};

    #[test]
    fn deterministic_and_bounded() {
        let nh = NilHecke::new(Arc::new(CoxeterSystem::build(&SystemSpec::gl(3)).unwrap()));
        let p = SampleParams::default();
        let a = Sampler::new(&nh, p, 7).unwrap().elements(20);
        let b = Sampler::new(&nh, p, 7).unwrap().elements(20);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(&nh, p, 8).unwrap().elements(20));
        for h in &a {
            assert!(h.terms().len() <= p.max_support);
            assert!(h.max_degree().unwrap_or(0) <= p.max_degree);
        }
    }
}
