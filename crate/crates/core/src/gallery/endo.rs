//! The rank-one system compared with the endomorphism bialgebroid of
//! `R = k[a]` over the invariants `R' = k[a^2]`.
//!
//! `R` is free over `R'` on `{1, a}` with dual basis `{1*, a*}`: `1*` takes
//! the even part and `a*` the odd part divided by `a`. An endomorphism `h`
//! is `sum_i h(b_i) (x) b_i*`, and the comultiplication transports
//! `mu*(phi) = sum_{j,k} phi(b_j b_k) b_j* (x) b_k*`.

use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::nilhecke::{NhElement, NilHecke};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// Evaluates the dual basis functional `b_i*` on `x`.
pub fn dual(i: usize, x: &Polynomial) -> Polynomial {
    let terms = x.terms().filter_map(|(m, c)| {
        let e = m.exponents()[0];
        (e % 2 == i as u32).then(|| (Monomial::from_exponents(vec![e - i as u32]), c.clone()))
    });
    Polynomial::from_terms(1, terms)
}

fn basis(i: usize) -> Polynomial {
    Polynomial::monomial(1, Monomial::from_exponents(vec![i as u32]), Scalar::from_int(1))
}

/// One comultiplication term `r * (b_j* (x) b_k*)`.
#[derive(Debug, Clone)]
pub struct EndoTerm {
    pub coeff: Polynomial,
    pub j: usize,
    pub k: usize,
}

/// Comultiplication of `h` transported into `R (x) R* (x)_R R (x) R*`.
pub fn endo_delta(nh: &NilHecke, h: &NhElement) -> Result<Vec<EndoTerm>> {
    let mut out = Vec::new();
    for i in 0..2 {
        let image = nh.act(h, &basis(i))?;
        for j in 0..2 {
            for k in 0..2 {
                let structure = dual(i, &(&basis(j) * &basis(k)));
                let coeff = &image * &structure;
                if !coeff.is_zero() {
                    out.push(EndoTerm { coeff, j, k });
                }
            }
        }
    }
    Ok(out)
}

pub fn eval_endo(terms: &[EndoTerm], x: &Polynomial, y: &Polynomial) -> Polynomial {
    terms.iter().fold(Polynomial::zero(1), |acc, t| &acc + &(&t.coeff * &(&dual(t.j, x) * &dual(t.k, y))))
}

#[derive(Debug, Clone)]
pub struct EndoCase {
    pub label: String,
    /// Number of `(x, y)` pairs compared.
    pub pairs: usize,
    pub agree: bool,
    /// `h` is recovered from its dual basis decomposition.
    pub decomposes: bool,
}

#[derive(Debug, Clone)]
pub struct FrobeniusWitness {
    /// `(a * 1*)(a) = 1*(a^2)`; zero would make `1*` torsion.
    pub a_times_one_dual_at_a: Polynomial,
    pub one_dual_is_torsion: bool,
    /// `a * a* = 1*` on the truncation, so `a*` generates.
    pub a_dual_generates: bool,
}

#[derive(Debug, Clone)]
pub struct EndoReport {
    pub truncation: u32,
    pub cases: Vec<EndoCase>,
    pub frobenius: FrobeniusWitness,
}

impl EndoReport {
    pub fn agrees(&self) -> bool {
        self.cases.iter().all(|c| c.agree && c.decomposes)
    }
}

/// Compares the nil Hecke comultiplication with the endomorphism one on
/// `R_{<=trunc}` for the fixed fixtures and the given extra samples.
pub fn compare(hopf: &Hopf, extra: &[NhElement], trunc: u32) -> Result<EndoReport> {
    let nh = hopf.algebra();
    let sys = nh.system();
    if sys.rank() != 1 || sys.nvars() != 1 {
        return Err(Error::SystemMismatch("endomorphism comparison needs the rank-one system".into()));
    }
    let a = nh.weight(sys.ring().var(0));
    let d = nh.d(0);
    let mut cases = vec![
        ("a".to_string(), a.clone()),
        ("d".to_string(), d.clone()),
        ("s".to_string(), nh.gen_s(0)),
        ("d*a".to_string(), nh.mul(&d, &a)?),
    ];
    cases.extend(extra.iter().enumerate().map(|(i, h)| (format!("sample-{i}"), h.clone())));
    let inputs: Vec<Polynomial> = (0..=trunc as usize).map(basis).collect();

    let mut out = Vec::new();
    for (label, h) in cases {
        let endo = endo_delta(nh, &h)?;
        let blue = hopf.delta(&h)?;
        let mut agree = true;
        let mut decomposes = true;
        for x in &inputs {
            let direct = nh.act(&h, x)?;
            let rebuilt = (0..2).try_fold(Polynomial::zero(1), |acc, i| {
                Ok::<_, Error>(&acc + &(&nh.act(&h, &basis(i))? * &dual(i, x)))
            })?;
            decomposes &= direct == rebuilt;
            for y in &inputs {
                let mut nh_side = Polynomial::zero(1);
                for ((v, w), f) in blue.terms() {
                    let dv = nh.demazure_word(v, x);
                    let dw = nh.demazure_word(w, y);
                    nh_side = &nh_side + &(f * &(&dv * &dw));
                }
                agree &= nh_side == eval_endo(&endo, x, y);
            }
        }
        out.push(EndoCase { label, pairs: inputs.len() * inputs.len(), agree, decomposes });
    }

    let a_poly = basis(1);
    let at_a = dual(0, &(&a_poly * &a_poly));
    let a_dual_generates = inputs.iter().all(|x| dual(1, &(&a_poly * x)) == dual(0, x));
    Ok(EndoReport {
        truncation: trunc,
        cases: out,
        frobenius: FrobeniusWitness {
            one_dual_is_torsion: at_a.is_zero(),
            a_times_one_dual_at_a: at_a,
            a_dual_generates,
        },
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::{CoxeterSystem, SystemSpec};

    fn s2() -> Hopf {
        Hopf::new(Arc::new(NilHecke::new(Arc::new(CoxeterSystem::build(&SystemSpec::s2()).unwrap()))))
    }

    #[test]
    fn dual_basis_splits_parity() {
        let x = &(&basis(3) + &basis(2)) + &basis(0);
        assert_eq!(dual(0, &x), &basis(2) + &basis(0));
        assert_eq!(dual(1, &x), basis(2));
    }

    #[test]
    fn fixtures_agree() {
        let report = compare(&s2(), &[], 6).unwrap();
        assert_eq!(report.cases.len(), 4);
        assert!(report.agrees(), "{report:?}");
        assert_eq!(report.cases[0].pairs, 49);
    }

    #[test]
    fn one_dual_is_not_torsion() {
        let w = compare(&s2(), &[], 4).unwrap().frobenius;
        assert_eq!(w.a_times_one_dual_at_a, basis(2));
        assert!(!w.one_dual_is_torsion);
        assert!(w.a_dual_generates);
    }

    #[test]
    fn rejects_higher_rank() {
        let sys = Arc::new(CoxeterSystem::build(&SystemSpec::dihedral(3)).unwrap());
        let hopf = Hopf::new(Arc::new(NilHecke::new(sys)));
        assert!(compare(&hopf, &[], 2).is_err());
    }
}
