//! Structure maps of the nil Hecke Hopf algebroid.
//!
//! The comultiplication and the red (translation) map are fixed on
//! generators and extended multiplicatively along canonical words. Both
//! send `d_s` to the same coefficient table
//! `{(s,1): 1, (s,s): -alpha_s, (1,s): 1}`, read in the respective
//! tensor convention.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::One;

use crate::coxeter::{embedded_subexpressions, Expression, SubexpressionEmbedding, Word};
use crate::error::{Error, Result};
use crate::nilhecke::{NhElement, NilHecke};
use crate::poly::Polynomial;
use crate::qstarw::{QStarW, QwElement};
use crate::scalar::Scalar;
use crate::tensor::{BlueTensor, BlueTensorN, RedTensor};

pub struct Hopf {
    nh: Arc<NilHecke>,
    delta_cache: RwLock<HashMap<Word, BlueTensor>>,
    red_cache: RwLock<HashMap<Word, RedTensor>>,
}

impl std::fmt::Debug for Hopf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hopf").field("algebra", &self.nh).finish()
    }
}

fn generator_table(nh: &NilHecke, s: usize) -> Vec<((Word, Word), Polynomial)> {
    let n = nh.nvars();
    let sw = Word::new(vec![s]);
    vec![
        ((sw.clone(), Word::identity()), Polynomial::one(n)),
        ((sw.clone(), sw.clone()), -nh.system().simple_root(s)),
        ((Word::identity(), sw), Polynomial::one(n)),
    ]
}

impl Hopf {
    pub fn new(nh: Arc<NilHecke>) -> Self {
        Hopf { nh, delta_cache: RwLock::new(HashMap::new()), red_cache: RwLock::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &Arc<NilHecke> {
        &self.nh
    }

    /// `d_s (x) s + 1 (x) d_s`.
    pub fn delta_generator(&self, s: usize) -> BlueTensor {
        BlueTensor::from_terms(&self.nh, generator_table(&self.nh, s))
    }

    /// Product of generator coproducts along an arbitrary expression.
    pub fn delta_along(&self, e: &Expression) -> Result<BlueTensor> {
        let mut acc = BlueTensor::one(&self.nh);
        for &s in &e.0 {
            acc = acc.mul(&self.nh, &self.delta_generator(s), false)?;
        }
        Ok(acc)
    }

    /// Coproduct of `d_w` along the canonical word.
    pub fn delta_basis(&self, w: &Word) -> BlueTensor {
        if let Some(hit) = self.delta_cache.read().expect("cache poisoned").get(w) {
            return hit.clone();
        }
        let t = self.delta_along(&Expression(w.letters().to_vec())).expect("same system");
        self.delta_cache.write().expect("cache poisoned").insert(w.clone(), t.clone());
        t
    }

    pub fn delta(&self, h: &NhElement) -> Result<BlueTensor> {
        self.nh.check(h)?;
        let mut out = BlueTensor::zero(&self.nh);
        for (w, f) in h.terms() {
            out.absorb(self.delta_basis(w).mul_poly_left(f));
        }
        Ok(out)
    }

    pub fn counit(&self, h: &NhElement) -> Polynomial {
        self.nh.counit(h)
    }

    /// `d_s (x) s + 1 (x) d_s`, read as a red tensor.
    pub fn red_generator(&self, s: usize) -> RedTensor {
        RedTensor::from_terms(&self.nh, generator_table(&self.nh, s))
    }

    pub fn red_basis(&self, w: &Word) -> RedTensor {
        if let Some(hit) = self.red_cache.read().expect("cache poisoned").get(w) {
            return hit.clone();
        }
        let mut acc = RedTensor::one(&self.nh);
        for &s in w.letters() {
            acc = acc.mul_op(&self.nh, &self.red_generator(s), false).expect("same system");
        }
        self.red_cache.write().expect("cache poisoned").insert(w.clone(), acc.clone());
        acc
    }

    /// Red map, extended multiplicatively: `red(f d_w) = (1 (x) f) red(d_w)`.
    pub fn red_map(&self, h: &NhElement) -> Result<RedTensor> {
        self.nh.check(h)?;
        let mut out = RedTensor::zero(&self.nh);
        for (w, f) in h.terms() {
            let weight = RedTensor::from_terms(&self.nh, [((Word::identity(), Word::identity()), f.clone())]);
            out.absorb(weight.mul_op(&self.nh, &self.red_basis(w), false)?);
        }
        Ok(out)
    }

    /// `sum d_v (x) X_v -> sum Delta(d_v) (1 (x) X_v)`.
    pub fn galois(&self, t: &RedTensor) -> Result<BlueTensor> {
        let mut out = BlueTensor::zero(&self.nh);
        for (v, x) in t.slot_two_elements(&self.nh)? {
            out.absorb(self.delta_basis(&v).mul_slot2_right(&self.nh, &x)?);
        }
        Ok(out)
    }

    /// `(Delta (x) id) Delta(h)` and `(id (x) Delta) Delta(h)`.
    pub fn coassociativity_sides(&self, h: &NhElement) -> Result<(BlueTensorN, BlueTensorN)> {
        let d = self.delta(h)?;
        let mut left = BlueTensorN::zero(&self.nh);
        let mut right = BlueTensorN::zero(&self.nh);
        for ((v, w), f) in d.terms() {
            for ((a, b), g) in self.delta_basis(v).terms() {
                left.add_term(vec![a.clone(), b.clone(), w.clone()], f * g);
            }
            for ((a, b), g) in self.delta_basis(w).terms() {
                right.add_term(vec![v.clone(), a.clone(), b.clone()], f * g);
            }
        }
        Ok((left, right))
    }

    // ---- mixed dihedral relations -----------------------------------------

    /// Product over the host word: kept letters contribute the group
    /// generator, dropped letters the nil Coxeter generator.
    pub fn mix_monomial(&self, e: &SubexpressionEmbedding) -> Result<NhElement> {
        let factors: Vec<NhElement> = e
            .host
            .0
            .iter()
            .zip(&e.mask)
            .map(|(&s, &kept)| if kept { self.nh.gen_s(s) } else { self.nh.d(s) })
            .collect();
        self.nh.product(&factors)
    }

    /// Embeddings into `host` whose kept letters form a reduced word for
    /// `w`, ordered by kept positions.
    pub fn matching_embeddings(&self, host: &Expression, w: &Word) -> Result<Vec<SubexpressionEmbedding>> {
        let sys = self.nh.system();
        let mut out = Vec::new();
        for e in embedded_subexpressions(host) {
            let kept = e.kept();
            if sys.is_reduced(&kept)? && sys.canonical_word(&kept)? == *w {
                out.push(e);
            }
        }
        out.sort_by_key(|e| e.kept_positions());
        Ok(out)
    }

    pub fn mixed_relation(&self, s: usize, t: usize, w: &Word) -> Result<RelationReport> {
        let sys = self.nh.system();
        let m = sys.order(s, t).finite().ok_or(Error::InfiniteGroup)? as usize;
        if !sys.parabolic_elements(s, t)?.contains(w) {
            return Err(Error::NotInParabolic);
        }
        if *w == sys.parabolic_longest(s, t)? {
            return Err(Error::LongestElementExcluded);
        }
        let side = |host: Expression| -> Result<(Vec<SubexpressionEmbedding>, NhElement)> {
            let embeddings = self.matching_embeddings(&host, w)?;
            let mut sum = self.nh.zero();
            for e in &embeddings {
                sum = sum.try_add(&self.mix_monomial(e)?)?;
            }
            Ok((embeddings, sum))
        };
        let (lhs_terms, lhs) = side(Expression::alternating(s, t, m))?;
        let (rhs_terms, rhs) = side(Expression::alternating(t, s, m))?;
        Ok(RelationReport { s, t, w: w.clone(), equal: lhs == rhs, lhs_terms, rhs_terms, lhs, rhs })
    }

    /// Every relation for the pair, ordered by the element.
    pub fn mixed_relations(&self, s: usize, t: usize) -> Result<Vec<RelationReport>> {
        let sys = self.nh.system();
        let longest = sys.parabolic_longest(s, t)?;
        sys.parabolic_elements(s, t)?
            .iter()
            .filter(|w| **w != longest)
            .map(|w| self.mixed_relation(s, t, w))
            .collect()
    }

    // ---- antipode obstruction ------------------------------------------------

    /// Shows that no antipode is compatible with the red map for the
    /// one-variable rank-one system.
    pub fn antipode_obstruction(&self) -> Result<ObstructionReport> {
        let nh = &*self.nh;
        let sys = nh.system();
        if sys.rank() != 1 || sys.nvars() != 1 {
            return Err(Error::SystemMismatch(
                "the obstruction is computed for one generator acting on one variable".into(),
            ));
        }
        let s_elem = nh.gen_s(0);
        let alpha = sys.simple_root(0).clone();

        // red(s) against s (x) s
        let red_of_s = self.red_map(&s_elem)?;
        let s_tensor_s = RedTensor::embed(nh, &s_elem, &s_elem)?;
        let red_is_s_tensor_s = red_of_s == s_tensor_s;

        // s = sum_v d_v g_v, so s (x) S(s) = sum_v d_v (x) g_v S(s); the
        // identity slot determines S(s) once g_1 is a unit.
        let right = nh.right_form(&s_elem);
        let slots = red_of_s.slot_two_elements(nh)?;
        let g1 = right
            .get(&Word::identity())
            .and_then(Polynomial::as_constant)
            .ok_or_else(|| Error::InconsistentSystem("identity coefficient of s is not a unit".into()))?;
        let unit_slot = slots.get(&Word::identity()).cloned().unwrap_or_else(|| nh.zero());
        let forced = unit_slot.scale(&(Scalar::one() / g1));
        let forced_consistent = right.iter().all(|(v, g)| {
            let slot = slots.get(v).cloned().unwrap_or_else(|| nh.zero());
            slot == forced.mul_poly_left(g)
        }) && slots.keys().all(|v| right.contains_key(v));
        let forced_equals_s = forced == s_elem;

        // S fixes alpha and s = 1 - alpha d, so S(d) alpha = alpha d. Acting
        // on alpha and using that alpha^2 is invariant:
        // alpha^2 * S(d)(1) = alpha * d(alpha).
        let invariant = &alpha * &alpha;
        let invariant_ok = sys.is_invariant(&invariant);
        let alpha_d = nh.d(0).mul_poly_left(&alpha);
        let target = nh.act(&alpha_d, &alpha)?;
        let solution = target.exact_div(&invariant);
        let unsolvable = matches!(solution, Err(Error::DivisionNotExact));
        let target_degree = target.degree().unwrap_or(0);
        let factor_degree = invariant.degree().unwrap_or(0);
        let degree_certificate = !target.is_zero() && target_degree < factor_degree;

        // Over the fraction field the antipode exists and leaves NH.
        let q = QStarW::new(sys.clone());
        let qw_antipode_of_d = q.antipode(&q.embed(&nh.d(0))?);
        let qw_antipode_in_nh = q.in_image_of_nh(nh, &qw_antipode_of_d)?;

        Ok(ObstructionReport {
            red_of_s,
            red_is_s_tensor_s,
            forced_antipode_of_s: forced,
            forced_equals_s,
            forced_consistent,
            equation_target: target,
            equation_factor: invariant,
            factor_invariant: invariant_ok,
            unsolvable,
            degree_certificate,
            qw_antipode_of_d,
            qw_antipode_in_nh,
        })
    }
}

/// Both sides of one mixed relation.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub s: usize,
    pub t: usize,
    pub w: Word,
    pub lhs_terms: Vec<SubexpressionEmbedding>,
    pub rhs_terms: Vec<SubexpressionEmbedding>,
    pub lhs: NhElement,
    pub rhs: NhElement,
    pub equal: bool,
}

/// Witnesses for the missing antipode.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub red_of_s: RedTensor,
    pub red_is_s_tensor_s: bool,
    /// `S(s)` read off the identity slot of `red(s)`.
    pub forced_antipode_of_s: NhElement,
    pub forced_equals_s: bool,
    /// The remaining slots agree with the forced value.
    pub forced_consistent: bool,
    /// `alpha^2 * p = equation_target` must hold for `p = S(d)(1)`.
    pub equation_target: Polynomial,
    pub equation_factor: Polynomial,
    pub factor_invariant: bool,
    pub unsolvable: bool,
    /// Nonzero target of smaller degree than the factor.
    pub degree_certificate: bool,
    pub qw_antipode_of_d: QwElement,
    pub qw_antipode_in_nh: bool,
}

impl ObstructionReport {
    pub fn holds(&self) -> bool {
        self.red_is_s_tensor_s
            && self.forced_equals_s
            && self.forced_consistent
            && self.factor_invariant
            && self.unsolvable
            && self.degree_certificate
            && !self.qw_antipode_in_nh
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterSystem, SystemSpec};

    fn hopf(spec: SystemSpec) -> Hopf {
        let sys = Arc::new(CoxeterSystem::build(&spec).unwrap());
        Hopf::new(Arc::new(NilHecke::new(sys)))
    }

    #[test]
    fn coproduct_of_weight() {
        let h = hopf(SystemSpec::dihedral(3));
        let nh = h.algebra();
        let f = nh.system().ring().var(1);
        let d = h.delta(&nh.weight(f.clone())).unwrap();
        assert_eq!(d, BlueTensor::one(nh).mul_poly_left(&f));
    }

    #[test]
    fn coproduct_is_multiplicative_on_generators() {
        let h = hopf(SystemSpec::dihedral(4));
        let nh = h.algebra();
        let a = nh.system().ring().var(0);
        let prod = nh.mul(&nh.d(0), &nh.weight(a.clone())).unwrap();
        let lhs = h.delta(&prod).unwrap();
        let rhs = h.delta(&nh.d(0)).unwrap().mul(nh, &h.delta(&nh.weight(a)).unwrap(), true).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn galois_inverts_red_on_generator() {
        let h = hopf(SystemSpec::s2());
        let nh = h.algebra();
        let r = h.red_map(&nh.d(0)).unwrap();
        assert_eq!(h.galois(&r).unwrap(), BlueTensor::embed(nh, &nh.d(0), &nh.one()).unwrap());
    }

    #[test]
    fn galois_inverts_red_on_length_two() {
        let h = hopf(SystemSpec::dihedral(3));
        let nh = h.algebra();
        let st = nh.mul(&nh.d(0), &nh.d(1)).unwrap();
        let r = h.red_map(&st).unwrap();
        assert_eq!(h.galois(&r).unwrap(), BlueTensor::embed(nh, &st, &nh.one()).unwrap());
    }

    #[test]
    fn red_of_group_generator() {
        let h = hopf(SystemSpec::s2());
        let nh = h.algebra();
        let s = nh.gen_s(0);
        assert_eq!(h.red_map(&s).unwrap(), RedTensor::embed(nh, &s, &s).unwrap());
    }

    #[test]
    fn coassociative_on_generator() {
        let h = hopf(SystemSpec::dihedral(3));
        let (l, r) = h.coassociativity_sides(&h.algebra().d(0)).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.terms().len(), 7);
    }

    #[test]
    fn relation_counts() {
        for m in 2..=6u32 {
            let h = hopf(SystemSpec::dihedral(m));
            let rels = h.mixed_relations(0, 1).unwrap();
            assert_eq!(rels.len(), 2 * m as usize - 1);
            assert!(rels.iter().all(|r| r.equal), "m = {m}");
        }
    }

    #[test]
    fn longest_element_rejected() {
        let h = hopf(SystemSpec::dihedral(3));
        let wo = h.algebra().system().parabolic_longest(0, 1).unwrap();
        assert!(matches!(h.mixed_relation(0, 1, &wo), Err(Error::LongestElementExcluded)));
    }

    #[test]
    fn obstruction_holds_for_s2() {
        let h = hopf(SystemSpec::s2());
        let report = h.antipode_obstruction().unwrap();
        assert!(report.holds(), "{report:?}");
        assert_eq!(report.equation_target, h.algebra().system().ring().var(0).scale(&Scalar::from_int(2)));
        let other = hopf(SystemSpec::dihedral(3));
        assert!(other.antipode_obstruction().is_err());
    }
}
