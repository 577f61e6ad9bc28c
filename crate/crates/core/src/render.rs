//! Text output for elements, tensors and relations.
//!
//! Nil Hecke elements are printed in the syntax accepted by
//! [`crate::expr`], longest basis elements first. Tensors are printed with
//! `(x)` as the tensor glyph after regrouping each slot over group elements
//! where that shortens the output; mixed relations use `∂_s` notation.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::coxeter::{CoxeterSystem, SubexpressionEmbedding, Word};
use crate::error::Result;
use crate::hopf::RelationReport;
use crate::nilhecke::{NhElement, NilHecke};
use crate::poly::Polynomial;
use crate::qstarw::QwElement;
use crate::tensor::{BlueTensor, RedTensor};

/// Basis element of a rendered slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// `d_w`; the identity prints as `1`.
    D(Word),
    /// The group element `w`.
    G(Word),
}

impl Atom {
    fn key(&self) -> (&Word, u8) {
        match self {
            Atom::D(w) => (w, 0),
            Atom::G(w) => (w, 1),
        }
    }

    pub fn render(&self, sys: &CoxeterSystem) -> String {
        match self {
            Atom::D(w) | Atom::G(w) if w.is_empty() => "1".into(),
            Atom::D(w) => letters(sys, w, "d"),
            Atom::G(w) => letters(sys, w, "w"),
        }
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn letters(sys: &CoxeterSystem, w: &Word, tag: &str) -> String {
    w.letters()
        .iter()
        .map(|&s| format!("{tag}[{}]", sys.generator_names()[s]))
        .collect::<Vec<_>>()
        .join("*")
}

/// `c * basis`, where `basis` is empty for the identity.
fn term(sys: &CoxeterSystem, c: &Polynomial, basis: &str) -> String {
    let coeff = sys.ring().render(c);
    if basis.is_empty() {
        return coeff;
    }
    if c.needs_parens() {
        format!("({coeff})*{basis}")
    } else if coeff == "1" {
        basis.to_string()
    } else if coeff == "-1" {
        format!("-{basis}")
    } else {
        format!("{coeff}*{basis}")
    }
}

fn join_terms(parts: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        match (i, p.strip_prefix('-')) {
            (0, _) => out.push_str(&p),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text of a nil Hecke element.
pub fn nil_hecke(sys: &CoxeterSystem, h: &NhElement) -> String {
    join_terms(h.terms().iter().rev().map(|(w, c)| {
        let basis = if w.is_empty() { String::new() } else { letters(sys, w, "d") };
        term(sys, c, &basis)
    }))
}

pub fn polynomial(sys: &CoxeterSystem, f: &Polynomial) -> String {
    sys.ring().render(f)
}

/// Writes `h` over `{d_w}` and group elements, replacing the leading
/// `d_w` term by a multiple of `w` whenever that strictly lowers the
/// number of printed monomials.
pub fn group_aware(nh: &NilHecke, h: &NhElement) -> Result<Vec<(Polynomial, Atom)>> {
    let mut rest = h.clone();
    let mut out = Vec::new();
    while let Some((w, c)) = rest.top_term() {
        let (w, c) = (w.clone(), c.clone());
        let plain_rest = rest.try_sub(&nh.d_word(&w).mul_poly_left(&c))?;
        let mut choice = None;
        if !w.is_empty() {
            let g = nh.group_element(&w);
            let lead = g.coefficient(&w);
            if let Ok(q) = c.exact_div(&lead) {
                let group_rest = rest.try_sub(&g.mul_poly_left(&q))?;
                if q.num_terms() + group_rest.size() < c.num_terms() + plain_rest.size() {
                    choice = Some((q, group_rest));
                }
            }
        }
        match choice {
            Some((q, next)) => {
                out.push((q, Atom::G(w)));
                rest = next;
            }
            None => {
                out.push((c, Atom::D(w)));
                rest = plain_rest;
            }
        }
    }
    Ok(out)
}

/// Collects `sum X_v (x) Y_v` into `(coefficient, first atom, second atom)`
/// triples, where the coefficient multiplies the first slot on the left.
fn tensor_triples(
    nh: &NilHecke,
    slots: BTreeMap<Word, NhElement>,
    move_right: bool,
) -> Result<Vec<(Polynomial, Atom, Atom)>> {
    // Regroup by the second-slot atom; its coefficient travels back to the
    // first slot (on the left for blue, on the right for red).
    let mut by_atom: Vec<(Atom, NhElement)> = Vec::new();
    for (v, x) in slots {
        for (c, atom) in group_aware(nh, &x)? {
            let first = if move_right {
                nh.mul(&nh.d_word(&v), &nh.weight(c))?
            } else {
                nh.d_word(&v).mul_poly_left(&c)
            };
            match by_atom.iter_mut().find(|(a, _)| *a == atom) {
                Some((_, acc)) => *acc = acc.try_add(&first)?,
                None => by_atom.push((atom, first)),
            }
        }
    }
    let mut triples = Vec::new();
    for (atom, first) in by_atom {
        for (c, a1) in group_aware(nh, &first)? {
            triples.push((c, a1, atom.clone()));
        }
    }
    triples.sort_by(|x, y| (&y.1, &y.2).cmp(&(&x.1, &x.2)));
    Ok(triples)
}

fn render_triples(sys: &CoxeterSystem, triples: &[(Polynomial, Atom, Atom)]) -> String {
    join_terms(triples.iter().map(|(c, a1, a2)| {
        let first = if *a1 == Atom::D(Word::identity()) {
            if c.num_terms() > 1 {
                format!("({})", polynomial(sys, c))
            } else {
                term(sys, c, "")
            }
        } else {
            term(sys, c, &a1.render(sys))
        };
        format!("{first} (x) {}", a2.render(sys))
    }))
}

pub fn blue_tensor(nh: &NilHecke, t: &BlueTensor) -> Result<String> {
    let triples = tensor_triples(nh, t.slot_two_elements(nh)?, false)?;
    Ok(render_triples(nh.system(), &triples))
}

pub fn red_tensor(nh: &NilHecke, t: &RedTensor) -> Result<String> {
    let triples = tensor_triples(nh, t.slot_two_elements(nh)?, true)?;
    Ok(render_triples(nh.system(), &triples))
}

/// Raw normal form of a blue tensor, `f*d_v (x) d_w` per entry.
pub fn blue_normal_form(sys: &CoxeterSystem, t: &BlueTensor) -> String {
    join_terms(t.terms().iter().rev().map(|((v, w), f)| {
        let first = term(sys, f, &if v.is_empty() { String::new() } else { letters(sys, v, "d") });
        format!("{first} (x) {}", Atom::D(w.clone()).render(sys))
    }))
}

/// Raw normal form of a red tensor, `d_v (x) f*d_w` per entry.
pub fn red_normal_form(sys: &CoxeterSystem, t: &RedTensor) -> String {
    join_terms(t.terms().iter().rev().map(|((v, w), f)| {
        let second = term(sys, f, &if w.is_empty() { String::new() } else { letters(sys, w, "d") });
        let (sign, second) = match second.strip_prefix('-') {
            Some(rest) => ("-", rest.to_string()),
            None => ("", second),
        };
        format!("{sign}{} (x) {second}", Atom::D(v.clone()).render(sys))
    }))
}

pub const BLUE_HEADER: &str = "# blue tensor: left/left balanced; coefficients may be moved to the left of slot one";
pub const RED_HEADER: &str = "# red tensor: right/left balanced; coefficients may be moved between slot one (right) and slot two (left)";

pub fn oracle_element(sys: &CoxeterSystem, x: &QwElement) -> String {
    join_terms(x.terms().iter().rev().map(|(w, f)| {
        let coeff = f.render(sys.ring().variables());
        let basis = Atom::G(w.clone()).render(sys);
        if w.is_empty() {
            coeff
        } else if coeff == "1" {
            basis
        } else {
            format!("({coeff})*{basis}")
        }
    }))
}

/// Mixed monomial in `∂_s` notation: a leading run of group letters is
/// written flush against the following `∂`, later runs are spaced.
pub fn mix_monomial(sys: &CoxeterSystem, e: &SubexpressionEmbedding) -> String {
    let names = sys.generator_names();
    let mut out = String::new();
    let mut prev_kept: Option<bool> = None;
    let mut leading_run = true;
    for (&s, &kept) in e.host.0.iter().zip(&e.mask) {
        match (prev_kept, kept) {
            (Some(false), true) => out.push(' '),
            (Some(true), false) if !leading_run => out.push(' '),
            _ => {}
        }
        if kept {
            out.push_str(&names[s]);
        } else {
            out.push_str("∂_");
            out.push_str(&names[s]);
            leading_run = false;
        }
        prev_kept = Some(kept);
    }
    out
}

/// `lhs = rhs` as sums of mixed monomials.
pub fn relation(sys: &CoxeterSystem, r: &RelationReport) -> String {
    let side = |terms: &[SubexpressionEmbedding]| {
        terms.iter().map(|e| mix_monomial(sys, e)).collect::<Vec<_>>().join(" + ")
    };
    format!("{} = {}", side(&r.lhs_terms), side(&r.rhs_terms))
}

/// Name of a relation, `R_1`, `R_st`, ...
pub fn relation_name(sys: &CoxeterSystem, w: &Word) -> String {
    format!("R_{}", sys.word_name(w))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::{Expression, SystemSpec};
    use crate::hopf::Hopf;

    fn setup(spec: SystemSpec) -> Hopf {
        let sys = Arc::new(CoxeterSystem::build(&spec).unwrap());
        Hopf::new(Arc::new(NilHecke::new(sys)))
    }

    #[test]
    fn element_text() {
        let h = setup(SystemSpec::s2());
        let nh = h.algebra();
        let sys = nh.system();
        let a = sys.ring().var(0);
        assert_eq!(nil_hecke(sys, &nh.mul(&nh.d(0), &nh.weight(a)).unwrap()), "-a*d[s] + 2");
        assert_eq!(nil_hecke(sys, &nh.zero()), "0");
        assert_eq!(nil_hecke(sys, &nh.gen_s(0)), "-a*d[s] + 1");
    }

    #[test]
    fn tensor_text() {
        let h = setup(SystemSpec::s2());
        let nh = h.algebra();
        let d = h.delta(&nh.d(0)).unwrap();
        assert_eq!(blue_tensor(nh, &d).unwrap(), "d[s] (x) w[s] + 1 (x) d[s]");
        let r = h.red_map(&nh.gen_s(0)).unwrap();
        assert_eq!(red_tensor(nh, &r).unwrap(), "w[s] (x) w[s]");
        assert_eq!(blue_normal_form(nh.system(), &d), "-a*d[s] (x) d[s] + d[s] (x) 1 + 1 (x) d[s]");
    }

    #[test]
    fn mix_text() {
        let sys = CoxeterSystem::build(&SystemSpec::dihedral(5)).unwrap();
        let host = Expression::alternating(0, 1, 7);
        // kept positions 2, 5, 6, 7 (one-based)
        let mask = vec![false, true, false, false, true, true, true];
        let e = SubexpressionEmbedding { host, mask };
        assert_eq!(mix_monomial(&sys, &e), "∂_s t ∂_s∂_t sts");
    }

    #[test]
    fn relation_text() {
        let h = setup(SystemSpec::dihedral(3));
        let sys = h.algebra().system().clone();
        let rels = h.mixed_relations(0, 1).unwrap();
        let texts: Vec<String> = rels.iter().map(|r| relation(&sys, r)).collect();
        assert!(texts.contains(&"s∂_t∂_s + ∂_s∂_t s = ∂_t s ∂_t".to_string()), "{texts:?}");
        assert!(texts.contains(&"st∂_s = ∂_t st".to_string()));
        assert!(texts.contains(&"∂_s∂_t∂_s = ∂_t∂_s∂_t".to_string()));
    }
}
