//! Coxeter systems realized through an exact reflection representation.
//!
//! A system carries two linear representations: the action on the span of
//! the polynomial variables (used to act on polynomials) and the action on
//! the span of the simple roots (used to decide descents). Group elements
//! are identified by their lexicographically smallest reduced word, which
//! is read off from the root action by repeatedly peeling off the smallest
//! left descent. Words are never compared by rewriting.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::LinearAction;
use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::scalar::{Field, Scalar};

/// Default ceiling for full enumerations.
pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

/// Order `m_st` of a product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidOrder {
    Finite(u32),
    Infinite,
}

impl BraidOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            BraidOrder::Finite(m) => Some(m),
            BraidOrder::Infinite => None,
        }
    }
}

impl fmt::Display for BraidOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidOrder::Finite(m) => write!(f, "{m}"),
            BraidOrder::Infinite => f.write_str("inf"),
        }
    }
}

/// A finite sequence of generator indices.
///
/// Ordered by length first, then lexicographically; this is the order in
/// which basis elements are listed everywhere.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Possibly non-reduced expression over the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Expression(pub Vec<usize>);

impl Expression {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The alternating expression `s t s ...` with `len` letters.
    pub fn alternating(s: usize, t: usize, len: usize) -> Self {
        Expression((0..len).map(|i| if i % 2 == 0 { s } else { t }).collect())
    }
}

/// A choice of letters kept from a host expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubexpressionEmbedding {
    pub host: Expression,
    /// `true` where the host letter is kept.
    pub mask: Vec<bool>,
}

impl SubexpressionEmbedding {
    pub fn kept(&self) -> Expression {
        Expression(
            self.host.0.iter().zip(&self.mask).filter(|(_, &k)| k).map(|(&s, _)| s).collect(),
        )
    }

    pub fn kept_positions(&self) -> Vec<usize> {
        self.mask.iter().enumerate().filter(|(_, &k)| k).map(|(i, _)| i).collect()
    }
}

/// All `2^n` embeddings of subexpressions of `host`, from keeping every
/// letter down to keeping none.
pub fn embedded_subexpressions(host: &Expression) -> Vec<SubexpressionEmbedding> {
    let n = host.len();
    assert!(n < 32, "host expression too long to enumerate");
    (0..(1u32 << n))
        .rev()
        .map(|code| SubexpressionEmbedding {
            host: host.clone(),
            mask: (0..n).map(|j| code & (1 << (n - 1 - j)) != 0).collect(),
        })
        .collect()
}

/// Root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coeffs: Vec<Scalar>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative()) && self.coeffs.iter().any(|c| !c.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        self.coeffs.iter().any(Scalar::is_negative)
    }
}

/// How the simple roots and coroots are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum PairingSpec {
    /// Canonical choice from the Coxeter matrix; see [`geometric_pairing`].
    Geometric,
    /// Explicit matrix with entry `(s, t)` equal to `<alpha_s, alpha_t^vee>`.
    Explicit(Vec<Vec<Scalar>>),
    /// Symmetric group acting on `x_1..x_n` by permutations.
    GlN(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    pub generators: Vec<String>,
    pub orders: Vec<Vec<BraidOrder>>,
    pub pairing: PairingSpec,
    pub field: Field,
    pub finite: bool,
    /// Variable names; defaults to `a1..ak`, or `x1..xn` for `gl(n)`.
    pub variables: Option<Vec<String>>,
}

impl SystemSpec {
    /// Rank-one system `{1, s}` acting on one variable `a`.
    pub fn s2() -> Self {
        SystemSpec {
            generators: vec!["s".into()],
            orders: vec![vec![BraidOrder::Finite(1)]],
            pairing: PairingSpec::Geometric,
            field: Field::Rational,
            finite: true,
            variables: Some(vec!["a".into()]),
        }
    }

    /// Dihedral group of order `2m` on generators `s, t` with variables
    /// `a, b`. The field is chosen large enough for `m`.
    pub fn dihedral(m: u32) -> Self {
        let order = if m == 0 { BraidOrder::Infinite } else { BraidOrder::Finite(m) };
        SystemSpec {
            generators: vec!["s".into(), "t".into()],
            orders: vec![vec![BraidOrder::Finite(1), order], vec![order, BraidOrder::Finite(1)]],
            pairing: PairingSpec::Geometric,
            field: if m == 5 { Field::Quadratic5 } else { Field::Rational },
            finite: m != 0,
            variables: Some(vec!["a".into(), "b".into()]),
        }
    }

    /// `S_n` acting on `x_1..x_n`, generators named `1..n-1`.
    pub fn gl(n: usize) -> Self {
        assert!(n >= 2, "gl(n) needs n >= 2");
        let r = n - 1;
        let orders = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        BraidOrder::Finite(match i.abs_diff(j) {
                            0 => 1,
                            1 => 3,
                            _ => 2,
                        })
                    })
                    .collect()
            })
            .collect();
        SystemSpec {
            generators: (1..n).map(|i| i.to_string()).collect(),
            orders,
            pairing: PairingSpec::GlN(n),
            field: Field::Rational,
            finite: true,
            variables: None,
        }
    }
}

/// Default `<alpha_s, alpha_t^vee>` for a pair with order `m`, returned as
/// `(a_st, a_ts)` for `s` declared before `t`.
///
/// Uses the symmetric values `-2cos(pi/m)` when they lie in the field and
/// the crystallographic values otherwise (`m = 4, 6`), which give the same
/// reflection group up to rescaling roots.
pub fn geometric_pairing(m: BraidOrder, field: Field) -> Result<(Scalar, Scalar)> {
    let pair = |a: i64, b: i64| Ok((Scalar::from_int(a), Scalar::from_int(b)));
    match m {
        BraidOrder::Infinite => pair(-2, -2),
        BraidOrder::Finite(2) => pair(0, 0),
        BraidOrder::Finite(3) => pair(-1, -1),
        BraidOrder::Finite(4) => pair(-1, -2),
        BraidOrder::Finite(6) => pair(-1, -3),
        BraidOrder::Finite(5) if field == Field::Quadratic5 => {
            // -2cos(pi/5) = -(1 + sqrt5)/2
            let c = -(&(&Scalar::one() + &Scalar::sqrt5()) / &Scalar::from_int(2));
            Ok((c.clone(), c))
        }
        BraidOrder::Finite(m) => {
            Err(Error::UnsupportedField { m: m.to_string(), field: field.to_string() })
        }
    }
}

/// Group element with its action on the variable span.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    word: Word,
    action: LinearAction,
}

impl GroupElement {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn action(&self) -> &LinearAction {
        &self.action
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({:?})", self.word)
    }
}

pub struct CoxeterSystem {
    id: u64,
    names: Vec<String>,
    orders: Vec<Vec<BraidOrder>>,
    pairing: Vec<Vec<Scalar>>,
    ring: PolyRing,
    finite: bool,
    gl_preset: Option<usize>,
    roots: Vec<Polynomial>,
    coroots: Vec<Vec<Scalar>>,
    var_action: Vec<LinearAction>,
    root_action: Vec<LinearAction>,
    max_elements: usize,
    left_cache: RwLock<HashMap<(usize, Word), (Word, bool)>>,
    reflect_cache: RwLock<HashMap<(usize, Monomial), (Polynomial, Polynomial)>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("generators", &self.names)
            .field("orders", &self.orders)
            .field("variables", &self.ring.variables())
            .field("field", &self.ring.field())
            .finish()
    }
}

impl CoxeterSystem {
    pub fn build(spec: &SystemSpec) -> Result<Self> {
        let r = spec.generators.len();
        if r == 0 {
            return Err(Error::InconsistentSystem("no generators".into()));
        }
        for (i, g) in spec.generators.iter().enumerate() {
            if spec.generators[..i].contains(g) {
                return Err(Error::InconsistentSystem(format!("duplicate generator `{g}`")));
            }
        }
        if spec.orders.len() != r || spec.orders.iter().any(|row| row.len() != r) {
            return Err(Error::InconsistentSystem("Coxeter matrix has the wrong shape".into()));
        }
        for s in 0..r {
            if spec.orders[s][s] != BraidOrder::Finite(1) {
                return Err(Error::InconsistentSystem("diagonal Coxeter entries must be 1".into()));
            }
            for t in 0..r {
                if spec.orders[s][t] != spec.orders[t][s] {
                    return Err(Error::InconsistentSystem("Coxeter matrix is not symmetric".into()));
                }
                if s != t {
                    match spec.orders[s][t] {
                        BraidOrder::Finite(m) if m < 2 => {
                            return Err(Error::InconsistentSystem(format!(
                                "m_st = {m} for distinct generators"
                            )))
                        }
                        BraidOrder::Finite(m) if ![2, 3, 4, 5, 6].contains(&m) => {
                            return Err(Error::UnsupportedField {
                                m: m.to_string(),
                                field: spec.field.to_string(),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }

        let pairing: Vec<Vec<Scalar>> = match &spec.pairing {
            PairingSpec::Explicit(p) => {
                if p.len() != r || p.iter().any(|row| row.len() != r) {
                    return Err(Error::InconsistentSystem("pairing has the wrong shape".into()));
                }
                p.clone()
            }
            PairingSpec::Geometric => {
                let mut p = vec![vec![Scalar::zero(); r]; r];
                for s in 0..r {
                    p[s][s] = Scalar::from_int(2);
                    for t in (s + 1)..r {
                        let (a, b) = geometric_pairing(spec.orders[s][t], spec.field)?;
                        p[s][t] = a;
                        p[t][s] = b;
                    }
                }
                p
            }
            PairingSpec::GlN(n) => {
                if *n != r + 1 {
                    return Err(Error::InconsistentSystem(format!(
                        "gl({n}) needs {} generators, got {r}",
                        n - 1
                    )));
                }
                let mut p = vec![vec![Scalar::zero(); r]; r];
                for s in 0..r {
                    for t in 0..r {
                        p[s][t] = Scalar::from_int(match s.abs_diff(t) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        });
                    }
                }
                p
            }
        };
        for row in &pairing {
            for x in row {
                if !spec.field.contains(x) {
                    return Err(Error::UnsupportedField {
                        m: "pairing".into(),
                        field: spec.field.to_string(),
                    });
                }
            }
        }
        for s in 0..r {
            if pairing[s][s] != Scalar::from_int(2) {
                return Err(Error::InconsistentSystem("pairing diagonal must be 2".into()));
            }
        }

        // Roots and coroots in variable coordinates.
        let (nvars, roots_vec, coroots): (usize, Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) =
            match spec.pairing {
                PairingSpec::GlN(n) => {
                    let mut roots = Vec::new();
                    let mut coroots = Vec::new();
                    for i in 0..r {
                        let mut a = vec![Scalar::zero(); n];
                        a[i] = Scalar::one();
                        a[i + 1] = -Scalar::one();
                        roots.push(a.clone());
                        coroots.push(a);
                    }
                    (n, roots, coroots)
                }
                _ => {
                    let roots = (0..r)
                        .map(|s| (0..r).map(|j| if j == s { Scalar::one() } else { Scalar::zero() }).collect())
                        .collect();
                    // <alpha_j, alpha_s^vee> as a functional on the basis alpha_j.
                    let coroots = (0..r).map(|s| (0..r).map(|j| pairing[j][s].clone()).collect()).collect();
                    (r, roots, coroots)
                }
            };

        let variables = match &spec.variables {
            Some(v) => v.clone(),
            None => match spec.pairing {
                PairingSpec::GlN(n) => (1..=n).map(|i| format!("x{i}")).collect(),
                _ => (1..=r).map(|i| format!("a{i}")).collect(),
            },
        };
        if variables.len() != nvars {
            return Err(Error::InconsistentSystem(format!(
                "expected {nvars} variable names, got {}",
                variables.len()
            )));
        }
        let ring = PolyRing::new(variables, spec.field)?;

        let var_action: Vec<LinearAction> = (0..r)
            .map(|s| {
                LinearAction::from_columns(
                    (0..nvars)
                        .map(|j| {
                            let c = &coroots[s][j];
                            (0..nvars)
                                .map(|i| {
                                    let e = if i == j { Scalar::one() } else { Scalar::zero() };
                                    &e - &(c * &roots_vec[s][i])
                                })
                                .collect()
                        })
                        .collect(),
                )
            })
            .collect();
        let root_action: Vec<LinearAction> = (0..r)
            .map(|s| {
                LinearAction::from_columns(
                    (0..r)
                        .map(|j| {
                            (0..r)
                                .map(|i| {
                                    let e = if i == j { Scalar::one() } else { Scalar::zero() };
                                    if i == s {
                                        &e - &pairing[j][s]
                                    } else {
                                        e
                                    }
                                })
                                .collect()
                        })
                        .collect(),
                )
            })
            .collect();

        for s in 0..r {
            if !var_action[s].mul(&var_action[s]).is_identity() {
                return Err(Error::InconsistentSystem(format!(
                    "generator `{}` does not act as an involution",
                    spec.generators[s]
                )));
            }
            for t in 0..r {
                // <alpha_s, alpha_t^vee> computed from the realization.
                let val = roots_vec[s]
                    .iter()
                    .zip(&coroots[t])
                    .fold(Scalar::zero(), |acc, (a, c)| &acc + &(a * c));
                if val != pairing[s][t] {
                    return Err(Error::InconsistentSystem("realization disagrees with pairing".into()));
                }
            }
        }
        for s in 0..r {
            for t in (s + 1)..r {
                if let BraidOrder::Finite(m) = spec.orders[s][t] {
                    for action in [&root_action, &var_action] {
                        let prod = action[s].mul(&action[t]);
                        let mut p = LinearAction::identity(prod.dim());
                        for k in 1..=m {
                            p = p.mul(&prod);
                            if p.is_identity() != (k == m) {
                                return Err(Error::InconsistentSystem(format!(
                                    "({}{})^{k} {} the identity but m = {m}",
                                    spec.generators[s],
                                    spec.generators[t],
                                    if k == m { "is not" } else { "is" }
                                )));
                            }
                        }
                    }
                }
            }
        }

        Ok(CoxeterSystem {
            id: NEXT_SYSTEM_ID.fetch_add(1, AtomicOrdering::Relaxed),
            names: spec.generators.clone(),
            orders: spec.orders.clone(),
            pairing,
            roots: roots_vec.iter().map(|a| Polynomial::linear(a)).collect(),
            coroots,
            ring,
            finite: spec.finite,
            gl_preset: match spec.pairing {
                PairingSpec::GlN(n) => Some(n),
                _ => None,
            },
            var_action,
            root_action,
            max_elements: DEFAULT_MAX_ELEMENTS,
            left_cache: RwLock::new(HashMap::new()),
            reflect_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_max_elements(mut self, cap: usize) -> Self {
        self.max_elements = cap;
        self
    }

    /// Process-unique identity, used to reject mixing elements of
    /// different systems.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn order(&self, s: usize, t: usize) -> BraidOrder {
        self.orders[s][t]
    }

    pub fn pairing(&self, s: usize, t: usize) -> &Scalar {
        &self.pairing[s][t]
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn gl_preset(&self) -> Option<usize> {
        self.gl_preset
    }

    /// Simple root `alpha_s` as a linear polynomial.
    pub fn simple_root(&self, s: usize) -> &Polynomial {
        &self.roots[s]
    }

    /// `<lambda, alpha_s^vee>` for a linear form `lambda`.
    pub fn coroot_pairing(&self, lambda: &Polynomial, s: usize) -> Scalar {
        let n = self.nvars();
        (0..n).fold(Scalar::zero(), |acc, j| {
            &acc + &(&lambda.coefficient(&Monomial::var(n, j)) * &self.coroots[s][j])
        })
    }

    pub fn generator_action(&self, s: usize) -> &LinearAction {
        &self.var_action[s]
    }

    pub fn generator_root_action(&self, s: usize) -> &LinearAction {
        &self.root_action[s]
    }

    // ---- group elements -------------------------------------------------

    fn inverse_root_matrix(&self, letters: &[usize]) -> LinearAction {
        // (s_1 ... s_k)^{-1} = s_k ... s_1
        letters
            .iter()
            .rev()
            .fold(LinearAction::identity(self.rank()), |acc, &s| acc.mul(&self.root_action[s]))
    }

    /// Reads the canonical word off the root matrix of `w^{-1}`.
    fn word_from_inverse(&self, mut inv: LinearAction) -> Word {
        let mut word = Vec::new();
        loop {
            let next = (0..self.rank()).find(|&s| self.column_negative(&inv, s));
            match next {
                None => return Word(word),
                Some(s) => {
                    word.push(s);
                    // (s w)^{-1} = w^{-1} s
                    inv = inv.mul(&self.root_action[s]);
                }
            }
        }
    }

    fn column_negative(&self, m: &LinearAction, s: usize) -> bool {
        (0..m.dim()).any(|i| m.get(i, s).is_negative())
    }

    /// Canonical (lex-smallest reduced) word of the element an expression
    /// evaluates to.
    pub fn canonical_word(&self, e: &Expression) -> Result<Word> {
        if let Some(&bad) = e.0.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::UnknownGenerator(bad.to_string()));
        }
        Ok(self.word_from_inverse(self.inverse_root_matrix(&e.0)))
    }

    pub fn canonical_form(&self, e: &Expression) -> Result<GroupElement> {
        let word = self.canonical_word(e)?;
        Ok(self.element(&word))
    }

    pub fn element(&self, word: &Word) -> GroupElement {
        let action = word
            .0
            .iter()
            .fold(LinearAction::identity(self.nvars()), |acc, &s| acc.mul(&self.var_action[s]));
        GroupElement { word: word.clone(), action }
    }

    pub fn is_reduced(&self, e: &Expression) -> Result<bool> {
        Ok(self.canonical_word(e)?.len() == e.len())
    }

    /// `s * w` together with whether the length went up.
    pub fn left_mul(&self, s: usize, w: &Word) -> (Word, bool) {
        let key = (s, w.clone());
        if let Some(hit) = self.left_cache.read().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let inv = self.inverse_root_matrix(&w.0);
        let descent = self.column_negative(&inv, s);
        let result = if descent {
            // s is the first letter of some reduced word; strip it.
            (self.word_from_inverse(inv.mul(&self.root_action[s])), false)
        } else {
            (self.word_from_inverse(inv.mul(&self.root_action[s])), true)
        };
        self.left_cache.write().expect("cache poisoned").insert(key, result.clone());
        result
    }

    /// `w * s`.
    pub fn right_mul(&self, w: &Word, s: usize) -> (Word, bool) {
        let (inv, up) = self.left_mul(s, &self.inverse(w));
        (self.inverse(&inv), up)
    }

    /// True iff `l(s w) < l(w)`, i.e. `w^{-1}(alpha_s)` is negative.
    pub fn is_left_descent(&self, s: usize, w: &Word) -> bool {
        let inv = self.inverse_root_matrix(&w.0);
        self.column_negative(&inv, s)
    }

    pub fn inverse(&self, w: &Word) -> Word {
        self.word_from_inverse(self.inverse_root_matrix(&w.reversed().0))
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Word {
        u.0.iter().rev().fold(v.clone(), |acc, &s| self.left_mul(s, &acc).0)
    }

    /// `u v` when lengths add, otherwise `None`.
    pub fn multiply_reduced(&self, u: &Word, v: &Word) -> Option<Word> {
        let mut acc = v.clone();
        for &s in u.0.iter().rev() {
            let (next, up) = self.left_mul(s, &acc);
            if !up {
                return None;
            }
            acc = next;
        }
        Some(acc)
    }

    /// Action of a group element on the root span, in simple-root
    /// coordinates.
    pub fn act_on_root(&self, w: &Word, root: &Root) -> Root {
        let v = w.0.iter().rev().fold(root.coeffs.clone(), |v, &s| self.root_action[s].apply(&v));
        Root { coeffs: v }
    }

    /// Elements of length at most `max_len` (all elements when `None`), in
    /// breadth-first order, each length level sorted.
    pub fn enumerate(&self, max_len: Option<usize>) -> Result<Vec<Word>> {
        if max_len.is_none() && !self.finite {
            return Err(Error::InfiniteGroup);
        }
        let mut out = vec![Word::identity()];
        let mut level = vec![Word::identity()];
        let mut len = 0;
        while !level.is_empty() && max_len.is_none_or(|m| len < m) {
            let mut next = BTreeSet::new();
            for w in &level {
                for s in 0..self.rank() {
                    let (sw, up) = self.left_mul(s, w);
                    if up {
                        next.insert(sw);
                    }
                }
            }
            level = next.into_iter().collect();
            out.extend(level.iter().cloned());
            if out.len() > self.max_elements {
                return Err(Error::EnumerationCap(self.max_elements));
            }
            len += 1;
        }
        Ok(out)
    }

    pub fn longest_element(&self) -> Result<Word> {
        let all = self.enumerate(None)?;
        Ok(all.last().cloned().expect("identity is always present"))
    }

    /// Longest element of the parabolic subgroup generated by `s, t`.
    pub fn parabolic_longest(&self, s: usize, t: usize) -> Result<Word> {
        let m = self.orders[s][t].finite().ok_or(Error::InfiniteGroup)?;
        self.canonical_word(&Expression::alternating(s, t, m as usize))
    }

    /// Elements of the parabolic subgroup generated by `s, t`.
    pub fn parabolic_elements(&self, s: usize, t: usize) -> Result<Vec<Word>> {
        let m = self.orders[s][t].finite().ok_or(Error::InfiniteGroup)? as usize;
        let mut set = BTreeSet::new();
        for len in 0..=m {
            set.insert(self.canonical_word(&Expression::alternating(s, t, len))?);
            set.insert(self.canonical_word(&Expression::alternating(t, s, len))?);
        }
        Ok(set.into_iter().collect())
    }

    pub fn positive_roots(&self) -> Result<Vec<Root>> {
        if !self.finite {
            return Err(Error::InfiniteGroup);
        }
        let r = self.rank();
        let mut seen = HashSet::new();
        let mut queue: Vec<Vec<Scalar>> = (0..r)
            .map(|s| (0..r).map(|j| if j == s { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        let mut positives = Vec::new();
        while let Some(v) = queue.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            if seen.len() > self.max_elements {
                return Err(Error::EnumerationCap(self.max_elements));
            }
            let root = Root { coeffs: v.clone() };
            if root.is_positive() {
                positives.push(root);
            }
            for s in 0..r {
                queue.push(self.root_action[s].apply(&v));
            }
        }
        positives.sort_by(|a, b| {
            let ha: Scalar = a.coeffs.iter().fold(Scalar::zero(), |x, y| &x + y);
            let hb: Scalar = b.coeffs.iter().fold(Scalar::zero(), |x, y| &x + y);
            ha.cmp(&hb).then_with(|| b.coeffs.cmp(&a.coeffs))
        });
        Ok(positives)
    }

    /// Linear form of a root written in simple-root coordinates.
    pub fn root_polynomial(&self, root: &Root) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars());
        for (s, c) in root.coeffs.iter().enumerate() {
            p = &p + &self.roots[s].scale(c);
        }
        p
    }

    /// Number of positive roots sent to negative roots by `w^{-1}`.
    pub fn inversion_count(&self, w: &Word) -> Result<usize> {
        let inv = self.inverse(w);
        Ok(self.positive_roots()?.iter().filter(|r| self.act_on_root(&inv, r).is_negative()).count())
    }

    // ---- action on polynomials -------------------------------------------

    /// `(s(m), D_s(m))` for a monomial, cached.
    fn reflect_monomial(&self, s: usize, m: &Monomial) -> (Polynomial, Polynomial) {
        let key = (s, m.clone());
        if let Some(hit) = self.reflect_cache.read().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let n = self.nvars();
        let p = Polynomial::monomial(n, m.clone(), Scalar::one());
        let image = p.apply_action(&self.var_action[s]).expect("dimensions agree");
        let diff = (&p - &image)
            .exact_divide_linear(&self.roots[s])
            .expect("f - s(f) is divisible by alpha_s");
        let result = (image, diff);
        self.reflect_cache.write().expect("cache poisoned").insert(key, result.clone());
        result
    }

    /// `s(f)` for a generator.
    pub fn reflect(&self, s: usize, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (m, c) in f.terms() {
            let (img, _) = self.reflect_monomial(s, m);
            out.add_scaled(&img, &Monomial::one(f.nvars()), c);
        }
        out
    }

    /// Divided difference `(f - s(f)) / alpha_s`.
    pub fn demazure(&self, s: usize, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (m, c) in f.terms() {
            let (_, d) = self.reflect_monomial(s, m);
            out.add_scaled(&d, &Monomial::one(f.nvars()), c);
        }
        out
    }

    /// Divided difference computed directly from the defining quotient,
    /// without any caching.
    pub fn demazure_direct(&self, s: usize, f: &Polynomial) -> Result<Polynomial> {
        let sf = f.apply_action(&self.var_action[s])?;
        (f - &sf).exact_divide_linear(&self.roots[s])
    }

    /// `w(f)`.
    pub fn act(&self, w: &Word, f: &Polynomial) -> Polynomial {
        w.0.iter().rev().fold(f.clone(), |acc, &s| self.reflect(s, &acc))
    }

    /// True iff every generator fixes `f`.
    pub fn is_invariant(&self, f: &Polynomial) -> bool {
        (0..self.rank()).all(|s| self.reflect(s, f) == *f)
    }

    /// Renders a word with generator names, `1` for the identity.
    pub fn word_name(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.0.iter().map(|&s| self.names[s].as_str()).collect::<Vec<_>>().join("")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(v: &[usize]) -> Word {
        Word::new(v.to_vec())
    }

    #[test]
    fn s2_acts_by_sign() {
        let sys = CoxeterSystem::build(&SystemSpec::s2()).unwrap();
        let a = sys.ring().var(0);
        assert_eq!(sys.reflect(0, &a), -&a);
        let a2 = &a * &a;
        assert_eq!(sys.reflect(0, &a2), a2);
        assert_eq!(sys.demazure(0, &a), Polynomial::constant(1, Scalar::from_int(2)));
        assert!(sys.demazure(0, &a2).is_zero());
    }

    #[test]
    fn gl_permutes_variables() {
        let sys = CoxeterSystem::build(&SystemSpec::gl(3)).unwrap();
        let x1 = sys.ring().var(0);
        let x2 = sys.ring().var(1);
        assert_eq!(sys.reflect(0, &x1), x2);
        assert_eq!(sys.demazure(0, &x1), Polynomial::one(3));
        assert_eq!(sys.simple_root(0), &(&x1 - &x2));
        assert_eq!(sys.ring().variables(), &["x1", "x2", "x3"]);
    }

    #[test]
    fn order_seven_unsupported() {
        let mut spec = SystemSpec::dihedral(5);
        spec.orders[0][1] = BraidOrder::Finite(7);
        spec.orders[1][0] = BraidOrder::Finite(7);
        assert!(matches!(CoxeterSystem::build(&spec), Err(Error::UnsupportedField { .. })));
        let mut five = SystemSpec::dihedral(5);
        five.field = Field::Rational;
        assert!(matches!(CoxeterSystem::build(&five), Err(Error::UnsupportedField { .. })));
    }

    #[test]
    fn inconsistent_pairing_rejected() {
        let mut spec = SystemSpec::dihedral(3);
        spec.pairing = PairingSpec::Explicit(vec![
            vec![Scalar::from_int(2), Scalar::from_int(-1)],
            vec![Scalar::from_int(-2), Scalar::from_int(2)],
        ]);
        // product of pairings 2 means m = 4, not 3
        assert!(matches!(CoxeterSystem::build(&spec), Err(Error::InconsistentSystem(_))));
    }

    #[test]
    fn canonical_forms() {
        let sys = CoxeterSystem::build(&SystemSpec::dihedral(3)).unwrap();
        assert_eq!(sys.canonical_word(&Expression(vec![0, 0])).unwrap(), Word::identity());
        assert_eq!(
            sys.canonical_word(&Expression(vec![0, 1, 0])).unwrap(),
            sys.canonical_word(&Expression(vec![1, 0, 1])).unwrap()
        );
        assert_eq!(sys.canonical_word(&Expression(vec![1, 0, 1])).unwrap(), word(&[0, 1, 0]));
        let i5 = CoxeterSystem::build(&SystemSpec::dihedral(5)).unwrap();
        let t7 = Expression::alternating(1, 0, 7);
        assert_eq!(i5.canonical_word(&t7).unwrap(), word(&[0, 1, 0]));
    }

    #[test]
    fn reducedness() {
        let sys = CoxeterSystem::build(&SystemSpec::dihedral(3)).unwrap();
        assert!(sys.is_reduced(&Expression(vec![0, 1, 0])).unwrap());
        assert!(!sys.is_reduced(&Expression(vec![0, 0])).unwrap());
        assert!(sys.is_reduced(&Expression(vec![])).unwrap());
    }

    #[test]
    fn descents_in_s3() {
        let sys = CoxeterSystem::build(&SystemSpec::gl(3)).unwrap();
        let w = sys.canonical_word(&Expression(vec![1, 0])).unwrap();
        assert!(!sys.is_left_descent(0, &w));
        assert!(sys.is_left_descent(1, &w));
        assert!(!sys.is_left_descent(0, &Word::identity()));
    }

    #[test]
    fn enumeration_sizes() {
        let s2 = CoxeterSystem::build(&SystemSpec::s2()).unwrap();
        assert_eq!(s2.enumerate(None).unwrap().len(), 2);
        let s3 = CoxeterSystem::build(&SystemSpec::gl(3)).unwrap();
        let all = s3.enumerate(None).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all.last().unwrap().len(), 3);
        for m in 2..=6 {
            let d = CoxeterSystem::build(&SystemSpec::dihedral(m)).unwrap();
            assert_eq!(d.enumerate(None).unwrap().len(), 2 * m as usize, "m = {m}");
        }
    }

    #[test]
    fn infinite_enumeration_guarded() {
        let sys = CoxeterSystem::build(&SystemSpec::dihedral(0)).unwrap();
        assert_eq!(sys.enumerate(None), Err(Error::InfiniteGroup));
        // Two elements of each positive length.
        assert_eq!(sys.enumerate(Some(5)).unwrap().len(), 11);
        let capped = CoxeterSystem::build(&SystemSpec::gl(4)).unwrap().with_max_elements(10);
        assert_eq!(capped.enumerate(None), Err(Error::EnumerationCap(10)));
    }

    #[test]
    fn positive_root_counts() {
        let s2 = CoxeterSystem::build(&SystemSpec::s2()).unwrap();
        assert_eq!(s2.positive_roots().unwrap().len(), 1);
        let b2 = CoxeterSystem::build(&SystemSpec::dihedral(4)).unwrap();
        assert_eq!(b2.positive_roots().unwrap().len(), 4);
        let s3 = CoxeterSystem::build(&SystemSpec::gl(3)).unwrap();
        let mut polys: Vec<String> = s3
            .positive_roots()
            .unwrap()
            .iter()
            .map(|r| s3.ring().render(&s3.root_polynomial(r)))
            .collect();
        polys.sort();
        assert_eq!(polys, vec!["x1 - x2", "x1 - x3", "x2 - x3"]);
    }

    #[test]
    fn longest_elements() {
        let s2 = CoxeterSystem::build(&SystemSpec::s2()).unwrap();
        assert_eq!(s2.longest_element().unwrap(), word(&[0]));
        let a2 = CoxeterSystem::build(&SystemSpec::dihedral(3)).unwrap();
        let wo = a2.parabolic_longest(0, 1).unwrap();
        assert_eq!(wo, word(&[0, 1, 0]));
        assert_eq!(a2.canonical_word(&Expression(vec![1, 0, 1])).unwrap(), wo);
        let s3 = CoxeterSystem::build(&SystemSpec::gl(3)).unwrap();
        assert_eq!(s3.longest_element().unwrap().len(), 3);
    }

    #[test]
    fn embeddings_count() {
        assert_eq!(embedded_subexpressions(&Expression(vec![0, 1, 0])).len(), 8);
        assert_eq!(embedded_subexpressions(&Expression(vec![])).len(), 1);
        assert_eq!(embedded_subexpressions(&Expression::alternating(0, 1, 4)).len(), 16);
        let first = &embedded_subexpressions(&Expression(vec![0, 1, 0]))[0];
        assert_eq!(first.kept(), Expression(vec![0, 1, 0]));
    }

    #[test]
    fn invariants() {
        let s2 = CoxeterSystem::build(&SystemSpec::s2()).unwrap();
        let a = s2.ring().var(0);
        assert!(s2.is_invariant(&(&a * &a)));
        assert!(!s2.is_invariant(&a));
        let gl2 = CoxeterSystem::build(&SystemSpec::gl(2)).unwrap();
        assert!(gl2.is_invariant(&(&gl2.ring().var(0) + &gl2.ring().var(1))));
    }
}
