//! Exact arithmetic foundation: arbitrary-precision rationals, sparse
//! multivariate polynomials over ℚ, monomial orders and a text parser.
//!
//! Everything here is immutable after construction and safe to share across
//! threads. No floating point is used anywhere; all coefficients are
//! arbitrary-precision rationals kept in lowest terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for small integers as rationals.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse a rational written as `n` or `n/d` (used by the CLI for weights and
/// minimal-exponent overrides).
pub fn parse_rational(text: &str) -> Result<Rational, PolyError> {
    let text = text.trim();
    let bad = |msg: &str| PolyError::Syntax {
        pos: 0,
        msg: format!("{msg} in rational `{text}`"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad("invalid denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Errors from the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}`{}", match .pos { Some(p) => format!(" at byte {p}"), None => String::new() })]
    UnknownVariable { name: String, pos: Option<usize> },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
}

/// An ordered list of variable names, fixed at construction. Polynomials
/// remember their ring; cross-ring operations are errors rather than
/// implicit unification.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
}

/// Shared handle to a ring.
pub type RingRef = Arc<Ring>;

fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    /// Build a ring from variable names. Names must match
    /// `[A-Za-z][A-Za-z0-9_]*` and be pairwise distinct; this keeps the
    /// elimination helper's auxiliary variable (which starts with `_`)
    /// unconstructible from user input.
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<RingRef, PolyError> {
        let vars: Vec<String> = names.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(PolyError::InvalidRing("no variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(PolyError::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// Internal constructor used by elimination; bypasses the name grammar so
    /// the auxiliary variable can never collide with a user variable.
    pub(crate) fn with_reserved(vars: Vec<String>) -> RingRef {
        Arc::new(Ring { vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Render a monomial with this ring's variable names, `*`-separated.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Exponent vector of fixed length (one entry per ring variable).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Strictly positive weights, one per variable. For a quasi-homogeneous
/// input every term of `f` has weighted degree exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    weights: Vec<Rational>,
}

impl WeightSystem {
    pub fn new(weights: Vec<Rational>) -> Result<Self, PolyError> {
        if weights.is_empty() {
            return Err(PolyError::InvalidWeights("empty weight list".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(PolyError::InvalidWeights(format!(
                "weight {w} is not strictly positive"
            )));
        }
        Ok(WeightSystem { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Σ wᵢ·eᵢ, exact.
    pub fn weighted_degree(&self, m: &Monomial) -> Result<Rational, PolyError> {
        if m.nvars() != self.weights.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.weights.len(),
                got: m.nvars(),
            });
        }
        let mut acc = Rational::zero();
        for (w, &e) in self.weights.iter().zip(m.exponents()) {
            if e != 0 {
                acc += w * Rational::from_integer(BigInt::from(e));
            }
        }
        Ok(acc)
    }

    /// Σ wᵢ·(eᵢ+1) − 1, the shifted weight indexing the filtration on the
    /// Milnor algebra.
    pub fn shifted_weight(&self, m: &Monomial) -> Result<Rational, PolyError> {
        Ok(self.weighted_degree(m)? + self.sum() - Rational::one())
    }

    /// Σ wᵢ.
    pub fn sum(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, w| a + w)
    }
}

/// Total orders on monomials. All variants are global term orders: total,
/// multiplicative, with 1 as the unique minimum.
///
/// `Elimination { block }` compares the total degree of the first `block`
/// variables before anything else; it is the block order used to eliminate
/// auxiliary variables in intersection and colon-ideal computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GradedRevLex,
    WeightedDegree { weights: Vec<Rational> },
    Elimination { block: usize },
}

fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal total degree: the monomial with the smaller exponent in the last
    // position where they differ is the larger one.
    for (ea, eb) in a.iter().zip(b.iter()).rev() {
        match ea.cmp(eb) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// The weighted order attached to a weight system: weighted degree
    /// first, ties broken by graded reverse lexicographic comparison of the
    /// raw exponents.
    pub fn weighted(w: &WeightSystem) -> Self {
        MonomialOrder::WeightedDegree {
            weights: w.weights().to_vec(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::GradedRevLex => cmp_grevlex(a.exponents(), b.exponents()),
            MonomialOrder::WeightedDegree { weights } => {
                let wa = weighted_degree_raw(weights, a.exponents());
                let wb = weighted_degree_raw(weights, b.exponents());
                match wa.cmp(&wb) {
                    Ordering::Equal => cmp_grevlex(a.exponents(), b.exponents()),
                    ord => ord,
                }
            }
            MonomialOrder::Elimination { block } => {
                let da: u64 = a.exponents()[..*block].iter().map(|&e| e as u64).sum();
                let db: u64 = b.exponents()[..*block].iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                match cmp_grevlex(&a.exponents()[*block..], &b.exponents()[*block..]) {
                    Ordering::Equal => cmp_grevlex(&a.exponents()[..*block], &b.exponents()[..*block]),
                    ord => ord,
                }
            }
        }
    }

    pub fn max<'m>(&self, a: &'m Monomial, b: &'m Monomial) -> &'m Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn weighted_degree_raw(weights: &[Rational], exps: &[u32]) -> Rational {
    let mut acc = Rational::zero();
    for (w, &e) in weights.iter().zip(exps) {
        if e != 0 {
            acc += w * Rational::from_integer(BigInt::from(e));
        }
    }
    acc
}

/// Sparse multivariate polynomial over ℚ in canonical form: no zero
/// coefficients are stored, and equal polynomials have identical term maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Rational>,
}

/// Operation selector for [`ring_arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Exact arithmetic entry point covering addition, subtraction and
/// multiplication with a ring-consistency check.
pub fn ring_arithmetic(a: &Polynomial, b: &Polynomial, op: RingOp) -> Result<Polynomial, PolyError> {
    a.check_same_ring(b)?;
    Ok(match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    })
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn variable(ring: &RingRef, index: usize) -> Self {
        let mut p = Self::zero(ring);
        p.terms
            .insert(Monomial::var(ring.nvars(), index), Rational::one());
        p
    }

    /// Single term `c · m`; zero coefficients collapse to the zero polynomial.
    pub fn term(ring: &RingRef, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            debug_assert_eq!(m.nvars(), ring.nvars());
            p.terms.insert(m, c);
        }
        p
    }

    /// Canonicalising constructor: merges duplicate monomials, drops zeros.
    pub fn from_terms(
        ring: &RingRef,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(PolyError::DimensionMismatch {
                    expected: ring.nvars(),
                    got: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn check_same_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the single term `c · m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    /// Exact formal partial derivative with respect to a named variable.
    pub fn partial_derivative(&self, variable: &str) -> Result<Polynomial, PolyError> {
        let idx = self
            .ring
            .var_index(variable)
            .ok_or_else(|| PolyError::UnknownVariable {
                name: variable.to_string(),
                pos: None,
            })?;
        Ok(self.partial_derivative_index(idx))
    }

    pub fn partial_derivative_index(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[idx] = e - 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c * Rational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Greatest term under `order`, or `None` for the zero polynomial.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<Monomial> {
        self.leading_term(order).map(|(m, _)| m.clone())
    }

    /// Divide through by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rational::one() / c;
                self.scale(&inv)
            }
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// All total degrees equal? Returns the common degree for homogeneous
    /// nonzero polynomials.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(|m| m.total_degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// Maximal weighted degree over the support.
    pub fn max_weighted_degree(&self, w: &WeightSystem) -> Result<Option<Rational>, PolyError> {
        let mut best: Option<Rational> = None;
        for m in self.terms.keys() {
            let d = w.weighted_degree(m)?;
            best = Some(match best {
                None => d,
                Some(b) => b.max(d),
            });
        }
        Ok(best)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Lex-descending is stable and re-parses to the same polynomial.
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.exponents().cmp(a.exponents()));
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = self.ring.format_monomial(m);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------
//
// Grammar (whitespace ignored, explicit `*` required between factors):
//   expr        := ('+'|'-')? term (('+'|'-') term)*
//   term        := factor ('*' factor)*
//   factor      := coefficient | var ('^' uint)?
//   coefficient := int ('/' uint)?
//   var         := [A-Za-z][A-Za-z0-9_]*

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ring: &'a RingRef) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            ring,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn parse_exponent(&mut self) -> Result<u32, PolyError> {
        let at = self.pos;
        let n = self.parse_uint()?;
        u32::try_from(&n).map_err(|_| PolyError::Syntax {
            pos: at,
            msg: format!("exponent {n} out of range"),
        })
    }

    fn parse_ident(&mut self) -> Result<(String, usize), PolyError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.bytes.len() || !self.bytes[self.pos].is_ascii_alphabetic() {
            return Err(self.err("expected a variable or coefficient"));
        }
        self.pos += 1;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Ok((
            std::str::from_utf8(&self.bytes[start..self.pos]).unwrap().to_string(),
            start,
        ))
    }

    /// factor := coefficient | var ('^' uint)?
    fn parse_factor(&mut self) -> Result<(Monomial, Rational), PolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let neg = c == b'-';
                if neg {
                    self.bump();
                }
                let num = self.parse_uint()?;
                let den = if self.peek() == Some(b'/') {
                    self.bump();
                    let at = self.pos;
                    let d = self.parse_uint()?;
                    if d.is_zero() {
                        return Err(PolyError::Syntax {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::one()
                };
                let mut c = Rational::new(num, den);
                if neg {
                    c = -c;
                }
                Ok((Monomial::one(self.ring.nvars()), c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (name, at) = self.parse_ident()?;
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or(PolyError::UnknownVariable {
                        name,
                        pos: Some(at),
                    })?;
                let exp = if self.peek() == Some(b'^') {
                    self.bump();
                    self.parse_exponent()?
                } else {
                    1
                };
                let mut exps = vec![0u32; self.ring.nvars()];
                exps[idx] = exp;
                Ok((Monomial::from_exponents(exps), Rational::one()))
            }
            _ => Err(self.err("expected a variable or coefficient")),
        }
    }

    /// term := factor ('*' factor)*
    fn parse_term(&mut self) -> Result<(Monomial, Rational), PolyError> {
        let (mut m, mut c) = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            let (m2, c2) = self.parse_factor()?;
            m = m.mul(&m2);
            c *= c2;
        }
        Ok((m, c))
    }

    fn parse_expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut poly = Polynomial::zero(self.ring);
        let mut sign = match self.peek() {
            Some(b'+') => {
                self.bump();
                Rational::one()
            }
            Some(b'-') => {
                self.bump();
                -Rational::one()
            }
            _ => Rational::one(),
        };
        loop {
            let (m, c) = self.parse_term()?;
            poly.add_term(m, c * &sign);
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    sign = Rational::one();
                }
                Some(b'-') => {
                    self.bump();
                    sign = -Rational::one();
                }
                None => break,
                Some(c) => return Err(self.err(format!("unexpected character `{}`", c as char))),
            }
        }
        Ok(poly)
    }
}

/// Parse a polynomial over the given ring. Every identifier in the text must
/// be one of the ring's variables; parse–print–parse is the identity.
pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial, PolyError> {
    let mut p = Parser::new(text, ring);
    let poly = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring_xyz() -> RingRef {
        Ring::new(vec!["x", "y", "z"]).unwrap()
    }

    fn parse(text: &str, ring: &RingRef) -> Polynomial {
        parse_polynomial(text, ring).unwrap()
    }

    #[test]
    fn parse_paper_example() {
        let r = ring_xyz();
        let p = parse("x^2+y^3+z^7", &r);
        assert_eq!(p.num_terms(), 3);
        for (_, c) in p.terms() {
            assert!(c.is_one());
        }
    }

    #[test]
    fn parse_zero_is_empty() {
        let r = Ring::new(vec!["x"]).unwrap();
        let p = parse("0", &r);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn parse_family_member() {
        let r = ring_xyz();
        let p = parse("x^3+y^3+z^6+x*y*z^3", &r);
        assert_eq!(p.num_terms(), 4);
        for (_, c) in p.terms() {
            assert!(c.is_one());
        }
    }

    #[test]
    fn parse_rejects_unknown_variable() {
        let r = ring_xyz();
        match parse_polynomial("x^2+w", &r) {
            Err(PolyError::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, Some(4));
            }
            other => panic!("expected UnknownVariable, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_implicit_product() {
        let r = Ring::new(vec!["x", "y"]).unwrap();
        // "xy" is one identifier, not a product; it is not a ring variable.
        assert!(matches!(
            parse_polynomial("xy", &r),
            Err(PolyError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn parse_reports_position() {
        let r = ring_xyz();
        match parse_polynomial("x^2 + + y", &r) {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected Syntax, got {other:?}"),
        }
    }

    #[test]
    fn parse_rational_coefficients() {
        let r = ring_xyz();
        let p = parse("1/2*x - 3/4*y^2 + 5", &r);
        assert_eq!(p.coefficient(&Monomial::var(3, 0)), rat(1, 2));
        assert_eq!(
            p.coefficient(&Monomial::from_exponents(vec![0, 2, 0])),
            rat(-3, 4)
        );
        assert_eq!(p.coefficient(&Monomial::one(3)), rat_int(5));
    }

    #[test]
    fn arithmetic_difference_of_squares() {
        let r = ring_xyz();
        let a = parse("x+y", &r);
        let b = parse("x-y", &r);
        let prod = ring_arithmetic(&a, &b, RingOp::Mul).unwrap();
        assert_eq!(prod, parse("x^2-y^2", &r));
    }

    #[test]
    fn arithmetic_absorbing_zero() {
        let r = ring_xyz();
        let f = parse("x^3+y^3+z^6+x*y*z^3", &r);
        let zero = Polynomial::zero(&r);
        assert!(ring_arithmetic(&f, &zero, RingOp::Mul).unwrap().is_zero());
    }

    #[test]
    fn arithmetic_cancellation_removes_term() {
        let r = ring_xyz();
        let a = parse("x^2+y^2", &r);
        let b = parse("-x^2", &r);
        let sum = ring_arithmetic(&a, &b, RingOp::Add).unwrap();
        assert_eq!(sum, parse("y^2", &r));
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn arithmetic_rejects_ring_mismatch() {
        let r1 = ring_xyz();
        let r2 = Ring::new(vec!["x", "y"]).unwrap();
        let a = parse("x", &r1);
        let b = parse_polynomial("x", &r2).unwrap();
        assert_eq!(
            ring_arithmetic(&a, &b, RingOp::Add),
            Err(PolyError::RingMismatch)
        );
    }

    #[test]
    fn derivative_power_rule() {
        let r = ring_xyz();
        let f = parse("x^2+y^3+z^7", &r);
        assert_eq!(f.partial_derivative("z").unwrap(), parse("7*z^6", &r));
    }

    #[test]
    fn derivative_product_of_variables() {
        let r = ring_xyz();
        let f = parse("x*y*z^3", &r);
        assert_eq!(f.partial_derivative("x").unwrap(), parse("y*z^3", &r));
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let r = ring_xyz();
        assert!(parse("42", &r).partial_derivative("x").unwrap().is_zero());
    }

    #[test]
    fn derivative_unknown_variable() {
        let r = ring_xyz();
        assert!(matches!(
            parse("x", &r).partial_derivative("w"),
            Err(PolyError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn weighted_degree_examples() {
        let w = WeightSystem::new(vec![rat(1, 3), rat(1, 3), rat(1, 6)]).unwrap();
        let m = Monomial::from_exponents(vec![1, 1, 3]);
        assert_eq!(w.weighted_degree(&m).unwrap(), rat(7, 6));
        assert_eq!(w.weighted_degree(&Monomial::one(3)).unwrap(), rat_int(0));

        let w2 = WeightSystem::new(vec![rat(1, 3), rat(1, 3), rat(1, 6)]).unwrap();
        let z6 = Monomial::from_exponents(vec![0, 0, 6]);
        assert_eq!(w2.weighted_degree(&z6).unwrap(), rat_int(1));
    }

    #[test]
    fn weighted_degree_dimension_mismatch() {
        let w = WeightSystem::new(vec![rat(1, 2)]).unwrap();
        assert!(matches!(
            w.weighted_degree(&Monomial::one(3)),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn weights_must_be_positive() {
        assert!(WeightSystem::new(vec![rat(1, 2), rat(0, 1)]).is_err());
        assert!(WeightSystem::new(vec![rat(-1, 2)]).is_err());
    }

    fn all_orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::GradedRevLex,
            MonomialOrder::WeightedDegree {
                weights: vec![rat(1, 2), rat(1, 3), rat(1, 7)],
            },
            MonomialOrder::Elimination { block: 1 },
        ]
    }

    fn grid(max_exp: u32, nvars: usize) -> Vec<Monomial> {
        let mut out = vec![vec![]];
        for _ in 0..nvars {
            let mut next = Vec::new();
            for prefix in &out {
                for e in 0..=max_exp {
                    let mut v = prefix.clone();
                    v.push(e);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Monomial::from_exponents).collect()
    }

    #[test]
    fn order_laws_on_exhaustive_grid() {
        let monos = grid(3, 3);
        let one = Monomial::one(3);
        for order in all_orders() {
            // 1 is the unique minimum.
            for m in &monos {
                if *m != one {
                    assert_eq!(order.cmp(&one, m), Ordering::Less, "{order:?} vs {m:?}");
                }
            }
            // Totality and antisymmetry.
            for a in &monos {
                for b in &monos {
                    let ab = order.cmp(a, b);
                    let ba = order.cmp(b, a);
                    assert_eq!(ab, ba.reverse());
                    assert_eq!(ab == Ordering::Equal, a == b);
                }
            }
            // Multiplicativity on a coarser grid to keep the triple loop small.
            let small = grid(2, 3);
            for a in &small {
                for b in &small {
                    for w in &small {
                        assert_eq!(order.cmp(a, b), order.cmp(&a.mul(w), &b.mul(w)));
                    }
                }
            }
        }
    }

    #[test]
    fn grevlex_tie_break_direction() {
        // Equal total degree: x*z < y^2 under grevlex with x > y > z.
        let o = MonomialOrder::GradedRevLex;
        let xz = Monomial::from_exponents(vec![1, 0, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2, 0]);
        assert_eq!(o.cmp(&xz, &y2), Ordering::Less);
    }

    #[test]
    fn elimination_order_isolates_block() {
        let o = MonomialOrder::Elimination { block: 1 };
        let t = Monomial::from_exponents(vec![1, 0, 0]);
        let big = Monomial::from_exponents(vec![0, 9, 9]);
        assert_eq!(o.cmp(&t, &big), Ordering::Greater);
    }

    #[test]
    fn display_round_trip_spot_checks() {
        let r = ring_xyz();
        for text in [
            "x^2+y^3+z^7",
            "-x + 1/2*y - 3",
            "x^3+y^3+z^6+x*y*z^3",
            "0",
            "-7/5",
        ] {
            let p = parse(text, &r);
            assert_eq!(parse(&p.to_string(), &r), p);
        }
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_poly(ring: RingRef) -> impl Strategy<Value = Polynomial> {
        let n = ring.nvars();
        proptest::collection::vec((proptest::collection::vec(0u32..5, n), arb_rational()), 0..8)
            .prop_map(move |terms| {
                Polynomial::from_terms(
                    &ring,
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial::from_exponents(e), c)),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn canonical_form_add_then_subtract(p in arb_poly(ring_xyz()), q in arb_poly(ring_xyz())) {
            let sum = &p + &q;
            let back = &sum - &q;
            prop_assert_eq!(back, p);
        }

        #[test]
        fn parser_round_trip(p in arb_poly(ring_xyz())) {
            let printed = p.to_string();
            let reparsed = parse_polynomial(&printed, p.ring()).unwrap();
            prop_assert_eq!(reparsed, p);
        }

        #[test]
        fn integer_inputs_stay_integer(a in arb_poly(ring_xyz()), b in arb_poly(ring_xyz())) {
            // Denominator closure: products, sums and derivatives of
            // integer-coefficient polynomials keep integer coefficients.
            let to_int = |p: &Polynomial| Polynomial::from_terms(
                p.ring(),
                p.terms().map(|(m, c)| (m.clone(), Rational::from_integer(c.numer().clone()))),
            ).unwrap();
            let (a, b) = (to_int(&a), to_int(&b));
            let mut chain = &(&a * &b) + &a;
            chain = chain.partial_derivative_index(0);
            for (_, c) in chain.terms() {
                prop_assert!(c.denom().is_one());
            }
        }
    }
}
