//! Buchberger-based ideal engine: reduced Gröbner bases, normal forms,
//! membership, intersections, colon ideals, standard monomials and quotient
//! dimensions.
//!
//! The pair loop uses the normal selection strategy (smallest lcm first)
//! with both of Buchberger's pruning criteria. No F4/F5 machinery: the
//! instances this crate targets are tiny three-variable ideals, so clarity
//! wins over raw speed. A configurable step budget turns runaway
//! computations into an error instead of a hang.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_traits::One;

use crate::polycore::{
    Monomial, MonomialOrder, PolyError, Polynomial, Rational, Ring, RingRef,
};

/// Errors from the ideal engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GbError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("the zero ideal has no Gröbner basis here")]
    ZeroIdeal,
    #[error("reduction budget of {limit} steps exceeded (set SKL_BUDGET to raise it)")]
    BudgetExceeded { limit: usize },
    #[error("inexact division while forming a colon ideal: {0}")]
    InexactDivision(String),
    #[error("internal soundness check failed: {0}")]
    Soundness(String),
    #[error("operation requires a reduced Gröbner basis")]
    NotReduced,
}

/// Step budget for basis computations. One unit is spent per single-term
/// reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub reduction_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            reduction_steps: 1_000_000,
        }
    }
}

struct Counter {
    used: usize,
    limit: usize,
}

impl Counter {
    fn new(budget: &Budget) -> Self {
        Counter {
            used: 0,
            limit: budget.reduction_steps,
        }
    }

    fn spend(&mut self) -> Result<(), GbError> {
        self.used += 1;
        if self.used > self.limit {
            Err(GbError::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Finitely generated ideal. Zero generators are dropped at construction;
/// a Gröbner basis may be cached inside under a write-once discipline.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
    cached_gb: OnceLock<GroebnerBasis>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Self, GbError> {
        let mut gens = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(GbError::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            return Err(GbError::ZeroIdeal);
        }
        Ok(Ideal {
            ring: std::sync::Arc::clone(ring),
            generators: gens,
            cached_gb: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis under `order`, cached write-once. A second call
    /// with a different order recomputes without touching the cache.
    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<GroebnerBasis, GbError> {
        if let Some(gb) = self.cached_gb.get() {
            if gb.order() == order {
                return Ok(gb.clone());
            }
            return buchberger(self, order, budget);
        }
        let gb = buchberger(self, order, budget)?;
        let _ = self.cached_gb.set(gb.clone());
        Ok(gb)
    }
}

/// A Gröbner basis: elements plus the order they were computed under.
/// When `reduced` holds, every element is monic and no term of any element
/// is divisible by the leading term of another.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    ring: RingRef,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    minimal: bool,
    reduced: bool,
}

impl GroebnerBasis {
    /// Wrap an explicit list of reducers without running Buchberger. The
    /// flags are set to false; normal forms against such a list are still
    /// well defined.
    pub fn from_elements(
        ring: &RingRef,
        order: MonomialOrder,
        elements: Vec<Polynomial>,
    ) -> Result<Self, GbError> {
        for e in &elements {
            if e.ring() != ring {
                return Err(GbError::RingMismatch);
            }
        }
        let elements: Vec<Polynomial> = elements.into_iter().filter(|e| !e.is_zero()).collect();
        Ok(GroebnerBasis {
            ring: std::sync::Arc::clone(ring),
            order,
            elements,
            minimal: false,
            reduced: false,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial(&self.order).expect("nonzero"))
            .collect()
    }

    /// The ideal is the whole ring iff the (reduced) basis contains a unit.
    pub fn contains_unit(&self) -> bool {
        self.elements
            .iter()
            .any(|g| g.leading_monomial(&self.order).is_some_and(|m| m.is_one()))
    }
}

// ---------------------------------------------------------------------------
// Division
// ---------------------------------------------------------------------------

/// One full division pass: reduce every term of `p` against the reducers.
/// Returns the remainder; no term of the remainder is divisible by any
/// leading term of the reducers. Division terminates unconditionally because
/// all orders here are well-orders.
fn reduce_full(
    p: &Polynomial,
    reducers: &[(Monomial, Polynomial)],
    order: &MonomialOrder,
    counter: Option<&mut Counter>,
) -> Result<Polynomial, GbError> {
    let ring = p.ring();
    let mut work = p.clone();
    let mut remainder = Polynomial::zero(ring);
    let mut local = Counter {
        used: 0,
        limit: usize::MAX,
    };
    let counter = match counter {
        Some(c) => c,
        None => &mut local,
    };
    'outer: while let Some((lم, lc)) = work.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        for (glm, g) in reducers {
            if let Some(q) = glm.div_into(&lم) {
                counter.spend()?;
                let glc = g.leading_term(order).expect("nonzero reducer").1.clone();
                let factor = lc.clone() / glc;
                work = &work - &g.mul_term(&q, &factor);
                continue 'outer;
            }
        }
        // Irreducible leading term: move it to the remainder.
        remainder.add_term(lم.clone(), lc.clone());
        work = &work - &Polynomial::term(ring, lم, lc);
    }
    Ok(remainder)
}

/// Division with quotient tracking against a single divisor. Returns
/// `(quotient, remainder)` with `p = q·g + r`.
fn div_rem_single(
    p: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> (Polynomial, Polynomial) {
    let ring = p.ring();
    let glm = g.leading_monomial(order).expect("nonzero divisor");
    let glc = g.leading_term(order).expect("nonzero divisor").1.clone();
    let mut work = p.clone();
    let mut quot = Polynomial::zero(ring);
    let mut rem = Polynomial::zero(ring);
    while let Some((lm, lc)) = work.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        if let Some(q) = glm.div_into(&lm) {
            let factor = lc / &glc;
            work = &work - &g.mul_term(&q, &factor);
            quot.add_term(q, factor);
        } else {
            rem.add_term(lm.clone(), lc.clone());
            work = &work - &Polynomial::term(ring, lm, lc);
        }
    }
    (quot, rem)
}

/// Normal form of `p` modulo a basis. Idempotent; `p − NF(p)` lies in the
/// ideal generated by the basis elements.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, GbError> {
    if p.ring() != gb.ring() {
        return Err(GbError::RingMismatch);
    }
    let reducers: Vec<(Monomial, Polynomial)> = gb
        .elements
        .iter()
        .map(|g| (g.leading_monomial(&gb.order).expect("nonzero"), g.clone()))
        .collect();
    reduce_full(p, &reducers, &gb.order, None)
}

// ---------------------------------------------------------------------------
// Buchberger
// ---------------------------------------------------------------------------

fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> Polynomial {
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let lcm = fm.lcm(gm);
    let uf = fm.div_into(&lcm).expect("lcm divisible");
    let ug = gm.div_into(&lcm).expect("lcm divisible");
    let a = f.mul_term(&uf, &(Rational::one() / fc));
    let b = g.mul_term(&ug, &(Rational::one() / gc));
    &a - &b
}

/// Compute the reduced Gröbner basis of an ideal. The result is unique for
/// a given order: it does not depend on the order of the input generators.
pub fn buchberger(
    ideal: &Ideal,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GbError> {
    let ring = ideal.ring();
    let mut counter = Counter::new(budget);

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    for g in ideal.generators() {
        let reducers: Vec<(Monomial, Polynomial)> = lms
            .iter()
            .cloned()
            .zip(basis.iter().cloned())
            .collect();
        let h = reduce_full(g, &reducers, order, Some(&mut counter))?;
        if !h.is_zero() {
            lms.push(h.leading_monomial(order).expect("nonzero"));
            basis.push(h.monic(order));
        }
    }
    if basis.is_empty() {
        return Err(GbError::ZeroIdeal);
    }

    // Pending S-pairs, and the set of pairs already treated (for the chain
    // criterion).
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut treated: std::collections::BTreeSet<(usize, usize)> = Default::default();
    for i in 0..basis.len() {
        for j in 0..i {
            pending.push((j, i));
        }
    }

    while !pending.is_empty() {
        // Normal selection: smallest lcm under the order.
        let mut best = 0;
        let mut best_lcm = lms[pending[0].0].lcm(&lms[pending[0].1]);
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let l = lms[i].lcm(&lms[j]);
            if order.cmp(&l, &best_lcm) == Ordering::Less {
                best_lcm = l;
                best = k;
            }
        }
        let (i, j) = pending.swap_remove(best);
        treated.insert((i, j));

        // Product criterion: coprime leading terms reduce to zero.
        if lms[i].coprime(&lms[j]) {
            continue;
        }
        // Chain criterion: skip if some k with LT(k) | lcm(i,j) has both
        // pairs (i,k) and (j,k) already treated.
        let lcm_ij = lms[i].lcm(&lms[j]);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].divides(&lcm_ij)
                && treated.contains(&key(i, k))
                && treated.contains(&key(j, k))
        });
        if chained {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let reducers: Vec<(Monomial, Polynomial)> = lms
            .iter()
            .cloned()
            .zip(basis.iter().cloned())
            .collect();
        let h = reduce_full(&s, &reducers, order, Some(&mut counter))?;
        if h.is_zero() {
            continue;
        }
        let new_idx = basis.len();
        lms.push(h.leading_monomial(order).expect("nonzero"));
        basis.push(h.monic(order));
        for k in 0..new_idx {
            pending.push((k, new_idx));
        }
    }

    // Minimalise: drop elements whose leading term is divisible by the
    // leading term of another survivor.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // Tail-reduce each element against the others; leading terms are stable
    // because the basis is already minimal.
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<(Monomial, Polynomial)> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| (g.leading_monomial(order).expect("nonzero"), g.clone()))
            .collect();
        let r = reduce_full(&minimal[i], &others, order, Some(&mut counter))?;
        reduced.push(r.monic(order));
    }
    minimal = reduced;
    minimal.sort_by(|a, b| {
        order.cmp(
            &a.leading_monomial(order).expect("nonzero"),
            &b.leading_monomial(order).expect("nonzero"),
        )
    });

    Ok(GroebnerBasis {
        ring: std::sync::Arc::clone(ring),
        order: order.clone(),
        elements: minimal,
        minimal: true,
        reduced: true,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// `p ∈ I`, decided through `NF(p, GB(I)) = 0`.
pub fn ideal_membership(
    p: &Polynomial,
    ideal: &Ideal,
    budget: &Budget,
) -> Result<bool, GbError> {
    if p.ring() != ideal.ring() {
        return Err(GbError::RingMismatch);
    }
    let gb = ideal.groebner_basis(&MonomialOrder::GradedRevLex, budget)?;
    Ok(normal_form(p, &gb)?.is_zero())
}

// ---------------------------------------------------------------------------
// Staircase
// ---------------------------------------------------------------------------

/// Monomials outside the leading-term ideal of a basis, or `Infinite` when
/// the quotient has positive dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardMonomialSet {
    Finite(Vec<Monomial>),
    Infinite,
}

impl StandardMonomialSet {
    pub fn len(&self) -> Option<usize> {
        match self {
            StandardMonomialSet::Finite(v) => Some(v.len()),
            StandardMonomialSet::Infinite => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, StandardMonomialSet::Finite(v) if v.is_empty())
    }
}

/// Vector-space dimension of the quotient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

/// All monomials not divisible by any leading term of the basis. Infinite
/// exactly when some variable has no pure power among the leading terms.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<StandardMonomialSet, GbError> {
    if !(gb.reduced || gb.minimal) {
        return Err(GbError::NotReduced);
    }
    if gb.contains_unit() {
        return Ok(StandardMonomialSet::Finite(Vec::new()));
    }
    let lts = gb.leading_monomials();
    let nvars = gb.ring().nvars();

    // Pure-power test: variable i must admit some x_i^e among the leading
    // terms, otherwise x_i^k is standard for every k.
    let mut bounds = vec![0u32; nvars];
    for i in 0..nvars {
        let bound = lts
            .iter()
            .filter(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| j == i || e == 0)
            })
            .map(|m| m.exponent(i))
            .min();
        match bound {
            Some(b) => bounds[i] = b,
            None => return Ok(StandardMonomialSet::Infinite),
        }
    }

    // Walk the bounded box, keeping monomials no leading term divides.
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exponents(exps.clone());
        if !lts.iter().any(|lt| lt.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == nvars {
                out.sort();
                return Ok(StandardMonomialSet::Finite(out));
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

pub fn is_zero_dimensional(gb: &GroebnerBasis) -> Result<bool, GbError> {
    Ok(matches!(
        standard_monomials(gb)?,
        StandardMonomialSet::Finite(_)
    ))
}

pub fn quotient_dimension(gb: &GroebnerBasis) -> Result<Dimension, GbError> {
    Ok(match standard_monomials(gb)? {
        StandardMonomialSet::Finite(v) => Dimension::Finite(v.len()),
        StandardMonomialSet::Infinite => Dimension::Infinite,
    })
}

// ---------------------------------------------------------------------------
// Intersection and colon ideals
// ---------------------------------------------------------------------------

const AUX_VAR: &str = "_t";

fn aux_extended_ring(ring: &RingRef) -> RingRef {
    let mut vars = vec![AUX_VAR.to_string()];
    vars.extend(ring.var_names().iter().cloned());
    Ring::with_reserved(vars)
}

fn lift(p: &Polynomial, ext: &RingRef, aux_degree: u32) -> Polynomial {
    Polynomial::from_terms(
        ext,
        p.terms().map(|(m, c)| {
            let mut exps = Vec::with_capacity(m.nvars() + 1);
            exps.push(aux_degree);
            exps.extend_from_slice(m.exponents());
            (Monomial::from_exponents(exps), c.clone())
        }),
    )
    .expect("lift respects the extended ring")
}

fn lower(p: &Polynomial, ring: &RingRef) -> Option<Polynomial> {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        if m.exponent(0) != 0 {
            return None;
        }
        terms.push((Monomial::from_exponents(m.exponents()[1..].to_vec()), c.clone()));
    }
    Some(Polynomial::from_terms(ring, terms).expect("lower respects the base ring"))
}

/// Generators of `I ∩ J` via single-auxiliary-variable elimination:
/// compute a basis of `t·I + (1−t)·J` under a block order with the auxiliary
/// variable greatest, and keep the elements free of `t`. Every returned
/// generator is membership-checked against both inputs.
pub fn ideal_intersection(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<Ideal, GbError> {
    if i.ring() != j.ring() {
        return Err(GbError::RingMismatch);
    }
    let ring = i.ring();
    let ext = aux_extended_ring(ring);
    let t = Polynomial::variable(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;

    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(&t * &lift(g, &ext, 0));
    }
    for g in j.generators() {
        gens.push(&one_minus_t * &lift(g, &ext, 0));
    }
    let mixed = Ideal::new(&ext, gens)?;
    let gb = buchberger(&mixed, &MonomialOrder::Elimination { block: 1 }, budget)?;

    let mut inters = Vec::new();
    for g in gb.elements() {
        if let Some(low) = lower(g, ring) {
            inters.push(low);
        }
    }
    if inters.is_empty() {
        return Err(GbError::Soundness(
            "intersection of nonzero ideals came out empty".into(),
        ));
    }
    // Soundness: every generator must lie in both inputs.
    for g in &inters {
        if !ideal_membership(g, i, budget)? || !ideal_membership(g, j, budget)? {
            return Err(GbError::Soundness(format!(
                "intersection generator {g} fails membership"
            )));
        }
    }
    Ideal::new(ring, inters)
}

/// Colon ideal `(I : f) = {g : g·f ∈ I}`, computed as `(I ∩ (f))` with each
/// generator divided exactly by `f`. Every returned generator `g` is
/// soundness-checked: `g·f ∈ I`.
pub fn colon_ideal(i: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal, GbError> {
    if f.ring() != i.ring() {
        return Err(GbError::RingMismatch);
    }
    if f.is_zero() {
        return Err(GbError::ZeroIdeal);
    }
    // (I : unit) = I.
    if f.num_terms() == 1 && f.support()[0].is_one() {
        return Ok(i.clone());
    }
    let principal = Ideal::new(i.ring(), vec![f.clone()])?;
    let inter = ideal_intersection(i, &principal, budget)?;
    let order = MonomialOrder::GradedRevLex;
    let mut gens = Vec::new();
    for g in inter.generators() {
        let (q, r) = div_rem_single(g, f, &order);
        if !r.is_zero() {
            return Err(GbError::InexactDivision(format!(
                "{g} is not a multiple of {f}"
            )));
        }
        if !q.is_zero() {
            gens.push(q);
        }
    }
    let colon = Ideal::new(i.ring(), gens)?;
    for g in colon.generators() {
        if !ideal_membership(&(g * f), i, budget)? {
            return Err(GbError::Soundness(format!(
                "colon generator {g} fails g·f ∈ I"
            )));
        }
    }
    Ok(colon)
}

/// Two ideals are equal iff their reduced Gröbner bases under a common
/// order coincide.
pub fn ideals_equal(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool, GbError> {
    if a.ring() != b.ring() {
        return Err(GbError::RingMismatch);
    }
    let order = MonomialOrder::GradedRevLex;
    let ga = a.groebner_basis(&order, budget)?;
    let gb = b.groebner_basis(&order, budget)?;
    Ok(ga.elements() == gb.elements())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, rat_int, Ring, WeightSystem};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn ring(names: &[&str]) -> RingRef {
        Ring::new(names.to_vec()).unwrap()
    }

    fn p(text: &str, r: &RingRef) -> Polynomial {
        parse_polynomial(text, r).unwrap()
    }

    fn ideal(texts: &[&str], r: &RingRef) -> Ideal {
        Ideal::new(r, texts.iter().map(|t| p(t, r)).collect()).unwrap()
    }

    fn gb(texts: &[&str], r: &RingRef, order: MonomialOrder) -> GroebnerBasis {
        buchberger(&ideal(texts, r), &order, &Budget::default()).unwrap()
    }

    #[test]
    fn normal_form_single_step() {
        let r = ring(&["x", "y"]);
        let basis =
            GroebnerBasis::from_elements(&r, MonomialOrder::Lex, vec![p("x^2+y^2", &r), p("x*y", &r)])
                .unwrap();
        let nf = normal_form(&p("x^2", &r), &basis).unwrap();
        assert_eq!(nf, p("-y^2", &r));
    }

    #[test]
    fn normal_form_of_generators_vanishes() {
        let r = ring(&["x", "y"]);
        let basis = gb(&["x^2+y^2", "x*y"], &r, MonomialOrder::Lex);
        for g in [p("x^2+y^2", &r), p("x*y", &r)] {
            assert!(normal_form(&g, &basis).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_of_one_is_one() {
        let r = ring(&["x", "y", "z"]);
        let basis = gb(&["x", "y", "z"], &r, MonomialOrder::GradedRevLex);
        assert_eq!(normal_form(&p("1", &r), &basis).unwrap(), p("1", &r));
    }

    #[test]
    fn normal_form_idempotent() {
        let r = ring(&["x", "y"]);
        let basis = gb(&["x^2+y^2", "x*y"], &r, MonomialOrder::Lex);
        let q = p("x^3+x*y+y^3+1", &r);
        let nf1 = normal_form(&q, &basis).unwrap();
        let nf2 = normal_form(&nf1, &basis).unwrap();
        assert_eq!(nf1, nf2);
    }

    #[test]
    fn buchberger_lex_example() {
        let r = ring(&["x", "y"]);
        let basis = gb(&["x^2+y^2", "x*y"], &r, MonomialOrder::Lex);
        let expected = vec![p("y^3", &r), p("x*y", &r), p("x^2+y^2", &r)];
        assert_eq!(basis.elements(), expected.as_slice());
        assert_eq!(
            quotient_dimension(&basis).unwrap(),
            Dimension::Finite(4)
        );
    }

    #[test]
    fn buchberger_linear_generators() {
        let r = ring(&["x", "y", "z"]);
        for order in [MonomialOrder::Lex, MonomialOrder::GradedRevLex] {
            let basis = gb(&["x", "y", "z"], &r, order);
            assert_eq!(basis.elements().len(), 3);
            assert_eq!(basis.elements(), &[p("z", &r), p("y", &r), p("x", &r)]);
        }
    }

    #[test]
    fn buchberger_sqh_jacobian_staircase_size() {
        // Jacobian ideal of x^3+y^3+z^6+x*y*z^3: the affine quotient counts
        // all 29 critical points with multiplicity (20 at the origin plus
        // nine on z^3 = -18); the local count lives in the milnor module.
        let r = ring(&["x", "y", "z"]);
        let f = p("x^3+y^3+z^6+x*y*z^3", &r);
        let jac: Vec<Polynomial> = ["x", "y", "z"]
            .iter()
            .map(|v| f.partial_derivative(v).unwrap())
            .collect();
        let w = WeightSystem::new(vec![
            crate::polycore::rat(1, 3),
            crate::polycore::rat(1, 3),
            crate::polycore::rat(1, 6),
        ])
        .unwrap();
        let basis = buchberger(
            &Ideal::new(&r, jac).unwrap(),
            &MonomialOrder::weighted(&w),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(quotient_dimension(&basis).unwrap(), Dimension::Finite(29));

        // The principal part's Jacobian ideal is monomial; its staircase is
        // the 2 x 2 x 5 box of size 20 = (3-1)(3-1)(6-1).
        let principal = gb(&["3*x^2", "3*y^2", "6*z^5"], &r, MonomialOrder::weighted(&w));
        match standard_monomials(&principal).unwrap() {
            StandardMonomialSet::Finite(ms) => {
                assert_eq!(ms.len(), 20);
                for m in ms {
                    assert!(m.exponent(0) <= 1 && m.exponent(1) <= 1 && m.exponent(2) <= 4);
                }
            }
            StandardMonomialSet::Infinite => panic!("expected finite staircase"),
        }
    }

    #[test]
    fn all_s_polynomials_reduce_to_zero() {
        let r = ring(&["x", "y", "z"]);
        let cases = vec![
            gb(&["x^2+y^2", "x*y"], &r, MonomialOrder::Lex),
            gb(&["x^2-y", "y^2-z", "x*z-y^2"], &r, MonomialOrder::GradedRevLex),
            gb(&["x^3+y^3+z^3", "x*y*z-1"], &r, MonomialOrder::GradedRevLex),
        ];
        for basis in cases {
            let n = basis.elements().len();
            assert!(n <= 12);
            for i in 0..n {
                for j in 0..i {
                    let s = s_polynomial(&basis.elements()[i], &basis.elements()[j], basis.order());
                    assert!(normal_form(&s, &basis).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn reduced_basis_is_generator_order_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let r = ring(&["x", "y", "z"]);
        let pool = [
            "x^2+y^2", "x*y", "y^2-z", "x*z-y", "z^2-x*y", "x^2-z^2", "x+y+z", "y^3-1",
        ];
        for _ in 0..50 {
            let k = rng.gen_range(2..=4);
            let mut texts: Vec<&str> = Vec::new();
            while texts.len() < k {
                let c = pool[rng.gen_range(0..pool.len())];
                if !texts.contains(&c) {
                    texts.push(c);
                }
            }
            let base = gb(&texts, &r, MonomialOrder::GradedRevLex);
            let mut shuffled = texts.clone();
            shuffled.shuffle(&mut rng);
            let other = gb(&shuffled, &r, MonomialOrder::GradedRevLex);
            assert_eq!(base.elements(), other.elements(), "gens {texts:?} vs {shuffled:?}");
        }
    }

    #[test]
    fn membership_euler_identity() {
        // Quasi-homogeneous f lies in its own Jacobian ideal.
        let r = ring(&["x", "y", "z"]);
        for text in ["x^2+y^3+z^7", "x^3+y^3+z^3", "x^2+y^2+z^2"] {
            let f = p(text, &r);
            let jac = Ideal::new(
                &r,
                ["x", "y", "z"]
                    .iter()
                    .map(|v| f.partial_derivative(v).unwrap())
                    .collect(),
            )
            .unwrap();
            assert!(ideal_membership(&f, &jac, &Budget::default()).unwrap());
        }
    }

    #[test]
    fn membership_derived_example() {
        let r = ring(&["x", "y"]);
        let i = ideal(&["x^2+y^2", "x*y"], &r);
        assert!(ideal_membership(&p("y^3", &r), &i, &Budget::default()).unwrap());
    }

    #[test]
    fn membership_unit_not_in_proper_ideal() {
        let r = ring(&["x", "y"]);
        let i = ideal(&["x", "y"], &r);
        assert!(!ideal_membership(&p("1", &r), &i, &Budget::default()).unwrap());
    }

    #[test]
    fn staircase_product_box() {
        let r = ring(&["x", "y", "z"]);
        let basis = gb(&["x^2", "y^2", "z^5"], &r, MonomialOrder::GradedRevLex);
        match standard_monomials(&basis).unwrap() {
            StandardMonomialSet::Finite(ms) => assert_eq!(ms.len(), 20),
            StandardMonomialSet::Infinite => panic!("expected finite"),
        }
    }

    #[test]
    fn staircase_single_variable() {
        let r = ring(&["x"]);
        let basis = gb(&["x"], &r, MonomialOrder::Lex);
        assert_eq!(
            standard_monomials(&basis).unwrap(),
            StandardMonomialSet::Finite(vec![Monomial::one(1)])
        );
    }

    #[test]
    fn staircase_infinite_without_pure_powers() {
        let r = ring(&["x", "y"]);
        let basis = gb(&["x*y"], &r, MonomialOrder::GradedRevLex);
        assert_eq!(standard_monomials(&basis).unwrap(), StandardMonomialSet::Infinite);
        assert!(!is_zero_dimensional(&basis).unwrap());
    }

    #[test]
    fn quotient_dimension_jacobian_examples() {
        let r = ring(&["x", "y", "z"]);
        let cases = [("x^2+y^3+z^7", Dimension::Finite(12)), ("x^2+y^2+z^2", Dimension::Finite(1))];
        for (text, expected) in cases {
            let f = p(text, &r);
            let jac: Vec<Polynomial> = ["x", "y", "z"]
                .iter()
                .map(|v| f.partial_derivative(v).unwrap())
                .collect();
            let basis = buchberger(
                &Ideal::new(&r, jac).unwrap(),
                &MonomialOrder::GradedRevLex,
                &Budget::default(),
            )
            .unwrap();
            assert_eq!(quotient_dimension(&basis).unwrap(), expected);
        }
        // x*y as a surface in three variables is singular along the whole
        // z-axis, so the Jacobian staircase is infinite.
        let f = p("x*y", &r);
        let jac = Ideal::new(
            &r,
            vec![
                f.partial_derivative("x").unwrap(),
                f.partial_derivative("y").unwrap(),
            ],
        )
        .unwrap();
        let basis = buchberger(&jac, &MonomialOrder::GradedRevLex, &Budget::default()).unwrap();
        assert_eq!(quotient_dimension(&basis).unwrap(), Dimension::Infinite);
    }

    #[test]
    fn fermat_dimension_oracle() {
        // dim Q^f for sum of pure powers is the staircase product Π(dᵢ−1).
        let names = [vec!["x"], vec!["x", "y"], vec!["x", "y", "z"]];
        for vars in names {
            let r = ring(&vars);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
            for _ in 0..6 {
                let degs: Vec<u32> = (0..vars.len()).map(|_| rng.gen_range(2..=7)).collect();
                let text = vars
                    .iter()
                    .zip(&degs)
                    .map(|(v, d)| format!("{v}^{d}"))
                    .collect::<Vec<_>>()
                    .join("+");
                let f = p(&text, &r);
                let jac: Vec<Polynomial> = vars
                    .iter()
                    .map(|v| f.partial_derivative(v).unwrap())
                    .collect();
                let basis = buchberger(
                    &Ideal::new(&r, jac).unwrap(),
                    &MonomialOrder::GradedRevLex,
                    &Budget::default(),
                )
                .unwrap();
                let expected: usize = degs.iter().map(|&d| (d - 1) as usize).product();
                assert_eq!(quotient_dimension(&basis).unwrap(), Dimension::Finite(expected));
            }
        }
    }

    #[test]
    fn intersection_coprime_principal() {
        let r = ring(&["x", "y"]);
        let i = ideal(&["x"], &r);
        let j = ideal(&["y"], &r);
        let inter = ideal_intersection(&i, &j, &Budget::default()).unwrap();
        assert!(ideals_equal(&inter, &ideal(&["x*y"], &r), &Budget::default()).unwrap());
    }

    #[test]
    fn intersection_idempotent() {
        let r = ring(&["x", "y"]);
        let i = ideal(&["x", "y"], &r);
        let inter = ideal_intersection(&i, &i, &Budget::default()).unwrap();
        assert!(ideals_equal(&inter, &i, &Budget::default()).unwrap());
    }

    #[test]
    fn intersection_componentwise_max_of_pure_powers() {
        // (x, y, z^m) ∩ (x, y, z^{2m-a}) at m=2, a=1.
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&["x", "y", "z^2"], &r);
        let j = ideal(&["x", "y", "z^3"], &r);
        let inter = ideal_intersection(&i, &j, &Budget::default()).unwrap();
        assert!(ideals_equal(&inter, &ideal(&["x", "y", "z^3"], &r), &Budget::default()).unwrap());
    }

    #[test]
    fn intersection_generators_pass_membership_and_sum_check() {
        let r = ring(&["x", "y", "z"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let pool = ["x^2-y", "y^2-z", "x*y-z^2", "z^3-x", "x+y", "y*z-1"];
        for _ in 0..10 {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                let k = rng.gen_range(1..=2);
                (0..k)
                    .map(|_| pool[rng.gen_range(0..pool.len())])
                    .collect::<Vec<_>>()
            };
            let i = ideal(&pick(&mut rng), &r);
            let j = ideal(&pick(&mut rng), &r);
            let inter = ideal_intersection(&i, &j, &Budget::default()).unwrap();
            // NF-equality of (I∩J)+I with I.
            let mut sum_gens = inter.generators().to_vec();
            sum_gens.extend_from_slice(i.generators());
            let sum = Ideal::new(&r, sum_gens).unwrap();
            assert!(ideals_equal(&sum, &i, &Budget::default()).unwrap());
        }
    }

    #[test]
    fn colon_basic_example() {
        let r = ring(&["x", "y"]);
        let i = ideal(&["x^2", "x*y"], &r);
        let colon = colon_ideal(&i, &p("x", &r), &Budget::default()).unwrap();
        assert!(ideals_equal(&colon, &ideal(&["x", "y"], &r), &Budget::default()).unwrap());
    }

    #[test]
    fn colon_by_one_is_identity() {
        let r = ring(&["x", "y"]);
        let i = ideal(&["x^2", "x*y"], &r);
        let colon = colon_ideal(&i, &p("1", &r), &Budget::default()).unwrap();
        assert_eq!(&colon, &i);
    }

    #[test]
    fn colon_of_jacobian_by_quasi_homogeneous_f_is_unit() {
        let r = ring(&["x", "y", "z"]);
        let f = p("x^2+y^3+z^7", &r);
        let jac = Ideal::new(
            &r,
            ["x", "y", "z"]
                .iter()
                .map(|v| f.partial_derivative(v).unwrap())
                .collect(),
        )
        .unwrap();
        let colon = colon_ideal(&jac, &f, &Budget::default()).unwrap();
        assert!(ideal_membership(&p("1", &r), &colon, &Budget::default()).unwrap());
    }

    #[test]
    fn colon_generators_sound_on_random_inputs() {
        let r = ring(&["x", "y"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let pool = ["x^2", "x*y", "y^3", "x^2-y^2", "x^3+y"];
        let divisors = ["x", "y", "x+y", "x*y"];
        for _ in 0..8 {
            let k = rng.gen_range(1..=3);
            let gens: Vec<&str> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
            let i = ideal(&gens, &r);
            let f = p(divisors[rng.gen_range(0..divisors.len())], &r);
            // colon_ideal verifies g·f ∈ I internally; reaching Ok is the test.
            colon_ideal(&i, &f, &Budget::default()).unwrap();
        }
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&["x^3+y^3+z^3", "x*y*z-1", "x^2*y-z^2"], &r);
        let tiny = Budget { reduction_steps: 5 };
        assert!(matches!(
            buchberger(&i, &MonomialOrder::Lex, &tiny),
            Err(GbError::BudgetExceeded { .. })
        ));
    }
}
