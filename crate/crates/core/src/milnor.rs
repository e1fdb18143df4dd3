//! Singularity-invariant engine for hypersurface germs at the origin:
//! Jacobian ideals, the local Milnor algebra Q^f, homogeneity
//! classification, the weighted filtration on Q^f, geometric genus,
//! alpha invariant, the multiplication-by-f kernel (computed along two
//! independent paths), Du Bois invariants for certified families, and the
//! minimal exponent.
//!
//! All invariants are local at the origin. The affine quotient R/J_f can
//! pick up contributions from critical points away from the origin, so the
//! engine first passes to the origin-primary component of the Jacobian
//! ideal: J₀ = J_f + (x₁^K, …, xₙ^K) for K past the nilpotency index of the
//! local algebra. A plateau in dim R/(J_f + pure powers) between
//! consecutive values of K certifies saturation (Nakayama), so no local
//! monomial orders are needed anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::groebner::{
    buchberger, colon_ideal, normal_form, quotient_dimension, standard_monomials, Budget,
    Dimension, GbError, GroebnerBasis, Ideal, StandardMonomialSet,
};
use crate::linalg;
use crate::polycore::{
    Monomial, MonomialOrder, PolyError, Polynomial, Rational, WeightSystem,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MilnorError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error("input polynomial is constant")]
    ConstantInput,
    #[error("the singularity at the origin is not isolated (infinite staircase)")]
    NotIsolated,
    #[error("input is not semi-quasi-homogeneous: {0}")]
    NotSQH(NotSQHReason),
    #[error("surface invariants need exactly three variables")]
    NotASurface,
    #[error("two independent computation paths disagree: {0}")]
    PathDisagreement(String),
}

/// Why homogeneity classification rejected the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotSQHReason {
    /// A term of weighted degree < 1 (the witness monomial).
    LightTerm(Monomial),
    /// The weight-1 part is empty or has a non-isolated singularity.
    PrincipalPartNotIsolated,
}

impl std::fmt::Display for NotSQHReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotSQHReason::LightTerm(m) => {
                write!(f, "term with exponents {:?} has weighted degree < 1", m.exponents())
            }
            NotSQHReason::PrincipalPartNotIsolated => {
                write!(f, "the weight-1 part has a non-isolated singularity")
            }
        }
    }
}

/// A polynomial together with a weight system, the input to the whole
/// engine. Weights must lie in (0, 1]; the count must match the ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SQHInput {
    f: Polynomial,
    weights: WeightSystem,
}

impl SQHInput {
    pub fn new(f: Polynomial, weights: WeightSystem) -> Result<Self, MilnorError> {
        if f.is_zero() {
            return Err(MilnorError::ConstantInput);
        }
        if weights.len() != f.ring().nvars() {
            return Err(MilnorError::Poly(PolyError::DimensionMismatch {
                expected: f.ring().nvars(),
                got: weights.len(),
            }));
        }
        if weights.weights().iter().any(|w| w > &Rational::one()) {
            return Err(MilnorError::Poly(PolyError::InvalidWeights(
                "weights must lie in (0, 1]".into(),
            )));
        }
        Ok(SQHInput { f, weights })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }
}

/// Result of homogeneity classification (total: every input lands in one
/// of the three cases).
#[derive(Debug, Clone, PartialEq)]
pub enum HomogeneityClass {
    QuasiHomogeneous,
    SemiQuasiHomogeneous { principal_part: Polynomial },
    NotSQH { reason: NotSQHReason },
}

/// Jacobian ideal (∂f/∂x₁, …, ∂f/∂xₙ).
pub fn jacobian_ideal(f: &Polynomial) -> Result<Ideal, MilnorError> {
    let ring = f.ring();
    let partials: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| f.partial_derivative_index(i))
        .collect();
    if partials.iter().all(|p| p.is_zero()) {
        return Err(MilnorError::ConstantInput);
    }
    Ok(Ideal::new(ring, partials).expect("nonzero generators"))
}

/// Classify the input against its weight system: quasi-homogeneous when
/// every term has weighted degree exactly 1; semi-quasi-homogeneous when
/// the weight-1 part has an isolated singularity and every other term is
/// heavier; otherwise `NotSQH` with a witness.
pub fn classify_homogeneity(
    input: &SQHInput,
    budget: &Budget,
) -> Result<HomogeneityClass, MilnorError> {
    let w = &input.weights;
    let one = Rational::one();
    let mut principal = Polynomial::zero(input.f.ring());
    let mut has_heavy = false;
    for (m, c) in input.f.terms() {
        let d = w.weighted_degree(m)?;
        if d < one {
            return Ok(HomogeneityClass::NotSQH {
                reason: NotSQHReason::LightTerm(m.clone()),
            });
        } else if d == one {
            principal.add_term(m.clone(), c.clone());
        } else {
            has_heavy = true;
        }
    }
    if !has_heavy {
        return Ok(HomogeneityClass::QuasiHomogeneous);
    }
    if principal.is_zero() {
        return Ok(HomogeneityClass::NotSQH {
            reason: NotSQHReason::PrincipalPartNotIsolated,
        });
    }
    // The principal part is quasi-homogeneous, so a finite affine staircase
    // certifies an isolated singularity.
    let jac = jacobian_ideal(&principal)?;
    let gb = buchberger(&jac, &MonomialOrder::weighted(w), budget)?;
    match quotient_dimension(&gb)? {
        Dimension::Finite(_) => Ok(HomogeneityClass::SemiQuasiHomogeneous {
            principal_part: principal,
        }),
        Dimension::Infinite => Ok(HomogeneityClass::NotSQH {
            reason: NotSQHReason::PrincipalPartNotIsolated,
        }),
    }
}

/// The local Milnor algebra Q^f = 𝒪₀/J_f𝒪₀ presented by polynomial data:
/// the origin-primary component of the Jacobian ideal, its Gröbner basis
/// under the weighted order, and the standard-monomial basis.
#[derive(Debug, Clone)]
pub struct MilnorData {
    input: SQHInput,
    class: HomogeneityClass,
    jacobian: Ideal,
    local_ideal: Ideal,
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    mu: usize,
}

impl MilnorData {
    pub fn input(&self) -> &SQHInput {
        &self.input
    }

    pub fn class(&self) -> &HomogeneityClass {
        &self.class
    }

    /// The raw Jacobian ideal (possibly with components away from the
    /// origin).
    pub fn jacobian(&self) -> &Ideal {
        &self.jacobian
    }

    /// The origin-primary component J₀ of the Jacobian ideal.
    pub fn local_ideal(&self) -> &Ideal {
        &self.local_ideal
    }

    pub fn jacobian_gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn is_smooth(&self) -> bool {
        self.mu == 0
    }
}

fn pure_powers(ring: &crate::polycore::RingRef, k: u32) -> Vec<Polynomial> {
    (0..ring.nvars())
        .map(|i| {
            let mut exps = vec![0u32; ring.nvars()];
            exps[i] = k;
            Polynomial::term(ring, Monomial::from_exponents(exps), Rational::one())
        })
        .collect()
}

fn with_pure_powers(base: &Ideal, k: u32) -> Ideal {
    let mut gens = base.generators().to_vec();
    gens.extend(pure_powers(base.ring(), k));
    Ideal::new(base.ring(), gens).expect("nonzero generators")
}

fn finite_dim(gb: &GroebnerBasis) -> Result<usize, MilnorError> {
    match quotient_dimension(gb)? {
        Dimension::Finite(n) => Ok(n),
        Dimension::Infinite => Err(MilnorError::NotIsolated),
    }
}

/// Build the Milnor algebra of an input. Errors with `NotSQH` when the
/// classification rejects the weights and with `NotIsolated` when the
/// Jacobian ideal has an infinite staircase.
pub fn milnor_algebra(input: &SQHInput, budget: &Budget) -> Result<MilnorData, MilnorError> {
    let class = classify_homogeneity(input, budget)?;
    if let HomogeneityClass::NotSQH { reason } = class {
        return Err(MilnorError::NotSQH(reason));
    }
    milnor_algebra_with_class(input, class, budget)
}

/// Same as [`milnor_algebra`] but with the classification already done
/// (used when the caller wants to analyze a `NotSQH` input anyway, with an
/// externally supplied minimal exponent).
pub fn milnor_algebra_with_class(
    input: &SQHInput,
    class: HomogeneityClass,
    budget: &Budget,
) -> Result<MilnorData, MilnorError> {
    let jacobian = jacobian_ideal(&input.f)?;
    let order = MonomialOrder::weighted(&input.weights);
    let gb_raw = jacobian.groebner_basis(&order, budget)?;
    let staircase = match standard_monomials(&gb_raw)? {
        StandardMonomialSet::Finite(ms) => ms,
        StandardMonomialSet::Infinite => return Err(MilnorError::NotIsolated),
    };
    let global_dim = staircase.len();
    if global_dim == 0 {
        return Ok(MilnorData {
            input: input.clone(),
            class,
            local_ideal: jacobian.clone(),
            jacobian,
            gb: gb_raw,
            basis: Vec::new(),
            mu: 0,
        });
    }

    // Pass to the origin-primary component. Adding x_i^K for K past the
    // nilpotency index of the local algebra leaves the localization at the
    // origin unchanged while killing every far component. A plateau
    // dim(K) = dim(K+1) certifies K is past the index: the pure-power ideal
    // W in the local algebra then satisfies W ⊆ mW, so W = 0 by Nakayama.
    let max_staircase_degree = staircase.iter().map(|m| m.total_degree()).max().unwrap_or(0);
    let mut k: u32 = (max_staircase_degree as u32) + 1;
    let mut ideal_k = with_pure_powers(&jacobian, k);
    let mut gb_k = buchberger(&ideal_k, &order, budget)?;
    let mut dim_k = finite_dim(&gb_k)?;
    let (local_ideal, gb, mu) = if dim_k == global_dim {
        // The Jacobian ideal is already origin-primary.
        (jacobian.clone(), gb_raw, global_dim)
    } else {
        loop {
            let ideal_next = with_pure_powers(&jacobian, k + 1);
            let gb_next = buchberger(&ideal_next, &order, budget)?;
            let dim_next = finite_dim(&gb_next)?;
            if dim_next == dim_k {
                break (ideal_k, gb_k, dim_k);
            }
            k += 1;
            ideal_k = ideal_next;
            gb_k = gb_next;
            dim_k = dim_next;
        }
    };

    let basis = match standard_monomials(&gb)? {
        StandardMonomialSet::Finite(ms) => ms,
        StandardMonomialSet::Infinite => unreachable!("pure powers force a finite staircase"),
    };
    debug_assert_eq!(basis.len(), mu);
    Ok(MilnorData {
        input: input.clone(),
        class,
        jacobian,
        local_ideal,
        gb,
        basis,
        mu,
    })
}

/// Minimal generators of the monomial ideal of every monomial with
/// weighted degree strictly greater than `threshold`.
fn heavy_monomial_generators(w: &WeightSystem, threshold: &Rational) -> Vec<Monomial> {
    let n = w.len();
    if threshold.is_negative() {
        return vec![Monomial::one(n)];
    }
    // Box bounds: the smallest e with e·wᵢ > threshold, per variable.
    let bounds: Vec<u32> = w
        .weights()
        .iter()
        .map(|wi| {
            let q = (threshold / wi).floor();
            let b = q.to_integer().to_u32().unwrap_or(u32::MAX - 1);
            b + 1
        })
        .collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    'walk: loop {
        let m = Monomial::from_exponents(exps.clone());
        let d = w.weighted_degree(&m).expect("matching dimensions");
        if &d > threshold {
            // Minimal iff removing any single variable drops below.
            let minimal = (0..n).all(|i| {
                exps[i] == 0 || &(&d - &w.weights()[i]) <= threshold
            });
            if minimal {
                out.push(m);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'walk;
            }
            exps[i] += 1;
            if exps[i] <= bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

/// dim Q^f / V_{>level}: the number of independent classes of shifted
/// weight at most `level`. Realized as the colength of J₀ + (monomials of
/// shifted weight > level); the shift is Σ wᵢ(eᵢ+1) − 1, so a monomial is
/// heavy iff its plain weighted degree exceeds level + 1 − Σ wᵢ.
pub fn v_filtration_codim(
    data: &MilnorData,
    level: &Rational,
    budget: &Budget,
) -> Result<usize, MilnorError> {
    if data.mu == 0 {
        return Ok(0);
    }
    let threshold = level + Rational::one() - data.input.weights.sum();
    let heavies = heavy_monomial_generators(&data.input.weights, &threshold);
    let ring = data.input.f.ring();
    let mut gens = data.local_ideal.generators().to_vec();
    gens.extend(
        heavies
            .into_iter()
            .map(|m| Polynomial::term(ring, m, Rational::one())),
    );
    let ideal = Ideal::new(ring, gens).expect("nonzero generators");
    let order = MonomialOrder::weighted(&data.input.weights);
    let gb = buchberger(&ideal, &order, budget)?;
    finite_dim(&gb)
}

/// The multiplication-by-f kernel K̄ ⊂ Q^f in ideal form, with its
/// dimension computed along two independent paths.
#[derive(Debug, Clone)]
pub struct MultKernel {
    pub ideal_form: Ideal,
    pub dimension: usize,
}

/// Express NF(p) in the standard-monomial basis.
fn coords(
    p: &Polynomial,
    gb: &GroebnerBasis,
    basis: &[Monomial],
) -> Result<Vec<Rational>, MilnorError> {
    let nf = normal_form(p, gb)?;
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in nf.terms() {
        let idx = basis
            .binary_search(m)
            .map_err(|_| MilnorError::PathDisagreement("normal form left the staircase".into()))?;
        v[idx] = c.clone();
    }
    Ok(v)
}

/// Matrix of multiplication by f on Q^f in the standard-monomial basis,
/// materialized row-major.
fn mult_matrix(data: &MilnorData) -> Result<Vec<Vec<Rational>>, MilnorError> {
    let n = data.mu;
    let mut cols = Vec::with_capacity(n);
    for b in &data.basis {
        let fb = data.input.f.mul_term(b, &Rational::one());
        cols.push(coords(&fb, &data.gb, &data.basis)?);
    }
    let mut rows = vec![vec![Rational::zero(); n]; n];
    for (j, col) in cols.into_iter().enumerate() {
        for (i, x) in col.into_iter().enumerate() {
            rows[i][j] = x;
        }
    }
    Ok(rows)
}

fn mult_kernel_inner(
    data: &MilnorData,
    budget: &Budget,
) -> Result<(MultKernel, Vec<Vec<Rational>>), MilnorError> {
    let colon = colon_ideal(&data.local_ideal, &data.input.f, budget)?;

    // Path (a): μ − dim R/(J₀ + colon generators).
    let mut sum_gens = data.local_ideal.generators().to_vec();
    sum_gens.extend_from_slice(colon.generators());
    let sum = Ideal::new(data.input.f.ring(), sum_gens).expect("nonzero generators");
    let order = MonomialOrder::weighted(&data.input.weights);
    let sum_gb = buchberger(&sum, &order, budget)?;
    let dim_a = data.mu - finite_dim(&sum_gb)?;

    // Path (b): μ − rank of the multiplication matrix, exact over ℚ.
    let matrix = mult_matrix(data)?;
    let dim_b = data.mu - linalg::rank(&matrix);

    if dim_a != dim_b {
        return Err(MilnorError::PathDisagreement(format!(
            "kernel dimension: colon path gives {dim_a}, matrix path gives {dim_b}"
        )));
    }
    Ok((
        MultKernel {
            ideal_form: colon,
            dimension: dim_a,
        },
        matrix,
    ))
}

/// Kernel of multiplication by f on Q^f. The two computation paths (colon
/// ideal colength and multiplication-matrix rank) must agree; disagreement
/// surfaces as a hard error.
pub fn mult_kernel(data: &MilnorData, budget: &Budget) -> Result<MultKernel, MilnorError> {
    if data.mu == 0 {
        let one = Polynomial::one(data.input.f.ring());
        let unit = Ideal::new(data.input.f.ring(), vec![one]).expect("unit ideal");
        return Ok(MultKernel {
            ideal_form: unit,
            dimension: 0,
        });
    }
    mult_kernel_inner(data, budget).map(|(k, _)| k)
}

/// Minimal exponent of the germ: Σ wᵢ for a singular (semi-)
/// quasi-homogeneous input, infinity for a smooth one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalExponent {
    Finite(Rational),
    Infinity,
}

impl MinimalExponent {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            MinimalExponent::Finite(a) => Some(a),
            MinimalExponent::Infinity => None,
        }
    }
}

impl std::fmt::Display for MinimalExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinimalExponent::Finite(a) => write!(f, "{a}"),
            MinimalExponent::Infinity => write!(f, "infinity"),
        }
    }
}

pub fn minimal_exponent(data: &MilnorData) -> Result<MinimalExponent, MilnorError> {
    if data.mu == 0 {
        return Ok(MinimalExponent::Infinity);
    }
    match &data.class {
        HomogeneityClass::NotSQH { reason } => Err(MilnorError::NotSQH(reason.clone())),
        _ => Ok(MinimalExponent::Finite(data.input.weights.sum())),
    }
}

/// How the Du Bois invariants b^{0,1}, b^{1,1} were certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    /// Quasi-homogeneous input: multiplication by f is zero, so α = 0 and
    /// b^{0,1} = b^{1,1} (values not determined here).
    QuasiHomogeneousRule,
    /// Member of the certified family x³+y³+z^{3m}+c·x·y·z^{m+a} with
    /// 1 ≤ a ≤ m: b^{0,1} = m, b^{1,1} = a.
    FamilyRule { m: u32, a: u32 },
    /// Only the bounds b^{1,1} = b^{0,1} − α and b^{0,1} ≤ p_g are known.
    BoundsOnly,
}

/// A Du Bois invariant value, when certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BValue {
    Known(u64),
    Unknown,
}

impl BValue {
    pub fn known(&self) -> Option<u64> {
        match self {
            BValue::Known(v) => Some(*v),
            BValue::Unknown => None,
        }
    }
}

/// Invariants of an isolated surface singularity: geometric genus, alpha
/// invariant, and the certified Du Bois invariants.
///
/// Two kernel ideals appear here. `kernel_dimension` belongs to the
/// computed kernel of multiplication by f on Q^f (the colon ideal, checked
/// along two paths). `certified_kernel` is the ideal the certification rule
/// prescribes — for family members the published value (x, y, z^{2m−a}),
/// for quasi-homogeneous inputs the whole ring — and it drives
/// `pg_plus_alpha`. When the two disagree, `kernel_discrepancy` carries a
/// human-readable account; the disagreement is reported, never hidden.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceInvariants {
    pub pg: usize,
    pub alpha: i64,
    /// dim Q^f / (K̄ ∩ V_{>0}) = p_g + α, with K̄ the certified kernel.
    pub pg_plus_alpha: usize,
    pub b01: BValue,
    pub b11: BValue,
    pub certification: Certification,
    pub certified_kernel: Ideal,
    pub kernel_dimension: usize,
    pub kernel_discrepancy: Option<String>,
}

/// Match f against the family x³ + y³ + z^{3m} + c·x·y·z^{m+a} with
/// 1 ≤ a ≤ m, up to scaling and permutation of the variables. The three
/// pure-power coefficients must be equal; c may be any nonzero rational.
fn match_family(input: &SQHInput) -> Option<(u32, u32)> {
    let f = &input.f;
    if f.ring().nvars() != 3 || f.num_terms() != 4 {
        return None;
    }
    let terms: Vec<(&Monomial, &Rational)> = f.terms().collect();
    // The mixed term has all three exponents positive.
    let mixed_idx = terms
        .iter()
        .position(|(m, _)| m.exponents().iter().all(|&e| e > 0))?;
    let mixed = terms[mixed_idx].0;
    // The distinguished variable carries exponent m+a ≥ 2 in the mixed
    // term; the other two carry exponent 1.
    let z = (0..3).find(|&i| mixed.exponent(i) >= 2)?;
    if (0..3).any(|i| i != z && mixed.exponent(i) != 1) {
        return None;
    }
    let mut pure_coeffs = Vec::new();
    let mut z_power = None;
    for (i, (m, c)) in terms.iter().enumerate() {
        if i == mixed_idx {
            continue;
        }
        let nonzero: Vec<usize> = (0..3).filter(|&j| m.exponent(j) > 0).collect();
        if nonzero.len() != 1 {
            return None;
        }
        let v = nonzero[0];
        if v == z {
            z_power = Some(m.exponent(v));
        } else if m.exponent(v) != 3 {
            return None;
        }
        pure_coeffs.push((*c).clone());
    }
    let zp = z_power?;
    if zp % 3 != 0 {
        return None;
    }
    let m_param = zp / 3;
    if m_param < 1 {
        return None;
    }
    let a_param = mixed.exponent(z).checked_sub(m_param)?;
    if a_param < 1 || a_param > m_param {
        return None;
    }
    if pure_coeffs.windows(2).any(|w| w[0] != w[1]) {
        return None;
    }
    // Weights must be the family's: 1/3 on the cubic variables, 1/(3m) on z.
    let expected_z = Rational::new(BigInt::one(), BigInt::from(3 * m_param));
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    for i in 0..3 {
        let expected = if i == z { &expected_z } else { &third };
        if &input.weights.weights()[i] != expected {
            return None;
        }
    }
    Some((m_param, a_param))
}

/// Row vectors spanning the image of an ideal in Q^f.
fn image_span(
    gens: &[Polynomial],
    data: &MilnorData,
) -> Result<Vec<Vec<Rational>>, MilnorError> {
    let mut vectors = Vec::new();
    for g in gens {
        for b in &data.basis {
            vectors.push(coords(&g.mul_term(b, &Rational::one()), &data.gb, &data.basis)?);
        }
    }
    Ok(vectors)
}

/// Compute the surface invariants of a 3-variable input: p_g as the
/// codimension of the heavy part of the filtration, α from the kernel
/// intersection, and b^{0,1}/b^{1,1} when a certification rule applies.
pub fn surface_invariants(
    data: &MilnorData,
    budget: &Budget,
) -> Result<SurfaceInvariants, MilnorError> {
    let ring = data.input.f.ring();
    if ring.nvars() != 3 {
        return Err(MilnorError::NotASurface);
    }
    if data.mu == 0 {
        // Smooth germ: every invariant vanishes.
        let unit = Ideal::new(ring, vec![Polynomial::one(ring)]).expect("unit ideal");
        return Ok(SurfaceInvariants {
            pg: 0,
            alpha: 0,
            pg_plus_alpha: 0,
            b01: BValue::Known(0),
            b11: BValue::Known(0),
            certification: Certification::BoundsOnly,
            certified_kernel: unit,
            kernel_dimension: 0,
            kernel_discrepancy: None,
        });
    }

    let pg = v_filtration_codim(data, &Rational::zero(), budget)?;
    let (kernel, matrix) = mult_kernel_inner(data, budget)?;

    // Span of the heavy part of Q^f: images of g·b for g over the minimal
    // heavy monomials and b over the basis.
    let threshold = Rational::one() - data.input.weights.sum();
    let heavies: Vec<Polynomial> = heavy_monomial_generators(&data.input.weights, &threshold)
        .into_iter()
        .map(|m| Polynomial::term(ring, m, Rational::one()))
        .collect();
    let heavy_vectors = image_span(&heavies, data)?;
    let vdim = linalg::span_dim(&heavy_vectors);
    if vdim + pg != data.mu {
        return Err(MilnorError::PathDisagreement(format!(
            "heavy-span dimension {vdim} and filtration codimension {pg} do not add to μ = {}",
            data.mu
        )));
    }

    // Cross-check: the colon ideal's image must be exactly the nullspace of
    // the multiplication matrix.
    let kernel_basis = linalg::nullspace(&matrix, data.mu);
    if kernel_basis.len() != kernel.dimension {
        return Err(MilnorError::PathDisagreement(
            "nullspace size disagrees with kernel dimension".into(),
        ));
    }
    let colon_span = image_span(kernel.ideal_form.generators(), data)?;
    if linalg::span_dim(&colon_span) != kernel.dimension
        || linalg::intersection_dim(&colon_span, &kernel_basis) != kernel.dimension
    {
        return Err(MilnorError::PathDisagreement(
            "colon-ideal image disagrees with the multiplication nullspace".into(),
        ));
    }

    // The certification rule fixes which kernel ideal enters the
    // p_g + α count.
    let family = match &data.class {
        HomogeneityClass::SemiQuasiHomogeneous { .. } => match_family(&data.input),
        _ => None,
    };
    let certified_kernel = match (&data.class, family) {
        (HomogeneityClass::QuasiHomogeneous, _) => {
            // Euler: f lies in its Jacobian ideal, the kernel is everything.
            Ideal::new(ring, vec![Polynomial::one(ring)]).expect("unit ideal")
        }
        (_, Some((m, a))) => {
            // Published family value (x, y, z^{2m−a}), stated for the
            // distinguished variable of the matched member.
            let z = distinguished_variable(&data.input).expect("matched family member");
            let mut gens = Vec::new();
            for i in 0..3 {
                let e = if i == z { 2 * m - a } else { 1 };
                let mut exps = vec![0u32; 3];
                exps[i] = e;
                gens.push(Polynomial::term(
                    ring,
                    Monomial::from_exponents(exps),
                    Rational::one(),
                ));
            }
            Ideal::new(ring, gens).expect("nonzero generators")
        }
        _ => kernel.ideal_form.clone(),
    };

    let kernel_discrepancy = if crate::groebner::ideals_equal(
        &certified_kernel,
        &kernel.ideal_form,
        budget,
    )? {
        None
    } else {
        Some(format!(
            "certified kernel ideal ({}) differs from the computed multiplication kernel ({})",
            describe_ideal(&certified_kernel, budget)?,
            describe_ideal(&kernel.ideal_form, budget)?,
        ))
    };

    let certified_span = image_span(certified_kernel.generators(), data)?;
    let kv = linalg::intersection_dim(&certified_span, &heavy_vectors);
    let pg_plus_alpha = data.mu - kv;
    let alpha = pg_plus_alpha as i64 - pg as i64;
    if alpha < 0 {
        return Err(MilnorError::PathDisagreement(format!(
            "negative alpha invariant: dim Q/(K∩V) = {pg_plus_alpha} < p_g = {pg}"
        )));
    }

    let (b01, b11, certification) = match (&data.class, family) {
        (HomogeneityClass::QuasiHomogeneous, _) => {
            if alpha != 0 {
                return Err(MilnorError::PathDisagreement(format!(
                    "quasi-homogeneous input with α = {alpha} ≠ 0"
                )));
            }
            (BValue::Unknown, BValue::Unknown, Certification::QuasiHomogeneousRule)
        }
        (_, Some((m, a))) => {
            if pg != m as usize || pg_plus_alpha != (2 * m - a) as usize {
                return Err(MilnorError::PathDisagreement(format!(
                    "family member (m={m}, a={a}) computed p_g = {pg}, p_g+α = {pg_plus_alpha}"
                )));
            }
            (
                BValue::Known(m as u64),
                BValue::Known(a as u64),
                Certification::FamilyRule { m, a },
            )
        }
        _ => (BValue::Unknown, BValue::Unknown, Certification::BoundsOnly),
    };

    // b^{0,1} ≥ b^{1,1} ≥ 0 and b^{0,1} ≤ p_g whenever both are certified.
    if let (BValue::Known(b0), BValue::Known(b1)) = (b01, b11) {
        if b0 < b1 || b0 as i64 - b1 as i64 != alpha || b0 as usize > pg {
            return Err(MilnorError::PathDisagreement(format!(
                "certified invariants b01 = {b0}, b11 = {b1} violate the surface constraints"
            )));
        }
    }

    Ok(SurfaceInvariants {
        pg,
        alpha,
        pg_plus_alpha,
        b01,
        b11,
        certification,
        certified_kernel,
        kernel_dimension: kernel.dimension,
        kernel_discrepancy,
    })
}

/// Index of the variable carrying the z-role in a matched family member.
fn distinguished_variable(input: &SQHInput) -> Option<usize> {
    let mixed = input
        .f
        .terms()
        .map(|(m, _)| m)
        .find(|m| m.exponents().iter().all(|&e| e > 0))?;
    (0..3).find(|&i| mixed.exponent(i) >= 2)
}

fn describe_ideal(ideal: &Ideal, budget: &Budget) -> Result<String, MilnorError> {
    let gb = ideal.groebner_basis(&MonomialOrder::GradedRevLex, budget)?;
    Ok(gb
        .elements()
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(", "))
}
