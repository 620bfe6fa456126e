//! Verification engines: the finite Weyl–Kac denominator identity, the sum and
//! product sides of `Δ₁`, Weyl-orbit structure of a series, and recovery of
//! root multiplicities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::chamber::{finite_weyl_enumerate, reduce_to_chamber, ChamberError, RootDatum, DEFAULT_GROUP_BOUND};
use crate::lattice::{Lattice, LatticeError, LatticeVector};
use crate::linalg;
use crate::modular::{delta1_sum_side, exact_sqrt, phi03_table, JacobiError, JacobiTable};
use crate::series::{
    expand_product, extract_exponents, ExponentVector, Grading, LaurentSeries, ProductExpansion, SeriesError,
    TruncationProfile, Q_UNITS, R_UNITS, S_UNITS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Chamber(#[from] ChamberError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
    #[error("structural failure: {0}")]
    Structural(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, failure: Option<String>) -> Self {
        Check { name: name.to_string(), passed: failure.is_none(), detail: failure }
    }
}

/// Outcome of comparing two term maps, plus any side checks.
///
/// `elapsed` is not serialized so that reports of equal runs are identical.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<TruncationProfile>,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub mismatch_count: usize,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn finish(mut self) -> Self {
        let ok = self.mismatch_count == 0 && self.checks.iter().all(|c| c.passed);
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// First mismatch in key order and the total number of mismatching keys.
pub fn compare_term_maps<K: Ord + fmt::Display>(
    lhs: &BTreeMap<K, BigInt>,
    rhs: &BTreeMap<K, BigInt>,
) -> (Option<Mismatch>, usize) {
    let zero = BigInt::zero();
    let keys: BTreeSet<&K> = lhs.keys().chain(rhs.keys()).collect();
    let mut first = None;
    let mut count = 0;
    for k in keys {
        let a = lhs.get(k).unwrap_or(&zero);
        let b = rhs.get(k).unwrap_or(&zero);
        if a != b {
            count += 1;
            if first.is_none() {
                first = Some(Mismatch { exponent: k.to_string(), lhs: a.to_string(), rhs: b.to_string() });
            }
        }
    }
    (first, count)
}

fn report_from<K: Ord + fmt::Display>(
    case: &str,
    profile: Option<TruncationProfile>,
    lhs: &BTreeMap<K, BigInt>,
    rhs: &BTreeMap<K, BigInt>,
    checks: Vec<Check>,
    start: Instant,
) -> VerificationReport {
    let (first_mismatch, mismatch_count) = compare_term_maps(lhs, rhs);
    VerificationReport {
        case: case.to_string(),
        profile,
        status: Status::Fail,
        first_mismatch,
        mismatch_count,
        lhs_terms: lhs.len(),
        rhs_terms: rhs.len(),
        checks,
        elapsed: start.elapsed(),
    }
    .finish()
}

// ---------------------------------------------------------------------------
// Finite denominator identity

/// A weight written in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Weight(pub Vec<BigRational>);

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug)]
pub struct FiniteOptions {
    pub group_bound: usize,
    /// Index into the sorted positive-root list of a factor to leave out.
    pub delete_factor: Option<usize>,
}

impl Default for FiniteOptions {
    fn default() -> Self {
        FiniteOptions { group_bound: DEFAULT_GROUP_BOUND, delete_factor: None }
    }
}

pub fn verify_finite_denominator(datum: &RootDatum) -> Result<VerificationReport, VerifyError> {
    verify_finite_denominator_with(datum, &FiniteOptions::default())
}

/// Compares `e(−ρ) ∏_{α>0} (1 − e(−α))` with `Σ_w det(w) e(−w(ρ))` exactly.
pub fn verify_finite_denominator_with(datum: &RootDatum, opts: &FiniteOptions) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let group = finite_weyl_enumerate(datum, opts.group_bound)?;
    let rho = match datum.weyl_vector() {
        Some(r) => r.clone(),
        None => crate::chamber::solve_weyl_vector(datum).ok_or(ChamberError::MissingWeylVector)?,
    };
    // ρ in simple-root coordinates.
    let rank = datum.lattice().rank();
    let columns: Vec<Vec<BigRational>> =
        (0..rank).map(|k| datum.simple_roots().iter().map(|a| a.coords()[k].clone()).collect()).collect();
    let rho_c = linalg::solve(&columns, rho.coords())
        .ok_or_else(|| VerifyError::Structural("Weyl vector is not in the span of the simple roots".into()))?;

    let neg = |x: &[BigRational]| Weight(x.iter().map(|c| -c).collect());
    let mut lhs: BTreeMap<Weight, BigInt> = BTreeMap::new();
    lhs.insert(neg(&rho_c), BigInt::one());
    for (idx, beta) in group.positive_roots.iter().enumerate() {
        if opts.delete_factor == Some(idx) {
            continue;
        }
        let mut next = BTreeMap::new();
        for (w, c) in &lhs {
            *next.entry(w.clone()).or_insert_with(BigInt::zero) += c;
            let shifted = Weight(w.0.iter().zip(beta).map(|(x, &b)| x - BigRational::from_integer(b.into())).collect());
            *next.entry(shifted).or_insert_with(BigInt::zero) -= c;
        }
        next.retain(|_, c: &mut BigInt| !c.is_zero());
        lhs = next;
    }
    let mut rhs: BTreeMap<Weight, BigInt> = BTreeMap::new();
    for w in &group.elements {
        let image = w.apply(&rho_c);
        *rhs.entry(neg(&image)).or_insert_with(BigInt::zero) += BigInt::from(w.det);
    }
    rhs.retain(|_, c| !c.is_zero());

    let checks = vec![Check::new(
        "group order equals number of alternating-sum terms",
        (rhs.len() != group.order()).then(|| format!("{} terms for a group of order {}", rhs.len(), group.order())),
    )];
    let name = match opts.delete_factor {
        Some(i) => format!("finite (factor {i} deleted)"),
        None => "finite".to_string(),
    };
    Ok(report_from(&name, None, &lhs, &rhs, checks, start))
}

// ---------------------------------------------------------------------------
// Δ₁: exponents as lattice vectors

/// The lattice vector `u = (m/6, −l/2, n/6)` whose character
/// `exp(−2πi(u, z))` is the monomial `q^{n/6} r^{l/2} s^{m/6}`.
pub fn exponent_to_lattice(v: &ExponentVector, lattice: &Lattice) -> LatticeVector {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    lattice
        .vector(vec![r(v.m, S_UNITS), r(-v.l, R_UNITS), r(v.n, Q_UNITS)])
        .expect("rank-3 lattice")
}

/// Inverse of [`exponent_to_lattice`]; `None` if the exponent is not integral.
pub fn lattice_to_exponent(u: &LatticeVector) -> Option<ExponentVector> {
    let c = u.coords();
    let scaled = |x: &BigRational, k: i64| {
        let y = x * BigRational::from_integer(k.into());
        y.is_integer().then(|| i64::try_from(y.to_integer()).ok()).flatten()
    };
    Some(ExponentVector::new(scaled(&c[2], Q_UNITS)?, -scaled(&c[1], R_UNITS)?, scaled(&c[0], S_UNITS)?))
}

/// Which exponent vectors with `n = m = 0` belong to the index set of the
/// product side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexConvention {
    /// `l < 0` when `n = m = 0`.
    NegativeL,
    /// `l > 0` when `n = m = 0`.
    PositiveL,
    /// Every `l ≠ 0` when `n = m = 0`.
    BothSigns,
}

impl IndexConvention {
    pub const ALL: [IndexConvention; 3] = [IndexConvention::NegativeL, IndexConvention::PositiveL, IndexConvention::BothSigns];

    pub fn name(&self) -> &'static str {
        match self {
            IndexConvention::NegativeL => "l-negative",
            IndexConvention::PositiveL => "l-positive",
            IndexConvention::BothSigns => "both-signs",
        }
    }

    pub fn by_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    fn admits_zero_slice(&self, l: i64) -> bool {
        match self {
            IndexConvention::NegativeL => l < 0,
            IndexConvention::PositiveL => l > 0,
            IndexConvention::BothSigns => l != 0,
        }
    }
}

/// Scaled exponent of the leading monomial `q^{1/6} r^{1/2} s^{1/6}`.
pub const DELTA1_PREFIX: ExponentVector = ExponentVector::new(1, 1, 1);

/// Largest unscaled `q`- and `s`-powers of a factor that can reach `profile`.
fn factor_bounds(profile: &TruncationProfile) -> (i64, i64) {
    (
        (profile.n_max - DELTA1_PREFIX.n).div_euclid(Q_UNITS),
        (profile.m_max - DELTA1_PREFIX.m).div_euclid(S_UNITS),
    )
}

/// Size of the `φ₀,₃` table the product side needs for `profile`.
pub fn delta1_table_bound(profile: &TruncationProfile) -> i64 {
    let (a, b) = factor_bounds(profile);
    (a.max(0) * b.max(0)).max(0)
}

/// Factor map `(n, l, m) ↦ f₃(nm, l)` over the index set, restricted to
/// factors that can reach `profile`.
pub fn delta1_factor_map(table: &JacobiTable, profile: &TruncationProfile, convention: IndexConvention) -> ProductExpansion {
    let (nf, mf) = factor_bounds(profile);
    let mut p = ProductExpansion::new();
    for n in 0..=nf {
        for m in 0..=mf {
            for (l, e) in table.row(n * m) {
                if n == 0 && m == 0 && !convention.admits_zero_slice(l) {
                    continue;
                }
                p.insert(ExponentVector::from_units(n, l, m), e);
            }
        }
    }
    p
}

pub fn delta1_product_side(
    table: &JacobiTable,
    profile: &TruncationProfile,
    convention: IndexConvention,
) -> Result<LaurentSeries, VerifyError> {
    let factors = delta1_factor_map(table, profile, convention);
    Ok(expand_product(&factors, DELTA1_PREFIX, *profile)?)
}

/// Change of one `f₃(n, l)` by `delta`, for negative controls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub n: i64,
    pub l: i64,
    pub delta: BigInt,
}

impl std::str::FromStr for Perturbation {
    type Err = String;

    /// Parses `f3:n,l:±k`.
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected f3:n,l:+k, got {s:?}");
        let mut parts = s.split(':');
        if parts.next() != Some("f3") {
            return Err(bad());
        }
        let (n, l) = parts.next().and_then(|p| p.split_once(',')).ok_or_else(bad)?;
        let delta = parts.next().ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let n = n.trim().parse().map_err(|_| bad())?;
        let l = l.trim().parse().map_err(|_| bad())?;
        let delta: BigInt = delta.trim().trim_start_matches('+').parse().map_err(|_| bad())?;
        if delta.is_zero() {
            return Err(format!("perturbation {s:?} changes nothing"));
        }
        Ok(Perturbation { n, l, delta })
    }
}

#[derive(Clone, Debug)]
pub struct Delta1Options {
    pub profile: TruncationProfile,
    pub convention: IndexConvention,
    pub perturbation: Option<Perturbation>,
    /// Run the structural checks on the sum side as part of the report.
    pub structural: bool,
}

impl Delta1Options {
    pub fn new(profile: TruncationProfile) -> Self {
        Delta1Options { profile, convention: IndexConvention::NegativeL, perturbation: None, structural: true }
    }
}

pub struct Delta1Run {
    pub report: VerificationReport,
    pub sum_side: LaurentSeries,
    pub product_side: LaurentSeries,
    pub table: JacobiTable,
}

/// Compares the Fourier side of `Δ₁` with its product side on `datum`'s lattice.
pub fn verify_delta1_identity(datum: &RootDatum, opts: &Delta1Options) -> Result<Delta1Run, VerifyError> {
    let start = Instant::now();
    let mut table = phi03_table(delta1_table_bound(&opts.profile))?;
    if let Some(p) = &opts.perturbation {
        table = table.perturbed(p.n, p.l, &p.delta);
    }
    let sum_side = delta1_sum_side(&opts.profile);
    let product_side = delta1_product_side(&table, &opts.profile, opts.convention)?;

    let mut checks = vec![
        support_cone_check("sum side", &sum_side, datum.lattice()),
        support_cone_check("product side", &product_side, datum.lattice()),
    ];
    if opts.structural {
        checks.extend(delta1_structural_checks(&sum_side, datum));
    }
    let mut case = format!("delta1 ({})", opts.convention.name());
    if let Some(p) = &opts.perturbation {
        case.push_str(&format!(" with f3({},{}) {:+}", p.n, p.l, p.delta));
    }
    let report = report_from(&case, Some(opts.profile), sum_side.terms(), product_side.terms(), checks, start);
    Ok(Delta1Run { report, sum_side, product_side, table })
}

fn first_failure<I: IntoIterator<Item = String>>(it: I) -> Option<String> {
    let mut it = it.into_iter();
    let first = it.next()?;
    let more = it.count();
    Some(if more == 0 { first } else { format!("{first} (and {more} more)") })
}

/// Every nonzero coefficient sits at a `u` with `(u, u) < 0`.
pub fn support_cone_check(label: &str, s: &LaurentSeries, lattice: &Lattice) -> Check {
    let bad = s.terms().keys().filter_map(|v| {
        let u = exponent_to_lattice(v, lattice);
        (!u.norm().is_negative()).then(|| format!("{v} has (u,u) = {}", u.norm()))
    });
    Check::new(&format!("support cone ({label})"), first_failure(bad))
}

/// Antisymmetry in `l`, support in `ρ + S`, `(u, u) = −M²/6`, and
/// `c(s(u)) = −c(u)` under every simple reflection while both ends are in
/// the profile.
pub fn delta1_structural_checks(s: &LaurentSeries, datum: &RootDatum) -> Vec<Check> {
    let lattice = datum.lattice();
    let profile = s.profile();
    let mut checks = Vec::new();

    let anti = s.terms().iter().filter_map(|(v, c)| {
        let mirror = ExponentVector::new(v.n, -v.l, v.m);
        let d = s.coeff(&mirror);
        (d != -c).then(|| format!("c{v} = {c} but c{mirror} = {d}"))
    });
    checks.push(Check::new("antisymmetry l -> -l", first_failure(anti)));

    let rho = datum.weyl_vector();
    let coset = s.terms().keys().filter_map(|v| {
        let u = exponent_to_lattice(v, lattice);
        let ok = rho.is_some_and(|r| u.sub(r).map(|d| d.is_integral()).unwrap_or(false));
        (!ok).then(|| format!("{v} maps to {u}, not in rho + S"))
    });
    checks.push(Check::new("support in rho + S", first_failure(coset)));

    let norms = s.terms().keys().filter_map(|v| {
        let u = exponent_to_lattice(v, lattice);
        let m2 = 4 * v.n * v.m - 3 * v.l * v.l;
        let expected = BigRational::new((-m2).into(), 6.into());
        if exact_sqrt(m2).is_none() {
            return Some(format!("{v}: 4nm - 3l^2 = {m2} is not a positive square"));
        }
        (u.norm() != expected).then(|| format!("{v}: (u,u) = {} but -M^2/6 = {expected}", u.norm()))
    });
    checks.push(Check::new("norm (u,u) = -M^2/6", first_failure(norms)));

    let mut sign_failures = Vec::new();
    let mut compared = 0usize;
    for (v, c) in s.terms() {
        let u = exponent_to_lattice(v, lattice);
        for i in 0..datum.len() {
            let image = datum.reflect_in(i, &u);
            let Some(w) = lattice_to_exponent(&image) else {
                sign_failures.push(format!("s{} maps {v} to a non-exponent {image}", i + 1));
                continue;
            };
            if !profile.contains(&w) {
                continue;
            }
            compared += 1;
            let d = s.coeff(&w);
            if d != -c {
                sign_failures.push(format!("c{v} = {c} but c(s{}{v}) = c{w} = {d}", i + 1));
            }
        }
    }
    let mut sign = Check::new("det sign under simple reflections", first_failure(sign_failures));
    if sign.passed {
        sign.detail = Some(format!("{compared} in-profile pairs compared"));
    }
    checks.push(sign);
    checks
}

// ---------------------------------------------------------------------------
// Orbit decomposition and multiplicities

#[derive(Clone, Debug, Default)]
pub struct OrbitDecomposition {
    /// `a ↦ m(a)` for `a ≠ 0`.
    pub multiplicities: BTreeMap<Vec<BigInt>, BigInt>,
    /// Chamber coefficient of `ρ` itself; `+1` when consistent.
    pub rho_coefficient: Option<BigInt>,
    pub orbits: usize,
    pub violations: Vec<String>,
}

impl OrbitDecomposition {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty() && self.rho_coefficient.as_ref().is_some_and(One::is_one)
    }
}

fn integer_coords(v: &LatticeVector) -> Option<Vec<BigInt>> {
    v.is_integral().then(|| v.coords().iter().map(|c| c.to_integer()).collect())
}

/// Groups the support of `series` into Weyl orbits of chamber vectors `ρ + a`.
///
/// Each term is moved into the chamber; its coefficient times `det(w)` must
/// be the same for every member of an orbit. The chamber coefficient of
/// `ρ + a` is `−m(a)` for `a ≠ 0` and `+1` for `a = 0`.
pub fn weyl_orbit_decompose(series: &LaurentSeries, datum: &RootDatum) -> Result<OrbitDecomposition, VerifyError> {
    let rho = datum.weyl_vector().ok_or(ChamberError::MissingWeylVector)?;
    let lattice = datum.lattice();
    let mut chamber: BTreeMap<Vec<BigRational>, (BigInt, ExponentVector, LatticeVector)> = BTreeMap::new();
    let mut out = OrbitDecomposition::default();
    for (v, c) in series.terms() {
        let u = exponent_to_lattice(v, lattice);
        if !u.sub(rho)?.is_integral() {
            return Err(VerifyError::Structural(format!("{v} maps to {u}, outside rho + S")));
        }
        let red = reduce_to_chamber(datum, &u).map_err(|e| VerifyError::Structural(format!("{v}: {e}")))?;
        let c0 = if red.sign > 0 { c.clone() } else { -c };
        let key = red.vector.coords().to_vec();
        match chamber.get(&key) {
            Some((d, first, _)) if *d != c0 => out
                .violations
                .push(format!("orbit of {}: {first} gives {d} but {v} gives {c0}", red.vector)),
            Some(_) => {}
            None => {
                chamber.insert(key, (c0, *v, red.vector));
            }
        }
    }
    out.orbits = chamber.len();
    for (c0, _, y) in chamber.values() {
        if let Some(w) = lattice_to_exponent(y) {
            if series.profile().contains(&w) && series.coeff(&w) != *c0 {
                out.violations.push(format!("chamber vector {y} has coefficient {} not {c0}", series.coeff(&w)));
            }
        }
        let a = integer_coords(&y.sub(rho)?).expect("checked above");
        if a.iter().all(Zero::is_zero) {
            out.rho_coefficient = Some(c0.clone());
        } else {
            out.multiplicities.insert(a, -c0);
        }
    }
    if !out.rho_coefficient.as_ref().is_some_and(One::is_one) {
        out.violations.push(format!("coefficient of rho is {:?}, expected 1", out.rho_coefficient));
    }
    Ok(out)
}

/// Factor peeling along the cone grading.
pub fn multiplicities_from_product(series: &LaurentSeries, prefix: ExponentVector) -> Result<ProductExpansion, VerifyError> {
    Ok(extract_exponents(series, Some(prefix), &Grading::CONE)?)
}

/// `τ(a), τ(2a), …` from `m(a), m(2a), …` through
/// `1 − Σ_k m(ka) T^k = ∏_n (1 − T^n)^{τ(na)}`.
pub fn isotropic_exponents(m_multiples: &[BigInt]) -> Result<Vec<BigInt>, VerifyError> {
    let k = m_multiples.len() as i64;
    let profile = TruncationProfile::q_only(k);
    let mut terms = vec![(ExponentVector::ZERO, BigInt::one())];
    for (i, m) in m_multiples.iter().enumerate() {
        terms.push((ExponentVector::q_power(i as i64 + 1), -m));
    }
    let f = LaurentSeries::from_terms(profile, terms);
    let p = extract_exponents(&f, Some(ExponentVector::ZERO), &Grading::CONE)?;
    if let Some(v) = p.factors().keys().find(|v| v.n % Q_UNITS != 0) {
        return Err(VerifyError::Structural(format!("non-integral T-power {v}")));
    }
    Ok((1..=k).map(|n| p.exponent(&ExponentVector::q_power(n))).collect())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SimpleRootData {
    pub real: Vec<Vec<String>>,
    /// `(a, multiplicity)` with positive multiplicity.
    pub even_imaginary: Vec<(Vec<String>, String)>,
    pub odd_imaginary: Vec<(Vec<String>, String)>,
    /// Primitive isotropic `a` with `τ(a), τ(2a), …` as far as the data reach.
    pub isotropic: Vec<(Vec<String>, Vec<String>)>,
    /// Recorded `a` outside the closed chamber cone; these are not classified.
    pub outside_chamber: Vec<Vec<String>>,
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn push_signed(data: &mut SimpleRootData, a: &[BigInt], mult: &BigInt) {
    if mult.is_positive() {
        data.even_imaginary.push((strs(a), mult.to_string()));
    } else if mult.is_negative() {
        data.odd_imaginary.push((strs(a), (-mult).to_string()));
    }
}

/// Splits the imaginary simple roots into even and odd ones.
///
/// Only `a` in the closed chamber cone are classified. For `(a, a) < 0` the
/// sign of `m(a)` decides. For a primitive isotropic `a` the exponents `τ(na)` are extracted from the multiples `m(ka)` for every
/// `k` with `known(k·a)`, and `n·a` is even or odd with the sign of `τ(na)`.
pub fn classify_simple_roots(
    m_map: &BTreeMap<Vec<BigInt>, BigInt>,
    datum: &RootDatum,
    known: impl Fn(&[BigInt]) -> bool,
) -> Result<SimpleRootData, VerifyError> {
    let lattice = datum.lattice();
    let mut data = SimpleRootData {
        real: datum.simple_roots().iter().map(|a| a.coords().iter().map(ToString::to_string).collect()).collect(),
        ..Default::default()
    };
    let mut primitive_isotropic = BTreeSet::new();
    for (a, m) in m_map {
        let v = lattice.vector(a.iter().cloned().map(BigRational::from_integer).collect())?;
        if !datum.in_chamber(&v)? {
            data.outside_chamber.push(strs(a));
            continue;
        }
        let norm = v.norm();
        if norm.is_negative() {
            push_signed(&mut data, a, m);
        } else if norm.is_zero() {
            let g = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            primitive_isotropic.insert(a.iter().map(|x| x / &g).collect::<Vec<BigInt>>());
        } else {
            return Err(VerifyError::Structural(format!("m({}) recorded for a vector of positive norm", v)));
        }
    }
    for a in primitive_isotropic {
        let mut ms = Vec::new();
        let mut k = BigInt::one();
        loop {
            let ka: Vec<BigInt> = a.iter().map(|x| x * &k).collect();
            if !known(&ka) {
                break;
            }
            ms.push(m_map.get(&ka).cloned().unwrap_or_default());
            k += 1;
        }
        let taus = isotropic_exponents(&ms)?;
        for (i, t) in taus.iter().enumerate() {
            let na: Vec<BigInt> = a.iter().map(|x| x * BigInt::from(i + 1)).collect();
            push_signed(&mut data, &na, t);
        }
        data.isotropic.push((strs(&a), strs(&taus)));
    }
    Ok(data)
}

/// Checks that peeling `series` at the `Δ₁` prefix gives back exactly
/// `expected` (restricted to the factors that can reach the profile).
pub fn peeling_check(series: &LaurentSeries, expected: &ProductExpansion) -> Result<Check, VerifyError> {
    let peeled = multiplicities_from_product(series, DELTA1_PREFIX)?;
    let (first, count) = compare_term_maps(peeled.factors(), expected.factors());
    let detail = first.map(|m| format!("{count} differences, first at {}: peeled {} expected {}", m.exponent, m.lhs, m.rhs));
    Ok(Check::new("peeled exponents equal f3 factor map", detail))
}
