//! Truncated multivariate Laurent series in `q, r, s` with exact integer
//! coefficients.
//!
//! Exponents are stored in scaled integer units: a monomial
//! `q^{N/6} r^{L/2} s^{M/6}` is the vector `(N, L, M)`. The scale factors live
//! in [`Q_UNITS`], [`R_UNITS`] and [`S_UNITS`] and nowhere else.

mod grading;
mod product;

pub use grading::{Grading, GRADINGS};
pub use product::{binomial_factor, expand_product, expand_sequence, extract_exponents, ProductExpansion};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Scaled units per unit `q`-exponent.
pub const Q_UNITS: i64 = 6;
/// Scaled units per unit `r`-exponent.
pub const R_UNITS: i64 = 2;
/// Scaled units per unit `s`-exponent.
pub const S_UNITS: i64 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series have different truncation profiles: {0} vs {1}")]
    ProfileMismatch(TruncationProfile, TruncationProfile),
    #[error("factor exponent {0} is zero")]
    ZeroFactor(ExponentVector),
    #[error("factor {0} has a negative q- or s-exponent")]
    NegativeFactor(ExponentVector),
    #[error("factor {vector} has grade 0 and negative exponent {exponent}; its expansion is infinite")]
    InfiniteFactor { vector: ExponentVector, exponent: BigInt },
    #[error("term {0} lies outside the positive cone of the grading")]
    NotInCone(ExponentVector),
    #[error("coefficient at the prefix {prefix} is {coefficient}, expected 1")]
    NonUnitConstant { prefix: ExponentVector, coefficient: BigInt },
    #[error("series is zero; no leading term")]
    ZeroSeries,
    #[error("grade-0 part is not divisible by (1 - X^{0}) within the window")]
    NotDivisible(ExponentVector),
    #[error("malformed term array: {0}")]
    Malformed(String),
}

/// Exponent `(N, L, M)` of the monomial `q^{N/6} r^{L/2} s^{M/6}`.
///
/// Ordered lexicographically by `(N, M, L)`, the canonical order for output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ExponentVector {
    pub n: i64,
    pub l: i64,
    pub m: i64,
}

impl ExponentVector {
    pub const ZERO: ExponentVector = ExponentVector { n: 0, l: 0, m: 0 };

    pub const fn new(n: i64, l: i64, m: i64) -> Self {
        ExponentVector { n, l, m }
    }

    /// Scaled exponent of `q^n r^l s^m` with integer `n, l, m`.
    pub const fn from_units(n: i64, l: i64, m: i64) -> Self {
        ExponentVector { n: n * Q_UNITS, l: l * R_UNITS, m: m * S_UNITS }
    }

    /// Exponent of `q^n` alone, in scaled units.
    pub const fn q_power(n: i64) -> Self {
        Self::from_units(n, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.n * k, self.l * k, self.m * k)
    }
}

impl std::ops::Add for ExponentVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.n + o.n, self.l + o.l, self.m + o.m)
    }
}

impl std::ops::Sub for ExponentVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.n - o.n, self.l - o.l, self.m - o.m)
    }
}

impl std::ops::Neg for ExponentVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.n, -self.l, -self.m)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.n, self.m, self.l).cmp(&(o.n, o.m, o.l))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.l, self.m)
    }
}

/// Smallest `k ≥ 0` with `3k² ≥ 4·n·m`.
fn cone_half_width(n: i64, m: i64) -> i64 {
    if n <= 0 || m <= 0 {
        return 0;
    }
    let target = 4 * (n as i128) * (m as i128);
    let mut k = ((target as f64 / 3.0).sqrt()) as i128;
    while k > 0 && 3 * (k - 1) * (k - 1) >= target {
        k -= 1;
    }
    while 3 * k * k < target {
        k += 1;
    }
    k as i64
}

/// Bounds on the scaled exponents kept by a series.
///
/// Terms with `N > n_max`, `M > m_max` or `|L| > l_window` are discarded.
/// `l_window = None` keeps every `L`. There is no lower bound on `N` or `M`:
/// negative exponents are allowed and simply stay inside the profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationProfile {
    pub n_max: i64,
    pub m_max: i64,
    pub l_window: Option<i64>,
}

impl TruncationProfile {
    pub fn new(n_max: i64, m_max: i64, l_window: Option<i64>) -> Self {
        TruncationProfile { n_max, m_max, l_window }
    }

    /// Window `ceil(2·sqrt(N·M/3)) + 3`, which covers the support condition
    /// `3L² ≤ 4NM` of the objects verified here with a small margin.
    pub fn with_default_window(n_max: i64, m_max: i64) -> Self {
        Self::new(n_max, m_max, Some(Self::default_window(n_max, m_max)))
    }

    pub fn default_window(n_max: i64, m_max: i64) -> i64 {
        cone_half_width(n_max, m_max) + 3
    }

    /// Profile for one-variable `q`-series up to `q^{n_max}` (unscaled).
    pub fn q_only(n_max: i64) -> Self {
        Self::new(n_max * Q_UNITS, 0, Some(0))
    }

    pub fn unbounded_l(n_max: i64, m_max: i64) -> Self {
        Self::new(n_max, m_max, None)
    }

    pub fn contains(&self, v: &ExponentVector) -> bool {
        v.n <= self.n_max && v.m <= self.m_max && self.l_window.map_or(true, |w| v.l.abs() <= w)
    }
}

impl fmt::Display for TruncationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.l_window {
            Some(w) => write!(f, "N<={}, M<={}, |L|<={}", self.n_max, self.m_max, w),
            None => write!(f, "N<={}, M<={}, L unbounded", self.n_max, self.m_max),
        }
    }
}

/// Truncated Laurent series; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    profile: TruncationProfile,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentSeries {
    pub fn zero(profile: TruncationProfile) -> Self {
        LaurentSeries { profile, terms: BTreeMap::new() }
    }

    pub fn one(profile: TruncationProfile) -> Self {
        Self::monomial(profile, ExponentVector::ZERO, BigInt::one())
    }

    pub fn monomial(profile: TruncationProfile, v: ExponentVector, c: BigInt) -> Self {
        let mut s = Self::zero(profile);
        s.add_term(v, c);
        s
    }

    /// Builds a series from terms, summing repeats and dropping anything
    /// outside the profile.
    pub fn from_terms<I>(profile: TruncationProfile, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut s = Self::zero(profile);
        for (v, c) in terms {
            s.add_term(v, c);
        }
        s
    }

    pub fn profile(&self) -> &TruncationProfile {
        &self.profile
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<ExponentVector, BigInt> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: &ExponentVector) -> BigInt {
        self.terms.get(v).cloned().unwrap_or_default()
    }

    /// Adds `c·X^v`; ignored when `v` is outside the profile.
    pub fn add_term(&mut self, v: ExponentVector, c: BigInt) {
        if c.is_zero() || !self.profile.contains(&v) {
            return;
        }
        add_into(&mut self.terms, v, c);
    }

    fn check_profile(&self, other: &LaurentSeries) -> Result<(), SeriesError> {
        if self.profile != other.profile {
            return Err(SeriesError::ProfileMismatch(self.profile, other.profile));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentSeries) -> Result<LaurentSeries, SeriesError> {
        self.check_profile(other)?;
        let mut out = self.clone();
        for (v, c) in &other.terms {
            add_into(&mut out.terms, *v, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentSeries {
        let terms = self.terms.iter().map(|(v, c)| (*v, -c)).collect();
        LaurentSeries { profile: self.profile, terms }
    }

    pub fn sub(&self, other: &LaurentSeries) -> Result<LaurentSeries, SeriesError> {
        self.add(&other.neg())
    }

    /// Product of two series with the same profile.
    ///
    /// When an operand has terms with negative `N` (or `M`), the coefficients
    /// of the product near the upper bound would need unknown terms beyond
    /// the other operand's truncation. The result bound is lowered by the
    /// most negative exponent so that every stored coefficient is exact.
    ///
    /// A finite `L` window is applied to the product as a plain cut, so with
    /// a window the product is not associative (`r⁵·r⁶` is dropped before a
    /// later `r⁻¹` could bring it back). Multiply with `l_window = None` and
    /// truncate at the end when that matters.
    pub fn mul(&self, other: &LaurentSeries) -> Result<LaurentSeries, SeriesError> {
        self.check_profile(other)?;
        let low_n = self.min_n().min(other.min_n()).min(0);
        let low_m = self.min_m().min(other.min_m()).min(0);
        let profile = TruncationProfile {
            n_max: self.profile.n_max + low_n,
            m_max: self.profile.m_max + low_m,
            l_window: self.profile.l_window,
        };
        let mut terms = BTreeMap::new();
        for (va, ca) in &self.terms {
            for (vb, cb) in &other.terms {
                let v = *va + *vb;
                if profile.contains(&v) {
                    add_into(&mut terms, v, ca * cb);
                }
            }
        }
        Ok(LaurentSeries { profile, terms })
    }

    fn min_n(&self) -> i64 {
        self.terms.keys().map(|v| v.n).min().unwrap_or(0)
    }

    fn min_m(&self) -> i64 {
        self.terms.keys().map(|v| v.m).min().unwrap_or(0)
    }

    /// Multiplies by `X^v` and re-truncates to the same profile.
    pub fn shift(&self, v: ExponentVector) -> LaurentSeries {
        Self::from_terms(self.profile, self.terms.iter().map(|(u, c)| (*u + v, c.clone())))
    }

    /// Restriction to a (normally smaller) profile.
    pub fn truncate(&self, profile: TruncationProfile) -> LaurentSeries {
        Self::from_terms(profile, self.terms.iter().map(|(v, c)| (*v, c.clone())))
    }

    pub fn term_array(&self) -> TermArray {
        TermArray(self.terms.iter().map(|(v, c)| (v.n, v.l, v.m, c.to_string())).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.term_array()).expect("term arrays always serialize")
    }

    /// Parses a term array; every term must lie inside `profile`.
    pub fn from_term_array(profile: TruncationProfile, arr: &TermArray) -> Result<LaurentSeries, SeriesError> {
        let mut terms = BTreeMap::new();
        for (n, l, m, c) in &arr.0 {
            let v = ExponentVector::new(*n, *l, *m);
            if !profile.contains(&v) {
                return Err(SeriesError::Malformed(format!("term {v} outside profile {profile}")));
            }
            let c: BigInt = c
                .parse()
                .map_err(|_| SeriesError::Malformed(format!("bad coefficient {c:?} at {v}")))?;
            if terms.insert(v, c).is_some() {
                return Err(SeriesError::Malformed(format!("repeated exponent {v}")));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentSeries { profile, terms })
    }

    pub fn from_json(profile: TruncationProfile, text: &str) -> Result<LaurentSeries, SeriesError> {
        let arr: TermArray = serde_json::from_str(text).map_err(|e| SeriesError::Malformed(e.to_string()))?;
        Self::from_term_array(profile, &arr)
    }
}

pub(crate) fn add_into(terms: &mut BTreeMap<ExponentVector, BigInt>, v: ExponentVector, c: BigInt) {
    use std::collections::btree_map::Entry;
    match terms.entry(v) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Serialized form `[[N, L, M, "coefficient"], ...]` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TermArray(pub Vec<(i64, i64, i64, String)>);
