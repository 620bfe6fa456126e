//! Named strategies selected at runtime: coefficient objects that can be
//! tabulated, and identity cases that can be verified.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::chamber::{finite_type_datum, named_cartan, ChamberError};
use crate::data::a3ii_datum;
use crate::modular::{delta1_sum_side, delta_series, p24_series, phi03_table};
use crate::series::{ExponentVector, LaurentSeries, TruncationProfile, Q_UNITS, R_UNITS};
use crate::verify::{
    delta1_product_side, delta1_table_bound, verify_delta1_identity, verify_finite_denominator_with, Delta1Options,
    FiniteOptions, IndexConvention, Perturbation, VerificationReport, VerifyError,
};

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("unknown {kind} {name:?}; known: {known}")]
    Unknown { kind: &'static str, name: String, known: String },
    #[error("{0}")]
    BadArgument(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// Requested size of a coefficient table.
///
/// For one-variable objects only `n_max` (unscaled `q`-power) is used. For
/// `Δ₁` objects `n_max` and `m_max` are scaled exponents `N` and `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub n_max: i64,
    pub m_max: i64,
    pub l_window: Option<i64>,
}

impl Bounds {
    pub fn new(n_max: i64, m_max: i64, l_window: Option<i64>) -> Self {
        Bounds { n_max, m_max, l_window }
    }

    fn two_variable(&self) -> TruncationProfile {
        match self.l_window {
            Some(w) => TruncationProfile::new(self.n_max, self.m_max, Some(w)),
            None => TruncationProfile::with_default_window(self.n_max, self.m_max),
        }
    }
}

/// Rows of a coefficient table; every cell is a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffTable {
    pub object: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CoeffTable {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

pub trait CoefficientObject: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn columns(&self) -> &'static [&'static str];
    /// Profile of the series computed for `bounds`; doubles as the cache key.
    fn profile(&self, bounds: &Bounds) -> TruncationProfile;
    fn compute(&self, bounds: &Bounds) -> Result<LaurentSeries, RegistryError>;
    /// Table rows of a computed series in canonical order.
    fn rows(&self, series: &LaurentSeries, bounds: &Bounds) -> Vec<Vec<String>>;

    fn table(&self, series: &LaurentSeries, bounds: &Bounds) -> CoeffTable {
        CoeffTable {
            object: self.name().to_string(),
            columns: self.columns().iter().map(|c| c.to_string()).collect(),
            rows: self.rows(series, bounds),
        }
    }
}

fn n_l_m_rows(series: &LaurentSeries) -> Vec<Vec<String>> {
    series
        .terms()
        .iter()
        .map(|(v, c)| vec![v.n.to_string(), v.l.to_string(), v.m.to_string(), c.to_string()])
        .collect()
}

struct Delta;

impl CoefficientObject for Delta {
    fn name(&self) -> &'static str {
        "delta"
    }
    fn description(&self) -> &'static str {
        "Ramanujan tau: q prod (1 - q^n)^24"
    }
    fn columns(&self) -> &'static [&'static str] {
        &["n", "tau"]
    }
    fn profile(&self, b: &Bounds) -> TruncationProfile {
        TruncationProfile::q_only(b.n_max)
    }
    fn compute(&self, b: &Bounds) -> Result<LaurentSeries, RegistryError> {
        Ok(delta_series(b.n_max).series().clone())
    }
    fn rows(&self, s: &LaurentSeries, _: &Bounds) -> Vec<Vec<String>> {
        s.terms().iter().map(|(v, c)| vec![(v.n / Q_UNITS).to_string(), c.to_string()]).collect()
    }
}

struct P24;

impl CoefficientObject for P24 {
    fn name(&self) -> &'static str {
        "p24"
    }
    fn description(&self) -> &'static str {
        "24-colored partitions: 1/Delta = sum p24(n) q^(n-1)"
    }
    fn columns(&self) -> &'static [&'static str] {
        &["n", "p24"]
    }
    fn profile(&self, b: &Bounds) -> TruncationProfile {
        TruncationProfile::q_only(b.n_max - 1)
    }
    fn compute(&self, b: &Bounds) -> Result<LaurentSeries, RegistryError> {
        Ok(p24_series(b.n_max).series().clone())
    }
    fn rows(&self, s: &LaurentSeries, _: &Bounds) -> Vec<Vec<String>> {
        s.terms().iter().map(|(v, c)| vec![(v.n / Q_UNITS + 1).to_string(), c.to_string()]).collect()
    }
}

struct Phi03;

impl CoefficientObject for Phi03 {
    fn name(&self) -> &'static str {
        "phi03"
    }
    fn description(&self) -> &'static str {
        "weak Jacobi form phi_{0,3}: coefficients f3(n, l) of q^n r^l"
    }
    fn columns(&self) -> &'static [&'static str] {
        &["n", "l", "f3"]
    }
    fn profile(&self, b: &Bounds) -> TruncationProfile {
        TruncationProfile::new(b.n_max * Q_UNITS, 0, None)
    }
    fn compute(&self, b: &Bounds) -> Result<LaurentSeries, RegistryError> {
        let t = phi03_table(b.n_max).map_err(VerifyError::from)?;
        let terms = t.entries().iter().map(|(&(n, l), c)| (ExponentVector::from_units(n, l, 0), c.clone()));
        Ok(LaurentSeries::from_terms(self.profile(b), terms))
    }
    fn rows(&self, s: &LaurentSeries, _: &Bounds) -> Vec<Vec<String>> {
        s.terms()
            .iter()
            .map(|(v, c)| vec![(v.n / Q_UNITS).to_string(), (v.l / R_UNITS).to_string(), c.to_string()])
            .collect()
    }
}

struct Delta1Sum;

impl CoefficientObject for Delta1Sum {
    fn name(&self) -> &'static str {
        "delta1-sum"
    }
    fn description(&self) -> &'static str {
        "Fourier side of Delta_1 in scaled exponents (N, L, M) for q^(N/6) r^(L/2) s^(M/6)"
    }
    fn columns(&self) -> &'static [&'static str] {
        &["N", "L", "M", "coefficient"]
    }
    fn profile(&self, b: &Bounds) -> TruncationProfile {
        b.two_variable()
    }
    fn compute(&self, b: &Bounds) -> Result<LaurentSeries, RegistryError> {
        Ok(delta1_sum_side(&self.profile(b)))
    }
    fn rows(&self, s: &LaurentSeries, _: &Bounds) -> Vec<Vec<String>> {
        n_l_m_rows(s)
    }
}

struct Delta1Product;

impl CoefficientObject for Delta1Product {
    fn name(&self) -> &'static str {
        "delta1-product"
    }
    fn description(&self) -> &'static str {
        "product side of Delta_1 with exponents f3(nm, l), scaled exponents (N, L, M)"
    }
    fn columns(&self) -> &'static [&'static str] {
        &["N", "L", "M", "coefficient"]
    }
    fn profile(&self, b: &Bounds) -> TruncationProfile {
        b.two_variable()
    }
    fn compute(&self, b: &Bounds) -> Result<LaurentSeries, RegistryError> {
        let p = self.profile(b);
        let t = phi03_table(delta1_table_bound(&p)).map_err(VerifyError::from)?;
        Ok(delta1_product_side(&t, &p, IndexConvention::NegativeL)?)
    }
    fn rows(&self, s: &LaurentSeries, _: &Bounds) -> Vec<Vec<String>> {
        n_l_m_rows(s)
    }
}

/// Everything an identity case may be asked to vary.
#[derive(Clone, Debug)]
pub struct IdentityRequest {
    /// Text after `name:` in a case selector, e.g. `A2` in `finite:A2`.
    pub argument: Option<String>,
    pub profile: TruncationProfile,
    pub convention: IndexConvention,
    pub perturbation: Option<Perturbation>,
    pub delete_factor: Option<usize>,
}

impl IdentityRequest {
    pub fn new(profile: TruncationProfile) -> Self {
        IdentityRequest {
            argument: None,
            profile,
            convention: IndexConvention::NegativeL,
            perturbation: None,
            delete_factor: None,
        }
    }
}

pub trait IdentityCase: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn verify(&self, req: &IdentityRequest) -> Result<VerificationReport, RegistryError>;
}

struct Delta1Case;

impl IdentityCase for Delta1Case {
    fn name(&self) -> &'static str {
        "delta1"
    }
    fn description(&self) -> &'static str {
        "Fourier side of Delta_1 against its product over f3(nm, l) on the A_{3,II} lattice"
    }
    fn verify(&self, req: &IdentityRequest) -> Result<VerificationReport, RegistryError> {
        if let Some(a) = &req.argument {
            return Err(RegistryError::BadArgument(format!("delta1 takes no argument, got {a:?}")));
        }
        let opts = Delta1Options {
            convention: req.convention,
            perturbation: req.perturbation.clone(),
            ..Delta1Options::new(req.profile)
        };
        Ok(verify_delta1_identity(&a3ii_datum(), &opts)?.report)
    }
}

struct FiniteCase;

impl IdentityCase for FiniteCase {
    fn name(&self) -> &'static str {
        "finite"
    }
    fn description(&self) -> &'static str {
        "Weyl denominator identity of a finite type (finite:A2, finite:B3, finite:G2, ...)"
    }
    fn verify(&self, req: &IdentityRequest) -> Result<VerificationReport, RegistryError> {
        let name = req.argument.as_deref().ok_or_else(|| RegistryError::BadArgument("finite needs a type, e.g. finite:A2".into()))?;
        let cartan = named_cartan(name).ok_or_else(|| RegistryError::BadArgument(format!("unknown finite type {name:?}")))?;
        let datum = finite_type_datum(&cartan).map_err(|e: ChamberError| VerifyError::from(e))?;
        let opts = FiniteOptions { delete_factor: req.delete_factor, ..Default::default() };
        let mut report = verify_finite_denominator_with(&datum, &opts)?;
        report.case = format!("{} {name}", report.case);
        Ok(report)
    }
}

/// A list of named strategies of one kind.
pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    pub fn register(&mut self, entry: Box<T>) {
        self.entries.push(entry);
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|b| b.as_ref())
    }
}

macro_rules! named_lookup {
    ($trait:ident) => {
        impl Registry<dyn $trait> {
            pub fn names(&self) -> Vec<&'static str> {
                self.entries().map(|e| e.name()).collect()
            }

            pub fn get(&self, name: &str) -> Result<&dyn $trait, RegistryError> {
                self.entries().find(|e| e.name() == name).ok_or_else(|| RegistryError::Unknown {
                    kind: self.kind,
                    name: name.to_string(),
                    known: self.names().join(", "),
                })
            }
        }
    };
}

named_lookup!(CoefficientObject);
named_lookup!(IdentityCase);

pub fn coefficient_objects() -> Registry<dyn CoefficientObject> {
    let mut r: Registry<dyn CoefficientObject> = Registry::new("coefficient object");
    r.register(Box::new(Delta));
    r.register(Box::new(P24));
    r.register(Box::new(Phi03));
    r.register(Box::new(Delta1Sum));
    r.register(Box::new(Delta1Product));
    r
}

pub fn identity_cases() -> Registry<dyn IdentityCase> {
    let mut r: Registry<dyn IdentityCase> = Registry::new("identity case");
    r.register(Box::new(Delta1Case));
    r.register(Box::new(FiniteCase));
    r
}

/// Splits a selector `name` or `name:argument`.
pub fn split_selector(selector: &str) -> (&str, Option<&str>) {
    match selector.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (selector, None),
    }
}

/// Convenience: runs an identity case by selector.
pub fn verify_by_name(selector: &str, mut req: IdentityRequest) -> Result<VerificationReport, RegistryError> {
    let (name, arg) = split_selector(selector);
    if let Some(a) = arg {
        req.argument = Some(a.to_string());
    }
    identity_cases().get(name)?.verify(&req)
}

/// Convenience: tabulates a coefficient object by name.
pub fn coefficients_by_name(name: &str, bounds: &Bounds) -> Result<(LaurentSeries, CoeffTable), RegistryError> {
    let objects = coefficient_objects();
    let obj = objects.get(name)?;
    let s = obj.compute(bounds)?;
    let t = obj.table(&s, bounds);
    Ok((s, t))
}

/// Row of a one-variable table as `(n, c)`, for tests and small callers.
pub fn q_rows(table: &CoeffTable) -> Vec<(i64, BigInt)> {
    table.rows.iter().map(|r| (r[0].parse().expect("integer"), r[1].parse().expect("integer"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(name: &str, n: i64) -> Vec<Vec<String>> {
        coefficients_by_name(name, &Bounds::new(n, n, None)).unwrap().1.rows
    }

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(rows("p24", 2), vec![s(&["0", "1"]), s(&["1", "24"]), s(&["2", "324"])]);
        assert_eq!(rows("phi03", 0), vec![s(&["0", "-1", "1"]), s(&["0", "0", "2"]), s(&["0", "1", "1"])]);
        assert_eq!(rows("delta", 1), vec![s(&["1", "1"])]);
        assert_eq!(rows("delta1-sum", 1), vec![s(&["1", "-1", "1", "-1"]), s(&["1", "1", "1", "1"])]);
    }

    #[test]
    fn lookup() {
        assert!(coefficient_objects().get("nope").is_err());
        assert_eq!(identity_cases().names(), vec!["delta1", "finite"]);
        assert_eq!(split_selector("finite:A2"), ("finite", Some("A2")));
    }

    #[test]
    fn identity_selectors() {
        let p = TruncationProfile::with_default_window(7, 7);
        assert!(verify_by_name("finite:A2", IdentityRequest::new(p)).unwrap().passed());
        assert!(verify_by_name("delta1", IdentityRequest::new(p)).unwrap().passed());
        assert!(verify_by_name("finite", IdentityRequest::new(p)).is_err());
        assert!(verify_by_name("finite:Z9", IdentityRequest::new(p)).is_err());
        let req = IdentityRequest { delete_factor: Some(0), ..IdentityRequest::new(p) };
        assert!(!verify_by_name("finite:A2", req).unwrap().passed());
    }

    #[test]
    fn product_object_matches_sum_object() {
        let b = Bounds::new(19, 19, None);
        let (a, _) = coefficients_by_name("delta1-sum", &b).unwrap();
        let (p, _) = coefficients_by_name("delta1-product", &b).unwrap();
        assert_eq!(a, p);
    }
}
