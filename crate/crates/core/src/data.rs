//! Embedded case data for the twelve symmetric hyperbolic generalized Cartan
//! matrices, their verification, and an on-disk cache for computed series.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chamber::{equidistance_check, gram_embedding_i64, solve_weyl_vector, wall_angles, ChamberError, RootDatum};
use crate::lattice::{matrix_signature, pairing, Lattice, LatticeVector, Signature};
use crate::series::{LaurentSeries, SeriesError, TermArray, TruncationProfile};
use crate::verify::{Check, Status};

/// Raw JSON of every shipped case file, in table order.
pub const CASE_SOURCES: [(&str, &str); 12] = [
    ("A_1_0", include_str!("../data/cases/A_1_0.json")),
    ("A_1_I", include_str!("../data/cases/A_1_I.json")),
    ("A_1_II", include_str!("../data/cases/A_1_II.json")),
    ("A_1_III", include_str!("../data/cases/A_1_III.json")),
    ("A_2_0", include_str!("../data/cases/A_2_0.json")),
    ("A_2_I", include_str!("../data/cases/A_2_I.json")),
    ("A_2_II", include_str!("../data/cases/A_2_II.json")),
    ("A_2_III", include_str!("../data/cases/A_2_III.json")),
    ("A_3_0", include_str!("../data/cases/A_3_0.json")),
    ("A_3_I", include_str!("../data/cases/A_3_I.json")),
    ("A_3_II", include_str!("../data/cases/A_3_II.json")),
    ("A_3_III", include_str!("../data/cases/A_3_III.json")),
];

#[derive(Debug, Error)]
pub enum DataError {
    #[error("case file {name}: {message}")]
    Parse { name: String, message: String },
    #[error("no case named {0:?}")]
    UnknownCase(String),
    #[error(transparent)]
    Chamber(#[from] ChamberError),
    #[error("cache I/O on {path}: {message}")]
    Io { path: String, message: String },
    #[error("cache file {path}: {message}")]
    Cache { path: String, message: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// One generalized Cartan matrix with its expected chamber geometry, and
/// optionally an explicit lattice realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFile {
    pub name: String,
    pub label: String,
    pub cartan_matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_roots: Option<Vec<Vec<i64>>>,
    /// Rational coordinates as `"p/q"` strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_vector: Option<Vec<String>>,
    pub expected_angles: Vec<String>,
    #[serde(default)]
    pub notes: String,
}

impl CaseFile {
    pub fn parse(name: &str, text: &str) -> Result<Self, DataError> {
        serde_json::from_str(text).map_err(|e| DataError::Parse { name: name.into(), message: e.to_string() })
    }

    pub fn has_explicit_lattice(&self) -> bool {
        self.gram.is_some() && self.simple_roots.is_some()
    }

    /// The stored Weyl vector, if any, in the explicit lattice.
    pub fn stored_weyl_vector(&self, lattice: &Lattice) -> Result<Option<LatticeVector>, DataError> {
        let Some(w) = &self.weyl_vector else { return Ok(None) };
        let coords = w
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| self.parse_error(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let v = lattice.vector(coords).map_err(|e| self.parse_error(e.to_string()))?;
        Ok(Some(v))
    }

    /// Root datum on the explicit lattice when one is given, otherwise on the
    /// lattice spanned by the Cartan matrix itself. No Weyl vector is attached.
    pub fn datum(&self) -> Result<RootDatum, DataError> {
        match (&self.gram, &self.simple_roots) {
            (Some(g), Some(roots)) => {
                let lat = Lattice::from_i64(g, Some(&self.name)).map_err(|e| self.parse_error(e.to_string()))?;
                let vs = roots
                    .iter()
                    .map(|r| lat.int_vector(r).map_err(|e| self.parse_error(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(RootDatum::new(lat, vs)?)
            }
            _ => {
                let (lat, vs) = gram_embedding_i64(&self.cartan_matrix)?;
                Ok(RootDatum::new(lat, vs)?)
            }
        }
    }

    fn parse_error(&self, message: String) -> DataError {
        DataError::Parse { name: self.name.clone(), message }
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            let p: BigInt = p.trim().parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn all_cases() -> Vec<CaseFile> {
    CASE_SOURCES
        .iter()
        .map(|(name, text)| CaseFile::parse(name, text).expect("embedded case files parse"))
        .collect()
}

fn normalize(name: &str) -> String {
    name.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_uppercase()
}

/// Looks a case up by file name (`A_3_II`), label (`A_{3,II}`) or the bare
/// form `A3II`.
pub fn case_by_name(name: &str) -> Result<CaseFile, DataError> {
    let key = normalize(name);
    all_cases()
        .into_iter()
        .find(|c| normalize(&c.name) == key || normalize(&c.label) == key)
        .ok_or_else(|| DataError::UnknownCase(name.to_string()))
}

/// The `A_{3,II}` root datum on `U(12) ⊕ ⟨2⟩` with its stored Weyl vector.
pub fn a3ii_datum() -> RootDatum {
    let case = case_by_name("A_3_II").expect("embedded");
    let datum = case.datum().expect("embedded A_3_II data is valid");
    let rho = case.stored_weyl_vector(datum.lattice()).expect("parses").expect("stored");
    datum.with_weyl_vector(rho).expect("stored Weyl vector is valid")
}

/// A field of a case file that failed verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldFailure {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub status: Status,
    pub signature: Option<Signature>,
    pub angles: Vec<String>,
    pub weyl_vector: Option<Vec<String>>,
    pub weyl_norm: Option<String>,
    pub equidistance: Option<String>,
    pub checks: Vec<Check>,
    pub failure: Option<FieldFailure>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

struct Recorder {
    checks: Vec<Check>,
    failure: Option<FieldFailure>,
}

impl Recorder {
    fn check(&mut self, name: &str, failure: Option<FieldFailure>) {
        let detail = failure.as_ref().map(|f| match f.index {
            Some(i) => format!("{}[{i}]: expected {}, found {}", f.field, f.expected, f.found),
            None => format!("{}: expected {}, found {}", f.field, f.expected, f.found),
        });
        self.checks.push(Check::new(name, detail));
        if self.failure.is_none() {
            self.failure = failure;
        }
    }
}

fn fail(field: &str, index: Option<usize>, expected: impl ToString, found: impl ToString) -> Option<FieldFailure> {
    Some(FieldFailure { field: field.into(), index, expected: expected.to_string(), found: found.to_string() })
}

fn compare_matrices(field: &str, expected: &[Vec<i64>], found: &[Vec<i64>]) -> Option<FieldFailure> {
    if expected.len() != found.len() {
        return fail(field, None, format!("{} rows", expected.len()), format!("{} rows", found.len()));
    }
    let n = expected.len();
    for (i, (a, b)) in expected.iter().zip(found).enumerate() {
        if a != b {
            let j = a.iter().zip(b).position(|(x, y)| x != y).unwrap_or(0);
            return fail(field, Some(i * n + j), format!("{a:?}"), format!("{b:?}"));
        }
    }
    None
}

/// Checks one case: symmetric Cartan matrix with diagonal 2 and signature
/// `(2, 1)` plus zeros, a lattice realization, a Weyl vector with negative
/// square, the exact list of wall angles, equal distance from `ρ` to every
/// wall, and (for explicit lattices) the stored Cartan matrix and `ρ`.
pub fn cartan_verify(case: &CaseFile) -> CaseReport {
    let mut rec = Recorder { checks: Vec::new(), failure: None };
    let mut report = CaseReport {
        case: case.name.clone(),
        status: Status::Fail,
        signature: None,
        angles: Vec::new(),
        weyl_vector: None,
        weyl_norm: None,
        equidistance: None,
        checks: Vec::new(),
        failure: None,
    };
    let a = &case.cartan_matrix;
    let n = a.len();

    let shape = (0..n).find_map(|i| {
        if a[i].len() != n {
            return fail("cartan_matrix", Some(i * n), format!("{n} columns"), format!("{} columns", a[i].len()));
        }
        if a[i][i] != 2 {
            return fail("cartan_matrix", Some(i * n + i), 2, a[i][i]);
        }
        (0..n).find(|&j| a[i][j] != a[j][i]).and_then(|j| fail("cartan_matrix", Some(i * n + j), a[j][i], a[i][j]))
    });
    rec.check("symmetric with diagonal 2", shape);

    let q: Vec<Vec<BigRational>> =
        a.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let sig = matrix_signature(&q);
    report.signature = Some(sig);
    rec.check(
        "signature (2, 1) plus zeros",
        (sig.positive != 2 || sig.negative != 1).then(|| FieldFailure {
            field: "signature".into(),
            index: None,
            expected: "(2, 1, *)".into(),
            found: sig.to_string(),
        }),
    );

    let finish = |mut report: CaseReport, rec: Recorder| {
        report.status = if rec.checks.iter().all(|c| c.passed) { Status::Pass } else { Status::Fail };
        report.checks = rec.checks;
        report.failure = rec.failure;
        report
    };
    if rec.failure.is_some() {
        return finish(report, rec);
    }

    let embedded = gram_embedding_i64(a);
    rec.check(
        "lattice realization",
        match &embedded {
            Ok((lat, _)) => {
                let s = lat.signature();
                (s != Signature::new(2, 1, 0)).then(|| FieldFailure {
                    field: "gram_embedding".into(),
                    index: None,
                    expected: "(2, 1, 0)".into(),
                    found: s.to_string(),
                })
            }
            Err(e) => fail("gram_embedding", None, "embedding", e),
        },
    );

    let datum = match case.datum() {
        Ok(d) => d,
        Err(e) => {
            rec.check("root datum", fail("simple_roots", None, "valid roots", e));
            return finish(report, rec);
        }
    };
    if case.has_explicit_lattice() {
        let computed = datum.integer_cartan().unwrap_or_default();
        rec.check("explicit roots reproduce the Cartan matrix", compare_matrices("cartan_matrix", a, &computed));
    }

    let Some(rho) = solve_weyl_vector(&datum) else {
        rec.check("Weyl vector exists", fail("weyl_vector", None, "a solution", "none"));
        return finish(report, rec);
    };
    report.weyl_vector = Some(rho.coords().iter().map(ToString::to_string).collect());
    let rho2 = rho.norm();
    report.weyl_norm = Some(rho2.to_string());
    rec.check("(rho, rho) < 0", (!rho2.is_negative()).then(|| fail("weyl_norm", None, "< 0", &rho2)).flatten());
    if case.has_explicit_lattice() {
        let stored = case.stored_weyl_vector(datum.lattice());
        let bad = match &stored {
            Ok(Some(v)) if *v == rho => None,
            Ok(Some(v)) => fail("weyl_vector", None, v, &rho),
            Ok(None) => None,
            Err(e) => fail("weyl_vector", None, "p/q strings", e),
        };
        rec.check("stored Weyl vector", bad);
        let off = datum.simple_roots().iter().enumerate().find_map(|(i, al)| {
            let p = pairing(&rho, al).expect("same lattice");
            (p != BigRational::from_integer((-1).into())).then(|| fail("weyl_vector", Some(i), -1, &p)).flatten()
        });
        rec.check("(rho, alpha_i) = -1", off);
    }
    let datum = datum.with_weyl_vector(rho).expect("solved vector satisfies the conditions");

    match wall_angles(&datum) {
        Ok(angles) => {
            report.angles = angles.iter().map(|l| l.as_label()).collect();
            let expected = &case.expected_angles;
            let bad = if expected.len() != report.angles.len() {
                fail("expected_angles", None, format!("{} angles", expected.len()), format!("{} angles", report.angles.len()))
            } else {
                expected
                    .iter()
                    .zip(&report.angles)
                    .position(|(e, f)| e != f)
                    .and_then(|i| fail("expected_angles", Some(i), &expected[i], &report.angles[i]))
            };
            rec.check("wall angles", bad);
        }
        Err(e) => rec.check("wall angles", fail("expected_angles", None, "classifiable angles", e)),
    }
    match equidistance_check(&datum) {
        Ok(v) => {
            report.equidistance = Some(v.to_string());
            rec.check("rho equidistant from the walls", None);
        }
        Err(e) => rec.check("rho equidistant from the walls", fail("equidistance", None, "a common value", e)),
    }
    finish(report, rec)
}

// ---------------------------------------------------------------------------
// Series cache

/// On-disk form of a cached series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedSeries {
    pub object: String,
    pub profile: TruncationProfile,
    pub terms: TermArray,
}

impl CachedSeries {
    pub fn new(object: &str, series: &LaurentSeries) -> Self {
        CachedSeries { object: object.into(), profile: *series.profile(), terms: series.term_array() }
    }

    pub fn series(&self) -> Result<LaurentSeries, SeriesError> {
        LaurentSeries::from_term_array(self.profile, &self.terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cache entries serialize") + "\n"
    }
}

/// Reads a series file in cache format.
pub fn read_series_file(path: &Path) -> Result<CachedSeries, DataError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let entry: CachedSeries = serde_json::from_str(&text)
        .map_err(|e| DataError::Cache { path: path.display().to_string(), message: e.to_string() })?;
    entry.series()?;
    Ok(entry)
}

fn io_error(path: &Path, e: std::io::Error) -> DataError {
    DataError::Io { path: path.display().to_string(), message: e.to_string() }
}

/// Directory of series keyed by object name and profile.
#[derive(Clone, Debug)]
pub struct SeriesCache {
    dir: PathBuf,
}

impl SeriesCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SeriesCache { dir: dir.into() }
    }

    pub fn path(&self, object: &str, profile: &TruncationProfile) -> PathBuf {
        let l = profile.l_window.map_or_else(|| "all".to_string(), |w| w.to_string());
        self.dir.join(format!("{object}_n{}_m{}_l{l}.json", profile.n_max, profile.m_max))
    }

    /// The cached series, or `None` if there is no entry.
    pub fn load(&self, object: &str, profile: &TruncationProfile) -> Result<Option<LaurentSeries>, DataError> {
        let path = self.path(object, profile);
        if !path.exists() {
            return Ok(None);
        }
        let entry = read_series_file(&path)?;
        if entry.object != object || entry.profile != *profile {
            return Err(DataError::Cache {
                path: path.display().to_string(),
                message: format!("holds {} at {}", entry.object, entry.profile),
            });
        }
        Ok(Some(entry.series()?))
    }

    pub fn store(&self, object: &str, series: &LaurentSeries) -> Result<PathBuf, DataError> {
        fs::create_dir_all(&self.dir).map_err(|e| io_error(&self.dir, e))?;
        let path = self.path(object, series.profile());
        fs::write(&path, CachedSeries::new(object, series).to_json()).map_err(|e| io_error(&path, e))?;
        Ok(path)
    }

    pub fn get_or_compute(
        &self,
        object: &str,
        profile: &TruncationProfile,
        compute: impl FnOnce() -> LaurentSeries,
    ) -> Result<LaurentSeries, DataError> {
        if let Some(s) = self.load(object, profile)? {
            return Ok(s);
        }
        let s = compute();
        self.store(object, &s)?;
        Ok(s)
    }
}
