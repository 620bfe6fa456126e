//! Root data: simple roots, Weyl vectors, generalized Cartan matrices, wall
//! angles of the fundamental chamber, chamber reduction, and enumeration of
//! finite Weyl groups.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, is_root, matrix_signature, pairing, reflect_unchecked, Lattice, LatticeError, LatticeVector};
use crate::linalg::{self, QMatrix};

/// Default cap on the order of an enumerated finite Weyl group.
pub const DEFAULT_GROUP_BOUND: usize = 10080;

const MAX_REDUCTION_STEPS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChamberError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("simple root {index} = {vector} is not a root")]
    NotARoot { index: usize, vector: String },
    #[error("Cartan entry ({i}, {j}) = {value} is positive")]
    PositiveOffDiagonal { i: usize, j: usize, value: String },
    #[error("no simple roots given")]
    Empty,
    #[error("vector {vector} violates the Weyl vector condition at root {index}")]
    BadWeylVector { index: usize, vector: String },
    #[error("root datum has no Weyl vector")]
    MissingWeylVector,
    #[error("matrix is not symmetric with even diagonal")]
    InvalidGram,
    #[error("internal error: gram embedding does not reproduce entry ({i}, {j})")]
    EmbeddingFailed { i: usize, j: usize },
    #[error("span of the simple roots has rank {0}, wall angles need rank 3")]
    NotPlanar(usize),
    #[error("unclassified angle between walls {i} and {j}: normalized cosine squared {cos_squared} (pairing sign {sign})")]
    UnclassifiedAngle { i: usize, j: usize, cos_squared: String, sign: i8 },
    #[error("non-consecutive walls {i} and {j} are not divergent ({label})")]
    NonConsecutiveNotDivergent { i: usize, j: usize, label: AngleLabel },
    #[error("Weyl vector has non-negative square {0}")]
    NotTimelike(String),
    #[error("wall {index} has distance value {value}, wall 0 has {expected}")]
    NotEquidistant { index: usize, value: String, expected: String },
    #[error("vector {0} is not in the closed cone selected by the Weyl vector")]
    OutsideCone(String),
    #[error("chamber reduction did not terminate within {0} reflections")]
    ReductionDiverged(usize),
    #[error("Gram matrix of the simple roots is not positive definite")]
    NotPositiveDefinite,
    #[error("Weyl group is not finite within bound {0}")]
    NotFinite(usize),
}

/// A lattice, an ordered list of simple real roots, and optionally a Weyl
/// vector. The generalized Cartan matrix `2(αᵢ, αⱼ)/(αᵢ, αᵢ)` is computed on
/// construction.
#[derive(Debug, Clone)]
pub struct RootDatum {
    lattice: Lattice,
    simple_roots: Vec<LatticeVector>,
    norms: Vec<BigRational>,
    weyl_vector: Option<LatticeVector>,
    cartan: QMatrix,
}

impl RootDatum {
    pub fn new(lattice: Lattice, simple_roots: Vec<LatticeVector>) -> Result<Self, ChamberError> {
        if simple_roots.is_empty() {
            return Err(ChamberError::Empty);
        }
        for (index, a) in simple_roots.iter().enumerate() {
            if !a.lattice().same_as(&lattice) {
                return Err(LatticeError::LatticeMismatch.into());
            }
            if !is_root(a)? {
                return Err(ChamberError::NotARoot { index, vector: a.to_string() });
            }
        }
        let cartan = cartan_matrix(&simple_roots)?;
        for (i, row) in cartan.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j && v.is_positive() {
                    return Err(ChamberError::PositiveOffDiagonal { i, j, value: v.to_string() });
                }
            }
        }
        let norms = simple_roots.iter().map(LatticeVector::norm).collect();
        Ok(RootDatum { lattice, simple_roots, norms, weyl_vector: None, cartan })
    }

    /// Attaches `rho` after checking `(ρ, αᵢ) = −(αᵢ, αᵢ)/2` for every simple root.
    pub fn with_weyl_vector(mut self, rho: LatticeVector) -> Result<Self, ChamberError> {
        let half = BigRational::new(1.into(), 2.into());
        for (index, (a, n)) in self.simple_roots.iter().zip(&self.norms).enumerate() {
            if pairing(&rho, a)? != -(n * &half) {
                return Err(ChamberError::BadWeylVector { index, vector: rho.to_string() });
            }
        }
        self.weyl_vector = Some(rho);
        Ok(self)
    }

    /// Solves for the Weyl vector and attaches it.
    pub fn with_solved_weyl_vector(self) -> Result<Self, ChamberError> {
        let rho = solve_weyl_vector(&self).ok_or(ChamberError::MissingWeylVector)?;
        self.with_weyl_vector(rho)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn simple_roots(&self) -> &[LatticeVector] {
        &self.simple_roots
    }

    pub fn root_norms(&self) -> &[BigRational] {
        &self.norms
    }

    pub fn weyl_vector(&self) -> Option<&LatticeVector> {
        self.weyl_vector.as_ref()
    }

    pub fn cartan(&self) -> &QMatrix {
        &self.cartan
    }

    pub fn len(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simple_roots.is_empty()
    }

    /// Gram matrix `(αᵢ, αⱼ)` of the simple roots.
    pub fn root_gram(&self) -> QMatrix {
        gram_of(&self.simple_roots)
    }

    /// Cartan matrix as integers, when every entry is integral.
    pub fn integer_cartan(&self) -> Option<Vec<Vec<i64>>> {
        self.cartan
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
                    .collect()
            })
            .collect()
    }

    /// Whether `x` lies in the closed chamber `(x, αᵢ) ≤ 0` for all `i`.
    pub fn in_chamber(&self, x: &LatticeVector) -> Result<bool, ChamberError> {
        for a in &self.simple_roots {
            if pairing(x, a)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Applies the reflections of `word` in order: `word = [i, j]` gives `s_j(s_i(x))`.
    pub fn apply_word(&self, word: &[usize], x: &LatticeVector) -> LatticeVector {
        word.iter().fold(x.clone(), |acc, &i| reflect_unchecked(&self.simple_roots[i], &self.norms[i], &acc))
    }

    pub fn reflect_in(&self, i: usize, x: &LatticeVector) -> LatticeVector {
        reflect_unchecked(&self.simple_roots[i], &self.norms[i], x)
    }
}

fn gram_of(vs: &[LatticeVector]) -> QMatrix {
    vs.iter()
        .map(|a| vs.iter().map(|b| pairing(a, b).expect("same lattice")).collect())
        .collect()
}

/// `2(α, α′)/(α, α)` for all ordered pairs of `roots`.
pub fn cartan_matrix(roots: &[LatticeVector]) -> Result<QMatrix, ChamberError> {
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::with_capacity(roots.len());
    for a in roots {
        let n = a.norm();
        if !n.is_positive() {
            return Err(ChamberError::NotARoot { index: out.len(), vector: a.to_string() });
        }
        let row: Result<Vec<_>, LatticeError> =
            roots.iter().map(|b| pairing(a, b).map(|p| &two * p / &n)).collect();
        out.push(row?);
    }
    Ok(out)
}

/// Exact solution of `(ρ, αᵢ) = −αᵢ²/2` inside `span(P) ⊗ Q`, or `None` when
/// the (generally overdetermined) system is inconsistent.
///
/// `ρ` is written as a combination of a maximal independent subset of the
/// simple roots; when the span is nondegenerate the solution is unique.
pub fn solve_weyl_vector(datum: &RootDatum) -> Option<LatticeVector> {
    let gram = datum.root_gram();
    // Columns are the simple roots in lattice coordinates.
    let columns: QMatrix = (0..datum.lattice.rank())
        .map(|c| datum.simple_roots.iter().map(|a| a.coords()[c].clone()).collect())
        .collect();
    let basis = linalg::independent_columns(&columns);

    let half = BigRational::new(1.into(), 2.into());
    let a: QMatrix = gram.iter().map(|row| basis.iter().map(|&j| row[j].clone()).collect()).collect();
    let b: Vec<BigRational> = datum.norms.iter().map(|n| -(n * &half)).collect();
    let c = linalg::solve(&a, &b)?;
    let mut rho = datum.lattice.zero_vector();
    for (cj, &j) in c.iter().zip(&basis) {
        rho = rho.add_scaled(cj, &datum.simple_roots[j]).expect("same lattice");
    }
    // Free variables may leave residual equations unchecked in the degenerate case.
    datum
        .simple_roots
        .iter()
        .zip(&datum.norms)
        .all(|(a, n)| pairing(&rho, a).expect("same lattice") == -(n * &half))
        .then_some(rho)
}

/// Realizes a symmetric integer matrix `M` with even diagonal as the Gram
/// matrix of vectors `v₀, …, v_{n−1}` in a lattice.
///
/// The lattice is the `Z`-span of the vᵢ modulo the radical of `M`: the vᵢ are
/// identified with the rows of `M`, an integer echelon basis of the row module
/// is taken, and the Gram matrix of that basis is pulled back through the
/// unimodular transform. Its rank is `rank(M)` and every vᵢ is integral.
pub fn gram_embedding(matrix: &[Vec<BigInt>]) -> Result<(Lattice, Vec<LatticeVector>), ChamberError> {
    let n = matrix.len();
    let symmetric = matrix.iter().all(|r| r.len() == n)
        && (0..n).all(|i| (0..n).all(|j| matrix[i][j] == matrix[j][i]))
        && (0..n).all(|i| matrix[i][i].is_even());
    if !symmetric {
        return Err(ChamberError::InvalidGram);
    }
    let ech = linalg::integer_row_echelon(matrix);
    let r = ech.rank;
    let u = &ech.transform[..r];
    // Gram of the basis bₖ = Σᵢ U[k][i]·vᵢ.
    let mut gram = vec![vec![BigInt::zero(); r]; r];
    for k in 0..r {
        let uk_m: Vec<BigInt> = (0..n).map(|j| (0..n).map(|i| &u[k][i] * &matrix[i][j]).sum()).collect();
        for l in 0..r {
            gram[k][l] = (0..n).map(|j| &uk_m[j] * &u[l][j]).sum();
        }
    }
    let lat = Lattice::new(gram, None)?;
    let vectors: Vec<LatticeVector> = (0..n)
        .map(|i| {
            let coords = ech.inverse[i][..r].iter().cloned().map(BigRational::from_integer).collect();
            lat.vector(coords).expect("rank matches")
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if pairing(&vectors[i], &vectors[j])? != BigRational::from_integer(matrix[i][j].clone()) {
                return Err(ChamberError::EmbeddingFailed { i, j });
            }
        }
    }
    Ok((lat, vectors))
}

pub fn gram_embedding_i64(matrix: &[Vec<i64>]) -> Result<(Lattice, Vec<LatticeVector>), ChamberError> {
    let m: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    gram_embedding(&m)
}

/// Dihedral angle between two walls of a hyperbolic polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AngleLabel {
    RightAngle,
    /// `π/m` for `m ≥ 3`.
    PiOver(u32),
    /// Walls meeting at infinity (angle 0).
    Parallel,
    /// Walls that do not meet.
    Divergent,
}

impl AngleLabel {
    /// The label in the `"pi/2"`, `"pi/3"`, `"0"` notation of case files.
    pub fn as_label(&self) -> String {
        match self {
            AngleLabel::RightAngle => "pi/2".into(),
            AngleLabel::PiOver(m) => format!("pi/{m}"),
            AngleLabel::Parallel => "0".into(),
            AngleLabel::Divergent => "divergent".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pi/2" => Some(AngleLabel::RightAngle),
            "0" => Some(AngleLabel::Parallel),
            "divergent" => Some(AngleLabel::Divergent),
            _ => s.strip_prefix("pi/")?.parse().ok().filter(|&m| m >= 3).map(AngleLabel::PiOver),
        }
    }
}

impl fmt::Display for AngleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_label())
    }
}

/// Classifies the angle between walls orthogonal to `a` and `b` from the
/// exact normalized cosine `−(a, b)/√(a²·b²)`, compared through its square.
pub fn classify_angle(i: usize, j: usize, a: &LatticeVector, b: &LatticeVector) -> Result<AngleLabel, ChamberError> {
    let p = pairing(a, b)?;
    let prod = a.norm() * b.norm();
    if p.is_zero() {
        return Ok(AngleLabel::RightAngle);
    }
    let p2 = &p * &p;
    let four = BigRational::from_integer(4.into());
    if p.is_negative() {
        if &four * &p2 == prod {
            return Ok(AngleLabel::PiOver(3));
        }
        if p2 == prod {
            return Ok(AngleLabel::Parallel);
        }
        if p2 > prod {
            return Ok(AngleLabel::Divergent);
        }
    }
    Err(ChamberError::UnclassifiedAngle {
        i,
        j,
        cos_squared: (p2 / prod).to_string(),
        sign: if p.is_negative() { -1 } else { 1 },
    })
}

/// Angles of the chamber polygon between consecutive walls in index order,
/// `(α₀, α₁), (α₁, α₂), …, (α_{n−1}, α₀)`. Every non-consecutive pair must be
/// divergent.
pub fn wall_angles(datum: &RootDatum) -> Result<Vec<AngleLabel>, ChamberError> {
    let rank = lattice::matrix_signature(&datum.root_gram());
    let span = rank.positive + rank.negative;
    if span != 3 {
        return Err(ChamberError::NotPlanar(span));
    }
    let roots = datum.simple_roots();
    let n = roots.len();
    let mut angles = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        let label = classify_angle(i, j, &roots[i], &roots[j])?;
        if label == AngleLabel::Divergent {
            let p = pairing(&roots[i], &roots[j])?;
            return Err(ChamberError::UnclassifiedAngle {
                i,
                j,
                cos_squared: (&p * &p / (roots[i].norm() * roots[j].norm())).to_string(),
                sign: -1,
            });
        }
        angles.push(label);
    }
    for i in 0..n {
        for j in i + 1..n {
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if consecutive {
                continue;
            }
            match classify_angle(i, j, &roots[i], &roots[j]) {
                Ok(AngleLabel::Divergent) => {}
                Ok(label) => return Err(ChamberError::NonConsecutiveNotDivergent { i, j, label }),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(angles)
}

/// The common value of `(ρ, α)² / (−(ρ, ρ)·(α, α))` over all walls, i.e. the
/// squared hyperbolic sine of the distance from `R₊₊ρ` to each wall.
pub fn equidistance_check(datum: &RootDatum) -> Result<BigRational, ChamberError> {
    let rho = datum.weyl_vector().ok_or(ChamberError::MissingWeylVector)?;
    let rho2 = rho.norm();
    if !rho2.is_negative() {
        return Err(ChamberError::NotTimelike(rho2.to_string()));
    }
    let mut expected: Option<BigRational> = None;
    for (index, (a, n)) in datum.simple_roots().iter().zip(datum.root_norms()).enumerate() {
        let p = pairing(rho, a)?;
        let value = &p * &p / (-&rho2 * n);
        match &expected {
            None => expected = Some(value),
            Some(e) if *e != value => {
                return Err(ChamberError::NotEquidistant {
                    index,
                    value: value.to_string(),
                    expected: e.to_string(),
                })
            }
            _ => {}
        }
    }
    Ok(expected.expect("datum is nonempty"))
}

/// Result of moving a vector into the fundamental chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub vector: LatticeVector,
    /// Indices of the simple reflections applied, in order.
    pub word: Vec<usize>,
    /// `det(w) = (−1)^len(word)`.
    pub sign: i8,
}

/// Moves `x` into the closed fundamental chamber by greedy reflections.
///
/// Requires `(x, x) ≤ 0` and `(x, ρ) < 0`. While some simple root has
/// `(x, α) > 0`, reflect in the one with the largest pairing (lowest index on
/// ties). Each step raises `(x, ρ)` by `(x, α)`, so the descent terminates.
pub fn reduce_to_chamber(datum: &RootDatum, x: &LatticeVector) -> Result<Reduction, ChamberError> {
    let rho = datum.weyl_vector().ok_or(ChamberError::MissingWeylVector)?;
    if x.norm().is_positive() || !pairing(x, rho)?.is_negative() {
        return Err(ChamberError::OutsideCone(x.to_string()));
    }
    let mut y = x.clone();
    let mut word = Vec::new();
    loop {
        let mut best: Option<(usize, BigRational)> = None;
        for (i, a) in datum.simple_roots().iter().enumerate() {
            let p = pairing(&y, a)?;
            if p.is_positive() && best.as_ref().is_none_or(|(_, b)| p > *b) {
                best = Some((i, p));
            }
        }
        let Some((i, _)) = best else { break };
        y = datum.reflect_in(i, &y);
        word.push(i);
        if word.len() > MAX_REDUCTION_STEPS {
            return Err(ChamberError::ReductionDiverged(MAX_REDUCTION_STEPS));
        }
    }
    let sign = if word.len() % 2 == 0 { 1 } else { -1 };
    Ok(Reduction { vector: y, word, sign })
}

/// An element of a finite Weyl group acting on simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub det: i8,
}

impl WeylElement {
    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(&a, b)| BigRational::from_integer(a.into()) * b).sum())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteWeylGroup {
    /// Canonically sorted by matrix entries.
    pub elements: Vec<WeylElement>,
    /// Positive roots in simple-root coordinates, sorted by height then entries.
    pub positive_roots: Vec<Vec<i64>>,
}

impl FiniteWeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Enumerates the Weyl group of a datum whose simple roots have positive
/// definite Gram matrix, by closure of the simple reflections, together with
/// the positive roots `w(αᵢ)` (nonnegative in the simple-root basis).
pub fn finite_weyl_enumerate(datum: &RootDatum, bound: usize) -> Result<FiniteWeylGroup, ChamberError> {
    let r = datum.len();
    let sig = matrix_signature(&datum.root_gram());
    if sig.positive != r {
        return Err(ChamberError::NotPositiveDefinite);
    }
    let cartan = datum.integer_cartan().ok_or(ChamberError::NotPositiveDefinite)?;
    let identity: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let generators: Vec<Vec<Vec<i64>>> = (0..r)
        .map(|i| {
            let mut s = identity.clone();
            for k in 0..r {
                s[i][k] -= cartan[i][k];
            }
            s
        })
        .collect();

    let mut seen: HashMap<Vec<Vec<i64>>, i8> = HashMap::new();
    seen.insert(identity.clone(), 1);
    let mut queue = VecDeque::from([identity]);
    while let Some(w) = queue.pop_front() {
        let det = seen[&w];
        for s in &generators {
            let sw = mat_mul(s, &w);
            if !seen.contains_key(&sw) {
                if seen.len() >= bound {
                    return Err(ChamberError::NotFinite(bound));
                }
                seen.insert(sw.clone(), -det);
                queue.push_back(sw);
            }
        }
    }
    let mut elements: Vec<WeylElement> = seen.into_iter().map(|(matrix, det)| WeylElement { matrix, det }).collect();
    elements.sort();

    let mut roots = BTreeSet::new();
    for w in &elements {
        for i in 0..r {
            let col: Vec<i64> = (0..r).map(|k| w.matrix[k][i]).collect();
            if col.iter().all(|&c| c >= 0) {
                roots.insert((col.iter().sum::<i64>(), col));
            }
        }
    }
    Ok(FiniteWeylGroup { elements, positive_roots: roots.into_iter().map(|(_, c)| c).collect() })
}

/// Root datum of a finite-type Cartan matrix realized on its root lattice: the
/// lattice Gram matrix is the symmetrization `D·A` and the simple roots are the
/// basis vectors.
pub fn finite_type_datum(cartan: &[Vec<i64>]) -> Result<RootDatum, ChamberError> {
    let sym = symmetrize(cartan).ok_or(ChamberError::InvalidGram)?;
    let lat = Lattice::new(sym, None)?;
    let roots = (0..cartan.len()).map(|i| lat.basis_vector(i)).collect();
    RootDatum::new(lat, roots)
}

/// The integral symmetrization `B = D·A` with `D` positive diagonal, `gcd`-minimal
/// and with even diagonal entries on `B`; `None` if `A` is not symmetrizable.
pub fn symmetrize(cartan: &[Vec<i64>]) -> Option<Vec<Vec<BigInt>>> {
    let n = cartan.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                if cartan[j][i] == 0 {
                    return None;
                }
                // d_i a_ij = d_j a_ji
                let dj = d[i].clone().unwrap() * BigRational::new(cartan[i][j].into(), cartan[j][i].into());
                match &d[j] {
                    Some(existing) if *existing != dj => return None,
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
    if d.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let lcm = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = d.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| &ints[i] / &g * BigInt::from(cartan[i][j])).collect())
            .collect(),
    )
}

/// Cartan matrix of a finite type given by name: `A<n>`, `B<n>`, `C<n>`,
/// `D<n>` (n ≥ 4) or `G2`.
pub fn named_cartan(name: &str) -> Option<Vec<Vec<i64>>> {
    let (kind, rank) = name.split_at(1);
    let n: usize = rank.parse().ok()?;
    if n == 0 {
        return None;
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    match kind {
        "A" => {}
        "B" if n >= 2 => a[n - 2][n - 1] = -2,
        "C" if n >= 2 => a[n - 1][n - 2] = -2,
        "D" if n >= 4 => {
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        "G" if n == 2 => a[0][1] = -3,
        _ => return None,
    }
    Some(a)
}
