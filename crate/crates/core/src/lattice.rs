//! Integral lattices with exact symmetric bilinear forms, roots and reflections.
//!
//! A [`Lattice`] is an immutable handle (cheap to clone) around an integral
//! symmetric Gram matrix. [`LatticeVector`]s carry exact rational coordinates
//! in the lattice basis together with the handle of the lattice they live in;
//! any operation mixing vectors of different lattices is rejected.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not square: row {row} has {len} entries, expected {rank}")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("gram matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("vector has {got} coordinates, lattice rank is {rank}")]
    DimensionMismatch { got: usize, rank: usize },
    #[error("vectors belong to different lattices")]
    LatticeMismatch,
    #[error("vector has non-integral coordinates")]
    NonIntegral,
    #[error("vector {0} is not a root of the lattice")]
    NotARoot(String),
}

struct LatticeInner {
    gram: Vec<Vec<BigInt>>,
    name: Option<String>,
}

/// An integral lattice: a free module of finite rank with an integral
/// symmetric bilinear form, given by its Gram matrix in a fixed basis.
#[derive(Clone)]
pub struct Lattice(Arc<LatticeInner>);

impl Lattice {
    pub fn new(gram: Vec<Vec<BigInt>>, name: Option<String>) -> Result<Self, LatticeError> {
        let rank = gram.len();
        for (row, r) in gram.iter().enumerate() {
            if r.len() != rank {
                return Err(LatticeError::NotSquare { row, len: r.len(), rank });
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Lattice(Arc::new(LatticeInner { gram, name })))
    }

    pub fn from_i64(gram: &[Vec<i64>], name: Option<&str>) -> Result<Self, LatticeError> {
        let gram = gram
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(gram, name.map(str::to_owned))
    }

    /// The rank-0 lattice, the identity for [`direct_sum`].
    pub fn zero() -> Self {
        Lattice(Arc::new(LatticeInner { gram: Vec::new(), name: None }))
    }

    /// `U(k)`, the hyperbolic plane scaled by `k`: Gram `[[0, -k], [-k, 0]]`.
    pub fn u_lattice(k: u64) -> Self {
        let off = -BigInt::from(k);
        let gram = vec![vec![BigInt::zero(), off.clone()], vec![off, BigInt::zero()]];
        Lattice(Arc::new(LatticeInner { gram, name: Some(format!("U({k})")) }))
    }

    /// The rank-1 lattice `⟨d⟩`.
    pub fn diagonal(d: i64) -> Self {
        Lattice(Arc::new(LatticeInner { gram: vec![vec![BigInt::from(d)]], name: Some(format!("<{d}>")) }))
    }

    pub fn rank(&self) -> usize {
        self.0.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.0.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    /// Same handle, or structurally identical Gram matrices.
    pub fn same_as(&self, other: &Lattice) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.gram == other.0.gram
    }

    pub fn signature(&self) -> Signature {
        signature(self)
    }

    pub fn vector(&self, coords: Vec<BigRational>) -> Result<LatticeVector, LatticeError> {
        if coords.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch { got: coords.len(), rank: self.rank() });
        }
        Ok(LatticeVector { lattice: self.clone(), coords })
    }

    pub fn int_vector(&self, coords: &[i64]) -> Result<LatticeVector, LatticeError> {
        self.vector(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero_vector(&self) -> LatticeVector {
        LatticeVector { lattice: self.clone(), coords: vec![BigRational::zero(); self.rank()] }
    }

    /// The `i`-th basis vector.
    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        let mut v = self.zero_vector();
        v.coords[i] = BigRational::one();
        v
    }

    fn gram_rational(&self) -> linalg::QMatrix {
        linalg::to_rational(&self.0.gram)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("name", &self.0.name)
            .field("gram", &self.0.gram)
            .finish()
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Lattice {}

/// A vector of `S ⊗ Q` written in the basis of its lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeVector {
    lattice: Lattice,
    coords: Vec<BigRational>,
}

impl LatticeVector {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(BigRational::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn check_same(&self, other: &LatticeVector) -> Result<(), LatticeError> {
        if self.lattice.same_as(&other.lattice) {
            Ok(())
        } else {
            Err(LatticeError::LatticeMismatch)
        }
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(LatticeVector { lattice: self.lattice.clone(), coords })
    }

    pub fn sub(&self, other: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(LatticeVector { lattice: self.lattice.clone(), coords })
    }

    pub fn scale(&self, k: &BigRational) -> LatticeVector {
        LatticeVector { lattice: self.lattice.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> LatticeVector {
        self.scale(&-BigRational::one())
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, k: &BigRational, other: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + k * b).collect();
        Ok(LatticeVector { lattice: self.lattice.clone(), coords })
    }

    pub fn norm(&self) -> BigRational {
        pairing_unchecked(self, self)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Counts of positive, negative and zero squares of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature { positive, negative, zero }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    /// Exactly one negative square.
    pub fn is_hyperbolic(&self) -> bool {
        self.negative == 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

fn pairing_unchecked(x: &LatticeVector, y: &LatticeVector) -> BigRational {
    let gram = x.lattice.gram();
    let mut acc = BigRational::zero();
    for (i, xi) in x.coords.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let mut row = BigRational::zero();
        for (g, yj) in gram[i].iter().zip(&y.coords) {
            if !g.is_zero() && !yj.is_zero() {
                row += yj * BigRational::from_integer(g.clone());
            }
        }
        acc += xi * row;
    }
    acc
}

/// `xᵀ·G·y`, computed exactly.
pub fn pairing(x: &LatticeVector, y: &LatticeVector) -> Result<BigRational, LatticeError> {
    x.check_same(y)?;
    Ok(pairing_unchecked(x, y))
}

/// Signature of a symmetric rational matrix by exact congruence
/// diagonalization.
pub fn matrix_signature(m: &[Vec<BigRational>]) -> Signature {
    let diag = linalg::congruence_diagonal(m);
    let positive = diag.iter().filter(|d| d.is_positive()).count();
    let negative = diag.iter().filter(|d| d.is_negative()).count();
    Signature { positive, negative, zero: diag.len() - positive - negative }
}

pub fn signature(lat: &Lattice) -> Signature {
    matrix_signature(&lat.gram_rational())
}

/// `α² > 0` and `α²` divides `2(α, eᵢ)` for every basis vector `eᵢ`.
pub fn is_root(alpha: &LatticeVector) -> Result<bool, LatticeError> {
    if !alpha.is_integral() {
        return Err(LatticeError::NonIntegral);
    }
    let norm = alpha.norm().to_integer();
    if !norm.is_positive() {
        return Ok(false);
    }
    let lat = alpha.lattice();
    for i in 0..lat.rank() {
        let p: BigInt = alpha
            .coords
            .iter()
            .zip(lat.gram())
            .map(|(a, row)| a.to_integer() * &row[i])
            .sum();
        if !(p * 2u32).is_multiple_of(&norm) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `s_α(x) = x − (2(x, α)/α²)·α`.
pub fn reflect(alpha: &LatticeVector, x: &LatticeVector) -> Result<LatticeVector, LatticeError> {
    x.check_same(alpha)?;
    if !is_root(alpha)? {
        return Err(LatticeError::NotARoot(alpha.to_string()));
    }
    Ok(reflect_unchecked(alpha, &alpha.norm(), x))
}

/// Reflection with the root check and `α²` supplied by the caller.
pub(crate) fn reflect_unchecked(alpha: &LatticeVector, alpha_norm: &BigRational, x: &LatticeVector) -> LatticeVector {
    let k = pairing_unchecked(x, alpha) * BigRational::from_integer(2.into()) / alpha_norm;
    if k.is_zero() {
        return x.clone();
    }
    let coords = x.coords.iter().zip(&alpha.coords).map(|(a, b)| a - &k * b).collect();
    LatticeVector { lattice: x.lattice.clone(), coords }
}

/// Orthogonal direct sum with block-diagonal Gram matrix.
pub fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    let (ra, rb) = (a.rank(), b.rank());
    let mut gram = vec![vec![BigInt::zero(); ra + rb]; ra + rb];
    for i in 0..ra {
        for j in 0..ra {
            gram[i][j] = a.gram()[i][j].clone();
        }
    }
    for i in 0..rb {
        for j in 0..rb {
            gram[ra + i][ra + j] = b.gram()[i][j].clone();
        }
    }
    let name = match (a.name(), b.name()) {
        (Some(x), Some(y)) => Some(format!("{x}+{y}")),
        (Some(x), None) if rb == 0 => Some(x.to_owned()),
        (None, Some(y)) if ra == 0 => Some(y.to_owned()),
        _ => None,
    };
    Lattice(Arc::new(LatticeInner { gram, name }))
}

/// The lattice `S = U(12) ⊕ ⟨2⟩` in the basis `f₂, f̂₃, f₋₂` with Gram
/// `[[0, 0, -12], [0, 2, 0], [-12, 0, 0]]`.
pub fn a3ii_lattice() -> Lattice {
    Lattice::from_i64(&[vec![0, 0, -12], vec![0, 2, 0], vec![-12, 0, 0]], Some("U(12)+<2>"))
        .expect("static gram is symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rho(s: &Lattice) -> LatticeVector {
        s.vector(vec![q(1, 6), q(-1, 2), q(1, 6)]).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let s = a3ii_lattice();
        let a = s.int_vector(&[0, 1, 0]).unwrap();
        assert_eq!(pairing(&a, &a).unwrap(), q(2, 1));
        assert_eq!(pairing(&a, &s.zero_vector()).unwrap(), q(0, 1));
        let r = rho(&s);
        assert_eq!(pairing(&r, &r).unwrap(), q(-1, 6));
    }

    #[test]
    fn mixed_lattices_are_rejected() {
        let s = a3ii_lattice();
        let t = Lattice::diagonal(2);
        let x = s.int_vector(&[0, 1, 0]).unwrap();
        let y = t.int_vector(&[1]).unwrap();
        assert_eq!(pairing(&x, &y), Err(LatticeError::LatticeMismatch));
        assert!(reflect(&y, &x).is_err());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(Lattice::diagonal(2).signature(), Signature::new(1, 0, 0));
        assert_eq!(Lattice::u_lattice(12).signature(), Signature::new(1, 1, 0));
        assert_eq!(a3ii_lattice().signature(), Signature::new(2, 1, 0));
        let a3ii = [
            vec![2, -2, -10, -14, -10, -2],
            vec![-2, 2, -2, -10, -14, -10],
            vec![-10, -2, 2, -2, -10, -14],
            vec![-14, -10, -2, 2, -2, -10],
            vec![-10, -14, -10, -2, 2, -2],
            vec![-2, -10, -14, -10, -2, 2],
        ];
        let m = Lattice::from_i64(&a3ii, None).unwrap();
        assert_eq!(m.signature(), Signature::new(2, 1, 3));
        let zero = Lattice::from_i64(&[vec![0, 0], vec![0, 0]], None).unwrap();
        assert_eq!(zero.signature(), Signature::new(0, 0, 2));
    }

    #[test]
    fn root_examples() {
        let s = a3ii_lattice();
        assert!(is_root(&s.int_vector(&[0, 1, 0]).unwrap()).unwrap());
        assert!(!is_root(&s.zero_vector()).unwrap());
        assert!(is_root(&s.int_vector(&[0, 2, 0]).unwrap()).unwrap());
        // (1,0,-1): norm 24, 2(α,e₁) = 24, 2(α,e₂) = 0, 2(α,e₃) = −24.
        assert!(is_root(&s.int_vector(&[1, 0, -1]).unwrap()).unwrap());
        // (1,1,0): norm 2 but 2(α,e₃) = −24 is divisible; (0,1,1): norm 2 too.
        assert!(is_root(&s.int_vector(&[0, 1, 1]).unwrap()).unwrap());
        // (1,0,1): norm −24 < 0.
        assert!(!is_root(&s.int_vector(&[1, 0, 1]).unwrap()).unwrap());
        assert_eq!(is_root(&rho(&s)), Err(LatticeError::NonIntegral));
    }

    #[test]
    fn reflect_examples() {
        let s = a3ii_lattice();
        let a1 = s.int_vector(&[0, 1, 0]).unwrap();
        assert_eq!(reflect(&a1, &a1).unwrap(), a1.neg());
        let r = reflect(&a1, &rho(&s)).unwrap();
        assert_eq!(r, s.vector(vec![q(1, 6), q(1, 2), q(1, 6)]).unwrap());
        let not_root = s.int_vector(&[1, 0, 1]).unwrap();
        assert!(matches!(reflect(&not_root, &a1), Err(LatticeError::NotARoot(_))));
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&Lattice::u_lattice(12), &Lattice::diagonal(2));
        assert_eq!(s.rank(), 3);
        assert_eq!(s.signature(), a3ii_lattice().signature());
        let a = Lattice::u_lattice(3);
        assert!(direct_sum(&a, &Lattice::zero()).same_as(&a));
        assert_eq!(
            direct_sum(&Lattice::u_lattice(1), &Lattice::diagonal(2)).signature(),
            Signature::new(2, 1, 0)
        );
        assert_eq!(Lattice::u_lattice(12).name(), Some("U(12)"));
    }

    #[test]
    fn non_symmetric_gram_rejected() {
        let err = Lattice::from_i64(&[vec![2, 1], vec![0, 2]], None).unwrap_err();
        assert_eq!(err, LatticeError::NotSymmetric { i: 0, j: 1 });
    }
}
