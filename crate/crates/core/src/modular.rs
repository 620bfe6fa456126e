//! Coefficient generators: the discriminant `Δ`, its inverse, the weak Jacobi
//! form `φ₀,₃` and the Fourier side of `Δ₁`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::{expand_product, ExponentVector, LaurentSeries, ProductExpansion, TruncationProfile, Q_UNITS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobiError {
    #[error("f3({n},{l}) = {a} but f3({n},{neg}) = {b}", neg = -l)]
    NotSymmetric { n: i64, l: i64, a: BigInt, b: BigInt },
    #[error("f3({n},{l}) = {c} lies outside l^2 <= 12n + 9")]
    OutsideWindow { n: i64, l: i64, c: BigInt },
}

/// One-variable `q`-series, stored with scaled exponents `(6n, 0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries(LaurentSeries);

impl QSeries {
    pub fn from_series(s: LaurentSeries) -> Self {
        QSeries(s)
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> BigInt {
        self.0.coeff(&ExponentVector::q_power(n))
    }

    pub fn series(&self) -> &LaurentSeries {
        &self.0
    }

    /// `(n, coefficient)` pairs in increasing `n`, zero coefficients omitted.
    pub fn rows(&self) -> Vec<(i64, BigInt)> {
        self.0.terms().iter().map(|(v, c)| (v.n / Q_UNITS, c.clone())).collect()
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        QSeries(self.0.mul(&other.0).expect("q-series share a profile"))
    }
}

fn q_factors(nmax: i64, e: i64) -> ProductExpansion {
    ProductExpansion::from_factors((1..=nmax).map(|n| (ExponentVector::q_power(n), BigInt::from(e))))
}

/// `Δ = q ∏_{n≥1} (1 − qⁿ)²⁴ = Σ τ(m) qᵐ` up to `q^{nmax}`.
pub fn delta_series(nmax: i64) -> QSeries {
    let profile = TruncationProfile::q_only(nmax);
    let s = expand_product(&q_factors(nmax, 24), ExponentVector::q_power(1), profile).expect("q-factors are valid");
    QSeries(s)
}

/// Ramanujan's `τ(m)`.
pub fn tau(m: i64) -> BigInt {
    delta_series(m).coeff(m)
}

/// `Δ⁻¹ = Σ_{n≥0} p₂₄(n) q^{n−1}`, with `p₂₄(n)` known for `n ≤ nmax`.
pub fn p24_series(nmax: i64) -> QSeries {
    let profile = TruncationProfile::q_only(nmax - 1);
    let s = expand_product(&q_factors(nmax, -24), ExponentVector::q_power(-1), profile).expect("q-factors are valid");
    QSeries(s)
}

/// `p₂₄(0), …, p₂₄(nmax)`.
pub fn p24_values(nmax: i64) -> Vec<BigInt> {
    let s = p24_series(nmax);
    (0..=nmax).map(|n| s.coeff(n - 1)).collect()
}

/// Fourier coefficients `f₃(n, l)` of `φ₀,₃` for `n ≤ nmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiTable {
    nmax: i64,
    coeffs: BTreeMap<(i64, i64), BigInt>,
}

impl JacobiTable {
    pub fn nmax(&self) -> i64 {
        self.nmax
    }

    /// `f₃(n, l)`; `None` when `n` is beyond the computed range.
    pub fn get(&self, n: i64, l: i64) -> Option<BigInt> {
        if n > self.nmax {
            return None;
        }
        Some(self.coeffs.get(&(n, l)).cloned().unwrap_or_default())
    }

    /// Like [`get`](Self::get), but panics outside the computed range.
    pub fn f3(&self, n: i64, l: i64) -> BigInt {
        self.get(n, l).unwrap_or_else(|| panic!("f3({n},{l}) requested beyond computed n <= {}", self.nmax))
    }

    /// Nonzero coefficients of row `n`, in increasing `l`.
    pub fn row(&self, n: i64) -> Vec<(i64, BigInt)> {
        self.coeffs.range((n, i64::MIN)..=(n, i64::MAX)).map(|(&(_, l), c)| (l, c.clone())).collect()
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), BigInt> {
        &self.coeffs
    }

    /// Adds `delta` to one coefficient. Used to build perturbed controls.
    pub fn perturbed(&self, n: i64, l: i64, delta: &BigInt) -> JacobiTable {
        let mut t = self.clone();
        let c = t.coeffs.entry((n, l)).or_default();
        *c += delta;
        if c.is_zero() {
            t.coeffs.remove(&(n, l));
        }
        t
    }

    fn check(&self) -> Result<(), JacobiError> {
        for (&(n, l), c) in &self.coeffs {
            if l * l > 12 * n + 9 {
                return Err(JacobiError::OutsideWindow { n, l, c: c.clone() });
            }
            let b = self.coeffs.get(&(n, -l)).cloned().unwrap_or_default();
            if &b != c {
                return Err(JacobiError::NotSymmetric { n, l, a: c.clone(), b });
            }
        }
        Ok(())
    }
}

/// Expands `r⁻¹ (∏_{n≥1} (1 + q^{n−1} r)(1 + qⁿ r⁻¹)(1 − q^{2n−1} r²)(1 − q^{2n−1} r⁻²))²`
/// by direct multiplication and checks the `l ↦ −l` symmetry and the
/// `l² ≤ 12n + 9` support window of the result.
pub fn phi03_table(nmax: i64) -> Result<JacobiTable, JacobiError> {
    let rows = nmax.max(0) as usize + 1;
    // At q-degree n the squared product reaches |l| ≤ 2(√(2n) + 1 + 2√n).
    let half = (7.0 * (nmax.max(0) as f64).sqrt()).ceil() as usize + 4;
    let width = 2 * half + 1;
    let mut a = vec![BigInt::zero(); rows * width];
    a[half] = BigInt::one();

    // Multiplies by (1 + c·q^dq·r^dl)² in place, pulling from lower q-degree
    // (or, when dq = 0, from the already-unvisited side in l).
    let mut square_factor = |dq: usize, dl: i64, c: i64| {
        if dq >= rows {
            return;
        }
        let (c1, c2) = (BigInt::from(2 * c), BigInt::from(c * c));
        let cols: Vec<usize> = if dl > 0 { (0..width).rev().collect() } else { (0..width).collect() };
        for n in (dq..rows).rev() {
            for &j in &cols {
                let mut acc = BigInt::zero();
                for (k, ck) in [(1usize, &c1), (2, &c2)] {
                    let Some(sn) = n.checked_sub(k * dq) else { break };
                    let sj = j as i64 - k as i64 * dl;
                    if sj < 0 || sj >= width as i64 {
                        continue;
                    }
                    let src = &a[sn * width + sj as usize];
                    if !src.is_zero() {
                        acc += ck * src;
                    }
                }
                if !acc.is_zero() {
                    a[n * width + j] += acc;
                }
            }
        }
    };
    for k in 1..=rows {
        square_factor(k - 1, 1, 1);
        square_factor(k, -1, 1);
        square_factor(2 * k - 1, 2, -1);
        square_factor(2 * k - 1, -2, -1);
    }

    let mut coeffs = BTreeMap::new();
    for n in 0..rows {
        for j in 0..width {
            let c = &a[n * width + j];
            if c.is_zero() {
                continue;
            }
            assert!(j > 0 && j + 1 < width, "phi03 expansion width bound too small at n = {n}");
            // The r⁻¹ prefix shifts every l down by one.
            coeffs.insert((n as i64, j as i64 - half as i64 - 1), c.clone());
        }
    }
    let table = JacobiTable { nmax, coeffs };
    table.check()?;
    Ok(table)
}

/// `(−4/l)`: `±1` for `l ≡ ±1 mod 4`, `0` for even `l`.
pub fn char4(l: i64) -> i64 {
    match l.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// `(12/M)`: `1` for `M ≡ ±1 mod 12`, `−1` for `M ≡ ±5 mod 12`, else `0`.
pub fn char12(m: i64) -> i64 {
    match m.rem_euclid(12) {
        1 | 11 => 1,
        5 | 7 => -1,
        _ => 0,
    }
}

/// `(6/a)`: `±1` for `a ≡ ±1 mod 6`, `0` when `gcd(a, 6) ≠ 1`.
pub fn char6(a: i64) -> i64 {
    match a.rem_euclid(6) {
        1 => 1,
        5 => -1,
        _ => 0,
    }
}

/// `M` with `M² = x`, if `x` is a positive perfect square.
pub fn exact_sqrt(x: i64) -> Option<i64> {
    if x <= 0 {
        return None;
    }
    let r = x.sqrt();
    (r * r == x).then_some(r)
}

/// Coefficient of `q^{n/6} r^{l/2} s^{m/6}` in the Fourier expansion of `Δ₁`.
pub fn delta1_coefficient(n: i64, l: i64, m: i64) -> i64 {
    if n.rem_euclid(6) != 1 || m.rem_euclid(6) != 1 || m <= 0 {
        return 0;
    }
    let Some(big_m) = exact_sqrt(4 * n * m - 3 * l * l) else {
        return 0;
    };
    let g = n.gcd(&l).gcd(&m);
    let divisor_sum: i64 = (1..=g).filter(|a| g % a == 0).map(char6).sum();
    char4(l) * char12(big_m) * divisor_sum
}

/// Fourier side of `Δ₁` within `profile` (scaled exponents).
pub fn delta1_sum_side(profile: &TruncationProfile) -> LaurentSeries {
    let mut out = LaurentSeries::zero(*profile);
    let mut n = 1;
    while n <= profile.n_max {
        let mut m = 1;
        while m <= profile.m_max {
            // 3l² < 4nm bounds l independently of the window.
            let reach = (4 * n * m / 3).sqrt() + 1;
            let w = profile.l_window.map_or(reach, |w| w.min(reach));
            for l in -w..=w {
                let c = delta1_coefficient(n, l, m);
                if c != 0 {
                    out.add_term(ExponentVector::new(n, l, m), BigInt::from(c));
                }
            }
            m += 6;
        }
        n += 6;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: multiply `(1 − qⁿ)` into a dense vector one factor at a time.
    fn tau_oracle(nmax: usize) -> Vec<i128> {
        let mut a = vec![0i128; nmax];
        a[0] = 1;
        for n in 1..nmax {
            for _ in 0..24 {
                for k in (n..nmax).rev() {
                    a[k] -= a[k - n];
                }
            }
        }
        // Δ = q·∏: τ(k+1) = a[k].
        a
    }

    /// Oracle: Euler transform for 24-coloured partitions,
    /// `n·p(n) = 24·Σ_{k=1}^{n} σ(k)·p(n−k)`.
    fn p24_oracle(nmax: usize) -> Vec<i128> {
        let sigma = |k: usize| (1..=k).filter(|d| k % d == 0).sum::<usize>() as i128;
        let mut p = vec![0i128; nmax + 1];
        p[0] = 1;
        for n in 1..=nmax {
            let s: i128 = (1..=n).map(|k| sigma(k) * p[n - k]).sum();
            p[n] = 24 * s / n as i128;
        }
        p
    }

    #[test]
    fn tau_matches_oracle_and_goldens() {
        let d = delta_series(12);
        let oracle = tau_oracle(12);
        for m in 1..=12 {
            assert_eq!(d.coeff(m), BigInt::from(oracle[(m - 1) as usize]), "tau({m})");
        }
        let golden = [1, -24, 252, -1472, 4830, -6048];
        for (i, g) in golden.iter().enumerate() {
            assert_eq!(d.coeff(i as i64 + 1), BigInt::from(*g));
        }
        assert_eq!(tau(6), tau(2) * tau(3));
        assert!(d.coeff(0).is_zero());
    }

    #[test]
    fn p24_matches_oracle() {
        let vals = p24_values(15);
        let oracle = p24_oracle(15);
        for n in 0..=15 {
            assert_eq!(vals[n], BigInt::from(oracle[n]));
        }
        assert_eq!(&vals[..4], &[1, 24, 324, 3200].map(BigInt::from));
    }

    #[test]
    fn delta_times_inverse_is_one() {
        let d = delta_series(20);
        let inv = p24_series(21);
        // Both stored up to q^20 after aligning profiles.
        let inv = QSeries(inv.series().truncate(*d.series().profile()));
        let prod = d.mul(&inv);
        assert_eq!(prod.rows(), vec![(0, BigInt::one())]);
        assert_eq!(prod.series().profile().n_max, 19 * Q_UNITS);
    }

    #[test]
    fn phi03_low_rows() {
        let t = phi03_table(3).unwrap();
        let row0: Vec<(i64, BigInt)> = t.row(0);
        assert_eq!(row0, vec![(-1, 1.into()), (0, 2.into()), (1, 1.into())]);
        assert!(t.f3(0, 2).is_zero());
        assert_eq!(t.get(4, 0), None);
    }

    #[test]
    fn characters() {
        assert_eq!(char4(-1), -1);
        assert_eq!(char4(5), 1);
        assert_eq!(char4(2), 0);
        assert_eq!(char12(7), -1);
        assert_eq!(char12(13), 1);
        assert_eq!(char12(9), 0);
        assert_eq!(char6(6), 0);
        assert_eq!(char6(-1), -1);
        assert_eq!(char6(25), 1);
    }

    #[test]
    fn sum_side_leading_coefficients() {
        assert_eq!(delta1_coefficient(1, 1, 1), 1);
        assert_eq!(delta1_coefficient(1, -1, 1), -1);
        assert_eq!(delta1_coefficient(7, 3, 1), -1);
        assert_eq!(delta1_coefficient(2, 1, 1), 0);
        let s = delta1_sum_side(&TruncationProfile::with_default_window(7, 7));
        assert_eq!(s.coeff(&ExponentVector::new(7, 3, 1)), BigInt::from(-1));
        assert_eq!(s.coeff(&ExponentVector::new(1, 1, 1)), BigInt::one());
    }
}
