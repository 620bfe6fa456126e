//! Products `X^p · ∏ (1 − X^v)^{e(v)}` and their inverse, factor peeling.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExponentVector, Grading, LaurentSeries, SeriesError, TermArray, TruncationProfile};

/// Factor map `v ↦ e(v)` of `∏ (1 − X^v)^{e(v)}`; zero exponents are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductExpansion {
    factors: BTreeMap<ExponentVector, BigInt>,
}

impl ProductExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_factors<I>(factors: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut p = Self::new();
        for (v, e) in factors {
            p.insert(v, e);
        }
        p
    }

    /// Sets `e(v)`, replacing any previous value.
    pub fn insert(&mut self, v: ExponentVector, e: BigInt) {
        if e.is_zero() {
            self.factors.remove(&v);
        } else {
            self.factors.insert(v, e);
        }
    }

    pub fn exponent(&self, v: &ExponentVector) -> BigInt {
        self.factors.get(v).cloned().unwrap_or_default()
    }

    pub fn factors(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Keeps only the factors for which `keep` holds.
    pub fn filtered(&self, keep: impl Fn(&ExponentVector) -> bool) -> Self {
        let factors = self.factors.iter().filter(|(v, _)| keep(v)).map(|(v, e)| (*v, e.clone())).collect();
        ProductExpansion { factors }
    }

    pub fn term_array(&self) -> TermArray {
        TermArray(self.factors.iter().map(|(v, e)| (v.n, v.l, v.m, e.to_string())).collect())
    }
}

fn validate_factor(v: &ExponentVector, e: &BigInt) -> Result<(), SeriesError> {
    if v.is_zero() {
        return Err(SeriesError::ZeroFactor(*v));
    }
    if v.n < 0 || v.m < 0 {
        return Err(SeriesError::NegativeFactor(*v));
    }
    if v.n == 0 && v.m == 0 && e.is_negative() {
        return Err(SeriesError::InfiniteFactor { vector: *v, exponent: e.clone() });
    }
    Ok(())
}

/// Largest `k` with `k·v` inside the `N`/`M` limits; `None` if unbounded.
fn max_power(v: &ExponentVector, n_lim: i64, m_lim: i64) -> Option<i64> {
    let mut k: Option<i64> = None;
    if v.n > 0 {
        k = Some(n_lim.div_euclid(v.n));
    }
    if v.m > 0 {
        let km = m_lim.div_euclid(v.m);
        k = Some(k.map_or(km, |k| k.min(km)));
    }
    k
}

/// Coefficients `(−1)^k·C(e, k)` for `k = 0..=kmax`, stopping early when a
/// nonnegative `e` terminates the series.
fn binomial_coefficients(e: &BigInt, kmax: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut c = BigInt::one();
    for k in 1..=kmax {
        let kb = BigInt::from(k);
        c = -(c * (e - &kb + BigInt::one())) / kb;
        if c.is_zero() {
            break;
        }
        out.push(c.clone());
    }
    out
}

/// Truncated expansion of `(1 − X^v)^e`.
pub fn binomial_factor(v: ExponentVector, e: &BigInt, profile: TruncationProfile) -> Result<LaurentSeries, SeriesError> {
    validate_factor(&v, e)?;
    let mut out = LaurentSeries::zero(profile);
    if profile.n_max < 0 || profile.m_max < 0 {
        return Ok(out);
    }
    let kmax = match max_power(&v, profile.n_max, profile.m_max) {
        Some(k) => k,
        None => e.to_i64().expect("grade-0 exponent fits in i64"),
    };
    let kmax = match profile.l_window {
        Some(w) if v.l != 0 => kmax.min(w / v.l.abs()),
        _ => kmax,
    };
    for (k, c) in binomial_coefficients(e, kmax).into_iter().enumerate() {
        out.add_term(v.scale(k as i64), c);
    }
    Ok(out)
}

/// `X^prefix · ∏ (1 − X^v)^{e(v)}` over the factor map, truncated to `profile`.
pub fn expand_product(
    p: &ProductExpansion,
    prefix: ExponentVector,
    profile: TruncationProfile,
) -> Result<LaurentSeries, SeriesError> {
    // Largest grade first: combinations of big factors rarely fit in the
    // profile, so the running product stays sparse until the cheap small
    // factors are applied at the end.
    let mut seq: Vec<(ExponentVector, BigInt)> = p.factors.iter().map(|(v, e)| (*v, e.clone())).collect();
    seq.sort_by_key(|(v, _)| std::cmp::Reverse(v.n + v.m));
    expand_sequence(&seq, prefix, profile)
}

/// Dense grid holding the running product: cell `(i, j, t)` is the exponent
/// `(i·ns, lo + t·ls, j·ms)`.
struct Grid {
    ns: i64,
    ms: i64,
    ls: i64,
    lo: i64,
    dims: (usize, usize, usize),
    cells: Vec<BigInt>,
}

impl Grid {
    fn index(&self, i: usize, j: usize, t: usize) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + t
    }

    /// Multiplies in `(1 − X^v)^e` in place. Each cell pulls from the cells
    /// `x − k·v`, which are visited later in the chosen sweep direction, so
    /// they still hold the old product.
    fn apply(&mut self, v: &ExponentVector, coeffs: &[BigInt]) {
        let (a, b, c) = self.dims;
        let di = (v.n / self.ns.max(1)) as usize;
        let dj = (v.m / self.ms.max(1)) as usize;
        let dt = v.l / self.ls.max(1);
        let forward = di == 0 && dj == 0 && dt < 0;
        let cell = |grid: &mut Grid, i: usize, j: usize, t: usize| {
            let mut acc: Option<BigInt> = None;
            for (k, bk) in coeffs.iter().enumerate().skip(1) {
                let (Some(si), Some(sj)) = (i.checked_sub(k * di), j.checked_sub(k * dj)) else { break };
                let st = t as i64 - k as i64 * dt;
                if st < 0 || st >= c as i64 {
                    break;
                }
                let src = &grid.cells[grid.index(si, sj, st as usize)];
                if src.is_zero() {
                    continue;
                }
                let term = bk * src;
                match acc.as_mut() {
                    Some(x) => *x += term,
                    None => acc = Some(term),
                }
            }
            if let Some(x) = acc {
                let idx = grid.index(i, j, t);
                grid.cells[idx] += x;
            }
        };
        if forward {
            for i in 0..a {
                for j in 0..b {
                    for t in 0..c {
                        cell(self, i, j, t);
                    }
                }
            }
        } else {
            for i in (di..a).rev() {
                for j in (dj..b).rev() {
                    for t in (0..c).rev() {
                        cell(self, i, j, t);
                    }
                }
            }
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Same as [`expand_product`] but multiplies the factors in the given order;
/// repeated vectors are allowed and their exponents add.
///
/// The running product lives on a dense grid. Its `L` range is the profile
/// window widened by the largest shift the factors could still undo, which
/// is bounded by the grade-zero exponents plus the steepest `|L|/grade` ratio
/// times the remaining `N + M` budget. Terms outside that range can never
/// return to the window, so the result does not depend on the order.
pub fn expand_sequence(
    factors: &[(ExponentVector, BigInt)],
    prefix: ExponentVector,
    profile: TruncationProfile,
) -> Result<LaurentSeries, SeriesError> {
    for (v, e) in factors {
        validate_factor(v, e)?;
    }
    let n_lim = profile.n_max - prefix.n;
    let m_lim = profile.m_max - prefix.m;
    if n_lim < 0 || m_lim < 0 {
        return Ok(LaurentSeries::zero(profile));
    }
    let relevant: Vec<&(ExponentVector, BigInt)> =
        factors.iter().filter(|(v, e)| v.n <= n_lim && v.m <= m_lim && !e.is_zero()).collect();

    let (mut ns, mut ms, mut ls) = (0, 0, 0);
    let (mut zero_up, mut zero_down) = (0i128, 0i128);
    let (mut slope_num, mut slope_den) = (0i128, 1i128);
    for (v, e) in &relevant {
        ns = gcd(ns, v.n);
        ms = gcd(ms, v.m);
        ls = gcd(ls, v.l);
        let grade = (v.n + v.m) as i128;
        let l = v.l as i128;
        if grade == 0 {
            let e = e.to_i128().unwrap_or(i128::MAX / 4);
            let shift = e.saturating_mul(l);
            if shift > 0 {
                zero_up = zero_up.saturating_add(shift);
            } else {
                zero_down = zero_down.saturating_add(-shift);
            }
        } else if l.abs() * slope_den > slope_num * grade {
            slope_num = l.abs();
            slope_den = grade;
        }
    }
    let budget = (n_lim + m_lim) as i128;
    let sloped = slope_num * budget / slope_den;
    // Reachable L values of the running product, before the prefix.
    let mut l_lo = -(zero_down + sloped);
    let mut l_hi = zero_up + sloped;
    if let Some(w) = profile.l_window {
        // A term must be able to come back to |L + prefix.l| ≤ w.
        let back = zero_up.max(zero_down) + sloped;
        l_lo = l_lo.max(-(w as i128) - prefix.l as i128 - back);
        l_hi = l_hi.min(w as i128 - prefix.l as i128 + back);
    }
    let ls_i = ls.max(1) as i128;
    let lo = l_lo.div_euclid(ls_i) * ls_i;
    let hi = l_hi.div_euclid(ls_i) * ls_i;
    if lo > 0 || hi < 0 {
        return Ok(LaurentSeries::zero(profile));
    }
    let dims = (
        if ns > 0 { (n_lim / ns) as usize + 1 } else { 1 },
        if ms > 0 { (m_lim / ms) as usize + 1 } else { 1 },
        ((hi - lo) / ls_i) as usize + 1,
    );
    let mut grid = Grid { ns, ms, ls, lo: lo as i64, dims, cells: vec![BigInt::zero(); dims.0 * dims.1 * dims.2] };
    let origin = grid.index(0, 0, ((-lo) / ls_i) as usize);
    grid.cells[origin] = BigInt::one();

    for (v, e) in relevant {
        let kmax = max_power(v, n_lim, m_lim).unwrap_or_else(|| e.to_i64().unwrap_or(i64::MAX));
        let coeffs = binomial_coefficients(e, kmax);
        if coeffs.len() > 1 {
            grid.apply(v, &coeffs);
        }
    }

    let mut out = LaurentSeries::zero(profile);
    let (a, b, c) = grid.dims;
    for i in 0..a {
        for j in 0..b {
            for t in 0..c {
                let coef = &grid.cells[grid.index(i, j, t)];
                if coef.is_zero() {
                    continue;
                }
                let x = ExponentVector::new(i as i64 * grid.ns, grid.lo + t as i64 * grid.ls.max(1), j as i64 * grid.ms);
                out.add_term(x + prefix, coef.clone());
            }
        }
    }
    Ok(out)
}

/// The term `u` of `f` such that every other term lies in `u` + positive cone.
fn leading_term(f: &LaurentSeries, grading: &Grading) -> Option<ExponentVector> {
    let min_grade = f.terms().keys().map(|v| grading.grade(v)).min()?;
    f.terms()
        .keys()
        .filter(|u| grading.grade(u) == min_grade)
        .find(|u| f.terms().keys().all(|v| v == *u || grading.is_positive(&(*v - **u))))
        .copied()
}

type GradedMap = BTreeMap<(i64, i64, ExponentVector), BigInt>;

/// Recovers the factor map of `f = X^prefix · ∏ (1 − X^v)^{e(v)}` by factor
/// peeling along `grading`.
///
/// When `prefix` is `None` it is taken to be the unique term below all others
/// in the grading's cone. `f` is treated as exact up to its `N`/`M` bounds and
/// zero outside its `L` window; peeling itself never truncates in `L`.
pub fn extract_exponents(
    f: &LaurentSeries,
    prefix: Option<ExponentVector>,
    grading: &Grading,
) -> Result<ProductExpansion, SeriesError> {
    if f.is_empty() {
        return Err(SeriesError::ZeroSeries);
    }
    let prefix = match prefix {
        Some(p) => p,
        None => leading_term(f, grading).ok_or(SeriesError::NotInCone(*f.terms().keys().next().unwrap()))?,
    };
    let lead = f.coeff(&prefix);
    if !lead.is_one() {
        return Err(SeriesError::NonUnitConstant { prefix, coefficient: lead });
    }
    let n_lim = f.profile().n_max - prefix.n;
    let m_lim = f.profile().m_max - prefix.m;
    let max_l = f.terms().keys().map(|v| (v.l - prefix.l).abs()).max().unwrap_or(0);
    let zero_slice_limit = f.profile().l_window.map_or(max_l, |w| w + prefix.l.abs()).max(max_l);

    let mut g: GradedMap = BTreeMap::new();
    for (v, c) in f.terms() {
        let x = *v - prefix;
        if !x.is_zero() && !grading.is_positive(&x) {
            return Err(SeriesError::NotInCone(*v));
        }
        g.insert(grading.key(&x), c.clone());
    }

    let mut out = ProductExpansion::new();
    loop {
        let Some(((_, secondary, v), c)) = g.iter().find(|(k, _)| !k.2.is_zero()).map(|(k, c)| (*k, c.clone())) else {
            break;
        };
        let grade_zero = v.n == 0 && v.m == 0;
        if grade_zero && secondary > zero_slice_limit {
            return Err(SeriesError::NotDivisible(v));
        }
        out.insert(v, -&c);
        if grade_zero && c.is_negative() {
            let times = (-&c).to_u64().expect("grade-0 exponent fits in u64");
            for _ in 0..times {
                g = divide_grade_zero(&g, &v, grading)?;
            }
        } else {
            let kmax = max_power(&v, n_lim, m_lim).unwrap_or_else(|| c.to_i64().expect("grade-0 exponent fits in i64"));
            let coeffs = binomial_coefficients(&c, kmax);
            let mut next: GradedMap = BTreeMap::new();
            for ((_, _, x), a) in &g {
                for (k, b) in coeffs.iter().enumerate() {
                    let y = *x + v.scale(k as i64);
                    if y.n > n_lim || y.m > m_lim {
                        break;
                    }
                    let key = grading.key(&y);
                    let entry = next.entry(key).or_default();
                    *entry += a * b;
                }
            }
            next.retain(|_, c| !c.is_zero());
            g = next;
        }
        debug_assert!(!g.contains_key(&grading.key(&v)));
    }
    Ok(out)
}

/// Exact quotient of `g` by `1 − X^v` for a grade-zero `v`, column by column.
fn divide_grade_zero(g: &GradedMap, v: &ExponentVector, grading: &Grading) -> Result<GradedMap, SeriesError> {
    let sign = grading.zero_slice_sign;
    let step = sign * v.l;
    let mut columns: BTreeMap<(i64, i64), BTreeMap<i64, BigInt>> = BTreeMap::new();
    for ((_, _, x), c) in g {
        columns.entry((x.n, x.m)).or_default().insert(sign * x.l, c.clone());
    }
    let mut out: GradedMap = BTreeMap::new();
    for ((n, m), col) in columns {
        let lo = *col.keys().next().unwrap();
        let hi = *col.keys().next_back().unwrap();
        let mut h: HashMap<i64, BigInt> = HashMap::new();
        for s in lo..=hi {
            let mut val = col.get(&s).cloned().unwrap_or_default();
            if let Some(prev) = h.get(&(s - step)) {
                val += prev;
            }
            if !val.is_zero() {
                h.insert(s, val);
            }
        }
        for (s, val) in h {
            if s > hi - step {
                return Err(SeriesError::NotDivisible(*v));
            }
            let x = ExponentVector::new(n, sign * s, m);
            out.insert(grading.key(&x), val);
        }
    }
    Ok(out)
}
