//! Acceptance suite: one line per criterion with its exact tolerance and
//! runtime budget. Exits nonzero if any criterion fails.
//!
//! Every derived value is first produced by an oracle in this file that does
//! not share code with the library, then compared with the library output.

use std::cell::Cell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use lkm_core::chamber::{equidistance_check, finite_type_datum, named_cartan, wall_angles, RootDatum};
use lkm_core::data::{a3ii_datum, all_cases, cartan_verify, case_by_name};
use lkm_core::lattice::{pairing, signature};
use lkm_core::modular::{delta_series, p24_series, p24_values, phi03_table, tau, QSeries};
use lkm_core::series::{
    expand_product, extract_exponents, ExponentVector, Grading, LaurentSeries, ProductExpansion, TruncationProfile,
};
use lkm_core::verify::{
    classify_simple_roots, delta1_factor_map, delta1_table_bound, exponent_to_lattice, isotropic_exponents,
    lattice_to_exponent, peeling_check, verify_delta1_identity, verify_finite_denominator_with,
    weyl_orbit_decompose, Delta1Options, Delta1Run, FiniteOptions, IndexConvention, Perturbation,
};

/// Scaled bound for the main identity: q- and s-powers up to 19.
const MAIN: i64 = 114;

struct Outcome {
    passed: bool,
    summary: String,
}

fn ok(summary: impl Into<String>) -> Result<String, String> {
    Ok(summary.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: u32, title: &str, tolerance: &str, budget: Duration, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (mut passed, mut summary) = match result {
        Ok(s) => (true, s),
        Err(s) => (false, s),
    };
    if elapsed > budget {
        passed = false;
        summary.push_str("; over budget");
    }
    println!(
        "[{}] {id}. {title}: {summary} [tolerance: {tolerance}; {:.2} s of {} s]",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    Outcome { passed, summary }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

// ---------------------------------------------------------------------------
// Oracles

/// Characteristic polynomial coefficients `c_0..c_n` of `det(xI − A)` with
/// `c_n = 1`, by Faddeev–LeVerrier over the integers.
fn char_poly(a: &[Vec<i64>]) -> Vec<i128> {
    let n = a.len();
    let a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|t| a[i][t] * m[t][j]).sum();
            }
            next[i][i] += c[n - k + 1];
        }
        m = next;
        let trace: i128 = (0..n).map(|i| (0..n).map(|t| a[i][t] * m[t][i]).sum::<i128>()).sum();
        assert_eq!(trace % k as i128, 0);
        c[n - k] = -trace / k as i128;
    }
    c
}

fn sign_changes(c: &[i128]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|&&x| x != 0).map(|&x| x > 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(positive, negative, zero)` eigenvalue counts of a symmetric integer
/// matrix. All roots are real, so Descartes' rule is exact.
fn oracle_signature(a: &[Vec<i64>]) -> (usize, usize, usize) {
    let c = char_poly(a);
    let zero = c.iter().take_while(|&&x| x == 0).count();
    let reduced = &c[zero..];
    let mirrored: Vec<i128> = reduced.iter().enumerate().map(|(i, &x)| if i % 2 == 1 { -x } else { x }).collect();
    (sign_changes(reduced), sign_changes(&mirrored), zero)
}

/// Consecutive-wall angles from a symmetric Cartan matrix with diagonal 2:
/// `a_ij = −2cos θ`.
fn oracle_angles(a: &[Vec<i64>]) -> Result<Vec<String>, String> {
    let n = a.len();
    let mut out = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        out.push(
            match a[i][j] {
                0 => "pi/2",
                -1 => "pi/3",
                -2 => "0",
                x => return Err(format!("consecutive entry a[{i}][{j}] = {x}")),
            }
            .to_string(),
        );
    }
    for i in 0..n {
        for j in i + 2..n {
            if !(i == 0 && j == n - 1) && a[i][j] > -2 {
                return Err(format!("non-consecutive walls {i},{j} meet: a = {}", a[i][j]));
            }
        }
    }
    Ok(out)
}

fn mat_vec(g: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    g.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `τ(1..=n)` from `Δ = q η²⁴ = q (η³)⁸` with Jacobi's
/// `η³ = Σ_k (−1)^k (2k+1) q^{k(k+1)/2}`, truncated integer convolution.
fn tau_oracle(n: usize) -> Vec<BigInt> {
    let mut eta3 = vec![BigInt::zero(); n];
    let mut k = 0usize;
    while k * (k + 1) / 2 < n {
        let c = BigInt::from(2 * k as i64 + 1);
        eta3[k * (k + 1) / 2] = if k % 2 == 0 { c } else { -c };
        k += 1;
    }
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut acc = vec![BigInt::zero(); n];
    acc[0] = BigInt::one();
    for _ in 0..8 {
        acc = mul(&acc, &eta3);
    }
    // τ(k+1) is the q^k coefficient of η²⁴.
    acc
}

/// `p₂₄(0..=n)` from `n·a(n) = 24 Σ_{k=1}^{n} σ(k) a(n−k)`.
fn p24_oracle(n: usize) -> Vec<BigInt> {
    let sigma = |k: usize| -> BigInt { BigInt::from((1..=k).filter(|d| k % d == 0).sum::<usize>()) };
    let mut a = vec![BigInt::one()];
    for m in 1..=n {
        let s: BigInt = (1..=m).map(|k| sigma(k) * &a[m - k]).sum();
        a.push(s * 24 / BigInt::from(m));
    }
    a
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

// ---------------------------------------------------------------------------
// Criteria

fn embedded_data() -> Result<String, String> {
    let cases = all_cases();
    ensure(cases.len() == 12, || format!("{} cases embedded", cases.len()))?;
    for case in &cases {
        let n = case.cartan_matrix.len();
        let sig = oracle_signature(&case.cartan_matrix);
        ensure(sig == (2, 1, n - 3), || format!("{}: oracle signature {sig:?}", case.name))?;
        let angles = oracle_angles(&case.cartan_matrix).map_err(|e| format!("{}: {e}", case.name))?;
        ensure(angles == case.expected_angles, || {
            format!("{}: oracle angles {angles:?} vs tabulated {:?}", case.name, case.expected_angles)
        })?;

        let report = cartan_verify(case);
        ensure(report.passed(), || format!("{}: {:?}", case.name, report.failure))?;
        let mut datum = case.datum().map_err(|e| format!("{}: {e}", case.name))?;
        if datum.weyl_vector().is_none() {
            datum = datum.with_solved_weyl_vector().map_err(|e| format!("{}: {e}", case.name))?;
        }
        let lat = signature(datum.lattice());
        ensure((lat.positive, lat.negative, lat.zero) == (2, 1, 0), || format!("{}: lattice {lat:?}", case.name))?;
        let rsig = report.signature.ok_or_else(|| format!("{}: no signature", case.name))?;
        ensure((rsig.positive, rsig.negative, rsig.zero) == sig, || format!("{}: library signature {rsig:?}", case.name))?;
        let rho = datum.weyl_vector().ok_or_else(|| format!("{}: no Weyl vector", case.name))?;
        ensure(rho.norm() < BigRational::zero(), || format!("{}: (rho,rho) = {}", case.name, rho.norm()))?;
        let lib: Vec<String> = wall_angles(&datum).map_err(|e| e.to_string())?.iter().map(|a| a.as_label()).collect();
        ensure(lib == angles, || format!("{}: wall_angles {lib:?}", case.name))?;
        ensure(report.angles == angles, || format!("{}: report angles {:?}", case.name, report.angles))?;
    }
    ok("12/12 cases: signature (2,1)+zeros, timelike rho, angle lists equal")
}

fn a3ii_concordance() -> Result<String, String> {
    let case = case_by_name("A_{3,II}").map_err(|e| e.to_string())?;
    let g = case.gram.clone().ok_or("no gram")?;
    let roots = case.simple_roots.clone().ok_or("no roots")?;
    // All roots have norm 2, so the Cartan matrix is the root Gram matrix.
    let computed: Vec<Vec<i64>> = roots.iter().map(|a| roots.iter().map(|b| dot(a, &mat_vec(&g, b))).collect()).collect();
    ensure(computed == case.cartan_matrix, || format!("computed Cartan {computed:?}"))?;
    // 6ρ = (1, −3, 1): 6(ρ,α) = −6 and 36(ρ,ρ) = −6.
    let rho6 = [1, -3, 1];
    for (i, a) in roots.iter().enumerate() {
        ensure(dot(&rho6, &mat_vec(&g, a)) == -6, || format!("(rho, alpha_{i}) != -1"))?;
    }
    ensure(dot(&rho6, &mat_vec(&g, &rho6)) == -6, || "36(rho,rho) != -6".into())?;
    // (ρ,α)²/(−(ρ,ρ)·(α,α)) = 1/((1/6)·2) = 3
    let datum = a3ii_datum();
    let q = |p: i64, r: i64| BigRational::new(p.into(), r.into());
    let rho = datum.weyl_vector().ok_or("no rho")?;
    ensure(rho.coords() == [q(1, 6), q(-1, 2), q(1, 6)], || format!("stored rho {:?}", rho.coords()))?;
    ensure(rho.norm() == q(-1, 6), || format!("(rho,rho) = {}", rho.norm()))?;
    for a in datum.simple_roots() {
        ensure(pairing(rho, a).map_err(|e| e.to_string())? == q(-1, 1), || format!("library (rho,{a}) != -1"))?;
    }
    let e = equidistance_check(&datum).map_err(|e| e.to_string())?;
    ensure(e == q(3, 1), || format!("equidistance {e}"))?;
    let r = cartan_verify(&case);
    ensure(r.passed() && r.equidistance.as_deref() == Some("3") && r.weyl_norm.as_deref() == Some("-1/6"), || {
        format!("report {:?}", r.failure)
    })?;
    ok("Cartan 6x6 equal, (rho,alpha_i) = -1 x6, (rho,rho) = -1/6, equidistance 3")
}

fn q_series_goldens() -> Result<String, String> {
    let n = 51;
    let oracle_tau = tau_oracle(n);
    let oracle_p = p24_oracle(n);
    ensure(oracle_tau[..6] == ints(&[1, -24, 252, -1472, 4830, -6048]), || format!("tau oracle {:?}", &oracle_tau[..6]))?;
    ensure(oracle_p[..4] == ints(&[1, 24, 324, 3200]), || format!("p24 oracle {:?}", &oracle_p[..4]))?;
    for (k, t) in oracle_tau.iter().enumerate() {
        ensure(tau(k as i64 + 1) == *t, || format!("tau({}) = {} vs oracle {t}", k + 1, tau(k as i64 + 1)))?;
    }
    let p = p24_values(n as i64);
    ensure(p == oracle_p, || "p24 values differ from the oracle".into())?;
    // Δ starts at q¹, so Δ·Δ⁻¹ through q^50 needs Δ to q^51 and Δ⁻¹ to q^49.
    let prod = delta_series(51).mul(&p24_series(52));
    let one = QSeries::from_series(prod.series().truncate(TruncationProfile::q_only(50)));
    let rows = one.rows();
    ensure(rows == vec![(0, BigInt::one())], || format!("Delta * Delta^-1 = {:?}", &rows[..rows.len().min(3)]))?;
    ok("tau(1..6), p24(0..3) match oracle and goldens; tau(1..51), p24(0..51) match oracle; Delta*Delta^-1 = 1 to n<=50")
}

fn main_identity(datum: &RootDatum) -> Result<(String, Delta1Run), String> {
    let profile = TruncationProfile::with_default_window(MAIN, MAIN);
    let run = verify_delta1_identity(datum, &Delta1Options::new(profile)).map_err(|e| e.to_string())?;
    let r = &run.report;
    ensure(r.passed(), || format!("mismatch {:?} ({} total)", r.first_mismatch, r.mismatch_count))?;
    // The truncation window must cover the whole support cone 3L² < 4NM.
    let w = profile.l_window.expect("default window");
    let cone = (1..).take_while(|l| 3 * l * l < 4 * MAIN * MAIN).last().unwrap_or(0);
    ensure(w > cone, || format!("window {w} does not cover |L| <= {cone}"))?;
    for s in [&run.sum_side, &run.product_side] {
        ensure(s.terms().keys().all(|v| v.l.abs() <= cone), || "term outside the support cone".into())?;
    }
    // Same identity with no L cut at all.
    let open = verify_delta1_identity(datum, &Delta1Options::new(TruncationProfile::unbounded_l(37, 37))).map_err(|e| e.to_string())?;
    ensure(open.report.passed(), || format!("unbounded-L run: {:?}", open.report.first_mismatch))?;

    // Negative control: ±1 on each coefficient reaching 13×13, located.
    let small = TruncationProfile::with_default_window(13, 13);
    let table = phi03_table(delta1_table_bound(&small)).map_err(|e| e.to_string())?;
    let mut controls = 0;
    // Factors inside 13×13 are (6n, 2l, 6m) with n, m <= 2, so f3 enters at nm in {0, 1, 2, 4}.
    for &(n, l) in table.entries().keys().filter(|(n, _)| [0, 1, 2, 4].contains(n)) {
        for delta in [1, -1] {
            let opts = Delta1Options {
                perturbation: Some(Perturbation { n, l, delta: delta.into() }),
                structural: false,
                ..Delta1Options::new(small)
            };
            let p = verify_delta1_identity(datum, &opts).map_err(|e| e.to_string())?;
            ensure(!p.report.passed() && p.report.first_mismatch.is_some(), || format!("f3({n},{l}) {delta:+} passes"))?;
            controls += 1;
        }
    }
    ensure(controls >= 10, || format!("only {controls} controls"))?;
    let opts = Delta1Options {
        perturbation: Some(Perturbation { n: 324, l: 0, delta: 1.into() }),
        structural: false,
        ..Delta1Options::new(profile)
    };
    let p = verify_delta1_identity(datum, &opts).map_err(|e| e.to_string())?;
    let at = p.report.first_mismatch.as_ref().map(|m| m.exponent.clone());
    ensure(!p.report.passed() && at.is_some(), || "f3(324,0) +1 passes at full profile".into())?;
    let summary = format!(
        "{} = {} terms equal to q,s^19 (|L| <= {cone} < window {w}); unbounded L to 37/6 passes; \
         {controls} perturbations fail at 13/6, f3(324,0)+1 fails at {}",
        r.lhs_terms,
        r.rhs_terms,
        at.unwrap_or_default()
    );
    Ok((summary, run))
}

fn structural(run: &Delta1Run, datum: &RootDatum) -> Result<String, String> {
    let wanted = ["antisymmetry l -> -l", "support in rho + S", "norm (u,u) = -M^2/6", "det sign under simple reflections"];
    let mut pairs = String::new();
    for name in wanted {
        let c = run.report.checks.iter().find(|c| c.name == name).ok_or_else(|| format!("check {name:?} missing"))?;
        ensure(c.passed, || format!("{name}: {:?}", c.detail))?;
        if name.starts_with("det") {
            pairs = c.detail.clone().unwrap_or_default();
        }
    }
    // Oracle on the raw series: every coefficient sits at 4NM − 3L² = M² > 0.
    for v in run.sum_side.terms().keys() {
        let m2 = 4 * v.n * v.m - 3 * v.l * v.l;
        let r = (m2 as f64).sqrt().round() as i64;
        ensure(m2 > 0 && r * r == m2, || format!("{v}: 4NM - 3L^2 = {m2}"))?;
        let u = exponent_to_lattice(v, datum.lattice());
        ensure(u.norm() == BigRational::new((-m2).into(), 6.into()), || format!("{v}: (u,u) = {}", u.norm()))?;
    }
    // Orbit decomposition and the six cusps with their golden τ(na) = 1.
    let orbits = weyl_orbit_decompose(&run.sum_side, datum).map_err(|e| e.to_string())?;
    ensure(orbits.is_consistent(), || format!("orbits: {:?}", orbits.violations.first()))?;
    let profile = *run.sum_side.profile();
    let rho = datum.weyl_vector().ok_or("no rho")?.clone();
    let known = |a: &[BigInt]| {
        let coords: Vec<BigRational> = a.iter().cloned().map(BigRational::from_integer).collect();
        let v = datum.lattice().vector(coords).and_then(|v| v.add(&rho));
        v.ok().and_then(|v| lattice_to_exponent(&v)).is_some_and(|e| profile.contains(&e))
    };
    let data = classify_simple_roots(&orbits.multiplicities, datum, known).map_err(|e| e.to_string())?;
    let cusps = [[0, 0, 1], [1, -6, 3], [1, 0, 0], [3, -12, 4], [3, -6, 1], [4, -12, 3]];
    ensure(data.isotropic.len() == cusps.len(), || format!("{} primitive isotropic vectors", data.isotropic.len()))?;
    for (a, taus) in &data.isotropic {
        let a: Vec<i64> = a.iter().map(|x| x.parse().unwrap()).collect();
        ensure(cusps.iter().any(|c| c[..] == a[..]), || format!("unexpected isotropic {a:?}"))?;
        ensure(!taus.is_empty() && taus.iter().all(|t| t == "1"), || format!("tau at {a:?}: {taus:?}"))?;
    }
    ok(format!(
        "4 invariants hold on {} terms ({pairs}); {} orbits, rho coefficient 1; 6 cusps with tau(na) = 1",
        run.sum_side.len(),
        orbits.orbits
    ))
}

fn finite_oracle() -> Result<String, String> {
    let mut parts = Vec::new();
    for (name, order, positive) in [("A1", 2, 1), ("A2", 6, 3)] {
        let d = finite_type_datum(&named_cartan(name).ok_or("no cartan")?).map_err(|e| e.to_string())?;
        let r = verify_finite_denominator_with(&d, &FiniteOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.first_mismatch))?;
        // Both sides of Πα>0 (e(α/2) − e(−α/2)) = Σ det(w) e(wρ) have |W| terms.
        ensure(r.lhs_terms == order && r.rhs_terms == order, || format!("{name}: {} / {} terms", r.lhs_terms, r.rhs_terms))?;
        for k in 0..positive {
            let opts = FiniteOptions { delete_factor: Some(k), ..FiniteOptions::default() };
            let r = verify_finite_denominator_with(&d, &opts).map_err(|e| e.to_string())?;
            ensure(!r.passed() && r.first_mismatch.is_some(), || format!("{name} without factor {k} passes"))?;
        }
        parts.push(format!("{name} ({order} terms; each of {positive} single-factor deletions fails)"));
    }
    ok(parts.join(", "))
}

fn factor_map_strategy() -> impl Strategy<Value = Vec<((i64, i64, i64), i64)>> {
    let v = (0i64..=10, -8i64..=8, 0i64..=10).prop_filter("cone", |&(n, l, m)| {
        Grading::CONE.is_positive(&ExponentVector::new(n, l, m))
    });
    prop::collection::vec((v, -30i64..=30), 1..=12)
}

fn extraction() -> Result<String, String> {
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 200, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let count = Cell::new(0usize);
    let profile = TruncationProfile::unbounded_l(10, 10);
    runner
        .run(&factor_map_strategy(), |fs| {
            let map = ProductExpansion::from_factors(fs.into_iter().map(|((n, l, m), e)| {
                let e = if n == 0 && m == 0 { e.abs() } else { e };
                (ExponentVector::new(n, l, m), BigInt::from(e))
            }));
            let f = expand_product(&map, ExponentVector::ZERO, profile).unwrap();
            let back = extract_exponents(&f, Some(ExponentVector::ZERO), &Grading::CONE).unwrap();
            prop_assert_eq!(back, map);
            count.set(count.get() + 1);
            Ok(())
        })
        .map_err(|e| format!("round trip: {e}"))?;
    ensure(count.get() == 200, || format!("{} round trips", count.get()))?;

    let peel = TruncationProfile::with_default_window(85, 85);
    let datum = a3ii_datum();
    let run = verify_delta1_identity(&datum, &Delta1Options { structural: false, ..Delta1Options::new(peel) })
        .map_err(|e| e.to_string())?;
    let expected = delta1_factor_map(&run.table, &peel, IndexConvention::NegativeL);
    let check = peeling_check(&run.sum_side, &expected).map_err(|e| e.to_string())?;
    ensure(check.passed, || format!("peel: {:?}", check.detail))?;

    // The model Σ τ(k+1) T^k = ∏ (1 − T^n)^24.
    let tau_k = tau_oracle(21);
    let series = LaurentSeries::from_terms(
        TruncationProfile::q_only(20),
        tau_k.iter().take(21).enumerate().map(|(k, t)| (ExponentVector::q_power(k as i64), t.clone())),
    );
    let peeled = extract_exponents(&series, Some(ExponentVector::ZERO), &Grading::CONE).map_err(|e| e.to_string())?;
    let want = ProductExpansion::from_factors((1..=20).map(|n| (ExponentVector::q_power(n), BigInt::from(24))));
    ensure(peeled == want, || format!("model exponents {:?}", peeled.term_array().0))?;
    // The same through the isotropic helper: m(k) = −τ(k+1) for k ≥ 1.
    let ms: Vec<BigInt> = tau_k[1..21].iter().map(|t| -t).collect();
    let ex = isotropic_exponents(&ms).map_err(|e| e.to_string())?;
    ensure(ex.iter().all(|e| *e == BigInt::from(24)) && ex.len() == 20, || format!("isotropic exponents {ex:?}"))?;
    ok(format!(
        "200/200 random round trips; peeled {} f3 factors at q,s^(85/6); Borcherds model gives 24 for n <= 20",
        expected.len()
    ))
}

fn conventions(datum: &RootDatum) -> Result<String, String> {
    let profile = TruncationProfile::with_default_window(13, 13);
    let base = verify_delta1_identity(datum, &Delta1Options::new(profile)).map_err(|e| e.to_string())?;
    ensure(base.report.passed(), || "chosen convention fails".into())?;
    let mut parts = vec![];
    for (conv, at, half) in [(IndexConvention::PositiveL, "(1, -1, 1)", "r^-1/2"), (IndexConvention::BothSigns, "(1, 1, 1)", "r^1/2")] {
        let opts = Delta1Options { convention: conv, structural: false, ..Delta1Options::new(profile) };
        let r = verify_delta1_identity(datum, &opts).map_err(|e| e.to_string())?.report;
        let first = r.first_mismatch.as_ref().map(|m| m.exponent.as_str());
        ensure(!r.passed() && first == Some(at), || format!("{}: first mismatch {first:?}", conv.name()))?;
        parts.push(format!("{} fails first at {at} ({half})", conv.name()));
    }
    ok(format!("{} passes; {}", IndexConvention::NegativeL.name(), parts.join(", ")))
}

fn main() -> ExitCode {
    let datum = a3ii_datum();
    let mut outcomes = vec![
        run(1, "embedded data", "exact", secs(1), embedded_data),
        run(2, "A_{3,II} concordance", "exact", secs(1), a3ii_concordance),
        run(3, "q-series goldens", "exact", secs(1), q_series_goldens),
    ];
    let mut main_run = None;
    outcomes.push(run(4, "main identity", "exact", secs(60), || {
        main_identity(&datum).map(|(s, r)| {
            main_run = Some(r);
            s
        })
    }));
    outcomes.push(match &main_run {
        Some(r) => run(5, "structural invariants", "exact", secs(60), || structural(r, &datum)),
        None => run(5, "structural invariants", "exact", secs(60), || Err("no run from criterion 4".into())),
    });
    outcomes.push(run(6, "finite oracle", "exact", secs(1), finite_oracle));
    outcomes.push(run(7, "extraction round trips", "exact", secs(30), extraction));
    outcomes.push(run(8, "index-set convention", "exact", secs(5), || conventions(&datum)));

    let failed: Vec<&Outcome> = outcomes.iter().filter(|o| !o.passed).collect();
    println!("acceptance: {}/{} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        for o in failed {
            eprintln!("failed: {}", o.summary);
        }
        ExitCode::FAILURE
    }
}
