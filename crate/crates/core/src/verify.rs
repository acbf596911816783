//! Named verification suites that cross-check the independent routes,
//! bijections, moments, specializations and identities.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::ansatz::{hatted_closed, hatted_coeffs, hatted_splitting_holds, zn_hatted, zn_matrix};
use crate::bijections::{
    bicolor_to_dyck_pair, enumerate_bicolor, phi, phi_inv, psi_fv, psi_fv_inv, psi_fv_step_types,
    psi_fz, psi_fz_inv, psi_fz_step_types, BicolorMotzkinPath,
};
use crate::formulas::{
    asc_mom_closed, b_formula, fine_from_z, idbinl_check, mu_from_z, q_eulerian_row,
    q_stirling1_extracted, q_stirling2, q_tangent_secant, qbinom_lemma1, qbinom_lemma2, r_formula,
    r_y1, scaled_z_symbolic, stanton_moment_eval, stirling2_row_from_z, zn_cas1, zn_closed,
    zn_product_y1q1, StirlingMethod,
};
use crate::paths::{
    dyck_pair_sum_q0, enumerate_b_star, enumerate_laguerre, enumerate_pn, enumerate_r_star,
    family_count, fine_poly_paths, jfraction_moment, sum_b, sum_pn, sum_r, Family,
    MomentRecurrence, TildeForm,
};
use crate::perms::{alternating_e, enumerate_permutations, zn_perm_asc312, zn_perm_wexcr_uprime};
use crate::polyring::{expand_tilde, MPoly, Point, Rational, Var};
use crate::qtools::{binomial, touchard_recurrence_holds};
use crate::{zn, Method};

/// Largest permutation size for exhaustive suites.
pub const PERM_CAP: usize = 7;
/// Largest length for the two-sided path decomposition checks.
pub const PHI_CAP: usize = 4;

/// The printed small partition functions, in canonical form.
pub const GOLDEN: [&str; 4] = [
    "1",
    "y*b + a",
    "y^2*b^2 + y*q*a*b + y*a*b + y*a + y*b + a^2",
    "y^3*b^3 + y^2*q^2*a*b^2 + y^2*q*a*b^2 + 2*y^2*q*a*b + y^2*q*b^2 + y^2*a*b^2 + y^2*a*b \
     + y^2*a + 2*y^2*b^2 + y^2*b + y*q^2*a^2*b + y*q*a^2*b + y*q*a^2 + 2*y*q*a*b + y*a^2*b \
     + 2*y*a^2 + y*a*b + y*a + y*b + a^3",
];

pub fn golden(n: usize) -> MPoly {
    GOLDEN[n].parse().expect("golden strings parse")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    CrossMethods,
    Bijections,
    Symmetry,
    Moments,
    Specials,
    Identities,
}

impl Suite {
    pub const NAMED: [Suite; 6] = [
        Suite::CrossMethods,
        Suite::Bijections,
        Suite::Symmetry,
        Suite::Moments,
        Suite::Specials,
        Suite::Identities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::CrossMethods => "cross-methods",
            Suite::Bijections => "bijections",
            Suite::Symmetry => "symmetry",
            Suite::Moments => "moments",
            Suite::Specials => "specials",
            Suite::Identities => "identities",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        std::iter::once(Suite::All)
            .chain(Suite::NAMED)
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} checks, {} failures",
            self.suite,
            self.checks,
            self.failures.len()
        )?;
        for fail in &self.failures {
            writeln!(f, "  FAIL {} [{}]: {}", fail.check, fail.input, fail.detail)?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Recorder {
    checks: usize,
    failures: Vec<Failure>,
}

impl Recorder {
    fn check(
        &mut self,
        name: &str,
        input: impl fmt::Display,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                check: name.to_string(),
                input: input.to_string(),
                detail: detail(),
            });
        }
    }

    fn poly(&mut self, name: &str, input: impl fmt::Display, lhs: &MPoly, rhs: &MPoly) {
        self.check(name, input, lhs == rhs, || format!("{lhs} != {rhs}"));
    }
}

pub fn run_suite(suite: Suite, max_n: usize) -> VerifyReport {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::NAMED.to_vec()
    } else {
        vec![suite]
    };
    // Suites are independent; run them on separate threads and merge in order.
    let parts: Vec<Recorder> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .into_iter()
            .map(|s| scope.spawn(move || run_one(s, max_n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let mut report = VerifyReport {
        suite: suite.name().to_string(),
        checks: 0,
        failures: Vec::new(),
    };
    for part in parts {
        report.checks += part.checks;
        report.failures.extend(part.failures);
    }
    report
}

fn run_one(suite: Suite, max_n: usize) -> Recorder {
    let mut rec = Recorder::default();
    match suite {
        Suite::CrossMethods => cross_methods(&mut rec, max_n),
        Suite::Bijections => bijection_checks(&mut rec, max_n),
        Suite::Symmetry => symmetry(&mut rec, max_n),
        Suite::Moments => moments(&mut rec, max_n),
        Suite::Specials => specials(&mut rec, max_n),
        Suite::Identities => identities(&mut rec, max_n),
        Suite::All => unreachable!("expanded by run_suite"),
    }
    rec
}

fn cross_methods(rec: &mut Recorder, max_n: usize) {
    for n in 0..=max_n {
        let reference = zn_closed(n);
        if n < GOLDEN.len() {
            rec.poly("golden", format!("N={n}"), &reference, &golden(n));
        }
        for m in Method::ALL.into_iter().skip(1) {
            if m.is_enumerative() && n > PERM_CAP {
                continue;
            }
            rec.poly(
                &format!("closed=={m}"),
                format!("N={n}"),
                &reference,
                &zn(m, n),
            );
        }
    }
}

fn symmetry(rec: &mut Recorder, max_n: usize) {
    for n in 0..=max_n {
        let z = zn_closed(n);
        let reflected = z.y_reflect(n as u32);
        rec.check(
            "y-reflection",
            format!("N={n}"),
            reflected.as_ref() == Ok(&z),
            || format!("{reflected:?}"),
        );
    }
}

fn bijection_checks(rec: &mut Recorder, max_n: usize) {
    for n in 0..=max_n.min(PERM_CAP) {
        let mut fz_images = HashSet::new();
        let mut fv_images = HashSet::new();
        let mut fact = 0usize;
        for p in enumerate_permutations(n) {
            fact += 1;
            let st = p.stats();
            let fz = psi_fz(&p);
            let fv = psi_fv(&p);
            let tag = format!("{p}");
            rec.check(
                "fz-weight",
                &tag,
                fz.weight_exponents() == (st.wex as u32, st.cr as u32),
                || format!("{:?}", fz.weight_exponents()),
            );
            rec.check("fz-round-trip", &tag, psi_fz_inv(&fz) == p, String::new);
            rec.check(
                "fv-weight",
                &tag,
                fv.weight_exponents() == (st.asc as u32, st.p31_2 as u32),
                || format!("{:?}", fv.weight_exponents()),
            );
            rec.check("fv-round-trip", &tag, psi_fv_inv(&fv) == p, String::new);
            let fz_ok = psi_fz_step_types(&p)
                .iter()
                .all(|r| r.lr_max == r.type1 && (r.fixed_point || r.rl_min == r.type2));
            rec.check("fz-step-types", &tag, fz_ok, String::new);
            let fv_ok = psi_fv_step_types(&p).iter().all(|r| {
                r.rl_min == r.type1
                    && (r.position == n || r.rl_max == (r.type2 && r.after_all_type1))
            });
            rec.check("fv-step-types", &tag, fv_ok, String::new);
            let (ts, t) = (p.tilde().stats(), &st);
            rec.check(
                "tilde-statistics",
                &tag,
                (t.u, t.wex, t.v, t.cr) == (ts.u_prime, ts.wex, ts.v, ts.cr),
                String::new,
            );
            fz_images.insert(fz);
            fv_images.insert(fv);
        }
        rec.check(
            "fz-injective",
            format!("n={n}"),
            fz_images.len() == fact,
            String::new,
        );
        rec.check(
            "fv-injective",
            format!("n={n}"),
            fv_images.len() == fact,
            String::new,
        );
        let histories = enumerate_laguerre(n);
        rec.check(
            "history-count",
            format!("n={n}"),
            histories.len() == fact,
            || histories.len().to_string(),
        );
        if n >= 1 {
            let z = zn_closed(n - 1);
            rec.poly(
                "histories==uprime-sum",
                format!("N={}", n - 1),
                &crate::paths::zn_histories(n - 1),
                &zn_perm_wexcr_uprime(n - 1),
            );
            rec.poly(
                "uprime-sum==closed",
                format!("N={}", n - 1),
                &zn_perm_wexcr_uprime(n - 1),
                &z,
            );
        }
    }
    for n in 0..=max_n.min(PHI_CAP) {
        for h in enumerate_pn(n) {
            let back = phi_inv(&h).and_then(|(a, b)| phi(&a, &b));
            rec.check(
                "phi-after-phi-inv",
                format!("N={n}"),
                back.as_ref() == Ok(&h),
                String::new,
            );
        }
        for k in 0..=n {
            for h1 in enumerate_r_star(n, k) {
                for h2 in enumerate_b_star(k) {
                    let Ok(merged) = phi(&h1, &h2) else {
                        rec.check("phi-defined", format!("N={n} n={k}"), false, String::new);
                        continue;
                    };
                    let product = h1.weight(TildeForm::Symbolic) * h2.weight(TildeForm::Symbolic);
                    rec.poly(
                        "phi-weight",
                        format!("N={n} n={k}"),
                        &merged.weight(TildeForm::Symbolic),
                        &product,
                    );
                    let back = phi_inv(&merged);
                    rec.check(
                        "phi-inv-after-phi",
                        format!("N={n} n={k}"),
                        back == Ok((h1.clone(), h2)),
                        String::new,
                    );
                }
            }
        }
    }
    for n in 0..=max_n.min(6) {
        let pairs: BigInt = (0..=n)
            .map(|k| family_count(Family::RStar, n, Some(k)) * family_count(Family::BStar, k, None))
            .sum();
        let whole = family_count(Family::P, n, None);
        rec.check("phi-cardinality", format!("N={n}"), pairs == whole, || {
            format!("{pairs} != {whole}")
        });
    }
    for len in 1..=(max_n + 1).min(8) {
        for m in enumerate_bicolor(len) {
            let (beta, alpha) = m.marks();
            let (d1, d2) = bicolor_to_dyck_pair(&m);
            rec.check(
                "bicolor-marks",
                format!("len={len}"),
                (beta, alpha) == (d1.returns() + 1, d2.returns())
                    && d1.len() + d2.len() == 2 * len - 2,
                || format!("{m:?}"),
            );
        }
    }
}

fn random_rational(rng: &mut StdRng, allow_zero: bool) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=7);
        if allow_zero || num != 0 {
            return Rational::new(num.into(), den.into());
        }
    }
}

/// Compares the double-sum moment with the closed form at `points`
/// non-singular random rational points; returns the number of points used.
pub fn stanton_agreement(n: usize, points: usize, seed: u64) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let closed = asc_mom_closed(n);
    let scale = Rational::from_integer(BigInt::from(1u8) << n);
    let mut used = 0;
    let mut attempts = 0;
    while used < points {
        attempts += 1;
        if attempts > 100 * points {
            return Err(format!("only {used} non-singular points found"));
        }
        let (a, b, q) = (
            random_rational(&mut rng, false),
            random_rational(&mut rng, true),
            random_rational(&mut rng, false),
        );
        let Ok(v) = stanton_moment_eval(n, &a, &b, &q) else {
            continue;
        };
        let pt = Point::new(
            a.clone(),
            b.clone(),
            Rational::from_integer(1.into()),
            q.clone(),
        );
        let expected = closed.eval(&pt) / &scale;
        if v != expected {
            return Err(format!("a={a} b={b} q={q}: {v} != {expected}"));
        }
        used += 1;
    }
    Ok(used)
}

fn moments(rec: &mut Recorder, max_n: usize) {
    let asc = MomentRecurrence::al_salam_chihara();
    let shifted = MomentRecurrence::shifted_al_salam_chihara();
    let pasep = MomentRecurrence::pasep();
    for n in 0..=max_n {
        let closed = asc_mom_closed(n);
        rec.poly(
            "asc-closed==jfraction",
            format!("N={n}"),
            &closed,
            &jfraction_moment(&asc, n),
        );
        let mu = mu_from_z(n);
        rec.check(
            "mu-from-z",
            format!("N={n}"),
            mu.log2_den == n as u32 && mu.numerator == closed,
            || format!("{} / 2^{}", mu.numerator, mu.log2_den),
        );
        let hermite = closed.specialize(Var::A, 0).specialize(Var::B, 0);
        if n % 2 == 1 {
            rec.check(
                "hermite-odd-vanishes",
                format!("N={n}"),
                hermite.is_zero(),
                || hermite.to_string(),
            );
        }
        if n <= 6 {
            let target = expand_tilde(&scaled_z_symbolic(n).specialize(Var::Y, 1));
            rec.poly(
                "shifted-recurrence",
                format!("N={n}"),
                &jfraction_moment(&shifted, n),
                &target,
            );
            rec.poly(
                "pasep-recurrence",
                format!("N={n}"),
                &jfraction_moment(&pasep, n),
                &sum_pn(n),
            );
            let outcome = stanton_agreement(n, 20, 0x5eed + n as u64);
            rec.check(
                "stanton-random-points",
                format!("N={n}"),
                outcome.is_ok(),
                || outcome.unwrap_err(),
            );
        }
    }
}

fn specials(rec: &mut Recorder, max_n: usize) {
    for n in 0..=max_n {
        let z = zn_closed(n);
        let at_ones = z.specialize(Var::A, 1).specialize(Var::B, 1);
        rec.poly(
            "product-y1q1",
            format!("N={n}"),
            &zn_product_y1q1(n),
            &z.specialize(Var::Y, 1).specialize(Var::Q, 1),
        );
        rec.poly("cas1", format!("N={n}"), &zn_cas1(n), &at_ones);
        for k in 0..=n {
            rec.poly(
                "r-at-y1",
                format!("N={n} n={k}"),
                &r_formula(n, k).specialize(Var::Y, 1),
                &r_y1(n, k),
            );
        }
        // q-Eulerian rows
        let row = q_eulerian_row(n);
        let m = n as i64 + 1;
        let mut eulerian = vec![BigInt::from(1u8)];
        for size in 2..=n + 1 {
            let mut next = vec![BigInt::from(0u8); size];
            for (j, v) in eulerian.iter().enumerate() {
                next[j] += v * BigInt::from(j + 1);
                next[j + 1] += v * BigInt::from(size - j - 1);
            }
            eulerian = next;
        }
        for (k, p) in row.iter().enumerate() {
            let kk = k as i64;
            let narayana = binomial(m, kk + 1) * binomial(m, kk) / BigInt::from(m);
            let ok = p.specialize(Var::Q, 1).constant_term() == eulerian[k]
                && p.specialize(Var::Q, -1).constant_term() == binomial(n as i64, kk)
                && p.specialize(Var::Q, 0).constant_term() == narayana;
            rec.check("q-eulerian", format!("N={n} k={k}"), ok, || p.to_string());
        }
        // Fine polynomials
        let fine = fine_poly_paths(n);
        rec.poly("fine-from-z", format!("N={n}"), &fine_from_z(n), &fine);
        if n >= 1 {
            rec.check(
                "fine-palindromic",
                format!("n={n}"),
                fine.y_reflect(n as u32).as_ref() == Ok(&fine),
                || fine.to_string(),
            );
        }
        if n <= PERM_CAP {
            let q0y1 = z.specialize(Var::Q, 0).specialize(Var::Y, 1);
            rec.poly(
                "dyck-pairs-q0",
                format!("N={n}"),
                &q0y1,
                &dyck_pair_sum_q0(n),
            );
            let via_histories: MPoly = enumerate_laguerre(n + 1)
                .iter()
                .filter_map(BicolorMotzkinPath::from_history)
                .map(|m| {
                    let (d1, d2) = bicolor_to_dyck_pair(&m);
                    MPoly::var_pow(Var::B, d1.returns() as u32)
                        * MPoly::var_pow(Var::A, d2.returns() as u32)
                })
                .sum();
            rec.poly("bicolor-route-q0", format!("N={n}"), &q0y1, &via_histories);
            // first-kind extraction: maxima and minima readings agree
            let asc = zn_perm_asc312(n).specialize(Var::Y, 1);
            let by_min: Vec<MPoly> = (0..=n as u32)
                .map(|k| asc.specialize(Var::A, 1).coeff_of(Var::B, k))
                .collect();
            let by_max: Vec<MPoly> = (0..=n as u32)
                .map(|k| asc.specialize(Var::B, 1).coeff_of(Var::A, k))
                .collect();
            rec.check(
                "stirling1-extractions",
                format!("N={n}"),
                by_min == by_max && by_min == q_stirling1_extracted(n),
                String::new,
            );
        }
    }
    let expected_e = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521];
    for n in 0..=max_n.max(9) {
        let closed = q_tangent_secant(n);
        rec.poly(
            "tangent-secant==alternating",
            format!("n={n}"),
            &closed,
            &alternating_e(n),
        );
        let rec_cf = if n % 2 == 0 {
            MomentRecurrence::q_secant()
        } else {
            MomentRecurrence::q_tangent()
        };
        rec.poly(
            "tangent-secant==jfraction",
            format!("n={n}"),
            &closed,
            &jfraction_moment(&rec_cf, 2 * (n / 2)),
        );
        if let Some(&e) = expected_e.get(n) {
            rec.check(
                "tangent-secant-at-1",
                format!("n={n}"),
                closed.specialize(Var::Q, 1) == MPoly::constant(e),
                || closed.specialize(Var::Q, 1).to_string(),
            );
        }
    }
    let printed_fine = [
        "0",
        "y",
        "y^2 + y",
        "y^3 + 4*y^2 + y",
        "y^4 + 8*y^3 + 8*y^2 + y",
        "y^5 + 13*y^4 + 29*y^3 + 13*y^2 + y",
    ];
    for (i, s) in printed_fine.iter().enumerate() {
        rec.check(
            "fine-printed",
            format!("n={}", i + 1),
            fine_poly_paths(i + 1).to_string() == *s,
            String::new,
        );
    }
    for n in 1..=max_n + 1 {
        let from_z = (n - 1 <= 8).then(|| stirling2_row_from_z(n - 1));
        for k in 1..=n {
            let r = q_stirling2(n, k, StirlingMethod::Recurrence).expect("recurrence");
            for method in [StirlingMethod::Carlitz1, StirlingMethod::Carlitz2] {
                let other = q_stirling2(n, k, method);
                rec.check(
                    &format!("stirling2-{method:?}"),
                    format!("n={n} k={k}"),
                    other.as_ref() == Ok(&r),
                    || format!("{other:?} != {r}"),
                );
            }
            if let Some(row) = &from_z {
                rec.poly("stirling2-from-z", format!("n={n} k={k}"), &row[k - 1], &r);
            }
        }
    }
}

fn identities(rec: &mut Recorder, max_n: usize) {
    for big_n in 0..=max_n {
        for n in 0..=big_n {
            for i in 0..=(big_n - n) / 2 + 1 {
                rec.check(
                    "ballot-identity",
                    format!("N={big_n} n={n} i={i}"),
                    idbinl_check(big_n, n, i),
                    String::new,
                );
            }
        }
    }
    for k in 0..=max_n {
        rec.check(
            "touchard-recurrence",
            format!("k={k}"),
            touchard_recurrence_holds(k as i64),
            String::new,
        );
        let d = hatted_coeffs(k);
        let closed_ok =
            (0..=k + 1).all(|i| (0..=k + 1).all(|j| d.get(i, j) == hatted_closed(k, i, j)));
        rec.check(
            "hatted-closed-form",
            format!("k={k}"),
            closed_ok,
            String::new,
        );
        rec.check(
            "hatted-splitting",
            format!("k={k}"),
            hatted_splitting_holds(k),
            String::new,
        );
    }
    for m in 0..=max_n.min(8) {
        for l in 0..=2 * m {
            rec.check(
                "qbinom-lemma-1",
                format!("m={m} l={l}"),
                qbinom_lemma1(m, l),
                String::new,
            );
            rec.check(
                "qbinom-lemma-2",
                format!("m={m} l={l}"),
                qbinom_lemma2(m, l),
                String::new,
            );
        }
    }
    for big_n in 0..=max_n.min(6) {
        rec.poly(
            "path-sum-B",
            format!("n={big_n}"),
            &sum_b(big_n),
            &b_formula(big_n),
        );
        for n in 0..=big_n {
            rec.poly(
                "path-sum-R",
                format!("N={big_n} n={n}"),
                &sum_r(big_n, n),
                &r_formula(big_n, n),
            );
        }
    }
    for n in 0..=max_n.min(8) {
        rec.poly(
            "hatted==matrix",
            format!("N={n}"),
            &zn_hatted(n),
            &zn_matrix(n),
        );
    }
}
