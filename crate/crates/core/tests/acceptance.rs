//! Acceptance run: one pass/fail line per criterion, nonzero exit on failure.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use pasep_core::ansatz::{
    hatted_closed, hatted_coeffs, hatted_splitting_holds, zn_hatted, zn_matrix,
};
use pasep_core::bijections::{
    phi, phi_inv, psi_fv, psi_fv_inv, psi_fv_step_types, psi_fz, psi_fz_inv, psi_fz_step_types,
};
use pasep_core::formulas::{
    asc_mom_closed, b_formula, fine_from_z, idbinl_check, mu_from_z, q_eulerian_row, q_stirling2,
    q_tangent_secant, qbinom_lemma1, qbinom_lemma2, r_formula, r_y1, stirling2_row_from_z, zn_cas1,
    zn_closed, zn_product_y1q1, StirlingMethod,
};
use pasep_core::paths::{
    dyck_pair_sum_q0, enumerate_b_star, enumerate_pn, enumerate_r_star, family_count,
    fine_poly_paths, jfraction_moment, sum_b, sum_r, zn_histories, Family, MomentRecurrence,
    TildeForm,
};
use pasep_core::perms::{alternating_e, enumerate_permutations, zn_perm_wexcr_uprime};
use pasep_core::polyring::{MPoly, Var};
use pasep_core::qtools::{binomial, touchard_recurrence_holds};
use pasep_core::verify::{golden, stanton_agreement, GOLDEN};
use pasep_core::{zn, Method};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn same(label: &str, lhs: &MPoly, rhs: &MPoly) -> Outcome {
    ensure(lhs == rhs, || format!("{label}: {lhs} != {rhs}"))
}

fn golden_polynomials() -> Outcome {
    for n in 0..GOLDEN.len() {
        let printed = golden(n).canonical_string();
        for m in Method::ALL {
            let got = zn(m, n).canonical_string();
            ensure(got == printed, || format!("{m} N={n}: {got}"))?;
        }
    }
    Ok(())
}

fn cross_methods() -> Outcome {
    for n in 0..=10 {
        let reference = zn_closed(n);
        let methods: &[Method] = if n <= 7 {
            &Method::ALL
        } else {
            &[Method::Matrix, Method::Hatted]
        };
        for &m in methods {
            same(&format!("{m} N={n}"), &zn(m, n), &reference)?;
        }
    }
    Ok(())
}

fn symmetry() -> Outcome {
    for n in 0..=8 {
        let z = zn_closed(n);
        let r = z.y_reflect(n as u32).map_err(|e| e.to_string())?;
        same(&format!("N={n}"), &r, &z)?;
    }
    Ok(())
}

fn specializations() -> Outcome {
    for n in 0..=10 {
        let z = zn_closed(n);
        same(
            &format!("product N={n}"),
            &z.specialize(Var::Y, 1).specialize(Var::Q, 1),
            &zn_product_y1q1(n),
        )?;
        if n <= 8 {
            same(
                &format!("a=b=1 N={n}"),
                &z.specialize(Var::A, 1).specialize(Var::B, 1),
                &zn_cas1(n),
            )?;
            for k in 0..=n {
                same(
                    &format!("R at y=1 N={n} n={k}"),
                    &r_formula(n, k).specialize(Var::Y, 1),
                    &r_y1(n, k),
                )?;
            }
        }
    }
    Ok(())
}

fn bijection_suites() -> Outcome {
    for n in 0..=7 {
        let mut fz_seen = HashSet::new();
        let mut fv_seen = HashSet::new();
        let mut count = 0;
        for p in enumerate_permutations(n) {
            count += 1;
            let st = p.stats();
            let fz = psi_fz(&p);
            let fv = psi_fv(&p);
            ensure(psi_fz_inv(&fz) == p, || format!("fz round trip {p}"))?;
            ensure(psi_fv_inv(&fv) == p, || format!("fv round trip {p}"))?;
            ensure(
                fz.weight_exponents() == (st.wex as u32, st.cr as u32),
                || format!("wex/cr weight {p}"),
            )?;
            ensure(
                fv.weight_exponents() == (st.asc as u32, st.p31_2 as u32),
                || format!("asc/31-2 weight {p}"),
            )?;
            for r in psi_fz_step_types(&p) {
                ensure(r.lr_max == r.type1, || {
                    format!("left-to-right maxima {p} at {}", r.index)
                })?;
                ensure(r.fixed_point || r.rl_min == r.type2, || {
                    format!("right-to-left minima {p} at {}", r.index)
                })?;
            }
            for r in psi_fv_step_types(&p) {
                ensure(r.rl_min == r.type1, || {
                    format!("fv type 1 {p} at {}", r.value)
                })?;
                ensure(
                    r.position == n || r.rl_max == (r.type2 && r.after_all_type1),
                    || format!("fv type 2 {p} at {}", r.value),
                )?;
            }
            let ts = p.tilde().stats();
            ensure(
                (st.u, st.wex, st.v, st.cr) == (ts.u_prime, ts.wex, ts.v, ts.cr),
                || format!("tilde statistics {p}"),
            )?;
            fz_seen.insert(fz);
            fv_seen.insert(fv);
        }
        ensure(fz_seen.len() == count && fv_seen.len() == count, || {
            format!("images not distinct for n={n}")
        })?;
        if n >= 1 {
            same(
                &format!("u'-refined sum N={}", n - 1),
                &zn_perm_wexcr_uprime(n - 1),
                &zn_histories(n - 1),
            )?;
        }
    }
    Ok(())
}

fn phi_decomposition() -> Outcome {
    for n in 0..=4 {
        for h in enumerate_pn(n) {
            let back = phi_inv(&h)
                .and_then(|(a, b)| phi(&a, &b))
                .map_err(|e| e.to_string())?;
            ensure(back == h, || format!("phi(phi_inv) N={n}"))?;
        }
        for k in 0..=n {
            for h1 in enumerate_r_star(n, k) {
                for h2 in enumerate_b_star(k) {
                    let merged = phi(&h1, &h2).map_err(|e| e.to_string())?;
                    same(
                        &format!("weight N={n} n={k}"),
                        &merged.weight(TildeForm::Symbolic),
                        &(h1.weight(TildeForm::Symbolic) * h2.weight(TildeForm::Symbolic)),
                    )?;
                    let back = phi_inv(&merged).map_err(|e| e.to_string())?;
                    ensure(back == (h1.clone(), h2), || {
                        format!("phi_inv(phi) N={n} n={k}")
                    })?;
                }
            }
        }
    }
    for n in 0..=6 {
        let pairs: BigInt = (0..=n)
            .map(|k| family_count(Family::RStar, n, Some(k)) * family_count(Family::BStar, k, None))
            .sum();
        let whole = family_count(Family::P, n, None);
        ensure(pairs == whole, || {
            format!("cardinality N={n}: {pairs} != {whole}")
        })?;
    }
    Ok(())
}

fn path_sums() -> Outcome {
    for big_n in 0..=6 {
        same(&format!("B n={big_n}"), &sum_b(big_n), &b_formula(big_n))?;
        for n in 0..=big_n {
            same(
                &format!("R N={big_n} n={n}"),
                &sum_r(big_n, n),
                &r_formula(big_n, n),
            )?;
        }
    }
    Ok(())
}

fn moments() -> Outcome {
    let asc = MomentRecurrence::al_salam_chihara();
    for n in 0..=8 {
        let closed = asc_mom_closed(n);
        same(
            &format!("continued fraction N={n}"),
            &jfraction_moment(&asc, n),
            &closed,
        )?;
        let mu = mu_from_z(n);
        ensure(mu.log2_den == n as u32, || format!("mu denominator N={n}"))?;
        same(&format!("mu from Z N={n}"), &mu.numerator, &closed)?;
    }
    for n in 0..=6 {
        let used =
            stanton_agreement(n, 20, 0xacce55 + n as u64).map_err(|e| format!("N={n}: {e}"))?;
        ensure(used >= 20, || format!("N={n}: {used} points"))?;
    }
    Ok(())
}

fn secant_tangent() -> Outcome {
    let at_one = [1, 1, 1, 2, 5, 16, 61, 272, 1385];
    for n in 0..=10 {
        let closed = q_tangent_secant(n);
        let rec = if n % 2 == 0 {
            MomentRecurrence::q_secant()
        } else {
            MomentRecurrence::q_tangent()
        };
        same(
            &format!("continued fraction n={n}"),
            &jfraction_moment(&rec, 2 * (n / 2)),
            &closed,
        )?;
        same(&format!("alternating n={n}"), &alternating_e(n), &closed)?;
        if let Some(&e) = at_one.get(n) {
            same(
                &format!("q=1 n={n}"),
                &closed.specialize(Var::Q, 1),
                &MPoly::constant(e),
            )?;
        }
    }
    Ok(())
}

fn stirling() -> Outcome {
    for n in 1..=12 {
        let extracted = (n - 1 <= 8).then(|| stirling2_row_from_z(n - 1));
        for k in 1..=n {
            let r = q_stirling2(n, k, StirlingMethod::Recurrence).map_err(|e| e.to_string())?;
            for m in [StirlingMethod::Carlitz1, StirlingMethod::Carlitz2] {
                let other = q_stirling2(n, k, m).map_err(|e| e.to_string())?;
                same(&format!("{m:?} n={n} k={k}"), &other, &r)?;
            }
            if let Some(row) = &extracted {
                same(&format!("extraction n={n} k={k}"), &row[k - 1], &r)?;
            }
        }
    }
    Ok(())
}

fn eulerian() -> Outcome {
    let mut numbers = vec![BigInt::from(1)];
    for n in 0..=8 {
        if n > 0 {
            let size = n + 1;
            let mut next = vec![BigInt::from(0); size];
            for (j, v) in numbers.iter().enumerate() {
                next[j] += v * BigInt::from(j + 1);
                next[j + 1] += v * BigInt::from(size - j - 1);
            }
            numbers = next;
        }
        let m = n as i64 + 1;
        for (k, p) in q_eulerian_row(n).iter().enumerate() {
            let kk = k as i64;
            let narayana = binomial(m, kk + 1) * binomial(m, kk) / BigInt::from(m);
            ensure(
                p.specialize(Var::Q, 1).constant_term() == numbers[k],
                || format!("q=1 N={n} k={k}"),
            )?;
            ensure(
                p.specialize(Var::Q, -1).constant_term() == binomial(n as i64, kk),
                || format!("q=-1 N={n} k={k}"),
            )?;
            ensure(p.specialize(Var::Q, 0).constant_term() == narayana, || {
                format!("q=0 N={n} k={k}")
            })?;
        }
    }
    Ok(())
}

fn fine() -> Outcome {
    for n in 1..=12 {
        let f = fine_poly_paths(n);
        if n <= 10 {
            same(&format!("from Z n={n}"), &fine_from_z(n), &f)?;
        }
        let r = f.y_reflect(n as u32).map_err(|e| e.to_string())?;
        same(&format!("palindromic n={n}"), &r, &f)?;
    }
    let printed = [
        "0",
        "y",
        "y^2 + y",
        "y^3 + 4*y^2 + y",
        "y^4 + 8*y^3 + 8*y^2 + y",
        "y^5 + 13*y^4 + 29*y^3 + 13*y^2 + y",
    ];
    for (i, s) in printed.iter().enumerate() {
        let got = fine_poly_paths(i + 1).canonical_string();
        ensure(got == *s, || format!("printed n={}: {got}", i + 1))?;
    }
    for n in 0..=7 {
        same(
            &format!("Dyck pairs N={n}"),
            &zn_closed(n).specialize(Var::Q, 0).specialize(Var::Y, 1),
            &dyck_pair_sum_q0(n),
        )?;
    }
    Ok(())
}

fn identities() -> Outcome {
    for big_n in 0..=10 {
        for n in 0..=big_n {
            for i in 0..=(big_n - n) / 2 + 1 {
                ensure(idbinl_check(big_n, n, i), || {
                    format!("ballot N={big_n} n={n} i={i}")
                })?;
            }
        }
    }
    for k in 0..=10usize {
        ensure(touchard_recurrence_holds(k as i64), || {
            format!("three-term recurrence k={k}")
        })?;
        let d = hatted_coeffs(k);
        for i in 0..=k + 1 {
            for j in 0..=k + 1 {
                same(
                    &format!("hatted k={k} i={i} j={j}"),
                    &d.get(i, j),
                    &hatted_closed(k, i, j),
                )?;
            }
        }
        ensure(hatted_splitting_holds(k), || {
            format!("hatted splitting k={k}")
        })?;
    }
    for m in 0..=8 {
        for l in 0..=2 * m {
            ensure(qbinom_lemma1(m, l), || {
                format!("first q-binomial lemma m={m} l={l}")
            })?;
            ensure(qbinom_lemma2(m, l), || {
                format!("second q-binomial lemma m={m} l={l}")
            })?;
        }
    }
    // also pins the matrix route against its hatted rewrite
    for n in 0..=6 {
        same(&format!("hatted N={n}"), &zn_hatted(n), &zn_matrix(n))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("golden polynomials", golden_polynomials),
        ("cross-method equality", cross_methods),
        ("y-reflection symmetry", symmetry),
        ("specializations", specializations),
        ("permutation bijections", bijection_suites),
        ("path decomposition", phi_decomposition),
        ("path-sum oracles", path_sums),
        ("moments", moments),
        ("q-secant and q-tangent", secant_tangent),
        ("q-Stirling", stirling),
        ("q-Eulerian", eulerian),
        ("Fine polynomials", fine),
        ("identities", identities),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS ({name}, {secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
