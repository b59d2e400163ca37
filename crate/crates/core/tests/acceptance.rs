//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero exit
//! if any fails. Runs without the libtest harness so the lines always show.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use star_algebra::cli::render_experiment;
use star_algebra::identities::{
    euler_grading_check, eval_e_worked_example, homomorphism_holds, leibniz_check,
    multiplication_operator_check, symmetry_check,
};
use star_algebra::laguerre::{
    even_identity_check, integrate_weight, laguerre, ode_check, orthogonality_check, recurrence_check,
    three_way_check, xi_orthogonality_check,
};
use star_algebra::mathieu::{oracle_equivalence_scan, power_experiment, random_poly, DEFAULT_DEGREE_CAP};
use star_algebra::weyl::interchange_check;
use star_algebra::{int, rat, CheckReport, LaguerreSpec, MembershipOracle, MultiIndex, Poly, PowerKind, Rat, StarContext};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ts() -> Vec<Rat> {
    vec![int(0), int(1), int(-1), rat(1, 2), rat(-2, 3)]
}

fn require(report: CheckReport) -> Result<usize, String> {
    match report.first_failure() {
        None => Ok(report.len()),
        Some(case) => Err(format!("{}: {} {}", report.suite, case.label, case.detail.clone().unwrap_or_default())),
    }
}

fn xi_only(rng: &mut ChaCha8Rng, n: usize, degmax: u32) -> Poly {
    let basis = MultiIndex::up_to_total(n, degmax);
    let mut p = Poly::zero(n);
    let count = rng.gen_range(1..=4);
    let chosen: Vec<MultiIndex> = basis.choose_multiple(rng, count).cloned().collect();
    for alpha in &chosen {
        p = &p + &Poly::xi_pow(alpha).scale(&int(rng.gen_range(-4..=4)));
    }
    p
}

fn z_only(rng: &mut ChaCha8Rng, n: usize, degmax: u32) -> Poly {
    xi_only(rng, n, degmax).swap_xi_z()
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_star-algebra"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn golden_symbols() -> Outcome {
    let left = cli(&["symbol", "--n", "1", "--dir", "left", "--input", "z1^2*d1^3"])?;
    let right = cli(&["symbol", "--n", "1", "--dir", "right", "--input", "z1^2*d1^3"])?;
    if left != "x1^3*z1^2 - 6*x1^2*z1 + 6*x1\n" {
        return Err(format!("left symbol was {left:?}"));
    }
    if right != "x1^3*z1^2\n" {
        return Err(format!("right symbol was {right:?}"));
    }
    Ok("left and right symbols byte-exact".into())
}

fn homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut count = 0;
    for t in ts() {
        for n in 1..=2 {
            let ctx = StarContext::new(n, t.clone()).unwrap();
            for _ in 0..50 {
                let f = random_poly(&mut rng, n, 4, 5);
                let g = random_poly(&mut rng, n, 4, 5);
                if !homomorphism_holds(&ctx, &f, &g).unwrap() {
                    return Err(format!("t={t} f={f:?} g={g:?}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs"))
}

fn associativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut count = 0;
    for t in ts() {
        for n in 1..=2 {
            let ctx = StarContext::new(n, t.clone()).unwrap();
            for _ in 0..30 {
                let f = random_poly(&mut rng, n, 4, 4);
                let g = random_poly(&mut rng, n, 4, 4);
                let h = random_poly(&mut rng, n, 4, 4);
                let fg = ctx.star(&f, &g).unwrap();
                let assoc = ctx.star(&fg, &h).unwrap() == ctx.star(&f, &ctx.star(&g, &h).unwrap()).unwrap();
                let comm = fg == ctx.star(&g, &f).unwrap();
                if !(assoc && comm) {
                    return Err(format!("t={t} assoc={assoc} comm={comm}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} triples"))
}

fn substitution() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut xi_side, mut z_side) = (0, 0);
    for t in ts() {
        for n in 1..=2 {
            let ctx = StarContext::new(n, t.clone()).unwrap();
            for _ in 0..15 {
                let g = random_poly(&mut rng, n, 4, 5);
                let lam = xi_only(&mut rng, n, 4);
                if ctx.star_via_subst_xi(&lam, &g).unwrap() != ctx.star(&lam, &g).unwrap() {
                    return Err(format!("xi side t={t}"));
                }
                xi_side += 1;
                let p = z_only(&mut rng, n, 4);
                if ctx.star_via_subst_z(&p, &g).unwrap() != ctx.star(&p, &g).unwrap() {
                    return Err(format!("z side t={t}"));
                }
                z_side += 1;
            }
        }
    }
    Ok(format!("{xi_side} xi-side + {z_side} z-side samples"))
}

fn interchange() -> Outcome {
    let one = require(interchange_check(1, 6).unwrap())?;
    let two = require(interchange_check(2, 4).unwrap())?;
    Ok(format!("{} basis monomials", one + two))
}

fn three_way() -> Outcome {
    let mut cases = 0;
    for n in 1..=2 {
        cases += require(three_way_check(n, 4, 3).unwrap())?;
    }
    Ok(format!("{cases} (alpha, k) pairs"))
}

fn orthogonality() -> Outcome {
    let mut cases = 0;
    for k in [vec![0], vec![1], vec![2], vec![1, 1]] {
        cases += require(orthogonality_check(&MultiIndex::new(k), 3).unwrap())?;
    }
    let l = laguerre(&LaguerreSpec::new([2].into(), [1].into()).unwrap());
    let norm = integrate_weight(&l.pow(2), &[1].into()).unwrap();
    if norm != int(3) {
        return Err(format!("norm of L_2^[1] was {norm}"));
    }
    Ok(format!("{cases} pairs, norm(L_2^[1]) = 3"))
}

fn xi_orthogonality() -> Outcome {
    let mut cases = 0;
    for point in [int(1), int(2), rat(1, 2)] {
        cases += require(xi_orthogonality_check(&[point], 3).unwrap())?;
    }
    Ok(format!("{cases} pairs at 3 points"))
}

fn recurrence_and_ode() -> Outcome {
    let a = require(recurrence_check(8).unwrap())?;
    let b = require(ode_check(8, 4))?;
    Ok(format!("{} cases", a + b))
}

fn structural_identities() -> Outcome {
    let mut cases = 0;
    for t in [int(1), int(-1), rat(1, 2)] {
        for n in 1..=2 {
            let ctx = StarContext::new(n, t.clone()).unwrap();
            cases += require(euler_grading_check(&ctx, 3).unwrap())?;
            cases += require(leibniz_check(&ctx, 3).unwrap())?;
            cases += require(multiplication_operator_check(&ctx, 3).unwrap())?;
            cases += require(symmetry_check(&ctx, 3).unwrap())?;
        }
    }
    for n in 1..=2 {
        let idx = MultiIndex::up_to_total(n, 3);
        for alpha in &idx {
            for beta in &idx {
                if !even_identity_check(alpha, beta).unwrap() {
                    return Err(format!("even identity alpha={alpha} beta={beta}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn oracle_equivalence() -> Outcome {
    let mut cases = 0;
    for t in [int(0), int(1), int(-1), rat(2, 3)] {
        for n in 1..=2 {
            cases += require(oracle_equivalence_scan(&t, n, 4, 200, 21).unwrap())?;
        }
    }
    Ok(format!("{cases} polynomials"))
}

fn worked_examples() -> Outcome {
    for t in [int(1), int(-1), rat(1, 2), rat(2, 3), int(3)] {
        for m in 2..=4 {
            if !eval_e_worked_example(&t, m).unwrap() {
                return Err(format!("t={t} m={m}"));
            }
        }
    }
    Ok("m = 2, 3, 4 at five values of t".into())
}

fn ideal_experiments(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transcript = String::new();
    for n in 1..=2 {
        for round in 0..10 {
            let i = round % n;
            let f = &Poly::xi_var(n, i) * &random_poly(&mut rng, n, 2, 3);
            let b = random_poly(&mut rng, n, 2, 3);
            let oracle = if round % 3 == 0 {
                MembershipOracle::ImageLinear { t: int(0), witness_degree: None }
            } else {
                MembershipOracle::ImageEt { t: int(0) }
            };
            let mmax = if round % 3 == 0 { 3 } else { 5 };
            let report = power_experiment(&oracle, &f, &b, mmax, PowerKind::Star, DEFAULT_DEGREE_CAP).unwrap();
            if !(report.is_complete() && report.all_powers_member() && report.all_products_member()) {
                return Err(format!("non-member verdict for f={f:?} b={b:?}"));
            }
            transcript.push_str(&render_experiment(&report).1);
        }
    }
    Ok(transcript)
}

fn mathieu_determinism() -> Outcome {
    let first = ideal_experiments(31)?;
    let second = ideal_experiments(31)?;
    if first != second {
        return Err("reports differ between runs".into());
    }
    let lines = first.lines().count();
    Ok(format!("20 experiments all-member, {lines} identical report lines"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("operator symbols through the CLI", golden_symbols),
        ("phi turns the deformed product into the ordinary one", homomorphism),
        ("deformed product is associative and commutative", associativity),
        ("operator-substitution form of the product", substitution),
        ("left/right symbol interchange", interchange),
        ("Laguerre polynomials agree three ways", three_way),
        ("Laguerre orthogonality in z", orthogonality),
        ("Laguerre orthogonality at xi-points", xi_orthogonality),
        ("Laguerre recurrences and differential equation", recurrence_and_ode),
        ("Euler, symmetry, even, Leibniz and multiplication identities", structural_identities),
        ("image-membership oracles agree", oracle_equivalence),
        ("evaluation homomorphism worked examples", worked_examples),
        ("t = 0 power experiments: all members, deterministic", mathieu_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {}", e.downcast_ref::<String>().cloned().unwrap_or_default())));
        let ms = t0.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}; {ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1} s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
