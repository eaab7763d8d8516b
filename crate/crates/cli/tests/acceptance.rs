//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seifert_nu::dedekind::{s3_bruteforce, s3_fast, CotTable, DedekindArgs};
use seifert_nu::expansion::{
    b_closed_form, b_series, eta3_closed_form, eta3_series, nu_closed_form, nu_limit,
    random_seifert, reading_audit, LaurentSeries,
};
use seifert_nu::lens::{eta_round, nu_cross_check, nu_lens, smooth_model, Convention, LensSpace};
use seifert_nu::obstruct::{check_ch_filling_equality, disk_bundle_degree, FillingData};
use seifert_nu::seifert::{dedekind_total, mu_smooth, nu_seifert};
use seifert_nu::{Rational, SeifertData};

const FLOAT_TOLERANCE: f64 = 1e-6;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.3}s (limit {:.0}s)", elapsed.as_secs_f64(), limit.as_secs_f64()))
}

fn random_chi_d(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    let chi = q(rng.gen_range(-60..=60), rng.gen_range(1..=15));
    let d = q(-rng.gen_range(1..=60), rng.gen_range(1..=15));
    (chi, d)
}

fn boundary_term() -> Outcome {
    let start = Instant::now();
    let b = b_series();
    let exact = b == b_closed_form();
    let (fast, time) = within(start.elapsed(), Duration::from_secs(1));
    outcome(exact && fast, format!("B(r) = {b}; {time}"))
}

fn eta_expansion() -> Outcome {
    let start = Instant::now();
    let squared_ok = [q(0, 1), q(-12, 5), q(7, 3), q(1, 1)].iter().all(|sigma| {
        let eta = eta3_series(sigma);
        let target = eta3_closed_form(sigma);
        (0..=2).all(|k| eta.coefficient(k) == target.coefficient(k))
            && eta.max_t_power() == Some(2)
    });
    let audit = reading_audit();
    let literal_ok = audit.literal_t4 == LaurentSeries::d().scale(&q(-1, 128));
    let (fast, time) = within(start.elapsed(), Duration::from_secs(1));
    outcome(
        squared_ok && literal_ok && fast,
        format!("literal-reading t^4 residual in 3*eta = {}; {time}", audit.literal_t4),
    )
}

fn limit_reconstruction() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut symbolic = true;
    for sigma in [q(0, 1), q(5, 3), q(-36, 7)] {
        let limit = nu_limit(&sigma);
        symbolic &= limit.divergent_ok && limit.constant == nu_closed_form(&sigma);
    }
    let mut agree = 0;
    for _ in 0..50 {
        let (chi, d) = random_chi_d(&mut rng);
        let smooth = SeifertData::smooth(d.clone(), chi.clone());
        let from_limit = nu_limit(&Rational::zero()).constant.evaluate(&chi, &d).unwrap();
        let with_points = random_seifert(&mut rng);
        let sigma = Rational::from(12) * dedekind_total(&with_points).unwrap();
        let orbifold = nu_limit(&sigma)
            .constant
            .evaluate(&with_points.euler, &with_points.degree)
            .unwrap();
        if from_limit == nu_seifert(&smooth).unwrap() && orbifold == nu_seifert(&with_points).unwrap() {
            agree += 1;
        }
    }
    let (fast, time) = within(start.elapsed(), Duration::from_secs(1));
    outcome(
        symbolic && agree == 50 && fast,
        format!("divergence cancels symbolically; {agree}/50 specializations agree; {time}"),
    )
}

fn dedekind_oracles() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut exact_agree = 0;
    while exact_agree < 500 {
        let alpha: i64 = rng.gen_range(1..=5000);
        let beta: i64 = rng.gen_range(-3 * alpha..=3 * alpha);
        let gamma: i64 = rng.gen_range(-3 * alpha..=3 * alpha);
        let Ok(args) = DedekindArgs::new(alpha, beta, gamma) else { continue };
        if s3_fast(&args) != s3_bruteforce(&args) {
            return outcome(false, format!("s3_fast != s3_bruteforce at ({alpha}, {beta}, {gamma})"));
        }
        exact_agree += 1;
    }
    let exact_time = start.elapsed();

    let mut worst = 0.0f64;
    let mut compared = 0usize;
    let mut check = |table: &CotTable, alpha: i64, beta: i64, gamma: i64| {
        let exact = s3_bruteforce(&DedekindArgs::new(alpha, beta, gamma).unwrap()).to_f64();
        worst = worst.max((exact - table.s3(beta as u64, gamma as u64)).abs());
        compared += 1;
    };
    // Every valid triple for small alpha.
    for alpha in 1..=100i64 {
        let table = CotTable::new(alpha as u64);
        for beta in 0..alpha {
            for gamma in 0..alpha {
                if coprime(beta, alpha) && coprime(gamma, alpha) {
                    check(&table, alpha, beta, gamma);
                }
            }
        }
    }
    // Every reduced triple (alpha, 1, h) up to 1000, plus random full triples.
    for alpha in 101..=1000i64 {
        let table = CotTable::new(alpha as u64);
        for h in 1..alpha {
            if coprime(h, alpha) {
                check(&table, alpha, 1, h);
            }
        }
        for _ in 0..22 {
            let (beta, gamma) = (rng.gen_range(1..alpha), rng.gen_range(1..alpha));
            if coprime(beta, alpha) && coprime(gamma, alpha) {
                check(&table, alpha, beta, gamma);
            }
        }
    }
    let float_ok = worst <= FLOAT_TOLERANCE;
    let (fast, time) = within(exact_time, Duration::from_secs(5));
    outcome(
        float_ok && fast,
        format!("500/500 exact matches in {time}; float oracle max error {worst:.2e} over {compared} triples"),
    )
}

fn coprime(a: i64, b: i64) -> bool {
    num_integer::gcd(a, b) == 1
}

fn closed_form_s11() -> Outcome {
    let bad: Vec<i64> = (2..=200i64)
        .filter(|&a| {
            let args = DedekindArgs::new(a, 1, 1).unwrap();
            let expected = q((a - 1) * (a - 2), 12 * a);
            s3_fast(&args) != expected || s3_bruteforce(&args) != expected
        })
        .collect();
    outcome(bad.is_empty(), format!("s(a,1,1) = (a-1)(a-2)/(12a) for 2 <= a <= 200; failures {bad:?}"))
}

fn lens_two_routes() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for p in 2..=100i64 {
        for qq in 2..p {
            let Ok(l) = LensSpace::new(p, qq) else { continue };
            if !l.has_orbifold_route() {
                continue;
            }
            let c = nu_cross_check(&l, Convention::Calibrated).unwrap();
            checked += 1;
            if !c.consistent {
                failures.push(l.to_string());
            }
        }
    }
    let spot = nu_lens(&LensSpace::new(5, 2).unwrap()) == q(-1, 5)
        && nu_lens(&LensSpace::new(3, 2).unwrap()) == q(-1, 1);
    let (fast, time) = within(start.elapsed(), Duration::from_secs(10));
    outcome(
        failures.is_empty() && checked > 0 && spot && fast,
        format!("{checked} lens spaces consistent under calibrated convention; failures {failures:?}; {time}"),
    )
}

fn smooth_route() -> Outcome {
    let bad: Vec<i64> = (1..=100i64)
        .filter(|&p| {
            let expected = q(p - 3, 1) + q(1, p);
            let lens = LensSpace::new(p, 1).unwrap();
            nu_lens(&lens) != expected || nu_seifert(&smooth_model(p)).unwrap() != expected
        })
        .collect();
    outcome(bad.is_empty(), format!("nu(L(p,1)) = p - 3 + 1/p by both routes for p <= 100; failures {bad:?}"))
}

fn sphere_and_ball() -> Outcome {
    let formula = nu_seifert(&SeifertData::smooth(q(-1, 1), q(2, 1))).unwrap();
    let lens = nu_lens(&LensSpace::new(1, 1).unwrap());
    let limit = nu_limit(&Rational::zero()).constant.evaluate(&q(2, 1), &q(-1, 1)).unwrap();
    let ball = check_ch_filling_equality(&q(-1, 1), &FillingData::new(q(1, 1), q(0, 1)));
    let minus_one = q(-1, 1);
    outcome(
        formula == minus_one && lens == minus_one && limit == minus_one && ball.holds,
        format!("formula {formula}, lens {lens}, expansion {limit}; ball equality holds = {}", ball.holds),
    )
}

fn nu_mu_relation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ok = (0..100).all(|_| {
        let (chi, d) = random_chi_d(&mut rng);
        let nu = nu_seifert(&SeifertData::smooth(d.clone(), chi.clone())).unwrap();
        nu + mu_smooth(&chi, &d).unwrap() + &d + Rational::from(3) == Rational::zero()
    });
    outcome(ok, "nu + mu + d + 3 = 0 on 100 random smooth bundles")
}

fn disk_bundle() -> Outcome {
    let ok = [-2i64, -4, -6, -8].iter().all(|&c| {
        let chi = Rational::from(c);
        let sol = disk_bundle_degree(&chi).unwrap();
        let d = &sol.degree;
        let three = Rational::from(3);
        sol.unique
            && *d == q(c, 2)
            && &chi + &three == d + &three + (&chi * &chi) / (Rational::from(4) * d)
    });
    outcome(ok, "d = chi/2 solves chi + 3 = d + 3 + chi^2/4d for chi in {-2,-4,-6,-8}")
}

fn lens_eta_identity() -> Outcome {
    let mut count = 0;
    let ok = LensSpace::enumerate(100).iter().all(|l| {
        count += 1;
        nu_lens(l) == -q(1, l.p()) - Rational::from(3) * eta_round(l)
    });
    outcome(ok, format!("nu = -1/p - 3 eta on all {count} lens spaces with p <= 100"))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("seifert-nu").chain(args.iter().copied());
    let code = seifert_nu_cli::run(argv, &mut out, &mut err);
    (code, out)
}

fn determinism() -> Outcome {
    let commands: &[&[&str]] = &[
        &["scan-lens", "--pmax", "60"],
        &["scan-lens", "--pmax", "60", "--convention", "paper-literal"],
        &["--json", "scan-lens", "--pmax", "60"],
        &["scan-bundles", "--genus-max", "6", "--dmin", "-25"],
        &["--json", "scan-bundles", "--genus-max", "6", "--dmin", "-25"],
    ];
    let mut bad = Vec::new();
    for cmd in commands {
        let (code, reference) = run_cli(cmd);
        if code != 0 || reference.is_empty() {
            bad.push(format!("{cmd:?} exited {code}"));
            continue;
        }
        for jobs in ["1", "2", "4", "0", "0"] {
            let mut with_jobs: Vec<&str> = cmd.to_vec();
            with_jobs.extend(["--jobs", jobs]);
            let (_, again) = run_cli(&with_jobs);
            let (_, repeat) = run_cli(cmd);
            if again != reference || repeat != reference {
                bad.push(format!("{cmd:?} --jobs {jobs}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} scan commands byte-identical across runs and job counts; diffs {bad:?}", commands.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("boundary term closed form", boundary_term),
        ("3*eta expansion and literal-reading residual", eta_expansion),
        ("nu as the renormalized limit", limit_reconstruction),
        ("Dedekind fast path and float oracle", dedekind_oracles),
        ("s(a,1,1) closed form", closed_form_s11),
        ("lens two-route consistency", lens_two_routes),
        ("lens smooth-route consistency", smooth_route),
        ("sphere and ball", sphere_and_ball),
        ("nu + mu + d + 3 = 0", nu_mu_relation),
        ("disk-bundle degree", disk_bundle),
        ("lens nu/eta identity", lens_eta_identity),
        ("scan determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let result = criterion();
        let tag = if result.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {:>2}: {name} -- {}", i + 1, result.detail);
        if !result.passed {
            failed += 1;
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
