//! Acceptance suite: one test per criterion, each printing a single
//! PASS line (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};

use absum::bench::bench;
use absum::closed::{
    s_alpha1_closed, triple_closed, w1_closed, w_even_closed, w_odd_closed, IdentityTag,
};
use absum::gamma::{omega, GTable};
use absum::oracle::{
    centered_double_sum, double_diff_sum, generic_sum, single_sum, triple_vandermonde_sum,
    unrestricted_double_sum,
};
use absum::poly::UniPolyQ;
use absum::ratfunc::RatFuncQ;
use absum::rational::Rational;
use absum::tuenter::{even_sum_from_q, odd_sum_from_p, tuenter_pair};
use absum::verify::integrality_conjecture_check;
use absum::walk::{estimate_expectation, WalkConfig};
use absum::weight::WeightExpr;
use absum::{central_binomial, BigInt};

fn pass(line: &str, started: Instant) {
    println!("{} PASS ({:.2?})", line, started.elapsed());
}

#[test]
fn criterion_01_w1_closed_form() {
    let started = Instant::now();
    for n in 0..=30u64 {
        assert_eq!(centered_double_sum(2, 1, n), w1_closed(n), "n = {n}");
    }
    assert!(
        started.elapsed() < Duration::from_secs(10),
        "budget exceeded"
    );
    pass(
        "criterion 01 [oracle == 2n^2 C(2n,n)^2 for n = 0..=30]:",
        started,
    );
}

#[test]
fn criterion_02_double_sum_reduction() {
    let started = Instant::now();
    for beta in 0..=6u32 {
        for m in 0..=12u64 {
            for n in 0..=12u64 {
                assert_eq!(
                    double_diff_sum(beta, m, n),
                    single_sum(beta, m + n),
                    "beta={beta} m={m} n={n}"
                );
            }
        }
    }
    for beta in 0..=4u32 {
        for n in 0..=12u64 {
            assert_eq!(
                unrestricted_double_sum(beta, n),
                single_sum(beta, n),
                "unrestricted beta={beta} n={n}"
            );
        }
    }
    assert!(
        started.elapsed() < Duration::from_secs(30),
        "budget exceeded"
    );
    pass(
        "criterion 02 [difference double sums reduce to single sums, incl. unrestricted]:",
        started,
    );
}

fn expected_omegas() -> Vec<RatFuncQ> {
    let one = UniPolyQ::from_int_coeffs(&[1]);
    vec![
        // 2n^2
        RatFuncQ::new(UniPolyQ::from_int_coeffs(&[0, 0, 2]), one.clone()),
        // 2n^3 (8n^2 - 12n + 5) / (2n - 1)
        RatFuncQ::new(
            UniPolyQ::from_int_coeffs(&[0, 0, 0, 10, -24, 16]),
            UniPolyQ::from_int_coeffs(&[-1, 2]),
        ),
        // 2n^3 (128n^4 - 512n^3 + 800n^2 - 568n + 153) / (2n - 1)
        RatFuncQ::new(
            UniPolyQ::from_int_coeffs(&[0, 0, 0, 306, -1136, 1600, -1024, 256]),
            UniPolyQ::from_int_coeffs(&[-1, 2]),
        ),
        // 2n^3 (9216n^7 - 86016n^6 + 350464n^5 - 802304n^4 + 1106856n^3
        //       - 914728n^2 + 417358n - 80847) / ((2n - 1)(2n - 3))
        RatFuncQ::new(
            UniPolyQ::from_int_coeffs(&[
                0, 0, 0, -161694, 834716, -1829456, 2213712, -1604608, 700928, -172032, 18432,
            ]),
            UniPolyQ::from_int_coeffs(&[3, -8, 4]),
        ),
    ]
}

#[test]
fn criterion_03_odd_exponent_closed_forms() {
    let started = Instant::now();
    for k in 0..=6u32 {
        for n in 1..=12u64 {
            assert_eq!(
                w_odd_closed(k, n).unwrap(),
                centered_double_sum(2, 2 * k + 1, n),
                "k={k} n={n}"
            );
        }
    }
    for (k, expected) in expected_omegas().into_iter().enumerate() {
        let got = omega(k as u32).omega;
        assert_eq!(
            got.integer_form(),
            expected.integer_form(),
            "omega_{k} differs coefficient-for-coefficient"
        );
    }
    // the omega_3 numerator is 2n^3 times a degree-7 polynomial whose
    // constant term is -80847; pin it directly
    let (num3, _) = omega(3).omega.integer_form();
    assert_eq!(num3[3], BigInt::from(2 * -80847));
    pass(
        "criterion 03 [odd exponents: omega route == oracle for k <= 6, printed omega_0..3 exact]:",
        started,
    );
}

#[test]
fn criterion_04_even_exponent_closed_forms() {
    let started = Instant::now();
    // w_even_closed itself computes both the S route and the Q route and
    // asserts they agree
    for r in 0..=5u32 {
        for n in 0..=12u64 {
            assert_eq!(
                w_even_closed(r, n),
                centered_double_sum(2, 2 * r, n),
                "r={r} n={n}"
            );
        }
    }
    // printed cases: 2^(4n-r') n (2n-1) p(n)
    let printed: [(u32, &[i64]); 4] = [
        (0, &[1]),
        (1, &[1]),
        (2, &[17, -33, 18]),
        (3, &[2764, -8055, 8895, -4500, 900]),
    ];
    for n in 1..=6u64 {
        for (r, tail) in printed {
            let mut value = Rational::pow2(4 * n as i64 - r as i64).expect_integer("power of two");
            if r >= 1 {
                value *= BigInt::from(n) * BigInt::from(2 * n - 1);
            }
            let poly = UniPolyQ::from_int_coeffs(tail)
                .eval(&Rational::from(n))
                .expect_integer("integer polynomial");
            value *= poly;
            assert_eq!(value, w_even_closed(r, n), "printed W_{} at n={n}", 2 * r);
        }
    }
    pass(
        "criterion 04 [even exponents: S and Q routes == oracle for r <= 5, printed W_0..W_6]:",
        started,
    );
}

#[test]
fn criterion_05_integrality_conjecture_check() {
    let started = Instant::now();
    // the interpolation itself is validated inside the check by an
    // extrapolation node; integrality is reported as a finding and is
    // deliberately NOT asserted
    let findings = integrality_conjecture_check(6);
    assert_eq!(findings.len(), 7);
    let mut all_integral = true;
    for finding in &findings {
        all_integral &= finding.integral;
        let coeffs: Vec<String> = finding.coefficients.iter().map(|c| c.to_string()).collect();
        println!(
            "  conjecture 2^(r-4n) W_2r(n) in Z[n]: r={} integral={} coeffs=[{}]",
            finding.r,
            finding.integral,
            coeffs.join(", ")
        );
    }
    println!(
        "  conjecture finding for r <= 6: {}",
        if all_integral {
            "holds"
        } else {
            "FAILS (finding, not a build error)"
        }
    );
    pass(
        "criterion 05 [halved-power integrality conjecture check, r <= 6]:",
        started,
    );
}

#[test]
fn criterion_06_triple_sum() {
    let started = Instant::now();
    for n in 0..=10u64 {
        assert_eq!(triple_vandermonde_sum(n), triple_closed(n), "n = {n}");
    }
    assert!(
        started.elapsed() < Duration::from_secs(60),
        "budget exceeded"
    );
    pass(
        "criterion 06 [triple sum == 3n^3(n-1) C(2n,n)^2 2^(2n-1) for n = 0..=10]:",
        started,
    );
}

#[test]
fn criterion_07_alpha_and_o_families() {
    let started = Instant::now();
    for alpha in 1..=8u32 {
        for n in 0..=12u64 {
            assert_eq!(
                s_alpha1_closed(alpha, n).unwrap(),
                centered_double_sum(alpha, 1, n),
                "alpha={alpha} n={n}"
            );
        }
    }
    assert_eq!(s_alpha1_closed(7, 1).unwrap(), BigInt::from(12));
    let weights = [
        "abs(k1^2*(k1^2-k2^2))",
        "abs(k1^4*(k1^2-k2^2))",
        "abs(k1*k2*(k1^2-k2^2))",
        "abs(k1^2*k2^2*(k1^2-k2^2))",
        "abs(k1^3*k2^3*(k1^2-k2^2))",
    ];
    for (id, weight_src) in weights.iter().enumerate() {
        let id = id as u8 + 1;
        let weight = WeightExpr::parse(weight_src, 2).unwrap();
        for n in 0..=12u64 {
            assert_eq!(
                absum::closed::o_family_closed(id, n).unwrap(),
                generic_sum(&[n, n], &weight).unwrap(),
                "O{id} n={n}"
            );
        }
    }
    pass(
        "criterion 07 [S_alpha,1 closed forms for alpha = 1..=8 incl. the alpha = 7 special case, O1..O5]:",
        started,
    );
}

#[test]
fn criterion_08_two_row_inequality() {
    let started = Instant::now();
    let weight = WeightExpr::parse("abs(k1^2-k2^2)", 2).unwrap();
    for m in 0..=12u64 {
        for n in 0..=12u64 {
            let lhs = generic_sum(&[m, n], &weight).unwrap();
            let rhs = absum::closed::ineq_lower_bound(m, n);
            if m == n {
                assert_eq!(lhs, rhs, "equality expected at m = n = {m}");
            } else {
                assert!(lhs > rhs, "strictness expected at m={m} n={n}");
            }
        }
    }
    pass(
        "criterion 08 [lower bound strict for m != n, equality at m = n, both <= 12]:",
        started,
    );
}

#[test]
fn criterion_09_recurrence_and_interpolant_certification() {
    let started = Instant::now();
    let table = GTable::new(4, 8, 8);
    let report = table.verify_against_definition();
    assert!(report.passed, "{}", report.summary());

    for beta in 0..=10u32 {
        let pair = tuenter_pair(beta);
        for n in 0..=12u64 {
            assert_eq!(
                odd_sum_from_p(&pair.p, n),
                Rational::from(single_sum(2 * beta + 1, n)),
                "P_{beta} at n={n}"
            );
            assert_eq!(
                even_sum_from_q(&pair.q, beta, n),
                Rational::from(single_sum(2 * beta, n)),
                "Q_{beta} at n={n}"
            );
        }
    }
    pass(
        "criterion 09 [G recurrence == defining sum (k<=4, n,m<=8); P/Q extrapolate (beta<=10, n<=12)]:",
        started,
    );
}

#[test]
fn criterion_10_monte_carlo_consistency() {
    let started = Instant::now();
    let configs: [(&[u64], &str, u64); 12] = [
        (&[1], "abs(k1)", 101),
        (&[2], "abs(k1)", 102),
        (&[3], "abs(k1^3)", 103),
        (&[4], "abs(k1^2)", 104),
        (&[1, 1], "abs(k1^2-k2^2)", 105),
        (&[2, 2], "abs(k1^2-k2^2)", 106),
        (&[2, 3], "abs(k1-k2)", 107),
        (&[3, 3], "abs((k1^2-k2^2)^3)", 108),
        (&[4, 2], "abs(k1*k2*(k1^2-k2^2))", 109),
        (&[2, 2, 2], "abs((k1^2-k2^2)*(k1^2-k3^2)*(k2^2-k3^2))", 110),
        (&[4, 4], "abs((k1^2-k2^2)^2)", 111),
        (&[1, 2, 3], "abs(k1+k2-k3)", 112),
    ];
    for (dims, weight_src, seed) in configs {
        let cfg = WalkConfig {
            n_list: dims.to_vec(),
            weight: WeightExpr::parse(weight_src, dims.len()).unwrap(),
            samples: 100_000,
            seed,
        };
        let result = estimate_expectation(&cfg).unwrap();
        let exact = result
            .exact
            .expect("all configs are oracle-affordable")
            .to_f64();
        let deviation = (result.mean - exact).abs();
        assert!(
            deviation <= 5.0 * result.std_error,
            "seed {seed} dims {dims:?} weight {weight_src}: |{} - {exact}| > 5 * {}",
            result.mean,
            result.std_error
        );
    }
    pass(
        "criterion 10 [12 fixed-seed walks within 5 standard errors of exact]:",
        started,
    );
}

#[test]
fn criterion_11_closed_form_speed_advantage() {
    let started = Instant::now();
    let record = bench(IdentityTag::W1, None, 200, 3).unwrap();
    assert!(
        record.values_equal,
        "oracle and closed form disagree at n = 200"
    );
    let speedup = record.speedup();
    assert!(
        speedup >= 100.0,
        "closed form only {speedup:.1}x faster (oracle median {} ns, closed median {} ns)",
        record.median_oracle_ns(),
        record.median_closed_ns()
    );
    pass(
        &format!(
            "criterion 11 [W_1(200): values equal, closed form {speedup:.0}x faster >= 100x]:"
        ),
        started,
    );
}

// shared sanity anchor: the central binomial used across criteria
#[test]
fn central_binomial_anchor() {
    assert_eq!(central_binomial(200).to_string().len(), 120);
}
