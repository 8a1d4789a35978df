//! Exact big-integer binomial oracle for the log-gamma distribution path.
//! Coefficients are built multiplicatively in arbitrary precision, so this
//! route shares nothing with the engine's log-space evaluation.

use num_bigint::BigUint;

use coinwalk_core::crw::{crw_distribution, CrwParams};

fn choose(n: usize, k: usize) -> BigUint {
    let mut value = BigUint::from(1u32);
    for i in 1..=k.min(n - k) {
        value = value * BigUint::from(n - i + 1) / BigUint::from(i);
    }
    value
}

fn to_f64(value: &BigUint) -> f64 {
    let digits = value.to_string();
    digits.parse::<f64>().expect("binomial coefficients fit f64 range")
}

#[test]
fn central_mass_of_the_symmetric_hundred_step_walk() {
    // C(100, 50) / 2^100
    let exact = to_f64(&choose(100, 50)) * (2.0f64).powi(-100);
    assert!((exact - 0.0795892).abs() < 1e-7);
    let d = crw_distribution(&CrwParams::symmetric(100));
    let got = d.mass(0);
    assert!(
        ((got - exact) / exact).abs() <= 1e-12,
        "mass(0) = {got:.17e}, exact {exact:.17e}"
    );
}

#[test]
fn log_space_masses_match_exact_coefficients_up_to_n_64() {
    for &n in &[5usize, 17, 33, 64] {
        for &p1 in &[0.5, 0.7] {
            let params = CrwParams::new(p1, 1.0 - p1, n).unwrap();
            let d = crw_distribution(&params);
            for j in 0..=n {
                let x = 2 * j as i64 - n as i64;
                let expected =
                    to_f64(&choose(n, j)) * p1.powi(j as i32) * (1.0 - p1).powi((n - j) as i32);
                let got = d.mass(x);
                assert!(
                    (got - expected).abs() <= 1e-12 * expected.max(1e-300),
                    "n = {n}, p1 = {p1}, site {x}: {got:e} vs {expected:e}"
                );
            }
        }
    }
}
