//! Shared numerical helpers: log-factorials, stable summation.

use statrs::function::gamma::ln_gamma;

/// Table of ln(k!) for k = 0..=n.
pub(crate) fn ln_factorials(n: usize) -> Vec<f64> {
    (0..=n).map(|k| ln_gamma(k as f64 + 1.0)).collect()
}

/// ln C(n, k) from a precomputed `ln_factorials` table. The denominator
/// terms are grouped before subtracting so C(n, k) and C(n, n-k) come out
/// bit-identical.
pub(crate) fn ln_choose(table: &[f64], n: usize, k: usize) -> f64 {
    debug_assert!(k <= n && n < table.len());
    table[n] - (table[k] + table[n - k])
}

/// `k * ln(p)` with the multinomial convention 0^0 = 1: a factor with
/// exponent zero contributes nothing even when p = 0.
pub(crate) fn exponent_term(count: usize, p: f64) -> f64 {
    if count == 0 {
        0.0
    } else {
        count as f64 * p.ln()
    }
}

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, value: f64) {
        let y = value - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// Binomial masses over j = 0..=n for step probabilities (p, q), computed in
/// log space and exponentiated, then normalized so the masses sum to exactly
/// the accumulated total. Raw log-gamma sums drift to ~1.4e-10 by n = 1e5,
/// which would breach the distribution tolerance.
pub(crate) fn binomial_masses(n: usize, p: f64, q: f64) -> Vec<f64> {
    let table = ln_factorials(n);
    let mut masses = Vec::with_capacity(n + 1);
    let mut total = KahanSum::default();
    // For p == q the probability exponent is j-independent; evaluating it
    // once keeps the unbiased distribution mirror-symmetric to the bit.
    let flat_exponent = (p == q).then(|| exponent_term(n, p));
    for j in 0..=n {
        let prob_exponent =
            flat_exponent.unwrap_or_else(|| exponent_term(j, p) + exponent_term(n - j, q));
        let log_mass = ln_choose(&table, n, j) + prob_exponent;
        let mass = log_mass.exp();
        total.add(mass);
        masses.push(mass);
    }
    let norm = total.value();
    if norm > 0.0 {
        for m in &mut masses {
            *m /= norm;
        }
    }
    masses
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_choose_small_values() {
        let table = ln_factorials(10);
        assert!((ln_choose(&table, 5, 2).exp() - 10.0).abs() < 1e-12);
        assert!((ln_choose(&table, 10, 5).exp() - 252.0).abs() < 1e-10);
        assert_eq!(ln_choose(&table, 7, 0), 0.0);
    }

    #[test]
    fn binomial_masses_sum_to_one_at_large_n() {
        for &n in &[100usize, 10_000, 100_000] {
            let masses = binomial_masses(n, 0.3, 0.7);
            let sum: f64 = masses.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "n={n}: |sum-1| = {:e}", (sum - 1.0).abs());
        }
    }

    #[test]
    fn binomial_masses_degenerate_probabilities() {
        let masses = binomial_masses(5, 1.0, 0.0);
        assert_eq!(masses[5], 1.0);
        assert!(masses[..5].iter().all(|&m| m == 0.0));
    }

    #[test]
    fn kahan_recovers_cancellation() {
        let mut acc = KahanSum::default();
        for _ in 0..1_000_000 {
            acc.add(0.1);
        }
        assert!((acc.value() - 100_000.0).abs() < 1e-9);
    }
}
