//! Two-sample Kolmogorov-Smirnov test with the asymptotic critical value.

/// Outcome of a two-sample KS comparison at level `alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub critical_value: f64,
    pub alpha: f64,
    pub pass: bool,
}

/// Supremum gap between the two empirical CDFs, compared against
/// `c(alpha) * sqrt((m + n) / (m n))` with
/// `c(alpha) = sqrt(-ln(alpha / 2) / 2)`.
pub fn ks_two_sample(s1: &[f64], s2: &[f64], alpha: f64) -> KsOutcome {
    assert!(!s1.is_empty() && !s2.is_empty(), "samples must be nonempty");
    assert!(alpha > 0.0 && alpha < 1.0, "level must lie in (0, 1)");
    let mut a = s1.to_vec();
    let mut b = s2.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (m, n) = (a.len(), b.len());
    let mut statistic = 0.0f64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < m && j < n {
        let x = a[i].min(b[j]);
        while i < m && a[i] <= x {
            i += 1;
        }
        while j < n && b[j] <= x {
            j += 1;
        }
        let gap = (i as f64 / m as f64 - j as f64 / n as f64).abs();
        statistic = statistic.max(gap);
    }
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let critical_value = c * (((m + n) as f64) / ((m * n) as f64)).sqrt();
    KsOutcome {
        statistic,
        critical_value,
        alpha,
        pass: statistic < critical_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_have_zero_statistic() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64 / 100.0).collect();
        let outcome = ks_two_sample(&xs, &xs, 0.01);
        assert_eq!(outcome.statistic, 0.0);
        assert!(outcome.pass);
    }

    #[test]
    fn disjoint_samples_fail() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let ys: Vec<f64> = (0..100).map(|i| 1000.0 + i as f64).collect();
        let outcome = ks_two_sample(&xs, &ys, 0.01);
        assert!((outcome.statistic - 1.0).abs() < 1e-12);
        assert!(!outcome.pass);
    }

    #[test]
    fn critical_value_formula() {
        let xs = vec![0.0; 250_000];
        let ys = vec![0.0; 250_000];
        let outcome = ks_two_sample(&xs, &ys, 0.01);
        // c(0.01) = sqrt(-ln(0.005)/2) = 1.6276...
        let expected = 1.6276236115189503 * (2.0f64 / 250_000.0).sqrt();
        assert!((outcome.critical_value - expected).abs() < 1e-9);
    }
}
