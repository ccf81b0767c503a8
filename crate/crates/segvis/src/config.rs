//! Tunable constants for the size and time audits. None of them affect
//! query answers.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Constraints per decomposition, per polygon vertex.
    pub c1: f64,
    /// Cells per decomposition, per squared vertex count.
    pub c2: f64,
    /// Stored profile entries of a whole index, per squared vertex count.
    pub c3: f64,
    /// Partial query visits per unit of `output + log n`.
    pub alpha: f64,
    /// Full query visits per unit of `log^2 n + output`.
    pub beta: f64,
    /// Largest fitted exponent of build time against `n`.
    pub build_exponent: f64,
    /// Cut tree depth per unit of `log2 n`.
    pub depth_factor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            c1: 8.0,
            c2: 8.0,
            c3: 64.0,
            alpha: 16.0,
            beta: 32.0,
            build_exponent: 2.5,
            depth_factor: 4.0,
        }
    }
}

impl Thresholds {
    pub fn max_constraints(&self, n: usize) -> f64 {
        self.c1 * n as f64
    }

    pub fn max_cells(&self, n: usize) -> f64 {
        self.c2 * (n * n) as f64
    }

    pub fn max_profile_entries(&self, n: usize) -> f64 {
        self.c3 * (n * n) as f64
    }

    pub fn max_partial_visits(&self, n: usize, output: usize) -> f64 {
        self.alpha * (output as f64 + (n as f64).log2())
    }

    pub fn max_query_visits(&self, n: usize, output: usize) -> f64 {
        let l = (n as f64).log2();
        self.beta * (l * l + output as f64)
    }

    pub fn max_depth(&self, n: usize) -> f64 {
        self.depth_factor * (n as f64).log2()
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fitted_exponent(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_of_a_power_law() {
        let pts: Vec<(f64, f64)> = [32.0, 64.0, 128.0, 256.0].iter().map(|&n: &f64| (n, 3.0 * n.powf(2.2))).collect();
        assert!((fitted_exponent(&pts) - 2.2).abs() < 1e-9);
    }
}
