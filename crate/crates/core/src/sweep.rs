//! Negativity of diagonal qutrit states over a grid on the probability simplex.

use crate::entanglement::diagonal_cubic_analysis;
use crate::error::{Error, Result};
use crate::states::DiagonalDistribution;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub negativity: f64,
    /// Most negative root of the unscaled cubic; `negativity = |neg_root| / 2`.
    pub neg_root: f64,
}

pub const CSV_HEADER: &str = "p1,p2,p3,negativity,neg_root";

/// Grid points `(i*step, j*step, 1 - i*step - j*step)` with every component
/// nonnegative, in lexicographic `(i, j)` order.
pub fn sweep_grid(step: f64) -> Result<Vec<SweepRow>> {
    if !(step.is_finite() && step > 0.0 && step <= 0.5) {
        return Err(Error::InvalidStep(step));
    }
    let n = (1.0 / step + 1e-9).floor() as usize;
    let mut rows = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            let p1 = i as f64 * step;
            let p2 = j as f64 * step;
            let mut p3 = 1.0 - p1 - p2;
            if p3 < 0.0 {
                // only rounding can get here, since i + j <= n
                p3 = 0.0;
            }
            let cubic = diagonal_cubic_analysis(&DiagonalDistribution::new(vec![p1, p2, p3])?)?;
            rows.push(SweepRow {
                p1,
                p2,
                p3,
                negativity: cubic.negativity,
                neg_root: cubic.neg_root(),
            });
        }
    }
    Ok(rows)
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.p1, r.p2, r.p3, r.negativity, r.neg_root
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_steps() {
        for step in [0.0, -0.1, 0.6, f64::NAN, f64::INFINITY] {
            assert!(matches!(sweep_grid(step), Err(Error::InvalidStep(_))));
        }
    }

    #[test]
    fn third_step_hits_the_center() {
        let rows = sweep_grid(1.0 / 3.0).unwrap();
        assert_eq!(rows.len(), 10);
        let center = rows
            .iter()
            .find(|r| (r.p1 - 1.0 / 3.0).abs() < 1e-12 && (r.p2 - 1.0 / 3.0).abs() < 1e-12)
            .unwrap();
        assert!((center.negativity - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn half_step_vertices() {
        let rows = sweep_grid(0.5).unwrap();
        assert_eq!(rows.len(), 6);
        let vertices: Vec<_> = rows
            .iter()
            .filter(|r| [r.p1, r.p2, r.p3].iter().any(|&p| p == 1.0))
            .collect();
        assert_eq!(vertices.len(), 3);
        for v in vertices {
            assert!((v.negativity - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn rows_are_distributions_in_order() {
        let rows = sweep_grid(0.05).unwrap();
        assert_eq!(rows.len(), 21 * 22 / 2);
        for w in rows.windows(2) {
            assert!((w[0].p1, w[0].p2) < (w[1].p1, w[1].p2));
        }
        for r in &rows {
            assert!((r.p1 + r.p2 + r.p3 - 1.0).abs() <= 1e-12);
            assert!(r.p3 >= 0.0);
            assert!((r.negativity - r.neg_root.abs() / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn non_divisor_step() {
        // 1/0.3 is not an integer: i + j <= 3
        let rows = sweep_grid(0.3).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.p3 >= 0.0));
    }

    #[test]
    fn csv_is_deterministic() {
        let a = render_csv(&sweep_grid(0.1).unwrap());
        let b = render_csv(&sweep_grid(0.1).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("p1,p2,p3,negativity,neg_root\n0,0,1,0.5,-1\n"));
    }
}
