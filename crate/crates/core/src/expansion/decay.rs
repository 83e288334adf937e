use num_complex::Complex64;
use serde::Serialize;

/// Entries at or below this magnitude count as structural zeros.
pub const ZERO_ENTRY: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    /// Least-squares slope of `log|G_j|` against `log j` over the decreasing
    /// envelope, `None` when fewer than three points remain.
    pub slope: Option<f64>,
    /// Zero entries occur at every other row and nowhere else.
    pub alternating_zeros: bool,
    /// 1-based rows treated as zero.
    pub zero_rows: Vec<usize>,
    /// 1-based rows of the decreasing envelope used in the fit.
    pub envelope_rows: Vec<usize>,
}

/// Decay of a change-of-basis column. Rows below `first_row` are left out
/// of the fit.
pub fn fit_decay(column: &[Complex64], first_row: usize) -> DecayFit {
    let mags: Vec<f64> = column.iter().map(|v| v.norm()).collect();
    let zero_rows: Vec<usize> = mags
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= ZERO_ENTRY)
        .map(|(i, _)| i + 1)
        .collect();

    let alternating_zeros = !zero_rows.is_empty() && {
        let parity = zero_rows[0] % 2;
        mags.iter().enumerate().all(|(i, &v)| ((i + 1) % 2 == parity) == (v <= ZERO_ENTRY))
    };

    // Upper envelope seen from the tail: entries larger than everything
    // after them.
    let mut envelope_rows = Vec::new();
    let mut running = 0.0f64;
    for (i, &v) in mags.iter().enumerate().rev() {
        if v > ZERO_ENTRY && v > running {
            running = v;
            if i + 1 >= first_row {
                envelope_rows.push(i + 1);
            }
        }
    }
    envelope_rows.reverse();

    let slope = if envelope_rows.len() >= 3 {
        let pts: Vec<(f64, f64)> = envelope_rows
            .iter()
            .map(|&r| ((r as f64).ln(), mags[r - 1].ln()))
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some(sxy / sxx)
    } else {
        None
    };

    DecayFit {
        slope,
        alternating_zeros,
        zero_rows,
        envelope_rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law_with_gaps() {
        let col: Vec<Complex64> = (1..=100)
            .map(|j| {
                if j % 2 == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new((j as f64).powf(-3.0), 0.0)
                }
            })
            .collect();
        let fit = fit_decay(&col, 5);
        assert!((fit.slope.unwrap() + 3.0).abs() < 1e-12);
        assert!(fit.alternating_zeros);
    }

    #[test]
    fn single_spike_has_no_slope() {
        let mut col = vec![Complex64::new(0.0, 0.0); 20];
        col[0] = Complex64::new(1.0, 0.0);
        let fit = fit_decay(&col, 1);
        assert!(fit.slope.is_none());
        assert!(!fit.alternating_zeros);
    }
}
