//! Log-linear decay fits `y_k ≈ C · r^k`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub rate: f64,
    pub constant: f64,
    /// Number of samples above the noise floor that entered the fit.
    pub points: usize,
}

/// Least-squares fit of `ln y_k = ln C + k ln r` over samples with `y_k > floor`.
pub fn fit_decay(samples: &[(usize, f64)], floor: f64) -> Option<DecayFit> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(_, y)| *y > floor && y.is_finite())
        .map(|&(k, y)| (k as f64, y.ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some(DecayFit {
        rate: slope.exp(),
        constant: (my - slope * mx).exp(),
        points: pts.len(),
    })
}

/// Least-squares `C` for the model `y_k = C · rate^k` with a known rate,
/// fitted in log space.
pub fn fit_constant(samples: &[(usize, f64)], rate: f64, floor: f64) -> Option<f64> {
    let logs: Vec<f64> = samples
        .iter()
        .filter(|(_, y)| *y > floor && y.is_finite())
        .map(|&(k, y)| y.ln() - k as f64 * rate.ln())
        .collect();
    if logs.is_empty() {
        return None;
    }
    Some((logs.iter().sum::<f64>() / logs.len() as f64).exp())
}
