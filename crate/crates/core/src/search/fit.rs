use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least two points, got {0}")]
    TooFew(usize),
    #[error("point ({0}, {1}) is not strictly positive")]
    NonPositive(f64, f64),
    #[error("all x values are equal")]
    Degenerate,
}

/// Fits `y = a·x^b` by least squares on `(ln x, ln y)`; returns `(a, b)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<(f64, f64), FitError> {
    if points.len() < 2 {
        return Err(FitError::TooFew(points.len()));
    }
    if let Some(&(x, y)) = points.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(FitError::NonPositive(x, y));
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|&(u, _)| (u - mx) * (u - mx)).sum();
    let sxy: f64 = logs.iter().map(|&(u, v)| (u - mx) * (v - my)).sum();
    if sxx == 0.0 {
        return Err(FitError::Degenerate);
    }
    let b = sxy / sxx;
    let a = (my - b * mx).exp();
    Ok((a, b))
}
