use crate::error::{Error, Result};

/// Least-squares line `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Fits a line through `(x_i, y_i)`; `regime` names the data in the error.
pub fn fit_line(xs: &[f64], ys: &[f64], regime: &'static str, required: usize) -> Result<LineFit> {
    let n = xs.len().min(ys.len());
    if n < required.max(2) {
        return Err(Error::Fit {
            regime,
            points: n,
            required: required.max(2),
        });
    }
    let nf = n as f64;
    let mx = xs[..n].iter().sum::<f64>() / nf;
    let my = ys[..n].iter().sum::<f64>() / nf;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs[..n].iter().zip(&ys[..n]) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        return Err(Error::Fit {
            regime,
            points: 1,
            required: required.max(2),
        });
    }
    let slope = sxy / sxx;
    Ok(LineFit {
        slope,
        intercept: my - slope * mx,
        points: n,
    })
}
