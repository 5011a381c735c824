#[allow(unused_imports)]
use num_traits::Float;

use crate::hermite::SpectralField;

/// `e^{-tH^β}` on coefficients: `c_α ↦ e^{-t(2|α|+d)^β} c_α`. `t = 0` is the
/// identity.
pub fn apply_spectral(f: &SpectralField, beta: f64, t: f64) -> SpectralField {
    if t == 0.0 {
        return f.clone();
    }
    f.apply_multiplier(|e| (-t * e.value.powf(beta)).exp())
}
