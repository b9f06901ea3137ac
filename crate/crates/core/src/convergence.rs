//! Grid-refinement helpers.

/// Observed order `log(e_coarse/e_fine)/log(r)` for refinement ratio `r`.
pub fn observed_order(e_coarse: f64, e_fine: f64, refinement: f64) -> f64 {
    (e_coarse / e_fine).abs().ln() / refinement.ln()
}

/// Richardson extrapolation of two solutions to `h → 0`.
pub fn richardson_extrapolate(f_fine: f64, f_coarse: f64, order: f64, refinement: f64) -> f64 {
    let rp = refinement.powf(order);
    (rp * f_fine - f_coarse) / (rp - 1.0)
}

/// Successive error ratios `e_k / e_{k+1}` of a refinement sequence.
pub fn error_ratios(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| w[0] / w[1]).collect()
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn second_order_sequence() {
        let errs = [1.0, 0.25, 0.0625];
        assert_eq!(error_ratios(&errs), vec![4.0, 4.0]);
        assert_relative_eq!(observed_order(errs[0], errs[1], 2.0), 2.0);
    }

    #[test]
    fn extrapolation_removes_leading_term() {
        // f(h) = 3 + 5h²
        let f = |h: f64| 3.0 + 5.0 * h * h;
        assert_relative_eq!(richardson_extrapolate(f(0.05), f(0.1), 2.0, 2.0), 3.0, max_relative = 1e-12);
    }
}
