use slet_core::PowerTerm;

/// Central first difference of `f` at `x`, Richardson-extrapolated over five halvings of `h`.
pub fn richardson_first(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    const LEVELS: usize = 5;
    let mut table = [[0.0; LEVELS]; LEVELS];
    let mut step = h;
    for i in 0..LEVELS {
        table[i][0] = (f(x + step) - f(x - step)) / (2.0 * step);
        let mut factor = 4.0;
        for j in 1..=i {
            table[i][j] =
                table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
            factor *= 4.0;
        }
        step /= 2.0;
    }
    table[LEVELS - 1][LEVELS - 1]
}

/// Sum of the magnitudes of each term's derivative, the natural scale of the result.
pub fn derivative_scale(terms: &[PowerTerm], order: usize, r: f64) -> f64 {
    terms
        .iter()
        .map(|t| {
            let falling: f64 = (0..order).map(|i| t.exponent - i as f64).product();
            (t.coefficient * falling * r.powf(t.exponent - order as f64)).abs()
        })
        .sum::<f64>()
        .max(f64::MIN_POSITIVE)
}
