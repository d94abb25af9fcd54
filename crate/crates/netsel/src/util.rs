/// Sums values in ascending order so the result does not depend on the
/// order they arrive in. Row sums and column norms computed this way stay
/// bit-identical when criteria or alternatives are permuted.
pub(crate) fn stable_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sorted: Vec<f64> = values.collect();
    sorted.sort_unstable_by(f64::total_cmp);
    sorted.iter().sum()
}
