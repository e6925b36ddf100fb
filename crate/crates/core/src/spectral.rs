//! Dominant eigenvalues of small nonnegative matrices.

/// Spectral radius of a nonnegative square matrix by power iteration.
///
/// Iterates on `A + I`, which is primitive whenever `A` is irreducible, so
/// periodic components converge too; the shift is removed at the end.
pub fn spectral_radius(matrix: &[Vec<f64>]) -> f64 {
    let size = matrix.len();
    if size == 0 {
        return 0.0;
    }
    let mut x = vec![1.0 / size as f64; size];
    let mut estimate = 0.0;
    for _ in 0..1_000_000 {
        let mut y: Vec<f64> = (0..size)
            .map(|i| x[i] + matrix[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        let norm: f64 = y.iter().sum();
        if norm == 0.0 {
            return 0.0;
        }
        y.iter_mut().for_each(|v| *v /= norm);
        // x sums to 1, so the growth of the total mass is the Rayleigh-style estimate.
        let next = norm;
        let settled = (next - estimate).abs() <= 1e-15 * next
            && y.iter().zip(&x).all(|(a, b)| (a - b).abs() <= 1e-15);
        estimate = next;
        x = y;
        if settled {
            break;
        }
    }
    estimate - 1.0
}
