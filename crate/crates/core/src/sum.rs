use num_complex::Complex64;

const LEAF: usize = 16;

/// Pairwise (cascade) summation. Error grows like log n instead of n.
pub(crate) fn pairwise(terms: &[Complex64]) -> Complex64 {
    if terms.len() <= LEAF {
        return terms.iter().fold(Complex64::new(0.0, 0.0), |a, &b| a + b);
    }
    let mid = terms.len() / 2;
    pairwise(&terms[..mid]) + pairwise(&terms[mid..])
}
