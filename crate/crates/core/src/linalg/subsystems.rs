//! Operations that act on individual tensor factors of a composite matrix.
//!
//! Subsystem 0 is the most significant (slowest varying) index, so for
//! `dims = [2, 2]` the basis is ordered `|00⟩, |01⟩, |10⟩, |11⟩`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Checks that `dims` describes a factorization of a `total`-dimensional space.
pub fn check_dims(dims: &[usize], total: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {dims:?} must be non-empty and positive"
        )));
    }
    let product: usize = dims.iter().product();
    if product != total {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {dims:?} multiply to {product}, matrix has dimension {total}"
        )));
    }
    Ok(())
}

/// Splits a flat basis index into per-subsystem digits.
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

fn combine(digits: &[usize], dims: &[usize], select: &[usize]) -> usize {
    select.iter().fold(0, |acc, &k| acc * dims[k] + digits[k])
}

/// Reduced matrix on the subsystems listed in `keep`, tracing out the rest.
///
/// Kept subsystems appear in ascending order in the result.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_dims(dims, m.dim())?;
    let n = dims.len();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() != keep.len() || kept.iter().any(|&k| k >= n) {
        return Err(Error::DimensionMismatch(format!(
            "keep set {keep:?} is not a non-empty subset of 0..{n}"
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|k| !kept.contains(k)).collect();
    let out_dim: usize = kept.iter().map(|&k| dims[k]).product();

    let total = m.dim();
    let mut row_digits = vec![0; n];
    let mut col_digits = vec![0; n];
    let mut out = vec![Complex64::new(0.0, 0.0); out_dim * out_dim];
    for r in 0..total {
        digits(r, dims, &mut row_digits);
        let rk = combine(&row_digits, dims, &kept);
        let rt = combine(&row_digits, dims, &traced);
        for c in 0..total {
            digits(c, dims, &mut col_digits);
            if combine(&col_digits, dims, &traced) == rt {
                out[rk * out_dim + combine(&col_digits, dims, &kept)] += m.get(r, c);
            }
        }
    }
    ComplexMatrix::new(out_dim, out)
}

/// Transposes the tensor factor `which`, leaving the others untouched.
pub fn partial_transpose(m: &ComplexMatrix, dims: &[usize], which: usize) -> Result<ComplexMatrix> {
    check_dims(dims, m.dim())?;
    if which >= dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem {which} out of range for {} subsystems",
            dims.len()
        )));
    }
    // Stride of subsystem `which` in the flat index.
    let stride: usize = dims[which + 1..].iter().product();
    let d = dims[which];
    Ok(ComplexMatrix::from_fn(m.dim(), |r, c| {
        let rd = (r / stride) % d;
        let cd = (c / stride) % d;
        let r2 = r - rd * stride + cd * stride;
        let c2 = c - cd * stride + rd * stride;
        m.get(r2, c2)
    }))
}

/// Partial transpose over every subsystem in `which`.
pub fn partial_transpose_many(m: &ComplexMatrix, dims: &[usize], which: &[usize]) -> Result<ComplexMatrix> {
    check_dims(dims, m.dim())?;
    let mut out = m.clone();
    for &k in which {
        out = partial_transpose(&out, dims, k)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen::eigvalsh;
    use crate::linalg::matrix::tensor;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn psi_plus_projector() -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::outer(&[c(h), c(0.0), c(0.0), c(h)])
    }

    #[test]
    fn trace_of_product_state() {
        let a = ComplexMatrix::new(
            2,
            vec![
                c(0.7),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                c(0.3),
            ],
        )
        .unwrap();
        let b = ComplexMatrix::from_diag(&[0.25, 0.75]);
        let ab = tensor(&a, &b);
        assert!(partial_trace(&ab, &[2, 2], &[0]).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(partial_trace(&ab, &[2, 2], &[1]).unwrap().max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let psi = psi_plus_projector();
        assert!(partial_trace(&psi, &[2, 2], &[1]).unwrap().max_abs_diff(&half) < 1e-15);
        assert!(partial_trace(&psi, &[2, 2], &[0]).unwrap().max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn ghz_trace_over_middle_qubit() {
        // (|000> + |111>)/sqrt(2); tracing qubit 1 leaves (|00><00| + |11><11|)/2.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![c(0.0); 8];
        amps[0] = c(h);
        amps[7] = c(h);
        let ghz = ComplexMatrix::outer(&amps);
        let reduced = partial_trace(&ghz, &[2, 2, 2], &[0, 2]).unwrap();
        assert!(reduced.max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);
        let ev = eigvalsh(&reduced).unwrap();
        for (got, want) in ev.iter().zip([0.0, 0.0, 0.5, 0.5]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn bad_dims_and_keep_sets() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[0]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 2], &[]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 2], &[2]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 2], &[0, 0]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            partial_transpose(&m, &[2, 2], 2),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            partial_transpose(&m, &[4, 2], 0),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = partial_transpose(&psi_plus_projector(), &[2, 2], 1).unwrap();
        let ev = eigvalsh(&pt).unwrap();
        for (got, want) in ev.iter().zip([-0.5, 0.5, 0.5, 0.5]) {
            assert!((got - want).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn partial_transpose_of_product_transposes_factor() {
        let a = ComplexMatrix::new(
            2,
            vec![
                c(0.6),
                Complex64::new(0.1, 0.3),
                Complex64::new(0.1, -0.3),
                c(0.4),
            ],
        )
        .unwrap();
        let b = ComplexMatrix::new(
            2,
            vec![
                c(0.5),
                Complex64::new(0.0, 0.2),
                Complex64::new(0.0, -0.2),
                c(0.5),
            ],
        )
        .unwrap();
        let pt = partial_transpose(&tensor(&a, &b), &[2, 2], 1).unwrap();
        assert!(pt.max_abs_diff(&tensor(&a, &b.transpose())) < 1e-15);
        assert!(eigvalsh(&pt).unwrap()[0] > -1e-12);
        assert_eq!(partial_transpose(&pt, &[2, 2], 1).unwrap(), tensor(&a, &b));
    }
}
