//! Small dense linear-algebra helpers shared by the geometry modules.
//!
//! Everything is built on `nalgebra` dynamic matrices with `Complex<f64>`
//! scalars. The helpers here wrap the handful of operations the rest of the
//! crate needs: Kronecker products, numerical rank, kernel bases and maximum
//! entry magnitudes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;
pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;

/// Complex zero and one, handy when building matrices entry by entry.
pub const C_ZERO: C64 = Complex::new(0.0, 0.0);
pub const C_ONE: C64 = Complex::new(1.0, 0.0);
pub const C_I: C64 = Complex::new(0.0, 1.0);

/// Largest entry magnitude of a complex matrix.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry magnitude of a complex vector.
pub fn max_abs_vec(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Frobenius norm of a complex matrix.
pub fn fro_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `a (x) b` Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Numerical rank from singular values, relative cutoff `rel_tol * sigma_max`.
pub fn rank(m: &CMat, rel_tol: f64) -> usize {
    let sv = m.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Orthonormal basis of the (right) kernel of `m`, as columns.
///
/// Singular vectors whose singular value falls below `rel_tol * sigma_max`
/// (or below an absolute floor when the matrix is exactly zero) span the
/// kernel. Deterministic for fixed input.
pub fn kernel_basis(m: &CMat, rel_tol: f64) -> Vec<CVec> {
    let ncols = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = if smax > 0.0 { rel_tol * smax } else { f64::INFINITY };
    let mut basis = Vec::new();
    for i in 0..ncols {
        let below = if i < svd.singular_values.len() {
            svd.singular_values[i] <= cut
        } else {
            true // columns beyond the rank of a wide/tall factorization
        };
        if below {
            // kernel vector = adjoint of the i-th row of V^H
            if i < v_t.nrows() {
                let row = v_t.row(i);
                basis.push(CVec::from_iterator(ncols, row.iter().map(|z| z.conj())));
            }
        }
    }
    if smax == 0.0 {
        // zero matrix: the whole space is the kernel
        basis = (0..ncols)
            .map(|i| {
                let mut e = CVec::zeros(ncols);
                e[i] = C_ONE;
                e
            })
            .collect();
    }
    basis
}

/// Eigenvalues of a complex Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Eigenvalues of a real symmetric matrix, descending.
pub fn symmetric_eigenvalues_desc(m: &RMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}
