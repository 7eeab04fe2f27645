//! Thin wrappers over nalgebra for the dense complex linear algebra used here.

use nalgebra::{DMatrix, DVector};

use crate::cpoly::{sort_canonical, C64};

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Eigenvalues from the complex Schur form, in canonical root order.
pub fn eigenvalues(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    let mut ev: Vec<C64> = match m.clone().try_schur(1e-15, 10_000) {
        Some(s) => {
            let (_, t) = s.unpack();
            (0..n).map(|i| t[(i, i)]).collect()
        }
        None => {
            let lu_diag = m.clone().lu().u().diagonal();
            lu_diag.iter().copied().collect()
        }
    };
    sort_canonical(&mut ev, |z| *z);
    ev
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// `sigma_min / sigma_max`, zero for the zero matrix.
pub fn inverse_condition(m: &CMat) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&a), Some(&b)) if a > 0.0 => b / a,
        _ => 0.0,
    }
}

/// Unit vector `x` minimizing `|m x|` (right singular vector of the smallest
/// singular value).
pub fn null_vector(m: &CMat) -> CVec {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    vt.row(imin).transpose().map(|c| c.conj())
}

pub fn solve(a: &CMat, b: &CVec) -> Option<CVec> {
    a.clone().lu().solve(b)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_and_null() {
        let m = CMat::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let ev = eigenvalues(&m);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((ev[0] - C64::new(phi, 0.0)).norm() < 1e-12);
        let shifted = &m - CMat::identity(2, 2) * ev[0];
        let v = null_vector(&shifted);
        assert!((&shifted * &v).norm() < 1e-12);
        let rot = CMat::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(-1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let ev = eigenvalues(&rot);
        assert!((ev[0] - C64::new(0.0, 1.0)).norm() < 1e-12);
    }
}
