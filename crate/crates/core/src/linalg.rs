//! Small dense decompositions with a fixed sign convention. Matrices are
//! nalgebra types; the factorizations run on faer.

use faer::{Mat, Side};
use nalgebra::DMatrix;

/// Relative tolerance for deciding the numerical rank of a matrix from its
/// singular values.
pub const RANK_EPS: f64 = 1e-8;

/// Thin SVD `a = u · diag(s) · vᵀ` with singular values in descending order.
///
/// Each left singular vector is flipped so its largest-magnitude entry is
/// positive (first such entry on ties); the matching right vector is
/// flipped with it.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    pub u: DMatrix<f64>,
    pub s: Vec<f64>,
    pub v: DMatrix<f64>,
}

pub fn thin_svd(a: &DMatrix<f64>, want_v: bool) -> ThinSvd {
    let k = a.nrows().min(a.ncols());
    if k == 0 {
        return ThinSvd {
            u: DMatrix::zeros(a.nrows(), 0),
            s: Vec::new(),
            v: DMatrix::zeros(a.ncols(), 0),
        };
    }
    let fm = Mat::<f64>::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)]);
    let svd = match fm.thin_svd() {
        Ok(svd) => svd,
        Err(_) => panic!("SVD did not converge on a finite {}x{} matrix", a.nrows(), a.ncols()),
    };
    let (u, s, v) = (svd.U(), svd.S().column_vector(), svd.V());

    let mut out_u = DMatrix::from_fn(a.nrows(), k, |i, j| u[(i, j)]);
    let mut out_v = if want_v {
        DMatrix::from_fn(a.ncols(), k, |i, j| v[(i, j)])
    } else {
        DMatrix::zeros(0, 0)
    };
    let out_s = (0..k).map(|j| s[j]).collect();
    for j in 0..k {
        if peak_is_negative(out_u.column(j).iter()) {
            out_u.column_mut(j).neg_mut();
            if want_v {
                out_v.column_mut(j).neg_mut();
            }
        }
    }
    ThinSvd {
        u: out_u,
        s: out_s,
        v: out_v,
    }
}

/// True when the largest-magnitude entry (first on ties) is negative.
pub(crate) fn peak_is_negative<'a>(values: impl Iterator<Item = &'a f64>) -> bool {
    let mut best = 0.0f64;
    let mut negative = false;
    for &x in values {
        if x.abs() > best {
            best = x.abs();
            negative = x < 0.0;
        }
    }
    negative
}

/// Eigenvectors for the `count` largest eigenvalues of a symmetric matrix,
/// largest first.
pub fn top_eigenvectors(a: &DMatrix<f64>, count: usize) -> DMatrix<f64> {
    let n = a.nrows();
    let fm = Mat::<f64>::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let eig = match fm.self_adjoint_eigen(Side::Lower) {
        Ok(eig) => eig,
        Err(_) => panic!("eigendecomposition did not converge on a finite {n}x{n} matrix"),
    };
    // eigenvalues come ascending
    let u = eig.U();
    DMatrix::from_fn(n, count, |i, j| u[(i, n - 1 - j)])
}

/// Number of singular values above `eps · s_max`. `s` must be descending.
pub fn numerical_rank(s: &[f64], eps: f64) -> usize {
    match s.first() {
        Some(&max) if max > 0.0 => s.iter().take_while(|&&x| x > eps * max).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the column space of `a`, plus all its singular
/// values in descending order.
pub fn column_basis(a: &DMatrix<f64>, eps: f64) -> (DMatrix<f64>, Vec<f64>) {
    let svd = if a.ncols() > a.nrows() {
        // aᵀ = QR gives a = Rᵀ Qᵀ: same column space and singular values,
        // from a square factor instead of the wide original.
        let at = Mat::<f64>::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)]);
        let qr = at.qr();
        let r = qr.thin_R();
        thin_svd(&DMatrix::from_fn(r.ncols(), r.nrows(), |i, j| r[(j, i)]), false)
    } else {
        thin_svd(a, false)
    };
    let rank = numerical_rank(&svd.s, eps);
    (svd.u.columns(0, rank).clone_owned(), svd.s)
}
