//! Test-only oracles. Nothing here calls into nalgebra's SVD or the crate's
//! linear algebra; bases come from Gram–Schmidt and spectra from a cyclic
//! Jacobi eigensolver.

#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common_topics::embeddings::DocumentMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box–Muller
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// `d × m` matrix of independent unit columns.
pub fn random_unit_columns(rng: &mut ChaCha8Rng, d: usize, m: usize) -> DMatrix<f64> {
    let mut a = DMatrix::from_fn(d, m, |_, _| gaussian(rng));
    for mut c in a.column_iter_mut() {
        let n = c.norm();
        c /= n;
    }
    a
}

pub fn random_doc(rng: &mut ChaCha8Rng, d: usize, m: usize) -> DocumentMatrix {
    DocumentMatrix::from_unit_columns(random_unit_columns(rng, d, m)).unwrap()
}

/// Orthonormal basis of the column space by modified Gram–Schmidt with one
/// re-orthogonalization pass. Columns whose residual falls below `tol`
/// relative to their original norm are skipped.
pub fn gram_schmidt(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for j in 0..a.ncols() {
        let orig: Vec<f64> = a.column(j).iter().copied().collect();
        let orig_norm = norm(&orig);
        let mut v = orig.clone();
        for _ in 0..2 {
            for b in &basis {
                let p = dot(&v, b);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= p * y;
                }
            }
        }
        let n = norm(&v);
        if orig_norm > 0.0 && n > tol * orig_norm {
            basis.push(v.iter().map(|x| x / n).collect());
        }
    }
    let d = a.nrows();
    DMatrix::from_fn(d, basis.len(), |i, j| basis[j][i])
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
/// eigenvalues descending and eigenvectors as matching columns.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut m = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].powi(2))
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let vals = order.iter().map(|&i| m[(i, i)]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (vals, vecs)
}

/// `A (AᵀA)^{-1/2}`: the orthonormal factor of the polar decomposition.
pub fn polar(a: &DMatrix<f64>) -> DMatrix<f64> {
    let ata = a.transpose() * a;
    let (vals, vecs) = jacobi_eigen(&ata);
    let k = vals.len();
    let inv_sqrt = DMatrix::from_fn(k, k, |i, j| if i == j { 1.0 / vals[i].max(1e-300).sqrt() } else { 0.0 });
    a * &vecs * inv_sqrt * vecs.transpose()
}

/// Best objective `Σ cos(P_k, Q_k)` found by alternating polar updates over
/// orthonormal `P ⊂ col(R)`, `Q ⊂ col(S)` with `k` columns, from
/// `restarts` random starts. Returns the objective of every restart.
pub fn ascent_objectives(
    r: &DMatrix<f64>,
    s: &DMatrix<f64>,
    k: usize,
    restarts: usize,
    iters: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let ur = gram_schmidt(r, 1e-10);
    let us = gram_schmidt(s, 1e-10);
    assert!(k <= ur.ncols() && k <= us.ncols());
    (0..restarts)
        .map(|_| {
            let b0 = gram_schmidt(&random_unit_columns(rng, us.ncols(), k), 1e-12);
            let mut q = &us * b0;
            let mut p = DMatrix::zeros(r.nrows(), k);
            for _ in 0..iters {
                p = &ur * polar(&(ur.transpose() * &q));
                q = &us * polar(&(us.transpose() * &p));
            }
            (p.transpose() * q).trace()
        })
        .collect()
}

/// Orthonormal column-space basis from the eigenvectors of `A Aᵀ`.
pub fn eigen_basis(a: &DMatrix<f64>) -> DMatrix<f64> {
    let (vals, vecs) = jacobi_eigen(&(a * a.transpose()));
    let max = vals[0].max(0.0);
    let rank = vals.iter().take_while(|&&x| x > 1e-14 * max).count();
    vecs.columns(0, rank).clone_owned()
}

pub struct DenseMatch {
    pub cosines: Vec<f64>,
    pub rel_reviewer: f64,
    pub rel_submission: f64,
    pub score: f64,
}

/// Common-topic match score through projectors: `P*` spans the top-`k`
/// eigenvectors of `Π_R Π_S Π_R`, whose eigenvalues are the squared
/// topic cosines.
pub fn dense_match(r: &DMatrix<f64>, s: &DMatrix<f64>, k: usize) -> DenseMatch {
    let ur = eigen_basis(r);
    let us = eigen_basis(s);
    let pr = &ur * ur.transpose();
    let ps = &us * us.transpose();
    let m = &pr * &ps * &pr;
    let (vals, vecs) = jacobi_eigen(&m);
    let k = k.min(ur.ncols()).min(us.ncols());
    let topics = vecs.columns(0, k).clone_owned();
    let rel = |doc: &DMatrix<f64>| -> f64 {
        let mut total = 0.0;
        for c in doc.column_iter() {
            for t in topics.column_iter() {
                total += t.dot(&c).powi(2);
            }
        }
        total / doc.ncols() as f64
    };
    let (a, b) = (rel(r), rel(s));
    DenseMatch {
        cosines: vals[..k].iter().map(|v| v.max(0.0).sqrt()).collect(),
        rel_reviewer: a,
        rel_submission: b,
        score: if a + b == 0.0 { 0.0 } else { 2.0 * a * b / (a + b) },
    }
}

/// Squared Frobenius residual `‖R − T Tᵀ R‖²` for the best rank-`k`
/// projection, from the eigenvalues of `R Rᵀ`.
pub fn best_rank_k_residual(r: &DMatrix<f64>, k: usize) -> f64 {
    let (vals, _) = jacobi_eigen(&(r * r.transpose()));
    vals.iter().skip(k).map(|v| v.max(0.0)).sum()
}
