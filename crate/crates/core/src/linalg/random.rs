//! Random orthogonal matrices, prescribed-spectrum synthesis, and
//! orthonormal basis completion.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{axpy, dot, norm_l2, DenseMatrix};
use crate::error::{Error, Result};
use crate::seeding::{derive_seed, role};

/// Residual norm below which a completion candidate counts as dependent.
const COMPLETION_RESIDUAL_FLOOR: f64 = 1e-12;
const COMPLETION_ATTEMPTS: usize = 10;

fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// Orthonormalize `col` against the columns `0..k` of `basis` in place.
/// Two modified Gram-Schmidt passes keep the defect at machine level.
fn orthogonalize_against(basis: &DenseMatrix, k: usize, col: &mut [f64]) {
    for _ in 0..2 {
        for j in 0..k {
            let b = basis.col(j);
            let proj = dot(b, col);
            axpy(-proj, b, col);
        }
    }
}

/// Haar-distributed orthogonal matrix, built by Gram-Schmidt
/// orthonormalization of a standard Gaussian matrix. Deterministic for a
/// fixed seed.
pub fn random_orthogonal(d: usize, seed: u64) -> Result<DenseMatrix> {
    random_orthonormal_columns(d, d, seed)
}

/// First `k` columns of a Haar orthogonal `d×d` matrix (`k ≤ d`).
pub fn random_orthonormal_columns(d: usize, k: usize, seed: u64) -> Result<DenseMatrix> {
    if d == 0 || k == 0 || k > d {
        return Err(Error::DimMismatch { expected: d, actual: k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = DenseMatrix::zeros(d, k);
    for j in 0..k {
        let mut attempts = 0;
        loop {
            let mut v = gaussian_vec(&mut rng, d);
            orthogonalize_against(&q, j, &mut v);
            let n = norm_l2(&v);
            if n > COMPLETION_RESIDUAL_FLOOR {
                for x in v.iter_mut() {
                    *x /= n;
                }
                q.col_mut(j).copy_from_slice(&v);
                break;
            }
            attempts += 1;
            if attempts >= COMPLETION_ATTEMPTS {
                return Err(Error::RankDeficient);
            }
        }
    }
    Ok(q)
}

/// Synthesize a `rows×cols` matrix with prescribed singular values:
/// `A = Q₁ diag(σ) Q₂ᵀ` for Haar orthogonal factors.
pub fn matrix_with_spectrum(
    rows: usize,
    cols: usize,
    singular_values: &[f64],
    seed: u64,
) -> Result<DenseMatrix> {
    let k = rows.min(cols);
    if singular_values.len() != k {
        return Err(Error::DimMismatch { expected: k, actual: singular_values.len() });
    }
    if singular_values.iter().any(|s| *s < 0.0 || !s.is_finite()) {
        return Err(Error::BadSpectrum);
    }
    let left = random_orthonormal_columns(rows, k, derive_seed(seed, role::ORTHO_LEFT, 0))?;
    let right = random_orthonormal_columns(cols, k, derive_seed(seed, role::ORTHO_RIGHT, 0))?;
    // A = Σ_m σ_m · left_m · right_mᵀ, accumulated column-wise.
    let mut a = DenseMatrix::zeros(rows, cols);
    for m in 0..k {
        let s = singular_values[m];
        if s == 0.0 {
            continue;
        }
        let lm = left.col(m).to_vec();
        for j in 0..cols {
            let w = s * right.get(j, m);
            axpy(w, &lm, a.col_mut(j));
        }
    }
    Ok(a)
}

/// Complete a `d×k` matrix with orthonormal columns to a full `d×d`
/// orthonormal basis. The first `k` columns of the output equal `partial`
/// bit-for-bit; the rest come from Gaussian vectors orthonormalized against
/// the running basis.
pub fn complete_orthobasis(partial: &DenseMatrix, seed: u64) -> Result<DenseMatrix> {
    let d = partial.rows();
    let k = partial.cols();
    if k > d {
        return Err(Error::DimMismatch { expected: d, actual: k });
    }
    let defect = partial.orthonormality_defect();
    if defect > 1e-8 {
        return Err(Error::NotOrthonormal(defect));
    }
    if k == d {
        return Ok(partial.clone());
    }
    let mut out = DenseMatrix::zeros(d, d);
    for j in 0..k {
        out.col_mut(j).copy_from_slice(partial.col(j));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in k..d {
        let mut attempts = 0;
        loop {
            let mut v = gaussian_vec(&mut rng, d);
            orthogonalize_against(&out, j, &mut v);
            let n = norm_l2(&v);
            if n > COMPLETION_RESIDUAL_FLOOR {
                for x in v.iter_mut() {
                    *x /= n;
                }
                out.col_mut(j).copy_from_slice(&v);
                break;
            }
            attempts += 1;
            if attempts >= COMPLETION_ATTEMPTS {
                return Err(Error::RankDeficient);
            }
        }
    }
    Ok(out)
}
