use std::collections::HashMap;

use crate::error::Result;
use crate::exterior::{binomial, blades, interior_basis, sort_with_sign, KForm, LinMap, VectorN};
use crate::field::Matrix;

/// Rank and kernel of `v ↦ v ⌟ γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub kernel_basis: Vec<VectorN>,
    pub multisymplectic: bool,
}

/// Basis of the stabilizer algebra `{A ∈ gl(n) : A·γ = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub n: usize,
    pub k: usize,
    pub basis: Vec<LinMap>,
    pub dim: usize,
    pub all_traceless: bool,
}

pub fn insertion_rank(gamma: &KForm) -> Result<RankReport> {
    let n = gamma.dim();
    let k = gamma.degree();
    // rows: (k-1)-blades; columns: basis vectors. Kernel = vectors v with v ⌟ γ = 0.
    let rows: HashMap<Vec<usize>, usize> = blades(n, k.saturating_sub(1))
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect();
    let mut m = Matrix::zeros(rows.len(), n);
    if k > 0 {
        for j in 0..n {
            for (b, c) in interior_basis(j, gamma)?.terms() {
                m[(rows[b], j)] = c.clone();
            }
        }
    }
    let kernel_basis: Vec<VectorN> = if k == 0 {
        (0..n).map(|i| VectorN::basis(n, i)).collect()
    } else {
        m.kernel().into_iter().map(VectorN::new).collect()
    };
    let rank = n - kernel_basis.len();
    Ok(RankReport {
        rank,
        multisymplectic: kernel_basis.is_empty(),
        kernel_basis,
    })
}

/// Necessary condition for a stable `k`-form on `R^n`: `C(n,k) ≤ n²`.
pub fn stability_budget(n: usize, k: usize) -> bool {
    binomial(n, k) <= n * n
}

/// The linear map `A ↦ A·γ` as a `C(n,k) × n²` matrix. Column `a·n + b`
/// is the image of the elementary matrix `E_ab` (which sends `e_b` to
/// `e_a`).
pub fn infinitesimal_action_matrix(gamma: &KForm) -> Matrix {
    let n = gamma.dim();
    let k = gamma.degree();
    let rows: HashMap<Vec<usize>, usize> = blades(n, k).enumerate().map(|(i, b)| (b, i)).collect();
    let mut m = Matrix::zeros(rows.len(), n * n);
    for (blade, c) in gamma.terms() {
        for r in 0..blade.len() {
            let a = blade[r];
            for b in 0..n {
                let mut idx = blade.clone();
                idx[r] = b;
                if let Some(sign) = sort_with_sign(&mut idx) {
                    let entry = &mut m[(rows[&idx], a * n + b)];
                    if sign > 0 {
                        *entry += c;
                    } else {
                        *entry -= c;
                    }
                }
            }
        }
    }
    m
}

pub fn stabilizer(gamma: &KForm) -> Result<StabilizerReport> {
    let n = gamma.dim();
    let system = infinitesimal_action_matrix(gamma);
    let basis = system
        .kernel()
        .into_iter()
        .map(|v| LinMap::new(Matrix::from_fn(n, n, |a, b| v[a * n + b].clone())))
        .collect::<Result<Vec<_>>>()?;
    let all_traceless = basis.iter().all(|m| m.trace().is_zero());
    Ok(StabilizerReport {
        n,
        k: gamma.degree(),
        dim: basis.len(),
        basis,
        all_traceless,
    })
}

/// Orbit dimension `n² - dim g_γ` equals `C(n,k)`.
pub fn is_stable(gamma: &KForm) -> Result<bool> {
    let n = gamma.dim();
    let k = gamma.degree();
    if !stability_budget(n, k) {
        return Ok(false);
    }
    let rank = infinitesimal_action_matrix(gamma).rank();
    Ok(rank == binomial(n, k))
}
