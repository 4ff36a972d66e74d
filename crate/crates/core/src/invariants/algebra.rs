//! Bilinear products on `R^n` given by structure constants, and the
//! identity scans (Jacobi, Malcev) over basis tuples.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Commutative,
    Anticommutative,
    None,
}

/// `e_i e_j = Σ_k A_{ij}^k e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    data: Vec<Scalar>,
    symmetry: Symmetry,
}

impl StructureConstants {
    /// Builds from `products[i][j]` = coefficient vector of `e_i e_j`,
    /// checking the declared symmetry.
    pub fn new(products: Vec<Vec<Vec<Scalar>>>, symmetry: Symmetry) -> Result<Self> {
        let n = products.len();
        let mut data = Vec::with_capacity(n * n * n);
        for row in products {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for v in row {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: v.len(),
                    });
                }
                data.extend(v);
            }
        }
        let sc = StructureConstants { n, data, symmetry };
        sc.check_symmetry()?;
        Ok(sc)
    }

    pub(crate) fn from_fn(
        n: usize,
        symmetry: Symmetry,
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let mut data = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let base = (i * n + j) * n;
                match symmetry {
                    Symmetry::Commutative if j < i => {
                        for k in 0..n {
                            data[base + k] = data[(j * n + i) * n + k].clone();
                        }
                    }
                    Symmetry::Anticommutative if j < i => {
                        for k in 0..n {
                            data[base + k] = -&data[(j * n + i) * n + k];
                        }
                    }
                    Symmetry::Anticommutative if j == i => {}
                    _ => {
                        for (k, x) in f(i, j).into_iter().enumerate() {
                            data[base + k] = x;
                        }
                    }
                }
            }
        }
        StructureConstants { n, data, symmetry }
    }

    fn check_symmetry(&self) -> Result<()> {
        let sign = match self.symmetry {
            Symmetry::None => return Ok(()),
            Symmetry::Commutative => Scalar::one(),
            Symmetry::Anticommutative => Scalar::from_int(-1),
        };
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if *self.get(i, j, k) != &sign * self.get(j, i, k) {
                        return Err(Error::CrossCheck(format!(
                            "declared {:?} but A[{}][{}] != ±A[{}][{}]",
                            self.symmetry,
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// `A_{ij}^k`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.n + j) * self.n + k]
    }

    /// Coefficients of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.n + j) * self.n;
        &self.data[base..base + self.n]
    }

    /// Bilinear extension to arbitrary vectors.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (k, a) in self.basis_product(i, j).iter().enumerate() {
                    if !a.is_zero() {
                        out[k] += &(&c * a);
                    }
                }
            }
        }
        out
    }

    /// Left multiplication `L_i : w ↦ e_i w`; entry `(k, j)` is `A_{ij}^k`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.n, self.n, |k, j| self.get(i, j, k).clone())
    }

    /// Nested `[i][j] -> coefficients` view.
    pub fn to_nested(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.basis_product(i, j).to_vec())
                    .collect()
            })
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> StructureConstants {
        StructureConstants {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
            symmetry: self.symmetry,
        }
    }
}

impl std::fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "StructureConstants(n={}, {:?})", self.n, self.symmetry)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| render_vector(self.basis_product(i, j)))
                .collect();
            writeln!(f, "  {}", row.join(" | "))?;
        }
        Ok(())
    }
}

/// `3e2 - 3e3`, `-e1`, `1/6*e4`, `0`, with 1-based basis labels.
pub fn render_vector(v: &[Scalar]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative() && (c.is_rational() || c.rational_part().is_zero());
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            let integral = mag.is_rational() && mag.rational_part().is_integer();
            if integral {
                out.push_str(&mag.to_string());
            } else if mag.is_rational() || mag.rational_part().is_zero() {
                out.push_str(&format!("{mag}*"));
            } else {
                out.push_str(&format!("({mag})*"));
            }
        }
        out.push_str(&format!("e{}", k + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Result of scanning an identity over basis tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    /// Largest absolute component of any violation vector.
    pub max_violation: Scalar,
    /// Violating basis tuples (0-based), sorted.
    pub witnesses: Vec<Vec<usize>>,
}

impl DefectReport {
    pub fn is_zero(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn witness(&self) -> Option<&[usize]> {
        self.witnesses.first().map(Vec::as_slice)
    }

    fn collect(mut found: Vec<(Vec<usize>, Scalar)>) -> DefectReport {
        found.sort_by(|a, b| a.0.cmp(&b.0));
        let max_violation = found
            .iter()
            .map(|(_, m)| m.clone())
            .max()
            .unwrap_or_default();
        DefectReport {
            max_violation,
            witnesses: found.into_iter().map(|(t, _)| t).collect(),
        }
    }
}

fn max_abs(v: &[Scalar]) -> Option<Scalar> {
    v.iter().filter(|x| !x.is_zero()).map(Scalar::abs).max()
}

fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b;
        }
    }
}

fn sub_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a -= b;
        }
    }
}

fn require_anticommutative(sc: &StructureConstants) -> Result<()> {
    if sc.symmetry() != Symmetry::Anticommutative {
        return Err(Error::CrossCheck(
            "identity scan requires anticommutative structure constants".into(),
        ));
    }
    Ok(())
}

/// `J(e_i,e_j,e_k) = [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`
/// over all `i < j < k` (J is alternating, so this covers every triple).
pub fn jacobi_defect(sc: &StructureConstants) -> Result<DefectReport> {
    require_anticommutative(sc)?;
    let n = sc.dim();
    let e = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    let found: Vec<(Vec<usize>, Scalar)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let e = &e;
            (i + 1..n).flat_map(move |j| {
                (j + 1..n).filter_map(move |k| {
                    let mut acc = sc.product(sc.basis_product(i, j), &e(k));
                    add_into(&mut acc, &sc.product(sc.basis_product(j, k), &e(i)));
                    add_into(&mut acc, &sc.product(sc.basis_product(k, i), &e(j)));
                    max_abs(&acc).map(|m| (vec![i, j, k], m))
                })
            })
        })
        .collect();
    Ok(DefectReport::collect(found))
}

/// Malcev identity `(xy)(xz) = ((xy)z)x + ((yz)x)x + ((zx)x)y`.
///
/// The identity is quadratic in `x`, so it is checked in polarized form
/// `M(x1, x2, y, z)` on all basis quadruples with `x1 ≤ x2`; in
/// characteristic zero this is equivalent. Witnesses are `[x1, x2, y, z]`.
pub fn malcev_defect(sc: &StructureConstants) -> Result<DefectReport> {
    require_anticommutative(sc)?;
    let n = sc.dim();
    let found: Vec<(Vec<usize>, Scalar)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            (a..n).flat_map(move |b| {
                (0..n).flat_map(move |y| {
                    (0..n).filter_map(move |z| {
                        let v = malcev_polarized(sc, a, b, y, z);
                        max_abs(&v).map(|m| (vec![a, b, y, z], m))
                    })
                })
            })
        })
        .collect();
    Ok(DefectReport::collect(found))
}

fn malcev_polarized(
    sc: &StructureConstants,
    x1: usize,
    x2: usize,
    y: usize,
    z: usize,
) -> Vec<Scalar> {
    let n = sc.dim();
    let e = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    let p = |i: usize, j: usize| sc.basis_product(i, j).to_vec();
    let m = |u: &[Scalar], v: &[Scalar]| sc.product(u, v);

    let x1y = p(x1, y);
    let x2y = p(x2, y);
    let yz = p(y, z);
    let zx1 = p(z, x1);
    let zx2 = p(z, x2);

    let mut acc = m(&x1y, &p(x2, z));
    add_into(&mut acc, &m(&x2y, &p(x1, z)));
    sub_into(&mut acc, &m(&m(&x1y, &e(z)), &e(x2)));
    sub_into(&mut acc, &m(&m(&x2y, &e(z)), &e(x1)));
    sub_into(&mut acc, &m(&m(&yz, &e(x1)), &e(x2)));
    sub_into(&mut acc, &m(&m(&yz, &e(x2)), &e(x1)));
    sub_into(&mut acc, &m(&m(&zx1, &e(x2)), &e(y)));
    sub_into(&mut acc, &m(&m(&zx2, &e(x1)), &e(y)));
    acc
}
