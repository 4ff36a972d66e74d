//! Constructions that depend on `n mod 3`:
//!
//! * `n = 3m + 2`: commutative product `S` via
//!   `(vw) ⌟ θ = (v⌟ω) ∧ (w⌟ω) ∧ ω^{m-1}` and its trace form `B`;
//! * `n = 3m + 1`: symmetric form `⟨v,w⟩ θ = (v⌟φ) ∧ (w⌟φ) ∧ φ^{m-1}`;
//! * `n = 3m`: endomorphism `K(v) ⌟ θ = (v⌟γ) ∧ γ^{m-1}`.
//!
//! All reductions use the fixed volume form `θ = e^1 ∧ … ∧ e^n`; the
//! `grade` fields record the power of `θ*` each result carries.

use crate::error::{Error, Result};
use crate::exterior::{
    interior_basis, sort_with_sign, vector_from_coform, wedge, wedge_power, KForm, LinMap, TopFrame,
};
use crate::field::{Matrix, Scalar};

use super::algebra::{StructureConstants, Symmetry};

/// A symmetric bilinear form with its weight in powers of `θ*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymBilinearReport {
    pub n: usize,
    pub gram: Matrix,
    pub grade: u32,
}

/// `K` together with `λ` when `K² = λ·Id` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoReport {
    pub n: usize,
    pub k: LinMap,
    pub grade: u32,
    pub lambda_sq: Option<Scalar>,
}

fn require_three_form(form: &KForm) -> Result<()> {
    if form.degree() != 3 {
        return Err(Error::InvalidDegree {
            degree: form.degree(),
            reason: "expected a 3-form".into(),
        });
    }
    Ok(())
}

/// Checks `n ≡ residue (mod 3)` and `n ≥ min`; returns `m` with
/// `n = 3m + residue`.
fn residue_class(n: usize, residue: usize, min: usize) -> Result<usize> {
    if n % 3 != residue || n < min {
        return Err(Error::WrongResidue {
            n,
            reason: format!("requires n ≡ {residue} (mod 3) and n ≥ {min}"),
        });
    }
    Ok((n - residue) / 3)
}

/// `(e_i ⌟ ω)` for every basis vector.
fn contractions(form: &KForm) -> Result<Vec<KForm>> {
    (0..form.dim()).map(|i| interior_basis(i, form)).collect()
}

/// `φ(e_i, e_j, e_k)`.
pub fn eval_basis(form: &KForm, i: usize, j: usize, k: usize) -> Scalar {
    let mut idx = [i, j, k];
    match sort_with_sign(&mut idx) {
        Some(sign) => {
            let c = form.coeff(&idx);
            if sign > 0 {
                c
            } else {
                -c
            }
        }
        None => Scalar::zero(),
    }
}

/// The reduced commutative product for `n ≡ 2 (mod 3)`, `n ≥ 5`.
pub fn s_mult(omega: &KForm) -> Result<StructureConstants> {
    require_three_form(omega)?;
    let n = omega.dim();
    let m = residue_class(n, 2, 5)?;
    let frame = TopFrame::new(n);
    let power = wedge_power(omega, m - 1)?;
    let c = contractions(omega)?;
    // (e_i⌟ω) ∧ ω^{m-1}, shared by every product in row i
    let partial: Vec<KForm> = c
        .iter()
        .map(|ci| wedge(ci, &power))
        .collect::<Result<_>>()?;
    let mut products = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            // 2-forms are central, so c_i ∧ c_j ∧ P = c_j ∧ (c_i ∧ P)
            let top = wedge(&c[j], &partial[i])?;
            products[i][j] = vector_from_coform(&top, &frame)?.into_comps();
        }
    }
    Ok(StructureConstants::from_fn(
        n,
        Symmetry::Commutative,
        |i, j| std::mem::take(&mut products[i][j]),
    ))
}

/// `B(e_l, e_m) = Tr(L_l ∘ L_m)`, computed from composed multiplication
/// operators.
pub fn trace_form_by_operators(sc: &StructureConstants) -> Result<Matrix> {
    let n = sc.dim();
    let ops: Vec<Matrix> = (0..n).map(|i| sc.left_mult(i)).collect();
    let mut gram = Matrix::zeros(n, n);
    for l in 0..n {
        for m in l..n {
            let t = ops[l].mul(&ops[m])?.trace();
            gram[(m, l)] = t.clone();
            gram[(l, m)] = t;
        }
    }
    Ok(gram)
}

/// `B(e_l, e_m) = Σ_{n,p} A_{lp}^n A_{mn}^p`, straight from the structure
/// constants.
pub fn trace_form_by_constants(sc: &StructureConstants) -> Matrix {
    let n = sc.dim();
    Matrix::from_fn(n, n, |l, m| {
        let mut acc = Scalar::zero();
        for q in 0..n {
            for p in 0..n {
                let a = sc.get(l, p, q);
                if a.is_zero() {
                    continue;
                }
                let b = sc.get(m, q, p);
                if !b.is_zero() {
                    acc += &(a * b);
                }
            }
        }
        acc
    })
}

/// Trace form of a commutative product; both routes must agree.
pub fn trace_form_of(sc: &StructureConstants) -> Result<Matrix> {
    let by_ops = trace_form_by_operators(sc)?;
    let by_constants = trace_form_by_constants(sc);
    if by_ops != by_constants {
        return Err(Error::CrossCheck(
            "trace of composed operators disagrees with the structure-constant sum".into(),
        ));
    }
    Ok(by_ops)
}

pub fn trace_form(omega: &KForm) -> Result<SymBilinearReport> {
    let sc = s_mult(omega)?;
    Ok(SymBilinearReport {
        n: omega.dim(),
        gram: trace_form_of(&sc)?,
        grade: 2,
    })
}

pub fn is_nondegenerate(omega: &KForm) -> Result<bool> {
    Ok(!trace_form(omega)?.gram.det()?.is_zero())
}

/// Basis triples `(a, b, c)` where `B(ab, c) ≠ B(a, bc)`.
pub fn compatibility_defect(sc: &StructureConstants, gram: &Matrix) -> Vec<[usize; 3]> {
    let n = sc.dim();
    let pair = |v: &[Scalar], w: usize| -> Scalar {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| x * &gram[(k, w)])
            .sum()
    };
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if pair(sc.basis_product(a, b), c) != pair(sc.basis_product(b, c), a) {
                    bad.push([a, b, c]);
                }
            }
        }
    }
    bad
}

/// The θ-reduced symmetric form for `n ≡ 1 (mod 3)`, `n ≥ 4`.
pub fn bilinear7(phi: &KForm) -> Result<SymBilinearReport> {
    require_three_form(phi)?;
    let n = phi.dim();
    let m = residue_class(n, 1, 4)?;
    let power = wedge_power(phi, m - 1)?;
    let c = contractions(phi)?;
    let partial: Vec<KForm> = c
        .iter()
        .map(|ci| wedge(ci, &power))
        .collect::<Result<_>>()?;
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = wedge(&c[j], &partial[i])?.top_coefficient();
            gram[(j, i)] = v.clone();
            gram[(i, j)] = v;
        }
    }
    Ok(SymBilinearReport { n, gram, grade: 1 })
}

/// The θ-reduced endomorphism for `n ≡ 0 (mod 3)`, `n ≥ 3`.
pub fn hitchin_endo(gamma: &KForm) -> Result<EndoReport> {
    require_three_form(gamma)?;
    let n = gamma.dim();
    let m = residue_class(n, 0, 3)?;
    let frame = TopFrame::new(n);
    let power = wedge_power(gamma, m - 1)?;
    let mut k = Matrix::zeros(n, n);
    for j in 0..n {
        let eta = wedge(&interior_basis(j, gamma)?, &power)?;
        let col = vector_from_coform(&eta, &frame)?;
        for i in 0..n {
            k[(i, j)] = col[i].clone();
        }
    }
    let k2 = k.mul(&k)?;
    let candidate = k2[(0, 0)].clone();
    let lambda_sq = (k2 == Matrix::identity(n).scale(&candidate)).then_some(candidate);
    Ok(EndoReport {
        n,
        k: LinMap::new(k)?,
        grade: 1,
        lambda_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_form;
    use crate::field::FieldDesc;

    fn form(s: &str, n: usize) -> KForm {
        parse_form(s, Some(n), FieldDesc::Rationals).unwrap()
    }

    #[test]
    fn residue_checks() {
        assert!(matches!(
            s_mult(&form("e123", 7)),
            Err(Error::WrongResidue { n: 7, .. })
        ));
        assert!(bilinear7(&form("e123", 8)).is_err());
        assert!(hitchin_endo(&form("e123", 7)).is_err());
        assert!(s_mult(&form("e12", 8)).is_err());
    }

    #[test]
    fn decomposable_is_degenerate() {
        assert!(!is_nondegenerate(&form("e123", 8)).unwrap());
        assert!(!is_nondegenerate(&form("e123 + e456", 8)).unwrap());
    }

    #[test]
    fn decomposable_bilinear7_is_singular() {
        let g = bilinear7(&form("e123", 7)).unwrap().gram;
        assert!(g.det().unwrap().is_zero());
        // e7 pairs to zero with everything
        assert!((0..7).all(|j| g[(6, j)].is_zero()));
    }

    #[test]
    fn decomposable_hitchin_is_nilpotent() {
        let r = hitchin_endo(&form("e123", 6)).unwrap();
        assert_eq!(r.lambda_sq, Some(Scalar::zero()));
    }

    #[test]
    fn eval_basis_signs() {
        let f = form("e124", 4);
        assert_eq!(eval_basis(&f, 0, 1, 3), Scalar::one());
        assert_eq!(eval_basis(&f, 1, 0, 3), Scalar::from_int(-1));
        assert_eq!(eval_basis(&f, 3, 0, 1), Scalar::one());
        assert!(eval_basis(&f, 0, 0, 3).is_zero());
    }
}
