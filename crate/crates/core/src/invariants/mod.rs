//! Invariants of a 3-form: rank, stabilizer, the products and bilinear
//! forms it induces, and the Lie / Malcev structures they define.

mod algebra;
mod products;
mod rank;

pub use algebra::{
    jacobi_defect, malcev_defect, render_vector, DefectReport, StructureConstants, Symmetry,
};
pub use products::{
    bilinear7, compatibility_defect, eval_basis, hitchin_endo, is_nondegenerate, s_mult,
    trace_form, trace_form_by_constants, trace_form_by_operators, trace_form_of, EndoReport,
    SymBilinearReport,
};
pub use rank::{
    infinitesimal_action_matrix, insertion_rank, is_stable, stability_budget, stabilizer,
    RankReport, StabilizerReport,
};

use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::field::Matrix;

/// Solves `G x = c` for every pair `i < j` with `c_z = φ(e_i, e_j, e_z)`.
fn dual_bracket(phi: &KForm, gram: &Matrix, what: &'static str) -> Result<StructureConstants> {
    let n = phi.dim();
    let inv = gram
        .inverse()
        .map_err(|_| Error::NondegenerateRequired { what })?;
    let mut products = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j <= i {
                        return Ok(Vec::new());
                    }
                    let c: Vec<_> = (0..n).map(|z| eval_basis(phi, i, j, z)).collect();
                    inv.mul_vec(&c)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureConstants::from_fn(
        n,
        Symmetry::Anticommutative,
        |i, j| std::mem::take(&mut products[i][j]),
    ))
}

/// `⟨[X,Y], Z⟩ = φ(X,Y,Z)` against the trace form.
pub fn lie_bracket(phi: &KForm) -> Result<StructureConstants> {
    let gram = trace_form(phi)?.gram;
    dual_bracket(phi, &gram, "lie bracket")
}

/// `⟨x∘y, z⟩ = φ(x,y,z)` against the form from [`bilinear7`].
pub fn malcev_product(phi: &KForm) -> Result<StructureConstants> {
    let gram = bilinear7(phi)?.gram;
    dual_bracket(phi, &gram, "malcev product")
}
