//! Type determination for stable 3-forms on `R^6`, `R^7`, `R^8`, the
//! bundled registry of normal forms, and seeded random sampling.

mod registry;
mod sampling;

pub use registry::{registry_load, Registry, RegistryEntry};
pub use sampling::{
    orbit_sample, random_form, search_nondegenerate, search_orbit, SearchHit, SearchReport,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exterior::{binomial, hodge_star, KForm};
use crate::field::Inertia;
use crate::invariants::{
    bilinear7, hitchin_endo, infinitesimal_action_matrix, insertion_rank, stability_budget,
    trace_form,
};

/// The seven stable orbit types, plus a label for everything else.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormType {
    G1_RealSL3xSL3,
    G2_ComplexSL3C,
    W1_G2,
    W2_G2tilde,
    P1_SL3R,
    P2_PSU12,
    P3_PSU3,
    NotStable,
}

impl FormType {
    pub const ALL: [FormType; 8] = [
        FormType::G1_RealSL3xSL3,
        FormType::G2_ComplexSL3C,
        FormType::W1_G2,
        FormType::W2_G2tilde,
        FormType::P1_SL3R,
        FormType::P2_PSU12,
        FormType::P3_PSU3,
        FormType::NotStable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormType::G1_RealSL3xSL3 => "G1_RealSL3xSL3",
            FormType::G2_ComplexSL3C => "G2_ComplexSL3C",
            FormType::W1_G2 => "W1_G2",
            FormType::W2_G2tilde => "W2_G2tilde",
            FormType::P1_SL3R => "P1_SL3R",
            FormType::P2_PSU12 => "P2_PSU12",
            FormType::P3_PSU3 => "P3_PSU3",
            FormType::NotStable => "NotStable",
        }
    }

    /// Dimension of the space on which the type lives.
    pub fn dim(self) -> Option<usize> {
        match self {
            FormType::G1_RealSL3xSL3 | FormType::G2_ComplexSL3C => Some(6),
            FormType::W1_G2 | FormType::W2_G2tilde => Some(7),
            FormType::P1_SL3R | FormType::P2_PSU12 | FormType::P3_PSU3 => Some(8),
            FormType::NotStable => None,
        }
    }

    /// Dimension of the stabilizer algebra of a representative.
    pub fn stabilizer_dim(self) -> Option<usize> {
        let n = self.dim()?;
        Some(n * n - binomial(n, 3))
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Registry(format!("unknown form type '{s}'")))
    }
}

/// The scale- and orbit-invariant datum that separates types within a
/// dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Discriminant {
    /// Sign of `λ` where `K² = λ·Id` (dimension 6).
    LambdaSign(i8),
    /// Signature of the bilinear form in dimension 7. It changes sign with
    /// orientation, so it is stored with `positive ≥ negative`.
    Signature7(Inertia),
    /// Signature of the trace form in dimension 8. `flipped` records that
    /// the computed signature had more negative than positive directions
    /// and was normalized by an overall sign.
    Signature8 {
        inertia: Inertia,
        flipped: bool,
    },
    None,
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discriminant::LambdaSign(s) => write!(f, "lambda_sign {s:+}"),
            Discriminant::Signature7(i) => {
                let (lo, hi) = (i.negative, i.positive);
                write!(f, "signature7 {{{lo},{hi}}}")
            }
            Discriminant::Signature8 { inertia, flipped } => {
                write!(f, "signature8 ({},{})", inertia.positive, inertia.negative)?;
                if *flipped {
                    f.write_str(" [sign-normalized]")?;
                }
                Ok(())
            }
            Discriminant::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub n: usize,
    pub k: usize,
    /// The input had degree `n − 3` and was Hodge-dualized before the
    /// discriminant was computed.
    pub dualized: bool,
    pub rank: usize,
    pub multisymplectic: bool,
    pub stabilizer_dim: usize,
    pub stable: bool,
    pub discriminant: Discriminant,
    pub form_type: FormType,
}

/// Rank, stabilizer dimension, stability, and — for stable forms in
/// dimensions 6, 7, 8 — the discriminant and orbit type.
pub fn classify(form: &KForm) -> Result<ClassificationReport> {
    let n = form.dim();
    let k = form.degree();
    let dualized = k != 3 && k + 3 == n;
    if k != 3 && !dualized {
        return Err(Error::InvalidDegree {
            degree: k,
            reason: format!("classification needs degree 3 or {}", n.saturating_sub(3)),
        });
    }
    let rank = insertion_rank(form)?;
    let action_rank = infinitesimal_action_matrix(form).rank();
    let stabilizer_dim = n * n - action_rank;
    let stable = stability_budget(n, k) && action_rank == binomial(n, k);

    let (discriminant, form_type) = if stable && (6..=8).contains(&n) {
        let three_form = if dualized {
            hodge_star(form)
        } else {
            form.clone()
        };
        discriminate(&three_form)?
    } else {
        (Discriminant::None, FormType::NotStable)
    };
    Ok(ClassificationReport {
        n,
        k,
        dualized,
        rank: rank.rank,
        multisymplectic: rank.multisymplectic,
        stabilizer_dim,
        stable,
        discriminant,
        form_type,
    })
}

/// Discriminant of a stable 3-form on `R^6`, `R^7` or `R^8`.
fn discriminate(form: &KForm) -> Result<(Discriminant, FormType)> {
    Ok(match form.dim() {
        6 => {
            let lambda = hitchin_endo(form)?.lambda_sq;
            let sign = lambda.map_or(0, |l| l.signum() as i8);
            let ty = match sign {
                1 => FormType::G1_RealSL3xSL3,
                -1 => FormType::G2_ComplexSL3C,
                _ => FormType::NotStable,
            };
            (Discriminant::LambdaSign(sign), ty)
        }
        7 => {
            let mut inertia = bilinear7(form)?.gram.signature()?;
            if inertia.negative > inertia.positive {
                inertia = inertia.flipped();
            }
            let ty = match (inertia.positive, inertia.negative, inertia.zero) {
                (7, 0, 0) => FormType::W1_G2,
                (4, 3, 0) => FormType::W2_G2tilde,
                _ => FormType::NotStable,
            };
            (Discriminant::Signature7(inertia), ty)
        }
        8 => {
            let mut inertia = trace_form(form)?.gram.signature()?;
            let flipped = inertia.negative > inertia.positive;
            if flipped {
                inertia = inertia.flipped();
            }
            let ty = match (inertia.positive, inertia.negative, inertia.zero) {
                (5, 3, 0) => FormType::P1_SL3R,
                (4, 4, 0) => FormType::P2_PSU12,
                (8, 0, 0) => FormType::P3_PSU3,
                _ => FormType::NotStable,
            };
            (Discriminant::Signature8 { inertia, flipped }, ty)
        }
        _ => (Discriminant::None, FormType::NotStable),
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
    fn form_type_round_trips() {
        for t in FormType::ALL {
            assert_eq!(t.as_str().parse::<FormType>().unwrap(), t);
        }
        assert!("P4".parse::<FormType>().is_err());
        assert_eq!(FormType::W1_G2.stabilizer_dim(), Some(14));
        assert_eq!(FormType::P3_PSU3.stabilizer_dim(), Some(8));
    }

    #[test]
    fn gamma1_is_split_type() {
        let r = classify(&form("e123 + e456", 6)).unwrap();
        assert_eq!(r.form_type, FormType::G1_RealSL3xSL3);
        assert_eq!(r.discriminant, Discriminant::LambdaSign(1));
        assert_eq!(r.stabilizer_dim, 16);
    }

    #[test]
    fn gamma2_is_complex_type() {
        let r = classify(&form("e135 - e146 - e236 - e245", 6)).unwrap();
        assert_eq!(r.form_type, FormType::G2_ComplexSL3C);
        assert_eq!(r.stabilizer_dim, 16);
    }

    #[test]
    fn top_form_on_r3_is_stable_but_untyped() {
        let r = classify(&form("e123", 3)).unwrap();
        assert!(r.stable);
        assert_eq!(r.stabilizer_dim, 8);
        assert_eq!(r.form_type, FormType::NotStable);
        assert_eq!(r.discriminant, Discriminant::None);
    }

    #[test]
    fn dual_four_form_in_dim_7() {
        let omega = form("e123 + e145 - e167 + e246 + e257 + e347 - e356", 7);
        let direct = classify(&omega).unwrap();
        let dual = classify(&hodge_star(&omega)).unwrap();
        assert!(dual.dualized);
        assert_eq!(dual.k, 4);
        assert_eq!(dual.form_type, direct.form_type);
        assert_eq!(dual.stabilizer_dim, direct.stabilizer_dim);
    }

    #[test]
    fn wrong_degree_rejected() {
        assert!(matches!(
            classify(&form("e12", 6)),
            Err(Error::InvalidDegree { degree: 2, .. })
        ));
    }

    #[test]
    fn discriminant_display() {
        let d = Discriminant::Signature7(Inertia::new(4, 3, 0));
        assert_eq!(d.to_string(), "signature7 {3,4}");
        assert_eq!(Discriminant::LambdaSign(-1).to_string(), "lambda_sign -1");
    }
}
