use alloc::format;
use alloc::vec::Vec;

use super::standard::{build_standard, expected_pairings, family_spec, FamilySpec, Series};
use super::twist::{
    build_f, check_twist_compat, multiparametric_rmatrix, twist_r, twisted_expected,
    validate_twist, TwistSpec,
};
use crate::bmw::{Outcome, PairingPair, RMatrixSystem, Verification};
use crate::error::FamilyError;
use crate::field::Field;
use crate::linalg::FieldMatrix;
use crate::scalar::Scalar;

/// A family system ready for verification, with the closed-form data it is
/// compared against and the outcomes of its construction.
#[derive(Clone, Debug)]
pub struct FamilyBundle<F> {
    pub spec: FamilySpec,
    pub system: RMatrixSystem<F>,
    pub expected_pairing: PairingPair<F>,
    pub expected_x: FieldMatrix<F>,
    pub construction: Vec<Outcome<F>>,
}

/// Builds the standard system, optionally twisted, recording the twist
/// compatibility and closed-form agreement as outcomes.
pub fn prepare_family(
    series: Series,
    n: usize,
    twist: Option<&TwistSpec<Scalar>>,
) -> Result<FamilyBundle<Scalar>, FamilyError> {
    let spec = family_spec(series, n)?;
    let standard = build_standard(series, n)?;
    let Some(d) = twist else {
        return Ok(FamilyBundle {
            expected_pairing: expected_pairings(&spec),
            expected_x: FieldMatrix::identity(n),
            spec,
            system: standard,
            construction: Vec::new(),
        });
    };
    if d.dim() != n {
        return Err(FamilyError::BadDimension(format!(
            "twist has N = {}, family has N = {n}",
            d.dim()
        )));
    }
    validate_twist(d)?;
    let f = build_f(d);
    let compat = check_twist_compat(standard.r(), &f)?;
    let system = twist_r(&standard, &f)?;
    let closed = multiparametric_rmatrix(&spec, d)?;
    let closed_form = Outcome::from_equality(
        "twist.closed-form",
        "closed-form multiparametric R = (P F) R (F^-1 P)",
        &closed,
        system.r(),
    )?;
    let (expected_pairing, expected_x) = twisted_expected(&spec, d);
    Ok(FamilyBundle {
        spec,
        system,
        expected_pairing,
        expected_x,
        construction: alloc::vec![compat, closed_form],
    })
}

impl<F: Field> FamilyBundle<F> {
    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<FamilyBundle<G>, E> {
        Ok(FamilyBundle {
            spec: self.spec.clone(),
            system: self.system.try_map(&mut f)?,
            expected_pairing: self.expected_pairing.try_map(&mut f)?,
            expected_x: self.expected_x.try_map(&mut f)?,
            construction: self
                .construction
                .iter()
                .map(|o| o.try_map(&mut f))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// Comparisons of a verification run with the family's closed forms.
pub fn family_checks<F: Field>(bundle: &FamilyBundle<F>, v: &Verification<F>) -> Vec<Outcome<F>> {
    let mut out = bundle.construction.clone();
    let eq = "factored pairings equal the closed forms up to one gauge scalar";
    out.push(Outcome::flag(
        "pairing.closed-form",
        eq,
        v.pairing
            .as_ref()
            .is_some_and(|p| p.gauge_ratio(&bundle.expected_pairing).is_some()),
    ));
    let eq = "X equals its closed form";
    out.push(match &v.xy {
        Some(xy) => {
            let lhs = crate::linalg::TensorOperator::from_site_matrix(xy.x.clone());
            let rhs = crate::linalg::TensorOperator::from_site_matrix(bundle.expected_x.clone());
            Outcome::from_equality("xy.closed-form", eq, &lhs, &rhs).expect("same shape")
        }
        None => Outcome::flag("xy.closed-form", eq, false),
    });
    out
}
