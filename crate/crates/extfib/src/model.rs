use arithgrp::{stabilizer, FiniteMatrixGroup};
use conelab::{named_cone, Cone};
use exact_linalg::exterior::Wedge;
use exact_linalg::BigRational;

use crate::{action_from_glz, BigradedAlg, ExtError, FibAction};

/// The torus bundle over `E×E×E` attached to a genus-three cone, with the
/// action of the full stabilizer on its cohomology.
#[derive(Clone, Debug)]
pub struct FibreModel {
    pub name: String,
    pub cone: Cone,
    pub alg: BigradedAlg,
    /// Coordinate functionals dual to the fibre generators.
    pub chars: Vec<Vec<i64>>,
    pub group: FiniteMatrixGroup,
    /// One action per element of `group`, in enumeration order.
    pub actions: Vec<FibAction>,
    pub generator_actions: Vec<FibAction>,
}

// Coordinates on Sym²(Z³) are (m11, m22, m33, m12, m13, m23).
const E12: [i64; 6] = [0, 0, 0, 1, 0, 0];
const E13: [i64; 6] = [0, 0, 0, 0, 1, 0];
const E23: [i64; 6] = [0, 0, 0, 0, 0, 1];

fn neg(v: [i64; 6]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// Fibre generator names and characters: `Q_k` is the class of the loop
/// `|t_ij^{-1}| = 1` with `{i,j,k} = {1,2,3}`.
fn fibre_data(name: &str) -> Option<(Vec<&'static str>, Vec<Vec<i64>>)> {
    Some(match name {
        "sigma3" => (vec!["Q1", "Q2", "Q3"], vec![neg(E23), neg(E13), neg(E12)]),
        "sigmaI" => (vec!["Q2", "Q3"], vec![neg(E13), neg(E12)]),
        // R is dual to t13 t23 t33.
        "sigmaII" => (vec!["Q3", "R"], vec![neg(E12), vec![0, 0, 1, 0, 1, 1]]),
        "sigma5" => (vec!["Q3"], vec![neg(E12)]),
        "sigma6" => (vec![], vec![]),
        _ => return None,
    })
}

pub fn fibre_model_names() -> [&'static str; 5] {
    ["sigma3", "sigmaI", "sigmaII", "sigma5", "sigma6"]
}

pub fn fibre_model(name: &str) -> Result<FibreModel, ExtError> {
    let (fnames, chars) = fibre_data(name).ok_or_else(|| ExtError::UnknownCone(name.to_string()))?;
    let cone = named_cone(name).map_err(|e| ExtError::UnknownCone(e.to_string()))?;
    let group = stabilizer(&cone)?;
    model_with_group(name, cone, &fnames, chars, group)
}

pub fn model_with_group(
    name: &str,
    cone: Cone,
    fiber: &[&str],
    chars: Vec<Vec<i64>>,
    group: FiniteMatrixGroup,
) -> Result<FibreModel, ExtError> {
    let alg = BigradedAlg::new(2 * cone.genus(), fiber);
    let actions = group
        .elements()
        .iter()
        .map(|u| action_from_glz(u, &cone, &chars))
        .collect::<Result<Vec<_>, _>>()?;
    let generator_actions = group
        .generators()
        .iter()
        .map(|u| action_from_glz(u, &cone, &chars))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FibreModel { name: name.to_string(), cone, alg, chars, group, actions, generator_actions })
}

impl FibreModel {
    /// Group average `|G|^{-1} Σ g·w`.
    pub fn reynolds(&self, w: &Wedge) -> Wedge {
        reynolds(&self.actions, w)
    }

    pub fn is_invariant(&self, w: &Wedge) -> bool {
        self.generator_actions.iter().all(|a| &a.apply(w) == w)
    }
}

pub fn reynolds(actions: &[FibAction], w: &Wedge) -> Wedge {
    let mut acc = Wedge::zero();
    for a in actions {
        acc = acc.add(&a.apply(w));
    }
    if actions.is_empty() {
        return acc;
    }
    let n = BigRational::from_integer((actions.len() as i64).into());
    acc.scale(&n.recip())
}
