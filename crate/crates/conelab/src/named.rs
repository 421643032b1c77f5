use symquad::{central_e, second_perfect_vectors};

use crate::{Cone, ConeError};

fn v3(s: &[[i64; 3]]) -> Vec<Vec<i64>> {
    s.iter().map(|x| x.to_vec()).collect()
}

fn v4(s: &[[i64; 4]]) -> Vec<Vec<i64>> {
    s.iter().map(|x| x.to_vec()).collect()
}

const X1: [i64; 4] = [1, 0, 0, 0];
const X2: [i64; 4] = [0, 1, 0, 0];
const X3: [i64; 4] = [0, 0, 1, 0];
const X4: [i64; 4] = [0, 0, 0, 1];
const X12: [i64; 4] = [1, -1, 0, 0];
const X13: [i64; 4] = [1, 0, -1, 0];
const X14: [i64; 4] = [1, 0, 0, -1];
const X23: [i64; 4] = [0, 1, -1, 0];
const X24: [i64; 4] = [0, 1, 0, -1];
const X34: [i64; 4] = [0, 0, 1, -1];

fn generators(name: &str) -> Option<(usize, Vec<Vec<i64>>)> {
    let g3 = |s: &[[i64; 3]]| Some((3, v3(s)));
    let g4 = |s: &[[i64; 4]]| Some((4, v4(s)));
    match name {
        "sigma3" => g3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        "sigmaI" => g3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, -1]]),
        "sigmaII" => g3(&[[1, 0, 0], [0, 1, 0], [0, 1, -1], [1, 0, -1]]),
        "sigma5" => g3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, -1], [1, 0, -1]]),
        "sigma6" => g3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, -1], [1, 0, -1], [1, -1, 0]]),
        "Pi1" => g4(&[X1, X2, X3, X4, X12, X13, X14, X23, X24, X34]),
        "Pi2" => Some((4, second_perfect_vectors().iter().map(|x| x.to_vec()).collect())),
        // A facet of Pi1; every facet of the simplicial cone Pi1 is equivalent.
        "K5-1" => g4(&[X1, X2, X3, X4, X12, X13, X14, X23, X24]),
        "K33" => g4(&[X1, X2, X3, X4, X13, X14, X23, X24, [1, 1, -1, -1]]),
        "K5-1-1b" => g4(&[X1, X2, X3, X4, X13, X14, X23, X24]),
        "K5-2" => g4(&[X1, X2, X3, X4, X14, X23, X24, X34]),
        "K5-2-1b" => g4(&[X1, X2, X3, X14, X23, X24, X34]),
        "C2221" => g4(&[X1, X2, X3, X4, X14, X24, X34]),
        "C222" => g4(&[X1, X2, X3, X14, X24, X34]),
        "C321" => g4(&[X1, X2, X4, X14, X23, X34]),
        "C5" => g4(&[X1, X2, X14, X23, X34]),
        _ => None,
    }
}

/// Names of the built-in cones.
pub fn named_cone_names() -> Vec<&'static str> {
    vec![
        "sigma3", "sigmaI", "sigmaII", "sigma5", "sigma6", "Pi1", "Pi2", "K5-1", "K33", "K5-1-1b", "K5-2",
        "K5-2-1b", "C2221", "C222", "C321", "C5", "e",
    ]
}

/// A built-in cone by name. `e` is the ray of the central form.
pub fn named_cone(name: &str) -> Result<Cone, ConeError> {
    if name == "e" {
        return Cone::new(4, vec![central_e()], Some("e".into()));
    }
    let (g, vs) = generators(name).ok_or_else(|| ConeError::UnknownName(name.to_string()))?;
    Cone::from_vectors(g, &vs, name)
}

/// The cones `<F, e>` for every proper face `F` of the second perfect cone,
/// including `F = 0`, which gives the ray `<e>`. The central form is the
/// last generator of each cone.
pub fn star_of_e() -> Vec<Cone> {
    let pi2 = named_cone("Pi2").expect("built-in cone");
    let lattice = pi2.faces().expect("small cone");
    let full = *lattice.masks().last().expect("nonempty");
    let e = central_e();
    lattice
        .masks()
        .iter()
        .filter(|&&m| m != full)
        .map(|&m| {
            let mut gens = pi2.subcone(m).gens().to_vec();
            gens.push(e.clone());
            Cone::from_trusted(4, gens, None)
        })
        .collect()
}
