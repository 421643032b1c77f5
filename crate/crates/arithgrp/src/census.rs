use std::collections::BTreeMap;

use conelab::Cone;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::group::FiniteMatrixGroup;
use crate::isometry::{equivalence_small, fingerprint, generator_permutation};
use crate::ArithError;

/// An orbit of generator subsets under a group stabilizing the ambient cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOrbit {
    /// Numerically smallest mask in the orbit.
    pub mask: u32,
    pub size: usize,
}

fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0;
    for (i, &p) in perm.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out |= 1 << p;
        }
    }
    out
}

/// Orbits of the given generator masks of `c` under `group`, which must
/// permute the generators of `c`.
pub fn local_orbits(
    c: &Cone,
    group: &FiniteMatrixGroup,
    masks: &[u32],
) -> Result<Vec<LocalOrbit>, ArithError> {
    let perms: Vec<Vec<usize>> = group
        .small_elements()
        .iter()
        .map(|u| generator_permutation(u, c).ok_or(ArithError::Genus))
        .collect::<Result<_, _>>()?;
    let mut orbits: BTreeMap<u32, usize> = BTreeMap::new();
    for &m in masks {
        let canon = perms.iter().map(|p| permute_mask(m, p)).min().unwrap_or(m);
        *orbits.entry(canon).or_default() += 1;
    }
    Ok(orbits.into_iter().map(|(mask, size)| LocalOrbit { mask, size }).collect())
}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// Member with the lexicographically smallest sorted coordinate list.
    pub rep: Cone,
    /// Indices into the classified input.
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub orbits: Vec<Orbit>,
}

impl Census {
    /// Orbit counts for dimensions `1..=max_dim`.
    pub fn counts_by_dim(&self, max_dim: usize) -> Vec<usize> {
        let mut v = vec![0; max_dim];
        for o in &self.orbits {
            let d = o.dim();
            if (1..=max_dim).contains(&d) {
                v[d - 1] += 1;
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// Partitions `cones` into GL(g,Z)-orbits.
pub fn classify(cones: &[Cone]) -> Result<Census, ArithError> {
    let fps = cones.par_iter().map(fingerprint).collect::<Result<Vec<_>, _>>()?;
    let mut buckets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, fp) in fps.into_iter().enumerate() {
        buckets.entry(fp).or_default().push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let groups: Vec<Vec<Vec<usize>>> = buckets
        .par_iter()
        .map(|members| {
            let mut orbits: Vec<Vec<usize>> = Vec::new();
            for &i in members {
                let mut placed = false;
                for o in orbits.iter_mut() {
                    if equivalence_small(&cones[i], &cones[o[0]])?.is_some() {
                        o.push(i);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    orbits.push(vec![i]);
                }
            }
            Ok(orbits)
        })
        .collect::<Result<_, ArithError>>()?;
    let mut orbits: Vec<(usize, Vec<Vec<BigInt>>, Orbit)> = groups
        .into_iter()
        .flatten()
        .map(|members| {
            let best = *members
                .iter()
                .min_by_key(|&&i| cones[i].sorted_coords())
                .expect("orbit is nonempty");
            let rep = cones[best].clone();
            (rep.dim(), rep.sorted_coords(), Orbit { rep, members })
        })
        .collect();
    orbits.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(Census { orbits: orbits.into_iter().map(|x| x.2).collect() })
}

/// Orbits of all nonzero faces of the two top-dimensional perfect cones in genus 4.
pub fn perfect_census() -> Result<Census, ArithError> {
    let mut cones = Vec::new();
    for name in ["Pi1", "Pi2"] {
        let top = conelab::named_cone(name)?;
        let lattice = top.faces()?;
        let group = crate::stabilizer(&top)?;
        for o in local_orbits(&top, &group, &lattice.masks()[1..])? {
            cones.push(top.subcone(o.mask));
        }
    }
    classify(&cones)
}

/// Orbits of the cones `⟨F, e⟩` of the second Voronoi fan, `F` a proper face of `Π₂`.
///
/// Every equivalence between such cones fixes `e`, so the orbits of faces of
/// `Π₂` under its stabilizer already separate them; `cross_check` reruns the
/// general classification on the result.
pub fn e_census(cross_check: bool) -> Result<Census, ArithError> {
    let pi2 = conelab::named_cone("Pi2")?;
    let lattice = pi2.faces()?;
    let group = crate::stabilizer(&pi2)?;
    let full = (1u32 << pi2.gens().len()) - 1;
    let masks: Vec<u32> = lattice.masks().iter().copied().filter(|&m| m != full).collect();
    let e = symquad::central_e();
    let cones = local_orbits(&pi2, &group, &masks)?
        .into_iter()
        .map(|o| {
            let mut gens = pi2.subcone(o.mask).gens().to_vec();
            gens.push(e.clone());
            Cone::new(4, gens, None).map_err(ArithError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if cross_check {
        let c = classify(&cones)?;
        if c.len() != cones.len() {
            return Err(ArithError::Census(format!("{} local orbits merge to {}", cones.len(), c.len())));
        }
        return Ok(c);
    }
    let orbits = cones.into_iter().enumerate().map(|(i, rep)| Orbit { rep, members: vec![i] }).collect();
    let mut census = Census { orbits };
    census.orbits.sort_by(|a, b| (a.dim(), a.rep.sorted_coords()).cmp(&(b.dim(), b.rep.sorted_coords())));
    Ok(census)
}
