use std::collections::{BTreeSet, HashSet};

use exact_linalg::IntMatrix;
use serde::{Deserialize, Serialize};

use crate::small::SmallMat;
use crate::ArithError;

/// Guard against runaway closures.
const MAX_ORDER: usize = 1_000_000;

/// A finite group of unimodular matrices with all elements enumerated.
/// Elements are kept sorted, so iteration order is deterministic.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    g: usize,
    generators: Vec<SmallMat>,
    elements: Vec<SmallMat>,
}

impl FiniteMatrixGroup {
    pub fn trivial(g: usize) -> Self {
        FiniteMatrixGroup { g, generators: Vec::new(), elements: vec![SmallMat::identity(g)] }
    }

    /// The group generated by `gens`.
    pub fn generate(g: usize, gens: &[IntMatrix]) -> Result<Self, ArithError> {
        let gens: Vec<SmallMat> = gens
            .iter()
            .map(|m| SmallMat::from_int(m).ok_or(ArithError::Overflow))
            .collect::<Result<_, _>>()?;
        Self::generate_small(g, gens)
    }

    pub(crate) fn generate_small(g: usize, gens: Vec<SmallMat>) -> Result<Self, ArithError> {
        let mut seen: HashSet<SmallMat> = HashSet::new();
        let id = SmallMat::identity(g);
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y = x.mul(s);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_ORDER {
                        return Err(ArithError::Infinite);
                    }
                    frontier.push(y);
                }
            }
        }
        let mut elements: Vec<SmallMat> = seen.into_iter().collect();
        elements.sort();
        Ok(FiniteMatrixGroup { g, generators: gens, elements })
    }

    /// A group given by its complete element list. The list must be closed
    /// under multiplication; a small generating set is extracted.
    pub(crate) fn from_elements(g: usize, mut elements: Vec<SmallMat>) -> Self {
        elements.sort();
        elements.dedup();
        let all: HashSet<SmallMat> = elements.iter().cloned().collect();
        let mut sub: HashSet<SmallMat> = [SmallMat::identity(g)].into_iter().collect();
        let mut gens = Vec::new();
        for e in &elements {
            if sub.contains(e) {
                continue;
            }
            gens.push(e.clone());
            let grown = Self::generate_small(g, gens.clone()).expect("finite subgroup");
            sub = grown.elements.into_iter().collect();
        }
        debug_assert_eq!(sub.len(), all.len(), "element list is closed");
        FiniteMatrixGroup { g, generators: gens, elements }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> Vec<IntMatrix> {
        self.generators.iter().map(SmallMat::to_int).collect()
    }

    pub fn elements(&self) -> Vec<IntMatrix> {
        self.elements.iter().map(SmallMat::to_int).collect()
    }

    pub fn small_elements(&self) -> &[SmallMat] {
        &self.elements
    }

    pub fn small_generators(&self) -> &[SmallMat] {
        &self.generators
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        SmallMat::from_int(m).is_some_and(|s| self.elements.binary_search(&s).is_ok())
    }

    pub fn contains_small(&self, m: &SmallMat) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    /// Checks closure under products and the presence of inverses.
    pub fn is_closed(&self) -> bool {
        let set: BTreeSet<&SmallMat> = self.elements.iter().collect();
        let id = SmallMat::identity(self.g);
        set.contains(&id)
            && self.elements.iter().all(|x| {
                self.generators.iter().all(|s| set.contains(&x.mul(s)))
                    && self.elements.iter().any(|y| x.mul(y) == id)
            })
    }

    /// Elements satisfying `keep`, which must cut out a subgroup.
    pub fn subgroup(&self, keep: impl Fn(&SmallMat) -> bool) -> FiniteMatrixGroup {
        let els: Vec<SmallMat> = self.elements.iter().filter(|x| keep(x)).cloned().collect();
        Self::from_elements(self.g, els)
    }

    pub fn intersection(&self, other: &FiniteMatrixGroup) -> FiniteMatrixGroup {
        self.subgroup(|x| other.contains_small(x))
    }

    pub fn is_subgroup_of(&self, other: &FiniteMatrixGroup) -> bool {
        self.elements.iter().all(|x| other.contains_small(x))
    }

    /// The group of transposes.
    pub fn transposed(&self) -> FiniteMatrixGroup {
        let els = self.elements.iter().map(SmallMat::transpose).collect();
        Self::from_elements(self.g, els)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson { g: self.g, order: self.order(), generators: self.generators.iter().map(|m| m.a.clone()).collect() }
    }
}

/// `{"g":4,"order":n,"generators":[[row-major]...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupJson {
    pub g: usize,
    pub order: usize,
    pub generators: Vec<Vec<i64>>,
}
