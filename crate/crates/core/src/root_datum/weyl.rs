use std::collections::{HashSet, VecDeque};

use super::{BasedRootDatum, DatumError, PinnedAutomorphism};
use crate::lattice::IntMatrix;

pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// Finite group of automorphisms of `X`, stored as its full element list in
/// breadth-first order from the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    rank: usize,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
    index: HashSet<IntMatrix>,
}

impl WeylGroup {
    /// Closure of `generators` under multiplication.
    pub fn generated_by(
        rank: usize,
        generators: Vec<IntMatrix>,
        cap: usize,
    ) -> Result<Self, DatumError> {
        let id = IntMatrix::identity(rank);
        let mut index = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in &generators {
                let next = &w * g;
                if index.insert(next.clone()) {
                    if elements.len() >= cap {
                        return Err(DatumError::WeylCapExceeded(cap));
                    }
                    elements.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(WeylGroup {
            rank,
            generators,
            elements,
            index,
        })
    }

    fn from_elements(rank: usize, elements: Vec<IntMatrix>) -> Self {
        let index: HashSet<IntMatrix> = elements.iter().cloned().collect();
        // Greedy generating set: add each element not yet reached.
        let mut generators = Vec::new();
        let mut reached: HashSet<IntMatrix> = HashSet::from([IntMatrix::identity(rank)]);
        for e in &elements {
            if !reached.contains(e) {
                generators.push(e.clone());
                reached = WeylGroup::generated_by(rank, generators.clone(), usize::MAX)
                    .expect("subgroup closure is finite")
                    .index;
            }
        }
        WeylGroup {
            rank,
            generators,
            elements,
            index,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index.contains(m)
    }

    /// Same element set, regardless of generators or enumeration order.
    pub fn same_elements(&self, other: &WeylGroup) -> bool {
        self.index == other.index
    }

    /// Contragredient group `{(w⁻¹)ᵀ}` acting on the dual lattice.
    pub fn contragredient(&self) -> WeylGroup {
        let dual = |m: &IntMatrix| {
            crate::lattice::unimodular_inverse(m)
                .expect("group element")
                .transpose()
        };
        let elements: Vec<IntMatrix> = self.elements.iter().map(dual).collect();
        let index = elements.iter().cloned().collect();
        WeylGroup {
            rank: self.rank,
            generators: self.generators.iter().map(dual).collect(),
            elements,
            index,
        }
    }
}

pub fn weyl_group(datum: &BasedRootDatum) -> Result<WeylGroup, DatumError> {
    weyl_group_with_cap(datum, DEFAULT_WEYL_CAP)
}

pub fn weyl_group_with_cap(datum: &BasedRootDatum, cap: usize) -> Result<WeylGroup, DatumError> {
    WeylGroup::generated_by(datum.rank(), datum.simple_reflections(), cap)
}

/// `{w ∈ W : m w m⁻¹ = w for every m}`.
pub fn fixed_weyl_subgroup(w: &WeylGroup, maps: &[PinnedAutomorphism]) -> WeylGroup {
    let fixed: Vec<IntMatrix> = w
        .elements()
        .iter()
        .filter(|x| maps.iter().all(|m| (m.matrix() * *x) == (*x * m.matrix())))
        .cloned()
        .collect();
    WeylGroup::from_elements(w.rank(), fixed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::presets::{diagram_flip, semisimple, Family, Form};

    #[test]
    fn small_orders() {
        assert_eq!(
            weyl_group(&semisimple(Family::A, 2, Form::Adjoint))
                .unwrap()
                .order(),
            6
        );
        assert_eq!(
            weyl_group(&semisimple(Family::A, 3, Form::SimplyConnected))
                .unwrap()
                .order(),
            24
        );
        assert_eq!(weyl_group(&BasedRootDatum::torus(3)).unwrap().order(), 1);
    }

    #[test]
    fn cap_enforced() {
        let d = semisimple(Family::A, 3, Form::Adjoint);
        assert_eq!(
            weyl_group_with_cap(&d, 10),
            Err(DatumError::WeylCapExceeded(10))
        );
    }

    #[test]
    fn fixed_subgroups() {
        let d = semisimple(Family::A, 3, Form::SimplyConnected);
        let w = weyl_group(&d).unwrap();
        let t = diagram_flip(&d, Family::A, 3).unwrap();
        let f = fixed_weyl_subgroup(&w, std::slice::from_ref(&t));
        assert_eq!(f.order(), 8);
        assert!(f
            .elements()
            .iter()
            .all(|x| (t.matrix() * x) == (x * t.matrix())));
        let regen = WeylGroup::generated_by(4 - 1, f.generators().to_vec(), 100).unwrap();
        assert!(regen.same_elements(&f));
        let id = PinnedAutomorphism::identity(&d);
        assert_eq!(fixed_weyl_subgroup(&w, &[id]).order(), 24);

        let d2 = semisimple(Family::A, 2, Form::Adjoint);
        let t2 = diagram_flip(&d2, Family::A, 2).unwrap();
        assert_eq!(
            fixed_weyl_subgroup(&weyl_group(&d2).unwrap(), &[t2]).order(),
            2
        );
    }
}
