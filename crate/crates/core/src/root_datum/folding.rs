use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BasedRootDatum, DatumError, PinnedAutomorphism};
use crate::lattice::{
    coinvariants, kernel_basis, solve_integer_matrix, IntMatrix, IntVector, Lattice, LatticeMap,
};

/// Shape of the root subsystem spanned by one `τ`-orbit of simple roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    /// `k` mutually orthogonal simple roots.
    Orthogonal(usize),
    /// Two simple roots joined by a single bond.
    A2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedGenerator {
    /// Positions in the simple list, ascending.
    pub orbit: Vec<usize>,
    pub kind: OrbitKind,
    /// Longest element of the parabolic subgroup of the orbit, acting on `X`.
    pub matrix: IntMatrix,
}

/// Orbits of `τ` on simple roots, each sorted, ordered by smallest member.
pub fn simple_orbits(tau: &PinnedAutomorphism) -> Vec<Vec<usize>> {
    let perm = tau.simple_permutation();
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = perm[i];
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn folded_generators(
    datum: &BasedRootDatum,
    tau: &PinnedAutomorphism,
) -> Result<Vec<FoldedGenerator>, DatumError> {
    let cartan = datum.cartan_matrix();
    let refl = datum.simple_reflections();
    let mut out = Vec::new();
    for orbit in simple_orbits(tau) {
        let bonded: Vec<(usize, usize)> = orbit
            .iter()
            .flat_map(|&i| orbit.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| i < j && !cartan[(i, j)].is_zero())
            .collect();
        let (kind, matrix) = if bonded.is_empty() {
            let m = orbit
                .iter()
                .fold(IntMatrix::identity(datum.rank()), |acc, &i| &acc * &refl[i]);
            (OrbitKind::Orthogonal(orbit.len()), m)
        } else if orbit.len() == 2
            && cartan[(orbit[0], orbit[1])] == -BigInt::one()
            && cartan[(orbit[1], orbit[0])] == -BigInt::one()
        {
            let (a, b) = (&refl[orbit[0]], &refl[orbit[1]]);
            (OrbitKind::A2, &(a * b) * a)
        } else {
            return Err(DatumError::UnsupportedOrbit { orbit });
        };
        out.push(FoldedGenerator {
            orbit,
            kind,
            matrix,
        });
    }
    Ok(out)
}

/// Root system obtained by restricting roots to `(T^τ)°`.
///
/// The character lattice of `(T^τ)°` is `X_τ / torsion`; `roots` are the
/// distinct nonzero images of roots there. `invariant_basis` spans `X^τ`, the
/// lattice on which the folded Weyl group acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRootData {
    pub invariant_basis: IntMatrix,
    pub rank: usize,
    pub roots: Vec<IntVector>,
    /// Index into `roots` of the image of the first simple root of each orbit.
    pub simple: Vec<usize>,
    pub non_reduced: bool,
    /// Indices of the roots whose half is not a root.
    pub reduced: Vec<usize>,
    /// Cartan matrix of the simple restricted roots.
    pub cartan: IntMatrix,
    pub folded_type: String,
}

impl RestrictedRootData {
    /// Matrix of `w` on `X^τ` in the basis `invariant_basis`, if `w` preserves it.
    pub fn action_on_invariants(&self, w: &IntMatrix) -> Option<IntMatrix> {
        solve_integer_matrix(&self.invariant_basis, &(w * &self.invariant_basis))
    }
}

type RatVec = Vec<BigRational>;

fn rat(v: &[BigInt]) -> RatVec {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn restricted_root_data(
    datum: &BasedRootDatum,
    tau: &PinnedAutomorphism,
) -> Result<RestrictedRootData, DatumError> {
    let n = datum.rank();
    let m = tau.matrix();
    let invariant_basis = kernel_basis(&m.minus_identity());

    let lattice = Lattice::new(n);
    let coinv = coinvariants(&lattice, &[LatticeMap::endomorphism(m.clone())?])?;
    let t = coinv.torsion_rank();
    let image = |v: &[BigInt]| -> IntVector { coinv.project(v)[t..].to_vec() };

    // Averages over the cyclic group give representatives in X^τ ⊗ ℚ.
    let order = tau.order();
    let powers: Vec<IntMatrix> = (0..order).map(|k| m.pow(k)).collect();
    let average = |v: &[BigInt]| -> RatVec {
        let mut acc = vec![BigInt::zero(); n];
        for p in &powers {
            for (a, x) in acc.iter_mut().zip(p.apply(v)) {
                *a += x;
            }
        }
        let d = BigInt::from(order);
        acc.into_iter()
            .map(|a| BigRational::new(a, d.clone()))
            .collect()
    };
    let coroots: Vec<RatVec> = datum.coroots().iter().map(|c| rat(c)).collect();
    let form = |x: &RatVec, y: &RatVec| -> BigRational {
        coroots.iter().map(|c| rdot(x, c) * rdot(y, c)).sum()
    };

    let mut roots: Vec<IntVector> = Vec::new();
    let mut averaged: Vec<RatVec> = Vec::new();
    let mut by_image: HashMap<IntVector, usize> = HashMap::new();
    let mut by_average: HashMap<RatVec, usize> = HashMap::new();
    for r in datum.roots() {
        let img = image(r);
        if img.iter().all(Zero::is_zero) || by_image.contains_key(&img) {
            continue;
        }
        let avg = average(r);
        by_image.insert(img.clone(), roots.len());
        by_average.insert(avg.clone(), roots.len());
        roots.push(img);
        averaged.push(avg);
    }

    // Root-system axioms on the averaged representatives.
    let two = BigRational::from_integer(BigInt::from(2));
    for (i, a) in averaged.iter().enumerate() {
        let aa = form(a, a);
        if aa.is_zero() {
            return Err(DatumError::FoldedAxioms(format!(
                "restricted root {i} is isotropic"
            )));
        }
        for (j, b) in averaged.iter().enumerate() {
            let c = &two * form(b, a) / &aa;
            if !c.is_integer() {
                return Err(DatumError::FoldedAxioms(format!(
                    "pairing of roots {j} and {i} is not integral"
                )));
            }
            let reflected: RatVec = b.iter().zip(a).map(|(x, y)| x - &c * y).collect();
            if !by_average.contains_key(&reflected) {
                return Err(DatumError::FoldedAxioms(format!(
                    "reflection in root {i} moves root {j} off the system"
                )));
            }
        }
    }

    let halves: Vec<bool> = averaged
        .iter()
        .map(|a| {
            let half: RatVec = a.iter().map(|x| x / &two).collect();
            by_average.contains_key(&half)
        })
        .collect();
    let non_reduced = halves.iter().any(|&h| h);
    let reduced: Vec<usize> = (0..roots.len()).filter(|&i| !halves[i]).collect();

    let orbits = simple_orbits(tau);
    let simple_roots = datum.simple_roots();
    let simple: Vec<usize> = orbits
        .iter()
        .map(|o| {
            by_image
                .get(&image(&simple_roots[o[0]]))
                .copied()
                .ok_or_else(|| DatumError::FoldedAxioms("simple root restricts to zero".into()))
        })
        .collect::<Result<_, _>>()?;
    let k = simple.len();
    let mut cartan_entries = Vec::with_capacity(k * k);
    for &i in &simple {
        for &j in &simple {
            let c = &two * form(&averaged[j], &averaged[i]) / form(&averaged[i], &averaged[i]);
            cartan_entries.push(c.to_integer());
        }
    }
    let cartan = IntMatrix::from_fn(k, k, |i, j| cartan_entries[i * k + j].clone());
    let folded_type = classify_cartan(&cartan);

    Ok(RestrictedRootData {
        invariant_basis,
        rank: coinv.free_rank(),
        roots,
        simple,
        non_reduced,
        reduced,
        cartan,
        folded_type,
    })
}

/// Dynkin type of a Cartan matrix, components joined by `x` in order of their
/// smallest node. A rank-two double bond is reported as `C2`; `?` marks a
/// component that is not of finite type.
pub fn classify_cartan(a: &IntMatrix) -> String {
    let n = a.rows();
    if n == 0 {
        return "empty".into();
    }
    let bonded = |i: usize, j: usize| i != j && !a[(i, j)].is_zero();
    let mut comp = vec![usize::MAX; n];
    let mut labels = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut nodes = vec![s];
        comp[s] = s;
        let mut k = 0;
        while k < nodes.len() {
            let u = nodes[k];
            for v in 0..n {
                if bonded(u, v) && comp[v] == usize::MAX {
                    comp[v] = s;
                    nodes.push(v);
                }
            }
            k += 1;
        }
        labels.push(component_type(a, &nodes));
    }
    labels.join("x")
}

fn component_type(a: &IntMatrix, nodes: &[usize]) -> String {
    let n = nodes.len();
    if n == 1 {
        return "A1".into();
    }
    let mult = |i: usize, j: usize| -> i64 {
        let p = &a[(i, j)] * &a[(j, i)];
        i64::try_from(p).unwrap_or(i64::MAX)
    };
    let neighbours = |u: usize| -> Vec<usize> {
        nodes
            .iter()
            .copied()
            .filter(|&v| v != u && !a[(u, v)].is_zero())
            .collect()
    };
    let edges: Vec<(usize, usize, i64)> = nodes
        .iter()
        .flat_map(|&i| nodes.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| i < j && !a[(i, j)].is_zero())
        .map(|(i, j)| (i, j, mult(i, j)))
        .collect();
    if edges.len() != n - 1 {
        return "?".into();
    }
    let heavy: Vec<&(usize, usize, i64)> = edges.iter().filter(|e| e.2 > 1).collect();
    let branch: Vec<usize> = nodes
        .iter()
        .copied()
        .filter(|&u| neighbours(u).len() > 2)
        .collect();
    match (heavy.as_slice(), branch.as_slice()) {
        ([], []) => format!("A{n}"),
        ([], [b]) => {
            let b = *b;
            let nb = neighbours(b);
            if nb.len() != 3 {
                return "?".into();
            }
            let mut legs: Vec<usize> = nb.iter().map(|&v| leg_length(&neighbours, b, v)).collect();
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, _] => format!("D{n}"),
                [1, 2, 2] => "E6".into(),
                [1, 2, 3] => "E7".into(),
                [1, 2, 4] => "E8".into(),
                _ => "?".into(),
            }
        }
        ([&(_, _, 3)], []) if n == 2 => "G2".into(),
        ([&(i, j, 2)], []) => {
            if n == 2 {
                return "C2".into();
            }
            let leaf_i = neighbours(i).len() == 1;
            let leaf_j = neighbours(j).len() == 1;
            let (leaf, other) = match (leaf_i, leaf_j) {
                (true, false) => (i, j),
                (false, true) => (j, i),
                _ if n == 4 => return "F4".into(),
                _ => return "?".into(),
            };
            // |A_{leaf,other}| = 2 exactly when the leaf root is short.
            if a[(leaf, other)] == BigInt::from(-2) {
                format!("B{n}")
            } else {
                format!("C{n}")
            }
        }
        _ => "?".into(),
    }
}

fn leg_length(neighbours: &dyn Fn(usize) -> Vec<usize>, from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = neighbours(cur).into_iter().filter(|&v| v != prev).collect();
        match next.as_slice() {
            [v] => {
                prev = cur;
                cur = *v;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::presets::{
        cartan_matrix, diagram_flip, semisimple, triality, Family, Form,
    };
    use crate::root_datum::{fixed_weyl_subgroup, weyl_group, WeylGroup};

    #[test]
    fn classifier_on_standard_matrices() {
        assert_eq!(classify_cartan(&cartan_matrix(Family::A, 4)), "A4");
        assert_eq!(classify_cartan(&cartan_matrix(Family::B, 3)), "B3");
        assert_eq!(classify_cartan(&cartan_matrix(Family::C, 3)), "C3");
        assert_eq!(classify_cartan(&cartan_matrix(Family::B, 2)), "C2");
        assert_eq!(classify_cartan(&cartan_matrix(Family::D, 5)), "D5");
        assert_eq!(
            classify_cartan(&IntMatrix::from_rows(&[vec![2, -1], vec![-3, 2]])),
            "G2"
        );
        assert_eq!(
            classify_cartan(&IntMatrix::identity(2).scale(&BigInt::from(2))),
            "A1xA1"
        );
    }

    #[test]
    fn a3_flip_folds_to_c2() {
        let d = semisimple(Family::A, 3, Form::SimplyConnected);
        let t = diagram_flip(&d, Family::A, 3).unwrap();
        let gens = folded_generators(&d, &t).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].orbit, vec![0, 2]);
        assert_eq!(gens[0].kind, OrbitKind::Orthogonal(2));
        let r = restricted_root_data(&d, &t).unwrap();
        assert_eq!(r.roots.len(), 8);
        assert!(!r.non_reduced);
        assert_eq!(r.folded_type, "C2");
        let generated =
            WeylGroup::generated_by(3, gens.iter().map(|g| g.matrix.clone()).collect(), 1000)
                .unwrap();
        let fixed = fixed_weyl_subgroup(&weyl_group(&d).unwrap(), &[t]);
        assert!(generated.same_elements(&fixed));
        for g in &gens {
            let rm = r.action_on_invariants(&g.matrix).unwrap();
            assert!((&rm * &rm).is_identity());
        }
    }

    #[test]
    fn a2_flip_is_non_reduced() {
        let d = semisimple(Family::A, 2, Form::Adjoint);
        let t = diagram_flip(&d, Family::A, 2).unwrap();
        let gens = folded_generators(&d, &t).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].kind, OrbitKind::A2);
        let r = restricted_root_data(&d, &t).unwrap();
        assert!(r.non_reduced);
        assert_eq!(r.roots.len(), 4);
        assert_eq!(r.reduced.len(), 2);
        assert_eq!(r.folded_type, "A1");
    }

    #[test]
    fn identity_keeps_system() {
        let d = semisimple(Family::B, 3, Form::Adjoint);
        let t = PinnedAutomorphism::identity(&d);
        let gens = folded_generators(&d, &t).unwrap();
        assert_eq!(
            gens.iter().map(|g| g.matrix.clone()).collect::<Vec<_>>(),
            d.simple_reflections()
        );
        let r = restricted_root_data(&d, &t).unwrap();
        assert_eq!(r.roots.len(), 18);
        assert_eq!(r.folded_type, "B3");
    }

    #[test]
    fn larger_foldings() {
        let cases: Vec<(BasedRootDatum, PinnedAutomorphism, &str, bool)> = vec![
            {
                let d = semisimple(Family::A, 4, Form::SimplyConnected);
                let t = diagram_flip(&d, Family::A, 4).unwrap();
                (d, t, "C2", true)
            },
            {
                let d = semisimple(Family::A, 5, Form::Adjoint);
                let t = diagram_flip(&d, Family::A, 5).unwrap();
                (d, t, "C3", false)
            },
            {
                let d = semisimple(Family::D, 4, Form::SimplyConnected);
                let t = diagram_flip(&d, Family::D, 4).unwrap();
                (d, t, "B3", false)
            },
            {
                let d = semisimple(Family::D, 4, Form::Adjoint);
                let t = triality(&d).unwrap();
                (d, t, "G2", false)
            },
        ];
        for (d, t, ty, nr) in cases {
            let r = restricted_root_data(&d, &t).unwrap();
            assert_eq!(r.folded_type, ty);
            assert_eq!(r.non_reduced, nr, "{ty}");
        }
    }
}
