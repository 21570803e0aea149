//! Based root data, pinned automorphisms, Weyl groups and diagram folding.

mod automorphism;
mod folding;
pub mod presets;
mod weyl;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    dot, format_vector, solve_integer, IntMatrix, IntVector, Lattice, LatticeError,
};

pub use automorphism::{GaloisAction, PinnedAutomorphism};
pub use folding::{
    classify_cartan, folded_generators, restricted_root_data, simple_orbits, FoldedGenerator,
    OrbitKind, RestrictedRootData,
};
pub use weyl::{fixed_weyl_subgroup, weyl_group, weyl_group_with_cap, WeylGroup, DEFAULT_WEYL_CAP};

/// Cap on the number of roots produced by closing simple roots under reflections.
const ROOT_CLOSURE_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("invalid root datum: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error(
        "root closure exceeded {0} roots; the simple system does not generate a finite root system"
    )]
    InfiniteRootSystem(usize),
    #[error("Weyl group exceeds the element cap of {0}")]
    WeylCapExceeded(usize),
    #[error("matrix is not a pinned automorphism: {0}")]
    NotPinned(String),
    #[error("simple-root permutation does not lift to an integral automorphism of the character lattice")]
    PermutationDoesNotLift,
    #[error("twist relation fails: sigma tau sigma^-1 != tau^{0}")]
    TwistRelation(i64),
    #[error("twist exponent {exponent} is not prime to the order {order} of tau")]
    TwistNotCoprime { exponent: i64, order: u64 },
    #[error("tau-orbit {orbit:?} of simple roots spans neither A1^k nor A2")]
    UnsupportedOrbit { orbit: Vec<usize> },
    #[error("folded roots fail the root-system axioms: {0}")]
    FoldedAxioms(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// One failed axiom reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    CountMismatch { roots: usize, coroots: usize },
    WrongLength { index: usize, coroot: bool },
    Pairing { index: usize, value: BigInt },
    ZeroRoot { index: usize },
    DuplicateRoot { index: usize },
    ReflectionLeavesRoots { reflection: usize, root: usize },
    ReflectionLeavesCoroots { reflection: usize, coroot: usize },
    SimpleIndexOutOfRange { index: usize },
    DuplicateSimpleIndex { index: usize },
    SimpleRootsDependent,
    NotInSimpleSpan { root: usize },
    MixedSigns { root: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CountMismatch { roots, coroots } => {
                write!(f, "{roots} roots but {coroots} coroots")
            }
            Violation::WrongLength { index, coroot } => {
                let kind = if *coroot { "coroot" } else { "root" };
                write!(f, "{kind} {index} has the wrong length")
            }
            Violation::Pairing { index, value } => {
                write!(f, "<alpha_{index}, alpha_{index}^v> = {value} != 2")
            }
            Violation::ZeroRoot { index } => write!(f, "root {index} is zero"),
            Violation::DuplicateRoot { index } => write!(f, "root {index} is repeated"),
            Violation::ReflectionLeavesRoots { reflection, root } => {
                write!(
                    f,
                    "reflection {reflection} sends root {root} outside the root set"
                )
            }
            Violation::ReflectionLeavesCoroots { reflection, coroot } => {
                write!(
                    f,
                    "coreflection {reflection} sends coroot {coroot} outside the coroot set"
                )
            }
            Violation::SimpleIndexOutOfRange { index } => {
                write!(f, "simple index {index} out of range")
            }
            Violation::DuplicateSimpleIndex { index } => write!(f, "simple index {index} repeated"),
            Violation::SimpleRootsDependent => write!(f, "simple roots are linearly dependent"),
            Violation::NotInSimpleSpan { root } => write!(
                f,
                "root {root} is not an integer combination of simple roots"
            ),
            Violation::MixedSigns { root } => {
                write!(f, "root {root} has simple coefficients of mixed sign")
            }
        }
    }
}

/// `(X, Φ, X∨, Φ∨)` with a chosen base. `X` and `X∨` are `ℤ^n` paired by the
/// dot product; `roots[i]` and `coroots[i]` correspond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    char_lattice: Lattice,
    cochar_lattice: Lattice,
    roots: Vec<IntVector>,
    coroots: Vec<IntVector>,
    simple: Vec<usize>,
    root_index: HashMap<IntVector, usize>,
}

impl BasedRootDatum {
    /// Stores the data as given; call [`validate`] to check the axioms.
    pub fn new(
        rank: usize,
        roots: Vec<IntVector>,
        coroots: Vec<IntVector>,
        simple: Vec<usize>,
    ) -> Self {
        let root_index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        BasedRootDatum {
            char_lattice: Lattice::labelled(rank, "X"),
            cochar_lattice: Lattice::labelled(rank, "X^v"),
            roots,
            coroots,
            simple,
            root_index,
        }
    }

    /// Root datum with no roots.
    pub fn torus(rank: usize) -> Self {
        Self::new(rank, Vec::new(), Vec::new(), Vec::new())
    }

    /// Closes simple roots and coroots under the simple reflections. Roots are
    /// listed in discovery order with the simple roots first; the result is
    /// validated.
    pub fn from_simple(
        rank: usize,
        simple_roots: &[IntVector],
        simple_coroots: &[IntVector],
    ) -> Result<Self, DatumError> {
        if simple_roots.len() != simple_coroots.len() {
            return Err(DatumError::Invalid(vec![Violation::CountMismatch {
                roots: simple_roots.len(),
                coroots: simple_coroots.len(),
            }]));
        }
        let mut bad = Vec::new();
        for (index, (r, c)) in simple_roots.iter().zip(simple_coroots).enumerate() {
            if r.len() != rank {
                bad.push(Violation::WrongLength {
                    index,
                    coroot: false,
                });
            }
            if c.len() != rank {
                bad.push(Violation::WrongLength {
                    index,
                    coroot: true,
                });
            } else if r.len() == rank {
                let value = dot(r, c);
                if value != BigInt::from(2) {
                    bad.push(Violation::Pairing { index, value });
                }
            }
        }
        if !bad.is_empty() {
            return Err(DatumError::Invalid(bad));
        }
        let mut roots: Vec<IntVector> = simple_roots.to_vec();
        let mut coroots: Vec<IntVector> = simple_coroots.to_vec();
        let mut seen: HashMap<IntVector, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let mut cursor = 0;
        while cursor < roots.len() {
            let (b, bv) = (roots[cursor].clone(), coroots[cursor].clone());
            for (a, av) in simple_roots.iter().zip(simple_coroots) {
                let img = reflect(&b, a, av);
                if !seen.contains_key(&img) {
                    if roots.len() >= ROOT_CLOSURE_CAP {
                        return Err(DatumError::InfiniteRootSystem(ROOT_CLOSURE_CAP));
                    }
                    seen.insert(img.clone(), roots.len());
                    roots.push(img);
                    coroots.push(reflect(&bv, av, a));
                }
            }
            cursor += 1;
        }
        let simple = (0..simple_roots.len()).collect();
        let datum = Self::new(rank, roots, coroots, simple);
        let v = validate(&datum);
        if v.is_empty() {
            Ok(datum)
        } else {
            Err(DatumError::Invalid(v))
        }
    }

    pub fn rank(&self) -> usize {
        self.char_lattice.rank
    }

    pub fn char_lattice(&self) -> &Lattice {
        &self.char_lattice
    }

    pub fn cochar_lattice(&self) -> &Lattice {
        &self.cochar_lattice
    }

    pub fn roots(&self) -> &[IntVector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[IntVector] {
        &self.coroots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_roots(&self) -> Vec<IntVector> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<IntVector> {
        self.simple
            .iter()
            .map(|&i| self.coroots[i].clone())
            .collect()
    }

    pub fn is_torus(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root_position(&self, v: &[BigInt]) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    /// `s_α` on `X`: `x ↦ x − ⟨x, α∨⟩ α`.
    pub fn reflection(&self, root: usize) -> IntMatrix {
        let (a, av) = (&self.roots[root], &self.coroots[root]);
        let n = self.rank();
        IntMatrix::from_fn(n, n, |i, j| {
            let delta = if i == j {
                BigInt::from(1)
            } else {
                BigInt::zero()
            };
            delta - &a[i] * &av[j]
        })
    }

    pub fn simple_reflections(&self) -> Vec<IntMatrix> {
        self.simple.iter().map(|&i| self.reflection(i)).collect()
    }

    /// Coefficients of a vector in the basis of simple roots, if integral.
    pub fn simple_coefficients(&self, v: &[BigInt]) -> Option<IntVector> {
        let a = IntMatrix::from_columns(self.rank(), &self.simple_roots());
        solve_integer(&a, v)
    }

    pub fn is_positive(&self, root: usize) -> bool {
        self.simple_coefficients(&self.roots[root])
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.is_positive(i))
            .collect()
    }

    /// Sum of the positive roots.
    pub fn two_rho(&self) -> IntVector {
        let mut acc = vec![BigInt::zero(); self.rank()];
        for i in self.positive_roots() {
            for (a, r) in acc.iter_mut().zip(&self.roots[i]) {
                *a += r;
            }
        }
        acc
    }

    /// `A_{ij} = ⟨α_j, α_i∨⟩` over the simple roots.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let (r, c) = (self.simple_roots(), self.simple_coroots());
        IntMatrix::from_fn(r.len(), r.len(), |i, j| dot(&r[j], &c[i]))
    }

    /// Columns are the simple coroots.
    pub fn coroot_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rank(), &self.simple_coroots())
    }

    /// Columns are the simple roots.
    pub fn root_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rank(), &self.simple_roots())
    }

    /// Whether the matrix (acting on `X`) permutes the root set.
    pub fn permutes_roots(&self, m: &IntMatrix) -> bool {
        self.roots
            .iter()
            .all(|r| self.root_index.contains_key(&m.apply(r)))
    }
}

impl fmt::Display for BasedRootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sr: Vec<String> = self
            .simple_roots()
            .iter()
            .map(|v| format_vector(v))
            .collect();
        let sc: Vec<String> = self
            .simple_coroots()
            .iter()
            .map(|v| format_vector(v))
            .collect();
        write!(
            f,
            "rank {}, {} roots, simple roots [{}], simple coroots [{}]",
            self.rank(),
            self.roots.len(),
            sr.join(", "),
            sc.join(", ")
        )
    }
}

fn reflect(x: &[BigInt], a: &[BigInt], av: &[BigInt]) -> IntVector {
    let p = dot(x, av);
    x.iter().zip(a).map(|(xi, ai)| xi - &p * ai).collect()
}

/// Checks every root-datum axiom; an empty list means the datum is valid.
pub fn validate(datum: &BasedRootDatum) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = datum.rank();
    let (roots, coroots) = (&datum.roots, &datum.coroots);
    if roots.len() != coroots.len() {
        out.push(Violation::CountMismatch {
            roots: roots.len(),
            coroots: coroots.len(),
        });
        return out;
    }
    for (index, (r, c)) in roots.iter().zip(coroots).enumerate() {
        if r.len() != n {
            out.push(Violation::WrongLength {
                index,
                coroot: false,
            });
        }
        if c.len() != n {
            out.push(Violation::WrongLength {
                index,
                coroot: true,
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut seen = HashMap::new();
    for (index, r) in roots.iter().enumerate() {
        if r.iter().all(Zero::is_zero) {
            out.push(Violation::ZeroRoot { index });
        }
        if seen.insert(r.clone(), index).is_some() {
            out.push(Violation::DuplicateRoot { index });
        }
    }
    let coroot_set: std::collections::HashSet<&IntVector> = coroots.iter().collect();
    for (index, (r, c)) in roots.iter().zip(coroots).enumerate() {
        let p = dot(r, c);
        if p != BigInt::from(2) {
            out.push(Violation::Pairing { index, value: p });
        }
    }
    for (i, (a, av)) in roots.iter().zip(coroots).enumerate() {
        for (j, (b, bv)) in roots.iter().zip(coroots).enumerate() {
            match datum.root_index.get(&reflect(b, a, av)) {
                None => out.push(Violation::ReflectionLeavesRoots {
                    reflection: i,
                    root: j,
                }),
                Some(&k) => {
                    // The image root must carry the reflected coroot.
                    if coroots[k] != reflect(bv, av, a) {
                        out.push(Violation::ReflectionLeavesCoroots {
                            reflection: i,
                            coroot: j,
                        });
                    }
                }
            }
            if !coroot_set.contains(&reflect(bv, av, a)) {
                out.push(Violation::ReflectionLeavesCoroots {
                    reflection: i,
                    coroot: j,
                });
            }
        }
    }
    let mut simple_seen = std::collections::HashSet::new();
    for &index in &datum.simple {
        if index >= roots.len() {
            out.push(Violation::SimpleIndexOutOfRange { index });
        } else if !simple_seen.insert(index) {
            out.push(Violation::DuplicateSimpleIndex { index });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let a = datum.root_matrix();
    if crate::lattice::smith_normal_form(&a).rank() < datum.simple.len() {
        out.push(Violation::SimpleRootsDependent);
        return out;
    }
    for (root, r) in roots.iter().enumerate() {
        match solve_integer(&a, r) {
            None => out.push(Violation::NotInSimpleSpan { root }),
            Some(c) => {
                let pos = c.iter().any(|x| x.is_positive());
                let neg = c.iter().any(|x| x.is_negative());
                if pos && neg {
                    out.push(Violation::MixedSigns { root });
                }
            }
        }
    }
    out.dedup();
    out
}

/// Swaps `X ↔ X∨` and roots with coroots. The simple indices carry over.
pub fn dual_datum(datum: &BasedRootDatum) -> Result<BasedRootDatum, DatumError> {
    let v = validate(datum);
    if !v.is_empty() {
        return Err(DatumError::Invalid(v));
    }
    Ok(BasedRootDatum::new(
        datum.rank(),
        datum.coroots.clone(),
        datum.roots.clone(),
        datum.simple.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cokernel, ivec, LatticeMap};

    fn sl2() -> BasedRootDatum {
        BasedRootDatum::new(
            1,
            vec![ivec(&[2]), ivec(&[-2])],
            vec![ivec(&[1]), ivec(&[-1])],
            vec![0],
        )
    }

    #[test]
    fn sl2_is_valid() {
        assert!(validate(&sl2()).is_empty());
    }

    #[test]
    fn bad_pairing_reported() {
        let d = BasedRootDatum::new(
            1,
            vec![ivec(&[2]), ivec(&[-2])],
            vec![ivec(&[2]), ivec(&[-2])],
            vec![0],
        );
        let v = validate(&d);
        assert!(v.contains(&Violation::Pairing {
            index: 0,
            value: BigInt::from(4)
        }));
    }

    #[test]
    fn gl2_is_valid() {
        let d = BasedRootDatum::from_simple(2, &[ivec(&[1, -1])], &[ivec(&[1, -1])]).unwrap();
        assert_eq!(d.roots().len(), 2);
        assert!(validate(&d).is_empty());
    }

    #[test]
    fn mixed_sign_root_detected() {
        // A2 with base {α1, α1+α2}: α2 = (α1+α2) − α1 has mixed signs.
        let d = presets::semisimple(presets::Family::A, 2, presets::Form::Adjoint);
        let a1 = d.root_position(&ivec(&[1, 0])).unwrap();
        let a12 = d.root_position(&ivec(&[1, 1])).unwrap();
        let bad = BasedRootDatum::new(2, d.roots().to_vec(), d.coroots().to_vec(), vec![a1, a12]);
        assert!(validate(&bad)
            .iter()
            .any(|v| matches!(v, Violation::MixedSigns { .. })));
    }

    fn root_lattice_index(d: &BasedRootDatum) -> String {
        let a = d.root_matrix();
        cokernel(&LatticeMap::new(Lattice::new(a.cols()), Lattice::new(d.rank()), a).unwrap())
            .to_string()
    }

    #[test]
    fn dual_of_sl2_is_pgl2() {
        let d = dual_datum(&sl2()).unwrap();
        assert!(validate(&d).is_empty());
        // X / ZΦ is Z/2 for SL2 and trivial for PGL2.
        assert_eq!(root_lattice_index(&sl2()), "Z/2");
        assert_eq!(root_lattice_index(&d), "0");
        assert_eq!(dual_datum(&d).unwrap(), sl2());
    }

    #[test]
    fn gl_n_self_dual_and_torus() {
        let d = presets::general_linear(3);
        let dual = dual_datum(&d).unwrap();
        assert_eq!(dual.roots(), d.coroots());
        assert_eq!(dual.coroots(), d.roots());
        assert_eq!(dual, d);
        let t = BasedRootDatum::torus(2);
        assert_eq!(dual_datum(&t).unwrap(), t);
    }

    #[test]
    fn dual_rejects_invalid() {
        let d = BasedRootDatum::new(1, vec![ivec(&[2])], vec![ivec(&[2])], vec![0]);
        assert!(matches!(dual_datum(&d), Err(DatumError::Invalid(_))));
    }

    #[test]
    fn two_rho_sl2() {
        assert_eq!(sl2().two_rho(), ivec(&[2]));
        assert_eq!(presets::general_linear(3).two_rho(), ivec(&[2, 0, -2]));
    }
}
