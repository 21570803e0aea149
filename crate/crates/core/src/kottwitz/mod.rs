//! Kottwitz groups of tori with a tame Galois action, induced tori and their
//! explicit cocycles, and Satake parameters modulo the relative Weyl group.

mod induced;
mod satake;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::lattice::{
    coinvariants, invariants_of_induced_action, kernel_basis, FgAbGroup, GroupHom, IntMatrix,
    Lattice, LatticeError, LatticeMap,
};
use crate::root_datum::{BasedRootDatum, DatumError, GaloisAction, PinnedAutomorphism};

pub use induced::{
    build_induced_torus, character_at_generator, induced_envelope, lemma5_cocycle,
    positive_generator, Envelope, InducedCocycle, InducedData,
};
pub use satake::{ParameterClass, SatakeContext, SatakeParameter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KottwitzError {
    #[error("wild ramification: gcd(q, e) = gcd({q}, {e}) != 1")]
    WildRamification { q: u64, e: u64 },
    #[error("ramification index and residue degree must be positive")]
    ZeroIndex,
    #[error("torus is not an induced torus")]
    NotInduced,
    #[error("map is not equivariant for the {0} action")]
    NotEquivariant(&'static str),
    #[error("action generates a group of order {order}, which does not divide {n}")]
    DegreeMismatch { order: usize, n: usize },
    #[error("character is defined on a different group")]
    DomainMismatch,
    #[error("element is not fixed by tau and sigma")]
    NotInRelativeWeyl,
    #[error("orbit enumeration exceeds the cap of {0}")]
    OrbitCap(usize),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `X_*(T)` with the actions of the inertia generator `τ` and Frobenius `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusWithAction {
    cochar_lattice: Lattice,
    action: GaloisAction,
    induced: Option<InducedData>,
}

impl TorusWithAction {
    /// Validates that `tau` and `sigma` have finite order and `σ τ σ⁻¹ = τ^twist`.
    pub fn new(tau: IntMatrix, sigma: IntMatrix, twist: i64) -> Result<Self, KottwitzError> {
        let n = tau.rows();
        let datum = BasedRootDatum::torus(n);
        let action = GaloisAction::new(
            PinnedAutomorphism::new(&datum, tau)?,
            PinnedAutomorphism::new(&datum, sigma)?,
            twist,
        )?;
        Ok(TorusWithAction {
            cochar_lattice: Lattice::labelled(n, "X_*(T)"),
            action,
            induced: None,
        })
    }

    pub fn split(rank: usize) -> Self {
        Self::new(IntMatrix::identity(rank), IntMatrix::identity(rank), 1).expect("trivial action")
    }

    /// Maximal torus of the group with root datum `datum`: the actions on
    /// `X_*(T) = X∨` are the contragredients of those on `X`.
    pub fn from_datum(
        datum: &BasedRootDatum,
        action: &GaloisAction,
    ) -> Result<Self, KottwitzError> {
        if action.tau().matrix().rows() != datum.rank() {
            return Err(LatticeError::Dimension("action does not match the datum".into()).into());
        }
        Self::new(
            action.tau().dual_matrix().clone(),
            action.sigma().dual_matrix().clone(),
            action.twist(),
        )
    }

    pub(crate) fn with_induced(mut self, data: InducedData) -> Self {
        self.induced = Some(data);
        self
    }

    pub fn rank(&self) -> usize {
        self.cochar_lattice.rank
    }

    pub fn cochar_lattice(&self) -> &Lattice {
        &self.cochar_lattice
    }

    pub fn action(&self) -> &GaloisAction {
        &self.action
    }

    pub fn tau(&self) -> &IntMatrix {
        self.action.tau().matrix()
    }

    pub fn sigma(&self) -> &IntMatrix {
        self.action.sigma().matrix()
    }

    pub fn induced_data(&self) -> Option<&InducedData> {
        self.induced.as_ref()
    }
}

/// `T/T₀ ≅ ((X_*(T))_τ)^σ` with its inclusion into the coinvariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KottwitzGroup {
    pub group: FgAbGroup,
    pub coinvariants: FgAbGroup,
    /// `σ` descended to the coinvariants.
    pub sigma: GroupHom,
    pub inclusion: GroupHom,
}

impl KottwitzGroup {
    /// Class in `T/T₀` of a cocharacter, if its coinvariant class is `σ`-fixed.
    pub fn class_of(&self, cochar: &[BigInt]) -> Option<crate::lattice::IntVector> {
        self.inclusion.preimage(&self.coinvariants.project(cochar))
    }

    /// A cocharacter representing an element of `T/T₀`.
    pub fn lift(&self, coords: &[BigInt]) -> crate::lattice::IntVector {
        self.coinvariants.lift(&self.inclusion.apply(coords))
    }
}

pub fn kottwitz_group(torus: &TorusWithAction) -> Result<KottwitzGroup, KottwitzError> {
    let coinv = coinvariants(
        &Lattice::new(torus.rank()),
        &[LatticeMap::endomorphism(torus.tau().clone())?],
    )?;
    let sigma = GroupHom::new(coinv.clone(), coinv.clone(), torus.sigma().clone())?;
    let (group, inclusion) = invariants_of_induced_action(&coinv, &sigma)?;
    Ok(KottwitzGroup {
        group,
        coinvariants: coinv,
        sigma,
        inclusion,
    })
}

/// `T/T_c`: the Kottwitz group modulo torsion.
pub fn maximal_compact_quotient(torus: &TorusWithAction) -> Result<FgAbGroup, KottwitzError> {
    Ok(kottwitz_group(torus)?.group.free_quotient().0)
}

/// Map of Kottwitz groups induced by an equivariant map `f: X_*(T₁) → X_*(T₂)`,
/// together with the map of coinvariants it restricts.
pub fn kottwitz_map(
    source: &TorusWithAction,
    target: &TorusWithAction,
    f: &IntMatrix,
) -> Result<(GroupHom, GroupHom), KottwitzError> {
    if f.rows() != target.rank() || f.cols() != source.rank() {
        return Err(LatticeError::Dimension("map does not match the tori".into()).into());
    }
    if (f * source.tau()) != (target.tau() * f) {
        return Err(KottwitzError::NotEquivariant("tau"));
    }
    if (f * source.sigma()) != (target.sigma() * f) {
        return Err(KottwitzError::NotEquivariant("sigma"));
    }
    let (k1, k2) = (kottwitz_group(source)?, kottwitz_group(target)?);
    let on_coinvariants =
        GroupHom::new(k1.coinvariants.clone(), k2.coinvariants.clone(), f.clone())?;
    let columns: Vec<_> = (0..k1.group.num_generators())
        .map(|j| {
            let image = on_coinvariants.apply(&k1.inclusion.apply(&k1.group.generator(j)));
            k2.inclusion
                .preimage(&image)
                .expect("equivariant maps preserve sigma-invariants")
        })
        .collect();
    let canonical = IntMatrix::from_columns(k2.group.num_generators(), &columns);
    let on_kottwitz = GroupHom::from_canonical(k1.group, k2.group, &canonical)?;
    Ok((on_kottwitz, on_coinvariants))
}

/// Basis of the equivariant maps `X_*(T₁) → X_*(T₂)`, i.e. integer matrices
/// `f` with `f τ₁ = τ₂ f` and `f σ₁ = σ₂ f`.
pub fn equivariant_maps(source: &TorusWithAction, target: &TorusWithAction) -> Vec<IntMatrix> {
    let (r1, r2) = (source.rank(), target.rank());
    let mut system = IntMatrix::zeros(0, r1 * r2);
    for (a1, a2) in [
        (source.tau(), target.tau()),
        (source.sigma(), target.sigma()),
    ] {
        // Row (i, j) of f a1 − a2 f; unknown f[a][b] sits at a * r1 + b.
        let block = IntMatrix::from_fn(r2 * r1, r2 * r1, |row, col| {
            let (i, j) = (row / r1, row % r1);
            let (a, b) = (col / r1, col % r1);
            let mut v = BigInt::zero();
            if a == i {
                v += &a1[(b, j)];
            }
            if b == j {
                v -= &a2[(i, a)];
            }
            v
        });
        system = system.vstack(&block);
    }
    kernel_basis(&system)
        .columns()
        .into_iter()
        .map(|c| IntMatrix::from_fn(r2, r1, |i, j| c[i * r1 + j].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    #[test]
    fn split_torus() {
        let t = TorusWithAction::split(3);
        let k = kottwitz_group(&t).unwrap();
        assert_eq!(k.group.to_string(), "Z^3");
        assert_eq!(maximal_compact_quotient(&t).unwrap().to_string(), "Z^3");
    }

    #[test]
    fn norm_one_torus() {
        let minus = IntMatrix::from_rows(&[vec![-1]]);
        let t = TorusWithAction::new(minus, IntMatrix::identity(1), 1).unwrap();
        let k = kottwitz_group(&t).unwrap();
        assert_eq!(k.group.to_string(), "Z/2");
        assert!(maximal_compact_quotient(&t).unwrap().is_trivial());
        assert_eq!(k.class_of(&ivec(&[1])), Some(ivec(&[1])));
    }

    #[test]
    fn swap_inertia() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let t = TorusWithAction::new(swap.clone(), IntMatrix::identity(2), 1).unwrap();
        assert_eq!(kottwitz_group(&t).unwrap().group.to_string(), "Z");
        let t = TorusWithAction::new(IntMatrix::identity(2), swap, 1).unwrap();
        let k = kottwitz_group(&t).unwrap();
        assert_eq!(k.group.to_string(), "Z");
        // The diagonal is σ-fixed, e₁ is not.
        assert!(k.class_of(&ivec(&[1, 1])).is_some());
        assert!(k.class_of(&ivec(&[1, 0])).is_none());
    }

    #[test]
    fn equivariant_map_basis() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let t1 = TorusWithAction::new(swap, IntMatrix::identity(2), 1).unwrap();
        let t2 = TorusWithAction::split(1);
        let basis = equivariant_maps(&t1, &t2);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].max_abs(), BigInt::from(1));
        assert_eq!(basis[0][(0, 0)], basis[0][(0, 1)]);
        assert_eq!(equivariant_maps(&t2, &t2).len(), 1);
    }

    #[test]
    fn infinite_order_rejected() {
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(TorusWithAction::new(shear, IntMatrix::identity(2), 1).is_err());
    }

    #[test]
    fn norm_map_between_tori() {
        // Norm ℤ² → ℤ from the swap-inertia torus to the split torus.
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let t1 = TorusWithAction::new(swap, IntMatrix::identity(2), 1).unwrap();
        let t2 = TorusWithAction::split(1);
        let (k, _) = kottwitz_map(&t1, &t2, &IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        assert_eq!(k.canonical_matrix().max_abs(), BigInt::from(1));
        assert!(kottwitz_map(&t1, &t2, &IntMatrix::from_rows(&[vec![1, 0]])).is_err());
    }
}
