use num_bigint::BigInt;
use num_integer::Integer;

use super::{BasedRootDatum, DatumError};
use crate::lattice::{solve_integer_matrix, unimodular_inverse, IntMatrix};

/// Largest order searched for when computing the order of an automorphism.
const ORDER_CAP: u64 = 10_000;

/// Automorphism of `X` preserving roots, the base and the coroot pairing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PinnedAutomorphism {
    matrix: IntMatrix,
    dual: IntMatrix,
    order: u64,
    /// `permutation[i] = k` when the matrix sends simple root `i` to simple root `k`
    /// (positions in the simple list).
    permutation: Vec<usize>,
}

impl PinnedAutomorphism {
    pub fn new(datum: &BasedRootDatum, matrix: IntMatrix) -> Result<Self, DatumError> {
        let n = datum.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(DatumError::NotPinned(format!("expected a {n}x{n} matrix")));
        }
        let inverse = unimodular_inverse(&matrix)
            .ok_or_else(|| DatumError::NotPinned("determinant is not +-1".into()))?;
        let dual = inverse.transpose();
        let simple = datum.simple_indices();
        let mut permutation = Vec::with_capacity(simple.len());
        for &s in simple {
            let image = matrix.apply(&datum.roots()[s]);
            let k = datum
                .root_position(&image)
                .and_then(|r| simple.iter().position(|&t| t == r))
                .ok_or_else(|| {
                    DatumError::NotPinned(format!("simple root {s} is not sent to a simple root"))
                })?;
            permutation.push(k);
        }
        for (i, (r, c)) in datum.roots().iter().zip(datum.coroots()).enumerate() {
            let Some(j) = datum.root_position(&matrix.apply(r)) else {
                return Err(DatumError::NotPinned(format!(
                    "root {i} is not sent to a root"
                )));
            };
            if dual.apply(c) != datum.coroots()[j] {
                return Err(DatumError::NotPinned(format!(
                    "coroot {i} is not sent to the matching coroot"
                )));
            }
        }
        let order = matrix_order(&matrix)
            .ok_or_else(|| DatumError::NotPinned("matrix has infinite order".into()))?;
        Ok(PinnedAutomorphism {
            matrix,
            dual,
            order,
            permutation,
        })
    }

    pub fn identity(datum: &BasedRootDatum) -> Self {
        Self::new(datum, IntMatrix::identity(datum.rank())).expect("identity is pinned")
    }

    /// Unique automorphism of `X` inducing `permutation` on the simple roots
    /// and the matching permutation on simple coroots. Requires the simple
    /// roots to span `X ⊗ ℚ`.
    pub fn from_simple_permutation(
        datum: &BasedRootDatum,
        permutation: &[usize],
    ) -> Result<Self, DatumError> {
        let l = datum.semisimple_rank();
        if permutation.len() != l || !is_permutation(permutation) {
            return Err(DatumError::NotPinned(format!(
                "not a permutation of {l} simple roots"
            )));
        }
        if l != datum.rank() {
            return Err(DatumError::PermutationDoesNotLift);
        }
        // M R = R_P, i.e. Rᵀ Mᵀ = R_Pᵀ.
        let r = datum.root_matrix();
        let rp = r.select_columns(permutation);
        let mt = solve_integer_matrix(&r.transpose(), &rp.transpose())
            .ok_or(DatumError::PermutationDoesNotLift)?;
        let m = mt.transpose();
        if &m * &r != rp {
            return Err(DatumError::PermutationDoesNotLift);
        }
        Self::new(datum, m)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Contragredient action `(M⁻¹)ᵀ` on `X∨`.
    pub fn dual_matrix(&self) -> &IntMatrix {
        &self.dual
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn simple_permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn pow(&self, k: i64) -> IntMatrix {
        let e = k.rem_euclid(self.order as i64) as u64;
        self.matrix.pow(e)
    }

    pub fn inverse_matrix(&self) -> IntMatrix {
        self.pow(-1)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// Smallest `k ≥ 1` with `m^k = 1`, searched up to a fixed cap.
pub(crate) fn matrix_order(m: &IntMatrix) -> Option<u64> {
    let mut acc = m.clone();
    for k in 1..=ORDER_CAP {
        if acc.is_identity() {
            return Some(k);
        }
        acc = &acc * m;
    }
    None
}

/// Inertia generator `τ`, Frobenius `σ` and the exponent `j` in `σ τ σ⁻¹ = τ^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisAction {
    tau: PinnedAutomorphism,
    sigma: PinnedAutomorphism,
    twist: i64,
}

impl GaloisAction {
    pub fn new(
        tau: PinnedAutomorphism,
        sigma: PinnedAutomorphism,
        twist: i64,
    ) -> Result<Self, DatumError> {
        let order = tau.order();
        if BigInt::from(twist).gcd(&BigInt::from(order)) != BigInt::from(1) {
            return Err(DatumError::TwistNotCoprime {
                exponent: twist,
                order,
            });
        }
        let lhs = &(sigma.matrix() * tau.matrix()) * &sigma.inverse_matrix();
        if lhs != tau.pow(twist) {
            return Err(DatumError::TwistRelation(twist));
        }
        Ok(GaloisAction { tau, sigma, twist })
    }

    pub fn trivial(datum: &BasedRootDatum) -> Self {
        let id = PinnedAutomorphism::identity(datum);
        GaloisAction {
            tau: id.clone(),
            sigma: id,
            twist: 1,
        }
    }

    pub fn tau(&self) -> &PinnedAutomorphism {
        &self.tau
    }

    pub fn sigma(&self) -> &PinnedAutomorphism {
        &self.sigma
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }
}
