//! Standard based root data and their diagram automorphisms. Simple roots are
//! numbered as in Bourbaki; `A_{ij} = ⟨α_j, α_i∨⟩`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{BasedRootDatum, DatumError, PinnedAutomorphism};
use crate::lattice::{IntMatrix, IntVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Smallest rank for which the family is defined and distinct.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A | Family::B => 1,
            Family::C => 2,
            Family::D => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            _ => Err(format!("unknown family {s:?}")),
        }
    }
}

/// Isogeny form: `X` is the weight lattice or the root lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    SimplyConnected,
    Adjoint,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::SimplyConnected => "sc",
            Form::Adjoint => "ad",
        })
    }
}

pub fn cartan_matrix(family: Family, n: usize) -> IntMatrix {
    assert!(n >= family.min_rank(), "{family}{n} is not defined");
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for i in 0..n.saturating_sub(1) {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    match family {
        Family::A => {}
        Family::B => a[n - 1][n - 2] = -2,
        Family::C => a[n - 2][n - 1] = -2,
        Family::D => {
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
    }
    IntMatrix::from_rows(&a)
}

/// Semisimple datum of the given type. In the simply connected form `X` has
/// the fundamental weights as basis and the simple coroots are the standard
/// basis; in the adjoint form the simple roots are the standard basis.
pub fn semisimple(family: Family, n: usize, form: Form) -> BasedRootDatum {
    let a = cartan_matrix(family, n);
    let std: Vec<IntVector> = IntMatrix::identity(n).columns();
    let (roots, coroots) = match form {
        Form::SimplyConnected => (a.columns(), std),
        Form::Adjoint => (std, a.transpose().columns()),
    };
    BasedRootDatum::from_simple(n, &roots, &coroots)
        .expect("classical Cartan matrices give valid data")
}

/// `GL_n` with `X = ℤⁿ` and simple roots `e_i − e_{i+1}`.
pub fn general_linear(n: usize) -> BasedRootDatum {
    let simple: Vec<IntVector> = (0..n.saturating_sub(1))
        .map(|i| {
            let mut v = vec![BigInt::from(0); n];
            v[i] = BigInt::from(1);
            v[i + 1] = BigInt::from(-1);
            v
        })
        .collect();
    BasedRootDatum::from_simple(n, &simple, &simple).expect("GL_n datum is valid")
}

pub fn torus(rank: usize) -> BasedRootDatum {
    BasedRootDatum::torus(rank)
}

/// The nontrivial involution of the Dynkin diagram: reversal for `A_n`,
/// exchange of the two short legs for `D_n`.
pub fn diagram_flip(
    datum: &BasedRootDatum,
    family: Family,
    n: usize,
) -> Result<PinnedAutomorphism, DatumError> {
    let perm: Vec<usize> = match family {
        Family::A => (0..n).rev().collect(),
        Family::D if n >= 3 => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            p
        }
        _ => {
            return Err(DatumError::NotPinned(format!(
                "{family}{n} has no nontrivial diagram automorphism"
            )))
        }
    };
    PinnedAutomorphism::from_simple_permutation(datum, &perm)
}

/// Order-three automorphism of `D_4` cycling the outer nodes `0 → 2 → 3 → 0`.
pub fn triality(datum: &BasedRootDatum) -> Result<PinnedAutomorphism, DatumError> {
    PinnedAutomorphism::from_simple_permutation(datum, &[2, 1, 3, 0])
}

/// Outer involution `e_i ↦ −e_{n+1−i}` of `GL_n`.
pub fn gl_flip(datum: &BasedRootDatum) -> Result<PinnedAutomorphism, DatumError> {
    let n = datum.rank();
    let m = IntMatrix::from_fn(n, n, |i, j| {
        BigInt::from(if i + j + 1 == n { -1 } else { 0 })
    });
    PinnedAutomorphism::new(datum, m)
}
