use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{kottwitz_group, kottwitz_map, KottwitzError, KottwitzGroup, TorusWithAction};
use crate::lattice::{
    dot, unimodular_inverse, ExactCircle, GroupCharacter, GroupHom, IntMatrix, IntVector, Lattice,
    LatticeMap,
};
use crate::root_datum::WeylGroup;

/// Parameters of the torus induced from a tame extension with ramification
/// index `e`, residue degree `f` and residue field of order `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InducedData {
    pub e: u64,
    pub f: u64,
    pub q: u64,
}

impl InducedData {
    /// Basis position of the coset `(i mod e, j mod f)`.
    pub fn index(&self, i: u64, j: u64) -> usize {
        ((j % self.f) * self.e + (i % self.e)) as usize
    }
}

/// `ℤ^{ef}` permuted by `τ: (i, j) ↦ (i+1, j)` and `σ: (i, j) ↦ (q i, j+1)`.
pub fn build_induced_torus(e: u64, f: u64, q: u64) -> Result<TorusWithAction, KottwitzError> {
    if e == 0 || f == 0 {
        return Err(KottwitzError::ZeroIndex);
    }
    if q.gcd(&e) != 1 {
        return Err(KottwitzError::WildRamification { q, e });
    }
    let data = InducedData { e, f, q };
    let n = (e * f) as usize;
    let permutation = |image: &dyn Fn(u64, u64) -> usize| {
        let mut m = IntMatrix::zeros(n, n);
        for j in 0..f {
            for i in 0..e {
                m[(image(i, j), data.index(i, j))] = BigInt::one();
            }
        }
        m
    };
    let tau = permutation(&|i, j| data.index(i + 1, j));
    let sigma = permutation(&|i, j| data.index((q % e) * i, j + 1));
    let twist = i64::try_from(q % e).expect("small q");
    Ok(TorusWithAction::new(tau, sigma, twist)?.with_induced(data))
}

/// Coordinates in `T/T₀ ≅ ℤ` of the class of `Σ_j e_(0,j)`, the image of a
/// uniformizer of the extension.
pub fn positive_generator(torus: &TorusWithAction) -> Result<IntVector, KottwitzError> {
    let data = torus.induced_data().ok_or(KottwitzError::NotInduced)?;
    let k = kottwitz_group(torus)?;
    let mut x = vec![BigInt::zero(); torus.rank()];
    for j in 0..data.f {
        x[data.index(0, j)] = BigInt::one();
    }
    Ok(k.class_of(&x).expect("the block sum is sigma-fixed"))
}

/// Point `χ ⊗ c` of `T̂^τ`, with `χ ∈ X^*(T)` (dual to `X_*(T)`) fixed by `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedCocycle {
    pub chi: IntVector,
    pub c: ExactCircle,
}

impl InducedCocycle {
    /// The character `x ↦ c^{⟨x̃, χ⟩}` of the Kottwitz group.
    pub fn character(&self, k: &KottwitzGroup) -> GroupCharacter {
        let values = (0..k.group.num_generators())
            .map(|g| self.c.pow(&dot(&k.lift(&k.group.generator(g)), &self.chi)))
            .collect();
        GroupCharacter::new(k.group.clone(), values)
            .expect("characters of lattices are torsion compatible")
    }
}

/// Cocycle `σ ↦ χ ⊗ c` for the character of `T/T₀ ≅ ℤ` taking the value
/// `fval` at the positive generator: `χ` is the sum of the `τ`-orbit of the
/// dual basis vector at `(0, 0)` and `c = fval`.
pub fn lemma5_cocycle(
    torus: &TorusWithAction,
    fval: &ExactCircle,
) -> Result<InducedCocycle, KottwitzError> {
    let data = torus.induced_data().ok_or(KottwitzError::NotInduced)?;
    let mut chi = vec![BigInt::zero(); torus.rank()];
    for i in 0..data.e {
        chi[data.index(i, 0)] = BigInt::one();
    }
    Ok(InducedCocycle {
        chi,
        c: fval.clone(),
    })
}

/// Character of `T/T₀ ≅ ℤ` with the given value at the positive generator.
pub fn character_at_generator(
    torus: &TorusWithAction,
    fval: &ExactCircle,
) -> Result<GroupCharacter, KottwitzError> {
    let k = kottwitz_group(torus)?;
    let g = positive_generator(torus)?;
    // g = ±1 in the single free coordinate.
    let value = fval.pow(&g[0]);
    Ok(GroupCharacter::new(k.group, vec![value])?)
}

/// `T′ = R(T)` for a finite quotient of the Galois group through which the
/// action factors, with the equivariant embedding `T ↪ T′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub torus: TorusWithAction,
    pub embed: LatticeMap,
    /// Order of the group generated by the action matrices.
    pub action_order: usize,
    /// Induced map `T/T₀ → T′/T′₀`.
    pub kappa: GroupHom,
}

impl Envelope {
    /// Restriction of characters along `kappa` is onto exactly when `kappa`
    /// is injective, the value group being divisible.
    pub fn restriction_is_surjective(&self) -> bool {
        self.kappa.is_injective()
    }
}

/// Envelope for the group `Γ = Γ_act × ℤ/(n/m)`, where `Γ_act` is generated by
/// the action and has order `m | n`; `τ ↦ (τ, 0)` and `σ ↦ (σ, 1)`.
/// `X_*(T′) = ℤ[Γ] ⊗ X_*(T)` with `Γ` acting on the left factor only, and
/// `x ↦ Σ_γ e_γ ⊗ γ⁻¹x`.
pub fn induced_envelope(torus: &TorusWithAction, n: usize) -> Result<Envelope, KottwitzError> {
    let r = torus.rank();
    let act =
        WeylGroup::generated_by(r, vec![torus.tau().clone(), torus.sigma().clone()], 100_000)?;
    let m = act.order();
    if n == 0 || !n.is_multiple_of(m) {
        return Err(KottwitzError::DegreeMismatch { order: m, n });
    }
    let cyclic = n / m;
    let elements = act.elements();
    let position = |g: &IntMatrix| {
        elements
            .iter()
            .position(|x| x == g)
            .expect("closed under the generators")
    };
    // Γ element (a, b) sits at a * cyclic + b.
    let size = m * cyclic;
    let left_mult = |g: &IntMatrix, shift: usize| -> IntMatrix {
        let mut p = IntMatrix::zeros(size * r, size * r);
        for (a, x) in elements.iter().enumerate() {
            let ga = position(&(g * x));
            for b in 0..cyclic {
                let (src, dst) = (a * cyclic + b, ga * cyclic + (b + shift) % cyclic);
                for k in 0..r {
                    p[(dst * r + k, src * r + k)] = BigInt::one();
                }
            }
        }
        p
    };
    let tau = left_mult(torus.tau(), 0);
    let sigma = left_mult(torus.sigma(), 1);
    let envelope = TorusWithAction::new(tau, sigma, torus.action().twist())?;

    let mut embed = IntMatrix::zeros(size * r, r);
    for (a, x) in elements.iter().enumerate() {
        let inv = unimodular_inverse(x).expect("group elements are invertible");
        for b in 0..cyclic {
            let block = a * cyclic + b;
            for i in 0..r {
                for j in 0..r {
                    embed[(block * r + i, j)] = inv[(i, j)].clone();
                }
            }
        }
    }
    let (kappa, _) = kottwitz_map(torus, &envelope, &embed)?;
    let embed = LatticeMap::new(
        torus.cochar_lattice().clone(),
        Lattice::labelled(size * r, "X_*(T')"),
        embed,
    )?;
    Ok(Envelope {
        torus: envelope,
        embed,
        action_order: m,
        kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kottwitz::maximal_compact_quotient;
    use crate::lattice::{character_restrict, ivec};

    #[test]
    fn small_induced_tori() {
        let t = build_induced_torus(2, 1, 3).unwrap();
        assert_eq!(t.tau(), &IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert!(t.sigma().is_identity());
        assert_eq!(kottwitz_group(&t).unwrap().group.to_string(), "Z");

        let t = build_induced_torus(1, 2, 7).unwrap();
        assert!(t.tau().is_identity());
        let k = kottwitz_group(&t).unwrap();
        assert_eq!(k.group.to_string(), "Z");
        assert!(k.class_of(&ivec(&[1, 1])).is_some());

        let t = build_induced_torus(1, 1, 5).unwrap();
        assert_eq!(t.rank(), 1);
        assert_eq!(maximal_compact_quotient(&t).unwrap().to_string(), "Z");
        assert!(matches!(
            build_induced_torus(3, 1, 3),
            Err(KottwitzError::WildRamification { .. })
        ));
    }

    #[test]
    fn cocycle_examples() {
        let t = build_induced_torus(2, 1, 3).unwrap();
        let k = kottwitz_group(&t).unwrap();
        let c = lemma5_cocycle(&t, &ExactCircle::q_power(1, 1)).unwrap();
        assert_eq!(c.chi, ivec(&[1, 1]));
        assert_eq!(
            c.character(&k),
            character_at_generator(&t, &ExactCircle::q_power(1, 1)).unwrap()
        );
        assert!(lemma5_cocycle(&t, &ExactCircle::identity())
            .unwrap()
            .character(&k)
            .is_trivial());

        let t = build_induced_torus(1, 2, 5).unwrap();
        let k = kottwitz_group(&t).unwrap();
        let v = ExactCircle::root_of_unity(1, 2);
        let c = lemma5_cocycle(&t, &v).unwrap();
        assert_eq!(c.chi, ivec(&[1, 0]));
        assert_eq!(c.c.order(), Some(BigInt::from(2)));
        assert_eq!(c.character(&k), character_at_generator(&t, &v).unwrap());

        assert!(matches!(
            lemma5_cocycle(&TorusWithAction::split(1), &v),
            Err(KottwitzError::NotInduced)
        ));
    }

    #[test]
    fn trivial_envelopes() {
        let t = TorusWithAction::split(2);
        let env = induced_envelope(&t, 1).unwrap();
        assert_eq!(env.embed.matrix(), &IntMatrix::identity(2));
        assert!(env.restriction_is_surjective());

        let t = TorusWithAction::split(1);
        let env = induced_envelope(&t, 2).unwrap();
        assert_eq!(env.torus.rank(), 2);
        assert_eq!(
            env.embed.matrix(),
            &IntMatrix::from_rows(&[vec![1], vec![1]])
        );
    }

    #[test]
    fn norm_one_envelope_kills_the_torsion_class() {
        // Norm-one elements have valuation zero, so T/T₀ = ℤ/2 maps to zero
        // in T′/T′₀ = ℤ and only the trivial character is a restriction.
        let minus = IntMatrix::from_rows(&[vec![-1]]);
        let t = TorusWithAction::new(minus, IntMatrix::identity(1), 1).unwrap();
        let env = induced_envelope(&t, 2).unwrap();
        assert_eq!(
            env.torus.tau(),
            &IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])
        );
        assert_eq!(kottwitz_group(&env.torus).unwrap().group.to_string(), "Z");
        assert!(env.kappa.canonical_matrix().is_zero());
        assert!(!env.restriction_is_surjective());
        let k2 = kottwitz_group(&env.torus).unwrap();
        let chi = GroupCharacter::new(k2.group, vec![ExactCircle::q_power(1, 1)]).unwrap();
        assert!(character_restrict(&chi, &env.kappa).unwrap().is_trivial());
    }
}
