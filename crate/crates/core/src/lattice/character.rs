use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::circle::ExactCircle;
use super::group::{FgAbGroup, GroupHom};
use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use super::LatticeError;

/// Homomorphism from a finitely generated abelian group into [`ExactCircle`],
/// stored by its values on the canonical generators of the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupCharacter {
    domain: FgAbGroup,
    values: Vec<ExactCircle>,
}

impl GroupCharacter {
    pub fn new(domain: FgAbGroup, values: Vec<ExactCircle>) -> Result<Self, LatticeError> {
        if values.len() != domain.num_generators() {
            return Err(LatticeError::Dimension(format!(
                "{} values for {} generators",
                values.len(),
                domain.num_generators()
            )));
        }
        for (index, (d, v)) in domain.invariant_factors().iter().zip(&values).enumerate() {
            if !v.pow(d).is_identity() {
                return Err(LatticeError::TorsionIncompatible {
                    index,
                    order: d.clone(),
                    value: v.to_string(),
                });
            }
        }
        Ok(GroupCharacter { domain, values })
    }

    pub fn trivial(domain: FgAbGroup) -> Self {
        let values = vec![ExactCircle::identity(); domain.num_generators()];
        GroupCharacter { domain, values }
    }

    /// Character induced from a character of the ambient lattice, given by its
    /// values on the standard basis. It must vanish on the relations.
    pub fn from_ambient(
        domain: FgAbGroup,
        ambient_values: &[ExactCircle],
    ) -> Result<Self, LatticeError> {
        if ambient_values.len() != domain.ambient_rank() {
            return Err(LatticeError::Dimension(
                "one value per ambient basis vector expected".into(),
            ));
        }
        let eval = |v: &[BigInt]| -> ExactCircle {
            v.iter().zip(ambient_values).map(|(c, x)| x.pow(c)).sum()
        };
        if domain
            .relations()
            .columns()
            .iter()
            .any(|r| !eval(r).is_identity())
        {
            return Err(LatticeError::NotTrivialOnRelations);
        }
        let values = (0..domain.num_generators())
            .map(|j| eval(&domain.section().column(j)))
            .collect();
        GroupCharacter::new(domain, values)
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn values(&self) -> &[ExactCircle] {
        &self.values
    }

    pub fn evaluate(&self, coords: &[BigInt]) -> ExactCircle {
        assert_eq!(
            coords.len(),
            self.values.len(),
            "coordinate length mismatch"
        );
        coords.iter().zip(&self.values).map(|(c, v)| v.pow(c)).sum()
    }

    /// Value at an ambient vector of the domain's presentation.
    pub fn evaluate_ambient(&self, ambient: &[BigInt]) -> ExactCircle {
        self.evaluate(&self.domain.project(ambient))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(ExactCircle::is_identity)
    }

    pub fn multiply(&self, other: &GroupCharacter) -> Result<GroupCharacter, LatticeError> {
        if self.domain != other.domain {
            return Err(LatticeError::DomainMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(GroupCharacter {
            domain: self.domain.clone(),
            values,
        })
    }

    /// Precomposition `self ∘ hom`.
    pub fn pullback(&self, hom: &GroupHom) -> Result<GroupCharacter, LatticeError> {
        if *hom.target() != self.domain {
            return Err(LatticeError::DomainMismatch);
        }
        let values = (0..hom.source().num_generators())
            .map(|j| self.evaluate(&hom.apply(&hom.source().generator(j))))
            .collect();
        Ok(GroupCharacter {
            domain: hom.source().clone(),
            values,
        })
    }
}

impl fmt::Display for GroupCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `χ ∘ inclusion`.
pub fn character_restrict(
    chi: &GroupCharacter,
    inclusion: &GroupHom,
) -> Result<GroupCharacter, LatticeError> {
    chi.pullback(inclusion)
}

/// Some character of `inclusion.target()` whose restriction along `inclusion`
/// is `chi`. Existence follows from divisibility of the value group.
///
/// The answer is not unique: any two extensions differ by a character that is
/// trivial on the subgroup. This one is obtained by taking canonical roots in
/// the Smith basis and setting unconstrained coordinates to the identity.
pub fn divisible_extension(
    chi: &GroupCharacter,
    inclusion: &GroupHom,
) -> Result<GroupCharacter, LatticeError> {
    if *inclusion.source() != chi.domain {
        return Err(LatticeError::DomainMismatch);
    }
    let big = inclusion.target();
    let k = big.num_generators();
    // Free cover of `big`: ℤ^k with relations dᵢeᵢ. Map ℤ^{k_A} ⊕ ℤ^{t} onto
    // the subgroup-plus-relations and extend θ = (χ, 0) along it.
    let torsion_rel = IntMatrix::from_fn(k, big.torsion_rank(), |i, j| {
        if i == j {
            big.generator_order(i)
        } else {
            BigInt::zero()
        }
    });
    let phi = inclusion.canonical_matrix().hstack(&torsion_rel);
    let theta: Vec<ExactCircle> = chi
        .values
        .iter()
        .cloned()
        .chain(std::iter::repeat_n(
            ExactCircle::identity(),
            big.torsion_rank(),
        ))
        .collect();

    let snf = smith_normal_form(&phi);
    // θ∘V in the Smith basis of the source.
    let theta_v: Vec<ExactCircle> = (0..phi.cols())
        .map(|j| {
            theta
                .iter()
                .enumerate()
                .map(|(i, t)| t.pow(&snf.right[(i, j)]))
                .sum()
        })
        .collect();
    let inv = snf.invariants();
    let mut psi_smith = vec![ExactCircle::identity(); k];
    for (j, tv) in theta_v.iter().enumerate() {
        let d = inv.get(j).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !tv.is_identity() {
                return Err(LatticeError::NotInjective);
            }
        } else {
            psi_smith[j] = tv.nth_root(&d);
        }
    }
    // ψ = ψ' U as a row vector.
    let values = (0..k)
        .map(|c| {
            psi_smith
                .iter()
                .enumerate()
                .map(|(i, p)| p.pow(&snf.left[(i, c)]))
                .sum()
        })
        .collect();
    GroupCharacter::new(big.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::group::invariants_of_induced_action;
    use crate::lattice::matrix::ivec;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn times(k: i64) -> GroupHom {
        let zz = FgAbGroup::free(1);
        GroupHom::new(zz.clone(), zz, IntMatrix::from_rows(&[vec![k]])).unwrap()
    }

    #[test]
    fn torsion_compatibility_enforced() {
        let c2 = FgAbGroup::from_cyclic_orders(&[z(2)], 0);
        assert!(GroupCharacter::new(c2.clone(), vec![ExactCircle::root_of_unity(1, 2)]).is_ok());
        assert!(matches!(
            GroupCharacter::new(c2.clone(), vec![ExactCircle::root_of_unity(1, 4)]),
            Err(LatticeError::TorsionIncompatible { .. })
        ));
        assert!(GroupCharacter::new(c2, vec![ExactCircle::q_power(1, 1)]).is_err());
    }

    #[test]
    fn restrict_examples() {
        let z2 = FgAbGroup::free(2);
        let trivial = GroupCharacter::trivial(z2.clone());
        let swap = GroupHom::new(
            z2.clone(),
            z2.clone(),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        let (diag, incl) = invariants_of_induced_action(&z2, &swap).unwrap();
        assert!(character_restrict(&trivial, &incl).unwrap().is_trivial());

        let chi = GroupCharacter::from_ambient(
            z2,
            &[ExactCircle::q_power(1, 1), ExactCircle::q_power(-1, 1)],
        )
        .unwrap();
        let r = character_restrict(&chi, &incl).unwrap();
        assert_eq!(r.domain(), &diag);
        assert!(r.is_trivial());

        let chi = GroupCharacter::new(FgAbGroup::free(1), vec![ExactCircle::root_of_unity(1, 2)])
            .unwrap();
        assert!(character_restrict(&chi, &times(2)).unwrap().is_trivial());
    }

    #[test]
    fn extension_examples() {
        let chi =
            GroupCharacter::new(FgAbGroup::free(1), vec![ExactCircle::q_power(1, 1)]).unwrap();
        let ext = divisible_extension(&chi, &times(2)).unwrap();
        assert_eq!(ext.values(), &[ExactCircle::q_power(1, 2)]);

        let c = FgAbGroup::from_cyclic_orders(&[z(2), z(6)], 1);
        let chi = GroupCharacter::new(
            c.clone(),
            vec![
                ExactCircle::root_of_unity(1, 2),
                ExactCircle::root_of_unity(5, 6),
                ExactCircle::q_power(3, 1),
            ],
        )
        .unwrap();
        assert_eq!(
            divisible_extension(&chi, &GroupHom::identity(&c)).unwrap(),
            chi
        );

        let zero = FgAbGroup::trivial();
        let incl = GroupHom::new(
            zero.clone(),
            c.clone(),
            IntMatrix::zeros(c.ambient_rank(), 0),
        )
        .unwrap();
        assert!(divisible_extension(&GroupCharacter::trivial(zero), &incl)
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn extension_into_torsion() {
        // Z/2 ⊂ Z/4 via 1 ↦ 2; the nontrivial character extends to order 4.
        let c2 = FgAbGroup::from_cyclic_orders(&[z(2)], 0);
        let c4 = FgAbGroup::from_cyclic_orders(&[z(4)], 0);
        let incl = GroupHom::new(c2.clone(), c4.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let chi = GroupCharacter::new(c2, vec![ExactCircle::root_of_unity(1, 2)]).unwrap();
        let ext = divisible_extension(&chi, &incl).unwrap();
        assert_eq!(ext.values()[0].order(), Some(z(4)));
        assert_eq!(character_restrict(&ext, &incl).unwrap(), chi);
        assert_eq!(ext.evaluate(&ivec(&[2])), ExactCircle::root_of_unity(1, 2));
    }
}
