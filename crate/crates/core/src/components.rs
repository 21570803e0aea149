//! Component groups of fixed points in diagonalizable groups, and the
//! structural checks on `Ĝ^τ` for a pinned automorphism `τ`.
//!
//! For a diagonalizable `D` with character group `M`, `D^τ` has character
//! group `M_τ`, so `π₀(D^τ)` is dual to the torsion of `M_τ`.

use crate::lattice::{
    finite_dual, smith_normal_form, FgAbGroup, GroupHom, IntMatrix, LatticeError, SmithForm,
};
use crate::root_datum::{
    dual_datum, fixed_weyl_subgroup, folded_generators, weyl_group_with_cap, BasedRootDatum,
    DatumError, PinnedAutomorphism, WeylGroup, DEFAULT_WEYL_CAP,
};

/// `D = Hom(M, ℂ×)` with automorphisms of `M` given on its ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalizableGroup {
    pub char_group: FgAbGroup,
    pub actions: Vec<IntMatrix>,
}

impl DiagonalizableGroup {
    pub fn new(char_group: FgAbGroup, actions: Vec<IntMatrix>) -> Result<Self, LatticeError> {
        for a in &actions {
            GroupHom::new(char_group.clone(), char_group.clone(), a.clone())?;
        }
        Ok(DiagonalizableGroup {
            char_group,
            actions,
        })
    }

    /// Torus with character lattice `ℤⁿ`.
    pub fn torus(actions: Vec<IntMatrix>) -> Result<Self, LatticeError> {
        let n = actions.first().map_or(0, IntMatrix::rows);
        Self::new(FgAbGroup::free(n), actions)
    }

    /// `M_τ` presented on the ambient lattice of `M`.
    pub fn fixed_character_group(&self) -> FgAbGroup {
        FgAbGroup::from_presentation(self.presentation())
    }

    fn presentation(&self) -> IntMatrix {
        self.actions
            .iter()
            .fold(self.char_group.relations().clone(), |acc, a| {
                acc.hstack(&a.minus_identity())
            })
    }

    pub fn product(&self, other: &DiagonalizableGroup) -> Result<Self, LatticeError> {
        if self.actions.len() != other.actions.len() {
            return Err(LatticeError::Dimension(
                "products need the same number of actions".into(),
            ));
        }
        let char_group = FgAbGroup::from_presentation(
            self.char_group
                .relations()
                .direct_sum(other.char_group.relations()),
        );
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::new(char_group, actions)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0Certificate {
    /// `π₀(D^τ)`; finite.
    pub group: FgAbGroup,
    /// `M_τ`, whose torsion is dual to `group`.
    pub coinvariants: FgAbGroup,
    /// Smith form of the presentation matrix of `M_τ`.
    pub witness: SmithForm,
}

impl Pi0Certificate {
    pub fn is_connected(&self) -> bool {
        self.group.is_trivial()
    }
}

pub fn pi0_fixed(d: &DiagonalizableGroup) -> Pi0Certificate {
    let presentation = d.presentation();
    let coinvariants = FgAbGroup::from_presentation(presentation.clone());
    let (torsion, _) = coinvariants.torsion_subgroup();
    Pi0Certificate {
        group: finite_dual(&torsion).expect("torsion subgroups are finite"),
        coinvariants,
        witness: smith_normal_form(&presentation),
    }
}

/// Action of `τ` on `X^*(T̂) = X∨` by the contragredient matrix.
fn dual_action(tau: &PinnedAutomorphism) -> IntMatrix {
    tau.dual_matrix().clone()
}

/// `π₀((T̂_ad)^τ)`, where `X^*(T̂_ad)` is the coroot lattice of `datum`.
/// `τ` permutes its basis of simple coroots.
pub fn check_tad_connected(datum: &BasedRootDatum, tau: &PinnedAutomorphism) -> Pi0Certificate {
    let l = datum.semisimple_rank();
    let perm = tau.simple_permutation();
    let m = IntMatrix::from_fn(l, l, |i, j| if perm[j] == i { 1.into() } else { 0.into() });
    pi0_fixed(&DiagonalizableGroup::torus(vec![m]).expect("permutations are automorphisms"))
}

/// Surjectivity of `π₀(Ẑ^τ) → π₀(T̂^τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterCoverCertificate {
    pub surjective: bool,
    pub pi0_center: FgAbGroup,
    pub pi0_torus: FgAbGroup,
    /// Kernel of `torsion(X^*(T̂)_τ) → X^*(Ẑ)_τ`; the map on `π₀` is onto iff it is trivial.
    pub obstruction: FgAbGroup,
}

/// `X^*(Ẑ) = X∨ / ℤΦ∨` is a quotient of `X^*(T̂) = X∨`. Dualizing, the map on
/// component groups is onto exactly when the torsion of `(X∨)_τ` injects
/// into `(X∨/ℤΦ∨)_τ`.
pub fn check_center_covers_components(
    datum: &BasedRootDatum,
    tau: &PinnedAutomorphism,
) -> CenterCoverCertificate {
    let f = dual_action(tau);
    let n = datum.rank();
    let t_hat = DiagonalizableGroup::new(FgAbGroup::free(n), vec![f.clone()]).expect("pinned");
    let z_hat =
        DiagonalizableGroup::new(FgAbGroup::from_presentation(datum.coroot_matrix()), vec![f])
            .expect("pinned automorphisms preserve the coroot lattice");
    let (mt, mz) = (t_hat.fixed_character_group(), z_hat.fixed_character_group());
    let quotient =
        GroupHom::new(mt.clone(), mz.clone(), IntMatrix::identity(n)).expect("relations only grow");
    let (_, incl) = mt.torsion_subgroup();
    let restricted = incl.then(&quotient).expect("composable");
    let (obstruction, _) = restricted.kernel();
    CenterCoverCertificate {
        surjective: obstruction.is_trivial(),
        pi0_center: pi0_fixed(&z_hat).group,
        pi0_torus: pi0_fixed(&t_hat).group,
        obstruction,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldCheck {
    pub fixed_order: usize,
    pub folded_order: usize,
    pub equal: bool,
}

/// Compares `W^τ` with the group generated by the folded generators, both
/// acting on `X^*(T̂) = X∨` of the dual datum.
pub fn check_fixed_weyl_is_folded(
    datum: &BasedRootDatum,
    tau: &PinnedAutomorphism,
) -> Result<FoldCheck, DatumError> {
    check_fixed_weyl_is_folded_with_cap(datum, tau, DEFAULT_WEYL_CAP)
}

pub fn check_fixed_weyl_is_folded_with_cap(
    datum: &BasedRootDatum,
    tau: &PinnedAutomorphism,
    cap: usize,
) -> Result<FoldCheck, DatumError> {
    let dual = dual_datum(datum)?;
    let tau_hat = PinnedAutomorphism::new(&dual, dual_action(tau))?;
    let fixed = fixed_weyl_subgroup(
        &weyl_group_with_cap(&dual, cap)?,
        std::slice::from_ref(&tau_hat),
    );
    let gens = folded_generators(&dual, &tau_hat)?
        .into_iter()
        .map(|g| g.matrix)
        .collect();
    let folded = WeylGroup::generated_by(dual.rank(), gens, cap)?;
    Ok(FoldCheck {
        fixed_order: fixed.order(),
        folded_order: folded.order(),
        equal: fixed.same_elements(&folded),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::presets::{diagram_flip, semisimple, Family, Form};

    #[test]
    fn pi0_examples() {
        let minus = DiagonalizableGroup::torus(vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
        assert_eq!(pi0_fixed(&minus).group.to_string(), "Z/2");
        let id = DiagonalizableGroup::torus(vec![IntMatrix::identity(2)]).unwrap();
        assert!(pi0_fixed(&id).is_connected());
        let swap =
            DiagonalizableGroup::torus(vec![IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])])
                .unwrap();
        assert!(pi0_fixed(&swap).is_connected());
        let both = minus.product(&minus).unwrap();
        assert_eq!(pi0_fixed(&both).group.to_string(), "Z/2 + Z/2");
    }

    #[test]
    fn a3_flip_checks() {
        for form in [Form::SimplyConnected, Form::Adjoint] {
            let d = semisimple(Family::A, 3, form);
            let t = diagram_flip(&d, Family::A, 3).unwrap();
            assert!(check_tad_connected(&d, &t).is_connected());
            assert!(check_center_covers_components(&d, &t).surjective);
            let f = check_fixed_weyl_is_folded(&d, &t).unwrap();
            assert_eq!((f.fixed_order, f.folded_order, f.equal), (8, 8, true));
        }
    }

    #[test]
    fn identity_checks() {
        let d = semisimple(Family::B, 2, Form::SimplyConnected);
        let t = PinnedAutomorphism::identity(&d);
        assert!(check_tad_connected(&d, &t).is_connected());
        let c = check_center_covers_components(&d, &t);
        assert!(c.surjective && c.pi0_torus.is_trivial());
        assert!(check_fixed_weyl_is_folded(&d, &t).unwrap().equal);
    }

    #[test]
    fn torus_center_is_everything() {
        let d = BasedRootDatum::torus(1);
        let minus = PinnedAutomorphism::new(&d, IntMatrix::from_rows(&[vec![-1]])).unwrap();
        let c = check_center_covers_components(&d, &minus);
        assert!(c.surjective);
        assert_eq!(c.pi0_center, c.pi0_torus);
        assert_eq!(c.pi0_torus.to_string(), "Z/2");
    }
}
