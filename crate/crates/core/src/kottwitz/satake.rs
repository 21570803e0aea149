use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{kottwitz_group, kottwitz_map, KottwitzError, KottwitzGroup, TorusWithAction};
use crate::lattice::{dot, unimodular_inverse, ExactCircle, GroupCharacter, GroupHom, IntMatrix};
use crate::root_datum::{
    fixed_weyl_subgroup, weyl_group_with_cap, BasedRootDatum, GaloisAction, WeylGroup,
    DEFAULT_WEYL_CAP,
};

/// A character of `T/T₀`, compared up to the relative Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SatakeParameter {
    pub character: GroupCharacter,
}

impl SatakeParameter {
    pub fn values(&self) -> &[ExactCircle] {
        self.character.values()
    }
}

/// Orbit of a parameter under `W^{τ,σ}`, represented by its least member in
/// the lexicographic order of value tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterClass {
    pub representative: SatakeParameter,
    pub orbit_size: usize,
}

/// Everything needed to compare parameters for one quasi-split group: the
/// Kottwitz group of its maximal torus and the action of `W^{τ,σ}` on it.
#[derive(Clone, Debug)]
pub struct SatakeContext {
    datum: BasedRootDatum,
    action: GaloisAction,
    torus: TorusWithAction,
    kottwitz: KottwitzGroup,
    relative_weyl: WeylGroup,
    position: HashMap<IntMatrix, usize>,
    /// Action of each element of `relative_weyl` on `T/T₀`, same order.
    on_kottwitz: Vec<GroupHom>,
}

impl SatakeContext {
    pub fn new(datum: &BasedRootDatum, action: &GaloisAction) -> Result<Self, KottwitzError> {
        Self::with_cap(datum, action, DEFAULT_WEYL_CAP)
    }

    /// `cap` bounds the size of the absolute Weyl group enumerated.
    pub fn with_cap(
        datum: &BasedRootDatum,
        action: &GaloisAction,
        cap: usize,
    ) -> Result<Self, KottwitzError> {
        let torus = TorusWithAction::from_datum(datum, action)?;
        let kottwitz = kottwitz_group(&torus)?;
        let w = weyl_group_with_cap(datum, cap)?;
        let relative_weyl =
            fixed_weyl_subgroup(&w, &[action.tau().clone(), action.sigma().clone()]);
        let mut on_kottwitz = Vec::with_capacity(relative_weyl.order());
        for x in relative_weyl.elements() {
            let dual = unimodular_inverse(x)
                .expect("Weyl elements are invertible")
                .transpose();
            on_kottwitz.push(kottwitz_map(&torus, &torus, &dual)?.0);
        }
        let position = relative_weyl
            .elements()
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(SatakeContext {
            datum: datum.clone(),
            action: action.clone(),
            torus,
            kottwitz,
            relative_weyl,
            position,
            on_kottwitz,
        })
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn action(&self) -> &GaloisAction {
        &self.action
    }

    pub fn torus(&self) -> &TorusWithAction {
        &self.torus
    }

    pub fn kottwitz(&self) -> &KottwitzGroup {
        &self.kottwitz
    }

    /// `W^{τ,σ}` acting on `X`.
    pub fn relative_weyl(&self) -> &WeylGroup {
        &self.relative_weyl
    }

    pub fn parameter_from_character(
        &self,
        chi: GroupCharacter,
    ) -> Result<SatakeParameter, KottwitzError> {
        if chi.domain() != &self.kottwitz.group {
            return Err(KottwitzError::DomainMismatch);
        }
        Ok(SatakeParameter { character: chi })
    }

    /// Parameter with the given values on the canonical generators of `T/T₀`.
    pub fn parameter_from_values(
        &self,
        values: Vec<ExactCircle>,
    ) -> Result<SatakeParameter, KottwitzError> {
        let chi = GroupCharacter::new(self.kottwitz.group.clone(), values)?;
        self.parameter_from_character(chi)
    }

    /// Restriction to `T/T₀` of the character of `X_*(T)` with the given
    /// values on its standard basis; it must be trivial on `(τ − 1)X_*(T)`.
    pub fn parameter_from_cocharacter_values(
        &self,
        values: &[ExactCircle],
    ) -> Result<SatakeParameter, KottwitzError> {
        let on_coinvariants =
            GroupCharacter::from_ambient(self.kottwitz.coinvariants.clone(), values)?;
        self.parameter_from_character(on_coinvariants.pullback(&self.kottwitz.inclusion)?)
    }

    /// `(w·χ)(x) = χ(w⁻¹x)` for `w ∈ W^{τ,σ}` given as a matrix on `X`.
    pub fn relative_weyl_action(
        &self,
        w: &IntMatrix,
        p: &SatakeParameter,
    ) -> Result<SatakeParameter, KottwitzError> {
        let inv = unimodular_inverse(w).ok_or(KottwitzError::NotInRelativeWeyl)?;
        let &i = self
            .position
            .get(&inv)
            .ok_or(KottwitzError::NotInRelativeWeyl)?;
        self.check_domain(p)?;
        Ok(SatakeParameter {
            character: p.character.pullback(&self.on_kottwitz[i])?,
        })
    }

    fn check_domain(&self, p: &SatakeParameter) -> Result<(), KottwitzError> {
        if p.character.domain() == &self.kottwitz.group {
            Ok(())
        } else {
            Err(KottwitzError::DomainMismatch)
        }
    }

    /// Value tuples of the orbit, in increasing order.
    pub fn orbit(&self, p: &SatakeParameter) -> Result<BTreeSet<Vec<ExactCircle>>, KottwitzError> {
        self.check_domain(p)?;
        self.on_kottwitz
            .iter()
            .map(|h| Ok(p.character.pullback(h)?.values().to_vec()))
            .collect()
    }

    pub fn classify(&self, p: &SatakeParameter) -> Result<ParameterClass, KottwitzError> {
        let orbit = self.orbit(p)?;
        let least = orbit.iter().next().expect("orbit contains p").clone();
        Ok(ParameterClass {
            representative: self.parameter_from_values(least)?,
            orbit_size: orbit.len(),
        })
    }

    pub fn parameters_equal(
        &self,
        p: &SatakeParameter,
        other: &SatakeParameter,
    ) -> Result<bool, KottwitzError> {
        Ok(self.classify(p)?.representative == self.classify(other)?.representative)
    }

    /// `δ^{1/2}(x) = q^{⟨2ρ, x̃⟩/2}` for any cocharacter `x̃` lifting `x`.
    pub fn modulus_character(&self, x: &[BigInt]) -> ExactCircle {
        let pairing = dot(&self.datum.two_rho(), &self.kottwitz.lift(x));
        let pairing = i64::try_from(pairing).expect("pairing fits in i64");
        ExactCircle::q_power(pairing, 2)
    }

    /// All classes of parameters whose values are `n`-th roots of unity,
    /// sorted by representative. Fails if more than `cap` characters exist.
    pub fn torsion_classes(
        &self,
        n: u64,
        cap: usize,
    ) -> Result<Vec<ParameterClass>, KottwitzError> {
        let group = &self.kottwitz.group;
        let n_big = BigInt::from(n);
        let mut choices: Vec<Vec<ExactCircle>> = Vec::new();
        let mut total: usize = 1;
        for i in 0..group.num_generators() {
            let d = group.generator_order(i);
            let m = if d.is_zero() {
                n_big.clone()
            } else {
                num_integer::Integer::gcd(&d, &n_big)
            };
            let m = i64::try_from(m).expect("small torsion");
            total = total.saturating_mul(m as usize);
            if total > cap {
                return Err(KottwitzError::OrbitCap(cap));
            }
            choices.push((0..m).map(|k| ExactCircle::root_of_unity(k, m)).collect());
        }
        let mut tuples: Vec<Vec<ExactCircle>> = vec![Vec::new()];
        for c in &choices {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    c.iter().map(move |v| {
                        let mut t = t.clone();
                        t.push(v.clone());
                        t
                    })
                })
                .collect();
        }
        let mut classes: BTreeSet<(Vec<ExactCircle>, usize)> = BTreeSet::new();
        for t in tuples {
            let class = self.classify(&self.parameter_from_values(t)?)?;
            classes.insert((class.representative.values().to_vec(), class.orbit_size));
        }
        classes
            .into_iter()
            .map(|(v, orbit_size)| {
                Ok(ParameterClass {
                    representative: self.parameter_from_values(v)?,
                    orbit_size,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::presets::{general_linear, semisimple, Family, Form};

    fn q(n: i64) -> ExactCircle {
        ExactCircle::q_power(n, 1)
    }

    fn sl2() -> SatakeContext {
        let d = semisimple(Family::A, 1, Form::SimplyConnected);
        SatakeContext::new(&d, &GaloisAction::trivial(&d)).unwrap()
    }

    #[test]
    fn sl2_parameters() {
        let ctx = sl2();
        assert_eq!(ctx.kottwitz().group.to_string(), "Z");
        let p = ctx.parameter_from_cocharacter_values(&[q(1)]).unwrap();
        let p_inv = ctx.parameter_from_cocharacter_values(&[q(-1)]).unwrap();
        let p2 = ctx.parameter_from_cocharacter_values(&[q(2)]).unwrap();
        assert!(ctx.parameters_equal(&p, &p_inv).unwrap());
        assert!(!ctx.parameters_equal(&p, &p2).unwrap());
        assert_eq!(ctx.classify(&p).unwrap().orbit_size, 2);

        let s = ctx.datum().reflection(0);
        assert_eq!(ctx.relative_weyl_action(&s, &p).unwrap(), p_inv);
        let id = IntMatrix::identity(1);
        assert_eq!(ctx.relative_weyl_action(&id, &p).unwrap(), p);

        let sign = ctx
            .parameter_from_cocharacter_values(&[ExactCircle::root_of_unity(1, 2)])
            .unwrap();
        assert_eq!(ctx.classify(&sign).unwrap().orbit_size, 1);
        assert_eq!(ctx.torsion_classes(2, 100).unwrap().len(), 2);
    }

    #[test]
    fn sl2_modulus() {
        let ctx = sl2();
        let coroot = ctx
            .kottwitz()
            .class_of(&crate::lattice::ivec(&[1]))
            .unwrap();
        assert_eq!(ctx.modulus_character(&coroot), q(1));
        assert!(ctx
            .modulus_character(&ctx.kottwitz().group.zero())
            .is_identity());
    }

    #[test]
    fn gl2_classes() {
        let d = general_linear(2);
        let ctx = SatakeContext::new(&d, &GaloisAction::trivial(&d)).unwrap();
        let a = ctx
            .parameter_from_cocharacter_values(&[q(1), q(0)])
            .unwrap();
        let b = ctx
            .parameter_from_cocharacter_values(&[q(0), q(1)])
            .unwrap();
        let c = ctx
            .parameter_from_cocharacter_values(&[q(1), q(1)])
            .unwrap();
        assert!(ctx.parameters_equal(&a, &b).unwrap());
        assert!(!ctx.parameters_equal(&a, &c).unwrap());
    }

    #[test]
    fn foreign_elements_rejected() {
        let d = semisimple(Family::A, 2, Form::Adjoint);
        let flip = crate::root_datum::presets::diagram_flip(&d, Family::A, 2).unwrap();
        let action =
            GaloisAction::new(flip, crate::root_datum::PinnedAutomorphism::identity(&d), 1)
                .unwrap();
        let u3 = SatakeContext::new(&d, &action).unwrap();
        assert_eq!(u3.relative_weyl().order(), 2);
        let p = u3
            .parameter_from_values(vec![
                ExactCircle::identity();
                u3.kottwitz().group.num_generators()
            ])
            .unwrap();
        assert!(matches!(
            u3.relative_weyl_action(&d.reflection(0), &p),
            Err(KottwitzError::NotInRelativeWeyl)
        ));
        let ctx = sl2();
        let d = general_linear(2);
        let gl = SatakeContext::new(&d, &GaloisAction::trivial(&d)).unwrap();
        let p = gl.parameter_from_values(vec![q(1), q(0)]).unwrap();
        assert!(matches!(
            ctx.classify(&p),
            Err(KottwitzError::DomainMismatch)
        ));
    }
}
