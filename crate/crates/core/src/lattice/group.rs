use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, IntVector};
use super::smith::{
    column_span_basis, kernel_basis, smith_normal_form, solve_integer, solve_integer_matrix,
};
use super::LatticeError;

/// A free ℤ-module of finite rank, identified with integer column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub rank: usize,
    pub label: Option<String>,
}

impl Lattice {
    pub fn new(rank: usize) -> Self {
        Lattice { rank, label: None }
    }

    pub fn labelled(rank: usize, label: impl Into<String>) -> Self {
        Lattice {
            rank,
            label: Some(label.into()),
        }
    }
}

/// A ℤ-linear map between lattices; columns are images of source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    source: Lattice,
    target: Lattice,
    matrix: IntMatrix,
}

impl LatticeMap {
    pub fn new(source: Lattice, target: Lattice, matrix: IntMatrix) -> Result<Self, LatticeError> {
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(LatticeError::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank,
                source.rank
            )));
        }
        Ok(LatticeMap {
            source,
            target,
            matrix,
        })
    }

    /// Endomorphism of the unlabelled lattice of the matrix's size.
    pub fn endomorphism(matrix: IntMatrix) -> Result<Self, LatticeError> {
        if !matrix.is_square() {
            return Err(LatticeError::Dimension(
                "endomorphism matrix must be square".into(),
            ));
        }
        let l = Lattice::new(matrix.rows());
        Self::new(l.clone(), l, matrix)
    }

    pub fn source(&self) -> &Lattice {
        &self.source
    }

    pub fn target(&self) -> &Lattice {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> IntVector {
        self.matrix.apply(v)
    }
}

/// Finitely generated abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/d_k ⊕ ℤ^r` with
/// `d₁ | d₂ | … | d_k`, each `dᵢ ≥ 2`, together with a presentation
/// `ambient / image(relations)`.
///
/// Elements are written in canonical coordinates: one coordinate per torsion
/// generator (reduced into `[0, dᵢ)`), followed by one per free generator.
/// `projection` sends an ambient vector to its canonical coordinates and
/// `section` lifts canonical generators back to the ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    relations: IntMatrix,
    projection: LatticeMap,
    section: IntMatrix,
}

impl FgAbGroup {
    /// The group `ℤ^n / image(relations)` where `relations` is `n × m`.
    pub fn from_presentation(relations: IntMatrix) -> Self {
        let n = relations.rows();
        let snf = smith_normal_form(&relations);
        let inv = snf.invariants();
        let diag = |i: usize| inv.get(i).cloned().unwrap_or_else(BigInt::zero);
        let torsion: Vec<usize> = (0..n).filter(|&i| diag(i) > BigInt::one()).collect();
        let free: Vec<usize> = (0..n).filter(|&i| diag(i).is_zero()).collect();
        let idx: Vec<usize> = torsion.iter().chain(&free).copied().collect();
        let projection = LatticeMap {
            source: Lattice::labelled(n, "ambient"),
            target: Lattice::labelled(idx.len(), "canonical"),
            matrix: snf.left.select_rows(&idx),
        };
        FgAbGroup {
            invariant_factors: torsion.iter().map(|&i| diag(i)).collect(),
            free_rank: free.len(),
            relations,
            projection,
            section: snf.left_inverse.select_columns(&idx),
        }
    }

    /// `ℤ/o₁ ⊕ … ⊕ ℤ/o_k ⊕ ℤ^r` for arbitrary cyclic orders `oᵢ ≥ 0`
    /// (order 0 means ℤ, order 1 the trivial group). The result is in
    /// canonical invariant-factor form.
    pub fn from_cyclic_orders(orders: &[BigInt], free_rank: usize) -> Self {
        let k = orders.len() + free_rank;
        let mut rel = IntMatrix::zeros(k, orders.len());
        for (i, o) in orders.iter().enumerate() {
            rel[(i, i)] = o.clone();
        }
        Self::from_presentation(rel)
    }

    pub fn free(rank: usize) -> Self {
        Self::from_cyclic_orders(&[], rank)
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of canonical generators.
    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn ambient_rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn projection(&self) -> &LatticeMap {
        &self.projection
    }

    pub fn section(&self) -> &IntMatrix {
        &self.section
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Order of the `i`-th canonical generator; zero for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        self.invariant_factors
            .get(i)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Isomorphism test on canonical forms.
    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariant_factors == other.invariant_factors && self.free_rank == other.free_rank
    }

    pub fn zero(&self) -> IntVector {
        vec![BigInt::zero(); self.num_generators()]
    }

    pub fn generator(&self, i: usize) -> IntVector {
        let mut v = self.zero();
        v[i] = BigInt::one();
        v
    }

    pub fn reduce(&self, coords: &[BigInt]) -> IntVector {
        assert_eq!(
            coords.len(),
            self.num_generators(),
            "coordinate length mismatch"
        );
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| match self.invariant_factors.get(i) {
                Some(d) => c.mod_floor(d),
                None => c.clone(),
            })
            .collect()
    }

    /// Canonical coordinates of the class of an ambient vector.
    pub fn project(&self, ambient: &[BigInt]) -> IntVector {
        self.reduce(&self.projection.apply(ambient))
    }

    /// An ambient representative of the element with the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> IntVector {
        self.section.apply(coords)
    }

    /// Whether an ambient vector lies in the relation lattice.
    pub fn is_relation(&self, ambient: &[BigInt]) -> bool {
        self.project(ambient).iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> IntVector {
        let s: IntVector = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, a: &[BigInt], k: &BigInt) -> IntVector {
        let s: IntVector = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    /// Returns `None` for infinite groups or groups larger than `cap`.
    pub fn elements(&self, cap: usize) -> Option<Vec<IntVector>> {
        let order = self.order()?;
        if order > BigInt::from(cap) {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let d: usize = d.try_into().ok()?;
            out = out
                .into_iter()
                .flat_map(|prefix: IntVector| {
                    (0..d).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(BigInt::from(k));
                        v
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// The torsion subgroup with its inclusion.
    pub fn torsion_subgroup(&self) -> (FgAbGroup, GroupHom) {
        let t = self.torsion_rank();
        let sub = Self::from_cyclic_orders(&self.invariant_factors, 0);
        let ambient = self.section.select_columns(&(0..t).collect::<Vec<_>>());
        let incl = GroupHom::new(sub, self.clone(), ambient)
            .expect("torsion generators are killed by their orders");
        (incl.source.clone(), incl)
    }

    /// The quotient by torsion with its projection.
    pub fn free_quotient(&self) -> (FgAbGroup, GroupHom) {
        let t = self.torsion_rank();
        let quotient = Self::free(self.free_rank);
        let rows: Vec<usize> = (t..self.num_generators()).collect();
        let ambient = self.projection.matrix.select_rows(&rows);
        let proj = GroupHom::new(self.clone(), quotient, ambient)
            .expect("relations project to zero in free coordinates");
        (proj.target.clone(), proj)
    }

    /// External direct sum with the block presentation.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        Self::from_presentation(self.relations.direct_sum(&other.relations))
    }
}

impl fmt::Display for FgAbGroup {
    /// Canonical invariant-factor notation, e.g. `Z/2 + Z/4 + Z^2`; `0` when trivial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homomorphism between finitely generated abelian groups, given by a map of
/// ambient lattices that carries source relations into target relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    ambient: IntMatrix,
}

impl GroupHom {
    pub fn new(
        source: FgAbGroup,
        target: FgAbGroup,
        ambient: IntMatrix,
    ) -> Result<Self, LatticeError> {
        if ambient.rows() != target.ambient_rank() || ambient.cols() != source.ambient_rank() {
            return Err(LatticeError::Dimension(format!(
                "ambient map is {}x{}, expected {}x{}",
                ambient.rows(),
                ambient.cols(),
                target.ambient_rank(),
                source.ambient_rank()
            )));
        }
        for r in source.relations.columns() {
            if !target.is_relation(&ambient.apply(&r)) {
                return Err(LatticeError::RelationsNotPreserved);
            }
        }
        Ok(GroupHom {
            source,
            target,
            ambient,
        })
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            ambient: IntMatrix::identity(group.ambient_rank()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn ambient(&self) -> &IntMatrix {
        &self.ambient
    }

    pub fn apply(&self, coords: &[BigInt]) -> IntVector {
        self.target
            .project(&self.ambient.apply(&self.source.lift(coords)))
    }

    /// Matrix in canonical coordinates; column `j` is the image of generator `j`.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let cols: Vec<IntVector> = (0..self.source.num_generators())
            .map(|j| self.apply(&self.source.generator(j)))
            .collect();
        IntMatrix::from_columns(self.target.num_generators(), &cols)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, LatticeError> {
        if self.target != other.source {
            return Err(LatticeError::DomainMismatch);
        }
        GroupHom::new(
            self.source.clone(),
            other.target.clone(),
            &other.ambient * &self.ambient,
        )
    }

    /// `self - id` for an endomorphism.
    pub fn minus_identity(&self) -> Result<GroupHom, LatticeError> {
        if self.source != self.target {
            return Err(LatticeError::DomainMismatch);
        }
        GroupHom::new(
            self.source.clone(),
            self.target.clone(),
            self.ambient.minus_identity(),
        )
    }

    /// Kernel as an abstract group together with its inclusion into the source.
    ///
    /// Solves `F x ∈ image(R_target)` over the integers by adjoining the target
    /// relations as extra unknowns, then re-presents the source relations in a
    /// basis of the resulting lattice.
    pub fn kernel(&self) -> (FgAbGroup, GroupHom) {
        let n = self.source.ambient_rank();
        let system = self
            .ambient
            .hstack(&self.target.relations.scale(&BigInt::from(-1)));
        let kb = kernel_basis(&system);
        let xs = kb.select_rows(&(0..n).collect::<Vec<_>>());
        let basis = column_span_basis(&xs.hstack(&self.source.relations));
        let rel = solve_integer_matrix(&basis, &self.source.relations)
            .expect("source relations lie in the kernel lattice");
        let sub = FgAbGroup::from_presentation(rel);
        let incl = GroupHom {
            source: sub.clone(),
            target: self.source.clone(),
            ambient: basis,
        };
        (sub, incl)
    }

    /// Homomorphism given by its matrix in canonical coordinates.
    pub fn from_canonical(
        source: FgAbGroup,
        target: FgAbGroup,
        canonical: &IntMatrix,
    ) -> Result<Self, LatticeError> {
        if canonical.rows() != target.num_generators()
            || canonical.cols() != source.num_generators()
        {
            return Err(LatticeError::Dimension(
                "canonical matrix has the wrong shape".into(),
            ));
        }
        let ambient = &(&target.section * canonical) * source.projection.matrix();
        GroupHom::new(source, target, ambient)
    }

    /// Some `x` with `self(x) = y`, if `y` lies in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<IntVector> {
        let t = &self.target;
        let torsion = IntMatrix::from_fn(t.num_generators(), t.torsion_rank(), |i, j| {
            if i == j {
                t.generator_order(i)
            } else {
                BigInt::zero()
            }
        });
        let system = self.canonical_matrix().hstack(&torsion);
        let x = solve_integer(&system, &t.reduce(y))?;
        Some(self.source.reduce(&x[..self.source.num_generators()]))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    /// Surjectivity: the image together with the target relations spans the ambient.
    pub fn is_surjective(&self) -> bool {
        let gens = self.ambient.hstack(&self.target.relations);
        FgAbGroup::from_presentation(gens).is_trivial()
    }
}

/// `target / image(map)`, retaining the projection from `target`.
pub fn cokernel(map: &LatticeMap) -> FgAbGroup {
    FgAbGroup::from_presentation(map.matrix.clone())
}

/// Inclusion of the saturated sublattice `{x : map(x) = 0}`.
pub fn kernel(map: &LatticeMap) -> LatticeMap {
    let basis = kernel_basis(&map.matrix);
    LatticeMap {
        source: Lattice::labelled(basis.cols(), "kernel"),
        target: map.source.clone(),
        matrix: basis,
    }
}

/// Coinvariants `L / Σ (γᵢ − 1)L` of the group generated by `gens`.
pub fn coinvariants(lattice: &Lattice, gens: &[LatticeMap]) -> Result<FgAbGroup, LatticeError> {
    let mut rel = IntMatrix::zeros(lattice.rank, 0);
    for (index, g) in gens.iter().enumerate() {
        if g.source.rank != lattice.rank || g.target.rank != lattice.rank {
            return Err(LatticeError::Dimension(format!(
                "generator {index} does not act on the lattice"
            )));
        }
        if !g.matrix.is_unimodular() {
            return Err(LatticeError::NotUnimodular { index });
        }
        rel = rel.hstack(&g.matrix.minus_identity());
    }
    Ok(FgAbGroup::from_presentation(rel))
}

/// Fixed subgroup `ker(f − 1)` of an endomorphism `f` of `C`, with its inclusion.
pub fn invariants_of_induced_action(
    group: &FgAbGroup,
    f: &GroupHom,
) -> Result<(FgAbGroup, GroupHom), LatticeError> {
    if f.source != *group || f.target != *group {
        return Err(LatticeError::DomainMismatch);
    }
    Ok(f.minus_identity()?.kernel())
}

/// Pontryagin dual of a finite group; finite abelian groups are self-dual, so
/// the invariant factors are unchanged.
pub fn finite_dual(group: &FgAbGroup) -> Result<FgAbGroup, LatticeError> {
    if !group.is_finite() {
        return Err(LatticeError::NotFinite(group.free_rank));
    }
    Ok(FgAbGroup::from_cyclic_orders(&group.invariant_factors, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::ivec;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn map(rows: &[Vec<i64>]) -> LatticeMap {
        LatticeMap::endomorphism(IntMatrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&map(&[vec![-2]])).to_string(), "Z/2");
        assert_eq!(cokernel(&map(&[vec![-1, 1], vec![1, -1]])).to_string(), "Z");
        assert_eq!(cokernel(&map(&[vec![0, 0], vec![0, 0]])).to_string(), "Z^2");
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&map(&[vec![-1, 1], vec![1, -1]]));
        assert_eq!(k.matrix().cols(), 1);
        let c = k.matrix().column(0);
        assert!(c == ivec(&[1, 1]) || c == ivec(&[-1, -1]));
        assert_eq!(kernel(&map(&[vec![1, 0], vec![0, 1]])).source().rank, 0);
        assert_eq!(
            kernel(&LatticeMap::endomorphism(IntMatrix::zeros(3, 3)).unwrap())
                .source()
                .rank,
            3
        );
    }

    #[test]
    fn kernel_is_saturated() {
        // x ↦ 2x on the first coordinate, kills the second.
        let k = kernel(
            &LatticeMap::new(
                Lattice::new(2),
                Lattice::new(1),
                IntMatrix::from_rows(&[vec![2, 4]]),
            )
            .unwrap(),
        );
        let quotient = FgAbGroup::from_presentation(k.matrix().clone());
        assert_eq!(quotient.torsion_rank(), 0);
    }

    #[test]
    fn coinvariant_examples() {
        assert_eq!(
            coinvariants(&Lattice::new(1), &[map(&[vec![-1]])])
                .unwrap()
                .to_string(),
            "Z/2"
        );
        let swap = map(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            coinvariants(&Lattice::new(2), &[swap]).unwrap().to_string(),
            "Z"
        );
        assert_eq!(
            coinvariants(&Lattice::new(3), &[]).unwrap().to_string(),
            "Z^3"
        );
        let bad = map(&[vec![2]]);
        assert_eq!(
            coinvariants(&Lattice::new(1), &[bad]),
            Err(LatticeError::NotUnimodular { index: 0 })
        );
    }

    #[test]
    fn invariants_examples() {
        let c2 = FgAbGroup::from_cyclic_orders(&[z(2)], 0);
        let (inv, _) = invariants_of_induced_action(&c2, &GroupHom::identity(&c2)).unwrap();
        assert_eq!(inv.to_string(), "Z/2");

        let z2 = FgAbGroup::free(2);
        let swap = GroupHom::new(
            z2.clone(),
            z2.clone(),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        let (inv, incl) = invariants_of_induced_action(&z2, &swap).unwrap();
        assert_eq!(inv.to_string(), "Z");
        let image = incl.apply(&inv.generator(0));
        assert_eq!(image[0], image[1]);

        let c4 = FgAbGroup::from_cyclic_orders(&[z(4)], 0);
        let times3 =
            GroupHom::new(c4.clone(), c4.clone(), IntMatrix::from_rows(&[vec![3]])).unwrap();
        let (inv, incl) = invariants_of_induced_action(&c4, &times3).unwrap();
        assert_eq!(inv.to_string(), "Z/2");
        assert_eq!(incl.apply(&inv.generator(0)), c4.reduce(&ivec(&[2])));
    }

    #[test]
    fn endomorphism_must_respect_relations() {
        // On Z^2 / <(2, 0)>, the swap does not descend.
        let g = FgAbGroup::from_presentation(IntMatrix::from_rows(&[vec![2], vec![0]]));
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            GroupHom::new(g.clone(), g, swap),
            Err(LatticeError::RelationsNotPreserved)
        );
    }

    #[test]
    fn finite_dual_examples() {
        let g = FgAbGroup::from_cyclic_orders(&[z(2), z(4)], 0);
        assert!(finite_dual(&g).unwrap().is_isomorphic(&g));
        assert!(finite_dual(&FgAbGroup::trivial()).unwrap().is_trivial());
        assert_eq!(
            finite_dual(&FgAbGroup::free(1)),
            Err(LatticeError::NotFinite(1))
        );
    }

    #[test]
    fn canonical_form_merges_coprime_orders() {
        let g = FgAbGroup::from_cyclic_orders(&[z(2), z(3), z(1), z(0)], 1);
        assert_eq!(g.to_string(), "Z/6 + Z^2");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn torsion_and_free_parts() {
        let g = FgAbGroup::from_presentation(IntMatrix::from_rows(&[vec![2], vec![2], vec![0]]));
        assert_eq!(g.to_string(), "Z/2 + Z^2");
        let (t, incl) = g.torsion_subgroup();
        assert_eq!(t.to_string(), "Z/2");
        assert!(incl.is_injective());
        let (f, proj) = g.free_quotient();
        assert_eq!(f.to_string(), "Z^2");
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel().0.to_string(), "Z/2");
    }

    #[test]
    fn element_enumeration() {
        let g = FgAbGroup::from_cyclic_orders(&[z(2), z(4)], 0);
        let els = g.elements(100).unwrap();
        assert_eq!(els.len(), 8);
        assert!(g.elements(4).is_none());
        assert!(FgAbGroup::free(1).elements(100).is_none());
    }
}
