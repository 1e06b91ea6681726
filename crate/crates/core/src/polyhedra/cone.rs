use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    hermite_basis, integer_kernel, orthogonal_complement, rank_of, IntMatrix, LatticePoint,
    RationalPoint,
};

/// A rational polyhedral cone with both descriptions.
///
/// The cone is `cone(rays) + span(lineality)` and equally
/// `{x : f·x >= 0 for f in facets, e·x = 0 for e in equations}`.
/// All four lists are canonical, so structural equality is cone equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalCone {
    dim: usize,
    rays: Vec<LatticePoint>,
    lineality: Vec<LatticePoint>,
    facets: Vec<LatticePoint>,
    equations: Vec<LatticePoint>,
}

/// Facet normals and equations of the cone generated by `gens` (brute force).
pub(crate) fn h_rep(gens: &[LatticePoint], dim: usize) -> (Vec<LatticePoint>, Vec<LatticePoint>) {
    let gens: Vec<LatticePoint> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let eqs = orthogonal_complement(&gens, dim);
    let k = dim - eqs.len();
    if k == 0 {
        return (Vec::new(), eqs);
    }
    let mut facets = BTreeSet::new();
    for subset in gens.iter().combinations(k - 1) {
        let mut rows: Vec<LatticePoint> = subset.into_iter().cloned().collect();
        if rank_of(&rows, dim) != k - 1 {
            continue;
        }
        rows.extend(eqs.iter().cloned());
        let ker = integer_kernel(&IntMatrix::from_rows(&rows, dim));
        if ker.len() != 1 {
            continue;
        }
        let u = ker[0].primitive().expect("kernel vector is nonzero");
        let signs: Vec<_> = gens.iter().map(|g| u.dot(g)).collect();
        if signs.iter().all(|s| !s.is_negative()) {
            facets.insert(u);
        } else if signs.iter().all(|s| !s.is_positive()) {
            facets.insert(-&u);
        }
    }
    (facets.into_iter().collect(), eqs)
}

fn with_negatives(vs: &[LatticePoint]) -> Vec<LatticePoint> {
    vs.iter().cloned().chain(vs.iter().map(|v| -v)).collect()
}

impl RationalCone {
    /// The cone generated by the given vectors.
    pub fn from_generators(dim: usize, gens: &[LatticePoint]) -> Result<Self> {
        check_dims(dim, gens)?;
        let (facets, equations) = h_rep(gens, dim);
        let mut dual_gens = facets.clone();
        dual_gens.extend(with_negatives(&equations));
        let (rays, lineality) = h_rep(&dual_gens, dim);
        Ok(RationalCone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        })
    }

    /// The cone `{x : f·x >= 0, e·x = 0}`.
    pub fn from_inequalities(
        dim: usize,
        ineqs: &[LatticePoint],
        eqs: &[LatticePoint],
    ) -> Result<Self> {
        check_dims(dim, ineqs)?;
        check_dims(dim, eqs)?;
        let mut dual_gens = ineqs.to_vec();
        dual_gens.extend(with_negatives(eqs));
        let (rays, lineality) = h_rep(&dual_gens, dim);
        let mut gens = rays.clone();
        gens.extend(with_negatives(&lineality));
        let (facets, equations) = h_rep(&gens, dim);
        Ok(RationalCone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        })
    }

    pub fn from_i64_rays(rays: &[&[i64]]) -> Self {
        let dim = rays.first().map_or(0, |r| r.len());
        let gens: Vec<_> = rays.iter().map(|r| LatticePoint::from_i64(r)).collect();
        Self::from_generators(dim, &gens).expect("consistent dimensions")
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, &[]).expect("no generators")
    }

    pub fn orthant(dim: usize) -> Self {
        let gens: Vec<_> = (0..dim).map(|i| LatticePoint::unit(dim, i)).collect();
        Self::from_generators(dim, &gens).expect("unit vectors")
    }

    pub fn whole_space(dim: usize) -> Self {
        let gens: Vec<_> = (0..dim).map(|i| LatticePoint::unit(dim, i)).collect();
        Self::from_generators(dim, &with_negatives(&gens)).expect("unit vectors")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Primitive extreme ray generators (modulo the lineality space).
    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticePoint] {
        &self.lineality
    }

    /// Primitive inner facet normals.
    pub fn facet_normals(&self) -> &[LatticePoint] {
        &self.facets
    }

    pub fn equations(&self) -> &[LatticePoint] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Generators including both signs of the lineality basis.
    pub fn generators(&self) -> Vec<LatticePoint> {
        let mut g = self.rays.clone();
        g.extend(with_negatives(&self.lineality));
        g
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.facets.iter().all(|f| !f.dot(x).is_negative())
            && self.equations.iter().all(|e| e.dot(x).is_zero())
    }

    pub fn contains_rational(&self, x: &RationalPoint) -> bool {
        let den = x.denominator_lcm();
        let scaled = LatticePoint(x.0.iter().map(|c| (c * &den).to_integer()).collect());
        self.contains(&scaled)
    }

    /// Interior relative to the linear span.
    pub fn contains_in_relative_interior(&self, x: &LatticePoint) -> bool {
        self.facets.iter().all(|f| f.dot(x).is_positive())
            && self.equations.iter().all(|e| e.dot(x).is_zero())
    }

    pub fn dual(&self) -> RationalCone {
        RationalCone {
            dim: self.dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersect(&self, other: &RationalCone) -> Result<RationalCone> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "cones in dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let ineqs: Vec<_> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<_> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        RationalCone::from_inequalities(self.dim, &ineqs, &eqs)
    }

    /// The face cut out by the supporting functional `u` (which must be nonnegative on the cone).
    pub fn face_for(&self, u: &LatticePoint) -> Result<RationalCone> {
        if !self.generators().iter().all(|g| !u.dot(g).is_negative()) {
            return Err(Error::NotAFace(format!(
                "{u} is not nonnegative on the cone"
            )));
        }
        let gens: Vec<_> = self
            .generators()
            .into_iter()
            .filter(|g| u.dot(g).is_zero())
            .collect();
        RationalCone::from_generators(self.dim, &gens)
    }

    /// All faces, including the minimal face and the cone itself.
    pub fn faces(&self) -> Vec<RationalCone> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for k in 0..=self.facets.len() {
            for s in (0..self.facets.len()).combinations(k) {
                let rays: Vec<usize> = (0..self.rays.len())
                    .filter(|&r| {
                        s.iter()
                            .all(|&f| self.facets[f].dot(&self.rays[r]).is_zero())
                    })
                    .collect();
                if seen.insert(rays.clone()) {
                    let mut gens: Vec<_> = rays.iter().map(|&r| self.rays[r].clone()).collect();
                    gens.extend(with_negatives(&self.lineality));
                    out.push(
                        RationalCone::from_generators(self.dim, &gens).expect("same dimension"),
                    );
                }
            }
        }
        out.sort_by_key(|c| (c.dimension(), c.rays.clone()));
        out
    }

    pub fn is_face_of(&self, other: &RationalCone) -> bool {
        other.faces().contains(self)
    }

    /// Smooth: pointed and the rays extend to a lattice basis.
    pub fn is_smooth(&self) -> bool {
        if !self.is_pointed() || self.rays.len() != self.dimension() {
            return false;
        }
        if self.rays.is_empty() {
            return true;
        }
        let h = hermite_basis(&self.rays, self.dim);
        crate::lattice::saturate_sublattice(&self.rays, self.dim) == h
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dimension()
    }

    /// Image under a linear map given by a matrix acting on column vectors.
    pub fn image(&self, m: &IntMatrix) -> Result<RationalCone> {
        let gens: Vec<_> = self.generators().iter().map(|g| m.mul_vec(g)).collect();
        RationalCone::from_generators(m.rows(), &gens)
    }

    /// Cross-check of the two descriptions.
    pub fn is_consistent(&self) -> bool {
        let gens = self.generators();
        let (f, e) = h_rep(&gens, self.dim);
        f == self.facets
            && hermite_basis(&e, self.dim) == hermite_basis(&self.equations, self.dim)
            && gens.iter().all(|g| self.contains(g))
    }
}

fn check_dims(dim: usize, vs: &[LatticePoint]) -> Result<()> {
    match vs.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(Error::DimensionMismatch(format!(
            "vector {v} in ambient dimension {dim}"
        ))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(c)
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = RationalCone::orthant(2);
        assert_eq!(c.dual(), c);
        assert_eq!(c.facet_normals(), &[lp(&[0, 1]), lp(&[1, 0])]);
    }

    #[test]
    fn half_line() {
        let c = RationalCone::from_i64_rays(&[&[1]]);
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn conifold_dual_has_four_facets() {
        let c = RationalCone::from_i64_rays(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 1], &[1, 0, 0]]);
        assert_eq!(c.rays().len(), 4);
        let d = c.dual();
        assert_eq!(d.facet_normals().len(), 4);
        assert_eq!(d.rays().len(), 4);
        assert!(d.is_consistent());
        // every normal pairs nonnegatively with every ray, zero on exactly two
        for n in d.rays() {
            let zeros = c.rays().iter().filter(|r| r.dot(n).is_zero()).count();
            assert_eq!(zeros, 2);
            assert!(c.rays().iter().all(|r| !r.dot(n).is_negative()));
        }
    }

    #[test]
    fn dual_dual_roundtrip_matches_constructors() {
        let c = RationalCone::from_i64_rays(&[&[1, 0], &[1, 2]]);
        let d = RationalCone::from_inequalities(2, c.dual().rays(), &[]).unwrap();
        assert_eq!(d, c);
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn lineality_cones() {
        let half_plane = RationalCone::from_i64_rays(&[&[1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(half_plane.rays(), &[lp(&[1, 0])]);
        assert_eq!(half_plane.lineality(), &[lp(&[0, 1])]);
        assert_eq!(half_plane.facet_normals(), &[lp(&[1, 0])]);
        let d = half_plane.dual();
        assert_eq!(d.dimension(), 1);
        assert!(RationalCone::whole_space(2).facet_normals().is_empty());
    }

    #[test]
    fn face_counts() {
        let faces = RationalCone::orthant(3).faces();
        assert_eq!(faces.len(), 8);
        let c = RationalCone::from_i64_rays(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 1], &[1, 0, 0]]);
        // apex, 4 rays, 4 two-faces, the cone
        assert_eq!(c.faces().len(), 10);
    }

    #[test]
    fn smoothness() {
        assert!(RationalCone::orthant(3).is_smooth());
        assert!(!RationalCone::from_i64_rays(&[&[1, 0], &[1, 2]]).is_smooth());
        assert!(RationalCone::from_i64_rays(&[&[1, 0], &[1, 1]]).is_smooth());
        assert!(RationalCone::zero(2).is_smooth());
    }
}
