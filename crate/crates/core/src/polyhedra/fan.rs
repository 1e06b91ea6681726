use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{adapted_basis, IntMatrix, LatticePoint};
use crate::polyhedra::cone::RationalCone;

/// A fan: a face-closed collection of cones meeting along common faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    cones: Vec<RationalCone>,
}

impl Fan {
    /// Closes the given cones under taking faces.
    pub fn from_cones(dim: usize, cones: &[RationalCone]) -> Result<Fan> {
        if let Some(c) = cones.iter().find(|c| c.ambient_dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "cone in dimension {} for a fan in {dim}",
                c.ambient_dim()
            )));
        }
        let mut all = BTreeSet::new();
        for c in cones {
            all.extend(c.faces());
        }
        let mut cones: Vec<RationalCone> = all.into_iter().collect();
        cones.sort_by_key(|c| (c.dimension(), c.rays().to_vec(), c.lineality().to_vec()));
        Ok(Fan { dim, cones })
    }

    /// Like [`Fan::from_cones`] but also checks pairwise intersections.
    pub fn checked(dim: usize, cones: &[RationalCone]) -> Result<Fan> {
        let fan = Fan::from_cones(dim, cones)?;
        if let Some((i, j)) = fan.overlap() {
            return Err(Error::FanOverlap(i, j));
        }
        Ok(fan)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn cones(&self) -> &[RationalCone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<&RationalCone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d != *c && c.is_face_of(d)))
            .collect()
    }

    /// Distinct one-dimensional ray generators, sorted.
    pub fn rays(&self) -> Vec<LatticePoint> {
        let set: BTreeSet<_> = self
            .cones
            .iter()
            .filter(|c| c.is_pointed() && c.dimension() == 1)
            .map(|c| c.rays()[0].clone())
            .collect();
        set.into_iter().collect()
    }

    pub fn index_of(&self, c: &RationalCone) -> Option<usize> {
        self.cones.iter().position(|d| d == c)
    }

    /// First pair of maximal cones whose intersection is not a common face.
    pub fn overlap(&self) -> Option<(usize, usize)> {
        let maxes = self.maximal_cones();
        for i in 0..maxes.len() {
            for j in i + 1..maxes.len() {
                let meet = maxes[i]
                    .intersect(maxes[j])
                    .expect("same ambient dimension");
                if !(meet.is_face_of(maxes[i]) && meet.is_face_of(maxes[j])) {
                    return Some((
                        self.index_of(maxes[i]).unwrap(),
                        self.index_of(maxes[j]).unwrap(),
                    ));
                }
            }
        }
        None
    }

    /// Union of cones covers space (checked on the nonzero integer grid `[-3,3]^n`).
    pub fn is_complete(&self) -> bool {
        let maxes = self.maximal_cones();
        sample_directions(self.dim, 3)
            .iter()
            .all(|x| maxes.iter().any(|c| c.contains(x)))
    }

    /// Smallest cone containing `x`, if any.
    pub fn cone_containing(&self, x: &LatticePoint) -> Option<&RationalCone> {
        self.cones
            .iter()
            .find(|c| c.contains_in_relative_interior(x))
    }

    /// Images of all cones under the quotient by `Z·w`.
    pub fn quotient(&self, w: &LatticePoint) -> Result<Fan> {
        let p = quotient_projection(w)?;
        let images: Vec<RationalCone> = self
            .cones
            .iter()
            .map(|c| c.image(&p))
            .collect::<Result<_>>()?;
        Fan::checked(self.dim - 1, &images)
    }
}

/// The quotient fan along a primitive lattice vector.
pub fn quotient_fan(f: &Fan, w: &LatticePoint) -> Result<Fan> {
    f.quotient(w)
}

/// A projection `Z^n -> Z^n / Z·w` as an `(n-1) x n` matrix.
pub fn quotient_projection(w: &LatticePoint) -> Result<IntMatrix> {
    let w = w.primitive()?;
    let n = w.dim();
    let (b, _) = adapted_basis(&[w], n);
    let b_inv = b.inverse_unimodular()?;
    Ok(b_inv.select_rows(&(1..n).collect::<Vec<_>>()))
}

pub(crate) fn sample_directions(n: usize, r: i64) -> Vec<LatticePoint> {
    let side = (2 * r + 1) as usize;
    (0..side.pow(n as u32))
        .map(|mut m| {
            LatticePoint(
                (0..n)
                    .map(|_| {
                        let c = (m % side) as i64 - r;
                        m /= side;
                        BigInt::from(c)
                    })
                    .collect(),
            )
        })
        .filter(|x| !x.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(c)
    }

    fn boundary_of_orthant(n: usize) -> Fan {
        let facets: Vec<_> = (0..n)
            .map(|skip| {
                let gens: Vec<_> = (0..n)
                    .filter(|&i| i != skip)
                    .map(|i| LatticePoint::unit(n, i))
                    .collect();
                RationalCone::from_generators(n, &gens).unwrap()
            })
            .collect();
        Fan::from_cones(n, &facets).unwrap()
    }

    #[test]
    fn projective_plane_fan_from_octant_boundary() {
        let q = boundary_of_orthant(3).quotient(&lp(&[1, 1, 1])).unwrap();
        assert_eq!(q.maximal_cones().len(), 3);
        assert_eq!(q.rays().len(), 3);
        assert!(q.is_complete());
        // images of e1, e2, e3 sum to zero
        let p = quotient_projection(&lp(&[1, 1, 1])).unwrap();
        let s = &(&p.mul_vec(&lp(&[1, 0, 0])) + &p.mul_vec(&lp(&[0, 1, 0])))
            + &p.mul_vec(&lp(&[0, 0, 1]));
        assert!(s.is_zero());
    }

    #[test]
    fn quadrant_boundary_projects_to_two_rays() {
        let q = boundary_of_orthant(2).quotient(&lp(&[1, 1])).unwrap();
        assert_eq!(q.rays(), vec![lp(&[-1]), lp(&[1])]);
        assert!(q.is_complete());
    }

    #[test]
    fn zero_fan_projects_to_zero() {
        let f = Fan::from_cones(2, &[RationalCone::zero(2)]).unwrap();
        let q = f.quotient(&lp(&[0, 1])).unwrap();
        assert_eq!(q.cones(), &[RationalCone::zero(1)]);
    }

    #[test]
    fn overlapping_images_are_reported() {
        let a = RationalCone::from_i64_rays(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = RationalCone::from_i64_rays(&[&[1, 0, 0], &[1, 1, 1]]);
        let f = Fan::from_cones(3, &[a, b]).unwrap();
        assert!(matches!(
            f.quotient(&lp(&[0, 0, 1])),
            Err(Error::FanOverlap(_, _))
        ));
    }

    #[test]
    fn incomplete_fan() {
        let f = Fan::from_cones(2, &[RationalCone::orthant(2)]).unwrap();
        assert!(!f.is_complete());
        assert_eq!(f.cones().len(), 4);
    }
}
