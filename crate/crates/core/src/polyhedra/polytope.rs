use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{rank_of, Int, LatticePoint, Rat, RationalPoint};
use crate::polyhedra::cone::RationalCone;
use crate::polyhedra::fan::Fan;

/// A bounded rational polytope, stored as the cone over it at height one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<RationalPoint>,
    cone: RationalCone,
    /// `(u, c)` with `u·x + c >= 0` on the polytope.
    facets: Vec<(LatticePoint, Int)>,
}

/// A face as a set of vertex indices; the empty face has no vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub dim: isize,
    pub vertices: Vec<usize>,
}

fn homogenize(p: &RationalPoint) -> LatticePoint {
    let q = p.denominator_lcm();
    let mut c: Vec<Int> =
        p.0.iter()
            .map(|x| (x * Rat::from_integer(q.clone())).to_integer())
            .collect();
    c.push(q);
    LatticePoint(c)
}

impl LatticePolytope {
    /// Convex hull of rational points.
    pub fn from_points(dim: usize, points: &[RationalPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Invalid("polytope needs at least one point".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point of dimension {} in ambient {dim}",
                p.dim()
            )));
        }
        let gens: Vec<_> = points.iter().map(homogenize).collect();
        let cone = RationalCone::from_generators(dim + 1, &gens)?;
        let mut vertices: Vec<RationalPoint> = cone
            .rays()
            .iter()
            .map(|r| {
                let h = &r.0[dim];
                RationalPoint(
                    r.0[..dim]
                        .iter()
                        .map(|c| Rat::new(c.clone(), h.clone()))
                        .collect(),
                )
            })
            .collect();
        vertices.sort();
        let facets = cone
            .facet_normals()
            .iter()
            .filter(|f| cone.rays().iter().any(|r| f.dot(r).is_zero()))
            .map(|f| (LatticePoint(f.0[..dim].to_vec()), f.0[dim].clone()))
            .collect();
        Ok(LatticePolytope {
            dim,
            vertices,
            cone,
            facets,
        })
    }

    pub fn from_lattice_points(points: &[LatticePoint]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.dim());
        let pts: Vec<_> = points.iter().map(|p| p.to_rational()).collect();
        Self::from_points(dim, &pts)
    }

    pub fn from_i64(points: &[&[i64]]) -> Self {
        let pts: Vec<_> = points.iter().map(|p| LatticePoint::from_i64(p)).collect();
        Self::from_lattice_points(&pts).expect("valid points")
    }

    /// The standard simplex `conv(0, e_1, ..., e_n)` scaled by `k`.
    pub fn standard_simplex(n: usize, k: i64) -> Self {
        let mut pts = vec![LatticePoint::zero(n)];
        pts.extend((0..n).map(|i| LatticePoint::unit(n, i).scale(&BigInt::from(k))));
        Self::from_lattice_points(&pts).expect("simplex")
    }

    pub fn cube(n: usize) -> Self {
        let pts: Vec<_> = (0..1usize << n)
            .map(|m| LatticePoint((0..n).map(|i| BigInt::from((m >> i) & 1)).collect()))
            .collect();
        Self::from_lattice_points(&pts).expect("cube")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn lattice_vertices(&self) -> Option<Vec<LatticePoint>> {
        self.vertices
            .iter()
            .map(RationalPoint::to_lattice)
            .collect()
    }

    /// Every vertex is integral.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RationalPoint::is_integral)
    }

    pub fn facets(&self) -> &[(LatticePoint, Int)] {
        &self.facets
    }

    /// Affine hull equations `(u, c)` with `u·x + c = 0`.
    pub fn equations(&self) -> Vec<(LatticePoint, Int)> {
        self.cone
            .equations()
            .iter()
            .map(|e| {
                (
                    LatticePoint(e.0[..self.dim].to_vec()),
                    e.0[self.dim].clone(),
                )
            })
            .collect()
    }

    pub fn affine_dim(&self) -> usize {
        self.cone.dimension() - 1
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.affine_dim() + 1
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.cone.contains(&x.extend(Int::one()))
    }

    pub fn contains_rational(&self, x: &RationalPoint) -> bool {
        self.cone.contains(&homogenize(x))
    }

    pub fn contains_in_relative_interior(&self, x: &RationalPoint) -> bool {
        self.contains_rational(x)
            && (0..self.facets.len()).all(|f| self.facet_value(f, x).is_positive())
    }

    pub fn barycenter(&self) -> RationalPoint {
        let n = Rat::from_integer(BigInt::from(self.vertices.len()));
        RationalPoint(
            (0..self.dim)
                .map(|i| self.vertices.iter().map(|v| v.0[i].clone()).sum::<Rat>() / &n)
                .collect(),
        )
    }

    /// Integral points, lexicographically ordered.
    pub fn lattice_points(&self) -> Result<Vec<LatticePoint>> {
        let lo: Vec<Int> = (0..self.dim)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v.0[i].floor().to_integer())
                    .min()
                    .expect("nonempty")
            })
            .collect();
        let hi: Vec<Int> = (0..self.dim)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v.0[i].ceil().to_integer())
                    .max()
                    .expect("nonempty")
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticePoint(cur.clone());
            if self.contains(&p) {
                out.push(p);
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i].clone();
            }
        }
    }

    /// A simplex whose only lattice points are its vertices.
    pub fn is_elementary_simplex(&self) -> bool {
        self.is_lattice()
            && self.is_simplex()
            && self
                .lattice_points()
                .is_ok_and(|p| p.len() == self.vertices.len())
    }

    /// All faces from the empty face to the polytope, ordered by dimension.
    pub fn face_lattice(&self) -> Vec<Face> {
        let mut seen = BTreeSet::new();
        for k in 0..=self.facets.len() {
            for s in (0..self.facets.len()).combinations(k) {
                let vs: Vec<usize> = (0..self.vertices.len())
                    .filter(|&v| {
                        s.iter()
                            .all(|&f| self.facet_value(f, &self.vertices[v]).is_zero())
                    })
                    .collect();
                seen.insert(vs);
            }
        }
        seen.insert(Vec::new());
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|vs| Face {
                dim: self.face_dim(&vs),
                vertices: vs,
            })
            .collect();
        faces.sort();
        faces
    }

    fn facet_value(&self, f: usize, x: &RationalPoint) -> Rat {
        let (u, c) = &self.facets[f];
        u.0.iter()
            .zip(&x.0)
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .sum::<Rat>()
            + Rat::from_integer(c.clone())
    }

    /// Affine dimension of a vertex subset (`-1` for the empty set).
    pub fn face_dim(&self, vs: &[usize]) -> isize {
        if vs.is_empty() {
            return -1;
        }
        let pts: Vec<_> = vs.iter().map(|&v| homogenize(&self.vertices[v])).collect();
        rank_of(&pts, self.dim + 1) as isize - 1
    }

    /// The face spanned by the given vertices, as a polytope.
    pub fn face_polytope(&self, vs: &[usize]) -> Result<LatticePolytope> {
        let pts: Vec<_> = vs.iter().map(|&v| self.vertices[v].clone()).collect();
        LatticePolytope::from_points(self.dim, &pts)
    }

    /// Normal fan of inner normal cones; maximal cones in vertex order.
    pub fn normal_fan(&self) -> Result<Fan> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                affine: self.affine_dim(),
                ambient: self.dim,
            });
        }
        let cones = self.vertex_normal_cones()?;
        Fan::from_cones(self.dim, &cones)
    }

    /// Inner normal cone at each vertex, in vertex order.
    pub fn vertex_normal_cones(&self) -> Result<Vec<RationalCone>> {
        let mut cones = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let hv = homogenize(v);
            let gens: Vec<_> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, w)| {
                    let hw = homogenize(w);
                    // (w - v) scaled to clear denominators
                    let (qv, qw) = (&hv.0[self.dim], &hw.0[self.dim]);
                    LatticePoint(
                        (0..self.dim)
                            .map(|k| &hw.0[k] * qv - &hv.0[k] * qw)
                            .collect(),
                    )
                })
                .collect();
            cones.push(RationalCone::from_generators(self.dim, &gens)?.dual());
        }
        Ok(cones)
    }

    /// Image under `x -> k x + t`.
    pub fn dilate_translate(&self, k: &Int, t: &RationalPoint) -> Result<LatticePolytope> {
        let kq = Rat::from_integer(k.clone());
        let pts: Vec<_> = self
            .vertices
            .iter()
            .map(|v| RationalPoint(v.0.iter().zip(&t.0).map(|(a, b)| a * &kq + b).collect()))
            .collect();
        LatticePolytope::from_points(self.dim, &pts)
    }

    /// Lattice length of a segment between lattice points.
    pub fn lattice_length(&self) -> Option<Int> {
        let vs = self.lattice_vertices()?;
        match vs.len() {
            1 => Some(Int::zero()),
            2 => Some((&vs[1] - &vs[0]).content()),
            _ => None,
        }
    }

    /// Common denominator of the vertices.
    pub fn denominator(&self) -> Int {
        self.vertices
            .iter()
            .fold(Int::one(), |l, v| l.lcm(&v.denominator_lcm()))
    }
}
