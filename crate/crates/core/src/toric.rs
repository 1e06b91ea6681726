//! Toric stratum models, Kato–Nakayama descriptors and momentum maps.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{adapted_basis, rat_to_f64, Int, IntMatrix, LatticePoint, RationalPoint};
use crate::monoid::ghost_stalk_toric;
use crate::polyhedra::{Fan, LatticePolytope, RationalCone};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogKind {
    /// Divisorial log structure of the toric boundary.
    ToricBoundary,
    /// Trivial log structure.
    Trivial,
}

/// A torus orbit, indexed by its fan cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub id: usize,
    pub cone: RationalCone,
    /// Complex dimension `n - dim(cone)`.
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseRegion {
    Cone(RationalCone),
    Polytope(LatticePolytope),
}

#[derive(Clone, Debug)]
pub struct ToricVarietyModel {
    n: usize,
    fan: Fan,
    polytope: Option<LatticePolytope>,
    affine_cone: Option<RationalCone>,
    log: LogKind,
    strata: Vec<Stratum>,
}

impl ToricVarietyModel {
    pub fn from_fan(fan: Fan, log: LogKind) -> Self {
        let n = fan.ambient_dim();
        let strata = fan
            .cones()
            .iter()
            .enumerate()
            .map(|(id, c)| Stratum {
                id,
                cone: c.clone(),
                dim: n - c.dimension(),
            })
            .collect();
        ToricVarietyModel {
            n,
            fan,
            polytope: None,
            affine_cone: None,
            log,
            strata,
        }
    }

    /// `Spec C[σ∨ ∩ M]`.
    pub fn affine(sigma: &RationalCone, log: LogKind) -> Self {
        let fan =
            Fan::from_cones(sigma.ambient_dim(), std::slice::from_ref(sigma)).expect("single cone");
        let mut m = Self::from_fan(fan, log);
        m.affine_cone = Some(sigma.clone());
        m
    }

    /// Projective model with fan the normal fan of the polytope.
    pub fn projective(p: &LatticePolytope, log: LogKind) -> Result<Self> {
        let mut m = Self::from_fan(p.normal_fan()?, log);
        m.polytope = Some(p.clone());
        Ok(m)
    }

    pub fn torus(n: usize) -> Self {
        Self::affine(&RationalCone::zero(n), LogKind::Trivial)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn log_kind(&self) -> LogKind {
        self.log
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// Stratum whose cone is exactly `c`.
    pub fn stratum_of(&self, c: &RationalCone) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.cone == *c)
    }

    pub fn base_region(&self) -> Result<BaseRegion> {
        if let Some(p) = &self.polytope {
            return Ok(BaseRegion::Polytope(p.clone()));
        }
        if let Some(c) = &self.affine_cone {
            return Ok(BaseRegion::Cone(c.dual()));
        }
        Err(Error::Invalid(
            "model is neither affine nor projective".into(),
        ))
    }
}

/// Rank of the Kato–Nakayama fiber torus over a point of the stratum.
pub fn kn_fiber_rank(m: &ToricVarietyModel, s: &Stratum) -> usize {
    match m.log {
        LogKind::Trivial => 0,
        LogKind::ToricBoundary => ghost_stalk_toric(&s.cone).gp_rank,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KNDescriptor {
    pub base: BaseRegion,
    pub torus_rank: usize,
    /// `(stratum id, fiber rank)`.
    pub fibers: Vec<(usize, usize)>,
}

impl KNDescriptor {
    pub fn rank_of(&self, stratum: usize) -> Option<usize> {
        self.fibers
            .iter()
            .find(|(s, _)| *s == stratum)
            .map(|&(_, r)| r)
    }
}

pub fn kn_descriptor(m: &ToricVarietyModel) -> Result<KNDescriptor> {
    Ok(KNDescriptor {
        base: m.base_region()?,
        torus_rank: m.n,
        fibers: m
            .strata
            .iter()
            .map(|s| (s.id, kn_fiber_rank(m, s)))
            .collect(),
    })
}

fn weighted_average(points: &[LatticePoint], weights: &[f64], dim: usize) -> Result<Vec<f64>> {
    let total: f64 = weights.iter().sum();
    if total == 0.0 {
        return Err(Error::AllZero);
    }
    let mut mu = vec![0.0; dim];
    for (p, w) in points.iter().zip(weights) {
        for (k, c) in p.to_f64().iter().enumerate() {
            mu[k] += w * c;
        }
    }
    Ok(mu.into_iter().map(|x| x / total).collect())
}

fn monomial(t: &[Complex64], m: &LatticePoint) -> Complex64 {
    t.iter().zip(&m.0).fold(Complex64::one(), |acc, (z, e)| {
        acc * z.powi(e.to_i32().expect("small exponent"))
    })
}

/// Momentum map of the projective toric variety of a lattice polytope.
///
/// Homogeneous coordinates are indexed by the lattice points of the polytope.
#[derive(Clone, Debug)]
pub struct MomentumEval {
    polytope: LatticePolytope,
    points: Vec<LatticePoint>,
}

impl MomentumEval {
    pub fn new(polytope: &LatticePolytope) -> Result<Self> {
        let points = polytope.lattice_points()?;
        Ok(MomentumEval {
            polytope: polytope.clone(),
            points,
        })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// `μ(z) = Σ |z_m|² m / Σ |z_m|²`.
    pub fn eval(&self, z: &[Complex64]) -> Result<Vec<f64>> {
        if z.len() != self.points.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} homogeneous coordinates for {} lattice points",
                z.len(),
                self.points.len()
            )));
        }
        let w: Vec<f64> = z.iter().map(|c| c.norm_sqr()).collect();
        weighted_average(&self.points, &w, self.polytope.ambient_dim())
    }

    /// Homogeneous coordinates `z_m = t^m` of a torus point.
    pub fn torus_point(&self, t: &[Complex64]) -> Vec<Complex64> {
        self.points.iter().map(|m| monomial(t, m)).collect()
    }

    /// Limit point on the orbit of a face: coordinates off the face vanish.
    pub fn face_point(&self, t: &[Complex64], face: &LatticePolytope) -> Vec<Complex64> {
        self.points
            .iter()
            .map(|m| {
                if face.contains(m) {
                    monomial(t, m)
                } else {
                    Complex64::zero()
                }
            })
            .collect()
    }

    /// Whether `x` lies in the polytope up to `tol`.
    pub fn in_polytope(&self, x: &[f64], tol: f64) -> bool {
        let facets_ok = self
            .polytope
            .facets()
            .iter()
            .all(|(u, c)| dot_f(u, x) + c.to_f64().unwrap() >= -tol);
        let eqs_ok = self
            .polytope
            .equations()
            .iter()
            .all(|(u, c)| (dot_f(u, x) + c.to_f64().unwrap()).abs() <= tol);
        facets_ok && eqs_ok
    }

    /// Positive real torus point mapping to an interior point `y` (Newton in log coordinates).
    pub fn positive_section(&self, y: &[f64]) -> Result<Vec<f64>> {
        let n = self.polytope.ambient_dim();
        if y.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "point of dimension {} for a polytope in {n}",
                y.len()
            )));
        }
        let pts: Vec<Vec<f64>> = self.points.iter().map(LatticePoint::to_f64).collect();
        let mut u = vec![0.0; n];
        for _ in 0..200 {
            // weights e^{2<m,u>}, normalized for stability
            let ex: Vec<f64> = pts
                .iter()
                .map(|m| 2.0 * m.iter().zip(&u).map(|(a, b)| a * b).sum::<f64>())
                .collect();
            let mx = ex.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let w: Vec<f64> = ex.iter().map(|e| (e - mx).exp()).collect();
            let tot: f64 = w.iter().sum();
            let mu: Vec<f64> = (0..n)
                .map(|k| pts.iter().zip(&w).map(|(m, wi)| wi * m[k]).sum::<f64>() / tot)
                .collect();
            let g: Vec<f64> = (0..n).map(|k| mu[k] - y[k]).collect();
            if g.iter().map(|x| x.abs()).fold(0.0, f64::max) < 1e-13 {
                break;
            }
            let mut h = vec![vec![0.0; n]; n];
            for (m, wi) in pts.iter().zip(&w) {
                for a in 0..n {
                    for b in 0..n {
                        h[a][b] += 2.0 * wi / tot * (m[a] - mu[a]) * (m[b] - mu[b]);
                    }
                }
            }
            let step = solve_dense(h, g)
                .ok_or_else(|| Error::Invalid("degenerate momentum Hessian".into()))?;
            let norm = step.iter().map(|x| x * x).sum::<f64>().sqrt();
            let damp = if norm > 1.0 { 1.0 / norm } else { 1.0 };
            for k in 0..n {
                u[k] -= damp * step[k];
            }
        }
        Ok(u.iter().map(|x| x.exp()).collect())
    }
}

fn dot_f(u: &LatticePoint, x: &[f64]) -> f64 {
    u.to_f64().iter().zip(x).map(|(a, b)| a * b).sum()
}

fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Momentum map onto a monoid cone `C = σ∨`, via the compactification polytope
/// `conv(0, a·r_i/ℓ(r_i))` and the rescaling `x ↦ x/(a - x)` along the grading.
#[derive(Clone, Debug)]
pub struct AffineMomentum {
    cone: RationalCone,
    units: Vec<LatticePoint>,
    lift: IntMatrix,
    ell: LatticePoint,
    a: Int,
    xi: Vec<LatticePoint>,
}

/// A point of `Spec C[C ∩ M]` as a semigroup homomorphism `C ∩ M -> C`.
pub trait ChartPoint {
    fn character(&self, m: &LatticePoint) -> Complex64;
}

/// A point of the dense torus.
pub struct TorusPoint(pub Vec<Complex64>);

impl ChartPoint for TorusPoint {
    fn character(&self, m: &LatticePoint) -> Complex64 {
        monomial(&self.0, m)
    }
}

/// The distinguished point of the orbit of a face `F` of `C`, scaled by a torus point.
pub struct OrbitPoint {
    pub torus: Vec<Complex64>,
    pub face: RationalCone,
}

impl ChartPoint for OrbitPoint {
    fn character(&self, m: &LatticePoint) -> Complex64 {
        if self.face.contains(m) {
            monomial(&self.torus, m)
        } else {
            Complex64::zero()
        }
    }
}

impl AffineMomentum {
    pub fn new(cone: &RationalCone) -> Result<Self> {
        if !cone.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                affine: cone.dimension(),
                ambient: cone.ambient_dim(),
            });
        }
        let n = cone.ambient_dim();
        let units = cone.lineality().to_vec();
        let (b, k) = adapted_basis(&units, n);
        let b_inv = b.inverse_unimodular()?;
        let rest: Vec<usize> = (k..n).collect();
        let proj = b_inv.select_rows(&rest);
        let lift = b.select_cols(&rest);
        let units: Vec<LatticePoint> = (0..k).map(|j| b.col(j)).collect();
        let image = cone.image(&proj)?;
        let ell = image
            .facet_normals()
            .iter()
            .fold(LatticePoint::zero(n - k), |acc, f| &acc + f);
        let a = image
            .rays()
            .iter()
            .fold(Int::one(), |l, r| l.lcm(&ell.dot(r)));
        let mut verts = vec![LatticePoint::zero(n - k)];
        verts.extend(image.rays().iter().map(|r| r.scale(&(&a / ell.dot(r)))));
        let xi = LatticePolytope::from_lattice_points(&verts)?.lattice_points()?;
        Ok(AffineMomentum {
            cone: cone.clone(),
            units,
            lift,
            ell,
            a,
            xi,
        })
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn eval(&self, z: &dyn ChartPoint) -> Result<Vec<f64>> {
        let n = self.cone.ambient_dim();
        let lifted: Vec<LatticePoint> = self.xi.iter().map(|m| self.lift.mul_vec(m)).collect();
        let w: Vec<f64> = lifted.iter().map(|m| z.character(m).norm_sqr()).collect();
        let mu = weighted_average(&self.xi, &w, self.xi.first().map_or(0, |p| p.dim()))?;
        let q = dot_f(&self.ell, &mu);
        let a = self.a.to_f64().unwrap();
        let f = q / (a - q);
        let mut out = vec![0.0; n];
        for (j, c) in mu.iter().enumerate() {
            for (i, o) in out.iter_mut().enumerate() {
                *o += f * c * self.lift[(i, j)].to_f64().unwrap();
            }
        }
        for l in &self.units {
            let w = z.character(l).norm();
            if w == 0.0 {
                return Err(Error::Invalid("unit character vanishes".into()));
            }
            for (o, c) in out.iter_mut().zip(l.to_f64()) {
                *o += w.ln() * c;
            }
        }
        Ok(out)
    }

    pub fn in_cone(&self, x: &[f64], tol: f64) -> bool {
        self.cone
            .facet_normals()
            .iter()
            .all(|f| dot_f(f, x) >= -tol)
    }
}

/// Convenience: momentum of a rational point's positive-real section, for tests.
pub fn rational_to_f64(p: &RationalPoint) -> Vec<f64> {
    p.0.iter().map(rat_to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn affine_line_descriptor() {
        let m = ToricVarietyModel::affine(
            &RationalCone::from_i64_rays(&[&[1]]),
            LogKind::ToricBoundary,
        );
        let d = kn_descriptor(&m).unwrap();
        assert_eq!(
            d.base,
            BaseRegion::Cone(RationalCone::from_i64_rays(&[&[1]]))
        );
        assert_eq!(d.torus_rank, 1);
        let ranks: Vec<usize> = d.fibers.iter().map(|f| f.1).collect();
        assert_eq!(ranks, vec![0, 1]);
    }

    #[test]
    fn projective_line_descriptor() {
        let seg = LatticePolytope::from_i64(&[&[0], &[1]]);
        let m = ToricVarietyModel::projective(&seg, LogKind::ToricBoundary).unwrap();
        let d = kn_descriptor(&m).unwrap();
        assert_eq!(d.base, BaseRegion::Polytope(seg));
        assert_eq!(d.torus_rank, 1);
        let mut ranks: Vec<usize> = d.fibers.iter().map(|f| f.1).collect();
        ranks.sort();
        assert_eq!(ranks, vec![0, 1, 1]);
    }

    #[test]
    fn torus_has_trivial_fibers() {
        let d = kn_descriptor(&ToricVarietyModel::torus(3)).unwrap();
        assert!(d.fibers.iter().all(|f| f.1 == 0));
        let p2 = ToricVarietyModel::projective(
            &LatticePolytope::standard_simplex(2, 1),
            LogKind::Trivial,
        )
        .unwrap();
        assert!(kn_descriptor(&p2).unwrap().fibers.iter().all(|f| f.1 == 0));
    }

    #[test]
    fn projective_plane_ranks_are_codimension() {
        let m = ToricVarietyModel::projective(
            &LatticePolytope::standard_simplex(2, 1),
            LogKind::ToricBoundary,
        )
        .unwrap();
        for s in m.strata() {
            assert_eq!(kn_fiber_rank(&m, s), 2 - s.dim);
        }
        assert_eq!(m.strata().len(), 7);
    }

    #[test]
    fn momentum_equal_weights_is_average() {
        let e = MomentumEval::new(&LatticePolytope::standard_simplex(2, 2)).unwrap();
        let z = vec![c(1.0, 0.0); e.points().len()];
        let mu = e.eval(&z).unwrap();
        // six points (0,0),(0,1),(0,2),(1,0),(1,1),(2,0)
        assert!((mu[0] - 4.0 / 6.0).abs() < 1e-12 && (mu[1] - 4.0 / 6.0).abs() < 1e-12);
        assert_eq!(e.eval(&[Complex64::zero(); 6]), Err(Error::AllZero));
    }

    #[test]
    fn momentum_torus_invariance_and_faces() {
        let p = LatticePolytope::cube(2);
        let e = MomentumEval::new(&p).unwrap();
        let t = [c(0.3, 1.2), c(2.0, -0.5)];
        let phase = [
            Complex64::from_polar(1.0, 0.7),
            Complex64::from_polar(1.0, -2.1),
        ];
        let t2: Vec<_> = t.iter().zip(&phase).map(|(a, b)| a * b).collect();
        let a = e.eval(&e.torus_point(&t)).unwrap();
        let b = e.eval(&e.torus_point(&t2)).unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12));
        let edge = LatticePolytope::from_i64(&[&[0, 0], &[1, 0]]);
        let mu = e.eval(&e.face_point(&t, &edge)).unwrap();
        assert!(mu[1].abs() < 1e-15 && mu[0] > 0.0 && mu[0] < 1.0);
    }

    #[test]
    fn positive_section_inverts_momentum() {
        let e = MomentumEval::new(&LatticePolytope::standard_simplex(2, 1)).unwrap();
        let y = [0.2, 0.5];
        let t = e.positive_section(&y).unwrap();
        let tc: Vec<_> = t.iter().map(|&x| c(x, 0.0)).collect();
        let mu = e.eval(&e.torus_point(&tc)).unwrap();
        assert!((mu[0] - 0.2).abs() < 1e-9 && (mu[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn affine_momentum_examples() {
        let cone = RationalCone::from_i64_rays(&[&[1, 0], &[1, 2]]);
        let am = AffineMomentum::new(&cone).unwrap();
        let one = TorusPoint(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let x = am.eval(&one).unwrap();
        assert!(cone.facet_normals().iter().all(|f| dot_f(f, &x) > 0.0));
        let fixed = OrbitPoint {
            torus: vec![c(1.0, 0.0); 2],
            face: RationalCone::zero(2),
        };
        assert!(am.eval(&fixed).unwrap().iter().all(|v| v.abs() < 1e-15));
        let rot = TorusPoint(vec![
            Complex64::from_polar(1.0, 0.4),
            Complex64::from_polar(1.0, 2.0),
        ]);
        let y = am.eval(&rot).unwrap();
        assert!(x.iter().zip(&y).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn affine_momentum_with_units() {
        let half_plane = RationalCone::from_i64_rays(&[&[1, 0], &[0, 1], &[0, -1]]);
        let am = AffineMomentum::new(&half_plane).unwrap();
        let x = am
            .eval(&TorusPoint(vec![c(2.0, 0.0), c(3.0, 0.0)]))
            .unwrap();
        assert!((x[1] - 3f64.ln()).abs() < 1e-12);
        assert!(x[0] > 0.0);
    }
}
