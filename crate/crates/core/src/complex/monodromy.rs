use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{orthogonal_complement, AffineMapZ, Int, IntMatrix, LatticePoint, Rat};

use super::PolyCellComplex;

/// How a path crosses a codimension-one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Crossing {
    /// Inside the star of the given vertex.
    NearVertex(usize),
    /// Through the `i`-th open segment between consecutive marks of an edge.
    Segment(usize),
    /// At parameter `t` along the edge, measured from its lower-labelled vertex.
    At(Rat),
}

/// Monodromy of the loop based at `v-` through `σ-`, `v+`, `σ+`, acting on
/// tangent vectors in the chart of `σ-` (inverse of their parallel transport).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyTransform {
    pub matrix: IntMatrix,
    /// `T - I = kappa · d · ďᵀ`.
    pub kappa: Int,
    pub d: LatticePoint,
    pub d_check: LatticePoint,
    pub chart: usize,
}

/// The integer `k` with `m = k · d · eᵀ`, if any.
pub fn shear_factor(m: &IntMatrix, d: &LatticePoint, e: &LatticePoint) -> Option<Int> {
    let mut k: Option<Int> = None;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let de = &d.0[i] * &e.0[j];
            if de.is_zero() {
                continue;
            }
            if (&m[(i, j)] % &de).is_zero() {
                k = Some(&m[(i, j)] / &de);
                break;
            }
            return None;
        }
        if k.is_some() {
            break;
        }
    }
    let k = k.unwrap_or_else(Int::zero);
    let ok = (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)] == &k * &d.0[i] * &e.0[j]));
    ok.then_some(k)
}

/// Whether `t` is conjugate in `GL(n, Z)` to an elementary transvection.
pub fn is_unit_shear(t: &IntMatrix) -> bool {
    let n = t.rows();
    let m = t - &IntMatrix::identity(n);
    if m.is_zero() || m.rank() != 1 || !(&m * &m).is_zero() {
        return false;
    }
    let content = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(Int::zero(), |g, (i, j)| {
            num_integer::Integer::gcd(&g, &m[(i, j)])
        });
    content.is_one()
}

impl PolyCellComplex {
    /// `A_{v,σ}⁻¹ A_{v,σ'} A_{v',σ'}⁻¹ A_{v',σ}`: leave `σ` near `v'`, return near `v`.
    pub fn loop_matrix(&self, v: usize, w: usize, s: usize, t: usize) -> Result<IntMatrix> {
        let a = &self.chart(v, s).inverse_unimodular()? * self.chart(v, t);
        let b = &self.chart(w, t).inverse_unimodular()? * self.chart(w, s);
        Ok(&a * &b)
    }

    /// Primitive direction from `v` to `w` in the chart of `σ`.
    pub fn edge_direction(&self, s: usize, v: usize, w: usize) -> Result<LatticePoint> {
        (self.position(s, w) - self.position(s, v)).primitive()
    }

    /// Primitive normal to a codimension-one cell `ρ ⊂ σ`, in the chart of `σ`,
    /// negative on the interior of `σ`.
    pub fn outward_normal(&self, rho: usize, s: usize) -> Result<LatticePoint> {
        let cell = &self.cells[rho];
        if cell.dim + 1 != self.n || !cell.max_cells.contains(&s) {
            return Err(Error::Invalid(format!(
                "cell {rho} is not a facet of maximal cell {s}"
            )));
        }
        let p0 = self.position(s, cell.vertices[0]);
        let tangents: Vec<_> = cell.vertices[1..]
            .iter()
            .map(|&w| self.position(s, w) - p0)
            .collect();
        let normal = orthogonal_complement(&tangents, self.n)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Invalid(format!("cell {rho} has no transverse direction")))?;
        let off = self.max_cells[s]
            .vertices
            .iter()
            .find(|w| !cell.vertices.contains(w))
            .expect("maximal cell is larger");
        let side = normal.dot(&(self.position(s, *off) - p0));
        Ok(if side.is_positive() { -&normal } else { normal })
    }

    /// Monodromy around the part of the discriminant in `ρ = σ- ∩ σ+` met by
    /// the edge `ω = [v-, v+]`.
    pub fn monodromy_loop(
        &self,
        omega: usize,
        rho: usize,
        v_minus: usize,
        v_plus: usize,
        s_minus: usize,
        s_plus: usize,
    ) -> Result<MonodromyTransform> {
        let (o, r) = (&self.cells[omega], &self.cells[rho]);
        if o.dim != 1 || r.dim + 1 != self.n || !self.is_face(omega, rho) {
            return Err(Error::Invalid(format!(
                "cells {omega} and {rho} are not an edge inside a codimension-one cell"
            )));
        }
        if !(o.vertices.contains(&v_minus) && o.vertices.contains(&v_plus)) || v_minus == v_plus {
            return Err(Error::Invalid(
                "loop endpoints must be the two vertices of the edge".into(),
            ));
        }
        if s_minus == s_plus || !r.max_cells.contains(&s_minus) || !r.max_cells.contains(&s_plus) {
            return Err(Error::Invalid(
                "loop must pass through the two maximal cells at the facet".into(),
            ));
        }
        let matrix = self.loop_matrix(v_plus, v_minus, s_minus, s_plus)?;
        let d = self.edge_direction(s_minus, v_minus, v_plus)?;
        let d_check = self.outward_normal(rho, s_minus)?;
        let m = &matrix - &IntMatrix::identity(self.n);
        let kappa = shear_factor(&m, &d, &d_check).ok_or_else(|| {
            Error::NoShearDecomposition(format!(
                "T - I = {m} is not a multiple of d·ďᵀ with d = {d}, ď = {d_check}"
            ))
        })?;
        Ok(MonodromyTransform {
            matrix,
            kappa,
            d,
            d_check,
            chart: s_minus,
        })
    }

    /// `κ_{ωρ}` with the loop starting in the lower-indexed maximal cell near
    /// the lower-labelled vertex of `ω`.
    pub fn kappa(&self, omega: usize, rho: usize) -> Result<Int> {
        let r = &self.cells[rho];
        if r.max_cells.len() != 2 {
            return Ok(Int::zero());
        }
        let o = &self.cells[omega];
        Ok(self
            .monodromy_loop(
                omega,
                rho,
                o.vertices[0],
                o.vertices[1],
                r.max_cells[0],
                r.max_cells[1],
            )?
            .kappa)
    }

    /// All `κ_{ωρ}` for edges `ω` inside interior codimension-one cells `ρ`.
    pub fn kappas(&self) -> Result<BTreeMap<(usize, usize), Int>> {
        let mut out = BTreeMap::new();
        if self.n < 2 {
            return Ok(out);
        }
        for rho in self.cells_of_dim(self.n - 1) {
            if self.cells[rho].max_cells.len() != 2 {
                continue;
            }
            for omega in self.faces_of(rho, 1) {
                out.insert((omega, rho), self.kappa(omega, rho)?);
            }
        }
        Ok(out)
    }

    /// Pairs with negative `κ`; empty iff the structure is positive.
    pub fn negative_kappas(&self) -> Result<Vec<((usize, usize), Int)>> {
        Ok(self
            .kappas()?
            .into_iter()
            .filter(|(_, k)| k.is_negative())
            .collect())
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.negative_kappas()?.is_empty())
    }

    /// Marks on an edge ordered along it as `(t, charge)`. An edge with
    /// nonzero monodromy and no explicit marks carries one mark at its midpoint.
    pub fn effective_marks(&self, rho: usize) -> Result<Vec<(Rat, Int)>> {
        if self.n != 2 || self.cells[rho].dim != 1 {
            return Ok(Vec::new());
        }
        let mut out: Vec<(Rat, Int)> = self
            .marks
            .iter()
            .filter(|m| m.cell == rho)
            .map(|m| (m.param(), Int::from(m.charge)))
            .collect();
        if out.is_empty() {
            let k = self.kappa(rho, rho)?;
            if !k.is_zero() {
                out.push((Rat::new(1.into(), 2.into()), k));
            }
        }
        out.sort();
        Ok(out)
    }

    fn shared_facet(&self, s: usize, t: usize) -> Result<usize> {
        if self.n == 0 {
            return Err(Error::IllegalPath("no facets in dimension 0".into()));
        }
        self.cells_of_dim(self.n - 1)
            .into_iter()
            .find(|&r| {
                self.cells[r].max_cells.contains(&s)
                    && self.cells[r].max_cells.contains(&t)
                    && s != t
            })
            .ok_or_else(|| {
                Error::IllegalPath(format!("maximal cells {s} and {t} are not adjacent"))
            })
    }

    /// Chart change from `from` to `to` for a path crossing their common facet.
    pub fn crossing_map(&self, from: usize, to: usize, crossing: &Crossing) -> Result<AffineMapZ> {
        let rho = self.shared_facet(from, to)?;
        let cell = &self.cells[rho];
        match crossing {
            Crossing::NearVertex(v) => {
                if !cell.vertices.contains(v) {
                    return Err(Error::IllegalPath(format!(
                        "vertex {v} is not on the facet {:?}",
                        cell.vertices
                    )));
                }
                self.transition_near(*v, from, to)
            }
            Crossing::Segment(i) => self.segment_map(rho, from, *i),
            Crossing::At(t) => {
                if self.n != 2 || t <= &Rat::zero() || t >= &Rat::one() {
                    return Err(Error::IllegalPath(
                        "crossing parameter must lie inside an edge".into(),
                    ));
                }
                let marks = self.effective_marks(rho)?;
                if marks.iter().any(|(p, _)| p == t) {
                    return Err(Error::IllegalPath(format!(
                        "path meets the singular point at t = {t}"
                    )));
                }
                let i = marks.iter().filter(|(p, _)| p < t).count();
                self.segment_map(rho, from, i)
            }
        }
    }

    fn segment_map(&self, rho: usize, from: usize, i: usize) -> Result<AffineMapZ> {
        if self.n != 2 {
            return Err(Error::IllegalPath(
                "segment crossings are defined on surfaces only".into(),
            ));
        }
        let marks = self.effective_marks(rho)?;
        if i > marks.len() {
            return Err(Error::IllegalPath(format!(
                "edge has only {} segments",
                marks.len() + 1
            )));
        }
        let cell = &self.cells[rho];
        let (lo, hi) = (cell.max_cells[0], cell.max_cells[1]);
        let (v0, v1) = (cell.vertices[0], cell.vertices[1]);
        let k: Int = marks[..i].iter().map(|(_, q)| q.clone()).sum();
        let d = self.edge_direction(lo, v0, v1)?;
        let e = self.outward_normal(rho, lo)?;
        let mut shear = IntMatrix::identity(2);
        for a in 0..2 {
            for b in 0..2 {
                shear[(a, b)] -= &k * &d.0[a] * &e.0[b];
            }
        }
        let l = &self.chart(v0, hi).inverse_unimodular()? * self.chart(v0, lo);
        let f = AffineMapZ::based(&l * &shear, self.position(lo, v0), self.position(hi, v0));
        if from == lo {
            Ok(f)
        } else {
            f.inverse()
        }
    }

    /// Composite chart change along a chain of adjacent maximal cells.
    pub fn parallel_transport(&self, path: &[usize], crossings: &[Crossing]) -> Result<AffineMapZ> {
        if path.is_empty() || crossings.len() + 1 != path.len() {
            return Err(Error::IllegalPath(format!(
                "{} cells need {} crossings",
                path.len(),
                path.len().saturating_sub(1)
            )));
        }
        let mut acc = AffineMapZ::identity(self.n);
        for (w, c) in path.windows(2).zip(crossings) {
            acc = self.crossing_map(w[0], w[1], c)?.compose(&acc);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::lattice::rat;

    #[test]
    fn two_triangle_kappa_is_total_charge() {
        for k in [-2, 0, 1, 3] {
            let c = two_triangles(&[(rat(1, 2), k)]);
            let e = c.cell_id(&[1, 2]).unwrap();
            assert_eq!(c.kappa(e, e).unwrap(), Int::from(k));
        }
    }

    #[test]
    fn near_vertex_and_segment_crossings_agree_at_the_ends() {
        let c = two_triangles(&[(rat(1, 3), 1), (rat(2, 3), 1)]);
        let low = c.crossing_map(0, 1, &Crossing::NearVertex(1)).unwrap();
        let high = c.crossing_map(0, 1, &Crossing::NearVertex(2)).unwrap();
        assert_eq!(low, c.crossing_map(0, 1, &Crossing::Segment(0)).unwrap());
        assert_eq!(high, c.crossing_map(0, 1, &Crossing::Segment(2)).unwrap());
        assert_eq!(
            c.crossing_map(0, 1, &Crossing::At(rat(1, 2))).unwrap(),
            c.crossing_map(0, 1, &Crossing::Segment(1)).unwrap()
        );
    }

    #[test]
    fn loop_around_one_mark_is_a_unit_shear() {
        let c = two_triangles(&[(rat(1, 3), 1), (rat(2, 3), 1)]);
        let t = c
            .parallel_transport(&[0, 1, 0], &[Crossing::Segment(0), Crossing::Segment(1)])
            .unwrap();
        assert!(is_unit_shear(&t.linear));
        let both = c
            .parallel_transport(&[0, 1, 0], &[Crossing::Segment(0), Crossing::Segment(2)])
            .unwrap();
        assert!(!is_unit_shear(&both.linear));
        assert_eq!(both.linear, IntMatrix::from_i64(&[vec![1, 2], vec![0, 1]]));
    }

    #[test]
    fn crossing_through_a_mark_is_illegal() {
        let c = two_triangles(&[(rat(1, 2), 1)]);
        assert!(matches!(
            c.crossing_map(0, 1, &Crossing::At(rat(1, 2))),
            Err(Error::IllegalPath(_))
        ));
        assert!(matches!(
            c.crossing_map(0, 1, &Crossing::NearVertex(0)),
            Err(Error::IllegalPath(_))
        ));
    }

    #[test]
    fn flat_torus_has_trivial_monodromy() {
        let c = flat_torus(3);
        assert!(c.kappas().unwrap().values().all(Zero::is_zero));
    }

    #[test]
    fn tetrahedron_edges_have_monodromy_four() {
        let c = tetrahedron_boundary();
        let ks = c.kappas().unwrap();
        assert_eq!(ks.len(), 6);
        assert!(ks.values().all(|k| *k == Int::from(4)));
    }

    #[test]
    fn focus_focus_refinement() {
        let c = focus_focus_complex();
        let ks = c.kappas().unwrap();
        assert_eq!(ks.values().filter(|k| k.is_one()).count(), 24);
        assert_eq!(ks.values().filter(|k| k.is_zero()).count(), 72);
    }

    #[test]
    fn kappa_is_independent_of_loop_choices() {
        let c = tetrahedron_boundary();
        for e in c.cells_of_dim(1) {
            let cell = c.cell(e).clone();
            let (a, b) = (cell.vertices[0], cell.vertices[1]);
            let (s, t) = (cell.max_cells[0], cell.max_cells[1]);
            let k0 = c.monodromy_loop(e, e, a, b, s, t).unwrap().kappa;
            assert_eq!(c.monodromy_loop(e, e, b, a, t, s).unwrap().kappa, k0);
            assert_eq!(c.monodromy_loop(e, e, b, a, s, t).unwrap().kappa, k0);
            assert_eq!(c.monodromy_loop(e, e, a, b, t, s).unwrap().kappa, k0);
        }
    }

    #[test]
    fn shear_factor_detects_rank_two() {
        let m = IntMatrix::from_i64(&[vec![1, 0], vec![0, 1]]);
        assert!(shear_factor(
            &m,
            &LatticePoint::from_i64(&[1, 0]),
            &LatticePoint::from_i64(&[0, 1])
        )
        .is_none());
        assert!(is_unit_shear(&IntMatrix::from_i64(&[
            vec![1, 1],
            vec![0, 1]
        ])));
        assert!(is_unit_shear(&IntMatrix::from_i64(&[
            vec![0, 1],
            vec![-1, 2]
        ])));
        assert!(!is_unit_shear(&IntMatrix::from_i64(&[
            vec![1, 2],
            vec![0, 1]
        ])));
    }
}
