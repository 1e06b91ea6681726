use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Int, IntMatrix, LatticePoint};
use crate::polyhedra::LatticePolytope;

use super::PolyCellComplex;

/// Largest `|P_1(τ)|` or `|P_{n-1}(τ)|` the family search accepts.
pub const DEFAULT_FAMILY_BOUND: usize = 8;

/// Local monodromy polytopes at a cell `τ`, all in the chart of `base_cell`.
#[derive(Clone, Debug)]
pub struct MonodromyPolytopeSet {
    pub tau: usize,
    pub base_vertex: usize,
    pub base_cell: usize,
    /// `Δ(ρ)` for the codimension-one cells containing `τ`.
    pub delta_rho: Vec<(usize, LatticePolytope)>,
    /// `Δ̌(ω)` for the edges of `τ`.
    pub delta_check_omega: Vec<(usize, LatticePolytope)>,
    pub delta_rho_tau: Vec<(usize, LatticePolytope)>,
    pub delta_check_omega_tau: Vec<(usize, LatticePolytope)>,
    /// `(Ω_i, R_i)` families forced by the nonzero monodromy pairs, if consistent.
    pub families: Option<Vec<(Vec<usize>, Vec<usize>)>>,
    pub delta_tau: Option<LatticePolytope>,
    pub delta_check_tau: Option<LatticePolytope>,
}

impl MonodromyPolytopeSet {
    pub fn p(&self) -> usize {
        self.families.as_ref().map_or(0, Vec::len)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauCertificate {
    pub tau: usize,
    pub families: Vec<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub positive: bool,
    /// Verdict of the definition applied to the cells as given.
    pub simple: bool,
    /// Verdict with every singular point counted separately: each mark (or
    /// implicit aggregate) must be a unit shear.
    pub per_point_simple: bool,
    pub certificates: Vec<TauCertificate>,
    pub failing: Vec<(usize, String)>,
}

impl PolyCellComplex {
    /// `m^ρ_{vv'}` with `T - I = m ďᵀ` for the loop through `ρ` near `v` and `v'`,
    /// in the chart of the lower maximal cell at `ρ`.
    pub fn m_vector(&self, rho: usize, v: usize, w: usize) -> Result<LatticePoint> {
        let r = &self.cells[rho];
        let (lo, hi) = (r.max_cells[0], r.max_cells[1]);
        let t = &self.loop_matrix(w, v, lo, hi)? - &IntMatrix::identity(self.n);
        let e = self.outward_normal(rho, lo)?;
        let j = (0..self.n)
            .find(|&j| !e.0[j].is_zero())
            .expect("nonzero normal");
        let jcol = t.col(j);
        let m = LatticePoint(jcol.0.iter().map(|x| x / &e.0[j]).collect());
        let ok = (0..self.n).all(|a| (0..self.n).all(|b| t[(a, b)] == &m.0[a] * &e.0[b]));
        ok.then_some(m).ok_or_else(|| {
            Error::NoShearDecomposition(format!("pairwise monodromy at cell {rho} is not m·ďᵀ"))
        })
    }

    /// `n_ω^{σσ'}` with `T - I = d nᵀ` for the loop along `ω` through `σ` and `σ'`,
    /// in the chart of `σ`.
    pub fn n_vector(&self, omega: usize, s: usize, t: usize) -> Result<LatticePoint> {
        let o = &self.cells[omega];
        let (a, b) = (o.vertices[0], o.vertices[1]);
        let m = &self.loop_matrix(b, a, s, t)? - &IntMatrix::identity(self.n);
        let d = self.edge_direction(s, a, b)?;
        let i = (0..self.n)
            .find(|&i| !d.0[i].is_zero())
            .expect("nonzero direction");
        let row = m.row(i);
        let nv = LatticePoint(row.0.iter().map(|x| x / &d.0[i]).collect());
        let ok = (0..self.n).all(|x| (0..self.n).all(|y| m[(x, y)] == &d.0[x] * &nv.0[y]));
        ok.then_some(nv).ok_or_else(|| {
            Error::NoShearDecomposition(format!(
                "pairwise monodromy along cell {omega} is not d·nᵀ"
            ))
        })
    }

    fn to_chart(&self, v: usize, from: usize, to: usize, x: &LatticePoint) -> Result<LatticePoint> {
        Ok((&self.chart(v, to).inverse_unimodular()? * self.chart(v, from)).mul_vec(x))
    }

    fn to_chart_dual(
        &self,
        v: usize,
        from: usize,
        to: usize,
        x: &LatticePoint,
    ) -> Result<LatticePoint> {
        Ok((&self.chart(v, from).inverse_unimodular()? * self.chart(v, to)).vec_mul(x))
    }

    fn interior_facets_at(&self, tau: usize) -> Vec<usize> {
        self.cofaces_of(tau, self.n - 1)
            .into_iter()
            .filter(|&r| self.cells[r].max_cells.len() == 2)
            .collect()
    }
}

/// All local monodromy polytopes at `τ`.
pub fn monodromy_polytopes(c: &PolyCellComplex, tau: usize) -> Result<MonodromyPolytopeSet> {
    let n = c.dim();
    if n < 2 {
        return Err(Error::Invalid(
            "monodromy polytopes need dimension at least 2".into(),
        ));
    }
    let cell = c.cell(tau).clone();
    let v = cell.vertices[0];
    let base = cell.max_cells[0];
    let rhos = c.interior_facets_at(tau);
    let omegas = c.faces_of(tau, 1);

    let mut delta_rho = Vec::new();
    let mut delta_rho_tau = Vec::new();
    for &rho in &rhos {
        let r = c.cell(rho);
        let lo = r.max_cells[0];
        let own: Vec<_> = r
            .vertices
            .iter()
            .map(|&w| c.m_vector(rho, r.vertices[0], w))
            .collect::<Result<_>>()?;
        delta_rho.push((rho, LatticePolytope::from_lattice_points(&own)?));
        let local: Vec<_> = cell
            .vertices
            .iter()
            .map(|&w| {
                c.m_vector(rho, v, w)
                    .and_then(|m| c.to_chart(v, lo, base, &m))
            })
            .collect::<Result<_>>()?;
        delta_rho_tau.push((rho, LatticePolytope::from_lattice_points(&local)?));
    }
    let mut delta_check_omega = Vec::new();
    let mut delta_check_omega_tau = Vec::new();
    for &omega in &omegas {
        let o = c.cell(omega);
        let s0 = o.max_cells[0];
        let own: Vec<_> = o
            .max_cells
            .iter()
            .map(|&t| c.n_vector(omega, s0, t))
            .collect::<Result<_>>()?;
        delta_check_omega.push((omega, LatticePolytope::from_lattice_points(&own)?));
        let local: Vec<_> = cell
            .max_cells
            .iter()
            .map(|&t| {
                c.n_vector(omega, s0, t)
                    .and_then(|x| c.to_chart_dual(o.vertices[0], s0, base, &x))
            })
            .collect::<Result<_>>()?;
        delta_check_omega_tau.push((omega, LatticePolytope::from_lattice_points(&local)?));
    }

    let families = forced_families(c, &omegas, &rhos)?;
    let (delta_tau, delta_check_tau) = match &families {
        Some(f) if !f.is_empty() => {
            let lookup_r: BTreeMap<usize, &LatticePolytope> =
                delta_rho_tau.iter().map(|(r, p)| (*r, p)).collect();
            let lookup_o: BTreeMap<usize, &LatticePolytope> =
                delta_check_omega_tau.iter().map(|(o, p)| (*o, p)).collect();
            let reps_r: Vec<&LatticePolytope> = f.iter().map(|(_, rs)| lookup_r[&rs[0]]).collect();
            let reps_o: Vec<&LatticePolytope> = f.iter().map(|(os, _)| lookup_o[&os[0]]).collect();
            (Some(assemble(n, &reps_r)?), Some(assemble(n, &reps_o)?))
        }
        _ => (None, None),
    };
    Ok(MonodromyPolytopeSet {
        tau,
        base_vertex: v,
        base_cell: base,
        delta_rho,
        delta_check_omega,
        delta_rho_tau,
        delta_check_omega_tau,
        families,
        delta_tau,
        delta_check_tau,
    })
}

/// Families `(Ω_i, R_i)` such that `κ_{ωρ} ≠ 0` exactly on `⋃ Ω_i × R_i`.
/// These are the connected components of the nonzero pairs, each of which
/// must be complete bipartite; `None` when some component is not.
fn forced_families(
    c: &PolyCellComplex,
    omegas: &[usize],
    rhos: &[usize],
) -> Result<Option<Vec<(Vec<usize>, Vec<usize>)>>> {
    let mut nonzero = BTreeSet::new();
    for &o in omegas {
        for &r in rhos {
            if c.is_face(o, r) && !c.kappa(o, r)?.is_zero() {
                nonzero.insert((o, r));
            }
        }
    }
    let mut seen_o = BTreeSet::new();
    let mut families = Vec::new();
    for &(o0, _) in &nonzero {
        if seen_o.contains(&o0) {
            continue;
        }
        let (mut os, mut rs) = (BTreeSet::from([o0]), BTreeSet::new());
        loop {
            let before = (os.len(), rs.len());
            for &(o, r) in &nonzero {
                if os.contains(&o) || rs.contains(&r) {
                    os.insert(o);
                    rs.insert(r);
                }
            }
            if (os.len(), rs.len()) == before {
                break;
            }
        }
        if !os
            .iter()
            .all(|o| rs.iter().all(|r| nonzero.contains(&(*o, *r))))
        {
            return Ok(None);
        }
        seen_o.extend(os.iter().copied());
        families.push((os.into_iter().collect(), rs.into_iter().collect()));
    }
    Ok(Some(families))
}

/// `conv(⋃ P_i × {e_i})` in `Z^n ⊕ Z^p`.
fn assemble(n: usize, parts: &[&LatticePolytope]) -> Result<LatticePolytope> {
    let p = parts.len();
    let mut pts = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for v in part.lattice_vertices().expect("integral monodromy vectors") {
            let mut coords = v.0.clone();
            coords.extend((0..p).map(|j| if i == j { Int::one() } else { Int::zero() }));
            pts.push(LatticePoint(coords));
        }
    }
    debug_assert!(pts.iter().all(|x| x.dim() == n + p));
    LatticePolytope::from_lattice_points(&pts)
}

fn normalized(p: &LatticePolytope) -> Vec<LatticePoint> {
    let vs = p.lattice_vertices().expect("integral");
    let base = vs.iter().min().expect("nonempty").clone();
    let mut out: Vec<_> = vs.iter().map(|v| v - &base).collect();
    out.sort();
    out
}

fn same_up_to_translation(a: &LatticePolytope, b: &LatticePolytope) -> bool {
    normalized(a) == normalized(b)
}

fn check_tau(
    c: &PolyCellComplex,
    tau: usize,
    bound: usize,
) -> Result<std::result::Result<TauCertificate, String>> {
    let rhos = c.interior_facets_at(tau);
    let omegas = c.faces_of(tau, 1);
    if omegas.len() > bound || rhos.len() > bound {
        return Err(Error::SearchOverflow(omegas.len().max(rhos.len())));
    }
    let set = monodromy_polytopes(c, tau)?;
    let Some(families) = set.families.clone() else {
        return Ok(Err(
            "nonzero monodromy pairs do not split into disjoint families".into(),
        ));
    };
    let dr: BTreeMap<usize, &LatticePolytope> =
        set.delta_rho_tau.iter().map(|(r, p)| (*r, p)).collect();
    let dc: BTreeMap<usize, &LatticePolytope> = set
        .delta_check_omega_tau
        .iter()
        .map(|(o, p)| (*o, p))
        .collect();
    for (i, (os, rs)) in families.iter().enumerate() {
        if !rs.iter().all(|r| same_up_to_translation(dr[r], dr[&rs[0]])) {
            return Ok(Err(format!("family {i}: the Δ_ρ(τ) differ")));
        }
        if !os.iter().all(|o| same_up_to_translation(dc[o], dc[&os[0]])) {
            return Ok(Err(format!("family {i}: the Δ̌_ω(τ) differ")));
        }
    }
    for (name, poly) in [("Δ(τ)", &set.delta_tau), ("Δ̌(τ)", &set.delta_check_tau)] {
        if let Some(p) = poly {
            if !p.is_elementary_simplex() {
                let pts = p.lattice_points()?.len();
                return Ok(Err(format!(
                    "{name} is not an elementary simplex ({} vertices, {pts} lattice points)",
                    p.vertices().len()
                )));
            }
        }
    }
    Ok(Ok(TauCertificate { tau, families }))
}

/// Positivity and simplicity, with the family-size bound [`DEFAULT_FAMILY_BOUND`].
pub fn is_simple(c: &PolyCellComplex) -> Result<SimplicityReport> {
    is_simple_bounded(c, DEFAULT_FAMILY_BOUND)
}

pub fn is_simple_bounded(c: &PolyCellComplex, bound: usize) -> Result<SimplicityReport> {
    let negative = c.negative_kappas()?;
    let positive = negative.is_empty();
    let mut failing: Vec<(usize, String)> = negative
        .iter()
        .map(|((o, r), k)| {
            (
                *r,
                format!(
                    "κ = {k} on edge {:?} of cell {:?}",
                    c.cell(*o).vertices,
                    c.cell(*r).vertices
                ),
            )
        })
        .collect();
    let mut certificates = Vec::new();
    if positive && c.dim() >= 2 {
        for tau in (0..c.cells().len()).filter(|&t| (1..c.dim()).contains(&c.cell(t).dim)) {
            match check_tau(c, tau, bound)? {
                Ok(cert) => certificates.push(cert),
                Err(why) => failing.push((tau, why)),
            }
        }
    }
    let simple = positive && failing.is_empty();
    let mut per_point_simple = positive;
    if positive && c.dim() == 2 {
        for rho in c.cells_of_dim(1) {
            if c.effective_marks(rho)?.iter().any(|(_, q)| !q.is_one()) {
                per_point_simple = false;
            }
        }
    } else if positive {
        per_point_simple = simple;
    }
    Ok(SimplicityReport {
        positive,
        simple,
        per_point_simple,
        certificates,
        failing,
    })
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::lattice::rat;

    #[test]
    fn monodromy_free_is_simple_with_no_families() {
        let r = is_simple(&flat_torus(3)).unwrap();
        assert!(r.positive && r.simple && r.per_point_simple);
        assert!(r.certificates.iter().all(|c| c.families.is_empty()));
        let set = monodromy_polytopes(&flat_torus(3), flat_torus(3).cells_of_dim(1)[0]).unwrap();
        assert!(set.delta_rho.iter().all(|(_, p)| p.vertices().len() == 1));
    }

    #[test]
    fn focus_focus_edge_gives_unit_segment() {
        let c = two_triangles(&[(rat(1, 2), 1)]);
        let e = c.cell_id(&[1, 2]).unwrap();
        let set = monodromy_polytopes(&c, e).unwrap();
        assert_eq!(set.delta_rho[0].1.lattice_length(), Some(Int::one()));
        assert_eq!(set.p(), 1);
        assert!(set.delta_tau.unwrap().is_elementary_simplex());
    }

    #[test]
    fn focus_focus_complex_is_simple() {
        let r = is_simple(&focus_focus_complex()).unwrap();
        assert!(r.simple, "{:?}", r.failing);
        assert!(r.per_point_simple);
    }

    #[test]
    fn aggregated_charge_four_fails_literally() {
        let c = tetrahedron_boundary();
        let e = c.cells_of_dim(1)[0];
        let set = monodromy_polytopes(&c, e).unwrap();
        let seg = &set.delta_rho[0].1;
        assert_eq!(seg.lattice_length(), Some(Int::from(4)));
        assert_eq!(seg.lattice_points().unwrap().len(), 5);
        let r = is_simple(&c).unwrap();
        assert!(r.positive);
        assert!(!r.simple);
        assert_eq!(r.failing.len(), 6);
        assert!(!r.per_point_simple);
    }

    #[test]
    fn negative_charge_is_not_positive() {
        let c = two_triangles(&[(rat(1, 2), -1)]);
        let r = is_simple(&c).unwrap();
        assert!(!r.positive && !r.simple);
        assert_eq!(c.negative_kappas().unwrap().len(), 1);
    }

    #[test]
    fn tiny_bound_overflows() {
        assert!(matches!(
            is_simple_bounded(&focus_focus_complex(), 0),
            Err(Error::SearchOverflow(_))
        ));
    }
}
