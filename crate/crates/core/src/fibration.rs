//! Central-fiber models, Kato–Nakayama fiber classes and the quartic K3 run.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use crate::complex::examples::{mark_on_edge, tetrahedron_boundary};
use crate::complex::mpl::fan_normal;
use crate::complex::{
    mpl_check, validate_complex, MPLFunction, MplReport, PolyCellComplex, ValidationReport,
};
use crate::error::{Error, Result};
use crate::gluing::{OpenGluingData, ZeroCochain};
use crate::lattice::{Int, LatticePoint, Rat};
use crate::monoid::ToricMonoid;
use crate::poly::{
    factor_int_poly, k3_quartic, quadratic_roots, real_root_count, restrict_to_edge,
    EdgeRestriction, Factorization, HomogeneousPoly, IntPoly, QuadraticSurd,
};
use crate::polyhedra::LatticePolytope;
use crate::toric::{LogKind, MomentumEval, ToricVarietyModel};

/// Central fiber of a toric degeneration: one toric component per maximal
/// cell, glued along the cells of the base.
#[derive(Clone, Debug)]
pub struct ToricLogCY {
    complex: PolyCellComplex,
    components: Vec<ToricVarietyModel>,
    phi: MPLFunction,
    gluing: OpenGluingData,
}

impl ToricLogCY {
    /// Components with their toric boundary, trivial gluing data.
    pub fn new(complex: PolyCellComplex, phi: MPLFunction) -> Result<Self> {
        let gluing = OpenGluingData::from_zero_cochain(&complex, &ZeroCochain::default())?;
        Self::with_gluing(complex, phi, gluing)
    }

    pub fn with_gluing(
        complex: PolyCellComplex,
        phi: MPLFunction,
        gluing: OpenGluingData,
    ) -> Result<Self> {
        let components = complex
            .max_cells()
            .iter()
            .map(|m| ToricVarietyModel::projective(&m.polytope, LogKind::ToricBoundary))
            .collect::<Result<_>>()?;
        Ok(ToricLogCY {
            complex,
            components,
            phi,
            gluing,
        })
    }

    pub fn complex(&self) -> &PolyCellComplex {
        &self.complex
    }

    pub fn components(&self) -> &[ToricVarietyModel] {
        &self.components
    }

    pub fn phi(&self) -> &MPLFunction {
        &self.phi
    }

    pub fn gluing(&self) -> &OpenGluingData {
        &self.gluing
    }

    /// Explicit marks, or the implicit midpoint mark of each edge with nonzero monodromy.
    pub fn discriminant(&self) -> Result<Vec<DiscriminantPoint>> {
        let c = &self.complex;
        let mut out = Vec::new();
        if c.dim() != 2 {
            return Ok(out);
        }
        for rho in c.cells_of_dim(1) {
            for (param, charge) in c.effective_marks(rho)? {
                out.push(DiscriminantPoint {
                    cell: rho,
                    param,
                    charge,
                });
            }
        }
        Ok(out)
    }

    /// Ghost rank of the total space at a point of the open stratum of `omega`.
    pub fn total_ghost_rank(&self, omega: usize) -> Result<usize> {
        Ok(total_ghost(&self.complex, &self.phi, omega)?
            .sharp_quotient()
            .gp_rank())
    }

    /// Ghost rank of the toric boundary of the component `X_tau` at a point of the orbit of `omega ⊆ tau`.
    pub fn component_ghost_rank(&self, tau: usize, omega: usize) -> Result<usize> {
        if !self.complex.is_face(omega, tau) {
            return Err(Error::Invalid(format!(
                "cell {omega} is not a face of cell {tau}"
            )));
        }
        let c = &self.complex;
        let v = c.cell(omega).vertices[0];
        let mut gens = c.vertex_cone_of_cell(v, tau)?.generators();
        for g in c.vertex_cone_of_cell(v, omega)?.generators() {
            gens.push(-&g);
            gens.push(g);
        }
        Ok(ToricMonoid::from_generators(c.dim(), &gens)?
            .sharp_quotient()
            .gp_rank())
    }
}

/// The monoid `{(m, h) : h >= φ(m)}` over the star of `omega`, in the fan chart at its first vertex.
fn total_ghost(c: &PolyCellComplex, phi: &MPLFunction, omega: usize) -> Result<ToricMonoid> {
    let n = c.dim();
    let v = c.cell(omega).vertices[0];
    let star: Vec<usize> = c.cell(omega).max_cells.clone();
    let mut slope: BTreeMap<usize, LatticePoint> = BTreeMap::new();
    let mut queue = VecDeque::from([star[0]]);
    slope.insert(star[0], LatticePoint::zero(n));
    let walls: Vec<usize> = if n == 0 {
        Vec::new()
    } else {
        c.cofaces_of(omega, n - 1)
            .into_iter()
            .filter(|&r| c.cell(r).max_cells.len() == 2)
            .collect()
    };
    while let Some(s) = queue.pop_front() {
        for &rho in &walls {
            let ms = &c.cell(rho).max_cells;
            if !ms.contains(&s) {
                continue;
            }
            let t = if ms[0] == s { ms[1] } else { ms[0] };
            let next = &slope[&s] + &fan_normal(c, rho, v, t)?.scale(&phi.kink(rho));
            match slope.get(&t) {
                Some(old) if *old != next => {
                    return Err(Error::Invalid(format!(
                        "kinks do not close around cell {omega}"
                    )));
                }
                Some(_) => {}
                None => {
                    slope.insert(t, next);
                    queue.push_back(t);
                }
            }
        }
    }
    let lift = |g: &LatticePoint, s: &LatticePoint| {
        let mut x = g.0.clone();
        x.push(g.dot(s));
        LatticePoint(x)
    };
    let mut gens = vec![LatticePoint::unit(n + 1, n)];
    for (&s, m) in &slope {
        for g in c.vertex_cone(v, s)?.rays() {
            gens.push(lift(g, m));
        }
    }
    let base = &slope[&star[0]];
    for g in c.vertex_cone_of_cell(v, omega)?.generators() {
        gens.push(lift(&-&g, base));
        gens.push(lift(&g, base));
    }
    ToricMonoid::from_generators(n + 1, &gens)
}

/// One row of the rank identity: at a point of the orbit of `omega` in `X_tau`,
/// `total = component + codim(tau) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingRow {
    pub omega: usize,
    pub total: usize,
    pub component: usize,
    pub normal: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingRankReport {
    pub tau: usize,
    pub rows: Vec<SplittingRow>,
}

impl SplittingRankReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Ghost ranks of the total space and of the component compared at every orbit of `X_tau`.
pub fn splitting_rank_check(cy: &ToricLogCY, tau: usize) -> Result<SplittingRankReport> {
    let c = cy.complex();
    if tau >= c.cells().len() {
        return Err(Error::Invalid(format!("no cell {tau}")));
    }
    let normal = c.dim() - c.cell(tau).dim;
    let mut rows = Vec::new();
    for d in 0..=c.cell(tau).dim {
        for omega in c.faces_of(tau, d) {
            let total = cy.total_ghost_rank(omega)?;
            let component = cy.component_ghost_rank(tau, omega)?;
            rows.push(SplittingRow {
                omega,
                total,
                component,
                normal,
                holds: total == component + normal + 1,
            });
        }
    }
    Ok(SplittingRankReport { tau, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantPoint {
    pub cell: usize,
    pub param: Rat,
    pub charge: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberClass {
    SmoothTorus(usize),
    NodalElliptic,
    UnknownSingular,
}

impl FiberClass {
    pub fn euler_characteristic(&self) -> Option<i64> {
        match self {
            FiberClass::SmoothTorus(0) => Some(1),
            FiberClass::SmoothTorus(_) => Some(0),
            FiberClass::NodalElliptic => Some(1),
            FiberClass::UnknownSingular => None,
        }
    }
}

impl fmt::Display for FiberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberClass::SmoothTorus(r) => write!(f, "smooth-torus({r})"),
            FiberClass::NodalElliptic => write!(f, "nodal-elliptic"),
            FiberClass::UnknownSingular => write!(f, "unknown-singular"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasePoint {
    /// A point in the relative interior of a cell, away from the marks.
    Cell(usize),
    /// A discriminant point (index into [`ToricLogCY::discriminant`]).
    Mark(usize),
}

/// Fiber of the Kato–Nakayama space over a base point with the phase of `t` fixed.
pub fn fiber_class(cy: &ToricLogCY, b: BasePoint) -> Result<FiberClass> {
    let c = cy.complex();
    match b {
        BasePoint::Cell(omega) => {
            if omega >= c.cells().len() {
                return Err(Error::Invalid(format!("no cell {omega}")));
            }
            // real torus of the orbit, times the ghost torus, minus the fixed phase
            Ok(FiberClass::SmoothTorus(
                c.cell(omega).dim + cy.total_ghost_rank(omega)? - 1,
            ))
        }
        BasePoint::Mark(i) => {
            let d = cy.discriminant()?;
            let m = d
                .get(i)
                .ok_or_else(|| Error::Invalid(format!("no discriminant point {i}")))?;
            Ok(if c.dim() == 2 && m.charge.is_one() {
                FiberClass::NodalElliptic
            } else {
                FiberClass::UnknownSingular
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationReport {
    /// Generic fiber over each cell.
    pub cells: Vec<(usize, FiberClass)>,
    pub discriminant: Vec<(usize, FiberClass)>,
    /// Undefined when some fiber class is unknown.
    pub euler_characteristic: Option<i64>,
    /// Total-space ghost rank over each cell.
    pub kn_ranks: Vec<(usize, usize)>,
}

pub fn fibration_report(cy: &ToricLogCY) -> Result<FibrationReport> {
    let c = cy.complex();
    let mut cells = Vec::new();
    let mut kn_ranks = Vec::new();
    for omega in 0..c.cells().len() {
        cells.push((omega, fiber_class(cy, BasePoint::Cell(omega))?));
        kn_ranks.push((omega, cy.total_ghost_rank(omega)?));
    }
    let discriminant: Vec<(usize, FiberClass)> = (0..cy.discriminant()?.len())
        .map(|i| Ok((i, fiber_class(cy, BasePoint::Mark(i))?)))
        .collect::<Result<_>>()?;
    // open strata off the discriminant carry torus fibers and contribute nothing
    let euler_characteristic = discriminant
        .iter()
        .map(|(_, f)| f.euler_characteristic())
        .sum::<Option<i64>>();
    Ok(FibrationReport {
        cells,
        discriminant,
        euler_characteristic,
        kn_ranks,
    })
}

/// A real root of an edge polynomial and its point on the edge.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeRoot {
    pub exact: QuadraticSurd,
    pub factor: IntPoly,
    /// Momentum coordinate on the edge, measured from the vertex of `X_j` in lattice units.
    pub momentum: f64,
    pub charge: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeReport {
    /// `(i, j)` with `x = X_i / X_j`.
    pub coords: (usize, usize),
    pub cell: usize,
    pub restriction: EdgeRestriction,
    pub factorization: Factorization,
    pub real_roots: usize,
    pub roots: Vec<EdgeRoot>,
}

#[derive(Clone, Debug)]
pub struct K3Report {
    pub edges: Vec<EdgeReport>,
    pub discriminant_count: usize,
    pub cy: ToricLogCY,
    pub validation: ValidationReport,
    pub kappas: BTreeMap<usize, Int>,
    pub positive: bool,
    pub mpl: MplReport,
    pub splitting: Vec<SplittingRankReport>,
    pub fibration: FibrationReport,
}

/// Roots of the restriction to the line of `X_i, X_j`, placed on the edge of the
/// corresponding vertices by the momentum map of the edge polytope.
pub fn discriminant_on_edge(
    c: &PolyCellComplex,
    f: &HomogeneousPoly,
    i: usize,
    j: usize,
) -> Result<EdgeReport> {
    let cell = c
        .cell_id(&[i.min(j), i.max(j)])
        .ok_or_else(|| Error::Invalid(format!("no edge between {i} and {j}")))?;
    let restriction = restrict_to_edge(f, i, j)?;
    if restriction.vanishes() {
        return Err(Error::InLogSingularLocus(format!(
            "the line X_{i}, X_{j} lies in the zero locus"
        )));
    }
    let factorization = factor_int_poly(&restriction.univariate)?;
    let real_roots = real_root_count(&restriction.univariate)?;
    let s = c.cell(cell).max_cells[0];
    let len = (c.position(s, i) - c.position(s, j)).content();
    let segment = LatticePolytope::from_lattice_points(&[
        LatticePoint::from_i64(&[0]),
        LatticePoint(vec![len]),
    ])?;
    let mu = MomentumEval::new(&segment)?;
    let mut roots = Vec::new();
    for factor in &factorization.factors {
        let exact = quadratic_roots(factor)
            .ok_or_else(|| Error::Invalid(format!("factor {factor} has degree above two")))?;
        for r in exact {
            let x = r.to_f64();
            if x == 0.0 {
                continue;
            }
            let momentum = mu.eval(&mu.torus_point(&[Complex64::new(x, 0.0)]))?[0];
            roots.push(EdgeRoot {
                exact: r,
                factor: factor.clone(),
                momentum,
                charge: 1,
            });
        }
    }
    roots.sort_by(|a, b| a.exact.to_f64().total_cmp(&b.exact.to_f64()));
    Ok(EdgeReport {
        coords: (i, j),
        cell,
        restriction,
        factorization,
        real_roots,
        roots,
    })
}

/// The quartic K3 degeneration over the boundary of the tetrahedron.
pub fn k3_run() -> Result<K3Report> {
    k3_run_with(&k3_quartic())
}

/// As [`k3_run`] with another quartic; coordinate `X_k` is attached to vertex `k`.
pub fn k3_run_with(f: &HomogeneousPoly) -> Result<K3Report> {
    let base = tetrahedron_boundary();
    if f.nvars() != 4 || base.num_vertices() != 4 {
        return Err(Error::DimensionMismatch(
            "expected a form in four variables".into(),
        ));
    }
    let mut edges = Vec::new();
    let mut marks = Vec::new();
    for j in 0..4 {
        for i in j + 1..4 {
            let e = discriminant_on_edge(&base, f, i, j)?;
            for r in &e.roots {
                let len = e.restriction.binary_form.len() - 1;
                let t = Rat::from_float(r.momentum / len.max(1) as f64)
                    .ok_or_else(|| Error::Invalid("non-finite momentum".into()))?;
                let m = mark_on_edge(&base, j, i, t, r.charge).ok_or_else(|| {
                    Error::Invalid(format!("root {} maps to an end of edge {i}{j}", r.exact))
                })?;
                marks.push(m);
            }
            edges.push(e);
        }
    }
    let discriminant_count = marks.len();
    let complex = base.with_marks(marks)?;
    let validation = validate_complex(&complex);
    let kappas = complex
        .cells_of_dim(1)
        .into_iter()
        .map(|r| Ok((r, complex.kappa(r, r)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let positive = complex.is_positive()?;
    let phi = MPLFunction::constant(&complex, 1)?;
    let mpl = mpl_check(&complex, &phi)?;
    let cy = ToricLogCY::new(complex, phi)?;
    let splitting = (0..cy.complex().cells().len())
        .map(|t| splitting_rank_check(&cy, t))
        .collect::<Result<Vec<_>>>()?;
    let fibration = fibration_report(&cy)?;
    Ok(K3Report {
        edges,
        discriminant_count,
        cy,
        validation,
        kappas,
        positive,
        mpl,
        splitting,
        fibration,
    })
}

impl K3Report {
    /// Sum of charges on each edge against its monodromy.
    pub fn charges_match_kappa(&self) -> bool {
        let c = self.cy.complex();
        self.kappas.iter().all(|(&r, k)| {
            let q: i64 = c
                .marks()
                .iter()
                .filter(|m| m.cell == r)
                .map(|m| m.charge)
                .sum();
            Int::from(q) == *k
        })
    }

    /// Momentum points per edge, as parameters in `(0, 1)` from the lower vertex.
    pub fn edge_params(&self) -> BTreeMap<usize, Vec<f64>> {
        let mut out: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
        for m in self.cy.complex().marks() {
            out.entry(m.cell)
                .or_default()
                .push(m.param().to_f64().unwrap_or(f64::NAN));
        }
        for v in out.values_mut() {
            v.sort_by(f64::total_cmp);
        }
        out
    }
}
