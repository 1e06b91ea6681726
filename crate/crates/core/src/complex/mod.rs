//! Integral affine cell complexes with singularities: charts, validation,
//! parallel transport and monodromy, positivity, simplicity and MPL functions.
//!
//! A complex is given by its maximal cells, each a lattice polytope in its own
//! chart `Z^n` with global vertex labels, and by a fan chart at every vertex:
//! for each maximal cell `σ ∋ v` a matrix `A_{v,σ}` sending tangent vectors of
//! `σ` at `v` into the fan `Σ_v`. Lower cells are the common faces, matched by
//! vertex labels. Codimension-one cells may carry marked singular points.

pub mod build;
pub mod examples;
pub mod monodromy;
pub mod mpl;
pub mod simplicity;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{AffineMapZ, IntMatrix, LatticePoint, Rat};
use crate::polyhedra::{Fan, LatticePolytope, RationalCone};

pub use build::{build_boundary_complex, from_boundary_cells};
pub use monodromy::{Crossing, MonodromyTransform};
pub use mpl::{mpl_check, MPLFunction, MplReport};
pub use simplicity::{
    is_simple, is_simple_bounded, monodromy_polytopes, MonodromyPolytopeSet, SimplicityReport,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCell {
    /// Global vertex labels, aligned with `positions`.
    pub vertices: Vec<usize>,
    pub positions: Vec<LatticePoint>,
    pub polytope: LatticePolytope,
}

impl MaxCell {
    pub fn position(&self, v: usize) -> Option<&LatticePoint> {
        self.vertices
            .iter()
            .position(|&w| w == v)
            .map(|i| &self.positions[i])
    }
}

/// A cell of the decomposition, identified by its sorted vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Maximal cells containing this one, ascending.
    pub max_cells: Vec<usize>,
}

/// A marked singular point in the interior of a codimension-one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mark {
    pub cell: usize,
    /// Barycentric coordinates with respect to the cell's sorted vertices.
    pub barycentric: Vec<Rat>,
    pub charge: i64,
}

impl Mark {
    /// Position along an edge, measured from its lower-labelled vertex.
    pub fn param(&self) -> Rat {
        self.barycentric.get(1).cloned().unwrap_or_else(Rat::zero)
    }
}

#[derive(Clone, Debug)]
pub struct PolyCellComplex {
    n: usize,
    num_vertices: usize,
    max_cells: Vec<MaxCell>,
    charts: BTreeMap<(usize, usize), IntMatrix>,
    cells: Vec<Cell>,
    cell_index: HashMap<Vec<usize>, usize>,
    marks: Vec<Mark>,
    boundary_allowed: bool,
    embedding: Option<Vec<LatticePoint>>,
    structural: Vec<Violation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    TwoSidedness,
    Injectivity,
    Coherence,
    VertexFan,
    Marks,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Cell indices (or vertex labels for vertex-fan problems) involved.
    pub cells: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn of_kind(&self, kind: ViolationKind) -> Vec<&Violation> {
        self.violations.iter().filter(|v| v.kind == kind).collect()
    }
}

/// Input description of a maximal cell.
#[derive(Clone, Debug)]
pub struct MaxCellSpec {
    pub vertices: Vec<usize>,
    pub positions: Vec<LatticePoint>,
}

impl PolyCellComplex {
    /// Assembles a complex. Structural problems that prevent building the cell
    /// list are errors; geometric inconsistencies are left to [`validate_complex`].
    pub fn new(
        n: usize,
        cells: Vec<MaxCellSpec>,
        charts: BTreeMap<(usize, usize), IntMatrix>,
        marks: Vec<Mark>,
    ) -> Result<Self> {
        let mut max_cells = Vec::new();
        let mut num_vertices = 0;
        for (i, spec) in cells.into_iter().enumerate() {
            if spec.vertices.len() != spec.positions.len() {
                return Err(Error::InvalidComplex(format!(
                    "cell {i}: {} labels for {} positions",
                    spec.vertices.len(),
                    spec.positions.len()
                )));
            }
            let polytope = LatticePolytope::from_lattice_points(&spec.positions)?;
            if polytope.ambient_dim() != n || !polytope.is_full_dimensional() {
                return Err(Error::InvalidComplex(format!(
                    "cell {i} is not a full-dimensional polytope in Z^{n}"
                )));
            }
            if polytope.vertices().len() != spec.positions.len() {
                return Err(Error::InvalidComplex(format!(
                    "cell {i}: listed positions are not exactly the vertices"
                )));
            }
            num_vertices = num_vertices.max(spec.vertices.iter().max().map_or(0, |m| m + 1));
            max_cells.push(MaxCell {
                vertices: spec.vertices,
                positions: spec.positions,
                polytope,
            });
        }
        for (&(v, s), a) in &charts {
            if s >= max_cells.len() || max_cells[s].position(v).is_none() {
                return Err(Error::InvalidComplex(format!(
                    "chart for vertex {v} in cell {s}, which does not contain it"
                )));
            }
            if !a.is_unimodular() || a.rows() != n {
                return Err(Error::InvalidComplex(format!(
                    "chart for vertex {v} in cell {s} is not in GL({n},Z)"
                )));
            }
        }
        for (s, c) in max_cells.iter().enumerate() {
            for &v in &c.vertices {
                if !charts.contains_key(&(v, s)) {
                    return Err(Error::InvalidComplex(format!(
                        "missing chart for vertex {v} in cell {s}"
                    )));
                }
            }
        }
        let mut c = PolyCellComplex {
            n,
            num_vertices,
            max_cells,
            charts,
            cells: Vec::new(),
            cell_index: HashMap::new(),
            marks: Vec::new(),
            boundary_allowed: false,
            embedding: None,
            structural: Vec::new(),
        };
        c.derive_cells();
        for m in &marks {
            c.check_mark(m)?;
        }
        c.marks = marks;
        Ok(c)
    }

    fn derive_cells(&mut self) {
        let mut found: BTreeMap<Vec<usize>, (usize, Vec<usize>)> = BTreeMap::new();
        for (s, mc) in self.max_cells.iter().enumerate() {
            let mut labels = mc.vertices.clone();
            labels.sort();
            if labels.windows(2).any(|w| w[0] == w[1]) {
                self.structural.push(Violation {
                    kind: ViolationKind::Injectivity,
                    cells: vec![s],
                    detail: format!("maximal cell {s} repeats a vertex label"),
                });
            }
            for face in mc.polytope.face_lattice() {
                if face.dim < 0 {
                    continue;
                }
                let mut ids: Vec<usize> = face
                    .vertices
                    .iter()
                    .map(|&i| {
                        let p = mc.polytope.vertices()[i]
                            .to_lattice()
                            .expect("lattice vertex");
                        mc.vertices[mc
                            .positions
                            .iter()
                            .position(|q| *q == p)
                            .expect("vertex position")]
                    })
                    .collect();
                ids.sort();
                let dim = face.dim as usize;
                let entry = found.entry(ids.clone()).or_insert((dim, Vec::new()));
                if entry.0 != dim {
                    self.structural.push(Violation {
                        kind: ViolationKind::Coherence,
                        cells: vec![s],
                        detail: format!("vertices {ids:?} span faces of different dimensions"),
                    });
                }
                if !entry.1.contains(&s) {
                    entry.1.push(s);
                }
            }
        }
        let mut cells: Vec<Cell> = found
            .into_iter()
            .map(|(vertices, (dim, max_cells))| Cell {
                vertices,
                dim,
                max_cells,
            })
            .collect();
        cells.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        self.cell_index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.vertices.clone(), i))
            .collect();
        self.cells = cells;
    }

    fn check_mark(&self, m: &Mark) -> Result<()> {
        let cell = self
            .cells
            .get(m.cell)
            .ok_or_else(|| Error::InvalidComplex(format!("mark on unknown cell {}", m.cell)))?;
        if self.n != 2 {
            return Err(Error::InvalidComplex(
                "marked points are supported on surfaces only".into(),
            ));
        }
        if cell.dim != self.n - 1 {
            return Err(Error::InvalidComplex(format!(
                "mark on cell {} which is not of codimension one",
                m.cell
            )));
        }
        let ok = m.barycentric.len() == cell.vertices.len()
            && m.barycentric.iter().all(Signed::is_positive)
            && m.barycentric.iter().sum::<Rat>() == Rat::one();
        if !ok {
            return Err(Error::InvalidComplex(format!(
                "mark on cell {} is not an interior barycentric point",
                m.cell
            )));
        }
        Ok(())
    }

    pub fn with_boundary_allowed(mut self, allowed: bool) -> Self {
        self.boundary_allowed = allowed;
        self
    }

    pub fn with_embedding(mut self, points: Vec<LatticePoint>) -> Self {
        self.embedding = Some(points);
        self
    }

    pub fn with_marks(mut self, marks: Vec<Mark>) -> Result<Self> {
        for m in &marks {
            self.check_mark(m)?;
        }
        self.marks = marks;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn max_cells(&self) -> &[MaxCell] {
        &self.max_cells
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn charts(&self) -> &BTreeMap<(usize, usize), IntMatrix> {
        &self.charts
    }

    pub fn boundary_allowed(&self) -> bool {
        self.boundary_allowed
    }

    /// Ambient coordinates of the vertices, when built from a polytope boundary.
    pub fn embedding(&self) -> Option<&[LatticePoint]> {
        self.embedding.as_deref()
    }

    pub fn cell_id(&self, vertices: &[usize]) -> Option<usize> {
        let mut v = vertices.to_vec();
        v.sort();
        self.cell_index.get(&v).copied()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].dim == d)
            .collect()
    }

    /// Cell counts by dimension, `f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.n).map(|d| self.cells_of_dim(d).len()).collect()
    }

    pub fn is_face(&self, small: usize, big: usize) -> bool {
        let b = &self.cells[big].vertices;
        self.cells[small].vertices.iter().all(|v| b.contains(v))
    }

    pub fn faces_of(&self, big: usize, dim: usize) -> Vec<usize> {
        self.cells_of_dim(dim)
            .into_iter()
            .filter(|&c| self.is_face(c, big))
            .collect()
    }

    pub fn cofaces_of(&self, small: usize, dim: usize) -> Vec<usize> {
        self.cells_of_dim(dim)
            .into_iter()
            .filter(|&c| self.is_face(small, c))
            .collect()
    }

    /// Cell index of a maximal cell.
    pub fn max_cell_id(&self, s: usize) -> usize {
        self.cell_id(&self.max_cells[s].vertices)
            .expect("maximal cell is a cell")
    }

    pub fn chart(&self, v: usize, s: usize) -> &IntMatrix {
        &self.charts[&(v, s)]
    }

    pub fn position(&self, s: usize, v: usize) -> &LatticePoint {
        self.max_cells[s].position(v).expect("vertex of the cell")
    }

    /// Chart change from `σ` to `σ'` across the star of `v`.
    pub fn transition_near(&self, v: usize, s: usize, t: usize) -> Result<AffineMapZ> {
        let lin = &self.chart(v, t).inverse_unimodular()? * self.chart(v, s);
        Ok(AffineMapZ::based(
            lin,
            self.position(s, v),
            self.position(t, v),
        ))
    }

    /// Image of the tangent cone of `σ` at `v` in the fan chart at `v`.
    pub fn vertex_cone(&self, v: usize, s: usize) -> Result<RationalCone> {
        let a = self.chart(v, s);
        let p = self.position(s, v);
        let gens: Vec<_> = self.max_cells[s]
            .positions
            .iter()
            .filter(|q| *q != p)
            .map(|q| a.mul_vec(&(q - p)))
            .collect();
        RationalCone::from_generators(self.n, &gens)
    }

    /// Image in the fan chart at `v` of the tangent cone of a cell `τ ∋ v`.
    pub fn vertex_cone_of_cell(&self, v: usize, tau: usize) -> Result<RationalCone> {
        let s = self.cells[tau].max_cells[0];
        let a = self.chart(v, s);
        let p = self.position(s, v);
        let gens: Vec<_> = self.cells[tau]
            .vertices
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| a.mul_vec(&(self.position(s, w) - p)))
            .collect();
        RationalCone::from_generators(self.n, &gens)
    }

    pub fn vertex_fan(&self, v: usize) -> Result<Fan> {
        let cones: Vec<_> = self
            .max_cells_at(v)
            .into_iter()
            .map(|s| self.vertex_cone(v, s))
            .collect::<Result<_>>()?;
        Fan::from_cones(self.n, &cones)
    }

    pub fn max_cells_at(&self, v: usize) -> Vec<usize> {
        (0..self.max_cells.len())
            .filter(|&s| self.max_cells[s].vertices.contains(&v))
            .collect()
    }
}

/// Checks two-sidedness, injectivity, coherence of identifications, vertex fans and marks.
pub fn validate_complex(c: &PolyCellComplex) -> ValidationReport {
    let mut violations = c.structural.clone();
    for (i, cell) in c.cells.iter().enumerate() {
        if c.n >= 1 && cell.dim == c.n - 1 {
            let k = cell.max_cells.len();
            if k > 2 || (k < 2 && !c.boundary_allowed) {
                violations.push(Violation {
                    kind: ViolationKind::TwoSidedness,
                    cells: vec![i],
                    detail: format!(
                        "codimension-one cell {:?} lies in {k} maximal cells",
                        cell.vertices
                    ),
                });
            }
        }
    }
    for (i, cell) in c.cells.iter().enumerate() {
        let ms = &cell.max_cells;
        for a in 0..ms.len() {
            for b in a + 1..ms.len() {
                for &v in &cell.vertices {
                    let Ok(t) = c.transition_near(v, ms[a], ms[b]) else {
                        continue;
                    };
                    for &w in &cell.vertices {
                        if t.apply(c.position(ms[a], w)) != *c.position(ms[b], w) {
                            violations.push(Violation {
                                kind: ViolationKind::Coherence,
                                cells: vec![i, c.max_cell_id(ms[a]), c.max_cell_id(ms[b])],
                                detail: format!(
                                    "cycle {} -> {} via vertex {v} sends vertex {w} to {} instead of {}",
                                    ms[a],
                                    ms[b],
                                    t.apply(c.position(ms[a], w)),
                                    c.position(ms[b], w)
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    for v in 0..c.num_vertices {
        let star = c.max_cells_at(v);
        if star.is_empty() {
            continue;
        }
        match c.vertex_fan(v) {
            Ok(fan) => {
                if let Some((i, j)) = fan.overlap() {
                    violations.push(Violation {
                        kind: ViolationKind::VertexFan,
                        cells: vec![v],
                        detail: format!("cones {i} and {j} of the fan at vertex {v} overlap"),
                    });
                } else if !c.boundary_allowed && !fan.is_complete() {
                    violations.push(Violation {
                        kind: ViolationKind::VertexFan,
                        cells: vec![v],
                        detail: format!("fan at vertex {v} is not complete"),
                    });
                }
            }
            Err(e) => violations.push(Violation {
                kind: ViolationKind::VertexFan,
                cells: vec![v],
                detail: e.to_string(),
            }),
        }
    }
    if c.n == 2 {
        for rho in c.cells_of_dim(1) {
            let explicit: Vec<&Mark> = c.marks.iter().filter(|m| m.cell == rho).collect();
            if explicit.is_empty() || c.cells[rho].max_cells.len() != 2 {
                continue;
            }
            let total: i64 = explicit.iter().map(|m| m.charge).sum();
            match c.kappa(rho, rho) {
                Ok(k) if k == total.into() => {}
                Ok(k) => violations.push(Violation {
                    kind: ViolationKind::Marks,
                    cells: vec![rho],
                    detail: format!(
                        "mark charges on {:?} sum to {total} but the charts give monodromy {k}",
                        c.cells[rho].vertices
                    ),
                }),
                Err(e) => violations.push(Violation {
                    kind: ViolationKind::Marks,
                    cells: vec![rho],
                    detail: e.to_string(),
                }),
            }
        }
    }
    ValidationReport { violations }
}
