//! Small complexes used in tests, examples and the acceptance suite.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::lattice::{IntMatrix, LatticePoint, Rat};
use crate::polyhedra::LatticePolytope;

use super::{build_boundary_complex, from_boundary_cells, Mark, MaxCellSpec, PolyCellComplex};

fn lp(c: &[i64]) -> LatticePoint {
    LatticePoint::from_i64(c)
}

/// The flat torus `R^2 / kZ^2` cut into unit squares (`k >= 3`).
pub fn flat_torus(k: usize) -> PolyCellComplex {
    assert!(k >= 3, "grid too coarse to separate cells");
    let id = |i: usize, j: usize| (i % k) * k + (j % k);
    let mut specs = Vec::new();
    let mut charts = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            let s = specs.len();
            let vertices = vec![id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)];
            for &v in &vertices {
                charts.insert((v, s), IntMatrix::identity(2));
            }
            specs.push(MaxCellSpec {
                vertices,
                positions: vec![lp(&[0, 0]), lp(&[1, 0]), lp(&[0, 1]), lp(&[1, 1])],
            });
        }
    }
    PolyCellComplex::new(2, specs, charts, Vec::new()).expect("well-formed torus")
}

/// [`flat_torus`] with one vertex chart sheared, so identifications no longer agree.
pub fn incoherent_torus() -> PolyCellComplex {
    let t = flat_torus(3);
    let mut charts = t.charts().clone();
    charts.insert((0, 0), IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]]));
    let specs = t
        .max_cells()
        .iter()
        .map(|c| MaxCellSpec {
            vertices: c.vertices.clone(),
            positions: c.positions.clone(),
        })
        .collect();
    PolyCellComplex::new(2, specs, charts, Vec::new()).expect("well-formed cells")
}

/// Three triangles glued along the edge `{0, 1}`.
pub fn three_triangles_on_an_edge() -> PolyCellComplex {
    let tri = |apex: usize, p: [i64; 2]| MaxCellSpec {
        vertices: vec![0, 1, apex],
        positions: vec![lp(&[0, 0]), lp(&[1, 0]), lp(&p)],
    };
    let specs = vec![tri(2, [0, 1]), tri(3, [0, -1]), tri(4, [1, 1])];
    let mut charts = BTreeMap::new();
    for (s, c) in specs.iter().enumerate() {
        for &v in &c.vertices {
            charts.insert((v, s), IntMatrix::identity(2));
        }
    }
    PolyCellComplex::new(2, specs, charts, Vec::new())
        .expect("well-formed cells")
        .with_boundary_allowed(true)
}

/// Two triangles `{0,1,2}` (below) and `{1,2,3}` (above) sharing the edge
/// `{1, 2}`, with the given marks `(t, charge)` on it. The chart at vertex 2
/// of the upper triangle carries the total charge as a shear.
pub fn two_triangles(marks: &[(Rat, i64)]) -> PolyCellComplex {
    let k: i64 = marks.iter().map(|m| m.1).sum();
    let specs = vec![
        MaxCellSpec {
            vertices: vec![1, 2, 0],
            positions: vec![lp(&[0, 0]), lp(&[1, 0]), lp(&[0, -1])],
        },
        MaxCellSpec {
            vertices: vec![1, 2, 3],
            positions: vec![lp(&[0, 0]), lp(&[1, 0]), lp(&[0, 1])],
        },
    ];
    let mut charts = BTreeMap::new();
    for (s, c) in specs.iter().enumerate() {
        for &v in &c.vertices {
            charts.insert((v, s), IntMatrix::identity(2));
        }
    }
    charts.insert((2, 1), IntMatrix::from_i64(&[vec![1, k], vec![0, 1]]));
    let c = PolyCellComplex::new(2, specs, charts, Vec::new())
        .expect("well-formed cells")
        .with_boundary_allowed(true);
    let edge = c.cell_id(&[1, 2]).expect("shared edge");
    let marks = marks
        .iter()
        .map(|(t, q)| Mark {
            cell: edge,
            barycentric: vec![Rat::one() - t, t.clone()],
            charge: *q,
        })
        .collect();
    c.with_marks(marks).expect("interior marks")
}

/// Boundary of the tetrahedron `4Δ - (1,1,1)` with its unimodular
/// subdivision into 64 triangles. Edges along the original edges carry a
/// simple focus-focus singularity each.
pub fn focus_focus_complex() -> PolyCellComplex {
    let corners = [
        lp(&[-1, -1, -1]),
        lp(&[3, -1, -1]),
        lp(&[-1, 3, -1]),
        lp(&[-1, -1, 3]),
    ];
    let mut points: Vec<LatticePoint> = Vec::new();
    let mut index: HashMap<LatticePoint, usize> = HashMap::new();
    let mut id = |p: LatticePoint| -> usize {
        *index.entry(p.clone()).or_insert_with(|| {
            points.push(p);
            points.len() - 1
        })
    };
    let mut cells = Vec::new();
    for skip in 0..4 {
        let tri: Vec<&LatticePoint> = (0..4).filter(|&i| i != skip).map(|i| &corners[i]).collect();
        let (a, b, c) = (tri[0], tri[1], tri[2]);
        let step_b: LatticePoint = LatticePoint((b - a).0.into_iter().map(|x| x / 4).collect());
        let step_c: LatticePoint = LatticePoint((c - a).0.into_iter().map(|x| x / 4).collect());
        let at = |i: i64, j: i64| &(a + &step_b.scale(&i.into())) + &step_c.scale(&j.into());
        for i in 0..4 {
            for j in 0..4 - i {
                cells.push(vec![id(at(i, j)), id(at(i + 1, j)), id(at(i, j + 1))]);
                if i + j < 3 {
                    cells.push(vec![
                        id(at(i + 1, j)),
                        id(at(i, j + 1)),
                        id(at(i + 1, j + 1)),
                    ]);
                }
            }
        }
    }
    from_boundary_cells(&points, &cells).expect("unimodular boundary subdivision")
}

/// Boundary of the unit tetrahedron with all singularities of each edge
/// aggregated into its monodromy.
pub fn tetrahedron_boundary() -> PolyCellComplex {
    build_boundary_complex(&LatticePolytope::standard_simplex(3, 1))
        .expect("full-dimensional simplex")
}

/// A mark at parameter `t` measured from `a` along the edge `{a, b}`.
pub fn mark_on_edge(c: &PolyCellComplex, a: usize, b: usize, t: Rat, charge: i64) -> Option<Mark> {
    let t = if a < b { t } else { Rat::one() - t };
    if t <= Rat::zero() || t >= Rat::one() {
        return None;
    }
    let cell = c.cell_id(&[a, b])?;
    Some(Mark {
        cell,
        barycentric: vec![Rat::one() - &t, t],
        charge,
    })
}
