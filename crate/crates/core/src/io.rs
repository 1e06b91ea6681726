//! JSON wire formats. Exact numbers travel as strings (`"p/q"`); integer
//! inputs may also be plain JSON numbers.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::complex::examples::{
    flat_torus, focus_focus_complex, incoherent_torus, tetrahedron_boundary,
    three_triangles_on_an_edge,
};
use crate::complex::{from_boundary_cells, MPLFunction, Mark, MaxCellSpec, PolyCellComplex};
use crate::error::{Error, Result};
use crate::gluing::{
    reference_cell, CStarValue, LiftedGluingData, OpenGluingData, PMTuple, TorusElement,
    ZeroCochain,
};
use crate::lattice::{Int, IntMatrix, LatticePoint, Rat, RationalPoint};
use crate::monoid::PresentedMonoid;
use crate::polyhedra::{Fan, LatticePolytope, RationalCone};

/// Parses `text`, reporting the line and column of syntax errors and the
/// field path of schema violations.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => {
                Error::Invalid(format!("schema violation at `{path}`: {inner}"))
            }
            _ => Error::Invalid(format!("malformed JSON: {inner}")),
        }
    })?;
    de.end()
        .map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))?;
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireInt(pub Int);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireRat(pub Rat);

struct NumberVisitor {
    rational: bool,
}

impl Visitor<'_> for NumberVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.rational {
            write!(f, "an integer or a string \"p/q\"")
        } else {
            write!(f, "an integer or a decimal integer string")
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
        Ok(Rat::from(Int::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
        Ok(Rat::from(Int::from(v)))
    }

    fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Rat, E> {
        let s = s.trim();
        let r = match s.split_once('/') {
            Some(_) if !self.rational => None,
            Some((p, q)) => match (p.trim().parse::<Int>(), q.trim().parse::<Int>()) {
                (Ok(p), Ok(q)) if q != Int::from(0) => Some(Rat::new(p, q)),
                _ => None,
            },
            None => s.parse::<Int>().ok().map(Rat::from),
        };
        r.ok_or_else(|| E::invalid_value(de::Unexpected::Str(s), &self))
    }
}

impl<'de> Deserialize<'de> for WireInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(WireInt(
            d.deserialize_any(NumberVisitor { rational: false })?
                .to_integer(),
        ))
    }
}

impl<'de> Deserialize<'de> for WireRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(WireRat(
            d.deserialize_any(NumberVisitor { rational: true })?,
        ))
    }
}

fn point(v: &[WireInt]) -> LatticePoint {
    LatticePoint(v.iter().map(|x| x.0.clone()).collect())
}

fn points(v: &[Vec<WireInt>], dim: usize, what: &str) -> Result<Vec<LatticePoint>> {
    v.iter()
        .enumerate()
        .map(|(i, p)| {
            if p.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{what}[{i}] has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            Ok(point(p))
        })
        .collect()
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn int_json(x: &Int) -> Value {
    Value::String(x.to_string())
}

pub fn point_json(p: &LatticePoint) -> Value {
    Value::Array(p.0.iter().map(int_json).collect())
}

pub fn rpoint_json(p: &RationalPoint) -> Value {
    Value::Array(p.0.iter().map(rat_json).collect())
}

pub fn points_json(ps: &[LatticePoint]) -> Value {
    Value::Array(ps.iter().map(point_json).collect())
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(point_json).collect())
}

pub fn gaussian_json(c: &CStarValue) -> Value {
    json!({"re": rat_json(&c.re), "im": rat_json(&c.im)})
}

pub fn torus_json(t: &TorusElement) -> Value {
    Value::Array(t.0.iter().map(gaussian_json).collect())
}

pub fn cone_json(c: &RationalCone) -> Value {
    json!({"dim": c.ambient_dim(), "rays": points_json(c.rays()), "lineality": points_json(c.lineality())})
}

pub fn polytope_json(p: &LatticePolytope) -> Value {
    json!({"dim": p.ambient_dim(), "points": Value::Array(p.vertices().iter().map(rpoint_json).collect())})
}

/// `{"dim": n, "rays": [...], "lineality": [...]}`; the cone generated by the
/// rays and both signs of the lineality vectors.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeWire {
    pub dim: usize,
    pub rays: Vec<Vec<WireInt>>,
    #[serde(default)]
    pub lineality: Vec<Vec<WireInt>>,
}

impl ConeWire {
    pub fn to_cone(&self) -> Result<RationalCone> {
        let mut gens = points(&self.rays, self.dim, "rays")?;
        for l in points(&self.lineality, self.dim, "lineality")? {
            gens.push(-&l);
            gens.push(l);
        }
        RationalCone::from_generators(self.dim, &gens)
    }
}

/// Convex hull of rational points.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeWire {
    pub dim: usize,
    pub points: Vec<Vec<WireRat>>,
}

impl PolytopeWire {
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        let pts = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.len() != self.dim {
                    return Err(Error::DimensionMismatch(format!(
                        "points[{i}] has {} coordinates",
                        p.len()
                    )));
                }
                Ok(RationalPoint(p.iter().map(|x| x.0.clone()).collect()))
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::from_points(self.dim, &pts)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanWire {
    pub dim: usize,
    /// Each cone by its rays.
    pub cones: Vec<Vec<Vec<WireInt>>>,
}

impl FanWire {
    pub fn to_fan(&self) -> Result<Fan> {
        let cones = self
            .cones
            .iter()
            .map(|rays| RationalCone::from_generators(self.dim, &points(rays, self.dim, "cones")?))
            .collect::<Result<Vec<_>>>()?;
        Fan::from_cones(self.dim, &cones)
    }
}

/// `{"gens": k, "rels": [[lhs, rhs], ...]}` with exponent vectors of length `k`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidWire {
    pub gens: usize,
    #[serde(default)]
    pub rels: Vec<(Vec<WireInt>, Vec<WireInt>)>,
}

impl MonoidWire {
    pub fn to_monoid(&self) -> Result<PresentedMonoid> {
        let rels = self
            .rels
            .iter()
            .map(|(a, b)| {
                (
                    a.iter().map(|x| x.0.clone()).collect(),
                    b.iter().map(|x| x.0.clone()).collect(),
                )
            })
            .collect();
        let m = PresentedMonoid::new(self.gens, rels);
        m.validate()?;
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum LogWire {
    #[default]
    ToricBoundary,
    Trivial,
}

/// Exactly one of `polytope`, `cone` (the fan cone of an affine chart) or `fan`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnWire {
    #[serde(default)]
    pub log: LogWire,
    pub polytope: Option<PolytopeWire>,
    pub cone: Option<ConeWire>,
    pub fan: Option<FanWire>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellWire {
    pub vertices: Vec<usize>,
    pub positions: Vec<Vec<WireInt>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartWire {
    pub vertex: usize,
    /// Index into `cells`.
    pub cell: usize,
    pub matrix: Vec<Vec<WireInt>>,
}

/// A point on the edge `[a, b]` at parameter `t` measured from `a`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkWire {
    pub edge: [usize; 2],
    pub t: WireRat,
    #[serde(default = "one_i64")]
    pub charge: i64,
}

fn one_i64() -> i64 {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KinkWire {
    /// Vertex labels of a codimension-one cell.
    pub cell: Vec<usize>,
    pub kink: WireInt,
}

/// A polyhedral complex in one of three forms:
///
/// * `{"builtin": name}`;
/// * `{"points": [...], "boundary_cells": [[v, ...], ...]}`, cells on the
///   boundary of a full-dimensional lattice polytope, charts induced by the
///   embedding;
/// * `{"dim": n, "cells": [...], "charts": [...]}`, maximal cells in their
///   own charts with the vertex-fan charts listed explicitly.
///
/// `marks` and `kinks` may accompany any form.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexWire {
    pub builtin: Option<String>,
    pub dim: Option<usize>,
    pub points: Option<Vec<Vec<WireInt>>>,
    pub boundary_cells: Option<Vec<Vec<usize>>>,
    pub cells: Option<Vec<CellWire>>,
    pub charts: Option<Vec<ChartWire>>,
    #[serde(default)]
    pub marks: Vec<MarkWire>,
    #[serde(default)]
    pub boundary: bool,
    pub kinks: Option<Vec<KinkWire>>,
}

pub const BUILTIN_COMPLEXES: [&str; 5] = [
    "flat-torus",
    "incoherent-torus",
    "three-triangles",
    "tetrahedron",
    "focus-focus",
];

pub fn builtin_complex(name: &str) -> Result<PolyCellComplex> {
    Ok(match name {
        "flat-torus" => flat_torus(3),
        "incoherent-torus" => incoherent_torus(),
        "three-triangles" => three_triangles_on_an_edge(),
        "tetrahedron" => tetrahedron_boundary(),
        "focus-focus" => focus_focus_complex(),
        _ => {
            return Err(Error::Invalid(format!(
                "unknown builtin complex `{name}` (known: {})",
                BUILTIN_COMPLEXES.join(", ")
            )))
        }
    })
}

impl ComplexWire {
    pub fn to_complex(&self) -> Result<PolyCellComplex> {
        let forms = [
            self.builtin.is_some(),
            self.boundary_cells.is_some(),
            self.cells.is_some(),
        ];
        let c = match forms {
            [true, false, false] => builtin_complex(self.builtin.as_deref().unwrap())?,
            [false, true, false] => {
                let pts = self
                    .points
                    .as_ref()
                    .ok_or_else(|| Error::Invalid("`boundary_cells` needs `points`".into()))?;
                let dim = pts.first().map_or(0, Vec::len);
                from_boundary_cells(
                    &points(pts, dim, "points")?,
                    self.boundary_cells.as_ref().unwrap(),
                )?
            }
            [false, false, true] => {
                let n = self
                    .dim
                    .ok_or_else(|| Error::Invalid("`cells` needs `dim`".into()))?;
                let specs = self
                    .cells
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|c| {
                        Ok(MaxCellSpec {
                            vertices: c.vertices.clone(),
                            positions: points(&c.positions, n, "positions")?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut charts = BTreeMap::new();
                for ch in self.charts.as_deref().unwrap_or_default() {
                    let rows = points(&ch.matrix, n, "matrix")?;
                    if rows.len() != n {
                        return Err(Error::DimensionMismatch(format!(
                            "chart at vertex {} is not {n}x{n}",
                            ch.vertex
                        )));
                    }
                    charts.insert((ch.vertex, ch.cell), IntMatrix::from_rows(&rows, n));
                }
                PolyCellComplex::new(n, specs, charts, Vec::new())?
            }
            _ => {
                return Err(Error::Invalid(
                    "give exactly one of `builtin`, `boundary_cells`, `cells`".into(),
                ))
            }
        };
        let allowed = self.boundary || c.boundary_allowed();
        let c = c.with_boundary_allowed(allowed);
        if self.marks.is_empty() {
            return Ok(c);
        }
        let marks = self
            .marks
            .iter()
            .map(|m| {
                let [a, b] = m.edge;
                crate::complex::examples::mark_on_edge(&c, a, b, m.t.0.clone(), m.charge)
                    .ok_or_else(|| {
                        Error::Invalid(format!(
                            "mark at {} is not inside an edge [{a}, {b}]",
                            m.t.0
                        ))
                    })
            })
            .collect::<Result<Vec<Mark>>>()?;
        c.with_marks(marks)
    }

    /// The kinks given in the file, if any.
    pub fn to_mpl(&self, c: &PolyCellComplex) -> Result<Option<MPLFunction>> {
        let Some(ks) = &self.kinks else {
            return Ok(None);
        };
        let mut kinks = BTreeMap::new();
        for k in ks {
            let mut v = k.cell.clone();
            v.sort();
            let id = c
                .cell_id(&v)
                .ok_or_else(|| Error::Invalid(format!("no cell with vertices {:?}", k.cell)))?;
            kinks.insert(id, k.kink.0.clone());
        }
        MPLFunction::new(kinks).map(Some)
    }
}

/// The explicit form of a complex, accepted back by [`ComplexWire`].
pub fn complex_json(c: &PolyCellComplex) -> Value {
    let cells: Vec<Value> = c
        .max_cells()
        .iter()
        .map(|m| json!({"vertices": m.vertices, "positions": points_json(&m.positions)}))
        .collect();
    let charts: Vec<Value> = c
        .charts()
        .iter()
        .map(|(&(v, s), a)| json!({"vertex": v, "cell": s, "matrix": matrix_json(a)}))
        .collect();
    let marks: Vec<Value> = c
        .marks()
        .iter()
        .map(|m| {
            let v = &c.cell(m.cell).vertices;
            json!({"edge": [v[0], v[1]], "t": rat_json(&m.param()), "charge": m.charge})
        })
        .collect();
    let mut out =
        json!({"dim": c.dim(), "cells": cells, "charts": charts, "boundary": c.boundary_allowed()});
    if !marks.is_empty() {
        out["marks"] = Value::Array(marks);
    }
    out
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussWire {
    pub re: WireRat,
    pub im: WireRat,
}

fn torus(v: &[GaussWire], n: usize) -> Result<TorusElement> {
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} torus coordinates, expected {n}",
            v.len()
        )));
    }
    Ok(TorusElement(
        v.iter()
            .map(|g| CStarValue::new(g.re.0.clone(), g.im.0.clone()))
            .collect::<Result<_>>()?,
    ))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexValueWire {
    pub vertex: usize,
    pub value: Vec<GaussWire>,
}

/// The tuple for the inclusion `omega ⊆ tau`: one torus element per vertex of
/// `omega`, in the chart of the first maximal cell containing `tau`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenEntryWire {
    pub omega: Vec<usize>,
    pub tau: Vec<usize>,
    pub values: Vec<VertexValueWire>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftedEntryWire {
    pub omega: Vec<usize>,
    pub tau: Vec<usize>,
    pub value: Vec<GaussWire>,
}

/// Gluing data over a complex; cells are named by their vertex labels.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingWire {
    pub complex: ComplexWire,
    pub open: Option<Vec<OpenEntryWire>>,
    pub lifted: Option<Vec<LiftedEntryWire>>,
}

fn cell_by_vertices(c: &PolyCellComplex, v: &[usize]) -> Result<usize> {
    let mut v = v.to_vec();
    v.sort();
    c.cell_id(&v)
        .ok_or_else(|| Error::Invalid(format!("no cell with vertices {v:?}")))
}

impl GluingWire {
    pub fn to_open(&self, c: &PolyCellComplex) -> Result<Option<OpenGluingData>> {
        let Some(entries) = &self.open else {
            return Ok(None);
        };
        let mut out = BTreeMap::new();
        for e in entries {
            let omega = cell_by_vertices(c, &e.omega)?;
            let tau = cell_by_vertices(c, &e.tau)?;
            if !c.is_face(omega, tau) {
                return Err(Error::Invalid(format!(
                    "{:?} is not a face of {:?}",
                    e.omega, e.tau
                )));
            }
            let mut values = BTreeMap::new();
            for vv in &e.values {
                values.insert(vv.vertex, torus(&vv.value, c.dim())?);
            }
            out.insert(
                (omega, tau),
                PMTuple {
                    tau: omega,
                    sigma: reference_cell(c, tau),
                    values,
                },
            );
        }
        Ok(Some(OpenGluingData { entries: out }))
    }

    pub fn to_lifted(&self, c: &PolyCellComplex) -> Result<Option<LiftedGluingData>> {
        let Some(entries) = &self.lifted else {
            return Ok(None);
        };
        let mut values = BTreeMap::new();
        for e in entries {
            let omega = cell_by_vertices(c, &e.omega)?;
            let tau = cell_by_vertices(c, &e.tau)?;
            if omega == tau || !c.is_face(omega, tau) {
                return Err(Error::Invalid(format!(
                    "{:?} is not a proper face of {:?}",
                    e.omega, e.tau
                )));
            }
            values.insert((omega, tau), torus(&e.value, c.dim())?);
        }
        Ok(Some(LiftedGluingData { values }))
    }
}

pub fn cochain_json(c: &PolyCellComplex, t: &ZeroCochain) -> Value {
    Value::Array(
        t.values
            .iter()
            .filter(|(_, x)| !x.is_one())
            .map(|(&tau, x)| json!({"cell": c.cell(tau).vertices, "value": torus_json(x)}))
            .collect(),
    )
}

pub fn open_json(c: &PolyCellComplex, g: &OpenGluingData) -> Value {
    Value::Array(
        g.entries
            .iter()
            .map(|(&(o, t), p)| {
                let values: Vec<Value> = p
                    .values
                    .iter()
                    .map(|(v, x)| json!({"vertex": v, "value": torus_json(x)}))
                    .collect();
                json!({"omega": c.cell(o).vertices, "tau": c.cell(t).vertices, "values": values})
            })
            .collect(),
    )
}

pub fn lifted_json(c: &PolyCellComplex, l: &LiftedGluingData) -> Value {
    Value::Array(
        l.values
            .iter()
            .map(|(&(o, t), x)| json!({"omega": c.cell(o).vertices, "tau": c.cell(t).vertices, "value": torus_json(x)}))
            .collect(),
    )
}
