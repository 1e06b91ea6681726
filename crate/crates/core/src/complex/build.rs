use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{adapted_basis, Int, LatticePoint, RationalPoint};
use crate::polyhedra::{quotient_projection, LatticePolytope};

use super::{MaxCellSpec, PolyCellComplex};

/// A complex from cells on the boundary of a polytope in `Z^{n+1}` whose
/// interior contains the origin. Each cell gets a chart from a basis of its
/// saturated tangent lattice; the fan at `v` is the projection along `v`.
pub fn from_boundary_cells(
    points: &[LatticePoint],
    cells: &[Vec<usize>],
) -> Result<PolyCellComplex> {
    let ambient = points
        .first()
        .map(LatticePoint::dim)
        .ok_or_else(|| Error::InvalidComplex("no vertices".into()))?;
    if ambient < 2 {
        return Err(Error::InvalidComplex(
            "boundary complexes need ambient dimension at least 2".into(),
        ));
    }
    let n = ambient - 1;
    let mut projections = Vec::with_capacity(points.len());
    for p in points {
        projections.push(quotient_projection(p).map_err(|_| Error::OriginNotInterior)?);
    }
    let mut specs = Vec::new();
    let mut charts = BTreeMap::new();
    for (s, ids) in cells.iter().enumerate() {
        let base = &points[ids[0]];
        let tangents: Vec<_> = ids[1..].iter().map(|&w| &points[w] - base).collect();
        let (b, k) = adapted_basis(&tangents, ambient);
        if k != n {
            return Err(Error::InvalidComplex(format!(
                "cell {s} has dimension {k}, expected {n}"
            )));
        }
        let b_inv = b.inverse_unimodular()?;
        let cols: Vec<usize> = (0..n).collect();
        let b_cell = b.select_cols(&cols);
        let positions = ids
            .iter()
            .map(|&w| {
                let c = b_inv.mul_vec(&(&points[w] - base));
                LatticePoint(c.0[..n].to_vec())
            })
            .collect();
        for &v in ids {
            let a = &projections[v] * &b_cell;
            if !a.is_unimodular() {
                return Err(Error::InvalidComplex(format!(
                    "projection along vertex {v} is not unimodular on the tangent lattice of cell {s}"
                )));
            }
            charts.insert((v, s), a);
        }
        specs.push(MaxCellSpec {
            vertices: ids.clone(),
            positions,
        });
    }
    Ok(PolyCellComplex::new(n, specs, charts, Vec::new())?.with_embedding(points.to_vec()))
}

/// The boundary of a lattice polytope, recentred at its barycenter and scaled
/// by the barycenter's denominator so that the vertices stay integral.
pub fn build_boundary_complex(xi: &LatticePolytope) -> Result<PolyCellComplex> {
    if !xi.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            affine: xi.affine_dim(),
            ambient: xi.ambient_dim(),
        });
    }
    let verts = xi
        .lattice_vertices()
        .ok_or_else(|| Error::Invalid("polytope vertices must be integral".into()))?;
    let bary = xi.barycenter();
    let d: Int = bary.denominator_lcm();
    let points: Vec<LatticePoint> = verts
        .iter()
        .map(|v| {
            let shifted = RationalPoint(
                v.to_rational()
                    .0
                    .iter()
                    .zip(&bary.0)
                    .map(|(a, b)| (a - b) * &d)
                    .collect(),
            );
            shifted.to_lattice().expect("integral after scaling")
        })
        .collect();
    let cells: Vec<Vec<usize>> = xi
        .face_lattice()
        .into_iter()
        .filter(|f| f.dim >= 0 && f.dim as usize + 1 == xi.ambient_dim())
        .map(|f| f.vertices)
        .collect();
    from_boundary_cells(&points, &cells)
}
