use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{adapted_basis, orthogonal_complement, Int, LatticePoint};

use super::PolyCellComplex;

/// A multi-valued piecewise linear function, recorded by its kinks on the
/// codimension-one cells (missing cells have kink 0).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPLFunction {
    pub kinks: BTreeMap<usize, Int>,
}

impl MPLFunction {
    pub fn new(kinks: BTreeMap<usize, Int>) -> Result<Self> {
        if let Some((r, k)) = kinks.iter().find(|(_, k)| k.is_negative()) {
            return Err(Error::Invalid(format!("kink {k} on cell {r} is negative")));
        }
        Ok(MPLFunction { kinks })
    }

    /// The same kink on every codimension-one cell.
    pub fn constant(c: &PolyCellComplex, k: i64) -> Result<Self> {
        let kinks = c
            .cells_of_dim(c.dim() - 1)
            .into_iter()
            .map(|r| (r, Int::from(k)))
            .collect();
        MPLFunction::new(kinks)
    }

    pub fn kink(&self, rho: usize) -> Int {
        self.kinks.get(&rho).cloned().unwrap_or_else(Int::zero)
    }

    /// Kinks of a function given by a linear slope on each cone of each vertex
    /// fan (keyed by `(vertex, maximal cell)`), read off at the lowest vertex
    /// of each interior codimension-one cell.
    pub fn from_slopes(
        c: &PolyCellComplex,
        slopes: &BTreeMap<(usize, usize), LatticePoint>,
    ) -> Result<Self> {
        let mut kinks = BTreeMap::new();
        for rho in c.cells_of_dim(c.dim() - 1) {
            let cell = c.cell(rho);
            if cell.max_cells.len() != 2 {
                continue;
            }
            let v = cell.vertices[0];
            let (lo, hi) = (cell.max_cells[0], cell.max_cells[1]);
            let normal = fan_normal(c, rho, v, hi)?;
            let get = |s: usize| {
                slopes
                    .get(&(v, s))
                    .ok_or_else(|| Error::Invalid(format!("no slope at vertex {v} on cell {s}")))
            };
            let diff = get(hi)? - get(lo)?;
            let i = (0..c.dim())
                .find(|&i| !normal.0[i].is_zero())
                .expect("nonzero normal");
            let k = &diff.0[i] / &normal.0[i];
            if normal.scale(&k) != diff {
                return Err(Error::Invalid(format!(
                    "slopes at vertex {v} do not bend along cell {rho}"
                )));
            }
            kinks.insert(rho, k);
        }
        Ok(MPLFunction { kinks })
    }
}

/// Primitive normal of the image of `ρ` in the fan at `v`, positive on the cone of `σ`.
pub(crate) fn fan_normal(
    c: &PolyCellComplex,
    rho: usize,
    v: usize,
    s: usize,
) -> Result<LatticePoint> {
    let cone = c.vertex_cone_of_cell(v, rho)?;
    let normal = orthogonal_complement(&cone.generators(), c.dim())
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invalid(format!("cell {rho} has no normal at vertex {v}")))?;
    let inside = c
        .vertex_cone(v, s)?
        .rays()
        .iter()
        .map(|r| normal.dot(r))
        .find(|x| !x.is_zero())
        .expect("full cone");
    Ok(if inside.is_negative() {
        -&normal
    } else {
        normal
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MplReport {
    pub passes: bool,
    /// Codimension-two cells whose closing condition fails, with the residual.
    pub failing: Vec<(usize, LatticePoint)>,
}

/// At each interior codimension-two cell `τ`, the kinks weighted by the
/// primitive transverse rays of the `ρ ⊃ τ` must sum to zero.
pub fn mpl_check(c: &PolyCellComplex, phi: &MPLFunction) -> Result<MplReport> {
    let n = c.dim();
    let mut failing = Vec::new();
    if n < 2 {
        return Ok(MplReport {
            passes: true,
            failing,
        });
    }
    for tau in c.cells_of_dim(n - 2) {
        let rhos = c.cofaces_of(tau, n - 1);
        if rhos.iter().any(|&r| c.cell(r).max_cells.len() != 2) {
            continue;
        }
        let v = c.cell(tau).vertices[0];
        let span = c.vertex_cone_of_cell(v, tau)?.generators();
        let (b, k) = adapted_basis(&span, n);
        let rows: Vec<usize> = (k..n).collect();
        let proj = b.inverse_unimodular()?.select_rows(&rows);
        let mut sum = LatticePoint::zero(n - k);
        for &rho in &rhos {
            let dir = c
                .vertex_cone_of_cell(v, rho)?
                .generators()
                .iter()
                .fold(LatticePoint::zero(n), |a, g| &a + g);
            let ray = proj.mul_vec(&dir).primitive()?;
            sum = &sum + &ray.scale(&phi.kink(rho));
        }
        if !sum.is_zero() {
            failing.push((tau, sum));
        }
    }
    Ok(MplReport {
        passes: failing.is_empty(),
        failing,
    })
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn unit_kinks_on_tetrahedron_pass() {
        let c = tetrahedron_boundary();
        let r = mpl_check(&c, &MPLFunction::constant(&c, 1).unwrap()).unwrap();
        assert!(r.passes);
        assert!(mpl_check(&c, &MPLFunction::default()).unwrap().passes);
    }

    #[test]
    fn single_kink_fails_at_both_ends() {
        let c = tetrahedron_boundary();
        let e = c.cells_of_dim(1)[2];
        let phi = MPLFunction::new(BTreeMap::from([(e, Int::from(1))])).unwrap();
        let r = mpl_check(&c, &phi).unwrap();
        let mut at: Vec<usize> = r
            .failing
            .iter()
            .map(|(t, _)| c.cell(*t).vertices[0])
            .collect();
        at.sort();
        assert_eq!(at, c.cell(e).vertices);
    }

    #[test]
    fn negative_kinks_are_rejected() {
        assert!(MPLFunction::new(BTreeMap::from([(0, Int::from(-1))])).is_err());
    }

    #[test]
    fn global_linear_slopes_have_no_kinks() {
        let c = flat_torus(3);
        let slopes = c
            .charts()
            .keys()
            .map(|&(v, s)| ((v, s), LatticePoint::from_i64(&[2, -1])))
            .collect();
        let phi = MPLFunction::from_slopes(&c, &slopes).unwrap();
        assert!(phi.kinks.values().all(Zero::is_zero));
    }
}
