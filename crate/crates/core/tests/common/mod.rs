#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toric_degen::complex::{Crossing, PolyCellComplex};
use toric_degen::gluing::CStarValue;
use toric_degen::lattice::{smith_normal_form, IntMatrix, LatticePoint};
use toric_degen::polyhedra::RationalCone;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn lp(c: &[i64]) -> LatticePoint {
    LatticePoint::from_i64(c)
}

pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| r.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_i64(&data)
}

/// Product of random elementary matrices and sign flips.
pub fn random_unimodular(r: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..steps {
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        if i == j {
            if r.gen_bool(0.2) {
                for k in 0..n {
                    m[(i, k)] = -&m[(i, k)];
                }
            }
            continue;
        }
        let c = BigInt::from(r.gen_range(-1..=1i64));
        for k in 0..n {
            let add = &c * &m[(j, k)];
            m[(i, k)] += add;
        }
    }
    m
}

pub fn rank(points: &[LatticePoint], n: usize) -> usize {
    if points.is_empty() {
        return 0;
    }
    smith_normal_form(&IntMatrix::from_rows(points, n)).rank
}

pub fn box_points(n: usize, radius: i64) -> Vec<LatticePoint> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| (-radius..=radius).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out.iter().map(|p| lp(p)).collect()
}

/// Irreducible nonzero non-unit lattice points of a pointed cone inside a box.
pub fn brute_irreducibles(c: &RationalCone, radius: i64) -> Vec<LatticePoint> {
    let pts: Vec<LatticePoint> = box_points(c.ambient_dim(), radius)
        .into_iter()
        .filter(|x| !x.is_zero() && c.contains(x))
        .collect();
    let set: HashSet<&LatticePoint> = pts.iter().collect();
    let mut irr: Vec<LatticePoint> = pts
        .iter()
        .filter(|x| !pts.iter().any(|y| y != *x && set.contains(&(*x - y))))
        .cloned()
        .collect();
    irr.sort();
    irr
}

/// Ghost rank at the orbit of the fan cone with the given rays, by
/// enumerating `τ∨ ∩ M` in a box and discounting its units.
pub fn stalk_rank_oracle(n: usize, rays: &[LatticePoint], radius: i64) -> usize {
    let pts = box_points(n, radius);
    let dual: Vec<LatticePoint> = pts
        .iter()
        .filter(|m| rays.iter().all(|r| !m.dot(r).is_negative()))
        .cloned()
        .collect();
    let units: Vec<LatticePoint> = dual
        .iter()
        .filter(|m| rays.iter().all(|r| m.dot(r).is_zero()))
        .cloned()
        .collect();
    rank(&dual, n) - rank(&units, n)
}

/// A `2x2` matrix conjugate in `GL(2, Z)` to `[[1,1],[0,1]]`, with the conjugator.
pub fn unit_shear_conjugator(t: &IntMatrix) -> Option<IntMatrix> {
    let m = t - &IntMatrix::identity(2);
    let col = (0..2).map(|j| m.col(j)).find(|c| !c.is_zero())?;
    let d = col.primitive().ok()?;
    let (a, b) = (d.0[0].clone(), d.0[1].clone());
    let (g, x, y) = ext_gcd(&a, &b);
    if !g.is_one() {
        return None;
    }
    // columns d and e with det = a·x + b·y = 1
    let mut p = IntMatrix::from_i64(&[vec![0, 0], vec![0, 0]]);
    p[(0, 0)] = a;
    p[(1, 0)] = b;
    p[(0, 1)] = -y;
    p[(1, 1)] = x;
    let conj = &(&p.inverse_unimodular().ok()? * t) * &p;
    let unit = IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]]);
    if conj == unit {
        return Some(p);
    }
    let flip = IntMatrix::from_i64(&[vec![1, 0], vec![0, -1]]);
    let q = &p * &flip;
    (&(&q.inverse_unimodular().ok()? * t) * &q == unit).then_some(q)
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        let s = if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        return (a.abs(), s, BigInt::zero());
    }
    let (q, r) = (a / b, a % b);
    let (g, x, y) = ext_gcd(b, &r);
    (g, y.clone(), x - q * y)
}

pub fn random_gaussian(r: &mut ChaCha8Rng) -> CStarValue {
    loop {
        let (a, b) = (r.gen_range(-4..=4i64), r.gen_range(-4..=4i64));
        if a != 0 || b != 0 {
            let q = r.gen_range(1..=3i64);
            let c = CStarValue::new(
                num_rational::BigRational::new(a.into(), q.into()),
                num_rational::BigRational::new(b.into(), q.into()),
            )
            .unwrap();
            return c;
        }
    }
}

/// Random walk through adjacent maximal cells, crossing near a random shared vertex.
pub fn random_path(
    r: &mut ChaCha8Rng,
    c: &PolyCellComplex,
    len: usize,
) -> (Vec<usize>, Vec<Crossing>) {
    let n = c.dim();
    let facets = c.cells_of_dim(n - 1);
    let mut path = vec![r.gen_range(0..c.max_cells().len())];
    let mut crossings = Vec::new();
    for _ in 0..len {
        let here = *path.last().unwrap();
        let options: Vec<usize> = facets
            .iter()
            .copied()
            .filter(|&f| c.cell(f).max_cells.len() == 2 && c.cell(f).max_cells.contains(&here))
            .collect();
        let Some(&f) = options.choose(r) else { break };
        let ms = &c.cell(f).max_cells;
        let next = if ms[0] == here { ms[1] } else { ms[0] };
        let v = *c.cell(f).vertices.choose(r).unwrap();
        path.push(next);
        crossings.push(Crossing::NearVertex(v));
    }
    (path, crossings)
}
