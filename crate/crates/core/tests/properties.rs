mod common;

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;

use common::*;
use toric_degen::complex::examples::{flat_torus, focus_focus_complex, tetrahedron_boundary};
use toric_degen::complex::{mpl_check, Crossing, MPLFunction, PolyCellComplex};
use toric_degen::lattice::{int, smith_normal_form, AffineMapZ, IntMatrix, LatticePoint};
use toric_degen::monoid::ToricMonoid;
use toric_degen::polyhedra::{LatticePolytope, RationalCone};
use toric_degen::toric::MomentumEval;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r)
            .prop_map(|rows| IntMatrix::from_i64(&rows))
    })
}

fn nonneg_gens() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..=3, 2), 2..=3)
}

/// Maximal cells around `v`, in cyclic order.
fn cycle_around(c: &PolyCellComplex, v: usize) -> Vec<usize> {
    let star = c.max_cells_at(v);
    let adjacent = |s: usize, t: usize| {
        c.cells_of_dim(c.dim() - 1).into_iter().any(|r| {
            let cell = c.cell(r);
            cell.vertices.contains(&v) && cell.max_cells.contains(&s) && cell.max_cells.contains(&t)
        })
    };
    let mut order = vec![star[0]];
    while order.len() < star.len() {
        let last = *order.last().unwrap();
        let prev = order.len().checked_sub(2).map(|i| order[i]);
        let next = star
            .iter()
            .copied()
            .find(|&s| s != last && Some(s) != prev && !order.contains(&s) && adjacent(last, s));
        order.push(next.expect("star of a vertex is a cycle"));
    }
    order.push(star[0]);
    order
}

/// Kink lines of the flat torus: `(direction, offset)` of each edge.
fn torus_line(k: usize, c: &PolyCellComplex, rho: usize) -> (usize, usize) {
    let vs = &c.cell(rho).vertices;
    let (a, b) = (vs[0], vs[1]);
    if a % k == b % k {
        (0, a % k)
    } else {
        (1, a / k)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_reconstructs(a in matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        prop_assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        let f = s.invariant_factors();
        prop_assert_eq!(f.len(), s.rank);
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn hilbert_basis_matches_irreducibles(gens in nonneg_gens()) {
        let pts: Vec<LatticePoint> = gens.iter().map(|g| lp(g)).collect();
        let cone = RationalCone::from_generators(2, &pts).unwrap();
        prop_assume!(cone.is_full_dimensional() && cone.is_pointed());
        let m = ToricMonoid::from_monoid_cone(&cone);
        let mut got: Vec<LatticePoint> =
            m.hilbert_basis().iter().filter(|x| x.0.iter().all(|c| *c <= int(6))).cloned().collect();
        got.sort();
        prop_assert_eq!(got, brute_irreducibles(&cone, 6));
        for r in cone.rays() {
            prop_assert!(m.hilbert_basis().contains(&r.primitive().unwrap()));
        }
    }

    #[test]
    fn momentum_image_and_invariance(
        k in 1i64..=3,
        z in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 10),
        theta in (-3.2f64..3.2, -3.2f64..3.2),
    ) {
        let e = MomentumEval::new(&LatticePolytope::standard_simplex(2, k)).unwrap();
        let n = e.points().len();
        let z: Vec<Complex64> = z.iter().cycle().take(n).map(|&(a, b)| Complex64::new(a, b)).collect();
        prop_assume!(z.iter().any(|x| x.norm() > 1e-3));
        let mu = e.eval(&z).unwrap();
        prop_assert!(e.in_polytope(&mu, 1e-9));
        let rotated: Vec<Complex64> = z
            .iter()
            .zip(e.points())
            .map(|(x, m)| {
                let v = m.to_f64();
                x * Complex64::from_polar(1.0, v[0] * theta.0 + v[1] * theta.1)
            })
            .collect();
        let mu2 = e.eval(&rotated).unwrap();
        for (a, b) in mu.iter().zip(&mu2) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn transport_composes_and_reverses(seed in any::<u64>(), len in 2usize..10) {
        let c = focus_focus_complex();
        let mut r = rng(seed);
        let (path, crossings) = random_path(&mut r, &c, len);
        prop_assume!(crossings.len() >= 2);
        let whole = c.parallel_transport(&path, &crossings).unwrap();
        let mid = crossings.len() / 2;
        let head = c.parallel_transport(&path[..=mid], &crossings[..mid]).unwrap();
        let tail = c.parallel_transport(&path[mid..], &crossings[mid..]).unwrap();
        prop_assert_eq!(tail.compose(&head), whole.clone());
        let back_path: Vec<usize> = path.iter().rev().copied().collect();
        let back_cross: Vec<Crossing> = crossings.iter().rev().cloned().collect();
        let back = c.parallel_transport(&back_path, &back_cross).unwrap();
        prop_assert_eq!(back.compose(&whole), AffineMapZ::identity(c.dim()));
    }

    #[test]
    fn holonomy_around_a_vertex_is_trivial(pick in any::<prop::sample::Index>(), tet in any::<bool>()) {
        let c = if tet { tetrahedron_boundary() } else { focus_focus_complex() };
        let v = pick.index(c.num_vertices());
        let path = cycle_around(&c, v);
        let crossings = vec![Crossing::NearVertex(v); path.len() - 1];
        let h = c.parallel_transport(&path, &crossings).unwrap();
        prop_assert_eq!(h, AffineMapZ::identity(c.dim()));
    }

    #[test]
    fn torus_line_kinks_close(k in 3usize..=5, weights in prop::collection::vec(0i64..4, 10), bump in any::<prop::sample::Index>()) {
        let c = flat_torus(k);
        let edges = c.cells_of_dim(1);
        let kink_of = |rho: usize| {
            let (dir, off) = torus_line(k, &c, rho);
            int(weights[dir * 5 + off])
        };
        let kinks: BTreeMap<_, _> = edges.iter().map(|&r| (r, kink_of(r))).collect();
        let rep = mpl_check(&c, &MPLFunction::new(kinks.clone()).unwrap()).unwrap();
        prop_assert!(rep.passes, "failing at {:?}", rep.failing);

        let rho = edges[bump.index(edges.len())];
        let mut bumped = kinks;
        *bumped.get_mut(&rho).unwrap() += 1;
        let rep = mpl_check(&c, &MPLFunction::new(bumped).unwrap()).unwrap();
        let mut failing: Vec<usize> = rep.failing.iter().map(|(t, _)| *t).collect();
        failing.sort();
        let mut ends: Vec<usize> = c.cell(rho).vertices.iter().map(|&v| c.cell_id(&[v]).unwrap()).collect();
        ends.sort();
        prop_assert_eq!(failing, ends);
    }
}
