mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;

use common::*;
use toric_degen::complex::examples::{flat_torus, focus_focus_complex, tetrahedron_boundary};
use toric_degen::complex::{is_simple, monodromy_polytopes, mpl_check, MPLFunction};
use toric_degen::fibration::{k3_run, FiberClass};
use toric_degen::gluing::{
    check_lifted_cocycle, coboundary, is_coboundary, nerve_edges, section_lattice, TorusElement,
    ZeroCochain,
};
use toric_degen::lattice::{int, smith_normal_form, LatticePoint};
use toric_degen::monoid::{PresentedMonoid, ToricMonoid};
use toric_degen::poly::IntPoly;
use toric_degen::polyhedra::{LatticePolytope, RationalCone};
use toric_degen::toric::{
    kn_descriptor, kn_fiber_rank, BaseRegion, LogKind, MomentumEval, ToricVarietyModel,
};

const K3_BUDGET: Duration = Duration::from_secs(5);
const SUITE_BUDGET: Duration = Duration::from_secs(60);
const FLOAT_TOL: f64 = 1e-9;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn ac1() -> Check {
    let start = Instant::now();
    let r = k3_run().map_err(e)?;
    let elapsed = start.elapsed();
    ensure(
        r.discriminant_count == 24,
        format!("{} discriminant points", r.discriminant_count),
    )?;
    ensure(r.edges.len() == 6, format!("{} edges", r.edges.len()))?;
    let expected = IntPoly::from_i64(&[1, 0, -7, 0, 1]);
    let f1 = IntPoly::from_i64(&[1, -3, 1]);
    let f2 = IntPoly::from_i64(&[1, 3, 1]);
    for edge in &r.edges {
        let (i, j) = edge.coords;
        ensure(
            edge.roots.len() == 4,
            format!("edge {i}{j}: {} points", edge.roots.len()),
        )?;
        ensure(
            edge.restriction.univariate == expected,
            format!("edge {i}{j}: {}", edge.restriction.univariate),
        )?;
        let fs = &edge.factorization.factors;
        ensure(
            edge.factorization.content.is_one()
                && fs.len() == 2
                && fs.contains(&f1)
                && fs.contains(&f2),
            format!("edge {i}{j}: factorization {}", edge.factorization),
        )?;
        ensure(
            edge.real_roots == 4,
            format!("edge {i}{j}: Sturm count {}", edge.real_roots),
        )?;
        ensure(
            edge.roots.iter().all(|x| x.exact.is_root_of(&expected)),
            format!("edge {i}{j}: a reported root does not solve the restriction"),
        )?;
    }
    ensure(elapsed < K3_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!(
        "24 points on 6 edges, x^4 - 7x^2 + 1 = (x^2 - 3x + 1)(x^2 + 3x + 1), {elapsed:.2?}"
    ))
}

fn ac2() -> Check {
    let r = k3_run().map_err(e)?;
    let fr = &r.fibration;
    let nodal = fr
        .discriminant
        .iter()
        .filter(|(_, c)| *c == FiberClass::NodalElliptic)
        .count();
    ensure(nodal == 24, format!("{nodal} nodal fibers"))?;
    let strata_sum: i64 = fr
        .cells
        .iter()
        .map(|(_, c)| c.euler_characteristic().unwrap_or(i64::MIN))
        .sum();
    ensure(
        strata_sum == 0,
        format!("torus strata contribute {strata_sum}"),
    )?;
    ensure(
        fr.euler_characteristic == Some(24),
        format!("chi = {:?}", fr.euler_characteristic),
    )?;
    Ok("chi = 24 from 24 nodal fibers".into())
}

fn ac3() -> Check {
    let p = PresentedMonoid::from_i64(4, &[(&[1, 1, 0, 0], &[0, 0, 1, 1])]);
    let gp = p.groupify();
    ensure(
        gp.free_rank == 3 && gp.torsion.is_empty(),
        format!(
            "groupification rank {} torsion {:?}",
            gp.free_rank, gp.torsion
        ),
    )?;
    let m = ToricMonoid::from_presented(&p).map_err(e)?;
    ensure(
        m.hilbert_basis().len() == 4,
        format!("Hilbert basis of size {}", m.hilbert_basis().len()),
    )?;
    let rels = m.relation_lattice();
    ensure(rels.len() == 1, format!("{} minimal relations", rels.len()))?;
    let mut coeffs: Vec<i64> = rels[0]
        .0
        .iter()
        .map(|x| i64::try_from(x).unwrap())
        .collect();
    coeffs.sort();
    // e1 + e2 = e3 + e4 up to relabeling and sign
    ensure(coeffs == [-1, -1, 1, 1], format!("relation {}", rels[0]))?;

    let cone = RationalCone::from_i64_rays(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 1], &[1, 0, 0]]);
    let fan_side = ToricMonoid::from_fan_cone(&cone);
    ensure(
        fan_side.hilbert_basis().len() == 4,
        "fan-cone presentation disagrees",
    )?;
    Ok("Hilbert basis 4, gp = Z^3, one relation e1+e2 = e3+e4".into())
}

fn random_smooth_cone(r: &mut rand_chacha::ChaCha8Rng) -> (usize, Vec<LatticePoint>) {
    let n = r.gen_range(1..=3);
    let k = r.gen_range(0..=n);
    let u = random_unimodular(r, n, 5);
    let mut idx: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(&mut idx[..], r);
    let rays = idx[..k]
        .iter()
        .map(|&i| u.mul_vec(&LatticePoint::unit(n, i)))
        .collect();
    (n, rays)
}

fn ac4() -> Check {
    let line = ToricVarietyModel::affine(
        &RationalCone::from_i64_rays(&[&[1]]),
        LogKind::ToricBoundary,
    );
    let d = kn_descriptor(&line).map_err(e)?;
    let ranks: Vec<usize> = line
        .strata()
        .iter()
        .map(|s| d.rank_of(s.id).unwrap())
        .collect();
    let origin = line.strata().iter().find(|s| s.dim == 0).unwrap();
    let generic = line.strata().iter().find(|s| s.dim == 1).unwrap();
    ensure(
        d.rank_of(origin.id) == Some(1) && d.rank_of(generic.id) == Some(0),
        format!("affine line ranks {ranks:?}"),
    )?;
    ensure(
        d.base == BaseRegion::Cone(RationalCone::orthant(1)),
        "affine line base is not R>=0",
    )?;

    let segment = LatticePolytope::from_i64(&[&[0], &[1]]);
    let p1 = ToricVarietyModel::projective(&segment, LogKind::ToricBoundary).map_err(e)?;
    let d1 = kn_descriptor(&p1).map_err(e)?;
    ensure(
        d1.base == BaseRegion::Polytope(segment.clone()) && d1.torus_rank == 1,
        "P1 base is not the interval",
    )?;
    for s in p1.strata() {
        let want = 1 - s.dim;
        ensure(
            d1.rank_of(s.id) == Some(want),
            format!("P1 stratum {} has rank {:?}", s.id, d1.rank_of(s.id)),
        )?;
    }

    let mut r = rng(4);
    for trial in 0..20 {
        let (n, rays) = random_smooth_cone(&mut r);
        let cone = RationalCone::from_generators(n, &rays).map_err(e)?;
        ensure(
            cone.is_smooth(),
            format!("trial {trial}: generated cone is not smooth"),
        )?;
        let model = ToricVarietyModel::affine(&cone, LogKind::ToricBoundary);
        let s = model
            .stratum_of(&cone)
            .ok_or(format!("trial {trial}: no closed stratum"))?;
        let got = kn_fiber_rank(&model, s);
        let want = stalk_rank_oracle(n, &rays, 6);
        ensure(
            got == want,
            format!("trial {trial}: rank {got}, oracle {want} for rays {rays:?}"),
        )?;
    }
    Ok("affine line, P1 interval x S1, 20 random smooth strata match the oracle".into())
}

fn ac5() -> Check {
    let ff = focus_focus_complex();
    let mut singular = 0;
    for rho in ff.cells_of_dim(1) {
        let cell = ff.cell(rho);
        if cell.max_cells.len() != 2 {
            continue;
        }
        let (a, b) = (cell.vertices[0], cell.vertices[1]);
        let (s, t) = (cell.max_cells[0], cell.max_cells[1]);
        let mt = ff.monodromy_loop(rho, rho, a, b, s, t).map_err(e)?;
        if mt.kappa.is_zero() {
            continue;
        }
        singular += 1;
        ensure(
            mt.kappa.is_one(),
            format!("focus-focus edge {rho}: kappa {}", mt.kappa),
        )?;
        let p = unit_shear_conjugator(&mt.matrix).ok_or(format!(
            "edge {rho}: {} is not conjugate to a unit shear",
            mt.matrix
        ))?;
        ensure(p.is_unimodular(), "conjugator is not unimodular")?;
    }
    ensure(singular > 0, "focus-focus complex has no singular edge")?;

    let r = k3_run().map_err(e)?;
    ensure(
        r.kappas.len() == 6 && r.kappas.values().all(|k| *k == int(4)),
        format!("K3 kappas {:?}", r.kappas),
    )?;
    ensure(r.charges_match_kappa(), "K3 charges do not sum to kappa")?;
    let c = r.cy.complex();
    for (&rho, k) in &r.kappas {
        let cell = c.cell(rho);
        let (a, b) = (cell.vertices[0], cell.vertices[1]);
        let (s, t) = (cell.max_cells[0], cell.max_cells[1]);
        for (vm, vp) in [(a, b), (b, a)] {
            for (sm, sp) in [(s, t), (t, s)] {
                let got = c.monodromy_loop(rho, rho, vm, vp, sm, sp).map_err(e)?.kappa;
                ensure(
                    got == *k,
                    format!("edge {rho}: kappa {got} for ({vm},{vp},{sm},{sp})"),
                )?;
            }
        }
    }
    Ok(format!("{singular} unit shears with kappa 1; K3 kappa 4 = charge sum on 6 edges, invariant over 4 choices"))
}

fn ac6() -> Check {
    for k in 3..=4 {
        let t = flat_torus(k);
        let rep = is_simple(&t).map_err(e)?;
        ensure(
            rep.positive && rep.simple,
            format!(
                "flat torus {k}: positive {} simple {}",
                rep.positive, rep.simple
            ),
        )?;
        for tau in 0..t.cells().len() {
            let p = monodromy_polytopes(&t, tau).map_err(e)?.p();
            ensure(p == 0, format!("flat torus {k}: p = {p} at cell {tau}"))?;
        }
    }
    let ff = is_simple(&focus_focus_complex()).map_err(e)?;
    ensure(
        ff.simple,
        format!("focus-focus not simple: {:?}", ff.failing),
    )?;

    let tet = tetrahedron_boundary();
    let rep = is_simple(&tet).map_err(e)?;
    ensure(!rep.simple, "aggregated tetrahedron reported simple")?;
    let mut longest = int(0);
    for tau in 0..tet.cells().len() {
        let set = monodromy_polytopes(&tet, tau).map_err(e)?;
        for (_, d) in set.delta_rho.iter().chain(&set.delta_check_omega) {
            if let Some(l) = d.lattice_length() {
                if l == int(4) {
                    let pts = d.lattice_points().map_err(e)?.len();
                    ensure(
                        pts == 5 && !d.is_elementary_simplex(),
                        format!("length-4 segment with {pts} points"),
                    )?;
                }
                longest = longest.max(l);
            }
        }
    }
    ensure(
        longest == int(4),
        format!("longest monodromy segment has length {longest}"),
    )?;
    Ok(
        "flat tori simple with p = 0, focus-focus simple, length-4 segment with 5 points fails"
            .into(),
    )
}

fn ac7() -> Check {
    let c = tetrahedron_boundary();
    let one = MPLFunction::constant(&c, 1).map_err(e)?;
    let rep = mpl_check(&c, &one).map_err(e)?;
    let vertices = c.cells_of_dim(0);
    ensure(
        rep.passes && vertices.len() == 4,
        format!("constant kink fails at {:?}", rep.failing),
    )?;
    for rho in c.cells_of_dim(1) {
        let mut kinks: BTreeMap<usize, _> =
            c.cells_of_dim(1).into_iter().map(|r| (r, int(1))).collect();
        kinks.insert(rho, int(2));
        let rep = mpl_check(&c, &MPLFunction::new(kinks).map_err(e)?).map_err(e)?;
        let mut failing: Vec<usize> = rep.failing.iter().map(|(t, _)| *t).collect();
        failing.sort();
        let mut ends: Vec<usize> = c
            .cell(rho)
            .vertices
            .iter()
            .map(|v| c.cell_id(&[*v]).unwrap())
            .collect();
        ends.sort();
        ensure(
            !rep.passes && failing == ends,
            format!("edge {rho} perturbed: failing {failing:?}, endpoints {ends:?}"),
        )?;
    }
    Ok("constant kinks close at 4 vertices; each single-edge perturbation fails at its 2 endpoints".into())
}

fn ac8() -> Check {
    let c = tetrahedron_boundary();
    let n = c.dim();
    let sections: Vec<_> = (0..c.cells().len())
        .map(|t| section_lattice(&c, t))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    let edges = nerve_edges(&c);
    let mut r = rng(8);
    let mut detected = 0;
    for trial in 0..100 {
        let mut t = ZeroCochain::default();
        for (tau, basis) in sections.iter().enumerate() {
            let coeffs: Vec<_> = basis.iter().map(|_| random_gaussian(&mut r)).collect();
            t.values
                .insert(tau, TorusElement::from_combination(n, basis, &coeffs));
        }
        let l = coboundary(&c, &t).map_err(e)?;
        let rep = check_lifted_cocycle(&c, &l).map_err(e)?;
        ensure(
            rep.cocycle,
            format!("trial {trial}: coboundary is not a cocycle: {rep:?}"),
        )?;
        ensure(
            is_coboundary(&c, &l).map_err(e)?.is_coboundary(),
            format!("trial {trial}: not recognised"),
        )?;

        let edge = edges[r.gen_range(0..edges.len())];
        let mut bumped = l.clone();
        let mut factor = TorusElement::one(n);
        while factor.is_one() {
            factor = TorusElement((0..n).map(|_| random_gaussian(&mut r)).collect());
        }
        let old = bumped.get(&c, edge.0, edge.1);
        bumped.values.insert(edge, &old * &factor);
        ensure(
            !is_coboundary(&c, &bumped).map_err(e)?.is_coboundary(),
            format!("trial {trial}: perturbation on {edge:?} went undetected"),
        )?;
        detected += 1;
    }
    Ok(format!(
        "100 coboundaries accepted, {detected} single-edge perturbations rejected"
    ))
}

fn snf_suite() -> Result<(), String> {
    let mut r = rng(91);
    for trial in 0..500 {
        let (rows, cols) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let a = random_matrix(&mut r, rows, cols, 9);
        let s = smith_normal_form(&a);
        ensure(
            &(&s.u * &a) * &s.v == s.d,
            format!("trial {trial}: U A V != D for {a}"),
        )?;
        ensure(
            s.u.is_unimodular() && s.v.is_unimodular() && s.d.is_diagonal(),
            format!("trial {trial}: bad shape"),
        )?;
        let f = s.invariant_factors();
        ensure(
            f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
            format!("trial {trial}: {f:?} not a divisor chain"),
        )?;
    }
    Ok(())
}

fn hilbert_suite() -> Result<(), String> {
    let mut r = rng(92);
    let mut trials = 0;
    while trials < 40 {
        let n = r.gen_range(2..=3);
        let k = r.gen_range(n..=n + 1);
        let gens: Vec<LatticePoint> = (0..k)
            .map(|_| {
                LatticePoint::from_i64(&(0..n).map(|_| r.gen_range(0..=3)).collect::<Vec<_>>())
            })
            .collect();
        let cone = match RationalCone::from_generators(n, &gens) {
            Ok(c) if c.is_full_dimensional() && c.is_pointed() => c,
            _ => continue,
        };
        trials += 1;
        let radius = if n == 2 { 6 } else { 5 };
        let hb = ToricMonoid::from_monoid_cone(&cone);
        let mut got: Vec<LatticePoint> = hb
            .hilbert_basis()
            .iter()
            .filter(|x| x.0.iter().all(|c| *c <= int(radius)))
            .cloned()
            .collect();
        got.sort();
        let want = brute_irreducibles(&cone, radius);
        ensure(
            got == want,
            format!("cone {gens:?}: basis {got:?}, oracle {want:?}"),
        )?;
    }
    Ok(())
}

fn momentum_suite() -> Result<(), String> {
    let mut r = rng(93);
    let polys = [
        LatticePolytope::standard_simplex(2, 1),
        LatticePolytope::standard_simplex(2, 3),
        LatticePolytope::cube(2),
        LatticePolytope::standard_simplex(3, 2),
        LatticePolytope::from_i64(&[&[0, 0], &[2, 0], &[0, 1], &[1, 1]]),
    ];
    let evals: Vec<MomentumEval> = polys
        .iter()
        .map(MomentumEval::new)
        .collect::<Result<_, _>>()
        .map_err(e)?;
    for trial in 0..1000 {
        let m = &evals[trial % evals.len()];
        let z: Vec<Complex64> = m
            .points()
            .iter()
            .map(|_| {
                if r.gen_bool(0.2) {
                    Complex64::zero()
                } else {
                    Complex64::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0))
                }
            })
            .collect();
        let Ok(mu) = m.eval(&z) else { continue };
        ensure(
            m.in_polytope(&mu, FLOAT_TOL),
            format!("trial {trial}: {mu:?} outside"),
        )?;
        let theta: Vec<f64> = (0..m.polytope().ambient_dim())
            .map(|_| r.gen_range(-3.2..3.2))
            .collect();
        let rotated: Vec<Complex64> = z
            .iter()
            .zip(m.points())
            .map(|(x, p)| {
                let phase: f64 = p.to_f64().iter().zip(&theta).map(|(a, b)| a * b).sum();
                x * Complex64::from_polar(1.0, phase)
            })
            .collect();
        let mu2 = m.eval(&rotated).map_err(e)?;
        let diff = mu
            .iter()
            .zip(&mu2)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        ensure(
            diff <= FLOAT_TOL,
            format!("trial {trial}: torus action moved the image by {diff}"),
        )?;
    }
    Ok(())
}

fn transport_suite() -> Result<(), String> {
    let c = focus_focus_complex();
    let mut r = rng(94);
    for trial in 0..200 {
        let len = r.gen_range(2..=12);
        let (path, crossings) = random_path(&mut r, &c, len);
        if crossings.len() < 2 {
            continue;
        }
        let whole = c.parallel_transport(&path, &crossings).map_err(e)?;
        let cut = r.gen_range(1..crossings.len());
        let head = c
            .parallel_transport(&path[..=cut], &crossings[..cut])
            .map_err(e)?;
        let tail = c
            .parallel_transport(&path[cut..], &crossings[cut..])
            .map_err(e)?;
        ensure(
            tail.compose(&head) == whole,
            format!("trial {trial}: transport is not functorial"),
        )?;
        let back_path: Vec<usize> = path.iter().rev().copied().collect();
        let back_cross: Vec<_> = crossings.iter().rev().cloned().collect();
        let back = c.parallel_transport(&back_path, &back_cross).map_err(e)?;
        ensure(
            back == whole.inverse().map_err(e)?,
            format!("trial {trial}: reversal is not the inverse"),
        )?;
        ensure(
            whole.is_chart_transition(),
            format!("trial {trial}: not an integral affine map"),
        )?;
    }
    Ok(())
}

fn ac9() -> Check {
    let suites: [(&str, fn() -> Result<(), String>); 4] = [
        ("snf", snf_suite),
        ("hilbert", hilbert_suite),
        ("momentum", momentum_suite),
        ("transport", transport_suite),
    ];
    let mut times = Vec::new();
    for (name, f) in suites {
        let start = Instant::now();
        f().map_err(|m| format!("{name}: {m}"))?;
        let t = start.elapsed();
        ensure(t < SUITE_BUDGET, format!("{name} took {t:?}"))?;
        times.push(format!("{name} {t:.2?}"));
    }
    Ok(times.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("{name} PASS: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{name} FAIL: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
