use num_complex::Complex64;
use toric_degen::polyhedra::{LatticePolytope, RationalCone};
use toric_degen::toric::{kn_descriptor, LogKind, MomentumEval, ToricVarietyModel};

fn main() {
    let line = ToricVarietyModel::affine(
        &RationalCone::from_i64_rays(&[&[1]]),
        LogKind::ToricBoundary,
    );
    let p2 = ToricVarietyModel::projective(
        &LatticePolytope::standard_simplex(2, 1),
        LogKind::ToricBoundary,
    )
    .unwrap();
    for (name, model) in [("A^1", &line), ("P^2", &p2)] {
        let d = kn_descriptor(model).unwrap();
        println!("{name}: torus rank {}", d.torus_rank);
        for s in model.strata() {
            println!(
                "  stratum {} (dim {}): fiber T^{}",
                s.id,
                s.dim,
                d.rank_of(s.id).unwrap()
            );
        }
    }

    let mu = MomentumEval::new(&LatticePolytope::standard_simplex(2, 2)).unwrap();
    let t = [Complex64::new(0.5, 0.5), Complex64::new(2.0, -1.0)];
    let x = mu.eval(&mu.torus_point(&t)).unwrap();
    println!(
        "momentum image of {t:?}: {x:?} (inside: {})",
        mu.in_polytope(&x, 1e-9)
    );
}
