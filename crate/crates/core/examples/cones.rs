use toric_degen::lattice::LatticePoint;
use toric_degen::polyhedra::{LatticePolytope, RationalCone};

fn main() {
    let sigma = RationalCone::from_i64_rays(&[&[1, 0], &[1, 3]]);
    let dual = sigma.dual();
    println!(
        "rays of sigma: {:?}",
        sigma
            .rays()
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
    );
    println!(
        "rays of dual:  {:?}",
        dual.rays()
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
    );
    println!("smooth: {}", sigma.is_smooth());
    println!(
        "(2, 1) in sigma: {}",
        sigma.contains(&LatticePoint::from_i64(&[2, 1]))
    );

    let square = LatticePolytope::cube(2);
    let fan = square.normal_fan().unwrap();
    println!(
        "normal fan of the square: {} cones, complete = {}",
        fan.cones().len(),
        fan.is_complete()
    );
    let faces = square.face_lattice();
    println!("faces of the square: {}", faces.len());

    let seg = LatticePolytope::from_i64(&[&[0], &[4]]);
    println!(
        "segment of length {}: {} lattice points, elementary = {}",
        seg.lattice_length().unwrap(),
        seg.lattice_points().unwrap().len(),
        seg.is_elementary_simplex()
    );
}
