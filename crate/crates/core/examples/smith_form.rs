use toric_degen::lattice::{orthogonal_complement, smith_normal_form, IntMatrix, LatticePoint};

fn main() {
    let a = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&a);
    println!("A = {a}");
    println!("D = {}", s.d);
    println!(
        "invariant factors: {:?}",
        s.invariant_factors()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
    );
    assert_eq!(&(&s.u * &a) * &s.v, s.d);

    // lattice of m with <m, (1, 2, 3)> = 0
    let perp = orthogonal_complement(&[LatticePoint::from_i64(&[1, 2, 3])], 3);
    for m in &perp {
        println!("perp basis: {m}");
    }
}
