use toric_degen::complex::examples::tetrahedron_boundary;
use toric_degen::gluing::{
    check_lifted_cocycle, coboundary, is_coboundary, section_lattice, CStarValue, TorusElement,
    ZeroCochain,
};

fn main() {
    let c = tetrahedron_boundary();
    let n = c.dim();
    let mut t = ZeroCochain::default();
    for tau in 0..c.cells().len() {
        let basis = section_lattice(&c, tau).unwrap();
        let coeffs: Vec<_> = (0..basis.len())
            .map(|i| CStarValue::from_ratio(i as i64 + 2, 3))
            .collect();
        t.values
            .insert(tau, TorusElement::from_combination(n, &basis, &coeffs));
    }
    let l = coboundary(&c, &t).unwrap();
    println!(
        "coboundary is a cocycle: {}",
        check_lifted_cocycle(&c, &l).unwrap().cocycle
    );
    println!(
        "recognised as coboundary: {}",
        is_coboundary(&c, &l).unwrap().is_coboundary()
    );

    let mut twisted = l.clone();
    let (&edge, value) = l.values.iter().next().unwrap();
    twisted
        .values
        .insert(edge, value * &TorusElement(vec![CStarValue::i(); n]));
    println!(
        "after twisting {edge:?}: coboundary = {}",
        is_coboundary(&c, &twisted).unwrap().is_coboundary()
    );
}
