use toric_degen::monoid::{PresentedMonoid, ToricMonoid};

fn main() {
    // <e1, e2, e3, e4 | e1 + e2 = e3 + e4>
    let p = PresentedMonoid::from_i64(4, &[(&[1, 1, 0, 0], &[0, 0, 1, 1])]);
    let gp = p.groupify();
    println!(
        "groupification: Z^{} with torsion {:?}",
        gp.free_rank, gp.torsion
    );
    let c = p.classify(8);
    println!(
        "integral {:?}, fine {:?}, saturated {:?}, toric {:?}",
        c.integral, c.fine, c.saturated, c.toric
    );

    let m = ToricMonoid::from_presented(&p).unwrap();
    for h in m.hilbert_basis() {
        println!("hilbert basis: {h}");
    }
    for r in m.relation_lattice() {
        println!("relation: {r}");
    }

    // the cusp <a, b | 2a = 3b> is not saturated
    let cusp = PresentedMonoid::from_i64(2, &[(&[2, 0], &[0, 3])]).classify(8);
    println!(
        "cusp saturated: {:?}, witness {:?}",
        cusp.saturated, cusp.non_saturated_witness
    );
}
