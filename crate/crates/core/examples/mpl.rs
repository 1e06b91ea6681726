use toric_degen::complex::examples::tetrahedron_boundary;
use toric_degen::complex::{mpl_check, MPLFunction};

fn main() {
    let c = tetrahedron_boundary();
    let phi = MPLFunction::constant(&c, 1).unwrap();
    println!(
        "constant kink 1: passes = {}",
        mpl_check(&c, &phi).unwrap().passes
    );

    let mut bent = phi.clone();
    let rho = c.cells_of_dim(1)[0];
    bent.kinks.insert(rho, 2.into());
    let r = mpl_check(&c, &bent).unwrap();
    println!(
        "kink 2 on edge {:?}: passes = {}",
        c.cell(rho).vertices,
        r.passes
    );
    for (tau, residual) in &r.failing {
        println!(
            "  fails at vertex {:?}, residual {residual}",
            c.cell(*tau).vertices
        );
    }
}
