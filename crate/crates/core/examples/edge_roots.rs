use toric_degen::poly::{
    factor_int_poly, k3_quartic, quadratic_roots, real_root_count, restrict_to_edge,
};

fn main() {
    let f = k3_quartic();
    let e = restrict_to_edge(&f, 1, 0).unwrap();
    println!("restriction to X2 = X3 = 0: {}", e.univariate);
    println!(
        "real roots (Sturm): {}",
        real_root_count(&e.univariate).unwrap()
    );
    let fac = factor_int_poly(&e.univariate).unwrap();
    println!("factorization: {fac}");
    for g in &fac.factors {
        for r in quadratic_roots(g).unwrap_or_default() {
            println!("  root {r} ~ {:.6}", r.to_f64());
        }
    }
}
