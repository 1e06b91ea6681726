use toric_degen::complex::examples::{flat_torus, focus_focus_complex, tetrahedron_boundary};
use toric_degen::complex::is_simple;

fn main() {
    for (name, c) in [
        ("flat torus", flat_torus(3)),
        ("focus-focus", focus_focus_complex()),
        ("tetrahedron", tetrahedron_boundary()),
    ] {
        let r = is_simple(&c).unwrap();
        println!(
            "{name}: positive {}, simple {}, per-point simple {}",
            r.positive, r.simple, r.per_point_simple
        );
        for (tau, why) in r.failing.iter().take(2) {
            println!("  cell {tau}: {why}");
        }
    }
}
