use toric_degen::fibration::k3_run;

fn main() {
    let r = k3_run().unwrap();
    println!("discriminant points: {}", r.discriminant_count);
    for e in &r.edges {
        let m: Vec<String> = e
            .roots
            .iter()
            .map(|x| format!("{:.4}", x.momentum))
            .collect();
        println!(
            "edge X{}X{}: {} -> momenta {}",
            e.coords.0,
            e.coords.1,
            e.factorization,
            m.join(", ")
        );
    }
    println!(
        "kappas: {:?}",
        r.kappas.values().map(|k| k.to_string()).collect::<Vec<_>>()
    );
    println!(
        "positive {}, mpl {}, charges match {}",
        r.positive,
        r.mpl.passes,
        r.charges_match_kappa()
    );
    println!(
        "euler characteristic: {:?}",
        r.fibration.euler_characteristic
    );
}
