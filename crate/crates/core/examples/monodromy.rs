use toric_degen::complex::examples::focus_focus_complex;
use toric_degen::complex::validate_complex;

fn main() {
    let c = focus_focus_complex();
    println!(
        "f-vector {:?}, valid {}",
        c.f_vector(),
        validate_complex(&c).is_valid()
    );
    let kappas = c.kappas().unwrap();
    let singular: Vec<_> = kappas.iter().filter(|(_, k)| **k != 0.into()).collect();
    println!(
        "{} edges, {} with nonzero monodromy",
        kappas.len(),
        singular.len()
    );

    let (&(omega, rho), _) = singular[0];
    let cell = c.cell(rho);
    let t = c
        .monodromy_loop(
            omega,
            rho,
            cell.vertices[0],
            cell.vertices[1],
            cell.max_cells[0],
            cell.max_cells[1],
        )
        .unwrap();
    println!(
        "loop around edge {rho}: T = {}, kappa = {}, d = {}, d_check = {}",
        t.matrix, t.kappa, t.d, t.d_check
    );
    println!("positive: {}", c.is_positive().unwrap());
}
