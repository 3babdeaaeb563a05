// Weil indices from exact quadratic Gauss sums, and the product relation
// `γ(a, ψ) γ(b, ψ) = (a, b) γ(ab, ψ)`.

use kubota_meta::weil::{gamma, weil_index, AdditiveChar, EighthRoot};
use kubota_meta::{hilbert, square_class_reps, FieldElement, LocalField};

pub fn run_example() -> kubota_meta::Result<()> {
    for spec in ["Qp(3)", "Qp(5)", "Qp(7)[unram:3]", "Qp(5)[ram:5]"] {
        let field = spec.parse::<LocalField>()?;
        let psi = AdditiveChar::with_scale(field.uniformizer().inverse()?)?;
        let g = gamma(&psi)?;
        let row: Vec<String> = square_class_reps(field)
            .iter()
            .map(|c| Ok(format!("{}={}", c.name(), weil_index(&c.rep(), &psi)?)))
            .collect::<kubota_meta::Result<_>>()?;
        println!(
            "{field}: gamma(psi) = {:.4}{:+.4}i  {}",
            g.re,
            g.im,
            row.join("  ")
        );

        for x in square_class_reps(field) {
            for y in square_class_reps(field) {
                let (a, b) = (x.rep(), y.rep());
                let lhs = weil_index(&a, &psi)? * weil_index(&b, &psi)?;
                let rhs = EighthRoot::from_sign(hilbert(&a, &b)?) * weil_index(&(&a * &b), &psi)?;
                assert_eq!(lhs, rhs, "{field} {x} {y}");
            }
        }
    }

    // units at this scale: γ(u, ψ) is the Legendre symbol of u
    let q7 = LocalField::base(7)?;
    let psi = AdditiveChar::with_scale(FieldElement::from_ratio(q7, 1, 7))?;
    for u in 1..7 {
        let g = weil_index(&FieldElement::from_int(q7, u), &psi)?;
        print!("({u}|7)={g} ");
    }
    println!();
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
