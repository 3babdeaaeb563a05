// Whittaker supports that are cosets, their complements, and the root
// number sign chain when `-1` is not a square.

use kubota_meta::branching::{complementary_support, epsilon_sign_chain};
use kubota_meta::{LocalField, Sign, SquareClass};

pub fn run_example() -> kubota_meta::Result<()> {
    // -1 is a square in Q5
    let q5 = LocalField::base(5)?;
    let [one, u, pi, upi] = SquareClass::all(q5);
    for support in [[one, u], [one, pi], [u, pi], [pi, upi]] {
        match complementary_support(q5, &support) {
            Ok(b) => {
                let other: Vec<_> = support.iter().map(|c| c.mul(&b).name()).collect();
                println!(
                    "{{{}, {}}} and b = {b}: complement {{{}}}",
                    support[0],
                    support[1],
                    other.join(", ")
                );
            }
            Err(e) => println!("{{{}, {}}}: {e}", support[0], support[1]),
        }
    }

    // -1 is not a square in Q3 or Q7
    for spec in ["Qp(3)", "Qp(7)", "Qp(7)[ram:7]"] {
        let field = spec.parse::<LocalField>()?;
        for b in SquareClass::all(field)
            .into_iter()
            .filter(|c| c.is_ramified())
        {
            let chain = epsilon_sign_chain(field, &b, Sign::Plus)?;
            println!(
                "{field} b={b}: classes {:?} signs {:?} holds={}",
                chain.classes,
                chain.assignment.map(|s| s.value()),
                chain.holds
            );
            assert!(chain.holds);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
