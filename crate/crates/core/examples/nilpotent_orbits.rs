// Nilpotent `SL2(E)` orbits in `sl2(E)` are labelled by square classes.

use kubota_meta::branching::{orbit_invariant, whittaker_datum_eval, NilpotentSl2};
use kubota_meta::sample::Sampler;
use kubota_meta::weil::AdditiveChar;
use kubota_meta::{FieldElement, LocalField, SquareClass};

pub fn run_example() -> kubota_meta::Result<()> {
    let field = "Qp(5)[unram:2]".parse::<LocalField>()?;
    for spec in ["0,1;0,0", "0,0;1,0", "2,-4;1,-2", "0,-5;0,0", "0,0;0:1,0"] {
        let y = NilpotentSl2::parse(field, spec)?;
        let c = orbit_invariant(&y);
        println!(
            "{y} lies in the orbit of Y_a with a in class {c} (rep {})",
            c.rep()
        );
    }

    let mut s = Sampler::new(field, 0, "example/orbits", 30);
    for c in SquareClass::all(field) {
        let y = NilpotentSl2::y_a(c.rep())?;
        for _ in 0..50 {
            assert_eq!(orbit_invariant(&y.conjugate(&s.sl2())?), c);
        }
    }
    println!("orbit class unchanged under 200 random SL2 conjugations");

    let psi = AdditiveChar::standard(field);
    let a = FieldElement::from_int(field, 3);
    let x = FieldElement::from_ratio(field, 1, 25);
    let v = whittaker_datum_eval(&a, &x, &psi)?;
    println!("psi(B(Y_3, log n_(1/25))) = exp(2 pi i {})", v.exponent());
    assert_eq!(v, psi.eval(&(&a * &x)));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
