// Hilbert symbols on the four square classes of a few fields.

use kubota_meta::{
    hilbert, hilbert_via_norm, pairing_table, square_class_reps, FieldElement, LocalField,
};

fn print_table(field: LocalField) {
    let reps = square_class_reps(field);
    println!(
        "{field}  (-1 is {}a square)",
        if field.minus_one_is_square() {
            ""
        } else {
            "not "
        }
    );
    print!("{:>6}", "");
    for c in &reps {
        print!("{:>6}", c.name());
    }
    println!();
    for (c, row) in reps.iter().zip(pairing_table(field)) {
        print!("{:>6}", c.name());
        for s in row {
            print!("{:>6}", s.value());
        }
        println!();
    }
}

pub fn run_example() -> kubota_meta::Result<()> {
    let q5 = LocalField::base(5)?;
    let q3 = LocalField::base(3)?;
    let e = "Qp(5)[unram:2]".parse::<LocalField>()?;
    for f in [q5, q3, e] {
        print_table(f);
    }

    // (2, 5) over Q5 is the Legendre symbol (2 | 5) = -1
    let s = hilbert(
        &FieldElement::from_int(q5, 2),
        &FieldElement::from_int(q5, 5),
    )?;
    println!("(2, 5)_Q5 = {}", s.value());
    assert!(!s.is_plus());

    // an element of F against an element of E, both ways
    let a = FieldElement::from_int(q5, 10);
    let b = FieldElement::parse(e, "3:1/5")?;
    let direct = hilbert(&a.embed(e)?, &b)?;
    let by_norm = hilbert_via_norm(&a, &b)?;
    println!(
        "(10, 3 + sqrt(2)/5)_E = {} = (10, N(.))_F = {}",
        direct.value(),
        by_norm.value()
    );
    assert_eq!(direct, by_norm);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
