// Genuine characters of the cover of the center: the four over a fixed
// central character, conjugation, and the square-class indices of `E/F`.

use kubota_meta::characters::{
    conjugate_char, count_agreeing_extensions, f_image_classes, index_fesq, omega_of, CentralTag,
};
use kubota_meta::kubota::commutator_pairing;
use kubota_meta::{hilbert, FieldElement, LocalField, Mat2};

pub fn run_example() -> kubota_meta::Result<()> {
    for spec in ["Qp(5)[unram:2]", "Qp(5)[ram:5]", "Qp(13)[ram:13]"] {
        let e = spec.parse::<LocalField>()?;
        println!(
            "{e}: F^x image {}  [E^x : F^x E^x2] = {}  agreeing classes = {}",
            f_image_classes(e)?,
            index_fesq(e)?,
            count_agreeing_extensions(e)?
        );
    }

    let e = "Qp(5)[unram:2]".parse::<LocalField>()?;
    let omega = omega_of(e, CentralTag::new("omega"));
    let mu = &omega.members[0];
    let a = FieldElement::parse(e, "0:1")?;
    let conj = conjugate_char(mu, &a)?;
    println!(
        "Omega = {{{}}}",
        omega
            .members
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("{mu} conjugated by sqrt(2) is {conj}");
    assert!(omega.contains(&conj) && &conj != mu);

    // the commutator of a central z with g in the cover is (z, det g)
    let z = FieldElement::from_int(e, 5);
    let g = Mat2::parse(e, "0,1;1,0")?;
    let c = commutator_pairing(&z, &g)?;
    println!("commutator(5, w) = {}", c.value());
    assert_eq!(c, hilbert(&z, g.det())?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
