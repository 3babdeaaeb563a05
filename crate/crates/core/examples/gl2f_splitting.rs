// Over an extension `E/F`, the cover splits over `GL2(F)`: the section
// `g ↦ (g, 1)` is multiplicative there. It does not split over `GL2(E)`.

use kubota_meta::kubota::{beta, is_split_on_gl2f, Mat2, MetaElement};
use kubota_meta::sample::Sampler;
use kubota_meta::LocalField;

pub fn run_example() -> kubota_meta::Result<()> {
    for spec in ["Qp(5)[unram:2]", "Qp(7)[ram:7]"] {
        let field = spec.parse::<LocalField>()?;
        let mut s = Sampler::new(field, 0, "example/split", 40);
        for _ in 0..300 {
            let (g1, g2) = (s.gl2_base(), s.gl2_base());
            assert!(is_split_on_gl2f(&g1, &g2)?);
            let prod = MetaElement::lift(g1.clone()).mul(&MetaElement::lift(g2.clone()))?;
            assert_eq!(prod, MetaElement::lift(g1.mul(&g2)));
        }
        let nontrivial = (0..300)
            .map(|_| beta(&s.gl2(), &s.gl2()))
            .filter(|b| matches!(b, Ok(s) if !s.is_plus()))
            .count();
        println!("{field}: split on 300 F-rational pairs; beta = -1 on {nontrivial}/300 E-pairs");
        assert!(nontrivial > 0);
    }

    let field = "Qp(5)[unram:2]".parse::<LocalField>()?;
    let g = Mat2::parse(field, "1:1,0;0,1")?;
    println!(
        "rejects E-entries: {:?}",
        is_split_on_gl2f(&g, &g).unwrap_err()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
