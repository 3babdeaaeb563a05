// The Kubota cocycle: explicit values and a seeded check of the cocycle
// identity and the Borel formula.

use kubota_meta::kubota::{beta, check_cocycle, Mat2};
use kubota_meta::sample::Sampler;
use kubota_meta::{hilbert, LocalField};

pub fn run_example() -> kubota_meta::Result<()> {
    let field = "Qp(3)[ram:3]".parse::<LocalField>()?;
    let w = Mat2::weyl(field);
    let g = Mat2::parse(field, "[1:1, 2; 0, 1/3]")?;
    println!("beta(w, w) = {}", beta(&w, &w)?.value());
    println!("beta(w, {g}) = {}", beta(&w, &g)?.value());

    let mut s = Sampler::new(field, 0, "example/cocycle", 30);
    let trials = 500;
    let mut bad = 0;
    for _ in 0..trials {
        let (g1, g2, g3) = (s.gl2(), s.gl2(), s.gl2());
        bad += !check_cocycle(&g1, &g2, &g3)? as usize;
    }
    println!("cocycle identity: {trials} triples, {bad} failures");
    assert_eq!(bad, 0);

    // on the Borel subgroup, β is the symbol of the corner entries
    for _ in 0..200 {
        let (b1, b2) = (s.upper_triangular(), s.upper_triangular());
        assert_eq!(beta(&b1, &b2)?, hilbert(b1.a(), b2.d())?);
    }
    println!("Borel formula holds on 200 pairs");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
