// Multiplicities and packet sizes for every self-twist group `S`.

use kubota_meta::branching::{multiplicity_table, packet_product, TauTwistModel};
use kubota_meta::characters::SquareClassGroup;
use kubota_meta::LocalField;

pub fn run_example() -> kubota_meta::Result<()> {
    for spec in ["Qp(3)", "Qp(5)", "Qp(3)[unram:2]"] {
        let field = spec.parse::<LocalField>()?;
        println!("{field}");
        println!(
            "  {:<14} {:<9} {:>2} {:>3} {:>3} {:>8}",
            "S", "discrete", "m", "m1", "m2", "m1*m2"
        );
        for row in multiplicity_table(field) {
            println!(
                "  {:<14} {:<9} {:>2} {:>3} {:>3} {:>8}",
                row.s, row.discrete, row.m, row.m1, row.m2, row.product
            );
            assert_eq!(row.product, if row.discrete { 8 } else { 4 });
        }
    }

    // a non-discrete τ cannot have a class with (a, -1) = -1 in S
    let q3 = LocalField::base(3)?;
    let group = SquareClassGroup::new(q3);
    let rejected = group
        .subgroups()
        .into_iter()
        .filter(|s| TauTwistModel::new(*s, false, &[group.identity()]).is_err())
        .count();
    println!("Qp(3): {rejected} subgroups rejected for non-discrete models");
    let full = TauTwistModel::new(group.subgroups()[4], true, &[group.identity()])?;
    println!("full S, discrete: {:?}", packet_product(&full));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
