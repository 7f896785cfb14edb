//! Regenerates the JSON fixtures shipped under fixtures/.

use wolfred::algebra::{table::TableFixture, Algebra};
use wolfred::json::{FamilyFixture, FamilyFixtures, MatrixJson};
use wolfred::lie::Sig;
use wolfred::orbit::types::{FamilyLabel, FamilyName};
use wolfred::orbit::{family_representative, ParamVal};

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    for (alg, name) in [
        (Algebra::Octonion, "mult_table_o.json"),
        (Algebra::SplitOctonion, "mult_table_osplit.json"),
    ] {
        let fx = TableFixture::build(alg);
        std::fs::write(dir.join(name), serde_json::to_string_pretty(&fx).unwrap()).unwrap();
    }
    // one representative per family at fixed reference parameters
    let rows: Vec<(FamilyName, Vec<f64>)> = vec![
        (FamilyName::I1, vec![]),
        (FamilyName::II1, vec![1.0]),
        (FamilyName::II2, vec![1.0]),
        (FamilyName::II3, vec![1.0]),
        (FamilyName::II4, vec![1.0]),
        (FamilyName::II5, vec![1.0]),
        (FamilyName::II6, vec![1.0]),
        (FamilyName::II7, vec![1.0]),
        (FamilyName::III1, vec![1.0, 2.0]),
        (FamilyName::III2, vec![1.0, 2.0]),
        (FamilyName::III3, vec![1.0, 2.0]),
        (FamilyName::III4, vec![1.0, 2.0]),
        (FamilyName::III5, vec![1.0, 2.0]),
        (FamilyName::III6, vec![1.0, 2.0]),
        (FamilyName::III7, vec![1.0, 2.0]),
        (FamilyName::III8, vec![1.0, 2.0]),
        (FamilyName::III9, vec![1.0, 2.0]),
        (FamilyName::III10, vec![1.0, 2.0]),
        (FamilyName::IV1, vec![1.0, 2.0, 3.0]),
        (FamilyName::IV2, vec![1.0, 2.0, 3.0]),
        (FamilyName::IV3, vec![1.0, 2.0, 3.0]),
        (FamilyName::IV4, vec![1.0, 2.0, 3.0]),
        (FamilyName::IV5, vec![1.0, 2.0, 3.0]),
        (FamilyName::IV6, vec![1.0, 2.0, 3.0]),
    ];
    let mut families = Vec::new();
    for (name, params) in rows {
        let fl = FamilyLabel {
            name,
            params: params.iter().map(|v| ParamVal::from_f64(*v)).collect(),
        };
        let a = family_representative(&fl).unwrap();
        families.push(FamilyFixture {
            family: name.label().to_string(),
            params,
            matrix: MatrixJson::from_mat(Sig::Split, a.matrix()),
        });
    }
    let fx = FamilyFixtures { version: 1, families };
    std::fs::write(
        dir.join("families.json"),
        serde_json::to_string_pretty(&fx).unwrap(),
    )
    .unwrap();
    println!("fixtures written to {}", dir.display());
}
