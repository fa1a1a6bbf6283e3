//! Mapping class group orbits of epimorphisms onto V4, with and without Aut(V4).

use std::sync::Arc;

use braidsurf::perm::{automorphisms, builtin};
use braidsurf::surface::{enumerate, partition_into_orbits, Constraints, OrbitOptions};

fn main() {
    let v4 = Arc::new(builtin("V4").unwrap());
    let surjective = Constraints {
        surjective: true,
        ..Default::default()
    };
    for g in 1..=3 {
        let (epis, _) = enumerate(&v4, g, 0, &surjective).unwrap();
        let plain = partition_into_orbits(&epis, &OrbitOptions::default()).unwrap();
        let with_aut = OrbitOptions {
            automorphisms: Some(automorphisms(&v4)),
            ..Default::default()
        };
        let merged = partition_into_orbits(&epis, &with_aut).unwrap();
        let sizes: Vec<usize> = plain.iter().map(|o| o.size).collect();
        println!(
            "genus {g}: {} epimorphisms, {} MCG orbits {sizes:?}, {} orbits modulo Aut",
            epis.len(),
            plain.len(),
            merged.len()
        );
    }
}
