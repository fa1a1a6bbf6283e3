//! Counts closed genus-2 monodromies into S3 and compares with the character formula.

use braidsurf::perm::builtin;
use braidsurf::spherical::frobenius_count;
use braidsurf::surface::{count, Constraints};

fn main() {
    let s3 = builtin("S3").unwrap();
    for g in 1..=2 {
        let counts = count(&s3, g, 0, &Constraints::default()).unwrap();
        let formula = frobenius_count(&s3, g).unwrap();
        println!(
            "S3, genus {g}: {} tuples, {} up to conjugation, character formula {formula}",
            counts.raw, counts.conjugacy_classes
        );
    }
}
