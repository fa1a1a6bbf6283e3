//! Spherical functions separating conjugacy classes of pairs in S3.

use braidsurf::perm::builtin;
use braidsurf::spherical::{wielandt_check, Separation, SphericalFamily};

fn main() {
    let s3 = builtin("S3").unwrap();
    let fam = SphericalFamily::new(&s3, 2).unwrap();
    println!("{} irreps, {} invariant vectors in the family", fam.irreps().len(), fam.len());
    let x = [s3.element_by_label("(1 2)").unwrap(), s3.element_by_label("(1 2 3)").unwrap()];
    let y = [s3.element_by_label("(1 3)").unwrap(), s3.element_by_label("(1 3 2)").unwrap()];
    let z = [s3.element_by_label("(1 2)").unwrap(), s3.element_by_label("(1 3)").unwrap()];
    for (name, other) in [("y", y), ("z", z)] {
        match fam.separate(&x, &other).unwrap() {
            Separation::Separated { witness } => println!("x vs {name}: separated, difference {:.3}", witness.difference),
            Separation::NotSeparated { max_difference } => println!("x vs {name}: same double coset ({max_difference:.1e})"),
        }
    }
    let w = wielandt_check(&s3, 2).unwrap();
    println!("orbits {} = sum of squared multiplicities {}", w.orbits, w.sum_m_squared);
}
