//! Images of a braid in a few finite quotients.

use braidsurf::braid::{quotient_probe, BraidWord, QuotientSpec};

fn main() {
    let w = BraidWord::new(3, vec![1, -2, 1, 1]).unwrap();
    for spec in ["sym", "ab:N=3", "burau:p=3,k=4"] {
        let spec: QuotientSpec = spec.parse().unwrap();
        let (idx, q) = quotient_probe(&w, &spec).unwrap();
        println!("{spec}: quotient of order {}, image {}", q.order(), q.label(idx));
    }
}
