//! Completely splittable braids: certificates and invariant obstructions.

use braidsurf::braid::{splittable_check, BraidWord};

fn main() {
    for (n, word) in [(3, vec![1, 2, -1]), (4, vec![1, 3]), (2, vec![1, 1]), (2, vec![1, 1, 1]), (3, vec![1, -2, 1, -2])] {
        let w = BraidWord::new(n, word.clone()).unwrap();
        let verdict = splittable_check(&w, None).unwrap();
        println!("{word:?} on {n} strands: {}", serde_json::to_string(&verdict).unwrap());
    }
    let trivial = BraidWord::new(2, vec![1, -1]).unwrap();
    println!("sigma_1 sigma_1^-1: {}", splittable_check(&trivial, None).unwrap_err());
}
