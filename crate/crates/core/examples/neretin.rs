//! Determinant form of the SU(2) spherical function against its truncated series.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use braidsurf::braid::BraidWord;
use braidsurf::spherical::{neretin_phi2, neretin_series, phi2_burau, PairVars, SU2Element};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = [SU2Element::random(&mut rng), SU2Element::random(&mut rng)];
    for r in [0.02, 0.05, 0.1] {
        let x = PairVars::constant(2, Complex64::new(r, 0.0));
        let y = PairVars::constant(2, Complex64::new(0.0, r));
        let det = neretin_phi2(&a, &x, &y).unwrap().sqrt();
        for spin in [0.5, 1.0, 2.0] {
            let s = neretin_series(&a, &x, &y, spin).unwrap();
            println!("|x| = |y| = {r}: spin <= {spin}: |det - series| = {:.2e}", (det - s).norm());
        }
    }
    let braids = [BraidWord::new(3, vec![1, 2]).unwrap(), BraidWord::new(3, vec![-2, 1, 1]).unwrap()];
    let x = PairVars::constant(3, Complex64::new(0.05, 0.01));
    let y = PairVars::constant(3, Complex64::new(0.04, -0.02));
    println!("phi2 of a B3 pair at theta = 1.2: {:.6}", phi2_burau(&braids, 1.2, &x, &y).unwrap());
}
