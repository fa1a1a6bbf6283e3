//! Lifting invariant of V4 monodromies through the quaternion group.

use std::sync::Arc;

use braidsurf::homology::{lifting_invariant, shipped_cover, PeripheralLifts};
use braidsurf::perm::builtin;
use braidsurf::surface::SurfaceMonodromy;

fn main() {
    let v4 = Arc::new(builtin("V4").unwrap());
    let ext = shipped_cover("q8-v4", &v4).unwrap();
    let lifts = PeripheralLifts::canonical(&ext);
    let (a, b) = (v4.element_by_label("a").unwrap(), v4.element_by_label("b").unwrap());
    for (name, t) in [
        ("(a, b)", SurfaceMonodromy::new(v4.clone(), &[a], &[b], &[]).unwrap()),
        ("(a, 1)", SurfaceMonodromy::new(v4.clone(), &[a], &[0], &[]).unwrap()),
        ("(a, b) stabilized", SurfaceMonodromy::new(v4.clone(), &[a], &[b], &[]).unwrap().stabilize(2)),
    ] {
        let v = lifting_invariant(&t, &ext, &lifts).unwrap();
        println!("{name:>20}: invariant {}", ext.total().label(v));
    }
}
