//! Lifts an S3 monodromy to the abelianized braid group, then to an honest braid tuple.

use std::sync::Arc;

use braidsurf::lifting::{lift_to_bn1, lift_to_bn_bounded, BoundedOptions, LiftLevel, LiftProblem};
use braidsurf::perm::builtin;
use braidsurf::surface::SurfaceMonodromy;

fn main() {
    let s3 = Arc::new(builtin("S3").unwrap());
    let a = s3.element_by_label("(1 2)").unwrap();
    let b = s3.element_by_label("(1 2 3)").unwrap();
    // [a, b][b, a] = 1
    let t = SurfaceMonodromy::new(s3, &[a, b], &[b, a], &[]).unwrap();
    assert!(t.validate());
    let ab = lift_to_bn1(&LiftProblem::new(t.clone(), vec![], LiftLevel::Bn1)).unwrap();
    for (i, h) in ab.handles.iter().enumerate() {
        println!("handle {i}: {h:?}");
    }
    let problem = LiftProblem::new(t, vec![], LiftLevel::BnBounded { len_max: 4 });
    match lift_to_bn_bounded(&problem, &BoundedOptions::default()) {
        Ok(lift) => println!("braid lift: {lift:?}"),
        Err(e) => println!("bounded search: {e}"),
    }
}
