use std::sync::Arc;

use super::*;
use crate::perm::{builtin, FiniteGroup};
use crate::surface::{enumerate, Constraints};

fn grp(name: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin(name).unwrap())
}

fn idx(g: &FiniteGroup, p: &Permutation) -> usize {
    g.permutations().unwrap().iter().position(|q| q == p).unwrap()
}

fn word(n: usize, l: &[i32]) -> BraidWord {
    BraidWord::new(n, l.to_vec()).unwrap()
}

#[test]
fn level_parsing() {
    assert_eq!("bn1".parse::<LiftLevel>().unwrap(), LiftLevel::Bn1);
    assert_eq!("bn:len=8".parse::<LiftLevel>().unwrap(), LiftLevel::BnBounded { len_max: 8 });
    assert!("bn2".parse::<LiftLevel>().is_err());
}

#[test]
fn genus_one_transposition_lifts() {
    let s2 = grp("S2");
    let t = SurfaceMonodromy::new(s2, &[1], &[0], &[]).unwrap();
    let p = LiftProblem::new(t, vec![], LiftLevel::Bn1);
    let lift = lift_to_bn1(&p).unwrap();
    assert_eq!(lift.handles.len(), 2);
    assert!(relator_product(&lift.handles, &[], 2).unwrap().is_identity());
}

#[test]
fn every_s3_genus_two_tuple_lifts_to_bn1() {
    let s3 = grp("S3");
    let (tuples, _) = enumerate(&s3, 2, 0, &Constraints::default()).unwrap();
    assert!(!tuples.is_empty());
    for t in tuples {
        let p = LiftProblem::new(t, vec![], LiftLevel::Bn1);
        assert!(lift_to_bn1(&p).is_ok());
    }
}

#[test]
fn peripheral_linking_obstruction() {
    let s2 = grp("S2");
    let s = idx(&s2, &word(2, &[1]).underlying_permutation());
    let t = SurfaceMonodromy::new(s2, &[], &[], &[s, s]).unwrap();
    let bad = LiftProblem::new(
        t.clone(),
        vec![PeripheralTarget::Word(word(2, &[1])), PeripheralTarget::Word(word(2, &[1]))],
        LiftLevel::Bn1,
    );
    assert_eq!(lift_to_bn1(&bad), Err(LiftError::NoSolution));
    let good = LiftProblem::new(
        t,
        vec![PeripheralTarget::Word(word(2, &[1])), PeripheralTarget::Word(word(2, &[-1]))],
        LiftLevel::Bn1,
    );
    assert!(lift_to_bn1(&good).unwrap().handles.is_empty());
    let cert = lift_to_bn_bounded(&good, &BoundedOptions::default()).unwrap().certificate;
    assert!(cert.freely_trivial);
}

#[test]
fn mismatched_peripheral_is_malformed() {
    let s2 = grp("S2");
    let t = SurfaceMonodromy::new(s2, &[], &[], &[0]).unwrap();
    let p = LiftProblem::new(t, vec![PeripheralTarget::Word(word(2, &[1]))], LiftLevel::Bn1);
    assert!(matches!(lift_to_bn1(&p), Err(LiftError::Malformed(_))));
}

#[test]
fn trivial_monodromy_lifts_to_empty_words() {
    let s3 = grp("S3");
    let t = SurfaceMonodromy::new(s3, &[0], &[0], &[]).unwrap();
    let p = LiftProblem::new(t, vec![], LiftLevel::BnBounded { len_max: 4 });
    let lift = lift_to_bn_bounded(&p, &BoundedOptions::default()).unwrap();
    assert!(lift.handles.iter().all(|w| w.is_empty()));
    assert_eq!(lift.certificate.total_length, 0);
}

#[test]
fn commuting_pair_found() {
    let s3 = grp("S3");
    let x = idx(&s3, &word(3, &[1]).underlying_permutation());
    let t = SurfaceMonodromy::new(s3, &[x], &[x], &[]).unwrap();
    let p = LiftProblem::new(t, vec![], LiftLevel::BnBounded { len_max: 3 });
    let lift = lift_to_bn_bounded(&p, &BoundedOptions { len_max: 3, ..Default::default() }).unwrap();
    assert_eq!(lift.certificate.total_length, 2);
    assert!(lift.certificate.freely_trivial);
    assert_eq!(lift.handles[0].underlying_permutation(), word(3, &[1]).underlying_permutation());
}

#[test]
fn bounded_search_respects_budget() {
    let s3 = grp("S3");
    let a = idx(&s3, &word(3, &[1]).underlying_permutation());
    let b = idx(&s3, &word(3, &[2]).underlying_permutation());
    let t = SurfaceMonodromy::new(s3.clone(), &[a, 0], &[b, 0], &[]).unwrap();
    if !t.validate() {
        return;
    }
    let p = LiftProblem::new(t, vec![], LiftLevel::BnBounded { len_max: 2 });
    let r = lift_to_bn_bounded(&p, &BoundedOptions { len_max: 2, node_budget: 1 });
    assert!(matches!(r, Err(LiftError::NotFoundWithinBound { exhausted: false, .. })) || r.is_ok());
}

#[test]
fn obstruction_report_is_stable() {
    let s2 = grp("S2");
    let s = idx(&s2, &word(2, &[1]).underlying_permutation());
    let t = SurfaceMonodromy::new(s2, &[], &[], &[s, s]).unwrap();
    let p = LiftProblem::new(
        t,
        vec![PeripheralTarget::Word(word(2, &[1])), PeripheralTarget::Word(word(2, &[1]))],
        LiftLevel::Bn1,
    );
    let r = obstruction_report(&p).unwrap();
    assert!(!r.solvable);
    assert!(!r.stabilized_solvable);
    assert!(r.violations.is_empty());
}

#[test]
fn element_targets_deserialize() {
    let w: PeripheralTarget = serde_json::from_str(r#"{"n":2,"word":[1]}"#).unwrap();
    assert!(matches!(w, PeripheralTarget::Word(_)));
}
