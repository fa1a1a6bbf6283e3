//! Acceptance battery. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process exits non-zero on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use braidsurf::braid::{
    admissible_thetas, splittable_check, BraidError, BraidWord, BurauSu2, InvariantFailure, ProbeQuotient,
    QuotientSpec, SplittableVerdict,
};
use braidsurf::homology::{
    builtin_extensions, is_null_homologous, lifting_invariant, lifting_invariant_with_lifts, ocl_bounded,
    shipped_cover, OclBounds, OclResult, PeripheralLifts, Presentation, StemExtension,
};
use braidsurf::lifting::{lift_to_bn1, obstruction_report, relator_product, LiftLevel, LiftProblem, PeripheralTarget};
use braidsurf::perm::{automorphisms, builtin, FiniteGroup};
use braidsurf::spherical::{
    frobenius_count, neretin_phi2, neretin_series, phi2_burau, same_double_coset, wielandt_check, PairVars,
    Separation, SphericalFamily, SU2Element,
};
use braidsurf::surface::{
    count, enumerate, is_elementary, partition_into_orbits, thickness_upper, Constraints, OrbitOptions,
    SurfaceMonodromy, ThicknessBound,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn grp(name: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin(name).expect("builtin group"))
}

fn all_tuples(g: &Arc<FiniteGroup>, genus: usize, surjective: bool) -> Vec<SurfaceMonodromy> {
    let c = Constraints {
        surjective,
        ..Default::default()
    };
    enumerate(g, genus, 0, &c).expect("enumeration").0
}

fn q8_over_v4(v4: &Arc<FiniteGroup>) -> StemExtension {
    shipped_cover("q8-v4", v4).expect("shipped cover")
}

fn frobenius() -> Outcome {
    let mut rows = Vec::new();
    for name in ["Z/2", "Z/3", "V4", "S3", "Q8"] {
        let g = builtin(name).unwrap();
        for genus in 1..=2 {
            let raw = count(&g, genus, 0, &Constraints::default()).map_err(|e| e.to_string())?.raw as u128;
            let want = frobenius_count(&g, genus).map_err(|e| e.to_string())?;
            if raw != want {
                return Err(format!("{name} g={genus}: enumerated {raw}, character formula {want}"));
            }
            rows.push(format!("{name}/{genus}={raw}"));
        }
    }
    Ok(rows.join(" "))
}

fn lift_universality() -> Outcome {
    let mut total = 0usize;
    for n in 2..=4 {
        let sn = grp(&format!("S{n}"));
        for genus in 1..=2 {
            let tuples = all_tuples(&sn, genus, false);
            let failures: Vec<String> = tuples
                .par_iter()
                .filter_map(|t| {
                    let p = LiftProblem::new(t.clone(), vec![], LiftLevel::Bn1);
                    match lift_to_bn1(&p) {
                        Ok(l) if relator_product(&l.handles, &[], n).map(|r| r.is_identity()).unwrap_or(false) => None,
                        Ok(_) => Some(format!("{:?}: lift violates the relator", t.entries())),
                        Err(e) => Some(format!("{:?}: {e}", t.entries())),
                    }
                })
                .collect();
            if let Some(f) = failures.first() {
                return Err(format!("S{n} g={genus}: {} failures, first {f}", failures.len()));
            }
            total += tuples.len();
        }
    }
    Ok(format!("{total} monodromies lifted"))
}

fn schur_suite() -> Outcome {
    let v4 = grp("V4");
    let ext = q8_over_v4(&v4);
    let lifts = PeripheralLifts::canonical(&ext);
    let inv = |t: &SurfaceMonodromy| lifting_invariant(t, &ext, &lifts).map_err(|e| e.to_string());
    let by_genus: Vec<Vec<SurfaceMonodromy>> = (1..=3).map(|g| all_tuples(&v4, g, false)).collect();

    // (a) handle-lift independence
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0003);
    for trial in 0..1000 {
        let tuples = &by_genus[trial % 3];
        let t = &tuples[rng.random_range(0..tuples.len())];
        let handle: Vec<usize> = t
            .entries()
            .iter()
            .map(|&x| {
                let options = ext.lifts(x);
                options[rng.random_range(0..options.len())]
            })
            .collect();
        let got = lifting_invariant_with_lifts(t, &ext, &handle, &lifts).map_err(|e| e.to_string())?;
        if got != inv(t)? {
            return Err(format!("re-lift {handle:?} of {:?} changed the invariant", t.entries()));
        }
    }

    // (b) constancy on orbits, (c) stabilization
    let mut orbits = 0;
    for tuples in &by_genus {
        for o in partition_into_orbits(tuples, &OrbitOptions::default()).map_err(|e| e.to_string())? {
            if !o.complete {
                return Err("orbit enumeration hit the budget".into());
            }
            let values: BTreeSet<usize> = o
                .representatives
                .iter()
                .map(|r| inv(&SurfaceMonodromy::from_flat(v4.clone(), o.genus, r.clone()).unwrap()))
                .collect::<Result<_, _>>()?;
            if values.len() != 1 {
                return Err(format!("genus {} orbit of size {} carries {values:?}", o.genus, o.size));
            }
            orbits += 1;
        }
        for t in tuples {
            if inv(t)? != inv(&t.stabilize(1))? {
                return Err(format!("stabilization changed the invariant of {:?}", t.entries()));
            }
        }
    }
    Ok(format!("1000 re-lifts, {orbits} orbits (g<=3) constant, stabilization invariant"))
}

fn dunfield_thurston() -> Outcome {
    let v4 = grp("V4");
    let ext = q8_over_v4(&v4);
    let lifts = PeripheralLifts::canonical(&ext);
    let inv = |t: &SurfaceMonodromy| lifting_invariant(t, &ext, &lifts).expect("invariant");
    let opts = OrbitOptions {
        budget: 1_000_000,
        automorphisms: Some(automorphisms(&v4)),
    };
    let epis = all_tuples(&v4, 3, true);
    let orbits = partition_into_orbits(&epis, &opts).map_err(|e| e.to_string())?;
    if orbits.iter().any(|o| !o.complete) {
        return Err("an orbit exceeded the 10^6 budget".into());
    }
    let values: BTreeSet<usize> = epis.iter().map(inv).collect();
    if orbits.len() != values.len() {
        return Err(format!("{} orbits but {} invariant values", orbits.len(), values.len()));
    }

    // stabilization merging
    let low: Vec<SurfaceMonodromy> = (1..=2).flat_map(|g| all_tuples(&v4, g, true)).collect();
    let mut by_value: BTreeMap<usize, Vec<&SurfaceMonodromy>> = BTreeMap::new();
    for t in &low {
        by_value.entry(inv(t)).or_default().push(t);
    }
    let classes: Vec<&Vec<&SurfaceMonodromy>> = by_value.values().filter(|v| v.len() >= 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0004);
    let mut needed = [0usize; 3];
    for _ in 0..50 {
        let class = classes[rng.random_range(0..classes.len())];
        let (s, t) = loop {
            let i = rng.random_range(0..class.len());
            let j = rng.random_range(0..class.len());
            if i != j {
                break (class[i], class[j]);
            }
        };
        let top = s.genus().max(t.genus());
        let merged = (0..=2).find(|&k| {
            let a = s.stabilize(top + k - s.genus());
            let b = t.stabilize(top + k - t.genus());
            partition_into_orbits(&[a, b], &opts).map(|o| o.len() == 1).unwrap_or(false)
        });
        match merged {
            Some(k) => needed[k] += 1,
            None => return Err(format!("{:?} and {:?} did not merge within 2 stabilizations", s.entries(), t.entries())),
        }
    }
    Ok(format!(
        "g=3: {} orbits = {} kernel values; 50 pairs merged after 0/1/2 stabilizations: {:?}",
        orbits.len(),
        values.len(),
        needed
    ))
}

fn thickness_consistency() -> Outcome {
    let bounds = OclBounds::default();
    let mut compared = 0usize;
    let mut skipped = 0usize;
    let mut elementary = 0usize;
    for name in ["Z/2", "V4"] {
        let g = grp(name);
        let pres = Presentation::from_group(&g);
        let exts = builtin_extensions(&g).map_err(|e| e.to_string())?;
        for genus in 1..=2 {
            let tuples = all_tuples(&g, genus, false);
            let results: Vec<Result<(bool, bool), String>> = tuples
                .par_iter()
                .map(|t| {
                    let elem = is_elementary(t, 1_000_000).map_err(|e| e.to_string())?;
                    if elem.is_yes() {
                        for e in &exts {
                            let v = lifting_invariant(t, e, &PeripheralLifts::canonical(e)).map_err(|e| e.to_string())?;
                            if v != e.total().identity() {
                                return Err(format!("{:?} is elementary but nonzero over {}", t.entries(), e.name()));
                            }
                        }
                    }
                    if !is_null_homologous(t).map_err(|e| e.to_string())? {
                        return Ok((false, elem.is_yes()));
                    }
                    let max_k = bounds.n_max.saturating_sub(genus);
                    let thick = thickness_upper(t, max_k, 1_000_000).map_err(|e| e.to_string())?;
                    let ocl = ocl_bounded(t, &pres, &bounds).map_err(|e| e.to_string())?;
                    match (ocl, thick) {
                        (OclResult::Found(w), ThicknessBound::Found { k, .. }) => {
                            if w.n - genus != k {
                                return Err(format!("{:?}: ocl {} - g {} != thickness {k}", t.entries(), w.n, genus));
                            }
                            Ok((true, elem.is_yes()))
                        }
                        (OclResult::Found(w), ThicknessBound::NotFound { exhaustive: true, .. }) => Err(format!(
                            "{:?}: ocl {} but no elementary stabilization up to {max_k}",
                            t.entries(),
                            w.n
                        )),
                        _ => Ok((false, elem.is_yes())),
                    }
                })
                .collect();
            for r in results {
                let (cmp, yes) = r?;
                if cmp {
                    compared += 1;
                } else {
                    skipped += 1;
                }
                elementary += yes as usize;
            }
        }
    }
    Ok(format!(
        "{compared} tuples compared, {skipped} outside the terminating range, {elementary} elementary with vanishing invariants"
    ))
}

fn tuples_of(g: &FiniteGroup, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                g.elements().map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn spherical_separation() -> Outcome {
    let mut pairs = 0usize;
    let mut min_witness = f64::INFINITY;
    let mut max_unseparated: f64 = 0.0;
    for name in ["Z/4", "V4", "S3"] {
        let g = builtin(name).unwrap();
        for k in 1..=2 {
            let fam = SphericalFamily::new(&g, k).map_err(|e| e.to_string())?;
            let tuples = tuples_of(&g, k);
            let rows: Vec<Result<(usize, f64, f64), String>> = tuples
                .par_iter()
                .map(|x| {
                    let mut lo = f64::INFINITY;
                    let mut hi: f64 = 0.0;
                    for y in &tuples {
                        let same = same_double_coset(&g, x, y);
                        match fam.separate(x, y).map_err(|e| e.to_string())? {
                            Separation::Separated { witness } if !same => lo = lo.min(witness.difference),
                            Separation::NotSeparated { max_difference } if same => hi = hi.max(max_difference),
                            s => return Err(format!("{name} k={k} {x:?} vs {y:?}: same coset {same}, got {s:?}")),
                        }
                    }
                    Ok((tuples.len(), lo, hi))
                })
                .collect();
            for r in rows {
                let (n, lo, hi) = r?;
                pairs += n;
                min_witness = min_witness.min(lo);
                max_unseparated = max_unseparated.max(hi);
            }
        }
    }
    if min_witness <= 1e-6 {
        return Err(format!("weakest witness differs by only {min_witness:e}"));
    }
    Ok(format!(
        "{pairs} pairs agree; weakest witness {min_witness:.3e}, largest unseparated gap {max_unseparated:.1e}"
    ))
}

fn wielandt() -> Outcome {
    let mut rows = Vec::new();
    for name in ["Z/4", "V4", "S3"] {
        let g = builtin(name).unwrap();
        for k in 1..=2 {
            let w = wielandt_check(&g, k).map_err(|e| e.to_string())?;
            if w.orbits != w.sum_m_squared {
                return Err(format!("{name} k={k}: {} orbits, sum m^2 = {}", w.orbits, w.sum_m_squared));
            }
            rows.push(format!("{name}/{k}={}", w.orbits));
        }
    }
    Ok(rows.join(" "))
}

fn small_complex(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

fn neretin() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    let mut worst_series: f64 = 0.0;
    let mut worst_interior: f64 = 0.0;
    let mut worst_conj: f64 = 0.0;
    for trial in 0..40 {
        let a = [SU2Element::random(&mut rng), SU2Element::random(&mut rng)];
        // the corner |x| = |y| = 0.1 is included explicitly
        let (x, y) = if trial < 8 {
            let phase = |r: &mut ChaCha8Rng| Complex64::from_polar(0.1, r.random_range(-std::f64::consts::PI..std::f64::consts::PI));
            (phase(&mut rng), phase(&mut rng))
        } else {
            (small_complex(&mut rng, 0.1), small_complex(&mut rng, 0.1))
        };
        let (x, y) = (PairVars::new(2, vec![x]).unwrap(), PairVars::new(2, vec![y]).unwrap());
        let phi2 = neretin_phi2(&a, &x, &y).map_err(|e| e.to_string())?;
        let series = neretin_series(&a, &x, &y, 1.0).map_err(|e| e.to_string())?;
        let err = (phi2.sqrt() - series).norm();
        worst_series = worst_series.max(err);
        if trial >= 8 {
            worst_interior = worst_interior.max(err);
        }
        if trial < 10 {
            for _ in 0..10 {
                let h = SU2Element::random(&mut rng);
                let conj: Vec<SU2Element> = a.iter().map(|m| m.conjugate_by(&h)).collect();
                let v = neretin_phi2(&conj, &x, &y).map_err(|e| e.to_string())?;
                worst_conj = worst_conj.max((v - phi2).norm());
            }
        }
    }
    if worst_series > 1e-6 || worst_conj > 1e-9 {
        return Err(format!(
            "det vs series {worst_series:.2e} (tol 1e-6; random interior points {worst_interior:.2e}), conjugation {worst_conj:.2e} (tol 1e-9)"
        ));
    }
    Ok(format!("det vs series {worst_series:.2e}, conjugation over 100 conjugators {worst_conj:.2e}"))
}

#[derive(Deserialize)]
struct ProbePair {
    quotient: String,
    left: Vec<BraidWord>,
    right: Vec<BraidWord>,
    x: [f64; 2],
    y: [f64; 2],
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn braid(l: &[i32]) -> BraidWord {
    BraidWord::new(3, l.to_vec()).unwrap()
}

fn is_special_unitary(u: &Matrix2<Complex64>) -> bool {
    (u.adjoint() * u - Matrix2::identity()).norm() < 1e-10 && (u.determinant() - 1.0).norm() < 1e-10
}

fn burau_contract() -> Outcome {
    let text = std::fs::read_to_string(fixture("burau_probe_pair.json")).map_err(|e| e.to_string())?;
    let pair: ProbePair = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let spec: QuotientSpec = pair.quotient.parse().map_err(|e: BraidError| e.to_string())?;
    let q = ProbeQuotient::new(3, &spec).map_err(|e| e.to_string())?;
    let qg = q.as_group(10_000).map_err(|e| e.to_string())?;
    let class = |w: &BraidWord| q.probe(w).map(|i| qg.class_of(i)).map_err(|e| e.to_string());
    let separated = pair
        .left
        .iter()
        .zip(&pair.right)
        .map(|(l, r)| Ok(class(l)? != class(r)?))
        .collect::<Result<Vec<bool>, String>>()?;
    if !separated.iter().any(|&s| s) {
        return Err("fixture pair is not separated by its probe quotient".into());
    }
    let x = PairVars::constant(pair.left.len() + 1, Complex64::new(pair.x[0], pair.x[1]));
    let y = PairVars::constant(pair.left.len() + 1, Complex64::new(pair.y[0], pair.y[1]));

    let grid = admissible_thetas(120);
    if grid.len() < 20 {
        return Err(format!("only {} admissible theta values", grid.len()));
    }
    let thetas: Vec<f64> = (0..20).map(|i| grid[i * grid.len() / 20]).collect();
    let conjugator = braid(&[2, -1, 2]);
    let mut min_gap = f64::INFINITY;
    let mut worst_conj: f64 = 0.0;
    for &th in &thetas {
        let rep = BurauSu2::new(th).map_err(|e| e.to_string())?;
        let img = |l: &[i32]| rep.image(&braid(l)).map_err(|e| e.to_string());
        if (img(&[1, 2, 1])? - img(&[2, 1, 2])?).norm() > 1e-10 {
            return Err(format!("braid relation fails at theta {th}"));
        }
        for l in [&[1][..], &[2], &[-1, 2, 2, -1]] {
            if !is_special_unitary(&img(l)?) {
                return Err(format!("image of {l:?} not in SU(2) at theta {th}"));
            }
        }
        let left = phi2_burau(&pair.left, th, &x, &y).map_err(|e| e.to_string())?;
        let right = phi2_burau(&pair.right, th, &x, &y).map_err(|e| e.to_string())?;
        let conj: Vec<BraidWord> = pair.left.iter().map(|w| w.conjugate_by(&conjugator).unwrap()).collect();
        let moved = phi2_burau(&conj, th, &x, &y).map_err(|e| e.to_string())?;
        worst_conj = worst_conj.max((moved - left).norm());
        min_gap = min_gap.min((left - right).norm());
    }
    if worst_conj > 1e-9 {
        return Err(format!("phi2_burau moved by {worst_conj:.2e} under conjugation"));
    }
    if min_gap <= 1e-6 {
        return Err(format!("fixture pair not distinguished (gap {min_gap:.2e})"));
    }
    Ok(format!("20 thetas; conjugation drift {worst_conj:.1e}; fixture gap >= {min_gap:.3e}"))
}

fn band(i: usize, j: usize) -> Vec<i32> {
    let mut w: Vec<i32> = (i + 1..j).rev().map(|k| k as i32).collect();
    w.push(i as i32);
    w.extend((i + 1..j).map(|k| -(k as i32)));
    w
}

fn splittable() -> Outcome {
    let mut bands = 0;
    for n in 2..=5 {
        for i in 1..n {
            for j in i + 1..=n {
                for sign in [1, -1] {
                    let letters: Vec<i32> = band(i, j).into_iter().map(|x| x * sign).collect();
                    let w = BraidWord::new(n, letters.clone()).unwrap();
                    match splittable_check(&w, None).map_err(|e| e.to_string())? {
                        SplittableVerdict::CertifiedYes(_) => bands += 1,
                        v => return Err(format!("band {letters:?} on {n} strands: {v:?}")),
                    }
                }
            }
        }
    }
    match splittable_check(&BraidWord::new(2, vec![1, 1]).unwrap(), None) {
        Ok(SplittableVerdict::InvariantFail(InvariantFailure::Linking { .. })) => {}
        other => return Err(format!("sigma_1^2: {other:?}")),
    }
    for w in [BraidWord::identity(3), BraidWord::new(3, vec![2, 1, -1, -2]).unwrap()] {
        if !matches!(splittable_check(&w, None), Err(BraidError::IdentityBraid)) {
            return Err(format!("identity {:?} not rejected", w.letters()));
        }
    }
    Ok(format!("{bands} band generators certified; Hopf pattern fails linking; identity rejected"))
}

fn pure_generator(n: usize, rng: &mut ChaCha8Rng) -> Vec<i32> {
    let i = rng.random_range(1..n);
    let j = rng.random_range(i + 1..=n);
    let sign = if rng.random::<bool>() { 1 } else { -1 };
    let b = band(i, j);
    let mut w: Vec<i32> = b.iter().map(|x| x * sign).collect();
    w.extend(b.iter().map(|x| x * sign));
    w
}

fn random_problem(rng: &mut ChaCha8Rng) -> LiftProblem {
    loop {
        let n = rng.random_range(2..=4);
        let g = grp(&format!("S{n}"));
        let genus = rng.random_range(0..=2);
        let m = rng.random_range(1..=3);
        let mut entries: Vec<usize> = (0..2 * genus).map(|_| rng.random_range(0..g.order())).collect();
        entries.extend((0..m - 1).map(|_| rng.random_range(1..g.order())));
        let mut prefix = g.identity();
        for i in 0..genus {
            prefix = g.mul(prefix, g.commutator(entries[2 * i], entries[2 * i + 1]));
        }
        for &c in &entries[2 * genus..] {
            prefix = g.mul(prefix, c);
        }
        let last = g.inv(prefix);
        if last == g.identity() || entries[2 * genus..].contains(&g.identity()) {
            continue;
        }
        entries.push(last);
        let perms = g.permutations().unwrap();
        let targets = entries[2 * genus..]
            .iter()
            .map(|&c| {
                let mut letters = BraidWord::section(&perms[c]).letters().to_vec();
                for _ in 0..rng.random_range(0..3) {
                    letters.extend(pure_generator(n, rng));
                }
                PeripheralTarget::Word(BraidWord::new(n, letters).unwrap())
            })
            .collect();
        let t = SurfaceMonodromy::from_flat(g, genus, entries).unwrap();
        return LiftProblem::new(t, targets, LiftLevel::Bn1);
    }
}

fn stabilization_probe() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0011);
    let problems: Vec<LiftProblem> = (0..1000).map(|_| random_problem(&mut rng)).collect();
    let reports: Vec<_> = problems.par_iter().map(obstruction_report).collect();
    let mut solvable = 0;
    for (p, r) in problems.iter().zip(reports) {
        let r = r.map_err(|e| format!("{:?}: {e}", p.monodromy.entries()))?;
        if !r.violations.is_empty() {
            return Err(format!("{:?}: {:?}", p.monodromy.entries(), r.violations));
        }
        solvable += r.solvable as usize;
    }
    Ok(format!("1000 problems, {solvable} solvable, 0 violations"))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "Frobenius count oracle", limit: Duration::from_secs(30), run: frobenius },
        Criterion { id: 2, name: "lift universality", limit: Duration::from_secs(120), run: lift_universality },
        Criterion { id: 3, name: "Schur invariant suite", limit: Duration::from_secs(120), run: schur_suite },
        Criterion { id: 4, name: "Dunfield-Thurston desk check", limit: Duration::from_secs(600), run: dunfield_thurston },
        Criterion { id: 5, name: "elementary/thickness consistency", limit: Duration::from_secs(600), run: thickness_consistency },
        Criterion { id: 6, name: "spherical separation", limit: Duration::from_secs(300), run: spherical_separation },
        Criterion { id: 7, name: "Wielandt identity", limit: Duration::from_secs(120), run: wielandt },
        Criterion { id: 8, name: "Neretin determinant vs series", limit: Duration::from_secs(60), run: neretin },
        Criterion { id: 9, name: "Burau/SU(2) contract", limit: Duration::from_secs(60), run: burau_contract },
        Criterion { id: 10, name: "splittable filter", limit: Duration::from_secs(1), run: splittable },
        Criterion { id: 11, name: "stabilization probe", limit: Duration::from_secs(300), run: stabilization_probe },
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for c in criteria.iter().filter(|c| only.is_none_or(|id| id == c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; exceeded {:?}", c.limit)),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} {}: PASS ({:.1}s) {detail}", c.id, c.name, elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {}: FAIL ({:.1}s) {detail}", c.id, c.name, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
