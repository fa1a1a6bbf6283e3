use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, Smith};
use super::{LiftError, LiftProblem};
use crate::braid::{ab_product, pairs, AbelianizedBraidElement};
use crate::perm::Permutation;

/// `A x = rhs` over `ℤ`; unknowns are the linking vectors of the handle lifts,
/// one block of `n(n−1)/2` per generator `a_1, b_1, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub matrix: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub variables: Vec<String>,
}

/// Handle lifts `(ã_1, b̃_1, …)` in `B_n^{(1)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bn1Lift {
    pub handles: Vec<AbelianizedBraidElement>,
}

fn commutator(x: &AbelianizedBraidElement, y: &AbelianizedBraidElement) -> Result<AbelianizedBraidElement, LiftError> {
    let xy = ab_product(x, y)?;
    let xyx = ab_product(&xy, &x.inverse()?)?;
    Ok(ab_product(&xyx, &y.inverse()?)?)
}

/// `∏[ã_i, b̃_i] · ∏ c̃_j` in `B_n^{(1)}`.
pub fn relator_product(
    handles: &[AbelianizedBraidElement],
    peripheral: &[AbelianizedBraidElement],
    n: usize,
) -> Result<AbelianizedBraidElement, LiftError> {
    let mut acc = AbelianizedBraidElement::identity(n);
    for pair in handles.chunks(2) {
        acc = ab_product(&acc, &commutator(&pair[0], &pair[1])?)?;
    }
    for c in peripheral {
        acc = ab_product(&acc, c)?;
    }
    Ok(acc)
}

fn handle_perms(p: &LiftProblem) -> Result<Vec<Permutation>, LiftError> {
    let perms = p.permutations()?;
    let t = &p.monodromy;
    Ok(t.entries()[..2 * t.genus()].iter().map(|&x| perms[x].clone()).collect())
}

fn with_vectors(perms: &[Permutation], x: &[i64], np: usize) -> Vec<AbelianizedBraidElement> {
    perms
        .iter()
        .enumerate()
        .map(|(k, s)| AbelianizedBraidElement {
            perm: s.clone(),
            lk: x[k * np..(k + 1) * np].to_vec(),
        })
        .collect()
}

/// Builds the affine system. The relator's linking part is affine in the
/// unknowns, so its columns are read off by evaluating at unit vectors.
pub fn linear_system(p: &LiftProblem) -> Result<LinearSystem, LiftError> {
    let n = p.strands()?;
    let np = n * (n - 1) / 2;
    let perms = handle_perms(p)?;
    let peripheral = p.peripheral_elements()?;
    let nv = perms.len() * np;
    let base = relator_product(&with_vectors(&perms, &vec![0; nv], np), &peripheral, n)?;
    if !base.perm.is_identity() {
        return Err(LiftError::Malformed("relator does not hold in S_n".into()));
    }
    let mut matrix = vec![vec![0i64; nv]; np];
    let mut x = vec![0i64; nv];
    for k in 0..nv {
        x[k] = 1;
        let v = relator_product(&with_vectors(&perms, &x, np), &peripheral, n)?;
        x[k] = 0;
        for r in 0..np {
            matrix[r][k] = v.lk[r] - base.lk[r];
        }
    }
    let names = pairs(n);
    let variables = (0..perms.len())
        .flat_map(|k| {
            let gen = format!("{}{}", if k % 2 == 0 { 'a' } else { 'b' }, k / 2 + 1);
            names.iter().map(move |(i, j)| format!("{gen}[{},{}]", i + 1, j + 1))
        })
        .collect();
    Ok(LinearSystem {
        matrix,
        rhs: base.lk.iter().map(|v| -v).collect(),
        variables,
    })
}

pub(crate) fn smith_of(sys: &LinearSystem) -> Smith {
    let a: Vec<Vec<i128>> = sys
        .matrix
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    smith_normal_form(&a, sys.variables.len())
}

/// Solves for handle lifts in `B_n^{(1)}` with the given peripheral targets.
pub fn lift_to_bn1(p: &LiftProblem) -> Result<Bn1Lift, LiftError> {
    let sys = linear_system(p)?;
    let n = p.strands()?;
    let np = n * (n - 1) / 2;
    let perms = handle_perms(p)?;
    let x: Vec<i64> = if sys.variables.is_empty() {
        if sys.rhs.iter().any(|&v| v != 0) {
            return Err(LiftError::NoSolution);
        }
        Vec::new()
    } else {
        let smith = smith_of(&sys);
        let b: Vec<i128> = sys.rhs.iter().map(|&v| v as i128).collect();
        let sol = smith.solve(&b).ok_or(LiftError::NoSolution)?;
        sol.into_iter()
            .map(|v| i64::try_from(v).map_err(|_| LiftError::Malformed("solution overflows i64".into())))
            .collect::<Result<_, _>>()?
    };
    let handles = with_vectors(&perms, &x, np);
    let check = relator_product(&handles, &p.peripheral_elements()?, n)?;
    if !check.is_identity() {
        return Err(LiftError::Malformed("solver returned a non-solution".into()));
    }
    Ok(Bn1Lift { handles })
}

/// Solvability report with the stabilization consistency clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub solvable: bool,
    pub invariant_factors: Vec<i64>,
    pub stabilized_solvable: bool,
    pub stabilized_invariant_factors: Vec<i64>,
    /// Empty unless solvability changed under one stabilization.
    pub violations: Vec<String>,
}

fn solvable(p: &LiftProblem) -> Result<(bool, Vec<i64>), LiftError> {
    let sys = linear_system(p)?;
    if sys.variables.is_empty() {
        return Ok((sys.rhs.iter().all(|&v| v == 0), Vec::new()));
    }
    let smith = smith_of(&sys);
    let b: Vec<i128> = sys.rhs.iter().map(|&v| v as i128).collect();
    let factors = smith.invariant_factors().into_iter().map(|v| v as i64).collect();
    Ok((smith.solve(&b).is_some(), factors))
}

pub fn obstruction_report(p: &LiftProblem) -> Result<ObstructionReport, LiftError> {
    let (ok, factors) = solvable(p)?;
    let stab = LiftProblem {
        monodromy: p.monodromy.stabilize(1),
        ..p.clone()
    };
    let (ok_s, factors_s) = solvable(&stab)?;
    let mut violations = Vec::new();
    if !ok && ok_s {
        violations.push("unsolvable problem became solvable after one stabilization".to_string());
    }
    if ok && !ok_s {
        violations.push("solvable problem became unsolvable after one stabilization".to_string());
    }
    Ok(ObstructionReport {
        solvable: ok,
        invariant_factors: factors,
        stabilized_solvable: ok_s,
        stabilized_invariant_factors: factors_s,
        violations,
    })
}
