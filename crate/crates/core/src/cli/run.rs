use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cache::{cache_dir_from_env, cache_key, read_cache, write_cache};
use super::config::*;
use crate::braid::{burau_su2, quotient_probe, BraidWord, QuotientSpec};
use crate::homology::{
    builtin_extensions, is_null_homologous, lifting_invariant, relative_class, shipped_cover, PeripheralLifts,
    StemExtension, StemExtensionFile,
};
use crate::lifting::{
    lift_to_bn1, lift_to_bn_bounded, obstruction_report, BoundedOptions, LiftError, LiftLevel, LiftProblem,
    PeripheralTarget,
};
use crate::perm::{automorphisms, group_from_spec, FiniteGroup, PermError};
use crate::spherical::{
    frobenius_count, neretin_phi2_with, neretin_series, numeric_irreps_with, same_double_coset, separate_cosets,
    wielandt_check, IrrepOptions, PairVars, SU2Element, SEPARATION_TOL,
};
use crate::surface::{
    canonical_entries, count, enumerate, mcg_moves, move_set_fingerprint, orbit, partition_into_orbits_by,
    Constraints, ElementRef, MonodromyFile, OrbitOptions, OrbitSummary, SurfaceError, SurfaceMonodromy,
    DEFAULT_BUDGET,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read {path}: {reason}")]
    Input { path: PathBuf, reason: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Homology(#[from] crate::homology::HomologyError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Spherical(#[from] crate::spherical::SphericalError),
    #[error(transparent)]
    Braid(#[from] crate::braid::BraidError),
    #[error(transparent)]
    Group(#[from] PermError),
    #[error("cannot write output: {0}")]
    Output(String),
}

/// Everything needed to reproduce a run, plus its payload.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultRecord {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: JobConfig,
    pub fingerprints: BTreeMap<String, String>,
    pub tolerances: BTreeMap<String, f64>,
    /// A budget stopped the computation; the payload is incomplete.
    pub partial: bool,
    pub notes: Vec<String>,
    pub payload: Value,
    pub wall_clock_seconds: f64,
}

impl ResultRecord {
    /// 0 for complete results, 2 for partial ones.
    pub fn exit_code(&self) -> i32 {
        if self.partial {
            2
        } else {
            0
        }
    }
}

/// Exit code for a failed job.
pub const EXIT_ERROR: i32 = 1;

pub(crate) fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let err = |reason: String| CliError::Input {
        path: path.to_path_buf(),
        reason,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| err(e.to_string()))
}

fn load_group(spec: &str) -> Result<Arc<FiniteGroup>, CliError> {
    Ok(Arc::new(group_from_spec(spec)?))
}

fn resolve_ref(g: &FiniteGroup, r: &ElementRef) -> Result<usize, CliError> {
    match r {
        ElementRef::Index(i) if *i < g.order() => Ok(*i),
        ElementRef::Index(i) => Err(CliError::Config(format!("element index {i} out of range for {}", g.name()))),
        ElementRef::Label(l) => g
            .element_by_label(l)
            .ok_or_else(|| CliError::Config(format!("unknown element {l:?} of {}", g.name()))),
    }
}

fn resolve_refs(g: &FiniteGroup, rs: &[ElementRef]) -> Result<Vec<usize>, CliError> {
    rs.iter().map(|r| resolve_ref(g, r)).collect()
}

fn constraints(
    g: &FiniteGroup,
    m: usize,
    classes: &Option<Vec<ElementRef>>,
    surjective: bool,
    transitive: bool,
) -> Result<Constraints, CliError> {
    let peripheral_classes = match classes {
        Some(cs) if cs.len() != m => {
            return Err(CliError::Config(format!("{} classes for {m} punctures", cs.len())));
        }
        Some(cs) => Some(resolve_refs(g, cs)?),
        None => None,
    };
    if transitive && g.permutations().is_none() {
        return Err(CliError::Config("transitivity needs a permutation group".into()));
    }
    Ok(Constraints {
        peripheral_classes,
        surjective,
        transitive,
    })
}

fn load_monodromy(path: &Path) -> Result<SurfaceMonodromy, CliError> {
    let file: MonodromyFile = read_json(path)?;
    let t = file.resolve()?;
    if !t.validate() {
        return Err(SurfaceError::InvalidMonodromy.into());
    }
    Ok(t)
}

enum OrbitInput {
    Single(SurfaceMonodromy),
    Shape {
        group: Arc<FiniteGroup>,
        g: usize,
        m: usize,
        constraints: Constraints,
    },
}

/// A job whose inputs have all been read and validated.
enum Prepared {
    Enumerate {
        group: Arc<FiniteGroup>,
        params: EnumerateParams,
        constraints: Constraints,
    },
    Orbits {
        input: OrbitInput,
        automorphisms: bool,
        cache_dir: Option<PathBuf>,
    },
    Schur {
        t: SurfaceMonodromy,
        covers: Vec<StemExtension>,
    },
    Lift {
        problem: LiftProblem,
    },
    Spherical {
        group: Arc<FiniteGroup>,
        params: SphericalParams,
        x: Vec<usize>,
        y: Vec<usize>,
    },
    Neretin {
        words: Vec<BraidWord>,
        params: NeretinParams,
    },
    Probe {
        word: BraidWord,
        spec: QuotientSpec,
    },
}

fn prepare(cfg: &JobConfig) -> Result<Prepared, CliError> {
    Ok(match &cfg.job {
        Job::Enumerate(p) => {
            let group = load_group(&p.group)?;
            let constraints = constraints(&group, p.m, &p.classes, p.surjective, p.transitive)?;
            Prepared::Enumerate {
                group,
                params: p.clone(),
                constraints,
            }
        }
        Job::Orbits(p) => {
            let input = match (&p.monodromy, &p.group, p.g) {
                (Some(path), None, None) => OrbitInput::Single(load_monodromy(path)?),
                (None, Some(name), Some(g)) => {
                    let group = load_group(name)?;
                    let constraints = constraints(&group, p.m, &p.classes, p.surjective, false)?;
                    OrbitInput::Shape {
                        group,
                        g,
                        m: p.m,
                        constraints,
                    }
                }
                _ => {
                    return Err(CliError::Config(
                        "orbits needs either a monodromy file or a group and genus".into(),
                    ))
                }
            };
            Prepared::Orbits {
                input,
                automorphisms: p.automorphisms,
                cache_dir: p.cache_dir.clone().or_else(cache_dir_from_env),
            }
        }
        Job::Schur(p) => {
            let t = load_monodromy(&p.monodromy)?;
            let base = t.group().clone();
            let covers = match p.cover.as_str() {
                "auto" => builtin_extensions(&base)?,
                name if name.ends_with(".json") => {
                    let file: StemExtensionFile = read_json(Path::new(name))?;
                    vec![file.resolve(base)?]
                }
                name => vec![shipped_cover(name, &base)?],
            };
            Prepared::Schur { t, covers }
        }
        Job::Lift(p) => {
            let t = load_monodromy(&p.monodromy)?;
            let level = LiftLevel::from_str(&p.level)?;
            let peripheral: Vec<PeripheralTarget> = match &p.peripheral {
                Some(path) => read_json(path)?,
                None if t.punctures() == 0 => Vec::new(),
                None => return Err(CliError::Config("punctured monodromies need peripheral targets".into())),
            };
            let problem = LiftProblem::new(t, peripheral, level);
            problem.peripheral_elements()?;
            Prepared::Lift { problem }
        }
        Job::Spherical(p) => {
            let group = load_group(&p.group)?;
            let x = resolve_refs(&group, &p.x)?;
            let y = resolve_refs(&group, &p.y)?;
            match p.action {
                SphericalAction::Separate => {
                    if x.is_empty() || x.len() != y.len() || p.k.is_some_and(|k| k != x.len()) {
                        return Err(CliError::Config("separate needs two tuples of the same length k".into()));
                    }
                }
                SphericalAction::Wielandt if p.k.is_none() => {
                    return Err(CliError::Config("wielandt needs k".into()));
                }
                SphericalAction::Frobenius if p.g.is_none() => {
                    return Err(CliError::Config("frobenius needs a genus g".into()));
                }
                _ => {}
            }
            Prepared::Spherical {
                group,
                params: p.clone(),
                x,
                y,
            }
        }
        Job::Neretin(p) => {
            let words: Vec<BraidWord> = read_json(&p.braids)?;
            if words.is_empty() || words.iter().any(|w| w.strands() != 3) {
                return Err(CliError::Config("neretin needs a non-empty list of 3-strand braids".into()));
            }
            if let Some(s) = p.series_spin {
                crate::spherical::twice_spins(&[s])?;
            }
            Prepared::Neretin {
                words,
                params: p.clone(),
            }
        }
        Job::Probe(p) => Prepared::Probe {
            word: p.braid.clone(),
            spec: QuotientSpec::from_str(&p.quotient)?,
        },
    })
}

struct Outcome {
    payload: Value,
    partial: bool,
    fingerprints: BTreeMap<String, String>,
    tolerances: BTreeMap<String, f64>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(payload: Value) -> Self {
        Outcome {
            payload,
            partial: false,
            fingerprints: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn group(mut self, g: &FiniteGroup) -> Self {
        self.fingerprints.insert("group".into(), g.fingerprint());
        self
    }
}

fn labels(g: &FiniteGroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

fn orbit_with_cache(
    t: &SurfaceMonodromy,
    opts: &OrbitOptions,
    dir: Option<&Path>,
    notes: &mut Vec<String>,
) -> Result<OrbitSummary, SurfaceError> {
    let Some(dir) = dir else {
        return orbit(t, opts);
    };
    let gfp = t.group().fingerprint();
    let mfp = move_set_fingerprint(&mcg_moves(t.genus(), t.punctures()));
    let start = canonical_entries(t.group(), t.entries());
    let path = dir.join(cache_key(&gfp, &mfp, opts.automorphisms.is_some(), &start));
    if path.exists() {
        match read_cache(&path, &gfp, &mfp) {
            Ok(s) if s.complete && (s.with_automorphisms || s.contains_canonical(&start)) => {
                notes.push(format!("cache hit {}", path.display()));
                return Ok(s);
            }
            Ok(_) => notes.push(format!("cache {} ignored: incomplete", path.display())),
            Err(e) => notes.push(format!("cache {} rejected: {e}", path.display())),
        }
    }
    let s = orbit(t, opts)?;
    if s.complete {
        if let Err(e) = write_cache(&s, &path) {
            notes.push(format!("cache write failed: {e}"));
        }
    }
    Ok(s)
}

fn orbit_brief(g: &FiniteGroup, s: &OrbitSummary) -> Value {
    json!({
        "size": s.size,
        "complete": s.complete,
        "representative": s.representatives.first().map(|r| labels(g, r)),
    })
}

fn execute(cfg: &JobConfig, prepared: Prepared) -> Result<Outcome, CliError> {
    let nodes = cfg.budgets.nodes;
    match prepared {
        Prepared::Enumerate {
            group,
            params,
            constraints,
        } => {
            let payload = if params.list {
                let (tuples, counts) = enumerate(&group, params.g, params.m, &constraints)?;
                let list: Vec<Vec<String>> = tuples.iter().map(|t| labels(&group, t.entries())).collect();
                json!({"count": counts.raw, "conjugacy_classes": counts.conjugacy_classes, "tuples": list})
            } else {
                let counts = count(&group, params.g, params.m, &constraints)?;
                json!({"count": counts.raw, "conjugacy_classes": counts.conjugacy_classes})
            };
            Ok(Outcome::new(payload).group(&group))
        }
        Prepared::Orbits {
            input,
            automorphisms: with_aut,
            cache_dir,
        } => {
            let (group, tuples) = match input {
                OrbitInput::Single(t) => (t.group().clone(), vec![t]),
                OrbitInput::Shape {
                    group,
                    g,
                    m,
                    constraints,
                } => {
                    let (ts, _) = enumerate(&group, g, m, &constraints)?;
                    (group, ts)
                }
            };
            let opts = OrbitOptions {
                budget: nodes.map_or(DEFAULT_BUDGET, |n| n as usize),
                automorphisms: with_aut.then(|| automorphisms(&group)),
            };
            let mut notes = Vec::new();
            let orbits =
                partition_into_orbits_by(&tuples, &opts, |t| orbit_with_cache(t, &opts, cache_dir.as_deref(), &mut notes))?;
            let partial = orbits.iter().any(|o| !o.complete);
            let mut out = Outcome::new(json!({
                "tuples": tuples.len(),
                "orbit_count": orbits.len(),
                "orbits": orbits.iter().map(|o| orbit_brief(&group, o)).collect::<Vec<_>>(),
                "moves": orbits.first().map(|o| o.moves.clone()),
                "moves_generate": orbits.first().map(|o| o.moves_generate),
                "with_automorphisms": with_aut,
                "convention": orbits.first().map(|o| o.convention.clone()),
            }))
            .group(&group);
            if let Some(o) = orbits.first() {
                out.fingerprints.insert("move_set".into(), o.move_fingerprint.clone());
            }
            out.partial = partial;
            out.notes = notes;
            Ok(out)
        }
        Prepared::Schur { t, covers } => {
            let mut results = Vec::new();
            let mut fps = BTreeMap::new();
            for ext in &covers {
                let lifts = PeripheralLifts::canonical(ext);
                let inv = lifting_invariant(&t, ext, &lifts)?;
                let relative = if t.punctures() > 0 {
                    Some(relative_class(&t, ext, &lifts)?)
                } else {
                    None
                };
                fps.insert(format!("cover:{}", ext.name()), ext.total().fingerprint());
                results.push(json!({
                    "cover": ext.name(),
                    "total_group": ext.total().name(),
                    "kernel": labels(ext.total(), ext.kernel()),
                    "invariant": ext.total().label(inv),
                    "invariant_index": inv,
                    "vanishes": inv == ext.total().identity(),
                    "relative": relative,
                }));
            }
            let null_homologous = if t.punctures() == 0 {
                Some(is_null_homologous(&t)?)
            } else {
                None
            };
            let mut out = Outcome::new(json!({"covers": results, "null_homologous": null_homologous})).group(t.group());
            out.fingerprints.extend(fps);
            Ok(out)
        }
        Prepared::Lift { problem } => match problem.level {
            LiftLevel::Bn1 => {
                let report = obstruction_report(&problem)?;
                let lift = match lift_to_bn1(&problem) {
                    Ok(l) => Some(l),
                    Err(LiftError::NoSolution) => None,
                    Err(e) => return Err(e.into()),
                };
                Ok(Outcome::new(json!({"level": "bn1", "report": report, "lift": lift})).group(problem.monodromy.group()))
            }
            LiftLevel::BnBounded { len_max } => {
                let opts = BoundedOptions {
                    len_max: cfg.budgets.length.unwrap_or(len_max),
                    node_budget: nodes.unwrap_or(BoundedOptions::default().node_budget),
                };
                let mut out = match lift_to_bn_bounded(&problem, &opts) {
                    Ok(l) => Outcome::new(json!({"level": "bn", "found": true, "lift": l, "options": opts})),
                    Err(LiftError::NotFoundWithinBound { explored, exhausted }) => {
                        let mut o = Outcome::new(json!({
                            "level": "bn", "found": false, "explored": explored,
                            "exhausted": exhausted, "options": opts,
                        }));
                        o.partial = !exhausted;
                        o
                    }
                    Err(e) => return Err(e.into()),
                };
                out.fingerprints
                    .insert("group".into(), problem.monodromy.group().fingerprint());
                out.tolerances.insert("burau_numeric".into(), 1e-9);
                Ok(out)
            }
        },
        Prepared::Spherical { group, params, x, y } => {
            let mut out = match params.action {
                SphericalAction::Separate => {
                    let s = separate_cosets(&group, &x, &y)?;
                    Outcome::new(json!({
                        "x": labels(&group, &x), "y": labels(&group, &y),
                        "separation": s, "same_double_coset": same_double_coset(&group, &x, &y),
                    }))
                }
                SphericalAction::Wielandt => {
                    let k = params.k.unwrap_or(1);
                    let w = wielandt_check(&group, k)?;
                    Outcome::new(json!({"k": k, "counts": w, "equal": w.orbits == w.sum_m_squared}))
                }
                SphericalAction::Irreps => {
                    let opts = IrrepOptions {
                        seed: cfg.seed.unwrap_or(IrrepOptions::default().seed),
                        ..Default::default()
                    };
                    let reps = numeric_irreps_with(&group, &opts)?;
                    let chars: Vec<Vec<[f64; 2]>> = reps
                        .iter()
                        .map(|r| r.character().iter().map(|c| [c.re, c.im]).collect())
                        .collect();
                    Outcome::new(json!({
                        "dims": reps.iter().map(|r| r.dim).collect::<Vec<_>>(),
                        "characters": chars,
                        "seed": opts.seed,
                    }))
                }
                SphericalAction::Frobenius => {
                    let g = params.g.unwrap_or(1);
                    let f = frobenius_count(&group, g)?;
                    let e = count(&group, g, 0, &Constraints::default())?.raw;
                    Outcome::new(json!({"g": g, "frobenius": f, "enumerated": e, "equal": f == u128::from(e)}))
                }
            };
            out.tolerances.insert("linear_algebra".into(), 1e-8);
            out.tolerances.insert("separation".into(), SEPARATION_TOL);
            out.tolerances.insert("rounding_guard".into(), 0.01);
            Ok(out.group(&group))
        }
        Prepared::Neretin { words, params } => {
            let mut a = vec![SU2Element::identity()];
            for w in &words {
                a.push(SU2Element::new(burau_su2(w, params.theta)?)?);
            }
            let k = a.len();
            let x = PairVars::constant(k, params.x.into());
            let y = PairVars::constant(k, params.y.into());
            let phi2 = neretin_phi2_with(&a, &x, &y, params.convention)?;
            let series = match params.series_spin {
                Some(s) => {
                    let v = neretin_series(&a, &x, &y, s)?;
                    Some(json!({"max_spin": s, "phi": [v.re, v.im], "phi_squared_difference": (v * v - phi2).norm()}))
                }
                None => None,
            };
            let mut out = Outcome::new(json!({
                "k": k,
                "theta": params.theta,
                "convention": params.convention,
                "phi2": [phi2.re, phi2.im],
                "series": series,
            }));
            out.tolerances.insert("su2".into(), 1e-10);
            out.tolerances.insert("conjugation_invariance".into(), 1e-9);
            out.tolerances.insert("series_truncation".into(), 1e-6);
            Ok(out)
        }
        Prepared::Probe { word, spec } => {
            let (idx, q) = quotient_probe(&word, &spec)?;
            Ok(Outcome::new(json!({
                "quotient": spec.to_string(),
                "element": idx,
                "label": q.label(idx),
                "order": q.order(),
            })))
        }
    }
}

/// Validates the whole configuration, then runs it.
pub fn run_job(cfg: &JobConfig) -> Result<ResultRecord, CliError> {
    let start = Instant::now();
    let prepared = prepare(cfg)?;
    let out = execute(cfg, prepared)?;
    Ok(ResultRecord {
        tool: "braidsurf".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cfg.job.name().into(),
        config: cfg.clone(),
        fingerprints: out.fingerprints,
        tolerances: out.tolerances,
        partial: out.partial,
        notes: out.notes,
        payload: out.payload,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Writes the record as pretty JSON to `path`, or to stdout.
pub fn write_record(record: &ResultRecord, path: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(record).map_err(|e| CliError::Output(e.to_string()))?;
    match path {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
