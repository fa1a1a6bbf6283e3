use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::config::*;
use super::run::{read_json, run_job, write_record, CliError, EXIT_ERROR};
use crate::braid::BraidWord;
use crate::spherical::PerpConvention;
use crate::surface::ElementRef;

#[derive(Debug, Parser)]
#[command(name = "braidsurf", version, about = "Monodromies of braided surfaces")]
pub struct Cli {
    /// Job file; supersedes the subcommand and its flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the result record here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Node budget (orbit states or lift candidates).
    #[arg(long, global = true)]
    pub nodes: Option<u64>,
    /// Word-length budget for bounded lifts.
    #[arg(long, global = true)]
    pub length: Option<usize>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

fn parse_ref(s: &str) -> ElementRef {
    s.trim()
        .parse()
        .map(ElementRef::Index)
        .unwrap_or_else(|_| ElementRef::Label(s.trim().to_string()))
}

fn parse_refs(s: &str) -> Vec<ElementRef> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    s.split(',').map(parse_ref).collect()
}

fn parse_convention(s: &str) -> Result<PerpConvention, String> {
    match s {
        "transpose" => Ok(PerpConvention::Transpose),
        "contragredient" => Ok(PerpConvention::Contragredient),
        _ => Err(format!("unknown convention {s:?}")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count (or list) monodromy tuples.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long = "g")]
        g: usize,
        #[arg(long = "m", default_value_t = 0)]
        m: usize,
        /// Comma-separated class representatives, one per puncture.
        #[arg(long)]
        classes: Option<String>,
        #[arg(long)]
        surjective: bool,
        #[arg(long)]
        transitive: bool,
        #[arg(long)]
        list: bool,
    },
    /// Mapping-class-group orbits.
    Orbits {
        #[arg(long)]
        monodromy: Option<PathBuf>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "g")]
        g: Option<usize>,
        #[arg(long = "m", default_value_t = 0)]
        m: usize,
        #[arg(long)]
        classes: Option<String>,
        #[arg(long)]
        surjective: bool,
        /// Also quotient by automorphisms of the target group.
        #[arg(long = "aut")]
        automorphisms: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Lifting invariants over stem extensions.
    Schur {
        #[arg(long)]
        monodromy: PathBuf,
        #[arg(long, default_value = "auto")]
        cover: String,
    },
    /// Lifts to the braid group.
    Lift {
        #[arg(long)]
        monodromy: PathBuf,
        #[arg(long, default_value = "bn1")]
        level: String,
        #[arg(long)]
        peripheral: Option<PathBuf>,
    },
    /// Spherical functions of finite groups.
    Spherical {
        #[command(subcommand)]
        action: SphericalCommand,
    },
    /// Neretin determinant of Burau images.
    Neretin {
        #[arg(long)]
        braids: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, value_parser = parse_convention, default_value = "transpose")]
        convention: PerpConvention,
        #[arg(long)]
        series_spin: Option<f64>,
    },
    /// Image of a braid in a finite quotient.
    Probe {
        #[arg(long = "n")]
        n: usize,
        /// Comma-separated letters, e.g. `1,-2,1`.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        word: String,
        #[arg(long, default_value = "sym")]
        quotient: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SphericalCommand {
    Separate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    Wielandt {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
    },
    Irreps {
        #[arg(long)]
        group: String,
    },
    Frobenius {
        #[arg(long)]
        group: String,
        #[arg(long = "g")]
        g: usize,
    },
}

fn job_from(cmd: Command) -> Result<Job, CliError> {
    Ok(match cmd {
        Command::Enumerate {
            group,
            g,
            m,
            classes,
            surjective,
            transitive,
            list,
        } => Job::Enumerate(EnumerateParams {
            group,
            g,
            m,
            classes: classes.as_deref().map(parse_refs),
            surjective,
            transitive,
            list,
        }),
        Command::Orbits {
            monodromy,
            group,
            g,
            m,
            classes,
            surjective,
            automorphisms,
            cache_dir,
        } => Job::Orbits(OrbitsParams {
            monodromy,
            group,
            g,
            m,
            classes: classes.as_deref().map(parse_refs),
            surjective,
            automorphisms,
            cache_dir,
        }),
        Command::Schur { monodromy, cover } => Job::Schur(SchurParams { monodromy, cover }),
        Command::Lift {
            monodromy,
            level,
            peripheral,
        } => Job::Lift(LiftParams {
            monodromy,
            level,
            peripheral,
        }),
        Command::Spherical { action } => Job::Spherical(match action {
            SphericalCommand::Separate { group, k, x, y } => SphericalParams {
                action: SphericalAction::Separate,
                group,
                k,
                g: None,
                x: parse_refs(&x),
                y: parse_refs(&y),
            },
            SphericalCommand::Wielandt { group, k } => SphericalParams {
                action: SphericalAction::Wielandt,
                group,
                k: Some(k),
                g: None,
                x: Vec::new(),
                y: Vec::new(),
            },
            SphericalCommand::Irreps { group } => SphericalParams {
                action: SphericalAction::Irreps,
                group,
                k: None,
                g: None,
                x: Vec::new(),
                y: Vec::new(),
            },
            SphericalCommand::Frobenius { group, g } => SphericalParams {
                action: SphericalAction::Frobenius,
                group,
                k: None,
                g: Some(g),
                x: Vec::new(),
                y: Vec::new(),
            },
        }),
        Command::Neretin {
            braids,
            theta,
            x,
            y,
            convention,
            series_spin,
        } => Job::Neretin(NeretinParams {
            braids,
            theta,
            x,
            y,
            convention,
            series_spin,
        }),
        Command::Probe { n, word, quotient } => {
            let letters = if word.trim().is_empty() {
                Vec::new()
            } else {
                word.split(',')
                    .map(|l| l.trim().parse::<i32>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError::Config(format!("bad braid word {word:?}: {e}")))?
            };
            Job::Probe(ProbeParams {
                braid: BraidWord::new(n, letters)?,
                quotient,
            })
        }
    })
}

/// Builds the job: from `--config` when given, else from the subcommand.
pub fn job_config(cli: Cli) -> Result<JobConfig, CliError> {
    if let Some(path) = &cli.config {
        let mut cfg: JobConfig = read_json(path)?;
        if cfg.output.is_none() {
            cfg.output = cli.output;
        }
        return Ok(cfg);
    }
    let cmd = cli
        .command
        .ok_or_else(|| CliError::Config("no subcommand and no --config".into()))?;
    Ok(JobConfig {
        job: job_from(cmd)?,
        seed: cli.seed,
        budgets: Budgets {
            nodes: cli.nodes,
            length: cli.length,
        },
        output: cli.output,
    })
}

/// Parses arguments, runs the job and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = job_config(cli).and_then(|cfg| {
        eprintln!("braidsurf: running {}", cfg.job.name());
        let record = run_job(&cfg)?;
        write_record(&record, cfg.output.as_deref())?;
        Ok(record.exit_code())
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("braidsurf: error: {e}");
            EXIT_ERROR
        }
    }
}
