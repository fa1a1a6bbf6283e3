//! Command-line front end: job configuration, result records and orbit caches.

mod args;
mod cache;
mod config;
mod run;

pub use args::{job_config, main_with_args, Cli, Command, SphericalCommand};
pub use cache::{
    cache_dir_from_env, cache_key, cache_roundtrip, read_cache, write_cache, write_cache_with_threshold, CacheError,
    CACHE_DIR_ENV, GZIP_THRESHOLD,
};
pub use config::{
    Budgets, EnumerateParams, Job, JobConfig, LiftParams, NeretinParams, OrbitsParams, ProbeParams, SchurParams,
    SphericalAction, SphericalParams,
};
pub use run::{run_job, write_record, CliError, ResultRecord, EXIT_ERROR};
