//! Argument handling for the `glq` binary.

use clap::{Parser, Subcommand};
use glq_core::bessel::Domain;
use glq_core::harness::commands::{parse_elems, verdict_table};
use glq_core::harness::{
    cmd_bessel, cmd_gamma, cmd_kloosterman, cmd_reps, cmd_table, cmd_verify, parse_scope, Format, RunConfig, Selector,
};
use glq_core::gamma::registry;
use glq_core::Error;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "glq", version, about = "Characters, Bessel functions and gamma factors of GL_n(F_q)")]
pub struct Cli {
    /// Field size (a prime power)
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Rank of the first group
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Rank of the second group (gamma)
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Additive character ψ_a(x) = ψ(ax)
    #[arg(long = "psi-a", global = true, default_value_t = 1)]
    pub psi_a: u32,
    /// csv, json or text
    #[arg(long, global = true, default_value = "text")]
    pub format: String,
    #[arg(long = "cache-dir", env = "GLQ_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for verification
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Override the pass threshold of verification
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Character table of GL_n(F_q)
    Table,
    /// Irreducible representations with genericity, cuspidality and support
    Reps,
    /// Bessel function values
    Bessel {
        #[arg(long, default_value = "generic")]
        irreps: String,
        /// two_block, three_block or full
        #[arg(long, default_value = "two_block")]
        domain: String,
    },
    /// γ_ψ(π×σ) for π of GL_n and σ of GL_m
    Gamma {
        #[arg(long, default_value = "generic")]
        pi: String,
        #[arg(long, default_value = "generic")]
        sigma: String,
    },
    /// Run theorem checks; exits 2 if any fails
    Verify {
        /// Theorem ids or aliases, or "all"
        ids: Vec<String>,
        /// Scope as n:q pairs, e.g. 2:3,3:2
        #[arg(long)]
        scope: Option<String>,
        /// List the registry and exit
        #[arg(long)]
        list: bool,
    },
    /// Exotic Kloosterman sums J_π(0 I; c 0) beside direct Bessel values
    Kloosterman {
        #[arg(long, default_value = "generic")]
        irreps: String,
        /// all, a list 1,2 or a range 1..4
        #[arg(long, default_value = "all")]
        c: String,
    },
}

fn need<T: Copy>(v: Option<T>, flag: &str, cmd: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Config(format!("{cmd} needs --{flag}")))
}

fn config(cli: &Cli, cmd: &str) -> Result<RunConfig, Error> {
    let q = need(cli.q, "q", cmd)?;
    let n = need(cli.n, "n", cmd)?;
    let cfg = RunConfig {
        q,
        n,
        m: cli.m,
        psi_a: cli.psi_a,
        format: cli.format.parse()?,
        cache_dir: cli.cache_dir.clone(),
        jobs: cli.jobs,
        tolerance: cli.tolerance,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let io = |e: std::io::Error| Error::Config(e.to_string());
    let format: Format = cli.format.parse()?;
    let table = match &cli.command {
        Command::Table => cmd_table(&config(cli, "table")?)?,
        Command::Reps => cmd_reps(&config(cli, "reps")?)?,
        Command::Bessel { irreps, domain } => {
            let d: Domain = domain.parse()?;
            cmd_bessel(&config(cli, "bessel")?, &irreps.parse()?, d)?
        }
        Command::Gamma { pi, sigma } => {
            need(cli.m, "m", "gamma")?;
            cmd_gamma(&config(cli, "gamma")?, &pi.parse()?, &sigma.parse()?)?
        }
        Command::Kloosterman { irreps, c } => {
            let cfg = config(cli, "kloosterman")?;
            let cs = parse_elems(c, cfg.q)?;
            cmd_kloosterman(&cfg, &irreps.parse::<Selector>()?, &cs)?
        }
        Command::Verify { ids, scope, list } => {
            if *list {
                for t in registry() {
                    writeln!(out, "{:<26} {}", t.id, t.statement).map_err(io)?;
                }
                return Ok(EXIT_OK);
            }
            let pairs = match (scope, cli.q, cli.n) {
                (Some(s), _, _) => parse_scope(s)?,
                (None, Some(q), Some(n)) => parse_scope(&format!("{n}:{q}"))?,
                (None, None, None) => Vec::new(),
                _ => return Err(Error::Config("give both --q and --n, or --scope".into())),
            };
            let mut cfg = RunConfig::new(2, 1);
            cfg.psi_a = cli.psi_a;
            cfg.cache_dir = cli.cache_dir.clone();
            cfg.jobs = cli.jobs;
            cfg.tolerance = cli.tolerance;
            cfg.format = format;
            if let Some(t) = cli.tolerance {
                if !(t > 0.0 && t < 1.0) {
                    return Err(Error::Config(format!("--tolerance {t} must lie in (0, 1)")));
                }
            }
            let reports = cmd_verify(ids, &pairs, &cfg)?;
            for r in &reports {
                writeln!(err, "{} {} ms", r.theorem, r.wall_ms).map_err(io)?;
            }
            match format {
                Format::Text => {
                    for r in &reports {
                        writeln!(out, "{r}").map_err(io)?;
                    }
                }
                Format::Json => {
                    let s = serde_json::to_string_pretty(&reports).map_err(|e| Error::Config(e.to_string()))?;
                    writeln!(out, "{s}").map_err(io)?;
                }
                Format::Csv => write!(out, "{}", verdict_table(&reports).render(Format::Csv)?).map_err(io)?,
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                writeln!(err, "{failed} of {} checks failed", reports.len()).map_err(io)?;
                return Ok(EXIT_VERIFY_FAILED);
            }
            return Ok(EXIT_OK);
        }
    };
    write!(out, "{}", table.render(format)?).map_err(io)?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
