use clap::{Args, Parser, Subcommand, ValueEnum};
use sring::constructions::{cyclotomic, dual, generalized_wreath_lifted, tensor};
use sring::enumerate::{enumerate_with, sring_closure};
use sring::exec::Exec;
use sring::group::{generated_subgroup, Automorphism, DEFAULT_MAX_ORDER};
use sring::io;
use sring::repro::{repro, Instance};
use sring::schurity::{classify_e4cn, is_cyclotomic, is_normal, is_schurian};
use sring::{AbelianGroup, SRing};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "sring", version, about = "S-rings over finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Worker threads for parallel stages; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// Partition file.
    #[arg(long)]
    partition: PathBuf,
    /// Expected group literal, checked against the file.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the S-ring axioms and print the canonical partition.
    Validate(Input),
    /// Automorphism group as a base and generating set.
    Aut(Input),
    Schurian {
        #[command(flatten)]
        input: Input,
        /// Exit with status 1 when the S-ring is not schurian.
        #[arg(long)]
        expect_schurian: bool,
    },
    /// Decide cyclotomicity of a partition, or build cyc(K, G) from `--aut` images.
    Cyclotomic {
        #[arg(long, conflicts_with = "aut")]
        partition: Option<PathBuf>,
        #[arg(long)]
        group: Option<String>,
        /// Images of the canonical generators, `;`-separated element literals.
        #[arg(long)]
        aut: Vec<String>,
    },
    Normal(Input),
    Dual(Input),
    Tensor {
        /// Two partition files.
        #[arg(long, num_args = 2, required = true)]
        partition: Vec<PathBuf>,
    },
    /// Generalized wreath product from a partition of U and one of G into L-coset unions.
    Gwreath {
        /// Bottom then top partition file, both over the ambient group.
        #[arg(long, num_args = 2, required = true)]
        partition: Vec<PathBuf>,
        /// Generators of U, `;`-separated.
        #[arg(long)]
        upper: String,
        /// Generators of L, `;`-separated.
        #[arg(long)]
        lower: String,
    },
    /// Write the catalog of all S-rings over a group as JSON lines.
    Enumerate {
        #[arg(long)]
        group: String,
    },
    /// Coarsest S-ring refining an arbitrary partition.
    Closure(Input),
    Repro {
        instance: InstanceArg,
        #[arg(long)]
        p: Option<u64>,
    },
    Classify(Input),
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceArg {
    T2,
    T3,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(#[from] sring::Error),
    #[error("{path}: {msg}")]
    File { path: PathBuf, msg: String },
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> String {
        match self {
            CliError::Input(e) => {
                let d = format!("{e:?}");
                d.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
            }
            CliError::File { .. } => "File".into(),
            CliError::Violation(_) => "Violation".into(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Ctx {
    bound: usize,
    exec: Exec,
}

impl Ctx {
    fn read(&self, path: &PathBuf) -> CliResult<String> {
        std::fs::read_to_string(path).map_err(|e| CliError::File { path: path.clone(), msg: e.to_string() })
    }

    fn group(&self, lit: &str) -> CliResult<Arc<AbelianGroup>> {
        Ok(Arc::new(AbelianGroup::parse(lit, self.bound)?))
    }

    fn raw(&self, path: &PathBuf, group: Option<&str>) -> CliResult<(Arc<AbelianGroup>, Vec<Vec<usize>>)> {
        let (g, classes) = io::parse_partition(&self.read(path)?, self.bound)?;
        if let Some(lit) = group {
            if self.group(lit)?.factors() != g.factors() {
                return Err(sring::Error::MismatchedGroups.into());
            }
        }
        Ok((g, classes))
    }

    fn sring(&self, path: &PathBuf, group: Option<&str>) -> CliResult<SRing> {
        let (g, classes) = self.raw(path, group)?;
        Ok(SRing::validate(g, &classes)?)
    }

    fn input(&self, i: &Input) -> CliResult<SRing> {
        self.sring(&i.partition, i.group.as_deref())
    }
}

fn elements(g: &AbelianGroup, list: &str) -> CliResult<Vec<usize>> {
    Ok(list.split(';').filter(|s| !s.trim().is_empty()).map(|s| g.parse_element(s)).collect::<sring::Result<_>>()?)
}

/// The output text, plus a property violation to report after emitting it.
fn run(cli: &Cli, ctx: &Ctx) -> CliResult<(String, Option<String>)> {
    let mut violation = None;
    let json = match &cli.verb {
        Verb::Validate(i) => io::write_sring(&ctx.input(i)?),
        Verb::Aut(i) => io::to_json(&io::perm_group_json(&sring::autsearch::aut_sring(&ctx.input(i)?)?)),
        Verb::Schurian { input, expect_schurian } => {
            let a = ctx.input(input)?;
            let r = is_schurian(&a)?;
            if *expect_schurian && !r.schurian {
                violation = Some("S-ring is not schurian".to_string());
            }
            io::to_json(&io::schur_report_json(&a, &r))
        }
        Verb::Cyclotomic { partition: Some(p), group, .. } => {
            let (c, _) = is_cyclotomic(&ctx.sring(p, group.as_deref())?)?;
            format!("{{\"cyclotomic\":{c}}}")
        }
        Verb::Cyclotomic { partition: None, group, aut } => {
            let lit =
                group.as_deref().ok_or_else(|| sring::Error::Precondition("--group is required with --aut".into()))?;
            let g = ctx.group(lit)?;
            let gens = aut
                .iter()
                .map(|s| Ok(Automorphism::from_images(&g, &elements(&g, s)?)?))
                .collect::<CliResult<Vec<_>>>()?;
            io::write_sring(&cyclotomic(g, &gens)?)
        }
        Verb::Normal(i) => format!("{{\"normal\":{}}}", is_normal(&ctx.input(i)?)?),
        Verb::Dual(i) => io::write_sring(&dual(&ctx.input(i)?)),
        Verb::Tensor { partition } => {
            io::write_sring(&tensor(&ctx.sring(&partition[0], None)?, &ctx.sring(&partition[1], None)?))
        }
        Verb::Gwreath { partition, upper, lower } => {
            let (g, bottom) = ctx.raw(&partition[0], None)?;
            let (_, top) = ctx.raw(&partition[1], Some(&g.literal()))?;
            let u = generated_subgroup(&g, elements(&g, upper)?);
            let l = generated_subgroup(&g, elements(&g, lower)?);
            io::write_sring(&generalized_wreath_lifted(g, &u, &l, &bottom, &top)?)
        }
        Verb::Enumerate { group } => {
            let c = enumerate_with(&ctx.group(group)?, ctx.exec)?;
            let text = io::write_catalog(&c);
            text.strip_suffix('\n').unwrap_or(&text).to_string()
        }
        Verb::Closure(i) => {
            let (g, classes) = ctx.raw(&i.partition, i.group.as_deref())?;
            io::write_sring(&sring_closure(g, &classes)?)
        }
        Verb::Repro { instance, p } => {
            let (inst, default_p) = match instance {
                InstanceArg::T2 => (Instance::T2, 3),
                InstanceArg::T3 => (Instance::T3, 5),
            };
            io::to_json(&io::repro_json(&repro(inst, p.unwrap_or(default_p))?))
        }
        Verb::Classify(i) => {
            let a = ctx.input(i)?;
            io::to_json(&io::classification_json(a.group(), &classify_e4cn(&a)?))
        }
    };
    Ok((json, violation))
}

fn bound() -> usize {
    std::env::var("SRING_MAX_ORDER").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_ORDER)
}

fn exec(threads: Option<usize>) -> Exec {
    match threads {
        Some(1) => Exec::Sequential,
        #[cfg(feature = "parallel")]
        Some(n) => {
            // A second initialization only fails if a pool already exists.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Exec::Parallel
        }
        _ => Exec::default(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { bound: bound(), exec: exec(cli.threads) };
    let result = run(&cli, &ctx).and_then(|(text, violation)| {
        match &cli.out {
            Some(path) => std::fs::write(path, text + "\n")
                .map_err(|e| CliError::File { path: path.clone(), msg: e.to_string() })?,
            None => println!("{text}"),
        }
        violation.map_or(Ok(()), |v| Err(CliError::Violation(v)))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {} ({e})", e.kind());
            ExitCode::from(e.code())
        }
    }
}
