//! Command-line interface. Exit codes: 0 pass, 1 violations found,
//! 2 input error, 3 cap exceeded fatally.

use crate::campaign::{self, CampaignSpec};
use crate::cohomology;
use crate::constructions;
use crate::error::Error;
use crate::gmodule::{self, GModule};
use crate::group::DEFAULT_ELEMENT_CAP;
use crate::io::{CatalogEntrySpec, CohomologyFragment, GroupSpec};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "cohomolocal", version, about = "Exact H^1_loc engine for finite matrix groups over Z/p^l Z")]
pub struct Cli {
    /// Closure element cap (flag wins over COHOM_ELEMENT_CAP)
    #[arg(long, global = true, env = "COHOM_ELEMENT_CAP")]
    pub element_cap: Option<usize>,
    /// Worker threads (flag wins over COHOM_JOBS)
    #[arg(long, global = true, env = "COHOM_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Group-level queries
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Module-structure queries
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Cohomology computations
    Cohom {
        #[command(subcommand)]
        cmd: CohomCmd,
    },
    /// Constructions of named subgroup families
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Verification campaigns
    Campaign {
        #[command(subcommand)]
        cmd: CampaignCmd,
    },
}

#[derive(Subcommand)]
pub enum GroupCmd {
    /// Closure summary of a group spec
    Info { spec: PathBuf },
    /// A Sylow p-subgroup of the group
    Sylow {
        #[arg(short)]
        p: u64,
        spec: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum ModuleCmd {
    /// Irreducible / reducible-indecomposable / decomposable verdict
    Structure { spec: PathBuf },
}

#[derive(Subcommand)]
pub enum CohomCmd {
    /// H^1(G, M) invariant factors
    H1 { spec: PathBuf },
    /// H^1_loc(G, M) invariant factors, optionally cross-checked against
    /// the cyclic-restriction route
    H1loc {
        spec: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand)]
pub enum ConstructCmd {
    /// Named construction catalog at the given parameters
    Catalog(CatalogArgs),
}

#[derive(Args)]
pub struct CatalogArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    p: u64,
    #[arg(short, default_value_t = 1)]
    l: u32,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand)]
pub enum CampaignCmd {
    /// Run a campaign spec and write the report
    Run {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } => 3,
        _ => 2,
    }
}

fn load_module(path: &PathBuf, cap: usize) -> Result<GModule, Error> {
    let spec = GroupSpec::load(path)?;
    Ok(GModule::natural(spec.to_group(cap)?))
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let cap = cli.element_cap.unwrap_or(DEFAULT_ELEMENT_CAP);
    let jobs = match &cli.command {
        Command::Campaign { cmd: CampaignCmd::Run { jobs, .. } } => jobs.or(cli.jobs),
        _ => cli.jobs,
    };
    if let Some(j) = jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(j).build_global().is_err() {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match dispatch(cli, cap) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(cli: Cli, cap: usize) -> Result<i32, Error> {
    match cli.command {
        Command::Group { cmd } => match cmd {
            GroupCmd::Info { spec } => {
                let g = GroupSpec::load(&spec)?.to_group(cap)?;
                let info = serde_json::json!({
                    "p": g.modulus().p(),
                    "l": g.modulus().l(),
                    "q": g.modulus().q(),
                    "n": g.dim(),
                    "order": g.order(),
                    "generators": g.generators().len(),
                    "contains_scalar": g.contains_scalar(),
                    "cyclic_subgroups": g.cyclic_subgroups().len(),
                });
                println!("{}", serde_json::to_string_pretty(&info)?);
                Ok(0)
            }
            GroupCmd::Sylow { p, spec } => {
                let g = GroupSpec::load(&spec)?.to_group(cap)?;
                let sylow = g.sylow(p);
                let sub = sylow.to_group();
                let out = serde_json::json!({
                    "p": p,
                    "order": sub.order(),
                    "group": GroupSpec::from_group(&sub),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
                Ok(0)
            }
        },
        Command::Module { cmd } => match cmd {
            ModuleCmd::Structure { spec } => {
                let module = load_module(&spec, cap)?;
                let verdict = gmodule::structure(&module)?;
                let rows = |m: &crate::matrix::ModMatrix| -> Vec<Vec<u64>> {
                    (0..m.rows()).map(|i| m.row_vec(i)).collect()
                };
                let out = serde_json::json!({
                    "kind": format!("{:?}", verdict.kind),
                    "by_convention": verdict.by_convention,
                    "invariant_submodule": verdict.invariant_submodule.as_ref().map(rows),
                    "complement": verdict.complement.as_ref().map(|(u, w)| {
                        serde_json::json!({"u": rows(u), "w": rows(w)})
                    }),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
                Ok(0)
            }
        },
        Command::Cohom { cmd } => match cmd {
            CohomCmd::H1 { spec } => {
                let module = load_module(&spec, cap)?;
                let analysis = cohomology::analyze(&module)?;
                let fragment = CohomologyFragment::from_analysis(&module, &analysis);
                println!("{}", serde_json::to_string_pretty(&fragment)?);
                Ok(0)
            }
            CohomCmd::H1loc { spec, oracle } => {
                let module = load_module(&spec, cap)?;
                let analysis = cohomology::analyze(&module)?;
                let fragment = CohomologyFragment::from_analysis(&module, &analysis);
                let mut out = serde_json::to_value(&fragment)?;
                if oracle {
                    let alt = cohomology::h1loc_cyclic_oracle(&module)?;
                    out["h1loc_oracle"] =
                        serde_json::to_value(alt.invariants().factors().to_vec())?;
                    if alt.invariants() != analysis.h1_loc.invariants() {
                        eprintln!("error: the two H1_loc routes disagree");
                        println!("{}", serde_json::to_string_pretty(&out)?);
                        return Ok(1);
                    }
                }
                println!("{}", serde_json::to_string_pretty(&out)?);
                Ok(0)
            }
        },
        Command::Construct { cmd } => match cmd {
            ConstructCmd::Catalog(args) => {
                let entries = constructions::catalog_with_cap(args.n, args.p, args.l, cap)?;
                let specs: Vec<CatalogEntrySpec> =
                    entries.iter().map(CatalogEntrySpec::from_construction).collect();
                std::fs::write(&args.output, serde_json::to_string_pretty(&specs)?)?;
                eprintln!("wrote {} entries to {}", specs.len(), args.output.display());
                Ok(0)
            }
        },
        Command::Campaign { cmd } => match cmd {
            CampaignCmd::Run { spec, output, jobs: _, seed } => {
                let text = std::fs::read_to_string(&spec)?;
                let mut campaign_spec: CampaignSpec = serde_json::from_str(&text)?;
                if let Some(s) = seed {
                    campaign_spec.seed = s;
                }
                if let Some(c) = std::env::var("COHOM_ELEMENT_CAP")
                    .ok()
                    .and_then(|v| v.parse::<usize>().ok())
                {
                    campaign_spec.caps.element_cap = c;
                }
                let report = campaign::run(&campaign_spec)?;
                report.save(&output)?;
                eprintln!(
                    "campaign {:?}: {} records, {} violations, {} skipped -> {}",
                    campaign_spec.kind,
                    report.records.len(),
                    report.violations.len(),
                    report.skipped,
                    report.verdict
                );
                Ok(if report.passed() { 0 } else { 1 })
            }
        },
    }
}
