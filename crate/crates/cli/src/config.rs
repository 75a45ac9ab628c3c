use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use isentropes_core::st_bones::Side;
use isentropes_core::{Family, OrderData};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "isentropes", version, about = "Bones, skeletons and isentropes of bimodal map pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    /// Worker threads for grid and bone parallelism [default: all cores].
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

/// Either `--n N` or `--period 2N`.
#[derive(Args, Debug, Clone, Serialize)]
#[group(multiple = false)]
pub struct OrderArgs {
    /// Half the period.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Period 2n of the orbits involved.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
}

impl OrderArgs {
    pub fn get(&self) -> Result<Option<usize>, String> {
        match (self.n, self.period) {
            (Some(0), _) => Err("--n must be at least 1".into()),
            (Some(n), _) => Ok(Some(n)),
            (_, Some(p)) if p == 0 || p % 2 == 1 => Err(format!("--period {p} is not a positive even number")),
            (_, Some(p)) => Ok(Some(p / 2)),
            _ => Ok(None),
        }
    }

    pub fn require(&self) -> Result<usize, String> {
        self.get()?.ok_or_else(|| "one of --n or --period is required".into())
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TraceArgs {
    /// Initial continuation step for logistic bones.
    #[arg(long, default_value_t = isentropes_core::q_bones::DEFAULT_STEP)]
    pub step: f64,
    /// Corrector tolerance on the periodicity residual.
    #[arg(long, default_value_t = isentropes_core::q_bones::TOL_CORR)]
    pub tol_corr: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GridArgs {
    /// Nodes per side of the parameter lattice.
    #[arg(long, default_value_t = 64)]
    pub res: usize,
    /// Largest iterate used by the entropy estimators.
    #[arg(long, default_value_t = 12)]
    pub kmax: usize,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// List the admissible order-data of period 2n.
    Orderdata {
        #[command(flatten)]
        #[serde(flatten)]
        order: OrderArgs,
    },
    /// Build every left and right bone of period 2n.
    Bones {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        #[serde(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        #[serde(flatten)]
        trace: TraceArgs,
    },
    /// Build a single bone.
    Trace {
        #[arg(long)]
        family: Family,
        /// Order-data such as "s=[2,1];t=[1,2]".
        #[arg(long)]
        order_data: OrderData,
        #[arg(long, default_value = "left")]
        side: Side,
        #[command(flatten)]
        #[serde(flatten)]
        trace: TraceArgs,
    },
    /// Crossings of every left bone with every right bone of period at most 2n.
    Intersections {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        #[serde(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        #[serde(flatten)]
        trace: TraceArgs,
    },
    /// Entropy on a lattice of parameters, as CSV and PGM.
    EntropyGrid {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        #[serde(flatten)]
        grid: GridArgs,
    },
    /// Level set of the entropy at `h0`, with an overlay render.
    Isentrope {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        #[serde(flatten)]
        grid: GridArgs,
        /// Entropy level in nats.
        #[arg(long)]
        h0: f64,
        /// Draw the bones of period at most 2n on the overlay.
        #[command(flatten)]
        #[serde(flatten)]
        order: OrderArgs,
    },
    /// The n-skeleton: bones of period at most 2n cut into a plane graph.
    Skeleton {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        #[serde(flatten)]
        order: OrderArgs,
        /// Also build the other family's skeleton and match vertices.
        #[arg(long)]
        correspond: bool,
    },
    /// Check that entropy grows along the top and right edges and, with
    /// `--n`, along bone arcs leaving each primary vertex.
    AuditMonotonicity {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        #[serde(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        #[serde(flatten)]
        order: OrderArgs,
    },
    /// Hyperbolic type of the logistic pair at (v, w).
    Classify {
        #[arg(long)]
        v: f64,
        #[arg(long)]
        w: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_iter: usize,
        #[arg(long, default_value_t = isentropes_core::families::TOL_ORBIT)]
        tol_orbit: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Orderdata { .. } => "orderdata",
            Command::Bones { .. } => "bones",
            Command::Trace { .. } => "trace",
            Command::Intersections { .. } => "intersections",
            Command::EntropyGrid { .. } => "entropy-grid",
            Command::Isentrope { .. } => "isentrope",
            Command::Skeleton { .. } => "skeleton",
            Command::AuditMonotonicity { .. } => "audit-monotonicity",
            Command::Classify { .. } => "classify",
        }
    }
}

/// A validated invocation. Only `command` is echoed into the manifest, so
/// the output directory and worker count never change the artifacts.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub out: PathBuf,
    pub workers: usize,
}

fn positive(name: &str, x: f64) -> Result<(), String> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(format!("{name} must be positive, got {x}"))
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, String> {
        let workers = match cli.workers {
            Some(0) => return Err("--workers must be at least 1".into()),
            Some(w) => w,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        match &cli.command {
            Command::Orderdata { order }
            | Command::Bones { order, .. }
            | Command::Intersections { order, .. }
            | Command::Skeleton { order, .. } => {
                order.require()?;
            }
            Command::Isentrope { order, .. } | Command::AuditMonotonicity { order, .. } => {
                order.get()?;
            }
            _ => {}
        }
        match &cli.command {
            Command::Bones { trace, .. } | Command::Trace { trace, .. } | Command::Intersections { trace, .. } => {
                positive("--step", trace.step)?;
                positive("--tol-corr", trace.tol_corr)?;
            }
            Command::EntropyGrid { grid, .. }
            | Command::Isentrope { grid, .. }
            | Command::AuditMonotonicity { grid, .. } => {
                if grid.res < 2 {
                    return Err(format!("--res must be at least 2, got {}", grid.res));
                }
            }
            Command::Classify { tol_orbit, max_iter, .. } => {
                positive("--tol-orbit", *tol_orbit)?;
                if *max_iter == 0 {
                    return Err("--max-iter must be at least 1".into());
                }
            }
            _ => {}
        }
        Ok(RunConfig { command: cli.command, out: cli.out, workers })
    }
}
