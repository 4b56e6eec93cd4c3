use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use hhnn_core::config::{preset, InvolutionSpec, NetworkConfig, ScheduleKind};
use hhnn_core::dynamics::DEFAULT_MAX_SWEEPS;
use hhnn_core::experiment::OctonionExperiment;
use hhnn_core::graph::{classify, enumerate_graph, to_dot};
use hhnn_core::laws::{check_reahn, check_reverse_involution, is_positive_semidefinite};
use hhnn_core::network::{check_conditions, random_hermitian_weights};
use hhnn_core::realify::realify_network;
use hhnn_core::{Activation, Error, NumberSystem};

#[derive(Parser)]
#[command(name = "hhnn", version, about = "Hypercomplex-valued Hopfield network toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the reverse-involution, real-part associativity and PSD laws.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the multiplication table of the basis units.
    Table {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Run a network until it settles and write its energy trace as CSV.
    Run {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_SWEEPS)]
        sweeps: usize,
        /// Trace CSV; metadata goes next to it as `<out>.meta.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the transition graph and write it as DOT.
    Graph {
        #[command(flatten)]
        net: NetArgs,
        /// DOT file; the classification goes next to it as `<out>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the equivalent real bipolar network of a split-sign network.
    Realify {
        #[command(flatten)]
        net: NetArgs,
        /// Real weight matrix as CSV; the realified network config goes
        /// next to it as `<out>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Octonion split-sign network against its realification.
    OctonionExp {
        #[arg(long = "N", default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds, run in parallel.
        #[arg(long, default_value_t = 1)]
        runs: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_SWEEPS)]
        sweeps: usize,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SystemArgs {
    /// R, C, U, D, Q, T, O, cd:<k> or cl2:<-1|0|1>.
    #[arg(long)]
    algebra: String,
    /// natural, identity, tessarine or default.
    #[arg(long, default_value = "default")]
    involution: String,
}

#[derive(Args)]
struct NetArgs {
    /// Network config JSON file, or a preset such as `example5:u-split`.
    #[arg(long)]
    config: Option<String>,
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    involution: Option<String>,
    /// csgn, tsgn, split, conj_split or sigma; `csgn:4` style ids also work.
    #[arg(long)]
    activation: Option<String>,
    /// Resolution factor for csgn and tsgn.
    #[arg(long = "K")]
    k: Option<u32>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

impl NetArgs {
    /// A config file or preset, or random Hermitian weights from the flags.
    fn resolve(&self) -> Result<NetworkConfig, Error> {
        let mut cfg = match &self.config {
            Some(c) if c.starts_with("example5:") || c.starts_with("example6:") => preset(c)?,
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
                NetworkConfig::from_json(&text)?
            }
            None => self.random_config()?,
        };
        if self.config.is_some() {
            if let Some(seed) = self.seed {
                cfg.seed = Some(seed);
            }
        }
        Ok(cfg)
    }

    fn random_config(&self) -> Result<NetworkConfig, Error> {
        let algebra = self
            .algebra
            .clone()
            .ok_or_else(|| Error::Config("either --config or --algebra is required".into()))?;
        let involution = self.involution.clone().unwrap_or_else(|| "default".into());
        let mut activation = self.activation.clone().unwrap_or_else(|| "split".into());
        if let Some(k) = self.k {
            if !activation.contains(':') {
                activation = format!("{activation}:{k}");
            }
        }
        activation.parse::<Activation>()?;
        let n = self.n.unwrap_or(10);
        let seed = self.seed.unwrap_or(0);
        let system = NumberSystem::from_ids(&algebra, &involution)?;
        let w = random_hermitian_weights(n, &system, seed, 0.0);
        let weights = (0..n)
            .map(|i| (0..n).map(|j| w.get(i, j).to_vec()).collect())
            .collect();
        Ok(NetworkConfig {
            algebra,
            involution: InvolutionSpec::Named(involution),
            activation,
            n,
            weights,
            schedule: ScheduleKind::Cyclic,
            seed: Some(seed),
            initial_state: None,
        })
    }
}

enum Failure {
    /// A checked property does not hold.
    Property(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Verify { system, out } => cmd_verify(&system, out.as_deref()),
        Command::Table { system } => {
            let sys = NumberSystem::from_ids(&system.algebra, &system.involution)?;
            print!("{}", sys.algebra().table_string());
            Ok(())
        }
        Command::Run { net, sweeps, out } => cmd_run(&net, sweeps, out.as_deref()),
        Command::Graph { net, out } => cmd_graph(&net, out.as_deref()),
        Command::Realify { net, out } => cmd_realify(&net, out.as_deref()),
        Command::OctonionExp {
            n,
            seed,
            runs,
            sweeps,
            out,
        } => cmd_octonion(n, seed, runs, sweeps, out.as_deref()),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn config_hash(cfg: &impl Serialize) -> String {
    let canonical = serde_json::to_string(cfg).expect("serializable config");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn cmd_verify(args: &SystemArgs, out: Option<&Path>) -> CmdResult {
    let sys = NumberSystem::from_ids(&args.algebra, &args.involution)?;
    let (algebra, tau) = (sys.algebra(), sys.involution());
    let reverse = check_reverse_involution(algebra, tau);
    let reahn = check_reahn(algebra, tau);
    let psd = is_positive_semidefinite(algebra, tau);
    let report = json!({
        "algebra": args.algebra,
        "dim": sys.dim(),
        "involution": tau.signs(),
        "reverse_involution": reverse,
        "reahn": reahn,
        "psd": psd,
    });
    let text = to_json(&report);
    print!("{text}");
    if let Some(path) = out {
        write(path, &text)?;
    }
    if reverse.holds() && reahn.holds() && psd {
        Ok(())
    } else {
        Err(Failure::Property(format!(
            "{} fails: reverse_involution={} reahn={} psd={psd}",
            args.algebra,
            reverse.holds(),
            reahn.holds()
        )))
    }
}

fn cmd_run(args: &NetArgs, sweeps: usize, out: Option<&Path>) -> CmdResult {
    let cfg = args.resolve()?;
    let net = cfg.build()?;
    let x0 = cfg.initial_state(&net)?;
    let trace = net.run(&x0, sweeps)?;
    let conditions = check_conditions(&net);
    let summary = json!({
        "command": "run",
        "seed": cfg.seed,
        "config_hash": config_hash(&cfg),
        "max_sweeps": sweeps,
        "conditions": conditions,
        "converged": trace.converged,
        "sweeps": trace.sweeps,
        "updates": trace.events.len(),
        "state_changes": trace.changes(),
        "initial_energy": trace.initial_energy,
        "final_energy": trace.final_energy(),
        "final_state": trace.final_state.as_flat(),
    });
    let text = to_json(&summary);
    match out {
        Some(path) => {
            write(path, &trace.to_csv())?;
            write(&sibling(path, ".meta.json"), &text)?;
        }
        None => print!("{}", trace.to_csv()),
    }
    eprint!("{text}");
    if trace.converged {
        Ok(())
    } else {
        Err(Failure::Property(format!(
            "no fixed point reached within {sweeps} sweeps"
        )))
    }
}

fn cmd_graph(args: &NetArgs, out: Option<&Path>) -> CmdResult {
    let cfg = args.resolve()?;
    let net = cfg.build()?;
    let graph = enumerate_graph(&net)?;
    let highlight = match &cfg.initial_state {
        Some(_) => graph.encode(&cfg.initial_state(&net)?),
        None => None,
    };
    let classification = classify(&graph);
    let report = json!({
        "command": "graph",
        "config_hash": config_hash(&cfg),
        "highlight": highlight,
        "classification": classification,
    });
    let text = to_json(&report);
    print!("{text}");
    if let Some(path) = out {
        write(path, &to_dot(&graph, highlight))?;
        write(&sibling(path, ".json"), &text)?;
    }
    Ok(())
}

fn cmd_realify(args: &NetArgs, out: Option<&Path>) -> CmdResult {
    let cfg = args.resolve()?;
    let net = cfg.build()?;
    let (m, real) = realify_network(&net)?;
    let mut real_cfg = NetworkConfig::from_network(&real, cfg.seed);
    real_cfg.initial_state = cfg
        .initial_state
        .as_ref()
        .map(|rows| rows.concat().into_iter().map(|c| vec![c]).collect());
    let text = format!("{}\n", real_cfg.to_json()?);
    match out {
        Some(path) => {
            write(path, &m.to_csv())?;
            write(&sibling(path, ".json"), &text)?;
        }
        None => print!("{}", m.to_csv()),
    }
    Ok(())
}

fn cmd_octonion(n: usize, seed: u64, runs: u64, sweeps: usize, out: Option<&Path>) -> CmdResult {
    if runs == 0 {
        return Err(Failure::Usage("--runs must be positive".into()));
    }
    let experiments: Vec<OctonionExperiment> = (seed..seed + runs)
        .map(|s| OctonionExperiment {
            n,
            seed: s,
            max_sweeps: sweeps,
        })
        .collect();
    let outcomes = std::thread::scope(|scope| {
        let handles: Vec<_> = experiments
            .iter()
            .map(|e| scope.spawn(move || e.run()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("experiment thread panicked"))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    let mut failures = Vec::new();
    let mut summaries = Vec::new();
    for outcome in &outcomes {
        let summary = outcome.summary();
        let s = outcome.config.seed;
        let meta = json!({
            "command": "octonion-exp",
            "seed": s,
            "config_hash": config_hash(&outcome.config),
            "config": outcome.config,
            "octonion": summary.octonion,
            "real": summary.real,
        });
        if let Some(dir) = out {
            write(&dir.join(format!("octonion_seed{s}.csv")), &outcome.octonion.to_csv())?;
            write(&dir.join(format!("real_seed{s}.csv")), &outcome.real.to_csv())?;
            write(&dir.join(format!("meta_seed{s}.json")), &to_json(&meta))?;
        }
        for (name, run) in [("octonion", &summary.octonion), ("real", &summary.real)] {
            if !run.converged || !run.monotone {
                failures.push(format!(
                    "seed {s}: {name} net converged={} monotone={}",
                    run.converged, run.monotone
                ));
            }
        }
        summaries.push(meta);
    }
    print!("{}", to_json(&summaries));
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Property(failures.join("\n")))
    }
}
