//! The `restrictor` command line: generators, the partition pipeline and
//! an independent certificate checker.

pub mod io;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::driver::{
    main_lemma_partition, partition_into_restricted, DeltaModel, LemmaConfig, LemmaOutcome, Mode, Outcome,
    StallPolicy,
};
use crate::embedding::{embed_transversal, BlockSystem};
use crate::error::Error;
use crate::generators;
use crate::graphcore::{ceil_tol, Graph, VertexSet};
use crate::oracles::{find_restricted_subset, SearchMode};
use crate::partitions::gen::{path_instance, tree_instance, PathSpec, TreeSpec};
use crate::partitions::{cover_path_with_cap, validate_path_partition};
use crate::rng;
use io::{parse_graph, parse_pattern, render_graph, CertificateFile, CertificateMeta, PathPartitionFile, TreePartitionFile};

/// Exit status for a certificate or any other success.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
/// `verify` could not parse its inputs.
pub const EXIT_PARSE: i32 = 2;
/// An induced copy of the pattern was found instead of a partition.
pub const EXIT_COPY: i32 = 3;

/// Largest generated instance.
const GEN_LIMIT: usize = 5_000_000;

#[derive(Parser, Debug)]
#[command(name = "restrictor", version, about = "Partition H-free graphs into eps-restricted sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Random,
    Hfree,
    Star,
    Split,
    PathPartition,
    TreePartition,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Seed {
    #[arg(long, env = "RESTRICTOR_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(clap::Args, Debug, Clone)]
pub struct LemmaArgs {
    /// Forbidden pattern: a preset name or a graph file.
    #[arg(long = "H", value_name = "PATTERN", default_value = "K3")]
    pub pattern: String,
    #[arg(long, value_enum, default_value_t = Mode::Empirical)]
    pub mode: Mode,
    /// Constant `δ` for theoretical mode.
    #[arg(long)]
    pub delta: Option<f64>,
    /// `γ` for theoretical mode.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = crate::covering::DEFAULT_RETRY_CAP)]
    pub retry_cap: usize,
    /// Exact fullness checks allowed up to this many vertices per side.
    #[arg(long, default_value_t = 20)]
    pub exact_cap: usize,
    #[arg(long, value_enum, default_value_t = StallPolicy::Flush)]
    pub stall_policy: StallPolicy,
    /// Skip the initial induced-copy search.
    #[arg(long)]
    pub no_precheck: bool,
}

impl LemmaArgs {
    fn config(&self) -> LemmaConfig {
        let mut cfg = LemmaConfig {
            mode: self.mode,
            delta: self.delta.map(|delta| DeltaModel::Constant { delta }),
            gamma: self.gamma,
            stall_policy: self.stall_policy,
            precheck_h_free: !self.no_precheck,
            retry_cap: self.retry_cap,
            ..LemmaConfig::default()
        };
        cfg.fullness.exact_cap = self.exact_cap;
        cfg
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph (and for partition kinds, the partition).
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Vertex count; same as --n.
        count: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long = "H", value_name = "PATTERN", default_value = "K3")]
        pattern: String,
        /// Clique size for split graphs.
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Independent-set size for split graphs.
        #[arg(long, default_value_t = 5)]
        m: usize,
        /// Cover parameter for partition kinds.
        #[arg(long, default_value_t = 1.0 / 3.0)]
        eps: f64,
        /// Size of the last path level.
        #[arg(long, default_value_t = 1)]
        tail: usize,
        /// Extra vertices per path level.
        #[arg(long, default_value_t = 0)]
        slack: usize,
        /// Only the first `depth` path levels are nonempty; `--tail` is then
        /// the size of the last nonempty one.
        #[arg(long)]
        depth: Option<usize>,
        /// Branching bound of a tree-partition.
        #[arg(long, default_value_t = 2)]
        h: usize,
        /// Size of tree-partition leaves.
        #[arg(long, default_value_t = 1)]
        leaf: usize,
        /// Where partition kinds write the partition JSON.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[command(flatten)]
        seed: Seed,
        #[command(flatten)]
        output: Output,
    },
    /// Partition a graph into eps-restricted sets, or find an induced copy.
    Partition {
        graph: PathBuf,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[command(flatten)]
        lemma: LemmaArgs,
        #[command(flatten)]
        seed: Seed,
        #[command(flatten)]
        output: Output,
    },
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Run the main lemma alone.
    Lemma {
        graph: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value_t = 0.2)]
        eta: f64,
        #[arg(long, default_value_t = 0.25)]
        theta: f64,
        #[command(flatten)]
        lemma: LemmaArgs,
        #[command(flatten)]
        seed: Seed,
        #[command(flatten)]
        output: Output,
    },
    /// Embed a pattern transversally into a block system.
    Embed {
        graph: PathBuf,
        #[arg(long = "H", value_name = "PATTERN", default_value = "K3")]
        pattern: String,
        /// JSON list of vertex lists, one block per pattern vertex.
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Cover a path-partition by eps-restricted sets.
    CoverPath {
        graph: PathBuf,
        partition: PathBuf,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        eps: f64,
        #[arg(long, default_value_t = crate::covering::DEFAULT_RETRY_CAP)]
        retry_cap: usize,
        #[command(flatten)]
        seed: Seed,
        #[command(flatten)]
        output: Output,
    },
    /// Find a large eps-restricted subset.
    FindRestricted {
        graph: PathBuf,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = SearchMode::Greedy)]
        mode: SearchMode,
        #[command(flatten)]
        output: Output,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("cannot parse {}", path.display()))
}

fn pattern(spec: &str) -> anyhow::Result<Graph> {
    parse_pattern(spec, |p| std::fs::read_to_string(p))
}

fn emit(output: &Output, text: &str, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match &output.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn mode_name(mode: Mode) -> String {
    match mode {
        Mode::Empirical => "empirical".into(),
        Mode::Theoretical => "theoretical".into(),
    }
}

/// Run a parsed command; returns the exit status.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<i32> {
    match cli.command {
        Command::Gen {
            kind,
            count,
            n,
            p,
            pattern: pat,
            k,
            m,
            eps,
            tail,
            slack,
            depth,
            h,
            leaf,
            partition,
            seed,
            output,
        } => {
            let seed = seed.seed;
            let n = count.or(n);
            let need_n = || -> anyhow::Result<usize> {
                match n {
                    Some(0) => bail!("n must be positive"),
                    Some(n) => Ok(n),
                    None => bail!("give a vertex count"),
                }
            };
            if !(0.0..=1.0).contains(&p) {
                bail!("p must lie in [0, 1], got {p}");
            }
            let g = match kind {
                GenKind::Random => generators::gnp(need_n()?, p, &mut rng::stream(seed, "gen.random")),
                GenKind::Hfree => generators::h_free(need_n()?, p, &pattern(&pat)?, seed)?,
                GenKind::Star => generators::star(need_n()?),
                GenKind::Split => {
                    if k + m == 0 {
                        bail!("a split graph needs k + m > 0");
                    }
                    generators::split(k, m, p, &mut rng::stream(seed, "gen.split"))
                }
                GenKind::PathPartition => {
                    let file = partition.as_ref().context("path-partition needs --partition FILE")?;
                    if !(eps > 0.0 && eps <= 1.0) {
                        bail!("eps must lie in (0, 1], got {eps}");
                    }
                    let spec = match depth {
                        None => PathSpec::full_depth(eps, tail, slack),
                        Some(d) => {
                            let k = ceil_tol(2.0 / eps);
                            if !(1..=k).contains(&d) {
                                bail!("depth must lie in 1..={k}");
                            }
                            PathSpec::truncated(eps, d, tail, slack)
                        }
                    };
                    if spec.sizes.iter().sum::<usize>() > GEN_LIMIT {
                        bail!("instance would exceed {GEN_LIMIT} vertices");
                    }
                    let (g, pp) = path_instance(&spec, seed);
                    std::fs::write(file, to_json(&PathPartitionFile::from_partition(&pp))?)?;
                    g
                }
                GenKind::TreePartition => {
                    let file = partition.as_ref().context("tree-partition needs --partition FILE")?;
                    if !(eps > 0.0 && eps <= 1.0) || h == 0 {
                        bail!("need eps in (0, 1] and h >= 1");
                    }
                    let big_k = ceil_tol(2.0 / eps);
                    let hk = (h as f64).powi(big_k as i32);
                    let mut branching = vec![h; big_k];
                    branching[big_k - 1] = 1;
                    let estimate = (leaf.max(1) as f64) * (48.0 * hk).powi(big_k as i32);
                    if estimate > GEN_LIMIT as f64 {
                        bail!("instance would exceed {GEN_LIMIT} vertices");
                    }
                    let spec = TreeSpec {
                        h,
                        ell: big_k,
                        eps: eps / (4.0 * hk),
                        eta: 1.0 / (24.0 * hk),
                        branching,
                        leaf_size: leaf,
                        inner_deg: 2,
                        cross_deg: 1,
                        dense_cap: 0,
                    };
                    let (g, tp) = tree_instance(&spec, seed);
                    std::fs::write(file, to_json(&TreePartitionFile::from_partition(&tp))?)?;
                    g
                }
            };
            emit(&output, &render_graph(&g), stdout)?;
            Ok(EXIT_OK)
        }

        Command::Partition {
            graph,
            eps,
            lemma,
            seed,
            output,
        } => {
            let g = read_graph(&graph)?;
            let h = pattern(&lemma.pattern)?;
            let cfg = lemma.config();
            match partition_into_restricted(&g, &h, eps, &cfg, seed.seed) {
                Ok(Outcome::Certificate(r)) => {
                    let mut counts = std::collections::BTreeMap::new();
                    counts.insert("parts".to_string(), r.certificate.len() as f64);
                    counts.insert("n_used".to_string(), r.n_used);
                    counts.insert("lemma_pairs".to_string(), r.lemma_pairs as f64);
                    counts.insert("lemma_sets".to_string(), r.lemma_sets as f64);
                    let meta = CertificateMeta {
                        seed: seed.seed,
                        mode: mode_name(cfg.mode),
                        bound: r.bound.is_finite().then_some(r.bound),
                        achieved_counts: counts,
                    };
                    if let Some(reason) = &r.stall {
                        writeln!(stderr, "note: main lemma stalled and was flushed: {reason}")?;
                    }
                    emit(&output, &to_json(&CertificateFile::from_certificate(&r.certificate, meta))?, stdout)?;
                    Ok(EXIT_OK)
                }
                Ok(Outcome::InducedCopy(map)) => {
                    emit(&output, &to_json(&json!({ "induced_copy": { "pattern": lemma.pattern, "mapping": map } }))?, stdout)?;
                    Ok(EXIT_COPY)
                }
                Err(e) => Err(report_error(e, stderr)),
            }
        }

        Command::Verify { graph, certificate } => {
            let parsed = read_graph(&graph).and_then(|g| {
                let text = read(&certificate)?;
                let file: CertificateFile = serde_json::from_str(&text)
                    .with_context(|| format!("cannot parse {}", certificate.display()))?;
                Ok((g, file))
            });
            let (g, file) = match parsed {
                Ok(x) => x,
                Err(e) => {
                    writeln!(stderr, "error: {e:#}")?;
                    return Ok(EXIT_PARSE);
                }
            };
            let violations = match file.to_certificate(g.n()) {
                Ok(cert) => cert.violations(&g),
                Err(v) => v,
            };
            if violations.is_empty() {
                writeln!(stdout, "ok: {} parts", file.parts.len())?;
                Ok(EXIT_OK)
            } else {
                for v in &violations {
                    writeln!(stdout, "violation: {v}")?;
                }
                Ok(EXIT_ERROR)
            }
        }

        Command::Lemma {
            graph,
            eps,
            eta,
            theta,
            lemma,
            seed,
            output,
        } => {
            let g = read_graph(&graph)?;
            if g.n() == 0 {
                bail!("the graph has no vertices");
            }
            let h = pattern(&lemma.pattern)?;
            match main_lemma_partition(&g, &h, eps, eta, theta, &lemma.config(), seed.seed) {
                Ok(LemmaOutcome::Partition(p)) => {
                    let doc = json!({
                        "pairs": p.pairs.iter().map(|q| json!({
                            "a": q.a.to_vec(), "b": q.b.to_vec(), "side": q.side,
                        })).collect::<Vec<_>>(),
                        "sets": p.c_sets.iter().map(|(s, side)| json!({
                            "vertices": s.to_vec(), "side": side,
                        })).collect::<Vec<_>>(),
                        "report": p.report,
                        "steps": p.steps,
                        "stall": p.stall,
                        "n_achieved": p.achieved_n(),
                        "n_theoretical": p.schedule.n_total,
                    });
                    emit(&output, &to_json(&doc)?, stdout)?;
                    Ok(EXIT_OK)
                }
                Ok(LemmaOutcome::InducedCopy(map)) => {
                    emit(&output, &to_json(&json!({ "induced_copy": { "pattern": lemma.pattern, "mapping": map } }))?, stdout)?;
                    Ok(EXIT_COPY)
                }
                Err(e) => Err(report_error(e, stderr)),
            }
        }

        Command::Embed {
            graph,
            pattern: pat,
            blocks,
            eps,
            output,
        } => {
            let g = read_graph(&graph)?;
            let h = pattern(&pat)?;
            let lists: Vec<Vec<usize>> = serde_json::from_str(&read(&blocks)?)
                .with_context(|| format!("cannot parse {}", blocks.display()))?;
            let sets = lists
                .iter()
                .map(|b| io::to_set(g.n(), b))
                .collect::<Result<Vec<VertexSet>, _>>()?;
            let sys = BlockSystem::new(h, sets, eps)?;
            let emb = embed_transversal(&g, &sys)?;
            emit(&output, &to_json(&json!({ "mapping": emb.mapping, "trace": emb.trace }))?, stdout)?;
            Ok(EXIT_OK)
        }

        Command::CoverPath {
            graph,
            partition,
            eps,
            retry_cap,
            seed,
            output,
        } => {
            let g = read_graph(&graph)?;
            let file: PathPartitionFile = serde_json::from_str(&read(&partition)?)
                .with_context(|| format!("cannot parse {}", partition.display()))?;
            let pp = file.to_partition(g.n())?;
            if let Err(v) = validate_path_partition(&g, &pp) {
                bail!("invalid path-partition: {v}");
            }
            let cover = cover_path_with_cap(&g, &pp, eps, seed.seed, retry_cap)?;
            let mut counts = std::collections::BTreeMap::new();
            counts.insert("parts".to_string(), cover.certificate.len() as f64);
            counts.insert("p".to_string(), cover.p as f64);
            counts.insert("attempts".to_string(), cover.attempts as f64);
            let meta = CertificateMeta {
                seed: seed.seed,
                mode: format!("{:?}", cover.branch).to_lowercase(),
                bound: Some(crate::partitions::path_bound(eps)),
                achieved_counts: counts,
            };
            emit(&output, &to_json(&CertificateFile::from_certificate(&cover.certificate, meta))?, stdout)?;
            Ok(EXIT_OK)
        }

        Command::FindRestricted { graph, eps, mode, output } => {
            let g = read_graph(&graph)?;
            if g.n() == 0 {
                bail!("the graph has no vertices");
            }
            let (set, side) = find_restricted_subset(&g, &g.vertices(), eps, mode)?;
            emit(
                &output,
                &to_json(&json!({ "size": set.len(), "side": side, "vertices": set.to_vec() }))?,
                stdout,
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Print the state carried by a stall before handing the error back.
fn report_error(e: Error, stderr: &mut dyn Write) -> anyhow::Error {
    if let Error::StallDetected { state, .. } = &e {
        if let Ok(text) = serde_json::to_string(state) {
            let _ = writeln!(stderr, "state: {text}");
        }
    }
    e.into()
}

/// Parse arguments, run, and map errors to exit status 1.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr();
    match run(cli, &mut stdout, &mut stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

