use std::fs;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;

use digraph_pfd::cartesian::cartesian_pfd;
use digraph_pfd::io::{
    export_dot, factorization_to_json, parse_edge_list, serialize_edge_list, serialize_factorization,
    serialize_quotient, serialize_with_coords, DotOptions,
};
use digraph_pfd::oracle::{
    brute_force_strong_pfd, random_prime_digraph, random_thin_digraph, seeded_rng, OracleConfig,
};
use digraph_pfd::products::strong_product;
use digraph_pfd::relations::quotient;
use digraph_pfd::skeleton::{cartesian_skeleton_with, SkeletonOptions};
use digraph_pfd::strong::strong_pfd;
use digraph_pfd::{is_isomorphic, Digraph, Factorization, ProductKind};

/// Prime factorization of connected digraphs under the strong and
/// Cartesian products.
#[derive(Parser)]
#[command(name = "dpfd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Strong,
    Cartesian,
}

impl From<Kind> for ProductKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Strong => ProductKind::Strong,
            Kind::Cartesian => ProductKind::Cartesian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Prime,
    Thin,
    Product,
}

#[derive(Subcommand)]
enum Command {
    /// Product of edge-list files, with a coordinate map as comments.
    Product {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cartesian skeleton of a connected thin digraph.
    Skeleton {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Append one `# witness` line per removed arc.
        #[arg(long)]
        witnesses: bool,
        /// Search witnesses over all vertices instead of common neighbors.
        #[arg(long)]
        exhaustive_z: bool,
        /// Emit DOT with removed arcs dashed instead of an edge list.
        #[arg(long)]
        dot: bool,
    },
    /// Prime factor decomposition.
    Factor {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "strong")]
        kind: Kind,
        #[arg(long)]
        json: bool,
        /// Write one file per factor plus `coords.txt` into this directory.
        #[arg(long, conflicts_with = "json")]
        out_dir: Option<PathBuf>,
    },
    /// Quotient by the S relation with class sizes.
    Quotient {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exit status 0 iff the two digraphs are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Seeded random fixtures.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        /// Vertex count `N` or range `LO..HI` (per factor for `product`).
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Number of prime factors for `product`.
        #[arg(long, default_value_t = 2)]
        factors: usize,
        #[arg(long, default_value_t = 60)]
        time_budget_secs: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive-search factorization for small digraphs.
    OracleFactor {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 60)]
        time_budget_secs: u64,
        #[arg(long)]
        json: bool,
    },
    /// DOT rendering of an edge-list file.
    Dot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected N or LO..HI, got `{s}`");
    match s.split_once("..") {
        Some((lo, hi)) => {
            let lo: usize = lo.parse().map_err(|_| bad())?;
            let hi: usize = hi.trim_start_matches('=').parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok(lo..=hi)
        }
        None => s.parse().map(|n| n..=n).map_err(|_| bad()),
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Digraph> {
    let text = read_text(path)?;
    parse_edge_list(&text).with_context(|| format!("in {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_factorization(dir: &Path, f: &Factorization) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for (i, factor) in f.factors.iter().enumerate() {
        emit(Some(&dir.join(format!("factor_{i}.txt"))), &serialize_edge_list(factor))?;
    }
    let coords: String = f
        .coords
        .iter()
        .enumerate()
        .map(|(v, c)| format!("{v} {}\n", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")))
        .collect();
    emit(Some(&dir.join("coords.txt")), &coords)
}

fn generate(
    model: Model,
    n: &RangeInclusive<usize>,
    seed: u64,
    factors: usize,
    cfg: &OracleConfig,
) -> anyhow::Result<String> {
    Ok(match model {
        Model::Prime => serialize_edge_list(&random_prime_digraph(n.clone(), seed, cfg)?),
        Model::Thin => serialize_edge_list(&random_thin_digraph(n.clone(), seed, cfg)?),
        Model::Product => {
            if factors == 0 {
                bail!("--factors must be at least 1");
            }
            let mut rng = seeded_rng(seed);
            let primes =
                (0..factors).map(|_| random_prime_digraph(n.clone(), rng.gen(), cfg)).collect::<Result<Vec<_>, _>>()?;
            let product = strong_product(&primes)?;
            serialize_with_coords(product.graph(), product.all_coords())
        }
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Product { kind, inputs, output } => {
            let graphs = inputs.iter().map(|p| read_graph(p)).collect::<anyhow::Result<Vec<_>>>()?;
            let product = ProductKind::from(kind).product(&graphs)?;
            emit(output.as_deref(), &serialize_with_coords(product.graph(), product.all_coords()))?;
        }
        Command::Skeleton { input, output, witnesses, exhaustive_z, dot } => {
            let g = read_graph(&input)?;
            let result = cartesian_skeleton_with(&g, SkeletonOptions { exhaustive_z })?;
            let mut text = if dot {
                export_dot(&g, &DotOptions { coords: None, dashed: result.removed_arcs().into_iter().collect() })
            } else {
                serialize_edge_list(&result.skeleton)
            };
            if witnesses {
                let prefix = if dot { "//" } else { "#" };
                for line in result.ledger().lines() {
                    text.push_str(&format!("{prefix} witness {line}\n"));
                }
            }
            emit(output.as_deref(), &text)?;
        }
        Command::Factor { input, kind, json, out_dir } => {
            let g = read_graph(&input)?;
            let f = match kind {
                Kind::Strong => strong_pfd(&g)?,
                Kind::Cartesian => cartesian_pfd(&g)?,
            };
            if let Some(dir) = out_dir {
                write_factorization(&dir, &f)?;
            } else if json {
                print!("{}", factorization_to_json(&g, &f));
            } else {
                print!("{}", serialize_factorization(&f));
            }
        }
        Command::Quotient { input, output } => {
            let g = read_graph(&input)?;
            emit(output.as_deref(), &serialize_quotient(&quotient(&g)))?;
        }
        Command::Iso { first, second } => {
            let same = is_isomorphic(&read_graph(&first)?, &read_graph(&second)?)?;
            println!("{}", if same { "isomorphic" } else { "not isomorphic" });
            return Ok(if same { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Gen { model, n, seed, count, factors, time_budget_secs, output } => {
            let cfg = OracleConfig { time_budget: Duration::from_secs(time_budget_secs), ..OracleConfig::default() };
            let texts = (0..count as u64)
                .map(|i| generate(model, &n, seed.wrapping_add(i), factors, &cfg))
                .collect::<anyhow::Result<Vec<_>>>()?;
            emit(output.as_deref(), &texts.join("---\n"))?;
        }
        Command::OracleFactor { input, max_n, time_budget_secs, json } => {
            let g = read_graph(&input)?;
            let cfg = OracleConfig { max_vertices: max_n, time_budget: Duration::from_secs(time_budget_secs) };
            let f = brute_force_strong_pfd(&g, &cfg)?;
            if json {
                print!("{}", factorization_to_json(&g, &f));
            } else {
                print!("{}", serialize_factorization(&f));
            }
        }
        Command::Dot { input, output } => {
            let g = read_graph(&input)?;
            emit(output.as_deref(), &export_dot(&g, &DotOptions::default()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
