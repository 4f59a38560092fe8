use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use apollonian::circle::{Circle, Window};
use apollonian::explorer::{
    enumerate_superpacking, example_coset, explore_palace, explore_palace_shuffled, ExplorationConfig, Mode,
    PalaceGraph,
};
use apollonian::gaussian::GaussMatrix2;
use apollonian::render::{
    emit_svg, parse_config, parse_matrix, parse_point, parse_window, resolve, unit_window_at, write_jsonl, Labels,
    RenderSpec,
};
use apollonian::verify::{self, default_strip_window, Source, SuiteReport};

#[derive(Parser)]
#[command(name = "apollonian", version, about = "Exact Gaussian Apollonian circle packings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The packing between the lines Im x = 0 and Im x = 1, as an orbit of the strip group.
    Strip(Common),
    /// The packing N·(strip packing), as an orbit of a coset of the strip group.
    Coset {
        /// Matrix rows a,b,c,d with Gaussian integer entries such as 1+2i.
        #[arg(long, allow_hyphen_values = true)]
        coset_matrix: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// A packing grown from a seed quadruple by swaps.
    Palace {
        /// `base`, `coset`, or a matrix a,b,c,d applied to the base quadruple.
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Every Gaussian circle of bounded curvature meeting a window.
    Superpacking {
        /// Circles with |b| up to margin × max curvature are explored.
        #[arg(long)]
        margin: Option<i64>,
        /// Centre of a unit square window, x,y.
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run an invariant suite: hermitian, parity, descartes, spinor, lockstep, primitivity, relate.
    Verify {
        suite: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// `strip`, `coset`, or a coset matrix a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long)]
        max_curvature: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, alias = "seed")]
        seed_rng: Option<u64>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    max_curvature: Option<i64>,
    #[arg(long)]
    max_depth: Option<usize>,
    /// x0,y0,x1,y1 with rational entries such as 1/2.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// JSON-Lines output; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// none, curvature or half.
    #[arg(long)]
    labels: Option<String>,
    /// Pixels per unit length in the SVG.
    #[arg(long)]
    scale: Option<f64>,
    /// Visit each breadth-first layer in a shuffled order.
    #[arg(long)]
    seed_rng: Option<u64>,
    /// key = value file; flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
}

const DEFAULT_MAX_CURVATURE: i64 = 20;

fn load_config(path: &Option<PathBuf>) -> Result<BTreeMap<String, String>> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(parse_config(&text)?)
        }
        None => Ok(BTreeMap::new()),
    }
}

/// Settings of a generation command after merging flags and config.
struct Settings {
    max_curvature: i64,
    max_depth: Option<usize>,
    window: Option<Window>,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
    labels: Labels,
    scale: f64,
    seed_rng: Option<u64>,
    config: BTreeMap<String, String>,
}

impl Settings {
    fn from(common: Common) -> Result<Settings> {
        let config = load_config(&common.config)?;
        let max_curvature = resolve(common.max_curvature, &config, "max-curvature")?.unwrap_or(DEFAULT_MAX_CURVATURE);
        if max_curvature <= 0 {
            bail!("--max-curvature must be positive");
        }
        let window = resolve(common.window, &config, "window")?.map(|w: String| parse_window(&w)).transpose()?;
        let labels = resolve(common.labels, &config, "labels")?.map(|l: String| l.parse::<Labels>()).transpose()?;
        Ok(Settings {
            max_curvature,
            max_depth: resolve(common.max_depth, &config, "max-depth")?,
            window,
            out: resolve(common.out, &config, "out")?,
            svg: resolve(common.svg, &config, "svg")?,
            labels: labels.unwrap_or_default(),
            scale: resolve(common.scale, &config, "scale")?.unwrap_or(400.0),
            seed_rng: resolve(common.seed_rng, &config, "seed-rng")?,
            config,
        })
    }

    fn get<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        Ok(resolve(flag, &self.config, key)?)
    }

    fn exploration(&self, window: Option<Window>) -> ExplorationConfig {
        ExplorationConfig { max_curvature: self.max_curvature, max_depth: self.max_depth, window, ..Default::default() }
    }
}

fn graph_circles(graph: &PalaceGraph, window: &Option<Window>) -> Vec<Circle> {
    match window {
        Some(w) => graph.circles_in(w),
        None => graph.circles.iter().copied().collect(),
    }
}

/// Window for drawing: the given one, else the hull of the finite disks.
fn picture_window(circles: &[Circle], window: Option<Window>) -> Window {
    window
        .or_else(|| circles.iter().filter_map(Window::of_disk).reduce(|a, b| a.hull(&b)))
        .unwrap_or_else(default_strip_window)
}

fn write_outputs(s: &Settings, circles: &[Circle], window: Option<Window>) -> Result<()> {
    match &s.out {
        Some(p) => {
            let f = fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
            write_jsonl(io::BufWriter::new(f), circles)?;
        }
        None => write_jsonl(io::stdout().lock(), circles)?,
    }
    if let Some(p) = &s.svg {
        let spec = RenderSpec { scale: s.scale, labels: s.labels, ..RenderSpec::new(picture_window(circles, window)) };
        fs::write(p, emit_svg(circles, &spec)?).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn seed_has_two_lines(n: &GaussMatrix2) -> Result<bool> {
    let q = apollonian::minkowski::lorentz_apply_quadruple(
        &apollonian::minkowski::spinor(n)?,
        &apollonian::minkowski::base_quadruple(),
    );
    Ok(q.circles().iter().filter(|c| c.b == 0).count() == 2)
}

fn run_orbit(s: Settings, n: GaussMatrix2) -> Result<()> {
    let window = match s.window {
        Some(w) => Some(w),
        None if seed_has_two_lines(&n)? && s.max_depth.is_none() => Some(default_strip_window()),
        None => None,
    };
    let graph = apollonian::explorer::coset_packing(&n, &s.exploration(window))?;
    let circles = graph_circles(&graph, &window);
    write_outputs(&s, &circles, window)
}

fn run_palace(s: Settings, seed: Option<String>) -> Result<()> {
    let seed = s.get(seed, "seed")?.unwrap_or_else(|| "base".into());
    let n = match Source::parse(&seed)? {
        Source::Strip => GaussMatrix2::IDENTITY,
        Source::Coset(n) => n,
    };
    let q = apollonian::minkowski::lorentz_apply_quadruple(
        &apollonian::minkowski::spinor(&n)?,
        &apollonian::minkowski::base_quadruple(),
    );
    let window = match s.window {
        Some(w) => Some(w),
        None if seed_has_two_lines(&n)? && s.max_depth.is_none() => Some(default_strip_window()),
        None => None,
    };
    // the frontier order only affects the work done, never the result
    let graph = match s.seed_rng {
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            explore_palace_shuffled(&q, &s.exploration(window), Some(&mut rng))?
        }
        None => explore_palace(&q, &s.exploration(window))?,
    };
    let circles = graph_circles(&graph, &window);
    write_outputs(&s, &circles, window)
}

fn run_superpacking(s: Settings, margin: Option<i64>, center: Option<String>) -> Result<()> {
    let margin = s.get(margin, "margin")?.unwrap_or(2);
    let center = s.get(center, "center")?;
    let window = match (s.window, center) {
        (Some(w), _) => w,
        (None, Some(c)) => unit_window_at(parse_point(&c)?),
        (None, None) => Window::from_ints(0, 0, 1, 1)?,
    };
    let cfg = ExplorationConfig { margin, mode: Mode::Superpacking, ..s.exploration(Some(window)) };
    let sp = enumerate_superpacking(&cfg)?;
    write_outputs(&s, &sp.circles, Some(window))
}

struct VerifyArgs {
    depth: Option<usize>,
    samples: Option<usize>,
    from: Option<String>,
    max_curvature: Option<i64>,
    window: Option<String>,
    seed: Option<u64>,
    config: Option<PathBuf>,
}

fn run_verify(suite: &str, a: VerifyArgs) -> Result<SuiteReport> {
    let VerifyArgs { depth, samples, from, max_curvature, window, seed, config } = a;
    let cfg = load_config(&config)?;
    let seed = resolve(seed, &cfg, "seed-rng")?.unwrap_or(1);
    let samples = resolve(samples, &cfg, "samples")?.unwrap_or(1000);
    let depth = resolve(depth, &cfg, "depth")?.unwrap_or(4);
    let max_curvature = resolve(max_curvature, &cfg, "max-curvature")?.unwrap_or(50);
    let from = resolve(from, &cfg, "from")?.unwrap_or_else(|| "strip".into());
    let window = resolve(window, &cfg, "window")?.map(|w: String| parse_window(&w)).transpose()?;
    let graph = || -> Result<PalaceGraph> {
        let source = Source::parse(&from)?;
        Ok(verify::packing(source, max_curvature, window)?)
    };
    Ok(match suite {
        "hermitian" => verify::hermitian_suite(samples, 20, seed),
        "parity" => verify::parity_suite(samples, seed),
        "spinor" => verify::spinor_suite(samples, seed),
        "lockstep" => {
            if depth > 8 {
                bail!("--depth is limited to 8");
            }
            verify::lockstep_suite(depth)?
        }
        "descartes" => {
            let g = graph()?;
            let mut r = verify::descartes_suite(&g);
            let c = verify::congruence_suite(&g);
            r.checks += c.checks;
            r.failures += c.failures;
            r.first_failure = r.first_failure.or(c.first_failure);
            r
        }
        "primitivity" => {
            let circles: Vec<Circle> = graph()?.circles.into_iter().collect();
            verify::primitivity_suite(&circles)
        }
        "relate" => verify::relate_suite(&graph()?, samples.min(200), seed),
        other => bail!("unknown suite {other:?}"),
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Strip(common) => run_orbit(Settings::from(common)?, GaussMatrix2::IDENTITY)?,
        Command::Coset { coset_matrix, common } => {
            let s = Settings::from(common)?;
            let n = match s.get(coset_matrix, "coset-matrix")? {
                Some(m) => parse_matrix(&m)?,
                None => example_coset(),
            };
            run_orbit(s, n)?
        }
        Command::Palace { seed, common } => run_palace(Settings::from(common)?, seed)?,
        Command::Superpacking { margin, center, common } => run_superpacking(Settings::from(common)?, margin, center)?,
        Command::Verify { suite, depth, samples, from, max_curvature, window, seed_rng, config } => {
            let args = VerifyArgs { depth, samples, from, max_curvature, window, seed: seed_rng, config };
            let r = run_verify(&suite, args)?;
            let mut out = io::stdout().lock();
            writeln!(out, "{r}")?;
            writeln!(out, "{}", if r.passed() { "PASS" } else { "FAIL" })?;
            return Ok(r.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
