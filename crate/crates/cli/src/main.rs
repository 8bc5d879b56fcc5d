//! Command-line front end: every engine operation as a subcommand emitting
//! reproducible CSV datasets.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use heterochaos::bricks::{
    biased_pairs, construct_biased, interior_brick_search, periodic_point_in_brick,
    two_brick_chain, Brick, HcStructure,
};
use heterochaos::ergodic::{
    birkhoff, invariant_cover, leaf_contraction, lyapunov, CoverSet, Observable,
};
use heterochaos::exact::{BitBudget, Point, Rational};
use heterochaos::maps::{preset, text, MapSystem};
use heterochaos::periodic::{enumerate_periodic, EnumerationBudget, PeriodicOrbit, StabilityFilter};
use heterochaos::symbolic::entropy_estimate;

use output::{Output, OutputFormat};

const MAX_BITS_ENV: &str = "HETEROCHAOS_MAX_BITS";

#[derive(Parser)]
#[command(
    name = "heterochaos",
    version,
    about = "Exact-arithmetic datasets for hetero-chaotic baker-type maps"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: OutputFormat,

    /// Worker threads (default: all cores). Output bytes never depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MapArgs {
    /// Preset name: baker2d, baker3d, hc2d, hc3d, hc2d-k(k), hc3d-k(k).
    #[arg(long, default_value = "hc3d")]
    map: String,

    /// Load a custom system from a map-spec file instead of a preset.
    #[arg(long, conflicts_with = "map")]
    map_file: Option<PathBuf>,
}

impl MapArgs {
    fn resolve(&self) -> Result<MapSystem> {
        match &self.map_file {
            Some(path) => {
                let body = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(text::parse(&body)?)
            }
            None => Ok(preset(&self.map)?),
        }
    }

    fn describe(&self) -> String {
        match &self.map_file {
            Some(p) => p.display().to_string(),
            None => self.map.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact orbit segment of a rational point, with symbols.
    Orbit {
        #[command(flatten)]
        map: MapArgs,
        /// Start point as comma-separated rationals, e.g. 1/4,3/4,1/3.
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 10)]
        forward: usize,
        #[arg(long, default_value_t = 0)]
        backward: usize,
    },
    /// Enumerate periodic orbits up to a period, classified by stability.
    Periodic {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 6)]
        max_period: usize,
        /// 1d, 2d, neutral or all.
        #[arg(long, default_value = "all")]
        class: String,
    },
    /// Admissible-word counts adm(N) with the growth rate Gamma(N).
    Adm {
        #[arg(long)]
        max_n: usize,
    },
    /// The periodic-point dataset of the 2D map (periods up to 13).
    Fig4,
    /// The admissible-word growth table (defaults to N up to 12).
    Fig8 {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Lyapunov numbers from seeded random orbits.
    Lyapunov {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 100)]
        orbits: u64,
        #[arg(long, default_value_t = 100_000)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Birkhoff averages of a named observable over seeded points.
    Birkhoff {
        #[command(flatten)]
        map: MapArgs,
        /// coord_x, coord_y, coord_z, indicator_r2 or product_xz.
        #[arg(long, default_value = "coord_x")]
        obs: String,
        #[arg(long, default_value_t = 20)]
        points: u64,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exact leaf contraction record for a vertical leaf.
    Leaf {
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Interior (j,k)-brick around a target point and its periodic point.
    Brick {
        /// Target point, e.g. 1/2,1/2,1/2.
        #[arg(long)]
        target: String,
        /// Brick size bound as a rational, e.g. 1/1000.
        #[arg(long, default_value = "1/100")]
        eps: String,
        /// Run the dual pipeline on the inverse map.
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Nested-breadbox chain through interior bricks around listed targets.
    DenseChain {
        /// File with one target point per line.
        #[arg(long)]
        targets: PathBuf,
        #[arg(long, default_value = "1/100")]
        eps: String,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Finite-depth box cover of an index or heteroclinic set.
    Cover {
        /// H1, H2, H21 or H12.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Map-system utilities.
    Maps {
        #[command(subcommand)]
        action: MapsAction,
    },
}

#[derive(Subcommand)]
enum MapsAction {
    /// Print a system in the map-spec text format.
    Dump {
        #[command(flatten)]
        map: MapArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Ignore failures from double initialization (tests, library users).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<heterochaos::Error>() {
                Some(core) if core.is_budget() => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn bit_budget() -> Result<BitBudget> {
    match std::env::var(MAX_BITS_ENV) {
        Ok(v) => {
            let bits: u64 = v
                .parse()
                .with_context(|| format!("{MAX_BITS_ENV} must be an integer, got `{v}`"))?;
            Ok(BitBudget::new(bits))
        }
        Err(_) => Ok(BitBudget::default()),
    }
}

fn parse_class(s: &str) -> Result<StabilityFilter> {
    match s.trim().to_ascii_lowercase().as_str() {
        "1d" => Ok(StabilityFilter::OneDUnstable),
        "2d" => Ok(StabilityFilter::TwoDUnstable),
        "neutral" => Ok(StabilityFilter::Neutral),
        "all" => Ok(StabilityFilter::All),
        other => Err(heterochaos::Error::BadParameter(format!(
            "unknown stability class `{other}` (use 1d, 2d, neutral or all)"
        ))
        .into()),
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut out = Output::open(&cli.output, cli.format)?;
    match cli.command {
        Command::Orbit { map, point, forward, backward } => {
            let system = map.resolve()?;
            let p = Point::from_str(&point)?;
            let guard = bit_budget()?;
            out.config("command", "orbit")?;
            out.config("map", map.describe())?;
            out.config("point", &p)?;
            out.config("forward", forward)?;
            out.config("backward", backward)?;
            out.config("max_bits", guard.limit())?;
            let orbit = system.orbit(&p, forward, backward, &guard)?;
            let mut header = vec!["m".to_string(), "symbol".to_string(), "boundary".to_string()];
            for ax in system.axes() {
                header.push(ax.to_string().to_lowercase());
            }
            for ax in system.axes() {
                header.push(format!("{}_float", ax.to_string().to_lowercase()));
            }
            out.row(&header)?;
            for (i, (pt, sym)) in orbit.points.iter().zip(&orbit.symbols).enumerate() {
                let m = i as i64 - orbit.origin_index as i64;
                let mut row = vec![
                    m.to_string(),
                    system.label(*sym).to_string(),
                    (orbit.boundary_flag == Some(i)).to_string(),
                ];
                for c in pt.coords() {
                    row.push(c.to_string());
                }
                for c in pt.coords() {
                    row.push(c.to_f64().to_string());
                }
                out.row(&row)?;
            }
        }
        Command::Periodic { map, max_period, class } => {
            let system = map.resolve()?;
            let filter = parse_class(&class)?;
            out.config("command", "periodic")?;
            out.config("map", map.describe())?;
            out.config("max_period", max_period)?;
            out.config("class", &class)?;
            let orbits =
                enumerate_periodic(&system, max_period, filter, EnumerationBudget::default())?;
            write_periodic_rows(&mut out, &system, &orbits)?;
        }
        Command::Fig4 => {
            let system = preset("hc2d")?;
            out.config("command", "fig4")?;
            out.config("map", "hc2d")?;
            out.config("max_period", 13)?;
            out.config("class", "all")?;
            let orbits =
                enumerate_periodic(&system, 13, StabilityFilter::All, EnumerationBudget::default())?;
            write_periodic_rows(&mut out, &system, &orbits)?;
        }
        ref cmd @ (Command::Adm { max_n } | Command::Fig8 { max_n }) => {
            let name = if matches!(cmd, Command::Fig8 { .. }) { "fig8" } else { "adm" };
            out.config("command", name)?;
            out.config("max_n", max_n)?;
            let rows = entropy_estimate(max_n.max(2))?;
            out.row(&[
                "n",
                "adm",
                "gamma",
                "gamma_float",
                "gamma_minus_3",
                "three_over_n",
                "entropy",
            ])?;
            for row in rows.iter().take(max_n) {
                let gamma = row.gamma.clone();
                let gamma_str = gamma.as_ref().map(|g| g.to_string()).unwrap_or_default();
                let gamma_float = row.gamma_f64().map(|g| g.to_string()).unwrap_or_default();
                let gamma_minus_3 = row
                    .gamma_f64()
                    .map(|g| (g - 3.0).to_string())
                    .unwrap_or_default();
                out.row(&[
                    row.n.to_string(),
                    row.adm.to_string(),
                    gamma_str,
                    gamma_float,
                    gamma_minus_3,
                    (3.0 / row.n as f64).to_string(),
                    row.entropy().to_string(),
                ])?;
            }
        }
        Command::Lyapunov { map, orbits, steps, seed } => {
            let system = map.resolve()?;
            out.config("command", "lyapunov")?;
            out.config("map", map.describe())?;
            out.config("orbits", orbits)?;
            out.config("steps", steps)?;
            out.config("seed", seed)?;
            let est = lyapunov(&system, orbits, steps, seed)?;
            if est.degenerate_k {
                out.comment("warning: k=4 makes the mixed-axis Lyapunov number exactly 1")?;
            }
            let mut header = Vec::new();
            for ax in &est.axes {
                header.push(format!("lambda_{}", ax.to_string().to_lowercase()));
            }
            for ax in &est.axes {
                header.push(format!("predicted_{}", ax.to_string().to_lowercase()));
            }
            out.row(&header)?;
            let mut row: Vec<String> = est.lambda.iter().map(|l| l.to_string()).collect();
            match &est.predicted {
                Some(p) => row.extend(p.iter().map(|v| v.to_string())),
                None => row.extend(est.axes.iter().map(|_| String::new())),
            }
            out.row(&row)?;
        }
        Command::Birkhoff { map, obs, points, steps, seed } => {
            let system = map.resolve()?;
            let observable = Observable::from_str(&obs)?;
            out.config("command", "birkhoff")?;
            out.config("map", map.describe())?;
            out.config("observable", observable.name())?;
            out.config("points", points)?;
            out.config("steps", steps)?;
            out.config("seed", seed)?;
            let result = birkhoff(&system, observable, points, steps, seed)?;
            let mut header = vec!["index".to_string()];
            for ax in system.axes() {
                header.push(format!("{}0", ax.to_string().to_lowercase()));
            }
            header.push("average".to_string());
            out.row(&header)?;
            for (i, (start, avg)) in result.averages.iter().enumerate() {
                let mut row = vec![i.to_string()];
                for c in start.coords() {
                    row.push(c.to_string());
                }
                row.push(avg.to_string());
                out.row(&row)?;
            }
            out.config("spread", result.spread)?;
        }
        Command::Leaf { x0, n, map } => {
            let system = map.resolve()?;
            let x: Rational = x0.parse()?;
            out.config("command", "leaf")?;
            out.config("map", map.describe())?;
            out.config("x0", &x)?;
            out.config("n", n)?;
            let record = leaf_contraction(&system, &x, n)?;
            out.row(&[
                "n",
                "x",
                "y_width",
                "y_width_float",
                "z_lo",
                "z_hi",
                "z_width",
                "diam_bound",
            ])?;
            for step in &record.steps {
                let (z_lo, z_hi, z_len) = match &step.z {
                    heterochaos::symbolic::AdmissibilityState::Full => {
                        (Rational::zero(), Rational::one(), Rational::one())
                    }
                    heterochaos::symbolic::AdmissibilityState::Dyadic(d) => {
                        let iv = d.to_interval();
                        (iv.lo().clone(), iv.hi().clone(), d.length())
                    }
                };
                out.row(&[
                    step.n.to_string(),
                    step.x.to_string(),
                    step.y_width.to_string(),
                    step.y_width.to_f64().to_string(),
                    z_lo.to_string(),
                    z_hi.to_string(),
                    z_len.to_string(),
                    step.diameter_bound.to_string(),
                ])?;
            }
        }
        Command::Brick { target, eps, inverse, map } => {
            let base = map.resolve()?;
            let system = if inverse { base.invert()? } else { base };
            let structure = HcStructure::detect(&system)?;
            let target_point = Point::from_str(&target)?;
            let eps: Rational = eps.parse()?;
            let guard = bit_budget()?;
            out.config("command", "brick")?;
            out.config("map", system.name())?;
            out.config("target", &target_point)?;
            out.config("eps", &eps)?;
            let half = &eps * &Rational::new(1, 2);
            let profile = construct_biased(&structure, &target_point, &half)?;
            let (j0, k0) = biased_pairs(&profile, 0)?;
            out.config("point", profile.point())?;
            out.config("first_biased_pair", format!("({j0},{k0})"))?;
            let brick = interior_brick_search(&structure, &profile, &half, &guard)?;
            out.config("j", brick.j())?;
            out.config("k", brick.k())?;
            write_brick_rows(&mut out, &system, &brick)?;
            let orbit = periodic_point_in_brick(&structure, &brick)?;
            out.config("periodic_point", &orbit.point)?;
            out.config("period", orbit.period)?;
            for (ax, chi) in system.axes().iter().zip(&orbit.multipliers) {
                out.config(&format!("chi_{}", ax.to_string().to_lowercase()), chi)?;
            }
        }
        Command::DenseChain { targets, eps, map } => {
            let system = map.resolve()?;
            let structure = HcStructure::detect(&system)?;
            let eps: Rational = eps.parse()?;
            let guard = bit_budget()?;
            let body = std::fs::read_to_string(&targets)
                .with_context(|| format!("reading {}", targets.display()))?;
            out.config("command", "dense-chain")?;
            out.config("map", system.name())?;
            out.config("targets", targets.display())?;
            out.config("eps", &eps)?;
            let mut bricks: Vec<Brick> = Vec::new();
            for line in body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                let target = Point::from_str(line)?;
                let profile = construct_biased(&structure, &target, &eps)?;
                bricks.push(interior_brick_search(&structure, &profile, &eps, &guard)?);
            }
            let chain = two_brick_chain(&structure, &bricks)?;
            chain.verify(&structure, &bricks)?;
            let mut header = vec!["s".to_string(), "n_s".to_string(), "j".to_string(), "k".to_string()];
            for ax in system.axes() {
                let a = ax.to_string().to_lowercase();
                header.push(format!("u_{a}_lo"));
                header.push(format!("u_{a}_hi"));
            }
            out.row(&header)?;
            for (s, bb) in chain.breadboxes().iter().enumerate() {
                let mut row = vec![
                    (s + 1).to_string(),
                    chain.visit_time(s).to_string(),
                    bricks[s].j().to_string(),
                    bricks[s].k().to_string(),
                ];
                for iv in bb.intervals() {
                    row.push(iv.lo().to_string());
                    row.push(iv.hi().to_string());
                }
                out.row(&row)?;
            }
            out.comment("containments F^{N_s}(U_t) in B0_s verified exactly for all t >= s")?;
        }
        Command::Cover { set, depth, map } => {
            let system = map.resolve()?;
            let cover_set = CoverSet::from_str(&set)?;
            out.config("command", "cover")?;
            out.config("map", map.describe())?;
            out.config("set", cover_set.label())?;
            out.config("depth", depth)?;
            let cover = invariant_cover(&system, cover_set, depth)?;
            out.config("boxes", cover.boxes.len())?;
            out.config("total_volume", cover.total_volume())?;
            let mut header = vec!["index".to_string()];
            for ax in system.axes() {
                let a = ax.to_string().to_lowercase();
                header.push(format!("{a}_lo"));
                header.push(format!("{a}_hi"));
            }
            out.row(&header)?;
            for (i, b) in cover.boxes.iter().enumerate() {
                let mut row = vec![i.to_string()];
                for iv in b.intervals() {
                    row.push(iv.lo().to_string());
                    row.push(iv.hi().to_string());
                }
                out.row(&row)?;
            }
        }
        Command::Maps { action } => match action {
            MapsAction::Dump { map } => {
                let system = map.resolve()?;
                out.raw(&text::dump(&system))?;
            }
        },
    }
    out.finish()?;
    Ok(())
}

fn write_periodic_rows(out: &mut Output, system: &MapSystem, orbits: &[PeriodicOrbit]) -> Result<()> {
    let mut header = vec![
        "period".to_string(),
        "word".to_string(),
        "class".to_string(),
        "boundary".to_string(),
    ];
    for ax in system.axes() {
        header.push(ax.to_string().to_lowercase());
    }
    for ax in system.axes() {
        header.push(format!("{}_float", ax.to_string().to_lowercase()));
    }
    for ax in system.axes() {
        header.push(format!("chi_{}", ax.to_string().to_lowercase()));
    }
    header.push("neutral_lo".to_string());
    header.push("neutral_hi".to_string());
    out.row(&header)?;
    for orbit in orbits {
        let class = if orbit.has_neutral_axis() {
            "neutral".to_string()
        } else {
            format!("{}d-unstable", orbit.unstable_dimension())
        };
        let mut row = vec![
            orbit.period.to_string(),
            system.word_label(&orbit.word),
            class,
            orbit.boundary.to_string(),
        ];
        for c in orbit.point.coords() {
            row.push(c.to_string());
        }
        for c in orbit.point.coords() {
            row.push(c.to_f64().to_string());
        }
        for chi in &orbit.multipliers {
            row.push(chi.to_string());
        }
        match &orbit.neutral_interval {
            Some((_, iv)) => {
                row.push(iv.lo().to_string());
                row.push(iv.hi().to_string());
            }
            None => {
                row.push(String::new());
                row.push(String::new());
            }
        }
        out.row(&row)?;
    }
    Ok(())
}

fn write_brick_rows(out: &mut Output, system: &MapSystem, brick: &Brick) -> Result<()> {
    let mut header = vec!["m".to_string(), "symbol".to_string()];
    for ax in system.axes() {
        let a = ax.to_string().to_lowercase();
        header.push(format!("{a}_lo"));
        header.push(format!("{a}_hi"));
    }
    out.row(&header)?;
    for m in -(brick.j() as i64)..=(brick.k() as i64) {
        let sym = if m < brick.k() as i64 {
            system
                .label(brick.word()[(m + brick.j() as i64) as usize])
                .to_string()
        } else {
            String::new()
        };
        let mut row = vec![m.to_string(), sym];
        for iv in brick.box_at(m).intervals() {
            row.push(iv.lo().to_string());
            row.push(iv.hi().to_string());
        }
        out.row(&row)?;
    }
    Ok(())
}
