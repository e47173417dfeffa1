//! Command-line harness: simulate test processes, run spectral estimators,
//! debias them, and reproduce the ensemble experiments.

mod config;
mod svg;

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use quadspec::debias::default_basis_count;
use quadspec::ensemble::{run_ensemble, EstimatorSpec, Pipeline};
use quadspec::signal::{load_series, save_series};

use config::{
    estimator_from_compact, estimator_from_config, experiment_from_config, model_from_config,
    FileConfig,
};

#[derive(Parser)]
#[command(
    name = "quadspec",
    about = "Quadratic spectral estimation with finite-sample bias correction",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EstimatorArgs {
    /// Config file providing the `[estimator]` section (and optionally
    /// `[process]`, `[debias]`)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Compact estimator spec, e.g. welch:l=512,m=32,taper=hamming
    #[arg(long)]
    estimator: Option<String>,
}

impl EstimatorArgs {
    fn file(&self) -> Result<Option<FileConfig>> {
        self.config.as_ref().map(FileConfig::load).transpose()
    }

    fn estimator(&self, file: Option<&FileConfig>) -> Result<EstimatorSpec<f64>> {
        if let Some(spec) = &self.estimator {
            return estimator_from_compact(spec);
        }
        let cfg = file.ok_or_else(|| anyhow!("need --estimator or --config"))?;
        estimator_from_config(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Draw a sample from the configured process and write it to a file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Override [experiment] seed
        #[arg(long)]
        seed: Option<u64>,
        /// Override [experiment] n
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate the spectrum of a series file on the Fourier grid.
    Estimate {
        #[command(flatten)]
        estimator: EstimatorArgs,
        /// Input series (one value per line)
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate and bias-correct a series file.
    Debias {
        #[command(flatten)]
        estimator: EstimatorArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Basis count (default: from the kernel's effective sample size)
        #[arg(long)]
        s: Option<usize>,
        /// Basis order
        #[arg(long)]
        p: Option<usize>,
        /// Clamp negative fitted values at zero
        #[arg(long)]
        clip_negative: bool,
        /// Also write an SVG plot
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the simulate -> estimate -> debias ensemble experiment.
    Ensemble {
        #[arg(long)]
        config: PathBuf,
        /// Override [experiment] ensemble size
        #[arg(long)]
        ensemble: Option<usize>,
        /// Override [experiment] seed
        #[arg(long)]
        seed: Option<u64>,
        /// Clamp negative fitted values at zero
        #[arg(long)]
        clip_negative: bool,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Also write an SVG plot
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print kernel diagnostics (effective sample size, variance factor,
    /// bandwidth) and a short R(eta) table.
    Diagnose {
        #[command(flatten)]
        estimator: EstimatorArgs,
        /// Sample length the kernel is built for (or [experiment] n)
        #[arg(long)]
        n: Option<usize>,
        /// Write the kernel's tapers (or taper and lag sequence) as CSV
        #[arg(long)]
        dump_tapers: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate { config, seed, n, out } => {
            let cfg = FileConfig::load(&config)?;
            let experiment = experiment_from_config(&cfg)?;
            let model = experiment.model;
            let n = n.unwrap_or(experiment.n);
            let seed = seed.unwrap_or(experiment.seed);
            let burn_in = experiment.burn_in.unwrap_or_else(|| model.default_burn_in());
            let series = model.simulate_with_burn_in(n, seed, burn_in)?;
            save_series(&series, &out)
                .with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {} samples to {}", series.len(), out.display());
        }
        Command::Estimate { estimator, input, out } => {
            let file = estimator.file()?;
            let spec = estimator.estimator(file.as_ref())?;
            let series = load_series::<f64>(&input)?;
            let kernel = spec.build(series.len())?;
            let est = kernel.estimate(&series)?;
            fs::write(&out, est.to_text())
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote {} (freq, value) rows to {}",
                est.n(),
                out.display()
            );
        }
        Command::Debias {
            estimator,
            input,
            out,
            s,
            p,
            clip_negative,
            svg: svg_out,
        } => {
            let file = estimator.file()?;
            let spec = estimator.estimator(file.as_ref())?;
            let series = load_series::<f64>(&input)?;
            let n = series.len();
            let (order, count, clip) = debias_options(file.as_ref(), s, p, clip_negative)?;
            let pipeline = Pipeline::build(n, &spec, order, count, clip)?;
            let (est, fit) = pipeline.run(&series)?;
            fs::write(&out, fit.to_text())
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "debiased {} frequencies with S = {} bases (order {}), residual norm {:.4e}",
                est.n(),
                pipeline.family.count(),
                pipeline.family.order(),
                fit.residual_norm()
            );
            if let Some(path) = svg_out {
                let truth = file
                    .as_ref()
                    .and_then(|cfg| model_from_config(cfg).ok())
                    .map(|model| model.density_on(fit.frequencies()));
                let chart = debias_chart(&fit, truth.as_deref());
                fs::write(&path, chart)
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("wrote plot to {}", path.display());
            }
        }
        Command::Ensemble {
            config,
            ensemble,
            seed,
            clip_negative,
            out,
            svg: svg_out,
        } => {
            let cfg = FileConfig::load(&config)?;
            let mut experiment = experiment_from_config(&cfg)?;
            if let Some(m) = ensemble {
                experiment.members = m;
            }
            if let Some(s) = seed {
                experiment.seed = s;
            }
            if clip_negative {
                experiment.clip_negative = true;
            }
            let report = run_ensemble(&experiment)?;
            fs::write(&out, report.to_csv())
                .with_context(|| format!("writing {}", out.display()))?;
            print!("{}", report.summary());
            println!("wrote per-frequency report to {}", out.display());
            if let Some(path) = svg_out {
                let chart = ensemble_chart(&report);
                fs::write(&path, chart)
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("wrote plot to {}", path.display());
            }
        }
        Command::Diagnose {
            estimator,
            n,
            dump_tapers,
        } => {
            let file = estimator.file()?;
            let spec = estimator.estimator(file.as_ref())?;
            let n = match (n, file.as_ref()) {
                (Some(n), _) => n,
                (None, Some(cfg)) => cfg
                    .get("experiment", "n")
                    .ok_or_else(|| anyhow!("need --n or [experiment] n"))?
                    .parse()
                    .map_err(|_| anyhow!("[experiment] n is not a number"))?,
                (None, None) => bail!("need --n or --config"),
            };
            let kernel = spec.build(n)?;
            if let Some(path) = dump_tapers {
                fs::write(&path, tapers_csv(&kernel)?)
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("wrote taper table to {}", path.display());
            }
            let diag = kernel.diagnostics();
            println!("kernel: {}", kernel.kind());
            println!("n = {n}");
            println!("zeta = {}", diag.ess());
            println!("M = {}", diag.variance_factor());
            println!("B_quad = {}", diag.bandwidth());
            println!("n0 = {}", diag.n0());
            println!("default basis count S = {}", default_basis_count(&diag));
            println!();
            println!("  j    eta = 2*pi*j/n    R(eta)");
            for j in 0..=10.min(n - 1) {
                let eta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                println!("{j:>3}    {eta:<16.6} {:+.6e}", diag.correlation(eta));
            }
        }
    }
    Ok(())
}

fn tapers_csv(kernel: &quadspec::kernel::QuadKernel<f64>) -> Result<String> {
    use quadspec::kernel::QuadKernel;
    let mut out = String::new();
    match kernel {
        QuadKernel::Multitaper { tapers, .. } | QuadKernel::Welch { tapers } => {
            let n = tapers[0].len();
            let header: Vec<String> = (0..tapers.len()).map(|k| format!("h{k}")).collect();
            out.push_str(&format!("t,{}\n", header.join(",")));
            for t in 0..n {
                let row: Vec<String> = tapers
                    .iter()
                    .map(|taper| format!("{}", taper.values()[t]))
                    .collect();
                out.push_str(&format!("{t},{}\n", row.join(",")));
            }
        }
        QuadKernel::LagWindow { lags, taper } => {
            out.push_str("t,taper,lag\n");
            for t in 0..taper.len() {
                out.push_str(&format!(
                    "{t},{},{}\n",
                    taper.values()[t],
                    lags.values()[t]
                ));
            }
        }
        QuadKernel::Explicit { .. } => {
            bail!("explicit kernels have no taper representation to dump")
        }
    }
    Ok(out)
}

fn debias_options(
    file: Option<&FileConfig>,
    s: Option<usize>,
    p: Option<usize>,
    clip_flag: bool,
) -> Result<(usize, Option<usize>, bool)> {
    let mut order = quadspec::debias::DEFAULT_BASIS_ORDER;
    let mut count = None;
    let mut clip = clip_flag;
    if let Some(cfg) = file {
        if let Some(v) = cfg.get("debias", "p") {
            order = v.parse().map_err(|_| anyhow!("[debias] p is not a number"))?;
        }
        if let Some(v) = cfg.get("debias", "s") {
            count = Some(v.parse().map_err(|_| anyhow!("[debias] s is not a number"))?);
        }
        if let Some(v) = cfg.get("debias", "clip_negative") {
            clip |= v
                .parse::<bool>()
                .map_err(|_| anyhow!("[debias] clip_negative is not a bool"))?;
        }
    }
    if let Some(v) = p {
        order = v;
    }
    if let Some(v) = s {
        count = Some(v);
    }
    Ok((order, count, clip))
}

fn positive_points(freqs: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    let floor = values
        .iter()
        .fold(0.0f64, |a, &b| a.max(b.abs()))
        .max(1e-300)
        * 1e-12;
    freqs
        .iter()
        .zip(values)
        .filter(|(&w, _)| w >= 0.0)
        .map(|(&w, &v)| (w, v.abs().max(floor)))
        .collect()
}

fn debias_chart(fit: &quadspec::debias::DebiasResult<f64>, truth: Option<&[f64]>) -> String {
    let mut series = vec![
        svg::Series {
            label: "raw estimate",
            color: "#999999",
            dashed: false,
            points: positive_points(fit.frequencies(), fit.raw()),
        },
        svg::Series {
            label: "debiased",
            color: "#000000",
            dashed: false,
            points: positive_points(fit.frequencies(), fit.fitted()),
        },
    ];
    if let Some(t) = truth {
        series.push(svg::Series {
            label: "true spectrum",
            color: "#000000",
            dashed: true,
            points: positive_points(fit.frequencies(), t),
        });
    }
    svg::line_chart(
        "Spectral estimate and bias correction",
        "frequency (rad)",
        "power spectral density",
        &series,
    )
}

fn ensemble_chart(report: &quadspec::ensemble::EnsembleReport<f64>) -> String {
    let series = vec![
        svg::Series {
            label: "raw ensemble mean",
            color: "#999999",
            dashed: false,
            points: positive_points(&report.frequencies, &report.raw_mean),
        },
        svg::Series {
            label: "debiased ensemble mean",
            color: "#000000",
            dashed: false,
            points: positive_points(&report.frequencies, &report.debiased_mean),
        },
        svg::Series {
            label: "true spectrum",
            color: "#cc0000",
            dashed: true,
            points: positive_points(&report.frequencies, &report.truth),
        },
    ];
    svg::line_chart(
        "Ensemble means against the true spectrum",
        "frequency (rad)",
        "power spectral density",
        &series,
    )
}
