use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use toric_lagrangian::pipeline::{build_slice_and_surface, shrinker_trajectory};
use toric_lagrangian::{
    generate_example, gluing_svg, run_pipeline, slice_svg, CheckSelection, ConeSpecDocument, PipelineOptions,
};

/// Checks on Lagrangians in toric cones.
#[derive(Debug, Parser)]
#[command(name = "toric-lag", version)]
struct Cli {
    /// Factor applied to every numeric tolerance.
    #[arg(long, global = true, default_value_t = 1.0)]
    tol: f64,
    /// RK4 step for the shrinker ODE.
    #[arg(long, global = true, default_value_t = 1e-3)]
    step: f64,
    /// Output file: the JSON report, the example document, or for `svg` a
    /// directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every check (or those listed with --only) on a cone spec.
    Check {
        /// Cone spec JSON, or `-` for standard input.
        spec: PathBuf,
        /// Comma-separated check names.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Validate the slice assumptions and compute the slice polygon.
    Slice { spec: PathBuf },
    /// Topology of the glued surface.
    Topology { spec: PathBuf },
    /// Special Lagrangian conservation for the document profile.
    Slag { spec: PathBuf },
    /// Integrate the shrinker ODE.
    Shrinker {
        spec: PathBuf,
        /// Write the trajectory as CSV (t, Re c, Im c, theta).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Numerical checks of the flat model in C^m.
    Oracle {
        spec: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the genus-G example cone spec.
    Example {
        #[arg(long)]
        genus: i64,
    },
    /// Write slice.svg and gluing.svg into the --out directory.
    Svg { spec: PathBuf },
}

fn read_doc(path: &Path) -> Result<ConeSpecDocument> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    ConeSpecDocument::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        bail!("--tol must be positive");
    }
    if cli.step.is_nan() || cli.step <= 0.0 {
        bail!("--step must be positive");
    }
    let mut opts = PipelineOptions { tol_scale: cli.tol, ode_step: cli.step, ..PipelineOptions::default() };
    let (spec, names): (&Path, Vec<String>) = match &cli.command {
        Command::Check { spec, only } => (spec, only.clone()),
        Command::Slice { spec } => (spec, names(&["validity", "slice-assumptions", "slice"])),
        Command::Topology { spec } => (spec, names(&["validity", "slice-assumptions", "slice", "topology"])),
        Command::Slag { spec } => (spec, names(&["calabi-yau", "reeb", "slice-assumptions", "slag-profile"])),
        Command::Shrinker { spec, .. } => (spec, names(&["calabi-yau", "reeb", "slice-assumptions", "shrinker-ode"])),
        Command::Oracle { spec, samples, seed } => {
            if *samples == 0 {
                bail!("--samples must be positive");
            }
            opts.samples = *samples;
            if let Some(s) = seed {
                opts.seed = *s;
            }
            (spec, names(&["validity", "flat-lagrangian", "flat-minimal", "flat-shrinker", "flat-angle"]))
        }
        Command::Example { genus } => {
            let json = generate_example(*genus)?.to_json() + "\n";
            match &cli.out {
                Some(p) => write(p, &json)?,
                None => print!("{json}"),
            }
            return Ok(ExitCode::SUCCESS);
        }
        Command::Svg { spec } => {
            let dir = cli.out.as_ref().context("svg needs --out <directory>")?;
            let doc = read_doc(spec)?;
            let (_, slice, surface) = build_slice_and_surface(&doc)?;
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, svg) in [("slice.svg", slice_svg(&slice)), ("gluing.svg", gluing_svg(&surface))] {
                let path = dir.join(name);
                write(&path, &svg)?;
                println!("wrote {}", path.display());
            }
            return Ok(ExitCode::SUCCESS);
        }
    };

    let doc = read_doc(spec)?;
    let which = CheckSelection::parse(&names)?;
    let report = run_pipeline(&doc, &which, &opts);
    print!("{}", report.to_text());
    if let Some(p) = &cli.out {
        write(p, &(report.to_json() + "\n"))?;
    }
    if let Command::Shrinker { csv: Some(path), .. } = &cli.command {
        let traj = shrinker_trajectory(&doc, &opts)?;
        write(path, &traj.to_csv())?;
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
