//! Command-line front end: diagrams of geodesic distance functions,
//! bottleneck and distortion distances, zigzag decomposition, and
//! two-parameter matching distances, over exact rational inputs.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Parser, Subcommand};
use serde::Serialize;

use zzlocal_core::error::{Error, Result};
use zzlocal_core::io::{
    bifiltration_from_json, box_from_str, diagram_from_json, diagram_to_json, diagram_to_svg,
    format_ext_real, graph_from_json, graph_point_from_str, interval_from_str, intervals_to_json,
    snapshots_from_json, zigzag_from_json,
};
use zzlocal_core::multiparam::{matching_distance, restricted_matching_distance, LineSample};
use zzlocal_core::{
    bottleneck_distance, build_union_zigzag, interval_decomposition, lzz_diagram,
    persistence_distortion, restricted_lzz_diagram,
};

#[derive(Parser)]
#[command(
    name = "zzlocal",
    version,
    about = "Exact persistence diagrams and distances for metric graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Diagram of the geodesic distance function from a base point
    Diagram {
        /// Graph JSON file
        graph: PathBuf,
        /// Base point: vertex:<name> or edge:<index>@<offset>
        base: String,
        /// Project every point into the window lo:hi
        #[arg(long)]
        interval: Option<String>,
        /// Also write a scatter plot to this SVG file
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram files
    Bottleneck {
        d1: PathBuf,
        d2: PathBuf,
    },
    /// Project a diagram's points into a window
    Restrict {
        diagram: PathBuf,
        /// Window lo:hi
        #[arg(long)]
        interval: String,
    },
    /// Persistence distortion between two graphs
    Distortion {
        g1: PathBuf,
        g2: PathBuf,
        /// Interior sample points per edge
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Compare only radius-r neighborhoods
        #[arg(long)]
        radius: Option<String>,
    },
    /// Matching distance between two bifiltration files
    MatchDistance {
        b1: PathBuf,
        b2: PathBuf,
        /// Directions and offsets per side of the line grid
        #[arg(long, default_value_t = 16)]
        grid: usize,
        /// Restrict to the box x1:x2,y1:y2
        #[arg(long)]
        r#box: Option<String>,
        /// Homology dimension
        #[arg(long, default_value_t = 0)]
        dim: usize,
    },
    /// Interval decomposition of a zigzag module file
    Zigzag {
        module: PathBuf,
    },
    /// Zigzag of snapshots interleaved with pairwise unions
    UnionZigzag {
        snapshots: PathBuf,
        /// Homology dimension
        #[arg(long, default_value_t = 0)]
        dim: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct DistortionReport {
    d_pd: String,
    radius: String,
    epsilon: String,
    samples: usize,
}

#[derive(Serialize)]
struct MatchReport {
    d_match: String,
    dim: usize,
    directions: usize,
    offsets: usize,
    #[serde(rename = "box")]
    window: Option<String>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Diagram {
            graph,
            base,
            interval,
            svg,
        } => {
            let g = graph_from_json(&read(&graph)?)?;
            let base = graph_point_from_str(&g, &base)?;
            let f = g.distance_function(&base)?;
            let d = match interval {
                Some(s) => restricted_lzz_diagram(&g, &f, &interval_from_str(&s)?)?,
                None => lzz_diagram(&g, &f)?,
            };
            if let Some(path) = svg {
                fs::write(&path, diagram_to_svg(&d))
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            println!("{}", diagram_to_json(&d));
        }
        Cmd::Bottleneck { d1, d2 } => {
            let a = diagram_from_json(&read(&d1)?)?;
            let b = diagram_from_json(&read(&d2)?)?;
            println!("{}", format_ext_real(&bottleneck_distance(&a, &b)));
        }
        Cmd::Restrict { diagram, interval } => {
            let d = diagram_from_json(&read(&diagram)?)?;
            let w = interval_from_str(&interval)?;
            println!("{}", diagram_to_json(&d.restrict(&w)));
        }
        Cmd::Distortion {
            g1,
            g2,
            samples,
            radius,
        } => {
            let a = graph_from_json(&read(&g1)?)?;
            let b = graph_from_json(&read(&g2)?)?;
            let r = radius
                .as_deref()
                .map(zzlocal_core::rational::parse_rational)
                .transpose()?;
            let est = persistence_distortion(&a, &b, samples, r.as_ref())?;
            let report = DistortionReport {
                d_pd: format_ext_real(&est.distance),
                radius: r
                    .map(|v| zzlocal_core::rational::format_rational(&v))
                    .unwrap_or_else(|| "inf".into()),
                epsilon: zzlocal_core::rational::format_rational(&est.spacing),
                samples,
            };
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
        }
        Cmd::MatchDistance {
            b1,
            b2,
            grid,
            r#box,
            dim,
        } => {
            let x = bifiltration_from_json(&read(&b1)?)?;
            let y = bifiltration_from_json(&read(&b2)?)?;
            let sample = LineSample::grid_for(&x, &y, grid, grid)?;
            let d = match &r#box {
                Some(s) => {
                    let (lo, hi) = box_from_str(s)?;
                    restricted_matching_distance(&x, &y, dim, &sample, &lo, &hi)?
                }
                None => matching_distance(&x, &y, dim, &sample)?,
            };
            let report = MatchReport {
                d_match: format_ext_real(&d),
                dim,
                directions: grid,
                offsets: grid,
                window: r#box,
            };
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
        }
        Cmd::Zigzag { module } => {
            let m = zigzag_from_json(&read(&module)?)?;
            println!("{}", intervals_to_json(&interval_decomposition(&m)));
        }
        Cmd::UnionZigzag { snapshots, dim } => {
            let snaps = snapshots_from_json(&read(&snapshots)?)?;
            let m = build_union_zigzag(&snaps, dim)?;
            println!("{}", intervals_to_json(&interval_decomposition(&m)));
        }
    }
    Ok(())
}

fn main() {
    if let Ok(v) = std::env::var("ZZLOCAL_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                zzlocal_core::configure_threads(n);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    exit(0);
                }
                _ => {
                    eprint!("{e}");
                    exit(1);
                }
            }
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        exit(2);
    }
}
