use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use digital_tangents::arithmetic::ContinuedFraction;
use digital_tangents::dss::maximal_segments;
use digital_tangents::estimators::{
    tangent_edge_at, tangent_lambda_mst, tangent_ms_most_centered, EdgeContext, Estimator, LambdaFunction, SegmentCover,
};
use digital_tangents::harness::{
    emit_csv, emit_fit_csv, fit_loglog, parse_h_list, read_csv, run_experiment, write_gnuplot, Metadata, Metric,
};
use digital_tangents::lattice::{gauss_digitize, trace_border, CdpVertices, DigitalContour};
use digital_tangents::shapes::{parse_rational, ConvexShape, RationalPoint};
use digital_tangents::{Error, Result};
use num_rational::Rational64;

#[derive(Parser)]
#[command(
    name = "dtan",
    version,
    about = "Digital straight segments and tangent estimation on digitized convex shapes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Continued fraction, convergents and pattern word of p/q
    Cf { fraction: String },
    /// Digitize a shape and write its border as a contour file
    Digitize {
        #[arg(long)]
        shape: ConvexShape,
        #[arg(long)]
        h: String,
        /// Contour file (stdout if absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write polygon vertices as `index,i,j`
        #[arg(long)]
        vertices: Option<PathBuf>,
    },
    /// Maximal segments of a contour: `first,last,a,b,mu,len`
    Maxsegs { contour: PathBuf },
    /// Tangent angle at every contour position: `index,angle`
    Tangent {
        contour: PathBuf,
        #[arg(long, default_value = "lmst")]
        estimator: String,
        #[arg(long, default_value = "triangle")]
        lambda: LambdaFunction,
        /// Shape the contour came from; the edge estimator then projects
        /// points onto it and aims at its center
        #[arg(long)]
        shape: Option<ConvexShape>,
    },
    /// Sweep grid steps and write per-step statistics
    Experiment {
        #[arg(long, default_value = "disk:0,0,1")]
        shape: ConvexShape,
        #[arg(long, default_value = "2^-4..2^-14")]
        hs: String,
        #[arg(long, default_value = "lmst")]
        estimator: String,
        #[arg(long, default_value = "triangle")]
        lambda: LambdaFunction,
        #[arg(long)]
        out: PathBuf,
        /// Also write `log10(1/h) log10(metric)` files per metric
        #[arg(long)]
        gnuplot: bool,
    },
    /// Log-log fit of a metric from an experiment file: `metric,exponent,stderr,r2`
    Fit {
        /// Metric name (tangent_error, n_edges, ms_len, ...) or `all`
        #[arg(long, default_value = "tangent_error")]
        metric: String,
        csv: PathBuf,
    },
}

fn read_contour(path: &PathBuf) -> Result<DigitalContour> {
    fs::read_to_string(path)?.parse()
}

fn run(cli: Cli) -> Result<()> {
    let mut out = io::stdout().lock();
    match cli.cmd {
        Cmd::Cf { fraction } => {
            let (p, q) = fraction
                .split_once('/')
                .and_then(|(p, q)| Some((p.trim().parse::<u64>().ok()?, q.trim().parse::<u64>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("expected p/q, got `{fraction}`")))?;
            let cf = ContinuedFraction::new(p, q)?;
            writeln!(out, "quotients: {cf}")?;
            writeln!(out, "k,p_k,q_k")?;
            for (k, pk, qk) in cf.convergents()?.rows() {
                writeln!(out, "{k},{pk},{qk}")?;
            }
            writeln!(out, "pattern: {}", cf.pattern()?)?;
        }
        Cmd::Digitize { shape, h, out: path, vertices } => {
            let h = parse_rational(&h)?;
            let contour = trace_border(&gauss_digitize(&shape, h)?)?;
            match path {
                Some(p) => fs::write(p, contour.to_string())?,
                None => write!(out, "{contour}")?,
            }
            if let Some(p) = vertices {
                fs::write(p, CdpVertices::from_contour(&contour)?.to_csv())?;
            }
        }
        Cmd::Maxsegs { contour } => {
            let c = read_contour(&contour)?;
            let n = c.len();
            writeln!(out, "first,last,a,b,mu,len")?;
            for m in maximal_segments(&c)? {
                let r = m.characteristics.reduced();
                writeln!(out, "{},{},{},{},{},{}", m.first, m.last(n), r.p, r.q, r.mu, m.len)?;
            }
        }
        Cmd::Tangent { contour, estimator, lambda, shape } => {
            let c = read_contour(&contour)?;
            writeln!(out, "index,angle")?;
            match Estimator::parse(&estimator, lambda)? {
                Estimator::Edge => {
                    let center = match &shape {
                        Some(s) => s.center(),
                        None => {
                            // centroid of the walk
                            let n = c.len().max(1) as i64;
                            let (si, sj) = c.points().iter().fold((0i64, 0i64), |(x, y), p| (x + p.i, y + p.j));
                            RationalPoint::new(Rational64::new(si, n) * c.h(), Rational64::new(sj, n) * c.h())
                        }
                    };
                    let ctx = EdgeContext::new(&c, center)?;
                    for (k, &p) in c.points().iter().enumerate() {
                        writeln!(out, "{k},{}", tangent_edge_at(&ctx, p).angle)?;
                    }
                }
                est => {
                    let cover = SegmentCover::new(&c)?;
                    for k in 0..c.len() {
                        let e = match est {
                            Estimator::LambdaMst(l) => tangent_lambda_mst(&cover, k, l),
                            _ => tangent_ms_most_centered(&cover, k),
                        };
                        writeln!(out, "{k},{}", e.angle)?;
                    }
                }
            }
        }
        Cmd::Experiment { shape, hs, estimator, lambda, out: path, gnuplot } => {
            let hlist = parse_h_list(&hs)?;
            let est = Estimator::parse(&estimator, lambda)?;
            let ex = run_experiment(&shape, &hlist, est)?;
            let mut meta = Metadata::default();
            meta.push("shape", shape);
            meta.push("hs", hs);
            meta.push("estimator", est.name());
            meta.push("lambda", est.lambda().map_or("none".to_string(), |l| l.to_string()));
            meta.push("projection", "radial from shape center");
            meta.push("version", env!("CARGO_PKG_VERSION"));
            let skipped: Vec<String> = ex.skipped.iter().map(|(h, why)| format!("{h}: {why}")).collect();
            meta.push("skipped", skipped.join("; "));
            let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            meta.push("timestamp", now);
            emit_csv(&path, &meta, &ex.records)?;
            if gnuplot {
                for p in write_gnuplot(&path, &ex.records)? {
                    log::info!("wrote {}", p.display());
                }
            }
        }
        Cmd::Fit { metric, csv } => {
            let (_, records) = read_csv(&csv)?;
            let metrics = if metric == "all" { Metric::ALL.to_vec() } else { vec![metric.parse()?] };
            let fits = metrics.into_iter().map(|m| fit_loglog(&records, m)).collect::<Result<Vec<_>>>()?;
            emit_fit_csv(&mut out, &fits)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        // reader went away (e.g. `| head`)
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
