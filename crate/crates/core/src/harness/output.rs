use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_rational::Rational64;

use super::{ConvergenceRecord, FitResult, Metric};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "h",
    "n_points",
    "n_edges",
    "n_maxsegs",
    "mean_abs_err",
    "std_err",
    "mean_q_over_l",
    "std_q_over_l",
    "mean_delta",
    "std_delta",
    "mean_ms_len",
    "max_loc_ratio",
];

/// Ordered `#key=value` lines heading an experiment file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata(pub Vec<(String, String)>);

impl Metadata {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn create(path: &Path) -> Result<fs::File> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(fs::File::create(path)?)
}

fn row(r: &ConvergenceRecord) -> [String; 12] {
    [
        r.h_f64().to_string(),
        r.n_points.to_string(),
        r.n_edges.to_string(),
        r.n_maxsegs.to_string(),
        r.mean_abs_tangent_error.to_string(),
        r.std_tangent_error.to_string(),
        r.mean_q_over_l.to_string(),
        r.std_q_over_l.to_string(),
        r.mean_delta.to_string(),
        r.std_delta.to_string(),
        r.mean_ms_digital_length.to_string(),
        r.max_localization_gap_ratio.to_string(),
    ]
}

/// Writes metadata comments, the header and one row per record.
pub fn emit_csv(path: &Path, meta: &Metadata, records: &[ConvergenceRecord]) -> Result<()> {
    let mut file = create(path)?;
    for (k, v) in &meta.0 {
        writeln!(file, "#{k}={v}")?;
    }
    let mut w = csv::Writer::from_writer(file);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(row(r))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a file written by [`emit_csv`].
pub fn read_csv(path: &Path) -> Result<(Metadata, Vec<ConvergenceRecord>)> {
    let text = fs::read_to_string(path)?;
    let mut meta = Metadata::default();
    for line in text.lines().filter_map(|l| l.strip_prefix('#')) {
        let (k, v) = line.split_once('=').unwrap_or((line, ""));
        meta.push(k, v);
    }
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    if rd.headers()?.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(Error::Parse(format!("{}: unexpected header", path.display())));
    }
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let bad = |col: &str| Error::Parse(format!("{}: bad value in column {col}", path.display()));
        let f = |i: usize| -> Result<f64> { rec[i].parse().map_err(|_| bad(CSV_HEADER[i])) };
        let u = |i: usize| -> Result<usize> { rec[i].parse().map_err(|_| bad(CSV_HEADER[i])) };
        let h = Rational64::approximate_float(f(0)?).ok_or_else(|| bad("h"))?;
        out.push(ConvergenceRecord {
            h,
            n_points: u(1)?,
            n_edges: u(2)?,
            n_maxsegs: u(3)?,
            mean_abs_tangent_error: f(4)?,
            std_tangent_error: f(5)?,
            mean_q_over_l: f(6)?,
            std_q_over_l: f(7)?,
            mean_delta: f(8)?,
            std_delta: f(9)?,
            mean_ms_digital_length: f(10)?,
            max_localization_gap_ratio: f(11)?,
        });
    }
    Ok((meta, out))
}

/// `metric,exponent,stderr,r2` rows.
pub fn emit_fit_csv(out: impl Write, fits: &[FitResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["metric", "exponent", "stderr", "r2"])?;
    for f in fits {
        w.write_record([f.metric.name().to_string(), f.exponent.to_string(), f.stderr.to_string(), f.r2.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `<stem>.<metric>.dat` next to `csv_path` for every metric, with
/// `log10(1/h) log10(metric)` lines; nonpositive values are left out.
pub fn write_gnuplot(csv_path: &Path, records: &[ConvergenceRecord]) -> Result<Vec<PathBuf>> {
    let stem = csv_path.file_stem().and_then(|s| s.to_str()).unwrap_or("experiment");
    let mut written = Vec::new();
    for m in Metric::ALL {
        let path = csv_path.with_file_name(format!("{stem}.{}.dat", m.name()));
        let mut file = create(&path)?;
        writeln!(file, "# log10(1/h) log10({})", m.name())?;
        for r in records {
            let v = m.value(r);
            if v > 0.0 {
                writeln!(file, "{} {}", (1.0 / r.h_f64()).log10(), v.log10())?;
            }
        }
        written.push(path);
    }
    Ok(written)
}
