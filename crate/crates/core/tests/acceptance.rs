//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test --release --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use digital_tangents::arithmetic::{pattern_of, ContinuedFraction};
use digital_tangents::dss::{dss_oracle, maximal_segments, DssRecognizer, MaximalSegment};
use digital_tangents::estimators::{check_localization_bound, EdgeContext, Estimator, LambdaFunction};
use digital_tangents::harness::{fit_loglog, parse_h_list, run_experiment, ConvergenceRecord, Metric};
use digital_tangents::lattice::{
    digital_edges, gauss_digitize, trace_border, CdpVertices, DigitalContour, LatticePoint,
};
use digital_tangents::shapes::{ConvexShape, RationalPoint};
use num_integer::Integer;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    check(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn disk_contour(den: i64) -> DigitalContour {
    trace_border(&gauss_digitize(&ConvexShape::unit_disk(), Rational64::new(1, den)).unwrap()).unwrap()
}

// Euclid on p/q, independent of the library: partial quotients and convergents from k = -1.
fn convergents(p: u64, q: u64) -> (Vec<u64>, Vec<(u64, u64)>) {
    let (mut a, mut b) = (p, q);
    let mut u = Vec::new();
    while b != 0 {
        u.push(a / b);
        (a, b) = (b, a % b);
    }
    let mut rows = vec![(1u64, 0u64), (0, 1)];
    for &uk in &u[1..] {
        let (p1, q1) = rows[rows.len() - 1];
        let (p2, q2) = rows[rows.len() - 2];
        rows.push((uk * p1 + p2, uk * q1 + q2));
    }
    (u, rows)
}

fn c1_continued_fractions() -> Outcome {
    let start = Instant::now();
    let cf = ContinuedFraction::new(10, 23).map_err(|e| e.to_string())?;
    check(cf.partial_quotients() == [0, 2, 3, 3], || format!("10/23 gave {cf}"))?;
    let table = cf.convergents().map_err(|e| e.to_string())?;
    let got: Vec<(u64, u64)> = (1..=3).map(|k| table.get(k).unwrap()).collect();
    check(got == [(1, 2), (3, 7), (10, 23)], || format!("convergents {got:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let (p, q) = loop {
            let q = rng.gen_range(1..=1_000_000u64);
            let p = rng.gen_range(0..=q);
            if p.gcd(&q) == 1 {
                break (p, q);
            }
        };
        let table = ContinuedFraction::new(p, q).and_then(|c| c.convergents()).map_err(|e| e.to_string())?;
        let (_, rows) = convergents(p, q);
        check(table.last() == (p, q), || format!("{p}/{q}: last convergent {:?}", table.last()))?;
        for k in 1..=table.depth() as i64 {
            let (pk, qk) = table.get(k).unwrap();
            let (pk1, qk1) = table.get(k - 1).unwrap();
            check((pk, qk) == rows[k as usize + 1], || format!("{p}/{q}: convergent {k}"))?;
            let det = pk as i128 * qk1 as i128 - pk1 as i128 * qk as i128;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            check(det == sign, || format!("{p}/{q}: identity fails at k = {k} ({det})"))?;
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("[0;2,3,3], (1,2),(3,7),(10,23); identity on 10000 fractions in {t:.2?}"))
}

fn c2_patterns() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for q in 1..=200u64 {
        for p in 0..=q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let w = pattern_of(p, q).map_err(|e| e.to_string())?;
            let ones = w.letters().iter().filter(|&&c| c == 1).count() as u64;
            check(w.len() as u64 == p + q && ones == p, || {
                format!("E({p}/{q}) has length {} and {ones} ones", w.len())
            })?;
            count += 1;
        }
    }
    let e = pattern_of(10, 23).map_err(|e| e.to_string())?.to_string();
    let expected = "0001001001".repeat(3) + "001";
    check(e == expected, || format!("E(10/23) = {e}"))?;
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("{count} patterns; E(10/23) = {e} in {t:.2?}"))
}

fn random_disk_contour(rng: &mut ChaCha8Rng) -> DigitalContour {
    loop {
        let center =
            RationalPoint::new(Rational64::new(rng.gen_range(0..97), 97), Rational64::new(rng.gen_range(0..89), 89));
        let radius = Rational64::new(rng.gen_range(21..=210), 7);
        let shape = ConvexShape::disk(center, radius).unwrap();
        if let Ok(c) = gauss_digitize(&shape, Rational64::from_integer(1)).and_then(|s| trace_border(&s)) {
            return c;
        }
    }
}

fn c3_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut accepted, mut rejected) = (0u64, 0u64);
    for _ in 0..200 {
        let c = random_disk_contour(&mut rng);
        for s in 0..c.len() as i64 {
            let pts: Vec<LatticePoint> = (0..20).map(|k| c.point(s + k)).collect();
            let mut rec = DssRecognizer::new(pts[0]);
            for len in 1..=20 {
                let oracle = dss_oracle(&pts[..len]).map_err(|e| e.to_string())?;
                let ok = len == 1 || rec.extend_front(pts[len - 1]).map_err(|e| e.to_string())?;
                check(ok == oracle.is_some(), || {
                    format!("start {s}, length {len}: recognizer {ok}, oracle {oracle:?}")
                })?;
                let Some(o) = oracle else {
                    // every longer subpath contains this one, so it is rejected too
                    rejected += 1;
                    break;
                };
                let r = rec.characteristics();
                check((r.a, r.b, r.mu) == (o.a, o.b, o.mu), || {
                    format!(
                        "start {s}, length {len}: ({}, {}, {}) vs oracle ({}, {}, {})",
                        r.a, r.b, r.mu, o.a, o.b, o.mu
                    )
                })?;
                accepted += 1;
            }
        }
    }
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!("{accepted} accepted and {rejected} rejected subpaths agree in {t:.2?}"))
}

fn span(c: &DigitalContour, m: &MaximalSegment, back: i64, front: i64) -> Vec<LatticePoint> {
    (m.first as i64 - back..m.first as i64 + m.len as i64 + front).map(|k| c.point(k)).collect()
}

fn c4_maximal_segments() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for den in [8, 16, 32] {
        let c = disk_contour(den);
        let ms = maximal_segments(&c).map_err(|e| e.to_string())?;
        let mut covered = vec![false; c.len()];
        for m in &ms {
            let ctx = || format!("h = 1/{den}, segment at {} of length {}", m.first, m.len);
            check(dss_oracle(&span(&c, m, 0, 0)).map_err(|e| e.to_string())?.is_some(), || {
                format!("{} is not a DSS", ctx())
            })?;
            check(dss_oracle(&span(&c, m, 1, 0)).map_err(|e| e.to_string())?.is_none(), || {
                format!("{} extends back", ctx())
            })?;
            check(dss_oracle(&span(&c, m, 0, 1)).map_err(|e| e.to_string())?.is_none(), || {
                format!("{} extends forward", ctx())
            })?;
            for k in 0..m.len {
                covered[(m.first + k) % c.len()] = true;
            }
        }
        check(covered.iter().all(|&b| b), || format!("h = 1/{den}: contour not covered"))?;
        total += ms.len();
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("{total} segments checked in {t:.2?}"))
}

// The eight lattice symmetries.
fn symmetries() -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::new();
    for swap in [false, true] {
        for sx in [1, -1] {
            for sy in [1, -1] {
                out.push(if swap { [[0, sx], [sy, 0]] } else { [[sx, 0], [0, sy]] });
            }
        }
    }
    out
}

fn apply(g: &[[i64; 2]; 2], (x, y): (i64, i64)) -> (i64, i64) {
    (g[0][0] * x + g[0][1] * y, g[1][0] * x + g[1][1] * y)
}

fn c5_edge_containment() -> Outcome {
    let mut checked = 0;
    for den in [16, 64, 256] {
        let c = disk_contour(den);
        let n = c.len();
        let edges =
            digital_edges(&c, &CdpVertices::from_contour(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for m in maximal_segments(&c).map_err(|e| e.to_string())? {
            let o =
                dss_oracle(&span(&c, &m, 0, 0)).map_err(|e| e.to_string())?.ok_or("maximal segment is not a DSS")?;
            let dir = (o.b, o.a);
            // first-octant slope p/q, its previous convergent, and every symmetry
            // taking the first-octant direction back to the segment's
            let (q, p) = (dir.0.abs().max(dir.1.abs()), dir.0.abs().min(dir.1.abs()));
            let (_, rows) = convergents(p as u64, q as u64);
            let (pp, qp) = rows[rows.len() - 2];
            let mut allowed = vec![dir];
            for g in symmetries() {
                if apply(&g, (q, p)) == dir {
                    allowed.push(apply(&g, (qp as i64, pp as i64)));
                }
            }
            let found = edges.iter().any(|e| {
                let (dx, dy) = (e.to_vertex.i - e.from_vertex.i, e.to_vertex.j - e.from_vertex.j);
                let g = dx.gcd(&dy);
                let off = (e.span.0 + n - m.first) % n;
                off + (e.span.1 - e.span.0) < m.len && allowed.contains(&(dx / g, dy / g))
            });
            check(found, || format!("h = 1/{den}: segment at {} (slope {p}/{q}) holds no admissible edge", m.first))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} maximal segments, 0 violations"))
}

fn c6_localization() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for text in ["disk:0,0,1", "ellipse:0,0,2,1,0"] {
        let shape: ConvexShape = text.parse().unwrap();
        for den in [16, 64, 256] {
            let c = trace_border(&gauss_digitize(&shape, Rational64::new(1, den)).unwrap()).unwrap();
            let ctx = EdgeContext::new(&c, shape.center()).map_err(|e| e.to_string())?;
            for e in &ctx.edges {
                let r = check_localization_bound(&shape, e, 1.0 / den as f64).map_err(|e| e.to_string())?;
                check(r.ratio() <= 1.0, || format!("{text} h = 1/{den}: ratio {} on {e:?}", r.ratio()))?;
                worst = worst.max(r.ratio());
                count += 1;
            }
        }
    }
    Ok(format!("{count} edges, max ratio {worst:.4}"))
}

struct Sweep {
    lmst: Vec<ConvergenceRecord>,
    edge: Vec<ConvergenceRecord>,
    elapsed: Duration,
}

fn sweep() -> Result<Sweep, String> {
    let start = Instant::now();
    let hs = parse_h_list("2^-4..2^-14").map_err(|e| e.to_string())?;
    let disk = ConvexShape::unit_disk();
    let lmst = run_experiment(&disk, &hs, Estimator::LambdaMst(LambdaFunction::Triangle)).map_err(|e| e.to_string())?;
    let edge = run_experiment(&disk, &hs, Estimator::Edge).map_err(|e| e.to_string())?;
    check(lmst.records.len() == 11 && edge.records.len() == 11, || "steps were skipped".into())?;
    Ok(Sweep { lmst: lmst.records, edge: edge.records, elapsed: start.elapsed() })
}

fn c7_exponents(s: &Sweep) -> Outcome {
    check(s.elapsed < Duration::from_secs(120), || format!("sweep took {:.2?}", s.elapsed))?;
    let fit = |r: &[ConvergenceRecord], m| fit_loglog(r, m).map(|f| f.exponent).map_err(|e| e.to_string());
    let lmst = fit(&s.lmst, Metric::TangentError)?;
    let edge = fit(&s.edge, Metric::TangentError)?;
    let ne = fit(&s.lmst, Metric::NEdges)?;
    let ms = fit(&s.lmst, Metric::MsLength)?;
    let inside = |x: f64, lo: f64, hi: f64| (lo..=hi).contains(&x);
    let msg =
        format!("error lmst {lmst:.3}, edge {edge:.3}; n_edges {ne:.3}; ms length {ms:.3}; sweep {:.2?}", s.elapsed);
    check(
        inside(lmst, 0.55, 0.85) && inside(edge, 0.55, 0.85) && inside(ne, 0.60, 0.75) && inside(ms, 0.23, 0.43),
        || msg.clone(),
    )?;
    Ok(msg)
}

fn c8_digital_parameters(s: &Sweep) -> Outcome {
    let last = &s.lmst[s.lmst.len() - 4..];
    let deltas: Vec<f64> = last.iter().map(|r| r.mean_delta).collect();
    let ql: Vec<f64> = last.iter().map(|r| r.mean_q_over_l).collect();
    let spread = ql.iter().cloned().fold(f64::MIN, f64::max) / ql.iter().cloned().fold(f64::MAX, f64::min);
    let msg = format!("mean delta {deltas:.3?}; q/l {ql:.3?}, spread x{spread:.3}");
    check(deltas.iter().all(|&d| d < 4.0) && spread < 1.5, || msg.clone())?;
    Ok(msg)
}

fn c9_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<String, String> {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_dtan"))
            .args(["experiment", "--shape", "disk:0,0,1", "--hs", "2^-4..2^-11", "--estimator", "lmst"])
            .args(["--lambda", "triangle", "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        check(status.success(), || format!("experiment exited with {status}"))?;
        let text = std::fs::read_to_string(Path::new(&out)).map_err(|e| e.to_string())?;
        Ok(text.lines().filter(|l| !l.starts_with("#timestamp=")).collect::<Vec<_>>().join("\n"))
    };
    let (a, b) = (run("a.csv")?, run("b.csv")?);
    check(a == b, || "outputs differ".into())?;
    Ok(format!("{} identical bytes outside the timestamp line", a.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, r: Outcome| match r {
        Ok(detail) => println!("PASS {n} {name}: {detail}"),
        Err(why) => {
            failed += 1;
            println!("FAIL {n} {name}: {why}");
        }
    };
    report(1, "continued fractions", c1_continued_fractions());
    report(2, "patterns", c2_patterns());
    report(3, "recognizer vs oracle", c3_oracle_equivalence());
    report(4, "maximal segments", c4_maximal_segments());
    report(5, "edge containment", c5_edge_containment());
    report(6, "localization bound", c6_localization());
    match sweep() {
        Ok(s) => {
            report(7, "convergence exponents", c7_exponents(&s));
            report(8, "digital parameters", c8_digital_parameters(&s));
        }
        Err(e) => {
            report(7, "convergence exponents", Err(e.clone()));
            report(8, "digital parameters", Err(e));
        }
    }
    report(9, "determinism", c9_determinism());
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
