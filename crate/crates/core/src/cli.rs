//! The `hcube` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 for usage
//! errors and rejected parameters. Diagnostics go to the error stream.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::cube::{canonicalize, square_score, verify_cube, CubeTuple};
use crate::ecurve::{build_curve_a1a2, build_curve_e, dependency, pullback_2p0, torsion_order, CurveModel, CurvePoint};
use crate::families::{family_a1a2, family_general, family_near4, family_same_prefix, family_t, family_triangular};
use crate::poly::{verify_identity, Identity};
use crate::record::OutputRecord;
use crate::search::{count_tables, extend4_scan, fit_power_law, search_cubes, SearchConfig};

#[derive(Parser, Debug)]
#[command(name = "hcube", version, about = "Hilbert cubes in the squares")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check that all subset sums of (a0; a1, ..., ad) are squares.
    Verify {
        #[arg(allow_negative_numbers = true, required = true, num_args = 2..)]
        entries: Vec<BigInt>,
    },
    /// Exhaustive search, one JSON record per cube.
    Search {
        #[arg(long)]
        a0_max: Option<u64>,
        #[arg(long)]
        a1_max: Option<u64>,
        #[arg(long)]
        entry_max: Option<u64>,
        #[arg(long)]
        reduced: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Print N,H3,C3 rows.
    Count {
        #[arg(long, value_delimiter = ',')]
        thresholds: Vec<u64>,
        /// Geometric grid of N up to --max, with a header line.
        #[arg(long)]
        plot: bool,
        #[arg(long, default_value_t = 1 << 19)]
        max: u64,
        #[arg(long, default_value_t = 4)]
        per_octave: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Evaluate a parametric family and verify the result.
    Family {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(allow_negative_numbers = true)]
        params: Vec<BigInt>,
    },
    /// Expand and check the polynomial identities (all when none named).
    Identity {
        names: Vec<String>,
        /// Also print every square witness.
        #[arg(long)]
        verbose: bool,
    },
    /// Points and torsion checks on one of the cubic models.
    Curve {
        #[arg(value_enum)]
        model: CurveName,
        #[arg(allow_negative_numbers = true)]
        params: Vec<BigInt>,
    },
    /// Score (a0; a1, a2, a3, X) over a range of X.
    Extend4 {
        #[arg(allow_negative_numbers = true, num_args = 4)]
        base: Vec<BigInt>,
        #[arg(long, allow_negative_numbers = true)]
        x_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        x_max: i64,
        #[arg(long, default_value_t = 12)]
        min_score: usize,
    },
    /// Fit y = a * x^b on log-log axes; prints a,b.
    Fit {
        /// Points as x:y pairs.
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        /// CSV file with x in the first column, e.g. the output of count.
        #[arg(long)]
        file: Option<PathBuf>,
        /// 1-based CSV column holding y.
        #[arg(long, default_value_t = 2)]
        column: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyName {
    General,
    T,
    A1a2,
    Pair,
    Triangular,
    Near4,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CurveName {
    E,
    A1a2,
}

#[derive(Debug)]
enum Exit {
    Usage(String),
    Failed(String),
}

type Out<'a> = &'a mut dyn Write;

/// Runs one command; `args` excludes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("hcube".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(()) => 0,
        Err(Exit::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Exit::Failed(m)) => {
            let _ = writeln!(err, "{m}");
            1
        }
    }
}

fn io(e: std::io::Error) -> Exit {
    Exit::Failed(format!("write failed: {e}"))
}

fn dispatch(cmd: Cmd, out: Out) -> Result<(), Exit> {
    match cmd {
        Cmd::Verify { entries } => verify(&entries, out),
        Cmd::Search {
            a0_max,
            a1_max,
            entry_max,
            reduced,
            threads,
            checkpoint,
        } => {
            let mut cfg = match (a0_max, a1_max, entry_max) {
                (None, None, None) => return Err(Exit::Usage("give --entry-max or --a0-max with --a1-max".into())),
                (a0, a1, Some(e)) => SearchConfig {
                    a0_max: a0.unwrap_or(e),
                    a1_max: a1.unwrap_or(e),
                    ..SearchConfig::with_entry_max(e)
                },
                (Some(a0), Some(a1), None) => SearchConfig::new(a0, a1),
                _ => return Err(Exit::Usage("--a0-max and --a1-max go together".into())),
            };
            cfg = cfg.reduced_only(reduced).workers(threads);
            if let Some(p) = checkpoint {
                cfg = cfg.checkpoint(p);
            }
            let recs = search_cubes(&cfg).map_err(|e| Exit::Usage(e.to_string()))?;
            for r in &recs {
                writeln!(out, "{}", OutputRecord::from_search(r).to_line()).map_err(io)?;
            }
            Ok(())
        }
        Cmd::Count {
            thresholds,
            plot,
            max,
            per_octave,
            threads,
        } => {
            let ns = if plot {
                if per_octave == 0 {
                    return Err(Exit::Usage("--per-octave must be positive".into()));
                }
                plot_grid(max, per_octave)
            } else if thresholds.is_empty() {
                return Err(Exit::Usage("give --thresholds or --plot".into()));
            } else {
                thresholds
            };
            let rows = count_tables(&ns, threads).map_err(|e| Exit::Usage(e.to_string()))?;
            if plot {
                writeln!(out, "N,H3,C3").map_err(io)?;
            }
            for r in rows {
                writeln!(out, "{},{},{}", r.n, r.h3, r.c3).map_err(io)?;
            }
            Ok(())
        }
        Cmd::Family { family, params } => run_family(family, &params, out),
        Cmd::Identity { names, verbose } => run_identity(&names, verbose, out),
        Cmd::Curve { model, params } => run_curve(model, &params, out),
        Cmd::Extend4 {
            base,
            x_min,
            x_max,
            min_score,
        } => {
            let t = CubeTuple::new(base[0].clone(), base[1..].iter().cloned());
            for (x, s) in extend4_scan(&t, x_min, x_max, min_score) {
                writeln!(out, "{x},{s}").map_err(io)?;
            }
            Ok(())
        }
        Cmd::Fit { points, file, column } => {
            let mut pts = Vec::new();
            for p in &points {
                let (x, y) = p.split_once(':').ok_or_else(|| Exit::Usage(format!("point {p:?} is not x:y")))?;
                pts.push((parse_f(x)?, parse_f(y)?));
            }
            if let Some(path) = file {
                let text = std::fs::read_to_string(&path).map_err(|e| Exit::Usage(format!("{}: {e}", path.display())))?;
                pts.extend(csv_points(&text, column)?);
            }
            let (a, b) = fit_power_law(&pts).map_err(|e| Exit::Usage(e.to_string()))?;
            writeln!(out, "{},{}", sig12(a), sig12(b)).map_err(io)
        }
    }
}

fn verify(entries: &[BigInt], out: Out) -> Result<(), Exit> {
    let t = CubeTuple::new(entries[0].clone(), entries[1..].iter().cloned());
    match OutputRecord::from_cube(&t) {
        Ok(r) => writeln!(out, "{}", r.to_line()).map_err(io),
        Err(f) => Err(Exit::Failed(format!("not a cube: {f}"))),
    }
}

/// `2^(k / per_octave)` rounded, from 2^10 up to `max`, without repeats.
fn plot_grid(max: u64, per_octave: u32) -> Vec<u64> {
    let mut ns = Vec::new();
    let mut k = 10 * per_octave;
    loop {
        let n = 2f64.powf(k as f64 / per_octave as f64).round() as u64;
        if n > max {
            break;
        }
        if ns.last() != Some(&n) {
            ns.push(n);
        }
        k += 1;
    }
    ns
}

fn parse_f(s: &str) -> Result<f64, Exit> {
    s.trim().parse().map_err(|_| Exit::Usage(format!("{s:?} is not a number")))
}

/// Rows whose first field is not numeric (headers) are skipped.
fn csv_points(text: &str, column: usize) -> Result<Vec<(f64, f64)>, Exit> {
    if column < 2 {
        return Err(Exit::Usage("--column must be at least 2".into()));
    }
    let mut pts = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        let Ok(x) = fields[0].trim().parse::<f64>() else {
            continue;
        };
        let y = fields
            .get(column - 1)
            .ok_or_else(|| Exit::Usage(format!("row {line:?} has no column {column}")))?;
        pts.push((x, parse_f(y)?));
    }
    Ok(pts)
}

/// Twelve significant digits, positional notation.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn need(params: &[BigInt], n: usize, what: &str) -> Result<(), Exit> {
    if params.len() == n {
        Ok(())
    } else {
        Err(Exit::Usage(format!("{what} takes {n} parameters, got {}", params.len())))
    }
}

fn report_cube(label: &str, t: &CubeTuple, out: Out) -> Result<bool, Exit> {
    writeln!(out, "{label} {t}").map_err(io)?;
    match verify_cube(t) {
        Ok(w) => {
            let roots: Vec<String> = w.roots.iter().map(ToString::to_string).collect();
            writeln!(out, "  squares [{}]", roots.join(", ")).map_err(io)?;
            if let Ok(c) = canonicalize(t) {
                let tag = if c.degenerate {
                    "degenerate"
                } else if c.reduced {
                    "reduced"
                } else {
                    "not reduced"
                };
                writeln!(out, "  canonical {} ({tag}, scale {})", c.cube, c.scale).map_err(io)?;
            }
            Ok(true)
        }
        Err(f) => {
            writeln!(out, "  not a cube: {f}").map_err(io)?;
            Ok(false)
        }
    }
}

fn run_family(family: FamilyName, p: &[BigInt], out: Out) -> Result<(), Exit> {
    let ok = match family {
        FamilyName::General => {
            need(p, 4, "general")?;
            report_cube("cube", &family_general(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()), out)?
        }
        FamilyName::T => {
            need(p, 1, "t")?;
            report_cube("cube", &family_t(p[0].clone()), out)?
        }
        FamilyName::A1a2 => {
            need(p, 2, "a1a2")?;
            report_cube("cube", &family_a1a2(p[0].clone(), p[1].clone()), out)?
        }
        FamilyName::Pair => {
            need(p, 2, "pair")?;
            let (a, b) = family_same_prefix(p[0].clone(), p[1].clone());
            let first = report_cube("first", &a, out)?;
            report_cube("second", &b, out)? && first
        }
        FamilyName::Triangular => {
            need(p, 1, "triangular")?;
            let t = family_triangular(p[0].clone());
            writeln!(out, "cube {}", t.cube).map_err(io)?;
            let idx: Vec<String> = t
                .indices
                .iter()
                .map(|m| m.as_ref().map_or("-".to_string(), ToString::to_string))
                .collect();
            writeln!(out, "  triangular indices [{}]", idx.join(", ")).map_err(io)?;
            t.all_triangular()
        }
        FamilyName::Near4 => {
            need(p, 1, "near4")?;
            let n = family_near4(p[0].clone());
            writeln!(out, "tuple {}", n.tuple).map_err(io)?;
            writeln!(out, "  scaled by 4: {}", n.scaled).map_err(io)?;
            let misses: Vec<String> = n.score.misses.iter().map(|&m| mask_name(m)).collect();
            writeln!(out, "  score {}/16, non-square: {}", n.score.squares, misses.join(" ")).map_err(io)?;
            true
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Exit::Failed("verification failed".into()))
    }
}

fn mask_name(mask: usize) -> String {
    let mut s = "a0".to_string();
    for i in 0..usize::BITS as usize {
        if mask >> i & 1 == 1 {
            s.push_str(&format!("+a{}", i + 1));
        }
    }
    s
}

fn run_identity(names: &[String], verbose: bool, out: Out) -> Result<(), Exit> {
    let ids: Vec<Identity> = if names.is_empty() {
        Identity::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse().map_err(Exit::Usage)).collect::<Result<_, _>>()?
    };
    let mut failed = Vec::new();
    for id in ids {
        match verify_identity(id) {
            Ok(r) => {
                writeln!(out, "{id}: ok, {} square sums, {} zero residuals", r.squares.len(), r.zeros.len()).map_err(io)?;
                if verbose {
                    for s in &r.squares {
                        writeln!(out, "  {} = ({})^2 / ({})", s.label, s.witness, s.denominator).map_err(io)?;
                    }
                    for z in &r.zeros {
                        writeln!(out, "  {} = {}", z.label, z.residual).map_err(io)?;
                    }
                }
            }
            Err(e) => {
                writeln!(out, "{id}: FAILED, {e}").map_err(io)?;
                failed.push(id.to_string());
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Exit::Failed(format!("identities failed: {}", failed.join(", "))))
    }
}

fn point_line(name: &str, p: &CurvePoint, curve: &CurveModel, out: Out) -> Result<Option<u32>, Exit> {
    let order = torsion_order(p, curve, 16);
    let o = order.map_or("none up to 16".to_string(), |k| k.to_string());
    writeln!(out, "{name} = {p}, order {o}").map_err(io)?;
    Ok(order)
}

fn model_line(curve: &CurveModel, out: Out) -> Result<(), Exit> {
    let (a, b, c) = curve.coefficients();
    writeln!(out, "Y^2 = X^3 + ({a})*X^2 + ({b})*X + ({c})").map_err(io)
}

fn run_curve(model: CurveName, p: &[BigInt], out: Out) -> Result<(), Exit> {
    let mut ok = true;
    match model {
        CurveName::E => {
            need(p, 3, "curve e (u x z)")?;
            let e = build_curve_e(p[0].clone(), p[1].clone(), p[2].clone()).map_err(|e| Exit::Usage(e.to_string()))?;
            model_line(&e.curve, out)?;
            ok &= point_line("Q0", &e.q0, &e.curve, out)? == Some(4);
            ok &= point_line("Q1", &e.q1, &e.curve, out)?.is_none();
            ok &= point_line("Q2", &e.q2, &e.curve, out)?.is_none();
            let dep = dependency(&e.q1, &e.q2, &e.curve, 5, 16);
            match dep {
                None => writeln!(out, "no torsion combination i*Q1 + j*Q2 with |i|, |j| <= 5"),
                Some((i, j)) => writeln!(out, "torsion combination {i}*Q1 + {j}*Q2"),
            }
            .map_err(io)?;
            ok &= dep.is_none();
        }
        CurveName::A1a2 => {
            need(p, 2, "curve a1a2 (c d)")?;
            let m = build_curve_a1a2(p[0].clone(), p[1].clone()).map_err(|e| Exit::Usage(e.to_string()))?;
            model_line(&m.curve, out)?;
            ok &= point_line("P0", &m.p0, &m.curve, out)?.is_none();
            ok &= point_line("P1", &m.p1, &m.curve, out)? == Some(4);
            match pullback_2p0(p[0].clone(), p[1].clone()) {
                Ok((abru, cube)) => {
                    let s: Vec<String> = abru.iter().map(ToString::to_string).collect();
                    writeln!(out, "2*P0 pulls back to (a, b, r, u) = ({})", s.join(", ")).map_err(io)?;
                    writeln!(out, "cube {cube}, score {}/8", square_score(&cube).squares).map_err(io)?;
                }
                Err(e) => {
                    writeln!(out, "pullback failed: {e}").map_err(io)?;
                    ok = false;
                }
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Exit::Failed("curve check failed".into()))
    }
}
