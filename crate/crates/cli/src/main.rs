//! Command-line front end: evaluate p-adic and group expressions, compute
//! measures and distances, run the formal-calculus operators, and execute
//! the seeded property suites with machine-readable reports.

mod parse;
mod report;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use padic_heis::calculus::{
    dilation_pullback, heis_var_names, horizontal_ode_solve, invariant_derivative,
    left_translate_concrete, left_translate_symbolic, parse_poly, parse_rational_text,
    DilationScalar, HeisVars,
};
use padic_heis::exact::PadicScalar;
use padic_heis::heis::HeisGroup;
use padic_heis::measure::{
    dilate_measure, dilation_image_count, finite_quotient_count, parse_cell, DilationMode,
};
use padic_heis::metric::{
    euclidean_rational_distance, gauge, integral_distance, left_invariant_distance, seq_distance,
    ultrametric_check, SeqPoint,
};
use padic_heis::Error;

use report::Report;

/// Seed used when none is given, so bare runs are reproducible.
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "padic-heis",
    about = "Exact p-adic arithmetic, Heisenberg-type groups, invariant ultrametrics, \
             Haar measures on cell algebras, and formal calculus",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// p-adic scalar arithmetic.
    Padic {
        #[command(subcommand)]
        op: PadicOp,
    },
    /// Heisenberg-type group operations.
    Heis {
        #[command(subcommand)]
        op: HeisOp,
    },
    /// The homogeneous gauge of a point.
    Gauge {
        #[arg(long)]
        group: String,
        point: String,
    },
    /// Distances: the left-invariant gauge metric, the bi-invariant
    /// integral ultranorm metric, or the sequence-space metric.
    Dist(DistArgs),
    /// Haar measure on p-adic cells.
    Measure {
        #[command(subcommand)]
        op: MeasureOp,
    },
    /// Formal calculus: derivations, translations, pullbacks, the ODE.
    Calc {
        #[command(subcommand)]
        op: CalcOp,
    },
    /// Seeded property suites.
    Check {
        /// all, padic, rings, groups, cocycles, h2, metric, measure,
        /// calculus, or ultrametric-control (a deliberate negative
        /// control on the Archimedean metric).
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: u64,
    },
}

#[derive(Subcommand)]
enum PadicOp {
    /// |x|_p of a rational.
    Abs {
        x: String,
        #[arg(short)]
        p: u64,
    },
    /// Encode a rational as a capped-precision scalar.
    From {
        x: String,
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 32)]
        k: u32,
    },
    /// Add two scalars in canonical text form.
    Add { a: String, b: String },
    /// Multiply two scalars in canonical text form.
    Mul { a: String, b: String },
    /// Invert a scalar in canonical text form.
    Inv { a: String },
}

#[derive(Subcommand)]
enum HeisOp {
    /// (w,s) ◇ (z,t).
    Mul {
        #[arg(long)]
        group: String,
        a: String,
        b: String,
    },
    /// Group inverse.
    Inv {
        #[arg(long)]
        group: String,
        a: String,
    },
    /// Conjugation w ◇ z ◇ w^{-1}.
    Conj {
        #[arg(long)]
        group: String,
        w: String,
        z: String,
    },
    /// Parabolic dilation δ_r.
    Dilate {
        #[arg(long)]
        group: String,
        #[arg(short)]
        r: String,
        a: String,
    },
    /// The group identity.
    Identity {
        #[arg(long)]
        group: String,
    },
}

#[derive(Args)]
struct DistArgs {
    #[arg(long)]
    metric: String,
    #[arg(long)]
    group: Option<String>,
    /// Alphabet size for the sequence metric.
    #[arg(long)]
    alphabet: Option<u32>,
    /// ρ in (0,1) for the sequence metric.
    #[arg(long)]
    rho: Option<String>,
    a: String,
    b: String,
}

#[derive(Subcommand)]
enum MeasureOp {
    /// μ of a cell `ball(c,j) x ball(c,j) x ...`.
    Cell {
        spec: String,
        #[arg(short)]
        p: u64,
    },
    /// Split a cell into congruent subcells of radius p^{-j}.
    Decompose {
        spec: String,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        j: i64,
    },
    /// Measure of a dilated cell, checked two ways.
    Dilate {
        #[arg(long)]
        cell: String,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        r: String,
        #[arg(long, default_value = "parabolic")]
        mode: String,
    },
    /// Counting measure on a finite group model.
    Count {
        #[arg(long)]
        group: String,
        /// Count the image of δ_r instead of the whole group.
        #[arg(long)]
        dilation_image: Option<String>,
    },
}

#[derive(Subcommand)]
enum CalcOp {
    /// The invariant derivation D_l(f).
    Deriv {
        #[arg(long)]
        group: String,
        #[arg(short)]
        l: usize,
        poly: String,
    },
    /// Left translation; symbolic (w, s) unless --point is given.
    Translate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        point: Option<String>,
        poly: String,
    },
    /// Dilation pullback δ_r^*; symbolic r unless --scalar is given.
    Dilate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scalar: Option<String>,
        poly: String,
    },
    /// Solve the horizontal ODE for the last coordinate.
    Ode {
        #[arg(long)]
        group: String,
        /// One polynomial in x per leading coordinate (repeat N times).
        #[arg(long)]
        phi: Vec<String>,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value = "0")]
        t0: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let cmd_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut report = Report::new(cmd_echo, cli.seed);
    let outcome = run(&cli, &mut report);
    report.timing_ms = started.elapsed().as_millis();
    let code = match outcome {
        Ok(()) => {
            if report.all_pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    if code != 2 {
        let body = match cli.format {
            Format::Json => report.to_json(),
            Format::Text => report.to_text(),
        };
        match &cli.output {
            Some(path) => {
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(2);
                }
            }
            None => {
                let mut stdout = std::io::stdout();
                let _ = stdout.write_all(body.as_bytes());
            }
        }
    }
    std::process::exit(code);
}

fn run(cli: &Cli, report: &mut Report) -> padic_heis::Result<()> {
    match &cli.command {
        Command::Padic { op } => run_padic(op, report),
        Command::Heis { op } => run_heis(op, report),
        Command::Gauge { group, point } => {
            let g = parse::parse_group(group)?;
            let pt = parse::parse_point(point, &g)?;
            let v = gauge(&g, &pt)?;
            report.value("result", v.to_string());
            Ok(())
        }
        Command::Dist(args) => run_dist(args, report),
        Command::Measure { op } => run_measure(op, report),
        Command::Calc { op } => run_calc(op, report),
        Command::Check { suite, samples } => run_check(suite, *samples, cli.seed, report),
    }
}

fn run_padic(op: &PadicOp, report: &mut Report) -> padic_heis::Result<()> {
    match op {
        PadicOp::Abs { x, p } => {
            let q = parse_rational_text(x)?;
            let a = padic_heis::exact::rational_padic_abs(&q, *p)?;
            report.value("result", a.to_string());
            report.value("rational", a.to_rational(*p).to_string());
        }
        PadicOp::From { x, p, k } => {
            let q = parse_rational_text(x)?;
            let s = PadicScalar::from_rational(&q, *p, *k)?;
            report.value("result", s.to_string());
        }
        PadicOp::Add { a, b } => {
            let (x, y) = (PadicScalar::parse(a)?, PadicScalar::parse(b)?);
            require_same_prime(&x, &y)?;
            report.value("result", x.add(&y).to_string());
        }
        PadicOp::Mul { a, b } => {
            let (x, y) = (PadicScalar::parse(a)?, PadicScalar::parse(b)?);
            require_same_prime(&x, &y)?;
            report.value("result", x.mul(&y).to_string());
        }
        PadicOp::Inv { a } => {
            let x = PadicScalar::parse(a)?;
            report.value("result", x.inv()?.to_string());
        }
    }
    Ok(())
}

fn require_same_prime(a: &PadicScalar, b: &PadicScalar) -> padic_heis::Result<()> {
    if a.prime() != b.prime() {
        return Err(Error::RingMismatch(format!(
            "operand primes {} and {} differ",
            a.prime(),
            b.prime()
        )));
    }
    Ok(())
}

fn run_heis(op: &HeisOp, report: &mut Report) -> padic_heis::Result<()> {
    match op {
        HeisOp::Mul { group, a, b } => {
            let g = parse::parse_group(group)?;
            let x = parse::parse_point(a, &g)?;
            let y = parse::parse_point(b, &g)?;
            report.value("result", parse::format_point(&g.mul(&x, &y)?));
        }
        HeisOp::Inv { group, a } => {
            let g = parse::parse_group(group)?;
            let x = parse::parse_point(a, &g)?;
            report.value("result", parse::format_point(&g.inv(&x)?));
        }
        HeisOp::Conj { group, w, z } => {
            let g = parse::parse_group(group)?;
            let wp = parse::parse_point(w, &g)?;
            let zp = parse::parse_point(z, &g)?;
            report.value("result", parse::format_point(&g.conj(&wp, &zp)?));
        }
        HeisOp::Dilate { group, r, a } => {
            let g = parse::parse_group(group)?;
            let scalar = parse::parse_elem(r, g.base_ring())?;
            let x = parse::parse_point(a, &g)?;
            report.value("result", parse::format_point(&g.dilate(&scalar, &x)?));
        }
        HeisOp::Identity { group } => {
            let g = parse::parse_group(group)?;
            report.value("result", parse::format_point(&g.identity()));
        }
    }
    Ok(())
}

fn run_dist(args: &DistArgs, report: &mut Report) -> padic_heis::Result<()> {
    match args.metric.as_str() {
        "gauge" => {
            let g = parse::parse_group(args.group.as_deref().ok_or_else(|| {
                Error::ParseError("--group is required for the gauge metric".into())
            })?)?;
            let a = parse::parse_point(&args.a, &g)?;
            let b = parse::parse_point(&args.b, &g)?;
            report.value("result", left_invariant_distance(&g, &a, &b)?.to_string());
        }
        "integral" => {
            let g = parse::parse_group(args.group.as_deref().ok_or_else(|| {
                Error::ParseError("--group is required for the integral metric".into())
            })?)?;
            let a = parse::parse_point(&args.a, &g)?;
            let b = parse::parse_point(&args.b, &g)?;
            report.value("result", integral_distance(&g, &a, &b)?.to_string());
        }
        "seq" => {
            let alphabet = args.alphabet.ok_or_else(|| {
                Error::ParseError("--alphabet is required for the sequence metric".into())
            })?;
            let rho = parse_rational_text(args.rho.as_deref().ok_or_else(|| {
                Error::ParseError("--rho is required for the sequence metric".into())
            })?)?;
            let parse_seq = |s: &str| -> padic_heis::Result<SeqPoint> {
                let symbols: Vec<u32> = s
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::ParseError(format!("bad symbol {c:?}")))
                    })
                    .collect::<padic_heis::Result<_>>()?;
                SeqPoint::new(alphabet, symbols)
            };
            let x = parse_seq(&args.a)?;
            let y = parse_seq(&args.b)?;
            report.value("result", seq_distance(&x, &y, &rho)?.to_string());
        }
        other => {
            return Err(Error::ParseError(format!(
                "unknown metric {other:?} (expected gauge, integral, or seq)"
            )))
        }
    }
    Ok(())
}

fn run_measure(op: &MeasureOp, report: &mut Report) -> padic_heis::Result<()> {
    match op {
        MeasureOp::Cell { spec, p } => {
            let cell = parse_cell(spec, *p)?;
            report.value("result", cell.measure().to_string());
        }
        MeasureOp::Decompose { spec, p, j } => {
            let cell = parse_cell(spec, *p)?;
            let parts = cell.decompose(*j)?;
            report.value("count", parts.len().to_string());
            report.value("total", parts.measure().to_string());
            report.value("piece", parts.cells()[0].measure().to_string());
        }
        MeasureOp::Dilate { cell, p, r, mode } => {
            let c = parse_cell(cell, *p)?;
            let scalar = PadicScalar::from_rational(&parse_rational_text(r)?, *p, 40)?;
            let mode = match mode.as_str() {
                "parabolic" => DilationMode::Parabolic,
                "scalar" => DilationMode::Scalar,
                other => {
                    return Err(Error::ParseError(format!(
                        "unknown mode {other:?} (expected parabolic or scalar)"
                    )))
                }
            };
            let res = dilate_measure(&c, &scalar, mode)?;
            report.value("measure", res.predicted_measure.to_string());
            if let Some(image) = &res.image {
                report.value("image", image.to_string());
            }
            report.verdict(
                "scaling-law-matches-direct-measure",
                res.predicted_measure == res.image_measure,
                None,
            );
        }
        MeasureOp::Count {
            group,
            dilation_image,
        } => {
            let g = parse::parse_group(group)?;
            let q = match dilation_image {
                Some(r) => {
                    let scalar = parse::parse_elem(r, g.base_ring())?;
                    dilation_image_count(&g, &scalar)?
                }
                None => finite_quotient_count(&g, &g.enumerate()?)?,
            };
            report.value("count", q.count.to_string());
            report.value("measure", q.normalized.to_string());
        }
    }
    Ok(())
}

fn calc_group(group: &str) -> padic_heis::Result<(HeisGroup, usize)> {
    let g = parse::parse_group(group)?;
    if g.form().is_none() {
        return Err(Error::UnsupportedForCocycleLaw);
    }
    let n = g.dim();
    Ok((g, n))
}

fn run_calc(op: &CalcOp, report: &mut Report) -> padic_heis::Result<()> {
    match op {
        CalcOp::Deriv { group, l, poly } => {
            let (g, n) = calc_group(group)?;
            let names = heis_var_names(n, false, false);
            let f = parse_poly(poly, &names, g.base_ring())?;
            let d =
                invariant_derivative(g.form().expect("bilinear"), &f, *l, HeisVars::standard(n))?;
            report.value("result", d.render(&names));
        }
        CalcOp::Translate { group, point, poly } => {
            let (g, n) = calc_group(group)?;
            let vars = HeisVars::standard(n);
            match point {
                Some(pt) => {
                    let names = heis_var_names(n, false, false);
                    let f = parse_poly(poly, &names, g.base_ring())?;
                    let p = parse::parse_point(pt, &g)?;
                    let lt =
                        left_translate_concrete(g.form().expect("bilinear"), &f, &p.z, &p.t, vars)?;
                    report.value("result", lt.render(&names));
                }
                None => {
                    let names = heis_var_names(n, true, false);
                    let f = parse_poly(poly, &names, g.base_ring())?;
                    let lt = left_translate_symbolic(
                        g.form().expect("bilinear"),
                        &f,
                        vars,
                        n + 1,
                        2 * n + 1,
                    )?;
                    report.value("result", lt.render(&names));
                }
            }
        }
        CalcOp::Dilate {
            group,
            scalar,
            poly,
        } => {
            let (g, n) = calc_group(group)?;
            let vars = HeisVars::standard(n);
            match scalar {
                Some(r) => {
                    let names = heis_var_names(n, false, false);
                    let f = parse_poly(poly, &names, g.base_ring())?;
                    let elem = parse::parse_elem(r, g.base_ring())?;
                    let pulled = dilation_pullback(&f, &DilationScalar::Concrete(elem), vars)?;
                    report.value("result", pulled.render(&names));
                }
                None => {
                    let names = heis_var_names(n, false, true);
                    let f = parse_poly(poly, &names, g.base_ring())?;
                    let pulled = dilation_pullback(&f, &DilationScalar::Symbolic(n + 1), vars)?;
                    report.value("result", pulled.render(&names));
                }
            }
        }
        CalcOp::Ode {
            group,
            phi,
            order,
            t0,
        } => {
            let (g, n) = calc_group(group)?;
            if phi.len() != n {
                return Err(Error::DimensionError {
                    expected: n,
                    got: phi.len(),
                });
            }
            let names = vec!["x".to_string()];
            let components: Vec<_> = phi
                .iter()
                .map(|s| parse_poly(s, &names, g.base_ring()))
                .collect::<padic_heis::Result<_>>()?;
            let c0 = parse::parse_elem(t0, g.codomain_ring())?;
            let curve = horizontal_ode_solve(g.form().expect("bilinear"), &components, c0, *order)?;
            report.value("result", curve.components[n].render(&names));
            report.verdict("satisfies-ode", curve.satisfies_ode()?, None);
        }
    }
    Ok(())
}

fn run_check(suite: &str, samples: u64, seed: u64, report: &mut Report) -> padic_heis::Result<()> {
    use padic_heis::check;
    let push = |checks: Vec<check::Check>, report: &mut Report| {
        for c in checks {
            report.verdict(&c.name, c.pass, c.witness);
        }
    };
    match suite {
        "all" => push(check::run_all(seed, samples), report),
        "padic" => {
            let mut cs = Vec::new();
            for &p in &[2u64, 3, 5, 7] {
                cs.push(check::padic_norm_laws(p, samples, seed));
                cs.push(check::geometric_inversion(p, samples.min(100), seed));
                for j in 1..=3 {
                    cs.push(check::residue_isomorphism(p, j, samples, seed));
                }
            }
            push(cs, report);
        }
        "rings" => push(vec![check::ring_axioms(samples, seed)], report),
        "groups" => {
            let mut cs = Vec::new();
            for ring in [
                parse::parse_ring("Z/3")?,
                parse::parse_ring("Q")?,
                parse::parse_ring("Qp:5:10")?,
            ] {
                let g = HeisGroup::bilinear(padic_heis::rings::standard_symplectic(1, &ring)?);
                cs.push(check::group_axioms(&g, samples, seed));
                cs.push(check::dilation_laws(&g, samples, seed));
            }
            push(cs, report);
        }
        "cocycles" => push(vec![check::cocycle_suite(seed)], report),
        "h2" => push(vec![check::h2_stability()], report),
        "metric" => {
            let mut cs = Vec::new();
            for &p in &[2u64, 3, 5] {
                cs.push(check::metric_suite(p, samples, seed));
            }
            push(cs, report);
        }
        "measure" => push(vec![check::measure_suite(seed)], report),
        "calculus" => push(vec![check::calculus_suite(seed)], report),
        // negative control: the Archimedean metric on collinear points
        // must fail the strong triangle inequality, with a witness
        "ultrametric-control" => {
            let pts: Vec<padic_heis::exact::Rational> = (0..3)
                .map(|i| parse_rational_text(&i.to_string()))
                .collect::<padic_heis::Result<_>>()?;
            let verdict = ultrametric_check(
                |a, b| Ok(euclidean_rational_distance(a, b)),
                parse_rational_text("0")?,
                &pts,
                |a, b| a == b,
            )?;
            report.verdict("euclidean-is-ultrametric", verdict.ok, verdict.failure);
        }
        other => return Err(Error::ParseError(format!("unknown check suite {other:?}"))),
    }
    Ok(())
}
