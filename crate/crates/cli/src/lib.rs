//! Command-line front end: generate instances, enumerate certificate
//! bundles, and re-check them.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use polycert::bundle::{load_bundle, write_bundle};
use polycert::certificate::CertificateBundle;
use polycert::graphcore::bfs_eccentricity;
use polycert::instances::{to_ine_string, InstanceSpec};
use polycert::polytope::Basis;
use polycert::prover::{prove, PivotMode, ProverOptions};
use polycert::verifier::{exact_diameter, hirsch_from_outcomes, run_stages, verify_well_formed, Stage};
use polycert::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "polycert", version, about = "Certified vertex-edge graphs of rational polytopes")]
pub struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a benchmark polytope (`.ine` output selects the lrs format).
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(long, short, global = true, default_value = "polytope.poly")]
        out: PathBuf,
    },
    /// Enumerate the lex-graph of a polytope and write a certificate bundle.
    Enumerate {
        poly: PathBuf,
        out: PathBuf,
        /// Initial lex-feasible basis as 0-based row indices, e.g. "0,2,4".
        #[arg(long)]
        basis: Option<String>,
        /// Use the brute-force entering-row scan instead of the ratio test.
        #[arg(long)]
        brute_force: bool,
    },
    /// Run every verifier stage on a bundle.
    Certify { bundle: PathBuf },
    /// Eccentricity of the start vertex, or the exact diameter.
    Diameter {
        bundle: PathBuf,
        #[arg(long)]
        exact: bool,
        /// Vertex-graph index to measure from instead of the bundle's start.
        #[arg(long)]
        start: Option<usize>,
    },
    /// Certify, then compare the diameter bound against m − n.
    Hirsch { bundle: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    Cube { n: usize },
    Cross { n: usize },
    Cyclic { n: usize, p: usize },
    /// Convert an existing `.ine` or `.poly` file.
    Ine { path: PathBuf },
}

impl Family {
    fn spec(&self) -> InstanceSpec {
        match self {
            Family::Cube { n } => InstanceSpec::Cube { n: *n },
            Family::Cross { n } => InstanceSpec::Cross { n: *n },
            Family::Cyclic { n, p } => InstanceSpec::CyclicPolar { n: *n, p: *p },
            Family::Ine { path } => InstanceSpec::File { path: path.clone() },
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } | Error::Parse { .. } | Error::Invalid(_) | Error::DimensionMismatch(_) | Error::ZeroDenominator => {
            EXIT_IO
        }
        _ => EXIT_VERIFY,
    }
}

pub fn parse_basis(s: &str) -> Result<Basis, Error> {
    let idx = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Invalid(format!("bad basis index {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Basis::new(idx)
}

/// Parses `args` (including the program name) and runs the command, writing
/// human-readable output to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_IO;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    if let Some(t) = cli.threads {
        // A pool may already exist when called repeatedly in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let res = match &cli.command {
        Command::Generate { family, out: path } => cmd_generate(family, path, out),
        Command::Enumerate {
            poly,
            out: dir,
            basis,
            brute_force,
        } => cmd_enumerate(poly, dir, basis.as_deref(), *brute_force, out),
        Command::Certify { bundle } => cmd_certify(bundle, out),
        Command::Diameter { bundle, exact, start } => cmd_diameter(bundle, *exact, *start, out),
        Command::Hirsch { bundle } => cmd_hirsch(bundle, out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

type CmdResult = Result<i32, Error>;

fn io_err(e: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        msg: e.to_string(),
    }
}

fn cmd_generate(family: &Family, path: &Path, out: &mut dyn Write) -> CmdResult {
    let inst = family.spec().build()?;
    let text = if path.extension().is_some_and(|e| e == "ine") {
        to_ine_string(&inst.polytope, &inst.name)
    } else {
        inst.polytope.to_poly_string()
    };
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    writeln!(
        out,
        "{}: {} rows, dimension {} -> {}",
        inst.name,
        inst.polytope.m(),
        inst.polytope.n(),
        path.display()
    )
    .map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_enumerate(poly: &Path, dir: &Path, basis: Option<&str>, brute: bool, out: &mut dyn Write) -> CmdResult {
    let p = polycert::instances::load_polytope(poly)?;
    let opts = ProverOptions {
        initial_basis: basis.map(parse_basis).transpose()?,
        pivot: if brute { PivotMode::BruteForce } else { PivotMode::LexRatio },
    };
    let t = Instant::now();
    let c = match prove(&p, &opts) {
        Ok(c) => c,
        Err(e @ (Error::RegularityViolation { .. } | Error::UnboundednessSuspected { .. })) => {
            writeln!(out, "input is not a bounded polytope? ({e})").map_err(io_err)?;
            return Ok(EXIT_VERIFY);
        }
        Err(e) => return Err(e),
    };
    let elapsed = t.elapsed();
    write_bundle(&c, dir)?;
    writeln!(
        out,
        "{} vertices, {} edges",
        c.vertgraph.vertex_count(),
        c.vertgraph.structure.edge_count()
    )
    .map_err(io_err)?;
    writeln!(
        out,
        "lex-graph: {} vertices, {} edges ({:.3}s); bundle written to {}",
        c.lexgraph.vertex_count(),
        c.lexgraph.structure.edge_count(),
        elapsed.as_secs_f64(),
        dir.display()
    )
    .map_err(io_err)?;
    Ok(EXIT_OK)
}

/// Loads a bundle, reporting load failures as a WellFormed failure.
fn load_or_report(dir: &Path, out: &mut dyn Write) -> Result<Option<CertificateBundle>, Error> {
    match load_bundle(dir) {
        Ok(c) => Ok(Some(c)),
        Err(e) => {
            writeln!(out, "{:<11} FAIL  {e}", Stage::WellFormed.to_string()).map_err(io_err)?;
            writeln!(out, "FAIL at {}", Stage::WellFormed).map_err(io_err)?;
            Ok(None)
        }
    }
}

/// Prints per-stage results; returns the verdict after the Hirsch stage.
fn certify_report(c: &CertificateBundle, out: &mut dyn Write) -> Result<polycert::verifier::Verdict, Error> {
    let (outcomes, numbers) = run_stages(c);
    for o in &outcomes {
        let status = if o.result.is_ok() { "PASS" } else { "FAIL" };
        write!(out, "{:<11} {status}  {:>9.3}s", o.stage.to_string(), o.elapsed.as_secs_f64()).map_err(io_err)?;
        if let Err(e) = &o.result {
            write!(out, "  {e}").map_err(io_err)?;
        }
        writeln!(out).map_err(io_err)?;
    }
    Ok(hirsch_from_outcomes(&outcomes, numbers))
}

fn cmd_certify(dir: &Path, out: &mut dyn Write) -> CmdResult {
    let Some(c) = load_or_report(dir, out)? else {
        return Ok(EXIT_IO);
    };
    let v = certify_report(&c, out)?;
    if v.certified() {
        writeln!(
            out,
            "certificate valid: {} vertices, {} edges, dimension {}",
            v.numbers.vertices, v.numbers.edges, v.numbers.n
        )
        .map_err(io_err)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "FAIL at {}: {}", v.stage, v.detail).map_err(io_err)?;
        Ok(EXIT_VERIFY)
    }
}

fn cmd_diameter(dir: &Path, exact: bool, start: Option<usize>, out: &mut dyn Write) -> CmdResult {
    let Some(c) = load_or_report(dir, out)? else {
        return Ok(EXIT_IO);
    };
    if let Err(e) = verify_well_formed(&c) {
        writeln!(out, "FAIL at {}: {e}", Stage::WellFormed).map_err(io_err)?;
        return Ok(EXIT_VERIFY);
    }
    let g = &c.vertgraph.structure;
    if exact {
        match exact_diameter(g) {
            Ok(d) => writeln!(out, "diameter = {d}").map_err(io_err)?,
            Err(e) => {
                writeln!(out, "{e}").map_err(io_err)?;
                return Ok(EXIT_VERIFY);
            }
        }
        return Ok(EXIT_OK);
    }
    let s = start.unwrap_or(c.start);
    if s >= g.vertex_count() {
        writeln!(out, "start vertex {s} out of range").map_err(io_err)?;
        return Ok(EXIT_VERIFY);
    }
    match bfs_eccentricity(g, s) {
        Ok(e) => {
            writeln!(out, "eccentricity of vertex {s} = {e} (diameter >= {e})").map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(out, "{e}").map_err(io_err)?;
            Ok(EXIT_VERIFY)
        }
    }
}

fn cmd_hirsch(dir: &Path, out: &mut dyn Write) -> CmdResult {
    let Some(c) = load_or_report(dir, out)? else {
        return Ok(EXIT_IO);
    };
    let v = certify_report(&c, out)?;
    if !v.certified() {
        writeln!(out, "FAIL at {}: {}", v.stage, v.detail).map_err(io_err)?;
        return Ok(EXIT_VERIFY);
    }
    let n = &v.numbers;
    let d = n.diameter_bound.unwrap_or(0);
    let bound = n.m as i64 - n.n as i64;
    let outcome = if v.passed {
        format!("VIOLATED: {d} > {bound}")
    } else {
        format!("HOLDS: {d} <= {bound}")
    };
    writeln!(
        out,
        "diameter ≥ {d}, facets ≤ {}, dim = {}, Hirsch bound m−n = {bound}, {outcome}",
        n.m, n.n
    )
    .map_err(io_err)?;
    writeln!(out).map_err(io_err)?;
    write!(out, "{}", v.summary()).map_err(io_err)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_argument() {
        assert_eq!(parse_basis("4, 0,2").unwrap().indices(), &[0, 2, 4]);
        assert!(parse_basis("1,1").is_err());
        assert!(parse_basis("").is_err());
        assert!(parse_basis("-1").is_err());
    }

    #[test]
    fn exit_code_classes() {
        assert_eq!(exit_code(&Error::Parse { line: 3, msg: "x".into() }), EXIT_IO);
        assert_eq!(exit_code(&Error::NoFeasibleBasis), EXIT_VERIFY);
        assert_eq!(exit_code(&Error::Disconnected), EXIT_VERIFY);
    }
}
