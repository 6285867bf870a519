//! Command line front end for the classification tables.
//!
//! Five subcommands: `table` renders the weak-phase tables over spatial
//! tori, `strong` prints the per-dimension comparison records, `coeffs`
//! tabulates KO and K point coefficients, `appendix` audits the encoded
//! bordism data, and `pairing` evaluates the dislocation pairing. All
//! state arrives through flags; the shipped data files can be swapped out
//! with `--data` for auditing. Output is byte-for-byte deterministic.
//!
//! Exit codes: 0 on success, 2 on a usage error (diagnostic on the error
//! stream), 1 when a requested audit fails or output cannot be written.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use tenfold::abgroup::RenderStyle;
use tenfold::abgroup::matrix::IntMatrix;
use tenfold::azclass::{AZLabel, SymmetryKind, class};
use tenfold::charclass::{
    Catalog, verify_generator_basis, verify_phi_matrix, verify_smith_exactness,
};
use tenfold::kcoeff::{KFlavor, point_coefficient};
use tenfold::strongf2i::{MAX_DIM, StrongData};
use tenfold::weakf2i::{TableFormat, dislocation_pairing, render_table};

#[derive(Parser)]
#[command(
    name = "tenfold",
    version,
    about = "Classification tables for the ten symmetry classes of gapped free-fermion phases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weak-phase classification tables over spatial tori
    Table(TableArgs),
    /// Strong-phase records: the per-dimension comparison maps
    Strong(StrongArgs),
    /// KO and K point coefficient groups by degree
    Coeffs(CoeffsArgs),
    /// Audit the encoded bordism data: invariants, phi matrix, exactness
    Appendix(AppendixArgs),
    /// Charge bound to a lattice dislocation with a given Burgers vector
    Pairing(PairingArgs),
}

#[derive(Args)]
struct TableArgs {
    /// Symmetry class to include (repeatable; default: all ten)
    #[arg(long = "class", value_name = "LABEL")]
    class: Vec<String>,
    /// Dimensions: a value, an inclusive range A..B, or a comma list
    #[arg(long, value_name = "DIMS", default_value = "1..3")]
    dims: String,
    /// Output format: markdown, json, or csv
    #[arg(long, value_name = "FORMAT", default_value = "markdown")]
    format: String,
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Load the strong-phase table from this file instead of the built-in copy
    #[arg(long, value_name = "PATH")]
    data: Option<PathBuf>,
}

#[derive(Args)]
struct StrongArgs {
    /// Symmetry class to include (repeatable; default: all ten)
    #[arg(long = "class", value_name = "LABEL")]
    class: Vec<String>,
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Load the strong-phase table from this file instead of the built-in copy
    #[arg(long, value_name = "PATH")]
    data: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Flavor column(s): ko, k, or both
    #[arg(long, value_name = "FLAVOR", default_value = "both")]
    flavor: String,
    /// Degrees: a value, an inclusive range A..B, or a comma list
    #[arg(
        long,
        value_name = "DEGREES",
        default_value = "-8..8",
        allow_hyphen_values = true
    )]
    degrees: String,
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AppendixArgs {
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Load the manifold catalog from this file instead of the built-in copy
    #[arg(long, value_name = "PATH")]
    data: Option<PathBuf>,
}

#[derive(Args)]
struct PairingArgs {
    /// Symmetry class
    #[arg(long, value_name = "LABEL")]
    class: String,
    /// Spatial dimension of the weak phase
    #[arg(long, value_name = "D")]
    dim: usize,
    /// Defect charges, one per circle direction: coordinates separated by
    /// colons, defects separated by commas (e.g. "1:0,0:1,0:0")
    #[arg(long, value_name = "CHARGES", allow_hyphen_values = true)]
    defects: String,
    /// Burgers vector, one integer per circle direction (e.g. "1,0,0")
    #[arg(long, value_name = "VECTOR", allow_hyphen_values = true)]
    burgers: String,
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Load the strong-phase table from this file instead of the built-in copy
    #[arg(long, value_name = "PATH")]
    data: Option<PathBuf>,
}

enum Failure {
    /// Bad flags or bad user-supplied data; exit 2.
    Usage(String),
    /// The command ran and found a problem, or output could not be
    /// written; exit 1.
    Runtime(String),
}

fn usage(err: impl std::fmt::Display) -> Failure {
    Failure::Usage(err.to_string())
}

/// Parses argv and runs the selected command, returning the process exit
/// code. Help and version requests print to standard output and return 0.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Table(args) => cmd_table(args),
        Command::Strong(args) => cmd_strong(args),
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Appendix(args) => cmd_appendix(args),
        Command::Pairing(args) => cmd_pairing(args),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            2
        }
        Err(Failure::Runtime(message)) => {
            eprintln!("error: {message}");
            1
        }
    }
}

fn parse_classes(flags: &[String]) -> Result<Vec<AZLabel>, Failure> {
    if flags.is_empty() {
        return Ok(AZLabel::ALL.to_vec());
    }
    flags
        .iter()
        .map(|flag| flag.parse::<AZLabel>().map_err(usage))
        .collect()
}

/// Grammar shared by `--dims` and `--degrees`: a single integer, an
/// inclusive range `A..B`, or a comma-separated list.
fn parse_int_spec(text: &str) -> Result<Vec<i64>, String> {
    let int = |piece: &str| {
        let piece = piece.trim();
        piece
            .parse::<i64>()
            .map_err(|_| format!("cannot parse {piece:?} as an integer"))
    };
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (int(lo)?, int(hi)?);
        if lo > hi {
            return Err(format!("range {text:?} is empty"));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(int).collect()
}

fn parse_dims(text: &str) -> Result<Vec<usize>, Failure> {
    let values = parse_int_spec(text).map_err(|m| Failure::Usage(format!("bad --dims: {m}")))?;
    values
        .into_iter()
        .map(|v| {
            if (1..=MAX_DIM as i64).contains(&v) {
                Ok(v as usize)
            } else {
                Err(Failure::Usage(format!(
                    "dimension {v} is out of range; the tables cover d between 1 and {MAX_DIM}"
                )))
            }
        })
        .collect()
}

fn parse_vector(text: &str, what: &str) -> Result<Vec<BigInt>, Failure> {
    text.split(',')
        .map(|piece| {
            let piece = piece.trim();
            piece.parse::<BigInt>().map_err(|_| {
                Failure::Usage(format!(
                    "bad --{what}: cannot parse {piece:?} as an integer"
                ))
            })
        })
        .collect()
}

/// One defect per comma-separated piece; coordinates inside a piece are
/// colon-separated. An empty piece is a charge in a trivial group.
fn parse_defects(text: &str) -> Result<Vec<Vec<BigInt>>, Failure> {
    text.split(',')
        .map(|piece| {
            let piece = piece.trim();
            if piece.is_empty() {
                return Ok(Vec::new());
            }
            piece
                .split(':')
                .map(|coord| {
                    let coord = coord.trim();
                    coord.parse::<BigInt>().map_err(|_| {
                        Failure::Usage(format!(
                            "bad --defects: cannot parse coordinate {coord:?} as an integer"
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

fn load_strong(path: &Option<PathBuf>) -> Result<StrongData, Failure> {
    match path {
        None => StrongData::load_default()
            .map_err(|e| Failure::Runtime(format!("built-in strong-phase table is invalid: {e}"))),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            StrongData::load_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog, Failure> {
    match path {
        None => Catalog::load_default()
            .map_err(|e| Failure::Runtime(format!("built-in manifold catalog is invalid: {e}"))),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            Catalog::load_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display()))),
    }
}

fn class_heading(label: AZLabel) -> String {
    let c = class(label);
    let kind = match c.kind {
        SymmetryKind::Complex => "complex",
        SymmetryKind::Real => "real",
    };
    format!(
        "## {} ({kind}, s = {}, structure {})\n\n",
        c.label, c.s, c.structure_group_name
    )
}

fn render_matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = (0..m.cols()).map(|j| m.at(i, j).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn cmd_table(args: TableArgs) -> Result<i32, Failure> {
    let classes = parse_classes(&args.class)?;
    let dims = parse_dims(&args.dims)?;
    let format: TableFormat = args.format.parse().map_err(usage)?;
    let data = load_strong(&args.data)?;
    let text = render_table(&data, &classes, &dims, format).map_err(usage)?;
    emit(&args.output, &text)?;
    Ok(0)
}

fn cmd_strong(args: StrongArgs) -> Result<i32, Failure> {
    let classes = parse_classes(&args.class)?;
    let data = load_strong(&args.data)?;
    let mut out = String::new();
    for (position, &label) in classes.iter().enumerate() {
        if position > 0 {
            out.push('\n');
        }
        out.push_str(&class_heading(label));
        out.push_str("| m | free | interacting | map | kernel | cokernel |\n");
        out.push_str("|---|------|-------------|-----|--------|----------|\n");
        for m in 0..=MAX_DIM {
            let record = data.record(label, m).map_err(usage)?;
            writeln!(
                out,
                "| {m} | {} | {} | {} | {} | {} |",
                record.free.render(RenderStyle::Unicode),
                record.interacting.render(RenderStyle::Unicode),
                render_matrix(&record.map.matrix),
                record.kernel.index_description,
                record.cokernel.render(RenderStyle::Unicode),
            )
            .unwrap();
        }
        out.push('\n');
        for m in 0..=MAX_DIM {
            let record = data.record(label, m).map_err(usage)?;
            writeln!(out, "- m = {m}: {}", record.provenance).unwrap();
        }
    }
    emit(&args.output, &out)?;
    Ok(0)
}

fn cmd_coeffs(args: CoeffsArgs) -> Result<i32, Failure> {
    let flavors: Vec<(KFlavor, &str)> = match args.flavor.to_ascii_lowercase().as_str() {
        "ko" => vec![(KFlavor::Ko, "KO")],
        "k" => vec![(KFlavor::K, "K")],
        "both" => vec![(KFlavor::Ko, "KO"), (KFlavor::K, "K")],
        other => {
            return Err(Failure::Usage(format!(
                "unknown flavor {other:?}; expected ko, k, or both"
            )));
        }
    };
    let degrees =
        parse_int_spec(&args.degrees).map_err(|m| Failure::Usage(format!("bad --degrees: {m}")))?;
    let mut out = String::new();
    let names: Vec<&str> = flavors.iter().map(|&(_, name)| name).collect();
    writeln!(out, "| degree | {} |", names.join(" | ")).unwrap();
    writeln!(out, "|--------|{}", "---|".repeat(flavors.len())).unwrap();
    for degree in degrees {
        let cells: Vec<String> = flavors
            .iter()
            .map(|&(flavor, _)| point_coefficient(flavor, degree).to_string())
            .collect();
        writeln!(out, "| {degree} | {} |", cells.join(" | ")).unwrap();
    }
    emit(&args.output, &out)?;
    Ok(0)
}

fn cmd_appendix(args: AppendixArgs) -> Result<i32, Failure> {
    let catalog = load_catalog(&args.data)?;
    let internal = |e: tenfold::charclass::CharClassError| {
        Failure::Runtime(format!(
            "catalog passed loading but failed verification: {e}"
        ))
    };
    let yes_no = |ok: bool| if ok { "yes" } else { "NO" };
    let mut out = String::new();
    let mut failures: Vec<String> = Vec::new();

    let names: Vec<&str> = catalog.manifolds().map(|m| m.name.as_str()).collect();
    writeln!(out, "manifold catalog: {}", names.join(", ")).unwrap();
    let chain: Vec<String> = catalog
        .appendix
        .groups
        .sequence()
        .iter()
        .map(ToString::to_string)
        .collect();
    writeln!(out, "chain: {}", chain.join(" -> ")).unwrap();
    writeln!(out).unwrap();

    let basis = verify_generator_basis(&catalog).map_err(internal)?;
    writeln!(out, "4-manifold generators:").unwrap();
    for (j, name) in basis.generator_names.iter().enumerate() {
        let bundle = &catalog.appendix.four_dim_basis[j].bundle;
        writeln!(
            out,
            "  {name} (bundle {bundle}): xi = {}, w1^4 = {}, ABS(-2) = {}",
            basis.matrix[0][j], basis.matrix[1][j], basis.matrix[2][j]
        )
        .unwrap();
    }
    writeln!(
        out,
        "invariant matrix rank: {} of {}",
        basis.rank,
        basis.generator_names.len()
    )
    .unwrap();
    if !basis.independent {
        failures.push(format!(
            "the generator invariant matrix has rank {} instead of {}",
            basis.rank,
            basis.generator_names.len()
        ));
    }
    let mut abs_ok = true;
    for g in &catalog.appendix.four_dim_basis {
        if let Err(e) = tenfold::charclass::abs_minus2(&catalog, &g.manifold) {
            abs_ok = false;
            failures.push(e.to_string());
        }
    }
    writeln!(
        out,
        "ABS values factor through the Smith map: {}",
        yes_no(abs_ok)
    )
    .unwrap();
    writeln!(out).unwrap();

    let phi = verify_phi_matrix(&catalog).map_err(internal)?;
    writeln!(
        out,
        "surface generators (phi = Arf, determinant Smith, w2 integral):"
    )
    .unwrap();
    for (j, name) in phi.surface_names.iter().enumerate() {
        let bundle = &catalog.appendix.surface_basis[j].bundle;
        let row = phi.rows[j];
        writeln!(
            out,
            "  {name} (bundle {bundle}): phi = ({}, {}, {})",
            row[0], row[1], row[2]
        )
        .unwrap();
    }
    let computed: Vec<String> = phi.computed_phi3.iter().map(ToString::to_string).collect();
    writeln!(
        out,
        "recomputed w2 integrals ({}) match the encoded column: {}",
        computed.join(", "),
        yes_no(phi.phi3_consistent)
    )
    .unwrap();
    writeln!(
        out,
        "phi matrix invertible over F2: {}",
        yes_no(phi.invertible)
    )
    .unwrap();
    if !phi.phi3_consistent {
        failures.push("encoded phi matrix disagrees with the recomputed w2 column".to_string());
    }
    if !phi.invertible {
        failures.push("phi matrix is not invertible over F2".to_string());
    }
    let mut wu_parts = Vec::new();
    for m in catalog.manifolds().filter(|m| m.dim == 2) {
        let vanishes = m.wu_check().map_err(internal)?.is_zero();
        wu_parts.push(format!(
            "{} {}",
            m.name,
            if vanishes { "ok" } else { "FAIL" }
        ));
        if !vanishes {
            failures.push(format!("Wu relation w2 + w1^2 = 0 fails on {}", m.name));
        }
    }
    writeln!(
        out,
        "Wu relation on surface models: {}",
        wu_parts.join(", ")
    )
    .unwrap();
    writeln!(out).unwrap();

    let exactness = verify_smith_exactness(&catalog);
    writeln!(out, "exactness:").unwrap();
    for joint in &exactness.joints {
        writeln!(
            out,
            "  {}: {} ({})",
            joint.stage,
            if joint.pass { "pass" } else { "FAIL" },
            joint.detail
        )
        .unwrap();
        if !joint.pass {
            failures.push(joint.detail.clone());
        }
    }
    writeln!(out).unwrap();

    writeln!(
        out,
        "{}/{} generators independent; {}/{} exactness joints pass",
        basis.rank,
        basis.generator_names.len(),
        exactness.pass_count(),
        exactness.joints.len()
    )
    .unwrap();
    let code = if failures.is_empty() {
        0
    } else {
        writeln!(out, "audit failed:").unwrap();
        for failure in &failures {
            writeln!(out, "  - {failure}").unwrap();
        }
        1
    };
    emit(&args.output, &out)?;
    Ok(code)
}

fn cmd_pairing(args: PairingArgs) -> Result<i32, Failure> {
    let label: AZLabel = args.class.parse().map_err(usage)?;
    let data = load_strong(&args.data)?;
    let defects = parse_defects(&args.defects)?;
    let burgers = parse_vector(&args.burgers, "burgers")?;
    let result = dislocation_pairing(&data, label, args.dim, &defects, &burgers).map_err(usage)?;
    let mut out = String::new();
    writeln!(out, "class: {label}").unwrap();
    writeln!(out, "d: {}", result.d).unwrap();
    writeln!(out, "pairing group: {}", result.group).unwrap();
    writeln!(out, "pairing element: {}", result.rendered).unwrap();
    writeln!(
        out,
        "status: {}",
        if result.trivial { "trivial" } else { "nonzero" }
    )
    .unwrap();
    emit(&args.output, &out)?;
    Ok(0)
}
