//! Command-line interface: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 on pass/success, 1 on a checked FAIL (including violated
//! preconditions), 2 on usage or parse errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nambu_core::algebra::{check_nambu_poisson, check_poisson, fix_coordinate, Check};
use nambu_core::cohomology::{check_np_2cocycle, cocycle_space_dims, twisted_semidirect};
use nambu_core::deform::{check_deformation_direct, check_deformation_theorem};
use nambu_core::error::Error as CoreError;
use nambu_core::ns::{check_ns_np, ns_from_nijenhuis, ns_from_twisted_o, subadjacent_np};
use nambu_core::operator::{
    check_nijenhuis, check_reynolds, check_twisted_o, deform_by_nijenhuis, minus_cocycle,
    TwistedOCandidate,
};
use nambu_core::rep::{check_np_rep, semidirect_np};
use nambu_core::scalar::{Field, Scalar};
use nambu_core::scan::set_worker_count;
use nambu_core::search::{
    lift_to_rationals, search, CandidateShape, SearchKind, SearchSpec, SearchWitness,
};

use crate::examples;
use crate::format::{parse, AlgebraFile, Document, ParseError};
use crate::report::Report;

#[derive(Parser)]
#[command(name = "nambu", version, about = "Exact structure-constant calculator for ternary Nambu-Poisson algebras")]
pub struct Cli {
    /// Write output to a file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Machine-readable flat key/value output
    #[arg(long, global = true)]
    porcelain: bool,

    /// Default seed for randomized subcommands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Validate preconditions eagerly before running the operation
    #[arg(long, global = true)]
    strict: bool,

    /// Worker threads for basis-tuple scans
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run axiom or operator checks against a file
    Check {
        #[command(subcommand)]
        what: CheckTarget,
    },
    /// Build a derived structure and print it as an algebra file
    Construct {
        #[command(subcommand)]
        what: ConstructTarget,
    },
    /// Compute dim Z^2, dim B^2 and dim H^2 for the file's algebra and
    /// representation
    Cohomology { file: PathBuf },
    /// Deformation checks
    Deform {
        #[command(subcommand)]
        what: DeformTarget,
    },
    /// Brute-force search over GF(p)
    Search(SearchArgs),
    /// Built-in example files
    Examples {
        #[command(subcommand)]
        what: ExamplesTarget,
    },
}

#[derive(Subcommand)]
enum CheckTarget {
    /// Associativity, fundamental identity and Leibniz rule
    Algebra { file: PathBuf },
    /// Representation identities of [mu]/[rho] against the file's algebra
    Rep { file: PathBuf },
    /// 2-cocycle conditions of [phi]/[psi]
    Cocycle { file: PathBuf },
    /// NS-Nambu-Poisson identities of [diamond]/[star]/[sq]/[dsq]
    Ns { file: PathBuf },
    /// Operator identities of [operator] or [roperator]
    Operator {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: OperatorKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorKind {
    Nijenhuis,
    Reynolds,
    TwistedO,
}

#[derive(Subcommand)]
enum ConstructTarget {
    /// Semidirect product A + V from the file's algebra and representation
    Semidirect { file: PathBuf },
    /// (phi, psi)-twisted semidirect product
    TwistedSemidirect { file: PathBuf },
    /// Deformed algebra A_N from a Nijenhuis operator
    Deformed {
        file: PathBuf,
        /// File carrying the [operator] matrix (defaults to the main file)
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// Subadjacent Nambu-Poisson algebra of an NS structure
    NsSubadjacent { file: PathBuf },
    /// NS structure induced by a Nijenhuis operator
    FromNijenhuis {
        file: PathBuf,
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// NS structure on V induced by a twisted O-operator
    FromOperator { file: PathBuf },
    /// Poisson algebra obtained by fixing the first bracket coordinate
    FixCoordinate {
        file: PathBuf,
        /// Comma-separated coordinates of x0, e.g. "1,0,0,0"
        #[arg(long)]
        x0: String,
    },
}

#[derive(Subcommand)]
enum DeformTarget {
    /// Verify [phi1]/[psi1]/[psi2] by the direct polynomial route and the
    /// clause-list route; both verdicts must agree
    Check { file: PathBuf },
}

#[derive(Args)]
struct SearchArgs {
    /// Base algebra file for operator searches
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: SearchKindArg,
    /// Dimension for np-algebra searches without a base file
    #[arg(long, default_value_t = 0)]
    dim: usize,
    /// Field for searches without a base file, e.g. "gf:3"
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum, default_value_t = ShapeArg::Full)]
    shape: ShapeArg,
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    /// Comma-separated residues to draw candidate entries from
    #[arg(long)]
    coeffs: Option<String>,
    /// Re-interpret witnesses over the rationals (centered lift) and
    /// re-verify them there
    #[arg(long)]
    lift: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKindArg {
    Nijenhuis,
    Reynolds,
    TwistedRb,
    NpAlgebra,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Full,
    Diagonal,
    Upper,
}

#[derive(Subcommand)]
enum ExamplesTarget {
    /// List the built-in fixtures
    List,
    /// Print one fixture as canonical file text
    Emit {
        name: String,
        /// Field to instantiate over: "rational" (default) or "gf:p"
        #[arg(long)]
        field: Option<String>,
    },
}

/// Command failure modes, ordered by exit code.
enum Failure {
    /// exit 2: bad usage, unreadable or malformed input
    Input(String),
    /// exit 1: a precondition or hypothesis did not hold
    Checked(String),
}

type CmdResult = Result<(i32, String), Failure>;

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        match e {
            CoreError::AxiomViolation(_) | CoreError::NotInvertible | CoreError::HypothesisFailed(_) => {
                Failure::Checked(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<AlgebraFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_field_flag(spec: &str) -> Result<Field, Failure> {
    if spec == "rational" {
        return Ok(Field::Rational);
    }
    if let Some(p) = spec.strip_prefix("gf:") {
        let p: u32 = p
            .parse()
            .map_err(|_| Failure::Input(format!("bad field spec '{spec}'")))?;
        return Field::gf(p).map_err(|e| Failure::Input(e.to_string()));
    }
    Err(Failure::Input(format!(
        "bad field spec '{spec}' (use 'rational' or 'gf:p')"
    )))
}

fn parse_x0(spec: &str, field: Field, dim: usize) -> Result<Vec<Scalar>, Failure> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != dim {
        return Err(Failure::Input(format!(
            "x0 needs {dim} comma-separated coordinates, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|tok| {
            crate::format::parse_scalar_public(tok, field)
                .map_err(|e| Failure::Input(format!("bad x0 coordinate '{tok}': {e}")))
        })
        .collect()
}

fn finish_check(report: &mut Report, key: &str, check: &Check) -> i32 {
    report.set_check(key, check);
    i32::from(!check.is_pass())
}

fn render(report: Report, porcelain: bool) -> String {
    if porcelain {
        report.render_porcelain()
    } else {
        report.render_text()
    }
}

fn strict_algebra(file: &AlgebraFile, strict: bool) -> Result<(), Failure> {
    if strict {
        let a = file.algebra()?;
        if let Check::Fail(v) = check_nambu_poisson(&a) {
            return Err(Failure::Checked(format!("strict precondition: {v}")));
        }
    }
    Ok(())
}

fn twisted_candidate(file: &AlgebraFile) -> Result<TwistedOCandidate, Failure> {
    let rep = file.representation()?;
    let pair = file.cocycle_pair()?;
    let r = if file.has_section("roperator") {
        file.roperator()?
    } else {
        file.operator()
            .map_err(|_| Failure::Input("twisted operator needs [roperator] or [operator]".into()))?
    };
    TwistedOCandidate::new(r, rep, pair).map_err(Failure::from)
}

fn run_command(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Check { what } => {
            let mut report = Report::new();
            let code = match what {
                CheckTarget::Algebra { file } => {
                    let f = load(file)?;
                    report.set("command", "check algebra");
                    let a = f.algebra()?;
                    finish_check(&mut report, "check", &check_nambu_poisson(&a))
                }
                CheckTarget::Rep { file } => {
                    let f = load(file)?;
                    report.set("command", "check rep");
                    strict_algebra(&f, cli.strict)?;
                    let a = f.algebra()?;
                    let r = f.representation()?;
                    finish_check(&mut report, "check", &check_np_rep(&a, &r).map_err(Failure::from)?)
                }
                CheckTarget::Cocycle { file } => {
                    let f = load(file)?;
                    report.set("command", "check cocycle");
                    strict_algebra(&f, cli.strict)?;
                    let a = f.algebra()?;
                    let r = f.representation()?;
                    let pair = f.cocycle_pair()?;
                    finish_check(&mut report, "check", &check_np_2cocycle(&a, &r, &pair).map_err(Failure::from)?)
                }
                CheckTarget::Ns { file } => {
                    let f = load(file)?;
                    report.set("command", "check ns");
                    let x = f.ns_algebra()?;
                    finish_check(&mut report, "check", &check_ns_np(&x))
                }
                CheckTarget::Operator { file, kind } => {
                    let f = load(file)?;
                    report.set("command", "check operator");
                    let a = f.algebra()?;
                    let verdict = match kind {
                        OperatorKind::Nijenhuis => {
                            report.set("kind", "nijenhuis");
                            check_nijenhuis(&a, &f.operator()?).map_err(Failure::from)?
                        }
                        OperatorKind::Reynolds => {
                            report.set("kind", "reynolds");
                            check_reynolds(&a, &f.operator()?).map_err(Failure::from)?
                        }
                        OperatorKind::TwistedO => {
                            report.set("kind", "twisted-o");
                            let cand = twisted_candidate(&f)?;
                            check_twisted_o(&cand, &a).map_err(Failure::from)?
                        }
                    };
                    finish_check(&mut report, "check", &verdict)
                }
            };
            Ok((code, render(report, cli.porcelain)))
        }

        Command::Construct { what } => {
            let doc = match what {
                ConstructTarget::Semidirect { file } => {
                    let f = load(file)?;
                    strict_algebra(&f, cli.strict)?;
                    let s = semidirect_np(&f.algebra()?, &f.representation()?).map_err(Failure::from)?;
                    Document::from_algebra(&s)
                }
                ConstructTarget::TwistedSemidirect { file } => {
                    let f = load(file)?;
                    strict_algebra(&f, cli.strict)?;
                    let s = twisted_semidirect(&f.algebra()?, &f.representation()?, &f.cocycle_pair()?)
                        .map_err(Failure::from)?;
                    Document::from_algebra(&s)
                }
                ConstructTarget::Deformed { file, operator } => {
                    let f = load(file)?;
                    let op_file = match operator {
                        Some(p) => load(p)?,
                        None => f.clone(),
                    };
                    let deformed = deform_by_nijenhuis(&f.algebra()?, &op_file.operator()?)
                        .map_err(Failure::from)?;
                    Document::from_algebra(&deformed)
                }
                ConstructTarget::NsSubadjacent { file } => {
                    let f = load(file)?;
                    let s = subadjacent_np(&f.ns_algebra()?).map_err(Failure::from)?;
                    Document::from_algebra(&s)
                }
                ConstructTarget::FromNijenhuis { file, operator } => {
                    let f = load(file)?;
                    let op_file = match operator {
                        Some(p) => load(p)?,
                        None => f.clone(),
                    };
                    let x = ns_from_nijenhuis(&f.algebra()?, &op_file.operator()?).map_err(Failure::from)?;
                    Document::from_ns(&x)
                }
                ConstructTarget::FromOperator { file } => {
                    let f = load(file)?;
                    let a = f.algebra()?;
                    let cand = twisted_candidate(&f)?;
                    let x = ns_from_twisted_o(&cand, &a).map_err(Failure::from)?;
                    Document::from_ns(&x)
                }
                ConstructTarget::FixCoordinate { file, x0 } => {
                    let f = load(file)?;
                    strict_algebra(&f, cli.strict)?;
                    let a = f.algebra()?;
                    let x0 = parse_x0(x0, f.field, a.dim)?;
                    let p = fix_coordinate(&a, &x0).map_err(Failure::from)?;
                    if cli.strict {
                        if let Check::Fail(v) = check_poisson(&p) {
                            return Err(Failure::Checked(format!("strict postcondition: {v}")));
                        }
                    }
                    let mut doc = Document::new(p.field(), p.dim);
                    doc.add_bilinear("product", &p.product);
                    doc.add_bilinear("bracket2", &p.bracket);
                    doc
                }
            };
            Ok((0, doc.render()))
        }

        Command::Cohomology { file } => {
            let f = load(file)?;
            let a = f.algebra()?;
            let r = f.representation()?;
            let dims = cocycle_space_dims(&a, &r).map_err(Failure::from)?;
            let mut report = Report::new();
            report.set("command", "cohomology");
            report.set("algebra_dim", a.dim.to_string());
            report.set("module_dim", r.module_dim.to_string());
            report.set_dims(&dims);
            Ok((0, render(report, cli.porcelain)))
        }

        Command::Deform { what } => {
            let DeformTarget::Check { file } = what;
            let f = load(file)?;
            let d = f.deformation()?;
            let direct = check_deformation_direct(&d);
            let theorem = check_deformation_theorem(&d);
            let mut report = Report::new();
            report.set("command", "deform check");
            report.set_check("direct", &direct);
            report.set_check("theorem", &theorem);
            report.set(
                "routes_agree",
                if direct.is_pass() == theorem.is_pass() { "yes" } else { "NO" },
            );
            let code = i32::from(!(direct.is_pass() && theorem.is_pass()));
            Ok((code, render(report, cli.porcelain)))
        }

        Command::Search(args) => {
            let kind = match args.kind {
                SearchKindArg::Nijenhuis => SearchKind::Nijenhuis,
                SearchKindArg::Reynolds => SearchKind::Reynolds,
                SearchKindArg::TwistedRb => SearchKind::TwistedRotaBaxter,
                SearchKindArg::NpAlgebra => SearchKind::NpAlgebra,
            };
            let (base, field, pair) = match &args.file {
                Some(path) => {
                    let f = load(path)?;
                    let a = f.algebra()?;
                    let pair = if f.has_section("phi") || f.has_section("psi") {
                        Some(f.cocycle_pair()?)
                    } else {
                        None
                    };
                    (Some(a), f.field, pair)
                }
                None => {
                    let field = parse_field_flag(
                        args.field
                            .as_deref()
                            .ok_or_else(|| Failure::Input("search without a base file needs --field gf:p".into()))?,
                    )?;
                    (None, field, None)
                }
            };
            let mut spec = SearchSpec::new(kind, field, args.budget, cli.seed);
            spec.base = base;
            spec.dim = args.dim;
            spec.pair = pair;
            spec.shape = match args.shape {
                ShapeArg::Full => CandidateShape::Full,
                ShapeArg::Diagonal => CandidateShape::Diagonal,
                ShapeArg::Upper => CandidateShape::UpperTriangular,
            };
            if let Some(coeffs) = &args.coeffs {
                spec.coeffs = coeffs
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().map_err(|_| Failure::Input(format!("bad coefficient '{t}'"))))
                    .collect::<Result<Vec<_>, _>>()?;
            }
            let out = search(&spec).map_err(Failure::from)?;
            let mut report = Report::new();
            report.set("command", "search");
            report.set("examined", out.examined.to_string());
            report.set("truncated", out.truncated.to_string());
            report.set("witnesses", out.witnesses.len().to_string());
            for (i, w) in out.witnesses.iter().enumerate() {
                let mut entry = Report::new();
                describe_witness(&mut entry, w);
                if args.lift {
                    let lifted = lift_to_rationals(w).map_err(Failure::from)?;
                    let verdict = match (&lifted, &spec.base) {
                        (SearchWitness::Operator(n), Some(base_gf)) => {
                            // rebuild the base (and the pair, when used) over
                            // the rationals through canonical entries
                            let base_q = lift_base(base_gf).map_err(Failure::from)?;
                            match kind {
                                SearchKind::Nijenhuis => check_nijenhuis(&base_q, n).map_err(Failure::from)?.is_pass(),
                                SearchKind::Reynolds => check_reynolds(&base_q, n).map_err(Failure::from)?.is_pass(),
                                _ => {
                                    let pair_q = match &spec.pair {
                                        Some(p) => lift_pair(p).map_err(Failure::from)?,
                                        None => minus_cocycle(&base_q),
                                    };
                                    let cand = TwistedOCandidate::new(
                                        n.clone(),
                                        nambu_core::rep::adjoint_rep(&base_q),
                                        pair_q,
                                    )
                                    .map_err(Failure::from)?;
                                    // an invalid lifted pair means the
                                    // witness cannot be certified over Q
                                    matches!(check_twisted_o(&cand, &base_q), Ok(Check::Pass))
                                }
                            }
                        }
                        (SearchWitness::Algebra(a), _) => check_nambu_poisson(a).is_pass(),
                        _ => false,
                    };
                    let mut lrep = Report::new();
                    describe_witness(&mut lrep, &lifted);
                    lrep.set("reverified", verdict.to_string());
                    entry.set_nested("lifted", lrep);
                }
                report.set_nested(&format!("witness.{i}"), entry);
            }
            Ok((0, render(report, cli.porcelain)))
        }

        Command::Examples { what } => match what {
            ExamplesTarget::List => {
                let mut report = Report::new();
                report.set("command", "examples list");
                for (name, desc) in examples::catalog() {
                    report.set(name, desc);
                }
                Ok((0, render(report, cli.porcelain)))
            }
            ExamplesTarget::Emit { name, field } => {
                let field = match field {
                    Some(spec) => parse_field_flag(spec)?,
                    None => Field::Rational,
                };
                let doc = examples::build(name, field)
                    .ok_or_else(|| Failure::Input(format!("unknown example '{name}'")))?
                    .map_err(|e| Failure::Input(e.to_string()))?;
                Ok((0, doc.render()))
            }
        },
    }
}

fn lift_base(base: &nambu_core::algebra::NambuPoissonAlgebra) -> Result<nambu_core::algebra::NambuPoissonAlgebra, CoreError> {
    match lift_to_rationals(&SearchWitness::Algebra(base.clone()))? {
        SearchWitness::Algebra(a) => Ok(a),
        SearchWitness::Operator(_) => unreachable!(),
    }
}

fn lift_pair(pair: &nambu_core::cohomology::CocyclePair) -> Result<nambu_core::cohomology::CocyclePair, CoreError> {
    use nambu_core::search::lift_scalar;
    use nambu_core::tensor::{BilinearMap, Sym2, Sym3, TrilinearMap};
    let lift = lift_scalar;
    let n = pair.algebra_dim();
    let m = pair.module_dim();
    let phi_entries: Vec<_> = pair
        .phi
        .canonical_entries()
        .into_iter()
        .map(|(i, j, k, v)| (i, j, k, lift(&v)))
        .collect();
    let psi_entries: Vec<_> = pair
        .psi
        .canonical_entries()
        .into_iter()
        .map(|(i, j, k, l, v)| (i, j, k, l, lift(&v)))
        .collect();
    nambu_core::cohomology::CocyclePair::new(
        BilinearMap::from_entries(Field::Rational, n, m, Sym2::Symmetric, &phi_entries)?,
        TrilinearMap::from_entries(Field::Rational, n, m, Sym3::FullySkew, &psi_entries)?,
    )
}

fn describe_witness(report: &mut Report, w: &SearchWitness) {
    match w {
        SearchWitness::Operator(n) => {
            let m = n.matrix();
            let mut cells = Vec::new();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = m.get(i, j);
                    if !v.is_zero() {
                        cells.push(format!("{} {} {v}", i + 1, j + 1));
                    }
                }
            }
            report.set("kind", "operator");
            report.set("entries", cells.join("; "));
        }
        SearchWitness::Algebra(a) => {
            report.set("kind", "algebra");
            let prod: Vec<String> = a
                .product
                .canonical_entries()
                .into_iter()
                .map(|(i, j, k, v)| format!("{} {} {} {v}", i + 1, j + 1, k + 1))
                .collect();
            let br: Vec<String> = a
                .bracket
                .canonical_entries()
                .into_iter()
                .map(|(i, j, k, l, v)| format!("{} {} {} {} {v}", i + 1, j + 1, k + 1, l + 1))
                .collect();
            report.set("product", prod.join("; "));
            report.set("bracket", br.join("; "));
        }
    }
}

/// Parses arguments, runs the command, writes the output and returns the
/// process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success; usage errors
            // exit 2 per the contract
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 2 };
        }
    };
    set_worker_count(cli.jobs);
    let (code, output) = match run_command(&cli) {
        Ok(pair) => pair,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(Failure::Checked(msg)) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{output}"),
    }
    code
}
