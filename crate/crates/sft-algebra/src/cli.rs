//! Batch command-line front end.
//!
//! Every subcommand reads the shared matrix formats, runs one library
//! operation, and prints a human-readable report (or, with `--json`,
//! a JSON object carrying the same values). Exit codes: 0 when the
//! computation verified/passed, 1 when it refuted/failed, 2 on usage
//! or input errors, 3 when an enumeration budget ran out.

use crate::autgyration::{
    enumerate_periodic, path_sgc2, sgc2, sgcc, Automorphism, AutomorphismAction, LevelAction,
};
use crate::equivalence::{
    compress_sse_to_se, esse_neighbors, verify_esse, verify_se, verify_sse_chain, EsseWitness,
    Ring, SeWitness,
};
use crate::exact::{det_one_minus_tA, Int, IntPoly};
use crate::invariants::{
    class_counts, invariant_report, reduce_to_triangular, se_z_equivalent, sim_z_equivalent,
    transpose_se_test, TriangularFamily,
};
use crate::io;
use crate::niep::{
    check_conditions, inflate_period, laffey_quantities, suleimanova_realize, CandidateSpectrum,
    CheckRing, PerronVerdict,
};
use crate::polymatrix::{
    flow_invariants, is_nzc, positive_move, psse_chain, sharp_expand, verify_sharp,
    ElementaryMoveSpec, MoveSide, PresentationClass,
};
use crate::structure::{
    cyclic_block_form, higher_block, is_irreducible, is_primitive, nondegenerate_core, period,
    NonnegMatrix, Primitivity,
};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Outcome of one CLI run: process exit code plus the printed report.
#[derive(Debug, Clone)]
pub struct CliOutcome {
    pub exit_code: i32,
    pub report: String,
}

/// Entry point used by the `sftalg` binary.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let outcome = run(&args);
    if !outcome.report.is_empty() {
        println!("{}", outcome.report);
    }
    outcome.exit_code
}

/// Run with explicit arguments (`args[0]` is the program name);
/// returns the exit code and the report text instead of printing.
pub fn run(args: &[String]) -> CliOutcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits.
            let code = if e.use_stderr() { 2 } else { 0 };
            return CliOutcome {
                exit_code: code,
                report: e.to_string(),
            };
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok((code, text, value)) => {
            let report = if json { value.to_string() } else { text };
            CliOutcome {
                exit_code: code,
                report,
            }
        }
        Err(e) => {
            let code = match &e {
                Error::BudgetExceeded { .. } => 3,
                Error::Parse { .. } | Error::Usage(_) | Error::MalformedInput(_) | Error::Io(_) => {
                    2
                }
                _ => 1,
            };
            let report = if json {
                json!({ "error": e.to_string() }).to_string()
            } else {
                format!("error: {e}")
            };
            CliOutcome {
                exit_code: code,
                report,
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sftalg",
    about = "Stable-algebra invariants and certificates for shifts of finite type",
    version
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for stochastic sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant reports and the 2x2 integer-spectrum classification.
    Invariants {
        #[command(subcommand)]
        sub: InvariantsCmd,
    },
    /// Structure of nonnegative matrices as SFT presentations.
    Structure {
        #[command(subcommand)]
        sub: StructureCmd,
    },
    /// ESSE/SSE/SE certificates.
    Equiv {
        #[command(subcommand)]
        sub: EquivCmd,
    },
    /// Polynomial matrix presentations.
    Poly {
        #[command(subcommand)]
        sub: PolyCmd,
    },
    /// Spectral realization checks.
    Niep {
        #[command(subcommand)]
        sub: NiepCmd,
    },
    /// Gyration / sign-gyration numbers of an automorphism action.
    Gyration(GyrationArgs),
    /// Kim-Roush sgc2 of an edge or a path certificate.
    Sgc2(Sgc2Args),
    /// Shorthand for `invariants classify2x2`.
    Classify2x2(ClassifyArgs),
    /// Shorthand for `equiv neighbors`.
    Neighbors(NeighborsArgs),
}

#[derive(Subcommand)]
enum InvariantsCmd {
    /// Full invariant report of a square integer matrix.
    Report {
        matrix: String,
        /// How many traces to list.
        #[arg(long, default_value_t = 10)]
        traces: usize,
    },
    Classify2x2(ClassifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    a: i64,
    #[arg(long)]
    b: i64,
    /// First residue (or matrix corner entry).
    #[arg(long)]
    x: Option<i64>,
    /// Second residue to compare with.
    #[arg(long)]
    y: Option<i64>,
    /// Print the SIM-Z / SE-Z class counts of the family.
    #[arg(long)]
    counts: bool,
    /// Run the transpose shift-equivalence test on x.
    #[arg(long)]
    transpose: bool,
    /// Reduce the 2x2 matrix in this file to triangular form.
    #[arg(long)]
    reduce: Option<String>,
}

#[derive(Subcommand)]
enum StructureCmd {
    /// Nondegenerate core.
    Core { matrix: String },
    /// Primitivity with witness exponent or failure certificate.
    Primitive { matrix: String },
    /// Irreducibility and period.
    Period { matrix: String },
    /// Cyclic block form of an irreducible matrix.
    Blockform { matrix: String },
    /// Higher-block presentation A^[k].
    Higher {
        matrix: String,
        #[arg(short = 'k', long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum EquivCmd {
    /// Check A = RS, B = SR.
    VerifyEsse {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
        #[arg(long, default_value = "zplus")]
        ring: RingArg,
    },
    /// Verify a chain certificate (JSON list of {R, S, s} edges).
    VerifyChain {
        chain: String,
        #[arg(long, default_value = "zplus")]
        ring: RingArg,
    },
    /// Compress a chain certificate into a shift equivalence.
    Compress {
        chain: String,
        #[arg(long, default_value = "zplus")]
        ring: RingArg,
    },
    /// Check the four shift-equivalence equations.
    VerifySe {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        lag: usize,
        #[arg(long, default_value = "zplus")]
        ring: RingArg,
    },
    Neighbors(NeighborsArgs),
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum RingArg {
    Z,
    Zplus,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Z => Ring::Z,
            RingArg::Zplus => Ring::Zplus,
        }
    }
}

#[derive(Args)]
struct NeighborsArgs {
    matrix: String,
    #[arg(long, default_value_t = 2)]
    max_inner: usize,
    #[arg(long, default_value_t = 2)]
    max_entry: u32,
    #[arg(long, default_value_t = 5_000_000)]
    budget: u64,
}

#[derive(Subcommand)]
enum PolyCmd {
    /// NZC class membership of a polynomial matrix.
    Nzc { matrix: String },
    /// Graph expansion A# with the det(I-A) = det(I-tA#) check.
    Sharp { matrix: String },
    /// Apply one positive-equivalence move to I - A.
    Move {
        /// Polynomial matrix file holding A (the move acts on I - A).
        matrix: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Entry polynomial of E_{ij}, e.g. "t^2" or "-2*t".
        #[arg(long)]
        entry: String,
        #[arg(long, default_value = "left")]
        side: SideArg,
        #[arg(long, default_value = "nzc")]
        class: ClassArg,
    },
    /// PSSE move log for an ESSE given by R, S over Z+.
    Psse {
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
    },
    /// Replay and verify a serialized move log.
    Replay { log: String },
    /// Flow-equivalence invariants (Bowen-Franks group, det(I-A(1))).
    Flow { matrix: String },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ClassArg {
    Tzplus,
    Nzc,
}

#[derive(Subcommand)]
enum NiepCmd {
    /// Check the spectral-realization conditions of a candidate
    /// polynomial (monic in t, all roots nonzero).
    Check {
        /// The polynomial, e.g. "t^2-3t+2" or "2-3t+t^2".
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "z")]
        ring: NiepRingArg,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
    },
    /// Realize a Suleimanova spectrum by its companion matrix.
    Suleimanova {
        /// The spectrum values, dominant first, e.g. 5 -1 -2.
        #[arg(allow_hyphen_values = true, num_args = 1..)]
        lams: Vec<i64>,
    },
    /// Period-p inflation of a matrix.
    Inflate {
        matrix: String,
        #[arg(short = 'p', long)]
        p: usize,
    },
    /// Laffey gap and tracial floor of a Perron-1 spectrum.
    Laffey {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum NiepRingArg {
    Z,
    Dense,
}

#[derive(Args)]
struct GyrationArgs {
    /// Matrix file of the presentation.
    #[arg(long)]
    matrix: String,
    /// Periodic level k.
    #[arg(long)]
    level: usize,
    /// Evaluate the shift automorphism.
    #[arg(long)]
    shift: bool,
    /// Evaluate a simple graph symmetry, as a comma-separated edge
    /// permutation (row-major edge order), e.g. "0,1,3,2".
    #[arg(long)]
    symmetry: Option<String>,
    /// Evaluate the one-orbit-shift on the given full-length orbit.
    #[arg(long)]
    one_orbit: Option<usize>,
    /// Evaluate a block-code automorphism from a JSON file holding
    /// {"forward": <code>, "inverse": <code>} word maps.
    #[arg(long)]
    code: Option<String>,
    #[arg(long, default_value_t = 200_000)]
    budget: u64,
}

#[derive(Args)]
struct Sgc2Args {
    /// Path certificate (JSON list of {R, S, s} edges over Z).
    #[arg(long)]
    path: Option<String>,
    /// Single-edge mode: R matrix file.
    #[arg(long)]
    r: Option<String>,
    /// Single-edge mode: S matrix file.
    #[arg(long)]
    s: Option<String>,
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn load_matrix(path: &str) -> Result<crate::exact::IntMatrix> {
    io::parse_matrix(&read_file(path)?)
}

fn load_nonneg(path: &str) -> Result<NonnegMatrix> {
    NonnegMatrix::new(load_matrix(path)?)
        .map_err(|_| Error::MalformedInput(format!("{path}: matrix must be square nonnegative")))
}

fn load_poly_matrix(path: &str) -> Result<crate::polymatrix::PolyMatrix> {
    io::parse_poly_matrix(&read_file(path)?)
}

fn load_chain(path: &str, ring: Ring) -> Result<crate::equivalence::SseChain> {
    let v: Value = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::MalformedInput(format!("{path}: {e}")))?;
    io::chain_from_json(&v, ring)
}

type Report = (i32, String, Value);

fn dispatch(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Invariants { sub } => match sub {
            InvariantsCmd::Report { matrix, traces } => report_invariants(&matrix, traces),
            InvariantsCmd::Classify2x2(args) => classify2x2(args),
        },
        Command::Classify2x2(args) => classify2x2(args),
        Command::Structure { sub } => structure_cmd(sub),
        Command::Equiv { sub } => equiv_cmd(sub),
        Command::Neighbors(args) => neighbors_cmd(args),
        Command::Poly { sub } => poly_cmd(sub),
        Command::Niep { sub } => niep_cmd(sub),
        Command::Gyration(args) => gyration_cmd(args),
        Command::Sgc2(args) => sgc2_cmd(args),
    }
}

fn report_invariants(path: &str, traces: usize) -> Result<Report> {
    let m = load_matrix(path)?;
    let r = invariant_report(&m, traces)?;
    let mut text = String::new();
    writeln!(text, "det(I-tA)        = {}", r.det_i_ta).unwrap();
    writeln!(text, "zero multiplicity = {}", r.zero_multiplicity).unwrap();
    writeln!(text, "Bowen-Franks      = {}", r.bowen_franks).unwrap();
    writeln!(text, "det(I-A)          = {}", r.det_i_a).unwrap();
    let trace_strs: Vec<String> = r.traces.iter().map(|t| t.to_string()).collect();
    writeln!(text, "traces            = {}", trace_strs.join(", ")).unwrap();
    match r.primitive {
        Some(p) => writeln!(text, "primitive         = {p}").unwrap(),
        None => writeln!(
            text,
            "primitive         = n/a (matrix has negative entries)"
        )
        .unwrap(),
    }
    match r.period {
        Some(p) => writeln!(text, "period            = {p}").unwrap(),
        None => writeln!(text, "period            = n/a").unwrap(),
    }
    let value = json!({
        "det_i_ta": r.det_i_ta.to_string(),
        "zero_multiplicity": r.zero_multiplicity,
        "bowen_franks": r.bowen_franks.to_string(),
        "det_i_a": r.det_i_a.to_string(),
        "traces": trace_strs,
        "primitive": r.primitive,
        "period": r.period,
    });
    Ok((0, text.trim_end().to_string(), value))
}

fn classify2x2(args: ClassifyArgs) -> Result<Report> {
    let fam = TriangularFamily::new(args.a, args.b)?;
    let mut text = String::new();
    let mut value = json!({
        "a": args.a,
        "b": args.b,
        "modulus": fam.modulus().to_string(),
    });
    let obj = value.as_object_mut().unwrap();
    if args.counts {
        let (sim, se) = class_counts(&fam);
        writeln!(text, "SIM classes: {sim}, SE classes: {se}").unwrap();
        obj.insert("sim_classes".into(), json!(sim));
        obj.insert("se_classes".into(), json!(se));
    }
    if let Some(path) = &args.reduce {
        let m = load_matrix(path)?;
        let (u, x) = reduce_to_triangular(&m, &fam)?;
        writeln!(text, "canonical x = {x}, U = {u}").unwrap();
        obj.insert("canonical_x".into(), json!(x.to_string()));
        obj.insert("u".into(), io::matrix_to_json(&u));
    }
    let mut code = 0;
    if args.transpose {
        let x = args
            .x
            .ok_or_else(|| Error::Usage("--transpose needs --x".into()))?;
        let result = transpose_se_test(&fam, &Int::from(x))?;
        writeln!(text, "M_{x} SE-Z to its transpose: {result}").unwrap();
        obj.insert("transpose_se".into(), json!(result));
        if !result {
            code = 1;
        }
    } else if let (Some(x), Some(y)) = (args.x, args.y) {
        let sim = sim_z_equivalent(&fam, &Int::from(x), &Int::from(y));
        let se = se_z_equivalent(&fam, &Int::from(x), &Int::from(y));
        writeln!(text, "SIM-Z({x}, {y}) = {sim}, SE-Z({x}, {y}) = {se}").unwrap();
        obj.insert("sim_z".into(), json!(sim));
        obj.insert("se_z".into(), json!(se));
        if !se {
            code = 1;
        }
    }
    if text.is_empty() {
        return Err(Error::Usage(
            "nothing to do: pass --counts, --x/--y, --transpose or --reduce".into(),
        ));
    }
    Ok((code, text.trim_end().to_string(), value))
}

fn structure_cmd(sub: StructureCmd) -> Result<Report> {
    match sub {
        StructureCmd::Core { matrix } => {
            let a = load_nonneg(&matrix)?;
            let (core, kept) = nondegenerate_core(&a);
            let text = format!("core = {}\nkept indices = {kept:?}", core.inner());
            let value = json!({
                "core": io::matrix_to_json(core.inner()),
                "kept": kept,
            });
            Ok((0, text, value))
        }
        StructureCmd::Primitive { matrix } => {
            let a = load_nonneg(&matrix)?;
            let p = is_primitive(&a);
            let (code, text, value) = match &p {
                Primitivity::Primitive { exponent } => (
                    0,
                    format!("primitive: A^{exponent} > 0"),
                    json!({ "primitive": true, "exponent": exponent }),
                ),
                Primitivity::Reducible { from, to } => (
                    1,
                    format!("not primitive: vertex {to} unreachable from {from}"),
                    json!({ "primitive": false, "reducible": [from, to] }),
                ),
                Primitivity::ImprimitivePeriod { period } => (
                    1,
                    format!("not primitive: irreducible of period {period}"),
                    json!({ "primitive": false, "period": period }),
                ),
            };
            Ok((code, text, value))
        }
        StructureCmd::Period { matrix } => {
            let a = load_nonneg(&matrix)?;
            let irreducible = is_irreducible(&a);
            if !irreducible {
                return Ok((1, "reducible".to_string(), json!({ "irreducible": false })));
            }
            let p = period(&a)?;
            Ok((
                0,
                format!("irreducible, period {p}"),
                json!({ "irreducible": true, "period": p }),
            ))
        }
        StructureCmd::Blockform { matrix } => {
            let a = load_nonneg(&matrix)?;
            let cbf = cyclic_block_form(&a)?;
            let mut text = format!(
                "period {}, classes {:?}, permutation {:?}",
                cbf.period, cbf.class_sizes, cbf.permutation
            );
            for (i, b) in cbf.blocks.iter().enumerate() {
                write!(text, "\nA_{} = {}", i + 1, b).unwrap();
            }
            let value = json!({
                "period": cbf.period,
                "class_sizes": cbf.class_sizes,
                "permutation": cbf.permutation,
                "blocks": cbf.blocks.iter().map(io::matrix_to_json).collect::<Vec<_>>(),
            });
            Ok((0, text, value))
        }
        StructureCmd::Higher { matrix, k } => {
            let a = load_nonneg(&matrix)?;
            let hb = higher_block(&a, k)?;
            let det = det_one_minus_tA(hb.inner())?;
            let text = format!("A^[{k}] = {}\ndet(I-tA^[{k}]) = {det}", hb.inner());
            let value = json!({
                "k": k,
                "matrix": io::matrix_to_json(hb.inner()),
                "det_i_ta": det.to_string(),
            });
            Ok((0, text, value))
        }
    }
}

fn equiv_cmd(sub: EquivCmd) -> Result<Report> {
    match sub {
        EquivCmd::VerifyEsse { a, b, r, s, ring } => {
            let (a, b) = (load_matrix(&a)?, load_matrix(&b)?);
            let w = EsseWitness::new(load_matrix(&r)?, load_matrix(&s)?, ring.into());
            match verify_esse(&a, &b, &w) {
                Ok(()) => Ok((
                    0,
                    "verified: A = RS, B = SR".into(),
                    json!({ "verified": true }),
                )),
                Err(reason) => Ok((
                    1,
                    format!("refuted: {reason}"),
                    json!({ "verified": false, "reason": reason.to_string() }),
                )),
            }
        }
        EquivCmd::VerifyChain { chain, ring } => {
            let chain = load_chain(&chain, ring.into())?;
            match verify_sse_chain(&chain) {
                Ok((a, b, lag)) => Ok((
                    0,
                    format!("verified chain: lag {lag}, {a} -> {b}"),
                    json!({
                        "verified": true,
                        "lag": lag,
                        "source": io::matrix_to_json(&a),
                        "target": io::matrix_to_json(&b),
                    }),
                )),
                Err(reason) => Ok((
                    1,
                    format!("refuted: {reason}"),
                    json!({ "verified": false, "reason": reason.to_string() }),
                )),
            }
        }
        EquivCmd::Compress { chain, ring } => {
            let chain = load_chain(&chain, ring.into())?;
            let se: SeWitness = compress_sse_to_se(&chain)?;
            Ok((
                0,
                format!(
                    "shift equivalence of lag {}: R = {}, S = {}",
                    se.lag, se.r, se.s
                ),
                json!({
                    "lag": se.lag,
                    "r": io::matrix_to_json(&se.r),
                    "s": io::matrix_to_json(&se.s),
                }),
            ))
        }
        EquivCmd::VerifySe {
            a,
            b,
            r,
            s,
            lag,
            ring,
        } => {
            let (a, b) = (load_matrix(&a)?, load_matrix(&b)?);
            let w = SeWitness {
                r: load_matrix(&r)?,
                s: load_matrix(&s)?,
                lag,
                ring: ring.into(),
            };
            match verify_se(&a, &b, &w) {
                Ok(()) => Ok((
                    0,
                    format!("verified shift equivalence of lag {lag}"),
                    json!({ "verified": true, "lag": lag }),
                )),
                Err(reason) => Ok((
                    1,
                    format!("refuted: {reason}"),
                    json!({ "verified": false, "reason": reason.to_string() }),
                )),
            }
        }
        EquivCmd::Neighbors(args) => neighbors_cmd(args),
    }
}

fn neighbors_cmd(args: NeighborsArgs) -> Result<Report> {
    let a = load_nonneg(&args.matrix)?;
    let search = esse_neighbors(&a, args.max_inner, args.max_entry, args.budget)?;
    let mut text = format!(
        "{} neighbor class(es){}",
        search.neighbors.len(),
        if search.complete {
            ""
        } else {
            " (budget exhausted: partial)"
        }
    );
    for (w, b) in &search.neighbors {
        write!(text, "\nB = {b} via R = {}, S = {}", w.r, w.s).unwrap();
    }
    let value = json!({
        "complete": search.complete,
        "neighbors": search
            .neighbors
            .iter()
            .map(|(w, b)| json!({
                "b": io::matrix_to_json(b),
                "r": io::matrix_to_json(&w.r),
                "s": io::matrix_to_json(&w.s),
            }))
            .collect::<Vec<_>>(),
    });
    let code = if search.complete { 0 } else { 3 };
    Ok((code, text, value))
}

fn poly_cmd(sub: PolyCmd) -> Result<Report> {
    match sub {
        PolyCmd::Nzc { matrix } => {
            let m = load_poly_matrix(&matrix)?;
            let nzc = is_nzc(&m)?;
            let text = if nzc { "NZC" } else { "not NZC" };
            Ok((if nzc { 0 } else { 1 }, text.into(), json!({ "nzc": nzc })))
        }
        PolyCmd::Sharp { matrix } => {
            let m = load_poly_matrix(&matrix)?;
            let exp = sharp_expand(&m)?;
            let ok = verify_sharp(&m)?;
            let text = format!(
                "A# is {0}x{0}\nA# = {1}\ndet(I-A) = det(I-tA#): {2}",
                exp.matrix.size(),
                exp.matrix.inner(),
                ok
            );
            let value = json!({
                "size": exp.matrix.size(),
                "sharp": io::matrix_to_json(exp.matrix.inner()),
                "det_identity": ok,
            });
            Ok((if ok { 0 } else { 1 }, text, value))
        }
        PolyCmd::Move {
            matrix,
            i,
            j,
            entry,
            side,
            class,
        } => {
            let a = load_poly_matrix(&matrix)?;
            let poly = io::parse_poly(&entry, 1, 1)?;
            let spec = ElementaryMoveSpec {
                i,
                j,
                poly,
                side: match side {
                    SideArg::Left => MoveSide::Left,
                    SideArg::Right => MoveSide::Right,
                },
            };
            let class = match class {
                ClassArg::Tzplus => PresentationClass::TZplusT,
                ClassArg::Nzc => PresentationClass::Nzc,
            };
            let result = positive_move(&a.i_minus(), &spec, class)?;
            let b = result.i_minus();
            let text = format!("I - B = {result}\nB = {b}");
            Ok((
                0,
                text,
                json!({ "result": io::write_poly_matrix(&result), "b": io::write_poly_matrix(&b) }),
            ))
        }
        PolyCmd::Psse { r, s } => {
            let log = psse_chain(&load_matrix(&r)?, &load_matrix(&s)?)?;
            log.replay()?;
            let text = format!(
                "PSSE positive equivalence: {} moves\nstart: {}\nend:   {}",
                log.moves.len(),
                log.start,
                log.end
            );
            let value = json!({
                "moves": log.moves.len(),
                "start": io::write_poly_matrix(&log.start),
                "end": io::write_poly_matrix(&log.end),
                "log": io::move_log_to_json(&log),
            });
            Ok((0, text, value))
        }
        PolyCmd::Replay { log } => {
            let v: Value = serde_json::from_str(&read_file(&log)?)
                .map_err(|e| Error::MalformedInput(format!("{log}: {e}")))?;
            let parsed = io::move_log_from_json(&v)?;
            let text = format!(
                "replayed {} moves inside the declared class\nstart: {}\nend:   {}",
                parsed.moves.len(),
                parsed.start,
                parsed.end
            );
            let value = json!({
                "moves": parsed.moves.len(),
                "start": io::write_poly_matrix(&parsed.start),
                "end": io::write_poly_matrix(&parsed.end),
            });
            Ok((0, text, value))
        }
        PolyCmd::Flow { matrix } => {
            let m = load_poly_matrix(&matrix)?;
            let (group, det) = flow_invariants(&m)?;
            let text = format!("Bowen-Franks = {group}\ndet(I-A(1)) = {det}");
            Ok((
                0,
                text,
                json!({ "bowen_franks": group.to_string(), "det_i_a1": det.to_string() }),
            ))
        }
    }
}

/// Parse a spectrum polynomial: monic in `t`, integer coefficients.
fn parse_spectrum(poly: &str) -> Result<CandidateSpectrum> {
    let p: IntPoly = io::parse_poly(poly, 1, 1)?;
    CandidateSpectrum::from_int_poly(p)
}

fn niep_cmd(sub: NiepCmd) -> Result<Report> {
    match sub {
        NiepCmd::Check {
            poly,
            ring,
            horizon,
        } => {
            let spec = parse_spectrum(&poly)?;
            let ring = match ring {
                NiepRingArg::Z => CheckRing::Z,
                NiepRingArg::Dense => CheckRing::Dense,
            };
            let report = check_conditions(&spec, ring, horizon)?;
            let mut text = String::new();
            let perron = match &report.perron {
                PerronVerdict::Pass { exact: true } => "pass (exact dominant root)".to_string(),
                PerronVerdict::Pass { exact: false } => "pass (numeric)".to_string(),
                PerronVerdict::Fail => "fail".to_string(),
                PerronVerdict::NumericUncertain => "numeric-uncertain".to_string(),
            };
            writeln!(text, "Perron condition: {perron}").unwrap();
            writeln!(text, "coefficients condition: pass").unwrap();
            match (&report.net_trace_failure, &report.dense_trace_failure) {
                (Some((n, v)), _) => {
                    writeln!(text, "net trace condition: FAIL at n = {n} (value {v})").unwrap()
                }
                (_, Some(f)) => writeln!(text, "trace condition: FAIL ({f:?})").unwrap(),
                _ => writeln!(text, "trace condition: pass up to horizon {horizon}").unwrap(),
            }
            writeln!(text, "JLL minimum size bound: {}", report.jll_min_size).unwrap();
            let passes = report.passes();
            writeln!(text, "overall: {}", if passes { "PASS" } else { "FAIL" }).unwrap();
            let value = json!({
                "perron": perron,
                "coefficients_ok": true,
                "net_trace_failure": report
                    .net_trace_failure
                    .as_ref()
                    .map(|(n, v)| json!([n, v.to_string()])),
                "dense_trace_failure": report
                    .dense_trace_failure
                    .as_ref()
                    .map(|f| format!("{f:?}")),
                "jll_min_size": report.jll_min_size,
                "passes": passes,
                "horizon": horizon,
            });
            Ok((
                if passes { 0 } else { 1 },
                text.trim_end().to_string(),
                value,
            ))
        }
        NiepCmd::Suleimanova { lams } => {
            let lams: Vec<Int> = lams.into_iter().map(Int::from).collect();
            let m = suleimanova_realize(&lams)?;
            let text = format!("companion realization = {}", m.inner());
            Ok((0, text, json!({ "matrix": io::matrix_to_json(m.inner()) })))
        }
        NiepCmd::Inflate { matrix, p } => {
            let d = load_nonneg(&matrix)?;
            let a = inflate_period(&d, p)?;
            let det = det_one_minus_tA(a.inner())?;
            let text = format!("A = {}\ndet(I-tA) = {det}", a.inner());
            Ok((
                0,
                text,
                json!({ "matrix": io::matrix_to_json(a.inner()), "det_i_ta": det.to_string() }),
            ))
        }
        NiepCmd::Laffey { poly, horizon } => {
            let spec = parse_spectrum(&poly)?;
            let lq = laffey_quantities(&spec, horizon)?;
            let text = lq.bound_description();
            let value = json!({
                "g": format!("{:?}", lq.g),
                "m": lq.m.as_ref().map(|m| m.to_string()),
                "bound": lq.bound_description(),
            });
            Ok((0, text, value))
        }
    }
}

fn gyration_cmd(args: GyrationArgs) -> Result<Report> {
    let a = load_nonneg(&args.matrix)?;
    let level = args.level;
    let action: AutomorphismAction = if args.shift {
        let mut levels = vec![level];
        let mut d = level;
        while d % 2 == 0 {
            d /= 2;
            levels.push(d);
        }
        AutomorphismAction::shift(&a, levels, args.budget)?
    } else if let Some(sym) = &args.symmetry {
        let perm: Vec<usize> = sym
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Usage(format!("bad edge index {s:?} in --symmetry")))
            })
            .collect::<Result<_>>()?;
        let aut = Automorphism::from_graph_symmetry(&a, &perm)?;
        let mut levels = vec![level];
        let mut d = level;
        while d % 2 == 0 {
            d /= 2;
            levels.push(d);
        }
        AutomorphismAction::from_automorphism(&aut, levels, args.budget)?
    } else if let Some(orbit) = args.one_orbit {
        let table = enumerate_periodic(&a, level, args.budget)?;
        let full = table.full_orbits();
        let &orbit_idx = full.get(orbit).ok_or_else(|| {
            Error::Usage(format!(
                "orbit index {orbit} out of range ({} full orbits)",
                full.len()
            ))
        })?;
        let la = LevelAction::one_orbit_shift(table, orbit_idx)?;
        let mut action = AutomorphismAction::new(a.clone(), args.budget);
        action.set_level(level, la)?;
        action
    } else if let Some(path) = &args.code {
        let v: Value = serde_json::from_str(&read_file(path)?)
            .map_err(|e| Error::MalformedInput(format!("{path}: {e}")))?;
        let forward = io::block_code_from_json(&v["forward"])?;
        let inverse = io::block_code_from_json(&v["inverse"])?;
        if forward.domain != a {
            return Err(Error::Usage("code domain does not match --matrix".into()));
        }
        let aut = Automorphism::new(forward, inverse)?;
        let mut levels = vec![level];
        let mut d = level;
        while d % 2 == 0 {
            d /= 2;
            levels.push(d);
        }
        AutomorphismAction::from_automorphism(&aut, levels, args.budget)?
    } else {
        return Err(Error::Usage(
            "choose an automorphism: --shift, --symmetry PERM, --one-orbit IDX or --code FILE"
                .into(),
        ));
    };
    let la = action.level(level)?;
    let g = la.gyration();
    let sign = la.orbit_sign();
    let s = sgcc(&action, level)?;
    let text = format!(
        "level {level}: g = {g} (mod {level}), sign xi = {sign}, SGCC_{level} = {s} (mod {level})"
    );
    let value = json!({ "level": level, "gyration": g, "sign": sign, "sgcc": s });
    Ok((0, text, value))
}

fn sgc2_cmd(args: Sgc2Args) -> Result<Report> {
    match (&args.path, &args.r, &args.s) {
        (Some(path), None, None) => {
            let chain = load_chain(path, Ring::Z)?;
            let v = path_sgc2(&chain)?;
            Ok((
                if v == 0 { 0 } else { 1 },
                format!("sgc2(path) = {v} (mod 2)"),
                json!({ "sgc2": v }),
            ))
        }
        (None, Some(r), Some(s)) => {
            let v = sgc2(&load_matrix(r)?, &load_matrix(s)?)?;
            Ok((
                if v == 0 { 0 } else { 1 },
                format!("sgc2(R, S) = {v} (mod 2)"),
                json!({ "sgc2": v }),
            ))
        }
        _ => Err(Error::Usage(
            "pass either --path FILE or both --r and --s".into(),
        )),
    }
}
