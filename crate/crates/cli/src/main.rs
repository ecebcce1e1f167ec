//! Batch front end for the unicover library.
//!
//! Every subcommand reads JSON (inline via `--in`, or from a file), writes
//! one JSON document to stdout or `--out`, and re-verifies any witness it
//! is about to print. Exit codes: 0 success, 2 parse, 3 domain or usage,
//! 4 mathematical refusal (the anomalous obstruction, with the witness on
//! stdout), 5 internal integrity failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use unicover::curves::{
    elliptic_verdict, reduce_matrix_global_elliptic, reduce_matrix_global_p1, split_elliptic,
    EllipticMarkedCurve, GlobalReduction,
};
use unicover::json::{
    curve_from_json, elliptic_fn_to_json, lang_section_to_json, matrix_elliptic_to_json,
    matrix_fq_to_json, matrix_from_json, matrix_laurent_to_json, matrix_p1_to_json,
    orbit_report_to_json, p1_to_json, series_from_json, series_to_json, verdict_to_json,
    DecodedMatrix,
};
use unicover::series::{artin_schreier_solve, split_p1};
use unicover::unipotent::{
    lang_map, lang_section, orbit_classes, p_conjugate, p_equiv_decide, UnipotentMatrix,
};
use unicover::{Error, FiniteField, LaurentSeries, Result, Ring};

#[derive(Parser)]
#[command(name = "unicover", version, about = "Exact computation with p-group covers via unipotent matrix presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field characteristic.
    #[arg(long, global = true)]
    p: Option<u64>,

    /// Extension degree over the prime field (default 1).
    #[arg(long = "ext-degree", global = true)]
    ext_degree: Option<usize>,

    /// Modulus coefficients low-to-high, overriding --ext-degree
    /// (e.g. --modulus 1,1,1 for F_4).
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,

    /// Working precision for series created from sparse input.
    #[arg(long, global = true, default_value_t = 40)]
    prec: i64,

    /// Geometric model: "p1", or an elliptic curve as JSON or a file path.
    #[arg(long, global = true)]
    model: Option<String>,

    /// Input payload: inline JSON or a file path.
    #[arg(long = "in", global = true)]
    input: Option<String>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Accepted for script compatibility; no current subcommand draws
    /// randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve wp(b) = f over the local field, reporting solvability.
    WpSolve,
    /// Split a series as wp(b) plus a global function for the model.
    Split,
    /// Conjugate a matrix of series into one with global entries.
    Reduce,
    /// Decide twisted-conjugation equivalence of two matrices.
    Equiv,
    /// Enumerate the twisted-conjugation orbits of U_n(F_q).
    Orbits {
        /// Matrix dimension.
        n: usize,
    },
    /// Find a Lang-map preimage over the smallest sufficient extension.
    LangSection,
    /// Full report on the splitting behavior of an elliptic model.
    EllipticAnalyze,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => match emit(&cli, &value) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&cli, &e),
        },
        Err(e) => fail(&cli, &e),
    }
}

fn fail(cli: &Cli, e: &Error) -> ExitCode {
    eprintln!("{e}");
    let code = match e {
        Error::Parse(_) => 2,
        Error::Usage(_) | Error::Domain(_) => 3,
        Error::Refusal { entry, obstruction } => {
            let witness = json!({
                "entry": format!("{},{}", entry.0, entry.1),
                "obstruction": obstruction,
            });
            let _ = emit(cli, &witness);
            4
        }
        Error::Integrity(_) => 5,
    };
    ExitCode::from(code)
}

fn emit(cli: &Cli, value: &Value) -> Result<()> {
    let text = format!("{:#}\n", value);
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Value> {
    match cli.command {
        Command::WpSolve => cmd_wp_solve(cli),
        Command::Split => cmd_split(cli),
        Command::Reduce => cmd_reduce(cli),
        Command::Equiv => cmd_equiv(cli),
        Command::Orbits { n } => cmd_orbits(cli, n),
        Command::LangSection => cmd_lang_section(cli),
        Command::EllipticAnalyze => cmd_elliptic_analyze(cli),
    }
}

/// Inline JSON if the text scans as JSON, otherwise the content of the file
/// it names.
fn load_json(raw: &str) -> Result<Value> {
    let trimmed = raw.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("inline JSON: {e}")));
    }
    let text = std::fs::read_to_string(trimmed)
        .map_err(|e| Error::Parse(format!("cannot read {trimmed}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{trimmed}: {e}")))
}

fn input_json(cli: &Cli) -> Result<Value> {
    let raw = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::Usage("this command needs --in <json or path>".into()))?;
    load_json(raw)
}

/// The field named by --p / --ext-degree / --modulus, if any.
fn field_from_flags(cli: &Cli) -> Result<Option<FiniteField>> {
    let Some(p) = cli.p else {
        if cli.ext_degree.is_some() || cli.modulus.is_some() {
            return Err(Error::Usage("--ext-degree and --modulus need --p".into()));
        }
        return Ok(None);
    };
    let field = match (&cli.modulus, cli.ext_degree) {
        (Some(m), _) => FiniteField::with_modulus(p, m)?,
        (None, Some(e)) => FiniteField::extension(p, e)?,
        (None, None) => FiniteField::prime(p)?,
    };
    Ok(Some(field))
}

fn require_field(cli: &Cli) -> Result<FiniteField> {
    field_from_flags(cli)?
        .ok_or_else(|| Error::Usage("this command needs --p (with --ext-degree or --modulus for extensions)".into()))
}

enum Model {
    P1,
    Elliptic(EllipticMarkedCurve),
}

fn parse_model(cli: &Cli) -> Result<Model> {
    let raw = cli
        .model
        .as_ref()
        .ok_or_else(|| Error::Usage("this command needs --model (\"p1\" or curve JSON)".into()))?;
    if raw.trim().eq_ignore_ascii_case("p1") {
        return Ok(Model::P1);
    }
    curve_from_json(&load_json(raw)?).map(Model::Elliptic)
}

fn verified_or_integrity(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Integrity(format!("{what} failed re-verification")))
    }
}

fn cmd_wp_solve(cli: &Cli) -> Result<Value> {
    let field = field_from_flags(cli)?;
    let f = series_from_json(&input_json(cli)?, field.as_ref(), Some(cli.prec))?;
    match artin_schreier_solve(&f) {
        None => Ok(json!({ "solvable": false })),
        Some(b) => {
            verified_or_integrity(b.artin_schreier().agrees_with(&f), "local wp solution")?;
            Ok(json!({ "solvable": true, "b": series_to_json(&b), "verified": true }))
        }
    }
}

fn cmd_split(cli: &Cli) -> Result<Value> {
    let field = field_from_flags(cli)?;
    match parse_model(cli)? {
        Model::P1 => {
            let f = series_from_json(&input_json(cli)?, field.as_ref(), Some(cli.prec))?;
            let (b, h) = split_p1(&f);
            let recon = &b.artin_schreier() + &h.to_series(f.prec());
            verified_or_integrity(recon.agrees_with(&f), "projective-line splitting")?;
            Ok(json!({
                "b": series_to_json(&b),
                "h": p1_to_json(&h),
                "verified": true,
            }))
        }
        Model::Elliptic(curve) => {
            let f = series_from_json(&input_json(cli)?, Some(curve.field()), Some(cli.prec))?;
            let split = split_elliptic(&curve, &f)?;
            let gap = LaurentSeries::monomial(
                curve.field().from_u64(split.obstruction),
                -1,
                f.prec(),
            );
            let recon = &(&split.preimage.artin_schreier()
                + &split.global.expansion(f.prec()))
                + &gap;
            verified_or_integrity(recon.agrees_with(&f), "elliptic splitting")?;
            Ok(json!({
                "b": series_to_json(&split.preimage),
                "global": elliptic_fn_to_json(&split.global),
                "obstruction": split.obstruction,
                "verified": true,
            }))
        }
    }
}

/// The reduction postcondition, checked from scratch: the conjugated matrix
/// agrees with the claimed global matrix entry by entry.
fn reduction_verified<G: Ring>(
    m: &UnipotentMatrix<LaurentSeries>,
    red: &GlobalReduction<G>,
    expand: impl Fn(&G, i64) -> LaurentSeries,
) -> bool {
    let conj = p_conjugate(&red.conjugator, m);
    if !conj.agrees_with(&red.residual) {
        return false;
    }
    unicover::unipotent::positions_row_major(m.n())
        .into_iter()
        .all(|(i, j)| {
            let r = red.residual.entry(i, j);
            r.agrees_with(&expand(red.global.entry(i, j), r.prec()))
        })
}

fn cmd_reduce(cli: &Cli) -> Result<Value> {
    let field = field_from_flags(cli)?;
    let model = parse_model(cli)?;
    let curve_hint = match &model {
        Model::Elliptic(c) => Some(c.clone()),
        Model::P1 => None,
    };
    let decoded = matrix_from_json(
        &input_json(cli)?,
        field.as_ref().or(curve_hint.as_ref().map(|c| c.field())),
        curve_hint.as_ref(),
        cli.prec,
    )?;
    let m = match decoded {
        DecodedMatrix::Laurent(m) => m,
        other => {
            return Err(Error::Usage(format!(
                "reduce expects a matrix of series (ring \"laurent\"), got \"{}\"",
                other.ring_name()
            )))
        }
    };
    match model {
        Model::P1 => {
            let red = reduce_matrix_global_p1(&m)?;
            let ok = reduction_verified(&m, &red, |g, prec| g.to_series(prec));
            verified_or_integrity(ok, "projective-line reduction")?;
            Ok(json!({
                "B": matrix_laurent_to_json(&red.conjugator),
                "M_prime": matrix_p1_to_json(&red.global),
                "verified": true,
            }))
        }
        Model::Elliptic(curve) => {
            let red = reduce_matrix_global_elliptic(&curve, &m)?;
            let ok = reduction_verified(&m, &red, |g, prec| g.expansion(prec));
            verified_or_integrity(ok, "elliptic reduction")?;
            Ok(json!({
                "B": matrix_laurent_to_json(&red.conjugator),
                "M_prime": matrix_elliptic_to_json(&red.global),
                "verified": true,
            }))
        }
    }
}

fn cmd_equiv(cli: &Cli) -> Result<Value> {
    let v = input_json(cli)?;
    let (mv, mpv) = match &v {
        Value::Array(items) if items.len() == 2 => (&items[0], &items[1]),
        Value::Object(map) => {
            let m = map
                .get("m")
                .ok_or_else(|| Error::Parse("equiv input object needs \"m\"".into()))?;
            let mp = map
                .get("m_prime")
                .ok_or_else(|| Error::Parse("equiv input object needs \"m_prime\"".into()))?;
            (m, mp)
        }
        _ => {
            return Err(Error::Parse(
                "equiv input must be [M, M'] or {\"m\": ..., \"m_prime\": ...}".into(),
            ))
        }
    };
    let field = field_from_flags(cli)?;
    let a = matrix_from_json(mv, field.as_ref(), None, cli.prec)?;
    let b = matrix_from_json(mpv, field.as_ref(), None, cli.prec)?;

    match (a, b) {
        (DecodedMatrix::Fq(m), DecodedMatrix::Fq(mp)) => match p_equiv_decide(&m, &mp)? {
            None => Ok(json!({ "equivalent": false })),
            Some(c) => {
                verified_or_integrity(p_conjugate(&c, &mp) == m, "equivalence witness")?;
                Ok(json!({
                    "equivalent": true,
                    "C": matrix_fq_to_json(&c),
                    "verified": true,
                }))
            }
        },
        (DecodedMatrix::Laurent(m), DecodedMatrix::Laurent(mp)) => match p_equiv_decide(&m, &mp)? {
            None => Ok(json!({ "equivalent": false })),
            Some(c) => {
                verified_or_integrity(
                    p_conjugate(&c, &mp).agrees_with(&m),
                    "equivalence witness",
                )?;
                Ok(json!({
                    "equivalent": true,
                    "C": matrix_laurent_to_json(&c),
                    "verified": true,
                }))
            }
        },
        (a, b) => Err(Error::Usage(format!(
            "equivalence is decided over F_q or over series, got \"{}\" and \"{}\"",
            a.ring_name(),
            b.ring_name()
        ))),
    }
}

fn cmd_orbits(cli: &Cli, n: usize) -> Result<Value> {
    let field = require_field(cli)?;
    Ok(orbit_report_to_json(&orbit_classes(n, &field)?))
}

fn cmd_lang_section(cli: &Cli) -> Result<Value> {
    let field = field_from_flags(cli)?;
    let decoded = matrix_from_json(&input_json(cli)?, field.as_ref(), None, cli.prec)?;
    let m = match decoded {
        DecodedMatrix::Fq(m) => m,
        other => {
            return Err(Error::Usage(format!(
                "lang-section expects a matrix over F_q, got \"{}\"",
                other.ring_name()
            )))
        }
    };
    let section = lang_section(&m)?;
    verified_or_integrity(
        lang_map(&section.preimage) == section.base_image,
        "Lang preimage",
    )?;
    let mut out = lang_section_to_json(&section);
    out["verified"] = json!(true);
    Ok(out)
}

fn cmd_elliptic_analyze(cli: &Cli) -> Result<Value> {
    // the curve may arrive as --model or as the input payload
    let curve = match (&cli.model, &cli.input) {
        (Some(_), _) => match parse_model(cli)? {
            Model::Elliptic(c) => c,
            Model::P1 => {
                return Err(Error::Usage(
                    "elliptic-analyze needs an elliptic curve, not \"p1\"".into(),
                ))
            }
        },
        (None, Some(_)) => curve_from_json(&input_json(cli)?)?,
        (None, None) => {
            return Err(Error::Usage(
                "elliptic-analyze needs the curve via --model or --in".into(),
            ))
        }
    };
    Ok(verdict_to_json(&elliptic_verdict(&curve)?))
}
