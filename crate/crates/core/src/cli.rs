//! Command-line front end: one subcommand per operation, JSON on stdout.
//!
//! Exit codes: 0 on success, 1 on a mathematical or domain error, 2 on a
//! usage or parse error. Errors go to stderr as `{"error": kind, "message": text}`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::extension::{Automorphism, ExtensionDescriptor, ExtensionField};
use crate::magnitude::{padic_magnitude, parse_rational, vp, Magnitude};
use crate::poly::{newton_polygon, parse_polynomial, root_magnitudes, spectral_value};
use crate::seminorm::{
    check_axioms, seminorm_from_bounded, seminorm_from_bounded_table, seminorm_from_const_estimate,
    smoothing_estimate, Axiom, Carrier, Elem, SeminormSpec, DEFAULT_WINDOW,
};

#[derive(Parser, Debug)]
#[command(name = "normext", version, about = "Exact nonarchimedean norms and their extensions")]
struct Cli {
    /// Add a decimal "approx" field to every printed magnitude.
    #[arg(long, global = true)]
    approx: bool,
    /// JSON output (the only format; accepted for compatibility).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PrimeArg {
    #[arg(long)]
    p: u64,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[arg(long, default_value_t = 1024)]
    max_n: u64,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// p-adic valuation of a rational.
    Vp {
        #[command(flatten)]
        p: PrimeArg,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// p-adic magnitude of a rational.
    Norm {
        #[command(flatten)]
        p: PrimeArg,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Spectral value of a monic polynomial.
    SpectralValue {
        #[command(flatten)]
        p: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Newton polygon and root magnitudes of a monic polynomial.
    Newton {
        #[command(flatten)]
        p: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Spectral norm of an element of an extension.
    ExtNorm {
        #[arg(long)]
        ext: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Basis norm of an element, with the multiplicativity bound of the basis.
    BasisNorm {
        #[arg(long)]
        ext: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Max of a norm over automorphisms (identity always included).
    GaloisNorm {
        #[arg(long)]
        ext: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Image of the generator, as coordinates. Repeatable.
        #[arg(long = "aut", allow_hyphen_values = true)]
        auts: Vec<String>,
        /// Seminorm to symmetrize; defaults to the spectral norm.
        #[arg(long)]
        seminorm: Option<PathBuf>,
    },
    /// Smoothing limit estimate `inf_n f(x^n)^(1/n)`.
    Smooth {
        #[arg(long)]
        seminorm: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[command(flatten)]
        estimate: EstimateArgs,
    },
    /// Limit estimate of `f(x y^n) / f(y)^n`.
    FromConst {
        #[arg(long)]
        seminorm: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[command(flatten)]
        estimate: EstimateArgs,
    },
    /// `sup_y f(xy)/f(y)`; prints the whole table when no element is given.
    FromBounded {
        #[arg(long)]
        seminorm: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Checks an axiom profile over a sample file.
    Check {
        #[arg(long)]
        seminorm: PathBuf,
        /// JSON list of rationals, coordinate vectors, or residues.
        #[arg(long)]
        samples: PathBuf,
        /// Comma-separated axiom names; `isometry` uses each `--aut`.
        #[arg(long, default_value = "seminorm")]
        profile: String,
        #[arg(long = "aut", allow_hyphen_values = true)]
        auts: Vec<String>,
    },
}

/// Runs the command line `args` (without the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("normext")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let message = e.render().to_string().trim().to_string();
            emit_error(err, "usage", &message);
            return 2;
        }
    };
    match execute(&cli.command) {
        Ok(mut value) => {
            if cli.approx {
                annotate(&mut value);
            }
            let _ = writeln!(out, "{value}");
            0
        }
        Err(e) => {
            let message = match &e {
                Error::Input(m) | Error::Domain(m) | Error::Resource(m) | Error::Certificate(m) => m.clone(),
                other => other.to_string(),
            };
            emit_error(err, e.kind(), &message);
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Parse { .. } => 2,
        _ => 1,
    }
}

fn emit_error(err: &mut dyn Write, kind: &str, message: &str) {
    let _ = writeln!(err, "{}", json!({ "error": kind, "message": message }));
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn one_field<T: Serialize>(key: &str, v: &T) -> Value {
    let mut m = Map::new();
    m.insert(key.to_string(), to_value(v));
    Value::Object(m)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        position: e.column(),
        message: format!("{}: {e}", path.display()),
    })
}

fn load_ext(path: &Path) -> Result<Arc<ExtensionField>, Error> {
    let d: ExtensionDescriptor = read_json(path)?;
    ExtensionField::from_descriptor(&d)
}

fn parse_auts(ext: &Arc<ExtensionField>, auts: &[String]) -> Result<Vec<Automorphism>, Error> {
    auts.iter()
        .map(|a| Automorphism::new(crate::extension::parse_element(ext, a)?))
        .collect()
}

fn sample_text(v: &Value) -> Result<String, Error> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(items) => Ok(items.iter().map(sample_text).collect::<Result<Vec<_>, _>>()?.join(",")),
        other => Err(Error::Input(format!("sample {other} is not a rational or coordinate list"))),
    }
}

fn execute(cmd: &Command) -> Result<Value, Error> {
    Ok(match cmd {
        Command::Vp { p, x } => one_field("valuation", &vp(&parse_rational(x)?, p.p)?),
        Command::Norm { p, x } => one_field("magnitude", &padic_magnitude(&parse_rational(x)?, p.p)?),
        Command::SpectralValue { p, poly } => {
            one_field("magnitude", &spectral_value(&parse_polynomial(poly)?, p.p)?)
        }
        Command::Newton { p, poly } => {
            let poly = parse_polynomial(poly)?;
            json!({
                "polygon": to_value(&newton_polygon(&poly, p.p)?),
                "root_magnitudes": to_value(&root_magnitudes(&poly, p.p)?),
            })
        }
        Command::ExtNorm { ext, element } => {
            let ext = load_ext(ext)?;
            let x = crate::extension::parse_element(&ext, element)?;
            one_field("magnitude", &x.spectral_norm()?)
        }
        Command::BasisNorm { ext, element } => {
            let ext = load_ext(ext)?;
            let x = crate::extension::parse_element(&ext, element)?;
            json!({
                "bound": to_value(&ext.basis_norm_bound()?),
                "magnitude": to_value(&x.basis_norm()?),
            })
        }
        Command::GaloisNorm { ext, element, auts, seminorm } => {
            let ext = load_ext(ext)?;
            let x = crate::extension::parse_element(&ext, element)?;
            let mut list = vec![Automorphism::identity(&ext)];
            list.extend(parse_auts(&ext, auts)?);
            let f = match seminorm {
                Some(path) => read_json::<SeminormSpec>(path)?,
                None => SeminormSpec::Spectral(ext.clone()),
            };
            if f.carrier() != Carrier::Extension(ext.clone()) {
                return Err(Error::Input(format!("{f} is not defined on the given extension")));
            }
            one_field("magnitude", &f.galois_norm(&list, &x)?)
        }
        Command::Smooth { seminorm, element, estimate } => {
            let f: SeminormSpec = read_json(seminorm)?;
            let x = f.carrier().parse_elem(element)?;
            to_value(&smoothing_estimate(&f, &x, estimate.max_n, estimate.window)?)
        }
        Command::FromConst { seminorm, y, element, estimate } => {
            let f: SeminormSpec = read_json(seminorm)?;
            let carrier = f.carrier();
            let (y, x) = (carrier.parse_elem(y)?, carrier.parse_elem(element)?);
            to_value(&seminorm_from_const_estimate(&f, &y, &x, estimate.max_n, estimate.window)?)
        }
        Command::FromBounded { seminorm, element } => {
            let f: SeminormSpec = read_json(seminorm)?;
            match element {
                Some(e) => one_field("magnitude", &seminorm_from_bounded(&f, &f.carrier().parse_elem(e)?)?),
                None => one_field("seminorm", &seminorm_from_bounded_table(&f)?),
            }
        }
        Command::Check { seminorm, samples, profile, auts } => {
            let f: SeminormSpec = read_json(seminorm)?;
            let carrier = f.carrier();
            let raw: Vec<Value> = read_json(samples)?;
            let elems = raw
                .iter()
                .map(|v| carrier.parse_elem(&sample_text(v)?))
                .collect::<Result<Vec<Elem>, _>>()?;
            let mut axioms = Vec::new();
            for name in profile.split(',').filter(|s| !s.trim().is_empty()) {
                if name.trim().eq_ignore_ascii_case("isometry") {
                    let Carrier::Extension(ext) = &carrier else {
                        return Err(Error::Input(format!("{f} is not defined on an extension field")));
                    };
                    if auts.is_empty() {
                        return Err(Error::Input("isometry needs at least one --aut".into()));
                    }
                    axioms.extend(parse_auts(ext, auts)?.into_iter().map(Axiom::Isometry));
                } else {
                    axioms.push(Axiom::parse(name)?);
                }
            }
            let report = check_axioms(&f, &elems, &axioms)?;
            let mut v = to_value(&report);
            v["all_passed"] = Value::Bool(report.all_passed());
            v
        }
    })
}

fn as_magnitude(v: &Value) -> Option<Magnitude> {
    let obj = v.as_object()?;
    let shaped = obj.len() == 1
        && (obj.get("factors").is_some_and(Value::is_object) || obj.get("zero") == Some(&Value::Bool(true)));
    if !shaped {
        return None;
    }
    serde_json::from_value(v.clone()).ok()
}

/// Adds `"approx"` beside every magnitude object in `v`.
fn annotate(v: &mut Value) {
    if let Some(m) = as_magnitude(v) {
        v["approx"] = json!(m.to_f64());
        return;
    }
    match v {
        Value::Object(map) => map.values_mut().for_each(annotate),
        Value::Array(items) => items.iter_mut().for_each(annotate),
        _ => {}
    }
}
