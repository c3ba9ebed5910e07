//! Argument and file plumbing: quivers by name or path, numeric lists,
//! tolerance resolution and the exit-code mapping.

use std::fs;
use std::path::Path;

use quivar_core::{DimVector, Error, Quiver};

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn computation(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedType(_) => 3,
            Error::UnknownVertex(_)
            | Error::UnknownArrow(_)
            | Error::IndexMismatch { .. }
            | Error::InvalidQuiver(_)
            | Error::ZeroVector
            | Error::Disconnected
            | Error::Shape(_)
            | Error::Dimension(_)
            | Error::NotDominant(_)
            | Error::Parse(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

pub const BUNDLED: [&str; 6] = ["A1", "A2", "A3", "D4", "jordan", "affine-A1"];

fn bundled(name: &str) -> Option<Quiver> {
    match name.to_ascii_lowercase().as_str() {
        "jordan" => Some(Quiver::jordan()),
        "affine-a1" | "a1~" | "affine_a1" => Some(Quiver::affine_a1()),
        _ => Quiver::dynkin(name).ok(),
    }
}

pub fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read `{path}`: {e}")))
}

/// A quiver file, or a bundled name (`A1`, `A2`, `A3`, `D4`, `jordan`,
/// `affine-A1`, and generally any `An`, `Dn`, `E6..8`).
pub fn load_quiver(arg: Option<&str>) -> CliResult<Quiver> {
    let name = arg.ok_or_else(|| Failure::usage("this command needs --quiver"))?;
    if Path::new(name).is_file() {
        return Ok(Quiver::from_json_str(&read_file(name)?)?);
    }
    bundled(name).ok_or_else(|| {
        Failure::usage(format!("`{name}` is neither a file nor a bundled quiver ({})", BUNDLED.join(", ")))
    })
}

pub fn parse_list(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Failure::usage(format!("bad integer list `{s}`"))))
        .collect()
}

pub fn dim_arg(q: &Quiver, s: &str, what: &str) -> CliResult<DimVector> {
    let v = DimVector(parse_list(s)?);
    if v.len() != q.num_vertices() {
        return Err(Failure::usage(format!("--{what} has {} entries, the quiver has {} vertices", v.len(), q.num_vertices())));
    }
    if !v.is_nonnegative() {
        return Err(Failure::usage(format!("--{what} must be nonnegative")));
    }
    Ok(v)
}

pub const DEFAULT_TOL: f64 = quivar_core::representation::DEFAULT_TOL;

/// `--tol`, else `QUIVAR_PRECISION`, else the library default.
pub fn resolve_tol(flag: Option<f64>) -> CliResult<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("QUIVAR_PRECISION") {
            Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("QUIVAR_PRECISION=`{s}` is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}
