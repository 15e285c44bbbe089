//! Plain-text curve files.
//!
//! ```text
//! # curve v1 model=<m> N=<n> lambda=<lambda> seed=<s>
//! <x> <y>
//! ...
//! ```
//!
//! One point per line in scaled plane coordinates, 17 significant digits, so
//! files round-trip bit-exactly.

use std::io::{self, BufRead, Write};

use num_complex::Complex64;

use crate::zipper::Curve;

#[derive(Debug, Clone, PartialEq)]
pub struct CurveMeta {
    pub model: String,
    pub n: usize,
    pub lambda: f64,
    pub seed: u64,
}

fn bad(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

pub fn write_curve<W: Write>(mut w: W, meta: &CurveMeta, curve: &Curve) -> io::Result<()> {
    writeln!(
        w,
        "# curve v1 model={} N={} lambda={} seed={}",
        meta.model, meta.n, meta.lambda, meta.seed
    )?;
    for p in curve.points() {
        writeln!(w, "{:.16e} {:.16e}", p.re, p.im)?;
    }
    Ok(())
}

pub fn read_curve<R: BufRead>(r: R) -> io::Result<(CurveMeta, Curve)> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| bad("empty curve file"))??;
    let meta = parse_header(&header)?;
    let mut points = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let x: f64 = it
            .next()
            .ok_or_else(|| bad(format!("line {}: missing x", lineno + 2)))?
            .parse()
            .map_err(|e| bad(format!("line {}: {e}", lineno + 2)))?;
        let y: f64 = it
            .next()
            .ok_or_else(|| bad(format!("line {}: missing y", lineno + 2)))?
            .parse()
            .map_err(|e| bad(format!("line {}: {e}", lineno + 2)))?;
        if it.next().is_some() {
            return Err(bad(format!("line {}: trailing fields", lineno + 2)));
        }
        points.push(Complex64::new(x, y));
    }
    let curve = Curve::new(points).map_err(|e| bad(e.to_string()))?;
    Ok((meta, curve))
}

fn parse_header(line: &str) -> io::Result<CurveMeta> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 7 || tokens[0] != "#" || tokens[1] != "curve" || tokens[2] != "v1" {
        return Err(bad(format!("bad curve header: {line}")));
    }
    let field = |tok: &str, key: &str| -> io::Result<String> {
        tok.strip_prefix(&format!("{key}="))
            .map(str::to_owned)
            .ok_or_else(|| bad(format!("expected {key}=..., got {tok}")))
    };
    let model = field(tokens[3], "model")?;
    let n = field(tokens[4], "N")?
        .parse()
        .map_err(|e| bad(format!("bad N: {e}")))?;
    let lambda = field(tokens[5], "lambda")?
        .parse()
        .map_err(|e| bad(format!("bad lambda: {e}")))?;
    let seed = field(tokens[6], "seed")?
        .parse()
        .map_err(|e| bad(format!("bad seed: {e}")))?;
    Ok(CurveMeta {
        model,
        n,
        lambda,
        seed,
    })
}
