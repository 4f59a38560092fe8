//! Exact JSON-Lines interchange, SVG drawing, and the small text formats
//! used on the command line.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::circle::{euclid_params, Circle, EuclidParams, Window, Q};
use crate::error::{Error, Result};
use crate::gaussian::{GaussMatrix2, GaussianInt};

/// One circle per line in JSON-Lines files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRecord {
    pub b: i64,
    pub bp: i64,
    pub zre: i64,
    pub zim: i64,
}

impl From<&Circle> for CircleRecord {
    fn from(c: &Circle) -> Self {
        CircleRecord { b: c.b, bp: c.bp, zre: c.z.re, zim: c.z.im }
    }
}

impl TryFrom<CircleRecord> for Circle {
    type Error = Error;

    fn try_from(r: CircleRecord) -> Result<Circle> {
        Circle::new(r.b, r.bp, GaussianInt::new(r.zre, r.zim))
    }
}

pub fn write_jsonl<W: Write>(mut out: W, circles: &[Circle]) -> std::io::Result<()> {
    for c in circles {
        let line = serde_json::to_string(&CircleRecord::from(c)).map_err(std::io::Error::other)?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn to_jsonl(circles: &[Circle]) -> String {
    let mut buf = Vec::new();
    write_jsonl(&mut buf, circles).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Reads circles back, rejecting records that are not Gaussian circles.
pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<Circle>> {
    let mut out = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CircleRecord =
            serde_json::from_str(&line).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        out.push(Circle::try_from(rec)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Labels {
    #[default]
    None,
    Curvature,
    Half,
}

impl FromStr for Labels {
    type Err = Error;

    fn from_str(s: &str) -> Result<Labels> {
        match s {
            "none" => Ok(Labels::None),
            "curvature" => Ok(Labels::Curvature),
            "half" => Ok(Labels::Half),
            _ => Err(Error::Parse(format!("unknown label mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub window: Window,
    /// Pixels per unit length.
    pub scale: f64,
    pub stroke_width: f64,
    pub labels: Labels,
}

impl RenderSpec {
    pub fn new(window: Window) -> RenderSpec {
        RenderSpec { window, scale: 400.0, stroke_width: 1.0, labels: Labels::None }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidConfig("scale must be positive".into()));
        }
        if !(self.stroke_width > 0.0 && self.stroke_width.is_finite()) {
            return Err(Error::InvalidConfig("stroke width must be positive".into()));
        }
        Ok(())
    }
}

fn f(q: Q) -> f64 {
    q.to_f64().expect("rational in range")
}

const POSITIVE_STROKE: &str = "#1f3a93";
const NEGATIVE_STROKE: &str = "#c0392b";

/// SVG picture of the circles inside `spec.window`, with the y axis pointing up.
/// Lines are clipped to the window; a negatively oriented circle (one whose
/// interior is its outside) is drawn dashed in a different colour.
pub fn emit_svg(circles: &[Circle], spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    let w = &spec.window;
    let s = spec.scale;
    let px = |x: Q| (f(x - w.x0)) * s;
    let py = |y: Q| (f(w.y1 - y)) * s;
    let (width, height) = (f(w.x1 - w.x0) * s, f(w.y1 - w.y0) * s);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.6}" height="{height:.6}" viewBox="0 0 {width:.6} {height:.6}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{width:.6}" height="{height:.6}" fill="white"/>"#);
    let _ = writeln!(out, r#"<g fill="none" stroke-width="{:.6}">"#, spec.stroke_width);

    let mut sorted = circles.to_vec();
    sorted.sort();
    let mut labels = String::new();
    for c in &sorted {
        let colour = if c.b < 0 { NEGATIVE_STROKE } else { POSITIVE_STROKE };
        let dash = if c.b < 0 { r#" stroke-dasharray="4 2""# } else { "" };
        match euclid_params(c) {
            EuclidParams::Round { centre: (cx, cy), radius, .. } => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" stroke="{colour}"{dash}/>"#,
                    px(cx),
                    py(cy),
                    f(radius) * s
                );
                let text = match spec.labels {
                    Labels::None => None,
                    Labels::Curvature => Some(c.b.to_string()),
                    Labels::Half if c.b % 2 == 0 => Some((c.b / 2).to_string()),
                    Labels::Half => Some(format!("{}/2", c.b)),
                };
                if let Some(text) = text {
                    let size = f(radius) * s * 0.6;
                    let _ = writeln!(
                        labels,
                        r#"<text x="{:.6}" y="{:.6}" font-size="{size:.6}" text-anchor="middle" dominant-baseline="central">{text}</text>"#,
                        px(cx),
                        py(cy)
                    );
                }
            }
            EuclidParams::Line { normal, offset } => {
                if !w.meets(c) {
                    continue;
                }
                let (x0, y0, x1, y1) = if normal.im == 0 {
                    let x = offset * Q::from_integer(normal.re as i128);
                    (x, w.y0, x, w.y1)
                } else {
                    let y = offset * Q::from_integer(normal.im as i128);
                    (w.x0, y, w.x1, y)
                };
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{colour}"{dash}/>"#,
                    px(x0),
                    py(y0),
                    px(x1),
                    py(y1)
                );
            }
        }
    }
    out.push_str("</g>\n");
    if !labels.is_empty() {
        out.push_str("<g fill=\"black\">\n");
        out.push_str(&labels);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Parses `p` or `p/q` exactly; also accepts finite decimals such as `0.5`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        return Ok(Q::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let whole: i128 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10i128.pow(frac.len() as u32);
        let num: i128 = frac.parse().map_err(|_| bad())?;
        let value = Q::from_integer(whole.abs()) + Q::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    s.parse::<i128>().map(Q::from_integer).map_err(|_| bad())
}

fn split_n<'a, const N: usize>(s: &'a str, what: &str) -> Result<[&'a str; N]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    parts.try_into().map_err(|_| Error::Parse(format!("{what} needs {N} comma-separated values: {s:?}")))
}

/// `x0,y0,x1,y1`.
pub fn parse_window(s: &str) -> Result<Window> {
    let [a, b, c, d] = split_n::<4>(s, "window")?;
    Window::new(parse_rational(a)?, parse_rational(b)?, parse_rational(c)?, parse_rational(d)?)
}

/// `x,y`.
pub fn parse_point(s: &str) -> Result<(Q, Q)> {
    let [a, b] = split_n::<2>(s, "point")?;
    Ok((parse_rational(a)?, parse_rational(b)?))
}

/// The unit square centred at `centre`.
pub fn unit_window_at(centre: (Q, Q)) -> Window {
    let h = Q::new(1, 2);
    Window { x0: centre.0 - h, y0: centre.1 - h, x1: centre.0 + h, y1: centre.1 + h }
}

/// `a,b,c,d` with rows `(a b; c d)`, each entry a Gaussian integer like `1+2i`.
pub fn parse_matrix(s: &str) -> Result<GaussMatrix2> {
    let [a, b, c, d] = split_n::<4>(s, "matrix")?;
    let g = |x: &str| x.parse::<GaussianInt>();
    let m = GaussMatrix2::from_rows(g(a)?, g(b)?, g(c)?, g(d)?);
    m.ensure_unit_det()?;
    Ok(m)
}

/// `key = value` lines; `#` starts a comment; keys may be written with
/// dashes or underscores.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", n + 1)))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(Error::Parse(format!("config line {}: empty key", n + 1)));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

/// Flag value, else config value, else nothing.
pub fn resolve<T>(flag: Option<T>, config: &BTreeMap<String, String>, key: &str) -> Result<Option<T>>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    if flag.is_some() {
        return Ok(flag);
    }
    match config.get(key) {
        Some(v) => v.parse().map(Some).map_err(|e| Error::Parse(format!("config key {key}: {e}"))),
        None => Ok(None),
    }
}
