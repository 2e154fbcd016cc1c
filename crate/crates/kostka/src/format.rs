//! Text syntax for inputs and the versioned JSON envelope for outputs.

use kostka_core::lr::{Family, LrTableau};
use kostka_core::{Error, Partition, QPoly, QSeries, Rect, RectSeq, Result, Tableau};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "kostka/1";

fn bad(what: &str, s: &str) -> Error {
    Error::InvalidInput(format!("cannot parse {what} from '{s}'"))
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad("integer list", s))).collect()
}

/// `"3,2,1"` padded with zeros to rank `n`.
pub fn parse_partition(s: &str, n: usize) -> Result<Partition> {
    Partition::with_rank(&parse_usize_list(s)?, n)
}

/// `"HxW,HxW,…"`, order kept.
pub fn parse_rects(s: &str) -> Result<RectSeq> {
    let rects: Result<Vec<Rect>> = s
        .split(',')
        .map(|r| {
            let (h, w) = r.trim().split_once(['x', 'X']).ok_or_else(|| bad("rectangle", r))?;
            let h = h.parse::<usize>().map_err(|_| bad("rectangle height", r))?;
            let w = w.parse::<usize>().map_err(|_| bad("rectangle width", r))?;
            Ok(Rect::new(h, w))
        })
        .collect();
    RectSeq::new(rects?)
}

pub fn parse_pair(s: &str) -> Result<(usize, usize)> {
    match parse_usize_list(s)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(bad("pair", s)),
    }
}

/// Rows separated by `/`, entries by `,`: `"1,2,6/3,4,8/5,9/7"`.
pub fn parse_tableau(s: &str) -> Result<Tableau> {
    let rows: Result<Vec<Vec<usize>>> = s.split('/').map(parse_usize_list).collect();
    Tableau::new(rows?)
}

pub fn format_tableau(t: &Tableau) -> String {
    t.rows()
        .iter()
        .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("/")
}

pub fn parse_family(s: &str) -> Result<Family> {
    match s.to_ascii_lowercase().as_str() {
        "lr" => Ok(Family::Lr),
        "rlr" => Ok(Family::Rlr),
        "clr" => Ok(Family::Clr),
        _ => Err(bad("LR family (lr|rlr|clr)", s)),
    }
}

pub fn lr_from_text(s: &str, family: Family, rects: &RectSeq) -> Result<LrTableau> {
    LrTableau::new(parse_tableau(s)?, family, rects.clone())
}

pub fn poly_json(p: &QPoly) -> Value {
    json!({ "text": p.to_string(), "coefficients": p.to_dense() })
}

pub fn series_json(s: &QSeries) -> Value {
    json!({
        "offset": s.offset.to_string(),
        "truncation_degree": s.truncation_degree,
        "coefficients": s.dense(s.truncation_degree),
        "text": s.to_string(),
    })
}

/// Wraps a payload with the schema tag and command name.
pub fn envelope(command: &str, payload: impl Serialize) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(dst), Ok(Value::Object(src))) = (&mut v, serde_json::to_value(payload)) {
        dst.extend(src);
    }
    v
}

pub fn rects_text(r: &RectSeq) -> Vec<String> {
    r.iter().map(ToString::to_string).collect()
}
