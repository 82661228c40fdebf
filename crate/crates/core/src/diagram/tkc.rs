//! Text codec for diagrams and projections.
//!
//! `tkc:v1;n=<N>;pair=<i-j,...>;wind=<k:(u,v),...>;over=<bits>`; pairs are
//! listed with `i < j` sorted by `i`, windings keyed by the smaller
//! half-edge of each edge (the vector of the traversal from the smaller end
//! to the larger). Zero-crossing codes are `tkc:v1;n=0;circle=(p,q)`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{CombinatorialMap, DiagramError, TorusDiagram, TorusProjection, WindingAssignment};
use crate::lattice::Vec2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TkcError {
    #[error("malformed code: {0}")]
    Syntax(String),
    #[error(transparent)]
    Invalid(#[from] DiagramError),
}

fn syntax(msg: impl Into<String>) -> TkcError {
    TkcError::Syntax(msg.into())
}

pub fn encode_projection(p: &TorusProjection) -> String {
    match p {
        TorusProjection::Circle(c) => format!("tkc:v1;n=0;circle={c}"),
        TorusProjection::Graph { map, winding } => {
            let pairs: Vec<String> = map.edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
            let winds: Vec<String> = map
                .edges()
                .iter()
                .map(|&(i, _)| format!("{i}:{}", winding.dart(i)))
                .collect();
            format!(
                "tkc:v1;n={};pair={};wind={}",
                map.crossings(),
                pairs.join(","),
                winds.join(",")
            )
        }
    }
}

pub fn encode_diagram(d: &TorusDiagram) -> String {
    let base = encode_projection(d.projection());
    if d.crossings() == 0 {
        return base;
    }
    let bits: String = d.over().iter().map(|&b| if b { '1' } else { '0' }).collect();
    format!("{base};over={bits}")
}

fn parse_vec(s: &str) -> Result<Vec2, TkcError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| syntax(format!("expected (u,v), got {s:?}")))?;
    let (u, v) = inner.split_once(',').ok_or_else(|| syntax(format!("expected (u,v), got {s:?}")))?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| syntax(format!("bad integer {t:?}")));
    Ok(Vec2::new(num(u)?, num(v)?))
}

/// Splits a comma list whose items may themselves contain `(u,v)` commas.
fn split_items(s: &str) -> Vec<&str> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if start < s.len() {
        items.push(&s[start..]);
    }
    items
}

fn fields(text: &str) -> Result<BTreeMap<&str, &str>, TkcError> {
    let body = text
        .trim()
        .strip_prefix("tkc:v1;")
        .ok_or_else(|| syntax("missing tkc:v1 header"))?;
    let mut out = BTreeMap::new();
    for part in body.split(';') {
        let (k, v) = part.split_once('=').ok_or_else(|| syntax(format!("field without '=': {part:?}")))?;
        if out.insert(k.trim(), v.trim()).is_some() {
            return Err(syntax(format!("duplicate field {k}")));
        }
    }
    Ok(out)
}

fn projection_from_fields(f: &BTreeMap<&str, &str>) -> Result<TorusProjection, TkcError> {
    let n: usize = f
        .get("n")
        .ok_or_else(|| syntax("missing n"))?
        .parse()
        .map_err(|_| syntax("bad crossing count"))?;
    if n == 0 {
        let c = parse_vec(f.get("circle").ok_or_else(|| syntax("missing circle"))?)?;
        return Ok(TorusProjection::circle(c)?);
    }
    let pair_text = f.get("pair").ok_or_else(|| syntax("missing pair"))?;
    let mut pairs = Vec::new();
    for item in pair_text.split(',') {
        let (i, j) = item.split_once('-').ok_or_else(|| syntax(format!("bad pair {item:?}")))?;
        let i: usize = i.trim().parse().map_err(|_| syntax(format!("bad pair {item:?}")))?;
        let j: usize = j.trim().parse().map_err(|_| syntax(format!("bad pair {item:?}")))?;
        pairs.push((i, j));
    }
    if pairs.len() != 2 * n {
        return Err(syntax(format!("expected {} pairs, got {}", 2 * n, pairs.len())));
    }
    let mut covered = vec![false; 4 * n];
    for &(i, j) in &pairs {
        for h in [i, j] {
            if h >= 4 * n || covered[h] {
                return Err(DiagramError::NotInvolution(h).into());
            }
            covered[h] = true;
        }
    }
    let map = CombinatorialMap::from_pairs(n, &pairs)?;
    let wind_text = f.get("wind").ok_or_else(|| syntax("missing wind"))?;
    let mut winds = BTreeMap::new();
    for item in split_items(wind_text) {
        let (k, v) = item.split_once(':').ok_or_else(|| syntax(format!("bad winding {item:?}")))?;
        let k: usize = k.trim().parse().map_err(|_| syntax(format!("bad winding key {k:?}")))?;
        if winds.insert(k, parse_vec(v)?).is_some() {
            return Err(syntax(format!("duplicate winding key {k}")));
        }
    }
    let winding = WindingAssignment::from_edges(&map, &winds)?;
    Ok(TorusProjection::new(map, winding)?)
}

pub fn decode_projection(text: &str) -> Result<TorusProjection, TkcError> {
    let f = fields(text)?;
    if let Some(extra) = f.keys().find(|k| !matches!(**k, "n" | "pair" | "wind" | "circle")) {
        return Err(syntax(format!("unexpected field {extra}")));
    }
    projection_from_fields(&f)
}

pub fn decode_diagram(text: &str) -> Result<TorusDiagram, TkcError> {
    let f = fields(text)?;
    if let Some(extra) = f.keys().find(|k| !matches!(**k, "n" | "pair" | "wind" | "circle" | "over")) {
        return Err(syntax(format!("unexpected field {extra}")));
    }
    let projection = projection_from_fields(&f)?;
    let over = match f.get("over") {
        Some(bits) => bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(syntax(format!("bad over bit {c:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?,
        None if projection.crossings() == 0 => Vec::new(),
        None => return Err(syntax("missing over")),
    };
    Ok(TorusDiagram::new(projection, over)?)
}
