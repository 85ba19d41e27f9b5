//! Deterministic structure-constant export in two formats.
//!
//! sc-text layout:
//!   MSS v1 <left> <right> p=3 dim=<n> even=<a> odd=<b> rank=<r>
//!   B <idx> <parity 0|1> <block> <deg tuple comma-separated>
//!   C <i> <j> <k> <coeff>        (i <= j, lexicographic order)
//! An empty degree tuple (rank 0) is written as "-". The json format
//! mirrors the same fields.

use crate::gf3::{F3, Parity};
use crate::magic::{BasisInfo, Block, LieSuperalgebra, SparseVec};
use crate::roots::GradedEntry;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("malformed line {0}: {1}")]
    Parse(usize, String),
    #[error("header mismatch: {0}")]
    Header(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub fn to_sc_text(ge: &GradedEntry) -> String {
    let g = &ge.g;
    let mut out = String::new();
    out.push_str(&format!(
        "MSS v1 {} {} p=3 dim={} even={} odd={} rank={}\n",
        ge.left,
        ge.right,
        g.dim(),
        g.dim_even(),
        g.dim_odd(),
        ge.rank
    ));
    for (i, b) in g.basis.iter().enumerate() {
        let deg = match &b.degree {
            Some(d) if !d.is_empty() => d
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            _ => "-".into(),
        };
        out.push_str(&format!("B {} {} {} {}\n", i, b.parity, b.block, deg));
    }
    for (&(i, j), v) in g.sc_stored() {
        for &(k, c) in v {
            out.push_str(&format!("C {} {} {} {}\n", i, j, k, c));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
pub struct JsonExport {
    pub format: String,
    pub version: u32,
    pub left: String,
    pub right: String,
    pub p: u32,
    pub dim: usize,
    pub even: usize,
    pub odd: usize,
    pub rank: usize,
    pub gens: Vec<String>,
    pub basis: Vec<JsonBasis>,
    pub constants: Vec<JsonConstant>,
}

#[derive(Serialize, Deserialize)]
pub struct JsonBasis {
    pub idx: usize,
    pub parity: u8,
    pub block: String,
    pub degree: Vec<i64>,
    pub label: String,
}

#[derive(Serialize, Deserialize)]
pub struct JsonConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: u8,
}

pub fn to_json(ge: &GradedEntry) -> String {
    let g = &ge.g;
    let basis = g
        .basis
        .iter()
        .enumerate()
        .map(|(idx, b)| JsonBasis {
            idx,
            parity: b.parity.bit(),
            block: b.block.to_string(),
            degree: b.degree.clone().unwrap_or_default(),
            label: b.label.clone(),
        })
        .collect();
    let mut constants = Vec::new();
    for (&(i, j), v) in g.sc_stored() {
        for &(k, c) in v {
            constants.push(JsonConstant {
                i: i as usize,
                j: j as usize,
                k: k as usize,
                c: c.val(),
            });
        }
    }
    let doc = JsonExport {
        format: "MSS".into(),
        version: 1,
        left: ge.left.to_string(),
        right: ge.right.to_string(),
        p: 3,
        dim: g.dim(),
        even: g.dim_even(),
        odd: g.dim_odd(),
        rank: ge.rank,
        gens: ge.gen_labels.clone(),
        basis,
        constants,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn parse_block(s: &str) -> Option<Block> {
    match s {
        "tri" => Some(Block::Tri),
        "tri'" => Some(Block::TriP),
        "iota0" => Some(Block::Iota(0)),
        "iota1" => Some(Block::Iota(1)),
        "iota2" => Some(Block::Iota(2)),
        "mix" => Some(Block::Mixed),
        _ => None,
    }
}

/// Parse an sc-text file back into a Lie superalgebra (basis metadata plus
/// structure constants).
pub fn parse_sc_text(text: &str) -> Result<LieSuperalgebra, ExportError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ExportError::Header("empty file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 8 || toks[0] != "MSS" || toks[1] != "v1" {
        return Err(ExportError::Header(header.into()));
    }
    let field = |t: &str, name: &str| -> Result<usize, ExportError> {
        t.strip_prefix(&format!("{}=", name))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| ExportError::Header(format!("bad field {}", t)))
    };
    let dim = field(toks[5], "dim")?;
    let name = format!("g({},{})", toks[2], toks[3]);
    let mut basis: Vec<BasisInfo> = Vec::with_capacity(dim);
    let mut constants: Vec<(usize, usize, usize, u8)> = Vec::new();
    for (ln, line) in lines {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.is_empty() {
            continue;
        }
        match t[0] {
            "B" if t.len() == 5 => {
                let idx: usize = t[1]
                    .parse()
                    .map_err(|_| ExportError::Parse(ln + 1, line.into()))?;
                if idx != basis.len() {
                    return Err(ExportError::Parse(ln + 1, "indices out of order".into()));
                }
                let parity = match t[2] {
                    "0" => Parity::Even,
                    "1" => Parity::Odd,
                    _ => return Err(ExportError::Parse(ln + 1, line.into())),
                };
                let block = parse_block(t[3])
                    .ok_or_else(|| ExportError::Parse(ln + 1, line.into()))?;
                let degree = if t[4] == "-" {
                    Some(Vec::new())
                } else {
                    Some(
                        t[4].split(',')
                            .map(|c| c.parse::<i64>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|_| ExportError::Parse(ln + 1, line.into()))?,
                    )
                };
                basis.push(BasisInfo {
                    label: format!("b{}", idx),
                    parity,
                    block,
                    degree,
                });
            }
            "C" if t.len() == 5 => {
                let vals: Result<Vec<usize>, _> = t[1..4].iter().map(|x| x.parse()).collect();
                let vals = vals.map_err(|_| ExportError::Parse(ln + 1, line.into()))?;
                let c: u8 = t[4]
                    .parse()
                    .map_err(|_| ExportError::Parse(ln + 1, line.into()))?;
                constants.push((vals[0], vals[1], vals[2], c));
            }
            _ => return Err(ExportError::Parse(ln + 1, line.into())),
        }
    }
    if basis.len() != dim {
        return Err(ExportError::Header(format!(
            "dim={} but {} basis lines",
            dim,
            basis.len()
        )));
    }
    let mut g = LieSuperalgebra::new(name, basis);
    let mut current: Option<(usize, usize)> = None;
    let mut acc: SparseVec = Vec::new();
    for (i, j, k, c) in constants {
        if current != Some((i, j)) {
            if let Some((pi, pj)) = current.take() {
                g.set_sc(pi, pj, std::mem::take(&mut acc));
            }
            current = Some((i, j));
        }
        acc.push((k as u32, F3::new(c)));
    }
    if let Some((pi, pj)) = current {
        g.set_sc(pi, pj, acc);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magic::{build_pair, AlgName};
    use crate::roots::grade_entry;

    fn graded(l: AlgName, r: AlgName) -> GradedEntry {
        let e = build_pair(l, r);
        grade_entry(&e, l, r).unwrap()
    }

    #[test]
    fn header_s1_s12() {
        let ge = graded(AlgName::S1, AlgName::S12);
        let text = to_sc_text(&ge);
        let header = text.lines().next().unwrap();
        assert!(
            header.ends_with("dim=14 even=6 odd=8 rank=3"),
            "header: {}",
            header
        );
    }

    #[test]
    fn deterministic_bytes() {
        let a = to_sc_text(&graded(AlgName::S1, AlgName::S42));
        let b = to_sc_text(&graded(AlgName::S1, AlgName::S42));
        assert_eq!(a, b);
        let ja = to_json(&graded(AlgName::S2, AlgName::S12));
        let jb = to_json(&graded(AlgName::S2, AlgName::S12));
        assert_eq!(ja, jb);
    }

    #[test]
    fn round_trip_reproduces_brackets() {
        let ge = graded(AlgName::S2, AlgName::S12);
        let text = to_sc_text(&ge);
        let back = parse_sc_text(&text).unwrap();
        assert_eq!(back.dim(), ge.g.dim());
        for i in 0..ge.g.dim() {
            for j in 0..ge.g.dim() {
                let x = ge.g.basis_vec(i);
                let y = ge.g.basis_vec(j);
                assert_eq!(
                    ge.g.bracket_eval(&x, &y).unwrap(),
                    back.bracket_eval(&x, &y).unwrap(),
                    "bracket ({},{})",
                    i,
                    j
                );
            }
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_sc_text("nonsense\n").is_err());
        assert!(parse_sc_text("MSS v1 S1 S1 p=3 dim=2 even=1 odd=1 rank=0\nB 0 0 tri -\n").is_err());
    }
}
