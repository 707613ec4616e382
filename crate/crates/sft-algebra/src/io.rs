//! Text and JSON formats shared by the CLI and the certificate files.
//!
//! Matrix text format: a first line `rows cols`, then `rows` lines of
//! space-separated integers. Polynomial matrices use the same layout
//! with entries written as `c0+c1*t+c2*t^2` (no spaces); the parser
//! additionally accepts sparse terms like `t^3`, `2t`, `3*t^2` and
//! minus signs. JSON mirror: `{"rows":n,"cols":m,"entries":[[..]]}`,
//! with entries as numbers when they fit in an `i64` and as decimal
//! strings otherwise.

use crate::autgyration::BlockCode;
use crate::equivalence::{EsseWitness, Ring, SseChain, SseEdge};
use crate::exact::{Int, IntMatrix, IntPoly};
use crate::polymatrix::{Move, MoveLog, MoveSide, PolyMatrix, PresentationClass};
use crate::structure::NonnegMatrix;
use crate::{Error, Result};
use num_traits::Zero;
use serde_json::{json, Value};
use std::str::FromStr;

/// Parse the plain matrix text format.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        col: 1,
        msg: "empty matrix file".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(Error::Parse {
            line: header_no + 1,
            col: 1,
            msg: format!("expected 'rows cols', found {header:?}"),
        });
    }
    let parse_dim = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line: header_no + 1,
            col: 1,
            msg: format!("bad dimension {s:?}"),
        })
    };
    let rows = parse_dim(dims[0])?;
    let cols = parse_dim(dims[1])?;
    let mut entries = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: header_no + 2 + r,
            col: 1,
            msg: format!("missing row {}", r + 1),
        })?;
        let items: Vec<&str> = line.split_whitespace().collect();
        if items.len() != cols {
            return Err(Error::Parse {
                line: line_no + 1,
                col: 1,
                msg: format!("row {} has {} entries, expected {cols}", r + 1, items.len()),
            });
        }
        for (c, item) in items.iter().enumerate() {
            let v = Int::from_str(item).map_err(|_| Error::Parse {
                line: line_no + 1,
                col: c + 1,
                msg: format!("bad integer {item:?}"),
            })?;
            entries.push(v);
        }
    }
    Ok(IntMatrix::new(rows, cols, entries))
}

/// Write the plain matrix text format.
pub fn write_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse one polynomial entry: terms `c`, `t`, `t^k`, `c*t`, `c*t^k`
/// (also `ct^k`), joined by `+` and `-`, with no spaces.
pub fn parse_poly(s: &str, line: usize, col: usize) -> Result<IntPoly> {
    let bad = |msg: String| Error::Parse { line, col, msg };
    let mut coeffs: Vec<Int> = Vec::new();
    let mut add_term = |coeff: Int, deg: usize| {
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Int::zero());
        }
        coeffs[deg] += coeff;
    };
    // Split into signed terms.
    let chars: Vec<char> = s.chars().collect();
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (idx, &ch) in chars.iter().enumerate() {
        if (ch == '+' || ch == '-') && idx != 0 {
            terms.push(cur.clone());
            cur.clear();
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    if terms.is_empty() {
        return Err(bad("empty polynomial entry".into()));
    }
    for term in terms {
        let term = term.trim();
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(bad(format!("dangling sign in {s:?}")));
        }
        let (coeff_str, degree) = match body.find('t') {
            None => (body, 0usize),
            Some(tpos) => {
                let c = body[..tpos].trim_end_matches('*');
                let after = &body[tpos + 1..];
                let deg = if after.is_empty() {
                    1
                } else {
                    let exp = after
                        .strip_prefix('^')
                        .ok_or_else(|| bad(format!("expected '^' after t in term {body:?}")))?;
                    exp.parse::<usize>()
                        .map_err(|_| bad(format!("bad exponent in term {body:?}")))?
                };
                (c, deg)
            }
        };
        let coeff = if coeff_str.is_empty() {
            Int::from(1)
        } else {
            Int::from_str(coeff_str).map_err(|_| bad(format!("bad coefficient {coeff_str:?}")))?
        };
        add_term(Int::from(sign) * coeff, degree);
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Canonical polynomial entry text: dense ascending `c0+c1*t+...`.
pub fn write_poly(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        let body = match i {
            0 => c.to_string(),
            1 => format!("{c}*t"),
            _ => format!("{c}*t^{i}"),
        };
        if i > 0 && !body.starts_with('-') {
            parts.push(format!("+{body}"));
        } else {
            parts.push(body);
        }
    }
    parts.concat()
}

/// Parse the polynomial matrix text format (`.pmat`).
pub fn parse_poly_matrix(text: &str) -> Result<PolyMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        col: 1,
        msg: "empty matrix file".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::Parse {
            line: header_no + 1,
            col: 1,
            msg: "polynomial matrices are square: expected 'n n'".into(),
        });
    }
    let n: usize = dims[0].parse().map_err(|_| Error::Parse {
        line: header_no + 1,
        col: 1,
        msg: format!("bad dimension {:?}", dims[0]),
    })?;
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: header_no + 2 + r,
            col: 1,
            msg: format!("missing row {}", r + 1),
        })?;
        let items: Vec<&str> = line.split_whitespace().collect();
        if items.len() != n {
            return Err(Error::Parse {
                line: line_no + 1,
                col: 1,
                msg: format!("row {} has {} entries, expected {n}", r + 1, items.len()),
            });
        }
        for (c, item) in items.iter().enumerate() {
            entries.push(parse_poly(item, line_no + 1, c + 1)?);
        }
    }
    Ok(PolyMatrix::from_entries(n, entries))
}

/// Write the polynomial matrix text format.
pub fn write_poly_matrix(m: &PolyMatrix) -> String {
    let n = m.size();
    let mut out = format!("{n} {n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| write_poly(m.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn int_to_json(v: &Int) -> Value {
    match i64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else {
                Err(Error::MalformedInput(format!(
                    "non-integer JSON number {n}"
                )))
            }
        }
        Value::String(s) => {
            Int::from_str(s).map_err(|_| Error::MalformedInput(format!("bad integer string {s:?}")))
        }
        other => Err(Error::MalformedInput(format!(
            "expected integer, found {other}"
        ))),
    }
}

/// JSON mirror of a matrix.
pub fn matrix_to_json(m: &IntMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| int_to_json(m.get(i, j))).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

/// Parse the JSON mirror of a matrix.
pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = v["rows"]
        .as_u64()
        .ok_or_else(|| Error::MalformedInput("matrix JSON needs a 'rows' number".into()))?
        as usize;
    let cols = v["cols"]
        .as_u64()
        .ok_or_else(|| Error::MalformedInput("matrix JSON needs a 'cols' number".into()))?
        as usize;
    let entries = v["entries"]
        .as_array()
        .ok_or_else(|| Error::MalformedInput("matrix JSON needs an 'entries' array".into()))?;
    if entries.len() != rows {
        return Err(Error::MalformedInput(
            "row count mismatch in matrix JSON".into(),
        ));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::MalformedInput("matrix rows must be arrays".into()))?;
        if row.len() != cols {
            return Err(Error::MalformedInput(
                "column count mismatch in matrix JSON".into(),
            ));
        }
        for item in row {
            flat.push(int_from_json(item)?);
        }
    }
    Ok(IntMatrix::new(rows, cols, flat))
}

/// Certificate file format: a JSON list of edges
/// `{"R": matrix, "S": matrix, "s": +-1}` (read as a chain over the
/// given ring).
pub fn chain_from_json(v: &Value, ring: Ring) -> Result<SseChain> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::MalformedInput("certificate must be a JSON array of edges".into()))?;
    let mut edges = Vec::with_capacity(arr.len());
    for (i, e) in arr.iter().enumerate() {
        let r = matrix_from_json(&e["R"])
            .map_err(|err| Error::MalformedInput(format!("edge {i}: R: {err}")))?;
        let s = matrix_from_json(&e["S"])
            .map_err(|err| Error::MalformedInput(format!("edge {i}: S: {err}")))?;
        let sign = e["s"].as_i64().unwrap_or(1);
        let orientation = match sign {
            1 => 1i8,
            -1 => -1i8,
            other => {
                return Err(Error::MalformedInput(format!(
                    "edge {i}: orientation must be +-1, found {other}"
                )))
            }
        };
        edges.push(SseEdge {
            witness: EsseWitness::new(r, s, ring),
            orientation,
        });
    }
    Ok(SseChain { edges, ring })
}

/// Serialize a chain into the certificate format.
pub fn chain_to_json(chain: &SseChain) -> Value {
    Value::Array(
        chain
            .edges
            .iter()
            .map(|e| {
                json!({
                    "R": matrix_to_json(&e.witness.r),
                    "S": matrix_to_json(&e.witness.s),
                    "s": e.orientation,
                })
            })
            .collect(),
    )
}

/// JSON form of a polynomial matrix: entries in the `.pmat` grammar.
pub fn poly_matrix_to_json(m: &PolyMatrix) -> Value {
    let entries: Vec<Value> = (0..m.size())
        .map(|i| {
            Value::Array(
                (0..m.size())
                    .map(|j| json!(write_poly(m.get(i, j))))
                    .collect(),
            )
        })
        .collect();
    json!({ "size": m.size(), "entries": entries })
}

pub fn poly_matrix_from_json(v: &Value) -> Result<PolyMatrix> {
    let size = v["size"]
        .as_u64()
        .ok_or_else(|| Error::MalformedInput("polynomial matrix JSON needs 'size'".into()))?
        as usize;
    let rows = v["entries"]
        .as_array()
        .ok_or_else(|| Error::MalformedInput("polynomial matrix JSON needs 'entries'".into()))?;
    if rows.len() != size {
        return Err(Error::MalformedInput("row count mismatch".into()));
    }
    let mut entries = Vec::with_capacity(size * size);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::MalformedInput("rows must be arrays".into()))?;
        if row.len() != size {
            return Err(Error::MalformedInput("column count mismatch".into()));
        }
        for (j, item) in row.iter().enumerate() {
            let s = item
                .as_str()
                .ok_or_else(|| Error::MalformedInput("entries must be strings".into()))?;
            entries.push(parse_poly(s, i + 1, j + 1)?);
        }
    }
    Ok(PolyMatrix::from_entries(size, entries))
}

fn move_to_json(mv: &Move) -> Value {
    match mv {
        Move::Elementary(spec) => json!({
            "type": "elementary",
            "i": spec.i,
            "j": spec.j,
            "poly": write_poly(&spec.poly),
            "side": match spec.side { MoveSide::Left => "left", MoveSide::Right => "right" },
        }),
        Move::Stabilize => json!({ "type": "stabilize" }),
        Move::ChangePower { i, j, from, to } => json!({
            "type": "change_power", "i": i, "j": j, "from": from, "to": to,
        }),
    }
}

fn move_from_json(v: &Value) -> Result<Move> {
    let kind = v["type"]
        .as_str()
        .ok_or_else(|| Error::MalformedInput("move needs a 'type'".into()))?;
    let idx = |key: &str| -> Result<usize> {
        v[key]
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| Error::MalformedInput(format!("move needs integer '{key}'")))
    };
    match kind {
        "elementary" => {
            let side = match v["side"].as_str() {
                Some("left") => MoveSide::Left,
                Some("right") => MoveSide::Right,
                _ => return Err(Error::MalformedInput("side must be left or right".into())),
            };
            let poly = parse_poly(
                v["poly"]
                    .as_str()
                    .ok_or_else(|| Error::MalformedInput("elementary move needs 'poly'".into()))?,
                1,
                1,
            )?;
            Ok(Move::Elementary(crate::polymatrix::ElementaryMoveSpec {
                i: idx("i")?,
                j: idx("j")?,
                poly,
                side,
            }))
        }
        "stabilize" => Ok(Move::Stabilize),
        "change_power" => Ok(Move::ChangePower {
            i: idx("i")?,
            j: idx("j")?,
            from: idx("from")?,
            to: idx("to")?,
        }),
        other => Err(Error::MalformedInput(format!(
            "unknown move type {other:?}"
        ))),
    }
}

/// Serialize a move log for later replay.
pub fn move_log_to_json(log: &MoveLog) -> Value {
    json!({
        "class": match log.class {
            PresentationClass::TZplusT => "tzplus",
            PresentationClass::Nzc => "nzc",
        },
        "start": poly_matrix_to_json(&log.start),
        "moves": log.moves.iter().map(move_to_json).collect::<Vec<_>>(),
        "end": poly_matrix_to_json(&log.end),
    })
}

/// Rebuild a move log from JSON; every move is replayed (and class
/// membership re-verified) and the recorded end must match.
pub fn move_log_from_json(v: &Value) -> Result<MoveLog> {
    let class = match v["class"].as_str() {
        Some("tzplus") => PresentationClass::TZplusT,
        Some("nzc") => PresentationClass::Nzc,
        _ => {
            return Err(Error::MalformedInput(
                "move log needs class tzplus or nzc".into(),
            ))
        }
    };
    let start = poly_matrix_from_json(&v["start"])?;
    let end = poly_matrix_from_json(&v["end"])?;
    let moves = v["moves"]
        .as_array()
        .ok_or_else(|| Error::MalformedInput("move log needs a 'moves' array".into()))?
        .iter()
        .map(move_from_json)
        .collect::<Result<Vec<_>>>()?;
    MoveLog::from_parts(class, start, moves, &end)
}

/// Serialize a block code: the word map keys are comma-joined edge
/// indices.
pub fn block_code_to_json(code: &BlockCode) -> Value {
    let mut table: Vec<(String, usize)> = code
        .table()
        .iter()
        .map(|(w, &img)| {
            let key = w
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",");
            (key, img)
        })
        .collect();
    table.sort();
    let map: serde_json::Map<String, Value> =
        table.into_iter().map(|(k, v)| (k, json!(v))).collect();
    json!({
        "domain": matrix_to_json(code.domain.inner()),
        "range": matrix_to_json(code.range.inner()),
        "window": [code.window.0, code.window.1],
        "table": map,
    })
}

/// Rebuild a block code from JSON; the table is re-validated.
pub fn block_code_from_json(v: &Value) -> Result<BlockCode> {
    let domain = NonnegMatrix::new(matrix_from_json(&v["domain"])?)
        .map_err(|e| Error::MalformedInput(format!("domain: {e}")))?;
    let range = NonnegMatrix::new(matrix_from_json(&v["range"])?)
        .map_err(|e| Error::MalformedInput(format!("range: {e}")))?;
    let window = v["window"]
        .as_array()
        .and_then(|w| {
            if w.len() == 2 {
                Some((w[0].as_i64()?, w[1].as_i64()?))
            } else {
                None
            }
        })
        .ok_or_else(|| Error::MalformedInput("window must be [j, k]".into()))?;
    let table_json = v["table"]
        .as_object()
        .ok_or_else(|| Error::MalformedInput("block code needs a 'table' object".into()))?;
    let mut table = std::collections::HashMap::new();
    for (key, img) in table_json {
        let word: Vec<usize> = key
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedInput(format!("bad word key {key:?}")))
            })
            .collect::<Result<_>>()?;
        let img = img
            .as_u64()
            .ok_or_else(|| Error::MalformedInput("table images must be edge indices".into()))?
            as usize;
        table.insert(word, img);
    }
    BlockCode::new(domain, range, window, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = IntMatrix::from_rows(&[&[1, -2, 3], &[0, 5, 7]]);
        let text = write_matrix(&m);
        assert_eq!(text, "2 3\n1 -2 3\n0 5 7\n");
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn matrix_parse_errors_carry_positions() {
        let err = parse_matrix("2 2\n1 2\n3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_matrix("2 2\n1 x\n3 4").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 2,
                col: 2,
                ..
            }
        ));
    }

    #[test]
    fn poly_entry_grammar() {
        let p = parse_poly("1+2*t+3*t^2", 1, 1).unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, 2, 3]));
        // Sparse and unstarred forms.
        assert_eq!(
            parse_poly("t^3+t", 1, 1).unwrap(),
            IntPoly::from_i64(&[0, 1, 0, 1])
        );
        assert_eq!(parse_poly("2t", 1, 1).unwrap(), IntPoly::from_i64(&[0, 2]));
        assert_eq!(
            parse_poly("-t^2+5", 1, 1).unwrap(),
            IntPoly::from_i64(&[5, 0, -1])
        );
        assert_eq!(parse_poly("0", 1, 1).unwrap(), IntPoly::zero());
        assert!(parse_poly("t^", 1, 1).is_err());
        assert!(parse_poly("", 1, 1).is_err());

        // Canonical writer round-trips.
        let q = IntPoly::from_i64(&[1, 0, -3]);
        assert_eq!(write_poly(&q), "1+0*t-3*t^2");
        assert_eq!(parse_poly(&write_poly(&q), 1, 1).unwrap(), q);
    }

    #[test]
    fn poly_matrix_round_trip() {
        let m = PolyMatrix::from_entries(
            2,
            vec![
                IntPoly::from_i64(&[0, 2]),
                IntPoly::from_i64(&[0, 0, 1, 1]),
                IntPoly::from_i64(&[0, 0, 1]),
                IntPoly::zero(),
            ],
        );
        let text = write_poly_matrix(&m);
        assert_eq!(parse_poly_matrix(&text).unwrap(), m);
    }

    #[test]
    fn json_round_trips() {
        let m = IntMatrix::from_rows(&[&[1, 2], &[3, 4]]);
        let j = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&j).unwrap(), m);

        // Big entries become strings.
        let big = IntMatrix::from_fn(1, 1, |_, _| {
            Int::from_str("123456789012345678901234567890").unwrap()
        });
        let j = matrix_to_json(&big);
        assert!(j["entries"][0][0].is_string());
        assert_eq!(matrix_from_json(&j).unwrap(), big);
    }

    #[test]
    fn chain_json_round_trip() {
        let w = EsseWitness::new(
            IntMatrix::from_rows(&[&[1, 1]]),
            IntMatrix::from_rows(&[&[1], &[1]]),
            Ring::Zplus,
        );
        let chain = SseChain {
            edges: vec![SseEdge::forward(w.clone()), SseEdge::backward(w)],
            ring: Ring::Zplus,
        };
        let j = chain_to_json(&chain);
        let parsed = chain_from_json(&j, Ring::Zplus).unwrap();
        assert_eq!(parsed, chain);
    }

    #[test]
    fn move_log_json_round_trip() {
        let r = IntMatrix::from_rows(&[&[1, 1]]);
        let s = IntMatrix::from_rows(&[&[1], &[1]]);
        let log = crate::polymatrix::psse_chain(&r, &s).unwrap();
        let j = move_log_to_json(&log);
        let parsed = move_log_from_json(&j).unwrap();
        assert_eq!(parsed.start, log.start);
        assert_eq!(parsed.end, log.end);
        assert_eq!(parsed.moves, log.moves);

        // Tampering with the recorded end is caught on load.
        let mut bad = j.clone();
        bad["end"]["entries"][0][0] = json!("5");
        assert!(move_log_from_json(&bad).is_err());
    }

    #[test]
    fn block_code_json_round_trip() {
        let a = NonnegMatrix::from_rows(&[&[2]]).unwrap();
        let code = crate::autgyration::BlockCode::shift(&a).unwrap();
        let j = block_code_to_json(&code);
        let parsed = block_code_from_json(&j).unwrap();
        assert_eq!(parsed.window, (1, 1));
        assert_eq!(parsed.image_of(&[1]), Some(1));

        // A broken table fails re-validation.
        let mut bad = j.clone();
        bad["table"]["0"] = json!(7);
        assert!(block_code_from_json(&bad).is_err());
    }
}
