//! ORP text format.
//!
//! ```text
//! ORP 1
//! vertices N
//! x y z            (N lines, signed decimal integers)
//! faces F
//! face L           (per face: loop count >= 1)
//! loop k i1 .. ik  (L lines; first loop outer CCW, holes CW; 0-based)
//! ```
//!
//! Single spaces between tokens, `#` starts a comment line, ASCII only.

use super::{Face, Polyhedron};
use crate::geom::Point3;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: syntax error at column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: non-integer coordinate `{token}`")]
    NonInteger { line: usize, token: String },
    #[error("line {line}: vertex index {index} out of range (have {n} vertices)")]
    IndexOutOfRange { line: usize, index: u64, n: usize },
    #[error("unexpected end of document: {expected}")]
    UnexpectedEof { expected: String },
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next non-comment, non-blank line as (1-based number, content).
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let t = raw.trim_end_matches(['\r']);
            if t.trim().is_empty() || t.trim_start().starts_with('#') {
                continue;
            }
            return Some((i + 1, t));
        }
        None
    }
}

fn expect_tokens<'a>(
    line_no: usize,
    line: &'a str,
    expect_count: usize,
) -> Result<Vec<&'a str>, ParseError> {
    let toks: Vec<&str> = line.split(' ').filter(|t| !t.is_empty()).collect();
    if toks.len() != expect_count {
        return Err(ParseError::Syntax {
            line: line_no,
            col: line.len(),
            msg: format!("expected {} tokens, found {}", expect_count, toks.len()),
        });
    }
    Ok(toks)
}

fn parse_i64(line: usize, tok: &str) -> Result<i64, ParseError> {
    tok.parse::<i64>().map_err(|_| ParseError::NonInteger {
        line,
        token: tok.to_string(),
    })
}

fn parse_count(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| ParseError::Syntax {
        line,
        col: 0,
        msg: format!("bad {what} count `{tok}`"),
    })
}

/// Parse an ORP document verbatim; no normalization is performed.
pub fn parse_polyhedron(text: &str) -> Result<Polyhedron, ParseError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next_content().ok_or(ParseError::UnexpectedEof {
        expected: "header `ORP 1`".into(),
    })?;
    let toks = expect_tokens(ln, header, 2)?;
    if toks[0] != "ORP" || toks[1] != "1" {
        return Err(ParseError::Syntax {
            line: ln,
            col: 0,
            msg: "expected header `ORP 1`".into(),
        });
    }

    let (ln, vline) = lines.next_content().ok_or(ParseError::UnexpectedEof {
        expected: "`vertices N`".into(),
    })?;
    let toks = expect_tokens(ln, vline, 2)?;
    if toks[0] != "vertices" {
        return Err(ParseError::Syntax {
            line: ln,
            col: 0,
            msg: "expected `vertices N`".into(),
        });
    }
    let nv = parse_count(ln, toks[1], "vertex")?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, l) = lines.next_content().ok_or(ParseError::UnexpectedEof {
            expected: "vertex coordinates".into(),
        })?;
        let toks = expect_tokens(ln, l, 3)?;
        vertices.push(Point3::new(
            parse_i64(ln, toks[0])?,
            parse_i64(ln, toks[1])?,
            parse_i64(ln, toks[2])?,
        ));
    }

    let (ln, fline) = lines.next_content().ok_or(ParseError::UnexpectedEof {
        expected: "`faces F`".into(),
    })?;
    let toks = expect_tokens(ln, fline, 2)?;
    if toks[0] != "faces" {
        return Err(ParseError::Syntax {
            line: ln,
            col: 0,
            msg: "expected `faces F`".into(),
        });
    }
    let nf = parse_count(ln, toks[1], "face")?;
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (ln, l) = lines.next_content().ok_or(ParseError::UnexpectedEof {
            expected: "`face L`".into(),
        })?;
        let toks = expect_tokens(ln, l, 2)?;
        if toks[0] != "face" {
            return Err(ParseError::Syntax {
                line: ln,
                col: 0,
                msg: "expected `face L`".into(),
            });
        }
        let nl = parse_count(ln, toks[1], "loop")?;
        if nl == 0 {
            return Err(ParseError::Syntax {
                line: ln,
                col: 0,
                msg: "face needs at least one loop".into(),
            });
        }
        let mut loops = Vec::with_capacity(nl);
        for _ in 0..nl {
            let (ln, l) = lines.next_content().ok_or(ParseError::UnexpectedEof {
                expected: "`loop k i1 .. ik`".into(),
            })?;
            let toks: Vec<&str> = l.split(' ').filter(|t| !t.is_empty()).collect();
            if toks.len() < 2 || toks[0] != "loop" {
                return Err(ParseError::Syntax {
                    line: ln,
                    col: 0,
                    msg: "expected `loop k i1 .. ik`".into(),
                });
            }
            let k = parse_count(ln, toks[1], "loop vertex")?;
            if toks.len() != 2 + k {
                return Err(ParseError::Syntax {
                    line: ln,
                    col: 0,
                    msg: format!("loop declares {} indices, found {}", k, toks.len() - 2),
                });
            }
            let mut lp = Vec::with_capacity(k);
            for t in &toks[2..] {
                let idx = t.parse::<u64>().map_err(|_| ParseError::Syntax {
                    line: ln,
                    col: 0,
                    msg: format!("bad vertex index `{t}`"),
                })?;
                if idx as usize >= vertices.len() {
                    return Err(ParseError::IndexOutOfRange {
                        line: ln,
                        index: idx,
                        n: vertices.len(),
                    });
                }
                lp.push(idx as u32);
            }
            loops.push(lp);
        }
        faces.push(Face { loops });
    }

    Ok(Polyhedron { vertices, faces })
}

/// Canonical ORP serialization; byte-identical for identical polyhedra.
pub fn write_polyhedron(p: &Polyhedron) -> String {
    let mut out = String::new();
    out.push_str("ORP 1\n");
    let _ = writeln!(out, "vertices {}", p.vertices.len());
    for v in &p.vertices {
        let _ = writeln!(out, "{} {} {}", v.x, v.y, v.z);
    }
    let _ = writeln!(out, "faces {}", p.faces.len());
    for f in &p.faces {
        let _ = writeln!(out, "face {}", f.loops.len());
        for lp in &f.loops {
            let _ = write!(out, "loop {}", lp.len());
            for i in lp {
                let _ = write!(out, " {}", i);
            }
            out.push('\n');
        }
    }
    out
}
