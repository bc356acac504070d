//! The plain-text diagram format.
//!
//! ```text
//! k=4
//! N 1-2 : b
//! S 1-2 : b
//! P 3-3' : [B|B]
//! P 4-4' : O
//! seq : (3:B)(4:O)(3:B)
//! loop : BO
//! ```
//!
//! Propagating edges are named in `seq` by their north node. Lines starting
//! with `#` are comments.

use std::fmt::Write as _;

use thiserror::Error;

use crate::decor::Word;
use crate::diagram::{canonicalize, Diagram, DiagramError, Node, RawBlock, RawDiagram, RawEdge};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram is not canonical: reduction produced 2^{two_exp} δ^{delta_exp}")]
    NotCanonical { two_exp: u32, delta_exp: u32 },
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn blocks_text(blocks: &[&Word]) -> String {
    if blocks.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = blocks.iter().map(|w| w.to_string()).collect();
    format!("[{}]", parts.join("|"))
}

pub fn serialize(d: &Diagram) -> String {
    let mut out = String::new();
    writeln!(out, "k={}", d.k()).unwrap();
    let alpha_one = d.alpha() == 1;
    let mut order: Vec<usize> = (0..d.edges().len()).collect();
    order.sort_by_key(|&i| {
        let e = &d.edges()[i];
        (!e.start.is_north() as u8 + e.is_propagating() as u8 * 2, e.start.index)
    });
    for i in order {
        let e = &d.edges()[i];
        let tag = match (e.start.is_north(), e.end.is_north()) {
            (true, true) => "N",
            (false, false) => "S",
            _ => "P",
        };
        let word = if alpha_one && e.is_propagating() {
            blocks_text(&d.blocks_of(i))
        } else {
            e.word.to_string()
        };
        let (a, b) = (e.start.index, e.end.index);
        let b = if tag == "P" { format!("{b}'") } else { b.to_string() };
        if word.is_empty() {
            writeln!(out, "{tag} {a}-{b} :").unwrap();
        } else {
            writeln!(out, "{tag} {a}-{b} : {word}").unwrap();
        }
    }
    if alpha_one && !d.interleave().is_empty() {
        let items: String = d
            .interleave()
            .iter()
            .map(|b| format!("({}:{})", d.edges()[b.edge].start.index, b.word))
            .collect();
        writeln!(out, "seq : {items}").unwrap();
    }
    for l in d.loops() {
        writeln!(out, "loop : {l}").unwrap();
    }
    out
}

fn parse_word(s: &str, line: usize, col: usize) -> Result<Word, ParseError> {
    s.parse::<Word>()
        .map_err(|e| syntax(line, col, format!("bad decoration word {s:?}: {e}")))
}

fn parse_index(s: &str, line: usize, col: usize) -> Result<usize, ParseError> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| syntax(line, col, format!("expected a node index, found {s:?}")))
}

/// Parse to a raw diagram; words and blocks are taken as written.
pub fn parse_raw(text: &str) -> Result<RawDiagram, ParseError> {
    let mut k: Option<usize> = None;
    let mut edges: Vec<RawEdge> = Vec::new();
    let mut prop_blocks: Vec<(usize, Vec<Word>, usize)> = Vec::new();
    let mut seq: Option<(Vec<(usize, Word)>, usize)> = None;
    let mut loops = Vec::new();

    for (ln, raw_line) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw_line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let indent = raw_line.len() - raw_line.trim_start().len() + 1;
        if let Some(rest) = body.strip_prefix("k=") {
            k = Some(parse_index(rest, line, indent + 2)?);
            continue;
        }
        let Some(colon) = body.find(':') else {
            return Err(syntax(line, indent, "expected `<head> : <value>`"));
        };
        let head = body[..colon].trim();
        let value = body[colon + 1..].trim();
        let vcol = indent + colon + 1 + (body[colon + 1..].len() - body[colon + 1..].trim_start().len());
        if head == "loop" {
            loops.push(parse_word(value, line, vcol)?);
            continue;
        }
        if head == "seq" {
            let mut items = Vec::new();
            let mut rest = value;
            let mut col = vcol;
            while !rest.is_empty() {
                let Some(inner) = rest.strip_prefix('(') else {
                    return Err(syntax(line, col, "expected `(` in seq"));
                };
                let Some(close) = inner.find(')') else {
                    return Err(syntax(line, col, "unclosed `(` in seq"));
                };
                let item = &inner[..close];
                let Some((e, w)) = item.split_once(':') else {
                    return Err(syntax(line, col, "seq item must be `(<edge>:<block>)`"));
                };
                items.push((parse_index(e, line, col + 1)?, parse_word(w.trim(), line, col + 1)?));
                col += close + 2;
                rest = inner[close + 1..].trim_start();
            }
            seq = Some((items, line));
            continue;
        }
        let mut parts = head.split_whitespace();
        let (Some(tag), Some(pair), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(syntax(line, indent, format!("unrecognized line head {head:?}")));
        };
        let Some((a, b)) = pair.split_once('-') else {
            return Err(syntax(line, indent + tag.len() + 1, "expected `<i>-<j>`"));
        };
        let pcol = indent + tag.len() + 1;
        let (start, end) = match tag {
            "N" => (Node::north(parse_index(a, line, pcol)?), Node::north(parse_index(b, line, pcol)?)),
            "S" => (Node::south(parse_index(a, line, pcol)?), Node::south(parse_index(b, line, pcol)?)),
            "P" => {
                let Some(b) = b.strip_suffix('\'') else {
                    return Err(syntax(line, pcol, "propagating edge must end at a primed node"));
                };
                (Node::north(parse_index(a, line, pcol)?), Node::south(parse_index(b, line, pcol)?))
            }
            _ => return Err(syntax(line, indent, format!("unknown edge kind {tag:?}"))),
        };
        if tag == "P" {
            if let Some(inner) = value.strip_prefix('[') {
                let Some(inner) = inner.strip_suffix(']') else {
                    return Err(syntax(line, vcol, "unclosed `[`"));
                };
                let blocks = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner
                        .split('|')
                        .map(|s| parse_word(s.trim(), line, vcol))
                        .collect::<Result<Vec<_>, _>>()?
                };
                prop_blocks.push((edges.len(), blocks, line));
                edges.push(RawEdge {
                    start,
                    end,
                    word: Word::empty(),
                });
                continue;
            }
        }
        edges.push(RawEdge {
            start,
            end,
            word: parse_word(value, line, vcol)?,
        });
    }

    let Some(k) = k else {
        return Err(syntax(1, 1, "missing `k=` line"));
    };
    let north_cups = edges.iter().filter(|e| e.start.is_north() && e.end.is_north()).count();
    let mut interleave = Vec::new();
    if north_cups == 1 {
        // words written directly on propagating edges count as one block each
        let mut listed: Vec<(usize, Vec<Word>, usize)> = prop_blocks.clone();
        for (i, e) in edges.iter_mut().enumerate() {
            if !e.start.is_north() || e.end.is_north() || e.word.is_empty() {
                continue;
            }
            listed.push((i, vec![std::mem::take(&mut e.word)], 0));
        }
        let prop_idx = |north: usize| {
            edges
                .iter()
                .position(|e| e.start == Node::north(north) && !e.end.is_north())
        };
        match seq {
            Some((items, sline)) => {
                for (north, w) in items {
                    let Some(i) = prop_idx(north) else {
                        return Err(syntax(sline, 1, format!("seq names {north}, which starts no propagating edge")));
                    };
                    interleave.push(RawBlock { edge: i, word: w });
                }
                for (i, blocks, line) in listed {
                    let from_seq: Vec<&Word> = interleave.iter().filter(|b| b.edge == i).map(|b| &b.word).collect();
                    let given: Vec<&Word> = blocks.iter().filter(|w| !w.is_empty()).collect();
                    if from_seq != given {
                        return Err(syntax(line.max(1), 1, "blocks of a propagating edge disagree with `seq`"));
                    }
                }
            }
            None => {
                let decorated: Vec<&(usize, Vec<Word>, usize)> =
                    listed.iter().filter(|(_, b, _)| b.iter().any(|w| !w.is_empty())).collect();
                if decorated.len() > 1 {
                    return Err(DiagramError::D2(
                        "several propagating edges are decorated but no `seq` gives their order".into(),
                    )
                    .into());
                }
                for (i, blocks, _) in decorated {
                    for w in blocks {
                        interleave.push(RawBlock {
                            edge: *i,
                            word: w.clone(),
                        });
                    }
                }
            }
        }
    } else {
        if let Some((_, sline)) = seq {
            return Err(syntax(sline, 1, "`seq` is only allowed with exactly one north cup"));
        }
        for (i, blocks, _) in prop_blocks {
            let mut w = Word::empty();
            for b in blocks {
                w.push_word(&b);
            }
            edges[i].word = w;
        }
    }
    Ok(RawDiagram {
        k,
        edges,
        interleave,
        loops,
    })
}

/// Parse a diagram that is already in canonical form and LR-valid.
pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let s = canonicalize(&parse_raw(text)?)?;
    if s.two_exp != 0 || s.delta_exp != 0 {
        return Err(ParseError::NotCanonical {
            two_exp: s.two_exp,
            delta_exp: s.delta_exp,
        });
    }
    s.diagram.check_lr().map_err(DiagramError::NotLr)?;
    Ok(s.diagram)
}
