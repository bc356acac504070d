//! ASCII and SVG drawings. Both embed the text serialization in a leading
//! comment so a drawing can be read back with [`embedded_text`].

use std::fmt::Write as _;

use crate::cli::text::serialize;
use crate::diagram::{Diagram, Edge};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ascii,
    Svg,
}

const GAP: usize = 4;
const SVG_HEAD: &str = "<!-- actl\n";

pub fn render(d: &Diagram, mode: Mode) -> String {
    match mode {
        Mode::Ascii => ascii(d),
        Mode::Svg => svg(d),
    }
}

/// Recover the serialized diagram from a drawing's header comment.
pub fn embedded_text(drawing: &str) -> Option<String> {
    if let Some(rest) = drawing.strip_prefix(SVG_HEAD) {
        let end = rest.find("-->")?;
        return Some(rest[..end].to_string());
    }
    let mut out = String::new();
    for line in drawing.lines() {
        match line.strip_prefix("# ") {
            Some(l) => {
                out.push_str(l);
                out.push('\n');
            }
            None if line == "#" => {}
            None => break,
        }
    }
    (!out.is_empty()).then_some(out)
}

/// Nesting level of each cup on one face; innermost cups are level 0.
fn cup_levels(d: &Diagram, north: bool) -> Vec<(usize, usize)> {
    let mut cups: Vec<(usize, usize)> = d
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_propagating() && e.start.is_north() == north)
        .map(|(i, e)| (e.start.index.min(e.end.index), i))
        .collect();
    cups.sort();
    let span = |i: usize| {
        let e = &d.edges()[i];
        (e.start.index.min(e.end.index), e.start.index.max(e.end.index))
    };
    let mut level = vec![0usize; cups.len()];
    let mut by_width: Vec<usize> = (0..cups.len()).collect();
    by_width.sort_by_key(|&c| {
        let (a, b) = span(cups[c].1);
        b - a
    });
    for &c in &by_width {
        let (a, b) = span(cups[c].1);
        level[c] = cups
            .iter()
            .enumerate()
            .filter(|&(o, &(_, e))| {
                let (x, y) = span(e);
                o != c && a < x && y < b
            })
            .map(|(o, _)| level[o] + 1)
            .max()
            .unwrap_or(0);
    }
    cups.iter().zip(level).map(|(&(_, e), l)| (e, l)).collect()
}

struct Grid {
    rows: Vec<Vec<char>>,
    width: usize,
}

impl Grid {
    fn new(width: usize) -> Grid {
        Grid { rows: Vec::new(), width }
    }

    fn row(&mut self) -> usize {
        self.rows.push(vec![' '; self.width]);
        self.rows.len() - 1
    }

    fn put(&mut self, r: usize, c: usize, ch: char) {
        if c < self.width {
            self.rows[r][c] = ch;
        }
    }

    fn text(&mut self, r: usize, c: usize, s: &str) {
        for (i, ch) in s.chars().enumerate() {
            self.put(r, c + i, ch);
        }
    }

    fn finish(self) -> String {
        let mut out = String::new();
        for r in self.rows {
            let line: String = r.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn col(index: usize) -> usize {
    1 + GAP * (index - 1)
}

fn cup_band(g: &mut Grid, d: &Diagram, north: bool, verticals: &[usize]) {
    let cups = cup_levels(d, north);
    let depth = cups.iter().map(|c| c.1 + 1).max().unwrap_or(0);
    let rows: Vec<usize> = (0..depth).map(|_| g.row()).collect();
    let at = |l: usize| if north { rows[l] } else { rows[depth - 1 - l] };
    for &(e, level) in &cups {
        let edge: &Edge = &d.edges()[e];
        let (a, b) = (edge.start.index.min(edge.end.index), edge.start.index.max(edge.end.index));
        for l in 0..level {
            g.put(at(l), col(a), '|');
            g.put(at(l), col(b), '|');
        }
        let r = at(level);
        g.put(r, col(a), '+');
        g.put(r, col(b), '+');
        for c in col(a) + 1..col(b) {
            g.put(r, c, '-');
        }
        let glyphs = edge.word.to_glyphs();
        let n = glyphs.chars().count();
        if n > 0 {
            let mid = (col(a) + col(b)) / 2;
            g.text(r, mid + 1 - n.div_ceil(2), &glyphs);
        }
    }
    for &c in verticals {
        for &r in &rows {
            g.put(r, c, '|');
        }
    }
}

fn ascii(d: &Diagram) -> String {
    let k = d.k();
    let mut out = String::new();
    for line in serialize(d).lines() {
        writeln!(out, "# {line}").unwrap();
    }
    let loops_col = col(k) + GAP;
    let loop_width = d.loops().iter().map(|l| l.len() + 2).max().unwrap_or(0);
    let mut g = Grid::new(loops_col + loop_width + 1);
    let props: Vec<&Edge> = d.edges().iter().filter(|e| e.is_propagating()).collect();

    let r = g.row();
    for i in 1..=k {
        g.text(r, col(i), &i.to_string());
    }
    let north_cols: Vec<usize> = props.iter().map(|e| col(e.start.index)).collect();
    cup_band(&mut g, d, true, &north_cols);

    let mut cells: Vec<(usize, char)> = Vec::new();
    if d.alpha() == 1 {
        for b in d.interleave() {
            for ch in b.word.to_glyphs().chars() {
                cells.push((d.edges()[b.edge].start.index, ch));
            }
        }
    }
    let stacks: Vec<Vec<char>> = props
        .iter()
        .map(|e| if d.alpha() == 1 { Vec::new() } else { e.word.to_glyphs().chars().collect() })
        .collect();
    let tall = stacks.iter().map(Vec::len).max().unwrap_or(0).max(cells.len()).max(d.loops().len()).max(1);
    for i in 0..tall {
        let r = g.row();
        for c in &north_cols {
            g.put(r, *c, '|');
        }
        for (p, s) in props.iter().zip(&stacks) {
            if let Some(&ch) = s.get(i) {
                g.put(r, col(p.start.index), ch);
            }
        }
        if let Some(&(idx, ch)) = cells.get(i) {
            g.put(r, col(idx), ch);
        }
        if let Some(l) = d.loops().get(i) {
            g.text(r, loops_col, &format!("({})", l.word().to_glyphs()));
        }
    }

    let mut pos: Vec<usize> = props.iter().map(|e| e.start.index).collect();
    let mut order: Vec<usize> = (0..props.len()).collect();
    let left: Vec<usize> = order.iter().copied().filter(|&p| props[p].end.index < pos[p]).collect();
    let mut right: Vec<usize> = order.iter().copied().filter(|&p| props[p].end.index > pos[p]).collect();
    right.reverse();
    order = left.into_iter().chain(right).collect();
    for p in order {
        let r = g.row();
        let (from, to) = (pos[p], props[p].end.index);
        for (q, &at) in pos.iter().enumerate() {
            if q != p {
                g.put(r, col(at), '|');
            }
        }
        let (a, b) = (col(from.min(to)), col(from.max(to)));
        for c in a..=b {
            g.put(r, c, '-');
        }
        g.put(r, a, '+');
        g.put(r, b, '+');
        pos[p] = to;
    }

    let south_cols: Vec<usize> = props.iter().map(|e| col(e.end.index)).collect();
    cup_band(&mut g, d, false, &south_cols);
    let r = g.row();
    for i in 1..=k {
        g.text(r, col(i), &format!("{i}'"));
    }
    out.push_str(&g.finish());
    out
}

fn svg(d: &Diagram) -> String {
    let k = d.k();
    let step = 40.0;
    let top = 30.0;
    let bottom = 230.0;
    let x = |i: usize| 30.0 + step * (i as f64 - 1.0);
    let loops_x = x(k) + step;
    let width = loops_x + if d.loops().is_empty() { 0.0 } else { step * 1.5 };
    let mut out = String::new();
    out.push_str(SVG_HEAD);
    out.push_str(&serialize(d));
    out.push_str("-->\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"260\" viewBox=\"0 0 {width:.0} 260\">"
    )
    .unwrap();
    out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n");
    let mut labels = String::new();
    let glyph = |labels: &mut String, px: f64, py: f64, ch: char| {
        writeln!(labels, "<text x=\"{px:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"14\">{ch}</text>", py + 5.0)
            .unwrap();
    };
    let alpha_one = d.alpha() == 1;
    let inter = d.interleave().len();
    for (i, e) in d.edges().iter().enumerate() {
        if e.is_propagating() {
            let (x0, x1) = (x(e.start.index), x(e.end.index));
            writeln!(out, "<line x1=\"{x0:.1}\" y1=\"{top:.1}\" x2=\"{x1:.1}\" y2=\"{bottom:.1}\"/>").unwrap();
            let at = |t: f64| (x0 + (x1 - x0) * t, top + (bottom - top) * t);
            if alpha_one {
                for (j, b) in d.interleave().iter().enumerate().filter(|(_, b)| b.edge == i) {
                    let glyphs: Vec<char> = b.word.to_glyphs().chars().collect();
                    for (m, &ch) in glyphs.iter().enumerate() {
                        let t = (j as f64 + (m as f64 + 1.0) / (glyphs.len() as f64 + 1.0)) / inter as f64;
                        let (px, py) = at(t);
                        glyph(&mut labels, px, py, ch);
                    }
                }
            } else {
                let glyphs: Vec<char> = e.word.to_glyphs().chars().collect();
                for (m, &ch) in glyphs.iter().enumerate() {
                    let (px, py) = at((m as f64 + 1.0) / (glyphs.len() as f64 + 1.0));
                    glyph(&mut labels, px, py, ch);
                }
            }
        }
    }
    for north in [true, false] {
        for (e, level) in cup_levels(d, north) {
            let edge = &d.edges()[e];
            let (a, b) = (edge.start.index.min(edge.end.index), edge.start.index.max(edge.end.index));
            let (y, dir) = if north { (top, 1.0) } else { (bottom, -1.0) };
            let depth = dir * 18.0 * (level as f64 + 1.0);
            let (xa, xb) = (x(a), x(b));
            writeln!(
                out,
                "<path d=\"M {xa:.1} {y:.1} C {xa:.1} {:.1} {xb:.1} {:.1} {xb:.1} {y:.1}\"/>",
                y + depth * 1.33,
                y + depth * 1.33
            )
            .unwrap();
            let glyphs: Vec<char> = edge.word.to_glyphs().chars().collect();
            for (m, &ch) in glyphs.iter().enumerate() {
                let t = (m as f64 + 1.0) / (glyphs.len() as f64 + 1.0);
                glyph(&mut labels, xa + (xb - xa) * t, y + depth, ch);
            }
        }
    }
    for (j, l) in d.loops().iter().enumerate() {
        let cy = (top + bottom) / 2.0 + 30.0 * (j as f64 - (d.loops().len() as f64 - 1.0) / 2.0);
        writeln!(out, "<ellipse cx=\"{loops_x:.1}\" cy=\"{cy:.1}\" rx=\"18\" ry=\"12\"/>").unwrap();
        let glyphs: Vec<char> = l.word().to_glyphs().chars().collect();
        for (m, &ch) in glyphs.iter().enumerate() {
            let px = loops_x - 18.0 + 36.0 * (m as f64 + 1.0) / (glyphs.len() as f64 + 1.0);
            glyph(&mut labels, px, cy - 12.0, ch);
        }
    }
    out.push_str("</g>\n<g fill=\"black\">\n");
    for i in 1..=k {
        writeln!(out, "<circle cx=\"{:.1}\" cy=\"{top:.1}\" r=\"3\"/>", x(i)).unwrap();
        writeln!(out, "<circle cx=\"{:.1}\" cy=\"{bottom:.1}\" r=\"3\"/>", x(i)).unwrap();
    }
    out.push_str(&labels);
    out.push_str("</g>\n</svg>\n");
    out
}
