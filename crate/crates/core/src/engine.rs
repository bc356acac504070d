//! Concatenation of diagrams and multiplication of algebra elements.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::simple_diagram;
use crate::coeff::Coefficient;
use crate::decor::{CyclicWord, Decoration, Word};
use crate::diagram::{canonicalize, orient, Diagram, DiagramError, Face, Node, RawBlock, RawDiagram, RawEdge, Scaled};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("box sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("generator index {0} is outside 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("need n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Layer {
    Top,
    Bottom,
}

struct Piece {
    level: usize,
    word: Word,
}

/// Decorations of edge `ei` as vertically-levelled pieces in edge orientation.
fn pieces(d: &Diagram, ei: usize, base: usize, interface: usize, layer: Layer) -> Vec<Piece> {
    let e = &d.edges()[ei];
    if e.is_propagating() && d.alpha() == 1 {
        let mut out = Vec::new();
        for (pos, b) in d.interleave().iter().enumerate() {
            if b.edge == ei {
                out.push(Piece {
                    level: base + pos,
                    word: b.word.clone(),
                });
            }
        }
        return out;
    }
    if e.word.is_empty() {
        return Vec::new();
    }
    let level = match (layer, e.start.face, e.end.face) {
        (Layer::Top, Face::South, Face::South) | (Layer::Bottom, Face::North, Face::North) => interface,
        _ => base,
    };
    vec![Piece {
        level,
        word: e.word.clone(),
    }]
}

struct WalkCtx<'a> {
    top: &'a Diagram,
    bottom: &'a Diagram,
    top_base: usize,
    bottom_base: usize,
    interface: usize,
}

impl WalkCtx<'_> {
    /// Follow the composite curve from a local node until it leaves the
    /// stack or, for closed curves, returns to an edge already seen.
    fn walk(&self, visited: &mut [Vec<bool>; 2], mut layer: Layer, mut local: Node, closed: bool) -> (Vec<Piece>, Option<Node>) {
        let mut acc: Vec<Piece> = Vec::new();
        loop {
            let (d, seen, base) = match layer {
                Layer::Top => (self.top, &mut visited[0], self.top_base),
                Layer::Bottom => (self.bottom, &mut visited[1], self.bottom_base),
            };
            let ei = d.edge_at(local);
            if closed && seen[ei] {
                return (acc, None);
            }
            seen[ei] = true;
            let e = &d.edges()[ei];
            let forward = e.start == local;
            let other = if forward { e.end } else { e.start };
            let mut ps = pieces(d, ei, base, self.interface, layer);
            if !forward {
                ps.reverse();
                for p in &mut ps {
                    p.word = p.word.reversed();
                }
            }
            acc.extend(ps);
            match (layer, other.face) {
                (Layer::Top, Face::North) | (Layer::Bottom, Face::South) => return (acc, Some(other)),
                (Layer::Top, Face::South) => {
                    layer = Layer::Bottom;
                    local = Node::north(other.index);
                }
                (Layer::Bottom, Face::North) => {
                    layer = Layer::Top;
                    local = Node::south(other.index);
                }
            }
        }
    }
}

/// Stack `top` on `bottom` without reducing anything.
pub fn stack_raw(top: &Diagram, bottom: &Diagram) -> Result<RawDiagram, EngineError> {
    if top.k() != bottom.k() {
        return Err(EngineError::SizeMismatch(top.k(), bottom.k()));
    }
    let k = top.k();
    let top_base = 1;
    let interface = top_base + top.interleave().len();
    let bottom_base = interface + 1;

    let mut visited = [vec![false; top.edges().len()], vec![false; bottom.edges().len()]];
    let ctx = WalkCtx {
        top,
        bottom,
        top_base,
        bottom_base,
        interface,
    };

    let mut paths: Vec<(Node, Node, Vec<Piece>)> = Vec::new();
    let mut done = HashSet::new();
    let starts = (1..=k)
        .map(|i| (Layer::Top, Node::north(i)))
        .chain((1..=k).map(|i| (Layer::Bottom, Node::south(i))));
    for (layer, start) in starts {
        if done.contains(&start) {
            continue;
        }
        let (mut ps, end) = ctx.walk(&mut visited, layer, start, false);
        let end = end.expect("open path ends on the boundary");
        done.insert(start);
        done.insert(end);
        let (s, t) = orient(start, end);
        if s != start {
            ps.reverse();
            for p in &mut ps {
                p.word = p.word.reversed();
            }
        }
        paths.push((s, t, ps));
    }

    let mut loops: Vec<Word> = top.loops().iter().chain(bottom.loops()).map(|l| l.word().clone()).collect();
    for ei in 0..top.edges().len() {
        if visited[0][ei] {
            continue;
        }
        let e = top.edges()[ei].clone();
        let (ps, _) = ctx.walk(&mut visited, Layer::Top, e.start, true);
        let mut w = Word::empty();
        for p in ps {
            w.push_word(&p.word);
        }
        loops.push(w);
    }

    let alpha = paths.iter().filter(|(s, t, _)| s.is_north() && t.is_north()).count();
    let mut edges = Vec::new();
    let mut blocks: Vec<(usize, usize, usize, Word)> = Vec::new();
    for (idx, (s, t, ps)) in paths.into_iter().enumerate() {
        let prop = s.face != t.face;
        if alpha == 1 && prop {
            for (pos, p) in ps.into_iter().enumerate() {
                blocks.push((p.level, idx, pos, p.word));
            }
            edges.push(RawEdge {
                start: s,
                end: t,
                word: Word::empty(),
            });
        } else {
            let mut w = Word::empty();
            for p in ps {
                w.push_word(&p.word);
            }
            edges.push(RawEdge {
                start: s,
                end: t,
                word: w,
            });
        }
    }
    blocks.sort_by_key(|b| (b.0, b.1, b.2));
    Ok(RawDiagram {
        k,
        edges,
        interleave: blocks.into_iter().map(|(_, edge, _, word)| RawBlock { edge, word }).collect(),
        loops,
    })
}

/// `top · bottom` as `2^a δ^b d`.
pub fn concat(top: &Diagram, bottom: &Diagram) -> Result<Scaled, EngineError> {
    Ok(canonicalize(&stack_raw(top, bottom)?)?)
}

/// A finite linear combination of canonical diagrams.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Diagram, Coefficient>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn from_diagram(d: Diagram) -> Element {
        Element::term(Coefficient::one(), d)
    }

    pub fn from_scaled(s: Scaled) -> Element {
        Element::term(Coefficient::scalar(s.two_exp, s.delta_exp), s.diagram)
    }

    pub fn term(c: Coefficient, d: Diagram) -> Element {
        let mut e = Element::zero();
        e.add_term(d, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> Coefficient {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    /// The single term of a monomial element.
    pub fn as_single(&self) -> Option<(&Diagram, &Coefficient)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, d: Diagram, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> Element {
        let mut out = Element::zero();
        for (d, v) in &self.terms {
            out.add_term(d.clone(), &(v * c));
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "coefficient: {c}")?;
            write!(f, "{}", crate::cli::text::serialize(d))?;
        }
        Ok(())
    }
}

/// Bilinear extension of [`concat`].
pub fn multiply(x: &Element, y: &Element) -> Result<Element, EngineError> {
    let mut out = Element::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let s = concat(a, b)?;
            let c = &(ca * cb) * &Coefficient::scalar(s.two_exp, s.delta_exp);
            out.add_term(s.diagram, &c);
        }
    }
    Ok(out)
}

/// Left-to-right product of simple diagrams as a single scaled diagram.
pub fn eval_scaled(w: &[usize], n: usize) -> Result<Scaled, EngineError> {
    if n < 2 {
        return Err(EngineError::RankTooSmall(n));
    }
    let mut acc = Scaled {
        two_exp: 0,
        delta_exp: 0,
        diagram: Diagram::identity(n + 2),
    };
    for &i in w {
        let g = simple_diagram(i, n)?;
        let s = concat(&acc.diagram, &g)?;
        acc = Scaled {
            two_exp: acc.two_exp + s.two_exp,
            delta_exp: acc.delta_exp + s.delta_exp,
            diagram: s.diagram,
        };
    }
    Ok(acc)
}

pub fn eval_word(w: &[usize], n: usize) -> Result<Element, EngineError> {
    Ok(Element::from_scaled(eval_scaled(w, n)?))
}

/// A raw diagram state during exhaustive rewriting.
#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    two_exp: u32,
    delta_exp: u32,
    edges: Vec<Word>,
    blocks: Vec<(usize, Word)>,
    loops: Vec<Word>,
}

fn rewrite_pair(a: Decoration, b: Decoration) -> Option<(u32, Decoration)> {
    use Decoration::*;
    match (a, b) {
        (Dot, Dot) => Some((0, Triangle)),
        (Dot, Triangle) | (Triangle, Dot) => Some((1, Dot)),
        (Triangle, Triangle) => Some((1, Triangle)),
        (OpenDot, OpenDot) => Some((0, OpenTriangle)),
        (OpenDot, OpenTriangle) | (OpenTriangle, OpenDot) => Some((1, OpenDot)),
        (OpenTriangle, OpenTriangle) => Some((1, OpenTriangle)),
        _ => None,
    }
}

/// Every word obtained by one rewrite at one position.
fn linear_steps(w: &Word) -> Vec<(u32, Word)> {
    let s = w.symbols();
    let mut out = Vec::new();
    for i in 0..s.len().saturating_sub(1) {
        if let Some((e, c)) = rewrite_pair(s[i], s[i + 1]) {
            let mut v = s[..i].to_vec();
            v.push(c);
            v.extend_from_slice(&s[i + 2..]);
            out.push((e, Word(v)));
        }
    }
    out
}

fn cyclic_steps(w: &Word) -> Vec<(u32, Word)> {
    let mut out = linear_steps(w);
    let s = w.symbols();
    if s.len() >= 2 {
        if let Some((e, c)) = rewrite_pair(s[s.len() - 1], s[0]) {
            let mut v = s[1..s.len() - 1].to_vec();
            v.push(c);
            out.push((e, Word(v)));
        }
    }
    out
}

fn is_removable(w: &Word) -> bool {
    matches!(w.symbols(), [] | [Decoration::Triangle] | [Decoration::OpenTriangle])
}

fn successors(st: &State) -> Vec<State> {
    let mut out = Vec::new();
    for (i, w) in st.edges.iter().enumerate() {
        for (e, nw) in linear_steps(w) {
            let mut s = st.clone();
            s.two_exp += e;
            s.edges[i] = nw;
            out.push(s);
        }
    }
    for (i, (_, w)) in st.blocks.iter().enumerate() {
        for (e, nw) in linear_steps(w) {
            let mut s = st.clone();
            s.two_exp += e;
            s.blocks[i].1 = nw;
            out.push(s);
        }
    }
    for i in 0..st.blocks.len().saturating_sub(1) {
        if st.blocks[i].0 == st.blocks[i + 1].0 {
            let mut s = st.clone();
            let (_, next) = s.blocks.remove(i + 1);
            s.blocks[i].1.push_word(&next);
            out.push(s);
        }
    }
    for (i, w) in st.loops.iter().enumerate() {
        if is_removable(w) {
            let mut s = st.clone();
            s.loops.remove(i);
            s.delta_exp += 1;
            out.push(s);
        }
        for (e, nw) in cyclic_steps(w) {
            let mut s = st.clone();
            s.two_exp += e;
            s.loops[i] = nw;
            out.push(s);
        }
    }
    out
}

type Normal = (u32, u32, Vec<Word>, Vec<(usize, Word)>, Vec<CyclicWord>);

fn normal_of(st: &State) -> Normal {
    let mut loops: Vec<CyclicWord> = st.loops.iter().map(|l| CyclicWord::new(l.clone())).collect();
    loops.sort();
    (st.two_exp, st.delta_exp, st.edges.clone(), st.blocks.clone(), loops)
}

/// Explore every reduction order from `raw`; returns the set of distinct
/// terminal forms reached.
fn terminal_forms(raw: &RawDiagram) -> HashSet<Normal> {
    let mut edges = Vec::new();
    for e in &raw.edges {
        let (s, _) = orient(e.start, e.end);
        edges.push(if s == e.start { e.word.clone() } else { e.word.reversed() });
    }
    let start = State {
        two_exp: 0,
        delta_exp: 0,
        edges,
        blocks: raw
            .interleave
            .iter()
            .filter(|b| !b.word.is_empty())
            .map(|b| (b.edge, b.word.clone()))
            .collect(),
        loops: raw.loops.clone(),
    };
    let mut seen = HashSet::new();
    let mut terminals = HashSet::new();
    let mut stack = vec![start];
    while let Some(st) = stack.pop() {
        if !seen.insert(st.clone()) {
            continue;
        }
        let next = successors(&st);
        if next.is_empty() {
            terminals.insert(normal_of(&st));
        }
        stack.extend(next);
    }
    terminals
}

/// True iff every reduction order from `raw` reaches one terminal form and
/// that form agrees with [`canonicalize`].
pub fn is_confluent(raw: &RawDiagram) -> bool {
    let forms = terminal_forms(raw);
    if forms.len() != 1 {
        return false;
    }
    let Ok(c) = canonicalize(raw) else {
        return false;
    };
    let (a, b, _, _, loops) = forms.into_iter().next().expect("one form");
    a == c.two_exp && b == c.delta_exp && loops == c.diagram.loops()
}

pub fn check_confluence(sample: &[RawDiagram]) -> bool {
    sample.iter().all(is_confluent)
}
