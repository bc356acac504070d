//! Decorated pseudo-diagrams in the standard k-box.
//!
//! A [`Diagram`] is the combinatorial invariant of a decorated diagram: a
//! planar perfect matching of the `2k` boundary nodes, one word per edge,
//! the top-to-bottom order of decoration blocks on propagating edges when
//! the diagram has exactly one north cup, and a sorted multiset of loop
//! words. Construction always goes through [`canonicalize`], so every
//! `Diagram` value is reduced and two diagrams are equal exactly when their
//! fields are.

use std::fmt;

use thiserror::Error;

use crate::decor::{reduce_cyclic, reduce_word, CyclicWord, LoopReduction, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    North,
    South,
}

/// A boundary node; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub face: Face,
    pub index: usize,
}

impl Node {
    pub fn north(index: usize) -> Node {
        Node {
            face: Face::North,
            index,
        }
    }

    pub fn south(index: usize) -> Node {
        Node {
            face: Face::South,
            index,
        }
    }

    pub fn is_north(self) -> bool {
        self.face == Face::North
    }

    /// Position in the cyclic boundary order `N1..Nk, Sk..S1`, doubled so
    /// the two walls sit at odd positions.
    fn doubled_pos(self, k: usize) -> usize {
        match self.face {
            Face::North => 2 * (self.index - 1),
            Face::South => 2 * (2 * k - self.index),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.face {
            Face::North => write!(f, "{}", self.index),
            Face::South => write!(f, "{}'", self.index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    North,
    South,
    Propagating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Orient a chord: cups read left to right, propagating edges north to south.
pub fn orient(a: Node, b: Node) -> (Node, Node) {
    match (a.face, b.face) {
        (Face::South, Face::North) => (b, a),
        (fa, fb) if fa == fb && a.index > b.index => (b, a),
        _ => (a, b),
    }
}

fn kind_of(start: Node, end: Node) -> EdgeKind {
    match (start.face, end.face) {
        (Face::North, Face::North) => EdgeKind::North,
        (Face::South, Face::South) => EdgeKind::South,
        _ => EdgeKind::Propagating,
    }
}

/// A planar perfect matching of the boundary of the k-box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    k: usize,
    chords: Vec<(Node, Node)>,
}

impl Matching {
    pub fn new(k: usize, chords: impl IntoIterator<Item = (Node, Node)>) -> Result<Matching, DiagramError> {
        let mut chords: Vec<(Node, Node)> = chords.into_iter().map(|(a, b)| orient(a, b)).collect();
        chords.sort();
        check_matching(k, &chords)?;
        Ok(Matching { k, chords })
    }

    /// The identity matching: all vertical propagating edges.
    pub fn identity(k: usize) -> Matching {
        Matching {
            k,
            chords: (1..=k).map(|i| (Node::north(i), Node::south(i))).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn chords(&self) -> &[(Node, Node)] {
        &self.chords
    }

    pub fn alpha(&self) -> usize {
        self.chords.iter().filter(|(a, b)| a.is_north() && b.is_north()).count()
    }

    pub fn propagating_count(&self) -> usize {
        self.chords.iter().filter(|(a, b)| a.face != b.face).count()
    }
}

fn crosses(k: usize, c: (Node, Node), d: (Node, Node)) -> bool {
    let (mut a, mut b) = (c.0.doubled_pos(k), c.1.doubled_pos(k));
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let inside = |p: usize| a < p && p < b;
    inside(d.0.doubled_pos(k)) != inside(d.1.doubled_pos(k))
}

fn check_matching(k: usize, chords: &[(Node, Node)]) -> Result<(), DiagramError> {
    if k == 0 {
        return Err(DiagramError::EmptyBox);
    }
    let mut seen = vec![false; 2 * k];
    for &(a, b) in chords {
        for x in [a, b] {
            if x.index == 0 || x.index > k {
                return Err(DiagramError::NodeOutOfRange(x, k));
            }
            let slot = x.doubled_pos(k) / 2;
            if seen[slot] {
                return Err(DiagramError::NodeReused(x));
            }
            seen[slot] = true;
        }
    }
    if let Some(slot) = seen.iter().position(|s| !s) {
        let node = if slot < k {
            Node::north(slot + 1)
        } else {
            Node::south(2 * k - slot)
        };
        return Err(DiagramError::NodeUnmatched(node));
    }
    for (i, &c) in chords.iter().enumerate() {
        for &d in &chords[i + 1..] {
            if crosses(k, c, d) {
                return Err(DiagramError::Crossing(c.0, c.1, d.0, d.1));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("the box must have at least one node per face")]
    EmptyBox,
    #[error("node {0} is outside the {1}-box")]
    NodeOutOfRange(Node, usize),
    #[error("node {0} is used by more than one edge")]
    NodeReused(Node),
    #[error("node {0} is not matched")]
    NodeUnmatched(Node),
    #[error("edges {0}-{1} and {2}-{3} cross")]
    Crossing(Node, Node, Node, Node),
    #[error("a diagram with no north cups carries decorations")]
    DecoratedIdentity,
    #[error("block placement violates the vertical-position rules: {0}")]
    D2(String),
    #[error("diagram is not LR-decorated: {0}")]
    NotLr(String),
    #[error("box sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// A decorated edge. For propagating edges of a diagram with exactly one
/// north cup, `word` is the concatenation of the edge's blocks in
/// top-to-bottom order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub start: Node,
    pub end: Node,
    pub word: Word,
}

impl Edge {
    pub fn kind(&self) -> EdgeKind {
        kind_of(self.start, self.end)
    }

    pub fn is_propagating(&self) -> bool {
        self.kind() == EdgeKind::Propagating
    }

    pub fn touches(&self, n: Node) -> bool {
        self.start == n || self.end == n
    }
}

/// One block of decorations on a propagating edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub edge: usize,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    k: usize,
    edges: Vec<Edge>,
    interleave: Vec<Block>,
    loops: Vec<CyclicWord>,
}

/// Result of canonicalization: `2^two_exp · δ^delta_exp · diagram`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scaled {
    pub two_exp: u32,
    pub delta_exp: u32,
    pub diagram: Diagram,
}

impl Diagram {
    /// The identity diagram `d_e` of the k-box.
    pub fn identity(k: usize) -> Diagram {
        Diagram {
            k,
            edges: Matching::identity(k)
                .chords
                .into_iter()
                .map(|(start, end)| Edge {
                    start,
                    end,
                    word: Word::empty(),
                })
                .collect(),
            interleave: Vec::new(),
            loops: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn interleave(&self) -> &[Block] {
        &self.interleave
    }

    pub fn loops(&self) -> &[CyclicWord] {
        &self.loops
    }

    /// Number of north cups.
    pub fn alpha(&self) -> usize {
        self.edges.iter().filter(|e| e.kind() == EdgeKind::North).count()
    }

    pub fn is_dammed(&self) -> bool {
        self.edges.iter().any(Edge::is_propagating)
    }

    /// Indices of propagating edges, left to right.
    pub fn propagating(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].is_propagating()).collect()
    }

    /// Index of the edge incident to `n`.
    pub fn edge_at(&self, n: Node) -> usize {
        self.edges
            .iter()
            .position(|e| e.touches(n))
            .expect("every node of a diagram is matched")
    }

    pub fn shape(&self) -> Matching {
        Matching {
            k: self.k,
            chords: self.edges.iter().map(|e| (e.start, e.end)).collect(),
        }
    }

    /// Total number of decorations plus the number of loops.
    pub fn height(&self) -> usize {
        self.edges.iter().map(|e| e.word.len()).sum::<usize>()
            + self.loops.iter().map(|l| l.len() + 1).sum::<usize>()
    }

    pub fn is_undecorated(&self) -> bool {
        self.edges.iter().all(|e| e.word.is_empty()) && self.loops.iter().all(|l| l.is_empty())
    }

    /// Blocks of edge `i` in top-to-bottom order. Edges of a diagram without
    /// an interleave carry a single block (their whole word, if nonempty).
    pub fn blocks_of(&self, i: usize) -> Vec<&Word> {
        if self.alpha() == 1 && self.edges[i].is_propagating() {
            self.interleave.iter().filter(|b| b.edge == i).map(|b| &b.word).collect()
        } else if self.edges[i].word.is_empty() {
            Vec::new()
        } else {
            vec![&self.edges[i].word]
        }
    }

    /// A copy with loops removed.
    pub fn without_loops(&self) -> Diagram {
        Diagram {
            loops: Vec::new(),
            ..self.clone()
        }
    }

    /// A copy with one more (already reduced, irreducible) loop.
    pub fn with_loop(&self, l: CyclicWord) -> Diagram {
        let mut d = self.clone();
        d.loops.push(l);
        d.loops.sort();
        d
    }

    pub fn to_raw(&self) -> RawDiagram {
        let alpha_one = self.alpha() == 1;
        RawDiagram {
            k: self.k,
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    start: e.start,
                    end: e.end,
                    word: if alpha_one && e.is_propagating() {
                        Word::empty()
                    } else {
                        e.word.clone()
                    },
                })
                .collect(),
            interleave: self
                .interleave
                .iter()
                .map(|b| RawBlock {
                    edge: b.edge,
                    word: b.word.clone(),
                })
                .collect(),
            loops: self.loops.iter().map(|l| l.word().clone()).collect(),
        }
    }

    /// Strict order: same shape, smaller height.
    pub fn order_lt(&self, other: &Diagram) -> bool {
        self.shape() == other.shape() && self.height() < other.height()
    }

    /// Whether edge `i` can be pushed to touch the given wall without
    /// crossing another edge.
    pub fn is_exposed(&self, i: usize, side: Side) -> bool {
        let k = self.k;
        let wall = match side {
            Side::Left => 4 * k - 1,
            Side::Right => 2 * k - 1,
        };
        let e = &self.edges[i];
        let (ea, eb) = (e.start.doubled_pos(k), e.end.doubled_pos(k));
        !self.edges.iter().enumerate().any(|(j, c)| {
            if j == i {
                return false;
            }
            let (mut a, mut b) = (c.start.doubled_pos(k), c.end.doubled_pos(k));
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            let inside = |p: usize| a < p && p < b;
            // the arc of `c` away from the wall encloses `e`
            if inside(wall) {
                !inside(ea) && !inside(eb)
            } else {
                inside(ea) && inside(eb)
            }
        })
    }

    /// LR-validity; `Err` carries the first violated condition.
    pub fn check_lr(&self) -> Result<(), String> {
        for (i, e) in self.edges.iter().enumerate() {
            if e.word.has_closed() && !self.is_exposed(i, Side::Left) {
                return Err(format!("closed decoration on {}-{}, which is not L-exposed", e.start, e.end));
            }
            if e.word.has_open() && !self.is_exposed(i, Side::Right) {
                return Err(format!("open decoration on {}-{}, which is not R-exposed", e.start, e.end));
            }
        }
        for kind in [EdgeKind::North, EdgeKind::South] {
            let cups: Vec<&Edge> = self.edges.iter().filter(|e| e.kind() == kind).collect();
            for e in &cups {
                let syms = e.word.symbols();
                if let Some(first_open) = syms.iter().position(|d| d.is_open()) {
                    if syms[first_open..].iter().any(|d| d.is_closed()) {
                        return Err(format!("closed decoration after an open one on {}-{}", e.start, e.end));
                    }
                }
            }
            for (a, e) in cups.iter().enumerate() {
                if !e.word.has_open() {
                    continue;
                }
                if let Some(f) = cups[a + 1..].iter().find(|f| f.word.has_closed()) {
                    return Err(format!(
                        "closed decoration on {}-{} to the right of open decorations on {}-{}",
                        f.start, f.end, e.start, e.end
                    ));
                }
            }
        }
        let props = self.propagating();
        if let (Some(&left), Some(&right)) = (props.first(), props.last()) {
            let (l, r) = (&self.edges[left], &self.edges[right]);
            for (i, e) in self.edges.iter().enumerate() {
                let bound_l = |n: Node| if n.is_north() { l.start.index } else { l.end.index };
                let bound_r = |n: Node| if n.is_north() { r.start.index } else { r.end.index };
                if e.word.has_closed() {
                    let ok = if e.is_propagating() { i == left } else { e.end.index < bound_l(e.end) };
                    if !ok {
                        return Err(format!("closed decoration right of the leftmost propagating edge on {}-{}", e.start, e.end));
                    }
                }
                if e.word.has_open() {
                    let ok = if e.is_propagating() { i == right } else { e.start.index > bound_r(e.start) };
                    if !ok {
                        return Err(format!("open decoration left of the rightmost propagating edge on {}-{}", e.start, e.end));
                    }
                }
            }
            if props.len() > 1 && props.iter().any(|&p| self.edges[p].word.has_closed() && self.edges[p].word.has_open()) {
                return Err("a propagating edge carries both types but is not the unique propagating edge".into());
            }
            if self.loops.iter().any(|l| l.word().has_closed() && l.word().has_open()) {
                return Err("loop carries both types in a dammed diagram".into());
            }
        }
        Ok(())
    }

    pub fn is_lr_decorated(&self) -> bool {
        self.check_lr().is_ok()
    }
}

/// An edge of a raw (unreduced) diagram. Orientation is normalized on
/// canonicalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdge {
    pub start: Node,
    pub end: Node,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBlock {
    pub edge: usize,
    pub word: Word,
}

/// A diagram before reduction: blocks may be unconjoined and words
/// unreduced, loops may be removable. For diagrams with exactly one north
/// cup, decorations on propagating edges are given only through
/// `interleave` (top to bottom); `edge` indexes into `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDiagram {
    pub k: usize,
    pub edges: Vec<RawEdge>,
    pub interleave: Vec<RawBlock>,
    pub loops: Vec<Word>,
}

impl RawDiagram {
    pub fn height(&self) -> usize {
        self.edges.iter().map(|e| e.word.len()).sum::<usize>()
            + self.interleave.iter().map(|b| b.word.len()).sum::<usize>()
            + self.loops.iter().map(|l| l.len() + 1).sum::<usize>()
    }
}

/// Conjoin blocks, reduce every word and loop, and drop loops equal to `δ`.
pub fn canonicalize(raw: &RawDiagram) -> Result<Scaled, DiagramError> {
    let k = raw.k;
    let matching = Matching::new(k, raw.edges.iter().map(|e| (e.start, e.end)))?;
    let alpha = matching.alpha();

    // map raw edge index -> canonical edge index
    let mut remap = vec![0usize; raw.edges.len()];
    for (ri, e) in raw.edges.iter().enumerate() {
        let o = orient(e.start, e.end);
        remap[ri] = matching.chords.binary_search(&o).expect("chord present");
    }
    let mut words = vec![Word::empty(); matching.chords.len()];
    for (ri, e) in raw.edges.iter().enumerate() {
        let (s, _) = orient(e.start, e.end);
        words[remap[ri]] = if s == e.start { e.word.clone() } else { e.word.reversed() };
    }
    let is_prop = |ci: usize| {
        let (a, b) = matching.chords[ci];
        a.face != b.face
    };

    if alpha == 0 {
        let decorated = words.iter().any(|w| !w.is_empty())
            || raw.interleave.iter().any(|b| !b.word.is_empty())
            || raw.loops.iter().any(|l| !l.is_empty());
        if decorated {
            return Err(DiagramError::DecoratedIdentity);
        }
    }
    if alpha != 1 && raw.interleave.iter().any(|b| !b.word.is_empty()) {
        return Err(DiagramError::D2(
            "block order is only meaningful with exactly one north cup".into(),
        ));
    }

    let mut two_exp = 0u32;
    let mut delta_exp = 0u32;
    let mut interleave: Vec<Block> = Vec::new();
    if alpha == 1 {
        for (ci, w) in words.iter().enumerate() {
            if is_prop(ci) && !w.is_empty() {
                return Err(DiagramError::D2(format!(
                    "propagating edge {}-{} carries decorations outside the block order",
                    matching.chords[ci].0, matching.chords[ci].1
                )));
            }
        }
        for b in &raw.interleave {
            if b.edge >= raw.edges.len() {
                return Err(DiagramError::D2(format!("block refers to missing edge {}", b.edge)));
            }
            let ci = remap[b.edge];
            if !is_prop(ci) {
                return Err(DiagramError::D2("block order lists a non-propagating edge".into()));
            }
            if b.word.is_empty() {
                continue;
            }
            match interleave.last_mut() {
                Some(last) if last.edge == ci => last.word.push_word(&b.word),
                _ => interleave.push(Block {
                    edge: ci,
                    word: b.word.clone(),
                }),
            }
        }
        for b in &mut interleave {
            let r = reduce_word(&b.word);
            two_exp += r.two_exp;
            b.word = r.word;
        }
        for b in &interleave {
            words[b.edge].push_word(&b.word);
        }
        for (ci, w) in words.iter_mut().enumerate() {
            if !is_prop(ci) {
                let r = reduce_word(w);
                two_exp += r.two_exp;
                *w = r.word;
            }
        }
    } else {
        for w in words.iter_mut() {
            let r = reduce_word(w);
            two_exp += r.two_exp;
            *w = r.word;
        }
    }

    let mut loops = Vec::new();
    for l in &raw.loops {
        match reduce_cyclic(l) {
            LoopReduction::Removable { two_exp: e } => {
                two_exp += e;
                delta_exp += 1;
            }
            LoopReduction::Irreducible { two_exp: e, word } => {
                two_exp += e;
                loops.push(word);
            }
        }
    }
    loops.sort();

    let edges = matching
        .chords
        .iter()
        .zip(words)
        .map(|(&(start, end), word)| Edge { start, end, word })
        .collect();
    Ok(Scaled {
        two_exp,
        delta_exp,
        diagram: Diagram {
            k,
            edges,
            interleave,
            loops,
        },
    })
}

/// All planar perfect matchings of the k-box, in a fixed order.
pub fn all_matchings(k: usize) -> Vec<Matching> {
    // boundary slots in cyclic order
    let slots: Vec<Node> = (1..=k).map(Node::north).chain((1..=k).rev().map(Node::south)).collect();
    let mut out = Vec::new();
    let mut chords = Vec::new();
    fn rec(slots: &[Node], chords: &mut Vec<(Node, Node)>, out: &mut Vec<Vec<(Node, Node)>>) {
        if slots.is_empty() {
            out.push(chords.clone());
            return;
        }
        // first slot pairs with some slot at odd offset; inside and outside recurse
        for j in (1..slots.len()).step_by(2) {
            chords.push((slots[0], slots[j]));
            let inner = &slots[1..j];
            let outer = &slots[j + 1..];
            let mut inner_sets = Vec::new();
            rec(inner, &mut Vec::new(), &mut inner_sets);
            let mut outer_sets = Vec::new();
            rec(outer, &mut Vec::new(), &mut outer_sets);
            for a in &inner_sets {
                for b in &outer_sets {
                    let mut all = chords.clone();
                    all.extend_from_slice(a);
                    all.extend_from_slice(b);
                    out.push(all);
                }
            }
            chords.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&slots, &mut chords, &mut raw);
    for c in raw {
        out.push(Matching::new(k, c).expect("recursive construction is planar"));
    }
    out.sort();
    out
}

/// Basis words of length `1..=max_len` whose symbols have the allowed types.
fn basis_words(max_len: usize, closed: bool, open: bool) -> Vec<Word> {
    use crate::decor::Decoration;
    let mut out = Vec::new();
    let mut frontier: Vec<Word> = Vec::new();
    for d in Decoration::ALL {
        if (d.is_closed() && closed) || (d.is_open() && open) {
            frontier.push(Word::single(d));
        }
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let last = w.last().expect("nonempty");
            for d in Decoration::ALL {
                let allowed = (d.is_closed() && closed) || (d.is_open() && open);
                if allowed && !d.same_type(last) {
                    let mut v = w.clone();
                    v.push_word(&Word::single(d));
                    next.push(v);
                }
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    out
}

/// Canonical irreducible loop words with at most `max_len` symbols.
fn loop_words(max_len: usize, mixed: bool) -> Vec<CyclicWord> {
    let mut out: Vec<CyclicWord> = basis_words(max_len, true, !mixed)
        .into_iter()
        .chain(basis_words(max_len, false, true))
        .chain(if mixed { basis_words(max_len, true, true) } else { Vec::new() })
        .filter_map(|w| match reduce_cyclic(&w) {
            LoopReduction::Irreducible { two_exp: 0, word } if word.word() == &w => Some(word),
            _ => None,
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn loop_multisets(cands: &[CyclicWord], budget: usize, from: usize, acc: &mut Vec<CyclicWord>, out: &mut Vec<(Vec<CyclicWord>, usize)>) {
    out.push((acc.clone(), acc.iter().map(|l| l.len() + 1).sum()));
    for (i, c) in cands.iter().enumerate().skip(from) {
        if c.len() < budget {
            acc.push(c.clone());
            loop_multisets(cands, budget - c.len() - 1, i, acc, out);
            acc.pop();
        }
    }
}

/// Alternating single-symbol block sequences on two edges, closed symbols on
/// `left` and open ones on `right`, with at most `budget` symbols.
fn interleaves(left: usize, right: usize, budget: usize) -> Vec<Vec<Block>> {
    use crate::decor::Decoration;
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Block>> = vec![Vec::new()];
    for _ in 0..budget {
        let mut next = Vec::new();
        for seq in &frontier {
            for d in Decoration::ALL {
                let edge = if d.is_closed() { left } else { right };
                if seq.last().is_some_and(|b| b.edge == edge) {
                    continue;
                }
                let mut v = seq.clone();
                v.push(Block {
                    edge,
                    word: Word::single(d),
                });
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every canonical LR-decorated diagram of the k-box with height at most
/// `max_height`, sorted.
pub fn enumerate_lr(k: usize, max_height: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    for m in all_matchings(k) {
        let alpha = m.alpha();
        if alpha == 0 {
            out.push(Diagram::identity(k));
            continue;
        }
        let base = Diagram {
            k,
            edges: m
                .chords
                .iter()
                .map(|&(start, end)| Edge {
                    start,
                    end,
                    word: Word::empty(),
                })
                .collect(),
            interleave: Vec::new(),
            loops: Vec::new(),
        };
        let props = base.propagating();
        let cands: Vec<Vec<Word>> = (0..base.edges.len())
            .map(|i| {
                let mut c = vec![Word::empty()];
                if alpha == 1 && base.edges[i].is_propagating() {
                    return c;
                }
                let closed = base.is_exposed(i, Side::Left);
                let open = base.is_exposed(i, Side::Right);
                c.extend(basis_words(max_height, closed, open));
                c
            })
            .collect();
        let blocks = if alpha == 1 {
            interleaves(props[0], *props.last().expect("props"), max_height)
        } else {
            vec![Vec::new()]
        };
        let loops = loop_words(max_height.saturating_sub(1), props.is_empty());

        let mut words = vec![Word::empty(); base.edges.len()];
        fn assign(
            i: usize,
            budget: usize,
            cands: &[Vec<Word>],
            words: &mut Vec<Word>,
            f: &mut dyn FnMut(&[Word], usize),
        ) {
            if i == cands.len() {
                f(words, budget);
                return;
            }
            for w in &cands[i] {
                if w.len() <= budget {
                    words[i] = w.clone();
                    assign(i + 1, budget - w.len(), cands, words, f);
                }
            }
            words[i] = Word::empty();
        }
        assign(0, max_height, &cands, &mut words, &mut |ws, budget| {
            let mut d = base.clone();
            for (e, w) in d.edges.iter_mut().zip(ws) {
                e.word = w.clone();
            }
            if d.check_lr().is_err() {
                return;
            }
            for seq in &blocks {
                if seq.len() > budget {
                    continue;
                }
                let mut d2 = d.clone();
                for b in seq {
                    d2.edges[b.edge].word.push_word(&b.word);
                }
                d2.interleave = seq.clone();
                let mut sets = Vec::new();
                loop_multisets(&loops, budget - seq.len(), 0, &mut Vec::new(), &mut sets);
                for (ls, _) in sets {
                    let mut d3 = d2.clone();
                    d3.loops = ls;
                    if d3.check_lr().is_ok() {
                        out.push(d3);
                    }
                }
            }
        });
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn raw_edge(a: Node, b: Node, word: &str) -> RawEdge {
        RawEdge {
            start: a,
            end: b,
            word: w(word),
        }
    }

    /// d_1 for k = 4.
    fn d1_raw() -> RawDiagram {
        RawDiagram {
            k: 4,
            edges: vec![
                raw_edge(Node::north(1), Node::north(2), "b"),
                raw_edge(Node::south(1), Node::south(2), "b"),
                raw_edge(Node::north(3), Node::south(3), ""),
                raw_edge(Node::north(4), Node::south(4), ""),
            ],
            interleave: vec![],
            loops: vec![],
        }
    }

    fn brute_planar(k: usize, chords: &[(Node, Node)]) -> bool {
        // points on a circle; chords cross iff endpoints interleave
        let pos = |n: Node| match n.face {
            Face::North => n.index as i64 - 1,
            Face::South => 2 * k as i64 - n.index as i64,
        };
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                let (mut p, mut q) = (pos(a), pos(b));
                if p > q {
                    std::mem::swap(&mut p, &mut q);
                }
                let (mut r, mut s) = (pos(c), pos(d));
                if r > s {
                    std::mem::swap(&mut r, &mut s);
                }
                if (p < r && r < q && q < s) || (r < p && p < s && s < q) {
                    return false;
                }
            }
        }
        true
    }

    fn all_perfect(k: usize) -> Vec<Vec<(Node, Node)>> {
        let nodes: Vec<Node> = (1..=k).map(Node::north).chain((1..=k).map(Node::south)).collect();
        fn rec(rest: &[Node], acc: &mut Vec<(Node, Node)>, out: &mut Vec<Vec<(Node, Node)>>) {
            if rest.is_empty() {
                out.push(acc.clone());
                return;
            }
            for j in 1..rest.len() {
                acc.push((rest[0], rest[j]));
                let remaining: Vec<Node> =
                    rest[1..].iter().enumerate().filter(|&(i, _)| i + 1 != j).map(|(_, &n)| n).collect();
                rec(&remaining, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(&nodes, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn planarity_agrees_with_brute_force() {
        for k in 1..=5 {
            let mut planar = 0;
            for chords in all_perfect(k) {
                let ok = Matching::new(k, chords.clone()).is_ok();
                assert_eq!(ok, brute_planar(k, &chords), "{chords:?}");
                planar += ok as usize;
            }
            assert_eq!(planar, all_matchings(k).len());
        }
    }

    #[test]
    fn planar_counts_are_catalan() {
        let counts: Vec<usize> = (1..=6).map(|k| all_matchings(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn crossing_is_rejected() {
        let err = Matching::new(
            4,
            [
                (Node::north(1), Node::north(3)),
                (Node::north(2), Node::north(4)),
                (Node::south(1), Node::south(2)),
                (Node::south(3), Node::south(4)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::Crossing(..)));
    }

    #[test]
    fn alpha_and_height() {
        let d1 = canonicalize(&d1_raw()).unwrap().diagram;
        assert_eq!(d1.alpha(), 1);
        assert_eq!(d1.height(), 2);
        let de = Diagram::identity(4);
        assert_eq!(de.alpha(), 0);
        assert_eq!(de.height(), 0);
        assert!(!de.order_lt(&de));
    }

    #[test]
    fn canonicalize_examples() {
        let mut r = d1_raw();
        r.loops.push(w("bb"));
        let s = canonicalize(&r).unwrap();
        assert_eq!((s.two_exp, s.delta_exp), (0, 1));
        assert_eq!(s.diagram, canonicalize(&d1_raw()).unwrap().diagram);

        let mut r = d1_raw();
        r.edges[0].word = w("bbb");
        let s = canonicalize(&r).unwrap();
        assert_eq!((s.two_exp, s.delta_exp), (1, 0));
        assert_eq!(s.diagram.edges()[0].word, w("b"));

        let d1 = canonicalize(&d1_raw()).unwrap().diagram;
        let again = canonicalize(&d1.to_raw()).unwrap();
        assert_eq!((again.two_exp, again.delta_exp), (0, 0));
        assert_eq!(again.diagram, d1);
    }

    #[test]
    fn loop_makes_larger_in_order() {
        let d1 = canonicalize(&d1_raw()).unwrap().diagram;
        let with = d1.with_loop(CyclicWord::new(w("BO")));
        assert!(d1.order_lt(&with));
        assert_eq!(with.height() - d1.height(), 3);
    }

    #[test]
    fn exposure() {
        let d1 = canonicalize(&d1_raw()).unwrap().diagram;
        let cup = d1.edge_at(Node::north(1));
        assert!(d1.is_exposed(cup, Side::Left));
        assert!(!d1.is_exposed(cup, Side::Right));
        let last = d1.edge_at(Node::north(4));
        assert!(d1.is_exposed(last, Side::Right));

        // {N2,N3} nested under {N1,N4}
        let raw = RawDiagram {
            k: 4,
            edges: vec![
                raw_edge(Node::north(1), Node::north(4), ""),
                raw_edge(Node::north(2), Node::north(3), ""),
                raw_edge(Node::south(1), Node::south(2), ""),
                raw_edge(Node::south(3), Node::south(4), ""),
            ],
            interleave: vec![],
            loops: vec![],
        };
        let d = canonicalize(&raw).unwrap().diagram;
        let inner = d.edge_at(Node::north(2));
        assert!(!d.is_exposed(inner, Side::Left));
        assert!(!d.is_exposed(inner, Side::Right));
        let outer = d.edge_at(Node::north(1));
        assert!(d.is_exposed(outer, Side::Left) && d.is_exposed(outer, Side::Right));
    }

    #[test]
    fn lr_rejects_open_on_leftmost_prop() {
        // two propagating edges, the leftmost carrying an open dot
        let raw = RawDiagram {
            k: 4,
            edges: vec![
                raw_edge(Node::north(1), Node::north(2), ""),
                raw_edge(Node::south(1), Node::south(2), ""),
                raw_edge(Node::north(3), Node::south(3), ""),
                raw_edge(Node::north(4), Node::south(4), ""),
            ],
            interleave: vec![RawBlock { edge: 2, word: w("o") }],
            loops: vec![],
        };
        let d = canonicalize(&raw).unwrap().diagram;
        assert!(!d.is_lr_decorated());
    }

    #[test]
    fn undammed_mixed_loop_is_lr() {
        let raw = RawDiagram {
            k: 4,
            edges: vec![
                raw_edge(Node::north(1), Node::north(2), "b"),
                raw_edge(Node::north(3), Node::north(4), "o"),
                raw_edge(Node::south(1), Node::south(2), "b"),
                raw_edge(Node::south(3), Node::south(4), "o"),
            ],
            interleave: vec![],
            loops: vec![w("BO")],
        };
        let d = canonicalize(&raw).unwrap().diagram;
        assert!(d.is_lr_decorated());
    }

    #[test]
    fn alpha_one_blocks_conjoin_only_when_consecutive() {
        // k = 4, cup 1-2 north and south, props 3->3' and 4->4'
        let base = |blocks: Vec<(usize, &str)>| RawDiagram {
            k: 4,
            edges: vec![
                raw_edge(Node::north(1), Node::north(2), "b"),
                raw_edge(Node::south(1), Node::south(2), "b"),
                raw_edge(Node::north(3), Node::south(3), ""),
                raw_edge(Node::north(4), Node::south(4), ""),
            ],
            interleave: blocks.into_iter().map(|(edge, s)| RawBlock { edge, word: w(s) }).collect(),
            loops: vec![],
        };
        let a = canonicalize(&base(vec![(2, "B"), (3, "O"), (2, "B")])).unwrap();
        assert_eq!(a.two_exp, 0);
        assert_eq!(a.diagram.interleave().len(), 3);
        let b = canonicalize(&base(vec![(2, "B"), (2, "B"), (3, "O")])).unwrap();
        assert_eq!(b.two_exp, 1);
        assert_eq!(b.diagram.interleave().len(), 2);
        // different interleave orders are different diagrams
        let c = canonicalize(&base(vec![(3, "O"), (2, "B"), (2, "B")])).unwrap();
        assert_ne!(b.diagram, c.diagram);
    }

    #[test]
    fn interleave_on_cup_is_d2_violation() {
        let raw = RawDiagram {
            interleave: vec![RawBlock { edge: 0, word: w("b") }],
            ..d1_raw()
        };
        assert!(matches!(canonicalize(&raw), Err(DiagramError::D2(_))));
    }

    #[test]
    fn enumerated_diagrams_are_canonical_and_lr() {
        let all = enumerate_lr(4, 4);
        assert!(all.len() > 14);
        for d in &all {
            assert!(d.height() <= 4);
            assert!(d.is_lr_decorated());
            let s = canonicalize(&d.to_raw()).unwrap();
            assert_eq!((s.two_exp, s.delta_exp), (0, 0));
            assert_eq!(&s.diagram, d);
        }
        let undecorated = enumerate_lr(4, 0);
        assert_eq!(undecorated.len(), 14);
    }

    #[test]
    fn decorated_identity_rejected() {
        let mut raw = Diagram::identity(3).to_raw();
        raw.edges[0].word = w("b");
        assert_eq!(canonicalize(&raw), Err(DiagramError::DecoratedIdentity));
    }
}
