//! Simple diagrams, the algebra they generate, admissibility and
//! factorization.

use std::collections::HashMap;

use thiserror::Error;

use crate::decor::{Decoration, Word};
use crate::diagram::{canonicalize, Diagram, DiagramError, Node, RawDiagram, RawEdge};
use crate::engine::{concat, eval_scaled, EngineError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator index {0} is outside 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("need n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("diagram is not admissible: {0}")]
    NotAdmissible(String),
    #[error("diagram is decorated")]
    Decorated,
    #[error("no unit-coefficient word of length at most {0} found")]
    SearchExhausted(usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl From<AlgebraError> for EngineError {
    fn from(e: AlgebraError) -> EngineError {
        match e {
            AlgebraError::IndexOutOfRange(i, m) => EngineError::IndexOutOfRange(i, m),
            AlgebraError::RankTooSmall(n) => EngineError::RankTooSmall(n),
            AlgebraError::Engine(e) => e,
            other => EngineError::Diagram(DiagramError::NotLr(other.to_string())),
        }
    }
}

/// The simple diagram `d_i` of rank `n` (box size `n + 2`).
pub fn simple_diagram(i: usize, n: usize) -> Result<Diagram, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::RankTooSmall(n));
    }
    if i == 0 || i > n + 1 {
        return Err(AlgebraError::IndexOutOfRange(i, n + 1));
    }
    let k = n + 2;
    let cup_word = if i == 1 {
        Word::single(Decoration::Dot)
    } else if i == n + 1 {
        Word::single(Decoration::OpenDot)
    } else {
        Word::empty()
    };
    let mut edges = vec![
        RawEdge {
            start: Node::north(i),
            end: Node::north(i + 1),
            word: cup_word.clone(),
        },
        RawEdge {
            start: Node::south(i),
            end: Node::south(i + 1),
            word: cup_word,
        },
    ];
    for j in (1..=k).filter(|&j| j != i && j != i + 1) {
        edges.push(RawEdge {
            start: Node::north(j),
            end: Node::south(j),
            word: Word::empty(),
        });
    }
    let raw = RawDiagram {
        k,
        edges,
        interleave: Vec::new(),
        loops: Vec::new(),
    };
    Ok(canonicalize(&raw).expect("simple diagrams are well formed").diagram)
}

/// Bond strength between generators `i` and `j` of the affine C graph of rank `n`.
pub fn bond(i: usize, j: usize, n: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    if b != a + 1 {
        2
    } else if a == 1 || b == n + 1 {
        4
    } else {
        3
    }
}

/// Checks `d_i² = δ d_i`, commutation, `d_i d_j d_i = d_i` for interior
/// neighbours and `d_i d_j d_i d_j = 2 d_i d_j` for wall pairs, using the
/// given generator set.
pub fn check_relations_with(gens: &[Diagram], n: usize) -> bool {
    let eval = |w: &[usize]| -> Option<(u32, u32, Diagram)> {
        let mut acc = (0u32, 0u32, Diagram::identity(n + 2));
        for &i in w {
            let s = concat(&acc.2, &gens[i - 1]).ok()?;
            acc = (acc.0 + s.two_exp, acc.1 + s.delta_exp, s.diagram);
        }
        Some(acc)
    };
    for i in 1..=n + 1 {
        let Some(sq) = eval(&[i, i]) else { return false };
        if sq != (0, 1, gens[i - 1].clone()) {
            return false;
        }
        for j in 1..=n + 1 {
            if i == j {
                continue;
            }
            let ok = match bond(i, j, n) {
                2 => eval(&[i, j]) == eval(&[j, i]),
                3 => eval(&[i, j, i]) == Some((0, 0, gens[i - 1].clone())),
                _ => match (eval(&[i, j, i, j]), eval(&[i, j])) {
                    (Some((a, b, x)), Some((c, e, y))) => a == c + 1 && b == e && x == y,
                    _ => false,
                },
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

pub fn check_generator_relations(n: usize) -> bool {
    let Ok(gens) = (1..=n + 1).map(|i| simple_diagram(i, n)).collect::<Result<Vec<_>, _>>() else {
        return false;
    };
    check_relations_with(&gens, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BSide {
    B,
    BPrime,
}

/// Generator indices of the type-B (or B′) subalgebra.
pub fn subalgebra_b(n: usize, side: BSide) -> Vec<usize> {
    match side {
        BSide::B => (1..=n).collect(),
        BSide::BPrime => (2..=n + 1).collect(),
    }
}

/// Product of undecorated diagrams with every loop traded for `δ`.
pub fn type_a_product(top: &Diagram, bottom: &Diagram) -> Result<(u32, Diagram), AlgebraError> {
    if !top.is_undecorated() || !bottom.is_undecorated() {
        return Err(AlgebraError::Decorated);
    }
    let s = concat(top, bottom)?;
    Ok((s.delta_exp, s.diagram))
}

/// `eval_scaled` with the scalars dropped.
pub fn stripped(w: &[usize], n: usize) -> Result<Diagram, AlgebraError> {
    Ok(eval_scaled(w, n)?.diagram)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// The diagram is not LR-decorated, so the axioms do not apply.
    Lr,
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Lr => "LR",
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::C4 => "C4",
            Axiom::C5 => "C5",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub verdict: bool,
    pub violated: Option<Violation>,
}

impl AdmissibilityReport {
    fn ok() -> AdmissibilityReport {
        AdmissibilityReport {
            verdict: true,
            violated: None,
        }
    }

    fn fail(axiom: Axiom, detail: impl Into<String>) -> AdmissibilityReport {
        AdmissibilityReport {
            verdict: false,
            violated: Some(Violation {
                axiom,
                detail: detail.into(),
            }),
        }
    }
}

fn count_in(d: &Diagram, sym: Decoration) -> usize {
    d.edges().iter().map(|e| e.word.count(sym)).sum::<usize>()
        + d.loops().iter().map(|l| l.word().count(sym)).sum::<usize>()
}

fn edge_label(d: &Diagram, i: usize) -> String {
    let e = &d.edges()[i];
    format!("{}-{}", e.start, e.end)
}

/// Mirror image of a diagram: node `i` goes to `k + 1 - i` and open and
/// closed decorations swap. Admissibility is invariant under it, which
/// lets the eastern checks reuse the western ones.
pub fn mirror(d: &Diagram) -> Diagram {
    let k = d.k();
    let flip_node = |n: Node| Node {
        face: n.face,
        index: k + 1 - n.index,
    };
    let swap = |w: &Word| -> Word {
        Word(
            w.symbols()
                .iter()
                .map(|s| match s {
                    Decoration::Dot => Decoration::OpenDot,
                    Decoration::Triangle => Decoration::OpenTriangle,
                    Decoration::OpenDot => Decoration::Dot,
                    Decoration::OpenTriangle => Decoration::Triangle,
                })
                .collect(),
        )
    };
    let alpha_one = d.alpha() == 1;
    // cups come out right-to-left and are re-oriented by canonicalize
    let edges = d
        .edges()
        .iter()
        .map(|e| RawEdge {
            start: flip_node(e.start),
            end: flip_node(e.end),
            word: if alpha_one && e.is_propagating() {
                Word::empty()
            } else {
                swap(&e.word)
            },
        })
        .collect();
    let interleave = d
        .interleave()
        .iter()
        .map(|b| crate::diagram::RawBlock {
            edge: b.edge,
            word: swap(&b.word),
        })
        .collect();
    let loops = d.loops().iter().map(|l| swap(l.word())).collect();
    let raw = RawDiagram {
        k,
        edges,
        interleave,
        loops,
    };
    canonicalize(&raw).expect("mirror of a diagram is a diagram").diagram
}

/// Western checks for a diagram with exactly one north cup.
fn c5_west(d: &Diagram) -> Result<(), String> {
    use Decoration::*;
    let props = d.propagating();
    let left = props[0];
    let l = &d.edges()[left];
    let blocks: Vec<Decoration> = d
        .blocks_of(left)
        .iter()
        .map(|w| match w.symbols() {
            [s] => Ok(*s),
            _ => Err(format!("block {w} on {} is not a single decoration", edge_label(d, left))),
        })
        .collect::<Result<_, _>>()?;
    let north_cup = l.start.index != 1;
    let south_cup = l.end.index != 1;
    for node in [Node::north(1), Node::south(1)] {
        let i = d.edge_at(node);
        if !d.edges()[i].is_propagating() && d.edges()[i].word != Word::single(Dot) {
            return Err(format!("wall edge {} must carry a single •", edge_label(d, i)));
        }
    }
    let seq = d.interleave();
    let is_first = seq.first().is_some_and(|b| b.edge == left);
    let is_last = seq.last().is_some_and(|b| b.edge == left);
    let inner_triangles = |bs: &[Decoration]| bs.iter().all(|&s| s == Triangle);
    let m = blocks.len();
    let ok = match (north_cup, south_cup) {
        (false, false) => inner_triangles(&blocks),
        (true, false) => m >= 1 && blocks[0] == Dot && is_first && inner_triangles(&blocks[1..]),
        (false, true) => m >= 1 && blocks[m - 1] == Dot && is_last && inner_triangles(&blocks[..m - 1]),
        (true, true) => {
            ((m == 0 || (m == 1 && blocks[0] == Triangle)) && count_open(d) == 0)
                || (m >= 2
                    && blocks[0] == Dot
                    && blocks[m - 1] == Dot
                    && is_first
                    && is_last
                    && inner_triangles(&blocks[1..m - 1]))
        }
    };
    if ok {
        Ok(())
    } else {
        Err(format!("western end of {} matches none of the allowed patterns", edge_label(d, left)))
    }
}

fn count_open(d: &Diagram) -> usize {
    count_in(d, Decoration::OpenDot) + count_in(d, Decoration::OpenTriangle)
}

/// Western checks for a dammed diagram with one propagating edge.
fn c3_west(d: &Diagram) -> Result<(), String> {
    use Decoration::*;
    let e = d.propagating()[0];
    let w = &d.edges()[e].word;
    let syms = w.symbols();
    let (a, b) = (d.edges()[e].start.index, d.edges()[e].end.index);
    for node in [Node::north(1), Node::south(1)] {
        let i = d.edge_at(node);
        if i != e && d.edges()[i].word != Word::single(Dot) {
            return Err(format!("wall edge {} must carry a single •", edge_label(d, i)));
        }
    }
    let mixed = w.has_closed() && w.has_open();
    let must_start = (a == 1 && b != 1) || (a == 1 && mixed);
    let must_end = (b == 1 && a != 1) || (b == 1 && mixed);
    if must_start && syms.first() != Some(&Dot) {
        return Err(format!("{} must start with •", edge_label(d, e)));
    }
    if must_end && syms.last() != Some(&Dot) {
        return Err(format!("{} must end with •", edge_label(d, e)));
    }
    if a == 1 && b == 1 && syms.len() == 1 && syms[0] != Triangle {
        return Err(format!("a single decoration on {} must be ▲", edge_label(d, e)));
    }
    for (p, &s) in syms.iter().enumerate() {
        if s == Dot && !((p == 0 && a == 1) || (p + 1 == syms.len() && b == 1)) {
            return Err(format!("• in position {} of {}", p + 1, edge_label(d, e)));
        }
    }
    let walls = [Node::north(1), Node::south(1)].map(|n| d.edge_at(n));
    for (i, edge) in d.edges().iter().enumerate() {
        if i != e && !walls.contains(&i) && edge.word.count(Dot) > 0 {
            return Err(format!("• on {}", edge_label(d, i)));
        }
    }
    if d.loops().iter().any(|l| l.word().count(Dot) > 0) {
        return Err("• on a loop".into());
    }
    Ok(())
}

/// Western checks for a dammed diagram with more than one north cup and
/// several propagating edges.
fn c4_west(d: &Diagram) -> Result<(), String> {
    use Decoration::*;
    let n1 = d.edge_at(Node::north(1));
    let s1 = d.edge_at(Node::south(1));
    if n1 == s1 {
        let w = &d.edges()[n1].word;
        if !(w.is_empty() || *w == Word::single(Triangle)) {
            return Err(format!("{} must carry at most a single ▲", edge_label(d, n1)));
        }
        if count_in(d, Dot) != 0 {
            return Err("• away from the wall".into());
        }
    } else {
        for i in [n1, s1] {
            if d.edges()[i].word != Word::single(Dot) {
                return Err(format!("wall edge {} must carry a single •", edge_label(d, i)));
            }
        }
        if count_in(d, Dot) != 2 {
            return Err("• away from the wall".into());
        }
    }
    Ok(())
}

fn c2_west(d: &Diagram) -> Result<(), String> {
    use Decoration::*;
    let n1 = d.edge_at(Node::north(1));
    let s1 = d.edge_at(Node::south(1));
    for i in [n1, s1] {
        if d.edges()[i].word.first() != Some(Dot) {
            return Err(format!("{} must start with •", edge_label(d, i)));
        }
    }
    if count_in(d, Dot) != 2 {
        return Err("• away from the wall edges".into());
    }
    Ok(())
}

type EndCheck = fn(&Diagram) -> Result<(), String>;

/// Checks the admissibility axioms in order.
pub fn is_admissible(d: &Diagram) -> AdmissibilityReport {
    if let Err(e) = d.check_lr() {
        return AdmissibilityReport::fail(Axiom::Lr, e);
    }
    let bo = crate::decor::CyclicWord::new("BO".parse().expect("valid word"));
    if let Some(l) = d.loops().iter().find(|l| **l != bo) {
        return AdmissibilityReport::fail(Axiom::C1, format!("loop {l} is not ▲▽"));
    }
    let alpha = d.alpha();
    if alpha == 0 {
        return AdmissibilityReport::ok();
    }
    let props = d.propagating().len();
    let (axiom, check): (Axiom, EndCheck) = if props == 0 {
        (Axiom::C2, c2_west)
    } else if props == 1 {
        (Axiom::C3, c3_west)
    } else if alpha > 1 {
        (Axiom::C4, c4_west)
    } else {
        (Axiom::C5, c5_west)
    };
    if let Err(e) = check(d) {
        return AdmissibilityReport::fail(axiom, format!("west: {e}"));
    }
    if let Err(e) = check(&mirror(d)) {
        return AdmissibilityReport::fail(axiom, format!("east (mirrored): {e}"));
    }
    AdmissibilityReport::ok()
}

struct SearchNode {
    diagram: Diagram,
    parent: usize,
    letter: usize,
    two_exp: u32,
    delta_exp: u32,
}

/// Breadth-first search over generator words, shared across many
/// factorizations of the same rank.
pub struct Factorizer {
    n: usize,
    gens: Vec<Diagram>,
    nodes: Vec<SearchNode>,
    index: HashMap<Diagram, usize>,
    level_start: usize,
    depth: usize,
}

impl Factorizer {
    pub fn new(n: usize) -> Result<Factorizer, AlgebraError> {
        let gens = (1..=n + 1).map(|i| simple_diagram(i, n)).collect::<Result<Vec<_>, _>>()?;
        let id = Diagram::identity(n + 2);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        Ok(Factorizer {
            n,
            gens,
            nodes: vec![SearchNode {
                diagram: id,
                parent: usize::MAX,
                letter: 0,
                two_exp: 0,
                delta_exp: 0,
            }],
            index,
            level_start: 0,
            depth: 0,
        })
    }

    fn expand(&mut self) {
        let end = self.nodes.len();
        for p in self.level_start..end {
            for (gi, g) in self.gens.iter().enumerate() {
                let s = concat(&self.nodes[p].diagram, g).expect("same box size");
                let two_exp = self.nodes[p].two_exp + s.two_exp;
                let delta_exp = self.nodes[p].delta_exp + s.delta_exp;
                match self.index.get(&s.diagram) {
                    None => {
                        self.index.insert(s.diagram.clone(), self.nodes.len());
                        self.nodes.push(SearchNode {
                            diagram: s.diagram,
                            parent: p,
                            letter: gi + 1,
                            two_exp,
                            delta_exp,
                        });
                    }
                    Some(&q) if q >= end && (two_exp, delta_exp) == (0, 0) => {
                        let node = &mut self.nodes[q];
                        node.parent = p;
                        node.letter = gi + 1;
                        node.two_exp = 0;
                        node.delta_exp = 0;
                    }
                    Some(_) => {}
                }
            }
        }
        self.level_start = end;
        self.depth += 1;
    }

    fn word_of(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            w.push(self.nodes[i].letter);
            i = self.nodes[i].parent;
        }
        w.reverse();
        w
    }

    /// A shortest word `w` with `eval_word(w) = 1 · d`.
    pub fn factorize(&mut self, d: &Diagram) -> Result<Vec<usize>, AlgebraError> {
        if d.k() != self.n + 2 {
            return Err(EngineError::SizeMismatch(d.k(), self.n + 2).into());
        }
        let report = is_admissible(d);
        if let Some(v) = report.violated {
            return Err(AlgebraError::NotAdmissible(format!("{}: {}", v.axiom, v.detail)));
        }
        let cap = (self.n + 2) * (d.height() + 2);
        loop {
            if let Some(&i) = self.index.get(d) {
                let node = &self.nodes[i];
                if (node.two_exp, node.delta_exp) != (0, 0) {
                    return Err(AlgebraError::SearchExhausted(self.depth));
                }
                return Ok(self.word_of(i));
            }
            if self.depth >= cap {
                return Err(AlgebraError::SearchExhausted(cap));
            }
            self.expand();
        }
    }
}

/// Factor an admissible diagram into simple diagrams.
pub fn factorize(d: &Diagram) -> Result<Vec<usize>, AlgebraError> {
    if d.k() < 4 {
        return Err(AlgebraError::RankTooSmall(d.k().saturating_sub(2)));
    }
    Factorizer::new(d.k() - 2)?.factorize(d)
}

/// Explicit generator words for families of admissible diagrams.
pub mod words {
    /// `1, 2, …, n`.
    pub fn z1(n: usize) -> Vec<usize> {
        (1..=n).collect()
    }

    /// `n+1, n, …, 2`.
    pub fn z2(n: usize) -> Vec<usize> {
        (2..=n + 1).rev().collect()
    }

    /// Even generators `2, 4, …`.
    pub fn evens(n: usize) -> Vec<usize> {
        (2..=n + 1).step_by(2).collect()
    }

    /// Odd generators `1, 3, …`.
    pub fn odds(n: usize) -> Vec<usize> {
        (1..=n + 1).step_by(2).collect()
    }

    fn repeat(parts: &[Vec<usize>], k: usize) -> Vec<usize> {
        let mut w = Vec::new();
        for _ in 0..k {
            for p in parts {
                w.extend(p);
            }
        }
        w
    }

    /// `(z1 z2)^k z1 (n+1)`: one north cup, k ▲-blocks and k+1 ▽-blocks.
    pub fn alpha_one_east(n: usize, k: usize) -> Vec<usize> {
        let mut w = repeat(&[z1(n), z2(n)], k);
        w.extend(z1(n));
        w.push(n + 1);
        w
    }

    /// `(z1 z2)^k 1`.
    pub fn alpha_one_west(n: usize, k: usize) -> Vec<usize> {
        let mut w = repeat(&[z1(n), z2(n)], k);
        w.push(1);
        w
    }

    /// `(d_E d_O)^k d_E` for odd `n`: a single propagating edge.
    pub fn single_propagating(n: usize, k: usize) -> Vec<usize> {
        let mut w = repeat(&[evens(n), odds(n)], k);
        w.extend(evens(n));
        w
    }

    /// `(3 1 2)^k 1 3`: the undammed rank-2 diagram with k ▲▽ loops.
    pub fn pumped_loops(k: usize) -> Vec<usize> {
        let mut w = repeat(&[vec![3, 1, 2]], k);
        w.extend(odds(2));
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::text::{parse_diagram, serialize};
    use crate::decor::CyclicWord;
    use crate::diagram::all_matchings;
    use crate::engine::eval_word;

    #[test]
    fn simple_diagrams_of_rank_two() {
        let d1 = simple_diagram(1, 2).unwrap();
        assert_eq!(serialize(&d1), "k=4\nN 1-2 : b\nS 1-2 : b\nP 3-3' :\nP 4-4' :\n");
        let d2 = simple_diagram(2, 2).unwrap();
        assert_eq!(serialize(&d2), "k=4\nN 2-3 :\nS 2-3 :\nP 1-1' :\nP 4-4' :\n");
        let d3 = simple_diagram(3, 2).unwrap();
        assert_eq!(serialize(&d3), "k=4\nN 3-4 : o\nS 3-4 : o\nP 1-1' :\nP 2-2' :\n");
        assert_eq!(simple_diagram(4, 2), Err(AlgebraError::IndexOutOfRange(4, 3)));
        assert_eq!(simple_diagram(1, 1), Err(AlgebraError::RankTooSmall(1)));
    }

    #[test]
    fn relations_hold_and_detect_corruption() {
        for n in 2..=5 {
            assert!(check_generator_relations(n));
        }
        let mut gens: Vec<Diagram> = (1..=4).map(|i| simple_diagram(i, 3).unwrap()).collect();
        gens[0] = parse_diagram("k=5\nN 1-2 :\nS 1-2 :\nP 3-3' :\nP 4-4' :\nP 5-5' :\n").unwrap();
        assert!(!check_relations_with(&gens, 3));
    }

    #[test]
    fn b_subalgebras_stay_one_sided() {
        assert_eq!(subalgebra_b(3, BSide::B), vec![1, 2, 3]);
        assert_eq!(subalgebra_b(3, BSide::BPrime), vec![2, 3, 4]);
        let n = 3;
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..6 {
            words = words
                .iter()
                .flat_map(|w| subalgebra_b(n, BSide::B).into_iter().map(move |i| [w.clone(), vec![i]].concat()))
                .collect();
            for w in &words {
                let d = stripped(w, n).unwrap();
                assert!(d.edges().iter().all(|e| !e.word.has_open()), "{w:?}");
                assert!(d.interleave().iter().all(|b| !b.word.has_open()), "{w:?}");
                assert!(d.loops().is_empty(), "{w:?}");
            }
        }
    }

    #[test]
    fn type_a_identity_and_loops() {
        let e = Diagram::identity(5);
        assert_eq!(type_a_product(&e, &e).unwrap(), (0, e.clone()));
        let cup = parse_diagram("k=4\nN 2-3 :\nS 2-3 :\nP 1-1' :\nP 4-4' :\n").unwrap();
        assert_eq!(type_a_product(&cup, &cup).unwrap(), (1, cup.clone()));
        let d1 = simple_diagram(1, 2).unwrap();
        assert_eq!(type_a_product(&d1, &cup), Err(AlgebraError::Decorated));
    }

    #[test]
    fn admissibility_examples() {
        for n in 2..=5 {
            for i in 1..=n + 1 {
                assert!(is_admissible(&simple_diagram(i, n).unwrap()).verdict);
            }
        }
        assert!(is_admissible(&stripped(&[1, 2, 1], 2).unwrap()).verdict);
        let looped = Diagram::identity(4).with_loop(CyclicWord::new(Word::empty()));
        assert_eq!(is_admissible(&looped).violated.unwrap().axiom, Axiom::C1);
        let good = stripped(&words::alpha_one_east(2, 2), 2).unwrap();
        assert!(is_admissible(&good).verdict);
        let short = parse_diagram(
            "k=4\nN 1-2 : b\nS 3-4 : o\nP 3-1' : [b|B|B]\nP 4-2' : [O|o]\nseq : (3:b)(4:O)(3:B)(4:o)(3:B)\n",
        )
        .unwrap();
        assert_eq!(is_admissible(&short).violated.unwrap().axiom, Axiom::C5);
    }

    #[test]
    fn factorize_examples() {
        for i in 1..=4 {
            assert_eq!(factorize(&simple_diagram(i, 3).unwrap()).unwrap(), vec![i]);
        }
        let d121 = stripped(&[1, 2, 1], 2).unwrap();
        let w = factorize(&d121).unwrap();
        assert_eq!(eval_word(&w, 2).unwrap(), crate::engine::Element::from_diagram(d121));
        let pumped = stripped(&words::pumped_loops(1), 2).unwrap();
        assert_eq!(pumped.loops().len(), 1);
        let w = factorize(&pumped).unwrap();
        assert_eq!(eval_word(&w, 2).unwrap(), crate::engine::Element::from_diagram(pumped));
        let looped = Diagram::identity(4).with_loop(CyclicWord::new(Word::empty()));
        assert!(matches!(factorize(&looped), Err(AlgebraError::NotAdmissible(_))));
    }

    #[test]
    fn word_families() {
        assert_eq!(words::z1(3), vec![1, 2, 3]);
        assert_eq!(words::z2(3), vec![4, 3, 2]);
        assert_eq!(words::evens(3), vec![2, 4]);
        assert_eq!(words::odds(2), vec![1, 3]);
        assert_eq!(words::pumped_loops(2), vec![3, 1, 2, 3, 1, 2, 1, 3]);
        let s = eval_scaled(&words::single_propagating(3, 2), 3).unwrap();
        assert_eq!((s.two_exp, s.delta_exp), (0, 0));
        assert_eq!(s.diagram.propagating().len(), 1);
        assert!(is_admissible(&s.diagram).verdict);
        for k in 0..4 {
            for w in [words::alpha_one_east(3, k), words::alpha_one_west(3, k)] {
                let s = eval_scaled(&w, 3).unwrap();
                assert_eq!((s.two_exp, s.delta_exp), (0, 0), "{w:?}");
                assert!(is_admissible(&s.diagram).verdict, "{w:?}");
            }
        }
    }

    #[test]
    fn type_a_matchings_are_catalan() {
        let counts: Vec<usize> = (1..=5).map(|k| all_matchings(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42]);
    }
}
