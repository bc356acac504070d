//! Named verification suites behind `actl verify`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::algebra::{check_generator_relations, is_admissible, simple_diagram};
use crate::coxeter::{check_tl_presentation, CoxeterGraph, GraphKind};
use crate::diagram::{enumerate_lr, Diagram, RawDiagram};
use crate::engine::{concat, eval_scaled, is_confluent, stack_raw};

pub const SUITES: [&str; 5] = ["relations", "closure", "basis-equivalence", "confluence", "fc-injectivity"];

#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub max_len: Option<usize>,
    pub max_height: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "suite={} status={} checked={}", self.name, status, self.checked)?;
        for c in &self.counterexamples {
            writeln!(f, "counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?} (expected one of: {})", SUITES.join(", "))]
    Unknown(String),
    #[error("{0}")]
    Params(String),
}

/// Every scalar-stripped diagram reachable by a word of length at most
/// `max_len`, with one shortest word each.
pub fn reachable(n: usize, max_len: usize) -> BTreeMap<Diagram, Vec<usize>> {
    let gens: Vec<Diagram> = (1..=n + 1).map(|i| simple_diagram(i, n).expect("n >= 2")).collect();
    let mut seen = BTreeMap::new();
    seen.insert(Diagram::identity(n + 2), Vec::new());
    let mut frontier = vec![(Diagram::identity(n + 2), Vec::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (d, w) in &frontier {
            for (i, g) in gens.iter().enumerate() {
                let s = concat(d, g).expect("same box");
                if !seen.contains_key(&s.diagram) {
                    let mut w2: Vec<usize> = w.clone();
                    w2.push(i + 1);
                    seen.insert(s.diagram.clone(), w2.clone());
                    next.push((s.diagram, w2));
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Height bound up to which words of length `max_len` reach every
/// admissible diagram, for the ranks where it has been measured.
pub fn basis_height_bound(n: usize, max_len: usize) -> Option<usize> {
    match n {
        2 => Some(max_len.saturating_sub(1) / 2),
        3 => Some(max_len.saturating_sub(2) / 3),
        _ => None,
    }
}

fn word_text(w: &[usize]) -> String {
    let parts: Vec<String> = w.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn need_rank(n: usize) -> Result<(), SuiteError> {
    if n < 2 {
        return Err(SuiteError::Params(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

pub fn relations(ns: impl IntoIterator<Item = usize>) -> SuiteReport {
    let mut r = SuiteReport { name: "relations".into(), checked: 0, counterexamples: Vec::new() };
    for n in ns {
        r.checked += 1;
        if !check_generator_relations(n) {
            r.counterexamples.push(format!("n={n} generator relations"));
        }
        for m in [2, 3, 4] {
            r.checked += 1;
            if !check_tl_presentation(n, m) {
                r.counterexamples.push(format!("n={n} m={m} presentation"));
            }
        }
    }
    r
}

pub fn closure(n: usize, max_len: usize) -> SuiteReport {
    let mut r = SuiteReport { name: "closure".into(), checked: 0, counterexamples: Vec::new() };
    let gens: Vec<Diagram> = (1..=n + 1).map(|i| simple_diagram(i, n).expect("n >= 2")).collect();
    for (d, w) in reachable(n, max_len) {
        for (i, g) in gens.iter().enumerate() {
            r.checked += 1;
            let s = concat(g, &d).expect("same box");
            if let Some(v) = is_admissible(&s.diagram).violated {
                r.counterexamples.push(format!("n={n} d_{} * {}: {} {}", i + 1, word_text(&w), v.axiom, v.detail));
            }
        }
    }
    r
}

pub fn basis_equivalence(n: usize, max_len: usize, max_height: usize) -> SuiteReport {
    let mut r = SuiteReport { name: "basis-equivalence".into(), checked: 0, counterexamples: Vec::new() };
    let generated = reachable(n, max_len);
    for (d, w) in &generated {
        r.checked += 1;
        if let Some(v) = is_admissible(d).violated {
            r.counterexamples.push(format!("n={n} {} generated but rejected: {}", word_text(w), v.axiom));
        }
    }
    let admissible: BTreeSet<Diagram> =
        enumerate_lr(n + 2, max_height).into_iter().filter(|d| is_admissible(d).verdict).collect();
    for d in &admissible {
        r.checked += 1;
        if !generated.contains_key(d) {
            r.counterexamples.push(format!("n={n} admissible of height {} not reached: {:?}", d.height(), crate::cli::text::serialize(d)));
        }
    }
    r
}

/// Raw products `a · b` of height at most `max_height`, for every pair of
/// diagrams reachable by words of length at most `max_len`.
pub fn confluence_corpus(n: usize, max_len: usize, max_height: usize) -> Vec<(Vec<usize>, RawDiagram)> {
    let reached: Vec<(Diagram, Vec<usize>)> = reachable(n, max_len).into_iter().collect();
    let mut out = Vec::new();
    for (a, wa) in &reached {
        for (b, wb) in &reached {
            let raw = stack_raw(a, b).expect("same box");
            if raw.height() <= max_height {
                out.push(([wa.as_slice(), wb.as_slice()].concat(), raw));
            }
        }
    }
    out
}

pub fn confluence(ns: impl IntoIterator<Item = usize>, max_len: usize, max_height: usize) -> SuiteReport {
    let mut r = SuiteReport { name: "confluence".into(), checked: 0, counterexamples: Vec::new() };
    for n in ns {
        for (w, raw) in confluence_corpus(n, max_len, max_height) {
            r.checked += 1;
            if !is_confluent(&raw) {
                r.counterexamples.push(format!("n={n} {}", word_text(&w)));
            }
        }
    }
    r
}

pub fn fc_injectivity(ns: impl IntoIterator<Item = usize>, max_len: usize) -> SuiteReport {
    let mut r = SuiteReport { name: "fc-injectivity".into(), checked: 0, counterexamples: Vec::new() };
    for n in ns {
        let mut images: HashMap<Diagram, Vec<usize>> = HashMap::new();
        for w in CoxeterGraph::new(GraphKind::Ct, n).enumerate_fc(Some(max_len)) {
            r.checked += 1;
            let d = eval_scaled(&w, n).expect("letters in range").diagram;
            if let Some(prev) = images.get(&d) {
                r.counterexamples.push(format!("n={n} {} and {} share an image", word_text(prev), word_text(&w)));
            } else {
                images.insert(d, w);
            }
        }
    }
    r
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<SuiteReport, SuiteError> {
    match name {
        "relations" => {
            let ns: Vec<usize> = match p.n {
                Some(n) => {
                    need_rank(n)?;
                    vec![n]
                }
                None => (2..=5).collect(),
            };
            Ok(relations(ns))
        }
        "closure" => {
            let n = p.n.unwrap_or(3);
            need_rank(n)?;
            Ok(closure(n, p.max_len.unwrap_or(8)))
        }
        "basis-equivalence" => {
            let n = p.n.unwrap_or(2);
            need_rank(n)?;
            let len = p.max_len.unwrap_or(10);
            let h = match p.max_height.or_else(|| basis_height_bound(n, len)) {
                Some(h) => h,
                None => return Err(SuiteError::Params(format!("no measured height bound for n={n}; pass -H"))),
            };
            Ok(basis_equivalence(n, len, h))
        }
        "confluence" => {
            let ns: Vec<usize> = match p.n {
                Some(n) => {
                    need_rank(n)?;
                    vec![n]
                }
                None => vec![2, 3],
            };
            Ok(confluence(ns, p.max_len.unwrap_or(8), p.max_height.unwrap_or(8)))
        }
        "fc-injectivity" => {
            let ns: Vec<usize> = match p.n {
                Some(n) => {
                    need_rank(n)?;
                    vec![n]
                }
                None => vec![2, 3],
            };
            Ok(fc_injectivity(ns, p.max_len.unwrap_or(10)))
        }
        other => Err(SuiteError::Unknown(other.to_string())),
    }
}
