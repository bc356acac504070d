use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::bond;
use crate::coeff::Coefficient;
use crate::engine::{eval_word, Element, EngineError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("letter {0} out of range 1..={1}")]
    LetterOutOfRange(usize, usize),
    #[error("unknown graph type {0:?}")]
    UnknownGraph(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    A,
    B,
    BPrime,
    Ct,
}

impl FromStr for GraphKind {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<GraphKind, CoxeterError> {
        match s {
            "A" => Ok(GraphKind::A),
            "B" => Ok(GraphKind::B),
            "B'" | "Bp" => Ok(GraphKind::BPrime),
            "Ct" | "C" => Ok(GraphKind::Ct),
            _ => Err(CoxeterError::UnknownGraph(s.to_string())),
        }
    }
}

/// `A_n` on `s_1..s_n`; `B_n`, `B'_n` and `C̃_n` as subgraphs of the affine
/// graph on `s_1..s_{n+1}` (`B_n` drops `s_{n+1}`, `B'_n` drops `s_1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    pub kind: GraphKind,
    pub n: usize,
}

impl CoxeterGraph {
    pub fn new(kind: GraphKind, n: usize) -> CoxeterGraph {
        CoxeterGraph { kind, n }
    }

    pub fn generators(&self) -> Vec<usize> {
        match self.kind {
            GraphKind::A | GraphKind::B => (1..=self.n).collect(),
            GraphKind::BPrime => (2..=self.n + 1).collect(),
            GraphKind::Ct => (1..=self.n + 1).collect(),
        }
    }

    pub fn contains(&self, s: usize) -> bool {
        match self.kind {
            GraphKind::A | GraphKind::B => (1..=self.n).contains(&s),
            GraphKind::BPrime => (2..=self.n + 1).contains(&s),
            GraphKind::Ct => (1..=self.n + 1).contains(&s),
        }
    }

    pub fn m(&self, s: usize, t: usize) -> usize {
        match self.kind {
            GraphKind::A => {
                if s == t {
                    1
                } else if s.abs_diff(t) == 1 {
                    3
                } else {
                    2
                }
            }
            _ => bond(s, t, self.n),
        }
    }

    pub fn check(&self, w: &[usize]) -> Result<(), CoxeterError> {
        let top = match self.kind {
            GraphKind::A | GraphKind::B => self.n,
            _ => self.n + 1,
        };
        match w.iter().find(|&&s| !self.contains(s)) {
            Some(&s) => Err(CoxeterError::LetterOutOfRange(s, top)),
            None => Ok(()),
        }
    }

    fn commute(&self, s: usize, t: usize) -> bool {
        s != t && self.m(s, t) == 2
    }

    /// Lexicographically least word in the commutation class of `w`.
    pub fn canonical(&self, w: &[usize]) -> Vec<usize> {
        let mut rest = w.to_vec();
        let mut out = Vec::with_capacity(w.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                if rest[..i].iter().all(|&u| self.commute(u, rest[i]))
                    && best.is_none_or(|b| rest[i] < rest[b])
                {
                    best = Some(i);
                }
            }
            let i = best.expect("first letter is always movable");
            out.push(rest.remove(i));
        }
        out
    }

    /// Every word reachable from `w` by swapping adjacent commuting letters.
    pub fn commutation_class(&self, w: &[usize]) -> BTreeSet<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(u) = queue.pop_front() {
            for i in 0..u.len().saturating_sub(1) {
                if self.commute(u[i], u[i + 1]) {
                    let mut v = u.clone();
                    v.swap(i, i + 1);
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }

    fn has_forbidden_factor(&self, w: &[usize]) -> bool {
        for i in 0..w.len() {
            if i + 1 < w.len() && w[i] == w[i + 1] {
                return true;
            }
            if i + 1 >= w.len() {
                continue;
            }
            let (s, t) = (w[i], w[i + 1]);
            let m = self.m(s, t);
            if m < 3 || i + m > w.len() {
                continue;
            }
            if (0..m).all(|j| w[i + j] == if j % 2 == 0 { s } else { t }) {
                return true;
            }
        }
        false
    }

    /// No word in the commutation class contains `ss` or an alternating
    /// factor `sts…` of length `m(s,t) ≥ 3`.
    pub fn is_fully_commutative(&self, w: &[usize]) -> Result<bool, CoxeterError> {
        self.check(w)?;
        Ok(!self.commutation_class(w).iter().any(|u| self.has_forbidden_factor(u)))
    }

    /// Canonical representatives of all FC elements of length at most
    /// `max_len` (all of them when `None`; only finite for A and B).
    pub fn enumerate_fc(&self, max_len: Option<usize>) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut all = vec![Vec::new()];
        let mut level = vec![Vec::new()];
        let mut len = 0;
        while !level.is_empty() && max_len.is_none_or(|m| len < m) {
            let mut next = BTreeSet::new();
            for w in &level {
                for &s in &gens {
                    let mut u = w.clone();
                    u.push(s);
                    let u = self.canonical(&u);
                    if !next.contains(&u) && self.is_fully_commutative(&u).expect("in range") {
                        next.insert(u);
                    }
                }
            }
            level = next.into_iter().collect();
            all.extend(level.iter().cloned());
            len += 1;
        }
        all
    }
}

pub fn is_fully_commutative(w: &[usize], g: CoxeterGraph) -> Result<bool, CoxeterError> {
    g.is_fully_commutative(w)
}

pub fn enumerate_fc(g: CoxeterGraph, max_len: Option<usize>) -> Vec<Vec<usize>> {
    g.enumerate_fc(max_len)
}

/// The diagram image of the monomial `b_w` in `TL(C̃_n)`.
pub fn theta(w: &[usize], n: usize) -> Result<Element, EngineError> {
    eval_word(w, n)
}

/// Integer polynomial in `x`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chebyshev(pub Vec<BigInt>);

impl Chebyshev {
    pub fn times_x(&self) -> Chebyshev {
        let mut c = vec![BigInt::zero()];
        c.extend(self.0.iter().cloned());
        Chebyshev(c)
    }
}

impl fmt::Display for Chebyshev {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c < &BigInt::zero() { -c } else { c.clone() };
            if first {
                if c < &BigInt::zero() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < &BigInt::zero() { "-" } else { "+" })?;
            }
            first = false;
            match (p, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{p}")?,
                (_, false) => write!(f, "{mag}*x^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn chebyshev(k: usize) -> Chebyshev {
    let mut prev = Chebyshev(vec![BigInt::one()]);
    if k == 0 {
        return prev;
    }
    let mut cur = prev.times_x();
    for _ in 1..k {
        let mut next = cur.times_x();
        for (i, c) in prev.0.iter().enumerate() {
            next.0[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `(x P_{m-1})^{s,t}_b`: `x^j` becomes the alternating product of `j`
/// factors starting with `b_s`, evaluated under θ.
pub fn relation_element(s: usize, t: usize, m: usize, n: usize) -> Result<Element, EngineError> {
    let poly = chebyshev(m - 1).times_x();
    let mut out = Element::zero();
    for (j, c) in poly.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w: Vec<usize> = (0..j).map(|i| if i % 2 == 0 { s } else { t }).collect();
        out = out.add(&theta(&w, n)?.scale(&Coefficient::constant(c.clone())));
    }
    Ok(out)
}

/// Every pair of `C̃_n` generators with bond `m` satisfies its defining
/// relation under θ (`m = 2`: the commutator vanishes).
pub fn check_tl_presentation(n: usize, m: usize) -> bool {
    let gens: Vec<usize> = (1..=n + 1).collect();
    let mut seen = HashSet::new();
    for &s in &gens {
        for &t in &gens {
            if s == t || bond(s, t, n) != m || !seen.insert((s, t)) {
                continue;
            }
            let rel = if m == 2 {
                match (theta(&[s, t], n), theta(&[t, s], n)) {
                    (Ok(a), Ok(b)) => a.sub(&b),
                    _ => return false,
                }
            } else {
                match relation_element(s, t, m, n) {
                    Ok(e) => e,
                    Err(_) => return false,
                }
            };
            if !rel.is_zero() {
                return false;
            }
        }
    }
    true
}
