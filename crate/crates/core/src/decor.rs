//! The decoration algebra: words over the four decoration symbols, their
//! reduction to alternating basis words, and the cyclic variant used for
//! loop edges.
//!
//! Closed symbols (`•`, `▲`) and open symbols (`∘`, `▽`) never interact:
//! every rewrite rule acts on two adjacent symbols of the same type.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A single decoration. The derived order `• < ▲ < ∘ < ▽` is the order used
/// for canonical cyclic words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decoration {
    /// `•`, written `b`.
    Dot,
    /// `▲`, written `B`.
    Triangle,
    /// `∘`, written `o`.
    OpenDot,
    /// `▽`, written `O`.
    OpenTriangle,
}

impl Decoration {
    pub const ALL: [Decoration; 4] = [
        Decoration::Dot,
        Decoration::Triangle,
        Decoration::OpenDot,
        Decoration::OpenTriangle,
    ];

    pub fn is_closed(self) -> bool {
        matches!(self, Decoration::Dot | Decoration::Triangle)
    }

    pub fn is_open(self) -> bool {
        !self.is_closed()
    }

    pub fn same_type(self, other: Decoration) -> bool {
        self.is_closed() == other.is_closed()
    }

    /// True for `•` and `∘`.
    pub fn is_dot(self) -> bool {
        matches!(self, Decoration::Dot | Decoration::OpenDot)
    }

    pub fn to_char(self) -> char {
        match self {
            Decoration::Dot => 'b',
            Decoration::Triangle => 'B',
            Decoration::OpenDot => 'o',
            Decoration::OpenTriangle => 'O',
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Decoration::Dot => '•',
            Decoration::Triangle => '▲',
            Decoration::OpenDot => '∘',
            Decoration::OpenTriangle => '▽',
        }
    }

    pub fn from_char(c: char) -> Option<Decoration> {
        match c {
            'b' | '•' => Some(Decoration::Dot),
            'B' | '▲' => Some(Decoration::Triangle),
            'o' | '∘' => Some(Decoration::OpenDot),
            'O' | '▽' => Some(Decoration::OpenTriangle),
            _ => None,
        }
    }

    /// Product of two same-type symbols: `(power of two, result)`.
    ///
    /// `•• = ▲`, `•▲ = ▲• = 2•`, `▲▲ = 2▲`, and the open analogues.
    fn combine(self, other: Decoration) -> (u32, Decoration) {
        debug_assert!(self.same_type(other));
        let (dot, tri) = if self.is_closed() {
            (Decoration::Dot, Decoration::Triangle)
        } else {
            (Decoration::OpenDot, Decoration::OpenTriangle)
        };
        match (self.is_dot(), other.is_dot()) {
            (true, true) => (0, tri),
            (true, false) | (false, true) => (1, dot),
            (false, false) => (1, tri),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid decoration symbol {0:?} (expected one of b, B, o, O)")]
pub struct ParseWordError(pub char);

/// A finite sequence of decorations, read in edge orientation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Decoration>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(d: Decoration) -> Word {
        Word(vec![d])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Decoration] {
        &self.0
    }

    pub fn first(&self) -> Option<Decoration> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Decoration> {
        self.0.last().copied()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push_word(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn has_closed(&self) -> bool {
        self.0.iter().any(|d| d.is_closed())
    }

    pub fn has_open(&self) -> bool {
        self.0.iter().any(|d| d.is_open())
    }

    pub fn count(&self, d: Decoration) -> usize {
        self.0.iter().filter(|&&x| x == d).count()
    }

    /// Normal form together with the power of two split off during reduction.
    pub fn reduce(&self) -> ScaledWord {
        reduce_word(self)
    }

    pub fn is_basis(&self) -> bool {
        is_basis_word(self)
    }

    pub fn to_glyphs(&self) -> String {
        self.0.iter().map(|d| d.glyph()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Word, ParseWordError> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Decoration::from_char(c).ok_or(ParseWordError(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl From<Vec<Decoration>> for Word {
    fn from(v: Vec<Decoration>) -> Word {
        Word(v)
    }
}

/// `2^two_exp · word`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScaledWord {
    pub two_exp: u32,
    pub word: Word,
}

/// Reduce a word to its basis form.
///
/// Within each maximal run of same-type symbols the table
/// `•• → ▲, •▲ → 2•, ▲• → 2•, ▲▲ → 2▲` (and the open analogues) is applied
/// left to right with a stack, which visits every run exactly once.
pub fn reduce_word(w: &Word) -> ScaledWord {
    let mut out: Vec<Decoration> = Vec::with_capacity(w.len());
    let mut two_exp = 0;
    for &d in &w.0 {
        let mut cur = d;
        while let Some(&top) = out.last() {
            if !top.same_type(cur) {
                break;
            }
            out.pop();
            let (e, c) = top.combine(cur);
            two_exp += e;
            cur = c;
        }
        out.push(cur);
    }
    ScaledWord {
        two_exp,
        word: Word(out),
    }
}

pub fn is_basis_word(w: &Word) -> bool {
    w.0.windows(2).all(|p| !p[0].same_type(p[1]))
}

/// A loop word, identified up to rotation and reversal.
///
/// The stored word is always the canonical representative: the
/// lexicographically least word over all rotations of the word and of its
/// reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(w: Word) -> CyclicWord {
        CyclicWord(canonical_rotation(&w))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn canonical_rotation(w: &Word) -> Word {
    let n = w.len();
    if n == 0 {
        return Word::empty();
    }
    let rev = w.reversed();
    let mut best: Option<Vec<Decoration>> = None;
    for base in [&w.0, &rev.0] {
        for r in 0..n {
            let cand: Vec<Decoration> = base[r..].iter().chain(&base[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    Word(best.unwrap_or_default())
}

/// Outcome of reducing a loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LoopReduction {
    /// The loop is deleted and the diagram multiplied by `2^two_exp · δ`.
    Removable { two_exp: u32 },
    /// The loop survives as a basis loop, with `2^two_exp` split off.
    Irreducible { two_exp: u32, word: CyclicWord },
}

impl LoopReduction {
    pub fn two_exp(&self) -> u32 {
        match self {
            LoopReduction::Removable { two_exp } | LoopReduction::Irreducible { two_exp, .. } => {
                *two_exp
            }
        }
    }
}

/// Reduce a loop word.
///
/// After linear reduction the word alternates types, so the only remaining
/// redex is the wrap-around pair (first, last), which exists exactly when the
/// length is odd and at least three. Loops whose reduced word is empty, `▲`
/// or `▽` evaluate to `δ`.
pub fn reduce_cyclic(w: &Word) -> LoopReduction {
    let ScaledWord {
        mut two_exp,
        word: Word(mut v),
    } = reduce_word(w);
    if v.len() >= 2 && v[0].same_type(v[v.len() - 1]) {
        let last = v.pop().expect("len >= 2");
        let (e, c) = last.combine(v[0]);
        two_exp += e;
        v[0] = c;
    }
    let removable = match v.as_slice() {
        [] => true,
        [d] => !d.is_dot(),
        _ => false,
    };
    if removable {
        LoopReduction::Removable { two_exp }
    } else {
        LoopReduction::Irreducible {
            two_exp,
            word: CyclicWord::new(Word(v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sw(e: u32, s: &str) -> ScaledWord {
        ScaledWord {
            two_exp: e,
            word: w(s),
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_word(&w("bb")), sw(0, "B"));
        assert_eq!(reduce_word(&w("")), sw(0, ""));
        assert_eq!(reduce_word(&w("bbb")), sw(1, "b"));
        assert_eq!(reduce_word(&w("BbB")), sw(2, "b"));
    }

    #[test]
    fn worked_example_of_width_seven() {
        // • • ∘ • ∘ ∘ •  =  ▲ ∘ • ▽ •
        assert_eq!(reduce_word(&w("bboboob")), sw(0, "BobOb"));
        assert_eq!(reduce_word(&w("bboboob")).word.to_glyphs(), "▲∘•▽•");
    }

    #[test]
    fn basis_words() {
        assert!(is_basis_word(&w("BobOb")));
        assert!(is_basis_word(&w("")));
        assert!(!is_basis_word(&w("bb")));
        assert!(!is_basis_word(&w("oO")));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(reduce_cyclic(&w("")), LoopReduction::Removable { two_exp: 0 });
        assert_eq!(
            reduce_cyclic(&w("BO")),
            LoopReduction::Irreducible {
                two_exp: 0,
                word: CyclicWord::new(w("BO"))
            }
        );
        assert_eq!(reduce_cyclic(&w("bb")), LoopReduction::Removable { two_exp: 0 });
        assert_eq!(
            reduce_cyclic(&w("bB")),
            LoopReduction::Irreducible {
                two_exp: 1,
                word: CyclicWord::new(w("b"))
            }
        );
        assert_eq!(reduce_cyclic(&w("O")), LoopReduction::Removable { two_exp: 0 });
        assert_eq!(reduce_cyclic(&w("oo")), LoopReduction::Removable { two_exp: 0 });
        // wrap-around redex: •∘• ~ ∘•• = ∘▲
        assert_eq!(
            reduce_cyclic(&w("bob")),
            LoopReduction::Irreducible {
                two_exp: 0,
                word: CyclicWord::new(w("Bo"))
            }
        );
    }

    #[test]
    fn canonical_rotation_is_least() {
        assert_eq!(CyclicWord::new(w("OB")).word(), &w("BO"));
        assert_eq!(CyclicWord::new(w("ObB")).word(), &w("bBO"));
        assert_eq!(CyclicWord::new(w("")).word(), &w(""));
    }

    #[test]
    fn parse_rejects_unknown() {
        assert_eq!("bx".parse::<Word>(), Err(ParseWordError('x')));
        assert_eq!("•▲∘▽".parse::<Word>(), Ok(w("bBoO")));
    }
}
