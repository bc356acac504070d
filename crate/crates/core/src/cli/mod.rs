pub mod render;
pub mod suite;
pub mod text;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::algebra::{factorize, is_admissible, AlgebraError};
use crate::coxeter::{theta, CoxeterGraph, GraphKind};
use crate::diagram::Diagram;
use crate::engine::{eval_word, multiply, Element};
use render::Mode;
use suite::SuiteParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "actl", version, about = "Decorated diagram calculus for TL(affine C)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply two diagrams (top first).
    Mul { top: PathBuf, bottom: PathBuf },
    /// Evaluate a word of simple diagrams, e.g. `1,2,1`.
    Eval {
        #[arg(short)]
        n: usize,
        word: String,
    },
    /// Check admissibility; exits 1 and names the axiom when it fails.
    Admissible { file: PathBuf },
    /// Write an admissible diagram as a word of simple diagrams.
    Factorize { file: PathBuf },
    /// List canonical fully commutative words.
    Fc {
        #[arg(short, value_parser = ["A", "B", "Bp", "Ct"])]
        g: String,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Diagram image of the monomial b_w.
    Theta {
        #[arg(short)]
        n: usize,
        word: String,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short = 'L')]
        max_len: Option<usize>,
        #[arg(short = 'H')]
        max_height: Option<usize>,
    },
    /// Draw a diagram.
    Render {
        file: PathBuf,
        #[arg(long, conflicts_with = "ascii")]
        svg: bool,
        #[arg(long)]
        ascii: bool,
    },
}

pub fn parse_word(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad letter {t:?} in word {s:?}")))
        .collect()
}

pub fn word_to_string(w: &[usize]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn read_diagram(path: &PathBuf) -> Result<Diagram, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let text = render::embedded_text(&text).unwrap_or(text);
    text::parse_diagram(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_element(out: &mut dyn Write, e: &Element) -> std::io::Result<()> {
    let s = e.to_string();
    if s.ends_with('\n') {
        write!(out, "{s}")
    } else {
        writeln!(out, "{s}")
    }
}

enum Outcome {
    Ok,
    Failed,
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<Outcome, String> {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Mul { top, bottom } => {
            let (a, b) = (read_diagram(&top)?, read_diagram(&bottom)?);
            let p = multiply(&Element::from_diagram(a), &Element::from_diagram(b)).map_err(|e| e.to_string())?;
            print_element(out, &p).map_err(io)?;
        }
        Command::Eval { n, word } => {
            let w = parse_word(&word)?;
            let e = eval_word(&w, n).map_err(|e| e.to_string())?;
            print_element(out, &e).map_err(io)?;
        }
        Command::Theta { n, word } => {
            let w = parse_word(&word)?;
            CoxeterGraph::new(GraphKind::Ct, n).check(&w).map_err(|e| e.to_string())?;
            let e = theta(&w, n).map_err(|e| e.to_string())?;
            print_element(out, &e).map_err(io)?;
        }
        Command::Admissible { file } => {
            let d = read_diagram(&file)?;
            match is_admissible(&d).violated {
                None => writeln!(out, "admissible").map_err(io)?,
                Some(v) => {
                    writeln!(out, "not admissible: {}: {}", v.axiom, v.detail).map_err(io)?;
                    return Ok(Outcome::Failed);
                }
            }
        }
        Command::Factorize { file } => {
            let d = read_diagram(&file)?;
            match factorize(&d) {
                Ok(w) => writeln!(out, "{}", word_to_string(&w)).map_err(io)?,
                Err(e @ (AlgebraError::NotAdmissible(_) | AlgebraError::SearchExhausted(_))) => {
                    writeln!(out, "{e}").map_err(io)?;
                    return Ok(Outcome::Failed);
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        Command::Fc { g, n, max_len } => {
            let kind: GraphKind = g.parse().map_err(|e: crate::coxeter::CoxeterError| e.to_string())?;
            if kind == GraphKind::Ct && max_len.is_none() {
                return Err("W(Ct) has infinitely many FC elements; pass --max-len".into());
            }
            if n < 1 || (kind != GraphKind::A && n < 2) {
                return Err(format!("rank {n} too small for {g}"));
            }
            let words = CoxeterGraph::new(kind, n).enumerate_fc(max_len);
            writeln!(out, "# count={}", words.len()).map_err(io)?;
            for w in words {
                writeln!(out, "{}", word_to_string(&w)).map_err(io)?;
            }
        }
        Command::Verify { suite, n, max_len, max_height } => {
            let r = suite::run_suite(&suite, &SuiteParams { n, max_len, max_height }).map_err(|e| e.to_string())?;
            write!(out, "{r}").map_err(io)?;
            if !r.passed() {
                return Ok(Outcome::Failed);
            }
        }
        Command::Render { file, svg, ascii: _ } => {
            let d = read_diagram(&file)?;
            let mode = if svg { Mode::Svg } else { Mode::Ascii };
            write!(out, "{}", render::render(&d, mode)).map_err(io)?;
        }
    }
    Ok(Outcome::Ok)
}

/// Parse arguments, run one verb and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Failed) => EXIT_FAILED,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}
