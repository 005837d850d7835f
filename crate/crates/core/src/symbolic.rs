//! Eventually periodic words over the alphabet `{0, .., m-1}`.

use std::fmt;

use crate::error::{Error, Result};

/// The infinite word `prefix cycle cycle cycle ...`, kept in canonical form:
/// the cycle is primitive and the prefix is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicWord {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

/// Smallest period of a nonempty cycle.
fn primitive_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| cycle[i] == cycle[i - p]) {
            return cycle[..p].to_vec();
        }
    }
    cycle.to_vec()
}

impl SymbolicWord {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<SymbolicWord> {
        if cycle.is_empty() {
            return Err(Error::InvalidWord("empty cycle".into()));
        }
        let mut prefix = prefix;
        let mut cycle = primitive_cycle(&cycle);
        while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
            if p != c {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        Ok(SymbolicWord { prefix, cycle })
    }

    /// The word `prefix a a a ...`.
    pub fn terminating(prefix: Vec<usize>, a: usize) -> SymbolicWord {
        SymbolicWord::new(prefix, vec![a]).expect("nonempty cycle")
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// Constant tail, i.e. the coding of a point that lands on a vertex.
    pub fn is_terminating(&self) -> bool {
        self.cycle.len() == 1
    }

    pub fn letter(&self, t: usize) -> usize {
        if t < self.prefix.len() {
            self.prefix[t]
        } else {
            self.cycle[(t - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// First `n` letters.
    pub fn take(&self, n: usize) -> Vec<usize> {
        (0..n).map(|t| self.letter(t)).collect()
    }

    /// The word with its first letter removed.
    pub fn shift(&self) -> SymbolicWord {
        if self.prefix.is_empty() {
            let mut c = self.cycle.clone();
            c.rotate_left(1);
            SymbolicWord { prefix: Vec::new(), cycle: c }
        } else {
            SymbolicWord { prefix: self.prefix[1..].to_vec(), cycle: self.cycle.clone() }
        }
    }

    /// Same prefix, reversed cycle.
    pub fn conjugate(&self) -> SymbolicWord {
        let mut c = self.cycle.clone();
        c.reverse();
        SymbolicWord::new(self.prefix.clone(), c).expect("nonempty cycle")
    }

    pub fn max_letter(&self) -> usize {
        self.prefix.iter().chain(self.cycle.iter()).copied().max().unwrap_or(0)
    }

    /// Realizability as a coding sequence for a partition with `m` intervals.
    pub fn is_admissible(&self, m: usize) -> bool {
        is_admissible(self, m)
    }

    /// Parses `prefix:cycle`. Letters are single digits, or comma-separated
    /// integers when either part contains a comma.
    pub fn parse(s: &str) -> Result<SymbolicWord> {
        let (p, c) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidWord(format!("expected prefix:cycle, got '{s}'")))?;
        let comma = s.contains(',');
        let letters = |part: &str| -> Result<Vec<usize>> {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            if comma {
                part.split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidWord(format!("bad letter '{x}'"))))
                    .collect()
            } else {
                part.chars()
                    .map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::InvalidWord(format!("bad letter '{ch}'"))))
                    .collect()
            }
        };
        SymbolicWord::new(letters(p)?, letters(c)?)
    }

    pub fn prefix_string(&self) -> String {
        letters_to_string(&self.prefix, self.max_letter() >= 10)
    }

    pub fn cycle_string(&self) -> String {
        letters_to_string(&self.cycle, self.max_letter() >= 10)
    }
}

/// Digits run together, or comma-separated when `wide`.
pub fn letters_to_string(letters: &[usize], wide: bool) -> String {
    let parts: Vec<String> = letters.iter().map(|a| a.to_string()).collect();
    parts.join(if wide { "," } else { "" })
}

impl fmt::Display for SymbolicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.prefix_string(), self.cycle_string())
    }
}

/// Checks the two realizability conditions: repeated adjacent letters only in
/// a constant tail, and no tail of the form `(a a+1)(a a+1)...` or `(a-1) a a a ...`.
pub fn is_admissible(w: &SymbolicWord, m: usize) -> bool {
    if m < 3 || w.max_letter() >= m {
        return false;
    }
    let constant_tail = w.cycle.len() == 1;
    // Adjacent pairs inside prefix, across the boundary, and around the cycle.
    let full: Vec<usize> = w.prefix.iter().chain(w.cycle.iter()).copied().collect();
    for pair in full.windows(2) {
        if pair[0] == pair[1] {
            return false;
        }
    }
    if !constant_tail && w.cycle.first() == w.cycle.last() {
        return false;
    }
    let next = |a: usize| (a + 1) % m;
    if w.cycle.len() == 2 {
        let (x, y) = (w.cycle[0], w.cycle[1]);
        if y == next(x) || x == next(y) {
            return false;
        }
    }
    if constant_tail {
        let a = w.cycle[0];
        if let Some(&b) = w.prefix.last() {
            if next(b) == a {
                return false;
            }
        }
    }
    true
}
