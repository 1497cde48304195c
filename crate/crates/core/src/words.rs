//! Words over signed alphabets.
//!
//! Ambient words live over `a1..an` (shorthand `a,b,c,...`, inverses `A,B,C,...`
//! or `~a1`). Equation words live over `h1..hr` followed by `x1..xm`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Ambient { n: usize },
    Equation { r: usize, m: usize },
}

impl Alphabet {
    pub fn ambient(n: usize) -> Self {
        assert!(n >= 1, "ambient rank must be positive");
        Alphabet::Ambient { n }
    }

    pub fn equation(r: usize, m: usize) -> Self {
        assert!(m >= 1, "equation alphabets need at least one variable");
        Alphabet::Equation { r, m }
    }

    /// Number of unsigned symbols.
    pub fn size(&self) -> usize {
        match *self {
            Alphabet::Ambient { n } => n,
            Alphabet::Equation { r, m } => r + m,
        }
    }

    /// Variable index of a symbol, if it is a variable.
    pub fn variable(&self, symbol: usize) -> Option<usize> {
        match *self {
            Alphabet::Ambient { .. } => None,
            Alphabet::Equation { r, .. } => symbol.checked_sub(r),
        }
    }

    pub fn num_vars(&self) -> usize {
        match *self {
            Alphabet::Ambient { .. } => 0,
            Alphabet::Equation { m, .. } => m,
        }
    }

    pub fn num_h(&self) -> usize {
        match *self {
            Alphabet::Ambient { .. } => 0,
            Alphabet::Equation { r, .. } => r,
        }
    }
}

/// A signed symbol. `symbol` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(symbol: usize, inverse: bool) -> Self {
        Letter { symbol, inverse }
    }

    pub fn pos(symbol: usize) -> Self {
        Letter::new(symbol, false)
    }

    pub fn neg(symbol: usize) -> Self {
        Letter::new(symbol, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.symbol, !self.inverse)
    }

    /// Dense index `2*symbol + inverse`, used by automata.
    pub fn code(self) -> usize {
        2 * self.symbol + self.inverse as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter::new(code / 2, code % 2 == 1)
    }
}

pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl FreeWord {
    /// Builds the reduced word equal to `letters`.
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        let w = FreeWord::raw(alphabet, letters);
        w.reduce()
    }

    /// Builds a word without reducing it.
    pub fn raw(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        let size = alphabet.size();
        for l in &letters {
            assert!(l.symbol < size, "letter {l:?} outside alphabet {alphabet:?}");
        }
        FreeWord { alphabet, letters }
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        FreeWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        Ok(FreeWord::new(alphabet, parse_letters(alphabet, text)?))
    }

    pub fn parse_raw(alphabet: Alphabet, text: &str) -> Result<Self> {
        Ok(FreeWord::raw(alphabet, parse_letters(alphabet, text)?))
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&a), Some(&b)) => self.letters.len() == 1 || a != b.inv(),
                _ => true,
            }
    }

    pub fn reduce(&self) -> FreeWord {
        FreeWord {
            alphabet: self.alphabet,
            letters: free_reduce(&self.letters),
        }
    }

    /// Returns `(core, conjugator)` with `conjugator * core * conjugator^-1 = self`.
    pub fn cyclic_reduce(&self) -> (FreeWord, FreeWord) {
        let w = free_reduce(&self.letters);
        let mut i = 0;
        while w.len() >= 2 * i + 2 && w[i] == w[w.len() - 1 - i].inv() {
            i += 1;
        }
        let core = w[i..w.len() - i].to_vec();
        let conj = w[..i].to_vec();
        (
            FreeWord::raw(self.alphabet, core),
            FreeWord::raw(self.alphabet, conj),
        )
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            alphabet: self.alphabet,
            letters: invert_letters(&self.letters),
        }
    }

    /// Reduced product.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord::new(self.alphabet, letters)
    }

    /// Reduced power; negative exponents invert.
    pub fn pow(&self, e: i64) -> FreeWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        FreeWord::new(self.alphabet, letters)
    }

    /// Cyclic rotation by `k` letters to the left (no reduction).
    pub fn rotate(&self, k: usize) -> FreeWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        FreeWord::raw(self.alphabet, letters)
    }

    /// Smallest rotation of the cyclic core or of its inverse. Two words get
    /// the same key iff their cyclic reductions agree up to rotation and inversion.
    pub fn cyclic_key(&self) -> Vec<Letter> {
        let (core, _) = self.cyclic_reduce();
        let inv = core.inverse();
        let mut best: Option<Vec<Letter>> = None;
        for w in [&core, &inv] {
            let n = w.len().max(1);
            for k in 0..n {
                let r = w.rotate(k).letters;
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn same_cyclic_class(&self, other: &FreeWord) -> bool {
        self.alphabet == other.alphabet && self.cyclic_key() == other.cyclic_key()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        match self.alphabet {
            Alphabet::Ambient { n } if n <= 26 => {
                for l in &self.letters {
                    let base = if l.inverse { b'A' } else { b'a' };
                    write!(f, "{}", (base + l.symbol as u8) as char)?;
                }
                Ok(())
            }
            _ => {
                for (i, l) in self.letters.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", token(self.alphabet, *l))?;
                }
                Ok(())
            }
        }
    }
}

fn token(alphabet: Alphabet, l: Letter) -> String {
    let sign = if l.inverse { "~" } else { "" };
    match alphabet {
        Alphabet::Ambient { .. } => format!("{sign}a{}", l.symbol + 1),
        Alphabet::Equation { r, m } => {
            if l.symbol < r && r == 1 {
                format!("{sign}h")
            } else if l.symbol < r {
                format!("{sign}h{}", l.symbol + 1)
            } else if m == 1 {
                format!("{sign}x")
            } else {
                format!("{sign}x{}", l.symbol - r + 1)
            }
        }
    }
}

fn parse_err(token: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        token: token.to_string(),
        reason: reason.into(),
    }
}

fn parse_letters(alphabet: Alphabet, text: &str) -> Result<Vec<Letter>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut negate = false;
    let check = |sym: usize, tok: &str| -> Result<usize> {
        if sym < alphabet.size() {
            Ok(sym)
        } else {
            Err(parse_err(tok, "symbol outside the alphabet"))
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '.' || c == '*' {
            if negate {
                return Err(parse_err(&c.to_string(), "dangling ~"));
            }
            i += 1;
            continue;
        }
        if c == '~' {
            negate = !negate;
            i += 1;
            continue;
        }
        let start = i;
        i += 1;
        let mut digits = String::new();
        while i < chars.len() && chars[i].is_ascii_digit() {
            digits.push(chars[i]);
            i += 1;
        }
        let tok: String = chars[start..i].iter().collect();
        let index = |d: &str| -> Result<usize> {
            let v: usize = d.parse().map_err(|_| parse_err(&tok, "bad index"))?;
            if v == 0 {
                Err(parse_err(&tok, "indices start at 1"))
            } else {
                Ok(v - 1)
            }
        };
        let letter = match alphabet {
            Alphabet::Ambient { .. } => {
                if c == '1' && digits.is_empty() {
                    None
                } else if c.is_ascii_lowercase() || c.is_ascii_uppercase() {
                    let lower = c.to_ascii_lowercase();
                    let inverse = c.is_ascii_uppercase();
                    if !digits.is_empty() {
                        if lower != 'a' {
                            return Err(parse_err(&tok, "indexed letters use the prefix a"));
                        }
                        Some(Letter::new(check(index(&digits)?, &tok)?, inverse))
                    } else {
                        let sym = (lower as u8 - b'a') as usize;
                        Some(Letter::new(check(sym, &tok)?, inverse))
                    }
                } else {
                    return Err(parse_err(&tok, "unexpected character"));
                }
            }
            Alphabet::Equation { r, m } => match c {
                '1' if digits.is_empty() => None,
                'h' | 'H' => {
                    let k = match (digits.is_empty(), r) {
                        (true, 1) => 0,
                        (true, _) => return Err(parse_err(&tok, "h needs an index")),
                        (false, _) => index(&digits)?,
                    };
                    if k >= r {
                        return Err(parse_err(&tok, "h index exceeds basis size"));
                    }
                    Some(Letter::new(k, c == 'H'))
                }
                'x' | 'X' => {
                    let k = if digits.is_empty() { 0 } else { index(&digits)? };
                    if k >= m {
                        return Err(parse_err(&tok, "variable index exceeds variable count"));
                    }
                    Some(Letter::new(r + k, c == 'X'))
                }
                _ => return Err(parse_err(&tok, "unexpected character")),
            },
        };
        match letter {
            Some(l) => out.push(if negate { l.inv() } else { l }),
            None if negate => return Err(parse_err(&tok, "cannot invert the identity")),
            None => {}
        }
        negate = false;
    }
    if negate {
        return Err(parse_err("~", "dangling ~"));
    }
    Ok(out)
}

/// An element of H * <x1..xm>, written over `h1..hr, x1..xm`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    word: FreeWord,
}

impl Equation {
    pub fn new(word: FreeWord) -> Self {
        assert!(
            matches!(word.alphabet(), Alphabet::Equation { .. }),
            "equations need an equation alphabet"
        );
        Equation { word: word.reduce() }
    }

    pub fn parse(r: usize, m: usize, text: &str) -> Result<Self> {
        Ok(Equation::new(FreeWord::parse(Alphabet::equation(r, m), text)?))
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    pub fn num_h(&self) -> usize {
        self.word.alphabet().num_h()
    }

    pub fn num_vars(&self) -> usize {
        self.word.alphabet().num_vars()
    }

    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.multi_degree().iter().sum()
    }

    pub fn multi_degree(&self) -> Vec<usize> {
        let alphabet = self.word.alphabet();
        let mut counts = vec![0; alphabet.num_vars()];
        let (core, _) = self.word.cyclic_reduce();
        for l in core.letters() {
            if let Some(v) = alphabet.variable(l.symbol) {
                counts[v] += 1;
            }
        }
        counts
    }

    pub fn inverse(&self) -> Equation {
        Equation {
            word: self.word.inverse(),
        }
    }

    pub fn cyclic_key(&self) -> Vec<Letter> {
        self.word.cyclic_key()
    }

    /// Equal up to cyclic rotation and inversion (after cyclic reduction).
    pub fn equivalent(&self, other: &Equation) -> bool {
        self.word.same_cyclic_class(&other.word)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Substitutes `h_i -> h_basis[i]`, `x_j -> g_values[j]` and reduces.
pub fn evaluate(e: &Equation, h_basis: &[FreeWord], g_values: &[FreeWord]) -> Result<FreeWord> {
    let (r, m) = (e.num_h(), e.num_vars());
    if h_basis.len() != r {
        return Err(Error::Arity {
            what: "H-basis words",
            expected: r,
            got: h_basis.len(),
        });
    }
    if g_values.len() != m {
        return Err(Error::Arity {
            what: "target values",
            expected: m,
            got: g_values.len(),
        });
    }
    let ambient = h_basis
        .iter()
        .chain(g_values)
        .map(|w| w.alphabet())
        .next()
        .unwrap_or(Alphabet::ambient(1));
    let mut letters = Vec::new();
    for l in e.word().letters() {
        let image = if l.symbol < r {
            &h_basis[l.symbol]
        } else {
            &g_values[l.symbol - r]
        };
        assert_eq!(image.alphabet(), ambient, "mixed ambient alphabets");
        if l.inverse {
            letters.extend(invert_letters(image.letters()));
        } else {
            letters.extend_from_slice(image.letters());
        }
    }
    Ok(FreeWord::new(ambient, letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(s: &str) -> FreeWord {
        FreeWord::parse(Alphabet::ambient(2), s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(amb("a b B").to_string(), "a");
        assert!(amb("a A").is_empty());
        assert!(amb("b A a B").is_empty());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let raw = FreeWord::parse_raw(Alphabet::ambient(2), "Aba").unwrap();
        let (core, conj) = raw.cyclic_reduce();
        assert_eq!((core.to_string(), conj.to_string()), ("b".into(), "A".into()));
        let (core, conj) = amb("abA").cyclic_reduce();
        assert_eq!((core.to_string(), conj.to_string()), ("b".into(), "a".into()));
        let (core, conj) = amb("").cyclic_reduce();
        assert!(core.is_empty() && conj.is_empty());
    }

    #[test]
    fn parse_forms() {
        let a3 = Alphabet::ambient(3);
        assert_eq!(
            FreeWord::parse(a3, "a1 ~a2 a3").unwrap(),
            FreeWord::parse(a3, "aBc").unwrap()
        );
        assert!(FreeWord::parse(a3, "d").is_err());
        assert!(FreeWord::parse(a3, "~").is_err());
        assert!(FreeWord::parse(a3, "1").unwrap().is_empty());
        let e = Equation::parse(2, 1, "~x h2 x x ~h1 x ~h1").unwrap();
        assert_eq!(e.to_string(), "~x h2 x x ~h1 x ~h1");
        assert_eq!(Equation::parse(2, 1, "Xh2xxH1xH1").unwrap(), e);
        assert!(Equation::parse(2, 1, "h3").is_err());
        assert!(Equation::parse(2, 1, "x2").is_err());
        let wide = FreeWord::parse(Alphabet::ambient(30), "a27 ~a1").unwrap();
        assert_eq!(wide.to_string(), "a27 ~a1");
    }

    #[test]
    fn degrees() {
        assert_eq!(Equation::parse(2, 1, "~x h2 x x ~h1 x ~h1").unwrap().degree(), 4);
        assert_eq!(Equation::parse(2, 1, "~h2 x h1 x h1 x").unwrap().degree(), 3);
        assert_eq!(Equation::parse(2, 1, "h1 h2").unwrap().degree(), 0);
        // conjugation does not count
        assert_eq!(Equation::parse(1, 1, "x h1 ~x").unwrap().degree(), 0);
        let e = Equation::parse(1, 2, "x1 h1 x2 ~x1 x2").unwrap();
        assert_eq!(e.multi_degree(), vec![2, 2]);
    }

    #[test]
    fn evaluation_examples() {
        let a2 = Alphabet::ambient(2);
        let e = Equation::parse(2, 1, "~x h2 x x ~h1 x ~h1").unwrap();
        let h = vec![amb("ba"), amb("abbA")];
        assert!(evaluate(&e, &h, &[amb("a")]).unwrap().is_empty());
        let e = Equation::parse(2, 1, "~h2 x h1 x h1 x").unwrap();
        let h = vec![amb("b"), amb("ababa")];
        assert!(evaluate(&e, &h, &[amb("a")]).unwrap().is_empty());
        let x = Equation::parse(0, 1, "x").unwrap();
        assert_eq!(evaluate(&x, &[], &[amb("ab")]).unwrap(), amb("ab"));
        assert!(matches!(
            evaluate(&x, &[amb("a")], &[amb("a")]),
            Err(Error::Arity { .. })
        ));
        let _ = a2;
    }

    #[test]
    fn cyclic_keys() {
        let a = Equation::parse(2, 1, "~x h2 x x ~h1 x ~h1").unwrap();
        let b = Equation::parse(2, 1, "x ~h1 ~x h2 x x ~h1").unwrap();
        assert!(a.equivalent(&b));
        assert!(a.equivalent(&a.inverse()));
        assert!(!a.equivalent(&Equation::parse(2, 1, "x h1").unwrap()));
    }
}
