//! Normal-form arithmetic in BS(1,n) = ⟨a, t | t a t⁻¹ = aⁿ⟩.
//!
//! Every element is stored as the triple `(u, v, w)` standing for
//! `t^-u a^v t^w` with `u, w ≥ 0` and `n | v ⇒ u·w = 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("relator exponent must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("({u}, {v}, {w}) is not a normal form for n = {n}: n divides v but u·w ≠ 0")]
    NotNormalForm { u: u64, v: BigInt, w: u64, n: u32 },
    #[error("cannot parse word: {0}")]
    ParseWord(String),
    #[error("node budget of {budget} states exhausted after completing radius {completed_radius}")]
    BudgetExceeded {
        budget: usize,
        completed_radius: usize,
        sphere_sizes: Vec<u64>,
    },
}

/// The relator exponent `n` of BS(1,n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    n: u32,
}

impl GroupParams {
    pub fn new(n: u32) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidBase(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `⌊n/2⌋`, the largest balanced digit.
    pub fn alpha(&self) -> i64 {
        i64::from(self.n / 2)
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    AInv,
    T,
    TInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::T, Letter::TInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }

    /// Single-character form: lowercase for generators, uppercase for inverses.
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::T => 't',
            Letter::TInv => 'T',
        }
    }

    fn base_and_sign(self) -> (char, i64) {
        match self {
            Letter::A => ('a', 1),
            Letter::AInv => ('a', -1),
            Letter::T => ('t', 1),
            Letter::TInv => ('t', -1),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A => f.write_str("a"),
            Letter::AInv => f.write_str("a^-1"),
            Letter::T => f.write_str("t"),
            Letter::TInv => f.write_str("t^-1"),
        }
    }
}

impl FromStr for Letter {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "a" => Ok(Letter::A),
            "a^-1" | "a⁻¹" | "A" => Ok(Letter::AInv),
            "t" => Ok(Letter::T),
            "t^-1" | "t⁻¹" | "T" => Ok(Letter::TInv),
            other => Err(GroupError::ParseWord(format!("not a single letter: {other:?}"))),
        }
    }
}

/// A finite word over `{a, a⁻¹, t, t⁻¹}`. No free reduction is performed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Appends `a^e` (or `t^e` when `generator_t`), emitting `|e|` letters.
    pub fn push_power(&mut self, generator_t: bool, e: i64) {
        let letter = match (generator_t, e >= 0) {
            (false, true) => Letter::A,
            (false, false) => Letter::AInv,
            (true, true) => Letter::T,
            (true, false) => Letter::TInv,
        };
        for _ in 0..e.unsigned_abs() {
            self.0.push(letter);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The formal inverse: reversed, each letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Compact form, one character per letter (`a`, `A`, `t`, `T`).
    pub fn to_compact(&self) -> String {
        self.0.iter().map(|l| l.as_char()).collect()
    }

    /// The literal word `t^-u a^v t^w` with `|v|` copies of `a^±1`.
    ///
    /// Only sensible for small `v`; used for round-trip checks.
    pub fn spell(g: &GroupElement) -> Option<Word> {
        let v: i64 = (&g.v).try_into().ok()?;
        let mut word = Word::empty();
        word.push_power(true, -(g.u as i64));
        word.push_power(false, v);
        word.push_power(true, g.w as i64);
        Some(word)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    /// Power notation with runs collapsed, e.g. `a^-1 t a^2 t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let letter = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == letter {
                run += 1;
            }
            let (base, sign) = letter.base_and_sign();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = sign * run as i64;
            if e == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{e}")?;
            }
            i += run;
        }
        Ok(())
    }
}

fn superscript_digit(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c).map(|p| p as u32)
}

impl FromStr for Word {
    type Err = GroupError;

    /// Accepts compact (`atAT`), power (`a^-1 t a^2`) and superscript (`a⁻¹ t a²`) notation.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        let mut word = Word::empty();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '·' || c == '*' {
                i += 1;
                continue;
            }
            let (is_t, inverted) = match c {
                'a' => (false, false),
                'A' => (false, true),
                't' => (true, false),
                'T' => (true, true),
                other => return Err(GroupError::ParseWord(format!("unexpected character {other:?}"))),
            };
            i += 1;
            let mut exponent: i64 = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                exponent = text
                    .parse()
                    .map_err(|_| GroupError::ParseWord(format!("bad exponent {text:?}")))?;
            } else if i < chars.len() && (chars[i] == '⁻' || superscript_digit(chars[i]).is_some()) {
                let negative = chars[i] == '⁻';
                if negative {
                    i += 1;
                }
                let mut value: i64 = 0;
                let mut seen = false;
                while i < chars.len() {
                    match superscript_digit(chars[i]) {
                        Some(d) => {
                            value = value * 10 + i64::from(d);
                            seen = true;
                            i += 1;
                        }
                        None => break,
                    }
                }
                if !seen {
                    return Err(GroupError::ParseWord("dangling superscript minus".into()));
                }
                exponent = if negative { -value } else { value };
            }
            if inverted {
                exponent = -exponent;
            }
            word.push_power(is_t, exponent);
        }
        Ok(word)
    }
}

/// An element `t^-u a^v t^w` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub u: u64,
    pub v: BigInt,
    pub w: u64,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement {
            u: 0,
            v: BigInt::zero(),
            w: 0,
        }
    }

    /// Builds an element, rejecting triples that violate the normal-form condition.
    pub fn new(u: u64, v: impl Into<BigInt>, w: u64, params: GroupParams) -> Result<Self, GroupError> {
        let v = v.into();
        if u > 0 && w > 0 && v.is_multiple_of(&BigInt::from(params.n)) {
            return Err(GroupError::NotNormalForm { u, v, w, n: params.n });
        }
        Ok(GroupElement { u, v, w })
    }

    /// Brings an arbitrary triple into normal form by applying
    /// `t^-u a^(n·v') t^w = t^-(u-1) a^v' t^(w-1)`.
    pub fn normalized(mut u: u64, mut v: BigInt, mut w: u64, params: GroupParams) -> Self {
        if v.is_zero() {
            let m = u.min(w);
            return GroupElement { u: u - m, v, w: w - m };
        }
        let n = BigInt::from(params.n);
        while u > 0 && w > 0 {
            let (q, r) = v.div_rem(&n);
            if !r.is_zero() {
                break;
            }
            v = q;
            u -= 1;
            w -= 1;
        }
        GroupElement { u, v, w }
    }

    pub fn is_identity(&self) -> bool {
        self.u == 0 && self.w == 0 && self.v.is_zero()
    }

    pub fn is_normal(&self, params: GroupParams) -> bool {
        !(self.u > 0 && self.w > 0 && self.v.is_multiple_of(&BigInt::from(params.n)))
    }

    /// Right multiplication by a single generator.
    pub fn mul_letter(&self, letter: Letter, params: GroupParams) -> GroupElement {
        let GroupElement { u, v, w } = self;
        match letter {
            Letter::A | Letter::AInv => {
                // t^w a t^-w = a^(n^w)
                let shift = pow_n(params, *w);
                let v = if letter == Letter::A { v + shift } else { v - shift };
                GroupElement::normalized(*u, v, *w, params)
            }
            Letter::T => GroupElement::normalized(*u, v.clone(), w + 1, params),
            Letter::TInv => {
                if *w > 0 {
                    GroupElement {
                        u: *u,
                        v: v.clone(),
                        w: w - 1,
                    }
                } else {
                    // a^v t^-1 = t^-1 a^(n·v)
                    GroupElement {
                        u: u + 1,
                        v: v * BigInt::from(params.n),
                        w: 0,
                    }
                }
            }
        }
    }

    /// The word-metric-free spelling `t^-u a^v t^w`.
    pub fn spell(&self) -> Option<Word> {
        Word::spell(self)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.u, self.v, self.w)
    }
}

fn pow_n(params: GroupParams, e: u64) -> BigInt {
    let e = u32::try_from(e).expect("t-exponent exceeds u32");
    num_traits::pow(BigInt::from(params.n), e as usize)
}

/// Normal form of the element spelled by `word`.
pub fn evaluate_word(word: &Word, params: GroupParams) -> GroupElement {
    word.letters()
        .iter()
        .fold(GroupElement::identity(), |g, &l| g.mul_letter(l, params))
}

/// Normal form of `g·h`.
pub fn multiply(g: &GroupElement, h: &GroupElement, params: GroupParams) -> GroupElement {
    // t^-u1 a^v1 t^w1 · t^-u2 a^v2 t^w2
    if g.w >= h.u {
        let m = g.w - h.u;
        let v = &g.v + &h.v * pow_n(params, m);
        GroupElement::normalized(g.u, v, m + h.w, params)
    } else {
        let p = h.u - g.w;
        let v = &g.v * pow_n(params, p) + &h.v;
        GroupElement::normalized(g.u + p, v, h.w, params)
    }
}

pub fn inverse(g: &GroupElement, _params: GroupParams) -> GroupElement {
    GroupElement {
        u: g.w,
        v: -&g.v,
        w: g.u,
    }
}

/// `n^e` as a big integer.
pub fn power_of(n: u32, e: usize) -> BigInt {
    if e == 0 {
        return BigInt::one();
    }
    num_traits::pow(BigInt::from(n), e)
}
