//! Polynomials in the non-commuting letters `a`, `b`, `c`, `d` with exact integer
//! coefficients, together with the conversions between ab-indices, cd-indices and
//! flag f-vectors.
//!
//! Letters `a`, `b`, `c` have degree one and `d` has degree two. The cd-letters are
//! understood as `c = a + b` and `d = ab + ba`; a polynomial that mixes the two
//! alphabets is compared with others only through that substitution.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{CdError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    pub fn degree(self) -> usize {
        match self {
            Letter::D => 2,
            _ => 1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            'd' => Some(Letter::D),
            _ => None,
        }
    }
}

/// A monomial: a finite sequence of letters. The empty word is the unit.
///
/// Words are ordered by degree first and then lexicographically with `a < b < c < d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
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

    pub fn degree(&self) -> usize {
        self.0.iter().map(|l| l.degree()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.0.contains(&letter)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = CdError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| {
                Letter::from_char(ch).ok_or_else(|| {
                    CdError::Parse(format!("unexpected letter {ch:?} in word {s:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Integer linear combination of words. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, BigInt>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::constant(BigInt::one())
    }

    pub fn constant(value: impl Into<BigInt>) -> Self {
        NcPoly::monomial(Word::empty(), value)
    }

    pub fn letter(l: Letter) -> Self {
        NcPoly::monomial(Word(vec![l]), 1)
    }

    pub fn a() -> Self {
        NcPoly::letter(Letter::A)
    }

    pub fn b() -> Self {
        NcPoly::letter(Letter::B)
    }

    pub fn c() -> Self {
        NcPoly::letter(Letter::C)
    }

    pub fn d() -> Self {
        NcPoly::letter(Letter::D)
    }

    pub fn monomial(word: Word, coeff: impl Into<BigInt>) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(word, coeff.into());
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, BigInt)>,
    {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    /// Coefficient of the word spelled by `s`; panics on a malformed word.
    pub fn coeff_of(&self, s: &str) -> BigInt {
        self.coeff(&s.parse().expect("valid word"))
    }

    /// The common degree of all terms, or `None` for a non-homogeneous polynomial.
    /// The zero polynomial is homogeneous of every degree and reports `None`.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.terms.keys().all(|w| w.degree() == degree)
    }

    pub fn uses_only(&self, allowed: &[Letter]) -> bool {
        self.terms
            .keys()
            .all(|w| w.letters().iter().all(|l| allowed.contains(l)))
    }

    pub fn is_cd(&self) -> bool {
        self.uses_only(&[Letter::C, Letter::D])
    }

    pub fn is_ab(&self) -> bool {
        self.uses_only(&[Letter::A, Letter::B])
    }

    pub fn scale(&self, factor: &BigInt) -> NcPoly {
        if factor.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exp: usize) -> NcPoly {
        let mut acc = NcPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// All coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exchanges the letters `a` and `b`.
    pub fn swap_ab(&self) -> NcPoly {
        self.map_letters(|l| match l {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
            other => other,
        })
    }

    fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> NcPoly {
        NcPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (Word(w.letters().iter().map(|&l| f(l)).collect()), c.clone())),
        )
    }

    /// Substitutes a polynomial for every occurrence of each letter.
    pub fn substitute(&self, image: impl Fn(Letter) -> NcPoly) -> NcPoly {
        let images = [
            image(Letter::A),
            image(Letter::B),
            image(Letter::C),
            image(Letter::D),
        ];
        let mut out = NcPoly::zero();
        for (w, coeff) in &self.terms {
            let mut acc = NcPoly::constant(coeff.clone());
            for &l in w.letters() {
                acc = &acc * &images[l as usize];
            }
            out += &acc;
        }
        out
    }

    /// Expands `c = a + b` and `d = ab + ba`, leaving `a` and `b` in place.
    pub fn expand_ab(&self) -> NcPoly {
        self.substitute(|l| match l {
            Letter::C => NcPoly::a() + NcPoly::b(),
            Letter::D => {
                NcPoly::monomial("ab".parse().unwrap(), 1)
                    + NcPoly::monomial("ba".parse().unwrap(), 1)
            }
            other => NcPoly::letter(other),
        })
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for NcPoly {
    type Err = CdError;

    /// Parses the canonical text form. Both `-` and the unicode minus sign are
    /// accepted between terms.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .map(|ch| if ch == '\u{2212}' { '-' } else { ch })
            .filter(|ch| !ch.is_whitespace())
            .collect();
        if cleaned.is_empty() {
            return Err(CdError::Parse("empty polynomial".into()));
        }
        let mut out = NcPoly::zero();
        let bytes: Vec<char> = cleaned.chars().collect();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == '+' || bytes[pos] == '-' {
                negative = bytes[pos] == '-';
                pos += 1;
            } else if pos != 0 {
                return Err(CdError::Parse(format!(
                    "expected sign at offset {pos} in {s:?}"
                )));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != '+' && bytes[pos] != '-' {
                pos += 1;
            }
            let term: String = bytes[start..pos].iter().collect();
            if term.is_empty() {
                return Err(CdError::Parse(format!("empty term in {s:?}")));
            }
            let (coeff, word) = match term.split_once('*') {
                Some((num, word)) => (parse_int(num, s)?, word.parse::<Word>()?),
                None if term.chars().all(|ch| ch.is_ascii_digit()) => {
                    (parse_int(&term, s)?, Word::empty())
                }
                None => (BigInt::one(), term.parse::<Word>()?),
            };
            if word.is_empty() && term.contains('*') {
                return Err(CdError::Parse(format!("missing word after '*' in {s:?}")));
            }
            out.add_term(word, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

fn parse_int(num: &str, whole: &str) -> Result<BigInt> {
    num.parse::<BigInt>()
        .map_err(|_| CdError::Parse(format!("bad coefficient {num:?} in {whole:?}")))
}

impl AddAssign<&NcPoly> for NcPoly {
    fn add_assign(&mut self, rhs: &NcPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&NcPoly> for NcPoly {
    fn sub_assign(&mut self, rhs: &NcPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(mut self, rhs: NcPoly) -> NcPoly {
        self += &rhs;
        self
    }
}

impl Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(mut self, rhs: NcPoly) -> NcPoly {
        self -= &rhs;
        self
    }
}

impl Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: NcPoly) -> NcPoly {
        &self * &rhs
    }
}

// ---------------------------------------------------------------------------
// Dense ab-polynomials.
//
// A homogeneous ab-polynomial of degree `dim` is stored as a vector of length
// `2^dim` indexed by the set of positions holding the letter `b` (bit `i` is
// position `i`, counted from the left).

fn mask_to_word(dim: usize, mask: usize) -> Word {
    Word(
        (0..dim)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Letter::B
                } else {
                    Letter::A
                }
            })
            .collect(),
    )
}

pub(crate) fn dense_to_poly(dim: usize, coeffs: &[BigInt]) -> NcPoly {
    NcPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (mask_to_word(dim, m), c.clone())),
    )
}

fn ab_poly_to_dense(p: &NcPoly) -> Result<(usize, Vec<BigInt>)> {
    if !p.is_ab() {
        return Err(CdError::InvalidAlphabet(format!(
            "expected letters a, b only in {p}"
        )));
    }
    let dim = match p.degree() {
        Some(d) => d,
        None if p.is_zero() => 0,
        None => {
            return Err(CdError::DegreeMismatch {
                expected: 0,
                found: "a non-homogeneous polynomial".into(),
            })
        }
    };
    let mut coeffs = vec![BigInt::zero(); 1 << dim];
    for (w, c) in p.terms() {
        let mask = w
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == Letter::B)
            .fold(0usize, |m, (i, _)| m | 1 << i);
        coeffs[mask] += c;
    }
    Ok((dim, coeffs))
}

fn check_cd_input(p: &NcPoly, dim: usize) -> Result<()> {
    if !p.is_cd() {
        return Err(CdError::InvalidAlphabet(format!(
            "expected letters c, d only in {p}"
        )));
    }
    if !p.is_homogeneous_of(dim) {
        return Err(CdError::DegreeMismatch {
            expected: dim,
            found: format!("got {p}"),
        });
    }
    Ok(())
}

/// Dense ab-expansion of a homogeneous cd-polynomial of degree `dim`.
pub(crate) fn cd_to_ab_dense(p: &NcPoly, dim: usize) -> Result<Vec<BigInt>> {
    check_cd_input(p, dim)?;
    let mut coeffs = vec![BigInt::zero(); 1 << dim];
    for (w, c) in p.terms() {
        let mut masks = vec![0usize];
        let mut pos = 0;
        for &l in w.letters() {
            match l {
                Letter::C => {
                    let extra: Vec<usize> = masks.iter().map(|m| m | 1 << pos).collect();
                    masks.extend(extra);
                    pos += 1;
                }
                Letter::D => {
                    // ab puts b at pos + 1, ba puts b at pos
                    let mut next = Vec::with_capacity(masks.len() * 2);
                    for m in masks {
                        next.push(m | 1 << (pos + 1));
                        next.push(m | 1 << pos);
                    }
                    masks = next;
                    pos += 2;
                }
                _ => unreachable!(),
            }
        }
        for m in masks {
            coeffs[m] += c;
        }
    }
    Ok(coeffs)
}

/// Substitutes `c = a + b` and `d = ab + ba`.
pub fn cd_to_ab(p: &NcPoly) -> Result<NcPoly> {
    if !p.is_cd() {
        return Err(CdError::InvalidAlphabet(format!(
            "expected letters c, d only in {p}"
        )));
    }
    if p.is_zero() {
        return Ok(NcPoly::zero());
    }
    let dim = p.degree().ok_or_else(|| CdError::DegreeMismatch {
        expected: 0,
        found: "a non-homogeneous polynomial".into(),
    })?;
    Ok(dense_to_poly(dim, &cd_to_ab_dense(p, dim)?))
}

/// The unique cd-polynomial whose ab-expansion is `p`.
pub fn ab_to_cd(p: &NcPoly) -> Result<NcPoly> {
    let (dim, coeffs) = ab_poly_to_dense(p)?;
    ab_dense_to_cd(dim, coeffs)
}

/// Rewrites a dense ab-polynomial in the basis `c = a + b`, `e = a - b`, where
/// every maximal run `e^{2m}` becomes `(c^2 - 2d)^m`; an odd run means no cd-form
/// exists.
pub(crate) fn ab_dense_to_cd(dim: usize, mut coeffs: Vec<BigInt>) -> Result<NcPoly> {
    debug_assert_eq!(coeffs.len(), 1 << dim);
    // a = (c + e)/2, b = (c - e)/2: the {c,e}-coefficient at e-set E is
    // 2^-dim * sum_m coeff[m] * (-1)^{|m & E|}, a Walsh-Hadamard transform.
    let mut h = 1;
    while h < coeffs.len() {
        for start in (0..coeffs.len()).step_by(2 * h) {
            for i in start..start + h {
                let (lo, hi) = coeffs.split_at_mut(i + h);
                let x = std::mem::take(&mut lo[i]);
                let y = std::mem::take(&mut hi[0]);
                hi[0] = &x - &y;
                lo[i] = x + y;
            }
        }
        h *= 2;
    }

    let square = NcPoly::c().pow(2) - NcPoly::d().scale(&BigInt::from(2));
    let mut square_pows = vec![NcPoly::one()];
    let mut out = NcPoly::zero();
    for (e_set, value) in coeffs.into_iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let mut acc = NcPoly::constant(value);
        let mut pos = 0;
        while pos < dim {
            if e_set >> pos & 1 == 0 {
                acc = &acc * &NcPoly::c();
                pos += 1;
                continue;
            }
            let run_start = pos;
            while pos < dim && e_set >> pos & 1 == 1 {
                pos += 1;
            }
            let run = pos - run_start;
            if run % 2 == 1 {
                return Err(CdError::NoCdForm(format!(
                    "odd run of (a-b) of length {run} at position {run_start}"
                )));
            }
            while square_pows.len() <= run / 2 {
                let next = square_pows.last().unwrap() * &square;
                square_pows.push(next);
            }
            acc = &acc * &square_pows[run / 2];
        }
        out += &acc;
    }

    let denom = BigInt::one() << dim;
    let mut result = NcPoly::zero();
    for (w, c) in out.terms {
        let (q, r) = c.div_rem(&denom);
        if !r.is_zero() {
            return Err(CdError::NoCdForm(format!(
                "non-integral cd-coefficient for {w}"
            )));
        }
        result.add_term(w, q);
    }
    Ok(result)
}

fn zeta_transform(values: &mut [BigInt], dim: usize) {
    for i in 0..dim {
        for m in 0..values.len() {
            if m >> i & 1 == 1 {
                let low = values[m ^ 1 << i].clone();
                values[m] += low;
            }
        }
    }
}

fn mobius_transform(values: &mut [BigInt], dim: usize) {
    for i in 0..dim {
        for m in 0..values.len() {
            if m >> i & 1 == 1 {
                let low = values[m ^ 1 << i].clone();
                values[m] -= low;
            }
        }
    }
}

/// Flag f-vector of a polytope of dimension `dim`: `f_S` for every set of
/// dimensions `S ⊆ {0, …, dim-1}`, stored by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagFVector {
    dim: usize,
    entries: Vec<BigInt>,
}

impl FlagFVector {
    pub fn from_entries(dim: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != 1 << dim {
            return Err(CdError::InvalidParams(format!(
                "flag vector of dimension {dim} needs {} entries, got {}",
                1usize << dim,
                entries.len()
            )));
        }
        Ok(FlagFVector { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get_mask(&self, mask: usize) -> &BigInt {
        &self.entries[mask]
    }

    /// `f_S` for the set of dimensions `dims`.
    pub fn get(&self, dims: &[usize]) -> BigInt {
        let mask = dims.iter().fold(0usize, |m, &i| m | 1 << i);
        self.entries[mask].clone()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// `(f_0, …, f_{dim-1})`; the polytope itself is omitted.
    pub fn f_vector(&self) -> Vec<BigInt> {
        (0..self.dim)
            .map(|i| self.entries[1 << i].clone())
            .collect()
    }

    /// Iterates `(S, f_S)` with `S` as a sorted list of dimensions.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &BigInt)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(move |(m, f)| ((0..self.dim).filter(|i| m >> i & 1 == 1).collect(), f))
    }

    pub(crate) fn ab_dense(&self) -> Vec<BigInt> {
        let mut coeffs = self.entries.clone();
        mobius_transform(&mut coeffs, self.dim);
        coeffs
    }

    /// The ab-index `Σ_S f_S w_S` with `w_i = b` for `i ∈ S` and `a - b` otherwise.
    pub fn ab_index(&self) -> NcPoly {
        dense_to_poly(self.dim, &self.ab_dense())
    }

    pub fn cd_index(&self) -> Result<NcPoly> {
        ab_dense_to_cd(self.dim, self.ab_dense())
    }
}

/// Recovers the flag f-vector from a cd-index of a polytope of dimension `dim`.
pub fn cd_to_flag_f(p: &NcPoly, dim: usize) -> Result<FlagFVector> {
    let mut values = cd_to_ab_dense(p, dim)?;
    zeta_transform(&mut values, dim);
    if let Some((m, v)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(CdError::NegativeFlag {
            set: (0..dim).filter(|i| m >> i & 1 == 1).collect(),
            value: v.to_string(),
        });
    }
    Ok(FlagFVector {
        dim,
        entries: values,
    })
}

// ---------------------------------------------------------------------------
// Mixed expressions in b, c, d.

/// `c^2 - 2d`, equivalent to `(a-b)^2`.
pub fn square_term() -> NcPoly {
    NcPoly::c().pow(2) - NcPoly::d().scale(&BigInt::from(2))
}

/// `c - 2b`, equivalent to `a - b`.
fn difference_term() -> NcPoly {
    NcPoly::c() - NcPoly::b().scale(&BigInt::from(2))
}

/// Mixed form of `(a-b)^t`: `(c^2-2d)^m`, times `c - 2b` when `t = 2m + 1`.
pub fn alt_power(t: usize) -> NcPoly {
    let base = square_term().pow(t / 2);
    if t % 2 == 1 {
        &base * &difference_term()
    } else {
        base
    }
}

/// Mixed form of `b(a-b)^t` in the letters `b, c, d`, with `b` only in trailing
/// position.
pub fn g_cd(t: usize) -> NcPoly {
    let mut even = NcPoly::b();
    let mut odd = NcPoly::d() - NcPoly::c() * NcPoly::b();
    if t == 0 {
        return even;
    }
    if t == 1 {
        return odd;
    }
    let square = square_term();
    let commutator = NcPoly::d() * NcPoly::c() - NcPoly::c() * NcPoly::d();
    let mut current = NcPoly::zero();
    for s in 2..=t {
        // b e^s = e^2 (b e^{s-2}) + [d, c] e^{s-2}
        let prev = if s % 2 == 0 { &even } else { &odd };
        current = &(&square * prev) + &(&commutator * &alt_power(s - 2));
        if s % 2 == 0 {
            even = current.clone();
        } else {
            odd = current.clone();
        }
    }
    current
}

/// Mixed form of `(a-b)^dim + num_vertices · b(a-b)^{dim-1}`, the contribution of
/// the empty chain and of the vertices. The vertex term is absent when `dim = 0`.
pub fn emve(dim: usize, num_vertices: u64) -> NcPoly {
    let mut out = alt_power(dim);
    if dim > 0 {
        out += &g_cd(dim - 1).scale(&BigInt::from(num_vertices));
    }
    out
}

/// Rewrites a mixed expression equivalent to a cd-polynomial into that
/// cd-polynomial.
///
/// `a` is eliminated through `a = c - b`. When every remaining `b` is the last
/// letter of its word the expression reads `p0 + p1·b`, and equivalence forces
/// `p1 = 0`; the residue is checked and `p0` returned. Any other shape is expanded
/// into the ab-alphabet and converted directly.
pub fn normalize_mixed(p: &NcPoly) -> Result<NcPoly> {
    let eliminated = if p.terms().any(|(w, _)| w.contains(Letter::A)) {
        p.substitute(|l| match l {
            Letter::A => NcPoly::c() - NcPoly::b(),
            other => NcPoly::letter(other),
        })
    } else {
        p.clone()
    };

    let mut head = NcPoly::zero();
    let mut residue = NcPoly::zero();
    let mut trailing_only = true;
    for (w, c) in eliminated.terms() {
        let letters = w.letters();
        match letters.iter().position(|&l| l == Letter::B) {
            None => head.add_term(w.clone(), c.clone()),
            Some(i) if i + 1 == letters.len() => residue.add_term(w.clone(), c.clone()),
            Some(_) => {
                trailing_only = false;
                break;
            }
        }
    }

    if !trailing_only {
        return ab_to_cd(&eliminated.expand_ab()).map_err(|e| match e {
            CdError::NoCdForm(msg) => CdError::NotCdEquivalent(msg),
            other => other,
        });
    }
    if !residue.is_zero() {
        return Err(CdError::NotCdEquivalent(format!(
            "nonzero b-residue {residue}"
        )));
    }
    Ok(head)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> NcPoly {
        s.parse().unwrap()
    }

    fn delta25_cd() -> NcPoly {
        poly("cccc + 8*ccd + 20*cdc + 8*dcc + 14*dd")
    }

    #[test]
    fn multiplication_examples() {
        let amb = poly("a - b");
        assert_eq!(&amb * &amb, poly("aa - ab - ba + bb"));
        assert_eq!(NcPoly::c() * NcPoly::d(), poly("cd"));
        let x = poly("d - cb");
        assert_eq!(&x * &NcPoly::one(), x);
    }

    #[test]
    fn canonical_text_form() {
        assert_eq!(
            delta25_cd().to_string(),
            "cccc + 8*ccd + 20*cdc + 8*dcc + 14*dd"
        );
        assert_eq!(poly("cc + 2*d").to_string(), "cc + 2*d");
        assert_eq!(poly("-3*ab + 2 - b").to_string(), "2 - b - 3*ab");
        assert_eq!(NcPoly::zero().to_string(), "0");
        assert_eq!(poly("c \u{2212} 2*b"), poly("c - 2*b"));
        assert!("c + x".parse::<NcPoly>().is_err());
        assert!("c + 2*".parse::<NcPoly>().is_err());
    }

    #[test]
    fn word_order_is_graded_then_lex() {
        let mut words: Vec<Word> = ["d", "cc", "b", "ab", "c", ""]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        words.sort();
        let shown: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["", "b", "c", "ab", "cc", "d"]);
    }

    #[test]
    fn cd_to_ab_examples() {
        assert_eq!(cd_to_ab(&NcPoly::c()).unwrap(), poly("a + b"));
        assert_eq!(cd_to_ab(&NcPoly::d()).unwrap(), poly("ab + ba"));
        let ab = cd_to_ab(&delta25_cd()).unwrap();
        let expected = poly(
            "51*abab + 29*abaa + 31*abba + 9*abbb + 29*aaba + 21*aabb + 9*aaab + aaaa \
             + 51*baba + 29*babb + 31*baab + 9*baaa + 29*bbab + 21*bbaa + 9*bbba + bbbb",
        );
        assert_eq!(ab, expected);
        assert_eq!(ab.len(), 16);
        assert!(matches!(
            cd_to_ab(&poly("ac")),
            Err(CdError::InvalidAlphabet(_))
        ));
    }

    #[test]
    fn ab_to_cd_examples() {
        assert_eq!(ab_to_cd(&poly("a + b")).unwrap(), NcPoly::c());
        assert_eq!(ab_to_cd(&poly("ab + ba")).unwrap(), NcPoly::d());
        let ab = cd_to_ab(&delta25_cd()).unwrap();
        assert_eq!(ab_to_cd(&ab).unwrap(), delta25_cd());
        assert!(matches!(ab_to_cd(&poly("a")), Err(CdError::NoCdForm(_))));
        assert!(matches!(ab_to_cd(&poly("ab")), Err(CdError::NoCdForm(_))));
        assert!(matches!(
            ab_to_cd(&poly("a + bb")),
            Err(CdError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn g_cd_small_cases() {
        assert_eq!(g_cd(0), NcPoly::b());
        assert_eq!(g_cd(1), poly("d - cb"));
        // (c^2 - 2d) b + dc - cd
        assert_eq!(g_cd(2), poly("ccb - 2*db + dc - cd"));
    }

    #[test]
    fn g_cd_matches_b_times_power() {
        let e = poly("a - b");
        for t in 0..=12 {
            let target = &NcPoly::b() * &e.pow(t);
            assert_eq!(g_cd(t).expand_ab(), target, "t = {t}");
            let g = g_cd(t);
            for (w, _) in g.terms() {
                let pos = w.letters().iter().position(|&l| l == Letter::B);
                assert!(pos.is_none() || pos == Some(w.len() - 1));
            }
        }
    }

    #[test]
    fn alt_power_matches() {
        let e = poly("a - b");
        for t in 0..=9 {
            assert_eq!(alt_power(t).expand_ab(), e.pow(t));
        }
    }

    #[test]
    fn emve_examples() {
        assert_eq!(emve(0, 1), NcPoly::one());
        assert_eq!(emve(1, 2).expand_ab(), poly("a + b"));
        let e = poly("a - b");
        let expected = &e.pow(4) + &(&NcPoly::b() * &e.pow(3)).scale(&BigInt::from(10));
        assert_eq!(emve(4, 10).expand_ab(), expected);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_mixed(&NcPoly::c()).unwrap(), NcPoly::c());
        assert_eq!(normalize_mixed(&poly("d - cb + cb")).unwrap(), NcPoly::d());
        // (a-b)^2 + 2(ab+ba) has a non-trailing b after elimination
        assert_eq!(
            normalize_mixed(&poly("aa + ab + ba + bb")).unwrap(),
            poly("cc")
        );
        assert!(matches!(
            normalize_mixed(&poly("c + cb")),
            Err(CdError::NotCdEquivalent(_))
        ));
        assert!(matches!(
            normalize_mixed(&poly("ab")),
            Err(CdError::NotCdEquivalent(_))
        ));
    }

    #[test]
    fn normalize_hypersimplex_25_by_hand() {
        // Φ(Δ_{2,5}) assembled from the face catalogue of Δ_{2,5}:
        // 5 octahedra, 5 tetrahedra, 30 triangles and 30 edges.
        let tri = poly("cc + d");
        let tetra = poly("ccc + 2*cd + 2*dc");
        let octa = poly("ccc + 6*cd + 4*dc");
        let phi = alt_power(4)
            + g_cd(3).scale(&BigInt::from(10))
            + (&NcPoly::c() * &g_cd(2)).scale(&BigInt::from(30))
            + (&tri * &g_cd(1)).scale(&BigInt::from(30))
            + (&octa * &g_cd(0)).scale(&BigInt::from(5))
            + (&tetra * &g_cd(0)).scale(&BigInt::from(5));
        assert_eq!(normalize_mixed(&phi).unwrap(), delta25_cd());
    }

    #[test]
    fn flag_vectors() {
        let seg = cd_to_flag_f(&NcPoly::c(), 1).unwrap();
        assert_eq!(seg.get(&[]), BigInt::from(1));
        assert_eq!(seg.get(&[0]), BigInt::from(2));

        let tri = cd_to_flag_f(&poly("cc + d"), 2).unwrap();
        assert_eq!(tri.entries(), &[1, 3, 3, 6].map(BigInt::from));

        let f = cd_to_flag_f(&delta25_cd(), 4).unwrap();
        assert_eq!(f.get(&[0]), BigInt::from(10));
        assert_eq!(f.f_vector(), [10, 30, 30, 10].map(BigInt::from));
        assert_eq!(f.cd_index().unwrap(), delta25_cd());

        assert!(matches!(
            cd_to_flag_f(&poly("cc - 3*d"), 2),
            Err(CdError::NegativeFlag { .. })
        ));
        assert!(matches!(
            cd_to_flag_f(&NcPoly::c(), 2),
            Err(CdError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn point_has_trivial_flag_vector() {
        let f = cd_to_flag_f(&NcPoly::one(), 0).unwrap();
        assert_eq!(f.entries(), &[BigInt::from(1)]);
        assert_eq!(f.cd_index().unwrap(), NcPoly::one());
    }
}
