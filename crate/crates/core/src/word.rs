//! Free-group words in syllable form and commutator constructors.
//!
//! Commutator and conjugation conventions: `[x, y] = x y x⁻¹ y⁻¹` and
//! `ˣy = x y x⁻¹`.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a generator inside an alphabet.
pub type Gen = usize;

/// A named generator of an alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    name: String,
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(Error::InvalidArgument(format!("invalid generator name `{name}`")));
        }
        Ok(Generator { name })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

pub(crate) fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Builds the alphabet `prefix0, prefix1, ...`.
pub fn indexed_alphabet(prefix: &str, count: usize) -> Vec<Generator> {
    (0..count)
        .map(|i| Generator::new(format!("{prefix}{i}")).expect("valid generated name"))
        .collect()
}

/// A single run `g^e` with `e != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: i64,
}

/// A freely reduced word. Adjacent syllables always carry distinct
/// generators and no exponent is zero; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Freely reduces an arbitrary sequence of `(generator, exponent)` pairs.
pub fn reduce<I>(pairs: I) -> Word
where
    I: IntoIterator<Item = (Gen, i64)>,
{
    let mut out: Vec<Syllable> = Vec::new();
    for (gen, exp) in pairs {
        push_syllable(&mut out, gen, exp);
    }
    Word { syllables: out }
}

fn push_syllable(out: &mut Vec<Syllable>, gen: Gen, exp: i64) {
    if exp == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.gen == gen => {
            last.exp = last.exp.checked_add(exp).expect("word exponent overflow");
            if last.exp == 0 {
                out.pop();
            }
        }
        _ => out.push(Syllable { gen, exp }),
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letter(gen: Gen) -> Self {
        Word { syllables: vec![Syllable { gen, exp: 1 }] }
    }

    pub fn power_of(gen: Gen, exp: i64) -> Self {
        reduce([(gen, exp)])
    }

    /// Product of the letters `gens[0] gens[1] ...`.
    pub fn product_of(gens: &[Gen]) -> Self {
        reduce(gens.iter().map(|&g| (g, 1)))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    /// Letters one at a time as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|s| std::iter::repeat((s.gen, s.exp.signum())).take(s.exp.unsigned_abs() as usize))
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<Gen> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    /// Idempotent: words are kept reduced on construction.
    pub fn reduce(&self) -> Word {
        reduce(self.syllables.iter().map(|s| (s.gen, s.exp)))
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push_syllable(&mut out, s.gen, s.exp);
        }
        Word { syllables: out }
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -s.exp })
                .collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Replaces every letter by a word (a homomorphism of free groups).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for s in &self.syllables {
            out = out.mul(&images[s.gen].pow(s.exp));
        }
        out
    }

    /// Renders in DSL form (`x^2*y^-1`), `1` for the identity.
    pub fn render(&self, alphabet: &[Generator]) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|s| {
                let name = alphabet.get(s.gen).map(|g| g.name().to_string()).unwrap_or_else(|| format!("g{}", s.gen));
                if s.exp == 1 {
                    name
                } else {
                    format!("{name}^{}", s.exp)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Cyclically reduced form together with the conjugating prefix removed.
    pub fn cyclically_reduced(&self) -> Word {
        let mut syl = self.syllables.clone();
        loop {
            if syl.len() >= 2 && syl[0].gen == syl[syl.len() - 1].gen {
                let first = syl[0].exp;
                let last = syl.pop().unwrap().exp;
                let merged = first + last;
                if merged == 0 {
                    syl.remove(0);
                } else {
                    syl[0].exp = merged;
                }
                continue;
            }
            break;
        }
        Word { syllables: syl }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| if s.exp == 1 { format!("g{}", s.gen) } else { format!("g{}^{}", s.gen, s.exp) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `[a, b] = a b a⁻¹ b⁻¹`, freely reduced.
pub fn commutator(a: &Word, b: &Word) -> Word {
    a.mul(b).mul(&a.inverse()).mul(&b.inverse())
}

/// `ᵍa = g a g⁻¹`, freely reduced.
pub fn conjugate(a: &Word, g: &Word) -> Word {
    g.mul(a).mul(&g.inverse())
}

/// Left-normed commutator `[[…[w₁, w₂], …], w_t]` of arbitrary words;
/// a single entry is returned unchanged.
pub fn left_normed(entries: &[Word]) -> Result<Word> {
    let (first, rest) = entries
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("left-normed commutator of an empty tuple".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, w| commutator(&acc, w)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A nonempty tuple `(z₁^{ε₁}, …, z_t^{ε_t})` of signed letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedLetterTuple {
    entries: Vec<(Gen, Sign)>,
}

impl SignedLetterTuple {
    pub fn new(entries: Vec<(Gen, Sign)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("signed letter tuple must be nonempty".into()));
        }
        Ok(SignedLetterTuple { entries })
    }

    pub fn entries(&self) -> &[(Gen, Sign)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn left_normed_commutator(t: &SignedLetterTuple) -> Word {
    let words: Vec<Word> = t.entries.iter().map(|&(g, s)| Word::power_of(g, s.exponent())).collect();
    left_normed(&words).expect("tuple is nonempty by construction")
}

/// Bracket expression kept symbolically so it can be printed the way
/// nested commutators are usually written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommExpr {
    /// Product of positive letters `y_{i₁} y_{i₂} …`.
    Product(Vec<Gen>),
    Bracket(Box<CommExpr>, Box<CommExpr>),
}

impl CommExpr {
    pub fn bracket(a: CommExpr, b: CommExpr) -> CommExpr {
        CommExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn eval(&self) -> Word {
        match self {
            CommExpr::Product(gens) => Word::product_of(gens),
            CommExpr::Bracket(a, b) => commutator(&a.eval(), &b.eval()),
        }
    }

    /// Compact rendering, letters juxtaposed: `[[y0,y1],[y0,y1y2]]`.
    pub fn render_compact(&self, alphabet: &[Generator]) -> String {
        match self {
            CommExpr::Product(gens) => gens.iter().map(|&g| alphabet[g].name().to_string()).collect(),
            CommExpr::Bracket(a, b) => {
                format!("[{},{}]", a.render_compact(alphabet), b.render_compact(alphabet))
            }
        }
    }

    /// Rendering in the presentation DSL (`*` between letters).
    pub fn render_dsl(&self, alphabet: &[Generator]) -> String {
        match self {
            CommExpr::Product(gens) if gens.is_empty() => "1".into(),
            CommExpr::Product(gens) => gens.iter().map(|&g| alphabet[g].name().to_string()).collect::<Vec<_>>().join("*"),
            CommExpr::Bracket(a, b) => format!("[{},{}]", a.render_dsl(alphabet), b.render_dsl(alphabet)),
        }
    }

    pub fn letters_used(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_letters(&self, out: &mut Vec<Gen>) {
        match self {
            CommExpr::Product(g) => out.extend_from_slice(g),
            CommExpr::Bracket(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }
}

/// `E(1, m) = [y0, y1⋯y_m]`, `E(k, m) = [E(k-1, k-1), E(k-1, m)]`.
fn hopf_tail(k: usize, m: usize) -> CommExpr {
    if k == 1 {
        CommExpr::bracket(CommExpr::Product(vec![0]), CommExpr::Product((1..=m).collect()))
    } else {
        CommExpr::bracket(hopf_tail(k - 1, k - 1), hopf_tail(k - 1, m))
    }
}

/// The iterated commutator representing the `k`-fold composite of
/// suspended Hopf maps, over the alphabet `y0, …, y_k` (letter `y_i` has
/// index `i`).
pub fn hopf_expression(k: usize) -> Result<CommExpr> {
    if k < 1 {
        return Err(Error::InvalidArgument("hopf element index must be at least 1".into()));
    }
    Ok(hopf_tail(k, k))
}

pub fn hopf_element(k: usize) -> Result<Word> {
    Ok(hopf_expression(k)?.eval())
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: Gen = 0;
    const Y: Gen = 1;

    #[test]
    fn reduce_cancels() {
        assert!(reduce([(X, 1), (X, -1)]).is_identity());
        assert_eq!(reduce([(X, 1), (Y, 1), (Y, -1), (X, 1)]), Word::power_of(X, 2));
        let w = reduce([(X, 2), (Y, -3)]);
        assert_eq!(w.reduce(), w);
    }

    #[test]
    fn commutator_examples() {
        let x = Word::letter(X);
        assert!(commutator(&x, &x).is_identity());
        assert!(commutator(&x, &Word::identity()).is_identity());
        let c = commutator(&Word::letter(0), &Word::letter(1));
        assert_eq!(c, reduce([(0, 1), (1, 1), (0, -1), (1, -1)]));
    }

    #[test]
    fn conjugate_examples() {
        let a = reduce([(X, 1), (Y, 2)]);
        assert_eq!(conjugate(&a, &Word::identity()), a);
        assert!(conjugate(&Word::identity(), &a).is_identity());
        assert_eq!(conjugate(&Word::letter(Y), &Word::letter(X)), reduce([(X, 1), (Y, 1), (X, -1)]));
    }

    #[test]
    fn left_normed_examples() {
        let t = SignedLetterTuple::new(vec![(0, Sign::Plus)]).unwrap();
        assert_eq!(left_normed_commutator(&t), Word::letter(0));
        let t = SignedLetterTuple::new(vec![(0, Sign::Plus), (1, Sign::Plus)]).unwrap();
        assert_eq!(left_normed_commutator(&t), commutator(&Word::letter(0), &Word::letter(1)));
        let t = SignedLetterTuple::new(vec![(0, Sign::Plus), (1, Sign::Minus), (2, Sign::Plus)]).unwrap();
        let expected = commutator(&commutator(&Word::letter(0), &Word::power_of(1, -1)), &Word::letter(2));
        assert_eq!(left_normed_commutator(&t), expected);
        assert!(SignedLetterTuple::new(vec![]).is_err());
    }

    #[test]
    fn hopf_rejects_zero() {
        assert!(hopf_element(0).is_err());
    }

    #[test]
    fn hopf_first_three() {
        let y = indexed_alphabet("y", 4);
        assert_eq!(hopf_expression(1).unwrap().render_compact(&y), "[y0,y1]");
        assert_eq!(hopf_expression(2).unwrap().render_compact(&y), "[[y0,y1],[y0,y1y2]]");
        assert_eq!(
            hopf_expression(3).unwrap().render_compact(&y),
            "[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3]]]"
        );
        assert_eq!(hopf_element(1).unwrap(), commutator(&Word::letter(0), &Word::letter(1)));
    }

    #[test]
    fn cyclic_reduction() {
        let w = reduce([(X, 1), (Y, 2), (X, -1)]);
        assert_eq!(w.cyclically_reduced(), Word::power_of(Y, 2));
    }
}
