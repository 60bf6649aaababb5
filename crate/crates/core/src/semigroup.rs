//! Concrete unital LCM semigroups and their least-common-multiple calculus.
//!
//! Every semigroup implemented here (ℕᵏ, ℕ^×, free monoids, finite direct
//! products and opposites of those) has trivial unit group, so least common
//! multiples are returned as unique elements. For general LCM semigroups an
//! lcm is only determined up to multiplication by a unit; nothing in this
//! module tries to model that case.
//!
//! Conventions: `Px` is the principal *left* ideal `{sx : s ∈ P}` and `xP`
//! the principal *right* ideal. [`Semigroup::left_lcm`] describes `Px ∩ Py`,
//! [`Semigroup::right_lcm`] describes `xP ∩ yP`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest alphabet for free monoids; letters print as `a`, `b`, ...
pub const MAX_GENERATORS: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Semigroup {
    /// ℕᵏ under componentwise addition.
    Naturals { rank: usize },
    /// ℕ^× = positive integers under multiplication.
    PositiveIntegers,
    /// The free monoid on `generators` letters.
    Free { generators: usize },
    /// Direct product, componentwise multiplication.
    Product(Vec<Semigroup>),
    /// Opposite semigroup: `x • y = yx`.
    Opposite(Box<Semigroup>),
}

/// Which principal ideal an element is tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ideal {
    /// `Py`
    Left,
    /// `yP`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Vector(Vec<u64>),
    Integer(BigUint),
    /// Letter indices, `0` is `a`.
    Word(Vec<u8>),
    Tuple(Vec<Element>),
}

impl Element {
    fn rank(&self) -> u8 {
        match self {
            Element::Vector(_) => 0,
            Element::Integer(_) => 1,
            Element::Word(_) => 2,
            Element::Tuple(_) => 3,
        }
    }

    pub fn integer(n: u64) -> Element {
        Element::Integer(BigUint::from(n))
    }

    /// Word from a string of letters `a`, `b`, ...; panics on other characters.
    pub fn word(letters: &str) -> Element {
        Element::Word(
            letters
                .bytes()
                .map(|b| {
                    assert!(b.is_ascii_lowercase(), "not a letter: {}", b as char);
                    b - b'a'
                })
                .collect(),
        )
    }
}

/// Lexicographic on vectors and tuples, numeric on integers and
/// length-lexicographic on words, which is the window order everywhere.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) => a.cmp(b),
            (Element::Integer(a), Element::Integer(b)) => a.cmp(b),
            (Element::Word(a), Element::Word(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Element::Tuple(a), Element::Tuple(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Element::Vector(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            Element::Integer(n) => write!(f, "{n}"),
            Element::Word(w) if w.is_empty() => write!(f, "ε"),
            Element::Word(w) => {
                for &l in w {
                    write!(f, "{}", (b'a' + l) as char)?;
                }
                Ok(())
            }
            Element::Tuple(parts) => {
                write!(f, "[")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semigroup::Naturals { rank } => write!(f, "Nk({rank})"),
            Semigroup::PositiveIntegers => write!(f, "NTimes"),
            Semigroup::Free { generators } => write!(f, "Free({generators})"),
            Semigroup::Product(parts) => {
                write!(f, "Prod(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Semigroup::Opposite(inner) => write!(f, "Op({inner})"),
        }
    }
}

impl Semigroup {
    pub fn naturals(rank: usize) -> Result<Semigroup> {
        if rank == 0 {
            return Err(Error::Descriptor("ℕᵏ needs k ≥ 1".into()));
        }
        Ok(Semigroup::Naturals { rank })
    }

    pub fn free(generators: usize) -> Result<Semigroup> {
        if !(2..=MAX_GENERATORS).contains(&generators) {
            return Err(Error::Descriptor(format!(
                "free monoid needs 2 ≤ n ≤ {MAX_GENERATORS}, got {generators}"
            )));
        }
        Ok(Semigroup::Free { generators })
    }

    pub fn product(parts: Vec<Semigroup>) -> Result<Semigroup> {
        if parts.is_empty() {
            return Err(Error::Descriptor("direct product of no factors".into()));
        }
        Ok(Semigroup::Product(parts))
    }

    /// The opposite semigroup; `Op(Op(D))` collapses to `D`.
    pub fn opposite(self) -> Semigroup {
        match self {
            Semigroup::Opposite(inner) => *inner,
            other => Semigroup::Opposite(Box::new(other)),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Semigroup::Naturals { .. } | Semigroup::PositiveIntegers => true,
            Semigroup::Free { .. } => false,
            Semigroup::Product(parts) => parts.iter().all(Semigroup::is_abelian),
            Semigroup::Opposite(inner) => inner.is_abelian(),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Semigroup::Naturals { rank } => Element::Vector(vec![0; *rank]),
            Semigroup::PositiveIntegers => Element::Integer(BigUint::one()),
            Semigroup::Free { .. } => Element::Word(Vec::new()),
            Semigroup::Product(parts) => Element::Tuple(parts.iter().map(Semigroup::identity).collect()),
            Semigroup::Opposite(inner) => inner.identity(),
        }
    }

    pub fn conforms(&self, x: &Element) -> bool {
        match (self, x) {
            (Semigroup::Naturals { rank }, Element::Vector(v)) => v.len() == *rank,
            (Semigroup::PositiveIntegers, Element::Integer(n)) => !n.is_zero(),
            (Semigroup::Free { generators }, Element::Word(w)) => w.iter().all(|&l| (l as usize) < *generators),
            (Semigroup::Product(parts), Element::Tuple(xs)) => {
                parts.len() == xs.len() && parts.iter().zip(xs).all(|(p, x)| p.conforms(x))
            }
            (Semigroup::Opposite(inner), x) => inner.conforms(x),
            _ => false,
        }
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if self.conforms(x) {
            Ok(())
        } else {
            Err(Error::Shape {
                semigroup: self.to_string(),
                element: x.to_string(),
            })
        }
    }

    /// `x = e`; the unit group is trivial for every implemented semigroup.
    pub fn is_unit(&self, x: &Element) -> Result<bool> {
        self.check(x)?;
        Ok(*x == self.identity())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// `z` with `Px ∩ Py = Pz`, or `None` when the intersection is empty.
    pub fn left_lcm(&self, x: &Element, y: &Element) -> Result<Option<Element>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.lcm(x, y, Ideal::Left))
    }

    /// `z` with `xP ∩ yP = zP`, or `None` when the intersection is empty.
    pub fn right_lcm(&self, x: &Element, y: &Element) -> Result<Option<Element>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.lcm(x, y, Ideal::Right))
    }

    /// For [`Ideal::Left`] the unique `s` with `r = sy`; for [`Ideal::Right`]
    /// the unique `s` with `r = ys`. `None` when `r` is outside the ideal.
    pub fn ideal_quotient(&self, r: &Element, y: &Element, side: Ideal) -> Result<Option<Element>> {
        self.check(r)?;
        self.check(y)?;
        Ok(self.quotient(r, y, side))
    }

    /// Iterated right lcm `σF`; `None` as soon as a partial fold is empty.
    pub fn sigma(&self, family: &[Element]) -> Result<Option<Element>> {
        let (first, rest) = family
            .split_first()
            .ok_or_else(|| Error::Usage("σ of an empty family".into()))?;
        for x in family {
            self.check(x)?;
        }
        let mut acc = first.clone();
        for x in rest {
            match self.lcm(&acc, x, Ideal::Right) {
                Some(z) => acc = z,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    // The unchecked kernels below assume both arguments conform.

    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (Semigroup::Naturals { .. }, Element::Vector(a), Element::Vector(b)) => Element::Vector(
                a.iter()
                    .zip(b)
                    .map(|(s, t)| s.checked_add(*t).expect("ℕᵏ coordinate overflow"))
                    .collect(),
            ),
            (Semigroup::PositiveIntegers, Element::Integer(a), Element::Integer(b)) => Element::Integer(a * b),
            (Semigroup::Free { .. }, Element::Word(a), Element::Word(b)) => {
                let mut w = Vec::with_capacity(a.len() + b.len());
                w.extend_from_slice(a);
                w.extend_from_slice(b);
                Element::Word(w)
            }
            (Semigroup::Product(parts), Element::Tuple(a), Element::Tuple(b)) => Element::Tuple(
                parts
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(p, (s, t))| p.mul(s, t))
                    .collect(),
            ),
            (Semigroup::Opposite(inner), x, y) => inner.mul(y, x),
            _ => unreachable!("shape checked by caller"),
        }
    }

    pub(crate) fn lcm(&self, x: &Element, y: &Element, side: Ideal) -> Option<Element> {
        match (self, x, y) {
            (Semigroup::Naturals { .. }, Element::Vector(a), Element::Vector(b)) => {
                Some(Element::Vector(a.iter().zip(b).map(|(s, t)| *s.max(t)).collect()))
            }
            (Semigroup::PositiveIntegers, Element::Integer(a), Element::Integer(b)) => Some(Element::Integer(a.lcm(b))),
            (Semigroup::Free { .. }, Element::Word(a), Element::Word(b)) => {
                let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                let nested = match side {
                    // Px ∩ Py ≠ ∅ iff one word is a final segment of the other.
                    Ideal::Left => long.ends_with(short),
                    Ideal::Right => long.starts_with(short),
                };
                nested.then(|| Element::Word(long.clone()))
            }
            (Semigroup::Product(parts), Element::Tuple(a), Element::Tuple(b)) => parts
                .iter()
                .zip(a.iter().zip(b))
                .map(|(p, (s, t))| p.lcm(s, t, side))
                .collect::<Option<Vec<_>>>()
                .map(Element::Tuple),
            (Semigroup::Opposite(inner), x, y) => inner.lcm(x, y, side.flip()),
            _ => unreachable!("shape checked by caller"),
        }
    }

    pub(crate) fn quotient(&self, r: &Element, y: &Element, side: Ideal) -> Option<Element> {
        match (self, r, y) {
            (Semigroup::Naturals { .. }, Element::Vector(a), Element::Vector(b)) => a
                .iter()
                .zip(b)
                .map(|(s, t)| s.checked_sub(*t))
                .collect::<Option<Vec<_>>>()
                .map(Element::Vector),
            (Semigroup::PositiveIntegers, Element::Integer(a), Element::Integer(b)) => {
                let (q, rem) = a.div_rem(b);
                rem.is_zero().then_some(Element::Integer(q))
            }
            (Semigroup::Free { .. }, Element::Word(a), Element::Word(b)) => match side {
                Ideal::Left => a.ends_with(b).then(|| Element::Word(a[..a.len() - b.len()].to_vec())),
                Ideal::Right => a.starts_with(b).then(|| Element::Word(a[b.len()..].to_vec())),
            },
            (Semigroup::Product(parts), Element::Tuple(a), Element::Tuple(b)) => parts
                .iter()
                .zip(a.iter().zip(b))
                .map(|(p, (s, t))| p.quotient(s, t, side))
                .collect::<Option<Vec<_>>>()
                .map(Element::Tuple),
            (Semigroup::Opposite(inner), r, y) => inner.quotient(r, y, side.flip()),
            _ => unreachable!("shape checked by caller"),
        }
    }

    /// `r ∈ yP` (right) or `r ∈ Py` (left), unchecked.
    pub(crate) fn divides(&self, r: &Element, y: &Element, side: Ideal) -> bool {
        match (self, r, y) {
            (Semigroup::Naturals { .. }, Element::Vector(a), Element::Vector(b)) => {
                a.iter().zip(b).all(|(s, t)| s >= t)
            }
            (Semigroup::PositiveIntegers, Element::Integer(a), Element::Integer(b)) => (a % b).is_zero(),
            (Semigroup::Free { .. }, Element::Word(a), Element::Word(b)) => match side {
                Ideal::Left => a.ends_with(b),
                Ideal::Right => a.starts_with(b),
            },
            (Semigroup::Product(parts), Element::Tuple(a), Element::Tuple(b)) => parts
                .iter()
                .zip(a.iter().zip(b))
                .all(|(p, (s, t))| p.divides(s, t, side)),
            (Semigroup::Opposite(inner), r, y) => inner.divides(r, y, side.flip()),
            _ => unreachable!("shape checked by caller"),
        }
    }

    /// Parses an element in the notation produced by `Display`.
    ///
    /// ℕᵏ: `3` (k = 1) or `(1,2)`; ℕ^×: decimal; words: letters, `ε` or the
    /// empty string for the identity; products: `[x;y]`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        let bad = || Error::Parse(format!("`{text}` is not an element of {self}"));
        let element = match self {
            Semigroup::Naturals { rank } => {
                let body = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(text);
                let coords = body
                    .split(',')
                    .map(|c| c.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad())?;
                if coords.len() != *rank {
                    return Err(bad());
                }
                Element::Vector(coords)
            }
            Semigroup::PositiveIntegers => Element::Integer(text.parse::<BigUint>().map_err(|_| bad())?),
            Semigroup::Free { generators } => {
                if text.is_empty() || text == "ε" {
                    Element::Word(Vec::new())
                } else {
                    let letters = text
                        .bytes()
                        .map(|b| {
                            let l = b.wrapping_sub(b'a');
                            ((l as usize) < *generators).then_some(l)
                        })
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(bad)?;
                    Element::Word(letters)
                }
            }
            Semigroup::Product(parts) => {
                let body = text
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(bad)?;
                let pieces = split_top_level(body, ';');
                if pieces.len() != parts.len() {
                    return Err(bad());
                }
                Element::Tuple(
                    parts
                        .iter()
                        .zip(pieces)
                        .map(|(p, piece)| p.parse_element(piece))
                        .collect::<Result<_>>()?,
                )
            }
            Semigroup::Opposite(inner) => inner.parse_element(text)?,
        };
        self.check(&element).map_err(|_| bad())?;
        Ok(element)
    }

    /// Parses a comma separated list of elements; commas inside `(..)` or
    /// `[..]` do not split.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<Element>> {
        split_top_level(text, ',')
            .into_iter()
            .map(|piece| self.parse_element(piece))
            .collect()
    }
}

impl Ideal {
    pub fn flip(self) -> Ideal {
        match self {
            Ideal::Left => Ideal::Right,
            Ideal::Right => Ideal::Left,
        }
    }
}

pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut pieces = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                pieces.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    pieces.push(&text[start..]);
    pieces
}
