//! Weighted basis partial isometries on `ℓ²(P)` and on the compressed space.
//!
//! Operators are unevaluated words of atoms, applied right to left. Every atom
//! sends a basis vector to zero or to a rational multiple of a single basis
//! vector, so every word does too, and evaluation is exact on the whole
//! infinite basis. Windows only choose which basis points are inspected.
//!
//! The compressed space has basis `ε_{(r,s)}` with `s ∈ rP`; it is the range
//! of the projection `q` on `ℓ²(P, ℓ²(P))` for `A = B_P` acting by
//! multiplication. On it:
//! `V_x ε_{(r',s)} = ε_{(r,s)}` if `r' = rx`, `V_x* ε_{(r,s)} = ε_{(rx,s)}`
//! if `s ∈ rxP`, and `ρ(f) ε_{(r,s)} = (τ_r f)(s) ε_{(r,s)}`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bp::BpFunction;
use crate::error::{Error, Result};
use crate::semigroup::{Element, Ideal, Semigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    /// `ℓ²(P)` with basis `ε_r`.
    Sequence,
    /// Basis `ε_{(r,s)}`, `s ∈ rP`.
    Compressed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    pub semigroup: Semigroup,
    pub carrier: Carrier,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisPoint {
    Single(Element),
    Pair(Element, Element),
}

impl fmt::Display for BasisPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisPoint::Single(r) => write!(f, "e[{r}]"),
            BasisPoint::Pair(r, s) => write!(f, "e[{r};{s}]"),
        }
    }
}

/// Image of a basis vector: `None` is the zero vector.
pub type Outcome = Option<(BigRational, BasisPoint)>;

/// `"0"`, `"e[..]"` or `"c*e[..]"`.
pub fn format_outcome(outcome: &Outcome) -> String {
    match outcome {
        None => "0".into(),
        Some((c, b)) if c.is_one() => b.to_string(),
        Some((c, b)) => format!("{c}*{b}"),
    }
}

impl Space {
    pub fn sequence(semigroup: &Semigroup) -> Space {
        Space {
            semigroup: semigroup.clone(),
            carrier: Carrier::Sequence,
        }
    }

    pub fn compressed(semigroup: &Semigroup) -> Space {
        Space {
            semigroup: semigroup.clone(),
            carrier: Carrier::Compressed,
        }
    }

    pub fn check_point(&self, b: &BasisPoint) -> Result<()> {
        let d = &self.semigroup;
        match (self.carrier, b) {
            (Carrier::Sequence, BasisPoint::Single(r)) => d.check(r),
            (Carrier::Compressed, BasisPoint::Pair(r, s)) => {
                d.check(r)?;
                d.check(s)?;
                if d.divides(s, r, Ideal::Right) {
                    Ok(())
                } else {
                    Err(Error::Carrier(format!("{b} violates s ∈ rP")))
                }
            }
            _ => Err(Error::Carrier(format!("{b} is not a basis point of {self}"))),
        }
    }

    /// Basis points built from window elements: `ε_r` for `ℓ²(P)`, and every
    /// admissible `ε_{(r,s)}` for the compressed space.
    pub fn basis_window(&self, elements: &[Element]) -> Vec<BasisPoint> {
        let mut out: Vec<BasisPoint> = match self.carrier {
            Carrier::Sequence => elements.iter().cloned().map(BasisPoint::Single).collect(),
            Carrier::Compressed => elements
                .iter()
                .flat_map(|r| {
                    elements
                        .iter()
                        .filter(|s| self.semigroup.divides(s, r, Ideal::Right))
                        .map(|s| BasisPoint::Pair(r.clone(), s.clone()))
                })
                .collect(),
        };
        out.sort();
        out.dedup();
        out
    }

    fn incompatible(&self, other: &Space) -> Error {
        Error::Carrier(format!("{self} vs {other}"))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.carrier {
            Carrier::Sequence => write!(f, "ℓ²({})", self.semigroup),
            Carrier::Compressed => write!(f, "qℓ²({0}, ℓ²({0}))", self.semigroup),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Identity,
    /// `S_y: ε_r ↦ ε_{ry}`.
    Shift(Element),
    /// `W_y = S_y*: ε_s ↦ ε_x` when `s = xy`.
    CoShift(Element),
    /// Multiplication by `f`.
    Diag(BpFunction),
    /// `V_x` on the compressed space.
    CompressedShift(Element),
    /// `V_x*` on the compressed space.
    CompressedCoShift(Element),
    /// `ρ(f)` on the compressed space.
    CompressedDiag(BpFunction),
}

impl Atom {
    fn adjoint(&self) -> Atom {
        match self {
            Atom::Shift(y) => Atom::CoShift(y.clone()),
            Atom::CoShift(y) => Atom::Shift(y.clone()),
            Atom::CompressedShift(x) => Atom::CompressedCoShift(x.clone()),
            Atom::CompressedCoShift(x) => Atom::CompressedShift(x.clone()),
            // Rational coefficients are real.
            other => other.clone(),
        }
    }

    fn carrier(&self) -> Option<Carrier> {
        match self {
            Atom::Identity => None,
            Atom::Shift(_) | Atom::CoShift(_) | Atom::Diag(_) => Some(Carrier::Sequence),
            _ => Some(Carrier::Compressed),
        }
    }

    /// Assumes the point lies in the atom's carrier.
    fn apply(&self, d: &Semigroup, b: BasisPoint) -> Option<(BigRational, BasisPoint)> {
        let one = BigRational::one;
        match (self, b) {
            (Atom::Identity, b) => Some((one(), b)),
            (Atom::Shift(y), BasisPoint::Single(r)) => Some((one(), BasisPoint::Single(d.mul(&r, y)))),
            (Atom::CoShift(y), BasisPoint::Single(s)) => {
                d.quotient(&s, y, Ideal::Left).map(|x| (one(), BasisPoint::Single(x)))
            }
            (Atom::Diag(f), BasisPoint::Single(r)) => {
                let v = f.eval_unchecked(&r);
                (!v.is_zero()).then_some((v, BasisPoint::Single(r)))
            }
            (Atom::CompressedShift(x), BasisPoint::Pair(r, s)) => {
                d.quotient(&r, x, Ideal::Left).map(|r| (one(), BasisPoint::Pair(r, s)))
            }
            (Atom::CompressedCoShift(x), BasisPoint::Pair(r, s)) => {
                let rx = d.mul(&r, x);
                d.divides(&s, &rx, Ideal::Right)
                    .then(|| (one(), BasisPoint::Pair(rx, s)))
            }
            (Atom::CompressedDiag(f), BasisPoint::Pair(r, s)) => {
                let v = f.tau(&r).expect("conforming element").eval_unchecked(&s);
                (!v.is_zero()).then_some((v, BasisPoint::Pair(r, s)))
            }
            _ => unreachable!("carrier checked on construction"),
        }
    }
}

/// A word of atoms on a fixed space; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    space: Space,
    /// Applied right to left.
    word: Vec<Atom>,
}

impl Operator {
    pub fn identity(space: &Space) -> Operator {
        Operator {
            space: space.clone(),
            word: Vec::new(),
        }
    }

    pub fn atom(space: &Space, atom: Atom) -> Result<Operator> {
        if let Some(carrier) = atom.carrier() {
            if carrier != space.carrier {
                return Err(Error::Carrier(format!("{atom:?} does not act on {space}")));
            }
        }
        match &atom {
            Atom::Shift(y) | Atom::CoShift(y) | Atom::CompressedShift(y) | Atom::CompressedCoShift(y) => {
                space.semigroup.check(y)?
            }
            Atom::Diag(f) | Atom::CompressedDiag(f) if f.semigroup() != &space.semigroup => {
                return Err(Error::Carrier(format!("function over {} on {space}", f.semigroup())))
            }
            _ => {}
        }
        let word = match atom {
            Atom::Identity => Vec::new(),
            atom => vec![atom],
        };
        Ok(Operator {
            space: space.clone(),
            word,
        })
    }

    /// `S_y` on `ℓ²(P)`.
    pub fn shift(semigroup: &Semigroup, y: &Element) -> Result<Operator> {
        Self::atom(&Space::sequence(semigroup), Atom::Shift(y.clone()))
    }

    /// `W_y` on `ℓ²(P)`.
    pub fn coshift(semigroup: &Semigroup, y: &Element) -> Result<Operator> {
        Self::atom(&Space::sequence(semigroup), Atom::CoShift(y.clone()))
    }

    /// Multiplication by `f` on `ℓ²(P)`.
    pub fn diag(f: &BpFunction) -> Operator {
        Self::atom(&Space::sequence(f.semigroup()), Atom::Diag(f.clone())).expect("matching space")
    }

    /// `V_x` on the compressed space.
    pub fn compressed_shift(semigroup: &Semigroup, x: &Element) -> Result<Operator> {
        Self::atom(&Space::compressed(semigroup), Atom::CompressedShift(x.clone()))
    }

    /// `ρ(f)` on the compressed space.
    pub fn compressed_diag(f: &BpFunction) -> Operator {
        Self::atom(&Space::compressed(f.semigroup()), Atom::CompressedDiag(f.clone())).expect("matching space")
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn word(&self) -> &[Atom] {
        &self.word
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.space != other.space {
            return Err(self.space.incompatible(&other.space));
        }
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Ok(Operator {
            space: self.space.clone(),
            word,
        })
    }

    /// Composes a nonempty list left to right: `ops[0] ∘ ops[1] ∘ ...`.
    pub fn product(ops: &[&Operator]) -> Result<Operator> {
        let (first, rest) = ops
            .split_first()
            .ok_or_else(|| Error::Usage("empty operator product".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, op| acc.compose(op))
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            space: self.space.clone(),
            word: self.word.iter().rev().map(Atom::adjoint).collect(),
        }
    }

    pub fn apply(&self, b: &BasisPoint) -> Result<Outcome> {
        self.space.check_point(b)?;
        Ok(self.apply_unchecked(b))
    }

    pub(crate) fn apply_unchecked(&self, b: &BasisPoint) -> Outcome {
        let d = &self.space.semigroup;
        let mut coeff = BigRational::one();
        let mut point = b.clone();
        for atom in self.word.iter().rev() {
            let (c, next) = atom.apply(d, point)?;
            if !c.is_one() {
                coeff *= c;
            }
            point = next;
        }
        Some((coeff, point))
    }

    /// Compares `self` and `other` on every window point.
    pub fn equal_on_window(&self, other: &Operator, window: &[BasisPoint]) -> Result<EqualityReport> {
        if self.space != other.space {
            return Err(self.space.incompatible(&other.space));
        }
        let mut witnesses = Vec::new();
        for b in window {
            self.space.check_point(b)?;
            let lhs = self.apply_unchecked(b);
            let rhs = other.apply_unchecked(b);
            if lhs != rhs {
                witnesses.push(Mismatch {
                    point: b.clone(),
                    lhs,
                    rhs,
                });
            }
        }
        Ok(EqualityReport {
            equal: witnesses.is_empty(),
            witnesses,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub point: BasisPoint,
    pub lhs: Outcome,
    pub rhs: Outcome,
}

/// Equality is certified only on the inspected window; a mismatch is a
/// genuine inequality of operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    pub equal: bool,
    pub witnesses: Vec<Mismatch>,
}
