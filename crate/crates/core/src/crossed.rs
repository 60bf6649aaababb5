//! Symbolic arithmetic in the spanning set `{i_P(x)* i_A(f) i_P(y)}` of the
//! crossed product by `P`, for `A = B_P` with the shift action `τ` and for the
//! trivial system `A = ℂ`.
//!
//! The product of two spanning monomials is again a monomial or zero:
//! `M(x,a,y)·M(s,b,t) = 0` if `Py ∩ Ps = ∅`, and otherwise, writing the
//! left lcm as `z = ry = qs`,
//! `M(x,a,y)·M(s,b,t) = M(rx, τ_r(a·1_y)·τ_q(1_s·b), qt)`.
//! For the trivial system the middle factor is the product of the scalars.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bp::{rational_string, BpFunction};
use crate::covariance::RepresentationSpec;
use crate::error::{Error, Result};
use crate::operators::BasisPoint;
use crate::semigroup::{split_top_level, Element, Ideal, Semigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    /// `(B_P, P, τ)`.
    Diagonal,
    /// `(ℂ, P, id)`; coefficients are scalar multiples of `1_e`.
    Scalar,
}

/// `i_P(x)* i_A(f) i_P(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningMonomial {
    pub x: Element,
    pub f: BpFunction,
    pub y: Element,
}

impl SpanningMonomial {
    pub fn new(x: &Element, f: &BpFunction, y: &Element) -> Result<SpanningMonomial> {
        f.semigroup().check(x)?;
        f.semigroup().check(y)?;
        Ok(SpanningMonomial {
            x: x.clone(),
            f: f.clone(),
            y: y.clone(),
        })
    }

    /// Parses `x | f | y`, with `f` in the syntax of [`parse_bp_function`].
    pub fn parse(semigroup: &Semigroup, text: &str) -> Result<SpanningMonomial> {
        let parts: Vec<&str> = text.split('|').collect();
        let [x, f, y] = parts.as_slice() else {
            return Err(Error::Parse(format!("`{text}` is not of the form `x | f | y`")));
        };
        Self::new(
            &semigroup.parse_element(x)?,
            &parse_bp_function(semigroup, f)?,
            &semigroup.parse_element(y)?,
        )
    }
}

impl fmt::Display for SpanningMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}, {}, {})", self.x, self.f, self.y)
    }
}

/// Parses `0` or a signed sum of terms `1_u` / `c*1_u` / `c·1_u` with `c` an
/// integer or `p/q`.
pub fn parse_bp_function(semigroup: &Semigroup, text: &str) -> Result<BpFunction> {
    let text = text.trim();
    let bad = |why: &str| Error::Parse(format!("`{text}` is not a B_P function: {why}"));
    if text == "0" {
        return Ok(BpFunction::zero(semigroup));
    }
    let mut terms = Vec::new();
    let mut sign = BigRational::one();
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
            continue;
        }
        // The term runs to the next top-level sign; elements contain none.
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = rest[..end].trim();
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let (coeff, indicator) = match term.split_once(['*', '·']) {
            Some((c, i)) => (
                c.trim().parse::<BigRational>().map_err(|_| bad("bad coefficient"))?,
                i.trim(),
            ),
            None => (BigRational::one(), term),
        };
        let u = indicator
            .strip_prefix("1_")
            .ok_or_else(|| bad("terms look like `1_u`"))?;
        let u = match u {
            "e" => semigroup.identity(),
            u => semigroup.parse_element(u)?,
        };
        terms.push((u, sign.clone() * coeff));
        sign = BigRational::one();
        rest = &rest[end..];
        if rest.is_empty() {
            break;
        }
    }
    BpFunction::from_terms(semigroup, terms)
}

/// Replaces `f` by `f·1_x·1_y`, which represents the same operator.
pub fn cp_normalize(m: &SpanningMonomial) -> Result<SpanningMonomial> {
    let d = m.f.semigroup();
    let f =
        m.f.multiply(&BpFunction::indicator(d, &m.x)?)?
            .multiply(&BpFunction::indicator(d, &m.y)?)?;
    SpanningMonomial::new(&m.x, &f, &m.y)
}

/// A finite combination of spanning monomials keyed by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedProductElement {
    semigroup: Semigroup,
    system: System,
    /// No zero functions; diagonal terms are normalized.
    terms: BTreeMap<(Element, Element), BpFunction>,
}

impl CrossedProductElement {
    pub fn zero(semigroup: &Semigroup, system: System) -> CrossedProductElement {
        CrossedProductElement {
            semigroup: semigroup.clone(),
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: &SpanningMonomial, system: System) -> Result<CrossedProductElement> {
        let mut out = Self::zero(m.f.semigroup(), system);
        out.add_monomial(m.clone())?;
        Ok(out)
    }

    /// `M(e, 1_e, e)`.
    pub fn unit(semigroup: &Semigroup, system: System) -> CrossedProductElement {
        let e = semigroup.identity();
        let m = SpanningMonomial {
            x: e.clone(),
            f: BpFunction::unit(semigroup),
            y: e,
        };
        Self::from_monomial(&m, system).expect("unit monomial is valid")
    }

    fn add_monomial(&mut self, m: SpanningMonomial) -> Result<()> {
        if m.f.semigroup() != &self.semigroup {
            return Err(Error::Descriptor(format!(
                "monomial over {} added to element over {}",
                m.f.semigroup(),
                self.semigroup
            )));
        }
        let m = match self.system {
            System::Diagonal => cp_normalize(&m)?,
            System::Scalar => {
                if m.f.as_scalar().is_none() {
                    return Err(Error::Domain(format!("{} is not scalar in the trivial system", m.f)));
                }
                m
            }
        };
        let key = (m.x, m.y);
        let sum = match self.terms.remove(&key) {
            Some(g) => g.add(&m.f)?,
            None => m.f,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> Vec<SpanningMonomial> {
        self.terms
            .iter()
            .map(|((x, y), f)| SpanningMonomial {
                x: x.clone(),
                f: f.clone(),
                y: y.clone(),
            })
            .collect()
    }

    fn compatible(&self, other: &CrossedProductElement) -> Result<()> {
        if self.semigroup != other.semigroup || self.system != other.system {
            return Err(Error::Descriptor(format!(
                "crossed products over {} ({:?}) and {} ({:?}) do not combine",
                self.semigroup, self.system, other.semigroup, other.system
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CrossedProductElement) -> Result<CrossedProductElement> {
        self.compatible(other)?;
        let mut out = self.clone();
        for m in other.monomials() {
            out.add_monomial(m)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> CrossedProductElement {
        let mut out = Self::zero(&self.semigroup, self.system);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, f)| (k.clone(), f.scale(c))).collect();
        }
        out
    }

    /// Bilinear extension of the monomial product rule.
    pub fn multiply(&self, other: &CrossedProductElement) -> Result<CrossedProductElement> {
        self.compatible(other)?;
        let d = &self.semigroup;
        let mut out = Self::zero(d, self.system);
        for ((x, y), a) in &self.terms {
            for ((s, t), b) in &other.terms {
                let Some(z) = d.lcm(y, s, Ideal::Left) else { continue };
                let r = d.quotient(&z, y, Ideal::Left).expect("z ∈ Py");
                let q = d.quotient(&z, s, Ideal::Left).expect("z ∈ Ps");
                let f = match self.system {
                    System::Diagonal => {
                        let left = a.multiply(&BpFunction::indicator(d, y)?)?.tau(&r)?;
                        let right = BpFunction::indicator(d, s)?.multiply(b)?.tau(&q)?;
                        left.multiply(&right)?
                    }
                    System::Scalar => {
                        let (la, lb) = (a.as_scalar().expect("scalar"), b.as_scalar().expect("scalar"));
                        BpFunction::unit(d).scale(&(la * lb))
                    }
                };
                out.add_monomial(SpanningMonomial {
                    x: d.mul(&r, x),
                    f,
                    y: d.mul(&q, t),
                })?;
            }
        }
        Ok(out)
    }

    /// `M(x,f,y)* = M(y,f,x)`; coefficients are real.
    pub fn adjoint(&self) -> CrossedProductElement {
        let mut out = Self::zero(&self.semigroup, self.system);
        out.terms = self
            .terms
            .iter()
            .map(|((x, y), f)| ((y.clone(), x.clone()), f.clone()))
            .collect();
        out
    }

    /// Evaluates `Σ V_x* π(f) V_y` at `b`. The diagonal system needs a
    /// covariant pair; the trivial one multiplies `V_x*V_y` by the scalar.
    pub fn represent(&self, rep: &RepresentationSpec, b: &BasisPoint) -> Result<Vec<(BigRational, BasisPoint)>> {
        if rep.semigroup() != &self.semigroup {
            return Err(Error::Carrier(format!(
                "element over {} represented by {} over {}",
                self.semigroup,
                rep.name(),
                rep.semigroup()
            )));
        }
        rep.space().check_point(b)?;
        let mut acc: BTreeMap<BasisPoint, BigRational> = BTreeMap::new();
        for ((x, y), f) in &self.terms {
            let vx = rep.assign(x)?.adjoint();
            let vy = rep.assign(y)?;
            let outcome = match self.system {
                System::Diagonal => vx.compose(&rep.diag(f)?)?.compose(&vy)?.apply_unchecked(b),
                System::Scalar => {
                    let scalar = f.as_scalar().expect("scalar");
                    vx.compose(&vy)?.apply_unchecked(b).map(|(c, p)| (c * scalar, p))
                }
            };
            if let Some((c, p)) = outcome {
                *acc.entry(p).or_insert_with(BigRational::zero) += c;
            }
        }
        Ok(acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (c, p))
            .collect())
    }

    /// `[{"x", "y", "f", "coeff"}]`, with `f` scaled so that its first
    /// coefficient is 1 and `coeff` carrying the scale.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((x, y), f)| {
                    let lead = f.terms().values().next().cloned().expect("nonzero term");
                    json!({
                        "x": x.to_string(),
                        "y": y.to_string(),
                        "f": f.scale(&lead.recip()).to_json(),
                        "coeff": rational_string(&lead),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for CrossedProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.monomials().iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses a `+`-free list of monomials separated by `;` at top level.
pub fn parse_element_list(semigroup: &Semigroup, system: System, text: &str) -> Result<CrossedProductElement> {
    let mut out = CrossedProductElement::zero(semigroup, system);
    for piece in split_top_level(text, ';') {
        out.add_monomial(SpanningMonomial::parse(semigroup, piece)?)?;
    }
    Ok(out)
}
