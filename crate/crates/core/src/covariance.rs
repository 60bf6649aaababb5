//! Representations of semigroups by monomial operators and pointwise checkers
//! for the covariance conditions they may satisfy.
//!
//! Every check compares two operators on a finite window of basis points with
//! exact arithmetic. A failing report carries genuine counterexamples; a
//! passing one certifies the identity on the inspected window only.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;

use crate::bp::{check_action_left_nica, BpFunction};
use crate::error::{Error, Result};
use crate::operators::{format_outcome, Atom, BasisPoint, Operator, Space};
use crate::report::{CheckReport, Witness, MAX_WITNESSES};
use crate::semigroup::{Element, Ideal, Semigroup};
use crate::window::WindowSpec;

type AssignFn = dyn Fn(&Element) -> Result<Operator> + Send + Sync;
type DiagFn = dyn Fn(&BpFunction) -> Result<Operator> + Send + Sync;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepresentationKind {
    /// `x ↦ W_x` on `ℓ²(P)`.
    CanonicalW,
    /// `x ↦ S_x` on `ℓ²(P)`, a representation of the opposite semigroup.
    CanonicalS,
    /// `x ↦ V_x` on the compressed space, with `f ↦ ρ(f)`.
    Compressed,
    /// Free monoid on `ℓ²(ℕ)`, every word `w ↦ W_{|w|}`.
    DegenerateFree,
}

impl RepresentationKind {
    pub const ALL: [RepresentationKind; 4] = [
        RepresentationKind::CanonicalW,
        RepresentationKind::CanonicalS,
        RepresentationKind::Compressed,
        RepresentationKind::DegenerateFree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepresentationKind::CanonicalW => "canonical_W",
            RepresentationKind::CanonicalS => "canonical_S",
            RepresentationKind::Compressed => "compressed",
            RepresentationKind::DegenerateFree => "degenerate_free",
        }
    }
}

impl fmt::Display for RepresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepresentationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown representation `{s}`")))
    }
}

/// A map `x ↦ V_x` into monomial operators on a fixed space, optionally with
/// a diagonal map `f ↦ π(f)` forming a covariant pair.
#[derive(Clone)]
pub struct RepresentationSpec {
    name: String,
    semigroup: Semigroup,
    space: Space,
    assign: Arc<AssignFn>,
    diag: Option<Arc<DiagFn>>,
}

impl fmt::Debug for RepresentationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepresentationSpec")
            .field("name", &self.name)
            .field("semigroup", &self.semigroup)
            .field("space", &self.space)
            .field("diag", &self.diag.is_some())
            .finish()
    }
}

impl RepresentationSpec {
    pub fn new<F>(name: impl Into<String>, semigroup: &Semigroup, space: &Space, assign: F) -> RepresentationSpec
    where
        F: Fn(&Element) -> Result<Operator> + Send + Sync + 'static,
    {
        RepresentationSpec {
            name: name.into(),
            semigroup: semigroup.clone(),
            space: space.clone(),
            assign: Arc::new(assign),
            diag: None,
        }
    }

    /// Replaces the diagonal map.
    pub fn with_diag<F>(mut self, diag: F) -> RepresentationSpec
    where
        F: Fn(&BpFunction) -> Result<Operator> + Send + Sync + 'static,
    {
        self.diag = Some(Arc::new(diag));
        self
    }

    pub fn build(semigroup: &Semigroup, kind: RepresentationKind) -> Result<RepresentationSpec> {
        let d = semigroup.clone();
        Ok(match kind {
            RepresentationKind::CanonicalW => {
                let space = Space::sequence(&d);
                let sp = space.clone();
                Self::new(kind.name(), &d, &space, move |x| {
                    Operator::atom(&sp, Atom::CoShift(x.clone()))
                })
            }
            RepresentationKind::CanonicalS => {
                let space = Space::sequence(&d);
                let sp = space.clone();
                Self::new(kind.name(), &d.clone().opposite(), &space, move |x| {
                    Operator::atom(&sp, Atom::Shift(x.clone()))
                })
            }
            RepresentationKind::Compressed => {
                let space = Space::compressed(&d);
                let sp = space.clone();
                Self::new(kind.name(), &d, &space, move |x| {
                    Operator::atom(&sp, Atom::CompressedShift(x.clone()))
                })
                .with_diag(|f| Ok(Operator::compressed_diag(f)))
            }
            RepresentationKind::DegenerateFree => {
                if !matches!(d, Semigroup::Free { .. }) {
                    return Err(Error::Descriptor(format!(
                        "degenerate_free needs a free monoid, got {d}"
                    )));
                }
                let space = Space::sequence(&Semigroup::Naturals { rank: 1 });
                let sp = space.clone();
                Self::new(kind.name(), &d, &space, move |x| match x {
                    Element::Word(w) => Operator::atom(&sp, Atom::CoShift(Element::Vector(vec![w.len() as u64]))),
                    other => Err(Error::Shape {
                        semigroup: "Free".into(),
                        element: other.to_string(),
                    }),
                })
            }
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn has_diag(&self) -> bool {
        self.diag.is_some()
    }

    /// `V_x`.
    pub fn assign(&self, x: &Element) -> Result<Operator> {
        self.semigroup.check(x)?;
        let op = (self.assign)(x)?;
        if op.space() != &self.space {
            return Err(Error::Carrier(format!(
                "{} assigned an operator on {}",
                self.name,
                op.space()
            )));
        }
        Ok(op)
    }

    /// `π(f)`.
    pub fn diag(&self, f: &BpFunction) -> Result<Operator> {
        let diag = self
            .diag
            .as_ref()
            .ok_or_else(|| Error::Usage(format!("representation {} has no diagonal map", self.name)))?;
        let op = diag(f)?;
        if op.space() != &self.space {
            return Err(Error::Carrier(format!("{} diagonal acts on {}", self.name, op.space())));
        }
        Ok(op)
    }

    /// Default basis window for an element window: the doubled window, so the
    /// products and lcms of tested pairs are inspected. For `degenerate_free`
    /// the basis is `ℓ²(ℕ)` up to twice the maximal word length.
    pub fn basis_for(&self, spec: &WindowSpec) -> Result<Vec<BasisPoint>> {
        let doubled = spec.doubled();
        let base = doubled.semigroup();
        if base == self.space.semigroup || base.clone().opposite() == self.space.semigroup {
            return Ok(self.space.basis_window(&doubled.enumerate()?));
        }
        match (&doubled, &self.space.semigroup) {
            (WindowSpec::Free { max_len, .. }, Semigroup::Naturals { rank: 1 }) => {
                let points: Vec<Element> = (0..=*max_len as u64).map(|k| Element::Vector(vec![k])).collect();
                Ok(self.space.basis_window(&points))
            }
            _ => Err(Error::Carrier(format!(
                "no default basis window of {} for elements of {base}",
                self.space
            ))),
        }
    }

    fn validate(&self, elements: &[Element], basis: &[BasisPoint]) -> Result<()> {
        for x in elements {
            self.semigroup.check(x)?;
        }
        for b in basis {
            self.space.check_point(b)?;
        }
        Ok(())
    }
}

fn witnesses_between(
    lhs: &Operator,
    rhs: Option<&Operator>,
    basis: &[BasisPoint],
    elements: &[String],
) -> Vec<Witness> {
    basis
        .iter()
        .filter_map(|b| {
            let l = lhs.apply_unchecked(b);
            let r = rhs.and_then(|op| op.apply_unchecked(b));
            (l != r).then(|| Witness {
                elements: elements.to_vec(),
                basis_point: b.to_string(),
                lhs: format_outcome(&l),
                rhs: format_outcome(&r),
            })
        })
        .take(MAX_WITNESSES)
        .collect()
}

/// Runs `check` on every item in parallel and concatenates witnesses in item
/// order.
fn sweep<T, F>(items: &[T], check: F) -> Result<Vec<Witness>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Witness>> + Sync + Send,
{
    let chunks: Vec<Result<Vec<Witness>>> = items.par_iter().map(check).collect();
    let mut out = Vec::new();
    for chunk in chunks {
        out.extend(chunk?);
        if out.len() >= MAX_WITNESSES {
            break;
        }
    }
    Ok(out)
}

fn pairs(elements: &[Element]) -> Vec<(Element, Element)> {
    elements
        .iter()
        .flat_map(|x| elements.iter().map(move |y| (x.clone(), y.clone())))
        .collect()
}

/// `V_e = 1`, `V_xV_y = V_{xy}` and `V_xV_x*V_x = V_x` on the window.
pub fn check_piso_rep(rep: &RepresentationSpec, elements: &[Element], basis: &[BasisPoint]) -> Result<CheckReport> {
    rep.validate(elements, basis)?;
    let d = rep.semigroup();
    let e = d.identity();
    let mut witnesses = witnesses_between(
        &rep.assign(&e)?,
        Some(&Operator::identity(rep.space())),
        basis,
        &[e.to_string()],
    );
    witnesses.extend(sweep(elements, |x| {
        let v = rep.assign(x)?;
        let vvv = Operator::product(&[&v, &v.adjoint(), &v])?;
        Ok(witnesses_between(&vvv, Some(&v), basis, &[x.to_string()]))
    })?);
    witnesses.extend(sweep(&pairs(elements), |(x, y)| {
        let lhs = rep.assign(x)?.compose(&rep.assign(y)?)?;
        let rhs = rep.assign(&d.mul(x, y))?;
        Ok(witnesses_between(
            &lhs,
            Some(&rhs),
            basis,
            &[x.to_string(), y.to_string()],
        ))
    })?);
    Ok(CheckReport::new("piso_rep", d, witnesses))
}

/// `V*V` (initial projection) for `Ideal::Left`, `VV*` (range projection)
/// for `Ideal::Right`.
fn projection(v: &Operator, side: Ideal) -> Result<Operator> {
    match side {
        Ideal::Left => v.adjoint().compose(v),
        Ideal::Right => v.compose(&v.adjoint()),
    }
}

fn check_nica(
    rep: &RepresentationSpec,
    elements: &[Element],
    basis: &[BasisPoint],
    side: Ideal,
    name: &str,
) -> Result<CheckReport> {
    rep.validate(elements, basis)?;
    let d = rep.semigroup();
    let witnesses = sweep(&pairs(elements), |(x, y)| {
        let lhs = projection(&rep.assign(x)?, side)?.compose(&projection(&rep.assign(y)?, side)?)?;
        let rhs = match d.lcm(x, y, side) {
            Some(z) => Some(projection(&rep.assign(&z)?, side)?),
            None => None,
        };
        Ok(witnesses_between(
            &lhs,
            rhs.as_ref(),
            basis,
            &[x.to_string(), y.to_string()],
        ))
    })?;
    Ok(CheckReport::new(name, d, witnesses))
}

/// `V_x*V_xV_y*V_y = V_z*V_z` when `Px ∩ Py = Pz`, and `0` when empty.
pub fn check_right_nica(rep: &RepresentationSpec, elements: &[Element], basis: &[BasisPoint]) -> Result<CheckReport> {
    check_nica(rep, elements, basis, Ideal::Left, "right_nica")
}

/// `V_xV_x*V_yV_y* = V_zV_z*` when `xP ∩ yP = zP`, and `0` when empty.
pub fn check_left_nica(rep: &RepresentationSpec, elements: &[Element], basis: &[BasisPoint]) -> Result<CheckReport> {
    check_nica(rep, elements, basis, Ideal::Right, "left_nica")
}

/// Covariance of `(π, V)` for `α = τ`, with each witness tagged by the
/// relation it violates as its first element:
/// `cov1`: `π(τ_x f) = V_xπ(f)V_x*`;
/// `commute`: `V_x*V_xπ(f) = π(f)V_x*V_x`;
/// `cov2`: `V_xV_x* = π(1_x)`.
pub fn check_covariant_pair(
    rep: &RepresentationSpec,
    elements: &[Element],
    generators: &[BpFunction],
    basis: &[BasisPoint],
) -> Result<CheckReport> {
    rep.validate(elements, basis)?;
    if !rep.has_diag() {
        return Err(Error::Usage(format!("{} is not a covariant pair", rep.name())));
    }
    let d = rep.semigroup();
    for f in generators {
        if f.semigroup() != d {
            return Err(Error::Descriptor(format!("generator {f} lives over {}", f.semigroup())));
        }
    }
    let witnesses = sweep(elements, |x| {
        let v = rep.assign(x)?;
        let vs = v.adjoint();
        let initial = vs.compose(&v)?;
        let mut out = Vec::new();
        for f in generators {
            let pf = rep.diag(f)?;
            let tag = |t: &str| [t.to_string(), x.to_string(), f.to_string()];
            out.extend(witnesses_between(
                &rep.diag(&f.tau(x)?)?,
                Some(&Operator::product(&[&v, &pf, &vs])?),
                basis,
                &tag("cov1"),
            ));
            out.extend(witnesses_between(
                &initial.compose(&pf)?,
                Some(&pf.compose(&initial)?),
                basis,
                &tag("commute"),
            ));
        }
        out.extend(witnesses_between(
            &v.compose(&vs)?,
            Some(&rep.diag(&BpFunction::indicator(d, x)?)?),
            basis,
            &["cov2".to_string(), x.to_string()],
        ));
        Ok(out)
    })?;
    Ok(CheckReport::new("covariant_pair", d, witnesses))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AuditKind {
    /// Free monoid: right Nica iff generator initial projections are orthogonal.
    FreeRight,
    /// Free monoid: left Nica iff generator range projections are orthogonal.
    FreeLeft,
    /// ℕ^×: bicovariant iff `V_m*V_n = V_nV_m*` for coprime `m, n`.
    NTimesBicov,
    /// ℕ²: bicovariant iff `U_{(m,n)} = V^mW^n` for *-commuting power partial
    /// isometries `V = U_{(1,0)}`, `W = U_{(0,1)}`.
    N2Bicov,
}

impl AuditKind {
    pub const ALL: [AuditKind; 4] = [
        AuditKind::FreeRight,
        AuditKind::FreeLeft,
        AuditKind::NTimesBicov,
        AuditKind::N2Bicov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AuditKind::FreeRight => "free_right",
            AuditKind::FreeLeft => "free_left",
            AuditKind::NTimesBicov => "ntimes_bicov",
            AuditKind::N2Bicov => "n2_bicov",
        }
    }
}

impl FromStr for AuditKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown audit `{s}`")))
    }
}

/// Both sides of a characterization, evaluated independently.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub kind: AuditKind,
    pub semigroup: String,
    /// The structural criterion of the characterization.
    pub criterion: CheckReport,
    /// The covariance conditions themselves.
    pub direct: Vec<CheckReport>,
}

impl AuditReport {
    pub fn criterion_holds(&self) -> bool {
        self.criterion.passed()
    }

    pub fn direct_holds(&self) -> bool {
        self.direct.iter().all(CheckReport::passed)
    }

    pub fn agree(&self) -> bool {
        self.criterion_holds() == self.direct_holds()
    }

    /// Passes iff the verdicts agree; a disagreement carries the witnesses of
    /// the failing side.
    pub fn to_check_report(&self) -> CheckReport {
        let witnesses = if self.agree() {
            Vec::new()
        } else {
            std::iter::once(&self.criterion)
                .chain(&self.direct)
                .flat_map(|r| r.witnesses.iter().cloned())
                .collect()
        };
        CheckReport::new(format!("audit_{}", self.kind.name()), &self.semigroup, witnesses)
    }
}

fn require(rep: &RepresentationSpec, ok: bool, kind: AuditKind) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Descriptor(format!(
            "audit {} does not apply to {}",
            kind.name(),
            rep.semigroup()
        )))
    }
}

pub fn criterion_equivalence_audit(
    rep: &RepresentationSpec,
    kind: AuditKind,
    elements: &[Element],
    basis: &[BasisPoint],
) -> Result<AuditReport> {
    rep.validate(elements, basis)?;
    let d = rep.semigroup();
    let (criterion, direct) = match kind {
        AuditKind::FreeRight | AuditKind::FreeLeft => {
            require(rep, matches!(d, Semigroup::Free { .. }), kind)?;
            let Semigroup::Free { generators } = d else {
                unreachable!()
            };
            let side = if kind == AuditKind::FreeRight {
                Ideal::Left
            } else {
                Ideal::Right
            };
            let letters: Vec<Element> = (0..*generators as u8).map(|l| Element::Word(vec![l])).collect();
            let projections = letters
                .iter()
                .map(|a| projection(&rep.assign(a)?, side))
                .collect::<Result<Vec<_>>>()?;
            let mut witnesses = Vec::new();
            for i in 0..letters.len() {
                for j in 0..letters.len() {
                    if i != j {
                        let product = projections[i].compose(&projections[j])?;
                        witnesses.extend(witnesses_between(
                            &product,
                            None,
                            basis,
                            &[letters[i].to_string(), letters[j].to_string()],
                        ));
                    }
                }
            }
            let name = if side == Ideal::Left {
                "orthogonal_initial"
            } else {
                "orthogonal_range"
            };
            let direct = if side == Ideal::Left {
                check_right_nica(rep, elements, basis)?
            } else {
                check_left_nica(rep, elements, basis)?
            };
            (CheckReport::new(name, d, witnesses), vec![direct])
        }
        AuditKind::NTimesBicov => {
            require(rep, *d == Semigroup::PositiveIntegers, kind)?;
            let coprime: Vec<(Element, Element)> = pairs(elements)
                .into_iter()
                .filter(|(m, n)| match (m, n) {
                    (Element::Integer(m), Element::Integer(n)) => m.gcd(n) == 1u32.into(),
                    _ => false,
                })
                .collect();
            let witnesses = sweep(&coprime, |(m, n)| {
                let vm = rep.assign(m)?;
                let vn = rep.assign(n)?;
                Ok(witnesses_between(
                    &vm.adjoint().compose(&vn)?,
                    Some(&vn.compose(&vm.adjoint())?),
                    basis,
                    &[m.to_string(), n.to_string()],
                ))
            })?;
            (
                CheckReport::new("coprime_star_commute", d, witnesses),
                vec![
                    check_right_nica(rep, elements, basis)?,
                    check_left_nica(rep, elements, basis)?,
                ],
            )
        }
        AuditKind::N2Bicov => {
            require(rep, *d == Semigroup::Naturals { rank: 2 }, kind)?;
            let v = rep.assign(&Element::Vector(vec![1, 0]))?;
            let w = rep.assign(&Element::Vector(vec![0, 1]))?;
            let mut witnesses = star_commute_witnesses(&v, &w, basis, &["(1,0)".into(), "(0,1)".into()])?;
            let top = elements
                .iter()
                .filter_map(|x| match x {
                    Element::Vector(c) => c.iter().copied().max(),
                    _ => None,
                })
                .max()
                .unwrap_or(0);
            let power = |op: &Operator, k: u64| -> Result<Operator> {
                (0..k).try_fold(Operator::identity(rep.space()), |acc, _| acc.compose(op))
            };
            for k in 1..=top {
                for (label, op) in [("V", &v), ("W", &w)] {
                    let p = power(op, k)?;
                    witnesses.extend(witnesses_between(
                        &Operator::product(&[&p, &p.adjoint(), &p])?,
                        Some(&p),
                        basis,
                        &[format!("{label}^{k}")],
                    ));
                }
            }
            witnesses.extend(sweep(elements, |x| {
                let Element::Vector(c) = x else {
                    unreachable!("validated")
                };
                let vw = power(&v, c[0])?.compose(&power(&w, c[1])?)?;
                Ok(witnesses_between(&rep.assign(x)?, Some(&vw), basis, &[x.to_string()]))
            })?);
            (
                CheckReport::new("star_commuting_powers", d, witnesses),
                vec![
                    check_right_nica(rep, elements, basis)?,
                    check_left_nica(rep, elements, basis)?,
                ],
            )
        }
    };
    Ok(AuditReport {
        kind,
        semigroup: d.to_string(),
        criterion,
        direct,
    })
}

fn star_commute_witnesses(v: &Operator, w: &Operator, basis: &[BasisPoint], labels: &[String]) -> Result<Vec<Witness>> {
    let mut out = witnesses_between(&v.compose(w)?, Some(&w.compose(v)?), basis, labels);
    out.extend(witnesses_between(
        &v.adjoint().compose(w)?,
        Some(&w.compose(&v.adjoint())?),
        basis,
        labels,
    ));
    Ok(out)
}

/// Result of [`product_rep`]: the *-commutation precheck and, when it passes,
/// the representation `U_{(p,s)} = V_pW_s` of the direct product.
#[derive(Clone, Debug)]
pub struct ProductRepresentation {
    pub precheck: CheckReport,
    pub rep: Option<RepresentationSpec>,
}

pub fn product_rep(
    v: &RepresentationSpec,
    w: &RepresentationSpec,
    elements_v: &[Element],
    elements_w: &[Element],
    basis: &[BasisPoint],
) -> Result<ProductRepresentation> {
    if v.space() != w.space() {
        return Err(Error::Carrier(format!("{} vs {}", v.space(), w.space())));
    }
    v.validate(elements_v, basis)?;
    w.validate(elements_w, &[])?;
    let grid: Vec<(Element, Element)> = elements_v
        .iter()
        .flat_map(|p| elements_w.iter().map(move |s| (p.clone(), s.clone())))
        .collect();
    let witnesses = sweep(&grid, |(p, s)| {
        star_commute_witnesses(&v.assign(p)?, &w.assign(s)?, basis, &[p.to_string(), s.to_string()])
    })?;
    let semigroup = Semigroup::Product(vec![v.semigroup().clone(), w.semigroup().clone()]);
    let precheck = CheckReport::new("star_commute", &semigroup, witnesses);
    let rep = precheck.passed().then(|| {
        let (v, w) = (v.clone(), w.clone());
        RepresentationSpec::new(
            format!("{}×{}", v.name(), w.name()),
            &semigroup,
            &v.space().clone(),
            move |x| match x {
                Element::Tuple(parts) if parts.len() == 2 => v.assign(&parts[0])?.compose(&w.assign(&parts[1])?),
                other => Err(Error::Shape {
                    semigroup: "product".into(),
                    element: other.to_string(),
                }),
            },
        )
    });
    Ok(ProductRepresentation { precheck, rep })
}

/// Splits a representation `U` of `P × Q` into `p ↦ U_{(p,e)}` and
/// `s ↦ U_{(e,s)}`.
pub fn decompose(u: &RepresentationSpec) -> Result<(RepresentationSpec, RepresentationSpec)> {
    let Semigroup::Product(parts) = u.semigroup() else {
        return Err(Error::Descriptor(format!("{} is not a direct product", u.semigroup())));
    };
    let [p, q] = parts.as_slice() else {
        return Err(Error::Descriptor(format!(
            "{} has more than two factors",
            u.semigroup()
        )));
    };
    let (ep, eq) = (p.identity(), q.identity());
    let (u1, u2) = (u.clone(), u.clone());
    let left = RepresentationSpec::new(format!("{}|first", u.name()), p, u.space(), move |x| {
        u1.assign(&Element::Tuple(vec![x.clone(), eq.clone()]))
    });
    let right = RepresentationSpec::new(format!("{}|second", u.name()), q, u.space(), move |x| {
        u2.assign(&Element::Tuple(vec![ep.clone(), x.clone()]))
    });
    Ok((left, right))
}

/// Check names accepted by [`run_checks`].
pub const CHECK_NAMES: [&str; 9] = [
    "piso_rep",
    "right_nica",
    "left_nica",
    "covariant_pair",
    "action_left_nica",
    "audit_free_right",
    "audit_free_left",
    "audit_ntimes_bicov",
    "audit_n2_bicov",
];

/// Runs the named checks for the built-in representation `kind` over the
/// window `spec`, on the default basis window. `covariant_pair` uses the
/// indicators of `generators`, or of the whole window when `None`.
pub fn run_checks(
    spec: &WindowSpec,
    kind: RepresentationKind,
    checks: &[&str],
    generators: Option<&[Element]>,
) -> Result<Vec<CheckReport>> {
    let d = spec.semigroup();
    let elements = spec.enumerate()?;
    let rep = RepresentationSpec::build(&d, kind)?;
    let basis = rep.basis_for(spec)?;
    checks
        .iter()
        .map(|&check| match check {
            "piso_rep" => check_piso_rep(&rep, &elements, &basis),
            "right_nica" => check_right_nica(&rep, &elements, &basis),
            "left_nica" => check_left_nica(&rep, &elements, &basis),
            "covariant_pair" => {
                let generators = generators
                    .unwrap_or(&elements)
                    .iter()
                    .map(|u| BpFunction::indicator(rep.semigroup(), u))
                    .collect::<Result<Vec<_>>>()?;
                check_covariant_pair(&rep, &elements, &generators, &basis)
            }
            "action_left_nica" => check_action_left_nica(&d, &elements, &spec.doubled().enumerate()?),
            other => match other.strip_prefix("audit_") {
                Some(audit) => {
                    Ok(criterion_equivalence_audit(&rep, audit.parse()?, &elements, &basis)?.to_check_report())
                }
                None => Err(Error::Usage(format!(
                    "unknown check `{other}`; expected one of {}",
                    CHECK_NAMES.join(", ")
                ))),
            },
        })
        .collect()
}
