//! The diagonal algebra `B_P` spanned by the characteristic functions `1_y`
//! of principal right ideals `yP`.
//!
//! Products follow `1_x·1_y = 1_z` when `xP ∩ yP = zP` (and `0` when the
//! intersection is empty); the shift action is `τ_x(1_y) = 1_{xy}`. Since the
//! functions `1_u` are linearly independent, the stored combination is a
//! canonical form: two functions are equal iff their term maps are.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::{CheckReport, Witness};
use crate::semigroup::{Element, Ideal, Semigroup};

/// Largest family accepted by [`qa_decomposition`] and the norm formula.
pub const MAX_FAMILY: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpFunction {
    semigroup: Semigroup,
    /// No zero coefficients.
    terms: BTreeMap<Element, BigRational>,
}

/// Renders a rational as `p` or `p/q`.
pub fn rational_string(q: &BigRational) -> String {
    q.to_string()
}

impl BpFunction {
    pub fn zero(semigroup: &Semigroup) -> BpFunction {
        BpFunction {
            semigroup: semigroup.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1_e`.
    pub fn unit(semigroup: &Semigroup) -> BpFunction {
        Self::single(semigroup, semigroup.identity(), BigRational::one())
    }

    pub fn indicator(semigroup: &Semigroup, u: &Element) -> Result<BpFunction> {
        semigroup.check(u)?;
        Ok(Self::single(semigroup, u.clone(), BigRational::one()))
    }

    fn single(semigroup: &Semigroup, u: Element, coeff: BigRational) -> BpFunction {
        let mut f = Self::zero(semigroup);
        f.add_term(u, coeff);
        f
    }

    /// `Σ λ_u 1_u`; repeated `u` accumulate.
    pub fn from_terms<I>(semigroup: &Semigroup, terms: I) -> Result<BpFunction>
    where
        I: IntoIterator<Item = (Element, BigRational)>,
    {
        let mut f = Self::zero(semigroup);
        for (u, c) in terms {
            semigroup.check(&u)?;
            f.add_term(u, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, u: Element, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(u) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn terms(&self) -> &BTreeMap<Element, BigRational> {
        &self.terms
    }

    pub fn support(&self) -> Vec<Element> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(λ)` when the function is `λ·1_e` (including `λ = 0`).
    pub fn as_scalar(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&self.semigroup.identity()).cloned(),
            _ => None,
        }
    }

    fn same_algebra(&self, other: &BpFunction) -> Result<()> {
        if self.semigroup == other.semigroup {
            Ok(())
        } else {
            Err(Error::Descriptor(format!(
                "B_P functions over {} and {} do not combine",
                self.semigroup, other.semigroup
            )))
        }
    }

    pub fn add(&self, other: &BpFunction) -> Result<BpFunction> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (u, c) in &other.terms {
            out.add_term(u.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BpFunction) -> Result<BpFunction> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> BpFunction {
        if c.is_zero() {
            return Self::zero(&self.semigroup);
        }
        BpFunction {
            semigroup: self.semigroup.clone(),
            terms: self.terms.iter().map(|(u, v)| (u.clone(), v * c)).collect(),
        }
    }

    /// Bilinear extension of `1_u·1_v = 1_{u ∨ v}` (right lcm, `0` if absent).
    pub fn multiply(&self, other: &BpFunction) -> Result<BpFunction> {
        self.same_algebra(other)?;
        let mut out = Self::zero(&self.semigroup);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(z) = self.semigroup.lcm(u, v, Ideal::Right) {
                    out.add_term(z, a * b);
                }
            }
        }
        Ok(out)
    }

    /// `τ_x`: linear extension of `1_y ↦ 1_{xy}`.
    pub fn tau(&self, x: &Element) -> Result<BpFunction> {
        self.semigroup.check(x)?;
        let mut out = Self::zero(&self.semigroup);
        for (u, c) in &self.terms {
            out.add_term(self.semigroup.mul(x, u), c.clone());
        }
        Ok(out)
    }

    /// `f(r) = Σ_{u : r ∈ uP} λ_u`.
    pub fn evaluate(&self, r: &Element) -> Result<BigRational> {
        self.semigroup.check(r)?;
        Ok(self.eval_unchecked(r))
    }

    pub(crate) fn eval_unchecked(&self, r: &Element) -> BigRational {
        let mut acc = BigRational::zero();
        for (u, c) in &self.terms {
            if self.semigroup.divides(r, u, Ideal::Right) {
                acc += c;
            }
        }
        acc
    }

    /// `[{"u": .., "coeff": ..}]` sorted by element.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(u, c)| json!({"u": u.to_string(), "coeff": rational_string(c)}))
                .collect(),
        )
    }
}

impl fmt::Display for BpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (u, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}·")?;
            }
            write!(f, "1_{u}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetEntry {
    /// Members of `A`, in family order.
    pub subset: Vec<Element>,
    /// `σA`; `σ∅ = e`.
    pub sigma: Option<Element>,
    pub nonzero: bool,
    pub projection: BpFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionFamilyReport {
    pub semigroup: Semigroup,
    /// The family `F`, sorted and deduplicated.
    pub family: Vec<Element>,
    /// One entry per subset, indexed by bitmask over `family`.
    pub entries: Vec<SubsetEntry>,
}

impl ProjectionFamilyReport {
    /// `Σ_A Q_A`, which is `1_e`.
    pub fn sum(&self) -> BpFunction {
        self.entries.iter().fold(BpFunction::zero(&self.semigroup), |acc, e| {
            acc.add(&e.projection).expect("same algebra")
        })
    }

    /// Pairs `(A, B)`, `A < B` as bitmasks, with `Q_A·Q_B ≠ 0`.
    pub fn overlapping_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.entries.len() {
            for b in a + 1..self.entries.len() {
                let product = self.entries[a]
                    .projection
                    .multiply(&self.entries[b].projection)
                    .expect("same algebra");
                if !product.is_zero() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let show = |xs: &[Element]| xs.iter().map(Element::to_string).collect::<Vec<_>>();
        json!({
            "semigroup": self.semigroup.to_string(),
            "family": show(&self.family),
            "entries": self.entries.iter().map(|e| json!({
                "subset": show(&e.subset),
                "sigma": e.sigma.as_ref().map(Element::to_string),
                "nonzero": e.nonzero,
                "projection": e.projection.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn normalized_family(semigroup: &Semigroup, family: &[Element]) -> Result<Vec<Element>> {
    if family.is_empty() {
        return Err(Error::Usage("empty family".into()));
    }
    for x in family {
        semigroup.check(x)?;
    }
    let mut family = family.to_vec();
    family.sort();
    family.dedup();
    if family.len() > MAX_FAMILY {
        return Err(Error::Resource(format!(
            "family of {} elements exceeds the limit of {MAX_FAMILY}",
            family.len()
        )));
    }
    Ok(family)
}

/// The orthogonal projections `Q_A`, `A ⊆ F`, resolving `1_e`.
///
/// `Q_∅ = Π_{x∈F}(1 − 1_x)`, `Q_F = 1_{σF}` and, for nonempty proper `A`,
/// `Q_A = Π_{x∈F∖A}(1_{σA} − 1_{σA ∨ x})` (zero when `σA` does not exist).
/// For nonempty `A`, `Q_A ≠ 0` iff `σA` exists and `A = {x ∈ F : σA ∈ xP}`;
/// `Q_∅ ≠ 0` iff it is nonzero at `e`.
pub fn qa_decomposition(semigroup: &Semigroup, family: &[Element]) -> Result<ProjectionFamilyReport> {
    let family = normalized_family(semigroup, family)?;
    let n = family.len();
    let unit = BpFunction::unit(semigroup);
    let full = (1usize << n) - 1;
    let entries = (0..=full)
        .map(|mask| {
            let subset: Vec<Element> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| family[i].clone())
                .collect();
            let outside = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| &family[i]);
            if mask == 0 {
                let mut q = unit.clone();
                for x in outside {
                    let factor = unit.sub(&BpFunction::indicator(semigroup, x)?)?;
                    q = q.multiply(&factor)?;
                }
                let nonzero = !q.eval_unchecked(&semigroup.identity()).is_zero();
                return Ok(SubsetEntry {
                    subset,
                    sigma: Some(semigroup.identity()),
                    nonzero,
                    projection: q,
                });
            }
            let sigma = semigroup.sigma(&subset)?;
            let Some(s) = sigma.clone() else {
                return Ok(SubsetEntry {
                    subset,
                    sigma,
                    nonzero: false,
                    projection: BpFunction::zero(semigroup),
                });
            };
            let l_sigma = BpFunction::indicator(semigroup, &s)?;
            let mut q = l_sigma.clone();
            for x in outside {
                let join = l_sigma.multiply(&BpFunction::indicator(semigroup, x)?)?;
                q = q.multiply(&l_sigma.sub(&join)?)?;
            }
            let nonzero = family
                .iter()
                .enumerate()
                .all(|(i, x)| (mask >> i & 1 == 1) == semigroup.divides(&s, x, Ideal::Right));
            Ok(SubsetEntry {
                subset,
                sigma,
                nonzero,
                projection: q,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectionFamilyReport {
        semigroup: semigroup.clone(),
        family,
        entries,
    })
}

#[derive(Clone, Copy, Debug)]
pub enum NormMethod<'a> {
    /// `max |Σ_{x∈A} λ_x|` over the subsets `A` of the support with `Q_A ≠ 0`.
    Formula,
    /// `max_r |f(r)|` over the given points.
    Window(&'a [Element]),
}

/// Supremum norm of `f` viewed as a function on `P`.
pub fn sup_norm(f: &BpFunction, method: NormMethod<'_>) -> Result<BigRational> {
    if f.is_zero() {
        return Ok(BigRational::zero());
    }
    match method {
        NormMethod::Formula => {
            let report = qa_decomposition(f.semigroup(), &f.support())?;
            let coeffs: Vec<&BigRational> = report.family.iter().map(|u| &f.terms[u]).collect();
            let mut best = BigRational::zero();
            for (mask, entry) in report.entries.iter().enumerate() {
                if !entry.nonzero {
                    continue;
                }
                let total: BigRational = (0..coeffs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| coeffs[i].clone())
                    .sum();
                best = best.max(total.abs());
            }
            Ok(best)
        }
        NormMethod::Window(points) => {
            let mut best = BigRational::zero();
            for r in points {
                best = best.max(f.evaluate(r)?.abs());
            }
            Ok(best)
        }
    }
}

fn value_outcome(v: &BigRational, r: &Element) -> String {
    if v.is_zero() {
        "0".into()
    } else if v.is_one() {
        format!("e[{r}]")
    } else {
        format!("{v}*e[{r}]")
    }
}

/// Left-Nica covariance of the action `τ`: for every pair of window elements,
/// `τ_x(1)·τ_y(1)` must be `1_z` when `xP ∩ yP = zP` and `0` otherwise.
///
/// Checked symbolically (witness basis point `"symbolic"`) and pointwise on
/// `points`, where the left side is the product of the indicators of `xP` and
/// `yP`.
pub fn check_action_left_nica(semigroup: &Semigroup, elements: &[Element], points: &[Element]) -> Result<CheckReport> {
    for x in elements.iter().chain(points) {
        semigroup.check(x)?;
    }
    let unit = BpFunction::unit(semigroup);
    let mut witnesses = Vec::new();
    for x in elements {
        let fx = unit.tau(x)?;
        for y in elements {
            let fy = unit.tau(y)?;
            let z = semigroup.lcm(x, y, Ideal::Right);
            let expected = match &z {
                Some(z) => BpFunction::indicator(semigroup, z)?,
                None => BpFunction::zero(semigroup),
            };
            let product = fx.multiply(&fy)?;
            let elems = vec![x.to_string(), y.to_string()];
            if product != expected {
                witnesses.push(Witness {
                    elements: elems.clone(),
                    basis_point: "symbolic".into(),
                    lhs: product.to_string(),
                    rhs: expected.to_string(),
                });
            }
            for r in points {
                let lhs = fx.eval_unchecked(r) * fy.eval_unchecked(r);
                let rhs = expected.eval_unchecked(r);
                if lhs != rhs {
                    witnesses.push(Witness {
                        elements: elems.clone(),
                        basis_point: format!("e[{r}]"),
                        lhs: value_outcome(&lhs, r),
                        rhs: value_outcome(&rhs, r),
                    });
                }
            }
        }
    }
    Ok(CheckReport::new("action_left_nica", semigroup, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::WindowSpec;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn n1() -> Semigroup {
        Semigroup::naturals(1).unwrap()
    }

    fn one(d: &Semigroup, s: &str) -> BpFunction {
        BpFunction::indicator(d, &d.parse_element(s).unwrap()).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let nx = Semigroup::PositiveIntegers;
        assert_eq!(one(&nx, "2").multiply(&one(&nx, "3")).unwrap(), one(&nx, "6"));
        let f2 = Semigroup::free(2).unwrap();
        assert!(one(&f2, "a").multiply(&one(&f2, "b")).unwrap().is_zero());
        let f = one(&f2, "ab").add(&one(&f2, "b").scale(&q(3))).unwrap();
        assert_eq!(BpFunction::unit(&f2).multiply(&f).unwrap(), f);
    }

    #[test]
    fn tau_examples() {
        let d = n1();
        assert_eq!(one(&d, "3").tau(&d.parse_element("2").unwrap()).unwrap(), one(&d, "5"));
        let f2 = Semigroup::free(2).unwrap();
        assert_eq!(one(&f2, "b").tau(&Element::word("a")).unwrap(), one(&f2, "ab"));
        let f = one(&f2, "b").sub(&one(&f2, "ab")).unwrap();
        assert_eq!(f.tau(&f2.identity()).unwrap(), f);
    }

    #[test]
    fn evaluate_examples() {
        let d = n1();
        let f = one(&d, "1").sub(&one(&d, "2")).unwrap();
        let at = |r: &str| f.evaluate(&d.parse_element(r).unwrap()).unwrap();
        assert_eq!((at("1"), at("2"), at("0")), (q(1), q(0), q(0)));
        let n2 = Semigroup::naturals(2).unwrap();
        assert_eq!(
            one(&n2, "(1,0)").evaluate(&n2.parse_element("(0,3)").unwrap()).unwrap(),
            q(0)
        );
        assert_eq!(
            BpFunction::unit(&n2)
                .evaluate(&n2.parse_element("(4,3)").unwrap())
                .unwrap(),
            q(1)
        );
    }

    #[test]
    fn qa_examples_over_naturals() {
        let d = n1();
        let family = d.parse_elements("1,2").unwrap();
        let report = qa_decomposition(&d, &family).unwrap();
        let expect = [
            one(&d, "0").sub(&one(&d, "1")).unwrap(),
            one(&d, "1").sub(&one(&d, "2")).unwrap(),
            BpFunction::zero(&d),
            one(&d, "2"),
        ];
        for (entry, want) in report.entries.iter().zip(&expect) {
            assert_eq!(&entry.projection, want);
        }
        assert_eq!(
            report.entries.iter().map(|e| e.nonzero).collect::<Vec<_>>(),
            [true, true, false, true]
        );
        assert_eq!(report.sum(), BpFunction::unit(&d));
        assert!(report.overlapping_pairs().is_empty());
    }

    #[test]
    fn qa_examples_over_free_monoid() {
        let f2 = Semigroup::free(2).unwrap();
        let report = qa_decomposition(&f2, &[Element::word("a"), Element::word("b")]).unwrap();
        let q_empty = BpFunction::unit(&f2)
            .sub(&one(&f2, "a"))
            .unwrap()
            .sub(&one(&f2, "b"))
            .unwrap();
        assert_eq!(report.entries[0].projection, q_empty);
        assert_eq!(report.entries[1].projection, one(&f2, "a"));
        assert_eq!(report.entries[2].projection, one(&f2, "b"));
        assert!(report.entries[3].projection.is_zero());
        assert_eq!(report.entries[3].sigma, None);
        assert_eq!(report.sum(), BpFunction::unit(&f2));
    }

    #[test]
    fn qa_limits() {
        let d = n1();
        let family: Vec<Element> = (1..=13).map(|i| Element::Vector(vec![i])).collect();
        assert!(matches!(qa_decomposition(&d, &family), Err(Error::Resource(_))));
        assert!(matches!(qa_decomposition(&d, &[]), Err(Error::Usage(_))));
        // e in the family kills Q_∅
        let report = qa_decomposition(&d, &d.parse_elements("0,3").unwrap()).unwrap();
        assert!(!report.entries[0].nonzero && report.entries[0].projection.is_zero());
    }

    #[test]
    fn sup_norm_examples() {
        let d = n1();
        let f = one(&d, "1").sub(&one(&d, "2")).unwrap();
        let window = "Nk:k=1,max=5".parse::<WindowSpec>().unwrap().enumerate().unwrap();
        assert_eq!(sup_norm(&f, NormMethod::Formula).unwrap(), q(1));
        assert_eq!(sup_norm(&f, NormMethod::Window(&window)).unwrap(), q(1));
        assert_eq!(sup_norm(&BpFunction::unit(&d), NormMethod::Formula).unwrap(), q(1));

        let n2 = Semigroup::naturals(2).unwrap();
        let g = one(&n2, "(1,0)").add(&one(&n2, "(0,1)")).unwrap();
        let box3 = "Nk:k=2,max=3".parse::<WindowSpec>().unwrap().enumerate().unwrap();
        assert_eq!(sup_norm(&g, NormMethod::Formula).unwrap(), q(2));
        assert_eq!(sup_norm(&g, NormMethod::Window(&box3)).unwrap(), q(2));
    }

    #[test]
    fn action_left_nica_passes() {
        for spec in ["Nk:k=2,max=4", "Free:n=2,len=3", "NTimes:primes=2,3;maxexp=2"] {
            let w: WindowSpec = spec.parse().unwrap();
            let d = w.semigroup();
            let report =
                check_action_left_nica(&d, &w.enumerate().unwrap(), &w.doubled().enumerate().unwrap()).unwrap();
            assert!(report.passed(), "{spec}: {:?}", report.witnesses.first());
        }
    }

    #[test]
    fn display_and_json() {
        let d = n1();
        let f = one(&d, "1")
            .sub(&one(&d, "2").scale(&BigRational::new(2.into(), 3.into())))
            .unwrap();
        assert_eq!(f.to_string(), "1_1 - 2/3·1_2");
        assert_eq!(
            f.to_json().to_string(),
            r#"[{"coeff":"1","u":"1"},{"coeff":"-2/3","u":"2"}]"#
        );
        assert_eq!(BpFunction::zero(&d).to_string(), "0");
    }
}
