//! Finite-level p-adic computations: multiplicative orders and their
//! stabilization along `p`-powers, Bunce-Deddens summand counts, the
//! truncated odometer, and the averaging action `β` on `ℂ[ℤ/M]` together with
//! its Fourier conjugate on `ℤ/p^k × ℤ/q^l`.
//!
//! Everything is exact except the Fourier probe, which uses floating point
//! roots of unity.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division stops here; larger cofactors must be prime or 1.
const TRIAL_LIMIT: u64 = 1 << 24;

/// Largest modulus accepted by [`CyclicContext`].
pub const MAX_MODULUS: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d: &u64| d.saturating_mul(*d) <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Prime factorization by trial division.
fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while big(d) * big(d) <= n {
        if d > TRIAL_LIMIT {
            return Err(Error::Resource(format!("cannot factor {n} by trial division")));
        }
        let bd = big(d);
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    Ok(out)
}

/// Carmichael's `λ(n)`: the exponent of `U(ℤ/n)`.
fn carmichael(n: &BigUint) -> Result<BigUint> {
    let two = big(2);
    let mut acc = BigUint::one();
    for (p, e) in factorize(n)? {
        let part = if p == two {
            match e {
                1 => BigUint::one(),
                2 => two.clone(),
                _ => two.pow(e - 2),
            }
        } else {
            p.pow(e - 1) * (&p - 1u32)
        };
        acc = acc.lcm(&part);
    }
    Ok(acc)
}

/// Least `t ≥ 1` with `m^t ≡ 1 (mod n)`.
pub fn mult_order(m: &BigUint, n: &BigUint) -> Result<BigUint> {
    if *n < big(2) {
        return Err(Error::Domain(format!("modulus {n} must be at least 2")));
    }
    if !m.gcd(n).is_one() {
        return Err(Error::Domain(format!("{m} is not a unit modulo {n}")));
    }
    let mut t = carmichael(n)?;
    for (r, _) in factorize(&t)? {
        while (&t % &r).is_zero() && m.modpow(&(&t / &r), n).is_one() {
            t /= &r;
        }
    }
    Ok(t)
}

/// `v_p(n)` for `n > 0`.
fn valuation(n: &BigUint, p: &BigUint) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// `L = max{ℓ : ord_{p^ℓ}(q) = ord_p(q)}` for an odd prime `p` and a prime
/// `q ≠ p`, computed as `v_p(q^{ord_p(q)} − 1)` and cross-checked against
/// direct orders for `ℓ ≤ L + 2`.
pub fn stability_exponent(p: u64, q: u64) -> Result<u32> {
    check_odd_prime(p)?;
    if !is_prime(q) || q == p {
        return Err(Error::Domain(format!("{q} must be a prime different from {p}")));
    }
    let (bp, bq) = (big(p), big(q));
    let ord = mult_order(&bq, &bp)?;
    let exponent = ord.to_u32().ok_or_else(|| Error::Resource("order too large".into()))?;
    let l = valuation(&(bq.pow(exponent) - 1u32), &bp);
    for ell in 1..=l + 2 {
        let direct = mult_order(&bq, &bp.pow(ell))?;
        let predicted = bp.pow(ell.saturating_sub(l)) * &ord;
        if direct != predicted {
            return Err(Error::Domain(format!(
                "order of {q} mod {p}^{ell} is {direct}, stabilization predicts {predicted}"
            )));
        }
    }
    Ok(l)
}

/// A supernatural number `d · Π p^∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupernaturalNumber {
    pub finite: BigUint,
    pub infinite: Vec<u64>,
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.finite)?;
        for p in &self.infinite {
            write!(f, "·{p}^inf")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdInvariants {
    pub p: u64,
    pub q: u64,
    /// `ord_p(q)`.
    pub ord: BigUint,
    /// The stability exponent `L_p(q)`.
    pub l: u32,
    /// `p^{L−1}(p−1)/ord_p(q)`.
    pub count: BigUint,
    /// `ord_p(q)·p^∞`.
    pub supernatural: SupernaturalNumber,
}

impl BdInvariants {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "q": self.q,
            "ord": self.ord.to_string(),
            "L": self.l,
            "count": self.count.to_string(),
            "supernatural": self.supernatural.to_string(),
        })
    }
}

pub fn bd_invariants(p: u64, q: u64) -> Result<BdInvariants> {
    let l = stability_exponent(p, q)?;
    let bp = big(p);
    let ord = mult_order(&big(q), &bp)?;
    let units = bp.pow(l - 1) * (&bp - 1u32);
    let (count, rem) = units.div_rem(&ord);
    debug_assert!(rem.is_zero(), "ord_p(q) divides p - 1");
    Ok(BdInvariants {
        p,
        q,
        supernatural: SupernaturalNumber {
            finite: ord.clone(),
            infinite: vec![p],
        },
        ord,
        l,
        count,
    })
}

/// Index of `⟨q⟩` in `U(ℤ/p^k)`: `p^{k−1}(p−1)/ord_{p^k}(q)`.
pub fn coset_count(p: u64, k: u32, q: u64) -> Result<BigUint> {
    check_odd_prime(p)?;
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let bp = big(p);
    let modulus = bp.pow(k);
    let ord = mult_order(&big(q), &modulus)?;
    Ok(bp.pow(k - 1) * (&bp - 1u32) / ord)
}

/// A point of the truncated odometer `{0..d−1} × {0..p−1}^D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OdometerPoint {
    radices: Vec<u64>,
    digits: Vec<u64>,
}

impl OdometerPoint {
    /// `digits` has `depth + 1` entries; the first lies in `0..d`, the others
    /// in `0..p`.
    pub fn new(d: u64, p: u64, depth: usize, digits: &[u64]) -> Result<OdometerPoint> {
        if d == 0 || p < 2 {
            return Err(Error::Domain(format!("radices d = {d}, p = {p} must be ≥ 1 and ≥ 2")));
        }
        let radices: Vec<u64> = std::iter::once(d).chain(std::iter::repeat_n(p, depth)).collect();
        if digits.len() != radices.len() {
            return Err(Error::Domain(format!(
                "expected {} digits, got {}",
                radices.len(),
                digits.len()
            )));
        }
        if let Some((digit, radix)) = digits.iter().zip(&radices).find(|(a, m)| a >= m) {
            return Err(Error::Domain(format!("digit {digit} out of range for radix {radix}")));
        }
        Ok(OdometerPoint {
            radices,
            digits: digits.to_vec(),
        })
    }

    pub fn zero(d: u64, p: u64, depth: usize) -> Result<OdometerPoint> {
        Self::new(d, p, depth, &vec![0; depth + 1])
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Number of points, `d·p^D`.
    pub fn period(&self) -> u128 {
        self.radices.iter().map(|&m| u128::from(m)).product()
    }

    /// Adds 1 to the first digit with carry to the right; overflow past the
    /// last digit wraps to all zeros.
    pub fn step(&self) -> OdometerPoint {
        let mut digits = self.digits.clone();
        for (digit, radix) in digits.iter_mut().zip(&self.radices) {
            *digit += 1;
            if *digit < *radix {
                break;
            }
            *digit = 0;
        }
        OdometerPoint {
            radices: self.radices.clone(),
            digits,
        }
    }
}

impl fmt::Display for OdometerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The finite level `ℤ/M`, `M = p^k q^l`, with `ℤ/M ≅ ℤ/p^k × ℤ/q^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicContext {
    pub p: u64,
    pub q: u64,
    pub k: u32,
    pub l: u32,
}

impl CyclicContext {
    pub fn new(p: u64, q: u64, k: u32, l: u32) -> Result<CyclicContext> {
        if !is_prime(p) || !is_prime(q) || p == q {
            return Err(Error::Domain(format!("{p} and {q} must be distinct primes")));
        }
        let modulus = p
            .checked_pow(k)
            .and_then(|a| q.checked_pow(l).and_then(|b| a.checked_mul(b)));
        match modulus {
            Some(m) if m <= MAX_MODULUS => Ok(CyclicContext { p, q, k, l }),
            _ => Err(Error::Resource(format!(
                "modulus {p}^{k}·{q}^{l} exceeds {MAX_MODULUS}"
            ))),
        }
    }

    pub fn p_part(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn q_part(&self) -> u64 {
        self.q.pow(self.l)
    }

    pub fn modulus(&self) -> u64 {
        self.p_part() * self.q_part()
    }

    /// `N = p^m q^n` as an exact rational.
    fn scale(&self, (m, n): (u32, u32)) -> BigRational {
        BigRational::from_integer((big(self.p).pow(m) * big(self.q).pow(n)).into())
    }

    /// `N mod modulus`.
    fn residue(&self, (m, n): (u32, u32), modulus: u64) -> u64 {
        let n_big = big(self.p).pow(m) * big(self.q).pow(n);
        (n_big % big(modulus)).to_u64().expect("reduced below modulus")
    }

    /// Index of `j ∈ ℤ/M` on the grid, via the Chinese remainder theorem.
    pub fn grid_index(&self, j: u64) -> usize {
        ((j % self.p_part()) * self.q_part() + j % self.q_part()) as usize
    }
}

/// `Σ c_r u_r` in `ℚ[ℤ/M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    modulus: u64,
    /// No zero coefficients; keys in `0..modulus`.
    coeffs: BTreeMap<u64, BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(modulus: u64) -> GroupAlgebraElement {
        GroupAlgebraElement {
            modulus,
            coeffs: BTreeMap::new(),
        }
    }

    /// `u_r`.
    pub fn basis(modulus: u64, r: u64) -> GroupAlgebraElement {
        let mut out = Self::zero(modulus);
        out.add_term(r, BigRational::one());
        out
    }

    pub fn from_coeffs(modulus: u64, coeffs: impl IntoIterator<Item = (u64, BigRational)>) -> GroupAlgebraElement {
        let mut out = Self::zero(modulus);
        for (r, c) in coeffs {
            out.add_term(r, c);
        }
        out
    }

    fn add_term(&mut self, r: u64, c: BigRational) {
        let slot = self.coeffs.entry(r % self.modulus).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(r % self.modulus));
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, BigRational> {
        &self.coeffs
    }

    pub fn coefficient(&self, r: u64) -> BigRational {
        self.coeffs
            .get(&(r % self.modulus))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn same_modulus(&self, other: &GroupAlgebraElement) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::Domain(format!("ℤ/{} vs ℤ/{}", self.modulus, other.modulus)))
        }
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.same_modulus(other)?;
        let mut out = self.clone();
        for (r, c) in &other.coeffs {
            out.add_term(*r, c.clone());
        }
        Ok(out)
    }

    /// Convolution: `u_r u_s = u_{r+s}`.
    pub fn multiply(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.same_modulus(other)?;
        let mut out = Self::zero(self.modulus);
        for (r, a) in &self.coeffs {
            for (s, b) in &other.coeffs {
                out.add_term(r + s, a * b);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(r, c)| serde_json::json!({"r": r, "coeff": c.to_string()}))
                .collect(),
        )
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(r, c)| {
                if c.is_one() {
                    format!("u_{r}")
                } else {
                    format!("{c}·u_{r}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// For each target `t`, the points `s` with `a·s ≡ t (mod modulus)`.
fn fibers(a: u64, modulus: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new(); modulus as usize];
    for s in 0..modulus {
        out[((a as u128 * s as u128) % modulus as u128) as usize].push(s);
    }
    out
}

/// `β_{(m,n)}(u_r) = (1/N) Σ_{s : Ns ≡ r} u_s` with `N = p^m q^n`, extended
/// linearly; `0` when the congruence has no solution.
pub fn beta_apply(ctx: &CyclicContext, mn: (u32, u32), elem: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    let modulus = ctx.modulus();
    if elem.modulus != modulus {
        return Err(Error::Domain(format!(
            "element of ℤ/{} in context ℤ/{modulus}",
            elem.modulus
        )));
    }
    let weight = ctx.scale(mn).recip();
    let fiber = fibers(ctx.residue(mn, modulus), modulus);
    let mut out = GroupAlgebraElement::zero(modulus);
    for (r, c) in &elem.coeffs {
        let share = c * &weight;
        for &s in &fiber[*r as usize] {
            out.add_term(s, share.clone());
        }
    }
    Ok(out)
}

/// A rational function on `ℤ/p^k × ℤ/q^l`, stored at `x·q^l + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridFunction {
    ctx: CyclicContext,
    values: Vec<BigRational>,
}

impl GridFunction {
    pub fn zero(ctx: &CyclicContext) -> GridFunction {
        GridFunction {
            ctx: *ctx,
            values: vec![BigRational::zero(); ctx.modulus() as usize],
        }
    }

    pub fn from_fn(ctx: &CyclicContext, f: impl Fn(u64, u64) -> BigRational) -> GridFunction {
        let mut out = Self::zero(ctx);
        for x in 0..ctx.p_part() {
            for y in 0..ctx.q_part() {
                out.values[(x * ctx.q_part() + y) as usize] = f(x, y);
            }
        }
        out
    }

    pub fn get(&self, x: u64, y: u64) -> &BigRational {
        &self.values[(x * self.ctx.q_part() + y) as usize]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Points with nonzero value.
    pub fn support(&self) -> Vec<(u64, u64)> {
        let ql = self.ctx.q_part();
        (0..self.values.len() as u64)
            .filter(|&i| !self.values[i as usize].is_zero())
            .map(|i| (i / ql, i % ql))
            .collect()
    }

    fn check(&self, ctx: &CyclicContext) -> Result<()> {
        if self.ctx == *ctx {
            Ok(())
        } else {
            Err(Error::Domain("grid function from another context".into()))
        }
    }
}

/// Fourier conjugate of `β`: `(α_{(m,n)} f)(x,y) = (1/N) Σ f(x',y')` over all
/// `(x',y')` with `N x' ≡ x (mod p^k)` and `N y' ≡ y (mod q^l)`.
///
/// When `m ≤ k`, `n ≤ l` and `f` is constant on those fibers this is
/// `f(x/N, y/N)` on the image of multiplication by `N` and `0` elsewhere.
pub fn alpha_apply(ctx: &CyclicContext, mn: (u32, u32), f: &GridFunction) -> Result<GridFunction> {
    f.check(ctx)?;
    let (pk, ql) = (ctx.p_part(), ctx.q_part());
    let fx = fibers(ctx.residue(mn, pk), pk);
    let fy = fibers(ctx.residue(mn, ql), ql);
    let weight = ctx.scale(mn).recip();
    Ok(GridFunction::from_fn(ctx, |x, y| {
        let mut acc = BigRational::zero();
        for &a in &fx[x as usize] {
            for &b in &fy[y as usize] {
                acc += f.get(a, b);
            }
        }
        acc * &weight
    }))
}

/// Exact quotient of `x` by `N` in `ℤ/modulus`, where `modulus` is a power
/// of `prime`: strip `prime^e` from the representative, then invert the
/// coprime part of `N`.
fn canonical_quotient(x: u64, prime: u64, e: u32, unit: u64, modulus: u64) -> Option<u64> {
    let pe = prime.checked_pow(e);
    let base = match pe {
        Some(pe) if pe < modulus => {
            if !x.is_multiple_of(pe) {
                return None;
            }
            x / pe
        }
        _ => {
            if x != 0 {
                return None;
            }
            0
        }
    };
    if modulus == 1 {
        return Some(0);
    }
    let inverse = big(unit).modinv(&big(modulus))?.to_u64().expect("below modulus");
    Some(((base as u128 * inverse as u128) % modulus as u128) as u64)
}

/// The literal pullback `f(x/N, y/N)` with quotients taken on canonical
/// representatives, `0` off the image of `N`. Not an action on `ℤ/p^k`
/// once divisions lose digits; kept for comparison with [`alpha_apply`].
pub fn alpha_pullback_canonical(ctx: &CyclicContext, (m, n): (u32, u32), f: &GridFunction) -> Result<GridFunction> {
    f.check(ctx)?;
    let (pk, ql) = (ctx.p_part(), ctx.q_part());
    let q_unit = ctx.residue((0, n), pk);
    let p_unit = ctx.residue((m, 0), ql);
    Ok(GridFunction::from_fn(ctx, |x, y| {
        match (
            canonical_quotient(x, ctx.p, m, q_unit, pk),
            canonical_quotient(y, ctx.q, n, p_unit, ql),
        ) {
            (Some(a), Some(b)) => f.get(a, b).clone(),
            _ => BigRational::zero(),
        }
    }))
}

/// Comparison of `F β F⁻¹` (with `F(u_r)(j) = e^{2πi jr/M}`) against
/// [`alpha_apply`] and the literal pullback.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierProbe {
    /// Largest entrywise deviation between `F β F⁻¹` and `α`.
    pub max_error: f64,
    /// `α` and the literal pullback vanish on the same output points.
    pub support_matches: bool,
    /// `α` equals the literal pullback on fiber-constant functions; `None`
    /// when `m > k` or `n > l`, where the two differ by the fiber size.
    pub fiber_constant_agree: Option<bool>,
}

impl FourierProbe {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_error <= tolerance && self.support_matches && self.fiber_constant_agree != Some(false)
    }
}

pub fn fourier_probe(ctx: &CyclicContext, mn: (u32, u32)) -> Result<FourierProbe> {
    let modulus = ctx.modulus();
    let size = modulus as usize;
    let to_f64 = |c: &BigRational| c.to_f64().expect("finite rational");

    // β as a matrix on coefficient vectors: column r is β(u_r).
    let mut beta = vec![vec![0.0; size]; size];
    for r in 0..modulus {
        for (s, c) in beta_apply(ctx, mn, &GroupAlgebraElement::basis(modulus, r))?.coeffs {
            beta[s as usize][r as usize] = to_f64(&c);
        }
    }
    let omega = |e: u64| Complex64::from_polar(1.0, TAU * (e % modulus) as f64 / modulus as f64);
    let dft: Vec<Vec<Complex64>> = (0..modulus)
        .map(|j| (0..modulus).map(|r| omega(j * r)).collect())
        .collect();
    let inverse: Vec<Vec<Complex64>> = (0..modulus)
        .map(|r| (0..modulus).map(|j| omega(j * r).conj() / modulus as f64).collect())
        .collect();
    let mut dft_beta = vec![vec![Complex64::zero(); size]; size];
    for j in 0..size {
        for r in 0..size {
            if beta.iter().all(|row| row[r] == 0.0) {
                continue;
            }
            dft_beta[j][r] = (0..size).map(|s| dft[j][s] * beta[s][r]).sum();
        }
    }

    // α and the pullback as matrices on functions of j ∈ ℤ/M.
    let mut alpha = vec![vec![0.0; size]; size];
    let mut pullback_rows = vec![false; size];
    let mut alpha_rows = vec![false; size];
    for col in 0..modulus {
        let target = ctx.grid_index(col);
        let delta = GridFunction {
            ctx: *ctx,
            values: (0..size)
                .map(|i| {
                    if i == target {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        };
        let image = alpha_apply(ctx, mn, &delta)?;
        let pulled = alpha_pullback_canonical(ctx, mn, &delta)?;
        for row in 0..modulus {
            let value = &image.values[ctx.grid_index(row)];
            alpha[row as usize][col as usize] = to_f64(value);
            alpha_rows[row as usize] |= !value.is_zero();
            pullback_rows[row as usize] |= !pulled.values[ctx.grid_index(row)].is_zero();
        }
    }

    let mut max_error: f64 = 0.0;
    for j in 0..size {
        for jj in 0..size {
            let entry: Complex64 = (0..size).map(|r| dft_beta[j][r] * inverse[r][jj]).sum();
            max_error = max_error.max((entry - alpha[j][jj]).norm());
        }
    }

    let fiber_constant_agree = (mn.0 <= ctx.k && mn.1 <= ctx.l).then(|| {
        let (pk, ql) = (ctx.p_part(), ctx.q_part());
        let (ax, ay) = (ctx.residue(mn, pk), ctx.residue(mn, ql));
        (0..pk).all(|tx| {
            (0..ql).all(|ty| {
                let f = GridFunction::from_fn(ctx, |x, y| {
                    let hit = (ax * x) % pk == tx && (ay * y) % ql == ty;
                    if hit {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                });
                alpha_apply(ctx, mn, &f).ok() == alpha_pullback_canonical(ctx, mn, &f).ok()
            })
        })
    });

    Ok(FourierProbe {
        max_error,
        support_matches: alpha_rows == pullback_rows,
        fiber_constant_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(m: u64, n: u64) -> u64 {
        mult_order(&big(m), &big(n)).unwrap().to_u64().unwrap()
    }

    fn brute_order(m: u64, n: u64) -> u64 {
        let mut x = m % n;
        let mut t = 1;
        while x != 1 {
            x = x * m % n;
            t += 1;
        }
        t
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(order(2, 7), 3);
        assert_eq!(order(4, 3), 1);
        assert_eq!(order(2, 5), 4);
        assert!(matches!(mult_order(&big(6), &big(9)), Err(Error::Domain(_))));
        assert!(mult_order(&big(1), &big(1)).is_err());
        for n in 2..200 {
            for m in 1..n {
                if m.gcd(&n) == 1 {
                    assert_eq!(order(m, n), brute_order(m, n), "{m} mod {n}");
                }
            }
        }
    }

    #[test]
    fn stability_examples() {
        assert_eq!(stability_exponent(5, 2).unwrap(), 1);
        assert_eq!(order(2, 25), 20);
        assert_eq!(stability_exponent(7, 2).unwrap(), 1);
        assert_eq!(order(2, 49), 21);
        assert!(stability_exponent(1093, 2).unwrap() >= 2);
        assert!(stability_exponent(2, 3).is_err());
        assert!(stability_exponent(7, 7).is_err());
        assert!(stability_exponent(7, 9).is_err());
        // 3^{ord} ≡ 1 mod 11², so L = 2
        assert_eq!(stability_exponent(11, 3).unwrap(), 2);
    }

    #[test]
    fn bd_examples() {
        let show = |p, q| {
            let b = bd_invariants(p, q).unwrap();
            (
                b.ord.to_u64().unwrap(),
                b.l,
                b.count.to_u64().unwrap(),
                b.supernatural.to_string(),
            )
        };
        assert_eq!(show(5, 3), (4, 1, 1, "4·5^inf".to_string()));
        assert_eq!(show(7, 3), (6, 1, 1, "6·7^inf".to_string()));
        assert_eq!(show(7, 11), (3, 1, 2, "3·7^inf".to_string()));
        assert_eq!(show(7, 2), (3, 1, 2, "3·7^inf".to_string()));
        assert_eq!(
            bd_invariants(7, 2).unwrap().to_json().to_string(),
            r#"{"L":1,"count":"2","ord":"3","p":7,"q":2,"supernatural":"3·7^inf"}"#
        );
    }

    #[test]
    fn coset_examples() {
        assert_eq!(coset_count(5, 3, 2).unwrap(), big(1));
        assert_eq!(coset_count(7, 2, 2).unwrap(), big(2));
        for (p, q) in [(5, 2), (7, 3), (11, 5)] {
            assert_eq!(coset_count(p, 1, q).unwrap(), big((p - 1) / order(q, p)));
        }
        assert!(coset_count(7, 0, 2).is_err());
        assert!(coset_count(7, 2, 14).is_err());
    }

    #[test]
    fn odometer_examples() {
        let pt = OdometerPoint::new(2, 3, 2, &[1, 2, 0]).unwrap();
        assert_eq!(pt.step().digits(), &[0, 0, 1]);
        let zero = OdometerPoint::zero(2, 3, 2).unwrap();
        assert_eq!(zero.step().to_string(), "(1,0,0)");
        let last = OdometerPoint::new(2, 3, 2, &[1, 2, 2]).unwrap();
        assert_eq!(last.step(), zero);
        assert!(OdometerPoint::new(2, 3, 2, &[2, 0, 0]).is_err());
        assert!(OdometerPoint::new(2, 3, 2, &[0, 0]).is_err());
    }

    fn ctx45() -> CyclicContext {
        CyclicContext::new(3, 5, 2, 1).unwrap()
    }

    #[test]
    fn beta_examples() {
        let ctx = CyclicContext::new(3, 5, 1, 1).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        let want = GroupAlgebraElement::from_coeffs(15, [(0, third.clone()), (5, third.clone()), (10, third)]);
        assert_eq!(
            beta_apply(&ctx, (1, 0), &GroupAlgebraElement::basis(15, 0)).unwrap(),
            want
        );
        assert!(beta_apply(&ctx, (1, 0), &GroupAlgebraElement::basis(15, 1))
            .unwrap()
            .coeffs
            .is_empty());
        let x =
            GroupAlgebraElement::from_coeffs(15, [(2, BigRational::one()), (7, BigRational::new(3.into(), 4.into()))]);
        assert_eq!(beta_apply(&ctx, (0, 0), &x).unwrap(), x);
    }

    #[test]
    fn alpha_examples() {
        let ctx = ctx45();
        let f = GridFunction::from_fn(&ctx, |x, y| BigRational::from_integer(((7 * x + 3 * y) % 11).into()));
        assert_eq!(alpha_apply(&ctx, (0, 0), &f).unwrap(), f);
        assert_eq!(alpha_pullback_canonical(&ctx, (0, 0), &f).unwrap(), f);

        let delta = GridFunction::from_fn(&ctx, |x, _| {
            if x == 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let image = alpha_apply(&ctx, (1, 0), &delta).unwrap();
        assert!(image.support().iter().all(|(x, _)| x % 3 == 0));

        for x in 0..9 {
            for y in 0..5 {
                let d = GridFunction::from_fn(&ctx, |a, b| {
                    if (a, b) == (x, y) {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                });
                let two_step = alpha_apply(&ctx, (1, 0), &alpha_apply(&ctx, (0, 1), &d).unwrap()).unwrap();
                assert_eq!(two_step, alpha_apply(&ctx, (1, 1), &d).unwrap());
            }
        }
    }

    #[test]
    fn literal_pullback_is_not_an_action() {
        let ctx = ctx45();
        let d = GridFunction::from_fn(&ctx, |a, b| {
            if (a, b) == (4, 0) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        // At x = 6: dividing 6·5⁻¹ = 3 by 3 gives 1, dividing 6 by 3 then by 5 gives 4.
        let two_step =
            alpha_pullback_canonical(&ctx, (0, 1), &alpha_pullback_canonical(&ctx, (1, 0), &d).unwrap()).unwrap();
        let direct = alpha_pullback_canonical(&ctx, (1, 1), &d).unwrap();
        assert!(direct.get(6, 0).is_one() && two_step.get(6, 0).is_zero());
    }

    #[test]
    fn fourier_probe_small() {
        let ctx = ctx45();
        for mn in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (3, 2)] {
            let probe = fourier_probe(&ctx, mn).unwrap();
            assert!(probe.passes(1e-9), "{mn:?}: {probe:?}");
        }
    }
}
