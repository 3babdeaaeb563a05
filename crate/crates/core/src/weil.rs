//! Additive characters of `E`, quadratic Gauss sums, and the Weil index.
//!
//! The base character is `ψ_F(x) = e^{2πi {x}_p}` with `{x}_p` the p-adic
//! fractional part; its conductor is `Z_p`. On an extension,
//! `ψ_E(x) = ψ_F(Tr(x))` when unramified and `ψ_F(Tr(x / sqrt d))` when
//! ramified, so `ψ_E` has conductor `O_E` in both cases. A character with
//! scale `s` is `x ↦ ψ_E(s x)`.
//!
//! `γ(ψ)` is the phase of `Σ_{y ∈ O/π^k} ψ(y^2)` for `k` large enough that
//! the sum is well defined and not identically `q^k`. The Weil index is
//! `γ(a, ψ) = γ(ψ_a) / γ(ψ)`.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::hilbert;
use crate::local_field::{Extension, FieldElement, LocalField};
use crate::padic;
use crate::sign::Sign;

/// Largest number of terms a single Gauss sum may enumerate.
pub const GAUSS_TERM_BUDGET: u128 = 1 << 26;
/// Largest number of terms spent on a stability recomputation.
pub const STABILITY_TERM_BUDGET: u128 = 1 << 22;
pub const SNAP_TOLERANCE: f64 = 1e-9;

/// `e^{2πi r}` with `r` an exact rational in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    exponent: BigRational,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity {
            exponent: BigRational::zero(),
        }
    }

    pub fn from_exponent(r: BigRational) -> Self {
        RootOfUnity {
            exponent: padic::mod_one(&r),
        }
    }

    pub fn exponent(&self) -> &BigRational {
        &self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::from_exponent(-&self.exponent)
    }

    pub fn to_complex(&self) -> Complex64 {
        let r = self.exponent.to_f64().expect("exponent in [0, 1)");
        Complex64::from_polar(1.0, TAU * r)
    }
}

impl Mul for &RootOfUnity {
    type Output = RootOfUnity;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &RootOfUnity) -> RootOfUnity {
        RootOfUnity::from_exponent(&self.exponent + &rhs.exponent)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", self.exponent)
    }
}

/// `ζ_8^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EighthRoot {
    k: u8,
}

impl EighthRoot {
    pub const ONE: EighthRoot = EighthRoot { k: 0 };
    pub const MINUS_ONE: EighthRoot = EighthRoot { k: 4 };

    pub fn new(k: i64) -> Self {
        EighthRoot {
            k: k.rem_euclid(8) as u8,
        }
    }

    pub fn from_sign(s: Sign) -> Self {
        if s.is_plus() {
            Self::ONE
        } else {
            Self::MINUS_ONE
        }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn inv(&self) -> Self {
        EighthRoot::new(-(self.k as i64))
    }

    pub fn pow(&self, e: i64) -> Self {
        EighthRoot::new(self.k as i64 * e)
    }

    /// `Some` exactly for `±1`.
    pub fn as_sign(&self) -> Option<Sign> {
        match self.k {
            0 => Some(Sign::Plus),
            4 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.k as f64 / 8.0)
    }
}

impl Mul for EighthRoot {
    type Output = EighthRoot;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: EighthRoot) -> EighthRoot {
        EighthRoot::new(self.k as i64 + rhs.k as i64)
    }
}

impl fmt::Display for EighthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => f.write_str("1"),
            2 => f.write_str("i"),
            4 => f.write_str("-1"),
            6 => f.write_str("-i"),
            k => write!(f, "zeta8^{k}"),
        }
    }
}

/// Nearest eighth root of unity to `z` and the distance to it.
pub fn snap_eighth_root(z: Complex64) -> Result<(EighthRoot, f64)> {
    let k = (z.arg() * 8.0 / TAU).round() as i64;
    let root = EighthRoot::new(k);
    let residual = (z - root.to_complex()).norm();
    if residual.is_nan() || residual >= SNAP_TOLERANCE {
        return Err(Error::SnapFailure(residual));
    }
    Ok((root, residual))
}

/// `x ↦ ψ_E(scale · x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdditiveChar {
    scale: FieldElement,
}

impl AdditiveChar {
    /// The conductor-`O` character (scale 1).
    pub fn standard(field: LocalField) -> Self {
        AdditiveChar {
            scale: FieldElement::one(field),
        }
    }

    pub fn with_scale(scale: FieldElement) -> Result<Self> {
        scale.check_nonzero()?;
        Ok(AdditiveChar { scale })
    }

    pub fn field(&self) -> LocalField {
        self.scale.field()
    }

    pub fn scale(&self) -> &FieldElement {
        &self.scale
    }

    /// `ψ_a(x) = ψ(a x)`.
    pub fn twist(&self, a: &FieldElement) -> Result<Self> {
        self.scale.check_same_field(a)?;
        AdditiveChar::with_scale(&self.scale * a)
    }

    /// `ψ` is trivial on `π^n O` exactly for `n >= conductor_exponent()`.
    pub fn conductor_exponent(&self) -> i64 {
        -self.scale.valuation().expect("scale is nonzero")
    }

    pub fn eval(&self, x: &FieldElement) -> RootOfUnity {
        psi_eval(self, x)
    }
}

impl fmt::Display for AdditiveChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi_{}", self.scale)
    }
}

/// The `F`-rational coordinate that `ψ_F` is applied to.
fn trace_coordinate(x: &FieldElement) -> BigRational {
    match x.field().extension() {
        Extension::Base => x.a().clone(),
        Extension::Unramified(_) => x.a() * padic::rat(2),
        Extension::Ramified(_) => x.b() * padic::rat(2),
    }
}

pub fn psi_eval(psi: &AdditiveChar, x: &FieldElement) -> RootOfUnity {
    let y = psi.scale() * x;
    RootOfUnity::from_exponent(padic::frac_p(&trace_coordinate(&y), psi.field().p()))
}

/// A Gauss sum kept exactly: `counts[j]` terms equal `e^{2πi j / modulus}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSum {
    pub modulus: u64,
    pub counts: Vec<u64>,
}

impl GaussSum {
    pub fn terms(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.modulus as f64;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(j, &n)| Complex64::from_polar(n as f64, TAU * j as f64 / m))
            .sum()
    }
}

fn residue_system_sizes(field: LocalField, k: u32) -> (u128, u128) {
    let p = field.p() as u128;
    match field.extension() {
        Extension::Base => (p.pow(k), 1),
        Extension::Unramified(_) => (p.pow(k), p.pow(k)),
        Extension::Ramified(_) => (p.pow(k.div_ceil(2)), p.pow(k / 2)),
    }
}

/// `Σ ψ(a y^2)` over `y` in a complete residue system of `O/π^k`, exactly.
///
/// Requires `k >= -v(scale · a)` so that the summand is well defined mod `π^k`.
pub fn gauss_sum_exact(psi: &AdditiveChar, a: &FieldElement, k: u32) -> Result<GaussSum> {
    psi.scale().check_same_field(a)?;
    let field = psi.field();
    let p = field.p();
    let c = psi.scale() * a;
    let (n1, n2) = residue_system_sizes(field, k);
    let terms = n1.saturating_mul(n2);
    if c.is_zero() {
        let terms = u64::try_from(terms).map_err(|_| Error::LevelTooLarge(terms))?;
        return Ok(GaussSum {
            modulus: 1,
            counts: vec![terms],
        });
    }
    let required = (-c.valuation()?).max(0) as u32;
    if k < required {
        return Err(Error::LevelTooSmall { level: k, required });
    }
    if terms > GAUSS_TERM_BUDGET {
        return Err(Error::LevelTooLarge(terms));
    }

    // ψ(c y^2) = e(α P(y) + β R(y)) with P, R integer forms in the coordinates of y.
    let d = padic::rat(field.d().unwrap_or(0));
    let two = padic::rat(2);
    let (alpha, beta) = match field.extension() {
        Extension::Base => (c.a().clone(), BigRational::zero()),
        Extension::Unramified(_) => (c.a() * &two, c.b() * &d * &two),
        Extension::Ramified(_) => (c.b() * &two, c.a() * &two),
    };
    let e = [&alpha, &beta]
        .iter()
        .filter_map(|r| padic::vp(r, p))
        .map(|v| (-v).max(0))
        .max()
        .unwrap_or(0) as u32;
    let modulus_big = padic::pow_p(p, e);
    let modulus = modulus_big.to_u64().expect("modulus within budget");
    let scaled = |r: &BigRational| -> u128 {
        let r = r * BigRational::from_integer(modulus_big.clone());
        padic::reduce_mod(&r, p, &modulus_big)
            .expect("scaled coefficient is p-integral")
            .to_u64()
            .expect("residue fits u64") as u128
    };
    let (al, be) = (scaled(&alpha), scaled(&beta));
    let m = modulus as u128;
    let dm = field.d().unwrap_or(0).rem_euclid(modulus as i64) as u128;

    let mut counts = vec![0u64; modulus as usize];
    for y1 in 0..n1 {
        let y1 = y1 % m;
        let y1sq = y1 * y1 % m;
        for y2 in 0..n2 {
            let y2 = y2 % m;
            let pform = (y1sq + dm * (y2 * y2 % m)) % m;
            let rform = 2 * y1 * y2 % m;
            let idx = (al * pform + be * rform) % m;
            counts[idx as usize] += 1;
        }
    }
    Ok(GaussSum { modulus, counts })
}

/// [`gauss_sum_exact`] evaluated as a complex number.
pub fn gauss_sum(psi: &AdditiveChar, a: &FieldElement, k: u32) -> Result<Complex64> {
    Ok(gauss_sum_exact(psi, a, k)?.to_complex())
}

/// `c π^{2j}` with valuation `-1` or `-2`, and its valuation's negative.
fn reduced_scale(c: &FieldElement) -> Result<(FieldElement, u32)> {
    let v = c.valuation()?;
    let j = (-1 - v).div_euclid(2);
    let c = c * &c.field().uniformizer().pow(2 * j)?;
    let k = (-(v + 2 * j)) as u32;
    Ok((c, k))
}

fn phase(z: Complex64) -> Complex64 {
    z / z.norm()
}

/// `γ(ψ)` as a unit complex number.
pub fn gamma(psi: &AdditiveChar) -> Result<Complex64> {
    let (c, k) = reduced_scale(psi.scale())?;
    let one = FieldElement::one(psi.field());
    Ok(phase(gauss_sum(&AdditiveChar::with_scale(c)?, &one, k)?))
}

/// Distance between `γ(ψ)` computed at the minimal level and at two levels
/// deeper (with the scale divided by `π^2`). `None` when the deeper sum
/// exceeds [`STABILITY_TERM_BUDGET`].
pub fn gamma_stability(psi: &AdditiveChar) -> Result<Option<f64>> {
    let field = psi.field();
    let (c, k) = reduced_scale(psi.scale())?;
    let (n1, n2) = residue_system_sizes(field, k + 2);
    if n1 * n2 > STABILITY_TERM_BUDGET {
        return Ok(None);
    }
    let one = FieldElement::one(field);
    let shallow = phase(gauss_sum(&AdditiveChar::with_scale(c.clone())?, &one, k)?);
    let deeper_scale = &c * &field.uniformizer().pow(-2)?;
    let deep = phase(gauss_sum(
        &AdditiveChar::with_scale(deeper_scale)?,
        &one,
        k + 2,
    )?);
    Ok(Some((shallow - deep).norm()))
}

/// `γ(a, ψ) = γ(ψ_a) / γ(ψ)`, snapped to an eighth root of unity.
pub fn weil_index(a: &FieldElement, psi: &AdditiveChar) -> Result<EighthRoot> {
    let ga = gamma(&psi.twist(a)?)?;
    let g1 = gamma(psi)?;
    Ok(snap_eighth_root(ga / g1)?.0)
}

/// `χ_ψ(z, ε) = ε γ(z, ψ)`.
pub fn chi_psi_eval(z: &FieldElement, eps: Sign, psi: &AdditiveChar) -> Result<EighthRoot> {
    Ok(EighthRoot::from_sign(eps) * weil_index(z, psi)?)
}

/// `ω(-1) / χ_ψ(-1)` for a genuine central character with value `ω(-1)`.
pub fn central_sign(omega_at_minus_one: Complex64, psi: &AdditiveChar) -> Result<Sign> {
    if (omega_at_minus_one.norm() - 1.0).abs() >= SNAP_TOLERANCE {
        return Err(Error::NotASign);
    }
    let minus_one = FieldElement::from_int(psi.field(), -1);
    let q = omega_at_minus_one / chi_psi_eval(&minus_one, Sign::Plus, psi)?.to_complex();
    if (q - 1.0).norm() < SNAP_TOLERANCE {
        Ok(Sign::Plus)
    } else if (q + 1.0).norm() < SNAP_TOLERANCE {
        Ok(Sign::Minus)
    } else {
        Err(Error::NotASign)
    }
}

/// The central sign after twisting by `χ_x`: multiplied by `(x, -1)`.
pub fn twist_central_sign(z: Sign, x: &FieldElement) -> Result<Sign> {
    Ok(z * hilbert(x, &FieldElement::from_int(x.field(), -1))?)
}
