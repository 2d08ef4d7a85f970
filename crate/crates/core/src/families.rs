//! Closed-form solution families of the twisted trigonometric laws, a
//! classifier mapping numeric `(f, g)` pairs back to their family, the
//! constant-multiple reduction `f(xσ(y)) = β f(x)f(y) ⇒ βf` multiplicative,
//! and the twist-symmetry checks satisfied by linearly independent
//! solutions.
//!
//! Case naming. Solutions of the σ-twisted cosine subtraction law fall into
//! the six cases `TE3.1 … TE3.6`; the sine addition law into `P1.1 … P1.5`;
//! the sine subtraction law into `TH3.1 … TH3.4`. The untwisted laws
//! `g(xy) = g(x)g(y) − f(x)f(y)` and `f(xy) = f(x)g(y) + f(y)g(x)` have
//! cases `PHI1.1 … PHI1.4` and `PHI2.1 … PHI2.3`.

use crate::funcspace::{
    enumerate_multiplicative, linear_dependence, multiplicative_residual, special_sine_basis,
    special_sine_residual, CFunc, Dependence, MultiplicativeFunction,
};
use crate::linalg;
use crate::oracle::equation_residual;
use crate::semigroup::{Automorphism, FiniteSemigroup, SquareSet};
use crate::tol;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::fmt;
use thiserror::Error;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The seven equations handled by the lab.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationTag {
    /// `g(xσ(y)) = g(x)g(y) + f(x)f(y)`
    CosSub,
    /// `f(xσ(y)) = f(x)g(y) + f(y)g(x)`
    SineAdd,
    /// `f(xσ(y)) = f(x)g(y) − f(y)g(x)`
    SineSub,
    /// `g(σ(y)x) = g(x)g(y) + f(x)f(y)`
    CosSubVariant,
    /// `f(σ(y)x) = f(x)g(y) + f(y)g(x)`
    SineAddVariant,
    /// `g(xy) = g(x)g(y) − f(x)f(y)` (ignores σ)
    CosAddPlain,
    /// `f(xy) = f(x)g(y) + f(y)g(x)` (ignores σ)
    SineAddPlain,
}

impl EquationTag {
    pub const ALL: [EquationTag; 7] = [
        EquationTag::CosSub,
        EquationTag::SineAdd,
        EquationTag::SineSub,
        EquationTag::CosSubVariant,
        EquationTag::SineAddVariant,
        EquationTag::CosAddPlain,
        EquationTag::SineAddPlain,
    ];

    /// The five equations that actually use the automorphism.
    pub const SIGMA_EQUATIONS: [EquationTag; 5] = [
        EquationTag::CosSub,
        EquationTag::SineAdd,
        EquationTag::SineSub,
        EquationTag::CosSubVariant,
        EquationTag::SineAddVariant,
    ];

    pub fn uses_sigma(self) -> bool {
        !matches!(self, EquationTag::CosAddPlain | EquationTag::SineAddPlain)
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            EquationTag::CosSub => "cos-sub",
            EquationTag::SineAdd => "sine-add",
            EquationTag::SineSub => "sine-sub",
            EquationTag::CosSubVariant => "cos-sub-var",
            EquationTag::SineAddVariant => "sine-add-var",
            EquationTag::CosAddPlain => "cos-add-plain",
            EquationTag::SineAddPlain => "sine-add-plain",
        }
    }

    pub fn parse(name: &str) -> Option<EquationTag> {
        EquationTag::ALL.into_iter().find(|e| e.cli_name() == name)
    }
}

impl fmt::Display for EquationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cli_name())
    }
}

/// Sign choice in the `g = χ ± φ` style families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> Complex64 {
        match self {
            Sign::Plus => ONE,
            Sign::Minus => -ONE,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A solution `(f, g)` of one of the equations, as value tables.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPair {
    pub f: CFunc,
    pub g: CFunc,
}

/// One case of the classification theorems, with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyCase {
    /// f = g = 0.
    Te31,
    /// g ≠ 0 vanishing on S², f = c·g with c ∈ {i, −i}.
    Te32 { g: CFunc, c: Complex64 },
    /// g = χ/(1+α²), f = αχ/(1+α²); χ ≠ 0 multiplicative, χ∘σ = χ, α ∉ {i, −i}.
    Te33 { chi: CFunc, alpha: Complex64 },
    /// g = (δ⁻¹χ₁ + δχ₂)/(δ⁻¹+δ), f = (χ₂−χ₁)/(δ⁻¹+δ); χᵢ∘σ = χᵢ, χ₁ ≠ χ₂,
    /// δ ∉ {0, i, −i}.
    Te34 { chi1: CFunc, chi2: CFunc, delta: Complex64 },
    /// g = (χ+χ∘σ)/2, f = (χ−χ∘σ)/(2i); χ∘σ ≠ χ, χ∘σ² = χ.
    Te35 { chi: CFunc },
    /// f = −iφ, g = χ ± φ; χ ≠ 0 with χ∘σ = χ, φ ≠ 0 special-sine with φ∘σ = φ.
    Te36 { chi: CFunc, phi: CFunc, sign: Sign },
    /// f = 0, g arbitrary.
    P11 { g: CFunc },
    /// f ≠ 0 vanishing on S², g = 0.
    P12 { f: CFunc },
    /// f = χ/(2α), g = χ/2; χ ≠ 0 multiplicative with χ∘σ = χ, α ≠ 0.
    P13 { chi: CFunc, alpha: Complex64 },
    /// f = c(χ₁−χ₂), g = (χ₁+χ₂)/2; χᵢ∘σ = χᵢ, χ₁ ≠ χ₂, c ≠ 0.
    P14 { chi1: CFunc, chi2: CFunc, c: Complex64 },
    /// f = φ, g = χ; χ ≠ 0 with χ∘σ = χ, φ ≠ 0 special-sine with φ∘σ = φ.
    P15 { chi: CFunc, phi: CFunc },
    /// f = 0, g arbitrary.
    Th31 { g: CFunc },
    /// f ≠ 0 vanishing on S², g = αf.
    Th32 { f: CFunc, alpha: Complex64 },
    /// f = c(χ−χ∘σ), g = (χ+χ∘σ)/2 + c₁(χ−χ∘σ)/2; χ∘σ ≠ χ, χ∘σ² = χ, c ≠ 0.
    Th33 { chi: CFunc, c: Complex64, c1: Complex64 },
    /// f = φ, g = χ + c₂φ; χ ≠ 0 with χ∘σ = χ, φ ≠ 0 special-sine with φ∘σ = −φ.
    Th34 { chi: CFunc, phi: CFunc, c2: Complex64 },
    /// f = g = 0.
    Phi11,
    /// g = (δ⁻¹χ₁ + δχ₂)/(δ⁻¹+δ), f = (χ₁−χ₂)/(i(δ⁻¹+δ)); χ₁ ≠ χ₂
    /// multiplicative (one may be zero), δ ∉ {0, i, −i}.
    Phi12 { chi1: CFunc, chi2: CFunc, delta: Complex64 },
    /// f ≠ 0 vanishing on S², g = ±f.
    Phi13 { f: CFunc, sign: Sign },
    /// g = χ ± φ, f = φ; χ ≠ 0 multiplicative, φ special-sine (possibly 0).
    Phi14 { chi: CFunc, phi: CFunc, sign: Sign },
    /// f = c(χ₁−χ₂), g = (χ₁+χ₂)/2; χ₁ ≠ χ₂ multiplicative (one may be
    /// zero), c ≠ 0.
    Phi21 { chi1: CFunc, chi2: CFunc, c: Complex64 },
    /// f ≠ 0 vanishing on S², g = 0.
    Phi22 { f: CFunc },
    /// f = φ ≠ 0 special-sine, g = χ ≠ 0 multiplicative.
    Phi23 { chi: CFunc, phi: CFunc },
}

impl FamilyCase {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyCase::Te31 => "TE3.1",
            FamilyCase::Te32 { .. } => "TE3.2",
            FamilyCase::Te33 { .. } => "TE3.3",
            FamilyCase::Te34 { .. } => "TE3.4",
            FamilyCase::Te35 { .. } => "TE3.5",
            FamilyCase::Te36 { .. } => "TE3.6",
            FamilyCase::P11 { .. } => "P1.1",
            FamilyCase::P12 { .. } => "P1.2",
            FamilyCase::P13 { .. } => "P1.3",
            FamilyCase::P14 { .. } => "P1.4",
            FamilyCase::P15 { .. } => "P1.5",
            FamilyCase::Th31 { .. } => "TH3.1",
            FamilyCase::Th32 { .. } => "TH3.2",
            FamilyCase::Th33 { .. } => "TH3.3",
            FamilyCase::Th34 { .. } => "TH3.4",
            FamilyCase::Phi11 => "PHI1.1",
            FamilyCase::Phi12 { .. } => "PHI1.2",
            FamilyCase::Phi13 { .. } => "PHI1.3",
            FamilyCase::Phi14 { .. } => "PHI1.4",
            FamilyCase::Phi21 { .. } => "PHI2.1",
            FamilyCase::Phi22 { .. } => "PHI2.2",
            FamilyCase::Phi23 { .. } => "PHI2.3",
        }
    }

    /// The equation whose solution set this case belongs to.
    pub fn equation(&self) -> EquationTag {
        match self.tag() {
            t if t.starts_with("TE3") => EquationTag::CosSub,
            t if t.starts_with("P1") => EquationTag::SineAdd,
            t if t.starts_with("TH3") => EquationTag::SineSub,
            t if t.starts_with("PHI1") => EquationTag::CosAddPlain,
            _ => EquationTag::SineAddPlain,
        }
    }

    /// `{"case": …, "params": {…}}` with function tables as `[[re,im],…]`.
    pub fn to_json(&self) -> Value {
        use crate::io::{cfunc_to_json, complex_to_json};
        let params = match self {
            FamilyCase::Te31 | FamilyCase::Phi11 => json!({}),
            FamilyCase::Te32 { g, c } => {
                json!({"g_free": cfunc_to_json(g), "c": complex_to_json(*c)})
            }
            FamilyCase::Te33 { chi, alpha } | FamilyCase::P13 { chi, alpha } => {
                json!({"chi": cfunc_to_json(chi), "alpha": complex_to_json(*alpha)})
            }
            FamilyCase::Te34 { chi1, chi2, delta } | FamilyCase::Phi12 { chi1, chi2, delta } => {
                json!({
                    "chi1": cfunc_to_json(chi1),
                    "chi2": cfunc_to_json(chi2),
                    "delta": complex_to_json(*delta),
                })
            }
            FamilyCase::Te35 { chi } => json!({"chi": cfunc_to_json(chi)}),
            FamilyCase::Te36 { chi, phi, sign } => json!({
                "chi": cfunc_to_json(chi),
                "phi": cfunc_to_json(phi),
                "sign": sign.symbol(),
            }),
            FamilyCase::P11 { g } | FamilyCase::Th31 { g } => {
                json!({"g_free": cfunc_to_json(g)})
            }
            FamilyCase::P12 { f } | FamilyCase::Phi22 { f } => {
                json!({"f_free": cfunc_to_json(f)})
            }
            FamilyCase::P14 { chi1, chi2, c } | FamilyCase::Phi21 { chi1, chi2, c } => json!({
                "chi1": cfunc_to_json(chi1),
                "chi2": cfunc_to_json(chi2),
                "c": complex_to_json(*c),
            }),
            FamilyCase::P15 { chi, phi } | FamilyCase::Phi23 { chi, phi } => {
                json!({"chi": cfunc_to_json(chi), "phi": cfunc_to_json(phi)})
            }
            FamilyCase::Th32 { f, alpha } => {
                json!({"f_free": cfunc_to_json(f), "alpha": complex_to_json(*alpha)})
            }
            FamilyCase::Th33 { chi, c, c1 } => json!({
                "chi": cfunc_to_json(chi),
                "c": complex_to_json(*c),
                "c1": complex_to_json(*c1),
            }),
            FamilyCase::Th34 { chi, phi, c2 } => json!({
                "chi": cfunc_to_json(chi),
                "phi": cfunc_to_json(phi),
                "c2": complex_to_json(*c2),
            }),
            FamilyCase::Phi13 { f, sign } => {
                json!({"f_free": cfunc_to_json(f), "sign": sign.symbol()})
            }
            FamilyCase::Phi14 { chi, phi, sign } => json!({
                "chi": cfunc_to_json(chi),
                "phi": cfunc_to_json(phi),
                "sign": sign.symbol(),
            }),
        };
        json!({"case": self.tag(), "params": params})
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("side condition failure: {0}")]
    SideConditionFailure(String),
    #[error("constructed pair misses its own equation: residual {residual:e}")]
    ResidualFailure { residual: f64 },
}

fn twist_dev(f: &CFunc, sigma: &Automorphism) -> f64 {
    f.compose_sigma(sigma).distance(f)
}

fn twist_anti_dev(f: &CFunc, sigma: &Automorphism) -> f64 {
    f.compose_sigma(sigma)
        .values()
        .iter()
        .zip(f.values())
        .map(|(a, b)| (a + b).norm())
        .fold(0.0, f64::max)
}

fn max_abs_on(v: &CFunc, members: impl Iterator<Item = usize>) -> f64 {
    members.map(|e| v[e].norm()).fold(0.0, f64::max)
}

fn vanishes_on_square_set(v: &CFunc, sq: &SquareSet, tol: f64) -> bool {
    max_abs_on(v, (0..v.len()).filter(|&e| sq.contains(e))) <= tol
}

fn near(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Build the `(f, g)` tables of a family case.
///
/// Every hypothesis the case places on its parameters is checked, and the
/// constructed pair is re-verified against its equation at residual
/// [`tol::CONSTRUCT`].
pub fn construct(
    case: &FamilyCase,
    s: &FiniteSemigroup,
    sigma: &Automorphism,
) -> Result<SolutionPair, ConstructError> {
    use ConstructError::*;
    let n = s.order();
    let vt = tol::VALUE_EQ;
    let check_mult = |v: &CFunc, name: &str| -> Result<(), ConstructError> {
        if v.len() != n {
            return Err(ConstraintViolation(format!("{name} has length {}, expected {n}", v.len())));
        }
        let r = multiplicative_residual(s, v);
        if r > vt * v.max_abs().max(1.0) {
            return Err(SideConditionFailure(format!("{name} is not multiplicative (residual {r:e})")));
        }
        Ok(())
    };
    let check_nonzero = |v: &CFunc, name: &str| -> Result<(), ConstructError> {
        if v.is_zero(vt) {
            return Err(ConstraintViolation(format!("{name} must be non-zero")));
        }
        Ok(())
    };
    let check_fixed = |v: &CFunc, name: &str| -> Result<(), ConstructError> {
        let d = twist_dev(v, sigma);
        if d > vt * v.max_abs().max(1.0) {
            return Err(SideConditionFailure(format!("{name}∘σ ≠ {name} (deviation {d:e})")));
        }
        Ok(())
    };
    let check_special_sine = |chi: &CFunc, phi: &CFunc| -> Result<(), ConstructError> {
        let r = special_sine_residual(s, chi, phi);
        if r > vt * phi.max_abs().max(1.0) {
            return Err(SideConditionFailure(format!(
                "phi does not solve the special sine law for chi (residual {r:e})"
            )));
        }
        Ok(())
    };
    let check_vanishing = |v: &CFunc, name: &str| -> Result<(), ConstructError> {
        check_nonzero(v, name)?;
        if !vanishes_on_square_set(v, &s.square_set(), vt) {
            return Err(ConstraintViolation(format!("{name} must vanish on S²")));
        }
        Ok(())
    };
    let exclude = |z: Complex64, bad: &[Complex64], name: &str| -> Result<(), ConstructError> {
        for &b in bad {
            if near(z, b, vt) {
                return Err(ConstraintViolation(format!("{name} = {b} is excluded")));
            }
        }
        Ok(())
    };

    let pair = match case {
        FamilyCase::Te31 | FamilyCase::Phi11 => {
            SolutionPair { f: CFunc::zeros(n), g: CFunc::zeros(n) }
        }
        FamilyCase::Te32 { g, c } => {
            check_vanishing(g, "g")?;
            if !near(*c, I, vt) && !near(*c, -I, vt) {
                return Err(ConstraintViolation("c must be i or -i".into()));
            }
            SolutionPair { f: g.scaled(*c), g: g.clone() }
        }
        FamilyCase::Te33 { chi, alpha } => {
            exclude(*alpha, &[I, -I], "alpha")?;
            check_mult(chi, "chi")?;
            check_nonzero(chi, "chi")?;
            check_fixed(chi, "chi")?;
            let denom = ONE + alpha * alpha;
            SolutionPair { f: chi.scaled(alpha / denom), g: chi.scaled(ONE / denom) }
        }
        FamilyCase::Te34 { chi1, chi2, delta } => {
            exclude(*delta, &[ZERO, I, -I], "delta")?;
            check_mult(chi1, "chi1")?;
            check_mult(chi2, "chi2")?;
            check_fixed(chi1, "chi1")?;
            check_fixed(chi2, "chi2")?;
            check_nonzero(chi1, "chi1")?;
            check_nonzero(chi2, "chi2")?;
            if chi1.approx_eq(chi2, vt) {
                return Err(ConstraintViolation("chi1 and chi2 must differ".into()));
            }
            let srec = delta.inv() + delta;
            let g = chi1.scaled(delta.inv() / srec).add(&chi2.scaled(delta / srec));
            let f = chi2.sub(chi1).scaled(ONE / srec);
            SolutionPair { f, g }
        }
        FamilyCase::Te35 { chi } => {
            check_mult(chi, "chi")?;
            let twisted = chi.compose_sigma(sigma);
            if chi.approx_eq(&twisted, vt) {
                return Err(SideConditionFailure("chi∘σ must differ from chi".into()));
            }
            let twice = chi.compose_sigma(&sigma.power(2));
            if !chi.approx_eq(&twice, vt) {
                return Err(SideConditionFailure("chi∘σ² must equal chi".into()));
            }
            let g = chi.add(&twisted).scaled(c64(0.5, 0.0));
            let f = chi.sub(&twisted).scaled(ONE / (c64(0.0, 2.0)));
            SolutionPair { f, g }
        }
        FamilyCase::Te36 { chi, phi, sign } => {
            check_mult(chi, "chi")?;
            check_nonzero(chi, "chi")?;
            check_fixed(chi, "chi")?;
            check_nonzero(phi, "phi")?;
            check_fixed(phi, "phi")?;
            check_special_sine(chi, phi)?;
            let g = chi.add(&phi.scaled(sign.factor()));
            SolutionPair { f: phi.scaled(-I), g }
        }
        FamilyCase::P11 { g } | FamilyCase::Th31 { g } => {
            if g.len() != n {
                return Err(ConstraintViolation("g has the wrong length".into()));
            }
            SolutionPair { f: CFunc::zeros(n), g: g.clone() }
        }
        FamilyCase::P12 { f } | FamilyCase::Phi22 { f } => {
            check_vanishing(f, "f")?;
            SolutionPair { f: f.clone(), g: CFunc::zeros(n) }
        }
        FamilyCase::P13 { chi, alpha } => {
            exclude(*alpha, &[ZERO], "alpha")?;
            check_mult(chi, "chi")?;
            check_nonzero(chi, "chi")?;
            check_fixed(chi, "chi")?;
            SolutionPair {
                f: chi.scaled(ONE / (c64(2.0, 0.0) * alpha)),
                g: chi.scaled(c64(0.5, 0.0)),
            }
        }
        FamilyCase::P14 { chi1, chi2, c } => {
            exclude(*c, &[ZERO], "c")?;
            check_mult(chi1, "chi1")?;
            check_mult(chi2, "chi2")?;
            check_fixed(chi1, "chi1")?;
            check_fixed(chi2, "chi2")?;
            check_nonzero(chi1, "chi1")?;
            check_nonzero(chi2, "chi2")?;
            if chi1.approx_eq(chi2, vt) {
                return Err(ConstraintViolation("chi1 and chi2 must differ".into()));
            }
            SolutionPair {
                f: chi1.sub(chi2).scaled(*c),
                g: chi1.add(chi2).scaled(c64(0.5, 0.0)),
            }
        }
        FamilyCase::P15 { chi, phi } => {
            check_mult(chi, "chi")?;
            check_nonzero(chi, "chi")?;
            check_fixed(chi, "chi")?;
            check_nonzero(phi, "phi")?;
            check_fixed(phi, "phi")?;
            check_special_sine(chi, phi)?;
            SolutionPair { f: phi.clone(), g: chi.clone() }
        }
        FamilyCase::Th32 { f, alpha } => {
            check_vanishing(f, "f")?;
            SolutionPair { f: f.clone(), g: f.scaled(*alpha) }
        }
        FamilyCase::Th33 { chi, c, c1 } => {
            exclude(*c, &[ZERO], "c")?;
            check_mult(chi, "chi")?;
            let twisted = chi.compose_sigma(sigma);
            if chi.approx_eq(&twisted, vt) {
                return Err(SideConditionFailure("chi∘σ must differ from chi".into()));
            }
            let twice = chi.compose_sigma(&sigma.power(2));
            if !chi.approx_eq(&twice, vt) {
                return Err(SideConditionFailure("chi∘σ² must equal chi".into()));
            }
            let diff = chi.sub(&twisted);
            let f = diff.scaled(*c);
            let g = chi
                .add(&twisted)
                .scaled(c64(0.5, 0.0))
                .add(&diff.scaled(c1 * c64(0.5, 0.0)));
            SolutionPair { f, g }
        }
        FamilyCase::Th34 { chi, phi, c2 } => {
            check_mult(chi, "chi")?;
            check_nonzero(chi, "chi")?;
            check_fixed(chi, "chi")?;
            check_nonzero(phi, "phi")?;
            let anti = twist_anti_dev(phi, sigma);
            if anti > vt * phi.max_abs().max(1.0) {
                return Err(SideConditionFailure(format!("phi∘σ ≠ −phi (deviation {anti:e})")));
            }
            check_special_sine(chi, phi)?;
            SolutionPair { f: phi.clone(), g: chi.add(&phi.scaled(*c2)) }
        }
        FamilyCase::Phi12 { chi1, chi2, delta } => {
            exclude(*delta, &[ZERO, I, -I], "delta")?;
            check_mult(chi1, "chi1")?;
            check_mult(chi2, "chi2")?;
            if chi1.approx_eq(chi2, vt) {
                return Err(ConstraintViolation("chi1 and chi2 must differ".into()));
            }
            let srec = delta.inv() + delta;
            let g = chi1.scaled(delta.inv() / srec).add(&chi2.scaled(delta / srec));
            let f = chi1.sub(chi2).scaled(ONE / (I * srec));
            SolutionPair { f, g }
        }
        FamilyCase::Phi13 { f, sign } => {
            check_vanishing(f, "f")?;
            SolutionPair { f: f.clone(), g: f.scaled(sign.factor()) }
        }
        FamilyCase::Phi14 { chi, phi, sign } => {
            check_mult(chi, "chi")?;
            check_nonzero(chi, "chi")?;
            check_special_sine(chi, phi)?;
            SolutionPair { f: phi.clone(), g: chi.add(&phi.scaled(sign.factor())) }
        }
        FamilyCase::Phi21 { chi1, chi2, c } => {
            exclude(*c, &[ZERO], "c")?;
            check_mult(chi1, "chi1")?;
            check_mult(chi2, "chi2")?;
            if chi1.approx_eq(chi2, vt) {
                return Err(ConstraintViolation("chi1 and chi2 must differ".into()));
            }
            SolutionPair {
                f: chi1.sub(chi2).scaled(*c),
                g: chi1.add(chi2).scaled(c64(0.5, 0.0)),
            }
        }
        FamilyCase::Phi23 { chi, phi } => {
            check_mult(chi, "chi")?;
            check_nonzero(chi, "chi")?;
            check_nonzero(phi, "phi")?;
            check_special_sine(chi, phi)?;
            SolutionPair { f: phi.clone(), g: chi.clone() }
        }
    };

    let residual = equation_residual(case.equation(), s, sigma, &pair.f, &pair.g);
    if residual > tol::CONSTRUCT {
        return Err(ConstructError::ResidualFailure { residual });
    }
    Ok(pair)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharacterReductionError {
    #[error("f must be non-zero")]
    ZeroFunction,
    #[error("beta must be non-zero")]
    ZeroBeta,
    #[error("premise f(xσ(y)) = β f(x)f(y) fails (residual {residual:e})")]
    HypothesisFailure { residual: f64 },
}

/// Result of the constant-multiple reduction: `χ = βf` with certificates.
#[derive(Debug, Clone)]
pub struct CharacterReduction {
    pub chi: MultiplicativeFunction,
    /// Max deviation of `χ∘σ` from `χ`.
    pub twist_deviation: f64,
}

/// If a non-zero `f` satisfies `f(xσ(y)) = β f(x)f(y)` with `β ≠ 0`, then
/// `χ := βf` is a non-zero multiplicative function with `χ∘σ = χ`. Verifies
/// the premise at `tol` and returns χ with both certificates checked.
pub fn reduce_to_character(
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    f: &CFunc,
    beta: Complex64,
    tol: f64,
) -> Result<CharacterReduction, CharacterReductionError> {
    if f.is_zero(0.0) {
        return Err(CharacterReductionError::ZeroFunction);
    }
    if beta.norm() == 0.0 {
        return Err(CharacterReductionError::ZeroBeta);
    }
    let n = s.order();
    let mut premise = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            let dev = (f[s.mul(x, sigma.apply(y))] - beta * f[x] * f[y]).norm();
            premise = premise.max(dev);
        }
    }
    if premise > tol {
        return Err(CharacterReductionError::HypothesisFailure { residual: premise });
    }
    let chi_values = f.scaled(beta);
    let residual = multiplicative_residual(s, &chi_values);
    if residual > tol {
        return Err(CharacterReductionError::HypothesisFailure { residual });
    }
    let twist_deviation = twist_dev(&chi_values, sigma);
    if twist_deviation > tol {
        return Err(CharacterReductionError::HypothesisFailure { residual: twist_deviation });
    }
    let chi = crate::funcspace::as_multiplicative(s, chi_values, tol)
        .expect("residual already verified");
    Ok(CharacterReduction { chi, twist_deviation })
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("pair does not solve the equation (residual {residual:e})")]
    NotASolution { residual: f64 },
    #[error("tables have length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// Diagnostics attached to a pair the classifier could not place.
#[derive(Debug, Clone, Default)]
pub struct ResidualProfile {
    pub equation_residual: f64,
    pub g_twist_dev: f64,
    pub f_twist_plus_dev: f64,
    pub f_twist_minus_dev: f64,
    pub notes: Vec<String>,
}

impl ResidualProfile {
    pub fn to_json(&self) -> Value {
        use crate::io::json_f64;
        json!({
            "equation_residual": json_f64(self.equation_residual),
            "g_twist_dev": json_f64(self.g_twist_dev),
            "f_twist_plus_dev": json_f64(self.f_twist_plus_dev),
            "f_twist_minus_dev": json_f64(self.f_twist_minus_dev),
            "notes": self.notes,
        })
    }
}

#[derive(Debug, Clone)]
pub enum ClassifyOutcome {
    Case(FamilyCase),
    Unclassified(ResidualProfile),
}

impl ClassifyOutcome {
    pub fn case(&self) -> Option<&FamilyCase> {
        match self {
            ClassifyOutcome::Case(c) => Some(c),
            ClassifyOutcome::Unclassified(_) => None,
        }
    }

    pub fn is_classified(&self) -> bool {
        matches!(self, ClassifyOutcome::Case(_))
    }
}

/// Precomputed per-(S, σ) data the classifier matches against: the non-zero
/// multiplicative functions, their twists, and the special sine-law basis
/// for each of them.
pub struct ClassifierContext<'a> {
    pub s: &'a FiniteSemigroup,
    pub sigma: &'a Automorphism,
    pub class_tol: f64,
    pub fit_tol: f64,
    mult: Vec<MultiplicativeFunction>,
    twisted: Vec<CFunc>,
    twisted2: Vec<CFunc>,
    bases: Vec<Vec<CFunc>>,
    square: SquareSet,
}

impl<'a> ClassifierContext<'a> {
    pub fn new(s: &'a FiniteSemigroup, sigma: &'a Automorphism) -> Self {
        let mult = enumerate_multiplicative(s, false);
        let sigma2 = sigma.power(2);
        let twisted: Vec<CFunc> = mult.iter().map(|m| m.values().compose_sigma(sigma)).collect();
        let twisted2: Vec<CFunc> = mult.iter().map(|m| m.values().compose_sigma(&sigma2)).collect();
        let bases: Vec<Vec<CFunc>> =
            mult.iter().map(|m| special_sine_basis(s, m.values())).collect();
        ClassifierContext {
            s,
            sigma,
            class_tol: tol::CLASS,
            fit_tol: tol::FIT,
            mult,
            twisted,
            twisted2,
            bases,
            square: s.square_set(),
        }
    }

    pub fn with_class_tol(mut self, class_tol: f64) -> Self {
        self.class_tol = class_tol;
        self
    }

    pub fn candidates(&self) -> &[MultiplicativeFunction] {
        &self.mult
    }

    fn sigma_fixed(&self, i: usize) -> bool {
        self.twisted[i].approx_eq(self.mult[i].values(), tol::VALUE_EQ)
    }

    fn sigma2_fixed(&self, i: usize) -> bool {
        self.twisted2[i].approx_eq(self.mult[i].values(), tol::VALUE_EQ)
    }

    fn find(&self, v: &CFunc, tol: f64) -> Option<usize> {
        self.mult.iter().position(|m| m.values().approx_eq(v, tol))
    }

    /// Project a recovered φ onto the special-sine basis of candidate `i`.
    fn snap_phi(&self, chi_index: Option<usize>, phi: CFunc, tol: f64) -> CFunc {
        let Some(i) = chi_index else { return phi };
        match linalg::project_onto_span(
            &self.bases[i].iter().map(|b| b.values().to_vec()).collect::<Vec<_>>(),
            phi.values(),
        ) {
            Some((_, rebuilt, residual)) if residual <= tol => CFunc::new(rebuilt),
            _ => phi,
        }
    }
}

/// Classify a solution pair of `eq` into its family case, recovering the
/// parameters. Pairs that do not satisfy the equation within
/// `ctx.class_tol` are rejected as [`ClassifyError::NotASolution`]; pairs
/// that satisfy it but match no case come back as
/// [`ClassifyOutcome::Unclassified`] with a residual profile.
pub fn classify(
    eq: EquationTag,
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    f: &CFunc,
    g: &CFunc,
) -> Result<ClassifyOutcome, ClassifyError> {
    classify_with(&ClassifierContext::new(s, sigma), eq, f, g)
}

/// [`classify`] against a prebuilt context (the hot path during sweeps).
pub fn classify_with(
    ctx: &ClassifierContext,
    eq: EquationTag,
    f: &CFunc,
    g: &CFunc,
) -> Result<ClassifyOutcome, ClassifyError> {
    let n = ctx.s.order();
    if f.len() != n || g.len() != n {
        return Err(ClassifyError::LengthMismatch { got: f.len().max(g.len()), expected: n });
    }
    let residual = equation_residual(eq, ctx.s, ctx.sigma, f, g);
    if residual > ctx.class_tol {
        return Err(ClassifyError::NotASolution { residual });
    }
    let mut profile = ResidualProfile {
        equation_residual: residual,
        g_twist_dev: twist_dev(g, ctx.sigma),
        f_twist_plus_dev: twist_dev(f, ctx.sigma),
        f_twist_minus_dev: twist_anti_dev(f, ctx.sigma),
        notes: Vec::new(),
    };
    let dispatch = |t: &Tols, profile: &mut ResidualProfile| match eq {
        EquationTag::CosSub | EquationTag::CosSubVariant => {
            classify_cos_sub(ctx, f, g, t, profile)
        }
        EquationTag::SineAdd | EquationTag::SineAddVariant => {
            classify_sine_add(ctx, f, g, t, profile)
        }
        EquationTag::SineSub => classify_sine_sub(ctx, f, g, t, profile),
        EquationTag::CosAddPlain => classify_cos_add_plain(ctx, f, g, t, profile),
        EquationTag::SineAddPlain => classify_sine_add_plain(ctx, f, g, t, profile),
    };
    let tight = tols(ctx, f, g, residual);
    if let Some(case) = dispatch(&tight, &mut profile) {
        return Ok(ClassifyOutcome::Case(case));
    }
    // Second pass for points deep in a flat convergence valley: they can
    // drift O(sqrt(residual)) off the variety with amplified parameter
    // noise, so retry with a relative acceptance radius. Candidates are
    // separated by O(1), so this stays far from ambiguity.
    let scale = f.max_abs().max(g.max_abs()).max(1.0);
    let relaxed = Tols { recon: tight.recon.max(1e-3 * scale), ..tight };
    if relaxed.recon > tight.recon {
        profile.notes.push("retrying with relaxed reconstruction radius".into());
        if let Some(case) = dispatch(&relaxed, &mut profile) {
            return Ok(ClassifyOutcome::Case(case));
        }
    }
    Ok(ClassifyOutcome::Unclassified(profile))
}

#[derive(Clone, Copy)]
struct Tols {
    /// Below this max-norm a table counts as zero.
    zero: f64,
    /// Acceptance radius for structural matches. Converged points sit
    /// within ~sqrt(residual) of the solution variety (the residual is
    /// quadratic across it), so matching tighter than that rejects honest
    /// solutions near degenerate corners.
    recon: f64,
}

fn tols(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, residual: f64) -> Tols {
    let scale = f.max_abs().max(g.max_abs()).max(1.0);
    let fit = ctx.fit_tol * scale;
    Tols { zero: ctx.class_tol * scale, recon: fit.max(20.0 * residual.sqrt()) }
}

/// Accept a candidate case only if its constructed tables reproduce the
/// observed pair. This is immune to the noise amplification that plagues
/// direct parameter checks near degenerate corners (for instance recovering
/// χ = (1+α²)g from a huge-α dependent pair).
fn reconstruct_matches(
    ctx: &ClassifierContext,
    case: &FamilyCase,
    f: &CFunc,
    g: &CFunc,
    tol: f64,
) -> bool {
    match construct(case, ctx.s, ctx.sigma) {
        Ok(pair) => pair.f.distance(f) <= tol && pair.g.distance(g) <= tol,
        Err(_) => false,
    }
}

fn classify_cos_sub(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    profile: &mut ResidualProfile,
) -> Option<FamilyCase> {
    if f.is_zero(t.zero) && g.is_zero(t.zero) {
        return Some(FamilyCase::Te31);
    }
    if linear_dependence(f, g) == Dependence::Independent {
        if profile.g_twist_dev <= t.recon {
            if profile.f_twist_plus_dev <= t.recon {
                if let Some(case) = try_two_character_cos(ctx, f, g, t, true) {
                    return Some(case);
                }
                if let Some(case) = try_te36(ctx, f, g, t) {
                    return Some(case);
                }
            }
            if profile.f_twist_minus_dev <= t.recon {
                if let Some(case) = try_te35(ctx, f, g, t) {
                    return Some(case);
                }
            }
        }
        profile.notes.push("no independent family matched".into());
    }
    // Dependent and near-degenerate shapes, including marginal verdicts
    // falling out of the independent branch.
    if let Some(case) = try_te32(ctx, f, g, t) {
        return Some(case);
    }
    if let Some(case) = try_te33(ctx, f, g, t) {
        return Some(case);
    }
    if f.max_abs().max(g.max_abs()) <= t.recon {
        return Some(FamilyCase::Te31);
    }
    profile.notes.push("no dependent family matched".into());
    None
}


/// Copy of `v` with its entries on S² forced to exactly zero: the canonical
/// representative stored by the vanishing-family cases.
fn zeroed_on_square(v: &CFunc, square: &SquareSet) -> CFunc {
    CFunc::from_fn(v.len(), |x| if square.contains(x) { ZERO } else { v[x] })
}

/// Match `g ≠ 0` vanishing on S² with `f = c·g`, `c ∈ {i, −i}`.
fn try_te32(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    if ctx.square.is_full() || g.is_zero(t.zero) {
        return None;
    }
    if !vanishes_on_square_set(g, &ctx.square, t.recon) {
        return None;
    }
    let g_param = zeroed_on_square(g, &ctx.square);
    if g_param.is_zero(t.zero) {
        return None;
    }
    let c_fit = linalg::lstsq_coeff(g_param.values(), f.values());
    if !c_fit.is_finite() {
        return None;
    }
    let c = if (c_fit - I).norm() <= (c_fit + I).norm() { I } else { -I };
    let case = FamilyCase::Te32 { g: g_param, c };
    reconstruct_matches(ctx, &case, f, g, t.recon).then_some(case)
}

/// Match `g = χ/(1+α²)`, `f = αχ/(1+α²)` over the σ-fixed candidates; the
/// parameters come from scale-free least squares, so this also resolves
/// the huge-α corner where `g` is microscopic.
fn try_te33(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    for (i, chi) in ctx.candidates().iter().enumerate() {
        if !ctx.sigma_fixed(i) {
            continue;
        }
        let chi = chi.values();
        let scale = linalg::lstsq_coeff(chi.values(), g.values());
        if !scale.is_finite() || scale.norm() == 0.0 || g.distance(&chi.scaled(scale)) > t.recon {
            continue;
        }
        let mut alphas = Vec::new();
        if f.is_zero(t.recon) {
            alphas.push(ZERO);
        }
        // f = (α/(1+α²))·χ and g = (1/(1+α²))·χ: fitting both factors
        // against the exact χ keeps the quotient α free of amplification.
        let numer = linalg::lstsq_coeff(chi.values(), f.values());
        if numer.is_finite() {
            let alpha = numer / scale;
            if alpha.is_finite() {
                alphas.push(alpha);
            }
            // Far out on the family g shrinks like 1/α² and stops carrying
            // usable phase, so also solve u = α/(1+α²) from f alone:
            // uα² − α + u = 0.
            if numer.norm() > 0.0 {
                let disc = (ONE - 4.0 * numer * numer).sqrt();
                for root in [(ONE + disc) / (2.0 * numer), (ONE - disc) / (2.0 * numer)] {
                    if root.is_finite() {
                        alphas.push(root);
                    }
                }
            }
        }
        for alpha in alphas {
            let case = FamilyCase::Te33 { chi: chi.clone(), alpha };
            if reconstruct_matches(ctx, &case, f, g, t.recon) {
                return Some(case);
            }
        }
    }
    None
}

/// Match `g = (δ⁻¹χ₁ + δχ₂)/(δ⁻¹+δ)` with `f = (χ₂−χ₁)/(δ⁻¹+δ)`
/// (`twisted` form, TE3.4) or `f = (χ₁−χ₂)/(i(δ⁻¹+δ))` (untwisted form,
/// PHI1.2) over pairs of candidates. Writing `g = a·χ₁ + b·χ₂` gives
/// `δ² = b/a`, which stays well conditioned where the quadratic for δ has
/// a near-double root.
fn try_two_character_cos(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    twisted: bool,
) -> Option<FamilyCase> {
    let indices: Vec<usize> = ctx
        .candidates()
        .iter()
        .enumerate()
        .filter(|(i, _)| !twisted || ctx.sigma_fixed(*i))
        .map(|(i, _)| i)
        .collect();
    for (pos, &a_idx) in indices.iter().enumerate() {
        for &b_idx in indices.iter().skip(pos + 1) {
            let chi1 = ctx.mult[a_idx].values();
            let chi2 = ctx.mult[b_idx].values();
            let span = [chi1.values().to_vec(), chi2.values().to_vec()];
            let Some((coords, _, proj_res)) = linalg::project_onto_span(&span, g.values()) else {
                continue;
            };
            if proj_res > t.recon {
                continue;
            }
            let (a, b) = (coords[0], coords[1]);
            let mut deltas = Vec::with_capacity(4);
            if a.is_finite() && b.is_finite() && a.norm() > 0.0 {
                let root = (b / a).sqrt();
                if root.is_finite() && root.norm() > 0.0 {
                    deltas.push(root);
                    deltas.push(-root);
                }
            }
            // Second route through f: s = δ+δ⁻¹ from s·f = ±(χ₂−χ₁); far
            // out on the family one of a, b underflows and only this
            // route sees the right δ.
            let target = if twisted { chi2.sub(chi1) } else { chi1.sub(chi2).scaled(-I) };
            let s = linalg::lstsq_coeff(f.values(), target.values());
            if s.is_finite()
                && s.norm() > 0.0
                && target.distance(&f.scaled(s)) <= t.recon * s.norm().max(1.0)
            {
                let disc = (s * s - c64(4.0, 0.0)).sqrt();
                deltas.push((s + disc) / 2.0);
                deltas.push((s - disc) / 2.0);
            }
            for delta in deltas {
                if delta.norm() <= ctx.fit_tol
                    || near(delta, I, ctx.fit_tol)
                    || near(delta, -I, ctx.fit_tol)
                {
                    continue;
                }
                let (c1, c2, delta) =
                    canonical_delta_triple(chi1.clone(), chi2.clone(), delta);
                let case = if twisted {
                    FamilyCase::Te34 { chi1: c1, chi2: c2, delta }
                } else {
                    FamilyCase::Phi12 { chi1: c1, chi2: c2, delta }
                };
                if reconstruct_matches(ctx, &case, f, g, t.recon) {
                    return Some(case);
                }
            }
        }
    }
    None
}

/// The parameter triples (δ, χ₁, χ₂) and (−δ⁻¹, χ₂, χ₁) build the same
/// pair. Prefer |δ| ≥ 1; at |δ| = 1 both have the same imaginary part, so
/// break the tie on the real part (they differ unless δ = ±i, which is
/// excluded).
fn canonical_delta_triple(chi1: CFunc, chi2: CFunc, delta: Complex64) -> (CFunc, CFunc, Complex64) {
    let other = -delta.inv();
    let keep = if delta.norm() > other.norm() + 1e-9 {
        true
    } else if other.norm() > delta.norm() + 1e-9 {
        false
    } else {
        delta.re >= other.re
    };
    if keep {
        (chi1, chi2, delta)
    } else {
        (chi2, chi1, other)
    }
}

/// Match `f = −iφ`, `g = χ ± φ` with `φ = if` in the σ-fixed special sine
/// space of χ.
fn try_te36(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    let phi = f.scaled(I);
    if phi.is_zero(t.zero) || twist_dev(&phi, ctx.sigma) > t.recon {
        return None;
    }
    for sign in [Sign::Plus, Sign::Minus] {
        let chi = g.sub(&phi.scaled(sign.factor()));
        if chi.is_zero(t.zero) {
            continue;
        }
        let Some(idx) = ctx.find(&chi, t.recon) else { continue };
        let chi_exact = ctx.mult[idx].values().clone();
        let phi_exact = ctx.snap_phi(Some(idx), phi.clone(), t.recon);
        let case = FamilyCase::Te36 { chi: chi_exact, phi: phi_exact, sign };
        if reconstruct_matches(ctx, &case, f, g, t.recon) {
            return Some(case);
        }
    }
    None
}

/// Match `g = (χ+χ∘σ)/2`, `f = (χ−χ∘σ)/(2i)` via `χ = g + if`.
fn try_te35(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    let chi = g.add(&f.scaled(I));
    let idx = ctx.find(&chi, t.recon)?;
    let case = FamilyCase::Te35 { chi: ctx.mult[idx].values().clone() };
    reconstruct_matches(ctx, &case, f, g, t.recon).then_some(case)
}

fn classify_sine_add(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    profile: &mut ResidualProfile,
) -> Option<FamilyCase> {
    if f.is_zero(t.zero) {
        return Some(FamilyCase::P11 { g: g.clone() });
    }
    if linear_dependence(f, g) == Dependence::Independent {
        if profile.f_twist_plus_dev <= t.recon && profile.g_twist_dev <= t.recon {
            if let Some(case) = try_two_character_sine(ctx, f, g, t, SineKind::Twisted) {
                return Some(case);
            }
            if let Some(case) = try_phi_chi_sine(ctx, f, g, t, SineKind::Twisted) {
                return Some(case);
            }
        }
        profile.notes.push("no independent family matched".into());
    }
    if let Some(case) = try_vanishing_sine(ctx, f, g, t, SineKind::Twisted) {
        return Some(case);
    }
    if let Some(case) = try_p13(ctx, f, g, t) {
        return Some(case);
    }
    if f.is_zero(t.recon) {
        return Some(FamilyCase::P11 { g: g.clone() });
    }
    profile.notes.push("no dependent family matched".into());
    None
}

/// Match `f ≠ 0` vanishing on S² with `g = 0` (P1.2 / PHI2.2).
fn try_vanishing_sine(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    kind: SineKind,
) -> Option<FamilyCase> {
    if ctx.square.is_full() || f.is_zero(t.zero) {
        return None;
    }
    if !vanishes_on_square_set(f, &ctx.square, t.recon) || !g.is_zero(t.recon) {
        return None;
    }
    let f_param = zeroed_on_square(f, &ctx.square);
    if f_param.is_zero(t.zero) {
        return None;
    }
    let case = match kind {
        SineKind::Twisted => FamilyCase::P12 { f: f_param },
        SineKind::Plain => FamilyCase::Phi22 { f: f_param },
    };
    reconstruct_matches(ctx, &case, f, g, t.recon).then_some(case)
}

/// Match `f = χ/(2α)`, `g = χ/2` over the σ-fixed candidates.
fn try_p13(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    for (i, chi) in ctx.candidates().iter().enumerate() {
        if !ctx.sigma_fixed(i) {
            continue;
        }
        let chi = chi.values();
        if g.distance(&chi.scaled(c64(0.5, 0.0))) > t.recon {
            continue;
        }
        // f = χ/(2α) ⇒ fit u := 1/(2α) from f = u·χ
        let u = linalg::lstsq_coeff(chi.values(), f.values());
        if !u.is_finite() || u.norm() <= ctx.fit_tol {
            continue;
        }
        let alpha = (2.0 * u).inv();
        let case = FamilyCase::P13 { chi: chi.clone(), alpha };
        if reconstruct_matches(ctx, &case, f, g, t.recon) {
            return Some(case);
        }
    }
    None
}

#[derive(Clone, Copy, PartialEq)]
enum SineKind {
    /// σ-equation: P1.x cases with σ-fixed characters.
    Twisted,
    /// untwisted equation: PHI2.x cases, zero slot allowed in the pair.
    Plain,
}

/// Match `f = c(χ₁−χ₂)`, `g = (χ₁+χ₂)/2`.
fn try_two_character_sine(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    kind: SineKind,
) -> Option<FamilyCase> {
    let n = ctx.s.order();
    let mut slots: Vec<Option<usize>> = ctx
        .candidates()
        .iter()
        .enumerate()
        .filter(|(i, _)| kind == SineKind::Plain || ctx.sigma_fixed(*i))
        .map(|(i, _)| Some(i))
        .collect();
    if kind == SineKind::Plain {
        slots.push(None);
    }
    let table = |slot: &Option<usize>| -> CFunc {
        match slot {
            Some(i) => ctx.mult[*i].values().clone(),
            None => CFunc::zeros(n),
        }
    };
    for a in &slots {
        for b in &slots {
            if a == b {
                continue;
            }
            let chi1 = table(a);
            let chi2 = table(b);
            if g.distance(&chi1.add(&chi2).scaled(c64(0.5, 0.0))) > t.recon {
                continue;
            }
            let diff = chi1.sub(&chi2);
            let c = linalg::lstsq_coeff(diff.values(), f.values());
            if !c.is_finite() || c.norm() <= ctx.fit_tol {
                continue;
            }
            let (chi1, chi2, c) = if chi2.lex_cmp(&chi1) == std::cmp::Ordering::Less {
                (chi2, chi1, -c)
            } else {
                (chi1, chi2, c)
            };
            let case = match kind {
                SineKind::Twisted => FamilyCase::P14 { chi1, chi2, c },
                SineKind::Plain => FamilyCase::Phi21 { chi1, chi2, c },
            };
            if reconstruct_matches(ctx, &case, f, g, t.recon) {
                return Some(case);
            }
        }
    }
    None
}

/// Match `f = φ`, `g = χ` with φ in the special sine space of χ.
fn try_phi_chi_sine(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    kind: SineKind,
) -> Option<FamilyCase> {
    let idx = ctx.find(g, t.recon)?;
    if kind == SineKind::Twisted && !ctx.sigma_fixed(idx) {
        return None;
    }
    let chi = ctx.mult[idx].values().clone();
    let phi = ctx.snap_phi(Some(idx), f.clone(), t.recon);
    let case = match kind {
        SineKind::Twisted => FamilyCase::P15 { chi, phi },
        SineKind::Plain => FamilyCase::Phi23 { chi, phi },
    };
    reconstruct_matches(ctx, &case, f, g, t.recon).then_some(case)
}

fn classify_sine_sub(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    profile: &mut ResidualProfile,
) -> Option<FamilyCase> {
    if f.is_zero(t.zero) {
        return Some(FamilyCase::Th31 { g: g.clone() });
    }
    if linear_dependence(f, g) == Dependence::Independent {
        if profile.f_twist_minus_dev <= t.recon {
            if let Some(case) = try_th33(ctx, f, g, t) {
                return Some(case);
            }
            if let Some(case) = try_th34(ctx, f, g, t) {
                return Some(case);
            }
        }
        profile.notes.push("no independent family matched".into());
    }
    if let Some(case) = try_th32(ctx, f, g, t) {
        return Some(case);
    }
    if f.is_zero(t.recon) {
        return Some(FamilyCase::Th31 { g: g.clone() });
    }
    profile.notes.push("no dependent family matched".into());
    None
}

/// Match `f ≠ 0` vanishing on S² with `g = αf`.
fn try_th32(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    if ctx.square.is_full() || f.is_zero(t.zero) {
        return None;
    }
    if !vanishes_on_square_set(f, &ctx.square, t.recon) {
        return None;
    }
    let f_param = zeroed_on_square(f, &ctx.square);
    if f_param.is_zero(t.zero) {
        return None;
    }
    let alpha = linalg::lstsq_coeff(f_param.values(), g.values());
    if !alpha.is_finite() {
        return None;
    }
    let case = FamilyCase::Th32 { f: f_param, alpha };
    reconstruct_matches(ctx, &case, f, g, t.recon).then_some(case)
}

/// Match `f = c(χ−χ∘σ)`, `g = (χ+χ∘σ)/2 + c₁(χ−χ∘σ)/2`.
fn try_th33(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    for (i, chi) in ctx.candidates().iter().enumerate() {
        if ctx.sigma_fixed(i) || !ctx.sigma2_fixed(i) {
            continue;
        }
        let chi = chi.values();
        let twisted = &ctx.twisted[i];
        let diff = chi.sub(twisted);
        let c = linalg::lstsq_coeff(diff.values(), f.values());
        if !c.is_finite() || c.norm() <= ctx.fit_tol || f.distance(&diff.scaled(c)) > t.recon {
            continue;
        }
        let mean = chi.add(twisted).scaled(c64(0.5, 0.0));
        let rest = g.sub(&mean);
        let half_diff = diff.scaled(c64(0.5, 0.0));
        let c1 = linalg::lstsq_coeff(half_diff.values(), rest.values());
        // (χ, c, c₁) and (χ∘σ, −c, −c₁) describe the same pair: keep the
        // lexicographically smaller character.
        let case = if twisted.lex_cmp(chi) == std::cmp::Ordering::Less {
            FamilyCase::Th33 { chi: twisted.clone(), c: -c, c1: -c1 }
        } else {
            FamilyCase::Th33 { chi: chi.clone(), c, c1 }
        };
        if reconstruct_matches(ctx, &case, f, g, t.recon) {
            return Some(case);
        }
    }
    None
}

/// Match `f = φ`, `g = χ + c₂φ` with `φ∘σ = −φ`.
fn try_th34(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    for (i, chi) in ctx.candidates().iter().enumerate() {
        if !ctx.sigma_fixed(i) {
            continue;
        }
        let chi = chi.values();
        if special_sine_residual(ctx.s, chi, f) > t.recon {
            continue;
        }
        let rest = g.sub(chi);
        let c2 = linalg::lstsq_coeff(f.values(), rest.values());
        if !c2.is_finite() || rest.distance(&f.scaled(c2)) > t.recon {
            continue;
        }
        let phi = ctx.snap_phi(Some(i), f.clone(), t.recon);
        let case = FamilyCase::Th34 { chi: chi.clone(), phi, c2 };
        if reconstruct_matches(ctx, &case, f, g, t.recon) {
            return Some(case);
        }
    }
    None
}

fn classify_cos_add_plain(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    profile: &mut ResidualProfile,
) -> Option<FamilyCase> {
    if g.is_zero(t.zero) && f.is_zero(t.zero) {
        return Some(FamilyCase::Phi11);
    }
    if linear_dependence(f, g) == Dependence::Independent {
        if let Some(case) = try_two_character_cos(ctx, f, g, t, false) {
            return Some(case);
        }
        if let Some(case) = try_phi14(ctx, f, g, t) {
            return Some(case);
        }
        profile.notes.push("no independent family matched".into());
    }
    if let Some(case) = try_phi13(ctx, f, g, t) {
        return Some(case);
    }
    // f ≈ 0 leaves g multiplicative: the φ = 0 slice of PHI1.4.
    if f.is_zero(t.recon) {
        if let Some(idx) = ctx.find(g, t.recon) {
            let case = FamilyCase::Phi14 {
                chi: ctx.mult[idx].values().clone(),
                phi: CFunc::zeros(ctx.s.order()),
                sign: Sign::Plus,
            };
            if reconstruct_matches(ctx, &case, f, g, t.recon) {
                return Some(case);
            }
        }
    }
    // dependent f = αg with α ∉ {0, ±1}: PHI1.2 with χ₂ = 0, δ = iα.
    if let Some(case) = try_phi12_dependent(ctx, f, g, t) {
        return Some(case);
    }
    if f.max_abs().max(g.max_abs()) <= t.recon {
        return Some(FamilyCase::Phi11);
    }
    profile.notes.push("no dependent family matched".into());
    None
}

/// Match `f ≠ 0` vanishing on S² with `g = ±f`.
fn try_phi13(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    if ctx.square.is_full() || f.is_zero(t.zero) {
        return None;
    }
    if !vanishes_on_square_set(f, &ctx.square, t.recon) {
        return None;
    }
    let f_param = zeroed_on_square(f, &ctx.square);
    if f_param.is_zero(t.zero) {
        return None;
    }
    for sign in [Sign::Plus, Sign::Minus] {
        if g.distance(&f_param.scaled(sign.factor())) <= t.recon {
            let case = FamilyCase::Phi13 { f: f_param.clone(), sign };
            if reconstruct_matches(ctx, &case, f, g, t.recon) {
                return Some(case);
            }
        }
    }
    None
}

/// Match `g = χ ± φ`, `f = φ` (no σ conditions).
fn try_phi14(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    for sign in [Sign::Plus, Sign::Minus] {
        let chi = g.sub(&f.scaled(sign.factor()));
        if chi.is_zero(t.zero) {
            continue;
        }
        let Some(idx) = ctx.find(&chi, t.recon) else { continue };
        let chi_exact = ctx.mult[idx].values().clone();
        let phi = ctx.snap_phi(Some(idx), f.clone(), t.recon);
        let case = FamilyCase::Phi14 { chi: chi_exact, phi, sign };
        if reconstruct_matches(ctx, &case, f, g, t.recon) {
            return Some(case);
        }
    }
    None
}

/// Match the dependent pairs `f = αg`, `χ₁ = (1−α²)g`: PHI1.2 with a zero
/// second character and `δ = iα`.
fn try_phi12_dependent(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    let n = ctx.s.order();
    for chi in ctx.candidates() {
        let chi = chi.values();
        let scale = linalg::lstsq_coeff(chi.values(), g.values());
        if !scale.is_finite() || scale.norm() == 0.0 || g.distance(&chi.scaled(scale)) > t.recon {
            continue;
        }
        let numer = linalg::lstsq_coeff(chi.values(), f.values());
        let mut alphas = Vec::new();
        let ratio = numer / scale;
        if ratio.is_finite() {
            alphas.push(ratio);
        }
        // f = (δ/(i(1+δ²)))·χ with δ = iα: recover α from f alone through
        // uα² + α − u = 0 (u the coefficient of χ in f) for the far field.
        if numer.is_finite() && numer.norm() > 0.0 {
            let disc = (ONE + 4.0 * numer * numer).sqrt();
            for root in [(-ONE + disc) / (2.0 * numer), (-ONE - disc) / (2.0 * numer)] {
                if root.is_finite() {
                    alphas.push(root);
                }
            }
        }
        for alpha in alphas {
            let (c1, c2, delta) =
                canonical_delta_triple(chi.clone(), CFunc::zeros(n), I * alpha);
            let case = FamilyCase::Phi12 { chi1: c1, chi2: c2, delta };
            if reconstruct_matches(ctx, &case, f, g, t.recon) {
                return Some(case);
            }
        }
    }
    None
}

fn classify_sine_add_plain(
    ctx: &ClassifierContext,
    f: &CFunc,
    g: &CFunc,
    t: &Tols,
    profile: &mut ResidualProfile,
) -> Option<FamilyCase> {
    if f.is_zero(t.zero) {
        // The untwisted equation is the σ = id instance, so the f = 0
        // family keeps its σ-equation tag.
        return Some(FamilyCase::P11 { g: g.clone() });
    }
    if linear_dependence(f, g) == Dependence::Independent {
        if let Some(case) = try_two_character_sine(ctx, f, g, t, SineKind::Plain) {
            return Some(case);
        }
        if let Some(case) = try_phi_chi_sine(ctx, f, g, t, SineKind::Plain) {
            return Some(case);
        }
        profile.notes.push("no independent family matched".into());
    }
    if let Some(case) = try_vanishing_sine(ctx, f, g, t, SineKind::Plain) {
        return Some(case);
    }
    // dependent g = αf: PHI2.1 with χ₁ = 2g and a zero second character.
    if let Some(case) = try_phi21_dependent(ctx, f, g, t) {
        return Some(case);
    }
    if f.is_zero(t.recon) {
        return Some(FamilyCase::P11 { g: g.clone() });
    }
    profile.notes.push("no dependent family matched".into());
    None
}

fn try_phi21_dependent(ctx: &ClassifierContext, f: &CFunc, g: &CFunc, t: &Tols) -> Option<FamilyCase> {
    let n = ctx.s.order();
    for chi in ctx.candidates() {
        let chi = chi.values();
        if g.distance(&chi.scaled(c64(0.5, 0.0))) > t.recon {
            continue;
        }
        let c = linalg::lstsq_coeff(chi.values(), f.values());
        if !c.is_finite() || c.norm() <= ctx.fit_tol {
            continue;
        }
        let zero = CFunc::zeros(n);
        let (chi1, chi2, c) = if zero.lex_cmp(chi) == std::cmp::Ordering::Less {
            (zero, chi.clone(), -c)
        } else {
            (chi.clone(), zero, c)
        };
        let case = FamilyCase::Phi21 { chi1, chi2, c };
        if reconstruct_matches(ctx, &case, f, g, t.recon) {
            return Some(case);
        }
    }
    None
}

/// Outcome of checking the twist-symmetry properties of an independent
/// solution: `g∘σ = g` with `f∘σ = ±f` for the cosine law, `f∘σ = f` and
/// `g∘σ = g` for the sine addition law, `f∘σ = −f` and `g∘σ − g ∈ span{f}`
/// for the sine subtraction law.
#[derive(Debug, Clone)]
pub enum SymmetryReport {
    /// The hypotheses need linear independence; nothing to check.
    NotIndependent { verdict: Dependence },
    /// The untwisted equations carry no symmetry statement.
    NotApplicable,
    /// cosine subtraction law (and its variant): `g∘σ = g`, `f∘σ = ±f`.
    CosSub { g_dev: f64, sign: Sign, f_dev: f64, pass: bool },
    /// sine addition law (and its variant): `f∘σ = f`, `g∘σ = g`.
    SineAdd { f_dev: f64, g_dev: f64, pass: bool },
    /// sine subtraction law: `f∘σ = −f`, `g∘σ − g = βf`.
    SineSub { f_anti_dev: f64, beta: Complex64, span_residual: f64, pass: bool },
}

impl SymmetryReport {
    /// True when the applicable conclusion held (vacuously for the
    /// non-independent and non-applicable reports).
    pub fn passed(&self) -> bool {
        match self {
            SymmetryReport::NotIndependent { .. } | SymmetryReport::NotApplicable => true,
            SymmetryReport::CosSub { pass, .. }
            | SymmetryReport::SineAdd { pass, .. }
            | SymmetryReport::SineSub { pass, .. } => *pass,
        }
    }

    pub fn to_json(&self) -> Value {
        use crate::io::{complex_to_json, json_f64};
        match self {
            SymmetryReport::NotIndependent { verdict } => {
                json!({"law": "none", "reason": format!("pair is not independent: {verdict:?}")})
            }
            SymmetryReport::NotApplicable => {
                json!({"law": "none", "reason": "equation does not use the automorphism"})
            }
            SymmetryReport::CosSub { g_dev, sign, f_dev, pass } => json!({
                "law": "cos-sub",
                "g_twist_dev": json_f64(*g_dev),
                "f_sign": sign.symbol(),
                "f_twist_dev": json_f64(*f_dev),
                "pass": pass,
            }),
            SymmetryReport::SineAdd { f_dev, g_dev, pass } => json!({
                "law": "sine-add",
                "f_twist_dev": json_f64(*f_dev),
                "g_twist_dev": json_f64(*g_dev),
                "pass": pass,
            }),
            SymmetryReport::SineSub { f_anti_dev, beta, span_residual, pass } => json!({
                "law": "sine-sub",
                "f_antitwist_dev": json_f64(*f_anti_dev),
                "beta": complex_to_json(*beta),
                "span_residual": json_f64(*span_residual),
                "pass": pass,
            }),
        }
    }
}

/// Verify the twist-symmetry conclusion for a linearly independent solution
/// of `eq` at tolerance `tol` (scaled by the table magnitude). The pair
/// must solve the equation within [`tol::CLASS`].
pub fn check_twist_symmetry(
    eq: EquationTag,
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    f: &CFunc,
    g: &CFunc,
    tol: f64,
) -> Result<SymmetryReport, ClassifyError> {
    let residual = equation_residual(eq, s, sigma, f, g);
    if residual > tol::CLASS {
        return Err(ClassifyError::NotASolution { residual });
    }
    if !eq.uses_sigma() {
        return Ok(SymmetryReport::NotApplicable);
    }
    let verdict = linear_dependence(f, g);
    if verdict != Dependence::Independent {
        return Ok(SymmetryReport::NotIndependent { verdict });
    }
    let scale = f.max_abs().max(g.max_abs()).max(1.0);
    let eps = tol * scale;
    match eq {
        EquationTag::CosSub | EquationTag::CosSubVariant => {
            let g_dev = twist_dev(g, sigma);
            let plus = twist_dev(f, sigma);
            let minus = twist_anti_dev(f, sigma);
            let (sign, f_dev) =
                if plus <= minus { (Sign::Plus, plus) } else { (Sign::Minus, minus) };
            Ok(SymmetryReport::CosSub { g_dev, sign, f_dev, pass: g_dev <= eps && f_dev <= eps })
        }
        EquationTag::SineAdd | EquationTag::SineAddVariant => {
            let f_dev = twist_dev(f, sigma);
            let g_dev = twist_dev(g, sigma);
            Ok(SymmetryReport::SineAdd { f_dev, g_dev, pass: f_dev <= eps && g_dev <= eps })
        }
        EquationTag::SineSub => {
            let f_anti_dev = twist_anti_dev(f, sigma);
            let shift = g.compose_sigma(sigma).sub(g);
            let beta = linalg::lstsq_coeff(f.values(), shift.values());
            let span_residual = shift.distance(&f.scaled(beta));
            Ok(SymmetryReport::SineSub {
                f_anti_dev,
                beta,
                span_residual,
                pass: f_anti_dev <= eps && span_residual <= eps,
            })
        }
        EquationTag::CosAddPlain | EquationTag::SineAddPlain => unreachable!(),
    }
}

/// Linear combinations of `basis` fixed by the twist (`φ∘σ = φ` for
/// `Sign::Plus`) or anti-fixed (`φ∘σ = −φ` for `Sign::Minus`), as a
/// deterministic basis of the corresponding subspace.
pub fn twist_eigenspace(
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    basis: &[CFunc],
    sign: Sign,
) -> Vec<CFunc> {
    let n = s.order();
    let d = basis.len();
    if d == 0 {
        return Vec::new();
    }
    // rows: x in S, cols: basis index; entry basis_k(σx) ∓ basis_k(x)
    let mut a = vec![ZERO; n * d];
    for x in 0..n {
        for (k, b) in basis.iter().enumerate() {
            a[x * d + k] = b[sigma.apply(x)] - sign.factor() * b[x];
        }
    }
    linalg::nullspace(n, d, a, tol::RANK)
        .into_iter()
        .map(|coords| {
            let mut v = CFunc::zeros(n);
            for (k, c) in coords.iter().enumerate() {
                v = v.add(&basis[k].scaled(*c));
            }
            v
        })
        .collect()
}

/// Deterministic list of constructible case instances of `eq` on `(S, σ)`,
/// covering every case that is non-empty there with a few parameter values
/// each. Used to seed the numerical solver and to drive the forward
/// verification suites.
pub fn case_instances(
    eq: EquationTag,
    s: &FiniteSemigroup,
    sigma: &Automorphism,
) -> Vec<FamilyCase> {
    let n = s.order();
    let cands = enumerate_multiplicative(s, false);
    let fixed: Vec<&MultiplicativeFunction> = cands
        .iter()
        .filter(|m| twist_dev(m.values(), sigma) <= tol::VALUE_EQ)
        .collect();
    let sigma2 = sigma.power(2);
    let conjugate_pairs: Vec<&MultiplicativeFunction> = cands
        .iter()
        .filter(|m| {
            twist_dev(m.values(), sigma) > tol::VALUE_EQ
                && m.values().compose_sigma(&sigma2).approx_eq(m.values(), tol::VALUE_EQ)
        })
        .collect();
    let square = s.square_set();
    let off_square: Vec<CFunc> = if square.is_full() {
        Vec::new()
    } else {
        let comp = square.complement();
        let indicator = CFunc::from_fn(n, |x| if comp.contains(&x) { ONE } else { ZERO });
        let ramp = CFunc::from_fn(n, |x| {
            if comp.contains(&x) {
                c64(1.0 + x as f64, 2.0 - x as f64)
            } else {
                ZERO
            }
        });
        vec![indicator, ramp]
    };
    let arbitrary: Vec<CFunc> = vec![
        CFunc::zeros(n),
        CFunc::constant(n, ONE),
        CFunc::from_fn(n, |x| c64(1.0 + x as f64, x as f64 - 1.0)),
    ];
    // σ-fixed (resp. anti-fixed) slices of the special sine space per χ.
    let phi_fixed = |chi: &MultiplicativeFunction| -> Vec<CFunc> {
        let basis = special_sine_basis(s, chi.values());
        let mut out = twist_eigenspace(s, sigma, &basis, Sign::Plus);
        if out.len() >= 2 {
            let sum = out.iter().fold(CFunc::zeros(n), |acc, v| acc.add(v));
            out.push(sum);
        }
        out
    };
    let phi_anti = |chi: &MultiplicativeFunction| -> Vec<CFunc> {
        let basis = special_sine_basis(s, chi.values());
        twist_eigenspace(s, sigma, &basis, Sign::Minus)
    };

    let mut cases: Vec<FamilyCase> = Vec::new();
    match eq {
        EquationTag::CosSub | EquationTag::CosSubVariant => {
            cases.push(FamilyCase::Te31);
            for g in &off_square {
                for c in [I, -I] {
                    cases.push(FamilyCase::Te32 { g: g.clone(), c });
                }
            }
            for chi in &fixed {
                for alpha in [ZERO, ONE, c64(-2.0, 0.0), c64(0.5, 0.5)] {
                    cases.push(FamilyCase::Te33 { chi: chi.values().clone(), alpha });
                }
            }
            for (i, chi1) in fixed.iter().enumerate() {
                for chi2 in fixed.iter().skip(i + 1) {
                    for delta in [c64(2.0, 0.0), c64(0.5, 0.0), c64(1.0, 1.0)] {
                        cases.push(FamilyCase::Te34 {
                            chi1: chi1.values().clone(),
                            chi2: chi2.values().clone(),
                            delta,
                        });
                    }
                }
            }
            for chi in &conjugate_pairs {
                cases.push(FamilyCase::Te35 { chi: chi.values().clone() });
            }
            for chi in &fixed {
                for phi in phi_fixed(chi) {
                    for sign in [Sign::Plus, Sign::Minus] {
                        cases.push(FamilyCase::Te36 {
                            chi: chi.values().clone(),
                            phi: phi.clone(),
                            sign,
                        });
                    }
                }
            }
        }
        EquationTag::SineAdd | EquationTag::SineAddVariant => {
            for g in &arbitrary {
                cases.push(FamilyCase::P11 { g: g.clone() });
            }
            for f in &off_square {
                cases.push(FamilyCase::P12 { f: f.clone() });
            }
            for chi in &fixed {
                for alpha in [ONE, c64(-0.5, 0.0), I] {
                    cases.push(FamilyCase::P13 { chi: chi.values().clone(), alpha });
                }
            }
            for (i, chi1) in fixed.iter().enumerate() {
                for chi2 in fixed.iter().skip(i + 1) {
                    for c in [ONE, c64(2.0, -1.0)] {
                        cases.push(FamilyCase::P14 {
                            chi1: chi1.values().clone(),
                            chi2: chi2.values().clone(),
                            c,
                        });
                    }
                }
            }
            for chi in &fixed {
                for phi in phi_fixed(chi) {
                    cases.push(FamilyCase::P15 { chi: chi.values().clone(), phi });
                }
            }
        }
        EquationTag::SineSub => {
            for g in &arbitrary {
                cases.push(FamilyCase::Th31 { g: g.clone() });
            }
            for f in &off_square {
                for alpha in [ZERO, ONE, -I] {
                    cases.push(FamilyCase::Th32 { f: f.clone(), alpha });
                }
            }
            for chi in &conjugate_pairs {
                for c in [ONE, c64(2.0, 1.0)] {
                    for c1 in [ZERO, c64(1.0, -1.0)] {
                        cases.push(FamilyCase::Th33 { chi: chi.values().clone(), c, c1 });
                    }
                }
            }
            for chi in &fixed {
                for phi in phi_anti(chi) {
                    for c2 in [ZERO, c64(1.0, 1.0)] {
                        cases.push(FamilyCase::Th34 {
                            chi: chi.values().clone(),
                            phi: phi.clone(),
                            c2,
                        });
                    }
                }
            }
        }
        EquationTag::CosAddPlain => {
            cases.push(FamilyCase::Phi11);
            for (i, chi1) in cands.iter().enumerate() {
                for chi2 in cands.iter().skip(i + 1) {
                    for delta in [c64(2.0, 0.0), c64(1.0, 1.0)] {
                        cases.push(FamilyCase::Phi12 {
                            chi1: chi1.values().clone(),
                            chi2: chi2.values().clone(),
                            delta,
                        });
                    }
                }
            }
            for chi in &cands {
                for delta in [c64(2.0, 0.0), c64(0.0, -2.0)] {
                    cases.push(FamilyCase::Phi12 {
                        chi1: chi.values().clone(),
                        chi2: CFunc::zeros(n),
                        delta,
                    });
                }
            }
            for f in &off_square {
                for sign in [Sign::Plus, Sign::Minus] {
                    cases.push(FamilyCase::Phi13 { f: f.clone(), sign });
                }
            }
            for chi in &cands {
                let mut phis = vec![CFunc::zeros(n)];
                phis.extend(special_sine_basis(s, chi.values()));
                for phi in phis {
                    for sign in [Sign::Plus, Sign::Minus] {
                        if phi.is_zero(0.0) && sign == Sign::Minus {
                            continue;
                        }
                        cases.push(FamilyCase::Phi14 {
                            chi: chi.values().clone(),
                            phi: phi.clone(),
                            sign,
                        });
                    }
                }
            }
        }
        EquationTag::SineAddPlain => {
            for g in &arbitrary {
                cases.push(FamilyCase::P11 { g: g.clone() });
            }
            for (i, chi1) in cands.iter().enumerate() {
                for chi2 in cands.iter().skip(i + 1) {
                    for c in [ONE, c64(2.0, -1.0)] {
                        cases.push(FamilyCase::Phi21 {
                            chi1: chi1.values().clone(),
                            chi2: chi2.values().clone(),
                            c,
                        });
                    }
                }
            }
            for chi in &cands {
                for c in [ONE, c64(0.0, 0.5)] {
                    cases.push(FamilyCase::Phi21 {
                        chi1: chi.values().clone(),
                        chi2: CFunc::zeros(n),
                        c,
                    });
                }
            }
            for f in &off_square {
                cases.push(FamilyCase::Phi22 { f: f.clone() });
            }
            for chi in &cands {
                for phi in special_sine_basis(s, chi.values()) {
                    cases.push(FamilyCase::Phi23 { chi: chi.values().clone(), phi });
                }
            }
        }
    }
    cases.retain(|case| construct(case, s, sigma).is_ok());
    cases
}
