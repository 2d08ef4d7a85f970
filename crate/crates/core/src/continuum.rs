//! Closed-form continuous solution families on two infinite carriers: the
//! additive reals with the scaling twist `σ(x) = βx` (β ∉ {0, −1, 1}), and
//! the `(ax+b)`-group with the non-involutive twist that rescales the
//! translation part. The carriers are infinite, so families are evaluators
//! and verification is dense sampling of the equation residual.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::families::Sign;
use crate::io::complex_to_json;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default rescaling factor of the `(ax+b)` twist.
pub const DEFAULT_AXB_SCALE: f64 = 2023.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContinuumError {
    #[error("beta = {beta} is excluded (need β ∉ {{0, −1, 1}})")]
    InvalidBeta { beta: f64 },
}

/// The twist `σ(x) = βx` on `(ℝ, +)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealTwist {
    beta: f64,
}

impl RealTwist {
    pub fn new(beta: f64) -> Result<Self, ContinuumError> {
        if beta == 0.0 || beta == 1.0 || beta == -1.0 {
            return Err(ContinuumError::InvalidBeta { beta });
        }
        Ok(RealTwist { beta })
    }

    pub fn beta(self) -> f64 {
        self.beta
    }

    pub fn apply(self, x: f64) -> f64 {
        self.beta * x
    }
}

/// An element of the `(ax+b)`-group, the matrix `[[a, b], [0, 1]]` with
/// `a > 0`; the product is `(a, b)·(a′, b′) = (aa′, ab′ + b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxBElement {
    pub a: f64,
    pub b: f64,
}

impl AxBElement {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a > 0.0, "the (ax+b)-group needs a > 0");
        AxBElement { a, b }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: AxBElement) -> AxBElement {
        AxBElement { a: self.a * rhs.a, b: self.a * rhs.b + self.b }
    }

    /// The twist `(a, b) ↦ (a, k·b)`; it is an automorphism for any k ≠ 0
    /// and is involutive only for k = ±1.
    pub fn twist(self, scale: f64) -> AxBElement {
        AxBElement { a: self.a, b: scale * self.b }
    }
}

/// Which equation is being sampled, with its twist data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContinuumEq {
    /// `g(x + βy) = g(x)g(y) + f(x)f(y)` on ℝ.
    E3Real(RealTwist),
    /// `f(x + βy) = f(x)g(y) + f(y)g(x)` on ℝ.
    E1Real(RealTwist),
    /// `g(Xσ(Y)) = g(X)g(Y) + f(X)f(Y)` on the (ax+b)-group.
    E3Axb { scale: f64 },
    /// `f(Xσ(Y)) = f(X)g(Y) + f(Y)g(X)` on the (ax+b)-group.
    E1Axb { scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    Real,
    Axb,
}

impl ContinuumEq {
    pub fn carrier(self) -> Carrier {
        match self {
            ContinuumEq::E3Real(_) | ContinuumEq::E1Real(_) => Carrier::Real,
            ContinuumEq::E3Axb { .. } | ContinuumEq::E1Axb { .. } => Carrier::Axb,
        }
    }
}

/// A closed-form solution family, stored as its parameter record; the
/// tables are evaluated on demand.
#[derive(Debug, Clone, PartialEq)]
pub enum ContinuumFamily {
    /// ℝ, cosine law: f = 0, g = 0.
    RealZero,
    /// ℝ, cosine law: f = α/(1+α²), g = 1/(1+α²); α ∉ {i, −i}.
    RealConst { alpha: Complex64 },
    /// ℝ, cosine law: f = 0, g = 1.
    RealOne,
    /// ℝ, sine law: f = 0, g arbitrary (a seeded random table stands in).
    RealFZero { seed: u64 },
    /// ℝ, sine law: f = 1/(2α), g = 1/2; α ≠ 0.
    RealSineConst { alpha: Complex64 },
    /// (ax+b), cosine law: f = α·aᵠ/(1+α²), g = aᵠ/(1+α²); α ∉ {0, i, −i}.
    AxbScaledChar { alpha: Complex64, lambda: Complex64 },
    /// (ax+b), cosine law: f = −ic·aᵠ·log a, g = aᵠ ± c·aᵠ·log a; c ≠ 0.
    AxbCosLog { c: Complex64, lambda: Complex64, sign: Sign },
    /// (ax+b), sine law: f = aᵠ/(2α), g = aᵠ/2; α ≠ 0.
    AxbChar { alpha: Complex64, lambda: Complex64 },
    /// (ax+b), sine law: f = c·aᵠ·log a, g = aᵠ; c ≠ 0.
    AxbSineLog { c: Complex64, lambda: Complex64 },
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Deterministic stand-in for an arbitrary function value at `x`.
fn hashed_value(seed: u64, x: f64) -> Complex64 {
    let h1 = splitmix64(seed ^ x.to_bits());
    let h2 = splitmix64(h1);
    let unit = |h: u64| ((h >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0;
    Complex64::new(unit(h1), unit(h2))
}

fn a_pow(a: f64, lambda: Complex64) -> Complex64 {
    (lambda * a.ln()).exp()
}

impl ContinuumFamily {
    pub fn carrier(&self) -> Carrier {
        match self {
            ContinuumFamily::RealZero
            | ContinuumFamily::RealConst { .. }
            | ContinuumFamily::RealOne
            | ContinuumFamily::RealFZero { .. }
            | ContinuumFamily::RealSineConst { .. } => Carrier::Real,
            _ => Carrier::Axb,
        }
    }

    /// `(f(x), g(x))` for a real-carrier family.
    pub fn eval_real(&self, x: f64) -> (Complex64, Complex64) {
        match self {
            ContinuumFamily::RealZero => (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            ContinuumFamily::RealConst { alpha } => {
                let denom = ONE + alpha * alpha;
                (alpha / denom, ONE / denom)
            }
            ContinuumFamily::RealOne => (Complex64::new(0.0, 0.0), ONE),
            ContinuumFamily::RealFZero { seed } => {
                (Complex64::new(0.0, 0.0), hashed_value(*seed, x))
            }
            ContinuumFamily::RealSineConst { alpha } => {
                (ONE / (2.0 * alpha), Complex64::new(0.5, 0.0))
            }
            _ => panic!("not a real-carrier family"),
        }
    }

    /// `(f(X), g(X))` for an (ax+b)-carrier family.
    pub fn eval_axb(&self, x: AxBElement) -> (Complex64, Complex64) {
        let a = x.a;
        match self {
            ContinuumFamily::AxbScaledChar { alpha, lambda } => {
                let denom = ONE + alpha * alpha;
                let chi = a_pow(a, *lambda);
                (alpha * chi / denom, chi / denom)
            }
            ContinuumFamily::AxbCosLog { c, lambda, sign } => {
                let chi = a_pow(a, *lambda);
                let log_part = c * chi * a.ln();
                (-I * log_part, chi + sign.factor() * log_part)
            }
            ContinuumFamily::AxbChar { alpha, lambda } => {
                let chi = a_pow(a, *lambda);
                (chi / (2.0 * alpha), chi * 0.5)
            }
            ContinuumFamily::AxbSineLog { c, lambda } => {
                let chi = a_pow(a, *lambda);
                (c * chi * a.ln(), chi)
            }
            _ => panic!("not an (ax+b)-carrier family"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ContinuumFamily::RealZero => "Zero",
            ContinuumFamily::RealConst { .. } => "Const",
            ContinuumFamily::RealOne => "One",
            ContinuumFamily::RealFZero { .. } => "FZero",
            ContinuumFamily::RealSineConst { .. } => "Const",
            ContinuumFamily::AxbScaledChar { .. } => "ScaledChar",
            ContinuumFamily::AxbCosLog { .. } => "LogFamily",
            ContinuumFamily::AxbChar { .. } => "Char",
            ContinuumFamily::AxbSineLog { .. } => "LogFamily",
        }
    }

    pub fn to_json(&self) -> Value {
        let params = match self {
            ContinuumFamily::RealZero | ContinuumFamily::RealOne => json!({}),
            ContinuumFamily::RealConst { alpha } | ContinuumFamily::RealSineConst { alpha } => {
                json!({"alpha": complex_to_json(*alpha)})
            }
            ContinuumFamily::RealFZero { seed } => json!({"seed": seed}),
            ContinuumFamily::AxbScaledChar { alpha, lambda }
            | ContinuumFamily::AxbChar { alpha, lambda } => json!({
                "alpha": complex_to_json(*alpha),
                "lambda": complex_to_json(*lambda),
            }),
            ContinuumFamily::AxbCosLog { c, lambda, sign } => json!({
                "c": complex_to_json(*c),
                "lambda": complex_to_json(*lambda),
                "sign": sign.symbol(),
            }),
            ContinuumFamily::AxbSineLog { c, lambda } => json!({
                "c": complex_to_json(*c),
                "lambda": complex_to_json(*lambda),
            }),
        };
        json!({"family": self.name(), "params": params})
    }
}

/// The solution lists on `(ℝ, +)` with `σ(x) = βx`, at representative
/// parameter values: for the cosine law `{(0,0)}`, `{(α/(1+α²), 1/(1+α²))}`
/// and `{(0,1)}`; for the sine law `{f = 0, g arbitrary}` and
/// `{(1/(2α), 1/2)}`.
pub fn real_families(eq: ContinuumEq) -> Result<Vec<ContinuumFamily>, ContinuumError> {
    match eq {
        ContinuumEq::E3Real(_) => Ok(vec![
            ContinuumFamily::RealZero,
            ContinuumFamily::RealConst { alpha: Complex64::new(2.0, 0.0) },
            ContinuumFamily::RealOne,
        ]),
        ContinuumEq::E1Real(_) => Ok(vec![
            ContinuumFamily::RealFZero { seed: 1 },
            ContinuumFamily::RealSineConst { alpha: Complex64::new(1.0, 0.0) },
        ]),
        _ => panic!("real_families needs a real-carrier equation"),
    }
}

/// The non-zero continuous solution lists on the `(ax+b)`-group, at
/// representative parameter values.
pub fn axb_families(eq: ContinuumEq) -> Vec<ContinuumFamily> {
    let zero = Complex64::new(0.0, 0.0);
    let one = ONE;
    match eq {
        ContinuumEq::E3Axb { .. } => vec![
            ContinuumFamily::AxbScaledChar { alpha: one, lambda: zero },
            ContinuumFamily::AxbCosLog { c: one, lambda: zero, sign: Sign::Plus },
            ContinuumFamily::AxbCosLog { c: one, lambda: zero, sign: Sign::Minus },
        ],
        ContinuumEq::E1Axb { .. } => vec![
            ContinuumFamily::AxbChar { alpha: one, lambda: zero },
            ContinuumFamily::AxbSineLog { c: one, lambda: zero },
        ],
        _ => panic!("axb_families needs an (ax+b)-carrier equation"),
    }
}

/// How sample pairs are drawn: a deterministic lattice or seeded uniforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampler {
    Grid,
    SeededRandom(u64),
}

/// Max equation residual of `family` under `eq` over `n_samples` pairs.
/// Real pairs are drawn from `[−10, 10]²`; group elements take `a`
/// log-uniform in `[0.1, 10]` and `b` uniform in `[−10, 10]`.
pub fn sample_residual(
    family: &ContinuumFamily,
    eq: ContinuumEq,
    sampler: Sampler,
    n_samples: usize,
) -> f64 {
    assert!(n_samples >= 1);
    assert_eq!(family.carrier(), eq.carrier(), "family/equation carrier mismatch");
    let mut worst = 0.0f64;
    match eq {
        ContinuumEq::E3Real(twist) | ContinuumEq::E1Real(twist) => {
            let cos_law = matches!(eq, ContinuumEq::E3Real(_));
            let mut check = |x: f64, y: f64| {
                let (fx, gx) = family.eval_real(x);
                let (fy, gy) = family.eval_real(y);
                let (flhs, glhs) = family.eval_real(x + twist.apply(y));
                let dev = if cos_law {
                    (glhs - gx * gy - fx * fy).norm()
                } else {
                    (flhs - fx * gy - fy * gx).norm()
                };
                worst = worst.max(dev);
            };
            match sampler {
                Sampler::Grid => {
                    let m = (n_samples as f64).sqrt().ceil() as usize;
                    let point = |k: usize| -10.0 + 20.0 * (k as f64) / ((m - 1).max(1) as f64);
                    for ix in 0..m {
                        for iy in 0..m {
                            check(point(ix), point(iy));
                        }
                    }
                }
                Sampler::SeededRandom(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    for _ in 0..n_samples {
                        let x = rng.gen_range(-10.0..=10.0);
                        let y = rng.gen_range(-10.0..=10.0);
                        check(x, y);
                    }
                }
            }
        }
        ContinuumEq::E3Axb { scale } | ContinuumEq::E1Axb { scale } => {
            let cos_law = matches!(eq, ContinuumEq::E3Axb { .. });
            let mut check = |x: AxBElement, y: AxBElement| {
                let (fx, gx) = family.eval_axb(x);
                let (fy, gy) = family.eval_axb(y);
                let (flhs, glhs) = family.eval_axb(x.mul(y.twist(scale)));
                let dev = if cos_law {
                    (glhs - gx * gy - fx * fy).norm()
                } else {
                    (flhs - fx * gy - fy * gx).norm()
                };
                worst = worst.max(dev);
            };
            match sampler {
                Sampler::Grid => {
                    let m = ((n_samples as f64).powf(0.25).ceil() as usize).max(2);
                    let log_point = |k: usize| {
                        let t = (k as f64) / ((m - 1) as f64);
                        10f64.powf(-1.0 + 2.0 * t)
                    };
                    let lin_point = |k: usize| -10.0 + 20.0 * (k as f64) / ((m - 1) as f64);
                    for ia in 0..m {
                        for ib in 0..m {
                            for ja in 0..m {
                                for jb in 0..m {
                                    check(
                                        AxBElement::new(log_point(ia), lin_point(ib)),
                                        AxBElement::new(log_point(ja), lin_point(jb)),
                                    );
                                }
                            }
                        }
                    }
                }
                Sampler::SeededRandom(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let draw = |rng: &mut ChaCha8Rng| {
                        let a = 10f64.powf(rng.gen_range(-1.0..=1.0));
                        let b = rng.gen_range(-10.0..=10.0);
                        AxBElement::new(a, b)
                    };
                    for _ in 0..n_samples {
                        let x = draw(&mut rng);
                        let y = draw(&mut rng);
                        check(x, y);
                    }
                }
            }
        }
    }
    worst
}

/// Max over the grid of `|e^{s(β−1)x} − 1|`: zero only for the trivial
/// exponent, which pins the character fixed by the real twist to χ = 1.
pub fn real_char_twist_residual(s: Complex64, beta: f64, xs: &[f64]) -> f64 {
    xs.iter()
        .map(|&x| ((s * ((beta - 1.0) * x)).exp() - ONE).norm())
        .fold(0.0, f64::max)
}

/// Max over the samples of `|σ²(X) − X|` (deviation in the `b` entry); a
/// positive value witnesses that the twist is not involutive.
pub fn axb_sigma_square_deviation(scale: f64, samples: &[AxBElement]) -> f64 {
    samples
        .iter()
        .map(|x| (x.twist(scale).twist(scale).b - x.b).abs())
        .fold(0.0, f64::max)
}
