//! A desk-scale laboratory for the cosine-subtraction, sine-addition and
//! sine-subtraction laws on finite semigroups,
//!
//! ```text
//! g(x σ(y)) = g(x) g(y) + f(x) f(y)        (cos-sub)
//! f(x σ(y)) = f(x) g(y) + f(y) g(x)        (sine-add)
//! f(x σ(y)) = f(x) g(y) − f(y) g(x)        (sine-sub)
//! ```
//!
//! where `σ` is a semigroup automorphism that need not be involutive, plus
//! the left-twisted variants `g(σ(y) x) = …` / `f(σ(y) x) = …` and the
//! untwisted laws `g(xy) = g(x)g(y) − f(x)f(y)` and
//! `f(xy) = f(x)g(y) + f(y)g(x)`.
//!
//! The crate provides
//!
//! * [`semigroup`]: Cayley tables, exhaustive enumeration of all labeled
//!   semigroups of small order, automorphism groups;
//! * [`funcspace`]: complex-valued function tables, multiplicative-function
//!   enumeration via roots of unity, and the linear solution space of the
//!   special sine law `φ(xy) = φ(x)χ(y) + φ(y)χ(x)`;
//! * [`families`]: constructors for every closed-form solution family of
//!   the equations above, and a classifier mapping numeric `(f, g)` pairs
//!   back to their family with recovered parameters;
//! * [`oracle`]: an independent multistart damped Gauss–Newton solver that
//!   discovers solutions numerically and checks that everything it finds is
//!   classified (completeness), plus equivalence checks between each
//!   equation and its variant;
//! * [`continuum`]: closed-form continuous families on `(ℝ, +)` with
//!   `σ(x) = βx` and on the `(ax+b)`-group with a non-involutive `σ`,
//!   verified by dense sampling.

#![forbid(unsafe_code)]

pub mod continuum;
pub mod families;
pub mod fixtures;
pub mod funcspace;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod semigroup;

pub use num_complex::Complex64;

/// Tolerances used across the crate. Values are absolute at unit scale;
/// comparisons against larger tables rescale by the table max-norm.
pub mod tol {
    /// Multiplicativity residual for functions built from exact roots of unity.
    pub const MULT_RESIDUAL: f64 = 1e-12;
    /// Residual bound for special sine-law basis vectors.
    pub const SPECIAL_SINE: f64 = 1e-10;
    /// Residual guard re-checked by every family constructor.
    pub const CONSTRUCT: f64 = 1e-9;
    /// A pair must satisfy its equation this well to be classified.
    pub const CLASS: f64 = 1e-7;
    /// Parameter-fit tolerance used while matching a pair to a family.
    pub const FIT: f64 = 1e-6;
    /// Relative tolerance for linear-dependence verdicts.
    pub const DEP: f64 = 1e-8;
    /// Relative pivot threshold for rank decisions.
    pub const RANK: f64 = 1e-10;
    /// Pointwise equality of function tables.
    pub const VALUE_EQ: f64 = 1e-9;
}
