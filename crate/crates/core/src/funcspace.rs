//! Complex-valued function tables on a finite semigroup: twisting by an
//! automorphism, enumeration of multiplicative functions, the solution
//! space of the special sine addition law, and linear-dependence verdicts.

use crate::linalg;
use crate::semigroup::{Automorphism, FiniteSemigroup};
use crate::tol;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::ops::Index;

/// A function `S → ℂ` stored as a length-n table of complex values,
/// index-aligned with the Cayley table.
#[derive(Debug, Clone, PartialEq)]
pub struct CFunc {
    values: Vec<Complex64>,
}

impl CFunc {
    pub fn new(values: Vec<Complex64>) -> Self {
        CFunc { values }
    }

    pub fn zeros(n: usize) -> Self {
        CFunc { values: vec![Complex64::new(0.0, 0.0); n] }
    }

    pub fn constant(n: usize, value: Complex64) -> Self {
        CFunc { values: vec![value; n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> Complex64) -> Self {
        CFunc { values: (0..n).map(f).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.values)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// The twist `f∘σ`: `result[x] = f[σ(x)]`.
    pub fn compose_sigma(&self, sigma: &Automorphism) -> CFunc {
        CFunc::from_fn(self.len(), |x| self.values[sigma.apply(x)])
    }

    pub fn scaled(&self, c: Complex64) -> CFunc {
        CFunc::new(self.values.iter().map(|v| c * v).collect())
    }

    pub fn add(&self, other: &CFunc) -> CFunc {
        CFunc::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CFunc) -> CFunc {
        CFunc::new(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect())
    }

    /// Max-norm distance to another table.
    pub fn distance(&self, other: &CFunc) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CFunc, tol: f64) -> bool {
        self.len() == other.len() && self.distance(other) <= tol
    }

    /// Lexicographic order on the (re, im) component sequence.
    pub fn lex_cmp(&self, other: &CFunc) -> Ordering {
        for (a, b) in self.values.iter().zip(&other.values) {
            match a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len().cmp(&other.len())
    }
}

impl Index<usize> for CFunc {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.values[i]
    }
}

impl FromIterator<Complex64> for CFunc {
    fn from_iter<T: IntoIterator<Item = Complex64>>(iter: T) -> Self {
        CFunc::new(iter.into_iter().collect())
    }
}

/// Free function form of [`CFunc::compose_sigma`].
pub fn compose_sigma(f: &CFunc, sigma: &Automorphism) -> CFunc {
    f.compose_sigma(sigma)
}

/// Per-element index and period: the least `(i, p)` with `x^(i+p) = x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPeriod {
    pairs: Vec<(usize, usize)>,
}

impl IndexPeriod {
    pub fn index(&self, x: usize) -> usize {
        self.pairs[x].0
    }

    pub fn period(&self, x: usize) -> usize {
        self.pairs[x].1
    }
}

/// Compute the index and period of every element by walking the power orbit
/// `x, x², x³, …` until it revisits a value.
pub fn index_period(s: &FiniteSemigroup) -> IndexPeriod {
    let n = s.order();
    let mut pairs = Vec::with_capacity(n);
    for x in 0..n {
        let mut first_seen = vec![usize::MAX; n];
        let mut power = x;
        let mut step = 1usize;
        loop {
            if first_seen[power] != usize::MAX {
                let i = first_seen[power];
                pairs.push((i, step - i));
                break;
            }
            first_seen[power] = step;
            power = s.mul(power, x);
            step += 1;
        }
    }
    IndexPeriod { pairs }
}

/// A verified multiplicative function `χ(xy) = χ(x)χ(y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicativeFunction {
    values: CFunc,
    residual: f64,
}

impl MultiplicativeFunction {
    pub fn values(&self) -> &CFunc {
        &self.values
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero(0.0)
    }

    pub fn into_cfunc(self) -> CFunc {
        self.values
    }
}

/// `e^(2πik/p)`, exact on the axes (angle a multiple of π/2).
pub fn root_of_unity(k: usize, p: usize) -> Complex64 {
    if (4 * k).is_multiple_of(p) {
        match (4 * k / p) % 4 {
            0 => return Complex64::new(1.0, 0.0),
            1 => return Complex64::new(0.0, 1.0),
            2 => return Complex64::new(-1.0, 0.0),
            _ => return Complex64::new(0.0, -1.0),
        }
    }
    let angle = 2.0 * PI * (k as f64) / (p as f64);
    Complex64::new(angle.cos(), angle.sin())
}

/// Max over all pairs of `|v(xy) − v(x)v(y)|`.
pub fn multiplicative_residual(s: &FiniteSemigroup, v: &CFunc) -> f64 {
    let n = s.order();
    let mut worst = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            let dev = (v[s.mul(x, y)] - v[x] * v[y]).norm();
            worst = worst.max(dev);
        }
    }
    worst
}

/// Wrap a table as a multiplicative function if its residual is below `tol`.
pub fn as_multiplicative(
    s: &FiniteSemigroup,
    v: CFunc,
    tol: f64,
) -> Option<MultiplicativeFunction> {
    let residual = multiplicative_residual(s, &v);
    (residual <= tol).then_some(MultiplicativeFunction { values: v, residual })
}

/// Enumerate every multiplicative function `χ: S → ℂ`.
///
/// On a finite semigroup `χ(x)` is `0` or a `p`-th root of unity where `p`
/// is the period of `x` (from `χ(x)^(i+p) = χ(x)^i`), so backtracking over
/// the candidate sets `{0} ∪ {e^(2πik/p)}` with pairwise validation finds
/// the complete list. Exact duplicates are removed; the zero function is
/// included iff `include_zero`. Output is sorted lexicographically.
pub fn enumerate_multiplicative(
    s: &FiniteSemigroup,
    include_zero: bool,
) -> Vec<MultiplicativeFunction> {
    let n = s.order();
    let ip = index_period(s);
    let candidates: Vec<Vec<Complex64>> = (0..n)
        .map(|x| {
            let p = ip.period(x);
            let mut set = vec![Complex64::new(0.0, 0.0)];
            for k in 0..p {
                set.push(root_of_unity(k, p));
            }
            set
        })
        .collect();

    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let mut seen: BTreeSet<Vec<(u64, u64)>> = BTreeSet::new();
    let mut out = Vec::new();
    backtrack_multiplicative(s, &candidates, &mut values, 0, &mut seen, &mut out);

    let mut out: Vec<MultiplicativeFunction> = out
        .into_iter()
        .filter(|chi| include_zero || !chi.is_zero())
        .collect();
    out.sort_by(|a, b| a.values.lex_cmp(&b.values));
    out
}

fn backtrack_multiplicative(
    s: &FiniteSemigroup,
    candidates: &[Vec<Complex64>],
    values: &mut Vec<Complex64>,
    depth: usize,
    seen: &mut BTreeSet<Vec<(u64, u64)>>,
    out: &mut Vec<MultiplicativeFunction>,
) {
    let n = s.order();
    if depth == n {
        let key: Vec<(u64, u64)> = values.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect();
        if seen.insert(key) {
            let v = CFunc::new(values.clone());
            let residual = multiplicative_residual(s, &v);
            debug_assert!(residual <= tol::MULT_RESIDUAL);
            out.push(MultiplicativeFunction { values: v, residual });
        }
        return;
    }
    'candidates: for &cand in &candidates[depth] {
        values[depth] = cand;
        for x in 0..=depth {
            for y in 0..=depth {
                let p = s.mul(x, y);
                if p <= depth && (values[p] - values[x] * values[y]).norm() > tol::MULT_RESIDUAL {
                    continue 'candidates;
                }
            }
        }
        backtrack_multiplicative(s, candidates, values, depth + 1, seen, out);
    }
}

/// Max over all pairs of `|φ(xy) − φ(x)χ(y) − φ(y)χ(x)|`.
pub fn special_sine_residual(s: &FiniteSemigroup, chi: &CFunc, phi: &CFunc) -> f64 {
    let n = s.order();
    let mut worst = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            let dev = (phi[s.mul(x, y)] - phi[x] * chi[y] - phi[y] * chi[x]).norm();
            worst = worst.max(dev);
        }
    }
    worst
}

/// Pivot-normalized basis of the solution space of the special sine law
/// `φ(xy) = φ(x)χ(y) + φ(y)χ(x)`, computed by complex Gaussian elimination
/// on the n²×n constraint matrix. An empty vector means dimension 0.
pub fn solve_special_sine(s: &FiniteSemigroup, chi: &MultiplicativeFunction) -> Vec<CFunc> {
    special_sine_basis(s, chi.values())
}

pub(crate) fn special_sine_basis(s: &FiniteSemigroup, chi: &CFunc) -> Vec<CFunc> {
    let n = s.order();
    let mut a = vec![Complex64::new(0.0, 0.0); n * n * n];
    for x in 0..n {
        for y in 0..n {
            let row = x * n + y;
            a[row * n + s.mul(x, y)] += Complex64::new(1.0, 0.0);
            a[row * n + x] -= chi[y];
            a[row * n + y] -= chi[x];
        }
    }
    linalg::nullspace(n * n, n, a, tol::RANK)
        .into_iter()
        .map(CFunc::new)
        .collect()
}

/// Verdict of the linear-dependence test on a pair of tables.
#[derive(Debug, Clone, PartialEq)]
pub enum Dependence {
    BothZero,
    FirstZero,
    SecondZero,
    /// `g = λ·f` with `f ≠ 0`.
    Proportional(Complex64),
    Independent,
}

/// Decide the mutual position of `f` and `g` at relative tolerance
/// [`tol::DEP`] (measured against the largest entry of the pair).
pub fn linear_dependence(f: &CFunc, g: &CFunc) -> Dependence {
    assert_eq!(f.len(), g.len());
    let scale = f.max_abs().max(g.max_abs());
    if scale == 0.0 {
        return Dependence::BothZero;
    }
    let eps = tol::DEP * scale;
    let f_zero = f.max_abs() <= eps;
    let g_zero = g.max_abs() <= eps;
    match (f_zero, g_zero) {
        (true, true) => return Dependence::BothZero,
        (true, false) => return Dependence::FirstZero,
        (false, true) => return Dependence::SecondZero,
        (false, false) => {}
    }
    let lambda = linalg::lstsq_coeff(f.values(), g.values());
    let dev = g
        .values()
        .iter()
        .zip(f.values())
        .map(|(gv, fv)| (gv - lambda * fv).norm())
        .fold(0.0, f64::max);
    if dev <= eps {
        Dependence::Proportional(lambda)
    } else {
        Dependence::Independent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::validate_table;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z2() -> FiniteSemigroup {
        validate_table(2, &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn rz3() -> FiniteSemigroup {
        validate_table(3, &vec![vec![0, 1, 2]; 3]).unwrap()
    }

    fn t3() -> FiniteSemigroup {
        validate_table(3, &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]).unwrap()
    }

    #[test]
    fn compose_with_identity_is_identity() {
        let f = CFunc::new(vec![c(1.0, 2.0), c(-3.0, 0.5)]);
        let id = Automorphism::identity(2);
        assert_eq!(f.compose_sigma(&id), f);
    }

    #[test]
    fn compose_permutes_entries() {
        let rz3 = rz3();
        let cycle = Automorphism::new(&rz3, vec![1, 2, 0]).unwrap();
        let f = CFunc::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        // result[x] = f[σ(x)]
        assert_eq!(
            f.compose_sigma(&cycle).values(),
            &[c(2.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)]
        );
    }

    #[test]
    fn compose_twice_equals_compose_with_square() {
        let rz3 = rz3();
        let cycle = Automorphism::new(&rz3, vec![1, 2, 0]).unwrap();
        let f = CFunc::new(vec![c(1.0, -1.0), c(0.0, 2.0), c(3.5, 0.0)]);
        let twice = f.compose_sigma(&cycle).compose_sigma(&cycle);
        assert_eq!(twice, f.compose_sigma(&cycle.power(2)));
    }

    #[test]
    fn index_period_examples() {
        // Z2, element 1: 1¹=1, 1²=0, 1³=1 → (1, 2).
        let ip = index_period(&z2());
        assert_eq!((ip.index(1), ip.period(1)), (1, 2));
        // T3, element 1: orbit 1, 2, 2, … → (2, 1).
        let ip = index_period(&t3());
        assert_eq!((ip.index(1), ip.period(1)), (2, 1));
        // idempotent: (1, 1).
        assert_eq!((ip.index(0), ip.period(0)), (1, 1));
        assert_eq!((ip.index(2), ip.period(2)), (1, 1));
    }

    #[test]
    fn multiplicative_functions_on_z2() {
        let chis = enumerate_multiplicative(&z2(), false);
        assert_eq!(chis.len(), 2);
        let tables: Vec<Vec<Complex64>> =
            chis.iter().map(|m| m.values().values().to_vec()).collect();
        assert!(tables.contains(&vec![c(1.0, 0.0), c(1.0, 0.0)]));
        assert!(tables.contains(&vec![c(1.0, 0.0), c(-1.0, 0.0)]));
    }

    #[test]
    fn multiplicative_functions_on_right_zero() {
        // χ(y) = χ(x)χ(y) for all x forces χ ≡ 1.
        let chis = enumerate_multiplicative(&rz3(), false);
        assert_eq!(chis.len(), 1);
        assert!(chis[0].values().approx_eq(&CFunc::constant(3, c(1.0, 0.0)), 0.0));
    }

    #[test]
    fn multiplicative_functions_on_truncated_addition() {
        let chis = enumerate_multiplicative(&t3(), false);
        assert_eq!(chis.len(), 2);
        let tables: Vec<Vec<Complex64>> =
            chis.iter().map(|m| m.values().values().to_vec()).collect();
        assert!(tables.contains(&vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]));
        assert!(tables.contains(&vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]));
    }

    #[test]
    fn zero_function_is_gated_by_flag() {
        let with = enumerate_multiplicative(&z2(), true);
        let without = enumerate_multiplicative(&z2(), false);
        assert_eq!(with.len(), without.len() + 1);
        assert!(with.iter().any(|m| m.is_zero()));
    }

    #[test]
    fn special_sine_space_on_z2_is_trivial() {
        // φ(0)=2φ(0) forces φ(0)=0; φ(0)=2φ(1)χ(1) then forces φ(1)=0.
        let chis = enumerate_multiplicative(&z2(), false);
        let one = chis
            .iter()
            .find(|m| m.values().approx_eq(&CFunc::constant(2, c(1.0, 0.0)), 0.0))
            .unwrap();
        assert!(solve_special_sine(&z2(), one).is_empty());
    }

    #[test]
    fn special_sine_space_on_t3_has_dimension_one() {
        let t3 = t3();
        let chi = as_multiplicative(
            &t3,
            CFunc::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
            0.0,
        )
        .unwrap();
        let basis = solve_special_sine(&t3, &chi);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].approx_eq(&CFunc::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]), 1e-12));
        assert!(special_sine_residual(&t3, chi.values(), &basis[0]) <= tol::SPECIAL_SINE);
    }

    #[test]
    fn linear_dependence_verdicts() {
        let f = CFunc::new(vec![c(1.0, 0.0), c(2.0, 0.0)]);
        let g = CFunc::new(vec![c(2.0, 0.0), c(4.0, 0.0)]);
        match linear_dependence(&f, &g) {
            Dependence::Proportional(l) => assert!((l - c(2.0, 0.0)).norm() < 1e-12),
            other => panic!("expected proportional, got {other:?}"),
        }
        let e1 = CFunc::new(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let e2 = CFunc::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(linear_dependence(&e1, &e2), Dependence::Independent);
        let zero = CFunc::zeros(2);
        assert_eq!(linear_dependence(&zero, &zero), Dependence::BothZero);
        assert_eq!(linear_dependence(&zero, &e1), Dependence::FirstZero);
        assert_eq!(linear_dependence(&e1, &zero), Dependence::SecondZero);
    }
}
