//! Numerical verification machinery: equation residuals, an independent
//! multistart damped Gauss–Newton (Levenberg–Marquardt) solver over the
//! complex unknowns `(f, g)`, completeness checks ("everything the solver
//! finds is classified"), and equivalence checks between each equation and
//! its left-twisted variant.
//!
//! The unknown vector is `z = (f₀…f_{n−1}, g₀…g_{n−1}) ∈ ℂ^{2n}`; the
//! residual has one complex entry per pair `(x, y) ∈ S×S`. All equations
//! are polynomial (holomorphic) in `z`, so the Jacobian is assembled
//! analytically in complex arithmetic and the normal equations
//! `(JᴴJ + λI)δ = −Jᴴr` realize the damped Gauss–Newton step on the
//! underlying real system.

use crate::families::{
    case_instances, classify_with, ClassifierContext, ClassifyOutcome, EquationTag, FamilyCase,
    ResidualProfile,
};
use crate::funcspace::CFunc;
use crate::io::{cfunc_to_json, json_f64};
use crate::linalg;
use crate::semigroup::{Automorphism, FiniteSemigroup};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Knobs for the multistart solver. The seed fixes the whole start
/// sequence, so identical configs reproduce reports byte for byte.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub n_starts: usize,
    pub seed: u64,
    pub newton_max_iter: usize,
    /// Max-norm of the residual vector at which a start counts as converged.
    pub converge_tol: f64,
    /// Initial Levenberg damping parameter.
    pub damping: f64,
    /// Starts are drawn with re and im uniform in `[-start_box, start_box]`.
    pub start_box: f64,
    pub dedup_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            n_starts: 500,
            seed: 42,
            newton_max_iter: 200,
            converge_tol: 1e-12,
            damping: 1e-3,
            start_box: 2.0,
            dedup_tol: 1e-6,
        }
    }
}

/// Max over all pairs `(x, y)` of `|LHS − RHS|` for the tagged equation.
pub fn equation_residual(
    eq: EquationTag,
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    f: &CFunc,
    g: &CFunc,
) -> f64 {
    let n = s.order();
    let mut out = vec![ZERO; n * n];
    let mut z = Vec::with_capacity(2 * n);
    z.extend_from_slice(f.values());
    z.extend_from_slice(g.values());
    let sys = EquationSystem::new(eq, s, sigma);
    sys.residual_into(&z, &mut out);
    linalg::max_abs(&out)
}

/// One equation instance on a fixed `(S, σ)`.
pub(crate) struct EquationSystem<'a> {
    eq: EquationTag,
    s: &'a FiniteSemigroup,
    /// Precomputed left-hand product index per pair `(x, y)`.
    lhs_index: Vec<usize>,
}

impl<'a> EquationSystem<'a> {
    pub(crate) fn new(eq: EquationTag, s: &'a FiniteSemigroup, sigma: &Automorphism) -> Self {
        let n = s.order();
        let mut lhs_index = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                lhs_index[x * n + y] = match eq {
                    EquationTag::CosSub | EquationTag::SineAdd | EquationTag::SineSub => {
                        s.mul(x, sigma.apply(y))
                    }
                    EquationTag::CosSubVariant | EquationTag::SineAddVariant => {
                        s.mul(sigma.apply(y), x)
                    }
                    EquationTag::CosAddPlain | EquationTag::SineAddPlain => s.mul(x, y),
                };
            }
        }
        EquationSystem { eq, s, lhs_index }
    }

    fn order(&self) -> usize {
        self.s.order()
    }

    /// Residual vector: one complex entry per pair, row `x·n + y`.
    pub(crate) fn residual_into(&self, z: &[Complex64], out: &mut [Complex64]) {
        let n = self.order();
        let (f, g) = z.split_at(n);
        for x in 0..n {
            for y in 0..n {
                let row = x * n + y;
                let q = self.lhs_index[row];
                out[row] = match self.eq {
                    EquationTag::CosSub | EquationTag::CosSubVariant => {
                        g[q] - g[x] * g[y] - f[x] * f[y]
                    }
                    EquationTag::CosAddPlain => g[q] - g[x] * g[y] + f[x] * f[y],
                    EquationTag::SineAdd
                    | EquationTag::SineAddVariant
                    | EquationTag::SineAddPlain => f[q] - f[x] * g[y] - f[y] * g[x],
                    EquationTag::SineSub => f[q] - f[x] * g[y] + f[y] * g[x],
                };
            }
        }
    }

    /// Analytic complex Jacobian, row-major `n² × 2n`.
    pub(crate) fn jacobian_into(&self, z: &[Complex64], out: &mut [Complex64]) {
        let n = self.order();
        let p = 2 * n;
        let (f, g) = z.split_at(n);
        out.fill(ZERO);
        for x in 0..n {
            for y in 0..n {
                let row = x * n + y;
                let q = self.lhs_index[row];
                let j = &mut out[row * p..(row + 1) * p];
                match self.eq {
                    EquationTag::CosSub | EquationTag::CosSubVariant => {
                        j[n + q] += ONE;
                        j[n + x] -= g[y];
                        j[n + y] -= g[x];
                        j[x] -= f[y];
                        j[y] -= f[x];
                    }
                    EquationTag::CosAddPlain => {
                        j[n + q] += ONE;
                        j[n + x] -= g[y];
                        j[n + y] -= g[x];
                        j[x] += f[y];
                        j[y] += f[x];
                    }
                    EquationTag::SineAdd
                    | EquationTag::SineAddVariant
                    | EquationTag::SineAddPlain => {
                        j[q] += ONE;
                        j[x] -= g[y];
                        j[y] -= g[x];
                        j[n + x] -= f[y];
                        j[n + y] -= f[x];
                    }
                    EquationTag::SineSub => {
                        j[q] += ONE;
                        j[x] -= g[y];
                        j[y] += g[x];
                        j[n + x] += f[y];
                        j[n + y] -= f[x];
                    }
                }
            }
        }
    }
}

fn sum_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Divergence cutoff on the residual max-norm.
const DIVERGE_NORM: f64 = 1e6;
/// Damping escalation limit before a start is abandoned.
const MAX_LAMBDA: f64 = 1e12;

struct LmWorkspace {
    residual: Vec<Complex64>,
    trial: Vec<Complex64>,
    jac: Vec<Complex64>,
    normal: Vec<Complex64>,
    normal_damped: Vec<Complex64>,
    grad: Vec<Complex64>,
    step: Vec<Complex64>,
}

impl LmWorkspace {
    fn new(m: usize, p: usize) -> Self {
        LmWorkspace {
            residual: vec![ZERO; m],
            trial: vec![ZERO; m],
            jac: vec![ZERO; m * p],
            normal: vec![ZERO; p * p],
            normal_damped: vec![ZERO; p * p],
            grad: vec![ZERO; p],
            step: vec![ZERO; p],
        }
    }
}

/// One damped Gauss–Newton run. Returns the converged point and its final
/// residual max-norm, or `None` when the start diverges or stalls.
fn lm_run(
    sys: &EquationSystem,
    start: &[Complex64],
    cfg: &SolverConfig,
    ws: &mut LmWorkspace,
) -> Option<(Vec<Complex64>, f64)> {
    let n = sys.order();
    let m = n * n;
    let p = 2 * n;
    let mut z = start.to_vec();
    sys.residual_into(&z, &mut ws.residual);
    let mut rmax = linalg::max_abs(&ws.residual);
    let mut rss = sum_sq(&ws.residual);
    let mut lambda = cfg.damping;

    let mut iters = 0usize;
    while rmax > cfg.converge_tol {
        if rmax > DIVERGE_NORM || iters >= cfg.newton_max_iter {
            return None;
        }
        iters += 1;
        sys.jacobian_into(&z, &mut ws.jac);
        assemble_normal_equations(m, p, &ws.jac, &ws.residual, &mut ws.normal, &mut ws.grad);
        let mut stepped = false;
        while lambda <= MAX_LAMBDA {
            ws.normal_damped.copy_from_slice(&ws.normal);
            for k in 0..p {
                ws.normal_damped[k * p + k] += Complex64::new(lambda, 0.0);
            }
            for k in 0..p {
                ws.step[k] = -ws.grad[k];
            }
            if linalg::solve_in_place(p, &mut ws.normal_damped, &mut ws.step).is_err() {
                lambda *= 10.0;
                continue;
            }
            let trial_z: Vec<Complex64> = z.iter().zip(&ws.step).map(|(a, b)| a + b).collect();
            sys.residual_into(&trial_z, &mut ws.trial);
            let trial_rss = sum_sq(&ws.trial);
            if trial_rss < rss {
                z = trial_z;
                std::mem::swap(&mut ws.residual, &mut ws.trial);
                rss = trial_rss;
                rmax = linalg::max_abs(&ws.residual);
                lambda = (lambda / 10.0).max(1e-14);
                stepped = true;
                break;
            }
            lambda *= 10.0;
        }
        if !stepped {
            return None;
        }
    }

    // Polish: a few nearly-undamped Gauss–Newton steps push the residual to
    // the rounding floor, so the structure of small-magnitude solutions is
    // resolved far below the convergence tolerance.
    for _ in 0..6 {
        sys.jacobian_into(&z, &mut ws.jac);
        assemble_normal_equations(m, p, &ws.jac, &ws.residual, &mut ws.normal, &mut ws.grad);
        let diag_max = (0..p).map(|k| ws.normal[k * p + k].norm()).fold(0.0, f64::max);
        ws.normal_damped.copy_from_slice(&ws.normal);
        for k in 0..p {
            ws.normal_damped[k * p + k] += Complex64::new(1e-12 * diag_max.max(1e-30), 0.0);
        }
        for k in 0..p {
            ws.step[k] = -ws.grad[k];
        }
        if linalg::solve_in_place(p, &mut ws.normal_damped, &mut ws.step).is_err() {
            break;
        }
        let trial_z: Vec<Complex64> = z.iter().zip(&ws.step).map(|(a, b)| a + b).collect();
        sys.residual_into(&trial_z, &mut ws.trial);
        if sum_sq(&ws.trial) < rss {
            z = trial_z;
            std::mem::swap(&mut ws.residual, &mut ws.trial);
            rss = sum_sq(&ws.residual);
        } else {
            break;
        }
    }
    let rmax = {
        sys.residual_into(&z, &mut ws.residual);
        linalg::max_abs(&ws.residual)
    };
    Some((z, rmax))
}

fn assemble_normal_equations(
    m: usize,
    p: usize,
    jac: &[Complex64],
    residual: &[Complex64],
    normal: &mut [Complex64],
    grad: &mut [Complex64],
) {
    normal.fill(ZERO);
    grad.fill(ZERO);
    for row in 0..m {
        let jr = &jac[row * p..(row + 1) * p];
        for a in 0..p {
            let ja = jr[a].conj();
            if ja == ZERO {
                continue;
            }
            for b in 0..p {
                normal[a * p + b] += ja * jr[b];
            }
            grad[a] += ja * residual[row];
        }
    }
}

/// A solution listed in a report, with its classification.
#[derive(Debug, Clone)]
pub struct ReportedSolution {
    pub f: CFunc,
    pub g: CFunc,
    pub residual: f64,
    pub case: FamilyCase,
}

/// A converged point the classifier could not place.
#[derive(Debug, Clone)]
pub struct UnclassifiedSolution {
    pub f: CFunc,
    pub g: CFunc,
    pub residual: f64,
    pub profile: ResidualProfile,
}

/// Deterministic output of [`find_all_solutions`].
#[derive(Debug, Clone)]
pub struct SolutionReport {
    pub equation: EquationTag,
    pub semigroup_label: String,
    pub table: Vec<Vec<usize>>,
    pub sigma: Vec<usize>,
    pub seed: u64,
    pub solutions: Vec<ReportedSolution>,
    pub unclassified: Vec<UnclassifiedSolution>,
    pub converged: usize,
    pub diverged: usize,
}

impl SolutionReport {
    pub fn case_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut counts = BTreeMap::new();
        for sol in &self.solutions {
            *counts.entry(sol.case.tag()).or_insert(0) += 1;
        }
        counts
    }

    pub fn to_json(&self) -> Value {
        json!({
            "equation": self.equation.cli_name(),
            "semigroup": {
                "label": self.semigroup_label,
                "order": self.table.len(),
                "table": self.table,
            },
            "sigma": self.sigma,
            "seed": self.seed,
            "solutions": self.solutions.iter().map(|sol| json!({
                "f": cfunc_to_json(&sol.f),
                "g": cfunc_to_json(&sol.g),
                "residual": json_f64(sol.residual),
                "class": sol.case.to_json(),
            })).collect::<Vec<_>>(),
            "unclassified": self.unclassified.iter().map(|u| json!({
                "f": cfunc_to_json(&u.f),
                "g": cfunc_to_json(&u.g),
                "residual": json_f64(u.residual),
                "profile": u.profile.to_json(),
            })).collect::<Vec<_>>(),
            "starts": {"converged": self.converged, "diverged": self.diverged},
        })
    }
}

fn rounded_key(dedup_tol: f64, f: &CFunc, g: &CFunc) -> Vec<(i64, i64)> {
    let quantum = 1.0 / dedup_tol;
    f.values()
        .iter()
        .chain(g.values())
        .map(|z| {
            let re = (z.re * quantum).round() + 0.0; // +0.0 folds -0 into 0
            let im = (z.im * quantum).round() + 0.0;
            (re as i64, im as i64)
        })
        .collect()
}

/// Discover the solution set of `eq` on `(S, σ)` by damped Gauss–Newton
/// from `cfg.n_starts` seeded random starts plus one start per
/// constructible family instance. Every converged point is re-verified
/// against the equation and classified individually; the report is
/// deduplicated at `cfg.dedup_tol` and sorted by (case tag, rounded
/// tables), so identical configs give identical reports.
pub fn find_all_solutions(
    eq: EquationTag,
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    cfg: &SolverConfig,
) -> SolutionReport {
    let ctx = ClassifierContext::new(s, sigma);
    find_all_solutions_with(&ctx, eq, cfg)
}

/// [`find_all_solutions`] against a prebuilt classifier context.
pub fn find_all_solutions_with(
    ctx: &ClassifierContext,
    eq: EquationTag,
    cfg: &SolverConfig,
) -> SolutionReport {
    let s = ctx.s;
    let sigma = ctx.sigma;
    let n = s.order();
    let sys = EquationSystem::new(eq, s, sigma);
    let mut ws = LmWorkspace::new(n * n, 2 * n);

    let mut starts: Vec<Vec<Complex64>> = Vec::new();
    for case in case_instances(eq, s, sigma) {
        let pair = crate::families::construct(&case, s, sigma).expect("instances are constructible");
        let mut z = Vec::with_capacity(2 * n);
        z.extend_from_slice(pair.f.values());
        z.extend_from_slice(pair.g.values());
        starts.push(z);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.n_starts {
        let z: Vec<Complex64> = (0..2 * n)
            .map(|_| {
                let re = rng.gen_range(-cfg.start_box..=cfg.start_box);
                let im = rng.gen_range(-cfg.start_box..=cfg.start_box);
                Complex64::new(re, im)
            })
            .collect();
        starts.push(z);
    }

    let mut solutions: BTreeMap<(String, Vec<(i64, i64)>), ReportedSolution> = BTreeMap::new();
    let mut unclassified: BTreeMap<Vec<(i64, i64)>, UnclassifiedSolution> = BTreeMap::new();
    let mut converged = 0usize;
    let mut diverged = 0usize;

    for z0 in &starts {
        let Some((z, _)) = lm_run(&sys, z0, cfg, &mut ws) else {
            diverged += 1;
            continue;
        };
        let f = CFunc::new(z[..n].to_vec());
        let g = CFunc::new(z[n..].to_vec());
        // Independent of the solver's own convergence test.
        let residual = equation_residual(eq, s, sigma, &f, &g);
        if residual > 10.0 * cfg.converge_tol {
            diverged += 1;
            continue;
        }
        converged += 1;
        match classify_with(ctx, eq, &f, &g) {
            Ok(ClassifyOutcome::Case(case)) => {
                let key = (case.tag().to_string(), rounded_key(cfg.dedup_tol, &f, &g));
                solutions.entry(key).or_insert(ReportedSolution { f, g, residual, case });
            }
            Ok(ClassifyOutcome::Unclassified(profile)) => {
                let key = rounded_key(cfg.dedup_tol, &f, &g);
                unclassified.entry(key).or_insert(UnclassifiedSolution { f, g, residual, profile });
            }
            Err(err) => {
                let profile = ResidualProfile {
                    equation_residual: residual,
                    notes: vec![format!("classifier rejected the pair: {err}")],
                    ..ResidualProfile::default()
                };
                let key = rounded_key(cfg.dedup_tol, &f, &g);
                unclassified.entry(key).or_insert(UnclassifiedSolution { f, g, residual, profile });
            }
        }
    }

    SolutionReport {
        equation: eq,
        semigroup_label: s.label().unwrap_or("").to_string(),
        table: s.rows(),
        sigma: sigma.image().to_vec(),
        seed: cfg.seed,
        solutions: solutions.into_values().collect(),
        unclassified: unclassified.into_values().collect(),
        converged,
        diverged,
    }
}

/// Completeness: pass iff no converged point is left unclassified.
pub fn check_completeness(
    eq: EquationTag,
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    cfg: &SolverConfig,
) -> (bool, SolutionReport) {
    let report = find_all_solutions(eq, s, sigma, cfg);
    (report.unclassified.is_empty(), report)
}

/// The two equation/variant pairs that share their solution sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalencePair {
    /// cos-sub ↔ cos-sub-var
    Cos,
    /// sine-add ↔ sine-add-var
    Sine,
}

impl EquivalencePair {
    pub fn tags(self) -> (EquationTag, EquationTag) {
        match self {
            EquivalencePair::Cos => (EquationTag::CosSub, EquationTag::CosSubVariant),
            EquivalencePair::Sine => (EquationTag::SineAdd, EquationTag::SineAddVariant),
        }
    }
}

/// One solution that satisfied its own equation but missed the partner
/// equation.
#[derive(Debug, Clone)]
pub struct EquivalenceBreach {
    pub found_under: EquationTag,
    pub checked_under: EquationTag,
    pub residual: f64,
}

#[derive(Debug)]
pub struct EquivalenceReport {
    pub pass: bool,
    pub breaches: Vec<EquivalenceBreach>,
    pub forward: SolutionReport,
    pub backward: SolutionReport,
}

/// Solve both members of the pair and check every discovered solution
/// against the other equation, in both directions, at [`crate::tol::CLASS`].
pub fn check_equivalence(
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    pair: EquivalencePair,
    cfg: &SolverConfig,
) -> EquivalenceReport {
    let (tag_a, tag_b) = pair.tags();
    let ctx = ClassifierContext::new(s, sigma);
    let report_a = find_all_solutions_with(&ctx, tag_a, cfg);
    let report_b = find_all_solutions_with(&ctx, tag_b, cfg);
    let mut breaches = Vec::new();
    let mut check = |from: &SolutionReport, under: EquationTag| {
        let pairs = from
            .solutions
            .iter()
            .map(|sol| (&sol.f, &sol.g))
            .chain(from.unclassified.iter().map(|u| (&u.f, &u.g)));
        for (f, g) in pairs {
            let residual = equation_residual(under, s, sigma, f, g);
            if residual > crate::tol::CLASS {
                breaches.push(EquivalenceBreach {
                    found_under: from.equation,
                    checked_under: under,
                    residual,
                });
            }
        }
    };
    check(&report_a, tag_b);
    check(&report_b, tag_a);
    EquivalenceReport { pass: breaches.is_empty(), breaches, forward: report_a, backward: report_b }
}

/// Compare the analytic Jacobian against central finite differences (step
/// `1e−6`) on every real coordinate at `n_points` random points; returns
/// the worst relative error. The derivative along the real part of `z_k`
/// is column `k` of the complex Jacobian, along the imaginary part it is
/// `i` times column `k`.
pub fn jacobian_fd_max_rel_err(
    eq: EquationTag,
    s: &FiniteSemigroup,
    sigma: &Automorphism,
    n_points: usize,
    seed: u64,
) -> f64 {
    let n = s.order();
    let m = n * n;
    let p = 2 * n;
    let sys = EquationSystem::new(eq, s, sigma);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-6;
    let mut worst = 0.0f64;
    let mut jac = vec![ZERO; m * p];
    let mut r_plus = vec![ZERO; m];
    let mut r_minus = vec![ZERO; m];
    for _ in 0..n_points {
        let z: Vec<Complex64> = (0..p)
            .map(|_| Complex64::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0)))
            .collect();
        sys.jacobian_into(&z, &mut jac);
        let scale = linalg::max_abs(&jac).max(1.0);
        for k in 0..p {
            for part in 0..2 {
                let bump = if part == 0 { Complex64::new(h, 0.0) } else { Complex64::new(0.0, h) };
                let mut zp = z.clone();
                zp[k] += bump;
                sys.residual_into(&zp, &mut r_plus);
                let mut zm = z.clone();
                zm[k] -= bump;
                sys.residual_into(&zm, &mut r_minus);
                for row in 0..m {
                    let fd = (r_plus[row] - r_minus[row]) / (2.0 * h);
                    let expected = if part == 0 {
                        jac[row * p + k]
                    } else {
                        Complex64::new(0.0, 1.0) * jac[row * p + k]
                    };
                    worst = worst.max((fd - expected).norm() / scale);
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn residual_of_trivial_solutions() {
        let z2 = fixtures::z2();
        let id = Automorphism::identity(2);
        // f = 0 makes both sides of sine-add vanish for any g.
        let f = CFunc::zeros(2);
        let g = CFunc::new(vec![c(0.3, -1.0), c(2.0, 0.7)]);
        assert_eq!(equation_residual(EquationTag::SineAdd, &z2, &id, &f, &g), 0.0);
        // f = g = 1 on Z2: LHS 1, RHS 2 at every pair.
        let ones = CFunc::constant(2, c(1.0, 0.0));
        assert_eq!(equation_residual(EquationTag::CosSub, &z2, &id, &ones, &ones), 1.0);
    }

    #[test]
    fn residual_of_phi_family_on_t3() {
        // χ = (1,0,0), φ = (0,1,0): f = −iφ, g = χ + φ solves cos-sub (σ=id).
        let t3 = fixtures::t3();
        let id = Automorphism::identity(3);
        let chi = CFunc::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let phi = CFunc::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let f = phi.scaled(c(0.0, -1.0));
        let g = chi.add(&phi);
        assert!(equation_residual(EquationTag::CosSub, &t3, &id, &f, &g) <= 1e-12);
    }

    #[test]
    fn lm_converges_from_an_exact_solution() {
        let z2 = fixtures::z2();
        let id = Automorphism::identity(2);
        let sys = EquationSystem::new(EquationTag::CosSub, &z2, &id);
        let mut ws = LmWorkspace::new(4, 4);
        // g = χ, f = 0 (TE3.3 with α = 0)
        let z = vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)];
        let cfg = SolverConfig::default();
        let (_, rmax) = lm_run(&sys, &z, &cfg, &mut ws).unwrap();
        assert!(rmax <= cfg.converge_tol);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let rz3 = fixtures::rz3();
        let cycle = fixtures::rz3_cycle(&rz3);
        for eq in EquationTag::ALL {
            let err = jacobian_fd_max_rel_err(eq, &rz3, &cycle, 10, 7);
            assert!(err <= 1e-5, "{eq}: {err:e}");
        }
    }

    #[test]
    fn identical_configs_give_identical_reports() {
        let z2 = fixtures::z2();
        let id = Automorphism::identity(2);
        let cfg = SolverConfig { n_starts: 40, ..SolverConfig::default() };
        let a = find_all_solutions(EquationTag::SineAdd, &z2, &id, &cfg);
        let b = find_all_solutions(EquationTag::SineAdd, &z2, &id, &cfg);
        assert_eq!(
            crate::io::to_json_string(&a.to_json()),
            crate::io::to_json_string(&b.to_json())
        );
    }
}
