//! Finite semigroups as verified Cayley tables, exhaustive enumeration of
//! all labeled semigroups of small order, and automorphism groups.
//!
//! Elements are the indices `0..n`; the table is row-major with
//! `table[x][y] = x·y`. Every `FiniteSemigroup` in circulation has passed
//! the full associativity check.

use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

/// Default cap on the order accepted by [`enumerate_semigroups`].
pub const DEFAULT_ENUMERATION_CAP: usize = 4;
/// Maximum order accepted for explicitly loaded Cayley tables.
pub const MAX_LOADED_ORDER: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("entry at ({x},{y}) is {value}, outside [0,{order})")]
    OutOfRangeEntry { x: usize, y: usize, value: usize, order: usize },
    #[error("associativity fails at ({x},{y},{z})")]
    AssociativityViolation { x: usize, y: usize, z: usize },
    #[error("order {order} exceeds cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("table has {rows} rows, expected {order}")]
    BadShape { rows: usize, order: usize },
    #[error("image list is not a permutation of [0,{order})")]
    NotAPermutation { order: usize },
    #[error("map is not a morphism: sigma({x}·{y}) != sigma({x})·sigma({y})")]
    NotAMorphism { x: usize, y: usize },
}

/// An order-`n` semigroup with a verified associative Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    label: Option<String>,
}

/// Verify closure and associativity of a raw table and wrap it.
///
/// Errors name the first failing cell (row-major) or triple (lexicographic).
pub fn validate_table(order: usize, table: &[Vec<usize>]) -> Result<FiniteSemigroup, SemigroupError> {
    if order == 0 {
        return Err(SemigroupError::ZeroOrder);
    }
    if table.len() != order {
        return Err(SemigroupError::BadShape { rows: table.len(), order });
    }
    let mut flat = Vec::with_capacity(order * order);
    for (x, row) in table.iter().enumerate() {
        if row.len() != order {
            return Err(SemigroupError::BadShape { rows: row.len(), order });
        }
        for (y, &v) in row.iter().enumerate() {
            if v >= order {
                return Err(SemigroupError::OutOfRangeEntry { x, y, value: v, order });
            }
            flat.push(v);
        }
    }
    for x in 0..order {
        for y in 0..order {
            for z in 0..order {
                let left = flat[flat[x * order + y] * order + z];
                let right = flat[x * order + flat[y * order + z]];
                if left != right {
                    return Err(SemigroupError::AssociativityViolation { x, y, z });
                }
            }
        }
    }
    Ok(FiniteSemigroup { order, table: flat, label: None })
}

impl FiniteSemigroup {
    /// Build from a flat row-major table, running the full validation.
    pub fn from_flat(order: usize, flat: &[usize]) -> Result<Self, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::ZeroOrder);
        }
        if flat.len() != order * order {
            return Err(SemigroupError::BadShape { rows: flat.len() / order.max(1), order });
        }
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|x| flat[x * order..(x + 1) * order].to_vec())
            .collect();
        validate_table(order, &rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `x·y`.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| self.table[x * self.order..(x + 1) * self.order].to_vec())
            .collect()
    }

    /// The set `S² = {xy | x, y ∈ S}` as a membership vector.
    pub fn square_set(&self) -> SquareSet {
        let mut membership = vec![false; self.order];
        for &v in &self.table {
            membership[v] = true;
        }
        SquareSet { membership }
    }

    /// `f(xy) = f(yx)` for all pairs, within `tol`.
    pub fn is_central(&self, f: &[Complex64], tol: f64) -> bool {
        assert_eq!(f.len(), self.order);
        for x in 0..self.order {
            for y in 0..self.order {
                if (f[self.mul(x, y)] - f[self.mul(y, x)]).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Central and `f(xyz) = f(xzy)` for all triples, within `tol`.
    pub fn is_abelian(&self, f: &[Complex64], tol: f64) -> bool {
        if !self.is_central(f, tol) {
            return false;
        }
        for x in 0..self.order {
            for y in 0..self.order {
                for z in 0..self.order {
                    let a = f[self.mul(x, self.mul(y, z))];
                    let b = f[self.mul(x, self.mul(z, y))];
                    if (a - b).norm() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The semigroup with elements renamed by `perm` (must be a bijection):
    /// `new[perm(x)][perm(y)] = perm(old[x][y])`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSemigroup {
        let n = self.order;
        let mut flat = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                flat[perm[x] * n + perm[y]] = perm[self.mul(x, y)];
            }
        }
        FiniteSemigroup { order: n, table: flat, label: self.label.clone() }
    }

    /// Lexicographically minimal flat table over all relabelings.
    pub fn canonical_form(&self) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for perm in permutations(self.order) {
            let flat = self.relabel(&perm).table;
            match &best {
                Some(b) if *b <= flat => {}
                _ => best = Some(flat),
            }
        }
        best.unwrap()
    }

    /// True iff the table equals its own canonical form.
    pub fn is_canonical(&self) -> bool {
        self.table == self.canonical_form()
    }

    /// All product-preserving permutations, identity first, each with its
    /// order. Found by backtracking over images with morphism pruning.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        let n = self.order;
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut found: Vec<Vec<usize>> = Vec::new();
        self.search_automorphisms(0, &mut image, &mut used, &mut found);
        found
            .into_iter()
            .map(Automorphism::new_unchecked)
            .collect()
    }

    fn search_automorphisms(
        &self,
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut Vec<Vec<usize>>,
    ) {
        let n = self.order;
        if depth == n {
            found.push(image.clone());
            return;
        }
        'candidates: for v in 0..n {
            if used[v] {
                continue;
            }
            image[depth] = v;
            used[v] = true;
            // Check every product currently determined by the partial map.
            for i in 0..=depth {
                for j in 0..=depth {
                    let p = self.mul(i, j);
                    if p <= depth && self.mul(image[i], image[j]) != image[p] {
                        used[v] = false;
                        image[depth] = usize::MAX;
                        continue 'candidates;
                    }
                }
            }
            self.search_automorphisms(depth + 1, image, used, found);
            used[v] = false;
            image[depth] = usize::MAX;
        }
    }
}

impl fmt::Display for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for x in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|y| self.mul(x, y).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The set of products `S²` as a membership vector over element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareSet {
    membership: Vec<bool>,
}

impl SquareSet {
    pub fn contains(&self, e: usize) -> bool {
        self.membership[e]
    }

    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    /// Elements outside `S²`.
    pub fn complement(&self) -> Vec<usize> {
        self.membership
            .iter()
            .enumerate()
            .filter_map(|(e, &m)| (!m).then_some(e))
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.membership.iter().all(|&m| m)
    }
}

/// A product-preserving permutation of a semigroup, with its order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    perm: Vec<usize>,
    order: usize,
}

impl Automorphism {
    /// Validate `perm` as an automorphism of `s`.
    pub fn new(s: &FiniteSemigroup, perm: Vec<usize>) -> Result<Self, SemigroupError> {
        let n = s.order();
        if perm.len() != n {
            return Err(SemigroupError::NotAPermutation { order: n });
        }
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(SemigroupError::NotAPermutation { order: n });
            }
            seen[v] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if perm[s.mul(x, y)] != s.mul(perm[x], perm[y]) {
                    return Err(SemigroupError::NotAMorphism { x, y });
                }
            }
        }
        Ok(Self::new_unchecked(perm))
    }

    fn new_unchecked(perm: Vec<usize>) -> Self {
        let order = permutation_order(&perm);
        Automorphism { perm, order }
    }

    pub fn identity(n: usize) -> Self {
        Automorphism { perm: (0..n).collect(), order: 1 }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.perm
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    /// Smallest `k ≥ 1` with the k-fold composition equal to the identity.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Involutive iff the order divides 2.
    pub fn is_involutive(&self) -> bool {
        self.order <= 2
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let perm: Vec<usize> = other.perm.iter().map(|&x| self.perm[x]).collect();
        Automorphism::new_unchecked(perm)
    }

    /// The k-fold composition; `k = 0` gives the identity.
    pub fn power(&self, k: usize) -> Automorphism {
        let mut out = Automorphism::identity(self.perm.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0usize; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y] = x;
        }
        Automorphism::new_unchecked(perm)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.perm.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn permutation_order(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut current: Vec<usize> = perm.to_vec();
    let mut k = 1;
    while current.iter().enumerate().any(|(i, &v)| i != v) {
        current = (0..n).map(|i| perm[current[i]]).collect();
        k += 1;
    }
    k
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next_permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// Enumerate every labeled associative Cayley table of the given order,
/// exactly once, by backtracking over cells with incremental associativity
/// pruning. Orders above the cap are rejected.
pub fn enumerate_semigroups(order: usize) -> Result<SemigroupEnumeration, SemigroupError> {
    enumerate_semigroups_capped(order, DEFAULT_ENUMERATION_CAP)
}

/// Same as [`enumerate_semigroups`] with an explicit cap.
pub fn enumerate_semigroups_capped(
    order: usize,
    cap: usize,
) -> Result<SemigroupEnumeration, SemigroupError> {
    if order == 0 {
        return Err(SemigroupError::ZeroOrder);
    }
    if order > cap {
        return Err(SemigroupError::CapExceeded { order, cap });
    }
    Ok(SemigroupEnumeration {
        n: order,
        cells: vec![0; order * order],
        depth: 0,
        need_bump: false,
        exhausted: false,
    })
}

/// Single-consumer stream over all labeled semigroups of a fixed order.
pub struct SemigroupEnumeration {
    n: usize,
    cells: Vec<usize>,
    depth: usize,
    need_bump: bool,
    exhausted: bool,
}

impl SemigroupEnumeration {
    /// Check all triples whose evaluation is fully determined by the
    /// currently assigned prefix of cells.
    fn partial_ok(&self) -> bool {
        let n = self.n;
        let depth = self.depth;
        let known = |x: usize, y: usize| -> Option<usize> {
            let idx = x * n + y;
            (idx < depth).then(|| self.cells[idx])
        };
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = known(a, b) else { continue };
                for c in 0..n {
                    let (Some(abc), Some(bc)) = (known(ab, c), known(b, c)) else {
                        continue;
                    };
                    let Some(a_bc) = known(a, bc) else { continue };
                    if abc != a_bc {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Iterator for SemigroupEnumeration {
    type Item = FiniteSemigroup;

    fn next(&mut self) -> Option<FiniteSemigroup> {
        if self.exhausted {
            return None;
        }
        let total = self.n * self.n;
        loop {
            if self.need_bump {
                loop {
                    if self.depth == 0 {
                        self.exhausted = true;
                        return None;
                    }
                    let d = self.depth - 1;
                    self.cells[d] += 1;
                    if self.cells[d] < self.n {
                        break;
                    }
                    self.depth -= 1;
                }
                self.need_bump = false;
            } else {
                self.cells[self.depth] = 0;
                self.depth += 1;
            }
            if self.partial_ok() {
                if self.depth == total {
                    self.need_bump = true;
                    return Some(FiniteSemigroup {
                        order: self.n,
                        table: self.cells.clone(),
                        label: None,
                    });
                }
            } else {
                self.need_bump = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn z2_group_table_is_valid() {
        let s = validate_table(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(s.mul(1, 1), 0);
    }

    #[test]
    fn right_zero_table_is_valid() {
        // xy = y; all 27 triples hold since both sides reduce to z.
        let s = validate_table(3, &vec![vec![0, 1, 2]; 3]).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(s.mul(x, y), y);
            }
        }
    }

    #[test]
    fn validation_reports_first_failing_triple() {
        assert!(validate_table(2, &[vec![0, 1], vec![1, 1]]).is_ok());
        let err = validate_table(2, &[vec![1, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, SemigroupError::AssociativityViolation { .. }));
    }

    #[test]
    fn validation_reports_out_of_range_entry() {
        let err = validate_table(2, &[vec![0, 2], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            SemigroupError::OutOfRangeEntry { x: 0, y: 1, value: 2, order: 2 }
        );
    }

    #[test]
    fn enumeration_counts_orders_one_and_two() {
        assert_eq!(enumerate_semigroups(1).unwrap().count(), 1);
        assert_eq!(enumerate_semigroups(2).unwrap().count(), 8);
    }

    #[test]
    fn enumeration_rejects_orders_above_cap() {
        assert!(matches!(
            enumerate_semigroups(5),
            Err(SemigroupError::CapExceeded { .. })
        ));
    }

    #[test]
    fn square_set_of_group_is_everything() {
        let z2 = validate_table(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(z2.square_set().is_full());
    }

    #[test]
    fn square_set_of_null_semigroup_is_the_zero_element() {
        let n2 = validate_table(2, &[vec![0, 0], vec![0, 0]]).unwrap();
        let sq = n2.square_set();
        assert!(sq.contains(0));
        assert!(!sq.contains(1));
        assert_eq!(sq.complement(), vec![1]);
    }

    #[test]
    fn square_set_of_truncated_addition_is_full() {
        // x∘y = min(x+y, 2): 0∘0=0, 0∘1=1, 1∘1=2.
        let t3 = validate_table(
            3,
            &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
        )
        .unwrap();
        assert!(t3.square_set().is_full());
    }

    #[test]
    fn z2_has_only_the_identity_automorphism() {
        let z2 = validate_table(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let auts = z2.automorphisms();
        assert_eq!(auts.len(), 1);
        assert!(auts[0].is_identity());
    }

    #[test]
    fn right_zero_admits_every_permutation() {
        let rz3 = validate_table(3, &vec![vec![0, 1, 2]; 3]).unwrap();
        let auts = rz3.automorphisms();
        assert_eq!(auts.len(), 6);
        let cycle = auts.iter().find(|a| a.image() == [1, 2, 0]).unwrap();
        assert_eq!(cycle.order(), 3);
        assert!(!cycle.is_involutive());
    }

    #[test]
    fn truncated_addition_has_trivial_automorphism_group() {
        let t3 = validate_table(
            3,
            &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
        )
        .unwrap();
        assert_eq!(t3.automorphisms().len(), 1);
    }

    #[test]
    fn power_of_three_cycle() {
        let rz3 = validate_table(3, &vec![vec![0, 1, 2]; 3]).unwrap();
        let cycle = Automorphism::new(&rz3, vec![1, 2, 0]).unwrap();
        assert_eq!(cycle.power(2).image(), [2, 0, 1]);
        assert_eq!(cycle.power(2), cycle.inverse());
        let id = Automorphism::identity(3);
        assert_eq!(id.power(5), id);
    }

    #[test]
    fn doubling_map_power_on_cyclic_15() {
        let table: Vec<Vec<usize>> = (0..15)
            .map(|x| (0..15).map(|y| (x + y) % 15).collect())
            .collect();
        let z15 = validate_table(15, &table).unwrap();
        let double = Automorphism::new(&z15, (0..15).map(|x| (2 * x) % 15).collect()).unwrap();
        assert_eq!(double.order(), 4);
        let quad = double.power(2);
        for x in 0..15 {
            assert_eq!(quad.apply(x), (4 * x) % 15);
        }
    }

    #[test]
    fn centrality_and_abelianness() {
        let z2 = validate_table(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let f = [c(0.3), c(-1.7)];
        assert!(z2.is_central(&f, 0.0)); // commutative carrier

        let rz3 = validate_table(3, &vec![vec![0, 1, 2]; 3]).unwrap();
        let g = [c(1.0), c(2.0), c(2.0)];
        assert!(!rz3.is_central(&g, 1e-12)); // f(xy)=f(y) vs f(yx)=f(x)

        let constant = [c(4.0), c(4.0), c(4.0)];
        assert!(rz3.is_abelian(&constant, 0.0));
    }

    #[test]
    fn canonical_form_is_a_relabeling_minimum() {
        let rz3 = validate_table(3, &vec![vec![0, 1, 2]; 3]).unwrap();
        assert!(rz3.is_canonical()); // right-zero is fixed by every relabeling
        let z2b = validate_table(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!z2b.is_canonical());
        assert_eq!(z2b.canonical_form(), vec![0, 1, 1, 0]);
    }
}
