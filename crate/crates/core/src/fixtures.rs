//! Small reference semigroups used throughout the test suites and handy
//! from the CLI examples: the two-element group, the null and right-zero
//! semigroups, truncated addition, a four-element graded monoid, and the
//! cyclic group of order 15 with the non-involutive doubling automorphism.

use crate::semigroup::{validate_table, Automorphism, FiniteSemigroup};

/// The group ℤ₂ (addition mod 2).
pub fn z2() -> FiniteSemigroup {
    validate_table(2, &[vec![0, 1], vec![1, 0]]).unwrap().with_label("Z2")
}

/// Null semigroup of order 2: every product is 0.
pub fn n2() -> FiniteSemigroup {
    validate_table(2, &[vec![0, 0], vec![0, 0]]).unwrap().with_label("N2")
}

/// Right-zero semigroup of order 3: `xy = y`.
pub fn rz3() -> FiniteSemigroup {
    validate_table(3, &vec![vec![0, 1, 2]; 3]).unwrap().with_label("RZ3")
}

/// Truncated addition on {0, 1, 2}: `x∘y = min(x+y, 2)`.
pub fn t3() -> FiniteSemigroup {
    validate_table(3, &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]])
        .unwrap()
        .with_label("T3")
}

/// Four-element graded monoid {e, a, a′, 0}: e is the identity, products of
/// two non-identity elements land on the absorbing element 3.
pub fn s4() -> FiniteSemigroup {
    validate_table(
        4,
        &[
            vec![0, 1, 2, 3],
            vec![1, 3, 3, 3],
            vec![2, 3, 3, 3],
            vec![3, 3, 3, 3],
        ],
    )
    .unwrap()
    .with_label("S4")
}

/// Cyclic group of order n (addition mod n).
pub fn cyclic(n: usize) -> FiniteSemigroup {
    let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    validate_table(n, &table).unwrap().with_label(format!("Z{n}"))
}

/// ℤ₁₅.
pub fn z15() -> FiniteSemigroup {
    cyclic(15)
}

/// The order-3 cycle 0→1→2→0 on the right-zero semigroup.
pub fn rz3_cycle(s: &FiniteSemigroup) -> Automorphism {
    Automorphism::new(s, vec![1, 2, 0]).unwrap()
}

/// Swap of the two grade-1 elements of [`s4`].
pub fn s4_swap(s: &FiniteSemigroup) -> Automorphism {
    Automorphism::new(s, vec![0, 2, 1, 3]).unwrap()
}

/// The doubling map `x ↦ 2x` on ℤ₁₅; it has order 4, so it is not involutive.
pub fn z15_doubling(s: &FiniteSemigroup) -> Automorphism {
    Automorphism::new(s, (0..15).map(|x| (2 * x) % 15).collect()).unwrap()
}

/// A named (semigroup, automorphism) pair.
pub struct Fixture {
    pub name: &'static str,
    pub s: FiniteSemigroup,
    pub sigma: Automorphism,
}

/// The standard fixture set: ℤ₂, N2, RZ3 with the 3-cycle, T3, S4 with the
/// grade-1 swap, and ℤ₁₅ with the doubling map.
pub fn standard_fixtures() -> Vec<Fixture> {
    let z2s = z2();
    let n2s = n2();
    let rz3s = rz3();
    let t3s = t3();
    let s4s = s4();
    let z15s = z15();
    vec![
        Fixture { name: "Z2", sigma: Automorphism::identity(2), s: z2s },
        Fixture { name: "N2", sigma: Automorphism::identity(2), s: n2s },
        Fixture { name: "RZ3", sigma: rz3_cycle(&rz3s), s: rz3s },
        Fixture { name: "T3", sigma: Automorphism::identity(3), s: t3s },
        Fixture { name: "S4", sigma: s4_swap(&s4s), s: s4s },
        Fixture { name: "Z15", sigma: z15_doubling(&z15s), s: z15s },
    ]
}
