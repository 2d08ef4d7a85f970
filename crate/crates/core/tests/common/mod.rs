#![allow(dead_code)] // each test binary uses its own subset of the oracles

//! Independent brute-force oracles shared by the integration suites. These
//! deliberately avoid the library's pruned algorithms: the census filters
//! every possible table, and the multiplicative oracle walks the whole
//! candidate grid.

use feqlab_core::funcspace::{index_period, root_of_unity};
use feqlab_core::semigroup::FiniteSemigroup;
use feqlab_core::Complex64;

/// Every associative table of the given order, found by filtering all
/// n^(n²) candidates. Feasible for n ≤ 3.
pub fn naive_semigroup_census(n: usize) -> Vec<Vec<usize>> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut table = vec![0usize; cells];
        let mut rest = code;
        for cell in &mut table {
            *cell = rest % n;
            rest /= n;
        }
        let assoc = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    table[table[x * n + y] * n + z] == table[x * n + table[y * n + z]]
                })
            })
        });
        if assoc {
            out.push(table);
        }
    }
    out
}

/// Every multiplicative function on `s`, by exhausting the full candidate
/// grid ({0} ∪ period-th roots of unity per element) and keeping the
/// assignments that satisfy χ(xy) = χ(x)χ(y) on all pairs.
pub fn grid_multiplicative_oracle(s: &FiniteSemigroup, include_zero: bool) -> Vec<Vec<Complex64>> {
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
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let values: Vec<Complex64> = (0..n).map(|x| candidates[x][choice[x]]).collect();
        let ok = (0..n).all(|x| {
            (0..n).all(|y| (values[s.mul(x, y)] - values[x] * values[y]).norm() <= 1e-12)
        });
        if ok {
            let zero = values.iter().all(|z| *z == Complex64::new(0.0, 0.0));
            if (include_zero || !zero)
                && !out.iter().any(|seen| {
                    seen.iter().zip(&values).all(|(a, b)| a == b)
                })
            {
                out.push(values);
            }
        }
        // advance the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == n {
                sort_tables(&mut out);
                return out;
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

pub fn sort_tables(tables: &mut [Vec<Complex64>]) {
    tables.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x.re.partial_cmp(&y.re).unwrap() {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
            match x.im.partial_cmp(&y.im).unwrap() {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    });
}
