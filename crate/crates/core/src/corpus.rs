//! Fixed lattice animals (polyominoes and hexagonal systems), canonical under
//! translation only.

use std::collections::BTreeSet;

use crate::planegraph::Lattice;

pub type Cells = Vec<(i64, i64)>;

fn neighbours(lattice: Lattice) -> &'static [(i64, i64)] {
    match lattice {
        Lattice::Square => &[(0, 1), (1, 0), (0, -1), (-1, 0)],
        Lattice::Hexagonal => &[(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)],
    }
}

/// Translates so the minimum first and second coordinates are zero; sorted.
pub fn normalize(cells: &[(i64, i64)]) -> Cells {
    let a0 = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let b0 = cells.iter().map(|c| c.1).min().unwrap_or(0);
    let mut out: Cells = cells.iter().map(|&(a, b)| (a - a0, b - b0)).collect();
    out.sort();
    out
}

/// Every fixed animal with exactly `n` cells, sorted. Polyomino cells are
/// `(row, col)`; hexagonal cells are axial `(q, r)`.
pub fn fixed_animals(lattice: Lattice, n: usize) -> Vec<Cells> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<Cells> = BTreeSet::from([vec![(0, 0)]]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for animal in &level {
            let occupied: BTreeSet<_> = animal.iter().copied().collect();
            for &(a, b) in animal {
                for &(da, db) in neighbours(lattice) {
                    let cell = (a + da, b + db);
                    if occupied.contains(&cell) {
                        continue;
                    }
                    let mut grown = animal.clone();
                    grown.push(cell);
                    next.insert(normalize(&grown));
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}
