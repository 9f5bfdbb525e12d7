//! Dense two-phase primal simplex over arbitrary-precision rationals.
//!
//! Solves `max c·x  s.t.  A x = b, x >= 0` with `b >= 0`. Entering and leaving
//! variables follow Bland's rule, so the method terminates on degenerate
//! problems. No floating point is involved anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        x: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

/// An equality-form linear program with integer data.
#[derive(Clone, Debug, Default)]
pub struct EqualityLp {
    /// Row-major, `rows.len()` constraints over `cols` variables; sparse `(col, coef)`.
    pub rows: Vec<Vec<(usize, i64)>>,
    pub rhs: Vec<i64>,
    pub objective: Vec<i64>,
    pub cols: usize,
}

struct Tableau {
    t: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    cols: usize,
    pivots: usize,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Tableau {
    fn pivot(&mut self, r: usize, k: usize, reduced: &mut [BigRational], value: &mut BigRational) {
        self.pivots += 1;
        let inv = self.t[r][k].recip();
        if !inv.is_one() {
            for x in self.t[r].iter_mut().filter(|x| !x.is_zero()) {
                *x *= &inv;
            }
            self.rhs[r] *= &inv;
        }
        let support: Vec<usize> = (0..self.cols)
            .filter(|&j| !self.t[r][j].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.t[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.t.len() {
            if i == r || self.t[i][k].is_zero() {
                continue;
            }
            let factor = self.t[i][k].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                self.t[i][j] -= delta;
            }
            let delta = &factor * &pivot_rhs;
            self.rhs[i] -= delta;
        }
        let dk = reduced[k].clone();
        if !dk.is_zero() {
            for &j in &support {
                let delta = &dk * &pivot_row[j];
                reduced[j] -= delta;
            }
            *value += &dk * &pivot_rhs;
        }
        self.t[r] = pivot_row;
        self.basis[r] = k;
    }

    /// Bland's rule iterations maximising with the given reduced costs over
    /// allowed columns. Returns false if unbounded.
    fn run(
        &mut self,
        reduced: &mut [BigRational],
        value: &mut BigRational,
        allowed: &[bool],
    ) -> bool {
        loop {
            let Some(k) = (0..self.cols).find(|&j| allowed[j] && reduced[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][k];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((best_row, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_row])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, k, reduced, value);
        }
    }
}

/// Statistics of a solve, for reporting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub pivots: usize,
    pub redundant_rows: usize,
}

pub fn solve(lp: &EqualityLp) -> (LpOutcome, SolveStats) {
    let m = lp.rows.len();
    let n = lp.cols;
    debug_assert!(lp.rhs.iter().all(|&b| b >= 0));

    // Artificial variables are implicit: columns n..n+m, basic in row i.
    // Once an artificial leaves the basis it is dropped.
    const ARTIFICIAL: usize = usize::MAX;
    let mut t = vec![vec![BigRational::zero(); n]; m];
    for (i, row) in lp.rows.iter().enumerate() {
        for &(j, a) in row {
            t[i][j] += rat(a);
        }
    }
    let mut tab = Tableau {
        t,
        rhs: lp.rhs.iter().map(|&b| rat(b)).collect(),
        basis: vec![ARTIFICIAL; m],
        cols: n,
        pivots: 0,
    };

    // Phase one: maximise -sum(artificials).
    let mut reduced: Vec<BigRational> = (0..n)
        .map(|j| tab.t.iter().map(|row| &row[j]).sum())
        .collect();
    let mut value: BigRational = -tab.rhs.iter().sum::<BigRational>();
    let allowed = vec![true; n];
    tab.run(&mut reduced, &mut value, &allowed);
    if !value.is_zero() {
        return (
            LpOutcome::Infeasible,
            SolveStats {
                pivots: tab.pivots,
                redundant_rows: 0,
            },
        );
    }

    // Drive zero-level artificials out of the basis; drop rows that cannot be.
    let mut redundant = Vec::new();
    for r in 0..m {
        if tab.basis[r] != ARTIFICIAL {
            continue;
        }
        match (0..n).find(|&j| !tab.t[r][j].is_zero()) {
            Some(k) => {
                let mut scratch = vec![BigRational::zero(); n];
                let mut dummy = BigRational::zero();
                tab.pivot(r, k, &mut scratch, &mut dummy);
            }
            None => redundant.push(r),
        }
    }
    for &r in redundant.iter().rev() {
        tab.t.remove(r);
        tab.rhs.remove(r);
        tab.basis.remove(r);
    }

    // Phase two.
    let cost: Vec<BigRational> = lp.objective.iter().map(|&c| rat(c)).collect();
    let mut reduced = cost.clone();
    let mut value = BigRational::zero();
    for (i, &b) in tab.basis.iter().enumerate() {
        let cb = &cost[b];
        if cb.is_zero() {
            continue;
        }
        for (r, t) in reduced.iter_mut().zip(&tab.t[i]).take(n) {
            if !t.is_zero() {
                *r -= cb * t;
            }
        }
        value += cb * &tab.rhs[i];
    }
    let bounded = tab.run(&mut reduced, &mut value, &allowed);
    let stats = SolveStats {
        pivots: tab.pivots,
        redundant_rows: redundant.len(),
    };
    if !bounded {
        return (LpOutcome::Unbounded, stats);
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        x[b] = tab.rhs[i].clone();
    }
    (LpOutcome::Optimal { value, x }, stats)
}
