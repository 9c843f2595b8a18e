//! Exact rational linear algebra: incremental row reduction, kernels, and
//! Fourier–Motzkin elimination for systems of non-strict inequalities.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Row = Vec<BigRational>;

/// A reduced row echelon basis grown one row at a time. Every stored row
/// has a leading one in its pivot column and zeros in all other pivot
/// columns.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    cols: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        RowEchelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds `row` to the span; returns whether it raised the rank.
    pub fn insert(&mut self, mut row: Row) -> bool {
        assert_eq!(row.len(), self.cols, "row length must match column count");
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = row[p].clone();
        for x in row.iter_mut() {
            *x /= &lead;
        }
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    /// Whether `v` is annihilated by every row.
    pub fn annihilates(&self, v: &[BigRational]) -> bool {
        self.rows.iter().all(|r| dot(r, v).is_zero())
    }

    /// A basis of the null space: one vector per free column, equal to one
    /// on that column and zero on the other free columns.
    pub fn kernel_basis(&self) -> Vec<Row> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (r, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -r[free].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rank(rows: &[Row], cols: usize) -> usize {
    let mut e = RowEchelon::new(cols);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// `coeffs · x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Row,
    pub rhs: BigRational,
}

impl Inequality {
    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.coeffs.iter_mut() {
                *c /= &lead;
            }
            self.rhs /= &lead;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminationError {
    #[error("Fourier-Motzkin elimination exceeded {cap} inequalities (reached {reached})")]
    TooManyInequalities { cap: usize, reached: usize },
}

/// Decides feasibility of `A x >= b` over the rationals by eliminating the
/// variables from last to first. Returns a feasible point, or `None` if
/// the system has no solution.
pub fn fourier_motzkin(system: Vec<Inequality>, vars: usize, cap: usize) -> Result<Option<Row>, EliminationError> {
    // after the reversal below, stages[k] only involves variables 0..=k
    let mut stages: Vec<Vec<Inequality>> = Vec::with_capacity(vars + 1);
    let Some(mut current) = tidy(system) else {
        return Ok(None);
    };
    for k in (0..vars).rev() {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in &current {
            if ineq.coeffs[k].is_positive() {
                lower.push(ineq);
            } else if ineq.coeffs[k].is_negative() {
                upper.push(ineq);
            } else {
                rest.push(ineq.clone());
            }
        }
        let reached = rest.len() + lower.len() * upper.len();
        if reached > cap {
            return Err(EliminationError::TooManyInequalities { cap, reached });
        }
        for lo in &lower {
            for up in &upper {
                let a = lo.coeffs[k].clone();
                let b = -up.coeffs[k].clone();
                let coeffs = lo.coeffs.iter().zip(&up.coeffs).map(|(x, y)| x * &b + y * &a).collect();
                rest.push(Inequality { coeffs, rhs: &lo.rhs * &b + &up.rhs * &a });
            }
        }
        stages.push(current);
        match tidy(rest) {
            Some(next) => current = next,
            None => return Ok(None),
        }
    }
    stages.reverse();

    let mut x: Row = Vec::with_capacity(vars);
    for (k, stage) in stages.iter().enumerate() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for ineq in stage {
            let a = &ineq.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let known: BigRational = (0..k).map(|j| &ineq.coeffs[j] * &x[j]).sum();
            let bound = (&ineq.rhs - known) / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        let value = match (lo, hi) {
            (Some(l), Some(h)) => {
                debug_assert!(l <= h, "elimination guarantees a nonempty interval");
                l
            }
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => BigRational::zero(),
        };
        x.push(value);
    }
    Ok(Some(x))
}

/// Normalizes and deduplicates; drops tautologies. `None` if some
/// constant inequality is violated.
fn tidy(system: Vec<Inequality>) -> Option<Vec<Inequality>> {
    let mut out = Vec::with_capacity(system.len());
    for ineq in system {
        if ineq.coeffs.iter().all(Zero::is_zero) {
            if ineq.rhs.is_positive() {
                return None;
            }
            continue;
        }
        out.push(ineq.normalized());
    }
    out.sort();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn row(v: &[i64]) -> Row {
        v.iter().map(|&x| q(x)).collect()
    }

    fn ineq(c: &[i64], rhs: i64) -> Inequality {
        Inequality { coeffs: row(c), rhs: q(rhs) }
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let mut e = RowEchelon::new(3);
        for r in rows.clone() {
            e.insert(r);
        }
        let k = e.kernel_basis();
        assert_eq!(k.len(), 1);
        for r in &rows {
            assert!(dot(r, &k[0]).is_zero());
        }
        assert!(e.annihilates(&k[0]));
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let mut e = RowEchelon::new(2);
        assert!(e.insert(row(&[1, 1])));
        assert!(e.insert(row(&[1, -1])));
        assert!(!e.insert(row(&[3, 5])));
        assert!(e.is_full());
        assert!(e.kernel_basis().is_empty());
    }

    #[test]
    fn fm_feasible_point_satisfies_system() {
        // x + y >= 2, x - y >= 0, -x >= -3, y >= 1
        let sys = vec![ineq(&[1, 1], 2), ineq(&[1, -1], 0), ineq(&[-1, 0], -3), ineq(&[0, 1], 1)];
        let x = fourier_motzkin(sys.clone(), 2, 1000).unwrap().unwrap();
        for i in &sys {
            assert!(dot(&i.coeffs, &x) >= i.rhs, "{i:?} at {x:?}");
        }
    }

    #[test]
    fn fm_detects_infeasibility() {
        // x >= 1, y >= 1, -x - y >= -1
        let sys = vec![ineq(&[1, 0], 1), ineq(&[0, 1], 1), ineq(&[-1, -1], -1)];
        assert_eq!(fourier_motzkin(sys, 2, 1000).unwrap(), None);
        assert_eq!(fourier_motzkin(vec![ineq(&[0, 0], 1)], 2, 1000).unwrap(), None);
    }

    #[test]
    fn fm_respects_cap() {
        let mut sys = Vec::new();
        for i in 1..=10 {
            sys.push(ineq(&[i, 1], 0));
            sys.push(ineq(&[i, -1], -100));
        }
        assert!(matches!(fourier_motzkin(sys, 2, 20), Err(EliminationError::TooManyInequalities { .. })));
    }

    #[test]
    fn fm_with_no_variables() {
        assert_eq!(fourier_motzkin(vec![], 0, 10).unwrap(), Some(vec![]));
    }
}
