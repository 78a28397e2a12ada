//! Support polytopes: exact convex-hull extreme points and Minkowski sums.
//!
//! Points are lattice exponents in scaled integer coordinates. A point is a
//! vertex iff it is not a convex combination of the other points, decided by
//! an exact rational phase-one simplex.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{same_lattice, Exp, PairedLattice};

type Q = Ratio<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPolytope {
    pub lattice: Arc<PairedLattice>,
    pub points: BTreeSet<Exp>,
    pub vertices: BTreeSet<Exp>,
}

impl SupportPolytope {
    pub fn from_points(lattice: &Arc<PairedLattice>, pts: impl IntoIterator<Item = Exp>) -> Result<Self> {
        let points: BTreeSet<Exp> = pts.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        let vertices = extreme_points(&points);
        Ok(SupportPolytope {
            lattice: lattice.clone(),
            points,
            vertices,
        })
    }

    /// Pointwise sums of the two point sets, with extreme points recomputed.
    pub fn minkowski_sum(&self, other: &SupportPolytope) -> Result<SupportPolytope> {
        same_lattice(&self.lattice, &other.lattice)?;
        let mut pts = BTreeSet::new();
        for a in &self.points {
            for b in &other.points {
                pts.insert(self.lattice.add_exp(a, b));
            }
        }
        SupportPolytope::from_points(&self.lattice, pts)
    }

    pub fn contains(&self, p: &Exp) -> bool {
        self.points.contains(p) || {
            let pts: Vec<&Exp> = self.points.iter().collect();
            in_convex_hull(p, &pts)
        }
    }
}

/// Extreme points of a finite set: p is extreme iff p is not in the convex
/// hull of the others.
pub fn extreme_points(points: &BTreeSet<Exp>) -> BTreeSet<Exp> {
    let all: Vec<&Exp> = points.iter().collect();
    let mut out = BTreeSet::new();
    for (i, p) in all.iter().enumerate() {
        let others: Vec<&Exp> = all
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| *q)
            .collect();
        if others.is_empty() || !in_convex_hull(p, &others) {
            out.insert((*p).clone());
        }
    }
    out
}

/// Exact feasibility: does p = sum l_i s_i with l_i >= 0, sum l_i = 1 have a
/// solution? Phase-one simplex with Bland's rule over big rationals.
pub fn in_convex_hull(p: &Exp, set: &[&Exp]) -> bool {
    if set.is_empty() {
        return false;
    }
    let dim = p.len();
    let rows = dim + 1;
    let cols = set.len();
    // Constraint matrix: [s_i coordinates; 1] lambda = [p; 1]
    let mut a: Vec<Vec<Q>> = vec![vec![Q::zero(); cols]; rows];
    let mut b: Vec<Q> = Vec::with_capacity(rows);
    for r in 0..dim {
        for (c, s) in set.iter().enumerate() {
            a[r][c] = Q::from_integer(BigInt::from(s[r]));
        }
        b.push(Q::from_integer(BigInt::from(p[r])));
    }
    for c in 0..cols {
        a[dim][c] = Q::one();
    }
    b.push(Q::one());
    // Make all right-hand sides nonnegative.
    for r in 0..rows {
        if b[r].is_negative() {
            b[r] = -b[r].clone();
            for c in 0..cols {
                a[r][c] = -a[r][c].clone();
            }
        }
    }
    // Tableau with artificial variables; minimize their sum.
    let total = cols + rows;
    let mut t: Vec<Vec<Q>> = vec![vec![Q::zero(); total + 1]; rows];
    for r in 0..rows {
        for c in 0..cols {
            t[r][c] = a[r][c].clone();
        }
        t[r][cols + r] = Q::one();
        t[r][total] = b[r].clone();
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    // Phase-one reduced-cost row for minimizing the artificial sum: the sum
    // of all constraint rows, with the basic artificial columns zeroed.
    let mut obj: Vec<Q> = vec![Q::zero(); total + 1];
    for r in 0..rows {
        for c in 0..=total {
            let v = obj[c].clone() + t[r][c].clone();
            obj[c] = v;
        }
    }
    for r in 0..rows {
        let v = obj[cols + r].clone() - Q::one();
        obj[cols + r] = v;
    }
    loop {
        // Bland: smallest index with positive reduced cost among non-artificial
        // and artificial columns alike (artificials can re-enter harmlessly).
        let mut enter = None;
        for c in 0..total {
            if obj[c].is_positive() {
                enter = Some(c);
                break;
            }
        }
        let Some(enter) = enter else { break };
        // Ratio test with Bland tie-break on basis index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Q> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = t[r][total].clone() / t[r][enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else {
            // Unbounded phase-one cannot happen; treat as infeasible guard.
            return false;
        };
        // Pivot.
        let piv = t[lr][enter].clone();
        for c in 0..=total {
            let v = t[lr][c].clone() / piv.clone();
            t[lr][c] = v;
        }
        for r in 0..rows {
            if r != lr && !t[r][enter].is_zero() {
                let f = t[r][enter].clone();
                for c in 0..=total {
                    let v = t[r][c].clone() - f.clone() * t[lr][c].clone();
                    t[r][c] = v;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for c in 0..=total {
                let v = obj[c].clone() - f.clone() * t[lr][c].clone();
                obj[c] = v;
            }
        }
        basis[lr] = enter;
    }
    // Feasible iff the artificial objective reached zero.
    obj[total].is_zero()
}
