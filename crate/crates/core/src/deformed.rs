//! The deformed A-type difference operator and its orbit sums.
//!
//! Shifts run along f_1, ..., f_n and the scaled direction f_{n+1}; the Gram
//! matrix diag(1, ..., 1, m) keeps every pairing rational.

use num_rational::Ratio;

use crate::error::Result;
use crate::laurent::{bracket_poly, LaurentPoly};
use crate::ops::DiffOperator;
use crate::quasi::Var;
use crate::ratfun::CoeffFrac;
use crate::rootdata::DeformedSystem;
use crate::scalar::{Rat, Scalar};

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Half of f_i - f_j in scaled coordinates.
fn half_diff(sys: &DeformedSystem, i: usize, j: usize) -> Vec<i64> {
    let d = sys.lattice.denom;
    let mut v = vec![0i64; sys.n + 1];
    v[i] = d / 2;
    v[j] = -(d / 2);
    v
}

/// The deformed operator: n shifts along f_i plus one along f_{n+1}.
pub fn deformed_operator(sys: &DeformedSystem) -> Result<DiffOperator> {
    let lattice = &sys.lattice;
    let n = sys.n;
    let m = sys.m;
    let e = lattice.root_order;
    let mut op = DiffOperator::new(Var::Z, lattice);
    let half_m1 = Ratio::new(m + 1, 2);
    for i in 0..n {
        let mut coeff = CoeffFrac::one(lattice);
        // [z_i - sqrt(m) z_{n+1} - (m+1)/2] / [z_i - sqrt(m) z_{n+1} - (m-1)/2]:
        // the denominator offset (m-1)/2 puts the pole on the mixed condition
        // locus, where its residue cancels against the last row's; at m = 1
        // it reduces to the plain A-type coefficient.
        let h = half_diff(sys, i, n);
        coeff = coeff.mul_poly(&bracket_poly(lattice, &h, -half_m1)?);
        coeff = coeff.div_poly(&bracket_poly(lattice, &h, -Ratio::new(m - 1, 2))?)?;
        for j in 0..n {
            if j == i {
                continue;
            }
            let h = half_diff(sys, i, j);
            coeff = coeff.mul_poly(&bracket_poly(lattice, &h, ri(-m))?);
            coeff = coeff.div_poly(&bracket_poly(lattice, &h, ri(0))?)?;
        }
        op.add_term(sys.unit(i), coeff);
    }
    // last row: ([1]/[m]) product over j of
    // [sqrt(m) z_{n+1} - z_j - (m+1)/2] / [sqrt(m) z_{n+1} - z_j + (m-1)/2]
    let pre = Scalar::q_bracket(ri(1), e)?
        .mul(&Scalar::q_bracket(ri(m), e)?.inv()?);
    let mut coeff = CoeffFrac::from_scalar(lattice, &pre);
    for j in 0..n {
        let h = half_diff(sys, n, j);
        coeff = coeff.mul_poly(&bracket_poly(lattice, &h, -half_m1)?);
        coeff = coeff.div_poly(&bracket_poly(lattice, &h, Ratio::new(m - 1, 2))?)?;
    }
    op.add_term(sys.unit(n), coeff);
    Ok(op)
}

/// The deformed power sum: sum q^{2 s z_i} + ([s]/[sm]) q^{2 s sqrt(m) z_{n+1}}.
pub fn deformed_orbitsum(sys: &DeformedSystem, s: i64) -> Result<LaurentPoly> {
    let lattice = &sys.lattice;
    let e = lattice.root_order;
    let mut out = LaurentPoly::zero(lattice);
    for i in 0..sys.n {
        out.add_term(lattice.scale_exp(&sys.unit(i), s), Scalar::one(e));
    }
    let c = Scalar::q_bracket(ri(s), e)?
        .mul(&Scalar::q_bracket(ri(s * sys.m), e)?.inv()?);
    out.add_term(lattice.scale_exp(&sys.unit(sys.n), s), c);
    Ok(out)
}
