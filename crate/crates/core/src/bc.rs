//! Askey-Wilson and Koornwinder difference operators.
//!
//! The rank-n lattice is Z^n with the standard inner product refined by
//! half-steps; a monomial exponent v stands for q^{2(v,z)}. Parameters are
//! carried as q-exponents, so a = q^{ea} etc.; the classical parameter sets
//! (a,b,c,d,t) = (q^{-l}, q^{-l'}, q^{-m}, q^{-m'}, q^{-k}) correspond to
//! negated multiplicities.

use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::{Exp, PairedLattice};
use crate::laurent::{bracket_poly, LaurentPoly};
use crate::ops::DiffOperator;
use crate::quasi::Var;
use crate::ratfun::CoeffFrac;
use crate::scalar::{Rat, Scalar};

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// The "plus bracket" q^{c+(v,z)} + q^{-c-(v,z)} with exponents +-half.
pub fn bracket_plus_poly(
    lattice: &Arc<PairedLattice>,
    half: &Exp,
    c: Rat,
) -> Result<LaurentPoly> {
    let e = lattice.root_order;
    Ok(LaurentPoly::from_terms(
        lattice,
        vec![
            (half.clone(), Scalar::q_power(c, e)?),
            (lattice.neg_exp(half), Scalar::q_power(-c, e)?),
        ],
    ))
}

/// Lattice hosting the BC-type constructions: Z^n with half-steps.
pub fn bc_lattice(n: usize, root_order: u32) -> Arc<PairedLattice> {
    let gram = (0..n)
        .map(|i| (0..n).map(|j| ri((i == j) as i64)).collect())
        .collect();
    PairedLattice::new(&format!("BC{}", n), gram, 2, root_order)
}

/// Five-parameter multiplicity set (k; l, l', m, m').
#[derive(Clone, Debug, PartialEq)]
pub struct KoornwinderParams {
    pub n: usize,
    pub k: Rat,
    pub l: Rat,
    pub lp: Rat,
    pub m: Rat,
    pub mp: Rat,
    pub lattice: Arc<PairedLattice>,
}

impl KoornwinderParams {
    pub fn new(n: usize, k: Rat, l: Rat, lp: Rat, m: Rat, mp: Rat) -> Result<Self> {
        let half = Ratio::new(1, 2);
        if !(half + l + lp).is_integer() || !(half + m + mp).is_integer() {
            return Err(Error::InvalidParams(
                "need 1/2 + l + l' and 1/2 + m + m' integral".into(),
            ));
        }
        Ok(KoornwinderParams {
            n,
            k,
            l,
            lp,
            m,
            mp,
            lattice: bc_lattice(n, 2),
        })
    }

    /// N = 1 + l + l' + m + m', the short-root multiplicity.
    pub fn cap_n(&self) -> Rat {
        ri(1) + self.l + self.lp + self.m + self.mp
    }

    /// Involutive dual multiplicities; k is fixed.
    pub fn dual(&self) -> KoornwinderParams {
        let v = [self.l, self.lp, self.m, self.mp];
        let half = Ratio::new(1, 2);
        let row = |signs: [i64; 4], off: Rat| -> Rat {
            let mut acc = off;
            for (s, x) in signs.iter().zip(v.iter()) {
                acc += Ratio::new(*s, 2) * x;
            }
            acc
        };
        KoornwinderParams {
            n: self.n,
            k: self.k,
            l: row([1, 1, 1, 1], half),
            lp: row([1, 1, -1, -1], -half),
            m: row([1, -1, 1, -1], -half),
            mp: row([1, -1, -1, 1], -half),
            lattice: self.lattice.clone(),
        }
    }

    /// Parameter exponents (ea, eb, ec, ed) with a = q^{ea} = q^{-l}, etc.
    pub fn exponents(&self) -> [Rat; 4] {
        [-self.l, -self.lp, -self.m, -self.mp]
    }

    /// rho_M = 1/2 sum of m_a a: coordinates N/2 + k (n - i) for i = 1..n.
    pub fn rho(&self) -> Result<Exp> {
        let n = self.n;
        let coords: Vec<Rat> = (0..n)
            .map(|i| self.cap_n() / ri(2) + self.k * ri((n - 1 - i) as i64))
            .collect();
        self.lattice.exp_from_ratios(&coords)
    }

    /// Unit vector e_i in scaled coordinates.
    pub fn unit(&self, i: usize) -> Exp {
        let mut v = vec![0i64; self.n];
        v[i] = self.lattice.denom;
        v
    }

    /// The constant term q(abcd)^{-1} + q^{-1} abcd ... summed over rows;
    /// written through the geometric sums so that k = 0 is fine.
    pub fn constant_term(&self) -> Result<Scalar> {
        let e = self.lattice.root_order;
        let sum_abcd = -(self.l + self.lp + self.m + self.mp);
        let mut acc = Scalar::zero(e);
        for j in 0..self.n as i64 {
            // abcd q^{-1} t^{2j} and (abcd)^{-1} q t^{-2j}
            acc = acc.add(&Scalar::q_power(sum_abcd - ri(1) - ri(2 * j) * self.k, e)?);
            acc = acc.add(&Scalar::q_power(-sum_abcd + ri(1) + ri(2 * j) * self.k, e)?);
        }
        Ok(acc)
    }
}

/// Rank-one coefficient v^+(z) for parameter exponents (ea, eb, ec, ed),
/// shifted to act on coordinate `i` of an n-coordinate lattice.
fn aw_vplus(
    lattice: &Arc<PairedLattice>,
    i: usize,
    exps: &[Rat; 4],
) -> Result<CoeffFrac> {
    let n = lattice.dim;
    let mut half = vec![0i64; n];
    half[i] = 1; // exponent 1/2 in coordinate z_i
    let mut c = CoeffFrac::one(lattice);
    c = c.mul_poly(&bracket_poly(lattice, &half, exps[0])?);
    c = c.mul_poly(&bracket_poly(lattice, &half, exps[1])?);
    c = c.mul_poly(&bracket_plus_poly(lattice, &half, exps[2])?);
    c = c.mul_poly(&bracket_plus_poly(lattice, &half, exps[3])?);
    c = c.div_poly(&bracket_poly(lattice, &half, ri(0))?)?;
    c = c.div_poly(&bracket_poly(lattice, &half, Ratio::new(1, 2))?)?;
    c = c.div_poly(&bracket_plus_poly(lattice, &half, ri(0))?)?;
    c = c.div_poly(&bracket_plus_poly(lattice, &half, Ratio::new(1, 2))?)?;
    Ok(c)
}

/// The Askey-Wilson operator for parameter exponents (ea, eb, ec, ed):
/// v^+ (T - 1) + v^- (T^{-1} - 1) + q (abcd)^{-1} + q^{-1} abcd.
pub fn askey_wilson_operator(
    lattice: &Arc<PairedLattice>,
    exps: &[Rat; 4],
) -> Result<DiffOperator> {
    assert_eq!(lattice.dim, 1);
    let e = lattice.root_order;
    let vp = aw_vplus(lattice, 0, exps)?;
    let vm = vp.map_exponents(|x| lattice.neg_exp(x));
    let sum: Rat = exps.iter().cloned().sum();
    let cst = Scalar::q_power(ri(1) - sum, e)?.add(&Scalar::q_power(sum - ri(1), e)?);
    let mut op = DiffOperator::new(Var::Z, lattice);
    let step = vec![lattice.denom];
    op.add_term(step.clone(), vp.clone());
    op.add_term(lattice.neg_exp(&step), vm.clone());
    let c0 = CoeffFrac::from_scalar(lattice, &cst).sub(&vp).sub(&vm);
    op.add_term(lattice.zero_exp(), c0);
    Ok(op)
}

/// The Koornwinder operator; reduces to the Askey-Wilson operator at n = 1.
pub fn koornwinder_operator(params: &KoornwinderParams) -> Result<DiffOperator> {
    let lattice = &params.lattice;
    let n = params.n;
    let exps = params.exponents();
    let et = -params.k;
    let mut op = DiffOperator::new(Var::Z, lattice);
    let mut folded = CoeffFrac::from_scalar(lattice, &params.constant_term()?);
    for i in 0..n {
        for sign in [1i64, -1] {
            let base = aw_vplus(lattice, i, &exps)?;
            let base = if sign == 1 {
                base
            } else {
                base.map_exponents(|x| lattice.neg_exp(x))
            };
            let mut coeff = base;
            for j in 0..n {
                if j == i {
                    continue;
                }
                // cross factors [ +-z_i - z_j - k ] [ +-z_i + z_j - k ] over
                // the same brackets without k.
                for zsign in [1i64, -1] {
                    let mut half = vec![0i64; n];
                    half[i] = sign;
                    half[j] = zsign;
                    coeff = coeff.mul_poly(&bracket_poly(lattice, &half, et)?);
                    coeff = coeff.div_poly(&bracket_poly(lattice, &half, ri(0))?)?;
                }
            }
            let mut shift = vec![0i64; n];
            shift[i] = sign * lattice.denom;
            folded = folded.sub(&coeff);
            op.add_term(shift, coeff);
        }
    }
    op.add_term(lattice.zero_exp(), folded);
    Ok(op)
}

/// Half-step shift operators for the Askey-Wilson operator. `which` selects
/// the bracket pair: 1 = (a,b,c,d), 2 = (a,b), 3 = (a,c), 4 = (a,d).
pub fn aw_shift_operator(
    lattice: &Arc<PairedLattice>,
    which: usize,
    exps: &[Rat; 4],
) -> Result<DiffOperator> {
    assert_eq!(lattice.dim, 1);
    let half = vec![1i64]; // exponent 1/2
    let offm = |e: Rat| e - Ratio::new(1, 2);
    let mut ap = CoeffFrac::one(lattice);
    ap = ap.mul_poly(&bracket_poly(lattice, &half, offm(exps[0]))?);
    match which {
        1 => {
            ap = ap.mul_poly(&bracket_poly(lattice, &half, offm(exps[1]))?);
            ap = ap.mul_poly(&bracket_plus_poly(lattice, &half, offm(exps[2]))?);
            ap = ap.mul_poly(&bracket_plus_poly(lattice, &half, offm(exps[3]))?);
        }
        2 => {
            ap = ap.mul_poly(&bracket_poly(lattice, &half, offm(exps[1]))?);
        }
        3 => {
            ap = ap.mul_poly(&bracket_plus_poly(lattice, &half, offm(exps[2]))?);
        }
        4 => {
            ap = ap.mul_poly(&bracket_plus_poly(lattice, &half, offm(exps[3]))?);
        }
        _ => return Err(Error::InvalidParams("shift index must be 1..4".into())),
    }
    // denominator (q^z - q^{-z})(q^z + q^{-z}) = q^{2z} - q^{-2z}
    let full = vec![2i64]; // exponent 1
    ap = ap.div_poly(&bracket_poly(lattice, &full, ri(0))?)?;
    let am = ap.map_exponents(|x| lattice.neg_exp(x));
    let mut op = DiffOperator::new(Var::Z, lattice);
    op.add_term(vec![1], ap); // T^{1/2}
    op.add_term(vec![-1], am);
    Ok(op)
}

/// Parameter-exponent bookkeeping for the shift operators: the exponents of
/// the brackets appearing in A_i^+ decrease by 1/2, the others increase.
pub fn aw_shifted_exponents(which: usize, exps: &[Rat; 4]) -> [Rat; 4] {
    let h = Ratio::new(1, 2);
    let mut out = *exps;
    let lowered: &[usize] = match which {
        1 => &[0, 1, 2, 3],
        2 => &[0, 1],
        3 => &[0, 2],
        4 => &[0, 3],
        _ => panic!("shift index"),
    };
    for i in 0..4 {
        if lowered.contains(&i) {
            out[i] -= h;
        } else {
            out[i] += h;
        }
    }
    out
}

/// The finite-product normalization for the leading coefficient of the
/// rank-one BA function: the reciprocal weight at the dual parameters,
/// q^{-Nx} times one linear factor in q^{2x} per unit of multiplicity.
///
/// `duals` are the dual multiplicities (lt, lt', mt, mt'), each >= -1/2;
/// integer entries contribute factors (1 -+ q^{2x-2j}), half-integer entries
/// factors (1 -+ q^{2x+1-2j}).
pub fn dual_weight_reciprocal(
    lattice: &Arc<PairedLattice>,
    duals: &[Rat; 4],
    cap_n: i64,
) -> Result<LaurentPoly> {
    assert_eq!(lattice.dim, 1);
    let e = lattice.root_order;
    // x-monomial q^{-Nx}: exponent -N/2, scaled by denom 2 -> -N
    let mut acc = LaurentPoly::monomial(lattice, vec![-cap_n], Scalar::one(e));
    let x_step = vec![2i64]; // exponent 1: q^{2x}
    for (idx, d) in duals.iter().enumerate() {
        let minus_family = idx < 2; // a,b give (1 - ...), c,d give (1 + ...)
        if *d < Ratio::new(-1, 2) {
            return Err(Error::InvalidParams(
                "dual multiplicity below -1/2 has no finite product form".into(),
            ));
        }
        let (count, odd) = if d.is_integer() {
            (d.to_integer(), false)
        } else {
            ((*d + Ratio::new(1, 2)).to_integer(), true)
        };
        for j in 1..=count {
            let c = if odd { ri(1 - 2 * j) } else { ri(-2 * j) };
            let sign = if minus_family { -1 } else { 1 };
            let term = LaurentPoly::from_terms(
                lattice,
                vec![
                    (vec![0], Scalar::one(e)),
                    (
                        x_step.clone(),
                        Scalar::q_power(c, e)?.mul(&Scalar::from_int(sign, e)),
                    ),
                ],
            );
            acc = acc.mul(&term);
        }
    }
    Ok(acc)
}
