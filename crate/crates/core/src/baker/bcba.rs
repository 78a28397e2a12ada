//! Baker-Akhiezer functions for the Askey-Wilson and Koornwinder operators.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::bc::{
    aw_shift_operator, aw_shifted_exponents, bracket_plus_poly, dual_weight_reciprocal,
    koornwinder_operator, KoornwinderParams,
};
use crate::error::{Error, Result};
use crate::lattice::Exp;
use crate::laurent::{bracket_poly, LaurentPoly};
use crate::ops::DiffOperator;
use crate::quasi::{QuasiPoly, Var};
use crate::ratfun::CoeffFrac;
use crate::rings::admissible_steps;
use crate::scalar::{Rat, Scalar};

use super::{BaFunction, SystemData};

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// The product c(z, M) of brackets [j - (alpha, z)] over the short-root
/// step families and the long-root ladder.
pub fn bc_c_poly(p: &KoornwinderParams, negate: bool) -> Result<LaurentPoly> {
    let lattice = &p.lattice;
    let n = p.n;
    let sgn = if negate { -1 } else { 1 };
    let mut acc = LaurentPoly::one(lattice);
    for i in 0..n {
        let mut half = vec![0i64; n];
        half[i] = -sgn; // -(alpha/2) for alpha = e_i (or its negation)
        for s in admissible_steps(p.l, p.lp) {
            acc = acc.mul(&bracket_poly(lattice, &half, s)?);
        }
        for s in admissible_steps(p.m, p.mp) {
            acc = acc.mul(&bracket_poly(lattice, &half, s)?);
        }
    }
    assert!(p.k.is_integer());
    for i in 0..n {
        for j in (i + 1)..n {
            for pm in [1i64, -1] {
                let mut half = vec![0i64; n];
                half[i] = -sgn;
                half[j] = -sgn * pm;
                for s in 1..=p.k.to_integer() {
                    acc = acc.mul(&bracket_poly(lattice, &half, ri(s))?);
                }
            }
        }
    }
    Ok(acc)
}

/// The seed polynomials: Q(z) = sign * q^{2(rho, z)} c(z, M) c(-z, M).
pub fn bc_seed_poly(p: &KoornwinderParams) -> Result<LaurentPoly> {
    let lattice = &p.lattice;
    let rho = p.rho()?;
    let sign_exp = ri(p.n as i64) * (p.l + p.lp + Ratio::new(1, 2));
    assert!(sign_exp.is_integer());
    let sign = if sign_exp.to_integer() % 2 == 0 { 1 } else { -1 };
    let head = LaurentPoly::monomial(lattice, rho, Scalar::from_int(sign, lattice.root_order));
    Ok(head.mul(&bc_c_poly(p, false)?).mul(&bc_c_poly(p, true)?))
}

/// The eigen-symbol sum of q^{2 x_i} + q^{-2 x_i}.
pub fn bc_orbit_m(p: &KoornwinderParams) -> LaurentPoly {
    let lattice = &p.lattice;
    let mut out = LaurentPoly::zero(lattice);
    for i in 0..p.n {
        out.add_term(p.unit(i), Scalar::one(lattice.root_order));
        out.add_term(
            lattice.neg_exp(&p.unit(i)),
            Scalar::one(lattice.root_order),
        );
    }
    out
}

/// Distinct nonzero values sum l_a a^vee over the BC positive system with
/// multiplicities (N on short roots, k on long ones).
pub fn bc_combinations(p: &KoornwinderParams) -> Result<Vec<Exp>> {
    let lattice = &p.lattice;
    let n = p.n;
    let cap = p.cap_n();
    if !cap.is_integer() || cap.to_integer() < 0 {
        return Err(Error::InvalidParams("need integral N >= 0".into()));
    }
    let mut gens: Vec<(Exp, i64)> = Vec::new();
    for i in 0..n {
        // coroot of the short root e_i is 2 e_i
        gens.push((lattice.scale_exp(&p.unit(i), 2), cap.to_integer()));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            gens.push((
                lattice.sub_exp(&p.unit(i), &p.unit(j)),
                p.k.to_integer(),
            ));
            gens.push((
                lattice.add_exp(&p.unit(i), &p.unit(j)),
                p.k.to_integer(),
            ));
        }
    }
    let mut values: Vec<Exp> = vec![vec![0; n]];
    let mut seen: BTreeSet<Exp> = values.iter().cloned().collect();
    for (g, m) in gens {
        let mut next = Vec::new();
        for v in &values {
            for l in 0..=m {
                let cand = lattice.add_exp(v, &lattice.scale_exp(&g, l));
                if seen.insert(cand.clone()) {
                    next.push(cand);
                }
            }
        }
        values.extend(next);
    }
    Ok(values
        .into_iter()
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect())
}

/// Product-formula route for the Koornwinder BA function (normalized so the
/// top coefficient is c(x, dual M)).
pub fn build_ba_koornwinder(p: &KoornwinderParams) -> Result<BaFunction> {
    let lattice = &p.lattice;
    let d_op = koornwinder_operator(p)?;
    let seed = bc_seed_poly(p)?;
    let mut phi = QuasiPoly::from_poly(Var::Z, &seed);
    let msym = bc_orbit_m(p);
    let nus = bc_combinations(p)?;
    for nu in &nus {
        let c = msym.shift_argument(nu)?;
        phi = d_op.apply_quasi(&phi)?.sub(&phi.mul_poly(Var::X, &c));
    }
    // support inside the candidate set rho - combinations
    let rho = p.rho()?;
    let mut candidates: BTreeSet<Exp> = BTreeSet::new();
    candidates.insert(rho.clone());
    for nu in &nus {
        candidates.insert(lattice.sub_exp(&rho, nu));
    }
    for v in phi.support(Var::Z) {
        if !candidates.contains(&v) {
            return Err(Error::PeelingStuck(format!(
                "BC support point {:?} escaped",
                v
            )));
        }
    }
    // lowest-vertex factorization
    let low = lattice.neg_exp(&rho);
    let mut lead = phi.z_coefficient(&low);
    if lead.is_zero() {
        return Err(Error::PeelingStuck("BC lowest coefficient vanished".into()));
    }
    for nu in &nus {
        let factor = msym.sub(&msym.shift_argument(nu)?);
        lead = lead.exact_divide(&factor)?;
    }
    if lead != LaurentPoly::one(lattice) {
        return Err(Error::PeelingStuck("BC leading product mismatch".into()));
    }
    // normalize: top coefficient = c(x, dual M)
    let dual = p.dual();
    let target = bc_c_poly(&dual, false)?;
    let raw_top = phi.z_coefficient(&rho);
    let scale = raw_top
        .exact_divide(&target)
        .map_err(|_| Error::NonPolynomial("BC top-vertex scale".into()))?;
    let mut out = QuasiPoly::zero(lattice);
    for nu in phi.support(Var::Z) {
        let reduced = phi
            .z_coefficient(&nu)
            .exact_divide(&scale)
            .map_err(|_| Error::NonPolynomial(format!("BC coefficient at {:?}", nu)))?;
        for (e, c) in reduced.terms() {
            out.add_term(e.clone(), nu.clone(), c.clone());
        }
    }
    Ok(BaFunction {
        system: SystemData::Koornwinder(p.clone()),
        psi: out,
        normalized: true,
    })
}

/// Candidate seeds for the rank-one shift route: parameter exponents and the
/// gauge function (1 or q^z + q^{-z}).
fn aw_seeds(lattice: &std::sync::Arc<crate::lattice::PairedLattice>) -> Vec<([Rat; 4], Option<LaurentPoly>)> {
    let h = Ratio::new(1, 2);
    let plus = bracket_plus_poly(lattice, &vec![1], ri(0)).unwrap();
    vec![
        ([ri(0), h, ri(0), h], None),
        ([ri(0), h, h, ri(0)], None),
        ([ri(0), h, h, ri(1)], Some(plus.clone())),
        ([ri(0), h, ri(1), h], Some(plus)),
    ]
}

/// Dual multiplicities of a parameter-exponent quadruple.
fn dual_of_exponents(e: &[Rat; 4]) -> [Rat; 4] {
    // multiplicities are the negated exponents
    let (l, lp, m, mp) = (-e[0], -e[1], -e[2], -e[3]);
    let h = Ratio::new(1, 2);
    [
        h + (l + lp + m + mp) / ri(2),
        -h + (l + lp - m - mp) / ri(2),
        -h + (l - lp + m - mp) / ri(2),
        -h + (l - lp - m + mp) / ri(2),
    ]
}

/// Shift-composition route for the rank-one BA function, normalized so the
/// top coefficient is the reciprocal dual weight.
pub fn build_ba_aw_by_shifts(p: &KoornwinderParams) -> Result<BaFunction> {
    if p.n != 1 {
        return Err(Error::InvalidParams("shift route is rank-one".into()));
    }
    let lattice = &p.lattice;
    let target_dual = dual_of_exponents(&p.exponents());
    // pick the seed whose dual-space displacement is a nonnegative integer
    // vector, then raise each dual multiplicity with the matching operator
    let mut chosen: Option<([Rat; 4], Option<LaurentPoly>, [i64; 4])> = None;
    for (seed, gauge) in aw_seeds(lattice) {
        let seed_dual = dual_of_exponents(&seed);
        let counts: Vec<Rat> = (0..4).map(|i| target_dual[i] - seed_dual[i]).collect();
        if counts.iter().all(|c| c.is_integer() && *c >= ri(0)) {
            let c = [
                counts[0].to_integer(),
                counts[1].to_integer(),
                counts[2].to_integer(),
                counts[3].to_integer(),
            ];
            chosen = Some((seed, gauge, c));
            break;
        }
    }
    let Some((seed, gauge, counts)) = chosen else {
        return Err(Error::InvalidParams(
            "no admissible seed for the shift route".into(),
        ));
    };
    // Compose the shifts symbolically; applying the composite at the end
    // keeps every division inside one exact clearing step.
    let mut total = DiffOperator::identity(Var::Z, lattice);
    if let Some(g) = &gauge {
        let mut m = DiffOperator::new(Var::Z, lattice);
        m.add_term(
            lattice.zero_exp(),
            CoeffFrac::one(lattice).div_poly(g)?,
        );
        total = m;
    }
    let mut exps = seed;
    for which in 1..=4usize {
        for _ in 0..counts[which - 1] {
            let s = aw_shift_operator(lattice, which, &exps)?;
            total = s.compose(&total)?;
            exps = aw_shifted_exponents(which, &exps);
        }
    }
    if exps != p.exponents() {
        return Err(Error::InvalidParams(
            "shift bookkeeping did not land on the target parameters".into(),
        ));
    }
    let raw = total.apply_quasi(&QuasiPoly::exponential(lattice))?;
    // normalize: top coefficient (z-exponent N) becomes the reciprocal
    // dual weight
    let cap = p.cap_n();
    assert!(cap.is_integer());
    let nvert = vec![cap.to_integer()];
    let duals = target_dual;
    let target = dual_weight_reciprocal(lattice, &duals, cap.to_integer())?;
    let raw_top = raw.z_coefficient(&nvert);
    if raw_top.is_zero() {
        return Err(Error::PeelingStuck("shift route lost the top vertex".into()));
    }
    // raw = r(x) * normalized; r = raw_top / target
    let scale = raw_top
        .exact_divide(&target)
        .map_err(|_| Error::NonPolynomial("shift-route top vertex".into()))?;
    let mut out = QuasiPoly::zero(lattice);
    for nu in raw.support(Var::Z) {
        let reduced = raw
            .z_coefficient(&nu)
            .exact_divide(&scale)
            .map_err(|_| Error::NonPolynomial(format!("shift route at {:?}", nu)))?;
        for (e, c) in reduced.terms() {
            out.add_term(e.clone(), nu.clone(), c.clone());
        }
    }
    Ok(BaFunction {
        system: SystemData::Koornwinder(p.clone()),
        psi: out,
        normalized: true,
    })
}
