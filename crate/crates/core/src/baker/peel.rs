//! Greedy peeling: factoring quasipolynomials through a BA function.
//!
//! Any quasipolynomial satisfying the z-side conditions is a difference
//! operator in x applied to psi. The peeling repeatedly removes the highest
//! remaining z-vertex by subtracting d(x) T^t_x psi for the translate t that
//! places psi's top vertex there; coefficients live in the fraction field
//! of the x-variable.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::Exp;
use crate::laurent::LaurentPoly;
use crate::ops::{macdonald_operator_x, DiffOperator};
use crate::quasi::{QuasiPoly, Var};
use crate::ratfun::CoeffFrac;
use crate::rootdata::RootSystem;
use crate::scalar::Rat;

use super::{c_poly, normalize_ba, top_vertex, BaFunction, SystemData};

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// phi as a map z-exponent -> x-coefficient fraction.
type FracQuasi = BTreeMap<Exp, CoeffFrac>;

fn to_frac_quasi(phi: &QuasiPoly) -> FracQuasi {
    let mut out = FracQuasi::new();
    for nu in phi.support(Var::Z) {
        let c = phi.z_coefficient(&nu);
        out.insert(nu, CoeffFrac::from_poly(&c));
    }
    out
}

/// Subtract d(x) * T^t_x psi from phi in place.
fn subtract_translate(
    phi: &mut FracQuasi,
    psi: &QuasiPoly,
    lattice: &Arc<crate::lattice::PairedLattice>,
    d: &CoeffFrac,
    t: &Exp,
) -> Result<()> {
    for mu in psi.support(Var::Z) {
        let g = psi.z_coefficient(&mu); // x-polynomial
        let shifted = g.shift_argument(t)?; // g(x + t)
        let contrib = d.mul_poly(&shifted).neg();
        let target = lattice.add_exp(&mu, t);
        match phi.entry(target) {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !contrib.is_zero() {
                    v.insert(contrib);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&contrib);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
    Ok(())
}

/// Express phi (which must satisfy the z-side conditions) as an operator in
/// x applied to psi. `psi_top` is the top vertex of psi's z-support under
/// the fixed height order.
pub fn peel_against(
    sys: &RootSystem,
    phi0: &QuasiPoly,
    psi: &QuasiPoly,
    psi_top: &Exp,
) -> Result<DiffOperator> {
    let lattice = &sys.lattice;
    let mut phi = to_frac_quasi(phi0);
    let psi_top_coeff = psi.z_coefficient(psi_top);
    let mut op = DiffOperator::new(Var::X, lattice);
    let mut guard = phi.len() * 4 + 16;
    while !phi.is_empty() {
        if guard == 0 {
            return Err(Error::PeelingStuck("iteration guard exhausted".into()));
        }
        guard -= 1;
        let keys: Vec<Exp> = phi.keys().cloned().collect();
        let nu = top_vertex(sys, &keys);
        let t = lattice.sub_exp(&nu, psi_top);
        let denom = CoeffFrac::from_poly(&psi_top_coeff.shift_argument(&t)?);
        let d = phi[&nu].div(&denom)?;
        subtract_translate(&mut phi, psi, lattice, &d, &t)?;
        if phi.contains_key(&nu) {
            return Err(Error::PeelingStuck(format!("vertex {:?} survived", nu)));
        }
        op.add_term(t, d);
    }
    Ok(op)
}

/// The operator D_f with D_f psi = f(z) psi for a ring element f.
pub fn build_df(f: &LaurentPoly, ba: &BaFunction) -> Result<DiffOperator> {
    let SystemData::Reduced(sys) = &ba.system else {
        return Err(Error::InvalidParams("reduced system required".into()));
    };
    let phi = ba.psi.mul_poly(Var::Z, f);
    let keys = ba.psi.support(Var::Z);
    let psi_top = top_vertex(sys, &keys);
    let op = peel_against(sys, &phi, &ba.psi, &psi_top)?;
    // soundness: D_f psi = f psi exactly
    let lhs = op.apply_quasi(&ba.psi)?;
    if lhs != phi {
        return Err(Error::PeelingStuck("peeled operator failed to reproduce".into()));
    }
    Ok(op)
}

/// Recover the spectral symbol f(z) with L psi = f(z) psi, if it exists.
pub fn recover_symbol(l_op: &DiffOperator, ba: &BaFunction) -> Result<LaurentPoly> {
    let lattice = ba.psi.lattice();
    let dim = lattice.dim;
    // numerator of L psi over the common denominator D(x)
    let common: Vec<LaurentPoly> = l_op.terms.values().fold(Vec::new(), |acc, c| {
        let mut out = acc.clone();
        let mut pool = acc;
        for f in c.denominator_factors() {
            if let Some(pos) = pool.iter().position(|x| x == f) {
                pool.remove(pos);
            } else {
                out.push(f.clone());
            }
        }
        out
    });
    let mut num = QuasiPoly::zero(lattice);
    for (shift, coeff) in &l_op.terms {
        let mut g = ba.psi.shift_var(Var::X, shift)?;
        let (ue, uc) = coeff.unit();
        g = g.mul_poly(Var::X, &LaurentPoly::monomial(lattice, ue, uc));
        for nf in coeff.numerator_factors() {
            g = g.mul_poly(Var::X, nf);
        }
        let mut cof = common.clone();
        for f in coeff.denominator_factors() {
            if let Some(pos) = cof.iter().position(|x| x == f) {
                cof.remove(pos);
            }
        }
        for f in cof {
            g = g.mul_poly(Var::X, &f);
        }
        num = num.add(&g);
    }
    // f(z) = num / (D(x) * psi) on the joint lattice; the quotient must be
    // purely z-dependent.
    let joint = lattice.product_with(lattice);
    let mut den = ba.psi.to_joint(&joint);
    for d in &common {
        let mut emb = LaurentPoly::zero(&joint);
        for (e, c) in d.terms() {
            let mut full = vec![0i64; 2 * dim];
            full[..dim].copy_from_slice(e);
            emb.add_term(full, c.clone());
        }
        den = den.mul(&emb);
    }
    let quot = num.to_joint(&joint).exact_divide(&den)?;
    let mut f = LaurentPoly::zero(lattice);
    for (e, c) in quot.terms() {
        if e[..dim].iter().any(|&v| v != 0) {
            return Err(Error::NotCommuting);
        }
        f.add_term(e[dim..].to_vec(), c.clone());
    }
    Ok(f)
}

/// Classify an operator commuting with the Macdonald operator: recover its
/// spectral symbol and certify ring membership.
pub fn verify_maximal_commutant(
    sys: &RootSystem,
    ba: &BaFunction,
    l_op: &DiffOperator,
) -> Result<LaurentPoly> {
    let k_exps: Vec<Rat> = sys.mults.iter().map(|m| -*m).collect();
    let pi = sys
        .minuscule_coweights()
        .first()
        .cloned()
        .unwrap_or_else(|| sys.quasiminuscule_coweight());
    let d = macdonald_operator_x(sys, &pi, &k_exps)?;
    let ld = l_op.compose(&d)?;
    let dl = d.compose(l_op)?;
    if !ld.equals(&dl) {
        return Err(Error::NotCommuting);
    }
    let f = recover_symbol(l_op, ba)?;
    let cert = crate::rings::ring_membership(&f, &crate::rings::RingFlavor::ReducedZ(sys))?;
    if !cert.pass {
        return Err(Error::NotCommuting);
    }
    Ok(f)
}

/// Shift operators: S+ with psi_m = S+ psi_{m-1}, and S- with
/// S- psi_m = c_m(z) c_m(-z) psi_{m-1}.
pub fn shift_operators(sys: &Arc<RootSystem>) -> Result<(DiffOperator, DiffOperator)> {
    use crate::rootdata::{build_root_system, MultSpec};
    let mults = sys.int_mults()?;
    if mults.iter().any(|&m| m < 1) {
        return Err(Error::InvalidParams("need every multiplicity >= 1".into()));
    }
    let lower_spec = if sys.num_orbits == 1 {
        MultSpec::Uniform(ri(mults[0] - 1))
    } else {
        let labels = crate::rootdata::orbit_labels(sys);
        let s = labels["short"].to_integer() - 1;
        let l = labels["long"].to_integer() - 1;
        MultSpec::ShortLong(ri(s), ri(l))
    };
    let lower = Arc::new(build_root_system(sys.family, sys.rank, &lower_spec)?);
    let psi_m = normalize_ba(&super::build_ba(sys)?)?;
    let psi_low = normalize_ba(&super::build_ba(&lower)?)?;
    let low_keys = psi_low.psi.support(Var::Z);
    let low_top = top_vertex(sys, &low_keys);
    let s_plus = peel_against(sys, &psi_m.psi, &psi_low.psi, &low_top)?;

    let c = c_poly(sys)?;
    let cc = c.mul(&c.negate_argument());
    let target = psi_low.psi.mul_poly(Var::Z, &cc);
    let m_keys = psi_m.psi.support(Var::Z);
    let m_top = top_vertex(sys, &m_keys);
    let s_minus = peel_against(sys, &target, &psi_m.psi, &m_top)?;
    Ok((s_plus, s_minus))
}
