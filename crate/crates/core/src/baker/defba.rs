//! Baker-Akhiezer function for the deformed configuration.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::Ratio;

use crate::deformed::{deformed_operator, deformed_orbitsum};
use crate::error::{Error, Result};
use crate::lattice::Exp;
use crate::laurent::{bracket_poly, LaurentPoly};
use crate::quasi::{QuasiPoly, Var};
use crate::rootdata::DeformedSystem;
use crate::scalar::{Rat, Scalar};

use super::{BaFunction, SystemData};

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Q(z) = q^{2(rho,z)} prod over positive roots and j of
/// [(a, z) + j(a,a)/2] [(a, z) - j(a,a)/2].
pub fn deformed_seed_poly(sys: &DeformedSystem) -> Result<LaurentPoly> {
    let lattice = &sys.lattice;
    let mut acc = LaurentPoly::monomial(lattice, sys.rho(), Scalar::one(lattice.root_order));
    for (alpha, m) in sys.positive_roots.iter().zip(&sys.mults) {
        let half: Exp = alpha.iter().map(|c| c / 2).collect();
        let norm = lattice.pair2(alpha, alpha) / ri(2); // (a, a)
        for j in 1..=*m {
            let c = norm * Ratio::new(j, 2);
            acc = acc.mul(&bracket_poly(lattice, &half, c)?);
            acc = acc.mul(&bracket_poly(lattice, &half, -c)?);
        }
    }
    Ok(acc)
}

/// The per-vertex normalization target prod [(a, j a / 2 - x)] over the
/// signed positive system of the vertex.
pub fn deformed_vertex_target(
    sys: &DeformedSystem,
    chamber: &[(Exp, i64)],
) -> Result<LaurentPoly> {
    let lattice = &sys.lattice;
    let mut acc = LaurentPoly::one(lattice);
    for (alpha, m) in chamber {
        let neg_half: Exp = alpha.iter().map(|c| -c / 2).collect();
        let norm = lattice.pair2(alpha, alpha) / ri(2);
        for j in 1..=*m {
            // [(a, x0) - (a, x)] with (a, x0) = j (a,a) / 2
            acc = acc.mul(&bracket_poly(lattice, &neg_half, norm * Ratio::new(j, 2))?);
        }
    }
    Ok(acc)
}

/// Signed positive systems per vertex: each vertex is half the weighted sum
/// of a consistent sign choice on the roots.
pub fn deformed_chambers(sys: &DeformedSystem) -> Vec<(Exp, Vec<(Exp, i64)>)> {
    let mut out: Vec<(Exp, Vec<(Exp, i64)>)> = Vec::new();
    let mut seen: BTreeSet<Exp> = BTreeSet::new();
    let mut perm: Vec<usize> = (1..=sys.n + 1).collect();
    let mut collect = |sigma: &[usize]| {
        let tf: Vec<Rat> = sigma
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                if i == sys.n {
                    Ratio::new(s as i64, sys.m)
                } else {
                    ri(s as i64)
                }
            })
            .collect();
        let mut chamber = Vec::new();
        let mut acc = vec![Ratio::from_integer(0); sys.n + 1];
        for (r, m) in sys.positive_roots.iter().zip(&sys.mults) {
            let mut p = Ratio::from_integer(0);
            for j in 0..=sys.n {
                let g = if j == sys.n { ri(sys.m) } else { ri(1) };
                p += Ratio::new(r[j], sys.lattice.denom) * g * tf[j];
            }
            let signed: Exp = if p < ri(0) {
                r.iter().map(|c| -c).collect()
            } else {
                r.clone()
            };
            for (j, c) in signed.iter().enumerate() {
                acc[j] += Ratio::new(m * c, 2);
            }
            chamber.push((signed, *m));
        }
        let vertex: Exp = acc
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        if seen.insert(vertex.clone()) {
            out.push((vertex, chamber));
        }
    };
    permute_all(&mut perm, 0, &mut collect);
    out
}

fn permute_all(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_all(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Build and normalize the deformed BA function; asserts the vertex data.
pub fn build_ba_deformed(sys: &Arc<DeformedSystem>) -> Result<BaFunction> {
    let lattice = &sys.lattice;
    let d_op = deformed_operator(sys)?;
    let seed = deformed_seed_poly(sys)?;
    let mut phi = QuasiPoly::from_poly(Var::Z, &seed);
    let msym = deformed_orbitsum(sys, 1)?;
    let nus: Vec<Exp> = sys
        .root_combinations()
        .into_iter()
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect();
    for nu in &nus {
        let c = msym.shift_argument(nu)?;
        phi = d_op.apply_quasi(&phi)?.sub(&phi.mul_poly(Var::X, &c));
    }
    let rho = sys.rho();
    // support constraint: z-exponents in -rho + combinations
    let mut candidates: BTreeSet<Exp> = BTreeSet::new();
    let neg_rho = lattice.neg_exp(&rho);
    candidates.insert(neg_rho.clone());
    for nu in &nus {
        candidates.insert(lattice.add_exp(&neg_rho, nu));
    }
    for v in phi.support(Var::Z) {
        if !candidates.contains(&v) {
            return Err(Error::PeelingStuck(format!(
                "deformed support point {:?} escaped",
                v
            )));
        }
    }
    // lowest vertex factorization: coefficient at -rho
    let mut lead = phi.z_coefficient(&neg_rho);
    if lead.is_zero() {
        return Err(Error::PeelingStuck(
            "deformed lowest coefficient vanished".into(),
        ));
    }
    for nu in &nus {
        let factor = msym.sub(&msym.shift_argument(nu)?);
        lead = lead.exact_divide(&factor)?;
    }
    if lead != LaurentPoly::one(lattice) {
        return Err(Error::PeelingStuck("deformed leading product mismatch".into()));
    }
    // normalize at the top vertex rho
    let chambers = deformed_chambers(sys);
    let top_chamber = chambers
        .iter()
        .find(|(v, _)| *v == rho)
        .expect("rho is a vertex");
    let target = deformed_vertex_target(sys, &top_chamber.1)?;
    let raw_top = phi.z_coefficient(&rho);
    let scale = raw_top
        .exact_divide(&target)
        .map_err(|_| Error::NonPolynomial("deformed top-vertex scale".into()))?;
    let mut out = QuasiPoly::zero(lattice);
    for nu in phi.support(Var::Z) {
        let reduced = phi
            .z_coefficient(&nu)
            .exact_divide(&scale)
            .map_err(|_| Error::NonPolynomial(format!("deformed coefficient at {:?}", nu)))?;
        for (e, c) in reduced.terms() {
            out.add_term(e.clone(), nu.clone(), c.clone());
        }
    }
    let ba = BaFunction {
        system: SystemData::Deformed(sys.clone()),
        psi: out,
        normalized: true,
    };
    // every vertex matches its chamber product
    for (vertex, chamber) in &chambers {
        let expect = deformed_vertex_target(sys, chamber)?;
        if ba.psi.z_coefficient(vertex) != expect {
            return Err(Error::PeelingStuck(format!(
                "deformed vertex coefficient mismatch at {:?}",
                vertex
            )));
        }
    }
    Ok(ba)
}
