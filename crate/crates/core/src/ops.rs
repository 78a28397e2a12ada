//! Difference operators: construction, exact application, composition.
//!
//! An operator is a finite sum of terms a_t(y) T^t acting in one variable;
//! coefficients are factored fractions of Laurent polynomials. Application
//! clears all denominators through exact division, which succeeds exactly on
//! the quasi-invariant rings the operators preserve.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Exp, PairedLattice};
use crate::laurent::{bracket_poly, LaurentPoly};
use crate::quasi::{QuasiPoly, Var};
use crate::ratfun::CoeffFrac;
use crate::rootdata::{RootSystem, WeylElement};
use crate::scalar::{Rat, Scalar};

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

#[derive(Clone, Debug)]
pub struct DiffOperator {
    pub var: Var,
    pub lattice: Arc<PairedLattice>,
    pub terms: BTreeMap<Exp, CoeffFrac>,
}

fn multiset_union(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut out = a.to_vec();
    let mut pool = a.to_vec();
    for f in b {
        if let Some(pos) = pool.iter().position(|x| x == f) {
            pool.remove(pos);
        } else {
            out.push(f.clone());
        }
    }
    out
}

fn multiset_diff(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut out = a.to_vec();
    for f in b {
        if let Some(pos) = out.iter().position(|x| x == f) {
            out.remove(pos);
        }
    }
    out
}

impl DiffOperator {
    pub fn new(var: Var, lattice: &Arc<PairedLattice>) -> Self {
        DiffOperator {
            var,
            lattice: lattice.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(var: Var, lattice: &Arc<PairedLattice>) -> Self {
        let mut op = DiffOperator::new(var, lattice);
        op.add_term(lattice.zero_exp(), CoeffFrac::one(lattice));
        op
    }

    pub fn add_term(&mut self, shift: Exp, coeff: CoeffFrac) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(shift) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&coeff);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> DiffOperator {
        let mut out = DiffOperator::new(self.var, &self.lattice);
        for (t, a) in &self.terms {
            out.add_term(t.clone(), a.scale(c));
        }
        out
    }

    pub fn add(&self, other: &DiffOperator) -> DiffOperator {
        assert_eq!(self.var, other.var);
        let mut out = self.clone();
        for (t, a) in &other.terms {
            out.add_term(t.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (t, a) in &other.terms {
            out.add_term(t.clone(), a.neg());
        }
        out
    }

    /// Exact application to a polynomial in the operator's variable.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        let common = self
            .terms
            .values()
            .fold(Vec::new(), |acc, c| multiset_union(&acc, c.denominator_factors()));
        let mut acc = LaurentPoly::zero(&self.lattice);
        for (shift, coeff) in &self.terms {
            let mut g = f.shift_argument(shift)?;
            let (ue, uc) = coeff.unit();
            g = g.mul_monomial(&ue, &uc);
            for nf in coeff.numerator_factors() {
                g = g.mul(nf);
            }
            for cf in multiset_diff(&common, coeff.denominator_factors()) {
                g = g.mul(&cf);
            }
            acc = acc.add(&g);
        }
        for d in &common {
            acc = acc.exact_divide(d)?;
        }
        Ok(acc)
    }

    /// Exact application to a quasipolynomial; the shift in one variable
    /// multiplies in the cross factor on the other side.
    pub fn apply_quasi(&self, psi: &QuasiPoly) -> Result<QuasiPoly> {
        let common = self
            .terms
            .values()
            .fold(Vec::new(), |acc, c| multiset_union(&acc, c.denominator_factors()));
        let mut acc = QuasiPoly::zero(&self.lattice);
        for (shift, coeff) in &self.terms {
            let mut g = psi.shift_var(self.var, shift)?;
            let (ue, uc) = coeff.unit();
            g = g.mul_poly(self.var, &LaurentPoly::monomial(&self.lattice, ue, uc));
            for nf in coeff.numerator_factors() {
                g = g.mul_poly(self.var, nf);
            }
            for cf in multiset_diff(&common, coeff.denominator_factors()) {
                g = g.mul_poly(self.var, &cf);
            }
            acc = acc.add(&g);
        }
        if common.is_empty() {
            return Ok(acc);
        }
        // Divide on the joint lattice.
        let joint = self.lattice.product_with(&self.lattice);
        let mut j = acc.to_joint(&joint);
        for d in &common {
            let embedded = embed_side(&joint, self.var, d, self.lattice.dim);
            j = j.exact_divide(&embedded)?;
        }
        Ok(QuasiPoly::from_joint(&self.lattice, &j))
    }

    /// Operator composition: self after other (both in the same variable).
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator> {
        assert_eq!(self.var, other.var);
        let mut out = DiffOperator::new(self.var, &self.lattice);
        for (t1, a1) in &self.terms {
            for (t2, a2) in &other.terms {
                let shifted = a2.shift_argument(t1)?;
                out.add_term(self.lattice.add_exp(t1, t2), a1.mul(&shifted));
            }
        }
        Ok(out)
    }

    /// g^{-1} . D . g for a nonzero function g of the operator's variable.
    pub fn conjugate_by(&self, g: &CoeffFrac) -> Result<DiffOperator> {
        let ginv = g.inv()?;
        let mut out = DiffOperator::new(self.var, &self.lattice);
        for (t, a) in &self.terms {
            let moved = g.shift_argument(t)?;
            out.add_term(t.clone(), a.mul(&moved).mul(&ginv));
        }
        Ok(out)
    }

    /// Exact coefficient-wise equality (cross-multiplied).
    pub fn equals(&self, other: &DiffOperator) -> bool {
        if self.var != other.var {
            return false;
        }
        let shifts: std::collections::BTreeSet<&Exp> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for s in shifts {
            let zero = CoeffFrac::zero(&self.lattice);
            let a = self.terms.get(s).unwrap_or(&zero);
            let b = other.terms.get(s).unwrap_or(&zero);
            if !a.equals(b) {
                return false;
            }
        }
        true
    }

    /// Check a_{w t}(y) = a_t(w^{-1} y) on the generating reflections.
    pub fn is_w_invariant(&self, sys: &RootSystem) -> bool {
        let gens: Vec<&WeylElement> = sys
            .weyl
            .iter()
            .filter(|w| w.det == -1)
            .collect();
        for w in gens {
            for (t, a) in &self.terms {
                let wt = w.apply(t);
                let zero = CoeffFrac::zero(&self.lattice);
                let b = self.terms.get(&wt).unwrap_or(&zero);
                // a_{wt}(y) = a_t(w^{-1} y): map exponents of a_t by w
                // (w is an involution here, but use w^{-1} = transpose route:
                // exponent map e -> w(e) realizes f(w^{-1} y)).
                let mapped = a.map_exponents(|e| w.apply(e));
                if !b.equals(&mapped) {
                    return false;
                }
            }
        }
        true
    }
}

fn embed_side(
    joint: &Arc<PairedLattice>,
    var: Var,
    f: &LaurentPoly,
    dim: usize,
) -> LaurentPoly {
    let mut out = LaurentPoly::zero(joint);
    for (e, c) in f.terms() {
        let mut full = vec![0i64; 2 * dim];
        match var {
            Var::X => full[..dim].copy_from_slice(e),
            Var::Z => full[dim..].copy_from_slice(e),
        }
        out.add_term(full, c.clone());
    }
    out
}

/// Which side the Macdonald operator acts on and with which data.
///
/// The x-side operator uses roots and rational exponents k per orbit; the
/// z-side operator is the dual-system operator with brackets in coroots and
/// integer multiplicities, following the sign conventions of the source
/// formulas for each side.
pub fn macdonald_operator_x(
    sys: &RootSystem,
    pi: &Exp,
    k_exps: &[Rat],
) -> Result<DiffOperator> {
    let dom = sys.dominant_rep(pi);
    let ok = sys
        .minuscule_coweights()
        .iter()
        .any(|c| *c == dom)
        || dom == sys.quasiminuscule_coweight();
    if !ok {
        return Err(Error::NotMinuscule(format!("{:?}", pi)));
    }
    let lattice = &sys.lattice;
    let e = lattice.root_order;
    let orbit = sys.weyl_orbit(pi);
    let mut op = DiffOperator::new(Var::X, lattice);
    let mut const_sum = Scalar::zero(e);
    for tau in &orbit {
        let mut coeff = CoeffFrac::one(lattice);
        for alpha in &sys.roots {
            let idx = sys.root_index(alpha).unwrap();
            let k = k_exps[sys.root_orbit[idx]];
            let p = sys.pair(alpha, tau);
            if p > ri(0) {
                let half = sys.half(alpha);
                coeff = coeff.mul_poly(&bracket_poly(lattice, &half, k)?);
                coeff = coeff.div_poly(&bracket_poly(lattice, &half, ri(0))?)?;
            }
            if p == ri(2) {
                let half = sys.half(alpha);
                coeff = coeff.mul_poly(&bracket_poly(lattice, &half, k + ri(1))?);
                coeff = coeff.div_poly(&bracket_poly(lattice, &half, ri(1))?)?;
            }
        }
        // constant contribution q^{-2(rho_k, tau)}
        const_sum = const_sum.add(&Scalar::q_power(-sys.rho_pair2(tau, k_exps), e)?);
        op.add_term(tau.clone(), coeff);
    }
    // Fold sum a_tau (T^tau - 1) + sum q^{-2(rho,tau)} into plain terms.
    let mut c0 = CoeffFrac::from_scalar(lattice, &const_sum);
    for tau in &orbit {
        c0 = c0.sub(&op.terms[tau]);
    }
    op.add_term(lattice.zero_exp(), c0);
    Ok(op)
}

/// The z-side operator for integer multiplicities m: shifts along the orbit
/// of a (quasi)minuscule weight, brackets in the coroots.
pub fn macdonald_operator_z(sys: &RootSystem, omega: &Exp) -> Result<DiffOperator> {
    let dom = sys.dominant_rep(omega);
    let ok = sys.minuscule_weights().iter().any(|c| *c == dom)
        || dom == sys.quasiminuscule_weight();
    if !ok {
        return Err(Error::NotMinuscule(format!("{:?}", omega)));
    }
    let lattice = &sys.lattice;
    let e = lattice.root_order;
    let orbit = sys.weyl_orbit(omega);
    let rho_check = sys.rho_check(&sys.mults);
    let mut op = DiffOperator::new(Var::Z, lattice);
    let mut const_sum = Scalar::zero(e);
    for tau in &orbit {
        let mut coeff = CoeffFrac::one(lattice);
        for alpha in &sys.roots {
            let idx = sys.root_index(alpha).unwrap();
            let m = sys.mults[sys.root_orbit[idx]];
            let coroot = sys.coroot(alpha);
            let half = sys.half(&coroot);
            if sys.pair(alpha, tau) > ri(0) {
                coeff = coeff.mul_poly(&bracket_poly(lattice, &half, -m)?);
                coeff = coeff.div_poly(&bracket_poly(lattice, &half, ri(0))?)?;
            }
            if sys.pair(&coroot, tau) == ri(2) {
                coeff = coeff.mul_poly(&bracket_poly(lattice, &half, -m + ri(1))?);
                coeff = coeff.div_poly(&bracket_poly(lattice, &half, ri(1))?)?;
            }
        }
        const_sum = const_sum.add(&Scalar::q_power(-lattice.pair2(&rho_check, tau), e)?);
        op.add_term(tau.clone(), coeff);
    }
    let mut c0 = CoeffFrac::from_scalar(lattice, &const_sum);
    for tau in &orbit {
        c0 = c0.sub(&op.terms[tau]);
    }
    op.add_term(lattice.zero_exp(), c0);
    Ok(op)
}

/// Row form of the A-type operator on the n-coordinate lattice: sum over
/// s-element subsets I of products over i in I, j not in I of
/// [k + x_i - x_j]/[x_i - x_j], shifting by e_I.
pub fn row_operator(sys: &RootSystem, s: usize, k: Rat) -> Result<DiffOperator> {
    let lattice = &sys.lattice;
    let n = lattice.dim;
    let d = lattice.denom;
    let mut op = DiffOperator::new(Var::X, lattice);
    let subsets = (0..(1u32 << n)).filter(|b| b.count_ones() as usize == s);
    for bits in subsets {
        let members: Vec<usize> = (0..n).filter(|i| bits & (1 << i) != 0).collect();
        let mut coeff = CoeffFrac::one(lattice);
        assert!(d % 2 == 0, "row lattice must admit half-steps");
        for &i in &members {
            for j in 0..n {
                if bits & (1 << j) != 0 {
                    continue;
                }
                // bracket in (e_i - e_j)/2
                let mut h = vec![0i64; n];
                h[i] = d / 2;
                h[j] = -(d / 2);
                coeff = coeff.mul_poly(&bracket_poly(lattice, &h, k)?);
                coeff = coeff.div_poly(&bracket_poly(lattice, &h, ri(0))?)?;
            }
        }
        let mut shift = vec![0i64; n];
        for &i in &members {
            shift[i] = d;
        }
        op.add_term(shift, coeff);
    }
    Ok(op)
}

/// The gauge factor: product over positive roots and j in [-m_a, m_a] of
/// the bracket [(a, x) + j].
pub fn gauge_delta(sys: &RootSystem, mults: &[i64]) -> Result<LaurentPoly> {
    let lattice = &sys.lattice;
    let mut acc = LaurentPoly::one(lattice);
    for alpha in &sys.positive_roots {
        let idx = sys.root_index(alpha).unwrap();
        let m = mults[sys.root_orbit[idx]];
        let half = sys.half(alpha);
        for j in -m..=m {
            acc = acc.mul(&bracket_poly(lattice, &half, ri(j))?);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct GaugeReport {
    pub parity_ok: bool,
    pub conjugation_ok: bool,
}

/// Conjugating the multiplicity-m operator by the gauge factor yields the
/// operator at exponent m+1 (t = q^{m+1}): delta^{-1} . D_{-m} . delta.
pub fn gauge_conjugate_check(sys: &RootSystem, m: i64) -> Result<GaugeReport> {
    let mults = vec![m; sys.num_orbits];
    let delta = gauge_delta(sys, &mults)?;
    // parity: delta(-x) = (-1)^{|R_+| (2m+1)} delta(x)
    let total_factors = (sys.positive_roots.len() as i64) * (2 * m + 1);
    let sign = if total_factors % 2 == 0 { 1 } else { -1 };
    let parity_ok = delta.negate_argument()
        == delta.scale(&Scalar::from_int(sign, sys.root_order()));

    let pi = sys
        .minuscule_coweights()
        .first()
        .cloned()
        .unwrap_or_else(|| sys.quasiminuscule_coweight());
    let k_minus: Vec<Rat> = vec![ri(-m); sys.num_orbits];
    let k_plus: Vec<Rat> = vec![ri(m + 1); sys.num_orbits];
    let d_m = macdonald_operator_x(sys, &pi, &k_minus)?;
    let d_conj = d_m.conjugate_by(&CoeffFrac::from_poly(&delta))?;
    let d_plus = macdonald_operator_x(sys, &pi, &k_plus)?;
    Ok(GaugeReport {
        parity_ok,
        conjugation_ok: d_conj.equals(&d_plus),
    })
}
