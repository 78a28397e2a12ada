//! Sparse Laurent polynomials over a paired lattice.
//!
//! A `LaurentPoly` represents f(x) = sum_v f_v q^{2(v, x)} as a map from
//! exponent vectors to scalars. Multiplication follows the group-ring rule
//! q^{2(u,x)} q^{2(v,x)} = q^{2(u+v,x)}; shifting the argument by w
//! multiplies each term by q^{2(v, w)}.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{same_lattice, Exp, PairedLattice};
use crate::scalar::{Rat, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    lattice: Arc<PairedLattice>,
    terms: BTreeMap<Exp, Scalar>,
}

impl LaurentPoly {
    pub fn zero(lattice: &Arc<PairedLattice>) -> Self {
        LaurentPoly {
            lattice: lattice.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(lattice: &Arc<PairedLattice>) -> Self {
        LaurentPoly::monomial(lattice, lattice.zero_exp(), Scalar::one(lattice.root_order))
    }

    pub fn constant(lattice: &Arc<PairedLattice>, c: Scalar) -> Self {
        LaurentPoly::monomial(lattice, lattice.zero_exp(), c)
    }

    pub fn monomial(lattice: &Arc<PairedLattice>, exp: Exp, coeff: Scalar) -> Self {
        assert_eq!(exp.len(), lattice.dim);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly {
            lattice: lattice.clone(),
            terms,
        }
    }

    pub fn from_terms(lattice: &Arc<PairedLattice>, list: Vec<(Exp, Scalar)>) -> Self {
        let mut p = LaurentPoly::zero(lattice);
        for (e, c) in list {
            p.add_term(e, c);
        }
        p
    }

    pub fn lattice(&self) -> &Arc<PairedLattice> {
        &self.lattice
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> Scalar {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.lattice.root_order))
    }

    /// Coefficient of the zero exponent, i.e. the constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&self.lattice.zero_exp())
    }

    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().cloned().collect()
    }

    pub fn add_term(&mut self, e: Exp, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        same_lattice(&self.lattice, &other.lattice).expect("lattice mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            lattice: self.lattice.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.lattice);
        }
        LaurentPoly {
            lattice: self.lattice.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, s)| (e.clone(), s.mul(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &Exp, coeff: &Scalar) -> LaurentPoly {
        if coeff.is_zero() {
            return LaurentPoly::zero(&self.lattice);
        }
        LaurentPoly {
            lattice: self.lattice.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, s)| (self.lattice.add_exp(e, exp), s.mul(coeff)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        same_lattice(&self.lattice, &other.lattice).expect("lattice mismatch");
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero(&self.lattice);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = LaurentPoly::zero(&self.lattice);
        for (e, c) in &small.terms {
            for (e2, c2) in &big.terms {
                out.add_term(self.lattice.add_exp(e, e2), c.mul(c2));
            }
        }
        out
    }

    /// f(x + v): multiplies the coefficient of q^{2(e,x)} by q^{2(e,v)}.
    pub fn shift_argument(&self, v: &Exp) -> Result<LaurentPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let f = self.lattice.q_pair2(e, v)?;
            terms.insert(e.clone(), c.mul(&f));
        }
        Ok(LaurentPoly {
            lattice: self.lattice.clone(),
            terms,
        })
    }

    /// f(-x): negates every exponent.
    pub fn negate_argument(&self) -> LaurentPoly {
        LaurentPoly {
            lattice: self.lattice.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (self.lattice.neg_exp(e), c.clone()))
                .collect(),
        }
    }

    /// Apply an orthogonal lattice map (e.g. a Weyl group element) to every
    /// exponent. `map` takes scaled coordinates to scaled coordinates.
    pub fn map_exponents(&self, map: impl Fn(&Exp) -> Exp) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.lattice);
        for (e, c) in &self.terms {
            out.add_term(map(e), c.clone());
        }
        out
    }

    /// Sum of coeff * q^{2(e, point)} over all terms.
    pub fn evaluate(&self, point: &Exp) -> Result<Scalar> {
        let mut acc = Scalar::zero(self.lattice.root_order);
        for (e, c) in &self.terms {
            acc = acc.add(&c.mul(&self.lattice.q_pair2(e, point)?));
        }
        Ok(acc)
    }

    /// Canonical representative modulo the relation X^beta = eps.
    ///
    /// Every exponent e is written e = ebar + j*beta where j floors the
    /// beta-coordinate (taken along the first nonzero coordinate of beta)
    /// into [0, 1); the coefficient picks up eps^j. The result is zero
    /// exactly when f lies in the ideal generated by X^beta - eps.
    pub fn reduce_mod_binomial(&self, beta: &Exp, eps: &Scalar) -> Result<LaurentPoly> {
        if beta.iter().all(|&c| c == 0) {
            return Err(Error::InvalidParams("beta must be nonzero".into()));
        }
        if eps.is_zero() {
            return Err(Error::InvalidParams("eps must be invertible".into()));
        }
        let pivot = beta.iter().position(|&c| c != 0).unwrap();
        let b = beta[pivot];
        let mut out = LaurentPoly::zero(&self.lattice);
        for (e, c) in &self.terms {
            // Unique representative per coset: e - j*beta with e[pivot] - j*b
            // = e[pivot] rem_euclid b, stable under e -> e + k*beta.
            let j = e[pivot].div_euclid(b);
            let rep = self.lattice.sub_exp(e, &self.lattice.scale_exp(beta, j));
            out.add_term(rep, c.mul(&eps.pow(j)?));
        }
        Ok(out)
    }

    fn lex_max_exp(&self) -> Option<&Exp> {
        self.terms.keys().next_back()
    }

    /// Leading (lex-max exponent) term.
    pub fn leading_term(&self) -> Option<(&Exp, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Componentwise bounding box of the support.
    fn support_box(&self) -> Option<(Exp, Exp)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for e in it {
            for i in 0..e.len() {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        Some((lo, hi))
    }

    /// Exact division: returns h with self = other * h, or an inexact-division
    /// error carrying the nonzero remainder.
    ///
    /// Term-ordered reduction by the lex-leading term of the divisor. In the
    /// Laurent ring every step succeeds, so termination is enforced by the
    /// Newton-polytope bound: in an exact division the leading exponent of
    /// the running remainder always stays inside the dividend's bounding box.
    pub fn exact_divide(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        same_lattice(&self.lattice, &other.lattice).expect("lattice mismatch");
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(&self.lattice));
        }
        let (box_lo, box_hi) = self.support_box().unwrap();
        let (ge, gc) = other.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let gc_inv = gc.inv()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(&self.lattice);
        while let Some(le) = rem.lex_max_exp().cloned() {
            let inside = (0..le.len()).all(|i| box_lo[i] <= le[i] && le[i] <= box_hi[i]);
            if !inside {
                return Err(Error::InexactDivision {
                    remainder: format!("{}", rem),
                });
            }
            let lc = rem.terms.get(&le).unwrap().clone();
            let qe = self.lattice.sub_exp(&le, &ge);
            let qc = lc.mul(&gc_inv);
            quot.add_term(qe.clone(), qc.clone());
            // rem -= (qc X^qe) * other
            for (e, c) in &other.terms {
                rem.add_term(self.lattice.add_exp(&qe, e), qc.mul(c).neg());
            }
        }
        Ok(quot)
    }

    /// Divide by a scalar-in-x free factor given as a scalar.
    pub fn div_scalar(&self, c: &Scalar) -> Result<LaurentPoly> {
        Ok(self.scale(&c.inv()?))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coords: Vec<String> = self
                .lattice
                .exp_to_ratios(e)
                .iter()
                .map(|r| r.to_string())
                .collect();
            write!(f, "({})*X[{}]", c, coords.join(","))?;
        }
        Ok(())
    }
}

/// Convenience: build the bracket [c + (alpha, x)] = q^{c+(alpha,x)} - q^{-c-(alpha,x)}
/// as a two-term Laurent polynomial with exponents +-alpha/2.
///
/// `alpha_half` must already be the scaled coordinates of alpha/2.
pub fn bracket_poly(
    lattice: &Arc<PairedLattice>,
    alpha_half: &Exp,
    c: Rat,
) -> Result<LaurentPoly> {
    let e = lattice.root_order;
    let plus = Scalar::q_power(c, e)?;
    let minus = Scalar::q_power(-c, e)?.neg();
    Ok(LaurentPoly::from_terms(
        lattice,
        vec![
            (alpha_half.clone(), plus),
            (lattice.neg_exp(alpha_half), minus),
        ],
    ))
}
