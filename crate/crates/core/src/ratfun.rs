//! Fractions of Laurent polynomials with factored numerator/denominator.
//!
//! Difference-operator coefficients are products of small bracket factors
//! divided by products of small bracket factors. Keeping both sides factored
//! avoids expanding large common denominators; equality is decided by
//! cross-multiplication, and `reduce` cancels factors by trial exact
//! division.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Exp, PairedLattice};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

/// A factor in canonical form: its lex-max term is the constant 1 monomial.
/// The unit extracted during normalization is returned alongside.
fn normalize_factor(f: &LaurentPoly) -> (LaurentPoly, Exp, Scalar) {
    let (e, c) = f
        .leading_term()
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("zero factor");
    let inv = c.inv().expect("nonzero leading coefficient");
    let neg = f.lattice().neg_exp(&e);
    (f.mul_monomial(&neg, &inv), e, c)
}

#[derive(Clone)]
pub struct CoeffFrac {
    lattice: Arc<PairedLattice>,
    /// Scalar prefactor and monomial offset absorbed from normalizations.
    unit_coeff: Scalar,
    unit_exp: Exp,
    /// Canonical factors, numerator and denominator.
    num: Vec<LaurentPoly>,
    den: Vec<LaurentPoly>,
    /// True when the numerator is identically zero.
    zero: bool,
}

impl CoeffFrac {
    pub fn zero(lattice: &Arc<PairedLattice>) -> Self {
        CoeffFrac {
            lattice: lattice.clone(),
            unit_coeff: Scalar::zero(lattice.root_order),
            unit_exp: lattice.zero_exp(),
            num: Vec::new(),
            den: Vec::new(),
            zero: true,
        }
    }

    pub fn one(lattice: &Arc<PairedLattice>) -> Self {
        CoeffFrac {
            lattice: lattice.clone(),
            unit_coeff: Scalar::one(lattice.root_order),
            unit_exp: lattice.zero_exp(),
            num: Vec::new(),
            den: Vec::new(),
            zero: false,
        }
    }

    pub fn from_poly(f: &LaurentPoly) -> Self {
        if f.is_zero() {
            return CoeffFrac::zero(f.lattice());
        }
        let (g, e, c) = normalize_factor(f);
        CoeffFrac {
            lattice: f.lattice().clone(),
            unit_coeff: c,
            unit_exp: e,
            num: if g.num_terms() == 1 { vec![] } else { vec![g] },
            den: Vec::new(),
            zero: false,
        }
    }

    pub fn from_scalar(lattice: &Arc<PairedLattice>, c: &Scalar) -> Self {
        if c.is_zero() {
            return CoeffFrac::zero(lattice);
        }
        CoeffFrac {
            lattice: lattice.clone(),
            unit_coeff: c.clone(),
            unit_exp: lattice.zero_exp(),
            num: Vec::new(),
            den: Vec::new(),
            zero: false,
        }
    }

    /// num / (product of dens); all polynomials nonzero.
    pub fn from_ratio(num: &LaurentPoly, dens: &[LaurentPoly]) -> Result<Self> {
        let mut f = CoeffFrac::from_poly(num);
        for d in dens {
            f = f.div_poly(d)?;
        }
        Ok(f)
    }

    pub fn lattice(&self) -> &Arc<PairedLattice> {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn numerator_factors(&self) -> &[LaurentPoly] {
        &self.num
    }

    /// The absorbed monomial unit (exponent, scalar).
    pub fn unit(&self) -> (Exp, Scalar) {
        (self.unit_exp.clone(), self.unit_coeff.clone())
    }

    /// Apply an exponent map (orthogonal lattice symmetry) to the fraction.
    pub fn map_exponents(&self, map: impl Fn(&Exp) -> Exp + Copy) -> CoeffFrac {
        if self.zero {
            return self.clone();
        }
        let mut out = CoeffFrac::from_scalar(&self.lattice, &self.unit_coeff);
        out = out.mul_poly(&LaurentPoly::monomial(
            &self.lattice,
            map(&self.unit_exp),
            Scalar::one(self.lattice.root_order),
        ));
        for f in &self.num {
            out = out.mul_poly(&f.map_exponents(map));
        }
        for f in &self.den {
            out = out.div_poly(&f.map_exponents(map)).expect("nonzero");
        }
        out
    }

    pub fn denominator_factors(&self) -> &[LaurentPoly] {
        &self.den
    }

    /// Expanded numerator (unit * product of numerator factors).
    pub fn numerator_expanded(&self) -> LaurentPoly {
        if self.zero {
            return LaurentPoly::zero(&self.lattice);
        }
        let mut acc =
            LaurentPoly::monomial(&self.lattice, self.unit_exp.clone(), self.unit_coeff.clone());
        for f in &self.num {
            acc = acc.mul(f);
        }
        acc
    }

    pub fn denominator_expanded(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one(&self.lattice);
        for f in &self.den {
            acc = acc.mul(f);
        }
        acc
    }

    pub fn mul_poly(&self, f: &LaurentPoly) -> CoeffFrac {
        if self.zero || f.is_zero() {
            return CoeffFrac::zero(&self.lattice);
        }
        let (g, e, c) = normalize_factor(f);
        let mut out = self.clone();
        out.unit_coeff = out.unit_coeff.mul(&c);
        out.unit_exp = self.lattice.add_exp(&out.unit_exp, &e);
        if g.num_terms() > 1 {
            // cancel immediately against an identical denominator factor
            if let Some(pos) = out.den.iter().position(|d| *d == g) {
                out.den.remove(pos);
            } else {
                out.num.push(g);
            }
        }
        out
    }

    pub fn div_poly(&self, f: &LaurentPoly) -> Result<CoeffFrac> {
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.zero {
            return Ok(self.clone());
        }
        let (g, e, c) = normalize_factor(f);
        let mut out = self.clone();
        out.unit_coeff = out.unit_coeff.mul(&c.inv()?);
        out.unit_exp = self.lattice.sub_exp(&out.unit_exp, &e);
        if g.num_terms() > 1 {
            if let Some(pos) = out.num.iter().position(|d| *d == g) {
                out.num.remove(pos);
            } else {
                out.den.push(g);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &CoeffFrac) -> CoeffFrac {
        if self.zero || other.zero {
            return CoeffFrac::zero(&self.lattice);
        }
        let mut out = self.clone();
        out.unit_coeff = out.unit_coeff.mul(&other.unit_coeff);
        out.unit_exp = self.lattice.add_exp(&out.unit_exp, &other.unit_exp);
        for f in &other.num {
            if let Some(pos) = out.den.iter().position(|d| d == f) {
                out.den.remove(pos);
            } else {
                out.num.push(f.clone());
            }
        }
        for f in &other.den {
            if let Some(pos) = out.num.iter().position(|d| d == f) {
                out.num.remove(pos);
            } else {
                out.den.push(f.clone());
            }
        }
        out
    }

    pub fn inv(&self) -> Result<CoeffFrac> {
        if self.zero {
            return Err(Error::DivisionByZero);
        }
        Ok(CoeffFrac {
            lattice: self.lattice.clone(),
            unit_coeff: self.unit_coeff.inv()?,
            unit_exp: self.lattice.neg_exp(&self.unit_exp),
            num: self.den.clone(),
            den: self.num.clone(),
            zero: false,
        })
    }

    pub fn div(&self, other: &CoeffFrac) -> Result<CoeffFrac> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn neg(&self) -> CoeffFrac {
        if self.zero {
            return self.clone();
        }
        let mut out = self.clone();
        out.unit_coeff = out.unit_coeff.neg();
        out
    }

    pub fn scale(&self, c: &Scalar) -> CoeffFrac {
        if self.zero || c.is_zero() {
            return CoeffFrac::zero(&self.lattice);
        }
        let mut out = self.clone();
        out.unit_coeff = out.unit_coeff.mul(c);
        out
    }

    /// Shift the argument of the whole fraction by v.
    pub fn shift_argument(&self, v: &Exp) -> Result<CoeffFrac> {
        if self.zero {
            return Ok(self.clone());
        }
        let mut out = CoeffFrac::one(&self.lattice);
        out.unit_coeff = self
            .unit_coeff
            .mul(&self.lattice.q_pair2(&self.unit_exp, v)?);
        out.unit_exp = self.unit_exp.clone();
        for f in &self.num {
            out = out.mul_poly(&f.shift_argument(v)?);
        }
        for f in &self.den {
            out = out.div_poly(&f.shift_argument(v)?)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &CoeffFrac) -> CoeffFrac {
        if self.zero {
            return other.clone();
        }
        if other.zero {
            return self.clone();
        }
        // common denominator: multiset union
        let mut den = self.den.clone();
        let mut cof_self: Vec<LaurentPoly> = Vec::new(); // multiply into other
        let mut remaining = other.den.clone();
        for d in &self.den {
            if let Some(pos) = remaining.iter().position(|x| x == d) {
                remaining.remove(pos);
            }
        }
        den.extend(remaining.iter().cloned());
        // cofactor for self: other.den minus shared = remaining
        cof_self.extend(remaining.iter().cloned());
        // cofactor for other: self.den minus shared
        let mut cof_other: Vec<LaurentPoly> = Vec::new();
        let mut rem2 = self.den.clone();
        for d in &other.den {
            if let Some(pos) = rem2.iter().position(|x| x == d) {
                rem2.remove(pos);
            }
        }
        cof_other.extend(rem2.iter().cloned());

        let mut left = self.numerator_expanded();
        for f in &cof_self {
            left = left.mul(f);
        }
        let mut right = other.numerator_expanded();
        for f in &cof_other {
            right = right.mul(f);
        }
        let num = left.add(&right);
        if num.is_zero() {
            return CoeffFrac::zero(&self.lattice);
        }
        let mut out = CoeffFrac::from_poly(&num);
        out.den = den;
        out.reduce();
        out
    }

    pub fn sub(&self, other: &CoeffFrac) -> CoeffFrac {
        self.add(&other.neg())
    }

    /// Cancel denominator factors dividing the numerator product.
    pub fn reduce(&mut self) {
        if self.zero || self.den.is_empty() {
            return;
        }
        let mut num = self.numerator_expanded();
        let mut kept: Vec<LaurentPoly> = Vec::new();
        for d in std::mem::take(&mut self.den) {
            match num.exact_divide(&d) {
                Ok(q) => num = q,
                Err(_) => kept.push(d),
            }
        }
        self.den = kept;
        let f = CoeffFrac::from_poly(&num);
        self.unit_coeff = f.unit_coeff;
        self.unit_exp = f.unit_exp;
        self.num = f.num;
        self.zero = f.zero;
    }

    /// Exact polynomial value; error if a denominator factor survives.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        if self.zero {
            return Ok(LaurentPoly::zero(&self.lattice));
        }
        let mut num = self.numerator_expanded();
        for d in &self.den {
            num = num.exact_divide(d)?;
        }
        Ok(num)
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &CoeffFrac) -> bool {
        if self.zero || other.zero {
            return self.zero == other.zero;
        }
        let mut left = self.numerator_expanded();
        for d in &other.den {
            left = left.mul(d);
        }
        let mut right = other.numerator_expanded();
        for d in &self.den {
            right = right.mul(d);
        }
        left == right
    }
}

impl fmt::Debug for CoeffFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        write!(
            f,
            "[unit {} X{:?}; {} num factors / {} den factors]",
            self.unit_coeff,
            self.unit_exp,
            self.num.len(),
            self.den.len()
        )
    }
}
