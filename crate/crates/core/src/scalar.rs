//! Exact coefficient field: rational functions of a formal root `s` of `q`.
//!
//! All coefficients live in Q(s) with q = s^E for a fixed positive even
//! integer E (the *root order*). A fractional power q^a is then the monomial
//! s^{aE} whenever aE is an integer, so identities between q-power
//! expressions hold exactly or fail exactly; nothing is ever rounded.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;

/// Sparse univariate polynomial in `s` with integer coefficients.
///
/// Terms are sorted by ascending exponent and never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    terms: Vec<(u32, BigInt)>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: BigInt, exp: u32) -> Self {
        if coeff.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly {
                terms: vec![(exp, coeff)],
            }
        }
    }

    pub fn from_coeffs(coeffs: &[BigInt]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c.clone()))
            .collect();
        IntPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn degree(&self) -> u32 {
        self.terms.last().map(|t| t.0).unwrap_or(0)
    }

    /// Exponent of the lowest nonzero term (0 for the zero polynomial).
    pub fn valuation(&self) -> u32 {
        self.terms.first().map(|t| t.0).unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.last().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn terms(&self) -> &[(u32, BigInt)] {
        &self.terms
    }

    /// Dense coefficient list, low to high degree.
    pub fn dense_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); self.degree() as usize + 1];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        out
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        IntPoly { terms: out }
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return other.mul_term(c, *e);
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            return self.mul_term(c, *e);
        }
        // dense accumulation only for compact degree ranges
        let lo = self.valuation() + other.valuation();
        let hi = self.degree() + other.degree();
        if (hi - lo) <= 1024 {
            let mut dense = vec![BigInt::zero(); (hi - lo) as usize + 1];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    dense[(*ea + *eb - lo) as usize] += ca * cb;
                }
            }
            let terms = dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u32 + lo, c))
                .collect();
            return IntPoly { terms };
        }
        let mut acc: std::collections::BTreeMap<u32, BigInt> = std::collections::BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let entry = acc.entry(ea + eb).or_default();
                *entry += ca * cb;
            }
        }
        IntPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_term(&self, coeff: &BigInt, exp: u32) -> IntPoly {
        if coeff.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e + exp, c * coeff))
                .collect(),
        }
    }

    /// Divide every exponent's power of `s`: self / s^k. Requires valuation >= k.
    pub fn shift_down(&self, k: u32) -> IntPoly {
        assert!(self.is_zero() || self.valuation() >= k);
        IntPoly {
            terms: self.terms.iter().map(|(e, c)| (*e - k, c.clone())).collect(),
        }
    }

    /// Gcd of all integer coefficients (positive; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_content(&self, g: &BigInt) -> IntPoly {
        if g.is_one() {
            return self.clone();
        }
        IntPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c / g)).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        self.div_content(&g)
    }

    /// Pseudo-remainder of self by other (other nonzero, deg self >= deg other).
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let d = other.degree();
        let lc = other.leading_coeff();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d {
            let (re, rc) = r.terms.last().unwrap().clone();
            // r := lc * r - rc * s^(re-d) * other  (kills the top term)
            r = r.mul_term(&lc, 0).sub(&other.mul_term(&rc, re - d));
        }
        r
    }

    /// Polynomial gcd over Q, returned primitive with positive leading
    /// coefficient (monomial content in `s` included).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let v = self.valuation().min(other.valuation());
        if self.is_monomial() || other.is_monomial() {
            return IntPoly::monomial(BigInt::one(), v);
        }
        let mut a = self.shift_down(self.valuation()).primitive();
        let mut b = other.shift_down(other.valuation()).primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().mul_term(&BigInt::one(), v)
    }

    /// Exact division; error with the nonzero remainder if not divisible.
    pub fn exact_div(&self, other: &IntPoly) -> Result<IntPoly> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            if self.valuation() < *e {
                return Err(Error::InexactDivision {
                    remainder: format!("{}", self),
                });
            }
            if c.is_one() {
                return Ok(self.shift_down(*e));
            }
            if (-c).is_one() {
                return Ok(self.shift_down(*e).neg());
            }
            let mut out = Vec::with_capacity(self.terms.len());
            for (se, sc) in &self.terms {
                let (q, r) = sc.div_rem(c);
                if !r.is_zero() {
                    return Err(Error::InexactDivision {
                        remainder: format!("{}", self),
                    });
                }
                out.push((*se - *e, q));
            }
            return Ok(IntPoly { terms: out });
        }
        let d = other.degree();
        let lc = other.leading_coeff();
        let mut r = self.clone();
        let mut q = IntPoly::zero();
        while !r.is_zero() && r.degree() >= d {
            let (re, rc) = r.terms.last().unwrap().clone();
            let (qc, rem) = rc.div_rem(&lc);
            if rem.is_zero() {
                let t = IntPoly::monomial(qc, re - d);
                r = r.sub(&t.mul(other));
                q = q.add(&t);
            } else {
                // Remaining quotient has rational coefficients; scale via gcd-free
                // route is not needed here, the callers only divide exactly.
                return Err(Error::InexactDivision {
                    remainder: format!("{}", r),
                });
            }
        }
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision {
                remainder: format!("{}", r),
            })
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{}", a)?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{}*s", a)?,
                (_, true) => write!(f, "s^{}", e)?,
                (_, false) => write!(f, "{}*s^{}", a, e)?,
            }
        }
        Ok(())
    }
}

/// Element of the coefficient field Q(s), kept in canonical form:
/// numerator and denominator are coprime integer polynomials with coprime
/// contents, the denominator has positive leading coefficient, and zero is
/// always 0/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: IntPoly,
    den: IntPoly,
    root_order: u32,
}

impl Scalar {
    /// Reduce a raw fraction to the unique canonical representative. The
    /// dominant case in practice is a monomial denominator (powers of s from
    /// negative q-exponents); it reduces by exponent shifts alone.
    pub fn canonicalize(raw_num: IntPoly, raw_den: IntPoly, root_order: u32) -> Result<Scalar> {
        if raw_den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if raw_num.is_zero() {
            return Ok(Scalar {
                num: IntPoly::zero(),
                den: IntPoly::one(),
                root_order,
            });
        }
        if raw_den.is_monomial() {
            let dv = raw_den.valuation();
            let v = raw_num.valuation().min(dv);
            let mut num = raw_num.shift_down(v);
            let mut den = raw_den.shift_down(v);
            let dc = den.leading_coeff();
            if dc.is_one() {
                return Ok(Scalar {
                    num,
                    den,
                    root_order,
                });
            }
            if (-&dc).is_one() {
                return Ok(Scalar {
                    num: num.neg(),
                    den: den.neg(),
                    root_order,
                });
            }
            let mut c = num.content().gcd(&dc);
            if dc.is_negative() {
                c = -c;
            }
            num = num.div_content(&c);
            den = den.div_content(&c);
            return Ok(Scalar {
                num,
                den,
                root_order,
            });
        }
        let g = raw_num.gcd(&raw_den);
        let mut num = raw_num.exact_div(&g).expect("gcd divides numerator");
        let mut den = raw_den.exact_div(&g).expect("gcd divides denominator");
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().is_negative() {
            c = -c;
        }
        num = num.div_content(&c);
        den = den.div_content(&c);
        Ok(Scalar {
            num,
            den,
            root_order,
        })
    }

    pub fn zero(root_order: u32) -> Scalar {
        Scalar {
            num: IntPoly::zero(),
            den: IntPoly::one(),
            root_order,
        }
    }

    pub fn one(root_order: u32) -> Scalar {
        Scalar {
            num: IntPoly::one(),
            den: IntPoly::one(),
            root_order,
        }
    }

    pub fn from_int(n: i64, root_order: u32) -> Scalar {
        Scalar {
            num: IntPoly::monomial(BigInt::from(n), 0),
            den: IntPoly::one(),
            root_order,
        }
    }

    pub fn from_ratio(r: Rat, root_order: u32) -> Scalar {
        Scalar::canonicalize(
            IntPoly::monomial(BigInt::from(*r.numer()), 0),
            IntPoly::monomial(BigInt::from(*r.denom()), 0),
            root_order,
        )
        .expect("nonzero denominator")
    }

    /// q^a as a monomial in s; `a * E` must be an integer.
    pub fn q_power(a: Rat, root_order: u32) -> Result<Scalar> {
        let scaled = a * Rat::from_integer(root_order as i64);
        if !scaled.is_integer() {
            return Err(Error::UnrepresentableExponent(a.to_string(), root_order));
        }
        let k = scaled.to_integer();
        Ok(if k >= 0 {
            Scalar {
                num: IntPoly::monomial(BigInt::one(), k as u32),
                den: IntPoly::one(),
                root_order,
            }
        } else {
            Scalar {
                num: IntPoly::one(),
                den: IntPoly::monomial(BigInt::one(), (-k) as u32),
                root_order,
            }
        })
    }

    /// The q-number [a] = q^a - q^{-a}.
    pub fn q_bracket(a: Rat, root_order: u32) -> Result<Scalar> {
        Ok(Scalar::q_power(a, root_order)?.sub(&Scalar::q_power(-a, root_order)?))
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn check_order(&self, other: &Scalar) -> u32 {
        assert_eq!(
            self.root_order, other.root_order,
            "mixed root orders in scalar arithmetic"
        );
        self.root_order
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let e = self.check_order(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Scalar {
                    num,
                    den: IntPoly::one(),
                    root_order: e,
                };
            }
            return Scalar::canonicalize(num, self.den.clone(), e).unwrap();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::canonicalize(num, den, e).unwrap()
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
            root_order: self.root_order,
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let e = self.check_order(other);
        if self.is_zero() || other.is_zero() {
            return Scalar::zero(e);
        }
        if self.den.is_one() && other.den.is_one() {
            // Products of polynomials stay canonical against den = 1.
            return Scalar {
                num: self.num.mul(&other.num),
                den: IntPoly::one(),
                root_order: e,
            };
        }
        if self.den.is_monomial() && other.den.is_monomial() {
            return Scalar::canonicalize(
                self.num.mul(&other.num),
                self.den.mul(&other.den),
                e,
            )
            .unwrap();
        }
        // Cross-cancel first to keep the gcd calls small.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        Scalar::canonicalize(n1.mul(&n2), d1.mul(&d2), e).unwrap()
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Scalar::canonicalize(self.den.clone(), self.num.clone(), self.root_order)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        if k == 0 {
            return Ok(Scalar::one(self.root_order));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.root_order);
        for _ in 0..k.abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
