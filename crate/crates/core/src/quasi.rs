//! Quasipolynomials: q^{2(x,z)} times a Laurent polynomial in x and z.
//!
//! The cross factor q^{2(x,z)} is implicit and never stored; a term
//! ((mu, nu), c) stands for c q^{2(mu,x)} q^{2(nu,z)} q^{2(x,z)}. Shifting
//! one variable therefore both rescales coefficients and moves exponents of
//! the *other* variable, because T_z^t q^{2(x,z)} = q^{2(t,x)} q^{2(x,z)}.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::lattice::{same_lattice, Exp, PairedLattice};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

/// Which of the two arguments an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Var {
    X,
    Z,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Z,
            Var::Z => Var::X,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::Z => write!(f, "z"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct QuasiPoly {
    lattice: Arc<PairedLattice>,
    /// (x-exponent, z-exponent) -> coefficient.
    terms: BTreeMap<(Exp, Exp), Scalar>,
}

impl QuasiPoly {
    pub fn zero(lattice: &Arc<PairedLattice>) -> Self {
        QuasiPoly {
            lattice: lattice.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The bare exponential q^{2(x,z)}.
    pub fn exponential(lattice: &Arc<PairedLattice>) -> Self {
        let mut q = QuasiPoly::zero(lattice);
        q.add_term(
            lattice.zero_exp(),
            lattice.zero_exp(),
            Scalar::one(lattice.root_order),
        );
        q
    }

    /// q^{2(x,z)} f with f a polynomial in the given variable.
    pub fn from_poly(var: Var, f: &LaurentPoly) -> Self {
        let lattice = f.lattice().clone();
        let zero = lattice.zero_exp();
        let mut q = QuasiPoly::zero(&lattice);
        for (e, c) in f.terms() {
            match var {
                Var::X => q.add_term(e.clone(), zero.clone(), c.clone()),
                Var::Z => q.add_term(zero.clone(), e.clone(), c.clone()),
            }
        }
        q
    }

    pub fn lattice(&self) -> &Arc<PairedLattice> {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Exp, Exp), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, x: Exp, z: Exp, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((x, z)) {
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

    pub fn add(&self, other: &QuasiPoly) -> QuasiPoly {
        same_lattice(&self.lattice, &other.lattice).expect("lattice mismatch");
        let mut out = self.clone();
        for ((x, z), c) in &other.terms {
            out.add_term(x.clone(), z.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> QuasiPoly {
        QuasiPoly {
            lattice: self.lattice.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &QuasiPoly) -> QuasiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> QuasiPoly {
        if c.is_zero() {
            return QuasiPoly::zero(&self.lattice);
        }
        QuasiPoly {
            lattice: self.lattice.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, s)| (k.clone(), s.mul(c)))
                .collect(),
        }
    }

    /// Multiply by a polynomial in one variable.
    pub fn mul_poly(&self, var: Var, f: &LaurentPoly) -> QuasiPoly {
        same_lattice(&self.lattice, f.lattice()).expect("lattice mismatch");
        let mut out = QuasiPoly::zero(&self.lattice);
        for (fe, fc) in f.terms() {
            for ((x, z), c) in &self.terms {
                match var {
                    Var::X => out.add_term(
                        self.lattice.add_exp(x, fe),
                        z.clone(),
                        c.mul(fc),
                    ),
                    Var::Z => out.add_term(
                        x.clone(),
                        self.lattice.add_exp(z, fe),
                        c.mul(fc),
                    ),
                }
            }
        }
        out
    }

    /// Shift the given variable by t, including the cross-factor action:
    /// the opposite variable's exponent moves by t and the coefficient picks
    /// up q^{2(own-exponent, t)}.
    pub fn shift_var(&self, var: Var, t: &Exp) -> Result<QuasiPoly> {
        let mut out = QuasiPoly::zero(&self.lattice);
        for ((x, z), c) in &self.terms {
            match var {
                Var::Z => {
                    let f = self.lattice.q_pair2(z, t)?;
                    out.add_term(self.lattice.add_exp(x, t), z.clone(), c.mul(&f));
                }
                Var::X => {
                    let f = self.lattice.q_pair2(x, t)?;
                    out.add_term(x.clone(), self.lattice.add_exp(z, t), c.mul(&f));
                }
            }
        }
        Ok(out)
    }

    /// Swap the roles of x and z.
    pub fn swap_args(&self) -> QuasiPoly {
        QuasiPoly {
            lattice: self.lattice.clone(),
            terms: self
                .terms
                .iter()
                .map(|((x, z), c)| ((z.clone(), x.clone()), c.clone()))
                .collect(),
        }
    }

    /// Apply exponent maps (w_x to x-exponents, w_z to z-exponents).
    pub fn map_exponents(
        &self,
        map_x: impl Fn(&Exp) -> Exp,
        map_z: impl Fn(&Exp) -> Exp,
    ) -> QuasiPoly {
        let mut out = QuasiPoly::zero(&self.lattice);
        for ((x, z), c) in &self.terms {
            out.add_term(map_x(x), map_z(z), c.clone());
        }
        out
    }

    /// Coefficient of q^{2(nu,z)} as a polynomial in x.
    pub fn z_coefficient(&self, nu: &Exp) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.lattice);
        for ((x, z), c) in &self.terms {
            if z == nu {
                out.add_term(x.clone(), c.clone());
            }
        }
        out
    }

    pub fn x_coefficient(&self, mu: &Exp) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.lattice);
        for ((x, z), c) in &self.terms {
            if x == mu {
                out.add_term(z.clone(), c.clone());
            }
        }
        out
    }

    /// Distinct exponents appearing on the chosen side.
    pub fn support(&self, var: Var) -> Vec<Exp> {
        let mut set = std::collections::BTreeSet::new();
        for (x, z) in self.terms.keys() {
            set.insert(match var {
                Var::X => x.clone(),
                Var::Z => z.clone(),
            });
        }
        set.into_iter().collect()
    }

    /// Substitute a lattice point for one variable. The cross factor turns
    /// into a monomial of the surviving variable: substituting z = p in
    /// q^{2(x,z)} q^{2(mu,x)} q^{2(nu,z)} gives q^{2(mu+p, x)} q^{2(nu,p)}.
    pub fn substitute(&self, var: Var, p: &Exp) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(&self.lattice);
        for ((x, z), c) in &self.terms {
            match var {
                Var::Z => {
                    let f = self.lattice.q_pair2(z, p)?;
                    out.add_term(self.lattice.add_exp(x, p), c.mul(&f));
                }
                Var::X => {
                    let f = self.lattice.q_pair2(x, p)?;
                    out.add_term(self.lattice.add_exp(z, p), c.mul(&f));
                }
            }
        }
        Ok(out)
    }

    /// View as a Laurent polynomial on the product lattice (x coords then z
    /// coords); the cross factor is dropped, which is fine for exact
    /// divisibility questions between quasipolynomials sharing it.
    pub fn to_joint(&self, joint: &Arc<PairedLattice>) -> LaurentPoly {
        let mut out = LaurentPoly::zero(joint);
        for ((x, z), c) in &self.terms {
            let mut e = x.clone();
            e.extend_from_slice(z);
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn from_joint(lattice: &Arc<PairedLattice>, joint: &LaurentPoly) -> QuasiPoly {
        let dim = lattice.dim;
        let mut out = QuasiPoly::zero(lattice);
        for (e, c) in joint.terms() {
            out.add_term(e[..dim].to_vec(), e[dim..].to_vec(), c.clone());
        }
        out
    }
}

impl fmt::Debug for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiPoly[{} terms]", self.terms.len())
    }
}
