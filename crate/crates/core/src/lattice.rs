//! Exponent lattices with a rational inner product.
//!
//! Exponent vectors are stored as integer coordinates in units of `1/denom`
//! of the ambient basis, so equality and ordering are exact and cheap. The
//! pairing routes through the Gram matrix; `pair2(u, v)` returns 2(u, v) as a
//! rational, which is the exponent of `q` a monomial shift contributes.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

/// Exponent vector in scaled integer coordinates.
pub type Exp = Vec<i64>;

#[derive(Clone, Eq)]
pub struct PairedLattice {
    /// Human-readable label used in serialized files.
    pub id: String,
    pub dim: usize,
    /// Symmetric positive definite Gram matrix of the ambient basis.
    pub gram: Vec<Vec<Rat>>,
    /// All admissible exponents have coordinates in (1/denom) * Z.
    pub denom: i64,
    /// Root order E with q = s^E shared by every scalar in the computation.
    pub root_order: u32,
}

impl PartialEq for PairedLattice {
    fn eq(&self, other: &Self) -> bool {
        // The id is a display label; compatibility is structural.
        self.dim == other.dim
            && self.gram == other.gram
            && self.denom == other.denom
            && self.root_order == other.root_order
    }
}

impl fmt::Debug for PairedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairedLattice({}, dim {}, d {}, E {})", self.id, self.dim, self.denom, self.root_order)
    }
}

impl PairedLattice {
    pub fn new(id: &str, gram: Vec<Vec<Rat>>, denom: i64, root_order: u32) -> Arc<Self> {
        let dim = gram.len();
        for (i, row) in gram.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for j in 0..dim {
                assert_eq!(gram[i][j], gram[j][i], "gram must be symmetric");
            }
        }
        assert!(denom > 0);
        assert!(root_order > 0 && root_order % 2 == 0);
        Arc::new(PairedLattice {
            id: id.to_string(),
            dim,
            gram,
            denom,
            root_order,
        })
    }

    pub fn zero_exp(&self) -> Exp {
        vec![0; self.dim]
    }

    /// Convert rational ambient coordinates to scaled integer coordinates.
    pub fn exp_from_ratios(&self, coords: &[Rat]) -> Result<Exp> {
        assert_eq!(coords.len(), self.dim);
        let mut out = Vec::with_capacity(self.dim);
        for c in coords {
            let scaled = c * Rat::from_integer(self.denom);
            if !scaled.is_integer() {
                return Err(Error::UnrepresentableExponent(
                    format!("coordinate {} at denominator {}", c, self.denom),
                    self.root_order,
                ));
            }
            out.push(scaled.to_integer());
        }
        Ok(out)
    }

    pub fn exp_to_ratios(&self, e: &Exp) -> Vec<Rat> {
        e.iter().map(|&c| Ratio::new(c, self.denom)).collect()
    }

    /// 2(u, v) as an exact rational.
    pub fn pair2(&self, u: &Exp, v: &Exp) -> Rat {
        let mut num: i128 = 0;
        let mut den_lcm: i64 = 1;
        for row in &self.gram {
            for g in row {
                den_lcm = num_integer::lcm(den_lcm, *g.denom());
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let g = self.gram[i][j];
                let scale = den_lcm / g.denom();
                num += (u[i] as i128) * (v[j] as i128) * (*g.numer() as i128) * (scale as i128);
            }
        }
        // 2(u, v) = 2 * num / (d^2 * lcm)
        let num2 = 2 * num;
        let denom = (self.denom as i128) * (self.denom as i128) * (den_lcm as i128);
        let g = num_integer::gcd(num2.unsigned_abs(), denom.unsigned_abs()).max(1);
        let (n, d) = ((num2 / g as i128), (denom / g as i128));
        Ratio::new(
            i64::try_from(n).expect("pairing overflow"),
            i64::try_from(d).expect("pairing overflow"),
        )
    }

    /// q^{2(u, v)} as a scalar.
    pub fn q_pair2(&self, u: &Exp, v: &Exp) -> Result<Scalar> {
        Scalar::q_power(self.pair2(u, v), self.root_order)
    }

    pub fn add_exp(&self, a: &Exp, b: &Exp) -> Exp {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub_exp(&self, a: &Exp, b: &Exp) -> Exp {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg_exp(&self, a: &Exp) -> Exp {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale_exp(&self, a: &Exp, k: i64) -> Exp {
        a.iter().map(|x| x * k).collect()
    }

    /// Product lattice used to view a two-variable object as one-variable.
    pub fn product_with(self: &Arc<Self>, other: &Arc<PairedLattice>) -> Arc<PairedLattice> {
        assert_eq!(self.denom, other.denom);
        assert_eq!(self.root_order, other.root_order);
        let dim = self.dim + other.dim;
        let mut gram = vec![vec![Rat::from_integer(0); dim]; dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                gram[i][j] = self.gram[i][j];
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                gram[self.dim + i][self.dim + j] = other.gram[i][j];
            }
        }
        PairedLattice::new(
            &format!("{}*{}", self.id, other.id),
            gram,
            self.denom,
            self.root_order,
        )
    }
}

/// Compatibility check used by binary operations.
pub fn same_lattice(a: &Arc<PairedLattice>, b: &Arc<PairedLattice>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::LatticeMismatch)
    }
}
