//! Root systems, Weyl groups, lattices and multiplicity data.
//!
//! Every built-in system is realized with exact rational coordinates:
//! A-type in the basis of simple roots (Gram = Cartan matrix), B/C/D-type in
//! the standard orthonormal basis, G2 in its simple-root basis, and the
//! rank-one system as R = {+-2} on the line with (u, v) = uv/2. The exponent
//! lattice denominator and the root order E are computed from the data so
//! that every q-power the constructions need is representable.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::hull::SupportPolytope;
use crate::lattice::{Exp, PairedLattice};
use crate::scalar::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
    /// A-type in the n-coordinate realization with roots e_i - e_j; used for
    /// the row-operator comparisons where shifts act on the full Z^n lattice.
    AGl,
}

/// Weyl group element: orthogonal map stored as a rational matrix in the
/// ambient basis, with its determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<Rat>>,
    pub det: i32,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        let mut m = vec![vec![Rat::from_integer(0); dim]; dim];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Rat::from_integer(1);
        }
        WeylElement { matrix: m, det: 1 }
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let dim = self.matrix.len();
        let mut m = vec![vec![Rat::from_integer(0); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Rat::from_integer(0);
                for (k, other_row) in other.matrix.iter().enumerate() {
                    acc += self.matrix[i][k] * other_row[j];
                }
                m[i][j] = acc;
            }
        }
        WeylElement {
            matrix: m,
            det: self.det * other.det,
        }
    }

    /// Apply to a scaled exponent vector; the image must stay on the lattice.
    pub fn apply(&self, e: &Exp) -> Exp {
        let dim = self.matrix.len();
        let mut out = Vec::with_capacity(dim);
        for row in &self.matrix {
            let mut acc = Rat::from_integer(0);
            for j in 0..dim {
                acc += row[j] * Rat::from_integer(e[j]);
            }
            assert!(acc.is_integer(), "Weyl image left the scaled lattice");
            out.push(acc.to_integer());
        }
        out
    }

    fn key(&self) -> Vec<Rat> {
        self.matrix.iter().flatten().cloned().collect()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub name: String,
    pub family: Family,
    pub rank: usize,
    pub lattice: Arc<PairedLattice>,
    /// All roots, scaled coordinates.
    pub roots: Vec<Exp>,
    pub positive_roots: Vec<Exp>,
    pub simple_roots: Vec<Exp>,
    pub weyl: Vec<WeylElement>,
    /// Orbit index for every root (kept in `roots` order).
    pub root_orbit: Vec<usize>,
    pub num_orbits: usize,
    /// Multiplicity per orbit, constant on Weyl orbits by construction.
    pub mults: Vec<Rat>,
    pub fundamental_weights: Vec<Exp>,
    pub fundamental_coweights: Vec<Exp>,
}

fn lcm64(a: i64, b: i64) -> i64 {
    num_integer::lcm(a, b)
}

fn solve_linear(gram: &[Vec<Rat>], rhs: &[Rat]) -> Vec<Rat> {
    // Dense Gaussian elimination, exact.
    let n = gram.len();
    let mut a: Vec<Vec<Rat>> = gram.iter().map(|r| r.to_vec()).collect();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != Rat::from_integer(0))
            .expect("gram is nonsingular");
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
        }
        b[col] /= p;
        for r in 0..n {
            if r != col && a[r][col] != Rat::from_integer(0) {
                let f = a[r][col];
                for j in 0..n {
                    let v = a[col][j] * f;
                    a[r][j] -= v;
                }
                let v = b[col] * f;
                b[r] -= v;
            }
        }
    }
    b
}

/// Ambient-coordinate pairing of two rational vectors under a gram matrix.
fn pair_ambient(gram: &[Vec<Rat>], u: &[Rat], v: &[Rat]) -> Rat {
    let mut acc = Rat::from_integer(0);
    for i in 0..u.len() {
        for j in 0..v.len() {
            acc += u[i] * gram[i][j] * v[j];
        }
    }
    acc
}

struct RawSystem {
    name: String,
    gram: Vec<Vec<Rat>>,
    simple_roots: Vec<Vec<Rat>>,
}

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

fn raw_system(family: Family, rank: usize) -> Result<RawSystem> {
    let unsupported = || Error::Unsupported(format!("{:?}{}", family, rank));
    match (family, rank) {
        (Family::A, 1) => Ok(RawSystem {
            name: "A1".into(),
            gram: vec![vec![Ratio::new(1, 2)]],
            simple_roots: vec![vec![ri(2)]],
        }),
        (Family::A, n @ 2..=3) => {
            // Basis of simple roots; Gram = symmetrized Cartan matrix.
            let mut gram = vec![vec![ri(0); n]; n];
            for i in 0..n {
                gram[i][i] = ri(2);
                if i + 1 < n {
                    gram[i][i + 1] = ri(-1);
                    gram[i + 1][i] = ri(-1);
                }
            }
            let simple_roots = (0..n)
                .map(|i| (0..n).map(|j| ri((i == j) as i64)).collect())
                .collect();
            Ok(RawSystem {
                name: format!("A{}", n),
                gram,
                simple_roots,
            })
        }
        (Family::B, n @ 2..=3) => {
            let gram = (0..n)
                .map(|i| (0..n).map(|j| ri((i == j) as i64)).collect())
                .collect();
            let mut simple_roots: Vec<Vec<Rat>> = Vec::new();
            for i in 0..n - 1 {
                let mut v = vec![ri(0); n];
                v[i] = ri(1);
                v[i + 1] = ri(-1);
                simple_roots.push(v);
            }
            let mut last = vec![ri(0); n];
            last[n - 1] = ri(1);
            simple_roots.push(last);
            Ok(RawSystem {
                name: format!("B{}", n),
                gram,
                simple_roots,
            })
        }
        (Family::C, n @ 2..=3) => {
            let gram = (0..n)
                .map(|i| (0..n).map(|j| ri((i == j) as i64)).collect())
                .collect();
            let mut simple_roots: Vec<Vec<Rat>> = Vec::new();
            for i in 0..n - 1 {
                let mut v = vec![ri(0); n];
                v[i] = ri(1);
                v[i + 1] = ri(-1);
                simple_roots.push(v);
            }
            let mut last = vec![ri(0); n];
            last[n - 1] = ri(2);
            simple_roots.push(last);
            Ok(RawSystem {
                name: format!("C{}", n),
                gram,
                simple_roots,
            })
        }
        (Family::D, 3) => {
            let n = 3;
            let gram = (0..n)
                .map(|i| (0..n).map(|j| ri((i == j) as i64)).collect::<Vec<_>>())
                .collect();
            Ok(RawSystem {
                name: "D3".into(),
                gram,
                simple_roots: vec![
                    vec![ri(1), ri(-1), ri(0)],
                    vec![ri(0), ri(1), ri(-1)],
                    vec![ri(0), ri(1), ri(1)],
                ],
            })
        }
        (Family::G, 2) => Ok(RawSystem {
            name: "G2".into(),
            gram: vec![vec![ri(2), ri(-3)], vec![ri(-3), ri(6)]],
            simple_roots: vec![vec![ri(1), ri(0)], vec![ri(0), ri(1)]],
        }),
        (Family::AGl, n @ 2..=4) => {
            let gram = (0..n)
                .map(|i| (0..n).map(|j| ri((i == j) as i64)).collect::<Vec<_>>())
                .collect();
            let mut simple_roots: Vec<Vec<Rat>> = Vec::new();
            for i in 0..n - 1 {
                let mut v = vec![ri(0); n];
                v[i] = ri(1);
                v[i + 1] = ri(-1);
                simple_roots.push(v);
            }
            Ok(RawSystem {
                name: format!("A{}gl", n - 1),
                gram,
                simple_roots,
            })
        }
        _ => Err(unsupported()),
    }
}

/// Multiplicity specification: one value for single-orbit systems, or
/// (short, long) values for two-orbit systems.
#[derive(Clone, Debug, PartialEq)]
pub enum MultSpec {
    Uniform(Rat),
    ShortLong(Rat, Rat),
}

impl MultSpec {
    pub fn uniform(m: i64) -> Self {
        MultSpec::Uniform(ri(m))
    }

    pub fn short_long(s: i64, l: i64) -> Self {
        MultSpec::ShortLong(ri(s), ri(l))
    }
}

pub fn build_root_system(family: Family, rank: usize, mults: &MultSpec) -> Result<RootSystem> {
    let raw = raw_system(family, rank)?;
    let dim = raw.gram.len();
    let n_simple = raw.simple_roots.len();

    // Reflection matrices for the simple roots.
    let reflection = |root: &[Rat]| -> WeylElement {
        let norm = pair_ambient(&raw.gram, root, root);
        let mut m = vec![vec![ri(0); dim]; dim];
        for j in 0..dim {
            let mut basis = vec![ri(0); dim];
            basis[j] = ri(1);
            let c = pair_ambient(&raw.gram, root, &basis) * ri(2) / norm;
            for i in 0..dim {
                m[i][j] = ri((i == j) as i64) - c * root[i];
            }
        }
        WeylElement { matrix: m, det: -1 }
    };
    let gens: Vec<WeylElement> = raw.simple_roots.iter().map(|r| reflection(r)).collect();

    // Weyl group by breadth-first closure.
    let mut weyl: Vec<WeylElement> = vec![WeylElement::identity(dim)];
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    seen.insert(weyl[0].key());
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(idx) = queue.pop_front() {
        let current = weyl[idx].clone();
        for g in &gens {
            let next = g.compose(&current);
            if seen.insert(next.key()) {
                weyl.push(next);
                queue.push_back(weyl.len() - 1);
            }
        }
    }

    // Roots: orbit of the simple roots (rational coordinates).
    let apply_rat = |w: &WeylElement, v: &[Rat]| -> Vec<Rat> {
        (0..dim)
            .map(|i| (0..dim).map(|j| w.matrix[i][j] * v[j]).sum())
            .collect()
    };
    let mut roots_rat: Vec<Vec<Rat>> = Vec::new();
    let mut root_set: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for w in &weyl {
        for s in &raw.simple_roots {
            let img = apply_rat(w, s);
            if root_set.insert(img.clone()) {
                roots_rat.push(img);
            }
        }
    }

    // Crystallographic check: 2(a,b)/(a,a) integral.
    for a in &roots_rat {
        let na = pair_ambient(&raw.gram, a, a);
        for b in &roots_rat {
            let c = pair_ambient(&raw.gram, a, b) * ri(2) / na;
            if !c.is_integer() {
                return Err(Error::Unsupported("non-crystallographic data".into()));
            }
        }
    }

    // Positive roots: nonnegative coordinates in the simple-root basis.
    let simple_mat: Vec<Vec<Rat>> = (0..dim)
        .map(|i| (0..n_simple).map(|j| raw.simple_roots[j][i]).collect())
        .collect();
    let in_simple_basis = |v: &[Rat]| -> Vec<Rat> {
        // Solve Σ c_j α_j = v via the Gram pairing trick: it is enough to
        // solve the square system (α_i, Σ c_j α_j) = (α_i, v).
        let mut g = vec![vec![ri(0); n_simple]; n_simple];
        let mut rhs = vec![ri(0); n_simple];
        for i in 0..n_simple {
            for j in 0..n_simple {
                g[i][j] = pair_ambient(&raw.gram, &raw.simple_roots[i], &raw.simple_roots[j]);
            }
            rhs[i] = pair_ambient(&raw.gram, &raw.simple_roots[i], v);
        }
        solve_linear(&g, &rhs)
    };
    let _ = &simple_mat;
    let positive_rat: Vec<Vec<Rat>> = roots_rat
        .iter()
        .filter(|r| in_simple_basis(r).iter().all(|c| *c >= ri(0)))
        .cloned()
        .collect();
    assert_eq!(positive_rat.len() * 2, roots_rat.len());

    // Fundamental weights and coweights (skip for the GL realization where
    // the roots do not span the ambient space).
    let coroot_rat = |a: &[Rat]| -> Vec<Rat> {
        let na = pair_ambient(&raw.gram, a, a);
        a.iter().map(|c| *c * ri(2) / na).collect()
    };
    let (fw_rat, fc_rat): (Vec<Vec<Rat>>, Vec<Vec<Rat>>) = if family == Family::AGl {
        // GL convention: pi_s = e_1 + ... + e_s serve as both.
        let mut v = Vec::new();
        for s in 1..=n_simple {
            let mut p = vec![ri(0); dim];
            for i in 0..s {
                p[i] = ri(1);
            }
            v.push(p);
        }
        (v.clone(), v)
    } else {
        let mut fw = Vec::new();
        let mut fc = Vec::new();
        for i in 0..n_simple {
            // (w_i, alpha_j^vee) = delta_ij  and  (b_i, alpha_j) = delta_ij
            let rhs_w: Vec<Rat> = (0..n_simple)
                .map(|j| {
                    let nj = pair_ambient(&raw.gram, &raw.simple_roots[j], &raw.simple_roots[j]);
                    if i == j {
                        nj / ri(2)
                    } else {
                        ri(0)
                    }
                })
                .collect();
            // Solve (alpha_j, x) = rhs in ambient coordinates: G x = rhs.
            let full_rhs_w: Vec<Rat> = rhs_w;
            let mut a = vec![vec![ri(0); dim]; dim];
            let mut bw = vec![ri(0); dim];
            let mut bc = vec![ri(0); dim];
            for (j, alpha) in raw.simple_roots.iter().enumerate() {
                for col in 0..dim {
                    let mut basis = vec![ri(0); dim];
                    basis[col] = ri(1);
                    a[j][col] = pair_ambient(&raw.gram, alpha, &basis);
                }
                bw[j] = full_rhs_w[j];
                bc[j] = ri((i == j) as i64);
            }
            fw.push(solve_linear(&a, &bw));
            fc.push(solve_linear(&a, &bc));
        }
        let _ = coroot_rat;
        (fw, fc)
    };

    // Lattice denominator from the generators we must host exactly:
    // weights, coweights, half-roots, half-coroots.
    let mut gens_rat: Vec<Vec<Rat>> = Vec::new();
    gens_rat.extend(fw_rat.iter().cloned());
    gens_rat.extend(fc_rat.iter().cloned());
    for a in &roots_rat {
        gens_rat.push(a.iter().map(|c| *c / ri(2)).collect());
        let na = pair_ambient(&raw.gram, a, a);
        gens_rat.push(a.iter().map(|c| *c / na).collect()); // alpha^vee / 2
    }
    let mut denom: i64 = 1;
    for g in &gens_rat {
        for c in g {
            denom = lcm64(denom, *c.denom());
        }
    }
    // Root order: every 2(u, v) over the generated lattice must embed, and
    // half-integer bracket offsets require E even.
    let mut e_order: i64 = 2;
    for g1 in &gens_rat {
        for g2 in &gens_rat {
            let p2 = pair_ambient(&raw.gram, g1, g2) * ri(2);
            e_order = lcm64(e_order, *p2.denom());
        }
    }

    let lattice = PairedLattice::new(&raw.name, raw.gram.clone(), denom, e_order as u32);
    let to_exp = |v: &[Rat]| -> Exp {
        v.iter()
            .map(|c| {
                let s = *c * ri(denom);
                assert!(s.is_integer());
                s.to_integer()
            })
            .collect()
    };

    let roots: Vec<Exp> = roots_rat.iter().map(|r| to_exp(r)).collect();
    let positive_roots: Vec<Exp> = positive_rat.iter().map(|r| to_exp(r)).collect();
    let simple_roots: Vec<Exp> = raw.simple_roots.iter().map(|r| to_exp(r)).collect();

    // Orbits of roots under W.
    let mut root_orbit = vec![usize::MAX; roots.len()];
    let mut num_orbits = 0;
    for i in 0..roots.len() {
        if root_orbit[i] != usize::MAX {
            continue;
        }
        let orbit_id = num_orbits;
        num_orbits += 1;
        let mut frontier = vec![roots[i].clone()];
        let index_of =
            |r: &Exp, roots: &Vec<Exp>| roots.iter().position(|x| x == r).expect("closed");
        root_orbit[i] = orbit_id;
        while let Some(r) = frontier.pop() {
            for w in &weyl {
                let img = w.apply(&r);
                let j = index_of(&img, &roots);
                if root_orbit[j] == usize::MAX {
                    root_orbit[j] = orbit_id;
                    frontier.push(img);
                }
            }
        }
    }

    // Orbit multiplicities: order orbits short first (by squared length).
    let lattice_ref = &lattice;
    let norm_of_orbit: Vec<Rat> = (0..num_orbits)
        .map(|o| {
            let idx = root_orbit.iter().position(|&x| x == o).unwrap();
            lattice_ref.pair2(&roots[idx], &roots[idx]) / ri(2)
        })
        .collect();
    let mults: Vec<Rat> = match mults {
        MultSpec::Uniform(m) => vec![*m; num_orbits],
        MultSpec::ShortLong(s, l) => {
            if num_orbits != 2 {
                return Err(Error::InvalidParams(format!(
                    "{} has {} orbit(s); expected short/long",
                    raw.name, num_orbits
                )));
            }
            if norm_of_orbit[0] < norm_of_orbit[1] {
                vec![*s, *l]
            } else {
                vec![*l, *s]
            }
        }
    };

    Ok(RootSystem {
        name: raw.name,
        family,
        rank: n_simple,
        lattice,
        roots,
        positive_roots,
        simple_roots,
        weyl,
        root_orbit,
        num_orbits,
        mults,
        fundamental_weights: fw_rat.iter().map(|v| to_exp(v)).collect(),
        fundamental_coweights: fc_rat.iter().map(|v| to_exp(v)).collect(),
    })
}

impl RootSystem {
    pub fn root_order(&self) -> u32 {
        self.lattice.root_order
    }

    /// Index into `roots`.
    pub fn root_index(&self, r: &Exp) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    pub fn mult_of_root(&self, r: &Exp) -> Rat {
        let i = self.root_index(r).expect("not a root");
        self.mults[self.root_orbit[i]]
    }

    /// Coroot 2a/(a,a) in scaled coordinates.
    pub fn coroot(&self, r: &Exp) -> Exp {
        let norm2 = self.lattice.pair2(r, r); // = 2(a,a)
        let factor = ri(4) / norm2; // 2/( a,a )
        r.iter()
            .map(|c| {
                let v = Rat::from_integer(*c) * factor;
                assert!(v.is_integer());
                v.to_integer()
            })
            .collect()
    }

    /// Half of a lattice vector; must stay on the lattice.
    pub fn half(&self, r: &Exp) -> Exp {
        r.iter()
            .map(|c| {
                assert!(c % 2 == 0, "half-vector left the scaled lattice");
                c / 2
            })
            .collect()
    }

    pub fn pair2(&self, u: &Exp, v: &Exp) -> Rat {
        self.lattice.pair2(u, v)
    }

    /// (u, v) as a rational.
    pub fn pair(&self, u: &Exp, v: &Exp) -> Rat {
        self.lattice.pair2(u, v) / ri(2)
    }

    /// rho(m) = 1/2 sum of m_a * a over positive roots, for integer-valued
    /// per-orbit multiplicities.
    pub fn rho(&self, mults: &[Rat]) -> Exp {
        let mut acc = vec![Rat::from_integer(0); self.lattice.dim];
        for r in &self.positive_roots {
            let i = self.root_index(r).unwrap();
            let m = mults[self.root_orbit[i]];
            for (j, c) in r.iter().enumerate() {
                acc[j] += m * Rat::from_integer(*c) / ri(2);
            }
        }
        acc.iter()
            .map(|c| {
                assert!(c.is_integer(), "rho left the scaled lattice");
                c.to_integer()
            })
            .collect()
    }

    /// rho^vee(m) = 1/2 sum of m_a * a^vee over positive roots.
    pub fn rho_check(&self, mults: &[Rat]) -> Exp {
        let mut acc = vec![Rat::from_integer(0); self.lattice.dim];
        for r in &self.positive_roots {
            let i = self.root_index(r).unwrap();
            let m = mults[self.root_orbit[i]];
            let cr = self.coroot(r);
            for (j, c) in cr.iter().enumerate() {
                acc[j] += m * Rat::from_integer(*c) / ri(2);
            }
        }
        acc.iter()
            .map(|c| {
                assert!(c.is_integer(), "rho^vee left the scaled lattice");
                c.to_integer()
            })
            .collect()
    }

    /// varrho^vee: half-sum of positive coroots.
    pub fn half_coroot_sum(&self) -> Exp {
        self.rho_check(&vec![ri(1); self.num_orbits])
    }

    /// 2(tau, rho_k) for rational per-orbit exponents k, without
    /// materializing rho_k as a lattice vector.
    pub fn rho_pair2(&self, tau: &Exp, k: &[Rat]) -> Rat {
        let mut acc = Rat::from_integer(0);
        for r in &self.positive_roots {
            let i = self.root_index(r).unwrap();
            acc += k[self.root_orbit[i]] * self.pair2(tau, r) / ri(2);
        }
        acc
    }

    /// Orbit of a lattice vector under W (deduplicated, deterministic order).
    pub fn weyl_orbit(&self, v: &Exp) -> Vec<Exp> {
        let mut set = BTreeSet::new();
        for w in &self.weyl {
            set.insert(w.apply(v));
        }
        set.into_iter().collect()
    }

    pub fn is_dominant(&self, v: &Exp) -> bool {
        self.simple_roots.iter().all(|a| self.pair2(v, a) >= ri(0))
    }

    /// The dominant representative of the W-orbit of v.
    pub fn dominant_rep(&self, v: &Exp) -> Exp {
        let mut cur = v.clone();
        'outer: loop {
            for a in &self.simple_roots {
                if self.pair2(&cur, a) < ri(0) {
                    // reflect: cur - (cur, a^vee) a
                    let k = self.pair2(&cur, &self.coroot(a)) / ri(2);
                    for (j, rc) in a.iter().enumerate() {
                        let delta = Rat::new(*k.numer() * rc, *k.denom());
                        assert!(delta.is_integer());
                        cur[j] -= delta.to_integer();
                    }
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Nonzero dominant minuscule coweights: fundamental coweights pairing
    /// in {0, 1} with every positive root (one representative per nontrivial
    /// coset of the coweight lattice modulo the coroot lattice).
    pub fn minuscule_coweights(&self) -> Vec<Exp> {
        self.fundamental_coweights
            .iter()
            .filter(|b| {
                self.positive_roots
                    .iter()
                    .all(|a| self.pair2(b, a) / ri(2) <= ri(1))
            })
            .cloned()
            .collect()
    }

    /// Minuscule weights: fundamental weights pairing in {0, 1} with every
    /// positive coroot.
    pub fn minuscule_weights(&self) -> Vec<Exp> {
        self.fundamental_weights
            .iter()
            .filter(|w| {
                self.positive_roots
                    .iter()
                    .all(|a| self.pair2(w, &self.coroot(a)) / ri(2) <= ri(1))
            })
            .cloned()
            .collect()
    }

    /// Highest root (unique dominant root of maximal height).
    pub fn highest_root(&self) -> Exp {
        let mut best: Option<(Rat, Exp)> = None;
        let varrho = self.half_coroot_sum();
        for r in &self.positive_roots {
            let h = self.pair2(r, &varrho);
            if best.as_ref().map(|(b, _)| h > *b).unwrap_or(true) {
                best = Some((h, r.clone()));
            }
        }
        best.unwrap().1
    }

    /// Quasiminuscule coweight: the coroot of the highest root.
    pub fn quasiminuscule_coweight(&self) -> Exp {
        self.coroot(&self.highest_root())
    }

    /// Quasiminuscule weight: the highest short root (pairs in {-1,0,1}
    /// with all coroots other than its own).
    pub fn quasiminuscule_weight(&self) -> Exp {
        let mut best: Option<(Rat, Exp)> = None;
        let norm_min = self
            .positive_roots
            .iter()
            .map(|r| self.pair2(r, r))
            .min()
            .unwrap();
        let varrho = self.half_coroot_sum();
        for r in &self.positive_roots {
            if self.pair2(r, r) == norm_min {
                let h = self.pair2(r, &varrho);
                if best.as_ref().map(|(b, _)| h > *b).unwrap_or(true) {
                    best = Some((h, r.clone()));
                }
            }
        }
        best.unwrap().1
    }

    /// All (quasi)minuscule coweights used by the bispectral checks.
    pub fn spectral_coweights(&self) -> Vec<Exp> {
        let mut v = self.minuscule_coweights();
        v.push(self.quasiminuscule_coweight());
        v
    }

    pub fn spectral_weights(&self) -> Vec<Exp> {
        let mut v = self.minuscule_weights();
        v.push(self.quasiminuscule_weight());
        v
    }

    /// Integer multiplicities or an error.
    pub fn int_mults(&self) -> Result<Vec<i64>> {
        self.mults
            .iter()
            .map(|m| {
                if m.is_integer() && *m.numer() >= 0 {
                    Ok(m.to_integer())
                } else {
                    Err(Error::InvalidParams(format!(
                        "multiplicity {} is not a nonnegative integer",
                        m
                    )))
                }
            })
            .collect()
    }

    /// Distinct values sum l_a a^vee with 0 <= l_a <= m_a, including zero.
    pub fn coroot_combinations(&self) -> Vec<Exp> {
        let mults = self.int_mults().expect("integer multiplicities");
        let mut values: Vec<Exp> = vec![self.lattice.zero_exp()];
        let mut seen: BTreeSet<Exp> = values.iter().cloned().collect();
        for (idx, r) in self.positive_roots.iter().enumerate() {
            let m = mults[self.root_orbit[self.root_index(r).unwrap()]];
            let _ = idx;
            let cr = self.coroot(r);
            let mut next: Vec<Exp> = Vec::new();
            for v in &values {
                for l in 0..=m {
                    let cand = self.lattice.add_exp(v, &self.lattice.scale_exp(&cr, l));
                    if seen.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
            values.extend(next);
        }
        values.sort();
        values
    }

    /// Same with the roots themselves (for the x-side support).
    pub fn root_combinations(&self) -> Vec<Exp> {
        let mults = self.int_mults().expect("integer multiplicities");
        let mut values: Vec<Exp> = vec![self.lattice.zero_exp()];
        let mut seen: BTreeSet<Exp> = values.iter().cloned().collect();
        for r in &self.positive_roots {
            let m = mults[self.root_orbit[self.root_index(r).unwrap()]];
            let mut next: Vec<Exp> = Vec::new();
            for v in &values {
                for l in 0..=m {
                    let cand = self.lattice.add_exp(v, &self.lattice.scale_exp(r, l));
                    if seen.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
            values.extend(next);
        }
        values.sort();
        values
    }

    /// The z-side support polytope N (points rho^vee - sum l_a a^vee) and the
    /// x-side support polytope N^vee (points rho - sum l_a a).
    pub fn ba_support(&self) -> Result<(SupportPolytope, SupportPolytope)> {
        let rho_check = self.rho_check(&self.mults);
        let pts_z: Vec<Exp> = self
            .coroot_combinations()
            .iter()
            .map(|v| self.lattice.sub_exp(&rho_check, v))
            .collect();
        let rho = self.rho(&self.mults);
        let pts_x: Vec<Exp> = self
            .root_combinations()
            .iter()
            .map(|v| self.lattice.sub_exp(&rho, v))
            .collect();
        Ok((
            SupportPolytope::from_points(&self.lattice, pts_z)?,
            SupportPolytope::from_points(&self.lattice, pts_x)?,
        ))
    }

    /// The dual system: coroots become the roots, multiplicities transfer
    /// orbit-wise (m_{a^vee} = m_a). Same ambient space and lattice scale.
    pub fn dual_system(&self) -> Result<RootSystem> {
        let dual_family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        let spec = if self.num_orbits == 1 {
            MultSpec::Uniform(self.mults[0])
        } else {
            // Short orbit of the dual carries the long multiplicity of the
            // original and vice versa; express via the original short/long.
            let short_idx = {
                let norms: Vec<Rat> = (0..self.num_orbits)
                    .map(|o| {
                        let i = self.root_orbit.iter().position(|&x| x == o).unwrap();
                        self.pair2(&self.roots[i], &self.roots[i])
                    })
                    .collect();
                if norms[0] < norms[1] {
                    0
                } else {
                    1
                }
            };
            let long_idx = 1 - short_idx;
            // a short root's coroot is a long coroot
            MultSpec::ShortLong(self.mults[long_idx], self.mults[short_idx])
        };
        let mut dual = build_root_system(dual_family, self.rank, &spec)?;
        // The realizations are arranged so that the dual's ambient space is
        // the same; double-check the lattices agree so swapped-argument
        // comparisons are meaningful.
        if dual.lattice.gram != self.lattice.gram
            || dual.lattice.denom != self.lattice.denom
            || dual.lattice.root_order != self.lattice.root_order
        {
            return Err(Error::Unsupported(format!(
                "dual realization of {} is not lattice-compatible",
                self.name
            )));
        }
        dual.lattice = self.lattice.clone();
        Ok(dual)
    }

    /// Stabilizer order of a vector in W.
    pub fn stabilizer_size(&self, v: &Exp) -> usize {
        self.weyl.iter().filter(|w| &w.apply(v) == v).count()
    }
}

/// The deformed rank-(n+1) configuration: an A-type block of n coordinates
/// plus one scaled direction. The Gram matrix diag(1, ..., 1, m) encodes the
/// scaling, so all coordinates stay rational.
#[derive(Clone, Debug)]
pub struct DeformedSystem {
    pub n: usize,
    pub m: i64,
    pub lattice: Arc<PairedLattice>,
    /// Positive roots: f_i - f_j (i < j <= n, multiplicity m) and
    /// f_i - f_{n+1} (multiplicity 1).
    pub positive_roots: Vec<Exp>,
    pub mults: Vec<i64>,
}

pub fn deformed_system(n: usize, m: i64) -> Result<DeformedSystem> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidParams("need n >= 1 and m >= 1".into()));
    }
    let dim = n + 1;
    let mut gram = vec![vec![ri(0); dim]; dim];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = if i == n { ri(m) } else { ri(1) };
    }
    let lattice = PairedLattice::new(&format!("A{}({})", n, m), gram, 2, 2);
    let mut positive_roots = Vec::new();
    let mut mults = Vec::new();
    let unit = |i: usize| -> Exp {
        let mut v = vec![0i64; dim];
        v[i] = 2; // scaled by denom = 2
        v
    };
    for i in 0..n {
        for j in (i + 1)..n {
            positive_roots.push(lattice.sub_exp(&unit(i), &unit(j)));
            mults.push(m);
        }
    }
    for i in 0..n {
        positive_roots.push(lattice.sub_exp(&unit(i), &unit(n)));
        mults.push(1);
    }
    Ok(DeformedSystem {
        n,
        m,
        lattice,
        positive_roots,
        mults,
    })
}

impl DeformedSystem {
    /// Unit vector f_i in scaled coordinates.
    pub fn unit(&self, i: usize) -> Exp {
        let mut v = vec![0i64; self.n + 1];
        v[i] = self.lattice.denom;
        v
    }

    /// rho = 1/2 sum m_a a.
    pub fn rho(&self) -> Exp {
        let mut acc = vec![0i64; self.n + 1];
        for (r, m) in self.positive_roots.iter().zip(&self.mults) {
            for (j, c) in r.iter().enumerate() {
                acc[j] += m * c; // still to be halved
            }
        }
        acc.iter().map(|c| {
            assert!(c % 2 == 0);
            c / 2
        }).collect()
    }

    /// Vertex rho_sigma for a permutation of {1..n+1}: the half-sum of
    /// m_a a over the roots made negative on the chamber of t_sigma.
    pub fn vertex_for_permutation(&self, sigma: &[usize]) -> Exp {
        // t_sigma has f-coordinates (sigma_1, ..., sigma_n, sigma_{n+1}/m)
        let tf: Vec<Rat> = sigma
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                if i == self.n {
                    Rat::new(s as i64, self.m)
                } else {
                    ri(s as i64)
                }
            })
            .collect();
        let mut acc = vec![Rat::from_integer(0); self.n + 1];
        for (r, m) in self.positive_roots.iter().zip(&self.mults) {
            // (a, t_sigma) with gram diag(1,...,m) and r scaled by denom
            let mut p = Rat::from_integer(0);
            for j in 0..=self.n {
                let g = if j == self.n { ri(self.m) } else { ri(1) };
                p += Rat::new(r[j], self.lattice.denom) * g * tf[j];
            }
            let sign = if p < ri(0) { -1 } else { 1 };
            for (j, c) in r.iter().enumerate() {
                acc[j] += Rat::new(sign * m * c, 2);
            }
        }
        acc.iter()
            .map(|c| {
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect()
    }

    /// All (n+1)! vertices, deduplicated.
    pub fn vertices(&self) -> Vec<Exp> {
        let mut out = BTreeSet::new();
        let mut perm: Vec<usize> = (1..=self.n + 1).collect();
        permute_all(&mut perm, 0, &mut |p| {
            out.insert(self.vertex_for_permutation(p));
        });
        out.into_iter().collect()
    }

    /// Distinct values sum l_a a with 0 <= l_a <= m_a (roots, not coroots).
    pub fn root_combinations(&self) -> Vec<Exp> {
        let mut values: Vec<Exp> = vec![vec![0; self.n + 1]];
        let mut seen: BTreeSet<Exp> = values.iter().cloned().collect();
        for (r, m) in self.positive_roots.iter().zip(&self.mults) {
            let mut next = Vec::new();
            for v in &values {
                for l in 0..=*m {
                    let cand = self.lattice.add_exp(v, &self.lattice.scale_exp(r, l));
                    if seen.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
            values.extend(next);
        }
        values.sort();
        values
    }
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

/// Per-orbit multiplicity map keyed by orbit label, used by serialization.
pub fn orbit_labels(r: &RootSystem) -> BTreeMap<String, Rat> {
    let mut out = BTreeMap::new();
    if r.num_orbits == 1 {
        out.insert("all".to_string(), r.mults[0]);
    } else {
        let norms: Vec<Rat> = (0..r.num_orbits)
            .map(|o| {
                let i = r.root_orbit.iter().position(|&x| x == o).unwrap();
                r.pair2(&r.roots[i], &r.roots[i])
            })
            .collect();
        for o in 0..r.num_orbits {
            let label = if norms[o] == *norms.iter().min().unwrap() {
                "short"
            } else {
                "long"
            };
            out.insert(label.to_string(), r.mults[o]);
        }
    }
    out
}
