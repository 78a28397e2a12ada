//! Baker-Akhiezer functions: construction, normalization, verification.
//!
//! The eigenfunction is built by the successive-kill product: starting from
//! q^{2(x,z)} Q(z), apply (D - m_w(x + nu)) once for every distinct nonzero
//! nu in the box of coroot combinations. Each application removes the top
//! remaining vertex of the z-support, and the lowest coefficient picks up
//! the factor m_w(x) - m_w(x + nu), which pins the unnormalized leading
//! data exactly.

mod bcba;
mod defba;
mod peel;

pub use bcba::{build_ba_aw_by_shifts, build_ba_koornwinder};
pub use defba::build_ba_deformed;
pub use peel::{build_df, recover_symbol, shift_operators, verify_maximal_commutant};

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bc::KoornwinderParams;
use crate::error::{Error, Result};
use crate::hull::SupportPolytope;
use crate::lattice::Exp;
use crate::laurent::{bracket_poly, LaurentPoly};
use crate::ops::{macdonald_operator_x, macdonald_operator_z};
use crate::quasi::{QuasiPoly, Var};
use crate::rings::{conditions_for, RingFlavor};
use crate::rootdata::{DeformedSystem, RootSystem};
use crate::scalar::{Rat, Scalar};

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

#[derive(Clone)]
pub enum SystemData {
    Reduced(Arc<RootSystem>),
    Koornwinder(KoornwinderParams),
    Deformed(Arc<DeformedSystem>),
}

impl SystemData {
    pub fn name(&self) -> String {
        match self {
            SystemData::Reduced(r) => format!("{} m={:?}", r.name, r.mults),
            SystemData::Koornwinder(p) => format!(
                "BC{} M=({},{},{},{},{})",
                p.n, p.k, p.l, p.lp, p.m, p.mp
            ),
            SystemData::Deformed(d) => format!("A{}({})", d.n, d.m),
        }
    }
}

#[derive(Clone)]
pub struct BaFunction {
    pub system: SystemData,
    pub psi: QuasiPoly,
    pub normalized: bool,
}

/// Orbit sum of omega evaluated at (arg + nu): sum over the orbit of
/// q^{2(tau, nu)} X^tau in the chosen variable's exponents.
pub fn orbit_sum_shifted(sys: &RootSystem, omega: &Exp, nu: &Exp) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(&sys.lattice);
    for tau in sys.weyl_orbit(omega) {
        let c = sys.lattice.q_pair2(&tau, nu)?;
        out.add_term(tau, c);
    }
    Ok(out)
}

/// The seeding polynomial Q(z) = q^{2(rho^vee, z)} prod [(a^vee,z)+j][(a^vee,z)-j].
pub fn ba_seed_poly(sys: &RootSystem) -> Result<LaurentPoly> {
    let lattice = &sys.lattice;
    let mults = sys.int_mults()?;
    let rho_check = sys.rho_check(&sys.mults);
    let mut q = LaurentPoly::monomial(lattice, rho_check, Scalar::one(lattice.root_order));
    for alpha in &sys.positive_roots {
        let m = mults[sys.root_orbit[sys.root_index(alpha).unwrap()]];
        let half = sys.half(&sys.coroot(alpha));
        for j in 1..=m {
            q = q.mul(&bracket_poly(lattice, &half, ri(j))?);
            q = q.mul(&bracket_poly(lattice, &half, ri(-j))?);
        }
    }
    Ok(q)
}

/// Deterministic height key: pairing with the half-coroot sum, then lex.
fn height_key(sys: &RootSystem, v: &Exp) -> (Rat, Exp) {
    (sys.pair2(v, &sys.half_coroot_sum()), v.clone())
}

/// Build the unnormalized BA function by the successive-kill product, with
/// an optional permutation of the factor order.
pub fn build_ba_ordered(sys: &Arc<RootSystem>, order: Option<&[usize]>) -> Result<BaFunction> {
    let lattice = &sys.lattice;
    let omega = {
        let mut ws = sys.minuscule_weights();
        ws.sort_by_key(|w| sys.weyl_orbit(w).len());
        ws.into_iter()
            .next()
            .unwrap_or_else(|| sys.quasiminuscule_weight())
    };
    let d_op = macdonald_operator_z(sys, &omega)?;
    let q_poly = ba_seed_poly(sys)?;
    let mut phi = QuasiPoly::from_poly(Var::Z, &q_poly);

    let mut nus: Vec<Exp> = sys
        .coroot_combinations()
        .into_iter()
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect();
    if let Some(perm) = order {
        assert_eq!(perm.len(), nus.len());
        nus = perm.iter().map(|&i| nus[i].clone()).collect();
    }
    for nu in &nus {
        let c = orbit_sum_shifted(sys, &omega, nu)?;
        let applied = d_op.apply_quasi(&phi)?;
        phi = applied.sub(&phi.mul_poly(Var::X, &c));
    }

    // Support shape: z-exponents inside the polytope points, in the coset.
    let (n_poly, _) = sys.ba_support()?;
    let zsupp: BTreeSet<Exp> = phi.support(Var::Z).into_iter().collect();
    for v in &zsupp {
        if !n_poly.points.contains(v) {
            return Err(Error::PeelingStuck(format!(
                "support point {:?} escaped the target polytope",
                v
            )));
        }
    }
    // Leading data at the lowest vertex: successive exact division by the
    // factors m_w(x) - m_w(x + nu) must end at 1.
    let rho_check = sys.rho_check(&sys.mults);
    let low = lattice.neg_exp(&rho_check);
    let mut lead = phi.z_coefficient(&low);
    if lead.is_zero() {
        return Err(Error::PeelingStuck("lowest vertex coefficient vanished".into()));
    }
    let m_at_zero = orbit_sum_shifted(sys, &omega, &lattice.zero_exp())?;
    for nu in &nus {
        let factor = m_at_zero.sub(&orbit_sum_shifted(sys, &omega, nu)?);
        lead = lead.exact_divide(&factor)?;
    }
    if lead != LaurentPoly::one(lattice) {
        return Err(Error::PeelingStuck(
            "lowest vertex coefficient is not the predicted product".into(),
        ));
    }
    Ok(BaFunction {
        system: SystemData::Reduced(sys.clone()),
        psi: phi,
        normalized: false,
    })
}

pub fn build_ba(sys: &Arc<RootSystem>) -> Result<BaFunction> {
    build_ba_ordered(sys, None)
}

/// The normalization target at the top vertex: prod [j - (alpha, x)].
pub fn leading_target(sys: &RootSystem, signs_from: &[Exp]) -> Result<LaurentPoly> {
    let lattice = &sys.lattice;
    let mults = sys.int_mults()?;
    let mut acc = LaurentPoly::one(lattice);
    for alpha in signs_from {
        let m = {
            let pos = if sys.root_index(alpha).is_some() {
                alpha.clone()
            } else {
                lattice.neg_exp(alpha)
            };
            mults[sys.root_orbit[sys.root_index(&pos).unwrap()]]
        };
        let neg_half = lattice.neg_exp(&sys.half(alpha));
        for j in 1..=m {
            acc = acc.mul(&bracket_poly(lattice, &neg_half, ri(j))?);
        }
    }
    Ok(acc)
}

/// Positive roots sent through w: the set w R_+.
pub fn chamber_roots(sys: &RootSystem, w_vertex: &Exp) -> Vec<Exp> {
    // find w with w rho^vee = vertex, then map R_+
    let rho_check = sys.rho_check(&sys.mults);
    for w in &sys.weyl {
        if w.apply(&rho_check) == *w_vertex {
            return sys.positive_roots.iter().map(|a| w.apply(a)).collect();
        }
    }
    panic!("vertex is not in the orbit of rho^vee");
}

pub fn normalize_ba(ba: &BaFunction) -> Result<BaFunction> {
    let SystemData::Reduced(sys) = &ba.system else {
        return Err(Error::InvalidParams(
            "normalize_ba expects a reduced-system function".into(),
        ));
    };
    let lattice = &sys.lattice;
    let rho_check = sys.rho_check(&sys.mults);
    let low = lattice.neg_exp(&rho_check);
    // target at the lowest vertex: prod over w0 R_+ = -R_+ of [j - (a, x)]
    let neg_pos: Vec<Exp> = sys
        .positive_roots
        .iter()
        .map(|a| lattice.neg_exp(a))
        .collect();
    let target_low = leading_target(sys, &neg_pos)?;
    let raw_low = ba.psi.z_coefficient(&low);
    let scale = raw_low.exact_divide(&target_low).map_err(|_| {
        Error::NonPolynomial(format!("{}", target_low))
    })?;
    // divide every z-coefficient by the common x-factor
    let mut out = QuasiPoly::zero(lattice);
    for nu in ba.psi.support(Var::Z) {
        let coeff = ba.psi.z_coefficient(&nu);
        let reduced = coeff.exact_divide(&scale).map_err(|_| {
            Error::NonPolynomial(format!("coefficient at {:?}", nu))
        })?;
        for (e, c) in reduced.terms() {
            out.add_term(e.clone(), nu.clone(), c.clone());
        }
    }
    let normalized = BaFunction {
        system: ba.system.clone(),
        psi: out,
        normalized: true,
    };
    check_vertex_coefficients(&normalized)?;
    check_edge_ratios(&normalized)?;
    check_x_support(&normalized)?;
    Ok(normalized)
}

/// Every vertex coefficient must match prod over w R_+ of [j - (a, x)].
pub fn check_vertex_coefficients(ba: &BaFunction) -> Result<()> {
    let SystemData::Reduced(sys) = &ba.system else {
        return Ok(());
    };
    let rho_check = sys.rho_check(&sys.mults);
    for vertex in sys.weyl_orbit(&rho_check) {
        let expect = leading_target(sys, &chamber_roots(sys, &vertex))?;
        let got = ba.psi.z_coefficient(&vertex);
        if got != expect {
            return Err(Error::PeelingStuck(format!(
                "vertex coefficient mismatch at {:?}",
                vertex
            )));
        }
    }
    Ok(())
}

/// Along each edge from a vertex v with (alpha, v) = -m_a, the coefficients
/// at v + s alpha^vee satisfy the telescoping two-bracket ratio.
pub fn check_edge_ratios(ba: &BaFunction) -> Result<()> {
    let SystemData::Reduced(sys) = &ba.system else {
        return Ok(());
    };
    let lattice = &sys.lattice;
    let mults = sys.int_mults()?;
    let rho_check = sys.rho_check(&sys.mults);
    for vertex in sys.weyl_orbit(&rho_check) {
        for alpha in &sys.roots {
            let m = {
                let pos = if sys.root_index(alpha).is_some() {
                    alpha.clone()
                } else {
                    lattice.neg_exp(alpha)
                };
                mults[sys.root_orbit[sys.root_index(&pos).unwrap()]]
            };
            if m == 0 || sys.pair(alpha, &vertex) != ri(-m) {
                continue;
            }
            let coroot = sys.coroot(alpha);
            let psi0 = ba.psi.z_coefficient(&vertex);
            let ax_half = sys.half(alpha);
            for s in 1..=m {
                let point = lattice.add_exp(&vertex, &lattice.scale_exp(&coroot, s));
                let psis = ba.psi.z_coefficient(&point);
                // psi_s * prod_{j<=s} [j][j+(a,x)] = psi_0 * prod_{j<=s} [-m+j-1][(a,x)-m+j-1]
                let e = lattice.root_order;
                let mut lhs = psis.clone();
                let mut rhs = psi0.clone();
                for j in 1..=s {
                    lhs = lhs.scale(&Scalar::q_bracket(ri(j), e)?);
                    lhs = lhs.mul(&bracket_poly(lattice, &ax_half, ri(j))?);
                    rhs = rhs.scale(&Scalar::q_bracket(ri(-m + j - 1), e)?);
                    rhs = rhs.mul(&bracket_poly(lattice, &ax_half, ri(-m + j - 1))?);
                }
                if lhs != rhs {
                    return Err(Error::PeelingStuck(format!(
                        "edge ratio failed at vertex {:?} step {}",
                        vertex, s
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The x-support of the normalized function fills the dual polytope.
pub fn check_x_support(ba: &BaFunction) -> Result<()> {
    let SystemData::Reduced(sys) = &ba.system else {
        return Ok(());
    };
    let (_, nv) = sys.ba_support()?;
    let xsupp: BTreeSet<Exp> = ba.psi.support(Var::X).into_iter().collect();
    for v in &xsupp {
        if !nv.points.contains(v) {
            return Err(Error::PeelingStuck(format!(
                "x-support point {:?} outside the dual polytope",
                v
            )));
        }
    }
    let hull = SupportPolytope::from_points(&sys.lattice, xsupp.into_iter().collect::<Vec<_>>())?;
    if hull.vertices != nv.vertices {
        return Err(Error::PeelingStuck("x-support hull mismatch".into()));
    }
    Ok(())
}

/// Closed-form rank-one function via the telescoping ratios.
pub fn rank_one_closed_form(m: i64) -> Result<BaFunction> {
    use crate::rootdata::{build_root_system, Family, MultSpec};
    let sys = Arc::new(build_root_system(Family::A, 1, &MultSpec::uniform(m))?);
    let lattice = &sys.lattice;
    let e = lattice.root_order;
    let half = vec![1i64]; // alpha/2 = 1
    // psi_{-m} = prod_{j=1..m} [j + x]
    let mut coeffs: Vec<LaurentPoly> = Vec::new();
    let mut low = LaurentPoly::one(lattice);
    for j in 1..=m {
        low = low.mul(&bracket_poly(lattice, &half, ri(j))?);
    }
    coeffs.push(low.clone());
    // psi_{-m+2s} = psi_{-m} * prod_{j<=s} [-m+j-1][-m+j-1+x] / ([j][j+x])
    for s in 1..=m {
        let mut num = low.clone();
        let mut den = LaurentPoly::one(lattice);
        for j in 1..=s {
            num = num.scale(&Scalar::q_bracket(ri(-m + j - 1), e)?);
            num = num.mul(&bracket_poly(lattice, &half, ri(-m + j - 1))?);
            den = den.scale(&Scalar::q_bracket(ri(j), e)?);
            den = den.mul(&bracket_poly(lattice, &half, ri(j))?);
        }
        coeffs.push(num.exact_divide(&den)?);
    }
    let mut psi = QuasiPoly::zero(lattice);
    for (s, c) in coeffs.iter().enumerate() {
        let nu = vec![-m + 2 * s as i64];
        for (xe, sc) in c.terms() {
            psi.add_term(xe.clone(), nu.clone(), sc.clone());
        }
    }
    Ok(BaFunction {
        system: SystemData::Reduced(sys),
        psi,
        normalized: true,
    })
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub pass: bool,
    pub failures: Vec<(String, Rat)>,
}

/// Check the defining quasi-invariance conditions on one side. For a
/// Koornwinder function the x-side conditions use the dual parameter set;
/// reduced systems pair the z conditions with coroots and vice versa; the
/// deformed configuration is self-dual.
pub fn check_conditions(ba: &BaFunction, side: Var) -> Result<ConditionReport> {
    let conds;
    let lattice;
    match &ba.system {
        SystemData::Reduced(sys) => {
            conds = match side {
                Var::Z => conditions_for(&RingFlavor::ReducedZ(sys))?,
                Var::X => conditions_for(&RingFlavor::ReducedX(sys))?,
            };
            lattice = sys.lattice.clone();
        }
        SystemData::Koornwinder(p) => {
            let params = if side == Var::Z { p.clone() } else { p.dual() };
            conds = if p.n == 1 {
                conditions_for(&RingFlavor::AskeyWilson(&params))?
            } else {
                conditions_for(&RingFlavor::Koornwinder(&params))?
            };
            lattice = p.lattice.clone();
        }
        SystemData::Deformed(d) => {
            conds = conditions_for(&RingFlavor::Deformed(d))?;
            lattice = d.lattice.clone();
        }
    }
    let dim = lattice.dim;
    let joint = lattice.product_with(&lattice);
    let mut failures = Vec::new();
    for c in &conds {
        let g = ba
            .psi
            .shift_var(side, &c.shift_plus)?
            .sub(&ba.psi.shift_var(side, &c.shift_minus)?);
        let gj = g.to_joint(&joint);
        let mut beta = vec![0i64; 2 * dim];
        match side {
            Var::X => beta[..dim].copy_from_slice(&c.beta),
            Var::Z => beta[dim..].copy_from_slice(&c.beta),
        }
        let r = gj.reduce_mod_binomial(&beta, &c.eps)?;
        if !r.is_zero() {
            failures.push((c.label.clone(), c.s));
        }
    }
    Ok(ConditionReport {
        pass: failures.is_empty(),
        failures,
    })
}

#[derive(Clone, Debug)]
pub struct BispectralReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Both families of eigen-equations on a normalized reduced function:
/// z-side operators for every (quasi)minuscule weight and x-side operators
/// for every (quasi)minuscule coweight.
pub fn verify_bispectral(ba: &BaFunction) -> Result<BispectralReport> {
    let SystemData::Reduced(sys) = &ba.system else {
        return Err(Error::InvalidParams("reduced system required".into()));
    };
    let mut failures = Vec::new();
    for omega in sys.spectral_weights() {
        let d = macdonald_operator_z(sys, &omega)?;
        let lhs = d.apply_quasi(&ba.psi)?;
        let eig = orbit_sum_shifted(sys, &omega, &sys.lattice.zero_exp())?;
        let rhs = ba.psi.mul_poly(Var::X, &eig);
        if lhs != rhs {
            failures.push(format!("z-side weight {:?}", omega));
        }
    }
    let k_exps: Vec<Rat> = sys.mults.iter().map(|m| -*m).collect();
    for pi in sys.spectral_coweights() {
        let d = macdonald_operator_x(sys, &pi, &k_exps)?;
        let lhs = d.apply_quasi(&ba.psi)?;
        let eig = orbit_sum_shifted(sys, &pi, &sys.lattice.zero_exp())?;
        let rhs = ba.psi.mul_poly(Var::Z, &eig);
        if lhs != rhs {
            failures.push(format!("x-side coweight {:?}", pi));
        }
    }
    Ok(BispectralReport {
        pass: failures.is_empty(),
        failures,
    })
}

/// psi(wx, wz) = psi(x, z) for every w.
pub fn check_w_equivariance(ba: &BaFunction) -> Result<bool> {
    let SystemData::Reduced(sys) = &ba.system else {
        return Err(Error::InvalidParams("reduced system required".into()));
    };
    for w in &sys.weyl {
        let moved = ba
            .psi
            .map_exponents(|e| w.apply(e), |e| w.apply(e));
        if moved != ba.psi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Duality: the argument swap of the normalized function for R equals the
/// normalized function for the dual system.
pub fn verify_duality(sys: &Arc<RootSystem>) -> Result<bool> {
    let psi = normalize_ba(&build_ba(sys)?)?;
    let dual = Arc::new(sys.dual_system()?);
    let psi_dual = normalize_ba(&build_ba(&dual)?)?;
    Ok(psi.psi.swap_args() == psi_dual.psi)
}

/// Width property of the support strings: along any coroot direction the
/// nonzero z-coefficients of a BA function span at least m_alpha steps.
pub fn check_string_widths(ba: &BaFunction) -> Result<bool> {
    let SystemData::Reduced(sys) = &ba.system else {
        return Err(Error::InvalidParams("reduced system required".into()));
    };
    let mults = sys.int_mults()?;
    let supp: BTreeSet<Exp> = ba.psi.support(Var::Z).into_iter().collect();
    for alpha in &sys.positive_roots {
        let m = mults[sys.root_orbit[sys.root_index(alpha).unwrap()]];
        let coroot = sys.coroot(alpha);
        for base in &supp {
            // the string through base in direction coroot
            let mut js = Vec::new();
            for j in -(4 * m + 4)..=(4 * m + 4) {
                let p = sys
                    .lattice
                    .add_exp(base, &sys.lattice.scale_exp(&coroot, j));
                if supp.contains(&p) {
                    js.push(j);
                }
            }
            if !js.is_empty() {
                let width = js.iter().max().unwrap() - js.iter().min().unwrap();
                if width < m && m > 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The normalization factor c(lambda, m) = prod [j - (a^vee, lambda)].
pub fn c_factor(sys: &RootSystem, lambda: &Exp) -> Result<Scalar> {
    let e = sys.root_order();
    let mults = sys.int_mults()?;
    let mut acc = Scalar::one(e);
    for alpha in &sys.positive_roots {
        let m = mults[sys.root_orbit[sys.root_index(alpha).unwrap()]];
        let coroot = sys.coroot(alpha);
        let p = sys.pair(&coroot, lambda);
        for j in 1..=m {
            acc = acc.mul(&Scalar::q_bracket(ri(j) - p, e)?);
        }
    }
    Ok(acc)
}

/// The shift-operator seed polynomial: c_m(z) = prod [m_a - (a^vee, z)].
pub fn c_poly(sys: &RootSystem) -> Result<LaurentPoly> {
    let lattice = &sys.lattice;
    let mults = sys.int_mults()?;
    let mut acc = LaurentPoly::one(lattice);
    for alpha in &sys.positive_roots {
        let m = mults[sys.root_orbit[sys.root_index(alpha).unwrap()]];
        let neg_half = lattice.neg_exp(&sys.half(&sys.coroot(alpha)));
        acc = acc.mul(&bracket_poly(lattice, &neg_half, ri(m))?);
    }
    Ok(acc)
}

pub(crate) fn top_vertex(sys: &RootSystem, points: &[Exp]) -> Exp {
    points
        .iter()
        .max_by_key(|v| height_key(sys, v))
        .expect("nonempty support")
        .clone()
}
