use num_rational::Ratio;

use crate::bc::*;
use crate::deformed::{deformed_operator, deformed_orbitsum};
use crate::laurent::LaurentPoly;
use crate::ops::{row_operator, DiffOperator};
use crate::quasi::Var;
use crate::ratfun::CoeffFrac;
use crate::rings::{admissible_steps, ring_membership, RingFlavor};
use crate::rootdata::{build_root_system, deformed_system, Family, MultSpec};
use crate::scalar::{Rat, Scalar};

fn r(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

#[test]
fn aw_trivial_operator() {
    // (a,b,c,d) = (1, q^{1/2}, 1, q^{1/2}): D = T + T^{-1}
    let l = bc_lattice(1, 2);
    let op = askey_wilson_operator(&l, &[r(0, 1), r(1, 2), r(0, 1), r(1, 2)]).unwrap();
    assert_eq!(op.terms.len(), 2);
    assert!(op.terms[&vec![2]].equals(&CoeffFrac::one(&l)));
    assert!(op.terms[&vec![-2]].equals(&CoeffFrac::one(&l)));
}

#[test]
fn aw_gauged_trivial_operator() {
    // (1, q^{1/2}, q^{1/2}, q) is (q^z + q^{-z})^{-1} (T + T^{-1}) (q^z + q^{-z})
    let l = bc_lattice(1, 2);
    let op = askey_wilson_operator(&l, &[r(0, 1), r(1, 2), r(1, 2), r(1, 1)]).unwrap();
    let g = CoeffFrac::from_poly(&bracket_plus_poly(&l, &vec![1], r(0, 1)).unwrap());
    let mut trivial = DiffOperator::new(Var::Z, &l);
    trivial.add_term(vec![2], CoeffFrac::one(&l));
    trivial.add_term(vec![-2], CoeffFrac::one(&l));
    let conj = trivial.conjugate_by(&g).unwrap();
    assert!(op.equals(&conj));
}

#[test]
fn aw_constant_term_identity() {
    // q (abcd)^{-1} + q^{-1} abcd = q^N + q^{-N} for multiplicity parameters
    let p = KoornwinderParams::new(1, r(0, 1), r(3, 1), r(1, 2), r(1, 1), r(1, 2)).unwrap();
    assert_eq!(p.cap_n(), r(6, 1));
    let e = p.lattice.root_order;
    let expect = Scalar::q_power(r(6, 1), e)
        .unwrap()
        .add(&Scalar::q_power(r(-6, 1), e).unwrap());
    assert_eq!(p.constant_term().unwrap(), expect);
}

#[test]
fn dual_parameters_involutive() {
    let p = KoornwinderParams::new(2, r(1, 1), r(1, 1), r(1, 2), r(0, 1), r(1, 2)).unwrap();
    let dd = p.dual().dual();
    assert_eq!(p, dd);
    // the reference self-dual set
    let sd = KoornwinderParams::new(1, r(0, 1), r(3, 1), r(1, 2), r(1, 1), r(1, 2)).unwrap();
    assert_eq!(sd.dual(), sd);
}

#[test]
fn koornwinder_reduces_to_aw() {
    let p = KoornwinderParams::new(1, r(2, 1), r(1, 1), r(1, 2), r(0, 1), r(1, 2)).unwrap();
    let ko = koornwinder_operator(&p).unwrap();
    let aw = askey_wilson_operator(&p.lattice, &p.exponents()).unwrap();
    assert!(ko.equals(&aw));
}

#[test]
fn koornwinder_k_zero_collapses_cross_factors() {
    // At k = 0 the cross factors are 1, so every surviving numerator and
    // denominator factor involves only the shifted coordinate.
    let p = KoornwinderParams::new(2, r(0, 1), r(1, 1), r(1, 2), r(0, 1), r(1, 2)).unwrap();
    let ko = koornwinder_operator(&p).unwrap();
    let c = &ko.terms[&vec![2, 0]];
    for f in c.numerator_factors().iter().chain(c.denominator_factors()) {
        for e in f.support() {
            assert_eq!(e[1], 0, "cross factor survived at k = 0");
        }
    }
}

#[test]
fn aw_shift_intertwining() {
    // Dhat . S_i = S_i . D exactly, for generic rational parameter exponents.
    let samples: [[Rat; 4]; 3] = [
        [r(-3, 1), r(-1, 2), r(-1, 1), r(-1, 2)],
        [r(1, 2), r(-5, 2), r(2, 1), r(0, 1)],
        [r(-7, 2), r(3, 2), r(-2, 1), r(1, 1)],
    ];
    let l = bc_lattice(1, 2);
    for exps in &samples {
        for which in 1..=4 {
            let s = aw_shift_operator(&l, which, exps).unwrap();
            let d = askey_wilson_operator(&l, exps).unwrap();
            let shifted = aw_shifted_exponents(which, exps);
            let dhat = askey_wilson_operator(&l, &shifted).unwrap();
            let lhs = dhat.compose(&s).unwrap();
            let rhs = s.compose(&d).unwrap();
            assert!(
                lhs.equals(&rhs),
                "intertwining failed for S_{} at {:?}",
                which,
                exps
            );
        }
    }
}

#[test]
fn aw_shift_composition_bookkeeping() {
    // S_1 then S_2 shifts every exponent of (a,b) down a full step and moves
    // (c,d) by zero net.
    let exps = [r(-1, 1), r(-1, 2), r(0, 1), r(-3, 2)];
    let after = aw_shifted_exponents(2, &aw_shifted_exponents(1, &exps));
    assert_eq!(after, [r(-2, 1), r(-3, 2), r(0, 1), r(-3, 2)]);
}

#[test]
fn admissible_step_enumeration() {
    // l = 3, l' = 1/2: steps {1/2, 1, 2, 3}
    let steps = admissible_steps(r(3, 1), r(1, 2));
    assert_eq!(steps, vec![r(1, 2), r(1, 1), r(2, 1), r(3, 1)]);
    // negative-leaning degenerate pair: l = 0, l' = -1/2 gives no steps
    assert!(admissible_steps(r(0, 1), r(-1, 2)).is_empty());
}

#[test]
fn dual_weight_reciprocal_trivial_and_selfdual() {
    let l = bc_lattice(1, 2);
    // trivial multiplicities: the reciprocal weight is 1
    let triv = dual_weight_reciprocal(&l, &[r(0, 1), r(-1, 2), r(0, 1), r(-1, 2)], 0).unwrap();
    assert_eq!(triv, LaurentPoly::one(&l));
    // self-dual set (3, 1/2, 1, 1/2): N = 6, six linear factors
    let w = dual_weight_reciprocal(&l, &[r(3, 1), r(1, 2), r(1, 1), r(1, 2)], 6).unwrap();
    // support runs from q^{-6x} to q^{6x}
    let exps: Vec<i64> = w.support().iter().map(|e| e[0]).collect();
    assert_eq!(exps.iter().min(), Some(&-6));
    assert_eq!(exps.iter().max(), Some(&6));
}

#[test]
fn ring_membership_reduced() {
    let sys = build_root_system(Family::A, 1, &MultSpec::uniform(1)).unwrap();
    // W-invariant orbitsum passes the z-side reduced conditions
    let mut inv = LaurentPoly::zero(&sys.lattice);
    inv.add_term(vec![1], Scalar::one(2));
    inv.add_term(vec![-1], Scalar::one(2));
    let cert = ring_membership(&inv, &RingFlavor::ReducedZ(&sys)).unwrap();
    assert!(cert.pass);
    // a lone monomial with odd pairing fails, naming the root and step 1
    let bad = LaurentPoly::monomial(&sys.lattice, vec![1], Scalar::one(2));
    let cert = ring_membership(&bad, &RingFlavor::ReducedZ(&sys)).unwrap();
    assert!(!cert.pass);
    assert_eq!(cert.failures[0].1, r(1, 1));
}

#[test]
fn koornwinder_operator_preserves_ring() {
    // n = 2, M = (k,l,l',m,m') = (1, 1/2, 0, 1/2, 0): apply to a W(B2)-invariant
    // orbit sum and re-check membership.
    let p = KoornwinderParams::new(2, r(1, 1), r(1, 2), r(0, 1), r(1, 2), r(0, 1)).unwrap();
    let ko = koornwinder_operator(&p).unwrap();
    // orbit sum of (1,0) under signed permutations: q^{+-2z_1} + q^{+-2z_2}
    let mut inv = LaurentPoly::zero(&p.lattice);
    for e in [vec![2, 0], vec![-2, 0], vec![0, 2], vec![0, -2]] {
        inv.add_term(e, Scalar::one(2));
    }
    let cert0 = ring_membership(&inv, &RingFlavor::Koornwinder(&p)).unwrap();
    assert!(cert0.pass);
    let image = ko.apply(&inv).unwrap();
    let cert = ring_membership(&image, &RingFlavor::Koornwinder(&p)).unwrap();
    assert!(cert.pass, "failures: {:?}", cert.failures);
}

#[test]
fn deformed_operator_m1_matches_row_operator() {
    // m = 1 reduction: the deformed operator is the s = 1 row operator with
    // k = -1 in n+1 coordinates.
    for n in [1usize, 2] {
        let sys = deformed_system(n, 1).unwrap();
        let dop = deformed_operator(&sys).unwrap();
        let gl = build_root_system(Family::AGl, n + 1, &MultSpec::uniform(1)).unwrap();
        let row = row_operator(&gl, 1, r(-1, 1)).unwrap();
        // same lattice structurally; compare term by term (vars differ by
        // convention only)
        assert_eq!(dop.terms.len(), row.terms.len());
        for (t, a) in &dop.terms {
            assert!(a.equals(&row.terms[t]), "coefficient mismatch at {:?}", t);
        }
    }
}

#[test]
fn deformed_operator_preserves_ring() {
    let sys = deformed_system(2, 2).unwrap();
    let dop = deformed_operator(&sys).unwrap();
    for s in 1..=2 {
        let f = deformed_orbitsum(&sys, s).unwrap();
        let cert0 = ring_membership(&f, &RingFlavor::Deformed(&sys)).unwrap();
        assert!(cert0.pass, "orbitsum {} not in ring: {:?}", s, cert0.failures);
        let image = dop.apply(&f).unwrap();
        let cert = ring_membership(&image, &RingFlavor::Deformed(&sys)).unwrap();
        assert!(cert.pass, "image of orbitsum {} left the ring", s);
    }
}

#[test]
fn deformed_prefactor_at_m1() {
    // [1]/[m] = 1 at m = 1
    let sys = deformed_system(2, 1).unwrap();
    let f = deformed_orbitsum(&sys, 1).unwrap();
    assert_eq!(f.coeff(&sys.unit(2)), Scalar::one(2));
}
