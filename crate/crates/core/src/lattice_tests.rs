use std::sync::Arc;

use num_rational::Ratio;

use crate::hull::SupportPolytope;
use crate::lattice::PairedLattice;
use crate::laurent::LaurentPoly;
use crate::quasi::{QuasiPoly, Var};
use crate::scalar::{Rat, Scalar};

fn r(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

/// Rank-one lattice with (u, v) = uv/2, integer exponents, E = 2.
fn a1() -> Arc<PairedLattice> {
    PairedLattice::new("a1", vec![vec![r(1, 2)]], 1, 2)
}

/// Rank-two lattice with the standard inner product, half-integer steps.
fn plane() -> Arc<PairedLattice> {
    PairedLattice::new(
        "z2",
        vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(1, 1)]],
        2,
        2,
    )
}

fn mono(l: &Arc<PairedLattice>, e: &[i64], c: i64) -> LaurentPoly {
    LaurentPoly::monomial(l, e.to_vec(), Scalar::from_int(c, l.root_order))
}

fn qpow(l: &Arc<PairedLattice>, a: Rat) -> Scalar {
    Scalar::q_power(a, l.root_order).unwrap()
}

#[test]
fn pairing_conventions() {
    let l = a1();
    // (u, v) = uv/2, so 2(u, v) = uv.
    assert_eq!(l.pair2(&vec![3], &vec![2]), r(6, 1));
    let p = plane();
    // scaled coords: [1,0]/2 . [0,2]/2 under the identity gram
    assert_eq!(p.pair2(&vec![1, 0], &vec![0, 2]), r(0, 1));
    assert_eq!(p.pair2(&vec![1, 1], &vec![1, 1]), r(1, 1));
}

#[test]
fn shift_argument_examples() {
    let l = a1();
    // f = q^{vz} with v = 1; shift by 1 multiplies by q^{2(1,1)} = q.
    let f = mono(&l, &[1], 1);
    let g = f.shift_argument(&vec![1]).unwrap();
    assert_eq!(g.coeff(&vec![1]), qpow(&l, r(1, 1)));

    // Half pairing: exponent 1 shifted by v with (1, v) = 1/2, i.e. v = 1 on
    // the doubled-denominator plane along an orthogonal-ish direction.
    let p = plane();
    let f = mono(&p, &[1, 0], 1);
    let g = f.shift_argument(&vec![1, 0]).unwrap();
    assert_eq!(g.coeff(&vec![1, 0]), qpow(&p, r(1, 2)));

    // shift then unshift is the identity on random-ish data
    let f = mono(&l, &[3], 5).add(&mono(&l, &[-2], 7));
    let round = f
        .shift_argument(&vec![4])
        .unwrap()
        .shift_argument(&vec![-4])
        .unwrap();
    assert_eq!(f, round);
}

#[test]
fn negate_argument_involution() {
    let l = a1();
    let f = mono(&l, &[1], 2).add(&mono(&l, &[-3], 4));
    assert_eq!(f.negate_argument().negate_argument(), f);
    let m = mono(&l, &[2], 1);
    assert_eq!(m.negate_argument().coeff(&vec![-2]), Scalar::from_int(1, 2));
}

#[test]
fn evaluate_examples() {
    let l = a1();
    // q^x + q^{-x} at 0 gives 2
    let f = mono(&l, &[1], 1).add(&mono(&l, &[-1], 1));
    assert_eq!(f.evaluate(&vec![0]).unwrap(), Scalar::from_int(2, 2));
    // monomial q^{2(v,x)} at point v with (v,v) = 1 gives q^2; on the plane
    // (1,1)/2 has squared length 1/2... use e_1 with (e1,e1)=1.
    let p = plane();
    let m = mono(&p, &[2, 0], 1); // exponent e_1
    assert_eq!(m.evaluate(&vec![2, 0]).unwrap(), qpow(&p, r(2, 1)));
}

#[test]
fn reduce_mod_binomial_examples() {
    let l = a1();
    let one = Scalar::one(2);
    let minus_one = Scalar::from_int(-1, 2);

    // generator of the ideal reduces to zero
    let f = mono(&l, &[2], 1).sub(&LaurentPoly::constant(&l, one.clone()));
    assert!(f.reduce_mod_binomial(&vec![2], &one).unwrap().is_zero());

    // symmetric string: q^{2z} - q^{-2z} dies on q^{2z} = 1
    let f = mono(&l, &[2], 1).sub(&mono(&l, &[-2], 1));
    assert!(f.reduce_mod_binomial(&vec![2], &one).unwrap().is_zero());

    // On q^{2z} = -1 the antisymmetric combination still dies and the
    // symmetric one survives; frozen from the coset-sum oracle below.
    let anti = mono(&l, &[2], 1).sub(&mono(&l, &[-2], 1));
    let sym = mono(&l, &[2], 1).add(&mono(&l, &[-2], 1));
    assert!(anti.reduce_mod_binomial(&vec![2], &minus_one).unwrap().is_zero());
    let red = sym.reduce_mod_binomial(&vec![2], &minus_one).unwrap();
    assert_eq!(red.num_terms(), 1);
    assert_eq!(red.coeff(&vec![0]), Scalar::from_int(-2, 2));

    // Coset-sum oracle: substitute X^2 -> eps directly, exponent by exponent.
    let oracle = |f: &LaurentPoly, eps: &Scalar| -> Scalar {
        let mut acc = Scalar::zero(2);
        for (e, c) in f.terms() {
            assert_eq!(e[0].rem_euclid(2), 0);
            acc = acc.add(&c.mul(&eps.pow(e[0] / 2).unwrap()));
        }
        acc
    };
    assert!(oracle(&anti, &minus_one).is_zero());
    assert_eq!(oracle(&sym, &minus_one), Scalar::from_int(-2, 2));
}

#[test]
fn reduce_ideal_membership() {
    let l = plane();
    let one = Scalar::one(2);
    let beta = vec![1, -1];
    // f * (X^beta - eps) always reduces to zero
    let f = mono(&l, &[2, 1], 3)
        .add(&mono(&l, &[-1, 0], 5))
        .add(&mono(&l, &[0, 4], -2));
    let gen = LaurentPoly::monomial(&l, beta.clone(), one.clone())
        .sub(&LaurentPoly::constant(&l, one.clone()));
    let prod = f.mul(&gen);
    assert!(prod.reduce_mod_binomial(&beta, &one).unwrap().is_zero());
}

#[test]
fn exact_divide_examples() {
    let l = a1();
    let f = mono(&l, &[2], 1).sub(&mono(&l, &[-2], 1));
    let g = mono(&l, &[1], 1).sub(&mono(&l, &[-1], 1));
    // difference of squares: q^{2z}-q^{-2z} over q^z-q^{-z}
    let h = f.exact_divide(&g).unwrap();
    assert_eq!(h, mono(&l, &[1], 1).add(&mono(&l, &[-1], 1)));

    // self-division
    assert_eq!(f.exact_divide(&f).unwrap(), LaurentPoly::one(&l));

    // multiply-back oracle with three sparse factors
    let p = plane();
    let a = mono(&p, &[1, 2], 2).add(&mono(&p, &[0, -1], 3));
    let b = mono(&p, &[-2, 1], 1).add(&mono(&p, &[1, 1], -4)).add(&mono(&p, &[0, 0], 1));
    let c = mono(&p, &[3, 0], 5).add(&mono(&p, &[-1, -1], 1));
    let prod = a.mul(&b).mul(&c);
    let quot = prod.exact_divide(&b).unwrap();
    assert_eq!(quot, a.mul(&c));

    // inexact division reports a remainder
    let bad = f.add(&LaurentPoly::one(&l));
    assert!(bad.exact_divide(&g).is_err());
}

#[test]
fn support_hull_examples() {
    let l = a1();
    let single = mono(&l, &[3], 1);
    let hull = SupportPolytope::from_points(&l, single.support()).unwrap();
    assert_eq!(hull.vertices.len(), 1);

    // {-2, 0, 2} on a line: vertices are the endpoints
    let f = mono(&l, &[-2], 1).add(&mono(&l, &[0], 2)).add(&mono(&l, &[2], 1));
    let hull = SupportPolytope::from_points(&l, f.support()).unwrap();
    assert_eq!(
        hull.vertices.iter().cloned().collect::<Vec<_>>(),
        vec![vec![-2], vec![2]]
    );
}

#[test]
fn minkowski_examples() {
    let p = plane();
    let seg1 = SupportPolytope::from_points(&p, vec![vec![0, 0], vec![2, 0]]).unwrap();
    let seg2 = SupportPolytope::from_points(&p, vec![vec![0, 0], vec![0, 2]]).unwrap();
    let para = seg1.minkowski_sum(&seg2).unwrap();
    assert_eq!(para.vertices.len(), 4);

    // identity element: the single point 0
    let zero = SupportPolytope::from_points(&p, vec![vec![0, 0]]).unwrap();
    assert_eq!(seg1.minkowski_sum(&zero).unwrap(), seg1);

    // supp(f*g) = supp(f) # supp(g) for positive coefficients
    let f = mono(&p, &[1, 0], 2).add(&mono(&p, &[0, 1], 3));
    let g = mono(&p, &[2, 2], 1).add(&mono(&p, &[-1, 0], 5));
    let sf = SupportPolytope::from_points(&p, f.support()).unwrap();
    let sg = SupportPolytope::from_points(&p, g.support()).unwrap();
    let spr = SupportPolytope::from_points(&p, f.mul(&g).support()).unwrap();
    assert_eq!(spr, sf.minkowski_sum(&sg).unwrap());
}

#[test]
fn quasipoly_cross_factor() {
    let l = a1();
    // T_z by t on q^{2(x,z)} produces the x-monomial q^{2(t,x)}.
    let e = QuasiPoly::exponential(&l);
    let shifted = e.shift_var(Var::Z, &vec![1]).unwrap();
    assert_eq!(shifted.support(Var::X), vec![vec![1]]);
    assert_eq!(shifted.support(Var::Z), vec![vec![0]]);

    // substitute z = p in q^{2(x,z)} q^{2(nu,z)}: x-exponent becomes p.
    let f = LaurentPoly::monomial(&l, vec![2], Scalar::from_int(1, 2));
    let q = QuasiPoly::from_poly(Var::Z, &f);
    let at = q.substitute(Var::Z, &vec![1]).unwrap();
    // coefficient q^{2(2,1)} = q^2 on x-exponent 1
    assert_eq!(at.coeff(&vec![1]), qpow(&l, r(2, 1)));

    // swap is an involution
    let mut g = QuasiPoly::zero(&l);
    g.add_term(vec![1], vec![-2], Scalar::from_int(3, 2));
    g.add_term(vec![0], vec![2], Scalar::from_int(-1, 2));
    assert_eq!(g.swap_args().swap_args(), g);
}
