use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::scalar::{IntPoly, Rat, Scalar};

fn poly(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_coeffs(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
}

fn r(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

/// Independent oracle: monic Euclidean gcd over Q, then rescaled to the
/// primitive integer representative. Used to pin the derived canonicalize
/// expectations without going through `IntPoly::gcd`.
fn gcd_oracle(a: &IntPoly, b: &IntPoly) -> IntPoly {
    type QP = Vec<Ratio<BigInt>>;
    fn to_q(p: &IntPoly) -> QP {
        p.dense_coeffs()
            .into_iter()
            .map(Ratio::from_integer)
            .collect()
    }
    fn trim(p: &mut QP) {
        while p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
    }
    fn rem(mut a: QP, b: &QP) -> QP {
        let db = b.len() - 1;
        let lb = b[db].clone();
        while a.len() >= b.len() && !a.is_empty() {
            let da = a.len() - 1;
            let q = a[da].clone() / lb.clone();
            for i in 0..=db {
                let v = a[da - db + i].clone() - q.clone() * b[i].clone();
                a[da - db + i] = v;
            }
            trim(&mut a);
        }
        a
    }
    let mut x = to_q(a);
    let mut y = to_q(b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(x, &y);
        x = y;
        y = r;
    }
    // x is a gcd over Q; clear denominators and take the primitive part.
    let mut lcm = BigInt::one();
    for c in &x {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = x.iter().map(|c| (c * Ratio::from_integer(lcm.clone())).to_integer()).collect();
    IntPoly::from_coeffs(&ints).primitive()
}

#[test]
fn canonicalize_common_factor() {
    // (s^2 - 1)/(s - 1) reduces to (s + 1)/1
    let s = Scalar::canonicalize(poly(&[-1, 0, 1]), poly(&[-1, 1]), 2).unwrap();
    assert_eq!(s.num(), &poly(&[1, 1]));
    assert_eq!(s.den(), &poly(&[1]));
}

#[test]
fn canonicalize_zero() {
    let s = Scalar::canonicalize(IntPoly::zero(), poly(&[0, 0, 0, 1]), 2).unwrap();
    assert!(s.is_zero());
    assert_eq!(s.den(), &poly(&[1]));
}

#[test]
fn canonicalize_gcd_oracle() {
    // (2s^4 - 2)/(4s^2 - 4): oracle gcd gives 2s^2 - 2 up to scale,
    // canonical representative is (s^2 + 1)/2.
    let n = poly(&[-2, 0, 0, 0, 2]);
    let d = poly(&[-4, 0, 4]);
    let g = gcd_oracle(&n, &d);
    assert_eq!(g, poly(&[-1, 0, 1]));
    assert_eq!(n.exact_div(&g).unwrap(), poly(&[2, 0, 2]));
    assert_eq!(d.exact_div(&g).unwrap(), poly(&[4]));
    // common content 2 remains:
    let s = Scalar::canonicalize(n, d, 2).unwrap();
    assert_eq!(s.num(), &poly(&[1, 0, 1]));
    assert_eq!(s.den(), &poly(&[2]));
}

#[test]
fn canonicalize_is_projection() {
    let s = Scalar::canonicalize(poly(&[6, 0, -6]), poly(&[-4, 4]), 2).unwrap();
    let again = Scalar::canonicalize(s.num().clone(), s.den().clone(), 2).unwrap();
    assert_eq!(s, again);
}

#[test]
fn canonicalize_rejects_zero_denominator() {
    assert!(Scalar::canonicalize(poly(&[1]), IntPoly::zero(), 2).is_err());
}

#[test]
fn q_power_examples() {
    // E = 2: q = s^2, q^{1/2} = s, q^{-3/2} = 1/s^3
    let q1 = Scalar::q_power(r(1, 1), 2).unwrap();
    assert_eq!(q1.num(), &poly(&[0, 0, 1]));
    assert!(q1.den().is_one());

    let qh = Scalar::q_power(r(1, 2), 2).unwrap();
    assert_eq!(qh.num(), &poly(&[0, 1]));

    let qn = Scalar::q_power(r(-3, 2), 2).unwrap();
    assert!(qn.num().is_one());
    assert_eq!(qn.den(), &poly(&[0, 0, 0, 1]));
}

#[test]
fn q_power_additivity() {
    for (a, b) in [(r(1, 2), r(3, 2)), (r(-5, 2), r(1, 1)), (r(7, 2), r(-7, 2))] {
        let lhs = Scalar::q_power(a, 2)
            .unwrap()
            .mul(&Scalar::q_power(b, 2).unwrap());
        let rhs = Scalar::q_power(a + b, 2).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn q_power_unrepresentable() {
    assert!(Scalar::q_power(r(1, 3), 2).is_err());
    assert!(Scalar::q_power(r(1, 3), 6).is_ok());
}

#[test]
fn q_bracket_examples() {
    let b0 = Scalar::q_bracket(r(0, 1), 2).unwrap();
    assert!(b0.is_zero());

    // [1] = q - q^{-1} = (s^4 - 1)/s^2 at E = 2
    let b1 = Scalar::q_bracket(r(1, 1), 2).unwrap();
    assert_eq!(b1.num(), &poly(&[-1, 0, 0, 0, 1]));
    assert_eq!(b1.den(), &poly(&[0, 0, 1]));

    // [2] = q^2 - q^{-2} = (s^8 - 1)/s^4, frozen from direct expansion.
    let b2 = Scalar::q_bracket(r(2, 1), 2).unwrap();
    let direct = Scalar::q_power(r(2, 1), 2)
        .unwrap()
        .sub(&Scalar::q_power(r(-2, 1), 2).unwrap());
    assert_eq!(b2, direct);
    assert_eq!(b2.num(), &poly(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]));
    assert_eq!(b2.den(), &poly(&[0, 0, 0, 0, 1]));

    // antisymmetry
    let bm = Scalar::q_bracket(r(-2, 1), 2).unwrap();
    assert_eq!(bm, b2.neg());
}

#[test]
fn field_arithmetic_round_trip() {
    let a = Scalar::canonicalize(poly(&[1, 2]), poly(&[3, 0, 1]), 2).unwrap();
    let b = Scalar::canonicalize(poly(&[-4, 1, 1]), poly(&[0, 5]), 2).unwrap();
    let prod = a.mul(&b);
    let back = prod.div(&b).unwrap();
    assert_eq!(a, back);
    let inv = a.inv().unwrap();
    assert!(a.mul(&inv).is_one());
}

#[test]
fn bracket_double_angle() {
    // [2a] = [a] * (q^a + q^{-a})
    for a in [r(1, 1), r(3, 2), r(-5, 2), r(4, 1)] {
        let lhs = Scalar::q_bracket(a + a, 2).unwrap();
        let rhs = Scalar::q_bracket(a, 2).unwrap().mul(
            &Scalar::q_power(a, 2)
                .unwrap()
                .add(&Scalar::q_power(-a, 2).unwrap()),
        );
        assert_eq!(lhs, rhs);
    }
}
