//! Quasi-invariance ring membership certificates.
//!
//! Each flavor lists finitely many conditions of the form
//! f(. + u) - f(. + v) = 0 on the subvariety X^beta = eps; the check shifts,
//! subtracts and reduces modulo the binomial, reporting the first failure as
//! a witness instead of erroring.

use num_rational::Ratio;

use crate::bc::KoornwinderParams;
use crate::error::Result;
use crate::lattice::Exp;
use crate::laurent::LaurentPoly;
use crate::rootdata::{DeformedSystem, RootSystem};
use crate::scalar::{Rat, Scalar};

fn ri(n: i64) -> Rat {
    Rat::from_integer(n)
}

#[derive(Clone, Debug)]
pub struct Condition {
    /// Human-readable label naming the root / coordinate pair involved.
    pub label: String,
    /// Step parameter s of the condition.
    pub s: Rat,
    pub shift_plus: Exp,
    pub shift_minus: Exp,
    pub beta: Exp,
    pub eps: Scalar,
}

#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub pass: bool,
    /// Labels and steps of the failed conditions with remainder witnesses.
    pub failures: Vec<(String, Rat, String)>,
    pub conditions_checked: usize,
}

pub enum RingFlavor<'a> {
    /// Conditions in z across coroot hyperplanes (shifts by half-roots).
    ReducedZ(&'a RootSystem),
    /// Conditions in x across root hyperplanes (shifts by half-coroots).
    ReducedX(&'a RootSystem),
    AskeyWilson(&'a KoornwinderParams),
    Koornwinder(&'a KoornwinderParams),
    Deformed(&'a DeformedSystem),
}

/// Steps 0 < s with at least one of a - s, b - s a nonnegative integer.
pub fn admissible_steps(a: Rat, b: Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    let top = a.max(b);
    let mut s = Ratio::new(1, 2);
    while s <= top {
        let ok = |m: Rat| m - s >= ri(0) && (m - s).is_integer();
        if ok(a) || ok(b) {
            out.push(s);
        }
        s += Ratio::new(1, 2);
    }
    out
}

pub fn conditions_for(flavor: &RingFlavor<'_>) -> Result<Vec<Condition>> {
    let mut out = Vec::new();
    match flavor {
        RingFlavor::ReducedZ(sys) => {
            let e = sys.root_order();
            for alpha in &sys.positive_roots {
                let m = sys.mult_of_root(alpha);
                assert!(m.is_integer());
                let half = sys.half(alpha);
                for j in 1..=m.to_integer() {
                    out.push(Condition {
                        label: format!("alpha{:?}", alpha),
                        s: ri(j),
                        shift_plus: sys.lattice.scale_exp(&half, j),
                        shift_minus: sys.lattice.scale_exp(&half, -j),
                        beta: sys.coroot(alpha),
                        eps: Scalar::one(e),
                    });
                }
            }
        }
        RingFlavor::ReducedX(sys) => {
            let e = sys.root_order();
            for alpha in &sys.positive_roots {
                let m = sys.mult_of_root(alpha);
                let half = sys.half(&sys.coroot(alpha));
                for j in 1..=m.to_integer() {
                    out.push(Condition {
                        label: format!("alpha{:?}", alpha),
                        s: ri(j),
                        shift_plus: sys.lattice.scale_exp(&half, j),
                        shift_minus: sys.lattice.scale_exp(&half, -j),
                        beta: alpha.clone(),
                        eps: Scalar::one(e),
                    });
                }
            }
        }
        RingFlavor::AskeyWilson(p) | RingFlavor::Koornwinder(p) => {
            let e = p.lattice.root_order;
            let n = p.n;
            let d = p.lattice.denom;
            for i in 0..n {
                for (fam, pair, eps) in [
                    ("even", (p.l, p.lp), Scalar::one(e)),
                    ("odd", (p.m, p.mp), Scalar::from_int(-1, e)),
                ] {
                    for s in admissible_steps(pair.0, pair.1) {
                        // shift by s e_i: scaled coords s*d
                        let step = s * ri(d);
                        assert!(step.is_integer());
                        let mut sh = vec![0i64; n];
                        sh[i] = step.to_integer();
                        out.push(Condition {
                            label: format!("z{}:{}", i + 1, fam),
                            s,
                            shift_plus: sh.clone(),
                            shift_minus: sh.iter().map(|c| -c).collect(),
                            beta: p.unit(i),
                            eps: eps.clone(),
                        });
                    }
                }
            }
            if matches!(flavor, RingFlavor::Koornwinder(_)) {
                assert!(p.k.is_integer());
                for i in 0..n {
                    for j in (i + 1)..n {
                        for s in 1..=p.k.to_integer() {
                            let mut plus = vec![0i64; n];
                            plus[i] = s * d;
                            let mut minus = vec![0i64; n];
                            minus[j] = s * d;
                            out.push(Condition {
                                label: format!("z{}-z{}", i + 1, j + 1),
                                s: ri(s),
                                shift_plus: plus.clone(),
                                shift_minus: minus.clone(),
                                beta: p.lattice.sub_exp(&p.unit(i), &p.unit(j)),
                                eps: Scalar::one(e),
                            });
                            let mut minus2 = vec![0i64; n];
                            minus2[j] = -s * d;
                            out.push(Condition {
                                label: format!("z{}+z{}", i + 1, j + 1),
                                s: ri(s),
                                shift_plus: plus,
                                shift_minus: minus2,
                                beta: p.lattice.add_exp(&p.unit(i), &p.unit(j)),
                                eps: Scalar::one(e),
                            });
                        }
                    }
                }
            }
        }
        RingFlavor::Deformed(sys) => {
            let e = sys.lattice.root_order;
            let n = sys.n;
            for i in 0..n {
                for j in (i + 1)..n {
                    for s in 1..=sys.m {
                        out.push(Condition {
                            label: format!("z{}-z{}", i + 1, j + 1),
                            s: ri(s),
                            shift_plus: sys.lattice.scale_exp(&sys.unit(i), s),
                            shift_minus: sys.lattice.scale_exp(&sys.unit(j), s),
                            beta: sys.lattice.sub_exp(&sys.unit(i), &sys.unit(j)),
                            eps: Scalar::one(e),
                        });
                    }
                }
            }
            for i in 0..n {
                out.push(Condition {
                    label: format!("z{}-scaled", i + 1),
                    s: ri(1),
                    shift_plus: sys.unit(i),
                    shift_minus: sys.unit(n),
                    beta: sys.lattice.sub_exp(&sys.unit(i), &sys.unit(n)),
                    eps: Scalar::q_power(ri(sys.m - 1), e)?,
                });
            }
        }
    }
    Ok(out)
}

/// Check all conditions of the flavor against f.
pub fn ring_membership(f: &LaurentPoly, flavor: &RingFlavor<'_>) -> Result<MembershipCertificate> {
    let conditions = conditions_for(flavor)?;
    let mut failures = Vec::new();
    for c in &conditions {
        let g = f
            .shift_argument(&c.shift_plus)?
            .sub(&f.shift_argument(&c.shift_minus)?);
        let r = g.reduce_mod_binomial(&c.beta, &c.eps)?;
        if !r.is_zero() {
            failures.push((c.label.clone(), c.s, format!("{}", r)));
        }
    }
    Ok(MembershipCertificate {
        pass: failures.is_empty(),
        failures,
        conditions_checked: conditions.len(),
    })
}
