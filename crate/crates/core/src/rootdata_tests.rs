use num_rational::Ratio;

use crate::rootdata::*;
use crate::scalar::Rat;

fn r(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

#[test]
fn a1_convention() {
    let sys = build_root_system(Family::A, 1, &MultSpec::uniform(1)).unwrap();
    // R = {+-2} with (u, v) = uv/2, so P = Z and alpha^vee = 2.
    assert_eq!(sys.roots.len(), 2);
    assert_eq!(sys.positive_roots, vec![vec![2]]);
    assert_eq!(sys.coroot(&vec![2]), vec![2]);
    assert_eq!(sys.lattice.denom, 1);
    assert_eq!(sys.lattice.root_order, 2);
    assert_eq!(sys.weyl.len(), 2);
    // rho^vee = m for m = 1
    assert_eq!(sys.rho_check(&sys.mults), vec![1]);
    assert_eq!(sys.fundamental_weights, vec![vec![1]]);
    assert_eq!(sys.minuscule_coweights(), vec![vec![1]]);
}

#[test]
fn a2_data() {
    let sys = build_root_system(Family::A, 2, &MultSpec::uniform(1)).unwrap();
    assert_eq!(sys.weyl.len(), 6);
    assert_eq!(sys.positive_roots.len(), 3);
    assert_eq!(sys.num_orbits, 1);
    // rho^vee = alpha1^vee + alpha2^vee for m = 1 (simply laced: = alpha sum)
    let expected = sys
        .lattice
        .add_exp(&sys.simple_roots[0], &sys.simple_roots[1]);
    assert_eq!(sys.rho_check(&sys.mults), expected);
    // both fundamental coweights are minuscule
    assert_eq!(sys.minuscule_coweights().len(), 2);
    assert_eq!(sys.lattice.root_order, 6);
}

#[test]
fn b2_data_and_duality() {
    let sys = build_root_system(Family::B, 2, &MultSpec::short_long(2, 1)).unwrap();
    assert_eq!(sys.weyl.len(), 8);
    assert_eq!(sys.num_orbits, 2);
    assert_eq!(sys.roots.len(), 8);
    // dual system is C2 with multiplicities swapped orbit-wise
    let dual = sys.dual_system().unwrap();
    assert_eq!(dual.name, "C2");
    assert_eq!(dual.weyl.len(), 8);
    // dual of dual comes back to B2 with the same orbit multiplicities
    let back = dual.dual_system().unwrap();
    assert_eq!(back.name, "B2");
    assert_eq!(orbit_labels(&sys), orbit_labels(&back));
    // closure-enumeration oracle: B2 roots are the 4 short +-e_i and the
    // 4 long +-e1 +- e2; count norms.
    let short = sys
        .roots
        .iter()
        .filter(|a| sys.pair2(a, a) == r(2, 1))
        .count();
    let long = sys
        .roots
        .iter()
        .filter(|a| sys.pair2(a, a) == r(4, 1))
        .count();
    assert_eq!((short, long), (4, 4));
    // the coroots of B2 are the C2 roots
    let mut dual_roots: Vec<_> = sys.roots.iter().map(|a| sys.coroot(a)).collect();
    dual_roots.sort();
    let mut c2_roots = dual.roots.clone();
    c2_roots.sort();
    assert_eq!(dual_roots, c2_roots);
}

#[test]
fn g2_minuscule() {
    let sys = build_root_system(Family::G, 2, &MultSpec::short_long(1, 1)).unwrap();
    assert_eq!(sys.weyl.len(), 12);
    assert_eq!(sys.roots.len(), 12);
    assert!(sys.minuscule_coweights().is_empty());
    // quasiminuscule coweight is the coroot of the highest root
    let theta = sys.highest_root();
    assert_eq!(sys.quasiminuscule_coweight(), sys.coroot(&theta));
    // its W-orbit has 6 elements
    assert_eq!(sys.weyl_orbit(&sys.quasiminuscule_coweight()).len(), 6);
}

#[test]
fn a3_and_d3() {
    let a3 = build_root_system(Family::A, 3, &MultSpec::uniform(1)).unwrap();
    assert_eq!(a3.weyl.len(), 24);
    assert_eq!(a3.positive_roots.len(), 6);
    assert_eq!(a3.minuscule_coweights().len(), 3);
    let d3 = build_root_system(Family::D, 3, &MultSpec::uniform(1)).unwrap();
    assert_eq!(d3.weyl.len(), 24);
    assert_eq!(d3.positive_roots.len(), 6);
}

#[test]
fn simple_reflection_moves_rho_check() {
    // s_i rho^vee = rho^vee - m_i alpha_i^vee
    for (fam, rank, spec) in [
        (Family::A, 2, MultSpec::uniform(2)),
        (Family::B, 2, MultSpec::short_long(2, 1)),
        (Family::G, 2, MultSpec::short_long(1, 2)),
    ] {
        let sys = build_root_system(fam, rank, &spec).unwrap();
        let rc = sys.rho_check(&sys.mults);
        for a in sys.simple_roots.clone() {
            let m = sys.mult_of_root(&a);
            // reflect rc in a
            let k = sys.pair2(&rc, &sys.coroot(&a)) / r(2, 1);
            let mut img = rc.clone();
            for (j, c) in a.iter().enumerate() {
                let delta = Rat::new(*k.numer() * c, *k.denom());
                img[j] -= delta.to_integer();
            }
            let expected: Vec<i64> = rc
                .iter()
                .zip(&sys.coroot(&a))
                .map(|(x, y)| {
                    let d = Rat::from_integer(*y) * m;
                    assert!(d.is_integer());
                    x - d.to_integer()
                })
                .collect();
            assert_eq!(img, expected);
            // and (alpha_i, rho^vee) = m_i
            assert_eq!(sys.pair2(&a, &rc) / r(2, 1), m);
        }
    }
}

#[test]
fn ba_support_shapes() {
    // A1 m=1: N = {-1, 0, 1} as a hull with lattice points {-1, 1} in the
    // effective coset; vertices +-1.
    let a1 = build_root_system(Family::A, 1, &MultSpec::uniform(1)).unwrap();
    let (n, _nv) = a1.ba_support().unwrap();
    assert_eq!(
        n.points.iter().cloned().collect::<Vec<_>>(),
        vec![vec![-1], vec![1]]
    );
    assert_eq!(n.vertices.len(), 2);

    // m = 0: single point 0
    let a1m0 = build_root_system(Family::A, 1, &MultSpec::uniform(0)).unwrap();
    let (n0, _) = a1m0.ba_support().unwrap();
    assert_eq!(n0.points.iter().cloned().collect::<Vec<_>>(), vec![vec![0]]);

    // A2 m=1: hexagon with 6 vertices W rho^vee plus the center
    let a2 = build_root_system(Family::A, 2, &MultSpec::uniform(1)).unwrap();
    let (n2, _) = a2.ba_support().unwrap();
    assert_eq!(n2.points.len(), 7);
    assert_eq!(n2.vertices.len(), 6);
    let orbit = a2.weyl_orbit(&a2.rho_check(&a2.mults));
    assert_eq!(
        n2.vertices.iter().cloned().collect::<Vec<_>>(),
        orbit
    );
    // vertex count matches |W| / |Stab(rho^vee)|
    assert_eq!(
        n2.vertices.len(),
        a2.weyl.len() / a2.stabilizer_size(&a2.rho_check(&a2.mults))
    );
}

#[test]
fn deformed_examples() {
    // n=1, m=1: rho = (1/2, -1/2)
    let d = deformed_system(1, 1).unwrap();
    assert_eq!(d.rho(), vec![1, -1]); // scaled by denom = 2
    assert_eq!(d.positive_roots.len(), 1);

    // n=2, m=2: (f3, f3) = 2 via the gram matrix
    let d2 = deformed_system(2, 2).unwrap();
    let f3 = d2.unit(2);
    assert_eq!(d2.lattice.pair2(&f3, &f3), r(4, 1)); // 2(f3,f3) = 2m = 4

    // n=2, m=1: pairings match the A2 pattern embedded in R^3
    let d1 = deformed_system(2, 1).unwrap();
    for a in &d1.positive_roots {
        assert_eq!(d1.lattice.pair2(a, a), r(4, 1)); // 2(a,a) = 4, all roots norm 2
    }

    // vertices: (n+1)! permutations give distinct vertices; identity gives rho
    let verts = d2.vertices();
    assert_eq!(verts.len(), 6);
    assert!(verts.contains(&d2.rho()));
    let neg_rho: Vec<i64> = d2.rho().iter().map(|c| -c).collect();
    assert!(verts.contains(&neg_rho));

    // m=1 data coincides with the GL A-type weight configuration
    let gl = build_root_system(Family::AGl, 3, &MultSpec::uniform(1)).unwrap();
    let mut gl_pos: Vec<Vec<Rat>> = gl
        .positive_roots
        .iter()
        .map(|e| gl.lattice.exp_to_ratios(e))
        .collect();
    let mut def_pos: Vec<Vec<Rat>> = d1
        .positive_roots
        .iter()
        .map(|e| d1.lattice.exp_to_ratios(e))
        .collect();
    gl_pos.sort();
    def_pos.sort();
    assert_eq!(gl_pos, def_pos);
}

#[test]
fn gl_realization() {
    let gl = build_root_system(Family::AGl, 3, &MultSpec::uniform(1)).unwrap();
    assert_eq!(gl.weyl.len(), 6);
    assert_eq!(gl.positive_roots.len(), 3);
    // every pi_s = e_1 + ... + e_s is minuscule: pairings with roots in [-1,1]
    for pi in &gl.fundamental_coweights {
        for a in &gl.roots {
            let p = gl.pair2(pi, a) / r(2, 1);
            assert!(p >= r(-1, 1) && p <= r(1, 1));
        }
    }
}

#[test]
fn dominant_rep_and_orbits() {
    let sys = build_root_system(Family::B, 2, &MultSpec::short_long(1, 1)).unwrap();
    for v in [vec![2, 0], vec![-2, 2], vec![-4, -2]] {
        let rep = sys.dominant_rep(&v);
        assert!(sys.is_dominant(&rep));
        assert!(sys.weyl_orbit(&v).contains(&rep));
    }
}
