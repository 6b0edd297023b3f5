use tamesc_core::clifford::*;
use tamesc_core::exact::{linalg, rat, Cyclotomic, Phase, RationalFunction};
use tamesc_core::matrix::{build_beta, MatMod, DEFAULT_BUDGET};
use tamesc_core::TameParams;

fn instance(p: u64, e: usize, f: usize, r: u32) -> CliffordInstance {
    CliffordInstance::new(&TameParams::new(p, e, f, r), DEFAULT_BUDGET).unwrap()
}

#[test]
fn isotropy_at_level_two() {
    let c = instance(3, 1, 2, 2);
    assert_eq!(c.index(), 6);
    assert!(verify_isotropy(&c.psi, &c.group, &c.isotropy));
    let pk = 3u64.pow(c.psi.lp);
    assert!(c.group.iter().filter(|g| is_congruent_to_one(g, pk)).all(|g| c.isotropy.contains(&g)));
    assert!(verify_product_decomposition(&c.psi, &c.group, &c.isotropy, &c.centralizer));
}

#[test]
fn isotropy_at_level_three() {
    let c = instance(3, 1, 2, 3);
    assert!(verify_isotropy(&c.psi, &c.group, &c.isotropy));
    assert!(verify_product_decomposition(&c.psi, &c.group, &c.isotropy, &c.centralizer));
    assert_eq!(c.index(), 6);
}

#[test]
fn psi_is_a_character() {
    let c = instance(3, 1, 2, 2);
    let ker = c.psi.kernel_elements();
    assert_eq!(ker.len(), 27);
    for a in &ker {
        for b in &ker {
            let ab = a.mul(b);
            assert_eq!(c.psi.value(&ab).unwrap(), c.psi.value(a).unwrap() + c.psi.value(b).unwrap());
        }
    }
    assert!(c.psi.value(&MatMod::from_rows(&[vec![1, 1], vec![0, 1]], 9)).is_none());
}

#[test]
fn theta_extension_count() {
    let c = instance(3, 1, 2, 2);
    let thetas = c.thetas();
    let meet = centralizer_kernel(&c.centralizer, 3);
    assert_eq!(meet.len(), 3);
    assert_eq!(thetas.len(), c.centralizer.order() / meet.len());
    assert_eq!(thetas.len(), 4);
    for t in &thetas {
        assert!(t.agrees && theta_agrees(t, &c.psi, &c.centralizer, &c.structure));
    }
    let bad = ThetaChar::trivial(&c.structure);
    assert!(!theta_agrees(&bad, &c.psi, &c.centralizer, &c.structure));
    assert!(c.sigma(&bad, Polarization::Standard).is_err());
}

#[test]
fn sigma_even_is_a_character() {
    let c = instance(3, 1, 2, 2);
    for theta in c.thetas() {
        let s = c.sigma(&theta, Polarization::Standard).unwrap();
        assert_eq!(s.dim, 1);
        let val = |z: &MatMod| match s.trace(z).unwrap() {
            CharValue::Root(ph) => ph,
            CharValue::Value(_) => unreachable!(),
        };
        let elems: Vec<MatMod> = c.isotropy.iter().collect();
        let vals: Vec<Phase> = elems.iter().map(val).collect();
        for (a, va) in elems.iter().zip(&vals) {
            for (b, vb) in elems.iter().zip(&vals) {
                assert_eq!(val(&a.mul(b)), *va + *vb);
            }
        }
        for h in c.psi.kernel_elements() {
            assert_eq!(Some(val(&h)), c.psi.value(&h));
        }
    }
}

#[test]
fn symplectic_form_properties() {
    for (p, e, f) in [(3, 1, 2), (3, 2, 1), (5, 1, 2), (7, 3, 1), (5, 1, 3), (3, 2, 2)] {
        let beta = build_beta(&TameParams::new(p, e, f, 3)).unwrap();
        for pol in [Polarization::Standard, Polarization::Reversed] {
            let h = HeisenbergData::new(&beta, pol).unwrap();
            let n = e * f;
            assert_eq!(h.dim_v(), n * (n - 1));
            assert!(h.is_nondegenerate() && h.is_alternating());
            // the symplectic coordinates reproduce the trace form
            let dv = h.dim_v();
            for i in 0..dv {
                for j in 0..dv {
                    let (mut u, mut v) = (vec![0; dv], vec![0; dv]);
                    u[i] = 1;
                    v[j] = 1;
                    let (su, sv) = (h.section(&u), h.section(&v));
                    assert_eq!(h.form(su.entries(), sv.entries()), h.pairing(&u, &v));
                }
            }
        }
    }
}

#[test]
fn heisenberg_law() {
    let beta = build_beta(&TameParams::new(3, 1, 2, 3)).unwrap();
    let h = HeisenbergData::new(&beta, Polarization::Standard).unwrap();
    assert_eq!(h.model_dim(), 3);
    let vecs: Vec<Vec<u64>> = (0..9).map(|i| vec![i % 3, i / 3]).collect();
    for u in &vecs {
        for v in &vecs {
            let sum: Vec<u64> = u.iter().zip(v).map(|(a, b)| (a + b) % 3).collect();
            let lhs = h.schrodinger(u).mul(&h.schrodinger(v));
            let half = Phase::new((2 * h.pairing(u, v) % 3) as i64, 3);
            assert_eq!(lhs, h.schrodinger(&sum).scale(half));
        }
    }
}

fn odd_instance() -> (CliffordInstance, Vec<ThetaChar>) {
    let c = instance(3, 1, 2, 3);
    let t = c.thetas();
    (c, t)
}

#[test]
fn pi_theta_is_a_representation() {
    let (c, thetas) = odd_instance();
    let s = c.sigma(&thetas[1], Polarization::Standard).unwrap();
    let h: Vec<MatMod> = c.group.iter().filter(|g| is_congruent_to_one(g, 3)).collect();
    assert_eq!(h.len(), 729);
    let pis: Vec<Monomial> = h.iter().map(|x| s.pi_theta(x).unwrap()).collect();
    for (a, pa) in h.iter().zip(&pis).step_by(7) {
        for (b, pb) in h.iter().zip(&pis) {
            assert_eq!(s.pi_theta(&a.mul(b)).unwrap(), pa.mul(pb));
        }
    }
    // restriction to G(p^l/p^r) is psi_beta times the identity
    for k in c.psi.kernel_elements() {
        assert_eq!(s.pi_theta(&k).unwrap().as_scalar(), c.psi.value(&k));
    }
}

#[test]
fn sigma_odd_intertwines() {
    let (c, thetas) = odd_instance();
    for theta in &thetas {
        let s = c.sigma(theta, Polarization::Standard).unwrap();
        assert_eq!(s.dim, 3);
        assert!(s.det_normalized);
        let gens: Vec<MatMod> = c.centralizer.iter().collect();
        let hs: Vec<MatMod> = c.group.iter().filter(|g| is_congruent_to_one(g, 3)).step_by(13).collect();
        for g in &gens {
            let gi = g.inverse(3).unwrap();
            let ug = s.matrix(g).unwrap();
            for h in &hs {
                // sigma(g) pi(g^-1 h g) = pi(h) sigma(g)
                let lhs = linalg::mat_mul(&ug, &s.matrix(&gi.mul(h).mul(g)).unwrap());
                let rhs = linalg::mat_mul(&s.matrix(h).unwrap(), &ug);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn sigma_odd_is_a_representation() {
    let (c, thetas) = odd_instance();
    let s = c.sigma(&thetas[2], Polarization::Standard).unwrap();
    let elems: Vec<MatMod> = c.isotropy.iter().collect();
    let n = elems.len();
    for i in 0..150 {
        let a = &elems[(i * 7919) % n];
        let b = &elems[(i * 104729 + 17) % n];
        let lhs = s.matrix(&a.mul(b)).unwrap();
        let rhs = linalg::mat_mul(&s.matrix(a).unwrap(), &s.matrix(b).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn sigma_odd_independent_of_polarization() {
    let (c, thetas) = odd_instance();
    let theta = &thetas[0];
    let s1 = c.sigma(theta, Polarization::Standard).unwrap();
    let s2 = c.sigma(theta, Polarization::Reversed).unwrap();
    for z in c.isotropy.iter().step_by(5) {
        assert_eq!(s1.trace(&z).unwrap().to_cyclotomic(), s2.trace(&z).unwrap().to_cyclotomic());
    }
}

#[test]
fn delta_level_two_unramified() {
    let c = instance(3, 1, 2, 2);
    for theta in c.thetas() {
        let d = c.delta(&theta).unwrap();
        assert_eq!(d.dim, 6);
        assert!(d.irreducible);
        assert_eq!(d.multiplicity, rat(1, 1));
        assert!(d.orbit_consistent);
        assert_eq!(d.dim, d.index * d.sigma_dim);
        assert_eq!(648 % d.dim, 0);
    }
}

#[test]
fn delta_level_three_unramified() {
    let (c, thetas) = odd_instance();
    let d = c.delta(&thetas[0]).unwrap();
    assert_eq!(d.dim, 18);
    assert!(d.irreducible);
    assert_eq!(d.multiplicity, rat(3, 1));
    assert!(d.orbit_consistent);
    assert_eq!(17496 % d.dim, 0);
}

#[test]
fn delta_level_four_ramified() {
    let c = instance(3, 2, 1, 4);
    let thetas = c.thetas();
    assert!(!thetas.is_empty());
    let d = c.delta(&thetas[0]).unwrap();
    assert_eq!(d.dim, 36);
    assert!(d.irreducible);
    assert_eq!(d.multiplicity, rat(1, 1));
    assert_eq!(472392 % d.dim, 0);
}

#[test]
fn dimension_formula() {
    assert_eq!(dim_delta_value(&TameParams::new(3, 1, 2, 2), 1).unwrap(), 6);
    assert_eq!(dim_delta_value(&TameParams::new(3, 1, 2, 3), 1).unwrap(), 18);
    assert_eq!(dim_delta_value(&TameParams::new(3, 2, 1, 4), 2).unwrap(), 36);
    assert!(dim_delta_value(&TameParams::new(3, 2, 1, 4), 5).is_err());
    for n in 2..=4usize {
        let f = dim_delta_formula(&TameParams::symbolic(1, n, 2, 0, 0), 1).unwrap();
        let mut expect = RationalFunction::var_pow((n * (n - 1)) as i64);
        for k in 1..n as i64 {
            expect = &expect * &RationalFunction::one_minus_inv_pow(k);
        }
        assert!(f.equals(&expect));
    }
}

#[test]
fn cyclotomic_values_are_exact() {
    let c = instance(3, 1, 2, 2);
    let d = c.delta(&c.thetas()[0]).unwrap();
    let total: Cyclotomic = d.class_values.iter().fold(Cyclotomic::zero(), |a, b| &a + b);
    assert!(total.order() >= 1);
}
