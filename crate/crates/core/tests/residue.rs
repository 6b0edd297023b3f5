use tamesc_core::residue::{
    norm_index, norm_trace, teichmuller, unit_group, BaseRing, GaloisRing, ResidueRing, TameRing,
};

#[test]
fn base_ring_units_are_cyclic() {
    let r = BaseRing::new(3, 2).unwrap();
    let u = unit_group(&r);
    assert_eq!(u.factors, vec![6]);
    assert_eq!(u.order(), 6);
}

#[test]
fn galois_ring_unit_count_matches_enumeration() {
    for &(p, r, f) in &[(3, 2, 2), (3, 1, 3), (5, 2, 2), (3, 3, 2)] {
        let gr = GaloisRing::new(p, r, f).unwrap();
        let q = p.pow(f as u32);
        let expected = p.pow(r * f as u32) - p.pow((r - 1) * f as u32);
        assert_eq!(gr.unit_codes().len() as u64, expected);
        assert_eq!(gr.unit_count(), expected);
        let u = unit_group(&gr);
        assert_eq!(u.order(), expected);
        // The Teichmuller part is cyclic of order q - 1.
        assert_eq!(u.exponent() % (q - 1), 0);
    }
    assert_eq!(GaloisRing::new(3, 2, 2).unwrap().unit_codes().len(), 72);
}

#[test]
fn unit_group_generators_have_stated_orders() {
    let gr = GaloisRing::new(3, 2, 2).unwrap();
    let u = unit_group(&gr);
    for (&g, &d) in u.generators.iter().zip(&u.factors) {
        assert_eq!(gr.unit_order(&gr.decode(g)), d);
    }
    for w in u.factors.windows(2) {
        assert_eq!(w[1] % w[0], 0);
    }
}

#[test]
fn frobenius_has_order_f() {
    let gr = GaloisRing::new(3, 3, 2).unwrap();
    let t = gr.t();
    let ft = gr.frobenius(&t);
    assert_ne!(ft, t);
    assert_eq!(gr.frobenius(&ft), t);
    // Frobenius is a ring map
    for a in 0..gr.size() {
        let x = gr.decode(a);
        let y = gr.decode((a * 7 + 11) % gr.size());
        assert_eq!(gr.frobenius(&gr.mul(&x, &y)), gr.mul(&gr.frobenius(&x), &gr.frobenius(&y)));
    }
}

#[test]
fn teichmuller_lifts() {
    let gr = GaloisRing::new(3, 2, 1).unwrap();
    assert_eq!(teichmuller(&gr, &[1]).unwrap(), vec![1]);
    assert_eq!(teichmuller(&gr, &[2]).unwrap(), vec![8]);
    let gr = GaloisRing::new(5, 3, 2).unwrap();
    let q1 = 24;
    for c in gr.unit_codes().into_iter().step_by(37) {
        let x = gr.decode(c);
        let t = teichmuller(&gr, &x).unwrap();
        assert_eq!(gr.pow(&t, q1), gr.one());
        assert!(t.iter().zip(&x).all(|(a, b)| (a + 5 * 125 - b) % 5 == 0));
    }
}

#[test]
fn ramified_unit_group_order() {
    let ring = TameRing::new(3, 4, 2, 1, -1, 0).unwrap();
    let units = ring.unit_codes();
    assert_eq!(units.len() as u64, 2 * 3u64.pow(7));
    assert_eq!(unit_group(&ring).order(), 2 * 3u64.pow(7));
}

#[test]
fn norms_and_traces() {
    let ring = TameRing::new(3, 3, 2, 1, -1, 0).unwrap();
    let m = 27;
    // base elements
    for a in 0..m {
        let x = ring.scalar(a as i64);
        assert_eq!(ring.norm(&x).unwrap(), a * a % m);
    }
    assert_eq!(ring.trace(&ring.y()).unwrap(), 0);
    // (a + b y)(a - b y) = a^2 + 3 b^2 when y^2 = -3
    for a in 0..m {
        for b in 0..m {
            let x = ring.add(&ring.scalar(a as i64), &ring.scale(&ring.y(), b));
            let (n, t) = norm_trace(&ring, &x).unwrap();
            assert_eq!(n, (a * a + 3 * b * b) % m);
            assert_eq!(t, 2 * a % m);
        }
    }
}

#[test]
fn norm_is_multiplicative_and_trace_additive() {
    for ring in [
        TameRing::new(3, 2, 1, 2, -1, 0).unwrap(),
        TameRing::new(3, 2, 2, 1, -1, 0).unwrap(),
        TameRing::new(3, 1, 2, 2, -1, 1).unwrap(),
        TameRing::new(5, 1, 4, 1, 2, 0).unwrap(),
    ] {
        let size = ring.size();
        let step = (size / 60).max(1);
        for a in (0..size).step_by(step as usize) {
            for b in (0..size).step_by((step * 3 + 1) as usize) {
                let (x, y) = (ring.decode(a), ring.decode(b));
                let xy = ring.mul(&x, &y);
                let m = ring.modulus();
                assert_eq!(ring.norm(&xy).unwrap(), ring.norm(&x).unwrap() * ring.norm(&y).unwrap() % m);
                assert_eq!(
                    ring.trace(&ring.add(&x, &y)).unwrap(),
                    (ring.trace(&x).unwrap() + ring.trace(&y).unwrap()) % m
                );
            }
        }
    }
}

#[test]
fn galois_action_relations() {
    // sigma0 tau0 sigma0^{-1} = tau0^p on generators, tau0^e = 1, sigma0^f = tau0^c
    let ring = TameRing::new(3, 2, 4, 2, -1, 1).unwrap();
    let (e, f) = (4usize, 2usize);
    for x in [ring.y(), ring.t(), ring.add(&ring.y(), &ring.t())] {
        // tau0^e
        assert_eq!(ring.act(e, 0, &x).unwrap(), x);
        // sigma0 tau0 = tau0^m sigma0 with m = p mod e
        let lhs = ring.act(0, 1, &ring.act(1, 0, &x).unwrap()).unwrap();
        let rhs = ring.act(3 % e, 1, &x).unwrap();
        assert_eq!(lhs, rhs);
        // sigma0^f = tau0^c with c = c'(1 + p) mod e
        let c = (1 + 3) % e;
        assert_eq!(ring.act(0, f, &x).unwrap(), ring.act(c, 0, &x).unwrap());
    }
}

#[test]
fn norm_indices() {
    for f in 1..=3 {
        let ring = TameRing::new(3, 2, 1, f, -1, 0).unwrap();
        assert_eq!(norm_index(&ring).unwrap(), 1);
    }
    assert_eq!(norm_index(&TameRing::new(3, 2, 2, 1, -1, 0).unwrap()).unwrap(), 2);
    assert_eq!(norm_index(&TameRing::new(5, 2, 4, 1, 2, 0).unwrap()).unwrap(), 4);
}

#[test]
fn non_galois_configuration_is_rejected() {
    // 4 does not divide 3 - 1
    assert!(TameRing::new(3, 2, 4, 1, -1, 0).is_err());
    let ring = TameRing::without_action(3, 2, 4, 1, -1).unwrap();
    assert!(ring.norm(&ring.one()).is_err());
}

#[test]
fn y_is_nilpotent_of_index_er() {
    let ring = TameRing::new(3, 3, 2, 1, -1, 0).unwrap();
    let y = ring.y();
    assert_ne!(ring.pow(&y, 5), ring.zero());
    assert_eq!(ring.pow(&y, 6), ring.zero());
    assert_eq!(ring.valuation(&ring.pow(&y, 5)), 5);
}
