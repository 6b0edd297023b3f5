use num_bigint::BigUint;
use proptest::prelude::*;
use tamesc_core::exact::{linalg, rat, Rational};
use tamesc_core::matrix::*;
use tamesc_core::residue::ResidueRing;
use tamesc_core::TameParams;

fn trace_zero_mats(m: u64) -> Vec<MatMod> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                out.push(MatMod::from_rows(&[vec![a as i64, b as i64], vec![c as i64, -(a as i64)]], m));
            }
        }
    }
    out
}

#[test]
fn sl2_orders() {
    assert_eq!(group_order(2, 3, 1), BigUint::from(24u32));
    assert_eq!(group_order(2, 3, 2), BigUint::from(648u32));
    assert_eq!(group_order(2, 3, 4), BigUint::from(472392u32));
    for r in 1..=3 {
        let g = sl_enumerate(2, 3, r, DEFAULT_BUDGET).unwrap();
        assert_eq!(BigUint::from(g.order()), group_order(2, 3, r));
    }
    let g = sl_enumerate(2, 5, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.order(), 120);
    let g = sl_enumerate(3, 3, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.order(), 5616);
}

#[test]
fn level_four_kernel_spot_check() {
    // kernel of SL2(Z/81) -> SL2(Z/27) is the trace-zero matrices mod 3
    let g = sl_enumerate(2, 3, 3, DEFAULT_BUDGET).unwrap();
    let kernel: Vec<_> = trace_zero_mats(3)
        .iter()
        .map(|x| MatMod::identity(2, 81).add(&x.with_modulus(81).scale(27)))
        .collect();
    assert!(kernel.iter().all(|h| h.det() == 1));
    assert_eq!(kernel.len(), 27);
    assert_eq!(BigUint::from(g.order() * 27), group_order(2, 3, 4));
}

#[test]
fn budget_is_enforced() {
    assert!(sl_enumerate(3, 3, 2, DEFAULT_BUDGET).is_err());
}

#[test]
fn beta_unramified_quadratic() {
    let b = build_beta(&TameParams::new(3, 1, 2, 2)).unwrap();
    assert_eq!(b.charpoly, vec![-2, 0, 1]);
    assert_eq!(b.beta.lift(), vec![vec![0, 2], vec![1, 0]]);
    assert_eq!(b.beta.trace(), 0);
}

#[test]
fn beta_ramified_quadratic() {
    let b = build_beta(&TameParams::new(3, 2, 1, 2)).unwrap();
    assert_eq!(b.charpoly, vec![3, 0, 1]);
    assert_eq!(b.beta.lift(), vec![vec![0, -3], vec![1, 0]]);
}

#[test]
fn beta_conditions_hold_across_instances() {
    for (p, e, f) in [(3, 1, 2), (3, 2, 1), (5, 1, 2), (5, 2, 1), (7, 3, 1), (5, 1, 3), (3, 2, 2), (5, 4, 1)] {
        let params = TameParams::new(p, e, f, 2);
        let b = build_beta(&params).unwrap();
        let n = e * f;
        assert_eq!(b.charpoly.len(), n + 1);
        assert_eq!(b.charpoly[n - 1], 0, "trace zero at {p} {e} {f}");
        assert!(shintani_conditions(&b.charpoly, p, e, f));
        assert_eq!(integer_charpoly(&b.beta_int()), b.charpoly);
        // the ring isomorphism respects products and sends b to beta
        let ring = &b.ring;
        assert_eq!(b.to_matrix(&b.element), b.beta);
        let xs: Vec<Vec<u64>> = (0..20u64).map(|k| ring.decode((k * 7919 + 13) % ring.size() as u64)).collect();
        for x in &xs {
            assert_eq!(b.from_matrix(&b.to_matrix(x)), *x);
            for y in xs.iter().take(5) {
                assert_eq!(b.to_matrix(&ring.mul(x, y)), b.to_matrix(x).mul(&b.to_matrix(y)));
            }
        }
    }
}

#[test]
fn beta_search_rejects_bad_params() {
    assert!(build_beta(&TameParams::new(3, 3, 1, 2)).is_err());
    assert!(build_beta(&TameParams::new(4, 1, 2, 2)).is_err());
}

#[test]
fn congruence_exp_examples() {
    let x0 = MatMod::zero(2, 3);
    assert!(congruence_exp(&x0, 3, 1, 2).unwrap().is_identity());
    let x = MatMod::from_rows(&[vec![1, 0], vec![0, -1]], 3);
    let h = congruence_exp(&x, 3, 1, 2).unwrap();
    assert_eq!(h, MatMod::from_rows(&[vec![4, 0], vec![0, 7]], 9));
    assert_eq!(h.det(), 1);
    assert_eq!(congruence_log(&h, 3, 1, 2).unwrap(), x);
    let bad = MatMod::from_rows(&[vec![1, 0], vec![0, 0]], 3);
    assert!(congruence_exp(&bad, 3, 1, 2).is_err());
    assert!(congruence_exp(&x, 3, 1, 3).is_err());
}

fn check_exp_isomorphism(p: u64, r: u32) {
    let (l, lp) = level_split(r);
    let xs = trace_zero_mats(p.pow(lp));
    let images: Vec<MatMod> = xs.iter().map(|x| congruence_exp(x, p, l, r).unwrap()).collect();
    let mut codes: Vec<u64> = images.iter().map(MatMod::encode).collect();
    codes.sort_unstable();
    codes.dedup();
    assert_eq!(codes.len(), xs.len());
    let g = sl_enumerate(2, p, r, DEFAULT_BUDGET).unwrap();
    let pl = p.pow(l);
    let kernel = g.filter(|h| {
        let d = h.sub(&MatMod::identity(2, h.modulus()));
        d.entries().iter().all(|v| v % pl == 0)
    });
    assert_eq!(kernel.order(), xs.len());
    for (x, hx) in xs.iter().zip(&images) {
        for (y, hy) in xs.iter().zip(&images) {
            assert_eq!(congruence_exp(&x.add(y), p, l, r).unwrap(), hx.mul(hy));
        }
    }
}

#[test]
fn congruence_exp_is_isomorphism() {
    check_exp_isomorphism(3, 2);
    check_exp_isomorphism(3, 3);
}

#[test]
fn odd_level_exp_lands_in_sl() {
    let (p, r, l) = (3u64, 3u32, 2u32);
    let m = p.pow(r);
    let pl1 = p.pow(l - 1);
    for x in trace_zero_mats(9) {
        let h = congruence_exp_odd(&x, p, l, r).unwrap();
        assert_eq!(h.det(), 1);
        let d = h.sub(&MatMod::identity(2, m));
        assert!(d.entries().iter().all(|v| v % pl1 == 0));
    }
    assert!(congruence_exp_odd(&MatMod::zero(2, 27), 3, 1, 2).is_err());
}

#[test]
fn centralizer_orders() {
    let b2 = build_beta(&TameParams::new(3, 1, 2, 2)).unwrap();
    let b1 = b2.at_level(1).unwrap();
    let (c1, a1) = centralizer_beta(&b1);
    assert_eq!(c1.order(), 4);
    assert_eq!(a1.order(), 4);
    let (c2, a2) = centralizer_beta(&b2);
    assert_eq!(c2.order(), 12);
    assert_eq!(a2.order(), 12);
    for b in [&b1, &b2] {
        let (c, _) = centralizer_beta(b);
        assert!(c.iter().all(|g| b.commutes(&g) && g.det() == 1));
        let g = sl_enumerate(2, 3, b.r, DEFAULT_BUDGET).unwrap();
        let cen = g.filter(|x| b.commutes(x));
        assert_eq!(cen.order(), c.order());
        assert!(cen.iter().all(|x| c.contains(&x)));
    }
}

#[test]
fn centralizer_matches_norm_one_units() {
    for (p, e, f, r) in [(3, 2, 1, 2), (5, 1, 2, 2), (5, 2, 1, 2), (3, 2, 1, 3)] {
        let b = build_beta(&TameParams::new(p, e, f, r)).unwrap();
        let (c, _) = centralizer_beta(&b);
        let ring = &b.ring;
        let norm_one = ring
            .unit_codes()
            .into_iter()
            .filter(|&u| ring.norm(&ring.decode(u)).unwrap() == 1)
            .count();
        assert_eq!(c.order(), norm_one);
        let g = sl_enumerate(2, p, r, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.filter(|x| b.commutes(x)).order(), c.order());
    }
}

#[test]
fn commutant_is_polynomial_in_beta() {
    for (e, f) in [(1, 2), (2, 1)] {
        let b = build_beta(&TameParams::new(3, e, f, 2)).unwrap();
        let m = 9;
        let mut count = 0;
        for code in 0..m * m * m * m {
            let x = MatMod::decode(2, m, code);
            if b.commutes(&x) {
                count += 1;
                let c = x.column(0);
                let poly = poly_at_matrix(&c, &b.beta);
                assert_eq!(poly, x);
            }
        }
        assert_eq!(count, 81);
    }
}

fn q(rows: &[&[(i64, i64)]]) -> RatMatrix {
    rows.iter().map(|r| r.iter().map(|&(a, b)| rat(a, b)).collect()).collect()
}

#[test]
fn cartan_examples() {
    let id: RatMatrix = linalg::identity(3);
    assert_eq!(cartan_decompose(&id, 3).unwrap().m, vec![0, 0, 0]);
    let d = q(&[&[(9, 1), (0, 1)], &[(0, 1), (1, 9)]]);
    let c = cartan_decompose(&d, 3).unwrap();
    assert_eq!(c.m, vec![2, -2]);
    assert_eq!(c.product(3), d);
    let u = q(&[&[(1, 1), (1, 3)], &[(0, 1), (1, 1)]]);
    let c = cartan_decompose(&u, 3).unwrap();
    assert_eq!(c.m, vec![1, -1]);
    assert_eq!(c.product(3), u);
    assert!(is_integral(&c.k1, 3) && is_integral(&c.k2, 3));
    let singular = q(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
    assert!(cartan_decompose(&singular, 3).is_err());
}

fn elementary_product(n: usize, ops: &[(usize, usize, i64, i64)], p: i64) -> RatMatrix {
    let mut g: RatMatrix = linalg::identity(n);
    for &(i, j, a, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            // diag(p^k, p^-k) on (i, i+1)
            let i2 = (i + 1) % n;
            let s = Rational::from_integer(p.into()).pow(k as i32);
            let mut e: RatMatrix = linalg::identity(n);
            e[i][i] = s.clone();
            e[i2][i2] = s.recip();
            g = linalg::mat_mul(&g, &e);
        } else {
            let mut e: RatMatrix = linalg::identity(n);
            e[i][j] = rat(a, 1) * Rational::from_integer(p.into()).pow(k as i32);
            g = linalg::mat_mul(&g, &e);
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn cartan_round_trip(
        n in 2usize..=3,
        p in prop::sample::select(vec![3i64, 5, 7]),
        ops in prop::collection::vec((0usize..3, 0usize..3, -4i64..=4, -2i64..=2), 1..8),
    ) {
        let g = elementary_product(n, &ops, p);
        let c = cartan_decompose(&g, p as u64).unwrap();
        prop_assert_eq!(c.product(p as u64), g);
        prop_assert!(c.m.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(c.m.iter().sum::<i64>(), 0);
        prop_assert!(is_integral(&c.k1, p as u64) && is_integral(&c.k2, p as u64));
        prop_assert_eq!(linalg::determinant(&c.k1), rat(1, 1));
        prop_assert_eq!(linalg::determinant(&c.k2), rat(1, 1));
    }
}

#[test]
fn class_counts() {
    let g = sl_enumerate(2, 3, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.classes().count(), 7);
    assert_eq!(g.classes().sizes.iter().sum::<usize>(), 24);
    let g = sl_enumerate(2, 5, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.classes().count(), 9);
    let b = build_beta(&TameParams::new(3, 1, 2, 2)).unwrap();
    let (c, _) = centralizer_beta(&b);
    // abelian: every class is a singleton
    assert_eq!(c.classes().count(), c.order());
}
