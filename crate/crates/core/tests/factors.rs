use std::time::Instant;

use tamesc_core::exact::{int, rat, RationalFunction};
use tamesc_core::factors::*;
use tamesc_core::TameParams;

fn q() -> RationalFunction {
    RationalFunction::var()
}

fn omq(k: i64) -> RationalFunction {
    RationalFunction::one_minus_inv_pow(k)
}

#[test]
fn principal_parameter() {
    let p2 = principal_parameter_factors(2).unwrap();
    assert_eq!(p2.kernel_dim, 1);
    assert_eq!(p2.eps_exponent, 1);
    assert_eq!(p2.gamma_abs.eval_int(3).unwrap(), rat(9, 4));
    for n in 2..=6usize {
        let p = principal_parameter_factors(n).unwrap();
        assert_eq!(p.kernel_dim, n - 1);
        assert_eq!(p.frobenius_weights, (1..n as i64).map(|k| -k).collect::<Vec<_>>());
        assert_eq!(p.eps_exponent, (n * (n - 1) / 2) as i64);
        let l0 = (1..n as i64).fold(RationalFunction::one(), |a, k| &a * &omq(k));
        assert!(p.l_at_0.inv().unwrap().equals(&l0));
        let l1 = (1..n as i64).fold(RationalFunction::one(), |a, k| &a * &omq(k + 1));
        assert!(p.l_at_1.inv().unwrap().equals(&l1));
        let closed = &(&RationalFunction::var_pow(p.eps_exponent) * &omq(1)) / &omq(n as i64);
        assert!(p.gamma_abs.equals(&closed));
    }
    assert!(principal_parameter_factors(1).is_err());
}

#[test]
fn conductor_examples() {
    let a = artin_conductor(&TameParams::new(3, 1, 2, 2), None).unwrap();
    assert_eq!(a.total, int(4));
    assert_eq!(a.bands[0].dim_fixed, 1);
    let a = artin_conductor(&TameParams::new(3, 2, 1, 4), Some(3)).unwrap();
    assert_eq!(a.total, int(8));
    let dims: Vec<usize> = a.bands.iter().map(|b| b.dim_fixed).collect();
    assert_eq!(dims, vec![0, 1, 3]);
    assert_eq!(a.bands[1].weight, rat(5, 2));
    assert_eq!(artin_conductor(&TameParams::new(3, 2, 1, 4), None).unwrap().total, int(8));
    // e = 1, f = n: the n - 1 band is empty
    let a = artin_conductor(&TameParams::symbolic(1, 3, 2, 0, 0), None).unwrap();
    assert_eq!(a.total, int(12));
    assert_eq!(a.bands.iter().map(|b| b.dim_fixed).collect::<Vec<_>>(), vec![2, 2, 8]);
}

#[test]
fn conductor_sum_everywhere() {
    let start = Instant::now();
    for n in 2..=8usize {
        for e in (1..=n).filter(|e| n % e == 0) {
            let f = n / e;
            for r in 2..=12u32 {
                let params = TameParams::symbolic(e, f, r, 1, 0);
                let expect = int((r as usize * n * (n - 1)) as i64);
                for q in [None, Some(3), Some(5), Some(7)] {
                    let a = artin_conductor(&params, q).unwrap();
                    assert_eq!(a.total, expect, "n={n} e={e} r={r} q={q:?}");
                    assert!(a.bands.iter().all(|b| [f - 1, n - 1, f * e * e - 1, n * n - 1].contains(&b.dim_fixed)));
                }
            }
        }
    }
    eprintln!("conductor sweep: {:?}", start.elapsed());
}

#[test]
fn tame_parameter() {
    let t = tame_parameter_factors(&TameParams::symbolic(2, 1, 4, 1, 0)).unwrap();
    assert!(t.l_at_0.equals(&RationalFunction::one()));
    assert!(t.l_at_1.equals(&RationalFunction::one()));
    assert_eq!(t.gamma_abs.eval_int(3).unwrap(), int(81));

    let t = tame_parameter_factors(&TameParams::symbolic(1, 3, 2, 0, 0)).unwrap();
    assert_eq!(t.l_at_0.inv().unwrap().as_constant(), Some(int(3)));
    let want = &(&RationalFunction::one() + &RationalFunction::var_pow(-1)) + &RationalFunction::var_pow(-2);
    assert!(t.l_at_1.inv().unwrap().equals(&want));

    let t = tame_parameter_factors(&TameParams::new(3, 1, 2, 2)).unwrap();
    assert_eq!(t.gamma_abs.eval_int(3).unwrap(), rat(27, 2));
    for f in 1..=12usize {
        let t = tame_parameter_factors(&TameParams::symbolic(1, f, 2, 0, 0)).unwrap();
        let geom = (0..f as i64).fold(RationalFunction::zero(), |a, j| &a + &RationalFunction::var_pow(-j));
        assert!(t.l_at_1.inv().unwrap().equals(&geom));
        assert_eq!(t.l_inverse, vec![int(1); f]);
    }
}

#[test]
fn formal_degree_values() {
    let d = formal_degree(&TameParams::new(3, 1, 2, 2), 1).unwrap();
    assert_eq!(d.closed_form.eval_int(3).unwrap(), int(3));
    assert!(d.consistent && d.hypothesis);
    let d = formal_degree(&TameParams::new(3, 2, 1, 4), 2).unwrap();
    assert_eq!(d.closed_form.eval_int(3).unwrap(), int(18));
    assert!(d.consistent);
    let d = formal_degree(&TameParams::symbolic(2, 1, 3, 1, 0), 2).unwrap();
    assert!(!d.hypothesis && d.consistent);
}

#[test]
fn hii_examples() {
    let h = verify_hii(&TameParams::symbolic(2, 1, 4, 1, 0), 2).unwrap();
    assert!(h.holds);
    assert_eq!(h.a_phi, 2);
    let want = &(&RationalFunction::var_pow(3) * &(&RationalFunction::one() + &RationalFunction::var_pow(-1)))
        * &RationalFunction::constant(rat(1, 2));
    assert!(h.lhs.equals(&want) && h.rhs.equals(&want));
    assert_eq!(h.lhs.eval_int(3).unwrap(), int(18));
    assert!(!h.quoted_gamma_agrees);

    let h = verify_hii(&TameParams::symbolic(1, 2, 2, 0, 0), 1).unwrap();
    assert!(h.holds);
    assert!(h.lhs.equals(&q()));
    let gamma = &(&(&RationalFunction::var_pow(2) * &RationalFunction::from_int(2)) * &omq(1)) / &omq(2);
    assert!(h.gamma_phi.equals(&gamma));

    // a wrong norm index breaks the identity
    assert!(!verify_hii(&TameParams::symbolic(2, 1, 4, 1, 0), 1).unwrap().holds);
}

#[test]
fn full_sweep() {
    let start = Instant::now();
    let cells = sweep(6, 3).unwrap();
    assert!(cells.len() > 40);
    for c in &cells {
        assert!(c.hii && c.formal_degree_consistent, "{c:?}");
    }
    eprintln!("{} cells in {:?}", cells.len(), start.elapsed());
}
