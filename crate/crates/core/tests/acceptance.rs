//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use tamesc_core::clifford::{dim_delta_value, CliffordInstance};
use tamesc_core::exact::{int, Phase, Poly};
use tamesc_core::factors::{artin_conductor, formal_degree, principal_parameter_factors, sweep, sweep_instances};
use tamesc_core::matrix::{build_beta, tame_ring_at, DEFAULT_BUDGET};
use tamesc_core::residue::norm_index;
use tamesc_core::weil::{
    centralizer_in_pgl, det_one_minus, inertia_fixed_space, level_structure_check, theta_from_beta, CMatrix,
    MetacyclicGroup, UnramifiedWeilModel, WeilTheta,
};
use tamesc_core::TameParams;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

fn hii_sweep() -> Outcome {
    let start = Instant::now();
    let cells = sweep(6, 3).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let bad: Vec<_> = cells.iter().filter(|c| !c.hii).collect();
    ensure(bad.is_empty(), || format!("identity fails at {bad:?}"))?;
    within(t, Duration::from_secs(5), "sweep")?;
    Ok(format!("{} instances, n <= 6, r in [2e, 2e+3], {t:.2?}", cells.len()))
}

fn formal_degrees() -> Outcome {
    let cells = sweep(6, 3).map_err(|e| e.to_string())?;
    ensure(cells.iter().all(|c| c.formal_degree_consistent), || "closed form differs from dim delta route".into())?;
    for (e, f, r, normidx, want) in [(1, 2, 2, 1, 3), (2, 1, 4, 2, 18)] {
        let params = TameParams::new(3, e, f, r);
        let fd = formal_degree(&params, normidx).map_err(|e| e.to_string())?;
        let v = fd.closed_form.eval_int(3).map_err(|e| e.to_string())?;
        ensure(v == int(want), || format!("({e},{f},{r}) formal degree {v}, expected {want}"))?;
    }
    Ok(format!("{} symbolic instances; spot values 3 and 18", cells.len()))
}

fn dimensions() -> Outcome {
    let mut parts = Vec::new();
    for (e, f, r, want, limit) in [(1, 2, 2, 6, 5), (1, 2, 3, 18, 5), (2, 1, 4, 36, 120)] {
        let start = Instant::now();
        let params = TameParams::new(3, e, f, r);
        let inst = CliffordInstance::new(&params, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let theta = inst.thetas().into_iter().next().ok_or("no theta")?;
        let delta = inst.delta(&theta).map_err(|e| e.to_string())?;
        let ring = tame_ring_at(&params, 3, r).map_err(|e| e.to_string())?;
        let normidx = norm_index(&ring).map_err(|e| e.to_string())?;
        let formula = dim_delta_value(&params, normidx).map_err(|e| e.to_string())?;
        ensure(delta.dim == want && formula == want && delta.irreducible, || {
            format!("({e},{f},{r}): brute {} formula {formula} norm {}", delta.dim, delta.norm)
        })?;
        let t = start.elapsed();
        within(t, Duration::from_secs(limit), "enumeration")?;
        parts.push(format!("{want} ({t:.2?})"));
    }
    Ok(format!("dims {}; <chi, chi> = 1", parts.join(", ")))
}

fn conductors() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 2..=8usize {
        for e in (1..=n).filter(|e| n % e == 0) {
            let f = n / e;
            let (m, c) = TameParams::admissible_relations(e, f)[0];
            for r in 2..=12u32 {
                let params = TameParams::symbolic(e, f, r, m, c);
                let want = int((r as usize * n * (n - 1)) as i64);
                for q in [None, Some(3), Some(5), Some(7)] {
                    let a = artin_conductor(&params, q).map_err(|e| e.to_string())?;
                    ensure(a.total == want, || format!("n={n} e={e} r={r} q={q:?}: {}", a.total))?;
                    count += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(1), "conductor sweep")?;
    Ok(format!("{count} band sums equal r n (n-1), {t:.2?}"))
}

fn centralizers() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (p, n) in [(3u64, 2usize), (5, 3)] {
        let params = TameParams::new(p, 1, n, 2);
        let beta = build_beta(&params).map_err(|e| e.to_string())?;
        let unit = theta_from_beta(&beta).map_err(|e| e.to_string())?;
        let model = UnramifiedWeilModel::from_params(&params).map_err(|e| e.to_string())?;
        let theta = WeilTheta { unit, varpi: Phase::zero() };
        let mats: Vec<CMatrix> =
            model.build_theta_matrices(&theta).map_err(|e| e.to_string())?.into_iter().map(|(_, m)| m).collect();
        let a = centralizer_in_pgl(&mats).map_err(|e| e.to_string())?;
        let normidx = MetacyclicGroup::from_params(&params).map_err(|e| e.to_string())?.abelianization().normidx;
        ensure(a.count == n && a.count == normidx * n, || format!("p={p} n={n}: |A_phi| = {}", a.count))?;
        parts.push(format!("n={n}: {}", a.count));
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(30), "centralizer")?;
    Ok(format!("|A_phi| {} ({t:.2?})", parts.join(", ")))
}

fn norm_indices() -> Outcome {
    let mut count = 0;
    for p in [3u64, 5, 7, 11, 13] {
        for n in 2..=4usize {
            if (n as u64).is_multiple_of(p) {
                continue;
            }
            for e in (1..=n).filter(|e| n % e == 0) {
                let f = n / e;
                for r in 1..=3u32 {
                    let params = TameParams::new(p, e, f, r.max(2));
                    if !params.is_galois() || (p as u128).pow((n as u32) * r) > 200_000 {
                        continue;
                    }
                    let ring = tame_ring_at(&params, p, r).map_err(|e| e.to_string())?;
                    let got = norm_index(&ring).map_err(|e| e.to_string())?;
                    let want = MetacyclicGroup::from_params(&params).map_err(|e| e.to_string())?.abelianization().normidx;
                    ensure(got == want as u64, || format!("p={p} e={e} f={f} r={r}: ring {got}, Galois {want}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} concrete instances agree"))
}

fn level_structure() -> Outcome {
    let mut parts = Vec::new();
    for params in [TameParams::new(3, 1, 2, 2), TameParams::new(3, 2, 1, 4)] {
        let beta = build_beta(&params).map_err(|e| e.to_string())?;
        let theta = theta_from_beta(&beta).map_err(|e| e.to_string())?;
        let bands = level_structure_check(&beta.ring, &theta).map_err(|e| e.to_string())?;
        ensure(bands.iter().all(|b| b.matches), || format!("{bands:?}"))?;
        parts.push(format!("e={}: {} bands", params.e, bands.len()));
    }
    Ok(parts.join(", "))
}

fn linear_algebra() -> Outcome {
    for f in 1..=12usize {
        let group = MetacyclicGroup::new(1, f, 0, 0).map_err(|e| e.to_string())?;
        let m = inertia_fixed_space(&group).frobenius;
        ensure(det_one_minus(&m) == Poly::from_i64(&vec![1; f]), || format!("f={f}: det(I - QM) = {:?}", det_one_minus(&m)))?;
    }
    for n in 2..=6usize {
        let pf = principal_parameter_factors(n).map_err(|e| e.to_string())?;
        let want: Vec<i64> = (1..n as i64).map(|k| -k).collect();
        ensure(pf.kernel_dim == n - 1 && pf.frobenius_weights == want, || {
            format!("n={n}: kernel {} weights {:?}", pf.kernel_dim, pf.frobenius_weights)
        })?;
    }
    Ok("det(I - QM) = 1 + Q + ... + Q^(f-1) for f <= 12; ker ad(N_0) weights -1..-(n-1) for n <= 6".into())
}

fn hypothesis() -> Outcome {
    let all = sweep_instances(6, 3);
    ensure(all.iter().all(|p| p.supercuspidal_hypothesis()), || "sweep instance with r < 2e".into())?;
    ensure(!TameParams::symbolic(2, 1, 3, 1, 0).supercuspidal_hypothesis(), || "r = 3, e = 2 accepted".into())?;
    Ok("out of scope; only the hypothesis r >= 2e is checked".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("gamma-factor identity", hii_sweep),
        ("formal degree", formal_degrees),
        ("dimension vs brute force", dimensions),
        ("conductor", conductors),
        ("centralizer |A_phi|", centralizers),
        ("norm index ring vs Galois", norm_indices),
        ("level structure of theta", level_structure),
        ("structural linear algebra", linear_algebra),
        ("supercuspidality", hypothesis),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
