//! End-to-end acceptance checks. Each test covers one acceptance criterion
//! and prints a single PASS line on success (visible with --nocapture).

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rroch::symfunc::star0;
use rroch::{
    exp, int_pow, inverse, pow_binomial, verify_generating_identity, verify_grr_zero_section,
    verify_lambda_chern, verify_pushforward_basis, verify_rr_without_denominators, Alphabet,
    ElementaryTarget, IVPoly, Rational, Series, SignedRoot, UniversalContext, VarTable,
    VirtualBundle,
};

fn report_line(id: u32, what: &str) {
    println!("ACCEPTANCE {id:02} {what}: PASS");
}

#[test]
fn acceptance_01_generating_identity() {
    let start = Instant::now();
    for r in 1..=3u32 {
        let report = verify_generating_identity(r, 6).unwrap();
        assert!(report.pass, "r = {r}: {report:?}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    report_line(1, "generating identity, r <= 3, degrees <= 6, symbolic rank");
}

#[test]
fn acceptance_02_deviation_divisibility() {
    for n in 0..=2u32 {
        for r in 1..=3u32 {
            let ctx = UniversalContext::new(n, r, 6).unwrap();
            let j = ctx.j_nr().unwrap();
            let one = Series::one(ctx.vars().clone(), 6);
            let q = j.sub(&one).divide_exact(&ctx.b_product());
            assert!(q.is_ok(), "n={n} r={r}");
        }
    }
    report_line(2, "J - 1 exactly divisible by the root product, n <= 2, r <= 3, N = 6");
}

#[test]
fn acceptance_03_star_kernel_equality() {
    for n in 1..=2u32 {
        for r in 1..=2u32 {
            let ctx = UniversalContext::new(n, r, 5).unwrap();
            let one = Series::<IVPoly>::one(ctx.vars().clone(), 5);
            let mut c = one.clone();
            for i in 1..=n {
                let a = Series::var(ctx.vars().clone(), 5, &format!("a{i}")).unwrap();
                c = c.mul(&one.add(&a));
            }
            let s = star0(&c, &ctx.g_in_ctx().unwrap()).unwrap();
            assert_eq!(s, ctx.j_nr().unwrap(), "n={n} r={r}");
        }
    }
    report_line(3, "star0 of a total class with g_r equals J, n, r <= 2, N = 5");
}

#[test]
fn acceptance_04_lambda_chern_class() {
    for r in 1..=4u32 {
        let report = verify_lambda_chern(r, 6).unwrap();
        assert!(report.pass, "r = {r}: {report:?}");
    }
    report_line(4, "alternating exterior powers of the dual have class 1 + c_r G_r, r <= 4, N = 6");
}

#[test]
fn acceptance_05_derived_golden_values() {
    // Brute-force one-variable oracle for P[0,1]: the degree-1 coefficient
    // of (1 - b)^{-t0} is t0.
    let vt = VarTable::new(&[("b", 1)]).unwrap();
    let one = Series::<IVPoly>::one(vt.clone(), 2);
    let b = Series::<IVPoly>::var(vt.clone(), 2, "b").unwrap();
    let g1 = inverse(&one.sub(&b)).unwrap();
    let g1_t0 = pow_binomial(&g1, &IVPoly::t0()).unwrap();
    assert_eq!(g1_t0.coeff(&[1]), IVPoly::t0());
    let p01 = UniversalContext::new(0, 1, 1).unwrap().p_nr().unwrap();
    assert_eq!(
        p01,
        Series::constant(p01.vars().clone(), 1, IVPoly::t0())
    );

    // Oracle for P[1,1]: expand (1+a) (1+a-b)^{-1} (1-b)^{-(t0-1)} by raw
    // series arithmetic; its degree-2 part is -ab + C(t0+1,2) b^2.
    let vt2 = VarTable::new(&[("a", 1), ("b", 1)]).unwrap();
    let one2 = Series::<IVPoly>::one(vt2.clone(), 2);
    let a = Series::<IVPoly>::var(vt2.clone(), 2, "a").unwrap();
    let b = Series::<IVPoly>::var(vt2.clone(), 2, "b").unwrap();
    let f11 = one2.add(&a).mul(&inverse(&one2.add(&a).sub(&b)).unwrap());
    let g = inverse(&one2.sub(&b)).unwrap();
    let shifted = IVPoly::t0().sub(&IVPoly::one());
    let h = f11.mul(&pow_binomial(&g, &shifted).unwrap()).component(2);
    assert_eq!(h.coeff(&[1, 1]), IVPoly::one().neg());
    assert_eq!(h.coeff(&[0, 2]), IVPoly::binomial(2).shift(1));
    assert_eq!(h.coeff(&[2, 0]), IVPoly::zero());
    let p11 = UniversalContext::new(1, 1, 2).unwrap().p_nr().unwrap();
    let t1 = Series::<IVPoly>::var(p11.vars().clone(), 2, "t1").unwrap();
    let u1 = Series::<IVPoly>::var(p11.vars().clone(), 2, "u1").unwrap();
    assert_eq!(p11, t1.neg().add(&u1.scale(&IVPoly::binomial(2).shift(1))));

    // Oracle for P[0,2]: the b1 b2 coefficient of g_2^{t0} where g_2 is
    // assembled from scratch as (1+0)(1-b1)^{-1}(1-b2)^{-1}(1-b1-b2).
    let vt3 = VarTable::new(&[("b1", 1), ("b2", 1)]).unwrap();
    let one3 = Series::<IVPoly>::one(vt3.clone(), 2);
    let b1 = Series::<IVPoly>::var(vt3.clone(), 2, "b1").unwrap();
    let b2 = Series::<IVPoly>::var(vt3.clone(), 2, "b2").unwrap();
    let g2 = one3
        .sub(&b1)
        .sub(&b2)
        .mul(&inverse(&one3.sub(&b1)).unwrap())
        .mul(&inverse(&one3.sub(&b2)).unwrap());
    let g2_t0 = pow_binomial(&g2, &IVPoly::t0()).unwrap();
    assert_eq!(g2_t0.coeff(&[1, 1]), IVPoly::t0().neg());
    let p02 = UniversalContext::new(0, 2, 2).unwrap().p_nr().unwrap();
    assert_eq!(
        p02,
        Series::constant(p02.vars().clone(), 2, IVPoly::t0().neg())
    );

    // G_r(0,..,0) = (-1)^{r-1} (r-1)! for r <= 4: brute-force expansion of
    // the signed subset product, reading off the b1..br coefficient.
    for r in 1..=4u32 {
        let pairs: Vec<(String, u32)> = (1..=r).map(|k| (format!("b{k}"), 1)).collect();
        let vt = VarTable::new(&pairs).unwrap();
        let one = Series::<Rational>::one(vt.clone(), r);
        let bs: Vec<Series<Rational>> = (1..=r)
            .map(|k| Series::var(vt.clone(), r, &format!("b{k}")).unwrap())
            .collect();
        let mut prod = one.clone();
        for mask in 0u32..(1 << r) {
            let mut base = one.clone();
            for (i, b) in bs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    base = base.sub(b);
                }
            }
            if mask.count_ones() % 2 == 0 {
                prod = prod.mul(&base);
            } else {
                prod = prod.mul(&inverse(&base).unwrap());
            }
        }
        let oracle = prod.coeff(&vec![1u16; r as usize]);
        let mut expect = Rational::one();
        for k in 1..r {
            expect = expect.mul(&Rational::from_int(i64::from(k)));
        }
        if r % 2 == 0 {
            expect = expect.neg();
        }
        assert_eq!(oracle, expect, "oracle r = {r}");
        let gg = rroch::big_g_r(r, r).unwrap();
        assert_eq!(gg.constant_term().as_constant().unwrap(), expect, "pipeline r = {r}");
    }
    report_line(5, "derived golden values reproduced against brute-force oracles");
}

#[test]
fn acceptance_06_pushforward_basis_suite() {
    for r in 1..=4u32 {
        let report = verify_pushforward_basis(r, 6).unwrap();
        assert!(report.pass, "r = {r}: {report:?}");
    }
    report_line(6, "quotient-bundle and Gysin structure, r <= 4, N = 6");
}

#[test]
fn acceptance_07_riemann_roch_without_denominators() {
    let start = Instant::now();
    for n in 0..=3u32 {
        for r in 1..=3u32 {
            let report = verify_rr_without_denominators(n, r, 6).unwrap();
            assert!(report.pass, "n={n} r={r}: {report:?}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}");
    report_line(7, "integral Riemann-Roch for zero sections, n <= 3, r <= 3, degrees <= 6");
}

#[test]
fn acceptance_08_grr_zero_section() {
    for n in 0..=2u32 {
        for r in 1..=3u32 {
            let report = verify_grr_zero_section(n, r, 6).unwrap();
            assert!(report.pass, "n={n} r={r}: {report:?}");
        }
    }
    // Standalone kernel identities. Free roots: the alternating sum of
    // exponentials factors, and equals c_r times the inverse Todd class.
    for r in 1..=3u32 {
        let pairs: Vec<(String, u32)> = (1..=r).map(|k| (format!("b{k}"), 1)).collect();
        let vt = VarTable::new(&pairs).unwrap();
        let trunc = 6;
        let one = Series::<Rational>::one(vt.clone(), trunc);
        let bs: Vec<Series<Rational>> = (1..=r)
            .map(|k| Series::var(vt.clone(), trunc, &format!("b{k}")).unwrap())
            .collect();
        let mut factored = one.clone();
        for b in &bs {
            factored = factored.mul(&one.sub(&exp(&b.neg()).unwrap()));
        }
        // ch(lambda_{-1} of the dual) over free roots.
        let roots: Vec<SignedRoot<Series<Rational>>> = bs
            .iter()
            .map(|b| SignedRoot { class: b.clone(), mult: 1 })
            .collect();
        let e = VirtualBundle::from_roots(&one, roots).unwrap();
        let lam = e.lambda_minus_one_dual().unwrap();
        assert_eq!(lam.chern_character().unwrap(), factored, "r = {r}");
        // c_r td^{-1} route.
        let top = e.chern().component(r);
        let td_inv = inverse(&e.todd().unwrap()).unwrap();
        assert_eq!(top.mul(&td_inv), factored, "r = {r}");
    }
    report_line(8, "Grothendieck-Riemann-Roch for zero sections, n <= 2, r <= 3, N = 6");
}

#[test]
fn acceptance_09_lambda_ring_property_suite() {
    // Deterministic pseudo-random sweep, 200 cases per property.
    let vt = VarTable::new(&[("x1", 1), ("x2", 1), ("x3", 1)]).unwrap();
    let mut state: u64 = 0x9e3779b97f4a7c15;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let build = |vt: &Arc<VarTable>, trunc: u32, mults: [i64; 3]| {
        let sample = Series::<Rational>::one(vt.clone(), trunc);
        let roots = (0..3)
            .filter(|&i| mults[i] != 0)
            .map(|i| SignedRoot {
                class: Series::var(vt.clone(), trunc, &format!("x{}", i + 1)).unwrap(),
                mult: mults[i],
            })
            .collect();
        VirtualBundle::from_roots(&sample, roots).unwrap()
    };
    for case in 0..200u32 {
        let trunc = 2 + (next() % 4) as u32;
        let m = |v: u64| (v % 5) as i64 - 2;
        let a = [m(next()), m(next()), m(next())];
        let b = [m(next()), m(next()), m(next())];
        let e = build(&vt, trunc, a);
        let f = build(&vt, trunc, b);
        let ch_e = e.chern_character().unwrap();
        let ch_f = f.chern_character().unwrap();
        assert_eq!(e.sum(&f).chern_character().unwrap(), ch_e.add(&ch_f), "case {case}");
        assert_eq!(
            e.star(&f).unwrap().chern_character().unwrap(),
            ch_e.mul(&ch_f),
            "case {case}"
        );
        assert_eq!(e.star(&f).unwrap(), f.star(&e).unwrap(), "case {case}");
        let one = VirtualBundle::trivial(e.chern(), IVPoly::one());
        assert_eq!(e.star(&one).unwrap().chern(), e.chern(), "case {case}");
    }
    // Symbolic power specialization, 200 cases.
    for case in 0..200u32 {
        let trunc = 2 + (next() % 3) as u32;
        let m = (next() % 8) as i64 - 3;
        let one = Series::<IVPoly>::one(vt.clone(), trunc);
        let mut u = one.clone();
        for i in 1..=3 {
            let c = (next() % 5) as i64 - 2;
            if c != 0 {
                let x = Series::<IVPoly>::var(vt.clone(), trunc, &format!("x{i}")).unwrap();
                u = u.add(&x.scale(&IVPoly::constant(Rational::from_int(c))));
            }
        }
        let sym = pow_binomial(&u, &IVPoly::t0()).unwrap();
        let specialized = sym.map_coeffs(|p| IVPoly::constant(p.eval(m)));
        assert_eq!(specialized, int_pow(&u, m).unwrap(), "case {case}");
    }
    // Elementary-basis round trips, 200 cases.
    let target = VarTable::new(&[("e1", 1), ("e2", 2), ("e3", 3)]).unwrap();
    let specs = [ElementaryTarget::new(
        Alphabet::numbered("x", 3),
        vec!["e1".into(), "e2".into(), "e3".into()],
    )];
    for case in 0..200u32 {
        let trunc = 3 + (next() % 4) as u32;
        let mut f = Series::<Rational>::zero(target.clone(), trunc);
        for _ in 0..4 {
            let c = (next() % 11) as i64 - 5;
            let exps = vec![
                (next() % 3) as u16,
                (next() % 2) as u16,
                (next() % 2) as u16,
            ];
            f = f.add(&Series::from_term(
                target.clone(),
                trunc,
                exps,
                Rational::from_int(c),
            ));
        }
        let expanded =
            rroch::symfunc::expand_in_roots(&f, &specs, &vt).unwrap();
        let back = rroch::symfunc::to_elementary_basis(&expanded, &specs, &target).unwrap();
        assert_eq!(back, f, "case {case}");
    }
    report_line(9, "lambda-ring property sweep, 200 randomized cases per property");
}

#[test]
fn acceptance_10_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_rroch");
    let golden_dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for total in 1..=5u32 {
        for r in 1..=total {
            let n = total - r;
            let out = Command::new(bin)
                .args(["universal-poly", "--n", &n.to_string(), "--r", &r.to_string()])
                .output()
                .unwrap();
            assert_eq!(out.status.code(), Some(0));
            let expect =
                std::fs::read_to_string(golden_dir.join(format!("universal_poly_n{n}_r{r}.txt")))
                    .unwrap();
            assert_eq!(String::from_utf8(out.stdout).unwrap(), expect, "n={n} r={r}");
        }
    }
    let out = Command::new(bin)
        .args([
            "verify", "--suite", "rrwd", "--n", "1", "--r", "1", "--truncate", "4", "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let expect = std::fs::read_to_string(golden_dir.join("verify_rrwd_n1_r1_N4.json")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expect);
    // Exit-code contract.
    let usage = Command::new(bin)
        .args(["verify", "--r", "9"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(2));
    report_line(10, "CLI golden-file byte equality and exit codes");
}
