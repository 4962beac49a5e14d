//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Each check compares library output against an independent
//! oracle written here.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use arcram::lab::{
    self, generic_jump_scan, random_element, random_nonzero, random_singular_primitive_arc, random_unit,
    strong_filtration_check, verify_jet_order, JetOrderConfig, ScanConfig,
};
use arcram::{
    as_reduce, Arc, AsData, BiSeries, CoverSpec, ElemAbelian, Fe, Field, Filtration, LaurentSeries, RepSpec,
};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PREC: i64 = 256;

/// Filtrations and Swan conductors met anywhere in the run, audited by the
/// integrality criterion.
static AUDIT_FILTRATIONS: Mutex<Vec<Filtration>> = Mutex::new(Vec::new());
static AUDIT_SWANS: Mutex<Vec<Rational64>> = Mutex::new(Vec::new());

fn audit(f: &Filtration) {
    AUDIT_FILTRATIONS.lock().unwrap().push(f.clone());
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn field(p: u32, e: u32) -> Field {
    Field::new(p, e).unwrap()
}

fn x(f: &Field) -> LaurentSeries {
    LaurentSeries::x(f, PREC)
}

// ---------------------------------------------------------------------------
// Naive Artin-Schreier reduction over a prime field, on plain integer vectors.

/// Jump of `Σ coeffs[k] X^{val+k}` over `F_p` by stripping `p`-divisible poles.
fn naive_jump(p: i64, val: i64, coeffs: &[i64]) -> i64 {
    let mut poles: BTreeMap<i64, i64> = BTreeMap::new();
    for (k, &c) in coeffs.iter().enumerate() {
        let e = val + k as i64;
        if e < 0 && c.rem_euclid(p) != 0 {
            poles.insert(e, c.rem_euclid(p));
        }
    }
    loop {
        let Some((&e, &c)) = poles.iter().next() else { return 0 };
        if (-e) % p != 0 {
            return -e;
        }
        // c X^e ~ c^{1/p} X^{e/p}, and c^{1/p} = c over F_p.
        poles.remove(&e);
        let slot = poles.entry(e / p).or_insert(0);
        *slot = (*slot + c).rem_euclid(p);
        if *slot == 0 {
            poles.remove(&(e / p));
        }
    }
}

/// Power-series inverse over `F_p` of a unit polynomial, `n` terms.
fn naive_inverse(p: i64, unit: &[i64], n: usize) -> Vec<i64> {
    let c0 = unit[0].rem_euclid(p);
    let inv0 = (1..p).find(|x| x * c0 % p == 1).unwrap();
    let mut b = vec![inv0];
    for m in 1..n {
        let s: i64 = (1..=m.min(unit.len() - 1)).map(|k| unit[k] * b[m - k]).sum();
        b.push((-inv0 * s).rem_euclid(p));
    }
    b
}

// ---------------------------------------------------------------------------

/// Intersection through blow-ups equals the valuation of the regular arc's
/// equation on the other arc.
fn criterion_1() -> Check {
    let mut checked = 0;
    for (p, seed) in [(2u32, 11u64), (3, 12), (5, 13), (3, 14)] {
        let f = field(p, 1);
        let mut r = rng(seed);
        for _ in 0..50 {
            // d regular: the graph of φ over one coordinate.
            let phi = random_poly(&mut r, &f, 1, 8, true);
            let graph_over_t = r.gen_bool(0.5);
            let d = if graph_over_t {
                Arc::new(x(&f), phi.clone()).unwrap()
            } else {
                Arc::new(phi.clone(), x(&f)).unwrap()
            };
            let c = match r.gen_range(0..3) {
                0 => lab::random_regular_arc(&mut r, &f, PREC, 8),
                1 => random_singular_primitive_arc(&mut r, &f, PREC, 4),
                // Tangent to d to high order.
                _ => {
                    let k = r.gen_range(2..12);
                    let bump = LaurentSeries::monomial(&f, random_nonzero(&mut r, &f), k, PREC);
                    let base = if r.gen_bool(0.5) {
                        d.clone()
                    } else {
                        d.reparameterize(r.gen_range(2..4))
                    };
                    if graph_over_t {
                        Arc::new(base.t().clone(), base.u() + &bump).unwrap()
                    } else {
                        Arc::new(base.t() + &bump, base.u().clone()).unwrap()
                    }
                }
            };
            // Equation U - φ(T) (or T - φ(U)) evaluated on c.
            let g = if graph_over_t {
                c.u() - &phi.compose(c.t()).map_err(|e| e.to_string())?
            } else {
                c.t() - &phi.compose(c.u()).map_err(|e| e.to_string())?
            };
            let oracle = g.valuation().map_err(|e| format!("oracle: {e}"))?;
            let got = c.intersect(&d).map_err(|e| format!("intersect {c:?} {d:?}: {e}"))?;
            ensure(got == oracle, || format!("c={c:?} d={d:?}: intersect {got}, oracle {oracle}"))?;
            let sym = d.intersect(&c).map_err(|e| e.to_string())?;
            ensure(sym == got, || format!("asymmetric on c={c:?} d={d:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs, all equal"))
}

/// `c X^lo + ... + (random up to X^hi)`; with `lead` unset the low term may vanish.
fn random_poly(r: &mut ChaCha8Rng, f: &Field, lo: i64, hi: i64, lead: bool) -> LaurentSeries {
    let mut terms = vec![(lo, if lead { random_nonzero(r, f) } else { random_element(r, f) })];
    terms.extend((lo + 1..=hi).map(|k| (k, random_element(r, f))));
    LaurentSeries::from_terms(f, &terms, PREC)
}

/// Blow up until the strict transform is regular, counting steps.
fn naive_blow_ups(c: &Arc) -> u64 {
    let (mut t, mut u) = (c.t().clone(), c.u().clone());
    let mut n = 0;
    loop {
        let (vt, vu) = (t.valuation().unwrap(), u.valuation().unwrap());
        if vt.min(vu) == 1 {
            return n;
        }
        n += 1;
        if vt <= vu {
            let q = u.div(&t).unwrap();
            let c0 = q.coeff(0);
            u = q.add_const(t.field().neg(c0));
        } else {
            let q = t.div(&u).unwrap();
            let c0 = q.coeff(0);
            t = q.add_const(u.field().neg(c0));
        }
    }
}

fn criterion_2() -> Check {
    let f5 = field(5, 1);
    let worked = Arc::parse(&f5, "X^6 + X^7", "X^4", PREC).unwrap();
    let m = worked.hn_expand().map_err(|e| e.to_string())?.m();
    ensure(m == 3 && naive_blow_ups(&worked) == 3, || format!("(X^6+X^7, X^4): M = {m}"))?;
    let mut r = rng(21);
    let mut n = 0;
    for p in [2u32, 3, 5] {
        let f = field(p, 1);
        for _ in 0..34 {
            let c = random_singular_primitive_arc(&mut r, &f, PREC, 6);
            let hn = c.hn_expand().map_err(|e| e.to_string())?;
            let oracle = naive_blow_ups(&c);
            ensure(hn.m() == oracle, || format!("{c:?}: HN gives M = {}, blow-ups {oracle}", hn.m()))?;
            n += 1;
        }
    }
    Ok(format!("{n} singular arcs plus the worked example (M = 3)"))
}

fn criterion_3() -> Check {
    let mut r = rng(31);
    let mut n = 0;
    for (p, e) in [(2u32, 1u32), (3, 1), (5, 1), (3, 2), (2, 3)] {
        let f = field(p, e);
        for _ in 0..20 {
            let (lo_a, lo_h) = (-r.gen_range(0..20), -r.gen_range(1..8));
            let a = random_poly(&mut r, &f, lo_a, 6, false);
            let h = random_poly(&mut r, &f, lo_h, 6, false);
            let shifted = &(&a + &h.pow(p as i64).unwrap()) - &h;
            let j0 = as_reduce(&a).map_err(|e| e.to_string())?.jump;
            let j1 = as_reduce(&shifted).map_err(|e| e.to_string())?.jump;
            ensure(j0 == j1, || format!("a={a:?} h={h:?}: {j0} vs {j1}"))?;
            if e == 1 {
                let v = a.valuation().unwrap_or(0);
                let coeffs: Vec<i64> = (v..7).map(|k| f.coeffs(a.coeff(k))[0] as i64).collect();
                let naive = naive_jump(p as i64, v, &coeffs);
                ensure(naive == j0 as i64, || format!("a={a:?}: naive jump {naive}, library {j0}"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} random h, jump unchanged"))
}

fn criterion_4() -> Check {
    let mut lines = Vec::new();
    let mut r = rng(41);
    for (p, m1, m2) in [(3u32, 1u32, 0u32), (3, 2, 1), (5, 1, 0), (5, 2, 1), (5, 4, 3)] {
        let f = field(p, 1);
        let mut witnesses = 0;
        let mut above = 0;
        for k in 0..3 {
            let eps = random_unit(&mut r, &f, 2);
            let cv = CoverSpec::ArtinSchreier(AsData::new(m1, m2, eps));
            let cfg = JetOrderConfig {
                trials: 110,
                seed: 4000 + 10 * p as u64 + 3 * m1 as u64 + k,
                r_max: 6,
                precision: PREC,
            };
            let rep = verify_jet_order(&cv, &cfg).map_err(|e| e.to_string())?;
            ensure(rep.count("above") >= 100, || {
                format!("({m1},{m2}) p={p}: only {} above-threshold pairs", rep.count("above"))
            })?;
            if let Some(bad) = rep.records.iter().find(|x| !x.pass) {
                return Err(format!("({m1},{m2}) p={p}: above-threshold disagreement {bad:?}"));
            }
            ensure(rep.incidents.is_empty(), || format!("incidents: {:?}", rep.incidents))?;
            for rec in rep.records.iter().take(20) {
                let c = Arc::parse(&f, &rec.c.t, &rec.c.u, PREC).unwrap();
                audit(cv.ramification_on_arc(&c).unwrap().filtration());
            }
            witnesses += rep.count("below_disagree");
            above += rep.count("above");
        }
        ensure(witnesses >= 1, || format!("({m1},{m2}) p={p}: no below-threshold witness"))?;
        lines.push(format!("({m1},{m2})@{p}: {above} above ok, {witnesses} below differ"));
    }
    Ok(lines.join("; "))
}

// ---------------------------------------------------------------------------
// Kummer lifting over F_9 with arcs defined over F_3.

fn f3_series(r: &mut ChaCha8Rng, f9: &Field, lo: i64, hi: i64) -> LaurentSeries {
    let mut terms = vec![(lo, f9.from_i64(r.gen_range(1..3)))];
    terms.extend((lo + 1..=hi).map(|k| (k, f9.from_i64(r.gen_range(0..3)))));
    LaurentSeries::from_terms(f9, &terms, PREC)
}

fn f3_primitive_arc(r: &mut ChaCha8Rng, f9: &Field) -> Arc {
    loop {
        let (a, b) = match r.gen_range(0..3) {
            0 => (1, r.gen_range(1..5)),
            1 => (r.gen_range(1..5), 1),
            _ => (r.gen_range(2..5), r.gen_range(2..7)),
        };
        let c = Arc::new(f3_series(r, f9, a, a + 6), f3_series(r, f9, b, b + 6)).unwrap();
        if c.degree().unwrap() == 1 {
            return c;
        }
    }
}

fn v(s: &LaurentSeries) -> i64 {
    s.valuation().unwrap()
}

fn criterion_5() -> Check {
    let f9 = field(3, 2);
    let l = 2i64;
    let cv = CoverSpec::Kummer {
        l: 2,
        q: 1,
        s: 0,
        eps: BiSeries::constant(&f9, Fe::ONE),
    };
    let mut r = rng(51);
    let arcs: Vec<Arc> = (0..100).map(|_| f3_primitive_arc(&mut r, &f9)).collect();
    let mut split = 0;
    let mut split_m_grew = 0;
    for c in &arcs {
        let n_c = if v(c.t()) % l == 0 { l } else { 1 };
        let lifts = cv.lift_arc_kummer(c).map_err(|e| format!("{c:?}: {e}"))?;
        ensure(lifts.len() as i64 == n_c, || format!("{c:?}: {} lifts, n_C = {n_c}", lifts.len()))?;
        if n_c == l {
            split += 1;
        }
        let (ec, mc) = (c.multiplicity().unwrap(), c.singularity_degree().unwrap() as i64);
        for lift in &lifts {
            // x^l = T along the lift.
            let t_back = if n_c == l { c.t().clone() } else { c.t().reparameterize(l) };
            ensure(lift.t().pow(l).unwrap().agrees_with(&t_back), || format!("{lift:?} is not over {c:?}"))?;
            ensure(lift.degree().unwrap() == 1, || format!("lift {lift:?} not primitive"))?;
            ensure(v(lift.t()) == v(c.t()) / n_c, || format!("(C'.F_T1) for {c:?}"))?;
            ensure(v(lift.u()) == l * v(c.u()) / n_c, || format!("(C'.F_U) for {c:?}"))?;
            let e_lift = lift.multiplicity().unwrap();
            ensure(e_lift == v(c.t()).min(l * v(c.u())) / n_c, || format!("E_C' for {c:?}"))?;
            ensure(e_lift <= l * ec, || format!("E_C' > l E_C for {c:?}"))?;
            let m_lift = lift.singularity_degree().unwrap() as i64;
            ensure(2 * m_lift <= l * (mc + 1) * ec * ec, || format!("M_C' = {m_lift} too big for {c:?}"))?;
            // Not asserted: for (X^4, X^5) the split lift (X^2, X^5) needs two
            // quadratic transforms against one, although its ring is larger.
            if n_c == l && m_lift > mc {
                split_m_grew += 1;
            }
        }
    }
    // Intersection bookkeeping on pairs, half of them tangent.
    let mut pairs = 0;
    for (i, c) in arcs.iter().enumerate().take(60) {
        let d = if i % 2 == 0 {
            arcs[(i + 1) % arcs.len()].clone()
        } else {
            let k = r.gen_range(2..10);
            let gamma = f9.from_i64(r.gen_range(1..3));
            let bump = LaurentSeries::monomial(&f9, gamma, k, PREC);
            match Arc::new(c.t() + &bump, c.u().clone()) {
                Ok(d) if d.degree().unwrap() == 1 && d.t().valuation().is_ok() => d,
                _ => continue,
            }
        };
        if c.t().agrees_with(d.t()) && c.u().agrees_with(d.u()) {
            continue;
        }
        let cd = c.intersect(&d).map_err(|e| e.to_string())?;
        let (lc, ld) = (cv.lift_arc_kummer(c).unwrap(), cv.lift_arc_kummer(&d).unwrap());
        let (nc, nd) = (lc.len() as i64, ld.len() as i64);
        if nc == l && nd == l {
            let sum: i64 = lc.iter().map(|ci| ci.intersect(&ld[0]).unwrap()).sum();
            ensure(sum == cd, || format!("{c:?},{d:?}: Σ (C_i.D') = {sum} vs (C.D) = {cd}"))?;
        } else {
            for ci in &lc {
                for di in &ld {
                    let got = ci.intersect(di).map_err(|e| e.to_string())?;
                    ensure(got * nc * nd == l * cd, || {
                        format!("{c:?},{d:?}: (C'.D') = {got}, (C.D) = {cd}, n = {nc},{nd}")
                    })?;
                }
            }
        }
        pairs += 1;
    }
    Ok(format!(
        "100 arcs ({split} split), {pairs} pairs; split lifts with M_C' > M_C (reported only): {split_m_grew}"
    ))
}

fn criterion_6() -> Check {
    let f9 = field(3, 2);
    let mut r = rng(61);
    let mut counts = [0; 2];
    for _ in 0..100 {
        let (q, s) = (r.gen_range(0..5), r.gen_range(0..5));
        let cv = CoverSpec::Kummer {
            l: 2,
            q,
            s,
            eps: random_unit(&mut r, &f9, 2),
        };
        let c = f3_primitive_arc(&mut r, &f9);
        let val = q * v(c.t()) + s * v(c.u());
        let want = if val % 2 == 0 { 2 } else { 1 };
        let got = cv.kummer_lift_count(&c).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("x^2 = T^{q} U^{s} ε on {c:?}: {got} lifts, v = {val}"))?;
        counts[(got - 1) as usize] += 1;
    }
    Ok(format!("100 arcs ({} with 1 lift, {} with 2)", counts[0], counts[1]))
}

fn criterion_7() -> Check {
    let f3 = field(3, 1);
    let mut r = rng(71);
    for _ in 0..20 {
        let (lo1, lo2) = (-r.gen_range(1..12), -r.gen_range(1..12));
        let a1 = random_poly(&mut r, &f3, lo1, 4, true);
        let a2 = random_poly(&mut r, &f3, lo2, 4, true);
        let g = ElemAbelian::new(&[a1.clone(), a2.clone()]).map_err(|e| e.to_string())?;
        let m = ElemAbelian::new(std::slice::from_ref(&a1)).map_err(|e| e.to_string())?;
        // Gal(L/M) is the annihilator of the character defining M.
        let h = g.subgroup_filtration(&[vec![1, 0]]);
        audit(g.filtration());
        audit(m.filtration());
        audit(&h);
        let direct = g.filtration().w_function();
        let composed = m.filtration().w_function().compose(&h.w_function());
        ensure(direct == composed, || {
            format!("a1={a1:?} a2={a2:?}: W_L/K = {direct:?}, composed {composed:?}")
        })?;
    }
    Ok("20 towers, exact equality".into())
}

fn criterion_8() -> Check {
    // Swan conductors of random representations along random arcs.
    let mut r = rng(81);
    for p in [2u32, 3, 5] {
        let f = field(p, 1);
        for _ in 0..20 {
            let n = r.gen_range(1..=3usize);
            let comps: Vec<AsData> = (0..n)
                .map(|_| {
                    let (m1, m2) = loop {
                        let (a, b) = (r.gen_range(0..6u32), r.gen_range(0..4u32));
                        if a % p != 0 && (b == 0 || b % p != 0) {
                            break (a, b);
                        }
                    };
                    AsData::new(m1, m2, random_unit(&mut r, &f, 1))
                })
                .collect();
            let cv = CoverSpec::ElemAbelian(comps);
            let c = f3_like_arc(&mut r, &f);
            let ram = match cv.ramification_on_arc(&c) {
                Ok(x) => x,
                Err(e) => return Err(format!("{c:?}: {e}")),
            };
            audit(ram.filtration());
            let all = RepSpec::AllNontrivial.characters(p, n);
            let rep: Vec<Vec<u32>> = (0..r.gen_range(1..6)).map(|_| all[r.gen_range(0..all.len())].clone()).collect();
            AUDIT_SWANS.lock().unwrap().push(ram.swan_conductor(&rep).map_err(|e| e.to_string())?);
            AUDIT_SWANS.lock().unwrap().push(ram.swan_conductor(&all).map_err(|e| e.to_string())?);
        }
    }
    let filtrations = AUDIT_FILTRATIONS.lock().unwrap().clone();
    for fl in &filtrations {
        for h in fl.lower_jumps() {
            ensure(h >= 0 && h % fl.e_t as i64 == 0, || format!("non-integral jump in {fl:?}"))?;
        }
    }
    let swans = AUDIT_SWANS.lock().unwrap().clone();
    if let Some(bad) = swans.iter().find(|s| !s.is_integer() || **s < Rational64::from(0)) {
        return Err(format!("Swan conductor {bad} is not a nonnegative integer"));
    }
    Ok(format!("{} filtrations, {} Swan conductors", filtrations.len(), swans.len()))
}

/// A random arc off both coordinate axes.
fn f3_like_arc(r: &mut ChaCha8Rng, f: &Field) -> Arc {
    loop {
        let c = if r.gen_bool(0.7) {
            lab::random_regular_arc(r, f, PREC, 6)
        } else {
            random_singular_primitive_arc(r, f, PREC, 3)
        };
        if !c.t().is_zero() && !c.u().is_zero() {
            return c;
        }
    }
}

/// Lower filtration from character jumps by Herbrand's ψ, for `(Z/p)^2`.
fn herbrand_oracle(p: u32, jump: impl Fn(u32, u32) -> u64) -> Vec<(i64, u64)> {
    // σ = (s1, s2) is detected by χ = (c1, c2) when c1 s1 + c2 s2 ≠ 0.
    let elems: Vec<(u32, u32)> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).filter(|&e| e != (0, 0)).collect();
    let chars = elems.clone();
    let upper = |s: (u32, u32)| {
        chars
            .iter()
            .filter(|c| (c.0 * s.0 + c.1 * s.1) % p != 0)
            .map(|c| jump(c.0, c.1))
            .min()
            .unwrap()
    };
    let mut ups: Vec<u64> = elems.iter().map(|&s| upper(s)).collect();
    ups.sort();
    ups.dedup();
    let g = (p * p) as i64;
    let mut out = Vec::new();
    let (mut prev_u, mut lower) = (0i64, 0i64);
    for &u in &ups {
        let size = 1 + elems.iter().filter(|&&s| upper(s) >= u).count() as i64;
        lower += (u as i64 - prev_u) * g / size;
        out.push((lower, size as u64));
        prev_u = u as i64;
    }
    out
}

fn criterion_9() -> Check {
    let f3 = field(3, 1);
    let one = BiSeries::constant(&f3, Fe::ONE);
    let cv = CoverSpec::ElemAbelian(vec![AsData::new(1, 0, one.clone()), AsData::new(2, 0, one)]);
    // Characters c1 T^-1 + c2 T^-2 along a transversal arc have jump 2 if
    // c2 ≠ 0, else 1.
    let expected = herbrand_oracle(3, |_, c2| if c2 != 0 { 2 } else { 1 });
    ensure(expected == vec![(1, 9), (4, 3)], || format!("oracle gives {expected:?}"))?;
    let cfg = JetOrderConfig {
        trials: 60,
        seed: 9,
        r_max: 6,
        precision: PREC,
    };
    let rep = strong_filtration_check(&cv, &cfg).map_err(|e| e.to_string())?;
    ensure(rep.incidents.is_empty(), || format!("incidents: {:?}", rep.incidents))?;
    ensure(rep.count("high_tangency") >= 50, || format!("{} high-tangency pairs", rep.count("high_tangency")))?;
    let mut transversal = 0;
    for rec in &rep.records {
        audit(&rec.filtration_c);
        audit(&rec.filtration_d);
        ensure(rec.pass, || format!("filtrations differ: {rec:?}"))?;
        let c = Arc::parse(&f3, &rec.c.t, &rec.c.u, PREC).unwrap();
        if v(c.t()) == 1 {
            transversal += 1;
            ensure(
                rec.filtration_c.segments == expected && rec.filtration_d.segments == expected,
                || format!("transversal pair with segments {:?}", rec.filtration_c.segments),
            )?;
        }
    }
    Ok(format!(
        "{} high-tangency pairs equal, {transversal} transversal with [(1,9),(4,3)]",
        rep.count("high_tangency")
    ))
}

fn criterion_10() -> Check {
    let f3 = field(3, 1);
    let cv = CoverSpec::ArtinSchreier(AsData::new(1, 0, BiSeries::constant(&f3, Fe::ONE)));
    let mut seeds_max = Vec::new();
    for seed in [1u64, 2] {
        let cfg = ScanConfig {
            r_max: 9,
            samples_per_r: 60,
            seed,
            precision: PREC,
        };
        let scan = generic_jump_scan(&cv, &cfg).map_err(|e| e.to_string())?;
        ensure(scan.incidents.is_empty(), || format!("incidents: {:?}", scan.incidents))?;
        ensure(scan.records.len() == 9, || format!("{} rows", scan.records.len()))?;
        for row in &scan.records {
            let r = row.r as i64;
            // Generic jet: t = X^r + X^{r+1} + ..., a = 1/t = X^-r (1 - X).
            let unit = vec![1; 12];
            let inv = naive_inverse(3, &unit, 12);
            let oracle = naive_jump(3, -r, &inv);
            let formula = if r % 3 == 0 { r - 1 } else { r };
            ensure(oracle == formula, || format!("r={r}: naive reduction gives {oracle}"))?;
            ensure(row.w_max == oracle && row.w_mode == oracle, || {
                format!("r={r}: observed max {} mode {}, expected {oracle}", row.w_max, row.w_mode)
            })?;
            ensure((2.0 / 3.0..=1.0).contains(&row.ratio), || format!("r={r}: ratio {}", row.ratio))?;
        }
        seeds_max.push(scan.records.iter().map(|x| x.w_max).collect::<Vec<_>>());
    }
    ensure(seeds_max[0] == seeds_max[1], || "maxima differ across seeds".into())?;
    Ok(format!("w_r = {:?}", seeds_max[0]))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 10] = [
        ("intersection oracle equivalence", criterion_1),
        ("HN singularity degree equals blow-up count", criterion_2),
        ("AS reduction well-defined", criterion_3),
        ("sufficient jet order", criterion_4),
        ("Kummer lifting identities", criterion_5),
        ("Kummer lift count parity", criterion_6),
        ("W composition in towers", criterion_7),
        ("integrality of jumps and Swan conductors", criterion_8),
        ("strong filtration equality", criterion_9),
        ("generic jump scan", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
