use std::collections::BTreeMap;

use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sample::{random_nonzero, random_singular_primitive_arc, sample_arc, ArcLiteral, JetSample};
use super::{sub_seed, trial_rng, ExperimentReport, Incident};
use crate::arc::Arc;
use crate::cover::{CoverSpec, RepSpec};
use crate::error::{Error, Result};
use crate::localfield::Filtration;
use crate::series::LaurentSeries;

#[derive(Debug, Clone, Serialize)]
pub struct JetOrderConfig {
    pub trials: u64,
    pub seed: u64,
    /// Contact orders of the sampled regular jets range over `1..=r_max`.
    pub r_max: u32,
    pub precision: i64,
}

impl Default for JetOrderConfig {
    fn default() -> Self {
        JetOrderConfig {
            trials: 100,
            seed: 0,
            r_max: 6,
            precision: crate::DEFAULT_PRECISION,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanConfig {
    pub r_max: u32,
    pub samples_per_r: u64,
    pub seed: u64,
    pub precision: i64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            r_max: 9,
            samples_per_r: 50,
            seed: 0,
            precision: crate::DEFAULT_PRECISION,
        }
    }
}

fn require_wild(cv: &CoverSpec) -> Result<()> {
    cv.validate()?;
    if matches!(cv, CoverSpec::Kummer { .. }) {
        return Err(Error::precondition("experiment needs an Artin-Schreier type cover"));
    }
    Ok(())
}

fn config_echo<C: Serialize>(cv: &CoverSpec, cfg: &C) -> serde_json::Value {
    let mut v = serde_json::to_value(cfg).expect("plain data serializes");
    let cover: serde_json::Value = serde_json::from_str(&cv.to_json()).expect("cover json");
    v["cover"] = cover;
    v
}

/// Both coordinate axes branched: transversal `r = 1` jets need `α_1 ≠ 0`.
fn two_components(cv: &CoverSpec) -> bool {
    cv.branch_data().components.len() == 2
}

fn mode_and_max(values: &[i64]) -> (i64, i64) {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_default() += 1;
    }
    let max = *counts.keys().next_back().expect("nonempty");
    // Ties go to the smaller value, so a flat distribution gets flagged.
    let top = *counts.values().max().expect("nonempty");
    let mode = *counts.iter().find(|&(_, &c)| c == top).expect("nonempty").0;
    (mode, max)
}

/// Which coordinate a perturbation is added to: the graph coordinate of a
/// regular jet, `t` for singular arcs.
#[derive(Clone, Copy)]
enum Graph {
    T,
    U,
}

fn perturb(c: &Arc, g: Graph, k: i64, gamma: crate::Fe) -> Result<Arc> {
    let f = c.field();
    let bump = LaurentSeries::monomial(f, gamma, k, c.prec());
    match g {
        Graph::T => Arc::new(c.t() + &bump, c.u().clone()),
        Graph::U => Arc::new(c.t().clone(), c.u() + &bump),
    }
}

/// A regular jet with uniform contact order (three times in four) or a
/// singular primitive arc.
fn sample_base_arc(rng: &mut ChaCha8Rng, cv: &CoverSpec, r_max: u32, prec: i64, seed: u64) -> Result<(Arc, Graph)> {
    let f = cv.field();
    if rng.gen_range(0..4) == 3 {
        return Ok((random_singular_primitive_arc(rng, f, prec, 3), Graph::T));
    }
    let r = rng.gen_range(1..=r_max.max(1));
    let js = JetSample::random(rng, f, r, r + 6, two_components(cv), seed);
    let g = if r == 1 { Graph::U } else { Graph::T };
    Ok((sample_arc(f, &js, prec)?, g))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub trial: u64,
    /// `"above"` or `"below"`: which perturbation order the pair was built with.
    pub arm: &'static str,
    pub c: ArcLiteral,
    pub d: ArcLiteral,
    pub perturbation_order: i64,
    pub intersection: i64,
    pub threshold: i64,
    /// `(C.D) >= threshold`, from the computed values.
    pub above: bool,
    pub jumps_c: Vec<i64>,
    pub jumps_d: Vec<i64>,
    pub agree: bool,
    /// Only above-threshold pairs can fail.
    pub pass: bool,
}

fn jet_order_pair(cv: &CoverSpec, trial: u64, arm: &'static str, c: &Arc, d: &Arc, k: i64) -> Result<PairRecord> {
    let intersection = c.intersect(d)?;
    let threshold = cv.jet_threshold(c, d)?;
    let jumps_c = cv.wild_jumps_on_arc(c)?;
    let jumps_d = cv.wild_jumps_on_arc(d)?;
    let above = intersection >= threshold;
    let agree = jumps_c == jumps_d;
    Ok(PairRecord {
        trial,
        arm,
        c: c.into(),
        d: d.into(),
        perturbation_order: k,
        intersection,
        threshold,
        above,
        jumps_c,
        jumps_d,
        agree,
        pass: !above || agree,
    })
}

fn jet_order_trial(cv: &CoverSpec, cfg: &JetOrderConfig, trial: u64) -> (Vec<PairRecord>, Vec<Incident>) {
    let seed = sub_seed(cfg.seed, trial);
    let mut rng = trial_rng(cfg.seed, trial);
    let mut records = Vec::new();
    let mut incidents = Vec::new();
    let res = (|| -> Result<()> {
        let (c, g) = sample_base_arc(&mut rng, cv, cfg.r_max, cfg.precision, seed)?;
        let tau = cv.jet_threshold(&c, &c)?;
        let f = cv.field();
        // Perturbing at order K keeps (C.D) >= K, so K >= τ lands above.
        let k_above = tau.max(1) + rng.gen_range(0..3);
        let k_below = (tau > 1).then(|| rng.gen_range(1..tau));
        let arms = [("above", Some(k_above)), ("below", k_below)];
        for (arm, k) in arms {
            let Some(k) = k else { continue };
            let gamma = random_nonzero(&mut rng, f);
            let rec = perturb(&c, g, k, gamma).and_then(|d| jet_order_pair(cv, trial, arm, &c, &d, k));
            match rec {
                Ok(r) => records.push(r),
                Err(e) => incidents.push(Incident::new(trial, &e)),
            }
        }
        Ok(())
    })();
    if let Err(e) = res {
        incidents.push(Incident::new(trial, &e));
    }
    (records, incidents)
}

fn collect<R>(parts: Vec<(Vec<R>, Vec<Incident>)>) -> (Vec<R>, Vec<Incident>) {
    let mut records = Vec::new();
    let mut incidents = Vec::new();
    for (r, i) in parts {
        records.extend(r);
        incidents.extend(i);
    }
    (records, incidents)
}

/// For each trial sample an arc `C`, perturb its jet once at an order at
/// least the jet threshold and once at a random lower order, and compare the
/// wild jumps along `C` and the perturbed arc. Pairs are classified by the
/// computed `(C.D)` against the computed threshold; only above-threshold pairs
/// are expected to agree.
pub fn verify_jet_order(cv: &CoverSpec, cfg: &JetOrderConfig) -> Result<ExperimentReport<PairRecord>> {
    require_wild(cv)?;
    let parts: Vec<_> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| jet_order_trial(cv, cfg, t))
        .collect();
    let (records, incidents) = collect(parts);
    let mut summary = BTreeMap::new();
    let mut put = |k: &str, v: usize| {
        summary.insert(k.to_string(), v as u64);
    };
    put("pairs", records.len());
    put("above", records.iter().filter(|r| r.above).count());
    put("above_agree", records.iter().filter(|r| r.above && r.agree).count());
    put("below", records.iter().filter(|r| !r.above).count());
    put("below_disagree", records.iter().filter(|r| !r.above && !r.agree).count());
    put("failures", records.iter().filter(|r| !r.pass).count());
    put("incidents", incidents.len());
    Ok(ExperimentReport {
        experiment: "verify_jet_order".into(),
        config: config_echo(cv, cfg),
        records,
        summary,
        incidents,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub r: u32,
    pub i: usize,
    pub w_max: i64,
    pub w_mode: i64,
    /// `w_max / r`.
    pub ratio: f64,
    pub samples: usize,
    /// Set when the mode differs from the maximum: the field may be too small
    /// for uniform samples to show the generic value.
    pub flagged: bool,
}

/// Jet order large enough that the restriction's polar part is determined.
fn scan_jet_order(cv: &CoverSpec, r: u32) -> u32 {
    let bd = cv.branch_data();
    let m = |d| bd.components.iter().find(|c| c.0 == d).map_or(0, |c| c.1) as u32;
    let (m1, m2) = (m(crate::cover::Divisor::T), m(crate::cover::Divisor::U));
    (m1 + 1) * r + m2 + 2
}

fn scan_samples<T: Send>(
    cv: &CoverSpec,
    cfg: &ScanConfig,
    r: u32,
    f: impl Fn(&Arc) -> Result<T> + Sync,
) -> (Vec<T>, Vec<Incident>) {
    let parts: Vec<_> = (0..cfg.samples_per_r)
        .into_par_iter()
        .map(|s| {
            let idx = ((r as u64) << 32) | s;
            let mut rng = trial_rng(cfg.seed, idx);
            let js = JetSample::random(
                &mut rng,
                cv.field(),
                r,
                scan_jet_order(cv, r),
                two_components(cv),
                sub_seed(cfg.seed, idx),
            );
            sample_arc(cv.field(), &js, cfg.precision)
                .and_then(|c| f(&c))
                .map_err(|e| Incident::new(idx, &e))
        })
        .collect();
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for p in parts {
        match p {
            Ok(v) => ok.push(v),
            Err(i) => bad.push(i),
        }
    }
    (ok, bad)
}

/// For `r = 1..=r_max` sample regular jets of contact order `r`, compute the
/// wild jumps along each and tabulate, per jump index, the maximum and the
/// mode. Incident trial ids are `(r << 32) | sample`.
pub fn generic_jump_scan(cv: &CoverSpec, cfg: &ScanConfig) -> Result<ExperimentReport<ScanRow>> {
    require_wild(cv)?;
    let mut records = Vec::new();
    let mut incidents = Vec::new();
    for r in 1..=cfg.r_max {
        let (jumps, inc) = scan_samples(cv, cfg, r, |c| cv.wild_jumps_on_arc(c));
        incidents.extend(inc);
        if jumps.is_empty() {
            continue;
        }
        for i in 0..cv.rank() {
            let col: Vec<i64> = jumps.iter().map(|w| w[i]).collect();
            let (w_mode, w_max) = mode_and_max(&col);
            records.push(ScanRow {
                r,
                i: i + 1,
                w_max,
                w_mode,
                ratio: w_max as f64 / r as f64,
                samples: col.len(),
                flagged: w_mode != w_max,
            });
        }
    }
    let mut summary = BTreeMap::new();
    summary.insert("rows".into(), records.len() as u64);
    summary.insert("flagged".into(), records.iter().filter(|r| r.flagged).count() as u64);
    summary.insert("incidents".into(), incidents.len() as u64);
    Ok(ExperimentReport {
        experiment: "generic_jump_scan".into(),
        config: config_echo(cv, cfg),
        records,
        summary,
        incidents,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongRecord {
    pub trial: u64,
    pub c: ArcLiteral,
    pub d: ArcLiteral,
    pub intersection: i64,
    pub threshold: i64,
    pub high_tangency: bool,
    pub filtration_c: Filtration,
    pub filtration_d: Filtration,
    pub filtration_equal: bool,
    /// Every element of inertia has the same lower index on both sides.
    pub strong_equal: bool,
    pub pass: bool,
}

fn strong_trial(cv: &CoverSpec, cfg: &JetOrderConfig, trial: u64) -> Result<StrongRecord> {
    let mut rng = trial_rng(cfg.seed, trial);
    let (c, g) = sample_base_arc(&mut rng, cv, cfg.r_max, cfg.precision, sub_seed(cfg.seed, trial))?;
    let tau = cv.jet_threshold(&c, &c)?;
    let k = tau.max(1) + rng.gen_range(0..3);
    let d = perturb(&c, g, k, random_nonzero(&mut rng, cv.field()))?;
    let intersection = c.intersect(&d)?;
    let threshold = cv.jet_threshold(&c, &d)?;
    let (rc, rd) = (cv.ramification_on_arc(&c)?, cv.ramification_on_arc(&d)?);
    let high_tangency = intersection >= threshold;
    let filtration_equal = rc.filtration() == rd.filtration();
    let strong_equal = rc.lower_indices() == rd.lower_indices();
    Ok(StrongRecord {
        trial,
        c: (&c).into(),
        d: (&d).into(),
        intersection,
        threshold,
        high_tangency,
        filtration_c: rc.filtration().clone(),
        filtration_d: rd.filtration().clone(),
        filtration_equal,
        strong_equal,
        pass: !high_tangency || (filtration_equal && strong_equal),
    })
}

/// Pairs of arcs tangent beyond the jet threshold must carry the same
/// ramification filtration, element by element, not only the same jumps.
pub fn strong_filtration_check(cv: &CoverSpec, cfg: &JetOrderConfig) -> Result<ExperimentReport<StrongRecord>> {
    require_wild(cv)?;
    let parts: Vec<_> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| strong_trial(cv, cfg, t).map_err(|e| Incident::new(t, &e)))
        .collect();
    let mut records = Vec::new();
    let mut incidents = Vec::new();
    for p in parts {
        match p {
            Ok(r) => records.push(r),
            Err(i) => incidents.push(i),
        }
    }
    let mut summary = BTreeMap::new();
    let mut put = |k: &str, v: usize| {
        summary.insert(k.to_string(), v as u64);
    };
    put("pairs", records.len());
    put("high_tangency", records.iter().filter(|r| r.high_tangency).count());
    put(
        "filtration_equal",
        records.iter().filter(|r| r.high_tangency && r.filtration_equal).count(),
    );
    put("failures", records.iter().filter(|r| !r.pass).count());
    put("incidents", incidents.len());
    Ok(ExperimentReport {
        experiment: "strong_filtration_check".into(),
        config: config_echo(cv, cfg),
        records,
        summary,
        incidents,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwanRow {
    pub r: u32,
    /// Rationals as `"a/b"`.
    pub sw_max: String,
    pub sw_mode: String,
    /// `sw_max / r`.
    pub ratio: f64,
    pub samples: usize,
    pub flagged: bool,
    pub integral: bool,
}

fn show(q: Rational64) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Swan conductor of the representation along sampled jets of each contact
/// order, with the ratio sequence `Sw_r / r`.
pub fn swan_infinity_estimate(cv: &CoverSpec, rep: &RepSpec, cfg: &ScanConfig) -> Result<ExperimentReport<SwanRow>> {
    require_wild(cv)?;
    let chars = rep.characters(cv.field().p(), cv.rank());
    if chars.iter().any(|c| c.len() != cv.rank()) {
        return Err(Error::InconsistentRepresentation(format!(
            "characters must have {} coordinates",
            cv.rank()
        )));
    }
    let mut records = Vec::new();
    let mut incidents = Vec::new();
    for r in 1..=cfg.r_max {
        let (sws, inc) = scan_samples(cv, cfg, r, |c| cv.ramification_on_arc(c)?.swan_conductor(&chars));
        incidents.extend(inc);
        if sws.is_empty() {
            continue;
        }
        // Order the rationals through a common denominator for the tally.
        let den = sws.iter().fold(1i64, |a, q| num_integer::lcm(a, *q.denom()));
        let scaled: Vec<i64> = sws.iter().map(|q| q.numer() * (den / q.denom())).collect();
        let (mode, max) = mode_and_max(&scaled);
        let (mode, max) = (Rational64::new(mode, den), Rational64::new(max, den));
        records.push(SwanRow {
            r,
            sw_max: show(max),
            sw_mode: show(mode),
            ratio: (*max.numer() as f64 / *max.denom() as f64) / r as f64,
            samples: sws.len(),
            flagged: mode != max,
            integral: sws.iter().all(|q| q.is_integer()),
        });
    }
    let mut summary = BTreeMap::new();
    summary.insert("rows".into(), records.len() as u64);
    summary.insert("flagged".into(), records.iter().filter(|r| r.flagged).count() as u64);
    summary.insert("non_integral".into(), records.iter().filter(|r| !r.integral).count() as u64);
    summary.insert("incidents".into(), incidents.len() as u64);
    Ok(ExperimentReport {
        experiment: "swan_infinity_estimate".into(),
        config: {
            let mut v = config_echo(cv, cfg);
            v["characters"] = serde_json::to_value(&chars).expect("plain data");
            v
        },
        records,
        summary,
        incidents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::AsData;
    use crate::field::{Fe, Field};
    use crate::series::{parse_biseries, BiSeries};

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn as_cover(f: &Field, m1: u32, m2: u32) -> CoverSpec {
        CoverSpec::ArtinSchreier(AsData::new(m1, m2, BiSeries::constant(f, Fe::ONE)))
    }

    #[test]
    fn threshold_pair_examples() {
        let f = f3();
        let cv = as_cover(&f, 1, 0);
        let c = Arc::parse(&f, "X", "X", 64).unwrap();
        let d = Arc::parse(&f, "X + X^2", "X", 64).unwrap();
        let rec = jet_order_pair(&cv, 0, "above", &c, &d, 2).unwrap();
        assert_eq!((rec.intersection, rec.threshold), (2, 2));
        assert_eq!((rec.jumps_c, rec.jumps_d), (vec![1], vec![1]));
        assert!(rec.pass);
    }

    #[test]
    fn jet_order_report_is_deterministic() {
        let f = f3();
        let eps = parse_biseries(&f, "1 + T + 2*U").unwrap();
        let cv = CoverSpec::ArtinSchreier(AsData::new(2, 1, eps));
        let cfg = JetOrderConfig {
            trials: 12,
            seed: 9,
            r_max: 4,
            precision: 128,
        };
        let a = verify_jet_order(&cv, &cfg).unwrap();
        let b = verify_jet_order(&cv, &cfg).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        assert_eq!(a.count("failures"), 0);
        assert!(a.count("above") >= 12);
    }

    #[test]
    fn unbranched_cover_has_zero_jumps() {
        let f = f3();
        let cv = as_cover(&f, 0, 0);
        let cfg = JetOrderConfig {
            trials: 5,
            r_max: 3,
            ..Default::default()
        };
        let rep = verify_jet_order(&cv, &cfg).unwrap();
        assert!(rep.records.iter().all(|r| r.jumps_c == vec![0] && r.agree));
        let scan = generic_jump_scan(&cv, &ScanConfig { r_max: 3, samples_per_r: 5, ..Default::default() }).unwrap();
        assert!(scan.records.iter().all(|r| r.w_max == 0));
    }

    #[test]
    fn scan_of_inverse_t() {
        let f = f3();
        let cv = as_cover(&f, 1, 0);
        let cfg = ScanConfig {
            r_max: 6,
            samples_per_r: 40,
            seed: 1,
            precision: 128,
        };
        let scan = generic_jump_scan(&cv, &cfg).unwrap();
        let max: Vec<i64> = scan.records.iter().map(|r| r.w_max).collect();
        assert_eq!(max, vec![1, 2, 2, 4, 5, 5]);
        let sw = swan_infinity_estimate(&cv, &RepSpec::AllNontrivial, &cfg).unwrap();
        // Both nontrivial characters of Z/3 have conductor w.
        let sw_max: Vec<String> = sw.records.iter().map(|r| r.sw_max.clone()).collect();
        let expect: Vec<String> = max.iter().map(|w| format!("{}/1", 2 * w)).collect();
        assert_eq!(sw_max, expect);
        let trivial = RepSpec::Characters(vec![vec![0]]);
        let sw = swan_infinity_estimate(&cv, &trivial, &cfg).unwrap();
        assert!(sw.records.iter().all(|r| r.sw_max == "0/1"));
    }

    #[test]
    fn strong_check_two_characters() {
        let f = f3();
        let one = BiSeries::constant(&f, Fe::ONE);
        let cv = CoverSpec::ElemAbelian(vec![AsData::new(1, 0, one.clone()), AsData::new(2, 0, one)]);
        let cfg = JetOrderConfig {
            trials: 10,
            seed: 3,
            r_max: 3,
            precision: 128,
        };
        let rep = strong_filtration_check(&cv, &cfg).unwrap();
        assert_eq!(rep.count("failures"), 0);
        assert_eq!(rep.count("high_tangency"), 10);
        let c = Arc::parse(&f, "X", "X", 64).unwrap();
        let ram = cv.ramification_on_arc(&c).unwrap();
        assert_eq!(ram.filtration().segments, vec![(1, 9), (4, 3)]);
    }
}
