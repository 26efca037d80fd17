//! Randomized exact verification of the determinant and map identities.
//!
//! Each trial draws fresh integer points from a ChaCha stream seeded with
//! `seed + trial`, so any failing trial can be replayed in isolation.

use crate::latgeom::{laplace_delta_expand, IntPoint};
use crate::maps::{det2, det3, face, prop43_witness, MapKernel, MapsError, Prop43Report, Sign};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Names of the checked identities, in report order.
pub const IDENTITIES: &[&str] = &[
    "det-delta-expansion",
    "e-trilinear",
    "e-symmetric",
    "e-diagonal",
    "e-repeated",
    "psi-minus-face",
    "psi-plus-face",
    "xi-forms-agree",
    "xi-c-wx",
    "xi-c-xw",
    "xi-xzw",
];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FuzzRecord {
    pub identity: &'static str,
    pub seed: u64,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct IdentityTally {
    pub passed: u64,
    pub failed: u64,
    pub first_failing_seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzSummary {
    pub kernel: String,
    pub trials: u64,
    pub seed: u64,
    pub coeff_bound: i64,
    pub tallies: BTreeMap<&'static str, IdentityTally>,
}

impl FuzzSummary {
    pub fn all_passed(&self) -> bool {
        self.tallies.values().all(|t| t.failed == 0)
    }

    pub fn total_failures(&self) -> u64 {
        self.tallies.values().map(|t| t.failed).sum()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    pub coeff_bound: i64,
}

fn rand_point(rng: &mut ChaCha8Rng, n: usize, b: i64) -> IntPoint {
    IntPoint((0..n).map(|_| BigInt::from(rng.gen_range(-b..=b))).collect())
}

fn lin(a: &BigInt, x: &IntPoint, b: &BigInt, y: &IntPoint) -> IntPoint {
    IntPoint(x.0.iter().zip(&y.0).map(|(p, q)| a * p + b * q).collect())
}

fn show(points: &[(&str, &IntPoint)]) -> String {
    points
        .iter()
        .map(|(n, p)| format!("{n}={p}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One trial: returns `(identity, witness-if-failed)` for every identity.
pub fn run_trial<K: MapKernel + ?Sized>(
    k: &K,
    seed: u64,
    bound: i64,
) -> Vec<(&'static str, Option<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(IDENTITIES.len());
    let mut check = |name: &'static str, ok: bool, w: &dyn Fn() -> String| {
        out.push((name, if ok { None } else { Some(w()) }));
    };

    // Determinant expansion for n = 1, 2, 3.
    let mut bad = None;
    for n in 1..=3usize {
        let rows: Vec<IntPoint> = (0..=n).map(|_| rand_point(&mut rng, n + 1, bound)).collect();
        let refs: Vec<&IntPoint> = rows.iter().collect();
        let (l, r) = laplace_delta_expand(&refs).expect("square");
        if l != r && bad.is_none() {
            bad = Some(format!(
                "n={n} rows={}",
                rows.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
    }
    check("det-delta-expansion", bad.is_none(), &|| bad.clone().unwrap());

    let w = rand_point(&mut rng, 4, bound);
    let w2 = rand_point(&mut rng, 4, bound);
    let x = rand_point(&mut rng, 4, bound);
    let y = rand_point(&mut rng, 4, bound);
    let z = rand_point(&mut rng, 4, bound);
    let s = BigInt::from(rng.gen_range(-bound..=bound));
    let one = BigInt::from(1);

    // Additivity and homogeneity in each slot.
    let sum = lin(&one, &w, &one, &w2);
    let scaled = lin(&s, &w, &BigInt::from(0), &w2);
    let e = |a: &IntPoint, b: &IntPoint, c: &IntPoint| k.e(a, b, c);
    let tri = e(&sum, &x, &y) == e(&w, &x, &y).add(&e(&w2, &x, &y))
        && e(&x, &sum, &y) == e(&x, &w, &y).add(&e(&x, &w2, &y))
        && e(&x, &y, &sum) == e(&x, &y, &w).add(&e(&x, &y, &w2))
        && e(&scaled, &x, &y) == e(&w, &x, &y).scale(&s)
        && e(&x, &scaled, &y) == e(&x, &w, &y).scale(&s)
        && e(&x, &y, &scaled) == e(&x, &y, &w).scale(&s);
    let wit = || show(&[("w1", &w), ("w2", &w2), ("x", &x), ("y", &y)]) + &format!(" s={s}");
    check("e-trilinear", tri, &wit);
    check("e-symmetric", e(&w, &x, &y) == e(&x, &w, &y), &|| {
        show(&[("w", &w), ("x", &x), ("y", &y)])
    });
    check("e-diagonal", e(&x, &x, &y) == k.c(&x, &y).scale(&BigInt::from(2)), &|| {
        show(&[("x", &x), ("y", &y)])
    });
    let mcyx = k.c(&y, &x).neg();
    check(
        "e-repeated",
        e(&x, &y, &y) == mcyx && e(&y, &x, &y) == mcyx,
        &|| show(&[("x", &x), ("y", &y)]),
    );

    // Faces of Ψ±.
    for (sgn, name) in [(Sign::Minus, "psi-minus-face"), (Sign::Plus, "psi-plus-face")] {
        let psi = k.psi(sgn, &x, &y, &z);
        let f = IntPoint(face(&psi, sgn).to_vec());
        let xs = face(&x, sgn);
        let ys = face(&y, sgn);
        let a = det3(xs, ys, face(&z, Sign::Plus));
        let b = det3(xs, ys, face(&z, Sign::Minus));
        let rhs = lin(&a, &y.minus(), &-b, &y.plus());
        check(name, f == rhs, &|| show(&[("x", &x), ("y", &y), ("z", &z)]));
    }

    // Ξ and its identities.
    let xa = k.xi_via_psi(&x, &y, &z);
    let xb = k.xi_expanded(&x, &y, &z);
    check("xi-forms-agree", xa == xb, &|| show(&[("x", &x), ("y", &y), ("z", &z)]));
    let wv = xa;
    let c = |a: &IntPoint, b: &IntPoint| k.c(a, b);
    let d_zx_zy = det2(&c(&z, &x), &c(&z, &y));
    let d_xy_xz = det2(&c(&x, &y), &c(&x, &z));
    let d_xz_zx = det2(&c(&x, &z), &c(&z, &x));
    let wit3 = || show(&[("x", &x), ("y", &y), ("z", &z), ("w", &wv)]);
    check(
        "xi-c-wx",
        c(&wv, &x) == c(&x, &z).scale(&(&d_zx_zy * &d_xy_xz)),
        &wit3,
    );
    check("xi-c-xw", c(&x, &wv) == c(&z, &x).scale(&d_xy_xz), &wit3);
    let xzw = k.xi_via_psi(&x, &z, &wv);
    let lhs_coeff = det2(&c(&wv, &x), &c(&x, &wv));
    let closed = &d_zx_zy * &d_xy_xz * &d_xy_xz * &d_xz_zx;
    check(
        "xi-xzw",
        xzw == z.scale(&lhs_coeff) && lhs_coeff == closed,
        &wit3,
    );
    out
}

/// Runs `cfg.trials` trials, streaming one record per identity per trial.
pub fn run_fuzz<K: MapKernel + ?Sized>(
    k: &K,
    cfg: &FuzzConfig,
    mut sink: impl FnMut(&FuzzRecord),
) -> FuzzSummary {
    let mut summary = FuzzSummary {
        kernel: k.name().to_string(),
        trials: cfg.trials,
        seed: cfg.seed,
        coeff_bound: cfg.coeff_bound,
        tallies: IDENTITIES.iter().map(|&n| (n, IdentityTally::default())).collect(),
    };
    for trial in 0..cfg.trials {
        let seed = cfg.seed.wrapping_add(trial);
        for (identity, witness) in run_trial(k, seed, cfg.coeff_bound) {
            let t = summary.tallies.get_mut(identity).expect("known identity");
            let ok = witness.is_none();
            if ok {
                t.passed += 1;
            } else {
                t.failed += 1;
                t.first_failing_seed.get_or_insert(seed);
            }
            sink(&FuzzRecord {
                identity,
                seed,
                ok,
                witness,
            });
        }
    }
    summary
}

/// Outcome of the synthetic suite for the vanishing-minor construction.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Prop43Summary {
    pub trials: u64,
    pub seed: u64,
    pub coeff_bound: i64,
    /// Draws rejected because `(v, w, x, y)` was not a basis or `x⁻ ∧ x⁺ = 0`.
    pub redraws: u64,
    pub green: u64,
    pub failed: u64,
    pub first_failing_seed: Option<u64>,
    /// Instances whose solution has `c = 0`.
    pub c_zero: u64,
}

impl Prop43Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.green == self.trials
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop43Record {
    pub seed: u64,
    pub v: Vec<String>,
    pub w: Vec<String>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub report: Prop43Report,
    pub ok: bool,
}

/// One instance: draws bases from the seeded stream until the construction
/// applies, then runs it.
pub fn prop43_trial(seed: u64, bound: i64) -> (Prop43Record, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut redraws = 0;
    loop {
        let pts: Vec<IntPoint> = (0..4).map(|_| rand_point(&mut rng, 4, bound)).collect();
        match prop43_witness(&pts[0], &pts[1], &pts[2], &pts[3]) {
            Ok(report) => {
                let ok = report.all_green();
                let rec = Prop43Record {
                    seed,
                    v: pts[0].to_strings(),
                    w: pts[1].to_strings(),
                    x: pts[2].to_strings(),
                    y: pts[3].to_strings(),
                    report,
                    ok,
                };
                return (rec, redraws);
            }
            Err(MapsError::DegenerateBasis(_)) | Err(MapsError::NoNontrivialSolution) => redraws += 1,
            Err(e) => panic!("unexpected construction error: {e}"),
        }
    }
}

pub fn run_prop43(cfg: &FuzzConfig, mut sink: impl FnMut(&Prop43Record)) -> Prop43Summary {
    let mut s = Prop43Summary {
        trials: cfg.trials,
        seed: cfg.seed,
        coeff_bound: cfg.coeff_bound,
        ..Default::default()
    };
    for trial in 0..cfg.trials {
        let seed = cfg.seed.wrapping_add(trial);
        let (rec, redraws) = prop43_trial(seed, cfg.coeff_bound);
        s.redraws += redraws;
        if rec.report.c_is_zero {
            s.c_zero += 1;
        }
        if rec.ok {
            s.green += 1;
        } else {
            s.failed += 1;
            s.first_failing_seed.get_or_insert(seed);
        }
        sink(&rec);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{ExactKernel, FlippedEKernel};

    #[test]
    fn exact_kernel_passes_small_run() {
        let cfg = FuzzConfig {
            trials: 50,
            seed: 7,
            coeff_bound: 1000,
        };
        let mut n = 0;
        let s = run_fuzz(&ExactKernel, &cfg, |_| n += 1);
        assert!(s.all_passed(), "{s:?}");
        assert_eq!(n, 50 * IDENTITIES.len());
    }

    #[test]
    fn flipped_kernel_is_caught_with_witness() {
        let cfg = FuzzConfig {
            trials: 5,
            seed: 1,
            coeff_bound: 50,
        };
        let mut witnesses = Vec::new();
        let s = run_fuzz(&FlippedEKernel, &cfg, |r| {
            if !r.ok {
                witnesses.push(r.clone());
            }
        });
        assert!(!s.all_passed());
        assert!(s.tallies["e-diagonal"].failed > 0);
        assert_eq!(s.tallies["e-diagonal"].first_failing_seed, Some(1));
        assert!(witnesses.iter().all(|w| w.witness.is_some()));
    }

    #[test]
    fn trials_replay_identically() {
        let a = run_trial(&ExactKernel, 99, 1000);
        let b = run_trial(&ExactKernel, 99, 1000);
        assert_eq!(a, b);
    }

    #[test]
    fn prop43_suite_small_run() {
        let cfg = FuzzConfig {
            trials: 40,
            seed: 3,
            coeff_bound: 20,
        };
        let mut seen = Vec::new();
        let s = run_prop43(&cfg, |r| seen.push(r.seed));
        assert!(s.all_passed(), "{s:?}");
        assert_eq!(seen, (3..43).collect::<Vec<u64>>());
        assert_eq!(prop43_trial(5, 20).0.report.z, prop43_trial(5, 20).0.report.z);
    }
}
