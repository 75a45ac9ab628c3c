mod common;

use isentropes_core::entropy::*;
use isentropes_core::geometry::polyline_crossings;
use isentropes_core::q_bones::{q_trace_bone, DEFAULT_STEP};
use isentropes_core::st_bones::Side;
use isentropes_core::symbolic::admissible_order_data;
use isentropes_core::{Dyadic, Family, ParamPoint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_params, scan_neg, LOG4};

#[test]
fn neg_count_matches_diagonal_scan() {
    for p in random_params(2024, 50) {
        let scanned = scan_neg(&p, 6, 1_000_000);
        for k in 1..=6 {
            assert_eq!(neg_count(&p, k).unwrap(), scanned[k - 1], "{p:?} k={k}");
        }
    }
}

#[test]
fn zero_entropy_below_the_hyperbola() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut seen = 0;
    while seen < 20 {
        let (v, w): (f64, f64) = (rng.gen(), rng.gen());
        if v * w >= 1.0 / 16.0 {
            continue;
        }
        seen += 1;
        let dv = Dyadic::from_f64((v * 1024.0).round() / 1024.0).unwrap();
        let dw = Dyadic::from_f64((w * 1024.0).floor() / 1024.0).unwrap();
        for p in [ParamPoint::q(v, w), ParamPoint::st(dv, dw)] {
            let e = entropy_estimate(&p, 12).unwrap();
            assert!(e.h.abs() <= 0.01 && e.err <= 0.01, "{p:?}: {e:?}");
            assert_eq!(neg_count(&p, 12).unwrap(), 0, "{p:?}");
        }
    }
}

#[test]
fn full_corner_has_entropy_log_four() {
    for p in [ParamPoint::q(1.0, 1.0), ParamPoint::st(Dyadic::ONE, Dyadic::ONE)] {
        let e = entropy_estimate(&p, 14).unwrap();
        assert!((e.h - LOG4).abs() <= 0.02, "{e:?}");
    }
    let g = entropy_grid(Family::Q, 32, 12).unwrap();
    let max = g.estimates.iter().map(|e| e.h).fold(f64::MIN, f64::max);
    assert_eq!(max, g.value(31, 31));
    assert!((max - LOG4).abs() <= 0.02, "{max}");
}

#[test]
fn half_plateau_entropy_agrees_with_explicit_lap_growth() {
    let p = ParamPoint::st(Dyadic::ONE, Dyadic::HALF);
    let laps = |k| lap_structure(&p, k).unwrap().lap_signs.len() as f64;
    let oracle = (laps(16) / laps(15)).ln();
    assert!((oracle - 2f64.ln()).abs() <= 0.02, "{oracle}");
    let e = entropy_estimate(&p, 16).unwrap();
    assert!((e.h - oracle).abs() <= 0.02 && (e.h - 2f64.ln()).abs() <= 0.02, "{e:?}");
}

#[test]
fn entropy_is_symmetric_under_swapping_the_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (v, w): (f64, f64) = (rng.gen(), rng.gen());
        let a = entropy_estimate(&ParamPoint::q(v, w), 14).unwrap();
        let b = entropy_estimate(&ParamPoint::q(w, v), 14).unwrap();
        assert!((a.h - b.h).abs() <= 2.0 * a.err.max(b.err) + 1e-12, "({v}, {w}): {a:?} vs {b:?}");
    }
}

#[test]
fn stunted_entropy_is_monotone_in_each_coordinate() {
    let g = entropy_grid(Family::St, 64, 14).unwrap();
    for j in 0..64 {
        for i in 0..63 {
            for ((a, b), (c, d)) in [((i, j), (i + 1, j)), ((j, i), (j, i + 1))] {
                let (lo, hi) = (g.estimate(a, b), g.estimate(c, d));
                assert!(hi.h >= lo.h - lo.err - hi.err - 1e-12, "({a},{b}) -> ({c},{d})");
            }
        }
    }
}

#[test]
fn entropy_grows_along_the_upper_and_right_boundary() {
    let top: Vec<ParamPoint> = (0..=100).map(|i| ParamPoint::q(i as f64 / 100.0, 1.0)).collect();
    let right: Vec<ParamPoint> = (0..=100).map(|i| ParamPoint::q(1.0, i as f64 / 100.0)).collect();
    for path in [top, right] {
        let r = entropy_monotonicity_audit(&path, 14).unwrap();
        assert!(r.passed, "{:?}", r.violations);
    }
}

#[test]
fn entropy_grows_from_primary_vertex_along_bone_arcs() {
    for n in 1..=2 {
        for od in admissible_order_data(n) {
            for side in [Side::Left, Side::Right] {
                let bone = q_trace_bone(&od, side, DEFAULT_STEP).unwrap();
                let k = bone.primary().unwrap().position as usize;
                let arcs = [bone.polyline[..=k].iter().rev().copied().collect::<Vec<_>>(), bone.polyline[k..].to_vec()];
                for arc in arcs {
                    let stride = (arc.len() / 40).max(1);
                    let mut path: Vec<ParamPoint> =
                        arc.iter().step_by(stride).map(|&(v, w)| ParamPoint::q(v, w)).collect();
                    let last = *arc.last().unwrap();
                    path.push(ParamPoint::q(last.0, last.1));
                    let r = entropy_monotonicity_audit(&path, 14).unwrap();
                    assert!(r.passed, "{side} {od}: {:?}", r.violations);
                }
            }
        }
    }
}

#[test]
fn grid_output_does_not_depend_on_thread_count() {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| entropy_grid(Family::Q, 12, 8).unwrap());
    let b = four.install(|| entropy_grid(Family::Q, 12, 8).unwrap());
    assert_eq!(a, b);
}

#[test]
fn entropy_jumps_are_separated_by_bones() {
    let ods: Vec<_> = (1..=4).flat_map(admissible_order_data).collect();
    let bones: Vec<Vec<(f64, f64)>> = ods
        .iter()
        .flat_map(|od| [Side::Left, Side::Right].map(|s| q_trace_bone(od, s, DEFAULT_STEP).unwrap().polyline))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    let mut tested = 0;
    while tested < 30 {
        let a = ParamPoint::q(rng.gen(), rng.gen());
        let b = ParamPoint::q(rng.gen(), rng.gen());
        let (ha, hb) = (entropy_estimate(&a, 12).unwrap().h, entropy_estimate(&b, 12).unwrap().h);
        if (ha - hb).abs() <= 0.05 {
            continue;
        }
        tested += 1;
        let path = [(a.v, a.w), (b.v, b.w)];
        assert!(
            bones.iter().any(|bone| !polyline_crossings(&path, bone).is_empty()),
            "no bone between {a:?} (h={ha}) and {b:?} (h={hb})"
        );
    }
}

/// Both estimators within 0.05 of each other on a 32×32 logistic grid at
/// kmax = 14. Lap ratios carry a bias near `1/k` where lap growth is
/// polynomial, and `(1/k) log Neg` a bias near `log(C)/k`, so this does not
/// hold at desk-scale iterate counts.
#[test]
#[ignore = "estimators differ by up to 0.24 at kmax 14; see README"]
fn estimators_agree_within_five_hundredths() {
    let g = entropy_grid(Family::Q, 32, 14).unwrap();
    let bad: Vec<&EntropyEstimate> = g.estimates.iter().filter(|e| e.err > 0.05).collect();
    assert!(bad.is_empty(), "{} of {} cells exceed 0.05", bad.len(), g.estimates.len());
}

fn any_param() -> impl Strategy<Value = ParamPoint> {
    prop_oneof![
        (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(v, w)| ParamPoint::q(v, w)),
        (1..=1024i128, 1..=1024i128).prop_map(|(a, b)| ParamPoint::st(Dyadic::new(a, 10), Dyadic::new(b, 10))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neg_bounded_by_decreasing_laps(p in any_param(), k in 1usize..=5) {
        let s = lap_structure(&p, k).unwrap();
        let decreasing = s.lap_signs.iter().filter(|&&x| x < 0).count() as u64;
        let neg = neg_count(&p, k).unwrap();
        prop_assert!(neg <= decreasing);
        prop_assert!(decreasing <= lap_count(&p, k).unwrap());
        prop_assert_eq!(s.lap_signs.len() as u64, lap_count(&p, k).unwrap());
        prop_assert_eq!(neg, neg_count_explicit(&p, k).unwrap());
    }

    #[test]
    fn stunted_counts_are_reproducible(a in 1..=1024i128, b in 1..=1024i128, k in 1usize..=8) {
        let p = ParamPoint::st(Dyadic::new(a, 10), Dyadic::new(b, 10));
        prop_assert_eq!(lap_count(&p, k).unwrap(), lap_count(&p, k).unwrap());
        prop_assert_eq!(neg_count(&p, k).unwrap(), neg_count(&p, k).unwrap());
        let (e1, e2) = (entropy_estimate(&p, 8).unwrap(), entropy_estimate(&p, 8).unwrap());
        prop_assert_eq!(e1.h.to_bits(), e2.h.to_bits());
    }

    #[test]
    fn breakpoints_are_sorted_inside_the_interval(p in any_param(), k in 1usize..=4) {
        let s = lap_structure(&p, k).unwrap();
        prop_assert_eq!(s.breakpoints.len() + 1, s.lap_signs.len());
        prop_assert!(s.breakpoints.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s.breakpoints.iter().all(|&b| (0.0..=1.0).contains(&b)));
    }
}
