mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wrc_core::resolution::{betti_from_resolution, resolve_k, ResolutionError, ResolutionExport};
use wrc_core::CurveData;

use common::{parse_table, random_r_vector, K_1_2, K_2_2, K_3_2};

fn resolve(d: u32, e: u32, steps: u32) -> wrc_core::resolution::Resolution {
    resolve_k(&CurveData::build(d, e).unwrap(), steps, None).unwrap()
}

#[test]
fn small_tables_match() {
    for (d, e, golden) in [(1, 2, K_1_2), (2, 2, K_2_2), (3, 2, K_3_2)] {
        let t = betti_from_resolution(&resolve(d, e, 4));
        assert_eq!(t.window(4, 4), parse_table(golden), "({d},{e})");
    }
}

#[test]
fn totals_follow_the_ungraded_series() {
    for (d, e) in [(2, 2), (3, 2), (2, 3), (4, 1), (1, 3)] {
        let r = resolve(d, e, 4);
        let n = (d + e) as usize;
        for i in 2..=4u32 {
            assert_eq!(
                r.rank(i),
                (n - 1).pow(2) * (n - 2).pow(i - 2),
                "({d},{e}) i = {i}"
            );
        }
        assert_eq!(r.rank(1), n);
    }
}

#[test]
fn differentials_compose_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (d, e) in [(2, 3), (3, 2), (1, 3)] {
        let r = resolve(d, e, 3);
        assert_eq!(r.check_d_squared().unwrap(), None);
        assert_eq!(r.check_minimal(), None);
        for _ in 0..20 {
            for i in 2..=3 {
                let v = random_r_vector(&mut rng, &r, r.rank(i));
                let once = r.apply(i, &v).unwrap();
                assert!(r.apply(i - 1, &once).unwrap().iter().all(|p| p.is_zero()));
            }
        }
    }
}

#[test]
fn export_survives_json() {
    let r = resolve(2, 2, 3);
    let json = serde_json::to_string(&r.export()).unwrap();
    let back: ResolutionExport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r.export());
    let parsed = back.parse_entries(r.ambient()).unwrap();
    for (i, step) in parsed.iter().enumerate() {
        assert_eq!(step, &r.entries(i as u32 + 1));
    }
}

#[test]
fn low_cap_reports_partial_result() {
    let c = CurveData::build(2, 2).unwrap();
    match resolve_k(&c, 3, Some(3)) {
        Err(ResolutionError::IncompleteResolution { partial, cap, .. }) => {
            assert_eq!(cap, 3);
            assert_eq!(partial.rank(1), 4);
        }
        other => panic!("expected an incomplete resolution, got {other:?}"),
    }
}
