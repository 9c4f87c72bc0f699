use golod_core::combinat::{enumerate_j, j_cardinality, orbit_size, DEFAULT_ENUMERATION_CAP};
use golod_core::gscore::{build_blueprint, check_blueprint, decide_size_condition, minimal_n, GSBlueprint, GSParams, Mode};
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

fn params(d: u32, num: i64, den: i64) -> Option<GSParams> {
    GSParams::new(d, BigRational::new(num.into(), den.into())).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbits_partition_all_index_words(q in 1u32..=5, n in 1usize..=6) {
        let js = enumerate_j(q, n, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(BigUint::from(js.len()), j_cardinality(&BigUint::from(q), &BigUint::from(n)));
        let total: BigUint = js.iter().map(orbit_size).sum();
        prop_assert_eq!(total, BigUint::from(q).pow(n as u32));
    }

    #[test]
    fn least_solution_agrees_with_a_linear_scan(
        d in 2u32..=4,
        num in 1i64..=20,
        den in 1i64..=20,
        q in 2u32..=12,
        c_prev in 0u32..=10,
    ) {
        let Some(p) = params(d, num, den) else { return Ok(()) };
        let q = BigUint::from(q);
        let found = minimal_n(&q, &BigUint::from(c_prev), &p).unwrap();
        let holds = |n: u64| decide_size_condition(&q, &BigUint::from(n), &p).unwrap().holds;
        let start = (c_prev as u64 + 1).max(2);
        let scan = (start..).find(|&n| holds(n)).unwrap();
        prop_assert_eq!(found, BigUint::from(scan));
    }
}

#[test]
fn blueprint_survives_a_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    for (d, num, den, blocks) in [(3, 1, 2, 2), (2, 9, 20, 2), (4, 1, 1, 2)] {
        let bp = build_blueprint(&params(d, num, den).unwrap(), blocks, Mode::Symbolic).unwrap();
        let path = dir.path().join(format!("bp{d}.json"));
        bp.save(&path).unwrap();
        let back = GSBlueprint::load(&path).unwrap();
        assert_eq!(back, bp);
        assert!(check_blueprint(&back).passed());
        assert_eq!(std::fs::read_to_string(&path).unwrap(), back.to_json());
    }
}

#[test]
fn tampered_files_are_rejected() {
    let bp = build_blueprint(&params(3, 1, 2).unwrap(), 1, Mode::Symbolic).unwrap();
    let json = bp.to_json();
    let (head, tail) = json.rsplit_once("\"11\": \"78\"").unwrap();
    let r_only = format!("{head}\"11\": \"79\"{tail}");
    assert!(GSBlueprint::from_json(&r_only).is_err());
    // profile and r agree but no longer match |J|
    let both = json.replace("\"11\": \"78\"", "\"11\": \"79\"");
    assert!(GSBlueprint::from_json(&both).is_err());
    let wrong_n = json.replace("\"n\": \"11\"", "\"n\": \"12\"");
    assert!(GSBlueprint::from_json(&wrong_n).is_err());
    assert_eq!(GSBlueprint::from_json(&json).unwrap(), bp);
}
