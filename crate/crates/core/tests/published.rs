//! Published values from the built-in catalog, at modest cutoffs.

use skewgor::presentations::catalog::{catalog, unverified};
use skewgor::report::Verdict;
use skewgor::suite::{check_expectation, verify_entry, SuiteOptions};

fn opts() -> SuiteOptions {
    SuiteOptions { cutoff_z: 8, cutoff_h: 4, census_full: false, sample: 500, ..Default::default() }
}

fn passes(name: &str, key: &str) {
    let e = catalog(name).unwrap();
    let exp = e.expect(key).unwrap_or_else(|| panic!("{name} has no {key}"));
    let r = check_expectation(&e, exp, &opts());
    assert_eq!(r.verdict, Verdict::Pass, "{name} {key}: {r:?}");
}

#[test]
fn case_iv_all_values() {
    let e = catalog("caseIV").unwrap();
    for r in verify_entry(&e, &opts()) {
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }
}

#[test]
fn case_xii_poincare_and_tor() {
    passes("caseXII", "inverse_poincare");
    passes("caseXII", "betti");
    passes("caseXII", "koszul");
}

#[test]
fn rank_nine_dual_series() {
    for name in ["case79", "case83"] {
        passes(name, "dual_inverse");
    }
    passes("case79", "cubic_relations");
    passes("case79", "dual_gb_degree");
}

#[test]
fn r33_in_characteristic_47() {
    passes("R33", "dual_times_square");
    passes("R33", "tor3_dual");
}

#[test]
fn m_cubed_zero_rings() {
    for name in ["I29", "I54", "I78"] {
        passes(name, "dual_series");
        passes(name, "lofwall");
        passes(name, "bogvad");
    }
    passes("skewI78", "bogvad");
}

#[test]
fn case63_witness_and_sample() {
    passes("case63", "witness_order");
    passes("case63", "census");
    passes("case77", "skew_gb");
}

#[test]
fn case77_published_census_is_not_reproduced() {
    let e = catalog("case77").unwrap();
    let r = check_expectation(&e, e.expect("census").unwrap(), &opts());
    assert_eq!(r.verdict, Verdict::Fail);
}

#[test]
fn unverified_list_is_nonempty() {
    assert!(!unverified().is_empty());
}
