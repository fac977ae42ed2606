use gcr_core::catalog::{list_scenarios, run_scenario, run_scenario_with, Catalog, RunSettings};
use gcr_core::format::parse_source;

#[test]
fn every_scenario_passes() {
    for s in list_scenarios() {
        let out = run_scenario(s.name).unwrap();
        eprintln!("{} {} ms", s.name, out.millis);
        assert!(out.passed(), "{}: {out}", s.name);
    }
}

#[test]
fn dropping_a_term_from_sq_s_is_caught() {
    let o = parse_source(
        "ring HO2F2 = F2 [w1:1, w2:2, rb:2, s:3] / (rb*w1, rb^2, rb*s, s^2);
         sq SqO2 on HO2F2 = (w1 -> w1 + w1^2, w2 -> w2 + w1*w2 + w2^2, rb -> rb, s -> s + w1^2*s);",
    )
    .unwrap();
    let cat = Catalog::builtin().unwrap().with_overrides(&o).unwrap();
    let out = run_scenario_with("steenrod-o2", &cat, &RunSettings::default()).unwrap();
    assert!(!out.passed());
    assert!(out.witnesses.iter().any(|w| w.contains("Sq^1(s)")), "{out}");
}

#[test]
fn so3_action_without_top_square_fails_instability() {
    let o = parse_source(
        "ring HSO3F2 = F2 [w2:2, wb:3, yb1:4] / (yb1^2, wb*yb1, wb^2 + w2*yb1);
         sq SqSO3 on HSO3F2 = (w2 -> w2 + wb, wb -> wb + w2*wb + w2*yb1, yb1 -> yb1 + w2*yb1);",
    )
    .unwrap();
    let cat = Catalog::builtin().unwrap().with_overrides(&o).unwrap();
    let out = run_scenario_with("steenrod-so3", &cat, &RunSettings::default()).unwrap();
    assert!(!out.passed());
    assert!(out.witnesses.iter().any(|w| w.contains("Sq^2(w2)")), "{out}");
}

#[test]
fn wrong_expected_kernel_fails_with_witness() {
    let o = parse_source("ring A3P = ZZ [p1:4, w:3, y1:4]; ideal A3theorem in A3P = (2*w, y1^2, w*y1);").unwrap();
    let cat = Catalog::builtin().unwrap().with_overrides(&o).unwrap();
    let out = run_scenario_with("appendix-a3-kernel", &cat, &RunSettings::default()).unwrap();
    assert!(!out.passed());
    assert!(out.witnesses.iter().any(|w| w.contains("w^3")), "{out}");
}

#[test]
fn o2_mayer_vietoris_degree_two() {
    use gcr_core::graded::{fp_group_hom_kernel, GradedMapSpec, GroupSlice};
    // Degree 2: a -> z with 2z = 0 and W1 -> 0 with 2W1 = 0, so the kernel
    // is 2Z*a + Z/2*W1.
    let cat = Catalog::builtin().unwrap();
    let spec = GradedMapSpec::new(
        cat.ring("CO2").unwrap(),
        vec![(cat.map("qO2").unwrap().clone(), 1), (cat.map("iO2").unwrap().clone(), -1)],
    )
    .unwrap();
    assert_eq!(fp_group_hom_kernel(&spec, 2).unwrap().group, GroupSlice::new(1, &[2]));
}

#[test]
fn esu2_is_su2_modulo_c2_degreewise() {
    use gcr_core::graded::slice_group;
    use gcr_core::QuotientPresentation;
    let cat = Catalog::builtin().unwrap();
    let su2 = cat.ring("HSU2").unwrap();
    let mut rels = su2.relations().generators().to_vec();
    rels.push(su2.ambient().var_at(0));
    let quotient = QuotientPresentation::new(su2.ambient(), rels).unwrap();
    let esu2 = cat.ring("HESU2").unwrap();
    for n in 0..=16 {
        assert_eq!(slice_group(&quotient, n).unwrap(), slice_group(esu2, n).unwrap(), "degree {n}");
    }
}
