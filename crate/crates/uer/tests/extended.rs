//! Extended corpus checks beyond the acceptance criteria: seeded samples of
//! the 4x4 enumeration round-trip through the recognizers.

use uer::drawing::{canonicalize, extract_graph, validate, Model};
use uer::oracle::{enumerate_drawings, splitmix64, EnumerationBudget};
use uer::outcome::Constraints;
use uer::recognize::{recognize, RecognizerVariant};

#[test]
fn sampled_4x4_corpus_round_trips() {
    let mut checked = 0u32;
    let mut unconstrained = 0u32;
    for (model, sample_count) in [(Model::Rf, 220u64), (Model::Usf, 60u64)] {
        let res = enumerate_drawings(&EnumerationBudget::new(4, 4, 64), model);
        assert!(res.complete);
        let len = res.drawings.len() as u64;
        for i in 0..sample_count {
            let idx = (splitmix64(0xC0FFEE ^ (i * 7919)) % len) as usize;
            let d = &res.drawings[idx];
            let ext = extract_graph(d).expect("corpus drawing extracts");
            let k = ext.graph.vertices_of_degree(3).len();

            // constrained: the extracted boundary pins the rectangle. Skip
            // the rare assignment-search cases with too many degree-3
            // vertices to keep the runtime bounded.
            let inner2_ok = uer::inner2::is_inner2(&ext.graph, &ext.external_cycle);
            let all_deg3_on_c = ext
                .graph
                .vertices_of_degree(3)
                .iter()
                .all(|v| ext.external_cycle.contains(v));
            if inner2_ok || all_deg3_on_c || k <= 9 {
                let constraints = Constraints {
                    external_cycle: Some(ext.external_cycle.clone()),
                    corners: Some(ext.corners),
                    ..Default::default()
                };
                let out = recognize(&ext.graph, model, RecognizerVariant::Auto, &constraints, 1)
                    .expect("constraints well formed");
                let got = out
                    .drawing()
                    .unwrap_or_else(|| panic!("constrained round trip rejected ({model})"));
                assert!(validate(got).valid);
                let (want, have) = (canonicalize(d), canonicalize(got));
                assert_eq!(
                    (want.width(), want.height()),
                    (have.width(), have.height()),
                    "dimensions differ on a 4x4 sample ({model})"
                );
                checked += 1;
            }

            // unconstrained assignment search on the smaller instances
            if k <= 8 && unconstrained < 40 {
                let out = recognize(
                    &ext.graph,
                    Model::Rf,
                    RecognizerVariant::Fpt,
                    &Constraints::none(),
                    1,
                )
                .unwrap();
                assert!(out.is_accept(), "fpt rejected a drawable 4x4 sample");
                unconstrained += 1;
            }
        }
    }
    assert!(checked >= 200, "only {checked} constrained samples ran");
    assert!(unconstrained >= 30, "only {unconstrained} unconstrained samples ran");
    println!("extended: {checked} constrained and {unconstrained} unconstrained 4x4 samples pass");
}
