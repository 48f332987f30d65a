use geodiscord::discord::gqd_3x3;
use geodiscord::states::{build_family, Params};

#[test]
fn crate_level_example() {
    let params: Params = [("beta".to_string(), 0.5)].into_iter().collect();
    let rho = build_family("isotropic", &params).unwrap();
    let d = gqd_3x3(&rho).unwrap();
    assert!((d.value - 32.0 / 243.0 * 0.25).abs() < 1e-12);
}
