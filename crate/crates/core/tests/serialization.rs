use reidlab::emden_fowler::{Branch, EFState};
use reidlab::invariant::Formulation;
use reidlab::linear::{FrequencyModel, SuperpositionCoefficients};
use reidlab::mechanics::KeplerParams;
use reidlab::numerics::ToleranceConfig;

#[test]
fn frequency_models_round_trip() {
    let models = [
        FrequencyModel::Zero,
        FrequencyModel::constant(1.5),
        FrequencyModel::Polynomial { coeffs: vec![1.0, 0.0, 0.25] },
    ];
    for model in models {
        let json = serde_json::to_string(&model).unwrap();
        let back: FrequencyModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, model);
    }
    let parsed: FrequencyModel = serde_json::from_str(r#"{"kind": "constant", "omega_sq": 2.0}"#).unwrap();
    assert_eq!(parsed.omega_sq(10.0), 2.0);
}

#[test]
fn tabulated_frequency_is_validated_on_load() {
    let ok: FrequencyModel =
        serde_json::from_str(r#"{"kind": "tabulated", "grid": [0.0, 1.0, 2.0], "values": [1.0, 2.0, 1.5]}"#).unwrap();
    assert_eq!(ok.omega_sq(1.0), 2.0);
    let json = serde_json::to_string(&ok).unwrap();
    assert_eq!(serde_json::from_str::<FrequencyModel>(&json).unwrap(), ok);
    assert!(serde_json::from_str::<FrequencyModel>(
        r#"{"kind": "tabulated", "grid": [1.0, 0.0], "values": [1.0, 2.0]}"#
    )
    .is_err());
}

#[test]
fn plain_records_round_trip() {
    let tol = ToleranceConfig::new(1e-9, 1e-11, 500).unwrap();
    assert_eq!(serde_json::from_str::<ToleranceConfig>(&serde_json::to_string(&tol).unwrap()).unwrap(), tol);

    let c = SuperpositionCoefficients::new(0.5, -1.0).unwrap();
    assert_eq!(serde_json::from_str::<SuperpositionCoefficients>(&serde_json::to_string(&c).unwrap()).unwrap(), c);

    let s = EFState { y: 1.0, rtilde: 2.0, rtilde_y: -0.5 };
    assert_eq!(serde_json::from_str::<EFState>(&serde_json::to_string(&s).unwrap()).unwrap(), s);

    let k = KeplerParams::new(1.0, 0.5, 3).unwrap();
    assert_eq!(serde_json::from_str::<KeplerParams>(&serde_json::to_string(&k).unwrap()).unwrap(), k);

    assert_eq!(serde_json::to_string(&Branch::Minus).unwrap(), "\"minus\"");
    assert_eq!(serde_json::to_string(&Formulation::HigherEf).unwrap(), "\"higher_ef\"");
}
