//! Complete-path irreducibility: η(s) maximizes the bottleneck overlap of
//! a label sequence visiting every state, divided by its length; ζ weighs
//! in the rarest state. Orthogonal sources are reducible (η = 0).

use tradeoff_lab::ensemble::{eta, eta_exhaustive, exhaustive_cap, Ensemble, EnsembleEntry};
use tradeoff_lab::qmat::{DensityOperator, PureState};

fn show(name: &str, s: &Ensemble) {
    let r = eta(s, None).unwrap();
    let witness = if r.witness_path.is_empty() {
        "(none)".to_string()
    } else {
        r.witness_path.labels().join(" → ")
    };
    println!(
        "{name:<34} η = {:<12.9} ζ = {:<12.9} witness: {witness}",
        r.eta, r.zeta
    );
}

fn main() {
    show("orthogonal pair {|0>, |1>}", &Ensemble::uniform_qubit_pair_orthogonal());
    show("uniform {|0>, |+>}", &Ensemble::zero_plus_uniform());

    let tri = Ensemble::uniform_pure(vec![
        PureState::basis(0, 2),
        PureState::basis(1, 2),
        PureState::qubit_angle(std::f64::consts::FRAC_PI_4),
    ])
    .unwrap();
    show("{|0>, |1>, |+>} (bridge via |+>)", &tri);

    let weak = Ensemble::new(vec![
        EnsembleEntry {
            label: "0".into(),
            p: 0.99,
            state: DensityOperator::from_pure(&PureState::basis(0, 2)),
        },
        EnsembleEntry {
            label: "+".into(),
            p: 0.01,
            state: DensityOperator::from_pure(&PureState::qubit_angle(
                std::f64::consts::FRAC_PI_4,
            )),
        },
    ])
    .unwrap();
    show("weakly irreducible p=(0.99,0.01)", &weak);

    // the DP agrees exactly with brute-force walk enumeration
    let cap = exhaustive_cap(3);
    let dp = eta(&tri, Some(cap)).unwrap().eta;
    let brute = eta_exhaustive(&tri, cap).unwrap();
    println!("\nDP vs exhaustive enumeration at cap {cap}: {dp:.12} vs {brute:.12}");
    assert_eq!(dp, brute);
}
