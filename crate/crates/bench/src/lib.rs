//! Fixtures shared by the benchmarks.

use qtcorr_core::{
    evolve, initial_state, Coupling, CouplingScenario, DecayInput, DensityMatrix, NoiseKind,
    StateParameter,
};

/// An evolved state with no special symmetry, so the discord landscape is not flat.
pub fn generic_state() -> DensityMatrix {
    let scenario = CouplingScenario::new(
        NoiseKind::AmplitudeDamping,
        Coupling::Multilocal,
        DecayInput::new(0.7).unwrap(),
        DecayInput::new(1.3).unwrap(),
    );
    evolve(
        &initial_state(StateParameter::new(0.23).unwrap()),
        &scenario,
    )
    .unwrap()
}
